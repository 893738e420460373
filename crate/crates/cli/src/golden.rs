//! Golden expectations compiled into the binary. `--bless` rewrites the
//! source files; a rebuild picks them up.

use std::path::PathBuf;

/// `(stem, markdown, normalized certificate)`.
const GOLDEN: &[(&str, &str, &str)] = &[
    ("classify-2", include_str!("../golden/classify-2.md"), include_str!("../golden/classify-2.json")),
    ("classify-3", include_str!("../golden/classify-3.md"), include_str!("../golden/classify-3.json")),
    ("classify-5", include_str!("../golden/classify-5.md"), include_str!("../golden/classify-5.json")),
    ("classify-all", include_str!("../golden/classify-all.md"), include_str!("../golden/classify-all.json")),
];

pub fn stem(dim_label: &str) -> String {
    format!("classify-{dim_label}")
}

pub fn expected(stem: &str) -> Option<(&'static str, &'static str)> {
    GOLDEN.iter().find(|g| g.0 == stem).map(|g| (g.1, g.2))
}

pub fn dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("golden")
}

/// First differing line, for diagnostics.
pub fn first_difference(expected: &str, actual: &str) -> Option<(usize, String, String)> {
    let mut e = expected.lines();
    let mut a = actual.lines();
    let mut i = 1;
    loop {
        match (e.next(), a.next()) {
            (None, None) => return None,
            (x, y) if x == y => i += 1,
            (x, y) => return Some((i, x.unwrap_or("<eof>").to_string(), y.unwrap_or("<eof>").to_string())),
        }
    }
}
