//! Small named split systems used by tests, benches and the CLI.

use crate::splits::SplitSystem;

fn digits(s: &str) -> Vec<&str> {
    s.char_indices()
        .map(|(i, c)| &s[i..i + c.len_utf8()])
        .collect()
}

fn from_digit_parts(elements: &str, parts: &[&str]) -> SplitSystem {
    let elements = digits(elements);
    let parts: Vec<Vec<&str>> = parts.iter().map(|p| digits(p)).collect();
    let refs: Vec<&[&str]> = parts.iter().map(|p| p.as_slice()).collect();
    SplitSystem::from_labels(&elements, &refs).expect("fixture is well formed")
}

/// Nine splits on `{1..8}` with five incompatibility components:
/// `{S13,S12}`, `{S123}`, `{S1235,S45,S1234}`, `{S67,S78}` and `{S5}`.
pub fn sigma8() -> SplitSystem {
    from_digit_parts(
        "12345678",
        &["13", "12", "123", "1235", "45", "1234", "67", "78", "5"],
    )
}

/// A compatible system on `{1..8}` whose tree is the reduced X-tree of [`sigma8`].
pub fn sigma8_tree() -> SplitSystem {
    from_digit_parts(
        "12345678",
        &["1", "2", "3", "123", "4", "5", "678", "6", "7", "8"],
    )
}

/// Two incompatible splits on four elements; the Buneman graph is a square.
pub fn square() -> SplitSystem {
    from_digit_parts("1234", &["12", "13"])
}

/// `{1}|{2,3}` and `{3}|{1,2}`: a path of three vertices, all labelled.
pub fn labeled_path() -> SplitSystem {
    from_digit_parts("123", &["1", "3"])
}
