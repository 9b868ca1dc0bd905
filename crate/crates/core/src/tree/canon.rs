//! AHU canonical codes rooted at the tree center.

use std::fmt;

use super::Tree;

/// Isomorphism-invariant byte string: two trees get equal codes iff they are
/// isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        // Codes are pure ASCII.
        f.write_str(std::str::from_utf8(&self.0).expect("ascii code"))
    }
}

/// AHU encoding of the subtree hanging from `root` away from `parent`:
/// `(` + sorted child encodings + `)`.
fn encode(t: &Tree, root: usize, parent: usize) -> Vec<u8> {
    let mut children: Vec<Vec<u8>> = t
        .neighbors(root)
        .iter()
        .filter(|&&w| w != parent)
        .map(|&w| encode(t, w, root))
        .collect();
    children.sort_unstable();
    let len = 2 + children.iter().map(Vec::len).sum::<usize>();
    let mut out = Vec::with_capacity(len);
    out.push(b'(');
    for c in children {
        out.extend_from_slice(&c);
    }
    out.push(b')');
    out
}

/// Canonical code of a free tree.
///
/// Unicentral trees are encoded from their center (`C` prefix); bicentral
/// trees from both halves of the central edge, halves sorted (`B` prefix).
pub fn canonical_code(t: &Tree) -> CanonicalCode {
    let centers = t.centers();
    let mut out = Vec::with_capacity(2 * t.order() + 1);
    match centers[..] {
        [c] => {
            out.push(b'C');
            out.extend(encode(t, c, usize::MAX));
        }
        [c1, c2] => {
            let mut halves = [encode(t, c1, c2), encode(t, c2, c1)];
            halves.sort_unstable();
            out.push(b'B');
            out.extend_from_slice(&halves[0]);
            out.extend_from_slice(&halves[1]);
        }
        _ => unreachable!("a tree has one or two centers"),
    }
    CanonicalCode(out)
}
