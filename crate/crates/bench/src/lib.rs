//! Fixtures shared by the benchmarks.

use wittid_core::freealg::{var, BracketTree};
use wittid_core::MultilinearSpace;

/// The space on `x_1^{g_1}, …, x_n^{g_n}`.
pub fn space(degrees: &[i64]) -> MultilinearSpace {
    MultilinearSpace::from_degrees(degrees).expect("valid degrees")
}

/// A right-normed bracket `[x_1, [x_2, [… , x_n]]]` of the given degrees.
pub fn right_normed(degrees: &[i64]) -> BracketTree {
    let mut leaves = degrees
        .iter()
        .enumerate()
        .rev()
        .map(|(i, &d)| BracketTree::leaf(var(i as u32 + 1, d)));
    let last = leaves.next().expect("at least one degree");
    leaves.fold(last, |acc, leaf| BracketTree::bracket(leaf, acc))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fixtures() {
        assert_eq!(space(&[1, 2, 3]).dim(), 2);
        assert_eq!(right_normed(&[1, 2, 3]).to_string(), "[x1^1, [x2^2, x3^3]]");
    }
}
