//! Small Steiner systems with explicit constructions.

use crate::subsets::{Family, KSubset};

/// The Fano plane, 2-(7,3,1).
pub fn fano() -> Family {
    Family::from_blocks(
        7,
        3,
        vec![
            vec![1, 2, 3],
            vec![1, 4, 5],
            vec![1, 6, 7],
            vec![2, 4, 6],
            vec![2, 5, 7],
            vec![3, 4, 7],
            vec![3, 5, 6],
        ],
    )
    .expect("valid blocks")
}

/// Lines of the affine plane AG(2,3), a 2-(9,3,1) design.
pub fn affine_plane_3() -> Family {
    // point (x, y) ∈ Z_3² is 1 + 3y + x
    let mut blocks = Vec::new();
    let pt = |x: usize, y: usize| 1 + 3 * (y % 3) + (x % 3);
    for c in 0..3 {
        blocks.push((0..3).map(|x| pt(x, c)).collect());
        blocks.push((0..3).map(|y| pt(c, y)).collect());
        blocks.push((0..3).map(|x| pt(x, x + c)).collect());
        blocks.push((0..3).map(|x| pt(x, 2 * x + c)).collect());
    }
    Family::from_blocks(9, 3, blocks).expect("valid blocks")
}

/// Affine planes of AG(3,2), a 3-(8,4,1) design: 4-sets of points of F_2³
/// whose vectors sum to zero.
pub fn affine_space_2_cubed() -> Family {
    let members = KSubset::all(8, 4)
        .filter(|s| s.elements().iter().fold(0, |acc, &p| acc ^ (p - 1)) == 0)
        .collect();
    Family::new(8, 4, members).expect("valid blocks")
}

/// `{1..k}, {k+1..2k}, …`, a 1-(n,k,1) design when `k | n`.
pub fn partition(n: usize, k: usize) -> Option<Family> {
    if k == 0 || !n.is_multiple_of(k) {
        return None;
    }
    let blocks = (0..n / k).map(|b| (b * k + 1..=(b + 1) * k).collect()).collect();
    Family::from_blocks(n, k, blocks).ok()
}
