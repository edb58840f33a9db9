use crate::core::asm::Asm;
use crate::core::pattern::PatternMatrix;

/// The eight symmetries of the square acting on n x n matrices.
///
/// Rotations are clockwise. `ReverseRows` reverses the order of the rows;
/// under the rows-are-positions convention this is one-line word reversal
/// (132 becomes 231). `ReverseCols` reverses the column order
/// (complementation). `Transpose` sends a permutation matrix to the matrix
/// of the inverse permutation.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum SymmetryElement {
    Identity,
    Rot90,
    Rot180,
    Rot270,
    Transpose,
    AntiTranspose,
    ReverseRows,
    ReverseCols,
}

pub const ALL_SYMMETRIES: [SymmetryElement; 8] = [
    SymmetryElement::Identity,
    SymmetryElement::Rot90,
    SymmetryElement::Rot180,
    SymmetryElement::Rot270,
    SymmetryElement::Transpose,
    SymmetryElement::AntiTranspose,
    SymmetryElement::ReverseRows,
    SymmetryElement::ReverseCols,
];

impl SymmetryElement {
    /// Where 0-based (i, j) of the source lands in the transformed matrix.
    #[inline]
    pub fn map(self, i: usize, j: usize, n: usize) -> (usize, usize) {
        let m = n - 1;
        match self {
            SymmetryElement::Identity => (i, j),
            SymmetryElement::Rot90 => (j, m - i),
            SymmetryElement::Rot180 => (m - i, m - j),
            SymmetryElement::Rot270 => (m - j, i),
            SymmetryElement::Transpose => (j, i),
            SymmetryElement::AntiTranspose => (m - j, m - i),
            SymmetryElement::ReverseRows => (m - i, j),
            SymmetryElement::ReverseCols => (i, m - j),
        }
    }

    /// The element that applies `self` first and `next` second.
    pub fn then(self, next: SymmetryElement) -> SymmetryElement {
        // Identify the composite by its action on three probe points of a
        // 4x4 grid that no two distinct symmetries agree on.
        let probes = [(0usize, 1usize), (1, 3), (2, 0)];
        let composed: Vec<(usize, usize)> = probes
            .iter()
            .map(|&(i, j)| {
                let (a, b) = self.map(i, j, 4);
                next.map(a, b, 4)
            })
            .collect();
        for cand in ALL_SYMMETRIES {
            if probes
                .iter()
                .zip(&composed)
                .all(|(&(i, j), &target)| cand.map(i, j, 4) == target)
            {
                return cand;
            }
        }
        unreachable!("dihedral group is closed under composition")
    }

    pub fn inverse(self) -> SymmetryElement {
        match self {
            SymmetryElement::Rot90 => SymmetryElement::Rot270,
            SymmetryElement::Rot270 => SymmetryElement::Rot90,
            other => other,
        }
    }

    pub fn parse(s: &str) -> Option<SymmetryElement> {
        match s {
            "identity" => Some(SymmetryElement::Identity),
            "rot90" => Some(SymmetryElement::Rot90),
            "rot180" => Some(SymmetryElement::Rot180),
            "rot270" => Some(SymmetryElement::Rot270),
            "transpose" => Some(SymmetryElement::Transpose),
            "anti-transpose" => Some(SymmetryElement::AntiTranspose),
            "reverse-rows" => Some(SymmetryElement::ReverseRows),
            "reverse-cols" => Some(SymmetryElement::ReverseCols),
            _ => None,
        }
    }
}

/// Applies a square symmetry to an ASM. The ASM axioms are preserved by
/// every element of the group.
pub fn apply_symmetry(a: &Asm, s: SymmetryElement) -> Asm {
    let n = a.n();
    let mut entries = vec![0i8; n * n];
    for i in 0..n {
        for j in 0..n {
            let (ti, tj) = s.map(i, j, n);
            entries[ti * n + tj] = a.get(i, j);
        }
    }
    Asm::from_entries_unchecked(n, entries)
}

/// Square-symmetry action on square patterns.
pub fn apply_symmetry_pattern(p: &PatternMatrix, s: SymmetryElement) -> PatternMatrix {
    assert_eq!(p.rows(), p.cols(), "square symmetries act on square patterns");
    let n = p.rows();
    let mut rows = vec![vec![0i64; n]; n];
    for i in 0..n {
        for j in 0..n {
            let (ti, tj) = s.map(i, j, n);
            rows[ti][tj] = p.get(i, j) as i64;
        }
    }
    PatternMatrix::from_rows(&rows).expect("symmetry preserves shape")
}
