//! Domain types: ASMs, permutations, patterns, the square symmetry group,
//! and the text formats.

pub mod asm;
pub mod format;
pub mod pattern;
pub mod perm;
pub mod symmetry;

pub use asm::{validate_asm, Asm};
pub use pattern::{chi, parse_word, word_to_pattern, ContainmentMode, PatternMatrix};
pub use perm::Permutation;
pub use symmetry::{apply_symmetry, apply_symmetry_pattern, SymmetryElement, ALL_SYMMETRIES};
