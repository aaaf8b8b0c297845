//! Named partial colourings and modules used throughout the tests, the CLI
//! and the shipped grid files.

use crate::colouring::{parse_colouring, PartialColouring, UnitAssignment};
use crate::modrep::ModuleRepresentation;

/// Admissible 3×3 colouring with two colours.
pub const GRID_A: &str = "a b .\nb a .\n. . a";
/// Admissible 3×3 colouring with three colours and one blank.
pub const GRID_B: &str = "a b c\nc a b\nb . a";
/// Non-admissible: the colours a, b are closed on rows and columns {1,2}.
pub const GRID_C: &str = "a b a\nb a b\n. c c";
/// Non-admissible: no blank cell at all.
pub const GRID_D: &str = "a b c\nc a b\nb c a";
/// Admissible; rank-1 matrices are counted by the roots of X^4 + 1.
pub const GRID_QUARTIC: &str = "a b c\nd a b\nc d .";
/// Non-admissible; rank-1 matrices are counted by the roots of X^5 + X − 1.
pub const GRID_QUINTIC: &str = "a b c\nb c d\nd c a";

pub const NAMED_GRIDS: &[(&str, &str)] = &[
    ("a", GRID_A),
    ("b", GRID_B),
    ("c", GRID_C),
    ("d", GRID_D),
    ("quartic", GRID_QUARTIC),
    ("quintic", GRID_QUINTIC),
];

pub fn named(name: &str) -> Option<PartialColouring> {
    NAMED_GRIDS.iter().find(|(n, _)| *n == name).map(|(_, t)| parse_colouring(t).unwrap().0)
}

pub fn grid(text: &str) -> PartialColouring {
    parse_colouring(text).expect("gallery grids parse").0
}

/// The d×d colouring with one colour on the diagonal; Board gives sl_d.
pub fn sl_colouring(d: usize) -> PartialColouring {
    let cells: Vec<Option<usize>> = (0..d * d).map(|k| (k / d == k % d).then_some(0)).collect();
    PartialColouring::from_ids(d, d, &cells).expect("valid colouring")
}

pub fn ones(beta: &PartialColouring) -> UnitAssignment {
    UnitAssignment::ones(beta.rows(), beta.cols())
}

/// Matrices supported on the given cells (0-based), basis e_ij.
pub fn support_rep(d: usize, e: usize, cells: &[(usize, usize)]) -> ModuleRepresentation {
    let gens = cells
        .iter()
        .map(|&(i, j)| {
            let mut g = vec![0; d * e];
            g[i * e + j] = 1;
            g
        })
        .collect();
    let basis = cells.iter().map(|(i, j)| format!("e({},{})", i + 1, j + 1)).collect();
    ModuleRepresentation::new(basis, (1..=d).map(|i| i.to_string()).collect(), (1..=e).map(|j| j.to_string()).collect(), gens)
        .expect("support module")
}

/// The 3×3 staircase support: every cell but (1,1).
pub fn staircase_rep() -> ModuleRepresentation {
    let cells: Vec<(usize, usize)> = (0..9).map(|k| (k / 3, k % 3)).filter(|&c| c != (0, 0)).collect();
    support_rep(3, 3, &cells)
}
