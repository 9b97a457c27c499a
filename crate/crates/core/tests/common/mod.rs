use std::path::PathBuf;

use num_rational::BigRational;
use untwist_core::jsonio::parse_rational;

/// Frozen correction-term value lists used as pipeline fixtures.
pub fn load_values(name: &str) -> Vec<BigRational> {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name]
        .iter()
        .collect();
    let text = std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("reading {}: {e}", path.display()));
    let mut values: Vec<BigRational> = text
        .split_whitespace()
        .map(|tok| parse_rational(tok).unwrap())
        .collect();
    assert_eq!(values.len(), 57);
    values.sort();
    values
}

pub const PD_10_68: &str = "X(1,11,2,10) X(9,1,10,20) X(11,9,12,8) X(7,16,8,17) X(15,2,16,3) X(19,12,20,13) X(17,6,18,7) X(5,18,6,19) X(13,4,14,5) X(3,14,4,15)";

/// The same knot from a second planar embedding of its white Tait graph.
pub const PD_10_68_ALT: &str = "X(1,11,2,10) X(9,1,10,20) X(11,9,12,8) X(15,2,16,3) X(7,16,8,17) X(19,12,20,13) X(3,14,4,15) X(13,4,14,5) X(5,18,6,19) X(17,6,18,7)";

pub const PD_4_1: &str = "X(1,7,2,6) X(5,3,6,2) X(3,8,4,1) X(7,4,8,5)";

pub const PD_TREFOIL: &str = "X(1,5,2,4) X(5,3,6,2) X(3,1,4,6)";

pub const PD_T27: &str =
    "X(1,9,2,8) X(7,1,8,14) X(13,7,14,6) X(5,13,6,12) X(11,5,12,4) X(3,11,4,10) X(9,3,10,2)";

pub const REFERENCE_G_10_68: [[i64; 7]; 7] = [
    [-4, 1, 1, 0, 0, 1, 0],
    [1, -3, 0, 0, 1, 0, 0],
    [1, 0, -2, 1, 0, 0, 0],
    [0, 0, 1, -2, 1, 0, 0],
    [0, 1, 0, 1, -3, 0, 1],
    [1, 0, 0, 0, 0, -2, 1],
    [0, 0, 0, 0, 1, 1, -2],
];

pub const REFERENCE_G_MIRROR_10_68: [[i64; 3]; 3] = [[-3, 1, 0], [1, -5, 3], [0, 3, -6]];
