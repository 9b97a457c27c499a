//! Symmetric integer bilinear forms with an exact definiteness certificate.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, RatMatrix};

/// Sign class of a symmetric form. Degenerate forms (determinant zero) are
/// classified `Indefinite`; definiteness here always means strict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Definiteness {
    NegativeDefinite,
    PositiveDefinite,
    Indefinite,
}

impl std::fmt::Display for Definiteness {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Definiteness::NegativeDefinite => write!(f, "negative definite"),
            Definiteness::PositiveDefinite => write!(f, "positive definite"),
            Definiteness::Indefinite => write!(f, "indefinite or degenerate"),
        }
    }
}

/// Square symmetric integer matrix together with its certified sign class.
///
/// The certificate is recomputed from leading principal minors on
/// construction, so a `SymmetricForm` value can be trusted downstream.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymmetricForm {
    matrix: IntMatrix,
    definiteness: Definiteness,
}

impl SymmetricForm {
    pub fn rank(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn definiteness(&self) -> Definiteness {
        self.definiteness
    }

    pub fn det(&self) -> BigInt {
        self.matrix.det()
    }

    pub fn is_negative_definite(&self) -> bool {
        self.definiteness == Definiteness::NegativeDefinite
    }

    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.rank())
            .map(|i| self.matrix[(i, i)].clone())
            .collect()
    }
}

/// Classify a square integer matrix by the signs of its leading principal
/// minors (Sylvester): positive definite iff all minors are positive,
/// negative definite iff the k-th minor has sign (-1)^k for every k.
/// Asymmetric input is rejected.
pub fn certify_definiteness(m: IntMatrix) -> Result<SymmetricForm> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch {
            expected: m.rows(),
            got: m.cols(),
        });
    }
    if let Some((i, j)) = m.is_symmetric() {
        return Err(Error::NotSymmetric(i, j));
    }
    let minors = m.leading_principal_minors();
    let mut neg = true;
    let mut pos = true;
    for (k, minor) in minors.iter().enumerate() {
        if minor.is_positive() {
            if k % 2 == 0 {
                neg = false;
            }
        } else if minor.is_negative() {
            pos = false;
            if k % 2 == 1 {
                neg = false;
            }
        } else {
            // a zero leading minor rules out strict definiteness
            neg = false;
            pos = false;
            break;
        }
    }
    let definiteness = if neg {
        Definiteness::NegativeDefinite
    } else if pos {
        Definiteness::PositiveDefinite
    } else {
        Definiteness::Indefinite
    };
    Ok(SymmetricForm {
        matrix: m,
        definiteness,
    })
}

/// Exact inverse of a nondegenerate form, over the rationals.
pub fn rational_inverse(q: &SymmetricForm) -> Result<RatMatrix> {
    q.matrix().to_rational().inverse()
}

/// The value xi^T * Qinv * xi as an exact rational.
pub fn evaluate_form(qinv: &RatMatrix, xi: &[BigInt]) -> Result<BigRational> {
    let n = qinv.rows();
    if xi.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: xi.len(),
        });
    }
    let mut acc = BigRational::zero();
    for i in 0..n {
        if xi[i].is_zero() {
            continue;
        }
        let xi_i = BigRational::from_integer(xi[i].clone());
        for j in 0..n {
            if xi[j].is_zero() {
                continue;
            }
            let xj = BigRational::from_integer(xi[j].clone());
            acc += &xi_i * &qinv[(i, j)] * xj;
        }
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::str::FromStr;

    fn form(rows: &[Vec<i64>]) -> SymmetricForm {
        certify_definiteness(IntMatrix::from_i64_rows(rows).unwrap()).unwrap()
    }

    #[test]
    fn classify_2x2() {
        assert_eq!(
            form(&[vec![-2, 1], vec![1, -2]]).definiteness(),
            Definiteness::NegativeDefinite
        );
        assert_eq!(
            form(&[vec![-1, 2], vec![2, -1]]).definiteness(),
            Definiteness::Indefinite
        );
        assert_eq!(
            form(&[vec![2, 1], vec![1, 2]]).definiteness(),
            Definiteness::PositiveDefinite
        );
    }

    #[test]
    fn degenerate_is_not_definite() {
        assert_eq!(
            form(&[vec![0, 0], vec![0, 0]]).definiteness(),
            Definiteness::Indefinite
        );
        assert_eq!(
            form(&[vec![-1, 1], vec![1, -1]]).definiteness(),
            Definiteness::Indefinite
        );
    }

    #[test]
    fn asymmetric_rejected() {
        let m = IntMatrix::from_i64_rows(&[vec![1, 2], vec![3, 4]]).unwrap();
        assert_eq!(
            certify_definiteness(m).unwrap_err(),
            Error::NotSymmetric(0, 1)
        );
    }

    #[test]
    fn goeritz_7x7_is_negative_definite() {
        let g = form(&[
            vec![-4, 1, 1, 0, 0, 1, 0],
            vec![1, -3, 0, 0, 1, 0, 0],
            vec![1, 0, -2, 1, 0, 0, 0],
            vec![0, 0, 1, -2, 1, 0, 0],
            vec![0, 1, 0, 1, -3, 0, 1],
            vec![1, 0, 0, 0, 0, -2, 1],
            vec![0, 0, 0, 0, 1, 1, -2],
        ]);
        assert_eq!(g.definiteness(), Definiteness::NegativeDefinite);
        assert_eq!(g.det(), BigInt::from(-57));
    }

    #[test]
    fn inverse_matches_hand_computation() {
        let q = form(&[vec![-29, 1], vec![1, -2]]);
        let inv = rational_inverse(&q).unwrap();
        assert_eq!(inv[(0, 0)], BigRational::from_str("-2/57").unwrap());
        assert_eq!(inv[(0, 1)], BigRational::from_str("-1/57").unwrap());
        assert_eq!(inv[(1, 0)], BigRational::from_str("-1/57").unwrap());
        assert_eq!(inv[(1, 1)], BigRational::from_str("-29/57").unwrap());
    }

    #[test]
    fn evaluate_form_examples() {
        let q = form(&[vec![-29, 1], vec![1, -2]]);
        let inv = rational_inverse(&q).unwrap();
        let v = evaluate_form(&inv, &[BigInt::from(1), BigInt::from(0)]).unwrap();
        assert_eq!(v, BigRational::from_str("-2/57").unwrap());

        let scalar = form(&[vec![-3]]);
        let inv = rational_inverse(&scalar).unwrap();
        let v = evaluate_form(&inv, &[BigInt::from(1)]).unwrap();
        assert_eq!(v, BigRational::from_str("-1/3").unwrap());
        let z = evaluate_form(&inv, &[BigInt::from(0)]).unwrap();
        assert!(z.is_zero());
    }

    #[test]
    fn evaluate_form_dimension_mismatch() {
        let q = form(&[vec![-2]]);
        let inv = rational_inverse(&q).unwrap();
        assert!(matches!(
            evaluate_form(&inv, &[BigInt::from(1), BigInt::from(2)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
