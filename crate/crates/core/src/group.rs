//! Finite abelian quotient groups Z^r / M(Z^r) in invariant-factor form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::snf::{smith_normal_form, SmithDecomposition};

/// Isomorphism type of a finite abelian group: invariant factors
/// d_1 | d_2 | ... | d_m, each > 1. The trivial group has no factors.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    factors: Vec<BigInt>,
}

impl FiniteAbelianGroup {
    pub fn trivial() -> Self {
        FiniteAbelianGroup { factors: vec![] }
    }

    pub fn cyclic(n: BigInt) -> Self {
        assert!(n.is_positive());
        if n.is_one() {
            Self::trivial()
        } else {
            FiniteAbelianGroup { factors: vec![n] }
        }
    }

    /// Builds from a divisibility chain, dropping factors equal to 1.
    pub fn from_invariant_factors(factors: Vec<BigInt>) -> Self {
        let kept: Vec<BigInt> = factors.into_iter().filter(|d| !d.is_one()).collect();
        for w in kept.windows(2) {
            debug_assert!((&w[1] % &w[0]).is_zero(), "invariant factor chain");
        }
        FiniteAbelianGroup { factors: kept }
    }

    pub fn invariant_factors(&self) -> &[BigInt] {
        &self.factors
    }

    pub fn order(&self) -> BigInt {
        self.factors.iter().product()
    }

    pub fn is_trivial(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_cyclic(&self) -> bool {
        self.factors.len() <= 1
    }

    /// All elements in lexicographic order of their residue vectors.
    /// The order of the group must fit in memory; callers guard size.
    pub fn elements(&self) -> Vec<CosetLabel> {
        let mut out = vec![CosetLabel::zero(self.factors.len())];
        for (i, d) in self.factors.iter().enumerate() {
            let mut next = Vec::new();
            let mut r = BigInt::zero();
            while &r < d {
                for base in &out {
                    let mut v = base.residues.clone();
                    v[i] = r.clone();
                    next.push(CosetLabel { residues: v });
                }
                r += 1;
            }
            next.sort();
            out = next;
        }
        out.sort();
        out
    }

    /// Identity element.
    pub fn zero(&self) -> CosetLabel {
        CosetLabel::zero(self.factors.len())
    }

    /// Componentwise negation mod the invariant factors.
    pub fn negate(&self, g: &CosetLabel) -> CosetLabel {
        let residues = g
            .residues
            .iter()
            .zip(&self.factors)
            .map(|(r, d)| if r.is_zero() { BigInt::zero() } else { d - r })
            .collect();
        CosetLabel { residues }
    }

    /// Componentwise sum mod the invariant factors.
    pub fn add(&self, a: &CosetLabel, b: &CosetLabel) -> CosetLabel {
        let residues = a
            .residues
            .iter()
            .zip(&b.residues)
            .zip(&self.factors)
            .map(|((x, y), d)| (x + y).mod_floor(d))
            .collect();
        CosetLabel { residues }
    }

    /// Scalar multiple n * g.
    pub fn scale(&self, n: &BigInt, g: &CosetLabel) -> CosetLabel {
        let residues = g
            .residues
            .iter()
            .zip(&self.factors)
            .map(|(r, d)| (n * r).mod_floor(d))
            .collect();
        CosetLabel { residues }
    }

    /// Order of an element: lcm over components of d_i / gcd(d_i, r_i).
    pub fn element_order(&self, g: &CosetLabel) -> BigInt {
        let mut ord = BigInt::one();
        for (r, d) in g.residues.iter().zip(&self.factors) {
            let comp = d / r.gcd(d);
            ord = ord.lcm(&comp);
        }
        ord
    }
}

/// Canonical label of a coset: one residue per invariant factor,
/// componentwise reduced into [0, d_i).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CosetLabel {
    residues: Vec<BigInt>,
}

impl CosetLabel {
    pub fn zero(len: usize) -> Self {
        CosetLabel {
            residues: vec![BigInt::zero(); len],
        }
    }

    pub fn new(residues: Vec<BigInt>) -> Self {
        CosetLabel { residues }
    }

    pub fn residues(&self) -> &[BigInt] {
        &self.residues
    }

    pub fn is_zero(&self) -> bool {
        self.residues.iter().all(Zero::is_zero)
    }
}

impl std::fmt::Display for CosetLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.residues.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}

/// Projection data for Z^r / M(Z^r): the Smith transform row matrix and the
/// positions of the nontrivial invariant factors on the diagonal.
#[derive(Debug, Clone)]
pub struct QuotientContext {
    group: FiniteAbelianGroup,
    u: IntMatrix,
    factor_rows: Vec<usize>,
    rank: usize,
}

impl QuotientContext {
    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Canonical label of the image of an integer vector in Z^r / M(Z^r).
    pub fn coset_of(&self, xi: &[BigInt]) -> Result<CosetLabel> {
        if xi.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: xi.len(),
            });
        }
        let image = self.u.mul_vec(xi);
        let residues = self
            .factor_rows
            .iter()
            .zip(self.group.invariant_factors())
            .map(|(&row, d)| image[row].mod_floor(d))
            .collect();
        Ok(CosetLabel { residues })
    }
}

/// The finite abelian group Z^r / M(Z^r) of a nondegenerate square matrix,
/// together with the data needed to project integer vectors onto it.
pub fn quotient_group(m: &IntMatrix) -> Result<QuotientContext> {
    assert!(m.is_square(), "quotient of non-square matrix");
    let snf: SmithDecomposition = smith_normal_form(m);
    let diag = snf.diagonal();
    if diag.iter().any(Zero::is_zero) {
        return Err(Error::Singular);
    }
    let factor_rows: Vec<usize> = diag
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_one())
        .map(|(i, _)| i)
        .collect();
    let factors = factor_rows.iter().map(|&i| diag[i].clone()).collect();
    Ok(QuotientContext {
        group: FiniteAbelianGroup::from_invariant_factors(factors),
        u: snf.u,
        factor_rows,
        rank: m.rows(),
    })
}
