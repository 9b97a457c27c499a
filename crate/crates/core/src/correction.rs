//! Correction-term tables of negative definite forms.
//!
//! For a negative definite r x r form Q, the table assigns to every coset
//! g of Z^r / Q(Z^r) the maximum of (xi^T Q^{-1} xi + r) / 4 over
//! characteristic covectors xi in g. Characteristic means
//! xi_i = Q_ii (mod 2) for all i, and it suffices to scan the box
//! Q_ii <= xi_i <= -Q_ii: moving by twice a column of Q stays in the coset
//! and never increases the square.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::form::{rational_inverse, SymmetricForm};
use crate::group::{quotient_group, CosetLabel, FiniteAbelianGroup};

/// Characteristic covector of a symmetric form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharCovector(pub Vec<BigInt>);

/// Lexicographic stream of the characteristic covectors of a negative
/// definite form, restricted to the standard box.
pub fn characteristic_covectors(q: &SymmetricForm) -> Result<CovectorIter> {
    covectors_in_box(q, 1)
}

/// Same stream with the box scaled by an odd multiplier; used to check that
/// widening the box never changes a maximum.
pub fn covectors_in_box(q: &SymmetricForm, multiplier: u32) -> Result<CovectorIter> {
    if !q.is_negative_definite() {
        return Err(Error::NotNegativeDefinite);
    }
    assert!(
        multiplier % 2 == 1,
        "box multiplier must be odd to preserve parity"
    );
    let lows: Vec<BigInt> = q
        .diagonal()
        .iter()
        .map(|d| d * BigInt::from(multiplier))
        .collect();
    Ok(CovectorIter {
        current: lows.clone(),
        lows,
        done: false,
    })
}

pub struct CovectorIter {
    lows: Vec<BigInt>,
    current: Vec<BigInt>,
    done: bool,
}

impl Iterator for CovectorIter {
    type Item = CharCovector;

    fn next(&mut self) -> Option<CharCovector> {
        if self.done {
            return None;
        }
        let out = CharCovector(self.current.clone());
        // advance like an odometer, least significant coordinate last
        let mut i = self.lows.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            let next = &self.current[i] + 2;
            if next <= -&self.lows[i] {
                self.current[i] = next;
                for j in i + 1..self.lows.len() {
                    self.current[j] = self.lows[j].clone();
                }
                break;
            }
        }
        Some(out)
    }
}

/// Total map coset -> max (xi^T Q^{-1} xi + r)/4, plus the group and the
/// rank of the source form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrectionTable {
    group: FiniteAbelianGroup,
    rank: usize,
    values: BTreeMap<CosetLabel, BigRational>,
}

impl CorrectionTable {
    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn values(&self) -> &BTreeMap<CosetLabel, BigRational> {
        &self.values
    }

    pub fn get(&self, g: &CosetLabel) -> Option<&BigRational> {
        self.values.get(g)
    }

    /// Sorted multiset of the table's values.
    pub fn value_multiset(&self) -> Vec<BigRational> {
        let mut v: Vec<BigRational> = self.values.values().cloned().collect();
        v.sort();
        v
    }

    pub fn from_parts(
        group: FiniteAbelianGroup,
        rank: usize,
        values: BTreeMap<CosetLabel, BigRational>,
    ) -> Self {
        CorrectionTable {
            group,
            rank,
            values,
        }
    }
}

/// Correction-term table of a negative definite form with odd determinant.
///
/// Odd determinant makes doubling invertible on the quotient, so every coset
/// contains characteristic covectors and the table is total. Branched double
/// covers of knots always satisfy this.
pub fn m_table(q: &SymmetricForm) -> Result<CorrectionTable> {
    m_table_boxed(q, 1)
}

/// `m_table` with a widened enumeration box (odd multiplier); diagnostic.
pub fn m_table_boxed(q: &SymmetricForm, multiplier: u32) -> Result<CorrectionTable> {
    if !q.is_negative_definite() {
        return Err(Error::NotNegativeDefinite);
    }
    let det = q.det();
    if det.is_even() {
        return Err(Error::EvenDeterminant(det.abs().to_string()));
    }
    let ctx = quotient_group(q.matrix())?;
    let qinv = rational_inverse(q)?;
    let rank = q.rank();

    // xi^T Q^{-1} xi = (xi^T adj(Q) xi) / det, so the whole scan runs on
    // integers; one rational reduction per covector at the end
    let mut adj = crate::matrix::IntMatrix::zero(rank, rank);
    for i in 0..rank {
        for j in 0..rank {
            let scaled = &qinv[(i, j)] * BigRational::from_integer(det.clone());
            debug_assert!(scaled.is_integer());
            adj[(i, j)] = scaled.to_integer();
        }
    }
    let rank_times_det = BigInt::from(rank as i64) * &det;
    let four_det = BigInt::from(4) * &det;

    let mut values: BTreeMap<CosetLabel, BigRational> = BTreeMap::new();
    for CharCovector(xi) in covectors_in_box(q, multiplier)? {
        let mut square = BigInt::zero();
        for i in 0..rank {
            if xi[i].is_zero() {
                continue;
            }
            square += &adj[(i, i)] * &xi[i] * &xi[i];
            for j in i + 1..rank {
                if xi[j].is_zero() {
                    continue;
                }
                square += BigInt::from(2) * &adj[(i, j)] * &xi[i] * &xi[j];
            }
        }
        let value = BigRational::new(square + &rank_times_det, four_det.clone());
        let coset = ctx.coset_of(&xi)?;
        match values.get_mut(&coset) {
            Some(best) => {
                if value > *best {
                    *best = value;
                }
            }
            None => {
                values.insert(coset, value);
            }
        }
    }
    debug_assert_eq!(
        BigInt::from(values.len()),
        ctx.group().order(),
        "every coset must be attained"
    );
    Ok(CorrectionTable {
        group: ctx.group().clone(),
        rank,
        values,
    })
}

/// Unique representative of x in [0, 2) modulo even integers.
pub fn mod2_value(x: &BigRational) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    x - &two * (x / &two).floor()
}

/// Every table value replaced by its representative in [0, 2).
pub fn mod2_representatives(t: &CorrectionTable) -> BTreeMap<CosetLabel, BigRational> {
    t.values
        .iter()
        .map(|(g, v)| (g.clone(), mod2_value(v)))
        .collect()
}

/// Pointwise negation; gives the table of the orientation-reversed manifold
/// at the same labels.
pub fn negate_table(t: &CorrectionTable) -> CorrectionTable {
    CorrectionTable {
        group: t.group.clone(),
        rank: t.rank,
        values: t.values.iter().map(|(g, v)| (g.clone(), -v)).collect(),
    }
}
