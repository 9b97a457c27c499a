//! The untwisting-number-one obstruction.
//!
//! A knot with signature 0 that a single positive generalized crossing
//! change unknots forces its branched double cover to bound a negative
//! definite form [[-(D+1)/2, 1], [1, -2]] where D is the knot determinant.
//! Comparing the correction-term table of that candidate form with the table
//! of the knot's Goeritz form over every group isomorphism either produces a
//! positive, even matching or refutes the bound. The negative twist case
//! runs the same search against the mirror's Goeritz form.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::correction::{m_table, mod2_value, CorrectionTable};
use crate::diagram::{definite_coloring, goeritz_matrix, KnotDiagram};
use crate::error::{Error, Result};
use crate::form::{certify_definiteness, Definiteness, SymmetricForm};
use crate::group::{CosetLabel, FiniteAbelianGroup};
use crate::matrix::IntMatrix;
use crate::record::KnotRecord;

pub const DEFAULT_ISOMORPHISM_BUDGET: u64 = 1_000_000;

/// Which single generalized crossing change is being obstructed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

impl std::fmt::Display for Sign {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Sign::Plus => write!(f, "+1"),
            Sign::Minus => write!(f, "-1"),
        }
    }
}

/// The 2x2 negative definite form [[-(D+1)/2, 1], [1, -2]] of determinant D
/// forced by a single positive generalized crossing change on a knot of
/// determinant D and signature 0.
pub fn candidate_form(det: &BigInt) -> Result<SymmetricForm> {
    if !det.is_positive() {
        return Err(Error::NonPositive(det.to_i64().unwrap_or(i64::MIN)));
    }
    if det.is_even() {
        return Err(Error::EvenDeterminant(det.to_string()));
    }
    let a = -((det + BigInt::one()) / BigInt::from(2));
    let q = IntMatrix::from_rows(vec![
        vec![a, BigInt::one()],
        vec![BigInt::one(), BigInt::from(-2)],
    ])?;
    let form = certify_definiteness(q)?;
    debug_assert!(form.is_negative_definite());
    debug_assert_eq!(&form.det(), det);
    Ok(form)
}

/// Isomorphism between two finite abelian groups with equal invariant
/// factors, stored as the images of the standard generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Isomorphism {
    images: Vec<CosetLabel>,
}

impl Isomorphism {
    /// Rebuild an isomorphism from serialized generator images, e.g. to
    /// re-verify a reported witness.
    pub fn from_generator_images(images: Vec<CosetLabel>) -> Self {
        Isomorphism { images }
    }

    pub fn generator_images(&self) -> &[CosetLabel] {
        &self.images
    }

    /// For cyclic groups the isomorphism is multiplication by a unit.
    pub fn as_unit_multiplier(&self) -> Option<&BigInt> {
        match self.images.as_slice() {
            [] => None,
            [image] => image.residues().first(),
            _ => None,
        }
    }

    pub fn apply(&self, codomain: &FiniteAbelianGroup, g: &CosetLabel) -> CosetLabel {
        let mut acc = codomain.zero();
        for (coeff, image) in g.residues().iter().zip(&self.images) {
            acc = codomain.add(&acc, &codomain.scale(coeff, image));
        }
        acc
    }
}

fn prime_factors(n: u64) -> Vec<u64> {
    let mut n = n;
    let mut primes = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            primes.push(p);
            while n.is_multiple_of(p) {
                n /= p;
            }
        }
        p += 1;
    }
    if n > 1 {
        primes.push(n);
    }
    primes
}

/// A generator assignment is bijective iff it stays surjective after
/// reduction mod every prime dividing the group order.
fn is_bijective(images: &[CosetLabel], factors: &[BigInt], order_primes: &[u64]) -> bool {
    for &p in order_primes {
        let p_big = BigInt::from(p);
        let idx: Vec<usize> = (0..factors.len())
            .filter(|&i| (&factors[i] % &p_big).is_zero())
            .collect();
        let k = idx.len();
        if k == 0 {
            continue;
        }
        let mut mat: Vec<Vec<i64>> = Vec::with_capacity(k);
        for &j in &idx {
            let row: Vec<i64> = idx
                .iter()
                .map(|&i| {
                    (&images[i].residues()[j] % &p_big)
                        .mod_floor(&p_big)
                        .to_i64()
                        .expect("residue below a u64 prime")
                })
                .collect();
            mat.push(row);
        }
        if det_mod_p(mat, p as i64) == 0 {
            return false;
        }
    }
    true
}

fn det_mod_p(mut m: Vec<Vec<i64>>, p: i64) -> i64 {
    let n = m.len();
    let inv_mod = |a: i64| -> i64 {
        // Fermat inverse; p is prime and a is nonzero mod p
        let mut base = a.rem_euclid(p);
        let mut exp = p - 2;
        let mut acc = 1i64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            exp >>= 1;
        }
        acc
    };
    let mut det = 1i64;
    for c in 0..n {
        let pivot = match (c..n).find(|&r| m[r][c].rem_euclid(p) != 0) {
            Some(r) => r,
            None => return 0,
        };
        if pivot != c {
            m.swap(pivot, c);
            det = (p - det) % p;
        }
        let pv = m[c][c].rem_euclid(p);
        det = det * pv % p;
        let pv_inv = inv_mod(pv);
        let lead: Vec<i64> = m[c][c..n].iter().map(|x| x.rem_euclid(p)).collect();
        for row in m.iter_mut().take(n).skip(c + 1) {
            let f = row[c].rem_euclid(p) * pv_inv % p;
            if f == 0 {
                continue;
            }
            for (j, l) in lead.iter().enumerate() {
                let cell = &mut row[c + j];
                *cell = (cell.rem_euclid(p) - f * l).rem_euclid(p);
            }
        }
    }
    det.rem_euclid(p)
}

/// All isomorphisms A -> B in a deterministic order: empty when the
/// invariant factors differ; for cyclic groups, multiplication by each unit
/// in ascending order. Errors out instead of truncating when the search
/// space exceeds the budget.
pub fn enumerate_isomorphisms(
    a: &FiniteAbelianGroup,
    b: &FiniteAbelianGroup,
    budget: u64,
) -> Result<Vec<Isomorphism>> {
    if a.invariant_factors() != b.invariant_factors() {
        return Ok(Vec::new());
    }
    if a.is_trivial() {
        return Ok(vec![Isomorphism { images: vec![] }]);
    }
    let order = a.order().to_u64().ok_or(Error::GroupTooLarge {
        budget,
        needed: u64::MAX,
    })?;
    if order > budget {
        return Err(Error::GroupTooLarge {
            budget,
            needed: order,
        });
    }
    let factors = a.invariant_factors().to_vec();
    let elements = b.elements();
    let candidates: Vec<Vec<CosetLabel>> = factors
        .iter()
        .map(|d| {
            elements
                .iter()
                .filter(|e| &b.element_order(e) == d)
                .cloned()
                .collect()
        })
        .collect();
    let space: u64 = candidates
        .iter()
        .map(|c| c.len() as u64)
        .try_fold(1u64, |acc, n| acc.checked_mul(n))
        .unwrap_or(u64::MAX);
    if space > budget {
        return Err(Error::GroupTooLarge {
            budget,
            needed: space,
        });
    }
    let order_primes = prime_factors(order);
    let mut out = Vec::new();
    let mut index = vec![0usize; factors.len()];
    'outer: loop {
        let images: Vec<CosetLabel> = index
            .iter()
            .enumerate()
            .map(|(i, &k)| candidates[i][k].clone())
            .collect();
        if is_bijective(&images, &factors, &order_primes) {
            out.push(Isomorphism { images });
        }
        // odometer, last coordinate fastest
        let mut i = factors.len();
        loop {
            if i == 0 {
                break 'outer;
            }
            i -= 1;
            index[i] += 1;
            if index[i] < candidates[i].len() {
                break;
            }
            index[i] = 0;
        }
    }
    Ok(out)
}

/// Group isomorphism under which every candidate correction term is bounded
/// by the Goeritz one with an even integer difference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatchingWitness {
    pub iso: Isomorphism,
}

fn is_even_integer(x: &BigRational) -> bool {
    x.is_integer() && x.numer().is_even()
}

/// Re-check a witness against both tables coset by coset.
pub fn verify_witness(
    mq: &CorrectionTable,
    mg: &CorrectionTable,
    witness: &MatchingWitness,
) -> bool {
    mq.values().iter().all(|(g, vq)| {
        let image = witness.iso.apply(mg.group(), g);
        match mg.get(&image) {
            Some(vg) => vq <= vg && is_even_integer(&(vg - vq)),
            None => false,
        }
    })
}

/// Why no positive, even matching exists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Refutation {
    /// The two quotient groups are not isomorphic.
    GroupMismatch {
        candidate_factors: Vec<BigInt>,
        goeritz_factors: Vec<BigInt>,
    },
    /// Even matchings are already impossible: these mod-2 values occur more
    /// often in the candidate table than in the Goeritz table.
    Mod2Mismatch { missing: Vec<BigRational> },
    /// Every isomorphism was checked and none satisfies both conditions.
    Exhausted { tried: u64 },
}

impl std::fmt::Display for Refutation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Refutation::GroupMismatch {
                candidate_factors,
                goeritz_factors,
            } => write!(
                f,
                "group mismatch: invariant factors {candidate_factors:?} vs {goeritz_factors:?}"
            ),
            Refutation::Mod2Mismatch { missing } => {
                let shown: Vec<String> = missing.iter().map(|v| v.to_string()).collect();
                write!(
                    f,
                    "no even matching: value(s) {} in the candidate table mod 2 but not in the Goeritz table",
                    shown.join(", ")
                )
            }
            Refutation::Exhausted { tried } => {
                write!(
                    f,
                    "no positive, even matching among all {tried} isomorphisms"
                )
            }
        }
    }
}

/// Outcome of the matching search.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MatchOutcome {
    Matched(MatchingWitness),
    NoMatching(Refutation),
}

/// First isomorphism (in enumeration order) that is simultaneously a
/// positive and an even matching, or the reason none exists.
pub fn find_matching(
    mq: &CorrectionTable,
    mg: &CorrectionTable,
    budget: u64,
) -> Result<MatchOutcome> {
    if mq.group().invariant_factors() != mg.group().invariant_factors() {
        return Ok(MatchOutcome::NoMatching(Refutation::GroupMismatch {
            candidate_factors: mq.group().invariant_factors().to_vec(),
            goeritz_factors: mg.group().invariant_factors().to_vec(),
        }));
    }

    // an isomorphism with pointwise congruence forces the mod-2 value
    // multisets to agree, so a multiset mismatch refutes evenness outright
    let mut q_mod2: Vec<BigRational> = mq.values().values().map(mod2_value).collect();
    let mut g_mod2: Vec<BigRational> = mg.values().values().map(mod2_value).collect();
    q_mod2.sort();
    g_mod2.sort();
    if q_mod2 != g_mod2 {
        let mut missing = Vec::new();
        for v in &q_mod2 {
            let in_q = q_mod2.iter().filter(|x| *x == v).count();
            let in_g = g_mod2.iter().filter(|x| *x == v).count();
            if in_q > in_g && !missing.contains(v) {
                missing.push(v.clone());
            }
        }
        return Ok(MatchOutcome::NoMatching(Refutation::Mod2Mismatch {
            missing,
        }));
    }

    let isos = enumerate_isomorphisms(mq.group(), mg.group(), budget)?;
    let mut tried = 0u64;
    for iso in isos {
        tried += 1;
        let witness = MatchingWitness { iso };
        if verify_witness(mq, mg, &witness) {
            return Ok(MatchOutcome::Matched(witness));
        }
    }
    Ok(MatchOutcome::NoMatching(Refutation::Exhausted { tried }))
}

/// Where the Goeritz form used in a report came from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GoeritzSource {
    SuppliedMatrix,
    Diagram {
        mirrored: bool,
        coloring_class: usize,
        white_regions: usize,
        deleted_region_min_edge: usize,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Obstructed,
    NotObstructed,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Verdict::Obstructed => write!(f, "obstructed"),
            Verdict::NotObstructed => write!(f, "not obstructed"),
        }
    }
}

/// Full evidence for one sign of the untwisting-number-one test.
#[derive(Debug, Clone)]
pub struct ObstructionReport {
    pub knot: String,
    pub sign: Sign,
    pub determinant: BigInt,
    pub candidate: SymmetricForm,
    pub goeritz: SymmetricForm,
    pub goeritz_source: GoeritzSource,
    pub verdict: Verdict,
    pub witness: Option<MatchingWitness>,
    pub refutation: Option<Refutation>,
    pub m_candidate: CorrectionTable,
    pub m_goeritz: CorrectionTable,
}

fn goeritz_for_sign(record: &KnotRecord, sign: Sign) -> Result<(SymmetricForm, GoeritzSource)> {
    let supplied = match sign {
        Sign::Plus => &record.goeritz,
        Sign::Minus => &record.goeritz_mirror,
    };
    if let Some(matrix) = supplied {
        let form = certify_definiteness(matrix.clone())?;
        if !form.is_negative_definite() {
            return Err(Error::NotNegativeDefinite);
        }
        return Ok((form, GoeritzSource::SuppliedMatrix));
    }
    let Some(pd) = &record.pd else {
        return Err(Error::NotAlternatingAndNoMatrix);
    };
    if !pd.is_alternating() {
        return Err(Error::NotAlternatingAndNoMatrix);
    }
    let oriented: KnotDiagram = match sign {
        Sign::Plus => pd.clone(),
        Sign::Minus => pd.mirror(),
    };
    let coloring = definite_coloring(&oriented)?;
    let g = goeritz_matrix(&oriented, &coloring)?;
    Ok((
        g.form.clone(),
        GoeritzSource::Diagram {
            mirrored: sign == Sign::Minus,
            coloring_class: g.class_index,
            white_regions: g.white_regions,
            deleted_region_min_edge: g.deleted_region_min_edge,
        },
    ))
}

/// Decide whether a single generalized crossing change of the given sign is
/// obstructed for this knot: Goeritz form, determinant, candidate form, both
/// correction tables, matching search.
pub fn obstruct_tu_one(record: &KnotRecord, sign: Sign, budget: u64) -> Result<ObstructionReport> {
    record.validate()?;
    if record.signature != 0 {
        return Err(Error::SignatureNonzero(record.signature));
    }
    record.cross_check_determinant()?;
    let (goeritz, source) = goeritz_for_sign(record, sign)?;
    let det = goeritz.det().abs();
    if let Some(declared) = &record.determinant {
        if &det != declared {
            return Err(Error::DeterminantMismatch {
                computed: det.to_string(),
                declared: declared.to_string(),
            });
        }
    }
    let candidate = candidate_form(&det)?;
    let m_candidate = m_table(&candidate)?;
    let m_goeritz = m_table(&goeritz)?;
    let outcome = find_matching(&m_candidate, &m_goeritz, budget)?;
    let (verdict, witness, refutation) = match outcome {
        MatchOutcome::Matched(w) => {
            assert!(verify_witness(&m_candidate, &m_goeritz, &w));
            (Verdict::NotObstructed, Some(w), None)
        }
        MatchOutcome::NoMatching(r) => (Verdict::Obstructed, None, Some(r)),
    };
    Ok(ObstructionReport {
        knot: record.name.clone(),
        sign,
        determinant: det,
        candidate,
        goeritz,
        goeritz_source: source,
        verdict,
        witness,
        refutation,
        m_candidate,
        m_goeritz,
    })
}

/// Betti number, signature, and sign class of the definite 4-manifold
/// produced by p positive and n negative generalized crossing changes on a
/// knot of signature sigma.
pub fn manifold_profile(p: u64, n: u64, sigma: i64) -> (u64, i64, Definiteness) {
    let b2 = 2 * n + 2 * p;
    let sig = 2 * (n as i64) - 2 * (p as i64) + sigma;
    let flag = if sig == -(b2 as i64) {
        Definiteness::NegativeDefinite
    } else if sig == b2 as i64 {
        Definiteness::PositiveDefinite
    } else {
        Definiteness::Indefinite
    };
    (b2, sig, flag)
}
