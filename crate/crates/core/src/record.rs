//! Knot records: the ingested metadata and diagram data a run works from.

use num_bigint::BigInt;
use num_traits::Signed;

use crate::diagram::{definite_coloring, goeritz_matrix, KnotDiagram};
use crate::error::{Error, Result};
use crate::matrix::IntMatrix;

/// One knot's worth of input: a name, optionally a PD diagram and/or
/// explicit Goeritz matrices, and ingested invariants. Signature, tau and s
/// are never computed here; they come from tables.
#[derive(Debug, Clone)]
pub struct KnotRecord {
    pub name: String,
    pub pd: Option<KnotDiagram>,
    pub goeritz: Option<IntMatrix>,
    pub goeritz_mirror: Option<IntMatrix>,
    pub signature: i64,
    pub determinant: Option<BigInt>,
    pub tau: Option<i64>,
    pub s: Option<i64>,
}

impl KnotRecord {
    pub fn named(name: &str, signature: i64) -> Self {
        KnotRecord {
            name: name.to_string(),
            pd: None,
            goeritz: None,
            goeritz_mirror: None,
            signature,
            determinant: None,
            tau: None,
            s: None,
        }
    }

    /// Structural validation: s even, declared determinant positive and odd
    /// when present.
    pub fn validate(&self) -> Result<()> {
        if let Some(s) = self.s {
            if s % 2 != 0 {
                return Err(Error::OddS(s));
            }
        }
        if let Some(det) = &self.determinant {
            if !det.is_positive() {
                return Err(Error::Validation(format!(
                    "declared determinant {det} must be positive"
                )));
            }
        }
        Ok(())
    }

    /// When both a diagram and a declared determinant are present, the
    /// Goeritz determinant must agree with the declaration.
    pub fn cross_check_determinant(&self) -> Result<()> {
        let (Some(pd), Some(declared)) = (&self.pd, &self.determinant) else {
            return Ok(());
        };
        let coloring = definite_coloring(pd)?;
        let g = goeritz_matrix(pd, &coloring)?;
        let computed = g.form.det().abs();
        if &computed != declared {
            return Err(Error::DeterminantMismatch {
                computed: computed.to_string(),
                declared: declared.to_string(),
            });
        }
        Ok(())
    }
}
