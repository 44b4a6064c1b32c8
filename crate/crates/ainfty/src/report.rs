//! Violation reports shared by all identity checkers: deterministic, diffable,
//! and shrinkable fuzz output.

use crate::scalar::Scalar;
use std::fmt;

/// A single nonzero residual of some identity, evaluated on one basis element.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// Which identity failed (e.g. "stasheff", "module", "em-l2.11", "square").
    pub identity: String,
    /// Arity n of the identity instance.
    pub arity: usize,
    /// Total degree of the witness basis element.
    pub degree: i64,
    /// Witness: per-factor degrees and indices of the input basis element.
    pub witness_degrees: Vec<i64>,
    pub witness_indices: Vec<usize>,
    /// Nonzero residual coordinates (output index, value).
    pub residual: Vec<(usize, Scalar)>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} n={} deg={} witness=({:?},{:?}) residual=[",
            self.identity, self.arity, self.degree, self.witness_degrees, self.witness_indices
        )?;
        for (i, (idx, v)) in self.residual.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}:{}", idx, v)?;
        }
        write!(f, "]")
    }
}

/// Outcome of an identity check: structural malformations are reported
/// distinctly from identity violations.
#[derive(Clone, Debug, Default)]
pub struct ViolationReport {
    pub malformed: Vec<String>,
    pub violations: Vec<Violation>,
}

impl ViolationReport {
    pub fn passed(&self) -> bool {
        self.malformed.is_empty() && self.violations.is_empty()
    }

    pub fn merge(&mut self, other: ViolationReport) {
        self.malformed.extend(other.malformed);
        self.violations.extend(other.violations);
    }

    /// Record every nonzero column of a residual graded map, tagged by the
    /// basis enumeration of `src_ts`.
    pub fn record_residual(
        &mut self,
        identity: &str,
        arity: usize,
        residual: &crate::graded::GradedMap,
        src_ts: &crate::tensor::TensorSpace,
    ) {
        for d in residual.nonzero_degrees().collect::<Vec<_>>() {
            let b = residual.block(d);
            for (col, ti) in src_ts.basis_at(d).iter().enumerate() {
                let res: Vec<(usize, Scalar)> = (0..b.rows)
                    .filter(|&i| !b.at(i, col).is_zero())
                    .map(|i| (i, b.at(i, col).clone()))
                    .collect();
                if !res.is_empty() {
                    self.violations.push(Violation {
                        identity: identity.to_string(),
                        arity,
                        degree: d,
                        witness_degrees: ti.degrees.clone(),
                        witness_indices: ti.indices.clone(),
                        residual: res,
                    });
                }
            }
        }
    }
}

impl fmt::Display for ViolationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return writeln!(f, "pass");
        }
        for m in &self.malformed {
            writeln!(f, "malformed: {}", m)?;
        }
        for v in &self.violations {
            writeln!(f, "violation: {}", v)?;
        }
        Ok(())
    }
}
