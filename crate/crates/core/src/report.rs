//! Machine-readable verification outcomes shared by every checker.

use std::collections::BTreeSet;
use std::fmt;

use crate::linalg::CoordVector;

/// One failed instance of an axiom: the basis indices it was evaluated at and
/// both sides of the identity in coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub axiom: String,
    pub witness: Vec<usize>,
    pub lhs: CoordVector,
    pub rhs: CoordVector,
}

/// Axioms checked plus every violation found. An empty violation list means
/// the structure passed.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VerificationReport {
    checks: Vec<String>,
    violations: Vec<Violation>,
}

impl VerificationReport {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers `axiom` as checked without recording an instance.
    pub fn touch(&mut self, axiom: &str) {
        if !self.checks.iter().any(|c| c == axiom) {
            self.checks.push(axiom.to_string());
        }
    }

    /// Compares both sides of one instance of `axiom`.
    pub fn check(&mut self, axiom: &str, witness: &[usize], lhs: &CoordVector, rhs: &CoordVector) -> bool {
        self.touch(axiom);
        if lhs == rhs {
            return true;
        }
        self.push(Violation {
            axiom: axiom.to_string(),
            witness: witness.to_vec(),
            lhs: lhs.clone(),
            rhs: rhs.clone(),
        });
        false
    }

    /// Records a violation that has no natural pair of sides (a rank or
    /// dimension condition, say); the sides carry the observed/expected values.
    pub fn fail(&mut self, axiom: &str, witness: &[usize], lhs: CoordVector, rhs: CoordVector) {
        self.touch(axiom);
        self.push(Violation {
            axiom: axiom.to_string(),
            witness: witness.to_vec(),
            lhs,
            rhs,
        });
    }

    fn push(&mut self, v: Violation) {
        let pos = self
            .violations
            .partition_point(|w| (&w.axiom, &w.witness) <= (&v.axiom, &v.witness));
        self.violations.insert(pos, v);
    }

    pub fn merge(&mut self, other: VerificationReport) {
        for c in &other.checks {
            self.touch(c);
        }
        for v in other.violations {
            self.push(v);
        }
    }

    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// Axioms in the order they were first checked.
    pub fn checks(&self) -> &[String] {
        &self.checks
    }

    /// Violations sorted by axiom id, then witness indices.
    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn violated_axioms(&self) -> BTreeSet<&str> {
        self.violations.iter().map(|v| v.axiom.as_str()).collect()
    }

    pub fn violates(&self, axiom: &str) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }

    pub fn has_checked(&self, axiom: &str) -> bool {
        self.checks.iter().any(|c| c == axiom)
    }
}

impl fmt::Display for VerificationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            let n = self.violations.iter().filter(|v| &v.axiom == c).count();
            if n == 0 {
                writeln!(f, "  [pass] {c}")?;
            } else {
                writeln!(f, "  [FAIL] {c}: {n} violation(s)")?;
                for v in self.violations.iter().filter(|v| &v.axiom == c).take(3) {
                    writeln!(f, "         at {:?}: lhs {} rhs {}", v.witness, v.lhs, v.rhs)?;
                }
            }
        }
        Ok(())
    }
}
