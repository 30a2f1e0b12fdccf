use std::fmt;

use serde::{Deserialize, Serialize};

/// The conditions a framework is checked against.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Axiom {
    PositiveCapacity,
    UniqueIdentifier,
    Coherence,
    QuasiClosure,
    UnionClosure,
    PositiveStrength,
    SourceMonotonicity,
    SubsetMonotonicity,
    TargetMonotonicity,
    NoSelfAttacks,
    /// A claim of the reduction to group-attack frameworks, numbered 1 to 5.
    Reduction(u8),
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::PositiveCapacity => "capacity > 0",
            Axiom::UniqueIdentifier => "duplicate identifier",
            Axiom::Coherence => "Coherence",
            Axiom::QuasiClosure => "Quasi-closure by subset relation",
            Axiom::UnionClosure => "Closure by set union",
            Axiom::PositiveStrength => "Attack with a positive strength",
            Axiom::SourceMonotonicity => "Attack monotonicity 1",
            Axiom::SubsetMonotonicity => "subset monotonicity",
            Axiom::TargetMonotonicity => "Attack monotonicity 3",
            Axiom::NoSelfAttacks => "No self attacks",
            Axiom::Reduction(n) => return write!(f, "reduction claim {n}"),
        };
        f.write_str(name)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub axiom: Axiom,
    pub witness: String,
    pub message: String,
}

impl Violation {
    pub fn new(axiom: Axiom, witness: impl Into<String>, message: impl Into<String>) -> Self {
        Self { axiom, witness: witness.into(), message: message.into() }
    }
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}] {}: {}", self.axiom, self.witness, self.message)
    }
}

/// Outcome of a validation pass. `ok` holds exactly when `violations` is empty.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn from_violations(violations: Vec<Violation>) -> Self {
        Self { ok: violations.is_empty(), violations }
    }

    pub fn merge(mut self, other: ValidationReport) -> Self {
        self.violations.extend(other.violations);
        self.ok = self.violations.is_empty();
        self
    }

    pub fn has(&self, axiom: Axiom) -> bool {
        self.violations.iter().any(|v| v.axiom == axiom)
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.ok {
            return f.write_str("ok");
        }
        for (i, v) in self.violations.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}
