use std::fmt;

use crate::error::{Error, Result};

/// Index of a ring generator. Index 0 is always the distinguished `X`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VarId(pub usize);

impl VarId {
    pub const X: VarId = VarId(0);

    pub fn index(self) -> usize {
        self.0
    }
}

/// Variable names of a polynomial ring `ℚ[X; Y₁, …]`. The first name plays
/// the role of `X`; the rest are the `Y` variables.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Ring {
    names: Vec<String>,
}

impl Ring {
    pub fn new<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        if names.is_empty() {
            return Err(Error::Precondition("a ring needs at least the variable X".into()));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::Precondition(format!("duplicate variable name `{n}`")));
            }
        }
        Ok(Ring { names })
    }

    /// `ℚ[X, Y]`, the two-variable ring used throughout the Y-degree family.
    pub fn xy() -> Self {
        Ring::new(["X", "Y"]).expect("distinct names")
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, v: VarId) -> &str {
        &self.names[v.0]
    }

    pub fn var(&self, name: &str) -> Option<VarId> {
        self.names.iter().position(|n| n == name).map(VarId)
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> {
        (0..self.names.len()).map(VarId)
    }

    /// The generators other than `X`.
    pub fn y_vars(&self) -> impl Iterator<Item = VarId> {
        (1..self.names.len()).map(VarId)
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q[{}]", self.names.join(", "))
    }
}
