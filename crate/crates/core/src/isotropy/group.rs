use super::IsotropyResult;
use crate::derivop::Automorphism;
use crate::error::{Error, Result};

/// Multiplication table of a finite isotropy result. `table[i][j]` is the
/// index of `elements[i] ∘ elements[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupCertificate {
    pub order: usize,
    pub table: Vec<Vec<usize>>,
    pub inverses: Vec<usize>,
    /// An element whose powers exhaust the group, if any.
    pub cyclic_generator: Option<usize>,
}

impl GroupCertificate {
    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_cyclic(&self) -> bool {
        self.cyclic_generator.is_some()
    }
}

/// Checks identity, closure and inverses, and looks for a generator.
pub fn group_table(result: &IsotropyResult) -> Result<GroupCertificate> {
    let elements =
        result.elements().ok_or_else(|| Error::Precondition("group tables need a finite isotropy result".into()))?;
    let index_of = |rho: &Automorphism| elements.iter().position(|e| e == rho);
    let identity = elements
        .iter()
        .position(Automorphism::is_identity)
        .ok_or_else(|| Error::InvariantViolation("the group has no identity".into()))?;
    let mut table = Vec::with_capacity(elements.len());
    for a in elements {
        let mut row = Vec::with_capacity(elements.len());
        for b in elements {
            let ab = a.compose(b)?;
            row.push(
                index_of(&ab)
                    .ok_or_else(|| Error::InvariantViolation("the group is not closed under composition".into()))?,
            );
        }
        table.push(row);
    }
    let mut inverses = Vec::with_capacity(elements.len());
    for (i, a) in elements.iter().enumerate() {
        let inv = index_of(&a.inverse()).ok_or_else(|| Error::InvariantViolation("an inverse is missing".into()))?;
        if table[i][inv] != identity || table[inv][i] != identity {
            return Err(Error::InvariantViolation("an inverse does not compose to the identity".into()));
        }
        inverses.push(inv);
    }
    let order = elements.len();
    let cyclic_generator = (0..order).find(|&g| {
        let mut seen = vec![false; order];
        let mut cur = identity;
        for _ in 0..order {
            seen[cur] = true;
            cur = table[g][cur];
        }
        seen.iter().all(|&s| s)
    });
    Ok(GroupCertificate { order, table, inverses, cyclic_generator })
}
