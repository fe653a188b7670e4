use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::VertexWord;

use super::values::ceil_half;

/// How a tree of the coarser level meets a labeled atom `u`, given its
/// attachment vertices `V_{u,i}` inside the complete graph `H^u`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum AttachmentType {
    /// One attachment, inside `W^u`.
    Type1,
    /// One attachment, outside `W^u`.
    Type2,
    /// Two attachments, both inside `W^u`.
    Type3,
    /// Two attachments, both outside `W^u`.
    Type4,
    /// Two attachments, exactly one inside `W^u`.
    Type5,
}

impl AttachmentType {
    pub fn number(self) -> usize {
        match self {
            AttachmentType::Type1 => 1,
            AttachmentType::Type2 => 2,
            AttachmentType::Type3 => 3,
            AttachmentType::Type4 => 4,
            AttachmentType::Type5 => 5,
        }
    }
}

/// Per-atom bookkeeping for one refinement step at a labeled atom.
#[derive(Clone, Debug, Serialize)]
pub struct AttachmentCensus {
    /// The labeled vertex `u` of `G_s` (a local word).
    pub atom: VertexWord,
    pub level: usize,
    pub base: usize,
    pub k: usize,
    /// `W^u`, ascending.
    pub labeled_children: Vec<VertexWord>,
    /// `V_{u,i}` per tree, each ascending.
    pub attachments: Vec<Vec<VertexWord>>,
    /// `R(u)`, ascending.
    pub residual: Vec<VertexWord>,
}

impl AttachmentCensus {
    pub fn new(
        atom: VertexWord,
        level: usize,
        base: usize,
        k: usize,
        labeled_children: Vec<VertexWord>,
        attachments: Vec<Vec<VertexWord>>,
    ) -> Self {
        let residual = (0..base as u8)
            .map(|j| atom.child(j))
            .filter(|x| !labeled_children.contains(x) && !attachments.iter().any(|a| a.contains(x)))
            .collect();
        AttachmentCensus {
            atom,
            level,
            base,
            k,
            labeled_children,
            attachments,
            residual,
        }
    }

    pub fn tree_count(&self) -> usize {
        self.attachments.len()
    }

    pub fn in_w(&self, x: &VertexWord) -> bool {
        self.labeled_children.binary_search(x).is_ok()
    }

    pub fn classify(&self, i: usize) -> Result<AttachmentType> {
        classify_type(self, i)
    }

    /// `[n1, n2, n3, n4, n5]`.
    pub fn counts(&self) -> Result<[usize; 5]> {
        let mut n = [0; 5];
        for i in 0..self.tree_count() {
            n[self.classify(i)?.number() - 1] += 1;
        }
        Ok(n)
    }

    /// `|R(u)| = l - |W^u| - (n2 + 2 n4 + n5)`.
    pub fn residual_identity_holds(&self) -> Result<bool> {
        let n = self.counts()?;
        let used = self.labeled_children.len() + n[1] + 2 * n[3] + n[4];
        Ok(self.base >= used && self.residual.len() == self.base - used)
    }

    /// `n1 + n3 - |R(u)|`: the number of trees that must take a Hamiltonian
    /// path through `W^u` because fresh star centres ran out.
    pub fn path_demand(&self) -> Result<i64> {
        let n = self.counts()?;
        Ok(n[0] as i64 + n[2] as i64 - self.residual.len() as i64)
    }

    /// `n1 + n3 - |R(u)| = n4 + |W^u| - ceil(k/2)`.
    pub fn balance_identity_holds(&self) -> Result<bool> {
        let n = self.counts()?;
        let rhs = n[3] as i64 + self.labeled_children.len() as i64 - ceil_half(self.k) as i64;
        Ok(self.path_demand()? == rhs)
    }

    /// `n1 + n3 - |R(u)| <= floor(|W^u| / 2)` whenever `|W^u| >= 2`.
    pub fn path_budget_holds(&self) -> Result<bool> {
        let w = self.labeled_children.len();
        Ok(w < 2 || self.path_demand()? <= (w / 2) as i64)
    }
}

/// Type of tree `i` at the census atom.
pub fn classify_type(census: &AttachmentCensus, i: usize) -> Result<AttachmentType> {
    let att = census
        .attachments
        .get(i)
        .ok_or_else(|| Error::invalid(format!("no tree {i} at atom {}", census.atom)))?;
    let inside = att.iter().filter(|x| census.in_w(x)).count();
    match (att.len(), inside) {
        (1, 1) => Ok(AttachmentType::Type1),
        (1, 0) => Ok(AttachmentType::Type2),
        (2, 2) => Ok(AttachmentType::Type3),
        (2, 0) => Ok(AttachmentType::Type4),
        (2, 1) => Ok(AttachmentType::Type5),
        (len, _) => Err(Error::Invariant(format!(
            "tree {i} has {len} attachments at labeled atom <{}> (level {}); expected 1 or 2",
            census.atom, census.level
        ))),
    }
}
