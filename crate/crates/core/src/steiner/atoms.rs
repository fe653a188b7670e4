//! The branching over labeled atoms.
//!
//! Words here are local to the smallest atom containing the target set: a
//! vertex of `G_s` is a word of length `m - s`, its children in `G_{s-1}` are
//! the `l` one-digit extensions, and `x` precedes `y` iff `x` is a proper
//! prefix of `y`.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{AtomId, SierpinskiGraph, VertexWord};

/// Smallest atom containing all of `targets`.
pub fn reduce_to_minimal_atom(g: &SierpinskiGraph, targets: &[VertexWord]) -> Result<AtomId> {
    if targets.len() < 2 {
        return Err(Error::invalid("need at least two target vertices"));
    }
    for t in targets {
        g.validate(t)?;
    }
    let first = targets[0].digits();
    let common = targets[1..].iter().fold(first.len(), |len, t| {
        first[..len]
            .iter()
            .zip(t.digits())
            .take_while(|(a, b)| a == b)
            .count()
    });
    if common == g.depth() {
        return Err(Error::invalid("target vertices are not distinct"));
    }
    Ok(AtomId {
        prefix: targets[0].prefix(common),
        level: g.depth() - common,
    })
}

/// Labeled vertices `U^s` of every level and the child label sets `W^u`.
#[derive(Clone, Debug)]
pub struct LabeledAtomTree {
    depth: usize,
    base: usize,
    k: usize,
    /// `labeled[s]` holds `U^s`, words of length `depth - s`.
    labeled: Vec<BTreeSet<VertexWord>>,
}

impl LabeledAtomTree {
    /// `local_targets` are words of a common length `m` (the atom depth).
    pub fn new(base: usize, local_targets: &[VertexWord]) -> Result<Self> {
        let depth = local_targets
            .first()
            .map(|w| w.len())
            .ok_or_else(|| Error::invalid("empty target set"))?;
        if local_targets.iter().any(|w| w.len() != depth) {
            return Err(Error::invalid("target words differ in length"));
        }
        let labeled: Vec<BTreeSet<VertexWord>> = (0..=depth)
            .map(|s| local_targets.iter().map(|w| w.prefix(depth - s)).collect())
            .collect();
        if labeled[0].len() != local_targets.len() {
            return Err(Error::invalid("target vertices are not distinct"));
        }
        Ok(LabeledAtomTree {
            depth,
            base,
            k: local_targets.len(),
            labeled,
        })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn root(&self) -> VertexWord {
        VertexWord::default()
    }

    /// `U^s`.
    pub fn labeled(&self, s: usize) -> &BTreeSet<VertexWord> {
        &self.labeled[s]
    }

    pub fn is_labeled(&self, u: &VertexWord) -> bool {
        u.len() <= self.depth && self.labeled[self.depth - u.len()].contains(u)
    }

    /// `W^u`: labeled children of `u` (empty for level-0 words).
    pub fn w_of(&self, u: &VertexWord) -> Vec<VertexWord> {
        if u.len() >= self.depth {
            return Vec::new();
        }
        self.labeled[self.depth - u.len() - 1]
            .range(u.child(0)..)
            .take_while(|c| c.digits().starts_with(u.digits()))
            .cloned()
            .collect()
    }

    pub fn precedes(&self, x: &VertexWord, y: &VertexWord) -> bool {
        x.len() < y.len() && y.digits().starts_with(x.digits())
    }

    /// For every root-to-leaf chain of labeled atoms with children, the pair
    /// `(sum of |W^x|, k + p - 1)`; the first never exceeds the second.
    pub fn chain_sums(&self) -> Vec<(VertexWord, usize, usize)> {
        self.labeled[0]
            .iter()
            .map(|leaf| {
                let sum: usize = (0..self.depth).map(|len| self.w_of(&leaf.prefix(len)).len()).sum();
                (leaf.clone(), sum, self.k + self.depth - 1)
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> VertexWord {
        s.parse().unwrap()
    }

    fn ws(list: &[&str]) -> Vec<VertexWord> {
        list.iter().map(|s| w(s)).collect()
    }

    #[test]
    fn minimal_atom_examples() {
        let g = SierpinskiGraph::new(3, 4).unwrap();
        let a = reduce_to_minimal_atom(&g, &ws(&["000", "001", "013"])).unwrap();
        assert_eq!((a.prefix, a.level), (w("0"), 2));
        let whole = reduce_to_minimal_atom(&g, &ws(&["000", "123"])).unwrap();
        assert_eq!((whole.prefix, whole.level), (w(""), 3));
        let leaf = reduce_to_minimal_atom(&g, &ws(&["210", "212", "213"])).unwrap();
        assert_eq!((leaf.prefix, leaf.level), (w("21"), 1));
        assert!(reduce_to_minimal_atom(&g, &ws(&["000"])).is_err());
        assert!(reduce_to_minimal_atom(&g, &ws(&["000", "000"])).is_err());
    }

    #[test]
    fn labels_of_the_s34_example() {
        let t = LabeledAtomTree::new(4, &ws(&["000", "001", "013", "122"])).unwrap();
        assert_eq!(t.labeled(1).iter().cloned().collect::<Vec<_>>(), ws(&["00", "01", "12"]));
        assert_eq!(t.w_of(&w("0")), ws(&["00", "01"]));
        assert_eq!(t.w_of(&w("")), ws(&["0", "1"]));
        assert_eq!(t.w_of(&w("00")), ws(&["000", "001"]));
        assert!(t.w_of(&w("2")).is_empty());
        assert!(t.is_labeled(&w("12")) && !t.is_labeled(&w("13")));
        assert!(t.precedes(&w("0"), &w("013")) && !t.precedes(&w("1"), &w("013")));
        for (_, sum, bound) in t.chain_sums() {
            assert!(sum <= bound);
        }
    }
}
