//! Local connectors inside a single complete graph `H^u`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::VertexWord;
use crate::ham::{constrained_paths, decompose_complete};

use super::census::{AttachmentCensus, AttachmentType};
use super::values::ceil_half;
use super::{ConstructionFailure, ConstructionMode, Edge, FailureKind};

pub(crate) fn edge(a: &VertexWord, b: &VertexWord) -> Edge {
    if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

fn star(center: &VertexWord, leaves: &[VertexWord]) -> Vec<Edge> {
    leaves.iter().filter(|x| *x != center).map(|x| edge(center, x)).collect()
}

fn path_edges(path: &[VertexWord]) -> Vec<Edge> {
    path.windows(2).map(|p| edge(&p[0], &p[1])).collect()
}

/// Which rule produced a local connector.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    /// Nothing to add: the single labeled child is the attachment itself.
    Empty,
    /// Star from `center` to every labeled child.
    Star { center: VertexWord },
    /// The edge between both attachments plus a star from the smaller one.
    EdgeAndStar { center: VertexWord },
    /// Hamiltonian path through the labeled children.
    Path,
    /// Star spanning the whole complete graph (unlabeled atom).
    Spanning { center: VertexWord },
    /// Star joining only the attachments (unlabeled atom).
    Connector { center: VertexWord },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LocalSubtree {
    pub tree: usize,
    pub method: Method,
    pub edges: Vec<Edge>,
}

/// Initial trees inside `K_l` for the labeled words `w` (all of length 1).
pub fn base_case_trees(w: &[VertexWord], k: usize, l: usize) -> Result<Vec<Vec<Edge>>> {
    if k < 3 || k > l {
        return Err(Error::invalid(format!("k = {k} outside 3..={l}")));
    }
    let mut w = w.to_vec();
    w.sort();
    w.dedup();
    if w.len() < 2 || w.len() > k {
        return Err(Error::invalid(format!("|W| = {} outside 2..={k}", w.len())));
    }
    if w.iter().any(|x| x.len() != 1 || x.digits()[0] as usize >= l) {
        return Err(Error::invalid("base-case words must be single digits below l"));
    }
    let h = ceil_half(k);
    let c = l - h;
    let outside: Vec<VertexWord> = (0..l as u8)
        .map(|d| VertexWord::from_digits(vec![d]))
        .filter(|x| w.binary_search(x).is_err())
        .collect();
    if w.len() < h {
        return Ok(outside[..c].iter().map(|x| star(x, &w)).collect());
    }
    let paths = w.len() - h;
    let mut trees: Vec<Vec<Edge>> = decompose_complete(w.len())?.paths[..paths]
        .iter()
        .map(|p| {
            let mapped: Vec<VertexWord> = p.iter().map(|&i| w[i].clone()).collect();
            let mut e = path_edges(&mapped);
            e.sort();
            e
        })
        .collect();
    trees.extend(outside.iter().map(|x| star(x, &w)));
    debug_assert_eq!(trees.len(), c);
    Ok(trees)
}

/// Connectors inside `H^u` for a labeled atom, one per tree in tree order.
pub fn expand_atom(census: &AttachmentCensus) -> Result<Vec<LocalSubtree>> {
    let w = &census.labeled_children;
    let types: Vec<AttachmentType> = (0..census.tree_count())
        .map(|i| census.classify(i))
        .collect::<Result<_>>()?;
    let mut out: Vec<Option<LocalSubtree>> = vec![None; types.len()];
    let mut centers = census.residual.iter();
    let mut needs_path = Vec::new();
    for (i, &t) in types.iter().enumerate() {
        let att = &census.attachments[i];
        let (method, edges) = match t {
            AttachmentType::Type2 => (Method::Star { center: att[0].clone() }, star(&att[0], w)),
            AttachmentType::Type5 => {
                let x = att.iter().find(|x| !census.in_w(x)).expect("type 5 has an outside attachment");
                (Method::Star { center: x.clone() }, star(x, w))
            }
            AttachmentType::Type4 => {
                let (x, y) = (&att[0], &att[1]);
                let mut e = vec![edge(x, y)];
                e.extend(star(x, w));
                (Method::EdgeAndStar { center: x.clone() }, e)
            }
            AttachmentType::Type1 if w.len() == 1 => (Method::Empty, Vec::new()),
            AttachmentType::Type1 | AttachmentType::Type3 => match centers.next() {
                Some(r) => (Method::Star { center: r.clone() }, star(r, w)),
                None => {
                    needs_path.push(i);
                    continue;
                }
            },
        };
        out[i] = Some(LocalSubtree { tree: i, method, edges });
    }

    if !needs_path.is_empty() {
        if needs_path.len() > w.len() / 2 {
            return Err(ConstructionFailure::at_census(
                FailureKind::PathBudget,
                census,
                format!("{} trees need a path through {} labeled children", needs_path.len(), w.len()),
            )
            .into());
        }
        let pos = |x: &VertexWord| w.binary_search(x).expect("attachment inside W");
        let mut used: BTreeSet<usize> = needs_path
            .iter()
            .flat_map(|&i| census.attachments[i].iter().map(pos))
            .collect();
        let pairs: Vec<(usize, usize)> = needs_path
            .iter()
            .map(|&i| {
                let att = &census.attachments[i];
                if att.len() == 2 {
                    (pos(&att[0]), pos(&att[1]))
                } else {
                    let partner = (0..w.len()).find(|p| !used.contains(p)).expect("enough free endpoints");
                    used.insert(partner);
                    (pos(&att[0]), partner)
                }
            })
            .collect();
        let paths = constrained_paths(w.len(), &pairs)?;
        for (&i, p) in needs_path.iter().zip(&paths.paths) {
            let mapped: Vec<VertexWord> = p.iter().map(|&j| w[j].clone()).collect();
            out[i] = Some(LocalSubtree {
                tree: i,
                method: Method::Path,
                edges: path_edges(&mapped),
            });
        }
    }
    Ok(out.into_iter().map(|s| s.expect("every tree handled")).collect())
}

/// Connectors inside `H^u` for an unlabeled atom; at most one tree may pass
/// through it.
pub fn expand_unlabeled(
    atom: &VertexWord,
    level: usize,
    base: usize,
    attachments: &[Vec<VertexWord>],
    mode: ConstructionMode,
) -> Result<Vec<LocalSubtree>> {
    let users: Vec<usize> = (0..attachments.len()).filter(|&i| !attachments[i].is_empty()).collect();
    if users.len() > 1 {
        return Err(ConstructionFailure::new(
            FailureKind::SharedUnlabeledAtom,
            level,
            atom.clone(),
            format!("unlabeled atom lies in trees {users:?}"),
        )
        .into());
    }
    Ok(users
        .into_iter()
        .map(|i| {
            let att = &attachments[i];
            match mode {
                ConstructionMode::Paper => {
                    let center = atom.child(0);
                    let all: Vec<VertexWord> = (0..base as u8).map(|d| atom.child(d)).collect();
                    LocalSubtree {
                        tree: i,
                        edges: star(&center, &all),
                        method: Method::Spanning { center },
                    }
                }
                ConstructionMode::Minimal => {
                    let center = att[0].clone();
                    LocalSubtree {
                        tree: i,
                        edges: star(&center, att),
                        method: Method::Connector { center },
                    }
                }
            }
        })
        .collect())
}
