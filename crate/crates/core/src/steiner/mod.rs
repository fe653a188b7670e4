//! Explicit packings of internally disjoint Steiner trees in `S(n, l)`.
//!
//! The construction works top-down over the atom hierarchy: a packing of the
//! contracted graph `G_s` is refined into one of `G_{s-1}` by lifting every
//! tree edge and then connecting, inside each atom, the attachment vertices of
//! every tree with the atom's labeled children. Every refinement step checks
//! its bookkeeping identities at runtime; a violation aborts the construction
//! with a [`ConstructionFailure`] carrying the offending census.

mod atoms;
mod census;
mod expand;
mod values;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{adjacency_position, AtomId, SierpinskiGraph, VertexWord};
use crate::ham::decompose_sierpinski;
use crate::oracle::{verify_packing, Flavor, GenericGraph, Verdict};

pub use atoms::{reduce_to_minimal_atom, LabeledAtomTree};
pub use census::{classify_type, AttachmentCensus, AttachmentType};
pub use expand::{base_case_trees, expand_atom, expand_unlabeled, LocalSubtree, Method};
pub use values::{connectivity_value, worst_case_subset, ConnectivityValue};

use expand::edge;

/// An undirected edge with endpoints in ascending order.
pub type Edge = (VertexWord, VertexWord);

/// How unlabeled atoms are filled in.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstructionMode {
    /// A star spanning the whole atom, kept at the finest level.
    #[default]
    Paper,
    /// Only the attachments are joined; pendant non-targets are pruned.
    Minimal,
}

/// Which construction produced a tree set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    Paper,
    Minimal,
    Hamiltonian,
}

impl From<ConstructionMode> for Strategy {
    fn from(m: ConstructionMode) -> Self {
        match m {
            ConstructionMode::Paper => Strategy::Paper,
            ConstructionMode::Minimal => Strategy::Minimal,
        }
    }
}

impl fmt::Display for ConstructionMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&Strategy::from(*self), f)
    }
}

impl FromStr for ConstructionMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "paper" => Ok(ConstructionMode::Paper),
            "minimal" => Ok(ConstructionMode::Minimal),
            _ => Err(Error::invalid(format!("unknown construction mode {s:?}"))),
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Strategy::Paper => "paper",
            Strategy::Minimal => "minimal",
            Strategy::Hamiltonian => "hamiltonian",
        })
    }
}

/// Which runtime check failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum FailureKind {
    /// A labeled vertex has degree outside `1..=2` in some tree.
    AttachmentDegree,
    /// `|R(u)|` disagrees with the attachment counts.
    ResidualCount,
    /// The balance identity between path demand and counts fails.
    Balance,
    /// More trees need a Hamiltonian path than `W^u` can supply.
    PathBudget,
    /// A chain of labeled atoms has too many labeled children in total.
    ChainBound,
    /// Two trees pass through the same unlabeled atom.
    SharedUnlabeledAtom,
}

/// Diagnostics for an aborted construction. Census words are local to the
/// minimal atom; prepend `prefix` for global vertex names.
#[derive(Clone, Debug, Serialize)]
pub struct ConstructionFailure {
    pub kind: FailureKind,
    pub level: usize,
    pub prefix: VertexWord,
    pub atom: VertexWord,
    pub detail: String,
    pub census: Option<AttachmentCensus>,
}

impl ConstructionFailure {
    pub(crate) fn new(kind: FailureKind, level: usize, atom: VertexWord, detail: String) -> Self {
        ConstructionFailure {
            kind,
            level,
            prefix: VertexWord::default(),
            atom,
            detail,
            census: None,
        }
    }

    pub(crate) fn at_census(kind: FailureKind, census: &AttachmentCensus, detail: String) -> Self {
        ConstructionFailure {
            census: Some(census.clone()),
            ..Self::new(kind, census.level, census.atom.clone(), detail)
        }
    }

    pub fn global_atom(&self) -> VertexWord {
        self.prefix.concat(self.atom.digits())
    }
}

fn join(words: &[VertexWord]) -> String {
    words.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for ConstructionFailure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{:?} at atom <{}> (level {}): {}",
            self.kind,
            self.global_atom(),
            self.level,
            self.detail
        )?;
        if let Some(c) = &self.census {
            write!(f, "; W = {{{}}}, R = {{{}}}", join(&c.labeled_children), join(&c.residual))?;
            for (i, a) in c.attachments.iter().enumerate() {
                write!(f, ", V{i} = {{{}}}", join(a))?;
            }
        }
        Ok(())
    }
}

/// How many runtime checks a construction performed. A successful
/// construction always reports zero violations.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct AuditCounters {
    pub atoms_expanded: usize,
    pub residual_checks: usize,
    pub balance_checks: usize,
    pub budget_checks: usize,
    pub degree_checks: usize,
    pub chain_checks: usize,
    pub violations: usize,
}

impl AuditCounters {
    pub fn total_checks(&self) -> usize {
        self.residual_checks + self.balance_checks + self.budget_checks + self.degree_checks + self.chain_checks
    }
}

/// The forest after refining down to `level`, with global word prefixes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LevelForest {
    pub level: usize,
    pub trees: Vec<Vec<Edge>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SteinerTreeSet {
    pub n: usize,
    pub l: usize,
    /// Targets, ascending.
    pub targets: Vec<VertexWord>,
    pub strategy: Strategy,
    pub atom: AtomId,
    /// Each tree's edges, ascending.
    pub trees: Vec<Vec<Edge>>,
    /// Intermediate forests, coarsest first (empty for the path construction).
    pub levels: Vec<LevelForest>,
    pub audit: AuditCounters,
}

/// Serialized shape of a tree set: `{n, l, U, trees, mode}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TreeSetExport {
    pub n: usize,
    pub l: usize,
    #[serde(rename = "U")]
    pub targets: Vec<VertexWord>,
    pub trees: Vec<Vec<[VertexWord; 2]>>,
    pub mode: Strategy,
}

impl TreeSetExport {
    pub fn trees(&self) -> Vec<Vec<Edge>> {
        self.trees
            .iter()
            .map(|t| t.iter().map(|[a, b]| edge(a, b)).collect())
            .collect()
    }

    pub fn verify(&self, flavor: Flavor) -> Result<Verdict> {
        let g = SierpinskiGraph::new(self.n, self.l)?;
        verify_tree_set(&g, &self.trees(), &self.targets, flavor)
    }
}

const PALETTE: [&str; 12] = [
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b", "#e377c2", "#7f7f7f", "#bcbd22",
    "#17becf", "#393b79", "#637939",
];

impl SteinerTreeSet {
    pub fn k(&self) -> usize {
        self.targets.len()
    }

    pub fn export(&self) -> TreeSetExport {
        TreeSetExport {
            n: self.n,
            l: self.l,
            targets: self.targets.clone(),
            trees: self
                .trees
                .iter()
                .map(|t| t.iter().map(|(a, b)| [a.clone(), b.clone()]).collect())
                .collect(),
            mode: self.strategy,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.export()).expect("tree sets serialize")
    }

    /// Graphviz rendering with one colour per tree; targets are filled.
    pub fn to_dot(&self) -> String {
        let mut s = format!(
            "graph steiner {{\n  // n={} l={} k={} mode={}\n  node [shape=circle];\n",
            self.n,
            self.l,
            self.k(),
            self.strategy
        );
        for t in &self.targets {
            s.push_str(&format!("  \"{t}\" [style=filled, fillcolor=\"#ffe08a\"];\n"));
        }
        for (i, tree) in self.trees.iter().enumerate() {
            let color = PALETTE[i % PALETTE.len()];
            for (a, b) in tree {
                s.push_str(&format!("  \"{a}\" -- \"{b}\" [color=\"{color}\", label=\"T{i}\"];\n"));
            }
        }
        s.push_str("}\n");
        s
    }

    pub fn verify(&self, flavor: Flavor) -> Result<Verdict> {
        let g = SierpinskiGraph::new(self.n, self.l)?;
        verify_tree_set(&g, &self.trees, &self.targets, flavor)
    }
}

/// Checks trees given as word edges against `g` without materializing it:
/// every edge must exist, every tree must be a Steiner tree for `targets`,
/// trees must be edge-disjoint and, for the vertex flavor, meet only in
/// targets.
pub fn verify_tree_set(
    g: &SierpinskiGraph,
    trees: &[Vec<Edge>],
    targets: &[VertexWord],
    flavor: Flavor,
) -> Result<Verdict> {
    let mut ids: BTreeMap<&VertexWord, usize> = BTreeMap::new();
    for w in targets.iter().chain(trees.iter().flatten().flat_map(|(a, b)| [a, b])) {
        g.validate(w)?;
        let next = ids.len();
        ids.entry(w).or_insert(next);
    }
    let mut indexed = Vec::with_capacity(trees.len());
    let mut all = BTreeSet::new();
    for (i, t) in trees.iter().enumerate() {
        let mut it = Vec::with_capacity(t.len());
        for (a, b) in t {
            if !g.is_adjacent(a, b)? {
                return Ok(Verdict::Fail(format!("tree {i}: {a}-{b} is not an edge")));
            }
            let (x, y) = (ids[a], ids[b]);
            all.insert((x.min(y), x.max(y)));
            it.push((x, y));
        }
        indexed.push(it);
    }
    let host = GenericGraph::new(ids.len(), all.into_iter().collect())?;
    let terms: Vec<usize> = targets.iter().map(|t| ids[t]).collect();
    verify_packing(&host, &indexed, &terms, flavor)
}

fn sorted_targets(g: &SierpinskiGraph, targets: &[VertexWord]) -> Result<Vec<VertexWord>> {
    for t in targets {
        g.validate(t)?;
    }
    let mut u = targets.to_vec();
    u.sort();
    u.dedup();
    if u.len() != targets.len() {
        return Err(Error::invalid("target vertices are not distinct"));
    }
    Ok(u)
}

/// Removes pendant edges whose leaf is not in `keep`, repeatedly.
fn prune(edges: &mut BTreeSet<Edge>, keep: &BTreeSet<VertexWord>) {
    let mut adj: BTreeMap<VertexWord, BTreeSet<VertexWord>> = BTreeMap::new();
    for (a, b) in edges.iter() {
        adj.entry(a.clone()).or_default().insert(b.clone());
        adj.entry(b.clone()).or_default().insert(a.clone());
    }
    let mut queue: VecDeque<VertexWord> = adj
        .iter()
        .filter(|(v, n)| n.len() == 1 && !keep.contains(*v))
        .map(|(v, _)| v.clone())
        .collect();
    while let Some(v) = queue.pop_front() {
        let Some(nbrs) = adj.get(&v) else { continue };
        if nbrs.len() != 1 {
            continue;
        }
        let w = nbrs.iter().next().expect("one neighbour").clone();
        edges.remove(&edge(&v, &w));
        adj.remove(&v);
        let wn = adj.get_mut(&w).expect("symmetric adjacency");
        wn.remove(&v);
        if wn.len() == 1 && !keep.contains(&w) {
            queue.push_back(w);
        }
    }
}

struct Driver<'a> {
    tree: &'a LabeledAtomTree,
    prefix: &'a VertexWord,
    audit: AuditCounters,
}

impl Driver<'_> {
    fn fail(&mut self, mut f: ConstructionFailure) -> Error {
        self.audit.violations += 1;
        f.prefix = self.prefix.clone();
        f.into()
    }

    fn lift_err(&mut self, e: Error) -> Error {
        match e {
            Error::Construction(f) => self.fail(*f),
            e => e,
        }
    }

    /// Every labeled vertex of the level lies in every tree with degree 1 or 2.
    fn check_degrees(&mut self, forest: &[Vec<Edge>], level: usize) -> Result<()> {
        for (i, t) in forest.iter().enumerate() {
            let mut deg: BTreeMap<&VertexWord, usize> = BTreeMap::new();
            for (a, b) in t {
                *deg.entry(a).or_default() += 1;
                *deg.entry(b).or_default() += 1;
            }
            for u in self.tree.labeled(level) {
                self.audit.degree_checks += 1;
                let d = deg.get(u).copied().unwrap_or(0);
                if !(1..=2).contains(&d) {
                    return Err(self.fail(ConstructionFailure::new(
                        FailureKind::AttachmentDegree,
                        level,
                        u.clone(),
                        format!("degree {d} in tree {i}"),
                    )));
                }
            }
        }
        Ok(())
    }

    fn check_census(&mut self, c: &AttachmentCensus) -> Result<()> {
        self.audit.atoms_expanded += 1;
        self.audit.residual_checks += 1;
        if !c.residual_identity_holds()? {
            return Err(self.fail(ConstructionFailure::at_census(
                FailureKind::ResidualCount,
                c,
                format!("|R| = {}", c.residual.len()),
            )));
        }
        self.audit.balance_checks += 1;
        if !c.balance_identity_holds()? {
            return Err(self.fail(ConstructionFailure::at_census(
                FailureKind::Balance,
                c,
                format!("path demand {}", c.path_demand()?),
            )));
        }
        if c.labeled_children.len() >= 2 {
            self.audit.budget_checks += 1;
            if !c.path_budget_holds()? {
                return Err(self.fail(ConstructionFailure::at_census(
                    FailureKind::PathBudget,
                    c,
                    format!(
                        "path demand {} exceeds floor({}/2)",
                        c.path_demand()?,
                        c.labeled_children.len()
                    ),
                )));
            }
        }
        Ok(())
    }

    /// Refines a forest of `G_s` into one of `G_{s-1}`.
    fn refine(&mut self, forest: &[Vec<Edge>], s: usize, mode: ConstructionMode) -> Result<Vec<Vec<Edge>>> {
        let tree = self.tree;
        let l = tree.base();
        let k = tree.k();
        let mut adj: Vec<BTreeMap<&VertexWord, Vec<&VertexWord>>> = vec![BTreeMap::new(); forest.len()];
        let mut atoms: BTreeSet<&VertexWord> = tree.labeled(s).iter().collect();
        let mut next: Vec<BTreeSet<Edge>> = vec![BTreeSet::new(); forest.len()];
        for (i, t) in forest.iter().enumerate() {
            for (u, v) in t {
                adj[i].entry(u).or_default().push(v);
                adj[i].entry(v).or_default().push(u);
                atoms.insert(u);
                atoms.insert(v);
                let (a, b) = SierpinskiGraph::lift_edge(u.digits(), v.digits(), 1);
                next[i].insert(edge(&VertexWord::from_digits(a), &VertexWord::from_digits(b)));
            }
        }
        for u in atoms {
            let attachments: Vec<Vec<VertexWord>> = adj
                .iter()
                .map(|a| {
                    let mut att: Vec<VertexWord> = a
                        .get(u)
                        .map(|nbrs| {
                            nbrs.iter()
                                .map(|v| {
                                    let d = adjacency_position(u.digits(), v.digits()).expect("tree edge");
                                    u.child(v.digits()[d])
                                })
                                .collect()
                        })
                        .unwrap_or_default();
                    att.sort();
                    att
                })
                .collect();
            let subs = if tree.is_labeled(u) {
                let census = AttachmentCensus::new(u.clone(), s, l, k, tree.w_of(u), attachments);
                self.check_census(&census)?;
                expand_atom(&census).map_err(|e| self.lift_err(e))?
            } else {
                expand_unlabeled(u, s, l, &attachments, mode).map_err(|e| self.lift_err(e))?
            };
            for sub in subs {
                next[sub.tree].extend(sub.edges);
            }
        }
        if s > 1 || mode == ConstructionMode::Minimal {
            let keep = tree.labeled(s - 1);
            for t in next.iter_mut() {
                prune(t, keep);
            }
        }
        Ok(next.into_iter().map(|t| t.into_iter().collect()).collect())
    }
}

/// Packs `l - ceil(k/2)` internally disjoint Steiner trees for `targets`
/// (`3 <= k <= l`) in `g`.
pub fn construct_steiner_trees(
    g: &SierpinskiGraph,
    targets: &[VertexWord],
    mode: ConstructionMode,
) -> Result<SteinerTreeSet> {
    let l = g.base();
    let k = targets.len();
    if k < 3 || k > l {
        return Err(Error::invalid(format!(
            "k = {k} outside 3..={l}; use the path construction for larger k"
        )));
    }
    let targets = sorted_targets(g, targets)?;
    let atom = reduce_to_minimal_atom(g, &targets)?;
    let m = atom.level;
    let p = g.depth() - m;
    let local: Vec<VertexWord> = targets
        .iter()
        .map(|t| VertexWord::from_digits(t.digits()[p..].to_vec()))
        .collect();
    let labels = LabeledAtomTree::new(l, &local)?;
    let mut driver = Driver {
        tree: &labels,
        prefix: &atom.prefix,
        audit: AuditCounters::default(),
    };

    for (leaf, sum, bound) in driver.tree.chain_sums() {
        driver.audit.chain_checks += 1;
        if sum > bound {
            return Err(driver.fail(ConstructionFailure::new(
                FailureKind::ChainBound,
                0,
                leaf,
                format!("chain carries {sum} labeled children, bound {bound}"),
            )));
        }
    }

    let globalize = |forest: &[Vec<Edge>]| -> Vec<Vec<Edge>> {
        forest
            .iter()
            .map(|t| {
                t.iter()
                    .map(|(a, b)| (atom.prefix.concat(a.digits()), atom.prefix.concat(b.digits())))
                    .collect()
            })
            .collect()
    };

    let w0: Vec<VertexWord> = driver.tree.labeled(m - 1).iter().cloned().collect();
    let mut forest = base_case_trees(&w0, k, l)?;
    let mut levels = vec![LevelForest {
        level: m - 1,
        trees: globalize(&forest),
    }];
    for s in (1..m).rev() {
        driver.check_degrees(&forest, s)?;
        forest = driver.refine(&forest, s, mode)?;
        levels.push(LevelForest {
            level: s - 1,
            trees: globalize(&forest),
        });
    }
    driver.check_degrees(&forest, 0)?;

    let trees = globalize(&forest);
    let audit = driver.audit;
    Ok(SteinerTreeSet {
        n: g.depth(),
        l,
        targets,
        strategy: mode.into(),
        atom,
        trees,
        levels,
        audit,
    })
}

/// Packs `floor(l/2)` edge-disjoint Steiner trees for any `k > l` targets by
/// using the Hamiltonian paths of `S(n, l)` directly.
pub fn construct_trees_large_k(g: &SierpinskiGraph, targets: &[VertexWord], cap: u128) -> Result<SteinerTreeSet> {
    let l = g.base();
    if targets.len() <= l {
        return Err(Error::invalid(format!("k = {} is not above l = {l}", targets.len())));
    }
    if g.order() as u128 > cap {
        return Err(Error::SizeCap {
            what: "Hamiltonian path construction",
            size: g.order() as u128,
            cap,
        });
    }
    let targets = sorted_targets(g, targets)?;
    let paths = decompose_sierpinski(g.depth(), l)?;
    let trees = paths
        .paths
        .iter()
        .map(|p| {
            let mut t: Vec<Edge> = p.windows(2).map(|w| edge(&w[0], &w[1])).collect();
            t.sort();
            t
        })
        .collect();
    Ok(SteinerTreeSet {
        n: g.depth(),
        l,
        atom: reduce_to_minimal_atom(g, &targets)?,
        targets,
        strategy: Strategy::Hamiltonian,
        trees,
        levels: Vec::new(),
        audit: AuditCounters::default(),
    })
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

    fn build(n: usize, l: usize, u: &[&str], mode: ConstructionMode) -> SteinerTreeSet {
        let g = SierpinskiGraph::new(n, l).unwrap();
        let set = construct_steiner_trees(&g, &ws(u), mode).unwrap();
        for flavor in [Flavor::Edge, Flavor::Vertex] {
            assert_eq!(set.verify(flavor).unwrap(), Verdict::Pass, "{u:?} {mode} {flavor}");
        }
        set
    }

    #[test]
    fn s23_worst_case() {
        let set = build(2, 3, &["00", "11", "22"], ConstructionMode::Paper);
        assert_eq!(set.trees.len(), 1);
        assert_eq!(set.audit.violations, 0);
    }

    #[test]
    fn s34_mixed_depths() {
        for mode in [ConstructionMode::Paper, ConstructionMode::Minimal] {
            let set = build(3, 4, &["000", "001", "013", "122"], mode);
            assert_eq!(set.trees.len(), 2);
            assert_eq!(set.atom.level, 3);
            assert_eq!(set.levels.len(), 3);
            assert!(set.audit.atoms_expanded > 0);
        }
    }

    #[test]
    fn single_clique() {
        let set = build(1, 5, &["0", "2", "4"], ConstructionMode::Paper);
        assert_eq!(set.trees.len(), 3);
        let set = build(3, 4, &["210", "212", "213"], ConstructionMode::Minimal);
        assert_eq!(set.trees.len(), 2);
        assert!(set.trees.iter().flatten().all(|(a, _)| a.digits().starts_with(&[2, 1])));
    }

    #[test]
    fn s45_all_extremes() {
        let set = build(4, 5, &["0000", "1111", "2222", "3333", "4444"], ConstructionMode::Paper);
        assert_eq!(set.trees.len(), 2);
    }

    #[test]
    fn minimal_mode_has_no_pendant_non_targets() {
        let set = build(3, 5, &["000", "123", "444", "301"], ConstructionMode::Minimal);
        for t in &set.trees {
            let mut deg: BTreeMap<&VertexWord, usize> = BTreeMap::new();
            for (a, b) in t {
                *deg.entry(a).or_default() += 1;
                *deg.entry(b).or_default() += 1;
            }
            for (v, d) in deg {
                assert!(d > 1 || set.targets.contains(v), "pendant {v}");
            }
        }
    }

    #[test]
    fn rejects_bad_inputs() {
        let g = SierpinskiGraph::new(2, 3).unwrap();
        assert!(construct_steiner_trees(&g, &ws(&["00", "11"]), ConstructionMode::Paper).is_err());
        assert!(construct_steiner_trees(&g, &ws(&["00", "11", "11"]), ConstructionMode::Paper).is_err());
        assert!(construct_steiner_trees(&g, &ws(&["00", "11", "21", "22"]), ConstructionMode::Paper).is_err());
        assert!(construct_steiner_trees(&g, &ws(&["00", "11", "33"]), ConstructionMode::Paper).is_err());
    }

    #[test]
    fn large_k_paths() {
        let g = SierpinskiGraph::new(2, 5).unwrap();
        let u = ws(&["00", "01", "02", "10", "33", "44"]);
        let set = construct_trees_large_k(&g, &u, 1000).unwrap();
        assert_eq!(set.trees.len(), 2);
        assert_eq!(set.strategy, Strategy::Hamiltonian);
        assert_eq!(set.verify(Flavor::Edge).unwrap(), Verdict::Pass);
        assert!(construct_trees_large_k(&g, &u[..3], 1000).is_err());
        assert!(construct_trees_large_k(&g, &u, 10).is_err());
    }

    #[test]
    fn exports() {
        let set = build(2, 3, &["00", "11", "22"], ConstructionMode::Minimal);
        let json = set.to_json();
        let back: TreeSetExport = serde_json::from_str(&json).unwrap();
        assert_eq!(back, set.export());
        assert_eq!(back.verify(Flavor::Vertex).unwrap(), Verdict::Pass);
        assert!(json.contains("\"U\""));
        assert!(json.contains("\"mode\": \"minimal\""));
        let dot = set.to_dot();
        assert!(dot.starts_with("graph steiner {"));
        assert!(dot.contains("label=\"T0\""));
    }

    #[test]
    fn verifier_catches_breakage() {
        let g = SierpinskiGraph::new(2, 4).unwrap();
        let mut set = construct_steiner_trees(&g, &ws(&["00", "11", "22"]), ConstructionMode::Paper).unwrap();
        let stolen = set.trees[0][0].clone();
        set.trees[1].push(stolen);
        assert!(!set.verify(Flavor::Edge).unwrap().passed());
        set.trees[1].pop();
        set.trees[0].pop();
        assert!(!set.verify(Flavor::Edge).unwrap().passed());
        let bogus = vec![vec![(w("00"), w("22"))]];
        assert!(!verify_tree_set(&g, &bogus, &ws(&["00", "22"]), Flavor::Edge).unwrap().passed());
    }

    #[test]
    fn failure_display_names_the_atom() {
        let c = AttachmentCensus::new(w("1"), 1, 4, 4, ws(&["10", "11"]), vec![ws(&["12"])]);
        let mut f = ConstructionFailure::at_census(FailureKind::PathBudget, &c, "demo".into());
        f.prefix = w("3");
        let s = f.to_string();
        assert!(s.contains("<31>") && s.contains("W = {10,11}") && s.contains("V0 = {12}"), "{s}");
    }
}
