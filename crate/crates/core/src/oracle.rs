//! Brute-force ground truth for Steiner tree packings on small graphs.
//!
//! The search enumerates minimal `S`-trees (every leaf in `S`) of the
//! residual graph, packs them depth first and memoizes on the residual edge
//! set. Packings are canonicalized by the smallest edge each tree uses at a
//! fixed terminal `r`, so every packing is visited in exactly one order.
//! Bounds: residual degree of each terminal, residual edges over `|S| - 1`.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::ops::ControlFlow;
use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;

/// Largest vertex or edge count the bitmask search can represent.
pub const HARD_LIMIT: usize = 128;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    /// Pairwise edge-disjoint trees.
    Edge,
    /// Edge-disjoint trees whose pairwise vertex intersection is exactly `S`.
    Vertex,
}

impl std::fmt::Display for Flavor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Flavor::Edge => "edge",
            Flavor::Vertex => "vertex",
        })
    }
}

impl std::str::FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge" => Ok(Flavor::Edge),
            "vertex" => Ok(Flavor::Vertex),
            _ => Err(Error::invalid(format!("unknown flavor {s:?}"))),
        }
    }
}

/// A simple undirected graph on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GenericGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<(usize, usize)>>,
}

impl GenericGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let mut edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(a, b)| if a <= b { (a, b) } else { (b, a) })
            .collect();
        edges.sort_unstable();
        for w in edges.windows(2) {
            if w[0] == w[1] {
                return Err(Error::invalid(format!("duplicate edge {:?}", w[0])));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for (id, &(a, b)) in edges.iter().enumerate() {
            if a == b {
                return Err(Error::invalid(format!("loop at vertex {a}")));
            }
            if b >= n {
                return Err(Error::invalid(format!("edge ({a},{b}) leaves 0..{n}")));
            }
            adj[a].push((b, id));
            adj[b].push((a, id));
        }
        Ok(GenericGraph { n, edges, adj })
    }

    pub fn complete(n: usize) -> Self {
        let edges = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
        GenericGraph::new(n, edges).expect("complete graph is simple")
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// `(neighbour, edge id)` pairs.
    pub fn neighbors(&self, v: usize) -> &[(usize, usize)] {
        &self.adj[v]
    }

    pub fn edge_id(&self, a: usize, b: usize) -> Option<usize> {
        let key = if a <= b { (a, b) } else { (b, a) };
        self.edges.binary_search(&key).ok()
    }
}

/// Outcome of a structural check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail(String),
}

impl Verdict {
    pub fn passed(&self) -> bool {
        matches!(self, Verdict::Pass)
    }
}

struct Dsu(Vec<usize>);

impl Dsu {
    fn new(n: usize) -> Self {
        Dsu((0..n).collect())
    }

    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut c = x;
        while self.0[c] != r {
            let next = self.0[c];
            self.0[c] = r;
            c = next;
        }
        r
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

fn tree_vertices(tree: &[(usize, usize)]) -> Vec<usize> {
    let mut v: Vec<usize> = tree.iter().flat_map(|&(a, b)| [a, b]).collect();
    v.sort_unstable();
    v.dedup();
    v
}

/// True iff `tree` is acyclic, connected and covers `terminals`.
pub fn verify_steiner_tree(g: &GenericGraph, tree: &[(usize, usize)], terminals: &[usize]) -> Result<Verdict> {
    for &(a, b) in tree {
        if a >= g.n || b >= g.n || g.edge_id(a, b).is_none() {
            return Err(Error::invalid(format!("({a},{b}) is not an edge of the graph")));
        }
    }
    if tree.is_empty() {
        let mut t = terminals.to_vec();
        t.sort_unstable();
        t.dedup();
        return Ok(if t.len() <= 1 {
            Verdict::Pass
        } else {
            Verdict::Fail("U not covered".into())
        });
    }
    let mut dsu = Dsu::new(g.n);
    for &(a, b) in tree {
        if !dsu.union(a, b) {
            return Ok(Verdict::Fail(format!("cycle through edge ({a},{b})")));
        }
    }
    let verts = tree_vertices(tree);
    if verts.len() != tree.len() + 1 {
        return Ok(Verdict::Fail("disconnected".into()));
    }
    if terminals.iter().any(|t| verts.binary_search(t).is_err()) {
        return Ok(Verdict::Fail("U not covered".into()));
    }
    Ok(Verdict::Pass)
}

/// Checks a family of `S`-trees for pairwise edge-disjointness and, for the
/// vertex flavor, pairwise vertex intersection exactly `S`.
pub fn verify_packing(
    g: &GenericGraph,
    trees: &[Vec<(usize, usize)>],
    terminals: &[usize],
    flavor: Flavor,
) -> Result<Verdict> {
    for (i, t) in trees.iter().enumerate() {
        if let Verdict::Fail(why) = verify_steiner_tree(g, t, terminals)? {
            return Ok(Verdict::Fail(format!("tree {i}: {why}")));
        }
    }
    let mut owner = HashMap::new();
    for (i, t) in trees.iter().enumerate() {
        for &(a, b) in t {
            let id = g.edge_id(a, b).expect("checked above");
            if let Some(j) = owner.insert(id, i) {
                return Ok(Verdict::Fail(format!("trees {j} and {i} share edge ({a},{b})")));
            }
        }
    }
    if flavor == Flavor::Vertex {
        let mut holder: HashMap<usize, usize> = HashMap::new();
        for (i, t) in trees.iter().enumerate() {
            for v in tree_vertices(t) {
                if terminals.contains(&v) {
                    continue;
                }
                if let Some(j) = holder.insert(v, i) {
                    return Ok(Verdict::Fail(format!("trees {j} and {i} share non-terminal vertex {v}")));
                }
            }
        }
    }
    Ok(Verdict::Pass)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleCaps {
    pub max_vertices: usize,
    pub max_edges: usize,
}

impl Default for OracleCaps {
    fn default() -> Self {
        OracleCaps {
            max_vertices: 30,
            max_edges: 60,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    pub max_time: Option<Duration>,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_nodes: 500_000_000,
            max_time: None,
        }
    }
}

/// Result of one exact (or budget-limited) packing search.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConnectivityReport {
    pub terminals: Vec<usize>,
    pub flavor: Flavor,
    /// Exact maximum when `complete`, otherwise a lower bound.
    pub value: usize,
    pub complete: bool,
    pub witness: Vec<Vec<(usize, usize)>>,
    pub nodes: u64,
    pub millis: u128,
}

type Mask = u128;

fn bit(i: usize) -> Mask {
    1u128 << i
}

struct Search<'a> {
    g: &'a GenericGraph,
    terminals: Vec<usize>,
    term_mask: Mask,
    flavor: Flavor,
    root: usize,
    incident: Vec<Mask>,
    memo: HashMap<Mask, (usize, Vec<Mask>)>,
    nodes: u64,
    budget: SearchBudget,
    start: Instant,
    exhausted: bool,
}

impl<'a> Search<'a> {
    fn tick(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget.max_nodes {
            self.exhausted = true;
        }
        if self.nodes.is_multiple_of(4096) {
            if let Some(limit) = self.budget.max_time {
                if self.start.elapsed() > limit {
                    self.exhausted = true;
                }
            }
        }
        self.exhausted
    }

    fn connects_terminals(&self, r: Mask) -> bool {
        let mut seen = bit(self.root);
        let mut stack = vec![self.root];
        while let Some(x) = stack.pop() {
            for &(y, e) in self.g.neighbors(x) {
                if r & bit(e) != 0 && seen & bit(y) == 0 {
                    seen |= bit(y);
                    stack.push(y);
                }
            }
        }
        seen & self.term_mask == self.term_mask
    }

    fn bound(&self, r: Mask) -> usize {
        let deg = self
            .terminals
            .iter()
            .map(|&t| (r & self.incident[t]).count_ones() as usize)
            .min()
            .unwrap_or(0);
        deg.min(r.count_ones() as usize / (self.terminals.len() - 1))
    }

    /// Visits every minimal S-tree of `r` rooted at the search root, as
    /// `(edge mask, vertex mask)`.
    fn each_tree(
        &mut self,
        r: Mask,
        tree_e: Mask,
        tree_v: Mask,
        f: &mut dyn FnMut(&mut Self, Mask, Mask) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        match self.terminals.iter().copied().find(|&t| tree_v & bit(t) == 0) {
            None => f(self, tree_e, tree_v),
            Some(t) => self.each_path(r, tree_e, tree_v, t, bit(t), 0, f),
        }
    }

    #[allow(clippy::too_many_arguments)]
    fn each_path(
        &mut self,
        r: Mask,
        tree_e: Mask,
        tree_v: Mask,
        at: usize,
        visited: Mask,
        path_e: Mask,
        f: &mut dyn FnMut(&mut Self, Mask, Mask) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        if self.exhausted {
            return ControlFlow::Break(());
        }
        let g = self.g;
        for &(y, e) in g.neighbors(at) {
            if r & bit(e) == 0 {
                continue;
            }
            if tree_v & bit(y) != 0 {
                self.each_tree(r, tree_e | path_e | bit(e), tree_v | visited, f)?;
            } else if visited & bit(y) == 0 {
                self.each_path(r, tree_e, tree_v, y, visited | bit(y), path_e | bit(e), f)?;
            }
        }
        ControlFlow::Continue(())
    }

    fn residual_after(&self, r: Mask, tree_e: Mask, tree_v: Mask) -> Mask {
        let mut out = r & !tree_e;
        if self.flavor == Flavor::Vertex {
            let mut internal = tree_v & !self.term_mask;
            while internal != 0 {
                let v = internal.trailing_zeros() as usize;
                internal &= internal - 1;
                out &= !self.incident[v];
            }
        }
        out
    }

    fn any_tree(&mut self, r: Mask) -> Option<Mask> {
        let mut found = None;
        let _ = self.each_tree(r, 0, bit(self.root), &mut |_, te, _| {
            found = Some(te);
            ControlFlow::Break(())
        });
        found
    }

    fn best(&mut self, r: Mask) -> (usize, Vec<Mask>) {
        if !self.connects_terminals(r) {
            return (0, Vec::new());
        }
        let ub = self.bound(r);
        if ub <= 1 {
            return match self.any_tree(r) {
                Some(t) => (1, vec![t]),
                None => (0, Vec::new()),
            };
        }
        if let Some(hit) = self.memo.get(&r) {
            return hit.clone();
        }
        let first = self.any_tree(r).expect("connected terminals admit a tree");
        let mut best = (1usize, vec![first]);

        let root_edges: Vec<usize> = self
            .g
            .neighbors(self.root)
            .iter()
            .map(|&(_, e)| e)
            .filter(|&e| r & bit(e) != 0)
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let mut branch_r = r;
        for &e in &root_edges {
            if best.0 >= ub || self.exhausted {
                break;
            }
            if !self.connects_terminals(branch_r) || self.bound(branch_r) <= best.0 {
                break;
            }
            let mut local = best.clone();
            let br = branch_r;
            let _ = self.each_tree(br, 0, bit(self.root), &mut |s, te, tv| {
                if te & bit(e) == 0 {
                    return ControlFlow::Continue(());
                }
                if s.tick() {
                    return ControlFlow::Break(());
                }
                let child = s.residual_after(br, te, tv);
                if s.bound(child) < local.0 {
                    return ControlFlow::Continue(());
                }
                let (v, w) = s.best(child);
                if 1 + v > local.0 {
                    let mut trees = vec![te];
                    trees.extend(w);
                    local = (1 + v, trees);
                    if local.0 >= ub {
                        return ControlFlow::Break(());
                    }
                }
                ControlFlow::Continue(())
            });
            best = local;
            // Later trees never use this root edge.
            branch_r &= !bit(e);
        }
        if !self.exhausted {
            self.memo.insert(r, best.clone());
        }
        best
    }
}

fn check_caps(g: &GenericGraph, caps: &OracleCaps) -> Result<()> {
    let v_cap = caps.max_vertices.min(HARD_LIMIT);
    let e_cap = caps.max_edges.min(HARD_LIMIT);
    if g.vertex_count() > v_cap {
        return Err(Error::SizeCap {
            what: "oracle vertex count",
            size: g.vertex_count() as u128,
            cap: v_cap as u128,
        });
    }
    if g.edge_count() > e_cap {
        return Err(Error::SizeCap {
            what: "oracle edge count",
            size: g.edge_count() as u128,
            cap: e_cap as u128,
        });
    }
    Ok(())
}

/// Exact maximum number of edge-disjoint (or internally disjoint) `S`-trees.
pub fn max_disjoint_trees(
    g: &GenericGraph,
    terminals: &[usize],
    flavor: Flavor,
    caps: &OracleCaps,
    budget: &SearchBudget,
) -> Result<ConnectivityReport> {
    check_caps(g, caps)?;
    let mut terms = terminals.to_vec();
    terms.sort_unstable();
    terms.dedup();
    if terms.len() != terminals.len() || terms.len() < 2 {
        return Err(Error::invalid("terminal set needs at least two distinct vertices"));
    }
    if let Some(&t) = terms.iter().find(|&&t| t >= g.vertex_count()) {
        return Err(Error::invalid(format!("terminal {t} is not a vertex")));
    }
    let incident: Vec<Mask> = (0..g.vertex_count())
        .map(|v| g.neighbors(v).iter().fold(0, |m, &(_, e)| m | bit(e)))
        .collect();
    // Root at the terminal of least degree: fewest branches at the top.
    let root = *terms
        .iter()
        .min_by_key(|&&t| (g.neighbors(t).len(), t))
        .expect("nonempty");
    let start = Instant::now();
    let mut search = Search {
        g,
        term_mask: terms.iter().fold(0, |m, &t| m | bit(t)),
        terminals: terms.clone(),
        flavor,
        root,
        incident,
        memo: HashMap::new(),
        nodes: 0,
        budget: *budget,
        start,
        exhausted: false,
    };
    let all: Mask = if g.edge_count() == 128 {
        Mask::MAX
    } else {
        bit(g.edge_count()) - 1
    };
    let (value, masks) = search.best(all);
    let witness = masks
        .iter()
        .map(|&m| {
            g.edges()
                .iter()
                .enumerate()
                .filter(|(i, _)| m & bit(*i) != 0)
                .map(|(_, &e)| e)
                .collect()
        })
        .collect();
    Ok(ConnectivityReport {
        terminals: terms,
        flavor,
        value,
        complete: !search.exhausted,
        witness,
        nodes: search.nodes,
        millis: start.elapsed().as_millis(),
    })
}

/// `min` over the given subsets of [`max_disjoint_trees`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub k: usize,
    pub flavor: Flavor,
    pub value: usize,
    /// True iff every subset was searched to completion.
    pub complete: bool,
    /// True iff all `C(n, k)` subsets were evaluated (not a sample).
    pub exhaustive: bool,
    pub argmin: Vec<usize>,
    pub per_subset: Vec<ConnectivityReport>,
}

impl SweepReport {
    /// Exact generalized connectivity; a sampled or incomplete sweep only
    /// bounds it from above.
    pub fn is_exact(&self) -> bool {
        self.complete && self.exhaustive
    }
}

/// All `k`-subsets of `0..n` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let Some(i) = (0..k).rev().find(|&i| cur[i] != i + n - k) else {
            break;
        };
        cur[i] += 1;
        for j in i + 1..k {
            cur[j] = cur[j - 1] + 1;
        }
    }
    out
}

pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Minimum packing number over explicit subsets.
pub fn connectivity_over(
    g: &GenericGraph,
    subsets: &[Vec<usize>],
    flavor: Flavor,
    caps: &OracleCaps,
    budget: &SearchBudget,
    exec: Exec,
) -> Result<SweepReport> {
    let k = subsets.first().map_or(0, |s| s.len());
    if subsets.is_empty() || subsets.iter().any(|s| s.len() != k) {
        return Err(Error::invalid("subsets must be nonempty and of equal size"));
    }
    let reports: Vec<ConnectivityReport> = exec
        .map(subsets, |s| max_disjoint_trees(g, s, flavor, caps, budget))
        .into_iter()
        .collect::<Result<_>>()?;
    let best = reports
        .iter()
        .min_by_key(|r| r.value)
        .expect("at least one subset");
    let exhaustive = binomial(g.vertex_count() as u64, k as u64) == subsets.len() as u128;
    Ok(SweepReport {
        k,
        flavor,
        value: best.value,
        argmin: best.terminals.clone(),
        complete: reports.iter().all(|r| r.complete),
        exhaustive,
        per_subset: reports,
    })
}

/// `min` over all `k`-subsets; `max_subsets` guards the enumeration size.
pub fn connectivity_k(
    g: &GenericGraph,
    k: usize,
    flavor: Flavor,
    caps: &OracleCaps,
    budget: &SearchBudget,
    max_subsets: u128,
    exec: Exec,
) -> Result<SweepReport> {
    if k < 2 || k > g.vertex_count() {
        return Err(Error::invalid(format!("k = {k} outside 2..={}", g.vertex_count())));
    }
    let count = binomial(g.vertex_count() as u64, k as u64);
    if count > max_subsets {
        return Err(Error::SizeCap {
            what: "subset enumeration",
            size: count,
            cap: max_subsets,
        });
    }
    connectivity_over(g, &k_subsets(g.vertex_count(), k), flavor, caps, budget, exec)
}

/// `S,flavor,value,complete,nodes,millis` rows. With `timing` off the
/// `millis` column is written as 0 so output is reproducible.
pub fn sweep_csv(reports: &[ConnectivityReport], name: impl Fn(usize) -> String, timing: bool) -> String {
    let mut out = String::from("S,flavor,value,complete,nodes,millis\n");
    for r in reports {
        let s: Vec<String> = r.terminals.iter().map(|&t| name(t)).collect();
        let _ = writeln!(
            out,
            "{},{},{},{},{},{}",
            s.join(" "),
            r.flavor,
            r.value,
            r.complete,
            r.nodes,
            if timing { r.millis } else { 0 }
        );
    }
    out
}
