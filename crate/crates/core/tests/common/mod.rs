//! Test-side reference implementations, written independently of the crate:
//! the graph comes from the recursive copy-and-bridge construction rather
//! than the word adjacency rule, and packings are checked with a plain
//! union-find.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use sierpinski_steiner::{Flavor, VertexWord};

pub type Pair = (usize, usize);

/// Edges of `S(n, l)` on indices `sum d_i l^(n-1-i)`: `l` copies of
/// `S(n-1, l)` joined by the bridges `<i j..j> -- <j i..i>`.
pub fn reference_edges(n: usize, l: usize) -> BTreeSet<Pair> {
    if n == 1 {
        return (0..l).flat_map(|a| (a + 1..l).map(move |b| (a, b))).collect();
    }
    let inner = reference_edges(n - 1, l);
    let block = l.pow(n as u32 - 1);
    let mut out = BTreeSet::new();
    for i in 0..l {
        for &(a, b) in &inner {
            out.insert((i * block + a, i * block + b));
        }
    }
    let rep = |d: usize| (0..n - 1).fold(0, |acc, _| acc * l + d);
    for i in 0..l {
        for j in i + 1..l {
            let a = i * block + rep(j);
            let b = j * block + rep(i);
            out.insert((a.min(b), a.max(b)));
        }
    }
    out
}

pub fn index(w: &VertexWord, l: usize) -> usize {
    w.digits().iter().fold(0, |acc, &d| acc * l + d as usize)
}

pub fn word(mut i: usize, n: usize, l: usize) -> VertexWord {
    let mut d = vec![0u8; n];
    for slot in d.iter_mut().rev() {
        *slot = (i % l) as u8;
        i /= l;
    }
    VertexWord::from_digits(d)
}

pub fn find(p: &mut [usize], mut x: usize) -> usize {
    while p[x] != x {
        p[x] = p[p[x]];
        x = p[x];
    }
    x
}

/// Independent check of a tree packing given by word edges.
pub fn check_packing(
    edges: &BTreeSet<Pair>,
    l: usize,
    trees: &[Vec<(VertexWord, VertexWord)>],
    targets: &[VertexWord],
    flavor: Flavor,
) -> Result<(), String> {
    let u: BTreeSet<usize> = targets.iter().map(|w| index(w, l)).collect();
    let mut owner: HashMap<Pair, usize> = HashMap::new();
    let mut holder: HashMap<usize, usize> = HashMap::new();
    for (i, t) in trees.iter().enumerate() {
        let mut verts = BTreeSet::new();
        let mut ids: HashMap<usize, usize> = HashMap::new();
        let mut parent: Vec<usize> = Vec::new();
        for (a, b) in t {
            let (x, y) = (index(a, l), index(b, l));
            let e = (x.min(y), x.max(y));
            if !edges.contains(&e) {
                return Err(format!("tree {i}: {a}-{b} is not an edge"));
            }
            if let Some(j) = owner.insert(e, i) {
                return Err(format!("trees {j} and {i} share {a}-{b}"));
            }
            for v in [x, y] {
                verts.insert(v);
                let next = ids.len();
                if ids.entry(v).or_insert(next) == &next {
                    parent.push(next);
                }
            }
            let (rx, ry) = (find(&mut parent, ids[&x]), find(&mut parent, ids[&y]));
            if rx == ry {
                return Err(format!("tree {i} has a cycle through {a}-{b}"));
            }
            parent[rx] = ry;
        }
        if verts.len() != t.len() + 1 {
            return Err(format!("tree {i} is disconnected"));
        }
        if !u.is_subset(&verts) {
            return Err(format!("tree {i} misses a target"));
        }
        if flavor == Flavor::Vertex {
            for v in verts.difference(&u) {
                if let Some(j) = holder.insert(*v, i) {
                    return Err(format!("trees {j} and {i} share inner vertex {v}"));
                }
            }
        }
    }
    Ok(())
}

/// Independent check of edge-disjoint Hamiltonian paths of `S(n, l)`.
pub fn check_sierpinski_paths(n: usize, l: usize, paths: &[Vec<VertexWord>]) -> Result<(), String> {
    let edges = reference_edges(n, l);
    let order = l.pow(n as u32);
    let mut used = BTreeSet::new();
    for (i, p) in paths.iter().enumerate() {
        let ids: Vec<usize> = p.iter().map(|w| index(w, l)).collect();
        let distinct: BTreeSet<usize> = ids.iter().copied().collect();
        if ids.len() != order || distinct.len() != order {
            return Err(format!("path {i} is not Hamiltonian"));
        }
        for w in ids.windows(2) {
            let e = (w[0].min(w[1]), w[0].max(w[1]));
            if !edges.contains(&e) {
                return Err(format!("path {i} uses a non-edge"));
            }
            if !used.insert(e) {
                return Err(format!("path {i} reuses an edge"));
            }
        }
        if !(p[0].is_constant() && p[order - 1].is_constant()) {
            return Err(format!("path {i} does not join extreme vertices"));
        }
    }
    Ok(())
}

/// Checks `paths` (and `matching`) partition `E(K_n)` with every path
/// Hamiltonian.
pub fn check_complete_decomposition(n: usize, paths: &[Vec<usize>], matching: &[[usize; 2]]) -> Result<(), String> {
    let mut seen = BTreeSet::new();
    for (i, p) in paths.iter().enumerate() {
        let distinct: BTreeSet<usize> = p.iter().copied().collect();
        if p.len() != n || distinct.len() != n || distinct.iter().any(|&v| v >= n) {
            return Err(format!("path {i} is not Hamiltonian"));
        }
        for w in p.windows(2) {
            if !seen.insert((w[0].min(w[1]), w[0].max(w[1]))) {
                return Err(format!("edge {w:?} repeated"));
            }
        }
    }
    for &[a, b] in matching {
        if a == b || !seen.insert((a.min(b), a.max(b))) {
            return Err(format!("matching edge ({a},{b}) invalid or repeated"));
        }
    }
    if seen.len() != n * (n - 1) / 2 {
        return Err(format!("{} of {} edges covered", seen.len(), n * (n - 1) / 2));
    }
    Ok(())
}

/// Exact count of edges inside each neighbourhood, by adjacency matrix.
pub fn triangle_clustering(n: usize, l: usize) -> Vec<(u64, u64)> {
    let order = l.pow(n as u32);
    let mut adj = vec![vec![false; order]; order];
    let mut nbrs = vec![Vec::new(); order];
    for (a, b) in reference_edges(n, l) {
        adj[a][b] = true;
        adj[b][a] = true;
        nbrs[a].push(b);
        nbrs[b].push(a);
    }
    (0..order)
        .map(|v| {
            let ns = &nbrs[v];
            let d = ns.len() as u64;
            let mut links = 0;
            for i in 0..ns.len() {
                for j in i + 1..ns.len() {
                    if adj[ns[i]][ns[j]] {
                        links += 1;
                    }
                }
            }
            (links, d * d.saturating_sub(1) / 2)
        })
        .collect()
}
