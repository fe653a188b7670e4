//! Hamiltonian path decompositions of complete graphs and of `S(n, l)`.

use std::collections::{BTreeSet, HashSet};
use std::hash::Hash;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{digits_adjacent, SierpinskiGraph, VertexWord};

/// Edge-disjoint Hamiltonian paths over a ground set of `N` vertices, plus
/// the leftover matching when the set decomposes a complete graph of odd order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HamPathSet<V = usize> {
    #[serde(rename = "N")]
    pub ground_size: usize,
    pub paths: Vec<Vec<V>>,
    pub matching: Vec<[V; 2]>,
}

impl<V: Clone> HamPathSet<V> {
    pub fn endpoints(&self) -> Vec<(V, V)> {
        self.paths
            .iter()
            .map(|p| (p[0].clone(), p[p.len() - 1].clone()))
            .collect()
    }

    pub fn map<W>(&self, f: impl Fn(&V) -> W) -> HamPathSet<W> {
        HamPathSet {
            ground_size: self.ground_size,
            paths: self.paths.iter().map(|p| p.iter().map(&f).collect()).collect(),
            matching: self.matching.iter().map(|[a, b]| [f(a), f(b)]).collect(),
        }
    }
}

fn norm<V: Ord + Clone>(a: &V, b: &V) -> (V, V) {
    if a <= b {
        (a.clone(), b.clone())
    } else {
        (b.clone(), a.clone())
    }
}

/// Checks that every path visits each of `vertices` exactly once along edges
/// accepted by `is_edge`, and that the paths are pairwise edge-disjoint.
pub fn check_paths<V, F>(vertices: &[V], paths: &[Vec<V>], is_edge: F) -> Result<(), String>
where
    V: Ord + Clone + Hash + std::fmt::Debug,
    F: Fn(&V, &V) -> bool,
{
    let ground: HashSet<&V> = vertices.iter().collect();
    let mut used = HashSet::new();
    for (i, p) in paths.iter().enumerate() {
        if p.len() != vertices.len() {
            return Err(format!("path {i} has {} vertices, expected {}", p.len(), vertices.len()));
        }
        let seen: HashSet<&V> = p.iter().collect();
        if seen.len() != p.len() || !seen.iter().all(|v| ground.contains(v)) {
            return Err(format!("path {i} is not a permutation of the vertex set"));
        }
        for w in p.windows(2) {
            if !is_edge(&w[0], &w[1]) {
                return Err(format!("path {i} steps along non-edge {:?}-{:?}", w[0], w[1]));
            }
            if !used.insert(norm(&w[0], &w[1])) {
                return Err(format!("edge {:?}-{:?} is used twice", w[0], w[1]));
            }
        }
    }
    Ok(())
}

fn check_partition(set: &HamPathSet) -> Result<()> {
    let n = set.ground_size;
    let vertices: Vec<usize> = (0..n).collect();
    check_paths(&vertices, &set.paths, |a, b| a != b).map_err(Error::Invariant)?;
    let mut edges: BTreeSet<(usize, usize)> = set
        .paths
        .iter()
        .flat_map(|p| p.windows(2).map(|w| norm(&w[0], &w[1])))
        .collect();
    let mut matched = BTreeSet::new();
    for [a, b] in &set.matching {
        if !matched.insert(*a) || !matched.insert(*b) || !edges.insert(norm(a, b)) {
            return Err(Error::Invariant(format!("matching edge {a}-{b} overlaps")));
        }
    }
    if edges.len() != n * (n - 1) / 2 {
        return Err(Error::Invariant(format!(
            "decomposition of K_{n} covers {} of {} edges",
            edges.len(),
            n * (n - 1) / 2
        )));
    }
    let ends: BTreeSet<usize> = set.endpoints().into_iter().flat_map(|(a, b)| [a, b]).collect();
    if ends.len() != 2 * set.paths.len() {
        return Err(Error::Invariant("path endpoints are not pairwise distinct".into()));
    }
    Ok(())
}

/// Zigzag `i, i+1, i-1, i+2, i-2, ..., i+m` on `Z_{2m}`.
fn zigzag(i: usize, m: usize) -> Vec<usize> {
    let modulus = 2 * m;
    let mut seq = Vec::with_capacity(modulus);
    seq.push(i % modulus);
    for t in 1..=m {
        seq.push((i + t) % modulus);
        if t < m {
            seq.push((i + modulus - t) % modulus);
        }
    }
    seq
}

/// Decomposes `E(K_N)` into `floor(N/2)` Hamiltonian paths with pairwise
/// distinct endpoints and, for odd `N`, a perfect leftover matching of size
/// `floor(N/2)` on `0..N-1`.
pub fn decompose_complete(n: usize) -> Result<HamPathSet> {
    if n < 2 {
        return Err(Error::invalid(format!("K_{n} has no Hamiltonian path decomposition")));
    }
    let m = n / 2;
    let set = if n.is_multiple_of(2) {
        HamPathSet {
            ground_size: n,
            paths: (0..m).map(|i| zigzag(i, m)).collect(),
            matching: Vec::new(),
        }
    } else {
        // Hamiltonian cycles through the extra vertex 2m, each broken at its
        // antipodal edge; the broken edges form the matching.
        let hub = 2 * m;
        let mut paths = Vec::with_capacity(m);
        let mut matching = Vec::with_capacity(m);
        for i in 0..m {
            let z = zigzag(i, m);
            let j = (0..z.len() - 1)
                .find(|&j| (z[j + 1] + 2 * m - z[j]) % (2 * m) == m)
                .expect("zigzag has an antipodal edge");
            let mut p: Vec<usize> = z[..=j].iter().rev().copied().collect();
            p.push(hub);
            p.extend(z[j + 1..].iter().rev());
            matching.push([z[j], z[j + 1]]);
            paths.push(p);
        }
        HamPathSet {
            ground_size: n,
            paths,
            matching,
        }
    };
    check_partition(&set)?;
    Ok(set)
}

/// `s = pairs.len()` edge-disjoint Hamiltonian paths of `K_N`; path `i` runs
/// from `pairs[i].0` to `pairs[i].1`.
pub fn constrained_paths(n: usize, pairs: &[(usize, usize)]) -> Result<HamPathSet> {
    if pairs.len() > n / 2 {
        return Err(Error::invalid(format!(
            "{} endpoint pairs exceed floor({n}/2)",
            pairs.len()
        )));
    }
    let mut seen = BTreeSet::new();
    for &(a, b) in pairs {
        if a >= n || b >= n {
            return Err(Error::invalid(format!("pair ({a},{b}) outside 0..{n}")));
        }
        if a == b || !seen.insert(a) || !seen.insert(b) {
            return Err(Error::invalid(format!("pair ({a},{b}) is degenerate or overlaps another")));
        }
    }
    let canonical = decompose_complete(n)?;
    let mut relabel = vec![usize::MAX; n];
    for (path, &(a, b)) in canonical.paths.iter().zip(pairs) {
        relabel[path[0]] = a;
        relabel[path[path.len() - 1]] = b;
    }
    let mut free = (0..n).filter(|v| !seen.contains(v));
    for slot in relabel.iter_mut().filter(|s| **s == usize::MAX) {
        *slot = free.next().expect("relabeling is a bijection");
    }
    Ok(HamPathSet {
        ground_size: n,
        paths: canonical.paths[..pairs.len()]
            .iter()
            .map(|p| p.iter().map(|&v| relabel[v]).collect())
            .collect(),
        matching: Vec::new(),
    })
}

/// Edge-disjoint Hamiltonian paths of `S(depth, l)` where path `i` joins the
/// extreme vertices `a_i^depth` and `b_i^depth` for `pairs[i] = (a_i, b_i)`.
fn sierpinski_paths(depth: usize, l: usize, pairs: &[(u8, u8)]) -> Result<Vec<Vec<Vec<u8>>>> {
    let idx: Vec<(usize, usize)> = pairs.iter().map(|&(a, b)| (a as usize, b as usize)).collect();
    let top = constrained_paths(l, &idx)?;
    if depth == 1 {
        return Ok(top.paths.iter().map(|p| p.iter().map(|&c| vec![c as u8]).collect()).collect());
    }
    // Entry and exit labels of every path inside every cell.
    let mut cell_pairs: Vec<Vec<(u8, u8)>> = vec![Vec::new(); l];
    for p in &top.paths {
        for (j, &c) in p.iter().enumerate() {
            let entry = if j == 0 { c } else { p[j - 1] };
            let exit = if j + 1 == p.len() { c } else { p[j + 1] };
            cell_pairs[c].push((entry as u8, exit as u8));
        }
    }
    let inner: Vec<Vec<Vec<Vec<u8>>>> = cell_pairs
        .iter()
        .map(|cp| sierpinski_paths(depth - 1, l, cp))
        .collect::<Result<_>>()?;
    Ok(top
        .paths
        .iter()
        .enumerate()
        .map(|(i, p)| {
            p.iter()
                .flat_map(|&c| {
                    inner[c][i].iter().map(move |w| {
                        let mut d = Vec::with_capacity(depth);
                        d.push(c as u8);
                        d.extend_from_slice(w);
                        d
                    })
                })
                .collect()
        })
        .collect())
}

/// `floor(l/2)` edge-disjoint Hamiltonian paths of `S(n, l)`, each joining two
/// extreme vertices.
pub fn decompose_sierpinski(n: usize, l: usize) -> Result<HamPathSet<VertexWord>> {
    let g = SierpinskiGraph::new(n, l)?;
    let canonical = decompose_complete(l)?;
    let pairs: Vec<(u8, u8)> = canonical
        .endpoints()
        .into_iter()
        .map(|(a, b)| (a as u8, b as u8))
        .collect();
    let paths = sierpinski_paths(n, l, &pairs)?;
    Ok(HamPathSet {
        ground_size: g.order() as usize,
        paths: paths
            .into_iter()
            .map(|p| p.into_iter().map(VertexWord::from_digits).collect())
            .collect(),
        matching: Vec::new(),
    })
}

/// Verifies a path set against `S(n, l)`: Hamiltonian, pairwise edge-disjoint,
/// extreme endpoints.
pub fn verify_sierpinski_paths(g: &SierpinskiGraph, set: &HamPathSet<VertexWord>) -> Result<(), String> {
    let vertices: Vec<VertexWord> = g.vertices().collect();
    check_paths(&vertices, &set.paths, |a, b| digits_adjacent(a.digits(), b.digits()))?;
    for (a, b) in set.endpoints() {
        if !a.is_constant() || !b.is_constant() {
            return Err(format!("endpoints {a}, {b} are not both extreme"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edge_set(set: &HamPathSet) -> Vec<(usize, usize)> {
        let mut e: Vec<_> = set
            .paths
            .iter()
            .flat_map(|p| p.windows(2).map(|w| norm(&w[0], &w[1])))
            .chain(set.matching.iter().map(|[a, b]| norm(a, b)))
            .collect();
        e.sort();
        e
    }

    #[test]
    fn small_complete_graphs() {
        let k4 = decompose_complete(4).unwrap();
        assert_eq!(k4.paths.len(), 2);
        assert!(k4.paths.iter().all(|p| p.len() == 4));
        assert!(k4.matching.is_empty());
        assert_eq!(edge_set(&k4).len(), 6);

        let k5 = decompose_complete(5).unwrap();
        assert_eq!(k5.paths.len(), 2);
        assert_eq!(k5.matching.len(), 2);
        assert_eq!(edge_set(&k5).len(), 10);

        let k7 = decompose_complete(7).unwrap();
        assert_eq!((k7.paths.len(), k7.matching.len()), (3, 3));
        let all: Vec<_> = (0..7).flat_map(|a| (a + 1..7).map(move |b| (a, b))).collect();
        assert_eq!(edge_set(&k7), all);

        assert!(decompose_complete(1).is_err());
    }

    #[test]
    fn complete_partition_up_to_14() {
        for n in 2..=14 {
            let set = decompose_complete(n).unwrap();
            let e = edge_set(&set);
            let mut d = e.clone();
            d.dedup();
            assert_eq!(d.len(), e.len());
            assert_eq!(e.len(), n * (n - 1) / 2);
            assert!(set.paths.iter().all(|p| p.len() == n));
        }
    }

    #[test]
    fn constrained_examples() {
        let set = constrained_paths(4, &[(2, 0), (3, 1)]).unwrap();
        assert_eq!(set.endpoints(), vec![(2, 0), (3, 1)]);
        check_paths(&[0, 1, 2, 3], &set.paths, |a, b| a != b).unwrap();

        let one = constrained_paths(6, &[(4, 1)]).unwrap();
        assert_eq!(one.endpoints(), vec![(4, 1)]);
        check_paths(&(0..6).collect::<Vec<_>>(), &one.paths, |a, b| a != b).unwrap();

        assert!(constrained_paths(5, &[(0, 1), (2, 3), (4, 0)]).is_err());
        assert!(constrained_paths(6, &[(0, 1), (1, 2)]).is_err());
        assert!(constrained_paths(6, &[(0, 0)]).is_err());
    }

    #[test]
    fn sierpinski_examples() {
        let k4 = decompose_sierpinski(1, 4).unwrap();
        assert_eq!(k4.paths.len(), 2);
        verify_sierpinski_paths(&SierpinskiGraph::new(1, 4).unwrap(), &k4).unwrap();

        let s23 = decompose_sierpinski(2, 3).unwrap();
        assert_eq!(s23.paths.len(), 1);
        verify_sierpinski_paths(&SierpinskiGraph::new(2, 3).unwrap(), &s23).unwrap();

        let s24 = decompose_sierpinski(2, 4).unwrap();
        assert_eq!(s24.paths.len(), 2);
        assert!(s24.paths.iter().all(|p| p.len() == 16));
        verify_sierpinski_paths(&SierpinskiGraph::new(2, 4).unwrap(), &s24).unwrap();
    }

    #[test]
    fn sierpinski_sweep_up_to_2000_vertices() {
        for l in 3..=12usize {
            let mut n = 1;
            while (l as u64).pow(n as u32) <= 2000 {
                let g = SierpinskiGraph::new(n, l).unwrap();
                let set = decompose_sierpinski(n, l).unwrap();
                assert_eq!(set.paths.len(), l / 2);
                verify_sierpinski_paths(&g, &set).unwrap_or_else(|e| panic!("S({n},{l}): {e}"));
                n += 1;
            }
        }
    }

    #[test]
    fn verifier_rejects_shared_edges() {
        let paths = vec![vec![0, 1, 2], vec![2, 1, 0]];
        assert!(check_paths(&[0, 1, 2], &paths, |a, b| a != b).is_err());
    }
}
