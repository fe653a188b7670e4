//! Structural properties of `S(n, l)`: order and size, degrees, density,
//! clustering, diameter and the Steiner-tree entropy.
//!
//! Measured quantities are exact rationals computed from the graph itself.
//! Quoted closed forms that disagree with them are evaluated separately and
//! reported next to the measured value with a consistency flag; they never
//! replace it.

use std::collections::{BTreeMap, VecDeque};

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::graph::SierpinskiGraph;
use crate::steiner::{connectivity_value, ConnectivityValue};
use crate::oracle::Flavor;

/// Default vertex cap for enumeration-based properties.
pub const PROPS_CAP: u128 = 10_000;

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

fn ratio(a: impl Into<BigInt>, b: impl Into<BigInt>) -> BigRational {
    BigRational::new(a.into(), b.into())
}

fn check_cap(g: &SierpinskiGraph, cap: u128) -> Result<()> {
    if g.order() as u128 > cap {
        return Err(Error::SizeCap {
            what: "graph order",
            size: g.order() as u128,
            cap,
        });
    }
    Ok(())
}

/// `(N_t, E_t) = (l^t, (l^{t+1} - l) / 2)`.
pub fn order_size(t: usize, l: usize) -> Result<(BigUint, BigUint)> {
    if t == 0 || l == 0 {
        return Err(Error::invalid("order_size needs t >= 1 and l >= 1"));
    }
    let lb = BigUint::from(l);
    let n = lb.pow(t as u32);
    let e = (&n * &lb - &lb) / 2u32;
    Ok((n, e))
}

/// Order and size counted from the vertex and edge enumeration.
pub fn enumerate_order_size(g: &SierpinskiGraph, cap: u128) -> Result<(u64, u128)> {
    check_cap(g, cap)?;
    let n = g.vertices().count() as u64;
    let e: usize = g.vertices().map(|v| g.neighbors_unchecked(v.digits()).len()).sum();
    Ok((n, e as u128 / 2))
}

/// `E / C(N, 2)`.
pub fn density(t: usize, l: usize) -> Result<BigRational> {
    let (n, e) = order_size(t, l)?;
    let pairs = &n * (&n - 1u32) / 2u32;
    Ok(ratio(e, pairs))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clustering {
    /// Local coefficient per vertex, in vertex-index order.
    pub local: Vec<BigRational>,
    pub global: BigRational,
}

/// Exact local coefficients by counting edges among each neighbourhood.
pub fn clustering(g: &SierpinskiGraph, cap: u128, exec: Exec) -> Result<Clustering> {
    check_cap(g, cap)?;
    let order = g.order() as usize;
    let local = exec.map_range(0..order, |i| {
        let v = g.word_at(i as u64).expect("index in range");
        let nbrs = g.neighbors_unchecked(v.digits());
        let d = nbrs.len() as u64;
        if d < 2 {
            return BigRational::zero();
        }
        let mut links = 0u64;
        for (a, x) in nbrs.iter().enumerate() {
            for y in &nbrs[a + 1..] {
                if g.is_adjacent(x, y).expect("valid words") {
                    links += 1;
                }
            }
        }
        ratio(big(links), big(d * (d - 1) / 2))
    });
    let sum = local.iter().fold(BigRational::zero(), |acc, c| acc + c);
    let global = sum / BigRational::from_integer(big(order as u64));
    Ok(Clustering { local, global })
}

/// Global clustering from the structure: extreme vertices have coefficient 1,
/// all others `(l-2)/l`.
pub fn clustering_closed_form(n: usize, l: usize) -> Result<BigRational> {
    let (order, _) = order_size(n, l)?;
    let order = BigInt::from(order);
    let lb = big(l as u64);
    let others = ratio(&order - &lb, 1) * ratio(&lb - 2, lb.clone());
    Ok((ratio(lb, 1) + others) / BigRational::from_integer(order))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct QuotedValue<T> {
    pub quoted: T,
    pub measured: T,
    pub inconsistent: bool,
}

/// The quoted closed form `l^{-n} (l^{n+1} + l^n - 2l) / (l - 1)` next to the
/// measured value; flagged when it exceeds 1 or differs by more than 1e-12.
pub fn clustering_paper_formula(n: usize, l: usize) -> Result<QuotedValue<BigRational>> {
    if n == 0 || l < 3 {
        return Err(Error::invalid("needs n >= 1 and l >= 3"));
    }
    let lb = big(l as u64);
    let ln = lb.pow(n as u32);
    let quoted = ratio(&ln * &lb + &ln - 2 * &lb, &ln * (&lb - 1));
    let measured = clustering_closed_form(n, l)?;
    let tol = ratio(1, big(10).pow(12));
    let inconsistent = quoted > BigRational::one() || (&quoted - &measured).abs() > tol;
    Ok(QuotedValue {
        quoted,
        measured,
        inconsistent,
    })
}

/// Exact diameter by breadth-first search from every vertex.
pub fn diameter(g: &SierpinskiGraph, cap: u128, exec: Exec) -> Result<u64> {
    check_cap(g, cap)?;
    let order = g.order() as usize;
    let adj: Vec<Vec<u32>> = (0..order)
        .map(|i| {
            let v = g.word_at(i as u64).expect("index in range");
            g.neighbors_unchecked(v.digits())
                .iter()
                .map(|w| g.index_unchecked(w.digits()) as u32)
                .collect()
        })
        .collect();
    let ecc = exec.map_range(0..order, |src| {
        let mut dist = vec![u32::MAX; order];
        dist[src] = 0;
        let mut queue = VecDeque::from([src as u32]);
        let mut far = 0;
        while let Some(v) = queue.pop_front() {
            let d = dist[v as usize];
            far = far.max(d);
            for &w in &adj[v as usize] {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = d + 1;
                    queue.push_back(w);
                }
            }
        }
        if dist.contains(&u32::MAX) {
            None
        } else {
            Some(far as u64)
        }
    });
    ecc.into_iter()
        .try_fold(0, |m, e| e.map(|e| m.max(e)))
        .ok_or_else(|| Error::Invariant("graph is disconnected".into()))
}

/// The quoted diameter `2^l - 1`.
pub fn diameter_paper(l: usize) -> BigUint {
    (BigUint::one() << l) - 1u32
}

/// `ln(l - ceil(k/2)) / l^n`.
pub fn steiner_entropy(n: usize, l: usize, k: usize) -> Result<f64> {
    if !(3..=l).contains(&k) {
        return Err(Error::invalid(format!("k = {k} outside 3..={l}")));
    }
    let kappa = match connectivity_value(n, l, k, Flavor::Vertex)? {
        ConnectivityValue::Exact(v) => v,
        ConnectivityValue::UpperBound(_) => unreachable!("k <= l is exact"),
    };
    if kappa == 0 {
        return Err(Error::invalid("connectivity value is zero"));
    }
    let order = (l as f64).powi(n as i32);
    Ok((kappa as f64).ln() / order)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeDistribution {
    /// degree -> number of vertices
    pub histogram: BTreeMap<usize, u64>,
    /// Quoted `P(l-1, t)` and `P(l, t)`.
    pub quoted: Vec<(usize, BigRational)>,
    /// Enumerated fractions for the same degrees.
    pub measured: Vec<(usize, BigRational)>,
    pub mismatch: bool,
}

pub fn degree_distribution(g: &SierpinskiGraph, cap: u128) -> Result<DegreeDistribution> {
    check_cap(g, cap)?;
    let mut histogram = BTreeMap::new();
    for v in g.vertices() {
        *histogram.entry(g.neighbors_unchecked(v.digits()).len()).or_insert(0u64) += 1;
    }
    let l = g.base() as u64;
    let order = big(g.order());
    let quoted = vec![
        (g.base() - 1, ratio(big(l - 1), order.clone())),
        (g.base(), ratio(big(g.order()) - big(l), order.clone())),
    ];
    let measured: Vec<(usize, BigRational)> = quoted
        .iter()
        .map(|&(d, _)| (d, ratio(big(histogram.get(&d).copied().unwrap_or(0)), order.clone())))
        .collect();
    let mismatch = quoted != measured;
    Ok(DegreeDistribution {
        histogram,
        quoted,
        measured,
        mismatch,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NetPropsReport {
    pub t: usize,
    pub l: usize,
    pub order: BigUint,
    pub size: BigUint,
    pub degrees: Option<DegreeDistribution>,
    pub density: BigRational,
    /// Measured by enumeration; `None` beyond the cap.
    pub clustering_exact: Option<BigRational>,
    pub clustering_paper: QuotedValue<BigRational>,
    pub diameter_bfs: Option<u64>,
    pub diameter_paper: BigUint,
    /// `(k, rho_k)` for `3 <= k <= l`.
    pub entropy: Vec<(usize, f64)>,
}

/// All properties of `S(t, l)`; enumeration-based fields are skipped beyond `cap`.
pub fn net_props(t: usize, l: usize, cap: u128, exec: Exec) -> Result<NetPropsReport> {
    let g = SierpinskiGraph::new(t, l)?;
    let (order, size) = order_size(t, l)?;
    let within = g.order() as u128 <= cap;
    Ok(NetPropsReport {
        t,
        l,
        order,
        size,
        degrees: within.then(|| degree_distribution(&g, cap)).transpose()?,
        density: density(t, l)?,
        clustering_exact: within.then(|| clustering(&g, cap, exec).map(|c| c.global)).transpose()?,
        clustering_paper: clustering_paper_formula(t, l)?,
        diameter_bfs: within.then(|| diameter(&g, cap, exec)).transpose()?,
        diameter_paper: diameter_paper(l),
        entropy: (3..=l).map(|k| steiner_entropy(t, l, k).map(|r| (k, r))).collect::<Result<_>>()?,
    })
}

/// A float rounded to 12 significant digits, printed in shortest form.
pub fn fmt_float(x: f64) -> String {
    let rounded: f64 = format!("{x:.11e}").parse().expect("round trip");
    format!("{rounded}")
}

pub fn fmt_ratio(r: &BigRational) -> String {
    fmt_float(r.to_f64().unwrap_or(f64::NAN))
}

pub fn props_csv(rows: &[NetPropsReport]) -> String {
    let mut s = String::from("t,l,N,E,density,C_exact,C_paper,diam_bfs\n");
    for r in rows {
        s.push_str(&format!(
            "{},{},{},{},{},{},{},{}\n",
            r.t,
            r.l,
            r.order,
            r.size,
            fmt_ratio(&r.density),
            r.clustering_exact.as_ref().map(fmt_ratio).unwrap_or_default(),
            fmt_ratio(&r.clustering_paper.quoted),
            r.diameter_bfs.map(|d| d.to_string()).unwrap_or_default(),
        ));
    }
    s
}

/// Rows are `(n, l, k, rho_k)`.
pub fn entropy_csv(rows: &[(usize, usize, usize, f64)]) -> String {
    let mut s = String::from("n,l,k,rho_k\n");
    for &(n, l, k, rho) in rows {
        s.push_str(&format!("{n},{l},{k},{}\n", fmt_float(rho)));
    }
    s
}

pub fn degrees_csv(histogram: &BTreeMap<usize, u64>) -> String {
    let mut s = String::from("degree,count\n");
    for (d, c) in histogram {
        s.push_str(&format!("{d},{c}\n"));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64) -> BigRational {
        ratio(a, b)
    }

    #[test]
    fn orders_and_sizes() {
        assert_eq!(order_size(3, 3).unwrap(), (27u32.into(), 39u32.into()));
        assert_eq!(order_size(6, 3).unwrap(), (729u32.into(), 1092u32.into()));
        assert_eq!(order_size(1, 7).unwrap(), (7u32.into(), 21u32.into()));
        assert!(order_size(0, 3).is_err());
        for (n, l) in [(1, 3), (2, 4), (3, 5), (4, 3)] {
            let g = SierpinskiGraph::new(n, l).unwrap();
            let (a, b) = enumerate_order_size(&g, PROPS_CAP).unwrap();
            let (x, y) = order_size(n, l).unwrap();
            assert_eq!((BigUint::from(a), BigUint::from(b)), (x, y));
        }
    }

    #[test]
    fn clustering_s23() {
        let g = SierpinskiGraph::new(2, 3).unwrap();
        let c = clustering(&g, PROPS_CAP, Exec::Sequential).unwrap();
        assert_eq!(c.global, q(5, 9));
        assert_eq!(c.local[0], q(1, 1));
        assert_eq!(c.local[1], q(1, 3));
        assert_eq!(clustering_closed_form(2, 3).unwrap(), q(5, 9));
        let p = clustering_paper_formula(2, 3).unwrap();
        assert_eq!(p.quoted, q(5, 3));
        assert!(p.inconsistent);
        let k = clustering_paper_formula(1, 5).unwrap();
        assert_eq!(k.quoted, q(1, 1));
        assert!(!k.inconsistent);
    }

    #[test]
    fn diameters() {
        for (n, l, d) in [(1, 5, 1), (2, 3, 3), (3, 3, 7), (2, 5, 3)] {
            let g = SierpinskiGraph::new(n, l).unwrap();
            assert_eq!(diameter(&g, PROPS_CAP, Exec::Parallel).unwrap(), d);
        }
        assert_eq!(diameter_paper(3), 7u32.into());
        let big = SierpinskiGraph::new(9, 5).unwrap();
        assert!(matches!(diameter(&big, PROPS_CAP, Exec::Sequential), Err(Error::SizeCap { .. })));
    }

    #[test]
    fn entropy_values() {
        assert_eq!(steiner_entropy(2, 3, 3).unwrap(), 0.0);
        let r = steiner_entropy(2, 5, 3).unwrap();
        assert!((r - 3f64.ln() / 25.0).abs() < 1e-15);
        assert!(steiner_entropy(3, 5, 3).unwrap() < r);
        assert!(steiner_entropy(2, 3, 4).is_err());
    }

    #[test]
    fn degrees() {
        let g = SierpinskiGraph::new(2, 3).unwrap();
        let d = degree_distribution(&g, PROPS_CAP).unwrap();
        assert_eq!(d.histogram, BTreeMap::from([(2, 3), (3, 6)]));
        assert_eq!(d.quoted[0], (2, q(2, 9)));
        assert_eq!(d.measured[0], (2, q(3, 9)));
        assert!(d.mismatch);
        let k = degree_distribution(&SierpinskiGraph::new(1, 4).unwrap(), PROPS_CAP).unwrap();
        assert_eq!(k.histogram, BTreeMap::from([(3, 4)]));
    }

    #[test]
    fn density_and_csv() {
        assert_eq!(density(2, 3).unwrap(), q(12, 36));
        let r = net_props(3, 3, PROPS_CAP, Exec::Sequential).unwrap();
        let csv = props_csv(&[r]);
        assert_eq!(csv.lines().nth(1).unwrap(), "3,3,27,39,0.111111111111,0.407407407407,1.88888888889,7");
        assert_eq!(fmt_float(1.0 / 3.0), "0.333333333333");
        assert_eq!(fmt_float(0.0), "0");
        assert_eq!(entropy_csv(&[(2, 3, 3, 0.0)]), "n,l,k,rho_k\n2,3,3,0\n");
        assert_eq!(degrees_csv(&BTreeMap::from([(2, 3)])), "degree,count\n2,3\n");
    }
}
