//! Sierpinski graphs `S(n, l)` over base-`l` words.
//!
//! A vertex is a word `u_0 u_1 ... u_{n-1}` with digits in `0..l`. Two words
//! are adjacent iff there is a position `d` such that they agree before `d`,
//! differ at `d`, and after `d` each word is constant and equal to the other
//! word's digit at `d`. All queries are computed on demand from that rule, so
//! formula checks work at any depth; an explicit edge list is only built
//! below a size cap.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::GenericGraph;

/// Largest base supported by the textual word format (`0-9a-z`).
pub const MAX_BASE: usize = 36;

/// Default cap on `l^n` for materializing an explicit edge list.
pub const DEFAULT_MATERIALIZE_CAP: u128 = 100_000;

/// An `n`-digit base-`l` word labelling one vertex.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexWord(Vec<u8>);

impl VertexWord {
    pub fn from_digits(digits: Vec<u8>) -> Self {
        VertexWord(digits)
    }

    pub fn digits(&self) -> &[u8] {
        &self.0
    }

    pub fn into_digits(self) -> Vec<u8> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// The constant word `i i ... i` of the given length.
    pub fn constant(digit: u8, len: usize) -> Self {
        VertexWord(vec![digit; len])
    }

    pub fn is_constant(&self) -> bool {
        self.0.windows(2).all(|w| w[0] == w[1])
    }

    pub fn prefix(&self, len: usize) -> VertexWord {
        VertexWord(self.0[..len].to_vec())
    }

    /// Appends one digit.
    pub fn child(&self, digit: u8) -> VertexWord {
        let mut d = Vec::with_capacity(self.0.len() + 1);
        d.extend_from_slice(&self.0);
        d.push(digit);
        VertexWord(d)
    }

    pub fn concat(&self, tail: &[u8]) -> VertexWord {
        let mut d = self.0.clone();
        d.extend_from_slice(tail);
        VertexWord(d)
    }
}

fn digit_char(d: u8) -> char {
    char::from_digit(d as u32, MAX_BASE as u32).expect("digit below 36")
}

impl fmt::Display for VertexWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &d in &self.0 {
            write!(f, "{}", digit_char(d))?;
        }
        Ok(())
    }
}

impl fmt::Debug for VertexWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{self}>")
    }
}

impl FromStr for VertexWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        s.chars()
            .map(|c| {
                c.to_digit(MAX_BASE as u32)
                    .map(|d| d as u8)
                    .ok_or_else(|| Error::invalid(format!("'{c}' is not a word digit in {s:?}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(VertexWord)
    }
}

impl Serialize for VertexWord {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for VertexWord {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Adjacency rule on raw digit strings of equal length.
pub(crate) fn digits_adjacent(u: &[u8], v: &[u8]) -> bool {
    if u.len() != v.len() {
        return false;
    }
    let Some(d) = u.iter().zip(v).position(|(a, b)| a != b) else {
        return false;
    };
    let (a, b) = (u[d], v[d]);
    u[d + 1..].iter().all(|&x| x == b) && v[d + 1..].iter().all(|&x| x == a)
}

/// Position of the first differing digit, if the words are adjacent.
pub(crate) fn adjacency_position(u: &[u8], v: &[u8]) -> Option<usize> {
    if digits_adjacent(u, v) {
        u.iter().zip(v).position(|(a, b)| a != b)
    } else {
        None
    }
}

/// The unique neighbour outside the vertex's 1-atom, if any.
pub(crate) fn out_neighbor_digits(u: &[u8]) -> Option<Vec<u8>> {
    let n = u.len();
    let last = *u.last()?;
    let run = u.iter().rev().take_while(|&&x| x == last).count();
    if run == n {
        return None;
    }
    let d = n - 1 - run;
    let a = u[d];
    let mut v = u[..d].to_vec();
    v.push(last);
    v.extend(std::iter::repeat_n(a, run));
    Some(v)
}

/// The bridge edge `(<i j ... j>, <j i ... i>)` joining sibling cells `i` and `j`.
pub fn bridge_edge(i: u8, j: u8, depth: usize) -> Result<(VertexWord, VertexWord)> {
    if i == j {
        return Err(Error::invalid(format!("no bridge edge inside cell {i}")));
    }
    if depth == 0 {
        return Err(Error::invalid("bridge depth must be at least 1"));
    }
    let mut a = vec![i];
    a.extend(std::iter::repeat_n(j, depth - 1));
    let mut b = vec![j];
    b.extend(std::iter::repeat_n(i, depth - 1));
    Ok((VertexWord(a), VertexWord(b)))
}

/// An `s`-atom: all vertices sharing a fixed prefix of length `n - s`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AtomId {
    pub prefix: VertexWord,
    pub level: usize,
}

impl AtomId {
    pub fn contains(&self, v: &VertexWord) -> bool {
        v.digits().starts_with(self.prefix.digits())
    }
}

/// `S(n, l)`. Depth 0 only arises from full contraction and denotes the
/// single-vertex graph whose only vertex is the empty word.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SierpinskiGraph {
    depth: usize,
    base: usize,
}

impl SierpinskiGraph {
    pub fn new(n: usize, l: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::invalid("depth n must be at least 1"));
        }
        Self::with_depth(n, l)
    }

    fn with_depth(n: usize, l: usize) -> Result<Self> {
        if !(3..=MAX_BASE).contains(&l) {
            return Err(Error::invalid(format!("base l = {l} must lie in 3..={MAX_BASE}")));
        }
        if (l as f64).log2() * n as f64 >= 63.0 {
            return Err(Error::invalid(format!("S({n},{l}) has more than 2^63 vertices")));
        }
        Ok(SierpinskiGraph { depth: n, base: l })
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn base(&self) -> usize {
        self.base
    }

    /// `l^n`.
    pub fn order(&self) -> u64 {
        (self.base as u64).pow(self.depth as u32)
    }

    /// `(l^{n+1} - l) / 2`, or 0 for the single vertex.
    pub fn size(&self) -> u128 {
        let l = self.base as u128;
        (l.pow(self.depth as u32 + 1) - l) / 2
    }

    pub fn validate(&self, w: &VertexWord) -> Result<()> {
        if w.len() != self.depth {
            return Err(Error::invalid(format!(
                "word {w} has length {}, expected {}",
                w.len(),
                self.depth
            )));
        }
        if let Some(&d) = w.digits().iter().find(|&&d| d as usize >= self.base) {
            return Err(Error::invalid(format!("digit {d} of {w} is not below {}", self.base)));
        }
        Ok(())
    }

    pub fn word(&self, digits: &[u8]) -> Result<VertexWord> {
        let w = VertexWord(digits.to_vec());
        self.validate(&w)?;
        Ok(w)
    }

    pub fn parse_word(&self, s: &str) -> Result<VertexWord> {
        let w: VertexWord = s.parse()?;
        self.validate(&w)?;
        Ok(w)
    }

    pub fn is_adjacent(&self, u: &VertexWord, v: &VertexWord) -> Result<bool> {
        self.validate(u)?;
        self.validate(v)?;
        Ok(digits_adjacent(u.digits(), v.digits()))
    }

    /// Neighbours in ascending word order.
    pub fn neighbors(&self, u: &VertexWord) -> Result<Vec<VertexWord>> {
        self.validate(u)?;
        Ok(self.neighbors_unchecked(u.digits()))
    }

    pub(crate) fn neighbors_unchecked(&self, u: &[u8]) -> Vec<VertexWord> {
        let Some((&last, head)) = u.split_last() else {
            return Vec::new();
        };
        let mut out: Vec<VertexWord> = (0..self.base as u8)
            .filter(|&j| j != last)
            .map(|j| {
                let mut d = head.to_vec();
                d.push(j);
                VertexWord(d)
            })
            .collect();
        if let Some(o) = out_neighbor_digits(u) {
            out.push(VertexWord(o));
        }
        out.sort();
        out
    }

    pub fn degree(&self, u: &VertexWord) -> Result<usize> {
        Ok(self.neighbors(u)?.len())
    }

    pub fn extreme_vertex(&self, i: u8) -> Result<VertexWord> {
        if i as usize >= self.base {
            return Err(Error::invalid(format!("digit {i} is not below {}", self.base)));
        }
        Ok(VertexWord::constant(i, self.depth))
    }

    pub fn extreme_vertices(&self) -> Vec<VertexWord> {
        (0..self.base as u8).map(|i| VertexWord::constant(i, self.depth)).collect()
    }

    /// Most-significant-digit-first codec to `0..l^n`.
    pub fn index_of(&self, w: &VertexWord) -> Result<u64> {
        self.validate(w)?;
        Ok(self.index_unchecked(w.digits()))
    }

    pub(crate) fn index_unchecked(&self, digits: &[u8]) -> u64 {
        digits.iter().fold(0u64, |acc, &d| acc * self.base as u64 + d as u64)
    }

    pub fn word_at(&self, mut index: u64) -> Result<VertexWord> {
        if index >= self.order() {
            return Err(Error::invalid(format!("index {index} out of range for {}", self.order())));
        }
        let mut d = vec![0u8; self.depth];
        for slot in d.iter_mut().rev() {
            *slot = (index % self.base as u64) as u8;
            index /= self.base as u64;
        }
        Ok(VertexWord(d))
    }

    /// All vertices in ascending word (= index) order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexWord> + '_ {
        (0..self.order()).map(|i| self.word_at(i).expect("index in range"))
    }

    fn check_cap(&self, cap: u128) -> Result<()> {
        let size = self.order() as u128;
        if size > cap {
            return Err(Error::SizeCap {
                what: "vertex set",
                size,
                cap,
            });
        }
        Ok(())
    }

    /// All edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self, cap: u128) -> Result<Vec<(VertexWord, VertexWord)>> {
        self.check_cap(cap)?;
        let mut out = Vec::with_capacity(self.size() as usize);
        for u in self.vertices() {
            for v in self.neighbors_unchecked(u.digits()) {
                if u < v {
                    out.push((u.clone(), v));
                }
            }
        }
        Ok(out)
    }

    /// Explicit graph on codec indices.
    pub fn materialize(&self, cap: u128) -> Result<GenericGraph> {
        let edges = self
            .edges(cap)?
            .into_iter()
            .map(|(u, v)| {
                (
                    self.index_unchecked(u.digits()) as usize,
                    self.index_unchecked(v.digits()) as usize,
                )
            })
            .collect();
        GenericGraph::new(self.order() as usize, edges)
    }

    pub fn atom_of(&self, v: &VertexWord, s: usize) -> Result<AtomId> {
        self.validate(v)?;
        if s > self.depth {
            return Err(Error::invalid(format!("atom level {s} exceeds depth {}", self.depth)));
        }
        Ok(AtomId {
            prefix: v.prefix(self.depth - s),
            level: s,
        })
    }

    /// The quotient `G_s` by the `s`-atoms, which is `S(n - s, l)`.
    pub fn contract(&self, s: usize) -> Result<SierpinskiGraph> {
        if s > self.depth {
            return Err(Error::invalid(format!("contraction level {s} exceeds depth {}", self.depth)));
        }
        Self::with_depth(self.depth - s, self.base)
    }

    /// Realizes the edge `uv` of this graph one level down: the ends `u_e`,
    /// `v_e` inside the complete graphs replacing `u` and `v`.
    pub fn edge_endpoints_in_refinement(
        &self,
        u: &VertexWord,
        v: &VertexWord,
    ) -> Result<(VertexWord, VertexWord)> {
        self.validate(u)?;
        self.validate(v)?;
        let d = adjacency_position(u.digits(), v.digits())
            .ok_or_else(|| Error::invalid(format!("{u} and {v} are not adjacent")))?;
        Ok((u.child(v.digits()[d]), v.child(u.digits()[d])))
    }

    /// The edge as it appears in a graph `extra` levels deeper.
    pub(crate) fn lift_edge(u: &[u8], v: &[u8], extra: usize) -> (Vec<u8>, Vec<u8>) {
        let d = adjacency_position(u, v).expect("lifting a non-edge");
        let (a, b) = (u[d], v[d]);
        let mut ul = u.to_vec();
        ul.extend(std::iter::repeat_n(b, extra));
        let mut vl = v.to_vec();
        vl.extend(std::iter::repeat_n(a, extra));
        (ul, vl)
    }

    /// Graphviz rendering, one line per edge.
    pub fn to_dot(&self, cap: u128) -> Result<String> {
        self.check_cap(cap)?;
        let mut out = format!("graph S_{}_{} {{\n", self.depth, self.base);
        for v in self.vertices() {
            out.push_str(&format!("  \"{v}\";\n"));
        }
        for (u, v) in self.edges(cap)? {
            out.push_str(&format!("  \"{u}\" -- \"{v}\";\n"));
        }
        out.push_str("}\n");
        Ok(out)
    }

    pub fn to_json(&self, cap: u128) -> Result<serde_json::Value> {
        let export = GraphExport {
            n: self.depth,
            l: self.base,
            vertices: self.vertices().collect(),
            edges: self.edges(cap)?.into_iter().map(|(u, v)| [u, v]).collect(),
        };
        Ok(serde_json::to_value(export).expect("graph export serializes"))
    }
}

#[derive(Debug, Serialize, Deserialize)]
pub struct GraphExport {
    pub n: usize,
    pub l: usize,
    pub vertices: Vec<VertexWord>,
    pub edges: Vec<[VertexWord; 2]>,
}
