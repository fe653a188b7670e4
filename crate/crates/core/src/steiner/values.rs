use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{SierpinskiGraph, VertexWord};
use crate::oracle::Flavor;

pub(crate) fn ceil_half(k: usize) -> usize {
    k.div_ceil(2)
}

/// Closed-form generalized (edge-)connectivity of `S(n, l)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "value", rename_all = "snake_case")]
pub enum ConnectivityValue {
    Exact(u64),
    /// Only an upper bound is known.
    UpperBound(u64),
}

impl ConnectivityValue {
    pub fn value(&self) -> u64 {
        match *self {
            ConnectivityValue::Exact(v) | ConnectivityValue::UpperBound(v) => v,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, ConnectivityValue::Exact(_))
    }
}

/// `l - ceil(k/2)` for `3 <= k <= l`; `floor(l/2)` for larger `k`, exact for
/// the edge flavor and an upper bound for the vertex flavor.
pub fn connectivity_value(n: usize, l: usize, k: usize, flavor: Flavor) -> Result<ConnectivityValue> {
    let g = SierpinskiGraph::new(n, l)?;
    if k < 3 || k as u64 > g.order() {
        return Err(Error::invalid(format!(
            "k = {k} outside 3..={} (use the oracle for k = 2)",
            g.order()
        )));
    }
    Ok(if k <= l {
        ConnectivityValue::Exact((l - ceil_half(k)) as u64)
    } else {
        match flavor {
            Flavor::Edge => ConnectivityValue::Exact((l / 2) as u64),
            Flavor::Vertex => ConnectivityValue::UpperBound((l / 2) as u64),
        }
    })
}

/// One extreme vertex from each of the first `k` top-level cells.
pub fn worst_case_subset(n: usize, l: usize, k: usize) -> Result<Vec<VertexWord>> {
    let g = SierpinskiGraph::new(n, l)?;
    if n < 2 {
        return Err(Error::invalid("worst-case subsets need n >= 2"));
    }
    if !(3..=l).contains(&k) {
        return Err(Error::invalid(format!("k = {k} outside 3..={l}")));
    }
    (0..k as u8).map(|i| g.extreme_vertex(i)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> VertexWord {
        s.parse().unwrap()
    }

    #[test]
    fn closed_forms() {
        assert_eq!(connectivity_value(2, 4, 3, Flavor::Edge).unwrap(), ConnectivityValue::Exact(2));
        assert_eq!(connectivity_value(3, 5, 5, Flavor::Vertex).unwrap(), ConnectivityValue::Exact(2));
        assert_eq!(connectivity_value(2, 3, 4, Flavor::Edge).unwrap(), ConnectivityValue::Exact(1));
        assert_eq!(
            connectivity_value(2, 3, 4, Flavor::Vertex).unwrap(),
            ConnectivityValue::UpperBound(1)
        );
        assert!(connectivity_value(2, 3, 2, Flavor::Edge).is_err());
        assert!(connectivity_value(2, 3, 10, Flavor::Edge).is_err());
    }

    #[test]
    fn worst_case() {
        assert_eq!(worst_case_subset(2, 4, 3).unwrap(), vec![w("00"), w("11"), w("22")]);
        assert_eq!(worst_case_subset(2, 3, 3).unwrap(), vec![w("00"), w("11"), w("22")]);
        assert_eq!(
            worst_case_subset(3, 5, 4).unwrap(),
            vec![w("000"), w("111"), w("222"), w("333")]
        );
        assert!(worst_case_subset(2, 4, 5).is_err());
    }
}
