//! Finite truncations of an almost disjoint family of branches in the
//! binary tree. Nodes carry breadth-first labels: the root is 1 and the
//! children of `v` are `2v` and `2v + 1`.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gl_index::IndexSet;

/// Deepest supported tree; node labels must fit in `u64`.
pub const MAX_DEPTH: u32 = 62;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Branch {
    /// Left-to-right path bits, `depth` characters of `0`/`1`.
    pub word: String,
    /// Root followed by one node per bit.
    pub nodes: Vec<u64>,
}

impl Branch {
    fn from_code(code: u64, depth: u32) -> Self {
        let word: String = (0..depth)
            .rev()
            .map(|i| if code >> i & 1 == 1 { '1' } else { '0' })
            .collect();
        let mut nodes = Vec::with_capacity(depth as usize + 1);
        let mut v = 1u64;
        nodes.push(v);
        for c in word.chars() {
            v = 2 * v + u64::from(c == '1');
            nodes.push(v);
        }
        Branch { word, nodes }
    }

    pub fn index_set(&self) -> IndexSet {
        IndexSet::explicit(self.nodes.clone()).expect("labels increase along a branch")
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlmostDisjointFamily {
    pub depth: u32,
    pub branches: Vec<Branch>,
}

impl AlmostDisjointFamily {
    /// Labels shared by branches `a` and `b`.
    pub fn intersection(&self, a: usize, b: usize) -> Vec<u64> {
        let nb = &self.branches[b].nodes;
        self.branches[a]
            .nodes
            .iter()
            .copied()
            .filter(|v| nb.binary_search(v).is_ok())
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "depth": self.depth,
            "branches": self.branches.iter().map(|b| json!({"word": b.word, "nodes": b.nodes})).collect::<Vec<_>>(),
        })
    }
}

/// Nodes two branches share: the root plus their common word prefix.
pub fn shared_nodes(a: &str, b: &str) -> usize {
    1 + a.chars().zip(b.chars()).take_while(|(x, y)| x == y).count()
}

/// `count` branches spread evenly over the `2^depth` words of length `depth`;
/// for two or more branches the first is all zeros and the last all ones.
pub fn almost_disjoint_family(count: usize, depth: u32) -> Result<AlmostDisjointFamily> {
    if count == 0 || depth == 0 {
        return Err(Error::invalid("count and depth must be positive"));
    }
    if depth > MAX_DEPTH {
        return Err(Error::TooLarge(format!("depth {depth} exceeds {MAX_DEPTH}")));
    }
    let words = 1u128 << depth;
    if count as u128 > words {
        return Err(Error::invalid(format!("{count} branches need depth >= log2({count})")));
    }
    let top = words - 1;
    let branches = (0..count as u128)
        .map(|i| {
            let code = if count == 1 { 0 } else { i * top / (count as u128 - 1) };
            Branch::from_code(code as u64, depth)
        })
        .collect();
    Ok(AlmostDisjointFamily { depth, branches })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_branches() {
        let f = almost_disjoint_family(2, 3).unwrap();
        assert_eq!(f.branches[0].word, "000");
        assert_eq!(f.branches[1].word, "111");
        assert_eq!(f.branches[0].nodes, vec![1, 2, 4, 8]);
        assert_eq!(f.intersection(0, 1), vec![1]);
    }

    #[test]
    fn intersections_follow_prefixes() {
        let f = almost_disjoint_family(37, 8).unwrap();
        for a in 0..f.branches.len() {
            for b in a + 1..f.branches.len() {
                let n = shared_nodes(&f.branches[a].word, &f.branches[b].word);
                assert_eq!(f.intersection(a, b).len(), n);
                assert!(n <= f.depth as usize);
            }
        }
        assert_eq!(almost_disjoint_family(1, 4).unwrap().branches.len(), 1);
        assert!(almost_disjoint_family(17, 4).is_err());
    }
}
