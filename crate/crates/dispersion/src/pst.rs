//! Partially persistent segment tree over an integer array supporting
//! versioned range-increment and point-query.
//!
//! Version 0 is the all-zero array; version `t` reflects exactly the
//! first `t` ADD operations. Nodes live in an append-only pool, so old
//! versions stay queryable at no copying cost.
//!
//! A range increment needs no lazy propagation under persistence: ADD(i,j)
//! writes difference marks (+1 at leaf `i`, -1 at leaf `j+1` when it
//! exists) along two root-to-leaf paths, and QUERY(i) takes the prefix sum
//! of marks over leaves `1..=i`. Each path clones at most
//! `ceil(log2 n) + 1` nodes, so an ADD grows the pool by at most
//! `2 * (ceil(log2 n) + 1)` nodes.

use std::fmt;

#[derive(Debug, Clone, Copy)]
struct Node {
    /// Sum of difference marks in this subtree.
    sum: i64,
    left: u32,
    right: u32,
}

/// Sentinel index 0 is the shared all-zero subtree.
const NIL: u32 = 0;

#[derive(Debug, Clone)]
pub struct VersionedTree {
    n: usize,
    nodes: Vec<Node>,
    roots: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PstError {
    InvalidSize,
    IndexError { index: usize, len: usize },
    VersionError { version: usize, versions: usize },
}

impl fmt::Display for PstError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PstError::InvalidSize => write!(f, "tree size must be at least 1"),
            PstError::IndexError { index, len } => {
                write!(f, "index {index} out of range 1..={len}")
            }
            PstError::VersionError { version, versions } => {
                write!(f, "version {version} out of range 0..={versions}")
            }
        }
    }
}

impl std::error::Error for PstError {}

impl VersionedTree {
    /// Tree over `n` leaves, indices `1..=n`, all zero at version 0.
    pub fn new(n: usize) -> Result<Self, PstError> {
        if n == 0 {
            return Err(PstError::InvalidSize);
        }
        Ok(VersionedTree {
            n,
            nodes: vec![Node {
                sum: 0,
                left: NIL,
                right: NIL,
            }],
            roots: vec![NIL],
        })
    }

    pub fn leaves(&self) -> usize {
        self.n
    }

    /// Number of ADD operations performed so far (= latest version id).
    pub fn versions(&self) -> usize {
        self.roots.len() - 1
    }

    /// Pool size excluding the shared zero node, exposed for the
    /// node-growth bound test.
    pub fn node_count(&self) -> usize {
        self.nodes.len() - 1
    }

    /// Increment every value in `i..=j`, creating a new version built on
    /// the latest one. Returns the new version id.
    pub fn add(&mut self, i: usize, j: usize) -> Result<usize, PstError> {
        if i == 0 || j > self.n || i > j {
            return Err(PstError::IndexError {
                index: if i == 0 { 0 } else { j },
                len: self.n,
            });
        }
        let mut root = self.mark(*self.roots.last().unwrap(), 1, self.n, i, 1);
        if j + 1 <= self.n {
            root = self.mark(root, 1, self.n, j + 1, -1);
        }
        self.roots.push(root);
        Ok(self.roots.len() - 1)
    }

    /// Clone the path to leaf `idx` and add `delta` to every subtree sum
    /// on it.
    fn mark(&mut self, node: u32, lo: usize, hi: usize, idx: usize, delta: i64) -> u32 {
        let mut fresh = self.nodes[node as usize];
        fresh.sum += delta;
        let new_idx = self.nodes.len() as u32;
        self.nodes.push(fresh);
        if lo < hi {
            let mid = lo + (hi - lo) / 2;
            if idx <= mid {
                let l = self.mark(fresh.left, lo, mid, idx, delta);
                self.nodes[new_idx as usize].left = l;
            } else {
                let r = self.mark(fresh.right, mid + 1, hi, idx, delta);
                self.nodes[new_idx as usize].right = r;
            }
        }
        new_idx
    }

    /// Value of `A[i]` after the first `t` ADD operations.
    pub fn query(&self, i: usize, t: usize) -> Result<i64, PstError> {
        if i == 0 || i > self.n {
            return Err(PstError::IndexError {
                index: i,
                len: self.n,
            });
        }
        if t >= self.roots.len() {
            return Err(PstError::VersionError {
                version: t,
                versions: self.roots.len() - 1,
            });
        }
        // Prefix sum of marks over leaves 1..=i.
        let mut node = self.roots[t];
        let (mut lo, mut hi) = (1usize, self.n);
        let mut sum = 0i64;
        while node != NIL && lo < hi {
            let mid = lo + (hi - lo) / 2;
            if i <= mid {
                node = self.nodes[node as usize].left;
                hi = mid;
            } else {
                sum += self.nodes[self.nodes[node as usize].left as usize].sum;
                node = self.nodes[node as usize].right;
                lo = mid + 1;
            }
        }
        sum += self.nodes[node as usize].sum;
        Ok(sum)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_version() {
        let t = VersionedTree::new(3).unwrap();
        assert_eq!(t.query(2, 0).unwrap(), 0);
        let t1 = VersionedTree::new(1).unwrap();
        assert_eq!(t1.query(1, 0).unwrap(), 0);
    }

    #[test]
    fn invalid_size() {
        assert_eq!(VersionedTree::new(0).unwrap_err(), PstError::InvalidSize);
    }

    #[test]
    fn versions_accumulate_and_persist() {
        let mut t = VersionedTree::new(3).unwrap();
        assert_eq!(t.add(1, 2).unwrap(), 1);
        assert_eq!(t.query(2, 1).unwrap(), 1);
        assert_eq!(t.query(3, 1).unwrap(), 0);
        assert_eq!(t.add(2, 3).unwrap(), 2);
        assert_eq!(t.query(2, 2).unwrap(), 2);
        assert_eq!(t.query(1, 2).unwrap(), 1);
        assert_eq!(t.query(3, 2).unwrap(), 1);
        assert_eq!(t.query(1, 0).unwrap(), 0);
        assert_eq!(t.query(2, 0).unwrap(), 0);
    }

    #[test]
    fn full_range_adds() {
        let mut t = VersionedTree::new(4).unwrap();
        t.add(1, 4).unwrap();
        t.add(1, 4).unwrap();
        assert_eq!(t.query(3, 2).unwrap(), 2);
    }

    #[test]
    fn errors() {
        let mut t = VersionedTree::new(4).unwrap();
        assert!(matches!(t.add(0, 2), Err(PstError::IndexError { .. })));
        assert!(matches!(t.add(2, 5), Err(PstError::IndexError { .. })));
        assert!(matches!(t.query(5, 0), Err(PstError::IndexError { .. })));
        assert!(matches!(t.query(1, 1), Err(PstError::VersionError { .. })));
    }

    #[test]
    fn node_growth_bound() {
        for n in [1usize, 2, 3, 7, 8, 37, 64, 100] {
            let bound = 2 * ((n as f64).log2().ceil() as usize + 1);
            let mut t = VersionedTree::new(n).unwrap();
            let mut prev = t.node_count();
            for (i, j) in [(1, n), (1, 1), (n, n), (1 + n / 3, n - n / 4)] {
                if i > j {
                    continue;
                }
                t.add(i, j).unwrap();
                let grown = t.node_count() - prev;
                assert!(grown <= bound, "n={n}: grew {grown} nodes, bound {bound}");
                prev = t.node_count();
            }
        }
    }
}
