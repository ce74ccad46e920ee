//! Disjoint-set structures used to mark contractible edge sets.

use std::sync::atomic::{AtomicUsize, Ordering};

/// Union by rank with path halving.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
    size: Vec<usize>,
    blocks: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
            rank: vec![0; n],
            size: vec![1; n],
            blocks: n,
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    /// Number of disjoint blocks.
    pub fn blocks(&self) -> usize {
        self.blocks
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            let grand = self.parent[self.parent[x]];
            self.parent[x] = grand;
            x = grand;
        }
        x
    }

    /// Root lookup without path compression.
    pub fn find_const(&self, mut x: usize) -> usize {
        while self.parent[x] != x {
            x = self.parent[x];
        }
        x
    }

    /// Merges the blocks of `a` and `b`. Returns false when they already coincide.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let ra = self.find(a);
        let rb = self.find(b);
        if ra == rb {
            return false;
        }
        let (hi, lo) = if self.rank[ra] >= self.rank[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[lo] = hi;
        self.size[hi] += self.size[lo];
        if self.rank[hi] == self.rank[lo] {
            self.rank[hi] += 1;
        }
        self.blocks -= 1;
        true
    }

    /// Number of elements in the block of `x`.
    pub fn block_size(&mut self, x: usize) -> usize {
        let r = self.find(x);
        self.size[r]
    }

    pub fn same(&mut self, a: usize, b: usize) -> bool {
        self.find(a) == self.find(b)
    }

    /// Dense block labels in order of first appearance by vertex id.
    pub fn block_labels(&mut self) -> (Vec<usize>, usize) {
        let n = self.len();
        let mut label_of_root = vec![usize::MAX; n];
        let mut labels = vec![0; n];
        let mut next = 0;
        for v in 0..n {
            let r = self.find(v);
            if label_of_root[r] == usize::MAX {
                label_of_root[r] = next;
                next += 1;
            }
            labels[v] = label_of_root[r];
        }
        (labels, next)
    }
}

/// Lock-free union-find whose unions are linearizable.
///
/// Roots are linked by compare-and-swap, always hanging the larger index
/// below the smaller one, so concurrent unions cannot form cycles.
#[derive(Debug)]
pub struct ConcurrentUnionFind {
    parent: Vec<AtomicUsize>,
}

impl ConcurrentUnionFind {
    pub fn new(n: usize) -> Self {
        ConcurrentUnionFind {
            parent: (0..n).map(AtomicUsize::new).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.parent.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parent.is_empty()
    }

    pub fn find(&self, mut x: usize) -> usize {
        loop {
            let p = self.parent[x].load(Ordering::Acquire);
            if p == x {
                return x;
            }
            let gp = self.parent[p].load(Ordering::Acquire);
            if gp != p {
                // Path halving; a failed exchange only means someone else helped.
                let _ = self.parent[x].compare_exchange(p, gp, Ordering::AcqRel, Ordering::Acquire);
            }
            x = gp;
        }
    }

    pub fn union(&self, a: usize, b: usize) -> bool {
        loop {
            let ra = self.find(a);
            let rb = self.find(b);
            if ra == rb {
                return false;
            }
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            if self.parent[hi]
                .compare_exchange(hi, lo, Ordering::AcqRel, Ordering::Acquire)
                .is_ok()
            {
                return true;
            }
        }
    }

    /// Snapshot into a sequential structure with the same partition.
    pub fn to_union_find(&self) -> UnionFind {
        let mut uf = UnionFind::new(self.len());
        for v in 0..self.len() {
            uf.union(v, self.find(v));
        }
        uf
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn union_counts_blocks() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(0, 1));
        assert!(uf.union(3, 4));
        assert!(!uf.union(1, 0));
        assert_eq!(uf.blocks(), 3);
        assert!(uf.same(3, 4));
        assert!(!uf.same(2, 4));
    }

    #[test]
    fn find_is_idempotent() {
        let mut uf = UnionFind::new(6);
        uf.union(0, 5);
        uf.union(5, 2);
        let r = uf.find(2);
        assert_eq!(uf.find(r), r);
    }

    #[test]
    fn labels_follow_first_appearance() {
        let mut uf = UnionFind::new(4);
        uf.union(1, 3);
        let (labels, k) = uf.block_labels();
        assert_eq!(k, 3);
        assert_eq!(labels, vec![0, 1, 2, 1]);
    }

    #[test]
    fn concurrent_unions_agree_with_sequential() {
        let cuf = ConcurrentUnionFind::new(64);
        std::thread::scope(|s| {
            for t in 0..4 {
                let cuf = &cuf;
                s.spawn(move || {
                    for i in (t..63).step_by(4) {
                        cuf.union(i, i + 1);
                    }
                });
            }
        });
        let uf = cuf.to_union_find();
        assert_eq!(uf.blocks(), 1);
    }
}
