//! Addressable max-priority queues with keys capped at a bound.

use crate::Weight;

/// Queue discipline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QueueKind {
    /// Bucket array, LIFO inside the top bucket.
    BucketStack,
    /// Bucket array, FIFO inside the top bucket.
    BucketQueue,
    /// Addressable binary heap.
    Heap,
}

/// Bucket arrays above this many slots fall back to the heap.
pub const MAX_BUCKET_SLOTS: u64 = 1 << 26;

const NIL: usize = usize::MAX;

#[derive(Debug, Clone)]
struct Buckets {
    lifo: bool,
    head: Vec<usize>,
    tail: Vec<usize>,
    prev: Vec<usize>,
    next: Vec<usize>,
    top: usize,
}

impl Buckets {
    fn new(n: usize, slots: usize, lifo: bool) -> Self {
        Buckets {
            lifo,
            head: vec![NIL; slots],
            tail: vec![NIL; slots],
            prev: vec![NIL; n],
            next: vec![NIL; n],
            top: 0,
        }
    }

    fn link(&mut self, v: usize, b: usize) {
        self.prev[v] = self.tail[b];
        self.next[v] = NIL;
        if self.tail[b] == NIL {
            self.head[b] = v;
        } else {
            self.next[self.tail[b]] = v;
        }
        self.tail[b] = v;
        self.top = self.top.max(b);
    }

    fn unlink(&mut self, v: usize, b: usize) {
        let (p, nx) = (self.prev[v], self.next[v]);
        if p == NIL {
            self.head[b] = nx;
        } else {
            self.next[p] = nx;
        }
        if nx == NIL {
            self.tail[b] = p;
        } else {
            self.prev[nx] = p;
        }
    }

    fn pop(&mut self) -> Option<(usize, usize)> {
        loop {
            if self.head[self.top] != NIL {
                break;
            }
            if self.top == 0 {
                return None;
            }
            self.top -= 1;
        }
        let b = self.top;
        let v = if self.lifo { self.tail[b] } else { self.head[b] };
        self.unlink(v, b);
        Some((v, b))
    }
}

#[derive(Debug, Clone)]
struct Heap {
    heap: Vec<usize>,
    pos: Vec<usize>,
}

impl Heap {
    fn new(n: usize) -> Self {
        Heap { heap: Vec::new(), pos: vec![NIL; n] }
    }

    fn swap(&mut self, i: usize, j: usize) {
        self.heap.swap(i, j);
        self.pos[self.heap[i]] = i;
        self.pos[self.heap[j]] = j;
    }

    fn sift_up(&mut self, mut i: usize, key: &[Weight]) {
        while i > 0 {
            let parent = (i - 1) / 2;
            if key[self.heap[parent]] >= key[self.heap[i]] {
                break;
            }
            self.swap(i, parent);
            i = parent;
        }
    }

    fn sift_down(&mut self, mut i: usize, key: &[Weight]) {
        loop {
            let (l, r) = (2 * i + 1, 2 * i + 2);
            let mut best = i;
            if l < self.heap.len() && key[self.heap[l]] > key[self.heap[best]] {
                best = l;
            }
            if r < self.heap.len() && key[self.heap[r]] > key[self.heap[best]] {
                best = r;
            }
            if best == i {
                return;
            }
            self.swap(i, best);
            i = best;
        }
    }
}

#[derive(Debug, Clone)]
enum Store {
    Buckets(Buckets),
    Heap(Heap),
}

/// Max-priority queue over vertex ids `0..n` whose keys never exceed `bound`.
#[derive(Debug, Clone)]
pub struct BoundedPQ {
    store: Store,
    key: Vec<Weight>,
    queued: Vec<bool>,
    len: usize,
    bound: Weight,
}

impl BoundedPQ {
    pub fn new(n: usize, bound: Weight, kind: QueueKind) -> Self {
        let slots = bound.saturating_add(1);
        let store = match kind {
            QueueKind::BucketStack | QueueKind::BucketQueue if slots <= MAX_BUCKET_SLOTS => {
                Store::Buckets(Buckets::new(n, slots as usize, kind == QueueKind::BucketStack))
            }
            _ => Store::Heap(Heap::new(n)),
        };
        BoundedPQ {
            store,
            key: vec![0; n],
            queued: vec![false; n],
            len: 0,
            bound,
        }
    }

    /// The discipline in effect after the bucket-size fallback.
    pub fn kind(&self) -> QueueKind {
        match &self.store {
            Store::Buckets(b) if b.lifo => QueueKind::BucketStack,
            Store::Buckets(_) => QueueKind::BucketQueue,
            Store::Heap(_) => QueueKind::Heap,
        }
    }

    pub fn bound(&self) -> Weight {
        self.bound
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn contains(&self, v: usize) -> bool {
        self.queued[v]
    }

    /// Stored key of a queued vertex.
    pub fn key(&self, v: usize) -> Option<Weight> {
        self.queued[v].then_some(self.key[v])
    }

    /// Inserts `v` or raises its key; keys are capped at the bound and never
    /// lowered.
    pub fn push(&mut self, v: usize, key: Weight) {
        let key = key.min(self.bound);
        if self.queued[v] {
            if key <= self.key[v] {
                return;
            }
            let old = self.key[v];
            self.key[v] = key;
            match &mut self.store {
                Store::Buckets(b) => {
                    b.unlink(v, old as usize);
                    b.link(v, key as usize);
                }
                Store::Heap(h) => h.sift_up(h.pos[v], &self.key),
            }
            return;
        }
        self.queued[v] = true;
        self.key[v] = key;
        self.len += 1;
        match &mut self.store {
            Store::Buckets(b) => b.link(v, key as usize),
            Store::Heap(h) => {
                h.pos[v] = h.heap.len();
                h.heap.push(v);
                h.sift_up(h.heap.len() - 1, &self.key);
            }
        }
    }

    /// Removes a vertex of maximal key.
    pub fn pop_max(&mut self) -> Option<(usize, Weight)> {
        let v = match &mut self.store {
            Store::Buckets(b) => b.pop()?.0,
            Store::Heap(h) => {
                let v = *h.heap.first()?;
                let last = h.heap.len() - 1;
                h.swap(0, last);
                h.heap.pop();
                h.pos[v] = NIL;
                if !h.heap.is_empty() {
                    h.sift_down(0, &self.key);
                }
                v
            }
        };
        self.queued[v] = false;
        self.len -= 1;
        Some((v, self.key[v]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const KINDS: [QueueKind; 3] = [QueueKind::BucketStack, QueueKind::BucketQueue, QueueKind::Heap];

    #[test]
    fn keys_are_capped() {
        for kind in KINDS {
            let mut q = BoundedPQ::new(4, 5, kind);
            q.push(0, 9);
            assert_eq!(q.key(0), Some(5));
            q.push(1, 3);
            q.push(1, 2);
            assert_eq!(q.key(1), Some(3));
        }
    }

    #[test]
    fn pops_in_key_order() {
        for kind in KINDS {
            let mut q = BoundedPQ::new(5, 10, kind);
            for (v, k) in [(0, 3), (1, 7), (2, 1), (3, 7), (4, 5)] {
                q.push(v, k);
            }
            q.push(2, 9);
            let keys: Vec<Weight> = std::iter::from_fn(|| q.pop_max().map(|(_, k)| k)).collect();
            assert_eq!(keys, vec![9, 7, 7, 5, 3]);
            assert!(q.is_empty());
        }
    }

    #[test]
    fn lifo_and_fifo_differ_only_in_ties() {
        let mut stack = BoundedPQ::new(3, 4, QueueKind::BucketStack);
        let mut queue = BoundedPQ::new(3, 4, QueueKind::BucketQueue);
        for v in 0..3 {
            stack.push(v, 2);
            queue.push(v, 2);
        }
        assert_eq!(stack.pop_max(), Some((2, 2)));
        assert_eq!(queue.pop_max(), Some((0, 2)));
    }

    #[test]
    fn huge_bounds_fall_back_to_heap() {
        let q = BoundedPQ::new(3, MAX_BUCKET_SLOTS, QueueKind::BucketStack);
        assert_eq!(q.kind(), QueueKind::Heap);
        let q = BoundedPQ::new(3, 100, QueueKind::BucketQueue);
        assert_eq!(q.kind(), QueueKind::BucketQueue);
    }
}
