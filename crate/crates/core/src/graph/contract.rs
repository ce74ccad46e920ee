use crate::graph::StaticGraph;
use crate::union_find::UnionFind;
use crate::Weight;

/// Contracts every block of `uf` into one vertex.
///
/// Returns the contracted graph and the block id of every input vertex.
/// Block ids follow the first appearance of each block by vertex id.
pub fn bulk_contract(g: &StaticGraph, uf: &mut UnionFind) -> (StaticGraph, Vec<usize>) {
    let (labels, k) = uf.block_labels();
    let h = contract_by_labels(g, &labels, k);
    (h, labels)
}

/// Contracts vertices sharing a label. Labels must lie in `0..k` and every
/// label must be used.
pub fn contract_by_labels(g: &StaticGraph, labels: &[usize], k: usize) -> StaticGraph {
    let mut start = vec![0usize; k + 1];
    for &b in labels {
        start[b + 1] += 1;
    }
    for b in 0..k {
        start[b + 1] += start[b];
    }
    let mut fill = start.clone();
    let mut members = vec![0usize; labels.len()];
    for (v, &b) in labels.iter().enumerate() {
        members[fill[b]] = v;
        fill[b] += 1;
    }

    let mut acc = vec![0 as Weight; k];
    let mut touched = Vec::new();
    let mut offsets = Vec::with_capacity(k + 1);
    let mut targets = Vec::new();
    let mut weights = Vec::new();
    offsets.push(0);
    for b in 0..k {
        for &v in &members[start[b]..start[b + 1]] {
            for (t, w) in g.neighbors(v) {
                let tb = labels[t];
                if tb == b {
                    continue;
                }
                if acc[tb] == 0 {
                    touched.push(tb);
                }
                acc[tb] += w;
            }
        }
        touched.sort_unstable();
        for &tb in &touched {
            targets.push(tb);
            weights.push(acc[tb]);
            acc[tb] = 0;
        }
        touched.clear();
        offsets.push(targets.len());
    }
    StaticGraph::from_csr(offsets, targets, weights).expect("contraction preserves the weight budget")
}
