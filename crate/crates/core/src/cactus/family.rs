//! Cactus construction from an explicit, complete family of minimum cuts.
//!
//! Cuts that cross some other cut group into crossing classes, one per
//! cycle of length at least four. The remaining cuts and the cycle blocks
//! below each cycle's top form a laminar family whose containment tree is
//! the rooted cactus. Triangles come out as empty three-stars and are
//! turned into cycles by normalization.

use std::collections::{HashMap, HashSet};

use crate::cactus::graph::CactusGraph;
use crate::error::{Error, Result};
use crate::union_find::UnionFind;
use crate::Weight;

type Bits = Vec<u64>;

fn pack(side: &[bool]) -> Bits {
    let mut bits = vec![0u64; side.len().div_ceil(64)];
    for (v, _) in side.iter().enumerate().filter(|(_, &b)| b) {
        bits[v / 64] |= 1 << (v % 64);
    }
    bits
}

fn has(bits: &Bits, v: usize) -> bool {
    bits[v / 64] >> (v % 64) & 1 == 1
}

fn crossing(a: &Bits, b: &Bits) -> bool {
    let (mut meet, mut a_only, mut b_only) = (false, false, false);
    for (&x, &y) in a.iter().zip(b) {
        meet |= x & y != 0;
        a_only |= x & !y != 0;
        b_only |= y & !x != 0;
    }
    meet && a_only && b_only
}

fn union(a: &mut Bits, b: &Bits) {
    for (x, &y) in a.iter_mut().zip(b) {
        *x |= y;
    }
}

enum SetKind {
    Tree,
    Block { cycle: usize, pos: usize },
}

/// Builds the cactus of a family that contains every minimum cut of some
/// graph on `n` vertices. Sides may be given in either orientation.
pub fn cactus_from_family(n: usize, cuts: &[Vec<bool>], lambda: Weight) -> Result<CactusGraph> {
    if n == 0 {
        return Err(Error::invariant("cannot build a cactus without vertices"));
    }
    let mut seen = HashSet::new();
    let mut family: Vec<Bits> = Vec::new();
    for side in cuts {
        let flip = side[0];
        let canon: Vec<bool> = side.iter().map(|&b| b != flip).collect();
        if canon.iter().any(|&b| b) && seen.insert(canon.clone()) {
            family.push(pack(&canon));
        }
    }
    let f = family.len();
    let mut classes = UnionFind::new(f);
    for i in 0..f {
        for j in i + 1..f {
            if crossing(&family[i], &family[j]) {
                classes.union(i, j);
            }
        }
    }
    let (class_of, class_count) = classes.block_labels();
    let mut members = vec![Vec::new(); class_count];
    for (i, &c) in class_of.iter().enumerate() {
        members[c].push(i);
    }

    let mut covered: HashSet<Bits> = HashSet::new();
    let mut laminar: Vec<(Bits, SetKind)> = Vec::new();
    let mut cycle_count = 0;
    for class in members.iter().filter(|m| m.len() >= 2) {
        let blocks = cycle_blocks(n, &family, class)?;
        for i in 1..blocks.len() {
            let mut acc = blocks[i].clone();
            covered.insert(acc.clone());
            for block in &blocks[i + 1..] {
                union(&mut acc, block);
                covered.insert(acc.clone());
            }
        }
        for (pos, block) in blocks.into_iter().enumerate().skip(1) {
            laminar.push((block, SetKind::Block { cycle: cycle_count, pos }));
        }
        cycle_count += 1;
    }
    for class in members.iter().filter(|m| m.len() == 1) {
        let set = &family[class[0]];
        if !covered.contains(set) {
            laminar.push((set.clone(), SetKind::Tree));
        }
    }

    let size = |b: &Bits| b.iter().map(|w| w.count_ones() as usize).sum::<usize>();
    laminar.sort_by_key(|(b, _)| size(b));
    let mut chains: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut rep_index = Vec::with_capacity(laminar.len());
    for (i, (set, _)) in laminar.iter().enumerate() {
        let mut first = None;
        for v in (0..n).filter(|&v| has(set, v)) {
            if first.is_none() {
                first = Some((v, chains[v].len()));
            }
            chains[v].push(i);
        }
        rep_index.push(first.expect("sets are nonempty"));
    }
    // Node 0 is the root; laminar set i becomes node i + 1.
    let parent_node = |i: usize| -> usize {
        let (v, idx) = rep_index[i];
        chains[v].get(idx + 1).map_or(0, |&p| p + 1)
    };
    let mut nodes = vec![Vec::new(); laminar.len() + 1];
    for (v, chain) in chains.iter().enumerate() {
        nodes[chain.first().map_or(0, |&s| s + 1)].push(v);
    }
    let mut tree = Vec::new();
    let mut tops: Vec<Option<usize>> = vec![None; cycle_count];
    let mut placed: Vec<Vec<(usize, usize)>> = vec![Vec::new(); cycle_count];
    for (i, (_, kind)) in laminar.iter().enumerate() {
        match *kind {
            SetKind::Tree => tree.push((i + 1, parent_node(i))),
            SetKind::Block { cycle, pos } => {
                let top = *tops[cycle].get_or_insert(parent_node(i));
                if top != parent_node(i) {
                    return Err(Error::invariant("blocks of one cycle hang below different nodes"));
                }
                placed[cycle].push((pos, i + 1));
            }
        }
    }
    let cycles: Vec<Vec<usize>> = placed
        .into_iter()
        .zip(tops)
        .map(|(mut list, top)| {
            list.sort_unstable();
            std::iter::once(top.unwrap_or(0)).chain(list.into_iter().map(|(_, node)| node)).collect()
        })
        .collect();
    let mut cactus = CactusGraph::raw(nodes, tree, cycles, lambda, n);
    cactus.normalize();
    cactus.validate()?;
    Ok(cactus)
}

/// Blocks of a crossing class in cyclic order, starting with the block
/// holding vertex 0.
fn cycle_blocks(n: usize, family: &[Bits], class: &[usize]) -> Result<Vec<Bits>> {
    let mut block_of_sig: HashMap<Vec<bool>, usize> = HashMap::new();
    let mut block_of = vec![0usize; n];
    for v in 0..n {
        let sig: Vec<bool> = class.iter().map(|&c| has(&family[c], v)).collect();
        let next = block_of_sig.len();
        block_of[v] = *block_of_sig.entry(sig).or_insert(next);
    }
    let r = block_of_sig.len();
    if r < 4 {
        return Err(Error::invariant("crossing cuts induce fewer than four blocks"));
    }
    let mut rep = vec![usize::MAX; r];
    for v in (0..n).rev() {
        rep[block_of[v]] = v;
    }
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); r];
    let link = |a: usize, b: usize, adj: &mut Vec<Vec<usize>>| {
        if !adj[a].contains(&b) {
            adj[a].push(b);
            adj[b].push(a);
        }
    };
    for &c in class {
        let inside: Vec<usize> = (0..r).filter(|&b| has(&family[c], rep[b])).collect();
        if inside.len() == 2 {
            link(inside[0], inside[1], &mut adj);
        }
        if inside.len() == r - 2 {
            let outside: Vec<usize> = (0..r).filter(|&b| !has(&family[c], rep[b])).collect();
            link(outside[0], outside[1], &mut adj);
        }
    }
    if adj.iter().any(|a| a.len() != 2) {
        return Err(Error::invariant("crossing cuts do not arrange into a cycle"));
    }
    let top = block_of[0];
    let mut order = vec![top];
    let mut prev = top;
    let mut cur = adj[top][0];
    while cur != top {
        order.push(cur);
        let next = if adj[cur][0] == prev { adj[cur][1] } else { adj[cur][0] };
        prev = cur;
        cur = next;
    }
    if order.len() != r {
        return Err(Error::invariant("crossing cuts form more than one cycle"));
    }
    let mut blocks = vec![vec![0u64; n.div_ceil(64)]; r];
    for v in 0..n {
        let b = block_of[v];
        blocks[b][v / 64] |= 1 << (v % 64);
    }
    let ordered: Vec<Bits> = order.into_iter().map(|b| blocks[b].clone()).collect();
    Ok(ordered)
}
