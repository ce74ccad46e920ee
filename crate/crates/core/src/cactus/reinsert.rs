//! Vertices removed by low-degree reductions and their reinsertion.

use crate::cactus::graph::CactusGraph;
use crate::error::{Error, Result};
use crate::Weight;

/// One removed vertex group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reinsertion {
    /// `members` formed a vertex whose only edge, of weight `weight`, led
    /// to the group holding `anchor`. Reinserted as a leaf when `weight`
    /// equals the final minimum cut.
    Leaf {
        members: Vec<usize>,
        anchor: usize,
        weight: Weight,
    },
    /// `members` formed a vertex with two equal edges towards the groups
    /// holding `a` and `b`, together exactly the minimum cut.
    Cycle { members: Vec<usize>, a: usize, b: usize },
}

/// Reductions in the order they were applied.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ReinsertionLog {
    entries: Vec<Reinsertion>,
}

impl ReinsertionLog {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, entry: Reinsertion) {
        self.entries.push(entry);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[Reinsertion] {
        &self.entries
    }

    /// Undoes the reductions in reverse order on a cactus whose contents
    /// already use the ids the log refers to. Returns `Ok(false)` when a
    /// cycle entry finds its anchors on non-adjacent nodes.
    pub fn replay(&self, cactus: &mut CactusGraph, lambda: Weight) -> Result<bool> {
        let mut node_of = cactus.node_of();
        let lookup = |node_of: &[usize], v: usize| -> Result<usize> {
            match node_of.get(v) {
                Some(&x) if x != usize::MAX => Ok(x),
                _ => Err(Error::invariant(format!("reinsertion anchor {v} is not in the cactus"))),
            }
        };
        for entry in self.entries.iter().rev() {
            match entry {
                Reinsertion::Leaf { members, anchor, weight } => {
                    if *weight != lambda {
                        continue;
                    }
                    let x = lookup(&node_of, *anchor)?;
                    cactus.take_vertices(x, members);
                    let y = cactus.attach_leaf(x, members.clone());
                    for &v in members {
                        node_of[v] = y;
                    }
                }
                Reinsertion::Cycle { members, a, b } => {
                    let xa = lookup(&node_of, *a)?;
                    let xb = lookup(&node_of, *b)?;
                    cactus.take_vertices(xa, members);
                    let y = if xa == xb {
                        cactus.attach_leaf(xa, members.clone())
                    } else {
                        match cactus.insert_between(xa, xb, members.clone()) {
                            Ok(y) => y,
                            Err(_) => return Ok(false),
                        }
                    };
                    for &v in members {
                        node_of[v] = y;
                    }
                }
            }
        }
        Ok(true)
    }
}
