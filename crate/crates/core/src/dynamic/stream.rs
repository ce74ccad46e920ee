//! Update streams: a header `p <n>`, then `a u v w [ts]` insertions and
//! `d u v [ts]` deletions with 0-indexed vertices. Consecutive events with
//! the same timestamp form one batch; an event without a timestamp is a
//! batch of its own, numbered by its position in the stream.

use std::path::Path;

use log::warn;

use crate::dynamic::DynamicState;
use crate::error::{Error, Result};
use crate::noi::{exact_mincut, ExactOptions};
use crate::oracle::stoer_wagner;
use crate::{Weight, INFINITE_CUT};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Event {
    Insert { u: usize, v: usize, w: Weight },
    Delete { u: usize, v: usize },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Batch {
    pub ts: u64,
    pub events: Vec<Event>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stream {
    pub n: usize,
    pub batches: Vec<Batch>,
}

fn field<T: std::str::FromStr>(tokens: &[&str], i: usize, line: usize, what: &str) -> Result<T> {
    let token = tokens.get(i).ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
    token.parse().map_err(|_| Error::parse(line, format!("invalid {what} '{token}'")))
}

pub fn parse_stream(text: &str) -> Result<Stream> {
    let mut n = None;
    let mut batches: Vec<Batch> = Vec::new();
    let mut last_ts: Option<u64> = None;
    let mut count = 0u64;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let tokens: Vec<&str> = raw.split_whitespace().collect();
        let Some(&tag) = tokens.first() else { continue };
        if tag.starts_with('#') || tag.starts_with('%') || tag == "c" {
            continue;
        }
        if tag == "p" {
            if n.is_some() {
                return Err(Error::parse(line, "duplicate header"));
            }
            n = Some(field::<usize>(&tokens, 1, line, "vertex count")?);
            continue;
        }
        let n = n.ok_or_else(|| Error::parse(line, "event before the 'p <n>' header"))?;
        let (event, ts_at) = match tag {
            "a" => {
                let w: Weight = field(&tokens, 3, line, "weight")?;
                if w == 0 {
                    return Err(Error::parse(line, "zero weight"));
                }
                (Event::Insert { u: field(&tokens, 1, line, "vertex")?, v: field(&tokens, 2, line, "vertex")?, w }, 4)
            }
            "d" => (Event::Delete { u: field(&tokens, 1, line, "vertex")?, v: field(&tokens, 2, line, "vertex")? }, 3),
            other => return Err(Error::parse(line, format!("unknown event '{other}'"))),
        };
        if tokens.len() > ts_at + 1 {
            return Err(Error::parse(line, "trailing tokens"));
        }
        let (Event::Insert { u, v, .. } | Event::Delete { u, v }) = event;
        if u >= n || v >= n {
            return Err(Error::parse(line, format!("vertex outside 0..{n}")));
        }
        let ts = if tokens.len() > ts_at { Some(field::<u64>(&tokens, ts_at, line, "timestamp")?) } else { None };
        match ts {
            Some(t) if last_ts == Some(t) => batches.last_mut().expect("batch open").events.push(event),
            _ => batches.push(Batch { ts: ts.unwrap_or(count), events: vec![event] }),
        }
        last_ts = ts;
        count += 1;
    }
    let n = n.ok_or_else(|| Error::parse(1, "missing 'p <n>' header"))?;
    Ok(Stream { n, batches })
}

pub fn load_stream(path: &Path) -> Result<Stream> {
    let text = std::fs::read_to_string(path).map_err(|source| Error::Io { path: path.display().to_string(), source })?;
    parse_stream(&text)
}

/// Minimum cut recomputed from scratch, used to validate replays.
fn static_lambda(state: &DynamicState) -> Weight {
    let g = state.graph();
    match g.n() {
        0 | 1 => INFINITE_CUT,
        n if n <= 400 => stoer_wagner(&g),
        _ => exact_mincut(&g, &ExactOptions::default()).value,
    }
}

/// Applies every batch and returns `(ts, λ)` after each. Deleting an absent
/// edge and inserting a self-loop are skipped with a warning. With
/// `validate`, `λ` is checked against a static computation after every
/// batch.
pub fn replay_stream(state: &mut DynamicState, stream: &Stream, validate: bool) -> Result<Vec<(u64, Weight)>> {
    if stream.n != state.n() {
        return Err(Error::usage(format!("stream has {} vertices, graph has {}", stream.n, state.n())));
    }
    let mut trace = Vec::with_capacity(stream.batches.len());
    for batch in &stream.batches {
        for &event in &batch.events {
            match event {
                Event::Insert { u, v, .. } | Event::Delete { u, v } if u == v => {
                    warn!("ts {}: skipping self-loop at {u}", batch.ts);
                }
                Event::Insert { u, v, w } => {
                    state.insert_edge(u, v, w)?;
                }
                Event::Delete { u, v } => {
                    if state.graph.edge_weight(u, v) == 0 {
                        warn!("ts {}: skipping deletion of absent edge ({u}, {v})", batch.ts);
                        continue;
                    }
                    state.delete_edge(u, v)?;
                }
            }
        }
        if validate {
            let expected = static_lambda(state);
            if expected != state.lambda() {
                return Err(Error::Mismatch(format!(
                    "ts {}: dynamic minimum cut {} but static recomputation gives {expected}",
                    batch.ts,
                    state.lambda()
                )));
            }
        }
        trace.push((batch.ts, state.lambda()));
    }
    Ok(trace)
}
