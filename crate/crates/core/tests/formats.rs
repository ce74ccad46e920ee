//! File formats through the filesystem.

mod common;

use tempfile::TempDir;

use mincut_core::dynamic::{load_stream, parse_stream, replay_stream, Event};
use mincut_core::graph::{load_metis, parse_metis, save_metis};
use mincut_core::{find_all_mincuts, AllCutsOptions, CactusGraph, DynamicOptions, DynamicState, Error, StaticGraph};

#[test]
fn metis_save_then_load() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("g.graph");
    let g = StaticGraph::from_edges(5, [(0, 1, 3), (1, 2, 1), (2, 3, 7), (3, 4, 2), (4, 0, 5), (0, 2, 1)]).unwrap();
    save_metis(&g, &path).unwrap();
    let back = load_metis(&path).unwrap();
    assert_eq!(back.edges().collect::<Vec<_>>(), g.edges().collect::<Vec<_>>());
}

#[test]
fn metis_unit_weights_omit_the_format_code() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("c5.graph");
    save_metis(&common::cycle(5), &path).unwrap();
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.starts_with("5 5\n"));
    assert_eq!(parse_metis(&text).unwrap().m(), 5);
}

#[test]
fn metis_errors_carry_their_kind() {
    let dir = TempDir::new().unwrap();
    assert!(matches!(load_metis(dir.path().join("absent")), Err(Error::Io { .. })));
    assert!(matches!(parse_metis("2 1\n2\n\n"), Err(Error::Parse { .. })));
    assert!(matches!(parse_metis("2 1\n3\n1\n"), Err(Error::Parse { .. })));
    assert!(matches!(parse_metis("x\n"), Err(Error::Parse { .. })));
}

#[test]
fn metis_comments_and_isolated_vertices() {
    let g = parse_metis("% header comment\n3 1\n2\n1\n\n").unwrap();
    assert_eq!((g.n(), g.m()), (3, 1));
    assert_eq!(g.weighted_degree(2), 0);
}

#[test]
fn cactus_text_is_exact() {
    // Triangle 0-1-2 with a pendant 3 hanging off 2 by a double edge: lambda 2,
    // a cycle of three nodes plus one tree edge.
    let g = StaticGraph::from_edges(4, [(0, 1, 1), (1, 2, 1), (2, 0, 1), (2, 3, 2)]).unwrap();
    let (lambda, cactus) = find_all_mincuts(&g, &AllCutsOptions::default()).unwrap();
    assert_eq!(lambda, 2);
    let text = cactus.to_text();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], format!("c {} {} 2", cactus.n_star(), cactus.m_star()));
    assert_eq!(lines.iter().filter(|l| l.ends_with(" 2/2")).count(), 3);
    assert_eq!(lines.iter().filter(|l| l.ends_with(" 2/1")).count(), 1);
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("t.cactus");
    std::fs::write(&path, &text).unwrap();
    let back = CactusGraph::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(back.canonical_cuts(), cactus.canonical_cuts());
}

#[test]
fn cactus_parse_rejects_bad_denominators() {
    assert!(CactusGraph::parse("c 2 1 2\nv 0 0\nv 1 1\ne 0 1 2/3\n").is_err());
    assert!(CactusGraph::parse("c 2 1 2\nv 0 0\nv 1 1\ne 0 1 2/1\n").is_ok());
}

#[test]
fn stream_file_replays() {
    let dir = TempDir::new().unwrap();
    let path = dir.path().join("s.txt");
    std::fs::write(&path, "# four-cycle then a chord\np 4\na 0 1 1 10\na 1 2 1 10\na 2 3 1 11\na 3 0 1 12\na 0 2 3 13\nd 0 1 14\n").unwrap();
    let stream = load_stream(&path).unwrap();
    assert_eq!(stream.batches.len(), 5);
    assert_eq!(stream.batches[0].events, vec![Event::Insert { u: 0, v: 1, w: 1 }, Event::Insert { u: 1, v: 2, w: 1 }]);
    let mut st = DynamicState::new(&StaticGraph::empty(4), DynamicOptions::default()).unwrap();
    let trace = replay_stream(&mut st, &stream, true).unwrap();
    assert_eq!(trace, vec![(10, 0), (11, 1), (12, 2), (13, 2), (14, 1)]);
}

#[test]
fn stream_vertex_count_must_match_the_graph() {
    let stream = parse_stream("p 3\na 0 1 1\n").unwrap();
    let mut st = DynamicState::new(&StaticGraph::empty(4), DynamicOptions::default()).unwrap();
    assert!(matches!(replay_stream(&mut st, &stream, false), Err(Error::Usage(_))));
}
