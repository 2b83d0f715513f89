//! Bounded breadth-first search for a move sequence between two diagrams.

use std::collections::{HashMap, VecDeque};

use serde::Serialize;

use crate::diagram::DlDiagram;
use crate::moves::{enumerate_moves, Move, MoveKind, MoveTrace};
use crate::projection::essential_count;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchParams {
    pub max_moves: usize,
    pub max_len: usize,
    pub kinds: Vec<MoveKind>,
}

impl Default for SearchParams {
    fn default() -> SearchParams {
        SearchParams { max_moves: 8, max_len: 16, kinds: MoveKind::ALL.to_vec() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchResult {
    pub found: bool,
    pub trace: Option<MoveTrace>,
    pub explored: usize,
    pub params: SearchParams,
    /// Set when an invariant mismatch settled the question without search.
    pub mismatch: Option<String>,
}

struct Node {
    diagram: DlDiagram,
    parent: Option<(usize, Move)>,
    depth: usize,
}

fn path(nodes: &[Node], mut i: usize) -> Vec<Move> {
    let mut steps = Vec::new();
    while let Some((p, m)) = &nodes[i].parent {
        steps.push(*m);
        i = *p;
    }
    steps.reverse();
    steps
}

/// Searches up to `max_moves` moves, discarding diagrams longer than
/// `max_len` tokens. States are deduplicated on canonical form; each stored
/// state keeps the concrete diagram it was first reached as, so the trace
/// replays literally from `from`.
pub fn search(from: &DlDiagram, to: &DlDiagram, params: &SearchParams) -> SearchResult {
    let done =
        |found, trace, explored, mismatch| SearchResult { found, trace, explored, params: params.clone(), mismatch };
    if from.degree() != to.degree() {
        return done(false, None, 0, Some(format!("degree {} != {}", from.degree(), to.degree())));
    }
    if from.degree() == 0 {
        let (a, b) = (essential_count(from), essential_count(to));
        if a != b {
            return done(false, None, 0, Some(format!("essential count {a} != {b}")));
        }
    }
    let target = to.canonicalize();
    let mut nodes = vec![Node { diagram: from.clone(), parent: None, depth: 0 }];
    let mut seen: HashMap<DlDiagram, usize> = HashMap::from([(from.canonicalize(), 0)]);
    if seen.contains_key(&target) {
        return done(true, Some(MoveTrace::new(from.clone())), 1, None);
    }
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        if nodes[i].depth >= params.max_moves {
            continue;
        }
        let current = nodes[i].diagram.clone();
        for m in enumerate_moves(&current, &params.kinds) {
            let Ok(next) = m.apply(&current) else { continue };
            if next.len() > params.max_len {
                continue;
            }
            let key = next.canonicalize();
            if seen.contains_key(&key) {
                continue;
            }
            let j = nodes.len();
            let hit = key == target;
            seen.insert(key, j);
            nodes.push(Node { diagram: next, parent: Some((i, m)), depth: nodes[i].depth + 1 });
            if hit {
                let trace = MoveTrace { start: from.clone(), steps: path(&nodes, j) };
                return done(true, Some(trace), nodes.len(), None);
            }
            queue.push_back(j);
        }
    }
    done(false, None, nodes.len(), None)
}
