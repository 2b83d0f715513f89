#![allow(dead_code)]

use dlknot::diagram::WindingParity;
use dlknot::moves::Move;
use dlknot::DlDiagram;

/// Checks the parity law attached to one move application. Returns a
/// description of the violation, if any.
pub fn parity_law(before: &DlDiagram, m: &Move, after: &DlDiagram) -> Option<String> {
    if before.degree() != after.degree() {
        return Some(format!("degree {} -> {}", before.degree(), after.degree()));
    }
    let deg = after.degree();
    let red = |v: i64| WindingParity::reduce(v, deg).value;
    let raw = |d: &DlDiagram, c: u32| d.raw_parity(c).unwrap();
    let new_ids = || after.crossings().into_iter().filter(|&c| before.crossing_sign(c).is_none());
    match m {
        Move::R1Add { .. } => {
            for c in new_ids() {
                if red(raw(after, c)) != 0 {
                    return Some(format!("R1 crossing {c} has parity {}", raw(after, c)));
                }
            }
        }
        Move::R2Add { .. } => {
            let ids: Vec<u32> = new_ids().collect();
            if ids.len() != 2 || red(raw(after, ids[0])) != red(raw(after, ids[1])) {
                return Some(format!("R2 pair {ids:?} parities differ"));
            }
        }
        Move::R3 { .. } => {
            let (a, b, c) = m.r3_crossings(before).unwrap();
            for d in [before, after] {
                if red(raw(d, a) + raw(d, c) - raw(d, b)) != 0 {
                    return Some(format!("R3 triple ({a},{b},{c}) breaks i+j-k=0 in {d}"));
                }
            }
        }
        Move::CrossingChange { crossing, variant } if deg == 0 => {
            let (i, j) = (raw(before, *crossing), raw(after, *crossing));
            if j != -i - 1 {
                return Some(format!("CrossingChange({variant:?}) maps {i} to {j}"));
            }
        }
        _ => {}
    }
    None
}

/// For every move except crossing changes and double-line slides, each
/// crossing present before and after keeps its parity.
pub fn surviving_parities(before: &DlDiagram, m: &Move, after: &DlDiagram) -> Option<String> {
    if matches!(m, Move::CrossingChange { .. } | Move::DlSlide4 { .. }) {
        return None;
    }
    for (c, p) in before.parities() {
        if let Ok(q) = after.winding_parity(c) {
            if p != q {
                return Some(format!("{m} moves parity of crossing {c}: {p} -> {q}"));
            }
        }
    }
    None
}
