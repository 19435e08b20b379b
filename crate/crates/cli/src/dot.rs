//! Graphviz export of Hasse diagrams.
//!
//! Edges point upward (`rankdir=BT`). Base points sharing a level are put on
//! one rank and the basepoint `*` on the top rank; other points are placed
//! by the layout engine.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use finspace::poset::PointLabel;
use finspace::FinitePoset;

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Deterministic DOT text for the Hasse diagram of `p`.
pub fn export_dot(p: &FinitePoset) -> String {
    let mut out = String::new();
    out.push_str("digraph hasse {\n");
    out.push_str("  rankdir=BT;\n");
    out.push_str("  node [shape=circle, fontsize=10];\n");
    let mut levels: BTreeMap<i32, Vec<usize>> = BTreeMap::new();
    let mut stars = Vec::new();
    for (x, l) in p.labels().iter().enumerate() {
        let _ = writeln!(out, "  n{} [label={}];", x, quote(&l.to_string()));
        match l {
            PointLabel::Base(b) => levels.entry(b.level).or_default().push(x),
            PointLabel::Star => stars.push(x),
            _ => {}
        }
    }
    for (level, pts) in &levels {
        let names: Vec<String> = pts.iter().map(|x| format!("n{}", x)).collect();
        let _ = writeln!(out, "  {{ rank=same; /* level {} */ {}; }}", level, names.join("; "));
    }
    if !stars.is_empty() {
        let names: Vec<String> = stars.iter().map(|x| format!("n{}", x)).collect();
        let _ = writeln!(out, "  {{ rank=max; {}; }}", names.join("; "));
    }
    for &(a, b) in p.hasse_edges() {
        let _ = writeln!(out, "  n{} -> n{};", a, b);
    }
    out.push_str("}\n");
    out
}
