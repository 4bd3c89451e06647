//! Text, DOT, JSON and LaTeX output.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::exactmath::{ExactMatrix, LaurentPoly};
use crate::green::GreenNumbering;
use crate::quiver::{arrow_id, GradedQuiver, RelationSet};
use crate::tree::BrauerTree;

/// One line per edge: `index<TAB>edge-id<TAB>delta<TAB>predecessor`, with
/// `-` for a missing predecessor.
pub fn walk_table(tree: &BrauerTree, n: &GreenNumbering) -> String {
    let mut out = String::new();
    for i in 1..=n.edge_count() {
        let pred = n.predecessor(i).map_or("-".to_string(), |p| p.to_string());
        writeln!(
            out,
            "{i}\t{}\t{}\t{pred}",
            tree.edge_id(n.edge(i)),
            n.delta(i)
        )
        .unwrap();
    }
    out
}

fn vertex_label(tree: &BrauerTree, n: &GreenNumbering, v: usize) -> String {
    tree.edge_id(n.edge(v)).to_string()
}

/// Arrows in quiver order: `source-id -> target-id<TAB>degree`.
pub fn graded_quiver_text(tree: &BrauerTree, n: &GreenNumbering, gq: &GradedQuiver) -> String {
    let mut out = String::new();
    for a in 0..gq.quiver.arrows().len() {
        let mark = if gq.quiver.cycle(gq.quiver.arrow(a).cycle).exceptional {
            "\texceptional"
        } else {
            ""
        };
        writeln!(
            out,
            "{}\t{}{mark}",
            arrow_id(tree, n, &gq.quiver, a),
            gq.degree(a)
        )
        .unwrap();
    }
    out
}

/// DOT digraph; arrows carry `label="<degree>"` and the exceptional cycle is
/// drawn with doubled pen width.
pub fn graded_quiver_dot(tree: &BrauerTree, n: &GreenNumbering, gq: &GradedQuiver) -> String {
    let q = &gq.quiver;
    let mut out = String::from("digraph quiver {\n");
    for v in 1..=q.vertex_count() {
        writeln!(out, "  v{v} [label=\"{}\"];", vertex_label(tree, n, v)).unwrap();
    }
    for (a, arrow) in q.arrows().iter().enumerate() {
        let width = if q.cycle(arrow.cycle).exceptional {
            2
        } else {
            1
        };
        writeln!(
            out,
            "  v{} -> v{} [label=\"{}\", penwidth={width}];",
            arrow.source,
            arrow.target,
            gq.degree(a)
        )
        .unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn graded_quiver_json(
    tree: &BrauerTree,
    n: &GreenNumbering,
    gq: &GradedQuiver,
    r: &RelationSet,
) -> Value {
    let q = &gq.quiver;
    let id = |a: usize| arrow_id(tree, n, q, a);
    let vertices: Vec<Value> = (1..=q.vertex_count())
        .map(|v| json!({ "index": v, "edge": vertex_label(tree, n, v) }))
        .collect();
    let arrows: Vec<Value> = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, arrow)| {
            json!({
                "id": id(a),
                "source": arrow.source,
                "target": arrow.target,
                "degree": gq.degree(a),
                "cycle": arrow.cycle,
                "exceptional": q.cycle(arrow.cycle).exceptional,
            })
        })
        .collect();
    let word = |cycle: usize, v: usize, power: u32| -> Vec<String> {
        q.walk(cycle, v, q.cycle(cycle).len() * power as usize)
            .into_iter()
            .map(id)
            .collect()
    };
    json!({
        "multiplicity": tree.multiplicity(),
        "vertices": vertices,
        "arrows": arrows,
        "relations": {
            "zero": r.zero.iter().map(|&(a, b)| json!([id(a), id(b)])).collect::<Vec<_>>(),
            "equal": r.equalities.iter().map(|eq| json!([
                word(eq.first.cycle, eq.vertex, eq.first.power),
                word(eq.second.cycle, eq.vertex, eq.second.power),
            ])).collect::<Vec<_>>(),
            "truncate": r.truncations.iter().map(|t| {
                let mut w = word(t.word.cycle, t.vertex, t.word.power);
                w.push(id(q.outgoing_in(t.vertex, t.word.cycle).expect("vertex on cycle")));
                json!(w)
            }).collect::<Vec<_>>(),
        },
    })
}

pub fn graded_quiver_latex(tree: &BrauerTree, n: &GreenNumbering, gq: &GradedQuiver) -> String {
    let mut out =
        String::from("\\begin{tabular}{lll}\n\\hline\nsource & target & degree \\\\\n\\hline\n");
    for (a, arrow) in gq.quiver.arrows().iter().enumerate() {
        writeln!(
            out,
            "$S_{{{}}}$ & $S_{{{}}}$ & ${}$ \\\\",
            latex_id(&vertex_label(tree, n, arrow.source)),
            latex_id(&vertex_label(tree, n, arrow.target)),
            gq.degree(a)
        )
        .unwrap();
    }
    out.push_str("\\hline\n\\end{tabular}\n");
    out
}

/// Strip a leading `S` from ids like `S12`.
fn latex_id(id: &str) -> String {
    id.strip_prefix('S').unwrap_or(id).replace('_', "\\_")
}

/// `1 + q^3 + 2*q^5` becomes `1 + q^{3} + 2q^{5}`.
pub fn laurent_latex(p: &LaurentPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (k, (exp, coeff)) in p.terms().enumerate() {
        let sign = if coeff < 0 { "-" } else { "+" };
        if k == 0 {
            if coeff < 0 {
                out.push('-');
            }
        } else {
            write!(out, " {sign} ").unwrap();
        }
        let c = coeff.abs();
        match (exp, c) {
            (0, c) => write!(out, "{c}").unwrap(),
            (1, 1) => out.push('q'),
            (1, c) => write!(out, "{c}q").unwrap(),
            (e, 1) => write!(out, "q^{{{e}}}").unwrap(),
            (e, c) => write!(out, "{c}q^{{{e}}}").unwrap(),
        }
    }
    out
}

/// Column-aligned text matrix.
pub fn matrix_text<T: Clone>(m: &ExactMatrix<T>, cell: impl Fn(&T) -> String) -> String {
    let cells: Vec<Vec<String>> = (0..m.rows())
        .map(|r| (0..m.cols()).map(|c| cell(m.get(r, c))).collect())
        .collect();
    let widths: Vec<usize> = (0..m.cols())
        .map(|c| {
            cells
                .iter()
                .map(|row| row[c].chars().count())
                .max()
                .unwrap_or(0)
        })
        .collect();
    let mut out = String::new();
    for row in &cells {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(s, &w)| format!("{s:<w$}"))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

pub fn matrix_latex<T: Clone>(m: &ExactMatrix<T>, cell: impl Fn(&T) -> String) -> String {
    let mut out = String::from("\\begin{pmatrix}\n");
    for r in 0..m.rows() {
        let row: Vec<String> = (0..m.cols()).map(|c| cell(m.get(r, c))).collect();
        writeln!(out, "{} \\\\", row.join(" & ")).unwrap();
    }
    out.push_str("\\end{pmatrix}\n");
    out
}

pub fn matrix_json<T: Clone>(m: &ExactMatrix<T>, cell: impl Fn(&T) -> Value) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| Value::Array((0..m.cols()).map(|c| cell(m.get(r, c))).collect()))
            .collect(),
    )
}
