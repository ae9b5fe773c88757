//! Weight diagrams in graphviz DOT: one node per support point, solid
//! arrows for X_1 and doubled arrows for X_2.

use std::collections::BTreeSet;
use std::fmt::Write;

use crate::error::Result;
use crate::module::{Label, WeightModuleSpec};
use crate::tgwa::Letter;

/// Edge between support points: (letter index, from, to).
pub type DiagramEdge = (usize, Vec<i64>, Vec<i64>);

/// Support points of the window and the degree edges of every X_i.
pub fn diagram_edges(m: &WeightModuleSpec, window: Option<i64>) -> Result<(Vec<Vec<i64>>, Vec<DiagramEdge>)> {
    let window = if m.is_finite() { None } else { window };
    let nodes = m.support.enumerate(window)?;
    let inside: BTreeSet<&Vec<i64>> = nodes.iter().collect();
    let mut edges = BTreeSet::new();
    for g in &nodes {
        for i in 0..m.rank() {
            for k in 0..m.weight_dim {
                if let Some((t, _)) = m.act(Letter::X(i), &Label::new(g.clone(), k))? {
                    if inside.contains(&t.g) {
                        edges.insert((i, g.clone(), t.g));
                    }
                }
            }
        }
    }
    Ok((nodes, edges.into_iter().collect()))
}

fn node_id(g: &[i64]) -> String {
    let parts: Vec<String> = g.iter().map(|x| if *x < 0 { format!("m{}", -x) } else { x.to_string() }).collect();
    format!("g_{}", parts.join("_"))
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT text of the weight diagram on the window (ignored when finite).
pub fn emit_dot(m: &WeightModuleSpec, window: Option<i64>) -> Result<String> {
    let (nodes, edges) = diagram_edges(m, window)?;
    let mut out = String::new();
    let name = escape(&m.name);
    writeln!(out, "digraph \"{name}\" {{").unwrap();
    writeln!(out, "  node [shape=circle, fontsize=10];").unwrap();
    for g in &nodes {
        let pt: Vec<String> = m.presentation.sigma_point(g, &m.base.alpha).iter().map(|s| s.to_string()).collect();
        let deg: Vec<String> = g.iter().map(|x| x.to_string()).collect();
        writeln!(
            out,
            "  {} [label=\"({})\", tooltip=\"degree ({})\"];",
            node_id(g),
            escape(&pt.join(", ")),
            deg.join(",")
        )
        .unwrap();
    }
    for (i, a, b) in &edges {
        let style = match i {
            0 => "color=black".to_string(),
            1 => "color=\"black:invis:black\"".to_string(),
            _ => format!("style=dashed, label=\"X{}\"", i + 1),
        };
        writeln!(out, "  {} -> {} [{style}];", node_id(a), node_id(b)).unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qwa::fixtures::cyclic_n0_fixture;

    #[test]
    fn single_point_with_loops() {
        let m = cyclic_n0_fixture().unwrap();
        let (nodes, edges) = diagram_edges(&m, None).unwrap();
        assert_eq!(nodes, vec![vec![0, 0]]);
        assert_eq!(edges, vec![(0, vec![0, 0], vec![0, 0]), (1, vec![0, 0], vec![0, 0])]);
        let dot = emit_dot(&m, None).unwrap();
        assert!(dot.starts_with("digraph \"cyclic_n0\" {"));
        assert_eq!(dot.matches("->").count(), 2);
    }
}
