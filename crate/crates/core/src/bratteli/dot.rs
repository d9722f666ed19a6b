use std::fmt::Write;

use super::BratteliDiagram;

/// Graphviz text for the explicit truncation: one `rank=same` subgraph per
/// level, vertices labelled by summand size, and one edge per nonzero
/// multiplicity labelled `×k`.
pub fn to_dot(d: &BratteliDiagram) -> String {
    let mut out = String::from("digraph bratteli {\n  rankdir=TB;\n  node [shape=circle];\n");
    for (i, level) in d.levels().iter().enumerate() {
        writeln!(out, "  subgraph level_{i} {{\n    rank=same;").unwrap();
        for (k, size) in level.sizes().iter().enumerate() {
            writeln!(out, "    \"{i}.{k}\" [label=\"{size}\"];").unwrap();
        }
        out.push_str("  }\n");
    }
    for (i, step) in d.steps().iter().enumerate() {
        let m = step.matrix();
        for c in 0..m.cols() {
            for r in 0..m.rows() {
                let k = m.get(r, c);
                if k != 0 {
                    writeln!(out, "  \"{i}.{c}\" -> \"{}.{r}\" [label=\"×{k}\"];", i + 1).unwrap();
                }
            }
        }
    }
    out.push_str("}\n");
    out
}
