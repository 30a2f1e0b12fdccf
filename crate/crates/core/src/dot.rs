//! Graphviz export of a framework or of a coalition's view.

use std::fmt::Write;

use crate::argument::{ArgSet, ArgumentInstance};
use crate::attack::Edge;
use crate::error::Result;
use crate::framework::Framework;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DotScope {
    Whole,
    /// The view of a conflict-eliminable coalition.
    ViewOf(ArgSet),
}

fn node(a: &ArgumentInstance) -> String {
    format!("\"{a}\"")
}

/// Renders nodes labelled `id (capacity)` and one edge per minimal attack,
/// labelled with its strength. A group attack is drawn through a point node.
/// Output depends only on the framework and scope.
pub fn export_dot(fw: &Framework, scope: &DotScope) -> Result<String> {
    let sem = fw.semantics();
    let (title, nodes, edges): (String, ArgSet, Vec<Edge>) = match scope {
        DotScope::Whole => ("framework".into(), fw.arguments().members().clone(), sem.framework_edges()?),
        DotScope::ViewOf(set) => {
            let view = sem.view(set)?;
            (format!("view of {}", crate::argument::display_set(set)), view.arguments, view.attacks)
        }
    };
    let mut out = String::new();
    writeln!(out, "digraph {{").unwrap();
    if nodes.is_empty() {
        out.push_str("}\n");
        return Ok(out);
    }
    writeln!(out, "  label=\"{title}\";").unwrap();
    writeln!(out, "  node [shape=ellipse];").unwrap();
    for a in &nodes {
        writeln!(out, "  {} [label=\"{} ({})\"];", node(a), a.id, a.capacity).unwrap();
    }
    let mut groups = 0;
    for e in &edges {
        if e.attackers.len() == 1 {
            let a = e.attackers.first().expect("one attacker");
            writeln!(out, "  {} -> {} [label=\"{}\"];", node(a), node(&e.target), e.strength).unwrap();
        } else {
            groups += 1;
            let g = format!("\"g{groups}\"");
            writeln!(out, "  {g} [shape=point];").unwrap();
            for a in &e.attackers {
                writeln!(out, "  {} -> {g} [arrowhead=none];", node(a)).unwrap();
            }
            writeln!(out, "  {g} -> {} [label=\"{}\"];", node(&e.target), e.strength).unwrap();
        }
    }
    out.push_str("}\n");
    Ok(out)
}
