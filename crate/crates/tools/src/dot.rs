//! Graphviz export.
//!
//! Output is built from canonical graphs, so isomorphic inputs produce
//! byte-identical text. Legs are plaintext nodes labelled with their color
//! and trivalent vertices are points; each edge records the slot it uses at
//! both ends as `taillabel`/`headlabel`, which preserves the cyclic order.

use std::fmt::Write;

use jacobi_core::graph::Node;
use jacobi_core::{Diagram, Monomial};

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn write_component(out: &mut String, d: &Diagram, base: usize) {
    let g = d.graph();
    for (i, n) in g.nodes().iter().enumerate() {
        let id = base + i;
        match n {
            Node::Leg(l) => {
                writeln!(out, "  n{id} [shape=plaintext, label=\"{}\"];", escape(l.color.as_str())).unwrap()
            }
            Node::Tri => writeln!(out, "  n{id} [shape=point];").unwrap(),
        }
    }
    for dart in 0..g.dart_count() as u32 {
        let mate = g.mate(dart);
        if dart < mate {
            writeln!(
                out,
                "  n{} -- n{} [taillabel=\"{}\", headlabel=\"{}\"];",
                base + g.owner(dart) as usize,
                base + g.owner(mate) as usize,
                g.slot(dart),
                g.slot(mate)
            )
            .unwrap();
        }
    }
}

/// DOT text for a product of diagrams, one copy per multiplicity.
pub fn monomial_to_dot(m: &Monomial, name: &str) -> String {
    let mut out = format!("graph \"{}\" {{\n", escape(name));
    let mut base = 0;
    for (d, k) in m.factors() {
        for _ in 0..*k {
            write_component(&mut out, d, base);
            base += d.graph().node_count();
        }
    }
    out.push_str("}\n");
    out
}

pub fn diagram_to_dot(d: &Diagram, name: &str) -> String {
    monomial_to_dot(&Monomial::single(d.clone()), name)
}
