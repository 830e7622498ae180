//! Hasse diagrams in DOT.

use std::fmt::Write;

use pfw_core::lattice::FiniteFrame;

use crate::schema::{Instance, Kind, Object};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("cannot draw a {0:?} document; expected a frame, Frith frame or quasi-uniformity")]
pub struct UnsupportedKind(pub Kind);

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// One node per element, one edge per covering pair, drawn bottom to top.
pub fn hasse(name: &str, l: &FiniteFrame) -> String {
    let mut out = String::new();
    writeln!(out, "digraph {} {{", quote(name)).unwrap();
    writeln!(out, "  rankdir=BT;").unwrap();
    writeln!(out, "  node [shape=plaintext];").unwrap();
    for x in l.elements() {
        writeln!(out, "  n{} [label={}];", x.index(), quote(l.name(x))).unwrap();
    }
    for (a, b) in l.covers() {
        writeln!(out, "  n{} -> n{} [arrowhead=none];", a.index(), b.index()).unwrap();
    }
    out.push_str("}\n");
    out
}

pub fn render_dot(inst: &Instance) -> Result<String, UnsupportedKind> {
    let frame = match &inst.object {
        Object::Frame(l) => l,
        Object::Frith(f) => f.frame(),
        Object::Quni(q) => q.frame(),
        other => return Err(UnsupportedKind(other.kind())),
    };
    Ok(hasse(&inst.name, frame))
}

#[cfg(test)]
mod tests {
    use super::*;
    use pfw_core::pervin::PervinSpace;

    fn counts(l: FiniteFrame) -> (usize, usize) {
        let dot = render_dot(&Instance::new("x", Object::Frame(l))).unwrap();
        (dot.matches("[label=").count(), dot.matches(" -> ").count())
    }

    #[test]
    fn node_and_edge_counts() {
        assert_eq!(counts(FiniteFrame::chain(3)), (3, 2));
        assert_eq!(counts(FiniteFrame::boolean(2)), (4, 4));
        assert_eq!(counts(FiniteFrame::two()), (2, 1));
    }

    #[test]
    fn pervin_spaces_are_rejected() {
        let x = PervinSpace::discrete(PervinSpace::default_universe(1));
        let e = render_dot(&Instance::new("x", Object::Pervin(x))).unwrap_err();
        assert_eq!(e, UnsupportedKind(Kind::Pervin));
    }
}
