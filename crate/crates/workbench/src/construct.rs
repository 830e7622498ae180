//! The operations behind `pfw construct`.
//!
//! Operations that build an object return a full document for it. The others return a
//! JSON report.

use serde_json::{json, Value};

use pfw_core::completion::c_and_c_star;
use pfw_core::congruence::CongruenceFrame;
use pfw_core::entourage::QuasiUniformity;
use pfw_core::frith::FrithFrame;
use pfw_core::lattice::{Elem, FiniteFrame};
use pfw_core::pervin::PervinSpace;
use pfw_core::spectrum::{is_sober, omega_frith, points, pt_frith};
use pfw_core::Caps;

use crate::schema::{payload, to_value, Instance, Kind, Object};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Op {
    /// The congruence frame of a frame, with the blocks of each congruence.
    Congruences,
    /// The congruence frame relative to the lattice part of a Frith frame.
    Relative,
    /// The symmetric reflection of a Frith frame.
    Fsym,
    /// The Boolean core of a Frith frame.
    BooleanCore,
    /// Product of two Frith frames.
    Product,
    /// Coproduct of two Frith frames.
    Coproduct,
    /// The points of a frame with their prime filters.
    Points,
    /// The Pervin space of points of a Frith frame.
    Pt,
    /// The Frith frame of a Pervin space.
    Omega,
    /// The symmetric reflection of a Pervin space.
    Psym,
    /// The Skula topology of a Pervin space.
    Skula,
    /// The four T_D conditions of a Pervin space.
    Td,
    /// The quasi-uniformity generated by E_r for complemented r given by name.
    Filter,
    /// Recover the generating sublattice of a quasi-uniformity.
    ExtractR,
    /// Rebuild a Frith frame from a quasi-uniformity and compare.
    Gamma,
    /// The ideal completion of a Frith frame and the map onto it.
    Completion,
    /// Predicates of any object or morphism.
    Predicates,
}

impl Op {
    /// Number of documents the operation reads.
    pub fn arity(self) -> usize {
        match self {
            Op::Product | Op::Coproduct => 2,
            _ => 1,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum ConstructError {
    #[error("{op:?} needs {expected} document(s), got {got}")]
    Arity { op: Op, expected: usize, got: usize },
    #[error("{op:?} does not accept a {kind:?} document")]
    WrongKind { op: Op, kind: Kind },
    #[error("unknown element {0:?}")]
    UnknownElement(String),
    #[error("{op:?} takes no extra arguments, got {args:?}")]
    ExtraArgs { op: Op, args: Vec<String> },
    #[error(transparent)]
    Core(#[from] pfw_core::Error),
}

type Res<T> = std::result::Result<T, ConstructError>;

fn frame_of(op: Op, i: &Instance) -> Res<&FiniteFrame> {
    match &i.object {
        Object::Frame(l) => Ok(l),
        Object::Frith(f) => Ok(f.frame()),
        Object::Quni(q) => Ok(q.frame()),
        o => Err(ConstructError::WrongKind { op, kind: o.kind() }),
    }
}

/// A bare frame is read as the Frith frame with S = L.
fn frith_of(op: Op, i: &Instance) -> Res<FrithFrame> {
    match &i.object {
        Object::Frame(l) => Ok(FrithFrame::full(l)),
        Object::Frith(f) => Ok(f.clone()),
        o => Err(ConstructError::WrongKind { op, kind: o.kind() }),
    }
}

fn pervin_of(op: Op, i: &Instance) -> Res<&PervinSpace> {
    match &i.object {
        Object::Pervin(x) => Ok(x),
        o => Err(ConstructError::WrongKind { op, kind: o.kind() }),
    }
}

fn quni_of(op: Op, i: &Instance) -> Res<&QuasiUniformity> {
    match &i.object {
        Object::Quni(q) => Ok(q),
        o => Err(ConstructError::WrongKind { op, kind: o.kind() }),
    }
}

fn names(l: &FiniteFrame, it: impl IntoIterator<Item = Elem>) -> Vec<String> {
    it.into_iter().map(|x| l.name(x).to_string()).collect()
}

fn sets(x: &PervinSpace, it: impl IntoIterator<Item = pfw_core::pervin::PointSet>) -> Vec<Vec<String>> {
    it.into_iter().map(|s| x.set_names(s)).collect()
}

fn doc(name: String, o: Object) -> Value {
    to_value(&Instance::new(name, o))
}

fn congruence_listing(cf: &CongruenceFrame) -> Value {
    let k = cf.structure();
    let members: Vec<Value> = k
        .elements()
        .map(|e| json!({ "element": k.name(e), "blocks": cf.congruence(e).named_blocks() }))
        .collect();
    json!({ "frame": payload(&Object::Frame(k.clone())), "congruences": members })
}

/// Run `op` on the parsed `inputs`; `args` are the trailing element names for `filter`.
pub fn construct(op: Op, inputs: &[Instance], args: &[String], caps: &Caps) -> Res<Value> {
    if inputs.len() != op.arity() {
        return Err(ConstructError::Arity { op, expected: op.arity(), got: inputs.len() });
    }
    if op != Op::Filter && !args.is_empty() {
        return Err(ConstructError::ExtraArgs { op, args: args.to_vec() });
    }
    let first = &inputs[0];
    let name = &first.name;
    Ok(match op {
        Op::Congruences => congruence_listing(&CongruenceFrame::full(frame_of(op, first)?, caps)?),
        Op::Relative => {
            let f = frith_of(op, first)?;
            congruence_listing(&CongruenceFrame::relative(f.frame(), f.s(), caps)?)
        }
        Op::Fsym => doc(format!("fsym({name})"), Object::Frith(frith_of(op, first)?.fsym(caps)?.object)),
        Op::BooleanCore => doc(format!("core({name})"), Object::Frith(frith_of(op, first)?.boolean_core()?.0)),
        Op::Product | Op::Coproduct => {
            let (a, b) = (frith_of(op, first)?, frith_of(op, &inputs[1])?);
            let (obj, _, _) = if op == Op::Product { a.product(&b)? } else { a.coproduct(&b, caps)? };
            let sym = if op == Op::Product { "x" } else { "+" };
            doc(format!("{name} {sym} {}", inputs[1].name), Object::Frith(obj))
        }
        Op::Points => {
            let l = frame_of(op, first)?;
            let pts = points(l)?;
            json!(pts.iter().map(|p| json!({ "point": p.name(), "filter": names(l, p.filter()) })).collect::<Vec<_>>())
        }
        Op::Pt => doc(format!("pt({name})"), Object::Pervin(pt_frith(&frith_of(op, first)?)?.0)),
        Op::Omega => doc(format!("omega({name})"), Object::Frith(omega_frith(pervin_of(op, first)?)?.0)),
        Op::Psym => doc(format!("psym({name})"), Object::Pervin(pervin_of(op, first)?.psym())),
        Op::Skula => {
            let x = pervin_of(op, first)?;
            json!({ "topology": sets(x, x.skula()), "discrete": x.skula_is_discrete() })
        }
        Op::Td => json!(pervin_of(op, first)?.td_suite()?),
        Op::Filter => {
            let l = frame_of(op, first)?;
            let r = args
                .iter()
                .map(|a| l.by_name(a).ok_or_else(|| ConstructError::UnknownElement(a.clone())))
                .collect::<Res<Vec<Elem>>>()?;
            let q = QuasiUniformity::from_sublattice(l, r)?;
            doc(format!("E({name})"), Object::Quni(q))
        }
        Op::ExtractR => {
            let q = quni_of(op, first)?;
            let l = q.frame();
            let ex = q.extract_r()?;
            let witnesses: Vec<Value> = ex
                .witnesses
                .iter()
                .map(|w| {
                    json!({
                        "basis_index": w.basis_index,
                        "partition": names(l, w.partition.iter().copied()),
                        "r": names(l, w.blocks.iter().map(|b| b.1)),
                    })
                })
                .collect();
            json!({ "r": names(l, ex.r.iter()), "witnesses": witnesses })
        }
        Op::Gamma => {
            let g = quni_of(op, first)?.gamma(caps)?;
            json!({
                "frame": payload(&Object::Frame(g.l.clone())),
                "r": names(&g.l, g.r.iter()),
                "is_dense": g.is_dense,
                "is_surjective": g.is_surjective,
                "generates_filter": g.generates_filter,
                "is_iso": g.is_iso,
            })
        }
        Op::Completion => {
            let f = frith_of(op, first)?;
            let c = c_and_c_star(&f, caps)?;
            json!({
                "completion": doc(format!("idl({name})"), Object::Frith(c.c.dom().clone())),
                "map": payload(&Object::FrithMorphism(c.c.clone())),
                "is_iso": c.c.predicates().is_iso,
                "right_inverse": c.right_inverse,
            })
        }
        Op::Predicates => predicates(first)?,
    })
}

fn predicates(i: &Instance) -> Res<Value> {
    Ok(match &i.object {
        Object::Frame(l) => frith_predicates(&FrithFrame::full(l))?,
        Object::Frith(f) => frith_predicates(f)?,
        Object::Pervin(x) => json!({
            "t0": x.is_t0(),
            "symmetric": x.is_symmetric(),
            "sober": is_sober(x)?,
            "td": x.td_suite()?,
        }),
        Object::Quni(q) => {
            let mut v = json!(q.report());
            v["is_quasi_uniformity"] = json!(q.report().is_quasi_uniformity());
            v
        }
        Object::FrameMorphism(h) => json!(h.validate()),
        Object::FrithMorphism(h) => json!(h.predicates()),
        Object::PervinMorphism(f) => json!(f.predicates()),
    })
}

fn frith_predicates(f: &FrithFrame) -> Res<Value> {
    let prox = f.proximity();
    let mut v = json!(f.predicates()?);
    v["s_is_whole"] = json!(f.s().is_whole());
    v["proximity_interpolates"] = json!(prox.interpolates);
    Ok(v)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn inst(o: Object) -> Instance {
        Instance::new("x", o)
    }

    #[test]
    fn chain_has_four_congruences() {
        let v = construct(Op::Congruences, &[inst(Object::Frame(FiniteFrame::chain(3)))], &[], &Caps::default()).unwrap();
        assert_eq!(v["congruences"].as_array().unwrap().len(), 4);
    }

    #[test]
    fn filter_then_extract_recovers_r() {
        let d4 = FiniteFrame::boolean(2);
        let a = d4.name(d4.join_irreducibles()[0]).to_string();
        let q = construct(Op::Filter, &[inst(Object::Frame(d4))], std::slice::from_ref(&a), &Caps::default()).unwrap();
        let q = crate::schema::parse_value(&q).unwrap();
        let v = construct(Op::ExtractR, &[q], &[], &Caps::default()).unwrap();
        let r: Vec<String> = serde_json::from_value(v["r"].clone()).unwrap();
        assert_eq!(r.len(), 3);
        assert!(r.contains(&a));
    }

    #[test]
    fn wrong_kind_and_arity_are_reported() {
        let x = inst(Object::Pervin(PervinSpace::discrete(PervinSpace::default_universe(2))));
        let e = construct(Op::Fsym, std::slice::from_ref(&x), &[], &Caps::default()).unwrap_err();
        assert!(matches!(e, ConstructError::WrongKind { kind: Kind::Pervin, .. }));
        let e = construct(Op::Product, &[x], &[], &Caps::default()).unwrap_err();
        assert!(matches!(e, ConstructError::Arity { expected: 2, got: 1, .. }));
    }

    #[test]
    fn product_of_two_twos_has_four_elements() {
        let two = inst(Object::Frame(FiniteFrame::two()));
        let v = construct(Op::Product, &[two.clone(), two], &[], &Caps::default()).unwrap();
        let p = crate::schema::parse_value(&v).unwrap();
        assert!(matches!(p.object, Object::Frith(ref f) if f.frame().len() == 4));
    }

    #[test]
    fn unknown_element_in_filter() {
        let e = construct(Op::Filter, &[inst(Object::Frame(FiniteFrame::two()))], &["zz".into()], &Caps::default())
            .unwrap_err();
        assert!(matches!(e, ConstructError::UnknownElement(ref s) if s == "zz"));
    }
}
