//! JSON documents for frames, Frith frames, Pervin spaces, quasi-uniformities and morphisms.
//!
//! Every document is an envelope `{"kind": ..., "name": ..., "payload": ...}`. A bare frame
//! descriptor (`{"kind": "poset", ...}` or `{"kind": "table", ...}`) is accepted as a frame.
//! Errors carry the JSON path of the offending value.

use std::collections::{BTreeMap, HashMap};

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use pfw_core::entourage::{CIdeal, QuasiUniformity};
use pfw_core::frith::{FrithFrame, FrithHom};
use pfw_core::lattice::{Elem, FiniteFrame, FrameHom, Poset, Sublattice};
use pfw_core::pervin::{PervinMap, PervinSpace, PointSet};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SchemaError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("{path}: {message}")]
    At { path: String, message: String },
}

fn at(path: impl Into<String>, message: impl ToString) -> SchemaError {
    SchemaError::At { path: path.into(), message: message.to_string() }
}

type Res<T> = std::result::Result<T, SchemaError>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Kind {
    Frame,
    Frith,
    Pervin,
    Quni,
    Morphism,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct Envelope {
    kind: Kind,
    #[serde(default)]
    name: Option<String>,
    payload: Value,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum FrameDoc {
    Poset { points: Vec<String>, le: Vec<(String, String)> },
    Table { elements: Vec<String>, meet: Vec<Vec<String>>, join: Vec<Vec<String>> },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FrithDoc {
    frame: Value,
    s: Vec<String>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PervinDoc {
    universe: Vec<String>,
    lattice: Vec<Vec<String>>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct QuniDoc {
    frame: Value,
    basis: Vec<Vec<(String, String)>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Category {
    Frame,
    Frith,
    Pervin,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MorphismDoc {
    category: Category,
    dom: Value,
    cod: Value,
    map: BTreeMap<String, String>,
}

/// A parsed document.
#[derive(Clone, Debug)]
pub enum Object {
    Frame(FiniteFrame),
    Frith(FrithFrame),
    Pervin(PervinSpace),
    Quni(QuasiUniformity),
    FrameMorphism(FrameHom),
    FrithMorphism(FrithHom),
    PervinMorphism(PervinMap),
}

impl Object {
    pub fn kind(&self) -> Kind {
        match self {
            Object::Frame(_) => Kind::Frame,
            Object::Frith(_) => Kind::Frith,
            Object::Pervin(_) => Kind::Pervin,
            Object::Quni(_) => Kind::Quni,
            _ => Kind::Morphism,
        }
    }
}

#[derive(Clone, Debug)]
pub struct Instance {
    pub name: String,
    pub object: Object,
}

impl Instance {
    pub fn new(name: impl Into<String>, object: Object) -> Instance {
        Instance { name: name.into(), object }
    }

    pub fn kind(&self) -> Kind {
        self.object.kind()
    }
}

fn typed<T: DeserializeOwned>(v: &Value, path: &str) -> Res<T> {
    serde_path_to_error::deserialize(v).map_err(|e| {
        let inner = e.path().to_string();
        let full = if inner == "." { path.to_string() } else { format!("{path}.{inner}") };
        at(full, e.into_inner())
    })
}

pub fn parse_str(text: &str) -> Res<Instance> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| SchemaError::Json { line: e.line(), column: e.column(), message: e.to_string() })?;
    parse_value(&v)
}

pub fn parse_value(v: &Value) -> Res<Instance> {
    if matches!(v.get("kind").and_then(Value::as_str), Some("poset" | "table")) {
        return Ok(Instance::new("frame", Object::Frame(frame_from(v, "$")?)));
    }
    let env: Envelope = typed(v, "$")?;
    let p = "$.payload";
    let object = match env.kind {
        Kind::Frame => Object::Frame(frame_from(&env.payload, p)?),
        Kind::Frith => Object::Frith(frith_from(&env.payload, p)?),
        Kind::Pervin => Object::Pervin(pervin_from(&env.payload, p)?),
        Kind::Quni => Object::Quni(quni_from(&env.payload, p)?),
        Kind::Morphism => morphism_from(&env.payload, p)?,
    };
    let name = env.name.unwrap_or_else(|| format!("{:?}", env.kind).to_lowercase());
    Ok(Instance { name, object })
}

fn index_of(names: &HashMap<&str, usize>, n: &str, path: String) -> Res<usize> {
    names.get(n).copied().ok_or_else(|| at(path, format!("unknown name {n:?}")))
}

fn name_index<'a>(names: &'a [String], path: &str) -> Res<HashMap<&'a str, usize>> {
    let mut out = HashMap::new();
    for (i, n) in names.iter().enumerate() {
        if out.insert(n.as_str(), i).is_some() {
            return Err(at(format!("{path}[{i}]"), format!("duplicate name {n:?}")));
        }
    }
    Ok(out)
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PosetBody {
    points: Vec<String>,
    le: Vec<(String, String)>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct TableBody {
    elements: Vec<String>,
    meet: Vec<Vec<String>>,
    join: Vec<Vec<String>>,
}

/// Dispatch on the tag by hand so that errors inside the body keep their paths.
fn frame_doc_from(v: &Value, path: &str) -> Res<FrameDoc> {
    let obj = v.as_object().ok_or_else(|| at(path, "expected a frame descriptor object"))?;
    let mut body = obj.clone();
    let kind = body.remove("kind").ok_or_else(|| at(path, "missing field `kind`"))?;
    let body = Value::Object(body);
    match kind.as_str() {
        Some("poset") => {
            let b: PosetBody = typed(&body, path)?;
            Ok(FrameDoc::Poset { points: b.points, le: b.le })
        }
        Some("table") => {
            let b: TableBody = typed(&body, path)?;
            Ok(FrameDoc::Table { elements: b.elements, meet: b.meet, join: b.join })
        }
        _ => Err(at(format!("{path}.kind"), "expected \"poset\" or \"table\"")),
    }
}

pub fn frame_from(v: &Value, path: &str) -> Res<FiniteFrame> {
    match frame_doc_from(v, path)? {
        FrameDoc::Poset { points, le } => {
            let idx = name_index(&points, &format!("{path}.points"))?;
            let mut pairs = Vec::with_capacity(le.len());
            for (k, (a, b)) in le.iter().enumerate() {
                let x = index_of(&idx, a, format!("{path}.le[{k}][0]"))?;
                let y = index_of(&idx, b, format!("{path}.le[{k}][1]"))?;
                pairs.push((x, y));
            }
            let p = Poset::new(points.clone(), &pairs).map_err(|e| at(format!("{path}.le"), e))?;
            FiniteFrame::from_poset(p).map_err(|e| at(path, e))
        }
        FrameDoc::Table { elements, meet, join } => {
            let idx = name_index(&elements, &format!("{path}.elements"))?;
            let table = |t: &[Vec<String>], label: &str| -> Res<Vec<Vec<usize>>> {
                t.iter()
                    .enumerate()
                    .map(|(i, row)| {
                        row.iter()
                            .enumerate()
                            .map(|(j, n)| index_of(&idx, n, format!("{path}.{label}[{i}][{j}]")))
                            .collect()
                    })
                    .collect()
            };
            let (m, j) = (table(&meet, "meet")?, table(&join, "join")?);
            let (f, _) = FiniteFrame::from_table(elements.clone(), &m, &j).map_err(|e| at(path, e))?;
            Ok(f)
        }
    }
}

fn elems(f: &FiniteFrame, names: &[String], path: &str) -> Res<Vec<Elem>> {
    names
        .iter()
        .enumerate()
        .map(|(i, n)| f.by_name(n).ok_or_else(|| at(format!("{path}[{i}]"), format!("unknown element {n:?}"))))
        .collect()
}

pub fn frith_from(v: &Value, path: &str) -> Res<FrithFrame> {
    let d: FrithDoc = typed(v, path)?;
    let f = frame_from(&d.frame, &format!("{path}.frame"))?;
    let s = elems(&f, &d.s, &format!("{path}.s"))?;
    let s = Sublattice::new(&f, s).map_err(|e| at(format!("{path}.s"), e))?;
    FrithFrame::new(&f, s).map_err(|e| at(format!("{path}.s"), e))
}

pub fn pervin_from(v: &Value, path: &str) -> Res<PervinSpace> {
    let d: PervinDoc = typed(v, path)?;
    let idx = name_index(&d.universe, &format!("{path}.universe"))?;
    let mut sets = Vec::with_capacity(d.lattice.len());
    for (i, set) in d.lattice.iter().enumerate() {
        let mut m: PointSet = 0;
        for (j, n) in set.iter().enumerate() {
            m |= 1 << index_of(&idx, n, format!("{path}.lattice[{i}][{j}]"))?;
        }
        sets.push(m);
    }
    PervinSpace::new(d.universe.clone(), sets).map_err(|e| at(format!("{path}.lattice"), e))
}

fn entourage_from(f: &FiniteFrame, pairs: &[(String, String)], path: &str) -> Res<CIdeal> {
    let mut seeds = Vec::with_capacity(pairs.len());
    for (k, (a, b)) in pairs.iter().enumerate() {
        let x = f.by_name(a).ok_or_else(|| at(format!("{path}[{k}][0]"), format!("unknown element {a:?}")))?;
        let y = f.by_name(b).ok_or_else(|| at(format!("{path}[{k}][1]"), format!("unknown element {b:?}")))?;
        seeds.push((x, y));
    }
    let e = CIdeal::generated(f, f, seeds.iter().copied());
    if e.pairs().len() != seeds.len() {
        return Err(at(path, "pairs do not form a C-ideal (down-closed and closed under coordinatewise joins)"));
    }
    Ok(e)
}

pub fn quni_from(v: &Value, path: &str) -> Res<QuasiUniformity> {
    let d: QuniDoc = typed(v, path)?;
    let f = frame_from(&d.frame, &format!("{path}.frame"))?;
    let basis = d
        .basis
        .iter()
        .enumerate()
        .map(|(i, b)| entourage_from(&f, b, &format!("{path}.basis[{i}]")))
        .collect::<Res<Vec<_>>>()?;
    QuasiUniformity::new(&f, basis).map_err(|e| at(format!("{path}.basis"), e))
}

fn morphism_from(v: &Value, path: &str) -> Res<Object> {
    let d: MorphismDoc = typed(v, path)?;
    let (dp, cp, mp) = (format!("{path}.dom"), format!("{path}.cod"), format!("{path}.map"));
    match d.category {
        Category::Frame | Category::Frith => {
            let (dom, cod) = if d.category == Category::Frame {
                let (a, b) = (frame_from(&d.dom, &dp)?, frame_from(&d.cod, &cp)?);
                (FrithFrame::full(&a), FrithFrame::full(&b))
            } else {
                (frith_from(&d.dom, &dp)?, frith_from(&d.cod, &cp)?)
            };
            let (a, b) = (dom.frame(), cod.frame());
            let mut map = vec![b.bottom(); a.len()];
            for x in a.elements() {
                let img = d
                    .map
                    .get(a.name(x))
                    .ok_or_else(|| at(mp.clone(), format!("no image for {:?}", a.name(x))))?;
                map[x.index()] = b
                    .by_name(img)
                    .ok_or_else(|| at(format!("{mp}.{}", a.name(x)), format!("unknown element {img:?}")))?;
            }
            if let Some(k) = d.map.keys().find(|k| a.by_name(k).is_none()) {
                return Err(at(format!("{mp}.{k}"), "not an element of the domain"));
            }
            let h = FrameHom::new(a.clone(), b.clone(), map).map_err(|e| at(mp.clone(), e))?;
            if d.category == Category::Frame {
                if let Some(why) = h.hom_violation() {
                    return Err(at(mp, why));
                }
                Ok(Object::FrameMorphism(h))
            } else {
                Ok(Object::FrithMorphism(FrithHom::new(&dom, &cod, h).map_err(|e| at(mp, e))?))
            }
        }
        Category::Pervin => {
            let (x, y) = (pervin_from(&d.dom, &dp)?, pervin_from(&d.cod, &cp)?);
            let mut map = Vec::with_capacity(x.size());
            for p in x.universe() {
                let img = d.map.get(p).ok_or_else(|| at(mp.clone(), format!("no image for {p:?}")))?;
                let j = y
                    .point_index(img)
                    .ok_or_else(|| at(format!("{mp}.{p}"), format!("unknown point {img:?}")))?;
                map.push(j);
            }
            if let Some(k) = d.map.keys().find(|k| x.point_index(k).is_none()) {
                return Err(at(format!("{mp}.{k}"), "not a point of the domain"));
            }
            Ok(Object::PervinMorphism(PervinMap::new(x, y, map).map_err(|e| at(mp, e))?))
        }
    }
}

/// Canonical frame descriptor: poset form when the element names are the default ones,
/// otherwise a table over the element names.
pub fn frame_doc(f: &FiniteFrame) -> FrameDoc {
    let p = f.jir();
    if let Ok(g) = FiniteFrame::from_poset(p.clone()) {
        if g.names() == f.names() {
            let le = p
                .le_pairs()
                .into_iter()
                .filter(|(i, j)| i != j)
                .map(|(i, j)| (p.name(i).to_string(), p.name(j).to_string()))
                .collect();
            return FrameDoc::Poset { points: p.names().to_vec(), le };
        }
    }
    let (m, j) = f.tables();
    let named = |t: Vec<Vec<usize>>| -> Vec<Vec<String>> {
        t.into_iter()
            .map(|row| row.into_iter().map(|k| f.names()[k].clone()).collect())
            .collect()
    };
    FrameDoc::Table { elements: f.names().to_vec(), meet: named(m), join: named(j) }
}

fn frame_value(f: &FiniteFrame) -> Value {
    serde_json::to_value(frame_doc(f)).expect("frame descriptors serialize")
}

fn frith_value(f: &FrithFrame) -> Value {
    let l = f.frame();
    json!({ "frame": frame_value(l), "s": f.s().iter().map(|x| l.name(x)).collect::<Vec<_>>() })
}

fn pervin_value(x: &PervinSpace) -> Value {
    json!({ "universe": x.universe(), "lattice": x.lattice().iter().map(|&s| x.set_names(s)).collect::<Vec<_>>() })
}

pub fn entourage_value(e: &CIdeal) -> Value {
    let l = e.left();
    Value::Array(e.pairs().into_iter().map(|(x, y)| json!([l.name(x), l.name(y)])).collect())
}

fn quni_value(q: &QuasiUniformity) -> Value {
    json!({ "frame": frame_value(q.frame()), "basis": q.basis().iter().map(entourage_value).collect::<Vec<_>>() })
}

fn hom_map(h: &FrameHom) -> Value {
    let (a, b) = (h.dom(), h.cod());
    let m: BTreeMap<String, String> = a.elements().map(|x| (a.name(x).to_string(), b.name(h.apply(x)).to_string())).collect();
    json!(m)
}

pub fn payload(o: &Object) -> Value {
    match o {
        Object::Frame(f) => frame_value(f),
        Object::Frith(f) => frith_value(f),
        Object::Pervin(x) => pervin_value(x),
        Object::Quni(q) => quni_value(q),
        Object::FrameMorphism(h) => json!({
            "category": "frame", "dom": frame_value(h.dom()), "cod": frame_value(h.cod()), "map": hom_map(h)
        }),
        Object::FrithMorphism(h) => json!({
            "category": "frith", "dom": frith_value(h.dom()), "cod": frith_value(h.cod()), "map": hom_map(h.hom())
        }),
        Object::PervinMorphism(f) => {
            let (x, y) = (f.dom(), f.cod());
            let m: BTreeMap<&str, &str> = (0..x.size()).map(|i| (x.universe()[i].as_str(), y.universe()[f.apply(i)].as_str())).collect();
            json!({ "category": "pervin", "dom": pervin_value(x), "cod": pervin_value(y), "map": m })
        }
    }
}

pub fn to_value(inst: &Instance) -> Value {
    json!({ "kind": inst.kind(), "name": inst.name, "payload": payload(&inst.object) })
}

pub fn to_string(inst: &Instance) -> String {
    serde_json::to_string(&to_value(inst)).expect("documents serialize")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn round_trip(text: &str) {
        let first = to_string(&parse_str(text).unwrap());
        let second = to_string(&parse_str(&first).unwrap());
        assert_eq!(first, second);
    }

    #[test]
    fn chain_round_trips() {
        let c3 = r#"{"kind":"frame","name":"C3","payload":{"kind":"poset","points":["p","q"],"le":[["p","p"],["p","q"]]}}"#;
        round_trip(c3);
        let inst = parse_str(c3).unwrap();
        let Object::Frame(f) = &inst.object else { panic!() };
        assert_eq!(f.len(), 3);
        let canon = to_value(&inst);
        assert_eq!(canon["payload"]["le"], json!([["p", "q"]]));
    }

    #[test]
    fn sierpinski_round_trips() {
        let s = r#"{"kind":"pervin","name":"sierpinski","payload":{"universe":["x","y"],"lattice":[[],["x"],["x","y"]]}}"#;
        round_trip(s);
        let Object::Pervin(x) = parse_str(s).unwrap().object else { panic!() };
        assert_eq!(x.lattice().len(), 3);
    }

    #[test]
    fn malformed_le_pair_reports_its_path() {
        let bad = r#"{"kind":"frame","payload":{"kind":"poset","points":["p","q"],"le":[["p","q"],["p"]]}}"#;
        match parse_str(bad).unwrap_err() {
            SchemaError::At { path, .. } => assert!(path.starts_with("$.payload.le[1]"), "{path}"),
            e => panic!("{e}"),
        }
        let unknown = r#"{"kind":"frame","payload":{"kind":"poset","points":["p"],"le":[["p","z"]]}}"#;
        let e = parse_str(unknown).unwrap_err();
        assert_eq!(e, at("$.payload.le[0][1]", "unknown name \"z\""));
    }

    #[test]
    fn table_frames_keep_their_names() {
        let t = r#"{"kind":"table","elements":["bot","top"],"meet":[["bot","bot"],["bot","top"]],"join":[["bot","top"],["top","top"]]}"#;
        let inst = parse_str(t).unwrap();
        round_trip(&to_string(&inst));
        assert_eq!(to_value(&inst)["payload"]["kind"], "table");
        let pentagon_like = r#"{"kind":"table","elements":["a","b"],"meet":[["a","a"],["a","a"]],"join":[["a","a"],["b","b"]]}"#;
        assert!(parse_str(pentagon_like).is_err());
    }

    #[test]
    fn composite_documents_round_trip() {
        let frith = r#"{"kind":"frith","name":"c3","payload":{"frame":{"kind":"poset","points":["p","q"],"le":[["p","q"]]},"s":["0","p","1"]}}"#;
        round_trip(frith);
        let d4 = FiniteFrame::boolean(2);
        let a = d4.by_name("a").unwrap();
        let q = QuasiUniformity::from_sublattice(&d4, [a]).unwrap();
        round_trip(&to_string(&Instance::new("ea", Object::Quni(q))));
        let h = FrameHom::enumerate(&FiniteFrame::chain(3), &FiniteFrame::two(), 8).unwrap().remove(0);
        round_trip(&to_string(&Instance::new("pt", Object::FrameMorphism(h))));
        let x = PervinSpace::discrete(PervinSpace::default_universe(2));
        let f = PervinMap::identity(&x);
        round_trip(&to_string(&Instance::new("id", Object::PervinMorphism(f))));
    }

    #[test]
    fn bad_entourage_is_rejected() {
        let q = r#"{"kind":"quni","payload":{"frame":{"kind":"poset","points":["p"],"le":[]},"basis":[[["1","1"]]]}}"#;
        match parse_str(q).unwrap_err() {
            SchemaError::At { path, .. } => assert_eq!(path, "$.payload.basis[0]"),
            e => panic!("{e}"),
        }
    }
}
