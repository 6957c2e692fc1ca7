//! JSON file formats.
//!
//! Complexes: `{ "n": int, "simplices": {"<dim>": [ids]},
//! "faces": {"d^<i>@<m>": {id: id}}, "degeneracies": {"s^<j>@<m>": {id: id}} }`
//! where `d^i@m` is the i-th face map out of dimension `m` and `s^j@m` the
//! j-th degeneracy out of dimension `m`.
//!
//! Groupoids: `{ "objects": [...], "morphisms": [{"id","dom","cod"}...],
//! "comp": [[f, g, h]...] }` with `[f, g, h]` meaning `h = g ∘ f` (f first);
//! identities and inverses are inferred and verified.
//!
//! Maps: `{ "source": <complex>, "target": <complex>,
//! "components": {"<dim>": {id: id}} }`.
//!
//! Serialization is canonical (sorted keys, two-space indentation), so a
//! value round-trips byte-exactly through parse-then-serialize.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gpd::FiniteGroupoid;
use crate::sset::{RawSSet, SSetError, SimplicialMap, TruncatedSSet};

#[derive(Debug, Error)]
pub enum SerialError {
    #[error("invalid json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad key `{0}`: expected `{1}`")]
    BadKey(String, &'static str),
    #[error("missing dimension {0}")]
    MissingDimension(usize),
    #[error(transparent)]
    SSet(#[from] SSetError),
    #[error(transparent)]
    Gpd(#[from] crate::gpd::GpdError),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexFile {
    pub n: usize,
    pub simplices: BTreeMap<String, Vec<String>>,
    pub faces: BTreeMap<String, BTreeMap<String, String>>,
    pub degeneracies: BTreeMap<String, BTreeMap<String, String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MorphismFile {
    pub id: String,
    pub dom: String,
    pub cod: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupoidFile {
    pub objects: Vec<String>,
    pub morphisms: Vec<MorphismFile>,
    pub comp: Vec<[String; 3]>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MapFile {
    pub source: ComplexFile,
    pub target: ComplexFile,
    pub components: BTreeMap<String, BTreeMap<String, String>>,
}

fn parse_key(key: &str, prefix: char) -> Result<(usize, usize), SerialError> {
    // "<prefix>^<i>@<m>"
    let fail = || SerialError::BadKey(key.to_string(), "<kind>^<index>@<dimension>");
    let rest = key
        .strip_prefix(prefix)
        .and_then(|r| r.strip_prefix('^'))
        .ok_or_else(fail)?;
    let (i, m) = rest.split_once('@').ok_or_else(fail)?;
    Ok((
        m.parse().map_err(|_| fail())?,
        i.parse().map_err(|_| fail())?,
    ))
}

pub fn complex_from_file(file: &ComplexFile) -> Result<TruncatedSSet, SerialError> {
    let mut simplices = Vec::with_capacity(file.n + 2);
    for dim in 0..=file.n + 1 {
        let ids = file
            .simplices
            .get(&dim.to_string())
            .ok_or(SerialError::MissingDimension(dim))?;
        simplices.push(ids.clone());
    }
    let mut faces = HashMap::new();
    for (key, tbl) in &file.faces {
        let (m, i) = parse_key(key, 'd')?;
        faces.insert((m, i), tbl.clone().into_iter().collect());
    }
    let mut degens = HashMap::new();
    for (key, tbl) in &file.degeneracies {
        let (m, j) = parse_key(key, 's')?;
        degens.insert((m, j), tbl.clone().into_iter().collect());
    }
    Ok(TruncatedSSet::build(RawSSet {
        n: file.n,
        simplices,
        faces,
        degens,
    })?)
}

pub fn complex_to_file(x: &TruncatedSSet) -> ComplexFile {
    let n = x.n();
    let mut simplices = BTreeMap::new();
    for dim in 0..=n + 1 {
        simplices.insert(dim.to_string(), x.ids(dim).to_vec());
    }
    let mut faces = BTreeMap::new();
    for m in 1..=n + 1 {
        for i in 0..=m {
            let tbl: BTreeMap<String, String> = (0..x.card(m))
                .map(|s| {
                    (
                        x.id(m, s as u32).to_string(),
                        x.id(m - 1, x.face(m, i, s as u32)).to_string(),
                    )
                })
                .collect();
            faces.insert(format!("d^{i}@{m}"), tbl);
        }
    }
    let mut degeneracies = BTreeMap::new();
    for m in 0..=n {
        for j in 0..=m {
            let tbl: BTreeMap<String, String> = (0..x.card(m))
                .map(|s| {
                    (
                        x.id(m, s as u32).to_string(),
                        x.id(m + 1, x.degen(m, j, s as u32)).to_string(),
                    )
                })
                .collect();
            degeneracies.insert(format!("s^{j}@{m}"), tbl);
        }
    }
    ComplexFile {
        n,
        simplices,
        faces,
        degeneracies,
    }
}

pub fn groupoid_from_file(file: &GroupoidFile) -> Result<FiniteGroupoid, SerialError> {
    Ok(FiniteGroupoid::new(
        file.objects.clone(),
        file.morphisms
            .iter()
            .map(|m| (m.id.clone(), m.dom.clone(), m.cod.clone()))
            .collect(),
        file.comp
            .iter()
            .map(|[f, g, h]| (f.clone(), g.clone(), h.clone()))
            .collect(),
    )?)
}

pub fn groupoid_to_file(g: &FiniteGroupoid) -> GroupoidFile {
    GroupoidFile {
        objects: g.objects().map(|a| g.object_id(a).to_string()).collect(),
        morphisms: g
            .morphisms()
            .map(|m| MorphismFile {
                id: g.morphism_id(m).to_string(),
                dom: g.object_id(g.dom(m)).to_string(),
                cod: g.object_id(g.cod(m)).to_string(),
            })
            .collect(),
        comp: g
            .comp_entries()
            .into_iter()
            .map(|(f, gg, h)| [f, gg, h])
            .collect(),
    }
}

pub fn map_from_file(file: &MapFile) -> Result<SimplicialMap, SerialError> {
    let source = Arc::new(complex_from_file(&file.source)?);
    let target = Arc::new(complex_from_file(&file.target)?);
    let mut tables = Vec::with_capacity(source.n() + 2);
    for dim in 0..=source.n() + 1 {
        let tbl = file
            .components
            .get(&dim.to_string())
            .ok_or(SerialError::MissingDimension(dim))?;
        tables.push(tbl.clone().into_iter().collect::<HashMap<_, _>>());
    }
    Ok(SimplicialMap::from_ids(source, target, &tables)?)
}

pub fn map_to_file(f: &SimplicialMap) -> MapFile {
    let components = (0..=f.source.n() + 1)
        .map(|dim| {
            let tbl: BTreeMap<String, String> = (0..f.source.card(dim))
                .map(|s| {
                    (
                        f.source.id(dim, s as u32).to_string(),
                        f.target.id(dim, f.apply(dim, s as u32)).to_string(),
                    )
                })
                .collect();
            (dim.to_string(), tbl)
        })
        .collect();
    MapFile {
        source: complex_to_file(&f.source),
        target: complex_to_file(&f.target),
        components,
    }
}

/// Canonical serialization: stable key order, two-space indentation, one
/// trailing newline.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let mut out = serde_json::to_string_pretty(value).expect("serializable");
    out.push('\n');
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit;

    #[test]
    fn complex_roundtrip_is_exact() {
        let x = testkit::nerve_group(&testkit::cyclic(2)).unwrap();
        let file = complex_to_file(&x);
        let json = to_canonical_json(&file);
        let parsed: ComplexFile = serde_json::from_str(&json).unwrap();
        assert_eq!(to_canonical_json(&parsed), json);
        let back = complex_from_file(&parsed).unwrap();
        assert_eq!(back.card(1), x.card(1));
        assert_eq!(to_canonical_json(&complex_to_file(&back)), json);
    }

    #[test]
    fn groupoid_roundtrip_infers_structure() {
        let g = testkit::codiscrete(&["a", "b"]).unwrap();
        let file = groupoid_to_file(&g);
        let back = groupoid_from_file(&file).unwrap();
        assert_eq!(back.n_objects(), 2);
        assert_eq!(back.n_morphisms(), 4);
        assert_eq!(
            to_canonical_json(&groupoid_to_file(&back)),
            to_canonical_json(&file)
        );
    }

    #[test]
    fn malformed_complex_is_rejected() {
        let bad = r#"{ "n": 1, "simplices": {"0": ["a"]}, "faces": {}, "degeneracies": {} }"#;
        let parsed: ComplexFile = serde_json::from_str(bad).unwrap();
        assert!(complex_from_file(&parsed).is_err());
    }
}
