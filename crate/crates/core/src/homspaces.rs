//! Under-categories and hom-groupoids over discs.
//!
//! For an n-groupoid `X`, an object `a` and a map `f : D^l -> X`, the
//! hom-groupoid from `a` into `f` is the level-(n-1) complex whose
//! k-simplices are pairs `(g, e)` with `g` a (k+1)-simplex of `X` whose
//! leading vertex is `a` and whose 0-face is `f(e)`; structure maps shift
//! the index map by one at the bottom. The mirrored version pins the last
//! vertex instead and moves the source along the disc.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::gpd::{self, FiniteGroupoid, GpdError, GroupoidMap};
use crate::kan::{self, KanError};
use crate::sset::{disc, disc_map, Horn, SSetError, SimplexIx, SimplicialMap, TruncatedSSet};

#[derive(Debug, Error)]
pub enum HomError {
    #[error("axiom precondition failed: {0}")]
    AxiomPrereqFailed(String),
    #[error("invalid witness: {0}")]
    InvalidWitness(String),
    #[error("maps disagree: {0}")]
    MapMismatch(String),
    #[error(transparent)]
    SSet(#[from] SSetError),
    #[error(transparent)]
    Kan(#[from] KanError),
    #[error(transparent)]
    Gpd(#[from] GpdError),
}

/// Which end of the underlying simplices is pinned to the anchor object.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HomDirection {
    /// `Hom(a, f)`: leading vertex pinned, 0-face moves along the disc
    FromAnchor,
    /// `Hom(f, b)`: trailing vertex pinned, top face moves along the disc
    IntoAnchor,
}

/// A hom-groupoid over a disc: the result complex lives one level below the
/// base, fibered over the disc by the projection.
#[derive(Debug, Clone)]
pub struct HomGroupoid {
    pub base: Arc<TruncatedSSet>,
    pub anchor: SimplexIx,
    pub direction: HomDirection,
    /// the disc parameter `l`
    pub l: usize,
    /// `f : D^l -> base` at the base level
    pub map: SimplicialMap,
    /// the level-(n-1) hom complex
    pub result: Arc<TruncatedSSet>,
    /// `D^l` one level below, the projection target
    pub disc_below: Arc<TruncatedSSet>,
    pub projection: SimplicialMap,
    /// per result dimension, the underlying `(g, e)` pairs
    pairs: Vec<Vec<(SimplexIx, SimplexIx)>>,
    pair_index: Vec<HashMap<(SimplexIx, SimplexIx), SimplexIx>>,
}

impl HomGroupoid {
    pub fn pair(&self, dim: usize, s: SimplexIx) -> (SimplexIx, SimplexIx) {
        self.pairs[dim][s as usize]
    }

    pub fn lookup_pair(&self, dim: usize, g: SimplexIx, e: SimplexIx) -> Option<SimplexIx> {
        self.pair_index[dim].get(&(g, e)).copied()
    }
}

/// The constant map `D^0 -> x` at an object.
pub fn const_disc_map(x: Arc<TruncatedSSet>, b: SimplexIx) -> SimplicialMap {
    let n = x.n();
    let d0 = Arc::new(disc(0, n));
    let comps = (0..=n + 1).map(|k| vec![x.constant(k, b)]).collect();
    SimplicialMap::new(d0, x, comps).expect("constant maps are simplicial")
}

fn build_hom(
    x: Arc<TruncatedSSet>,
    a: SimplexIx,
    f: &SimplicialMap,
    direction: HomDirection,
) -> Result<HomGroupoid, HomError> {
    if !Arc::ptr_eq(&f.target, &x) {
        return Err(HomError::MapMismatch("f does not land in the base".into()));
    }
    let n = x.n();
    if n == 0 {
        return Err(HomError::AxiomPrereqFailed(
            "hom-groupoids need base level >= 1".into(),
        ));
    }
    let dl = f.source.clone();
    let l = dl.card(0) - 1;
    let level = n - 1;
    let mut pairs: Vec<Vec<(SimplexIx, SimplexIx)>> = Vec::with_capacity(level + 2);
    let mut pair_index: Vec<HashMap<(SimplexIx, SimplexIx), SimplexIx>> = Vec::new();
    for k in 0..=level + 1 {
        let mut dim_pairs = Vec::new();
        let mut dim_index = HashMap::new();
        for e in 0..dl.card(k) as SimplexIx {
            let fe = f.apply(k, e);
            let candidates: Vec<SimplexIx> = match direction {
                HomDirection::FromAnchor => x
                    .simplices_with_face(k + 1, 0, fe)
                    .iter()
                    .copied()
                    .filter(|&g| x.vertex(k + 1, 0, g) == a)
                    .collect(),
                HomDirection::IntoAnchor => x
                    .simplices_with_face(k + 1, k + 1, fe)
                    .iter()
                    .copied()
                    .filter(|&g| x.vertex(k + 1, k + 1, g) == a)
                    .collect(),
            };
            for g in candidates {
                dim_index.insert((g, e), dim_pairs.len() as SimplexIx);
                dim_pairs.push((g, e));
            }
        }
        pairs.push(dim_pairs);
        pair_index.push(dim_index);
    }

    let id_of =
        |k: usize, g: SimplexIx, e: SimplexIx| format!("{}@{}", x.id(k + 1, g), dl.id(k, e));
    let mut raw = crate::sset::RawSSet {
        n: level,
        simplices: (0..=level + 1)
            .map(|k| pairs[k].iter().map(|&(g, e)| id_of(k, g, e)).collect())
            .collect(),
        faces: HashMap::new(),
        degens: HashMap::new(),
    };
    for k in 1..=level + 1 {
        for i in 0..=k {
            let tbl = pairs[k]
                .iter()
                .map(|&(g, e)| {
                    let g2 = match direction {
                        HomDirection::FromAnchor => x.face(k + 1, i + 1, g),
                        HomDirection::IntoAnchor => x.face(k + 1, i, g),
                    };
                    let e2 = dl.face(k, i, e);
                    (id_of(k, g, e), id_of(k - 1, g2, e2))
                })
                .collect();
            raw.faces.insert((k, i), tbl);
        }
    }
    for k in 0..=level {
        for j in 0..=k {
            let tbl = pairs[k]
                .iter()
                .map(|&(g, e)| {
                    let g2 = match direction {
                        HomDirection::FromAnchor => x.degen(k + 1, j + 1, g),
                        HomDirection::IntoAnchor => x.degen(k + 1, j, g),
                    };
                    let e2 = dl.degen(k, j, e);
                    (id_of(k, g, e), id_of(k + 1, g2, e2))
                })
                .collect();
            raw.degens.insert((k, j), tbl);
        }
    }
    let result = Arc::new(TruncatedSSet::build(raw)?);
    let disc_below = Arc::new(disc(l, level));
    let proj_comps: Vec<Vec<SimplexIx>> = (0..=level + 1)
        .map(|k| {
            pairs[k]
                .iter()
                .map(|&(_, e)| disc_below.lookup(k, dl.id(k, e)).expect("same word ids"))
                .collect()
        })
        .collect();
    let projection = SimplicialMap::new(result.clone(), disc_below.clone(), proj_comps)?;
    Ok(HomGroupoid {
        base: x,
        anchor: a,
        direction,
        l,
        map: f.clone(),
        result,
        disc_below,
        projection,
        pairs,
        pair_index,
    })
}

/// `Hom(a, f)` for `f : D^l -> X`; requires the groupoid axioms on `X`.
pub fn hom_left_disc(
    x: Arc<TruncatedSSet>,
    a: SimplexIx,
    f: &SimplicialMap,
) -> Result<HomGroupoid, HomError> {
    if !kan::check_n_groupoid(&x).ok() {
        return Err(HomError::AxiomPrereqFailed("base is not an n-groupoid".into()));
    }
    build_hom(x, a, f, HomDirection::FromAnchor)
}

/// `Hom(a, b)` between objects: the disc parameter is a point.
pub fn hom_left(x: Arc<TruncatedSSet>, a: SimplexIx, b: SimplexIx) -> Result<HomGroupoid, HomError> {
    let f = const_disc_map(x.clone(), b);
    hom_left_disc(x, a, &f)
}

/// The mirrored hom-groupoid `Hom(f, b)`: source moving along the disc,
/// target pinned at `b`.
pub fn hom_right_disc(
    x: Arc<TruncatedSSet>,
    f: &SimplicialMap,
    b: SimplexIx,
) -> Result<HomGroupoid, HomError> {
    if !kan::check_n_groupoid(&x).ok() {
        return Err(HomError::AxiomPrereqFailed("base is not an n-groupoid".into()));
    }
    build_hom(x, b, f, HomDirection::IntoAnchor)
}

// ---------------------------------------------------------------------------
// under-categories

/// The under-category `v\X` at level n, with the projection to `X` sending
/// a simplex to its 0-face. The top dimension comes from the extension
/// `X_{n+2} = Cyc(n+2)`.
pub fn under(
    x: Arc<TruncatedSSet>,
    v: SimplexIx,
) -> Result<(Arc<TruncatedSSet>, SimplicialMap), HomError> {
    if !kan::check_n_category(&x).ok() {
        return Err(HomError::AxiomPrereqFailed("base is not an n-category".into()));
    }
    let n = x.n();
    let mut members: Vec<Vec<SimplexIx>> = Vec::new();
    for k in 0..=n {
        members.push(
            (0..x.card(k + 1) as SimplexIx)
                .filter(|&g| x.vertex(k + 1, 0, g) == v)
                .collect(),
        );
    }
    let top_tuples: Vec<Vec<SimplexIx>> = x
        .cycles(n + 1)
        .into_iter()
        .map(|c| c.faces)
        .filter(|faces| x.vertex(n + 1, 0, faces[1]) == v)
        .collect();
    let tuple_id = |faces: &[SimplexIx]| {
        let names: Vec<&str> = faces.iter().map(|&f| x.id(n + 1, f)).collect();
        format!("c({})", names.join("|"))
    };
    let mut raw = crate::sset::RawSSet {
        n,
        simplices: (0..=n)
            .map(|k| members[k].iter().map(|&g| x.id(k + 1, g).to_string()).collect())
            .collect(),
        faces: HashMap::new(),
        degens: HashMap::new(),
    };
    raw.simplices.push(top_tuples.iter().map(|t| tuple_id(t)).collect());
    for k in 1..=n {
        for i in 0..=k {
            let tbl = members[k]
                .iter()
                .map(|&g| {
                    (
                        x.id(k + 1, g).to_string(),
                        x.id(k, x.face(k + 1, i + 1, g)).to_string(),
                    )
                })
                .collect();
            raw.faces.insert((k, i), tbl);
        }
    }
    for i in 0..=n + 1 {
        let tbl = top_tuples
            .iter()
            .map(|t| (tuple_id(t), x.id(n + 1, t[i + 1]).to_string()))
            .collect();
        raw.faces.insert((n + 1, i), tbl);
    }
    for k in 0..n {
        for j in 0..=k {
            let tbl = members[k]
                .iter()
                .map(|&g| {
                    (
                        x.id(k + 1, g).to_string(),
                        x.id(k + 2, x.degen(k + 1, j + 1, g)).to_string(),
                    )
                })
                .collect();
            raw.degens.insert((k, j), tbl);
        }
    }
    for j in 0..=n {
        let tbl = members[n]
            .iter()
            .map(|&g| {
                let faces: Vec<SimplexIx> = (0..=n + 2)
                    .map(|i| degen_face(&x, n + 1, j + 1, g, i))
                    .collect();
                (x.id(n + 1, g).to_string(), tuple_id(&faces))
            })
            .collect();
        raw.degens.insert((n, j), tbl);
    }
    let u = Arc::new(TruncatedSSet::build(raw)?);
    let mut comps: Vec<Vec<SimplexIx>> = (0..=n)
        .map(|k| members[k].iter().map(|&g| x.face(k + 1, 0, g)).collect())
        .collect();
    comps.push(top_tuples.iter().map(|t| t[0]).collect());
    let projection = SimplicialMap::new(u.clone(), x.clone(), comps)?;
    Ok((u, projection))
}

/// Face `i` of `s_j(g)` for `g` of dimension `m`, valid also when the
/// degeneracy lands in the extension dimension.
fn degen_face(x: &TruncatedSSet, m: usize, j: usize, g: SimplexIx, i: usize) -> SimplexIx {
    if m + 1 <= x.n() + 1 {
        return x.face(m + 1, i, x.degen(m, j, g));
    }
    if i == j || i == j + 1 {
        g
    } else if i < j {
        x.degen(m - 1, j - 1, x.face(m, i, g))
    } else {
        x.degen(m - 1, j, x.face(m, i - 1, g))
    }
}

// ---------------------------------------------------------------------------
// Kan fibrations and induced maps

#[derive(Debug, Clone)]
pub struct FibrationReport {
    pub ok: bool,
    pub failures: Vec<String>,
}

/// Exhaustive lifting check: for every horn in the source and every
/// compatible filler downstairs, a lift exists; at the top dimensions the
/// lift is also unique.
pub fn is_kan_fibration(p: &SimplicialMap) -> FibrationReport {
    let s = &*p.source;
    let t = &*p.target;
    let n = s.n();
    let mut failures = Vec::new();
    for m in 1..=n + 1 {
        for i in 0..=m {
            let unique = m == n + 1;
            s.for_each_horn(m, i, |faces| {
                let h = Horn {
                    face_dim: m - 1,
                    omit: i,
                    faces: faces.to_vec(),
                };
                let downstairs: Vec<SimplexIx> =
                    faces.iter().map(|&f| p.apply(m - 1, f)).collect();
                let dh = Horn {
                    face_dim: m - 1,
                    omit: i,
                    faces: downstairs,
                };
                for e in kan::fillers(t, &dh) {
                    let lifts = kan::fillers(s, &h)
                        .into_iter()
                        .filter(|&g| p.apply(m, g) == e)
                        .count();
                    if lifts == 0 {
                        failures.push(format!(
                            "no lift at dim {m}, index {i}, filler `{}`",
                            t.id(m, e)
                        ));
                    } else if unique && lifts > 1 {
                        failures.push(format!(
                            "non-unique lift at dim {m}, index {i}, filler `{}`",
                            t.id(m, e)
                        ));
                    }
                }
            });
        }
    }
    // extension dimension: completions are pinned on both sides
    let m = n + 2;
    let top = n + 1;
    for i in 0..=m {
        s.for_each_horn(m, i, |faces| {
            let slot = |j: usize| if j < i { j } else { j - 1 };
            let pinned: Vec<SimplexIx> = (0..=top)
                .map(|a| {
                    if a < i {
                        s.face(top, i - 1, faces[slot(a)])
                    } else {
                        s.face(top, i, faces[slot(a + 1)])
                    }
                })
                .collect();
            let down_pinned: Vec<SimplexIx> = pinned.iter().map(|&f| p.apply(top, f)).collect();
            if kan::simplices_with_boundary(t, top, &down_pinned).is_empty() {
                return;
            }
            let lifts = kan::simplices_with_boundary(s, top, &pinned).len();
            if lifts != 1 {
                failures.push(format!("extension-dimension lift count {lifts} at index {i}"));
            }
        });
    }
    FibrationReport {
        ok: failures.is_empty(),
        failures,
    }
}

/// The induced map `Hom(a, f∘h) -> Hom(a, f)` for `h : {0..r} -> {0..l}`,
/// acting as the identity on the base simplex and by `h` on the disc word.
pub fn induced_map(
    hom_fh: &HomGroupoid,
    hom_f: &HomGroupoid,
    h: &[usize],
) -> Result<SimplicialMap, HomError> {
    if !Arc::ptr_eq(&hom_fh.base, &hom_f.base) || hom_fh.anchor != hom_f.anchor {
        return Err(HomError::MapMismatch(
            "hom-groupoids built from different base data".into(),
        ));
    }
    let level = hom_f.result.n();
    let base_n = hom_f.base.n();
    let word_map_base = disc_map(h, hom_f.l, base_n);
    for k in 0..=base_n + 1 {
        for e in 0..hom_fh.map.source.card(k) as SimplexIx {
            let word = word_map_base.target.id(k, word_map_base.apply(k, e));
            let in_f_disc = hom_f.map.source.lookup(k, word).expect("same word ids");
            if hom_f.map.apply(k, in_f_disc) != hom_fh.map.apply(k, e) {
                return Err(HomError::MapMismatch(format!(
                    "hom source is not the composite along h at dim {k}"
                )));
            }
        }
    }
    let word_map = disc_map(h, hom_f.l, level);
    let comps: Vec<Vec<SimplexIx>> = (0..=level + 1)
        .map(|k| {
            hom_fh.pairs[k]
                .iter()
                .map(|&(g, e)| {
                    let word = word_map.target.id(k, word_map.apply(k, e));
                    let e_tgt = hom_f.map.source.lookup(k, word).expect("same word ids");
                    hom_f
                        .lookup_pair(k, g, e_tgt)
                        .expect("image pair exists in the target hom")
                })
                .collect()
        })
        .collect();
    Ok(SimplicialMap::new(
        hom_fh.result.clone(),
        hom_f.result.clone(),
        comps,
    )?)
}

// ---------------------------------------------------------------------------
// edges and 2-cells as disc maps

/// The canonical 2-cell exhibiting an inverse for an edge: the first `h`
/// with `d_0̂(h) = f`, `d_1̂(h)` degenerate at the target.
pub fn canonical_edge_witness(x: &TruncatedSSet, f: SimplexIx) -> Option<SimplexIx> {
    let b = x.vertex(1, 1, f);
    let one_b = x.constant(1, b);
    x.simplices_with_face(2, 0, f)
        .iter()
        .copied()
        .find(|&h| x.face(2, 1, h) == one_b)
}

/// All inverse witnesses for an edge.
pub fn edge_witnesses(x: &TruncatedSSet, f: SimplexIx) -> Vec<SimplexIx> {
    let b = x.vertex(1, 1, f);
    let one_b = x.constant(1, b);
    x.simplices_with_face(2, 0, f)
        .iter()
        .copied()
        .filter(|&h| x.face(2, 1, h) == one_b)
        .collect()
}

/// Canonical inverse of an edge: the last face of the canonical witness.
pub fn invert_edge(x: &TruncatedSSet, f: SimplexIx) -> Result<SimplexIx, HomError> {
    let h = canonical_edge_witness(x, f)
        .ok_or_else(|| HomError::AxiomPrereqFailed("edge has no inverse witness".into()))?;
    Ok(x.face(2, 2, h))
}

/// The unique filler of a top-dimension horn, returning its missing face.
fn fill_face(x: &TruncatedSSet, omit: usize, faces: Vec<SimplexIx>) -> Result<SimplexIx, HomError> {
    let m = faces.len(); // horn at dimension faces.len()
    let h = Horn {
        face_dim: m - 1,
        omit,
        faces,
    };
    let fs = kan::fillers(x, &h);
    if fs.len() != 1 {
        return Err(HomError::InvalidWitness(format!(
            "horn has {} fillers at the top dimension",
            fs.len()
        )));
    }
    Ok(x.face(m, omit, fs[0]))
}

/// The cell with faces `(f⁻¹, 1_a, f)` determined by an inverse witness.
fn retrace_cell(x: &TruncatedSSet, witness: SimplexIx, f: SimplexIx) -> Result<SimplexIx, HomError> {
    fill_face(
        x,
        3,
        vec![witness, x.degen(1, 0, f), x.degen(1, 1, f)],
    )
}

fn fill_dim3(
    x: &TruncatedSSet,
    dl: &TruncatedSSet,
    assign: &mut [HashMap<String, SimplexIx>],
) -> Result<(), HomError> {
    for e in 0..dl.card(3) as SimplexIx {
        let w = dl.id(3, e).to_string();
        let faces: Vec<SimplexIx> = (0..=3)
            .map(|i| {
                let mut sub = w.clone();
                sub.remove(i);
                assign[2][&sub]
            })
            .collect();
        let cands = kan::simplices_with_boundary(x, 3, &faces);
        if cands.len() != 1 {
            return Err(HomError::InvalidWitness(format!(
                "word {w} has {} fillers; the cell assignments do not close",
                cands.len()
            )));
        }
        assign[3].insert(w, cands[0]);
    }
    Ok(())
}

fn finish_disc_map(
    x: &Arc<TruncatedSSet>,
    dl: &Arc<TruncatedSSet>,
    assign: &[HashMap<String, SimplexIx>],
) -> Result<SimplicialMap, HomError> {
    let comps: Vec<Vec<SimplexIx>> = (0..=3)
        .map(|k| {
            (0..dl.card(k) as SimplexIx)
                .map(|e| assign[k][dl.id(k, e)])
                .collect()
        })
        .collect();
    Ok(SimplicialMap::new(dl.clone(), x.clone(), comps)?)
}

/// The map `D^1 -> X` determined by an edge `f : a -> b` and a chosen
/// inverse witness (the 2-cell mapped to by the word `101`).
pub fn edge_disc_map(
    x: Arc<TruncatedSSet>,
    f: SimplexIx,
    witness: SimplexIx,
) -> Result<SimplicialMap, HomError> {
    if x.n() != 2 {
        return Err(HomError::AxiomPrereqFailed(
            "edge-to-disc maps are built at level 2".into(),
        ));
    }
    let a = x.vertex(1, 0, f);
    let b = x.vertex(1, 1, f);
    let one_b = x.constant(1, b);
    if x.face(2, 0, witness) != f || x.face(2, 1, witness) != one_b {
        return Err(HomError::InvalidWitness(
            "witness must have faces (f, 1_b, f⁻¹)".into(),
        ));
    }
    let f_inv = x.face(2, 2, witness);
    let d1 = Arc::new(disc(1, 2));
    let g010 = retrace_cell(&x, witness, f)?;

    let mut assign: Vec<HashMap<String, SimplexIx>> = vec![HashMap::new(); 4];
    assign[0].insert("0".into(), a);
    assign[0].insert("1".into(), b);
    for (w, g) in [
        ("00", x.constant(1, a)),
        ("11", one_b),
        ("01", f),
        ("10", f_inv),
    ] {
        assign[1].insert(w.into(), g);
    }
    for e in 0..d1.card(2) as SimplexIx {
        let w = d1.id(2, e).to_string();
        let g = match w.as_str() {
            "101" => witness,
            "010" => g010,
            _ => {
                let chars: Vec<char> = w.chars().collect();
                let j = (0..2).find(|&j| chars[j] == chars[j + 1]).unwrap();
                let mut sub = w.clone();
                sub.remove(j + 1);
                x.degen(1, j, assign[1][&sub])
            }
        };
        assign[2].insert(w, g);
    }
    fill_dim3(&x, &d1, &mut assign)?;
    finish_disc_map(&x, &d1, &assign)
}

/// The map `D^2 -> X` determined by a 2-cell, using canonical witnesses for
/// the edge inverses; every remaining cell comes from a unique top-dimension
/// horn filler, so the assignment is deterministic.
pub fn cell_disc_map(x: Arc<TruncatedSSet>, gamma: SimplexIx) -> Result<SimplicialMap, HomError> {
    if x.n() != 2 {
        return Err(HomError::AxiomPrereqFailed(
            "2-cell disc maps are built at level 2".into(),
        ));
    }
    let d2 = Arc::new(disc(2, 2));
    let verts = [
        x.vertex(2, 0, gamma),
        x.vertex(2, 1, gamma),
        x.vertex(2, 2, gamma),
    ];
    let mut assign: Vec<HashMap<String, SimplexIx>> = vec![HashMap::new(); 4];
    for (k, &v) in verts.iter().enumerate() {
        assign[0].insert(k.to_string(), v);
    }
    let fwd = [
        ("12", x.face(2, 0, gamma)),
        ("02", x.face(2, 1, gamma)),
        ("01", x.face(2, 2, gamma)),
    ];
    for (w, g) in fwd {
        assign[1].insert(w.into(), g);
    }
    for k in 0..3 {
        assign[1].insert(format!("{k}{k}"), x.constant(1, verts[k]));
    }
    let mut wits = HashMap::new();
    for (w, g) in fwd {
        let witness = canonical_edge_witness(&x, g)
            .ok_or_else(|| HomError::AxiomPrereqFailed("edge has no inverse witness".into()))?;
        let rev: String = w.chars().rev().collect();
        assign[1].insert(rev, x.face(2, 2, witness));
        wits.insert(w.to_string(), witness);
    }
    for e in 0..d2.card(2) as SimplexIx {
        let w = d2.id(2, e).to_string();
        let chars: Vec<char> = w.chars().collect();
        if let Some(j) = (0..2).find(|&j| chars[j] == chars[j + 1]) {
            let mut sub = w.clone();
            sub.remove(j + 1);
            let val = x.degen(1, j, assign[1][&sub]);
            assign[2].insert(w, val);
        }
    }
    for (w, _) in fwd {
        let witness = wits[w];
        let f = assign[1][w];
        let jij = format!("{}{}{}", &w[1..2], &w[0..1], &w[1..2]);
        let iji = format!("{}{}{}", &w[0..1], &w[1..2], &w[0..1]);
        assign[2].insert(jij, witness);
        assign[2].insert(iji, retrace_cell(&x, witness, f)?);
    }
    assign[2].insert("012".into(), gamma);
    // the remaining permuted words, each from a horn whose other three
    // faces are already assigned
    let fills: [(&str, usize, [&str; 3]); 5] = [
        ("021", 1, ["121", "011", "012"]), // word 0121
        ("102", 2, ["012", "112", "101"]), // word 1012
        ("120", 3, ["202", "102", "122"]), // word 1202
        ("201", 3, ["012", "212", "202"]), // word 2012
        ("210", 3, ["102", "202", "212"]), // word 2102
    ];
    for (target, omit, faces) in fills {
        let fv: Vec<SimplexIx> = faces.iter().map(|w| assign[2][*w]).collect();
        let v = fill_face(&x, omit, fv)?;
        assign[2].insert(target.to_string(), v);
    }
    fill_dim3(&x, &d2, &mut assign)?;
    finish_disc_map(&x, &d2, &assign)
}

// ---------------------------------------------------------------------------
// the explicit 2-dimensional construction

/// The hom-groupoid over an edge of a 2-groupoid, built directly from the
/// four morphism sectors with tetrahedron filling for composition.
pub fn hom_edge_explicit(
    x: Arc<TruncatedSSet>,
    v: SimplexIx,
    f: SimplexIx,
    witness: SimplexIx,
) -> Result<FiniteGroupoid, HomError> {
    if x.n() != 2 || !kan::check_n_groupoid(&x).ok() {
        return Err(HomError::AxiomPrereqFailed("base must be a 2-groupoid".into()));
    }
    let a = x.vertex(1, 0, f);
    let b = x.vertex(1, 1, f);
    let one_a = x.constant(1, a);
    let one_b = x.constant(1, b);
    if x.face(2, 0, witness) != f || x.face(2, 1, witness) != one_b {
        return Err(HomError::InvalidWitness(
            "witness must have faces (f, 1_b, f⁻¹)".into(),
        ));
    }
    let f_inv = x.face(2, 2, witness);
    let inv_cell = retrace_cell(&x, witness, f)?;

    let edges_to = |t: SimplexIx| -> Vec<SimplexIx> {
        (0..x.card(1) as SimplexIx)
            .filter(|&g| x.vertex(1, 0, g) == v && x.vertex(1, 1, g) == t)
            .collect()
    };
    let a_objs = edges_to(a);
    let b_objs = edges_to(b);
    let obj_ids: Vec<String> = a_objs
        .iter()
        .map(|&g| format!("A:{}", x.id(1, g)))
        .chain(b_objs.iter().map(|&g| format!("B:{}", x.id(1, g))))
        .collect();
    let pos = |side: u8, g: SimplexIx| -> u32 {
        match side {
            0 => a_objs.iter().position(|&o| o == g).unwrap() as u32,
            _ => (a_objs.len() + b_objs.iter().position(|&o| o == g).unwrap()) as u32,
        }
    };

    let sector = |type_edge: SimplexIx| -> Vec<SimplexIx> {
        x.simplices_with_face(2, 0, type_edge)
            .iter()
            .copied()
            .filter(|&s| x.vertex(2, 0, s) == v)
            .collect()
    };
    let sectors: [(char, SimplexIx, u8, u8); 4] = [
        ('A', one_a, 0, 0),
        ('B', one_b, 1, 1),
        ('F', f, 0, 1),
        ('R', f_inv, 1, 0),
    ];
    let mut mor_ids = Vec::new();
    let mut mor_data: Vec<(char, SimplexIx)> = Vec::new();
    let mut dom = Vec::new();
    let mut cod = Vec::new();
    for &(tag, type_edge, src_side, dst_side) in &sectors {
        for s in sector(type_edge) {
            mor_ids.push(format!("{tag}:{}", x.id(2, s)));
            mor_data.push((tag, s));
            dom.push(pos(src_side, x.face(2, 2, s)));
            cod.push(pos(dst_side, x.face(2, 1, s)));
        }
    }
    // connecting cell per composable sector pair; its faces are
    // (type of m2, composite type, type of m1)
    let mut conn: HashMap<(char, char), SimplexIx> = HashMap::new();
    conn.insert(('A', 'A'), x.degen(1, 0, one_a));
    conn.insert(('B', 'B'), x.degen(1, 0, one_b));
    conn.insert(('A', 'F'), x.degen(1, 0, f));
    conn.insert(('F', 'B'), x.degen(1, 1, f));
    conn.insert(('B', 'R'), x.degen(1, 0, f_inv));
    conn.insert(('R', 'A'), x.degen(1, 1, f_inv));
    conn.insert(('F', 'R'), inv_cell);
    conn.insert(('R', 'F'), witness);
    let composite_tag = |t1: char, t2: char| -> Option<char> {
        Some(match (t1, t2) {
            ('A', 'A') => 'A',
            ('B', 'B') => 'B',
            ('A', 'F') | ('F', 'B') => 'F',
            ('B', 'R') | ('R', 'A') => 'R',
            ('F', 'R') => 'A',
            ('R', 'F') => 'B',
            _ => return None,
        })
    };
    let xr = &*x;
    let compose = |m2: u32, m1: u32| -> Option<u32> {
        let (t1, s1) = mor_data[m1 as usize];
        let (t2, s2) = mor_data[m2 as usize];
        let t3 = composite_tag(t1, t2)?;
        let c = *conn.get(&(t1, t2))?;
        let h = Horn {
            face_dim: 2,
            omit: 2,
            faces: vec![c, s2, s1],
        };
        let fs = kan::fillers(xr, &h);
        if fs.len() != 1 {
            return None;
        }
        let out = xr.face(3, 2, fs[0]);
        mor_data
            .iter()
            .position(|&(t, s)| t == t3 && s == out)
            .map(|k| k as u32)
    };
    Ok(FiniteGroupoid::from_parts(
        obj_ids, mor_ids, dom, cod, compose,
    )?)
}

/// Convert a level-1 hom complex into an ordinary groupoid.
pub fn hom_to_groupoid(h: &HomGroupoid) -> Result<FiniteGroupoid, HomError> {
    Ok(gpd::from_1groupoid(&h.result)?)
}

/// Transport a simplicial map between level-1 hom complexes to a functor
/// between their groupoid forms, matching simplices by identifier.
pub fn groupoid_map_from_simplicial(
    src: &Arc<FiniteGroupoid>,
    tgt: &Arc<FiniteGroupoid>,
    f: &SimplicialMap,
) -> Result<GroupoidMap, HomError> {
    let on_obj = src
        .objects()
        .map(|o| {
            let s = f.source.lookup(0, src.object_id(o)).expect("object id");
            tgt.object(f.target.id(0, f.apply(0, s))).expect("image object")
        })
        .collect();
    let on_mor = src
        .morphisms()
        .map(|m| {
            let s = f.source.lookup(1, src.morphism_id(m)).expect("morphism id");
            tgt.morphism(f.target.id(1, f.apply(1, s))).expect("image morphism")
        })
        .collect();
    Ok(GroupoidMap::new(src.clone(), tgt.clone(), on_obj, on_mor)?)
}

// ---------------------------------------------------------------------------
// composition corollary

#[derive(Debug, Clone)]
pub struct HomCompReport {
    pub pushout_iso: bool,
    pub composite_iso: bool,
    pub failures: Vec<String>,
}

impl HomCompReport {
    pub fn ok(&self) -> bool {
        self.pushout_iso && self.composite_iso
    }
}

/// For a 2-groupoid and `γ : D^2 -> X`: the hom over γ is the glued pushout
/// of the homs over the outer edges, and the hom over the long edge is the
/// co-span composite of the homs over the short edges.
pub fn hom_comp_check(
    x: Arc<TruncatedSSet>,
    a: SimplexIx,
    gamma: &SimplicialMap,
) -> Result<HomCompReport, HomError> {
    let mut failures = Vec::new();
    let n = x.n();
    let full = hom_left_disc(x.clone(), a, gamma)?;
    let h01 = hom_left_disc(x.clone(), a, &gamma.compose(&disc_map(&[0, 1], 2, n)))?;
    let h12 = hom_left_disc(x.clone(), a, &gamma.compose(&disc_map(&[1, 2], 2, n)))?;
    let h02 = hom_left_disc(x.clone(), a, &gamma.compose(&disc_map(&[0, 2], 2, n)))?;
    let hv: Vec<HomGroupoid> = (0..3)
        .map(|k| hom_left_disc(x.clone(), a, &gamma.compose(&disc_map(&[k], 2, n))))
        .collect::<Result<_, _>>()?;

    let g01 = Arc::new(hom_to_groupoid(&h01)?);
    let g12 = Arc::new(hom_to_groupoid(&h12)?);
    let g02 = Arc::new(hom_to_groupoid(&h02)?);
    let gfull = Arc::new(hom_to_groupoid(&full)?);
    let gv: Vec<Arc<FiniteGroupoid>> = hv
        .iter()
        .map(|h| Ok(Arc::new(hom_to_groupoid(h)?)))
        .collect::<Result<_, HomError>>()?;

    let lift = |src: &Arc<FiniteGroupoid>,
                tgt: &Arc<FiniteGroupoid>,
                hom_src: &HomGroupoid,
                hom_tgt: &HomGroupoid,
                phi: &[usize]|
     -> Result<GroupoidMap, HomError> {
        groupoid_map_from_simplicial(src, tgt, &induced_map(hom_src, hom_tgt, phi)?)
    };
    let i0_01 = lift(&gv[0], &g01, &hv[0], &h01, &[0])?;
    let i1_01 = lift(&gv[1], &g01, &hv[1], &h01, &[1])?;
    let i1_12 = lift(&gv[1], &g12, &hv[1], &h12, &[0])?;
    let i2_12 = lift(&gv[2], &g12, &hv[2], &h12, &[1])?;
    let i0_02 = lift(&gv[0], &g02, &hv[0], &h02, &[0])?;
    let i2_02 = lift(&gv[2], &g02, &hv[2], &h02, &[1])?;
    let j01 = lift(&g01, &gfull, &h01, &full, &[0, 1])?;
    let j12 = lift(&g12, &gfull, &h12, &full, &[1, 2])?;

    // part 1: glued pushout over the middle vertex collapses onto the hom
    // over the whole 2-simplex
    let (sub, _comparison, po) = gpd::variant_pushout(&i1_01, &i1_12)?;
    let cone = gpd::Cone {
        g1: j01.clone(),
        h1: j12.clone(),
        beta: gv[1]
            .objects()
            .map(|c| gfull.identity(j01.apply_obj(i1_01.apply_obj(c))))
            .collect(),
    };
    let mediator = gpd::check_pushout_universal(&po, &cone)?;
    let collapse = {
        let on_obj: Vec<u32> = sub
            .objects()
            .map(|o| mediator.apply_obj(po.p.object(sub.object_id(o)).unwrap()))
            .collect();
        let on_mor: Vec<u32> = sub
            .morphisms()
            .map(|m| mediator.apply_mor(po.p.morphism(sub.morphism_id(m)).unwrap()))
            .collect();
        GroupoidMap::new(sub.clone(), gfull.clone(), on_obj, on_mor)?
    };
    let bij = |n_tgt: usize, imgs: Vec<u32>| -> bool {
        let mut seen = vec![false; n_tgt];
        imgs.len() == n_tgt
            && imgs
                .into_iter()
                .all(|v| !std::mem::replace(&mut seen[v as usize], true))
    };
    let pushout_iso = bij(
        gfull.n_objects(),
        sub.objects().map(|o| collapse.apply_obj(o)).collect(),
    ) && bij(
        gfull.n_morphisms(),
        sub.morphisms().map(|m| collapse.apply_mor(m)).collect(),
    );
    if !pushout_iso {
        failures.push("glued pushout does not collapse onto the full hom".into());
    }

    // part 2: the hom over the long edge is the co-span composite of the
    // homs over the short edges
    let k1 = gpd::CoSpan::new(i0_01, i1_01)?;
    let k2 = gpd::CoSpan::new(i1_12, i2_12)?;
    let composed = gpd::cospan_compose(&k1, &k2)?;
    let k02 = gpd::CoSpan::new(i0_02, i2_02)?;
    let isos = gpd::cospan_isos(&composed, &k02)?;
    let composite_iso = !isos.is_empty();
    if !composite_iso {
        failures.push("co-span composite is not isomorphic to the long-edge hom".into());
    }

    Ok(HomCompReport {
        pushout_iso,
        composite_iso,
        failures,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit;

    fn z2_nerve() -> Arc<TruncatedSSet> {
        Arc::new(testkit::nerve_group(&testkit::cyclic(2)).unwrap())
    }

    fn z3_cm_nerve() -> Arc<TruncatedSSet> {
        Arc::new(testkit::nerve_crossed_module(&testkit::cm_from_h(testkit::cyclic(3))).unwrap())
    }

    #[test]
    fn hom_of_group_nerve_is_its_element_set() {
        let x = z2_nerve();
        let h = hom_left(x, 0, 0).unwrap();
        assert_eq!(h.result.n(), 0);
        assert_eq!(h.result.card(0), 2);
        assert!(kan::check_n_groupoid(&h.result).ok());
    }

    #[test]
    fn hom_of_crossed_module_nerve_is_one_object_three_morphisms() {
        let x = z3_cm_nerve();
        let h = hom_left(x, 0, 0).unwrap();
        assert_eq!(h.result.n(), 1);
        assert_eq!(h.result.card(0), 1);
        assert_eq!(h.result.card(1), 3);
        assert!(kan::check_n_groupoid(&h.result).ok());
    }

    #[test]
    fn under_category_of_z2_nerve() {
        let x = z2_nerve();
        let (u, p) = under(x.clone(), 0).unwrap();
        assert_eq!(u.card(0), 2);
        // fiber of the projection over the object matches hom_left
        let h = hom_left(x, 0, 0).unwrap();
        let fiber: Vec<_> = (0..u.card(0) as SimplexIx)
            .filter(|&s| p.apply(0, s) == 0)
            .collect();
        assert_eq!(fiber.len(), h.result.card(0));
    }

    #[test]
    fn projection_is_kan_fibration() {
        let x = z3_cm_nerve();
        let h = hom_left(x, 0, 0).unwrap();
        let rep = is_kan_fibration(&h.projection);
        assert!(rep.ok, "{:?}", rep.failures);
    }

    #[test]
    fn collapse_to_point_is_kan_fibration() {
        let x = z2_nerve();
        let pt = Arc::new(disc(0, 1));
        let comps = (0..=2).map(|k| vec![0; x.card(k)]).collect();
        let p = SimplicialMap::new(x, pt, comps).unwrap();
        assert!(is_kan_fibration(&p).ok);
    }

    #[test]
    fn edge_disc_map_of_crossed_module_loop() {
        let x = z3_cm_nerve();
        let f = 0; // the identity loop
        let w = canonical_edge_witness(&x, f).unwrap();
        let gamma = edge_disc_map(x.clone(), f, w).unwrap();
        assert!(gamma.validate().is_ok());
        // the hom over the loop map has 2 objects per side
        let h = hom_left_disc(x, 0, &gamma).unwrap();
        assert!(kan::check_n_groupoid(&h.result).ok());
        assert_eq!(h.result.card(0), 2);
    }

    #[test]
    fn induced_maps_are_weak_equivalences() {
        let x = z3_cm_nerve();
        let f = 0;
        let w = canonical_edge_witness(&x, f).unwrap();
        let gamma = edge_disc_map(x.clone(), f, w).unwrap();
        let hom_f = hom_left_disc(x.clone(), 0, &gamma).unwrap();
        for phi in [[0usize], [1usize]] {
            let sub = gamma.compose(&disc_map(&phi, 1, 2));
            let hom_sub = hom_left_disc(x.clone(), 0, &sub).unwrap();
            let ind = induced_map(&hom_sub, &hom_f, &phi).unwrap();
            assert!(kan::is_weak_equivalence(&ind).unwrap().verdict);
        }
    }

    #[test]
    fn explicit_edge_hom_matches_general_construction() {
        let x = z3_cm_nerve();
        let f = 0;
        let w = canonical_edge_witness(&x, f).unwrap();
        let explicit = hom_edge_explicit(x.clone(), 0, f, w).unwrap();
        let gamma = edge_disc_map(x.clone(), f, w).unwrap();
        let h = hom_left_disc(x.clone(), 0, &gamma).unwrap();
        let general = hom_to_groupoid(&h).unwrap();
        assert_eq!(explicit.n_objects(), general.n_objects());
        assert_eq!(explicit.n_morphisms(), general.n_morphisms());
    }

    #[test]
    fn hom_comp_check_on_degenerate_cell() {
        let x = z3_cm_nerve();
        // a degenerate 2-cell over the identity edge
        let gamma2 = x.degen(1, 0, 0);
        let map = cell_disc_map(x.clone(), gamma2).unwrap();
        let rep = hom_comp_check(x, 0, &map).unwrap();
        assert!(rep.ok(), "{:?}", rep.failures);
    }
}
