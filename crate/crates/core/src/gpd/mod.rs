//! Ordinary finite groupoids, the bridge to 1-truncated (and trivially
//! 2-truncated) complexes, pushouts along fully faithful maps, co-span
//! composition and isomorphism, and G-sets with the pushforward/pullback
//! adjunction.

mod gsets;
mod pushout;

pub use gsets::{check_adjunction, gset_pullback, gset_pushforward, GSet};
pub use pushout::{
    check_pushout_universal, classify_rep, cospan_compose, cospan_compose_full, cospan_isos,
    enumerate_functors, full_subgroupoid, pushout, variant_pushout, CoSpan, ComposedCoSpan, Cone,
    PMorRep, PushoutResult,
};

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::kan::{self, KanError};
use crate::sset::{RawSSet, SimplexIx, TruncatedSSet};

pub type ObjIx = u32;
pub type MorIx = u32;

#[derive(Debug, Error)]
pub enum GpdError {
    #[error("not a groupoid: {0}")]
    NotAGroupoid(String),
    #[error("not a functor: {0}")]
    NotAFunctor(String),
    #[error("map is not fully faithful: hom({a}, {b}) has {src} elements, image hom has {dst}")]
    NotFullyFaithful {
        a: String,
        b: String,
        src: usize,
        dst: usize,
    },
    #[error("unknown object `{0}`")]
    UnknownObject(String),
    #[error("unknown morphism `{0}`")]
    UnknownMorphism(String),
    #[error("axiom precondition failed: {0}")]
    AxiomPrereqFailed(String),
    #[error("no mediating map: {0}")]
    NoMediator(String),
    #[error("co-spans do not share the middle groupoid")]
    MiddleMismatch,
    #[error("co-span apex is not in normal form: {0}")]
    NotNormalForm(String),
    #[error("invalid G-set: {0}")]
    InvalidGSet(String),
    #[error(transparent)]
    Kan(#[from] KanError),
    #[error(transparent)]
    SSet(#[from] crate::sset::SSetError),
}

/// A finite groupoid: objects, morphisms, domain/codomain, a total
/// composition on matching pairs, identities and inverses. Identities and
/// inverses are inferred from the composition table and verified.
#[derive(Debug, Clone)]
pub struct FiniteGroupoid {
    obj_ids: Vec<String>,
    mor_ids: Vec<String>,
    obj_index: HashMap<String, ObjIx>,
    mor_index: HashMap<String, MorIx>,
    dom: Vec<ObjIx>,
    cod: Vec<ObjIx>,
    /// `comp[g][f] = g ∘ f` when `cod(f) = dom(g)`
    comp: Vec<Vec<Option<MorIx>>>,
    id_of: Vec<MorIx>,
    inv: Vec<MorIx>,
}

impl FiniteGroupoid {
    /// Build and validate. `morphisms` lists `(id, dom, cod)`; `comp` lists
    /// `(f, g, h)` meaning `h = g ∘ f` (so `cod(f) = dom(g)`).
    pub fn new(
        objects: Vec<String>,
        morphisms: Vec<(String, String, String)>,
        comp_entries: Vec<(String, String, String)>,
    ) -> Result<Self, GpdError> {
        let mut obj_index = HashMap::new();
        for (k, o) in objects.iter().enumerate() {
            if obj_index.insert(o.clone(), k as ObjIx).is_some() {
                return Err(GpdError::NotAGroupoid(format!("duplicate object `{o}`")));
            }
        }
        let mut mor_index = HashMap::new();
        let mut dom = Vec::new();
        let mut cod = Vec::new();
        let mut mor_ids = Vec::new();
        for (id, d, c) in &morphisms {
            if mor_index.insert(id.clone(), mor_ids.len() as MorIx).is_some() {
                return Err(GpdError::NotAGroupoid(format!("duplicate morphism `{id}`")));
            }
            mor_ids.push(id.clone());
            dom.push(*obj_index.get(d).ok_or_else(|| GpdError::UnknownObject(d.clone()))?);
            cod.push(*obj_index.get(c).ok_or_else(|| GpdError::UnknownObject(c.clone()))?);
        }
        let m = mor_ids.len();
        let mut comp = vec![vec![None; m]; m];
        for (f, g, h) in &comp_entries {
            let fi = *mor_index.get(f).ok_or_else(|| GpdError::UnknownMorphism(f.clone()))?;
            let gi = *mor_index.get(g).ok_or_else(|| GpdError::UnknownMorphism(g.clone()))?;
            let hi = *mor_index.get(h).ok_or_else(|| GpdError::UnknownMorphism(h.clone()))?;
            comp[gi as usize][fi as usize] = Some(hi);
        }
        let g = FiniteGroupoid {
            obj_ids: objects,
            mor_ids,
            obj_index,
            mor_index,
            dom,
            cod,
            comp,
            id_of: Vec::new(),
            inv: Vec::new(),
        };
        g.finish_validation()
    }

    /// Internal constructor from index-level data (composition as a closure).
    pub(crate) fn from_parts<F>(
        obj_ids: Vec<String>,
        mor_ids: Vec<String>,
        dom: Vec<ObjIx>,
        cod: Vec<ObjIx>,
        compose: F,
    ) -> Result<Self, GpdError>
    where
        F: Fn(MorIx, MorIx) -> Option<MorIx>,
    {
        let obj_index: HashMap<String, ObjIx> = obj_ids
            .iter()
            .enumerate()
            .map(|(k, o)| (o.clone(), k as ObjIx))
            .collect();
        let mor_index: HashMap<String, MorIx> = mor_ids
            .iter()
            .enumerate()
            .map(|(k, o)| (o.clone(), k as MorIx))
            .collect();
        if obj_index.len() != obj_ids.len() || mor_index.len() != mor_ids.len() {
            return Err(GpdError::NotAGroupoid("duplicate identifiers".into()));
        }
        let m = mor_ids.len();
        let mut comp = vec![vec![None; m]; m];
        for g in 0..m as MorIx {
            for f in 0..m as MorIx {
                if cod[f as usize] == dom[g as usize] {
                    comp[g as usize][f as usize] = compose(g, f);
                }
            }
        }
        let g = FiniteGroupoid {
            obj_ids,
            mor_ids,
            obj_index,
            mor_index,
            dom,
            cod,
            comp,
            id_of: Vec::new(),
            inv: Vec::new(),
        };
        g.finish_validation()
    }

    fn finish_validation(mut self) -> Result<Self, GpdError> {
        let m = self.mor_ids.len();
        // totality on matching pairs
        for g in 0..m {
            for f in 0..m {
                let defined = self.comp[g][f].is_some();
                let matching = self.cod[f] == self.dom[g];
                if defined != matching {
                    return Err(GpdError::NotAGroupoid(format!(
                        "composition `{}` ∘ `{}` {}",
                        self.mor_ids[g],
                        self.mor_ids[f],
                        if matching { "is missing" } else { "should not be defined" }
                    )));
                }
                if let Some(h) = self.comp[g][f] {
                    if self.dom[h as usize] != self.dom[f] || self.cod[h as usize] != self.cod[g] {
                        return Err(GpdError::NotAGroupoid(format!(
                            "composite `{}` has wrong endpoints",
                            self.mor_ids[h as usize]
                        )));
                    }
                }
            }
        }
        // associativity
        for f in 0..m {
            for g in 0..m {
                if self.cod[f] != self.dom[g] {
                    continue;
                }
                for h in 0..m {
                    if self.cod[g] != self.dom[h] {
                        continue;
                    }
                    let left = self.comp[h][self.comp[g][f].unwrap() as usize];
                    let right = self.comp[self.comp[h][g].unwrap() as usize][f];
                    if left != right {
                        return Err(GpdError::NotAGroupoid(format!(
                            "associativity fails on `{}`, `{}`, `{}`",
                            self.mor_ids[f], self.mor_ids[g], self.mor_ids[h]
                        )));
                    }
                }
            }
        }
        // identities
        let mut id_of = Vec::with_capacity(self.obj_ids.len());
        for a in 0..self.obj_ids.len() as ObjIx {
            let mut found = None;
            'cand: for e in 0..m {
                if self.dom[e] != a || self.cod[e] != a {
                    continue;
                }
                for f in 0..m {
                    if self.cod[f] == a && self.comp[e][f] != Some(f as MorIx) {
                        continue 'cand;
                    }
                    if self.dom[f] == a && self.comp[f][e] != Some(f as MorIx) {
                        continue 'cand;
                    }
                }
                found = Some(e as MorIx);
                break;
            }
            id_of.push(found.ok_or_else(|| {
                GpdError::NotAGroupoid(format!("no identity at `{}`", self.obj_ids[a as usize]))
            })?);
        }
        // inverses
        let mut inv = Vec::with_capacity(m);
        for f in 0..m {
            let a = self.dom[f];
            let b = self.cod[f];
            let found = (0..m).find(|&g| {
                self.dom[g] == b
                    && self.cod[g] == a
                    && self.comp[g][f] == Some(id_of[a as usize])
                    && self.comp[f][g] == Some(id_of[b as usize])
            });
            inv.push(found.ok_or_else(|| {
                GpdError::NotAGroupoid(format!("no inverse for `{}`", self.mor_ids[f]))
            })? as MorIx);
        }
        self.id_of = id_of;
        self.inv = inv;
        Ok(self)
    }

    pub fn n_objects(&self) -> usize {
        self.obj_ids.len()
    }

    pub fn n_morphisms(&self) -> usize {
        self.mor_ids.len()
    }

    pub fn object_id(&self, a: ObjIx) -> &str {
        &self.obj_ids[a as usize]
    }

    pub fn morphism_id(&self, f: MorIx) -> &str {
        &self.mor_ids[f as usize]
    }

    pub fn object(&self, id: &str) -> Option<ObjIx> {
        self.obj_index.get(id).copied()
    }

    pub fn morphism(&self, id: &str) -> Option<MorIx> {
        self.mor_index.get(id).copied()
    }

    pub fn dom(&self, f: MorIx) -> ObjIx {
        self.dom[f as usize]
    }

    pub fn cod(&self, f: MorIx) -> ObjIx {
        self.cod[f as usize]
    }

    /// `g ∘ f` (f first); None when the endpoints do not match.
    pub fn compose(&self, g: MorIx, f: MorIx) -> Option<MorIx> {
        self.comp[g as usize][f as usize]
    }

    pub fn identity(&self, a: ObjIx) -> MorIx {
        self.id_of[a as usize]
    }

    pub fn inverse(&self, f: MorIx) -> MorIx {
        self.inv[f as usize]
    }

    pub fn hom(&self, a: ObjIx, b: ObjIx) -> Vec<MorIx> {
        (0..self.mor_ids.len() as MorIx)
            .filter(|&f| self.dom(f) == a && self.cod(f) == b)
            .collect()
    }

    pub fn objects(&self) -> impl Iterator<Item = ObjIx> {
        0..self.obj_ids.len() as ObjIx
    }

    pub fn morphisms(&self) -> impl Iterator<Item = MorIx> {
        0..self.mor_ids.len() as MorIx
    }

    pub fn comp_entries(&self) -> Vec<(String, String, String)> {
        let mut out = Vec::new();
        for g in self.morphisms() {
            for f in self.morphisms() {
                if let Some(h) = self.compose(g, f) {
                    out.push((
                        self.morphism_id(f).to_string(),
                        self.morphism_id(g).to_string(),
                        self.morphism_id(h).to_string(),
                    ));
                }
            }
        }
        out
    }
}

/// A functor between finite groupoids.
#[derive(Debug, Clone)]
pub struct GroupoidMap {
    pub source: Arc<FiniteGroupoid>,
    pub target: Arc<FiniteGroupoid>,
    pub on_obj: Vec<ObjIx>,
    pub on_mor: Vec<MorIx>,
}

impl GroupoidMap {
    pub fn new(
        source: Arc<FiniteGroupoid>,
        target: Arc<FiniteGroupoid>,
        on_obj: Vec<ObjIx>,
        on_mor: Vec<MorIx>,
    ) -> Result<Self, GpdError> {
        let f = GroupoidMap {
            source,
            target,
            on_obj,
            on_mor,
        };
        f.validate()?;
        Ok(f)
    }

    pub fn identity(g: Arc<FiniteGroupoid>) -> GroupoidMap {
        GroupoidMap {
            on_obj: g.objects().collect(),
            on_mor: g.morphisms().collect(),
            source: g.clone(),
            target: g,
        }
    }

    pub fn validate(&self) -> Result<(), GpdError> {
        let s = &*self.source;
        let t = &*self.target;
        if self.on_obj.len() != s.n_objects() || self.on_mor.len() != s.n_morphisms() {
            return Err(GpdError::NotAFunctor("component size mismatch".into()));
        }
        for f in s.morphisms() {
            let img = self.on_mor[f as usize];
            if t.dom(img) != self.on_obj[s.dom(f) as usize]
                || t.cod(img) != self.on_obj[s.cod(f) as usize]
            {
                return Err(GpdError::NotAFunctor(format!(
                    "endpoints not preserved on `{}`",
                    s.morphism_id(f)
                )));
            }
        }
        for a in s.objects() {
            if self.on_mor[s.identity(a) as usize] != t.identity(self.on_obj[a as usize]) {
                return Err(GpdError::NotAFunctor(format!(
                    "identity not preserved at `{}`",
                    s.object_id(a)
                )));
            }
        }
        for g in s.morphisms() {
            for f in s.morphisms() {
                if let Some(h) = s.compose(g, f) {
                    let lhs = self.on_mor[h as usize];
                    let rhs = t
                        .compose(self.on_mor[g as usize], self.on_mor[f as usize])
                        .expect("endpoints preserved");
                    if lhs != rhs {
                        return Err(GpdError::NotAFunctor(format!(
                            "composition not preserved on `{}`, `{}`",
                            s.morphism_id(f),
                            s.morphism_id(g)
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn apply_obj(&self, a: ObjIx) -> ObjIx {
        self.on_obj[a as usize]
    }

    pub fn apply_mor(&self, f: MorIx) -> MorIx {
        self.on_mor[f as usize]
    }

    pub fn compose(&self, other: &GroupoidMap) -> GroupoidMap {
        // self ∘ other
        GroupoidMap {
            source: other.source.clone(),
            target: self.target.clone(),
            on_obj: other.on_obj.iter().map(|&a| self.on_obj[a as usize]).collect(),
            on_mor: other.on_mor.iter().map(|&f| self.on_mor[f as usize]).collect(),
        }
    }

    /// Bijective on every hom-set.
    pub fn is_fully_faithful(&self) -> bool {
        let s = &*self.source;
        let t = &*self.target;
        for a in s.objects() {
            for b in s.objects() {
                let src = s.hom(a, b);
                let tgt = t.hom(self.apply_obj(a), self.apply_obj(b));
                if src.len() != tgt.len() {
                    return false;
                }
                let mut images: Vec<MorIx> = src.iter().map(|&f| self.apply_mor(f)).collect();
                images.sort_unstable();
                images.dedup();
                if images.len() != src.len() {
                    return false;
                }
            }
        }
        true
    }

    /// Every target object admits a morphism from an image object.
    pub fn is_essentially_surjective(&self) -> bool {
        let t = &*self.target;
        t.objects().all(|b| {
            self.source
                .objects()
                .any(|a| !t.hom(self.apply_obj(a), b).is_empty())
        })
    }

    /// Equivalence of groupoids: fully faithful and essentially surjective.
    /// Agrees with the simplicial weak-equivalence check on nerves.
    pub fn is_equivalence(&self) -> bool {
        self.is_fully_faithful() && self.is_essentially_surjective()
    }
}

// ---------------------------------------------------------------------------
// nerve bridges

/// The 1-truncated nerve: `G_2` is the set of composable pairs, with the two
/// projections and the composition as faces.
pub fn to_1groupoid(g: &FiniteGroupoid) -> TruncatedSSet {
    nerve_truncated(g, 1)
}

/// The 2-truncated nerve of an ordinary groupoid (only identity 2-cells):
/// dimension 3 holds the composable triples.
pub fn to_2groupoid(g: &FiniteGroupoid) -> TruncatedSSet {
    nerve_truncated(g, 2)
}

fn nerve_truncated(g: &FiniteGroupoid, n: usize) -> TruncatedSSet {
    assert!(n == 1 || n == 2);
    let pair_id = |f1: MorIx, f2: MorIx| {
        format!("({},{})", g.morphism_id(f1), g.morphism_id(f2))
    };
    let triple_id = |f1: MorIx, f2: MorIx, f3: MorIx| {
        format!(
            "({},{},{})",
            g.morphism_id(f1),
            g.morphism_id(f2),
            g.morphism_id(f3)
        )
    };
    let mut pairs = Vec::new();
    for f1 in g.morphisms() {
        for f2 in g.morphisms() {
            if g.cod(f1) == g.dom(f2) {
                pairs.push((f1, f2));
            }
        }
    }
    let mut raw = RawSSet {
        n,
        simplices: vec![
            g.obj_ids.clone(),
            g.mor_ids.clone(),
            pairs.iter().map(|&(a, b)| pair_id(a, b)).collect(),
        ],
        faces: HashMap::new(),
        degens: HashMap::new(),
    };
    let mor_id = |f: MorIx| g.morphism_id(f).to_string();
    // dim 1 faces: d_0 = codomain, d_1 = domain
    raw.faces.insert(
        (1, 0),
        g.morphisms().map(|f| (mor_id(f), g.object_id(g.cod(f)).to_string())).collect(),
    );
    raw.faces.insert(
        (1, 1),
        g.morphisms().map(|f| (mor_id(f), g.object_id(g.dom(f)).to_string())).collect(),
    );
    raw.degens.insert(
        (0, 0),
        g.objects().map(|a| (g.object_id(a).to_string(), mor_id(g.identity(a)))).collect(),
    );
    // dim 2 faces: the two projections and the composition
    raw.faces.insert(
        (2, 0),
        pairs.iter().map(|&(a, b)| (pair_id(a, b), mor_id(b))).collect(),
    );
    raw.faces.insert(
        (2, 1),
        pairs
            .iter()
            .map(|&(a, b)| (pair_id(a, b), mor_id(g.compose(b, a).unwrap())))
            .collect(),
    );
    raw.faces.insert(
        (2, 2),
        pairs.iter().map(|&(a, b)| (pair_id(a, b), mor_id(a))).collect(),
    );
    raw.degens.insert(
        (1, 0),
        g.morphisms()
            .map(|f| (mor_id(f), pair_id(g.identity(g.dom(f)), f)))
            .collect(),
    );
    raw.degens.insert(
        (1, 1),
        g.morphisms()
            .map(|f| (mor_id(f), pair_id(f, g.identity(g.cod(f)))))
            .collect(),
    );
    if n == 2 {
        let mut triples = Vec::new();
        for &(f1, f2) in &pairs {
            for f3 in g.morphisms() {
                if g.cod(f2) == g.dom(f3) {
                    triples.push((f1, f2, f3));
                }
            }
        }
        raw.simplices
            .push(triples.iter().map(|&(a, b, c)| triple_id(a, b, c)).collect());
        raw.faces.insert(
            (3, 0),
            triples.iter().map(|&(a, b, c)| (triple_id(a, b, c), pair_id(b, c))).collect(),
        );
        raw.faces.insert(
            (3, 1),
            triples
                .iter()
                .map(|&(a, b, c)| (triple_id(a, b, c), pair_id(g.compose(b, a).unwrap(), c)))
                .collect(),
        );
        raw.faces.insert(
            (3, 2),
            triples
                .iter()
                .map(|&(a, b, c)| (triple_id(a, b, c), pair_id(a, g.compose(c, b).unwrap())))
                .collect(),
        );
        raw.faces.insert(
            (3, 3),
            triples.iter().map(|&(a, b, c)| (triple_id(a, b, c), pair_id(a, b))).collect(),
        );
        raw.degens.insert(
            (2, 0),
            pairs
                .iter()
                .map(|&(a, b)| (pair_id(a, b), triple_id(g.identity(g.dom(a)), a, b)))
                .collect(),
        );
        raw.degens.insert(
            (2, 1),
            pairs
                .iter()
                .map(|&(a, b)| (pair_id(a, b), triple_id(a, g.identity(g.cod(a)), b)))
                .collect(),
        );
        raw.degens.insert(
            (2, 2),
            pairs
                .iter()
                .map(|&(a, b)| (pair_id(a, b), triple_id(a, b, g.identity(g.cod(b)))))
                .collect(),
        );
    }
    TruncatedSSet::build(raw).expect("nerves satisfy the simplicial identities")
}

/// The nerve of a functor: morphisms map to morphisms and composable tuples
/// map componentwise. Tuples are reconstructed through the face maps, so no
/// identifier parsing is involved.
pub fn nerve_map(f: &GroupoidMap, n: usize) -> crate::sset::SimplicialMap {
    use std::sync::Arc;
    let src = Arc::new(nerve_truncated(&f.source, n));
    let tgt = Arc::new(nerve_truncated(&f.target, n));
    let g = &*f.source;
    let h = &*f.target;
    let edge_img = |x: &TruncatedSSet, e: SimplexIx| -> SimplexIx {
        let m = g.morphism(x.id(1, e)).expect("edges are morphisms");
        tgt.lookup(1, h.morphism_id(f.apply_mor(m))).unwrap()
    };
    let mut comps: Vec<Vec<SimplexIx>> = Vec::new();
    comps.push(
        (0..src.card(0))
            .map(|s| {
                let a = g.object(src.id(0, s as SimplexIx)).unwrap();
                tgt.lookup(0, h.object_id(f.apply_obj(a))).unwrap()
            })
            .collect(),
    );
    comps.push((0..src.card(1) as SimplexIx).map(|e| edge_img(&src, e)).collect());
    // composable pairs are pinned by their outer faces, triples by their
    // outer pairs
    {
        let table = (0..src.card(2) as SimplexIx)
            .map(|s| {
                let e1 = comps[1][src.face(2, 2, s) as usize];
                let e2 = comps[1][src.face(2, 0, s) as usize];
                (0..tgt.card(2) as SimplexIx)
                    .find(|&t| tgt.face(2, 2, t) == e1 && tgt.face(2, 0, t) == e2)
                    .expect("pair exists in the target nerve")
            })
            .collect();
        comps.push(table);
    }
    if n >= 2 {
        let table = (0..src.card(3) as SimplexIx)
            .map(|s| {
                let p12 = comps[2][src.face(3, 3, s) as usize];
                let p23 = comps[2][src.face(3, 0, s) as usize];
                (0..tgt.card(3) as SimplexIx)
                    .find(|&t| tgt.face(3, 3, t) == p12 && tgt.face(3, 0, t) == p23)
                    .expect("triple exists in the target nerve")
            })
            .collect();
        comps.push(table);
    }
    crate::sset::SimplicialMap::new(src, tgt, comps).expect("nerves of functors are simplicial")
}

/// Recover a finite groupoid from a validated 1-groupoid complex: morphisms
/// are the edges, composition comes from unique inner-horn filling.
pub fn from_1groupoid(x: &TruncatedSSet) -> Result<FiniteGroupoid, GpdError> {
    if x.n() != 1 {
        return Err(GpdError::AxiomPrereqFailed("expected a 1-truncated complex".into()));
    }
    if !kan::check_n_groupoid(x).ok() {
        return Err(GpdError::AxiomPrereqFailed(
            "complex does not satisfy the 1-groupoid axioms".into(),
        ));
    }
    let obj_ids: Vec<String> = x.ids(0).to_vec();
    let mor_ids: Vec<String> = x.ids(1).to_vec();
    let dom: Vec<ObjIx> = (0..x.card(1)).map(|f| x.face(1, 1, f as SimplexIx)).collect();
    let cod: Vec<ObjIx> = (0..x.card(1)).map(|f| x.face(1, 0, f as SimplexIx)).collect();
    FiniteGroupoid::from_parts(obj_ids, mor_ids, dom, cod, |g, f| {
        // unique filler of the inner horn (f, ·, g)
        let h = crate::sset::Horn {
            face_dim: 1,
            omit: 1,
            faces: vec![g, f],
        };
        kan::compose(x, &h).ok()
    })
}
