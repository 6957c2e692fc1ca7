//! Object-indexed hom-groupoid families attached to the edges and 2-cells
//! of a 2-groupoid, their transport maps and coherence law, and the
//! recovery round-trips.
//!
//! For a 2-groupoid `X` with objects `a, b` and an edge `f : a -> b`, the
//! family sends each object `c` to the hom-groupoid over the edge (a
//! co-span between `Hom(c,a)` and `Hom(c,b)`), and each edge `g : c -> d`
//! to a transport isomorphism between the two composite co-spans
//!
//! ```text
//! t_g : K(d) ∘ Hom(g,a)  ->  Hom(g,b) ∘ K(c)
//! ```
//!
//! computed by filling the tetra on `(u, w, ·, v)` and restricting to the
//! identity on the feet. Recovery inverts the construction: the image of
//! the identity edge locates the edge, and transports pin the isomorphism.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

use crate::gpd::{
    self, cospan_compose_full, CoSpan, ComposedCoSpan, FiniteGroupoid, GpdError, GroupoidMap,
    MorIx, ObjIx, PMorRep,
};
use crate::homspaces::{
    self, canonical_edge_witness, edge_disc_map, hom_left, hom_left_disc, hom_right_disc,
    hom_to_groupoid, HomError, HomGroupoid,
};
use crate::kan::{self, KanError};
use crate::sset::{SSetError, SimplexIx, SimplicialMap, TruncatedSSet};

#[derive(Debug, Error)]
pub enum YonedaError {
    #[error("axiom precondition failed: {0}")]
    AxiomPrereqFailed(String),
    #[error("family is not coherent: {0}")]
    NotCoherent(String),
    #[error("no candidate edge/cell recovers the family")]
    NoCandidate,
    #[error("recovery is ambiguous between {0:?} (homotopic candidates)")]
    Ambiguous(Vec<String>),
    #[error("family data is malformed: {0}")]
    Malformed(String),
    #[error(transparent)]
    Hom(#[from] HomError),
    #[error(transparent)]
    Gpd(#[from] GpdError),
    #[error(transparent)]
    Kan(#[from] KanError),
    #[error(transparent)]
    SSet(#[from] SSetError),
}

/// A hom co-span: the level-1 hom complex, its groupoid form as the apex,
/// and the feet inclusions.
#[derive(Debug, Clone)]
pub struct HomCospan {
    pub hom: HomGroupoid,
    pub apex: Arc<FiniteGroupoid>,
    pub cospan: CoSpan,
}

impl HomCospan {
    /// Decode an apex morphism into its underlying 2-cell and disc word.
    pub fn decode(&self, m: MorIx) -> (SimplexIx, String) {
        let id = self.apex.morphism_id(m);
        let s = self
            .hom
            .result
            .lookup(1, id)
            .expect("apex morphisms are hom 1-simplices");
        let (g, e) = self.hom.pair(1, s);
        (g, self.hom.map.source.id(1, e).to_string())
    }

    /// The apex morphism for a 2-cell over a disc word.
    pub fn encode(&self, cell: SimplexIx, word: &str) -> Option<MorIx> {
        let e = self.hom.map.source.lookup(1, word)?;
        let s = self.hom.lookup_pair(1, cell, e)?;
        self.apex.morphism(self.hom.result.id(1, s))
    }

    /// Decode an apex object into its underlying edge of the base.
    pub fn decode_obj(&self, o: ObjIx) -> SimplexIx {
        let id = self.apex.object_id(o);
        let s = self
            .hom
            .result
            .lookup(0, id)
            .expect("apex objects are hom 0-simplices");
        self.hom.pair(0, s).0
    }
}

/// Shared per-2-groupoid data: hom-groupoids for every (object, target)
/// pair and edge co-spans for every (edge, target) pair, all on shared
/// groupoid values so that co-span composition type-checks.
pub struct YonedaContext {
    pub x: Arc<TruncatedSSet>,
    /// `homs[c][t]` = the hom-groupoid `Hom(c, t)` with its groupoid form
    pub homs: Vec<Vec<(HomGroupoid, Arc<FiniteGroupoid>)>>,
    /// canonical disc maps per edge
    pub edge_maps: Vec<SimplicialMap>,
    /// `(edge, target)` co-spans `Hom(g, t)` with feet `homs[c][t]`,
    /// `homs[d][t]`
    pub edge_cospans: HashMap<(SimplexIx, SimplexIx), HomCospan>,
}

impl YonedaContext {
    pub fn new(x: Arc<TruncatedSSet>) -> Result<Self, YonedaError> {
        if x.n() != 2 || !kan::check_n_groupoid(&x).ok() {
            return Err(YonedaError::AxiomPrereqFailed(
                "the base must be a 2-groupoid".into(),
            ));
        }
        let nobj = x.card(0) as SimplexIx;
        let mut homs = Vec::new();
        for c in 0..nobj {
            let mut per_target = Vec::new();
            for t in 0..nobj {
                let h = hom_left(x.clone(), c, t)?;
                let g = Arc::new(hom_to_groupoid(&h)?);
                per_target.push((h, g));
            }
            homs.push(per_target);
        }
        let mut edge_maps = Vec::new();
        for f in 0..x.card(1) as SimplexIx {
            let w = canonical_edge_witness(&x, f).ok_or_else(|| {
                YonedaError::AxiomPrereqFailed(format!(
                    "edge `{}` has no inverse witness",
                    x.id(1, f)
                ))
            })?;
            edge_maps.push(edge_disc_map(x.clone(), f, w)?);
        }
        let mut ctx = YonedaContext {
            x,
            homs,
            edge_maps,
            edge_cospans: HashMap::new(),
        };
        let edges: Vec<SimplexIx> = (0..ctx.x.card(1) as SimplexIx).collect();
        for g in edges {
            for t in 0..nobj {
                let ec = ctx.build_edge_cospan(g, t)?;
                ctx.edge_cospans.insert((g, t), ec);
            }
        }
        Ok(ctx)
    }

    pub fn hom(&self, c: SimplexIx, t: SimplexIx) -> &(HomGroupoid, Arc<FiniteGroupoid>) {
        &self.homs[c as usize][t as usize]
    }

    pub fn edge_cospan(&self, g: SimplexIx, t: SimplexIx) -> &HomCospan {
        &self.edge_cospans[&(g, t)]
    }

    /// Right-whisker a left hom cell: the unique conversion between the two
    /// models of `Hom(c, t)` used by the feet and the edge co-spans.
    fn whisker(&self, s: SimplexIx) -> Result<SimplexIx, YonedaError> {
        let x = &*self.x;
        let m1 = x.face(2, 2, s);
        let h = crate::sset::Horn {
            face_dim: 2,
            omit: 2,
            faces: vec![s, x.degen(1, 1, m1), x.degen(1, 0, m1)],
        };
        let fs = kan::fillers(x, &h);
        if fs.len() != 1 {
            return Err(YonedaError::Malformed(format!(
                "whisker fill found {} candidates",
                fs.len()
            )));
        }
        Ok(x.face(3, 2, fs[0]))
    }

    fn build_edge_cospan(&self, g: SimplexIx, t: SimplexIx) -> Result<HomCospan, YonedaError> {
        let x = &self.x;
        let c = x.vertex(1, 0, g);
        let d = x.vertex(1, 1, g);
        let hom = hom_right_disc(x.clone(), &self.edge_maps[g as usize], t)?;
        let apex = Arc::new(hom_to_groupoid(&hom)?);
        let hc = HomCospan {
            hom,
            apex: apex.clone(),
            cospan: CoSpan {
                // placeholder legs; replaced below once built
                weak_foot: self.homs[c as usize][t as usize].1.clone(),
                plain_foot: self.homs[d as usize][t as usize].1.clone(),
                apex: apex.clone(),
                from_weak: GroupoidMap::identity(apex.clone()),
                from_plain: GroupoidMap::identity(apex.clone()),
            },
        };
        let foot_map = |side: SimplexIx, word_v: &str, word_e: &str| -> Result<GroupoidMap, YonedaError> {
            let (foot_hom, foot_gpd) = &self.homs[side as usize][t as usize];
            let on_obj: Vec<ObjIx> = foot_gpd
                .objects()
                .map(|o| {
                    let s0 = foot_hom.result.lookup(0, foot_gpd.object_id(o)).unwrap();
                    let edge = foot_hom.pair(0, s0).0;
                    let e = hc.hom.map.source.lookup(0, word_v).unwrap();
                    let ix = hc
                        .hom
                        .lookup_pair(0, edge, e)
                        .expect("foot object lies in the edge hom");
                    apex.object(hc.hom.result.id(0, ix)).unwrap()
                })
                .collect();
            let on_mor: Vec<MorIx> = foot_gpd
                .morphisms()
                .map(|m| {
                    let s1 = foot_hom.result.lookup(1, foot_gpd.morphism_id(m)).unwrap();
                    let cell = foot_hom.pair(1, s1).0;
                    let whiskered = self.whisker(cell).expect("whisker conversion");
                    hc.encode(whiskered, word_e)
                        .expect("whiskered cell lies in the edge hom")
                })
                .collect();
            Ok(GroupoidMap::new(
                foot_gpd.clone(),
                apex.clone(),
                on_obj,
                on_mor,
            )?)
        };
        let from_weak = foot_map(c, "0", "00")?;
        let from_plain = foot_map(d, "1", "11")?;
        let cospan = CoSpan::new(from_weak, from_plain)?;
        Ok(HomCospan {
            hom: hc.hom,
            apex,
            cospan,
        })
    }
}

/// The object-indexed family attached to an edge: per object a hom co-span
/// `K(c)`, per edge a transport between the composite co-spans.
pub struct KFamily {
    pub a: SimplexIx,
    pub b: SimplexIx,
    /// `K(c)` as a co-span between `Hom(c,a)` and `Hom(c,b)`; for families
    /// produced by the edge construction this is a hom co-span
    pub k: Vec<HomCospan>,
    pub transports: HashMap<SimplexIx, EdgeTransport>,
}

pub struct EdgeTransport {
    /// `K(d) ∘ Hom(g,a)`
    pub lhs: ComposedCoSpan,
    /// `Hom(g,b) ∘ K(c)`
    pub rhs: ComposedCoSpan,
    /// the structure isomorphism, identity on the feet
    pub map: GroupoidMap,
}

/// The family of hom-groupoids `{Hom(c, a)}` indexed by the objects.
pub fn omega_object(ctx: &YonedaContext, a: SimplexIx) -> Vec<Arc<FiniteGroupoid>> {
    (0..ctx.x.card(0))
        .map(|c| ctx.homs[c][a as usize].1.clone())
        .collect()
}

/// Build the co-span `K_f(c) = Hom(c, f)` over the canonical disc map of an
/// edge.
fn k_cospan(ctx: &YonedaContext, f: SimplexIx, c: SimplexIx) -> Result<HomCospan, YonedaError> {
    let x = &ctx.x;
    let a = x.vertex(1, 0, f);
    let b = x.vertex(1, 1, f);
    let hom = hom_left_disc(x.clone(), c, &ctx.edge_maps[f as usize])?;
    let apex = Arc::new(hom_to_groupoid(&hom)?);
    let lift = |side: SimplexIx, phi: &[usize]| -> Result<GroupoidMap, YonedaError> {
        let (foot_hom, foot_gpd) = &ctx.homs[c as usize][side as usize];
        let smap = homspaces::induced_map(foot_hom, &hom, phi)?;
        Ok(homspaces::groupoid_map_from_simplicial(
            foot_gpd, &apex, &smap,
        )?)
    };
    let from_weak = lift(a, &[0])?;
    let from_plain = lift(b, &[1])?;
    let cospan = CoSpan::new(from_weak, from_plain)?;
    Ok(HomCospan { hom, apex, cospan })
}

/// The lex-least cross morphism of `K(c)` with the given domain object.
fn canonical_cross_from(kc: &HomCospan, dom_obj: ObjIx) -> Option<MorIx> {
    let apex = &kc.apex;
    let plain_objs: Vec<ObjIx> = kc
        .cospan
        .plain_foot
        .objects()
        .map(|o| kc.cospan.from_plain.apply_obj(o))
        .collect();
    apex.morphisms()
        .filter(|&m| apex.dom(m) == dom_obj && plain_objs.contains(&apex.cod(m)))
        .min_by_key(|&m| apex.morphism_id(m).to_string())
}

/// Apply the tetra recipe to one lhs cross class: given cells
/// `(s_u, s_w, s_v)` fill the inner horn and return the new face.
fn transport_cell(
    x: &TruncatedSSet,
    s_u: SimplexIx,
    s_w: SimplexIx,
    s_v: SimplexIx,
) -> Result<SimplexIx, YonedaError> {
    let h = crate::sset::Horn {
        face_dim: 2,
        omit: 2,
        faces: vec![s_u, s_w, s_v],
    };
    let fs = kan::fillers(x, &h);
    if fs.len() != 1 {
        return Err(YonedaError::Malformed(format!(
            "transport fill found {} candidates",
            fs.len()
        )));
    }
    Ok(x.face(3, 2, fs[0]))
}

/// Compute the rhs representative for one crossing representative of the
/// lhs composite of the edge `g : c -> d`, for the family of `f : a -> b`.
fn transport_rep(
    ctx: &YonedaContext,
    kf: &[HomCospan],
    g: SimplexIx,
    a: SimplexIx,
    b: SimplexIx,
    v_ec: MorIx,
    u_k: MorIx,
) -> Result<PMorRep, YonedaError> {
    let x = &*ctx.x;
    let c = x.vertex(1, 0, g);
    let d = x.vertex(1, 1, g);
    let ec_a = ctx.edge_cospan(g, a);
    let ec_b = ctx.edge_cospan(g, b);
    let kd = &kf[d as usize];
    let kc = &kf[c as usize];
    let (s_v, word_v) = ec_a.decode(v_ec);
    if word_v != "01" {
        return Err(YonedaError::Malformed("expected a crossing cell".into()));
    }
    let (s_u, _) = kd.decode(u_k);
    // the domain object of v inside Hom(c, a)
    let h_obj_apex = ec_a.apex.dom(v_ec);
    let h_in_foot = weak_preimage(&ec_a.cospan, h_obj_apex)
        .ok_or_else(|| YonedaError::Malformed("domain is not a foot object".into()))?;
    // w: the canonical crossing of K(c) out of that object
    let w_apex_dom = kc.cospan.from_weak.apply_obj(h_in_foot);
    let w = canonical_cross_from(kc, w_apex_dom)
        .ok_or_else(|| YonedaError::Malformed("no crossing out of the domain object".into()))?;
    let (s_w, _) = kc.decode(w);
    let y = transport_cell(x, s_u, s_w, s_v)?;
    // rhs representative: CrossRev over the middle Hom(c, b)
    let mid = plain_preimage(&kc.cospan, kc.apex.cod(w))
        .ok_or_else(|| YonedaError::Malformed("crossing must land in the plain foot".into()))?;
    let y_ec = ec_b
        .encode(y, "01")
        .ok_or_else(|| YonedaError::Malformed("transported cell missing in the edge hom".into()))?;
    Ok(PMorRep::CrossRev {
        v: w,
        u: y_ec,
        c: mid,
    })
}

/// The family attached to an edge `f : a -> b`: hom co-spans at every
/// object, transports at every edge, with representative independence
/// verified.
pub fn omega_morphism(ctx: &YonedaContext, f: SimplexIx) -> Result<KFamily, YonedaError> {
    let x = &ctx.x;
    let a = x.vertex(1, 0, f);
    let b = x.vertex(1, 1, f);
    let k: Vec<HomCospan> = (0..x.card(0) as SimplexIx)
        .map(|c| k_cospan(ctx, f, c))
        .collect::<Result<_, _>>()?;
    let mut transports = HashMap::new();
    for g in 0..x.card(1) as SimplexIx {
        let c = x.vertex(1, 0, g);
        let d = x.vertex(1, 1, g);
        let lhs = cospan_compose_full(&ctx.edge_cospan(g, a).cospan, &k[d as usize].cospan)?;
        let rhs = cospan_compose_full(&k[c as usize].cospan, &ctx.edge_cospan(g, b).cospan)?;
        let map = build_transport(ctx, &k, g, a, b, &lhs, &rhs)?;
        transports.insert(g, EdgeTransport { lhs, rhs, map });
    }
    Ok(KFamily {
        a,
        b,
        k,
        transports,
    })
}

fn build_transport(
    ctx: &YonedaContext,
    kf: &[HomCospan],
    g: SimplexIx,
    a: SimplexIx,
    b: SimplexIx,
    lhs: &ComposedCoSpan,
    rhs: &ComposedCoSpan,
) -> Result<GroupoidMap, YonedaError> {
    let la = &lhs.cospan.apex;
    let ra = &rhs.cospan.apex;
    // objects: forced through the feet
    let mut on_obj = vec![ObjIx::MAX; la.n_objects()];
    for o in lhs.cospan.weak_foot.objects() {
        on_obj[lhs.cospan.from_weak.apply_obj(o) as usize] = rhs.cospan.from_weak.apply_obj(o);
    }
    for o in lhs.cospan.plain_foot.objects() {
        on_obj[lhs.cospan.from_plain.apply_obj(o) as usize] = rhs.cospan.from_plain.apply_obj(o);
    }
    let mut on_mor: Vec<Option<MorIx>> = vec![None; la.n_morphisms()];
    for m in lhs.cospan.weak_foot.morphisms() {
        on_mor[lhs.cospan.from_weak.apply_mor(m) as usize] =
            Some(rhs.cospan.from_weak.apply_mor(m));
    }
    for m in lhs.cospan.plain_foot.morphisms() {
        on_mor[lhs.cospan.from_plain.apply_mor(m) as usize] =
            Some(rhs.cospan.from_plain.apply_mor(m));
    }
    // crossing classes: apply the tetra recipe to every representative and
    // verify they agree
    for m in la.morphisms() {
        if on_mor[m as usize].is_some() {
            continue;
        }
        if let PMorRep::CrossRev { .. } = lhs.rep(m) {
            let mut image = None;
            for rep in lhs.class_reps(m) {
                if let PMorRep::CrossRev { v, u, c: _ } = rep {
                    let out = transport_rep(ctx, kf, g, a, b, v, u)?;
                    let classified = rhs
                        .classify(out)
                        .ok_or_else(|| YonedaError::Malformed("transport left the class space".into()))?;
                    match image {
                        None => image = Some(classified),
                        Some(prev) if prev != classified => {
                            return Err(YonedaError::Malformed(
                                "transport is not class-independent".into(),
                            ))
                        }
                        _ => {}
                    }
                }
            }
            on_mor[m as usize] = image;
        }
    }
    // remaining morphisms (the reverse crossings) via inverses
    loop {
        let mut progressed = false;
        for m in la.morphisms() {
            if on_mor[m as usize].is_none() {
                if let Some(img) = on_mor[la.inverse(m) as usize] {
                    on_mor[m as usize] = Some(ra.inverse(img));
                    progressed = true;
                }
            }
        }
        if !progressed {
            break;
        }
    }
    let on_mor: Vec<MorIx> = on_mor
        .into_iter()
        .collect::<Option<Vec<_>>>()
        .ok_or_else(|| YonedaError::Malformed("transport left some classes unassigned".into()))?;
    Ok(GroupoidMap::new(
        lhs.cospan.apex.clone(),
        rhs.cospan.apex.clone(),
        on_obj,
        on_mor,
    )?)
}

// ---------------------------------------------------------------------------
// coherence

#[derive(Debug, Clone)]
pub struct CoherenceReport {
    pub ok: bool,
    pub witness: Option<String>,
}

/// Split a transported class into its canonical `(y, w)` pair: the crossing
/// of the edge co-span and the crossing of `K(c)`.
fn split_rhs_class(rhs: &ComposedCoSpan, m: MorIx) -> Option<(MorIx, MorIx)> {
    match *rhs.rep(m) {
        PMorRep::CrossRev { v, u, .. } => Some((u, v)),
        _ => None,
    }
}

/// The identification of a composable pair of edge-hom crossings with a
/// crossing over a chosen composite edge: fill the tetra with the filler
/// 2-cell `tau` as its third face.
fn identify_pair(
    x: &TruncatedSSet,
    s_v: SimplexIx,
    s_v2: SimplexIx,
    tau: SimplexIx,
) -> Result<SimplexIx, YonedaError> {
    // tetra faces (s_v, ·, s_v2, tau): the missing face is the crossing
    // over the composite edge
    let h = crate::sset::Horn {
        face_dim: 2,
        omit: 1,
        faces: vec![s_v, s_v2, tau],
    };
    let fs = kan::fillers(x, &h);
    if fs.len() != 1 {
        return Err(YonedaError::Malformed(format!(
            "pair identification found {} fillers",
            fs.len()
        )));
    }
    Ok(x.face(3, 1, fs[0]))
}

/// Verify the transport coherence law on every composable pair of edges,
/// every elementary representative triple, and every composite filler.
pub fn check_coherence(ctx: &YonedaContext, kf: &KFamily) -> Result<CoherenceReport, YonedaError> {
    let x = &*ctx.x;
    let a = kf.a;
    let b = kf.b;
    for g in 0..x.card(1) as SimplexIx {
        let c = x.vertex(1, 0, g);
        let d = x.vertex(1, 1, g);
        for g2 in 0..x.card(1) as SimplexIx {
            // g2 : c' -> c composable before g
            if x.vertex(1, 1, g2) != c {
                continue;
            }
            let c2 = x.vertex(1, 0, g2);
            let t_g = &kf.transports[&g];
            let t_g2 = &kf.transports[&g2];
            let ec_a_g = ctx.edge_cospan(g, a);
            let ec_a_g2 = ctx.edge_cospan(g2, a);
            let ec_b_g = ctx.edge_cospan(g, b);
            let ec_b_g2 = ctx.edge_cospan(g2, b);
            let kd = &kf.k[d as usize];

            // composite fillers of the inner horn (g, ·, g2)
            let comp_horn = crate::sset::Horn {
                face_dim: 1,
                omit: 1,
                faces: vec![g, g2],
            };
            let taus = kan::fillers(x, &comp_horn);

            // elементary generator triples
            for u in kd.apex.morphisms() {
                let (_, wu) = kd.decode(u);
                if wu != "01" {
                    continue;
                }
                for v in ec_a_g.apex.morphisms() {
                    let (s_v, wv) = ec_a_g.decode(v);
                    if wv != "01" {
                        continue;
                    }
                    // alignment through the middle Hom(d, a)
                    let d_obj = match plain_preimage(&ec_a_g.cospan, ec_a_g.apex.cod(v)) {
                        Some(o) => o,
                        None => continue,
                    };
                    if kd.apex.dom(u) != kd.cospan.from_weak.apply_obj(d_obj) {
                        continue;
                    }
                    for v2 in ec_a_g2.apex.morphisms() {
                        let (s_v2, wv2) = ec_a_g2.decode(v2);
                        if wv2 != "01" {
                            continue;
                        }
                        let c_obj = match plain_preimage(&ec_a_g2.cospan, ec_a_g2.apex.cod(v2)) {
                            Some(o) => o,
                            None => continue,
                        };
                        if ec_a_g.apex.dom(v)
                            != ec_a_g.cospan.from_weak.apply_obj(c_obj)
                        {
                            continue;
                        }
                        // two-step application
                        let m1 = t_g
                            .lhs
                            .classify(PMorRep::CrossRev { v, u, c: d_obj })
                            .ok_or_else(|| YonedaError::Malformed("lhs class missing".into()))?;
                        let (y, w) = split_rhs_class(&t_g.rhs, t_g.map.apply_mor(m1))
                            .ok_or_else(|| YonedaError::Malformed("rhs class not crossing".into()))?;
                        let m2 = t_g2
                            .lhs
                            .classify(PMorRep::CrossRev {
                                v: v2,
                                u: w,
                                c: c_obj,
                            })
                            .ok_or_else(|| YonedaError::Malformed("second lhs class missing".into()))?;
                        let (y2, w2) = split_rhs_class(&t_g2.rhs, t_g2.map.apply_mor(m2))
                            .ok_or_else(|| YonedaError::Malformed("rhs class not crossing".into()))?;

                        for &tau in &taus {
                            let hh = x.face(2, 1, tau);
                            let t_h = &kf.transports[&hh];
                            let ec_a_h = ctx.edge_cospan(hh, a);
                            let ec_b_h = ctx.edge_cospan(hh, b);
                            // identify (v ⊔ v2) and (y ⊔ y2) over tau
                            let vv_cell =
                                identify_pair(x, s_v, s_v2, tau)?;
                            let (s_y, _) = ec_b_g.decode(y);
                            let (s_y2, _) = ec_b_g2.decode(y2);
                            let yy_cell = identify_pair(x, s_y, s_y2, tau)?;
                            let vv = ec_a_h.encode(vv_cell, "01").ok_or_else(|| {
                                YonedaError::Malformed("identified cell missing".into())
                            })?;
                            let yy = ec_b_h.encode(yy_cell, "01").ok_or_else(|| {
                                YonedaError::Malformed("identified cell missing".into())
                            })?;
                            let lhs_h = t_h
                                .lhs
                                .classify(PMorRep::CrossRev {
                                    v: vv,
                                    u,
                                    c: d_obj,
                                })
                                .ok_or_else(|| YonedaError::Malformed("h-class missing".into()))?;
                            let got = t_h.map.apply_mor(lhs_h);
                            let want = t_h
                                .rhs
                                .classify(PMorRep::CrossRev {
                                    v: w2,
                                    u: yy,
                                    c: plain_preimage(
                                        &kf.k[c2 as usize].cospan,
                                        kf.k[c2 as usize].apex.cod(w2),
                                    )
                                    .ok_or_else(|| {
                                        YonedaError::Malformed("w2 misses the plain foot".into())
                                    })?,
                                })
                                .ok_or_else(|| YonedaError::Malformed("target class missing".into()))?;
                            if got != want {
                                return Ok(CoherenceReport {
                                    ok: false,
                                    witness: Some(format!(
                                        "edges `{}` after `{}` with composite `{}`: transported \
                                         class {} but the one-step transport gives {}",
                                        x.id(1, g),
                                        x.id(1, g2),
                                        x.id(1, hh),
                                        t_h.rhs.cospan.apex.morphism_id(got),
                                        t_h.rhs.cospan.apex.morphism_id(want),
                                    )),
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(CoherenceReport {
        ok: true,
        witness: None,
    })
}

/// Swap the transport images of two parallel crossing classes on one edge;
/// the result must fail the coherence check with a witness.
pub fn perturb_transport(kf: &mut KFamily) -> bool {
    for t in kf.transports.values_mut() {
        let apex = t.lhs.cospan.apex.clone();
        let crossings: Vec<MorIx> = apex
            .morphisms()
            .filter(|&m| matches!(t.lhs.rep(m), PMorRep::CrossRev { .. }))
            .collect();
        for (i, &m1) in crossings.iter().enumerate() {
            for &m2 in &crossings[i + 1..] {
                if apex.dom(m1) == apex.dom(m2) && apex.cod(m1) == apex.cod(m2) {
                    let tmp = t.map.on_mor[m1 as usize];
                    t.map.on_mor[m1 as usize] = t.map.on_mor[m2 as usize];
                    t.map.on_mor[m2 as usize] = tmp;
                    // keep inverses consistent so the map stays a functor
                    let i1 = apex.inverse(m1);
                    let i2 = apex.inverse(m2);
                    let tmp = t.map.on_mor[i1 as usize];
                    t.map.on_mor[i1 as usize] = t.map.on_mor[i2 as usize];
                    t.map.on_mor[i2 as usize] = tmp;
                    return true;
                }
            }
        }
    }
    false
}

// ---------------------------------------------------------------------------
// 2-cells

/// The comparison family attached to a 2-cell: per object, an isomorphism
/// from the composite `K_g(c) ∘ K_f(c)` to `K_h(c)`, identity on the feet.
pub struct AlphaFamily {
    pub f: SimplexIx,
    pub g: SimplexIx,
    pub h: SimplexIx,
    pub kf: KFamily,
    pub kg: KFamily,
    pub kh: KFamily,
    pub composites: Vec<ComposedCoSpan>,
    pub alpha: Vec<GroupoidMap>,
}

/// Build the per-object comparison maps for a 2-cell with faces
/// `(g, h, f)`, against the given families and composites.
fn alpha_maps_for(
    ctx: &YonedaContext,
    gamma: SimplexIx,
    kf: &KFamily,
    kg: &KFamily,
    kh: &KFamily,
    composites: &[ComposedCoSpan],
) -> Result<Vec<GroupoidMap>, YonedaError> {
    let x = &*ctx.x;
    let mut out = Vec::new();
    for c in 0..x.card(0) as SimplexIx {
        let comp = &composites[c as usize];
        let khc = &kh.k[c as usize];
        let la = &comp.cospan.apex;
        let ra = &khc.apex;
        let mut on_obj = vec![ObjIx::MAX; la.n_objects()];
        for o in comp.cospan.weak_foot.objects() {
            on_obj[comp.cospan.from_weak.apply_obj(o) as usize] =
                khc.cospan.from_weak.apply_obj(o);
        }
        for o in comp.cospan.plain_foot.objects() {
            on_obj[comp.cospan.from_plain.apply_obj(o) as usize] =
                khc.cospan.from_plain.apply_obj(o);
        }
        let mut on_mor: Vec<Option<MorIx>> = vec![None; la.n_morphisms()];
        for m in comp.cospan.weak_foot.morphisms() {
            on_mor[comp.cospan.from_weak.apply_mor(m) as usize] =
                Some(khc.cospan.from_weak.apply_mor(m));
        }
        for m in comp.cospan.plain_foot.morphisms() {
            on_mor[comp.cospan.from_plain.apply_mor(m) as usize] =
                Some(khc.cospan.from_plain.apply_mor(m));
        }
        for m in la.morphisms() {
            if on_mor[m as usize].is_some() {
                continue;
            }
            if let PMorRep::CrossRev { .. } = comp.rep(m) {
                let mut image = None;
                for rep in comp.class_reps(m) {
                    if let PMorRep::CrossRev { v, u, .. } = rep {
                        // v in K_f(c), u in K_g(c)
                        let (s_v, _) = kf.k[c as usize].decode(v);
                        let (s_u, _) = kg.k[c as usize].decode(u);
                        let y = transport_cell(x, gamma, s_u, s_v)?;
                        let y_m = khc.encode(y, "01").ok_or_else(|| {
                            YonedaError::Malformed("composite cell missing in K_h".into())
                        })?;
                        match image {
                            None => image = Some(y_m),
                            Some(prev) if prev != y_m => {
                                return Err(YonedaError::Malformed(
                                    "2-cell comparison is not class-independent".into(),
                                ))
                            }
                            _ => {}
                        }
                    }
                }
                on_mor[m as usize] = image;
            }
        }
        loop {
            let mut progressed = false;
            for m in la.morphisms() {
                if on_mor[m as usize].is_none() {
                    if let Some(img) = on_mor[la.inverse(m) as usize] {
                        on_mor[m as usize] = Some(ra.inverse(img));
                        progressed = true;
                    }
                }
            }
            if !progressed {
                break;
            }
        }
        let on_mor: Vec<MorIx> = on_mor
            .into_iter()
            .collect::<Option<Vec<_>>>()
            .ok_or_else(|| YonedaError::Malformed("comparison left classes unassigned".into()))?;
        out.push(GroupoidMap::new(
            comp.cospan.apex.clone(),
            khc.apex.clone(),
            on_obj,
            on_mor,
        )?);
    }
    Ok(out)
}

/// The comparison family of a 2-cell `γ` with faces `(d0,d1,d2) = (g,h,f)`.
pub fn omega_2cell(ctx: &YonedaContext, gamma: SimplexIx) -> Result<AlphaFamily, YonedaError> {
    let x = &ctx.x;
    let f = x.face(2, 2, gamma);
    let g = x.face(2, 0, gamma);
    let h = x.face(2, 1, gamma);
    let kf = omega_morphism(ctx, f)?;
    let kg = omega_morphism(ctx, g)?;
    let kh = omega_morphism(ctx, h)?;
    let composites: Vec<ComposedCoSpan> = (0..x.card(0))
        .map(|c| cospan_compose_full(&kf.k[c].cospan, &kg.k[c].cospan))
        .collect::<Result<_, _>>()?;
    let alpha = alpha_maps_for(ctx, gamma, &kf, &kg, &kh, &composites)?;
    Ok(AlphaFamily {
        f,
        g,
        h,
        kf,
        kg,
        kh,
        composites,
        alpha,
    })
}

// ---------------------------------------------------------------------------
// recovery

pub struct RecoveredMorphism {
    pub edge: SimplexIx,
    /// per object, the verified isomorphism `K_edge(c) -> K(c)`
    pub isos: Vec<GroupoidMap>,
}

/// Transport a composite-class morphism along per-constituent maps: `gmap`
/// acts on the pushout G-side, `hmap` on the H-side.
fn map_composite_class(
    src: &ComposedCoSpan,
    dst: &ComposedCoSpan,
    gmap: Option<&GroupoidMap>,
    hmap: Option<&GroupoidMap>,
    m: MorIx,
) -> Option<MorIx> {
    let apply_g = |u: MorIx| gmap.map_or(u, |f| f.apply_mor(u));
    let apply_h = |v: MorIx| hmap.map_or(v, |f| f.apply_mor(v));
    let rep = match *src.rep(m) {
        PMorRep::PureG(u) => PMorRep::PureG(apply_g(u)),
        PMorRep::PureH(v) => PMorRep::PureH(apply_h(v)),
        PMorRep::Cross { u, v, c } => PMorRep::Cross {
            u: apply_g(u),
            v: apply_h(v),
            c,
        },
        PMorRep::CrossRev { v, u, c } => PMorRep::CrossRev {
            v: apply_h(v),
            u: apply_g(u),
            c,
        },
        PMorRep::Triple { u, v, u2, c, c2 } => PMorRep::Triple {
            u: apply_g(u),
            v: apply_h(v),
            u2: apply_g(u2),
            c,
            c2,
        },
    };
    dst.classify(rep)
}

/// Check that a per-object iso family intertwines the transports of two
/// K-families over the same (a, b).
fn intertwines(
    ctx: &YonedaContext,
    from: &KFamily,
    to: &KFamily,
    phis: &[GroupoidMap],
) -> Result<bool, YonedaError> {
    let x = &*ctx.x;
    for g in 0..x.card(1) as SimplexIx {
        let c = x.vertex(1, 0, g);
        let d = x.vertex(1, 1, g);
        let t1 = &from.transports[&g];
        let t2 = &to.transports[&g];
        for m in t1.lhs.cospan.apex.morphisms() {
            // lhs: G-side = K_from(d), H-side = Hom(g, a)
            let lhs2 = match map_composite_class(
                &t1.lhs,
                &t2.lhs,
                Some(&phis[d as usize]),
                None,
                m,
            ) {
                Some(v) => v,
                None => return Ok(false),
            };
            // rhs: G-side = Hom(g, b), H-side = K_from(c)
            let rhs2 = match map_composite_class(
                &t1.rhs,
                &t2.rhs,
                None,
                Some(&phis[c as usize]),
                t1.map.apply_mor(m),
            ) {
                Some(v) => v,
                None => return Ok(false),
            };
            if t2.map.apply_mor(lhs2) != rhs2 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Build the transported iso family from a candidate `(edge, u)` onto an
/// abstract family, following the identity-transport recipe; `None` when
/// the transport does not assemble into feet-fixing isomorphisms.
fn candidate_isos(
    ctx: &YonedaContext,
    kf: &KFamily,
    cand: &KFamily,
    u: MorIx,
) -> Result<Option<Vec<GroupoidMap>>, YonedaError> {
    let x = &*ctx.x;
    let a = kf.a;
    let mut isos = Vec::new();
    for c in 0..x.card(0) as SimplexIx {
        let kc_cand = &cand.k[c as usize];
        let kc = &kf.k[c as usize];
        let la = &kc_cand.apex;
        let ra = &kc.apex;
        if la.n_morphisms() != ra.n_morphisms() {
            return Ok(None);
        }
        let mut on_obj = vec![ObjIx::MAX; la.n_objects()];
        for o in kc_cand.cospan.weak_foot.objects() {
            on_obj[kc_cand.cospan.from_weak.apply_obj(o) as usize] =
                kc.cospan.from_weak.apply_obj(o);
        }
        for o in kc_cand.cospan.plain_foot.objects() {
            on_obj[kc_cand.cospan.from_plain.apply_obj(o) as usize] =
                kc.cospan.from_plain.apply_obj(o);
        }
        let mut on_mor: Vec<Option<MorIx>> = vec![None; la.n_morphisms()];
        for m in kc_cand.cospan.weak_foot.morphisms() {
            on_mor[kc_cand.cospan.from_weak.apply_mor(m) as usize] =
                Some(kc.cospan.from_weak.apply_mor(m));
        }
        for m in kc_cand.cospan.plain_foot.morphisms() {
            on_mor[kc_cand.cospan.from_plain.apply_mor(m) as usize] =
                Some(kc.cospan.from_plain.apply_mor(m));
        }
        // crossings of the candidate family, transported through t
        let plain_objs: Vec<ObjIx> = kc_cand
            .cospan
            .plain_foot
            .objects()
            .map(|o| kc_cand.cospan.from_plain.apply_obj(o))
            .collect();
        for v in la.morphisms() {
            if on_mor[v as usize].is_some() || !plain_objs.contains(&la.cod(v)) {
                continue;
            }
            let (s_v, word) = kc_cand.decode(v);
            if word != "01" {
                continue;
            }
            // the domain object as an edge g_dom : c -> a
            let dom_obj = la.dom(v);
            let foot_obj = kc_cand
                .cospan
                .weak_foot
                .objects()
                .find(|&o| kc_cand.cospan.from_weak.apply_obj(o) == dom_obj);
            let foot_obj = match foot_obj {
                Some(o) => o,
                None => return Ok(None),
            };
            let g_dom = {
                let (foot_hom, foot_gpd) = ctx.hom(c, a);
                let s0 = foot_hom
                    .result
                    .lookup(0, foot_gpd.object_id(foot_obj))
                    .unwrap();
                foot_hom.pair(0, s0).0
            };
            let ec_a = ctx.edge_cospan(g_dom, a);
            let ec_b = ctx.edge_cospan(g_dom, kf.b);
            // w: the canonical degenerate crossing g_dom -> 1_a
            let w_cell = x.degen(1, 1, g_dom);
            let w_ec = match ec_a.encode(w_cell, "01") {
                Some(m) => m,
                None => return Ok(None),
            };
            // classify u ⊔ w in K(a) ∘ Hom(g_dom, a) and transport
            let t = &kf.transports[&g_dom];
            let one_a_obj = hom_object_of_edge(ctx, a, a, x.constant(1, a))
                .expect("identity edge is a hom object");
            let m_lhs = match t.lhs.classify(PMorRep::CrossRev {
                v: w_ec,
                u,
                c: one_a_obj,
            }) {
                Some(m) => m,
                None => return Ok(None),
            };
            let image_class = t.map.apply_mor(m_lhs);
            // unique representative with the edge-hom part equal to v
            let v_in_b = match ec_b.encode(s_v, "01") {
                Some(m) => m,
                None => return Ok(None),
            };
            let mut x_part = None;
            for rep in t.rhs.class_reps(image_class) {
                if let PMorRep::CrossRev { v: w_part, u: y_part, .. } = rep {
                    if y_part == v_in_b {
                        match x_part {
                            None => x_part = Some(w_part),
                            Some(prev) if prev != w_part => return Ok(None),
                            _ => {}
                        }
                    }
                }
            }
            let x_part = match x_part {
                Some(m) => m,
                None => return Ok(None),
            };
            on_mor[v as usize] = Some(x_part);
        }
        loop {
            let mut progressed = false;
            for m in la.morphisms() {
                if on_mor[m as usize].is_none() {
                    if let Some(img) = on_mor[la.inverse(m) as usize] {
                        on_mor[m as usize] = Some(ra.inverse(img));
                        progressed = true;
                    }
                }
            }
            if !progressed {
                break;
            }
        }
        let on_mor: Vec<MorIx> = match on_mor.into_iter().collect::<Option<Vec<_>>>() {
            Some(v) => v,
            None => return Ok(None),
        };
        // must be a bijective functor
        let map = match GroupoidMap::new(kc_cand.apex.clone(), kc.apex.clone(), on_obj, on_mor) {
            Ok(m) => m,
            Err(_) => return Ok(None),
        };
        let mut seen = vec![false; ra.n_morphisms()];
        if !map
            .on_mor
            .iter()
            .all(|&v| !std::mem::replace(&mut seen[v as usize], true))
        {
            return Ok(None);
        }
        isos.push(map);
    }
    Ok(Some(isos))
}

/// Recover the edge generating a coherent family, together with the unique
/// isomorphism onto it. Ambiguity (several homotopic candidates verifying)
/// is reported rather than resolved.
pub fn recover_morphism(
    ctx: &YonedaContext,
    kf: &KFamily,
) -> Result<RecoveredMorphism, YonedaError> {
    let x = &*ctx.x;
    let coh = check_coherence(ctx, kf)?;
    if !coh.ok {
        return Err(YonedaError::NotCoherent(coh.witness.unwrap_or_default()));
    }
    let a = kf.a;
    let b = kf.b;
    // the identity object of Hom(a, a) inside K(a)
    let ka = &kf.k[a as usize];
    let one_a_foot = hom_object_of_edge(ctx, a, a, x.constant(1, a))
        .expect("identity edge is a hom object");
    let o = ka.cospan.from_weak.apply_obj(one_a_foot);
    let mut verified: Vec<(SimplexIx, Vec<GroupoidMap>)> = Vec::new();
    for f_cand in 0..x.card(1) as SimplexIx {
        if x.vertex(1, 0, f_cand) != a || x.vertex(1, 1, f_cand) != b {
            continue;
        }
        let cand = omega_morphism(ctx, f_cand)?;
        // the image object of the candidate edge inside K(a)
        let f_foot =
            hom_object_of_edge(ctx, a, b, f_cand).expect("edge is a hom object");
        let f_obj = ka.cospan.from_plain.apply_obj(f_foot);
        for u in ka.apex.hom(o, f_obj) {
            if let Some(isos) = candidate_isos(ctx, kf, &cand, u)? {
                if intertwines(ctx, &cand, kf, &isos)? {
                    verified.push((f_cand, isos));
                    break;
                }
            }
        }
    }
    match verified.len() {
        0 => Err(YonedaError::NoCandidate),
        1 => {
            let (edge, isos) = verified.into_iter().next().unwrap();
            Ok(RecoveredMorphism { edge, isos })
        }
        _ => Err(YonedaError::Ambiguous(
            verified
                .into_iter()
                .map(|(e, _)| x.id(1, e).to_string())
                .collect(),
        )),
    }
}

/// Recover the 2-cell generating a comparison family: enumerate the cells
/// over the boundary and verify against the stored comparison maps.
pub fn recover_2cell(ctx: &YonedaContext, alpha: &AlphaFamily) -> Result<SimplexIx, YonedaError> {
    let x = &*ctx.x;
    let candidates = kan::simplices_with_boundary(x, 2, &[alpha.g, alpha.h, alpha.f]);
    let mut verified = Vec::new();
    for gamma in candidates {
        let maps = alpha_maps_for(
            ctx,
            gamma,
            &alpha.kf,
            &alpha.kg,
            &alpha.kh,
            &alpha.composites,
        )?;
        let agree = maps
            .iter()
            .zip(&alpha.alpha)
            .all(|(m1, m2)| m1.on_mor == m2.on_mor && m1.on_obj == m2.on_obj);
        if agree {
            verified.push(gamma);
        }
    }
    match verified.len() {
        0 => Err(YonedaError::NoCandidate),
        1 => Ok(verified[0]),
        _ => Err(YonedaError::Ambiguous(
            verified.into_iter().map(|g| x.id(2, g).to_string()).collect(),
        )),
    }
}

/// Apply a transport to the class of an elementary pair and split the image
/// class into its canonical `(ec_part, k_part)` representative.
fn transport_split(
    t: &EdgeTransport,
    v: MorIx,
    u: MorIx,
    mid: ObjIx,
) -> Option<(MorIx, MorIx)> {
    let m = t.lhs.classify(PMorRep::CrossRev { v, u, c: mid })?;
    split_rhs_class(&t.rhs, t.map.apply_mor(m))
}

/// Locate the foot object of a hom-groupoid underlying a given base edge.
fn hom_object_of_edge(
    ctx: &YonedaContext,
    c: SimplexIx,
    t: SimplexIx,
    edge: SimplexIx,
) -> Option<ObjIx> {
    let (foot_hom, foot_gpd) = ctx.hom(c, t);
    foot_gpd.objects().find(|&o| {
        let s0 = foot_hom.result.lookup(0, foot_gpd.object_id(o)).unwrap();
        foot_hom.pair(0, s0).0 == edge
    })
}

/// The plain-foot object of a co-span under its apex embedding.
fn plain_preimage(cs: &CoSpan, apex_obj: ObjIx) -> Option<ObjIx> {
    cs.plain_foot
        .objects()
        .find(|&o| cs.from_plain.apply_obj(o) == apex_obj)
}

fn weak_preimage(cs: &CoSpan, apex_obj: ObjIx) -> Option<ObjIx> {
    cs.weak_foot
        .objects()
        .find(|&o| cs.from_weak.apply_obj(o) == apex_obj)
}

/// Whether per-object comparison maps intertwine the transports of the
/// composite family `K_g ∘ K_f` with those of `K_h`, checked on every
/// elementary triple over every edge.
pub fn alpha_intertwines(
    ctx: &YonedaContext,
    kf: &KFamily,
    kg: &KFamily,
    kh: &KFamily,
    composites: &[ComposedCoSpan],
    alpha: &[GroupoidMap],
) -> Result<bool, YonedaError> {
    let x = &*ctx.x;
    let a = kf.a;
    let b = kf.b; // middle vertex of the triangle
    let c3 = kg.b;
    for e in 0..x.card(1) as SimplexIx {
        let c = x.vertex(1, 0, e);
        let d = x.vertex(1, 1, e);
        let ec_a = ctx.edge_cospan(e, a);
        let tf = &kf.transports[&e];
        let tg = &kg.transports[&e];
        let th = &kh.transports[&e];
        let kfd = &kf.k[d as usize];
        let kgd = &kg.k[d as usize];
        for u_f in kfd.apex.morphisms() {
            let (_, wuf) = kfd.decode(u_f);
            if wuf != "01" {
                continue;
            }
            // u_g must start where u_f ends, through the middle Hom(d, b)
            let mid_b_obj = match plain_preimage(&kfd.cospan, kfd.apex.cod(u_f)) {
                Some(o) => o,
                None => continue,
            };
            for u_g in kgd.apex.morphisms() {
                let (_, wug) = kgd.decode(u_g);
                if wug != "01" {
                    continue;
                }
                if kgd.apex.dom(u_g) != kgd.cospan.from_weak.apply_obj(mid_b_obj) {
                    continue;
                }
                for v in ec_a.apex.morphisms() {
                    let (_, wv) = ec_a.decode(v);
                    if wv != "01" {
                        continue;
                    }
                    let mid_a_obj = match plain_preimage(&ec_a.cospan, ec_a.apex.cod(v)) {
                        Some(o) => o,
                        None => continue,
                    };
                    if kfd.apex.dom(u_f) != kfd.cospan.from_weak.apply_obj(mid_a_obj) {
                        continue;
                    }
                    // path 1: transport through K_f then K_g, then compare
                    let (y_f, w_f) = match transport_split(tf, v, u_f, mid_a_obj) {
                        Some(p) => p,
                        None => return Ok(false),
                    };
                    let ec_b = ctx.edge_cospan(e, b);
                    let yf_mid = match plain_preimage(&ec_b.cospan, ec_b.apex.cod(y_f)) {
                        Some(o) => o,
                        None => return Ok(false),
                    };
                    let (y_g, w_g) = match transport_split(tg, y_f, u_g, yf_mid) {
                        Some(p) => p,
                        None => return Ok(false),
                    };
                    // alpha at c on (w_g ⊔ w_f)
                    let wf_mid = match plain_preimage(&kf.k[c as usize].cospan, kf.k[c as usize].apex.cod(w_f))
                    {
                        Some(o) => o,
                        None => return Ok(false),
                    };
                    let comp_class = match composites[c as usize].classify(PMorRep::CrossRev {
                        v: w_f,
                        u: w_g,
                        c: wf_mid,
                    }) {
                        Some(m) => m,
                        None => return Ok(false),
                    };
                    let m_prime = alpha[c as usize].apply_mor(comp_class);
                    // path 2: alpha at d, then transport through K_h
                    let comp_class_d = match composites[d as usize].classify(PMorRep::CrossRev {
                        v: u_f,
                        u: u_g,
                        c: mid_b_obj,
                    }) {
                        Some(m) => m,
                        None => return Ok(false),
                    };
                    let m_h = alpha[d as usize].apply_mor(comp_class_d);
                    let (y_h, w_h) = match transport_split(th, v, m_h, mid_a_obj) {
                        Some(p) => p,
                        None => return Ok(false),
                    };
                    // compare classes in EC_{c3}(e) ∘ K_h(c)
                    let ec_c3 = ctx.edge_cospan(e, c3);
                    let _ = ec_c3;
                    let wh_mid = match plain_preimage(&kh.k[c as usize].cospan, kh.k[c as usize].apex.cod(w_h))
                    {
                        Some(o) => o,
                        None => return Ok(false),
                    };
                    let got = th.rhs.classify(PMorRep::CrossRev {
                        v: w_h,
                        u: y_h,
                        c: wh_mid,
                    });
                    let mp_mid = match plain_preimage(&kh.k[c as usize].cospan, kh.k[c as usize].apex.cod(m_prime))
                    {
                        Some(o) => o,
                        None => return Ok(false),
                    };
                    let want = th.rhs.classify(PMorRep::CrossRev {
                        v: m_prime,
                        u: y_g,
                        c: mp_mid,
                    });
                    if got.is_none() || got != want {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

/// Survey of comparison families over a fixed edge triple: all feet-fixing
/// iso combinations, those passing the intertwining condition, and the
/// assignment of 2-cells to realized combinations.
pub struct AlphaSurvey {
    pub cells: Vec<SimplexIx>,
    /// per intertwining combination, the realizing cells
    pub realizations: Vec<(Vec<GroupoidMap>, Vec<SimplexIx>)>,
    pub total_combos: usize,
}

pub fn alpha_survey(
    ctx: &YonedaContext,
    f: SimplexIx,
    g: SimplexIx,
    h: SimplexIx,
) -> Result<AlphaSurvey, YonedaError> {
    let x = &ctx.x;
    let kf = omega_morphism(ctx, f)?;
    let kg = omega_morphism(ctx, g)?;
    let kh = omega_morphism(ctx, h)?;
    let composites: Vec<ComposedCoSpan> = (0..x.card(0))
        .map(|c| cospan_compose_full(&kf.k[c].cospan, &kg.k[c].cospan))
        .collect::<Result<_, _>>()?;
    let per_object: Vec<Vec<GroupoidMap>> = (0..x.card(0))
        .map(|c| gpd::cospan_isos(&composites[c].cospan, &kh.k[c].cospan))
        .collect::<Result<_, _>>()?;
    let mut combos: Vec<Vec<GroupoidMap>> = vec![vec![]];
    for per_c in per_object {
        let mut next = Vec::new();
        for combo in combos {
            for cand in &per_c {
                let mut c2 = combo.clone();
                c2.push(cand.clone());
                next.push(c2);
            }
        }
        combos = next;
    }
    let total_combos = combos.len();
    let cells = kan::simplices_with_boundary(x, 2, &[g, h, f]);
    let mut realizations = Vec::new();
    for combo in combos {
        if !alpha_intertwines(ctx, &kf, &kg, &kh, &composites, &combo)? {
            continue;
        }
        let mut realizing = Vec::new();
        for &gamma in &cells {
            let maps = alpha_maps_for(ctx, gamma, &kf, &kg, &kh, &composites)?;
            let agree = maps
                .iter()
                .zip(&combo)
                .all(|(m1, m2)| m1.on_mor == m2.on_mor && m1.on_obj == m2.on_obj);
            if agree {
                realizing.push(gamma);
            }
        }
        realizations.push((combo, realizing));
    }
    Ok(AlphaSurvey {
        cells,
        realizations,
        total_combos,
    })
}

// ---------------------------------------------------------------------------
// star extension

/// The result of attaching a star object at `a`: the extended complex, the
/// new vertex, and the inclusion map.
pub struct StarExtension {
    pub base: Arc<TruncatedSSet>,
    pub extended: Arc<TruncatedSSet>,
    pub star: SimplexIx,
    pub inclusion: SimplicialMap,
}

/// Attach a fresh object isomorphic to `a`: simplices of the extension are
/// base simplices decorated by the subset of their `a`-vertices lifted to
/// the star.
pub fn star_extension(x: Arc<TruncatedSSet>, a: SimplexIx) -> Result<StarExtension, YonedaError> {
    if !kan::check_n_groupoid(&x).ok() {
        return Err(YonedaError::AxiomPrereqFailed("base must be an n-groupoid".into()));
    }
    let n = x.n();
    // enumerate decorated simplices per dimension
    let mut decorated: Vec<Vec<(SimplexIx, u32)>> = Vec::new();
    let mut index: Vec<HashMap<(SimplexIx, u32), SimplexIx>> = Vec::new();
    for k in 0..=n + 1 {
        let mut dim = Vec::new();
        let mut ix = HashMap::new();
        for g in 0..x.card(k) as SimplexIx {
            let a_positions: Vec<usize> =
                (0..=k).filter(|&p| x.vertex(k, p, g) == a).collect();
            let bits = a_positions.len();
            for mask_bits in 0..(1u32 << bits) {
                let mut mask = 0u32;
                for (b, &p) in a_positions.iter().enumerate() {
                    if mask_bits & (1 << b) != 0 {
                        mask |= 1 << p;
                    }
                }
                ix.insert((g, mask), dim.len() as SimplexIx);
                dim.push((g, mask));
            }
        }
        decorated.push(dim);
        index.push(ix);
    }
    let id_of = |k: usize, g: SimplexIx, mask: u32| {
        if mask == 0 {
            x.id(k, g).to_string()
        } else {
            format!("{}*{}", x.id(k, g), mask)
        }
    };
    let mut raw = crate::sset::RawSSet {
        n,
        simplices: (0..=n + 1)
            .map(|k| decorated[k].iter().map(|&(g, m)| id_of(k, g, m)).collect())
            .collect(),
        faces: HashMap::new(),
        degens: HashMap::new(),
    };
    let face_mask = |mask: u32, i: usize| -> u32 {
        let low = mask & ((1 << i) - 1);
        let high = mask >> (i + 1);
        low | (high << i)
    };
    let degen_mask = |mask: u32, j: usize| -> u32 {
        let low = mask & ((1 << (j + 1)) - 1);
        let high = mask >> (j + 1);
        let dup = (mask >> j) & 1;
        low | (dup << (j + 1)) | (high << (j + 2))
    };
    for k in 1..=n + 1 {
        for i in 0..=k {
            let tbl = decorated[k]
                .iter()
                .map(|&(g, mask)| {
                    (
                        id_of(k, g, mask),
                        id_of(k - 1, x.face(k, i, g), face_mask(mask, i)),
                    )
                })
                .collect();
            raw.faces.insert((k, i), tbl);
        }
    }
    for k in 0..=n {
        for j in 0..=k {
            let tbl = decorated[k]
                .iter()
                .map(|&(g, mask)| {
                    (
                        id_of(k, g, mask),
                        id_of(k + 1, x.degen(k, j, g), degen_mask(mask, j)),
                    )
                })
                .collect();
            raw.degens.insert((k, j), tbl);
        }
    }
    let extended = Arc::new(TruncatedSSet::build(raw)?);
    let star = extended
        .lookup(0, &id_of(0, a, 1))
        .expect("the star vertex exists");
    let comps: Vec<Vec<SimplexIx>> = (0..=n + 1)
        .map(|k| {
            (0..x.card(k) as SimplexIx)
                .map(|g| extended.lookup(k, x.id(k, g)).unwrap())
                .collect()
        })
        .collect();
    let inclusion = SimplicialMap::new(x.clone(), extended.clone(), comps)?;
    Ok(StarExtension {
        base: x,
        extended,
        star,
        inclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testkit;

    fn z3_ctx() -> YonedaContext {
        let x = Arc::new(
            testkit::nerve_crossed_module(&testkit::cm_from_h(testkit::cyclic(3))).unwrap(),
        );
        YonedaContext::new(x).unwrap()
    }

    #[test]
    fn omega_object_of_crossed_module() {
        let ctx = z3_ctx();
        let fam = omega_object(&ctx, 0);
        assert_eq!(fam.len(), 1);
        assert_eq!(fam[0].n_objects(), 1);
        assert_eq!(fam[0].n_morphisms(), 3);
    }

    #[test]
    fn omega_morphism_is_coherent() {
        let ctx = z3_ctx();
        let kf = omega_morphism(&ctx, 0).unwrap();
        let rep = check_coherence(&ctx, &kf).unwrap();
        assert!(rep.ok, "{:?}", rep.witness);
    }

    #[test]
    fn perturbed_transport_fails_coherence() {
        let ctx = z3_ctx();
        let mut kf = omega_morphism(&ctx, 0).unwrap();
        assert!(perturb_transport(&mut kf));
        let rep = check_coherence(&ctx, &kf).unwrap();
        assert!(!rep.ok);
        assert!(rep.witness.is_some());
    }

    #[test]
    fn morphism_round_trip_on_crossed_module() {
        let ctx = z3_ctx();
        let kf = omega_morphism(&ctx, 0).unwrap();
        let rec = recover_morphism(&ctx, &kf).unwrap();
        assert_eq!(rec.edge, 0);
    }

    #[test]
    fn morphism_round_trip_on_codiscrete_pair() {
        let g = testkit::codiscrete(&["a", "b"]).unwrap();
        let x = Arc::new(testkit::groupoid_as_2groupoid(&g));
        let ctx = YonedaContext::new(x.clone()).unwrap();
        for f in 0..x.card(1) as SimplexIx {
            let kf = omega_morphism(&ctx, f).unwrap();
            let rec = recover_morphism(&ctx, &kf).unwrap();
            assert_eq!(rec.edge, f, "edge `{}`", x.id(1, f));
        }
    }

    #[test]
    fn two_cell_round_trip_on_crossed_module() {
        let ctx = z3_ctx();
        let x = ctx.x.clone();
        for gamma in 0..x.card(2) as SimplexIx {
            let alpha = omega_2cell(&ctx, gamma).unwrap();
            let back = recover_2cell(&ctx, &alpha).unwrap();
            assert_eq!(back, gamma, "cell `{}`", x.id(2, gamma));
        }
    }

    #[test]
    fn alpha_survey_bijects_with_cells_on_z3() {
        let ctx = z3_ctx();
        // the identity-edge triangle
        let survey = alpha_survey(&ctx, 0, 0, 0).unwrap();
        assert_eq!(survey.cells.len(), 3);
        assert_eq!(survey.realizations.len(), 3);
        for (_, realizing) in &survey.realizations {
            assert_eq!(realizing.len(), 1);
        }
    }

    #[test]
    fn star_extension_of_crossed_module() {
        let ctx = z3_ctx();
        let se = star_extension(ctx.x.clone(), 0).unwrap();
        assert_eq!(se.extended.card(0), 2);
        assert!(kan::check_n_groupoid(&se.extended).ok());
        assert!(kan::is_weak_equivalence(&se.inclusion).unwrap().verdict);
        // full subcomplex on the base objects is the base
        for k in 0..=3 {
            let count = (0..se.extended.card(k) as SimplexIx)
                .filter(|&s| {
                    (0..=k).all(|p| se.extended.vertex(k, p, s) != se.star)
                })
                .count();
            assert_eq!(count, ctx.x.card(k));
        }
    }
}
