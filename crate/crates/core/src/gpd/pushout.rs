//! Pushouts of finite groupoids along fully faithful maps, the glued-object
//! variant, the universal property, and co-span composition / isomorphism.
//!
//! Morphisms of the pushout `G ⊔_K H` are equivalence classes of formal
//! composites; each class is stored by its lexicographically minimal
//! representative, so equality and serialization are deterministic.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

use super::{FiniteGroupoid, GpdError, GroupoidMap, MorIx, ObjIx};

/// Canonical representative of a pushout morphism.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PMorRep {
    /// a morphism of H (both endpoints in H)
    PureH(MorIx),
    /// a morphism of G between objects not in the essential image
    PureG(MorIx),
    /// `v ⊔ u : a -> b` with `u ∈ G(a, g(c))`, `v ∈ H(h(c), b)`
    Cross { u: MorIx, v: MorIx, c: ObjIx },
    /// `u ⊔ v : b -> a` with `v ∈ H(b, h(c))`, `u ∈ G(g(c), a)`
    CrossRev { v: MorIx, u: MorIx, c: ObjIx },
    /// `u' ⊔ v ⊔ u : a -> b`, both endpoints in the essential image
    Triple {
        u: MorIx,
        v: MorIx,
        u2: MorIx,
        c: ObjIx,
        c2: ObjIx,
    },
}

/// The pushout with its cone and decode data for the universal property.
#[derive(Debug, Clone)]
pub struct PushoutResult {
    pub p: Arc<FiniteGroupoid>,
    pub from_g: GroupoidMap,
    pub from_h: GroupoidMap,
    /// per K-object: the connecting isomorphism `g'(g(c)) -> h'(h(c))` in P
    pub alpha: Vec<MorIx>,
    pub reps: Vec<PMorRep>,
    pub g_leg: GroupoidMap,
    pub h_leg: GroupoidMap,
}

fn comp3(g: &FiniteGroupoid, a: MorIx, b: MorIx, c: MorIx) -> MorIx {
    // a ∘ b ∘ c
    g.compose(a, g.compose(b, c).unwrap()).unwrap()
}

struct Builder<'a> {
    k: &'a FiniteGroupoid,
    g: &'a FiniteGroupoid,
    h: &'a FiniteGroupoid,
    gm: &'a GroupoidMap,
    hm: &'a GroupoidMap,
    /// unique w with g(w) = m, keyed by (dom c, cod c, m)
    g_preimage: HashMap<(ObjIx, ObjIx, MorIx), MorIx>,
    ess: Vec<bool>,
}

impl<'a> Builder<'a> {
    fn new(gm: &'a GroupoidMap, hm: &'a GroupoidMap) -> Self {
        let k = &*gm.source;
        let g = &*gm.target;
        let h = &*hm.target;
        let mut g_preimage = HashMap::new();
        for w in k.morphisms() {
            g_preimage.insert((k.dom(w), k.cod(w), gm.apply_mor(w)), w);
        }
        let mut ess = vec![false; g.n_objects()];
        for x in g.objects() {
            ess[x as usize] = k.objects().any(|c| !g.hom(x, gm.apply_obj(c)).is_empty());
        }
        Builder {
            k,
            g,
            h,
            gm,
            hm,
            g_preimage,
            ess,
        }
    }

    fn rep_key(&self, r: &PMorRep) -> (u8, String, String, String) {
        match r {
            PMorRep::PureH(m) => (0, self.h.morphism_id(*m).into(), String::new(), String::new()),
            PMorRep::PureG(m) => (1, self.g.morphism_id(*m).into(), String::new(), String::new()),
            PMorRep::Cross { u, v, c } => (
                2,
                self.g.morphism_id(*u).into(),
                self.h.morphism_id(*v).into(),
                self.k.object_id(*c).into(),
            ),
            PMorRep::CrossRev { v, u, c } => (
                3,
                self.h.morphism_id(*v).into(),
                self.g.morphism_id(*u).into(),
                self.k.object_id(*c).into(),
            ),
            PMorRep::Triple { u, v, u2, c, c2 } => (
                4,
                self.g.morphism_id(*u).into(),
                format!("{}|{}", self.h.morphism_id(*v), self.g.morphism_id(*u2)),
                format!("{}|{}", self.k.object_id(*c), self.k.object_id(*c2)),
            ),
        }
    }

    /// All representatives equivalent to `r` under the junction moves.
    fn orbit(&self, r: PMorRep) -> Vec<PMorRep> {
        let mut seen: HashSet<PMorRep> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(r.clone());
        queue.push_back(r);
        while let Some(cur) = queue.pop_front() {
            for next in self.moves(&cur) {
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        seen.into_iter().collect()
    }

    /// The lexicographically minimal representative of the class of `r`.
    fn canonical(&self, r: PMorRep) -> PMorRep {
        self.orbit(r)
            .into_iter()
            .min_by_key(|r| self.rep_key(r))
            .expect("orbit is nonempty")
    }

    /// One junction move per K-morphism: `(v, g(w)∘u) ~ (v∘h(w), u)`.
    fn moves(&self, r: &PMorRep) -> Vec<PMorRep> {
        let mut out = Vec::new();
        match *r {
            PMorRep::Cross { u, v, c } => {
                for w in self.k.morphisms() {
                    if self.k.cod(w) != c {
                        continue;
                    }
                    let gw = self.gm.apply_mor(w);
                    out.push(PMorRep::Cross {
                        u: self.g.compose(self.g.inverse(gw), u).unwrap(),
                        v: self.h.compose(v, self.hm.apply_mor(w)).unwrap(),
                        c: self.k.dom(w),
                    });
                }
            }
            PMorRep::CrossRev { v, u, c } => {
                for w in self.k.morphisms() {
                    if self.k.cod(w) != c {
                        continue;
                    }
                    let gw = self.gm.apply_mor(w);
                    out.push(PMorRep::CrossRev {
                        v: self
                            .h
                            .compose(self.h.inverse(self.hm.apply_mor(w)), v)
                            .unwrap(),
                        u: self.g.compose(u, gw).unwrap(),
                        c: self.k.dom(w),
                    });
                }
            }
            PMorRep::Triple { u, v, u2, c, c2 } => {
                for w in self.k.morphisms() {
                    if self.k.cod(w) == c {
                        let gw = self.gm.apply_mor(w);
                        out.push(PMorRep::Triple {
                            u: self.g.compose(self.g.inverse(gw), u).unwrap(),
                            v: self.h.compose(v, self.hm.apply_mor(w)).unwrap(),
                            u2,
                            c: self.k.dom(w),
                            c2,
                        });
                    }
                    if self.k.dom(w) == c2 {
                        let gw = self.gm.apply_mor(w);
                        out.push(PMorRep::Triple {
                            u,
                            v: self.h.compose(self.hm.apply_mor(w), v).unwrap(),
                            u2: self.g.compose(u2, self.g.inverse(gw)).unwrap(),
                            c,
                            c2: self.k.cod(w),
                        });
                    }
                }
            }
            _ => {}
        }
        out
    }

    /// Reduce a morphism `g(c_in) -> g(c_out)` to the unique K-morphism.
    fn reduce(&self, c_in: ObjIx, c_out: ObjIx, m: MorIx) -> MorIx {
        *self
            .g_preimage
            .get(&(c_in, c_out, m))
            .expect("fully faithful map covers every hom between image objects")
    }

    fn compose_reps(&self, m2: &PMorRep, m1: &PMorRep) -> PMorRep {
        use PMorRep::*;
        let g = self.g;
        let h = self.h;
        let hw = |w: MorIx| self.hm.apply_mor(w);
        let rep = match (m2, m1) {
            (PureG(a), PureG(b)) => PureG(g.compose(*a, *b).unwrap()),
            (PureH(a), PureH(b)) => PureH(h.compose(*a, *b).unwrap()),
            (PureH(a), Cross { u, v, c }) => Cross {
                u: *u,
                v: h.compose(*a, *v).unwrap(),
                c: *c,
            },
            (Cross { u: u2, v: v2, c: c2 }, Triple { u, v, u2: up, c, c2: cp }) => {
                let w = self.reduce(*cp, *c2, g.compose(*u2, *up).unwrap());
                Cross {
                    u: *u,
                    v: comp3(h, *v2, hw(w), *v),
                    c: *c,
                }
            }
            (Cross { u: u2, v: v2, c: c2 }, CrossRev { v: v1, u: u1, c: c1 }) => {
                let w = self.reduce(*c1, *c2, g.compose(*u2, *u1).unwrap());
                PureH(comp3(h, *v2, hw(w), *v1))
            }
            (CrossRev { v: v2, u: u2, c: c2 }, Cross { u: u1, v: v1, c: c1 }) => Triple {
                u: *u1,
                v: h.compose(*v2, *v1).unwrap(),
                u2: *u2,
                c: *c1,
                c2: *c2,
            },
            (CrossRev { v: v2, u: u2, c: c2 }, PureH(b)) => CrossRev {
                v: h.compose(*v2, *b).unwrap(),
                u: *u2,
                c: *c2,
            },
            (Triple { u, v, u2, c, c2 }, CrossRev { v: v1, u: u1, c: c1 }) => {
                let w = self.reduce(*c1, *c, g.compose(*u, *u1).unwrap());
                CrossRev {
                    v: comp3(h, *v, hw(w), *v1),
                    u: *u2,
                    c: *c2,
                }
            }
            (
                Triple { u: ua, v: va, u2: ua2, c: ca, c2: ca2 },
                Triple { u: ub, v: vb, u2: ub2, c: cb, c2: cb2 },
            ) => {
                let w = self.reduce(*cb2, *ca, g.compose(*ua, *ub2).unwrap());
                Triple {
                    u: *ub,
                    v: comp3(h, *va, hw(w), *vb),
                    u2: *ua2,
                    c: *cb,
                    c2: *ca2,
                }
            }
            other => unreachable!("non-composable pushout shapes {other:?}"),
        };
        self.canonical(rep)
    }
}

/// The pushout of `h: K -> H` along the fully faithful `g: K -> G`, with
/// objects the disjoint union `G_0 ⊔ H_0`.
pub fn pushout(gm: &GroupoidMap, hm: &GroupoidMap) -> Result<PushoutResult, GpdError> {
    if !Arc::ptr_eq(&gm.source, &hm.source) {
        return Err(GpdError::MiddleMismatch);
    }
    if !gm.is_fully_faithful() {
        let k = &*gm.source;
        for a in k.objects() {
            for b in k.objects() {
                let src = k.hom(a, b).len();
                let dst = gm.target.hom(gm.apply_obj(a), gm.apply_obj(b)).len();
                if src != dst {
                    return Err(GpdError::NotFullyFaithful {
                        a: k.object_id(a).into(),
                        b: k.object_id(b).into(),
                        src,
                        dst,
                    });
                }
            }
        }
        return Err(GpdError::NotFullyFaithful {
            a: "<non-injective>".into(),
            b: "<non-injective>".into(),
            src: 0,
            dst: 0,
        });
    }
    let b = Builder::new(gm, hm);
    let g = b.g;
    let h = b.h;
    let ng = g.n_objects() as ObjIx;

    let obj_ids: Vec<String> = g
        .objects()
        .map(|a| format!("G:{}", g.object_id(a)))
        .chain(h.objects().map(|a| format!("H:{}", h.object_id(a))))
        .collect();

    let mut reps: Vec<PMorRep> = Vec::new();
    let mut rep_index: HashMap<PMorRep, MorIx> = HashMap::new();
    let mut dom: Vec<ObjIx> = Vec::new();
    let mut cod: Vec<ObjIx> = Vec::new();
    {
        let mut push = |rep: PMorRep, d: ObjIx, c: ObjIx| {
            if !rep_index.contains_key(&rep) {
                rep_index.insert(rep.clone(), reps.len() as MorIx);
                reps.push(rep);
                dom.push(d);
                cod.push(c);
            }
        };
        for m in h.morphisms() {
            push(PMorRep::PureH(m), ng + h.dom(m), ng + h.cod(m));
        }
        for m in g.morphisms() {
            if !b.ess[g.dom(m) as usize] || !b.ess[g.cod(m) as usize] {
                push(PMorRep::PureG(m), g.dom(m), g.cod(m));
            }
        }
        for c in b.k.objects() {
            let gc = gm.apply_obj(c);
            let hc = hm.apply_obj(c);
            for a in g.objects() {
                for u in g.hom(a, gc) {
                    for bb in h.objects() {
                        for v in h.hom(hc, bb) {
                            let rep = b.canonical(PMorRep::Cross { u, v, c });
                            push(rep, a, ng + bb);
                        }
                    }
                }
                for u in g.hom(gc, a) {
                    for bb in h.objects() {
                        for v in h.hom(bb, hc) {
                            let rep = b.canonical(PMorRep::CrossRev { v, u, c });
                            push(rep, ng + bb, a);
                        }
                    }
                }
            }
            for c2 in b.k.objects() {
                let gc2 = gm.apply_obj(c2);
                let hc2 = hm.apply_obj(c2);
                for a in g.objects() {
                    for u in g.hom(a, gc) {
                        for v in h.hom(hc, hc2) {
                            for a2 in g.objects() {
                                for u2 in g.hom(gc2, a2) {
                                    let rep = b.canonical(PMorRep::Triple { u, v, u2, c, c2 });
                                    push(rep, a, a2);
                                }
                            }
                        }
                    }
                }
            }
        }
    }

    let mor_ids: Vec<String> = reps
        .iter()
        .map(|r| {
            let (tag, x, y, z) = b.rep_key(r);
            match tag {
                0 => format!("H:{x}"),
                1 => format!("G:{x}"),
                2 => format!("x[{x};{y};{z}]"),
                3 => format!("y[{x};{y};{z}]"),
                _ => format!("z[{x};{y};{z}]"),
            }
        })
        .collect();

    let reps_for_comp = reps.clone();
    let ri = rep_index.clone();
    let p = FiniteGroupoid::from_parts(obj_ids, mor_ids, dom, cod, |m2, m1| {
        let rep = b.compose_reps(&reps_for_comp[m2 as usize], &reps_for_comp[m1 as usize]);
        Some(*ri.get(&rep).expect("composite class was enumerated"))
    })?;
    let p = Arc::new(p);

    let from_h = GroupoidMap::new(
        hm.target.clone(),
        p.clone(),
        h.objects().map(|a| ng + a).collect(),
        h.morphisms().map(|m| rep_index[&PMorRep::PureH(m)]).collect(),
    )?;
    let g_on_mor: Vec<MorIx> = g
        .morphisms()
        .map(|m| {
            let a = g.dom(m);
            let a2 = g.cod(m);
            if !b.ess[a as usize] || !b.ess[a2 as usize] {
                rep_index[&PMorRep::PureG(m)]
            } else {
                // (m ∘ u⁻¹) ⊔ 1 ⊔ u for any u : a -> g(c)
                let (c, u) = b
                    .k
                    .objects()
                    .find_map(|c| g.hom(a, gm.apply_obj(c)).first().copied().map(|u| (c, u)))
                    .expect("essential-image objects reach some g(c)");
                let rep = b.canonical(PMorRep::Triple {
                    u,
                    v: h.identity(hm.apply_obj(c)),
                    u2: g.compose(m, g.inverse(u)).unwrap(),
                    c,
                    c2: c,
                });
                rep_index[&rep]
            }
        })
        .collect();
    let from_g = GroupoidMap::new(gm.target.clone(), p.clone(), g.objects().collect(), g_on_mor)?;
    let alpha: Vec<MorIx> = b
        .k
        .objects()
        .map(|c| {
            let rep = b.canonical(PMorRep::Cross {
                u: g.identity(gm.apply_obj(c)),
                v: h.identity(hm.apply_obj(c)),
                c,
            });
            rep_index[&rep]
        })
        .collect();

    Ok(PushoutResult {
        p,
        from_g,
        from_h,
        alpha,
        reps,
        g_leg: gm.clone(),
        h_leg: hm.clone(),
    })
}

/// A cone under the pushout diagram, with the comparison isomorphism
/// `beta_c : g1(g(c)) -> h1(h(c))` (mirroring the canonical `alpha`).
#[derive(Debug, Clone)]
pub struct Cone {
    pub g1: GroupoidMap,
    pub h1: GroupoidMap,
    pub beta: Vec<MorIx>,
}

impl Cone {
    fn validate(&self, po: &PushoutResult) -> Result<(), GpdError> {
        let k = &*po.g_leg.source;
        let f = &*self.g1.target;
        if !Arc::ptr_eq(&self.g1.target, &self.h1.target) {
            return Err(GpdError::NoMediator("cone legs target different groupoids".into()));
        }
        for c in k.objects() {
            let bc = self.beta[c as usize];
            if f.dom(bc) != self.g1.apply_obj(po.g_leg.apply_obj(c))
                || f.cod(bc) != self.h1.apply_obj(po.h_leg.apply_obj(c))
            {
                return Err(GpdError::NoMediator(format!(
                    "beta component at `{}` has wrong endpoints",
                    k.object_id(c)
                )));
            }
        }
        for w in k.morphisms() {
            let c = k.dom(w);
            let c2 = k.cod(w);
            let lhs = f
                .compose(self.beta[c2 as usize], self.g1.apply_mor(po.g_leg.apply_mor(w)))
                .unwrap();
            let rhs = f
                .compose(self.h1.apply_mor(po.h_leg.apply_mor(w)), self.beta[c as usize])
                .unwrap();
            if lhs != rhs {
                return Err(GpdError::NoMediator(format!(
                    "beta is not natural at `{}`",
                    k.morphism_id(w)
                )));
            }
        }
        Ok(())
    }
}

/// Build the unique mediating map for a cone and verify uniqueness by
/// checking that the pushout is generated by the images of G, H and the
/// connecting isomorphisms.
pub fn check_pushout_universal(po: &PushoutResult, cone: &Cone) -> Result<GroupoidMap, GpdError> {
    cone.validate(po)?;
    let f = &*cone.g1.target;
    let g = &*po.g_leg.target;
    let h = &*po.h_leg.target;
    let ng = g.n_objects() as ObjIx;
    let p = &*po.p;

    let on_obj: Vec<ObjIx> = p
        .objects()
        .map(|x| {
            if x < ng {
                cone.g1.apply_obj(x)
            } else {
                cone.h1.apply_obj(x - ng)
            }
        })
        .collect();
    let chain = |parts: Vec<MorIx>| -> MorIx {
        let mut it = parts.into_iter();
        let first = it.next().unwrap();
        it.fold(first, |acc, m| f.compose(m, acc).unwrap())
    };
    let on_mor: Vec<MorIx> = po
        .reps
        .iter()
        .map(|rep| match *rep {
            PMorRep::PureH(m) => cone.h1.apply_mor(m),
            PMorRep::PureG(m) => cone.g1.apply_mor(m),
            PMorRep::Cross { u, v, c } => chain(vec![
                cone.g1.apply_mor(u),
                cone.beta[c as usize],
                cone.h1.apply_mor(v),
            ]),
            PMorRep::CrossRev { v, u, c } => chain(vec![
                cone.h1.apply_mor(v),
                f.inverse(cone.beta[c as usize]),
                cone.g1.apply_mor(u),
            ]),
            PMorRep::Triple { u, v, u2, c, c2 } => chain(vec![
                cone.g1.apply_mor(u),
                cone.beta[c as usize],
                cone.h1.apply_mor(v),
                f.inverse(cone.beta[c2 as usize]),
                cone.g1.apply_mor(u2),
            ]),
        })
        .collect();
    let mediator = GroupoidMap::new(po.p.clone(), cone.g1.target.clone(), on_obj, on_mor)
        .map_err(|e| GpdError::NoMediator(format!("forced assignment is not a functor: {e}")))?;

    for m in g.morphisms() {
        if mediator.apply_mor(po.from_g.apply_mor(m)) != cone.g1.apply_mor(m) {
            return Err(GpdError::NoMediator(format!(
                "mediator disagrees with g1 on `{}`",
                g.morphism_id(m)
            )));
        }
    }
    for m in h.morphisms() {
        if mediator.apply_mor(po.from_h.apply_mor(m)) != cone.h1.apply_mor(m) {
            return Err(GpdError::NoMediator(format!(
                "mediator disagrees with h1 on `{}`",
                h.morphism_id(m)
            )));
        }
    }
    for (c, &a) in po.alpha.iter().enumerate() {
        if mediator.apply_mor(a) != cone.beta[c] {
            return Err(GpdError::NoMediator(format!(
                "mediator sends alpha to something other than beta at object {c}"
            )));
        }
    }

    // uniqueness: any mediator is determined on the images of G, H and the
    // alpha components, so it suffices that these generate the pushout
    let mut generated: HashSet<MorIx> = HashSet::new();
    for m in g.morphisms() {
        generated.insert(po.from_g.apply_mor(m));
    }
    for m in h.morphisms() {
        generated.insert(po.from_h.apply_mor(m));
    }
    for &a in &po.alpha {
        generated.insert(a);
    }
    loop {
        let snapshot: Vec<MorIx> = generated.iter().copied().collect();
        let before = generated.len();
        for &m in &snapshot {
            generated.insert(p.inverse(m));
            for &m2 in &snapshot {
                if let Some(c) = p.compose(m2, m) {
                    generated.insert(c);
                }
            }
        }
        if generated.len() == before {
            break;
        }
    }
    if generated.len() != p.n_morphisms() {
        return Err(GpdError::NoMediator(
            "pushout is not generated by the cone data; uniqueness would fail".into(),
        ));
    }
    Ok(mediator)
}

/// Full subgroupoid on a subset of objects; returns the new groupoid plus
/// the object and morphism re-index tables (old -> new).
pub fn full_subgroupoid(
    p: &FiniteGroupoid,
    keep: &[bool],
) -> Result<(FiniteGroupoid, Vec<Option<ObjIx>>, Vec<Option<MorIx>>), GpdError> {
    let mut obj_map = vec![None; p.n_objects()];
    let mut obj_ids = Vec::new();
    for a in p.objects() {
        if keep[a as usize] {
            obj_map[a as usize] = Some(obj_ids.len() as ObjIx);
            obj_ids.push(p.object_id(a).to_string());
        }
    }
    let mut mor_map = vec![None; p.n_morphisms()];
    let mut mor_ids = Vec::new();
    let mut dom = Vec::new();
    let mut cod = Vec::new();
    let mut old_of_new = Vec::new();
    for m in p.morphisms() {
        if keep[p.dom(m) as usize] && keep[p.cod(m) as usize] {
            mor_map[m as usize] = Some(mor_ids.len() as MorIx);
            mor_ids.push(p.morphism_id(m).to_string());
            dom.push(obj_map[p.dom(m) as usize].unwrap());
            cod.push(obj_map[p.cod(m) as usize].unwrap());
            old_of_new.push(m);
        }
    }
    let sub = FiniteGroupoid::from_parts(obj_ids, mor_ids, dom, cod, |m2, m1| {
        p.compose(old_of_new[m2 as usize], old_of_new[m1 as usize])
            .map(|h| mor_map[h as usize].expect("full subgroupoid is closed under composition"))
    })?;
    Ok((sub, obj_map, mor_map))
}

/// The variant pushout with objects `G_0 ⊔_{K_0} H_0`, presented as the full
/// subgroupoid of the pushout on one representative per glued-object class,
/// together with the comparison map from the pushout.
pub fn variant_pushout(
    gm: &GroupoidMap,
    hm: &GroupoidMap,
) -> Result<(Arc<FiniteGroupoid>, GroupoidMap, PushoutResult), GpdError> {
    let po = pushout(gm, hm)?;
    let p = &*po.p;
    let k = &*gm.source;
    let ng = gm.target.n_objects() as ObjIx;

    // union-find over P-objects along g(c) ~ h(c)
    let mut parent: Vec<ObjIx> = p.objects().collect();
    fn find(parent: &mut [ObjIx], x: ObjIx) -> ObjIx {
        let mut r = x;
        while parent[r as usize] != r {
            r = parent[r as usize];
        }
        let mut cur = x;
        while parent[cur as usize] != cur {
            let next = parent[cur as usize];
            parent[cur as usize] = r;
            cur = next;
        }
        r
    }
    for c in k.objects() {
        let a = find(&mut parent, gm.apply_obj(c));
        let b = find(&mut parent, ng + hm.apply_obj(c));
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        parent[hi as usize] = lo;
    }
    let roots: Vec<ObjIx> = p.objects().map(|x| find(&mut parent, x)).collect();
    let keep: Vec<bool> = p.objects().map(|x| roots[x as usize] == x).collect();
    let (sub, obj_map, mor_map) = full_subgroupoid(p, &keep)?;
    let sub = Arc::new(sub);

    // transport isomorphism tau_x : root(x) -> x along the alpha edges
    let mut tau: Vec<Option<MorIx>> = p
        .objects()
        .map(|x| keep[x as usize].then(|| p.identity(x)))
        .collect();
    let mut changed = true;
    while changed {
        changed = false;
        for c in k.objects() {
            let a = gm.apply_obj(c);
            let b = ng + hm.apply_obj(c);
            let al = po.alpha[c as usize]; // a -> b in P
            if let (Some(ta), None) = (tau[a as usize], tau[b as usize]) {
                tau[b as usize] = Some(p.compose(al, ta).unwrap());
                changed = true;
            }
            if let (Some(tb), None) = (tau[b as usize], tau[a as usize]) {
                tau[a as usize] = Some(p.compose(p.inverse(al), tb).unwrap());
                changed = true;
            }
        }
    }
    let tau: Vec<MorIx> = tau
        .into_iter()
        .map(|t| t.expect("every glued class contains its representative"))
        .collect();

    let on_obj: Vec<ObjIx> = p
        .objects()
        .map(|x| obj_map[roots[x as usize] as usize].unwrap())
        .collect();
    let on_mor: Vec<MorIx> = p
        .morphisms()
        .map(|m| {
            let x = p.dom(m);
            let y = p.cod(m);
            let moved = comp3(p, p.inverse(tau[y as usize]), m, tau[x as usize]);
            mor_map[moved as usize].expect("transported morphism lies in the subgroupoid")
        })
        .collect();
    let comparison = GroupoidMap::new(po.p.clone(), sub.clone(), on_obj, on_mor)?;
    Ok((sub, comparison, po))
}

// ---------------------------------------------------------------------------
// co-spans

/// A co-span: two maps into a common apex whose objects are exactly the
/// disjoint union of the feet objects; the `from_weak` leg must be an
/// equivalence.
#[derive(Debug, Clone)]
pub struct CoSpan {
    pub weak_foot: Arc<FiniteGroupoid>,
    pub plain_foot: Arc<FiniteGroupoid>,
    pub apex: Arc<FiniteGroupoid>,
    pub from_weak: GroupoidMap,
    pub from_plain: GroupoidMap,
}

impl CoSpan {
    pub fn new(from_weak: GroupoidMap, from_plain: GroupoidMap) -> Result<Self, GpdError> {
        let c = CoSpan {
            weak_foot: from_weak.source.clone(),
            plain_foot: from_plain.source.clone(),
            apex: from_weak.target.clone(),
            from_weak,
            from_plain,
        };
        c.validate()?;
        Ok(c)
    }

    pub fn validate(&self) -> Result<(), GpdError> {
        if !Arc::ptr_eq(&self.from_weak.target, &self.from_plain.target) {
            return Err(GpdError::NotNormalForm("legs land in different apexes".into()));
        }
        let total = self.weak_foot.n_objects() + self.plain_foot.n_objects();
        if self.apex.n_objects() != total {
            return Err(GpdError::NotNormalForm(format!(
                "apex has {} objects, feet have {} in total",
                self.apex.n_objects(),
                total
            )));
        }
        let mut seen = vec![false; self.apex.n_objects()];
        for a in self.weak_foot.objects() {
            let x = self.from_weak.apply_obj(a) as usize;
            if std::mem::replace(&mut seen[x], true) {
                return Err(GpdError::NotNormalForm("feet objects overlap in the apex".into()));
            }
        }
        for a in self.plain_foot.objects() {
            let x = self.from_plain.apply_obj(a) as usize;
            if std::mem::replace(&mut seen[x], true) {
                return Err(GpdError::NotNormalForm("feet objects overlap in the apex".into()));
            }
        }
        if !self.from_weak.is_equivalence() {
            return Err(GpdError::AxiomPrereqFailed(
                "the designated co-span leg is not a weak equivalence".into(),
            ));
        }
        Ok(())
    }

    /// The identity-shaped co-span on `g`: the apex is the cylinder, the
    /// pushout of two copies of `g` along itself.
    pub fn cylinder(g: Arc<FiniteGroupoid>) -> Result<CoSpan, GpdError> {
        let id = GroupoidMap::identity(g);
        let po = pushout(&id, &id)?;
        CoSpan::new(po.from_g.clone(), po.from_h.clone())
    }
}

/// A composed co-span together with its pushout decode data: the apex
/// morphisms keep their class representatives over the two constituent
/// apexes (`G` = the second co-span's apex, `H` = the first's).
#[derive(Debug, Clone)]
pub struct ComposedCoSpan {
    pub cospan: CoSpan,
    pub po: PushoutResult,
    /// per composite-apex morphism, its pushout representative
    pub sub_reps: Vec<PMorRep>,
    /// pushout morphism -> composite-apex morphism (when kept)
    pub to_sub: Vec<Option<MorIx>>,
}

impl ComposedCoSpan {
    /// The composite-apex morphism whose class contains `rep`.
    pub fn classify(&self, rep: PMorRep) -> Option<MorIx> {
        let m = classify_rep(&self.po, rep)?;
        self.to_sub[m as usize]
    }

    pub fn rep(&self, m: MorIx) -> &PMorRep {
        &self.sub_reps[m as usize]
    }

    /// All representatives of the class of a composite-apex morphism.
    pub fn class_reps(&self, m: MorIx) -> Vec<PMorRep> {
        let b = Builder::new(&self.po.g_leg, &self.po.h_leg);
        b.orbit(self.sub_reps[m as usize].clone())
    }
}

/// Canonicalize a representative against a computed pushout and return the
/// pushout morphism holding its class.
pub fn classify_rep(po: &PushoutResult, rep: PMorRep) -> Option<MorIx> {
    let b = Builder::new(&po.g_leg, &po.h_leg);
    let canon = b.canonical(rep);
    po.reps.iter().position(|r| *r == canon).map(|k| k as MorIx)
}

/// Compose co-spans sharing the middle foot: pushout over the middle, then
/// restriction to the outer feet objects (the normal form).
pub fn cospan_compose(k1: &CoSpan, k2: &CoSpan) -> Result<CoSpan, GpdError> {
    Ok(cospan_compose_full(k1, k2)?.cospan)
}

/// As `cospan_compose`, retaining the pushout decode data.
pub fn cospan_compose_full(k1: &CoSpan, k2: &CoSpan) -> Result<ComposedCoSpan, GpdError> {
    if !Arc::ptr_eq(&k1.plain_foot, &k2.weak_foot) {
        return Err(GpdError::MiddleMismatch);
    }
    // pushout along the fully faithful weak leg of k2
    let po = pushout(&k2.from_weak, &k1.from_plain)?;
    let p = &*po.p;
    let mut keep = vec![false; p.n_objects()];
    for a in k1.weak_foot.objects() {
        let x = po.from_h.apply_obj(k1.from_weak.apply_obj(a));
        keep[x as usize] = true;
    }
    for a in k2.plain_foot.objects() {
        let x = po.from_g.apply_obj(k2.from_plain.apply_obj(a));
        keep[x as usize] = true;
    }
    let (sub, obj_map, mor_map) = full_subgroupoid(p, &keep)?;
    let sub = Arc::new(sub);
    let restrict = |outer: &GroupoidMap, inner: &GroupoidMap| -> Result<GroupoidMap, GpdError> {
        GroupoidMap::new(
            inner.source.clone(),
            sub.clone(),
            inner
                .on_obj
                .iter()
                .map(|&a| obj_map[outer.apply_obj(a) as usize].unwrap())
                .collect(),
            inner
                .on_mor
                .iter()
                .map(|&f| mor_map[outer.apply_mor(f) as usize].unwrap())
                .collect(),
        )
    };
    let from_weak = restrict(&po.from_h, &k1.from_weak)?;
    let from_plain = restrict(&po.from_g, &k2.from_plain)?;
    let cospan = CoSpan::new(from_weak, from_plain)?;
    let mut sub_reps = vec![None; cospan.apex.n_morphisms()];
    for m in po.p.morphisms() {
        if let Some(s) = mor_map[m as usize] {
            sub_reps[s as usize] = Some(po.reps[m as usize].clone());
        }
    }
    Ok(ComposedCoSpan {
        cospan,
        sub_reps: sub_reps.into_iter().map(|r| r.unwrap()).collect(),
        to_sub: mor_map,
        po,
    })
}

/// All isomorphisms `apex1 -> apex2` restricting to the identity on the
/// images of both feet. The co-spans must share their feet.
pub fn cospan_isos(c1: &CoSpan, c2: &CoSpan) -> Result<Vec<GroupoidMap>, GpdError> {
    if !Arc::ptr_eq(&c1.weak_foot, &c2.weak_foot) || !Arc::ptr_eq(&c1.plain_foot, &c2.plain_foot) {
        return Err(GpdError::MiddleMismatch);
    }
    let a1 = &*c1.apex;
    let a2 = &*c2.apex;
    if a1.n_objects() != a2.n_objects() || a1.n_morphisms() != a2.n_morphisms() {
        return Ok(Vec::new());
    }
    let mut on_obj = vec![ObjIx::MAX; a1.n_objects()];
    for a in c1.weak_foot.objects() {
        on_obj[c1.from_weak.apply_obj(a) as usize] = c2.from_weak.apply_obj(a);
    }
    for a in c1.plain_foot.objects() {
        on_obj[c1.from_plain.apply_obj(a) as usize] = c2.from_plain.apply_obj(a);
    }
    let mut forced: Vec<Option<MorIx>> = vec![None; a1.n_morphisms()];
    for m in c1.weak_foot.morphisms() {
        forced[c1.from_weak.apply_mor(m) as usize] = Some(c2.from_weak.apply_mor(m));
    }
    for m in c1.plain_foot.morphisms() {
        forced[c1.from_plain.apply_mor(m) as usize] = Some(c2.from_plain.apply_mor(m));
    }
    let mut found = Vec::new();
    search_isos(a1, a2, &on_obj, forced, &mut found);
    Ok(found
        .into_iter()
        .map(|on_mor| GroupoidMap {
            source: c1.apex.clone(),
            target: c2.apex.clone(),
            on_obj: on_obj.clone(),
            on_mor,
        })
        .collect())
}

fn search_isos(
    a1: &FiniteGroupoid,
    a2: &FiniteGroupoid,
    on_obj: &[ObjIx],
    assignment: Vec<Option<MorIx>>,
    out: &mut Vec<Vec<MorIx>>,
) {
    let mut asg = assignment;
    // propagate inverse/composition closure
    loop {
        let mut progressed = false;
        for f in a1.morphisms() {
            if let Some(ff) = asg[f as usize] {
                let inv = a1.inverse(f);
                let want = a2.inverse(ff);
                match asg[inv as usize] {
                    None => {
                        asg[inv as usize] = Some(want);
                        progressed = true;
                    }
                    Some(x) if x != want => return,
                    _ => {}
                }
            }
            for g in a1.morphisms() {
                if let (Some(ff), Some(gg)) = (asg[f as usize], asg[g as usize]) {
                    if let Some(h) = a1.compose(g, f) {
                        let want = match a2.compose(gg, ff) {
                            Some(w) => w,
                            None => return,
                        };
                        match asg[h as usize] {
                            None => {
                                asg[h as usize] = Some(want);
                                progressed = true;
                            }
                            Some(x) if x != want => return,
                            _ => {}
                        }
                    }
                }
            }
        }
        if !progressed {
            break;
        }
    }
    {
        let mut seen = vec![false; a2.n_morphisms()];
        for a in asg.iter().flatten() {
            if std::mem::replace(&mut seen[*a as usize], true) {
                return;
            }
        }
    }
    match asg.iter().position(|a| a.is_none()) {
        None => out.push(asg.into_iter().map(|a| a.unwrap()).collect()),
        Some(f) => {
            let f = f as MorIx;
            let d = on_obj[a1.dom(f) as usize];
            let c = on_obj[a1.cod(f) as usize];
            let used: HashSet<MorIx> = asg.iter().flatten().copied().collect();
            for cand in a2.hom(d, c) {
                if used.contains(&cand) {
                    continue;
                }
                let mut next = asg.clone();
                next[f as usize] = Some(cand);
                search_isos(a1, a2, on_obj, next, out);
            }
        }
    }
}

/// Enumerate every functor between two finite groupoids, by backtracking
/// with composition propagation. Intended for desk-scale cone enumeration.
pub fn enumerate_functors(src: &Arc<FiniteGroupoid>, tgt: &Arc<FiniteGroupoid>) -> Vec<GroupoidMap> {
    let mut out = Vec::new();
    if tgt.n_objects() == 0 {
        if src.n_objects() == 0 {
            out.push(GroupoidMap {
                source: src.clone(),
                target: tgt.clone(),
                on_obj: vec![],
                on_mor: vec![],
            });
        }
        return out;
    }
    let nobj = src.n_objects();
    let mut obj_assign = vec![0 as ObjIx; nobj];
    loop {
        let mut forced: Vec<Option<MorIx>> = vec![None; src.n_morphisms()];
        for a in src.objects() {
            forced[src.identity(a) as usize] = Some(tgt.identity(obj_assign[a as usize]));
        }
        search_functors(src, tgt, &obj_assign, forced, &mut out);
        // advance the object map
        let mut p = nobj;
        let mut done = true;
        while p > 0 {
            p -= 1;
            if (obj_assign[p] as usize) + 1 < tgt.n_objects() {
                obj_assign[p] += 1;
                for q in p + 1..nobj {
                    obj_assign[q] = 0;
                }
                done = false;
                break;
            }
            obj_assign[p] = 0;
        }
        if done {
            break;
        }
    }
    out
}

fn search_functors(
    src: &Arc<FiniteGroupoid>,
    tgt: &Arc<FiniteGroupoid>,
    on_obj: &[ObjIx],
    assignment: Vec<Option<MorIx>>,
    out: &mut Vec<GroupoidMap>,
) {
    let mut asg = assignment;
    loop {
        let mut progressed = false;
        for f in src.morphisms() {
            if let Some(ff) = asg[f as usize] {
                if tgt.dom(ff) != on_obj[src.dom(f) as usize]
                    || tgt.cod(ff) != on_obj[src.cod(f) as usize]
                {
                    return;
                }
                let inv = src.inverse(f);
                let want = tgt.inverse(ff);
                match asg[inv as usize] {
                    None => {
                        asg[inv as usize] = Some(want);
                        progressed = true;
                    }
                    Some(x) if x != want => return,
                    _ => {}
                }
            }
            for g in src.morphisms() {
                if let (Some(ff), Some(gg)) = (asg[f as usize], asg[g as usize]) {
                    if let Some(h) = src.compose(g, f) {
                        let want = match tgt.compose(gg, ff) {
                            Some(w) => w,
                            None => return,
                        };
                        match asg[h as usize] {
                            None => {
                                asg[h as usize] = Some(want);
                                progressed = true;
                            }
                            Some(x) if x != want => return,
                            _ => {}
                        }
                    }
                }
            }
        }
        if !progressed {
            break;
        }
    }
    match asg.iter().position(|a| a.is_none()) {
        None => {
            let on_mor: Vec<MorIx> = asg.into_iter().map(|a| a.unwrap()).collect();
            if let Ok(f) = GroupoidMap::new(src.clone(), tgt.clone(), on_obj.to_vec(), on_mor) {
                out.push(f);
            }
        }
        Some(f) => {
            let f = f as MorIx;
            let d = on_obj[src.dom(f) as usize];
            let c = on_obj[src.cod(f) as usize];
            for cand in tgt.hom(d, c) {
                let mut next = asg.clone();
                next[f as usize] = Some(cand);
                search_functors(src, tgt, on_obj, next, out);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kan;
    use crate::testkit;

    fn inclusion(sub: &Arc<FiniteGroupoid>, big: &Arc<FiniteGroupoid>) -> GroupoidMap {
        // match by identifier
        GroupoidMap::new(
            sub.clone(),
            big.clone(),
            sub.objects()
                .map(|a| big.object(sub.object_id(a)).unwrap())
                .collect(),
            sub.morphisms()
                .map(|m| big.morphism(sub.morphism_id(m)).unwrap())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn pushout_of_points_is_connected_pair() {
        let pt = Arc::new(testkit::discrete(&["k"]).unwrap());
        let id = GroupoidMap::identity(pt.clone());
        let po = pushout(&id, &id).unwrap();
        assert_eq!(po.p.n_objects(), 2);
        // the two objects are connected by alpha, so pi_0 = 1
        let nerve = crate::gpd::to_1groupoid(&po.p);
        assert_eq!(kan::pi_count(&nerve, 0, 0).unwrap(), 1);
        assert!(po.from_h.is_fully_faithful());
    }

    #[test]
    fn pushout_discrete_codiscrete_gives_three_object_equivalence() {
        // K = {k}, G = codiscrete on {a, b} with k -> a, H = {h}
        let k = Arc::new(testkit::discrete(&["k"]).unwrap());
        let g = Arc::new(testkit::codiscrete(&["a", "b"]).unwrap());
        let h = Arc::new(testkit::discrete(&["h"]).unwrap());
        let gm = GroupoidMap::new(
            k.clone(),
            g.clone(),
            vec![g.object("a").unwrap()],
            vec![g.morphism("a>a").unwrap()],
        )
        .unwrap();
        let hm = GroupoidMap::new(
            k.clone(),
            h.clone(),
            vec![0],
            vec![h.morphism("1_h").unwrap()],
        )
        .unwrap();
        let po = pushout(&gm, &hm).unwrap();
        assert_eq!(po.p.n_objects(), 3);
        assert!(po.from_h.is_fully_faithful());
        // weakly equivalent to the codiscrete groupoid on 3 objects: one
        // pi_0 class and trivial automorphism groups
        let nerve = crate::gpd::to_1groupoid(&po.p);
        assert!(kan::check_n_groupoid(&nerve).ok());
        assert_eq!(kan::pi_count(&nerve, 0, 0).unwrap(), 1);
        for a in po.p.objects() {
            assert_eq!(po.p.hom(a, a).len(), 1);
        }
        // g was a weak equivalence, so the other leg must be one
        assert!(gm.is_equivalence());
        assert!(po.from_h.is_equivalence());
    }

    #[test]
    fn pushout_rejects_non_fully_faithful() {
        let k = Arc::new(testkit::one_object_group_groupoid(&testkit::trivial_group()).unwrap());
        let z2 = Arc::new(testkit::one_object_group_groupoid(&testkit::cyclic(2)).unwrap());
        let gm = GroupoidMap::new(
            k.clone(),
            z2.clone(),
            vec![0],
            vec![z2.morphism("e").unwrap()],
        )
        .unwrap();
        let hm = GroupoidMap::identity(k.clone());
        match pushout(&gm, &hm) {
            Err(GpdError::NotFullyFaithful { .. }) => {}
            other => panic!("expected NotFullyFaithful, got {other:?}"),
        }
    }

    #[test]
    fn universal_property_with_canonical_cone() {
        let k = Arc::new(testkit::discrete(&["k"]).unwrap());
        let g = Arc::new(testkit::codiscrete(&["a", "b"]).unwrap());
        let h = Arc::new(testkit::discrete(&["h"]).unwrap());
        let gm = GroupoidMap::new(
            k.clone(),
            g.clone(),
            vec![g.object("a").unwrap()],
            vec![g.morphism("a>a").unwrap()],
        )
        .unwrap();
        let hm =
            GroupoidMap::new(k.clone(), h.clone(), vec![0], vec![h.morphism("1_h").unwrap()])
                .unwrap();
        let po = pushout(&gm, &hm).unwrap();
        // cone = the pushout itself: mediator must be the identity
        let cone = Cone {
            g1: po.from_g.clone(),
            h1: po.from_h.clone(),
            beta: po.alpha.clone(),
        };
        let med = check_pushout_universal(&po, &cone).unwrap();
        for m in po.p.morphisms() {
            assert_eq!(med.apply_mor(m), m);
        }
        // cone into the point groupoid: mediator is the constant map
        let pt = Arc::new(testkit::discrete(&["z"]).unwrap());
        let const_map = |src: &Arc<FiniteGroupoid>| {
            GroupoidMap::new(
                src.clone(),
                pt.clone(),
                src.objects().map(|_| 0).collect(),
                src.morphisms().map(|_| 0).collect(),
            )
            .unwrap()
        };
        let cone = Cone {
            g1: const_map(&g),
            h1: const_map(&h),
            beta: vec![0],
        };
        let med = check_pushout_universal(&po, &cone).unwrap();
        for m in po.p.morphisms() {
            assert_eq!(med.apply_mor(m), 0);
        }
    }

    #[test]
    fn variant_pushout_collapses_points() {
        let pt = Arc::new(testkit::discrete(&["k"]).unwrap());
        let id = GroupoidMap::identity(pt.clone());
        let (sub, comparison, _po) = variant_pushout(&id, &id).unwrap();
        assert_eq!(sub.n_objects(), 1);
        assert!(comparison.is_equivalence());
    }

    #[test]
    fn variant_pushout_on_empty_k_is_disjoint_union() {
        let k: Arc<FiniteGroupoid> =
            Arc::new(FiniteGroupoid::new(vec![], vec![], vec![]).unwrap());
        let g = Arc::new(testkit::codiscrete(&["a"]).unwrap());
        let h = Arc::new(testkit::codiscrete(&["b"]).unwrap());
        let gm = GroupoidMap::new(k.clone(), g.clone(), vec![], vec![]).unwrap();
        let hm = GroupoidMap::new(k.clone(), h.clone(), vec![], vec![]).unwrap();
        let (sub, _cmp, po) = variant_pushout(&gm, &hm).unwrap();
        assert_eq!(sub.n_objects(), 2);
        assert_eq!(sub.n_morphisms(), 2);
        assert_eq!(po.p.n_objects(), 2);
    }

    #[test]
    fn cylinder_composition_is_isomorphic_to_cylinder() {
        // identity-shaped co-spans compose to an identity-shaped co-span
        let z2 = Arc::new(testkit::one_object_group_groupoid(&testkit::cyclic(2)).unwrap());
        let c1 = CoSpan::cylinder(z2.clone()).unwrap();
        let c2 = CoSpan::cylinder(z2.clone()).unwrap();
        let composed = cospan_compose(&c1, &c2).unwrap();
        let isos = cospan_isos(&composed, &c1).unwrap();
        assert!(!isos.is_empty());
    }

    #[test]
    fn bitorsor_cospan_isos_count_matches_group_order() {
        // both co-spans are the Z/2 cylinder; isomorphisms fixing the feet
        // correspond to the bitorsor automorphisms, i.e. |Z(Z/2)| = 2
        let z2 = Arc::new(testkit::one_object_group_groupoid(&testkit::cyclic(2)).unwrap());
        let c1 = CoSpan::cylinder(z2.clone()).unwrap();
        let isos = cospan_isos(&c1, &c1).unwrap();
        assert_eq!(isos.len(), 2);
    }

    #[test]
    fn cospans_with_different_cross_counts_have_no_isos() {
        let z2 = Arc::new(testkit::one_object_group_groupoid(&testkit::cyclic(2)).unwrap());
        let z1 = Arc::new(testkit::one_object_group_groupoid(&testkit::trivial_group()).unwrap());
        let c1 = CoSpan::cylinder(z2.clone()).unwrap();
        // build a degenerate co-span with the same feet but a different apex
        // by composing with a collapse; simplest check: different apexes
        let c2 = CoSpan::cylinder(z1).unwrap();
        // different feet, so this is a middle mismatch rather than empty
        assert!(matches!(cospan_isos(&c1, &c2), Err(GpdError::MiddleMismatch)));
    }

    #[test]
    fn functor_enumeration_counts() {
        let z2 = Arc::new(testkit::one_object_group_groupoid(&testkit::cyclic(2)).unwrap());
        let z3 = Arc::new(testkit::one_object_group_groupoid(&testkit::cyclic(3)).unwrap());
        // homs Z2 -> Z3: only trivial; Z2 -> Z2: two
        assert_eq!(enumerate_functors(&z2, &z3).len(), 1);
        assert_eq!(enumerate_functors(&z2, &z2).len(), 2);
    }
}
