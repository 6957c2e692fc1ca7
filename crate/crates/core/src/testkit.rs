//! Deterministic generators of desk-scale instances: group nerves, strict
//! 2-group (crossed module) nerves, codiscrete/discrete groupoids and seeded
//! random groupoids.

use std::collections::HashMap;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::gpd::{FiniteGroupoid, GpdError};
use crate::sset::{RawSSet, TruncatedSSet};

#[derive(Debug, Error)]
pub enum TestkitError {
    #[error("not a group: {0}")]
    NotAGroup(String),
    #[error("invalid crossed module: {0}")]
    InvalidCrossedModule(String),
    #[error("bounds exceeded: {0}")]
    BoundsExceeded(String),
    #[error(transparent)]
    Gpd(#[from] GpdError),
    #[error(transparent)]
    SSet(#[from] crate::sset::SSetError),
}

/// A finite group given by its multiplication table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupTable {
    pub name: String,
    pub elems: Vec<String>,
    mul_table: Vec<Vec<usize>>,
}

impl GroupTable {
    pub fn new(
        name: &str,
        elems: Vec<String>,
        mul_table: Vec<Vec<usize>>,
    ) -> Result<Self, TestkitError> {
        let t = GroupTable {
            name: name.to_string(),
            elems,
            mul_table,
        };
        t.validate()?;
        Ok(t)
    }

    pub fn validate(&self) -> Result<(), TestkitError> {
        let n = self.elems.len();
        if self.mul_table.len() != n || self.mul_table.iter().any(|r| r.len() != n) {
            return Err(TestkitError::NotAGroup("table is not square".into()));
        }
        if self.mul_table.iter().flatten().any(|&v| v >= n) {
            return Err(TestkitError::NotAGroup("table entry out of range".into()));
        }
        let e = (0..n)
            .find(|&e| (0..n).all(|a| self.mul_table[e][a] == a && self.mul_table[a][e] == a))
            .ok_or_else(|| TestkitError::NotAGroup("no identity".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if self.mul_table[self.mul_table[a][b]][c]
                        != self.mul_table[a][self.mul_table[b][c]]
                    {
                        return Err(TestkitError::NotAGroup(format!(
                            "associativity fails at ({a},{b},{c})"
                        )));
                    }
                }
            }
        }
        for a in 0..n {
            if !(0..n).any(|b| self.mul_table[a][b] == e && self.mul_table[b][a] == e) {
                return Err(TestkitError::NotAGroup(format!("no inverse for index {a}")));
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.elems.len()
    }

    pub fn identity(&self) -> usize {
        (0..self.order())
            .find(|&e| (0..self.order()).all(|a| self.mul_table[e][a] == a))
            .expect("validated group has an identity")
    }

    /// `a · b`
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul_table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        let e = self.identity();
        (0..self.order())
            .find(|&b| self.mul(a, b) == e)
            .expect("validated group has inverses")
    }

    /// All automorphisms, as permutation vectors.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut perms: Vec<Vec<usize>> = vec![vec![]];
        for _ in 0..n {
            let mut next = Vec::new();
            for p in &perms {
                for v in 0..n {
                    if !p.contains(&v) {
                        let mut p2 = p.clone();
                        p2.push(v);
                        next.push(p2);
                    }
                }
            }
            perms = next;
        }
        perms
            .into_iter()
            .filter(|p| (0..n).all(|a| (0..n).all(|b| p[self.mul(a, b)] == self.mul(p[a], p[b]))))
            .collect()
    }
}

pub fn trivial_group() -> GroupTable {
    GroupTable::new("1", vec!["e".into()], vec![vec![0]]).unwrap()
}

pub fn cyclic(n: usize) -> GroupTable {
    let elems: Vec<String> = (0..n)
        .map(|k| if k == 0 { "e".into() } else { format!("c{k}") })
        .collect();
    let mul = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    GroupTable::new(&format!("Z{n}"), elems, mul).unwrap()
}

pub fn klein_four() -> GroupTable {
    let elems = vec!["e".into(), "a".into(), "b".into(), "ab".into()];
    let mul = vec![
        vec![0, 1, 2, 3],
        vec![1, 0, 3, 2],
        vec![2, 3, 0, 1],
        vec![3, 2, 1, 0],
    ];
    GroupTable::new("V4", elems, mul).unwrap()
}

pub fn sym3() -> GroupTable {
    let perms: Vec<[usize; 3]> = vec![
        [0, 1, 2],
        [1, 2, 0],
        [2, 0, 1],
        [1, 0, 2],
        [0, 2, 1],
        [2, 1, 0],
    ];
    let names = vec!["e", "r1", "r2", "s0", "s1", "s2"];
    let compose = |p: [usize; 3], q: [usize; 3]| [p[q[0]], p[q[1]], p[q[2]]];
    let mul = (0..6)
        .map(|a| {
            (0..6)
                .map(|b| {
                    let c = compose(perms[a], perms[b]);
                    perms.iter().position(|&p| p == c).unwrap()
                })
                .collect()
        })
        .collect();
    GroupTable::new("S3", names.into_iter().map(String::from).collect(), mul).unwrap()
}

/// One representative of every isomorphism class of groups of order <= 6.
pub fn all_groups_up_to_6() -> Vec<GroupTable> {
    vec![
        trivial_group(),
        cyclic(2),
        cyclic(3),
        cyclic(4),
        klein_four(),
        cyclic(5),
        cyclic(6),
        sym3(),
    ]
}

pub fn groups_up_to(order: usize) -> Vec<GroupTable> {
    all_groups_up_to_6()
        .into_iter()
        .filter(|g| g.order() <= order)
        .collect()
}

// ---------------------------------------------------------------------------
// ordinary groupoids

/// A group viewed as a one-object groupoid.
pub fn one_object_group_groupoid(t: &GroupTable) -> Result<FiniteGroupoid, TestkitError> {
    t.validate()?;
    let obj = "*".to_string();
    let morphisms: Vec<(String, String, String)> = t
        .elems
        .iter()
        .map(|g| (g.clone(), obj.clone(), obj.clone()))
        .collect();
    let mut comp = Vec::new();
    for a in 0..t.order() {
        for b in 0..t.order() {
            // composing a after b is the product a·b
            comp.push((
                t.elems[b].clone(),
                t.elems[a].clone(),
                t.elems[t.mul(a, b)].clone(),
            ));
        }
    }
    Ok(FiniteGroupoid::new(vec![obj], morphisms, comp)?)
}

/// Exactly one morphism between every ordered pair of objects.
pub fn codiscrete(objects: &[&str]) -> Result<FiniteGroupoid, TestkitError> {
    let objs: Vec<String> = objects.iter().map(|s| s.to_string()).collect();
    let mor_id = |a: &str, b: &str| format!("{a}>{b}");
    let mut morphisms = Vec::new();
    for a in &objs {
        for b in &objs {
            morphisms.push((mor_id(a, b), a.clone(), b.clone()));
        }
    }
    let mut comp = Vec::new();
    for a in &objs {
        for b in &objs {
            for c in &objs {
                comp.push((mor_id(a, b), mor_id(b, c), mor_id(a, c)));
            }
        }
    }
    Ok(FiniteGroupoid::new(objs, morphisms, comp)?)
}

/// Only identity morphisms.
pub fn discrete(objects: &[&str]) -> Result<FiniteGroupoid, TestkitError> {
    let objs: Vec<String> = objects.iter().map(|s| s.to_string()).collect();
    let morphisms: Vec<(String, String, String)> = objs
        .iter()
        .map(|a| (format!("1_{a}"), a.clone(), a.clone()))
        .collect();
    let comp = objs
        .iter()
        .map(|a| (format!("1_{a}"), format!("1_{a}"), format!("1_{a}")))
        .collect();
    Ok(FiniteGroupoid::new(objs, morphisms, comp)?)
}

#[derive(Debug, Clone, Copy)]
pub struct RandomBounds {
    pub max_objects: usize,
    pub max_hom: usize,
}

impl Default for RandomBounds {
    fn default() -> Self {
        RandomBounds {
            max_objects: 4,
            max_hom: 6,
        }
    }
}

/// Deterministic seeded groupoid: a disjoint union of connected groupoids,
/// each the product of a codiscrete groupoid with a small group.
pub fn random_groupoid(seed: u64, bounds: RandomBounds) -> Result<FiniteGroupoid, TestkitError> {
    if bounds.max_objects > 4 || bounds.max_hom > 6 {
        return Err(TestkitError::BoundsExceeded(format!(
            "requested {}x{}, supported up to 4 objects and 6-element hom-sets",
            bounds.max_objects, bounds.max_hom
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let groups: Vec<GroupTable> = groups_up_to(bounds.max_hom);
    let n_components = rng.gen_range(1..=2usize);
    let mut objects = Vec::new();
    let mut morphisms = Vec::new();
    let mut comp = Vec::new();
    let mut remaining = bounds.max_objects;
    for comp_ix in 0..n_components {
        if remaining == 0 {
            break;
        }
        let n_obj = rng.gen_range(1..=remaining.min(2));
        remaining -= n_obj;
        let g = &groups[rng.gen_range(0..groups.len())];
        let obj_name = |k: usize| format!("c{comp_ix}o{k}");
        let mor_name = |i: usize, j: usize, e: usize| format!("c{comp_ix}m{i}.{j}.{}", g.elems[e]);
        for k in 0..n_obj {
            objects.push(obj_name(k));
        }
        for i in 0..n_obj {
            for j in 0..n_obj {
                for e in 0..g.order() {
                    morphisms.push((mor_name(i, j, e), obj_name(i), obj_name(j)));
                }
            }
        }
        for i in 0..n_obj {
            for j in 0..n_obj {
                for k in 0..n_obj {
                    for e1 in 0..g.order() {
                        for e2 in 0..g.order() {
                            comp.push((
                                mor_name(i, j, e1),
                                mor_name(j, k, e2),
                                mor_name(i, k, g.mul(e2, e1)),
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(FiniteGroupoid::new(objects, morphisms, comp)?)
}

// ---------------------------------------------------------------------------
// nerves

/// The 1-truncated nerve of a group: one object, edges the elements, pairs
/// with the product as middle face.
pub fn nerve_group(t: &GroupTable) -> Result<TruncatedSSet, TestkitError> {
    let g = one_object_group_groupoid(t)?;
    Ok(crate::gpd::to_1groupoid(&g))
}

/// A crossed module: `boundary : H -> Q` with a left Q-action on H
/// satisfying equivariance and the Peiffer identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossedModule {
    pub h: GroupTable,
    pub q: GroupTable,
    /// index-level homomorphism H -> Q
    pub boundary: Vec<usize>,
    /// `action[q]` is the automorphism of H given by acting with q
    pub action: Vec<Vec<usize>>,
}

impl CrossedModule {
    pub fn new(
        h: GroupTable,
        q: GroupTable,
        boundary: Vec<usize>,
        action: Vec<Vec<usize>>,
    ) -> Result<Self, TestkitError> {
        let cm = CrossedModule {
            h,
            q,
            boundary,
            action,
        };
        cm.validate()?;
        Ok(cm)
    }

    pub fn validate(&self) -> Result<(), TestkitError> {
        let nh = self.h.order();
        let nq = self.q.order();
        if self.boundary.len() != nh || self.action.len() != nq {
            return Err(TestkitError::InvalidCrossedModule("component sizes".into()));
        }
        for a in 0..nh {
            for b in 0..nh {
                if self.boundary[self.h.mul(a, b)]
                    != self.q.mul(self.boundary[a], self.boundary[b])
                {
                    return Err(TestkitError::InvalidCrossedModule(
                        "boundary is not a homomorphism".into(),
                    ));
                }
            }
        }
        for q in 0..nq {
            let act = &self.action[q];
            if act.len() != nh {
                return Err(TestkitError::InvalidCrossedModule("action size".into()));
            }
            let mut seen = vec![false; nh];
            for &v in act {
                if v >= nh || std::mem::replace(&mut seen[v], true) {
                    return Err(TestkitError::InvalidCrossedModule(
                        "action is not a permutation".into(),
                    ));
                }
            }
            for a in 0..nh {
                for b in 0..nh {
                    if act[self.h.mul(a, b)] != self.h.mul(act[a], act[b]) {
                        return Err(TestkitError::InvalidCrossedModule(
                            "action is not by automorphisms".into(),
                        ));
                    }
                }
            }
        }
        for a in 0..nh {
            if self.action[self.q.identity()][a] != a {
                return Err(TestkitError::InvalidCrossedModule(
                    "identity does not act trivially".into(),
                ));
            }
        }
        for q1 in 0..nq {
            for q2 in 0..nq {
                for a in 0..nh {
                    if self.action[self.q.mul(q1, q2)][a] != self.action[q1][self.action[q2][a]] {
                        return Err(TestkitError::InvalidCrossedModule(
                            "action is not a left action".into(),
                        ));
                    }
                }
            }
        }
        // equivariance: ∂(q·h) = q ∂(h) q⁻¹
        for q in 0..nq {
            for a in 0..nh {
                let lhs = self.boundary[self.action[q][a]];
                let rhs = self.q.mul(self.q.mul(q, self.boundary[a]), self.q.inv(q));
                if lhs != rhs {
                    return Err(TestkitError::InvalidCrossedModule("equivariance fails".into()));
                }
            }
        }
        // Peiffer: ∂(h)·h' = h h' h⁻¹
        for a in 0..nh {
            for b in 0..nh {
                let lhs = self.action[self.boundary[a]][b];
                let rhs = self.h.mul(self.h.mul(a, b), self.h.inv(a));
                if lhs != rhs {
                    return Err(TestkitError::InvalidCrossedModule(
                        "Peiffer identity fails".into(),
                    ));
                }
            }
        }
        Ok(())
    }

    pub fn kernel_size(&self) -> usize {
        let e = self.q.identity();
        self.boundary.iter().filter(|&&v| v == e).count()
    }

    pub fn cokernel_size(&self) -> usize {
        // the image is normal by equivariance
        let mut image: Vec<usize> = self.boundary.clone();
        image.sort_unstable();
        image.dedup();
        self.q.order() / image.len()
    }

    pub fn label(&self) -> String {
        format!("({}->{})", self.h.name, self.q.name)
    }
}

/// `H -> 1` with trivial action (valid precisely for abelian H).
pub fn cm_from_h(h: GroupTable) -> CrossedModule {
    let nh = h.order();
    CrossedModule::new(h, trivial_group(), vec![0; nh], vec![(0..nh).collect()])
        .expect("H -> 1 with abelian H is a crossed module")
}

/// `1 -> Q`.
pub fn cm_from_q(q: GroupTable) -> CrossedModule {
    let nq = q.order();
    let qe = q.identity();
    CrossedModule::new(trivial_group(), q, vec![qe], vec![vec![0]; nq])
        .expect("1 -> Q is always a crossed module")
}

/// `G = G` with the conjugation action.
pub fn cm_identity(g: GroupTable) -> CrossedModule {
    let n = g.order();
    let action = (0..n)
        .map(|q| (0..n).map(|a| g.mul(g.mul(q, a), g.inv(q))).collect())
        .collect();
    CrossedModule::new(g.clone(), g, (0..n).collect(), action)
        .expect("identity with conjugation is a crossed module")
}

/// All valid crossed modules with `|H|, |Q| <= max_order`, over the group
/// representatives of `groups_up_to`, optionally up to isomorphism.
pub fn enumerate_crossed_modules(max_order: usize, up_to_iso: bool) -> Vec<CrossedModule> {
    let groups = groups_up_to(max_order);
    let mut out = Vec::new();
    for h in &groups {
        let nh = h.order();
        let auts_h = h.automorphisms();
        for q in &groups {
            let nq = q.order();
            let auts_q = q.automorphisms();
            let mut homs: Vec<Vec<usize>> = vec![vec![]];
            for _ in 0..nh {
                let mut next = Vec::new();
                for partial in &homs {
                    for v in 0..nq {
                        let mut p2 = partial.clone();
                        p2.push(v);
                        next.push(p2);
                    }
                }
                homs = next;
            }
            homs.retain(|b| (0..nh).all(|x| (0..nh).all(|y| b[h.mul(x, y)] == q.mul(b[x], b[y]))));
            let mut actions: Vec<Vec<usize>> = vec![vec![]]; // indices into auts_h
            for _ in 0..nq {
                let mut next = Vec::new();
                for partial in &actions {
                    for v in 0..auts_h.len() {
                        let mut p2 = partial.clone();
                        p2.push(v);
                        next.push(p2);
                    }
                }
                actions = next;
            }
            let compose_aut =
                |p: &Vec<usize>, r: &Vec<usize>| -> Vec<usize> { (0..nh).map(|x| p[r[x]]).collect() };
            actions.retain(|act| {
                (0..nq).all(|q1| {
                    (0..nq).all(|q2| {
                        auts_h[act[q.mul(q1, q2)]]
                            == compose_aut(&auts_h[act[q1]], &auts_h[act[q2]])
                    })
                })
            });
            let mut found: Vec<CrossedModule> = Vec::new();
            for b in &homs {
                for act_ixs in &actions {
                    let action: Vec<Vec<usize>> =
                        act_ixs.iter().map(|&k| auts_h[k].clone()).collect();
                    if let Ok(cm) = CrossedModule::new(h.clone(), q.clone(), b.clone(), action) {
                        found.push(cm);
                    }
                }
            }
            if up_to_iso {
                let mut canonical: Vec<CrossedModule> = Vec::new();
                let mut seen: Vec<(Vec<usize>, Vec<Vec<usize>>)> = Vec::new();
                for cm in found {
                    if seen.contains(&(cm.boundary.clone(), cm.action.clone())) {
                        continue;
                    }
                    for ph in &auts_h {
                        let mut ph_inv = vec![0; nh];
                        for (x, &y) in ph.iter().enumerate() {
                            ph_inv[y] = x;
                        }
                        for pq in &auts_q {
                            let mut pq_inv = vec![0; nq];
                            for (x, &y) in pq.iter().enumerate() {
                                pq_inv[y] = x;
                            }
                            let b2: Vec<usize> =
                                (0..nh).map(|x| pq[cm.boundary[ph_inv[x]]]).collect();
                            let a2: Vec<Vec<usize>> = (0..nq)
                                .map(|qq| {
                                    (0..nh)
                                        .map(|x| ph[cm.action[pq_inv[qq]][ph_inv[x]]])
                                        .collect()
                                })
                                .collect();
                            if !seen.contains(&(b2.clone(), a2.clone())) {
                                seen.push((b2, a2));
                            }
                        }
                    }
                    canonical.push(cm);
                }
                out.extend(canonical);
            } else {
                out.extend(found);
            }
        }
    }
    out
}

/// The nerve of the strict 2-group presented by a crossed module: one
/// object, edges `Q`, 2-simplices `(q1, q2, h)` with middle face
/// `∂(h)·q2·q1`, 3-simplices determined by the pasting identity
/// `h023 · (q3 ▷ h012) = h013 · h123`.
pub fn nerve_crossed_module(cm: &CrossedModule) -> Result<TruncatedSSet, TestkitError> {
    cm.validate()?;
    let q = &cm.q;
    let h = &cm.h;
    let nq = q.order();
    let nh = h.order();
    let obj = "*".to_string();
    let edge_id = |a: usize| q.elems[a].clone();
    let tri_id = |q1: usize, q2: usize, hh: usize| {
        format!("t({},{},{})", q.elems[q1], q.elems[q2], h.elems[hh])
    };
    let tet_id = |q1: usize, q2: usize, q3: usize, h012: usize, h123: usize, h023: usize| {
        format!(
            "T({},{},{}|{},{},{})",
            q.elems[q1], q.elems[q2], q.elems[q3], h.elems[h012], h.elems[h123], h.elems[h023]
        )
    };
    let mid = |q1: usize, q2: usize, hh: usize| q.mul(cm.boundary[hh], q.mul(q2, q1));
    let h013_of = |q3: usize, h012: usize, h123: usize, h023: usize| {
        h.mul(h.mul(h023, cm.action[q3][h012]), h.inv(h123))
    };

    let mut tris = Vec::new();
    for q1 in 0..nq {
        for q2 in 0..nq {
            for hh in 0..nh {
                tris.push((q1, q2, hh));
            }
        }
    }
    let mut tets = Vec::new();
    for q1 in 0..nq {
        for q2 in 0..nq {
            for q3 in 0..nq {
                for h012 in 0..nh {
                    for h123 in 0..nh {
                        for h023 in 0..nh {
                            tets.push((q1, q2, q3, h012, h123, h023));
                        }
                    }
                }
            }
        }
    }

    let mut raw = RawSSet {
        n: 2,
        simplices: vec![
            vec![obj.clone()],
            (0..nq).map(edge_id).collect(),
            tris.iter().map(|&(a, b, c)| tri_id(a, b, c)).collect(),
            tets.iter()
                .map(|&(a, b, c, x, y, z)| tet_id(a, b, c, x, y, z))
                .collect(),
        ],
        faces: HashMap::new(),
        degens: HashMap::new(),
    };
    raw.faces
        .insert((1, 0), (0..nq).map(|a| (edge_id(a), obj.clone())).collect());
    raw.faces
        .insert((1, 1), (0..nq).map(|a| (edge_id(a), obj.clone())).collect());
    raw.degens
        .insert((0, 0), [(obj.clone(), edge_id(q.identity()))].into());
    raw.faces.insert(
        (2, 0),
        tris.iter()
            .map(|&(q1, q2, hh)| (tri_id(q1, q2, hh), edge_id(q2)))
            .collect(),
    );
    raw.faces.insert(
        (2, 1),
        tris.iter()
            .map(|&(q1, q2, hh)| (tri_id(q1, q2, hh), edge_id(mid(q1, q2, hh))))
            .collect(),
    );
    raw.faces.insert(
        (2, 2),
        tris.iter()
            .map(|&(q1, q2, hh)| (tri_id(q1, q2, hh), edge_id(q1)))
            .collect(),
    );
    let he = h.identity();
    let qe = q.identity();
    raw.degens.insert(
        (1, 0),
        (0..nq).map(|a| (edge_id(a), tri_id(qe, a, he))).collect(),
    );
    raw.degens.insert(
        (1, 1),
        (0..nq).map(|a| (edge_id(a), tri_id(a, qe, he))).collect(),
    );
    let face_map = |f: &dyn Fn(&(usize, usize, usize, usize, usize, usize)) -> String| {
        tets.iter()
            .map(|t| (tet_id(t.0, t.1, t.2, t.3, t.4, t.5), f(t)))
            .collect::<HashMap<String, String>>()
    };
    raw.faces.insert(
        (3, 0),
        face_map(&|&(_, q2, q3, _, h123, _)| tri_id(q2, q3, h123)),
    );
    raw.faces.insert(
        (3, 1),
        face_map(&|&(q1, q2, q3, h012, _, h023)| tri_id(mid(q1, q2, h012), q3, h023)),
    );
    raw.faces.insert(
        (3, 2),
        face_map(&|&(q1, q2, q3, h012, h123, h023)| {
            tri_id(q1, mid(q2, q3, h123), h013_of(q3, h012, h123, h023))
        }),
    );
    raw.faces.insert(
        (3, 3),
        face_map(&|&(q1, q2, _, h012, _, _)| tri_id(q1, q2, h012)),
    );
    let tri_degen = |j: usize| -> HashMap<String, String> {
        tris.iter()
            .map(|&(q1, q2, hh)| {
                let img = match j {
                    0 => tet_id(qe, q1, q2, he, hh, hh),
                    1 => tet_id(q1, qe, q2, he, he, hh),
                    _ => tet_id(q1, q2, qe, hh, he, he),
                };
                (tri_id(q1, q2, hh), img)
            })
            .collect()
    };
    raw.degens.insert((2, 0), tri_degen(0));
    raw.degens.insert((2, 1), tri_degen(1));
    raw.degens.insert((2, 2), tri_degen(2));
    Ok(TruncatedSSet::build(raw)?)
}

/// Trivial extension of an ordinary groupoid to a 2-groupoid.
pub fn groupoid_as_2groupoid(g: &FiniteGroupoid) -> TruncatedSSet {
    crate::gpd::to_2groupoid(g)
}

pub fn arc_nerve_group(t: &GroupTable) -> Result<Arc<TruncatedSSet>, TestkitError> {
    Ok(Arc::new(nerve_group(t)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kan;
    use crate::sset::TruncatedSSet;

    #[test]
    fn group_tables_are_groups() {
        for g in all_groups_up_to_6() {
            assert!(g.validate().is_ok(), "{}", g.name);
        }
    }

    #[test]
    fn z2_nerve_counts() {
        let n = nerve_group(&cyclic(2)).unwrap();
        assert_eq!(n.card(1), 2);
        assert_eq!(n.card(2), 4);
        assert!(kan::check_n_groupoid(&n).ok());
    }

    #[test]
    fn s3_nerve_is_groupoid_with_six_pi1_classes() {
        let n = nerve_group(&sym3()).unwrap();
        assert!(kan::check_n_groupoid(&n).ok());
        assert_eq!(kan::pi_count(&n, 0, 1).unwrap(), 6);
    }

    #[test]
    fn monoid_nerve_is_category_not_groupoid() {
        // {1, x} with x² = x: category axioms hold, an outer horn fails
        let x = idempotent_monoid_nerve();
        assert!(kan::check_n_category(&x).ok());
        let rep = kan::check_n_groupoid(&x);
        assert!(!rep.ok());
        assert!(rep.failures.iter().any(|f| f.i == 0 || f.i == f.m));
    }

    pub fn idempotent_monoid_nerve() -> TruncatedSSet {
        let mul = [[0usize, 1], [1, 1]];
        let elems = vec!["1".to_string(), "x".to_string()];
        let mut raw = RawSSet {
            n: 1,
            simplices: vec![
                vec!["*".into()],
                elems.clone(),
                vec!["(1,1)".into(), "(1,x)".into(), "(x,1)".into(), "(x,x)".into()],
            ],
            faces: HashMap::new(),
            degens: HashMap::new(),
        };
        raw.faces.insert(
            (1, 0),
            elems.iter().map(|e| (e.clone(), "*".to_string())).collect(),
        );
        raw.faces.insert(
            (1, 1),
            elems.iter().map(|e| (e.clone(), "*".to_string())).collect(),
        );
        raw.degens
            .insert((0, 0), [("*".to_string(), "1".to_string())].into());
        let pid = |a: usize, b: usize| format!("({},{})", elems[a], elems[b]);
        let mut f0 = HashMap::new();
        let mut f1 = HashMap::new();
        let mut f2 = HashMap::new();
        for a in 0..2 {
            for b in 0..2 {
                f0.insert(pid(a, b), elems[b].clone());
                f1.insert(pid(a, b), elems[mul[b][a]].clone());
                f2.insert(pid(a, b), elems[a].clone());
            }
        }
        raw.faces.insert((2, 0), f0);
        raw.faces.insert((2, 1), f1);
        raw.faces.insert((2, 2), f2);
        raw.degens.insert(
            (1, 0),
            elems.iter().enumerate().map(|(k, e)| (e.clone(), pid(0, k))).collect(),
        );
        raw.degens.insert(
            (1, 1),
            elems.iter().enumerate().map(|(k, e)| (e.clone(), pid(k, 0))).collect(),
        );
        TruncatedSSet::build(raw).unwrap()
    }

    #[test]
    fn crossed_module_nerves_are_2groupoids() {
        for cm in [
            cm_from_h(cyclic(3)),
            cm_from_q(cyclic(2)),
            cm_identity(cyclic(2)),
        ] {
            let n = nerve_crossed_module(&cm).unwrap();
            assert!(kan::check_n_groupoid(&n).ok(), "{}", cm.label());
        }
    }

    #[test]
    fn crossed_module_pi_counts() {
        // (Z3 -> 1): pi_1 has |coker| = 1 class, pi_2 has |ker| = 3
        let n = nerve_crossed_module(&cm_from_h(cyclic(3))).unwrap();
        assert_eq!(kan::pi_count(&n, 0, 1).unwrap(), 1);
        assert_eq!(kan::pi_count(&n, 0, 2).unwrap(), 3);
        // (Z2 = Z2): both trivial
        let n = nerve_crossed_module(&cm_identity(cyclic(2))).unwrap();
        assert_eq!(kan::pi_count(&n, 0, 1).unwrap(), 1);
        assert_eq!(kan::pi_count(&n, 0, 2).unwrap(), 1);
    }

    #[test]
    fn random_groupoid_is_deterministic() {
        let a = random_groupoid(7, RandomBounds::default()).unwrap();
        let b = random_groupoid(7, RandomBounds::default()).unwrap();
        assert_eq!(a.n_objects(), b.n_objects());
        assert_eq!(a.n_morphisms(), b.n_morphisms());
        for m in a.morphisms() {
            assert_eq!(a.morphism_id(m), b.morphism_id(m));
        }
    }

    #[test]
    fn codiscrete_and_discrete_counts() {
        assert_eq!(codiscrete(&["a", "b"]).unwrap().n_morphisms(), 4);
        assert_eq!(discrete(&["a", "b", "c"]).unwrap().n_morphisms(), 3);
    }

    #[test]
    fn crossed_module_enumeration_finds_standard_instances() {
        let all = enumerate_crossed_modules(2, true);
        assert!(all.len() >= 4, "found {}", all.len());
        for cm in &all {
            assert!(cm.validate().is_ok());
        }
    }
}
