//! Finite truncated simplicial sets.
//!
//! A [`TruncatedSSet`] stores simplex sets in dimensions `0..=n+1` together
//! with a total operator table: for every weakly increasing `t: [i] -> [j]`
//! (with `i, j <= n+1`) a function `d_t` from dimension-`j` simplices to
//! dimension-`i` simplices. Only the elementary coface and codegeneracy maps
//! are supplied on construction; the rest are derived by epi-mono
//! factorization and the functoriality law `d_{t∘s} = d_s ∘ d_t` is checked
//! exhaustively before a value is handed out.

use std::collections::HashMap;
use std::sync::Arc;

use thiserror::Error;

/// Index of a simplex within its dimension.
pub type SimplexIx = u32;

#[derive(Debug, Error)]
pub enum SSetError {
    #[error("dimension {dim} out of range for truncation level {n}")]
    DimOutOfRange { dim: usize, n: usize },
    #[error("unknown simplex id `{id}` in dimension {dim}")]
    UnknownSimplex { dim: usize, id: String },
    #[error("duplicate simplex id `{id}` in dimension {dim}")]
    DuplicateSimplex { dim: usize, id: String },
    #[error("missing map {kind} index {index} at dimension {dim} (simplex `{simplex}`)")]
    MissingMap {
        kind: &'static str,
        index: usize,
        dim: usize,
        simplex: String,
    },
    #[error(
        "simplicial identity violated on `{simplex}` (dim {dim}): d_{t} ∘ d_{s} ≠ d_{{s∘t}} \
         (got `{via_pair}`, expected `{via_composite}`)"
    )]
    IdentityViolation {
        dim: usize,
        simplex: String,
        s: String,
        t: String,
        via_pair: String,
        via_composite: String,
    },
    #[error("horn index {i} out of range for dimension {m}")]
    IndexOutOfRange { m: usize, i: usize },
    #[error("map sources/targets have different truncation levels ({0} vs {1})")]
    DimensionMismatch(usize, usize),
    #[error(
        "map does not commute with d_{op} at dimension {dim}: simplex `{simplex}` \
         maps to `{got}`, expected `{expected}`"
    )]
    MapViolation {
        op: String,
        dim: usize,
        simplex: String,
        got: String,
        expected: String,
    },
    #[error("map component at dimension {dim} is not total: missing `{id}`")]
    MapMissing { dim: usize, id: String },
}

/// All weakly increasing maps `[i] -> [j]`, in lexicographic order.
pub fn monotone_maps(i: usize, j: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = vec![0usize; i + 1];
    loop {
        out.push(cur.clone());
        // advance: rightmost position that can grow, keeping weak monotonicity
        let mut p = i + 1;
        while p > 0 {
            p -= 1;
            if cur[p] < j {
                cur[p] += 1;
                for q in p + 1..=i {
                    cur[q] = cur[p];
                }
                break;
            }
            if p == 0 {
                return out;
            }
        }
    }
}

fn compose_maps(s: &[usize], t: &[usize]) -> Vec<usize> {
    // t ∘ s, for s: [i]->[j], t: [j]->[k]
    s.iter().map(|&v| t[v]).collect()
}

fn is_identity(t: &[usize]) -> bool {
    t.iter().enumerate().all(|(p, &v)| p == v)
}

fn fmt_map(t: &[usize]) -> String {
    let parts: Vec<String> = t.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Raw construction data: simplex ids per dimension plus the elementary
/// coface (`d^i@m`: dim m -> m-1) and codegeneracy (`s^j@m`: dim m -> m+1)
/// maps, given by id.
#[derive(Debug, Clone, Default)]
pub struct RawSSet {
    pub n: usize,
    /// simplex ids for dimensions `0..=n+1`
    pub simplices: Vec<Vec<String>>,
    /// `faces[(m, i)]` maps dim-m ids to dim-(m-1) ids, for `1 <= m <= n+1`, `i <= m`
    pub faces: HashMap<(usize, usize), HashMap<String, String>>,
    /// `degens[(m, j)]` maps dim-m ids to dim-(m+1) ids, for `m <= n`, `j <= m`
    pub degens: HashMap<(usize, usize), HashMap<String, String>>,
}

/// A validated finite truncated simplicial set over the signature of
/// `n`-simplicial sets.
#[derive(Debug, Clone)]
pub struct TruncatedSSet {
    n: usize,
    ids: Vec<Vec<String>>,
    index: Vec<HashMap<String, SimplexIx>>,
    /// `ops[(j, t)]`, `t: [i] -> [j]` weakly increasing, is the table of
    /// `d_t : G_j -> G_i`
    ops: HashMap<(usize, Vec<usize>), Vec<SimplexIx>>,
    /// `face_tables[m][i]` = the i-th face map out of dimension m
    face_tables: Vec<Vec<Vec<SimplexIx>>>,
    /// `degen_tables[m][j]` = the j-th degeneracy out of dimension m
    degen_tables: Vec<Vec<Vec<SimplexIx>>>,
    /// `by_face[m][i][v]` = dim-m simplices whose i-th face is `v`
    by_face: Vec<Vec<Vec<Vec<SimplexIx>>>>,
    /// `by_face_pair[m][p][v0 * card(m-1) + v1]` for the face pairs
    /// `(0,1), (0,2), (1,2)`; used by the tuple enumerators
    by_face_pair: Vec<Vec<Vec<Vec<SimplexIx>>>>,
}

const FACE_PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// Element of `Cyc(face_dim + 1)`: a compatible tuple of `face_dim + 2`
/// simplices of dimension `face_dim`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cycle {
    pub face_dim: usize,
    pub faces: Vec<SimplexIx>,
}

/// Element of `Λ(face_dim + 1, omit)`: a cycle tuple with the `omit`-th
/// coordinate dropped.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Horn {
    pub face_dim: usize,
    pub omit: usize,
    pub faces: Vec<SimplexIx>,
}

impl Horn {
    /// Dimension `m` such that this horn is an element of `Λ(m, i)`.
    pub fn horn_dim(&self) -> usize {
        self.face_dim + 1
    }

    /// Coordinate positions present in the tuple, in ascending order.
    pub fn positions(&self) -> Vec<usize> {
        (0..=self.face_dim + 1).filter(|&p| p != self.omit).collect()
    }
}

impl TruncatedSSet {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn card(&self, dim: usize) -> usize {
        self.ids[dim].len()
    }

    pub fn ids(&self, dim: usize) -> &[String] {
        &self.ids[dim]
    }

    pub fn id(&self, dim: usize, ix: SimplexIx) -> &str {
        &self.ids[dim][ix as usize]
    }

    pub fn lookup(&self, dim: usize, id: &str) -> Option<SimplexIx> {
        self.index.get(dim)?.get(id).copied()
    }

    /// `d_t(s)` for weakly increasing `t: [i] -> [src_dim]`.
    pub fn apply(&self, t: &[usize], src_dim: usize, s: SimplexIx) -> SimplexIx {
        self.ops[&(src_dim, t.to_vec())][s as usize]
    }

    pub fn op_table(&self, t: &[usize], src_dim: usize) -> &[SimplexIx] {
        &self.ops[&(src_dim, t.to_vec())]
    }

    /// i-th face `d_î : G_m -> G_{m-1}`.
    #[inline]
    pub fn face(&self, m: usize, i: usize, s: SimplexIx) -> SimplexIx {
        self.face_tables[m][i][s as usize]
    }

    /// j-th degeneracy `s_j : G_m -> G_{m+1}`.
    #[inline]
    pub fn degen(&self, m: usize, j: usize, s: SimplexIx) -> SimplexIx {
        self.degen_tables[m][j][s as usize]
    }

    /// Direct access to one face table.
    pub fn face_table(&self, m: usize, i: usize) -> &[SimplexIx] {
        &self.face_tables[m][i]
    }

    /// Vertex in position `pos` of a dim-`m` simplex.
    pub fn vertex(&self, m: usize, pos: usize, s: SimplexIx) -> SimplexIx {
        self.apply(&[pos], m, s)
    }

    /// The constant (totally degenerate) dim-`k` simplex over a vertex.
    pub fn constant(&self, k: usize, v: SimplexIx) -> SimplexIx {
        let t = vec![0usize; k + 1];
        self.apply(&t, 0, v)
    }

    pub fn simplices_with_face(&self, m: usize, i: usize, v: SimplexIx) -> &[SimplexIx] {
        &self.by_face[m][i][v as usize]
    }

    /// Boundary tuple `(d_0̂(g), …, d_m̂(g))`.
    pub fn boundary(&self, m: usize, g: SimplexIx) -> Cycle {
        let faces = (0..=m).map(|i| self.face(m, i, g)).collect();
        Cycle {
            face_dim: m - 1,
            faces,
        }
    }

    /// Boundary with coordinate `i` dropped.
    pub fn boundary_omit(&self, m: usize, i: usize, g: SimplexIx) -> Horn {
        let faces = (0..=m).filter(|&p| p != i).map(|p| self.face(m, p, g)).collect();
        Horn {
            face_dim: m - 1,
            omit: i,
            faces,
        }
    }

    /// All tuples indexed by `positions ⊆ {0..=face_dim+1}` satisfying the
    /// cycle compatibility equations `d_î(x_j) = d_{(j-1)̂}(x_i)` for `i < j`
    /// (both in `positions`). Tuples are emitted in lexicographic order.
    fn compatible_tuples(&self, face_dim: usize, positions: &[usize]) -> Vec<Vec<SimplexIx>> {
        let count = self.card(face_dim);
        let mut out = Vec::new();
        let mut chosen: Vec<SimplexIx> = Vec::with_capacity(positions.len());
        self.compatible_rec(face_dim, positions, count, &mut chosen, &mut out);
        out
    }

    fn compatible_rec(
        &self,
        face_dim: usize,
        positions: &[usize],
        count: usize,
        chosen: &mut Vec<SimplexIx>,
        out: &mut Vec<Vec<SimplexIx>>,
    ) {
        let k = chosen.len();
        if k == positions.len() {
            out.push(chosen.clone());
            return;
        }
        let j = positions[k];
        // faces of x_j pinned by the earlier coordinates
        let mut pins: Vec<(usize, SimplexIx)> = Vec::with_capacity(k);
        if face_dim > 0 && k > 0 {
            let back = &self.face_tables[face_dim][j - 1];
            for (k2, &i) in positions[..k].iter().enumerate() {
                pins.push((i, back[chosen[k2] as usize]));
            }
        }
        if pins.is_empty() {
            for c in 0..count as SimplexIx {
                chosen.push(c);
                self.compatible_rec(face_dim, positions, count, chosen, out);
                chosen.pop();
            }
        } else {
            let ft = &self.face_tables[face_dim];
            let (candidates, guaranteed) = self.pin_candidates(face_dim, &pins);
            for &c in candidates {
                if pins[guaranteed..].iter().all(|&(i, v)| ft[i][c as usize] == v) {
                    chosen.push(c);
                    self.compatible_rec(face_dim, positions, count, chosen, out);
                    chosen.pop();
                }
            }
        }
    }

    /// The narrowest prebuilt bucket consistent with the pinned faces,
    /// together with the number of leading pins the bucket already
    /// guarantees.
    fn pin_candidates(&self, face_dim: usize, pins: &[(usize, SimplexIx)]) -> (&[SimplexIx], usize) {
        if pins.len() >= 2 && face_dim >= 2 {
            let (i0, v0) = pins[0];
            let (i1, v1) = pins[1];
            if let Some(p) = FACE_PAIRS.iter().position(|&q| q == (i0, i1)) {
                let below = self.card(face_dim - 1);
                return (
                    &self.by_face_pair[face_dim][p][v0 as usize * below + v1 as usize],
                    2,
                );
            }
        }
        let (i0, v0) = pins[0];
        (self.simplices_with_face(face_dim, i0, v0), 1)
    }

    /// `Cyc(m+1)`: compatible tuples of `m+2` simplices of dimension `m`.
    pub fn cycles(&self, m: usize) -> Vec<Cycle> {
        let positions: Vec<usize> = (0..=m + 1).collect();
        self.compatible_tuples(m, &positions)
            .into_iter()
            .map(|faces| Cycle { face_dim: m, faces })
            .collect()
    }

    /// `Λ(m, i)`: tuples of `m` simplices of dimension `m-1` satisfying the
    /// cycle equations with coordinate `i` omitted.
    pub fn horns(&self, m: usize, i: usize) -> Result<Vec<Horn>, SSetError> {
        if m == 0 || i > m {
            return Err(SSetError::IndexOutOfRange { m, i });
        }
        let positions: Vec<usize> = (0..=m).filter(|&p| p != i).collect();
        Ok(self
            .compatible_tuples(m - 1, &positions)
            .into_iter()
            .map(|faces| Horn {
                face_dim: m - 1,
                omit: i,
                faces,
            })
            .collect())
    }

    /// Walk the horn enumeration without materializing the result.
    pub fn for_each_horn<F: FnMut(&[SimplexIx])>(&self, m: usize, i: usize, mut f: F) {
        let positions: Vec<usize> = (0..=m).filter(|&p| p != i).collect();
        let count = self.card(m - 1);
        let mut chosen = Vec::with_capacity(positions.len());
        self.for_each_rec(m - 1, &positions, count, &mut chosen, &mut f);
    }

    /// Walk the cycle tuples of `Cyc(face_dim + 1)` without materializing.
    pub fn for_each_cycle_tuple<F: FnMut(&[SimplexIx])>(&self, face_dim: usize, mut f: F) {
        let positions: Vec<usize> = (0..=face_dim + 1).collect();
        let count = self.card(face_dim);
        let mut chosen = Vec::with_capacity(positions.len());
        self.for_each_rec(face_dim, &positions, count, &mut chosen, &mut f);
    }

    fn for_each_rec<F: FnMut(&[SimplexIx])>(
        &self,
        face_dim: usize,
        positions: &[usize],
        count: usize,
        chosen: &mut Vec<SimplexIx>,
        f: &mut F,
    ) {
        let k = chosen.len();
        if k == positions.len() {
            f(chosen);
            return;
        }
        let j = positions[k];
        let mut pins: Vec<(usize, SimplexIx)> = Vec::with_capacity(k);
        if face_dim > 0 && k > 0 {
            let back = &self.face_tables[face_dim][j - 1];
            for (k2, &i) in positions[..k].iter().enumerate() {
                pins.push((i, back[chosen[k2] as usize]));
            }
        }
        if pins.is_empty() {
            for c in 0..count as SimplexIx {
                chosen.push(c);
                self.for_each_rec(face_dim, positions, count, chosen, f);
                chosen.pop();
            }
        } else {
            let ft = &self.face_tables[face_dim];
            let (candidates, guaranteed) = self.pin_candidates(face_dim, &pins);
            for &c in candidates {
                if pins[guaranteed..].iter().all(|&(i, v)| ft[i][c as usize] == v) {
                    chosen.push(c);
                    self.for_each_rec(face_dim, positions, count, chosen, f);
                    chosen.pop();
                }
            }
        }
    }
}

/// Dimensions above `n+1`, computed on demand: level `k` of the extension
/// holds the simplices of dimension `n+2+k` as compatible tuples over the
/// level below (level 0 tuples index into the stored dimension `n+1`).
#[derive(Debug, Clone)]
pub struct Extension {
    pub levels: Vec<Vec<Vec<SimplexIx>>>,
}

impl TruncatedSSet {
    /// `G_m = Cyc(m)` for `m > n+1`, computed inductively. Face maps are the
    /// tuple projections.
    pub fn extend_dimension(&self, m: usize) -> Extension {
        assert!(m > self.n + 1, "extension starts above dimension n+1");
        let mut levels: Vec<Vec<Vec<SimplexIx>>> = Vec::new();
        // level 0: Cyc(n+2) over the stored top dimension
        let top = self.n + 1;
        levels.push(self.cycles(top).into_iter().map(|c| c.faces).collect());
        while levels.len() < m - self.n - 1 {
            let below = levels.last().unwrap();
            let face_dim = top + levels.len(); // dimension of the tuple entries
            let next = ext_cycles(below, face_dim);
            levels.push(next);
        }
        Extension { levels }
    }
}

/// Cycles of length `face_dim + 2` over tuple simplices whose faces are the
/// projections: the compatibility equations become
/// `below[x_j][i] == below[x_i][j-1]`.
fn ext_cycles(below: &[Vec<SimplexIx>], face_dim: usize) -> Vec<Vec<SimplexIx>> {
    fn rec(
        below: &[Vec<SimplexIx>],
        len: usize,
        chosen: &mut Vec<SimplexIx>,
        out: &mut Vec<Vec<SimplexIx>>,
    ) {
        let j = chosen.len();
        if j == len {
            out.push(chosen.clone());
            return;
        }
        'cand: for c in 0..below.len() {
            for (i, &prev) in chosen.iter().enumerate() {
                if below[c][i] != below[prev as usize][j - 1] {
                    continue 'cand;
                }
            }
            chosen.push(c as SimplexIx);
            rec(below, len, chosen, out);
            chosen.pop();
        }
    }
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    rec(below, face_dim + 2, &mut chosen, &mut out);
    out
}

// ---------------------------------------------------------------------------
// construction & validation

impl TruncatedSSet {
    pub fn build(raw: RawSSet) -> Result<Self, SSetError> {
        let n = raw.n;
        if raw.simplices.len() != n + 2 {
            return Err(SSetError::DimOutOfRange {
                dim: raw.simplices.len().saturating_sub(1),
                n,
            });
        }
        let mut ids: Vec<Vec<String>> = Vec::with_capacity(n + 2);
        let mut index: Vec<HashMap<String, SimplexIx>> = Vec::with_capacity(n + 2);
        for (dim, dim_ids) in raw.simplices.iter().enumerate() {
            let mut map = HashMap::new();
            for (k, id) in dim_ids.iter().enumerate() {
                if map.insert(id.clone(), k as SimplexIx).is_some() {
                    return Err(SSetError::DuplicateSimplex {
                        dim,
                        id: id.clone(),
                    });
                }
            }
            ids.push(dim_ids.clone());
            index.push(map);
        }

        // resolve the elementary maps to index tables
        let resolve = |tbl: &HashMap<String, String>,
                       kind: &'static str,
                       idx: usize,
                       src: usize,
                       dst: usize|
         -> Result<Vec<SimplexIx>, SSetError> {
            let mut out = Vec::with_capacity(ids[src].len());
            for id in &ids[src] {
                let img = tbl.get(id).ok_or_else(|| SSetError::MissingMap {
                    kind,
                    index: idx,
                    dim: src,
                    simplex: id.clone(),
                })?;
                let v = index[dst]
                    .get(img)
                    .copied()
                    .ok_or_else(|| SSetError::UnknownSimplex {
                        dim: dst,
                        id: img.clone(),
                    })?;
                out.push(v);
            }
            Ok(out)
        };

        let mut faces: Vec<Vec<Vec<SimplexIx>>> = vec![Vec::new(); n + 2];
        for m in 1..=n + 1 {
            let mut per_i = Vec::with_capacity(m + 1);
            for i in 0..=m {
                let tbl = raw.faces.get(&(m, i)).ok_or(SSetError::MissingMap {
                    kind: "face",
                    index: i,
                    dim: m,
                    simplex: String::from("<all>"),
                })?;
                per_i.push(resolve(tbl, "face", i, m, m - 1)?);
            }
            faces[m] = per_i;
        }
        let mut degens: Vec<Vec<Vec<SimplexIx>>> = vec![Vec::new(); n + 1];
        for m in 0..=n {
            let mut per_j = Vec::with_capacity(m + 1);
            for j in 0..=m {
                let tbl = raw.degens.get(&(m, j)).ok_or(SSetError::MissingMap {
                    kind: "degeneracy",
                    index: j,
                    dim: m,
                    simplex: String::from("<all>"),
                })?;
                per_j.push(resolve(tbl, "degeneracy", j, m, m + 1)?);
            }
            degens[m] = per_j;
        }

        // derive the full operator table by epi-mono factorization
        let mut ops: HashMap<(usize, Vec<usize>), Vec<SimplexIx>> = HashMap::new();
        for j in 0..=n + 1 {
            for i in 0..=n + 1 {
                for t in monotone_maps(i, j) {
                    let mut table = Vec::with_capacity(ids[j].len());
                    for s in 0..ids[j].len() as SimplexIx {
                        table.push(apply_generators(&faces, &degens, &t, j, s));
                    }
                    ops.insert((j, t), table);
                }
            }
        }

        // exhaustive functoriality check: d_{t∘s} = d_s ∘ d_t
        for j in 0..=n + 1 {
            for i in 0..=n + 1 {
                for s_map in monotone_maps(i, j) {
                    for k in 0..=n + 1 {
                        for t_map in monotone_maps(j, k) {
                            let comp = compose_maps(&s_map, &t_map);
                            let tbl_comp = &ops[&(k, comp.clone())];
                            let tbl_t = &ops[&(k, t_map.clone())];
                            let tbl_s = &ops[&(j, s_map.clone())];
                            for g in 0..ids[k].len() {
                                let via_pair = tbl_s[tbl_t[g] as usize];
                                if tbl_comp[g] != via_pair {
                                    return Err(SSetError::IdentityViolation {
                                        dim: k,
                                        simplex: ids[k][g].clone(),
                                        s: fmt_map(&s_map),
                                        t: fmt_map(&t_map),
                                        via_pair: ids[i][via_pair as usize].clone(),
                                        via_composite: ids[i][tbl_comp[g] as usize].clone(),
                                    });
                                }
                            }
                        }
                    }
                }
            }
        }

        // face-indexed lookup for horn/cycle enumeration
        let mut by_face: Vec<Vec<Vec<Vec<SimplexIx>>>> = vec![Vec::new(); n + 2];
        for m in 1..=n + 1 {
            let mut per_i = Vec::with_capacity(m + 1);
            for i in 0..=m {
                let mut buckets = vec![Vec::new(); ids[m - 1].len()];
                for (s, &v) in faces[m][i].iter().enumerate() {
                    buckets[v as usize].push(s as SimplexIx);
                }
                per_i.push(buckets);
            }
            by_face[m] = per_i;
        }
        let mut degen_tables: Vec<Vec<Vec<SimplexIx>>> = vec![Vec::new(); n + 2];
        for (m, row) in degens.iter().enumerate() {
            degen_tables[m] = row.clone();
        }
        let mut by_face_pair: Vec<Vec<Vec<Vec<SimplexIx>>>> = vec![Vec::new(); n + 2];
        for m in 2..=n + 1 {
            let below = ids[m - 1].len();
            let mut per_pair = Vec::with_capacity(FACE_PAIRS.len());
            for &(i0, i1) in &FACE_PAIRS {
                let mut buckets = vec![Vec::new(); below * below];
                for s in 0..ids[m].len() {
                    let v0 = faces[m][i0][s] as usize;
                    let v1 = faces[m][i1][s] as usize;
                    buckets[v0 * below + v1].push(s as SimplexIx);
                }
                per_pair.push(buckets);
            }
            by_face_pair[m] = per_pair;
        }

        Ok(TruncatedSSet {
            n,
            ids,
            index,
            ops,
            face_tables: faces,
            degen_tables,
            by_face,
            by_face_pair,
        })
    }
}

fn apply_generators(
    faces: &[Vec<Vec<SimplexIx>>],
    degens: &[Vec<Vec<SimplexIx>>],
    t: &[usize],
    src_dim: usize,
    s: SimplexIx,
) -> SimplexIx {
    // epi-mono factorization: t = δ ∘ σ with σ epi onto the image, δ mono
    let mut image: Vec<usize> = t.to_vec();
    image.dedup();
    let mut cur = s;
    let mut dim = src_dim;
    // δ: apply the missing cofaces, largest first
    for a in (0..=src_dim).rev() {
        if !image.contains(&a) {
            cur = faces[dim][a][cur as usize];
            dim -= 1;
        }
    }
    // σ: peel duplicated positions
    let sigma: Vec<usize> = t
        .iter()
        .map(|&v| image.iter().position(|&w| w == v).unwrap())
        .collect();
    let mut sig = sigma;
    let mut ps = Vec::new();
    while !is_identity(&sig) {
        let p = (0..sig.len() - 1).find(|&p| sig[p] == sig[p + 1]).unwrap();
        ps.push(p);
        sig.remove(p + 1);
    }
    for &p in ps.iter().rev() {
        cur = degens[dim][p][cur as usize];
        dim += 1;
    }
    cur
}

// ---------------------------------------------------------------------------
// simplicial maps

/// A dimension-indexed family of functions commuting with all `d_t`.
#[derive(Debug, Clone)]
pub struct SimplicialMap {
    pub source: Arc<TruncatedSSet>,
    pub target: Arc<TruncatedSSet>,
    comps: Vec<Vec<SimplexIx>>,
}

impl SimplicialMap {
    /// Assemble a map from index tables; validates commutation with every `d_t`.
    pub fn new(
        source: Arc<TruncatedSSet>,
        target: Arc<TruncatedSSet>,
        comps: Vec<Vec<SimplexIx>>,
    ) -> Result<Self, SSetError> {
        let m = SimplicialMap {
            source,
            target,
            comps,
        };
        m.validate()?;
        Ok(m)
    }

    /// Assemble from id-level data.
    pub fn from_ids(
        source: Arc<TruncatedSSet>,
        target: Arc<TruncatedSSet>,
        tables: &[HashMap<String, String>],
    ) -> Result<Self, SSetError> {
        if source.n() != target.n() {
            return Err(SSetError::DimensionMismatch(source.n(), target.n()));
        }
        let mut comps = Vec::with_capacity(source.n() + 2);
        for dim in 0..=source.n() + 1 {
            let tbl = tables.get(dim).ok_or(SSetError::MapMissing {
                dim,
                id: String::from("<table>"),
            })?;
            let mut comp = Vec::with_capacity(source.card(dim));
            for id in source.ids(dim) {
                let img = tbl.get(id).ok_or_else(|| SSetError::MapMissing {
                    dim,
                    id: id.clone(),
                })?;
                let v = target
                    .lookup(dim, img)
                    .ok_or_else(|| SSetError::UnknownSimplex {
                        dim,
                        id: img.clone(),
                    })?;
                comp.push(v);
            }
            comps.push(comp);
        }
        SimplicialMap::new(source, target, comps)
    }

    pub fn identity(x: Arc<TruncatedSSet>) -> SimplicialMap {
        let comps = (0..=x.n() + 1)
            .map(|d| (0..x.card(d) as SimplexIx).collect())
            .collect();
        SimplicialMap {
            source: x.clone(),
            target: x,
            comps,
        }
    }

    pub fn apply(&self, dim: usize, s: SimplexIx) -> SimplexIx {
        self.comps[dim][s as usize]
    }

    pub fn component(&self, dim: usize) -> &[SimplexIx] {
        &self.comps[dim]
    }

    /// Check commutation with every `d_t`; reports the first failure.
    pub fn validate(&self) -> Result<(), SSetError> {
        if self.source.n() != self.target.n() {
            return Err(SSetError::DimensionMismatch(self.source.n(), self.target.n()));
        }
        let n = self.source.n();
        for dim in 0..=n + 1 {
            if self.comps[dim].len() != self.source.card(dim) {
                return Err(SSetError::MapMissing {
                    dim,
                    id: String::from("<partial component>"),
                });
            }
        }
        for j in 0..=n + 1 {
            for i in 0..=n + 1 {
                for t in monotone_maps(i, j) {
                    let src_tbl = self.source.op_table(&t, j);
                    let tgt_tbl = self.target.op_table(&t, j);
                    for g in 0..self.source.card(j) {
                        let got = tgt_tbl[self.comps[j][g] as usize];
                        let expected = self.comps[i][src_tbl[g] as usize];
                        if got != expected {
                            return Err(SSetError::MapViolation {
                                op: fmt_map(&t),
                                dim: j,
                                simplex: self.source.id(j, g as SimplexIx).to_string(),
                                got: self.target.id(i, got).to_string(),
                                expected: self.target.id(i, expected).to_string(),
                            });
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn compose(&self, other: &SimplicialMap) -> SimplicialMap {
        // self ∘ other
        let comps = (0..=other.source.n() + 1)
            .map(|d| {
                other.comps[d]
                    .iter()
                    .map(|&s| self.comps[d][s as usize])
                    .collect()
            })
            .collect();
        SimplicialMap {
            source: other.source.clone(),
            target: self.target.clone(),
            comps,
        }
    }
}

// ---------------------------------------------------------------------------
// discs

/// The disc `D^l` truncated at level `n`: dimension-`k` simplices are all
/// words of length `k+1` in the digits `0..=l`, with structure maps given by
/// composition.
pub fn disc(l: usize, n: usize) -> TruncatedSSet {
    let word = |w: &[usize]| -> String {
        w.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("")
    };
    let words_of = |k: usize| -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..=k {
            let mut next = Vec::with_capacity(out.len() * (l + 1));
            for w in &out {
                for d in 0..=l {
                    let mut w2 = w.clone();
                    w2.push(d);
                    next.push(w2);
                }
            }
            out = next;
        }
        out
    };
    let mut raw = RawSSet {
        n,
        simplices: Vec::new(),
        faces: HashMap::new(),
        degens: HashMap::new(),
    };
    let mut all_words: Vec<Vec<Vec<usize>>> = Vec::new();
    for k in 0..=n + 1 {
        let ws = words_of(k);
        raw.simplices.push(ws.iter().map(|w| word(w)).collect());
        all_words.push(ws);
    }
    for m in 1..=n + 1 {
        for i in 0..=m {
            let mut tbl = HashMap::new();
            for w in &all_words[m] {
                let mut w2 = w.clone();
                w2.remove(i);
                tbl.insert(word(w), word(&w2));
            }
            raw.faces.insert((m, i), tbl);
        }
    }
    for m in 0..=n {
        for j in 0..=m {
            let mut tbl = HashMap::new();
            for w in &all_words[m] {
                let mut w2 = w.clone();
                w2.insert(j, w[j]);
                tbl.insert(word(w), word(&w2));
            }
            raw.degens.insert((m, j), tbl);
        }
    }
    TruncatedSSet::build(raw).expect("disc complexes always satisfy the identities")
}

/// The simplicial map `D^r -> D^l` induced by post-composition with
/// `phi: {0..r} -> {0..l}` (not necessarily monotone).
pub fn disc_map(phi: &[usize], l: usize, n: usize) -> SimplicialMap {
    let r = phi.len() - 1;
    let src = Arc::new(disc(r, n));
    let tgt = Arc::new(disc(l, n));
    let comps = (0..=n + 1)
        .map(|dim| {
            (0..src.card(dim))
                .map(|s| {
                    let w = src.id(dim, s as SimplexIx);
                    let img: String = w
                        .chars()
                        .map(|c| {
                            let d = c.to_digit(10).unwrap() as usize;
                            phi[d].to_string()
                        })
                        .collect();
                    tgt.lookup(dim, &img).unwrap()
                })
                .collect()
        })
        .collect();
    let m = SimplicialMap {
        source: src,
        target: tgt,
        comps,
    };
    debug_assert!(m.validate().is_ok());
    m
}

#[cfg(test)]
mod tests {
    use super::*;

    pub fn point(n: usize) -> TruncatedSSet {
        disc(0, n)
    }

    /// Brute-force cycle oracle: filter the full Cartesian power by the
    /// defining equations, with no pruning.
    pub fn naive_cycles(x: &TruncatedSSet, m: usize) -> Vec<Vec<SimplexIx>> {
        let count = x.card(m) as SimplexIx;
        let len = m + 2;
        let mut out = Vec::new();
        let mut tuple = vec![0 as SimplexIx; len];
        loop {
            let ok = m == 0
                || (0..len).all(|j| {
                    (0..j).all(|i| x.face(m, i, tuple[j]) == x.face(m, j - 1, tuple[i]))
                });
            if ok {
                out.push(tuple.clone());
            }
            let mut p = len;
            loop {
                if p == 0 {
                    return out;
                }
                p -= 1;
                if tuple[p] + 1 < count {
                    tuple[p] += 1;
                    for q in p + 1..len {
                        tuple[q] = 0;
                    }
                    break;
                }
                tuple[p] = 0;
            }
        }
    }

    #[test]
    fn monotone_map_counts() {
        assert_eq!(monotone_maps(0, 3).len(), 4);
        assert_eq!(monotone_maps(1, 1).len(), 3);
        assert_eq!(monotone_maps(3, 3).len(), 35);
    }

    #[test]
    fn point_complex_is_terminal() {
        let p = point(1);
        assert_eq!(p.card(0), 1);
        assert_eq!(p.card(1), 1);
        assert_eq!(p.card(2), 1);
        assert_eq!(p.cycles(1).len(), 1);
        assert_eq!(p.horns(2, 1).unwrap().len(), 1);
    }

    #[test]
    fn disc_cardinalities() {
        for l in 0..=3 {
            for n in 1..=2 {
                let d = disc(l, n);
                for k in 0..=n + 1 {
                    assert_eq!(d.card(k), (l + 1).pow(k as u32 + 1));
                }
            }
        }
    }

    #[test]
    fn disc_map_composition_law() {
        // disc_map(phi ∘ psi) = disc_map(phi) ∘ disc_map(psi), pointwise
        let psi = vec![1usize, 0]; // {0,1} -> {0,1}
        let phi = vec![0usize, 2]; // {0,1} -> {0,1,2}
        let composed: Vec<usize> = psi.iter().map(|&v| phi[v]).collect();
        let lhs = disc_map(&composed, 2, 1);
        let rhs = disc_map(&phi, 2, 1).compose(&disc_map(&psi, 1, 1));
        for dim in 0..=2 {
            for s in 0..lhs.source.card(dim) as SimplexIx {
                assert_eq!(lhs.apply(dim, s), rhs.apply(dim, s));
            }
        }
    }

    #[test]
    fn constant_map_to_d1_collapses_words() {
        let m = disc_map(&[0usize, 0], 1, 1);
        let src = m.source.clone();
        for dim in 0..=2 {
            for s in 0..src.card(dim) as SimplexIx {
                let img = m.target.id(dim, m.apply(dim, s));
                assert!(img.chars().all(|c| c == '0'));
            }
        }
    }

    #[test]
    fn boundary_lands_in_cycles_and_horns() {
        let d = disc(1, 1);
        for m in 1..=2 {
            let cycles: std::collections::HashSet<_> =
                d.cycles(m - 1).into_iter().map(|c| c.faces).collect();
            for g in 0..d.card(m) as SimplexIx {
                assert!(cycles.contains(&d.boundary(m, g).faces));
                for i in 0..=m {
                    let h = d.boundary_omit(m, i, g);
                    let horns: std::collections::HashSet<_> =
                        d.horns(m, i).unwrap().into_iter().map(|h| h.faces).collect();
                    assert!(horns.contains(&h.faces));
                }
            }
        }
    }

    #[test]
    fn pruned_cycles_match_naive_oracle() {
        for (l, n) in [(1usize, 1usize), (2, 1)] {
            let d = disc(l, n);
            for m in 0..=n {
                let fast: Vec<_> = d.cycles(m).into_iter().map(|c| c.faces).collect();
                let slow = naive_cycles(&d, m);
                assert_eq!(fast, slow);
            }
        }
    }

    #[test]
    fn extension_is_stable() {
        let d = disc(1, 1);
        let e3 = d.extend_dimension(3);
        let e4 = d.extend_dimension(4);
        assert_eq!(e3.levels[0], e4.levels[0]);
        // the point complex stays a point at every extension level
        let p = point(1);
        let e = p.extend_dimension(4);
        assert_eq!(e.levels[0].len(), 1);
        assert_eq!(e.levels[1].len(), 1);
    }

    #[test]
    fn broken_identity_reported() {
        // a 2-simplex whose faces do not share vertices correctly
        let mut raw = RawSSet {
            n: 1,
            simplices: vec![
                vec!["a".into(), "b".into()],
                vec!["ia".into(), "ib".into(), "e".into()],
                vec!["t".into()],
            ],
            faces: HashMap::new(),
            degens: HashMap::new(),
        };
        // edges: ia, ib identities; e: a -> b
        let f10: HashMap<String, String> = [("ia", "a"), ("ib", "b"), ("e", "b")]
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        let f11: HashMap<String, String> = [("ia", "a"), ("ib", "b"), ("e", "a")]
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        raw.faces.insert((1, 0), f10);
        raw.faces.insert((1, 1), f11);
        // t: faces chosen inconsistently (d_0 = ia but d_1 = e forces vertex clash)
        let f20: HashMap<String, String> =
            [("t", "ia")].iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        let f21: HashMap<String, String> =
            [("t", "e")].iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        let f22: HashMap<String, String> =
            [("t", "ib")].iter().map(|(k, v)| (k.to_string(), v.to_string())).collect();
        raw.faces.insert((2, 0), f20);
        raw.faces.insert((2, 1), f21);
        raw.faces.insert((2, 2), f22);
        let s00: HashMap<String, String> = [("a", "ia"), ("b", "ib")]
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        raw.degens.insert((0, 0), s00);
        let s10: HashMap<String, String> = [("ia", "t"), ("ib", "t"), ("e", "t")]
            .iter()
            .map(|(k, v)| (k.to_string(), v.to_string()))
            .collect();
        let s11 = s10.clone();
        raw.degens.insert((1, 0), s10);
        raw.degens.insert((1, 1), s11);
        match TruncatedSSet::build(raw) {
            Err(SSetError::IdentityViolation { .. }) => {}
            other => panic!("expected IdentityViolation, got {other:?}"),
        }
    }

    #[test]
    fn missing_map_reported() {
        let raw = RawSSet {
            n: 1,
            simplices: vec![vec!["a".into()], vec!["ia".into()], vec!["t".into()]],
            faces: HashMap::new(),
            degens: HashMap::new(),
        };
        match TruncatedSSet::build(raw) {
            Err(SSetError::MissingMap { .. }) => {}
            other => panic!("expected MissingMap, got {other:?}"),
        }
    }

    #[test]
    fn validate_map_catches_violation() {
        let d1 = Arc::new(disc(1, 1));
        let pt = Arc::new(point(1));
        // constant map to the point is fine
        let comps = (0..=2).map(|dim| vec![0; d1.card(dim)]).collect();
        assert!(SimplicialMap::new(d1.clone(), pt, comps).is_ok());
        // a non-simplicial assignment on D^1 -> D^1 must be rejected
        let mut comps: Vec<Vec<SimplexIx>> = (0..=2)
            .map(|d| (0..d1.card(d) as SimplexIx).collect())
            .collect();
        comps[1][d1.lookup(1, "01").unwrap() as usize] = d1.lookup(1, "00").unwrap();
        match SimplicialMap::new(d1.clone(), d1.clone(), comps) {
            Err(SSetError::MapViolation { .. }) => {}
            other => panic!("expected MapViolation, got {other:?}"),
        }
    }
}
