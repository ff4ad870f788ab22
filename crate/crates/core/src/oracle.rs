//! Brute-force homological algebra over GF(p): explicit matrix
//! representations, Hom spaces by solving the intertwiner system, minimal
//! projective resolutions, Ext dimensions from the Hom complex, AR
//! translates via the transpose, Krull-Schmidt decomposition against the
//! catalogue of indecomposables, cluster-tilting verification, and the AR
//! quiver.
//!
//! Everything here is independent of the closed-form calculus in
//! [`crate::modules`]; agreement between the two is what the test suites
//! check.  The algebra is monomial, so all computed dimensions are
//! field-independent; GF(2) is the default because it is the cheapest
//! exact arithmetic.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::gfp::{self, Mat};
use crate::modules::{self, ModuleList, StringModule};
use crate::quiver::Quiver;
use crate::{Error, Result};

/// A prime field GF(p).
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct FieldSpec {
    p: u64,
}

impl FieldSpec {
    pub fn new(p: u64) -> Result<FieldSpec> {
        gfp::validate_prime(p)?;
        Ok(FieldSpec { p })
    }

    pub fn characteristic(self) -> u64 {
        self.p
    }
}

impl Default for FieldSpec {
    fn default() -> Self {
        FieldSpec { p: 2 }
    }
}

/// A representation of the quiver bound by all length-two paths: one
/// dimension per vertex and one matrix per arrow, with composable pairs
/// composing to zero.  Checked on construction.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Representation {
    p: u64,
    dims: Vec<usize>,
    maps: Vec<Mat>,
}

impl Representation {
    pub fn new(q: &Quiver, dims: Vec<usize>, maps: Vec<Mat>, f: FieldSpec) -> Representation {
        assert_eq!(dims.len(), q.vertex_count());
        assert_eq!(maps.len(), q.arrow_count());
        for (i, a) in q.arrows().iter().enumerate() {
            assert_eq!(maps[i].rows(), dims[a.target], "arrow {} shape", a.id);
            assert_eq!(maps[i].cols(), dims[a.source], "arrow {} shape", a.id);
            assert_eq!(maps[i].p(), f.p);
        }
        // the J^2 relation: beta . alpha = 0 for composable pairs
        for (i, a) in q.arrows().iter().enumerate() {
            for &j in q.outgoing(a.target) {
                assert!(
                    maps[j].mul(&maps[i]).is_zero(),
                    "J^2 violated by {} then {}",
                    a.id,
                    q.arrow(j).id
                );
            }
        }
        Representation { p: f.p, dims, maps }
    }

    pub fn zero(q: &Quiver, f: FieldSpec) -> Representation {
        let dims = vec![0; q.vertex_count()];
        let maps = q
            .arrows()
            .iter()
            .map(|_| Mat::zero(f.p, 0, 0))
            .collect();
        Representation { p: f.p, dims, maps }
    }

    pub fn field(&self) -> FieldSpec {
        FieldSpec { p: self.p }
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn map(&self, a: usize) -> &Mat {
        &self.maps[a]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn dim_vector(&self) -> Vec<usize> {
        self.dims.clone()
    }
}

/// A morphism of representations: one matrix per vertex, natural with
/// respect to every arrow.
#[derive(Clone, Debug)]
pub struct RepMorphism {
    mats: Vec<Mat>,
}

impl RepMorphism {
    pub fn new(q: &Quiver, from: &Representation, to: &Representation, mats: Vec<Mat>) -> RepMorphism {
        assert_eq!(mats.len(), q.vertex_count());
        for (v, m) in mats.iter().enumerate() {
            assert_eq!(m.rows(), to.dims[v]);
            assert_eq!(m.cols(), from.dims[v]);
        }
        for (i, a) in q.arrows().iter().enumerate() {
            let lhs = mats[a.target].mul(&from.maps[i]);
            let rhs = to.maps[i].mul(&mats[a.source]);
            assert_eq!(lhs, rhs, "morphism not natural at arrow {}", a.id);
        }
        RepMorphism { mats }
    }

    pub fn mat(&self, v: usize) -> &Mat {
        &self.mats[v]
    }

    pub fn compose(&self, q: &Quiver, inner: &RepMorphism) -> RepMorphism {
        let mats = (0..q.vertex_count())
            .map(|v| self.mats[v].mul(&inner.mats[v]))
            .collect();
        RepMorphism { mats }
    }

    fn flatten(&self) -> Vec<u64> {
        let mut out = Vec::new();
        for m in &self.mats {
            for i in 0..m.rows() {
                for j in 0..m.cols() {
                    out.push(m.get(i, j));
                }
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.mats.iter().all(Mat::is_zero)
    }
}

/// Realize a string module as 0/1 incidence matrices along its walk.
pub fn realize(q: &Quiver, m: &StringModule, f: FieldSpec) -> Result<Representation> {
    let verts = m.walk_vertices(q);
    let mut dims = vec![0usize; q.vertex_count()];
    let mut pos = Vec::with_capacity(verts.len());
    for &v in &verts {
        pos.push(dims[v]);
        dims[v] += 1;
    }
    let mut maps: Vec<Mat> = q
        .arrows()
        .iter()
        .map(|a| Mat::zero(f.p, dims[a.target], dims[a.source]))
        .collect();
    for (i, l) in m.word().iter().enumerate() {
        match *l {
            modules::Letter::Direct(a) => maps[a].set(pos[i + 1], pos[i], 1),
            modules::Letter::Inverse(a) => maps[a].set(pos[i], pos[i + 1], 1),
        }
    }
    Ok(Representation::new(q, dims, maps, f))
}

pub fn direct_sum(q: &Quiver, a: &Representation, b: &Representation) -> Representation {
    let f = a.field();
    let dims: Vec<usize> = (0..q.vertex_count()).map(|v| a.dims[v] + b.dims[v]).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, arr)| {
            let mut m = Mat::zero(f.p, dims[arr.target], dims[arr.source]);
            for r in 0..a.dims[arr.target] {
                for c in 0..a.dims[arr.source] {
                    m.set(r, c, a.maps[i].get(r, c));
                }
            }
            for r in 0..b.dims[arr.target] {
                for c in 0..b.dims[arr.source] {
                    m.set(a.dims[arr.target] + r, a.dims[arr.source] + c, b.maps[i].get(r, c));
                }
            }
            m
        })
        .collect();
    Representation::new(q, dims, maps, f)
}

/// Basis of the space of morphisms `a -> b`, by solving the per-arrow
/// intertwiner equations.
pub fn hom_basis(q: &Quiver, a: &Representation, b: &Representation) -> Vec<RepMorphism> {
    let p = a.p;
    let nv = q.vertex_count();
    let offsets: Vec<usize> = {
        let mut off = vec![0usize; nv + 1];
        for v in 0..nv {
            off[v + 1] = off[v] + b.dims[v] * a.dims[v];
        }
        off
    };
    let unknowns = offsets[nv];
    let mut rows: Vec<Vec<u64>> = Vec::new();
    for (i, arr) in q.arrows().iter().enumerate() {
        let (s, t) = (arr.source, arr.target);
        // phi_t . A(alpha) = B(alpha) . phi_s, entrywise
        for r in 0..b.dims[t] {
            for c in 0..a.dims[s] {
                let mut row = vec![0u64; unknowns];
                for k in 0..a.dims[t] {
                    let coef = a.maps[i].get(k, c);
                    if coef != 0 {
                        let idx = offsets[t] + r * a.dims[t] + k;
                        row[idx] = (row[idx] + coef) % p;
                    }
                }
                for k in 0..b.dims[s] {
                    let coef = b.maps[i].get(r, k);
                    if coef != 0 {
                        let idx = offsets[s] + k * a.dims[s] + c;
                        row[idx] = (row[idx] + p - coef % p) % p;
                    }
                }
                rows.push(row);
            }
        }
    }
    let system = if rows.is_empty() {
        Mat::zero(p, 0, unknowns)
    } else {
        Mat::from_rows(p, rows)
    };
    let kernel = system.kernel_basis();
    (0..kernel.cols())
        .map(|col| {
            let mats = (0..nv)
                .map(|v| {
                    let mut m = Mat::zero(p, b.dims[v], a.dims[v]);
                    for r in 0..b.dims[v] {
                        for c in 0..a.dims[v] {
                            m.set(r, c, kernel.get(offsets[v] + r * a.dims[v] + c, col));
                        }
                    }
                    m
                })
                .collect();
            RepMorphism { mats }
        })
        .collect()
}

pub fn hom_dim(q: &Quiver, a: &Representation, b: &Representation) -> usize {
    hom_basis(q, a, b).len()
}

/// A finite direct sum of indecomposable projectives with bookkeeping for
/// its generators: `gen_global[s]` is the basis index of the generator of
/// summand `s` inside the vertex block, and `arrow_global[s]` locates the
/// radical basis vector for each arrow out of the summand's vertex.
#[derive(Clone, Debug)]
pub struct ProjRep {
    pub summands: Vec<usize>,
    pub rep: Representation,
    gen_global: Vec<usize>,
    arrow_global: Vec<Vec<(usize, usize)>>,
}

impl ProjRep {
    pub fn is_trivial(&self) -> bool {
        self.summands.is_empty()
    }

    /// Multiplicity of `P(v)` among the summands.
    pub fn multiplicity(&self, v: usize) -> usize {
        self.summands.iter().filter(|&&s| s == v).count()
    }
}

pub fn projective_rep(q: &Quiver, summands: &[usize], f: FieldSpec) -> ProjRep {
    let nv = q.vertex_count();
    let mut dims = vec![0usize; nv];
    let mut gen_global = Vec::with_capacity(summands.len());
    let mut arrow_global = Vec::with_capacity(summands.len());
    for &v in summands {
        gen_global.push(dims[v]);
        dims[v] += 1;
        let mut locs = Vec::new();
        for &a in q.outgoing(v) {
            let t = q.arrow(a).target;
            locs.push((a, dims[t]));
            dims[t] += 1;
        }
        arrow_global.push(locs);
    }
    let mut maps: Vec<Mat> = q
        .arrows()
        .iter()
        .map(|a| Mat::zero(f.p, dims[a.target], dims[a.source]))
        .collect();
    for (s, &v) in summands.iter().enumerate() {
        for &(a, loc) in &arrow_global[s] {
            maps[a].set(loc, gen_global[s], 1);
        }
        let _ = v;
    }
    let rep = Representation::new(q, dims, maps, f);
    ProjRep {
        summands: summands.to_vec(),
        rep,
        gen_global,
        arrow_global,
    }
}

/// The morphism out of a projective determined by its generator images.
pub fn proj_morphism(
    q: &Quiver,
    from: &ProjRep,
    to: &Representation,
    gen_images: &[Vec<u64>],
) -> RepMorphism {
    let p = to.p;
    let mut mats: Vec<Mat> = (0..q.vertex_count())
        .map(|v| Mat::zero(p, to.dims[v], from.rep.dims[v]))
        .collect();
    for (s, &v) in from.summands.iter().enumerate() {
        let img = &gen_images[s];
        assert_eq!(img.len(), to.dims[v]);
        for (r, &x) in img.iter().enumerate() {
            mats[v].set(r, from.gen_global[s], x);
        }
        for &(a, loc) in &from.arrow_global[s] {
            let t = q.arrow(a).target;
            // e_alpha maps to B(alpha) applied to the generator image
            for r in 0..to.dims[t] {
                let mut acc = 0u64;
                for (k, &x) in img.iter().enumerate() {
                    acc = (acc + to.maps[a].get(r, k) * x) % p;
                }
                mats[t].set(r, loc, acc);
            }
        }
    }
    RepMorphism::new(q, &from.rep, to, mats)
}

/// Per-vertex matrices whose columns span the radical (the images of all
/// incoming arrows).
pub fn radical_matrices(q: &Quiver, x: &Representation) -> Vec<Mat> {
    (0..q.vertex_count())
        .map(|v| {
            let incoming: Vec<&Mat> = q.incoming(v).iter().map(|&a| &x.maps[a]).collect();
            if incoming.is_empty() {
                Mat::zero(x.p, x.dims[v], 0)
            } else {
                Mat::hstack(x.p, &incoming)
            }
        })
        .collect()
}

pub fn top_dims(q: &Quiver, x: &Representation) -> Vec<usize> {
    radical_matrices(q, x)
        .iter()
        .enumerate()
        .map(|(v, rad)| x.dims[v] - rad.rank())
        .collect()
}

/// Minimal projective cover `P -> x`: one summand `P(v)` per top basis
/// vector, generators mapped to a complement of the radical.
pub fn projective_cover(q: &Quiver, x: &Representation, f: FieldSpec) -> (ProjRep, RepMorphism) {
    let rads = radical_matrices(q, x);
    let mut summands = Vec::new();
    let mut images: Vec<Vec<u64>> = Vec::new();
    for (v, rad) in rads.iter().enumerate() {
        let complement = rad.extend_to_basis();
        for c in 0..complement.cols() {
            summands.push(v);
            images.push(complement.column(c));
        }
    }
    let cover = projective_rep(q, &summands, f);
    let morphism = proj_morphism(q, &cover, x, &images);
    (cover, morphism)
}

/// Kernel of a morphism, as a subrepresentation with its inclusion.
pub fn kernel_subrep(
    q: &Quiver,
    dom: &Representation,
    f: &RepMorphism,
) -> (Representation, RepMorphism) {
    let p = dom.p;
    let kernels: Vec<Mat> = (0..q.vertex_count()).map(|v| f.mats[v].kernel_basis()).collect();
    let dims: Vec<usize> = kernels.iter().map(Mat::cols).collect();
    let maps: Vec<Mat> = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| {
            let image = dom.maps[i].mul(&kernels[a.source]);
            kernels[a.target]
                .solve(&image)
                .expect("arrow image of a kernel lies in the kernel")
        })
        .collect();
    let field = FieldSpec { p };
    let rep = Representation::new(q, dims, maps, field);
    let incl = RepMorphism::new(q, &rep, dom, kernels);
    (rep, incl)
}

/// Cokernel of a morphism into `to`, with the projection.
pub fn cokernel_rep(
    q: &Quiver,
    to: &Representation,
    f: &RepMorphism,
) -> (Representation, RepMorphism) {
    let p = to.p;
    let mut proj = Vec::new();
    let mut section = Vec::new();
    for v in 0..q.vertex_count() {
        let img = &f.mats[v];
        let chosen = img.independent_columns();
        let cols: Vec<Vec<u64>> = chosen.iter().map(|&c| img.column(c)).collect();
        let im_mat = if cols.is_empty() {
            Mat::zero(p, to.dims[v], 0)
        } else {
            let col_mats: Vec<Mat> = cols
                .iter()
                .map(|c| Mat::from_rows(p, c.iter().map(|&x| vec![x]).collect()))
                .collect();
            Mat::hstack(p, &col_mats.iter().collect::<Vec<_>>())
        };
        let ext = im_mat.extend_to_basis();
        let basis = Mat::hstack(p, &[&im_mat, &ext]);
        let r = im_mat.cols();
        let n = to.dims[v];
        let inv = if n == 0 {
            Mat::zero(p, 0, 0)
        } else {
            basis.solve(&Mat::identity(p, n)).expect("basis is invertible")
        };
        let mut q_v = Mat::zero(p, n - r, n);
        for i in r..n {
            for j in 0..n {
                q_v.set(i - r, j, inv.get(i, j));
            }
        }
        proj.push(q_v);
        section.push(ext);
    }
    let dims: Vec<usize> = proj.iter().map(Mat::rows).collect();
    let maps: Vec<Mat> = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(i, a)| proj[a.target].mul(&to.maps[i]).mul(&section[a.source]))
        .collect();
    let field = FieldSpec { p };
    let rep = Representation::new(q, dims, maps, field);
    let pr = RepMorphism::new(q, to, &rep, proj);
    (rep, pr)
}

/// First syzygy: kernel of the minimal projective cover.
pub fn syzygy_rep(q: &Quiver, x: &Representation, f: FieldSpec) -> Representation {
    let (p0, c) = projective_cover(q, x, f);
    kernel_subrep(q, &p0.rep, &c).0
}

/// The opposite quiver: same vertex and arrow names, arrows reversed.
/// Indices are shared with the original, so representations transfer
/// positionally.
pub fn opposite(q: &Quiver) -> Quiver {
    let vertices: Vec<String> = q.vertex_names().to_vec();
    let arrows = q
        .arrows()
        .iter()
        .map(|a| {
            (
                Some(a.id.clone()),
                q.vertex_name(a.target).to_string(),
                q.vertex_name(a.source).to_string(),
            )
        })
        .collect();
    Quiver::build(vertices, arrows).expect("opposite of a valid quiver is valid")
}

/// Vector-space duality: a representation of the opposite quiver with
/// transposed matrices.
pub fn dual(x: &Representation) -> Representation {
    Representation {
        p: x.p,
        dims: x.dims.clone(),
        maps: x.maps.iter().map(Mat::transpose).collect(),
    }
}

/// Cosyzygy, computed as the dual of the syzygy of the dual.
pub fn cosyzygy_rep(q: &Quiver, x: &Representation, f: FieldSpec) -> Representation {
    let qop = opposite(q);
    dual(&syzygy_rep(&qop, &dual(x), f))
}

/// Transpose over the opposite algebra, from a minimal projective
/// presentation `P1 -> P0 -> x -> 0`: the presentation matrix is re-read
/// in path coordinates, reversed, and its cokernel taken over the
/// opposite quiver.
pub fn transpose_rep(q: &Quiver, x: &Representation, f: FieldSpec) -> Representation {
    let qop = opposite(q);
    if x.is_zero() {
        return Representation::zero(&qop, f);
    }
    let (p0, c0) = projective_cover(q, x, f);
    let (omega, incl) = kernel_subrep(q, &p0.rep, &c0);
    let (p1, c1) = projective_cover(q, &omega, f);
    let d1 = incl.compose(q, &c1);

    let p0op = projective_rep(&qop, &p0.summands, f);
    let p1op = projective_rep(&qop, &p1.summands, f);

    // generator images of g*: P0* -> P1*, reading off the path
    // coordinates of d1 (the coefficient of the generator of summand i and
    // of each radical vector e_alpha with alpha: u_i -> v_j).
    let mut images: Vec<Vec<u64>> = Vec::with_capacity(p0.summands.len());
    for (i, &ui) in p0.summands.iter().enumerate() {
        let mut img = vec![0u64; p1op.rep.dims[ui]];
        for (j, &vj) in p1.summands.iter().enumerate() {
            let column = p1.gen_global[j];
            // coefficient of the identity path
            if vj == ui {
                let coef = d1.mats[vj].get(p0.gen_global[i], column);
                if coef != 0 {
                    let idx = p1op.gen_global[j];
                    img[idx] = (img[idx] + coef) % f.p;
                }
            }
            // coefficient of each arrow u_i -> v_j
            for &(a, loc) in &p0.arrow_global[i] {
                if q.arrow(a).target != vj {
                    continue;
                }
                let coef = d1.mats[vj].get(loc, column);
                if coef != 0 {
                    let (_, opp_loc) = p1op.arrow_global[j]
                        .iter()
                        .copied()
                        .find(|&(b, _)| b == a)
                        .expect("reversed arrow sits in the opposite projective");
                    img[opp_loc] = (img[opp_loc] + coef) % f.p;
                }
            }
        }
        images.push(img);
    }
    let gstar = proj_morphism(&qop, &p0op, &p1op.rep, &images);
    cokernel_rep(&qop, &p1op.rep, &gstar).0
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Translate {
    Forward,
    Inverse,
}

/// The AR translate `D Tr` (forward) or `Tr D` (inverse).  Projective
/// input forward and injective input inverse give the zero
/// representation.
pub fn ar_translate(q: &Quiver, x: &Representation, dir: Translate, f: FieldSpec) -> Representation {
    match dir {
        Translate::Forward => dual(&transpose_rep(q, x, f)),
        Translate::Inverse => {
            let qop = opposite(q);
            transpose_rep(&qop, &dual(x), f)
        }
    }
}

/// `tau_n^- = tau^- . Omega^{-(n-1)}`.
pub fn tau_n_inverse(q: &Quiver, x: &Representation, n: u64, f: FieldSpec) -> Result<Representation> {
    if n < 1 {
        return Err(Error::BadLevel { n, min: 1 });
    }
    let mut cur = x.clone();
    for _ in 1..n {
        cur = cosyzygy_rep(q, &cur, f);
    }
    Ok(ar_translate(q, &cur, Translate::Inverse, f))
}

/// A minimal projective resolution `P_len -> ... -> P_0 -> x`, stopping
/// early when a syzygy vanishes.  `terms[j]` holds `P_j` and the
/// differential into the previous term (into `x` for `j = 0`).
pub struct Resolution {
    pub terms: Vec<(ProjRep, RepMorphism)>,
}

impl Resolution {
    pub fn term(&self, j: usize) -> Option<&(ProjRep, RepMorphism)> {
        self.terms.get(j)
    }
}

pub fn minimal_resolution(q: &Quiver, x: &Representation, len: usize, f: FieldSpec) -> Resolution {
    let mut terms: Vec<(ProjRep, RepMorphism)> = Vec::new();
    let mut cur = x.clone();
    // inclusion of `cur` into the previous projective term
    let mut incl_prev: Option<RepMorphism> = None;
    for _ in 0..=len {
        if cur.is_zero() {
            break;
        }
        let (p, c) = projective_cover(q, &cur, f);
        let diff = match &incl_prev {
            None => c.clone(),
            Some(inc) => inc.compose(q, &c),
        };
        let (omega, incl) = kernel_subrep(q, &p.rep, &c);
        terms.push((p, diff));
        incl_prev = Some(incl);
        cur = omega;
    }
    Resolution { terms }
}

/// Image of every differential between projective terms lies inside the
/// radical of its target (the cover of `x` itself is onto, not
/// radical-valued, so it is skipped).
pub fn resolution_is_minimal(q: &Quiver, _x: &Representation, res: &Resolution) -> bool {
    for j in 1..res.terms.len() {
        let target_rads = radical_matrices(q, &res.terms[j - 1].0.rep);
        let diff = &res.terms[j].1;
        for (v, rad) in target_rads.iter().enumerate() {
            let both = Mat::hstack(rad.p(), &[rad, &diff.mats[v]]);
            if both.rank() != rad.rank() {
                return false;
            }
        }
    }
    true
}

fn hom_complex_step(
    q: &Quiver,
    res: &Resolution,
    j: usize,
    b: &Representation,
    f: FieldSpec,
) -> Mat {
    let dims_of = |term: Option<&(ProjRep, RepMorphism)>| -> usize {
        term.map_or(0, |(p, _)| p.summands.iter().map(|&v| b.dims[v]).sum())
    };
    let h_j = dims_of(res.term(j));
    let h_next = dims_of(res.term(j + 1));
    let mut out = Mat::zero(f.p, h_next, h_j);
    let (Some((pj, _)), Some((pn, d_next))) = (res.term(j), res.term(j + 1)) else {
        return out;
    };
    let mut col = 0;
    for (s, &vs) in pj.summands.iter().enumerate() {
        for t in 0..b.dims[vs] {
            // phi sending the generator of summand s to basis vector t
            let images: Vec<Vec<u64>> = pj
                .summands
                .iter()
                .enumerate()
                .map(|(s2, &v2)| {
                    let mut img = vec![0u64; b.dims[v2]];
                    if s2 == s {
                        img[t] = 1;
                    }
                    img
                })
                .collect();
            let phi = proj_morphism(q, pj, b, &images);
            // psi = phi . d_{j+1}: read generator coordinates
            let mut row_idx = 0;
            for (r, &wr) in pn.summands.iter().enumerate() {
                let composed = phi.mats[wr].mul(&d_next.mats[wr]);
                for u in 0..b.dims[wr] {
                    out.set(row_idx + u, col, composed.get(u, pn.gen_global[r]));
                }
                row_idx += b.dims[wr];
            }
            col += 1;
        }
    }
    out
}

/// `dim Ext^i(a, b)` for `i >= 1`, as cohomology of `Hom(P_*, b)` over a
/// minimal resolution of `a`.
pub fn ext_dim(
    q: &Quiver,
    a: &Representation,
    b: &Representation,
    i: usize,
    f: FieldSpec,
) -> usize {
    assert!(i >= 1);
    let res = minimal_resolution(q, a, i + 1, f);
    ext_from_resolution(q, &res, b, i, f)
}

/// Same as [`ext_dim`] with a resolution-length cap.
pub fn ext_dim_capped(
    q: &Quiver,
    a: &Representation,
    b: &Representation,
    i: usize,
    f: FieldSpec,
    cap: usize,
) -> Result<usize> {
    if i + 1 > cap {
        return Err(Error::ResolutionCap { needed: i + 1, cap });
    }
    Ok(ext_dim(q, a, b, i, f))
}

pub fn ext_from_resolution(
    q: &Quiver,
    res: &Resolution,
    b: &Representation,
    i: usize,
    f: FieldSpec,
) -> usize {
    let h_i = res
        .term(i)
        .map_or(0, |(p, _)| p.summands.iter().map(|&v| b.dims[v]).sum());
    if h_i == 0 {
        return 0;
    }
    let d_i = hom_complex_step(q, res, i, b, f);
    let d_prev = hom_complex_step(q, res, i - 1, b, f);
    (h_i - d_i.rank()) - d_prev.rank()
}

/// The realized catalogue of all indecomposables, with the machinery to
/// split arbitrary representations into summands.
pub struct Catalog {
    pub modules: Vec<StringModule>,
    pub reps: Vec<Representation>,
    f: FieldSpec,
}

impl Catalog {
    pub fn build(q: &Quiver, f: FieldSpec) -> Result<Catalog> {
        let modules = modules::enumerate_indecomposables(q)?;
        let reps = modules
            .iter()
            .map(|m| realize(q, m, f))
            .collect::<Result<Vec<_>>>()?;
        Ok(Catalog { modules, reps, f })
    }

    pub fn len(&self) -> usize {
        self.modules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modules.is_empty()
    }

    pub fn index_of(&self, m: &StringModule) -> Option<usize> {
        self.modules.iter().position(|x| x == m)
    }

    /// The scalar `c` with `phi - c id` nilpotent; endomorphism rings of
    /// string modules are local with residue field GF(p).
    fn scalar_part(&self, rep: &Representation, phi: &RepMorphism) -> u64 {
        let p = self.f.p;
        let total = rep.total_dim() as u64;
        let is_nilpotent = |c: u64| -> bool {
            (0..rep.dims.len()).all(|v| {
                let n = rep.dims[v];
                if n == 0 {
                    return true;
                }
                let shifted = phi.mats[v].sub(&Mat::identity(p, n).scale(c));
                let mut pow = shifted.clone();
                for _ in 1..n {
                    pow = pow.mul(&shifted);
                }
                pow.is_zero()
            })
        };
        if !total.is_multiple_of(p) {
            let trace: u64 = (0..rep.dims.len())
                .map(|v| (0..rep.dims[v]).map(|i| phi.mats[v].get(i, i)).sum::<u64>())
                .sum::<u64>()
                % p;
            // c = trace / total
            let inv = {
                let mut base = total % p;
                let mut exp = p - 2;
                let mut acc = 1u64;
                while exp > 0 {
                    if exp & 1 == 1 {
                        acc = acc * base % p;
                    }
                    base = base * base % p;
                    exp >>= 1;
                }
                acc
            };
            let c = trace * inv % p;
            debug_assert!(is_nilpotent(c));
            return c;
        }
        (0..p).find(|&c| is_nilpotent(c)).expect("local endomorphism ring")
    }

    /// Multiplicity of catalogue member `c` inside `y`: the rank of the
    /// pairing `Hom(C, y) x Hom(y, C) -> End(C)/rad`.
    fn multiplicity(&self, q: &Quiver, c: usize, y: &Representation) -> usize {
        let crep = &self.reps[c];
        let to = hom_basis(q, crep, y);
        if to.is_empty() {
            return 0;
        }
        let back = hom_basis(q, y, crep);
        if back.is_empty() {
            return 0;
        }
        let rows: Vec<Vec<u64>> = back
            .iter()
            .map(|g| {
                to.iter()
                    .map(|ff| {
                        let endo = g.compose(q, ff);
                        if endo.is_zero() {
                            0
                        } else {
                            self.scalar_part(crep, &endo)
                        }
                    })
                    .collect()
            })
            .collect();
        gfp::row_span_rank(self.f.p, &rows)
    }

    /// Split `y` into catalogue members with multiplicities (Krull-Schmidt).
    pub fn decompose(&self, q: &Quiver, y: &Representation) -> Result<Vec<(StringModule, usize)>> {
        if y.is_zero() {
            return Ok(vec![]);
        }
        let ydims = y.dim_vector();
        let mut out = Vec::new();
        let mut remaining = ydims.clone();
        for (i, m) in self.modules.iter().enumerate() {
            let mdims: BTreeMap<usize, usize> = m.dim_vector(q);
            let fits = mdims.iter().all(|(&v, &d)| d <= ydims[v]);
            if !fits {
                continue;
            }
            let mult = self.multiplicity(q, i, y);
            if mult > 0 {
                out.push((m.clone(), mult));
                for (&v, &d) in &mdims {
                    let need = d * mult;
                    if remaining[v] < need {
                        return Err(Error::Decompose(format!(
                            "multiplicities exceed the dimension vector at {}",
                            q.vertex_name(v)
                        )));
                    }
                    remaining[v] -= need;
                }
            }
        }
        if remaining.iter().any(|&d| d != 0) {
            return Err(Error::Decompose(
                "summand multiplicities do not exhaust the dimension vector".to_string(),
            ));
        }
        Ok(out)
    }

    /// Inverse translate reduced to its canonical string (zero for
    /// injectives).  Input must be indecomposable.
    pub fn tau_inverse_string(&self, q: &Quiver, m: &StringModule) -> Result<Option<StringModule>> {
        let x = realize(q, m, self.f)?;
        let t = ar_translate(q, &x, Translate::Inverse, self.f);
        let parts = self.decompose(q, &t)?;
        match parts[..] {
            [] => Ok(None),
            [(ref s, 1)] => Ok(Some(s.clone())),
            _ => Err(Error::Decompose(
                "inverse translate of an indecomposable is not indecomposable".to_string(),
            )),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Counterexample {
    pub module: String,
    pub i: usize,
    pub direction: String,
}

/// Result of an oracle verification.  `functorially_finite` records that
/// the condition holds because the algebra is representation-finite; it
/// is implied, not computed.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub counterexamples: Vec<Counterexample>,
    pub functorially_finite: String,
}

impl VerifyReport {
    fn new(counterexamples: Vec<Counterexample>) -> VerifyReport {
        VerifyReport {
            pass: counterexamples.is_empty(),
            counterexamples,
            functorially_finite: "implied by representation-finiteness".to_string(),
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

/// Check the defining property of an n-cluster-tilting subcategory from
/// first principles: for every indecomposable `X`,
/// `X in add(gens)  <=>  Ext^i(X, gens) = 0 for 0 < i < n
///                  <=>  Ext^i(gens, X) = 0 for 0 < i < n`.
///
/// Counterexamples with `i = 0` record membership mismatches (an `X`
/// lying in a perpendicular category but not in `add(gens)`).
pub fn verify_n_cluster_tilting(
    q: &Quiver,
    n: u64,
    gens: &ModuleList,
    f: FieldSpec,
) -> Result<VerifyReport> {
    if n < 1 {
        return Err(Error::BadLevel { n, min: 1 });
    }
    let catalog = Catalog::build(q, f)?;
    let gen_set = gens.summand_set();
    let mut gen_indices = Vec::new();
    for g in &gen_set {
        let idx = catalog
            .index_of(g)
            .ok_or_else(|| Error::BadModule(format!("generator {} is not indecomposable", g.display(q))))?;
        gen_indices.push(idx);
    }
    let resolutions: Vec<Resolution> = catalog
        .reps
        .iter()
        .map(|r| minimal_resolution(q, r, n as usize, f))
        .collect();

    let mut counterexamples = Vec::new();
    for (xi, x) in catalog.modules.iter().enumerate() {
        let mem = gen_set.contains(x);
        let mut from_witness: Option<usize> = None;
        let mut to_witness: Option<usize> = None;
        for i in 1..n as usize {
            for &g in &gen_indices {
                if from_witness.is_none()
                    && ext_from_resolution(q, &resolutions[xi], &catalog.reps[g], i, f) > 0
                {
                    from_witness = Some(i);
                }
                if to_witness.is_none()
                    && ext_from_resolution(q, &resolutions[g], &catalog.reps[xi], i, f) > 0
                {
                    to_witness = Some(i);
                }
            }
        }
        let name = x.display(q);
        if mem {
            if let Some(i) = from_witness {
                counterexamples.push(Counterexample {
                    module: name.clone(),
                    i,
                    direction: "from".to_string(),
                });
            }
            if let Some(i) = to_witness {
                counterexamples.push(Counterexample {
                    module: name.clone(),
                    i,
                    direction: "to".to_string(),
                });
            }
        } else {
            if from_witness.is_none() {
                counterexamples.push(Counterexample {
                    module: name.clone(),
                    i: 0,
                    direction: "from".to_string(),
                });
            }
            if to_witness.is_none() {
                counterexamples.push(Counterexample {
                    module: name,
                    i: 0,
                    direction: "to".to_string(),
                });
            }
        }
    }
    Ok(VerifyReport::new(counterexamples))
}

/// Check `Omega^n(X) in add(gens + projectives)` for every generator,
/// with syzygies computed by iterated minimal covers.
pub fn verify_nz(q: &Quiver, n: u64, gens: &ModuleList, f: FieldSpec) -> Result<VerifyReport> {
    if n < 1 {
        return Err(Error::BadLevel { n, min: 1 });
    }
    let catalog = Catalog::build(q, f)?;
    let gen_set = gens.summand_set();
    let mut counterexamples = Vec::new();
    for x in gens.iter() {
        let mut cur = realize(q, x, f)?;
        for _ in 0..n {
            cur = syzygy_rep(q, &cur, f);
        }
        for (summand, _) in catalog.decompose(q, &cur)? {
            if !summand.is_projective(q) && !gen_set.contains(&summand) {
                counterexamples.push(Counterexample {
                    module: format!("{} (syzygy of {})", summand.display(q), x.display(q)),
                    i: n as usize,
                    direction: "omega".to_string(),
                });
            }
        }
    }
    Ok(VerifyReport::new(counterexamples))
}

/// The AR quiver: nodes are the indecomposables, arrow multiplicities are
/// `dim rad(X, Y) / rad^2(X, Y)`, and `tau_pairs` joins each non-injective
/// `N` to its inverse translate.
#[derive(Clone, Debug)]
pub struct ArQuiver {
    pub nodes: Vec<StringModule>,
    pub arrows: Vec<(usize, usize, usize)>,
    pub tau_pairs: Vec<(usize, usize)>,
}

impl ArQuiver {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.iter().map(|&(_, _, m)| m).sum()
    }

    fn in_count(&self, x: usize) -> usize {
        self.arrows
            .iter()
            .filter(|&&(_, t, _)| t == x)
            .map(|&(_, _, m)| m)
            .sum()
    }

    fn out_count(&self, x: usize) -> usize {
        self.arrows
            .iter()
            .filter(|&&(s, _, _)| s == x)
            .map(|&(_, _, m)| m)
            .sum()
    }

    /// At every non-projective node, incoming arrows match the arrows out
    /// of its translate.
    pub fn mesh_holds(&self, q: &Quiver) -> bool {
        for (x, node) in self.nodes.iter().enumerate() {
            if node.is_projective(q) {
                continue;
            }
            // tau X = the N with tau^-(N) = X
            let Some(&(n, _)) = self.tau_pairs.iter().find(|&&(_, t)| t == x) else {
                return false;
            };
            if self.in_count(x) != self.out_count(n) {
                return false;
            }
        }
        true
    }

    pub fn to_dot(&self, q: &Quiver) -> String {
        let mut out = String::new();
        out.push_str("digraph ar_quiver {\n  rankdir=LR;\n  node [shape=plaintext];\n");
        for (i, m) in self.nodes.iter().enumerate() {
            out.push_str(&format!("  n{i} [label=\"{}\"];\n", m.display(q)));
        }
        for &(s, t, mult) in &self.arrows {
            for _ in 0..mult {
                out.push_str(&format!("  n{s} -> n{t};\n"));
            }
        }
        for &(n, t) in &self.tau_pairs {
            out.push_str(&format!(
                "  n{t} -> n{n} [style=dashed, dir=none, constraint=false];\n"
            ));
        }
        out.push_str("}\n");
        out
    }
}

pub fn ar_quiver(q: &Quiver, f: FieldSpec) -> Result<ArQuiver> {
    let catalog = Catalog::build(q, f)?;
    let n = catalog.len();
    // radical bases for all ordered pairs
    let mut rad: Vec<Vec<Vec<RepMorphism>>> = Vec::with_capacity(n);
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let homs = hom_basis(q, &catalog.reps[i], &catalog.reps[j]);
            if i != j {
                row.push(homs);
            } else {
                // radical endomorphisms: subtract scalar parts, keep an
                // independent subset
                let rep = &catalog.reps[i];
                let mut basis: Vec<RepMorphism> = Vec::new();
                let mut flat: Vec<Vec<u64>> = Vec::new();
                for phi in homs {
                    let c = catalog.scalar_part(rep, &phi);
                    let shifted = RepMorphism {
                        mats: (0..q.vertex_count())
                            .map(|v| {
                                phi.mats[v].sub(&Mat::identity(f.p, rep.dims()[v]).scale(c))
                            })
                            .collect(),
                    };
                    if shifted.is_zero() {
                        continue;
                    }
                    let mut cand = flat.clone();
                    cand.push(shifted.flatten());
                    if gfp::row_span_rank(f.p, &cand) > flat.len() {
                        flat.push(shifted.flatten());
                        basis.push(shifted);
                    }
                }
                row.push(basis);
            }
        }
        rad.push(row);
    }
    let mut arrows = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let d1 = rad[i][j].len();
            if d1 == 0 {
                continue;
            }
            let mut composites: Vec<Vec<u64>> = Vec::new();
            for (into_z, out_of_z) in (0..n).map(|z| (&rad[i][z], &rad[z][j])) {
                for ff in into_z {
                    for g in out_of_z {
                        composites.push(g.compose(q, ff).flatten());
                    }
                }
            }
            let d2 = gfp::row_span_rank(f.p, &composites);
            if d1 > d2 {
                arrows.push((i, j, d1 - d2));
            }
        }
    }
    let mut tau_pairs = Vec::new();
    for (i, m) in catalog.modules.iter().enumerate() {
        if m.is_injective(q) {
            continue;
        }
        let t = catalog
            .tau_inverse_string(q, m)?
            .ok_or_else(|| Error::Decompose("non-injective with zero inverse translate".into()))?;
        let j = catalog.index_of(&t).expect("translate is in the catalogue");
        tau_pairs.push((i, j));
    }
    Ok(ArQuiver {
        nodes: catalog.modules,
        arrows,
        tau_pairs,
    })
}
