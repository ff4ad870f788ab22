//! Symbolic calculus on the indecomposables of `mod kQ/J^2` for a
//! 2-pre-admissible quiver `Q`.
//!
//! Every indecomposable is a string module for a walk of length at most 2:
//! a simple, a single arrow, a peak (projective with two socle factors) or
//! a valley (injective with two top factors).  All operations here are
//! closed-form; the matrix-level [`crate::oracle`] recomputes them from
//! first principles in tests.

use std::collections::{BTreeMap, BTreeSet};

use serde_json::{json, Value};

use crate::admissibility::{
    self, divisor_lattice, enumerate_flow_paths, is_n_admissible, is_n_pre_admissible, q_values,
    FlowPath,
};
use crate::oracle::{self, FieldSpec};
use crate::quiver::{Quiver, Shape};
use crate::{Error, Result};

/// One step of a walk: an arrow traversed forwards or backwards.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Letter {
    Direct(usize),
    Inverse(usize),
}

impl Letter {
    pub fn arrow(self) -> usize {
        match self {
            Letter::Direct(a) | Letter::Inverse(a) => a,
        }
    }

    pub fn formal_inverse(self) -> Letter {
        match self {
            Letter::Direct(a) => Letter::Inverse(a),
            Letter::Inverse(a) => Letter::Direct(a),
        }
    }

    pub fn from_vertex(self, q: &Quiver) -> usize {
        match self {
            Letter::Direct(a) => q.arrow(a).source,
            Letter::Inverse(a) => q.arrow(a).target,
        }
    }

    pub fn to_vertex(self, q: &Quiver) -> usize {
        match self {
            Letter::Direct(a) => q.arrow(a).target,
            Letter::Inverse(a) => q.arrow(a).source,
        }
    }
}

/// An indecomposable in canonical form: a vertex (walk of length 0) or a
/// walk of 1 or 2 letters.  Between a walk and its formal inverse the one
/// with the lexicographically smaller arrow-id sequence is kept, breaking
/// ties towards a direct first letter.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum StringModule {
    Simple(usize),
    Word(Vec<Letter>),
}

impl StringModule {
    pub fn simple(v: usize) -> StringModule {
        StringModule::Simple(v)
    }

    fn canonical(q: &Quiver, letters: Vec<Letter>) -> StringModule {
        let rev: Vec<Letter> = letters.iter().rev().map(|l| l.formal_inverse()).collect();
        let ids = |w: &[Letter]| -> Vec<&str> {
            w.iter().map(|l| q.arrow(l.arrow()).id.as_str()).collect()
        };
        let keep = match ids(&letters).cmp(&ids(&rev)) {
            std::cmp::Ordering::Less => letters,
            std::cmp::Ordering::Greater => rev,
            std::cmp::Ordering::Equal => {
                if matches!(letters[0], Letter::Direct(_)) {
                    letters
                } else {
                    rev
                }
            }
        };
        StringModule::Word(keep)
    }

    /// Walk of one arrow; `M(a)` and `M(a^-)` coincide.
    pub fn arrow_module(q: &Quiver, a: usize) -> StringModule {
        StringModule::canonical(q, vec![Letter::Direct(a)])
    }

    pub fn word(&self) -> &[Letter] {
        match self {
            StringModule::Simple(_) => &[],
            StringModule::Word(w) => w,
        }
    }

    pub fn len(&self) -> usize {
        self.word().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The vertices visited by the walk, in order (`len + 1` of them).
    pub fn walk_vertices(&self, q: &Quiver) -> Vec<usize> {
        match self {
            StringModule::Simple(v) => vec![*v],
            StringModule::Word(w) => {
                let mut out = vec![w[0].from_vertex(q)];
                for l in w {
                    out.push(l.to_vertex(q));
                }
                out
            }
        }
    }

    pub fn dim_vector(&self, q: &Quiver) -> BTreeMap<usize, usize> {
        let mut dims = BTreeMap::new();
        for v in self.walk_vertices(q) {
            *dims.entry(v).or_insert(0) += 1;
        }
        dims
    }

    pub fn total_dim(&self) -> usize {
        self.len() + 1
    }

    /// Multiset of top vertices: walk positions no letter maps into.
    pub fn top(&self, q: &Quiver) -> Vec<usize> {
        self.select_positions(q, |w, i| {
            let hit_from_left = i > 0 && matches!(w[i - 1], Letter::Direct(_));
            let hit_from_right = i < w.len() && matches!(w[i], Letter::Inverse(_));
            !(hit_from_left || hit_from_right)
        })
    }

    /// Multiset of socle vertices: walk positions no letter maps out of.
    pub fn socle(&self, q: &Quiver) -> Vec<usize> {
        self.select_positions(q, |w, i| {
            let out_right = i < w.len() && matches!(w[i], Letter::Direct(_));
            let out_left = i > 0 && matches!(w[i - 1], Letter::Inverse(_));
            !(out_right || out_left)
        })
    }

    fn select_positions(&self, q: &Quiver, keep: impl Fn(&[Letter], usize) -> bool) -> Vec<usize> {
        let verts = self.walk_vertices(q);
        let w = self.word();
        let mut out: Vec<usize> = verts
            .iter()
            .enumerate()
            .filter(|&(i, _)| keep(w, i))
            .map(|(_, &v)| v)
            .collect();
        out.sort_unstable();
        out
    }

    pub fn is_projective(&self, q: &Quiver) -> bool {
        match self {
            StringModule::Simple(v) => q.degree(*v).outgoing == 0,
            StringModule::Word(w) => match w[..] {
                [Letter::Direct(a)] => q.degree(q.arrow(a).source).outgoing == 1,
                [Letter::Inverse(_), Letter::Direct(_)] => true,
                _ => false,
            },
        }
    }

    pub fn is_injective(&self, q: &Quiver) -> bool {
        match self {
            StringModule::Simple(v) => q.degree(*v).incoming == 0,
            StringModule::Word(w) => match w[..] {
                [Letter::Direct(a)] => q.degree(q.arrow(a).target).incoming == 1,
                [Letter::Direct(_), Letter::Inverse(_)] => true,
                _ => false,
            },
        }
    }

    /// Composition-series notation `top/socle`, e.g. `12 3/4` or `1/2 14`,
    /// with the factors read along the canonical walk.
    pub fn display(&self, q: &Quiver) -> String {
        match self {
            StringModule::Simple(v) => q.vertex_name(*v).to_string(),
            StringModule::Word(w) => {
                let verts = self.walk_vertices(q);
                let mut top = Vec::new();
                let mut soc = Vec::new();
                for (i, &v) in verts.iter().enumerate() {
                    let hit = (i > 0 && matches!(w[i - 1], Letter::Direct(_)))
                        || (i < w.len() && matches!(w[i], Letter::Inverse(_)));
                    if hit {
                        soc.push(q.vertex_name(v));
                    } else {
                        top.push(q.vertex_name(v));
                    }
                }
                format!("{}/{}", top.join(" "), soc.join(" "))
            }
        }
    }

    pub fn to_json(&self, q: &Quiver) -> Value {
        let word: Vec<String> = self
            .word()
            .iter()
            .map(|l| match l {
                Letter::Direct(a) => q.arrow(*a).id.clone(),
                Letter::Inverse(a) => format!("-{}", q.arrow(*a).id),
            })
            .collect();
        let names = |vs: Vec<usize>| -> Vec<String> {
            vs.into_iter().map(|v| q.vertex_name(v).to_string()).collect()
        };
        let dim: BTreeMap<String, usize> = self
            .dim_vector(q)
            .into_iter()
            .map(|(v, d)| (q.vertex_name(v).to_string(), d))
            .collect();
        json!({
            "word": word,
            "top": names(self.top(q)),
            "socle": names(self.socle(q)),
            "dim": dim,
        })
    }

    pub fn from_json(q: &Quiver, value: &Value) -> Result<StringModule> {
        let obj = value
            .as_object()
            .ok_or_else(|| Error::BadModule("expected an object".to_string()))?;
        let word = obj
            .get("word")
            .and_then(Value::as_array)
            .ok_or_else(|| Error::BadModule("missing `word` array".to_string()))?;
        if word.is_empty() {
            let dim = obj
                .get("dim")
                .and_then(Value::as_object)
                .ok_or_else(|| Error::BadModule("simple module needs a `dim` entry".to_string()))?;
            if dim.len() != 1 {
                return Err(Error::BadModule(
                    "simple module must be supported at one vertex".to_string(),
                ));
            }
            let name = dim.keys().next().unwrap();
            let v = q
                .vertex_index(name)
                .ok_or_else(|| Error::UnknownVertex(name.clone()))?;
            return Ok(StringModule::Simple(v));
        }
        if word.len() > 2 {
            return Err(Error::BadModule("walks have length at most 2".to_string()));
        }
        let mut letters = Vec::new();
        for entry in word {
            let s = entry
                .as_str()
                .ok_or_else(|| Error::BadModule("word entries must be strings".to_string()))?;
            let (inv, id) = match s.strip_prefix('-') {
                Some(rest) => (true, rest),
                None => (false, s),
            };
            let a = q
                .arrows()
                .iter()
                .position(|arr| arr.id == id)
                .ok_or_else(|| Error::UnknownArrow(id.to_string()))?;
            letters.push(if inv { Letter::Inverse(a) } else { Letter::Direct(a) });
        }
        // validate the walk: composable, reduced, no two letters in the
        // same direction (a composable pair of arrows lies in J^2)
        for pair in letters.windows(2) {
            if pair[0].to_vertex(q) != pair[1].from_vertex(q) {
                return Err(Error::BadModule("word letters do not compose".to_string()));
            }
            if pair[1] == pair[0].formal_inverse() {
                return Err(Error::BadModule("word is not reduced".to_string()));
            }
            if matches!(
                (pair[0], pair[1]),
                (Letter::Direct(_), Letter::Direct(_)) | (Letter::Inverse(_), Letter::Inverse(_))
            ) {
                return Err(Error::BadModule(
                    "two consecutive letters in the same direction vanish in J^2".to_string(),
                ));
            }
        }
        Ok(StringModule::canonical(q, letters))
    }
}

/// A direct sum of simples, as a multiset of vertices.  The empty multiset
/// is the zero module.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SemisimpleModule {
    verts: Vec<usize>,
}

impl SemisimpleModule {
    pub fn zero() -> SemisimpleModule {
        SemisimpleModule { verts: Vec::new() }
    }

    pub fn from_vertices(mut verts: Vec<usize>) -> SemisimpleModule {
        verts.sort_unstable();
        SemisimpleModule { verts }
    }

    pub fn vertices(&self) -> &[usize] {
        &self.verts
    }

    pub fn is_zero(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.verts.len()
    }

    pub fn summands(&self) -> Vec<StringModule> {
        self.verts.iter().map(|&v| StringModule::simple(v)).collect()
    }

    pub fn display(&self, q: &Quiver) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        self.verts
            .iter()
            .map(|&v| q.vertex_name(v))
            .collect::<Vec<_>>()
            .join(" + ")
    }
}

/// A finite formal direct sum of string modules.
#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct ModuleList(pub Vec<StringModule>);

impl ModuleList {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, StringModule> {
        self.0.iter()
    }

    /// All multiplicities equal to one.
    pub fn is_basic(&self) -> bool {
        let set: BTreeSet<&StringModule> = self.0.iter().collect();
        set.len() == self.0.len()
    }

    /// The indecomposables of the additive closure, as a set.
    pub fn summand_set(&self) -> BTreeSet<StringModule> {
        self.0.iter().cloned().collect()
    }

    pub fn contains(&self, m: &StringModule) -> bool {
        self.0.contains(m)
    }

    /// Inclusion of additive closures.
    pub fn subcategory_of(&self, other: &ModuleList) -> bool {
        self.summand_set().is_subset(&other.summand_set())
    }

    pub fn to_json(&self, q: &Quiver) -> Value {
        Value::Array(self.0.iter().map(|m| m.to_json(q)).collect())
    }

    pub fn from_json(q: &Quiver, value: &Value) -> Result<ModuleList> {
        let arr = value
            .as_array()
            .ok_or_else(|| Error::BadModule("expected an array of modules".to_string()))?;
        Ok(ModuleList(
            arr.iter()
                .map(|v| StringModule::from_json(q, v))
                .collect::<Result<_>>()?,
        ))
    }
}

fn check_vertex(q: &Quiver, v: usize) -> Result<()> {
    if v >= q.vertex_count() {
        return Err(Error::UnknownVertex(format!("#{v}")));
    }
    Ok(())
}

/// `P(v)`: the simple at a sink-like vertex, a single arrow when one
/// leaves `v`, or the peak over the two arrows leaving `v`.
pub fn projective(q: &Quiver, v: usize) -> Result<StringModule> {
    check_vertex(q, v)?;
    match *q.outgoing(v) {
        [] => Ok(StringModule::simple(v)),
        [a] => Ok(StringModule::arrow_module(q, a)),
        [a, b] => Ok(StringModule::canonical(
            q,
            vec![Letter::Inverse(a), Letter::Direct(b)],
        )),
        _ => Err(Error::BadModule(format!(
            "P({}) is not a string of length <= 2 (outgoing degree > 2)",
            q.vertex_name(v)
        ))),
    }
}

/// `I(v)`: dual to [`projective`].
pub fn injective(q: &Quiver, v: usize) -> Result<StringModule> {
    check_vertex(q, v)?;
    match *q.incoming(v) {
        [] => Ok(StringModule::simple(v)),
        [a] => Ok(StringModule::arrow_module(q, a)),
        [a, b] => Ok(StringModule::canonical(
            q,
            vec![Letter::Direct(a), Letter::Inverse(b)],
        )),
        _ => Err(Error::BadModule(format!(
            "I({}) is not a string of length <= 2 (incoming degree > 2)",
            q.vertex_name(v)
        ))),
    }
}

pub fn simple(q: &Quiver, v: usize) -> Result<StringModule> {
    check_vertex(q, v)?;
    Ok(StringModule::simple(v))
}

fn require_2_pre_admissible(q: &Quiver) -> Result<()> {
    let report = is_n_pre_admissible(q, 2)?;
    if !report.verdict {
        return Err(Error::NotPreAdmissible(report));
    }
    Ok(())
}

/// The complete list of indecomposables: simples, one module per arrow,
/// and the peaks and valleys at vertices of out-/in-degree two.
pub fn enumerate_indecomposables(q: &Quiver) -> Result<Vec<StringModule>> {
    require_2_pre_admissible(q)?;
    let mut out: Vec<StringModule> = (0..q.vertex_count()).map(StringModule::simple).collect();
    out.extend((0..q.arrow_count()).map(|a| StringModule::arrow_module(q, a)));
    for v in 0..q.vertex_count() {
        if q.degree(v).outgoing == 2 {
            out.push(projective(q, v)?);
        }
    }
    for v in 0..q.vertex_count() {
        if q.degree(v).incoming == 2 {
            out.push(injective(q, v)?);
        }
    }
    debug_assert!(ModuleList(out.clone()).is_basic());
    Ok(out)
}

/// The syzygy of any module here is semisimple: the multiset of arrow
/// targets out of the top, minus the socle (for non-simple input).
pub fn syzygy(q: &Quiver, m: &StringModule) -> Result<SemisimpleModule> {
    require_2_pre_admissible(q)?;
    let mut counts: BTreeMap<usize, i64> = BTreeMap::new();
    for t in m.top(q) {
        for &a in q.outgoing(t) {
            *counts.entry(q.arrow(a).target).or_insert(0) += 1;
        }
    }
    if !m.is_empty() {
        for s in m.socle(q) {
            *counts.entry(s).or_insert(0) -= 1;
        }
    }
    let mut verts = Vec::new();
    for (v, c) in counts {
        assert!(c >= 0, "socle not covered by the projective cover");
        verts.extend(std::iter::repeat_n(v, c as usize));
    }
    Ok(SemisimpleModule::from_vertices(verts))
}

/// Cosyzygy of the simple at `v`: zero, the simple at the unique
/// in-neighbor, or the two in-neighbor simples.
pub fn cosyzygy_simple(q: &Quiver, v: usize) -> Result<SemisimpleModule> {
    require_2_pre_admissible(q)?;
    check_vertex(q, v)?;
    Ok(SemisimpleModule::from_vertices(
        q.incoming(v).iter().map(|&a| q.arrow(a).source).collect(),
    ))
}

/// Inverse AR translate of the simple at `v`, in closed form:
/// zero when `v` is a source of the quiver; the cokernel of
/// `S(v) -> P(w)` for the unique arrow `w -> v`; and `I(v)` when two
/// arrows end at `v`.
pub fn tau_inverse_simple(q: &Quiver, v: usize) -> Result<ModuleList> {
    require_2_pre_admissible(q)?;
    check_vertex(q, v)?;
    match *q.incoming(v) {
        [] => Ok(ModuleList(vec![])),
        [a] => {
            let w = q.arrow(a).source;
            let others: Vec<usize> = q
                .outgoing(w)
                .iter()
                .copied()
                .filter(|&b| b != a)
                .collect();
            let m = match others[..] {
                [] => StringModule::simple(w),
                [b] => StringModule::arrow_module(q, b),
                _ => unreachable!("cokernel decomposable despite 2-pre-admissibility"),
            };
            Ok(ModuleList(vec![m]))
        }
        [_, _] => Ok(ModuleList(vec![injective(q, v)?])),
        _ => unreachable!("in-degree > 2 despite 2-pre-admissibility"),
    }
}

/// `P(v)` of a flow path: the projective at the endpoint when a single
/// arrow ends there, otherwise at the second in-neighbor `v^{+1}`.
pub fn flow_projective(q: &Quiver, fp: &FlowPath) -> Result<StringModule> {
    let vk = fp.last_vertex();
    if q.degree(vk).incoming == 1 {
        projective(q, vk)
    } else {
        projective(q, fp.other_in_of_last(q).expect("in-degree 2 has a second arrow"))
    }
}

/// `I(v)` of a flow path: the injective at the start when a single arrow
/// leaves there, otherwise at the second out-neighbor `v^{-1}`.
pub fn flow_injective(q: &Quiver, fp: &FlowPath) -> Result<StringModule> {
    let v1 = fp.first_vertex();
    if q.degree(v1).outgoing == 1 {
        injective(q, v1)
    } else {
        injective(q, fp.other_out_of_first(q).expect("out-degree 2 has a second arrow"))
    }
}

/// The inverse n-translate orbit of `P(v)` along a flow path with
/// `k + q = pn`: the projective, the interior simples `S(v_{k-jn+qk})`
/// for `0 < j < p`, and the injective.
pub fn tau_n_orbit(q: &Quiver, fp: &FlowPath, n: u64) -> Result<Vec<StringModule>> {
    if n < 2 {
        return Err(Error::BadLevel { n, min: 2 });
    }
    let qv = q_values(q, fp);
    let Some(p) = qv.p_integer(n) else {
        return Err(Error::OrbitUndefined {
            path: fp.display(q),
            n,
            k_plus_q: qv.k_plus_q(),
        });
    };
    let mut orbit = vec![flow_projective(q, fp)?];
    for j in 1..p {
        let idx = qv.k as i64 - (j as i64) * (n as i64) + qv.qk as i64;
        let v = fp.vertices()[(idx - 1) as usize];
        debug_assert_eq!(q.degree(v).pair(), (1, 1));
        orbit.push(StringModule::simple(v));
    }
    orbit.push(flow_injective(q, fp)?);
    Ok(orbit)
}

/// At a (2,2)-vertex the inverse 2-translate of `P(v)` is `I(v)`.
pub fn tau2_inverse_22(q: &Quiver, v: usize) -> Result<StringModule> {
    require_2_pre_admissible(q)?;
    check_vertex(q, v)?;
    if q.degree(v).pair() != (2, 2) {
        return Err(Error::NotDegree22 {
            vertex: q.vertex_name(v).to_string(),
        });
    }
    injective(q, v)
}

/// The unique basic n-cluster-tilting module of an n-admissible quiver
/// that is not an oriented cycle: all projectives (vertex order), the
/// interior orbit simples (by flow path, then orbit position), then the
/// remaining injectives (vertex order).
pub fn build_m(q: &Quiver, n: u64) -> Result<ModuleList> {
    if n < 2 {
        return Err(Error::BadLevel { n, min: 2 });
    }
    if let Shape::CycleATilde(m) = q.classify_shape()? {
        return Err(Error::CycleShape { m });
    }
    let report = is_n_admissible(q, n)?;
    if !report.verdict {
        return Err(Error::NotAdmissible { n, report });
    }
    let mut items: Vec<StringModule> = (0..q.vertex_count())
        .map(|v| projective(q, v))
        .collect::<Result<_>>()?;
    for fp in enumerate_flow_paths(q)? {
        let orbit = tau_n_orbit(q, &fp, n)?;
        items.extend(orbit[1..orbit.len() - 1].iter().cloned());
    }
    let mut seen: BTreeSet<StringModule> = items.iter().cloned().collect();
    assert_eq!(seen.len(), items.len(), "orbit simples collide with projectives");
    for v in 0..q.vertex_count() {
        let i = injective(q, v)?;
        if seen.insert(i.clone()) {
            items.push(i);
        }
    }
    let result = ModuleList(items);
    assert!(result.is_basic());
    Ok(result)
}

/// The n-cluster-tilting subcategories of an oriented cycle on `m`
/// vertices with `n | m`: the projectives together with the inverse
/// n-translate orbit of one simple, one family member per orbit.
///
/// There is no closed orbit formula in this case; the translates are
/// computed by the matrix oracle over the given field (the outcome is
/// field-independent) and deduplicated as summand sets.
pub fn cycle_family(q: &Quiver, n: u64, f: FieldSpec) -> Result<Vec<ModuleList>> {
    if n < 2 {
        return Err(Error::BadLevel { n, min: 2 });
    }
    let Shape::CycleATilde(m) = q.classify_shape()? else {
        return Err(Error::NotCycleShape);
    };
    if !(m as u64).is_multiple_of(n) {
        return Err(Error::CycleDivisibility { n, m });
    }
    let catalog = oracle::Catalog::build(q, f)?;
    let steps = (m as u64 / n) as usize;
    let mut families = Vec::new();
    let mut seen: BTreeSet<BTreeSet<StringModule>> = BTreeSet::new();
    for v in 0..q.vertex_count() {
        let mut orbit = vec![StringModule::simple(v)];
        for _ in 1..steps {
            let cur = oracle::realize(q, orbit.last().unwrap(), f)?;
            let translated = oracle::tau_n_inverse(q, &cur, n, f)?;
            let summands = catalog.decompose(q, &translated)?;
            assert_eq!(
                summands.len(),
                1,
                "inverse n-translate of a simple on a cycle is indecomposable"
            );
            orbit.push(summands[0].0.clone());
        }
        let mut gens: Vec<StringModule> = (0..q.vertex_count())
            .map(|w| projective(q, w))
            .collect::<Result<_>>()?;
        gens.extend(orbit);
        let key: BTreeSet<StringModule> = gens.iter().cloned().collect();
        if seen.insert(key) {
            families.push(ModuleList(gens));
        }
    }
    Ok(families)
}

/// Every n-cluster-tilting subcategory, as generator lists.
///
/// `n = 1` yields the whole module category (requires enumerability, i.e.
/// 2-pre-admissibility); `n >= 2` yields nothing when `Q` is not
/// n-admissible, the unique module otherwise, or the cycle family.
pub fn cluster_tilting_subcategories(q: &Quiver, n: u64, f: FieldSpec) -> Result<Vec<ModuleList>> {
    if n < 1 {
        return Err(Error::BadLevel { n, min: 1 });
    }
    if n == 1 {
        return Ok(vec![ModuleList(enumerate_indecomposables(q)?)]);
    }
    if !is_n_admissible(q, n)?.verdict {
        return Ok(vec![]);
    }
    match q.classify_shape()? {
        Shape::CycleATilde(_) => cycle_family(q, n, f),
        _ => Ok(vec![build_m(q, n)?]),
    }
}

/// The lattice of all cluster-tilting subcategories of a non-cycle quiver,
/// one per divisor of the admissible degree.  `covers` lists pairs
/// `(a, b)` where the level-`a` subcategory sits directly inside the
/// level-`b` one, i.e. `b | a` with `a / b` prime: the opposite of the
/// divisor lattice.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CTLattice {
    pub degree: u64,
    pub levels: Vec<(u64, ModuleList)>,
    pub covers: Vec<(u64, u64)>,
}

impl CTLattice {
    pub fn generators(&self, n: u64) -> Option<&ModuleList> {
        self.levels.iter().find(|(d, _)| *d == n).map(|(_, g)| g)
    }

    /// Meet in the inclusion order: the subcategory at `lcm(a, b)`.
    pub fn meet(&self, a: u64, b: u64) -> u64 {
        admissibility::lcm(a, b)
    }

    /// Join in the inclusion order: the subcategory at `gcd(a, b)`.
    pub fn join(&self, a: u64, b: u64) -> u64 {
        admissibility::gcd(a, b)
    }

    pub fn to_json(&self, q: &Quiver) -> Value {
        json!({
            "N": self.degree,
            "subcategories": self
                .levels
                .iter()
                .map(|(n, gens)| json!({ "n": n, "generators": gens.to_json(q) }))
                .collect::<Vec<_>>(),
            "covers": self.covers,
        })
    }

    pub fn to_dot(&self, _q: &Quiver) -> String {
        let mut out = String::new();
        out.push_str("digraph ct_lattice {\n  rankdir=BT;\n  node [shape=box];\n");
        for (n, gens) in &self.levels {
            out.push_str(&format!(
                "  \"C_{n}\" [label=\"C_{n} ({} indecomposables)\"];\n",
                gens.len()
            ));
        }
        for (a, b) in &self.covers {
            out.push_str(&format!("  \"C_{a}\" -> \"C_{b}\" [label=\"⊂\"];\n"));
        }
        out.push_str("}\n");
        out
    }
}

pub fn lattice_of_ct(q: &Quiver) -> Result<CTLattice> {
    if let Shape::CycleATilde(m) = q.classify_shape()? {
        return Err(Error::CycleShape { m });
    }
    require_2_pre_admissible(q)?;
    let degree = admissibility::admissible_degree(q)?;
    let lattice = divisor_lattice(degree);
    let mut levels = Vec::new();
    for &d in &lattice.divisors {
        let gens = if d == 1 {
            ModuleList(enumerate_indecomposables(q)?)
        } else {
            build_m(q, d)?
        };
        levels.push((d, gens));
    }
    let covers = lattice.covers.iter().map(|&(a, b)| (b, a)).collect();
    Ok(CTLattice {
        degree,
        levels,
        covers,
    })
}
