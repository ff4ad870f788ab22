//! The combinatorial layer: n-pre-admissibility, flow paths and their
//! q-values, n-admissibility, the admissible degree `N(Q)`, the divisor
//! lattice, and a deterministic generator of admissible quivers.

use serde::Serialize;

use crate::quiver::{Quiver, Shape};
use crate::{Error, Result};

/// A flow path `v1 -> v2 -> ... -> vk`: interior vertices have degree
/// exactly (1,1), endpoints do not.  Closed flow paths (`v1 = vk`) list
/// the endpoint twice; equality compares the full arrow sequence.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct FlowPath {
    arrows: Vec<usize>,
    vertices: Vec<usize>,
}

impl FlowPath {
    fn from_arrows(q: &Quiver, arrows: Vec<usize>) -> FlowPath {
        assert!(!arrows.is_empty());
        let mut vertices = vec![q.arrow(arrows[0]).source];
        for &a in &arrows {
            vertices.push(q.arrow(a).target);
        }
        FlowPath { arrows, vertices }
    }

    /// Number of vertices `k` (>= 2); the endpoint of a closed path counts twice.
    pub fn k(&self) -> usize {
        self.vertices.len()
    }

    /// Vertex indices `v1 ... vk`.
    pub fn vertices(&self) -> &[usize] {
        &self.vertices
    }

    /// Arrow indices along the path (length `k - 1`).
    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn first_vertex(&self) -> usize {
        self.vertices[0]
    }

    pub fn last_vertex(&self) -> usize {
        *self.vertices.last().unwrap()
    }

    pub fn is_closed(&self) -> bool {
        self.first_vertex() == self.last_vertex()
    }

    /// The second out-neighbor of `v1` (the label `v^{-1}`): target of the
    /// arrow out of `v1` other than the path's first arrow.
    pub fn other_out_of_first(&self, q: &Quiver) -> Option<usize> {
        q.outgoing(self.first_vertex())
            .iter()
            .find(|&&a| a != self.arrows[0])
            .map(|&a| q.arrow(a).target)
    }

    /// The second in-neighbor of `vk` (the label `v^{+1}`): source of the
    /// arrow into `vk` other than the path's last arrow.
    pub fn other_in_of_last(&self, q: &Quiver) -> Option<usize> {
        let last = *self.arrows.last().unwrap();
        q.incoming(self.last_vertex())
            .iter()
            .find(|&&a| a != last)
            .map(|&a| q.arrow(a).source)
    }

    /// In-neighbors of `v1` (the labels `v^{-2}`, `v^{-3}`).
    pub fn ins_of_first(&self, q: &Quiver) -> Vec<usize> {
        q.incoming(self.first_vertex())
            .iter()
            .map(|&a| q.arrow(a).source)
            .collect()
    }

    /// Out-neighbors of `vk` (the labels `v^{+2}`, `v^{+3}`).
    pub fn outs_of_last(&self, q: &Quiver) -> Vec<usize> {
        q.outgoing(self.last_vertex())
            .iter()
            .map(|&a| q.arrow(a).target)
            .collect()
    }

    pub fn display(&self, q: &Quiver) -> String {
        self.vertices
            .iter()
            .map(|&v| q.vertex_name(v))
            .collect::<Vec<_>>()
            .join("->")
    }
}

/// Endpoint corrections of a flow path: `q1 = 1` iff the start has degree
/// (2,1), `qk = 1` iff the end has degree (1,2), and `q = -1 + q1 + qk`.
/// The admissibility condition per path is `n | (k + q)`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct QValues {
    pub q1: u8,
    pub qk: u8,
    pub q: i8,
    pub k: usize,
}

impl QValues {
    pub fn k_plus_q(&self) -> usize {
        (self.k as i64 + self.q as i64) as usize
    }

    /// `(k + q) / n` as a reduced rational; an integer exactly when the
    /// path satisfies the level-`n` condition.
    pub fn p_for(&self, n: u64) -> (u64, u64) {
        let num = self.k_plus_q() as u64;
        let g = gcd(num, n);
        (num / g, n / g)
    }

    /// `(k + q) / n` when it is an integer.
    pub fn p_integer(&self, n: u64) -> Option<usize> {
        let kq = self.k_plus_q() as u64;
        kq.is_multiple_of(n).then_some((kq / n) as usize)
    }
}

/// Compute the q-values of a flow path from its endpoint degrees.
pub fn q_values(q: &Quiver, fp: &FlowPath) -> QValues {
    let q1 = u8::from(q.degree(fp.first_vertex()).pair() == (2, 1));
    let qk = u8::from(q.degree(fp.last_vertex()).pair() == (1, 2));
    QValues {
        q1,
        qk,
        q: -1 + q1 as i8 + qk as i8,
        k: fp.k(),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Rule {
    /// Degree outside the allowed set.
    Deg,
    /// Parallel arrows between two vertices.
    Multi,
    /// An arrow `v -> u` with `deg+(v) + deg-(u) > 3`.
    Sum3,
    /// A flow path (or cycle length) failing the divisibility condition.
    Flow,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct Violation {
    pub rule: Rule,
    #[serde(rename = "where")]
    pub location: Vec<String>,
}

/// Outcome of an admissibility check; `verdict` is true iff `violations`
/// is empty.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct AdmissibilityReport {
    pub verdict: bool,
    pub violations: Vec<Violation>,
}

impl AdmissibilityReport {
    fn from_violations(violations: Vec<Violation>) -> AdmissibilityReport {
        AdmissibilityReport {
            verdict: violations.is_empty(),
            violations,
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("report serializes")
    }
}

fn check_level(n: u64) -> Result<()> {
    if n < 2 {
        return Err(Error::BadLevel { n, min: 2 });
    }
    Ok(())
}

/// Degree condition, no parallel arrows, and the per-arrow degree-sum
/// bound. The degree set admits (2,2) only at `n = 2`.
pub fn is_n_pre_admissible(q: &Quiver, n: u64) -> Result<AdmissibilityReport> {
    check_level(n)?;
    if !q.is_connected() {
        return Err(Error::Disconnected);
    }
    let mut violations = Vec::new();
    for v in 0..q.vertex_count() {
        let d = q.degree(v).pair();
        let ok = matches!(d, (0, 0) | (0, 1) | (1, 0) | (1, 1) | (1, 2) | (2, 1))
            || (n == 2 && d == (2, 2));
        if !ok {
            violations.push(Violation {
                rule: Rule::Deg,
                location: vec![q.vertex_name(v).to_string()],
            });
        }
    }
    // parallel arrows, grouped by (source, target)
    let mut seen: std::collections::BTreeMap<(usize, usize), Vec<&str>> = Default::default();
    for a in q.arrows() {
        seen.entry((a.source, a.target)).or_default().push(&a.id);
    }
    for ((s, t), ids) in seen {
        if ids.len() > 1 {
            let mut loc = vec![
                q.vertex_name(s).to_string(),
                q.vertex_name(t).to_string(),
            ];
            loc.extend(ids.iter().map(|i| i.to_string()));
            violations.push(Violation {
                rule: Rule::Multi,
                location: loc,
            });
        }
    }
    for a in q.arrows() {
        if q.degree(a.source).outgoing + q.degree(a.target).incoming > 3 {
            violations.push(Violation {
                rule: Rule::Sum3,
                location: vec![a.id.clone()],
            });
        }
    }
    Ok(AdmissibilityReport::from_violations(violations))
}

/// All flow paths, canonically sorted by (first vertex, arrow sequence).
///
/// The list is empty exactly for `A_1` and the oriented cycles. Requires
/// 2-pre-admissibility; the failing report is attached to the error.
pub fn enumerate_flow_paths(q: &Quiver) -> Result<Vec<FlowPath>> {
    let report = is_n_pre_admissible(q, 2)?;
    if !report.verdict {
        return Err(Error::NotPreAdmissible(report));
    }
    let mut paths = Vec::new();
    for v in 0..q.vertex_count() {
        if q.degree(v).pair() == (1, 1) {
            continue;
        }
        for &start in q.outgoing(v) {
            let mut arrows = vec![start];
            let mut cur = q.arrow(start).target;
            let mut steps = 0;
            while q.degree(cur).pair() == (1, 1) {
                let a = q.outgoing(cur)[0];
                arrows.push(a);
                cur = q.arrow(a).target;
                steps += 1;
                assert!(steps <= q.arrow_count(), "flow path failed to terminate");
            }
            paths.push(FlowPath::from_arrows(q, arrows));
        }
    }
    paths.sort_by(|a, b| {
        let key = |fp: &FlowPath| {
            (
                q.vertex_name(fp.first_vertex()).to_string(),
                fp.arrows()
                    .iter()
                    .map(|&i| q.arrow(i).id.clone())
                    .collect::<Vec<_>>(),
            )
        };
        key(a).cmp(&key(b))
    });
    Ok(paths)
}

/// n-admissibility: n-pre-admissible, plus `n | m` for the oriented cycle
/// on `m` vertices, or `n | (k + q)` for every flow path otherwise.
pub fn is_n_admissible(q: &Quiver, n: u64) -> Result<AdmissibilityReport> {
    let mut report = is_n_pre_admissible(q, n)?;
    if !report.verdict {
        return Ok(report);
    }
    match q.classify_shape()? {
        Shape::CycleATilde(m) => {
            if !(m as u64).is_multiple_of(n) {
                report.violations.push(Violation {
                    rule: Rule::Flow,
                    location: vec![format!("cycle length {m}")],
                });
            }
        }
        _ => {
            for fp in enumerate_flow_paths(q)? {
                let qv = q_values(q, &fp);
                if !(qv.k_plus_q() as u64).is_multiple_of(n) {
                    report.violations.push(Violation {
                        rule: Rule::Flow,
                        location: vec![fp.display(q), format!("k+q={}", qv.k_plus_q())],
                    });
                }
            }
        }
    }
    report.verdict = report.violations.is_empty();
    Ok(report)
}

/// The admissible degree `N(Q)`: the largest `n >= 2` for which `Q` is
/// n-admissible, or 1 when there is none (`A_1` included).
///
/// For the oriented cycle on `m >= 2` vertices this is `m`; the single
/// loop gives 1 since no `n >= 2` divides 1.  Otherwise it is the gcd `g`
/// of `k + q` over all flow paths, capped at 2 when a (2,2)-vertex is
/// present (and 1 when that cap is not divisible into `g`).
pub fn admissible_degree(q: &Quiver) -> Result<u64> {
    if !q.is_connected() {
        return Err(Error::Disconnected);
    }
    let shape = q.classify_shape()?;
    if shape == Shape::LinearA(1) {
        return Ok(1);
    }
    if !is_n_pre_admissible(q, 2)?.verdict {
        return Ok(1);
    }
    if let Shape::CycleATilde(m) = shape {
        return Ok(if m >= 2 { m as u64 } else { 1 });
    }
    let g = enumerate_flow_paths(q)?
        .iter()
        .map(|fp| q_values(q, fp).k_plus_q() as u64)
        .fold(0, gcd);
    let has_22 = (0..q.vertex_count()).any(|v| q.degree(v).pair() == (2, 2));
    Ok(if has_22 {
        if g % 2 == 0 {
            2
        } else {
            1
        }
    } else if g >= 2 {
        g
    } else {
        1
    })
}

/// Whether the level-`n` subcategory is closed under n-fold syzygies on
/// both sides; by the classification this holds exactly on `A_m` with
/// `n | (m - 1)` and on the oriented cycle over `m` with `n | m`.
pub fn admits_nz(q: &Quiver, n: u64) -> Result<bool> {
    check_level(n)?;
    Ok(match q.classify_shape()? {
        Shape::LinearA(m) => (m as u64 - 1).is_multiple_of(n),
        Shape::CycleATilde(m) => (m as u64).is_multiple_of(n),
        Shape::Other => false,
    })
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// The divisors of `N` under divisibility, with covering relations
/// `(d, d')` where `d' / d` is prime.  Meet is gcd, join is lcm.
#[derive(Clone, PartialEq, Eq, Debug, Serialize)]
pub struct DivisorLattice {
    #[serde(rename = "N")]
    pub n: u64,
    pub divisors: Vec<u64>,
    pub covers: Vec<(u64, u64)>,
}

impl DivisorLattice {
    pub fn meet(&self, a: u64, b: u64) -> u64 {
        gcd(a, b)
    }

    pub fn join(&self, a: u64, b: u64) -> u64 {
        lcm(a, b)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("lattice serializes")
    }

    /// Hasse diagram in DOT, one edge per covering pair, drawn upward.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        out.push_str("digraph divisors {\n  rankdir=BT;\n  node [shape=plaintext];\n");
        for d in &self.divisors {
            out.push_str(&format!("  \"{d}\";\n"));
        }
        for (a, b) in &self.covers {
            out.push_str(&format!("  \"{a}\" -> \"{b}\";\n"));
        }
        out.push_str("}\n");
        out
    }
}

pub fn divisor_lattice(n: u64) -> DivisorLattice {
    assert!(n >= 1);
    let divisors: Vec<u64> = (1..=n).filter(|d| n.is_multiple_of(*d)).collect();
    let mut covers = Vec::new();
    for &a in &divisors {
        for &b in &divisors {
            if b > a && b % a == 0 && is_prime(b / a) {
                covers.push((a, b));
            }
        }
    }
    DivisorLattice { n, divisors, covers }
}

fn is_prime(x: u64) -> bool {
    if x < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= x {
        if x.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Subdivide each flow path of an n-pre-admissible skeleton until every
/// `k + q` is a multiple of `n` (the smallest one at least the original
/// value, plus a seed-dependent extra multiple), yielding an n-admissible
/// quiver.  Fresh vertices are named `_pad<i>`.
///
/// Oriented-cycle skeletons are rejected: pick the cycle length as a
/// multiple of `n` directly instead.
pub fn generate_admissible(n: u64, skeleton: &Quiver, seed: u64) -> Result<Quiver> {
    use rand_chacha::rand_core::{RngCore, SeedableRng};

    check_level(n)?;
    let report = is_n_pre_admissible(skeleton, n)?;
    if !report.verdict {
        return Err(Error::NotPreAdmissible(report));
    }
    if let Shape::CycleATilde(m) = skeleton.classify_shape()? {
        return Err(Error::CycleShape { m });
    }

    let paths = enumerate_flow_paths(skeleton)?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    // number of fresh vertices to insert into each path's first arrow
    let mut insertions: std::collections::BTreeMap<usize, usize> = Default::default();
    for fp in &paths {
        let kq = q_values(skeleton, fp).k_plus_q() as u64;
        let base = kq.div_ceil(n) * n;
        let extra = (rng.next_u32() & 1) as u64;
        let target = base + extra * n;
        insertions.insert(fp.arrows()[0], (target - kq) as usize);
    }

    let taken: std::collections::BTreeSet<&str> =
        skeleton.vertex_names().iter().map(|s| s.as_str()).collect();
    let mut pad = 0usize;
    let mut fresh = || {
        loop {
            let name = format!("_pad{pad}");
            pad += 1;
            if !taken.contains(name.as_str()) {
                return name;
            }
        }
    };

    let vertices: Vec<String> = skeleton.vertex_names().to_vec();
    let mut arrows: Vec<(Option<String>, String, String)> = Vec::new();
    let mut new_vertices = Vec::new();
    for (i, a) in skeleton.arrows().iter().enumerate() {
        let s = skeleton.vertex_name(a.source).to_string();
        let t = skeleton.vertex_name(a.target).to_string();
        match insertions.get(&i) {
            None | Some(0) => arrows.push((None, s, t)),
            Some(&count) => {
                let chain: Vec<String> = (0..count).map(|_| fresh()).collect();
                let mut prev = s;
                for v in &chain {
                    arrows.push((None, prev.clone(), v.clone()));
                    prev = v.clone();
                }
                arrows.push((None, prev, t));
                new_vertices.extend(chain);
            }
        }
    }

    let mut all_vertices = vertices;
    all_vertices.extend(new_vertices);
    let result = Quiver::build(all_vertices, arrows)?;
    debug_assert!(is_n_admissible(&result, n)?.verdict);
    Ok(result)
}
