//! Brute-force geometric oracle. Builds P_W(K) as an exact H-polytope from
//! an explicit anchor point, enumerates its vertices and faces with rational
//! arithmetic only, and cross-checks the combinatorial predictions: facet
//! set, facet adjacency, simpleness, flagness, and the f-vector.

use crate::error::{Error, Result};
use crate::facecount::FVector;
use crate::facetcomb::{base_family, facet_family, intersection_graph, subset_normal, FacetLabel};
use crate::linalg::{affine_dim, solve_square};
use crate::rootsys::{build_root_system, Family, RSType, RVec, Rat};
use crate::weyl::{self, ParabolicK, Subset};
use num::Zero;
use std::collections::{BTreeMap, BTreeSet};

/// Inequality normal · x >= bound.
#[derive(Debug, Clone)]
pub struct HalfSpace {
    pub normal: RVec,
    pub bound: Rat,
    pub tag: HrepTag,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HrepTag {
    /// Candidate facet F(I) of the weight polytope.
    Facet(Subset),
    /// Cut by the wall of the simple root α_k, k ∈ K.
    Cut(usize),
}

impl HrepTag {
    pub fn label(&self) -> FacetLabel {
        match *self {
            HrepTag::Facet(s) => FacetLabel::Subset(s),
            HrepTag::Cut(k) => FacetLabel::Hyperplane(k),
        }
    }
}

/// Strictly increasing regular anchor. Type A uses an integer sequence
/// centered at zero; B/C/D use -n, ..., -1.
pub fn default_anchor(rstype: RSType) -> RVec {
    let n = rstype.n as i64;
    match rstype.family {
        Family::A => {
            if n % 2 == 1 {
                RVec((1..=n).map(|i| Rat::from_integer(i - (n + 1) / 2)).collect())
            } else {
                RVec((1..=n).map(|i| Rat::from_integer(2 * i - (n + 1))).collect())
            }
        }
        _ => RVec((1..=n).map(|i| Rat::from_integer(i - n - 1)).collect()),
    }
}

/// A second, unrelated regular anchor built from powers of two.
pub fn alt_anchor(rstype: RSType) -> RVec {
    let n = rstype.n as u32;
    match rstype.family {
        Family::A => {
            let total: i64 = (1..=n).map(|i| 1i64 << i).sum();
            let shift = Rat::new(total, n as i64);
            RVec((1..=n).map(|i| Rat::from_integer(1 << i) - shift).collect())
        }
        _ => RVec((1..=n).map(|i| Rat::from_integer(-(1i64 << (n + 1 - i)))).collect()),
    }
}

/// Anchor sanity: strictly increasing, and for the signed types regular
/// (nonzero with distinct absolute values); type A anchors must sum to zero.
pub fn validate_anchor(rstype: RSType, a: &RVec) -> Result<()> {
    let n = rstype.n;
    if a.dim() != n {
        return Err(Error::BadInput(format!("anchor needs {n} coordinates")));
    }
    for i in 1..n {
        if a.0[i - 1] >= a.0[i] {
            return Err(Error::BadInput("anchor must be strictly increasing".into()));
        }
    }
    match rstype.family {
        Family::A => {
            let sum: Rat = a.0.iter().fold(Rat::zero(), |s, &x| s + x);
            if !sum.is_zero() {
                return Err(Error::BadInput("type A anchor must sum to zero".into()));
            }
        }
        _ => {
            let mut abs: Vec<Rat> = a.0.iter().map(|x| if *x < Rat::zero() { -*x } else { *x }).collect();
            abs.sort();
            if abs[0].is_zero() || abs.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::BadInput(
                    "anchor must have distinct nonzero absolute values".into(),
                ));
            }
        }
    }
    Ok(())
}

/// H-representation of P_W(K): one inequality e_I · x >= min_{w ∈ W} e_I · wa
/// per candidate facet of the weight polytope, plus -α_k^∨ · x >= 0 for k ∈ K.
pub fn h_representation(pk: &ParabolicK, anchor: &RVec, budget: u128) -> Result<Vec<HalfSpace>> {
    validate_anchor(pk.rstype, anchor)?;
    let rs = build_root_system(pk.rstype)?;
    let group = weyl::enumerate_group(pk.rstype, budget)?;
    let orbit: Vec<RVec> = group.iter().map(|w| w.act_vec(pk.rstype, anchor)).collect();
    let mut out = Vec::new();
    for i_set in base_family(pk.rstype) {
        let normal = subset_normal(i_set, &rs);
        let bound = orbit
            .iter()
            .map(|v| normal.dot(v))
            .min()
            .expect("nonempty orbit");
        out.push(HalfSpace { normal, bound, tag: HrepTag::Facet(i_set) });
    }
    for &k in &pk.k {
        out.push(HalfSpace {
            normal: rs.coroots[k - 1].neg(),
            bound: Rat::zero(),
            tag: HrepTag::Cut(k),
        });
    }
    Ok(out)
}

/// Exact vertex/face data of the H-polytope.
#[derive(Debug, Clone)]
pub struct GeometricModel {
    pub rstype: RSType,
    pub halfspaces: Vec<HalfSpace>,
    pub vertices: Vec<RVec>,
    /// Per vertex, the bitmask of halfspaces tight at it.
    pub tight: Vec<u64>,
}

fn combinations(m: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(start: usize, m: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..m {
            if m - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, m, k, cur, out);
            cur.pop();
        }
    }
    rec(0, m, k, &mut cur, &mut out);
    out
}

/// Vertices by exhaustive square solves: every dim-subset of bounding
/// hyperplanes (type A adds the sum-zero constraint), keeping solutions that
/// satisfy all inequalities. Standalone so an exported H-representation can
/// be re-imported and re-solved.
pub fn vertices_from_halfspaces(rstype: RSType, halfspaces: &[HalfSpace]) -> Result<Vec<RVec>> {
    let n = rstype.n;
    let dim = rstype.dim();
    let mut found = BTreeSet::new();
    for combo in combinations(halfspaces.len(), dim) {
        let mut rows: Vec<Vec<Rat>> = combo
            .iter()
            .map(|&i| halfspaces[i].normal.0.clone())
            .collect();
        let mut rhs: Vec<Rat> = combo.iter().map(|&i| halfspaces[i].bound).collect();
        if rstype.family == Family::A {
            rows.push(vec![Rat::from_integer(1); n]);
            rhs.push(Rat::zero());
        }
        let Some(x) = solve_square(&rows, &rhs) else { continue };
        if halfspaces
            .iter()
            .all(|h| h.normal.dot(&RVec(x.clone())) >= h.bound)
        {
            found.insert(x);
        }
    }
    let vertices: Vec<RVec> = found.into_iter().map(RVec).collect();
    if vertices.is_empty() {
        return Err(Error::InvariantViolation("H-polytope has no vertices".into()));
    }
    Ok(vertices)
}

pub fn build_model(pk: &ParabolicK, anchor: &RVec, budget: u128) -> Result<GeometricModel> {
    let rstype = pk.rstype;
    let halfspaces = h_representation(pk, anchor, budget)?;
    assert!(halfspaces.len() <= 64, "tight masks limited to 64 halfspaces");
    let vertices = vertices_from_halfspaces(rstype, &halfspaces)?;
    let tight: Vec<u64> = vertices
        .iter()
        .map(|v| {
            let mut m = 0u64;
            for (i, h) in halfspaces.iter().enumerate() {
                if h.normal.dot(v) == h.bound {
                    m |= 1 << i;
                }
            }
            m
        })
        .collect();
    Ok(GeometricModel { rstype, halfspaces, vertices, tight })
}

impl GeometricModel {
    /// Vertex indices at which halfspace h is tight.
    fn tight_vertices(&self, h: usize) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.tight[v] >> h & 1 == 1)
            .collect()
    }

    fn face_dim(&self, verts: &[usize]) -> usize {
        let pts: Vec<Vec<Rat>> = verts.iter().map(|&v| self.vertices[v].0.clone()).collect();
        affine_dim(&pts).expect("nonempty face")
    }

    /// Halfspace indices whose tight set is a genuine facet (affine
    /// dimension dim - 1).
    pub fn facet_halfspaces(&self) -> Vec<usize> {
        let d = self.rstype.dim();
        (0..self.halfspaces.len())
            .filter(|&h| {
                let tv = self.tight_vertices(h);
                !tv.is_empty() && self.face_dim(&tv) + 1 == d
            })
            .collect()
    }
}

/// f-vector by enumerating all nonempty faces: close the vertex tight-masks
/// under intersection, read off each face as the set of vertices containing
/// the mask, and grade by affine dimension.
pub fn geometric_f_vector(model: &GeometricModel) -> Result<FVector> {
    let dim = model.rstype.dim();
    let mut masks: BTreeSet<u64> = model.tight.iter().copied().collect();
    masks.insert(0);
    loop {
        let snapshot: Vec<u64> = masks.iter().copied().collect();
        let before = masks.len();
        for i in 0..snapshot.len() {
            for j in (i + 1)..snapshot.len() {
                masks.insert(snapshot[i] & snapshot[j]);
            }
        }
        if masks.len() == before {
            break;
        }
    }
    let mut faces: BTreeSet<Vec<usize>> = BTreeSet::new();
    for &m in &masks {
        let verts: Vec<usize> = (0..model.vertices.len())
            .filter(|&v| model.tight[v] & m == m)
            .collect();
        if !verts.is_empty() {
            faces.insert(verts);
        }
    }
    let mut fvec = vec![0u64; dim + 1];
    for verts in &faces {
        let d = model.face_dim(verts);
        if d > dim {
            return Err(Error::InvariantViolation(format!(
                "face of dimension {d} in a dimension-{dim} polytope"
            )));
        }
        fvec[d] += 1;
    }
    if fvec[dim] != 1 {
        return Err(Error::InvariantViolation(format!(
            "expected exactly one top face, found {}",
            fvec[dim]
        )));
    }
    Ok(fvec)
}

fn cliques_with_common_vertex_check(
    facet_ids: &[usize],
    touch: &dyn Fn(usize, usize) -> bool,
    common: &dyn Fn(&[usize]) -> bool,
    max_size: usize,
    violations: &mut Vec<String>,
    checked: &mut u64,
) {
    // DFS over cliques of the facet graph; every clique must have a common
    // vertex (flagness)
    fn rec(
        ids: &[usize],
        start: usize,
        cur: &mut Vec<usize>,
        touch: &dyn Fn(usize, usize) -> bool,
        common: &dyn Fn(&[usize]) -> bool,
        max_size: usize,
        violations: &mut Vec<String>,
        checked: &mut u64,
    ) {
        if cur.len() >= 2 {
            *checked += 1;
            if !common(cur) {
                violations.push(format!("facet clique {cur:?} has no common vertex"));
            }
        }
        if cur.len() == max_size {
            return;
        }
        for pos in start..ids.len() {
            let cand = ids[pos];
            if cur.iter().all(|&c| touch(c, cand)) {
                cur.push(cand);
                rec(ids, pos + 1, cur, touch, common, max_size, violations, checked);
                cur.pop();
            }
        }
    }
    let mut cur = Vec::new();
    rec(facet_ids, 0, &mut cur, touch, common, max_size, violations, checked);
}

/// Full oracle run for one anchor; see the module docs for the check list.
pub fn verify_against_geometry_anchor(
    pk: &ParabolicK,
    anchor: &RVec,
    budget: u128,
) -> Result<crate::cohomcheck::CheckReport> {
    let mut report = crate::cohomcheck::CheckReport::new("geometry");
    let model = build_model(pk, anchor, budget)?;
    let dim = pk.rstype.dim();

    // (1) facet set equals the predicted family
    report.checked += 1;
    let geo_facets = model.facet_halfspaces();
    let geo_labels: BTreeSet<FacetLabel> = geo_facets
        .iter()
        .map(|&h| model.halfspaces[h].tag.label())
        .collect();
    let predicted: BTreeSet<FacetLabel> = facet_family(pk)?.labels.into_iter().collect();
    if geo_labels != predicted {
        let missing: Vec<String> = predicted
            .difference(&geo_labels)
            .map(|l| l.display(pk.rstype))
            .collect();
        let extra: Vec<String> = geo_labels
            .difference(&predicted)
            .map(|l| l.display(pk.rstype))
            .collect();
        report.violations.push(format!(
            "facet sets differ; predicted-only: {missing:?}, geometric-only: {extra:?}"
        ));
        return Ok(report);
    }

    // facet bitmask and label -> halfspace lookup
    let mut facet_mask = 0u64;
    let mut by_label: BTreeMap<FacetLabel, usize> = BTreeMap::new();
    for &h in &geo_facets {
        facet_mask |= 1 << h;
        by_label.insert(model.halfspaces[h].tag.label(), h);
    }

    // (2) predicted adjacency = shared point on the boundary
    let graph = intersection_graph(pk)?;
    for i in 0..graph.labels.len() {
        for j in (i + 1)..graph.labels.len() {
            report.checked += 1;
            let hi = by_label[&graph.labels[i]];
            let hj = by_label[&graph.labels[j]];
            let share = model
                .tight
                .iter()
                .any(|&m| m >> hi & 1 == 1 && m >> hj & 1 == 1);
            if share != graph.adjacent(i, j) {
                report.violations.push(format!(
                    "adjacency mismatch between {} and {}: geometric {share}, predicted {}",
                    graph.labels[i].display(pk.rstype),
                    graph.labels[j].display(pk.rstype),
                    graph.adjacent(i, j)
                ));
            }
        }
    }

    // (3) simpleness: exactly dim facets through every vertex
    for (v, &m) in model.tight.iter().enumerate() {
        report.checked += 1;
        let count = (m & facet_mask).count_ones() as usize;
        if count != dim {
            report.violations.push(format!(
                "vertex {v} lies on {count} facets, expected {dim}"
            ));
        }
    }

    // (4) flagness: every clique of pairwise-intersecting facets meets
    let touch = |a: usize, b: usize| {
        model.tight.iter().any(|&m| m >> a & 1 == 1 && m >> b & 1 == 1)
    };
    let common = |cur: &[usize]| {
        model
            .tight
            .iter()
            .any(|&m| cur.iter().all(|&h| m >> h & 1 == 1))
    };
    cliques_with_common_vertex_check(
        &geo_facets,
        &touch,
        &common,
        dim,
        &mut report.violations,
        &mut report.checked,
    );

    // (5) f-vector agreement with clique counting
    report.checked += 1;
    let geo_f = geometric_f_vector(&model)?;
    let comb_f = crate::facecount::f_vector(pk)?;
    if geo_f != comb_f {
        report.violations.push(format!(
            "f-vector mismatch: geometric {geo_f:?}, combinatorial {comb_f:?}"
        ));
    }
    report
        .details
        .push(("f_vector".into(), format!("{geo_f:?}")));
    Ok(report)
}

/// Oracle over several anchors; adds the anchor-independence check (6): the
/// geometric f-vector must not depend on the anchor.
pub fn verify_against_geometry(
    pk: &ParabolicK,
    anchors: &[RVec],
    budget: u128,
) -> Result<crate::cohomcheck::CheckReport> {
    let mut report = crate::cohomcheck::CheckReport::new("geometry");
    let mut fvecs: Vec<FVector> = Vec::new();
    for anchor in anchors {
        let sub = verify_against_geometry_anchor(pk, anchor, budget)?;
        report.checked += sub.checked;
        report.violations.extend(sub.violations);
        for (k, v) in sub.details {
            if k == "f_vector" {
                report.details.push((format!("f_vector[{}]", fvecs.len()), v));
            }
        }
        fvecs.push(crate::facecount::f_vector(pk)?);
        let model = build_model(pk, anchor, budget)?;
        *fvecs.last_mut().unwrap() = geometric_f_vector(&model)?;
    }
    report.checked += 1;
    if fvecs.windows(2).any(|w| w[0] != w[1]) {
        report
            .violations
            .push(format!("f-vector depends on the anchor: {fvecs:?}"));
    }
    Ok(report)
}
