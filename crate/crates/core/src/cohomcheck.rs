//! Ring presentations of the cohomology of the toric varieties of P_W and
//! P_W(K): polynomial generators τ_F per facet, linear relations from the
//! facet normals, and quadratic relations on non-intersecting facet pairs.
//! Machine checks for the orbit-product identity, the c-coefficients and
//! their vanishing criteria, kernel containment for the comparison map φ,
//! and surjectivity of φ onto the W_K-fixed subspace in degree 2.

use crate::error::{Error, Result};
use crate::facecount;
use crate::facetcomb::{
    base_family, facet_family, intersection_graph, label_normal, subset_normal,
    subsets_intersect, FacetLabel,
};
use crate::linalg::Reducer;
use crate::rootsys::{build_root_system, RSType, RVec, Rat, RootSystem};
use crate::weyl::{
    self, act_on_subset, orbit_decomposition, OrbitClass, OrbitDecomposition, ParabolicK,
    SignedPermutation, Subset,
};
use num::Zero;
use std::collections::{BTreeMap, BTreeSet};

/// Monomial in the facet generators; exponents are all >= 1.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Monomial(pub BTreeMap<FacetLabel, u32>);

impl Monomial {
    pub fn one() -> Monomial {
        Monomial(BTreeMap::new())
    }

    pub fn generator(l: FacetLabel) -> Monomial {
        Monomial(BTreeMap::from([(l, 1)]))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0.clone();
        for (&l, &e) in &other.0 {
            *m.entry(l).or_insert(0) += e;
        }
        Monomial(m)
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn support(&self) -> Vec<FacetLabel> {
        self.0.keys().copied().collect()
    }

    pub fn display(&self, rstype: RSType) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|(l, &e)| {
                let base = format!("τ_{}", l.display(rstype));
                if e == 1 { base } else { format!("{base}^{e}") }
            })
            .collect::<Vec<_>>()
            .join("·")
    }
}

/// Rational formal sum of monomials; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct MonomialCombination(pub BTreeMap<Monomial, Rat>);

impl MonomialCombination {
    pub fn zero() -> Self {
        MonomialCombination(BTreeMap::new())
    }

    pub fn generator(l: FacetLabel) -> Self {
        let mut c = Self::zero();
        c.add_term(Monomial::generator(l), Rat::from_integer(1));
        c
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        let entry = self.0.entry(m.clone()).or_insert_with(Rat::zero);
        *entry += c;
        if entry.is_zero() {
            self.0.remove(&m);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (m, &c) in &other.0 {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn scale(&self, c: Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MonomialCombination(self.0.iter().map(|(m, &x)| (m.clone(), x * c)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for (m1, &c1) in &self.0 {
            for (m2, &c2) in &other.0 {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = MonomialCombination(BTreeMap::from([(Monomial::one(), Rat::from_integer(1))]));
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }
}

/// Danilov-style presentation data: one generator per facet, linear rows
/// ⟨u, ν(F)⟩ for u running over the simple roots, and the non-intersecting
/// facet pairs whose products vanish.
#[derive(Debug, Clone)]
pub struct Presentation {
    pub rstype: RSType,
    pub generators: Vec<FacetLabel>,
    pub normals: Vec<RVec>,
    pub nonface_pairs: Vec<(FacetLabel, FacetLabel)>,
    /// Rows indexed by simple roots, columns by generators.
    pub linear_rows: Vec<Vec<Rat>>,
    nonface_set: BTreeSet<(FacetLabel, FacetLabel)>,
    index: BTreeMap<FacetLabel, usize>,
}

impl Presentation {
    fn build(rstype: RSType, generators: Vec<FacetLabel>, adjacent: impl Fn(usize, usize) -> bool) -> Result<Presentation> {
        let rs = build_root_system(rstype)?;
        let normals: Vec<RVec> = generators.iter().map(|&l| label_normal(l, &rs)).collect();
        let mut nonface_pairs = Vec::new();
        let mut nonface_set = BTreeSet::new();
        for i in 0..generators.len() {
            for j in (i + 1)..generators.len() {
                if !adjacent(i, j) {
                    nonface_pairs.push((generators[i], generators[j]));
                    nonface_set.insert((generators[i], generators[j]));
                }
            }
        }
        let linear_rows = rs
            .simple_roots
            .iter()
            .map(|u| normals.iter().map(|nu| u.dot(nu)).collect())
            .collect();
        let index = generators.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        Ok(Presentation {
            rstype,
            generators,
            normals,
            nonface_pairs,
            linear_rows,
            nonface_set,
            index,
        })
    }

    pub fn index_of(&self, l: FacetLabel) -> Option<usize> {
        self.index.get(&l).copied()
    }

    /// Do the facets of two generators intersect (i.e. the pair is a face)?
    pub fn compatible(&self, a: FacetLabel, b: FacetLabel) -> bool {
        if a == b {
            return true;
        }
        let key = if a < b { (a, b) } else { (b, a) };
        !self.nonface_set.contains(&key)
    }

    fn clique_support(&self, m: &Monomial) -> bool {
        let sup = m.support();
        for i in 0..sup.len() {
            for j in (i + 1)..sup.len() {
                if !self.compatible(sup[i], sup[j]) {
                    return false;
                }
            }
        }
        true
    }
}

/// Presentation of H*(X_Φ) for the full weight polytope.
pub fn presentation_full(rstype: RSType) -> Result<Presentation> {
    let gens: Vec<FacetLabel> = base_family(rstype).into_iter().map(FacetLabel::Subset).collect();
    let subsets: Vec<Subset> = base_family(rstype);
    Presentation::build(rstype, gens, |i, j| {
        subsets_intersect(subsets[i], subsets[j], rstype)
    })
}

/// Presentation of H*(X_Φ(K)) for the partitioned polytope.
pub fn presentation_partitioned(pk: &ParabolicK) -> Result<Presentation> {
    let g = intersection_graph(pk)?;
    let labels = g.labels.clone();
    Presentation::build(pk.rstype, labels, |i, j| g.adjacent(i, j))
}

/// Canonical image modulo the Stanley–Reisner ideal: drop every term whose
/// support is not a clique of the intersection graph.
pub fn reduce_by_nonfaces(x: &MonomialCombination, p: &Presentation) -> MonomialCombination {
    MonomialCombination(
        x.0.iter()
            .filter(|(m, _)| p.clique_support(m))
            .map(|(m, c)| (m.clone(), *c))
            .collect(),
    )
}

fn orbit_images(elements: &[SignedPermutation], i_set: Subset) -> Vec<Subset> {
    let set: BTreeSet<Subset> = elements.iter().map(|w| act_on_subset(w, i_set)).collect();
    let mut v: Vec<Subset> = set.into_iter().collect();
    v.sort_by_key(|s| s.canonical_key());
    v
}

/// [τ_I] = Σ_{w ∈ W_K/W_K^I} τ_{w(I)}.
pub fn orbit_sum(i_set: Subset, pk: &ParabolicK, budget: u128) -> Result<MonomialCombination> {
    let wk = weyl::enumerate_parabolic(pk, budget)?;
    Ok(orbit_sum_with(&wk, i_set))
}

pub fn orbit_sum_with(elements: &[SignedPermutation], i_set: Subset) -> MonomialCombination {
    let mut out = MonomialCombination::zero();
    for j in orbit_images(elements, i_set) {
        out.add_term(Monomial::generator(FacetLabel::Subset(j)), Rat::from_integer(1));
    }
    out
}

/// Both sides of the orbit-product identity for a nested chain:
/// Π_i [τ_{I_i}]^{m_i} reduced by non-faces, versus the orbit of the chain
/// monomial summed directly.
pub fn orbit_product_sides(
    elements: &[SignedPermutation],
    chain: &[Subset],
    m: &[u32],
    full: &Presentation,
) -> (MonomialCombination, MonomialCombination) {
    assert_eq!(chain.len(), m.len());
    let mut product = MonomialCombination(BTreeMap::from([(Monomial::one(), Rat::from_integer(1))]));
    // reduce after every factor; the quotient map is a ring homomorphism, so
    // this agrees with reducing once at the end but keeps the support small
    for (&i_set, &e) in chain.iter().zip(m) {
        let factor = orbit_sum_with(elements, i_set);
        for _ in 0..e {
            product = reduce_by_nonfaces(&product.mul(&factor), full);
        }
    }

    let mut images = BTreeSet::new();
    for w in elements {
        let tuple: Vec<Subset> = chain.iter().map(|&i| act_on_subset(w, i)).collect();
        images.insert(tuple);
    }
    let mut direct = MonomialCombination::zero();
    for tuple in images {
        let mut mono = Monomial::one();
        for (&j, &e) in tuple.iter().zip(m) {
            for _ in 0..e {
                mono = mono.mul(&Monomial::generator(FacetLabel::Subset(j)));
            }
        }
        direct.add_term(mono, Rat::from_integer(1));
    }
    (product, direct)
}

/// Does [τ_{I_•}^m] = Π [τ_{I_i}]^{m_i} hold for this chain over W_K?
pub fn verify_orbit_product(
    pk: &ParabolicK,
    chain: &[Subset],
    m: &[u32],
    budget: u128,
) -> Result<bool> {
    let wk = weyl::enumerate_parabolic(pk, budget)?;
    let full = presentation_full(pk.rstype)?;
    let (lhs, rhs) = orbit_product_sides(&wk, chain, m, &full);
    Ok(lhs == rhs)
}

/// Strictly nested chains from the base family, lengths 1..=max_len.
fn nested_chains(rstype: RSType, max_len: usize) -> Vec<Vec<Subset>> {
    let bases = base_family(rstype);
    let mut chains: Vec<Vec<Subset>> = bases.iter().map(|&s| vec![s]).collect();
    let mut frontier = chains.clone();
    for _ in 1..max_len {
        let mut next = Vec::new();
        for c in &frontier {
            let last = *c.last().unwrap();
            for &s in &bases {
                if s != last && last.is_subset_of(&s) {
                    let mut ext = c.clone();
                    ext.push(s);
                    next.push(ext);
                }
            }
        }
        chains.extend(next.iter().cloned());
        frontier = next;
    }
    chains
}

/// Exhaustive orbit-product sweep: every strictly nested chain of base
/// subsets up to max_len, every exponent vector with entries 1..=max_exp.
pub fn verify_orbit_product_sweep(
    pk: &ParabolicK,
    max_len: usize,
    max_exp: u32,
    budget: u128,
) -> Result<CheckReport> {
    let mut report = CheckReport::new("orbit-product");
    let wk = weyl::enumerate_parabolic(pk, budget)?;
    let full = presentation_full(pk.rstype)?;
    for chain in nested_chains(pk.rstype, max_len) {
        let mut exps = vec![1u32; chain.len()];
        'exps: loop {
            report.checked += 1;
            let (lhs, rhs) = orbit_product_sides(&wk, &chain, &exps, &full);
            if lhs != rhs {
                let shown: Vec<String> = chain.iter().map(|s| s.display(pk.rstype)).collect();
                report
                    .violations
                    .push(format!("chain {shown:?} exponents {exps:?}"));
            }
            let mut pos = 0;
            loop {
                if pos == exps.len() {
                    break 'exps;
                }
                exps[pos] += 1;
                if exps[pos] > max_exp {
                    exps[pos] = 1;
                    pos += 1;
                } else {
                    break;
                }
            }
        }
    }
    Ok(report)
}

/// Every difference e_I - e_{v(I)} over the facet subsets of P_W(K) and all
/// v in W_K must expand in the K-coroots with nonnegative integer
/// coefficients.
pub fn verify_c_coefficients(pk: &ParabolicK, budget: u128) -> Result<CheckReport> {
    let mut report = CheckReport::new("c-coeffs");
    let rs = build_root_system(pk.rstype)?;
    let wk = weyl::enumerate_parabolic(pk, budget)?;
    for i_set in facet_family(pk)?.subsets() {
        for v in &wk {
            report.checked += 1;
            if let Err(e) = c_from_normal_difference(i_set, act_on_subset(v, i_set), pk, &rs) {
                report.violations.push(format!(
                    "I={} v={}: {e}",
                    i_set.display(pk.rstype),
                    v.one_line(pk.rstype)
                ));
            }
        }
    }
    Ok(report)
}

fn c_from_normal_difference(
    i_set: Subset,
    j_set: Subset,
    pk: &ParabolicK,
    rs: &RootSystem,
) -> Result<BTreeMap<usize, i64>> {
    let diff = subset_normal(i_set, rs).sub(&subset_normal(j_set, rs));
    let expansion = crate::rootsys::coroot_span_expand(&diff, &pk.k, rs).ok_or_else(|| {
        Error::InvariantViolation(format!(
            "e_I - e_v(I) outside the coroot span for I={i_set:?}, image={j_set:?}"
        ))
    })?;
    let mut out = BTreeMap::new();
    for (k, c) in expansion {
        if !c.is_integer() || c < Rat::zero() {
            return Err(Error::InvariantViolation(format!(
                "c_{k} = {c} is not a nonnegative integer for I={i_set:?}, image={j_set:?}"
            )));
        }
        out.insert(k, *c.numer());
    }
    Ok(out)
}

/// c-coefficients of e_I - e_{v(I)} in the coroots {α_k^∨ : k ∈ K}.
pub fn c_coefficients(
    i_set: Subset,
    v: &SignedPermutation,
    pk: &ParabolicK,
) -> Result<BTreeMap<usize, i64>> {
    let rs = build_root_system(pk.rstype)?;
    c_from_normal_difference(i_set, act_on_subset(v, i_set), pk, &rs)
}

/// Report of an exhaustive check: how many instances were examined and
/// which ones failed.
#[derive(Debug, Clone)]
pub struct CheckReport {
    pub name: String,
    pub checked: u64,
    pub violations: Vec<String>,
    /// Auxiliary quantities (dimensions etc.) for display.
    pub details: Vec<(String, String)>,
}

impl CheckReport {
    pub fn new(name: &str) -> CheckReport {
        CheckReport {
            name: name.to_string(),
            checked: 0,
            violations: Vec::new(),
            details: Vec::new(),
        }
    }

    pub fn pass(&self) -> bool {
        self.violations.is_empty()
    }
}

fn range_subset(k: usize) -> Subset {
    Subset(if k == 0 { 0 } else { (1u32 << k) - 1 })
}

/// ⌢[k] = {n̄, ..., k̄}, i.e. codes n+1 ..= 2n+1-k.
fn hat_subset(n: usize, k: usize) -> Subset {
    let mut b = 0u32;
    for code in (n + 1)..=(2 * n + 1 - k).min(2 * n) {
        if code >= n + 1 {
            b |= 1 << (code - 1);
        }
    }
    Subset(b)
}

fn nested(a: Subset, b: Subset) -> bool {
    a.is_subset_of(&b) || b.is_subset_of(&a)
}

/// The per-type sufficient condition under which c_k^{I,v} must vanish,
/// evaluated on the image v(I).
fn vanishing_hypothesis(
    rstype: RSType,
    od: &OrbitDecomposition,
    k: usize,
    vi: Subset,
) -> bool {
    let n = rstype.n;
    let part = od.part_of(k);
    let cond = |window: Subset, elems: Subset| nested(vi.intersect(&elems), window.intersect(&elems));
    match rstype.family {
        crate::rootsys::Family::A => cond(range_subset(k), part.elements),
        crate::rootsys::Family::B | crate::rootsys::Family::C => match part.class {
            OrbitClass::Plain => {
                let mirror = part.elements.mirror(rstype);
                cond(range_subset(k), part.elements) && cond(hat_subset(n, k + 1), mirror)
            }
            OrbitClass::SelfPaired => cond(range_subset(k), part.elements),
            _ => unreachable!("type B parts are plain, mirror, or self-paired"),
        },
        crate::rootsys::Family::D => match part.class {
            OrbitClass::Plain => {
                let mirror = part.elements.mirror(rstype);
                cond(range_subset(k), part.elements) && cond(hat_subset(n, k + 1), mirror)
            }
            OrbitClass::DPrime => {
                // k ∈ N', k != n
                let nprime = part.elements;
                let nprime_bar = nprime.mirror(rstype);
                let modified = hat_subset(n, k + 1)
                    .minus(&Subset::from_elems(&[n + 1]))
                    .with(n);
                cond(range_subset(k), nprime) && cond(modified, nprime_bar)
            }
            OrbitClass::DPrimeMirror => {
                // k ∈ overline(N'), forcing k = n
                let nprime_bar = part.elements;
                let nprime = nprime_bar.mirror(rstype);
                cond(range_subset(n - 1), nprime) && cond(Subset::from_elems(&[n]), nprime_bar)
            }
            OrbitClass::Mirror => unreachable!("k <= n never lies in a mirror part"),
            OrbitClass::SelfPaired => {
                let npp = part.elements;
                let vin = vi.intersect(&npp);
                if k <= n - 2 {
                    cond(range_subset(k), npp)
                } else if k == n - 1 {
                    let alt = (1..=n - 1)
                        .filter(|&i| npp.contains(i))
                        .any(|i| {
                            let set = range_subset(n - 1)
                                .minus(&Subset::from_elems(&[i]))
                                .with(2 * n + 1 - i)
                                .with(n + 1);
                            vin == set.intersect(&npp)
                        });
                    vin.is_subset_of(&range_subset(n - 1).with(n + 1).intersect(&npp))
                        || range_subset(n - 1).intersect(&npp).is_subset_of(&vin)
                        || alt
                } else {
                    // k = n
                    let alt = (1..=n - 1)
                        .filter(|&i| npp.contains(i))
                        .any(|i| {
                            let set = range_subset(n)
                                .minus(&Subset::from_elems(&[i]))
                                .with(2 * n + 1 - i);
                            vin == set.intersect(&npp)
                        });
                    vin.is_subset_of(&range_subset(n).intersect(&npp))
                        || range_subset(n - 1).intersect(&npp).is_subset_of(&vin)
                        || alt
                }
            }
        },
    }
}

/// Exhaustive check of the vanishing criteria over all I ∈ 𝔉(K), v ∈ W_K,
/// k ∈ K; also re-checks nonnegativity and integrality on every instance.
pub fn verify_c_vanishing(pk: &ParabolicK, budget: u128) -> Result<CheckReport> {
    let mut report = CheckReport::new("c-vanishing");
    let rs = build_root_system(pk.rstype)?;
    let od = orbit_decomposition(pk)?;
    let fam = facet_family(pk)?;
    let wk = weyl::enumerate_parabolic(pk, budget)?;
    for i_set in fam.subsets() {
        for v in &wk {
            let vi = act_on_subset(v, i_set);
            let c = match c_from_normal_difference(i_set, vi, pk, &rs) {
                Ok(c) => c,
                Err(e) => {
                    report.violations.push(e.to_string());
                    continue;
                }
            };
            for &k in &pk.k {
                report.checked += 1;
                if vanishing_hypothesis(pk.rstype, &od, k, vi) && c.get(&k) != Some(&0) {
                    report.violations.push(format!(
                        "c_{k} = {} but the vanishing hypothesis holds for I={}, v(I)={}",
                        c[&k],
                        i_set.display(pk.rstype),
                        vi.display(pk.rstype),
                    ));
                }
            }
        }
    }
    Ok(report)
}

/// φ on a generator of the partitioned presentation: τ_I ↦ [τ_I],
/// τ_{s_k} ↦ Σ_I Σ_v c_k^{I,v} τ_{v(I)}.
pub fn phi_of_generator(
    g: FacetLabel,
    pk: &ParabolicK,
    budget: u128,
) -> Result<MonomialCombination> {
    let wk = weyl::enumerate_parabolic(pk, budget)?;
    let rs = build_root_system(pk.rstype)?;
    match g {
        FacetLabel::Subset(i_set) => Ok(orbit_sum_with(&wk, i_set)),
        FacetLabel::Hyperplane(k) => {
            let fam = facet_family(pk)?;
            let mut out = MonomialCombination::zero();
            for i_set in fam.subsets() {
                for j_set in orbit_images(&wk, i_set) {
                    let c = c_from_normal_difference(i_set, j_set, pk, &rs)?;
                    out.add_term(
                        Monomial::generator(FacetLabel::Subset(j_set)),
                        Rat::from_integer(c[&k]),
                    );
                }
            }
            Ok(out)
        }
    }
}

fn degree1_vector(x: &MonomialCombination, full: &Presentation) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); full.generators.len()];
    for (m, &c) in &x.0 {
        assert_eq!(m.degree(), 1, "expected a degree-1 combination");
        let l = m.support()[0];
        v[full.index_of(l).expect("label in full family")] += c;
    }
    v
}

fn linear_row_space(full: &Presentation) -> Reducer {
    let mut red = Reducer::new(full.generators.len());
    for row in &full.linear_rows {
        red.insert(row);
    }
    red
}

/// Degree-2 monomial basis of the quotient by non-faces: squares and
/// compatible pairs, in canonical order.
fn deg2_basis(full: &Presentation) -> (Vec<Monomial>, BTreeMap<Monomial, usize>) {
    let mut basis = Vec::new();
    for (i, &a) in full.generators.iter().enumerate() {
        for &b in &full.generators[i..] {
            if full.compatible(a, b) {
                basis.push(Monomial::generator(a).mul(&Monomial::generator(b)));
            }
        }
    }
    basis.sort();
    let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
    (basis, index)
}

fn deg2_vector(
    x: &MonomialCombination,
    index: &BTreeMap<Monomial, usize>,
    dim: usize,
) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); dim];
    for (m, &c) in &x.0 {
        assert_eq!(m.degree(), 2, "expected a degree-2 combination");
        v[*index.get(m).expect("clique monomial")] += c;
    }
    v
}

/// Row space of the degree-2 part of the full ideal modulo non-faces:
/// spanned by (linear generator) * τ_g over simple roots and generators g.
fn deg2_ideal_space(full: &Presentation) -> (Reducer, BTreeMap<Monomial, usize>, usize) {
    let (basis, index) = deg2_basis(full);
    let mut red = Reducer::new(basis.len());
    for row in &full.linear_rows {
        let mut linear = MonomialCombination::zero();
        for (&g, &c) in full.generators.iter().zip(row) {
            linear.add_term(Monomial::generator(g), c);
        }
        for &g in &full.generators {
            let prod = linear.mul(&MonomialCombination::generator(g));
            let v = deg2_vector(&reduce_by_nonfaces(&prod, full), &index, basis.len());
            red.insert(&v);
        }
    }
    let dim = basis.len();
    (red, index, dim)
}

/// Kernel containment: φ of every generator of the linear ideal 𝓘(K) lands
/// in the linear ideal of the full presentation, and φ of every quadratic
/// generator of 𝓙(K) vanishes modulo non-faces. Also checks the
/// fundamental-weight identity for φ(τ_{s_k}).
pub fn verify_phi_kernel(pk: &ParabolicK, budget: u128) -> Result<CheckReport> {
    let mut report = CheckReport::new("phi-kernel");
    let full = presentation_full(pk.rstype)?;
    let part = presentation_partitioned(pk)?;
    let rs = build_root_system(pk.rstype)?;
    let lred = linear_row_space(&full);

    let phi: Vec<MonomialCombination> = part
        .generators
        .iter()
        .map(|&g| phi_of_generator(g, pk, budget))
        .collect::<Result<_>>()?;

    // (a) linear generators, one per simple root
    for row in &part.linear_rows {
        report.checked += 1;
        let mut img = MonomialCombination::zero();
        for (g, &c) in phi.iter().zip(row) {
            img = img.add(&g.scale(c));
        }
        let v = degree1_vector(&img, &full);
        if !lred.contains(&v) {
            report
                .violations
                .push("phi of a linear generator is outside the full linear ideal".into());
        }
    }

    // (b) quadratic generators. Products of two orbit sums vanish modulo
    // non-faces alone; products involving a hyperplane generator vanish
    // only in the full quotient, so membership in the degree-2 part of the
    // ideal is checked by linear algebra.
    let (ideal2, index2, dim2) = deg2_ideal_space(&full);
    for &(a, b) in &part.nonface_pairs {
        report.checked += 1;
        let pa = &phi[part.index_of(a).unwrap()];
        let pb = &phi[part.index_of(b).unwrap()];
        let prod = reduce_by_nonfaces(&pa.mul(pb), &full);
        let both_subsets = matches!(
            (a, b),
            (FacetLabel::Subset(_), FacetLabel::Subset(_))
        );
        let ok = if both_subsets {
            prod.is_zero()
        } else {
            ideal2.contains(&deg2_vector(&prod, &index2, dim2))
        };
        if !ok {
            report.violations.push(format!(
                "phi({})·phi({}) does not vanish in the quotient",
                a.display(pk.rstype),
                b.display(pk.rstype)
            ));
        }
    }

    // fundamental-weight identity: phi(τ_{s_k}) ≡ Σ_I <ϖ_k, e_I> phi(τ_I)
    // modulo the full linear ideal
    for &k in &pk.k {
        report.checked += 1;
        let idx = part.index_of(FacetLabel::Hyperplane(k)).unwrap();
        let mut rhs = MonomialCombination::zero();
        for (i, &g) in part.generators.iter().enumerate() {
            if let FacetLabel::Subset(_) = g {
                let coeff = rs.fundamental_weights[k - 1].dot(&part.normals[i]);
                rhs = rhs.add(&phi[i].scale(coeff));
            }
        }
        let diff: Vec<Rat> = degree1_vector(&phi[idx], &full)
            .into_iter()
            .zip(degree1_vector(&rhs, &full))
            .map(|(a, b)| a - b)
            .collect();
        if !lred.contains(&diff) {
            report
                .violations
                .push(format!("fundamental-weight identity fails for k={k}"));
        }
    }
    Ok(report)
}

/// Degree-2 comparison: H² of the full variety modulo the linear ideal, its
/// W_K-fixed subspace, and the span of the φ-images of the partitioned
/// generators. Reports dimensions; the fixed-space dimension must equal the
/// t¹ coefficient of the face-count h-polynomial.
pub fn verify_deg2_surjectivity(pk: &ParabolicK, budget: u128) -> Result<CheckReport> {
    let mut report = CheckReport::new("deg2-surjectivity");
    let full = presentation_full(pk.rstype)?;
    let m = full.generators.len();
    let lred = linear_row_space(&full);
    let gens = pk.generators()?;

    // permutation action of w on the degree-1 basis
    let act = |w: &SignedPermutation, x: &[Rat]| -> Vec<Rat> {
        let mut y = vec![Rat::zero(); m];
        for (i, &l) in full.generators.iter().enumerate() {
            if let FacetLabel::Subset(s) = l {
                let img = FacetLabel::Subset(act_on_subset(w, s));
                y[full.index_of(img).expect("family is W-stable")] += x[i];
            }
        }
        y
    };

    // fixed subspace of the quotient: x with (P_g - 1)x in L for all g
    let mut images_rank = 0usize;
    if !gens.is_empty() {
        let mut stacked = Reducer::new(m * gens.len());
        for i in 0..m {
            let mut basis = vec![Rat::zero(); m];
            basis[i] = Rat::from_integer(1);
            let mut col = Vec::with_capacity(m * gens.len());
            for g in &gens {
                let moved = act(g, &basis);
                let diff: Vec<Rat> = moved.iter().zip(&basis).map(|(a, b)| *a - *b).collect();
                col.extend(lred.reduce(&diff));
            }
            if stacked.insert(&col) {
                images_rank += 1;
            }
        }
    }
    let kernel_dim = m - images_rank;
    let fixed_dim = kernel_dim - lred.rank();
    report
        .details
        .push(("h2_dim".into(), (m - lred.rank()).to_string()));
    report.details.push(("fixed_dim".into(), fixed_dim.to_string()));

    // phi images of the partitioned generators
    let part = presentation_partitioned(pk)?;
    let mut span = Reducer::new(m);
    for row in &full.linear_rows {
        span.insert(row);
    }
    let base_rank = span.rank();
    for &g in &part.generators {
        report.checked += 1;
        let v = degree1_vector(&phi_of_generator(g, pk, budget)?, &full);
        // the image must itself be W_K-fixed modulo the linear ideal
        for w in &gens {
            let diff: Vec<Rat> = act(w, &v).iter().zip(&v).map(|(a, b)| *a - *b).collect();
            if !lred.contains(&diff) {
                report.violations.push(format!(
                    "phi({}) is not W_K-fixed modulo the linear ideal",
                    g.display(pk.rstype)
                ));
            }
        }
        span.insert(&v);
    }
    let span_dim = span.rank() - base_rank;
    report.details.push(("span_dim".into(), span_dim.to_string()));
    if span_dim != fixed_dim {
        report.violations.push(format!(
            "phi images span dimension {span_dim}, fixed subspace has dimension {fixed_dim}"
        ));
    }
    let h = facecount::h_polynomial_faces(pk)?;
    if h.coeff(1) != fixed_dim as i128 {
        report.violations.push(format!(
            "fixed-space dimension {fixed_dim} differs from h-polynomial t^1 coefficient {}",
            h.coeff(1)
        ));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::Family;

    fn ty(f: Family, n: usize) -> RSType {
        RSType::new(f, n).unwrap()
    }

    fn pk(f: Family, n: usize, ks: &[usize]) -> ParabolicK {
        ParabolicK::new(ty(f, n), ks.to_vec()).unwrap()
    }

    const BUDGET: u128 = 1 << 30;

    fn s(elems: &[usize]) -> Subset {
        Subset::from_elems(elems)
    }

    #[test]
    fn presentation_shapes() {
        let p = presentation_full(ty(Family::A, 3)).unwrap();
        assert_eq!(p.generators.len(), 6);
        assert_eq!(p.linear_rows.len(), 2);
        // 15 pairs, 6 of them nested (hexagon edges): 9 non-face pairs
        assert_eq!(p.nonface_pairs.len(), 9);

        let p = presentation_full(ty(Family::A, 2)).unwrap();
        assert_eq!(p.generators.len(), 2);
        assert_eq!(p.linear_rows.len(), 1);
        assert_eq!(p.nonface_pairs.len(), 1);

        // D_3 exception: size-3 pairs differing in one bar are faces
        let p = presentation_full(ty(Family::D, 3)).unwrap();
        assert!(p.compatible(
            FacetLabel::Subset(s(&[1, 2, 3])),
            FacetLabel::Subset(s(&[1, 2, 4]))
        ));
        assert!(!p.compatible(
            FacetLabel::Subset(s(&[1, 2, 3])),
            FacetLabel::Subset(s(&[4, 5, 6]))
        ));
    }

    #[test]
    fn partitioned_presentation_examples() {
        let p = presentation_partitioned(&pk(Family::A, 3, &[1])).unwrap();
        let names: Vec<FacetLabel> = p.generators.clone();
        assert_eq!(
            names,
            vec![
                FacetLabel::Subset(s(&[1])),
                FacetLabel::Subset(s(&[3])),
                FacetLabel::Subset(s(&[1, 2])),
                FacetLabel::Subset(s(&[1, 3])),
                FacetLabel::Hyperplane(1),
            ]
        );
        let p0 = presentation_partitioned(&pk(Family::B, 3, &[2, 3])).unwrap();
        assert_eq!(p0.generators.len(), 10);

        // K = ∅ coincides with the full presentation
        let a = presentation_partitioned(&pk(Family::B, 2, &[])).unwrap();
        let b = presentation_full(ty(Family::B, 2)).unwrap();
        assert_eq!(a.generators, b.generators);
        assert_eq!(a.nonface_pairs, b.nonface_pairs);
        assert_eq!(a.linear_rows, b.linear_rows);
    }

    #[test]
    fn reduce_examples() {
        let p = presentation_full(ty(Family::A, 3)).unwrap();
        let t1 = MonomialCombination::generator(FacetLabel::Subset(s(&[1])));
        let t2 = MonomialCombination::generator(FacetLabel::Subset(s(&[2])));
        let t12 = MonomialCombination::generator(FacetLabel::Subset(s(&[1, 2])));
        assert!(reduce_by_nonfaces(&t1.mul(&t2), &p).is_zero());
        let kept = t1.mul(&t12);
        assert_eq!(reduce_by_nonfaces(&kept, &p), kept);
        let triple = t1.mul(&t1).mul(&t12).mul(&t2);
        assert!(reduce_by_nonfaces(&triple, &p).is_zero());
    }

    #[test]
    fn orbit_sums() {
        let p = pk(Family::A, 3, &[1, 2]);
        let o = orbit_sum(s(&[1]), &p, BUDGET).unwrap();
        let expect = MonomialCombination::generator(FacetLabel::Subset(s(&[1])))
            .add(&MonomialCombination::generator(FacetLabel::Subset(s(&[2]))))
            .add(&MonomialCombination::generator(FacetLabel::Subset(s(&[3]))));
        assert_eq!(o, expect);
        let o = orbit_sum(s(&[1, 2]), &p, BUDGET).unwrap();
        assert_eq!(o.0.len(), 3);
        // K = ∅: the orbit sum is the generator itself
        let p0 = pk(Family::A, 3, &[]);
        assert_eq!(
            orbit_sum(s(&[1]), &p0, BUDGET).unwrap(),
            MonomialCombination::generator(FacetLabel::Subset(s(&[1])))
        );
    }

    #[test]
    fn orbit_product_identity_and_counterexample() {
        let p = pk(Family::A, 3, &[1, 2]);
        assert!(verify_orbit_product(&p, &[s(&[1]), s(&[1, 2])], &[1, 1], BUDGET).unwrap());

        // alternating subgroup of S_3: identity and the two 3-cycles
        let rstype = ty(Family::A, 3);
        let all = weyl::enumerate_group(rstype, BUDGET).unwrap();
        let alt: Vec<SignedPermutation> = all
            .into_iter()
            .filter(|w| {
                let inversions = (1..=3)
                    .flat_map(|i| ((i + 1)..=3).map(move |j| (i, j)))
                    .filter(|&(i, j)| w.apply(i) > w.apply(j))
                    .count();
                inversions % 2 == 0
            })
            .collect();
        assert_eq!(alt.len(), 3);
        let full = presentation_full(rstype).unwrap();
        let (lhs, rhs) = orbit_product_sides(&alt, &[s(&[1]), s(&[1, 2])], &[1, 1], &full);
        assert_ne!(lhs, rhs);
        // direct side is τ_1τ_12 + τ_2τ_23 + τ_3τ_13
        let term = |a: &[usize], b: &[usize]| {
            Monomial::generator(FacetLabel::Subset(s(a)))
                .mul(&Monomial::generator(FacetLabel::Subset(s(b))))
        };
        let mut expect = MonomialCombination::zero();
        expect.add_term(term(&[1], &[1, 2]), Rat::from_integer(1));
        expect.add_term(term(&[2], &[2, 3]), Rat::from_integer(1));
        expect.add_term(term(&[3], &[1, 3]), Rat::from_integer(1));
        assert_eq!(rhs, expect);
        assert_eq!(lhs.0.len(), 6);
    }

    #[test]
    fn c_coefficient_examples() {
        let p = pk(Family::A, 4, &[1, 2, 3]);
        let s1 = weyl::simple_reflection(p.rstype, 1).unwrap();
        let c = c_coefficients(s(&[1]), &s1, &p).unwrap();
        assert_eq!(c, BTreeMap::from([(1, 1), (2, 0), (3, 0)]));

        let refl = |i: usize| weyl::simple_reflection(p.rstype, i).unwrap();
        let v = refl(2).compose(&refl(1)).compose(&refl(3)).compose(&refl(2));
        let c = c_coefficients(s(&[1, 2]), &v, &p).unwrap();
        assert_eq!(c, BTreeMap::from([(1, 1), (2, 2), (3, 1)]));

        // identity gives all zeros
        let id = SignedPermutation::identity(4);
        let c = c_coefficients(s(&[1, 2]), &id, &p).unwrap();
        assert!(c.values().all(|&x| x == 0));
    }

    #[test]
    fn c_vanishing_small_sweeps() {
        for (f, n) in [(Family::A, 4), (Family::B, 3), (Family::D, 3)] {
            let rstype = ty(f, n);
            for kbits in 0..(1u32 << rstype.rank()) {
                let ks: Vec<usize> =
                    (1..=rstype.rank()).filter(|&k| kbits >> (k - 1) & 1 == 1).collect();
                let report = verify_c_vanishing(&ParabolicK::new(rstype, ks).unwrap(), BUDGET).unwrap();
                assert!(report.pass(), "{:?}", report.violations);
            }
        }
    }

    #[test]
    fn phi_kernel_and_deg2_small() {
        let p = pk(Family::A, 4, &[1, 3]);
        let r = verify_phi_kernel(&p, BUDGET).unwrap();
        assert!(r.pass(), "{:?}", r.violations);
        let r = verify_deg2_surjectivity(&p, BUDGET).unwrap();
        assert!(r.pass(), "{:?}", r.violations);

        let p = pk(Family::B, 3, &[2, 3]);
        let r = verify_phi_kernel(&p, BUDGET).unwrap();
        assert!(r.pass(), "{:?}", r.violations);
        let r = verify_deg2_surjectivity(&p, BUDGET).unwrap();
        assert!(r.pass(), "{:?}", r.violations);
    }

    #[test]
    fn deg2_example_a5() {
        let p = pk(Family::A, 5, &[1, 2, 4]);
        let r = verify_deg2_surjectivity(&p, BUDGET).unwrap();
        assert!(r.pass(), "{:?}", r.violations);
        let fixed = r
            .details
            .iter()
            .find(|(k, _)| k == "fixed_dim")
            .map(|(_, v)| v.clone())
            .unwrap();
        assert_eq!(fixed, "9");
    }
}
