//! Weyl groups of the classical types as (signed) permutations of the
//! ground set [n] (type A) or [n] ⊔ [n̄] (types B/C/D, with ī = 2n+1-i),
//! parabolic subgroups W_K, and their orbits.

use crate::error::{Error, Result};
use crate::rootsys::{Family, RSType, RVec, Rat};
use num::Zero;
use std::collections::BTreeSet;

/// Subset of the ground set as a bitset; bit i-1 holds element i.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    pub fn from_elems(elems: &[usize]) -> Subset {
        let mut b = 0u32;
        for &e in elems {
            b |= 1 << (e - 1);
        }
        Subset(b)
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0 >> (i - 1) & 1 == 1
    }

    pub fn with(&self, i: usize) -> Subset {
        Subset(self.0 | 1 << (i - 1))
    }

    pub fn len(&self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.0 == 0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.0;
        (1..=32usize).filter(move |i| bits >> (i - 1) & 1 == 1)
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn intersect(&self, other: &Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn union(&self, other: &Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn minus(&self, other: &Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    /// Elementwise ī = 2n+1-i (identity in type A).
    pub fn mirror(&self, rstype: RSType) -> Subset {
        let mut b = 0u32;
        for i in self.iter() {
            b |= 1 << (rstype.mirror(i) - 1);
        }
        Subset(b)
    }

    /// Canonical order used for facet listings: by size, then bitset value.
    pub fn canonical_key(&self) -> (usize, u32) {
        (self.len(), self.0)
    }

    /// Render as e.g. "{1,2,3̄}" with codes above n shown barred.
    pub fn display(&self, rstype: RSType) -> String {
        let n = rstype.n;
        let names: Vec<String> = self
            .iter()
            .map(|i| {
                if rstype.family != Family::A && i > n {
                    format!("{}̄", 2 * n + 1 - i)
                } else {
                    format!("{i}")
                }
            })
            .collect();
        format!("{{{}}}", names.join(","))
    }
}

/// Element of the Weyl group as the image sequence u(1),...,u(m) on the
/// ground set (m = n for type A, 2n otherwise).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedPermutation {
    images: Vec<u8>,
}

impl SignedPermutation {
    pub fn identity(m: usize) -> SignedPermutation {
        SignedPermutation { images: (1..=m as u8).collect() }
    }

    /// Validates bijectivity, u(ī) = overline(u(i)) for B/C/D, and the
    /// even-sign condition for D.
    pub fn from_images(rstype: RSType, images: Vec<u8>) -> Result<SignedPermutation> {
        let m = rstype.ground_size();
        if images.len() != m {
            return Err(Error::BadInput(format!(
                "expected {m} images, got {}",
                images.len()
            )));
        }
        let mut seen = vec![false; m];
        for &im in &images {
            let im = im as usize;
            if im < 1 || im > m || seen[im - 1] {
                return Err(Error::BadInput("images are not a bijection".into()));
            }
            seen[im - 1] = true;
        }
        let u = SignedPermutation { images };
        if rstype.family != Family::A {
            let n = rstype.n;
            for i in 1..=n {
                if u.apply(rstype.mirror(i)) != rstype.mirror(u.apply(i)) {
                    return Err(Error::BadInput("u(ī) != overline(u(i))".into()));
                }
            }
            if rstype.family == Family::D && u.sign_count(n) % 2 != 0 {
                return Err(Error::BadInput("odd-signed permutation in type D".into()));
            }
        }
        Ok(u)
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i - 1] as usize
    }

    fn sign_count(&self, n: usize) -> usize {
        (1..=n).filter(|&i| self.apply(i) > n).count()
    }

    /// (self ∘ other)(i) = self(other(i)).
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        SignedPermutation {
            images: other.images.iter().map(|&j| self.images[j as usize - 1]).collect(),
        }
    }

    pub fn inverse(&self) -> SignedPermutation {
        let mut images = vec![0u8; self.images.len()];
        for (i, &im) in self.images.iter().enumerate() {
            images[im as usize - 1] = (i + 1) as u8;
        }
        SignedPermutation { images }
    }

    /// Action on E in stored coordinates: coordinate i of x moves to
    /// position u(i), negated when u(i) is barred.
    pub fn act_vec(&self, rstype: RSType, x: &RVec) -> RVec {
        let n = rstype.n;
        let mut out = vec![Rat::zero(); n];
        for i in 1..=n {
            let im = self.apply(i);
            if im <= n {
                out[im - 1] += x.0[i - 1];
            } else {
                out[2 * n + 1 - im - 1] -= x.0[i - 1];
            }
        }
        RVec(out)
    }

    /// One-line window w(1)...w(n), barred entries rendered with a bar.
    pub fn one_line(&self, rstype: RSType) -> String {
        let n = rstype.n;
        (1..=n)
            .map(|i| {
                let im = self.apply(i);
                if im > n {
                    format!("{}̄", 2 * n + 1 - im)
                } else {
                    format!("{im}")
                }
            })
            .collect()
    }
}

/// Simple reflection s_i; i is a 1-based simple-root index.
pub fn simple_reflection(rstype: RSType, i: usize) -> Result<SignedPermutation> {
    let n = rstype.n;
    let r = rstype.rank();
    if i < 1 || i > r {
        return Err(Error::BadInput(format!("s_{i} out of range for {}", rstype.label())));
    }
    let m = rstype.ground_size();
    let mut images: Vec<u8> = (1..=m as u8).collect();
    let mut swap = |a: usize, b: usize| {
        images.swap(a - 1, b - 1);
    };
    match rstype.family {
        Family::A => swap(i, i + 1),
        Family::B | Family::C => {
            if i < n {
                swap(i, i + 1);
                swap(rstype.mirror(i), rstype.mirror(i + 1));
            } else {
                swap(n, rstype.mirror(n));
            }
        }
        Family::D => {
            if i < n {
                swap(i, i + 1);
                swap(rstype.mirror(i), rstype.mirror(i + 1));
            } else {
                swap(n - 1, rstype.mirror(n));
                swap(rstype.mirror(n - 1), n);
            }
        }
    }
    Ok(SignedPermutation { images })
}

fn push_signed(
    rstype: RSType,
    perm: &[usize],
    signs: u32,
    out: &mut Vec<SignedPermutation>,
) {
    let n = rstype.n;
    let mut images = vec![0u8; 2 * n];
    for (idx, &p) in perm.iter().enumerate() {
        let i = idx + 1;
        let im = if signs >> idx & 1 == 1 { 2 * n + 1 - p } else { p };
        images[i - 1] = im as u8;
        images[2 * n - i] = (2 * n + 1 - im) as u8;
    }
    out.push(SignedPermutation { images });
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    let mut used = vec![false; n + 1];
    fn rec(n: usize, cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for v in 1..=n {
            if !used[v] {
                used[v] = true;
                cur.push(v);
                rec(n, cur, used, out);
                cur.pop();
                used[v] = false;
            }
        }
    }
    rec(n, &mut cur, &mut used, &mut out);
    out
}

/// All of W, sorted lexicographically by image sequence.
pub fn enumerate_group(rstype: RSType, budget: u128) -> Result<Vec<SignedPermutation>> {
    let order = rstype.weyl_order();
    if order > budget {
        return Err(Error::BudgetExceeded { size: order, budget });
    }
    let n = rstype.n;
    let mut out = Vec::with_capacity(order as usize);
    match rstype.family {
        Family::A => {
            for p in permutations(n) {
                out.push(SignedPermutation {
                    images: p.iter().map(|&v| v as u8).collect(),
                });
            }
        }
        Family::B | Family::C | Family::D => {
            let even_only = rstype.family == Family::D;
            for p in permutations(n) {
                for signs in 0..(1u32 << n) {
                    if even_only && signs.count_ones() % 2 != 0 {
                        continue;
                    }
                    push_signed(rstype, &p, signs, &mut out);
                }
            }
        }
    }
    out.sort();
    debug_assert_eq!(out.len() as u128, order);
    Ok(out)
}

/// Parabolic subgroup index set K; indices are 1-based and kept sorted.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParabolicK {
    pub rstype: RSType,
    pub k: Vec<usize>,
}

impl ParabolicK {
    pub fn new(rstype: RSType, mut k: Vec<usize>) -> Result<ParabolicK> {
        k.sort_unstable();
        k.dedup();
        let r = rstype.rank();
        if let Some(&bad) = k.iter().find(|&&x| x < 1 || x > r) {
            return Err(Error::BadInput(format!(
                "K index {bad} outside [1,{r}] for {}",
                rstype.label()
            )));
        }
        Ok(ParabolicK { rstype, k })
    }

    pub fn contains(&self, k: usize) -> bool {
        self.k.binary_search(&k).is_ok()
    }

    pub fn generators(&self) -> Result<Vec<SignedPermutation>> {
        self.k
            .iter()
            .map(|&i| simple_reflection(self.rstype, i))
            .collect()
    }
}

/// W_K by breadth-first closure over the generators, sorted lexicographically.
pub fn enumerate_parabolic(pk: &ParabolicK, budget: u128) -> Result<Vec<SignedPermutation>> {
    let gens = pk.generators()?;
    let mut seen = BTreeSet::new();
    let mut queue = vec![SignedPermutation::identity(pk.rstype.ground_size())];
    seen.insert(queue[0].clone());
    while let Some(u) = queue.pop() {
        for g in &gens {
            let v = g.compose(&u);
            if seen.insert(v.clone()) {
                if seen.len() as u128 > budget {
                    return Err(Error::BudgetExceeded {
                        size: seen.len() as u128,
                        budget,
                    });
                }
                queue.push(v);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// How an orbit of the ground set under W_K relates to the bar involution.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitClass {
    /// N_i, inside [n] (in type A every part is Plain).
    Plain,
    /// overline(N_i).
    Mirror,
    /// Type D part containing {n-1, n̄} when n ∈ K, n-1 ∉ K; not bar-stable.
    DPrime,
    /// Mirror of DPrime, containing n.
    DPrimeMirror,
    /// Bar-stable part containing {n, n̄} (B: n ∈ K; D: {n-1,n} ⊆ K).
    SelfPaired,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPart {
    pub elements: Subset,
    pub class: OrbitClass,
}

/// Orbit decomposition of the ground set under W_K, parts ordered by their
/// minimum element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitDecomposition {
    pub parts: Vec<OrbitPart>,
}

impl OrbitDecomposition {
    /// The part containing ground element i.
    pub fn part_of(&self, i: usize) -> &OrbitPart {
        self.parts
            .iter()
            .find(|p| p.elements.contains(i))
            .expect("parts partition the ground set")
    }
}

pub fn orbit_decomposition(pk: &ParabolicK) -> Result<OrbitDecomposition> {
    let rstype = pk.rstype;
    let m = rstype.ground_size();
    let gens = pk.generators()?;
    let mut parts: Vec<Subset> = Vec::new();
    let mut visited = vec![false; m + 1];
    for start in 1..=m {
        if visited[start] {
            continue;
        }
        let mut orbit = vec![start];
        visited[start] = true;
        let mut head = 0;
        while head < orbit.len() {
            let x = orbit[head];
            head += 1;
            for g in &gens {
                let y = g.apply(x);
                if !visited[y] {
                    visited[y] = true;
                    orbit.push(y);
                }
            }
        }
        parts.push(Subset::from_elems(&orbit));
    }
    let n = rstype.n;
    let classified = parts
        .iter()
        .map(|&p| {
            let class = if rstype.family == Family::A {
                OrbitClass::Plain
            } else if p.mirror(rstype) == p {
                OrbitClass::SelfPaired
            } else if p.is_subset_of(&Subset((1u32 << n) - 1)) {
                OrbitClass::Plain
            } else if p.iter().all(|i| i > n) {
                OrbitClass::Mirror
            } else if p.contains(n + 1) {
                // mixed, contains n̄ but (not bar-stable) not n
                OrbitClass::DPrime
            } else {
                OrbitClass::DPrimeMirror
            };
            OrbitPart { elements: p, class }
        })
        .collect();
    Ok(OrbitDecomposition { parts: classified })
}

pub fn act_on_subset(u: &SignedPermutation, i_set: Subset) -> Subset {
    let mut b = 0u32;
    for i in i_set.iter() {
        b |= 1 << (u.apply(i) - 1);
    }
    Subset(b)
}

/// Orbit of I under W_K (sorted canonically) together with the stabilizer
/// order, so that |orbit| * |stabilizer| = |W_K|.
pub fn subset_orbit_and_stabilizer(
    pk: &ParabolicK,
    i_set: Subset,
    budget: u128,
) -> Result<(Vec<Subset>, usize)> {
    let wk = enumerate_parabolic(pk, budget)?;
    let mut orbit = BTreeSet::new();
    let mut stab = 0usize;
    for w in &wk {
        let img = act_on_subset(w, i_set);
        if img == i_set {
            stab += 1;
        }
        orbit.insert(img);
    }
    let mut orbit: Vec<Subset> = orbit.into_iter().collect();
    orbit.sort_by_key(|s| s.canonical_key());
    Ok((orbit, stab))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RSType;

    fn ty(f: Family, n: usize) -> RSType {
        RSType::new(f, n).unwrap()
    }

    const BUDGET: u128 = 1 << 30;

    #[test]
    fn group_orders() {
        assert_eq!(enumerate_group(ty(Family::A, 4), BUDGET).unwrap().len(), 24);
        assert_eq!(enumerate_group(ty(Family::B, 3), BUDGET).unwrap().len(), 48);
        assert_eq!(enumerate_group(ty(Family::C, 3), BUDGET).unwrap().len(), 48);
        assert_eq!(enumerate_group(ty(Family::D, 3), BUDGET).unwrap().len(), 24);
        assert!(matches!(
            enumerate_group(ty(Family::B, 3), 10),
            Err(Error::BudgetExceeded { .. })
        ));
    }

    #[test]
    fn d_is_subgroup_of_b() {
        for n in 2..=4 {
            let b: BTreeSet<_> = enumerate_group(ty(Family::B, n), BUDGET)
                .unwrap()
                .into_iter()
                .collect();
            let d = enumerate_group(ty(Family::D, n), BUDGET).unwrap();
            assert!(d.iter().all(|u| b.contains(u)));
            assert_eq!(d.len() * 2, b.len());
        }
    }

    #[test]
    fn reflections_are_involutions() {
        for (f, n) in [(Family::A, 5), (Family::B, 4), (Family::C, 4), (Family::D, 4)] {
            let rstype = ty(f, n);
            let id = SignedPermutation::identity(rstype.ground_size());
            for i in 1..=rstype.rank() {
                let s = simple_reflection(rstype, i).unwrap();
                assert_ne!(s, id);
                assert_eq!(s.compose(&s), id);
                SignedPermutation::from_images(rstype, s.images().to_vec()).unwrap();
            }
        }
    }

    #[test]
    fn parabolic_order_example() {
        // W_K for (A,5), K={1,2,4} is S_3 x S_2
        let pk = ParabolicK::new(ty(Family::A, 5), vec![1, 2, 4]).unwrap();
        assert_eq!(enumerate_parabolic(&pk, BUDGET).unwrap().len(), 12);
        // full K recovers the whole group
        let pk = ParabolicK::new(ty(Family::B, 3), vec![1, 2, 3]).unwrap();
        assert_eq!(enumerate_parabolic(&pk, BUDGET).unwrap().len(), 48);
    }

    #[test]
    fn orbit_decomposition_b3_examples() {
        // K={2,3}: {1} ⊔ {1̄} ⊔ {2,3,3̄,2̄}
        let pk = ParabolicK::new(ty(Family::B, 3), vec![2, 3]).unwrap();
        let od = orbit_decomposition(&pk).unwrap();
        let parts: Vec<(Vec<usize>, OrbitClass)> = od
            .parts
            .iter()
            .map(|p| (p.elements.iter().collect(), p.class))
            .collect();
        assert_eq!(
            parts,
            vec![
                (vec![1], OrbitClass::Plain),
                (vec![2, 3, 4, 5], OrbitClass::SelfPaired),
                (vec![6], OrbitClass::Mirror),
            ]
        );
        // K={1,2}: {1,2,3} ⊔ {3̄,2̄,1̄}
        let pk = ParabolicK::new(ty(Family::B, 3), vec![1, 2]).unwrap();
        let od = orbit_decomposition(&pk).unwrap();
        assert_eq!(od.parts.len(), 2);
        assert_eq!(od.parts[0].elements, Subset::from_elems(&[1, 2, 3]));
        assert_eq!(od.parts[0].class, OrbitClass::Plain);
        assert_eq!(od.parts[1].class, OrbitClass::Mirror);
    }

    #[test]
    fn orbit_decomposition_d3_examples() {
        // D_3, K={1,3}: {1,2,3̄} ⊔ {3,2̄,1̄}
        let pk = ParabolicK::new(ty(Family::D, 3), vec![1, 3]).unwrap();
        let od = orbit_decomposition(&pk).unwrap();
        assert_eq!(od.parts.len(), 2);
        assert_eq!(od.parts[0].elements, Subset::from_elems(&[1, 2, 4]));
        assert_eq!(od.parts[0].class, OrbitClass::DPrime);
        assert_eq!(od.parts[1].elements, Subset::from_elems(&[3, 5, 6]));
        assert_eq!(od.parts[1].class, OrbitClass::DPrimeMirror);
        // D_3, K={2,3}: {1} ⊔ {2,3,3̄,2̄} ⊔ {1̄}
        let pk = ParabolicK::new(ty(Family::D, 3), vec![2, 3]).unwrap();
        let od = orbit_decomposition(&pk).unwrap();
        let classes: Vec<OrbitClass> = od.parts.iter().map(|p| p.class).collect();
        assert_eq!(
            classes,
            vec![OrbitClass::Plain, OrbitClass::SelfPaired, OrbitClass::Mirror]
        );
        assert_eq!(od.parts[1].elements, Subset::from_elems(&[2, 3, 4, 5]));
    }

    #[test]
    fn a3_empty_k_three_singletons() {
        let pk = ParabolicK::new(ty(Family::A, 3), vec![]).unwrap();
        let od = orbit_decomposition(&pk).unwrap();
        assert_eq!(od.parts.len(), 3);
        assert!(od.parts.iter().all(|p| p.elements.len() == 1));
    }

    #[test]
    fn subset_orbit_stabilizer_product() {
        let pk = ParabolicK::new(ty(Family::A, 3), vec![1, 2]).unwrap();
        let (orbit, stab) = subset_orbit_and_stabilizer(&pk, Subset::from_elems(&[1]), BUDGET).unwrap();
        assert_eq!(
            orbit,
            vec![
                Subset::from_elems(&[1]),
                Subset::from_elems(&[2]),
                Subset::from_elems(&[3])
            ]
        );
        assert_eq!(orbit.len() * stab, 6);
    }

    #[test]
    fn act_vec_matches_subset_action() {
        let rstype = ty(Family::D, 3);
        let s3 = simple_reflection(rstype, 3).unwrap();
        // s_3 sends t_2 to -t_3 and t_3 to -t_2
        let v = RVec::unit(3, 2);
        assert_eq!(s3.act_vec(rstype, &v), RVec::unit(3, 3).neg());
        let w = s3.act_vec(rstype, &RVec::unit(3, 3));
        assert_eq!(w, RVec::unit(3, 2).neg());
    }
}
