//! Facet combinatorics of P_W and P_W(K): the base facet family 𝔉_Φ of the
//! weight polytope, the restricted family 𝔉_Φ(K) of lower subsets, and the
//! facet intersection graph of P_W(K).
//!
//! Type C shares all of this with type B (same Weyl group, same polytope).

use crate::error::Result;
use crate::rootsys::{Family, RSType, RVec, Rat, RootSystem};
use crate::weyl::{self, OrbitDecomposition, ParabolicK, Subset};
use num::Zero;
use std::cmp::Ordering;

/// Facet of P_W(K): either F(I) for a subset I, or the hyperplane facet
/// H(k) ∩ P for k ∈ K.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FacetLabel {
    Subset(Subset),
    Hyperplane(usize),
}

impl FacetLabel {
    pub fn display(&self, rstype: RSType) -> String {
        match self {
            FacetLabel::Subset(s) => format!("F{}", s.display(rstype)),
            FacetLabel::Hyperplane(k) => format!("H({k})"),
        }
    }
}

// subsets first (by size, then bitset value), then hyperplanes by index
impl Ord for FacetLabel {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (FacetLabel::Subset(a), FacetLabel::Subset(b)) => {
                a.canonical_key().cmp(&b.canonical_key())
            }
            (FacetLabel::Subset(_), FacetLabel::Hyperplane(_)) => Ordering::Less,
            (FacetLabel::Hyperplane(_), FacetLabel::Subset(_)) => Ordering::Greater,
            (FacetLabel::Hyperplane(a), FacetLabel::Hyperplane(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for FacetLabel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// The facet family of the full weight polytope P_W, in canonical order.
/// A: nonempty proper subsets of [n]. B/C: nonempty signed subsets.
/// D: nonempty signed subsets with |I| ≠ n-1.
pub fn base_family(rstype: RSType) -> Vec<Subset> {
    let n = rstype.n;
    let mut out = Vec::new();
    match rstype.family {
        Family::A => {
            for bits in 1..(1u32 << n) - 1 {
                out.push(Subset(bits));
            }
        }
        Family::B | Family::C | Family::D => {
            // one of {absent, i, ī} per pair
            let mut stack = vec![(1usize, Subset::EMPTY)];
            while let Some((pair, cur)) = stack.pop() {
                if pair > n {
                    if !cur.is_empty() && !(rstype.family == Family::D && cur.len() == n - 1) {
                        out.push(cur);
                    }
                    continue;
                }
                stack.push((pair + 1, cur));
                stack.push((pair + 1, cur.with(pair)));
                stack.push((pair + 1, cur.with(2 * n + 1 - pair)));
            }
        }
    }
    out.sort_by_key(|s| s.canonical_key());
    out
}

/// y strictly precedes x in the component order of the type.
/// A: natural order. B/C: the total order 1<...<n<n̄<...<1̄, which is the
/// natural order on codes. D: same except that n and n̄ are incomparable.
fn precedes(rstype: RSType, y: usize, x: usize) -> bool {
    let n = rstype.n;
    match rstype.family {
        Family::A | Family::B | Family::C => y < x,
        Family::D => y < x && !(y == n && x == n + 1),
    }
}

/// Is I ∩ N downward closed in every orbit component N?
pub fn is_lower_with(rstype: RSType, od: &OrbitDecomposition, i_set: Subset) -> bool {
    for part in &od.parts {
        let m = i_set.intersect(&part.elements);
        for x in m.iter() {
            for y in part.elements.iter() {
                if precedes(rstype, y, x) && !m.contains(y) {
                    return false;
                }
            }
        }
    }
    true
}

pub fn is_lower(i_set: Subset, pk: &ParabolicK) -> Result<bool> {
    let od = weyl::orbit_decomposition(pk)?;
    Ok(is_lower_with(pk.rstype, &od, i_set))
}

#[derive(Debug, Clone)]
pub struct FacetFamily {
    pub pk: ParabolicK,
    pub labels: Vec<FacetLabel>,
}

impl FacetFamily {
    pub fn subsets(&self) -> impl Iterator<Item = Subset> + '_ {
        self.labels.iter().filter_map(|l| match l {
            FacetLabel::Subset(s) => Some(*s),
            _ => None,
        })
    }
}

/// Facets of P_W(K): the lower subsets 𝔉_Φ(K) followed by H(k) for k ∈ K.
pub fn facet_family(pk: &ParabolicK) -> Result<FacetFamily> {
    let od = weyl::orbit_decomposition(pk)?;
    let mut labels: Vec<FacetLabel> = base_family(pk.rstype)
        .into_iter()
        .filter(|&s| is_lower_with(pk.rstype, &od, s))
        .map(FacetLabel::Subset)
        .collect();
    for &k in &pk.k {
        labels.push(FacetLabel::Hyperplane(k));
    }
    Ok(FacetFamily { pk: pk.clone(), labels })
}

/// Do the facets F(I) and F(J) of the full polytope intersect?
/// A/B: exactly when I and J are nested. D additionally when |I| = |J| = n
/// and I = (J \ {j}) ∪ {j̄} for some j.
pub fn subsets_intersect(i_set: Subset, j_set: Subset, rstype: RSType) -> bool {
    if i_set.is_subset_of(&j_set) || j_set.is_subset_of(&i_set) {
        return true;
    }
    rstype.family == Family::D
        && i_set.len() == rstype.n
        && j_set.len() == rstype.n
        && i_set.intersect(&j_set).len() == rstype.n - 1
}

pub fn subset_is_sk_invariant(i_set: Subset, k: usize, rstype: RSType) -> Result<bool> {
    let s = weyl::simple_reflection(rstype, k)?;
    Ok(weyl::act_on_subset(&s, i_set) == i_set)
}

/// Does F(I) lie in the open half-space α_k^∨ < 0 (so that it survives the
/// cut by H(k))?
pub fn subset_in_open_halfspace(i_set: Subset, k: usize, rstype: RSType) -> bool {
    let n = rstype.n;
    let bar = |i: usize| 2 * n + 1 - i;
    match rstype.family {
        Family::A => i_set.contains(k) && !i_set.contains(k + 1),
        Family::B | Family::C => {
            if k < n {
                (i_set.contains(k) && !i_set.contains(k + 1))
                    || (i_set.contains(bar(k + 1)) && !i_set.contains(bar(k)))
            } else {
                i_set.contains(n) && !i_set.contains(bar(n))
            }
        }
        Family::D => {
            if k < n {
                (i_set.contains(k) && !i_set.contains(k + 1))
                    || (i_set.contains(bar(k + 1)) && !i_set.contains(bar(k)))
            } else {
                (i_set.contains(n) && !i_set.contains(bar(n - 1)))
                    || (i_set.contains(n - 1) && !i_set.contains(bar(n)))
            }
        }
    }
}

/// Facet adjacency graph of P_W(K). Two facets are adjacent when they share
/// a point: F(I)-F(J) per `subsets_intersect`, F(I)-H(k) exactly when I is
/// s_k-invariant, H(k)-H(k') always (both pass through the barycenter).
#[derive(Debug, Clone)]
pub struct IntersectionGraph {
    pub labels: Vec<FacetLabel>,
    pub adj: Vec<u128>,
}

impl IntersectionGraph {
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i] >> j & 1 == 1
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }
}

pub fn intersection_graph(pk: &ParabolicK) -> Result<IntersectionGraph> {
    let family = facet_family(pk)?;
    let labels = family.labels;
    assert!(labels.len() <= 128, "adjacency bitmask limited to 128 facets");
    let rstype = pk.rstype;
    let mut adj = vec![0u128; labels.len()];
    for (i, a) in labels.iter().enumerate() {
        for (j, b) in labels.iter().enumerate().skip(i + 1) {
            let touch = match (a, b) {
                (FacetLabel::Subset(x), FacetLabel::Subset(y)) => {
                    subsets_intersect(*x, *y, rstype)
                }
                (FacetLabel::Subset(x), FacetLabel::Hyperplane(k))
                | (FacetLabel::Hyperplane(k), FacetLabel::Subset(x)) => {
                    subset_is_sk_invariant(*x, *k, rstype)?
                }
                (FacetLabel::Hyperplane(_), FacetLabel::Hyperplane(_)) => true,
            };
            if touch {
                adj[i] |= 1 << j;
                adj[j] |= 1 << i;
            }
        }
    }
    Ok(IntersectionGraph { labels, adj })
}

/// Outward facet normal e_I of F(I) (type A representatives normalized to
/// coordinate-sum zero).
pub fn subset_normal(i_set: Subset, rs: &RootSystem) -> RVec {
    let rstype = rs.rstype;
    let n = rstype.n;
    let mut v = vec![Rat::zero(); n];
    for i in i_set.iter() {
        if i <= n {
            v[i - 1] += Rat::from_integer(1);
        } else {
            v[2 * n - i] -= Rat::from_integer(1);
        }
    }
    if rstype.family == Family::A {
        let shift = Rat::new(i_set.len() as i64, n as i64);
        for x in v.iter_mut() {
            *x -= shift;
        }
    }
    RVec(v)
}

/// Facet normal: e_I for subset facets, -α_k^∨ for hyperplane facets.
pub fn label_normal(label: FacetLabel, rs: &RootSystem) -> RVec {
    match label {
        FacetLabel::Subset(s) => subset_normal(s, rs),
        FacetLabel::Hyperplane(k) => rs.coroots[k - 1].neg(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::{build_root_system, RSType};

    fn ty(f: Family, n: usize) -> RSType {
        RSType::new(f, n).unwrap()
    }

    fn pk(f: Family, n: usize, ks: &[usize]) -> ParabolicK {
        ParabolicK::new(ty(f, n), ks.to_vec()).unwrap()
    }

    fn subset_codes(family: &FacetFamily) -> Vec<Vec<usize>> {
        family.subsets().map(|s| s.iter().collect()).collect()
    }

    #[test]
    fn base_family_counts() {
        assert_eq!(base_family(ty(Family::A, 3)).len(), 6);
        assert_eq!(base_family(ty(Family::B, 2)).len(), 8);
        assert_eq!(base_family(ty(Family::C, 3)).len(), 26);
        // signed subsets of size != 2 among 3 pairs: 6 singletons + 8 triples
        assert_eq!(base_family(ty(Family::D, 3)).len(), 14);
    }

    #[test]
    fn facet_family_a2_k1() {
        let fam = facet_family(&pk(Family::A, 3, &[1])).unwrap();
        assert_eq!(
            subset_codes(&fam),
            vec![vec![1], vec![3], vec![1, 2], vec![1, 3]]
        );
        assert_eq!(*fam.labels.last().unwrap(), FacetLabel::Hyperplane(1));
    }

    #[test]
    fn facet_family_b3_k23() {
        // {1},{1̄},{2},{1,2},{2,1̄},{2,3},{1,2,3},{2,3,1̄}; bar1 = 6
        let fam = facet_family(&pk(Family::B, 3, &[2, 3])).unwrap();
        assert_eq!(
            subset_codes(&fam),
            vec![
                vec![1],
                vec![2],
                vec![6],
                vec![1, 2],
                vec![2, 3],
                vec![2, 6],
                vec![1, 2, 3],
                vec![2, 3, 6],
            ]
        );
    }

    #[test]
    fn facet_families_d3() {
        // bar3 = 4, bar2 = 5, bar1 = 6
        let cases: Vec<(&[usize], Vec<Vec<usize>>)> = vec![
            // {1,3,5} and {1,4,5} are lower in every component ({1} in
            // {1,2}, {5} in {5,6}) and their facets lie on the surviving
            // side of the s_1 wall, so they belong here
            (
                &[1],
                vec![
                    vec![1],
                    vec![3],
                    vec![4],
                    vec![5],
                    vec![1, 2, 3],
                    vec![1, 2, 4],
                    vec![1, 3, 5],
                    vec![1, 4, 5],
                    vec![3, 5, 6],
                    vec![4, 5, 6],
                ],
            ),
            (
                &[1, 2],
                vec![
                    vec![1],
                    vec![4],
                    vec![1, 2, 3],
                    vec![1, 2, 4],
                    vec![1, 4, 5],
                    vec![4, 5, 6],
                ],
            ),
            (
                &[1, 3],
                vec![
                    vec![1],
                    vec![3],
                    vec![1, 2, 3],
                    vec![1, 2, 4],
                    vec![1, 3, 5],
                    vec![3, 5, 6],
                ],
            ),
            (
                &[2, 3],
                vec![
                    vec![1],
                    vec![2],
                    vec![6],
                    vec![1, 2, 3],
                    vec![1, 2, 4],
                    vec![2, 3, 6],
                    vec![2, 4, 6],
                ],
            ),
        ];
        for (ks, expect) in cases {
            let fam = facet_family(&pk(Family::D, 3, ks)).unwrap();
            assert_eq!(subset_codes(&fam), expect, "K={ks:?}");
        }
    }

    #[test]
    fn intersect_rules() {
        let a = ty(Family::A, 4);
        let s = Subset::from_elems;
        assert!(subsets_intersect(s(&[1]), s(&[1, 2]), a));
        assert!(!subsets_intersect(s(&[1]), s(&[2, 3]), a));
        // D exception: size-n subsets differing by one bar
        let d = ty(Family::D, 3);
        assert!(subsets_intersect(s(&[1, 2, 3]), s(&[1, 2, 4]), d));
        assert!(!subsets_intersect(s(&[1, 2, 3]), s(&[1, 5, 4]), d));
        // same pattern is NOT an intersection in type B
        let b = ty(Family::B, 3);
        assert!(!subsets_intersect(s(&[1, 2, 3]), s(&[1, 2, 4]), b));
    }

    #[test]
    fn invariance_and_halfspace_trichotomy() {
        for (f, n) in [
            (Family::A, 4),
            (Family::A, 5),
            (Family::B, 3),
            (Family::C, 3),
            (Family::D, 3),
            (Family::D, 4),
        ] {
            let rstype = ty(f, n);
            for i_set in base_family(rstype) {
                for k in 1..=rstype.rank() {
                    let s = weyl::simple_reflection(rstype, k).unwrap();
                    let img = weyl::act_on_subset(&s, i_set);
                    let inv = subset_is_sk_invariant(i_set, k, rstype).unwrap();
                    let neg = subset_in_open_halfspace(i_set, k, rstype);
                    let pos = subset_in_open_halfspace(img, k, rstype);
                    assert_eq!(inv, img == i_set);
                    assert_eq!(
                        [inv, neg, pos].iter().filter(|&&b| b).count(),
                        1,
                        "{rstype:?} I={i_set:?} k={k}"
                    );
                }
            }
        }
    }

    #[test]
    fn lower_families_survive_their_cuts() {
        // every I in 𝔉(K) is s_k-invariant or on the negative side, k ∈ K
        for (f, n) in [(Family::A, 4), (Family::B, 3), (Family::D, 3)] {
            let rstype = ty(f, n);
            for kbits in 0..(1u32 << rstype.rank()) {
                let ks: Vec<usize> = (1..=rstype.rank()).filter(|&k| kbits >> (k - 1) & 1 == 1).collect();
                let p = ParabolicK::new(rstype, ks.clone()).unwrap();
                let fam = facet_family(&p).unwrap();
                for i_set in fam.subsets() {
                    for &k in &ks {
                        assert!(
                            subset_is_sk_invariant(i_set, k, rstype).unwrap()
                                || subset_in_open_halfspace(i_set, k, rstype),
                            "{rstype:?} K={ks:?} I={i_set:?} k={k}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn graph_k_empty_matches_subset_rule() {
        let p = pk(Family::A, 3, &[]);
        let g = intersection_graph(&p).unwrap();
        assert_eq!(g.vertex_count(), 6);
        let pairs = (0..6)
            .flat_map(|i| (i + 1..6).map(move |j| (i, j)))
            .filter(|&(i, j)| g.adjacent(i, j))
            .count();
        // hexagon: 6 adjacent facet pairs
        assert_eq!(pairs, 6);
    }

    #[test]
    fn hyperplane_facets_always_touch() {
        let p = pk(Family::B, 3, &[1, 3]);
        let g = intersection_graph(&p).unwrap();
        let h: Vec<usize> = g
            .labels
            .iter()
            .enumerate()
            .filter(|(_, l)| matches!(l, FacetLabel::Hyperplane(_)))
            .map(|(i, _)| i)
            .collect();
        assert_eq!(h.len(), 2);
        assert!(g.adjacent(h[0], h[1]));
    }

    #[test]
    fn normals() {
        let rs = build_root_system(ty(Family::A, 3)).unwrap();
        let v = subset_normal(Subset::from_elems(&[1]), &rs);
        assert_eq!(v.0, vec![Rat::new(2, 3), Rat::new(-1, 3), Rat::new(-1, 3)]);
        let rs = build_root_system(ty(Family::B, 2)).unwrap();
        // {1, 2̄}: bar2 = 3
        let v = subset_normal(Subset::from_elems(&[1, 3]), &rs);
        assert_eq!(v.0, vec![Rat::from_integer(1), Rat::from_integer(-1)]);
        let h = label_normal(FacetLabel::Hyperplane(2), &rs);
        assert_eq!(h.0, vec![Rat::zero(), Rat::from_integer(-2)]);
    }
}
