//! h-polynomials of P_W(K) by the two group-theoretic formulas: character
//! averaging over W_K (type A, via the cycle-type character formula) and the
//! Betti-number formula h(t) = Σ_{w ∈ W(K)} t^{d(w)}.

use crate::error::{Error, Result};
use crate::poly::GradedIntPolynomial;
use crate::rootsys::{build_root_system, Family, RootSystem};
use crate::weyl::{self, ParabolicK, SignedPermutation};

/// Eulerian polynomial E_m(t), the descent generating function of S_m.
/// Coefficients stay within i128 for m ≤ 33; the supported range is m ≤ 30.
pub fn eulerian(m: usize) -> Result<GradedIntPolynomial> {
    if m < 1 || m > 30 {
        return Err(Error::BadInput(format!("eulerian: m={m} outside 1..=30")));
    }
    // A(m,k) = (k+1) A(m-1,k) + (m-k) A(m-1,k-1)
    let mut row = vec![1i128];
    for mm in 2..=m {
        let mut next = vec![0i128; mm];
        for k in 0..mm {
            let a = if k < row.len() { row[k] } else { 0 };
            let b = if k >= 1 { row[k - 1] } else { 0 };
            next[k] = (k as i128 + 1) * a + (mm as i128 - k as i128) * b;
        }
        row = next;
    }
    Ok(GradedIntPolynomial::from_coeffs(row))
}

/// q-integer [m]_t = 1 + t + ... + t^{m-1}.
pub fn q_integer(m: usize) -> GradedIntPolynomial {
    GradedIntPolynomial::from_coeffs(vec![1; m])
}

fn cycle_type(w: &SignedPermutation, n: usize) -> Vec<usize> {
    let mut seen = vec![false; n + 1];
    let mut lens = Vec::new();
    for start in 1..=n {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            len += 1;
            x = w.apply(x);
        }
        lens.push(len);
    }
    lens.sort_unstable();
    lens
}

/// Character polynomial of w ∈ S_n with cycle type λ of length ℓ:
/// χ_w(t) = E_ℓ(t) · Π_j [λ_j]_t.
pub fn chi_type_a(w: &SignedPermutation, n: usize) -> Result<GradedIntPolynomial> {
    let lens = cycle_type(w, n);
    let mut p = eulerian(lens.len())?;
    for &l in &lens {
        p = p.mul(&q_integer(l));
    }
    Ok(p)
}

/// h(t) = (1/|W_K|) Σ_{w ∈ W_K} χ_w(t); type A only.
pub fn h_via_characters_a(pk: &ParabolicK, budget: u128) -> Result<GradedIntPolynomial> {
    if pk.rstype.family != Family::A {
        return Err(Error::BadInput(
            "character averaging is implemented for type A only".into(),
        ));
    }
    let wk = weyl::enumerate_parabolic(pk, budget)?;
    let mut total = GradedIntPolynomial::zero();
    for w in &wk {
        total = total.add(&chi_type_a(w, pk.rstype.n)?);
    }
    let order = wk.len() as i128;
    let coeffs: Vec<i128> = total
        .coeffs()
        .iter()
        .map(|&c| {
            assert!(c % order == 0, "character sum not divisible by |W_K|");
            c / order
        })
        .collect();
    Ok(GradedIntPolynomial::from_coeffs(coeffs))
}

/// w ∈ W(K): w^{-1}(α_k) ∈ Φ^+ ∪ -Σ for every k ∈ K.
pub fn in_wk_set(w: &SignedPermutation, pk: &ParabolicK, rs: &RootSystem) -> bool {
    let winv = w.inverse();
    pk.k.iter().all(|&k| {
        let v = winv.act_vec(pk.rstype, &rs.simple_roots[k - 1]);
        rs.is_positive_root(&v) || rs.simple_roots.iter().any(|a| a.neg() == v)
    })
}

/// Type A shortcut: w ∈ W(K) iff w^{-1}(k) - w^{-1}(k+1) ≤ 1 for all k ∈ K.
pub fn in_wk_set_type_a(w: &SignedPermutation, pk: &ParabolicK) -> bool {
    let winv = w.inverse();
    pk.k
        .iter()
        .all(|&k| winv.apply(k) as i64 - winv.apply(k + 1) as i64 <= 1)
}

/// d(w) = |{α ∈ -Σ : w(α) ∈ Φ^+}|, the descent statistic.
pub fn d_stat(w: &SignedPermutation, rs: &RootSystem) -> usize {
    rs.simple_roots
        .iter()
        .filter(|a| {
            let img = w.act_vec(rs.rstype, &a.neg());
            rs.is_positive_root(&img)
        })
        .count()
}

/// h(t) = Σ_{w ∈ W(K)} t^{d(w)}; returns the polynomial and W(K) in
/// lexicographic order.
pub fn h_via_precup(
    pk: &ParabolicK,
    budget: u128,
) -> Result<(GradedIntPolynomial, Vec<SignedPermutation>)> {
    let rs = build_root_system(pk.rstype)?;
    let group = weyl::enumerate_group(pk.rstype, budget)?;
    let mut coeffs = vec![0i128; rs.rstype.rank() + 1];
    let mut members = Vec::new();
    for w in group {
        if in_wk_set(&w, pk, &rs) {
            coeffs[d_stat(&w, &rs)] += 1;
            members.push(w);
        }
    }
    Ok((GradedIntPolynomial::from_coeffs(coeffs), members))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootsys::RSType;

    fn pk(f: Family, n: usize, ks: &[usize]) -> ParabolicK {
        ParabolicK::new(RSType::new(f, n).unwrap(), ks.to_vec()).unwrap()
    }

    const BUDGET: u128 = 1 << 30;

    #[test]
    fn eulerian_values() {
        assert_eq!(eulerian(1).unwrap().coeffs(), &[1]);
        assert_eq!(eulerian(2).unwrap().coeffs(), &[1, 1]);
        assert_eq!(eulerian(3).unwrap().coeffs(), &[1, 4, 1]);
        assert_eq!(eulerian(4).unwrap().coeffs(), &[1, 11, 11, 1]);
        // E_m(1) = m!
        for m in 1..=10 {
            let fact: i128 = (1..=m as i128).product();
            assert_eq!(eulerian(m).unwrap().eval(1), fact);
        }
        assert!(eulerian(0).is_err());
        assert!(eulerian(31).is_err());
        // the largest supported one still fits exactly
        let e30 = eulerian(30).unwrap();
        let fact30: i128 = (1..=30i128).product();
        assert_eq!(e30.eval(1), fact30);
    }

    #[test]
    fn precup_empty_k_is_eulerian() {
        let (h, members) = h_via_precup(&pk(Family::A, 4, &[]), BUDGET).unwrap();
        assert_eq!(h.coeffs(), eulerian(4).unwrap().coeffs());
        assert_eq!(members.len(), 24);
    }

    #[test]
    fn example_a5_k124() {
        let p = pk(Family::A, 5, &[1, 2, 4]);
        let (h, _) = h_via_precup(&p, BUDGET).unwrap();
        assert_eq!(h.coeffs(), &[1, 9, 17, 9, 1]);
        assert_eq!(h_via_characters_a(&p, BUDGET).unwrap().coeffs(), &[1, 9, 17, 9, 1]);
    }

    #[test]
    fn example_a4_k13_with_members() {
        let p = pk(Family::A, 4, &[1, 3]);
        let (h, members) = h_via_precup(&p, BUDGET).unwrap();
        assert_eq!(h.coeffs(), &[1, 6, 6, 1]);
        let one_lines: Vec<String> =
            members.iter().map(|w| w.one_line(p.rstype)).collect();
        let expect = [
            "1234", "1243", "1324", "1342", "1432", "2134", "2143", "3124", "3142",
            "3214", "3412", "3421", "4312", "4321",
        ];
        assert_eq!(one_lines, expect);
    }

    #[test]
    fn type_a_membership_shortcut_agrees() {
        let rstype = RSType::new(Family::A, 5).unwrap();
        let rs = build_root_system(rstype).unwrap();
        let group = weyl::enumerate_group(rstype, BUDGET).unwrap();
        for kbits in 0..(1u32 << 4) {
            let ks: Vec<usize> = (1..=4).filter(|&k| kbits >> (k - 1) & 1 == 1).collect();
            let p = ParabolicK::new(rstype, ks).unwrap();
            for w in &group {
                assert_eq!(in_wk_set(w, &p, &rs), in_wk_set_type_a(w, &p));
            }
        }
    }

    #[test]
    fn characters_reject_type_b() {
        assert!(h_via_characters_a(&pk(Family::B, 3, &[1]), BUDGET).is_err());
    }

    #[test]
    fn d_stat_is_one_line_descents_in_type_a() {
        let rstype = RSType::new(Family::A, 4).unwrap();
        let rs = build_root_system(rstype).unwrap();
        for w in weyl::enumerate_group(rstype, BUDGET).unwrap() {
            let des = (1..4).filter(|&i| w.apply(i) > w.apply(i + 1)).count();
            assert_eq!(d_stat(&w, &rs), des);
        }
    }
}
