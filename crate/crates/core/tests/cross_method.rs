//! The h-polynomial of P_W(K) computed by independent formulas must agree:
//! face counting, the Betti-number sum over W(K), and (type A) character
//! averaging.

use partope::facecount::{f_vector, h_polynomial_faces};
use partope::hesspoly::{h_via_characters_a, h_via_precup};
use partope::rootsys::{Family, RSType};
use partope::weyl::ParabolicK;

const BUDGET: u128 = 1 << 30;

fn all_k(rstype: RSType) -> impl Iterator<Item = ParabolicK> {
    let r = rstype.rank();
    (0..(1u32 << r)).map(move |bits| {
        let ks: Vec<usize> = (1..=r).filter(|&k| bits >> (k - 1) & 1 == 1).collect();
        ParabolicK::new(rstype, ks).unwrap()
    })
}

#[test]
fn type_a_three_methods_agree() {
    for n in 2..=6 {
        let rstype = RSType::new(Family::A, n).unwrap();
        for pk in all_k(rstype) {
            let faces = h_polynomial_faces(&pk).unwrap();
            let (precup, members) = h_via_precup(&pk, BUDGET).unwrap();
            let chars = h_via_characters_a(&pk, BUDGET).unwrap();
            assert_eq!(faces, precup, "A n={n} K={:?}", pk.k);
            assert_eq!(faces, chars, "A n={n} K={:?}", pk.k);
            assert_eq!(faces.eval(1), members.len() as i128);
        }
    }
}

#[test]
fn signed_types_two_methods_agree() {
    for family in [Family::B, Family::C, Family::D] {
        for n in 2..=4 {
            let rstype = RSType::new(family, n).unwrap();
            for pk in all_k(rstype) {
                let faces = h_polynomial_faces(&pk).unwrap();
                let (precup, _) = h_via_precup(&pk, BUDGET).unwrap();
                assert_eq!(faces, precup, "{family:?} n={n} K={:?}", pk.k);
            }
        }
    }
}

#[test]
fn h_polynomial_shape_invariants() {
    for (family, n_max) in [(Family::A, 6), (Family::B, 4), (Family::C, 4), (Family::D, 4)] {
        for n in 2..=n_max {
            let rstype = RSType::new(family, n).unwrap();
            for pk in all_k(rstype) {
                let h = h_polynomial_faces(&pk).unwrap();
                let f = f_vector(&pk).unwrap();
                assert!(h.is_palindromic(), "{family:?} n={n} K={:?}", pk.k);
                assert_eq!(h.coeff(0), 1);
                assert_eq!(h.coeff(h.degree()), 1);
                assert_eq!(h.degree(), rstype.dim());
                // h(1) counts vertices
                assert_eq!(h.eval(1), f[0] as i128);
                // alternating sum of face counts (top face included)
                let euler: i128 = f
                    .iter()
                    .enumerate()
                    .map(|(i, &c)| if i % 2 == 0 { c as i128 } else { -(c as i128) })
                    .sum();
                assert_eq!(euler, 1);
            }
        }
    }
}

#[test]
fn empty_k_vertex_count_is_group_order() {
    for (family, n_max) in [(Family::A, 6), (Family::B, 4), (Family::C, 4), (Family::D, 4)] {
        for n in 2..=n_max {
            let rstype = RSType::new(family, n).unwrap();
            let pk = ParabolicK::new(rstype, vec![]).unwrap();
            let f = f_vector(&pk).unwrap();
            assert_eq!(f[0] as u128, rstype.weyl_order());
        }
    }
}
