//! Full geometric oracle sweeps: every K at small rank, two unrelated
//! anchors, all six checks (facets, adjacency, simpleness, flagness,
//! f-vector, anchor independence).

use partope::geomoracle::{alt_anchor, default_anchor, verify_against_geometry};
use partope::rootsys::{Family, RSType};
use partope::weyl::ParabolicK;

const BUDGET: u128 = 1 << 30;

fn sweep(family: Family, n: usize) {
    let rstype = RSType::new(family, n).unwrap();
    let anchors = [default_anchor(rstype), alt_anchor(rstype)];
    for bits in 0..(1u32 << rstype.rank()) {
        let ks: Vec<usize> = (1..=rstype.rank()).filter(|&k| bits >> (k - 1) & 1 == 1).collect();
        let pk = ParabolicK::new(rstype, ks.clone()).unwrap();
        let report = verify_against_geometry(&pk, &anchors, BUDGET).unwrap();
        assert!(
            report.pass(),
            "{family:?} n={n} K={ks:?}: {:?}",
            report.violations
        );
    }
}

#[test]
fn oracle_type_a_up_to_n4() {
    for n in 2..=4 {
        sweep(Family::A, n);
    }
}

#[test]
fn oracle_type_b_up_to_n3() {
    for n in 2..=3 {
        sweep(Family::B, n);
    }
}

#[test]
fn oracle_type_c_up_to_n3() {
    for n in 2..=3 {
        sweep(Family::C, n);
    }
}

#[test]
fn oracle_type_d_up_to_n3() {
    for n in 2..=3 {
        sweep(Family::D, n);
    }
}
