mod common;

use std::sync::Arc;

use common::{binomial, CORPUS};
use sectional::error::HilbertError;
use sectional::hilbert::{analyze, build_report, fit_hilbert, hs_sequence, infer_cohomology_dim2, PrimaryIdeal};
use sectional::ideal::{ideal_colon, ideal_power, Ideal};
use sectional::poly::MonomialOrder;
use sectional::report::run;
use sectional::ring::PolyRing;
use sectional::semigroup::{sg_colon_max, sg_length, AffineSemigroup, SemigroupIdeal};
use sectional::spec::parse_spec;
use sectional::verdict::{check_e2_chain, check_goto_nishida, check_lemma31, Assumptions};

fn poly_ideal(vars: &[&str], quotient: &[&str], gens: &[&str]) -> Ideal {
    let ring = Arc::new(PolyRing::parse(vars, MonomialOrder::DegRevLex, quotient).unwrap());
    Ideal::parse(ring, gens).unwrap()
}

fn semigroup() -> Arc<AffineSemigroup> {
    Arc::new(AffineSemigroup::new(2, vec![vec![1, 0], vec![1, 2], vec![2, 3], vec![3, 1]]).unwrap())
}

fn q_a(a: u32) -> SemigroupIdeal {
    SemigroupIdeal::new(semigroup(), vec![vec![a, 0], vec![a, 2 * a]]).unwrap()
}

const MIXED: &[&str] = &["X*W", "Y*W", "Z*W"];
const XYZW: &[&str] = &["X", "Y", "Z", "W"];

#[test]
fn length_sequences() {
    let plane = poly_ideal(&["x", "y"], &[], &["x", "y"]);
    assert_eq!(hs_sequence(&PrimaryIdeal::Polynomial(plane), 2, 3).unwrap().values, vec![1, 3, 6, 10]);
    assert_eq!(hs_sequence(&PrimaryIdeal::Semigroup(q_a(6)), 2, 2).unwrap().values, vec![74, 220, 438]);
    let q = poly_ideal(XYZW, MIXED, &["X+W", "Y+W", "Z+W"]);
    assert_eq!(hs_sequence(&PrimaryIdeal::Polynomial(q), 3, 3).unwrap().values, vec![2, 6, 13, 24]);
}

#[test]
fn semigroup_closed_forms_and_colon_powers() {
    for a in [6u32, 7, 8] {
        let q = q_a(a);
        let (colon, _) = sg_colon_max(&q).unwrap();
        let e0 = 2 * (a as u64).pow(2);
        for n in 0..=3u32 {
            let nn = n as u64;
            let qn = q.power(n + 1).unwrap();
            assert_eq!(sg_length(&qn).unwrap(), e0 * binomial(nn + 2, 2) + 2 * (nn + 1));
            let cn = colon.power(n + 1).unwrap();
            let want = e0 * binomial(nn + 2, 2) - (nn + 1) - 1;
            assert_eq!(sg_length(&cn).unwrap(), want, "a={a} n={n}");
            // powers of the colon agree with the colon of powers
            let (qn_colon, _) = sg_colon_max(&qn).unwrap();
            assert_eq!(sg_length(&qn_colon).unwrap(), want, "a={a} n={n}");
        }
    }
}

#[test]
fn semigroup_fits() {
    let an = analyze(&PrimaryIdeal::Semigroup(q_a(6)), 2, 6, Some(2)).unwrap();
    assert_eq!(fit_hilbert(&an.lengths_q).unwrap().e, vec![72, -2, 0]);
    assert_eq!(fit_hilbert(&an.lengths_colon).unwrap().e, vec![72, 1, -1]);
    let rep = an.report;
    assert_eq!((rep.sg_q, rep.sg_colon, rep.ir, rep.i_q), (0, -1, 4, 2));
    // colon genus identity evaluated by hand: 2 + 1 - 4
    assert_eq!(rep.sg_colon, rep.i_q + rep.e_colon.e(1) - rep.ir as i64);
}

#[test]
fn quadric_cone_report() {
    let q = poly_ideal(&["x", "y", "z"], &["z^2 - x*y"], &["x", "y"]);
    let rep = build_report(&PrimaryIdeal::Polynomial(q), 2, 6, None).unwrap();
    assert_eq!(rep.e_q.e, vec![2, 0, 0]);
    assert_eq!(rep.e_colon.e, vec![2, 1, 0]);
    assert_eq!((rep.len_q, rep.ir, rep.sg_q, rep.sg_colon, rep.i_q), (2, 1, 0, 0, 0));
    let c = infer_cohomology_dim2(&rep).unwrap();
    assert_eq!((c.h0, c.h1, c.r0, c.r1, c.r2), (0, 0, 0, 0, 1));
    assert!(c.valid);
}

#[test]
fn mixed_dimension_linear_parameters() {
    let q = poly_ideal(XYZW, MIXED, &["X+W", "Y+W", "Z+W"]);
    let ring = q.ring().clone();
    let an = analyze(&PrimaryIdeal::Polynomial(q.clone()), 3, 5, Some(1)).unwrap();
    let rep = &an.report;
    assert_eq!(rep.e_q.e, vec![1, 0, 1, 0]);
    assert_eq!(rep.sg_q, 1);
    // R/q = k[W]/(W^2): the socle is W and q:m = m
    let PrimaryIdeal::Polynomial(colon) = &an.colon.ideal else { panic!() };
    assert_eq!(colon, &Ideal::maximal(ring));
    assert_eq!(rep.ir, 1);
    assert_eq!(rep.e_colon.e, vec![1, 0, 1, 1]);
    let rec = check_e2_chain(rep, &Assumptions::new()).unwrap();
    assert!(rec.links[0].equality);
    assert!(!rec.links[1].holds);
    assert_eq!(rec.conclusion, None);
}

#[test]
fn mixed_dimension_deep_parameters() {
    let q = poly_ideal(XYZW, MIXED, &["X^2+W^2", "Y^2+W^2", "Z^2+W^2"]);
    let rep = build_report(&PrimaryIdeal::Polynomial(q.clone()), 3, 5, Some(1)).unwrap();
    // l(A/qA) = 8, l(B/qB) = 2
    assert_eq!(rep.e_q.e, vec![8, 0, 2, 0]);
    assert_eq!((rep.e_colon.e(1), rep.e_colon.e(2)), (1, 2));
    assert_eq!((rep.sg_q, rep.sg_colon, rep.ir), (2, 1, 2));
    let r = rep.r.unwrap() as i64;
    assert_eq!(rep.e_q.e(2), rep.sg_colon + rep.ir as i64 - r);
    assert!(check_lemma31(&rep, &Assumptions::new()).all_hold());

    // socle of R/q^{n+1} has length C(n+2,2) + 1
    let m = Ideal::maximal(q.ring().clone());
    for n in 0..=3u32 {
        let p = ideal_power(&q, n + 1).unwrap();
        let c = ideal_colon(&p, &m).unwrap();
        let socle = p.length().unwrap().finite().unwrap() - c.length().unwrap().finite().unwrap();
        assert_eq!(socle, binomial(n as u64 + 2, 2) + 1, "n={n}");
    }
}

#[test]
fn second_coefficient_sign_follows_depth_zero_part() {
    // H^0 of k[x,y,z]/(z^2, zx, zy) is (z), of length 1
    let q = poly_ideal(&["x", "y", "z"], &["z^2", "z*x", "z*y"], &["x^2", "y^2"]);
    let rep = build_report(&PrimaryIdeal::Polynomial(q), 2, 6, None).unwrap();
    assert_eq!(rep.e_q.e(2), 1);
    let c = infer_cohomology_dim2(&rep).unwrap();
    assert_eq!(c.h0, 1);
    assert!(c.valid);
    assert_eq!(rep.i_q, c.h0 + c.h1);
}

#[test]
fn corpus_consistency() {
    for (name, src) in CORPUS {
        let job = parse_spec(src).unwrap();
        let report = run(&job).unwrap();
        let rep = &report.analysis.report;
        let fit_ok = |h: &sectional::hilbert::HilbertData, seq: &[u64]| {
            (h.n0..seq.len()).all(|n| h.eval(n) == seq[n] as i128)
        };
        assert!(fit_ok(&rep.e_q, &report.analysis.lengths_q.values), "{name}");
        assert!(fit_ok(&rep.e_colon, &report.analysis.lengths_colon.values), "{name}");
        assert!(check_goto_nishida(rep, &Assumptions::new()).all_hold(), "{name}");
        if let Some(c) = report.cohomology.filter(|c| c.valid) {
            assert_eq!(rep.i_q, c.h0 + c.h1, "{name}");
        }
        for w in report.analysis.lengths_q.values.windows(2) {
            assert!(w[0] <= w[1], "{name}");
        }
    }
}

#[test]
fn northcott_for_complete_intersection() {
    let q = poly_ideal(&["x", "y"], &[], &["x^2", "y^3"]);
    let rep = build_report(&PrimaryIdeal::Polynomial(q), 2, 6, None).unwrap();
    assert_eq!((rep.sg_q, rep.e_q.e(1)), (0, 0));
    assert!(rep.sg_colon >= rep.e_q.e(1));
}

#[test]
fn error_paths() {
    let plane = poly_ideal(&["x", "y"], &[], &["x", "y"]);
    assert_eq!(
        build_report(&PrimaryIdeal::Polynomial(plane.clone()), 2, 6, None).unwrap_err(),
        HilbertError::DegenerateColon
    );
    let ci = poly_ideal(&["x", "y"], &[], &["x^2", "y^3"]);
    assert!(matches!(
        analyze(&PrimaryIdeal::Polynomial(ci), 2, 3, None),
        Err(HilbertError::NotStabilized { have: 4, need: 5 })
    ));
    assert_eq!(
        build_report(&PrimaryIdeal::Polynomial(plane), 3, 6, None).unwrap_err(),
        HilbertError::DimensionMismatch { gens: 2, dim: 3 }
    );
    let infinite = poly_ideal(&["x", "y"], &[], &["x", "x*y"]);
    assert!(matches!(
        hs_sequence(&PrimaryIdeal::Polynomial(infinite), 2, 4),
        Err(HilbertError::NotPrimary(_))
    ));
    let away = poly_ideal(&["x", "y"], &[], &["x", "y - 1"]);
    assert!(matches!(hs_sequence(&PrimaryIdeal::Polynomial(away), 2, 4), Err(HilbertError::NotPrimary(_))));
    let mixed_support = poly_ideal(&["x", "y"], &[], &["x^2 - x", "y"]);
    assert!(matches!(
        hs_sequence(&PrimaryIdeal::Polynomial(mixed_support), 2, 4),
        Err(HilbertError::NotPrimary(_))
    ));
    let s = Arc::new(AffineSemigroup::new(2, vec![vec![1, 0], vec![0, 1]]).unwrap().with_axis_cap(64));
    let ray = SemigroupIdeal::new(s, vec![vec![1, 0]]).unwrap();
    assert!(matches!(hs_sequence(&PrimaryIdeal::Semigroup(ray), 2, 4), Err(HilbertError::NotPrimary(_))));
}
