mod common;

use common::*;
use dcpoly::algebra::{symbolic_det, AffineForm, Assignment, VarId};
use dcpoly::families::FamilySpec;
use dcpoly::io::{parse_poset, serialize_poset};
use dcpoly::poset::{
    boolean_lattice, cube_face_lattice, eval_poset_polynomial, family_detrep, family_poset,
    grenet_build, multiset_lattice, validate_poset, verify_detrep, GradedLabeledPoset,
    VerifyConfig,
};
use rand::Rng;

fn random_point(vars: &[VarId], seed: u64) -> Assignment {
    let mut g = rng(seed);
    vars.iter().map(|&v| (v, r(g.gen_range(-5..=5)))).collect()
}

#[test]
fn lattice_polynomials_match_families() {
    for spec in [
        FamilySpec::perm(3).unwrap(),
        FamilySpec::hoperm(2).unwrap(),
        FamilySpec::mperm(vec![2, 1]).unwrap(),
        FamilySpec::mperm(vec![1, 2, 2]).unwrap(),
    ] {
        let poset = family_poset(&spec).unwrap();
        for seed in 0..5 {
            let pt = random_point(&spec.var_order().0, seed);
            let x = spec.point_from_assignment(&pt).unwrap();
            assert_eq!(eval_poset_polynomial(&poset, &pt).unwrap(), family_oracle(&spec, &x), "{spec}");
        }
    }
}

#[test]
fn lattice_shapes() {
    let b = boolean_lattice(3).unwrap();
    assert_eq!((b.len(), b.covers().len(), b.rank()), (8, 12, 3));
    let c = cube_face_lattice(2).unwrap();
    // Sign vectors in {0,+,-}²: one minimum, four of rank 1, four maximal.
    assert_eq!(c.len(), 9);
    assert_eq!(c.rank(), 2);
    assert_eq!(validate_poset(&c).unwrap().maximal.len(), 4);
    let m = multiset_lattice(&[2, 1]).unwrap();
    assert_eq!((m.len(), m.rank()), (6, 3));
}

#[test]
fn symbolic_det_equals_family_polynomial() {
    for spec in [
        FamilySpec::perm(2).unwrap(),
        FamilySpec::perm(3).unwrap(),
        FamilySpec::hoperm(1).unwrap(),
        FamilySpec::mperm(vec![2, 1]).unwrap(),
        FamilySpec::mperm(vec![1, 2]).unwrap(),
        FamilySpec::mperm(vec![3, 1]).unwrap(),
    ] {
        let rep = family_detrep(&spec).unwrap();
        assert_eq!(symbolic_det(&rep.matrix), family_polynomial(&spec), "{spec}");
        assert!(rep.cycles_pass_through_root(), "{spec}");
    }
}

#[test]
fn hand_written_poset_with_top_adjoined() {
    // Two maximal elements: the construction must adjoin a top.
    let text = "\
# a small non-lattice
elem z rank 0
elem a rank 1
elem b rank 1
elem p rank 2
elem q rank 2
cover z a label x[1,1]
cover z b label 2 + x[1,2]
cover a p label x[2,1]
cover a q label 3/2*x[2,2]
cover b q label -1 + x[2,1]
";
    let poset = parse_poset(text).unwrap().poset;
    let rep = grenet_build(&poset).unwrap();
    assert!(rep.top_adjoined);
    let vars: Vec<VarId> = [(1, 1), (1, 2), (2, 1), (2, 2)]
        .into_iter()
        .map(|(i, j)| VarId::new(i, j))
        .collect();
    let report = verify_detrep(&rep, &vars, |pt| eval_poset_polynomial(&poset, pt), &VerifyConfig::new(25, 9)).unwrap();
    assert!(report.passed());

    // Hand expansion: x11·x21 + x11·(3/2)x22 + (2+x12)(x21−1).
    let expected = {
        let mut p = dcpoly::algebra::Polynomial::zero();
        let v = |i, j| VarId::new(i, j);
        p.add_term(vec![v(1, 1), v(2, 1)], r(1));
        p.add_term(vec![v(1, 1), v(2, 2)], common::r(3) / r(2));
        p.add_term(vec![v(2, 1)], r(2));
        p.add_term(vec![v(1, 2), v(2, 1)], r(1));
        p.add_term(vec![], r(-2));
        p.add_term(vec![v(1, 2)], r(-1));
        p
    };
    assert_eq!(symbolic_det(&rep.matrix), expected);
}

#[test]
fn dsl_round_trips() {
    for poset in [
        boolean_lattice(3).unwrap(),
        cube_face_lattice(2).unwrap(),
        multiset_lattice(&[2, 2]).unwrap(),
    ] {
        let text = serialize_poset(&poset);
        assert_eq!(parse_poset(&text).unwrap().poset, poset);
    }
}

#[test]
fn invalid_posets_rejected() {
    let mut p = GradedLabeledPoset::new();
    p.add_element("a", 0).unwrap();
    p.add_element("b", 2).unwrap();
    assert!(p.add_cover("a", "b", AffineForm::one()).is_ok());
    assert!(validate_poset(&p).is_err());
    assert!(grenet_build(&p).is_err());
    assert!(parse_poset("elem a rank 0\ncover a nope label 1").is_err());
}

#[test]
fn corrupted_representation_fails_verification() {
    let spec = FamilySpec::perm(3).unwrap();
    let mut rep = family_detrep(&spec).unwrap();
    rep.matrix.get_mut(1, 1).add_constant(&r(1));
    let vars = spec.var_order().0;
    let report = verify_detrep(&rep, &vars, |pt| Ok(family_oracle(&spec, &spec.point_from_assignment(pt)?)), &VerifyConfig::new(10, 1)).unwrap();
    assert!(!report.passed());
    let bad = report.failures().next().unwrap();
    assert!(bad.witness.is_some());
}
