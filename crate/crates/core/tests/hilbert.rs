//! Space construction, embedding and operator algebra.

use ghzsim::hilbert::{
    build_space, cavity_annihilation, embed_site_operator, expectation, expectation_rho, site_dyad, DensityMatrix,
    Level, SpaceSpec, SparseOperator, StateVector,
};
use ghzsim::linalg::CMat;
use ghzsim::C64;
use proptest::prelude::*;

const ALL: [Level; 4] = [Level::G0, Level::G1, Level::E, Level::R];

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn max_diff(a: &SparseOperator, b: &SparseOperator) -> f64 {
    a.to_dense().sub(&b.to_dense()).max_abs()
}

fn local_strategy(d: usize) -> impl Strategy<Value = CMat> {
    prop::collection::vec(-1.0f64..1.0, 2 * d * d).prop_map(move |v| CMat::from_fn(d, d, |i, j| {
        let k = 2 * (i * d + j);
        C64::new(v[k], v[k + 1])
    }))
}

#[test]
fn dimensions_follow_levels_and_cutoff() {
    assert_eq!(build_space(3, &ALL, Some(1)).unwrap().dim(), 128);
    assert_eq!(build_space(1, &[Level::G0, Level::G1], None).unwrap().dim(), 2);
    assert_eq!(build_space(3, &[Level::G0, Level::G1, Level::R], None).unwrap().dim(), 27);
    assert_eq!(build_space(3, &ALL, Some(2)).unwrap().dim(), 192);
}

#[test]
fn empty_level_set_is_rejected() {
    assert!(build_space(3, &[], None).is_err());
    assert!(build_space(0, &ALL, None).is_err());
}

#[test]
fn basis_is_atom_major_with_cavity_last() {
    let s = build_space(3, &ALL, Some(1)).unwrap();
    assert_eq!(s.label(0), "000,0");
    assert_eq!(s.label(1), "000,1");
    assert_eq!(s.label(2), "001,0");
    assert_eq!(s.label(127), "rrr,1");
    for i in 0..s.dim() {
        assert_eq!(s.index_of_label(&s.label(i)).unwrap(), i);
    }
}

#[test]
fn embedding_identity_is_identity() {
    let s = build_space(3, &ALL, Some(1)).unwrap();
    for site in 0..3 {
        let id = embed_site_operator(&s, site, &CMat::identity(4)).unwrap();
        assert_eq!(max_diff(&id, &SparseOperator::identity(&s)), 0.0);
    }
}

#[test]
fn single_site_embedding_is_the_operator() {
    let s = build_space(1, &ALL, None).unwrap();
    let mut local = CMat::zeros(4, 4);
    local[(0, 2)] = c(1.0);
    let op = embed_site_operator(&s, 0, &local).unwrap();
    assert_eq!(op.to_dense().sub(&local).max_abs(), 0.0);
}

#[test]
fn lowering_on_second_atom_acts_on_that_atom() {
    let s = build_space(3, &ALL, Some(1)).unwrap();
    let op = site_dyad(&s, 1, Level::G0, Level::E).unwrap();
    let out = op.apply(&StateVector::from_label(&s, "0e0,0").unwrap()).unwrap();
    let want = StateVector::from_label(&s, "000,0").unwrap();
    assert!((out.inner(&want) - c(1.0)).norm() < 1e-15);
    assert!((out.norm() - 1.0).abs() < 1e-15);
}

#[test]
fn site_index_and_shape_are_checked() {
    let s = build_space(3, &ALL, None).unwrap();
    assert!(embed_site_operator(&s, 3, &CMat::identity(4)).is_err());
    assert!(embed_site_operator(&s, 0, &CMat::identity(3)).is_err());
}

#[test]
fn annihilation_lowers_photon_number() {
    let s = build_space(1, &[Level::G0], Some(2)).unwrap();
    let a = cavity_annihilation(&s).unwrap();
    let vac = StateVector::from_label(&s, "0,0").unwrap();
    let one = StateVector::from_label(&s, "0,1").unwrap();
    assert!(a.apply(&vac).unwrap().norm() < 1e-15);
    assert!((a.apply(&one).unwrap().inner(&vac) - c(1.0)).norm() < 1e-15);
    let n = a.dagger().compose(&a).unwrap();
    assert!((expectation(&n, &one).unwrap() - c(1.0)).norm() < 1e-15);
    let two = StateVector::from_label(&s, "0,2").unwrap();
    assert!((a.apply(&two).unwrap().inner(&one) - c(2f64.sqrt())).norm() < 1e-15);
}

#[test]
fn annihilation_needs_a_cavity() {
    let s = build_space(3, &ALL, None).unwrap();
    assert!(cavity_annihilation(&s).is_err());
}

#[test]
fn canonical_commutator_holds_below_the_cutoff() {
    let s = build_space(2, &[Level::G0, Level::G1], Some(3)).unwrap();
    let a = cavity_annihilation(&s).unwrap();
    let comm = a.commutator(&a.dagger()).unwrap().to_dense();
    for i in 0..s.dim() {
        let (_, photon) = s.decode(i);
        for j in 0..s.dim() {
            let want = if i == j && photon < 3 { 1.0 } else if i == j { -3.0 } else { 0.0 };
            assert!((comm[(i, j)] - c(want)).norm() < 1e-14, "entry ({i},{j})");
        }
    }
}

#[test]
fn algebra_identities() {
    let s = build_space(1, &ALL, None).unwrap();
    let a = site_dyad(&s, 0, Level::G0, Level::E).unwrap();
    let b = site_dyad(&s, 0, Level::E, Level::G1).unwrap();
    assert!(a.commutator(&a).unwrap().is_zero());
    assert_eq!(max_diff(&a.dagger().dagger(), &a), 0.0);
    assert_eq!(max_diff(&a.compose(&b).unwrap(), &site_dyad(&s, 0, Level::G0, Level::G1).unwrap()), 0.0);
}

#[test]
fn operators_on_different_spaces_do_not_mix() {
    let s1 = build_space(1, &ALL, None).unwrap();
    let s2 = build_space(2, &ALL, None).unwrap();
    let a = SparseOperator::identity(&s1);
    let b = SparseOperator::identity(&s2);
    assert!(a.plus(&b).is_err());
    assert!(a.compose(&b).is_err());
}

#[test]
fn projector_and_identity_expectations() {
    let s = build_space(3, &ALL, Some(1)).unwrap();
    let k = StateVector::from_label(&s, "000,0").unwrap();
    assert!((expectation(&k.projector(), &k).unwrap() - c(1.0)).norm() < 1e-15);
    let mix = DensityMatrix::mixture(&[
        (0.25, &StateVector::from_label(&s, "0e1,0").unwrap()),
        (0.75, &StateVector::from_label(&s, "rr1,1").unwrap()),
    ])
    .unwrap();
    assert!((expectation_rho(&SparseOperator::identity(&s), &mix).unwrap() - c(1.0)).norm() < 1e-15);
}

#[test]
fn invalid_labels_are_rejected() {
    let s = build_space(3, &[Level::G0, Level::G1], Some(1)).unwrap();
    assert!(StateVector::from_label(&s, "0e0,0").is_err());
    assert!(StateVector::from_label(&s, "00,0").is_err());
    assert!(StateVector::from_label(&s, "000,2").is_err());
}

fn small_space() -> SpaceSpec {
    build_space(3, &[Level::G0, Level::G1, Level::E], Some(1)).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn embedding_is_a_homomorphism(a in local_strategy(3), b in local_strategy(3), site in 0usize..3) {
        let s = small_space();
        let lhs = embed_site_operator(&s, site, &a.matmul(&b)).unwrap();
        let rhs = embed_site_operator(&s, site, &a).unwrap().compose(&embed_site_operator(&s, site, &b).unwrap()).unwrap();
        prop_assert!(max_diff(&lhs, &rhs) < 1e-13);
    }

    #[test]
    fn disjoint_embeddings_commute(a in local_strategy(3), b in local_strategy(3), i in 0usize..3, shift in 1usize..3) {
        let s = small_space();
        let j = (i + shift) % 3;
        let x = embed_site_operator(&s, i, &a).unwrap();
        let y = embed_site_operator(&s, j, &b).unwrap();
        prop_assert!(x.commutator(&y).unwrap().max_abs() < 1e-13);
    }

    #[test]
    fn dyad_adjoint_swaps_levels(x in 0usize..4, y in 0usize..4, site in 0usize..3) {
        let s = build_space(3, &ALL, Some(1)).unwrap();
        let d = site_dyad(&s, site, ALL[x], ALL[y]).unwrap();
        let e = site_dyad(&s, site, ALL[y], ALL[x]).unwrap();
        prop_assert_eq!(max_diff(&d.dagger(), &e), 0.0);
    }
}
