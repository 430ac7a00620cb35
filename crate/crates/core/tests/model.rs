//! Hamiltonians, collapse channels, geometry and named states.

use ghzsim::effective::symmetric_hr_4x4;
use ghzsim::hilbert::{build_space, cavity_annihilation, Level, SpaceSpec, SparseOperator, StateVector};
use ghzsim::linalg::CMat;
use ghzsim::model::{
    build_cavity_coupling, build_collapse_channels, build_full_hamiltonian, build_hk, build_hr, excitation_number,
    full_space, named_states, rydberg_u_from_geometry, zpump_space, ModelParams, Units,
};
use ghzsim::C64;

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn elem(op: &SparseOperator, space: &SpaceSpec, row: &str, col: &str) -> C64 {
    op.get(space.index_of_label(row).unwrap(), space.index_of_label(col).unwrap())
}

/// Generic parameters with every term switched on and unequal couplings.
fn generic() -> ModelParams {
    ModelParams {
        g: [1.0, 0.9, 1.1],
        omega: 0.03,
        delta: [-0.011, 0.02, -0.009],
        omega_r: 0.7,
        delta_cap: 40.0,
        u: [39.0, 41.0, 40.5],
        gamma_e: 0.06,
        gamma_r: 0.003,
        kappa: 0.02,
        ..ModelParams::default()
    }
}

#[test]
fn zpump_hamiltonian_vanishes_without_couplings() {
    let s = zpump_space(1).unwrap();
    let p = ModelParams { g: [0.0; 3], ..ModelParams::default() };
    assert!(build_hk(&p, &s).unwrap().is_zero());
}

#[test]
fn zpump_matrix_elements() {
    let s = full_space(2).unwrap();
    let p = generic();
    let h = build_hk(&p, &s).unwrap();
    assert_eq!(elem(&h, &s, "e00,0", "100,0"), c(p.omega));
    assert_eq!(elem(&h, &s, "000,1", "e00,0"), c(p.g[0]));
    assert_eq!(elem(&h, &s, "000,1", "0e0,0"), c(p.g[1]));
    assert_eq!(elem(&h, &s, "000,2", "0e0,1"), c(p.g[1] * 2f64.sqrt()));
    assert_eq!(elem(&h, &s, "011,0", "011,0"), c(p.delta[1] + p.delta[2]));
    assert_eq!(elem(&h, &s, "0e0,0", "000,0"), c(0.0));
}

#[test]
fn zpump_needs_excited_level_and_cavity() {
    let p = generic();
    assert!(build_hk(&p, &build_space(3, &[Level::G0, Level::G1, Level::R], Some(1)).unwrap()).is_err());
    assert!(build_hk(&p, &build_space(3, &[Level::G0, Level::G1, Level::E], None).unwrap()).is_err());
}

#[test]
fn rydberg_matrix_elements() {
    let s = build_space(3, &[Level::G0, Level::G1, Level::R], None).unwrap();
    let p = generic();
    let h = build_hr(&p, &s).unwrap();
    let u_sum: f64 = p.u.iter().sum();
    assert!((elem(&h, &s, "rrr", "rrr") - c(-3.0 * p.delta_cap + u_sum)).norm() < 1e-12);
    assert_eq!(elem(&h, &s, "r00", "000"), c(p.omega_r));
    assert_eq!(elem(&h, &s, "0r1", "011"), c(p.omega_r));
    assert_eq!(elem(&h, &s, "rr0", "rr0"), c(-2.0 * p.delta_cap + p.u[0]));
    assert_eq!(elem(&h, &s, "r0r", "r0r"), c(-2.0 * p.delta_cap + p.u[1]));

    let balanced = ModelParams { u: [p.delta_cap; 3], ..p };
    assert!(build_hr(&balanced, &s).unwrap().get(s.index_of_label("rrr").unwrap(), s.index_of_label("rrr").unwrap()).norm() < 1e-12);
}

#[test]
fn rydberg_diagonal_without_drive() {
    let s = build_space(3, &[Level::G0, Level::G1, Level::R], None).unwrap();
    let (d, u) = (7.0, 5.0);
    let p = ModelParams { delta_cap: d, u: [u; 3], ..ModelParams::default() };
    let h = build_hr(&p, &s).unwrap();
    for i in 0..s.dim() {
        let m = s.label(i).chars().filter(|&ch| ch == 'r').count();
        let want = [0.0, -d, u - 2.0 * d, 3.0 * u - 3.0 * d][m];
        assert!((h.get(i, i) - c(want)).norm() < 1e-12);
    }
    assert!(build_hr(&p, &zpump_space(1).unwrap()).is_err());
}

#[test]
fn hamiltonians_are_hermitian() {
    let s = full_space(2).unwrap();
    let p = generic();
    assert!(build_hk(&p, &s).unwrap().hermiticity_error() <= 1e-12);
    assert!(build_hr(&p, &s).unwrap().hermiticity_error() <= 1e-12);
    let stark = ModelParams { stark_cancellation: true, ..p };
    assert!(build_full_hamiltonian(&stark, &s).unwrap().hermiticity_error() <= 1e-12);
}

#[test]
fn cavity_coupling_conserves_excitations() {
    let s = zpump_space(2).unwrap();
    let h = build_cavity_coupling(&generic(), &s).unwrap();
    let n = excitation_number(&s).unwrap();
    assert!(h.commutator(&n).unwrap().max_abs() < 1e-14);
}

#[test]
fn zpump_conserves_qubit_one_plus_excitations() {
    let s = zpump_space(2).unwrap();
    let h = build_hk(&generic(), &s).unwrap();
    // The drive turns |1> into |e>, so |1> counts as one quantum as well.
    let diag: Vec<(usize, usize, C64)> = (0..s.dim())
        .map(|i| {
            let (atoms, photon) = s.decode(i);
            let k = atoms.iter().filter(|l| matches!(l, Level::G1 | Level::E)).count() + photon;
            (i, i, c(k as f64))
        })
        .collect();
    let n = SparseOperator::from_triplets(&s, diag).unwrap();
    assert!(h.commutator(&n).unwrap().max_abs() < 1e-14);
    assert!(h.commutator(&excitation_number(&s).unwrap()).unwrap().max_abs() > 1e-3);
}

#[test]
fn channel_counts_follow_the_nonzero_rates() {
    let s = full_space(1).unwrap();
    let p = generic();
    assert_eq!(build_collapse_channels(&p, &s).unwrap().len(), 13);
    assert_eq!(build_collapse_channels(&ModelParams { kappa: 0.0, ..p.clone() }, &s).unwrap().len(), 12);
    assert_eq!(build_collapse_channels(&ModelParams { kappa: 0.0, gamma_r: 0.0, ..p.clone() }, &s).unwrap().len(), 6);
}

#[test]
fn channels_have_half_rates_into_each_qubit_level() {
    let s = full_space(1).unwrap();
    let p = generic();
    let ch = build_collapse_channels(&p, &s).unwrap();
    let a = cavity_annihilation(&s).unwrap();
    let from_e: Vec<_> = ch.iter().filter(|c| (c.rate - p.gamma_e / 2.0).abs() < 1e-15).collect();
    let from_r: Vec<_> = ch.iter().filter(|c| (c.rate - p.gamma_r / 2.0).abs() < 1e-15).collect();
    assert_eq!(from_e.len(), 6);
    assert_eq!(from_r.len(), 6);
    let cav: Vec<_> = ch.iter().filter(|c| (c.rate - p.kappa).abs() < 1e-15).collect();
    assert_eq!(cav.len(), 1);
    assert_eq!(cav[0].op.to_dense().sub(&a.to_dense()).max_abs(), 0.0);
    // Every atomic jump maps one basis state to one other.
    for c in from_e.iter().chain(&from_r) {
        assert_eq!(c.op.nnz(), s.dim() / 4);
    }
}

#[test]
fn units_must_be_converted_first() {
    let s = full_space(1).unwrap();
    let p = ModelParams { units: Units::Mhz2Pi, g: [50.0; 3], ..ModelParams::default() };
    assert!(build_hk(&p, &s).is_err());
    let q = p.to_g_units(50.0).unwrap();
    assert_eq!(q.g, [1.0; 3]);
    assert!(build_hk(&q, &s).is_ok());
}

#[test]
fn pair_shifts_from_geometry() {
    let z = [0.0, 0.0, 1.0];
    let u = rydberg_u_from_geometry(3.0, &[[0.0; 3], [1.0, 0.0, 0.0], [0.0, 0.0, 2.0]], z).unwrap();
    assert_eq!(u.len(), 3);
    assert!((u[0] - 3.0).abs() < 1e-15);
    assert!((u[1] + 3.0 / 4.0).abs() < 1e-15);
    let cos2 = 4.0 / 5.0;
    let r = 5f64.sqrt();
    assert!((u[2] - 3.0 * (1.0 - 3.0 * cos2) / r.powi(3)).abs() < 1e-14);
    assert!(rydberg_u_from_geometry(1.0, &[[0.0; 3], [0.0; 3]], z).is_err());
}

#[test]
fn ghz_overlaps_with_the_bright_product() {
    let s = zpump_space(1).unwrap();
    let n = named_states(&s).unwrap();
    let plus = n.get("+++").unwrap();
    assert!(plus.inner(n.get("GHZ-").unwrap()).norm() < 1e-15);
    assert!((plus.inner(n.get("GHZ+").unwrap()) - c(0.5)).norm() < 1e-15);
    // GHZ+ is the even-parity combination of the ± products.
    let mut sum = vec![C64::new(0.0, 0.0); s.dim()];
    for name in ["+++", "+--", "-+-", "--+"] {
        for (x, y) in sum.iter_mut().zip(n.get(name).unwrap().amplitudes()) {
            *x += y * 0.5;
        }
    }
    let ghz = n.get("GHZ+").unwrap().amplitudes();
    assert!(sum.iter().zip(ghz).all(|(a, b)| (a - b).norm() < 1e-15));
    assert!((n.fully_mixed.purity() - 0.125).abs() < 1e-15);
}

#[test]
fn dark_states_are_dark_to_the_cavity() {
    let s = zpump_space(2).unwrap();
    let n = named_states(&s).unwrap();
    let p = ModelParams { g: [1.0; 3], ..ModelParams::default() };
    let h = build_cavity_coupling(&p, &s).unwrap();
    for d in ["D1", "D2", "D3", "D4", "D5"] {
        let v = n.get(d).unwrap();
        assert!((v.norm() - 1.0).abs() < 1e-14);
        assert!(h.apply(v).unwrap().norm() < 1e-12, "{d}");
    }
}

#[test]
fn one_excitation_eigenstates() {
    let s = zpump_space(1).unwrap();
    let n = named_states(&s).unwrap();
    let h = build_cavity_coupling(&ModelParams::default(), &s).unwrap();
    let r3 = 3f64.sqrt();
    for (name, e) in [("E1", 0.0), ("E2", 0.0), ("E3", r3), ("E4", -r3)] {
        let v = n.get(name).unwrap();
        let hv = h.apply(v).unwrap();
        let res: f64 = hv.amplitudes().iter().zip(v.amplitudes()).map(|(a, b)| (a - b * e).norm_sqr()).sum::<f64>().sqrt();
        assert!(res < 1e-10, "{name}: {res}");
    }
}

/// Permutation-symmetric states with `m` atoms in `|r>` and the rest in
/// `|+>`, built from explicit product amplitudes.
fn symmetric_ladder(s: &SpaceSpec) -> Vec<StateVector> {
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let local = |r: bool| -> Vec<(char, f64)> { if r { vec![('r', 1.0)] } else { vec![('0', h), ('1', h)] } };
    (0..4)
        .map(|m| {
            let mut amp = vec![C64::new(0.0, 0.0); s.dim()];
            for mask in 0u32..8 {
                if mask.count_ones() as usize != m {
                    continue;
                }
                for a in local(mask & 1 != 0) {
                    for b in local(mask & 2 != 0) {
                        for cc in local(mask & 4 != 0) {
                            let label: String = [a.0, b.0, cc.0].iter().collect();
                            amp[s.index_of_label(&label).unwrap()] += c(a.1 * b.1 * cc.1);
                        }
                    }
                }
            }
            StateVector::new(s, amp).unwrap().normalized().unwrap()
        })
        .collect()
}

#[test]
fn symmetric_sector_reproduces_the_ladder_matrix() {
    let s = build_space(3, &[Level::G0, Level::G1, Level::R], None).unwrap();
    let (om, d, u) = (0.37, 11.0, 9.5);
    let p = ModelParams { omega_r: om, delta_cap: d, u: [u; 3], ..ModelParams::default() };
    let h = build_hr(&p, &s).unwrap();
    let basis = symmetric_ladder(&s);
    let restricted = CMat::from_fn(4, 4, |i, j| basis[i].inner(&h.apply(&basis[j]).unwrap()));
    let want = symmetric_hr_4x4(om, d, u);
    assert!(restricted.sub(&want).max_abs() < 1e-12);
    // The sector is invariant.
    for b in &basis {
        let hb = h.apply(b).unwrap();
        let inside: f64 = basis.iter().map(|x| x.inner(&hb).norm_sqr()).sum();
        assert!((inside - hb.norm().powi(2)).abs() < 1e-12);
    }
}
