//! Zeno projection, the effective Z pump and the eliminated Rydberg pump.

use ghzsim::effective::{
    adiabatic_eliminate, amplitude_rhs, build_effective_full_model, build_effective_rydberg_pump,
    build_effective_zpump, effective_space, near_resonant, rotating_frame_terms, symmetric_hr_4x4, zeno_decompose,
    SymmetricAmplitudes, DEFAULT_GROUPING_TOL,
};
use ghzsim::experiments::{fig4_params, ladder_comparison, one_excitation_basis, zpump_params};
use ghzsim::hilbert::{site_dyad, Level, SpaceSpec, SparseOperator, StateVector};
use ghzsim::linalg::CMat;
use ghzsim::model::{build_cavity_coupling, build_collapse_channels, build_drive, named_states, zpump_space, ModelParams};
use ghzsim::C64;

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

fn product_parent() -> SpaceSpec {
    SpaceSpec::new(3, &[Level::G0, Level::G1, Level::E, Level::R], None).unwrap()
}

fn fig4_g() -> ModelParams {
    fig4_params().to_g_units(50.0).unwrap()
}

/// `sum_i δ_i |1><1|_i` on the product space.
fn light_shift(p: &ModelParams, s: &SpaceSpec) -> SparseOperator {
    let mut h = SparseOperator::zero(s);
    for i in 0..3 {
        h = h.plus(&site_dyad(s, i, Level::G1, Level::G1).unwrap().scale_re(p.delta[i])).unwrap();
    }
    h
}

fn energy(op: &SparseOperator, k: &StateVector) -> f64 {
    k.inner(&op.apply(k).unwrap()).re
}

/// Row label of the single nonzero entry of a dyad.
fn dyad_row(op: &SparseOperator, s: &SpaceSpec) -> String {
    let entries: Vec<_> = op.triplets().filter(|(_, _, v)| v.norm() > 1e-14).collect();
    assert_eq!(entries.len(), 1);
    s.label(entries[0].0)
}

#[test]
fn one_excitation_block_splits_into_bright_and_dark_parts() {
    let s = zpump_space(1).unwrap();
    let p = ModelParams { g: [1.0, 0.8, 1.3], ..ModelParams::default() };
    let h = build_cavity_coupling(&p, &s).unwrap();
    let z = zeno_decompose(&h, &one_excitation_basis(&s).unwrap(), DEFAULT_GROUPING_TOL).unwrap();
    let bright = p.g.iter().map(|g| g * g).sum::<f64>().sqrt();
    assert_eq!(z.dims, vec![1, 5, 1]);
    assert!((z.eigenvalues[0] + bright).abs() < 1e-12);
    assert!(z.eigenvalues[1].abs() < 1e-12);
    assert!((z.eigenvalues[2] - bright).abs() < 1e-12);
    let mut total = SparseOperator::zero(&s);
    for (k, pr) in z.projectors.iter().enumerate() {
        assert!(pr.compose(pr).unwrap().minus(pr).unwrap().max_abs() < 1e-12);
        let hp = h.compose(pr).unwrap().minus(&pr.scale_re(z.eigenvalues[k])).unwrap();
        assert!(hp.max_abs() < 1e-12);
        total = total.plus(pr).unwrap();
    }
    let mut want = SparseOperator::zero(&s);
    for v in one_excitation_basis(&s).unwrap() {
        want = want.plus(&v.projector()).unwrap();
    }
    assert!(total.minus(&want).unwrap().max_abs() < 1e-12);
}

#[test]
fn equal_couplings_give_root_three_splitting() {
    let s = zpump_space(1).unwrap();
    let h = build_cavity_coupling(&ModelParams::default(), &s).unwrap();
    let z = zeno_decompose(&h, &one_excitation_basis(&s).unwrap(), DEFAULT_GROUPING_TOL).unwrap();
    let s3 = 3f64.sqrt();
    assert_eq!(z.dims, vec![1, 5, 1]);
    assert!((z.eigenvalues[0] + s3).abs() < 1e-12 && (z.eigenvalues[2] - s3).abs() < 1e-12);
}

#[test]
fn non_orthonormal_basis_is_rejected() {
    let s = zpump_space(1).unwrap();
    let h = build_cavity_coupling(&ModelParams::default(), &s).unwrap();
    let k = StateVector::from_label(&s, "001,0").unwrap();
    assert!(zeno_decompose(&h, &[k.clone(), k], DEFAULT_GROUPING_TOL).is_err());
    assert!(zeno_decompose(&h, &[], DEFAULT_GROUPING_TOL).is_err());
}

#[test]
fn frame_terms_rotate_at_energy_differences() {
    let s = SpaceSpec::new(1, &[Level::G0, Level::G1, Level::E], None).unwrap();
    let w = 0.3;
    let up = site_dyad(&s, 0, Level::E, Level::G1).unwrap().scale_re(w);
    let h = up.plus(&up.dagger()).unwrap();
    let frame: Vec<(String, StateVector, f64)> = [("0", 0.0), ("1", 0.2), ("e", 5.0)]
        .iter()
        .map(|(l, e)| (l.to_string(), StateVector::from_label(&s, l).unwrap(), *e))
        .collect();
    let terms = rotating_frame_terms(&h, &frame).unwrap();
    assert_eq!(terms.len(), 1);
    assert_eq!((terms[0].row.as_str(), terms[0].col.as_str()), ("1", "e"));
    assert!((terms[0].amplitude - c(w)).norm() < 1e-15);
    assert!((terms[0].frequency + 4.8).abs() < 1e-15);
    assert!(near_resonant(&terms, 4.0).is_empty());
    assert_eq!(near_resonant(&terms, 5.0).len(), 1);
}

#[test]
fn effective_space_has_qubit_rydberg_products_and_dark_states() {
    let s = effective_space().unwrap();
    assert_eq!(s.dim(), 32);
    assert_eq!(s.label(0), "000");
    assert_eq!(s.label(26), "rrr");
    assert_eq!(s.label(27), "D1");
    assert_eq!(s.label(31), "D5");
}

#[test]
fn zpump_couplings_match_the_projected_drive() {
    let p = zpump_params();
    let (h, channels) = build_effective_zpump(&p).unwrap();
    assert_eq!(channels.len(), 16);
    let eff = h.space().clone();
    let parent = product_parent();
    let named = named_states(&parent).unwrap();
    let drive = build_drive(&p, &parent).unwrap();
    let shift = light_shift(&p, &parent);
    assert_eq!(h.terms().len(), 11);
    for term in h.terms() {
        let (i, j, v) = term.op.triplets().next().unwrap();
        assert_eq!(v, c(1.0));
        let q = StateVector::from_label(&parent, &eff.label(i)).unwrap();
        let d = named.get(&eff.label(j)).unwrap();
        let want = q.inner(&drive.apply(d).unwrap());
        assert!((term.amplitude - want).norm() < 1e-14, "{} <- {}", eff.label(i), eff.label(j));
        let freq = energy(&shift, &q) - energy(&shift, d);
        assert!((term.frequency - freq).abs() < 1e-14, "{} <- {}", eff.label(i), eff.label(j));
    }
    let s6 = 6f64.sqrt();
    let t = h.terms().iter().find(|t| eff.label(t.op.triplets().next().unwrap().0) == "010").unwrap();
    assert!((t.amplitude - c(-2.0 * p.omega / s6)).norm() < 1e-15);
    assert!((t.frequency - p.delta[1]).abs() < 1e-15);
}

#[test]
fn zpump_decay_rates_match_single_atom_emission() {
    let p = zpump_params();
    let (h, channels) = build_effective_zpump(&p).unwrap();
    let eff = h.space().clone();
    let parent = product_parent();
    let named = named_states(&parent).unwrap();
    let full = build_collapse_channels(&p, &parent).unwrap();
    for ch in &channels {
        let (i, j, _) = ch.op.triplets().next().unwrap();
        let q = StateVector::from_label(&parent, &eff.label(i)).unwrap();
        let d = named.get(&eff.label(j)).unwrap();
        let want: f64 = full.iter().map(|f| f.rate * q.inner(&f.op.apply(d).unwrap()).norm_sqr()).sum();
        assert!((ch.rate - want).abs() < 1e-15, "{}", ch.label);
    }
    let to_vacuum = channels.iter().find(|ch| ch.label == "|000><D1|").unwrap();
    assert!((to_vacuum.rate - p.gamma_e / 2.0).abs() < 1e-15);
}

#[test]
fn unsymmetric_light_shifts_are_rejected() {
    let p = ModelParams { delta: [-0.01, 0.02, -0.02], ..zpump_params() };
    assert!(build_effective_zpump(&p).is_err());
    assert!(build_effective_zpump(&fig4_params()).is_err());
}

#[test]
fn ladder_hamiltonian_diagonal() {
    let (w, dc, u) = (0.3, 5.0, 4.0);
    let h = symmetric_hr_4x4(w, dc, u);
    let want = [0.0, -dc, u - 2.0 * dc, 3.0 * u - 3.0 * dc];
    for (k, x) in want.iter().enumerate() {
        assert!((h[(k, k)] - c(*x)).norm() < 1e-15);
    }
    assert!(h.sub(&h.adjoint()).max_abs() < 1e-15);
}

#[test]
fn ladder_rhs_is_the_schrodinger_equation() {
    let (w, dc) = (0.37, 11.0);
    let h = symmetric_hr_4x4(w, dc, dc);
    let amps = [C64::new(0.3, -0.1), C64::new(-0.2, 0.5), C64::new(0.1, 0.1), C64::new(0.7, -0.25)];
    let d = amplitude_rhs(&SymmetricAmplitudes(amps), w, dc);
    let v = CMat::from_fn(4, 1, |i, _| amps[i]);
    let hv = h.matmul(&v);
    let mut norm_rate = 0.0;
    for k in 0..4 {
        let want = C64::new(0.0, -1.0) * hv[(k, 0)];
        assert!((d.0[k] - want).norm() < 1e-13);
        norm_rate += 2.0 * (amps[k].conj() * d.0[k]).re;
    }
    assert!(norm_rate.abs() < 1e-13);
}

#[test]
fn eliminated_coupling_values() {
    assert!((adiabatic_eliminate(1.0, 1.0).unwrap().omega_eff - 12.0 * 2f64.sqrt()).abs() < 1e-12);
    let p = fig4_g();
    let pump = adiabatic_eliminate(p.omega_r, p.delta_cap).unwrap();
    assert!((pump.omega_eff - 5.0449e-3).abs() < 1e-6);
    assert!(pump.is_adiabatic());
    assert!(adiabatic_eliminate(1.0, 0.0).is_err());
    assert!(adiabatic_eliminate(0.5, 1.0).unwrap().regime_warning().is_some());
}

#[test]
fn ladder_follows_the_two_state_oscillation_at_small_ratio() {
    for (ratio, bound) in [(0.01, 0.05), (0.02, 0.05), (0.05, 0.15)] {
        let (_, rel, dev, series) = ladder_comparison(ratio, 1.0, 3000).unwrap();
        assert!(dev <= bound, "ratio {ratio}: deviation {dev}");
        if ratio <= 0.02 {
            assert!(rel <= 0.05, "ratio {ratio}: frequency error {rel}");
        }
        assert!(series.iter().all(|(_, p)| (0.0..=1.0 + 1e-9).contains(p)));
    }
}

#[test]
fn rydberg_pump_rotates_with_the_light_shift_energy() {
    let p = fig4_g();
    let s = effective_space().unwrap();
    let terms = build_effective_rydberg_pump(&p, &s).unwrap();
    assert_eq!(terms.len(), 8);
    let omega_eff = adiabatic_eliminate(p.omega_r, p.delta_cap).unwrap().omega_eff;
    let parent = product_parent();
    let shift = light_shift(&p, &parent);
    for t in &terms {
        let row = dyad_row(&t.op, &s);
        let q = StateVector::from_label(&parent, &row).unwrap();
        assert!((t.frequency - energy(&shift, &q)).abs() < 1e-15, "{row}");
        assert!((t.amplitude.norm() - omega_eff / 8f64.sqrt()).abs() < 1e-15);
    }
}

#[test]
fn ghz_minus_is_decoupled_from_rrr_at_all_times() {
    let p = fig4_g();
    let model = build_effective_full_model(&p).unwrap();
    assert_eq!(model.channels().len(), 22);
    let s = model.space().clone();
    let named = named_states(&s).unwrap();
    let rrr = StateVector::from_label(&s, "rrr").unwrap();
    let omega_eff = adiabatic_eliminate(p.omega_r, p.delta_cap).unwrap().omega_eff;
    let period = 2.0 * std::f64::consts::PI / (p.delta[1] / 2.0).abs();
    for k in 0..16 {
        let h = model.hamiltonian().at(period * k as f64 / 16.0);
        let minus = rrr.inner(&h.apply(named.get("GHZ-").unwrap()).unwrap());
        let plus = rrr.inner(&h.apply(named.get("GHZ+").unwrap()).unwrap());
        assert!(minus.norm() < 1e-15);
        assert!((plus.norm() - omega_eff / 2.0).abs() < 1e-15);
    }
}
