//! Runs every reproduction scenario and prints one PASS/FAIL line per
//! numbered criterion, followed by its individual checks.
//!
//! Built without the libtest harness so the report is never captured. The
//! process exits nonzero on an error or on a failing check outside
//! `KNOWN_FAILURES`; known failures are still printed as FAIL.

use std::collections::BTreeMap;
use std::process::ExitCode;

use ghzsim::dynamics::{
    fidelity_mixed, steady_state, steady_state_direct, Hamiltonian, LindbladModel, SteadyStateCriterion,
};
use ghzsim::experiments::{run_all, Check};
use ghzsim::hilbert::{site_dyad, Level, SpaceSpec, SparseOperator, StateVector};
use ghzsim::model::CollapseChannel;

/// The effective-versus-full population comparison exceeds its bound; the
/// effective model omits the loss channels that set the full steady state.
const KNOWN_FAILURES: [&str; 1] = ["3:effective-vs-full"];

const TITLES: [&str; 10] = [
    "Z pumping into 7/8 |000> + 1/8 |111>",
    "GHZ-manifold population with and without cavity loss",
    "steady GHZ- fidelity and effective-model agreement",
    "parameter-table fidelities",
    "robustness to unequal couplings",
    "appendix full versus effective populations",
    "spectrum and Zeno subspaces of the cavity coupling",
    "adiabatic elimination frequency",
    "trajectory diagnostics and structural properties",
    "integrated versus algebraic steady states",
];

fn model(space: &SpaceSpec, terms: &[(Level, Level, f64)], channels: &[(Level, Level, f64)]) -> LindbladModel {
    let sites = 0..space.n_atoms();
    let mut h = SparseOperator::zero(space);
    for i in sites.clone() {
        for &(a, b, w) in terms {
            let t = site_dyad(space, i, a, b).unwrap().scale_re(w * (1.0 + 0.3 * i as f64));
            h = if a == b { h.plus(&t).unwrap() } else { h.plus(&t).unwrap().plus(&t.dagger()).unwrap() };
        }
    }
    let ch = sites
        .flat_map(|i| channels.iter().map(move |&(a, b, r)| (i, a, b, r)))
        .map(|(i, a, b, r)| CollapseChannel::new(r, site_dyad(space, i, a, b).unwrap(), "jump"))
        .collect();
    LindbladModel::new(Hamiltonian::Static(h), ch).unwrap()
}

/// Steady states of small time-independent models (each term on every
/// atom, with site-dependent strengths) by integration and by
/// the direct null-space solve.
fn small_model_checks() -> Vec<Check> {
    use Level::{E, G0, G1, R};
    let q = SpaceSpec::new(1, &[G0, G1], None).unwrap();
    let l3 = SpaceSpec::new(1, &[G0, G1, E], None).unwrap();
    let l4 = SpaceSpec::new(2, &[G0, G1, E, R], None).unwrap();
    let cases = [
        ("qubit", model(&q, &[(G1, G0, 0.3), (G1, G1, 0.1)], &[(G0, G1, 0.5)])),
        (
            "lambda",
            model(&l3, &[(E, G0, 0.4), (E, G1, 0.25), (E, E, -0.2)], &[(G0, E, 0.3), (G1, E, 0.3), (G0, G1, 0.02)]),
        ),
        (
            "two-atom",
            model(
                &l4,
                &[(E, G1, 0.5), (R, G0, 0.2), (G1, G1, 0.03), (R, R, -0.1)],
                &[(G0, E, 0.4), (G1, E, 0.4), (G0, R, 0.05), (G1, R, 0.05), (G0, G1, 0.01), (G1, G0, 0.01)],
            ),
        ),
    ];
    let crit = SteadyStateCriterion { tol_residual: 1e-11, rtol: 1e-10, atol: 1e-12, ..SteadyStateCriterion::default() };
    cases
        .into_iter()
        .map(|(name, m)| {
            assert!(m.dim() <= 64);
            let direct = steady_state_direct(&m).unwrap();
            let start = StateVector::basis(m.space(), 0).to_density();
            let integ = steady_state(&m, &start, &crit).unwrap();
            let f = fidelity_mixed(&direct.state, &integ.state).unwrap();
            Check::at_least(format!("10:{name}"), f, 1.0 - 1e-6)
        })
        .collect()
}

fn criterion_number(check: &Check) -> Option<usize> {
    check.criterion.split(':').next()?.parse().ok()
}

fn main() -> ExitCode {
    let outcomes = run_all(|_| {}).expect("scenario run failed");
    let mut by_criterion: BTreeMap<usize, Vec<Check>> = BTreeMap::new();
    for c in outcomes.iter().flat_map(|o| o.checks.iter()).chain(small_model_checks().iter()) {
        if let Some(n) = criterion_number(c) {
            by_criterion.entry(n).or_default().push(c.clone());
        }
    }

    let mut unexpected = Vec::new();
    for (k, title) in TITLES.iter().enumerate() {
        let n = k + 1;
        let checks = by_criterion.get(&n).map(Vec::as_slice).unwrap_or(&[]);
        let pass = !checks.is_empty() && checks.iter().all(Check::pass);
        println!("criterion {n:>2} {}: {title}", if pass { "PASS" } else { "FAIL" });
        for c in checks {
            println!("    {}", c.line());
            if !c.pass() && !KNOWN_FAILURES.contains(&c.criterion.as_str()) {
                unexpected.push(c.criterion.clone());
            }
        }
        if checks.is_empty() {
            unexpected.push(format!("{n}: no checks"));
        }
    }
    if unexpected.is_empty() {
        ExitCode::SUCCESS
    } else {
        eprintln!("unexpected failures: {unexpected:?}");
        ExitCode::FAILURE
    }
}
