//! Parameter sets of the reproduced figures and tables.

use std::path::PathBuf;

use crate::error::{Error, Result};
use crate::model::{ModelParams, Units};

use super::config::{InitialState, ModelKind, ScenarioConfig};

/// Every scenario the runner knows.
pub const SCENARIOS: [&str; 11] = [
    "fig3",
    "fig3-inset",
    "fig4-full",
    "fig4-eff",
    "table",
    "gfluct",
    "appendix",
    "zeno-report",
    "ladder",
    "custom",
    "all",
];

pub fn check_scenario_name(name: &str) -> Result<()> {
    if SCENARIOS.contains(&name) {
        Ok(())
    } else {
        Err(Error::UnknownScenario(name.to_string()))
    }
}

/// Z pumping in g-units: `Ω = 0.02`, light shifts `(-0.01, 0.02, -0.01)`,
/// `γ_e = 0.1`, no cavity loss.
pub fn zpump_params() -> ModelParams {
    ModelParams {
        units: Units::G,
        g: [1.0; 3],
        omega: 0.02,
        delta: ModelParams::symmetric_delta(0.01),
        gamma_e: 0.1,
        ..ModelParams::default()
    }
}

/// Complete scheme in `2π × MHz`: `g = 50`, `κ = 1`, `γ_e = 3`,
/// `γ_r = 0.144`, `Ω = 0.01 g`, `Ω_r = g`, `U = Δ = 58 g`.
pub fn fig4_params() -> ModelParams {
    let g = 50.0;
    ModelParams {
        units: Units::Mhz2Pi,
        g: [g; 3],
        omega: 0.01 * g,
        delta: ModelParams::symmetric_delta(0.005 * g),
        omega_r: g,
        delta_cap: 58.0 * g,
        u: [58.0 * g; 3],
        gamma_e: 3.0,
        gamma_r: 0.144,
        kappa: 1.0,
        stark_cancellation: true,
    }
}

/// One row of the parameter table with its quoted fidelity.
#[derive(Clone, Debug, PartialEq)]
pub struct TableRow {
    pub params: ModelParams,
    pub quoted_fidelity: f64,
}

fn table_row(g: f64, kappa: f64, omega_over_g: f64, delta_over_g: f64, omega_r_over_g: f64, gamma_r: f64) -> ModelParams {
    let omega = omega_over_g * g;
    ModelParams {
        units: Units::Mhz2Pi,
        g: [g; 3],
        omega,
        delta: ModelParams::symmetric_delta(0.5 * omega),
        omega_r: omega_r_over_g * g,
        delta_cap: delta_over_g * g,
        u: [delta_over_g * g; 3],
        gamma_e: 3.0,
        gamma_r,
        kappa,
        stark_cancellation: true,
    }
}

/// The three cavity platforms of the parameter survey, all in `2π × MHz`.
pub fn table_rows() -> Vec<TableRow> {
    vec![
        TableRow { params: table_row(10.6, 1.3, 0.002, 100.0, 1.0, 0.03), quoted_fidelity: 0.9628 },
        TableRow { params: table_row(14.4, 0.66, 0.005, 80.0, 1.0, 0.03), quoted_fidelity: 0.9815 },
        TableRow { params: table_row(185.0, 53.0, 0.002, 40.0, 0.5, 0.144), quoted_fidelity: 0.9824 },
    ]
}

/// Coupling triples (`2π × MHz`) of the robustness study.
pub const G_FLUCTUATIONS: [[f64; 3]; 3] = [[50.0, 50.0, 50.0], [50.0, 45.0, 40.0], [50.0, 45.0, 55.0]];

/// Default configuration of a scenario.
pub fn preset(name: &str) -> Result<ScenarioConfig> {
    check_scenario_name(name)?;
    let mut cfg = ScenarioConfig {
        scenario: name.to_string(),
        params: zpump_params(),
        model: ModelKind::ZpumpOnly,
        initial: InitialState::FullyMixed,
        cutoff: 2,
        tmax: 2000.0,
        grid: 200,
        rtol: 1e-8,
        atol: 1e-10,
        out_dir: PathBuf::from("out"),
    };
    match name {
        "fig3-inset" => cfg.params.kappa = 0.1,
        "fig4-full" | "fig4-eff" | "table" | "gfluct" | "all" => {
            cfg.params = fig4_params();
            cfg.model = if name == "fig4-eff" { ModelKind::Effective } else { ModelKind::Full };
            cfg.tmax = 30000.0;
            cfg.grid = 120;
        }
        "appendix" => {
            cfg.params.gamma_e = 0.0;
            cfg.initial = InitialState::Ket("001".into());
            cfg.grid = 400;
            // Pure-state runs expose integration error directly as negative eigenvalues.
            cfg.rtol = 1e-10;
            cfg.atol = 1e-12;
        }
        "zeno-report" => cfg.cutoff = 1,
        "ladder" => {
            cfg.model = ModelKind::Symmetric4x4;
            cfg.params = ModelParams { omega_r: 0.02, delta_cap: 1.0, u: [1.0; 3], ..ModelParams::default() };
            cfg.tmax = 2.0e5;
            cfg.grid = 20000;
        }
        _ => {}
    }
    Ok(cfg)
}
