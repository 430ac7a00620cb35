//! Reproduction scenarios: configuration, presets, runners and reports.

mod config;
mod presets;
mod report;
mod scenarios;

pub use config::{InitialState, ModelKind, ScenarioConfig};
pub use presets::{
    check_scenario_name, fig4_params, preset, table_rows, zpump_params, TableRow, G_FLUCTUATIONS, SCENARIOS,
};
pub use report::{emit_report, format_value, plot_script, summary_csv, Check, Relation, ScenarioOutcome, Table};
pub use scenarios::{
    effective_period, full_steady_fidelity, ladder_comparison, one_excitation_basis, run_all, run_appendix_compare, run_custom,
    run_fig3, run_fig3_inset, run_fig4_eff, run_fig4_full, run_g_fluctuation, run_ladder, run_param_table,
    run_scenario, run_zeno_report, LADDER_RATIOS,
};
