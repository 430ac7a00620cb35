use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;

use ghzsim::experiments::{emit_report, preset, run_all, run_scenario, summary_csv, ScenarioConfig, ScenarioOutcome};
use ghzsim::Result;

/// Simulates dissipative GHZ-state preparation and reproduces its figures.
#[derive(Parser, Debug)]
#[command(name = "ghzsim", version)]
struct Cli {
    /// fig3, fig3-inset, fig4-full, fig4-eff, table, gfluct, appendix,
    /// zeno-report, ladder, custom or all.
    scenario: String,
    /// Flat `key = value` configuration applied on top of the scenario preset.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Output directory (overrides `out_dir`).
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    cutoff: Option<usize>,
    /// Final time in units of 1/g.
    #[arg(long)]
    tmax: Option<f64>,
    #[arg(long)]
    rtol: Option<f64>,
    /// Exit with a nonzero status if any reproduced number misses its target.
    #[arg(long)]
    check: bool,
}

impl Cli {
    fn apply(&self, cfg: &mut ScenarioConfig, with_tmax: bool) {
        if let Some(c) = self.cutoff {
            cfg.cutoff = c;
        }
        if let (Some(t), true) = (self.tmax, with_tmax) {
            cfg.tmax = t;
        }
        if let Some(r) = self.rtol {
            cfg.rtol = r;
        }
        if let Some(o) = &self.out {
            cfg.out_dir = o.clone();
        }
    }

    fn config(&self) -> Result<ScenarioConfig> {
        let mut cfg = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path)?;
                let mut cfg = preset(&self.scenario)?;
                cfg.apply_text(&text)?;
                cfg.scenario = self.scenario.clone();
                cfg
            }
            None => preset(&self.scenario)?,
        };
        self.apply(&mut cfg, true);
        cfg.validate()?;
        Ok(cfg)
    }
}

fn print(outcome: &ScenarioOutcome) {
    println!("== {}", outcome.name);
    for n in &outcome.notes {
        println!("   {n}");
    }
    for c in &outcome.checks {
        println!("   {}", c.line());
    }
}

fn run(cli: &Cli) -> Result<bool> {
    let cfg = cli.config()?;
    if cfg.scenario == "all" {
        let outcomes = run_all(|c| cli.apply(c, false))?;
        let mut checks = Vec::new();
        for o in &outcomes {
            print(o);
            let mut sub = preset(&o.name)?;
            cli.apply(&mut sub, false);
            emit_report(o, &sub.emit(), &cfg.out_dir.join(&o.name))?;
            checks.extend(o.checks.iter().cloned());
        }
        fs::write(cfg.out_dir.join("summary.csv"), summary_csv(&checks))?;
        return Ok(outcomes.iter().all(ScenarioOutcome::all_pass));
    }
    let outcome = run_scenario(&cfg)?;
    print(&outcome);
    emit_report(&outcome, &cfg.emit(), &cfg.out_dir.join(&outcome.name))?;
    Ok(outcome.all_pass())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) if cli.check => {
            eprintln!("ghzsim: at least one reproduced value misses its target");
            ExitCode::from(2)
        }
        Ok(false) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ghzsim: {e}");
            ExitCode::FAILURE
        }
    }
}
