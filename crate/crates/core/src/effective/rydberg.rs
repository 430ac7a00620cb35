//! Rydberg pumping in the permutation-symmetric sector and its adiabatic
//! reduction to a resonant `|+++> <-> |rrr>` coupling.

use crate::dynamics::{integrate_ode, OdeControls};
use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::C64;

/// Ratio `Ω_r / Δ` above which the elimination is considered unreliable.
pub const ADIABATIC_RATIO_LIMIT: f64 = 0.1;

/// The 4×4 Hamiltonian on `{|r^0>, |r^1>, |r^2>, |r^3>}`, the symmetric
/// states with `m` atoms in `|r>` and the rest in `|+>`.
pub fn symmetric_hr_4x4(omega_r: f64, delta_cap: f64, u: f64) -> CMat {
    let a = 6f64.sqrt() * omega_r;
    let b = 2.0 * 2f64.sqrt() * omega_r;
    let m = [
        [0.0, a, 0.0, 0.0],
        [a, -delta_cap, b, 0.0],
        [0.0, b, u - 2.0 * delta_cap, a],
        [0.0, 0.0, a, 3.0 * u - 3.0 * delta_cap],
    ];
    CMat::from_fn(4, 4, |i, j| C64::new(m[i][j], 0.0))
}

/// Amplitudes `c_0..c_3` on the symmetric Rydberg ladder.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SymmetricAmplitudes(pub [C64; 4]);

impl SymmetricAmplitudes {
    pub fn ground() -> Self {
        let z = C64::new(0.0, 0.0);
        Self([C64::new(1.0, 0.0), z, z, z])
    }

    pub fn norm(&self) -> f64 {
        self.0.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }
}

/// Time derivative of the amplitudes at `U = Δ`.
pub fn amplitude_rhs(state: &SymmetricAmplitudes, omega_r: f64, delta_cap: f64) -> SymmetricAmplitudes {
    let [c0, c1, c2, c3] = state.0;
    let a = 6f64.sqrt() * omega_r;
    let b = 2.0 * 2f64.sqrt() * omega_r;
    let mi = C64::new(0.0, -1.0);
    SymmetricAmplitudes([
        mi * (a * c1),
        mi * (a * c0 + b * c2 - delta_cap * c1),
        mi * (b * c1 + a * c3 - delta_cap * c2),
        mi * (a * c2),
    ])
}

/// Result of eliminating the singly and doubly excited symmetric states.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AdiabaticPump {
    /// Effective `|+++> <-> |rrr>` coupling `12√2 Ω_r³ / Δ²`.
    pub omega_eff: f64,
    /// `Ω_r / Δ`.
    pub ratio: f64,
}

impl AdiabaticPump {
    /// Two-state Hamiltonian on `{|+++>, |rrr>}`.
    pub fn hamiltonian(&self) -> CMat {
        let w = C64::new(self.omega_eff, 0.0);
        let z = C64::new(0.0, 0.0);
        CMat::from_vec(2, 2, vec![z, w, w, z])
    }

    pub fn is_adiabatic(&self) -> bool {
        self.ratio.abs() <= ADIABATIC_RATIO_LIMIT
    }

    pub fn regime_warning(&self) -> Option<String> {
        (!self.is_adiabatic()).then(|| {
            format!("Omega_r/Delta = {:.3} exceeds {ADIABATIC_RATIO_LIMIT}; elimination is unreliable", self.ratio)
        })
    }
}

pub fn adiabatic_eliminate(omega_r: f64, delta_cap: f64) -> Result<AdiabaticPump> {
    if delta_cap == 0.0 || !delta_cap.is_finite() {
        return Err(Error::InvalidParameter("detuning must be nonzero and finite".into()));
    }
    Ok(AdiabaticPump {
        omega_eff: 12.0 * 2f64.sqrt() * omega_r.powi(3) / (delta_cap * delta_cap),
        ratio: omega_r / delta_cap,
    })
}

/// Integrates the 4×4 ladder at `U = Δ` from `|+++>` and returns
/// `(t, |c_3(t)|^2)` samples on a uniform grid over `[0, t_end]`.
pub fn ladder_c3_population(omega_r: f64, delta_cap: f64, t_end: f64, samples: usize) -> Result<Vec<(f64, f64)>> {
    let times: Vec<f64> = (0..samples).map(|k| t_end * k as f64 / (samples - 1) as f64).collect();
    let mut y = SymmetricAmplitudes::ground().0.to_vec();
    let controls = OdeControls { rtol: 1e-9, atol: 1e-12, max_steps: 100_000_000, ..OdeControls::default() };
    let mut out = Vec::with_capacity(samples);
    integrate_ode(
        |_, c, dc| {
            let d = amplitude_rhs(&SymmetricAmplitudes([c[0], c[1], c[2], c[3]]), omega_r, delta_cap);
            dc.copy_from_slice(&d.0);
        },
        &mut y,
        &times,
        &controls,
        |t, c| {
            out.push((t, c[3].norm_sqr()));
            Ok(())
        },
    )?;
    Ok(out)
}

/// Mean angular frequency of `|c_3|^2` from the spacing of its upward
/// crossings of `1/2`. A crossing only counts after the signal has dropped
/// below `1/4`, so fast small-amplitude ripples cannot register twice.
pub fn oscillation_frequency(series: &[(f64, f64)]) -> Option<f64> {
    let mut crossings = Vec::new();
    let mut armed = series.first().is_some_and(|&(_, p)| p < 0.25);
    for w in series.windows(2) {
        let ((t0, p0), (t1, p1)) = (w[0], w[1]);
        if p1 < 0.25 {
            armed = true;
        }
        if armed && p0 < 0.5 && p1 >= 0.5 {
            crossings.push(t0 + (0.5 - p0) / (p1 - p0) * (t1 - t0));
            armed = false;
        }
    }
    if crossings.len() < 2 {
        return None;
    }
    let period = (crossings[crossings.len() - 1] - crossings[0]) / (crossings.len() - 1) as f64;
    Some(2.0 * std::f64::consts::PI / period)
}
