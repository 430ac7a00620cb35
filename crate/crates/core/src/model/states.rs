use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hilbert::{DensityMatrix, Level, SpaceSpec, StateVector};
use crate::C64;

/// Labeled special states of a space.
///
/// Keys: `GHZ+`, `GHZ-`, the eight `|±±±>` products (`"+-+"` etc.), the
/// dark states `D1`..`D5` (needs `|e>`), and the one-excitation eigenstates
/// `E1`..`E4` of the atom-cavity coupling (needs `|e>` and a cavity). All
/// cavity-carrying kets are in the vacuum unless stated.
#[derive(Clone, Debug)]
pub struct NamedStates {
    pub kets: BTreeMap<String, StateVector>,
    /// Uniform mixture of the eight qubit product states.
    pub fully_mixed: DensityMatrix,
}

impl NamedStates {
    pub fn get(&self, name: &str) -> Result<&StateVector> {
        self.kets.get(name).ok_or_else(|| Error::InvalidLabel(format!("no named state {name}")))
    }
}

const QUBIT_LABELS: [&str; 8] = ["000", "001", "010", "011", "100", "101", "110", "111"];

fn ket(space: &SpaceSpec, terms: &[(f64, &str)]) -> Result<StateVector> {
    let kets: Vec<(C64, StateVector)> = terms
        .iter()
        .map(|(c, l)| Ok((C64::new(*c, 0.0), StateVector::from_label(space, l)?)))
        .collect::<Result<_>>()?;
    let refs: Vec<(C64, &StateVector)> = kets.iter().map(|(c, k)| (*c, k)).collect();
    StateVector::superpose(&refs)
}

fn product_states(space: &SpaceSpec) -> Result<NamedStates> {
    space.require_levels(&[Level::G0, Level::G1])?;
    if space.n_atoms() != 3 {
        return Err(Error::InvalidParameter("named states are defined for three atoms".into()));
    }
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let s6 = 1.0 / 6f64.sqrt();
    let cav = space.has_cavity();
    let lab = |s: &str| if cav { format!("{s},0") } else { s.to_string() };
    let mut kets = BTreeMap::new();

    kets.insert("GHZ+".into(), ket(space, &[(h, &lab("000")), (h, &lab("111"))])?);
    kets.insert("GHZ-".into(), ket(space, &[(h, &lab("000")), (-h, &lab("111"))])?);

    for signs in QUBIT_LABELS {
        // |+> = (|0>+|1>)/√2, |-> = (|0>-|1>)/√2 per atom.
        let name: String = signs.chars().map(|c| if c == '0' { '+' } else { '-' }).collect();
        let terms: Vec<(f64, String)> = QUBIT_LABELS
            .iter()
            .map(|bits| {
                let sign = bits
                    .chars()
                    .zip(signs.chars())
                    .filter(|&(b, s)| b == '1' && s == '1')
                    .count();
                let amp = if sign % 2 == 0 { 1.0 } else { -1.0 } / 8f64.sqrt();
                (amp, lab(bits))
            })
            .collect();
        let refs: Vec<(f64, &str)> = terms.iter().map(|(a, l)| (*a, l.as_str())).collect();
        kets.insert(name, ket(space, &refs)?);
    }

    if space.has_level(Level::E) {
        let defs: [(&str, Vec<(f64, &str)>); 5] = [
            ("D1", vec![(s6, "e00"), (s6, "00e"), (-2.0 * s6, "0e0")]),
            ("D2", vec![(h, "e00"), (-h, "00e")]),
            ("D3", vec![(h, "1e0"), (-h, "10e")]),
            ("D4", vec![(h, "e10"), (-h, "01e")]),
            ("D5", vec![(h, "e01"), (-h, "0e1")]),
        ];
        for (name, terms) in defs {
            let terms: Vec<(f64, String)> = terms.iter().map(|(a, l)| (*a, lab(l))).collect();
            let refs: Vec<(f64, &str)> = terms.iter().map(|(a, l)| (*a, l.as_str())).collect();
            kets.insert(name.into(), ket(space, &refs)?);
        }
        if cav {
            kets.insert("E1".into(), kets["D1"].clone());
            kets.insert("E2".into(), kets["D2"].clone());
            let w = [(s6, "e00,0"), (s6, "0e0,0"), (s6, "00e,0")];
            let mut plus = w.to_vec();
            plus.push((h, "000,1"));
            let mut minus = w.to_vec();
            minus.push((-h, "000,1"));
            kets.insert("E3".into(), ket(space, &plus)?);
            kets.insert("E4".into(), ket(space, &minus)?);
        }
    }

    let qubits: Vec<StateVector> =
        QUBIT_LABELS.iter().map(|l| StateVector::from_label(space, &lab(l))).collect::<Result<_>>()?;
    let terms: Vec<(f64, &StateVector)> = qubits.iter().map(|k| (0.125, k)).collect();
    let fully_mixed = DensityMatrix::mixture(&terms)?;
    Ok(NamedStates { kets, fully_mixed })
}

/// Named states of `space`. On reduced spaces only the states lying wholly
/// inside the subspace are returned.
pub fn named_states(space: &SpaceSpec) -> Result<NamedStates> {
    if !space.is_reduced() {
        return product_states(space);
    }
    let parent = product_states(space.product_space())?;
    let mut kets = BTreeMap::new();
    for (name, k) in parent.kets {
        let r = k.restrict(space)?;
        if (r.norm() - 1.0).abs() < 1e-12 {
            kets.insert(name, r);
        }
    }
    let fully_mixed = parent.fully_mixed.restrict(space)?;
    if (fully_mixed.trace().re - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidSpace("reduced space does not contain the qubit manifold".into()));
    }
    Ok(NamedStates { kets, fully_mixed })
}
