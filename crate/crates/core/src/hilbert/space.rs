use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::CMat;
use crate::C64;

/// Single-atom level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Level {
    /// Qubit state |0>.
    G0,
    /// Qubit state |1>.
    G1,
    /// Short-lived excited state |e>.
    E,
    /// Rydberg state |r>.
    R,
}

impl Level {
    pub fn symbol(self) -> char {
        match self {
            Level::G0 => '0',
            Level::G1 => '1',
            Level::E => 'e',
            Level::R => 'r',
        }
    }

    pub fn from_symbol(c: char) -> Option<Level> {
        match c {
            '0' => Some(Level::G0),
            '1' => Some(Level::G1),
            'e' => Some(Level::E),
            'r' => Some(Level::R),
            _ => None,
        }
    }

    pub const ALL: [Level; 4] = [Level::G0, Level::G1, Level::E, Level::R];
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "|{}>", self.symbol())
    }
}

#[derive(Debug, PartialEq)]
struct Reduction {
    parent: SpaceSpec,
    labels: Vec<String>,
    /// Columns are the retained basis vectors in parent coordinates.
    isometry: CMat,
}

#[derive(Debug, PartialEq)]
struct Inner {
    n_atoms: usize,
    levels: Vec<Level>,
    cutoff: Option<usize>,
    dim: usize,
    reduction: Option<Reduction>,
}

/// A composite Hilbert space of identical multilevel atoms and an optional
/// truncated cavity mode.
///
/// Basis ordering is atom 1 ⊗ atom 2 ⊗ ... ⊗ cavity: atom levels run in the
/// declared order and the photon number ascends fastest. Atom sites are
/// addressed 0-based.
///
/// A space may also be *reduced*: spanned by an orthonormal set of vectors of
/// a product parent space, each carrying a label.
#[derive(Clone, Debug)]
pub struct SpaceSpec(Arc<Inner>);

impl PartialEq for SpaceSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

/// Convenience wrapper for [`SpaceSpec::new`].
pub fn build_space(n_atoms: usize, levels: &[Level], cutoff: Option<usize>) -> Result<SpaceSpec> {
    SpaceSpec::new(n_atoms, levels, cutoff)
}

impl SpaceSpec {
    /// `cutoff` is the largest retained photon number; `None` means no cavity.
    pub fn new(n_atoms: usize, levels: &[Level], cutoff: Option<usize>) -> Result<Self> {
        if n_atoms == 0 {
            return Err(Error::InvalidSpace("at least one atom is required".into()));
        }
        if levels.is_empty() {
            return Err(Error::InvalidSpace("level set is empty".into()));
        }
        for (i, l) in levels.iter().enumerate() {
            if levels[..i].contains(l) {
                return Err(Error::InvalidSpace(format!("level {l} listed twice")));
            }
        }
        let cav = cutoff.map_or(1, |c| c + 1);
        let dim = levels
            .len()
            .checked_pow(n_atoms as u32)
            .and_then(|d| d.checked_mul(cav))
            .ok_or_else(|| Error::InvalidSpace("dimension overflows".into()))?;
        Ok(Self(Arc::new(Inner { n_atoms, levels: levels.to_vec(), cutoff, dim, reduction: None })))
    }

    pub fn dim(&self) -> usize {
        self.0.dim
    }

    pub fn n_atoms(&self) -> usize {
        self.0.n_atoms
    }

    pub fn levels(&self) -> &[Level] {
        &self.0.levels
    }

    pub fn local_dim(&self) -> usize {
        self.0.levels.len()
    }

    pub fn cutoff(&self) -> Option<usize> {
        self.0.cutoff
    }

    pub fn has_cavity(&self) -> bool {
        self.0.cutoff.is_some()
    }

    /// Number of Fock states, 1 when there is no cavity.
    pub fn cavity_dim(&self) -> usize {
        self.0.cutoff.map_or(1, |c| c + 1)
    }

    pub fn level_index(&self, level: Level) -> Option<usize> {
        self.0.levels.iter().position(|&l| l == level)
    }

    pub fn has_level(&self, level: Level) -> bool {
        self.level_index(level).is_some()
    }

    pub fn require_levels(&self, levels: &[Level]) -> Result<()> {
        let base = self.product_space();
        for &l in levels {
            if !base.has_level(l) {
                return Err(Error::MissingLevel(l.symbol().to_string()));
            }
        }
        Ok(())
    }

    pub fn is_reduced(&self) -> bool {
        self.0.reduction.is_some()
    }

    /// The parent product space for reduced spaces, `self` otherwise.
    pub fn product_space(&self) -> &SpaceSpec {
        match &self.0.reduction {
            Some(r) => &r.parent,
            None => self,
        }
    }

    /// Parent-by-reduced matrix whose columns span a reduced space.
    pub fn isometry(&self) -> Option<&CMat> {
        self.0.reduction.as_ref().map(|r| &r.isometry)
    }

    /// Stride of `site` in the flat index; the cavity is site `n_atoms`.
    pub(crate) fn stride(&self, site: usize) -> usize {
        if site == self.0.n_atoms {
            1
        } else {
            self.local_dim().pow((self.0.n_atoms - 1 - site) as u32) * self.cavity_dim()
        }
    }

    /// Flat index of a product basis state.
    pub fn index_of(&self, atoms: &[Level], photon: usize) -> Result<usize> {
        if self.is_reduced() {
            return Err(Error::InvalidLabel("reduced spaces are addressed by label".into()));
        }
        if atoms.len() != self.0.n_atoms {
            return Err(Error::InvalidLabel(format!(
                "expected {} atom labels, got {}",
                self.0.n_atoms,
                atoms.len()
            )));
        }
        if photon >= self.cavity_dim() {
            return Err(Error::InvalidLabel(format!("photon number {photon} exceeds the cutoff")));
        }
        let mut idx = 0;
        for (s, l) in atoms.iter().enumerate() {
            let li = self.level_index(*l).ok_or_else(|| Error::MissingLevel(l.symbol().to_string()))?;
            idx += li * self.stride(s);
        }
        Ok(idx + photon)
    }

    /// Inverse of [`SpaceSpec::index_of`] on product spaces.
    pub fn decode(&self, index: usize) -> (Vec<Level>, usize) {
        let base = self.product_space();
        let cav = base.cavity_dim();
        let photon = index % cav;
        let mut rest = index / cav;
        let mut atoms = vec![Level::G0; base.0.n_atoms];
        for s in (0..base.0.n_atoms).rev() {
            atoms[s] = base.0.levels[rest % base.local_dim()];
            rest /= base.local_dim();
        }
        (atoms, photon)
    }

    /// Human-readable basis label: `"0e1"` (no cavity) or `"0e1,n"`.
    pub fn label(&self, index: usize) -> String {
        if let Some(r) = &self.0.reduction {
            return r.labels[index].clone();
        }
        let (atoms, photon) = self.decode(index);
        let mut s: String = atoms.iter().map(|l| l.symbol()).collect();
        if self.has_cavity() {
            s.push_str(&format!(",{photon}"));
        }
        s
    }

    /// Index for a label as produced by [`SpaceSpec::label`]. On product
    /// spaces with a cavity the photon suffix may be omitted (vacuum).
    pub fn index_of_label(&self, label: &str) -> Result<usize> {
        if let Some(r) = &self.0.reduction {
            return r
                .labels
                .iter()
                .position(|l| l == label)
                .ok_or_else(|| Error::InvalidLabel(label.to_string()));
        }
        let (atoms_part, photon) = match label.split_once(',') {
            Some((a, p)) => {
                let n = p.trim().parse().map_err(|_| Error::InvalidLabel(label.to_string()))?;
                (a, n)
            }
            None => (label, 0),
        };
        let atoms = atoms_part
            .trim()
            .chars()
            .map(|c| Level::from_symbol(c).ok_or_else(|| Error::InvalidLabel(label.to_string())))
            .collect::<Result<Vec<_>>>()?;
        self.index_of(&atoms, photon)
    }

    /// Builds the reduced space spanned by `basis` (orthonormal vectors of
    /// this product space, given with their labels).
    pub fn reduce(&self, basis: Vec<(String, Vec<C64>)>) -> Result<SpaceSpec> {
        if self.is_reduced() {
            return Err(Error::InvalidSpace("cannot reduce a reduced space".into()));
        }
        if basis.is_empty() {
            return Err(Error::InvalidSpace("reduced basis is empty".into()));
        }
        let n = self.dim();
        let m = basis.len();
        let mut labels = Vec::with_capacity(m);
        let mut iso = CMat::zeros(n, m);
        for (j, (label, v)) in basis.into_iter().enumerate() {
            if v.len() != n {
                return Err(Error::DimensionMismatch { expected: n, got: v.len() });
            }
            if labels.contains(&label) {
                return Err(Error::InvalidSpace(format!("duplicate label {label}")));
            }
            labels.push(label);
            for (i, x) in v.into_iter().enumerate() {
                iso[(i, j)] = x;
            }
        }
        let gram = iso.adjoint().matmul(&iso);
        if gram.sub(&CMat::identity(m)).max_abs() > 1e-10 {
            return Err(Error::InvalidSpace("reduced basis is not orthonormal".into()));
        }
        Ok(Self(Arc::new(Inner {
            n_atoms: self.0.n_atoms,
            levels: self.0.levels.clone(),
            cutoff: self.0.cutoff,
            dim: m,
            reduction: Some(Reduction { parent: self.clone(), labels, isometry: iso }),
        })))
    }
}

impl fmt::Display for SpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let levels: String = self.0.levels.iter().map(|l| l.symbol()).collect();
        let cav = self.0.cutoff.map_or("no cavity".to_string(), |c| format!("cutoff {c}"));
        match &self.0.reduction {
            Some(_) => write!(f, "reduced {}-dim subspace of {} atoms {{{levels}}}, {cav}", self.0.dim, self.0.n_atoms),
            None => write!(f, "{} atoms {{{levels}}}, {cav} (dim {})", self.0.n_atoms, self.0.dim),
        }
    }
}
