use crate::effective::TimeDependentHamiltonian;
use crate::error::{Error, Result};
use crate::hilbert::{DensityMatrix, SpaceSpec, SparseOperator};
use crate::linalg::CMat;
use crate::model::CollapseChannel;
use crate::C64;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

#[derive(Clone, Debug)]
pub enum Hamiltonian {
    Static(SparseOperator),
    TimeDependent(TimeDependentHamiltonian),
}

impl Hamiltonian {
    pub fn space(&self) -> &SpaceSpec {
        match self {
            Hamiltonian::Static(h) => h.space(),
            Hamiltonian::TimeDependent(h) => h.space(),
        }
    }

    pub fn at(&self, t: f64) -> SparseOperator {
        match self {
            Hamiltonian::Static(h) => h.clone(),
            Hamiltonian::TimeDependent(h) => h.eval(t),
        }
    }
}

/// A rotating contribution to the non-Hermitian `K(t)`, with its adjoint
/// cached.
#[derive(Clone, Debug)]
struct RotatingPart {
    op: SparseOperator,
    op_dag: SparseOperator,
    amplitude: C64,
    frequency: f64,
}

/// Master-equation generator
/// `L(X) = -i(K X - X K†) + sum_j c_j X c_j†` with
/// `K = H - (i/2) sum_j c_j† c_j` and rates folded into `c_j`.
#[derive(Clone, Debug)]
pub struct LindbladModel {
    space: SpaceSpec,
    hamiltonian: Hamiltonian,
    channels: Vec<CollapseChannel>,
    k_static: SparseOperator,
    rotating: Vec<RotatingPart>,
    /// Jump operators scaled by `sqrt(rate)`, as triplets.
    jumps: Vec<Vec<(usize, usize, C64)>>,
}

impl LindbladModel {
    pub fn new(hamiltonian: Hamiltonian, channels: Vec<CollapseChannel>) -> Result<Self> {
        let space = hamiltonian.space().clone();
        let static_h = match &hamiltonian {
            Hamiltonian::Static(h) => h.clone(),
            Hamiltonian::TimeDependent(h) => h.static_part().clone(),
        };
        let herm = static_h.hermiticity_error();
        if herm > 1e-12 * static_h.max_abs().max(1.0) {
            return Err(Error::NotHermitian(herm));
        }
        let mut k = static_h;
        let mut jumps = Vec::with_capacity(channels.len());
        for ch in &channels {
            if ch.op.space() != &space {
                return Err(Error::SpaceMismatch);
            }
            if ch.rate < 0.0 {
                return Err(Error::InvalidParameter(format!("negative rate on channel {}", ch.label)));
            }
            let cdc = ch.op.dagger().compose(&ch.op)?;
            k = k.minus(&cdc.scale(C64::new(0.0, 0.5 * ch.rate)))?;
            let s = ch.rate.sqrt();
            jumps.push(ch.op.triplets().map(|(i, j, v)| (i, j, v * s)).collect());
        }
        let rotating = match &hamiltonian {
            Hamiltonian::Static(_) => Vec::new(),
            Hamiltonian::TimeDependent(h) => h
                .terms()
                .iter()
                .map(|t| RotatingPart {
                    op: t.op.clone(),
                    op_dag: t.op.dagger(),
                    amplitude: t.amplitude,
                    frequency: t.frequency,
                })
                .collect(),
        };
        Ok(Self { space, hamiltonian, channels, k_static: k, rotating, jumps })
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    pub fn hamiltonian(&self) -> &Hamiltonian {
        &self.hamiltonian
    }

    pub fn channels(&self) -> &[CollapseChannel] {
        &self.channels
    }

    pub fn is_time_independent(&self) -> bool {
        self.rotating.is_empty()
    }

    /// Dense `K(t)`.
    pub fn k_dense(&self, t: f64) -> CMat {
        let mut k = self.k_static.to_dense();
        for r in &self.rotating {
            let a = r.amplitude * C64::from_polar(1.0, r.frequency * t);
            for (i, j, v) in r.op.triplets() {
                k[(i, j)] += a * v;
            }
            for (i, j, v) in r.op_dag.triplets() {
                k[(i, j)] += a.conj() * v;
            }
        }
        k
    }

    fn k_times(&self, t: f64, x: &[C64], out: &mut [C64]) {
        let n = self.dim();
        out.iter_mut().for_each(|v| *v = ZERO);
        let mut add = |op: &SparseOperator, scale: C64| {
            for i in 0..n {
                let (cols, vals) = op.row(i);
                let dst = &mut out[i * n..(i + 1) * n];
                for (&k, &v) in cols.iter().zip(vals) {
                    let f = v * scale;
                    let src = &x[k * n..(k + 1) * n];
                    for (d, s) in dst.iter_mut().zip(src) {
                        *d += f * s;
                    }
                }
            }
        };
        add(&self.k_static, C64::new(1.0, 0.0));
        for r in &self.rotating {
            let a = r.amplitude * C64::from_polar(1.0, r.frequency * t);
            add(&r.op, a);
            add(&r.op_dag, a.conj());
        }
    }

    fn add_jumps(&self, x: &[C64], out: &mut [C64]) {
        let n = self.dim();
        for jump in &self.jumps {
            for &(i, k, v) in jump {
                for &(j, l, w) in jump {
                    out[i * n + j] += v * w.conj() * x[k * n + l];
                }
            }
        }
    }

    /// Applies the generator at time `t` to an arbitrary row-major `n x n`
    /// matrix.
    pub fn apply(&self, t: f64, x: &[C64], out: &mut [C64]) {
        let n = self.dim();
        let mi = C64::new(0.0, -1.0);
        let mut kx = vec![ZERO; n * n];
        self.k_times(t, x, &mut kx);
        // X K† = (K X†)†.
        let mut xd = vec![ZERO; n * n];
        for i in 0..n {
            for j in 0..n {
                xd[j * n + i] = x[i * n + j].conj();
            }
        }
        let mut kxd = vec![ZERO; n * n];
        self.k_times(t, &xd, &mut kxd);
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = mi * (kx[i * n + j] - kxd[j * n + i].conj());
            }
        }
        self.add_jumps(x, out);
    }

    /// Faster variant of [`LindbladModel::apply`] valid for Hermitian `x`.
    pub fn apply_hermitian(&self, t: f64, x: &[C64], out: &mut [C64]) {
        let n = self.dim();
        let mi = C64::new(0.0, -1.0);
        let mut kx = vec![ZERO; n * n];
        self.k_times(t, x, &mut kx);
        for i in 0..n {
            for j in 0..n {
                out[i * n + j] = mi * kx[i * n + j] + (mi * kx[j * n + i]).conj();
            }
        }
        self.add_jumps(x, out);
    }

    /// Dense superoperator on row-major vectorized matrices; limited to
    /// spaces of dimension 64 or less.
    pub fn superoperator(&self, t: f64) -> Result<CMat> {
        let n = self.dim();
        if n > 64 {
            return Err(Error::InvalidParameter(format!(
                "dense superoperator requested for dimension {n} (limit 64)"
            )));
        }
        let nn = n * n;
        let mut s = CMat::zeros(nn, nn);
        let mut e = vec![ZERO; nn];
        let mut col = vec![ZERO; nn];
        for c in 0..nn {
            e[c] = C64::new(1.0, 0.0);
            self.apply(t, &e, &mut col);
            e[c] = ZERO;
            for (r, v) in col.iter().enumerate() {
                s[(r, c)] = *v;
            }
        }
        Ok(s)
    }
}

/// `d rho / dt` at time `t`.
pub fn lindblad_rhs(model: &LindbladModel, rho: &DensityMatrix, t: f64) -> Result<DensityMatrix> {
    if rho.space() != model.space() {
        return Err(Error::SpaceMismatch);
    }
    let n = model.dim();
    let mut out = vec![ZERO; n * n];
    model.apply(t, rho.matrix().as_slice(), &mut out);
    DensityMatrix::new(model.space(), CMat::from_vec(n, n, out))
}
