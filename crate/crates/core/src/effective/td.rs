use crate::error::{Error, Result};
use crate::hilbert::{SpaceSpec, SparseOperator};
use crate::C64;

/// One rotating contribution `amplitude * e^{i frequency t} * op + H.c.`.
#[derive(Clone, Debug)]
pub struct RotatingTerm {
    pub op: SparseOperator,
    pub amplitude: C64,
    pub frequency: f64,
}

/// `H(t) = H_static + sum_k (a_k e^{i w_k t} O_k + H.c.)`.
///
/// Hermitian at every `t` by construction, given a Hermitian static part.
#[derive(Clone, Debug)]
pub struct TimeDependentHamiltonian {
    space: SpaceSpec,
    static_part: SparseOperator,
    terms: Vec<RotatingTerm>,
}

impl TimeDependentHamiltonian {
    pub fn new(static_part: SparseOperator, terms: Vec<RotatingTerm>) -> Result<Self> {
        let err = static_part.hermiticity_error();
        if err > 1e-12 {
            return Err(Error::NotHermitian(err));
        }
        if terms.iter().any(|t| t.op.space() != static_part.space()) {
            return Err(Error::SpaceMismatch);
        }
        Ok(Self { space: static_part.space().clone(), static_part, terms })
    }

    pub fn space(&self) -> &SpaceSpec {
        &self.space
    }

    pub fn static_part(&self) -> &SparseOperator {
        &self.static_part
    }

    pub fn terms(&self) -> &[RotatingTerm] {
        &self.terms
    }

    /// `H(t)` as a single sparse operator.
    pub fn eval(&self, t: f64) -> SparseOperator {
        let mut h = self.static_part.clone();
        for term in &self.terms {
            let a = term.amplitude * C64::from_polar(1.0, term.frequency * t);
            let x = term.op.scale(a);
            h = h.plus(&x).and_then(|h| h.plus(&x.dagger())).expect("terms share the space");
        }
        h
    }

    /// Appends rotating contributions.
    pub fn with_terms(mut self, terms: Vec<RotatingTerm>) -> Result<Self> {
        if terms.iter().any(|t| t.op.space() != &self.space) {
            return Err(Error::SpaceMismatch);
        }
        self.terms.extend(terms);
        Ok(self)
    }

    /// Adds a static Hermitian contribution.
    pub fn with_static(mut self, extra: &SparseOperator) -> Result<Self> {
        self.static_part = self.static_part.plus(extra)?;
        let err = self.static_part.hermiticity_error();
        if err > 1e-12 {
            return Err(Error::NotHermitian(err));
        }
        Ok(self)
    }
}
