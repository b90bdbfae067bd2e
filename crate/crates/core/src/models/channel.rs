use super::validate::{ValidationReport, ViolationKind};
use crate::error::{Error, Result};
use crate::linalg::ComplexMatrix;

/// Trace-preservation tolerance on `Σ K†K = I`.
pub const TP_TOL: f64 = 1e-12;

/// CPTP map in Kraus form, `ρ ↦ Σ K ρ K†`.
#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    dim: usize,
    kraus: Vec<ComplexMatrix>,
}

impl Channel {
    pub fn new(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let ch = Self::new_unchecked(kraus)?;
        let residual = ch.completeness_residual();
        if residual > TP_TOL {
            return Err(Error::Invalid(format!(
                "Kraus operators are not trace preserving (residual {residual:.3e})"
            )));
        }
        Ok(ch)
    }

    /// Checks shapes only; trace preservation is left to [`Channel::validate_into`].
    pub fn new_unchecked(kraus: Vec<ComplexMatrix>) -> Result<Self> {
        let dim = kraus
            .first()
            .ok_or_else(|| Error::Invalid("channel without Kraus operators".into()))?
            .rows();
        if let Some(k) = kraus.iter().find(|k| k.dims() != (dim, dim)) {
            return Err(Error::Dimension(format!(
                "Kraus operator {}x{} in a channel on C^{dim}",
                k.rows(),
                k.cols()
            )));
        }
        Ok(Self { dim, kraus })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            dim: n,
            kraus: vec![ComplexMatrix::identity(n)],
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kraus(&self) -> &[ComplexMatrix] {
        &self.kraus
    }

    /// `max |Σ K†K − I|`.
    pub fn completeness_residual(&self) -> f64 {
        let mut sum = ComplexMatrix::zeros(self.dim, self.dim);
        for k in &self.kraus {
            sum = sum.try_add(&k.adjoint().matmul(k).unwrap()).unwrap();
        }
        sum.max_abs_diff(&ComplexMatrix::identity(self.dim)).unwrap()
    }

    /// `Σ K ρ K†`.
    pub fn apply(&self, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
        if rho.dims() != (self.dim, self.dim) {
            return Err(Error::Dimension(format!(
                "channel on C^{} applied to a {}x{} operator",
                self.dim,
                rho.rows(),
                rho.cols()
            )));
        }
        let mut out = ComplexMatrix::zeros(self.dim, self.dim);
        for k in &self.kraus {
            out = out.try_add(&k.sandwich(rho)?)?;
        }
        Ok(out)
    }

    /// `other ∘ self`: apply `self` first.
    pub fn then(&self, other: &Channel) -> Result<Channel> {
        if self.dim != other.dim {
            return Err(Error::Dimension("composing channels of different dimension".into()));
        }
        let kraus = other
            .kraus
            .iter()
            .flat_map(|b| self.kraus.iter().map(move |a| b.matmul(a).unwrap()))
            .collect();
        Ok(Channel { dim: self.dim, kraus })
    }

    pub(crate) fn validate_into(&self, report: &mut ValidationReport, location: &str) {
        let residual = self.completeness_residual();
        if residual > TP_TOL {
            report.push(ViolationKind::TracePreservation, location, residual);
        }
    }
}

/// Free-standing form of [`Channel::apply`].
pub fn apply_channel(channel: &Channel, rho: &ComplexMatrix) -> Result<ComplexMatrix> {
    channel.apply(rho)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::complex::{pauli, real};
    use crate::linalg::is_density;
    use crate::random::{random_channel, random_density};
    use rand::SeedableRng;
    use std::f64::consts::FRAC_1_SQRT_2;

    #[test]
    fn identity_channel_is_inert() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(1);
        let rho = random_density(&mut rng, 3);
        let out = Channel::identity(3).apply(&rho).unwrap();
        assert!(out.max_abs_diff(&rho).unwrap() < 1e-15);
    }

    #[test]
    fn dephasing_kills_coherence() {
        let ch = Channel::new(vec![
            ComplexMatrix::identity(2).scale_real(FRAC_1_SQRT_2),
            pauli::z().scale_real(FRAC_1_SQRT_2),
        ])
        .unwrap();
        // |+⟩⟨+| = (I + X)/2
        let plus = ComplexMatrix::identity(2).try_add(&pauli::x()).unwrap().scale_real(0.5);
        let out = ch.apply(&plus).unwrap();
        let mixed = ComplexMatrix::identity(2).scale_real(0.5);
        assert!(out.max_abs_diff(&mixed).unwrap() < 1e-15);
    }

    #[test]
    fn random_channels_preserve_trace() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(2);
        for n in 2..=4 {
            for r in 1..=3 {
                let ch = random_channel(&mut rng, n, r);
                assert!(ch.completeness_residual() < 1e-12);
                let rho = random_density(&mut rng, n);
                let out = ch.apply(&rho).unwrap();
                assert!((out.trace() - real(1.0)).norm() < 1e-10);
                assert!(is_density(&out, 1e-10));
            }
        }
    }

    #[test]
    fn rejects_incomplete_kraus_sets() {
        let half = ComplexMatrix::identity(2).scale_real(0.5);
        assert!(Channel::new(vec![half.clone()]).is_err());
        let ch = Channel::new_unchecked(vec![half]).unwrap();
        let mut report = ValidationReport::default();
        ch.validate_into(&mut report, "symbol a");
        assert_eq!(report.violations[0].kind, ViolationKind::TracePreservation);
        assert!((report.violations[0].residual - 0.75).abs() < 1e-15);
        assert!(Channel::new(vec![]).is_err());
        assert!(Channel::new(vec![ComplexMatrix::identity(2), ComplexMatrix::identity(3)]).is_err());
    }

    #[test]
    fn within_tolerance_passes() {
        let mut k = ComplexMatrix::identity(2);
        k[(0, 0)] = real(1.0 + 5e-14);
        let ch = Channel::new(vec![k]).unwrap();
        assert!(ch.completeness_residual() < 1e-12);
    }

    #[test]
    fn dimension_mismatch() {
        let rho = ComplexMatrix::identity(3).scale_real(1.0 / 3.0);
        assert!(apply_channel(&Channel::identity(2), &rho).is_err());
    }
}
