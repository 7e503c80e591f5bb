use num_traits::Signed;

use super::{ActionError, EndoAction};
use crate::exact_linalg::rational::ln_abs;
use crate::exact_linalg::{growth_order, spectral_radius, BigRational, SpectralInterval};
use crate::fit::tail_slope;

/// Largest tail-fit residual, in log units, for which the sequence route is
/// reported as reliable.
pub const SEQ_RESIDUAL_LIMIT: f64 = 1e-2;

/// Dynamical degree read off the growth of `∫ (f^n)^* c1(L)^q ∪ c1(L)^{d-q}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SequenceEstimate {
    pub log_value: f64,
    pub error_bar: f64,
    pub max_residual: f64,
    pub reliable: bool,
}

impl SequenceEstimate {
    pub fn value(&self) -> f64 {
        self.log_value.exp()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DynamicalDegree {
    pub codim: usize,
    pub eigen_route: SpectralInterval,
    pub seq_route: SequenceEstimate,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeEntry {
    pub codim: usize,
    pub eigen_route: SpectralInterval,
    pub seq_route: SequenceEstimate,
    pub multiplicity: usize,
}

impl DegreeEntry {
    /// `|log eigen_route - log seq_route|`, using the interval midpoint.
    pub fn route_gap(&self) -> f64 {
        (self.eigen_route.ln_midpoint() - self.seq_route.log_value).abs()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DegreeReport {
    pub n_max: u32,
    pub entries: Vec<DegreeEntry>,
}

impl DegreeReport {
    /// `max_q r_q` as an interval.
    pub fn max_radius(&self) -> SpectralInterval {
        self.entries
            .iter()
            .map(|e| e.eigen_route.clone())
            .reduce(|a, b| a.max(&b))
            .expect("at least codimension 0")
    }

    pub fn log_max_seq(&self) -> f64 {
        self.entries
            .iter()
            .map(|e| e.seq_route.log_value)
            .fold(f64::NEG_INFINITY, f64::max)
    }
}

impl EndoAction {
    fn check_codim(&self, q: usize) -> Result<(), ActionError> {
        if q > self.model().dim() {
            return Err(ActionError::CodimOutOfRange {
                codim: q,
                dim: self.model().dim(),
            });
        }
        Ok(())
    }

    /// `∫ (f^*)^n (c1L^q) ∪ c1L^{d-q}` for `n = 0..=n_max`.
    pub fn intersection_terms(&self, q: usize, n_max: u32) -> Result<Vec<BigRational>, ActionError> {
        self.check_codim(q)?;
        let model = self.model();
        let d = model.dim();
        let ranks = model.ranks();
        let lq = model.power_class(model.c1l(), q)?;
        let complement = model.power_class(model.c1l(), d - q)?;
        let weights: Vec<BigRational> = (0..ranks[q])
            .map(|i| model.integrate(&model.cup(&model.basis(q, i), &complement)?))
            .collect::<Result<_, _>>()?;
        let pullback = self.pullback(q)?;
        let mut v = lq.part(q).to_vec();
        let mut out = Vec::with_capacity(n_max as usize + 1);
        for n in 0..=n_max {
            if n > 0 {
                v = pullback.mul_vec(&v)?;
            }
            out.push(v.iter().zip(&weights).map(|(a, b)| a * b).sum());
        }
        Ok(out)
    }

    pub fn intersection_sequence(&self, q: usize, n: u32) -> Result<BigRational, ActionError> {
        Ok(self.intersection_terms(q, n)?.pop().expect("n+1 terms"))
    }

    pub fn dynamical_degree(
        &self,
        q: usize,
        tol: &BigRational,
        n_max: u32,
    ) -> Result<DynamicalDegree, ActionError> {
        self.check_codim(q)?;
        let eigen_route = spectral_radius(self.pullback(q)?, tol)?;
        let terms = self.intersection_terms(q, n_max)?;
        let mut logs = Vec::with_capacity(terms.len());
        for (n, a) in terms.iter().enumerate().skip(1) {
            if !a.is_positive() {
                return Err(ActionError::NonPositiveIntersection { codim: q, n: n as u32 });
            }
            logs.push((n as u32, ln_abs(a)));
        }
        let fit = tail_slope(&logs).ok_or(ActionError::WindowTooShort { n_max })?;
        let seq_route = SequenceEstimate {
            log_value: fit.slope,
            error_bar: fit.error_bar,
            max_residual: fit.max_residual,
            reliable: fit.max_residual <= SEQ_RESIDUAL_LIMIT,
        };
        Ok(DynamicalDegree {
            codim: q,
            eigen_route,
            seq_route,
        })
    }

    /// Size `l_q` of the largest Jordan block of `f^*|H^{q,q}` at the spectral radius.
    pub fn multiplicity(&self, q: usize, n_max: u32) -> Result<usize, ActionError> {
        self.check_codim(q)?;
        let tol = crate::exact_linalg::default_tolerance();
        Ok(growth_order(self.pullback(q)?, &tol, n_max)?.multiplicity)
    }

    pub fn degree_report(&self, tol: &BigRational, n_max: u32) -> Result<DegreeReport, ActionError> {
        let entries = (0..=self.model().dim())
            .map(|q| {
                let dd = self.dynamical_degree(q, tol, n_max)?;
                Ok(DegreeEntry {
                    codim: q,
                    eigen_route: dd.eigen_route,
                    seq_route: dd.seq_route,
                    multiplicity: self.multiplicity(q, n_max)?,
                })
            })
            .collect::<Result<_, ActionError>>()?;
        Ok(DegreeReport { n_max, entries })
    }
}

