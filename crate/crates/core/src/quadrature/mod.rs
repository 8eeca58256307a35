//! Adaptive Gauss–Kronrod quadrature, principal-value cells and lattices,
//! and oscillatory tails.

mod accel;
mod gk;
mod oscillatory;
mod pv;

use serde::{Deserialize, Serialize};

use crate::{Error, Real, Result};

pub use accel::{iterated_average, tail_window, IteratedAverager};
pub use gk::{integrate_adaptive, integrate_adaptive_breaks, integrate_semi_infinite};
pub use oscillatory::{harmonic_zeros, integrate_oscillatory_tail};
pub use pv::{integrate_folded, integrate_pv_cell, integrate_pv_line, integrate_pv_line_about};

/// Distance below which removable points and folded cells switch to stored
/// or extrapolated limit values.
pub const REMOVABLE_RADIUS: f64 = 1e-8;

/// Knobs shared by all integrators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig<T> {
    pub tol_abs: T,
    pub tol_rel: T,
    pub max_subdivisions: usize,
    /// Half-width of the directly integrated core around the kernel centre.
    /// `None` selects `50 * max(1, x)`.
    pub tail_t: Option<T>,
    /// Half-width of each principal-value cell as a fraction of the pole
    /// separation, in `(0, 1/2)`.
    pub pv_pair_radius_fraction: T,
    /// Order of the iterated averaging applied to oscillatory tails.
    pub accel_depth: usize,
    /// Width of one averaging stage for lattice tails. `None` selects
    /// twice the core half-width.
    pub tail_window: Option<T>,
}

impl<T: Real> Default for QuadConfig<T> {
    fn default() -> Self {
        Self {
            tol_abs: T::lit(1e-10),
            tol_rel: T::lit(1e-9),
            max_subdivisions: 10_000,
            tail_t: None,
            pv_pair_radius_fraction: T::lit(0.25),
            accel_depth: 8,
            tail_window: None,
        }
    }
}

impl<T: Real> QuadConfig<T> {
    pub fn validate(&self) -> Result<()> {
        if !(self.tol_abs > T::zero()) || !(self.tol_rel > T::zero()) {
            return Err(Error::Config("tolerances must be positive".into()));
        }
        if self.max_subdivisions < 1 {
            return Err(Error::Config("max_subdivisions must be at least 1".into()));
        }
        let f = self.pv_pair_radius_fraction;
        if !(f > T::zero() && f < T::lit(0.5)) {
            return Err(Error::Config(
                "pv_pair_radius_fraction must lie in (0, 1/2)".into(),
            ));
        }
        if self.accel_depth == 0 || self.accel_depth > 30 {
            return Err(Error::Config("accel_depth must lie in 1..=30".into()));
        }
        if let Some(t) = self.tail_t {
            if !(t > T::zero()) {
                return Err(Error::Config("tail_t must be positive".into()));
            }
        }
        if let Some(w) = self.tail_window {
            if !(w > T::zero()) {
                return Err(Error::Config("tail_window must be positive".into()));
            }
        }
        Ok(())
    }

    /// Core half-width for a kernel of abscissa `x`.
    pub fn core_half_width(&self, x: T) -> T {
        self.tail_t
            .unwrap_or_else(|| T::lit(50.0) * x.max(T::one()))
    }

    pub fn window_width(&self, x: T) -> T {
        self.tail_window
            .unwrap_or_else(|| T::lit(2.0) * self.core_half_width(x))
    }

    /// Error target for a value of magnitude `|value|`.
    pub fn target(&self, value: T) -> T {
        self.tol_abs.max(self.tol_rel * value.abs())
    }

    /// Same configuration with both tolerances scaled by `factor`.
    pub fn tightened(&self, factor: T) -> Self {
        Self {
            tol_abs: self.tol_abs * factor,
            tol_rel: self.tol_rel * factor,
            ..*self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadStatus {
    Converged,
    MaxSubdivisionsHit,
    TailNotConverged,
}

impl QuadStatus {
    /// Worst of two statuses, with tail failures ranked above budget
    /// exhaustion.
    pub fn worst(self, other: Self) -> Self {
        use QuadStatus::*;
        match (self, other) {
            (TailNotConverged, _) | (_, TailNotConverged) => TailNotConverged,
            (MaxSubdivisionsHit, _) | (_, MaxSubdivisionsHit) => MaxSubdivisionsHit,
            _ => Converged,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            QuadStatus::Converged => "converged",
            QuadStatus::MaxSubdivisionsHit => "max_subdivisions_hit",
            QuadStatus::TailNotConverged => "tail_not_converged",
        }
    }
}

impl std::fmt::Display for QuadStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadResult<T> {
    pub value: T,
    pub err_estimate: T,
    pub n_evals: usize,
    pub status: QuadStatus,
}

impl<T: Real> QuadResult<T> {
    pub fn zero() -> Self {
        Self {
            value: T::zero(),
            err_estimate: T::zero(),
            n_evals: 0,
            status: QuadStatus::Converged,
        }
    }

    pub fn is_converged(&self) -> bool {
        self.status == QuadStatus::Converged
    }

    /// Sum of two partial results; statuses combine pessimistically.
    pub fn combine(self, other: Self) -> Self {
        Self {
            value: self.value + other.value,
            err_estimate: self.err_estimate + other.err_estimate,
            n_evals: self.n_evals + other.n_evals,
            status: self.status.worst(other.status),
        }
    }

    pub fn scaled(self, factor: T) -> Self {
        Self {
            value: self.value * factor,
            err_estimate: self.err_estimate * factor.abs(),
            ..self
        }
    }

    /// Re-derives the status of an accumulated result against `cfg`. Only a
    /// converged result can be demoted, and it is demoted to `failure`.
    pub fn checked(mut self, cfg: &QuadConfig<T>, failure: QuadStatus) -> Self {
        if self.status == QuadStatus::Converged && !(self.err_estimate <= cfg.target(self.value)) {
            self.status = failure;
        }
        self
    }
}

impl<T: Real> std::iter::Sum for QuadResult<T> {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Self::zero(), Self::combine)
    }
}
