//! Poisson kernel of the right half plane and numerical harmonic extension
//! of boundary data given on the imaginary axis.

use std::fmt;
use std::sync::Arc;

use crate::lattice::PoleLattice;
use crate::quadrature::{
    harmonic_zeros, integrate_adaptive_breaks, integrate_oscillatory_tail, integrate_pv_line_about,
    integrate_semi_infinite, QuadConfig, QuadResult, QuadStatus, REMOVABLE_RADIUS,
};
use crate::{Error, Real, Result};

/// Point `x + iy` with `x > 0`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HalfPlanePoint<T> {
    pub x: T,
    pub y: T,
}

impl<T: Real> HalfPlanePoint<T> {
    pub fn new(x: T, y: T) -> Result<Self> {
        if !(x > T::zero()) || !x.is_finite() || !y.is_finite() {
            return Err(Error::Domain(format!(
                "evaluation point needs finite x > 0, got x = {x}, y = {y}"
            )));
        }
        Ok(Self { x, y })
    }
}

type RealFn<T> = Arc<dyn Fn(T) -> T + Send + Sync>;
type LocalFn<T> = Arc<dyn Fn(i64, T) -> T + Send + Sync>;

/// One summand of the boundary data far from the kernel centre.
#[derive(Clone)]
pub enum TailPart<T> {
    /// `f` whose sign changes exactly at the zeros of `cos(omega t + phase)`.
    Oscillating { f: RealFn<T>, omega: T, phase: T },
    /// Non-oscillatory summand integrated over the mapped half line.
    Smooth { f: RealFn<T> },
}

impl<T: Real> TailPart<T> {
    pub fn oscillating(f: impl Fn(T) -> T + Send + Sync + 'static, omega: T, phase: T) -> Self {
        TailPart::Oscillating {
            f: Arc::new(f),
            omega,
            phase,
        }
    }

    pub fn smooth(f: impl Fn(T) -> T + Send + Sync + 'static) -> Self {
        TailPart::Smooth { f: Arc::new(f) }
    }
}

/// How the data behave as `|t| -> ∞`, which decides how the infinite line
/// is closed off.
#[derive(Clone)]
pub enum TailModel<T> {
    /// `|g| <= sup` everywhere; the line is truncated where the kernel mass
    /// outside the window times `sup` falls below a tenth of the tolerance.
    Bounded(T),
    /// `|g(t)| <= coeff / |t|^power` for `|t| >= 1`; truncated the same way.
    Decaying { coeff: T, power: T },
    /// Beyond the core window the data equal the sum of these parts.
    Parts(Vec<TailPart<T>>),
}

/// Boundary values `Re f(it)` or `Im f(it)` of a half-plane function.
#[derive(Clone)]
pub struct BoundaryFunction<T> {
    eval: RealFn<T>,
    removable: Vec<(T, T)>,
    singular: Option<PoleLattice<T>>,
    local: Option<LocalFn<T>>,
    tail: TailModel<T>,
}

impl<T: Real> fmt::Debug for BoundaryFunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BoundaryFunction")
            .field("removable", &self.removable)
            .field("singular", &self.singular)
            .field("local", &self.local.is_some())
            .finish_non_exhaustive()
    }
}

impl<T: Real> BoundaryFunction<T> {
    pub fn new(eval: impl Fn(T) -> T + Send + Sync + 'static, tail: TailModel<T>) -> Self {
        Self {
            eval: Arc::new(eval),
            removable: Vec::new(),
            singular: None,
            local: None,
            tail,
        }
    }

    /// Registers the limit value at a point where the defining expression is 0/0.
    pub fn with_removable(mut self, t0: T, limit: T) -> Self {
        self.removable.push((t0, limit));
        self
    }

    pub fn with_poles(mut self, lattice: PoleLattice<T>) -> Self {
        self.singular = Some(lattice);
        self
    }

    /// Accurate evaluation near pole `k`: `local(k, s) == g(c_k + s)`, with
    /// the cancellation in the denominator done analytically.
    pub fn with_local(mut self, local: impl Fn(i64, T) -> T + Send + Sync + 'static) -> Self {
        self.local = Some(Arc::new(local));
        self
    }

    pub fn eval(&self, t: T) -> T {
        let radius = T::lit(REMOVABLE_RADIUS);
        for &(t0, limit) in &self.removable {
            if (t - t0).abs() < radius {
                return limit;
            }
        }
        (self.eval)(t)
    }

    /// `g(c_k + s)`, through the local evaluator when one is present.
    pub fn eval_near_pole(&self, k: i64, s: T) -> T {
        match (&self.local, &self.singular) {
            (Some(local), _) => local(k, s),
            (None, Some(lat)) => self.eval(lat.ordinate(k) + s),
            (None, None) => self.eval(s),
        }
    }

    pub fn singular_points(&self) -> Option<&PoleLattice<T>> {
        self.singular.as_ref()
    }

    pub fn removable_points(&self) -> &[(T, T)] {
        &self.removable
    }

    pub fn tail(&self) -> &TailModel<T> {
        &self.tail
    }
}

/// `(1/π) x / (x² + (y − t)²)`.
pub fn poisson_kernel<T: Real>(p: HalfPlanePoint<T>, t: T) -> Result<T> {
    if !(p.x > T::zero()) {
        return Err(Error::Domain(format!("kernel needs x > 0, got {}", p.x)));
    }
    Ok(kernel_value(p.x, p.y, t))
}

#[inline]
pub(crate) fn kernel_value<T: Real>(x: T, y: T, t: T) -> T {
    let d = y - t;
    x / (x * x + d * d) * T::FRAC_1_PI()
}

/// Kernel mass outside `[y − T, y + T]`: `1 − (2/π) arctan(T/x)`.
pub fn kernel_tail_mass<T: Real>(p: HalfPlanePoint<T>, half_width: T) -> Result<T> {
    if !(p.x > T::zero()) {
        return Err(Error::Domain(format!("kernel needs x > 0, got {}", p.x)));
    }
    if !(half_width > T::zero()) {
        return Err(Error::Domain(format!(
            "tail half-width must be positive, got {half_width}"
        )));
    }
    // 1 - (2/π) atan(T/x) = (2/π) atan(x/T), which keeps precision for large T
    Ok(T::FRAC_2_PI() * (p.x / half_width).atan())
}

/// Break points `y ± x·10^j` out to the half-width, plus the centre.
fn log_breaks<T: Real>(p: HalfPlanePoint<T>, half_width: T) -> Vec<T> {
    let mut offsets = Vec::new();
    let mut s = p.x.min(half_width);
    while s < half_width {
        offsets.push(s);
        s = s * T::lit(10.0);
    }
    offsets.push(half_width);
    let mut pts: Vec<T> = offsets.iter().rev().map(|&o| p.y - o).collect();
    pts.push(p.y);
    pts.extend(offsets.iter().map(|&o| p.y + o));
    pts
}

fn truncation_width<T: Real>(
    p: HalfPlanePoint<T>,
    cfg: &QuadConfig<T>,
    data_bound: impl Fn(T) -> T,
) -> Result<T> {
    let target = cfg.tol_abs * T::lit(0.1);
    let mut w = cfg.core_half_width(p.x);
    for _ in 0..200 {
        if kernel_tail_mass(p, w)? * data_bound(w) < target {
            return Ok(w);
        }
        w = w * T::lit(2.0);
    }
    Err(Error::Domain(
        "no truncation window meets the tolerance".into(),
    ))
}

/// `(1/π) ∫ g(t) x / (x² + (y − t)²) dt` over the whole line for data
/// without poles on the line.
pub fn harmonic_extension<T: Real>(
    g: &BoundaryFunction<T>,
    p: HalfPlanePoint<T>,
    cfg: &QuadConfig<T>,
) -> Result<QuadResult<T>> {
    cfg.validate()?;
    let p = HalfPlanePoint::new(p.x, p.y)?;
    if g.singular_points().is_some() {
        return Err(Error::Domain(
            "boundary data has poles on the line; use the principal-value integrator".into(),
        ));
    }
    let (x, y) = (p.x, p.y);
    let integrand = |t: T| g.eval(t) * kernel_value(x, y, t);

    match g.tail() {
        TailModel::Bounded(sup) => {
            let sup = *sup;
            let w = truncation_width(p, cfg, |_| sup)?;
            integrate_adaptive_breaks(&integrand, &log_breaks(p, w), cfg)
        }
        TailModel::Decaying { coeff, power } => {
            let (coeff, power) = (*coeff, *power);
            let w = truncation_width(p, cfg, |w| {
                let reach = (w - y.abs()).max(T::one());
                coeff / reach.powf(power)
            })?;
            integrate_adaptive_breaks(&integrand, &log_breaks(p, w), cfg)
        }
        TailModel::Parts(parts) => {
            let w = cfg.core_half_width(x);
            let panels = 64;
            let breaks: Vec<T> = (0..=panels)
                .map(|i| {
                    y - w
                        + T::lit(2.0) * w * T::from_usize(i).expect("index")
                            / T::from_usize(panels).expect("index")
                })
                .collect();
            let core = integrate_adaptive_breaks(&integrand, &breaks, cfg)?;
            let tail_cfg = cfg.tightened(T::lit(0.25));
            let mut total = core;
            for part in parts {
                let (right, left) = match part {
                    TailPart::Oscillating { f, omega, phase } => {
                        let right = integrate_oscillatory_tail(
                            &|t: T| f(t) * kernel_value(x, y, t),
                            y + w,
                            harmonic_zeros(*omega, *phase, y + w),
                            &tail_cfg,
                        )?;
                        let left = integrate_oscillatory_tail(
                            &|s: T| f(-s) * kernel_value(x, y, -s),
                            w - y,
                            harmonic_zeros(*omega, -*phase, w - y),
                            &tail_cfg,
                        )?;
                        (right, left)
                    }
                    TailPart::Smooth { f } => {
                        let right = integrate_semi_infinite(
                            &|t: T| f(t) * kernel_value(x, y, t),
                            y + w,
                            &tail_cfg,
                        )?;
                        let left = integrate_semi_infinite(
                            &|s: T| f(-s) * kernel_value(x, y, -s),
                            w - y,
                            &tail_cfg,
                        )?;
                        (right, left)
                    }
                };
                total = total.combine(right).combine(left);
            }
            Ok(total.checked(cfg, QuadStatus::TailNotConverged))
        }
    }
}

/// Principal-value harmonic extension `(1/π) P∫ g(t) x / (x² + (y − t)²) dt`
/// for data with a pole lattice on the line.
pub fn pv_harmonic_extension<T: Real>(
    g: &BoundaryFunction<T>,
    p: HalfPlanePoint<T>,
    cfg: &QuadConfig<T>,
) -> Result<QuadResult<T>> {
    let p = HalfPlanePoint::new(p.x, p.y)?;
    let (x, y) = (p.x, p.y);
    integrate_pv_line_about(g, &|t: T| kernel_value(x, y, t), y, x, cfg)
}
