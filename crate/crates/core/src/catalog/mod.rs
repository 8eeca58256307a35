//! Registry of the closed-form integral identities: boundary data, parameter
//! domain, pole lattice, closed form and cross-reference metadata.

mod ordinary;
mod principal;

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::kernel::{harmonic_extension, pv_harmonic_extension, HalfPlanePoint, TailPart};
use crate::residue::numeric_residue;
use crate::{Boundary, Complex, Error, Lattice, QuadConfig, QuadResult, Result};

/// Parameter values for one catalog evaluation. Entries read only the
/// parameters they declare.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct ParamSet {
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub a: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub b: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub alpha: Option<f64>,
}

impl ParamSet {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_a(mut self, a: f64) -> Self {
        self.a = Some(a);
        self
    }

    pub fn with_b(mut self, b: f64) -> Self {
        self.b = Some(b);
        self
    }

    pub fn with_alpha(mut self, alpha: f64) -> Self {
        self.alpha = Some(alpha);
        self
    }

    pub fn get(&self, p: Param) -> Option<f64> {
        match p {
            Param::A => self.a,
            Param::B => self.b,
            Param::Alpha => self.alpha,
        }
    }

    pub fn set(&mut self, p: Param, v: f64) {
        match p {
            Param::A => self.a = Some(v),
            Param::B => self.b = Some(v),
            Param::Alpha => self.alpha = Some(v),
        }
    }

    /// Keeps only the parameters in `used`.
    pub fn restricted(&self, used: &[Param]) -> Self {
        let mut out = Self::new();
        for &p in used {
            if let Some(v) = self.get(p) {
                out.set(p, v);
            }
        }
        out
    }

    pub(crate) fn a(&self) -> f64 {
        self.a.unwrap_or(f64::NAN)
    }

    pub(crate) fn b(&self) -> f64 {
        self.b.unwrap_or(f64::NAN)
    }

    pub(crate) fn alpha(&self) -> f64 {
        self.alpha.unwrap_or(f64::NAN)
    }
}

impl fmt::Display for ParamSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for p in Param::ALL {
            if let Some(v) = self.get(p) {
                if !first {
                    f.write_str(", ")?;
                }
                write!(f, "{}={v}", p.name())?;
                first = false;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Param {
    A,
    B,
    Alpha,
}

impl Param {
    pub const ALL: [Param; 3] = [Param::A, Param::B, Param::Alpha];

    pub fn name(self) -> &'static str {
        match self {
            Param::A => "a",
            Param::B => "b",
            Param::Alpha => "alpha",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "a" => Some(Param::A),
            "b" => Some(Param::B),
            "alpha" => Some(Param::Alpha),
            _ => None,
        }
    }
}

/// Integration range of the stated identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LineDomain {
    HalfLine,
    FullLine,
}

/// Evaluation points at which the identity is stated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PointRule {
    /// Any `x > 0` and real `y`.
    Any,
    /// `y = 0`.
    RealAxis,
    /// `x = 1`, `y = 0`.
    UnitPoint,
}

impl PointRule {
    fn admits(self, x: f64, y: f64) -> bool {
        match self {
            PointRule::Any => true,
            PointRule::RealAxis => y == 0.0,
            PointRule::UnitPoint => x == 1.0 && y == 0.0,
        }
    }

    fn text(self) -> &'static str {
        match self {
            PointRule::Any => "x > 0",
            PointRule::RealAxis => "x > 0, y = 0",
            PointRule::UnitPoint => "x = 1, y = 0",
        }
    }
}

/// Imaginary part of the boundary values of an entry's half-plane function.
#[derive(Clone, Copy)]
pub(crate) enum ImagBoundary {
    Zero,
    Unavailable,
}

type BoundaryFn = fn(&ParamSet) -> Boundary;
type ScaleFn = fn(&ParamSet, f64) -> f64;
type ClosedFn = fn(&ParamSet, f64, f64) -> f64;
type AnalyticFn = fn(&ParamSet, Complex) -> Complex;
type LatticeFn = fn(&ParamSet) -> Lattice;

/// One catalog identity.
///
/// The integral stated by the identity equals `scale(p, x)` times the
/// harmonic extension of the boundary data at `x + iy`; `closed` gives the
/// stated right side.
#[derive(Clone)]
pub struct EntrySpec {
    pub key: &'static str,
    pub equation: &'static str,
    pub gr_number: Option<&'static str>,
    pub domain: LineDomain,
    pub params: &'static [Param],
    pub param_constraint: &'static str,
    pub point_rule: PointRule,
    pub notes: &'static str,
    pub naive_limit_witness: bool,
    admit: fn(&ParamSet) -> bool,
    boundary: BoundaryFn,
    scale: ScaleFn,
    closed: ClosedFn,
    analytic: Option<AnalyticFn>,
    lattice: Option<LatticeFn>,
    imag: ImagBoundary,
}

impl fmt::Debug for EntrySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("EntrySpec")
            .field("id", &self.id())
            .finish_non_exhaustive()
    }
}

/// Serializable entry metadata.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EntryMeta {
    pub id: String,
    pub key: String,
    pub equation: String,
    pub gr_number: Option<String>,
    pub pv_flag: bool,
    pub domain: LineDomain,
    pub params: Vec<Param>,
    pub param_constraints: String,
    pub naive_limit_witness: bool,
    pub notes: String,
}

impl EntrySpec {
    pub(crate) fn new(
        key: &'static str,
        equation: &'static str,
        gr_number: Option<&'static str>,
        domain: LineDomain,
        params: &'static [Param],
        param_constraint: &'static str,
        point_rule: PointRule,
    ) -> Self {
        Self {
            key,
            equation,
            gr_number,
            domain,
            params,
            param_constraint,
            point_rule,
            notes: "",
            naive_limit_witness: false,
            admit: |_| true,
            boundary: |_| Boundary::new(|_| 0.0, crate::kernel::TailModel::Bounded(0.0)),
            scale: |_, _| 1.0,
            closed: |_, _, _| f64::NAN,
            analytic: None,
            lattice: None,
            imag: ImagBoundary::Unavailable,
        }
    }

    pub(crate) fn admit(mut self, f: fn(&ParamSet) -> bool) -> Self {
        self.admit = f;
        self
    }

    pub(crate) fn boundary_fn(mut self, f: BoundaryFn) -> Self {
        self.boundary = f;
        self
    }

    pub(crate) fn scale_fn(mut self, f: ScaleFn) -> Self {
        self.scale = f;
        self
    }

    pub(crate) fn closed_fn(mut self, f: ClosedFn) -> Self {
        self.closed = f;
        self
    }

    pub(crate) fn analytic_fn(mut self, f: AnalyticFn) -> Self {
        self.analytic = Some(f);
        self
    }

    pub(crate) fn lattice_fn(mut self, f: LatticeFn) -> Self {
        self.lattice = Some(f);
        self
    }

    pub(crate) fn imag(mut self, imag: ImagBoundary) -> Self {
        self.imag = imag;
        self
    }

    pub(crate) fn notes(mut self, notes: &'static str) -> Self {
        self.notes = notes;
        self
    }

    pub(crate) fn witness(mut self) -> Self {
        self.naive_limit_witness = true;
        self
    }

    /// Stable identifier `E<n>/<equation>/GR-<number>` (or `/none`).
    pub fn id(&self) -> String {
        match self.gr_number {
            Some(gr) => format!("{}/{}/GR-{}", self.key, self.equation, gr),
            None => format!("{}/{}/none", self.key, self.equation),
        }
    }

    pub fn is_pv(&self) -> bool {
        self.lattice.is_some()
    }

    /// Human-readable constraint covering parameters and evaluation point.
    pub fn constraints(&self) -> String {
        if self.param_constraint.is_empty() {
            self.point_rule.text().to_string()
        } else {
            format!("{}, {}", self.param_constraint, self.point_rule.text())
        }
    }

    pub fn meta(&self) -> EntryMeta {
        EntryMeta {
            id: self.id(),
            key: self.key.to_string(),
            equation: self.equation.to_string(),
            gr_number: self.gr_number.map(str::to_string),
            pv_flag: self.is_pv(),
            domain: self.domain,
            params: self.params.to_vec(),
            param_constraints: self.constraints(),
            naive_limit_witness: self.naive_limit_witness,
            notes: self.notes.to_string(),
        }
    }

    fn constraint_error(&self) -> Error {
        Error::Constraint {
            entry: self.id(),
            constraint: self.constraints(),
        }
    }

    /// Validates the parameters alone.
    pub fn check_params(&self, p: &ParamSet) -> Result<()> {
        for &q in self.params {
            match p.get(q) {
                None => {
                    return Err(Error::Config(format!(
                        "{} needs parameter `{}`",
                        self.id(),
                        q.name()
                    )))
                }
                Some(v) if !v.is_finite() => {
                    return Err(Error::Domain(format!(
                        "parameter `{}` must be finite",
                        q.name()
                    )))
                }
                Some(_) => {}
            }
        }
        if (self.admit)(p) {
            Ok(())
        } else {
            Err(self.constraint_error())
        }
    }

    /// Validates parameters and evaluation point.
    pub fn check(&self, p: &ParamSet, x: f64, y: f64) -> Result<()> {
        self.check_params(p)?;
        if !(x > 0.0) || !x.is_finite() || !y.is_finite() {
            return Err(Error::Domain(format!(
                "evaluation point needs finite x > 0, got x = {x}, y = {y}"
            )));
        }
        if self.point_rule.admits(x, y) {
            Ok(())
        } else {
            Err(self.constraint_error())
        }
    }

    pub fn closed_form(&self, p: &ParamSet, x: f64, y: f64) -> Result<f64> {
        self.check(p, x, y)?;
        Ok((self.closed)(p, x, y))
    }

    /// Boundary data `Re f(it)`.
    pub fn boundary(&self, p: &ParamSet) -> Result<Boundary> {
        self.check_params(p)?;
        Ok((self.boundary)(p))
    }

    /// Factor converting the harmonic extension into the stated integral.
    pub fn scale(&self, p: &ParamSet, x: f64) -> f64 {
        (self.scale)(p, x)
    }

    pub fn pole_lattice(&self, p: &ParamSet) -> Result<Lattice> {
        let build = self
            .lattice
            .ok_or_else(|| Error::NotPrincipalValue(self.id()))?;
        self.check_params(p)?;
        Ok(build(p))
    }

    pub fn has_analytic(&self) -> bool {
        self.analytic.is_some()
    }

    /// Half-plane function `f` whose boundary real part is the entry's data.
    pub fn analytic(&self, p: &ParamSet, z: Complex) -> Result<Complex> {
        let f = self.analytic.ok_or_else(|| {
            Error::Unsupported(format!("{} has no half-plane function", self.id()))
        })?;
        self.check_params(p)?;
        Ok(f(p, z))
    }

    /// Imaginary boundary part `Im f(it)`; `None` when it vanishes identically.
    pub fn imag_boundary(&self, p: &ParamSet) -> Result<Option<Boundary>> {
        self.check_params(p)?;
        match self.imag {
            ImagBoundary::Zero => Ok(None),
            ImagBoundary::Unavailable => Err(Error::Unsupported(format!(
                "{} has no imaginary boundary data",
                self.id()
            ))),
        }
    }

    /// Numerical harmonic extension of the boundary data at `pt`, through the
    /// principal-value integrator when the data carry poles.
    pub fn extension(
        &self,
        p: &ParamSet,
        pt: HalfPlanePoint<f64>,
        cfg: &QuadConfig,
    ) -> Result<QuadResult> {
        let g = self.boundary(p)?;
        if self.is_pv() {
            pv_harmonic_extension(&g, pt, cfg)
        } else {
            harmonic_extension(&g, pt, cfg)
        }
    }

    /// Numerical value of the stated integral.
    pub fn numeric(&self, p: &ParamSet, x: f64, y: f64, cfg: &QuadConfig) -> Result<QuadResult> {
        self.check(p, x, y)?;
        let pt = HalfPlanePoint::new(x, y)?;
        Ok(self.extension(p, pt, cfg)?.scaled(self.scale(p, x)))
    }

    /// Closed form without constraint checks, for identities at the edge of
    /// the stated domain.
    pub fn closed_unchecked(&self, p: &ParamSet, x: f64, y: f64) -> f64 {
        (self.closed)(p, x, y)
    }
}

/// All catalog entries, in order `E1` to `E26`.
pub fn entries() -> &'static [EntrySpec] {
    static ENTRIES: OnceLock<Vec<EntrySpec>> = OnceLock::new();
    ENTRIES.get_or_init(|| {
        let mut v = ordinary::entries();
        v.extend(principal::entries());
        v.sort_by_key(|e| entry_number(e.key));
        v
    })
}

fn entry_number(key: &str) -> u32 {
    key.trim_start_matches('E').parse().unwrap_or(u32::MAX)
}

/// Entry by short key (`E16`, case-insensitive) or full identifier.
pub fn lookup(id: &str) -> Result<&'static EntrySpec> {
    let id = id.trim();
    entries()
        .iter()
        .find(|e| e.key.eq_ignore_ascii_case(id) || e.id() == id)
        .ok_or_else(|| Error::UnknownEntry(id.to_string()))
}

pub fn closed_form(e: &EntrySpec, p: &ParamSet, x: f64, y: f64) -> Result<f64> {
    e.closed_form(p, x, y)
}

pub fn pole_lattice(e: &EntrySpec, p: &ParamSet) -> Result<Lattice> {
    e.pole_lattice(p)
}

/// Catalog residue of one lattice pole next to the contour estimate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResidueCheck {
    pub k: i64,
    pub ordinate: f64,
    /// `e_k`; the half-plane function has residue `i e_k` at `i c_k`.
    pub catalog: f64,
    pub numeric_re: f64,
    pub numeric_im: f64,
}

impl ResidueCheck {
    /// `|numeric − i e_k|`.
    pub fn abs_err(&self) -> f64 {
        self.numeric_re.hypot(self.numeric_im - self.catalog)
    }
}

/// Contour radius as a fraction of the pole separation.
pub const RESIDUE_RADIUS_FRACTION: f64 = 0.25;

/// Compares catalog residues with [`numeric_residue`] of the half-plane
/// function for every lattice index in `ks`.
pub fn residue_checks(
    e: &EntrySpec,
    p: &ParamSet,
    ks: impl IntoIterator<Item = i64>,
) -> Result<Vec<ResidueCheck>> {
    let lat = e.pole_lattice(p)?;
    let radius = RESIDUE_RADIUS_FRACTION * lat.separation();
    let f = |z: Complex| e.analytic(p, z).unwrap_or(Complex::new(f64::NAN, f64::NAN));
    e.analytic(p, Complex::new(1.0, 0.0))?;
    ks.into_iter()
        .filter(|&k| lat.contains(k))
        .map(|k| {
            let c = lat.ordinate(k);
            let r = numeric_residue(&f, Complex::new(0.0, c), radius)?;
            Ok(ResidueCheck {
                k,
                ordinate: c,
                catalog: lat.residue(k),
                numeric_re: r.re,
                numeric_im: r.im,
            })
        })
        .collect()
}

/// `amp(t) sin(freq t)` as a tail part, or nothing when `freq = 0`.
pub(crate) fn sin_wave(
    freq: f64,
    amp: impl Fn(f64) -> f64 + Send + Sync + 'static,
) -> Option<TailPart<f64>> {
    (freq != 0.0).then(|| {
        TailPart::oscillating(
            move |t| amp(t) * (freq * t).sin(),
            freq.abs(),
            -std::f64::consts::FRAC_PI_2,
        )
    })
}

/// `amp(t) cos(freq t)` as a tail part; smooth when `freq = 0`.
pub(crate) fn cos_wave(
    freq: f64,
    amp: impl Fn(f64) -> f64 + Send + Sync + 'static,
) -> TailPart<f64> {
    if freq == 0.0 {
        TailPart::smooth(amp)
    } else {
        TailPart::oscillating(move |t| amp(t) * (freq * t).cos(), freq.abs(), 0.0)
    }
}

/// `(−1)^k`.
pub(crate) fn parity(k: i64) -> f64 {
    if k.rem_euclid(2) == 0 {
        1.0
    } else {
        -1.0
    }
}
