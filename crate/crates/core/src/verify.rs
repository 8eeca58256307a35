//! Verification harness: numerical quadrature against closed forms over
//! parameter grids, cross-entry consistency checks and harmonicity checks.

use std::fmt;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{entries, lookup, EntrySpec, Param, ParamSet, PointRule};
use crate::kernel::HalfPlanePoint;
use crate::quadrature::QuadStatus;
use crate::{Error, QuadConfig, Result};

/// Default parameter values for `a`, `b` and `alpha`.
pub const DEFAULT_PARAM_VALUES: [f64; 4] = [0.3, 0.7, 1.0, 1.9];
/// Default abscissae.
pub const DEFAULT_X: [f64; 3] = [0.5, 1.0, 2.0];
/// Default ordinates for entries stated at general `y`.
pub const DEFAULT_Y: [f64; 2] = [0.0, 0.8];

pub const ORDINARY_TOL_REL: f64 = 1e-8;
pub const PV_TOL_REL: f64 = 1e-6;

pub const REASON_WITNESS: &str = "naive_limit_witness";
pub const REASON_CONSTRAINT: &str = "constraint_violation";
pub const REASON_NUMERICAL: &str = "numerical_failure";
pub const REASON_TOLERANCE: &str = "tolerance_exceeded";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RecordStatus {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for RecordStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RecordStatus::Pass => "pass",
            RecordStatus::Fail => "fail",
            RecordStatus::Skip => "skip",
        })
    }
}

/// Acceptance thresholds: a record passes when either bound holds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerances {
    pub abs: f64,
    pub rel: f64,
}

impl Tolerances {
    /// `1e-8` relative for ordinary entries, `1e-6` for principal values;
    /// no absolute allowance.
    pub fn for_entry(e: &EntrySpec) -> Self {
        Self {
            abs: 0.0,
            rel: if e.is_pv() {
                PV_TOL_REL
            } else {
                ORDINARY_TOL_REL
            },
        }
    }

    pub fn admits(&self, abs_err: f64, rel_err: f64) -> bool {
        abs_err <= self.abs || rel_err <= self.rel
    }
}

/// One `(parameters, x, y)` sample.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridPoint {
    pub params: ParamSet,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Record {
    pub entry_id: String,
    pub params: ParamSet,
    pub x: f64,
    pub y: f64,
    pub numeric: Option<f64>,
    pub closed: Option<f64>,
    pub abs_err: Option<f64>,
    pub rel_err: Option<f64>,
    pub n_evals: usize,
    pub wall_time: f64,
    pub status: RecordStatus,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl Record {
    fn new(entry_id: String, pt: &GridPoint) -> Self {
        Self {
            entry_id,
            params: pt.params,
            x: pt.x,
            y: pt.y,
            numeric: None,
            closed: None,
            abs_err: None,
            rel_err: None,
            n_evals: 0,
            wall_time: 0.0,
            status: RecordStatus::Fail,
            reason: None,
        }
    }

    /// Fills the comparison fields and decides pass or fail.
    fn compare(&mut self, numeric: f64, closed: f64, tol: &Tolerances) {
        let abs_err = (numeric - closed).abs();
        // relative error falls back to the absolute error at a zero closed form
        let rel_err = if closed == 0.0 {
            abs_err
        } else {
            abs_err / closed.abs()
        };
        self.numeric = Some(numeric);
        self.closed = Some(closed);
        self.abs_err = Some(abs_err);
        self.rel_err = Some(rel_err);
        if tol.admits(abs_err, rel_err) {
            self.status = RecordStatus::Pass;
        } else {
            self.status = RecordStatus::Fail;
            self.reason = Some(REASON_TOLERANCE.to_string());
        }
    }

    pub fn is_numerical_failure(&self) -> bool {
        self.reason
            .as_deref()
            .is_some_and(|r| r.starts_with(REASON_NUMERICAL))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Summary {
    pub n_pass: usize,
    pub n_fail: usize,
    pub n_skip: usize,
    pub max_rel_err: Option<f64>,
    pub n_numerical_failures: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub records: Vec<Record>,
    pub summary: Summary,
}

impl VerificationReport {
    pub fn from_records(records: Vec<Record>) -> Self {
        let count = |s| records.iter().filter(|r| r.status == s).count();
        let max_rel_err = records
            .iter()
            .filter(|r| r.status != RecordStatus::Skip)
            .filter_map(|r| r.rel_err)
            .fold(None, |m: Option<f64>, v| Some(m.map_or(v, |m| m.max(v))));
        let summary = Summary {
            n_pass: count(RecordStatus::Pass),
            n_fail: count(RecordStatus::Fail),
            n_skip: count(RecordStatus::Skip),
            max_rel_err,
            n_numerical_failures: records.iter().filter(|r| r.is_numerical_failure()).count(),
        };
        Self { records, summary }
    }

    pub fn merge(reports: impl IntoIterator<Item = VerificationReport>) -> Self {
        Self::from_records(reports.into_iter().flat_map(|r| r.records).collect())
    }

    /// Process exit code: 3 on numerical failure, 1 on tolerance failure.
    pub fn exit_code(&self) -> i32 {
        if self.summary.n_numerical_failures > 0 {
            3
        } else if self.summary.n_fail > 0 {
            1
        } else {
            0
        }
    }
}

fn param_values(p: Param) -> &'static [f64] {
    match p {
        Param::A | Param::B | Param::Alpha => &DEFAULT_PARAM_VALUES,
    }
}

fn default_y(e: &EntrySpec) -> Vec<f64> {
    match e.point_rule {
        PointRule::Any => DEFAULT_Y.to_vec(),
        PointRule::RealAxis | PointRule::UnitPoint => vec![0.0],
    }
}

fn default_x(e: &EntrySpec) -> Vec<f64> {
    match e.point_rule {
        PointRule::UnitPoint => vec![1.0],
        _ => DEFAULT_X.to_vec(),
    }
}

/// Grid request: explicit value lists per key; missing keys take defaults.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GridSpec {
    pub a: Option<Vec<f64>>,
    pub b: Option<Vec<f64>>,
    pub alpha: Option<Vec<f64>>,
    pub x: Option<Vec<f64>>,
    pub y: Option<Vec<f64>>,
}

impl GridSpec {
    /// Parses `default` or `key=v1,v2;key=v3` with keys `a`, `b`, `alpha`,
    /// `x`, `y`.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let mut g = Self::default();
        if s.is_empty() || s == "default" {
            return Ok(g);
        }
        for clause in s.split(';').map(str::trim).filter(|c| !c.is_empty()) {
            let (key, vals) = clause
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("grid clause `{clause}` lacks `=`")))?;
            let values = vals
                .split(',')
                .map(|v| {
                    v.trim()
                        .parse::<f64>()
                        .map_err(|_| Error::Config(format!("bad grid value `{v}` for `{key}`")))
                })
                .collect::<Result<Vec<_>>>()?;
            if values.is_empty() {
                return Err(Error::Config(format!("grid key `{key}` has no values")));
            }
            let slot = match key.trim() {
                "a" => &mut g.a,
                "b" => &mut g.b,
                "alpha" => &mut g.alpha,
                "x" => &mut g.x,
                "y" => &mut g.y,
                other => return Err(Error::Config(format!("unknown grid key `{other}`"))),
            };
            if slot.is_some() {
                return Err(Error::Config(format!("grid key `{key}` given twice")));
            }
            *slot = Some(values);
        }
        Ok(g)
    }

    fn values(&self, p: Param) -> Option<&Vec<f64>> {
        match p {
            Param::A => self.a.as_ref(),
            Param::B => self.b.as_ref(),
            Param::Alpha => self.alpha.as_ref(),
        }
    }

    /// Grid points for `e`. When any of the entry's parameters or `x` falls
    /// back to defaults, points outside the entry's domain are dropped;
    /// a fully explicit grid is used as given.
    pub fn points_for(&self, e: &EntrySpec) -> Vec<GridPoint> {
        let mut defaulted = self.x.is_none();
        let mut combos = vec![ParamSet::new()];
        for &p in e.params {
            let vals = match self.values(p) {
                Some(v) => v.clone(),
                None => {
                    defaulted = true;
                    param_values(p).to_vec()
                }
            };
            combos = combos
                .iter()
                .flat_map(|c| {
                    vals.iter().map(move |&v| {
                        let mut c = *c;
                        c.set(p, v);
                        c
                    })
                })
                .collect();
        }
        let xs = self.x.clone().unwrap_or_else(|| default_x(e));
        let ys = self.y.clone().unwrap_or_else(|| default_y(e));
        let mut out = Vec::new();
        for params in &combos {
            for &x in &xs {
                for &y in &ys {
                    let pt = GridPoint {
                        params: *params,
                        x,
                        y,
                    };
                    if !defaulted || e.check(&pt.params, x, y).is_ok() {
                        out.push(pt);
                    }
                }
            }
        }
        out
    }
}

/// Default verification grid of an entry.
pub fn default_grid(e: &EntrySpec) -> Vec<GridPoint> {
    GridSpec::default().points_for(e)
}

fn verify_point(e: &EntrySpec, pt: &GridPoint, tol: &Tolerances, cfg: &QuadConfig) -> Record {
    let mut rec = Record::new(e.id(), pt);
    if let Err(err) = e.check(&pt.params, pt.x, pt.y) {
        rec.reason = Some(format!("{REASON_CONSTRAINT}: {err}"));
        return rec;
    }
    let start = Instant::now();
    let numeric = e.numeric(&pt.params, pt.x, pt.y, cfg);
    rec.wall_time = start.elapsed().as_secs_f64();
    let closed = e.closed_form(&pt.params, pt.x, pt.y);
    match (numeric, closed) {
        (Ok(q), Ok(c)) => {
            rec.n_evals = q.n_evals;
            rec.compare(q.value, c, tol);
            if e.naive_limit_witness {
                rec.status = RecordStatus::Skip;
                rec.reason = Some(REASON_WITNESS.to_string());
            } else if q.status != QuadStatus::Converged {
                rec.status = RecordStatus::Fail;
                rec.reason = Some(format!("{REASON_NUMERICAL}: {}", q.status));
            }
        }
        (Err(err), _) | (_, Err(err)) => {
            if e.naive_limit_witness {
                rec.status = RecordStatus::Skip;
                rec.reason = Some(REASON_WITNESS.to_string());
            } else {
                rec.reason = Some(format!("{REASON_NUMERICAL}: {err}"));
            }
        }
    }
    rec
}

/// Compares quadrature of the entry against its closed form at every grid
/// point. Grid points are evaluated in parallel; records keep grid order.
pub fn verify_entry(
    e: &EntrySpec,
    grid: &[GridPoint],
    tol: Tolerances,
    cfg: &QuadConfig,
) -> VerificationReport {
    let records = grid
        .par_iter()
        .map(|pt| verify_point(e, pt, &tol, cfg))
        .collect();
    VerificationReport::from_records(records)
}

/// Every entry on its default grid with its default tolerances.
pub fn verify_catalog(cfg: &QuadConfig) -> VerificationReport {
    VerificationReport::merge(
        entries()
            .iter()
            .map(|e| verify_entry(e, &default_grid(e), Tolerances::for_entry(e), cfg)),
    )
}

fn check_record(
    name: &str,
    pt: GridPoint,
    lhs: Result<f64>,
    rhs: Result<f64>,
    tol: Tolerances,
) -> Record {
    let mut rec = Record::new(format!("consistency/{name}"), &pt);
    let start = Instant::now();
    match (lhs, rhs) {
        (Ok(l), Ok(r)) => rec.compare(l, r, &tol),
        (Err(err), _) | (_, Err(err)) => rec.reason = Some(format!("{REASON_NUMERICAL}: {err}")),
    }
    rec.wall_time = start.elapsed().as_secs_f64();
    rec
}

fn ab(a: f64, b: f64) -> ParamSet {
    ParamSet::new().with_a(a).with_b(b)
}

/// Step of the central differences in the derivative checks.
pub const FD_STEP: f64 = 1e-5;
pub const ADDITIVITY_TOL: f64 = 1e-12;
pub const DERIVATIVE_TOL_REL: f64 = 1e-8;
pub const HARDY_TOL: f64 = 1e-4;
pub const HARDY_MIN_DISTANCE: f64 = 1.5;
pub const CONTINUITY_A: f64 = 1e-3;
pub const CONTINUITY_TOL: f64 = 1e-3;
/// Floating-point allowance for closed forms that agree analytically.
pub const IDENTITY_TOL_REL: f64 = 1e-14;

/// Cross-entry checks: additivity, derivative relations, the discontinuity
/// of the tangent integral, continuity at `a = 0`, and the coincidence of
/// two closed forms at `a = b`.
pub fn consistency_suite(cfg: &QuadConfig) -> VerificationReport {
    let e8 = lookup("E8").expect("catalog");
    let e9 = lookup("E9").expect("catalog");
    let e10 = lookup("E10").expect("catalog");
    let e11 = lookup("E11").expect("catalog");
    let e13 = lookup("E13").expect("catalog");
    let e14 = lookup("E14").expect("catalog");
    let e24 = lookup("E24").expect("catalog");
    let e25 = lookup("E25").expect("catalog");
    let e26 = lookup("E26").expect("catalog");

    let pairs = [(0.3, 0.7), (0.3, 1.0), (0.7, 1.0), (0.3, 1.9), (1.0, 1.9)];
    let xs = [0.5, 1.0, 1.2, 2.0];
    let mut records = Vec::new();

    for &(a, b) in &pairs {
        for &x in &xs {
            let pt = GridPoint {
                params: ab(a, b),
                x,
                y: 0.0,
            };
            let sum = e9
                .closed_form(&pt.params, x, 0.0)
                .and_then(|v| Ok(v + e10.closed_form(&pt.params, x, 0.0)?));
            records.push(check_record(
                "additivity_e9_e10_e11",
                pt,
                sum,
                e11.closed_form(&pt.params, x, 0.0),
                Tolerances {
                    abs: ADDITIVITY_TOL,
                    rel: 0.0,
                },
            ));

            let h = FD_STEP;
            let e8c = |a: f64, b: f64| e8.closed_unchecked(&ab(a, b), x, 0.0);
            let d_db = -(e8c(a, b + h) - e8c(a, b - h)) / (2.0 * h);
            let d_da = -(e8c(a + h, b) - e8c(a - h, b)) / (2.0 * h);
            let tol = Tolerances {
                abs: 0.0,
                rel: DERIVATIVE_TOL_REL,
            };
            records.push(check_record(
                "derivative_b_e8_e9",
                pt,
                Ok(d_db),
                e9.closed_form(&pt.params, x, 0.0),
                tol,
            ));
            records.push(check_record(
                "derivative_a_e8_e10",
                pt,
                Ok(d_da),
                e10.closed_form(&pt.params, x, 0.0),
                tol,
            ));
        }
    }

    // direct principal value of t tan(bt) / (x^2 + t^2) against the true
    // value and the naive limit
    let hardy_pt = GridPoint {
        params: ParamSet::new().with_b(1.0),
        x: 1.0,
        y: 0.0,
    };
    let mut rec = Record::new("consistency/hardy_discontinuity".into(), &hardy_pt);
    let start = Instant::now();
    let numeric = e25.numeric(&hardy_pt.params, 1.0, 0.0, cfg);
    rec.wall_time = start.elapsed().as_secs_f64();
    match (
        numeric,
        e25.closed_form(&hardy_pt.params, 1.0, 0.0),
        e26.closed_form(&hardy_pt.params, 1.0, 0.0),
    ) {
        (Ok(q), Ok(truth), Ok(naive)) => {
            rec.n_evals = q.n_evals;
            rec.compare(
                q.value,
                truth,
                &Tolerances {
                    abs: HARDY_TOL,
                    rel: 0.0,
                },
            );
            let distance = (q.value - naive).abs();
            if rec.status == RecordStatus::Pass && !(distance > HARDY_MIN_DISTANCE) {
                rec.status = RecordStatus::Fail;
                rec.reason = Some(format!("within {distance} of the naive limit {naive}"));
            }
            if q.status != QuadStatus::Converged {
                rec.status = RecordStatus::Fail;
                rec.reason = Some(format!("{REASON_NUMERICAL}: {}", q.status));
            }
        }
        (Err(err), _, _) | (_, Err(err), _) | (_, _, Err(err)) => {
            rec.reason = Some(format!("{REASON_NUMERICAL}: {err}"));
        }
    }
    records.push(rec);

    // continuity of the cosine-weighted tangent integral at a = 0
    for &(b, x) in &[(1.0, 1.0), (0.7, 0.5), (1.9, 2.0)] {
        let pt = GridPoint {
            params: ab(CONTINUITY_A, b),
            x,
            y: 0.0,
        };
        let numeric = e24.numeric(&pt.params, x, 0.0, cfg).and_then(|q| {
            if q.is_converged() {
                Ok(q.value)
            } else {
                Err(Error::NoConvergence(q.status.to_string()))
            }
        });
        records.push(check_record(
            "continuity_e24_e25",
            pt,
            numeric,
            e25.closed_form(&ParamSet::new().with_b(b), x, 0.0),
            Tolerances {
                abs: CONTINUITY_TOL,
                rel: 0.0,
            },
        ));
        let pt0 = GridPoint {
            params: ab(0.0, b),
            x,
            y: 0.0,
        };
        records.push(check_record(
            "closed_e24_at_zero_e25",
            pt0,
            e24.closed_form(&pt0.params, x, 0.0),
            e25.closed_form(&ParamSet::new().with_b(b), x, 0.0),
            Tolerances {
                abs: 0.0,
                rel: IDENTITY_TOL_REL,
            },
        ));
    }

    for &a in &DEFAULT_PARAM_VALUES {
        for &x in &DEFAULT_X {
            let pt = GridPoint {
                params: ab(a, a),
                x,
                y: 0.0,
            };
            records.push(check_record(
                "closed_e13_e14_equal_parameters",
                pt,
                Ok(e13.closed_unchecked(&pt.params, x, 0.0)),
                Ok(e14.closed_unchecked(&pt.params, x, 0.0)),
                Tolerances {
                    abs: 0.0,
                    rel: IDENTITY_TOL_REL,
                },
            ));
        }
    }

    VerificationReport::from_records(records)
}

/// Configuration used for Laplacian stencils, tight enough that quadrature
/// noise stays well below the truncation error of the stencil.
/// Quadrature settings for the stencil evaluations of `harmonicity_report`.
pub fn harmonicity_config(tol_abs: f64, tol_rel: f64) -> QuadConfig {
    QuadConfig {
        tol_abs,
        tol_rel,
        max_subdivisions: 100_000,
        ..QuadConfig::default()
    }
}

/// `|Δ_h u|` at `center` for each `h`, where `u` is the numerically
/// computed harmonic extension of the entry's boundary data and `Δ_h` the
/// five-point Laplacian.
pub fn harmonicity_suite(
    e: &EntrySpec,
    p: &ParamSet,
    center: HalfPlanePoint<f64>,
    h_list: &[f64],
    cfg: &QuadConfig,
) -> Result<Vec<f64>> {
    let HalfPlanePoint { x, y } = HalfPlanePoint::new(center.x, center.y)?;
    if let Some(&h) = h_list.iter().find(|&&h| !(h > 0.0 && h < x)) {
        return Err(Error::Domain(format!(
            "stencil step {h} must lie in (0, x)"
        )));
    }
    let u = |px: f64, py: f64| -> Result<f64> {
        let r = e.extension(p, HalfPlanePoint::new(px, py)?, cfg)?;
        if r.is_converged() {
            Ok(r.value)
        } else {
            Err(Error::NoConvergence(format!(
                "extension at ({px}, {py}): {}",
                r.status
            )))
        }
    };
    let u0 = u(x, y)?;
    h_list
        .iter()
        .map(|&h| {
            let s = u(x + h, y)? + u(x - h, y)? + u(x, y + h)? + u(x, y - h)?;
            Ok(((s - 4.0 * u0) / (h * h)).abs())
        })
        .collect()
}

pub const HARMONICITY_STEPS: [f64; 3] = [1e-2, 5e-3, 2.5e-3];
pub const HARMONICITY_RATIO: (f64, f64) = (3.5, 4.5);

/// Harmonicity records for one ordinary and one principal-value entry:
/// the Laplacian residual must shrink by a factor near four when the
/// stencil step halves.
pub fn harmonicity_report() -> VerificationReport {
    let cases = [
        (
            "E1",
            ParamSet::new().with_a(1.0),
            1.0,
            0.0,
            harmonicity_config(1e-14, 1e-13),
        ),
        (
            "E16",
            ParamSet::new().with_a(1.0),
            1.0,
            0.5,
            harmonicity_config(1e-12, 1e-12),
        ),
    ];
    let records = cases
        .par_iter()
        .flat_map_iter(|&(key, params, x, y, cfg)| {
            let e = lookup(key).expect("catalog");
            let pt = GridPoint { params, x, y };
            let start = Instant::now();
            let res = harmonicity_suite(
                e,
                &params,
                HalfPlanePoint { x, y },
                &HARMONICITY_STEPS,
                &cfg,
            );
            let elapsed = start.elapsed().as_secs_f64();
            let mut out = Vec::new();
            match res {
                Ok(r) => {
                    for w in r.windows(2) {
                        let mut rec = Record::new(format!("harmonicity/{}", e.id()), &pt);
                        let ratio = w[0] / w[1];
                        rec.numeric = Some(ratio);
                        rec.closed = Some(4.0);
                        rec.abs_err = Some((ratio - 4.0).abs());
                        rec.rel_err = Some((ratio - 4.0).abs() / 4.0);
                        rec.wall_time = elapsed;
                        let (lo, hi) = HARMONICITY_RATIO;
                        if ratio >= lo && ratio <= hi {
                            rec.status = RecordStatus::Pass;
                        } else {
                            rec.reason =
                                Some(format!("residual ratio {ratio} outside [{lo}, {hi}]"));
                        }
                        out.push(rec);
                    }
                }
                Err(err) => {
                    let mut rec = Record::new(format!("harmonicity/{}", e.id()), &pt);
                    rec.reason = Some(format!("{REASON_NUMERICAL}: {err}"));
                    out.push(rec);
                }
            }
            out
        })
        .collect();
    VerificationReport::from_records(records)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_parsing() {
        let g = GridSpec::parse("a=0.5,1,2;x=1").unwrap();
        assert_eq!(g.a, Some(vec![0.5, 1.0, 2.0]));
        assert_eq!(g.x, Some(vec![1.0]));
        assert!(g.b.is_none());
        assert_eq!(GridSpec::parse("default").unwrap(), GridSpec::default());
        assert!(GridSpec::parse("q=1").is_err());
        assert!(GridSpec::parse("a=1;a=2").is_err());
        assert!(GridSpec::parse("a=x").is_err());
        assert!(GridSpec::parse("a").is_err());
    }

    #[test]
    fn default_grids_respect_constraints() {
        for e in entries() {
            let g = default_grid(e);
            assert!(!g.is_empty(), "{}", e.key);
            for pt in &g {
                e.check(&pt.params, pt.x, pt.y).unwrap();
            }
        }
        let e8 = lookup("E8").unwrap();
        // pairs with a <= b from four values, three abscissae
        assert_eq!(default_grid(e8).len(), 10 * 3);
        let e18 = lookup("E18").unwrap();
        assert_eq!(default_grid(e18).len(), 6 * 3 * 2);
    }

    #[test]
    fn explicit_grid_is_literal() {
        let e8 = lookup("E8").unwrap();
        let g = GridSpec::parse("a=2;b=1;x=1").unwrap().points_for(e8);
        assert_eq!(g.len(), 1);
        let rep = verify_entry(e8, &g, Tolerances::for_entry(e8), &QuadConfig::default());
        assert_eq!(rep.summary.n_fail, 1);
        let reason = rep.records[0].reason.as_deref().unwrap();
        assert!(
            reason.starts_with(REASON_CONSTRAINT) && reason.contains("0 < a <= b"),
            "{reason}"
        );
        assert_eq!(rep.exit_code(), 1);
    }

    #[test]
    fn partial_grid_is_filtered() {
        let e8 = lookup("E8").unwrap();
        let g = GridSpec::parse("a=0.3,2").unwrap().points_for(e8);
        assert!(g.iter().all(|p| p.params.a == Some(0.3)));
    }

    #[test]
    fn witness_records_skip() {
        let e26 = lookup("E26").unwrap();
        let rep = verify_entry(
            e26,
            &default_grid(e26)[..2],
            Tolerances::for_entry(e26),
            &QuadConfig::default(),
        );
        assert_eq!(rep.summary.n_skip, 2);
        assert!(rep
            .records
            .iter()
            .all(|r| r.reason.as_deref() == Some(REASON_WITNESS)));
        assert_eq!(rep.exit_code(), 0);
    }

    #[test]
    fn zero_closed_form_uses_absolute_error() {
        let mut r = Record::new(
            "t".into(),
            &GridPoint {
                params: ParamSet::new(),
                x: 1.0,
                y: 0.0,
            },
        );
        r.compare(
            1e-12,
            0.0,
            &Tolerances {
                abs: 0.0,
                rel: 1e-8,
            },
        );
        assert_eq!(r.status, RecordStatus::Pass);
        assert_eq!(r.rel_err, Some(1e-12));
    }

    #[test]
    fn summary_counts() {
        let pt = GridPoint {
            params: ParamSet::new(),
            x: 1.0,
            y: 0.0,
        };
        let mut a = Record::new("a".into(), &pt);
        a.compare(
            1.0,
            1.0,
            &Tolerances {
                abs: 0.0,
                rel: 1e-8,
            },
        );
        let mut b = Record::new("b".into(), &pt);
        b.compare(
            1.1,
            1.0,
            &Tolerances {
                abs: 0.0,
                rel: 1e-8,
            },
        );
        let mut c = Record::new("c".into(), &pt);
        c.status = RecordStatus::Skip;
        let rep = VerificationReport::from_records(vec![a, b, c]);
        assert_eq!(
            (rep.summary.n_pass, rep.summary.n_fail, rep.summary.n_skip),
            (1, 1, 1)
        );
        assert!((rep.summary.max_rel_err.unwrap() - 0.1).abs() < 1e-12);
    }
}
