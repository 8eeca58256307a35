//! Entries whose boundary data carry a lattice of simple poles.

use std::f64::consts::{FRAC_PI_2, PI};

use super::{parity, EntrySpec, ImagBoundary, LineDomain, Param, ParamSet, PointRule};
use crate::kernel::TailModel;
use crate::{Boundary, Complex, Lattice};

use LineDomain::{FullLine, HalfLine};
use Param::{A, B};

/// Poles at `(2k+1) π / (2w)`.
fn odd_lattice(w: f64, residue: impl Fn(i64, f64) -> f64 + Send + Sync + 'static) -> Lattice {
    let (origin, spacing) = (FRAC_PI_2 / w, PI / w);
    Lattice::new(origin, spacing, move |k| {
        residue(k, origin + k as f64 * spacing)
    })
    .expect("positive spacing")
}

/// Poles at `kπ / w`, `k ≠ 0`.
fn even_lattice(w: f64, residue: impl Fn(i64, f64) -> f64 + Send + Sync + 'static) -> Lattice {
    let spacing = PI / w;
    Lattice::new(0.0, spacing, move |k| residue(k, k as f64 * spacing))
        .expect("positive spacing")
        .excluding(0)
}

/// Data without a useful far-field model: the lattice integrator tapers
/// the tails itself.
fn lattice_data(
    eval: impl Fn(f64) -> f64 + Send + Sync + 'static,
    lattice: Lattice,
    local: impl Fn(i64, f64, f64) -> f64 + Send + Sync + 'static,
) -> Boundary {
    let lat = lattice.clone();
    Boundary::new(eval, TailModel::Bounded(f64::INFINITY))
        .with_poles(lattice)
        .with_local(move |k, s| local(k, lat.ordinate(k), s))
}

/// `sin(w (c + s))` expanded about `c`.
fn sin_shift(w: f64, c: f64, s: f64) -> f64 {
    (w * c).sin() * (w * s).cos() + (w * c).cos() * (w * s).sin()
}

/// `cos(w (c + s))` expanded about `c`.
fn cos_shift(w: f64, c: f64, s: f64) -> f64 {
    (w * c).cos() * (w * s).cos() - (w * c).sin() * (w * s).sin()
}

fn sech_lattice(p: &ParamSet) -> Lattice {
    let a = p.a();
    odd_lattice(a, move |k, _| -parity(k) / a).with_residue_bound(1.0 / a)
}

fn z_over_sinh_lattice(p: &ParamSet) -> Lattice {
    let a = p.a();
    even_lattice(a, move |k, c| parity(k) * c / a)
}

fn e18_lattice(p: &ParamSet) -> Lattice {
    let (a, b) = (p.a(), p.b());
    even_lattice(b, move |k, c| parity(k) * (a * c).sin() / b).with_residue_bound(1.0 / b)
}

fn e19_lattice(p: &ParamSet) -> Lattice {
    let (a, b) = (p.a(), p.b());
    odd_lattice(b, move |k, c| parity(k) * c * (a * c).sin() / b)
}

fn e20_lattice(p: &ParamSet) -> Lattice {
    let (a, b) = (p.a(), p.b());
    even_lattice(b, move |k, c| parity(k) * c * (a * c).cos() / b)
}

fn e21_lattice(p: &ParamSet) -> Lattice {
    let (a, b) = (p.a(), p.b());
    odd_lattice(b, move |k, c| -parity(k) * (a * c).cos() / b).with_residue_bound(1.0 / b)
}

fn e22_lattice(p: &ParamSet) -> Lattice {
    let (a, b) = (p.a(), p.b());
    odd_lattice(b, move |k, c| -parity(k) * (a * c).sin() / (b * c)).with_residue_bound(2.0 / PI)
}

fn hardy_lattice(p: &ParamSet) -> Lattice {
    let (a, b) = (p.a(), p.b());
    odd_lattice(b, move |_, c| -c * (a * c).cos() / (2.0 * b))
}

fn tan_lattice(p: &ParamSet) -> Lattice {
    let b = p.b();
    odd_lattice(b, move |_, c| -c / (2.0 * b))
}

fn hardy_data(p: &ParamSet) -> Boundary {
    let (a, b) = (p.a(), p.b());
    lattice_data(
        move |t| t * (a * t).cos() * (b * t).tan(),
        hardy_lattice(p),
        move |_, c, s| -(c + s) * cos_shift(a, c, s) / (b * s).tan(),
    )
}

fn tan_data(p: &ParamSet) -> Boundary {
    let b = p.b();
    lattice_data(
        move |t| t * (b * t).tan(),
        tan_lattice(p),
        move |_, c, s| -(c + s) / (b * s).tan(),
    )
}

fn one_over_exp_plus_one(z: Complex, b: f64) -> Complex {
    ((z * (2.0 * b)).exp() + 1.0).inv()
}

pub(super) fn entries() -> Vec<EntrySpec> {
    vec![
        EntrySpec::new(
            "E16",
            "3.2",
            None,
            HalfLine,
            &[A],
            "a > 0",
            PointRule::RealAxis,
        )
        .admit(|p| p.a() > 0.0)
        .boundary_fn(|p| {
            let a = p.a();
            lattice_data(
                move |t| 1.0 / (a * t).cos(),
                sech_lattice(p),
                move |k, _, s| -parity(k) / (a * s).sin(),
            )
        })
        .scale_fn(|_, x| PI / (2.0 * x))
        .closed_fn(|p, x, _| PI / (2.0 * x * (p.a() * x).cosh()))
        .analytic_fn(|p, z| (z * p.a()).cosh().inv())
        .lattice_fn(sech_lattice)
        .imag(ImagBoundary::Zero)
        .notes("sech(az); residues (-1)^(k+1)/a"),
        EntrySpec::new(
            "E17",
            "4.1",
            Some("3.747.3"),
            HalfLine,
            &[A],
            "a > 0",
            PointRule::RealAxis,
        )
        .admit(|p| p.a() > 0.0)
        .boundary_fn(|p| {
            let a = p.a();
            lattice_data(
                move |t| t / (a * t).sin(),
                z_over_sinh_lattice(p),
                move |k, c, s| parity(k) * (c + s) / (a * s).sin(),
            )
            .with_removable(0.0, 1.0 / a)
        })
        .scale_fn(|_, x| PI / (2.0 * x))
        .closed_fn(|p, x, _| PI / (2.0 * (p.a() * x).sinh()))
        .analytic_fn(|p, z| z / (z * p.a()).sinh())
        .lattice_fn(z_over_sinh_lattice)
        .imag(ImagBoundary::Zero)
        .notes("z/sinh(az); removable point t = 0 with limit 1/a"),
        EntrySpec::new(
            "E18",
            "4.3",
            Some("3.743.1"),
            FullLine,
            &[A, B],
            "0 < a < b",
            PointRule::Any,
        )
        .admit(|p| p.a() > 0.0 && p.a() < p.b())
        .boundary_fn(|p| {
            let (a, b) = (p.a(), p.b());
            lattice_data(
                move |t| (a * t).sin() / (b * t).sin(),
                e18_lattice(p),
                move |k, c, s| sin_shift(a, c, s) / (parity(k) * (b * s).sin()),
            )
            .with_removable(0.0, a / b)
        })
        .closed_fn(|p, x, y| {
            let z = Complex::new(x, y);
            ((z * p.a()).sinh() / (z * p.b()).sinh()).re
        })
        .analytic_fn(|p, z| (z * p.a()).sinh() / (z * p.b()).sinh())
        .lattice_fn(e18_lattice)
        .imag(ImagBoundary::Zero)
        .notes("removable point t = 0 with limit a/b"),
        EntrySpec::new(
            "E19",
            "4.4",
            Some("3.743.2"),
            FullLine,
            &[A, B],
            "0 < a < b",
            PointRule::Any,
        )
        .admit(|p| p.a() > 0.0 && p.a() < p.b())
        .boundary_fn(|p| {
            let (a, b) = (p.a(), p.b());
            lattice_data(
                move |t| -t * (a * t).sin() / (b * t).cos(),
                e19_lattice(p),
                move |k, c, s| (c + s) * sin_shift(a, c, s) / (parity(k) * (b * s).sin()),
            )
        })
        .closed_fn(|p, x, y| {
            let z = Complex::new(x, y);
            (z * (z * p.a()).sinh() / (z * p.b()).cosh()).re
        })
        .analytic_fn(|p, z| z * (z * p.a()).sinh() / (z * p.b()).cosh())
        .lattice_fn(e19_lattice)
        .imag(ImagBoundary::Zero)
        .notes("boundary data -t sin(at)/cos(bt)"),
        EntrySpec::new(
            "E20",
            "4.5",
            Some("3.743.3"),
            FullLine,
            &[A, B],
            "0 < a < b",
            PointRule::Any,
        )
        .admit(|p| p.a() > 0.0 && p.a() < p.b())
        .boundary_fn(|p| {
            let (a, b) = (p.a(), p.b());
            lattice_data(
                move |t| t * (a * t).cos() / (b * t).sin(),
                e20_lattice(p),
                move |k, c, s| (c + s) * cos_shift(a, c, s) / (parity(k) * (b * s).sin()),
            )
            .with_removable(0.0, 1.0 / b)
        })
        .closed_fn(|p, x, y| {
            let z = Complex::new(x, y);
            (z * (z * p.a()).cosh() / (z * p.b()).sinh()).re
        })
        .analytic_fn(|p, z| z * (z * p.a()).cosh() / (z * p.b()).sinh())
        .lattice_fn(e20_lattice)
        .imag(ImagBoundary::Zero)
        .notes("removable point t = 0 with limit 1/b"),
        EntrySpec::new(
            "E21",
            "4.6",
            Some("3.743.4"),
            FullLine,
            &[A, B],
            "0 < a < b",
            PointRule::Any,
        )
        .admit(|p| p.a() > 0.0 && p.a() < p.b())
        .boundary_fn(|p| {
            let (a, b) = (p.a(), p.b());
            lattice_data(
                move |t| (a * t).cos() / (b * t).cos(),
                e21_lattice(p),
                move |k, c, s| -cos_shift(a, c, s) / (parity(k) * (b * s).sin()),
            )
        })
        .closed_fn(|p, x, y| {
            let z = Complex::new(x, y);
            ((z * p.a()).cosh() / (z * p.b()).cosh()).re
        })
        .analytic_fn(|p, z| (z * p.a()).cosh() / (z * p.b()).cosh())
        .lattice_fn(e21_lattice)
        .imag(ImagBoundary::Zero),
        EntrySpec::new(
            "E22",
            "4.7",
            Some("3.744"),
            FullLine,
            &[A, B],
            "0 < a < b",
            PointRule::Any,
        )
        .admit(|p| p.a() > 0.0 && p.a() < p.b())
        .boundary_fn(|p| {
            let (a, b) = (p.a(), p.b());
            lattice_data(
                move |t| (a * t).sin() / (t * (b * t).cos()),
                e22_lattice(p),
                move |k, c, s| -sin_shift(a, c, s) / ((c + s) * parity(k) * (b * s).sin()),
            )
            .with_removable(0.0, a)
        })
        .closed_fn(|p, x, y| {
            let z = Complex::new(x, y);
            ((z * p.a()).sinh() / (z * (z * p.b()).cosh())).re
        })
        .analytic_fn(|p, z| (z * p.a()).sinh() / (z * (z * p.b()).cosh()))
        .lattice_fn(e22_lattice)
        .imag(ImagBoundary::Zero)
        .notes("removable point t = 0 with limit a"),
        EntrySpec::new(
            "E24",
            "5.1",
            None,
            HalfLine,
            &[A, B],
            "0 <= a < b",
            PointRule::RealAxis,
        )
        .admit(|p| p.a() >= 0.0 && p.a() < p.b())
        .boundary_fn(hardy_data)
        .scale_fn(|_, x| PI / (2.0 * x))
        .closed_fn(|p, x, _| PI * (p.a() * x).cosh() / ((2.0 * p.b() * x).exp() + 1.0))
        .analytic_fn(|p, z| z * (z * p.a()).cosh() * one_over_exp_plus_one(z, p.b()))
        .lattice_fn(hardy_lattice)
        .notes("continuous in a at a = 0"),
        EntrySpec::new(
            "E25",
            "5.3",
            Some("3.749.1"),
            HalfLine,
            &[B],
            "b > 0",
            PointRule::RealAxis,
        )
        .admit(|p| p.b() > 0.0)
        .boundary_fn(tan_data)
        .scale_fn(|_, x| PI / (2.0 * x))
        .closed_fn(|p, x, _| PI / ((2.0 * p.b() * x).exp() + 1.0))
        .analytic_fn(|p, z| z * one_over_exp_plus_one(z, p.b()))
        .lattice_fn(tan_lattice)
        .notes("limit a -> 0 of E24"),
        EntrySpec::new(
            "E26",
            "5.4",
            None,
            HalfLine,
            &[B],
            "b > 0",
            PointRule::RealAxis,
        )
        .admit(|p| p.b() > 0.0)
        .boundary_fn(tan_data)
        .scale_fn(|_, x| PI / (2.0 * x))
        .closed_fn(|p, x, _| -FRAC_PI_2 * (p.b() * x).tanh())
        .analytic_fn(|p, z| z * one_over_exp_plus_one(z, p.b()))
        .lattice_fn(tan_lattice)
        .witness()
        .notes(
            "naive a = b substitution into the sin(at)/cos(bt) integral; not the principal value",
        ),
    ]
}
