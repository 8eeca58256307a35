//! Entries whose boundary data are finite on the whole line.

use std::f64::consts::{FRAC_PI_2, PI};

use super::{cos_wave, sin_wave, EntrySpec, LineDomain, Param, PointRule};
use crate::kernel::{TailModel, TailPart};
use crate::series::sech_series;
use crate::{Boundary, Complex};

use LineDomain::{FullLine, HalfLine};
use Param::{Alpha, A, B};

fn parts(list: impl IntoIterator<Item = Option<TailPart<f64>>>) -> TailModel<f64> {
    TailModel::Parts(list.into_iter().flatten().collect())
}

fn e15_closed(a: f64, b: f64, x: f64) -> f64 {
    // (b e^{-ax} - x e^{-ab}) / (b^2 - x^2) rewritten around x = b
    let d = x - b;
    let q = if d == 0.0 { a } else { -(-a * d).exp_m1() / d };
    PI / (2.0 * b * x) * (-a * b).exp() * (1.0 + b * q) / (2.0 * b + d)
}

pub(super) fn entries() -> Vec<EntrySpec> {
    vec![
        EntrySpec::new("E1", "2.2a", None, FullLine, &[A], "a > 0", PointRule::Any)
            .admit(|p| p.a() > 0.0)
            .boundary_fn(|p| {
                let a = p.a();
                Boundary::new(move |t| (a * t).cos(), parts([Some(cos_wave(a, |_| 1.0))]))
            })
            .scale_fn(|_, x| PI / x)
            .closed_fn(|p, x, y| PI / x * (-p.a() * x).exp() * (p.a() * y).cos())
            .analytic_fn(|p, z| (-z * p.a()).exp()),
        EntrySpec::new("E2", "2.2b", None, FullLine, &[A], "a > 0", PointRule::Any)
            .admit(|p| p.a() > 0.0)
            .boundary_fn(|p| {
                let a = p.a();
                Boundary::new(move |t| (a * t).sin(), parts([sin_wave(a, |_| 1.0)]))
            })
            .scale_fn(|_, x| PI / x)
            .closed_fn(|p, x, y| PI / x * (-p.a() * x).exp() * (p.a() * y).sin())
            .analytic_fn(|p, z| Complex::i() * (-z * p.a()).exp()),
        EntrySpec::new("E3", "2.3", None, FullLine, &[A], "a > 0", PointRule::Any)
            .admit(|p| p.a() > 0.0)
            .boundary_fn(|p| {
                let a = p.a();
                Boundary::new(move |t| t * (a * t).sin(), parts([sin_wave(a, |t| t)]))
            })
            .closed_fn(|p, x, y| {
                let a = p.a();
                (-a * x).exp() * (x * (a * y).cos() + y * (a * y).sin())
            })
            .analytic_fn(|p, z| z * (-z * p.a()).exp())
            .notes("unbounded on vertical lines; conditionally convergent tails"),
        EntrySpec::new("E4", "2.4", None, FullLine, &[A], "a > 0", PointRule::Any)
            .admit(|p| p.a() > 0.0)
            .boundary_fn(|p| {
                let a = p.a();
                Boundary::new(
                    move |t| t * (a * t).cos(),
                    parts([Some(cos_wave(a, |t| t))]),
                )
            })
            .closed_fn(|p, x, y| {
                let a = p.a();
                (-a * x).exp() * (y * (a * y).cos() - x * (a * y).sin())
            })
            .analytic_fn(|p, z| -Complex::i() * z * (-z * p.a()).exp())
            .notes("imaginary part of z e^{-az}; conditionally convergent tails"),
        EntrySpec::new(
            "E5",
            "2.5",
            Some("3.723.3"),
            HalfLine,
            &[A],
            "a > 0",
            PointRule::RealAxis,
        )
        .admit(|p| p.a() > 0.0)
        .boundary_fn(|p| {
            let a = p.a();
            Boundary::new(move |t| t * (a * t).sin(), parts([sin_wave(a, |t| t)]))
        })
        .scale_fn(|_, x| PI / (2.0 * x))
        .closed_fn(|p, x, _| FRAC_PI_2 * (-p.a() * x).exp())
        .analytic_fn(|p, z| z * (-z * p.a()).exp()),
        EntrySpec::new(
            "E6",
            "2.6",
            Some("3.723.2"),
            FullLine,
            &[A],
            "a > 0",
            PointRule::RealAxis,
        )
        .admit(|p| p.a() > 0.0)
        .boundary_fn(|p| {
            let a = p.a();
            Boundary::new(move |t| (a * t).cos(), parts([Some(cos_wave(a, |_| 1.0))]))
        })
        .scale_fn(|_, x| PI / x)
        .closed_fn(|p, x, _| PI / x * (-p.a() * x).exp())
        .analytic_fn(|p, z| (-z * p.a()).exp()),
        EntrySpec::new(
            "E7",
            "2.7",
            Some("3.784.6"),
            HalfLine,
            &[A],
            "a > 0",
            PointRule::UnitPoint,
        )
        .admit(|p| p.a() > 0.0)
        .boundary_fn(|p| {
            let a = p.a();
            Boundary::new(
                move |t| (a * t).cos() + t * (a * t).sin(),
                parts([Some(cos_wave(a, |_| 1.0)), sin_wave(a, |t| t)]),
            )
        })
        .scale_fn(|_, x| PI / (2.0 * x))
        .closed_fn(|p, _, _| PI * (-p.a()).exp())
        .analytic_fn(|p, z| (z + 1.0) * (-z * p.a()).exp()),
        EntrySpec::new(
            "E8",
            "2.9",
            Some("3.742.3"),
            HalfLine,
            &[A, B],
            "0 < a <= b",
            PointRule::RealAxis,
        )
        .admit(|p| p.a() > 0.0 && p.a() <= p.b())
        .boundary_fn(|p| {
            let (a, b) = (p.a(), p.b());
            Boundary::new(
                move |t| (b * t).cos() * (a * t).cos(),
                parts([
                    Some(cos_wave(b - a, |_| 0.5)),
                    Some(cos_wave(b + a, |_| 0.5)),
                ]),
            )
        })
        .scale_fn(|_, x| PI / (2.0 * x))
        .closed_fn(|p, x, _| PI / (2.0 * x) * (-p.b() * x).exp() * (p.a() * x).cosh())
        .analytic_fn(|p, z| (-z * p.b()).exp() * (z * p.a()).cosh())
        .notes("holds at a = b"),
        EntrySpec::new(
            "E9",
            "2.10",
            Some("3.742.5"),
            HalfLine,
            &[A, B],
            "0 < a < b",
            PointRule::RealAxis,
        )
        .admit(|p| p.a() > 0.0 && p.a() < p.b())
        .boundary_fn(|p| {
            let (a, b) = (p.a(), p.b());
            Boundary::new(
                move |t| t * (b * t).sin() * (a * t).cos(),
                parts([sin_wave(b + a, |t| 0.5 * t), sin_wave(b - a, |t| 0.5 * t)]),
            )
        })
        .scale_fn(|_, x| PI / (2.0 * x))
        .closed_fn(|p, x, _| FRAC_PI_2 * (-p.b() * x).exp() * (p.a() * x).cosh())
        .analytic_fn(|p, z| z * (-z * p.b()).exp() * (z * p.a()).cosh())
        .notes("minus the b-derivative of E8"),
        EntrySpec::new(
            "E10",
            "2.11",
            Some("3.742.5"),
            HalfLine,
            &[A, B],
            "0 < a < b",
            PointRule::RealAxis,
        )
        .admit(|p| p.a() > 0.0 && p.a() < p.b())
        .boundary_fn(|p| {
            let (a, b) = (p.a(), p.b());
            Boundary::new(
                move |t| t * (b * t).cos() * (a * t).sin(),
                parts([sin_wave(a + b, |t| 0.5 * t), sin_wave(a - b, |t| 0.5 * t)]),
            )
        })
        .scale_fn(|_, x| PI / (2.0 * x))
        .closed_fn(|p, x, _| -FRAC_PI_2 * (-p.b() * x).exp() * (p.a() * x).sinh())
        .analytic_fn(|p, z| -z * (-z * p.b()).exp() * (z * p.a()).sinh())
        .notes("minus the a-derivative of E8"),
        EntrySpec::new(
            "E11",
            "2.12",
            None,
            HalfLine,
            &[A, B],
            "a > 0, b > 0",
            PointRule::RealAxis,
        )
        .admit(|p| p.a() > 0.0 && p.b() > 0.0)
        .boundary_fn(|p| {
            let w = p.a() + p.b();
            Boundary::new(move |t| t * (w * t).sin(), parts([sin_wave(w, |t| t)]))
        })
        .scale_fn(|_, x| PI / (2.0 * x))
        .closed_fn(|p, x, _| FRAC_PI_2 * (-(p.a() + p.b()) * x).exp())
        .analytic_fn(|p, z| z * (-z * (p.a() + p.b())).exp())
        .notes("sum of E9 and E10; E5 with a replaced by a + b"),
        EntrySpec::new(
            "E12",
            "2.14",
            Some("4.535.9"),
            HalfLine,
            &[Alpha],
            "alpha > 0",
            PointRule::RealAxis,
        )
        .admit(|p| p.alpha() > 0.0)
        .boundary_fn(|p| {
            let al = p.alpha();
            let f = move |t: f64| (al * t).atan() / t;
            Boundary::new(f, TailModel::Parts(vec![TailPart::smooth(f)])).with_removable(0.0, al)
        })
        .scale_fn(|_, x| PI / (2.0 * x))
        .closed_fn(|p, x, _| PI / (2.0 * x * x) * (p.alpha() * x).ln_1p())
        .analytic_fn(|p, z| (z * p.alpha() + 1.0).ln() / z)
        .notes("removable point t = 0 with limit alpha"),
        EntrySpec::new(
            "E13",
            "2.15",
            Some("3.725.3"),
            HalfLine,
            &[A, B],
            "0 < a < b",
            PointRule::RealAxis,
        )
        .admit(|p| p.a() > 0.0 && p.a() < p.b())
        .boundary_fn(sinc_product)
        .scale_fn(|_, x| PI / (2.0 * x))
        .closed_fn(|p, x, _| PI / (2.0 * x * x) * (-p.b() * x).exp() * (p.a() * x).sinh())
        .analytic_fn(|p, z| (-z * p.b()).exp() * (z * p.a()).sinh() / z)
        .notes("removable point t = 0 with limit a"),
        EntrySpec::new(
            "E14",
            "2.16",
            Some("3.725.3"),
            HalfLine,
            &[A, B],
            "0 < b < a",
            PointRule::RealAxis,
        )
        .admit(|p| p.b() > 0.0 && p.b() < p.a())
        .boundary_fn(sinc_product)
        .scale_fn(|_, x| PI / (2.0 * x))
        .closed_fn(|p, x, _| PI / (2.0 * x * x) * (1.0 - (-p.a() * x).exp() * (p.b() * x).cosh()))
        .analytic_fn(|p, z| (-(-z * p.a()).exp() * (z * p.b()).cosh() + 1.0) / z)
        .notes("removable point t = 0 with limit a"),
        EntrySpec::new(
            "E15",
            "2.17",
            Some("3.728"),
            HalfLine,
            &[A, B],
            "a > 0, b > 0",
            PointRule::RealAxis,
        )
        .admit(|p| p.a() > 0.0 && p.b() > 0.0)
        .boundary_fn(|p| {
            let (a, b) = (p.a(), p.b());
            Boundary::new(
                move |t| (a * t).cos() / (b * b + t * t),
                parts([Some(cos_wave(a, move |t| 1.0 / (b * b + t * t)))]),
            )
        })
        .scale_fn(|_, x| PI / (2.0 * x))
        .closed_fn(|p, x, _| e15_closed(p.a(), p.b(), x))
        .analytic_fn(|p, z| {
            let (a, b) = (p.a(), p.b());
            ((-z * a).exp() * b - z * (-a * b).exp()) / ((-z * z + b * b) * b)
        })
        .notes("numerator cos(at); closed form continued through x = b"),
        EntrySpec::new(
            "E23",
            "4.13",
            Some("3.522.3"),
            HalfLine,
            &[A],
            "a > 0",
            PointRule::RealAxis,
        )
        .admit(|p| p.a() > 0.0)
        .boundary_fn(|p| {
            let a = p.a();
            let f = move |t: f64| 1.0 / (a * t).cosh();
            Boundary::new(f, TailModel::Parts(vec![TailPart::smooth(f)]))
        })
        .scale_fn(|_, _| 0.5)
        .closed_fn(|p, x, _| {
            sech_series(p.a(), x, 1e-15)
                .map(|s| s.value)
                .unwrap_or(f64::NAN)
        })
        .notes("right side is an alternating series"),
    ]
}

fn sinc_product(p: &super::ParamSet) -> Boundary {
    let (a, b) = (p.a(), p.b());
    Boundary::new(
        move |t| (a * t).sin() * (b * t).cos() / t,
        parts([sin_wave(a + b, |t| 0.5 / t), sin_wave(a - b, |t| 0.5 / t)]),
    )
    .with_removable(0.0, a)
}
