use std::f64::consts::PI;

use proptest::prelude::*;

use poisson_pv::catalog::{lookup, residue_checks, ParamSet};
use poisson_pv::kernel::{harmonic_extension, BoundaryFunction, HalfPlanePoint, TailModel};
use poisson_pv::report::{parse_report_json, report_json};
use poisson_pv::series::{pole_series_with_budget, sech_series, sech_series_partial};
use poisson_pv::verify::{GridPoint, GridSpec, Record, RecordStatus, VerificationReport};
use poisson_pv::{kernel_tail_mass, poisson_kernel, QuadConfig};

fn pt(x: f64, y: f64) -> HalfPlanePoint<f64> {
    HalfPlanePoint::new(x, y).unwrap()
}

fn status() -> impl Strategy<Value = RecordStatus> {
    prop_oneof![
        Just(RecordStatus::Pass),
        Just(RecordStatus::Fail),
        Just(RecordStatus::Skip)
    ]
}

fn record() -> impl Strategy<Value = Record> {
    (
        status(),
        prop::option::of(-1e3..1e3f64),
        prop::option::of(-1e3..1e3f64),
        0.1..5.0f64,
        -2.0..2.0f64,
        0usize..1_000_000,
        prop::option::of("[a-z_]{1,12}"),
    )
        .prop_map(|(status, numeric, closed, x, y, n_evals, reason)| Record {
            entry_id: "E6/2.6/GR-3.723.2".into(),
            params: ParamSet::new().with_a(x / 3.0),
            x,
            y,
            numeric,
            closed,
            abs_err: numeric.zip(closed).map(|(n, c)| (n - c).abs()),
            rel_err: numeric.zip(closed).map(|(n, c)| (n - c).abs() / c.abs()),
            n_evals,
            wall_time: x * 1e-3,
            status,
            reason,
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn kernel_is_positive(x in 1e-3..1e3f64, y in -1e3..1e3f64, t in -1e4..1e4f64) {
        prop_assert!(poisson_kernel(pt(x, y), t).unwrap() > 0.0);
    }

    #[test]
    fn kernel_is_translation_invariant(x in 1e-2..1e2f64, y in -50.0..50.0f64, t in -50.0..50.0f64) {
        let shifted = poisson_kernel(pt(x, y), t).unwrap();
        let centred = poisson_kernel(pt(x, 0.0), t - y).unwrap();
        prop_assert!((shifted - centred).abs() <= 1e-13 * centred);
    }

    #[test]
    fn tail_mass_decreases_in_width(x in 1e-2..1e2f64, t in 1e-2..1e3f64, grow in 1.0..10.0f64) {
        let p = pt(x, 0.0);
        let near = kernel_tail_mass(p, t).unwrap();
        let far = kernel_tail_mass(p, t * (1.0 + grow)).unwrap();
        prop_assert!(near > 0.0 && near <= 1.0);
        prop_assert!(far < near);
    }

    #[test]
    fn constant_data_has_unit_extension(x in 0.1..10.0f64, y in -5.0..5.0f64) {
        let one = BoundaryFunction::new(|_t: f64| 1.0, TailModel::Bounded(1.0));
        let cfg = QuadConfig { tol_abs: 1e-13, tol_rel: 1e-13, ..QuadConfig::default() };
        let r = harmonic_extension(&one, pt(x, y), &cfg).unwrap();
        prop_assert!((r.value - 1.0).abs() <= 1e-10, "{r:?}");
    }

    #[test]
    fn sech_series_decreases_in_x(a in 0.2..3.0f64, x in 0.1..5.0f64, dx in 0.01..2.0f64) {
        let lo = sech_series(a, x, 1e-13).unwrap().value;
        let hi = sech_series(a, x + dx, 1e-13).unwrap().value;
        prop_assert!(hi < lo && hi > 0.0);
    }

    #[test]
    fn alternating_partial_sums_bracket_the_limit(a in 0.2..3.0f64, x in 0.1..5.0f64, n in 1usize..50) {
        let full = sech_series(a, x, 1e-14).unwrap().value;
        let part = sech_series_partial(a, x, n).unwrap();
        prop_assert!((full - part.value).abs() <= part.tail_bound + 1e-13);
    }

    #[test]
    fn pole_series_budget_doubling(a in 0.3..3.0f64, x in 0.2..4.0f64, y in -3.0..3.0f64) {
        let e = lookup("E16").unwrap();
        let lat = e.pole_lattice(&ParamSet::new().with_a(a)).unwrap();
        let tol = 1e-10;
        let one = pole_series_with_budget(&lat, pt(x, y), tol, 500_000).unwrap();
        let two = pole_series_with_budget(&lat, pt(x, y), tol, 1_000_000).unwrap();
        prop_assert!((one.value - two.value).abs() <= 2.0 * one.tail_bound.max(f64::EPSILON));
    }

    #[test]
    fn residues_are_imaginary(a in 0.3..3.0f64, b in 0.3..3.0f64) {
        for key in ["E16", "E17", "E18", "E22", "E25"] {
            let e = lookup(key).unwrap();
            let p = ParamSet::new().with_a(a).with_b(a.max(b) * 1.01).restricted(e.params);
            for c in residue_checks(e, &p, -5..=5).unwrap() {
                prop_assert!(c.numeric_re.abs() < 1e-10, "{key} {c:?}");
                prop_assert!(c.abs_err() < 1e-8 * c.catalog.abs().max(1.0), "{key} {c:?}");
            }
        }
    }

    #[test]
    fn z_over_sinh_residue_formula(a in 0.3..3.0f64, k in 1i64..6) {
        let lat = lookup("E17").unwrap().pole_lattice(&ParamSet::new().with_a(a)).unwrap();
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        let expected = sign * k as f64 * PI / (a * a);
        prop_assert!((lat.residue(k) - expected).abs() <= 1e-13 * expected.abs());
        prop_assert_eq!(lat.residue(-k), -lat.residue(k));
    }

    #[test]
    fn report_json_round_trip(records in prop::collection::vec(record(), 0..20)) {
        let report = VerificationReport::from_records(records);
        let text = report_json(&report).unwrap();
        let back = parse_report_json(&text).unwrap();
        prop_assert_eq!(&back, &report);
        prop_assert_eq!(report_json(&back).unwrap(), text);
    }

    #[test]
    fn summary_counts_match_records(records in prop::collection::vec(record(), 0..40)) {
        let report = VerificationReport::from_records(records.clone());
        let s = report.summary;
        let count = |st| records.iter().filter(|r| r.status == st).count();
        prop_assert_eq!(s.n_pass, count(RecordStatus::Pass));
        prop_assert_eq!(s.n_fail, count(RecordStatus::Fail));
        prop_assert_eq!(s.n_skip, count(RecordStatus::Skip));
        prop_assert_eq!(s.n_pass + s.n_fail + s.n_skip, records.len());
    }

    #[test]
    fn explicit_grid_is_a_full_product(
        a in prop::collection::vec(0.1..3.0f64, 1..4),
        x in prop::collection::vec(0.1..3.0f64, 1..4),
    ) {
        let fmt = |v: &[f64]| v.iter().map(|z| z.to_string()).collect::<Vec<_>>().join(",");
        let spec = GridSpec::parse(&format!("a={};x={}", fmt(&a), fmt(&x))).unwrap();
        prop_assert_eq!(spec.a.as_deref(), Some(a.as_slice()));
        let points: Vec<GridPoint> = spec.points_for(lookup("E6").unwrap());
        prop_assert_eq!(points.len(), a.len() * x.len());
    }
}
