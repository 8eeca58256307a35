use poisson_pv::catalog::{entries, lookup, ParamSet};
use poisson_pv::report::{parse_report_json, report_csv, report_json};
use poisson_pv::verify::{
    default_grid, verify_catalog, verify_entry, GridSpec, Record, RecordStatus, Tolerances,
    REASON_CONSTRAINT, REASON_WITNESS,
};
use poisson_pv::QuadConfig;

fn without_timing(mut records: Vec<Record>) -> Vec<Record> {
    for r in &mut records {
        r.wall_time = 0.0;
    }
    records
}

#[test]
fn full_catalog_passes() {
    let report = verify_catalog(&QuadConfig::default());
    assert_eq!(
        report.summary.n_fail,
        0,
        "{:#?}",
        report
            .records
            .iter()
            .find(|r| r.status == RecordStatus::Fail)
    );
    assert_eq!(report.exit_code(), 0);
    assert!(report
        .records
        .iter()
        .all(|r| r.status != RecordStatus::Skip || r.reason.as_deref() == Some(REASON_WITNESS)));
    let n: usize = entries().iter().map(|e| default_grid(e).len()).sum();
    assert_eq!(report.records.len(), n);
}

#[test]
fn runs_are_deterministic() {
    let cfg = QuadConfig::default();
    for key in ["E6", "E16", "E21"] {
        let e = lookup(key).unwrap();
        let grid = default_grid(e);
        let first = verify_entry(e, &grid, Tolerances::for_entry(e), &cfg);
        let second = verify_entry(e, &grid, Tolerances::for_entry(e), &cfg);
        assert_eq!(
            without_timing(first.records),
            without_timing(second.records)
        );
    }
}

#[test]
fn e6_grid_passes_against_pi_over_e() {
    let e = lookup("E6").unwrap();
    let grid = GridSpec::parse("a=0.5,1,2;x=0.5,1,2")
        .unwrap()
        .points_for(e);
    assert_eq!(grid.len(), 9);
    let report = verify_entry(
        e,
        &grid,
        Tolerances {
            abs: 0.0,
            rel: 1e-8,
        },
        &QuadConfig::default(),
    );
    assert_eq!(report.summary.n_pass, 9);
    let at_one = report
        .records
        .iter()
        .find(|r| r.params == ParamSet::new().with_a(1.0) && r.x == 1.0)
        .unwrap();
    let pi_over_e = std::f64::consts::PI / std::f64::consts::E;
    assert!((at_one.closed.unwrap() - pi_over_e).abs() < 1e-15);
}

#[test]
fn constraint_violations_are_recorded() {
    let e = lookup("E8").unwrap();
    let grid = GridSpec::parse("a=2;b=1;x=1").unwrap().points_for(e);
    let report = verify_entry(e, &grid, Tolerances::for_entry(e), &QuadConfig::default());
    let r = &report.records[0];
    assert_eq!(r.status, RecordStatus::Fail);
    assert!(r.reason.as_deref().unwrap().starts_with(REASON_CONSTRAINT));
    assert_eq!(report.exit_code(), 1);
}

#[test]
fn witness_entry_is_skipped() {
    let e = lookup("E26").unwrap();
    let report = verify_entry(
        e,
        &default_grid(e),
        Tolerances::for_entry(e),
        &QuadConfig::default(),
    );
    assert_eq!(report.summary.n_skip, report.records.len());
    assert_eq!(report.exit_code(), 0);
}

#[test]
fn serialized_reports_are_stable() {
    let e = lookup("E19").unwrap();
    let report = verify_entry(
        e,
        &default_grid(e),
        Tolerances::for_entry(e),
        &QuadConfig::default(),
    );
    let json = report_json(&report).unwrap();
    let back = parse_report_json(&json).unwrap();
    assert_eq!(back, report);
    for key in [
        "entry_id",
        "params",
        "x",
        "y",
        "numeric",
        "closed",
        "abs_err",
        "rel_err",
        "n_evals",
        "wall_time",
        "status",
    ] {
        assert!(json.contains(&format!("\"{key}\"")), "{key}");
    }
    let csv = report_csv(&report).unwrap();
    assert_eq!(csv.lines().count(), report.records.len() + 1);
}
