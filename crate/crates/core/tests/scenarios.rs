use nafl_core::scenarios::{
    assign_duality, builtin, builtin_text, duality_check, parse_scenario, run_scenario,
    BUILTIN_NAMES,
};
use nafl_core::TruthValue::{Neither, True};

#[test]
fn every_builtin_passes_its_audits() {
    for name in BUILTIN_NAMES {
        let s = builtin(name).unwrap();
        let r = run_scenario(&s).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(r.bcp.passed(), "{name}");
        assert!(r.duality.passed(), "{name}");
        assert!(r.expectations_met(), "{name}: {:?}", r.mismatches);
        let again = duality_check(&assign_duality(&s, &r.timeline).unwrap());
        assert_eq!(again, r.duality);
    }
}

#[test]
fn reports_are_byte_identical() {
    for name in BUILTIN_NAMES {
        let a = run_scenario(&parse_scenario(builtin_text(name).unwrap()).unwrap()).unwrap();
        let b = run_scenario(&parse_scenario(builtin_text(name).unwrap()).unwrap()).unwrap();
        assert_eq!(a.to_string(), b.to_string());
    }
}

#[test]
fn grid_variants_share_tables() {
    let with = run_scenario(&builtin("afshar").unwrap()).unwrap();
    for other in ["afshar_nogrid", "delayed_choice"] {
        let r = run_scenario(&builtin(other).unwrap()).unwrap();
        assert_eq!(r.truth, with.truth, "{other}");
        assert_eq!(r.duality_records, with.duality_records, "{other}");
    }
}

#[test]
fn afshar_duality_table() {
    let r = run_scenario(&builtin("afshar").unwrap()).unwrap();
    let table: Vec<(&str, f64, f64)> = r
        .duality_records
        .iter()
        .map(|d| (d.label.as_str(), d.d, d.v))
        .collect();
    assert_eq!(table, [("t1", 0.0, 1.0), ("t2", 1.0, 0.0)]);
}

#[test]
fn coin_retro_hidden_before_reveal() {
    let r = run_scenario(&builtin("coin_toss").unwrap()).unwrap();
    assert_eq!(
        r.row("retro Q [t0,t2)").unwrap().values,
        [Neither, Neither, True]
    );
    assert_eq!(r.row("P").unwrap().values, [Neither, Neither, True]);
    let t2 = r.timeline.interpretation_at(2.0).unwrap();
    assert!(t2.proves(&nafl_core::parse_formula("Q").unwrap()).unwrap());
}

#[test]
fn never_measured_run_is_all_wave() {
    let s = parse_scenario("scenario s\natom P \"p\"\ntime a 0\ntime b 1\ntime c 5\ntrack P\n")
        .unwrap();
    let r = run_scenario(&s).unwrap();
    assert!(r.duality_records.iter().all(|d| (d.d, d.v) == (0.0, 1.0)));
    assert_eq!(r.duality_records.len(), 3);
}
