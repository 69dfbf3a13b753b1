//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::time::{Duration, Instant};

use nafl_core::logic::{entails, formulas_up_to_depth};
use nafl_core::scenarios::{builtin, run_scenario, TimelineReport};
use nafl_core::{parse_formula, Atom, Formula, NonclassicalModel, PropStatus, Theory, TruthValue};
use photon_sim::{
    analytic_blocked_fraction, make_grid, reconstruct, simulate_chunked, Mode, SimConfig, SimResult,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn f(s: &str) -> Formula {
    parse_formula(s).unwrap()
}

fn atoms(names: &[&str]) -> Vec<Atom> {
    names.iter().map(|n| Atom::new(n).unwrap()).collect()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

// Truth-table oracle, independent of the library's evaluators.

fn truth(phi: &Formula, v: &BTreeMap<String, bool>) -> bool {
    match phi {
        Formula::Atom(a) => v[a.name()],
        Formula::Not(x) => !truth(x, v),
        Formula::And(a, b) => truth(a, v) && truth(b, v),
        Formula::Or(a, b) => truth(a, v) || truth(b, v),
        Formula::Implies(a, b) => !truth(a, v) || truth(b, v),
        Formula::Iff(a, b) => truth(a, v) == truth(b, v),
    }
}

fn models(names: &[&str], axioms: &[Formula]) -> Vec<BTreeMap<String, bool>> {
    (0..1u32 << names.len())
        .map(|bits| {
            names
                .iter()
                .enumerate()
                .map(|(i, n)| (n.to_string(), bits >> i & 1 == 1))
                .collect::<BTreeMap<_, _>>()
        })
        .filter(|v| axioms.iter().all(|a| truth(a, v)))
        .collect()
}

fn brute_entails(names: &[&str], axioms: &[Formula], phi: &Formula) -> bool {
    models(names, axioms).iter().all(|v| truth(phi, v))
}

fn brute_decided(names: &[&str], axioms: &[Formula], phi: &Formula) -> bool {
    brute_entails(names, axioms, phi) || brute_entails(names, axioms, &Formula::not(phi.clone()))
}

fn brute_legal(names: &[&str], axioms: &[Formula], phi: &Formula) -> bool {
    !brute_decided(names, axioms, phi)
        || phi
            .atoms()
            .iter()
            .all(|a| brute_decided(names, axioms, &Formula::Atom(a.clone())))
}

fn legality_oracle() -> Outcome {
    let started = Instant::now();
    let ab = ["A", "B"];
    let all = formulas_up_to_depth(&atoms(&ab), 3);
    let theories: [&[&str]; 4] = [&[], &["A"], &["A -> B"], &["~A | B", "~B"]];
    let mut checked = 0;
    for axioms in theories {
        let axioms: Vec<Formula> = axioms.iter().map(|s| f(s)).collect();
        let t = Theory::new("T", atoms(&ab), axioms.clone()).map_err(|e| e.to_string())?;
        for phi in &all {
            let got = t.is_legal(phi).map_err(|e| e.to_string())?;
            ensure(got == brute_legal(&ab, &axioms, phi), || {
                format!("is_legal({phi}) = {got} over {axioms:?}")
            })?;
            checked += 1;
        }
    }
    let t0 = Theory::empty("T0", atoms(&ab)).unwrap();
    let qm = Theory::new("QM", atoms(&["P", "Q"]), vec![f("Q -> P")]).unwrap();
    let examples = [
        (&t0, "A -> B", true),
        (&t0, "(A & (A -> B)) -> B", false),
        (&t0, "~~A <-> A", false),
        (&qm, "P | ~P", false),
        (&qm, "P & ~P", false),
    ];
    for (t, src, expected) in examples {
        let got = t.is_legal(&f(src)).unwrap();
        ensure(got == expected, || format!("{src}: legal = {got}"))?;
    }
    let elapsed = started.elapsed();
    ensure(elapsed < Duration::from_secs(5), || {
        format!("took {elapsed:?}")
    })?;
    Ok(format!(
        "{checked} formula/theory pairs over {{A,B}} depth <= 3 ({} formulas) plus worked examples in {elapsed:.2?}",
        all.len()
    ))
}

fn random_formula(rng: &mut ChaCha8Rng, names: &[&str], depth: u32) -> Formula {
    if depth <= 1 || rng.random_bool(0.3) {
        return Formula::atom(names[rng.random_range(0..names.len())]);
    }
    let a = random_formula(rng, names, depth - 1);
    match rng.random_range(0..5) {
        0 => Formula::not(a),
        k => {
            let b = random_formula(rng, names, depth - 1);
            match k {
                1 => Formula::and(a, b),
                2 => Formula::or(a, b),
                3 => Formula::implies(a, b),
                _ => Formula::iff(a, b),
            }
        }
    }
}

fn nonclassical_models() -> Outcome {
    let pool = ["A", "B", "C", "D"];
    let mut rng = ChaCha8Rng::seed_from_u64(20_240_601);
    let (mut accepted, mut attempts, mut superposed_checks) = (0, 0, 0);
    while accepted < 1000 {
        attempts += 1;
        ensure(attempts < 200_000, || {
            format!("only {accepted} theories after {attempts} draws")
        })?;
        let n = rng.random_range(1..=4);
        let names = &pool[..n];
        let k = rng.random_range(0..=4);
        let axioms: Vec<Formula> = (0..k).map(|_| random_formula(&mut rng, names, 3)).collect();
        if models(names, &axioms).is_empty() {
            continue;
        }
        let Ok(theory) = Theory::new("T", atoms(names), axioms.clone()) else {
            continue;
        };
        let open: Vec<Atom> = theory
            .atom_statuses()
            .map_err(|e| e.to_string())?
            .into_iter()
            .filter(|(_, s)| *s == PropStatus::Undecidable)
            .map(|(a, _)| a)
            .collect();
        if open.is_empty() {
            continue;
        }
        let model = NonclassicalModel::build(&theory).map_err(|e| format!("{axioms:?}: {e}"))?;
        for p in open {
            let contra = Formula::contradiction_of(Formula::Atom(p.clone()));
            ensure(model.nc_eval(&contra), || {
                format!("{p} & ~{p} false over {axioms:?}")
            })?;
            ensure(!entails(&axioms, &contra).unwrap(), || {
                format!("{axioms:?} entails {contra}")
            })?;
            ensure(!brute_entails(names, &axioms, &contra), || {
                "oracle disagrees".into()
            })?;
            superposed_checks += 1;
        }
        accepted += 1;
    }
    Ok(format!(
        "{accepted} random theories ({attempts} draws), {superposed_checks} superposed atoms, 0 failures"
    ))
}

fn values(r: &TimelineReport, label: &str) -> Result<Vec<TruthValue>, String> {
    r.row(label)
        .map(|row| row.values.clone())
        .ok_or_else(|| format!("no truth row '{label}'"))
}

fn afshar_golden() -> Outcome {
    use TruthValue::{Neither, True};
    let s = builtin("afshar").map_err(|e| e.to_string())?;
    let r = run_scenario(&s).map_err(|e| e.to_string())?;
    let again = run_scenario(&builtin("afshar").unwrap()).unwrap();
    ensure(r.to_string() == again.to_string(), || {
        "reports differ between runs".into()
    })?;
    ensure(values(&r, "P")? == [Neither, Neither, True], || {
        "P row".into()
    })?;
    for t in [0.0, 0.5, 1.0, 1.999] {
        ensure(r.timeline.truth_at(t, &f("P")) == Ok(Neither), || {
            format!("P at {t}")
        })?;
    }
    for t in [2.0, 3.0, 100.0] {
        ensure(r.timeline.truth_at(t, &f("P")) == Ok(True), || {
            format!("P at {t}")
        })?;
    }
    ensure(
        values(&r, "retro P [t0,t2)")? == [Neither, Neither, True],
        || "retro row".into(),
    )?;
    ensure(r.retro.len() == 1 && r.retro[0].asserted_at == "t2", || {
        "retro assertion".into()
    })?;
    ensure(r.bcp.passed(), || r.bcp.verdict())?;
    let contradiction = r
        .rejections
        .iter()
        .find(|x| x.formulas == [f("P & ~P")])
        .ok_or("P & ~P was not rejected")?;
    ensure(contradiction.diagnosis == "illegal axiom", || {
        contradiction.diagnosis.clone()
    })?;
    let table: Vec<(&str, f64, f64)> = r
        .duality_records
        .iter()
        .map(|d| (d.label.as_str(), d.d, d.v))
        .collect();
    ensure(table == [("t1", 0.0, 1.0), ("t2", 1.0, 0.0)], || {
        format!("{table:?}")
    })?;
    ensure(r.duality.passed() && r.expectations_met(), || {
        "audit".into()
    })?;
    Ok("P neither on [t0,t2), true from t2; retro from t2; BCP PASS; P & ~P illegal; duality {t1:(0,1), t2:(1,0)}; byte-identical".into())
}

fn grid_superfluous() -> Outcome {
    let a = run_scenario(&builtin("afshar").unwrap()).map_err(|e| e.to_string())?;
    let b = run_scenario(&builtin("afshar_nogrid").unwrap()).map_err(|e| e.to_string())?;
    ensure(a.truth == b.truth, || "truth tables differ".into())?;
    ensure(a.duality_records == b.duality_records, || {
        "duality tables differ".into()
    })?;
    Ok(format!(
        "{} truth rows x {} times and {} duality records identical",
        a.truth.len(),
        a.columns.len(),
        a.duality_records.len()
    ))
}

fn retroactivity() -> Outcome {
    let mut notes = Vec::new();
    for (name, retro) in [("schrodinger_cat", "U"), ("coin_toss", "Q")] {
        let r = run_scenario(&builtin(name).unwrap()).map_err(|e| e.to_string())?;
        let phi = f(retro);
        let t2 = r.timeline.interpretation_at(2.0).unwrap();
        ensure(t2.proves(&phi).unwrap(), || {
            format!("{name}: {retro} unprovable at t2")
        })?;
        let row = values(&r, &format!("retro {retro} [t0,t2)"))?;
        ensure(row[..2].iter().all(|v| *v == TruthValue::Neither), || {
            format!("{name}: {row:?}")
        })?;
        ensure(row[2] == TruthValue::True, || format!("{name}: {row:?}"))?;
        for t in [0.0, 0.7, 1.0, 1.5, 1.999_999] {
            let v = r.timeline.truth_at(t, &phi).unwrap();
            ensure(v == TruthValue::Neither, || {
                format!("{name}: {retro} = {v} at {t}")
            })?;
        }
        notes.push(format!("{name}: {retro} provable at t2, neither before"));
    }
    Ok(notes.join("; "))
}

fn band(p: f64, n: u64) -> f64 {
    3.0 * (p * (1.0 - p) / n as f64).sqrt()
}

fn flat_cfg(mode: Mode, wire_width: f64) -> SimConfig {
    SimConfig {
        period: 1.0,
        wire_width,
        mode,
        photons: 1_000_000,
        seed: 42,
        grid: true,
        ..SimConfig::default()
    }
}

fn simulator_vs_oracle() -> Outcome {
    let w = 0.05;
    let a = w / 2.0;
    let closed_form = 2.0 * (a - (2.0 * PI * a).sin() / (2.0 * PI));
    let started = Instant::now();
    let q_cfg = flat_cfg(Mode::Quantum, w);
    let q = simulate_chunked(&q_cfg, 1).map_err(|e| e.to_string())?;
    let c_cfg = flat_cfg(Mode::Classical, w);
    let c = simulate_chunked(&c_cfg, 1).map_err(|e| e.to_string())?;
    let elapsed = started.elapsed();

    let q_oracle = analytic_blocked_fraction(Mode::Quantum, &q_cfg);
    ensure((q_oracle - closed_form).abs() < 1e-9, || {
        format!("oracle {q_oracle} vs {closed_form}")
    })?;
    ensure((q_oracle - 2.06e-4).abs() < 1e-6, || {
        format!("oracle {q_oracle}")
    })?;
    let n = q.photons();
    let qf = q.blocked_fraction();
    ensure((qf - q_oracle).abs() < band(q_oracle, n), || {
        format!("quantum {qf} vs {q_oracle}")
    })?;
    let cf = c.blocked_fraction();
    ensure((cf - 0.05).abs() < band(0.05, n), || {
        format!("classical {cf} vs 0.05")
    })?;
    ensure(qf < 1e-3, || format!("quantum {qf} not below 0.1%"))?;
    ensure(elapsed < Duration::from_secs(60), || {
        format!("took {elapsed:?}")
    })?;

    let cal_w = SimConfig::CALIBRATED_WIRE_RATIO;
    let cal_q = analytic_blocked_fraction(Mode::Quantum, &flat_cfg(Mode::Quantum, cal_w));
    let cal_c = analytic_blocked_fraction(Mode::Classical, &flat_cfg(Mode::Classical, cal_w));
    let cal_run =
        simulate_chunked(&flat_cfg(Mode::Quantum, cal_w), 1).map_err(|e| e.to_string())?;
    ensure((cal_c - 0.066).abs() < 1e-9, || {
        format!("calibrated classical {cal_c}")
    })?;
    ensure(cal_q < 1e-3 && cal_run.blocked_fraction() < 1e-3, || {
        format!("calibrated quantum {cal_q}")
    })?;
    Ok(format!(
        "quantum {qf:.3e} (oracle {q_oracle:.4e}), classical {cf:.4e} (oracle 5.0e-2), N={n}, single-threaded {elapsed:.2?}; \
         calibration w/period={cal_w}: classical {cal_c:.3e}, quantum {cal_q:.3e} (simulated {:.3e}), below 1e-3",
        cal_run.blocked_fraction()
    ))
}

fn reconstruction() -> Outcome {
    let cfg = SimConfig {
        grid: false,
        bins: 100,
        ..flat_cfg(Mode::Quantum, 0.05)
    };
    let q = simulate_chunked(&cfg, 4).map_err(|e| e.to_string())?;
    let r = reconstruct(&q, &cfg, 100).map_err(|e| e.to_string())?;
    ensure(r.fit.p_value > 0.01, || {
        format!("quantum p = {}", r.fit.p_value)
    })?;
    ensure(r.minima_aligned, || format!("minima {:?}", r.minima))?;
    ensure(r.minima.len() == make_grid(&cfg).len(), || {
        "missing minima".into()
    })?;
    let classical = SimConfig {
        mode: Mode::Classical,
        ..cfg.clone()
    };
    let c = simulate_chunked(&classical, 4).map_err(|e| e.to_string())?;
    let cr = reconstruct(&c, &cfg, 100).map_err(|e| e.to_string())?;
    ensure(!cr.passes(0.01), || {
        format!("classical passed with p = {}", cr.fit.p_value)
    })?;
    Ok(format!(
        "quantum chi2 = {:.1} (dof {}, p = {:.3}), {} minima within half a bin; classical p = {:.1e}",
        r.fit.statistic,
        r.fit.dof,
        r.fit.p_value,
        r.minima.len(),
        cr.fit.p_value
    ))
}

fn bits(r: &SimResult) -> Vec<(bool, u64, bool)> {
    r.records
        .iter()
        .map(|p| (p.slit == photon_sim::Slit::U, p.x.to_bits(), p.blocked))
        .collect()
}

fn determinism() -> Outcome {
    let cfg = SimConfig {
        photons: 200_003,
        seed: 9,
        ..SimConfig::default()
    };
    let runs: Vec<SimResult> = [1, 2, 8]
        .into_iter()
        .map(|c| simulate_chunked(&cfg, c))
        .collect::<Result<_, _>>()
        .map_err(|e| e.to_string())?;
    let reference = bits(&runs[0]);
    for (r, chunks) in runs.iter().zip([1, 2, 8]) {
        ensure(bits(r) == reference, || format!("{chunks} chunks differ"))?;
        ensure(r == &runs[0], || format!("{chunks} chunks: result differs"))?;
    }
    Ok(format!(
        "{} photons bit-identical for 1, 2 and 8 chunks",
        cfg.photons
    ))
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("legality oracle equivalence", legality_oracle),
        (
            "nonclassical model for undecidable atoms",
            nonclassical_models,
        ),
        ("afshar golden timeline", afshar_golden),
        ("grid superfluous at the logical level", grid_superfluous),
        ("cat and coin retroactivity", retroactivity),
        ("simulator vs oracle", simulator_vs_oracle),
        ("interference reconstruction", reconstruction),
        ("chunk-independent determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match std::panic::catch_unwind(check) {
            Ok(Ok(detail)) => println!("PASS [{}] {name}: {detail}", i + 1),
            Ok(Err(why)) => {
                failed += 1;
                println!("FAIL [{}] {name}: {why}", i + 1);
            }
            Err(_) => {
                failed += 1;
                println!("FAIL [{}] {name}: panicked", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
