//! Acceptance suite. Runs every criterion at its stated tolerance and prints
//! one PASS/FAIL line each; exits nonzero if any criterion fails.

use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use gravbound::decoherence::{
    convergence_check, evolve_numeric, evolve_numeric_on, overlap_complex, propagate_analytic,
    purity, DecoherenceParams, ExponentMode, PureState, Spectrum, TimeGrid,
};
use gravbound::limits::{
    black_hole_ops_bound, degree_of_parallelization, gravitational_ops_bound, margolus_levitin_ops,
    max_error_rate, parallel_error_constraint, serial_decoherence_error,
};
use gravbound::{exec, LogScalar, PhysConstants, Preset};
use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

const DECADE: f64 = 1.0;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_gravbound"))
}

fn within_decade(computed: LogScalar, published_log10: f64) -> Outcome {
    let c = computed.log10();
    let d = (c - published_log10).abs();
    let msg = format!("computed 10^{c:.2}, published 10^{published_log10}, |delta| {d:.2} decades");
    if d <= DECADE {
        Ok(msg)
    } else {
        Err(msg)
    }
}

fn c1_margolus_levitin(k: &PhysConstants) -> Outcome {
    let e = Preset::UltimateLaptop.spec(k).energy(k);
    let start = Instant::now();
    let n = margolus_levitin_ops(e, k).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    if (n.log10() - 50.73).abs() > 0.005 {
        return Err(format!("log10 = {:.4}, expected 50.73", n.log10()));
    }
    if elapsed >= Duration::from_millis(1) {
        return Err(format!("took {elapsed:?}"));
    }
    within_decade(n, 51.0).map(|m| format!("{m}, {elapsed:?}"))
}

fn c2_serial_error(k: &PhysConstants) -> Outcome {
    let e = serial_decoherence_error(1e16, k).map_err(|e| e.to_string())?;
    if (e.log10() - 8.95).abs() > 0.01 {
        return Err(format!("log10 = {:.4}, expected 8.95", e.log10()));
    }
    within_decade(e, 9.0)
}

fn c3_laptop(k: &PhysConstants) -> Outcome {
    let n = gravitational_ops_bound(1e31, 0.1, 1e10, k).map_err(|e| e.to_string())?;
    if (n.log10() - 47.79).abs() > 0.005 {
        return Err(format!("log10 = {:.4}, expected 47.79", n.log10()));
    }
    within_decade(n, 47.0)
}

fn c4_serial(k: &PhysConstants) -> Outcome {
    let n = gravitational_ops_bound(1e31, 0.1, 1.0, k).map_err(|e| e.to_string())?;
    if (n.log10() - 42.07).abs() > 0.005 {
        return Err(format!("log10 = {:.4}, expected 42.07", n.log10()));
    }
    within_decade(n, 42.0)
}

fn c5_avogadro(k: &PhysConstants) -> Outcome {
    let r = gravbound::limits::bound_report_for_preset(Preset::Avogadro, k)
        .map_err(|e| e.to_string())?;
    if (r.grav_ops_per_s.log10() - 39.50).abs() > 0.005 {
        return Err(format!(
            "log10 = {:.4}, expected 39.50",
            r.grav_ops_per_s.log10()
        ));
    }
    if !r
        .notes
        .iter()
        .any(|n| n.contains("R = 0.1 m is an assumption"))
    {
        return Err("radius assumption missing from report notes".into());
    }
    within_decade(r.grav_ops_per_s, 39.0)
}

fn c6_black_hole(k: &PhysConstants) -> Outcome {
    let n = black_hole_ops_bound(1.0, k).map_err(|e| e.to_string())?;
    if (n.log10() - 46.55).abs() > 0.005 {
        return Err(format!("log10 = {:.4}, expected 46.55", n.log10()));
    }
    within_decade(n, 47.0)
}

fn c7_parallelization(k: &PhysConstants) -> Outcome {
    let dp = degree_of_parallelization(1e31, 0.1, 1e51, k).map_err(|e| e.to_string())?;
    let v = dp.to_f64().ok_or("out of range")?;
    if (v / 3.3356e10 - 1.0).abs() > 1e-3 {
        return Err(format!("d_p = {v:e}, expected 3.3356e10"));
    }
    within_decade(dp, 10.0)
}

fn c8_oracle_equivalence() -> Outcome {
    let mut cases = Vec::new();
    for dim in 2..=6 {
        for tp in [0.01, 0.1, 1.0] {
            cases.push((dim, tp));
        }
    }
    let start = Instant::now();
    let results = exec::map(&cases, |&(dim, tp)| {
        let spectrum = Spectrum::new((0..dim).map(|k| k as f64).collect()).unwrap();
        let state = PureState::uniform(dim);
        let params = DecoherenceParams::paper(tp).unwrap();
        convergence_check(&state, &spectrum, 1.0, 1000, &params).map(|c| (dim, tp, c))
    });
    let elapsed = start.elapsed();
    let mut worst_residual = 0.0f64;
    let mut worst_ratio = f64::INFINITY;
    for r in results {
        let (dim, tp, c) = r.map_err(|e| e.to_string())?;
        if c.residual >= 1e-8 || c.ratio() < 12.0 {
            return Err(format!(
                "dim {dim}, tp {tp}: residual {:e}, half-step residual {:e}, ratio {:.2}",
                c.residual,
                c.residual_half_step,
                c.ratio()
            ));
        }
        worst_residual = worst_residual.max(c.residual);
        worst_ratio = worst_ratio.min(c.ratio());
    }
    if elapsed >= Duration::from_secs(1) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "{} systems, worst residual {worst_residual:.2e}, worst halving ratio {worst_ratio:.2}, {elapsed:?}",
        cases.len()
    ))
}

fn random_instance(rng: &mut StdRng) -> (Spectrum, PureState, DecoherenceParams) {
    let dim = rng.gen_range(2..=5);
    let mut omegas: Vec<f64> = (0..dim).map(|_| rng.gen_range(0.0..4.0)).collect();
    omegas.sort_by(f64::total_cmp);
    let amps: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let tp = 10f64.powf(rng.gen_range(-3.0..0.0));
    let params = if rng.gen_bool(0.5) {
        DecoherenceParams::paper(tp).unwrap()
    } else {
        DecoherenceParams::integrated(tp, rng.gen_range(1.5..4.0)).unwrap()
    };
    (
        Spectrum::new(omegas).unwrap(),
        PureState::normalized(amps).unwrap(),
        params,
    )
}

fn check_invariants(
    spectrum: &Spectrum,
    state: &PureState,
    params: &DecoherenceParams,
) -> Result<(), String> {
    let rho0 = state.projector();
    let p0 = rho0.populations();
    let traj = evolve_numeric(&rho0, spectrum, 1.0, 200, params).map_err(|e| e.to_string())?;
    let mut last_purity = f64::INFINITY;
    for s in &traj {
        let analytic =
            propagate_analytic(state, spectrum, s.t, params).map_err(|e| e.to_string())?;
        for rho in [&s.rho, &analytic] {
            if (rho.trace() - 1.0).abs() > 1e-9 {
                return Err(format!("trace {} at t = {}", rho.trace(), s.t));
            }
            if rho.hermiticity_error() > 1e-9 {
                return Err(format!(
                    "hermiticity error {:e} at t = {}",
                    rho.hermiticity_error(),
                    s.t
                ));
            }
            let drift = rho
                .populations()
                .iter()
                .zip(&p0)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0, f64::max);
            if drift > 1e-9 {
                return Err(format!("population drift {drift:e} at t = {}", s.t));
            }
            let im = overlap_complex(rho, &rho0).im.abs();
            if im > 1e-10 {
                return Err(format!("overlap imaginary part {im:e} at t = {}", s.t));
            }
        }
        let p = purity(&analytic);
        // allow round-off only
        if p > last_purity + 1e-14 {
            return Err(format!(
                "purity rose from {last_purity} to {p} at t = {}",
                s.t
            ));
        }
        last_purity = p;
    }
    Ok(())
}

fn check_periodicity(rng: &mut StdRng) -> Result<(), String> {
    let dim = rng.gen_range(2..=5);
    // integer frequencies share the period 2π
    let mut omegas: Vec<f64> = (0..dim).map(|_| rng.gen_range(0..=4) as f64).collect();
    omegas.sort_by(f64::total_cmp);
    let spectrum = Spectrum::new(omegas).unwrap();
    let amps: Vec<Complex64> = (0..dim)
        .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
        .collect();
    let state = PureState::normalized(amps).unwrap();
    let params = DecoherenceParams::new(0.0, ExponentMode::PaperExponent, None).unwrap();
    let rho0 = state.projector();
    let period = 2.0 * PI;
    // no dephasing, so no clock singularity: plain uniform steps
    let numeric = evolve_numeric_on(&rho0, &spectrum, period, 4000, &params, TimeGrid::Uniform)
        .map_err(|e| e.to_string())?;
    let numeric_err = numeric.last().unwrap().rho.max_abs_diff(&rho0);
    let analytic_err = propagate_analytic(&state, &spectrum, period, &params)
        .map_err(|e| e.to_string())?
        .max_abs_diff(&rho0);
    if numeric_err > 1e-8 || analytic_err > 1e-8 {
        return Err(format!(
            "return error numeric {numeric_err:e}, analytic {analytic_err:e}"
        ));
    }
    Ok(())
}

fn c9_invariants() -> Outcome {
    const INSTANCES: usize = 100;
    let start = Instant::now();
    let mut rng = StdRng::seed_from_u64(0x5eed_0009);
    let instances: Vec<_> = (0..INSTANCES).map(|_| random_instance(&mut rng)).collect();
    let seeds: Vec<u64> = (0..INSTANCES).map(|_| rng.gen()).collect();
    let checked = exec::map(&instances, |(sp, st, p)| check_invariants(sp, st, p));
    for (i, r) in checked.into_iter().enumerate() {
        r.map_err(|e| format!("instance {i}: {e}"))?;
    }
    let periodic = exec::map(&seeds, |s| {
        check_periodicity(&mut StdRng::seed_from_u64(*s))
    });
    for (i, r) in periodic.into_iter().enumerate() {
        r.map_err(|e| format!("sigma = 0 instance {i}: {e}"))?;
    }
    let elapsed = start.elapsed();
    if elapsed >= Duration::from_secs(10) {
        return Err(format!("took {elapsed:?}"));
    }
    Ok(format!(
        "{INSTANCES} dephasing + {INSTANCES} unitary instances, {elapsed:?}"
    ))
}

fn c10_saturation(k: &PhysConstants) -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0010);
    let mut worst = 0.0f64;
    for _ in 0..1000 {
        let l = 10f64.powf(rng.gen_range(5.0..45.0));
        let r = 10f64.powf(rng.gen_range(-30.0..5.0));
        let dp = 10f64.powf(rng.gen_range(0.0..4.0_f64.min(l.log10())));
        let n = gravitational_ops_bound(l, r, dp, k).map_err(|e| e.to_string())?;
        let lhs = parallel_error_constraint(n, dp, k).map_err(|e| e.to_string())?;
        let n_real = n.to_f64().ok_or("n out of f64 range")?;
        let rhs = max_error_rate(l, r, n_real, k).map_err(|e| e.to_string())?;
        let d = (lhs.log10() - rhs.log10()).abs();
        worst = worst.max(d);
        if d > 1e-10 {
            return Err(format!("L {l:e}, R {r:e}, d_p {dp:e}: log10 gap {d:e}"));
        }
    }
    Ok(format!("1000 triples, worst log10 gap {worst:.1e}"))
}

fn sweep_slope(
    param: &str,
    from: &str,
    to: &str,
    extra: &[&str],
    expected: f64,
) -> Result<f64, String> {
    let mut cmd = bin();
    cmd.args([
        "--format", "csv", "sweep", "--param", param, "--from", from, "--to", to, "--points", "9",
    ]);
    cmd.args(extra);
    let out = cmd.output().map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(String::from_utf8_lossy(&out.stderr).into_owned());
    }
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().ok_or("empty CSV")?.split(',').collect();
    let col = header
        .iter()
        .position(|h| *h == "grav_ops_per_s_log10")
        .ok_or("no grav_ops_per_s_log10 column")?;
    let pts: Vec<(f64, f64)> = lines
        .map(|l| {
            let cells: Vec<&str> = l.split(',').collect();
            (
                cells[0].parse::<f64>().unwrap().log10(),
                cells[col].parse::<f64>().unwrap(),
            )
        })
        .collect();
    let mut worst = 0.0f64;
    for w in pts.windows(2) {
        let slope = (w[1].1 - w[0].1) / (w[1].0 - w[0].0);
        worst = worst.max((slope - expected).abs());
    }
    if worst > 1e-9 {
        return Err(format!("{param}: slope off by {worst:e}"));
    }
    Ok(worst)
}

fn c11_sweep_slopes() -> Outcome {
    let inline = [
        "--mass",
        "1",
        "--radius",
        "0.1",
        "--bits",
        "1e31",
        "--parallelism",
        "1e4",
    ];
    let preset = ["--preset", "ultimate-laptop"];
    let l = sweep_slope("bits", "1e20", "1e40", &inline, 3.0 / 7.0)?;
    let dp = sweep_slope("parallelism", "1", "1e20", &preset, 4.0 / 7.0)?;
    let r = sweep_slope("radius_m", "1e-3", "1e3", &preset, -3.0 / 7.0)?;
    Ok(format!(
        "max slope errors: L {l:.1e}, d_p {dp:.1e}, R {r:.1e}"
    ))
}

fn c12_report_check() -> Outcome {
    let ok = bin()
        .args(["report", "--check"])
        .output()
        .map_err(|e| e.to_string())?;
    if ok.status.code() != Some(0) {
        return Err(format!("report --check exited {:?}", ok.status.code()));
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let path = dir.path().join("constants.json");
    // 10^1.5 ~ 31.6
    std::fs::write(
        &path,
        format!(r#"{{"c": {}}}"#, 2.99792458e8 * 10f64.powf(1.5)),
    )
    .map_err(|e| e.to_string())?;
    let bad = bin()
        .args(["report", "--check"])
        .env(gravbound::cli::CONSTANTS_ENV, &path)
        .output()
        .map_err(|e| e.to_string())?;
    match bad.status.code() {
        Some(0) => Err("perturbed c by 1.5 decades but report --check still exited 0".into()),
        code => Ok(format!("clean build exits 0; c x 10^1.5 exits {code:?}")),
    }
}

fn main() -> ExitCode {
    let k = PhysConstants::codata();
    let criteria: Vec<Criterion> = vec![
        (
            "Margolus-Levitin ultimate laptop",
            Box::new(|| c1_margolus_levitin(&k)),
        ),
        (
            "serial decoherence error at E = 1e16 J",
            Box::new(|| c2_serial_error(&k)),
        ),
        (
            "gravitational bound, ultimate laptop",
            Box::new(|| c3_laptop(&k)),
        ),
        (
            "gravitational bound, serial mode",
            Box::new(|| c4_serial(&k)),
        ),
        ("avogadro computer, serial", Box::new(|| c5_avogadro(&k))),
        ("black hole, 1 kg", Box::new(|| c6_black_hole(&k))),
        (
            "implied parallelization",
            Box::new(|| c7_parallelization(&k)),
        ),
        ("RK4 vs closed-form oracle", Box::new(c8_oracle_equivalence)),
        ("randomized invariant suite", Box::new(c9_invariants)),
        ("saturation identity", Box::new(|| c10_saturation(&k))),
        ("sweep scaling slopes", Box::new(c11_sweep_slopes)),
        ("report --check", Box::new(c12_report_check)),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS  {:>2}. {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL  {:>2}. {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
