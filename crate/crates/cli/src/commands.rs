use std::time::Instant;

use ladderwave::observables::{identical_spectrum, spectral_density, state_probabilities};
use ladderwave::oracle::{compare_with_analytic, OracleConfig, Tolerances};
use ladderwave::{grid::linspace, make_params, Amplitudes, Complex64, GeneralSolution, PulseSpec, SystemParams};

use crate::args::{Command, Common, Figure, FigureArgs, GridArgs, ProbabilitiesArgs, PulseArgs, Shape, VerifyArgs};
use crate::error::CliError;
use crate::output::{emit, Body, ParamRecord, Plot, RunManifest, Table};

/// Panels fig2a to fig2d share the upper-level rate and differ in the decay ratio.
const FIG2_RATIOS: [(Figure, f64); 4] = [
    (Figure::Fig2a, 10.0),
    (Figure::Fig2b, 1.5),
    (Figure::Fig2c, 0.5),
    (Figure::Fig2d, 0.1),
];
const FIG4_ALPHA_R: [f64; 3] = [-0.03, -0.04, -0.06];
const FIG_GAMMA2: f64 = 0.02;

fn params(omega1: f64, g2o: f64, ratio: f64, alpha_r: f64) -> Result<(SystemParams, ParamRecord), CliError> {
    let p = make_params(omega1, alpha_r, g2o * omega1, ratio, 1.0)?;
    for w in p.warnings() {
        crate::warn(&w.to_string());
    }
    let record = ParamRecord {
        omega1,
        gamma2_over_omega1: g2o,
        ratio,
        alpha_r,
        resolved: p,
    };
    Ok((p, record))
}

fn common_params(c: &Common) -> Result<(SystemParams, ParamRecord), CliError> {
    params(c.omega1, c.gamma2_over_omega1, c.ratio, c.alpha_r)
}

fn check_steps(steps: usize, t_max: f64) -> Result<(), CliError> {
    if steps == 0 || !(t_max > 0.0 && t_max.is_finite()) {
        return Err(CliError::Validation(format!(
            "need steps >= 1 and a positive t-max, got {steps} and {t_max}"
        )));
    }
    Ok(())
}

fn probability_table(p: &SystemParams, t_max: f64, steps: usize) -> Result<Table, CliError> {
    let mut table = Table::new(&["t_gamma2", "p_f0", "p_e1", "p_g2"]);
    for k in 0..=steps {
        let tg = t_max * k as f64 / steps as f64;
        let s = state_probabilities(tg / p.gamma2(), p)?;
        table.push(vec![tg, s.p_f0, s.p_e1, s.p_g2]);
    }
    Ok(table)
}

/// Rows `(w1, w2, S g2^2)` in row-major order, frequencies in units of omega1.
fn spectrum_table(p: &SystemParams, lo: f64, hi: f64, n: usize) -> Result<Table, CliError> {
    let axis = linspace(lo, hi, n)?;
    let w0 = p.omega1();
    let g2sq = p.gamma2() * p.gamma2();
    let mut table = Table::new(&["omega1", "omega2", "s_gamma2sq"]);
    for &a in &axis {
        for &b in &axis {
            table.push(vec![a, b, spectral_density(a * w0, b * w0, p) * g2sq]);
        }
    }
    Ok(table)
}

fn grid_bounds(g: &GridArgs, lo: f64, hi: f64, n: usize) -> (f64, f64, usize) {
    (g.wmin.unwrap_or(lo), g.wmax.unwrap_or(hi), g.n.unwrap_or(n))
}

fn probabilities(a: &ProbabilitiesArgs, start: Instant) -> Result<(), CliError> {
    check_steps(a.steps, a.t_max)?;
    let (p, record) = common_params(&a.common)?;
    let table = probability_table(&p, a.t_max, a.steps)?;
    let manifest = RunManifest::new("probabilities")
        .param(record)
        .setting("t_max_gamma2", a.t_max)
        .setting("steps", a.steps);
    let plot = a.common.svg.then_some(Plot::Lines { x: 0, ys: vec![1, 2, 3] });
    emit(a.common.out.as_deref(), manifest, Body::Csv(table), plot, start.elapsed())
}

fn spectrum(g: &GridArgs, start: Instant) -> Result<(), CliError> {
    let (p, record) = common_params(&g.common)?;
    let (lo, hi, n) = grid_bounds(g, 0.9, 1.1, 201);
    let table = spectrum_table(&p, lo, hi, n)?;
    let manifest = RunManifest::new("spectrum")
        .param(record)
        .setting("grid", format!("[{lo}, {hi}]^2 x {n}"));
    let plot = g.common.svg.then_some(Plot::Heatmap { x: 0, y: 1, z: 2, nx: n, ny: n });
    emit(g.common.out.as_deref(), manifest, Body::Csv(table), plot, start.elapsed())
}

fn identical(g: &GridArgs, start: Instant) -> Result<(), CliError> {
    let (p, record) = common_params(&g.common)?;
    let (lo, hi, n) = grid_bounds(g, 0.92, 1.04, 61);
    let w0 = p.omega1();
    let g2sq = p.gamma2() * p.gamma2();
    let mut table = Table::new(&["omega", "delta", "s_gamma2sq"]);
    for w in linspace(lo, hi, n)? {
        let delta = w - 1.0;
        table.push(vec![w, delta, identical_spectrum(delta * w0, &p) * g2sq]);
    }
    let manifest = RunManifest::new("identical")
        .param(record)
        .setting("grid", format!("[{lo}, {hi}] x {n}"));
    let plot = g.common.svg.then_some(Plot::Lines { x: 1, ys: vec![2] });
    emit(g.common.out.as_deref(), manifest, Body::Csv(table), plot, start.elapsed())
}

fn verify(a: &VerifyArgs, start: Instant) -> Result<(), CliError> {
    if a.common.svg {
        return Err(CliError::Validation("--svg is not available for verify".into()));
    }
    let (p, record) = common_params(&a.common)?;
    let g2 = p.gamma2();
    let mut cfg = OracleConfig::for_params(&p)
        .with_modes(a.modes)
        .with_t_max(a.t_max / g2);
    if let Some(hw) = a.half_width {
        cfg = cfg.with_half_width(hw * p.omega1());
    }
    if let Some(dt) = a.dt {
        cfg = cfg.with_dt(dt / g2);
    }
    let report = compare_with_analytic(&p, &cfg, &Tolerances::default())?;
    let failed: Vec<&str> = report
        .observables
        .iter()
        .filter(|o| !o.pass)
        .map(|o| o.observable.as_str())
        .collect();
    if failed.is_empty() {
        crate::info("verification passed");
    } else {
        crate::warn(&format!("verification outside tolerance: {}", failed.join(", ")));
    }
    let manifest = RunManifest::new("verify")
        .param(record)
        .setting("modes", a.modes)
        .setting("half_width", report.window.half_width)
        .setting("dt", report.dt)
        .setting("t_max_gamma2", a.t_max);
    emit(a.common.out.as_deref(), manifest, Body::Json(report.to_json()), None, start.elapsed())
}

fn figure(a: &FigureArgs, start: Instant) -> Result<(), CliError> {
    let fig = a.figure;
    let command = format!("figure {}", fig.name());
    let (manifest, table, plot) = match fig {
        Figure::Fig2a | Figure::Fig2b | Figure::Fig2c | Figure::Fig2d => {
            let ratio = FIG2_RATIOS.iter().find(|(f, _)| *f == fig).map(|(_, r)| *r).unwrap();
            let (p, record) = params(1.0, FIG_GAMMA2, ratio, -0.03)?;
            let (t_max, steps) = (8.0, 400);
            let mut table = probability_table(&p, t_max, steps)?;
            table.columns.push("total".into());
            for row in &mut table.rows {
                let total = row[1] + row[2] + row[3];
                row.push(total);
            }
            let manifest = RunManifest::new(command)
                .param(record)
                .setting("t_max_gamma2", t_max)
                .setting("steps", steps);
            (manifest, table, Plot::Lines { x: 0, ys: vec![1, 2, 3, 4] })
        }
        Figure::Fig3a | Figure::Fig3b | Figure::Fig3c | Figure::Fig3d | Figure::Fig3e => {
            let (g2o, ratio, alpha_r, lo, hi, n) = match fig {
                Figure::Fig3a => (FIG_GAMMA2, 1.5, -0.05, 0.9, 1.1, 401),
                Figure::Fig3b => (FIG_GAMMA2, 1.5, -0.03, 0.9, 1.1, 401),
                Figure::Fig3c => (FIG_GAMMA2, 3.0, -0.03, 0.9, 1.1, 401),
                Figure::Fig3d => (FIG_GAMMA2, 3.0, -0.02, 0.9, 1.1, 401),
                _ => (0.001, 1.5, -0.03, 0.95, 1.02, 501),
            };
            let (p, record) = params(1.0, g2o, ratio, alpha_r)?;
            let table = spectrum_table(&p, lo, hi, n)?;
            let manifest = RunManifest::new(command)
                .param(record)
                .setting("grid", format!("[{lo}, {hi}]^2 x {n}"));
            (manifest, table, Plot::Heatmap { x: 0, y: 1, z: 2, nx: n, ny: n })
        }
        Figure::Fig4a | Figure::Fig4b => {
            let ratio = if fig == Figure::Fig4a { 1.5 } else { 3.0 };
            let deltas = linspace(-0.08, 0.04, 61)?;
            let mut columns = vec!["delta".to_string()];
            let mut manifest = RunManifest::new(command);
            let mut sets = Vec::new();
            for alpha_r in FIG4_ALPHA_R {
                let (p, record) = params(1.0, FIG_GAMMA2, ratio, alpha_r)?;
                columns.push(format!("s_gamma2sq_alpha_r_{alpha_r}"));
                manifest = manifest.param(record);
                sets.push(p);
            }
            let mut table = Table {
                columns,
                rows: Vec::new(),
            };
            for &d in &deltas {
                let mut row = vec![d];
                row.extend(sets.iter().map(|p| identical_spectrum(d, p) * p.gamma2() * p.gamma2()));
                table.push(row);
            }
            let manifest = manifest.setting("grid", "delta in [-0.08, 0.04] x 61");
            (manifest, table, Plot::Lines { x: 0, ys: vec![1, 2, 3] })
        }
        Figure::Fig4c | Figure::Fig4d => {
            let ratio = if fig == Figure::Fig4c { 1.5 } else { 3.0 };
            let alphas = linspace(-0.08, 0.0, 81)?;
            let deltas = linspace(-0.08, 0.04, 121)?;
            let (_, record) = params(1.0, FIG_GAMMA2, ratio, -0.03)?;
            let mut table = Table::new(&["alpha_r", "delta", "s_gamma2sq"]);
            for &alpha_r in &alphas {
                let p = make_params(1.0, alpha_r, FIG_GAMMA2, ratio, 1.0)?;
                for &d in &deltas {
                    table.push(vec![alpha_r, d, identical_spectrum(d, &p) * FIG_GAMMA2 * FIG_GAMMA2]);
                }
            }
            let manifest = RunManifest::new(command)
                .param(record)
                .setting("grid", "alpha_r in [-0.08, 0] x 81, delta in [-0.08, 0.04] x 121");
            (manifest, table, Plot::Heatmap { x: 0, y: 1, z: 2, nx: 81, ny: 121 })
        }
    };
    let plot = a.svg.then_some(plot);
    emit(a.out.as_deref(), manifest, Body::Csv(table), plot, start.elapsed())
}

fn pulse(a: &PulseArgs, start: Instant) -> Result<(), CliError> {
    check_steps(a.steps, a.t_max)?;
    let (p, record) = common_params(&a.common)?;
    let length = p.v_g() / p.gamma2();
    let carrier = a.carrier.map(|c| c * p.omega1()).unwrap_or(p.delta_omega()) / p.v_g();
    let spec = match a.shape {
        Shape::Gaussian => PulseSpec::gaussian(a.center * length, a.width * length, carrier, a.weight)?,
        Shape::Rectangular => PulseSpec::rectangular(a.left * length, a.right * length, carrier, a.weight)?,
    };
    let model = GeneralSolution::new(p, Complex64::new(a.alpha0, 0.0), spec)?;
    let mut table = Table::new(&["t_gamma2", "alpha_re", "alpha_im", "alpha_abs"]);
    for k in 0..=a.steps {
        let tg = a.t_max * k as f64 / a.steps as f64;
        let alpha = model.alpha(tg / p.gamma2())?;
        table.push(vec![tg, alpha.re, alpha.im, alpha.norm()]);
    }
    let mut manifest = RunManifest::new("pulse")
        .param(record)
        .setting("shape", format!("{:?}", a.shape).to_lowercase());
    manifest = match a.shape {
        Shape::Gaussian => manifest.setting("center", a.center).setting("width", a.width),
        Shape::Rectangular => manifest.setting("left", a.left).setting("right", a.right),
    };
    let manifest = manifest
        .setting("carrier_k", carrier)
        .setting("weight", a.weight)
        .setting("alpha0", a.alpha0)
        .setting("t_max_gamma2", a.t_max)
        .setting("steps", a.steps);
    let plot = a.common.svg.then_some(Plot::Lines { x: 0, ys: vec![3] });
    emit(a.common.out.as_deref(), manifest, Body::Csv(table), plot, start.elapsed())
}

pub fn run(command: &Command) -> Result<(), CliError> {
    let start = Instant::now();
    match command {
        Command::Probabilities(a) => probabilities(a, start),
        Command::Spectrum(g) => spectrum(g, start),
        Command::Identical(g) => identical(g, start),
        Command::Verify(a) => verify(a, start),
        Command::Figure(a) => figure(a, start),
        Command::Pulse(a) => pulse(a, start),
    }
}
