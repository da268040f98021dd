//! Globally adaptive Gauss-Kronrod (10/21 point) quadrature for complex
//! integrands.
//!
//! The initial partition is built from caller-supplied breakpoints (kinks,
//! jumps, narrow peaks) and a minimum number of panels, which is how the
//! oscillatory integrals get one panel per period before any refinement.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use num_complex::Complex64;

use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

// Weights of the embedded 10-point Gauss rule at XGK[1], XGK[3], ..., XGK[9].
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Convergence targets for one integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    /// Refinement budget, counted in subintervals.
    pub max_intervals: usize,
}

impl Default for Tolerance {
    fn default() -> Self {
        Self {
            abs: 1e-10,
            rel: 1e-8,
            max_intervals: 5000,
        }
    }
}

impl Tolerance {
    pub fn new(abs: f64, rel: f64) -> Self {
        Self {
            abs,
            rel,
            ..Self::default()
        }
    }

    pub fn with_budget(mut self, max_intervals: usize) -> Self {
        self.max_intervals = max_intervals;
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Estimate<T> {
    pub value: T,
    pub error: f64,
    pub evaluations: usize,
}

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: Complex64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}

impl Eq for Panel {}

impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn gauss_kronrod<F>(f: &F, a: f64, b: f64) -> Panel
where
    F: Fn(f64) -> Complex64,
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);
    let mut kronrod = f_center * WGK[10];
    let mut gauss = Complex64::new(0.0, 0.0);
    let mut res_abs = WGK[10] * f_center.norm();
    let mut values = [(Complex64::new(0.0, 0.0), Complex64::new(0.0, 0.0)); 10];
    for (j, slot) in values.iter_mut().enumerate() {
        let dx = half * XGK[j];
        let lo = f(center - dx);
        let hi = f(center + dx);
        *slot = (lo, hi);
        kronrod += (lo + hi) * WGK[j];
        res_abs += WGK[j] * (lo.norm() + hi.norm());
        if j % 2 == 1 {
            gauss += (lo + hi) * WG[j / 2];
        }
    }
    let mean = kronrod * 0.5;
    let mut res_asc = WGK[10] * (f_center - mean).norm();
    for (j, (lo, hi)) in values.iter().enumerate() {
        res_asc += WGK[j] * ((lo - mean).norm() + (hi - mean).norm());
    }
    let width = half.abs();
    let res_abs = res_abs * width;
    let res_asc = res_asc * width;
    let mut error = ((kronrod - gauss) * half).norm();
    if res_asc != 0.0 && error != 0.0 {
        error = res_asc * (200.0 * error / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        error = error.max(50.0 * f64::EPSILON * res_abs);
    }
    Panel {
        a,
        b,
        value: kronrod * half,
        error,
    }
}

/// Integrates a complex function over `[lower, upper]`.
///
/// `breakpoints` outside the open interval are ignored. The interval between
/// consecutive breakpoints is split into equal panels so that at least
/// `min_panels` panels exist in total before refinement starts.
pub fn integrate<F>(
    f: F,
    lower: f64,
    upper: f64,
    breakpoints: &[f64],
    min_panels: usize,
    tol: Tolerance,
) -> Result<Estimate<Complex64>>
where
    F: Fn(f64) -> Complex64,
{
    if lower == upper {
        return Ok(Estimate {
            value: Complex64::new(0.0, 0.0),
            error: 0.0,
            evaluations: 0,
        });
    }
    if upper < lower {
        let flipped = integrate(f, upper, lower, breakpoints, min_panels, tol)?;
        return Ok(Estimate {
            value: -flipped.value,
            ..flipped
        });
    }

    let mut nodes: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|x| x.is_finite() && *x > lower && *x < upper)
        .collect();
    nodes.push(lower);
    nodes.push(upper);
    nodes.sort_by(f64::total_cmp);
    nodes.dedup();

    let span = upper - lower;
    let mut heap = BinaryHeap::new();
    let mut evaluations = 0;
    for pair in nodes.windows(2) {
        let (a, b) = (pair[0], pair[1]);
        let share = ((b - a) / span * min_panels as f64).ceil().max(1.0) as usize;
        let step = (b - a) / share as f64;
        for k in 0..share {
            let lo = a + k as f64 * step;
            let hi = if k + 1 == share { b } else { lo + step };
            heap.push(gauss_kronrod(&f, lo, hi));
            evaluations += 21;
        }
    }

    // Panels that cannot be split further in floating point are parked here.
    let mut settled: Vec<Panel> = Vec::new();
    let mut total: Complex64 = heap.iter().map(|p| p.value).sum();
    let mut error: f64 = heap.iter().map(|p| p.error).sum();
    loop {
        let target = tol.abs.max(tol.rel * total.norm());
        if error <= target {
            // Re-sum to shed the drift of the running totals.
            let total: Complex64 = heap.iter().chain(settled.iter()).map(|p| p.value).sum();
            let error: f64 = heap.iter().chain(settled.iter()).map(|p| p.error).sum();
            if error <= tol.abs.max(tol.rel * total.norm()) {
                return Ok(Estimate {
                    value: total,
                    error,
                    evaluations,
                });
            }
        }
        let intervals = heap.len() + settled.len();
        if heap.is_empty() || intervals >= tol.max_intervals {
            return Err(Error::Quadrature {
                lower,
                upper,
                estimate: error,
                tolerance: target,
                intervals,
            });
        }
        let worst = heap.pop().expect("heap checked non-empty");
        let mid = 0.5 * (worst.a + worst.b);
        if !(mid > worst.a && mid < worst.b)
            || (worst.b - worst.a) < 1e3 * f64::EPSILON * mid.abs()
        {
            settled.push(worst);
            continue;
        }
        let left = gauss_kronrod(&f, worst.a, mid);
        let right = gauss_kronrod(&f, mid, worst.b);
        evaluations += 42;
        total += left.value + right.value - worst.value;
        error += left.error + right.error - worst.error;
        heap.push(left);
        heap.push(right);
    }
}

/// Real-valued counterpart of [`integrate`].
pub fn integrate_real<F>(
    f: F,
    lower: f64,
    upper: f64,
    breakpoints: &[f64],
    min_panels: usize,
    tol: Tolerance,
) -> Result<Estimate<f64>>
where
    F: Fn(f64) -> f64,
{
    let est = integrate(
        |x| Complex64::new(f(x), 0.0),
        lower,
        upper,
        breakpoints,
        min_panels,
        tol,
    )?;
    Ok(Estimate {
        value: est.value.re,
        error: est.error,
        evaluations: est.evaluations,
    })
}

/// Panel count that gives one panel per period of `e^{i rate x}` over `length`.
pub fn panels_per_period(rate: f64, length: f64) -> usize {
    let periods = (rate.abs() * length.abs() / std::f64::consts::TAU).ceil();
    if periods.is_finite() {
        (periods as usize).clamp(1, 20_000)
    } else {
        1
    }
}
