//! Small complex helpers that keep removable singularities finite.

use num_complex::Complex64;

pub(crate) const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

pub(crate) fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// `e^z - 1` without cancellation for small `|z|`.
pub(crate) fn expm1(z: Complex64) -> Complex64 {
    let (s, co) = z.im.sin_cos();
    let half = (0.5 * z.im).sin();
    let em1 = z.re.exp_m1();
    // e^x cos y - 1 = expm1(x) cos y - 2 sin^2(y/2)
    c(em1 * co - 2.0 * half * half, z.re.exp() * s)
}

/// `(e^z - 1) / z`, equal to 1 at the origin.
pub(crate) fn phi1(z: Complex64) -> Complex64 {
    if z.norm() < 1e-5 {
        1.0 + z * (0.5 + z * (1.0 / 6.0 + z / 24.0))
    } else {
        expm1(z) / z
    }
}

/// Derivative of `g(a) = (e^{a t} - 1) / a` with respect to `a`.
pub(crate) fn phi1_slope(a: Complex64, t: f64) -> Complex64 {
    let z = a * t;
    if z.norm() < 1e-3 {
        // t^2 (1/2 + z/3 + z^2/8 + z^3/30)
        t * t * (0.5 + z * (1.0 / 3.0 + z * (1.0 / 8.0 + z / 30.0)))
    } else {
        let e = z.exp();
        (t * e * a - expm1(z)) / (a * a)
    }
}
