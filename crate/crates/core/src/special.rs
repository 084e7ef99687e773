//! Hyperbolic cotangent in the forms the diffraction kernels need.

use num_complex::Complex64;
use std::f64::consts::PI;

/// Radius below which `coth` switches to its Laurent expansion.
pub const LAURENT_RADIUS: f64 = 1e-3;

/// Shifts `w` by an integer multiple of `iπ` so that `Im w ∈ (-π/2, π/2]`.
fn reduce(w: Complex64) -> Complex64 {
    let k = (w.im / PI).round();
    Complex64::new(w.re, w.im - k * PI)
}

/// `coth(w)` for complex `w`.
///
/// The argument is reduced modulo `iπ`; near the reduced pole the Laurent form
/// `1/w + w/3 - w³/45` is used, elsewhere the exponential form on the decaying side.
pub fn coth(w: Complex64) -> Complex64 {
    let w = reduce(w);
    if w.norm() < LAURENT_RADIUS {
        let w2 = w * w;
        return w.inv() + w / 3.0 - w * w2 / 45.0;
    }
    if w.re >= 0.0 {
        let e = (-2.0 * w).exp();
        (1.0 + e) / (1.0 - e)
    } else {
        let e = (2.0 * w).exp();
        -(1.0 + e) / (1.0 - e)
    }
}

/// `coth(w) - sgn`, where `sgn = ±1` follows the sign of `Re w`.
///
/// Sums of coth terms whose signs cancel are evaluated with this form for large
/// `|Re w|` so the exponentially small result keeps full relative precision.
pub fn coth_tail(w: Complex64) -> Complex64 {
    if w.re >= 0.0 {
        let e = (-2.0 * w).exp();
        2.0 * e / (1.0 - e)
    } else {
        let e = (2.0 * w).exp();
        -2.0 * e / (1.0 - e)
    }
}

/// `coth(w) - 1/w` without reduction modulo `iπ` (only the pole at the origin is removed).
pub fn coth_minus_inv(w: Complex64) -> Complex64 {
    if w.norm() < 0.1 {
        // x/3 - x³/45 + 2x⁵/945 - x⁷/4725 + 2x⁹/93555 - 1382x¹¹/638512875
        let w2 = w * w;
        let mut acc = Complex64::new(-1382.0 / 638_512_875.0, 0.0);
        for c in [2.0 / 93555.0, -1.0 / 4725.0, 2.0 / 945.0, -1.0 / 45.0, 1.0 / 3.0] {
            acc = acc * w2 + c;
        }
        acc * w
    } else {
        coth(w) - w.inv()
    }
}

/// Derivative `d/dw coth(w) = 1 - coth²(w)`.
pub fn coth_prime(w: Complex64) -> Complex64 {
    let c = coth(w);
    1.0 - c * c
}

/// Distance from `w` to the nearest pole `iπk` of `coth`, and that pole.
pub fn coth_pole_distance(w: Complex64) -> (f64, Complex64) {
    let k = (w.im / PI).round();
    let pole = Complex64::new(0.0, k * PI);
    ((w - pole).norm(), pole)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn direct(w: Complex64) -> Complex64 {
        w.cosh() / w.sinh()
    }

    #[test]
    fn matches_definition_away_from_poles() {
        for &(re, im) in &[(0.3, 0.2), (-1.2, 2.9), (4.0, -7.0), (-0.01, 1.5), (2.0, 3.0 * PI + 0.4)] {
            let w = c(re, im);
            assert!((coth(w) - direct(w)).norm() < 1e-13 * direct(w).norm().max(1.0));
        }
    }

    #[test]
    fn large_real_part_is_stable() {
        let w = c(40.0, 0.7);
        assert!((coth(w) - 1.0).norm() < 1e-30);
        let t = coth_tail(w);
        let expect = 2.0 * (-2.0 * w).exp();
        assert!((t - expect).norm() < 1e-12 * expect.norm());
        let t = coth_tail(-w);
        assert!((t + expect).norm() < 1e-12 * expect.norm());
    }

    #[test]
    fn laurent_branch_is_continuous() {
        let r = LAURENT_RADIUS;
        for k in 0..16 {
            let th = k as f64 * PI / 8.0;
            let inside = c(0.999 * r * th.cos(), 0.999 * r * th.sin());
            let outside = c(1.001 * r * th.cos(), 1.001 * r * th.sin());
            // both branches must agree with the leading Laurent terms to O(w³)
            let a = coth(inside) - inside.inv() - inside / 3.0;
            let b = coth(outside) - outside.inv() - outside / 3.0;
            assert!(a.norm() < 1e-10 && b.norm() < 1e-10, "{a} {b}");
        }
    }

    #[test]
    fn coth_minus_inv_series_and_direct_agree() {
        for k in 0..12 {
            let th = k as f64 * PI / 6.0;
            let w1 = c(0.0999 * th.cos(), 0.0999 * th.sin());
            let w2 = c(0.1001 * th.cos(), 0.1001 * th.sin());
            assert!((coth_minus_inv(w1) - coth_minus_inv(w2)).norm() < 1e-4);
            let exact = direct(w1) - w1.inv();
            assert!((coth_minus_inv(w1) - exact).norm() < 1e-13);
        }
        assert_eq!(coth_minus_inv(c(0.0, 0.0)), c(0.0, 0.0));
    }

    #[test]
    fn pole_distance_reports_nearest_pole() {
        let (d, p) = coth_pole_distance(c(1e-3, PI + 2e-3));
        assert!((p - c(0.0, PI)).norm() < 1e-15);
        assert!((d - (1e-6f64 + 4e-6).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn derivative_matches_finite_difference() {
        let w = c(0.4, 0.9);
        let h = 1e-6;
        let fd = (coth(w + h) - coth(w - h)) / (2.0 * h);
        assert!((fd - coth_prime(w)).norm() < 1e-8);
    }
}
