//! Finite-difference derivatives of user-supplied callables.
//!
//! Five-point central stencils evaluated at steps h and h/2, combined by one
//! Richardson step to cancel the O(h⁴) term.

/// Relative step used when the caller does not pick one: h = 4e−3·(1+|x|).
pub const DEFAULT_RELATIVE_STEP: f64 = 4e-3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Derivatives {
    pub value: f64,
    pub first: f64,
    pub second: f64,
}

fn five_point<F: Fn(f64) -> f64>(f: &F, x: f64, h: f64, center: f64) -> (f64, f64) {
    let fm2 = f(x - 2.0 * h);
    let fm1 = f(x - h);
    let fp1 = f(x + h);
    let fp2 = f(x + 2.0 * h);
    let d1 = (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h);
    let d2 = (-fm2 + 16.0 * fm1 - 30.0 * center + 16.0 * fp1 - fp2) / (12.0 * h * h);
    (d1, d2)
}

/// Value, first and second derivative of `f` at `x` with step `h`.
pub fn derivatives_with_step<F: Fn(f64) -> f64>(f: F, x: f64, h: f64) -> Derivatives {
    let value = f(x);
    let (a1, a2) = five_point(&f, x, h, value);
    let (b1, b2) = five_point(&f, x, 0.5 * h, value);
    Derivatives {
        value,
        first: (16.0 * b1 - a1) / 15.0,
        second: (16.0 * b2 - a2) / 15.0,
    }
}

pub fn derivatives<F: Fn(f64) -> f64>(f: F, x: f64) -> Derivatives {
    derivatives_with_step(f, x, DEFAULT_RELATIVE_STEP * (1.0 + x.abs()))
}
