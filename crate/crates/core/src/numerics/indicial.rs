//! Local power laws at singular endpoints.
//!
//! Near an end point, with d the distance to it, let p vanish like d^α while
//! p/w → P and q/w ≈ c/d². Solutions behave like d^ν with
//! ν² + (α − 1)ν − c/P = 0; the larger root is the regular one.

use serde::{Deserialize, Serialize};

use super::problem::SlForm;

/// Which side of the interval an end point bounds.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Side {
    Left,
    Right,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IndicialExponent {
    /// c = lim d²·q/w.
    pub strength: f64,
    /// P = lim p/w.
    pub leading: f64,
    /// Principal root, or `None` when the attraction is strong enough that
    /// every solution oscillates infinitely often (fall to the centre).
    pub exponent: Option<f64>,
}

/// lim d²·g(d) from samples at d, 2d and 4d, cancelling the O(d) and O(d²)
/// terms. A double root turns an error ε in the limit into √ε in the
/// exponent, so the constant part of g must not leak in.
pub fn inverse_square_strength<G: Fn(f64) -> f64>(g: G, d: f64) -> f64 {
    extrapolate_to_zero(|t| t * t * g(t), d)
}

/// s(0) from s(d), s(2d), s(4d) for s smooth in d.
fn extrapolate_to_zero<S: Fn(f64) -> f64>(s: S, d: f64) -> f64 {
    (8.0 * s(d) - 6.0 * s(2.0 * d) + s(4.0 * d)) / 3.0
}

/// Principal root of ν² + (α − 1)ν − c/P = 0.
pub fn frobenius_exponent(strength: f64, leading: f64, alpha: f64) -> Option<f64> {
    let b = 1.0 - alpha;
    let disc = b * b + 4.0 * strength / leading;
    // a double root read off with rounding error must not turn into a
    // spurious collapse or an O(√ε) shift of the exponent
    if disc < -1e-8 {
        None
    } else if disc < 1e-8 {
        Some(0.5 * b)
    } else {
        Some(0.5 * (b + disc.sqrt()))
    }
}

/// Exponent of the solution at `end` of the form, with p vanishing like d^α.
pub fn end_exponent(form: &SlForm, end: f64, side: Side, alpha: f64, d: f64) -> IndicialExponent {
    let at = |dist: f64| match side {
        Side::Left => end + dist,
        Side::Right => end - dist,
    };
    let ratio = |dist: f64| {
        let x = at(dist);
        (form.q)(x) / (form.w)(x)
    };
    let strength = inverse_square_strength(ratio, d);
    let leading = extrapolate_to_zero(
        |t| {
            let x = at(t);
            (form.p)(x) / (form.w)(x)
        },
        d,
    );
    IndicialExponent {
        strength,
        leading,
        exponent: frobenius_exponent(strength, leading, alpha),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strength_of_pure_inverse_square() {
        let c = inverse_square_strength(|d| 2.5 / (d * d) + 3.0 / d + 7.0 + d, 1e-5);
        assert!((c - 2.5).abs() < 1e-12);
    }

    #[test]
    fn exponents_for_known_cases() {
        // −(rψ′)′ + m²/r ψ: ψ ~ r^{|m|}
        assert_eq!(frobenius_exponent(4.0, 1.0, 1.0), Some(2.0));
        // −ψ″ + (ν(ν−1)/x²)ψ: ψ ~ x^ν
        assert_eq!(frobenius_exponent(6.0, 1.0, 0.0), Some(3.0));
        assert_eq!(frobenius_exponent(-0.25, 1.0, 0.0), Some(0.5));
        assert_eq!(frobenius_exponent(-0.3, 1.0, 0.0), None);
        assert_eq!(frobenius_exponent(-0.01, 1.0, 1.0), None);
    }

    #[test]
    fn end_exponent_on_a_form() {
        let form = SlForm::new(|r| r, |_| 1.0, |r| 9.0 / r + r, |r| r);
        let e = end_exponent(&form, 0.0, Side::Left, 1.0, 1e-5);
        assert!((e.exponent.unwrap() - 3.0).abs() < 1e-6);
        let right = SlForm::new(|_| 1.0, |_| 0.0, |x| 2.0 / ((1.0 - x) * (1.0 - x)), |_| 1.0);
        let e = end_exponent(&right, 1.0, Side::Right, 0.0, 1e-5);
        assert!((e.exponent.unwrap() - 2.0).abs() < 1e-6);
    }
}
