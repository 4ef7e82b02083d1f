//! 128-bit fixed-point positions on the circle.
//!
//! A `u128` value `x` represents the angle `2π · x / 2^128`, i.e. the
//! fraction of a full turn scaled by `2^128`. Wrapping arithmetic on `u128`
//! is then exact arithmetic mod one turn, which is what makes long
//! golden-mean orbits reliable: the rotation constant itself carries an
//! absolute error below `2^-128 ≈ 2.9e-39` (about 38 decimal digits), and
//! each step adds at most one unit in the last place.

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use std::f64::consts::TAU;
use std::sync::OnceLock;

/// Half a turn (the angle π).
pub const HALF_TURN: u128 = 1u128 << 127;

/// Fractional part of the golden mean `(√5+1)/2`, i.e. `(√5−1)/2`, rounded
/// to the nearest multiple of `2^-128`.
pub fn golden_frac_turn() -> u128 {
    static CACHE: OnceLock<u128> = OnceLock::new();
    *CACHE.get_or_init(|| {
        // floor(√5 · 2^128) via integer square root, then (√5−1)/2.
        let sqrt5 = (BigUint::from(5u32) << 256u32).sqrt();
        let frac = (sqrt5 - (BigUint::from(1u32) << 128u32)) >> 1u32;
        frac.to_u128().expect("golden fraction fits in u128")
    })
}

/// floor(√5 · 2^64), used when converting convergent errors to floats.
pub fn sqrt5_fixed64() -> BigUint {
    static CACHE: OnceLock<BigUint> = OnceLock::new();
    CACHE
        .get_or_init(|| (BigUint::from(5u32) << 128u32).sqrt())
        .clone()
}

/// Exact conversion of `t ∈ [0, 1)` to fixed point (truncating below
/// `2^-128`, which is below the resolution of `f64` anyway).
pub fn turn_from_unit(t: f64) -> u128 {
    debug_assert!((0.0..1.0).contains(&t), "unit fraction out of range: {t}");
    // Two exact splits: multiplying an f64 by 2^64 only shifts the exponent.
    let scaled = t * 18446744073709551616.0; // 2^64
    let hi = scaled.floor();
    let lo = ((scaled - hi) * 18446744073709551616.0).floor();
    ((hi as u128) << 64) | (lo as u128)
}

/// Angle in radians (any real) to a circle position.
pub fn turn_from_angle(theta: f64) -> u128 {
    let mut t = (theta / TAU).rem_euclid(1.0);
    if t >= 1.0 {
        t = 0.0; // rem_euclid can round up to 1.0 for tiny negative inputs
    }
    turn_from_unit(t)
}

/// Rounded conversion of the rational fraction `p/q` of a turn.
pub fn turn_from_ratio(p: u64, q: u64) -> u128 {
    let q_big = BigUint::from(q);
    let num = (BigUint::from(p % q) << 128u32) + (&q_big >> 1u32);
    (num / q_big).to_u128().unwrap_or(u128::MAX)
}

/// Circle position back to an angle in `[0, 2π)`.
pub fn turn_to_angle(x: u128) -> f64 {
    const TWO_POW_128: f64 = 340282366920938463463374607431768211456.0;
    let angle = (x as f64) / TWO_POW_128 * TAU;
    if angle >= TAU {
        0.0
    } else {
        angle
    }
}

/// Closed upper half circle `[0, π]`, matching the `Im(z) ≥ 0` convention.
pub fn is_upper_half(x: u128) -> bool {
    x <= HALF_TURN
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_fraction_digits() {
        // (√5−1)/2 to 40 digits: 0.6180339887498948482045868343656381177203
        // Check the fixed-point constant against the leading digits.
        let x = golden_frac_turn();
        let mut digits = String::new();
        let mut v = BigUint::from(x);
        let scale = BigUint::from(1u32) << 128u32;
        for _ in 0..38 {
            v *= 10u32;
            digits.push_str(&(&v / &scale).to_string());
            v %= &scale;
        }
        assert_eq!(digits, "61803398874989484820458683436563811772");
    }

    #[test]
    fn unit_conversion_round_trips() {
        for &t in &[0.0, 0.25, 0.5, 0.6180339887498949, 0.9999999999999999] {
            let x = turn_from_unit(t);
            let back = turn_to_angle(x) / TAU;
            assert!((back - t).abs() < 1e-15, "t={t} back={back}");
        }
    }

    #[test]
    fn wrapping_is_mod_one_turn() {
        let r = golden_frac_turn();
        let mut x = 0u128;
        for _ in 0..1000 {
            x = x.wrapping_add(r);
        }
        // frac(1000 · frac(r)) = frac(1000 r)
        let direct = r.wrapping_mul(1000);
        assert_eq!(x, direct);
    }

    #[test]
    fn ratio_positions() {
        assert_eq!(turn_from_ratio(1, 2), HALF_TURN);
        assert_eq!(turn_from_ratio(3, 2), HALF_TURN);
        assert_eq!(turn_from_ratio(1, 1), 0);
        assert_eq!(turn_from_ratio(1, 4), 1u128 << 126);
    }

    #[test]
    fn upper_half_boundaries() {
        assert!(is_upper_half(0));
        assert!(is_upper_half(HALF_TURN));
        assert!(!is_upper_half(HALF_TURN + 1));
        assert!(!is_upper_half(u128::MAX));
    }
}
