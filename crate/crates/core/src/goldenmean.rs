//! Exact arithmetic around the golden mean `r = (√5+1)/2`.
//!
//! The Fibonacci sequence used throughout is `q_1 = 2, q_2 = 3, 5, 8, …`,
//! with convergents `r_n = p_n/q_n` where `p_n = q_{n+1}`. Everything that
//! can be decided in integer arithmetic is (recurrences, parity, which side
//! of `r` a convergent falls on, error bounds); real-valued quantities go
//! through the crate's 128-bit fixed-point circle arithmetic.

use crate::error::{Error, Result};
use crate::fixed;
use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{CheckedSub, ToPrimitive};
use std::f64::consts::PI;
use std::sync::OnceLock;

/// The golden mean rounded to the nearest `f64`.
pub const GOLDEN_MEAN: f64 = 1.618033988749894848204586834365638118;

/// The golden mean to 40 significant digits, for callers that need more
/// precision than `f64` (the fixed-point circle uses the same value).
pub const GOLDEN_MEAN_DECIMAL: &str = "1.61803398874989484820458683436563811772";

/// `q_n` with `q_1 = 2, q_2 = 3` and `q_{n+1} = q_n + q_{n−1}`, exact.
pub fn fibonacci_q(n: u32) -> Result<BigUint> {
    if n == 0 {
        return Err(Error::InvalidIndex(0));
    }
    let (mut a, mut b) = (BigUint::from(2u32), BigUint::from(3u32));
    for _ in 1..n {
        let next = &a + &b;
        a = b;
        b = next;
    }
    Ok(a)
}

/// Rational approximant `r_n = p_n/q_n` to the golden mean.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Convergent {
    /// 1-based index in the sequence `{2, 3, 5, 8, …}`.
    pub n: u32,
    /// Numerator `p_n = q_{n+1}`.
    pub p: BigUint,
    /// Denominator `q_n`.
    pub q: BigUint,
}

impl Convergent {
    /// The exact rational value `p_n/q_n`.
    pub fn value(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.p.clone()),
            BigInt::from(self.q.clone()),
        )
    }

    /// Exact predicate `r_n < r`, decided as `(2p−q)² < 5q²` in integers.
    ///
    /// The paper's even/odd characterization conflicts with its own
    /// `q_1 = 2` indexing, so callers should use this predicate rather
    /// than index parity.
    pub fn is_below_golden(&self) -> bool {
        let a = BigUint::from(2u32) * &self.p - &self.q;
        let lhs = &a * &a;
        let rhs = BigUint::from(5u32) * &self.q * &self.q;
        lhs < rhs
    }

    /// Exact test of `q_n² · |r_n − r| < bound` for a rational bound,
    /// decided entirely in integer arithmetic.
    pub fn error_qsq_less_than(&self, bound_num: u64, bound_den: u64) -> bool {
        // q²|p/q − r| = (q/2)|A − B√5| with A = 2p−q, B = q, so the test
        // is |U − V√5| < W with U = q·bd·A, V = q·bd·B, W = 2·bn.
        let a = BigUint::from(2u32) * &self.p - &self.q;
        let bd = BigUint::from(bound_den);
        let u = &self.q * &bd * a;
        let v = &self.q * &bd * &self.q;
        let w = BigUint::from(2u32) * BigUint::from(bound_num);
        let five_v_sq = BigUint::from(5u32) * &v * &v;
        // U < V√5 + W
        let below = match u.checked_sub(&w) {
            None => true,
            Some(d) => &d * &d < five_v_sq,
        };
        // V√5 < U + W
        let above = {
            let s = &u + &w;
            five_v_sq < &s * &s
        };
        below && above
    }
}

/// Exact verification of the convergent identities at index `n`, for
/// check runners: `p_n = q_{n+1}`, the signed difference
/// `r_{n+1} − r_n = (−1)^{n+1}/(q_{n+1}q_n)`, and the parity pattern
/// (`q_n` even exactly when `n ≡ 1 mod 3`).
pub fn convergent_identities_hold(n: u32) -> Result<bool> {
    let c = convergent(n)?;
    let next = convergent(n + 1)?;
    if c.p != next.q {
        return Ok(false);
    }
    let parity_ok = ((&c.q % 2u32) == BigUint::from(0u32)) == (n % 3 == 1);
    let diff = next.value() - c.value();
    let expect = BigRational::new(
        BigInt::from(if n % 2 == 1 { 1 } else { -1 }),
        BigInt::from(&next.q * &c.q),
    );
    Ok(parity_ok && diff == expect)
}

/// The `n`-th convergent `(p_n, q_n) = (q_{n+1}, q_n)`.
pub fn convergent(n: u32) -> Result<Convergent> {
    if n == 0 {
        return Err(Error::InvalidIndex(0));
    }
    let q = fibonacci_q(n)?;
    let p = fibonacci_q(n + 1)?;
    Ok(Convergent { n, p, q })
}

/// `δ_n = q_n² |r_n − r| / 2π`. Converges to `1/(2π√5) ≈ 0.0711763`.
pub fn delta_n(n: u32) -> Result<f64> {
    if n == 0 {
        return Err(Error::InvalidIndex(0));
    }
    let c = convergent(n)?;
    // q²|r_n − r| = q·|A² − 5B²| / (2(A + B√5)), A = 2p−q, B = q.
    let a = BigUint::from(2u32) * &c.p - &c.q;
    let a_sq = &a * &a;
    let five_b_sq = BigUint::from(5u32) * &c.q * &c.q;
    let e = if a_sq >= five_b_sq {
        &a_sq - &five_b_sq
    } else {
        &five_b_sq - &a_sq
    };
    let num = (&c.q * e) << 64u32;
    let den = (a << 64u32) + &c.q * fixed::sqrt5_fixed64();
    Ok(big_ratio_to_f64(&num, &den) / (4.0 * PI))
}

/// `num/den` as `f64`, robust to operands far beyond the `f64` range.
fn big_ratio_to_f64(num: &BigUint, den: &BigUint) -> f64 {
    let shift = num.bits().max(den.bits()).saturating_sub(80);
    let n = (num >> shift).to_f64().unwrap_or(f64::INFINITY);
    let d = (den >> shift).to_f64().unwrap_or(f64::INFINITY);
    n / d
}

/// Decomposition of a positive integer into a strictly increasing sum
/// drawn from `{1} ∪ {q_n}` (the set is extended by 1 so that every
/// positive integer decomposes; `{2,3,5,…}` alone misses 1 and 4).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FibDecomposition {
    /// The decomposed integer.
    pub k: u64,
    /// Strictly increasing parts summing to `k`.
    pub parts: Vec<u64>,
    /// Matching indices: 0 denotes the prepended 1, `i ≥ 1` denotes `q_i`.
    pub indices: Vec<u32>,
}

impl FibDecomposition {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Lemma-style bound `ln k / ln 1.5` on the number of parts (`k ≥ 2`).
    pub fn length_bound(&self) -> f64 {
        decomposition_length_bound(self.k)
    }
}

/// `ln k / ln 1.5`.
pub fn decomposition_length_bound(k: u64) -> f64 {
    (k as f64).ln() / 1.5f64.ln()
}

fn extended_fib_table() -> &'static [u64] {
    static TABLE: OnceLock<Vec<u64>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = vec![1u64, 2, 3];
        loop {
            let &[.., a, b] = t.as_slice() else {
                unreachable!()
            };
            match a.checked_add(b) {
                Some(next) => t.push(next),
                None => break,
            }
        }
        t
    })
}

/// Greedy decomposition: repeatedly take the largest table entry that
/// still fits. The remainder after taking `q_ℓ` is below `q_{ℓ−1}`, so the
/// parts are strictly decreasing as produced (returned ascending).
pub fn decompose(k: u64) -> Result<FibDecomposition> {
    if k == 0 {
        return Err(Error::InvalidInput(
            "cannot decompose 0 into positive Fibonacci parts".into(),
        ));
    }
    let table = extended_fib_table();
    let mut rem = k;
    let mut parts = Vec::new();
    let mut indices = Vec::new();
    while rem > 0 {
        let pos = table.partition_point(|&v| v <= rem) - 1;
        parts.push(table[pos]);
        indices.push(pos as u32);
        rem -= table[pos];
    }
    parts.reverse();
    indices.reverse();
    Ok(FibDecomposition { k, parts, indices })
}

/// Number of orbit points `θ + j·2πr mod 2π`, `j = 1..=k`, landing in the
/// closed upper half circle `[0, π]`.
pub fn halfcircle_count(theta: f64, k: u64) -> u64 {
    let rot = fixed::golden_frac_turn();
    let mut x = fixed::turn_from_angle(theta);
    let mut count = 0u64;
    for _ in 0..k {
        x = x.wrapping_add(rot);
        if fixed::is_upper_half(x) {
            count += 1;
        }
    }
    count
}
