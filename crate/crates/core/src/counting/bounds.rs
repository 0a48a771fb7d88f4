use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, Zero};

use crate::error::{domain, Result};

fn pow_big(base: u32, exp: u32) -> BigInt {
    Pow::pow(BigInt::from(base), exp)
}

fn ratio(num: BigInt, den: impl Into<BigInt>) -> BigRational {
    BigRational::new(num, den.into())
}

/// `q^n / (2n - 2k + 1)`: the size limit for `(k, n-1)`-overlap-free codes.
///
/// The value is a valid bound only when `n >= 2k - 1`. For shorter words it can
/// be beaten: with `n = 4`, `k = 3` there are binary codes of six words, above
/// `16/3`.
pub fn upper_bound_weak(n: u32, k: u32, q: u32) -> Result<BigRational> {
    if k == 0 || k >= n {
        return Err(domain(format!("need 1 <= k <= n-1, got k = {k}, n = {n}")));
    }
    check_q(q)?;
    Ok(ratio(pow_big(q, n), 2 * (n - k) + 1))
}

/// `q^n / (2k)`: the size limit for `(1, k)`-overlap-free codes with `k <= n/2`.
pub fn upper_bound_1k(n: u32, k: u32, q: u32) -> Result<BigRational> {
    if k == 0 || 2 * k > n {
        return Err(domain(format!("need 1 <= k <= n/2, got k = {k}, n = {n}")));
    }
    check_q(q)?;
    Ok(ratio(pow_big(q, n), 2 * k))
}

/// `2^(n-4) + 2^(n-k-2)`, the binary limit obtained from the largest
/// non-trivial independent set of the overlap graph.
pub fn upper_bound_graph(n: u32, k: u32) -> Result<BigUint> {
    if k < 2 || n < k + 2 {
        return Err(domain(format!("need k >= 2 and n >= k + 2, got k = {k}, n = {n}")));
    }
    Ok((BigUint::one() << (n - 4) as usize) + (BigUint::one() << (n - k - 2) as usize))
}

fn check_q(q: u32) -> Result<()> {
    if q < 2 {
        return Err(domain(format!("alphabet size must be at least 2, got {q}")));
    }
    Ok(())
}

/// The three explicit lower bounds on `C(k, n) / 2^n` from the zero-block family.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ExplicitVariant {
    /// `1 / (9.67 k)`, held exactly as `100 / (967 k)`.
    Gen1,
    /// `2 / (9 k)`.
    Gen2,
    /// `1 / (4 k)`, only for `k` a power of two.
    Gen3,
}

impl ExplicitVariant {
    pub const ALL: [ExplicitVariant; 3] = [Self::Gen1, Self::Gen2, Self::Gen3];

    pub fn name(self) -> &'static str {
        match self {
            Self::Gen1 => "gen1",
            Self::Gen2 => "gen2",
            Self::Gen3 => "gen3",
        }
    }
}

/// Rational coefficient `c` with `C(k, n) >= c · 2^n`.
pub fn lower_bound_explicit(k: u32, variant: ExplicitVariant) -> Result<BigRational> {
    if k < 2 {
        return Err(domain(format!("need k >= 2, got {k}")));
    }
    if variant == ExplicitVariant::Gen3 && !k.is_power_of_two() {
        return Err(domain(format!("gen3 needs k a power of two, got {k}")));
    }
    let k = BigInt::from(k);
    Ok(match variant {
        ExplicitVariant::Gen1 => ratio(BigInt::from(100), BigInt::from(967) * k),
        ExplicitVariant::Gen2 => ratio(BigInt::from(2), BigInt::from(9) * k),
        ExplicitVariant::Gen3 => ratio(BigInt::one(), BigInt::from(4) * k),
    })
}

/// Levenshtein's asymptotic constant `numerator / (e_multiple · e)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LevenshteinConstant {
    pub numerator: u32,
    pub e_multiple: u32,
}

impl LevenshteinConstant {
    /// Decimal value of the denominator, for display only.
    pub fn denominator_approx(&self) -> f64 {
        f64::from(self.e_multiple) * std::f64::consts::E / f64::from(self.numerator)
    }
}

impl fmt::Display for LevenshteinConstant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/({}e) ≈ 1/{:.3}", self.numerator, self.e_multiple, self.denominator_approx())
    }
}

/// Lower bounds on the best Gilbert–Levenshtein code of length `n`.
#[derive(Clone, Debug, PartialEq)]
pub struct ClassicBounds {
    /// `2^n / (9n)`.
    pub nine_n: BigRational,
    /// `2^n / (8n)`, present only when `n` is a power of two.
    pub eight_n: Option<BigRational>,
    /// `1 / (2e)`, the asymptotic coefficient of `2^n / n`.
    pub lev_asymptotic: LevenshteinConstant,
}

pub fn classic_bounds(n: u32) -> Result<ClassicBounds> {
    if n < 3 {
        return Err(domain(format!("need n >= 3, got {n}")));
    }
    let two_n = pow_big(2, n);
    Ok(ClassicBounds {
        nine_n: ratio(two_n.clone(), 9 * n),
        eight_n: n.is_power_of_two().then(|| ratio(two_n, 8 * n)),
        lev_asymptotic: LevenshteinConstant { numerator: 1, e_multiple: 2 },
    })
}

/// Fixed-point decimal rendering of a rational, rounding half away from zero.
pub fn render_decimal(value: &BigRational, places: u32) -> String {
    let scale: BigInt = Pow::pow(BigInt::from(10), places);
    let num: BigInt = value.numer().abs() * &scale * 2 + value.denom().abs();
    let den: BigInt = value.denom().abs() * 2;
    let scaled = num.div_floor(&den);
    let negative = value.is_negative() && !scaled.is_zero();
    let (int_part, frac_part) = scaled.div_rem(&scale);
    let sign = if negative { "-" } else { "" };
    if places == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{:0>width$}", frac_part.to_string(), width = places as usize)
    }
}
