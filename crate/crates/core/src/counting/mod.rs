//! n-step Fibonacci numbers, run-constrained sequence counts, and the
//! closed-form bounds on overlap-free code sizes.

mod bounds;
mod size;

pub use bounds::{
    classic_bounds, lower_bound_explicit, render_decimal, upper_bound_1k, upper_bound_graph,
    upper_bound_weak, ClassicBounds, ExplicitVariant, LevenshteinConstant,
};
pub use size::SymbolicSize;

use std::collections::VecDeque;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{capacity, domain, Result};

/// Memoized values of the `z`-step Fibonacci sequence
/// `F_i = F_(i-1) + ... + F_(i-z)` with `F_1 = 1` and `F_i = 0` for `-z+2 <= i <= 0`.
///
/// Lookups take `&mut self`; give each thread its own table.
#[derive(Clone, Debug)]
pub struct FibTable {
    z: u32,
    // values[i - 1] = F_i for i >= 1
    values: Vec<BigUint>,
}

impl FibTable {
    pub fn new(z: u32) -> Result<Self> {
        if z == 0 {
            return Err(domain("step parameter z must be at least 1"));
        }
        Ok(Self { z, values: vec![BigUint::one()] })
    }

    pub fn z(&self) -> u32 {
        self.z
    }

    /// `F_i^(z)`; indices below `-z+2` are outside the sequence.
    pub fn get(&mut self, i: i64) -> Result<&BigUint> {
        if i < 2 - i64::from(self.z) {
            return Err(domain(format!(
                "index {i} below the first defined term {}",
                2 - i64::from(self.z)
            )));
        }
        if i <= 0 {
            return Ok(zero_ref());
        }
        let i = i as usize;
        while self.values.len() < i {
            let next = self.next_value();
            self.values.push(next);
        }
        Ok(&self.values[i - 1])
    }

    // F_i = 2 F_(i-1) - F_(i-z-1) for i >= 3: the window sum slides by one term.
    fn next_value(&self) -> BigUint {
        let i = self.values.len() + 1;
        if i == 2 {
            return BigUint::one();
        }
        let prev = &self.values[i - 2];
        let dropped = i as i64 - i64::from(self.z) - 1;
        if dropped >= 1 {
            (prev << 1usize) - &self.values[dropped as usize - 1]
        } else {
            prev << 1usize
        }
    }
}

fn zero_ref() -> &'static BigUint {
    static ZERO: std::sync::OnceLock<BigUint> = std::sync::OnceLock::new();
    ZERO.get_or_init(BigUint::zero)
}

/// `F_i^(z)`, exact.
pub fn fib_nstep(z: u32, i: i64) -> Result<BigUint> {
    let mut table = FibTable::new(z)?;
    table.get(i).cloned()
}

/// The last `count` terms `F_(upto-count+1) ..= F_upto`, oldest first, computed
/// with a sliding window so that very long sequences do not stay resident.
pub(crate) fn fib_tail(z: u32, upto: u64, count: usize) -> Result<Vec<BigUint>> {
    if z == 0 {
        return Err(domain("step parameter z must be at least 1"));
    }
    if upto == 0 {
        return Err(domain("tail must end at a positive index"));
    }
    let z = z as usize;
    let keep = count.max(z + 1);
    let mut window: VecDeque<BigUint> = VecDeque::with_capacity(keep + 1);
    // window holds F_(i-keep+1) ..= F_i, zero-padded on the left.
    let mut sum = BigUint::one(); // sum of the last z terms
    window.push_back(BigUint::one());
    for _ in 2..=upto {
        let next = sum.clone();
        sum += &next;
        if window.len() >= z {
            sum -= &window[window.len() - z];
        }
        window.push_back(next);
        if window.len() > keep {
            window.pop_front();
        }
    }
    let start = window.len().saturating_sub(count);
    let mut out: Vec<BigUint> = window.into_iter().skip(start).collect();
    while out.len() < count {
        out.insert(0, BigUint::zero());
    }
    Ok(out)
}

/// Number of binary words of length `len` without `z` consecutive zeros,
/// which is `F_(len+2)^(z)`.
pub fn count_no_zero_run(len: u32, z: u32) -> Result<BigUint> {
    if len == 0 {
        return Err(domain("length must be at least 1"));
    }
    fib_nstep(z, i64::from(len) + 2)
}

/// Largest `len` accepted by [`phi`], whose count is by enumeration.
pub const PHI_MAX_LEN: u32 = 24;

/// Number of length-`len` words of weight `weight` in which any two cyclically
/// consecutive ones are separated by at least `z` zeros.
pub fn phi(len: u32, weight: u32, z: u32) -> Result<u64> {
    if z == 0 || z >= len {
        return Err(domain(format!("need 1 <= z < len, got z = {z}, len = {len}")));
    }
    if weight >= len {
        return Err(domain(format!("need weight < len, got {weight} >= {len}")));
    }
    if len > PHI_MAX_LEN {
        return Err(capacity(format!(
            "phi enumerates words; len {len} exceeds {PHI_MAX_LEN}"
        )));
    }
    if weight == 0 {
        return Ok(1);
    }
    let mask = (1u32 << len) - 1;
    let rotl = |w: u32, j: u32| ((w << j) | (w >> (len - j))) & mask;
    let mut count = 0u64;
    let mut w: u32 = (1 << weight) - 1;
    loop {
        // every one must be followed (cyclically) by at least z zeros
        let near = (1..=z).fold(0, |acc, j| acc | rotl(w, j));
        if w & near == 0 {
            count += 1;
        }
        // Gosper's hack: next word of the same weight
        let c = w & w.wrapping_neg();
        let r = w + c;
        if r > mask || r == 0 {
            break;
        }
        w = (((r ^ w) >> 2) / c) | r;
        if w > mask {
            break;
        }
    }
    Ok(count)
}

/// Largest `a` for [`nu`]; the sequence length is `2^a`.
pub const NU_MAX_A: u32 = 16;
/// Largest `a` for [`nu_brute_force`].
pub const NU_BRUTE_MAX_A: u32 = 4;

/// Number of binary words of length `2^a` with no cyclic run of `a-1` or more
/// zeros.
///
/// Counted by the position of the first one: with `i` leading and `j` trailing
/// zeros (`i + j < z`), the rest is a word that starts and ends with one and has
/// no internal run of `z` zeros, and there are `F_(len-i-j)^(z)` of those.
pub fn nu(a: u32) -> Result<BigUint> {
    if a < 2 {
        return Err(domain("nu needs a >= 2"));
    }
    if a > NU_MAX_A {
        return Err(capacity(format!("nu is limited to a <= {NU_MAX_A}")));
    }
    let len = 1u64 << a;
    let z = a - 1;
    // tail[z-1-d] = F_(len-d), d = 0..z
    let tail = fib_tail(z, len, z as usize)?;
    let mut total = BigUint::zero();
    for d in 0..z as usize {
        total += &tail[z as usize - 1 - d] * BigUint::from(d + 1);
    }
    Ok(total)
}

/// [`nu`] by exhaustive enumeration over all `2^(2^a)` words, for `a <= 4`.
pub fn nu_brute_force(a: u32) -> Result<u64> {
    if a < 2 {
        return Err(domain("nu needs a >= 2"));
    }
    if a > NU_BRUTE_MAX_A {
        return Err(capacity(format!(
            "brute-force nu is limited to a <= {NU_BRUTE_MAX_A}"
        )));
    }
    let len = 1u32 << a;
    let z = a - 1;
    let count = (1u64..(1u64 << len))
        .filter(|&w| max_cyclic_zero_run(w, len) < z)
        .count();
    Ok(count as u64)
}

fn max_cyclic_zero_run(w: u64, len: u32) -> u32 {
    // Rotate so the word ends in a one; then the linear longest run is the cyclic one.
    let low_one = w.trailing_zeros();
    let rotated = if low_one == 0 {
        w
    } else {
        ((w >> low_one) | (w << (len - low_one))) & crate::word::low_mask(len)
    };
    let mut best = 0;
    let mut run = 0;
    for i in 0..len {
        if (rotated >> i) & 1 == 0 {
            run += 1;
            best = best.max(run);
        } else {
            run = 0;
        }
    }
    best
}

/// `num / 2^pow2` as an `f64`, for display next to limits such as `1/e`.
pub fn ratio_to_pow2(num: &BigUint, pow2: u64) -> f64 {
    let bits = num.bits();
    if bits <= 60 {
        return num.to_f64().unwrap_or(f64::NAN) * (-(pow2 as f64)).exp2();
    }
    let shift = bits - 60;
    let top = (num >> shift as usize).to_f64().unwrap_or(f64::NAN);
    top * ((shift as f64) - (pow2 as f64)).exp2()
}
