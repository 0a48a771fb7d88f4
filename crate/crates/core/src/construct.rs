//! The four constructions: Doubling, m-minimum, Zero Block and
//! Gilbert–Levenshtein.

use num_bigint::BigUint;
use rayon::prelude::*;

use crate::codecheck::{Code, PrefixSuffixSystem};
use crate::counting::{fib_nstep, SymbolicSize};
use crate::error::{capacity, domain, Result};
use crate::word::{low_mask, prefix_bits};

pub const DOUBLING_MAX_K: u32 = 23;
pub const M_MINIMUM_MAX_K: u32 = 20;
pub const ZERO_BLOCK_EMIT_MAX_K: u32 = 24;
pub const GL_EMIT_MAX_N: u32 = 32;

/// One level of the doubling recursion.
#[derive(Clone, Debug)]
pub struct DoublingStep {
    pub k: u32,
    prefixes: Vec<u64>,
    suffixes: Vec<u64>,
    /// Words that were in both doubled sets, ascending.
    pub duplicates: Vec<u64>,
}

impl DoublingStep {
    pub fn p_len(&self) -> usize {
        self.prefixes.len()
    }

    pub fn s_len(&self) -> usize {
        self.suffixes.len()
    }

    pub fn product(&self) -> u64 {
        self.p_len() as u64 * self.s_len() as u64
    }

    pub fn prefix_values(&self) -> &[u64] {
        &self.prefixes
    }

    pub fn suffix_values(&self) -> &[u64] {
        &self.suffixes
    }

    pub fn system(&self) -> PrefixSuffixSystem {
        PrefixSuffixSystem::from_sorted_unchecked(self.k, self.prefixes.clone(), self.suffixes.clone())
    }

    pub fn size(&self) -> SymbolicSize {
        SymbolicSize::new(self.product(), 2 * self.k)
    }
}

#[derive(Clone, Debug)]
pub struct DoublingTrace {
    steps: Vec<DoublingStep>,
}

impl DoublingTrace {
    /// Steps for `k = 1..=k_max`.
    pub fn steps(&self) -> &[DoublingStep] {
        &self.steps
    }

    pub fn step(&self, k: u32) -> Option<&DoublingStep> {
        self.steps.get((k as usize).checked_sub(1)?)
    }

    pub fn k_max(&self) -> u32 {
        self.steps.len() as u32
    }
}

/// Runs the doubling recursion from `P_1 = {0}`, `S_1 = {1}` up to `k_max`.
///
/// Each level appends a bit to every prefix and prepends one to every suffix,
/// then removes each word common to both sets from whichever side is larger at
/// that moment, scanning the duplicates in ascending order and removing from
/// the suffix side on ties.
pub fn doubling(k_max: u32) -> Result<DoublingTrace> {
    if !(1..=DOUBLING_MAX_K).contains(&k_max) {
        return Err(capacity(format!("doubling needs 1 <= k_max <= {DOUBLING_MAX_K}, got {k_max}")));
    }
    let mut steps = Vec::with_capacity(k_max as usize);
    steps.push(DoublingStep { k: 1, prefixes: vec![0], suffixes: vec![1], duplicates: Vec::new() });
    for k in 2..=k_max {
        let last = steps.last().unwrap();
        let prefixes: Vec<u64> = last.prefixes.iter().flat_map(|&p| [p << 1, (p << 1) | 1]).collect();
        let high = 1u64 << (k - 1);
        let suffixes: Vec<u64> =
            last.suffixes.iter().copied().chain(last.suffixes.iter().map(|&s| s | high)).collect();
        let duplicates = sorted_intersection(&prefixes, &suffixes);
        let (mut p_len, mut s_len) = (prefixes.len(), suffixes.len());
        let mut drop_p = Vec::new();
        let mut drop_s = Vec::new();
        for &d in &duplicates {
            if p_len > s_len {
                drop_p.push(d);
                p_len -= 1;
            } else {
                drop_s.push(d);
                s_len -= 1;
            }
        }
        steps.push(DoublingStep {
            k,
            prefixes: sorted_difference(&prefixes, &drop_p),
            suffixes: sorted_difference(&suffixes, &drop_s),
            duplicates,
        });
    }
    Ok(DoublingTrace { steps })
}

fn sorted_intersection(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

fn sorted_difference(a: &[u64], remove: &[u64]) -> Vec<u64> {
    let mut out = Vec::with_capacity(a.len() - remove.len());
    let mut j = 0;
    for &x in a {
        while j < remove.len() && remove[j] < x {
            j += 1;
        }
        if j < remove.len() && remove[j] == x {
            continue;
        }
        out.push(x);
    }
    out
}

#[derive(Clone, Debug)]
pub struct MMinimumResult {
    pub k: u32,
    /// Number of prefixes: the words with values `0..m`.
    pub m: u64,
    pub system: PrefixSuffixSystem,
    pub size: SymbolicSize,
}

/// Surviving suffix set while prefixes `0, 1, 2, ...` are added one at a time.
struct SuffixSieve {
    k: u32,
    alive: Vec<bool>,
    count: u64,
}

impl SuffixSieve {
    fn new(k: u32) -> Self {
        Self { k, alive: vec![true; 1 << k], count: 1 << k }
    }

    /// Removes every suffix adjacent to prefix `p`. Prefixes must arrive in
    /// increasing order starting from 0.
    fn add_prefix(&mut self, p: u64) {
        let k = self.k;
        for t in 1..=k {
            // the t-prefix only changes when p crosses a multiple of 2^(k-t)
            if p & low_mask(k - t) != 0 {
                continue;
            }
            let head = prefix_bits(p, k, t) as usize;
            for high in 0..(1usize << (k - t)) {
                let s = (high << t) | head;
                if std::mem::replace(&mut self.alive[s], false) {
                    self.count -= 1;
                }
            }
        }
    }

    fn survivors(&self) -> Vec<u64> {
        (0..self.alive.len() as u64).filter(|&s| self.alive[s as usize]).collect()
    }
}

/// Takes the first `m` integers as prefixes and every compatible word as a
/// suffix, for the `m` that maximizes the product (smallest `m` on ties).
pub fn m_minimum(k: u32) -> Result<MMinimumResult> {
    if !(2..=M_MINIMUM_MAX_K).contains(&k) {
        return Err(capacity(format!("m-minimum needs 2 <= k <= {M_MINIMUM_MAX_K}, got {k}")));
    }
    let mut sieve = SuffixSieve::new(k);
    let (mut best_m, mut best_product) = (0u64, 0u64);
    for p in 0..(1u64 << (k - 1)) {
        sieve.add_prefix(p);
        let product = (p + 1) * sieve.count;
        if product > best_product {
            best_product = product;
            best_m = p + 1;
        }
    }
    let mut sieve = SuffixSieve::new(k);
    for p in 0..best_m {
        sieve.add_prefix(p);
    }
    let system =
        PrefixSuffixSystem::from_sorted_unchecked(k, (0..best_m).collect(), sieve.survivors());
    Ok(MMinimumResult { k, m: best_m, system, size: SymbolicSize::new(best_product, 2 * k) })
}

#[derive(Clone, Debug)]
pub struct ZeroBlockResult {
    pub k: u32,
    /// Length of the zero block that starts every prefix.
    pub z: u32,
    pub size: SymbolicSize,
    /// `(z, coefficient)` for every candidate `z`.
    pub candidates: Vec<(u32, BigUint)>,
    pub system: Option<PrefixSuffixSystem>,
}

/// Prefixes start with `z` zeros; suffixes end in 1 and avoid any run of `z`
/// zeros. The block length is chosen to maximize the product.
pub fn zero_block(k: u32, emit_sets: bool) -> Result<ZeroBlockResult> {
    if k < 2 {
        return Err(domain(format!("zero block needs k >= 2, got {k}")));
    }
    if emit_sets && k > ZERO_BLOCK_EMIT_MAX_K {
        return Err(capacity(format!(
            "explicit zero-block sets are limited to k <= {ZERO_BLOCK_EMIT_MAX_K}"
        )));
    }
    let candidates = (1..k)
        .into_par_iter()
        .map(|z| Ok((z, fib_nstep(z, i64::from(k) + 1)? << (k - z) as usize)))
        .collect::<Result<Vec<_>>>()?;
    let (z, coefficient) = best_smallest(&candidates);
    let system = emit_sets.then(|| {
        let prefixes: Vec<u64> = (0..1u64 << (k - z)).collect();
        let suffixes: Vec<u64> = (0..1u64 << k)
            .filter(|&s| s & 1 == 1 && !has_zero_run(s, k, z))
            .collect();
        PrefixSuffixSystem::from_sorted_unchecked(k, prefixes, suffixes)
    });
    Ok(ZeroBlockResult { k, z, size: SymbolicSize::new(coefficient, 2 * k), candidates, system })
}

/// First candidate holding the maximum value.
fn best_smallest(candidates: &[(u32, BigUint)]) -> (u32, BigUint) {
    let mut best = &candidates[0];
    for c in &candidates[1..] {
        if c.1 > best.1 {
            best = c;
        }
    }
    best.clone()
}

/// Whether the `len`-bit word contains `z` consecutive zeros.
pub(crate) fn has_zero_run(w: u64, len: u32, z: u32) -> bool {
    if z > len {
        return false;
    }
    let mut zeros = !w & low_mask(len);
    // after the loop bit i is set iff bits i..i+z are all zero
    for _ in 1..z {
        zeros &= zeros >> 1;
    }
    zeros & low_mask(len - z + 1) != 0
}

#[derive(Clone, Debug)]
pub struct GilbertLevenshteinResult {
    pub n: u32,
    pub z: u32,
    /// `S(n)`, the largest family size over all `z`.
    pub size: BigUint,
    pub candidates: Vec<(u32, BigUint)>,
    pub code: Option<Code>,
}

/// Codewords `0^z 1 m 1` where `m` has no run of `z` zeros; `z` maximizes the
/// family size (smallest on ties).
pub fn gilbert_levenshtein(n: u32, emit_code: bool) -> Result<GilbertLevenshteinResult> {
    if n < 3 {
        return Err(domain(format!("Gilbert–Levenshtein needs n >= 3, got {n}")));
    }
    if emit_code && n > GL_EMIT_MAX_N {
        return Err(capacity(format!("explicit codes are limited to n <= {GL_EMIT_MAX_N}")));
    }
    let candidates = (1..n)
        .into_par_iter()
        .map(|z| Ok((z, fib_nstep(z, i64::from(n - z))?)))
        .collect::<Result<Vec<_>>>()?;
    let (z, size) = best_smallest(&candidates);
    let code = if emit_code { Some(gilbert_levenshtein_code(n, z)?) } else { None };
    Ok(GilbertLevenshteinResult { n, z, size, candidates, code })
}

/// The code `L_z` of length `n` for one block length `z`.
pub fn gilbert_levenshtein_code(n: u32, z: u32) -> Result<Code> {
    if n < 3 || !(1..n).contains(&z) {
        return Err(domain(format!("L_z needs n >= 3 and 1 <= z <= n-1, got n={n}, z={z}")));
    }
    if n > GL_EMIT_MAX_N {
        return Err(capacity(format!("explicit codes are limited to n <= {GL_EMIT_MAX_N}")));
    }
    if z == n - 1 {
        return Code::from_values(n, vec![1]);
    }
    let middle = n - z - 2;
    let mut words = Vec::new();
    // middles in increasing order; the leading zeros and the framing 1s keep the order
    extend_middles(middle, z, 0, 0, 0, &mut |m| {
        words.push((1u64 << (middle + 1)) | (m << 1) | 1);
    });
    Ok(Code::from_sorted_unchecked(n, words))
}

/// Calls `emit` with every word of length `len` without `z` consecutive zeros,
/// in increasing order. `run` is the current trailing zero run.
fn extend_middles(len: u32, z: u32, depth: u32, acc: u64, run: u32, emit: &mut impl FnMut(u64)) {
    if depth == len {
        emit(acc);
        return;
    }
    if run + 1 < z {
        extend_middles(len, z, depth + 1, acc << 1, run + 1, emit);
    }
    extend_middles(len, z, depth + 1, (acc << 1) | 1, 0, emit);
}

/// `S(n)` without the candidate list.
pub fn gilbert_levenshtein_size(n: u32) -> Result<BigUint> {
    Ok(gilbert_levenshtein(n, false)?.size)
}
