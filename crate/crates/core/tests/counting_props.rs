use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use overlapfree::counting::{
    classic_bounds, count_no_zero_run, fib_nstep, lower_bound_explicit, nu, nu_brute_force, phi,
    render_decimal, upper_bound_1k, upper_bound_graph, upper_bound_weak, ExplicitVariant,
    FibTable, SymbolicSize,
};
use proptest::prelude::*;

fn big(v: u64) -> BigUint {
    BigUint::from(v)
}

fn pow2(e: u32) -> BigUint {
    BigUint::from(1u8) << e as usize
}

fn rat(n: impl Into<BigInt>, d: impl Into<BigInt>) -> BigRational {
    BigRational::new(n.into(), d.into())
}

/// Direct z-term recurrence with explicit zero padding.
fn fib_reference(z: u32, i: i64) -> BigUint {
    let z = z as i64;
    let start = 2 - z;
    let mut vals: Vec<BigUint> = Vec::new();
    for j in start..=i.max(1) {
        let v = if j <= 0 {
            big(0)
        } else if j == 1 {
            big(1)
        } else {
            let lo = (j - z - start).max(0) as usize;
            let hi = (j - 1 - start) as usize;
            vals[lo..=hi].iter().sum()
        };
        vals.push(v);
    }
    vals[(i - start) as usize].clone()
}

fn longest_zero_run(w: u64, len: u32) -> u32 {
    let (mut best, mut run) = (0, 0);
    for i in 0..len {
        if w >> i & 1 == 0 {
            run += 1;
            best = best.max(run);
        } else {
            run = 0;
        }
    }
    best
}

fn binom(n: u32, k: u32) -> i128 {
    (0..k).fold(1i128, |acc, i| acc * (n - i) as i128 / (i + 1) as i128)
}

#[test]
fn recurrence_matches_reference() {
    for z in 1..=8 {
        let mut table = FibTable::new(z).unwrap();
        for i in (2 - z as i64)..=40 {
            assert_eq!(table.get(i).unwrap(), &fib_reference(z, i), "z={z} i={i}");
        }
    }
}

#[test]
fn closed_form_identities() {
    for z in 1..=30u32 {
        let mut t = FibTable::new(z).unwrap();
        for i in 2..=(z + 1) {
            assert_eq!(t.get(i64::from(i)).unwrap(), &pow2(i - 2), "z={z} i={i}");
        }
        assert_eq!(t.get(i64::from(z) + 2).unwrap(), &(pow2(z) - 1u32));
        assert_eq!(t.get(i64::from(z) + 3).unwrap(), &(pow2(z + 1) - 3u32));
    }
}

#[test]
fn no_zero_run_matches_enumeration() {
    for len in 1..=16u32 {
        for z in 1..=len {
            let count = (0..1u64 << len).filter(|&w| longest_zero_run(w, len) < z).count();
            assert_eq!(count_no_zero_run(len, z).unwrap(), big(count as u64), "len={len} z={z}");
        }
    }
}

#[test]
fn event_probabilities_hold_exactly() {
    for k in 2..=64u32 {
        for z in 1..k {
            let f = BigRational::from_integer(BigInt::from(fib_nstep(z, i64::from(k) + 1).unwrap()));
            let half = BigRational::from_integer(BigInt::from(pow2(k - 1)));
            let one = BigRational::from_integer(1.into());
            let strict = (&one - rat(k, BigInt::from(pow2(z)))) * &half;
            let loose = (&one - rat(k, BigInt::from(pow2(z + 1)))) * &half;
            assert!(f > strict, "k={k} z={z}");
            assert!(f >= loose, "k={k} z={z}");
        }
    }
}

#[test]
fn phi_bounds() {
    for len in 2..=18u32 {
        for z in 1..len {
            for weight in 0..len {
                let value = phi(len, weight, z).unwrap() as i128;
                let upper = binom(len, weight);
                let lower = upper - (weight * z) as i128 * if weight == 0 { 0 } else { binom(len, weight - 1) };
                assert!(lower <= value && value <= upper, "len={len} weight={weight} z={z}");
            }
        }
    }
    assert_eq!(phi(7, 1, 3).unwrap(), 7);
}

#[test]
fn phi_matches_enumeration() {
    for len in 2..=12u32 {
        for z in 1..len {
            for weight in 0..len {
                let count = (0..1u64 << len)
                    .filter(|w| w.count_ones() == weight)
                    .filter(|&w| {
                        let ones: Vec<u32> = (0..len).filter(|i| w >> i & 1 == 1).collect();
                        ones.iter().enumerate().all(|(j, &p)| {
                            let next = if j + 1 < ones.len() { ones[j + 1] } else { ones[0] + len };
                            ones.len() < 2 || next - p > z
                        })
                    })
                    .count();
                assert_eq!(phi(len, weight, z).unwrap(), count as u64, "len={len} w={weight} z={z}");
            }
        }
    }
}

#[test]
fn nu_decomposition_matches_enumeration() {
    for (a, expected) in [(2u32, 1u64), (3, 47), (4, 17155)] {
        assert_eq!(nu_brute_force(a).unwrap(), expected);
        assert_eq!(nu(a).unwrap(), big(expected));
    }
}

#[test]
fn nu_gap_to_linear_count() {
    for a in 2..=4u32 {
        let len = 1u32 << a;
        let f = BigInt::from(count_no_zero_run(len, a - 1).unwrap());
        let v = BigInt::from(nu(a).unwrap());
        let gap = if f > v { &f - &v } else { &v - &f };
        assert!(gap <= BigInt::from(pow2(len - a.div_ceil(2) + 1)), "a={a}");
    }
}

#[test]
fn bound_examples() {
    assert_eq!(upper_bound_weak(10, 3, 2).unwrap(), rat(1024, 15));
    assert_eq!(upper_bound_weak(4, 3, 2).unwrap(), rat(16, 3));
    assert_eq!(upper_bound_weak(6, 1, 3).unwrap(), rat(729, 11));
    assert_eq!(render_decimal(&upper_bound_1k(14, 7, 2).unwrap(), 1), "1170.3");
    assert_eq!(upper_bound_1k(16, 8, 2).unwrap(), rat(4096, 1));
    assert_eq!(upper_bound_graph(12, 6).unwrap(), big(272));
    assert_eq!(upper_bound_graph(8, 2).unwrap(), big(32));
    assert_eq!(upper_bound_graph(20, 4).unwrap(), big((1 << 16) + (1 << 14)));
    assert_eq!(lower_bound_explicit(8, ExplicitVariant::Gen3).unwrap(), rat(1, 32));
    assert_eq!(lower_bound_explicit(9, ExplicitVariant::Gen2).unwrap(), rat(2, 81));
    assert!(lower_bound_explicit(8, ExplicitVariant::Gen2).unwrap() < lower_bound_explicit(8, ExplicitVariant::Gen3).unwrap());
    assert!(lower_bound_explicit(6, ExplicitVariant::Gen3).is_err());
    let c = classic_bounds(16).unwrap();
    assert_eq!(c.nine_n, rat(65536, 144));
    assert_eq!(c.eight_n, Some(rat(65536, 128)));
    assert!(classic_bounds(12).unwrap().eight_n.is_none());
    assert_eq!(classic_bounds(3).unwrap().nine_n, rat(8, 27));
}

proptest! {
    #[test]
    fn symbolic_size_order_matches_evaluation(a in 0u64..1_000_000, c1 in 0u32..40, b in 0u64..1_000_000, c2 in 0u32..40) {
        let x = SymbolicSize::new(a, c1);
        let y = SymbolicSize::new(b, c2);
        let n = c1.max(c2) + 3;
        prop_assert_eq!(x.cmp(&y), x.at(n).unwrap().cmp(&y.at(n).unwrap()));
    }

    #[test]
    fn decimal_rendering_rounds_half_away(num in -1_000_000i64..1_000_000, den in 1i64..1000) {
        let r = rat(num, den);
        let got: f64 = render_decimal(&r, 1).parse().unwrap();
        let exact = num as f64 / den as f64;
        prop_assert!((got - exact).abs() <= 0.05 + 1e-9);
    }
}
