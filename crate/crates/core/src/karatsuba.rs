//! Recursive split multiplication with a configurable base case.
//!
//! Operands are cut at k = floor(n/2) bits, where n is the larger bit
//! length; nothing is padded. With a = a1*2^k + a0 and b = b1*2^k + b0 the
//! three recursive products are c0 = a0*b0, c1 = a1*b1 and
//! c2 = |a0 - a1| * |b0 - b1|, combined as
//! a*b = c0 + (c0 + c1 - s*c2) * 2^k + c1 * 2^(2k),
//! where s is the sign of (a0 - a1)*(b0 - b1). The middle term equals
//! a0*b1 + a1*b0 and can never be negative; going negative means a bug and
//! is reported loudly rather than wrapped.

use crate::metering::{Meter, NoMeter};
use crate::natural::{Natural, Sign};
use crate::nikhilam::nik_mul_with;
use crate::schoolbook::school_mul_with;

/// Multiplier used once operands fall below the recursion threshold.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BaseCase {
    Nikhilam,
    Schoolbook,
}

/// Bit length below which recursion hands off to the base multiplier.
/// Thirty-two machine words; splitting smaller operands buys nothing.
pub const DEFAULT_THRESHOLD_BITS: usize = 2048;

/// Recursion tuning: threshold bit length (at least 1) and base case.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HybridConfig {
    pub threshold_n0: usize,
    pub base_case: BaseCase,
}

impl HybridConfig {
    pub fn new(threshold_n0: usize, base_case: BaseCase) -> Self {
        assert!(threshold_n0 >= 1, "threshold must be at least 1");
        HybridConfig {
            threshold_n0,
            base_case,
        }
    }

    pub(crate) fn with_base(self, base_case: BaseCase) -> Self {
        HybridConfig { base_case, ..self }
    }
}

impl Default for HybridConfig {
    fn default() -> Self {
        HybridConfig {
            threshold_n0: DEFAULT_THRESHOLD_BITS,
            base_case: BaseCase::Nikhilam,
        }
    }
}

/// Splits off the low `k` bits: returns (a mod 2^k, a div 2^k).
pub fn split(a: &Natural, k: usize) -> (Natural, Natural) {
    (a.low_bits(k), a.shr(k))
}

pub fn karatsuba_mul(a: &Natural, b: &Natural, cfg: &HybridConfig) -> Natural {
    karatsuba_with(a, b, cfg, &mut NoMeter)
}

pub(crate) fn karatsuba_with<M: Meter>(
    a: &Natural,
    b: &Natural,
    cfg: &HybridConfig,
    m: &mut M,
) -> Natural {
    assert!(cfg.threshold_n0 >= 1, "threshold must be at least 1");
    let n = a.bit_length().max(b.bit_length());
    let bound = depth_bound(n, cfg.threshold_n0);
    recurse(a, b, cfg, m, 0, bound)
}

/// Halving with ceilings reaches the base case within this many descents.
fn depth_bound(n: usize, threshold: usize) -> usize {
    let ratio = n.div_ceil(threshold.max(1)).max(1);
    let ceil_log2 = if ratio <= 1 {
        0
    } else {
        (usize::BITS - (ratio - 1).leading_zeros()) as usize
    };
    ceil_log2 + 1
}

fn recurse<M: Meter>(
    a: &Natural,
    b: &Natural,
    cfg: &HybridConfig,
    m: &mut M,
    depth: usize,
    bound: usize,
) -> Natural {
    if a.is_zero() || b.is_zero() {
        return Natural::zero();
    }
    let n = a.bit_length().max(b.bit_length());
    if n < cfg.threshold_n0 || n == 1 {
        return match cfg.base_case {
            BaseCase::Nikhilam => nik_mul_with(a, b, m),
            BaseCase::Schoolbook => school_mul_with(a, b, m),
        };
    }
    debug_assert!(
        depth <= bound,
        "recursion depth {depth} exceeded bound {bound} at {n} bits"
    );
    let k = n / 2;
    m.shifts(2);
    let (a0, a1) = split(a, k);
    let (b0, b1) = split(b, k);
    m.subs(2);
    let da = a0.abs_diff(&a1);
    let db = b0.abs_diff(&b1);
    let c0 = recurse(&a0, &b0, cfg, m, depth + 1, bound);
    let c1 = recurse(&a1, &b1, cfg, m, depth + 1, bound);
    let c2 = recurse(da.magnitude(), db.magnitude(), cfg, m, depth + 1, bound);
    m.adds(1);
    let mut mid = c0.add(&c1);
    match da.sign().product(db.sign()) {
        Sign::Positive => {
            m.subs(1);
            mid = mid
                .sub(&c2)
                .expect("middle term a0*b1 + a1*b0 went negative: algorithm bug");
        }
        Sign::Negative => {
            m.adds(1);
            mid = mid.add(&c2);
        }
        Sign::Zero => {}
    }
    m.shifts(2);
    m.adds(2);
    c0.add(&mid.shl(k)).add(&c1.shl(2 * k))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schoolbook::school_mul;

    fn nat(v: u64) -> Natural {
        Natural::from_u64(v)
    }

    fn cfg(threshold: usize, base: BaseCase) -> HybridConfig {
        HybridConfig::new(threshold, base)
    }

    #[test]
    fn splits_into_low_and_high() {
        let (low, high) = split(&nat(95), 3);
        assert_eq!(low.to_text(2), "111");
        assert_eq!(high.to_text(2), "1011");
        let (low, high) = split(&nat(95), 0);
        assert_eq!(low, Natural::zero());
        assert_eq!(high, nat(95));
        let (low, high) = split(&nat(95), 64);
        assert_eq!(low, nat(95));
        assert_eq!(high, Natural::zero());
    }

    #[test]
    fn split_recombines() {
        let v = Natural::from_text("123456789abcdef0fedcba9876543210", 16).unwrap();
        for k in [0usize, 1, 17, 64, 65, 127, 128, 200] {
            let (low, high) = split(&v, k);
            assert_eq!(high.shl(k).add(&low), v, "k = {k}");
            assert!(low.bit_length() <= k);
        }
    }

    #[test]
    fn multiplies_worked_example_under_every_config() {
        for threshold in [1usize, 2, 4, 8, 64] {
            for base in [BaseCase::Nikhilam, BaseCase::Schoolbook] {
                assert_eq!(
                    karatsuba_mul(&nat(95), &nat(96), &cfg(threshold, base)),
                    nat(9120),
                    "threshold {threshold}, base {base:?}"
                );
            }
        }
        assert_eq!(
            karatsuba_mul(&nat(95), &nat(96), &HybridConfig::default()),
            nat(9120)
        );
    }

    #[test]
    fn handles_zero_and_one() {
        let c = HybridConfig::default();
        let x = nat(0xdead_beef);
        assert_eq!(karatsuba_mul(&x, &Natural::zero(), &c), Natural::zero());
        assert_eq!(karatsuba_mul(&Natural::zero(), &x, &c), Natural::zero());
        assert_eq!(karatsuba_mul(&x, &Natural::one(), &c), x);
    }

    #[test]
    fn threshold_one_terminates_on_small_inputs() {
        let c = cfg(1, BaseCase::Nikhilam);
        for a in 0u64..64 {
            for b in 0u64..64 {
                assert_eq!(karatsuba_mul(&nat(a), &nat(b), &c), nat(a * b), "{a} * {b}");
            }
        }
    }

    #[test]
    fn equal_halves_take_the_zero_sign_branch() {
        // Both halves of 0b10101010_10101010 agree after a k=8 split.
        let v = nat(0xAAAA);
        let c = cfg(16, BaseCase::Schoolbook);
        assert_eq!(karatsuba_mul(&v, &v, &c), school_mul(&v, &v));
    }

    #[test]
    fn matches_schoolbook_on_mixed_lengths() {
        let samples = [
            ("ffffffffffffffffffffffffffffffff", "2"),
            ("123456789abcdef", "fedcba987654321123456789"),
            ("80000000000000000000000001", "80000000000000000000000001"),
            ("abcdef", "1"),
        ];
        for threshold in [1usize, 8, 32, 2048] {
            for base in [BaseCase::Nikhilam, BaseCase::Schoolbook] {
                for (sa, sb) in samples {
                    let a = Natural::from_text(sa, 16).unwrap();
                    let b = Natural::from_text(sb, 16).unwrap();
                    assert_eq!(
                        karatsuba_mul(&a, &b, &cfg(threshold, base)),
                        school_mul(&a, &b),
                        "threshold {threshold}, base {base:?}, {sa} * {sb}"
                    );
                }
            }
        }
    }

    #[test]
    #[should_panic(expected = "threshold must be at least 1")]
    fn rejects_zero_threshold() {
        HybridConfig::new(0, BaseCase::Nikhilam);
    }

    #[test]
    fn default_config_uses_the_documented_threshold() {
        let c = HybridConfig::default();
        assert_eq!(c.threshold_n0, DEFAULT_THRESHOLD_BITS);
        assert_eq!(c.base_case, BaseCase::Nikhilam);
    }
}
