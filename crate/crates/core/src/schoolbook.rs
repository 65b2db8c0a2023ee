//! Long multiplication, limb by limb. This is the reference multiplier the
//! rest of the crate is checked against, so it stays as plain as possible.

use crate::metering::Meter;
use crate::natural::Natural;

/// Classical O(n*m) product. Iterates the shorter operand on the outside
/// so the work is bounded by the smaller factor.
pub fn school_mul(a: &Natural, b: &Natural) -> Natural {
    if a.is_zero() || b.is_zero() {
        return Natural::zero();
    }
    let (short, long) = if a.limbs().len() <= b.limbs().len() {
        (a.limbs(), b.limbs())
    } else {
        (b.limbs(), a.limbs())
    };
    let mut acc = vec![0u64; short.len() + long.len()];
    for (i, &s) in short.iter().enumerate() {
        let mut carry = 0u64;
        for (j, &l) in long.iter().enumerate() {
            let cur = u128::from(s) * u128::from(l) + u128::from(acc[i + j]) + u128::from(carry);
            acc[i + j] = cur as u64;
            carry = (cur >> 64) as u64;
        }
        acc[i + long.len()] = carry;
    }
    Natural::from_limb_vec(acc)
}

/// Same product, with the work tallied the way bit-by-bit long
/// multiplication performs it: one single-digit product per bit pair, and
/// for every set bit of `b` one alignment shift (past offset zero) plus
/// one running addition (past the first row).
pub(crate) fn school_mul_with<M: Meter>(a: &Natural, b: &Natural, m: &mut M) -> Natural {
    if !a.is_zero() && !b.is_zero() {
        m.mults(a.bit_length() as u64 * b.bit_length() as u64);
        let rows = b.count_ones();
        m.adds(rows - 1);
        m.shifts(if b.bit(0) { rows - 1 } else { rows });
    }
    school_mul(a, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: u64) -> Natural {
        Natural::from_u64(v)
    }

    #[test]
    fn multiplies_worked_examples() {
        assert_eq!(school_mul(&nat(95), &nat(96)), nat(9120));
        assert_eq!(school_mul(&nat(105), &nat(106)), nat(11130));
        assert_eq!(school_mul(&nat(15), &nat(15)), nat(225));
        assert_eq!(school_mul(&nat(42), &nat(42)), nat(1764));
    }

    #[test]
    fn handles_zero_and_one() {
        let x = Natural::from_text("deadbeef00112233", 16).unwrap();
        assert_eq!(school_mul(&x, &Natural::zero()), Natural::zero());
        assert_eq!(school_mul(&Natural::zero(), &x), Natural::zero());
        assert_eq!(school_mul(&x, &Natural::one()), x);
    }

    #[test]
    fn agrees_with_native_products() {
        // Deterministic sweep of awkward single-word operands.
        let samples: Vec<u64> = (0..64)
            .flat_map(|s| [1u64 << s, (1u64 << s) | 1, u64::MAX >> s])
            .chain([0, 1, 2, 3, 95, 96, 105, 106, 0xffff, 0x10001])
            .collect();
        for &a in &samples {
            for &b in &samples {
                let want = u128::from(a) * u128::from(b);
                let got = school_mul(&nat(a), &nat(b));
                assert_eq!(got.to_text(16), format!("{want:x}"), "{a} * {b}");
            }
        }
    }

    #[test]
    fn carries_across_many_limbs() {
        // (2^256 - 1)^2 = 2^512 - 2^257 + 1
        let big = Natural::one().shl(256).sub(&Natural::one()).unwrap();
        let sq = school_mul(&big, &big);
        let want = Natural::one()
            .shl(512)
            .sub(&Natural::one().shl(257))
            .unwrap()
            .add(&Natural::one());
        assert_eq!(sq, want);
    }

    #[test]
    fn is_commutative_on_mixed_sizes() {
        let a = Natural::from_text("123456789123456789123456789", 10).unwrap();
        let b = nat(987654321);
        assert_eq!(school_mul(&a, &b), school_mul(&b, &a));
    }
}
