//! Digit-level operation counting for the written procedures.
//!
//! These evaluators execute long multiplication, split-and-recombine
//! multiplication, and the near-base shortcut the way a person works them
//! out by hand in a chosen radix, tallying single-digit products along
//! with the surrounding additions, subtractions and base shifts. The product
//! is computed alongside the tally so callers can confirm each procedure
//! agrees with ordinary multiplication.

use std::cmp::Ordering;

use crate::metering::OpCounts;
use crate::natural::{Natural, ParseError};
use crate::nikhilam::{nearest_base, pow_radix};

/// Which written procedure to execute.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DigitProcedure {
    /// Long multiplication: one row per multiplier digit.
    Schoolbook,
    /// Split each operand in half, recurse on low, high and the two
    /// half-sums, then recombine with two subtractions.
    Karatsuba,
    /// Deficits from the nearest radix power, one cross sum and one small
    /// product.
    NikhilamNearBase,
}

/// Runs `procedure` on operands written in `radix` (2 through 16) and
/// returns the product together with the digit-level tally.
pub fn count_digit_procedure(
    procedure: DigitProcedure,
    m: &str,
    n: &str,
    radix: u32,
) -> Result<(Natural, OpCounts), ParseError> {
    let m = Natural::from_text(m, radix)?;
    let n = Natural::from_text(n, radix)?;
    let mut ops = OpCounts::new(radix);
    let value = match procedure {
        DigitProcedure::Schoolbook => {
            school_digits(&DigitVec::from_natural(&m, radix), &DigitVec::from_natural(&n, radix), radix, &mut ops)
                .to_natural(radix)
        }
        DigitProcedure::Karatsuba => {
            kara_digits(&DigitVec::from_natural(&m, radix), &DigitVec::from_natural(&n, radix), radix, &mut ops)
                .to_natural(radix)
        }
        DigitProcedure::NikhilamNearBase => near_base_digits(&m, &n, radix, &mut ops),
    };
    Ok((value, ops))
}

/// Natural number as a little-endian digit string in some radix, with no
/// trailing zero digits. Kept separate from the limb representation so
/// the written procedures can be walked digit by digit in any radix.
#[derive(Debug, Clone, PartialEq, Eq)]
struct DigitVec {
    digits: Vec<u8>,
}

impl DigitVec {
    fn zero() -> Self {
        DigitVec { digits: Vec::new() }
    }

    fn from_natural(value: &Natural, radix: u32) -> Self {
        let mut digits = Vec::new();
        let mut rest = value.clone();
        while !rest.is_zero() {
            let (q, r) = rest.div_small(u64::from(radix));
            digits.push(r as u8);
            rest = q;
        }
        DigitVec { digits }
    }

    fn to_natural(&self, radix: u32) -> Natural {
        let mut out = Natural::zero();
        for &d in self.digits.iter().rev() {
            out = out.mul_small(u64::from(radix)).add_small(u64::from(d));
        }
        out
    }

    fn is_zero(&self) -> bool {
        self.digits.is_empty()
    }

    /// Written length: zero still occupies one digit when written out.
    fn digit_count(&self) -> usize {
        self.digits.len().max(1)
    }

    fn trim(mut self) -> Self {
        while self.digits.last() == Some(&0) {
            self.digits.pop();
        }
        self
    }

    fn compare(&self, other: &DigitVec) -> Ordering {
        match self.digits.len().cmp(&other.digits.len()) {
            Ordering::Equal => self.digits.iter().rev().cmp(other.digits.iter().rev()),
            unequal => unequal,
        }
    }

    fn add(&self, other: &DigitVec, radix: u32) -> DigitVec {
        let r = u16::from(radix as u8);
        let mut digits = Vec::with_capacity(self.digits.len().max(other.digits.len()) + 1);
        let mut carry = 0u16;
        for i in 0..self.digits.len().max(other.digits.len()) {
            let a = self.digits.get(i).copied().unwrap_or(0) as u16;
            let b = other.digits.get(i).copied().unwrap_or(0) as u16;
            let sum = a + b + carry;
            digits.push((sum % r) as u8);
            carry = sum / r;
        }
        if carry > 0 {
            digits.push(carry as u8);
        }
        DigitVec { digits }.trim()
    }

    /// Requires `self >= other`.
    fn sub(&self, other: &DigitVec, radix: u32) -> DigitVec {
        assert!(
            self.compare(other) != Ordering::Less,
            "digit subtraction would underflow"
        );
        let r = i16::from(radix as u8);
        let mut digits = Vec::with_capacity(self.digits.len());
        let mut borrow = 0i16;
        for i in 0..self.digits.len() {
            let a = self.digits[i] as i16;
            let b = other.digits.get(i).copied().unwrap_or(0) as i16;
            let mut d = a - b - borrow;
            if d < 0 {
                d += r;
                borrow = 1;
            } else {
                borrow = 0;
            }
            digits.push(d as u8);
        }
        DigitVec { digits }.trim()
    }

    /// Plain long-multiplication product, used for values only; callers
    /// account for the operations themselves.
    fn mul(&self, other: &DigitVec, radix: u32) -> DigitVec {
        if self.is_zero() || other.is_zero() {
            return DigitVec::zero();
        }
        let r = u32::from(radix as u8);
        let mut acc = vec![0u32; self.digits.len() + other.digits.len()];
        for (i, &a) in self.digits.iter().enumerate() {
            for (j, &b) in other.digits.iter().enumerate() {
                acc[i + j] += u32::from(a) * u32::from(b);
            }
        }
        let mut digits = Vec::with_capacity(acc.len());
        let mut carry = 0u32;
        for cell in acc {
            let sum = cell + carry;
            digits.push((sum % r) as u8);
            carry = sum / r;
        }
        while carry > 0 {
            digits.push((carry % r) as u8);
            carry /= r;
        }
        DigitVec { digits }.trim()
    }

    /// Appends `k` zero digits at the low end: multiplication by radix^k.
    fn shift_up(&self, k: usize) -> DigitVec {
        if self.is_zero() {
            return DigitVec::zero();
        }
        let mut digits = vec![0u8; k];
        digits.extend_from_slice(&self.digits);
        DigitVec { digits }
    }

    /// Low `k` digits and the rest.
    fn split(&self, k: usize) -> (DigitVec, DigitVec) {
        let cut = k.min(self.digits.len());
        let low = DigitVec {
            digits: self.digits[..cut].to_vec(),
        }
        .trim();
        let high = DigitVec {
            digits: self.digits[cut..].to_vec(),
        };
        (low, high)
    }
}

/// One row per multiplier digit, every row a full pass over the
/// multiplicand, then the rows are shifted into place and summed.
fn school_digits(m: &DigitVec, n: &DigitVec, radix: u32, ops: &mut OpCounts) -> DigitVec {
    ops.digit_mults += m.digit_count() as u64 * n.digit_count() as u64;
    let rows = n.digit_count() as u64;
    ops.adds += rows - 1;
    ops.shifts += rows - 1;
    m.mul(n, radix)
}

/// Split at half the wider operand's written length. Single-digit pairs
/// are the only place a product is taken.
fn kara_digits(m: &DigitVec, n: &DigitVec, radix: u32, ops: &mut OpCounts) -> DigitVec {
    let dm = m.digit_count();
    let dn = n.digit_count();
    if dm <= 1 && dn <= 1 {
        ops.digit_mults += 1;
        return m.mul(n, radix);
    }
    let k = dm.max(dn) / 2;
    let (m0, m1) = m.split(k);
    let (n0, n1) = n.split(k);

    let high = kara_digits(&m1, &n1, radix, ops);
    let low = kara_digits(&m0, &n0, radix, ops);
    ops.adds += 2;
    let cross = kara_digits(&m0.add(&m1, radix), &n0.add(&n1, radix), radix, ops);

    // cross covers all four partial products, so peeling high and low off
    // leaves the middle term, which is never negative.
    ops.subs += 2;
    let middle = cross.sub(&high, radix).sub(&low, radix);

    ops.shifts += 2;
    ops.adds += 2;
    high.shift_up(2 * k)
        .add(&middle.shift_up(k), radix)
        .add(&low, radix)
}

/// Deficit procedure against the radix power nearest the first operand.
/// Steps whose written row vanishes (a zero deficit, a zero deficit
/// product, a unit base) are not charged.
fn near_base_digits(m: &Natural, n: &Natural, radix: u32, ops: &mut OpCounts) -> Natural {
    if m.is_zero() || n.is_zero() {
        return Natural::zero();
    }
    let exp = nearest_base(m, radix).expect("operands checked nonzero");
    let base = pow_radix(radix, exp);

    // Both deficits are written down even when one comes out zero.
    ops.subs += 2;
    let a_sign = signed_diff(m, &base);
    let b_sign = signed_diff(n, &base);

    // D = m + b, written as one addition or subtraction unless b is zero.
    match b_sign {
        Ordering::Greater => ops.adds += 1,
        Ordering::Less => ops.subs += 1,
        Ordering::Equal => {}
    }

    // The deficit product a*b, skipped when either factor is zero.
    let product_sign = if a_sign == Ordering::Equal || b_sign == Ordering::Equal {
        Ordering::Equal
    } else {
        ops.digit_mults += 1;
        if a_sign == b_sign {
            Ordering::Greater
        } else {
            Ordering::Less
        }
    };

    // D is scaled by the base and the deficit product folded in.
    if exp > 0 {
        ops.shifts += 1;
    }
    match product_sign {
        Ordering::Greater => ops.adds += 1,
        Ordering::Less => ops.subs += 1,
        Ordering::Equal => {}
    }

    crate::nikhilam::near_base_mul(m, n, &base).expect("radix power is never zero")
}

/// Sign of value - base.
fn signed_diff(value: &Natural, base: &Natural) -> Ordering {
    value.cmp(base)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::schoolbook::school_mul;

    fn run(procedure: DigitProcedure, m: &str, n: &str, radix: u32) -> (Natural, OpCounts) {
        count_digit_procedure(procedure, m, n, radix).expect("operands parse")
    }

    #[test]
    fn near_base_worked_example() {
        let (value, ops) = run(DigitProcedure::NikhilamNearBase, "95", "96", 10);
        assert_eq!(value, Natural::from_u64(9120));
        assert_eq!(ops.radix, 10);
        assert_eq!(ops.digit_mults, 1);
        assert_eq!(ops.adds, 1);
        assert_eq!(ops.subs, 3);
        assert_eq!(ops.shifts, 1);
        assert_eq!(ops.exact_divisions, 0);
    }

    #[test]
    fn near_base_binary_worked_example() {
        // 101 * 110 against base 100: deficits +1 and +10, so the cross
        // sum is an addition and the deficit product feeds an addition.
        let (value, ops) = run(DigitProcedure::NikhilamNearBase, "101", "110", 2);
        assert_eq!(value, Natural::from_text("11110", 2).unwrap());
        assert_eq!(ops.digit_mults, 1);
        assert_eq!(ops.subs, 2);
        assert_eq!(ops.adds, 2);
        assert_eq!(ops.shifts, 1);
    }

    #[test]
    fn karatsuba_two_digit_example_takes_five_products() {
        let (value, ops) = run(DigitProcedure::Karatsuba, "95", "96", 10);
        assert_eq!(value, Natural::from_u64(9120));
        assert_eq!(ops.digit_mults, 5);
    }

    #[test]
    fn karatsuba_three_digit_example_takes_seven_products() {
        let (value, ops) = run(DigitProcedure::Karatsuba, "105", "106", 10);
        assert_eq!(value, Natural::from_u64(11130));
        assert_eq!(ops.digit_mults, 7);
    }

    #[test]
    fn schoolbook_counts_every_digit_pair() {
        let (value, ops) = run(DigitProcedure::Schoolbook, "105", "106", 10);
        assert_eq!(value, Natural::from_u64(11130));
        assert_eq!(ops.digit_mults, 9);
        assert_eq!(ops.adds, 2);
        assert_eq!(ops.shifts, 2);

        let (value, ops) = run(DigitProcedure::Schoolbook, "95", "96", 10);
        assert_eq!(value, Natural::from_u64(9120));
        assert_eq!(ops.digit_mults, 4);

        let (value, ops) = run(DigitProcedure::Schoolbook, "101", "110", 2);
        assert_eq!(value, Natural::from_text("11110", 2).unwrap());
        assert_eq!(ops.digit_mults, 9);
    }

    #[test]
    fn near_base_zero_operand_costs_nothing() {
        for (m, n) in [("0", "96"), ("95", "0"), ("0", "0")] {
            let (value, ops) = run(DigitProcedure::NikhilamNearBase, m, n, 10);
            assert!(value.is_zero());
            assert_eq!(ops, OpCounts::new(10));
        }
    }

    #[test]
    fn bad_digits_are_rejected() {
        assert!(count_digit_procedure(DigitProcedure::Schoolbook, "12a", "3", 10).is_err());
        assert!(count_digit_procedure(DigitProcedure::Karatsuba, "", "3", 10).is_err());
        assert!(count_digit_procedure(DigitProcedure::NikhilamNearBase, "102", "1", 2).is_err());
    }

    #[test]
    fn all_procedures_multiply_correctly_on_small_operands() {
        for radix in [2u32, 10, 16] {
            for a in 0u64..=30 {
                for b in 0u64..=30 {
                    let m = Natural::from_u64(a).to_text(radix);
                    let n = Natural::from_u64(b).to_text(radix);
                    let expected = school_mul(&Natural::from_u64(a), &Natural::from_u64(b));
                    for procedure in [
                        DigitProcedure::Schoolbook,
                        DigitProcedure::Karatsuba,
                        DigitProcedure::NikhilamNearBase,
                    ] {
                        let (value, _) = run(procedure, &m, &n, radix);
                        assert_eq!(value, expected, "{procedure:?} {a}*{b} radix {radix}");
                    }
                }
            }
        }
    }

    #[test]
    fn karatsuba_handles_carrying_half_sums() {
        // 55 splits into halves summing to 10, which re-splits cleanly.
        let (value, _) = run(DigitProcedure::Karatsuba, "55", "55", 10);
        assert_eq!(value, Natural::from_u64(3025));
        let (value, _) = run(DigitProcedure::Karatsuba, "99", "99", 10);
        assert_eq!(value, Natural::from_u64(9801));
        let (value, ops) = run(DigitProcedure::Karatsuba, "9999", "9999", 10);
        assert_eq!(value, Natural::from_u64(99980001));
        assert!(ops.digit_mults > 3);
    }

    #[test]
    fn digit_vector_arithmetic_holds_together() {
        let forty_two = DigitVec::from_natural(&Natural::from_u64(42), 10);
        assert_eq!(forty_two.digits, vec![2, 4]);
        assert_eq!(forty_two.to_natural(10), Natural::from_u64(42));
        assert_eq!(forty_two.digit_count(), 2);
        assert_eq!(DigitVec::zero().digit_count(), 1);

        let ninety_nine = DigitVec::from_natural(&Natural::from_u64(99), 10);
        assert_eq!(
            forty_two.add(&ninety_nine, 10).to_natural(10),
            Natural::from_u64(141)
        );
        assert_eq!(
            ninety_nine.sub(&forty_two, 10).to_natural(10),
            Natural::from_u64(57)
        );
        assert_eq!(
            forty_two.mul(&ninety_nine, 10).to_natural(10),
            Natural::from_u64(4158)
        );
        assert_eq!(forty_two.shift_up(2).to_natural(10), Natural::from_u64(4200));

        let (low, high) = DigitVec::from_natural(&Natural::from_u64(105), 10).split(1);
        assert_eq!(low.to_natural(10), Natural::from_u64(5));
        assert_eq!(high.to_natural(10), Natural::from_u64(10));
        assert_eq!(forty_two.compare(&ninety_nine), Ordering::Less);
    }

    #[test]
    #[should_panic(expected = "underflow")]
    fn digit_subtraction_underflow_is_loud() {
        let a = DigitVec::from_natural(&Natural::from_u64(5), 10);
        let b = DigitVec::from_natural(&Natural::from_u64(6), 10);
        let _ = a.sub(&b, 10);
    }
}
