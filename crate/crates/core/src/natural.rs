//! Unsigned integers of arbitrary size, plus a thin signed wrapper.
//!
//! Values are stored as little-endian `u64` limbs in canonical form: no
//! high zero limbs, and zero is the empty limb vector (bit length 0).
//! Only the operations the multipliers actually need live here: carry
//! addition, borrow subtraction, comparison, bit access and power-of-two
//! shifts. There is deliberately no general multiplication or division in
//! this module.

use std::cmp::Ordering;
use std::error::Error;
use std::fmt;

const LIMB_BITS: usize = 64;

/// Arbitrary-size unsigned integer in canonical little-endian limb form.
#[derive(Clone, PartialEq, Eq)]
pub struct Natural {
    limbs: Vec<u64>,
}

/// Digit-string parsing failure, pointing at the offending character.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseError {
    Empty,
    InvalidDigit {
        position: usize,
        found: char,
        radix: u32,
    },
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ParseError::Empty => write!(f, "empty digit string"),
            ParseError::InvalidDigit {
                position,
                found,
                radix,
            } => write!(
                f,
                "invalid digit {found:?} for radix {radix} at position {position}"
            ),
        }
    }
}

impl Error for ParseError {}

/// Subtraction was asked to go below zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Underflow;

impl fmt::Display for Underflow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "subtraction would go below zero")
    }
}

impl Error for Underflow {}

fn digit_value(c: char, radix: u32) -> Option<u64> {
    c.to_digit(radix).map(u64::from)
}

fn digit_char(d: u64) -> char {
    char::from_digit(d as u32, 16).expect("digit below radix")
}

impl Natural {
    pub fn zero() -> Self {
        Natural { limbs: Vec::new() }
    }

    pub fn one() -> Self {
        Natural { limbs: vec![1] }
    }

    pub fn from_u64(value: u64) -> Self {
        if value == 0 {
            Natural::zero()
        } else {
            Natural { limbs: vec![value] }
        }
    }

    fn from_limbs(mut limbs: Vec<u64>) -> Self {
        while limbs.last() == Some(&0) {
            limbs.pop();
        }
        Natural { limbs }
    }

    pub(crate) fn limbs(&self) -> &[u64] {
        &self.limbs
    }

    pub(crate) fn from_limb_vec(limbs: Vec<u64>) -> Self {
        Natural::from_limbs(limbs)
    }

    /// Parses a digit string. Accepts leading zeros, rejects everything
    /// that is not a digit of the radix. Radix must be in 2..=16.
    pub fn from_text(text: &str, radix: u32) -> Result<Self, ParseError> {
        assert!((2..=16).contains(&radix), "radix must be in 2..=16");
        if text.is_empty() {
            return Err(ParseError::Empty);
        }
        let mut acc = Natural::zero();
        for (position, found) in text.chars().enumerate() {
            let d = digit_value(found, radix).ok_or(ParseError::InvalidDigit {
                position,
                found,
                radix,
            })?;
            acc = acc.mul_small(u64::from(radix)).add_small(d);
        }
        Ok(acc)
    }

    /// Renders the value in the given radix with no leading zeros;
    /// zero renders as "0". Radix must be in 2..=16.
    pub fn to_text(&self, radix: u32) -> String {
        assert!((2..=16).contains(&radix), "radix must be in 2..=16");
        if self.is_zero() {
            return "0".to_string();
        }
        let mut digits = Vec::new();
        let mut rest = self.clone();
        while !rest.is_zero() {
            let (q, r) = rest.div_small(u64::from(radix));
            digits.push(digit_char(r));
            rest = q;
        }
        digits.iter().rev().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.limbs.is_empty()
    }

    /// Number of significant bits; zero has bit length 0.
    pub fn bit_length(&self) -> usize {
        match self.limbs.last() {
            None => 0,
            Some(top) => {
                (self.limbs.len() - 1) * LIMB_BITS + (LIMB_BITS - top.leading_zeros() as usize)
            }
        }
    }

    /// Bit at position `j`, counting from the least significant bit.
    pub fn bit(&self, j: usize) -> bool {
        let (limb, offset) = (j / LIMB_BITS, j % LIMB_BITS);
        match self.limbs.get(limb) {
            Some(word) => (word >> offset) & 1 == 1,
            None => false,
        }
    }

    /// Count of set bits.
    pub(crate) fn count_ones(&self) -> u64 {
        self.limbs.iter().map(|w| u64::from(w.count_ones())).sum()
    }

    /// Number of trailing zero bits; returns 0 for zero itself.
    pub fn trailing_zeros(&self) -> usize {
        for (idx, word) in self.limbs.iter().enumerate() {
            if *word != 0 {
                return idx * LIMB_BITS + word.trailing_zeros() as usize;
            }
        }
        0
    }

    pub fn add(&self, other: &Natural) -> Natural {
        let (long, short) = if self.limbs.len() >= other.limbs.len() {
            (&self.limbs, &other.limbs)
        } else {
            (&other.limbs, &self.limbs)
        };
        let mut out = Vec::with_capacity(long.len() + 1);
        let mut carry = 0u64;
        for i in 0..long.len() {
            let sum = u128::from(long[i])
                + u128::from(short.get(i).copied().unwrap_or(0))
                + u128::from(carry);
            out.push(sum as u64);
            carry = (sum >> LIMB_BITS) as u64;
        }
        if carry != 0 {
            out.push(carry);
        }
        Natural::from_limbs(out)
    }

    pub fn sub(&self, other: &Natural) -> Result<Natural, Underflow> {
        if other.limbs.len() > self.limbs.len() {
            return Err(Underflow);
        }
        let mut out = Vec::with_capacity(self.limbs.len());
        let mut borrow = 0u64;
        for i in 0..self.limbs.len() {
            let rhs = other.limbs.get(i).copied().unwrap_or(0);
            let (d1, b1) = self.limbs[i].overflowing_sub(rhs);
            let (d2, b2) = d1.overflowing_sub(borrow);
            out.push(d2);
            borrow = u64::from(b1) + u64::from(b2);
        }
        if borrow != 0 {
            return Err(Underflow);
        }
        Ok(Natural::from_limbs(out))
    }

    /// Signed difference `self - other`.
    pub fn abs_diff(&self, other: &Natural) -> SignedInt {
        match self.cmp(other) {
            Ordering::Less => SignedInt::new(
                Sign::Negative,
                other.sub(self).expect("larger minus smaller"),
            ),
            Ordering::Equal => SignedInt::zero(),
            Ordering::Greater => SignedInt::new(
                Sign::Positive,
                self.sub(other).expect("larger minus smaller"),
            ),
        }
    }

    /// Multiplies by 2^k.
    pub fn shl(&self, k: usize) -> Natural {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let (limb_shift, bit_shift) = (k / LIMB_BITS, k % LIMB_BITS);
        let mut out = vec![0u64; self.limbs.len() + limb_shift + 1];
        for (i, word) in self.limbs.iter().enumerate() {
            if bit_shift == 0 {
                out[i + limb_shift] = *word;
            } else {
                out[i + limb_shift] |= word << bit_shift;
                out[i + limb_shift + 1] |= word >> (LIMB_BITS - bit_shift);
            }
        }
        Natural::from_limbs(out)
    }

    /// Divides by 2^k, discarding the low bits.
    pub fn shr(&self, k: usize) -> Natural {
        let (limb_shift, bit_shift) = (k / LIMB_BITS, k % LIMB_BITS);
        if limb_shift >= self.limbs.len() {
            return Natural::zero();
        }
        let mut out = Vec::with_capacity(self.limbs.len() - limb_shift);
        for i in limb_shift..self.limbs.len() {
            let mut word = self.limbs[i] >> bit_shift;
            if bit_shift != 0 {
                if let Some(next) = self.limbs.get(i + 1) {
                    word |= next << (LIMB_BITS - bit_shift);
                }
            }
            out.push(word);
        }
        Natural::from_limbs(out)
    }

    /// Value modulo 2^k.
    pub fn low_bits(&self, k: usize) -> Natural {
        let (full, rem) = (k / LIMB_BITS, k % LIMB_BITS);
        if full >= self.limbs.len() {
            return self.clone();
        }
        let mut out = self.limbs[..full + usize::from(rem > 0)].to_vec();
        if rem > 0 {
            if let Some(top) = out.last_mut() {
                *top &= (1u64 << rem) - 1;
            }
        }
        Natural::from_limbs(out)
    }

    /// Clears bit `j`; when the bit is set this realizes `self - 2^j`.
    pub(crate) fn without_bit(&self, j: usize) -> Natural {
        let (limb, offset) = (j / LIMB_BITS, j % LIMB_BITS);
        if limb >= self.limbs.len() {
            return self.clone();
        }
        let mut out = self.limbs.clone();
        out[limb] &= !(1u64 << offset);
        Natural::from_limbs(out)
    }

    pub(crate) fn mul_small(&self, factor: u64) -> Natural {
        if factor == 0 || self.is_zero() {
            return Natural::zero();
        }
        let mut out = Vec::with_capacity(self.limbs.len() + 1);
        let mut carry = 0u64;
        for word in &self.limbs {
            let prod = u128::from(*word) * u128::from(factor) + u128::from(carry);
            out.push(prod as u64);
            carry = (prod >> LIMB_BITS) as u64;
        }
        if carry != 0 {
            out.push(carry);
        }
        Natural::from_limbs(out)
    }

    pub(crate) fn add_small(&self, value: u64) -> Natural {
        self.add(&Natural::from_u64(value))
    }

    /// Quotient and remainder of division by a single nonzero limb.
    pub(crate) fn div_small(&self, divisor: u64) -> (Natural, u64) {
        assert!(divisor != 0, "division by zero limb");
        let mut out = vec![0u64; self.limbs.len()];
        let mut rem = 0u64;
        for i in (0..self.limbs.len()).rev() {
            let cur = (u128::from(rem) << LIMB_BITS) | u128::from(self.limbs[i]);
            out[i] = (cur / u128::from(divisor)) as u64;
            rem = (cur % u128::from(divisor)) as u64;
        }
        (Natural::from_limbs(out), rem)
    }
}

impl Ord for Natural {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.limbs.len() != other.limbs.len() {
            return self.limbs.len().cmp(&other.limbs.len());
        }
        for (a, b) in self.limbs.iter().rev().zip(other.limbs.iter().rev()) {
            if a != b {
                return a.cmp(b);
            }
        }
        Ordering::Equal
    }
}

impl PartialOrd for Natural {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<u64> for Natural {
    fn from(value: u64) -> Self {
        Natural::from_u64(value)
    }
}

impl fmt::Debug for Natural {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Natural({})", self.to_text(10))
    }
}

/// Three-way sign. Zero values always carry `Sign::Zero`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Sign {
    Negative,
    Zero,
    Positive,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Negative => Sign::Positive,
            Sign::Zero => Sign::Zero,
            Sign::Positive => Sign::Negative,
        }
    }

    /// Sign of a product of values with these signs.
    pub fn product(self, other: Sign) -> Sign {
        match (self, other) {
            (Sign::Zero, _) | (_, Sign::Zero) => Sign::Zero,
            (a, b) if a == b => Sign::Positive,
            _ => Sign::Negative,
        }
    }
}

/// Signed magnitude integer. Invariant: the sign is `Zero` exactly when
/// the magnitude is zero.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedInt {
    sign: Sign,
    magnitude: Natural,
}

impl SignedInt {
    /// Builds a signed value, canonicalizing a zero magnitude to `Sign::Zero`.
    pub fn new(sign: Sign, magnitude: Natural) -> Self {
        if magnitude.is_zero() {
            SignedInt {
                sign: Sign::Zero,
                magnitude,
            }
        } else {
            assert!(sign != Sign::Zero, "nonzero magnitude needs a sign");
            SignedInt { sign, magnitude }
        }
    }

    pub fn zero() -> Self {
        SignedInt {
            sign: Sign::Zero,
            magnitude: Natural::zero(),
        }
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    pub fn magnitude(&self) -> &Natural {
        &self.magnitude
    }

    pub fn is_zero(&self) -> bool {
        self.sign == Sign::Zero
    }

    pub fn neg(&self) -> SignedInt {
        SignedInt {
            sign: self.sign.flip(),
            magnitude: self.magnitude.clone(),
        }
    }

    pub fn add(&self, other: &SignedInt) -> SignedInt {
        match (self.sign, other.sign) {
            (Sign::Zero, _) => other.clone(),
            (_, Sign::Zero) => self.clone(),
            (a, b) if a == b => SignedInt::new(a, self.magnitude.add(&other.magnitude)),
            _ => {
                // Opposite signs: the larger magnitude wins.
                let diff = self.magnitude.abs_diff(&other.magnitude);
                match diff.sign {
                    Sign::Zero => SignedInt::zero(),
                    Sign::Positive => SignedInt::new(self.sign, diff.magnitude),
                    Sign::Negative => SignedInt::new(other.sign, diff.magnitude),
                }
            }
        }
    }

    /// The magnitude when non-negative, `None` for negative values.
    pub fn to_natural(&self) -> Option<Natural> {
        match self.sign {
            Sign::Negative => None,
            _ => Some(self.magnitude.clone()),
        }
    }
}

impl From<Natural> for SignedInt {
    fn from(magnitude: Natural) -> Self {
        if magnitude.is_zero() {
            SignedInt::zero()
        } else {
            SignedInt {
                sign: Sign::Positive,
                magnitude,
            }
        }
    }
}
