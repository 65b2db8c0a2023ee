//! Squaring by residue chains, and multiplication reduced to squaring.
//!
//! The squaring routine walks the binary form of the input from the top
//! down. Write n for the bit length and A_1 for the input. Step i
//! (i = 2..n, j = n-i+1) peels the next bit: when bit j of A_{i-1} is set,
//! A_i = A_{i-1} - 2^j, otherwise A_i = A_{i-1}. The last residue A_n is
//! the lowest bit, and its square B_1 = A_n * A_n is the only primitive
//! multiplication in the whole procedure. Climbing back up uses the
//! difference of squares: A_j and A_{j+1} differ by the dropped power of
//! two, so A_j^2 = A_{j+1}^2 + (A_j + A_{j+1}) * 2^(n-j) whenever the two
//! residues differ, and nothing changes otherwise. Each
//! set bit therefore costs one subtraction on the way down plus two
//! additions and a shift on the way back, keeping the auxiliary work
//! linear in the bit length.
//!
//! General products reduce to squares through
//! a*b = ((a+b)^2 - |a-b|^2) / 4; the final division is performed as a
//! two-bit right shift that insists on a zero remainder.
//!
//! `near_base_mul` is the desk shortcut for factors sitting close to a
//! convenient base x: with signed deficits a = m - x and b = n - x,
//! m*n = x*(m + b) + a*b, which needs one deficit product plus one product
//! by the base.

use std::error::Error;
use std::fmt;

use crate::metering::{Meter, NoMeter};
use crate::natural::{Natural, SignedInt};
use crate::schoolbook::school_mul;

/// One step of the squaring trace. Step `i` works at base exponent
/// `j = n - i + 1`; `residue` is the value after the forward peel and
/// `partial` the running square after the reverse step at the same index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub i: usize,
    pub j: usize,
    pub bit_set: bool,
    pub residue: Natural,
    pub partial: Natural,
}

/// Full record of a traced squaring: the input, all n-1 steps, the one-bit
/// base square and the final result.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SquaringTrace {
    pub input: Natural,
    pub n: usize,
    pub steps: Vec<TraceStep>,
    pub base_residue: Natural,
    pub base_partial: Natural,
    pub result: Natural,
}

/// Attempted base selection or base multiplication at zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZeroBase;

impl fmt::Display for ZeroBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "base arithmetic is undefined at zero")
    }
}

impl Error for ZeroBase {}

/// Squares `a` using the residue chain. Trailing zero bits are stripped
/// first and restored as a single shift at the end, so the chain itself
/// always runs on an odd value.
pub fn nik_square(a: &Natural) -> Natural {
    nik_square_with(a, &mut NoMeter)
}

pub(crate) fn nik_square_with<M: Meter>(a: &Natural, m: &mut M) -> Natural {
    if a.is_zero() {
        // Degenerate base square 0 * 0.
        m.mults(1);
        return Natural::zero();
    }
    let t = a.trailing_zeros();
    if t == 0 {
        return square_chain(a, m);
    }
    m.shifts(1);
    let odd = a.shr(t);
    let sq = square_chain(&odd, m);
    m.shifts(1);
    sq.shl(2 * t)
}

/// The two-phase recurrence on a nonzero input. Exactly one primitive
/// one-bit product is performed per call.
fn square_chain<M: Meter>(a: &Natural, m: &mut M) -> Natural {
    let n = a.bit_length();
    if n == 1 {
        m.mults(1);
        return a.clone(); // 1 * 1
    }
    // Forward phase: peel leading bits, keeping every residue.
    let mut residues = Vec::with_capacity(n);
    residues.push(a.clone());
    for i in 2..=n {
        let j = n - i + 1;
        let prev = residues.last().expect("chain is never empty");
        let next = if prev.bit(j) {
            m.subs(1);
            prev.without_bit(j)
        } else {
            prev.clone()
        };
        residues.push(next);
    }
    // Base square: the last residue is a single bit.
    m.mults(1);
    let mut partial = residues[n - 1].clone();
    // Reverse phase: one difference-of-squares level per step.
    for i in 2..=n {
        let j = n - i + 1;
        let (lower, upper) = (&residues[j - 1], &residues[j]);
        if lower != upper {
            m.adds(1);
            let sum = lower.add(upper);
            m.shifts(1);
            let term = sum.shl(n - j);
            m.adds(1);
            partial = partial.add(&term);
        }
    }
    partial
}

/// Squares `a` and records every residue and partial square along the way.
/// The trace always covers the full input; no trailing-zero stripping is
/// applied here, so the steps match the written procedure line for line.
pub fn nik_square_traced(a: &Natural) -> (Natural, SquaringTrace) {
    let n = a.bit_length();
    if n <= 1 {
        let result = a.clone(); // 0 or 1 squares to itself
        let trace = SquaringTrace {
            input: a.clone(),
            n,
            steps: Vec::new(),
            base_residue: a.clone(),
            base_partial: result.clone(),
            result: result.clone(),
        };
        return (result, trace);
    }
    let mut residues = Vec::with_capacity(n);
    let mut guards = Vec::with_capacity(n - 1);
    residues.push(a.clone());
    for i in 2..=n {
        let j = n - i + 1;
        let prev = residues.last().expect("chain is never empty");
        let set = prev.bit(j);
        guards.push(set);
        residues.push(if set { prev.without_bit(j) } else { prev.clone() });
    }
    let base_residue = residues[n - 1].clone();
    let base_partial = base_residue.clone();
    let mut partials = Vec::with_capacity(n - 1);
    let mut partial = base_partial.clone();
    for i in 2..=n {
        let j = n - i + 1;
        let (lower, upper) = (&residues[j - 1], &residues[j]);
        if lower != upper {
            partial = partial.add(&lower.add(upper).shl(n - j));
        }
        partials.push(partial.clone());
    }
    let result = partials.last().cloned().expect("n >= 2 has steps");
    let steps = (2..=n)
        .map(|i| TraceStep {
            i,
            j: n - i + 1,
            bit_set: guards[i - 2],
            residue: residues[i - 1].clone(),
            partial: partials[i - 2].clone(),
        })
        .collect();
    let trace = SquaringTrace {
        input: a.clone(),
        n,
        steps,
        base_residue,
        base_partial,
        result: result.clone(),
    };
    (result, trace)
}

/// Multiplies through the square identity a*b = ((a+b)^2 - |a-b|^2) / 4.
/// Trailing zeros of the two squared values are handled inside the
/// squaring routine itself.
pub fn nik_mul(a: &Natural, b: &Natural) -> Natural {
    nik_mul_with(a, b, &mut NoMeter)
}

pub(crate) fn nik_mul_with<M: Meter>(a: &Natural, b: &Natural, m: &mut M) -> Natural {
    m.adds(1);
    let sum = a.add(b);
    m.subs(1);
    let diff = a.abs_diff(b);
    let d1 = nik_square_with(&sum, m);
    let d2 = nik_square_with(diff.magnitude(), m);
    m.subs(1);
    let num = d1
        .sub(&d2)
        .expect("(a+b)^2 is never below (a-b)^2: algorithm bug");
    // The difference of the two squares is 4ab; anything else is a bug,
    // never something to truncate away.
    assert!(
        num.low_bits(2).is_zero(),
        "difference of squares not divisible by four: algorithm bug"
    );
    m.exact_divs(1);
    num.shr(2)
}

/// Near-base product: with signed deficits a = m - x and b = n - x,
/// returns x*(m + b) + a*b, which telescopes back to m*n for any positive
/// base. Carries (|a*b| >= x) and mixed signs need no special casing since
/// the arithmetic is signed throughout.
pub fn near_base_mul(m: &Natural, n: &Natural, x: &Natural) -> Result<Natural, ZeroBase> {
    if x.is_zero() {
        return Err(ZeroBase);
    }
    let a = m.abs_diff(x);
    let b = n.abs_diff(x);
    let shifted = SignedInt::from(m.clone()).add(&b);
    let base_term = signed_mul(&SignedInt::from(x.clone()), &shifted);
    let deficit_term = signed_mul(&a, &b);
    let product = base_term.add(&deficit_term);
    Ok(product
        .to_natural()
        .expect("x*(m + b) + a*b equals m*n and cannot be negative: algorithm bug"))
}

fn signed_mul(x: &SignedInt, y: &SignedInt) -> SignedInt {
    SignedInt::new(
        x.sign().product(y.sign()),
        school_mul(x.magnitude(), y.magnitude()),
    )
}

/// Exponent p such that radix^p is the power of the radix nearest to `m`,
/// choosing between the two powers that bracket the value and preferring
/// the smaller exponent on ties.
pub fn nearest_base(m: &Natural, radix: u32) -> Result<usize, ZeroBase> {
    assert!((2..=16).contains(&radix), "radix must be in 2..=16");
    if m.is_zero() {
        return Err(ZeroBase);
    }
    let d = digit_count(m, radix);
    let lower = pow_radix(radix, d - 1);
    let upper = lower.mul_small(u64::from(radix));
    let below = m.sub(&lower).expect("r^(d-1) <= m");
    let above = upper.sub(m).expect("m < r^d");
    Ok(if below <= above { d - 1 } else { d })
}

fn digit_count(m: &Natural, radix: u32) -> usize {
    let mut count = 0;
    let mut rest = m.clone();
    while !rest.is_zero() {
        rest = rest.div_small(u64::from(radix)).0;
        count += 1;
    }
    count.max(1)
}

pub(crate) fn pow_radix(radix: u32, p: usize) -> Natural {
    let mut out = Natural::one();
    for _ in 0..p {
        out = out.mul_small(u64::from(radix));
    }
    out
}

fn padded_binary(value: &Natural, width: usize) -> String {
    let raw = value.to_text(2);
    if raw.len() >= width {
        raw
    } else {
        let mut s = String::with_capacity(width);
        for _ in 0..width - raw.len() {
            s.push('0');
        }
        s.push_str(&raw);
        s
    }
}

impl SquaringTrace {
    /// Machine-readable form. Numerals are binary strings; residues are
    /// zero-padded to the width of their base exponent, matching the way
    /// the steps are written out by hand.
    pub fn to_json(&self) -> serde_json::Value {
        let steps: Vec<serde_json::Value> = self
            .steps
            .iter()
            .map(|s| {
                serde_json::json!({
                    "i": s.i,
                    "j": s.j,
                    "bit_set": s.bit_set,
                    "residue": padded_binary(&s.residue, s.j),
                    "partial": s.partial.to_text(2),
                })
            })
            .collect();
        serde_json::json!({
            "input": self.input.to_text(2),
            "bit_length": self.n,
            "steps": steps,
            "result": self.result.to_text(2),
        })
    }

    /// Aligned text table: one column per residue, the running partial
    /// squares staggered beneath, the final row carrying the result.
    pub fn render_table(&self) -> String {
        let n = self.n;
        if n <= 1 {
            let mut out = String::new();
            out.push_str(&format!("Multiplicand | {}\n", self.input.to_text(2)));
            out.push_str(&format!("Multiplier   | {}\n", self.input.to_text(2)));
            out.push_str(&format!("Result       | {}\n", self.result.to_text(2)));
            return out;
        }

        // Column c (1-based) holds residue A_c and partial B_{n-c+1}.
        let mut header = vec!["".to_string(), "Binary Digits".to_string()];
        header.push("Base Difference".to_string());
        for _ in 3..=n {
            header.push("Next Difference".to_string());
        }

        let residue_cell = |c: usize| -> String {
            let value = if c == 1 {
                &self.input
            } else {
                &self.steps[c - 2].residue
            };
            let width = if c == 1 { n } else { n - c + 1 };
            padded_binary(value, width)
        };

        let mut rows: Vec<Vec<String>> = Vec::new();
        let mut mand = vec!["Multiplicand".to_string()];
        let mut mier = vec!["Multiplier".to_string()];
        for c in 1..=n {
            mand.push(residue_cell(c));
            mier.push(residue_cell(c));
        }
        rows.push(mand);
        rows.push(mier);

        // B_i sits in column n - i + 1; B_n is the result in column 1.
        for i in 1..=n {
            let (label, value) = if i == n {
                ("Result".to_string(), &self.result)
            } else if i == 1 {
                ("B1".to_string(), &self.base_partial)
            } else {
                (format!("B{i}"), &self.steps[i - 2].partial)
            };
            let col = n - i + 1;
            let mut row = vec![label];
            for c in 1..=n {
                row.push(if c == col {
                    value.to_text(2)
                } else {
                    String::new()
                });
            }
            rows.push(row);
        }

        let cols = n + 1;
        let mut widths = vec![0usize; cols];
        for row in std::iter::once(&header).chain(rows.iter()) {
            for (c, cell) in row.iter().enumerate() {
                widths[c] = widths[c].max(cell.len());
            }
        }
        let mut out = String::new();
        for row in std::iter::once(&header).chain(rows.iter()) {
            let line: Vec<String> = row
                .iter()
                .enumerate()
                .map(|(c, cell)| {
                    if c == 0 {
                        format!("{cell:<width$}", width = widths[c])
                    } else {
                        format!("{cell:>width$}", width = widths[c])
                    }
                })
                .collect();
            out.push_str(line.join(" | ").trim_end());
            out.push('\n');
        }
        out
    }
}
