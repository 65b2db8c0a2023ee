//! Operation accounting for the multipliers.
//!
//! Counts model the written procedures at digit granularity, not machine
//! cost: a "multiplication" is a product of two single digits, an addition
//! or subtraction counts once per invocation on whole values, and a shift
//! counts once per multiplication or division by a base power no matter
//! the distance. Metering is threaded through the algorithms as an
//! explicit accumulator; the unmetered entry points pass a no-op meter and
//! compute identical values.

use std::fmt;

use crate::karatsuba::{karatsuba_with, BaseCase, HybridConfig};
use crate::natural::Natural;
use crate::nikhilam::{nik_mul_with, nik_square_with};
use crate::schoolbook::school_mul_with;

mod bench;
mod digits;

pub use bench::{bench_run, emit_csv, parse_csv, BenchRecord, CrossCheckError, CsvError, CSV_HEADER};
pub use digits::{count_digit_procedure, DigitProcedure};

/// Tally of primitive operations at a given radix.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OpCounts {
    pub radix: u32,
    pub digit_mults: u64,
    pub adds: u64,
    pub subs: u64,
    pub shifts: u64,
    pub exact_divisions: u64,
}

impl OpCounts {
    pub fn new(radix: u32) -> Self {
        OpCounts {
            radix,
            digit_mults: 0,
            adds: 0,
            subs: 0,
            shifts: 0,
            exact_divisions: 0,
        }
    }
}

/// Sink for operation tallies. Algorithms are generic over this so the
/// plain entry points pay nothing for the bookkeeping.
pub(crate) trait Meter {
    fn mults(&mut self, n: u64);
    fn adds(&mut self, n: u64);
    fn subs(&mut self, n: u64);
    fn shifts(&mut self, n: u64);
    fn exact_divs(&mut self, n: u64);
}

/// Discards every tally.
pub(crate) struct NoMeter;

impl Meter for NoMeter {
    #[inline]
    fn mults(&mut self, _: u64) {}
    #[inline]
    fn adds(&mut self, _: u64) {}
    #[inline]
    fn subs(&mut self, _: u64) {}
    #[inline]
    fn shifts(&mut self, _: u64) {}
    #[inline]
    fn exact_divs(&mut self, _: u64) {}
}

impl Meter for OpCounts {
    fn mults(&mut self, n: u64) {
        self.digit_mults += n;
    }
    fn adds(&mut self, n: u64) {
        self.adds += n;
    }
    fn subs(&mut self, n: u64) {
        self.subs += n;
    }
    fn shifts(&mut self, n: u64) {
        self.shifts += n;
    }
    fn exact_divs(&mut self, n: u64) {
        self.exact_divisions += n;
    }
}

/// The multipliers the metered entry point and the bench harness know.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Schoolbook,
    Nikhilam,
    KaratsubaPlain,
    KaratsubaHybrid,
}

impl Algorithm {
    pub const ALL: [Algorithm; 4] = [
        Algorithm::Schoolbook,
        Algorithm::Nikhilam,
        Algorithm::KaratsubaPlain,
        Algorithm::KaratsubaHybrid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Schoolbook => "schoolbook",
            Algorithm::Nikhilam => "nikhilam",
            Algorithm::KaratsubaPlain => "karatsuba_plain",
            Algorithm::KaratsubaHybrid => "karatsuba_hybrid",
        }
    }

    pub fn from_name(name: &str) -> Option<Algorithm> {
        Algorithm::ALL.into_iter().find(|a| a.name() == name)
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Runs one multiplication with bit-level (radix 2) operation counting.
/// The Karatsuba variants take their threshold from `cfg` but force the
/// base case: `KaratsubaPlain` bottoms out in schoolbook rows,
/// `KaratsubaHybrid` in the squaring-based multiplier.
pub fn metered_call(
    algo: Algorithm,
    a: &Natural,
    b: &Natural,
    cfg: &HybridConfig,
) -> (Natural, OpCounts) {
    let mut ops = OpCounts::new(2);
    let value = match algo {
        Algorithm::Schoolbook => school_mul_with(a, b, &mut ops),
        Algorithm::Nikhilam => nik_mul_with(a, b, &mut ops),
        Algorithm::KaratsubaPlain => {
            karatsuba_with(a, b, &cfg.with_base(BaseCase::Schoolbook), &mut ops)
        }
        Algorithm::KaratsubaHybrid => {
            karatsuba_with(a, b, &cfg.with_base(BaseCase::Nikhilam), &mut ops)
        }
    };
    (value, ops)
}

/// Squares with bit-level operation counting. Every call performs exactly
/// one single-bit product, whatever the input.
pub fn metered_nik_square(a: &Natural) -> (Natural, OpCounts) {
    let mut ops = OpCounts::new(2);
    let value = nik_square_with(a, &mut ops);
    (value, ops)
}

/// Unmetered dispatch used where only the value matters.
pub(crate) fn run_algorithm(
    algo: Algorithm,
    a: &Natural,
    b: &Natural,
    cfg: &HybridConfig,
) -> Natural {
    use crate::karatsuba::karatsuba_mul;
    use crate::nikhilam::nik_mul;
    use crate::schoolbook::school_mul;
    match algo {
        Algorithm::Schoolbook => school_mul(a, b),
        Algorithm::Nikhilam => nik_mul(a, b),
        Algorithm::KaratsubaPlain => karatsuba_mul(a, b, &cfg.with_base(BaseCase::Schoolbook)),
        Algorithm::KaratsubaHybrid => karatsuba_mul(a, b, &cfg.with_base(BaseCase::Nikhilam)),
    }
}
