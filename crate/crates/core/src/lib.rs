//! Arbitrary-precision natural-number multiplication built around a
//! residue-chain squaring trick. Squaring peels the operand's set bits
//! one at a time down to a power of two, then rebuilds the square from a
//! chain of difference-of-squares steps, so only one single-digit product
//! is ever taken; a general product then costs two squarings and an exact
//! division by four. Long multiplication, a split-recursion multiplier
//! with a pluggable base case, operation metering, digit-level procedure
//! counting and a benchmark harness round out the crate.

pub mod karatsuba;
pub mod metering;
pub mod natural;
pub mod nikhilam;
pub mod schoolbook;

pub use karatsuba::{karatsuba_mul, split, BaseCase, HybridConfig, DEFAULT_THRESHOLD_BITS};
pub use metering::{
    bench_run, count_digit_procedure, emit_csv, metered_call, metered_nik_square, parse_csv,
    Algorithm, BenchRecord, CrossCheckError, CsvError, DigitProcedure, OpCounts, CSV_HEADER,
};
pub use natural::{Natural, ParseError, Sign, SignedInt, Underflow};
pub use nikhilam::{
    near_base_mul, nearest_base, nik_mul, nik_square, nik_square_traced, SquaringTrace, TraceStep,
    ZeroBase,
};
pub use schoolbook::school_mul;
