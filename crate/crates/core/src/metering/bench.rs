//! Timing and operation-count benchmark across the multipliers.
//!
//! Every cell (algorithm, bit size, trial) multiplies the same seeded
//! operand pair twice: once unmetered under a wall-clock timer, once
//! metered for the tallies. Both results are checked against long
//! multiplication, so a run doubles as a correctness sweep. Records
//! serialize to a fixed-header CSV and parse back losslessly apart from
//! wall-clock noise.

use std::error::Error;
use std::fmt;
use std::io::{self, Write};
use std::time::Instant;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::karatsuba::HybridConfig;
use crate::metering::{metered_call, run_algorithm, Algorithm, OpCounts};
use crate::natural::Natural;
use crate::schoolbook::school_mul;

/// One benchmark cell: an algorithm applied to one seeded operand pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BenchRecord {
    pub algorithm: Algorithm,
    pub bits: usize,
    pub trial: u32,
    pub elapsed_nanos: u128,
    pub ops: OpCounts,
}

/// A benchmarked product disagreed with long multiplication.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheckError {
    pub algorithm: Algorithm,
    pub bits: usize,
    pub trial: u32,
    pub seed: u64,
}

impl fmt::Display for CrossCheckError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "result mismatch for {} at {} bits, trial {}, seed {}",
            self.algorithm, self.bits, self.trial, self.seed
        )
    }
}

impl Error for CrossCheckError {}

/// A CSV line that does not fit the benchmark schema.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsvError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for CsvError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl Error for CsvError {}

pub const CSV_HEADER: &str = "algo,bits,trial,nanos,digit_mults,adds,subs,shifts,exact_divisions";

/// Runs the requested algorithms over the given exact bit sizes.
///
/// Operands depend only on the master seed, the bit size and the trial
/// index, so every algorithm sees identical inputs and reruns reproduce
/// the same operand stream. Requested algorithms are deduplicated and
/// visited in the declaration order of [`Algorithm::ALL`]; sizes keep
/// their given order. Wall-clock time covers only the unmetered
/// multiplication.
pub fn bench_run(
    algorithms: &[Algorithm],
    sizes: &[usize],
    trials: u32,
    seed: u64,
    cfg: &HybridConfig,
) -> Result<Vec<BenchRecord>, CrossCheckError> {
    let mut records = Vec::new();
    for algo in Algorithm::ALL.into_iter().filter(|a| algorithms.contains(a)) {
        for &bits in sizes {
            assert!(bits >= 1, "operand size must be at least one bit");
            for trial in 0..trials {
                let cell_seed = mix(seed, bits as u64, u64::from(trial));
                let mut rng = ChaCha8Rng::seed_from_u64(cell_seed);
                let a = random_with_bits(&mut rng, bits);
                let b = random_with_bits(&mut rng, bits);
                let expected = school_mul(&a, &b);

                let started = Instant::now();
                let value = run_algorithm(algo, &a, &b, cfg);
                let elapsed_nanos = started.elapsed().as_nanos();

                let (metered_value, ops) = metered_call(algo, &a, &b, cfg);
                if value != expected || metered_value != expected {
                    return Err(CrossCheckError {
                        algorithm: algo,
                        bits,
                        trial,
                        seed,
                    });
                }
                records.push(BenchRecord {
                    algorithm: algo,
                    bits,
                    trial,
                    elapsed_nanos,
                    ops,
                });
            }
        }
    }
    Ok(records)
}

/// Scrambles (seed, bits, trial) into one stream seed so cells are
/// independent and insensitive to iteration order.
fn mix(seed: u64, bits: u64, trial: u64) -> u64 {
    let mut z = seed
        ^ bits.wrapping_mul(0x9e37_79b9_7f4a_7c15)
        ^ trial.wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Uniform value of exactly `bits` bits: the top bit is forced on.
fn random_with_bits(rng: &mut ChaCha8Rng, bits: usize) -> Natural {
    let words = bits.div_ceil(64);
    let mut limbs = vec![0u64; words];
    for limb in limbs.iter_mut() {
        *limb = rng.next_u64();
    }
    let top_bits = bits - (words - 1) * 64;
    let top = &mut limbs[words - 1];
    if top_bits < 64 {
        *top &= (1u64 << top_bits) - 1;
    }
    *top |= 1u64 << (top_bits - 1);
    Natural::from_limb_vec(limbs)
}

/// Writes records under the fixed header, one line per record.
pub fn emit_csv<W: Write>(records: &[BenchRecord], out: &mut W) -> io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in records {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            r.algorithm.name(),
            r.bits,
            r.trial,
            r.elapsed_nanos,
            r.ops.digit_mults,
            r.ops.adds,
            r.ops.subs,
            r.ops.shifts,
            r.ops.exact_divisions
        )?;
    }
    Ok(())
}

/// Reads back what [`emit_csv`] writes. The header line must match
/// exactly; a trailing newline is tolerated.
pub fn parse_csv(text: &str) -> Result<Vec<BenchRecord>, CsvError> {
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == CSV_HEADER => {}
        Some((_, header)) => {
            return Err(CsvError {
                line: 1,
                message: format!("expected header {CSV_HEADER:?}, found {header:?}"),
            })
        }
        None => {
            return Err(CsvError {
                line: 1,
                message: "empty input".into(),
            })
        }
    }

    fn number<T: std::str::FromStr>(field: &str, name: &str, line: usize) -> Result<T, CsvError> {
        field.parse().map_err(|_| CsvError {
            line,
            message: format!("bad {name} field {field:?}"),
        })
    }

    let mut records = Vec::new();
    for (index, line) in lines {
        if line.is_empty() {
            continue;
        }
        let line_no = index + 1;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 9 {
            return Err(CsvError {
                line: line_no,
                message: format!("expected 9 fields, found {}", fields.len()),
            });
        }
        let algorithm = Algorithm::from_name(fields[0]).ok_or_else(|| CsvError {
            line: line_no,
            message: format!("unknown algorithm {:?}", fields[0]),
        })?;
        let mut ops = OpCounts::new(2);
        let record = BenchRecord {
            algorithm,
            bits: number(fields[1], "bits", line_no)?,
            trial: number(fields[2], "trial", line_no)?,
            elapsed_nanos: number(fields[3], "nanos", line_no)?,
            ops: {
                ops.digit_mults = number(fields[4], "digit_mults", line_no)?;
                ops.adds = number(fields[5], "adds", line_no)?;
                ops.subs = number(fields[6], "subs", line_no)?;
                ops.shifts = number(fields[7], "shifts", line_no)?;
                ops.exact_divisions = number(fields[8], "exact_divisions", line_no)?;
                ops
            },
        };
        records.push(record);
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::karatsuba::BaseCase;

    #[test]
    fn full_grid_produces_one_record_per_cell() {
        let records = bench_run(&Algorithm::ALL, &[64], 3, 7, &HybridConfig::default())
            .expect("cross-check holds");
        assert_eq!(records.len(), 12);
        let mut expected = Vec::new();
        for algo in Algorithm::ALL {
            for trial in 0..3 {
                expected.push((algo, 64usize, trial as u32));
            }
        }
        let got: Vec<_> = records.iter().map(|r| (r.algorithm, r.bits, r.trial)).collect();
        assert_eq!(got, expected);
        for r in &records {
            if r.algorithm == Algorithm::Nikhilam {
                assert_eq!(r.ops.digit_mults, 2);
                assert_eq!(r.ops.exact_divisions, 1);
            }
        }
    }

    #[test]
    fn operation_counts_are_reproducible() {
        let cfg = HybridConfig::new(16, BaseCase::Nikhilam);
        let one = bench_run(&Algorithm::ALL, &[48, 96], 2, 99, &cfg).unwrap();
        let two = bench_run(&Algorithm::ALL, &[48, 96], 2, 99, &cfg).unwrap();
        assert_eq!(one.len(), two.len());
        for (a, b) in one.iter().zip(&two) {
            assert_eq!(a.algorithm, b.algorithm);
            assert_eq!(a.bits, b.bits);
            assert_eq!(a.trial, b.trial);
            assert_eq!(a.ops, b.ops, "{} {} bits trial {}", a.algorithm, a.bits, a.trial);
        }
        // A different master seed draws different operands.
        let three = bench_run(&[Algorithm::Schoolbook], &[96], 2, 100, &cfg).unwrap();
        let school_96: Vec<_> = one
            .iter()
            .filter(|r| r.algorithm == Algorithm::Schoolbook && r.bits == 96)
            .collect();
        assert!(three.iter().zip(&school_96).any(|(a, b)| a.ops != b.ops));
    }

    #[test]
    fn requested_algorithms_are_deduplicated_and_reordered() {
        let records = bench_run(
            &[Algorithm::Nikhilam, Algorithm::Schoolbook, Algorithm::Nikhilam],
            &[32],
            1,
            5,
            &HybridConfig::default(),
        )
        .unwrap();
        let got: Vec<_> = records.iter().map(|r| r.algorithm).collect();
        assert_eq!(got, vec![Algorithm::Schoolbook, Algorithm::Nikhilam]);
    }

    #[test]
    fn exact_bit_lengths_are_drawn() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for bits in [1usize, 2, 63, 64, 65, 128, 1000] {
            for _ in 0..8 {
                assert_eq!(random_with_bits(&mut rng, bits).bit_length(), bits);
            }
        }
    }

    #[test]
    fn csv_round_trips() {
        let records = bench_run(&Algorithm::ALL, &[64, 80], 2, 11, &HybridConfig::default())
            .unwrap();
        let mut buffer = Vec::new();
        emit_csv(&records, &mut buffer).unwrap();
        let text = String::from_utf8(buffer).unwrap();
        assert!(text.starts_with(CSV_HEADER));
        assert_eq!(parse_csv(&text).unwrap(), records);
    }

    #[test]
    fn csv_golden_line() {
        let record = BenchRecord {
            algorithm: Algorithm::KaratsubaHybrid,
            bits: 256,
            trial: 4,
            elapsed_nanos: 1234,
            ops: OpCounts {
                radix: 2,
                digit_mults: 10,
                adds: 20,
                subs: 30,
                shifts: 40,
                exact_divisions: 5,
            },
        };
        let mut buffer = Vec::new();
        emit_csv(&[record], &mut buffer).unwrap();
        assert_eq!(
            String::from_utf8(buffer).unwrap(),
            "algo,bits,trial,nanos,digit_mults,adds,subs,shifts,exact_divisions\n\
             karatsuba_hybrid,256,4,1234,10,20,30,40,5\n"
        );
    }

    #[test]
    fn csv_parse_rejects_malformed_input() {
        let bad_header = parse_csv("algo,bits\nx").unwrap_err();
        assert_eq!(bad_header.line, 1);

        let bad_algo = parse_csv(&format!("{CSV_HEADER}\nfft,1,0,0,0,0,0,0,0\n")).unwrap_err();
        assert_eq!(bad_algo.line, 2);
        assert!(bad_algo.to_string().contains("fft"));

        let short_line = parse_csv(&format!("{CSV_HEADER}\nschoolbook,1,0\n")).unwrap_err();
        assert_eq!(short_line.line, 2);

        let bad_number =
            parse_csv(&format!("{CSV_HEADER}\nschoolbook,1,0,x,0,0,0,0,0\n")).unwrap_err();
        assert!(bad_number.to_string().contains("nanos"));

        assert_eq!(parse_csv("").unwrap_err().line, 1);
        assert!(parse_csv(&format!("{CSV_HEADER}\n")).unwrap().is_empty());
    }
}
