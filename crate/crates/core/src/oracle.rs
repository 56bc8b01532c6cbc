//! Ground truth and reproducible test data.
//!
//! All randomness comes from `ChaCha8Rng::seed_from_u64`, which is portable,
//! so a seed pins the output on every platform.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::ingest::{Code, DenseAlphabet, Text};

/// Length of the base string of [`gen_artificial`].
pub const ARTIFICIAL_BASE_LEN: usize = 5 << 10;
/// Number of mutated copies appended to the base string.
pub const ARTIFICIAL_COPIES: usize = 100;
/// Bytes of the four DNA codes.
pub const DNA: &[u8; 4] = b"ACGT";

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Occurrences of `pattern` by direct scan.
pub fn naive_count<T: PartialEq>(text: &[T], pattern: &[T]) -> Result<usize> {
    if pattern.is_empty() {
        return Err(Error::InvalidPattern);
    }
    if pattern.len() > text.len() {
        return Ok(0);
    }
    Ok(text
        .windows(pattern.len())
        .filter(|w| *w == pattern)
        .count())
}

/// The identity alphabet on codes `1..=sigma`.
pub fn code_alphabet(sigma: usize) -> DenseAlphabet {
    DenseAlphabet::from_code_table((1..=sigma as u8).collect()).expect("sigma in 1..=255")
}

/// Uniform text over `1..=sigma`, redrawn until every code occurs when `n >= sigma`.
pub fn gen_random_instance(sigma: usize, n: usize, seed: u64) -> Text {
    assert!((1..=255).contains(&sigma) && n >= 1);
    let mut rng = rng(seed);
    loop {
        let t: Vec<Code> = (0..n).map(|_| rng.gen_range(1..=sigma as Code)).collect();
        let mut seen = vec![false; sigma + 1];
        t.iter().for_each(|&c| seen[c as usize] = true);
        if n < sigma || seen[1..].iter().all(|&s| s) {
            return Text::from_codes(t).expect("non-empty, codes >= 1");
        }
    }
}

/// A random DNA base string followed by copies in which every character is,
/// with probability `percent`%, replaced by another base or deleted (even odds).
/// Codes `1..=4` stand for [`DNA`].
pub fn gen_artificial(percent: f64, seed: u64) -> Text {
    let mut rng = rng(seed);
    let base: Vec<Code> = (0..ARTIFICIAL_BASE_LEN)
        .map(|_| rng.gen_range(1..=4))
        .collect();
    let p = (percent / 100.0).clamp(0.0, 1.0);
    let mut out = base.clone();
    out.reserve(base.len() * ARTIFICIAL_COPIES);
    for _ in 0..ARTIFICIAL_COPIES {
        for &c in &base {
            if !rng.gen_bool(p) {
                out.push(c);
            } else if rng.gen_bool(0.5) {
                let others: Vec<Code> = (1..=4).filter(|&x| x != c).collect();
                out.push(*others.choose(&mut rng).unwrap());
            }
        }
    }
    Text::from_codes(out).expect("base string is non-empty")
}

/// `samples` substrings of length `len` at uniform random start positions.
pub fn sample_substrings(
    text: &[Code],
    len: usize,
    samples: usize,
    seed: u64,
) -> Result<Vec<Vec<Code>>> {
    if len == 0 || len > text.len() {
        return Err(Error::InvalidParameter(format!(
            "pattern length {len} not in 1..={}",
            text.len()
        )));
    }
    let mut rng = rng(seed);
    Ok((0..samples)
        .map(|_| {
            let i = rng.gen_range(0..=text.len() - len);
            text[i..i + len].to_vec()
        })
        .collect())
}
