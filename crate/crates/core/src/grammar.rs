//! The height-1 chunked GCIS dictionary.
//!
//! Every distinct chunk of the λ-chunked LMS factorization becomes a
//! non-terminal whose id is its 1-based lexicographic rank; id `0` is kept
//! for the level-1 terminator. Right-hand sides are addressed as fixed-width
//! integers: each character takes `w = ⌈lg(σ+1)⌉` bits, the first character
//! most significant, and code `0` pads short strings, so integer order and
//! lexicographic order coincide. Two sparse sets index those integers: one
//! over the right-hand sides (prefix queries) and one over their reversals
//! (suffix queries), the latter paired with a colex-to-lex permutation.

use std::collections::BTreeSet;
use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::ingest::{Code, Text};
use crate::lms;
use crate::succinct::EliasFano;

/// Level-1 symbol id. `0` is the terminator, non-terminals are `1..=sigma1`.
pub type SymbolId = u32;

/// Largest admissible `λ·w`.
pub const MAX_ENCODING_BITS: u32 = 48;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pad {
    Zero,
    One,
}

/// The text rewritten as a sequence of non-terminal ids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level1String(pub Vec<SymbolId>);

impl Level1String {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct Grammar {
    lambda: usize,
    sigma: usize,
    width: u32,
    rhs: Vec<Vec<Code>>,
    prefix_bits: EliasFano,
    suffix_bits: EliasFano,
    colex_to_lex: Vec<SymbolId>,
    lex_to_colex: Vec<u32>,
}

/// Bits needed per character for an alphabet of `sigma` codes plus padding.
pub fn char_width(sigma: usize) -> u32 {
    usize::BITS - sigma.leading_zeros()
}

fn check_lambda(lambda: usize, sigma: usize) -> Result<u32> {
    let width = char_width(sigma);
    if lambda == 0 {
        return Err(Error::InvalidParameter("lambda must be at least 1".into()));
    }
    if lambda as u64 * width as u64 > MAX_ENCODING_BITS as u64 {
        return Err(Error::InvalidParameter(format!(
            "lambda {lambda} with {width}-bit characters exceeds the {MAX_ENCODING_BITS}-bit encoding cap"
        )));
    }
    Ok(width)
}

impl Grammar {
    /// Chunks the LMS factorization of `text` and names every distinct chunk.
    pub fn build(text: &Text, sigma: usize, lambda: usize) -> Result<(Grammar, Level1String)> {
        check_lambda(lambda, sigma)?;
        let t = text.symbols();
        let chunked = lms::chunked_factorization(t, lambda)?;
        let distinct: BTreeSet<&[Code]> = chunked.chunks(t).collect();
        let rhs: Vec<Vec<Code>> = distinct.into_iter().map(<[Code]>::to_vec).collect();
        let grammar = Grammar::from_rhs(sigma, lambda, rhs)?;
        let level1 = chunked
            .chunks(t)
            .map(|c| grammar.lookup(c).expect("every chunk is a rule"))
            .collect();
        Ok((grammar, Level1String(level1)))
    }

    /// Rebuilds the derived structures from lexicographically sorted right-hand sides.
    pub fn from_rhs(sigma: usize, lambda: usize, rhs: Vec<Vec<Code>>) -> Result<Grammar> {
        let width = check_lambda(lambda, sigma)?;
        if rhs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Format(
                "right-hand sides must be strictly increasing".into(),
            ));
        }
        if rhs.iter().any(|r| {
            r.is_empty() || r.len() > lambda || r.iter().any(|&c| c == 0 || c as usize > sigma)
        }) {
            return Err(Error::Format("right-hand side out of range".into()));
        }
        let universe = 1u64 << (lambda as u32 * width);
        let mut g = Grammar {
            lambda,
            sigma,
            width,
            prefix_bits: EliasFano::new(&[], universe),
            suffix_bits: EliasFano::new(&[], universe),
            colex_to_lex: Vec::new(),
            lex_to_colex: Vec::new(),
            rhs,
        };
        let forward: Vec<u64> = g.rhs.iter().map(|r| g.pack(r.iter(), Pad::Zero)).collect();
        let mut reversed: Vec<(u64, SymbolId)> = g
            .rhs
            .iter()
            .enumerate()
            .map(|(i, r)| (g.pack(r.iter().rev(), Pad::Zero), i as SymbolId + 1))
            .collect();
        reversed.sort_unstable();
        let reversed_values: Vec<u64> = reversed.iter().map(|&(v, _)| v).collect();
        g.prefix_bits = EliasFano::new(&forward, universe);
        g.suffix_bits = EliasFano::new(&reversed_values, universe);
        g.colex_to_lex = reversed.iter().map(|&(_, id)| id).collect();
        g.lex_to_colex = vec![0; g.rhs.len()];
        for (colex, &id) in g.colex_to_lex.iter().enumerate() {
            g.lex_to_colex[id as usize - 1] = colex as u32 + 1;
        }
        Ok(g)
    }

    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn sigma(&self) -> usize {
        self.sigma
    }

    pub fn char_width(&self) -> u32 {
        self.width
    }

    /// Number of non-terminals.
    pub fn len(&self) -> usize {
        self.rhs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rhs.is_empty()
    }

    /// Right-hand sides in id order (id 1 first).
    pub fn rules(&self) -> &[Vec<Code>] {
        &self.rhs
    }

    pub fn rhs(&self, id: SymbolId) -> &[Code] {
        &self.rhs[id as usize - 1]
    }

    /// Fixed-width integer of `s` padded with zero or one bits up to `λ·w` bits.
    pub fn encode_fixed(&self, s: &[Code], pad: Pad) -> Result<u64> {
        if s.len() > self.lambda {
            return Err(Error::InvalidParameter(format!(
                "string of length {} exceeds lambda {}",
                s.len(),
                self.lambda
            )));
        }
        Ok(self.pack(s.iter(), pad))
    }

    fn pack<'a>(&self, s: impl ExactSizeIterator<Item = &'a Code>, pad: Pad) -> u64 {
        let len = s.len();
        let mut v = 0u64;
        for &c in s {
            v = (v << self.width) | c as u64;
        }
        let pad_bits = (self.lambda - len) as u32 * self.width;
        v <<= pad_bits;
        if pad == Pad::One && pad_bits > 0 {
            v |= (1u64 << pad_bits) - 1;
        }
        v
    }

    /// The id of the rule whose right-hand side is exactly `s`.
    pub fn lookup(&self, s: &[Code]) -> Option<SymbolId> {
        if s.is_empty() || s.len() > self.lambda {
            return None;
        }
        let v = self.pack(s.iter(), Pad::Zero);
        let r = self.prefix_bits.rank1(v);
        (self.prefix_bits.select1(r) == Some(v)).then_some(r as SymbolId + 1)
    }

    /// Ids whose right-hand side starts with `q` (not necessarily properly).
    pub fn prefix_range(&self, q: &[Code]) -> Option<RangeInclusive<SymbolId>> {
        let (lo, hi) = Self::interval(&self.prefix_bits, self.span(q.iter())?);
        (lo <= hi).then_some(lo..=hi)
    }

    /// Colex ranks (1-based) of the rules whose right-hand side ends with `q`.
    pub fn suffix_colex_range(&self, q: &[Code]) -> Option<RangeInclusive<u32>> {
        let (lo, hi) = Self::interval(&self.suffix_bits, self.span(q.iter().rev())?);
        (lo <= hi).then_some(lo..=hi)
    }

    /// Ids whose right-hand side ends with `q`, in colex order.
    pub fn suffix_symbols(&self, q: &[Code]) -> Vec<SymbolId> {
        self.suffix_colex_range(q)
            .map(|r| r.map(|c| self.colex_to_lex[c as usize - 1]).collect())
            .unwrap_or_default()
    }

    fn span<'a>(&self, q: impl ExactSizeIterator<Item = &'a Code> + Clone) -> Option<(u64, u64)> {
        if q.len() > self.lambda {
            return None;
        }
        Some((self.pack(q.clone(), Pad::Zero), self.pack(q, Pad::One)))
    }

    fn interval(bits: &EliasFano, (v1, v2): (u64, u64)) -> (u32, u32) {
        let lo = bits.rank1(v1) as u32 + 1;
        let hi = bits.rank1(v2 + 1) as u32;
        (lo, hi)
    }

    /// `colex_ranks()[k]` is the lex id with colex rank `k + 1`.
    pub fn colex_ranks(&self) -> &[SymbolId] {
        &self.colex_to_lex
    }

    /// Colex rank (1-based) of a lex id; the terminator maps to 0.
    pub fn colex_rank(&self, id: SymbolId) -> u32 {
        match id {
            0 => 0,
            id => self.lex_to_colex[id as usize - 1],
        }
    }

    /// Concatenates the right-hand sides of `level1`.
    pub fn expand(&self, level1: &[SymbolId]) -> Vec<Code> {
        level1
            .iter()
            .flat_map(|&id| self.rhs(id).iter().copied())
            .collect()
    }

    pub fn size_in_bytes(&self) -> usize {
        self.rhs.iter().map(|r| r.len() + 1).sum::<usize>()
            + self.prefix_bits.size_in_bytes()
            + self.suffix_bits.size_in_bytes()
            + (self.colex_to_lex.len() + self.lex_to_colex.len()) * 4
    }
}
