//! Run-length FM-index over an integer alphabet.
//!
//! The BWT is kept as its run heads plus a bit vector marking run starts; for
//! every symbol the lengths of its runs are prefix-summed in run order. A rank
//! query finds the run covering the position with one rank on the run-start
//! bits and one binary search in the symbol's run list.

use std::sync::atomic::{AtomicU64, Ordering};

use crate::succinct::BitVec;

/// 1-based inclusive interval `[lo..hi]` of rows; empty when `lo > hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BwtRange {
    pub lo: usize,
    pub hi: usize,
}

impl BwtRange {
    pub const EMPTY: BwtRange = BwtRange { lo: 1, hi: 0 };

    pub fn new(lo: usize, hi: usize) -> Self {
        if lo > hi {
            Self::EMPTY
        } else {
            BwtRange { lo, hi }
        }
    }

    pub fn is_empty(&self) -> bool {
        self.lo > self.hi
    }

    pub fn len(&self) -> usize {
        if self.is_empty() {
            0
        } else {
            self.hi - self.lo + 1
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
struct SymbolRuns {
    // indices of the runs headed by this symbol
    runs: Vec<u32>,
    // occurrences before each of those runs, plus the total at the end
    before: Vec<usize>,
}

/// Counters of the primitive operations; relaxed atomics, exact when queries run on one thread.
#[derive(Debug, Default)]
pub struct OpCounters {
    rank: AtomicU64,
    steps: AtomicU64,
}

impl Clone for OpCounters {
    fn clone(&self) -> Self {
        OpCounters {
            rank: AtomicU64::new(self.rank.load(Ordering::Relaxed)),
            steps: AtomicU64::new(self.steps.load(Ordering::Relaxed)),
        }
    }
}

#[derive(Clone, Debug)]
pub struct RlfmIndex {
    heads: Vec<u32>,
    run_starts: BitVec,
    per_symbol: Vec<SymbolRuns>,
    c: Vec<usize>,
    total: usize,
    counters: OpCounters,
}

impl RlfmIndex {
    pub fn from_bwt(bwt: &[u32]) -> Self {
        let mut runs: Vec<(u32, usize)> = Vec::new();
        for &x in bwt {
            match runs.last_mut() {
                Some((h, len)) if *h == x => *len += 1,
                _ => runs.push((x, 1)),
            }
        }
        Self::from_runs(&runs)
    }

    /// Builds from `(symbol, length)` runs. Adjacent equal heads are merged.
    pub fn from_runs(runs: &[(u32, usize)]) -> Self {
        let mut merged: Vec<(u32, usize)> = Vec::with_capacity(runs.len());
        for &(h, len) in runs.iter().filter(|r| r.1 > 0) {
            match merged.last_mut() {
                Some((last, l)) if *last == h => *l += len,
                _ => merged.push((h, len)),
            }
        }
        let total: usize = merged.iter().map(|r| r.1).sum();
        let sigma = merged
            .iter()
            .map(|r| r.0)
            .max()
            .map_or(0, |m| m as usize + 1);
        let mut per_symbol = vec![SymbolRuns::default(); sigma];
        let mut words = vec![0u64; total.div_ceil(64)];
        let mut at = 0;
        let mut counts = vec![0usize; sigma + 1];
        for (k, &(h, len)) in merged.iter().enumerate() {
            words[at / 64] |= 1 << (at % 64);
            let sr = &mut per_symbol[h as usize];
            sr.runs.push(k as u32);
            sr.before.push(counts[h as usize]);
            counts[h as usize] += len;
            at += len;
        }
        for (sr, &n) in per_symbol.iter_mut().zip(&counts) {
            sr.before.push(n);
        }
        let mut c = vec![0usize; sigma + 1];
        for s in 0..sigma {
            c[s + 1] = c[s] + counts[s];
        }
        RlfmIndex {
            heads: merged.iter().map(|r| r.0).collect(),
            run_starts: BitVec::from_words(words, total),
            per_symbol,
            c,
            total,
            counters: OpCounters::default(),
        }
    }

    /// Number of rows, `n + 1`.
    pub fn len(&self) -> usize {
        self.total
    }

    pub fn is_empty(&self) -> bool {
        self.total == 0
    }

    /// Number of maximal runs `r`.
    pub fn run_count(&self) -> usize {
        self.heads.len()
    }

    /// One past the largest symbol.
    pub fn alphabet_size(&self) -> usize {
        self.per_symbol.len()
    }

    /// `C[c]`: rows holding a symbol smaller than `c`.
    pub fn c(&self, c: u32) -> usize {
        self.c[(c as usize).min(self.per_symbol.len())]
    }

    /// Total occurrences of `c`.
    pub fn occurrences(&self, c: u32) -> usize {
        self.per_symbol
            .get(c as usize)
            .map_or(0, |s| *s.before.last().unwrap())
    }

    /// The runs as `(symbol, length)` pairs in BWT order.
    pub fn runs(&self) -> impl Iterator<Item = (u32, usize)> + '_ {
        (0..self.heads.len()).map(move |k| (self.heads[k], self.run_len(k)))
    }

    fn run_start(&self, k: usize) -> usize {
        self.run_starts.select1(k).expect("run exists")
    }

    fn run_len(&self, k: usize) -> usize {
        let end = if k + 1 < self.heads.len() {
            self.run_start(k + 1)
        } else {
            self.total
        };
        end - self.run_start(k)
    }

    // run covering 0-based position `p`
    fn run_of(&self, p: usize) -> usize {
        self.run_starts.rank1(p + 1) - 1
    }

    /// Symbol at 1-based row `i`.
    pub fn access(&self, i: usize) -> u32 {
        self.heads[self.run_of(i - 1)]
    }

    /// Occurrences of `c` in rows `1..=i`.
    pub fn rank(&self, c: u32, i: usize) -> usize {
        self.counters.rank.fetch_add(1, Ordering::Relaxed);
        self.rank_uncounted(c, i)
    }

    fn rank_uncounted(&self, c: u32, i: usize) -> usize {
        debug_assert!(i <= self.total);
        let Some(sr) = self.per_symbol.get(c as usize) else {
            return 0;
        };
        if i == 0 || sr.runs.is_empty() {
            return 0;
        }
        let k = self.run_of(i - 1);
        let j = sr.runs.partition_point(|&r| (r as usize) < k);
        let mut r = sr.before[j];
        if self.heads[k] == c {
            r += i - self.run_start(k);
        }
        r
    }

    /// Rows `[C[c]+1 .. C[c+1]]` of suffixes starting with `c`.
    pub fn initial_range(&self, c: u32) -> BwtRange {
        self.symbol_range(c, c)
    }

    /// Rows of suffixes starting with any symbol in `first..=last`.
    pub fn symbol_range(&self, first: u32, last: u32) -> BwtRange {
        if first as usize >= self.per_symbol.len() || first > last {
            return BwtRange::EMPTY;
        }
        BwtRange::new(self.c(first) + 1, self.c(last.saturating_add(1)))
    }

    /// Extends the match one symbol to the left.
    pub fn backward_step(&self, range: BwtRange, c: u32) -> BwtRange {
        self.counters.steps.fetch_add(1, Ordering::Relaxed);
        if range.is_empty() || c as usize >= self.per_symbol.len() {
            return BwtRange::EMPTY;
        }
        let base = self.c[c as usize];
        BwtRange::new(
            base + self.rank(c, range.lo - 1) + 1,
            base + self.rank(c, range.hi),
        )
    }

    /// Rows in `range` whose symbol is in `symbols`.
    pub fn count_symbols_in_range(&self, range: BwtRange, symbols: &[u32]) -> usize {
        if range.is_empty() {
            return 0;
        }
        symbols
            .iter()
            .map(|&s| self.rank(s, range.hi) - self.rank(s, range.lo - 1))
            .sum()
    }

    /// Rows in `range` whose symbol satisfies `keep`, by walking the runs that overlap it.
    pub fn count_in_range_where(
        &self,
        range: BwtRange,
        mut keep: impl FnMut(u32) -> bool,
    ) -> usize {
        if range.is_empty() {
            return 0;
        }
        let mut k = self.run_of(range.lo - 1);
        let mut at = range.lo - 1;
        let mut total = 0;
        while at < range.hi {
            let end = if k + 1 < self.heads.len() {
                self.run_start(k + 1)
            } else {
                self.total
            };
            let upto = end.min(range.hi);
            if keep(self.heads[k]) {
                total += upto - at;
            }
            at = upto;
            k += 1;
        }
        total
    }

    /// Number of runs overlapping `range`.
    pub fn runs_in_range(&self, range: BwtRange) -> usize {
        if range.is_empty() {
            return 0;
        }
        self.run_of(range.hi - 1) - self.run_of(range.lo - 1) + 1
    }

    pub fn rank_calls(&self) -> u64 {
        self.counters.rank.load(Ordering::Relaxed)
    }

    pub fn backward_steps(&self) -> u64 {
        self.counters.steps.load(Ordering::Relaxed)
    }

    pub fn reset_counters(&self) {
        self.counters.rank.store(0, Ordering::Relaxed);
        self.counters.steps.store(0, Ordering::Relaxed);
    }

    /// Counts `pattern` by plain backward search.
    pub fn count(&self, pattern: &[u32]) -> usize {
        let Some((&last, rest)) = pattern.split_last() else {
            return 0;
        };
        let mut range = self.initial_range(last);
        for &c in rest.iter().rev() {
            if range.is_empty() {
                break;
            }
            range = self.backward_step(range, c);
        }
        range.len()
    }

    pub fn size_in_bytes(&self) -> usize {
        self.heads.len() * 4
            + self.run_starts.size_in_bytes()
            + self
                .per_symbol
                .iter()
                .map(|s| s.runs.len() * 4 + s.before.len() * 8)
                .sum::<usize>()
            + self.c.len() * 8
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bwt;
    use proptest::prelude::*;

    fn level1() -> RlfmIndex {
        // ECCBD$EA with A..E = 1..5
        RlfmIndex::from_bwt(&[5, 3, 3, 2, 4, 0, 5, 1])
    }

    fn level0() -> RlfmIndex {
        let s: Vec<u8> = b"bacabacaacbcbc".iter().map(|b| b - b'a' + 1).collect();
        RlfmIndex::from_bwt(&bwt::bwt(&s))
    }

    #[test]
    fn run_counts() {
        assert_eq!(level1().run_count(), 7);
        assert_eq!(level0().run_count(), 9);
        assert_eq!(RlfmIndex::from_bwt(&[1, 1, 1, 0]).run_count(), 2);
    }

    #[test]
    fn rank_examples() {
        let l1 = level1();
        assert_eq!(l1.rank(3, 5), 2);
        assert_eq!(l1.rank(3, 0), 0);
        assert_eq!(l1.rank(5, 8), 2);
        assert_eq!(level0().rank(3, 6), 3);
        assert_eq!(l1.rank(9, 8), 0);
    }

    #[test]
    fn backward_search_examples() {
        let l1 = level1();
        let abc = l1.symbol_range(1, 3);
        assert_eq!(abc, BwtRange::new(2, 5));
        let after_c = l1.backward_step(abc, 3);
        assert_eq!(after_c, BwtRange::new(4, 5));
        assert_eq!(l1.backward_step(after_c, 2), BwtRange::new(3, 3));
        assert!(l1.backward_step(BwtRange::EMPTY, 2).is_empty());

        let l0 = level0();
        let a = l0.initial_range(1);
        assert_eq!(a, BwtRange::new(2, 6));
        assert_eq!(l0.backward_step(a, 3), BwtRange::new(12, 13));
        assert!(l0.initial_range(7).is_empty());
    }

    #[test]
    fn symbol_counting() {
        let l1 = level1();
        assert_eq!(
            l1.count_symbols_in_range(BwtRange::new(3, 3), &[1, 3, 5]),
            1
        );
        assert_eq!(
            l1.count_symbols_in_range(BwtRange::new(1, 8), &[0, 1, 2, 3, 4, 5]),
            8
        );
        assert_eq!(l1.count_symbols_in_range(BwtRange::new(1, 8), &[]), 0);
        assert_eq!(
            l1.count_in_range_where(BwtRange::new(2, 7), |s| s == 3 || s == 5),
            3
        );
    }

    #[test]
    fn counters_track_and_reset() {
        let l1 = level1();
        l1.reset_counters();
        l1.backward_step(BwtRange::new(2, 5), 3);
        assert_eq!(l1.rank_calls(), 2);
        assert_eq!(l1.backward_steps(), 1);
        l1.reset_counters();
        assert_eq!(l1.rank_calls(), 0);
    }

    fn naive_range(s: &[u32], pattern: &[u32]) -> BwtRange {
        let sa = bwt::suffix_array(s);
        let mut t = s.to_vec();
        t.push(0);
        let rows: Vec<usize> = sa
            .iter()
            .enumerate()
            .filter(|(_, &p)| t[p - 1..].starts_with(pattern))
            .map(|(r, _)| r + 1)
            .collect();
        match (rows.first(), rows.last()) {
            (Some(&lo), Some(&hi)) => BwtRange::new(lo, hi),
            _ => BwtRange::EMPTY,
        }
    }

    proptest! {
        #[test]
        fn structure_invariants(s in (1u32..=5).prop_flat_map(|k| proptest::collection::vec(1..=k, 1..500))) {
            let b = bwt::bwt(&s);
            let idx = RlfmIndex::from_bwt(&b);
            let runs: Vec<(u32, usize)> = idx.runs().collect();
            prop_assert!(runs.windows(2).all(|w| w[0].0 != w[1].0));
            prop_assert_eq!(runs.iter().map(|r| r.1).sum::<usize>(), b.len());
            for c in 0..idx.alphabet_size() as u32 {
                prop_assert!(idx.c(c) <= idx.c(c + 1));
                let mut naive = 0;
                for i in 0..=b.len() {
                    prop_assert_eq!(idx.rank(c, i), naive);
                    if i < b.len() && b[i] == c { naive += 1; }
                }
                prop_assert_eq!(idx.rank(c, b.len()), idx.occurrences(c));
            }
            prop_assert_eq!(idx.c(idx.alphabet_size() as u32), b.len());
            for (i, &x) in b.iter().enumerate() {
                prop_assert_eq!(idx.access(i + 1), x);
            }
        }

        #[test]
        fn backward_step_matches_naive(
            s in (1u32..=4).prop_flat_map(|k| proptest::collection::vec(1..=k, 1..200)),
            pattern in proptest::collection::vec(1u32..=4, 1..4),
        ) {
            let idx = RlfmIndex::from_bwt(&bwt::bwt(&s));
            for c in 1..=5u32 {
                let mut p = vec![c];
                p.extend_from_slice(&pattern);
                let from = naive_range(&s, &pattern);
                prop_assert_eq!(idx.backward_step(from, c), naive_range(&s, &p));
            }
            let occ = s.windows(pattern.len()).filter(|w| *w == &pattern[..]).count();
            prop_assert_eq!(idx.count(&pattern), occ);
        }
    }
}
