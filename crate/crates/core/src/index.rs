//! The complete count index: alphabet, grammar, level-1 RLFM and short-pattern trie.

use crate::bwt::bwt;
use crate::error::{Error, Result};
use crate::grammar::{Grammar, Level1String};
use crate::ingest::{densify, Code, DenseAlphabet, Text};
use crate::query::{self, BranchPlan, BranchTrace, ShortPatternTrie};
use crate::rlfm::RlfmIndex;

#[derive(Clone, Debug)]
pub struct GrammarIndex {
    alphabet: DenseAlphabet,
    grammar: Grammar,
    level1: RlfmIndex,
    short: ShortPatternTrie,
    baseline: Option<RlfmIndex>,
}

/// Size and run statistics of a built index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexStats {
    pub lambda: usize,
    pub n: usize,
    pub sigma: usize,
    pub sigma1: usize,
    pub level1_len: usize,
    pub r0: Option<usize>,
    pub r1: usize,
    pub bytes: usize,
}

impl GrammarIndex {
    /// Builds from raw bytes; see [`densify`] for the accepted input.
    pub fn build(raw: &[u8], lambda: usize, with_baseline: bool) -> Result<Self> {
        let (text, alphabet) = densify(raw)?;
        Self::from_text(&text, alphabet, lambda, with_baseline)
    }

    /// Builds from dense codes; every code must be at most `alphabet.size()`.
    pub fn from_text(
        text: &Text,
        alphabet: DenseAlphabet,
        lambda: usize,
        with_baseline: bool,
    ) -> Result<Self> {
        let sigma = alphabet.size();
        if let Some(pos) = text.symbols().iter().position(|&c| c as usize > sigma) {
            return Err(Error::InvalidByte(pos));
        }
        let (grammar, Level1String(l1)) = Grammar::build(text, sigma, lambda)?;
        let level1 = RlfmIndex::from_bwt(&bwt(&l1));
        let short = ShortPatternTrie::build(text.symbols(), lambda - 1);
        let baseline = with_baseline.then(|| RlfmIndex::from_bwt(&bwt(text.symbols())));
        Ok(GrammarIndex {
            alphabet,
            grammar,
            level1,
            short,
            baseline,
        })
    }

    pub(crate) fn from_parts(
        alphabet: DenseAlphabet,
        grammar: Grammar,
        level1: RlfmIndex,
        short: ShortPatternTrie,
        baseline: Option<RlfmIndex>,
    ) -> Self {
        GrammarIndex {
            alphabet,
            grammar,
            level1,
            short,
            baseline,
        }
    }

    pub fn alphabet(&self) -> &DenseAlphabet {
        &self.alphabet
    }

    pub fn grammar(&self) -> &Grammar {
        &self.grammar
    }

    pub fn level1(&self) -> &RlfmIndex {
        &self.level1
    }

    pub fn short_trie(&self) -> &ShortPatternTrie {
        &self.short
    }

    pub fn baseline(&self) -> Option<&RlfmIndex> {
        self.baseline.as_ref()
    }

    pub fn lambda(&self) -> usize {
        self.grammar.lambda()
    }

    /// Text length, read off the trie root.
    pub fn text_len(&self) -> usize {
        self.short.count(&[])
    }

    /// Occurrences of a byte pattern; foreign bytes give 0.
    pub fn count(&self, pattern: &[u8]) -> Result<usize> {
        if pattern.is_empty() {
            return Err(Error::InvalidPattern);
        }
        Ok(self
            .alphabet
            .encode(pattern)
            .map_or(0, |p| self.count_codes(&p)))
    }

    /// Occurrences of a non-empty code string.
    pub fn count_codes(&self, p: &[Code]) -> usize {
        query::count(&self.grammar, &self.level1, &self.short, p)
    }

    pub fn execute_codes(&self, p: &[Code]) -> query::Execution {
        query::execute(&self.grammar, &self.level1, &self.short, p)
    }

    /// Plan and per-branch trace; `None` for patterns answered by the trie.
    pub fn trace_codes(&self, p: &[Code]) -> Option<(BranchPlan, Vec<BranchTrace>)> {
        if p.is_empty() || p.len() < self.lambda() {
            return None;
        }
        let plan = BranchPlan::new(p, &self.grammar);
        let mut trace = Vec::new();
        query::plan::execute(&plan, &self.grammar, &self.level1, Some(&mut trace));
        Some((plan, trace))
    }

    /// Counts with plain backward search on the level-0 index, when present.
    pub fn count_baseline(&self, pattern: &[u8]) -> Result<Option<usize>> {
        if pattern.is_empty() {
            return Err(Error::InvalidPattern);
        }
        let Some(b) = &self.baseline else {
            return Ok(None);
        };
        Ok(Some(self.alphabet.encode(pattern).map_or(0, |p| {
            let p: Vec<u32> = p.into_iter().map(u32::from).collect();
            b.count(&p)
        })))
    }

    pub fn stats(&self) -> IndexStats {
        IndexStats {
            lambda: self.lambda(),
            n: self.text_len(),
            sigma: self.alphabet.size(),
            sigma1: self.grammar.len(),
            level1_len: self.level1.len() - 1,
            r0: self.baseline.as_ref().map(RlfmIndex::run_count),
            r1: self.level1.run_count(),
            bytes: self.size_in_bytes(),
        }
    }

    /// In-memory footprint of the query structures, baseline excluded.
    pub fn size_in_bytes(&self) -> usize {
        self.alphabet.size()
            + self.grammar.size_in_bytes()
            + self.level1.size_in_bytes()
            + self.short.size_in_bytes()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn running_example_counts() {
        let idx = GrammarIndex::build(b"bacabacaacbcbc", 4, true).unwrap();
        for (p, want) in [
            ("cabaca", 1),
            ("ca", 2),
            ("a", 5),
            ("zz", 0),
            ("bcbc", 1),
            ("bacabacaacbcbc", 1),
        ] {
            assert_eq!(idx.count(p.as_bytes()).unwrap(), want, "{p}");
            assert_eq!(idx.count_baseline(p.as_bytes()).unwrap(), Some(want), "{p}");
        }
        assert!(matches!(idx.count(b""), Err(Error::InvalidPattern)));
    }

    #[test]
    fn running_example_stats() {
        let s = GrammarIndex::build(b"bacabacaacbcbc", 4, true)
            .unwrap()
            .stats();
        assert_eq!((s.n, s.sigma, s.sigma1, s.level1_len), (14, 3, 5, 7));
        assert_eq!((s.r0, s.r1), (Some(9), 7));
        let s = GrammarIndex::build(b"bacabacaacbcbc", 1, true)
            .unwrap()
            .stats();
        assert_eq!((s.sigma1, s.r1, s.r0), (3, 9, Some(9)));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            GrammarIndex::build(b"", 4, false),
            Err(Error::EmptyText)
        ));
        assert!(matches!(
            GrammarIndex::build(b"abc", 0, false),
            Err(Error::InvalidParameter(_))
        ));
    }
}
