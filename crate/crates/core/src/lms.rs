//! Suffix typing, LMS factorization and λ-chunking.
//!
//! Positions are 1-based as in induced sorting: position `0` is the virtual
//! `#` and position `n + 1` the virtual `$`, with `# < $ < c` for every code.
//! Neither sentinel is stored.

use crate::error::{Error, Result};
use crate::ingest::Code;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SuffixType {
    L,
    S,
    /// An S suffix preceded by an L suffix (leftmost S).
    SStar,
}

impl SuffixType {
    pub fn is_s(self) -> bool {
        !matches!(self, SuffixType::L)
    }
}

/// Suffix types for the virtual positions `0..=n+1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TypeArray {
    types: Vec<SuffixType>,
}

impl TypeArray {
    /// Type of position `i` in `0..=n+1`.
    pub fn get(&self, i: usize) -> SuffixType {
        self.types[i]
    }

    pub fn as_slice(&self) -> &[SuffixType] {
        &self.types
    }

    /// Number of text characters `n`.
    pub fn text_len(&self) -> usize {
        self.types.len() - 2
    }

    /// S* positions in `1..=n` (the leading `#` and the trailing `$` excluded).
    pub fn interior_sstar(&self) -> impl Iterator<Item = usize> + '_ {
        let n = self.text_len();
        (1..=n).filter(move |&i| self.types[i] == SuffixType::SStar)
    }
}

/// Right-to-left type scan. Equal neighbours inherit the successor's type.
pub fn classify(text: &[Code]) -> TypeArray {
    let n = text.len();
    let mut types = vec![SuffixType::S; n + 2];
    for i in (1..=n).rev() {
        types[i] = if i == n || text[i - 1] > text[i] {
            SuffixType::L
        } else if text[i - 1] < text[i] {
            SuffixType::S
        } else {
            types[i + 1]
        };
    }
    for i in 1..=n + 1 {
        if types[i] == SuffixType::S && types[i - 1] == SuffixType::L {
            types[i] = SuffixType::SStar;
        }
    }
    types[0] = SuffixType::SStar;
    TypeArray { types }
}

/// The LMS factorization `T = P_1 ⋯ P_p`, stored as 0-based cut points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    bounds: Vec<usize>,
}

impl Factorization {
    /// Factor `k` spans `bounds()[k]..bounds()[k + 1]` in 0-based text indices.
    pub fn bounds(&self) -> &[usize] {
        &self.bounds
    }

    pub fn len(&self) -> usize {
        self.bounds.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn factors<'t>(&'t self, text: &'t [Code]) -> impl Iterator<Item = &'t [Code]> + 't {
        self.bounds.windows(2).map(move |w| &text[w[0]..w[1]])
    }

    /// 1-based S* positions at which the factors start (`0` for the first one).
    pub fn starts(&self) -> Vec<usize> {
        std::iter::once(0)
            .chain(self.bounds[1..self.bounds.len() - 1].iter().map(|&b| b + 1))
            .collect()
    }

    /// Chops every factor left-to-right into pieces of length `lambda`, the last one possibly shorter.
    pub fn chunk(&self, lambda: usize) -> Result<ChunkedFactorization> {
        if lambda == 0 {
            return Err(Error::InvalidParameter("lambda must be at least 1".into()));
        }
        let mut bounds = vec![0];
        let mut factor_end = Vec::new();
        for w in self.bounds.windows(2) {
            let (mut at, end) = (w[0], w[1]);
            while at < end {
                let next = (at + lambda).min(end);
                bounds.push(next);
                factor_end.push(next == end);
                at = next;
            }
        }
        Ok(ChunkedFactorization {
            lambda,
            bounds,
            factor_end,
        })
    }
}

/// One factor per consecutive S* pair; sentinels and the closing character are dropped.
pub fn factorize(text: &[Code], types: &TypeArray) -> Factorization {
    let n = text.len();
    debug_assert_eq!(types.text_len(), n);
    let mut bounds = vec![0];
    // position 1 can never be S* because position 0 is S, so no factor is empty
    bounds.extend(types.interior_sstar().map(|i| i - 1));
    bounds.push(n);
    bounds.dedup();
    Factorization { bounds }
}

/// The factorization with each factor split into chunks of length at most λ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChunkedFactorization {
    lambda: usize,
    bounds: Vec<usize>,
    factor_end: Vec<bool>,
}

impl ChunkedFactorization {
    pub fn lambda(&self) -> usize {
        self.lambda
    }

    pub fn len(&self) -> usize {
        self.factor_end.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factor_end.is_empty()
    }

    /// 0-based cut points; chunk `k` spans `bounds()[k]..bounds()[k + 1]`.
    pub fn bounds(&self) -> &[usize] {
        &self.bounds
    }

    /// Whether chunk `k` closes its LMS factor.
    pub fn ends_factor(&self, k: usize) -> bool {
        self.factor_end[k]
    }

    pub fn chunks<'t>(&'t self, text: &'t [Code]) -> impl Iterator<Item = &'t [Code]> + 't {
        self.bounds.windows(2).map(move |w| &text[w[0]..w[1]])
    }
}

/// Convenience: classify, factorize and chunk in one call.
pub fn chunked_factorization(text: &[Code], lambda: usize) -> Result<ChunkedFactorization> {
    factorize(text, &classify(text)).chunk(lambda)
}

#[cfg(test)]
mod tests {
    use super::SuffixType::{SStar as X, L, S};
    use super::*;
    use proptest::prelude::*;

    fn codes(s: &str) -> Vec<Code> {
        s.bytes().map(|b| b - b'a' + 1).collect()
    }

    fn factor_strings(s: &str) -> Vec<String> {
        let t = codes(s);
        let f = factorize(&t, &classify(&t));
        f.factors(&t)
            .map(|f| f.iter().map(|&c| (b'a' + c - 1) as char).collect())
            .collect()
    }

    #[test]
    fn classify_running_example() {
        let t = codes("bacabacaacbcbc");
        assert_eq!(
            classify(&t).as_slice(),
            &[X, L, X, L, X, L, X, L, X, S, L, X, L, X, L, X]
        );
    }

    #[test]
    fn classify_pattern_example() {
        let t = codes("cabaca");
        assert_eq!(classify(&t).as_slice(), &[X, L, X, L, X, L, L, X]);
    }

    #[test]
    fn classify_single_run() {
        assert_eq!(classify(&codes("aaaa")).as_slice(), &[X, L, L, L, L, X]);
    }

    #[test]
    fn factorize_examples() {
        assert_eq!(
            factor_strings("bacabacaacbcbc"),
            ["b", "ac", "ab", "ac", "aac", "bc", "bc"]
        );
        assert_eq!(factor_strings("cabaca"), ["c", "ab", "aca"]);
        assert_eq!(factor_strings("aaaa"), ["aaaa"]);
        let t = codes("bacabacaacbcbc");
        assert_eq!(
            factorize(&t, &classify(&t)).starts(),
            vec![0, 2, 4, 6, 8, 11, 13]
        );
    }

    #[test]
    fn chunking_examples() {
        let t = codes("bacabacaacbcbc");
        let f = factorize(&t, &classify(&t));
        let lens = |lambda: usize| -> Vec<usize> {
            let c = f.chunk(lambda).unwrap();
            c.chunks(&t).map(|c| c.len()).collect()
        };
        assert_eq!(lens(2), [1, 2, 2, 2, 2, 1, 2, 2]);
        assert_eq!(lens(1), vec![1; 14]);
        assert_eq!(lens(4), [1, 2, 2, 2, 3, 2, 2]);
        let c = f.chunk(2).unwrap();
        assert!(!c.ends_factor(4) && c.ends_factor(5));
        assert!(matches!(f.chunk(0), Err(Error::InvalidParameter(_))));
    }

    fn random_text() -> impl Strategy<Value = Vec<Code>> {
        (1u8..=4).prop_flat_map(|sigma| proptest::collection::vec(1..=sigma, 1..300))
    }

    proptest! {
        #[test]
        fn type_array_invariants(t in random_text()) {
            let ty = classify(&t);
            let n = t.len();
            prop_assert_eq!(ty.get(0), X);
            prop_assert_eq!(ty.get(n + 1), X);
            for i in 1..=n + 1 {
                if ty.get(i) == X {
                    prop_assert_eq!(ty.get(i - 1) == L, true);
                    prop_assert!(ty.get(i - 1) != X);
                }
            }
            prop_assert_eq!(classify(&t), ty);
        }

        #[test]
        fn factorization_invariants(t in random_text(), lambda in 1usize..6) {
            let ty = classify(&t);
            let f = factorize(&t, &ty);
            let joined: Vec<Code> = f.factors(&t).flatten().copied().collect();
            prop_assert_eq!(&joined, &t);
            prop_assert_eq!(f.len(), 1 + ty.interior_sstar().count());
            for (k, factor) in f.factors(&t).enumerate() {
                prop_assert!(k == 0 || factor.len() >= 2);
                prop_assert!(!factor.is_empty());
            }
            let c = f.chunk(lambda).unwrap();
            let joined: Vec<Code> = c.chunks(&t).flatten().copied().collect();
            prop_assert_eq!(&joined, &t);
            for (k, chunk) in c.chunks(&t).enumerate() {
                prop_assert!((1..=lambda).contains(&chunk.len()));
                if !c.ends_factor(k) {
                    prop_assert_eq!(chunk.len(), lambda);
                }
            }
        }

        // Equal windows agree on their S* placements except within the final run
        // and at the very first position, whose type depends on outside context.
        #[test]
        fn sstar_placement_is_local(t in proptest::collection::vec(1u8..=3, 2..60)) {
            let ty = classify(&t);
            let n = t.len();
            for len in 2..=n.min(12) {
                for i in 0..=n - len {
                    for j in i + 1..=n - len {
                        if t[i..i + len] != t[j..j + len] {
                            continue;
                        }
                        let w = &t[i..i + len];
                        let mut run_start = len - 1;
                        while run_start > 0 && w[run_start - 1] == w[len - 1] {
                            run_start -= 1;
                        }
                        for q in 1..run_start {
                            prop_assert_eq!(ty.get(i + 1 + q), ty.get(j + 1 + q));
                        }
                    }
                }
            }
        }
    }
}
