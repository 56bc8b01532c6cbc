//! XBWT of the trie of reversed right-hand sides.
//!
//! The trie holds `rev(X)·$` for every rule `X`. Each internal node is
//! identified by its upward path `Π`, which is a suffix of some rule
//! followed by the root. Nodes are sorted by `Π` and contribute one row per
//! child: `L` holds the child label (`$` as 0), `Last` marks a node's final
//! row. Rows of `$` children, read in order, list the rules lexicographically.

use std::ops::RangeInclusive;

use crate::grammar::{Grammar, SymbolId};
use crate::ingest::Code;
use crate::succinct::BitVec;

#[derive(Clone, Debug)]
pub struct XbwtTrie {
    l: Vec<u32>,
    last: BitVec,
    // nodes whose incoming label is smaller than c; index 0 is the root's empty label
    c: Vec<usize>,
    // 0-based rows holding each symbol, for rank
    occ: Vec<Vec<u32>>,
}

impl XbwtTrie {
    pub fn build(g: &Grammar) -> Self {
        Self::from_rules(g.rules(), g.sigma())
    }

    /// `rules` need not be sorted; codes must lie in `1..=sigma`.
    pub fn from_rules(rules: &[Vec<Code>], sigma: usize) -> Self {
        let mut sorted: Vec<&[Code]> = rules.iter().map(Vec::as_slice).collect();
        sorted.sort_unstable();
        sorted.dedup();
        let mut nodes: Vec<&[Code]> = sorted
            .iter()
            .flat_map(|x| (0..=x.len()).map(move |d| &x[x.len() - d..]))
            .collect();
        nodes.sort_unstable();
        nodes.dedup();
        let mut l = Vec::new();
        let mut last = Vec::new();
        for s in &nodes {
            let mut kids: Vec<u32> = sorted
                .iter()
                .filter(|x| x.ends_with(s))
                .map(|x| match x.len() - s.len() {
                    0 => 0,
                    k => x[k - 1] as u32,
                })
                .collect();
            kids.sort_unstable();
            kids.dedup();
            last.extend((0..kids.len()).map(|i| i + 1 == kids.len()));
            l.extend(kids);
        }
        let mut c = vec![0usize; sigma + 2];
        for s in &nodes {
            let label = s.first().map_or(0, |&x| x as usize);
            c[label + 1] += 1;
        }
        for i in 1..c.len() {
            c[i] += c[i - 1];
        }
        let mut occ = vec![Vec::new(); sigma + 1];
        for (row, &x) in l.iter().enumerate() {
            occ[x as usize].push(row as u32);
        }
        XbwtTrie {
            l,
            last: BitVec::from_bits(last),
            c,
            occ,
        }
    }

    /// Child labels per row; `0` is `$`.
    pub fn l(&self) -> &[u32] {
        &self.l
    }

    pub fn last(&self) -> &BitVec {
        &self.last
    }

    pub fn rows(&self) -> usize {
        self.l.len()
    }

    /// Internal nodes, the root included.
    pub fn node_count(&self) -> usize {
        self.last.count_ones()
    }

    // occurrences of x in rows [0, row)
    fn rank(&self, x: u32, row: usize) -> usize {
        self.occ
            .get(x as usize)
            .map_or(0, |o| o.partition_point(|&r| (r as usize) < row))
    }

    // 0-based half-open rows of 1-based nodes lo..=hi
    fn node_rows(&self, lo: usize, hi: usize) -> (usize, usize) {
        let start = match lo {
            1 => 0,
            _ => self.last.select1(lo - 2).unwrap() + 1,
        };
        (start, self.last.select1(hi - 1).unwrap() + 1)
    }

    /// Lex ids of the rules having `q` as a prefix, by backward search on `$q`.
    pub fn prefix_range(&self, q: &[Code]) -> Option<RangeInclusive<SymbolId>> {
        let (&first, rest) = q.split_last()?;
        let first = first as usize;
        if first + 1 >= self.c.len() {
            return None;
        }
        // nodes whose upward path starts with the current suffix of q
        let (mut lo, mut hi) = (self.c[first] + 1, self.c[first + 1]);
        for &x in rest.iter().rev() {
            if lo > hi || x as usize + 1 >= self.c.len() {
                return None;
            }
            let (a, b) = self.node_rows(lo, hi);
            let base = self.c[x as usize];
            lo = base + self.rank(x as u32, a) + 1;
            hi = base + self.rank(x as u32, b);
        }
        if lo > hi {
            return None;
        }
        let (a, b) = self.node_rows(lo, hi);
        let (ids_lo, ids_hi) = (self.rank(0, a) + 1, self.rank(0, b));
        (ids_lo <= ids_hi).then_some(ids_lo as SymbolId..=ids_hi as SymbolId)
    }

    /// Lex ids in colex order, from a depth-first walk with children in label order.
    pub fn leaf_order(&self) -> Vec<SymbolId> {
        let mut out = Vec::new();
        if self.l.is_empty() {
            return out;
        }
        let mut stack = vec![1usize];
        while let Some(v) = stack.pop() {
            let (a, b) = self.node_rows(v, v);
            for row in a..b {
                if self.l[row] == 0 {
                    out.push(self.rank(0, row) as SymbolId + 1);
                }
            }
            // push in reverse so the smallest label is visited first
            for row in (a..b).rev() {
                let x = self.l[row];
                if x != 0 {
                    stack.push(self.c[x as usize] + self.rank(x, row) + 1);
                }
            }
        }
        out
    }

    pub fn size_in_bytes(&self) -> usize {
        self.l.len() * 4 + self.last.size_in_bytes() + self.c.len() * 8 + self.l.len() * 4
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::Text;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn codes(s: &str) -> Vec<Code> {
        s.bytes().map(|b| b - b'a' + 1).collect()
    }

    fn running() -> (Grammar, XbwtTrie) {
        let t = Text::from_codes(codes("bacabacaacbcbc")).unwrap();
        let (g, _) = Grammar::build(&t, 3, 4).unwrap();
        let x = XbwtTrie::build(&g);
        (g, x)
    }

    #[test]
    fn running_example_arrays() {
        let (_, x) = running();
        assert_eq!(x.l(), &[2, 3, 0, 0, 0, 1, 0, 1, 0, 1, 2]);
        let last: Vec<u8> = (0..x.rows()).map(|i| x.last().get(i) as u8).collect();
        assert_eq!(last, [0, 1, 1, 1, 0, 1, 0, 1, 1, 0, 1]);
        assert_eq!(x.node_count(), 7);
    }

    #[test]
    fn running_prefix_queries() {
        let (_, x) = running();
        assert_eq!(x.prefix_range(&codes("a")), Some(1..=3));
        assert_eq!(x.prefix_range(&codes("aa")), Some(1..=1));
        assert_eq!(x.prefix_range(&codes("b")), Some(4..=5));
        assert_eq!(x.prefix_range(&codes("bc")), Some(5..=5));
        assert_eq!(x.prefix_range(&codes("ca")), None);
        assert_eq!(x.prefix_range(&[4]), None);
        assert_eq!(x.prefix_range(&[]), None);
    }

    #[test]
    fn running_leaf_order() {
        let (g, x) = running();
        // D, B, C, A, E
        assert_eq!(x.leaf_order(), [4, 2, 3, 1, 5]);
        assert_eq!(x.leaf_order(), g.colex_ranks());
    }

    #[test]
    fn single_rule() {
        let x = XbwtTrie::from_rules(&[vec![1]], 1);
        assert_eq!(x.l(), &[1, 0]);
        assert!(x.last().get(0) && x.last().get(1));
        assert_eq!(x.leaf_order(), [1]);
        assert_eq!(x.prefix_range(&[1]), Some(1..=1));
    }

    fn small_grammar() -> impl Strategy<Value = (usize, usize, Vec<Vec<Code>>)> {
        (1usize..=3, 1usize..=3).prop_flat_map(|(sigma, lambda)| {
            let word = proptest::collection::vec(1..=sigma as Code, 1..=lambda);
            proptest::collection::vec(word, 1..12).prop_map(move |ws| {
                let set: BTreeSet<Vec<Code>> = ws.into_iter().collect();
                (sigma, lambda, set.into_iter().collect())
            })
        })
    }

    fn all_words(sigma: usize, max: usize) -> Vec<Vec<Code>> {
        let mut out: Vec<Vec<Code>> = vec![vec![]];
        let mut frontier = out.clone();
        for _ in 0..max {
            frontier = frontier
                .iter()
                .flat_map(|w| {
                    (1..=sigma as Code).map(move |c| {
                        let mut w = w.clone();
                        w.push(c);
                        w
                    })
                })
                .collect();
            out.extend(frontier.iter().cloned());
        }
        out
    }

    proptest! {
        #[test]
        fn agrees_with_grammar_dictionary((sigma, lambda, rules) in small_grammar()) {
            let g = Grammar::from_rhs(sigma, lambda, rules.clone()).unwrap();
            let x = XbwtTrie::build(&g);
            let rows: usize = {
                let mut nodes = BTreeSet::new();
                for r in &rules {
                    for d in 0..=r.len() { nodes.insert(r[r.len() - d..].to_vec()); }
                }
                // every node has as many rows as children; every non-root node is somebody's child
                nodes.len() - 1 + rules.len()
            };
            prop_assert_eq!(x.rows(), rows);
            prop_assert_eq!(x.l().iter().filter(|&&c| c == 0).count(), rules.len());
            for q in all_words(sigma, lambda).into_iter().skip(1) {
                prop_assert_eq!(x.prefix_range(&q), g.prefix_range(&q));
            }
            let mut colex: Vec<SymbolId> = (1..=rules.len() as SymbolId).collect();
            colex.sort_by(|&a, &b| {
                let ra: Vec<Code> = rules[a as usize - 1].iter().rev().copied().collect();
                let rb: Vec<Code> = rules[b as usize - 1].iter().rev().copied().collect();
                ra.cmp(&rb)
            });
            prop_assert_eq!(x.leaf_order(), colex);
        }
    }
}
