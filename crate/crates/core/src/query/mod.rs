//! Count queries on the level-1 index.

pub mod plan;
pub mod short;

pub use plan::{BranchPlan, BranchTrace, Execution};
pub use short::ShortPatternTrie;

use crate::grammar::Grammar;
use crate::ingest::Code;
use crate::rlfm::RlfmIndex;

/// Occurrences of a non-empty code string. Patterns shorter than λ go to the trie.
pub fn count(g: &Grammar, level1: &RlfmIndex, short: &ShortPatternTrie, p: &[Code]) -> usize {
    execute(g, level1, short, p).count
}

pub fn execute(g: &Grammar, level1: &RlfmIndex, short: &ShortPatternTrie, p: &[Code]) -> Execution {
    debug_assert!(!p.is_empty());
    if p.len() < g.lambda() {
        return Execution {
            count: short.count(p),
            core_steps: Vec::new(),
        };
    }
    plan::execute(&BranchPlan::new(p, g), g, level1, None)
}
