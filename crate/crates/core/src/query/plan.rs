//! Branch enumeration for patterns of length at least λ.
//!
//! An occurrence of `P` at text position `i` is determined on level 1 by its
//! *cut set*: the pattern indices `k ∈ 1..m` at which a text chunk starts.
//! Given the cuts, `P` reads as a suffix of one chunk (the head), whole
//! chunks, and a prefix of one chunk (the tail). Distinct cut sets match
//! disjoint sets of occurrences, so summing over any family of distinct cut
//! sets that contains every realizable one gives the exact count.
//!
//! LMS factor starts inside an occurrence are the pattern's own interior S*
//! positions, plus possibly `r`, the start of the final character run, when
//! `P[r-1] > P[r]` (the text decides whether the run is S or L). Chunk cuts
//! then follow from the factor starts except in front of the first one,
//! where the alignment of the enclosing text factor is unknown.

use std::collections::HashSet;
use std::ops::Range;

use crate::grammar::{Grammar, SymbolId};
use crate::ingest::Code;
use crate::lms::classify;
use crate::rlfm::{BwtRange, RlfmIndex};

/// Cuts inside one part of the pattern and the ids of the whole chunks they delimit.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub cuts: Vec<usize>,
    /// Left to right; `None` when some chunk is not a rule, which prunes the segment.
    pub exact: Option<Vec<SymbolId>>,
}

/// Cuts right of the core plus the trailing prefix query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LastBranch {
    pub segment: Segment,
    pub tail: Range<usize>,
}

/// Cuts left of the core plus the leading suffix query.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstBranch {
    pub segment: Segment,
    pub head: Range<usize>,
}

/// A shared core with every combination of one last and one first branch.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub core: Segment,
    pub last: Vec<LastBranch>,
    pub first: Vec<FirstBranch>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchPlan {
    pub pattern: Vec<Code>,
    pub chains: Vec<Chain>,
}

/// Pattern indices of the interior S* positions: factor starts every occurrence shares.
pub fn definite_cuts(p: &[Code]) -> Vec<usize> {
    classify(p).interior_sstar().map(|q| q - 1).collect()
}

/// Start index of the final character run.
pub fn final_run_start(p: &[Code]) -> usize {
    let last = *p.last().expect("non-empty pattern");
    p.len() - p.iter().rev().take_while(|&&c| c == last).count()
}

/// `r` when the final run may start a text factor, i.e. `P[r-1] > P[r]`.
pub fn run_cut(p: &[Code]) -> Option<usize> {
    let r = final_run_start(p);
    (r >= 1 && p[r - 1] > p[r]).then_some(r)
}

/// The pattern split at its definite S* positions and at a possible run cut.
pub fn pattern_factors(p: &[Code]) -> Vec<Range<usize>> {
    let mut at: Vec<usize> = vec![0];
    at.extend(definite_cuts(p));
    at.extend(run_cut(p));
    at.push(p.len());
    at.windows(2).map(|w| w[0]..w[1]).collect()
}

/// `Σ ⌈|P_x| / λ⌉` over the factors strictly between the first and last definite cut.
pub fn core_chunk_count(p: &[Code], lambda: usize) -> usize {
    definite_cuts(p)
        .windows(2)
        .map(|w| (w[1] - w[0]).div_ceil(lambda))
        .sum()
}

// cuts at `from`, `from + λ`, ... strictly below `to`
fn stride(from: usize, to: usize, lambda: usize) -> impl Iterator<Item = usize> {
    (from..to).step_by(lambda)
}

fn chunk_ids(g: &Grammar, p: &[Code], points: &[usize]) -> Option<Vec<SymbolId>> {
    points
        .windows(2)
        .map(|w| g.lookup(&p[w[0]..w[1]]))
        .collect()
}

// the head-side variants in front of the first factor start `d`
fn first_variants(d: usize, lambda: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for f in 1..=lambda.min(d.saturating_sub(1)) {
        let mut cuts: Vec<usize> = (0..)
            .map(|j| d as isize - f as isize - (j * lambda) as isize)
            .take_while(|&k| k > 0)
            .map(|k| k as usize)
            .collect();
        cuts.reverse();
        out.push(cuts);
    }
    if d <= lambda {
        out.push(Vec::new());
    }
    out
}

fn chain(
    g: &Grammar,
    p: &[Code],
    core: Vec<usize>,
    last: Vec<Vec<usize>>,
    first: Vec<Vec<usize>>,
) -> Chain {
    let m = p.len();
    let (lo, hi) = match (core.first(), core.last()) {
        (Some(&lo), Some(&hi)) => (lo, hi),
        // no cuts at all: the pattern is a whole chunk
        _ => (0, 0),
    };
    let last = last
        .into_iter()
        .map(|cuts| {
            let mut points = vec![hi];
            points.extend(&cuts);
            let end = *points.last().unwrap();
            LastBranch {
                segment: Segment {
                    exact: chunk_ids(g, p, &points),
                    cuts,
                },
                tail: end..m,
            }
        })
        .collect();
    let first = first
        .into_iter()
        .map(|cuts| {
            let mut points = cuts.clone();
            points.push(lo);
            FirstBranch {
                segment: Segment {
                    exact: chunk_ids(g, p, &points),
                    cuts,
                },
                head: 0..points[0],
            }
        })
        .collect();
    Chain {
        core: Segment {
            exact: chunk_ids(g, p, &core),
            cuts: core,
        },
        last,
        first,
    }
}

impl BranchPlan {
    /// Enumerates every cut set an occurrence of `p` can have. Requires `|p| >= λ`.
    pub fn new(p: &[Code], g: &Grammar) -> Self {
        let lambda = g.lambda();
        let m = p.len();
        debug_assert!(m >= lambda && m > 0);
        let d = definite_cuts(p);
        let run = run_cut(p);
        let mut chains = Vec::new();
        if let (Some(&d1), Some(&dp)) = (d.first(), d.last()) {
            let mut core = Vec::new();
            for w in d.windows(2) {
                core.extend(stride(w[0], w[1], lambda));
            }
            core.push(dp);
            let mut last: Vec<Vec<usize>> = vec![stride(dp + lambda, m, lambda).collect()];
            if let Some(r) = run {
                if (r - dp) % lambda != 0 {
                    let mut cuts: Vec<usize> = stride(dp + lambda, r, lambda).collect();
                    cuts.extend(stride(r, m, lambda));
                    last.push(cuts);
                }
            }
            chains.push(chain(g, p, core, last, first_variants(d1, lambda)));
        } else {
            // one factor: every offset of the pattern start inside its chunk
            let mut seen = HashSet::new();
            for o in 0..lambda {
                let cuts: Vec<usize> = stride(lambda - o, m, lambda).collect();
                if cuts.is_empty() && m != lambda {
                    continue;
                }
                seen.insert(cuts.clone());
                chains.push(chain(g, p, cuts, vec![Vec::new()], vec![Vec::new()]));
            }
            if let Some(r) = run {
                let rest: Vec<usize> = stride(r + lambda, m, lambda).collect();
                let first: Vec<Vec<usize>> = first_variants(r, lambda)
                    .into_iter()
                    .filter(|f| {
                        let mut all = f.clone();
                        all.push(r);
                        all.extend(&rest);
                        !seen.contains(&all)
                    })
                    .collect();
                if !first.is_empty() {
                    chains.push(chain(g, p, vec![r], vec![rest], first));
                }
            }
        }
        BranchPlan {
            pattern: p.to_vec(),
            chains,
        }
    }

    /// The full cut set of every branch, in execution order.
    pub fn alignments(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        for c in &self.chains {
            for l in &c.last {
                for f in &c.first {
                    let mut cuts = f.segment.cuts.clone();
                    cuts.extend(&c.core.cuts);
                    cuts.extend(&l.segment.cuts);
                    out.push(cuts);
                }
            }
        }
        out
    }

    pub fn core(&self) -> Option<&Chain> {
        match self.chains.as_slice() {
            [c] => Some(c),
            _ => None,
        }
    }
}

/// What one branch contributed, with the intervals it passed through.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchTrace {
    pub cuts: Vec<usize>,
    /// Initial interval, then the interval after each backward step.
    pub ranges: Vec<BwtRange>,
    pub count: usize,
}

/// Per-query operation counts.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Execution {
    pub count: usize,
    /// Backward steps spent on the core, once per executed last branch.
    pub core_steps: Vec<u64>,
}

fn head_count(g: &Grammar, idx: &RlfmIndex, range: BwtRange, head: &[Code]) -> usize {
    if head.is_empty() {
        return range.len();
    }
    if range.is_empty() {
        return 0;
    }
    let Some(colex) = g.suffix_colex_range(head) else {
        return 0;
    };
    let width = (colex.end() - colex.start() + 1) as usize;
    if width > idx.runs_in_range(range) {
        idx.count_in_range_where(range, |s| s != 0 && colex.contains(&g.colex_rank(s)))
    } else {
        idx.count_symbols_in_range(range, &g.suffix_symbols(head))
    }
}

fn steps(
    idx: &RlfmIndex,
    mut range: BwtRange,
    ids: &[SymbolId],
    trace: &mut Option<Vec<BwtRange>>,
) -> BwtRange {
    for &id in ids.iter().rev() {
        range = idx.backward_step(range, id);
        if let Some(t) = trace {
            t.push(range);
        }
    }
    range
}

/// Runs the plan; `trace` collects one entry per branch when given.
pub fn execute(
    plan: &BranchPlan,
    g: &Grammar,
    idx: &RlfmIndex,
    mut trace: Option<&mut Vec<BranchTrace>>,
) -> Execution {
    let p = &plan.pattern;
    let mut ex = Execution::default();
    for chain in &plan.chains {
        let Some(core) = &chain.core.exact else {
            continue;
        };
        for last in &chain.last {
            let Some(last_ids) = &last.segment.exact else {
                continue;
            };
            let Some(ids) = g.prefix_range(&p[last.tail.clone()]) else {
                continue;
            };
            let mut rt = trace.is_some().then(Vec::new);
            let mut range = idx.symbol_range(*ids.start(), *ids.end());
            if let Some(t) = &mut rt {
                t.push(range);
            }
            range = steps(idx, range, last_ids, &mut rt);
            let before = idx.backward_steps();
            range = steps(idx, range, core, &mut rt);
            ex.core_steps.push(idx.backward_steps() - before);
            for first in &chain.first {
                let Some(first_ids) = &first.segment.exact else {
                    continue;
                };
                let mut ft = rt.clone();
                let r = steps(idx, range, first_ids, &mut ft);
                let n = head_count(g, idx, r, &p[first.head.clone()]);
                ex.count += n;
                if let (Some(out), Some(ranges)) = (trace.as_deref_mut(), ft) {
                    let mut cuts = first.segment.cuts.clone();
                    cuts.extend(&chain.core.cuts);
                    cuts.extend(&last.segment.cuts);
                    out.push(BranchTrace {
                        cuts,
                        ranges,
                        count: n,
                    });
                }
            }
        }
    }
    ex
}
