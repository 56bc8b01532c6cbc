//! Occurrence counts for patterns shorter than λ.
//!
//! A pointerless trie over every distinct text substring of length `< λ`.
//! Nodes are numbered in breadth-first order with siblings sorted by edge
//! code, so the children of a node occupy a contiguous id range.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::ingest::Code;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortPatternTrie {
    parent: Vec<u32>,
    edge: Vec<Code>,
    count: Vec<u32>,
    // child id range of each node
    children: Vec<(u32, u32)>,
}

impl ShortPatternTrie {
    /// Counts all substrings of `text` of length `1..=max_len`.
    pub fn build(text: &[Code], max_len: usize) -> Self {
        // (parent, code) -> node, node 0 is the root
        let mut next: HashMap<(u32, Code), u32> = HashMap::new();
        let mut counts: Vec<u32> = vec![text.len() as u32];
        let mut labels: Vec<(u32, Code)> = vec![(0, 0)];
        for start in 0..text.len() {
            let mut node = 0u32;
            for &c in &text[start..(start + max_len).min(text.len())] {
                node = *next.entry((node, c)).or_insert_with(|| {
                    counts.push(0);
                    labels.push((node, c));
                    counts.len() as u32 - 1
                });
                counts[node as usize] += 1;
            }
        }
        // breadth-first renumbering with siblings ordered by code
        let mut kids: Vec<Vec<(Code, u32)>> = vec![Vec::new(); counts.len()];
        for (id, &(p, c)) in labels.iter().enumerate().skip(1) {
            kids[p as usize].push((c, id as u32));
        }
        let mut order = vec![0u32];
        let mut head = 0;
        while head < order.len() {
            let v = order[head] as usize;
            kids[v].sort_unstable();
            order.extend(kids[v].iter().map(|&(_, k)| k));
            head += 1;
        }
        let mut new_id = vec![0u32; counts.len()];
        for (i, &old) in order.iter().enumerate() {
            new_id[old as usize] = i as u32;
        }
        let nodes: Vec<(u32, Code, u32)> = order
            .iter()
            .map(|&old| {
                let (p, c) = labels[old as usize];
                (new_id[p as usize], c, counts[old as usize])
            })
            .collect();
        Self::from_nodes(nodes).expect("breadth-first numbering is well-formed")
    }

    /// Rebuilds from `(parent, edge code, count)` triples in breadth-first order.
    pub fn from_nodes(nodes: Vec<(u32, Code, u32)>) -> Result<Self> {
        if nodes.is_empty() {
            return Err(Error::Format("trie needs a root node".into()));
        }
        let n = nodes.len();
        let mut children = vec![(0u32, 0u32); n];
        for (id, w) in nodes.windows(2).enumerate() {
            let (prev, cur) = (w[0], w[1]);
            let id = id as u32 + 1;
            let ordered = if id == 1 {
                true
            } else {
                prev.0 < cur.0 || (prev.0 == cur.0 && prev.1 < cur.1)
            };
            if cur.0 >= id || !ordered || cur.1 == 0 {
                return Err(Error::Format(
                    "trie nodes are not in breadth-first order".into(),
                ));
            }
        }
        let mut id = 1usize;
        for (v, slot) in children.iter_mut().enumerate() {
            let start = id;
            while id < n && nodes[id].0 as usize == v {
                id += 1;
            }
            *slot = (start as u32, id as u32);
        }
        Ok(ShortPatternTrie {
            parent: nodes.iter().map(|t| t.0).collect(),
            edge: nodes.iter().map(|t| t.1).collect(),
            count: nodes.iter().map(|t| t.2).collect(),
            children,
        })
    }

    pub fn node_count(&self) -> usize {
        self.parent.len()
    }

    /// `(parent, edge code, count)` per node in id order.
    pub fn nodes(&self) -> impl Iterator<Item = (u32, Code, u32)> + '_ {
        (0..self.parent.len()).map(move |v| (self.parent[v], self.edge[v], self.count[v]))
    }

    fn child(&self, v: usize, c: Code) -> Option<usize> {
        let (lo, hi) = self.children[v];
        let kids = &self.edge[lo as usize..hi as usize];
        kids.binary_search(&c).ok().map(|k| lo as usize + k)
    }

    /// Occurrences of `pattern`; 0 when the walk leaves the trie.
    pub fn count(&self, pattern: &[Code]) -> usize {
        let mut v = 0;
        for &c in pattern {
            match self.child(v, c) {
                Some(u) => v = u,
                None => return 0,
            }
        }
        self.count[v] as usize
    }

    pub fn size_in_bytes(&self) -> usize {
        self.parent.len() * (4 + 1 + 4 + 8)
    }
}
