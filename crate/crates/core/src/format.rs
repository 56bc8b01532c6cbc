//! Binary index files.
//!
//! Layout, all integers little-endian:
//!
//! ```text
//! "GFI1"  version:u8  lambda:u8
//! sigma:u16  byte[sigma]                        code-to-byte table
//! rules:u32  { len:u8  code[len] }*             right-hand sides in lex order
//! runs:u32   { symbol:u32  length:u32 }*        level-1 BWT
//! nodes:u32  { parent:u32  edge:u32  count:u32 }* short-pattern trie
//! baseline:u8  [ runs:u32 { symbol:u32 length:u32 }* ]   level-0 BWT
//! ```

use std::io::Cursor;
use std::io::Read;

use crate::error::{Error, Result};
use crate::grammar::Grammar;
use crate::index::GrammarIndex;
use crate::ingest::{Code, DenseAlphabet};
use crate::query::ShortPatternTrie;
use crate::rlfm::RlfmIndex;

pub const MAGIC: &[u8; 4] = b"GFI1";
pub const VERSION: u8 = 1;

/// Byte length of each section in file order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionSizes {
    pub header: usize,
    pub alphabet: usize,
    pub grammar: usize,
    pub level1: usize,
    pub trie: usize,
    pub baseline: usize,
}

impl SectionSizes {
    pub fn total(&self) -> usize {
        self.header + self.alphabet + self.grammar + self.level1 + self.trie + self.baseline
    }
}

fn put_u32(out: &mut Vec<u8>, v: usize) -> Result<()> {
    let v = u32::try_from(v).map_err(|_| Error::Format(format!("{v} does not fit in 32 bits")))?;
    out.extend_from_slice(&v.to_le_bytes());
    Ok(())
}

fn put_runs(out: &mut Vec<u8>, idx: &RlfmIndex) -> Result<()> {
    put_u32(out, idx.run_count())?;
    for (s, len) in idx.runs() {
        put_u32(out, s as usize)?;
        put_u32(out, len)?;
    }
    Ok(())
}

fn sections(idx: &GrammarIndex) -> Result<[Vec<u8>; 6]> {
    let lambda =
        u8::try_from(idx.lambda()).map_err(|_| Error::Format("lambda exceeds 255".into()))?;
    let mut header = MAGIC.to_vec();
    header.extend([VERSION, lambda]);

    let bytes = idx.alphabet().bytes();
    let mut alphabet = (bytes.len() as u16).to_le_bytes().to_vec();
    alphabet.extend_from_slice(bytes);

    let mut grammar = Vec::new();
    put_u32(&mut grammar, idx.grammar().len())?;
    for r in idx.grammar().rules() {
        grammar.push(r.len() as u8);
        grammar.extend_from_slice(r);
    }

    let mut level1 = Vec::new();
    put_runs(&mut level1, idx.level1())?;

    let mut trie = Vec::new();
    put_u32(&mut trie, idx.short_trie().node_count())?;
    for (p, e, c) in idx.short_trie().nodes() {
        put_u32(&mut trie, p as usize)?;
        put_u32(&mut trie, e as usize)?;
        put_u32(&mut trie, c as usize)?;
    }

    let mut baseline = Vec::new();
    match idx.baseline() {
        Some(b) => {
            baseline.push(1);
            put_runs(&mut baseline, b)?;
        }
        None => baseline.push(0),
    }
    Ok([header, alphabet, grammar, level1, trie, baseline])
}

pub fn serialize(idx: &GrammarIndex) -> Result<Vec<u8>> {
    Ok(sections(idx)?.concat())
}

pub fn section_sizes(idx: &GrammarIndex) -> Result<SectionSizes> {
    let s = sections(idx)?;
    Ok(SectionSizes {
        header: s[0].len(),
        alphabet: s[1].len(),
        grammar: s[2].len(),
        level1: s[3].len(),
        trie: s[4].len(),
        baseline: s[5].len(),
    })
}

struct Reader<'a>(Cursor<&'a [u8]>);

impl Reader<'_> {
    fn bytes(&mut self, n: usize) -> Result<Vec<u8>> {
        let mut buf = vec![0; n];
        self.0
            .read_exact(&mut buf)
            .map_err(|_| Error::Format("unexpected end of file".into()))?;
        Ok(buf)
    }

    fn u8(&mut self) -> Result<u8> {
        Ok(self.bytes(1)?[0])
    }

    fn u16(&mut self) -> Result<u16> {
        let b = self.bytes(2)?;
        Ok(u16::from_le_bytes([b[0], b[1]]))
    }

    fn u32(&mut self) -> Result<u32> {
        let b = self.bytes(4)?;
        Ok(u32::from_le_bytes([b[0], b[1], b[2], b[3]]))
    }

    // reject counts that cannot fit in the remaining input
    fn count(&mut self, unit: usize) -> Result<usize> {
        let n = self.u32()? as usize;
        let left = self.0.get_ref().len() - self.0.position() as usize;
        if n.saturating_mul(unit) > left {
            return Err(Error::Format("section length exceeds file size".into()));
        }
        Ok(n)
    }

    fn runs(&mut self, alphabet: usize) -> Result<RlfmIndex> {
        let n = self.count(8)?;
        let mut runs = Vec::with_capacity(n);
        let mut zeros = 0;
        for _ in 0..n {
            let (s, len) = (self.u32()?, self.u32()? as usize);
            if s as usize > alphabet || len == 0 {
                return Err(Error::Format("BWT run out of range".into()));
            }
            if s == 0 {
                zeros += len;
            }
            runs.push((s, len));
        }
        if zeros != 1 || runs.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::Format(
                "BWT runs are not maximal or lack one terminator".into(),
            ));
        }
        Ok(RlfmIndex::from_runs(&runs))
    }
}

pub fn deserialize(data: &[u8]) -> Result<GrammarIndex> {
    let mut r = Reader(Cursor::new(data));
    if r.bytes(4)? != MAGIC {
        return Err(Error::Format("bad magic".into()));
    }
    let version = r.u8()?;
    if version != VERSION {
        return Err(Error::Format(format!("unsupported version {version}")));
    }
    let lambda = r.u8()? as usize;

    let sigma = r.u16()? as usize;
    let alphabet = DenseAlphabet::from_code_table(r.bytes(sigma)?)?;

    let rules = r.count(2)?;
    let mut rhs = Vec::with_capacity(rules);
    for _ in 0..rules {
        let len = r.u8()? as usize;
        rhs.push(r.bytes(len)?);
    }
    let grammar = Grammar::from_rhs(sigma, lambda, rhs)?;
    let level1 = r.runs(grammar.len())?;

    let nodes = r.count(12)?;
    let mut triples = Vec::with_capacity(nodes);
    for _ in 0..nodes {
        let (p, e, c) = (r.u32()?, r.u32()?, r.u32()?);
        let e = Code::try_from(e)
            .ok()
            .filter(|&e| e as usize <= sigma)
            .ok_or_else(|| Error::Format("trie edge out of range".into()))?;
        triples.push((p, e, c));
    }
    let short = ShortPatternTrie::from_nodes(triples)?;

    let baseline = match r.u8()? {
        0 => None,
        1 => Some(r.runs(sigma)?),
        f => return Err(Error::Format(format!("bad baseline flag {f}"))),
    };
    if (r.0.position() as usize) != data.len() {
        return Err(Error::Format("trailing bytes".into()));
    }
    if let Some(b) = &baseline {
        if b.len() != short.count(&[]) + 1 {
            return Err(Error::Format(
                "baseline length disagrees with the trie".into(),
            ));
        }
    }
    Ok(GrammarIndex::from_parts(
        alphabet, grammar, level1, short, baseline,
    ))
}
