//! Plain bit vectors with rank/select and an Elias-Fano sparse set.

/// A bit vector with a rank directory over 512-bit superblocks.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BitVec {
    words: Vec<u64>,
    len: usize,
    // ones before each superblock of 8 words
    super_ranks: Vec<usize>,
}

const WORDS_PER_BLOCK: usize = 8;

impl BitVec {
    pub fn from_bits<I: IntoIterator<Item = bool>>(bits: I) -> Self {
        let mut words = Vec::new();
        let mut len = 0;
        for b in bits {
            if len % 64 == 0 {
                words.push(0);
            }
            if b {
                words[len / 64] |= 1 << (len % 64);
            }
            len += 1;
        }
        Self::from_words(words, len)
    }

    pub fn from_words(words: Vec<u64>, len: usize) -> Self {
        debug_assert!(words.len() * 64 >= len);
        let mut super_ranks = Vec::with_capacity(words.len() / WORDS_PER_BLOCK + 2);
        let mut acc = 0;
        for block in words.chunks(WORDS_PER_BLOCK) {
            super_ranks.push(acc);
            acc += block.iter().map(|w| w.count_ones() as usize).sum::<usize>();
        }
        super_ranks.push(acc);
        BitVec {
            words,
            len,
            super_ranks,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        debug_assert!(i < self.len);
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn count_ones(&self) -> usize {
        *self.super_ranks.last().unwrap()
    }

    /// Number of set bits in `[0, i)`.
    pub fn rank1(&self, i: usize) -> usize {
        debug_assert!(i <= self.len);
        let word = i / 64;
        let block = word / WORDS_PER_BLOCK;
        let mut r = self.super_ranks[block];
        for w in &self.words[block * WORDS_PER_BLOCK..word] {
            r += w.count_ones() as usize;
        }
        if !i.is_multiple_of(64) {
            r += (self.words[word] & ((1u64 << (i % 64)) - 1)).count_ones() as usize;
        }
        r
    }

    pub fn rank0(&self, i: usize) -> usize {
        i - self.rank1(i)
    }

    /// Position of the `k`-th set bit (0-based `k`).
    pub fn select1(&self, k: usize) -> Option<usize> {
        self.select_by(k, |w| w, |b| self.super_ranks[b])
    }

    /// Position of the `k`-th unset bit (0-based `k`).
    pub fn select0(&self, k: usize) -> Option<usize> {
        let pos = self.select_by(
            k,
            |w| !w,
            |b| b * WORDS_PER_BLOCK * 64 - self.super_ranks[b],
        )?;
        (pos < self.len).then_some(pos)
    }

    fn select_by(
        &self,
        k: usize,
        flip: impl Fn(u64) -> u64,
        before_block: impl Fn(usize) -> usize,
    ) -> Option<usize> {
        let blocks = self.super_ranks.len() - 1;
        if blocks == 0 {
            return None;
        }
        // last block whose prefix count is <= k
        let (mut lo, mut hi) = (0, blocks);
        while hi - lo > 1 {
            let mid = (lo + hi) / 2;
            if before_block(mid) <= k {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        let mut remaining = k - before_block(lo);
        let start = lo * WORDS_PER_BLOCK;
        let end = (start + WORDS_PER_BLOCK).min(self.words.len());
        for (wi, &w) in self.words[start..end].iter().enumerate() {
            let w = flip(w);
            let ones = w.count_ones() as usize;
            if remaining < ones {
                let mut w = w;
                for _ in 0..remaining {
                    w &= w - 1;
                }
                return Some((start + wi) * 64 + w.trailing_zeros() as usize);
            }
            remaining -= ones;
        }
        None
    }

    pub fn size_in_bytes(&self) -> usize {
        self.words.len() * 8 + self.super_ranks.len() * std::mem::size_of::<usize>()
    }
}

/// Elias-Fano encoding of a strictly increasing sequence over `[0, universe)`,
/// viewed as a sparse bit vector of length `universe`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EliasFano {
    high: BitVec,
    low: Vec<u64>,
    low_width: u32,
    len: usize,
    universe: u64,
}

impl EliasFano {
    /// `values` must be strictly increasing and below `universe`.
    pub fn new(values: &[u64], universe: u64) -> Self {
        debug_assert!(values.windows(2).all(|w| w[0] < w[1]));
        debug_assert!(values.last().is_none_or(|&v| v < universe));
        let len = values.len();
        let low_width = if universe <= len as u64 {
            0
        } else {
            63 - (universe / len.max(1) as u64).leading_zeros()
        };
        let high_len = len + (universe >> low_width) as usize + 1;
        let mut high_words = vec![0u64; high_len.div_ceil(64)];
        let mut low = vec![0u64; (len * low_width as usize).div_ceil(64)];
        for (i, &v) in values.iter().enumerate() {
            let h = (v >> low_width) as usize + i;
            high_words[h / 64] |= 1 << (h % 64);
            if low_width > 0 {
                write_bits(&mut low, i * low_width as usize, low_width, v);
            }
        }
        EliasFano {
            high: BitVec::from_words(high_words, high_len),
            low,
            low_width,
            len,
            universe,
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn universe(&self) -> u64 {
        self.universe
    }

    fn low_bits(&self, i: usize) -> u64 {
        if self.low_width == 0 {
            0
        } else {
            read_bits(&self.low, i * self.low_width as usize, self.low_width)
        }
    }

    /// The `k`-th smallest element (0-based).
    pub fn select1(&self, k: usize) -> Option<u64> {
        if k >= self.len {
            return None;
        }
        let h = self.high.select1(k)? - k;
        Some(((h as u64) << self.low_width) | self.low_bits(k))
    }

    /// Number of elements strictly smaller than `v`.
    pub fn rank1(&self, v: u64) -> usize {
        if v >= self.universe {
            return self.len;
        }
        let h = (v >> self.low_width) as usize;
        let lo = v & ((1u64 << self.low_width) - 1);
        // elements with high part < h lie before the h-th zero
        let (mut pos, mut rank) = match h {
            0 => (0, 0),
            _ => {
                let z = self
                    .high
                    .select0(h - 1)
                    .expect("high bits hold universe >> l zeros");
                (z + 1, z + 1 - h)
            }
        };
        while pos < self.high.len() && self.high.get(pos) && self.low_bits(rank) < lo {
            pos += 1;
            rank += 1;
        }
        rank
    }

    pub fn contains(&self, v: u64) -> bool {
        let r = self.rank1(v);
        self.select1(r) == Some(v)
    }

    pub fn size_in_bytes(&self) -> usize {
        self.high.size_in_bytes() + self.low.len() * 8
    }
}

fn write_bits(words: &mut [u64], at: usize, width: u32, v: u64) {
    let (w, off) = (at / 64, (at % 64) as u32);
    let v = v & mask(width);
    words[w] |= v << off;
    if off + width > 64 {
        words[w + 1] |= v >> (64 - off);
    }
}

fn read_bits(words: &[u64], at: usize, width: u32) -> u64 {
    let (w, off) = (at / 64, (at % 64) as u32);
    let mut v = words[w] >> off;
    if off + width > 64 {
        v |= words[w + 1] << (64 - off);
    }
    v & mask(width)
}

fn mask(width: u32) -> u64 {
    if width == 64 {
        u64::MAX
    } else {
        (1u64 << width) - 1
    }
}
