//! Byte input and the dense alphabet.
//!
//! Text characters are stored as codes `1..=sigma`. Code `0` never appears in
//! a [`Text`]: it stands for the virtual terminators and for padding in
//! fixed-width encodings.

use crate::error::{Error, Result};

/// A character code of the dense alphabet. Valid text codes are `1..=sigma`.
pub type Code = u8;

/// Order-preserving bijection between the bytes occurring in a text and `1..=sigma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseAlphabet {
    to_code: [Code; 256],
    to_byte: Vec<u8>,
}

impl DenseAlphabet {
    /// Builds the alphabet from the set of bytes occurring in `raw`.
    pub fn from_bytes(raw: &[u8]) -> Self {
        let mut seen = [false; 256];
        for &b in raw {
            seen[b as usize] = true;
        }
        let bytes: Vec<u8> = (0..=255u8).filter(|&b| seen[b as usize]).collect();
        Self::from_sorted_bytes(bytes)
    }

    /// Rebuilds an alphabet from its code-to-byte table (index 0 holds code 1).
    pub fn from_code_table(bytes: Vec<u8>) -> Result<Self> {
        if bytes.is_empty() || bytes.windows(2).any(|w| w[0] >= w[1]) || bytes[0] == 0 {
            return Err(Error::Format(
                "alphabet table must be non-empty, strictly increasing and free of 0x00".into(),
            ));
        }
        Ok(Self::from_sorted_bytes(bytes))
    }

    fn from_sorted_bytes(to_byte: Vec<u8>) -> Self {
        let mut to_code = [0; 256];
        for (i, &b) in to_byte.iter().enumerate() {
            to_code[b as usize] = (i + 1) as Code;
        }
        DenseAlphabet { to_code, to_byte }
    }

    /// Number of distinct characters.
    pub fn size(&self) -> usize {
        self.to_byte.len()
    }

    /// Code of `byte`, or `None` when the byte does not occur in the text.
    pub fn code(&self, byte: u8) -> Option<Code> {
        match self.to_code[byte as usize] {
            0 => None,
            c => Some(c),
        }
    }

    pub fn byte(&self, code: Code) -> u8 {
        self.to_byte[code as usize - 1]
    }

    /// The code-to-byte table, code 1 first.
    pub fn bytes(&self) -> &[u8] {
        &self.to_byte
    }

    /// Maps every byte of `pattern`; `None` when some byte is foreign to the alphabet.
    pub fn encode(&self, pattern: &[u8]) -> Option<Vec<Code>> {
        pattern.iter().map(|&b| self.code(b)).collect()
    }

    pub fn decode(&self, codes: &[Code]) -> Vec<u8> {
        codes.iter().map(|&c| self.byte(c)).collect()
    }
}

/// A non-empty string over the codes `1..=sigma`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Text {
    symbols: Vec<Code>,
}

impl Text {
    /// Wraps already-dense codes. Fails on empty input or on a zero code.
    pub fn from_codes(symbols: Vec<Code>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::EmptyText);
        }
        if let Some(pos) = symbols.iter().position(|&c| c == 0) {
            return Err(Error::InvalidByte(pos));
        }
        Ok(Text { symbols })
    }

    pub fn symbols(&self) -> &[Code] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

/// Remaps raw bytes onto the dense alphabet.
///
/// A single trailing `0x00` is stripped first; any other zero byte is rejected.
pub fn densify(raw: &[u8]) -> Result<(Text, DenseAlphabet)> {
    let raw = match raw.split_last() {
        Some((0, rest)) => rest,
        _ => raw,
    };
    if raw.is_empty() {
        return Err(Error::EmptyText);
    }
    if let Some(pos) = raw.iter().position(|&b| b == 0) {
        return Err(Error::InvalidByte(pos));
    }
    let alphabet = DenseAlphabet::from_bytes(raw);
    let symbols = raw.iter().map(|&b| alphabet.to_code[b as usize]).collect();
    Ok((Text { symbols }, alphabet))
}
