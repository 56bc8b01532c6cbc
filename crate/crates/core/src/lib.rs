//! Substring counting on a run-length FM-index over a chunked GCIS grammar.
//!
//! The text is cut into LMS factors, each factor into chunks of at most λ
//! characters, and every distinct chunk becomes a non-terminal. Counting
//! runs backward search over the BWT of the resulting level-1 string; the
//! partial chunks at the two ends of a pattern are resolved with prefix and
//! suffix range queries on the dictionary.
//!
//! ```
//! use gcisfm::GrammarIndex;
//!
//! let idx = GrammarIndex::build(b"bacabacaacbcbc", 4, false).unwrap();
//! assert_eq!(idx.count(b"cabaca").unwrap(), 1);
//! assert_eq!(idx.count(b"a").unwrap(), 5);
//! ```

pub mod bwt;
pub mod error;
pub mod format;
pub mod grammar;
pub mod index;
pub mod ingest;
pub mod lms;
pub mod oracle;
pub mod query;
pub mod rlfm;
pub mod succinct;
pub mod xbwt;

pub use error::{Error, Result};
pub use grammar::{Grammar, Level1String, SymbolId};
pub use index::{GrammarIndex, IndexStats};
pub use ingest::{densify, Code, DenseAlphabet, Text};
pub use rlfm::{BwtRange, RlfmIndex};
pub use xbwt::XbwtTrie;
