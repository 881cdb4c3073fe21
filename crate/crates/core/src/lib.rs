//! Exact computation of finite-dimensional quotients of Alexander modules of
//! abelian covers, their deck-group actions, and the line-arrangement Milnor
//! fiber dimension pipeline.

pub mod arrangement;
pub mod chain;
pub mod deck;
pub mod error;
pub mod format;
pub mod fox;
pub mod laurent;
pub mod linalg;
pub mod poly;
pub mod syzygy;
pub mod truncmod;

pub use arrangement::{LineArrangement, MilnorReport};
pub use chain::{FreeChainComplex, HomologyQuotient, Provenance};
pub use deck::{DeckDecomposition, EigenDecomposition};
pub use error::{Error, Result};
pub use fox::Presentation;
pub use laurent::{LaurentMatrix, LaurentPoly, QuotientAlgebra, SubgroupSpec};
pub use linalg::{QMatrix, Rat};
pub use poly::UPoly;
pub use syzygy::{CancelToken, FpModule};
pub use truncmod::{TruncModule, Variant};
