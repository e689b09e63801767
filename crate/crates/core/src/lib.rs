//! Braid words in Artin and Birman–Ko–Lee generators, braided Seifert
//! surfaces and their moves, stars on surfaces, braided plumbing, and a
//! pipeline turning homogeneous link diagrams into homogeneous band words.
//! Alexander polynomials computed two independent ways act as oracles.

pub mod cli;
pub mod diagram;
pub mod error;
pub mod graph;
pub mod oracle;
pub mod pipeline;
pub mod plumbing;
pub mod poly;
pub mod stars;
pub mod surface;
pub mod word;

pub use error::Error;
pub use poly::Laurent;
pub use word::{ArtinWord, Band, BklWord, Permutation, Sign, Word};
