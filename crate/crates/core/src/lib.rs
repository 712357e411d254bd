//! Exact computations for the K-theory of lamplighter groups `F wr Z` and
//! the integer cohomology of the full shift over `F̂`.

mod bigint_json;
pub mod colimit;
pub mod error;
pub mod fullshift;
pub mod grouprep;
pub mod kgroups;
pub mod linalg;
pub mod sampling;
pub mod selfcheck;
pub mod word;
pub mod zchain;

pub use error::{Error, Result};
pub use grouprep::GroupRepData;
pub use word::{CanonicalWord, Word};
pub use zchain::ZChain;
