//! Non-commutative confusability graphs of quantum channels.
//!
//! The crate builds the operator space S = span{Eⱼ†Eₖ} of a channel, runs
//! the space algebra of non-commutative graphs (complements, products,
//! unions, induced subgraphs), and evaluates the quantum Lovász function
//! ϑ̃(S) through a pair of semidefinite programs solved by an in-crate
//! interior-point LMI solver. Classical graphs embed as the special case
//! S = span{|x⟩⟨x'| : x = x' or x ~ x'}.

pub mod catalog;
pub mod channel;
pub mod error;
pub mod graph;
pub mod independence;
pub mod io;
pub mod matrix;
pub mod par;
pub mod random;
pub mod sdp;
pub mod space;
pub mod suite;
pub mod theta;

pub use error::{Error, Result};
pub use matrix::{ComplexMatrix, RealMatrix};
pub use space::OperatorSpace;
