//! Andrews–Curtis trivialization of balanced presentations: free group
//! words, move tables, certificate replay and rewriting, Whitehead descent,
//! a genetic search and an exhaustive meet-in-the-middle oracle.

pub mod certify;
pub mod freegroup;
pub mod ga;
pub mod moves;
pub mod oracle;
pub mod presentation;
pub mod tools;
pub mod whitehead;

pub use certify::{verify, Certificate, Terminal, VerificationReport};
pub use freegroup::{parse_word, Direction, Letter, Word};
pub use moves::{Move, MoveTable};
pub use presentation::{parse_presentation, CanonicalKey, Presentation, RelatorTuple};
