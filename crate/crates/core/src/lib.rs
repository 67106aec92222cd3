pub mod accept;
pub mod algebra;
pub mod approx;
pub mod arseq;
pub mod corpus;
pub mod equiv;
pub mod error;
pub mod exactla;
pub mod homological;
pub mod io;
pub mod knit;
pub mod rep;
pub mod stable;

pub use error::{Error, Result};
pub use algebra::Algebra;
pub use approx::{ApproxVariant, Subcat};
pub use arseq::{ArOutcome, ArReport};
pub use exactla::{Fp, Matrix, Span};
pub use homological::{Ext1, Ses};
pub use rep::{seeded, Rep, RepMap, Rng, DEFAULT_SEED};
pub use stable::StableVariant;
