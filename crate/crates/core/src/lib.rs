//! Exact-arithmetic machinery for probabilistic sequence prediction and
//! algorithmic randomness over binary strings.

pub mod bits;
pub mod conditional;
pub mod constructions;
pub mod error;
pub mod predictor;
pub mod prefix;
pub mod process;
pub mod randomness;
pub mod ratio;

pub use bits::BitStr;
pub use error::{Error, Result};
pub use predictor::{Caps, Predictor, StagedPredictor};
pub use prefix::PrefixFreeSet;
pub use ratio::{Dyadic, Ratio};
