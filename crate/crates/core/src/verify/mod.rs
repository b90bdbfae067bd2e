//! Brute-force oracles: word enumeration, cross-machine agreement and
//! shattering of point sets in the probability simplex.

pub mod agreement;
pub mod shatter;
pub mod simplex;
pub mod words;

pub use agreement::{check_agreement, check_agreement_on, AgreementReport};
pub use shatter::{halfspace_shatter, support_shatter, ShatterInstance};
pub use words::{enumerate_words, for_each_value, values_for};
