pub mod error;
pub mod terms;
pub mod trs;
pub mod automata;
pub mod recognizers;
pub mod saturation;
pub mod cbn_nf;
pub mod cbn_rs;
pub mod oracle;

pub use error::{Error, Result};
