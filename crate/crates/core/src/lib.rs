pub mod algebra;
pub mod atiyah;
pub mod conf;
pub mod conventions;
pub mod error;
pub mod flag;
pub mod ktheory;
pub mod matching;
pub mod multipoly;
pub mod series;
pub mod symgroup;

pub use error::{Error, Result};
