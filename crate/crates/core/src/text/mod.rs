mod parse;
mod report;

pub use parse::*;
pub use report::*;
