pub mod cache;
pub mod context;
pub mod cores;
pub mod dual;
pub mod error;
pub mod kschur;
pub mod ktableaux;
pub mod matrix;
pub mod partition;
pub mod quantum;
pub mod symfunc;

pub use context::{Context, Scope};
pub use error::{Error, Result};
pub use partition::{Cell, Partition, SkewShape};
pub use symfunc::{Basis, SymPoly};
