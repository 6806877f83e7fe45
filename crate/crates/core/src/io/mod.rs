//! File formats: fault-tree input, JSON results and CSV curves.

pub mod curve;
pub mod ftfile;
pub mod result;

pub use curve::{curve_csv, curve_points, Interpolation};
pub use ftfile::{parse_ft, write_ft, FtFileError, FtModel};
pub use result::{ResultFile, ResultFileError};
