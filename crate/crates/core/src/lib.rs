// `!(x > 0.0)` is deliberate throughout: it rejects NaN along with the out-of-range values.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod checker;
pub mod error;
pub mod families;
pub mod numdiff;
mod quad;
pub mod series;
pub mod specfun;
pub mod theorem;

pub use checker::{GridSpec, Mode, SignTable, Spacing, Verdict};
pub use error::{Error, Result};
pub use families::{Analytic, BaseFunction, FamilySpec, Interval, MeasureRep, Target};
pub use series::PolySeries;
pub use theorem::{RegionKind, TheoremEvaluation, TheoremRegion};
