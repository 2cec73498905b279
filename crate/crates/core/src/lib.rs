pub mod novikov;

pub use novikov::{Coefficient, Exponent, NovikovError, NovikovSeries, QSeries, Valuation, ZSeries};
pub mod polytopes;
pub mod strings;
pub mod conductors;
pub mod maslov;
pub mod ainfty;
pub mod morse;
