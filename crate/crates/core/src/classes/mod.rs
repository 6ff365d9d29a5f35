//! Characteristic classes: graded polynomials, characteristic power series,
//! multiplicative sequences and Chern characters of bundle expressions.

pub mod bundle;
pub mod charseries;
pub mod graded;
pub mod mseq;
pub mod partition;
pub mod xseries;

pub use bundle::{
    adams_character, bundle_chern_character, BundleError, BundleExpression, ChernContext,
};
pub use charseries::{
    ahat_series, l_series, signature_constant_series, signature_kernel, taylor_x_over_f,
    CharSeriesError, CharacteristicPowerSeries, QSeries,
};
pub use graded::{ClassPoly, ClassVar, Monomial, MonomialParseError};
pub use mseq::{
    chern_power_sums, elementary_from_power_sums, multiplicative_class, multiplicative_sequence,
    pair, power_sums, squared_power_sums, MissingMonomial,
};
pub use partition::{Partition, PartitionParseError};
pub use xseries::XSeries;
