//! Exact verification of q-series identities and overpartition theorems by
//! truncated multivariate power series arithmetic.

pub mod borel;
pub mod catalog;
pub mod identities;
pub mod lpi;
pub mod multisum;
pub mod partitions;
pub mod products;
pub mod series;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error(transparent)]
    Series(#[from] series::SeriesError),
    #[error(transparent)]
    MultiSum(#[from] multisum::MultiSumError),
    #[error(transparent)]
    Lpi(#[from] lpi::LpiError),
    #[error(transparent)]
    Partition(#[from] partitions::PartitionError),
    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),
    #[error("unknown series `{0}`")]
    UnknownSeries(String),
    #[error("order {order} exceeds the limit {max} for `{id}`")]
    OrderTooLarge { id: String, order: u32, max: u32 },
}

pub use identities::{verify, verify_all, IdentityReport, VerifyOptions, Witness};
pub use series::{Monomial, Series, VarSet};
