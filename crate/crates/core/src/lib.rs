// SPDX-License-Identifier: Apache-2.0

//! Wigner-Yanase skew information for finite-dimensional states, together
//! with lower bounds on sums of skew information over several observables
//! or several quantum channels.
//!
//! ```
//! use skewinfo::{catalog, observable_bounds, Tolerances};
//!
//! let tol = Tolerances::default();
//! let rho = catalog::bloch_qubit(catalog::BlochVector::new(0.5, 0.0, 0.5), &tol).unwrap();
//! let report = observable_bounds::report(&rho, &catalog::pauli_observables(), &tol).unwrap();
//! assert!(report.bounds.lb1 <= report.sum_skew + tol.eq_tol);
//! ```

pub mod catalog;
pub mod channel_bounds;
pub mod error;
pub mod figures;
pub mod linalg;
pub mod observable_bounds;
pub mod skew;
pub mod verify;

pub use channel_bounds::{ChannelBoundReport, Permutation, SearchMode, PERM_CAP};
pub use error::{Error, Result};
pub use linalg::{ComplexMatrix, HermitianEig, Tolerances, C64};
pub use observable_bounds::ObservableBoundReport;
pub use skew::{
    skew_channel, skew_observable, skew_operator, DensityState, KrausChannel, Observable,
};
