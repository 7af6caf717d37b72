//! Exact surgery calculus for annulus-twist knot families.
//!
//! The crate is organised around four layers:
//!
//! * [`diagram`]: oriented link diagrams in PD form, linking numbers, writhe,
//!   full-twist insertion and DT export.
//! * [`surgery`]: rational slopes, linking-table presentations, Smith normal
//!   form, first homology and Kirby moves (Rolfsen twist, meridional deletion,
//!   annulus twist, cable reduction, scripted move replay).
//! * [`family`]: the four-component link `L = k ∪ l1 ∪ l2 ∪ l3`, the knots
//!   `k_n^m = L(*, -1/m, 1/m, -1/n)` and same-surgery evidence reports.
//! * [`invariants`]: Wirtinger presentations, Fox calculus, Alexander
//!   polynomials and determinants.
//!
//! The [`cli`] module drives everything from the `surgeon` binary and owns the
//! content-addressed result cache.

pub mod cli;
pub mod diagram;
pub mod family;
pub mod invariants;
pub mod surgery;

pub use diagram::{LinkDiagram, TwistRegion};
pub use surgery::{AbelianGroup, IntMatrix, Slope, SurgeryPresentation};

/// Version string recorded in cache entries and JSON reports.
pub const TOOL_VERSION: &str = concat!("surgeon ", env!("CARGO_PKG_VERSION"));
