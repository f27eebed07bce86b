//! Performance metrics of a hop chain: amount of fading, outage, BER and
//! the four adaptive-transmission capacities.

pub mod ber;
pub mod capacity;
pub mod fading;
pub mod modulation;

pub use ber::{
    ber, ber_asymptotic, ber_coherent, ber_coherent_cdf_route, ber_noncoherent, ber_noncoherent_cdf_route,
    DEFAULT_SERIES_ORDER,
};
pub use capacity::{
    capacity, capacity_all, capacity_cifr, capacity_opra, capacity_opra_pdf_route, capacity_ora,
    capacity_ora_pdf_route, capacity_tifr, cifr_inverse_moment, cifr_inverse_moment_meijer, opra_cutoff, opra_residual,
    tifr_integral, tifr_integral_nuttall, CapacityResult, CapacityScheme,
};
pub use fading::{amount_of_fading, amount_of_fading_from_moments, outage_probability};
pub use modulation::Modulation;

use crate::numerics::QuadSpec;

/// Quadrature settings used by every metric.
pub fn metric_spec() -> QuadSpec {
    QuadSpec {
        rel_tol: 1e-11,
        abs_tol: 1e-15,
        max_subdivisions: 4000,
    }
}
