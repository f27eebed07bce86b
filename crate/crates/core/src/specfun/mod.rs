//! Special functions: Bessel I, Kummer M, Marcum Q, Nuttall Q, erfc, Meijer G.

pub mod bessel;
pub mod gamma;
pub mod kummer;
pub mod marcum;
pub mod meijer;
pub mod nuttall;

pub use bessel::{bessel_i, ln_bessel_i, ln_bessel_i_reduced};
pub use gamma::{erfc, gamma, gamma_pq, ln_gamma, rgamma};
pub use kummer::{kummer_m, kummer_m_regularized, ln_kummer_m, ln_kummer_m_regularized, SignedLn};
pub use marcum::{marcum_p, marcum_pair, marcum_q};
pub use meijer::{meijer_g, MeijerGSpec};
pub use nuttall::nuttall_q;
