//! Single-hop fading laws.

pub mod akm;
pub mod extreme;
pub mod law;
pub mod poincare;

pub use akm::AlphaKappaMu;
pub use extreme::AlphaKappaMuExtreme;
pub use law::FadingLaw;
pub use poincare::PoincareSeries;
