//! Modulation schemes and their conditional-BER constants.
//!
//! Coherent schemes use P_b(γ) = (φ/2) erfc(ρ √(γ/2)); non-coherent ones use
//! P_b(γ) = φ e^{−ργ}.

use crate::error::{Error, Result};
use std::fmt;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Modulation {
    BfskCoherent,
    Bpsk,
    Qpsk,
    Qam4,
    Mpam(u32),
    BfskNoncoherent,
    Dbpsk,
    Mfsk(u32),
}

impl Modulation {
    pub fn coherent(&self) -> bool {
        matches!(
            self,
            Modulation::BfskCoherent | Modulation::Bpsk | Modulation::Qpsk | Modulation::Qam4 | Modulation::Mpam(_)
        )
    }

    pub fn phi(&self) -> f64 {
        match *self {
            Modulation::BfskCoherent | Modulation::Bpsk => 1.0,
            Modulation::Qpsk | Modulation::Qam4 => 2.0,
            Modulation::Mpam(m) => 2.0 * (1.0 - 1.0 / m as f64),
            Modulation::BfskNoncoherent | Modulation::Dbpsk => 0.5,
            Modulation::Mfsk(m) => 0.5 * (m as f64 - 1.0),
        }
    }

    pub fn rho(&self) -> f64 {
        match *self {
            Modulation::BfskCoherent | Modulation::Qpsk | Modulation::Qam4 | Modulation::Dbpsk => 1.0,
            Modulation::Bpsk => std::f64::consts::SQRT_2,
            Modulation::Mpam(m) => {
                let m = m as f64;
                (6.0 / (m * m - 1.0)).sqrt()
            }
            Modulation::BfskNoncoherent | Modulation::Mfsk(_) => 0.5,
        }
    }

    /// Conditional bit error probability at SNR γ.
    pub fn conditional_ber(&self, gamma: f64) -> f64 {
        if self.coherent() {
            0.5 * self.phi() * crate::specfun::erfc(self.rho() * (0.5 * gamma).sqrt())
        } else {
            self.phi() * (-self.rho() * gamma).exp()
        }
    }
}

impl fmt::Display for Modulation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Modulation::BfskCoherent => write!(f, "bfsk_coh"),
            Modulation::Bpsk => write!(f, "bpsk"),
            Modulation::Qpsk => write!(f, "qpsk"),
            Modulation::Qam4 => write!(f, "qam4"),
            Modulation::Mpam(m) => write!(f, "mpam:{m}"),
            Modulation::BfskNoncoherent => write!(f, "bfsk_nc"),
            Modulation::Dbpsk => write!(f, "dbpsk"),
            Modulation::Mfsk(m) => write!(f, "mfsk:{m}"),
        }
    }
}

impl FromStr for Modulation {
    type Err = Error;

    /// Accepts the names printed by `Display`, e.g. `bpsk`, `mpam:8`.
    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        let (name, order) = match lower.split_once(':') {
            Some((n, o)) => (n.to_string(), Some(o.to_string())),
            None => (lower.clone(), None),
        };
        let parse_order = |o: &Option<String>| -> Result<u32> {
            let o = o
                .as_deref()
                .ok_or_else(|| Error::InvalidParameter(format!("modulation `{s}` needs an order, e.g. {name}:4")))?;
            let m: u32 = o
                .parse()
                .map_err(|_| Error::InvalidParameter(format!("bad modulation order `{o}`")))?;
            if m < 2 {
                return Err(Error::InvalidParameter(format!("modulation order {m} must be >= 2")));
            }
            Ok(m)
        };
        let m = match name.as_str() {
            "bfsk_coh" | "bfsk-coh" => Modulation::BfskCoherent,
            "bpsk" => Modulation::Bpsk,
            "qpsk" => Modulation::Qpsk,
            "qam4" | "4qam" | "4-qam" => Modulation::Qam4,
            "mpam" => Modulation::Mpam(parse_order(&order)?),
            "bfsk_nc" | "bfsk-nc" | "bfsk" => Modulation::BfskNoncoherent,
            "dbpsk" => Modulation::Dbpsk,
            "mfsk" => Modulation::Mfsk(parse_order(&order)?),
            _ => return Err(Error::InvalidParameter(format!("unknown modulation `{s}`"))),
        };
        if order.is_some() && !matches!(m, Modulation::Mpam(_) | Modulation::Mfsk(_)) {
            return Err(Error::InvalidParameter(format!("modulation `{s}` takes no order")));
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constants() {
        assert_eq!(
            (Modulation::BfskCoherent.phi(), Modulation::BfskCoherent.rho()),
            (1.0, 1.0)
        );
        assert_eq!(Modulation::Bpsk.rho(), 2f64.sqrt());
        assert_eq!((Modulation::Qpsk.phi(), Modulation::Qam4.rho()), (2.0, 1.0));
        assert!((Modulation::Mpam(4).phi() - 1.5).abs() < 1e-15);
        assert!((Modulation::Mpam(4).rho() - (6.0f64 / 15.0).sqrt()).abs() < 1e-15);
        assert_eq!(
            (Modulation::BfskNoncoherent.phi(), Modulation::BfskNoncoherent.rho()),
            (0.5, 0.5)
        );
        assert_eq!((Modulation::Dbpsk.phi(), Modulation::Dbpsk.rho()), (0.5, 1.0));
        assert_eq!((Modulation::Mfsk(8).phi(), Modulation::Mfsk(8).rho()), (3.5, 0.5));
    }

    #[test]
    fn bpsk_kernel() {
        let g: f64 = 2.3;
        assert!((Modulation::Bpsk.conditional_ber(g) - 0.5 * libm::erfc(g.sqrt())).abs() < 1e-16);
    }

    #[test]
    fn names_round_trip() {
        for m in [
            Modulation::BfskCoherent,
            Modulation::Bpsk,
            Modulation::Qpsk,
            Modulation::Qam4,
            Modulation::Mpam(8),
            Modulation::BfskNoncoherent,
            Modulation::Dbpsk,
            Modulation::Mfsk(4),
        ] {
            assert_eq!(m.to_string().parse::<Modulation>().unwrap(), m);
        }
        assert!("mpam".parse::<Modulation>().is_err());
        assert!("bpsk:2".parse::<Modulation>().is_err());
        assert!("ook".parse::<Modulation>().is_err());
    }
}
