use std::fmt;

use crate::error::{Error, Result};
use crate::scalar::Real;

pub const DEFAULT_THETA: f64 = 0.1;
pub const DEFAULT_M_CUT: f64 = 2.0;

/// Region of the half line, ordered from the origin outward as c, b₁, b₂, b₃, a.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Zone {
    /// Oscillatory bulk, x² < 2n − n^{1/3+θ}.
    C,
    /// Inner flank of the transition layer.
    B1,
    /// Turning-point core, |x² − 2n| < M n^{1/3}.
    B2,
    /// Outer flank of the transition layer.
    B3,
    /// Exponentially decaying exterior.
    A,
}

impl Zone {
    /// All zones in order of increasing |x|.
    pub const ALL: [Zone; 5] = [Zone::C, Zone::B1, Zone::B2, Zone::B3, Zone::A];

    pub fn label(self) -> &'static str {
        match self {
            Zone::C => "c",
            Zone::B1 => "b1",
            Zone::B2 => "b2",
            Zone::B3 => "b3",
            Zone::A => "a",
        }
    }

    /// True for the three pieces of the Airy transition zone.
    pub fn is_transition(self) -> bool {
        matches!(self, Zone::B1 | Zone::B2 | Zone::B3)
    }
}

impl fmt::Display for Zone {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Partition of [0, ∞) (in x²) into the five zones for a given n.
///
/// When n^θ ≤ M the flanks b₁ and b₃ are empty and the core b₂ fills the
/// whole transition zone.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZoneMap<T> {
    pub n: u64,
    pub theta: T,
    pub m_cut: T,
    /// Breakpoints in x²: [0, c|b1, b1|b2, b2|b3, b3|a].
    pub boundaries: [T; 5],
}

impl<T: Real> ZoneMap<T> {
    pub fn new(n: u64, theta: T, m_cut: T) -> Result<Self> {
        if !(theta > T::zero() && theta < T::one() / T::lit(6.0)) {
            return Err(Error::Config(format!("theta must lie in (0, 1/6), got {theta}")));
        }
        if !(m_cut > T::zero()) || !m_cut.is_finite() {
            return Err(Error::Config(format!("M must be positive, got {m_cut}")));
        }
        if n == 0 {
            return Err(Error::Config("zone map needs n ≥ 1".into()));
        }
        let nf = T::from_u64_lossy(n);
        let two_n = T::lit(2.0) * nf;
        let cube_root = nf.cbrt();
        let outer = nf.powf(T::one() / T::lit(3.0) + theta);
        let inner = (m_cut * cube_root).min(outer);
        let boundaries = [
            T::zero(),
            two_n - outer,
            two_n - inner,
            two_n + inner,
            two_n + outer,
        ];
        if !(boundaries[1] > T::zero()) {
            return Err(Error::Config(format!(
                "n = {n} too small: 2n − n^(1/3+θ) = {} is not positive",
                boundaries[1]
            )));
        }
        Ok(ZoneMap {
            n,
            theta,
            m_cut,
            boundaries,
        })
    }

    pub fn with_defaults(n: u64) -> Result<Self> {
        Self::new(n, T::lit(DEFAULT_THETA), T::lit(DEFAULT_M_CUT))
    }

    /// True when the flanks b₁ and b₃ have positive width.
    pub fn has_flanks(&self) -> bool {
        self.boundaries[1] < self.boundaries[2]
    }

    /// [start, end) of a zone in x (not x²). `end` is +∞ for zone a.
    pub fn x_range(&self, zone: Zone) -> (T, T) {
        let b = &self.boundaries;
        let (lo, hi) = match zone {
            Zone::C => (b[0], b[1]),
            Zone::B1 => (b[1], b[2]),
            Zone::B2 => (b[2], b[3]),
            Zone::B3 => (b[3], b[4]),
            Zone::A => (b[4], T::infinity()),
        };
        (lo.sqrt(), hi.sqrt())
    }

    /// Distance in x² from the nearest interior breakpoint.
    pub fn distance_to_boundary(&self, x: T) -> T {
        let x2 = x * x;
        self.boundaries[1..]
            .iter()
            .map(|&b| (x2 - b).abs())
            .fold(T::infinity(), T::min)
    }
}

/// Zone containing x² (|x| is used; boundaries are closed on the left).
pub fn classify_zone<T: Real>(map: &ZoneMap<T>, x: T) -> Zone {
    let x2 = x * x;
    let b = &map.boundaries;
    if x2 < b[1] {
        Zone::C
    } else if x2 < b[2] {
        Zone::B1
    } else if x2 < b[3] {
        Zone::B2
    } else if x2 < b[4] {
        Zone::B3
    } else {
        Zone::A
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples_at_n_100() {
        let map = ZoneMap::new(100, 0.1f64, 2.0).unwrap();
        assert_eq!(classify_zone(&map, 0.0), Zone::C);
        assert_eq!(classify_zone(&map, 200f64.sqrt()), Zone::B2);
        assert_eq!(classify_zone(&map, 30.0), Zone::A);
        assert_eq!(classify_zone(&map, -30.0), Zone::A);
        // 100^{0.1} < 2, so the flanks collapse
        assert!(!map.has_flanks());
    }

    #[test]
    fn breakpoints_and_flanks_at_n_2000() {
        let map = ZoneMap::new(2000, 0.1f64, 2.0).unwrap();
        assert!(map.has_flanks());
        let b = map.boundaries;
        assert!(b.windows(2).all(|w| w[0] < w[1]));
        let n13 = 2000f64.cbrt();
        assert!((b[2] - (4000.0 - 2.0 * n13)).abs() < 1e-9);
        assert!((b[4] - (4000.0 + 2000f64.powf(1.0 / 3.0 + 0.1))).abs() < 1e-9);
        // left-closed: the breakpoint itself belongs to the outer zone
        assert_eq!(classify_zone(&map, b[2].sqrt() * (1.0 + 1e-15)), Zone::B2);
        let mid_b1 = ((b[1] + b[2]) / 2.0).sqrt();
        assert_eq!(classify_zone(&map, mid_b1), Zone::B1);
        let mid_b3 = ((b[3] + b[4]) / 2.0).sqrt();
        assert_eq!(classify_zone(&map, mid_b3), Zone::B3);
    }

    #[test]
    fn rejects_bad_configuration() {
        assert!(ZoneMap::new(100, 0.2f64, 2.0).is_err());
        assert!(ZoneMap::new(100, 0.0f64, 2.0).is_err());
        assert!(ZoneMap::new(100, 0.1f64, -1.0).is_err());
        assert!(ZoneMap::new(0, 0.1f64, 2.0).is_err());
        assert!(ZoneMap::new(1, 0.1f64, 2.0).is_ok());
    }
}
