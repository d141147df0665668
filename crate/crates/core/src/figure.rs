//! Data behind the large-n Rényi entropy plot: R_p(n) for p = 3/2, 2, 3 on
//! a log-spaced grid from 10² to 10¹², all from the leading asymptotics.

use crate::entropy::{renyi_entropy_with, Backend, EntropyReport};
use crate::error::Result;

pub const FIGURE2_P: [f64; 3] = [1.5, 2.0, 3.0];
pub const FIGURE2_POINTS: usize = 60;
pub const FIGURE2_LOG10_RANGE: (f64, f64) = (2.0, 12.0);

/// The n grid: 60 log-spaced integers from 10² to 10¹².
pub fn figure2_grid() -> Vec<u64> {
    let (lo, hi) = FIGURE2_LOG10_RANGE;
    let steps = (FIGURE2_POINTS - 1) as f64;
    (0..FIGURE2_POINTS)
        .map(|i| 10f64.powf(lo + (hi - lo) * i as f64 / steps).round() as u64)
        .collect()
}

/// One series of reports per exponent in [`FIGURE2_P`], in grid order.
pub fn figure2_series() -> Result<Vec<Vec<EntropyReport<f64>>>> {
    let grid = figure2_grid();
    FIGURE2_P
        .iter()
        .map(|&p| {
            grid.iter()
                .map(|&n| renyi_entropy_with(n, p, 1e-10, Backend::Asymptotic))
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_endpoints() {
        let g = figure2_grid();
        assert_eq!(g.len(), 60);
        assert_eq!(g[0], 100);
        assert_eq!(g[59], 1_000_000_000_000);
        assert!(g.windows(2).all(|w| w[0] < w[1]));
    }
}
