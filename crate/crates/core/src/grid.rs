//! Uniform sampling grids.

use crate::error::{Error, Result};

/// `n` equally spaced points from `start` to `stop`, both included.
pub fn linspace(start: f64, stop: f64, n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::InvalidGrid(format!("need at least 2 points, got {n}")));
    }
    if !(start.is_finite() && stop.is_finite() && start < stop) {
        return Err(Error::InvalidGrid(format!(
            "range [{start}, {stop}] must be finite and increasing"
        )));
    }
    let step = (stop - start) / (n - 1) as f64;
    Ok((0..n)
        .map(|i| if i + 1 == n { stop } else { start + i as f64 * step })
        .collect())
}

/// Index of the packed upper triangle `{(i, j) : i <= j < n}`, row major.
#[inline]
pub fn packed_index(i: usize, j: usize, n: usize) -> usize {
    let (i, j) = if i <= j { (i, j) } else { (j, i) };
    i * n - i * i.saturating_sub(1) / 2 + (j - i)
}

/// Number of entries in a packed symmetric `n x n` matrix.
#[inline]
pub fn packed_len(n: usize) -> usize {
    n * (n + 1) / 2
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn endpoints_are_exact() {
        let g = linspace(0.95, 1.02, 501).unwrap();
        assert_eq!(g[0], 0.95);
        assert_eq!(g[500], 1.02);
        assert!(g.windows(2).all(|w| w[1] > w[0]));
        assert!(linspace(1.0, 1.0, 3).is_err());
        assert!(linspace(0.0, 1.0, 1).is_err());
        assert!(linspace(0.0, f64::NAN, 5).is_err());
    }

    #[test]
    fn packed_layout_is_dense_and_ordered() {
        let n = 7;
        let mut k = 0;
        for i in 0..n {
            for j in i..n {
                assert_eq!(packed_index(i, j, n), k);
                assert_eq!(packed_index(j, i, n), k);
                k += 1;
            }
        }
        assert_eq!(k, packed_len(n));
    }
}
