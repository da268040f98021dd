use serde::{Deserialize, Serialize};

use super::SpectrumGrid;

/// Fraction of the grid maximum a peak must exceed by default.
pub const DEFAULT_MIN_PROMINENCE: f64 = 0.01;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Peak {
    pub i: usize,
    pub j: usize,
    pub omega1: f64,
    pub omega2: f64,
    pub value: f64,
}

/// Strict local maxima sorted by value, largest first.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PeakList {
    pub peaks: Vec<Peak>,
    /// Neighbourhood radius in grid cells (1 means the 8 nearest cells).
    pub radius: usize,
    pub min_prominence: f64,
}

impl PeakList {
    pub fn len(&self) -> usize {
        self.peaks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.peaks.is_empty()
    }
}

/// Interior points that strictly exceed all 8 neighbours and
/// `min_prominence * max(S)`.
pub fn find_peaks(grid: &SpectrumGrid, min_prominence: f64) -> PeakList {
    let (n1, n2) = grid.shape();
    let (_, _, max) = grid.argmax();
    let floor = min_prominence * max;
    let mut peaks = Vec::new();
    for i in 1..n1.saturating_sub(1) {
        'cell: for j in 1..n2.saturating_sub(1) {
            let v = grid.get(i, j);
            if !(v > floor) {
                continue;
            }
            for di in [i - 1, i, i + 1] {
                for dj in [j - 1, j, j + 1] {
                    if (di, dj) != (i, j) && !(v > grid.get(di, dj)) {
                        continue 'cell;
                    }
                }
            }
            peaks.push(Peak {
                i,
                j,
                omega1: grid.axis1[i],
                omega2: grid.axis2[j],
                value: v,
            });
        }
    }
    peaks.sort_by(|a, b| b.value.total_cmp(&a.value).then((a.i, a.j).cmp(&(b.i, b.j))));
    PeakList {
        peaks,
        radius: 1,
        min_prominence,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::observables::spectrum_grid;
    use crate::params::make_params;

    #[test]
    fn constant_grid_has_no_peaks() {
        let p = make_params(1.0, -0.03, 0.02, 1.5, 1.0).unwrap();
        let mut g = spectrum_grid((0.9, 1.1), (0.9, 1.1), 11, 11, &p).unwrap();
        g.values.iter_mut().for_each(|v| *v = 2.0);
        assert!(find_peaks(&g, DEFAULT_MIN_PROMINENCE).is_empty());
    }

    #[test]
    fn prominence_filters_small_bumps() {
        let p = make_params(1.0, -0.03, 0.02, 1.5, 1.0).unwrap();
        let mut g = spectrum_grid((0.0, 1.0), (0.0, 1.0), 7, 7, &p).unwrap();
        g.values.iter_mut().for_each(|v| *v = 0.0);
        g.values[2 * 7 + 2] = 1.0;
        g.values[4 * 7 + 4] = 0.005;
        let found = find_peaks(&g, DEFAULT_MIN_PROMINENCE);
        assert_eq!(found.len(), 1);
        assert_eq!((found.peaks[0].i, found.peaks[0].j), (2, 2));
        assert_eq!(find_peaks(&g, 0.0).len(), 2);
    }

    #[test]
    fn weak_coupling_two_peaks() {
        let p = make_params(1.0, -0.03, 0.001, 1.5, 1.0).unwrap();
        let g = spectrum_grid((0.95, 1.02), (0.95, 1.02), 501, 501, &p).unwrap();
        let found = find_peaks(&g, DEFAULT_MIN_PROMINENCE);
        assert_eq!(found.len(), 2);
        let step = 0.07 / 500.0;
        let mut spots: Vec<(f64, f64)> = found.peaks.iter().map(|q| (q.omega1, q.omega2)).collect();
        spots.sort_by(|a, b| a.0.total_cmp(&b.0));
        assert!((spots[0].0 - 0.97).abs() <= step && (spots[0].1 - 1.0).abs() <= step);
        assert!((spots[1].0 - 1.0).abs() <= step && (spots[1].1 - 0.97).abs() <= step);
    }
}
