//! Threshold formulas and the f(k) comparison table.
//!
//! Everything here is exact integer arithmetic; square roots and ceilings
//! are computed by integer square root with adjustment, and the ratio
//! comparisons against `k^(3/2)` go through squaring, never floats. The
//! floating-point `ratio` is for display only.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum BoundsError {
    #[error("k must be at least 2, got {0}")]
    KTooSmall(u64),
    #[error("part size must be at least 1")]
    ZeroPartSize,
    #[error("invalid range: need 2 <= k_min <= k_max, got [{k_min}, {k_max}]")]
    BadRange { k_min: u64, k_max: u64 },
}

/// Smallest integer `t` with `t * t >= x`.
pub fn ceil_sqrt(x: u64) -> u64 {
    let t = x.isqrt();
    if t * t < x {
        t + 1
    } else {
        t
    }
}

/// `ceil(a / b)` for `b >= 1`.
pub fn ceil_div(a: u64, b: u64) -> u64 {
    a.div_ceil(b)
}

/// Smallest integer `t` with `t >= sqrt(k/2 + 1)`, i.e. `2 t^2 >= k + 2`.
fn radical_threshold(k: u64) -> u64 {
    let mut t = ((k + 2) / 2).isqrt();
    while 2 * t * t < k + 2 {
        t += 1;
    }
    t
}

/// Smallest grid side for which the two-coloring of the square multipartite
/// graph with the given part size guarantees `k` internally disjoint
/// rainbow paths for every pair: the ceiling of
/// `max(sqrt(k/2 + 1), (k-1)/part_size + 2)`.
pub fn side_threshold(k: u64, part_size: u64) -> Result<u64, BoundsError> {
    if k < 2 {
        return Err(BoundsError::KTooSmall(k));
    }
    if part_size == 0 {
        return Err(BoundsError::ZeroPartSize);
    }
    Ok(radical_threshold(k).max(ceil_div(k - 1, part_size) + 2))
}

/// True when the simplified closed form `ceil((k-1)/r0) + 2` agrees with
/// [`side_threshold`] at `r0 = ceil(sqrt(2k))`.
pub fn threshold_forms_agree(k: u64) -> bool {
    let r0 = ceil_sqrt(2 * k);
    let simplified = ceil_div(k - 1, r0) + 2;
    side_threshold(k, r0).map(|v| v == simplified).unwrap_or(false)
}

/// One row of the comparison table: the minimal complete-graph order
/// `threshold = grid_side^2 * part_size` that the decomposition certifies
/// for `k`, against the previous quadratic bound `(k+1)^2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundsRow {
    pub k: u64,
    /// Part size `r0 = ceil(sqrt(2k))` of the decomposition.
    pub part_size: u64,
    /// Grid side threshold for that part size (max form).
    pub grid_side: u64,
    /// `grid_side^2 * part_size`; orders at or above this verify at `k`.
    pub threshold: u64,
    /// The `(k+1)^2` bound this table improves on.
    pub quadratic_bound: u64,
}

impl BoundsRow {
    /// `threshold / k^(3/2)` for display; comparisons use
    /// [`BoundsRow::ratio_below_one`] instead.
    pub fn ratio(&self) -> f64 {
        self.threshold as f64 / (self.k as f64).powf(1.5)
    }

    /// Exact test of `threshold < k^(3/2)`, via `threshold^2 < k^3`.
    pub fn ratio_below_one(&self) -> bool {
        (self.threshold as u128).pow(2) < (self.k as u128).pow(3)
    }

    pub fn improves_quadratic(&self) -> bool {
        self.threshold < self.quadratic_bound
    }
}

/// Evaluates the threshold row for one `k`, using the max-form grid side.
pub fn complete_graph_threshold(k: u64) -> Result<BoundsRow, BoundsError> {
    if k < 2 {
        return Err(BoundsError::KTooSmall(k));
    }
    let part_size = ceil_sqrt(2 * k);
    let grid_side = side_threshold(k, part_size)?;
    Ok(BoundsRow {
        k,
        part_size,
        grid_side,
        threshold: grid_side * grid_side * part_size,
        quadratic_bound: (k + 1) * (k + 1),
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundsTable {
    pub rows: Vec<BoundsRow>,
    /// Smallest `k` in range whose threshold strictly beats `(k+1)^2`.
    pub crossover: Option<u64>,
    /// Values of `k` in range where the simplified grid-side form disagrees
    /// with the max form; expected empty.
    pub form_disagreements: Vec<u64>,
}

pub fn bounds_table(k_min: u64, k_max: u64) -> Result<BoundsTable, BoundsError> {
    if k_min < 2 || k_min > k_max {
        return Err(BoundsError::BadRange { k_min, k_max });
    }
    let mut rows = Vec::with_capacity((k_max - k_min + 1) as usize);
    let mut crossover = None;
    let mut form_disagreements = Vec::new();
    for k in k_min..=k_max {
        let row = complete_graph_threshold(k)?;
        if crossover.is_none() && row.improves_quadratic() {
            crossover = Some(k);
        }
        if !threshold_forms_agree(k) {
            form_disagreements.push(k);
        }
        rows.push(row);
    }
    Ok(BoundsTable {
        rows,
        crossover,
        form_disagreements,
    })
}

impl BoundsTable {
    /// CSV rendering with the fixed header
    /// `k,r0,ell0,f_k,chartrand,ratio`; the ratio is printed to six
    /// decimal places.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("k,r0,ell0,f_k,chartrand,ratio\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{:.6}\n",
                row.k,
                row.part_size,
                row.grid_side,
                row.threshold,
                row.quadratic_bound,
                row.ratio()
            ));
        }
        out
    }
}

/// Scans `[k_min, k_max]` and returns every `k` where the two grid-side
/// forms disagree (expected: none).
pub fn scan_form_agreement(k_min: u64, k_max: u64) -> Vec<u64> {
    (k_min.max(2)..=k_max)
        .filter(|&k| !threshold_forms_agree(k))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ceil_sqrt_handles_perfect_squares() {
        assert_eq!(ceil_sqrt(0), 0);
        assert_eq!(ceil_sqrt(1), 1);
        assert_eq!(ceil_sqrt(2), 2);
        assert_eq!(ceil_sqrt(4), 2);
        assert_eq!(ceil_sqrt(5), 3);
        assert_eq!(ceil_sqrt(1_000_000), 1000);
        assert_eq!(ceil_sqrt(1_000_001), 1001);
    }

    #[test]
    fn side_threshold_examples() {
        assert_eq!(side_threshold(2, 2).unwrap(), 3);
        assert_eq!(side_threshold(9, 5).unwrap(), 4);
        assert_eq!(side_threshold(2, 1).unwrap(), 3);
        assert_eq!(side_threshold(1, 1), Err(BoundsError::KTooSmall(1)));
        assert_eq!(side_threshold(2, 0), Err(BoundsError::ZeroPartSize));
    }

    #[test]
    fn threshold_rows() {
        let row = complete_graph_threshold(2).unwrap();
        assert_eq!((row.part_size, row.grid_side), (2, 3));
        assert_eq!(row.threshold, 18);
        assert_eq!(row.quadratic_bound, 9);
        assert!(!row.improves_quadratic());

        let row = complete_graph_threshold(9).unwrap();
        assert_eq!((row.part_size, row.grid_side), (5, 4));
        assert_eq!(row.threshold, 80);
        assert_eq!(row.quadratic_bound, 100);
        assert!(row.improves_quadratic());

        let row = complete_graph_threshold(8).unwrap();
        assert_eq!(row.threshold, 64);
        assert_eq!(row.quadratic_bound, 81);
    }

    #[test]
    fn crossover_is_at_eight() {
        let table = bounds_table(2, 10).unwrap();
        assert_eq!(table.rows.len(), 9);
        assert_eq!(table.crossover, Some(8));
        assert!(table.form_disagreements.is_empty());
        // k = 5 and k = 7 tie with the quadratic bound without beating it.
        assert_eq!(table.rows[3].threshold, table.rows[3].quadratic_bound);
        assert_eq!(table.rows[5].threshold, table.rows[5].quadratic_bound);
    }

    #[test]
    fn large_k_ratio_sits_below_one() {
        for k in [1_000u64, 10_000, 1_000_000] {
            let row = complete_graph_threshold(k).unwrap();
            assert!(row.ratio_below_one(), "k={k}");
            assert!(row.ratio() < 1.0);
        }
        // Small k sit above: the new bound loses there.
        assert!(!complete_graph_threshold(2).unwrap().ratio_below_one());
    }

    #[test]
    fn csv_shape() {
        let table = bounds_table(2, 4).unwrap();
        let csv = table.to_csv();
        let mut lines = csv.lines();
        assert_eq!(lines.next(), Some("k,r0,ell0,f_k,chartrand,ratio"));
        assert_eq!(lines.next(), Some("2,2,3,18,9,6.363961"));
        assert_eq!(csv.lines().count(), 4);
    }

    #[test]
    fn forms_agree_on_a_sample() {
        assert!(scan_form_agreement(2, 10_000).is_empty());
    }
}
