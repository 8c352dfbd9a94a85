//! Fisher information of the degree vector and its closed-form
//! approximate inverse.
//!
//! At parameter vector beta the covariance of the degrees has entries
//! `v_ij = p_ij (1 - p_ij)` off the diagonal and `v_ii = sum_{j != i}
//! v_ij`; it is also the Fisher information for beta. Its inverse is
//! approximated in O(t) storage by
//!
//! ```text
//! s_ij = delta_ij / v_ii - 1 / v_..,     v_.. = sum_{i != j} v_ij,
//! ```
//!
//! with max-entry error decaying like (t-1)^{-2} for bounded beta. A
//! dense factorization-based inverse is kept alongside as the audit
//! oracle for that approximation; it is an O(t^3) diagnostic, capped at
//! t = 500, never a production path.

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::graph::BetaVector;
use crate::math::sigmoid;

/// Upper size bound for [`FisherMatrix::exact_inverse`].
pub const EXACT_INVERSE_MAX_T: usize = 500;

/// Residual bound certified by [`FisherMatrix::exact_inverse`]:
/// max |V * Vinv - I| must not exceed this.
pub const EXACT_INVERSE_RESIDUAL_LIMIT: f64 = 1e-8;

/// Dense symmetric covariance / information matrix of the degree vector.
#[derive(Debug, Clone)]
pub struct FisherMatrix {
    t: usize,
    /// Row-major t x t entries.
    entries: Vec<f64>,
    /// Sum of all off-diagonal entries (v_..).
    total_offdiag: f64,
}

impl FisherMatrix {
    /// Builds the matrix at `beta`. Requires t >= 3: below that the
    /// matrix is singular or trivial.
    pub fn from_beta(beta: &BetaVector) -> Result<Self> {
        let t = beta.len();
        if t < 3 {
            return Err(Error::TooFewVertices { t, min: 3 });
        }
        let b = beta.as_slice();
        let mut entries = vec![0.0; t * t];
        let mut total = 0.0;
        for i in 0..t {
            let mut row_sum = 0.0;
            for j in 0..t {
                if j == i {
                    continue;
                }
                let p = sigmoid(b[i] + b[j]);
                let v = p * (1.0 - p);
                entries[i * t + j] = v;
                row_sum += v;
            }
            entries[i * t + i] = row_sum;
            total += row_sum;
        }
        Ok(Self { t, entries, total_offdiag: total })
    }

    pub fn dim(&self) -> usize {
        self.t
    }

    /// Entry v_ij for 1-based vertex ids.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.entries[(i - 1) * self.t + (j - 1)]
    }

    /// Diagonal entry v_ii for a 1-based vertex id.
    pub fn diagonal(&self, i: usize) -> f64 {
        self.entry(i, i)
    }

    /// v_.. = sum of all off-diagonal entries.
    pub fn total_offdiag(&self) -> f64 {
        self.total_offdiag
    }

    /// Dense inverse through a symmetric positive definite (Cholesky)
    /// factorization, verified to satisfy max |V Vinv - I| <= 1e-8.
    pub fn exact_inverse(&self) -> Result<SquareMatrix> {
        if self.t > EXACT_INVERSE_MAX_T {
            return Err(Error::DimensionCap { t: self.t, max: EXACT_INVERSE_MAX_T });
        }
        let v = DMatrix::from_row_slice(self.t, self.t, &self.entries);
        let chol = v.clone().cholesky().ok_or(Error::NotPositiveDefinite)?;
        let inv = chol.inverse();

        let residual = (&v * &inv - DMatrix::<f64>::identity(self.t, self.t))
            .iter()
            .fold(0.0f64, |m, x| m.max(x.abs()));
        if residual > EXACT_INVERSE_RESIDUAL_LIMIT {
            return Err(Error::InverseResidual {
                residual,
                limit: EXACT_INVERSE_RESIDUAL_LIMIT,
            });
        }
        let mut data = vec![0.0; self.t * self.t];
        for i in 0..self.t {
            for j in 0..self.t {
                data[i * self.t + j] = inv[(i, j)];
            }
        }
        Ok(SquareMatrix { t: self.t, data })
    }

    /// Smallest Cholesky pivot; positive iff the matrix is numerically
    /// positive definite.
    pub fn min_cholesky_pivot(&self) -> Result<f64> {
        let v = DMatrix::from_row_slice(self.t, self.t, &self.entries);
        let chol = v.cholesky().ok_or(Error::NotPositiveDefinite)?;
        let l = chol.l();
        let mut min = f64::INFINITY;
        for i in 0..self.t {
            min = min.min(l[(i, i)]);
        }
        Ok(min)
    }

    /// Writes all entries as CSV (`i,j,v`) for debugging dumps.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,v\n");
        for i in 1..=self.t {
            for j in 1..=self.t {
                out.push_str(&format!("{i},{j},{}\n", crate::math::sig6(self.entry(i, j))));
            }
        }
        out
    }
}

/// Plain dense square matrix returned by the exact-inverse oracle.
#[derive(Debug, Clone)]
pub struct SquareMatrix {
    t: usize,
    /// Row-major t x t entries.
    data: Vec<f64>,
}

impl SquareMatrix {
    pub fn dim(&self) -> usize {
        self.t
    }

    /// Entry for 1-based indices.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.data[(i - 1) * self.t + (j - 1)]
    }
}

/// O(t)-storage approximation to the inverse information matrix:
/// `s_ij = delta_ij / v_ii - 1 / v_..`, materialized on demand.
#[derive(Debug, Clone)]
pub struct ApproxInverse {
    t: usize,
    inv_diag: Vec<f64>,
    inv_total: f64,
}

impl ApproxInverse {
    pub fn from_fisher(v: &FisherMatrix) -> Self {
        let inv_diag = (1..=v.dim()).map(|i| 1.0 / v.diagonal(i)).collect();
        Self { t: v.dim(), inv_diag, inv_total: 1.0 / v.total_offdiag() }
    }

    pub fn dim(&self) -> usize {
        self.t
    }

    /// Entry s_ij for 1-based vertex ids, from the defining rule.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        let base = -self.inv_total;
        if i == j {
            self.inv_diag[i - 1] + base
        } else {
            base
        }
    }

    /// Writes all materialized entries as CSV (`i,j,s`).
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,j,s\n");
        for i in 1..=self.t {
            for j in 1..=self.t {
                out.push_str(&format!("{i},{j},{}\n", crate::math::sig6(self.entry(i, j))));
            }
        }
        out
    }
}

/// Max-entry distance between the exact inverse and its closed-form
/// approximation: `max_ij |(V^-1)_ij - s_ij|`.
pub fn approx_error(v: &FisherMatrix) -> Result<f64> {
    let exact = v.exact_inverse()?;
    let approx = ApproxInverse::from_fisher(v);
    let mut worst = 0.0f64;
    for i in 1..=v.dim() {
        for j in 1..=v.dim() {
            worst = worst.max((exact.entry(i, j) - approx.entry(i, j)).abs());
        }
    }
    Ok(worst)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn uniform_beta(t: usize, value: f64) -> BetaVector {
        BetaVector::new(vec![value; t]).unwrap()
    }

    #[test]
    fn entries_at_zero_beta() {
        let v = FisherMatrix::from_beta(&uniform_beta(3, 0.0)).unwrap();
        for i in 1..=3 {
            for j in 1..=3 {
                if i == j {
                    assert!((v.entry(i, j) - 0.5).abs() < 1e-15);
                } else {
                    assert!((v.entry(i, j) - 0.25).abs() < 1e-15);
                }
            }
        }
        assert!((v.total_offdiag() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_small_t() {
        assert!(matches!(
            FisherMatrix::from_beta(&BetaVector::new(vec![0.0, 0.0]).unwrap()),
            Err(Error::TooFewVertices { t: 2, min: 3 })
        ));
    }

    #[test]
    fn symmetry_and_row_sum_diagonal() {
        let beta = BetaVector::new(vec![0.9, -0.4, 0.1, 1.3, -1.0]).unwrap();
        let v = FisherMatrix::from_beta(&beta).unwrap();
        let t = v.dim();
        for i in 1..=t {
            let mut row = 0.0;
            for j in 1..=t {
                if i != j {
                    assert_eq!(v.entry(i, j), v.entry(j, i));
                    assert!(v.entry(i, j) > 0.0 && v.entry(i, j) <= 0.25);
                    row += v.entry(i, j);
                }
            }
            assert!((v.diagonal(i) - row).abs() < 1e-15);
        }
    }

    #[test]
    fn offdiagonal_entry_bounds() {
        // e^{2L}/(1+e^{2L})^2 <= v_ij <= 1/4 for |beta_i| <= L
        let beta = BetaVector::new(vec![1.0, -1.0, 0.5, -0.25]).unwrap();
        let l = beta.max_abs();
        let lower = (2.0 * l).exp() / (1.0 + (2.0 * l).exp()).powi(2);
        let v = FisherMatrix::from_beta(&beta).unwrap();
        for i in 1..=4 {
            for j in 1..=4 {
                if i != j {
                    assert!(v.entry(i, j) >= lower - 1e-15);
                    assert!(v.entry(i, j) <= 0.25 + 1e-15);
                }
            }
        }
        // diagonal bounds follow: (t-1) * lower <= v_ii <= (t-1)/4
        for i in 1..=4 {
            assert!(v.diagonal(i) >= 3.0 * lower - 1e-12);
            assert!(v.diagonal(i) <= 3.0 / 4.0 + 1e-12);
        }
    }

    #[test]
    fn approx_inverse_entries_at_zero_beta() {
        let v = FisherMatrix::from_beta(&uniform_beta(3, 0.0)).unwrap();
        let s = ApproxInverse::from_fisher(&v);
        assert!((s.entry(1, 1) - 4.0 / 3.0).abs() < 1e-12);
        assert!((s.entry(1, 2) + 2.0 / 3.0).abs() < 1e-12);

        // uniform beta = 0 gives s_ii = 4/t for any t
        for t in [5usize, 20] {
            let v = FisherMatrix::from_beta(&uniform_beta(t, 0.0)).unwrap();
            let s = ApproxInverse::from_fisher(&v);
            assert!((s.entry(1, 1) - 4.0 / t as f64).abs() < 1e-12, "t={t}");
        }
        let v = FisherMatrix::from_beta(&uniform_beta(20, 0.0)).unwrap();
        let s = ApproxInverse::from_fisher(&v);
        assert!((s.entry(7, 7) - 0.2).abs() < 1e-12);
    }

    #[test]
    fn exact_inverse_closed_forms() {
        // t=3, beta=0: V = (I+J)/4, inverse = 4I - J
        let v = FisherMatrix::from_beta(&uniform_beta(3, 0.0)).unwrap();
        let inv = v.exact_inverse().unwrap();
        for i in 1..=3 {
            for j in 1..=3 {
                let expected = if i == j { 3.0 } else { -1.0 };
                assert!((inv.entry(i, j) - expected).abs() < 1e-10);
            }
        }

        // t=10, beta=0: diagonal 68/144, off-diagonal -1/36
        let v = FisherMatrix::from_beta(&uniform_beta(10, 0.0)).unwrap();
        let inv = v.exact_inverse().unwrap();
        assert!((inv.entry(1, 1) - 68.0 / 144.0).abs() < 1e-10);
        assert!((inv.entry(1, 2) + 1.0 / 36.0).abs() < 1e-10);
    }

    #[test]
    fn exact_inverse_residual_is_tiny() {
        let beta = BetaVector::new((0..40).map(|i| 0.5 * i as f64 / 40.0).collect()).unwrap();
        let v = FisherMatrix::from_beta(&beta).unwrap();
        let inv = v.exact_inverse().unwrap();
        // re-verify the certified residual independently
        let t = v.dim();
        let mut worst = 0.0f64;
        for i in 1..=t {
            for j in 1..=t {
                let mut acc = 0.0;
                for k in 1..=t {
                    acc += v.entry(i, k) * inv.entry(k, j);
                }
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((acc - target).abs());
            }
        }
        assert!(worst <= 1e-8, "residual {worst}");
    }

    #[test]
    fn exact_inverse_dimension_cap() {
        let beta = BetaVector::new(vec![0.0; 501]).unwrap();
        let v = FisherMatrix::from_beta(&beta).unwrap();
        assert!(matches!(v.exact_inverse(), Err(Error::DimensionCap { t: 501, max: 500 })));
    }

    #[test]
    fn approx_error_closed_forms() {
        let v = FisherMatrix::from_beta(&uniform_beta(3, 0.0)).unwrap();
        assert!((approx_error(&v).unwrap() - 5.0 / 3.0).abs() < 1e-10);

        let v = FisherMatrix::from_beta(&uniform_beta(10, 0.0)).unwrap();
        let e10 = approx_error(&v).unwrap();
        assert!((e10 - 0.072_222_222_222).abs() < 1e-10);

        let v = FisherMatrix::from_beta(&uniform_beta(20, 0.0)).unwrap();
        let e20 = approx_error(&v).unwrap();
        assert!((e20 - 0.016_374_269_006).abs() < 1e-10);
        let ratio = e10 / e20;
        assert!((ratio - 4.411).abs() < 0.01, "ratio {ratio}");
    }

    #[test]
    fn positive_definite_for_finite_beta() {
        let beta = BetaVector::new(vec![2.5, -2.5, 1.0, -1.0, 0.0]).unwrap();
        let v = FisherMatrix::from_beta(&beta).unwrap();
        assert!(v.min_cholesky_pivot().unwrap() > 0.0);
    }
}
