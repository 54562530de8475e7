//! Operator-Schmidt rank-one factorisation across a cut.


use super::{DenseOperator, Matrix, C64, ZERO};
use crate::error::{domain, QcaError, Result};

/// Largest accepted ratio `‖σ_{≥2}‖ / σ_1`.
pub const SCHMIDT_TOLERANCE: f64 = 1e-6;

/// Result of splitting an operator as `left ⊗ right`.
#[derive(Clone, Debug)]
pub struct Rank1Factors {
    pub left: DenseOperator,
    pub right: DenseOperator,
    /// `(Σ_{k≥2} σ_k²)^{1/2} / σ_1` of the operator-Schmidt spectrum.
    pub residual: f64,
}

/// Splits `op` into `left ⊗ right` where `left` acts on the first `cut` sites
/// of its support.
///
/// The factors are balanced so that `‖L‖²/dim L = ‖R‖²/dim R` (both are
/// unitary when `op` is), and the common phase is fixed by making `Tr R` real
/// and nonnegative, or when `|Tr R| ≤ 1e-8` its largest entry real positive.
pub fn rank1_factorize(op: &DenseOperator, cut: usize) -> Result<Rank1Factors> {
    let n = op.support().len();
    if cut == 0 || cut >= n {
        return domain(format!("cut {cut} does not split a support of {n} sites"));
    }
    let dims = op.dims();
    let dim_l: usize = dims[..cut].iter().product();
    let dim_r: usize = dims[cut..].iter().product();
    let m = op.matrix();

    // reshaped[(l,l'), (r,r')] = op[(l,r), (l',r')]
    let entry = |row: usize, col: usize| {
        let (l, lp) = (row / dim_l, row % dim_l);
        let (r, rp) = (col / dim_r, col % dim_r);
        m[(l * dim_r + r, lp * dim_r + rp)]
    };

    // Rows and columns of the reshaped matrix that vanish identically carry
    // no Schmidt weight; dropping them keeps diagonal and monomial inputs cheap.
    let scale = super::max_norm(m);
    if scale == 0.0 {
        return Err(QcaError::NotFactorizable { residual: f64::INFINITY });
    }
    let cutoff = scale * 1e-15;
    let mut live_rows = vec![false; dim_l * dim_l];
    let mut live_cols = vec![false; dim_r * dim_r];
    for row in 0..dim_l * dim_r {
        for col in 0..dim_l * dim_r {
            if m[(row, col)].norm() > cutoff {
                let (l, r) = (row / dim_r, row % dim_r);
                let (lp, rp) = (col / dim_r, col % dim_r);
                live_rows[l * dim_l + lp] = true;
                live_cols[r * dim_r + rp] = true;
            }
        }
    }
    let rows: Vec<usize> = (0..dim_l * dim_l).filter(|&i| live_rows[i]).collect();
    let cols: Vec<usize> = (0..dim_r * dim_r).filter(|&j| live_cols[j]).collect();
    let compact = Matrix::from_fn(rows.len(), cols.len(), |i, j| entry(rows[i], cols[j]));

    // nalgebra's complex SVD can return inconsistent factors
    let svd = super::to_faer(&compact)
        .thin_svd()
        .map_err(|_| QcaError::NotFactorizable { residual: f64::INFINITY })?;
    let sv: Vec<f64> = svd.S().column_vector().iter().map(|z| z.re).collect();
    let sigma = sv[0];
    let residual = sv[1..].iter().map(|s| s * s).sum::<f64>().sqrt() / sigma;
    if !(residual <= SCHMIDT_TOLERANCE) {
        return Err(QcaError::NotFactorizable { residual });
    }
    let (u, v) = (svd.U(), svd.V());

    let s_left = sigma.sqrt() * (dim_l as f64 / dim_r as f64).powf(0.25);
    let s_right = sigma / s_left;
    let mut left = Matrix::from_element(dim_l, dim_l, ZERO);
    for (i, &row) in rows.iter().enumerate() {
        left[(row / dim_l, row % dim_l)] = u[(i, 0)] * s_left;
    }
    let mut right = Matrix::from_element(dim_r, dim_r, ZERO);
    for (j, &col) in cols.iter().enumerate() {
        right[(col / dim_r, col % dim_r)] = v[(j, 0)].conj() * s_right;
    }

    let anchor = phase_anchor(&right);
    let phase = C64::from_polar(1.0, anchor.arg());
    right /= phase;
    left *= phase;

    let support = op.support();
    Ok(Rank1Factors {
        left: DenseOperator::new(support[..cut].to_vec(), dims[..cut].to_vec(), left)?,
        right: DenseOperator::new(support[cut..].to_vec(), dims[cut..].to_vec(), right)?,
        residual,
    })
}

/// The complex number whose phase the convention removes: `Tr m` when
/// `|Tr m| > 1e-8`, otherwise the first entry of largest modulus (row-major).
pub fn phase_anchor(m: &Matrix) -> C64 {
    let tr = m.trace();
    if tr.norm() > 1e-8 {
        return tr;
    }
    let mut best = ZERO;
    for r in 0..m.nrows() {
        for c in 0..m.ncols() {
            if m[(r, c)].norm() > best.norm() + 1e-12 {
                best = m[(r, c)];
            }
        }
    }
    best
}
