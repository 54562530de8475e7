//! Dense complex operators on labelled tensor factors.
//!
//! Every operator carries the ordered list of sites it acts on together with
//! the local dimension of each. Basis states are laid out row-major with the
//! first listed site as the most significant digit, so restricting to a
//! contiguous block of sites is a contiguous block of the index space.

mod basis;
mod factorize;
mod permutation;

pub use basis::{operator_basis, Monomial, SiteBasis};
pub use factorize::{phase_anchor, rank1_factorize, Rank1Factors, SCHMIDT_TOLERANCE};
pub use permutation::permutation_operator;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{domain, Result};

pub type C64 = Complex64;
pub type Matrix = DMatrix<C64>;

/// Copy into a faer matrix, whose decompositions are used instead of
/// nalgebra's complex ones.
pub(crate) fn to_faer(m: &Matrix) -> faer::Mat<C64> {
    faer::Mat::from_fn(m.nrows(), m.ncols(), |i, j| m[(i, j)])
}

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);

/// Mixed-radix layout of a tensor product register.
#[derive(Clone, Debug)]
pub(crate) struct Layout {
    dims: Vec<usize>,
    strides: Vec<usize>,
    total: usize,
}

impl Layout {
    pub(crate) fn new(dims: &[usize]) -> Self {
        let mut strides = vec![1; dims.len()];
        for k in (0..dims.len().saturating_sub(1)).rev() {
            strides[k] = strides[k + 1] * dims[k + 1];
        }
        let total = dims.iter().product();
        Layout { dims: dims.to_vec(), strides, total }
    }

    pub(crate) fn total(&self) -> usize {
        self.total
    }

    /// Flat offsets of every digit assignment on `positions`, the first
    /// position being the most significant; all other digits are zero.
    pub(crate) fn offsets(&self, positions: &[usize]) -> Vec<usize> {
        let mut out = vec![0usize];
        for &p in positions {
            let mut next = Vec::with_capacity(out.len() * self.dims[p]);
            for &o in &out {
                for digit in 0..self.dims[p] {
                    next.push(o + digit * self.strides[p]);
                }
            }
            out = next;
        }
        out
    }

    pub(crate) fn complement(&self, positions: &[usize]) -> Vec<usize> {
        (0..self.dims.len()).filter(|p| !positions.contains(p)).collect()
    }
}

/// An operator on an ordered set of sites.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    support: Vec<usize>,
    dims: Vec<usize>,
    matrix: Matrix,
}

impl DenseOperator {
    pub fn new(support: Vec<usize>, dims: Vec<usize>, matrix: Matrix) -> Result<Self> {
        if support.len() != dims.len() {
            return domain("support and dims have different lengths");
        }
        for (k, s) in support.iter().enumerate() {
            if support[..k].contains(s) {
                return domain(format!("site {s} listed twice in support"));
            }
        }
        if dims.iter().any(|&d| d == 0) {
            return domain("local dimension must be positive");
        }
        let dim: usize = dims.iter().product();
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return domain(format!(
                "matrix is {}x{} but support dimension is {dim}",
                matrix.nrows(),
                matrix.ncols()
            ));
        }
        Ok(DenseOperator { support, dims, matrix })
    }

    /// Single-site operator.
    pub fn on_site(site: usize, matrix: Matrix) -> Result<Self> {
        let d = matrix.nrows();
        Self::new(vec![site], vec![d], matrix)
    }

    pub fn identity(support: Vec<usize>, dims: Vec<usize>) -> Self {
        let dim = dims.iter().product();
        DenseOperator { support, dims, matrix: Matrix::identity(dim, dim) }
    }

    pub fn support(&self) -> &[usize] {
        &self.support
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> Matrix {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    fn dim_of(&self, site: usize) -> Option<usize> {
        self.support.iter().position(|&s| s == site).map(|k| self.dims[k])
    }

    pub fn dagger(&self) -> Self {
        DenseOperator {
            support: self.support.clone(),
            dims: self.dims.clone(),
            matrix: self.matrix.adjoint(),
        }
    }

    pub fn scale(&self, factor: C64) -> Self {
        DenseOperator {
            support: self.support.clone(),
            dims: self.dims.clone(),
            matrix: &self.matrix * factor,
        }
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    /// Trace normalised so that the identity has trace one.
    pub fn normalized_trace(&self) -> C64 {
        self.matrix.trace() / self.dim() as f64
    }

    /// Tensor product; the supports must be disjoint.
    pub fn kron(&self, other: &DenseOperator) -> Result<Self> {
        if let Some(s) = other.support.iter().find(|s| self.support.contains(s)) {
            return domain(format!("kron of operators sharing site {s}"));
        }
        let mut support = self.support.clone();
        support.extend_from_slice(&other.support);
        let mut dims = self.dims.clone();
        dims.extend_from_slice(&other.dims);
        Ok(DenseOperator { support, dims, matrix: self.matrix.kronecker(&other.matrix) })
    }

    /// Unnormalised partial trace onto `keep`; the result is ordered as `keep`.
    pub fn partial_trace(&self, keep: &[usize]) -> Result<Self> {
        let mut keep_pos = Vec::with_capacity(keep.len());
        for (k, s) in keep.iter().enumerate() {
            if keep[..k].contains(s) {
                return domain(format!("site {s} repeated in keep set"));
            }
            match self.support.iter().position(|x| x == s) {
                Some(p) => keep_pos.push(p),
                None => return domain(format!("site {s} is not in the operator support")),
            }
        }
        let layout = Layout::new(&self.dims);
        let off_keep = layout.offsets(&keep_pos);
        let off_traced = layout.offsets(&layout.complement(&keep_pos));
        let n = off_keep.len();
        let matrix = Matrix::from_fn(n, n, |i, j| {
            off_traced
                .iter()
                .map(|&t| self.matrix[(off_keep[i] + t, off_keep[j] + t)])
                .sum()
        });
        let dims = keep_pos.iter().map(|&p| self.dims[p]).collect();
        Ok(DenseOperator { support: keep.to_vec(), dims, matrix })
    }

    /// Re-expresses the operator with its tensor factors listed in `order`.
    pub fn reorder(&self, order: &[usize]) -> Result<Self> {
        if order.len() != self.support.len() {
            return domain("reorder must list every support site exactly once");
        }
        self.partial_trace(order)
    }

    /// Tensors with the identity on the sites of `support` that this operator
    /// does not act on, and lists the factors in the order of `support`.
    pub fn extend_to(&self, support: &[usize], dims: &[usize]) -> Result<Self> {
        if support.len() != dims.len() {
            return domain("support and dims have different lengths");
        }
        let mut own_pos = Vec::with_capacity(self.support.len());
        for (s, d) in self.support.iter().zip(&self.dims) {
            match support.iter().position(|x| x == s) {
                Some(p) if dims[p] == *d => own_pos.push(p),
                Some(_) => return domain(format!("dimension mismatch on site {s}")),
                None => return domain(format!("target support does not contain site {s}")),
            }
        }
        let layout = Layout::new(dims);
        let off_own = layout.offsets(&own_pos);
        let off_extra = layout.offsets(&layout.complement(&own_pos));
        let total = layout.total();
        let mut matrix = Matrix::zeros(total, total);
        for &e in &off_extra {
            for (j, &oj) in off_own.iter().enumerate() {
                for (i, &oi) in off_own.iter().enumerate() {
                    matrix[(oi + e, oj + e)] = self.matrix[(i, j)];
                }
            }
        }
        Ok(DenseOperator { support: support.to_vec(), dims: dims.to_vec(), matrix })
    }

    fn union_with(&self, other: &DenseOperator) -> Result<(Vec<usize>, Vec<usize>)> {
        let mut support = self.support.clone();
        let mut dims = self.dims.clone();
        for (s, d) in other.support.iter().zip(&other.dims) {
            match self.dim_of(*s) {
                Some(own) if own != *d => {
                    return domain(format!("dimension mismatch on site {s}"));
                }
                Some(_) => {}
                None => {
                    support.push(*s);
                    dims.push(*d);
                }
            }
        }
        Ok((support, dims))
    }

    /// Operator product `self * other`, padding both with identities to the
    /// union of their supports.
    pub fn mul(&self, other: &DenseOperator) -> Result<Self> {
        let (support, dims) = self.union_with(other)?;
        let a = self.extend_to(&support, &dims)?;
        let b = other.extend_to(&support, &dims)?;
        Ok(DenseOperator { support, dims, matrix: matmul(&a.matrix, &b.matrix) })
    }

    /// Largest entrywise difference after padding both to a common support.
    pub fn max_diff(&self, other: &DenseOperator) -> Result<f64> {
        let (support, dims) = self.union_with(other)?;
        let a = self.extend_to(&support, &dims)?;
        let b = other.extend_to(&support, &dims)?;
        Ok(max_norm(&(a.matrix - b.matrix)))
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        unitarity_defect(&self.matrix) < tol
    }
}

/// Complex product through three real products (the real kernel is far
/// faster than the generic complex one).
pub fn matmul(a: &Matrix, b: &Matrix) -> Matrix {
    assert_eq!(a.ncols(), b.nrows(), "matmul dimension mismatch");
    if a.nrows() * a.ncols() * b.ncols() < 32 * 32 * 32 {
        return a * b;
    }
    let (ar, ai) = (a.map(|z| z.re), a.map(|z| z.im));
    let (br, bi) = (b.map(|z| z.re), b.map(|z| z.im));
    let k1: DMatrix<f64> = (&ar + &ai) * &br;
    let k2: DMatrix<f64> = &ar * (&bi - &br);
    let k3: DMatrix<f64> = &ai * (&br + &bi);
    Matrix::from_fn(a.nrows(), b.ncols(), |i, j| C64::new(k1[(i, j)] - k3[(i, j)], k1[(i, j)] + k2[(i, j)]))
}

/// Entrywise maximum modulus.
pub fn max_norm(m: &Matrix) -> f64 {
    m.iter().fold(0.0, |acc, z| acc.max(z.norm()))
}

/// `‖M†M − 1‖_max`.
pub fn unitarity_defect(m: &Matrix) -> f64 {
    let n = m.ncols();
    max_norm(&(matmul(&m.adjoint(), m) - Matrix::identity(n, n)))
}

pub fn frobenius_sq(m: &Matrix) -> f64 {
    m.iter().map(|z| z.norm_sqr()).sum()
}

/// Left-multiplies a register matrix by `gate` acting on `sites` (positions
/// into `dims`, first listed most significant).
pub fn apply_left(m: &mut Matrix, gate: &Matrix, sites: &[usize], dims: &[usize]) {
    let layout = Layout::new(dims);
    let off_t = layout.offsets(sites);
    let off_r = layout.offsets(&layout.complement(sites));
    let k = off_t.len();
    debug_assert_eq!(gate.nrows(), k);
    let mut v = DVector::<C64>::zeros(k);
    for c in 0..m.ncols() {
        for &r in &off_r {
            for (t, &o) in off_t.iter().enumerate() {
                v[t] = m[(r + o, c)];
            }
            let w = gate * &v;
            for (t, &o) in off_t.iter().enumerate() {
                m[(r + o, c)] = w[t];
            }
        }
    }
}

/// Embeds an operator on `sites` of a register with per-site `dims` into the
/// full register.
pub fn embed(gate: &Matrix, sites: &[usize], dims: &[usize]) -> Matrix {
    let total: usize = dims.iter().product();
    let mut m = Matrix::identity(total, total);
    apply_left(&mut m, gate, sites, dims);
    m
}

/// `Tr_{keep^c}(a† b)` for register matrices, ordered by `keep` (positions
/// into `dims`). Never forms the product `a† b`.
pub fn reduced_product(a: &Matrix, b: &Matrix, dims: &[usize], keep: &[usize]) -> Matrix {
    let layout = Layout::new(dims);
    let off_k = layout.offsets(keep);
    let off_t = layout.offsets(&layout.complement(keep));
    let rows = a.nrows();
    // gather columns so that the traced digits join the row index
    let gather = |m: &Matrix| {
        Matrix::from_fn(rows * off_t.len(), off_k.len(), |rt, k| {
            let (r, t) = (rt % rows, rt / rows);
            m[(r, off_k[k] + off_t[t])]
        })
    };
    matmul(&gather(a).adjoint(), &gather(b))
}

/// Tensor product of a list of matrices, first factor most significant.
pub fn kron_all<'a>(factors: impl IntoIterator<Item = &'a Matrix>) -> Matrix {
    factors
        .into_iter()
        .fold(Matrix::identity(1, 1), |acc, f| acc.kronecker(f))
}

/// Diagonal matrix from complex entries.
pub fn diag(entries: &[C64]) -> Matrix {
    Matrix::from_diagonal(&DVector::from_column_slice(entries))
}

/// Normalised trace of a square matrix.
pub fn normalized_trace(m: &Matrix) -> C64 {
    m.trace() / m.nrows() as f64
}
