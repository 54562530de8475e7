use std::borrow::Cow;

use super::chain::{checked_pow, ChainSpec, DENSE_LIMIT};
use crate::error::{domain, QcaError, Result};
use crate::tensor::{matmul, permutation_operator, unitarity_defect, DenseOperator, Matrix};

const UNITARITY_TOLERANCE: f64 = 1e-10;

/// Each supersite is a tensor product of factors; factor `f` of every
/// supersite is translated by `steps[f]` supersites (`T†O_iT = O_{i+s}`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorPermutation {
    factor_dims: Vec<usize>,
    steps: Vec<i64>,
}

impl FactorPermutation {
    pub fn new(factor_dims: Vec<usize>, steps: Vec<i64>) -> Result<Self> {
        if factor_dims.is_empty() || factor_dims.len() != steps.len() {
            return domain("factor dims and steps must be nonempty and of equal length");
        }
        if factor_dims.contains(&0) {
            return domain("factor dimensions must be positive");
        }
        Ok(FactorPermutation { factor_dims, steps })
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.factor_dims
    }

    pub fn steps(&self) -> &[i64] {
        &self.steps
    }

    pub fn supersite_dim(&self) -> Option<usize> {
        self.factor_dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d))
    }

    pub fn max_step(&self) -> usize {
        self.steps.iter().map(|s| s.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// Dense unitary on `n_supersites` supersites.
    pub fn to_matrix(&self, n_supersites: usize) -> Result<Matrix> {
        let f = self.factor_dims.len();
        let dims: Vec<usize> = (0..n_supersites).flat_map(|_| self.factor_dims.iter().copied()).collect();
        let total = dims.iter().try_fold(1usize, |acc, &d| acc.checked_mul(d));
        if total.is_none_or(|t| t > DENSE_LIMIT) {
            return Err(QcaError::Budget(format!(
                "factor permutation on {n_supersites} supersites exceeds the dense limit"
            )));
        }
        let n = n_supersites as i64;
        let perm: Vec<usize> = (0..n_supersites * f)
            .map(|k| {
                let (site, factor) = (k / f, k % f);
                let target = (site as i64 + self.steps[factor]).rem_euclid(n) as usize;
                target * f + factor
            })
            .collect();
        permutation_operator(&perm, &dims)
    }
}

/// How a [`Qca`] is stored.
#[derive(Clone, Debug)]
pub enum QcaForm {
    Dense(Matrix),
    Factor(FactorPermutation),
}

/// A unitary on a periodic chain together with a declared spreading length.
///
/// Composition follows operator products: for `U = A·B` the Heisenberg
/// image is `U†OU = B†(A†OA)B`, so `A` acts on operators first.
#[derive(Clone, Debug)]
pub struct Qca {
    chain: ChainSpec,
    xi: usize,
    form: QcaForm,
}

impl Qca {
    pub fn from_dense(chain: ChainSpec, matrix: Matrix, xi: usize) -> Result<Self> {
        let dim = chain.dense_dim()?;
        if matrix.nrows() != dim || matrix.ncols() != dim {
            return domain(format!(
                "matrix is {}x{}, chain needs {dim}x{dim}",
                matrix.nrows(),
                matrix.ncols()
            ));
        }
        let defect = unitarity_defect(&matrix);
        if defect > UNITARITY_TOLERANCE {
            return domain(format!("matrix is not unitary (defect {defect:.2e})"));
        }
        Ok(Qca { chain, xi, form: QcaForm::Dense(matrix) })
    }

    /// For matrices that are unitary by construction.
    pub(crate) fn from_trusted(chain: ChainSpec, matrix: Matrix, xi: usize) -> Self {
        debug_assert_eq!(Some(matrix.nrows()), chain.hilbert_dim());
        Qca { chain, xi, form: QcaForm::Dense(matrix) }
    }

    pub fn identity(chain: ChainSpec) -> Result<Self> {
        let dim = chain.dense_dim()?;
        Ok(Qca { chain, xi: 0, form: QcaForm::Dense(Matrix::identity(dim, dim)) })
    }

    /// Structured QCA on `n_supersites` supersites; nothing is materialised.
    pub fn factor_permutation(n_supersites: usize, perm: FactorPermutation) -> Result<Self> {
        let d = perm
            .supersite_dim()
            .ok_or_else(|| QcaError::Budget("supersite dimension overflows".into()))?;
        let chain = ChainSpec::new(n_supersites, d)?;
        Ok(Qca { chain, xi: perm.max_step(), form: QcaForm::Factor(perm) })
    }

    pub fn chain(&self) -> &ChainSpec {
        &self.chain
    }

    pub fn xi(&self) -> usize {
        self.xi
    }

    pub fn form(&self) -> &QcaForm {
        &self.form
    }

    pub fn with_xi(mut self, xi: usize) -> Self {
        self.xi = xi;
        self
    }

    /// The unitary as a dense matrix, materialising structured forms.
    pub fn matrix(&self) -> Result<Cow<'_, Matrix>> {
        match &self.form {
            QcaForm::Dense(m) => Ok(Cow::Borrowed(m)),
            QcaForm::Factor(p) => Ok(Cow::Owned(p.to_matrix(self.chain.n_sites())?)),
        }
    }

    pub fn to_dense(&self) -> Result<Qca> {
        let m = self.matrix()?.into_owned();
        Ok(Qca { chain: self.chain, xi: self.xi, form: QcaForm::Dense(m) })
    }

    /// `self · other`; spreading lengths add.
    pub fn compose(&self, other: &Qca) -> Result<Qca> {
        if self.chain != other.chain {
            return domain("cannot compose automata on different chains");
        }
        let m = matmul(self.matrix()?.as_ref(), other.matrix()?.as_ref());
        Ok(Qca { chain: self.chain, xi: self.xi + other.xi, form: QcaForm::Dense(m) })
    }

    pub fn dagger(&self) -> Result<Qca> {
        let m = self.matrix()?.adjoint();
        Ok(Qca { chain: self.chain, xi: self.xi, form: QcaForm::Dense(m) })
    }

    /// `self ⊗ other` on a chain whose site `i` is the pair (site `i` of
    /// `self`, site `i` of `other`).
    pub fn stack(&self, other: &Qca) -> Result<Qca> {
        let n = self.chain.n_sites();
        if other.chain.n_sites() != n {
            return domain("stacked automata need the same number of sites");
        }
        let chain = ChainSpec::new(n, self.chain.d() * other.chain.d())?;
        chain.dense_dim()?;
        let big = self.matrix()?.kronecker(other.matrix()?.as_ref());
        let mut dims = self.chain.dims();
        dims.extend(other.chain.dims());
        let op = DenseOperator::new((0..2 * n).collect(), dims, big)?;
        let order: Vec<usize> = (0..n).flat_map(|i| [i, n + i]).collect();
        let m = op.reorder(&order)?.into_matrix();
        Ok(Qca { chain, xi: self.xi.max(other.xi), form: QcaForm::Dense(m) })
    }

    /// Regroups every `b` consecutive sites into one supersite. The basis
    /// ordering makes this free; the spreading length is rounded up.
    pub fn blocked(&self, b: usize) -> Result<Qca> {
        let n = self.chain.n_sites();
        if b == 0 || n % b != 0 {
            return domain(format!("cannot block {n} sites in groups of {b}"));
        }
        let d = checked_pow(self.chain.d(), b)
            .ok_or_else(|| QcaError::Budget("supersite dimension overflows".into()))?;
        let chain = ChainSpec::new(n / b, d)?;
        let form = match &self.form {
            QcaForm::Dense(m) => QcaForm::Dense(m.clone()),
            QcaForm::Factor(_) => QcaForm::Dense(self.matrix()?.into_owned()),
        };
        Ok(Qca { chain, xi: self.xi.div_ceil(b), form })
    }
}
