use std::f64::consts::PI;

use crate::error::{domain, Result};
use crate::tensor::{diag, kron_all, max_norm, to_faer, unitarity_defect, Matrix, C64};

const REP_TOLERANCE: f64 = 1e-10;

/// `e^{2πi r/N}`.
pub fn root_of_unity(r: i64, order: usize) -> C64 {
    let r = r.rem_euclid(order as i64);
    C64::from_polar(1.0, 2.0 * PI * r as f64 / order as f64)
}

/// An on-site unitary representation of ℤ_N, generated by `mu1`.
#[derive(Clone, Debug)]
pub struct OnsiteRep {
    order: usize,
    powers: Vec<Matrix>,
}

impl OnsiteRep {
    pub fn new(order: usize, mu1: Matrix) -> Result<Self> {
        if order == 0 {
            return domain("group order must be positive");
        }
        if !mu1.is_square() || mu1.nrows() == 0 {
            return domain("generator must be a nonempty square matrix");
        }
        let defect = unitarity_defect(&mu1);
        if defect > REP_TOLERANCE {
            return domain(format!("generator is not unitary (defect {defect:.2e})"));
        }
        let dim = mu1.nrows();
        let mut powers = vec![Matrix::identity(dim, dim)];
        for g in 1..=order {
            let next = &powers[g - 1] * &mu1;
            if g == order {
                let defect = max_norm(&(next - Matrix::identity(dim, dim)));
                if defect > REP_TOLERANCE {
                    return domain(format!("generator to the power {order} is not 1 (defect {defect:.2e})"));
                }
            } else {
                powers.push(next);
            }
        }
        Ok(OnsiteRep { order, powers })
    }

    /// `μ₁ = diag(ω^{r_0}, ω^{r_1}, …)`.
    pub fn diagonal(order: usize, exponents: &[i64]) -> Result<Self> {
        if order == 0 {
            return domain("group order must be positive");
        }
        let entries: Vec<C64> = exponents.iter().map(|&r| root_of_unity(r, order)).collect();
        OnsiteRep::new(order, diag(&entries))
    }

    /// The trivial representation on a `dim`-level site.
    pub fn trivial(order: usize, dim: usize) -> Result<Self> {
        OnsiteRep::diagonal(order, &vec![0; dim])
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn dim(&self) -> usize {
        self.powers[0].nrows()
    }

    pub fn mu1(&self) -> &Matrix {
        self.mu(1)
    }

    /// `μ_g = μ₁^g`, with `g` taken modulo the group order.
    pub fn mu(&self, g: usize) -> &Matrix {
        &self.powers[g % self.order]
    }

    /// `χ_g = Tr μ_g`.
    pub fn character(&self, g: usize) -> C64 {
        self.mu(g).trace()
    }

    /// `μ_g^{⊗k}`.
    pub fn tensor_power(&self, g: usize, k: usize) -> Matrix {
        kron_all(std::iter::repeat_n(self.mu(g), k))
    }

    /// Orthonormal bases of the eigenspaces of `μ₁^{⊗k}`: entry `r` spans the
    /// eigenvalue `e^{2πi r/N}` (possibly with zero columns).
    pub fn isotypic_bases(&self, k: usize) -> Vec<Matrix> {
        let powers: Vec<Matrix> = (0..self.order).map(|g| self.tensor_power(g, k)).collect();
        isotypic_bases_of(&powers)
    }
}

/// Orthonormal bases of the isotypic components of a ℤ_N representation
/// given as the list `ρ_0, …, ρ_{N−1}`; entry `r` belongs to `e^{2πi r/N}`.
pub(crate) fn isotypic_bases_of(powers: &[Matrix]) -> Vec<Matrix> {
    let n = powers.len();
    let dim = powers[0].nrows();
    (0..n)
        .map(|r| {
            let mut p = Matrix::zeros(dim, dim);
            for (g, m) in powers.iter().enumerate() {
                p += m * root_of_unity(-((r * g) as i64), n);
            }
            p /= C64::new(n as f64, 0.0);
            // Hermitian projector; its unit eigenvectors span the range
            let p = (&p + p.adjoint()) * C64::new(0.5, 0.0);
            let eig = to_faer(&p).self_adjoint_eigen(faer::Side::Lower).expect("projector is Hermitian");
            let (s, u) = (eig.S().column_vector(), eig.U());
            let cols: Vec<usize> = (0..dim).filter(|&j| s[j].re > 0.5).collect();
            Matrix::from_fn(dim, cols.len(), |i, j| u[(i, cols[j])])
        })
        .collect()
}
