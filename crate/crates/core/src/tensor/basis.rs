//! Heisenberg-Weyl (clock-and-shift) operator bases.

use std::f64::consts::PI;

use super::{DenseOperator, Layout, Matrix, C64, ONE, ZERO};

/// A monomial matrix: exactly one nonzero entry per row, `M[r, src[r]] = phase[r]`.
#[derive(Clone, Debug, PartialEq)]
pub struct Monomial {
    src: Vec<usize>,
    phase: Vec<C64>,
}

impl Monomial {
    pub fn identity(dim: usize) -> Self {
        Monomial { src: (0..dim).collect(), phase: vec![ONE; dim] }
    }

    /// `X^shift Z^clock` on a `d`-level site, with `X|j> = |j+1>` and
    /// `Z|j> = ω^j |j>`.
    pub fn clock_shift(d: usize, shift: usize, clock: usize) -> Self {
        let src = (0..d).map(|r| (r + d - shift % d) % d).collect::<Vec<_>>();
        let phase = src
            .iter()
            .map(|&j| C64::from_polar(1.0, 2.0 * PI * ((clock * j) % d) as f64 / d as f64))
            .collect();
        Monomial { src, phase }
    }

    pub fn dim(&self) -> usize {
        self.src.len()
    }

    pub fn kron(&self, other: &Monomial) -> Monomial {
        let n = other.dim();
        let mut src = Vec::with_capacity(self.dim() * n);
        let mut phase = Vec::with_capacity(self.dim() * n);
        for (s, p) in self.src.iter().zip(&self.phase) {
            for (t, q) in other.src.iter().zip(&other.phase) {
                src.push(s * n + t);
                phase.push(p * q);
            }
        }
        Monomial { src, phase }
    }

    pub fn to_matrix(&self) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for (r, (&s, &p)) in self.src.iter().zip(&self.phase).enumerate() {
            m[(r, s)] = p;
        }
        m
    }

    pub fn is_identity(&self) -> bool {
        self.src.iter().enumerate().all(|(r, &s)| r == s)
            && self.phase.iter().all(|p| (p - ONE).norm() < 1e-15)
    }

    /// `Tr(m† M)` for a matrix `m` of the same size.
    pub fn overlap(&self, m: &Matrix) -> C64 {
        self.src
            .iter()
            .zip(&self.phase)
            .enumerate()
            .map(|(r, (&s, &p))| m[(r, s)].conj() * p)
            .sum()
    }

    /// Left-multiplies a register matrix by this monomial placed on `sites`.
    pub fn apply_left(&self, m: &Matrix, sites: &[usize], dims: &[usize]) -> Matrix {
        let layout = Layout::new(dims);
        let off_t = layout.offsets(sites);
        let off_r = layout.offsets(&layout.complement(sites));
        debug_assert_eq!(off_t.len(), self.dim());
        let mut out = Matrix::from_element(m.nrows(), m.ncols(), ZERO);
        for c in 0..m.ncols() {
            for &r in &off_r {
                for (t, &o) in off_t.iter().enumerate() {
                    out[(r + o, c)] = self.phase[t] * m[(r + off_t[self.src[t]], c)];
                }
            }
        }
        out
    }
}

/// The `d²` clock-and-shift operators of one site, orthonormal under the
/// normalised trace. Element `a·d + b` is `X^a Z^b`; element 0 is the identity.
#[derive(Clone, Debug)]
pub struct SiteBasis {
    d: usize,
    elements: Vec<Monomial>,
}

impl SiteBasis {
    pub fn new(d: usize) -> Self {
        let elements = (0..d)
            .flat_map(|a| (0..d).map(move |b| (a, b)))
            .map(|(a, b)| Monomial::clock_shift(d, a, b))
            .collect();
        SiteBasis { d, elements }
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn elements(&self) -> &[Monomial] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// All products over `n_sites` sites, first site most significant.
    pub fn products(&self, n_sites: usize) -> Vec<Monomial> {
        let mut out = vec![Monomial::identity(1)];
        for _ in 0..n_sites {
            out = out
                .iter()
                .flat_map(|m| self.elements.iter().map(move |e| m.kron(e)))
                .collect();
        }
        out
    }
}

/// Orthonormal operator basis of the algebra on `sites`.
pub fn operator_basis(sites: &[usize], d: usize) -> Vec<DenseOperator> {
    let dims = vec![d; sites.len()];
    SiteBasis::new(d)
        .products(sites.len())
        .into_iter()
        .map(|m| {
            DenseOperator::new(sites.to_vec(), dims.clone(), m.to_matrix())
                .expect("basis dimensions are consistent")
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{max_norm, normalized_trace};

    fn gram_defect(ops: &[DenseOperator]) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, p) in ops.iter().enumerate() {
            for (j, q) in ops.iter().enumerate() {
                let t = normalized_trace(&(p.matrix().adjoint() * q.matrix()));
                let target = if i == j { 1.0 } else { 0.0 };
                worst = worst.max((t - C64::new(target, 0.0)).norm());
            }
        }
        worst
    }

    #[test]
    fn qubit_basis_is_orthonormal() {
        let b = operator_basis(&[0], 2);
        assert_eq!(b.len(), 4);
        assert!(max_norm(&(b[0].matrix() - Matrix::identity(2, 2))) < 1e-15);
        assert!(gram_defect(&b) < 1e-12);
    }

    #[test]
    fn qutrit_basis_is_orthonormal() {
        let b = operator_basis(&[3], 3);
        assert_eq!(b.len(), 9);
        assert!(gram_defect(&b) < 1e-12);
    }

    #[test]
    fn self_overlap_counts_operators() {
        for (d, n) in [(2, 1), (2, 2), (3, 1), (3, 2)] {
            let sites: Vec<usize> = (0..n).collect();
            let b = operator_basis(&sites, d);
            let mut s = 0.0;
            for p in &b {
                for q in &b {
                    s += normalized_trace(&(p.matrix().adjoint() * q.matrix())).norm_sqr();
                }
            }
            let expect = (d as f64).powi(n as i32);
            assert!((s.sqrt() - expect).abs() < 1e-9 * expect);
        }
    }

    #[test]
    fn clock_shift_matches_definition() {
        let d = 3;
        let w = C64::from_polar(1.0, 2.0 * PI / 3.0);
        let m = Monomial::clock_shift(d, 1, 1).to_matrix();
        // X Z |j> = w^j |j+1>
        for j in 0..d {
            assert!((m[((j + 1) % d, j)] - w.powu(j as u32)).norm() < 1e-14);
        }
    }

    #[test]
    fn monomial_apply_left_matches_dense() {
        let dims = [2, 3];
        let mono = Monomial::clock_shift(3, 2, 1);
        let m = Matrix::from_fn(6, 6, |i, j| C64::new(i as f64, j as f64 * 0.5));
        let got = mono.apply_left(&m, &[1], &dims);
        let dense = crate::tensor::embed(&mono.to_matrix(), &[1], &dims);
        assert!(max_norm(&(got - dense * m)) < 1e-12);
    }
}
