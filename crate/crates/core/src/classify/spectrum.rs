use std::f64::consts::PI;

use crate::error::{domain, QcaError, Result};
use crate::qca::{root_of_unity, OnsiteRep};
use crate::tensor::{diag, to_faer, Matrix, C64};

/// Multiplicities `a_r` of the irreps `e^{2πi r/N}` of ℤ_N.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RepSpectrum {
    a: Vec<u64>,
}

impl RepSpectrum {
    pub fn new(a: Vec<u64>) -> Result<Self> {
        if a.is_empty() {
            return domain("a multiplicity vector needs at least one entry");
        }
        if a.iter().sum::<u64>() == 0 {
            return domain("representation has dimension zero");
        }
        Ok(RepSpectrum { a })
    }

    pub fn order(&self) -> usize {
        self.a.len()
    }

    pub fn multiplicities(&self) -> &[u64] {
        &self.a
    }

    pub fn dim(&self) -> u64 {
        self.a.iter().sum()
    }

    /// Irrep labels in increasing order, each repeated by its multiplicity.
    pub fn exponents(&self) -> Vec<usize> {
        self.a
            .iter()
            .enumerate()
            .flat_map(|(r, &m)| std::iter::repeat_n(r, m as usize))
            .collect()
    }

    pub fn to_diagonal(&self) -> Matrix {
        let n = self.order();
        let entries: Vec<C64> = self.exponents().iter().map(|&r| root_of_unity(r as i64, n)).collect();
        diag(&entries)
    }

    pub fn to_rep(&self) -> Result<OnsiteRep> {
        OnsiteRep::new(self.order(), self.to_diagonal())
    }

    /// Tensoring with the 1D irrep `k`: `b_r = a_{r−k}`.
    pub fn cyclic_shift(&self, k: i64) -> RepSpectrum {
        let n = self.order() as i64;
        let a = (0..n).map(|r| self.a[(r - k).rem_euclid(n) as usize]).collect();
        RepSpectrum { a }
    }

    /// Lexicographically smallest cyclic shift.
    pub fn canonical(&self) -> RepSpectrum {
        (0..self.order() as i64)
            .map(|k| self.cyclic_shift(k))
            .min()
            .expect("order is positive")
    }

    /// Spectrum of a tensor product.
    pub fn kron(&self, other: &RepSpectrum) -> Result<RepSpectrum> {
        if self.order() != other.order() {
            return domain("spectra belong to different groups");
        }
        let n = self.order();
        let mut a = vec![0u64; n];
        for (r, &x) in self.a.iter().enumerate() {
            for (s, &y) in other.a.iter().enumerate() {
                a[(r + s) % n] += x * y;
            }
        }
        Ok(RepSpectrum { a })
    }

    pub fn scaled(&self, factor: u64) -> RepSpectrum {
        RepSpectrum { a: self.a.iter().map(|x| x * factor).collect() }
    }

    /// Spectrum of a unitary whose eigenvalues are all N-th roots of unity.
    pub fn of_unitary(m: &Matrix, order: usize, tol: f64) -> Result<RepSpectrum> {
        spectrum_after_phase(&eigenvalues(m)?, order, C64::new(1.0, 0.0), tol)
    }

    /// Spectrum of `e^{-iφ} m`, where the phase is chosen so that some
    /// eigenvalue becomes 1. Meaningful up to a cyclic shift.
    pub fn of_unitary_up_to_phase(m: &Matrix, order: usize, tol: f64) -> Result<(RepSpectrum, C64)> {
        let ev = eigenvalues(m)?;
        let first = ev[0];
        let phase = first / first.norm();
        Ok((spectrum_after_phase(&ev, order, phase, tol)?, phase))
    }
}

impl std::fmt::Display for RepSpectrum {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.a.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

fn eigenvalues(m: &Matrix) -> Result<Vec<C64>> {
    if !m.is_square() || m.nrows() == 0 {
        return domain("spectrum needs a nonempty square matrix");
    }
    to_faer(m)
        .eigenvalues()
        .map_err(|e| QcaError::Solver(format!("{e:?}")))
}

fn spectrum_after_phase(ev: &[C64], order: usize, phase: C64, tol: f64) -> Result<RepSpectrum> {
    let mut a = vec![0u64; order];
    for &z in ev {
        let z = z / phase;
        let r = (z.arg() * order as f64 / (2.0 * PI)).round() as i64;
        let r = r.rem_euclid(order as i64);
        if (z - root_of_unity(r, order)).norm() > tol {
            return domain(format!("eigenvalue {z} is not a root of unity of order {order}"));
        }
        a[r as usize] += 1;
    }
    RepSpectrum::new(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::embed;

    #[test]
    fn shifts_and_canonical_form() {
        let a = RepSpectrum::new(vec![1, 2, 0, 1]).unwrap();
        assert_eq!(a.cyclic_shift(1).multiplicities(), &[1, 1, 2, 0]);
        assert_eq!(a.canonical().multiplicities(), &[0, 1, 1, 2]);
        assert_eq!(a.cyclic_shift(4), a);
    }

    #[test]
    fn kron_convolves() {
        let mu = RepSpectrum::new(vec![1, 2, 0]).unwrap();
        assert_eq!(mu.kron(&mu).unwrap().multiplicities(), &[1, 4, 4]);
    }

    #[test]
    fn spectrum_of_rotated_diagonal() {
        let s = RepSpectrum::new(vec![2, 0, 1, 1]).unwrap();
        let d = s.to_diagonal();
        // conjugate by a non-diagonal unitary
        let h = Matrix::from_row_slice(2, 2, &[C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(1.0, 0.0), C64::new(-1.0, 0.0)])
            / C64::new(2f64.sqrt(), 0.0);
        let w = embed(&h, &[1], &[2, 2]);
        let m = &w * d * w.adjoint();
        assert_eq!(RepSpectrum::of_unitary(&m, 4, 1e-9).unwrap(), s);
        let (t, _) = RepSpectrum::of_unitary_up_to_phase(&(m * C64::from_polar(1.0, 0.3)), 4, 1e-9).unwrap();
        assert_eq!(t.canonical(), s.canonical());
    }
}
