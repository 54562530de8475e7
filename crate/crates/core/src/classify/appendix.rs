//! Intertwiners between ℤ_N representations and the spectral test for
//! symmetric finite-depth circuits.

use super::RepSpectrum;
use crate::error::{domain, QcaError, Result};
use crate::qca::rep::isotypic_bases_of;
use crate::qca::{root_of_unity, Interval, OnsiteRep, Qca};
use crate::spi::lr_decompose;
use crate::tensor::{matmul, max_norm, unitarity_defect, Matrix, C64};

const REP_TOLERANCE: f64 = 1e-8;

/// Unitary `V` with `V ρ'_g V† = u_g ρ_g`, `u_g = e^{2πi·shift·g/N}`.
#[derive(Clone, Debug)]
pub struct Intertwiner {
    pub v: Matrix,
    pub shift: usize,
    /// `max_g ‖V ρ'_g V† − u_g ρ_g‖` (max norm).
    pub residual: f64,
}

fn check_representation(rho: &[Matrix], name: &str) -> Result<()> {
    let n = rho.len();
    let dim = rho[0].nrows();
    for (g, m) in rho.iter().enumerate() {
        if m.nrows() != dim || m.ncols() != dim {
            return domain(format!("{name}_{g} has the wrong shape"));
        }
        if unitarity_defect(m) > REP_TOLERANCE {
            return domain(format!("{name}_{g} is not unitary"));
        }
    }
    if max_norm(&(&rho[0] - Matrix::identity(dim, dim))) > REP_TOLERANCE {
        return domain(format!("{name}_0 is not the identity"));
    }
    for g in 0..n {
        for h in 0..n {
            if max_norm(&(matmul(&rho[g], &rho[h]) - &rho[(g + h) % n])) > REP_TOLERANCE {
                return domain(format!("{name} is not a representation: {name}_{g}{name}_{h} differs"));
            }
        }
    }
    Ok(())
}

/// Finds `V` with `V ρ'_g V† = u_g ρ_g` for some 1D representation `u`,
/// trying every `u` in turn. Both inputs list the representation on
/// `g = 0, …, N−1`.
pub fn find_intertwiner(rho: &[Matrix], rho_prime: &[Matrix]) -> Result<Intertwiner> {
    if rho.is_empty() || rho.len() != rho_prime.len() {
        return domain("both representations must list the same nonzero number of elements");
    }
    check_representation(rho, "rho")?;
    check_representation(rho_prime, "rho'")?;
    let n = rho.len();
    let dim = rho[0].nrows();
    if rho_prime[0].nrows() != dim {
        return Err(QcaError::NoIntertwiner);
    }
    let a = isotypic_bases_of(rho);
    let b = isotypic_bases_of(rho_prime);
    for shift in 0..n {
        let target = |r: usize| (r + n - shift) % n;
        if (0..n).any(|r| b[r].ncols() != a[target(r)].ncols()) {
            continue;
        }
        let mut v = Matrix::zeros(dim, dim);
        for (r, br) in b.iter().enumerate() {
            v += &a[target(r)] * br.adjoint();
        }
        let residual = (0..n)
            .map(|g| {
                let lhs = matmul(&matmul(&v, &rho_prime[g]), &v.adjoint());
                max_norm(&(lhs - &rho[g] * root_of_unity((shift * g) as i64, n)))
            })
            .fold(0.0, f64::max);
        return Ok(Intertwiner { v, shift, residual });
    }
    Err(QcaError::NoIntertwiner)
}

/// Whether the right boundary operator of `u` on `interval` looks like that
/// of a symmetric finite-depth circuit: `R_1`, rephased so that `R_1^N = 1`,
/// has the spectrum of `u_1 μ_1^{⊗m} ⊗ 1` for a 1D representation `u`,
/// where `m` is the number of interval sites `R_1` covers.
pub fn symmetric_fdqc_check(u: &Qca, rep: &OnsiteRep, interval: Interval) -> Result<bool> {
    let lr = lr_decompose(u, rep, interval)?;
    let n = rep.order();
    if n == 1 {
        return Ok(true);
    }
    let f = lr.factor(1)?;
    let r = f.right.matrix();
    let mut power = r.clone();
    for _ in 1..n {
        power = matmul(&power, r);
    }
    let c = power.trace() / power.nrows() as f64;
    if max_norm(&(power - Matrix::identity(r.nrows(), r.ncols()) * c)) > 1e-6 {
        return Ok(false);
    }
    let fixed = r * C64::from_polar(1.0, -c.arg() / n as f64);
    let Ok(spec) = RepSpectrum::of_unitary(&fixed, n, 1e-6) else {
        return Ok(false);
    };

    let mu = RepSpectrum::of_unitary(rep.mu1(), n, 1e-8)?;
    let m = f.interval_right.len();
    let extra = f.right.support().len() - m;
    let mut target = RepSpectrum::new(std::iter::once(1).chain(std::iter::repeat_n(0, n - 1)).collect())?;
    for _ in 0..m {
        target = target.kron(&mu)?;
    }
    let idle = (rep.dim() as u64).pow(extra as u32);
    target = target.scaled(idle);
    Ok(spec.canonical() == target.canonical())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qca::{haar_unitary, shift_qca, symmetric_brickwork, ChainSpec};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn powers(m: &Matrix, n: usize) -> Vec<Matrix> {
        let dim = m.nrows();
        let mut out = vec![Matrix::identity(dim, dim)];
        for g in 1..n {
            out.push(matmul(&out[g - 1], m));
        }
        out
    }

    #[test]
    fn conjugated_representation() {
        let rep = OnsiteRep::diagonal(3, &[0, 1, 1, 2]).unwrap();
        let rho = powers(rep.mu1(), 3);
        let w = haar_unitary(4, &mut ChaCha8Rng::seed_from_u64(3));
        let rho_p: Vec<Matrix> = rho.iter().map(|m| &w * m * w.adjoint()).collect();
        let t = find_intertwiner(&rho, &rho_p).unwrap();
        assert_eq!(t.shift, 0);
        assert!(t.residual < 1e-10);
        assert!(unitarity_defect(&t.v) < 1e-10);
    }

    #[test]
    fn sign_twist_is_absorbed() {
        let rep = OnsiteRep::diagonal(2, &[0, 0, 1]).unwrap();
        let rho = powers(rep.mu1(), 2);
        let rho_p: Vec<Matrix> = powers(&(-rep.mu1()), 2);
        let t = find_intertwiner(&rho, &rho_p).unwrap();
        assert_eq!(t.shift, 1);
        assert!(t.residual < 1e-10);
    }

    #[test]
    fn different_spectra_have_no_intertwiner() {
        let a = powers(&OnsiteRep::diagonal(2, &[0, 0]).unwrap().mu1().clone(), 2);
        let b = powers(&OnsiteRep::diagonal(2, &[0, 1]).unwrap().mu1().clone(), 2);
        assert!(matches!(find_intertwiner(&a, &b), Err(QcaError::NoIntertwiner)));
    }

    #[test]
    fn non_representations_are_rejected() {
        let a = powers(&OnsiteRep::diagonal(2, &[0, 1]).unwrap().mu1().clone(), 2);
        let mut b = a.clone();
        b[1] = Matrix::identity(2, 2) * C64::new(0.0, 1.0);
        assert!(matches!(find_intertwiner(&a, &b), Err(QcaError::Domain(_))));
    }

    #[test]
    fn fdqc_check() {
        let z2 = OnsiteRep::diagonal(2, &[0, 1]).unwrap();
        let u = symmetric_brickwork(ChainSpec::new(6, 2).unwrap(), &z2, 9).unwrap();
        assert!(symmetric_fdqc_check(&u, &z2, Interval::new(1, 2)).unwrap());
        let id = Qca::identity(ChainSpec::new(4, 2).unwrap()).unwrap();
        assert!(symmetric_fdqc_check(&id, &z2, Interval::new(1, 2)).unwrap());
        let rep = OnsiteRep::diagonal(2, &[0, 0, 0, 1]).unwrap();
        let shift = shift_qca(ChainSpec::new(4, 4).unwrap(), 1).unwrap();
        assert!(!symmetric_fdqc_check(&shift, &rep, Interval::new(1, 2)).unwrap());
    }
}
