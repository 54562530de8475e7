//! Entanglement transport: spins entangled with ancillas, evolved by an
//! automaton, and the Rényi-2 entropy imbalance between the two halves.
//!
//! The chain has `4N` spins labelled `−2N+1, …, 2N` (stored at positions
//! `0, …, 4N−1`) followed by `2N` ancillas, the ancilla at position
//! `4N + k` paired with spin label `−N+1+k`. Natural logarithms throughout.

use nalgebra::DVector;

use crate::error::{domain, QcaError, Result};
use crate::qca::Qca;
use crate::tensor::{matmul, to_faer, Matrix, C64};

/// Largest state vector [`ancilla_setup`] builds.
pub const MAX_STATE_DIM: usize = 1 << 16;

/// A pure state of `4N` spins and `2N` ancillas.
#[derive(Clone, Debug)]
pub struct AncillaState {
    d: usize,
    half: usize,
    psi: DVector<C64>,
}

impl AncillaState {
    pub fn d(&self) -> usize {
        self.d
    }

    /// `N`.
    pub fn half(&self) -> usize {
        self.half
    }

    pub fn n_spins(&self) -> usize {
        4 * self.half
    }

    pub fn n_sites(&self) -> usize {
        6 * self.half
    }

    pub fn vector(&self) -> &DVector<C64> {
        &self.psi
    }

    /// Position of the spin with label `label ∈ [−2N+1, 2N]`.
    pub fn spin(&self, label: i64) -> Option<usize> {
        let n = self.half as i64;
        (-2 * n + 1..=2 * n).contains(&label).then(|| (label + 2 * n - 1) as usize)
    }

    /// Position of the ancilla paired with spin `label ∈ [−N+1, N]`.
    pub fn ancilla(&self, label: i64) -> Option<usize> {
        let n = self.half as i64;
        (-n + 1..=n).contains(&label).then(|| (4 * n + label + n - 1) as usize)
    }

    /// Positions of the spins with labels in `[from, to]`.
    pub fn spins(&self, from: i64, to: i64) -> Vec<usize> {
        (from..=to).filter_map(|l| self.spin(l)).collect()
    }

    /// Positions of the ancillas paired with labels in `[from, to]`.
    pub fn ancillas(&self, from: i64, to: i64) -> Vec<usize> {
        (from..=to).filter_map(|l| self.ancilla(l)).collect()
    }

    /// `(U† ⊗ 1_a)|ψ⟩`; operators move with `U`, so states move against it.
    pub fn evolve(&self, u: &Qca) -> Result<AncillaState> {
        let chain = u.chain();
        if chain.n_sites() != self.n_spins() || chain.d() != self.d {
            return domain(format!(
                "automaton acts on {} sites of dimension {}, state has {} spins of dimension {}",
                chain.n_sites(),
                chain.d(),
                self.n_spins(),
                self.d
            ));
        }
        let m = u.matrix()?;
        let rows = m.nrows();
        let cols = self.psi.len() / rows;
        // spins are the more significant factor, so ψ reshapes row-major
        let psi = Matrix::from_fn(rows, cols, |i, j| self.psi[i * cols + j]);
        let out = matmul(&m.adjoint(), &psi);
        let psi = DVector::from_fn(self.psi.len(), |k, _| out[(k / cols, k % cols)]);
        Ok(AncillaState { d: self.d, half: self.half, psi })
    }

    /// `ρ_region` with the region's sites ordered as given.
    pub fn reduced_density(&self, region: &[usize]) -> Result<Matrix> {
        let n = self.n_sites();
        let mut seen = vec![false; n];
        for &s in region {
            if s >= n || std::mem::replace(&mut seen[s], true) {
                return domain(format!("region {region:?} is not a set of sites below {n}"));
            }
        }
        let d = self.d;
        let rest: Vec<usize> = (0..n).filter(|s| !seen[*s]).collect();
        let (kr, ke) = (d.pow(region.len() as u32), d.pow(rest.len() as u32));
        let place = |sites: &[usize], mut k: usize| {
            let mut flat = 0;
            for &s in sites.iter().rev() {
                flat += (k % d) * d.pow((n - 1 - s) as u32);
                k /= d;
            }
            flat
        };
        let region_off: Vec<usize> = (0..kr).map(|k| place(region, k)).collect();
        let rest_off: Vec<usize> = (0..ke).map(|k| place(&rest, k)).collect();
        let psi = Matrix::from_fn(kr, ke, |i, j| self.psi[region_off[i] + rest_off[j]]);
        Ok(matmul(&psi, &psi.adjoint()))
    }
}

/// Spins `[−N+1, N]` each maximally entangled with an ancilla, all other
/// spins in `|0⟩`.
pub fn ancilla_setup(d: usize, half: usize) -> Result<AncillaState> {
    if d < 2 || half == 0 {
        return domain("ancilla setup needs d >= 2 and N >= 1");
    }
    let dim = d
        .checked_pow(6 * half as u32)
        .filter(|&dim| dim <= MAX_STATE_DIM)
        .ok_or_else(|| QcaError::Domain(format!("d = {d}, N = {half} exceeds the state budget {MAX_STATE_DIM}")))?;
    let mut state = AncillaState { d, half, psi: DVector::zeros(dim) };
    let paired = state.spins(-(half as i64) + 1, half as i64);
    let ancillas = state.ancillas(-(half as i64) + 1, half as i64);
    let n = state.n_sites();
    let amp = C64::new((d as f64).powf(-(half as f64)), 0.0);
    for k in 0..d.pow(2 * half as u32) {
        let mut flat = 0;
        let mut rem = k;
        for (&s, &a) in paired.iter().zip(&ancillas).rev() {
            let v = rem % d;
            rem /= d;
            flat += v * (d.pow((n - 1 - s) as u32) + d.pow((n - 1 - a) as u32));
        }
        state.psi[flat] = amp;
    }
    Ok(state)
}

/// How [`renyi2_entropy`] evaluates `Tr ρ²`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum PurityMethod {
    /// `Σ λ²` over the spectrum of `ρ`.
    Eigenvalues,
    /// `Σ |ρ_ij|²`.
    #[default]
    Frobenius,
}

/// `−log Tr ρ²` for the reduced state on `region`.
pub fn renyi2_entropy(state: &AncillaState, region: &[usize]) -> Result<f64> {
    renyi2_entropy_with(state, region, PurityMethod::default())
}

pub fn renyi2_entropy_with(state: &AncillaState, region: &[usize], method: PurityMethod) -> Result<f64> {
    let rho = state.reduced_density(region)?;
    let purity = match method {
        PurityMethod::Eigenvalues => to_faer(&rho)
            .self_adjoint_eigenvalues(faer::Side::Lower)
            .map_err(|e| QcaError::Solver(format!("{e:?}")))?
            .iter()
            .map(|l| l * l)
            .sum::<f64>(),
        PurityMethod::Frobenius => rho.iter().map(|x| x.norm_sqr()).sum::<f64>(),
    };
    Ok(-purity.ln())
}

fn evolved(u: &Qca, half: usize) -> Result<AncillaState> {
    let chain = u.chain();
    if chain.n_sites() != 4 * half {
        return domain(format!("transport with N = {half} needs {} spins, automaton has {}", 4 * half, chain.n_sites()));
    }
    if u.xi() > half {
        return domain(format!("spreading length {} exceeds N = {half}", u.xi()));
    }
    ancilla_setup(chain.d(), half)?.evolve(u)
}

/// `ν = ½[S₂(ρ_B) − S₂(ρ_A)]` with `A = [−2N+1, 0]`, `B = [1, 2N]`.
pub fn transport_nu(u: &Qca, half: usize) -> Result<f64> {
    let s = evolved(u, half)?;
    let n = half as i64;
    let a = s.spins(-2 * n + 1, 0);
    let b = s.spins(1, 2 * n);
    Ok(0.5 * (renyi2_entropy(&s, &b)? - renyi2_entropy(&s, &a)?))
}

/// `ν = 𝓘(a_A, ρ_B) − 𝓘(a_B, ρ_A)` with `𝓘(X, Y) = ½[S₂(X) + S₂(Y) − S₂(XY)]`
/// and `a_A`, `a_B` the ancillas paired with `[−N+1, 0]` and `[1, N]`.
pub fn transport_nu_mutual(u: &Qca, half: usize) -> Result<f64> {
    let s = evolved(u, half)?;
    let n = half as i64;
    let a = s.spins(-2 * n + 1, 0);
    let b = s.spins(1, 2 * n);
    let a_a = s.ancillas(-n + 1, 0);
    let a_b = s.ancillas(1, n);
    let mutual = |x: &[usize], y: &[usize]| -> Result<f64> {
        let xy: Vec<usize> = x.iter().chain(y).copied().collect();
        Ok(0.5 * (renyi2_entropy(&s, x)? + renyi2_entropy(&s, y)? - renyi2_entropy(&s, &xy)?))
    };
    Ok(mutual(&a_a, &b)? - mutual(&a_b, &a)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qca::{random_brickwork, shift_qca, ChainSpec};
    use std::f64::consts::LN_2;

    #[test]
    fn setup_entropies() {
        let s = ancilla_setup(2, 1).unwrap();
        assert!((s.vector().norm() - 1.0).abs() < 1e-12);
        let anc = s.ancillas(0, 1);
        assert!((renyi2_entropy(&s, &anc).unwrap() - 2.0 * LN_2).abs() < 1e-12);
        let all: Vec<usize> = (0..s.n_sites()).collect();
        assert!(renyi2_entropy(&s, &all).unwrap().abs() < 1e-12);
        let s2 = ancilla_setup(2, 2).unwrap();
        assert!(renyi2_entropy(&s2, &s2.spins(-3, -2)).unwrap().abs() < 1e-12);
        for label in -1..=2 {
            let pair = [s2.spin(label).unwrap()];
            assert!((renyi2_entropy(&s2, &pair).unwrap() - LN_2).abs() < 1e-12);
        }
    }

    #[test]
    fn purity_paths_agree() {
        let chain = ChainSpec::new(8, 2).unwrap();
        let s = ancilla_setup(2, 2).unwrap().evolve(&random_brickwork(chain, 5).unwrap()).unwrap();
        for region in [vec![0, 1, 2], vec![3, 9, 11], vec![4, 5, 6, 7, 8]] {
            let x = renyi2_entropy_with(&s, &region, PurityMethod::Eigenvalues).unwrap();
            let y = renyi2_entropy_with(&s, &region, PurityMethod::Frobenius).unwrap();
            assert!((x - y).abs() < 1e-10);
        }
    }

    #[test]
    fn bad_regions_and_sizes() {
        let s = ancilla_setup(2, 1).unwrap();
        assert!(s.reduced_density(&[0, 0]).is_err());
        assert!(s.reduced_density(&[6]).is_err());
        assert!(ancilla_setup(3, 3).is_err());
    }

    #[test]
    fn shift_transports_one_qubit() {
        let chain = ChainSpec::new(8, 2).unwrap();
        let fwd = transport_nu(&shift_qca(chain, 1).unwrap(), 2).unwrap();
        let back = transport_nu(&shift_qca(chain, -1).unwrap(), 2).unwrap();
        assert!((fwd - LN_2).abs() < 1e-8);
        assert!((back + LN_2).abs() < 1e-8);
        let id = transport_nu_mutual(&Qca::identity(chain).unwrap(), 2).unwrap();
        assert!(id.abs() < 1e-10);
    }

    #[test]
    fn brickwork_transports_nothing() {
        let chain = ChainSpec::new(8, 2).unwrap();
        for seed in 0..3 {
            let u = random_brickwork(chain, seed).unwrap();
            assert!(transport_nu(&u, 2).unwrap().abs() < 1e-8);
            assert!((transport_nu(&u, 2).unwrap() - transport_nu_mutual(&u, 2).unwrap()).abs() < 1e-10);
        }
    }
}
