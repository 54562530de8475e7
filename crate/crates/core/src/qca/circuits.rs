//! Concrete automata: translations, brickwork circuits and symmetric gates.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use super::automaton::Qca;
use super::chain::ChainSpec;
use super::rep::OnsiteRep;
use crate::classify::RepSpectrum;
use crate::error::{domain, QcaError, Result};
use crate::tensor::{apply_left, permutation_operator, unitarity_defect, DenseOperator, Matrix, C64, ZERO};

/// Translation with `T†O_iT = O_{i+steps}`.
pub fn shift_qca(chain: ChainSpec, steps: i64) -> Result<Qca> {
    let n = chain.n_sites();
    if steps.unsigned_abs() as usize >= n {
        return domain(format!("cannot shift {n} sites by {steps}"));
    }
    chain.dense_dim()?;
    let perm: Vec<usize> = (0..n).map(|i| chain.wrap(i as i64 + steps)).collect();
    let m = permutation_operator(&perm, &chain.dims())?;
    Ok(Qca::from_trusted(chain, m, steps.unsigned_abs() as usize))
}

/// A gate on the neighbouring pair `(left, left + 1)`.
#[derive(Clone, Debug)]
pub struct TwoSiteGate {
    pub left: usize,
    pub matrix: Matrix,
}

/// Depth-two circuit `W = W₂W₁` with `W₁` made of gates on pairs `(2i, 2i+1)`
/// and `W₂` of gates on pairs `(2i−1, 2i)`. `W₂` acts on operators first.
/// The spreading length is two sites.
pub fn brickwork_qca(chain: ChainSpec, layer1: &[TwoSiteGate], layer2: &[TwoSiteGate]) -> Result<Qca> {
    let n = chain.n_sites();
    if n % 2 != 0 || n < 2 {
        return domain(format!("brickwork needs an even number of sites, got {n}"));
    }
    let dim = chain.dense_dim()?;
    let dims = chain.dims();
    let mut m = Matrix::identity(dim, dim);
    for (layer, parity) in [(layer1, 0), (layer2, 1)] {
        let mut used = vec![false; n];
        for gate in layer {
            let (l, r) = (gate.left % n, (gate.left + 1) % n);
            if gate.left >= n || l % 2 != parity {
                return domain(format!("gate at {} does not belong to this layer", gate.left));
            }
            if used[l] || used[r] || l == r {
                return domain(format!("gate at {} overlaps another gate of its layer", gate.left));
            }
            used[l] = true;
            used[r] = true;
            let d2 = chain.d() * chain.d();
            if gate.matrix.nrows() != d2 || gate.matrix.ncols() != d2 {
                return domain(format!("gate at {} is not {d2}x{d2}", gate.left));
            }
            if unitarity_defect(&gate.matrix) > 1e-10 {
                return domain(format!("gate at {} is not unitary", gate.left));
            }
            apply_left(&mut m, &gate.matrix, &[l, r], &dims);
        }
    }
    Ok(Qca::from_trusted(chain, m, 2))
}

/// The same gate on every pair of one brickwork layer (`parity` 0 or 1).
pub fn uniform_layer(chain: &ChainSpec, parity: usize, gate: &Matrix) -> Vec<TwoSiteGate> {
    (0..chain.n_sites() / 2)
        .map(|i| TwoSiteGate { left: 2 * i + parity, matrix: gate.clone() })
        .collect()
}

/// Haar-random unitary: QR of a complex Ginibre matrix with the phases of
/// `R`'s diagonal absorbed.
pub fn haar_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Matrix {
    let mut draw = || C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
    let g = Matrix::from_fn(dim, dim, |_, _| draw());
    let qr = g.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..dim {
        let rjj = r[(j, j)];
        let phase = if rjj.norm() > 0.0 { rjj / rjj.norm() } else { C64::new(1.0, 0.0) };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Brickwork with independent Haar gates, reproducible from `seed`.
pub fn random_brickwork(chain: ChainSpec, seed: u64) -> Result<Qca> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let d2 = chain.d() * chain.d();
    let mut layer = |parity: usize| -> Vec<TwoSiteGate> {
        (0..chain.n_sites() / 2)
            .map(|i| TwoSiteGate { left: 2 * i + parity, matrix: haar_unitary(d2, &mut rng) })
            .collect()
    };
    let l1 = layer(0);
    let l2 = layer(1);
    brickwork_qca(chain, &l1, &l2)
}

/// Unitary on `k` sites commuting with `μ_g^{⊗k}`: independent Haar blocks
/// inside every isotypic component.
pub fn random_symmetric_gate(rep: &OnsiteRep, k: usize, seed: u64) -> Result<DenseOperator> {
    if k == 0 {
        return domain("gate needs at least one site");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let bases = rep.isotypic_bases(k);
    let dim = bases[0].nrows();
    let mut v = Matrix::from_element(dim, dim, ZERO);
    for b in &bases {
        if b.ncols() == 0 {
            continue;
        }
        let h = haar_unitary(b.ncols(), &mut rng);
        v += b * h * b.adjoint();
    }
    DenseOperator::new((0..k).collect(), vec![rep.dim(); k], v)
}

/// Brickwork of independent symmetric gates.
pub fn symmetric_brickwork(chain: ChainSpec, rep: &OnsiteRep, seed: u64) -> Result<Qca> {
    if rep.dim() != chain.d() {
        return domain("representation dimension differs from the local dimension");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut layer = |parity: usize| -> Result<Vec<TwoSiteGate>> {
        (0..chain.n_sites() / 2)
            .map(|i| {
                let g = random_symmetric_gate(rep, 2, rng.next_u64())?;
                Ok(TwoSiteGate { left: 2 * i + parity, matrix: g.into_matrix() })
            })
            .collect()
    };
    let l1 = layer(0)?;
    let l2 = layer(1)?;
    brickwork_qca(chain, &l1, &l2)
}

/// Symmetric circuit whose boundary operators have prescribed spectra.
///
/// The second layer uses `V` with `V†(μ₁⊗μ₁)V = L⊗R` on pairs `(2i−1, 2i)`;
/// the first layer uses `V'` with `V'†(R⊗L)V' = μ₁⊗μ₁` on pairs `(2i, 2i+1)`,
/// which restores the global symmetry. For the interval `[1, 2]` the
/// conjugated restricted symmetry is then `L_g ⊗ R_g` with `R_g` spectrally
/// `R^g ⊗ 1` on sites `2, 3`.
pub fn spi_example_circuit(n_sites: usize, rep: &OnsiteRep, left: &RepSpectrum, right: &RepSpectrum) -> Result<Qca> {
    let order = rep.order();
    if left.order() != order || right.order() != order {
        return domain("target spectra belong to a different group");
    }
    let d = rep.dim();
    if left.dim() != d as u64 || right.dim() != d as u64 {
        return domain("target spectra must have the on-site dimension");
    }
    let mu = RepSpectrum::of_unitary(rep.mu1(), order, 1e-8)?;
    let mu2 = mu.kron(&mu)?;
    if left.kron(right)? != mu2 {
        return Err(QcaError::SpectrumObstruction(format!(
            "spectrum of L⊗R {} differs from that of μ⊗μ {}",
            left.kron(right)?,
            mu2
        )));
    }
    let bases = rep.isotypic_bases(2);
    let d2 = d * d;

    // columns of V: eigenvectors of μ⊗μ, ordered like the diagonal of L⊗R
    let lr: Vec<usize> = kron_exponents(left, right);
    let mut next = vec![0usize; order];
    let mut v = Matrix::from_element(d2, d2, ZERO);
    for (k, &r) in lr.iter().enumerate() {
        v.set_column(k, &bases[r].column(next[r]));
        next[r] += 1;
    }

    // V' = Π E† where E lists the eigenvectors and Π matches R⊗L to them
    let rl: Vec<usize> = kron_exponents(right, left);
    let mut e = Matrix::from_element(d2, d2, ZERO);
    let mut labels = Vec::with_capacity(d2);
    for (r, b) in bases.iter().enumerate() {
        for c in 0..b.ncols() {
            e.set_column(labels.len(), &b.column(c));
            labels.push(r);
        }
    }
    let mut pi = Matrix::from_element(d2, d2, ZERO);
    let mut taken = vec![false; d2];
    for (k, &r) in labels.iter().enumerate() {
        let j = (0..d2)
            .find(|&j| !taken[j] && rl[j] == r)
            .expect("spectra were checked to agree");
        taken[j] = true;
        pi[(j, k)] = C64::new(1.0, 0.0);
    }
    let v_prime = pi * e.adjoint();

    let chain = ChainSpec::new(n_sites, d)?;
    brickwork_qca(chain, &uniform_layer(&chain, 0, &v_prime), &uniform_layer(&chain, 1, &v))
}

fn kron_exponents(a: &RepSpectrum, b: &RepSpectrum) -> Vec<usize> {
    let n = a.order();
    let eb = b.exponents();
    a.exponents()
        .iter()
        .flat_map(|&r| eb.iter().map(move |&s| (r + s) % n))
        .collect()
}
