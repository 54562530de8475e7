//! Two copies of an automaton and the SWAP between them.
//!
//! `U⊗U` commutes with the global copy-exchange, so restricting the exchange
//! to an interval and conjugating leaves boundary operators whose traces
//! give the index of `U`. The doubled operators are never formed: with
//! `SWAP_A = d^{-|A|} Σ_b P_b ⊗ P_b†` and `Q_a = U†P_aU`,
//!
//! `(U⊗U)† SWAP_A (U⊗U) SWAP_A = d^{-2|A|} Σ_{a,b} Q_aP_b ⊗ Q_a†P_b†`,
//!
//! and every boundary quantity is a sum of single-copy partial traces.
//! Doubled operators are returned with site `i` carrying both copies of site
//! `i`, copy 1 the more significant factor.

use crate::error::{domain, QcaError, Result};
use crate::gnvw::{raw_index, rational_snap, EtaMethod, RationalIndex};
use crate::qca::{Interval, OnsiteRep, Qca};
use crate::spi::{boundary_window, site_weights, SUPPORT_TOLERANCE};
use crate::tensor::{
    apply_left, frobenius_sq, matmul, permutation_operator, DenseOperator, Matrix, Monomial, SiteBasis, C64,
};

/// Largest `d^{4|A|}·D²·(l² + r²)` accepted, with `l`, `r` the single-copy
/// dimensions of the two arcs.
const WORK_BUDGET: f64 = 4.0e9;

/// Largest number of matrix entries held by the single-copy terms of `X'`.
const TERM_BUDGET: f64 = 3.2e7;

/// Largest accepted `1 − |tr_n(X'(L⊗R)†)|` for the boundary split.
pub const SPLIT_TOLERANCE: f64 = 1e-8;

/// Boundary operators of the restricted copy-exchange.
#[derive(Clone, Debug)]
pub struct BoundaryOps {
    pub a: Interval,
    pub b: Interval,
    pub y_al: DenseOperator,
    pub y_ar: DenseOperator,
    pub y_bl: DenseOperator,
    pub y_br: DenseOperator,
    /// Phase of `tr_n(X'(L⊗R)†)` for the interval `A`, with `L`, `R` phased so
    /// that `Tr(Y_AL SWAP_AL)` and `Tr(SWAP_AR Y_AR)` are real positive.
    pub theta: f64,
    /// Largest `1 − |tr_n(X'(L⊗R)†)|` over both intervals.
    pub residual: f64,
}

/// One side of the computation for a single interval.
#[derive(Clone, Debug)]
struct Edges {
    y_left: DenseOperator,
    y_right: DenseOperator,
    /// `|tr_n(Y_L SWAP_L)| / tr_n(SWAP_L)`.
    left_ratio: f64,
    /// `|tr_n(SWAP_R Y_R)| / tr_n(SWAP_R)`, i.e. `|tr_n(R₁)/tr_n(U_{1,R})|`.
    right_ratio: f64,
    theta: f64,
    residual: f64,
}

/// The index through the doubled system.
#[derive(Clone, Debug)]
pub struct DoubledIndex {
    /// `|Tr(Y_AL SWAP_AL)/Tr(SWAP_AL)|`, snapped.
    pub index: RationalIndex,
    pub raw: f64,
    /// `|Tr(R₁)/Tr(U_{1,R})|` for the copy-exchange, expected `1/ind`.
    pub inverse_raw: f64,
    pub residual: f64,
}

fn reordered(m: Matrix, dims: &[usize], order: &[usize]) -> Result<Matrix> {
    Ok(DenseOperator::new((0..dims.len()).collect(), dims.to_vec(), m)?.reorder(order)?.into_matrix())
}

/// Sites where `X'` acts nontrivially. Outside `A` that is where `U†𝒜U`
/// reaches, i.e. sites `j` with `U O_j U†` touching `A`; inside `A` the same
/// holds with `A` and its complement exchanged, since the global
/// copy-exchange commutes with `U⊗U`.
fn doubled_support(m: &Matrix, dims: &[usize], a_sites: &[usize]) -> Result<Vec<bool>> {
    let n = dims.len();
    let d = dims[0];
    let md = m.adjoint();
    let gens = [Monomial::clock_shift(d, 1, 0), Monomial::clock_shift(d, 0, 1)];
    (0..n)
        .map(|j| {
            let inside = a_sites.contains(&j);
            for g in &gens {
                let v = matmul(m, &g.apply_left(&md, &[j], dims));
                let op = DenseOperator::new((0..n).collect(), dims.to_vec(), v)?;
                let weights = site_weights(&op)?;
                if weights.iter().enumerate().any(|(s, &w)| w > SUPPORT_TOLERANCE && a_sites.contains(&s) != inside) {
                    return Ok(true);
                }
            }
            Ok(false)
        })
        .collect()
}

/// SWAP between the two copies of the positions `swapped`, for a register of
/// `k` sites per copy in copy-major order.
fn copy_swap(k: usize, d: usize, swapped: &[usize]) -> Result<Matrix> {
    let perm: Vec<usize> = (0..2 * k)
        .map(|p| {
            let (copy, pos) = (p / k, p % k);
            if swapped.contains(&pos) {
                (1 - copy) * k + pos
            } else {
                p
            }
        })
        .collect();
    permutation_operator(&perm, &vec![d; 2 * k])
}

/// Copy-major `(c1 sites…, c2 sites…)` to site-major `((c1,c2) per site)`.
fn interleave(m: Matrix, sites: &[usize], d: usize) -> Result<DenseOperator> {
    let k = sites.len();
    let op = DenseOperator::new((0..2 * k).collect(), vec![d; 2 * k], m)?;
    let order: Vec<usize> = (0..k).flat_map(|i| [i, k + i]).collect();
    let m = op.reorder(&order)?.into_matrix();
    DenseOperator::new(sites.to_vec(), vec![d * d; k], m)
}

fn partial_trace_block(m: &Matrix, outer: usize, inner: usize, keep_outer: bool) -> Matrix {
    if keep_outer {
        Matrix::from_fn(outer, outer, |i, j| (0..inner).map(|t| m[(i * inner + t, j * inner + t)]).sum())
    } else {
        Matrix::from_fn(inner, inner, |i, j| (0..outer).map(|t| m[(t * inner + i, t * inner + j)]).sum())
    }
}

/// `Tr[(E⊗F)(Lᵈ⊗Rᵈ)]` for single-copy `E`, `F` ordered (left arc, right
/// arc) and fixed copy-major doubled arc operators `Lᵈ`, `Rᵈ`.
struct PairTrace {
    l: usize,
    r: usize,
    // Lᵈ as [(l1 l1'), (l2' l2)], Rᵈ as [(r1 r1'), (r2 r2')] transposed
    ld_t: Matrix,
    rd_t: Matrix,
}

impl PairTrace {
    fn new(ld: &Matrix, rd: &Matrix, l: usize, r: usize) -> Self {
        let ld_t = Matrix::from_fn(l * l, l * l, |row, col| {
            let (l1, l1p) = (row / l, row % l);
            let (l2p, l2) = (col / l, col % l);
            ld[(l1p * l + l2p, l1 * l + l2)]
        });
        let rd_t = Matrix::from_fn(r * r, r * r, |row, col| {
            let (r1, r1p) = (row / r, row % r);
            let (r2, r2p) = (col / r, col % r);
            rd[(r1p * r + r2p, r1 * r + r2)]
        });
        PairTrace { l, r, ld_t, rd_t }
    }

    fn eval(&self, e: &Matrix, f: &Matrix) -> C64 {
        let (l, r) = (self.l, self.r);
        let e_t = Matrix::from_fn(r * r, l * l, |row, col| {
            let (r1, r1p) = (row / r, row % r);
            let (l1, l1p) = (col / l, col % l);
            e[(l1 * r + r1, l1p * r + r1p)]
        });
        let f_t = Matrix::from_fn(l * l, r * r, |row, col| {
            let (l2p, l2) = (row / l, row % l);
            let (r2, r2p) = (col / r, col % r);
            f[(l2 * r + r2, l2p * r + r2p)]
        });
        // Σ (E~ Lᵈ~ F~) ∘ Rᵈ~, contracted on the smaller side first
        if l <= r {
            let t = matmul(&matmul(&e_t, &self.ld_t), &f_t);
            t.component_mul(&self.rd_t).sum()
        } else {
            let t = matmul(&f_t, &self.rd_t.transpose());
            matmul(&t, &e_t).component_mul(&self.ld_t.transpose()).sum()
        }
    }
}

/// `Σ_k x_k ⊗ y_k` for equally sized square `x_k`, `y_k`, as one product.
fn sum_of_krons(xs: &[Matrix], ys: &[Matrix]) -> Matrix {
    let k = xs[0].nrows();
    let stack = |ms: &[Matrix]| Matrix::from_fn(k * k, ms.len(), |i, c| ms[c][(i / k, i % k)]);
    let p = matmul(&stack(xs), &stack(ys).transpose());
    // P[(i i'), (j j')] → M[(i j), (i' j')]
    Matrix::from_fn(k * k, k * k, |row, col| {
        let (i, j) = (row / k, row % k);
        let (ip, jp) = (col / k, col % k);
        p[(i * k + ip, j * k + jp)]
    })
}

fn edges(u: &Qca, a: Interval) -> Result<Edges> {
    let chain = *u.chain();
    let n = chain.n_sites();
    let d = chain.d();
    a.validate(&chain)?;
    if a.len() < 2 || a.len() + 2 > n {
        return domain(format!("interval {a} must have at least two sites and leave two outside"));
    }
    let dim = chain.dense_dim()?;
    let pairs = (d as f64).powi(4 * a.len() as i32);
    if 2.0 * pairs * (dim as f64).powi(2) > TERM_BUDGET {
        return Err(QcaError::Budget(format!("doubled boundary extraction for {a} needs too many terms")));
    }

    // E = Q_a P_b = (P_b† Q_a†)†, F = Q_a† P_b† = (P_b Q_a)†
    let dims = chain.dims();
    let m = u.matrix()?;
    let a_sites = a.sites(&chain);
    let basis = SiteBasis::new(d).products(a.len());
    let mut terms: Vec<(Matrix, Matrix)> = Vec::with_capacity(basis.len() * basis.len());
    let mut q_terms: Vec<(Matrix, Matrix)> = Vec::with_capacity(basis.len());
    let md = m.adjoint();
    for pa in &basis {
        let q = matmul(&md, &pa.apply_left(&m, &a_sites, &dims));
        let qd = q.adjoint();
        q_terms.push((q.clone(), qd.clone()));
        for pb in &basis {
            let pb = pb.to_matrix();
            let mut e = qd.clone();
            apply_left(&mut e, &pb.adjoint(), &a_sites, &dims);
            let mut f = q.clone();
            apply_left(&mut f, &pb, &a_sites, &dims);
            terms.push((e.adjoint(), f.adjoint()));
        }
    }

    // the window of X' around A, then the remaining gap, in ring order
    let mut marked = doubled_support(&m, &dims, &a_sites)?;
    for &s in &a_sites {
        marked[s] = true;
    }
    let window = boundary_window(&marked, &a_sites);
    let mut order = window.clone();
    let first_gap = (window[window.len() - 1] + 1) % n;
    order.extend((0..n).map(|k| (first_gap + k) % n).filter(|s| !window.contains(s)));
    let reorder_all = |ts: Vec<(Matrix, Matrix)>| -> Result<Vec<(Matrix, Matrix)>> {
        ts.into_iter().map(|(e, f)| Ok((reordered(e, &dims, &order)?, reordered(f, &dims, &order)?))).collect()
    };
    let terms = reorder_all(terms)?;
    let q_terms = reorder_all(q_terms)?;
    let a_pos: Vec<usize> = a_sites.iter().map(|s| order.iter().position(|x| x == s).unwrap()).collect();

    let mid = a_pos[a.len() / 2];
    let work = |nl: usize| {
        let (l, r) = (d.pow(nl as u32) as f64, d.pow((n - nl) as u32) as f64);
        pairs * (l.powi(4) + r.powi(4))
    };
    let mut cuts: Vec<usize> = (1..window.len()).filter(|&nl| work(nl) <= WORK_BUDGET).collect();
    if cuts.is_empty() {
        return Err(QcaError::Budget(format!(
            "doubled boundary extraction for {a} needs ~{:.1e} operations",
            work(mid)
        )));
    }
    cuts.sort_by_key(|&nl| (nl.abs_diff(mid), nl));

    let mut best = f64::INFINITY;
    let terms = Terms { pairs: &terms, halves: &q_terms, half_norm: (d as f64).powi(a.len() as i32) };
    for nl in cuts {
        match split_at(&terms, &a_pos, nl, n, d) {
            Ok(split) if split.residual <= SPLIT_TOLERANCE => {
                return Ok(Edges {
                    y_left: interleave(split.y_left, &order[..nl], d)?,
                    y_right: interleave(split.y_right, &order[nl..], d)?,
                    left_ratio: split.left_ratio,
                    right_ratio: split.right_ratio,
                    theta: split.theta,
                    residual: split.residual,
                });
            }
            Ok(split) => best = best.min(split.residual),
            Err(QcaError::LocalityViolation(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Err(QcaError::LocalityViolation(format!(
        "restricted copy-exchange on {a} does not split into two edges (best defect {best:.3e})"
    )))
}

struct ArcSplit {
    y_left: Matrix,
    y_right: Matrix,
    left_ratio: f64,
    right_ratio: f64,
    theta: f64,
    residual: f64,
}

/// `X' = W·SWAP_A` with `W = d^{-|A|} Σ_a Q_a ⊗ Q_a†`, in the arc order.
struct Terms<'a> {
    /// `(Q_aP_b, Q_a†P_b†)`, whose sum over `a, b` is `d^{2|A|} X'`.
    pairs: &'a [(Matrix, Matrix)],
    /// `(Q_a, Q_a†)`.
    halves: &'a [(Matrix, Matrix)],
    /// `d^{|A|}`.
    half_norm: f64,
}

/// `X' = L ⊗ R` with `L` on the first `nl` sites of the arc order.
fn split_at(terms: &Terms, a_pos: &[usize], nl: usize, n: usize, d: usize) -> Result<ArcSplit> {
    let l = d.pow(nl as u32);
    let r = d.pow((n - nl) as u32);
    let dim = (l * r) as f64;
    let traced = |keep_left: bool| -> (Vec<Matrix>, Vec<Matrix>) {
        terms
            .pairs
            .iter()
            .map(|(e, f)| (partial_trace_block(e, l, r, keep_left), partial_trace_block(f, l, r, keep_left)))
            .unzip()
    };
    let (el, fl) = traced(true);
    let m_left = sum_of_krons(&el, &fl);
    let (er, fr) = traced(false);
    let m_right = sum_of_krons(&er, &fr);
    let al: Vec<usize> = a_pos.iter().copied().filter(|&p| p < nl).collect();
    let ar: Vec<usize> = a_pos.iter().copied().filter(|&p| p >= nl).map(|p| p - nl).collect();
    let swap_l = copy_swap(nl, d, &al)?;
    let swap_r = copy_swap(n - nl, d, &ar)?;

    // scale to unit normalised norm, phase so that Tr(x·SWAP) > 0
    let unit = |x: Matrix, swap: &Matrix| -> Result<(Matrix, f64)> {
        let k = x.nrows() as f64;
        let s = (frobenius_sq(&x) / k).sqrt();
        if s < 1e-12 {
            return Err(QcaError::LocalityViolation("boundary operator vanishes".into()));
        }
        let x = x / C64::new(s, 0.0);
        let t = matmul(&x, swap).trace();
        let phase = if t.norm() > 1e-12 { t / t.norm() } else { C64::new(1.0, 0.0) };
        let ratio = t.norm() / k / (swap.trace().re / k);
        Ok((x * phase.conj(), ratio))
    };
    let (y_l, left_ratio) = unit(m_left, &swap_l)?;
    // R = SWAP_R Y_R SWAP_R carries the right edge of X'
    let (rr, right_ratio) = unit(m_right, &swap_r)?;
    let y_r = matmul(&matmul(&swap_r, &rr), &swap_r);

    // tr(W·SWAP_A·(L⊗R)†) = tr(W·(SWAP_L L†)⊗(SWAP_R R†))
    let pt = PairTrace::new(&matmul(&swap_l, &y_l.adjoint()), &matmul(&swap_r, &rr.adjoint()), l, r);
    let overlap: C64 =
        terms.halves.iter().map(|(q, qd)| pt.eval(q, qd)).sum::<C64>() / (terms.half_norm * dim * dim);
    Ok(ArcSplit {
        y_left: y_l,
        y_right: y_r,
        left_ratio,
        right_ratio,
        theta: overlap.arg(),
        residual: (1.0 - overlap.norm()).max(0.0),
    })
}

/// The boundary operators `Y_AL, Y_AR` of `A` and `Y_BL, Y_BR` of the
/// interval `B` of equal length following it.
pub fn extract_boundary_ops(u: &Qca, a: Interval) -> Result<BoundaryOps> {
    let b = a.next(a.len(), u.chain());
    let ea = edges(u, a)?;
    let eb = edges(u, b)?;
    Ok(BoundaryOps {
        a,
        b,
        y_al: ea.y_left,
        y_ar: ea.y_right,
        y_bl: eb.y_left,
        y_br: eb.y_right,
        theta: ea.theta,
        residual: ea.residual.max(eb.residual),
    })
}

impl BoundaryOps {
    /// `min_φ ‖Y_AR − e^{iφ} Y_BL†‖` (max norm), after padding both to a
    /// common support.
    pub fn right_left_mismatch(&self) -> Result<f64> {
        let bl_dag = self.y_bl.dagger();
        let ar = &self.y_ar;
        let prod = ar.mul(&self.y_bl)?;
        let t = prod.normalized_trace();
        let phase = if t.norm() > 1e-12 { t / t.norm() } else { C64::new(1.0, 0.0) };
        ar.max_diff(&bl_dag.scale(phase))
    }
}

/// `ind(U) = |Tr(Y_AL SWAP_AL) / Tr(SWAP_AL)|`, snapped to a ratio of powers
/// of `d`.
pub fn index_via_doubled(u: &Qca, a: Interval) -> Result<DoubledIndex> {
    let e = edges(u, a)?;
    let chain = u.chain();
    let index = rational_snap(e.left_ratio, chain.d() as u64, 2 * chain.n_sites() as u32)?;
    Ok(DoubledIndex { index, raw: e.left_ratio, inverse_raw: e.right_ratio, residual: e.residual })
}

/// `π₀(U⊗U)` from the overlaps of the two copies, which factorise:
/// `η_{U⊗U}(A, B) = η_U(A, B)²`.
pub fn doubled_pi0(u: &Qca, a: Interval, b: Interval) -> Result<RationalIndex> {
    let raw = raw_index(u, a, b, EtaMethod::Swap)?;
    let chain = u.chain();
    rational_snap(raw * raw, chain.d() as u64, 4 * chain.n_sites() as u32)
}

/// The copy-exchange on one doubled site, as a ℤ₂ representation of
/// dimension `d²`.
pub fn copy_exchange(d: usize) -> Result<OnsiteRep> {
    if d < 2 {
        return domain("local dimension must be at least 2");
    }
    OnsiteRep::new(2, permutation_operator(&[1, 0], &[d, d])?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gnvw::gnvw_index;
    use crate::qca::{random_brickwork, shift_qca, ChainSpec};
    use crate::spi::z2_indices;

    #[test]
    fn identity_has_trivial_boundaries() {
        let u = Qca::identity(ChainSpec::new(4, 2).unwrap()).unwrap();
        let ops = extract_boundary_ops(&u, Interval::new(0, 2)).unwrap();
        for y in [&ops.y_al, &ops.y_ar, &ops.y_bl, &ops.y_br] {
            let id = Matrix::identity(y.dim(), y.dim());
            assert!(crate::tensor::max_norm(&(y.matrix() - id)) < 1e-10);
        }
        assert!(ops.theta.abs() < 1e-10);
        assert_eq!(index_via_doubled(&u, Interval::new(0, 2)).unwrap().index.to_string(), "1/1");
    }

    #[test]
    fn shift_boundary_is_a_swap() {
        let u = shift_qca(ChainSpec::new(6, 2).unwrap(), 1).unwrap();
        let a = Interval::new(1, 2);
        let ops = extract_boundary_ops(&u, a).unwrap();
        // Y_AL = SWAP on the leftmost site of A
        let swap = copy_exchange(2).unwrap().mu1().clone();
        let want = DenseOperator::new(vec![1], vec![4], swap).unwrap();
        assert!(ops.y_al.max_diff(&want).unwrap() < 1e-10);
        assert!(ops.right_left_mismatch().unwrap() < 1e-8);
        let di = index_via_doubled(&u, a).unwrap();
        assert_eq!(di.index.to_string(), "2/1");
        assert!((di.inverse_raw - 0.5).abs() < 1e-10);
    }

    #[test]
    fn agrees_with_overlap_index_on_random_automata() {
        let chain = ChainSpec::new(6, 2).unwrap();
        for seed in 0..2 {
            let u = shift_qca(chain, 1).unwrap().compose(&random_brickwork(chain, seed).unwrap()).unwrap();
            let a = Interval::new(0, 2);
            let b = a.next(2, &chain);
            let g = gnvw_index(&u, a, b).unwrap();
            let di = index_via_doubled(&u, a).unwrap();
            assert_eq!(di.index.ratio(), g.ratio(), "seed {seed}");
            assert_eq!(doubled_pi0(&u, a, b).unwrap().ratio(), g.ratio() * g.ratio());
        }
    }

    #[test]
    fn dense_doubled_oracle() {
        let chain = ChainSpec::new(4, 2).unwrap();
        let u = shift_qca(chain, 1).unwrap();
        let uu = u.stack(&u).unwrap();
        let z = z2_indices(&uu, &copy_exchange(2).unwrap(), Interval::new(1, 2)).unwrap();
        let di = index_via_doubled(&u, Interval::new(1, 2)).unwrap();
        assert_eq!(z.pi1.unwrap().ratio(), di.index.ratio());
        assert_eq!(z.pi0.ratio(), di.index.ratio() * di.index.ratio());
    }
}
