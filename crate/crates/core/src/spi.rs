//! Symmetry-protected indices of ℤ_N-symmetric automata.
//!
//! The restriction `U_{g,I}` of the on-site symmetry to an interval is
//! conjugated by the automaton; away from the interval edges the result
//! undoes the restriction, so `U†U_{g,I}U·U_{g,I}†` is supported near the two
//! edges and splits as `L ⊗ R` there. The indices are built from the traces
//! of the edge operators.

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{domain, QcaError, Result};
use crate::gnvw::{gnvw_index_auto, rational_snap, RationalIndex};
use crate::qca::{ChainSpec, Interval, OnsiteRep, Qca};
use crate::tensor::{
    apply_left, frobenius_sq, kron_all, matmul, max_norm, phase_anchor, rank1_factorize, DenseOperator, Matrix,
    C64,
};

/// Largest accepted `‖[U, U_g]‖` (max norm) for the symmetry check.
pub const SYMMETRY_TOLERANCE: f64 = 1e-8;

/// Sites whose squared relative weight exceeds this belong to a support.
pub(crate) const SUPPORT_TOLERANCE: f64 = 1e-12;

/// Traces below this make a trace ratio undefined.
pub const TRACE_FLOOR: f64 = 1e-10;

/// `U_{g,I} = μ_g^{⊗|I|}` on an interval of even length.
pub fn restrict_symmetry(rep: &OnsiteRep, chain: &ChainSpec, interval: Interval, g: usize) -> Result<DenseOperator> {
    check_dims(chain, rep)?;
    interval.validate(chain)?;
    if interval.len() % 2 != 0 {
        return domain(format!("interval {interval} has odd length"));
    }
    Ok(onsite_product(rep, &interval.sites(chain), g))
}

/// `μ_g` on every site of `sites`, as an operator on those sites.
pub(crate) fn onsite_product(rep: &OnsiteRep, sites: &[usize], g: usize) -> DenseOperator {
    let mu = rep.mu(g);
    let m = kron_all(sites.iter().map(|_| mu));
    DenseOperator::new(sites.to_vec(), vec![rep.dim(); sites.len()], m).expect("dimensions match by construction")
}

/// `max ‖U U_g − U_g U‖` over the generator `g = 1`.
pub fn symmetry_defect(u: &Qca, rep: &OnsiteRep) -> Result<f64> {
    check_dims(u.chain(), rep)?;
    let m = u.matrix()?;
    let dims = u.chain().dims();
    let n = dims.len();
    let mut left = m.clone().into_owned();
    let mut right = m.adjoint();
    let mu_dag = rep.mu1().adjoint();
    for s in 0..n {
        apply_left(&mut left, rep.mu1(), &[s], &dims);
        apply_left(&mut right, &mu_dag, &[s], &dims);
    }
    Ok(max_norm(&(left - right.adjoint())))
}

fn check_dims(chain: &ChainSpec, rep: &OnsiteRep) -> Result<()> {
    if rep.dim() != chain.d() {
        return domain(format!(
            "representation has dimension {} but sites have dimension {}",
            rep.dim(),
            chain.d()
        ));
    }
    Ok(())
}

fn check_symmetric(u: &Qca, rep: &OnsiteRep) -> Result<()> {
    let defect = symmetry_defect(u, rep)?;
    if defect > SYMMETRY_TOLERANCE {
        return Err(QcaError::NotSymmetric { defect });
    }
    Ok(())
}

/// Boundary factors of one group element.
#[derive(Clone, Debug)]
pub struct LrFactor {
    pub g: usize,
    /// `L_g`, acting on the left part of the boundary window.
    pub left: DenseOperator,
    /// `R_g`, acting on the right part of the boundary window.
    pub right: DenseOperator,
    /// Interval sites covered by `left`.
    pub interval_left: Vec<usize>,
    /// Interval sites covered by `right`.
    pub interval_right: Vec<usize>,
    /// Operator-Schmidt residual of the split.
    pub residual: f64,
}

impl LrFactor {
    /// The same decomposition with `L → e^{iφ}L`, `R → e^{−iφ}R`.
    pub fn rephased(&self, phi: f64) -> LrFactor {
        let p = C64::from_polar(1.0, phi);
        LrFactor {
            left: self.left.scale(p),
            right: self.right.scale(p.conj()),
            ..self.clone()
        }
    }

    /// `tr_n(R_g) / tr_n(U_{g,I_R})`, with `tr_n` the normalised trace.
    pub fn right_ratio(&self, rep: &OnsiteRep) -> Result<C64> {
        let restricted = local_trace(rep, self.g).powu(self.interval_right.len() as u32);
        if restricted.norm() < TRACE_FLOOR {
            return Err(QcaError::UndefinedSpi(format!("restricted symmetry for g = {} is traceless", self.g)));
        }
        Ok(self.right.normalized_trace() / restricted)
    }
}

fn local_trace(rep: &OnsiteRep, g: usize) -> C64 {
    rep.character(g) / rep.dim() as f64
}

/// Edge decomposition of `U†U_{g,I}U` for every nontrivial `g`.
#[derive(Clone, Debug)]
pub struct LrDecomposition {
    pub interval: Interval,
    /// Entry `k` belongs to `g = k + 1`.
    pub factors: Vec<LrFactor>,
}

impl LrDecomposition {
    pub fn factor(&self, g: usize) -> Result<&LrFactor> {
        if g == 0 || g > self.factors.len() {
            return domain(format!("no factor stored for g = {g}"));
        }
        Ok(&self.factors[g - 1])
    }
}

/// Splits `U†U_{g,I}U = L_g ⊗ R_g` for `g = 1, …, N−1`.
///
/// `L_g` collects the left edge and `R_g` the right edge, each including the
/// part of `U_{g,I}` it covers. The common phase is fixed by making `Tr R_g`
/// real and nonnegative (or, when it vanishes, its largest entry real
/// positive); `L_g` carries the inverse phase.
pub fn lr_decompose(u: &Qca, rep: &OnsiteRep, interval: Interval) -> Result<LrDecomposition> {
    let chain = *u.chain();
    check_dims(&chain, rep)?;
    interval.validate(&chain)?;
    if interval.len() % 2 != 0 {
        return domain(format!("interval {interval} has odd length"));
    }
    if interval.len() < 2 || interval.len() + 2 > chain.n_sites() {
        return domain(format!("interval {interval} must have at least two sites and leave two outside"));
    }
    check_symmetric(u, rep)?;
    let factors = (1..rep.order())
        .map(|g| split_restricted(u, rep, interval, g))
        .collect::<Result<Vec<_>>>()?;
    Ok(LrDecomposition { interval, factors })
}

fn split_restricted(u: &Qca, rep: &OnsiteRep, interval: Interval, g: usize) -> Result<LrFactor> {
    let chain = u.chain();
    let dims = chain.dims();
    let sites = interval.sites(chain);
    let m = u.matrix()?;
    let mu = rep.mu(g);

    // X' = U† U_{g,I} U U_{g,I}†, with X'† = U_{g,I} U† U_{g,I}† U
    let mut gu = m.clone().into_owned();
    for &s in &sites {
        apply_left(&mut gu, mu, &[s], &dims);
    }
    let mut xd = matmul(&m.adjoint(), &gu).adjoint();
    for &s in &sites {
        apply_left(&mut xd, mu, &[s], &dims);
    }
    let x = DenseOperator::new((0..dims.len()).collect(), dims.clone(), xd.adjoint())?;

    let split = split_boundary(&x, &sites, chain.n_sites())?;
    let (w_left, w_right) = split.window.split_at(split.cut);
    let interval_left: Vec<usize> = sites.iter().copied().filter(|s| w_left.contains(s)).collect();
    let interval_right: Vec<usize> = sites.iter().copied().filter(|s| w_right.contains(s)).collect();
    if interval_left.len() + interval_right.len() != sites.len() {
        return domain(format!("interval {interval} is not inside the boundary window"));
    }
    let left = split.left.mul(&onsite_product(rep, &interval_left, g))?;
    let right = split.right.mul(&onsite_product(rep, &interval_right, g))?;
    let (left, right) = fix_phase(left, right);
    Ok(LrFactor { g, left, right, interval_left, interval_right, residual: split.residual })
}

pub(crate) fn fix_phase(left: DenseOperator, right: DenseOperator) -> (DenseOperator, DenseOperator) {
    let anchor = phase_anchor(right.matrix());
    if anchor.norm() == 0.0 {
        return (left, right);
    }
    let p = C64::from_polar(1.0, anchor.arg());
    (left.scale(p), right.scale(p.conj()))
}

/// A rank-one split of an operator restricted to its boundary window.
pub(crate) struct BoundarySplit {
    /// Window sites in ring order.
    pub window: Vec<usize>,
    /// `window[..cut]` carries `left`.
    pub cut: usize,
    pub left: DenseOperator,
    pub right: DenseOperator,
    pub residual: f64,
}

/// `1 − ‖Tr_j X‖²/(d_j ‖X‖²)` for every site `j` of `x`'s support: zero
/// exactly when `X` acts trivially on `j`.
pub(crate) fn site_weights(x: &DenseOperator) -> Result<Vec<f64>> {
    let norm = frobenius_sq(x.matrix());
    let support = x.support().to_vec();
    (0..support.len())
        .map(|j| {
            let keep: Vec<usize> = support.iter().copied().filter(|&s| s != support[j]).collect();
            let t = x.partial_trace(&keep)?;
            Ok(1.0 - frobenius_sq(t.matrix()) / (x.dims()[j] as f64 * norm))
        })
        .collect()
}

/// Window around the interval: the ring minus the longest run of sites that
/// are neither in the interval nor in the support of `x`. With no such run
/// the whole ring is used, opened opposite the interval.
pub(crate) fn boundary_window(marked: &[bool], interval: &[usize]) -> Vec<usize> {
    let n = marked.len();
    let mut best: Option<(usize, usize)> = None;
    for start in 0..n {
        if marked[start] || !marked[(start + n - 1) % n] {
            continue;
        }
        let len = (0..n).take_while(|k| !marked[(start + k) % n]).count();
        if best.is_none_or(|(_, l)| len > l) {
            best = Some((start, len));
        }
    }
    match best {
        Some((start, len)) => (0..n - len).map(|k| (start + len + k) % n).collect(),
        None if marked.iter().all(|m| !m) => Vec::new(),
        None => {
            let outside = n - interval.len();
            let open = (interval[0] + interval.len() + outside / 2) % n;
            (0..n).map(|k| (open + k) % n).collect()
        }
    }
}

/// Splits `x` (supported on the whole ring) at the cut nearest the middle of
/// `interval` for which the restriction to the boundary window is a product.
pub(crate) fn split_boundary(x: &DenseOperator, interval: &[usize], n: usize) -> Result<BoundarySplit> {
    let weights = site_weights(x)?;
    let mut marked: Vec<bool> = weights.iter().map(|&w| w > SUPPORT_TOLERANCE).collect();
    for &s in interval {
        marked[s] = true;
    }
    debug_assert_eq!(marked.len(), n);
    let window = boundary_window(&marked, interval);
    let traced = x.dim() / x.dims().iter().zip(x.support()).filter(|(_, s)| window.contains(s)).map(|(d, _)| d).product::<usize>();
    let restricted = x.partial_trace(&window)?.scale(C64::new(1.0 / traced as f64, 0.0));

    let mid = interval[interval.len() / 2];
    let mid_pos = window.iter().position(|&s| s == mid).unwrap_or(window.len() / 2);
    let mut cuts: Vec<usize> = (1..window.len()).collect();
    cuts.sort_by_key(|&p| (p.abs_diff(mid_pos), p));
    let mut best_residual = f64::INFINITY;
    for cut in cuts {
        match rank1_factorize(&restricted, cut) {
            Ok(f) => {
                return Ok(BoundarySplit { window, cut, left: f.left, right: f.right, residual: f.residual });
            }
            Err(QcaError::NotFactorizable { residual }) => best_residual = best_residual.min(residual),
            Err(e) => return Err(e),
        }
    }
    Err(QcaError::NotFactorizable { residual: best_residual })
}

/// `ind_g = ind · |tr_n R_g / tr_n L_g|^{1/2}` from precomputed parts.
pub fn spi_from_parts(ind: f64, factor: &LrFactor) -> Result<f64> {
    let tl = factor.left.normalized_trace();
    if tl.norm() < TRACE_FLOOR {
        return Err(QcaError::UndefinedSpi(format!("Tr L vanishes for g = {}", factor.g)));
    }
    Ok(ind * (factor.right.normalized_trace().norm() / tl.norm()).sqrt())
}

/// `rind_g = ind · (tr_n R_g / tr_n U_{g,I_R})^{d_g}` with `d_g = N/gcd(g, N)`.
///
/// `g ↦ L_g ⊗ R_g` represents the group, so `R_g^{d_g} = c·1` with `|c| = 1`;
/// the phase of `R_g` is taken with `c = 1`. This makes the result
/// independent of any rephasing of the factors.
pub fn refined_spi_from_parts(ind: f64, factor: &LrFactor, rep: &OnsiteRep) -> Result<C64> {
    let n = rep.order();
    let d_g = n / factor.g.gcd(&n);
    let r = factor.right.matrix();
    let mut power = r.clone();
    for _ in 1..d_g {
        power = matmul(&power, r);
    }
    let c = power.trace() / power.nrows() as f64;
    let defect = max_norm(&(power - Matrix::identity(r.nrows(), r.ncols()) * c));
    if defect > 1e-6 {
        return domain(format!("R_g^{d_g} is not a multiple of the identity (defect {defect:.3e})"));
    }
    Ok(factor.right_ratio(rep)?.powu(d_g as u32) / c * ind)
}

fn checked_g(rep: &OnsiteRep, g: usize) -> Result<()> {
    if g >= rep.order() {
        return domain(format!("g must lie in 0..{}", rep.order()));
    }
    Ok(())
}

/// The symmetry-protected index `ind_g` of `u` on `interval`.
pub fn spi_g(u: &Qca, rep: &OnsiteRep, interval: Interval, g: usize) -> Result<f64> {
    checked_g(rep, g)?;
    let ind = gnvw_index_auto(u)?.index.float_value();
    if g == 0 {
        return Ok(ind);
    }
    let lr = lr_decompose(u, rep, interval)?;
    spi_from_parts(ind, lr.factor(g)?)
}

/// The refined index `rind_g`, a complex number.
pub fn refined_spi_g(u: &Qca, rep: &OnsiteRep, interval: Interval, g: usize) -> Result<C64> {
    checked_g(rep, g)?;
    let ind = gnvw_index_auto(u)?.index.float_value();
    if g == 0 {
        return Ok(C64::new(ind, 0.0));
    }
    let lr = lr_decompose(u, rep, interval)?;
    refined_spi_from_parts(ind, lr.factor(g)?, rep)
}

/// `z` as `p/q + (p'/q')i` with the smallest denominators `≤ max_denom`
/// reproducing each part to `tol`.
pub fn gaussian_rational_snap(z: C64, max_denom: i64, tol: f64) -> Option<(Ratio<i64>, Ratio<i64>)> {
    let snap = |x: f64| {
        (1..=max_denom).find_map(|q| {
            let p = (x * q as f64).round();
            ((x - p / q as f64).abs() <= tol).then(|| Ratio::new(p as i64, q))
        })
    };
    Some((snap(z.re)?, snap(z.im)?))
}

/// The pair `(π₀, π₁)` classifying a ℤ₂-symmetric automaton.
#[derive(Clone, Debug)]
pub struct Z2Indices {
    pub pi0: RationalIndex,
    /// `None` when `Tr μ = 0`, where `π₁` is not defined by a trace ratio.
    pub pi1: Option<RationalIndex>,
    pub pi1_raw: Option<f64>,
}

/// `π₁ = π₀ · |tr_n R₁ / tr_n U_{1,I_R}|`, snapped to a ratio of divisors of
/// powers of `d · max(|χ|, 1)` with `χ = Tr μ`.
pub fn z2_from_parts(pi0: RationalIndex, factor: &LrFactor, rep: &OnsiteRep, n_sites: usize) -> Result<Z2Indices> {
    if rep.order() != 2 || factor.g != 1 {
        return domain("ℤ₂ indices need an order-two representation and the g = 1 factor");
    }
    let chi = rep.character(1).re.round() as i64;
    let ratio = match factor.right_ratio(rep) {
        Ok(r) => r,
        Err(QcaError::UndefinedSpi(_)) => return Ok(Z2Indices { pi0, pi1: None, pi1_raw: None }),
        Err(e) => return Err(e),
    };
    let raw = pi0.float_value() * ratio.norm();
    let base = rep.dim() as u64 * chi.unsigned_abs().max(1);
    let pi1 = rational_snap(raw, base, 2 * n_sites as u32)?;
    Ok(Z2Indices { pi0, pi1: Some(pi1), pi1_raw: Some(raw) })
}

/// [`z2_from_parts`] with `π₀` from the index and the split computed here.
pub fn z2_indices(u: &Qca, rep: &OnsiteRep, interval: Interval) -> Result<Z2Indices> {
    if rep.order() != 2 {
        return domain("ℤ₂ indices need an order-two representation");
    }
    let pi0 = gnvw_index_auto(u)?.index;
    let lr = lr_decompose(u, rep, interval)?;
    z2_from_parts(pi0, lr.factor(1)?, rep, u.chain().n_sites())
}

/// `|Tr(U†U_{1,A}U·U_{1,B}) / Tr(U_{1,A}·U†U_{1,B}U)|^{1/2}` for adjacent
/// intervals `A`, `B` (ℤ₂ only).
pub fn z2_trace_formula(u: &Qca, rep: &OnsiteRep, a: Interval, b: Interval) -> Result<f64> {
    let chain = *u.chain();
    check_dims(&chain, rep)?;
    if rep.order() != 2 {
        return domain("the trace formula needs an order-two representation");
    }
    a.validate(&chain)?;
    b.validate(&chain)?;
    check_symmetric(u, rep)?;
    let dims = chain.dims();
    let m = u.matrix()?;
    let mu = rep.mu1();
    let sa = a.sites(&chain);
    let sb = b.sites(&chain);
    let conjugated = |sites: &[usize]| {
        let mut gu = m.clone().into_owned();
        for &s in sites {
            apply_left(&mut gu, mu, &[s], &dims);
        }
        matmul(&m.adjoint(), &gu)
    };
    let times_restricted = |mut x: Matrix, sites: &[usize]| {
        for &s in sites {
            apply_left(&mut x, mu, &[s], &dims);
        }
        x.trace() / x.nrows() as f64
    };
    let num = times_restricted(conjugated(&sa), &sb);
    let den = times_restricted(conjugated(&sb), &sa);
    if num.norm() < 1e-12 || den.norm() < 1e-12 {
        return Err(QcaError::UndefinedSpi("a trace in the ratio vanishes".into()));
    }
    Ok((num.norm() / den.norm()).sqrt())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classify::RepSpectrum;
    use crate::qca::{shift_qca, spi_example_circuit, symmetric_brickwork};

    fn z2(d_plus: usize, d_minus: usize) -> OnsiteRep {
        let e: Vec<i64> = std::iter::repeat_n(0, d_plus).chain(std::iter::repeat_n(1, d_minus)).collect();
        OnsiteRep::diagonal(2, &e).unwrap()
    }

    #[test]
    fn gaussian_snap() {
        let (re, im) = gaussian_rational_snap(C64::new(-1.0 + 1e-12, 0.5), 16, 1e-9).unwrap();
        assert_eq!((re, im), (Ratio::new(-1, 1), Ratio::new(1, 2)));
        assert!(gaussian_rational_snap(C64::new(std::f64::consts::PI, 0.0), 16, 1e-9).is_none());
    }

    #[test]
    fn restriction_of_z2() {
        let chain = ChainSpec::new(4, 2).unwrap();
        let r = restrict_symmetry(&z2(1, 1), &chain, Interval::new(1, 2), 1).unwrap();
        let diag: Vec<f64> = (0..4).map(|i| r.matrix()[(i, i)].re).collect();
        assert_eq!(diag, vec![1.0, -1.0, -1.0, 1.0]);
        assert!(restrict_symmetry(&z2(1, 1), &chain, Interval::new(1, 3), 1).is_err());
        let id = restrict_symmetry(&z2(1, 1), &chain, Interval::new(1, 2), 0).unwrap();
        assert_eq!(id.matrix(), &Matrix::identity(4, 4));
    }

    #[test]
    fn trace_product_identity() {
        let rep = OnsiteRep::diagonal(3, &[0, 1, 1]).unwrap();
        let l = RepSpectrum::new(vec![1, 0, 2]).unwrap();
        let u = spi_example_circuit(6, &rep, &l, &l).unwrap();
        let lr = lr_decompose(&u, &rep, Interval::new(1, 2)).unwrap();
        for f in &lr.factors {
            let lhs = f.left.normalized_trace() * f.right.normalized_trace();
            let rhs = local_trace(&rep, f.g).powu(2);
            assert!((lhs - rhs).norm() < 1e-10);
        }
    }

    #[test]
    fn window_skips_longest_gap() {
        let marked = [false, true, true, true, false, false];
        assert_eq!(boundary_window(&marked, &[1, 2]), vec![1, 2, 3]);
        let all = [true; 4];
        assert_eq!(boundary_window(&all, &[1, 2]), vec![0, 1, 2, 3]);
    }

    #[test]
    fn shift_z2_indices() {
        let u = shift_qca(ChainSpec::new(4, 4).unwrap(), 1).unwrap();
        let z = z2_indices(&u, &z2(3, 1), Interval::new(1, 2)).unwrap();
        assert_eq!(z.pi0.to_string(), "4/1");
        assert_eq!(z.pi1.unwrap().to_string(), "2/1");
    }

    #[test]
    fn traceless_symmetry_leaves_pi1_undefined() {
        let u = shift_qca(ChainSpec::new(4, 2).unwrap(), 1).unwrap();
        let z = z2_indices(&u, &z2(1, 1), Interval::new(1, 2)).unwrap();
        assert!(z.pi1.is_none());
    }

    #[test]
    fn identity_has_trivial_spi() {
        let rep = OnsiteRep::diagonal(3, &[0, 1, 1]).unwrap();
        let u = Qca::identity(ChainSpec::new(4, 3).unwrap()).unwrap();
        for g in 1..3 {
            assert!((spi_g(&u, &rep, Interval::new(1, 2), g).unwrap() - 1.0).abs() < 1e-10);
            assert!((refined_spi_g(&u, &rep, Interval::new(1, 2), g).unwrap() - 1.0).norm() < 1e-10);
        }
    }

    #[test]
    fn example_circuit_has_refined_index_minus_one() {
        let rep = OnsiteRep::diagonal(3, &[0, 1, 1]).unwrap();
        let l = RepSpectrum::new(vec![1, 0, 2]).unwrap();
        let u = spi_example_circuit(6, &rep, &l, &l).unwrap();
        let lr = lr_decompose(&u, &rep, Interval::new(1, 2)).unwrap();
        let f = lr.factor(1).unwrap();
        assert!(f.residual < 1e-8);
        assert!((spi_from_parts(1.0, f).unwrap() - 1.0).abs() < 1e-8);
        let rind = refined_spi_from_parts(1.0, f, &rep).unwrap();
        assert!((rind - C64::new(-1.0, 0.0)).norm() < 1e-8, "{rind}");
        for phi in [0.3, 2.0, 2.0 * std::f64::consts::PI / 3.0] {
            let r = refined_spi_from_parts(1.0, &f.rephased(phi), &rep).unwrap();
            assert!((r - rind).norm() < 1e-10);
        }
    }

    #[test]
    fn symmetric_brickwork_factors_are_unitary() {
        let rep = z2(1, 1);
        let u = symmetric_brickwork(ChainSpec::new(6, 2).unwrap(), &rep, 5).unwrap();
        let lr = lr_decompose(&u, &rep, Interval::new(1, 2)).unwrap();
        let f = lr.factor(1).unwrap();
        assert!(f.left.is_unitary(1e-8) && f.right.is_unitary(1e-8));
    }

    #[test]
    fn asymmetric_input_is_rejected() {
        let rep = z2(1, 1);
        let u = crate::qca::random_brickwork(ChainSpec::new(4, 2).unwrap(), 1).unwrap();
        assert!(matches!(lr_decompose(&u, &rep, Interval::new(1, 2)), Err(QcaError::NotSymmetric { .. })));
    }

    #[test]
    fn trace_formula_on_shift() {
        let u = shift_qca(ChainSpec::new(5, 4).unwrap(), 1).unwrap();
        let v = z2_trace_formula(&u, &z2(3, 1), Interval::new(0, 2), Interval::new(2, 2)).unwrap();
        assert!((v - 2.0).abs() < 1e-10, "{v}");
        let id = Qca::identity(ChainSpec::new(5, 4).unwrap()).unwrap();
        let w = z2_trace_formula(&id, &z2(3, 1), Interval::new(0, 2), Interval::new(2, 2)).unwrap();
        assert!((w - 1.0).abs() < 1e-12);
    }
}
