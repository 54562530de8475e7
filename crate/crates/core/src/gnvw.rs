//! The GNVW index from operator-algebra overlaps.

use num_integer::Integer;
use num_rational::Ratio;

use crate::error::{domain, QcaError, Result};
use crate::qca::{ChainSpec, Interval, Qca};
use crate::tensor::{frobenius_sq, reduced_product, Layout, Matrix, SiteBasis};

/// Relative tolerance accepted by [`rational_snap`].
pub const SNAP_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EtaMethod {
    /// Sum over clock-and-shift operators on `A` and `B`.
    Direct,
    /// Two-copy SWAP trace, evaluated as a Gram matrix of blocks of `U`.
    Swap,
}

/// `η(U†𝒜U, ℬ)`.
pub fn eta_overlap(u: &Qca, a: Interval, b: Interval, method: EtaMethod) -> Result<f64> {
    let chain = *u.chain();
    a.validate(&chain)?;
    b.validate(&chain)?;
    let m = u.matrix()?;
    let sa = a.sites(&chain);
    let sb = b.sites(&chain);
    Ok(match method {
        EtaMethod::Direct => eta_direct(&m, &chain, &sa, &sb),
        EtaMethod::Swap => eta_swap(&m, &chain, &sa, &sb),
    })
}

fn eta_direct(u: &Matrix, chain: &ChainSpec, a: &[usize], b: &[usize]) -> f64 {
    let dims = chain.dims();
    let dim = u.nrows() as f64;
    let basis = SiteBasis::new(chain.d());
    let ops_a = basis.products(a.len());
    let ops_b = basis.products(b.len());
    let mut total = 0.0;
    for pa in &ops_a {
        // Y = Tr_{B^c}(U† P_a U); tr(Q_a† P_b) = Tr(Y† P_b)/dim
        let pu = pa.apply_left(u, a, &dims);
        let y = reduced_product(u, &pu, &dims, b);
        total += ops_b.iter().map(|pb| pb.overlap(&y).norm_sqr()).sum::<f64>();
    }
    total.sqrt() / dim
}

fn eta_swap(u: &Matrix, chain: &ChainSpec, a: &[usize], b: &[usize]) -> f64 {
    let dims = chain.dims();
    let layout = Layout::new(&dims);
    let off_a = layout.offsets(a);
    let off_ac = layout.offsets(&layout.complement(a));
    let off_b = layout.offsets(b);
    let off_bc = layout.offsets(&layout.complement(b));
    // column (jA, kB) holds the block U[(jA, ·), (kB, ·)]
    let rows = off_ac.len() * off_bc.len();
    let cols = off_a.len() * off_b.len();
    let v = Matrix::from_fn(rows, cols, |r, c| {
        let (x, y) = (r / off_bc.len(), r % off_bc.len());
        let (ja, kb) = (c / off_b.len(), c % off_b.len());
        u[(off_a[ja] + off_ac[x], off_b[kb] + off_bc[y])]
    });
    // Tr(SWAP_A (U⊗U) SWAP_B (U⊗U)†) = ‖V†V‖_F²
    let gram = v.adjoint() * &v;
    let s = frobenius_sq(&gram);
    let d = chain.d() as f64;
    d.powf((a.len() + b.len()) as f64 / 2.0) / d.powi(chain.n_sites() as i32) * s.sqrt()
}

/// A positive rational whose numerator and denominator divide a power of `d`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RationalIndex {
    ratio: Ratio<u64>,
    float_value: f64,
}

impl RationalIndex {
    pub fn exact(ratio: Ratio<u64>) -> Self {
        RationalIndex { ratio, float_value: *ratio.numer() as f64 / *ratio.denom() as f64 }
    }

    pub fn ratio(&self) -> Ratio<u64> {
        self.ratio
    }

    pub fn numer(&self) -> u64 {
        *self.ratio.numer()
    }

    pub fn denom(&self) -> u64 {
        *self.ratio.denom()
    }

    /// The unsnapped value this index was obtained from.
    pub fn float_value(&self) -> f64 {
        self.float_value
    }

    pub fn recip(&self) -> Self {
        RationalIndex { ratio: self.ratio.recip(), float_value: 1.0 / self.float_value }
    }
}

impl std::fmt::Display for RationalIndex {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}/{}", self.numer(), self.denom())
    }
}

/// The `p/q` with the smallest `q` such that `p` and `q` both divide
/// `d^{max_k}` and `|x − p/q| < 10⁻⁶·p/q`.
pub fn rational_snap(x: f64, d: u64, max_k: u32) -> Result<RationalIndex> {
    let fail = || QcaError::SnapFailure { value: x, d };
    if !(x.is_finite() && x > 0.0) || d < 2 {
        return Err(fail());
    }
    // largest power of d that fits comfortably
    let mut bound: u64 = 1;
    for _ in 0..max_k {
        match bound.checked_mul(d) {
            Some(b) if b < (1 << 52) => bound = b,
            _ => break,
        }
    }
    for q in divisors(bound) {
        let p = (x * q as f64).round();
        if p < 1.0 || p > bound as f64 {
            continue;
        }
        let p = p as u64;
        let target = p as f64 / q as f64;
        if bound % p == 0 && (x - target).abs() < SNAP_TOLERANCE * target {
            let g = p.gcd(&q);
            return Ok(RationalIndex { ratio: Ratio::new_raw(p / g, q / g), float_value: x });
        }
    }
    Err(fail())
}

/// Divisors of `n` in increasing order.
fn divisors(n: u64) -> Vec<u64> {
    let mut out = vec![1u64];
    let mut rest = n;
    let mut p = 2u64;
    while p * p <= rest {
        let mut e = 0;
        while rest % p == 0 {
            rest /= p;
            e += 1;
        }
        if e > 0 {
            let mut next = Vec::with_capacity(out.len() * (e + 1));
            for &x in &out {
                let mut y = x;
                for _ in 0..=e {
                    next.push(y);
                    y *= p;
                }
            }
            out = next;
        }
        p += 1;
    }
    if rest > 1 {
        let extra: Vec<u64> = out.iter().map(|x| x * rest).collect();
        out.extend(extra);
    }
    out.sort_unstable();
    out
}

/// `ind(U) = η(U†𝒜U, ℬ)/η(𝒜, U†ℬU)` for adjacent intervals `A` and `B`.
pub fn gnvw_index(u: &Qca, a: Interval, b: Interval) -> Result<RationalIndex> {
    gnvw_index_with(u, a, b, EtaMethod::Swap)
}

pub fn gnvw_index_with(u: &Qca, a: Interval, b: Interval, method: EtaMethod) -> Result<RationalIndex> {
    let chain = *u.chain();
    a.validate(&chain)?;
    b.validate(&chain)?;
    if a.len() + b.len() + 2 > chain.n_sites() {
        return domain(format!("{a} and {b} must leave at least two sites outside"));
    }
    if a.next(b.len(), &chain) != b {
        return domain(format!("{b} is not immediately to the right of {a}"));
    }
    let num = eta_overlap(u, a, b, method)?;
    let den = eta_overlap(u, b, a, method)?;
    rational_snap(num / den, chain.d() as u64, 2 * chain.n_sites() as u32)
}

/// The index together with the placements it was evaluated on.
#[derive(Clone, Debug)]
pub struct IndexEstimate {
    pub index: RationalIndex,
    pub placements: Vec<(Interval, Interval)>,
}

/// Evaluates [`gnvw_index`] on every placement of two adjacent intervals of
/// equal length `L`, for the largest `L` with `2L ≤ n − 2` at which some
/// placement snaps. All placements that snap must agree.
pub fn gnvw_index_auto(u: &Qca) -> Result<IndexEstimate> {
    let chain = *u.chain();
    let n = chain.n_sites();
    if n < 4 {
        return domain("automatic placement needs at least four sites");
    }
    let mut last_error = None;
    for len in (1..=(n - 2) / 2).rev() {
        let mut hits: Vec<(RationalIndex, Interval, Interval)> = Vec::new();
        for start in 0..n {
            let a = Interval::new(start, len);
            let b = a.next(len, &chain);
            match gnvw_index(u, a, b) {
                Ok(ind) => hits.push((ind, a, b)),
                Err(e @ QcaError::SnapFailure { .. }) => last_error = Some(e),
                Err(e) => return Err(e),
            }
        }
        if let Some((first, _, _)) = hits.first() {
            if let Some((other, a, b)) = hits.iter().find(|h| h.0.ratio() != first.ratio()) {
                return domain(format!("placements disagree: {first} vs {other} on {a}, {b}"));
            }
            let index = hits[0].0;
            return Ok(IndexEstimate { index, placements: hits.into_iter().map(|h| (h.1, h.2)).collect() });
        }
    }
    Err(last_error.unwrap_or(QcaError::Domain("no placement available".into())))
}

/// `ind` as a plain float ratio, without snapping.
pub fn raw_index(u: &Qca, a: Interval, b: Interval, method: EtaMethod) -> Result<f64> {
    Ok(eta_overlap(u, a, b, method)? / eta_overlap(u, b, a, method)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qca::{random_brickwork, shift_qca};

    fn chain(n: usize, d: usize) -> ChainSpec {
        ChainSpec::new(n, d).unwrap()
    }

    #[test]
    fn identity_overlaps() {
        let u = Qca::identity(chain(4, 2)).unwrap();
        for method in [EtaMethod::Direct, EtaMethod::Swap] {
            let same = eta_overlap(&u, Interval::new(0, 2), Interval::new(0, 2), method).unwrap();
            assert!((same - 4.0).abs() < 1e-12);
            let apart = eta_overlap(&u, Interval::new(0, 2), Interval::new(2, 2), method).unwrap();
            assert!((apart - 1.0).abs() < 1e-12);
            let half = eta_overlap(&u, Interval::new(0, 2), Interval::new(1, 2), method).unwrap();
            assert!((half - 2.0).abs() < 1e-12);
        }
    }

    #[test]
    fn methods_agree_on_random_circuit() {
        let c = chain(6, 2);
        let u = shift_qca(c, 1).unwrap().compose(&random_brickwork(c, 9).unwrap()).unwrap();
        for (a, b) in [(Interval::new(0, 2), Interval::new(2, 2)), (Interval::new(1, 3), Interval::new(4, 2))] {
            let x = eta_overlap(&u, a, b, EtaMethod::Direct).unwrap();
            let y = eta_overlap(&u, a, b, EtaMethod::Swap).unwrap();
            assert!((x - y).abs() < 1e-10 * x, "{x} vs {y}");
        }
    }

    #[test]
    fn shift_index() {
        for d in [2, 3] {
            let c = chain(6, d);
            let (a, b) = (Interval::new(0, 2), Interval::new(2, 2));
            let ind = gnvw_index(&shift_qca(c, 1).unwrap(), a, b).unwrap();
            assert_eq!((ind.numer(), ind.denom()), (d as u64, 1));
            let inv = gnvw_index(&shift_qca(c, -1).unwrap(), a, b).unwrap();
            assert_eq!((inv.numer(), inv.denom()), (1, d as u64));
        }
    }

    #[test]
    fn snapping() {
        let r = rational_snap(2.0000000001, 2, 12).unwrap();
        assert_eq!(r.to_string(), "2/1");
        assert_eq!(rational_snap(0.49999999, 2, 12).unwrap().to_string(), "1/2");
        assert!(matches!(rational_snap(0.7, 2, 12), Err(QcaError::SnapFailure { .. })));
        assert_eq!(rational_snap(2.0 / 3.0, 6, 4).unwrap().to_string(), "2/3");
        assert!(rational_snap(-1.0, 2, 4).is_err());
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
    }
}
