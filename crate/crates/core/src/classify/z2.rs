//! The ℤ₂ classification: feasibility of `(π₀, π₁)`, enumeration of the
//! realisable pairs, and the explicit factor-translation realising a witness.

use std::collections::BTreeSet;
use std::fmt;

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{domain, QcaError, Result};
use crate::qca::{FactorPermutation, Interval, OnsiteRep, Qca, DENSE_LIMIT};
use crate::spi::{z2_indices, Z2Indices};
use crate::tensor::{diag, kron_all, Matrix, C64};

type Q = Ratio<i128>;

/// Nonnegative integers with
/// `d^{N₁}π₀ = α₀+α₁`, `d^{N₂}/π₀ = β₀+β₁`, `χ^{N₁}π₁ = α₀−α₁`,
/// `χ^{N₂}/π₁ = β₀−β₁`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ClassificationWitness {
    pub n1: u32,
    pub n2: u32,
    pub alpha0: u64,
    pub alpha1: u64,
    pub beta0: u64,
    pub beta1: u64,
}

impl fmt::Display for ClassificationWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "N1={} N2={} alpha0={} alpha1={} beta0={} beta1={}",
            self.n1, self.n2, self.alpha0, self.alpha1, self.beta0, self.beta1
        )
    }
}

fn ipow(base: i128, exp: u32) -> Option<i128> {
    base.checked_pow(exp)
}

fn to_q(r: Ratio<u64>) -> Q {
    Q::new(*r.numer() as i128, *r.denom() as i128)
}

fn from_q(q: Q) -> Option<Ratio<u64>> {
    (q > Q::from_integer(0)).then(|| Ratio::new(*q.numer() as u64, *q.denom() as u64))
}

fn check_params(d: u64, chi: i64) -> Result<()> {
    if d < 2 {
        return domain("local dimension must be at least 2");
    }
    if chi.unsigned_abs() > d || (d as i64 - chi).rem_euclid(2) != 0 {
        return domain(format!("character {chi} is impossible for a ℤ₂ representation of dimension {d}"));
    }
    Ok(())
}

impl ClassificationWitness {
    /// The indices `(π₀, π₁)` this witness realises. `π₁` is `None` when
    /// `χ = 0` leaves it unconstrained by the `α` equations.
    pub fn indices(&self, d: u64, chi: i64) -> Result<(Ratio<u64>, Option<Ratio<u64>>)> {
        check_params(d, chi)?;
        let (a0, a1) = (self.alpha0 as i128, self.alpha1 as i128);
        let overflow = || QcaError::Budget("witness exponents overflow".into());
        let dn1 = ipow(d as i128, self.n1).ok_or_else(overflow)?;
        let pi0 = Q::new(a0 + a1, dn1);
        let cn1 = ipow(chi as i128, self.n1).ok_or_else(overflow)?;
        let pi1 = if cn1 == 0 { None } else { Some(Q::new(a0 - a1, cn1)) };
        let pi0 = from_q(pi0).ok_or_else(|| QcaError::Domain("witness has zero dimension".into()))?;
        let pi1 = match pi1 {
            Some(q) => Some(from_q(q).ok_or_else(|| QcaError::Domain("witness gives a nonpositive π₁".into()))?),
            None => None,
        };
        Ok((pi0, pi1))
    }

    /// Checks the four conditions exactly. With `χ = 0`, `π₁` must be 1.
    pub fn satisfies(&self, d: u64, chi: i64, pi0: Ratio<u64>, pi1: Ratio<u64>) -> bool {
        if check_params(d, chi).is_err() || (chi == 0 && pi1 != Ratio::from_integer(1)) {
            return false;
        }
        let (p0, p1) = (to_q(pi0), to_q(pi1));
        let (a0, a1, b0, b1) = (self.alpha0 as i128, self.alpha1 as i128, self.beta0 as i128, self.beta1 as i128);
        let pows = (
            ipow(d as i128, self.n1),
            ipow(d as i128, self.n2),
            ipow(chi as i128, self.n1),
            ipow(chi as i128, self.n2),
        );
        let (Some(dn1), Some(dn2), Some(cn1), Some(cn2)) = pows else {
            return false;
        };
        p0 * dn1 == Q::from_integer(a0 + a1)
            && Q::from_integer(dn2) / p0 == Q::from_integer(b0 + b1)
            && p1 * cn1 == Q::from_integer(a0 - a1)
            && Q::from_integer(cn2) / p1 == Q::from_integer(b0 - b1)
    }
}

/// Splits `sum` and `diff` into `(x0, x1)` with `x0 + x1 = sum`,
/// `x0 − x1 = diff`, both nonnegative integers.
fn split_pair(sum: Q, diff: Q) -> Option<(u64, u64)> {
    if !sum.is_integer() || !diff.is_integer() {
        return None;
    }
    let (s, t) = (sum.to_integer(), diff.to_integer());
    if s < t.abs() || (s - t) % 2 != 0 {
        return None;
    }
    Some((((s + t) / 2) as u64, ((s - t) / 2) as u64))
}

/// The witness with the smallest `N₁ + N₂` (then smallest `N₁`) and
/// `N₁, N₂ ≤ max_exponent`, or `None` when there is none in that range.
///
/// For `χ = 0` the index `π₁` carries no information and only `π₁ = 1` is
/// accepted; `χ⁰` is taken as 1.
pub fn z2_solve(
    d: u64,
    chi: i64,
    pi0: Ratio<u64>,
    pi1: Ratio<u64>,
    max_exponent: u32,
) -> Result<Option<ClassificationWitness>> {
    check_params(d, chi)?;
    if *pi0.numer() == 0 || *pi1.numer() == 0 {
        return domain("indices must be positive");
    }
    if chi == 0 && pi1 != Ratio::from_integer(1) {
        return Ok(None);
    }
    let (p0, p1) = (to_q(pi0), to_q(pi1));
    for total in 0..=2 * max_exponent {
        for n1 in total.saturating_sub(max_exponent)..=total.min(max_exponent) {
            let n2 = total - n1;
            let pows = (
                ipow(d as i128, n1),
                ipow(d as i128, n2),
                ipow(chi as i128, n1),
                ipow(chi as i128, n2),
            );
            let (Some(dn1), Some(dn2), Some(cn1), Some(cn2)) = pows else {
                continue;
            };
            let Some((alpha0, alpha1)) = split_pair(p0 * dn1, p1 * cn1) else {
                continue;
            };
            let Some((beta0, beta1)) = split_pair(Q::from_integer(dn2) / p0, Q::from_integer(cn2) / p1) else {
                continue;
            };
            return Ok(Some(ClassificationWitness { n1, n2, alpha0, alpha1, beta0, beta1 }));
        }
    }
    Ok(None)
}

/// Positive rationals with numerator and denominator at most `bound`.
fn bounded_rationals(bound: u64) -> Vec<Ratio<u64>> {
    let mut out: BTreeSet<Ratio<u64>> = BTreeSet::new();
    for p in 1..=bound {
        for q in 1..=bound {
            out.insert(Ratio::new(p, q));
        }
    }
    out.into_iter().collect()
}

/// Exponent budget large enough for every pair with entries bounded by
/// `bound`: the denominators need `d^N` divisible by them, and `α₁, β₁ ≥ 0`
/// needs `(d/|χ|)^N ≥ bound²`.
fn enumeration_budget(d: u64, chi: i64, bound: u64) -> u32 {
    let log_bound = (bound as f64).log2().ceil() as u32;
    let c = chi.unsigned_abs();
    let growth = if c == 0 || c == d {
        0
    } else {
        (2.0 * (bound as f64).ln() / (d as f64 / c as f64).ln()).ceil() as u32
    };
    (log_bound + growth + 2).min(40)
}

/// All realisable `(π₀, π₁)` with numerators and denominators `≤ bound`.
pub fn z2_enumerate(d: u64, chi: i64, bound: u64) -> Result<BTreeSet<(Ratio<u64>, Ratio<u64>)>> {
    check_params(d, chi)?;
    if bound == 0 {
        return domain("bound must be positive");
    }
    let budget = enumeration_budget(d, chi, bound);
    let values = bounded_rationals(bound);
    let mut out = BTreeSet::new();
    for &p0 in &values {
        for &p1 in &values {
            if z2_solve(d, chi, p0, p1, budget)?.is_some() {
                out.insert((p0, p1));
            }
        }
    }
    Ok(out)
}

/// A factor-translation automaton built from a witness.
#[derive(Clone, Debug)]
pub struct WitnessQca {
    pub witness: ClassificationWitness,
    /// Supersites `ℋ^{N₁} ⊗ ℋ_α ⊗ ℋ_β`, moved by `−1, +1, 0`.
    pub qca: Qca,
    /// On-site symmetry of a supersite, when its dimension is at most the
    /// dense limit.
    pub supersite_rep: Option<OnsiteRep>,
    /// `π₀ = Π_f dim_f^{s_f}`.
    pub pi0: Ratio<u64>,
    /// `π₁ = Π_f |χ_f|^{s_f}`; `None` when a moving factor is traceless.
    pub pi1: Option<Ratio<u64>>,
}

fn sign_rep_diag(plus: u64, minus: u64) -> Vec<C64> {
    std::iter::repeat_n(C64::new(1.0, 0.0), plus as usize)
        .chain(std::iter::repeat_n(C64::new(-1.0, 0.0), minus as usize))
        .collect()
}

/// The automaton realising `w`: on each supersite, `ℋ^{N₁}` (carrying
/// `μ^{⊗N₁}`) moves one supersite left, `ℋ_α` (carrying `+1` with
/// multiplicity `α₀` and `−1` with multiplicity `α₁`) moves one supersite
/// right and `ℋ_β` stays.
pub fn witness_to_qca(w: ClassificationWitness, rep: &OnsiteRep, n_supersites: usize) -> Result<WitnessQca> {
    if rep.order() != 2 {
        return domain("witnesses describe ℤ₂-symmetric automata");
    }
    if n_supersites < 3 {
        return domain("at least three supersites are needed");
    }
    let d = rep.dim() as u64;
    let chi = rep.character(1).re.round() as i64;
    check_params(d, chi)?;
    let (pi0, pi1) = w.indices(d, chi)?;
    let pi1 = match pi1 {
        Some(p) => p,
        None => Ratio::from_integer(1),
    };
    if !w.satisfies(d, chi, pi0, pi1) {
        return domain(format!("witness {w} violates the classification conditions"));
    }

    let overflow = || QcaError::Budget("supersite dimension overflows".into());
    let dn1 = (d as usize).checked_pow(w.n1).ok_or_else(overflow)?;
    let dim_alpha = (w.alpha0 + w.alpha1) as usize;
    let dim_beta = (w.beta0 + w.beta1) as usize;
    // the trivial witness has one-dimensional factors only; pad with a resting copy of the site
    let pad = dn1 * dim_alpha * dim_beta == 1;
    let (mut dims, mut steps) = (vec![dn1, dim_alpha, dim_beta], vec![-1, 1, 0]);
    if pad {
        dims.push(d as usize);
        steps.push(0);
    }
    let perm = FactorPermutation::new(dims, steps)?;
    let qca = Qca::factor_permutation(n_supersites, perm)?;

    let super_dim = qca.chain().d();
    let supersite_rep = if super_dim <= DENSE_LIMIT {
        let pad_rep = if pad { rep.mu1().clone() } else { Matrix::identity(1, 1) };
        let m = kron_all([
            &rep.tensor_power(1, w.n1 as usize),
            &diag(&sign_rep_diag(w.alpha0, w.alpha1)),
            &diag(&sign_rep_diag(w.beta0, w.beta1)),
            &pad_rep,
        ]);
        Some(OnsiteRep::new(2, m)?)
    } else {
        None
    };

    let sym_pi0 = Ratio::new(dim_alpha as u64, dn1 as u64);
    let tr_alpha = w.alpha0 as i128 - w.alpha1 as i128;
    // a resting factor only cancels when its trace is nonzero
    let tr_n1 = if pad && chi == 0 { 0 } else { (chi as i128).pow(w.n1) };
    let sym_pi1 = (tr_alpha != 0 && tr_n1 != 0)
        .then(|| Ratio::new(tr_alpha.unsigned_abs() as u64, tr_n1.unsigned_abs() as u64));
    Ok(WitnessQca { witness: w, qca, supersite_rep, pi0: sym_pi0, pi1: sym_pi1 })
}

impl WitnessQca {
    /// `(π₀, π₁)` from the dense unitary on the supersite chain.
    pub fn dense_indices(&self) -> Result<Z2Indices> {
        let rep = self
            .supersite_rep
            .as_ref()
            .ok_or_else(|| QcaError::Budget("supersite too large for a dense representation".into()))?;
        if self.qca.chain().n_sites() < 4 {
            return domain("dense indices need at least four supersites");
        }
        let dense = self.qca.to_dense()?;
        z2_indices(&dense, rep, Interval::new(1, 2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: u64, q: u64) -> Ratio<u64> {
        Ratio::new(p, q)
    }

    /// Brute force over all small exponents, independent of the ordering
    /// used by the solver.
    fn brute_force(d: u64, chi: i64, pi0: Ratio<u64>, pi1: Ratio<u64>, max: u32) -> Vec<ClassificationWitness> {
        let mut out = Vec::new();
        for n1 in 0..=max {
            for n2 in 0..=max {
                for a0 in 0..=20 {
                    for a1 in 0..=20 {
                        for b0 in 0..=20 {
                            for b1 in 0..=20 {
                                let w = ClassificationWitness { n1, n2, alpha0: a0, alpha1: a1, beta0: b0, beta1: b1 };
                                if w.satisfies(d, chi, pi0, pi1) {
                                    out.push(w);
                                }
                            }
                        }
                    }
                }
            }
        }
        out
    }

    #[test]
    fn solves_the_d4_chi2_example() {
        let w = z2_solve(4, 2, r(1, 1), r(2, 1), 4).unwrap().unwrap();
        assert_eq!((w.n1, w.n2, w.alpha0, w.alpha1, w.beta0, w.beta1), (1, 2, 4, 0, 9, 7));
        let brute = brute_force(4, 2, r(1, 1), r(2, 1), 2);
        let best = brute.iter().min_by_key(|w| (w.n1 + w.n2, w.n1)).unwrap();
        assert_eq!(*best, w);
    }

    #[test]
    fn traceless_symmetry_forces_pi1_one() {
        assert!(z2_solve(2, 0, r(1, 1), r(2, 1), 6).unwrap().is_none());
        assert!(z2_solve(2, 0, r(2, 1), r(1, 1), 6).unwrap().is_some());
    }

    #[test]
    fn identity_class_has_trivial_witness() {
        for (d, chi) in [(2, 0), (2, 2), (3, 1), (4, -2), (5, 3)] {
            let w = z2_solve(d, chi, r(1, 1), r(1, 1), 3).unwrap().unwrap();
            assert_eq!((w.alpha1, w.beta1), (0, 0));
        }
    }

    #[test]
    fn rejects_impossible_characters() {
        assert!(z2_solve(4, 1, r(1, 1), r(1, 1), 2).is_err());
        assert!(z2_solve(2, 4, r(1, 1), r(1, 1), 2).is_err());
    }

    fn smooth(mut x: u64, base: u64) -> bool {
        let mut primes = Vec::new();
        let mut b = base;
        let mut p = 2;
        while b > 1 {
            if b % p == 0 {
                primes.push(p);
                while b % p == 0 {
                    b /= p;
                }
            }
            p += 1;
        }
        for p in primes {
            while x % p == 0 {
                x /= p;
            }
        }
        x == 1
    }

    fn smooth_ratio(q: Ratio<u64>, base: u64) -> bool {
        smooth(*q.numer(), base) && smooth(*q.denom(), base)
    }

    #[test]
    fn enumeration_matches_smoothness() {
        let got = z2_enumerate(4, 2, 8).unwrap();
        let all = bounded_rationals(8);
        let want: BTreeSet<_> = all
            .iter()
            .flat_map(|&a| all.iter().map(move |&b| (a, b)))
            .filter(|&(a, b)| smooth_ratio(a, 4) && smooth_ratio(b, 2))
            .collect();
        assert_eq!(got, want);
        let pi1: BTreeSet<_> = got.iter().map(|p| p.1).collect();
        assert_eq!(pi1.len(), 7);

        let got = z2_enumerate(2, 0, 8).unwrap();
        assert!(got.iter().all(|p| p.1 == r(1, 1)));
        assert_eq!(got.len(), all.iter().filter(|&&a| smooth_ratio(a, 2)).count());

        let got = z2_enumerate(6, 6, 6).unwrap();
        assert!(!got.is_empty() && got.iter().all(|p| p.0 == p.1));
    }

    #[test]
    fn witness_automaton_symbolic_indices() {
        let rep = OnsiteRep::diagonal(2, &[0, 0, 0, 1]).unwrap();
        let w = z2_solve(4, 2, r(1, 1), r(2, 1), 4).unwrap().unwrap();
        let q = witness_to_qca(w, &rep, 3).unwrap();
        assert_eq!((q.pi0, q.pi1), (r(1, 1), Some(r(2, 1))));
        assert_eq!(z2_solve(4, 2, q.pi0, q.pi1.unwrap(), 4).unwrap(), Some(w));
        let bad = ClassificationWitness { alpha1: 1, ..w };
        assert!(witness_to_qca(bad, &rep, 3).is_err());
    }

    #[test]
    fn witness_automaton_dense_matches_symbolic() {
        let trivial = OnsiteRep::trivial(2, 2).unwrap();
        let w = z2_solve(2, 2, r(2, 1), r(2, 1), 4).unwrap().unwrap();
        let q = witness_to_qca(w, &trivial, 4).unwrap();
        let z = q.dense_indices().unwrap();
        assert_eq!(z.pi0.ratio(), q.pi0);
        assert_eq!(z.pi1.unwrap().ratio(), q.pi1.unwrap());

        let rep = OnsiteRep::diagonal(2, &[0, 0, 1]).unwrap();
        let w = z2_solve(3, 1, r(3, 1), r(1, 1), 4).unwrap().unwrap();
        let q = witness_to_qca(w, &rep, 4).unwrap();
        let z = q.dense_indices().unwrap();
        assert_eq!(z.pi0.ratio(), q.pi0);
        assert_eq!(z.pi1.unwrap().ratio(), q.pi1.unwrap());
    }

    #[test]
    fn trivial_witness_is_padded() {
        for (exps, chi_zero) in [(&[0, 1][..], true), (&[0, 0][..], false)] {
            let rep = OnsiteRep::diagonal(2, exps).unwrap();
            let chi = rep.character(1).re.round() as i64;
            let w = z2_solve(2, chi, r(1, 1), r(1, 1), 4).unwrap().unwrap();
            let q = witness_to_qca(w, &rep, 4).unwrap();
            assert_eq!(q.qca.chain().d(), 2);
            let z = q.dense_indices().unwrap();
            assert_eq!(z.pi0.ratio(), r(1, 1));
            assert_eq!(z.pi1.map(|p| p.ratio()), q.pi1);
            assert_eq!(q.pi1.is_none(), chi_zero);
        }
    }
}
