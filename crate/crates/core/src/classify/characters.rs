//! Characters, powered signatures and the search for refined-index
//! collisions between inequivalent edge representations.

use std::collections::BTreeSet;
use std::fmt;

use num_integer::Integer;

use super::RepSpectrum;
use crate::error::{domain, Result};
use crate::qca::root_of_unity;
use crate::tensor::C64;

/// A Gaussian integer `re + im·i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct GaussInt {
    pub re: i128,
    pub im: i128,
}

impl GaussInt {
    pub const ONE: GaussInt = GaussInt { re: 1, im: 0 };

    pub fn new(re: i128, im: i128) -> Self {
        GaussInt { re, im }
    }

    pub fn mul(self, o: GaussInt) -> GaussInt {
        GaussInt::new(self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re)
    }

    pub fn pow(self, k: u32) -> GaussInt {
        (0..k).fold(GaussInt::ONE, |acc, _| acc.mul(self))
    }

    pub fn to_complex(self) -> C64 {
        C64::new(self.re as f64, self.im as f64)
    }
}

impl fmt::Display for GaussInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re, self.im) {
            (re, 0) => write!(f, "{re}"),
            (0, im) => write!(f, "{im}i"),
            (re, im) if im < 0 => write!(f, "{re}-{}i", -im),
            (re, im) => write!(f, "{re}+{im}i"),
        }
    }
}

/// `d_g = N / gcd(g, N)`, the order of `g` in ℤ_N.
pub fn element_order(g: usize, n: usize) -> usize {
    n / g.gcd(&n)
}

/// `Σ_r a_r e^{2πi r g/N}`.
pub fn character(spec: &RepSpectrum, g: usize) -> Result<C64> {
    let n = spec.order();
    if g >= n {
        return domain(format!("g = {g} is outside ℤ_{n}"));
    }
    Ok(spec
        .multiplicities()
        .iter()
        .enumerate()
        .map(|(r, &a)| root_of_unity((r * g) as i64, n) * a as f64)
        .sum())
}

/// The character in exact arithmetic, available for `N ∈ {1, 2, 4}`.
pub fn exact_character(spec: &RepSpectrum, g: usize) -> Option<GaussInt> {
    let n = spec.order();
    if !matches!(n, 1 | 2 | 4) || g >= n {
        return None;
    }
    let step = 4 / n;
    let units = [GaussInt::new(1, 0), GaussInt::new(0, 1), GaussInt::new(-1, 0), GaussInt::new(0, -1)];
    let mut acc = GaussInt::new(0, 0);
    for (r, &a) in spec.multiplicities().iter().enumerate() {
        let u = units[(r * g * step) % 4];
        acc.re += u.re * a as i128;
        acc.im += u.im * a as i128;
    }
    Some(acc)
}

/// `(χ(g)^{d_g})_{g = 0..N−1}`.
pub fn powered_signature(spec: &RepSpectrum) -> Vec<C64> {
    let n = spec.order();
    (0..n)
        .map(|g| character(spec, g).expect("g < N").powu(element_order(g, n) as u32))
        .collect()
}

/// [`powered_signature`] in exact arithmetic, for `N ∈ {1, 2, 4}`.
pub fn exact_powered_signature(spec: &RepSpectrum) -> Option<Vec<GaussInt>> {
    let n = spec.order();
    (0..n)
        .map(|g| exact_character(spec, g).map(|c| c.pow(element_order(g, n) as u32)))
        .collect()
}

/// Equality of powered signatures: exact for `N ∈ {1, 2, 4}`, otherwise to
/// `1e-9` relative to `dim^{d_g}`.
pub fn signatures_equal(a: &RepSpectrum, b: &RepSpectrum) -> bool {
    if a.order() != b.order() {
        return false;
    }
    if let (Some(x), Some(y)) = (exact_powered_signature(a), exact_powered_signature(b)) {
        return x == y;
    }
    let n = a.order();
    let dim = a.dim().max(b.dim()) as f64;
    powered_signature(a)
        .iter()
        .zip(powered_signature(b))
        .enumerate()
        .all(|(g, (x, y))| (x - y).norm() <= 1e-9 * dim.powi(element_order(g, n) as i32))
}

/// Whether `b` is `a` tensored with a 1D irrep, i.e. a cyclic shift of it.
pub fn shift_equivalent(a: &RepSpectrum, b: &RepSpectrum) -> Result<bool> {
    if a.order() != b.order() {
        return domain("spectra belong to different groups");
    }
    Ok(a.canonical() == b.canonical())
}

/// Every multiplicity vector of ℤ_N with dimension exactly `dim`, in
/// lexicographic order.
pub fn spectra_of_dim(n: usize, dim: u64) -> Vec<RepSpectrum> {
    fn fill(prefix: &mut Vec<u64>, n: usize, left: u64, out: &mut Vec<RepSpectrum>) {
        if prefix.len() + 1 == n {
            prefix.push(left);
            out.push(RepSpectrum::new(prefix.clone()).expect("positive dimension"));
            prefix.pop();
            return;
        }
        for a in 0..=left {
            prefix.push(a);
            fill(prefix, n, left - a, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 && dim > 0 {
        fill(&mut Vec::with_capacity(n), n, dim, &mut out);
    }
    out
}

/// Largest dimension [`collision_search`] accepts.
pub const MAX_SEARCH_DIM: u64 = 8;

/// Pairs of inequivalent representations of equal dimension `≤ max_dim`
/// whose powered signatures agree. Each pair is reported once, as canonical
/// representatives `(a, b)` with `a < b`.
pub fn collision_search(n: usize, max_dim: u64) -> Result<Vec<(RepSpectrum, RepSpectrum)>> {
    if n < 2 {
        return domain("collision search needs N >= 2");
    }
    if max_dim > MAX_SEARCH_DIM {
        return domain(format!("max_dim {max_dim} exceeds the search budget {MAX_SEARCH_DIM}"));
    }
    let mut pairs = Vec::new();
    for dim in 1..=max_dim {
        let classes: Vec<RepSpectrum> =
            spectra_of_dim(n, dim).iter().map(RepSpectrum::canonical).collect::<BTreeSet<_>>().into_iter().collect();
        for (i, a) in classes.iter().enumerate() {
            for b in &classes[i + 1..] {
                if signatures_equal(a, b) {
                    pairs.push((a.clone(), b.clone()));
                }
            }
        }
    }
    Ok(pairs)
}
