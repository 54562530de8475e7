use super::automaton::{Qca, QcaForm};
use crate::error::Result;
use crate::tensor::{frobenius_sq, reduced_product, SiteBasis};

/// Accepted squared relative Hilbert-Schmidt distance between `U†P_iU` and
/// its restriction to the light cone.
pub const LOCALITY_TOLERANCE: f64 = 1e-12;

/// Worst squared relative distance, over sites `i` and nontrivial
/// clock-and-shift operators `P`, between `U†P_iU` and the operator obtained
/// by projecting it onto the window `[i−ξ, i+ξ]`:
/// `1 − ‖Tr_{W^c}(U†P_iU)‖²/(d^{|W^c|}·dim)`.
pub fn locality_defect(u: &Qca, xi: usize) -> Result<f64> {
    let chain = *u.chain();
    let n = chain.n_sites();
    if 2 * xi + 1 >= n {
        return Ok(0.0);
    }
    if let QcaForm::Factor(p) = u.form() {
        let reach = p
            .steps()
            .iter()
            .map(|s| {
                let s = s.rem_euclid(n as i64) as usize;
                s.min(n - s)
            })
            .max()
            .unwrap_or(0);
        return Ok(if reach <= xi { 0.0 } else { 1.0 });
    }
    let m = u.matrix()?;
    let dims = chain.dims();
    let dim = m.nrows() as f64;
    let outside = (chain.d() as f64).powi((n - 2 * xi - 1) as i32);
    let basis = SiteBasis::new(chain.d());
    let mut worst: f64 = 0.0;
    for i in 0..n {
        let window: Vec<usize> = (0..=2 * xi).map(|k| chain.wrap(i as i64 - xi as i64 + k as i64)).collect();
        for p in &basis.elements()[1..] {
            let pu = p.apply_left(&m, &[i], &dims);
            let restricted = reduced_product(&m, &pu, &dims, &window);
            let defect = 1.0 - frobenius_sq(&restricted) / (outside * dim);
            worst = worst.max(defect);
        }
    }
    Ok(worst)
}

/// Whether every `U†P_iU` is supported on `[i−ξ, i+ξ]`.
pub fn verify_locality(u: &Qca, xi: usize) -> Result<bool> {
    Ok(locality_defect(u, xi)? < LOCALITY_TOLERANCE)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qca::{random_brickwork, shift_qca, ChainSpec};

    #[test]
    fn shift_locality() {
        let chain = ChainSpec::new(5, 2).unwrap();
        let t = shift_qca(chain, 1).unwrap();
        assert!(verify_locality(&t, 1).unwrap());
        assert!(!verify_locality(&t, 0).unwrap());
        assert!(verify_locality(&Qca::identity(chain).unwrap(), 0).unwrap());
    }

    #[test]
    fn random_brickwork_has_spread_two() {
        let chain = ChainSpec::new(6, 2).unwrap();
        let w = random_brickwork(chain, 3).unwrap();
        assert!(verify_locality(&w, 2).unwrap());
        assert!(!verify_locality(&w, 1).unwrap());
    }
}
