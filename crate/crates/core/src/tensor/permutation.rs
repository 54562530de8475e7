use super::{Layout, Matrix, ONE};
use crate::error::{domain, Result};

/// Unitary that relabels tensor factors so that `P† O_i P = O_{perm[i]}`.
///
/// On basis states `P|s⟩ = |s'⟩` with `s'_i = s_{perm[i]}`.
pub fn permutation_operator(perm: &[usize], dims: &[usize]) -> Result<Matrix> {
    let n = perm.len();
    if dims.len() != n {
        return domain("permutation and dims have different lengths");
    }
    let mut seen = vec![false; n];
    for (i, &p) in perm.iter().enumerate() {
        if p >= n || seen[p] {
            return domain(format!("{perm:?} is not a permutation"));
        }
        seen[p] = true;
        if dims[i] != dims[p] {
            return domain(format!("sites {i} and {p} have different local dimensions"));
        }
    }
    let layout = Layout::new(dims);
    let total = layout.total();
    let mut out = Matrix::zeros(total, total);
    let mut digits = vec![0usize; n];
    for s in 0..total {
        let mut rem = s;
        for k in (0..n).rev() {
            digits[k] = rem % dims[k];
            rem /= dims[k];
        }
        let target = (0..n).fold(0, |acc, i| acc * dims[i] + digits[perm[i]]);
        out[(target, s)] = ONE;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{diag, embed, max_norm, unitarity_defect, C64};

    #[test]
    fn transposition_is_swap() {
        let p = permutation_operator(&[1, 0], &[2, 2]).unwrap();
        let mut swap = Matrix::zeros(4, 4);
        for (r, c) in [(0, 0), (1, 2), (2, 1), (3, 3)] {
            swap[(r, c)] = ONE;
        }
        assert_eq!(p, swap);
    }

    #[test]
    fn identity_permutation() {
        let p = permutation_operator(&[0, 1, 2], &[2, 3, 2]).unwrap();
        assert_eq!(p, Matrix::identity(12, 12));
    }

    #[test]
    fn three_cycle_has_order_three() {
        let p = permutation_operator(&[1, 2, 0], &[2, 2, 2]).unwrap();
        assert!(max_norm(&(&p * &p * &p - Matrix::identity(8, 8))) < 1e-15);
        assert!(max_norm(&(&p * &p - Matrix::identity(8, 8))) > 0.5);
    }

    #[test]
    fn conjugation_moves_operators() {
        let dims = [3, 3, 3];
        let perm = [2, 0, 1];
        let p = permutation_operator(&perm, &dims).unwrap();
        let o = diag(&[C64::new(1.0, 0.0), C64::new(0.0, 1.0), C64::new(-1.0, 0.0)]);
        for i in 0..3 {
            let lhs = p.adjoint() * embed(&o, &[i], &dims) * &p;
            let rhs = embed(&o, &[perm[i]], &dims);
            assert!(max_norm(&(lhs - rhs)) < 1e-14);
        }
    }

    #[test]
    fn rejects_mismatched_dimensions() {
        assert!(permutation_operator(&[1, 0], &[2, 3]).is_err());
        assert!(permutation_operator(&[0, 0], &[2, 2]).is_err());
    }

    #[test]
    fn inverse_composes_to_identity() {
        let dims = [2, 2, 2, 2];
        let perm = [3, 0, 2, 1];
        let mut inv = [0; 4];
        for (i, &p) in perm.iter().enumerate() {
            inv[p] = i;
        }
        let p = permutation_operator(&perm, &dims).unwrap();
        let q = permutation_operator(&inv, &dims).unwrap();
        assert!(max_norm(&(&p * &q - Matrix::identity(16, 16))) < 1e-12);
        assert!(unitarity_defect(&p) < 1e-15);
    }
}
