//! Text descriptions of automata and on-site representations.
//!
//! A QCA file is TOML:
//!
//! ```toml
//! d = 2
//! n_sites = 6
//!
//! [[layer]]
//! kind = "shift"
//! steps = 1
//!
//! [[layer]]
//! kind = "random-brickwork"
//! seed = 7
//! ```
//!
//! Layers multiply left to right, `U = U₁U₂⋯`, so the first layer acts on
//! operators first. Other kinds: `brickwork` (`gate1`, `gate2`: one gate per
//! layer as row-major `[re, im]` pairs), `symmetric-brickwork` (`seed`),
//! `factor-permutation` (`factor_dims`, `steps`), `dense` (`matrix`, `xi`)
//! and `identity`.
//!
//! The same layers can be written inline as `shift:1*random-brickwork:7`.
//!
//! A representation is either a file with `order` and `exponents` (or a
//! generator `mu1` as `[re, im]` pairs), or the inline form `z2:0,0,0,1`
//! listing the eigenvalue exponents of `μ₁`.

use serde::Deserialize;

use super::automaton::{FactorPermutation, Qca};
use super::chain::ChainSpec;
use super::circuits::{brickwork_qca, random_brickwork, shift_qca, symmetric_brickwork, uniform_layer};
use super::rep::OnsiteRep;
use crate::error::{domain, QcaError, Result};
use crate::tensor::{Matrix, C64};

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(tag = "kind", rename_all = "kebab-case", deny_unknown_fields)]
pub enum LayerSpec {
    Identity,
    Shift { steps: i64 },
    Brickwork { gate1: Vec<[f64; 2]>, gate2: Vec<[f64; 2]> },
    RandomBrickwork { seed: u64 },
    SymmetricBrickwork { seed: u64 },
    FactorPermutation { factor_dims: Vec<usize>, steps: Vec<i64> },
    Dense { matrix: Vec<[f64; 2]>, xi: usize },
}

#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct QcaSpec {
    pub d: Option<usize>,
    pub n_sites: Option<usize>,
    #[serde(default, rename = "layer")]
    pub layers: Vec<LayerSpec>,
}

impl QcaSpec {
    pub fn from_toml(text: &str) -> Result<Self> {
        toml::from_str(text).map_err(|e| QcaError::Domain(format!("invalid QCA file: {e}")))
    }

    /// Parses `term*term*…` with terms `identity`, `shift:s`,
    /// `random-brickwork:seed`, `symmetric-brickwork:seed`.
    pub fn from_inline(text: &str) -> Result<Self> {
        let mut layers = Vec::new();
        for term in text.split('*').map(str::trim) {
            let (name, arg) = match term.split_once(':') {
                Some((n, a)) => (n.trim(), Some(a.trim())),
                None => (term, None),
            };
            let int = |what: &str| -> Result<i64> {
                arg.ok_or_else(|| QcaError::Domain(format!("{name} needs {what}")))?
                    .parse()
                    .map_err(|_| QcaError::Domain(format!("bad {what} in '{term}'")))
            };
            let layer = match name {
                "identity" | "id" => LayerSpec::Identity,
                "shift" => LayerSpec::Shift { steps: int("a step count")? },
                "random-brickwork" | "brickwork" => LayerSpec::RandomBrickwork { seed: int("a seed")? as u64 },
                "symmetric-brickwork" => LayerSpec::SymmetricBrickwork { seed: int("a seed")? as u64 },
                _ => return domain(format!("unknown layer '{term}'")),
            };
            layers.push(layer);
        }
        Ok(QcaSpec { d: None, n_sites: None, layers })
    }

    /// The chain, preferring values stored in the file over the fallbacks.
    pub fn chain(&self, d: Option<usize>, n_sites: Option<usize>) -> Result<ChainSpec> {
        let d = self.d.or(d).ok_or_else(|| QcaError::Domain("local dimension not given".into()))?;
        let n = self.n_sites.or(n_sites).ok_or_else(|| QcaError::Domain("number of sites not given".into()))?;
        ChainSpec::new(n, d)
    }

    pub fn build(&self, chain: ChainSpec, rep: Option<&OnsiteRep>) -> Result<Qca> {
        let mut u = Qca::identity(chain)?;
        for layer in &self.layers {
            let next = build_layer(layer, chain, rep)?;
            u = u.compose(&next)?;
        }
        Ok(u)
    }
}

fn build_layer(layer: &LayerSpec, chain: ChainSpec, rep: Option<&OnsiteRep>) -> Result<Qca> {
    match layer {
        LayerSpec::Identity => Qca::identity(chain),
        LayerSpec::Shift { steps } => shift_qca(chain, *steps),
        LayerSpec::Brickwork { gate1, gate2 } => {
            let d2 = chain.d() * chain.d();
            let g1 = matrix_from_pairs(gate1, d2)?;
            let g2 = matrix_from_pairs(gate2, d2)?;
            brickwork_qca(chain, &uniform_layer(&chain, 0, &g1), &uniform_layer(&chain, 1, &g2))
        }
        LayerSpec::RandomBrickwork { seed } => random_brickwork(chain, *seed),
        LayerSpec::SymmetricBrickwork { seed } => {
            let rep = rep.ok_or_else(|| QcaError::Domain("symmetric-brickwork needs a representation".into()))?;
            symmetric_brickwork(chain, rep, *seed)
        }
        LayerSpec::FactorPermutation { factor_dims, steps } => {
            let p = FactorPermutation::new(factor_dims.clone(), steps.clone())?;
            let q = Qca::factor_permutation(chain.n_sites(), p)?;
            if q.chain() != &chain {
                return domain("factor dimensions do not multiply to the local dimension");
            }
            q.to_dense()
        }
        LayerSpec::Dense { matrix, xi } => {
            let dim = chain.dense_dim()?;
            Qca::from_dense(chain, matrix_from_pairs(matrix, dim)?, *xi)
        }
    }
}

/// Row-major `[re, im]` pairs into a `dim × dim` matrix.
pub fn matrix_from_pairs(pairs: &[[f64; 2]], dim: usize) -> Result<Matrix> {
    if pairs.len() != dim * dim {
        return domain(format!("expected {} entries, found {}", dim * dim, pairs.len()));
    }
    Ok(Matrix::from_fn(dim, dim, |i, j| {
        let [re, im] = pairs[i * dim + j];
        C64::new(re, im)
    }))
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RepFile {
    order: usize,
    exponents: Option<Vec<i64>>,
    mu1: Option<Vec<[f64; 2]>>,
}

/// Parses a representation file.
pub fn rep_from_toml(text: &str) -> Result<OnsiteRep> {
    let f: RepFile = toml::from_str(text).map_err(|e| QcaError::Domain(format!("invalid representation file: {e}")))?;
    match (f.exponents, f.mu1) {
        (Some(e), None) => OnsiteRep::diagonal(f.order, &e),
        (None, Some(m)) => {
            let dim = (m.len() as f64).sqrt().round() as usize;
            OnsiteRep::new(f.order, matrix_from_pairs(&m, dim)?)
        }
        _ => domain("give exactly one of `exponents` and `mu1`"),
    }
}

/// Parses `zN:e0,e1,…` (diagonal generator) or `trivial:N:d`.
pub fn rep_from_inline(text: &str) -> Result<OnsiteRep> {
    let text = text.trim();
    if let Some(rest) = text.strip_prefix("trivial:") {
        let (order, dim) = rest
            .split_once(':')
            .ok_or_else(|| QcaError::Domain("use trivial:N:d".into()))?;
        let parse = |s: &str| s.trim().parse::<usize>().map_err(|_| QcaError::Domain(format!("bad number '{s}'")));
        return OnsiteRep::trivial(parse(order)?, parse(dim)?);
    }
    let rest = text
        .strip_prefix('z')
        .or_else(|| text.strip_prefix('Z'))
        .ok_or_else(|| QcaError::Domain(format!("unknown representation '{text}'")))?;
    let (order, exps) = rest
        .split_once(':')
        .ok_or_else(|| QcaError::Domain("use zN:e0,e1,...".into()))?;
    let order: usize = order.parse().map_err(|_| QcaError::Domain(format!("bad group order '{order}'")))?;
    let exps: Vec<i64> = exps
        .split(',')
        .map(|s| s.trim().parse().map_err(|_| QcaError::Domain(format!("bad exponent '{s}'"))))
        .collect::<Result<_>>()?;
    OnsiteRep::diagonal(order, &exps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::max_norm;

    #[test]
    fn inline_and_file_forms_agree() {
        let file = r#"
            d = 2
            n_sites = 4

            [[layer]]
            kind = "shift"
            steps = 1

            [[layer]]
            kind = "random-brickwork"
            seed = 5
        "#;
        let a = QcaSpec::from_toml(file).unwrap();
        let b = QcaSpec::from_inline("shift:1 * random-brickwork:5").unwrap();
        assert_eq!(a.layers, b.layers);
        let chain = a.chain(None, None).unwrap();
        assert_eq!(b.chain(Some(2), Some(4)).unwrap(), chain);
        let ua = a.build(chain, None).unwrap();
        let ub = b.build(chain, None).unwrap();
        assert!(max_norm(&(ua.matrix().unwrap().into_owned() - ub.matrix().unwrap().as_ref())) < 1e-15);
        assert_eq!(ua.xi(), 3);
    }

    #[test]
    fn explicit_gates_and_factor_permutations() {
        let swap: Vec<[f64; 2]> = [1, 0, 0, 0, 0, 0, 1, 0, 0, 1, 0, 0, 0, 0, 0, 1]
            .iter()
            .map(|&x| [x as f64, 0.0])
            .collect();
        let spec = QcaSpec {
            d: Some(4),
            n_sites: Some(3),
            layers: vec![LayerSpec::FactorPermutation { factor_dims: vec![2, 2], steps: vec![1, 0] }],
        };
        let chain = spec.chain(None, None).unwrap();
        assert_eq!(spec.build(chain, None).unwrap().xi(), 1);
        let bw = QcaSpec {
            d: Some(2),
            n_sites: Some(4),
            layers: vec![LayerSpec::Brickwork { gate1: swap.clone(), gate2: swap }],
        };
        assert!(bw.build(bw.chain(None, None).unwrap(), None).is_ok());
    }

    #[test]
    fn representations() {
        let r = rep_from_inline("z2:0,0,0,1").unwrap();
        assert_eq!(r.dim(), 4);
        assert!((r.character(1).re - 2.0).abs() < 1e-12);
        let f = rep_from_toml("order = 3\nexponents = [0, 1, 1]").unwrap();
        assert_eq!(f.order(), 3);
        let g = rep_from_toml("order = 2\nmu1 = [[0,0],[1,0],[1,0],[0,0]]").unwrap();
        assert!(g.character(1).norm() < 1e-12);
        assert!(rep_from_inline("q3:1").is_err());
        assert!(QcaSpec::from_inline("twist:1").is_err());
    }
}
