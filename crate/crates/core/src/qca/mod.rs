//! Periodic chains, on-site symmetries and quantum cellular automata.

mod automaton;
mod chain;
mod circuits;
mod locality;
pub(crate) mod rep;
mod spec_file;

pub use automaton::{FactorPermutation, Qca, QcaForm};
pub use chain::{ChainSpec, Interval, DENSE_LIMIT};
pub use circuits::{
    brickwork_qca, haar_unitary, random_brickwork, random_symmetric_gate, shift_qca, spi_example_circuit,
    symmetric_brickwork, uniform_layer, TwoSiteGate,
};
pub use locality::{locality_defect, verify_locality, LOCALITY_TOLERANCE};
pub use rep::{root_of_unity, OnsiteRep};
pub use spec_file::{matrix_from_pairs, rep_from_inline, rep_from_toml, LayerSpec, QcaSpec};
