//! ℤ_N representation arithmetic and classification checks.

mod appendix;
mod characters;
mod spectrum;
mod z2;

pub use appendix::{find_intertwiner, symmetric_fdqc_check, Intertwiner};
pub use characters::{
    character, collision_search, element_order, exact_character, exact_powered_signature, powered_signature,
    shift_equivalent, signatures_equal, spectra_of_dim, GaussInt, MAX_SEARCH_DIM,
};
pub use spectrum::RepSpectrum;
pub use z2::{witness_to_qca, z2_enumerate, z2_solve, ClassificationWitness, WitnessQca};
