//! C-ideal algebra on L ⊕ L, entourages and quasi-uniformities.

mod cideal;
mod quasi;

pub use cideal::{cideals_by_closure, saturate_pairs, CIdeal};
pub use quasi::{
    frith_quasi_uniformity, Extraction, Gamma, ImageComparison, PartitionWitness, QuReport, QuasiUniformity,
    Witnesses,
};
