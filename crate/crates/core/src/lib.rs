//! Exact computations in the algebra of packed-matrix diagrams and its
//! three-parameter deformation `LDIAG(qc, qs, qt)`.
//!
//! Diagrams are stored as codes (compact words of monomials). Products,
//! coproducts and antipodes are exact, with coefficients in `Z[qc, qs]`.

pub mod coeffring;
pub mod deform;
pub mod diagrams;
pub mod element;
pub mod error;
pub mod hopf;
pub mod partitions;
pub mod words;
pub mod zeta;

pub use coeffring::CoeffPoly;
pub use deform::{
    deformed_product, quantum_shuffle, shifted_quantum_shuffle, shifted_twist_product,
    twist_product, twist_product_elements, DeformParams, DeformedAlgebra, Param,
};
pub use diagrams::{codes_up_to, codes_with_lines, LabeledDiagram, SpotTypes, UnlabeledDiagram};
pub use element::{DiagElement, LinComb, TensorDisplay, TensorElement, WordElement};
pub use error::{Error, Result};
pub use hopf::{
    antipode, antipode_explicit, coproduct, coproduct0, coproduct1, counit, deconcatenation,
    is_gpe, lbell_generator, level_of, verify_hopf, AxiomResult, Hopf, HopfReport,
};
pub use partitions::{
    diagram_multiplicities, enumerate_partitions, hadamard_expansion_check, incidence,
    HadamardCheck, SetPartition,
};
pub use words::{shifted_concat_all, DiagramCode, Monomial, MonomialWord};
pub use zeta::{
    stuffle_check, zeta_eval, zeta_word_of, StuffleCheck, ZetaEvaluator, ZetaValue, ZetaWord,
};
