//! Finite-carrier verification engine for quantale-enriched categories
//! parameterized by a monad-plus-quantale theory.
//!
//! Everything is tabulated: quantales as operation tables, relations as
//! matrices of quantale values, monads as index codecs over finite carriers.
//! Laws are checked by exhaustive search, and failures come back with a
//! concrete witness.

pub mod corpus;
pub mod error;
pub mod isbell;
pub mod lattice;
pub mod presheaf;
pub mod quantale;
pub mod repr;
pub mod tcat;
#[cfg(test)]
pub(crate) mod testkit;
pub mod theory;
pub mod upset;
pub mod vmat;

pub use corpus::{labeled_posets, posets_with_few_downsets, random_category, random_quantale};
pub use error::{Error, Result};
pub use isbell::{conj_minus, conj_plus, galois_instance_holds, table_le};
pub use lattice::{
    downset_lattice, heyt_from_split, join_irreducibles, order_isomorphic, FiniteLattice,
};
pub use presheaf::{
    build_presheaves, colim, colimit, is_cocomplete, is_cocontinuous, is_totally_cocomplete,
    mate, p_map, sup_assignment, total_cocompleteness, unmate, weighted_sup, yoneda_mult,
    PresheafCat,
};
pub use quantale::{build_quantale, builtin_quantale, pplus_trunc, pwedge_trunc, two, QValue, Quantale};
pub use repr::{
    build_from_algebra, dual, esakia_morphism_check, is_dualisable_graph, is_esakia,
    kleisli_bridge, kleisli_bridge_inverse, lift_t, pseudo_hom_check, representability,
    reprdist_check, split_idempotent, total_completeness, PseudoAlgebra, ReprDistMorphism,
    SplitIdempotent,
};
pub use tcat::{Side, TCategory};
pub use theory::{
    check_theory_instance, dist_extend, dist_lift_from_point, index_of_word, kleisli_at,
    kleisli_convolution, word_of_index, LawCheck, MonadKind, TElem, TRelation, Theory,
};
pub use upset::{
    build_upsets, completeness, inf_assignment, is_continuous, is_downwards_open,
    is_totally_complete, limit, upset_mult, v_map, weighted_inf, UpsetCat,
};
pub use vmat::VMatrix;
