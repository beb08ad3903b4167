//! Exact representation theory of finite-dimensional algebras over an exact
//! field: path algebras with relations, module categories, Auslander-Reiten
//! theory, tilting, triangular matrix constructions, and representation
//! dimension bounds.

pub mod algebra;
pub mod artheory;
pub mod bimodule;
pub mod constructions;
pub mod decomp;
pub mod error;
pub mod homological;
pub mod linalg;
pub mod module;
pub mod poly;
pub mod quiver;
pub mod repdim;
pub mod report;
pub mod scalar;
pub mod tilting;

pub use algebra::{opposite, path_algebra, AlgRef, FDAlgebra};
pub use artheory::{
    almost_split_sequence, ar_translate, inverse_ar_translate, is_representation_finite,
    knit_ar_quiver, transpose, ARQuiver, Certificate, RepFiniteness,
};
pub use bimodule::{
    dual_bimodule, dual_regular_bimodule, hom_functor, regular_bimodule, tensor_functor, tor1,
    Bimodule,
};
pub use constructions::{
    auslander_algebra, duplicated_algebra, gabriel_quiver, ind_modules, mor_generator,
    mor_generators, proj_injectives, quadratic_relation_counts, t2_algebra,
    triangular_matrix_algebra, MorKind, Subcategory, TriangularAlgebra, TripleModule,
};
pub use decomp::{decompose, endomorphism_algebra, is_indecomposable, iso_test, Decomposition};
pub use homological::{ext_dim, global_dimension, inj_dim, minimal_resolution, proj_dim};
pub use module::{
    dual_module, hom_dim, hom_space, injective_module, projective_module, simple_module, FDModule,
};
pub use error::{Error, Result};
pub use linalg::{bareiss_rank, Matrix};
pub use quiver::{parse_quiver_json, Quiver, RelationSet};
pub use repdim::{
    add_m_resolution, generator_thm31, generator_thm32, generator_thm47, is_generator_cogenerator,
    is_in_add,
    minimal_left_approximation, minimal_right_approximation, repdim_bound, AddMResolution,
    Approximation, GeneratorBundle, Provenance, RepDimReport,
};
pub use report::{
    algebra_summary_json, ar_quiver_dot, module_from_json, module_to_json, subcategory_from_json,
    subcategory_to_json, Report, Status,
};
pub use tilting::{
    bar_tilting, corollary44_check, is_convex, is_separating, is_splitting, is_tilting,
    lemma43_check, thm41_check, tilting_bimodule, tilting_modules, tilting_quiver,
    torsion_pair_of_tilting, trace_submodule, xy_pair, BarTilting, Cor44Report, Lemma43Report,
    Thm41Report, TiltingModule, TorsionPair, Verdict, XYData,
};
pub use scalar::{Scalar, F101, Q};

/// Matrix over the primary scalar.
pub type QMatrix = Matrix<Q>;
/// Matrix over the cross-check prime field.
pub type FMatrix = Matrix<F101>;
