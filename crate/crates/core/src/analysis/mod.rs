//! Inner-product and principal-angle relations, design tests and
//! association-scheme checks for finite codes.

mod audit;
mod design;
mod relations;
mod scheme;

pub use audit::{as_trace_polynomial, twothree_audit, TwoThreeReport};
pub use design::{
    design_strength, design_strength_with, is_one_design, is_two_design, zonal_sums, DesignCheck, DesignStrength,
    MAX_TENSOR_DIM,
};
pub use relations::{
    angle_classes, cluster_vectors, coarse_relations, inner_product_set, pair_angles, RelationClass, RelationKind,
    RelationPartition,
};
pub use scheme::{check_scheme, scheme_idempotents, IdempotentPair, IdempotentReport, SchemeReport};
