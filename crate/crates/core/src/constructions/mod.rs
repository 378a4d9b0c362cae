//! Graph builders: named families, cartesian products, expansions,
//! Θ-contractions and gated amalgams.

mod amalgam;
mod expansion;
pub mod families;
mod product;

pub use amalgam::{gated_amalgam, Amalgam, AmalgamSpec};
pub use expansion::{
    check_proper_cover, expansion, theta_contraction, Contraction, CoverViolation, Expansion,
    ProperCover,
};
pub use families::{random_partial_cube, Family};
pub use product::{cartesian_product, Product};
