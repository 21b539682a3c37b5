//! Combinatorics of finite real (complexified) hyperplane arrangements:
//! faces via sign vectors, chambers, intersection posets, no-broken-circuit
//! sets, posets of regions, the Salvetti poset and its stratification, and
//! the minimality pipeline for affine arrangements.

mod arrangement;
mod faces;
mod feas;
mod flats;
mod minimal;
mod nbc;
mod regions;
mod salvetti;

pub use arrangement::{Arrangement, HalfspaceForm, Sign, SignVec};
pub use faces::{face_poset, Face, FacePoset};
pub use feas::{feasible, Constraint};
pub use flats::{intersection_poset, Flat, IntersectionPoset};
pub use minimal::{affine_minimal, AffineMinimal, AffineYElement};
pub use nbc::{circuits, nbc, NbcFamily};
pub use regions::{
    induced_order, mu, mu_full, region_order, restrict_signs, sub_chambers, x_c, x_c_sub,
    RegionOrder,
};
pub use salvetti::{salvetti_poset, strata_central, CentralStrata, SalvettiPoset};
