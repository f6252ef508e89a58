//! Volumes of moduli spaces of flat G-connections on orientable and
//! nonorientable surfaces, computed from character sums and checked against
//! independent oracles (exact homomorphism counts, Weyl quadrature,
//! Monte-Carlo Haar pushforwards), together with the Riemannian metric factor
//! coming from geodesic triangles of constant curvature.

pub mod error;
pub mod group;
pub mod identities;
pub mod mc;
pub mod oracle;
pub mod quadrature;
pub mod series;
pub mod triangle;
pub mod volumes;

pub use error::{Error, Result};
pub use group::{GroupElement, GroupKind, GroupModel, Irrep, Normalization, Quaternion};
