//! Matrices over `O/p^m`: Iwahori filtrations, the involution θ, shifted
//! characteristic polynomials and the explicit families `g_u`, `h_u`, `φ_a`.

pub mod charpoly;
pub mod congruence;
pub mod family;
pub mod iwahori;
mod mat;
pub mod sample;

pub use charpoly::{
    berkowitz, eisenstein_check, norm_correspondence_check, shifted_charpoly, EisensteinReport,
    ShiftedCharPoly,
};
pub use family::{make_g, make_h, make_phi};
pub use iwahori::{
    affine_components, antidiag_j, classify_filtration, is_affine_generic, is_symplectic,
    is_theta_affine_generic, theta, theta_norm, AffineComponents, FiltrationClass, Group,
};
pub use mat::Mat;
