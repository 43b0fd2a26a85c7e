//! Kloosterman sums and character values at affine generic elements.

pub mod characters;
pub mod kloosterman;

pub use characters::{
    alpha_of, beta_of, char_sp, endoscopy_check, twisted_char, CharParams, EndoscopyReport,
};
pub use kloosterman::{
    find_collision, kl_fourier, kl_fourier_norm_exact, kl_injectivity, kloosterman, kloosterman_fast,
    kloosterman_table, kloosterman_twisted, nonvanishing_witness, InjectivityReport, KlValue,
};
