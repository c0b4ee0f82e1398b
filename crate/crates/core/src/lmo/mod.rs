//! Wheels, the unknot series, and the closed formulas for the primitive
//! LMO series of lens spaces and Seifert fibered spaces.

pub mod bernoulli;
pub mod dedekind;
pub mod manifold;
pub mod matrix;
pub mod wheels;

pub use bernoulli::modified_bernoulli;
pub use dedekind::{dedekind_sum, dedekind_symbol};
pub use manifold::{
    connect_sum, gaussian_integrate, lens_space_checked, lens_space_primitive,
    lens_space_single_bracket, normalize_lmo, seifert_primitive, strut_form, SeifertInput,
};
pub use matrix::LinkingData;
pub use wheels::{omega_product, omega_series, strut, theta, wheel};
