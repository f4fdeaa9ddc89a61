//! Exact computer algebra over arbitrary-precision integers: multivariate
//! polynomials, Sylvester resultants via fraction-free Bareiss elimination,
//! and the certificates for the elimination chain of the classification.

mod certify;
mod mpoly;
mod resultant;

pub use certify::{
    all_certificates, certificates_by_name, certify_202500, certify_case12_elimination,
    certify_eq4, denominator_d, derive_f2, derive_f_identity, eq1_poly, eq3_poly, eq4_product,
    f2_display, numer_beta_rate, numer_gamma_rate, poly_f, resultant_product, CertStatus,
    Certificate,
};
pub use mpoly::{MPoly, Monomial, RationalExpr, Var, NVARS};
pub use resultant::sylvester_resultant;
