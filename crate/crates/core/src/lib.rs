//! Certified upper bounds on the order of `k`-regular graphs whose second
//! adjacency eigenvalue is at most `z`, and exhaustive classification of the
//! small cases.
//!
//! Bounds come from nonnegative combinations of the rescaled Chebyshev
//! polynomials `V_m(x) = U_m(x / 2)` ([`chebyshev`], [`bound`],
//! [`optimizer`]). Classification enumerates connected regular graphs up to
//! isomorphism ([`enumerate`], [`canon`]) and filters them by spectrum
//! ([`spectra`]), naming the known ones from [`atlas`].

pub mod atlas;
pub mod bound;
pub mod canon;
pub mod chebyshev;
pub mod enumerate;
pub mod error;
pub mod graph;
pub mod graph6;
pub mod optimizer;
pub mod record;
pub mod spectra;
pub mod tables;

pub use bound::{
    bound_from_function, f_big, f_hat, linear_bound, m_min, machine_bound, shift_expand,
    two_term_bound, y_poly, BoundCertificate, IntervalSplit, Method,
};
pub use chebyshev::{alpha, from_mono, sup_on_interval, to_mono, v_eval, ChebCombo, MonoPoly};
pub use enumerate::{classify, enumerate_regular, ClassificationReport};
pub use error::{Error, Result};
pub use graph::Graph;
pub use optimizer::{optimize_nterm, table_bounds, OptimizerConfig};
pub use spectra::{adjacency_spectrum, mu1, Spectrum};
