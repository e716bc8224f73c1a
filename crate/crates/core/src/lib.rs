//! Granular-micromechanics identification of first- and second-gradient
//! elastic stiffness tensors.
//!
//! A grain pair with orientation `ĉ` and spacing `L` stores energy through a
//! normal stiffness `k_η` and a tangential stiffness `k_τ`. Integrating over
//! all orientations gives the continuum stiffness tensors `ℂ` (rank 4), `𝕄`
//! (rank 5) and `𝔻` (rank 6) of a strain-gradient material.
//!
//! ```
//! use granmech::identification::{c_tensor, StiffnessDistribution};
//!
//! let dist = StiffnessDistribution::isotropic(2, 8.0, 0.0)?;
//! let c = c_tensor(&dist, 1.0)?;
//! assert!((c.get_named("1111")? - 3.0).abs() < 1e-12);
//! # Ok::<(), granmech::Error>(())
//! ```

pub mod energy;
pub mod error;
pub mod identification;
pub mod kinematics;
pub mod poly;
pub mod quadrature;
pub mod tensor;
pub mod verify;

pub use error::{Error, Result};
pub use tensor::Tensor;

// Guide chapters; their code blocks run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/kinematics.md")]
    mod kinematics {}
    #[doc = include_str!("../../../book/src/quadrature.md")]
    mod quadrature {}
    #[doc = include_str!("../../../book/src/identification.md")]
    mod identification {}
    #[doc = include_str!("../../../book/src/isotropic.md")]
    mod isotropic {}
    #[doc = include_str!("../../../book/src/energy.md")]
    mod energy {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
