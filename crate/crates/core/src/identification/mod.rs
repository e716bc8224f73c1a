//! Stiffness tensors from grain-pair stiffness distributions, isotropic
//! closed forms and parameter conversions.

mod distribution;
mod integrals;
pub mod isotropic;
mod rank6;

pub use distribution::{OrientationFn, StiffnessDistribution, StiffnessProfile};
pub use integrals::{
    c_tensor, c_tensor_with, d_tensor, d_tensor_with, identify, m_tensor, m_tensor_with,
    IdentifiedTensors, IdentifyOptions, IntegrationMethod,
};
pub use isotropic::{
    engineering_from_k, isotropic_closed_forms, k_from_engineering, lame_from_k, Engineering,
    IntegratedStiffness, IsotropicClosedForms,
};
pub use rank6::{
    d_from_iso_params, iso_params_from_d, mindlin_from_c, GradientCoefficients, MindlinCoefficients,
};
