pub mod classification;
pub mod contact;
pub mod curvature;
pub mod frame;
pub mod kappa_mu;
pub mod linalg;
pub mod poly;
pub mod pseudosym;
pub mod report;
pub mod scalar;
pub mod tensor;
