use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("theta nome must satisfy |q| < 1 (got |q| = {0})")]
    NomeOutsideDisk(f64),
    #[error("non-finite input: {0}")]
    NonFinite(&'static str),
    #[error("sector mismatch: delta {left} vs {right}")]
    SectorMismatch { left: f64, right: f64 },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("series did not converge: {0}")]
    NoConvergence(&'static str),
}

pub(crate) fn finite(x: f64, what: &'static str) -> Result<f64, Error> {
    if x.is_finite() {
        Ok(x)
    } else {
        Err(Error::NonFinite(what))
    }
}

pub(crate) fn finite_c(
    z: num_complex::Complex64,
    what: &'static str,
) -> Result<num_complex::Complex64, Error> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z)
    } else {
        Err(Error::NonFinite(what))
    }
}
