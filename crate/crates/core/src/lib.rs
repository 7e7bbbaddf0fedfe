//! Phase-stretch image processing.
//!
//! Three algorithms built on one primitive: multiply an image's spectrum
//! by a unit-magnitude phase kernel (optionally with a Gaussian low-pass
//! amplitude), transform back, and detect the output phase.
//!
//! - [`pst`]: edge/texture detection via a radially symmetric
//!   arctangent-profile kernel, with thresholding and morphological
//!   cleanup for binary edge maps.
//! - [`page`]: directional edge extraction via a bank of rotated
//!   Gaussian x log-normal kernels, fused into a hue-coded map.
//! - [`vevid`]: low-light and color enhancement via a Gaussian phase
//!   kernel and an arctangent gain read-out on an HSV channel, plus the
//!   transform-free lite approximation.
//!
//! [`spectral`] holds the shared substrate (frequency grids, the 1D/2D
//! stretch operators, phase detection); [`morph`] and [`color`] carry the
//! supporting binary morphology and HSV conversions.

pub mod color;
pub mod error;
mod fft;
pub mod image;
pub mod morph;
pub mod page;
pub mod pst;
pub mod spectral;
pub mod vevid;

pub use error::{Error, Result};
pub use image::{Grid, Image};
pub use morph::EdgeMap;
pub use page::{DirectionalEdgeStack, Page, PageParams};
pub use pst::{Pst, PstOutput, PstParams};
pub use spectral::{ComplexField, FrequencyGrid, LowpassSpec, PhaseKernel};
pub use vevid::{Vevid, VevidChannel, VevidParams};
