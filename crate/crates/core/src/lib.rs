//! Contrast enhancement of brightness-distorted 8-bit images by adaptive
//! gamma correction.
//!
//! Bright images are enhanced through their negative (AGCWD applied to
//! `255 - I` and mapped back), dimmed images through a gamma curve whose
//! CDF-derived exponent is floored at `tau`. The crate also carries the
//! HE, AGCWD and percentile-stretch baselines, the EMEG/GMSD/PCQI quality
//! metrics and a benchmark harness that runs all of them over a corpus.
//!
//! The real-valued parts of the pipeline (probabilities, CDFs, gamma curves,
//! configuration) are generic over [`Real`], implemented for `f32` and `f64`.
//! The aliases below pin the `f64` instantiation used by the CLI and harness.
//!
//! ```
//! use agc_core::{enhance_auto, BrightnessClass, EnhanceConfig, GrayImage};
//!
//! let img = GrayImage::filled(4, 4, 20).unwrap();
//! let (out, class) = enhance_auto(&img, &EnhanceConfig::default()).unwrap();
//! assert_eq!(class.class, BrightnessClass::Dimmed);
//! assert_eq!(out.width(), 4);
//! ```

pub mod agc;
pub mod bench;
pub mod color;
mod error;
pub mod imageio;
pub mod metrics;
pub mod raster;
mod scalar;
mod sum;

pub use agc::{
    agcwd, agcwd_lut, build_lut, classify, dimmed_lut, enhance_auto, enhance_bright,
    enhance_dimmed, gamma_from_cdf, he, he_lut, imadj, imadj_lut, truncate_gamma,
    weight_histogram, BrightnessClass,
};
pub use color::{enhance_color, enhance_image, hsv_to_rgb, rgb_to_hsv, HsvImage};
pub use error::{Error, Result};
pub use imageio::{read_image, write_image, ImageFormat};
pub use metrics::{emeg, gmsd, pcqi, MetricReport, Pcqi};
pub use raster::{
    gamma_distort, mean_intensity, negate, GrayImage, Histogram, Image, Lut, RgbImage, LEVELS,
};
pub use scalar::Real;

/// Normalized 256-bin histogram in double precision.
pub type ProbDist256 = raster::ProbDist<f64>;
/// Cumulative distribution over the 256 levels in double precision.
pub type Cdf256 = raster::Cdf<f64>;
/// Per-level gamma exponents in double precision.
pub type GammaCurve256 = agc::GammaCurve<f64>;
/// Enhancement tunables in double precision.
pub type EnhanceConfig = agc::EnhanceConfig<f64>;
pub type Classification = agc::Classification<f64>;

pub type ProbDist256F32 = raster::ProbDist<f32>;
pub type Cdf256F32 = raster::Cdf<f32>;
pub type GammaCurve256F32 = agc::GammaCurve<f32>;
pub type EnhanceConfigF32 = agc::EnhanceConfig<f32>;
