//! Adaptive gamma correction: brightness classification, weighted-CDF gamma
//! curves, CDF truncation, the negative-image path for bright inputs, and the
//! HE / AGCWD / percentile-stretch baselines.
//!
//! Every method reduces to a 256-entry [`Lut`] built from the histogram of
//! the input, so the cost is one pass to count levels plus one pass to map.

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};
use crate::raster::{negate, to_level, Cdf, GrayImage, Lut, ProbDist, LEVELS};
use crate::scalar::Real;

/// Below this spread the weighting formula is undefined and `p` is kept.
const DEGENERATE_SPREAD: f64 = 1e-12;

/// Per-level gamma exponents, each in `[0, 1]`.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct GammaCurve<T> {
    g: [T; LEVELS],
}

impl<T: Real> GammaCurve<T> {
    pub fn new(g: [T; LEVELS]) -> Result<Self> {
        if g.iter().any(|&v| !(v >= T::zero() && v <= T::one())) {
            return Err(Error::param("gamma values must lie in [0, 1]"));
        }
        Ok(Self { g })
    }

    pub fn constant(v: T) -> Result<Self> {
        Self::new([v; LEVELS])
    }

    #[inline]
    pub fn as_array(&self) -> &[T; LEVELS] {
        &self.g
    }
}

impl<T> Index<usize> for GammaCurve<T> {
    type Output = T;

    fn index(&self, l: usize) -> &T {
        &self.g[l]
    }
}

/// Tunables of the enhancement pipeline.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct EnhanceConfig<T> {
    /// Expected mean brightness of a well-exposed image, in 8-bit units.
    pub target_brightness: T,
    /// `|t|` above this marks an image as bright or dimmed.
    pub class_threshold: T,
    /// Floor applied to the dimmed-path gamma curve.
    pub truncation: T,
    /// Weighting exponent on the bright (negative-image) path.
    pub alpha_bright: T,
    /// Weighting exponent on the dimmed path.
    pub alpha_dimmed: T,
}

impl<T: Real> Default for EnhanceConfig<T> {
    fn default() -> Self {
        Self {
            target_brightness: T::lit(112.0),
            class_threshold: T::lit(0.3),
            truncation: T::lit(0.5),
            alpha_bright: T::lit(0.25),
            alpha_dimmed: T::lit(0.75),
        }
    }
}

impl<T: Real> EnhanceConfig<T> {
    pub fn validate(&self) -> Result<()> {
        let t_t = self.target_brightness;
        if !(t_t > T::zero() && t_t < T::lit(255.0)) {
            return Err(Error::param(format!("target brightness must be in (0, 255), got {t_t:?}")));
        }
        if self.class_threshold <= T::zero() || !self.class_threshold.is_finite() {
            return Err(Error::param("classification threshold must be positive"));
        }
        check_tau(self.truncation)?;
        check_alpha(self.alpha_bright)?;
        check_alpha(self.alpha_dimmed)?;
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum BrightnessClass {
    Bright,
    Dimmed,
    Normal,
}

impl BrightnessClass {
    pub fn as_str(self) -> &'static str {
        match self {
            BrightnessClass::Bright => "bright",
            BrightnessClass::Dimmed => "dimmed",
            BrightnessClass::Normal => "normal",
        }
    }
}

impl fmt::Display for BrightnessClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Class together with the statistic `t = (mean - T_t) / T_t` it came from.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Classification<T> {
    pub class: BrightnessClass,
    pub t: T,
}

fn check_alpha<T: Real>(alpha: T) -> Result<()> {
    if alpha > T::zero() && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::param(format!("alpha must be positive, got {alpha:?}")))
    }
}

fn check_tau<T: Real>(tau: T) -> Result<()> {
    if tau > T::zero() && tau <= T::one() {
        Ok(())
    } else {
        Err(Error::param(format!("tau must be in (0, 1], got {tau:?}")))
    }
}

/// Weighting distribution `p_max * ((p - p_min) / (p_max - p_min))^alpha`,
/// renormalized to unit mass.
pub fn weight_histogram<T: Real>(p: &ProbDist<T>, alpha: T) -> Result<ProbDist<T>> {
    check_alpha(alpha)?;
    let (p_max, p_min) = (p.max(), p.min());
    let spread = p_max - p_min;
    if spread < T::lit(DEGENERATE_SPREAD) {
        return Ok(*p);
    }
    let mut w = [T::zero(); LEVELS];
    for (dst, &v) in w.iter_mut().zip(p.as_array()) {
        *dst = p_max * ((v - p_min) / spread).powf(alpha);
    }
    Ok(ProbDist::from_weights(w))
}

/// `gamma(l) = 1 - c(l)`.
pub fn gamma_from_cdf<T: Real>(c: &Cdf<T>) -> GammaCurve<T> {
    let mut g = [T::zero(); LEVELS];
    for (dst, &v) in g.iter_mut().zip(c.as_array()) {
        *dst = (T::one() - v).max(T::zero()).min(T::one());
    }
    GammaCurve { g }
}

/// `max(tau, gamma(l))`.
pub fn truncate_gamma<T: Real>(g: &GammaCurve<T>, tau: T) -> Result<GammaCurve<T>> {
    check_tau(tau)?;
    let mut out = g.g;
    for v in &mut out {
        *v = v.max(tau);
    }
    Ok(GammaCurve { g: out })
}

/// `T(l) = round(255 * (l / 255)^gamma(l))`, with level 0 pinned to 0.
pub fn build_lut<T: Real>(g: &GammaCurve<T>) -> Lut {
    let max = T::lit(255.0);
    Lut::from_fn(|l| {
        if l == 0 {
            return 0;
        }
        let v = max * (T::level(l) / max).powf(g[l]);
        to_level(v.to_f64().expect("finite"))
    })
}

/// Thresholds the normalized mean-brightness deviation. `|t| == tau_t` is
/// Normal.
pub fn classify<T: Real>(img: &GrayImage, cfg: &EnhanceConfig<T>) -> Classification<T> {
    let mean = T::from_f64(crate::raster::mean_intensity(img)).expect("finite mean");
    let t = (mean - cfg.target_brightness) / cfg.target_brightness;
    let class = if t < -cfg.class_threshold {
        BrightnessClass::Dimmed
    } else if t > cfg.class_threshold {
        BrightnessClass::Bright
    } else {
        BrightnessClass::Normal
    };
    Classification { class, t }
}

fn weighted_gamma<T: Real>(img: &GrayImage, alpha: T) -> Result<GammaCurve<T>> {
    let p = img.histogram().normalize::<T>()?;
    let pw = weight_histogram(&p, alpha)?;
    Ok(gamma_from_cdf(&pw.cdf()))
}

/// LUT of AGCWD: weighted-CDF gamma without a floor.
pub fn agcwd_lut<T: Real>(img: &GrayImage, alpha: T) -> Result<Lut> {
    Ok(build_lut(&weighted_gamma(img, alpha)?))
}

/// LUT of the dimmed path: weighted-CDF gamma floored at `tau`.
pub fn dimmed_lut<T: Real>(img: &GrayImage, alpha: T, tau: T) -> Result<Lut> {
    check_tau(tau)?;
    let g = truncate_gamma(&weighted_gamma(img, alpha)?, tau)?;
    Ok(build_lut(&g))
}

pub fn agcwd<T: Real>(img: &GrayImage, alpha: T) -> Result<GrayImage> {
    Ok(agcwd_lut(img, alpha)?.apply(img))
}

/// CDF-truncated AGC. Every output pixel `v'` satisfies
/// `v <= v' <= round(255 * (v / 255)^tau)`.
pub fn enhance_dimmed<T: Real>(img: &GrayImage, alpha: T, tau: T) -> Result<GrayImage> {
    Ok(dimmed_lut(img, alpha, tau)?.apply(img))
}

/// Negative-image AGC: AGCWD on `255 - I`, then complemented back. Output
/// never exceeds input.
pub fn enhance_bright<T: Real>(img: &GrayImage, alpha: T) -> Result<GrayImage> {
    let neg = negate(img);
    Ok(negate(&agcwd(&neg, alpha)?))
}

/// Classifies and dispatches. Normal images pass through unchanged.
pub fn enhance_auto<T: Real>(
    img: &GrayImage,
    cfg: &EnhanceConfig<T>,
) -> Result<(GrayImage, Classification<T>)> {
    cfg.validate()?;
    let class = classify(img, cfg);
    let out = match class.class {
        BrightnessClass::Bright => enhance_bright(img, cfg.alpha_bright)?,
        BrightnessClass::Dimmed => enhance_dimmed(img, cfg.alpha_dimmed, cfg.truncation)?,
        BrightnessClass::Normal => img.clone(),
    };
    Ok((out, class))
}

/// Histogram equalization `T(l) = round(255 * c(l))` on the plain CDF.
pub fn he_lut(img: &GrayImage) -> Lut {
    let c = img
        .histogram()
        .normalize::<f64>()
        .expect("valid image has pixels")
        .cdf();
    Lut::from_fn(|l| to_level(255.0 * c[l]))
}

pub fn he(img: &GrayImage) -> GrayImage {
    he_lut(img).apply(img)
}

/// Saturating linear stretch between the `low_frac` and `1 - high_frac`
/// quantiles. A single-level image gets the identity map.
pub fn imadj_lut(img: &GrayImage, low_frac: f64, high_frac: f64) -> Result<Lut> {
    if !(low_frac >= 0.0 && high_frac >= 0.0 && low_frac + high_frac < 1.0) {
        return Err(Error::param(format!(
            "stretch fractions must be non-negative with sum < 1, got {low_frac} and {high_frac}"
        )));
    }
    let h = img.histogram();
    let n = h.total() as f64;
    let mut cum = [0u64; LEVELS];
    let mut acc = 0;
    for (dst, &c) in cum.iter_mut().zip(h.counts()) {
        acc += c;
        *dst = acc;
    }
    // Cumulative counts are compared against the scaled fractions so that
    // zero fractions select the exact extremes.
    let lo = cum.iter().position(|&c| c as f64 > low_frac * n).unwrap_or(0);
    let hi = cum
        .iter()
        .position(|&c| c as f64 >= (1.0 - high_frac) * n)
        .unwrap_or(LEVELS - 1);
    if hi <= lo {
        return Ok(Lut::identity());
    }
    let span = (hi - lo) as f64;
    Ok(Lut::from_fn(|l| {
        let x = ((l as f64 - lo as f64) / span).clamp(0.0, 1.0);
        to_level(255.0 * x)
    }))
}

pub fn imadj(img: &GrayImage, low_frac: f64, high_frac: f64) -> Result<GrayImage> {
    Ok(imadj_lut(img, low_frac, high_frac)?.apply(img))
}
