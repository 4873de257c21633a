//! 8-bit rasters, level histograms, distributions and lookup tables.

use std::ops::Index;

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::sum::StableSum;

/// Number of representable intensity levels.
pub const LEVELS: usize = 256;

const MAX_LEVEL: f64 = 255.0;

/// Single-channel 8-bit raster stored row-major.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GrayImage {
    width: usize,
    height: usize,
    pixels: Vec<u8>,
}

impl std::fmt::Debug for GrayImage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GrayImage")
            .field("width", &self.width)
            .field("height", &self.height)
            .finish_non_exhaustive()
    }
}

impl GrayImage {
    pub fn new(width: usize, height: usize, pixels: Vec<u8>) -> Result<Self> {
        check_dims(width, height, pixels.len())?;
        Ok(Self {
            width,
            height,
            pixels,
        })
    }

    pub fn filled(width: usize, height: usize, level: u8) -> Result<Self> {
        Self::new(width, height, vec![level; width.saturating_mul(height)])
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> u8) -> Result<Self> {
        let mut pixels = Vec::with_capacity(width.saturating_mul(height));
        for y in 0..height {
            for x in 0..width {
                pixels.push(f(x, y));
            }
        }
        Self::new(width, height, pixels)
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn dimensions(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.pixels.len()
    }

    /// Always false for a constructed image; kept for clippy's `len` lint.
    #[inline]
    pub fn is_empty(&self) -> bool {
        self.pixels.is_empty()
    }

    #[inline]
    pub fn pixels(&self) -> &[u8] {
        &self.pixels
    }

    pub fn into_pixels(self) -> Vec<u8> {
        self.pixels
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.pixels[y * self.width + x]
    }

    pub fn rows(&self) -> std::slice::ChunksExact<'_, u8> {
        self.pixels.chunks_exact(self.width)
    }

    pub(crate) fn map(&self, f: impl Fn(u8) -> u8) -> Self {
        Self {
            width: self.width,
            height: self.height,
            pixels: self.pixels.iter().map(|&v| f(v)).collect(),
        }
    }

    pub fn histogram(&self) -> Histogram {
        Histogram::of(self)
    }
}

fn check_dims(width: usize, height: usize, len: usize) -> Result<()> {
    if width == 0 || height == 0 || width.checked_mul(height) != Some(len) {
        return Err(Error::InvalidDimensions { width, height, len });
    }
    Ok(())
}

/// Three co-indexed 8-bit planes.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RgbImage {
    width: usize,
    height: usize,
    r: Vec<u8>,
    g: Vec<u8>,
    b: Vec<u8>,
}

impl std::fmt::Debug for RgbImage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("RgbImage")
            .field("width", &self.width)
            .field("height", &self.height)
            .finish_non_exhaustive()
    }
}

impl RgbImage {
    pub fn from_planes(width: usize, height: usize, r: Vec<u8>, g: Vec<u8>, b: Vec<u8>) -> Result<Self> {
        check_dims(width, height, r.len())?;
        check_dims(width, height, g.len())?;
        check_dims(width, height, b.len())?;
        Ok(Self {
            width,
            height,
            r,
            g,
            b,
        })
    }

    /// Builds an image from interleaved `RGBRGB...` samples.
    pub fn from_interleaved(width: usize, height: usize, data: &[u8]) -> Result<Self> {
        if !data.len().is_multiple_of(3) {
            return Err(Error::InvalidDimensions {
                width,
                height,
                len: data.len(),
            });
        }
        let n = data.len() / 3;
        let (mut r, mut g, mut b) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
        for px in data.chunks_exact(3) {
            r.push(px[0]);
            g.push(px[1]);
            b.push(px[2]);
        }
        Self::from_planes(width, height, r, g, b)
    }

    pub fn from_gray(img: &GrayImage) -> Self {
        Self {
            width: img.width,
            height: img.height,
            r: img.pixels.clone(),
            g: img.pixels.clone(),
            b: img.pixels.clone(),
        }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn dimensions(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.r.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.r.is_empty()
    }

    pub fn planes(&self) -> (&[u8], &[u8], &[u8]) {
        (&self.r, &self.g, &self.b)
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> [u8; 3] {
        let i = y * self.width + x;
        [self.r[i], self.g[i], self.b[i]]
    }

    pub fn to_interleaved(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(self.len() * 3);
        for i in 0..self.len() {
            out.extend_from_slice(&[self.r[i], self.g[i], self.b[i]]);
        }
        out
    }

    /// Per-pixel `max(R, G, B)`, the HSV value plane.
    pub fn value_plane(&self) -> GrayImage {
        let pixels = (0..self.len())
            .map(|i| self.r[i].max(self.g[i]).max(self.b[i]))
            .collect();
        GrayImage {
            width: self.width,
            height: self.height,
            pixels,
        }
    }
}

/// A decoded image of either kind.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Image {
    Gray(GrayImage),
    Rgb(RgbImage),
}

impl Image {
    pub fn dimensions(&self) -> (usize, usize) {
        match self {
            Image::Gray(g) => g.dimensions(),
            Image::Rgb(c) => c.dimensions(),
        }
    }

    /// The plane enhancement and metrics operate on: the image itself for
    /// grayscale, the HSV value plane for color.
    pub fn intensity(&self) -> GrayImage {
        match self {
            Image::Gray(g) => g.clone(),
            Image::Rgb(c) => c.value_plane(),
        }
    }
}

impl From<GrayImage> for Image {
    fn from(img: GrayImage) -> Self {
        Image::Gray(img)
    }
}

impl From<RgbImage> for Image {
    fn from(img: RgbImage) -> Self {
        Image::Rgb(img)
    }
}

/// Level counts of an 8-bit image.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Histogram {
    counts: [u64; LEVELS],
    total: u64,
}

impl Histogram {
    pub fn of(img: &GrayImage) -> Self {
        let mut counts = [0u64; LEVELS];
        for &v in img.pixels() {
            counts[v as usize] += 1;
        }
        Self {
            counts,
            total: img.len() as u64,
        }
    }

    pub fn from_counts(counts: [u64; LEVELS]) -> Self {
        Self {
            counts,
            total: counts.iter().sum(),
        }
    }

    #[inline]
    pub fn counts(&self) -> &[u64; LEVELS] {
        &self.counts
    }

    #[inline]
    pub fn total(&self) -> u64 {
        self.total
    }

    /// `p(l) = counts[l] / total`.
    pub fn normalize<T: Real>(&self) -> Result<ProbDist<T>> {
        if self.total == 0 {
            return Err(Error::EmptyImage);
        }
        let total = T::from_u64(self.total).expect("count fits");
        let mut p = [T::zero(); LEVELS];
        for (dst, &c) in p.iter_mut().zip(&self.counts) {
            *dst = T::from_u64(c).expect("count fits") / total;
        }
        Ok(ProbDist { p })
    }
}

/// Normalized histogram: 256 non-negative probabilities summing to one.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct ProbDist<T> {
    p: [T; LEVELS],
}

impl<T: Real> ProbDist<T> {
    pub fn new(p: [T; LEVELS]) -> Result<Self> {
        if p.iter().any(|&v| v < T::zero() || !v.is_finite()) {
            return Err(Error::param("probabilities must be finite and non-negative"));
        }
        let total = crate::sum::stable_sum(p.iter().copied());
        if (total - T::one()).abs() > T::SUM_TOLERANCE {
            return Err(Error::param(format!("probabilities sum to {total:?}, expected 1")));
        }
        Ok(Self { p })
    }

    /// Rescales non-negative weights to unit mass.
    pub(crate) fn from_weights(w: [T; LEVELS]) -> Self {
        let total = crate::sum::stable_sum(w.iter().copied());
        let mut p = w;
        for v in &mut p {
            *v = *v / total;
        }
        Self { p }
    }

    #[inline]
    pub fn as_array(&self) -> &[T; LEVELS] {
        &self.p
    }

    pub fn max(&self) -> T {
        self.p.iter().copied().fold(T::neg_infinity(), T::max)
    }

    pub fn min(&self) -> T {
        self.p.iter().copied().fold(T::infinity(), T::min)
    }

    /// Running compensated sum; clamped so the result is monotone in `[0, 1]`.
    pub fn cdf(&self) -> Cdf<T> {
        let mut c = [T::zero(); LEVELS];
        let mut acc = StableSum::new();
        let mut prev = T::zero();
        for (dst, &p) in c.iter_mut().zip(&self.p) {
            acc.add(p);
            let v = acc.value().max(prev).min(T::one());
            *dst = v;
            prev = v;
        }
        Cdf { c }
    }
}

impl<T> Index<usize> for ProbDist<T> {
    type Output = T;

    fn index(&self, l: usize) -> &T {
        &self.p[l]
    }
}

/// Cumulative distribution over the 256 levels.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct Cdf<T> {
    c: [T; LEVELS],
}

impl<T: Real> Cdf<T> {
    /// Accepts a nondecreasing sequence in `[0, 1]` ending at one.
    pub fn new(c: [T; LEVELS]) -> Result<Self> {
        if c.iter().any(|&v| !(v >= T::zero() && v <= T::one())) {
            return Err(Error::param("cdf values must lie in [0, 1]"));
        }
        if c.windows(2).any(|w| w[1] < w[0]) {
            return Err(Error::param("cdf must be nondecreasing"));
        }
        if (c[LEVELS - 1] - T::one()).abs() > T::SUM_TOLERANCE {
            return Err(Error::param("cdf must end at 1"));
        }
        Ok(Self { c })
    }

    #[inline]
    pub fn as_array(&self) -> &[T; LEVELS] {
        &self.c
    }
}

impl<T> Index<usize> for Cdf<T> {
    type Output = T;

    fn index(&self, l: usize) -> &T {
        &self.c[l]
    }
}

/// Level-to-level intensity mapping.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Lut([u8; LEVELS]);

impl Lut {
    pub const fn new(map: [u8; LEVELS]) -> Self {
        Self(map)
    }

    pub fn identity() -> Self {
        Self::from_fn(|l| l as u8)
    }

    pub fn from_fn(mut f: impl FnMut(usize) -> u8) -> Self {
        let mut map = [0u8; LEVELS];
        for (l, v) in map.iter_mut().enumerate() {
            *v = f(l);
        }
        Self(map)
    }

    #[inline]
    pub fn as_array(&self) -> &[u8; LEVELS] {
        &self.0
    }

    pub fn is_nondecreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] <= w[1])
    }

    pub fn apply(&self, img: &GrayImage) -> GrayImage {
        img.map(|v| self.0[v as usize])
    }
}

impl Index<usize> for Lut {
    type Output = u8;

    fn index(&self, l: usize) -> &u8 {
        &self.0[l]
    }
}

/// `out(x, y) = 255 - img(x, y)`.
pub fn negate(img: &GrayImage) -> GrayImage {
    img.map(|v| 255 - v)
}

/// Arithmetic mean of all pixels, accumulated exactly in integers.
pub fn mean_intensity(img: &GrayImage) -> f64 {
    let sum: u64 = img.pixels().iter().map(|&v| u64::from(v)).sum();
    sum as f64 / img.len() as f64
}

/// Power-law distortion `round(255 * (v / 255)^gamma)`.
pub fn gamma_distort(img: &GrayImage, gamma: f64) -> Result<GrayImage> {
    Ok(gamma_lut(gamma)?.apply(img))
}

pub(crate) fn gamma_lut(gamma: f64) -> Result<Lut> {
    if !(gamma > 0.0 && gamma.is_finite()) {
        return Err(Error::param(format!("gamma must be positive and finite, got {gamma}")));
    }
    Ok(Lut::from_fn(|l| {
        if l == 0 {
            0
        } else {
            to_level(MAX_LEVEL * (l as f64 / MAX_LEVEL).powf(gamma))
        }
    }))
}

/// Rounds half away from zero and saturates into `[0, 255]`.
#[inline]
pub(crate) fn to_level(v: f64) -> u8 {
    v.round().clamp(0.0, MAX_LEVEL) as u8
}

#[cfg(test)]
mod tests {
    use super::*;

    fn img(w: usize, h: usize, px: &[u8]) -> GrayImage {
        GrayImage::new(w, h, px.to_vec()).unwrap()
    }

    #[test]
    fn rejects_bad_dimensions() {
        assert!(GrayImage::new(0, 1, vec![]).is_err());
        assert!(GrayImage::new(2, 2, vec![0; 3]).is_err());
        assert!(RgbImage::from_planes(1, 1, vec![0], vec![0], vec![]).is_err());
    }

    #[test]
    fn histogram_counts() {
        let h = img(2, 2, &[0, 0, 0, 100]).histogram();
        assert_eq!(h.counts()[0], 3);
        assert_eq!(h.counts()[100], 1);
        assert_eq!(h.total(), 4);

        let h = img(1, 1, &[255]).histogram();
        assert_eq!(h.counts()[255], 1);
        assert_eq!(h.total(), 1);

        let h = GrayImage::filled(4, 4, 7).unwrap().histogram();
        assert_eq!(h.counts()[7], 16);
        assert_eq!(h.counts().iter().sum::<u64>(), 16);
    }

    #[test]
    fn normalize_examples() {
        let p: ProbDist<f64> = img(2, 2, &[0, 0, 0, 100]).histogram().normalize().unwrap();
        assert_eq!(p[0], 0.75);
        assert_eq!(p[100], 0.25);

        let p: ProbDist<f64> = Histogram::from_counts([1; LEVELS]).normalize().unwrap();
        assert!(p.as_array().iter().all(|&v| v == 1.0 / 256.0));

        let empty = Histogram::from_counts([0; LEVELS]);
        assert!(matches!(empty.normalize::<f64>(), Err(Error::EmptyImage)));
    }

    #[test]
    fn cdf_examples() {
        let c = img(2, 2, &[0, 0, 0, 100]).histogram().normalize::<f64>().unwrap().cdf();
        assert!((0..100).all(|l| c[l] == 0.75));
        assert!((100..256).all(|l| c[l] == 1.0));

        let c = img(1, 1, &[255]).histogram().normalize::<f64>().unwrap().cdf();
        assert!((0..255).all(|l| c[l] == 0.0));
        assert_eq!(c[255], 1.0);

        let c = Histogram::from_counts([1; LEVELS]).normalize::<f64>().unwrap().cdf();
        for l in 0..LEVELS {
            assert!((c[l] - (l + 1) as f64 / 256.0).abs() < 1e-15);
        }
    }

    #[test]
    fn distribution_validation() {
        let mut p = [0.0f64; LEVELS];
        p[3] = 0.5;
        assert!(ProbDist::new(p).is_err());
        p[4] = 0.5;
        assert!(ProbDist::new(p).is_ok());
        p[5] = -0.0;
        p[6] = f64::NAN;
        assert!(ProbDist::new(p).is_err());

        let mut c = [1.0f64; LEVELS];
        c[0] = 0.5;
        assert!(Cdf::new(c).is_ok());
        c[1] = 0.4;
        assert!(Cdf::new(c).is_err());
    }

    #[test]
    fn lut_application() {
        let src = img(2, 2, &[0, 0, 0, 100]);
        assert_eq!(Lut::identity().apply(&src), src);
        assert!(Lut::new([0; LEVELS]).apply(&src).pixels().iter().all(|&v| v == 0));
        let mut map = [0u8; LEVELS];
        map[100] = 255;
        assert_eq!(Lut::new(map).apply(&src).pixels(), &[0, 0, 0, 255]);
    }

    #[test]
    fn negate_examples() {
        let src = img(2, 2, &[255, 255, 255, 155]);
        assert_eq!(negate(&src).pixels(), &[0, 0, 0, 100]);
        assert_eq!(negate(&negate(&src)), src);
        let black = GrayImage::filled(3, 2, 0).unwrap();
        assert!(negate(&black).pixels().iter().all(|&v| v == 255));
    }

    #[test]
    fn mean_examples() {
        assert_eq!(mean_intensity(&GrayImage::filled(5, 3, 0).unwrap()), 0.0);
        assert_eq!(mean_intensity(&GrayImage::filled(5, 3, 255).unwrap()), 255.0);
        assert_eq!(mean_intensity(&img(2, 2, &[0, 0, 0, 100])), 25.0);
    }

    #[test]
    fn gamma_distort_examples() {
        let ramp = GrayImage::from_fn(16, 16, |x, y| (y * 16 + x) as u8).unwrap();
        assert_eq!(gamma_distort(&ramp, 1.0).unwrap(), ramp);
        // 255 * (128/255)^2 = 64.25
        let out = gamma_distort(&GrayImage::filled(1, 1, 128).unwrap(), 2.0).unwrap();
        assert_eq!(out.pixels(), &[64]);
        for g in [0.01, 0.3, 2.0, 50.0] {
            let out = gamma_distort(&ramp, g).unwrap();
            assert_eq!(out.get(0, 0), 0);
            assert_eq!(out.get(15, 15), 255);
        }
        assert!(gamma_distort(&ramp, 0.0).is_err());
        assert!(gamma_distort(&ramp, -1.0).is_err());
        assert!(gamma_distort(&ramp, f64::NAN).is_err());
    }

    #[test]
    fn value_plane_is_channel_max() {
        let c = RgbImage::from_interleaved(2, 1, &[10, 200, 30, 7, 7, 9]).unwrap();
        assert_eq!(c.value_plane().pixels(), &[200, 9]);
        assert_eq!(c.to_interleaved(), vec![10, 200, 30, 7, 7, 9]);
    }
}
