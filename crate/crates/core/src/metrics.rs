//! Contrast-enhancement quality measures.
//!
//! * EMEG: no-reference, blockwise ratio of the largest to the smallest
//!   absolute first difference, in `[0, 1]`.
//! * GMSD: full-reference, standard deviation of the gradient magnitude
//!   similarity map (Prewitt gradients, `c = 170`).
//! * PCQI: full-reference, per-patch contrast, structure and mean-intensity
//!   factors averaged over overlapping patches.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::raster::GrayImage;
use crate::sum::{stable_sum, StableSum};

pub const EMEG_BLOCK: usize = 8;
pub const EMEG_STRIDE: usize = 4;
pub const GMSD_C: f64 = 170.0;
pub const PCQI_PATCH: usize = 11;
pub const PCQI_STRIDE: usize = 4;
const PCQI_EPS: f64 = 1e-12;
const PCQI_INTENSITY_SCALE: f64 = 128.0;

/// All metrics for one enhanced image against its reference.
#[derive(Clone, Copy, PartialEq, Debug, Default, Serialize)]
pub struct MetricReport {
    pub emeg: f64,
    pub gmsd: f64,
    pub pcqi_pc: f64,
    pub pcqi_ps: f64,
    pub pcqi_pi: f64,
    pub pcqi_p: f64,
    pub elapsed_ms: Option<f64>,
}

impl MetricReport {
    /// EMEG of `test`, GMSD and PCQI of `test` against `reference`.
    pub fn compute(test: &GrayImage, reference: &GrayImage) -> Result<Self> {
        let q = pcqi(test, reference)?;
        Ok(Self {
            emeg: emeg(test)?,
            gmsd: gmsd(test, reference)?,
            pcqi_pc: q.contrast,
            pcqi_ps: q.structure,
            pcqi_pi: q.intensity,
            pcqi_p: q.overall,
            elapsed_ms: None,
        })
    }
}

fn check_same_size(a: &GrayImage, b: &GrayImage) -> Result<()> {
    if a.dimensions() != b.dimensions() {
        return Err(Error::DimensionMismatch(a.width(), a.height(), b.width(), b.height()));
    }
    Ok(())
}

fn check_window(img: &GrayImage, window: usize) -> Result<()> {
    if img.width() < window || img.height() < window {
        return Err(Error::TooSmall {
            width: img.width(),
            height: img.height(),
            window,
        });
    }
    Ok(())
}

/// Top-left corners of all complete windows along one axis.
fn window_starts(len: usize, window: usize, stride: usize) -> impl Iterator<Item = usize> {
    (0..=len - window).step_by(stride)
}

/// EMEG with 8×8 blocks at stride 4.
pub fn emeg(img: &GrayImage) -> Result<f64> {
    emeg_with(img, EMEG_BLOCK, EMEG_STRIDE)
}

pub fn emeg_with(img: &GrayImage, block: usize, stride: usize) -> Result<f64> {
    if block < 2 || stride == 0 {
        return Err(Error::param("EMEG needs block >= 2 and stride >= 1"));
    }
    check_window(img, block)?;
    let mut acc = StableSum::new();
    let mut n = 0usize;
    for by in window_starts(img.height(), block, stride) {
        for bx in window_starts(img.width(), block, stride) {
            acc.add(emeg_block(img, bx, by, block));
            n += 1;
        }
    }
    Ok(acc.value() / n as f64)
}

/// `(1/255) * max(dx_h / (dx_l + 1), dy_h / (dy_l + 1))` for one block.
pub fn emeg_block(img: &GrayImage, x0: usize, y0: usize, block: usize) -> f64 {
    let (mut dx_hi, mut dx_lo) = (0u8, u8::MAX);
    let (mut dy_hi, mut dy_lo) = (0u8, u8::MAX);
    for y in y0..y0 + block {
        for x in x0..x0 + block {
            let v = img.get(x, y);
            if x + 1 < x0 + block {
                let d = v.abs_diff(img.get(x + 1, y));
                dx_hi = dx_hi.max(d);
                dx_lo = dx_lo.min(d);
            }
            if y + 1 < y0 + block {
                let d = v.abs_diff(img.get(x, y + 1));
                dy_hi = dy_hi.max(d);
                dy_lo = dy_lo.min(d);
            }
        }
    }
    let rx = f64::from(dx_hi) / (f64::from(dx_lo) + 1.0);
    let ry = f64::from(dy_hi) / (f64::from(dy_lo) + 1.0);
    rx.max(ry) / 255.0
}

/// Prewitt gradient magnitude with replicated borders.
fn gradient_magnitude(img: &GrayImage) -> Vec<f64> {
    let (w, h) = img.dimensions();
    let at = |x: isize, y: isize| -> f64 {
        let xc = x.clamp(0, w as isize - 1) as usize;
        let yc = y.clamp(0, h as isize - 1) as usize;
        f64::from(img.get(xc, yc))
    };
    let mut out = Vec::with_capacity(w * h);
    for y in 0..h as isize {
        for x in 0..w as isize {
            let mut gx = 0.0;
            let mut gy = 0.0;
            for k in -1..=1 {
                gx += at(x + 1, y + k) - at(x - 1, y + k);
                gy += at(x + k, y + 1) - at(x + k, y - 1);
            }
            gx /= 3.0;
            gy /= 3.0;
            out.push((gx * gx + gy * gy).sqrt());
        }
    }
    out
}

/// Population standard deviation of the gradient magnitude similarity map.
pub fn gmsd(test: &GrayImage, reference: &GrayImage) -> Result<f64> {
    check_same_size(test, reference)?;
    let mt = gradient_magnitude(test);
    let mr = gradient_magnitude(reference);
    let gms: Vec<f64> = mt
        .iter()
        .zip(&mr)
        .map(|(&a, &b)| (2.0 * a * b + GMSD_C) / (a * a + b * b + GMSD_C))
        .collect();
    let n = gms.len() as f64;
    let mean = stable_sum(gms.iter().copied()) / n;
    let var = stable_sum(gms.iter().map(|&g| (g - mean) * (g - mean))) / n;
    Ok(var.sqrt())
}

/// Patch-averaged PCQI factors.
#[derive(Clone, Copy, PartialEq, Debug, Serialize)]
pub struct Pcqi {
    /// Mean contrast factor, `[0, 2]`; above 1 means contrast increased.
    pub contrast: f64,
    /// Mean structure factor, `[0, 1]`.
    pub structure: f64,
    /// Mean intensity factor, `[0, 1]`.
    pub intensity: f64,
    /// Mean of the per-patch products.
    pub overall: f64,
}

impl Pcqi {
    /// Product of the averaged factors, as opposed to [`Pcqi::overall`].
    pub fn product_of_means(&self) -> f64 {
        self.contrast * self.structure * self.intensity
    }
}

/// Factors of one patch pair.
#[derive(Clone, Copy, PartialEq, Debug)]
pub struct PatchFactors {
    pub contrast: f64,
    pub structure: f64,
    pub intensity: f64,
}

impl PatchFactors {
    pub fn product(&self) -> f64 {
        self.contrast * self.structure * self.intensity
    }
}

/// PCQI over 11×11 patches at stride 4.
pub fn pcqi(test: &GrayImage, reference: &GrayImage) -> Result<Pcqi> {
    pcqi_with(test, reference, PCQI_PATCH, PCQI_STRIDE)
}

pub fn pcqi_with(test: &GrayImage, reference: &GrayImage, patch: usize, stride: usize) -> Result<Pcqi> {
    check_same_size(test, reference)?;
    if patch == 0 || stride == 0 {
        return Err(Error::param("PCQI needs patch >= 1 and stride >= 1"));
    }
    check_window(test, patch)?;
    let (mut c, mut s, mut i, mut p) = (StableSum::new(), StableSum::new(), StableSum::new(), StableSum::new());
    let mut n = 0usize;
    for y in window_starts(test.height(), patch, stride) {
        for x in window_starts(test.width(), patch, stride) {
            let f = patch_factors(test, reference, x, y, patch);
            c.add(f.contrast);
            s.add(f.structure);
            i.add(f.intensity);
            p.add(f.product());
            n += 1;
        }
    }
    let n = n as f64;
    Ok(Pcqi {
        contrast: c.value() / n,
        structure: s.value() / n,
        intensity: i.value() / n,
        overall: p.value() / n,
    })
}

/// Decomposes both patches into mean, signal strength and unit structure.
/// Moments are accumulated in integers so flat patches are detected exactly.
pub fn patch_factors(test: &GrayImage, reference: &GrayImage, x0: usize, y0: usize, patch: usize) -> PatchFactors {
    let (mut st, mut sr, mut stt, mut srr, mut str_) = (0i64, 0i64, 0i64, 0i64, 0i64);
    for y in y0..y0 + patch {
        for x in x0..x0 + patch {
            let t = i64::from(test.get(x, y));
            let r = i64::from(reference.get(x, y));
            st += t;
            sr += r;
            stt += t * t;
            srr += r * r;
            str_ += t * r;
        }
    }
    let n = (patch * patch) as i64;
    let nf = n as f64;
    // n^2 * variance, n^2 * covariance
    let vt = n * stt - st * st;
    let vr = n * srr - sr * sr;
    let cov = n * str_ - st * sr;

    let intensity = (-((st - sr).abs() as f64 / nf) / PCQI_INTENSITY_SCALE).exp();
    if vt == 0 && vr == 0 {
        return PatchFactors {
            contrast: 1.0,
            structure: 1.0,
            intensity,
        };
    }
    // Signal strength: norm of the mean-removed patch = sqrt(n^2 var / n).
    let s_t = (vt as f64 / nf).sqrt();
    let s_r = (vr as f64 / nf).sqrt();
    let contrast = (4.0 / PI * (s_t / (s_r + PCQI_EPS)).atan()).clamp(0.0, 2.0);
    let structure = if vt == 0 || vr == 0 {
        0.0
    } else {
        (cov as f64 / ((vt as f64).sqrt() * (vr as f64).sqrt())).clamp(0.0, 1.0)
    };
    PatchFactors {
        contrast,
        structure,
        intensity,
    }
}
