//! Hexcone HSV conversion and V-channel enhancement of color images.

use crate::error::Result;
use crate::raster::{to_level, GrayImage, Image, RgbImage};

/// Hue in degrees `[0, 360)`, saturation in `[0, 1]`, value as 8-bit levels.
#[derive(Clone, PartialEq, Debug)]
pub struct HsvImage {
    hue: Vec<f64>,
    saturation: Vec<f64>,
    value: GrayImage,
}

impl HsvImage {
    pub fn width(&self) -> usize {
        self.value.width()
    }

    pub fn height(&self) -> usize {
        self.value.height()
    }

    pub fn hue(&self) -> &[f64] {
        &self.hue
    }

    pub fn saturation(&self) -> &[f64] {
        &self.saturation
    }

    pub fn value(&self) -> &GrayImage {
        &self.value
    }

    /// Same hue and saturation over a new value plane of equal size.
    pub fn with_value(&self, value: GrayImage) -> Result<Self> {
        if value.dimensions() != self.value.dimensions() {
            let (w, h) = self.value.dimensions();
            return Err(crate::Error::DimensionMismatch(value.width(), value.height(), w, h));
        }
        Ok(Self {
            hue: self.hue.clone(),
            saturation: self.saturation.clone(),
            value,
        })
    }
}

fn pixel_to_hsv(r: u8, g: u8, b: u8) -> (f64, f64) {
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    if max == min {
        return (0.0, 0.0);
    }
    let (rf, gf, bf) = (f64::from(r), f64::from(g), f64::from(b));
    let chroma = f64::from(max - min);
    let sector = if max == r {
        ((gf - bf) / chroma).rem_euclid(6.0)
    } else if max == g {
        (bf - rf) / chroma + 2.0
    } else {
        (rf - gf) / chroma + 4.0
    };
    let hue = (60.0 * sector).rem_euclid(360.0);
    (hue, chroma / f64::from(max))
}

fn pixel_to_rgb(hue: f64, sat: f64, value: u8) -> [u8; 3] {
    let v = f64::from(value);
    if sat <= 0.0 {
        return [value; 3];
    }
    let c = v * sat;
    let h = hue.rem_euclid(360.0) / 60.0;
    let x = c * (1.0 - (h.rem_euclid(2.0) - 1.0).abs());
    let m = v - c;
    let (r, g, b) = match h as u32 {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    [to_level(r + m), to_level(g + m), to_level(b + m)]
}

/// `V = max(R, G, B)`; achromatic pixels get `H = 0`, `S = 0`.
pub fn rgb_to_hsv(img: &RgbImage) -> HsvImage {
    let (r, g, b) = img.planes();
    let (hue, saturation) = (0..img.len()).map(|i| pixel_to_hsv(r[i], g[i], b[i])).unzip();
    HsvImage {
        hue,
        saturation,
        value: img.value_plane(),
    }
}

pub fn hsv_to_rgb(img: &HsvImage) -> RgbImage {
    let n = img.value.len();
    let (mut r, mut g, mut b) = (Vec::with_capacity(n), Vec::with_capacity(n), Vec::with_capacity(n));
    for ((&h, &s), &v) in img.hue.iter().zip(&img.saturation).zip(img.value.pixels()) {
        let [pr, pg, pb] = pixel_to_rgb(h, s, v);
        r.push(pr);
        g.push(pg);
        b.push(pb);
    }
    RgbImage::from_planes(img.width(), img.height(), r, g, b).expect("planes share the value plane's size")
}

/// Runs `method` on the V plane and recombines with the untouched H and S.
pub fn enhance_color<F>(img: &RgbImage, method: F) -> Result<RgbImage>
where
    F: FnOnce(&GrayImage) -> Result<GrayImage>,
{
    let hsv = rgb_to_hsv(img);
    let v = method(hsv.value())?;
    Ok(hsv_to_rgb(&hsv.with_value(v)?))
}

/// Applies a grayscale method to either kind of image.
pub fn enhance_image<F>(img: &Image, method: F) -> Result<Image>
where
    F: FnOnce(&GrayImage) -> Result<GrayImage>,
{
    match img {
        Image::Gray(g) => method(g).map(Image::Gray),
        Image::Rgb(c) => enhance_color(c, method).map(Image::Rgb),
    }
}
