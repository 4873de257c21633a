//! PGM/PPM (plain and raw) codecs, plus PNG behind the `png` feature.
//!
//! PNM headers are whitespace-separated `magic width height maxval` with
//! `#` comments allowed anywhere a separator is. Only `maxval == 255` is
//! accepted.

use std::fs;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::raster::{GrayImage, Image, RgbImage};

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub enum ImageFormat {
    /// `P5`
    PgmBinary,
    /// `P2`
    PgmAscii,
    /// `P6`
    PpmBinary,
    /// `P3`
    PpmAscii,
    Png,
}

impl ImageFormat {
    /// Binary PNM (or PNG) matching the kind of `img`, chosen from the
    /// extension of `path` when it names a PNG.
    pub fn for_path(path: &Path, img: &Image) -> Self {
        let is_png = path
            .extension()
            .and_then(|e| e.to_str())
            .is_some_and(|e| e.eq_ignore_ascii_case("png"));
        match (is_png, img) {
            (true, _) => ImageFormat::Png,
            (false, Image::Gray(_)) => ImageFormat::PgmBinary,
            (false, Image::Rgb(_)) => ImageFormat::PpmBinary,
        }
    }

    /// Conventional file extension.
    pub fn extension(self) -> &'static str {
        match self {
            ImageFormat::PgmBinary | ImageFormat::PgmAscii => "pgm",
            ImageFormat::PpmBinary | ImageFormat::PpmAscii => "ppm",
            ImageFormat::Png => "png",
        }
    }
}

/// Extensions the directory scanners treat as images.
pub fn is_supported_extension(path: &Path) -> bool {
    let Some(ext) = path.extension().and_then(|e| e.to_str()) else {
        return false;
    };
    let ext = ext.to_ascii_lowercase();
    matches!(ext.as_str(), "pgm" | "ppm" | "pnm") || (cfg!(feature = "png") && ext == "png")
}

pub fn read_image(path: impl AsRef<Path>) -> Result<Image> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
    decode(&bytes)
}

/// Decodes a PNM (or, with the `png` feature, PNG) byte stream.
pub fn decode(bytes: &[u8]) -> Result<Image> {
    if bytes.starts_with(PNG_SIGNATURE) {
        return decode_png(bytes);
    }
    decode_pnm(bytes)
}

pub fn write_image(img: &Image, path: impl AsRef<Path>, format: ImageFormat) -> Result<()> {
    let path = path.as_ref();
    let bytes = encode(img, format)?;
    let mut file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(&bytes).map_err(|e| Error::io(path, e))
}

pub fn encode(img: &Image, format: ImageFormat) -> Result<Vec<u8>> {
    match (format, img) {
        (ImageFormat::PgmBinary, Image::Gray(g)) => Ok(encode_raw(b"P5", g.width(), g.height(), g.pixels())),
        (ImageFormat::PgmAscii, Image::Gray(g)) => Ok(encode_plain("P2", g.width(), g.height(), g.pixels(), g.width())),
        (ImageFormat::PpmBinary, Image::Rgb(c)) => {
            Ok(encode_raw(b"P6", c.width(), c.height(), &c.to_interleaved()))
        }
        (ImageFormat::PpmAscii, Image::Rgb(c)) => {
            Ok(encode_plain("P3", c.width(), c.height(), &c.to_interleaved(), c.width() * 3))
        }
        (ImageFormat::Png, img) => encode_png(img),
        (format, Image::Gray(_)) => Err(Error::UnsupportedFormat(format!("{format:?} cannot hold a grayscale image"))),
        (format, Image::Rgb(_)) => Err(Error::UnsupportedFormat(format!("{format:?} cannot hold a color image"))),
    }
}

fn encode_raw(magic: &[u8], width: usize, height: usize, data: &[u8]) -> Vec<u8> {
    let mut out = Vec::with_capacity(data.len() + 32);
    out.extend_from_slice(magic);
    out.extend_from_slice(format!("\n{width} {height}\n255\n").as_bytes());
    out.extend_from_slice(data);
    out
}

fn encode_plain(magic: &str, width: usize, height: usize, data: &[u8], per_row: usize) -> Vec<u8> {
    let mut out = format!("{magic}\n{width} {height}\n255\n");
    for row in data.chunks(per_row) {
        let line: Vec<String> = row.iter().map(u8::to_string).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out.into_bytes()
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn skip_separators(&mut self) {
        while let Some(&b) = self.bytes.get(self.pos) {
            if b == b'#' {
                while let Some(&c) = self.bytes.get(self.pos) {
                    self.pos += 1;
                    if c == b'\n' || c == b'\r' {
                        break;
                    }
                }
            } else if b.is_ascii_whitespace() {
                self.pos += 1;
            } else {
                break;
            }
        }
    }

    fn number(&mut self, what: &str) -> Result<u32> {
        self.skip_separators();
        let start = self.pos;
        while self.bytes.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(Error::Malformed(format!("expected {what}")));
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .ok()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Malformed(format!("{what} out of range")))
    }
}

fn decode_pnm(bytes: &[u8]) -> Result<Image> {
    if bytes.len() < 2 || bytes[0] != b'P' {
        return Err(Error::UnsupportedFormat("missing PNM magic number".into()));
    }
    let magic = bytes[1];
    let (channels, binary) = match magic {
        b'2' => (1, false),
        b'5' => (1, true),
        b'3' => (3, false),
        b'6' => (3, true),
        other => {
            return Err(Error::UnsupportedFormat(format!("PNM type P{}", other as char)));
        }
    };
    let mut cur = Cursor { bytes, pos: 2 };
    let width = cur.number("width")? as usize;
    let height = cur.number("height")? as usize;
    let maxval = cur.number("maxval")?;
    if width == 0 || height == 0 {
        return Err(Error::Malformed(format!("zero dimension {width}x{height}")));
    }
    if maxval != 255 {
        return Err(Error::UnsupportedBitDepth(maxval));
    }
    let count = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(channels))
        .ok_or_else(|| Error::Malformed("dimensions overflow".into()))?;

    let data = if binary {
        // Exactly one whitespace byte separates the header from the raster.
        if !cur.bytes.get(cur.pos).is_some_and(u8::is_ascii_whitespace) {
            return Err(Error::Malformed("missing separator after maxval".into()));
        }
        let start = cur.pos + 1;
        let payload = bytes
            .get(start..start.saturating_add(count))
            .filter(|p| p.len() == count)
            .ok_or_else(|| Error::Malformed(format!("truncated raster: expected {count} bytes")))?;
        payload.to_vec()
    } else {
        let mut data = Vec::with_capacity(count);
        for _ in 0..count {
            let v = cur.number("sample").map_err(|_| Error::Malformed(format!("truncated raster: expected {count} samples")))?;
            if v > 255 {
                return Err(Error::Malformed(format!("sample {v} exceeds maxval")));
            }
            data.push(v as u8);
        }
        data
    };

    if channels == 1 {
        Ok(Image::Gray(GrayImage::new(width, height, data)?))
    } else {
        Ok(Image::Rgb(RgbImage::from_interleaved(width, height, &data)?))
    }
}

const PNG_SIGNATURE: &[u8] = &[0x89, b'P', b'N', b'G', 0x0d, 0x0a, 0x1a, 0x0a];

#[cfg(feature = "png")]
fn decode_png(bytes: &[u8]) -> Result<Image> {
    use png::{BitDepth, ColorType, Transformations};

    let png_err = |e: png::DecodingError| Error::Malformed(format!("png: {e}"));
    let mut decoder = png::Decoder::new(std::io::Cursor::new(bytes));
    decoder.set_transformations(Transformations::EXPAND);
    let mut reader = decoder.read_info().map_err(png_err)?;
    let (color, depth) = reader.output_color_type();
    if depth != BitDepth::Eight {
        return Err(Error::UnsupportedBitDepth((1u32 << depth as u32) - 1));
    }
    let size = reader
        .output_buffer_size()
        .ok_or_else(|| Error::Malformed("png: image too large".into()))?;
    let mut buf = vec![0; size];
    let info = reader.next_frame(&mut buf).map_err(png_err)?;
    let (w, h) = (info.width as usize, info.height as usize);
    let stride = info.line_size;
    let samples = color.samples();
    let mut packed = Vec::with_capacity(w * h * samples);
    for row in buf.chunks(stride).take(h) {
        packed.extend_from_slice(&row[..w * samples]);
    }
    match color {
        ColorType::Grayscale => Ok(Image::Gray(GrayImage::new(w, h, packed)?)),
        ColorType::GrayscaleAlpha => {
            Ok(Image::Gray(GrayImage::new(w, h, packed.chunks_exact(2).map(|p| p[0]).collect())?))
        }
        ColorType::Rgb => Ok(Image::Rgb(RgbImage::from_interleaved(w, h, &packed)?)),
        ColorType::Rgba => {
            let rgb: Vec<u8> = packed.chunks_exact(4).flat_map(|p| [p[0], p[1], p[2]]).collect();
            Ok(Image::Rgb(RgbImage::from_interleaved(w, h, &rgb)?))
        }
        ColorType::Indexed => Err(Error::UnsupportedFormat("png: unexpanded palette".into())),
    }
}

#[cfg(not(feature = "png"))]
fn decode_png(_: &[u8]) -> Result<Image> {
    Err(Error::UnsupportedFormat("built without png support".into()))
}

#[cfg(feature = "png")]
fn encode_png(img: &Image) -> Result<Vec<u8>> {
    let mut out = Vec::new();
    let (w, h) = img.dimensions();
    let (color, data) = match img {
        Image::Gray(g) => (png::ColorType::Grayscale, g.pixels().to_vec()),
        Image::Rgb(c) => (png::ColorType::Rgb, c.to_interleaved()),
    };
    let too_big = |_| Error::UnsupportedFormat("png: dimensions exceed u32".into());
    let mut enc = png::Encoder::new(&mut out, u32::try_from(w).map_err(too_big)?, u32::try_from(h).map_err(too_big)?);
    enc.set_color(color);
    enc.set_depth(png::BitDepth::Eight);
    let enc_err = |e: png::EncodingError| Error::Malformed(format!("png: {e}"));
    let mut writer = enc.write_header().map_err(enc_err)?;
    writer.write_image_data(&data).map_err(enc_err)?;
    writer.finish().map_err(enc_err)?;
    Ok(out)
}

#[cfg(not(feature = "png"))]
fn encode_png(_: &Image) -> Result<Vec<u8>> {
    Err(Error::UnsupportedFormat("built without png support".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gray(img: Image) -> GrayImage {
        match img {
            Image::Gray(g) => g,
            Image::Rgb(_) => panic!("expected gray"),
        }
    }

    #[test]
    fn decodes_raw_pgm() {
        let mut bytes = b"P5\n2 2\n255\n".to_vec();
        bytes.extend_from_slice(&[0x00, 0x00, 0x00, 0x64]);
        assert_eq!(gray(decode(&bytes).unwrap()).pixels(), &[0, 0, 0, 100]);
    }

    #[test]
    fn decodes_plain_pgm() {
        assert_eq!(gray(decode(b"P2 1 1 255 42").unwrap()).pixels(), &[42]);
        let commented = b"P2\n# made by hand\n2 1 # width height\n255\n7\n# mid\n9\n";
        assert_eq!(gray(decode(commented).unwrap()).pixels(), &[7, 9]);
    }

    #[test]
    fn comment_before_raw_payload() {
        let mut bytes = b"P5 #c\n1 1\n#c2\n255\n".to_vec();
        bytes.push(b'#');
        assert_eq!(gray(decode(&bytes).unwrap()).pixels(), b"#");
    }

    #[test]
    fn decodes_ppm() {
        let img = decode(b"P3 2 1 255  1 2 3  4 5 6").unwrap();
        let Image::Rgb(c) = img else { panic!() };
        assert_eq!(c.to_interleaved(), vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn malformed_inputs() {
        let mut short = b"P5 2 2 255\n".to_vec();
        short.extend_from_slice(&[1, 2, 3]);
        assert!(matches!(decode(&short), Err(Error::Malformed(_))));
        assert!(matches!(decode(b"P2 2 1 255 4"), Err(Error::Malformed(_))));
        assert!(matches!(decode(b"P2 1 1 255 300"), Err(Error::Malformed(_))));
        assert!(matches!(decode(b"P2 x 1 255 3"), Err(Error::Malformed(_))));
        assert!(matches!(decode(b"P2 0 1 255"), Err(Error::Malformed(_))));
        assert!(matches!(decode(b"P2 1 1 65535 3"), Err(Error::UnsupportedBitDepth(65535))));
        assert!(matches!(decode(b"P7 1 1 255"), Err(Error::UnsupportedFormat(_))));
        assert!(matches!(decode(b"hello"), Err(Error::UnsupportedFormat(_))));
    }

    #[test]
    fn missing_file_is_io_error() {
        assert!(matches!(read_image("/definitely/not/here.pgm"), Err(Error::Io { .. })));
    }

    #[test]
    fn kind_mismatch_is_rejected() {
        let g = Image::Gray(GrayImage::filled(1, 1, 0).unwrap());
        assert!(encode(&g, ImageFormat::PpmBinary).is_err());
    }

    #[test]
    fn writes_single_pixel() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("one.pgm");
        let img = Image::Gray(GrayImage::filled(1, 1, 255).unwrap());
        write_image(&img, &path, ImageFormat::PgmAscii).unwrap();
        assert_eq!(read_image(&path).unwrap(), img);
    }

    #[test]
    fn format_selection() {
        let g = Image::Gray(GrayImage::filled(1, 1, 0).unwrap());
        assert_eq!(ImageFormat::for_path(Path::new("a/b.PNG"), &g), ImageFormat::Png);
        assert_eq!(ImageFormat::for_path(Path::new("a/b.pgm"), &g), ImageFormat::PgmBinary);
        assert!(is_supported_extension(Path::new("x.PPM")));
        assert!(!is_supported_extension(Path::new("x.jpg")));
    }
}
