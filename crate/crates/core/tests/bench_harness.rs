use std::fs;
use std::path::Path;

use agc_core::bench::{
    emit_report, run_bench, simulate_corpus, summarize, BenchConfig, Manifest, Method, ReportFormat,
    ReportOptions, MANIFEST_FILE,
};
use agc_core::{read_image, write_image, BrightnessClass, GrayImage, Image, ImageFormat, RgbImage};

fn textured(w: usize, h: usize, seed: u64, lo: u8, hi: u8) -> GrayImage {
    let mut s = seed | 1;
    GrayImage::from_fn(w, h, |x, y| {
        s ^= s << 13;
        s ^= s >> 7;
        s ^= s << 17;
        let smooth = ((x * 3 + y * 2) % 64) as u64;
        let v = (smooth * 3 + s % 40) as f64 / 231.0;
        (f64::from(lo) + v * f64::from(hi - lo)) as u8
    })
    .unwrap()
}

fn write_corpus(dir: &Path) {
    write_image(&Image::Gray(textured(40, 32, 1, 10, 240)), dir.join("a.pgm"), ImageFormat::PgmBinary).unwrap();
    write_image(&Image::Gray(textured(32, 40, 2, 30, 200)), dir.join("b.pgm"), ImageFormat::PgmAscii).unwrap();
    let g = textured(36, 36, 3, 0, 255);
    let c = RgbImage::from_planes(
        36,
        36,
        g.pixels().to_vec(),
        g.pixels().iter().map(|v| v / 2).collect(),
        g.pixels().iter().map(|v| 255 - v).collect(),
    )
    .unwrap();
    write_image(&Image::Rgb(c), dir.join("c.ppm"), ImageFormat::PpmBinary).unwrap();
    fs::write(dir.join("notes.txt"), "not an image").unwrap();
}

#[test]
fn identity_gamma_copies_source() {
    let src = tempfile::tempdir().unwrap();
    let out = tempfile::tempdir().unwrap();
    let img = Image::Gray(textured(16, 16, 9, 0, 255));
    write_image(&img, src.path().join("x.pgm"), ImageFormat::PgmBinary).unwrap();
    let m = simulate_corpus(src.path(), out.path(), &[1.0]).unwrap();
    assert_eq!(m.entries.len(), 1);
    assert_eq!(read_image(&m.entries[0].distorted_path).unwrap(), img);
}

#[test]
fn constant_128_darkens_to_64() {
    let src = tempfile::tempdir().unwrap();
    let out = tempfile::tempdir().unwrap();
    write_image(&Image::Gray(GrayImage::filled(8, 8, 128).unwrap()), src.path().join("flat.pgm"), ImageFormat::PgmBinary).unwrap();
    let m = simulate_corpus(src.path(), out.path(), &[0.3, 2.0]).unwrap();
    assert_eq!(m.entries.len(), 2);
    let dimmed = read_image(&m.entries[1].distorted_path).unwrap();
    assert_eq!(dimmed, Image::Gray(GrayImage::filled(8, 8, 64).unwrap()));
    let reread = Manifest::read_csv(&out.path().join(MANIFEST_FILE)).unwrap();
    assert_eq!(reread.entries, m.entries);
    let text = std::fs::read_to_string(out.path().join(MANIFEST_FILE)).unwrap();
    assert!(text.contains(",distorted/flat__g2.pgm,"), "{text}");
}

#[test]
fn empty_and_unreadable_corpora() {
    let src = tempfile::tempdir().unwrap();
    let out = tempfile::tempdir().unwrap();
    assert!(simulate_corpus(src.path(), out.path(), &[2.0]).is_err());
    fs::write(src.path().join("broken.pgm"), b"P5 4 4 255\n").unwrap();
    assert!(simulate_corpus(src.path(), out.path(), &[2.0]).is_err());
    write_image(&Image::Gray(GrayImage::filled(4, 4, 9).unwrap()), src.path().join("ok.pgm"), ImageFormat::PgmBinary).unwrap();
    let m = simulate_corpus(src.path(), out.path(), &[2.0]).unwrap();
    assert_eq!(m.entries.len(), 1);
    assert_eq!(m.skipped.len(), 1);
    assert!(simulate_corpus(src.path(), out.path(), &[0.0]).is_err());
}

#[test]
fn full_run_cardinality_and_classes() {
    let src = tempfile::tempdir().unwrap();
    let out = tempfile::tempdir().unwrap();
    write_corpus(src.path());
    let manifest = simulate_corpus(src.path(), out.path(), &[0.3, 2.0]).unwrap();
    assert_eq!(manifest.entries.len(), 6);

    let cfg = BenchConfig { repetitions: 1, ..BenchConfig::default() };
    let rows = run_bench(&manifest, &Method::DEFAULT, &cfg, Some(out.path())).unwrap();
    assert_eq!(rows.len(), 3 * 2 * 4);
    assert!(rows.iter().all(|r| r.error.is_none()));

    let t_bright = cfg.enhance.target_brightness * (1.0 + cfg.enhance.class_threshold);
    for (entry, chunk) in manifest.entries.iter().zip(rows.chunks(4)) {
        let proposed = chunk.iter().find(|r| r.method == Method::Proposed).unwrap();
        let mean = agc_core::mean_intensity(&read_image(&entry.distorted_path).unwrap().intensity());
        if entry.gamma < 1.0 && mean > t_bright {
            assert_eq!(proposed.class, Some(BrightnessClass::Bright));
        }
        for r in chunk {
            let m = r.metrics.unwrap();
            assert!((0.0..=1.0).contains(&m.emeg));
            assert!((0.0..=2.0).contains(&m.pcqi_pc));
        }
    }
    assert!(out.path().join("proposed/bright-g0.3/a.pgm").is_file());
    assert!(out.path().join("he/dimmed-g2/c.ppm").is_file());

    let summary = summarize(&rows).unwrap();
    let report = emit_report(&summary, ReportFormat::Markdown, ReportOptions { paper_scale: false, timing: true });
    assert!(report.contains("## bright-g0.3"));
    assert!(report.contains("## dimmed-g2"));
    assert!(report.contains("| INPUT | 3 |"));
}

#[test]
fn identity_control_sees_distortion() {
    let src = tempfile::tempdir().unwrap();
    let out = tempfile::tempdir().unwrap();
    write_corpus(src.path());
    let manifest = simulate_corpus(src.path(), out.path(), &[0.3, 2.0]).unwrap();
    let cfg = BenchConfig { repetitions: 1, ..BenchConfig::default() };
    let rows = run_bench(&manifest, &[Method::Identity], &cfg, None).unwrap();
    for r in rows {
        assert!(r.metrics.unwrap().gmsd > 0.0, "{}", r.image_id);
    }
}

#[test]
fn parallel_rows_match_serial() {
    let src = tempfile::tempdir().unwrap();
    let out = tempfile::tempdir().unwrap();
    write_corpus(src.path());
    let manifest = simulate_corpus(src.path(), out.path(), &[0.3, 2.0]).unwrap();
    let strip = |cfg: BenchConfig| {
        let mut rows = run_bench(&manifest, &Method::DEFAULT, &cfg, None).unwrap();
        for r in &mut rows {
            if let Some(m) = r.metrics.as_mut() {
                m.elapsed_ms = None;
            }
        }
        rows
    };
    let serial = strip(BenchConfig { repetitions: 1, jobs: 1, ..BenchConfig::default() });
    let parallel = strip(BenchConfig { repetitions: 1, jobs: 4, ..BenchConfig::default() });
    assert_eq!(serial, parallel);
}

#[test]
fn missing_distorted_file_becomes_error_rows() {
    let src = tempfile::tempdir().unwrap();
    let out = tempfile::tempdir().unwrap();
    write_corpus(src.path());
    let mut manifest = simulate_corpus(src.path(), out.path(), &[2.0]).unwrap();
    manifest.entries[0].distorted_path = out.path().join("gone.pgm");
    let cfg = BenchConfig { repetitions: 1, ..BenchConfig::default() };
    let rows = run_bench(&manifest, &Method::DEFAULT, &cfg, None).unwrap();
    assert_eq!(rows.len(), 12);
    assert_eq!(rows.iter().filter(|r| r.error.is_some()).count(), 4);
    assert_eq!(summarize(&rows).unwrap().errors, 4);
}

#[test]
fn timing_excludes_io() {
    let src = tempfile::tempdir().unwrap();
    let out = tempfile::tempdir().unwrap();
    let img = textured(512, 384, 5, 0, 120);
    write_image(&Image::Gray(img), src.path().join("big.pgm"), ImageFormat::PgmBinary).unwrap();
    let manifest = simulate_corpus(src.path(), out.path(), &[2.0]).unwrap();
    let cfg = BenchConfig { repetitions: 5, ..BenchConfig::default() };
    let rows = run_bench(&manifest, &[Method::Identity, Method::Agcwd], &cfg, None).unwrap();
    let noop = rows[0].metrics.unwrap().elapsed_ms.unwrap();
    let agcwd = rows[1].metrics.unwrap().elapsed_ms.unwrap();
    assert!(noop < 0.05 * agcwd, "no-op {noop} ms vs agcwd {agcwd} ms");
}
