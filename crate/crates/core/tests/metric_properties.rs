use agc_core::metrics::{emeg_with, patch_factors, pcqi_with};
use agc_core::{emeg, gmsd, negate, pcqi, GrayImage};
use proptest::prelude::*;

fn image(min: usize) -> impl Strategy<Value = GrayImage> {
    (min..40, min..40, 0u8..4).prop_flat_map(|(w, h, kind)| {
        prop::collection::vec(any::<u8>(), w * h).prop_map(move |px| {
            // Mix noise with adversarial structure: binary, flat and sparse.
            let px = px
                .into_iter()
                .map(|v| match kind {
                    0 => v,
                    1 => if v & 1 == 0 { 0 } else { 255 },
                    2 => if v < 250 { 128 } else { v },
                    _ => v / 64 * 85,
                })
                .collect();
            GrayImage::new(w, h, px).unwrap()
        })
    })
}

fn pair(min: usize) -> impl Strategy<Value = (GrayImage, GrayImage)> {
    image(min).prop_flat_map(|a| {
        let (w, h) = a.dimensions();
        prop::collection::vec(any::<u8>(), w * h).prop_map(move |px| (a.clone(), GrayImage::new(w, h, px).unwrap()))
    })
}

proptest! {
    #[test]
    fn emeg_in_unit_interval(img in image(8)) {
        let e = emeg(&img).unwrap();
        prop_assert!((0.0..=1.0).contains(&e));
        prop_assert_eq!(e, emeg(&negate(&img)).unwrap());
        let e = emeg_with(&img, 3, 1).unwrap();
        prop_assert!((0.0..=1.0).contains(&e));
    }

    #[test]
    fn gmsd_symmetric_nonnegative((a, b) in pair(1)) {
        let d = gmsd(&a, &b).unwrap();
        prop_assert!(d >= 0.0);
        prop_assert_eq!(d, gmsd(&b, &a).unwrap());
        prop_assert_eq!(gmsd(&a, &a).unwrap(), 0.0);
    }

    #[test]
    fn pcqi_ranges((a, b) in pair(11)) {
        let q = pcqi(&a, &b).unwrap();
        prop_assert!((0.0..=2.0).contains(&q.contrast));
        prop_assert!((0.0..=1.0).contains(&q.structure));
        prop_assert!((0.0..=1.0).contains(&q.intensity));
        let id = pcqi(&a, &a).unwrap();
        for v in [id.contrast, id.structure, id.intensity, id.overall] {
            prop_assert!((v - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn per_patch_product((a, b) in pair(5)) {
        let f = patch_factors(&a, &b, 0, 0, 5);
        prop_assert!((f.product() - f.contrast * f.structure * f.intensity).abs() < 1e-9);
        let q = pcqi_with(&a, &b, 5, 2).unwrap();
        prop_assert!(q.overall <= 2.0 && q.overall >= 0.0);
    }
}
