//! RGB <-> HSV conversion (hexcone model, all channels in unit range).

use crate::error::{Error, Result};
use crate::image::{Grid, Image};

/// Planar HSV image: hue in `[0, 1)`, saturation and value in `[0, 1]`.
#[derive(Debug, Clone)]
pub struct HsvImage {
    rows: usize,
    cols: usize,
    h: Vec<f64>,
    s: Vec<f64>,
    v: Vec<f64>,
}

impl HsvImage {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn hue(&self) -> &[f64] {
        &self.h
    }

    pub fn saturation(&self) -> &[f64] {
        &self.s
    }

    pub fn value(&self) -> &[f64] {
        &self.v
    }

    /// Replace the saturation plane.
    pub fn set_saturation(&mut self, plane: &Grid) -> Result<()> {
        self.check_plane(plane)?;
        self.s.copy_from_slice(plane.data());
        Ok(())
    }

    /// Replace the value plane.
    pub fn set_value(&mut self, plane: &Grid) -> Result<()> {
        self.check_plane(plane)?;
        self.v.copy_from_slice(plane.data());
        Ok(())
    }

    pub fn saturation_grid(&self) -> Grid {
        Grid::new(self.rows, self.cols, self.s.clone()).expect("matching dimensions")
    }

    pub fn value_grid(&self) -> Grid {
        Grid::new(self.rows, self.cols, self.v.clone()).expect("matching dimensions")
    }

    fn check_plane(&self, plane: &Grid) -> Result<()> {
        if plane.rows() != self.rows || plane.cols() != self.cols {
            return Err(Error::ShapeMismatch {
                expected_rows: self.rows,
                expected_cols: self.cols,
                rows: plane.rows(),
                cols: plane.cols(),
            });
        }
        Ok(())
    }
}

/// Per-pixel hexcone conversion; gray pixels get hue 0 by convention.
pub fn pixel_rgb_to_hsv(r: f64, g: f64, b: f64) -> (f64, f64, f64) {
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    let delta = max - min;
    let v = max;
    let s = if max > 0.0 { delta / max } else { 0.0 };
    let h = if delta == 0.0 {
        0.0
    } else if max == r {
        (((g - b) / delta).rem_euclid(6.0)) / 6.0
    } else if max == g {
        ((b - r) / delta + 2.0) / 6.0
    } else {
        ((r - g) / delta + 4.0) / 6.0
    };
    // rem_euclid can land exactly on 6/6; keep hue in [0, 1).
    (if h >= 1.0 { h - 1.0 } else { h }, s, v)
}

pub fn pixel_hsv_to_rgb(h: f64, s: f64, v: f64) -> (f64, f64, f64) {
    if s == 0.0 {
        return (v, v, v);
    }
    let h6 = h * 6.0;
    let sector = (h6.floor() as i64).rem_euclid(6) as u8;
    let f = h6 - h6.floor();
    let p = v * (1.0 - s);
    let q = v * (1.0 - s * f);
    let t = v * (1.0 - s * (1.0 - f));
    match sector {
        0 => (v, t, p),
        1 => (q, v, p),
        2 => (p, v, t),
        3 => (p, q, v),
        4 => (t, p, v),
        _ => (v, p, q),
    }
}

/// Convert a 3-channel image to planar HSV.
pub fn rgb_to_hsv(image: &Image) -> Result<HsvImage> {
    if image.channels() != 3 {
        return Err(Error::ChannelMismatch {
            expected: 3,
            got: image.channels(),
        });
    }
    let n = image.rows() * image.cols();
    let mut h = Vec::with_capacity(n);
    let mut s = Vec::with_capacity(n);
    let mut v = Vec::with_capacity(n);
    for px in image.data().chunks_exact(3) {
        let (ph, ps, pv) = pixel_rgb_to_hsv(px[0], px[1], px[2]);
        h.push(ph);
        s.push(ps);
        v.push(pv);
    }
    Ok(HsvImage {
        rows: image.rows(),
        cols: image.cols(),
        h,
        s,
        v,
    })
}

/// Convert planar HSV back to a 3-channel image.
pub fn hsv_to_rgb(hsv: &HsvImage) -> Image {
    let mut data = Vec::with_capacity(hsv.h.len() * 3);
    for i in 0..hsv.h.len() {
        let (r, g, b) = pixel_hsv_to_rgb(hsv.h[i], hsv.s[i], hsv.v[i]);
        data.extend_from_slice(&[r, g, b]);
    }
    Image::new(hsv.rows, hsv.cols, 3, data).expect("matching dimensions")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pure_red_and_gray() {
        let (h, s, v) = pixel_rgb_to_hsv(1.0, 0.0, 0.0);
        assert_eq!((h, s, v), (0.0, 1.0, 1.0));

        let (h, s, v) = pixel_rgb_to_hsv(0.5, 0.5, 0.5);
        assert_eq!((h, s, v), (0.0, 0.0, 0.5));
    }

    #[test]
    fn primary_corners_round_trip_exactly() {
        for rgb in [
            (0.0, 0.0, 0.0),
            (1.0, 1.0, 1.0),
            (1.0, 0.0, 0.0),
            (0.0, 1.0, 0.0),
            (0.0, 0.0, 1.0),
            (1.0, 1.0, 0.0),
            (0.0, 1.0, 1.0),
            (1.0, 0.0, 1.0),
        ] {
            let (h, s, v) = pixel_rgb_to_hsv(rgb.0, rgb.1, rgb.2);
            assert!((0.0..1.0).contains(&h));
            let back = pixel_hsv_to_rgb(h, s, v);
            assert_eq!(back, rgb);
        }
    }

    #[test]
    fn conversion_requires_three_channels() {
        let gray = Image::new(2, 2, 1, vec![0.5; 4]).unwrap();
        assert!(matches!(
            rgb_to_hsv(&gray),
            Err(Error::ChannelMismatch { .. })
        ));
    }

    #[test]
    fn random_pixels_round_trip_tightly() {
        // Deterministic pseudo-random sweep over the cube.
        let mut x = 0.123_f64;
        let mut next = || {
            x = (x * 997.0 + 0.171).fract();
            x
        };
        for _ in 0..1000 {
            let rgb = (next(), next(), next());
            let (h, s, v) = pixel_rgb_to_hsv(rgb.0, rgb.1, rgb.2);
            let back = pixel_hsv_to_rgb(h, s, v);
            for (a, b) in [(back.0, rgb.0), (back.1, rgb.1), (back.2, rgb.2)] {
                assert!((a - b).abs() < 1e-6);
            }
        }
    }
}
