//! Image file I/O: PNG/JPEG/BMP in, PNG out, unit-range pixels inside.

use std::path::{Path, PathBuf};

use image::{ColorType, DynamicImage, ImageFormat, ImageReader};
use phase_stretch::{Grid, Image};

use crate::error::CliError;

const INPUT_EXTENSIONS: [&str; 4] = ["png", "jpg", "jpeg", "bmp"];

/// Load an image and normalize to `[0, 1]` (8-bit value v maps to v/255).
/// Grayscale files stay single-channel; everything else becomes RGB.
pub fn load_image(path: &Path) -> Result<Image, CliError> {
    let reader = ImageReader::open(path)
        .map_err(|e| CliError::io(format!("cannot open {}: {e}", path.display())))?;
    let decoded = reader
        .decode()
        .map_err(|e| CliError::io(format!("cannot decode {}: {e}", path.display())))?;
    let grayscale = matches!(
        decoded.color(),
        ColorType::L8 | ColorType::La8 | ColorType::L16 | ColorType::La16
    );
    let (image, label) = if grayscale {
        (gray_to_image(&decoded), "grayscale")
    } else {
        (rgb_to_image(&decoded), "color")
    };
    image.map_err(|e| {
        CliError::io(format!(
            "cannot use {} as a {label} image: {e}",
            path.display()
        ))
    })
}

fn gray_to_image(decoded: &DynamicImage) -> phase_stretch::Result<Image> {
    let gray = decoded.to_luma8();
    let (width, height) = gray.dimensions();
    let data = gray.pixels().map(|p| p.0[0] as f64 / 255.0).collect();
    Image::new(height as usize, width as usize, 1, data)
}

fn rgb_to_image(decoded: &DynamicImage) -> phase_stretch::Result<Image> {
    let rgb = decoded.to_rgb8();
    let (width, height) = rgb.dimensions();
    let data = rgb.as_raw().iter().map(|&v| v as f64 / 255.0).collect();
    Image::new(height as usize, width as usize, 3, data)
}

/// Round-half-up quantization of a clamped unit-range value.
pub fn quantize(v: f64) -> u8 {
    (v.clamp(0.0, 1.0) * 255.0).round() as u8
}

/// Encode an image to PNG bytes (always PNG, regardless of extension).
pub fn encode_png(image: &Image) -> Result<Vec<u8>, CliError> {
    let width = image.cols() as u32;
    let height = image.rows() as u32;
    let bytes: Vec<u8> = image.data().iter().map(|&v| quantize(v)).collect();
    let mut out = std::io::Cursor::new(Vec::new());
    let result = match image.channels() {
        1 => image::GrayImage::from_raw(width, height, bytes)
            .expect("buffer sized from image")
            .write_to(&mut out, ImageFormat::Png),
        _ => image::RgbImage::from_raw(width, height, bytes)
            .expect("buffer sized from image")
            .write_to(&mut out, ImageFormat::Png),
    };
    result.map_err(|e| CliError::io(format!("cannot encode PNG: {e}")))?;
    Ok(out.into_inner())
}

/// Write an image as an 8-bit PNG, clamping to `[0, 1]` and rounding
/// half-up.
pub fn save_image(image: &Image, path: &Path) -> Result<(), CliError> {
    let png = encode_png(image)?;
    std::fs::write(path, png)
        .map_err(|e| CliError::io(format!("cannot write {}: {e}", path.display())))
}

/// Save a unit-range grid as a grayscale PNG.
pub fn save_grid(grid: &Grid, path: &Path) -> Result<(), CliError> {
    let image = Image::from_gray(grid.clone())
        .map_err(|e| CliError::internal(format!("grid not saveable: {e}")))?;
    save_image(&image, path)
}

/// Frame files in a directory, sorted by name; only recognized image
/// extensions count.
pub fn list_frames(dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    let entries = std::fs::read_dir(dir)
        .map_err(|e| CliError::io(format!("cannot read directory {}: {e}", dir.display())))?;
    let mut frames = Vec::new();
    for entry in entries {
        let entry =
            entry.map_err(|e| CliError::io(format!("cannot list {}: {e}", dir.display())))?;
        let path = entry.path();
        if !path.is_file() {
            continue;
        }
        let ext = path
            .extension()
            .and_then(|e| e.to_str())
            .map(|e| e.to_ascii_lowercase());
        if matches!(ext.as_deref(), Some(e) if INPUT_EXTENSIONS.contains(&e)) {
            frames.push(path);
        }
    }
    frames.sort();
    if frames.is_empty() {
        return Err(CliError::usage(format!(
            "no input frames (png/jpg/jpeg/bmp) found in {}",
            dir.display()
        )));
    }
    Ok(frames)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quantization_rule() {
        assert_eq!(quantize(1.0), 255);
        assert_eq!(quantize(0.0), 0);
        // round(127.5) half-up
        assert_eq!(quantize(0.5), 128);
        // clamped out-of-range values
        assert_eq!(quantize(1.2), 255);
        assert_eq!(quantize(-0.3), 0);
    }

    #[test]
    fn save_load_round_trip_within_quantization() {
        let dir = std::env::temp_dir().join("phase-stretch-io-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("roundtrip.png");

        let mut x = 0.37_f64;
        let grid = Grid::from_fn(9, 13, |_, _| {
            x = (x * 883.0 + 0.129).fract();
            x
        });
        let image = Image::from_gray(grid).unwrap();
        save_image(&image, &path).unwrap();
        let back = load_image(&path).unwrap();
        assert_eq!(back.channels(), 1);
        assert_eq!((back.rows(), back.cols()), (9, 13));
        for (a, b) in back.data().iter().zip(image.data()) {
            assert!((a - b).abs() <= 1.0 / 255.0 + 1e-12);
        }
        std::fs::remove_file(&path).ok();
    }

    #[test]
    fn missing_file_is_io_error() {
        let err = load_image(Path::new("/nonexistent/missing.png")).unwrap_err();
        assert_eq!(err.exit_code(), 2);
    }
}
