//! Per-image output mapping shared by the CLI and the golden tests:
//! algorithm results rendered into saveable unit-range images.

use phase_stretch::{Grid, Image, Page, Pst, PstOutput, Vevid};

use crate::error::CliError;

/// PST output image: the binary edge map in digital mode, otherwise the
/// magnitude of the normalized phase map.
pub fn pst_output_image(pst: &Pst, image: &Image) -> Result<Image, CliError> {
    let grid = match pst.run(image)? {
        PstOutput::Digital(edges) => edges.to_grid(),
        PstOutput::Analog(map) => map.map(f64::abs),
    };
    Ok(Image::from_gray(grid)?)
}

/// PAGE fused hue visualization.
pub fn page_output_image(page: &Page, image: &Image) -> Result<Image, CliError> {
    let stack = page.run(image)?;
    Ok(page.visualize(&stack))
}

/// PAGE per-direction layers as grayscale response magnitudes.
pub fn page_layer_images(page: &Page, image: &Image) -> Result<Vec<Grid>, CliError> {
    let stack = page.run(image)?;
    Ok(stack.layers().iter().map(|l| l.map(f64::abs)).collect())
}

/// VEViD enhanced image; grayscale inputs are expanded to RGB first.
pub fn vevid_output_image(vevid: &Vevid, image: &Image) -> Result<Image, CliError> {
    Ok(vevid.run(&image.to_rgb())?)
}
