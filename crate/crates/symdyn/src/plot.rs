//! PNG output for symbol grids: plane colorings, point sets and homotopy sweeps.

use std::fs::File;
use std::io::BufWriter;
use std::path::Path;

use symdyn_core::Sym;

const PALETTE: [[u8; 3]; 8] = [
    [245, 245, 240],
    [30, 30, 30],
    [214, 69, 65],
    [52, 118, 190],
    [240, 180, 40],
    [60, 160, 90],
    [150, 90, 170],
    [120, 120, 120],
];

pub fn color(s: Sym) -> [u8; 3] {
    PALETTE[s as usize % PALETTE.len()]
}

/// Writes `rows` (row 0 on top) as an RGB image, each cell a `scale`-pixel square.
pub fn write_grid(path: &Path, rows: &[Vec<Sym>], scale: usize) -> std::io::Result<()> {
    let scale = scale.max(1);
    let h = rows.len();
    let w = rows.iter().map(Vec::len).max().unwrap_or(0);
    if h == 0 || w == 0 {
        return Err(std::io::Error::new(std::io::ErrorKind::InvalidInput, "empty image"));
    }
    let (pw, ph) = (w * scale, h * scale);
    let mut data = vec![0u8; pw * ph * 3];
    for (y, row) in rows.iter().enumerate() {
        for (x, &s) in row.iter().enumerate() {
            let c = color(s);
            for dy in 0..scale {
                let base = ((y * scale + dy) * pw + x * scale) * 3;
                for dx in 0..scale {
                    data[base + 3 * dx..base + 3 * dx + 3].copy_from_slice(&c);
                }
            }
        }
    }
    let file = BufWriter::new(File::create(path)?);
    let mut enc = png::Encoder::new(file, pw as u32, ph as u32);
    enc.set_color(png::ColorType::Rgb);
    enc.set_depth(png::BitDepth::Eight);
    let mut writer = enc.write_header().map_err(std::io::Error::other)?;
    writer.write_image_data(&data).map_err(std::io::Error::other)?;
    writer.finish().map_err(std::io::Error::other)
}
