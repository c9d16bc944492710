//! Dense image frames, flow fields and binary masks.

use crate::error::{FlowError, Result};
use crate::num::Scalar;

/// Subpixel image coordinate. `x` grows rightward, `y` downward; pixel
/// centers sit at integer coordinates with the origin at the top-left pixel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PixelCoord<T = f32> {
    pub x: T,
    pub y: T,
}

impl<T: Scalar> PixelCoord<T> {
    pub fn new(x: T, y: T) -> Self {
        Self { x, y }
    }
}

/// A float image, channel-interleaved row-major (`[y][x][channel]`).
///
/// Frames decoded from 8-bit sources hold intensities in `[0, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct ImageFrame<T = f32> {
    height: usize,
    width: usize,
    channels: usize,
    data: Vec<T>,
}

impl<T: Scalar> ImageFrame<T> {
    /// Builds a frame from raw interleaved data, validating shape and finiteness.
    pub fn new(height: usize, width: usize, channels: usize, data: Vec<T>) -> Result<Self> {
        if height == 0 || width == 0 {
            return Err(FlowError::InvalidArgument("empty image".into()));
        }
        if channels != 1 && channels != 3 {
            return Err(FlowError::InvalidArgument(format!(
                "image must have 1 or 3 channels, got {channels}"
            )));
        }
        if data.len() != height * width * channels {
            return Err(FlowError::DimensionMismatch(format!(
                "image data length {} != {height}x{width}x{channels}",
                data.len()
            )));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(FlowError::InvalidArgument(
                "image contains non-finite values".into(),
            ));
        }
        Ok(Self {
            height,
            width,
            channels,
            data,
        })
    }

    pub(crate) fn from_raw(height: usize, width: usize, channels: usize, data: Vec<T>) -> Self {
        debug_assert_eq!(data.len(), height * width * channels);
        Self {
            height,
            width,
            channels,
            data,
        }
    }

    pub fn zeros(height: usize, width: usize, channels: usize) -> Self {
        Self::from_raw(height, width, channels, vec![T::zero(); height * width * channels])
    }

    pub fn filled(height: usize, width: usize, channels: usize, value: T) -> Self {
        Self::from_raw(height, width, channels, vec![value; height * width * channels])
    }

    /// Converts 8-bit samples to `[0, 1]` intensities.
    pub fn from_u8(height: usize, width: usize, channels: usize, bytes: &[u8]) -> Result<Self> {
        if bytes.len() != height * width * channels {
            return Err(FlowError::DimensionMismatch(format!(
                "byte length {} != {height}x{width}x{channels}",
                bytes.len()
            )));
        }
        let data = bytes.iter().map(|&b| T::cast(b as f64 / 255.0)).collect();
        Self::new(height, width, channels, data)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn channels(&self) -> usize {
        self.channels
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [T] {
        &mut self.data
    }

    #[inline]
    pub fn get(&self, y: usize, x: usize, ch: usize) -> T {
        self.data[(y * self.width + x) * self.channels + ch]
    }

    #[inline]
    pub fn set(&mut self, y: usize, x: usize, ch: usize, value: T) {
        self.data[(y * self.width + x) * self.channels + ch] = value;
    }

    /// All channel values at one pixel.
    #[inline]
    pub fn pixel(&self, y: usize, x: usize) -> &[T] {
        let base = (y * self.width + x) * self.channels;
        &self.data[base..base + self.channels]
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.height == other.height && self.width == other.width && self.channels == other.channels
    }

    /// Rec. 601 luma for 3-channel frames; identity for grayscale.
    pub fn to_gray(&self) -> ImageFrame<T> {
        if self.channels == 1 {
            return self.clone();
        }
        let (wr, wg, wb) = (T::cast(0.299), T::cast(0.587), T::cast(0.114));
        let mut out = Vec::with_capacity(self.height * self.width);
        for px in self.data.chunks_exact(3) {
            out.push(wr * px[0] + wg * px[1] + wb * px[2]);
        }
        ImageFrame::from_raw(self.height, self.width, 1, out)
    }

    /// Clamps every sample into `[0, 1]`.
    pub fn clamp_unit(&mut self) {
        for v in &mut self.data {
            *v = v.max(T::zero()).min(T::one());
        }
    }

    pub fn crop(&self, top: usize, left: usize, height: usize, width: usize) -> Result<Self> {
        if top + height > self.height || left + width > self.width {
            return Err(FlowError::InvalidArgument(format!(
                "crop {height}x{width}+{top}+{left} exceeds image {}x{}",
                self.height, self.width
            )));
        }
        let mut data = Vec::with_capacity(height * width * self.channels);
        for y in top..top + height {
            let start = (y * self.width + left) * self.channels;
            data.extend_from_slice(&self.data[start..start + width * self.channels]);
        }
        Ok(Self::from_raw(height, width, self.channels, data))
    }

    /// Mirrors the frame left-right.
    pub fn flip_horizontal(&self) -> Self {
        let mut out = Self::zeros(self.height, self.width, self.channels);
        for y in 0..self.height {
            for x in 0..self.width {
                for ch in 0..self.channels {
                    out.set(y, x, ch, self.get(y, self.width - 1 - x, ch));
                }
            }
        }
        out
    }
}

/// Dense displacement field, units of pixels. Component `u` points rightward,
/// `v` downward; stored interleaved `[y][x][u, v]`.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowField<T = f32> {
    height: usize,
    width: usize,
    data: Vec<T>,
}

impl<T: Scalar> FlowField<T> {
    pub fn new(height: usize, width: usize, data: Vec<T>) -> Result<Self> {
        if data.len() != height * width * 2 {
            return Err(FlowError::DimensionMismatch(format!(
                "flow data length {} != {height}x{width}x2",
                data.len()
            )));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(FlowError::InvalidArgument(
                "flow contains non-finite values".into(),
            ));
        }
        Ok(Self {
            height,
            width,
            data,
        })
    }

    pub(crate) fn from_raw(height: usize, width: usize, data: Vec<T>) -> Self {
        debug_assert_eq!(data.len(), height * width * 2);
        Self {
            height,
            width,
            data,
        }
    }

    pub fn zeros(height: usize, width: usize) -> Self {
        Self::from_raw(height, width, vec![T::zero(); height * width * 2])
    }

    pub fn constant(height: usize, width: usize, u: T, v: T) -> Self {
        let mut data = Vec::with_capacity(height * width * 2);
        for _ in 0..height * width {
            data.push(u);
            data.push(v);
        }
        Self::from_raw(height, width, data)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [T] {
        &mut self.data
    }

    #[inline]
    pub fn get(&self, y: usize, x: usize) -> (T, T) {
        let base = (y * self.width + x) * 2;
        (self.data[base], self.data[base + 1])
    }

    #[inline]
    pub fn set(&mut self, y: usize, x: usize, u: T, v: T) {
        let base = (y * self.width + x) * 2;
        self.data[base] = u;
        self.data[base + 1] = v;
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.height == other.height && self.width == other.width
    }

    /// Mean endpoint magnitude over every pixel.
    pub fn mean_magnitude(&self) -> f64 {
        let mut acc = 0.0;
        for px in self.data.chunks_exact(2) {
            let (u, v) = (px[0].to_f64(), px[1].to_f64());
            acc += (u * u + v * v).sqrt();
        }
        acc / (self.height * self.width) as f64
    }

    pub fn crop(&self, top: usize, left: usize, height: usize, width: usize) -> Result<Self> {
        if top + height > self.height || left + width > self.width {
            return Err(FlowError::InvalidArgument(format!(
                "crop {height}x{width}+{top}+{left} exceeds flow {}x{}",
                self.height, self.width
            )));
        }
        let mut data = Vec::with_capacity(height * width * 2);
        for y in top..top + height {
            let start = (y * self.width + left) * 2;
            data.extend_from_slice(&self.data[start..start + width * 2]);
        }
        Ok(Self::from_raw(height, width, data))
    }

    /// Mirrors the field left-right, negating the horizontal component.
    pub fn flip_horizontal(&self) -> Self {
        let mut out = Self::zeros(self.height, self.width);
        for y in 0..self.height {
            for x in 0..self.width {
                let (u, v) = self.get(y, self.width - 1 - x);
                out.set(y, x, -u, v);
            }
        }
        out
    }
}

/// Per-pixel mask holding exactly 0 or 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryMask {
    height: usize,
    width: usize,
    data: Vec<u8>,
}

impl BinaryMask {
    pub fn new(height: usize, width: usize, data: Vec<u8>) -> Result<Self> {
        if data.len() != height * width {
            return Err(FlowError::DimensionMismatch(format!(
                "mask data length {} != {height}x{width}",
                data.len()
            )));
        }
        if data.iter().any(|&v| v > 1) {
            return Err(FlowError::InvalidArgument(
                "mask values must be 0 or 1".into(),
            ));
        }
        Ok(Self {
            height,
            width,
            data,
        })
    }

    pub(crate) fn from_raw(height: usize, width: usize, data: Vec<u8>) -> Self {
        debug_assert_eq!(data.len(), height * width);
        Self {
            height,
            width,
            data,
        }
    }

    pub fn zeros(height: usize, width: usize) -> Self {
        Self::from_raw(height, width, vec![0; height * width])
    }

    pub fn ones(height: usize, width: usize) -> Self {
        Self::from_raw(height, width, vec![1; height * width])
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    #[inline]
    pub fn get(&self, y: usize, x: usize) -> u8 {
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, y: usize, x: usize, value: u8) {
        debug_assert!(value <= 1);
        self.data[y * self.width + x] = value;
    }

    pub fn same_shape(&self, other: &Self) -> bool {
        self.height == other.height && self.width == other.width
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().filter(|&&v| v == 1).count()
    }

    pub fn fraction_ones(&self) -> f64 {
        self.count_ones() as f64 / (self.height * self.width) as f64
    }

    pub fn crop(&self, top: usize, left: usize, height: usize, width: usize) -> Result<Self> {
        if top + height > self.height || left + width > self.width {
            return Err(FlowError::InvalidArgument(format!(
                "crop {height}x{width}+{top}+{left} exceeds mask {}x{}",
                self.height, self.width
            )));
        }
        let mut data = Vec::with_capacity(height * width);
        for y in top..top + height {
            let start = y * self.width + left;
            data.extend_from_slice(&self.data[start..start + width]);
        }
        Ok(Self::from_raw(height, width, data))
    }

    pub fn flip_horizontal(&self) -> Self {
        let mut out = Self::zeros(self.height, self.width);
        for y in 0..self.height {
            for x in 0..self.width {
                out.set(y, x, self.get(y, self.width - 1 - x));
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn image_validates_shape_and_channels() {
        assert!(ImageFrame::<f32>::new(2, 2, 3, vec![0.0; 12]).is_ok());
        assert!(ImageFrame::<f32>::new(2, 2, 2, vec![0.0; 8]).is_err());
        assert!(ImageFrame::<f32>::new(2, 2, 1, vec![0.0; 3]).is_err());
        assert!(ImageFrame::<f32>::new(1, 1, 1, vec![f32::NAN]).is_err());
    }

    #[test]
    fn from_u8_scales_to_unit_range() {
        let img = ImageFrame::<f32>::from_u8(1, 2, 1, &[0, 255]).unwrap();
        assert_eq!(img.get(0, 0, 0), 0.0);
        assert_eq!(img.get(0, 1, 0), 1.0);
    }

    #[test]
    fn flow_flip_negates_u() {
        let mut f = FlowField::<f32>::zeros(1, 2);
        f.set(0, 0, 1.0, 2.0);
        let g = f.flip_horizontal();
        assert_eq!(g.get(0, 1), (-1.0, 2.0));
        assert_eq!(g.get(0, 0), (0.0, 0.0));
    }

    #[test]
    fn mask_rejects_non_binary() {
        assert!(BinaryMask::new(1, 2, vec![0, 2]).is_err());
        assert!(BinaryMask::new(1, 2, vec![0, 1]).is_ok());
    }
}
