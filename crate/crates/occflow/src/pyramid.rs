//! Image pyramids and flow rescaling.

use crate::error::{FlowError, Result};
use crate::image::{FlowField, ImageFrame};
use crate::num::{c, Scalar};
use crate::sample;

/// Builds an average-pooled pyramid. Level 0 is the input; level `l` is the
/// 2x2 mean-pooled level `l-1` with floor division of the dimensions.
pub fn downsample_image<T: Scalar>(
    img: &ImageFrame<T>,
    levels: usize,
) -> Result<Vec<ImageFrame<T>>> {
    if levels < 1 {
        return Err(FlowError::InvalidArgument("levels must be >= 1".into()));
    }
    let mut pyramid = vec![img.clone()];
    for level in 1..levels {
        let prev = &pyramid[level - 1];
        let (h, w) = (prev.height() / 2, prev.width() / 2);
        if h < 1 || w < 1 || prev.height() < 2 || prev.width() < 2 {
            return Err(FlowError::InvalidArgument(format!(
                "pyramid level {level} underflows: previous level is {}x{}",
                prev.height(),
                prev.width()
            )));
        }
        let ch = prev.channels();
        let quarter = c::<T>(0.25);
        let mut data = Vec::with_capacity(h * w * ch);
        for y in 0..h {
            for x in 0..w {
                for k in 0..ch {
                    let s = prev.get(2 * y, 2 * x, k)
                        + prev.get(2 * y, 2 * x + 1, k)
                        + prev.get(2 * y + 1, 2 * x, k)
                        + prev.get(2 * y + 1, 2 * x + 1, k);
                    data.push(s * quarter);
                }
            }
        }
        pyramid.push(ImageFrame::from_raw(h, w, ch, data));
    }
    Ok(pyramid)
}

/// Output dimensions of [`rescale_flow`] for the given input size.
pub(crate) fn rescaled_dims(h: usize, w: usize, factor: f64) -> (usize, usize) {
    let oh = ((h as f64) * factor).round().max(1.0) as usize;
    let ow = ((w as f64) * factor).round().max(1.0) as usize;
    (oh, ow)
}

/// Rescales a flow field spatially by `factor` (bilinear) and multiplies the
/// displacement values by `factor` so they stay expressed in output pixels.
pub fn rescale_flow<T: Scalar>(flow: &FlowField<T>, factor: T) -> Result<FlowField<T>> {
    if factor <= T::zero() {
        return Err(FlowError::InvalidArgument(format!(
            "rescale factor must be positive, got {factor}"
        )));
    }
    let (oh, ow) = rescaled_dims(flow.height(), flow.width(), factor.to_f64());
    let inv = T::one() / factor;
    let mut data = vec![T::zero(); oh * ow * 2];
    let mut px = [T::zero(); 2];
    for y in 0..oh {
        for x in 0..ow {
            let sx = T::from_usize(x) * inv;
            let sy = T::from_usize(y) * inv;
            sample::sample_into(flow.data(), flow.height(), flow.width(), 2, sx, sy, &mut px);
            let base = (y * ow + x) * 2;
            data[base] = px[0] * factor;
            data[base + 1] = px[1] * factor;
        }
    }
    Ok(FlowField::from_raw(oh, ow, data))
}

/// Transpose of [`rescale_flow`]: scatters the output-side gradient back to
/// input resolution. `grad_out` is interleaved at the output dimensions.
pub(crate) fn rescale_flow_backward<T: Scalar>(
    grad_out: &[T],
    out_h: usize,
    out_w: usize,
    in_h: usize,
    in_w: usize,
    factor: T,
) -> Vec<T> {
    let inv = T::one() / factor;
    let one = T::one();
    let mut grad_in = vec![T::zero(); in_h * in_w * 2];
    for y in 0..out_h {
        for x in 0..out_w {
            let sx = T::from_usize(x) * inv;
            let sy = T::from_usize(y) * inv;
            let t = sample::tap(sx, sy, in_h, in_w);
            let w00 = (one - t.fx) * (one - t.fy);
            let w01 = t.fx * (one - t.fy);
            let w10 = (one - t.fx) * t.fy;
            let w11 = t.fx * t.fy;
            for comp in 0..2 {
                let g = grad_out[(y * out_w + x) * 2 + comp] * factor;
                grad_in[(t.y0 * in_w + t.x0) * 2 + comp] += g * w00;
                grad_in[(t.y0 * in_w + t.x1) * 2 + comp] += g * w01;
                grad_in[(t.y1 * in_w + t.x0) * 2 + comp] += g * w10;
                grad_in[(t.y1 * in_w + t.x1) * 2 + comp] += g * w11;
            }
        }
    }
    grad_in
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_image_stays_constant_across_levels() {
        let img = ImageFrame::<f32>::filled(8, 8, 3, 0.4);
        let pyr = downsample_image(&img, 3).unwrap();
        assert_eq!(pyr.len(), 3);
        for (l, level) in pyr.iter().enumerate() {
            assert_eq!(level.height(), 8 >> l);
            assert!(level.data().iter().all(|&v| (v - 0.4).abs() < 1e-7));
        }
    }

    #[test]
    fn four_by_four_block_means() {
        let data: Vec<f32> = (0..16).map(|i| i as f32).collect();
        let img = ImageFrame::new(4, 4, 1, data).unwrap();
        let pyr = downsample_image(&img, 2).unwrap();
        let l1 = &pyr[1];
        assert_eq!(l1.get(0, 0, 0), (0.0 + 1.0 + 4.0 + 5.0) / 4.0);
        assert_eq!(l1.get(0, 1, 0), (2.0 + 3.0 + 6.0 + 7.0) / 4.0);
        assert_eq!(l1.get(1, 0, 0), (8.0 + 9.0 + 12.0 + 13.0) / 4.0);
        assert_eq!(l1.get(1, 1, 0), (10.0 + 11.0 + 14.0 + 15.0) / 4.0);
    }

    #[test]
    fn single_level_is_just_the_input() {
        let img = ImageFrame::<f32>::filled(3, 5, 1, 0.2);
        let pyr = downsample_image(&img, 1).unwrap();
        assert_eq!(pyr.len(), 1);
        assert_eq!(pyr[0], img);
    }

    #[test]
    fn underflow_is_an_error() {
        let img = ImageFrame::<f32>::filled(2, 2, 1, 0.0);
        assert!(downsample_image(&img, 2).is_ok());
        assert!(downsample_image(&img, 3).is_err());
    }

    #[test]
    fn rescale_identity_at_factor_one() {
        let mut f = FlowField::<f32>::zeros(4, 6);
        for y in 0..4 {
            for x in 0..6 {
                f.set(y, x, x as f32 * 0.3, y as f32 * -0.2);
            }
        }
        let out = rescale_flow(&f, 1.0).unwrap();
        assert_eq!(out, f);
    }

    #[test]
    fn rescale_doubles_resolution_and_magnitude() {
        let f = FlowField::<f32>::constant(3, 4, 1.5, -2.0);
        let out = rescale_flow(&f, 2.0).unwrap();
        assert_eq!((out.height(), out.width()), (6, 8));
        for px in out.data().chunks_exact(2) {
            assert_eq!(px[0], 3.0);
            assert_eq!(px[1], -4.0);
        }
    }

    #[test]
    fn rescale_halves_resolution_and_magnitude() {
        let f = FlowField::<f32>::constant(4, 4, 4.0, 4.0);
        let out = rescale_flow(&f, 0.5).unwrap();
        assert_eq!((out.height(), out.width()), (2, 2));
        for px in out.data().chunks_exact(2) {
            assert_eq!(px[0], 2.0);
            assert_eq!(px[1], 2.0);
        }
    }

    #[test]
    fn rescale_rejects_non_positive_factor() {
        let f = FlowField::<f32>::zeros(2, 2);
        assert!(rescale_flow(&f, 0.0).is_err());
        assert!(rescale_flow(&f, -1.0).is_err());
    }

    #[test]
    fn up_then_down_roundtrip_on_smooth_field() {
        let (h, w) = (8, 10);
        let mut f = FlowField::<f32>::zeros(h, w);
        for y in 0..h {
            for x in 0..w {
                f.set(
                    y,
                    x,
                    (x as f32 * 0.4).sin() * 2.0,
                    (y as f32 * 0.3).cos() * 1.5,
                );
            }
        }
        let round = rescale_flow(&rescale_flow(&f, 2.0).unwrap(), 0.5).unwrap();
        assert_eq!((round.height(), round.width()), (h, w));
        for (a, b) in round.data().iter().zip(f.data()) {
            assert!((a - b).abs() < 1e-5);
        }
    }
}
