//! Bilinear sampling kernels over channel-interleaved grids.
//!
//! Shared by image warping, flow warping, feature warping inside the
//! estimator, and flow rescaling. Out-of-bounds coordinates clamp to the
//! border; the clamp also zeroes the coordinate gradient there.

use crate::num::Scalar;

/// Corner indices and interpolation weights for one sample location.
#[derive(Debug, Clone, Copy)]
pub(crate) struct BilinearTap<T> {
    pub x0: usize,
    pub x1: usize,
    pub y0: usize,
    pub y1: usize,
    pub fx: T,
    pub fy: T,
    /// 1 if the coordinate was inside `[0, size-1]` (gradient passes), else 0.
    pub dx_gate: T,
    pub dy_gate: T,
}

#[inline]
pub(crate) fn tap<T: Scalar>(x: T, y: T, height: usize, width: usize) -> BilinearTap<T> {
    let max_x = T::from_usize(width - 1);
    let max_y = T::from_usize(height - 1);
    let dx_gate = if x >= T::zero() && x <= max_x { T::one() } else { T::zero() };
    let dy_gate = if y >= T::zero() && y <= max_y { T::one() } else { T::zero() };
    let cx = x.max(T::zero()).min(max_x);
    let cy = y.max(T::zero()).min(max_y);
    let x0f = cx.floor();
    let y0f = cy.floor();
    let x0 = x0f.to_f64() as usize;
    let y0 = y0f.to_f64() as usize;
    let x1 = (x0 + 1).min(width - 1);
    let y1 = (y0 + 1).min(height - 1);
    BilinearTap {
        x0,
        x1,
        y0,
        y1,
        fx: cx - x0f,
        fy: cy - y0f,
        dx_gate,
        dy_gate,
    }
}

/// Samples every channel at `(x, y)` into `out`.
#[inline]
pub(crate) fn sample_into<T: Scalar>(
    data: &[T],
    height: usize,
    width: usize,
    channels: usize,
    x: T,
    y: T,
    out: &mut [T],
) {
    let t = tap(x, y, height, width);
    let w00 = (T::one() - t.fx) * (T::one() - t.fy);
    let w01 = t.fx * (T::one() - t.fy);
    let w10 = (T::one() - t.fx) * t.fy;
    let w11 = t.fx * t.fy;
    let p00 = (t.y0 * width + t.x0) * channels;
    let p01 = (t.y0 * width + t.x1) * channels;
    let p10 = (t.y1 * width + t.x0) * channels;
    let p11 = (t.y1 * width + t.x1) * channels;
    for ch in 0..channels {
        out[ch] = data[p00 + ch] * w00
            + data[p01 + ch] * w01
            + data[p10 + ch] * w10
            + data[p11 + ch] * w11;
    }
}

/// Samples every channel and its partial derivatives w.r.t. `x` and `y`.
#[inline]
pub(crate) fn sample_with_grad_into<T: Scalar>(
    data: &[T],
    height: usize,
    width: usize,
    channels: usize,
    x: T,
    y: T,
    out: &mut [T],
    dout_dx: &mut [T],
    dout_dy: &mut [T],
) {
    let t = tap(x, y, height, width);
    let one = T::one();
    let w00 = (one - t.fx) * (one - t.fy);
    let w01 = t.fx * (one - t.fy);
    let w10 = (one - t.fx) * t.fy;
    let w11 = t.fx * t.fy;
    let p00 = (t.y0 * width + t.x0) * channels;
    let p01 = (t.y0 * width + t.x1) * channels;
    let p10 = (t.y1 * width + t.x0) * channels;
    let p11 = (t.y1 * width + t.x1) * channels;
    for ch in 0..channels {
        let v00 = data[p00 + ch];
        let v01 = data[p01 + ch];
        let v10 = data[p10 + ch];
        let v11 = data[p11 + ch];
        out[ch] = v00 * w00 + v01 * w01 + v10 * w10 + v11 * w11;
        dout_dx[ch] = ((v01 - v00) * (one - t.fy) + (v11 - v10) * t.fy) * t.dx_gate;
        dout_dy[ch] = ((v10 - v00) * (one - t.fx) + (v11 - v01) * t.fx) * t.dy_gate;
    }
}

/// Backward-warps a grid: `out(p) = sample(data, p + flow(p))`.
///
/// `flow` is interleaved `(u, v)` of length `2 * height * width`.
pub(crate) fn warp_grid<T: Scalar>(
    data: &[T],
    height: usize,
    width: usize,
    channels: usize,
    flow: &[T],
) -> Vec<T> {
    let mut out = vec![T::zero(); height * width * channels];
    for y in 0..height {
        for x in 0..width {
            let p = y * width + x;
            let sx = T::from_usize(x) + flow[2 * p];
            let sy = T::from_usize(y) + flow[2 * p + 1];
            sample_into(
                data,
                height,
                width,
                channels,
                sx,
                sy,
                &mut out[p * channels..(p + 1) * channels],
            );
        }
    }
    out
}

pub(crate) struct WarpGrad<T> {
    pub grad_data: Vec<T>,
    /// Interleaved `(du, dv)` gradient w.r.t. the flow.
    pub grad_flow: Vec<T>,
}

/// Reverse-mode of [`warp_grid`]: scatters `grad_out` into the source grid
/// and accumulates the chain-rule gradient onto the flow components.
pub(crate) fn warp_grid_backward<T: Scalar>(
    data: &[T],
    height: usize,
    width: usize,
    channels: usize,
    flow: &[T],
    grad_out: &[T],
) -> WarpGrad<T> {
    let one = T::one();
    let mut grad_data = vec![T::zero(); data.len()];
    let mut grad_flow = vec![T::zero(); flow.len()];
    for y in 0..height {
        for x in 0..width {
            let p = y * width + x;
            let sx = T::from_usize(x) + flow[2 * p];
            let sy = T::from_usize(y) + flow[2 * p + 1];
            let t = tap(sx, sy, height, width);
            let w00 = (one - t.fx) * (one - t.fy);
            let w01 = t.fx * (one - t.fy);
            let w10 = (one - t.fx) * t.fy;
            let w11 = t.fx * t.fy;
            let p00 = (t.y0 * width + t.x0) * channels;
            let p01 = (t.y0 * width + t.x1) * channels;
            let p10 = (t.y1 * width + t.x0) * channels;
            let p11 = (t.y1 * width + t.x1) * channels;
            let mut gu = T::zero();
            let mut gv = T::zero();
            for ch in 0..channels {
                let g = grad_out[p * channels + ch];
                if g == T::zero() {
                    continue;
                }
                grad_data[p00 + ch] += g * w00;
                grad_data[p01 + ch] += g * w01;
                grad_data[p10 + ch] += g * w10;
                grad_data[p11 + ch] += g * w11;
                let v00 = data[p00 + ch];
                let v01 = data[p01 + ch];
                let v10 = data[p10 + ch];
                let v11 = data[p11 + ch];
                gu += g * ((v01 - v00) * (one - t.fy) + (v11 - v10) * t.fy);
                gv += g * ((v10 - v00) * (one - t.fx) + (v11 - v01) * t.fx);
            }
            grad_flow[2 * p] = gu * t.dx_gate;
            grad_flow[2 * p + 1] = gv * t.dy_gate;
        }
    }
    WarpGrad {
        grad_data,
        grad_flow,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tap_clamps_and_gates() {
        let t = tap(-7.3f64, 0.5, 4, 4);
        assert_eq!(t.x0, 0);
        assert_eq!(t.x1, 1);
        assert_eq!(t.fx, 0.0);
        assert_eq!(t.dx_gate, 0.0);
        assert_eq!(t.dy_gate, 1.0);
    }

    #[test]
    fn sample_matches_hand_bilinear() {
        // 1x2 image [0, 10], sample at x = 0.5 -> 5.
        let data = [0.0f64, 10.0];
        let mut out = [0.0f64];
        sample_into(&data, 1, 2, 1, 0.5, 0.0, &mut out);
        assert_eq!(out[0], 5.0);
    }

    #[test]
    fn warp_backward_matches_fd_on_flow() {
        // Random-ish smooth grid; compare analytic flow gradient against FD.
        let (h, w, c) = (5, 6, 2);
        let data: Vec<f64> = (0..h * w * c)
            .map(|i| ((i * 37 % 11) as f64 * 0.13).sin() * 0.5 + 0.5)
            .collect();
        let mut flow = vec![0.0f64; h * w * 2];
        for (i, v) in flow.iter_mut().enumerate() {
            *v = ((i * 17 % 7) as f64 - 3.0) * 0.21 + 0.4; // fractional, interior
        }
        let grad_out: Vec<f64> = (0..h * w * c).map(|i| ((i % 5) as f64 - 2.0) * 0.3).collect();
        let back = warp_grid_backward(&data, h, w, c, &flow, &grad_out);
        let loss = |f: &[f64]| -> f64 {
            warp_grid(&data, h, w, c, f)
                .iter()
                .zip(&grad_out)
                .map(|(a, b)| a * b)
                .sum()
        };
        let hstep = 1e-5;
        for idx in [3usize, 11, 20, 33] {
            let mut fp = flow.clone();
            fp[idx] += hstep;
            let mut fm = flow.clone();
            fm[idx] -= hstep;
            let fd = (loss(&fp) - loss(&fm)) / (2.0 * hstep);
            assert!(
                (fd - back.grad_flow[idx]).abs() <= 1e-6 * fd.abs().max(1.0),
                "idx {idx}: fd {fd} vs analytic {}",
                back.grad_flow[idx]
            );
        }
    }
}
