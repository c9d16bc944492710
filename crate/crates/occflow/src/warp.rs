//! Bilinear sampling and backward warping.

use crate::error::{FlowError, Result};
use crate::image::{FlowField, ImageFrame, PixelCoord};
use crate::num::Scalar;
use crate::sample;

/// Bilinear interpolation of the four neighbors of `at`, one value per
/// channel. Out-of-bounds coordinates clamp to the border, so this is total.
pub fn bilinear_sample<T: Scalar>(img: &ImageFrame<T>, at: PixelCoord<T>) -> Vec<T> {
    let mut out = vec![T::zero(); img.channels()];
    sample::sample_into(
        img.data(),
        img.height(),
        img.width(),
        img.channels(),
        at.x,
        at.y,
        &mut out,
    );
    out
}

/// Reconstructs the reference view by sampling `target` at `p + flow(p)`.
pub fn backward_warp<T: Scalar>(
    target: &ImageFrame<T>,
    flow: &FlowField<T>,
) -> Result<ImageFrame<T>> {
    if target.height() != flow.height() || target.width() != flow.width() {
        return Err(FlowError::DimensionMismatch(format!(
            "warp target {}x{} vs flow {}x{}",
            target.height(),
            target.width(),
            flow.height(),
            flow.width()
        )));
    }
    let data = sample::warp_grid(
        target.data(),
        target.height(),
        target.width(),
        target.channels(),
        flow.data(),
    );
    Ok(ImageFrame::from_raw(
        target.height(),
        target.width(),
        target.channels(),
        data,
    ))
}

/// Gradient of a scalar loss through [`backward_warp`] w.r.t. the flow, given
/// the loss gradient w.r.t. the warped output. Interleaved `(du, dv)`.
pub(crate) fn backward_warp_flow_grad<T: Scalar>(
    target: &ImageFrame<T>,
    flow: &FlowField<T>,
    grad_out: &[T],
) -> Vec<T> {
    sample::warp_grid_backward(
        target.data(),
        target.height(),
        target.width(),
        target.channels(),
        flow.data(),
        grad_out,
    )
    .grad_flow
}

/// Samples `flow_b` at `p + flow_f(p)` per component; the reversed flow used
/// by the forward-backward consistency check.
pub fn warp_flow<T: Scalar>(flow_b: &FlowField<T>, flow_f: &FlowField<T>) -> Result<FlowField<T>> {
    if !flow_b.same_shape(flow_f) {
        return Err(FlowError::DimensionMismatch(format!(
            "warp_flow {}x{} vs {}x{}",
            flow_b.height(),
            flow_b.width(),
            flow_f.height(),
            flow_f.width()
        )));
    }
    let data = sample::warp_grid(
        flow_b.data(),
        flow_b.height(),
        flow_b.width(),
        2,
        flow_f.data(),
    );
    Ok(FlowField::from_raw(flow_b.height(), flow_b.width(), data))
}
