//! Self-supervised optical flow with occlusion reasoning.
//!
//! The crate implements a complete small-scale pipeline:
//!
//! - dense image/flow/mask containers with differentiable bilinear warping
//!   ([`backward_warp`], [`warp_flow`], [`rescale_flow`]);
//! - forward-backward consistency occlusion estimation and an exact
//!   forward-mapping occlusion oracle for synthetic scenes ([`occlusion`]);
//! - occlusion hallucination by noise injection into SLIC superpixels or
//!   rectangle tiles, plus the derived self-supervision mask ([`hallucinate`]);
//! - robust photometric, self-supervision and supervised losses with analytic
//!   gradients, optionally on soft census signatures ([`losses`]);
//! - a small differentiable multi-frame coarse-to-fine flow estimator with
//!   bidirectional cost volumes, a shared decoder and Adam ([`estimator`]);
//! - the teacher-student distillation pipeline: train a non-occluded-pixel
//!   teacher, pre-generate its flow/occlusion annotations, then train a
//!   student on hallucinated occlusions ([`distill`]);
//! - file formats (`.flo`, KITTI 16-bit flow PNGs, frame directories), a
//!   synthetic moving-sprite scene generator and flow visualization
//!   ([`dataio`]);
//! - evaluation metrics (EPE splits, Fl, occlusion F-measure) and a thin
//!   command-line front end ([`metrics`], [`cli`]).
//!
//! Start with the runnable programs under `examples/`; each one exercises a
//! single capability end to end.

mod error;
mod feature;
mod image;
mod num;
mod sample;

pub mod ablation;
pub mod cli;
pub mod dataio;
pub mod distill;
pub mod estimator;
pub mod hallucinate;
pub mod losses;
pub mod metrics;
pub mod occlusion;
pub mod pyramid;
pub mod rng;
pub mod warp;

pub use error::{FlowError, Result};
pub use feature::FeatureMap;
pub use image::{BinaryMask, FlowField, ImageFrame, PixelCoord};
pub use num::{Dtype, Scalar};
pub use pyramid::{downsample_image, rescale_flow};
pub use warp::{backward_warp, bilinear_sample, warp_flow};
