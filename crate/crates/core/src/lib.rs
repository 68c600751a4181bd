//! Desk-scale laboratory for unposed two-view panorama reconstruction.
//!
//! A pair of equirectangular images is mapped by a small two-branch vision
//! transformer (with per-head rolled rotary position embeddings) to per-pixel
//! 2D-Gaussian surfels expressed in the first view's frame. The crate carries
//! everything needed to train and verify that pipeline on procedural scenes:
//!
//! - [`sphere`]: equirectangular/cubemap geometry and rigid transforms
//! - [`tensor`]: dense arrays with a reverse-mode differentiation tape
//! - [`rope`]: 2D rotary embeddings and the per-head rolling variant
//! - [`model`]: the two-branch encoder/decoder with Gaussian heads
//! - [`splat`]: surfel scene representation and a differentiable rasterizer
//! - [`pose`]: essential-matrix and PnP pose recovery plus scale alignment
//! - [`metrics`]: training losses and image/depth evaluation metrics
//! - [`scene`]: analytic box-room scenes used as ground-truth oracles
//!
//! The crate is `no_std`-compatible (`alloc` required); disable default
//! features and enable `libm` for builds without the standard library. File
//! formats, dataset generation, and the command-line pipeline live in the
//! companion `equisplat-cli` crate.

#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod math;
pub mod metrics;
pub mod model;
pub mod pose;
pub mod rope;
pub mod scene;
pub mod sphere;
pub mod splat;
pub mod tensor;

pub use math::{Mat3, Quat, Vec3};
pub use sphere::Pose;
