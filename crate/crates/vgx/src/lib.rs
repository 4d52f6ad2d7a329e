//! Vector-graphics representation learning toolkit.
//!
//! The crate covers the full pipeline from raw SVG text to a trained
//! generative model and back:
//!
//! - [`geometry`]: 2D primitives — Bézier evaluation, elliptical-arc math,
//!   polyline simplification, curve fitting, arc-length sampling.
//! - [`svg_io`]: parsing a practical SVG subset into a six-command IR
//!   (`M`/`L`/`C`/`z` plus sequence framing) and serializing back, including
//!   the orientation-based fill/erase export.
//! - [`preprocess`]: path splitting, simplification, viewbox normalization,
//!   canonicalization and augmentation.
//! - [`tensor_repr`]: the fixed-shape padded, 8-bit-quantized tensor form and
//!   its on-disk dataset format.
//! - [`nn_core`]: a small reverse-mode autodiff engine, transformer blocks
//!   and AdamW.
//! - [`model`]: the hierarchical set-of-sequences VAE and its one-stage
//!   ablation variants.
//! - [`training`]: losses, ordered/Hungarian ground-truth assignment and the
//!   training loop.
//! - [`metrics`]: SVG Chamfer distance, reconstruction error, interpolation
//!   smoothness.
//! - [`latent_ops`]: encode/decode, interpolation, latent directions,
//!   sampling.
//! - [`cli`]: the `vgx` command-line surface.

pub mod cli;
pub mod config;
pub mod geometry;
pub mod latent_ops;
pub mod metrics;
pub mod model;
pub mod nn_core;
pub mod preprocess;
pub mod svg_io;
pub mod tensor_repr;
pub mod training;
