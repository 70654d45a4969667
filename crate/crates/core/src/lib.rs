// NaN must fail these guards, so `!(x > 0.0)` is deliberate.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod asymptotics;
pub mod circle;
pub mod error;
pub mod jet;
pub mod mesh;
pub mod normal_form;
pub mod poly;
pub mod roots;
pub mod ruled;
pub mod sampling;
pub mod surface;
pub mod sweep;
pub mod verify;
pub mod vec3;

pub use error::{Error, Result};
