//! Tilings of the Poincaré disk by translates of the fundamental polygon.

mod geometry;
mod svg;

pub use geometry::{
    lorentz, lorentz_residual, reflection, triangle_area, Isometry, PolygonRealization,
};
pub use svg::{hash_color, label_color, render_svg, Coloring, Scene, SceneConfig};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum RenderError {
    #[error("polygon solver did not converge (residual {residual:e})")]
    SolverDiverged { residual: f64 },
    #[error("angles do not give a hyperbolic polygon")]
    NotHyperbolic,
}
