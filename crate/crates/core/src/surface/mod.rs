//! Punctured-surface chord model, arc classes, and the tubed surfaces.

pub mod punctured;
pub mod tubed;

pub use punctured::{
    arc_intersection, enumerate_arcs, prepared_intersection, ArcClass, FootPosition, PreparedArc,
    PuncturedSurfaceModel, DEFAULT_MAX_ARCS,
};
pub use tubed::{region_side, tube_side, Foot, Region, RelativeSide, Side, TubedSurface};
