mod catalog;
mod relation;
mod vertex;

pub use catalog::{CatalogBounds, CatalogDocument, DiskCatalog, DEFAULT_MAX_DISKS};
pub use relation::{
    classify_type, disks_disjoint, footprints_disjoint, last_meridian, project_disk, relative_side,
    ArcOracle, ArcTable, DirectArcs, DiskType,
};
pub use vertex::{DiskVertex, Touch};
