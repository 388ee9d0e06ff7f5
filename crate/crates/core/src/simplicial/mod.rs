//! Flag complexes, suspensions, simplicial maps and exact integer homology.

pub mod complex;
pub mod homology;
pub mod map;
pub mod snf;

pub use complex::{
    octahedral_sphere, ComplexDocument, FlagComplex, Simplex, Vertex, DEFAULT_MAX_SIMPLICES,
};
pub use homology::{
    free_cycle_generators, reduced_homology, Chain, HomologyGroup, HomologyProfile,
};
pub use map::{
    certify_homology_retraction, check_retraction, HomologyCertificate, MapDocument,
    RetractionReport, VertexMap,
};
