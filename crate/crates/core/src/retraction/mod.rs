mod certificate;
mod engine;
mod sphere;

pub use certificate::{
    certify_catalog, certify_minimality, claim_case, verify_claim_cases, Certificate,
    CertifyConfig, Check, ClaimCase, ClaimReport, ClaimViolation, LevelSummary, SurfaceSummary,
};
pub use engine::{
    outermost_surgery, retract_vertex, Assignment, IntersectionPattern, Provenance, RetractionMap,
    RetractionTower, SurgeryOutcome,
};
pub use sphere::{build_suspension_sphere, SpherePair, SuspensionSphere};
