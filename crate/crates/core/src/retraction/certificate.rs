use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::engine::{Provenance, RetractionMap, RetractionTower};
use super::sphere::{build_suspension_sphere, SpherePair, SuspensionSphere};
use crate::disk::{
    classify_type, last_meridian, CatalogBounds, DiskCatalog, DiskType, DiskVertex,
    DEFAULT_MAX_DISKS,
};
use crate::error::{Error, Result};
use crate::simplicial::{
    certify_homology_retraction, check_retraction, reduced_homology, HomologyCertificate,
    HomologyProfile, VertexMap, DEFAULT_MAX_SIMPLICES,
};
use crate::surface::{RelativeSide, TubedSurface, DEFAULT_MAX_ARCS};

const MAX_LISTED: usize = 20;

/// The six kinds of disjoint pairs whose images must span a simplex.
pub fn claim_case(a: DiskType, b: DiskType) -> Option<u8> {
    use DiskType::*;
    let (a, b) = if a <= b { (a, b) } else { (b, a) };
    match (a, b) {
        (T1, T2) | (T1, T4) => Some(1),
        (T2, T3) | (T3, T4) => Some(2),
        (T3, T3) => Some(3),
        (T2, T4) => Some(4),
        (T2, T2) => Some(5),
        (T4, T4) => Some(6),
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimCase {
    pub case: u8,
    pub types: String,
    pub checked: usize,
    pub violations: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimViolation {
    pub disks: [String; 2],
    pub images: [String; 2],
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClaimReport {
    pub level: usize,
    pub cases: Vec<ClaimCase>,
    /// Disjoint pairs that fit no case.
    pub unclassified: usize,
    pub total_violations: usize,
    pub violations: Vec<ClaimViolation>,
}

impl ClaimReport {
    pub fn holds(&self) -> bool {
        self.total_violations == 0 && self.unclassified == 0
    }

    pub fn empty_cases(&self) -> Vec<u8> {
        self.cases
            .iter()
            .filter(|c| c.checked == 0)
            .map(|c| c.case)
            .collect()
    }
}

/// Checks every disjoint pair of distinct disks: their images must be equal
/// or adjacent in the sphere. Pairs are tallied by case.
pub fn verify_claim_cases(c: &DiskCatalog, r: &RetractionMap) -> ClaimReport {
    const TYPES: [&str; 6] = [
        "T1-T2, T1-T4",
        "T3-T2, T3-T4",
        "T3-T3",
        "T2-T4",
        "T2-T2",
        "T4-T4",
    ];
    let mut cases: Vec<ClaimCase> = TYPES
        .iter()
        .enumerate()
        .map(|(i, t)| ClaimCase {
            case: i as u8 + 1,
            types: t.to_string(),
            checked: 0,
            violations: 0,
        })
        .collect();
    let types: Vec<DiskType> = (0..c.len()).map(|i| c.disk_type(i)).collect();
    let ids: Vec<String> = c.disks().iter().map(DiskVertex::id).collect();
    let mut report = ClaimReport {
        level: c.surface.tubes,
        cases: Vec::new(),
        unclassified: 0,
        total_violations: 0,
        violations: Vec::new(),
    };
    for (i, j) in c.edges() {
        let Some(case) = claim_case(types[i], types[j]) else {
            report.unclassified += 1;
            continue;
        };
        let entry = &mut cases[case as usize - 1];
        entry.checked += 1;
        let a = r.image_of(&ids[i]).unwrap_or("?");
        let b = r.image_of(&ids[j]).unwrap_or("?");
        if !r.sphere.adjacent_or_equal(a, b) || a == "?" || b == "?" {
            entry.violations += 1;
            report.total_violations += 1;
            if report.violations.len() < MAX_LISTED {
                report.violations.push(ClaimViolation {
                    disks: [ids[i].clone(), ids[j].clone()],
                    images: [a.to_string(), b.to_string()],
                });
            }
        }
    }
    report.cases = cases;
    report
}

/// Inputs to a certification run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertifyConfig {
    pub genus: u32,
    /// Sphere dimension; the surface has `n + 1` tubes.
    pub n: usize,
    pub arc_bound: usize,
    pub bandsum_depth: usize,
    pub max_simplices: usize,
    pub max_arcs: usize,
    pub max_disks: usize,
    pub seed: u64,
}

impl CertifyConfig {
    pub fn new(genus: u32, n: usize) -> Self {
        Self {
            genus,
            n,
            arc_bound: 2,
            bandsum_depth: 1,
            max_simplices: DEFAULT_MAX_SIMPLICES,
            max_arcs: DEFAULT_MAX_ARCS,
            max_disks: DEFAULT_MAX_DISKS,
            seed: 0,
        }
    }

    pub fn bounds(&self) -> CatalogBounds {
        CatalogBounds {
            arc_bound: self.arc_bound,
            bandsum_depth: self.bandsum_depth,
            max_arcs: self.max_arcs,
            max_disks: self.max_disks,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelSummary {
    pub level: usize,
    pub disks: usize,
    pub meridians: usize,
    pub verticals: usize,
    pub band_sums: usize,
    pub disjoint_pairs: usize,
    pub types: BTreeMap<DiskType, usize>,
    pub claim_violations: usize,
    pub surgeries: usize,
    /// Sphere levels of every surgery candidate, with multiplicity.
    pub candidate_levels: BTreeMap<usize, usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurfaceSummary {
    pub base_genus: u32,
    pub tubes: usize,
    pub genus: u32,
    /// Where each tube meets each region, as a fraction of the way from the
    /// puncture to corner 0.
    pub feet: Vec<String>,
}

impl SurfaceSummary {
    fn of(s: &TubedSurface) -> Self {
        let feet = s
            .regions
            .iter()
            .flat_map(|r| {
                r.feet.iter().zip(&r.model.feet).map(move |(f, p)| {
                    format!(
                        "region {}: tube {} on copy {} at {}/{}",
                        r.index, f.tube, f.copy, p.numerator, p.denominator
                    )
                })
            })
            .collect();
        Self {
            base_genus: s.base_genus,
            tubes: s.tubes,
            genus: s.genus(),
            feet,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub status: String,
    pub first_failure: Option<String>,
    pub config: CertifyConfig,
    pub surface: SurfaceSummary,
    pub levels: Vec<LevelSummary>,
    pub sphere: Vec<SpherePair>,
    pub sphere_homology: Option<HomologyProfile>,
    pub claim: Option<ClaimReport>,
    pub homology: Option<HomologyCertificate>,
    /// A disjoint pair of disks on opposite sides of the surface.
    pub reducing_pair: Option<[String; 2]>,
    pub checks: Vec<Check>,
    pub assumptions: Vec<String>,
    pub caveats: Vec<String>,
    pub conclusion: String,
}

impl Certificate {
    pub fn passed(&self) -> bool {
        self.status == "PASSED"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        let c = &self.config;
        let _ = writeln!(out, "certificate: {}", self.status);
        if let Some(f) = &self.first_failure {
            let _ = writeln!(out, "first failed check: {f}");
        }
        let _ = writeln!(
            out,
            "surface: {} tubes over genus {}, total genus {}",
            self.surface.tubes, self.surface.base_genus, self.surface.genus
        );
        let _ = writeln!(
            out,
            "bounds: arc length <= {}, band-sum depth <= {}, simplices <= {}",
            c.arc_bound, c.bandsum_depth, c.max_simplices
        );
        let _ = writeln!(out, "levels:");
        for l in &self.levels {
            let types: Vec<String> = l.types.iter().map(|(t, k)| format!("{t}={k}")).collect();
            let _ = write!(
                out,
                "  F{}: {} disks ({} meridian, {} vertical, {} band sum), {} disjoint pairs, {}",
                l.level,
                l.disks,
                l.meridians,
                l.verticals,
                l.band_sums,
                l.disjoint_pairs,
                types.join(" ")
            );
            if l.surgeries > 0 {
                let spectrum: Vec<String> = l
                    .candidate_levels
                    .iter()
                    .map(|(i, k)| format!("{i}:{k}"))
                    .collect();
                let _ = write!(
                    out,
                    ", {} surgeries with candidate levels {}",
                    l.surgeries,
                    spectrum.join(" ")
                );
            }
            let _ = writeln!(out);
        }
        if !self.sphere.is_empty() {
            let _ = writeln!(out, "sphere pairs:");
            for p in &self.sphere {
                let _ = writeln!(out, "  {}: D = {}, E = {}", p.index, p.d, p.e);
            }
        }
        if let Some(claim) = &self.claim {
            let _ = writeln!(out, "disjoint pairs on F{} by case:", claim.level);
            for k in &claim.cases {
                let _ = writeln!(
                    out,
                    "  case {} ({}): {} checked, {} violations",
                    k.case, k.types, k.checked, k.violations
                );
            }
        }
        if let Some(w) = &self.reducing_pair {
            let _ = writeln!(out, "reducing pair: {} and {}", w[0], w[1]);
        }
        let _ = writeln!(out, "checks:");
        for k in &self.checks {
            let mark = if k.passed { "ok  " } else { "FAIL" };
            let _ = writeln!(out, "  [{mark}] {}: {}", k.name, k.detail);
        }
        if !self.surface.feet.is_empty() {
            let _ = writeln!(out, "feet:");
            for f in &self.surface.feet {
                let _ = writeln!(out, "  {f}");
            }
        }
        let _ = writeln!(out, "assumptions:");
        for k in &self.assumptions {
            let _ = writeln!(out, "  - {k}");
        }
        let _ = writeln!(out, "caveats:");
        for k in &self.caveats {
            let _ = writeln!(out, "  - {k}");
        }
        let _ = writeln!(out, "conclusion: {}", self.conclusion);
        out
    }
}

fn summarize(c: &DiskCatalog, r: Option<&RetractionMap>, claim_violations: usize) -> LevelSummary {
    let mut types = BTreeMap::new();
    for i in 0..c.len() {
        *types.entry(c.disk_type(i)).or_insert(0) += 1;
    }
    let count = |f: fn(&DiskVertex) -> bool| c.disks().iter().filter(|d| f(d)).count();
    let mut surgeries = 0;
    let mut candidate_levels = BTreeMap::new();
    for a in r.iter().flat_map(|r| r.assignments.values()) {
        if let Provenance::Surgery { outcomes } = &a.provenance {
            surgeries += 1;
            for level in outcomes.iter().filter_map(|o| o.level) {
                *candidate_levels.entry(level).or_insert(0) += 1;
            }
        }
    }
    LevelSummary {
        level: c.surface.tubes,
        disks: c.len(),
        meridians: count(DiskVertex::is_meridian),
        verticals: count(|d| matches!(d, DiskVertex::Vertical { .. })),
        band_sums: count(|d| matches!(d, DiskVertex::BandSum { .. })),
        disjoint_pairs: c.edges().len(),
        types,
        claim_violations,
        surgeries,
        candidate_levels,
    }
}

/// Every disk of the first surface on the far side meets its meridian, and
/// that meridian is the only disk on its own side.
fn base_irreducibility(c: &DiskCatalog) -> Check {
    let e = last_meridian(&c.surface);
    let mut far = 0;
    let mut bad = Vec::new();
    for d in c.disks() {
        match c.surface.relative(d.side()) {
            RelativeSide::V => {
                far += 1;
                if c.disjoint_disks(d, &e) {
                    bad.push(format!("{d} misses {e}"));
                }
            }
            RelativeSide::W if *d != e => bad.push(format!("{d} shares a side with {e}")),
            RelativeSide::W => {}
        }
    }
    Check {
        name: "base surface strongly irreducible".into(),
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("all {far} disks opposite {e} meet it; {e} is alone on its side")
        } else {
            bad.into_iter().take(3).collect::<Vec<_>>().join("; ")
        },
    }
}

/// Each sphere adds one pair to the last, with the new disks on opposite
/// sides and the newest meridian on the side of the newest tube.
fn sphere_chain(sphere: &SuspensionSphere, top: &TubedSurface) -> Check {
    let mut bad = Vec::new();
    for p in &sphere.pairs {
        let level = p.index + 1;
        let s = TubedSurface {
            tubes: level,
            ..top.clone()
        };
        if s.relative(p.e.side()) != RelativeSide::W || s.relative(p.d.side()) != RelativeSide::V {
            bad.push(format!("pair {} is not split across F{level}", p.index));
        }
        if p.e != last_meridian(&s) {
            bad.push(format!("E_{} is not the meridian of tube {level}", p.index));
        }
    }
    Check {
        name: "sphere chain".into(),
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            format!(
                "S^0 through S^{} nested, each adding one pair split across its tube",
                sphere.dimension()
            )
        } else {
            bad.join("; ")
        },
    }
}

/// Recomputes each projected image from the lower map.
fn recursion_consistency(t: &RetractionTower) -> Check {
    let mut bad = Vec::new();
    let mut checked = 0;
    for w in t.maps.windows(2) {
        let (lower, upper) = (&w[0], &w[1]);
        for (id, a) in &upper.assignments {
            if a.provenance == Provenance::Projected {
                checked += 1;
                if lower.image_of(id) != Some(a.image.as_str()) {
                    bad.push(format!("{id} at F{}", upper.level));
                }
            }
        }
    }
    Check {
        name: "recursion consistency".into(),
        passed: bad.is_empty(),
        detail: if bad.is_empty() {
            format!("{checked} projected disks keep their lower image")
        } else {
            bad.into_iter().take(3).collect::<Vec<_>>().join("; ")
        },
    }
}

fn reducing_pair(c: &DiskCatalog) -> Option<[String; 2]> {
    let e = last_meridian(&c.surface);
    let prev = DiskVertex::meridian(c.surface.tubes.checked_sub(1)?);
    if c.contains(&prev) && c.disjoint_disks(&prev, &e) && prev.side() != e.side() {
        return Some([prev.id(), e.id()]);
    }
    c.edges()
        .into_iter()
        .find(|&(i, j)| c.disks()[i].side() != c.disks()[j].side())
        .map(|(i, j)| [c.disks()[i].id(), c.disks()[j].id()])
}

fn failed_check(name: &str, e: &Error) -> Check {
    Check {
        name: name.into(),
        passed: false,
        detail: e.to_string(),
    }
}

fn caveats(cfg: &CertifyConfig) -> Vec<String> {
    vec![
        format!(
            "Only the enumerated catalog is examined: vertical disks over arcs of length at most \
             {}, band sums of depth at most {}.",
            cfg.arc_bound, cfg.bandsum_depth
        ),
        "Arc classes are compared by a chord model with straight segments; distinct codes may \
         name isotopic arcs, and crossing counts may exceed the geometric minimum."
            .into(),
        "The retraction and homology checks are exact for the catalog complex; they do not \
         certify anything about disks outside it."
            .into(),
        "Each tube has exactly one meridian in the model. A disk on the solid side of the first \
         tube other than its meridian cannot be represented, so such disks are not excluded."
            .into(),
        "Feet sit at fixed positions; other placements are not examined.".into(),
    ]
}

fn assumptions() -> Vec<String> {
    vec![
        "The map on each surface is the one this pipeline builds on the surface below it, at \
         every level."
            .into(),
        "Surgery candidates are compared at their least sphere level; the levels of all \
         candidates are reported per surface."
            .into(),
    ]
}

/// Certifies on the catalog enumerated for `n + 1` tubes.
pub fn certify_minimality(cfg: &CertifyConfig) -> Result<Certificate> {
    let s = TubedSurface::new(cfg.genus, cfg.n + 1)?;
    let top = DiskCatalog::build(&s, cfg.bounds())?;
    certify_catalog(&top, cfg)
}

/// Certifies on an explicit top-level catalog. Errors are reserved for bad
/// input and resource limits; failed checks give a `FAILED` certificate.
pub fn certify_catalog(top: &DiskCatalog, cfg: &CertifyConfig) -> Result<Certificate> {
    let s = &top.surface;
    if s.tubes != cfg.n + 1 || s.base_genus != cfg.genus {
        return Err(Error::InvalidParameter(format!(
            "catalog is for {} tubes over genus {}, expected {} over genus {}",
            s.tubes,
            s.base_genus,
            cfg.n + 1,
            cfg.genus
        )));
    }
    let n = cfg.n;
    let mut checks = Vec::new();
    let mut cert = Certificate {
        status: String::new(),
        first_failure: None,
        config: cfg.clone(),
        surface: SurfaceSummary::of(s),
        levels: Vec::new(),
        sphere: Vec::new(),
        sphere_homology: None,
        claim: None,
        homology: None,
        reducing_pair: None,
        checks: Vec::new(),
        assumptions: assumptions(),
        caveats: caveats(cfg),
        conclusion: String::new(),
    };

    let t1 = top
        .disks()
        .iter()
        .filter(|d| classify_type(d, s) == DiskType::T1)
        .count();
    checks.push(Check {
        name: "type partition".into(),
        passed: t1 == 1,
        detail: format!("{} disks in four types, {t1} of type T1", top.len()),
    });

    let tower = match build_suspension_sphere(top).and_then(|_| RetractionTower::build(top)) {
        Ok(t) => {
            cert.sphere = t.sphere.pairs.clone();
            checks.push(Check {
                name: "retraction well defined".into(),
                passed: true,
                detail: format!("maps built on F1 through F{}", s.tubes),
            });
            Some(t)
        }
        Err(e @ (Error::ResourceLimit { .. } | Error::InvalidParameter(_))) => return Err(e),
        Err(e) => {
            checks.push(failed_check("retraction well defined", &e));
            None
        }
    };

    if let Some(t) = &tower {
        checks.push(base_irreducibility(&t.catalogs[0]));
        checks.push(sphere_chain(&t.sphere, s));

        let sphere_complex = t.sphere.complex();
        let profile = reduced_homology(&sphere_complex, n, cfg.max_simplices)?;
        checks.push(Check {
            name: "sphere homology".into(),
            passed: profile.is_sphere_like(n),
            detail: format!(
                "reduced homology of the sphere is Z in dimension {n} only: {}",
                profile.is_sphere_like(n)
            ),
        });
        cert.sphere_homology = Some(profile);

        let mut claim_total = 0;
        let mut unclassified = 0;
        for (c, r) in t.catalogs.iter().zip(&t.maps) {
            let report = if c.surface.tubes >= 2 {
                Some(verify_claim_cases(c, r))
            } else {
                None
            };
            let v = report.as_ref().map_or(0, |x| x.total_violations);
            claim_total += v;
            unclassified += report.as_ref().map_or(0, |x| x.unclassified);
            cert.levels.push(summarize(c, Some(r), v));
            if c.surface.tubes == s.tubes {
                cert.claim = report;
            }
        }
        checks.push(Check {
            name: "disjoint pairs map to simplices".into(),
            passed: claim_total == 0 && unclassified == 0,
            detail: format!(
                "{claim_total} violations, {unclassified} unclassified pairs over all levels"
            ),
        });
        checks.push(recursion_consistency(t));

        let ambient = top.complex();
        let f = VertexMap::new(&ambient, &sphere_complex, t.top().pairs())?;
        match check_retraction(&f, &sphere_complex) {
            Ok(rep) => checks.push(Check {
                name: "simplicial retraction".into(),
                passed: rep.holds,
                detail: format!(
                    "{} violating edges, {} moved sphere vertices",
                    rep.violating_edges.len(),
                    rep.moved_vertices.len()
                ),
            }),
            Err(e) => checks.push(failed_check("simplicial retraction", &e)),
        }
        match certify_homology_retraction(&f, &sphere_complex, n + 1, cfg.max_simplices) {
            Ok(h) => {
                checks.push(Check {
                    name: "homology retraction".into(),
                    passed: h.passes(),
                    detail: format!(
                        "generating {n}-cycle with {} terms fixed by inclusion then retraction",
                        h.generating_cycle.len()
                    ),
                });
                cert.homology = Some(h);
            }
            Err(e @ Error::ResourceLimit { .. }) => return Err(e),
            Err(e) => checks.push(failed_check("homology retraction", &e)),
        }

        if s.tubes >= 2 {
            cert.reducing_pair = reducing_pair(top);
            checks.push(Check {
                name: "not strongly irreducible".into(),
                passed: cert.reducing_pair.is_some(),
                detail: match &cert.reducing_pair {
                    Some([a, b]) => format!("{a} and {b} are disjoint and on opposite sides"),
                    None => "no disjoint pair across the surface".into(),
                },
            });
        }
    } else {
        cert.levels.push(summarize(top, None, 0));
    }

    cert.first_failure = checks.iter().find(|c| !c.passed).map(|c| c.name.clone());
    cert.status = if cert.first_failure.is_none() {
        "PASSED"
    } else {
        "FAILED"
    }
    .into();
    cert.conclusion = match &cert.first_failure {
        None => format!(
            "Within the catalog, the disk complex of the genus-{} surface retracts onto an \
             embedded {n}-sphere, so its reduced homology in dimension {n} is nonzero.",
            s.genus()
        ),
        Some(f) => format!("No conclusion: check `{f}` failed."),
    };
    cert.checks = checks;
    Ok(cert)
}
