use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::sphere::{build_suspension_sphere, SuspensionSphere};
use crate::disk::{classify_type, last_meridian, project_disk, DiskCatalog, DiskType, DiskVertex};
use crate::error::{Error, Result};
use crate::surface::TubedSurface;

/// How a band-sum disk meets the meridian `E` of the last tube.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionPattern {
    /// Parallel arcs of intersection; there are no circles.
    pub arcs: u32,
}

impl IntersectionPattern {
    pub fn of(d: &DiskVertex, s: &TubedSurface) -> Self {
        let arcs = match d {
            DiskVertex::BandSum { base, copies, .. } if *base == s.tubes => *copies,
            _ => 0,
        };
        Self { arcs }
    }

    /// Arcs cutting off a half-disk of `E` that contains no other arc: the
    /// first and the last of the parallel family.
    pub fn outermost(&self) -> Vec<u32> {
        match self.arcs {
            0 => Vec::new(),
            1 => vec![0],
            k => vec![0, k - 1],
        }
    }
}

/// Surgery of a disk along one outermost arc of its intersection with `E`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SurgeryOutcome {
    pub arc: u32,
    pub delta_prime: DiskVertex,
    pub delta_double_prime: DiskVertex,
    /// Both halves give the same disk.
    pub merged: bool,
    pub image: Option<String>,
    pub level: Option<usize>,
}

/// Cuts a `W'` disk meeting `E` along each outermost arc. Each half of `E`
/// joined to the outer piece of the disk is isotopic, once the last tube is
/// forgotten, to the band sum's partner.
pub fn outermost_surgery(d: &DiskVertex, s: &TubedSurface) -> Result<Vec<SurgeryOutcome>> {
    let pattern = IntersectionPattern::of(d, s);
    let partner = match d {
        DiskVertex::BandSum { partner, .. } if pattern.arcs > 0 => partner.as_ref(),
        _ => {
            return Err(Error::Precondition(format!(
                "{d} has no arcs of intersection with {}",
                last_meridian(s)
            )))
        }
    };
    Ok(pattern
        .outermost()
        .into_iter()
        .map(|arc| SurgeryOutcome {
            arc,
            delta_prime: partner.clone(),
            delta_double_prime: partner.clone(),
            merged: true,
            image: None,
            level: None,
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum Provenance {
    /// The first surface: `E` to `E_0`, every other disk to `D_0`.
    Base,
    /// `E` itself.
    Meridian,
    /// A disk opposite `E` that meets it goes to the newest `D`.
    Crossing,
    /// Disjoint from `E`: the lower map applied to the projected disk.
    Projected,
    /// Meets `E`: the lower map applied to surgery candidates of least level.
    Surgery { outcomes: Vec<SurgeryOutcome> },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assignment {
    pub disk_type: DiskType,
    pub image: String,
    pub level: usize,
    pub provenance: Provenance,
}

/// The retraction of one level's catalog onto its sphere.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetractionMap {
    pub level: usize,
    pub sphere: SuspensionSphere,
    pub assignments: BTreeMap<String, Assignment>,
}

impl RetractionMap {
    pub fn image_of(&self, id: &str) -> Option<&str> {
        self.assignments.get(id).map(|a| a.image.as_str())
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&str, &str)> {
        self.assignments
            .iter()
            .map(|(k, a)| (k.as_str(), a.image.as_str()))
    }
}

fn lower_image(prev: &RetractionMap, d: &DiskVertex) -> Result<(String, usize)> {
    let id = d.id();
    let a = prev
        .assignments
        .get(&id)
        .ok_or_else(|| Error::Precondition(format!("{id} is not in the catalog one level down")))?;
    Ok((a.image.clone(), a.level))
}

/// Image of one disk under the level's retraction, given the map one level
/// down (absent on the first surface).
pub fn retract_vertex(
    d: &DiskVertex,
    c: &DiskCatalog,
    sphere: &SuspensionSphere,
    prev: Option<&RetractionMap>,
) -> Result<Assignment> {
    let s = &c.surface;
    let m = s.tubes;
    let top = m - 1;
    let disk_type = classify_type(d, s);
    let at = |i: usize, dv: &DiskVertex, provenance| Assignment {
        disk_type,
        image: dv.id(),
        level: i,
        provenance,
    };
    let prev = match prev {
        None => {
            return match disk_type {
                DiskType::T1 => Ok(at(0, sphere.e(0), Provenance::Base)),
                DiskType::T3 | DiskType::T4 => Ok(at(0, sphere.d(0), Provenance::Base)),
                DiskType::T2 => Err(Error::Precondition(format!(
                    "{d} lies on the side of the first tube and differs from its meridian"
                ))),
            }
        }
        Some(p) => p,
    };
    match disk_type {
        DiskType::T1 => Ok(at(top, sphere.e(top), Provenance::Meridian)),
        DiskType::T3 => Ok(at(top, sphere.d(top), Provenance::Crossing)),
        DiskType::T2 | DiskType::T4 if c.disjoint_disks(d, &last_meridian(s)) => {
            let p = project_disk(d, s, c.bounds.bandsum_depth)?;
            let (image, level) = lower_image(prev, &p)?;
            Ok(Assignment {
                disk_type,
                image,
                level,
                provenance: Provenance::Projected,
            })
        }
        DiskType::T4 => unreachable!("T4 disks miss E"),
        DiskType::T2 => {
            let mut outcomes = outermost_surgery(d, s)?;
            for o in &mut outcomes {
                let (a, la) = lower_image(prev, &o.delta_prime)?;
                let (b, lb) = lower_image(prev, &o.delta_double_prime)?;
                let (image, level) = if lb < la { (b, lb) } else { (a, la) };
                o.image = Some(image);
                o.level = Some(level);
            }
            let least = outcomes
                .iter()
                .filter_map(|o| o.level)
                .min()
                .expect("nonempty");
            let mut chosen: Option<&str> = None;
            for o in &outcomes {
                if o.level != Some(least) {
                    continue;
                }
                let img = o.image.as_deref().expect("filled");
                match chosen {
                    None => chosen = Some(img),
                    Some(first) if first != img => {
                        return Err(Error::WellDefinedness {
                            disk: d.id(),
                            first: first.to_string(),
                            second: img.to_string(),
                        })
                    }
                    _ => {}
                }
            }
            let image = chosen.expect("nonempty").to_string();
            Ok(Assignment {
                disk_type,
                image,
                level: least,
                provenance: Provenance::Surgery { outcomes },
            })
        }
    }
}

/// Catalogs and retractions for every level `1..=N` below a top catalog.
#[derive(Clone, Debug)]
pub struct RetractionTower {
    pub catalogs: Vec<DiskCatalog>,
    pub maps: Vec<RetractionMap>,
    pub sphere: SuspensionSphere,
}

impl RetractionTower {
    pub fn build(top: &DiskCatalog) -> Result<Self> {
        let sphere = build_suspension_sphere(top)?;
        let mut catalogs = vec![top.clone()];
        while catalogs.last().expect("nonempty").surface.tubes > 1 {
            let lower = catalogs.last().expect("nonempty").restrict()?;
            catalogs.push(lower);
        }
        catalogs.reverse();
        let mut maps: Vec<RetractionMap> = Vec::new();
        for c in &catalogs {
            let level = c.surface.tubes;
            let local = sphere.truncated(level);
            let mut assignments = BTreeMap::new();
            for d in c.disks() {
                let a = retract_vertex(d, c, &local, maps.last())?;
                assignments.insert(d.id(), a);
            }
            maps.push(RetractionMap {
                level,
                sphere: local,
                assignments,
            });
        }
        Ok(Self {
            catalogs,
            maps,
            sphere,
        })
    }

    pub fn top(&self) -> &RetractionMap {
        self.maps.last().expect("at least one level")
    }

    pub fn top_catalog(&self) -> &DiskCatalog {
        self.catalogs.last().expect("at least one level")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disk::CatalogBounds;
    use crate::surface::ArcClass;

    fn tower(g: u32, n: usize, k: usize, depth: usize) -> RetractionTower {
        let s = TubedSurface::new(g, n).unwrap();
        RetractionTower::build(&DiskCatalog::build(&s, CatalogBounds::new(k, depth)).unwrap())
            .unwrap()
    }

    #[test]
    fn base_level_sends_v_disks_to_d0() {
        let t = tower(1, 1, 2, 1);
        let r = t.top();
        assert_eq!(r.image_of("M1"), Some("M1"));
        assert_eq!(r.image_of("V1[1 2]"), Some("V1[1]"));
        assert!(r.assignments.values().all(|a| a.level == 0));
    }

    #[test]
    fn identity_on_sphere_at_every_level() {
        let t = tower(1, 3, 2, 2);
        for r in &t.maps {
            for id in r.sphere.vertex_ids() {
                assert_eq!(r.image_of(&id), Some(id.as_str()), "level {}", r.level);
            }
        }
    }

    #[test]
    fn band_sum_collapses_to_partner_image() {
        let t = tower(1, 3, 2, 1);
        let s = &t.top_catalog().surface;
        let band = ArcClass::new(vec![1], s.arc_model()).unwrap();
        let v2 = DiskVertex::vertical(2, band.clone());
        let b = DiskVertex::band_sum(3, v2.clone(), band, 2);
        let a = &t.top().assignments[&b.id()];
        assert_eq!(a.disk_type, DiskType::T2);
        assert_eq!(a.image, t.maps[1].image_of(&v2.id()).unwrap());
        match &a.provenance {
            Provenance::Surgery { outcomes } => assert_eq!(outcomes.len(), 2),
            p => panic!("unexpected provenance {p:?}"),
        }
    }

    #[test]
    fn surgery_requires_intersection() {
        let s = TubedSurface::new(1, 2).unwrap();
        assert!(outermost_surgery(&DiskVertex::meridian(1), &s).is_err());
        assert_eq!(IntersectionPattern { arcs: 3 }.outermost(), vec![0, 2]);
    }

    #[test]
    fn images_never_exceed_the_level() {
        let t = tower(2, 3, 2, 1);
        for r in &t.maps {
            for a in r.assignments.values() {
                assert!(a.level < r.level);
                assert_eq!(r.sphere.level_of(&a.image), Some(a.level));
            }
        }
    }
}
