use std::collections::HashMap;
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use super::vertex::{DiskVertex, Touch};
use crate::error::{Error, Result};
use crate::surface::{
    prepared_intersection, ArcClass, PreparedArc, PuncturedSurfaceModel, RelativeSide, TubedSurface,
};

/// Answers "can these two arcs be made disjoint" in a region.
pub trait ArcOracle {
    fn arcs_disjoint(&self, a: &ArcClass, b: &ArcClass) -> bool;
}

/// Computes every query from scratch.
pub struct DirectArcs<'a>(pub &'a PuncturedSurfaceModel);

impl ArcOracle for DirectArcs<'_> {
    fn arcs_disjoint(&self, a: &ArcClass, b: &ArcClass) -> bool {
        a == b
            || prepared_intersection(
                &PreparedArc::new(a, self.0),
                &PreparedArc::new(b, self.0),
                self.0,
                true,
            ) == 0
    }
}

/// Disjointness for a fixed list of arcs, computed in full on first use. Arcs
/// outside the list fall back to a direct computation.
#[derive(Clone, Debug)]
pub struct ArcTable {
    model: PuncturedSurfaceModel,
    arcs: Vec<ArcClass>,
    index: HashMap<ArcClass, usize>,
    disjoint: OnceLock<Vec<bool>>,
}

impl ArcTable {
    pub fn new(arcs: &[ArcClass], model: &PuncturedSurfaceModel) -> Self {
        Self {
            model: model.clone(),
            arcs: arcs.to_vec(),
            index: arcs
                .iter()
                .cloned()
                .enumerate()
                .map(|(i, a)| (a, i))
                .collect(),
            disjoint: OnceLock::new(),
        }
    }

    fn matrix(&self) -> &[bool] {
        self.disjoint.get_or_init(|| {
            let model = &self.model;
            let prepared: Vec<PreparedArc> = self
                .arcs
                .iter()
                .map(|a| PreparedArc::new(a, model))
                .collect();
            let n = self.arcs.len();
            let mut m = vec![true; n * n];
            for i in 0..n {
                for j in i + 1..n {
                    let d = prepared_intersection(&prepared[i], &prepared[j], model, true) == 0;
                    m[i * n + j] = d;
                    m[j * n + i] = d;
                }
            }
            m
        })
    }

    pub fn len(&self) -> usize {
        self.arcs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arcs.is_empty()
    }
}

impl ArcOracle for ArcTable {
    fn arcs_disjoint(&self, a: &ArcClass, b: &ArcClass) -> bool {
        match (self.index.get(a), self.index.get(b)) {
            (Some(&i), Some(&j)) => self.matrix()[i * self.len() + j],
            _ => DirectArcs(&self.model).arcs_disjoint(a, b),
        }
    }
}

fn touches_compatible(x: &Touch, y: &Touch, arcs: &dyn ArcOracle) -> bool {
    use Touch::*;
    match (x, y) {
        (Meridian(i), Wall(j) | Through(j))
        | (Wall(i) | Through(i), Meridian(j))
        | (Wall(i), Through(j))
        | (Through(i), Wall(j)) => i != j,
        (RegionArc(r, a), RegionArc(s, b)) | (Band(r, a), Band(s, b)) => {
            r != s || arcs.arcs_disjoint(a, b)
        }
        _ => true,
    }
}

/// Disjointness of two footprints.
pub fn footprints_disjoint(a: &[Touch], b: &[Touch], arcs: &dyn ArcOracle) -> bool {
    a.iter()
        .all(|x| b.iter().all(|y| touches_compatible(x, y, arcs)))
}

/// Whether two disks can be isotoped to be disjoint. A disk is disjoint from
/// itself (take a parallel copy).
pub fn disks_disjoint(d1: &DiskVertex, d2: &DiskVertex, s: &TubedSurface) -> bool {
    d1 == d2 || footprints_disjoint(&d1.footprint(), &d2.footprint(), &DirectArcs(s.arc_model()))
}

/// Position of a disk relative to the last tube of the surface.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum DiskType {
    /// The meridian `E` of the last tube.
    T1,
    /// On the tube's side, other than `E`.
    T2,
    /// On the opposite side and meeting `E`.
    T3,
    /// On the opposite side and disjoint from `E`.
    T4,
}

impl DiskType {
    pub const ALL: [DiskType; 4] = [DiskType::T1, DiskType::T2, DiskType::T3, DiskType::T4];
}

impl fmt::Display for DiskType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// The meridian of the last tube of `s`.
pub fn last_meridian(s: &TubedSurface) -> DiskVertex {
    DiskVertex::meridian(s.tubes)
}

pub fn relative_side(d: &DiskVertex, s: &TubedSurface) -> RelativeSide {
    s.relative(d.side())
}

pub fn classify_type(d: &DiskVertex, s: &TubedSurface) -> DiskType {
    let e = last_meridian(s);
    if *d == e {
        return DiskType::T1;
    }
    match (relative_side(d, s), disks_disjoint(d, &e, s)) {
        (RelativeSide::W, _) => DiskType::T2,
        (RelativeSide::V, false) => DiskType::T3,
        (RelativeSide::V, true) => DiskType::T4,
    }
}

/// The disk in the surface with the last tube removed that a disk disjoint
/// from `E` becomes. Its boundary avoids the tube, so the descriptor carries
/// over unchanged; it is checked against the smaller surface.
pub fn project_disk(d: &DiskVertex, s: &TubedSurface, max_depth: usize) -> Result<DiskVertex> {
    if s.tubes < 2 {
        return Err(Error::Precondition(
            "projection needs at least two tubes".into(),
        ));
    }
    let e = last_meridian(s);
    if *d == e || !disks_disjoint(d, &e, s) {
        return Err(Error::Precondition(format!(
            "disk {d} is not disjoint from {e}"
        )));
    }
    let lower = s.drop_last_tube()?;
    d.validate(&lower, max_depth)?;
    Ok(d.clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(code: &[i32], s: &TubedSurface) -> ArcClass {
        ArcClass::new(code.to_vec(), s.arc_model()).unwrap()
    }

    #[test]
    fn meridian_meets_verticals_over_its_tube_only() {
        let s = TubedSurface::new(1, 3).unwrap();
        let v2 = DiskVertex::vertical(2, arc(&[1], &s));
        assert!(!disks_disjoint(&DiskVertex::meridian(2), &v2, &s));
        assert!(disks_disjoint(&DiskVertex::meridian(1), &v2, &s));
        assert!(disks_disjoint(&DiskVertex::meridian(3), &v2, &s));
    }

    #[test]
    fn verticals_in_one_region_follow_their_arcs() {
        let s = TubedSurface::new(1, 2).unwrap();
        let a = DiskVertex::vertical(1, arc(&[1], &s));
        let b = DiskVertex::vertical(1, arc(&[2], &s));
        let c = DiskVertex::vertical(1, arc(&[1, 2], &s));
        let d = DiskVertex::vertical(1, arc(&[1, -2], &s));
        assert!(disks_disjoint(&a, &b, &s));
        assert!(!disks_disjoint(&c, &d, &s));
        assert!(disks_disjoint(
            &c,
            &DiskVertex::vertical(2, arc(&[1, -2], &s)),
            &s
        ));
    }

    #[test]
    fn meridians_are_pairwise_disjoint() {
        let s = TubedSurface::new(2, 3).unwrap();
        for i in 1..=3 {
            for j in 1..=3 {
                assert!(disks_disjoint(
                    &DiskVertex::meridian(i),
                    &DiskVertex::meridian(j),
                    &s
                ));
            }
        }
    }

    #[test]
    fn band_sum_meets_its_base_meridian_but_not_its_partner() {
        let s = TubedSurface::new(1, 3).unwrap();
        let p = DiskVertex::meridian(1);
        let b = DiskVertex::band_sum(3, p.clone(), arc(&[1], &s), 2);
        assert!(!disks_disjoint(&b, &DiskVertex::meridian(3), &s));
        assert!(disks_disjoint(&b, &p, &s));
        assert!(!disks_disjoint(
            &b,
            &DiskVertex::vertical(1, arc(&[1], &s)),
            &s
        ));
    }

    #[test]
    fn f1_types() {
        let s = TubedSurface::new(1, 1).unwrap();
        assert_eq!(classify_type(&DiskVertex::meridian(1), &s), DiskType::T1);
        let v = DiskVertex::vertical(1, arc(&[2], &s));
        assert_eq!(classify_type(&v, &s), DiskType::T3);
    }

    #[test]
    fn f2_types() {
        let s = TubedSurface::new(1, 2).unwrap();
        // W' is side A (tube 2); region 1 sits on A, region 2 on B.
        assert_eq!(classify_type(&DiskVertex::meridian(2), &s), DiskType::T1);
        assert_eq!(classify_type(&DiskVertex::meridian(1), &s), DiskType::T4);
        assert_eq!(
            classify_type(&DiskVertex::vertical(1, arc(&[1], &s)), &s),
            DiskType::T2
        );
        assert_eq!(
            classify_type(&DiskVertex::vertical(2, arc(&[1], &s)), &s),
            DiskType::T3
        );
    }

    #[test]
    fn projection_keeps_side_and_rejects_disks_meeting_e() {
        let s = TubedSurface::new(1, 3).unwrap();
        let v = DiskVertex::vertical(2, arc(&[1], &s));
        let p = project_disk(&v, &s, 1).unwrap();
        assert_eq!(p.side(), v.side());
        assert!(project_disk(&DiskVertex::meridian(3), &s, 1).is_err());
        assert!(project_disk(&DiskVertex::vertical(3, arc(&[1], &s)), &s, 1).is_err());
        let b = DiskVertex::band_sum(3, DiskVertex::meridian(1), arc(&[1], &s), 1);
        assert!(project_disk(&b, &s, 1).is_err());
    }

    #[test]
    fn table_agrees_with_direct_queries() {
        let s = TubedSurface::new(1, 1).unwrap();
        let arcs = crate::surface::enumerate_arcs(s.arc_model(), 2, 1000).unwrap();
        let table = ArcTable::new(&arcs, s.arc_model());
        let direct = DirectArcs(s.arc_model());
        for a in &arcs {
            for b in &arcs {
                assert_eq!(
                    table.arcs_disjoint(a, b),
                    direct.arcs_disjoint(a, b),
                    "{a} {b}"
                );
            }
        }
    }
}
