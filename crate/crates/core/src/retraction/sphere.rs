use serde::{Deserialize, Serialize};

use crate::disk::{DiskCatalog, DiskVertex};
use crate::error::{Error, Result};
use crate::simplicial::{FlagComplex, Vertex};

/// `D_i` and `E_i`: a vertical disk over tube `i + 1` and that tube's meridian.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpherePair {
    pub index: usize,
    pub d: DiskVertex,
    pub e: DiskVertex,
}

/// Pairs `0..=n` spanning an `n`-sphere in the disk complex: each disk is
/// disjoint from every other except its partner.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuspensionSphere {
    pub pairs: Vec<SpherePair>,
}

impl SuspensionSphere {
    pub fn dimension(&self) -> usize {
        self.pairs.len() - 1
    }

    /// The sphere spanned by the first `k` pairs.
    pub fn truncated(&self, k: usize) -> SuspensionSphere {
        SuspensionSphere {
            pairs: self.pairs[..k].to_vec(),
        }
    }

    pub fn d(&self, i: usize) -> &DiskVertex {
        &self.pairs[i].d
    }

    pub fn e(&self, i: usize) -> &DiskVertex {
        &self.pairs[i].e
    }

    /// Pair index of a sphere vertex.
    pub fn level_of(&self, id: &str) -> Option<usize> {
        self.pairs
            .iter()
            .position(|p| p.d.id() == id || p.e.id() == id)
    }

    pub fn vertex_ids(&self) -> Vec<String> {
        self.pairs
            .iter()
            .flat_map(|p| [p.d.id(), p.e.id()])
            .collect()
    }

    /// Whether two sphere vertices span a simplex (equal or not partners).
    pub fn adjacent_or_equal(&self, a: &str, b: &str) -> bool {
        a == b || self.level_of(a) != self.level_of(b)
    }

    pub fn complex(&self) -> FlagComplex {
        let ids = self.vertex_ids();
        let vertices = ids.iter().map(Vertex::plain).collect();
        let mut edges = Vec::new();
        for (i, a) in ids.iter().enumerate() {
            for b in &ids[i + 1..] {
                if self.level_of(a) != self.level_of(b) {
                    edges.push((a.as_str(), b.as_str()));
                }
            }
        }
        FlagComplex::new(vertices, edges).expect("sphere ids are distinct")
    }
}

/// Picks `E_i` as the meridian of tube `i + 1` and `D_i` as the vertical disk
/// over the least arc in region `i + 1`, then checks the suspension pattern
/// of disjointness in the catalog.
pub fn build_suspension_sphere(c: &DiskCatalog) -> Result<SuspensionSphere> {
    let mut pairs = Vec::new();
    for i in 0..c.surface.tubes {
        let e = DiskVertex::meridian(i + 1);
        if !c.contains(&e) {
            return Err(Error::MissingSpherePair {
                pair: i,
                reason: format!("catalog lacks {e}"),
            });
        }
        let d = c
            .disks()
            .iter()
            .filter_map(|d| match d {
                DiskVertex::Vertical { region, arc } if *region == i + 1 => Some(arc),
                _ => None,
            })
            .min()
            .map(|arc| DiskVertex::vertical(i + 1, arc.clone()))
            .ok_or_else(|| Error::MissingSpherePair {
                pair: i,
                reason: format!("catalog has no vertical disk in region {}", i + 1),
            })?;
        pairs.push(SpherePair { index: i, d, e });
    }
    for (i, p) in pairs.iter().enumerate() {
        if c.disjoint_disks(&p.d, &p.e) {
            return Err(Error::MissingSpherePair {
                pair: i,
                reason: format!("{} and {} are disjoint", p.d, p.e),
            });
        }
        if p.d.side() == p.e.side() {
            return Err(Error::MissingSpherePair {
                pair: i,
                reason: "pair lies on one side".into(),
            });
        }
        for q in &pairs[i + 1..] {
            for (x, y) in [(&p.d, &q.d), (&p.d, &q.e), (&p.e, &q.d), (&p.e, &q.e)] {
                if !c.disjoint_disks(x, y) {
                    return Err(Error::MissingSpherePair {
                        pair: q.index,
                        reason: format!("{x} meets {y}"),
                    });
                }
            }
        }
    }
    Ok(SuspensionSphere { pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disk::CatalogBounds;
    use crate::simplicial::{reduced_homology, DEFAULT_MAX_SIMPLICES};
    use crate::surface::TubedSurface;

    #[test]
    fn sphere_in_f3() {
        let s = TubedSurface::new(1, 3).unwrap();
        let c = DiskCatalog::build(&s, CatalogBounds::new(2, 1)).unwrap();
        let sphere = build_suspension_sphere(&c).unwrap();
        assert_eq!(sphere.dimension(), 2);
        assert_eq!(sphere.e(2).id(), "M3");
        assert_eq!(sphere.d(0).id(), "V1[1]");
        let h = reduced_homology(&sphere.complex(), 2, DEFAULT_MAX_SIMPLICES).unwrap();
        assert!(h.is_sphere_like(2));
        assert_eq!(sphere.level_of("M2"), Some(1));
        assert!(sphere.adjacent_or_equal("M1", "M2"));
        assert!(!sphere.adjacent_or_equal("M1", "V1[1]"));
    }

    #[test]
    fn missing_meridian_is_reported() {
        let s = TubedSurface::new(1, 2).unwrap();
        let arc = crate::surface::ArcClass::new(vec![1], s.arc_model()).unwrap();
        let c = DiskCatalog::from_disks(
            &s,
            CatalogBounds::new(1, 0),
            vec![
                DiskVertex::meridian(1),
                DiskVertex::vertical(1, arc.clone()),
                DiskVertex::vertical(2, arc),
            ],
        )
        .unwrap();
        assert!(matches!(
            build_suspension_sphere(&c),
            Err(Error::MissingSpherePair { pair: 1, .. })
        ));
    }
}
