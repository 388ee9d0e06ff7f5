use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use super::relation::{classify_type, footprints_disjoint, ArcTable, DiskType};
use super::vertex::{DiskVertex, Touch};
use crate::error::{Error, Result};
use crate::simplicial::{FlagComplex, Vertex};
use crate::surface::{
    enumerate_arcs, region_side, tube_side, ArcClass, TubedSurface, DEFAULT_MAX_ARCS,
};

pub const DEFAULT_MAX_DISKS: usize = 50_000;

/// Enumeration bounds for a disk catalog.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogBounds {
    /// Longest arc code used for vertical disks.
    pub arc_bound: usize,
    /// Deepest nesting of band sums.
    pub bandsum_depth: usize,
    pub max_arcs: usize,
    pub max_disks: usize,
}

impl CatalogBounds {
    pub fn new(arc_bound: usize, bandsum_depth: usize) -> Self {
        Self {
            arc_bound,
            bandsum_depth,
            max_arcs: DEFAULT_MAX_ARCS,
            max_disks: DEFAULT_MAX_DISKS,
        }
    }
}

/// On-disk form of a catalog.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogDocument {
    pub genus: u32,
    pub tubes: usize,
    pub arc_bound: usize,
    pub bandsum_depth: usize,
    pub disks: Vec<DiskVertex>,
}

/// A finite set of disks for one tubed surface with their disjointness
/// relation.
#[derive(Clone, Debug)]
pub struct DiskCatalog {
    pub surface: TubedSurface,
    pub bounds: CatalogBounds,
    pub arcs: Vec<ArcClass>,
    disks: Vec<DiskVertex>,
    footprints: Vec<Vec<Touch>>,
    table: ArcTable,
}

fn short_arcs(arcs: &[ArcClass]) -> impl Iterator<Item = &ArcClass> {
    arcs.iter().filter(|a| a.len() == 1)
}

/// Band sums on tube `base` built from the given partners.
fn band_sums(base: usize, partners: &[DiskVertex], arcs: &[ArcClass], out: &mut Vec<DiskVertex>) {
    for p in partners {
        for band in short_arcs(arcs) {
            for copies in 1..=2 {
                out.push(DiskVertex::band_sum(base, p.clone(), band.clone(), copies));
            }
        }
    }
}

/// Every disk the bounds allow, in no particular order.
fn generate(s: &TubedSurface, bounds: &CatalogBounds, arcs: &[ArcClass]) -> Vec<DiskVertex> {
    let n = s.tubes;
    let mut out: Vec<DiskVertex> = (1..=n).map(DiskVertex::meridian).collect();
    for r in 1..=n {
        out.extend(arcs.iter().map(|a| DiskVertex::vertical(r, a.clone())));
    }
    if bounds.bandsum_depth == 0 {
        return out;
    }
    // Simple partners for base `j`: meridians of lower tubes on the same side
    // and verticals over short arcs in lower regions on that side.
    let simple = |j: usize| -> Vec<DiskVertex> {
        let side = tube_side(j);
        let mut p: Vec<DiskVertex> = (1..j.saturating_sub(1))
            .filter(|&i| tube_side(i) == side)
            .map(DiskVertex::meridian)
            .collect();
        for r in 1..j {
            if region_side(r) == side {
                p.extend(short_arcs(arcs).map(|a| DiskVertex::vertical(r, a.clone())));
            }
        }
        p
    };
    let mut depth_one: Vec<Vec<DiskVertex>> = vec![Vec::new(); n + 1];
    for (j, level) in depth_one.iter_mut().enumerate().skip(2) {
        band_sums(j, &simple(j), arcs, level);
    }
    for level in &depth_one {
        out.extend(level.iter().cloned());
    }
    if bounds.bandsum_depth >= 2 {
        for j in 3..=n {
            let partners: Vec<DiskVertex> = (1..j - 1)
                .filter(|&i| tube_side(i) == tube_side(j))
                .flat_map(|i| depth_one[i].iter().cloned())
                .collect();
            band_sums(j, &partners, arcs, &mut out);
        }
    }
    out
}

impl DiskCatalog {
    /// Enumerates the catalog for `s` under `bounds`.
    pub fn build(s: &TubedSurface, bounds: CatalogBounds) -> Result<Self> {
        if bounds.arc_bound == 0 {
            return Err(Error::InvalidParameter(
                "arc bound must be at least 1".into(),
            ));
        }
        let arcs = enumerate_arcs(s.arc_model(), bounds.arc_bound, bounds.max_arcs)?;
        let disks = generate(s, &bounds, &arcs);
        Self::assemble(s, bounds, arcs, disks)
    }

    /// A catalog over an explicit disk list; each descriptor is validated.
    pub fn from_disks(
        s: &TubedSurface,
        bounds: CatalogBounds,
        disks: Vec<DiskVertex>,
    ) -> Result<Self> {
        for d in &disks {
            d.validate(s, bounds.bandsum_depth)?;
        }
        let mut arcs: BTreeSet<ArcClass> = BTreeSet::new();
        for d in &disks {
            for t in d.footprint() {
                if let Touch::RegionArc(_, a) | Touch::Band(_, a) = t {
                    arcs.insert(a);
                }
            }
        }
        Self::assemble(s, bounds, arcs.into_iter().collect(), disks)
    }

    pub fn from_document(doc: &CatalogDocument, max_arcs: usize, max_disks: usize) -> Result<Self> {
        let s = TubedSurface::new(doc.genus, doc.tubes)?;
        let bounds = CatalogBounds {
            arc_bound: doc.arc_bound,
            bandsum_depth: doc.bandsum_depth,
            max_arcs,
            max_disks,
        };
        Self::from_disks(&s, bounds, doc.disks.clone())
    }

    fn assemble(
        s: &TubedSurface,
        bounds: CatalogBounds,
        arcs: Vec<ArcClass>,
        mut disks: Vec<DiskVertex>,
    ) -> Result<Self> {
        disks.sort_by_cached_key(DiskVertex::id);
        disks.dedup();
        if disks.len() > bounds.max_disks {
            return Err(Error::ResourceLimit {
                what: "disks",
                dimension: 0,
                cap: bounds.max_disks,
            });
        }
        let table = ArcTable::new(&arcs, s.arc_model());
        let footprints = disks.iter().map(DiskVertex::footprint).collect();
        Ok(Self {
            surface: s.clone(),
            bounds,
            arcs,
            disks,
            footprints,
            table,
        })
    }

    pub fn len(&self) -> usize {
        self.disks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.disks.is_empty()
    }

    pub fn disks(&self) -> &[DiskVertex] {
        &self.disks
    }

    pub fn position(&self, d: &DiskVertex) -> Option<usize> {
        self.disks.iter().position(|x| x == d)
    }

    pub fn contains(&self, d: &DiskVertex) -> bool {
        self.position(d).is_some()
    }

    pub fn disjoint(&self, i: usize, j: usize) -> bool {
        i == j || footprints_disjoint(&self.footprints[i], &self.footprints[j], &self.table)
    }

    /// Disjointness between any two descriptors, using the cached arc table.
    pub fn disjoint_disks(&self, a: &DiskVertex, b: &DiskVertex) -> bool {
        a == b || footprints_disjoint(&a.footprint(), &b.footprint(), &self.table)
    }

    /// Pairs `i < j` of disjoint distinct disks.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                if self.disjoint(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    /// The disk complex: vertices are disk ids, edges join disjoint disks.
    pub fn complex(&self) -> FlagComplex {
        let vertices = self.disks.iter().map(|d| Vertex::plain(d.id())).collect();
        FlagComplex::from_indexed(vertices, &self.edges()).expect("disk ids are distinct")
    }

    pub fn disk_type(&self, i: usize) -> DiskType {
        classify_type(&self.disks[i], &self.surface)
    }

    /// The catalog of the surface with the last tube removed: every disk whose
    /// indices stay below the last tube.
    pub fn restrict(&self) -> Result<DiskCatalog> {
        let lower = self.surface.drop_last_tube()?;
        let keep: Vec<usize> = (0..self.len())
            .filter(|&i| self.disks[i].max_index() <= lower.tubes)
            .collect();
        Ok(DiskCatalog {
            surface: lower,
            bounds: self.bounds,
            arcs: self.arcs.clone(),
            disks: keep.iter().map(|&i| self.disks[i].clone()).collect(),
            footprints: keep.iter().map(|&i| self.footprints[i].clone()).collect(),
            table: self.table.clone(),
        })
    }

    pub fn to_document(&self) -> CatalogDocument {
        CatalogDocument {
            genus: self.surface.base_genus,
            tubes: self.surface.tubes,
            arc_bound: self.bounds.arc_bound,
            bandsum_depth: self.bounds.bandsum_depth,
            disks: self.disks.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("serializable")
    }
}
