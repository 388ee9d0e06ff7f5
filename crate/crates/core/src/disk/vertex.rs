use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface::{region_side, tube_side, ArcClass, Side, TubedSurface};

/// Descriptor of a compressing disk for a tubed surface.
///
/// * `Meridian`: the meridian disk of solid tube `tube`.
/// * `Vertical`: `arc × I` in the product block of `region`; the arc has both
///   ends on that region's tube, so the disk runs over the tube wall twice.
/// * `BandSum`: a disk on the side of tube `base` that meets the meridian of
///   `base` in `copies` parallel arcs. It is built from `partner`, a disk on
///   the same side that misses that meridian, by a band that follows `band`
///   and passes through the tube. Surgery along an outermost arc returns the
///   partner.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum DiskVertex {
    Meridian {
        tube: usize,
    },
    Vertical {
        region: usize,
        arc: ArcClass,
    },
    #[serde(rename = "bandsum")]
    BandSum {
        base: usize,
        partner: Box<DiskVertex>,
        band: ArcClass,
        copies: u32,
    },
}

/// One piece of a disk's boundary footprint.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Touch {
    /// Parallel to the meridian of a tube.
    Meridian(usize),
    /// Runs along the wall of a tube, across its meridian.
    Wall(usize),
    /// Passes through a tube, meeting its meridian in arcs.
    Through(usize),
    /// Boundary arc in a region's product block.
    RegionArc(usize, ArcClass),
    /// Band core near a tube.
    Band(usize, ArcClass),
}

impl DiskVertex {
    pub fn meridian(tube: usize) -> Self {
        DiskVertex::Meridian { tube }
    }

    pub fn vertical(region: usize, arc: ArcClass) -> Self {
        DiskVertex::Vertical { region, arc }
    }

    pub fn band_sum(base: usize, partner: DiskVertex, band: ArcClass, copies: u32) -> Self {
        DiskVertex::BandSum {
            base,
            partner: Box::new(partner),
            band,
            copies,
        }
    }

    /// Stable identifier; also the vertex id in every complex built here.
    pub fn id(&self) -> String {
        self.to_string()
    }

    pub fn is_meridian(&self) -> bool {
        matches!(self, DiskVertex::Meridian { .. })
    }

    /// Nesting depth of band sums.
    pub fn depth(&self) -> usize {
        match self {
            DiskVertex::BandSum { partner, .. } => 1 + partner.depth(),
            _ => 0,
        }
    }

    /// Largest tube or region index the disk involves.
    pub fn max_index(&self) -> usize {
        match self {
            DiskVertex::Meridian { tube } => *tube,
            DiskVertex::Vertical { region, .. } => *region,
            DiskVertex::BandSum { base, partner, .. } => (*base).max(partner.max_index()),
        }
    }

    pub fn side(&self) -> Side {
        match self {
            DiskVertex::Meridian { tube } => tube_side(*tube),
            DiskVertex::Vertical { region, .. } => region_side(*region),
            DiskVertex::BandSum { base, .. } => tube_side(*base),
        }
    }

    pub fn footprint(&self) -> Vec<Touch> {
        let mut out = Vec::new();
        self.collect_footprint(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_footprint(&self, out: &mut Vec<Touch>) {
        match self {
            DiskVertex::Meridian { tube } => out.push(Touch::Meridian(*tube)),
            DiskVertex::Vertical { region, arc } => {
                out.push(Touch::Wall(*region));
                out.push(Touch::RegionArc(*region, arc.clone()));
            }
            DiskVertex::BandSum {
                base,
                partner,
                band,
                ..
            } => {
                partner.collect_footprint(out);
                out.push(Touch::Through(*base));
                out.push(Touch::Band(*base, band.clone()));
            }
        }
    }

    /// Checks the descriptor against a surface: indices exist, arcs are valid
    /// for the region model, and band sums respect their construction rules.
    pub fn validate(&self, s: &TubedSurface, max_depth: usize) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidParameter(format!("disk {self}: {msg}")));
        match self {
            DiskVertex::Meridian { tube } => {
                if *tube == 0 || *tube > s.tubes {
                    return bad(format!(
                        "no tube {tube} on a surface with {} tubes",
                        s.tubes
                    ));
                }
            }
            DiskVertex::Vertical { region, arc } => {
                if *region == 0 || *region > s.tubes {
                    return bad(format!("no region {region}"));
                }
                let model = &s.region(*region).model;
                let fresh = ArcClass::new(arc.code().to_vec(), model)?;
                if &fresh != arc {
                    return bad(format!("arc {arc} is not in canonical form"));
                }
            }
            DiskVertex::BandSum {
                base,
                partner,
                band,
                copies,
            } => {
                if *base == 0 || *base > s.tubes {
                    return bad(format!("no tube {base}"));
                }
                if *copies == 0 {
                    return bad("a band sum meets its base meridian at least once".into());
                }
                if self.depth() > max_depth {
                    return bad(format!("depth {} exceeds bound {max_depth}", self.depth()));
                }
                let fresh = ArcClass::new(band.code().to_vec(), s.arc_model())?;
                if &fresh != band {
                    return bad(format!("band {band} is not in canonical form"));
                }
                partner.validate(s, max_depth)?;
                if partner.max_index() >= *base {
                    return bad("partner must live below the base tube".into());
                }
                if partner.side() != tube_side(*base) {
                    return bad("partner lies on the wrong side".into());
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for DiskVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiskVertex::Meridian { tube } => write!(f, "M{tube}"),
            DiskVertex::Vertical { region, arc } => write!(f, "V{region}{arc}"),
            DiskVertex::BandSum {
                base,
                partner,
                band,
                copies,
            } => write!(f, "B{base}({partner};{band};x{copies})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(code: &[i32], s: &TubedSurface) -> ArcClass {
        ArcClass::new(code.to_vec(), s.arc_model()).unwrap()
    }

    #[test]
    fn ids_are_readable_and_distinct() {
        let s = TubedSurface::new(1, 3).unwrap();
        let v = DiskVertex::vertical(1, arc(&[1], &s));
        let b = DiskVertex::band_sum(3, v.clone(), arc(&[2], &s), 2);
        assert_eq!(DiskVertex::meridian(2).id(), "M2");
        assert_eq!(v.id(), "V1[1]");
        assert_eq!(b.id(), "B3(V1[1];[2];x2)");
        assert_eq!(b.depth(), 1);
        assert_eq!(b.max_index(), 3);
    }

    #[test]
    fn sides_follow_tubes_and_regions() {
        let s = TubedSurface::new(1, 2).unwrap();
        assert_eq!(DiskVertex::meridian(1).side(), Side::B);
        assert_eq!(DiskVertex::vertical(1, arc(&[1], &s)).side(), Side::A);
        assert_eq!(DiskVertex::vertical(2, arc(&[1], &s)).side(), Side::B);
    }

    #[test]
    fn footprints_match_the_variant() {
        let s = TubedSurface::new(1, 3).unwrap();
        assert_eq!(
            DiskVertex::meridian(2).footprint(),
            vec![Touch::Meridian(2)]
        );
        let v = DiskVertex::vertical(2, arc(&[1], &s));
        assert_eq!(
            v.footprint(),
            vec![Touch::Wall(2), Touch::RegionArc(2, arc(&[1], &s))]
        );
        let b = DiskVertex::band_sum(3, DiskVertex::meridian(1), arc(&[2], &s), 1);
        assert!(b.footprint().contains(&Touch::Through(3)));
        assert!(b.footprint().contains(&Touch::Meridian(1)));
    }

    #[test]
    fn validation_catches_bad_descriptors() {
        let s = TubedSurface::new(1, 3).unwrap();
        assert!(DiskVertex::meridian(4).validate(&s, 2).is_err());
        assert!(DiskVertex::meridian(0).validate(&s, 2).is_err());
        // Wrong side: region 1 lies on the side of tube 2, not tube 3.
        let b = DiskVertex::band_sum(3, DiskVertex::vertical(1, arc(&[1], &s)), arc(&[1], &s), 1);
        assert!(b.validate(&s, 2).is_err());
        let ok = DiskVertex::band_sum(3, DiskVertex::meridian(1), arc(&[1], &s), 1);
        assert!(ok.validate(&s, 2).is_ok());
        assert!(ok.validate(&s, 0).is_err());
        let zero = DiskVertex::band_sum(3, DiskVertex::meridian(1), arc(&[1], &s), 0);
        assert!(zero.validate(&s, 2).is_err());
    }

    #[test]
    fn json_tags() {
        let s = TubedSurface::new(1, 2).unwrap();
        let b = DiskVertex::band_sum(2, DiskVertex::vertical(1, arc(&[1], &s)), arc(&[2], &s), 1);
        let text = serde_json::to_string(&b).unwrap();
        assert_eq!(
            text,
            r#"{"kind":"bandsum","base":2,"partner":{"kind":"vertical","region":1,"arc":[1]},"band":[2],"copies":1}"#
        );
        let back: DiskVertex = serde_json::from_str(&text).unwrap();
        assert_eq!(back, b);
    }
}
