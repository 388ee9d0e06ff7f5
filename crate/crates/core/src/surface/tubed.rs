use std::fmt;

use serde::{Deserialize, Serialize};

use super::punctured::PuncturedSurfaceModel;
use crate::error::{Error, Result};

/// Absolute side of the surface in the ambient manifold.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    A,
    B,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::A => Side::B,
            Side::B => Side::A,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::A => "A",
            Side::B => "B",
        })
    }
}

/// Side relative to the most recently attached tube: `W` holds its solid tube.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RelativeSide {
    V,
    W,
}

impl fmt::Display for RelativeSide {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RelativeSide::V => "V'",
            RelativeSide::W => "W'",
        })
    }
}

/// Side of solid tube `i`. Tube 1 is on `B`, and consecutive tubes alternate.
pub fn tube_side(i: usize) -> Side {
    if i % 2 == 1 {
        Side::B
    } else {
        Side::A
    }
}

/// Side of the punctured product block of region `r`.
pub fn region_side(r: usize) -> Side {
    tube_side(r).opposite()
}

/// A hole left in a copy of `F` where a neighbouring tube attaches.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Foot {
    pub tube: usize,
    pub copy: usize,
}

/// The product block between copies `index - 1` and `index`, punctured by
/// solid tube `index`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub index: usize,
    pub side: Side,
    pub tube_side: Side,
    /// Feet on the lower (`index - 1`) and upper (`index`) copies.
    pub feet: Vec<Foot>,
    pub model: PuncturedSurfaceModel,
}

/// `n + 1` parallel copies of a genus-`g` surface, consecutive copies joined
/// by unknotted tubes `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TubedSurface {
    pub base_genus: u32,
    pub tubes: usize,
    pub regions: Vec<Region>,
}

impl TubedSurface {
    pub fn new(g: u32, n: usize) -> Result<Self> {
        if g == 0 {
            return Err(Error::InvalidParameter("genus must be at least 1".into()));
        }
        if n == 0 {
            return Err(Error::InvalidParameter(
                "at least one tube is required".into(),
            ));
        }
        let regions = (1..=n)
            .map(|r| {
                let mut feet = Vec::new();
                if r > 1 {
                    feet.push(Foot {
                        tube: r - 1,
                        copy: r - 1,
                    });
                }
                if r < n {
                    feet.push(Foot {
                        tube: r + 1,
                        copy: r,
                    });
                }
                let model = PuncturedSurfaceModel::new(g, feet.len() as u32)?;
                Ok(Region {
                    index: r,
                    side: region_side(r),
                    tube_side: tube_side(r),
                    feet,
                    model,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            base_genus: g,
            tubes: n,
            regions,
        })
    }

    pub fn genus(&self) -> u32 {
        (self.tubes as u32 + 1) * self.base_genus
    }

    pub fn copies(&self) -> usize {
        self.tubes + 1
    }

    pub fn region(&self, r: usize) -> &Region {
        &self.regions[r - 1]
    }

    /// The model shared by every region's punctured surface.
    pub fn arc_model(&self) -> &PuncturedSurfaceModel {
        &self.regions[0].model
    }

    /// Absolute side of `W'`, the side holding the last tube.
    pub fn w_side(&self) -> Side {
        tube_side(self.tubes)
    }

    pub fn relative(&self, side: Side) -> RelativeSide {
        if side == self.w_side() {
            RelativeSide::W
        } else {
            RelativeSide::V
        }
    }

    /// The same chain with the last copy and tube removed.
    pub fn drop_last_tube(&self) -> Result<TubedSurface> {
        TubedSurface::new(self.base_genus, self.tubes - 1)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}
