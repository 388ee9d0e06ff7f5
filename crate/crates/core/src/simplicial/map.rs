use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::complex::FlagComplex;
use super::homology::{chain_boundary, free_cycle_generators, reduced_homology, sort_sign, Chain};
use crate::error::{Error, Result};

/// A vertex assignment between two flag complexes.
#[derive(Clone, Debug)]
pub struct VertexMap<'a> {
    domain: &'a FlagComplex,
    codomain: &'a FlagComplex,
    /// Indexed by domain vertex; values are codomain indices.
    image: Vec<usize>,
}

impl<'a> VertexMap<'a> {
    pub fn new<S: AsRef<str>>(
        domain: &'a FlagComplex,
        codomain: &'a FlagComplex,
        pairs: impl IntoIterator<Item = (S, S)>,
    ) -> Result<Self> {
        let mut image = vec![usize::MAX; domain.vertex_count()];
        for (from, to) in pairs {
            let (from, to) = (from.as_ref(), to.as_ref());
            let i = domain
                .index_of(from)
                .ok_or_else(|| Error::UnknownVertex(from.to_string()))?;
            let j = codomain
                .index_of(to)
                .ok_or_else(|| Error::UnknownVertex(to.to_string()))?;
            image[i] = j;
        }
        if let Some(missing) = image.iter().position(|&j| j == usize::MAX) {
            return Err(Error::NotTotal(domain.vertex(missing).id.clone()));
        }
        Ok(Self {
            domain,
            codomain,
            image,
        })
    }

    pub fn identity(c: &'a FlagComplex) -> Self {
        Self {
            domain: c,
            codomain: c,
            image: (0..c.vertex_count()).collect(),
        }
    }

    pub fn from_document(
        domain: &'a FlagComplex,
        codomain: &'a FlagComplex,
        doc: &MapDocument,
    ) -> Result<Self> {
        Self::new(
            domain,
            codomain,
            doc.map.iter().map(|[a, b]| (a.as_str(), b.as_str())),
        )
    }

    pub fn to_document(&self) -> MapDocument {
        let mut map: Vec<[String; 2]> = self
            .image
            .iter()
            .enumerate()
            .map(|(i, &j)| {
                [
                    self.domain.vertex(i).id.clone(),
                    self.codomain.vertex(j).id.clone(),
                ]
            })
            .collect();
        map.sort();
        MapDocument { map }
    }

    pub fn domain(&self) -> &FlagComplex {
        self.domain
    }

    pub fn codomain(&self) -> &FlagComplex {
        self.codomain
    }

    pub fn image_of(&self, id: &str) -> Option<&str> {
        self.domain
            .index_of(id)
            .map(|i| self.codomain.vertex(self.image[i]).id.as_str())
    }

    /// Domain edges whose endpoints land on distinct, non-adjacent vertices.
    pub fn check_simplicial(&self) -> Vec<(String, String)> {
        self.domain
            .edges()
            .into_iter()
            .filter(|&(u, v)| {
                let (a, b) = (self.image[u], self.image[v]);
                a != b && !self.codomain.adjacent(a, b)
            })
            .map(|(u, v)| {
                (
                    self.domain.vertex(u).id.clone(),
                    self.domain.vertex(v).id.clone(),
                )
            })
            .collect()
    }

    /// Pushes a chain of the domain forward along the map.
    pub fn push_chain(&self, chain: &Chain) -> Chain {
        let mut out = Chain::new();
        for (s, c) in chain {
            let mut img: Vec<usize> = s.iter().map(|&v| self.image[v]).collect();
            if let Some(sign) = sort_sign(&mut img) {
                let entry = out.entry(img).or_insert_with(BigInt::zero);
                if sign > 0 {
                    *entry += c;
                } else {
                    *entry -= c;
                }
            }
        }
        out.retain(|_, v| !v.is_zero());
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapDocument {
    pub map: Vec<[String; 2]>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RetractionReport {
    pub holds: bool,
    /// Domain edges sent to non-edges.
    pub violating_edges: Vec<(String, String)>,
    /// Subcomplex vertices not fixed, with their images.
    pub moved_vertices: Vec<(String, String)>,
}

/// Checks that `f` is simplicial, lands in `sub`, and fixes `sub` pointwise.
/// `sub` is identified with its image in domain and codomain by vertex id.
pub fn check_retraction(f: &VertexMap<'_>, sub: &FlagComplex) -> Result<RetractionReport> {
    for v in sub.vertices() {
        if !f.domain().contains(&v.id) {
            return Err(Error::UnknownVertex(v.id.clone()));
        }
    }
    for (i, &j) in f.image.iter().enumerate() {
        let target = &f.codomain().vertex(j).id;
        if !sub.contains(target) {
            return Err(Error::Containment {
                vertex: f.domain().vertex(i).id.clone(),
                image: target.clone(),
            });
        }
    }
    let violating_edges = f.check_simplicial();
    let moved_vertices: Vec<(String, String)> = sub
        .vertices()
        .iter()
        .filter_map(|v| {
            let img = f.image_of(&v.id).expect("checked above");
            (img != v.id).then(|| (v.id.clone(), img.to_string()))
        })
        .collect();
    Ok(RetractionReport {
        holds: violating_edges.is_empty() && moved_vertices.is_empty(),
        violating_edges,
        moved_vertices,
    })
}

/// A signed simplex written with vertex ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainTerm {
    pub simplex: Vec<String>,
    pub coefficient: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyCertificate {
    pub dimension: usize,
    pub generating_cycle: Vec<ChainTerm>,
    pub image_under_composite: Vec<ChainTerm>,
    pub cycle_in_ambient: bool,
    pub composite_is_identity: bool,
    pub conclusion: String,
}

impl HomologyCertificate {
    pub fn passes(&self) -> bool {
        self.cycle_in_ambient && self.composite_is_identity
    }
}

fn terms(c: &FlagComplex, chain: &Chain) -> Vec<ChainTerm> {
    chain
        .iter()
        .map(|(s, v)| ChainTerm {
            simplex: s.iter().map(|&i| c.vertex(i).id.clone()).collect(),
            coefficient: v.to_string(),
        })
        .collect()
}

/// Moves a chain between complexes that share vertex ids.
fn transport(chain: &Chain, from: &FlagComplex, to: &FlagComplex) -> Result<Chain> {
    let mut out = Chain::new();
    for (s, c) in chain {
        let mut img = Vec::with_capacity(s.len());
        for &v in s {
            let id = &from.vertex(v).id;
            img.push(
                to.index_of(id)
                    .ok_or_else(|| Error::UnknownVertex(id.clone()))?,
            );
        }
        let sign = sort_sign(&mut img).expect("distinct vertices stay distinct");
        let c = if sign > 0 { c.clone() } else { -c.clone() };
        *out.entry(img).or_insert_with(BigInt::zero) += c;
    }
    out.retain(|_, v| !v.is_zero());
    Ok(out)
}

/// Certifies that a retraction onto `sub` carries a generator of
/// `H̃_{n-1}(sub) ≅ Z` to itself, so that the class survives in the ambient
/// complex and its reduced homology in dimension `n - 1` is nonzero.
pub fn certify_homology_retraction(
    f: &VertexMap<'_>,
    sub: &FlagComplex,
    n: usize,
    cap: usize,
) -> Result<HomologyCertificate> {
    if n == 0 {
        return Err(Error::InvalidParameter(
            "dimension n must be at least 1".into(),
        ));
    }
    let report = check_retraction(f, sub)?;
    if !report.holds {
        return Err(Error::NotRetraction(format!(
            "{} violating edges, {} moved vertices",
            report.violating_edges.len(),
            report.moved_vertices.len()
        )));
    }
    let k = n - 1;
    let profile = reduced_homology(sub, k, cap)?;
    if !profile.group(k).is_infinite_cyclic() {
        return Err(Error::NotRankOne {
            dimension: k,
            found: profile.group(k).to_string(),
        });
    }
    let z = free_cycle_generators(sub, k, cap)?
        .into_iter()
        .next()
        .expect("rank one");

    let in_ambient = transport(&z, sub, f.domain())?;
    let cycle_in_ambient = k == 0 && in_ambient.values().sum::<BigInt>().is_zero()
        || k > 0 && chain_boundary(&in_ambient).is_empty();
    let pushed = f.push_chain(&in_ambient);
    let back = transport(&pushed, f.codomain(), sub)?;
    let composite_is_identity = back == z;

    let mut conclusion = format!(
        "The map is a simplicial retraction onto the subcomplex, whose reduced homology in \
         dimension {k} is Z. Retraction after inclusion fixes the generating cycle, so the \
         ambient complex has nonzero reduced homology in dimension {k}."
    );
    if !(cycle_in_ambient && composite_is_identity) {
        conclusion = "Chain-level check failed; no conclusion.".to_string();
    }
    Ok(HomologyCertificate {
        dimension: k,
        generating_cycle: terms(sub, &z),
        image_under_composite: terms(sub, &back),
        cycle_in_ambient,
        composite_is_identity,
        conclusion,
    })
}

/// Groups vertex ids by image, for reports.
pub fn fibers(f: &VertexMap<'_>) -> BTreeMap<String, Vec<String>> {
    let mut out: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for (i, &j) in f.image.iter().enumerate() {
        out.entry(f.codomain().vertex(j).id.clone())
            .or_default()
            .push(f.domain().vertex(i).id.clone());
    }
    out
}
