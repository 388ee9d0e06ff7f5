use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of cliques enumerated in a single dimension.
pub const DEFAULT_MAX_SIMPLICES: usize = 1_000_000;

/// A simplex, stored as sorted internal vertex indices.
pub type Simplex = Vec<usize>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub label: String,
}

impl Vertex {
    pub fn new(id: impl Into<String>, label: impl Into<String>) -> Self {
        Self {
            id: id.into(),
            label: label.into(),
        }
    }

    /// A vertex whose label is its id.
    pub fn plain(id: impl Into<String>) -> Self {
        let id = id.into();
        Self {
            label: id.clone(),
            id,
        }
    }
}

/// A flag complex: a simple graph whose cliques are the simplices.
///
/// Vertices are kept in canonical order (label, then id). Internal indices
/// follow that order, so a sorted index list is the canonical orientation of
/// a simplex and boundary signs are reproducible.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlagComplex {
    vertices: Vec<Vertex>,
    index: HashMap<String, usize>,
    adjacency: Vec<BTreeSet<usize>>,
}

impl FlagComplex {
    pub fn empty() -> Self {
        Self {
            vertices: Vec::new(),
            index: HashMap::new(),
            adjacency: Vec::new(),
        }
    }

    /// Builds a complex from vertices and edges given by vertex id.
    pub fn new<I, S>(vertices: Vec<Vertex>, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (S, S)>,
        S: AsRef<str>,
    {
        let mut order: Vec<usize> = (0..vertices.len()).collect();
        order.sort_by(|&a, &b| {
            (&vertices[a].label, &vertices[a].id).cmp(&(&vertices[b].label, &vertices[b].id))
        });
        let mut sorted = Vec::with_capacity(vertices.len());
        let mut index = HashMap::with_capacity(vertices.len());
        for (pos, &orig) in order.iter().enumerate() {
            let v = vertices[orig].clone();
            if index.insert(v.id.clone(), pos).is_some() {
                return Err(Error::DuplicateVertex(v.id));
            }
            sorted.push(v);
        }
        let mut adjacency = vec![BTreeSet::new(); sorted.len()];
        for (a, b) in edges {
            let (a, b) = (a.as_ref(), b.as_ref());
            let ia = *index
                .get(a)
                .ok_or_else(|| Error::UnknownVertex(a.to_string()))?;
            let ib = *index
                .get(b)
                .ok_or_else(|| Error::UnknownVertex(b.to_string()))?;
            if ia == ib {
                return Err(Error::SelfLoop(a.to_string()));
            }
            adjacency[ia].insert(ib);
            adjacency[ib].insert(ia);
        }
        Ok(Self {
            vertices: sorted,
            index,
            adjacency,
        })
    }

    /// Builds a complex from vertices and edges given by position in `vertices`.
    pub fn from_indexed(vertices: Vec<Vertex>, edges: &[(usize, usize)]) -> Result<Self> {
        let ids: Vec<String> = vertices.iter().map(|v| v.id.clone()).collect();
        for &(a, b) in edges {
            if a >= ids.len() || b >= ids.len() {
                return Err(Error::MalformedComplex(format!(
                    "edge ({a}, {b}) out of range for {} vertices",
                    ids.len()
                )));
            }
        }
        Self::new(
            vertices,
            edges
                .iter()
                .map(|&(a, b)| (ids[a].as_str(), ids[b].as_str())),
        )
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn vertex(&self, i: usize) -> &Vertex {
        &self.vertices[i]
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    pub fn contains(&self, id: &str) -> bool {
        self.index.contains_key(id)
    }

    pub fn neighbors(&self, i: usize) -> &BTreeSet<usize> {
        &self.adjacency[i]
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.adjacency[a].contains(&b)
    }

    pub fn adjacent_ids(&self, a: &str, b: &str) -> bool {
        match (self.index_of(a), self.index_of(b)) {
            (Some(a), Some(b)) => self.adjacent(a, b),
            _ => false,
        }
    }

    /// Edges as internal index pairs `(a, b)` with `a < b`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for (a, nbrs) in self.adjacency.iter().enumerate() {
            out.extend(nbrs.range(a + 1..).map(|&b| (a, b)));
        }
        out
    }

    /// Every clique with at most `d + 1` vertices, ordered by dimension and
    /// then lexicographically.
    pub fn flag_cliques(&self, d: usize) -> Vec<Simplex> {
        let mut out = Vec::new();
        for layer in self.enumerate(d, usize::MAX).expect("uncapped") {
            out.extend(layer);
        }
        out
    }

    /// Cliques grouped by dimension `0..=d`, failing if any dimension holds
    /// more than `cap` simplices.
    pub fn cliques_by_dimension(&self, d: usize, cap: usize) -> Result<Vec<Vec<Simplex>>> {
        self.enumerate(d, cap)
    }

    /// Layer by layer, so a cap violation names the lowest offending dimension.
    fn enumerate(&self, d: usize, cap: usize) -> Result<Vec<Vec<Simplex>>> {
        let mut layers: Vec<Vec<Simplex>> = Vec::with_capacity(d + 1);
        let mut current: Vec<Simplex> = (0..self.vertices.len()).map(|v| vec![v]).collect();
        for dim in 0..=d {
            if current.len() > cap {
                return Err(Error::ResourceLimit {
                    what: "simplices",
                    dimension: dim,
                    cap,
                });
            }
            let mut next = Vec::new();
            if dim < d {
                for s in &current {
                    let last = *s.last().expect("nonempty");
                    for &v in self.adjacency[last].range(last + 1..) {
                        if s.iter().all(|&u| self.adjacency[u].contains(&v)) {
                            let mut t = s.clone();
                            t.push(v);
                            next.push(t);
                        }
                    }
                    if next.len() > cap {
                        return Err(Error::ResourceLimit {
                            what: "simplices",
                            dimension: dim + 1,
                            cap,
                        });
                    }
                }
            }
            layers.push(std::mem::replace(&mut current, next));
        }
        Ok(layers)
    }

    /// The full subcomplex spanned by the given vertex ids.
    pub fn induced<S: AsRef<str>>(&self, ids: &[S]) -> Result<FlagComplex> {
        let mut keep = Vec::with_capacity(ids.len());
        for id in ids {
            let id = id.as_ref();
            keep.push(
                self.index_of(id)
                    .ok_or_else(|| Error::UnknownVertex(id.to_string()))?,
            );
        }
        let vertices: Vec<Vertex> = keep.iter().map(|&i| self.vertices[i].clone()).collect();
        let mut edges = Vec::new();
        for (p, &a) in keep.iter().enumerate() {
            for (q, &b) in keep.iter().enumerate().skip(p + 1) {
                if self.adjacent(a, b) {
                    edges.push((p, q));
                }
            }
        }
        FlagComplex::from_indexed(vertices, &edges)
    }

    /// Suspension: two new cone points, each joined to every old vertex and
    /// not to each other.
    pub fn suspend(&self, a: Vertex, b: Vertex) -> Result<FlagComplex> {
        for v in [&a, &b] {
            if self.contains(&v.id) {
                return Err(Error::DuplicateVertex(v.id.clone()));
            }
        }
        if a.id == b.id {
            return Err(Error::DuplicateVertex(a.id));
        }
        let mut vertices = self.vertices.clone();
        let old = vertices.len();
        vertices.push(a);
        vertices.push(b);
        let mut edges = self.edges();
        for v in 0..old {
            edges.push((v, old));
            edges.push((v, old + 1));
        }
        FlagComplex::from_indexed(vertices, &edges)
    }

    /// Euler characteristic of the cliques up to dimension `d`.
    pub fn euler_characteristic(&self, d: usize) -> i64 {
        self.flag_cliques(d)
            .iter()
            .map(|s| if s.len() % 2 == 1 { 1 } else { -1 })
            .sum()
    }

    pub fn to_document(&self) -> ComplexDocument {
        let vertices = self.vertices.clone();
        let mut edges: Vec<[String; 2]> = self
            .edges()
            .into_iter()
            .map(|(a, b)| {
                let (x, y) = (&self.vertices[a].id, &self.vertices[b].id);
                if x <= y {
                    [x.clone(), y.clone()]
                } else {
                    [y.clone(), x.clone()]
                }
            })
            .collect();
        edges.sort();
        ComplexDocument { vertices, edges }
    }

    /// Parses and validates a complex document. Edges must be stored with
    /// the lexicographically smaller id first and appear once.
    pub fn from_document(doc: &ComplexDocument) -> Result<FlagComplex> {
        let mut seen = BTreeSet::new();
        for [a, b] in &doc.edges {
            if a == b {
                return Err(Error::SelfLoop(a.clone()));
            }
            if a > b {
                return Err(Error::MalformedComplex(format!(
                    "edge [{a}, {b}] not stored with the smaller id first"
                )));
            }
            if !seen.insert((a, b)) {
                return Err(Error::MalformedComplex(format!(
                    "duplicate edge [{a}, {b}]"
                )));
            }
        }
        FlagComplex::new(
            doc.vertices.clone(),
            doc.edges.iter().map(|[a, b]| (a.as_str(), b.as_str())),
        )
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_document()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<FlagComplex> {
        let doc: ComplexDocument = serde_json::from_str(text)?;
        Self::from_document(&doc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexDocument {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<[String; 2]>,
}

/// The boundary of the n-dimensional cross-polytope: `n` antipodal pairs,
/// adjacent exactly when they lie in different pairs. Pair `i` is
/// `(d{i}, e{i})`.
pub fn octahedral_sphere(n: usize) -> FlagComplex {
    assert!(n >= 1, "octahedral sphere needs at least one pair");
    let mut vertices = Vec::with_capacity(2 * n);
    for i in 0..n {
        vertices.push(Vertex::plain(format!("d{i}")));
        vertices.push(Vertex::plain(format!("e{i}")));
    }
    let mut edges = Vec::new();
    for a in 0..2 * n {
        for b in a + 1..2 * n {
            if a / 2 != b / 2 {
                edges.push((a, b));
            }
        }
    }
    FlagComplex::from_indexed(vertices, &edges).expect("well-formed")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle4() -> FlagComplex {
        FlagComplex::new(
            ["a", "b", "c", "d"].map(Vertex::plain).to_vec(),
            [("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")],
        )
        .unwrap()
    }

    fn counts(c: &FlagComplex, d: usize) -> Vec<usize> {
        c.cliques_by_dimension(d, usize::MAX)
            .unwrap()
            .iter()
            .map(Vec::len)
            .collect()
    }

    #[test]
    fn edgeless_graph_has_only_vertices() {
        let c = FlagComplex::new(
            ["x", "y", "z"].map(Vertex::plain).to_vec(),
            Vec::<(&str, &str)>::new(),
        )
        .unwrap();
        assert_eq!(counts(&c, 2), vec![3, 0, 0]);
    }

    #[test]
    fn complete_graph_counts_are_binomial() {
        let ids = ["p", "q", "r", "s"];
        let mut edges = Vec::new();
        for i in 0..4 {
            for j in i + 1..4 {
                edges.push((ids[i], ids[j]));
            }
        }
        let c = FlagComplex::new(ids.map(Vertex::plain).to_vec(), edges).unwrap();
        assert_eq!(counts(&c, 3), vec![4, 6, 4, 1]);
        assert_eq!(c.flag_cliques(3).len(), 15);
    }

    #[test]
    fn octahedron_counts() {
        assert_eq!(counts(&octahedral_sphere(3), 2), vec![6, 12, 8]);
        assert_eq!(counts(&octahedral_sphere(4), 3), vec![8, 24, 32, 16]);
        assert_eq!(octahedral_sphere(4).euler_characteristic(3), 0);
        assert_eq!(counts(&octahedral_sphere(1), 1), vec![2, 0]);
    }

    #[test]
    fn cliques_are_sorted_and_unique() {
        let c = octahedral_sphere(3);
        let all = c.flag_cliques(2);
        let mut sorted = all.clone();
        sorted.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        sorted.dedup();
        assert_eq!(all, sorted);
    }

    #[test]
    fn clique_cap_reports_dimension() {
        let err = octahedral_sphere(3)
            .cliques_by_dimension(2, 10)
            .unwrap_err();
        assert!(
            matches!(err, Error::ResourceLimit { dimension: 1, .. }),
            "{err}"
        );
    }

    #[test]
    fn suspend_empty_is_s0() {
        let s = FlagComplex::empty()
            .suspend(Vertex::plain("a"), Vertex::plain("b"))
            .unwrap();
        assert_eq!((s.vertex_count(), s.edge_count()), (2, 0));
    }

    #[test]
    fn suspend_s0_is_four_cycle() {
        let s0 = FlagComplex::new(
            vec![Vertex::plain("D0"), Vertex::plain("E0")],
            Vec::<(&str, &str)>::new(),
        )
        .unwrap();
        let s1 = s0
            .suspend(Vertex::plain("D1"), Vertex::plain("E1"))
            .unwrap();
        assert_eq!(s1.edge_count(), 4);
        for (a, b) in [("D0", "D1"), ("D1", "E0"), ("E0", "E1"), ("E1", "D0")] {
            assert!(s1.adjacent_ids(a, b), "{a}-{b}");
        }
        assert!(!s1.adjacent_ids("D0", "E0"));
        assert!(!s1.adjacent_ids("D1", "E1"));
    }

    #[test]
    fn suspend_rejects_duplicates() {
        let c = cycle4();
        assert!(matches!(
            c.suspend(Vertex::plain("a"), Vertex::plain("z")),
            Err(Error::DuplicateVertex(id)) if id == "a"
        ));
        assert!(c.suspend(Vertex::plain("y"), Vertex::plain("y")).is_err());
    }

    #[test]
    fn octahedral_sphere_is_iterated_suspension() {
        let mut s = FlagComplex::empty();
        for i in 0..4 {
            s = s
                .suspend(
                    Vertex::plain(format!("d{i}")),
                    Vertex::plain(format!("e{i}")),
                )
                .unwrap();
        }
        assert_eq!(s, octahedral_sphere(4));
    }

    #[test]
    fn document_round_trip_and_validation() {
        let c = cycle4();
        let back = FlagComplex::from_json(&c.to_json()).unwrap();
        assert_eq!(back, c);

        let reversed =
            r#"{"vertices":[{"id":"a","label":"a"},{"id":"b","label":"b"}],"edges":[["b","a"]]}"#;
        assert!(matches!(
            FlagComplex::from_json(reversed),
            Err(Error::MalformedComplex(_))
        ));
        let unknown = r#"{"vertices":[{"id":"a","label":"a"}],"edges":[["a","q"]]}"#;
        assert!(matches!(
            FlagComplex::from_json(unknown),
            Err(Error::UnknownVertex(_))
        ));
        let looped = r#"{"vertices":[{"id":"a","label":"a"}],"edges":[["a","a"]]}"#;
        assert!(matches!(
            FlagComplex::from_json(looped),
            Err(Error::SelfLoop(_))
        ));
    }

    #[test]
    fn induced_subcomplex_keeps_edges_among_kept_vertices() {
        let c = octahedral_sphere(3);
        let s = c.induced(&["d0", "e0", "d1", "e1"]).unwrap();
        assert_eq!(s, octahedral_sphere(2));
    }
}
