//! Chord model of a once-punctured closed surface of genus `g`.
//!
//! The surface is a `4g`-gon with side word `a₁ b₁ a₁⁻¹ b₁⁻¹ … a_g b_g a_g⁻¹ b_g⁻¹`
//! and a puncture at its centre. A ray runs from the puncture to the corner
//! that starts side `a₁`; tube feet sit on that ray and no arc segment ever
//! crosses it. Cutting along the ray turns the punctured polygon into a disk
//! whose boundary reads: the outer sides in order, then the puncture circle.
//! Every straight segment is a chord of that disk, and two chords cross
//! exactly when their endpoints interleave.
//!
//! An arc leaves the puncture, crosses a sequence of sides, and returns. Its
//! code is that sequence as signed generators: `+i` / `-i` for the side
//! labelled with generator `i` or its inverse, generators numbered
//! `a₁ = 1, b₁ = 2, a₂ = 3, …`.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default cap on the number of arc classes an enumeration may produce.
pub const DEFAULT_MAX_ARCS: usize = 200_000;

/// A tube foot placed on the cut ray, at `numerator/denominator` of the way
/// from the puncture to the corner.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FootPosition {
    pub numerator: u32,
    pub denominator: u32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PuncturedSurfaceModel {
    pub genus: u32,
    /// Side labels in boundary order.
    pub word: Vec<i32>,
    pub feet: Vec<FootPosition>,
}

impl PuncturedSurfaceModel {
    pub fn new(genus: u32, feet: u32) -> Result<Self> {
        if genus == 0 {
            return Err(Error::InvalidParameter("genus must be at least 1".into()));
        }
        if feet > 2 {
            return Err(Error::InvalidParameter(format!(
                "at most 2 feet, got {feet}"
            )));
        }
        let mut word = Vec::with_capacity(4 * genus as usize);
        for h in 0..genus as i32 {
            let (a, b) = (2 * h + 1, 2 * h + 2);
            word.extend([a, b, -a, -b]);
        }
        let feet = (1..=feet)
            .map(|i| FootPosition {
                numerator: i,
                denominator: 3,
            })
            .collect();
        Ok(Self { genus, word, feet })
    }

    pub fn side_count(&self) -> usize {
        self.word.len()
    }

    pub fn generator_count(&self) -> i32 {
        2 * self.genus as i32
    }

    /// Boundary position of the side labelled `label`.
    fn side_of(&self, label: i32) -> usize {
        self.word
            .iter()
            .position(|&w| w == label)
            .expect("valid label")
    }

    /// Word spelled by walking once around the puncture.
    pub fn puncture_word(&self) -> Vec<i32> {
        self.word.clone()
    }
}

/// Ordering of code letters: by generator, positive before negative.
fn letter_key(x: i32) -> (i32, bool) {
    (x.abs(), x < 0)
}

fn cmp_codes(a: &[i32], b: &[i32]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| {
        a.iter()
            .map(|&x| letter_key(x))
            .cmp(b.iter().map(|&x| letter_key(x)))
    })
}

/// An essential simple arc with both ends on the puncture, in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ArcClass {
    code: Vec<i32>,
}

impl PartialOrd for ArcClass {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for ArcClass {
    fn cmp(&self, other: &Self) -> Ordering {
        cmp_codes(&self.code, &other.code)
    }
}

impl fmt::Display for ArcClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.code.iter().map(i32::to_string).collect();
        write!(f, "[{}]", parts.join(" "))
    }
}

fn reverse_code(code: &[i32]) -> Vec<i32> {
    code.iter().rev().map(|&x| -x).collect()
}

fn is_reduced(code: &[i32]) -> bool {
    code.windows(2).all(|w| w[1] != -w[0])
}

/// True when `code` spells the puncture loop (or its inverse) up to rotation.
fn is_peripheral(code: &[i32], model: &PuncturedSurfaceModel) -> bool {
    let rel = model.puncture_word();
    if code.len() != rel.len() {
        return false;
    }
    let inv = reverse_code(&rel);
    (0..rel.len()).any(|s| {
        let rot: Vec<i32> = rel[s..].iter().chain(&rel[..s]).copied().collect();
        let rot_inv: Vec<i32> = inv[s..].iter().chain(&inv[..s]).copied().collect();
        code == rot.as_slice() || code == rot_inv.as_slice()
    })
}

impl ArcClass {
    /// Validates and canonicalises a code for the given model.
    pub fn new(code: Vec<i32>, model: &PuncturedSurfaceModel) -> Result<Self> {
        if code.is_empty() {
            return Err(Error::InvalidParameter(
                "an essential arc crosses at least one side".into(),
            ));
        }
        let gens = model.generator_count();
        if let Some(&bad) = code.iter().find(|&&x| x == 0 || x.abs() > gens) {
            return Err(Error::InvalidParameter(format!(
                "letter {bad} out of range for genus {}",
                model.genus
            )));
        }
        if !is_reduced(&code) {
            return Err(Error::InvalidParameter(format!("code {code:?} backtracks")));
        }
        if is_peripheral(&code, model) {
            return Err(Error::InvalidParameter(format!(
                "code {code:?} is parallel to the puncture"
            )));
        }
        let arc = Self::canonical(code);
        if ArcLayout::new(&arc, model).embeddings_for(model).is_empty() {
            return Err(Error::InvalidParameter(format!(
                "code {arc} has no simple representative"
            )));
        }
        Ok(arc)
    }

    fn canonical(code: Vec<i32>) -> Self {
        let rev = reverse_code(&code);
        let code = if cmp_codes(&rev, &code) == Ordering::Less {
            rev
        } else {
            code
        };
        Self { code }
    }

    pub fn code(&self) -> &[i32] {
        &self.code
    }

    pub fn len(&self) -> usize {
        self.code.len()
    }

    pub fn is_empty(&self) -> bool {
        self.code.is_empty()
    }

    /// Re-canonicalises; the identity on every valid arc.
    pub fn recanonicalized(&self) -> Self {
        Self::canonical(self.code.clone())
    }
}

/// Crossing points of one arc, grouped by generator.
#[derive(Clone, Debug)]
struct ArcLayout {
    code: Vec<i32>,
    /// For each generator `1..=2g` (index `g - 1`), the crossing indices on it.
    by_generator: Vec<Vec<usize>>,
}

/// One placement of an arc's crossing points: for each generator the order
/// of its crossings along the positive side, plus whether the two puncture
/// endpoints appear reversed.
#[derive(Clone, Debug)]
struct Embedding {
    orders: Vec<Vec<usize>>,
    swapped_ends: bool,
}

impl ArcLayout {
    fn new(arc: &ArcClass, model: &PuncturedSurfaceModel) -> Self {
        let mut by_generator = vec![Vec::new(); model.generator_count() as usize];
        for (i, &x) in arc.code.iter().enumerate() {
            by_generator[(x.abs() - 1) as usize].push(i);
        }
        Self {
            code: arc.code.clone(),
            by_generator,
        }
    }

    fn embeddings_for(&self, model: &PuncturedSurfaceModel) -> Vec<Embedding> {
        let mut out = Vec::new();
        let perms: Vec<Vec<Vec<usize>>> =
            self.by_generator.iter().map(|g| permutations(g)).collect();
        let mut choice = vec![0usize; perms.len()];
        loop {
            let orders: Vec<Vec<usize>> = choice
                .iter()
                .zip(&perms)
                .map(|(&c, p)| p[c].clone())
                .collect();
            for swapped_ends in [false, true] {
                let e = Embedding {
                    orders: orders.clone(),
                    swapped_ends,
                };
                let placed = place(model, &[(self, &e)]);
                if count_crossings(&placed[0], &placed[0], true) == 0 {
                    out.push(e);
                }
            }
            // odometer over per-generator permutations
            let mut k = 0;
            loop {
                if k == choice.len() {
                    return out;
                }
                choice[k] += 1;
                if choice[k] < perms[k].len() {
                    break;
                }
                choice[k] = 0;
                k += 1;
            }
        }
    }
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head);
            out.push(tail);
        }
    }
    out
}

/// A chord of the cut disk, endpoints as boundary coordinates.
type Chord = (u64, u64);

/// Places arcs with their own orders concatenated per generator.
fn place(model: &PuncturedSurfaceModel, arcs: &[(&ArcLayout, &Embedding)]) -> Vec<Vec<Chord>> {
    let gens = model.generator_count() as usize;
    let mut merged: Vec<Vec<(usize, usize)>> = vec![Vec::new(); gens];
    for (a, (_, e)) in arcs.iter().enumerate() {
        for (g, order) in e.orders.iter().enumerate() {
            merged[g].extend(order.iter().map(|&c| (a, c)));
        }
    }
    let mut ends = Vec::new();
    for (a, (_, e)) in arcs.iter().enumerate() {
        if e.swapped_ends {
            ends.extend([(a, 1), (a, 0)]);
        } else {
            ends.extend([(a, 0), (a, 1)]);
        }
    }
    place_merged(
        model,
        arcs.iter().map(|(l, _)| *l).collect::<Vec<_>>().as_slice(),
        &merged,
        &ends,
    )
}

/// Chords for arcs given explicit joint orders. `merged[g]` lists
/// `(arc, crossing)` along the positive side of generator `g + 1`; `ends`
/// lists `(arc, end)` along the puncture.
fn place_merged(
    model: &PuncturedSurfaceModel,
    arcs: &[&ArcLayout],
    merged: &[Vec<(usize, usize)>],
    ends: &[(usize, usize)],
) -> Vec<Vec<Chord>> {
    const SCALE: u64 = 1 << 16;
    let sides = model.side_count() as u64;
    // rank of each crossing along its generator
    let mut rank: HashMap<(usize, usize), (u64, u64)> = HashMap::new();
    for seq in merged {
        let n = seq.len() as u64;
        for (r, &key) in seq.iter().enumerate() {
            rank.insert(key, (r as u64, n));
        }
    }
    let coord = |label: i32, r: u64, n: u64| -> u64 {
        let side = model.side_of(label) as u64;
        let pos = if label > 0 { r + 1 } else { n - r };
        side * SCALE + pos
    };
    let end_pos: HashMap<(usize, usize), u64> = ends
        .iter()
        .enumerate()
        .map(|(i, &k)| (k, sides * SCALE + 1 + i as u64))
        .collect();

    arcs.iter()
        .enumerate()
        .map(|(a, layout)| {
            let m = layout.code.len();
            let mut chords = Vec::with_capacity(m + 1);
            let mut from = end_pos[&(a, 0)];
            for (i, &x) in layout.code.iter().enumerate() {
                let (r, n) = rank[&(a, i)];
                chords.push((from, coord(x, r, n)));
                from = coord(-x, r, n);
            }
            chords.push((from, end_pos[&(a, 1)]));
            debug_assert_eq!(chords.len(), m + 1);
            chords
        })
        .collect()
}

fn crosses((a, b): Chord, (c, d): Chord) -> bool {
    let (a, b) = (a.min(b), a.max(b));
    let (c, d) = (c.min(d), c.max(d));
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

fn count_crossings(x: &[Chord], y: &[Chord], same: bool) -> u32 {
    let mut n = 0;
    for (i, &p) in x.iter().enumerate() {
        let start = if same { i + 1 } else { 0 };
        for &q in &y[start..] {
            if crosses(p, q) {
                n += 1;
            }
        }
    }
    n
}

/// All interleavings of two sequences.
fn merges<T: Copy>(a: &[T], b: &[T]) -> Vec<Vec<T>> {
    if a.is_empty() {
        return vec![b.to_vec()];
    }
    if b.is_empty() {
        return vec![a.to_vec()];
    }
    let mut out = Vec::new();
    for mut rest in merges(&a[1..], b) {
        rest.insert(0, a[0]);
        out.push(rest);
    }
    for mut rest in merges(a, &b[1..]) {
        rest.insert(0, b[0]);
        out.push(rest);
    }
    out
}

/// Precomputed simple placements of an arc, for repeated pair queries.
#[derive(Clone, Debug)]
pub struct PreparedArc {
    arc: ArcClass,
    layout: ArcLayout,
    embeddings: Vec<Embedding>,
}

impl PreparedArc {
    pub fn new(arc: &ArcClass, model: &PuncturedSurfaceModel) -> Self {
        let layout = ArcLayout::new(arc, model);
        let embeddings = layout.embeddings_for(model);
        Self {
            arc: arc.clone(),
            layout,
            embeddings,
        }
    }

    pub fn arc(&self) -> &ArcClass {
        &self.arc
    }
}

/// Minimal number of crossings between simple straight representatives of
/// two arcs, searched over all joint orders of their crossing points and
/// puncture endpoints. With `stop_at_zero` the search ends at the first
/// disjoint placement.
pub fn prepared_intersection(
    a: &PreparedArc,
    b: &PreparedArc,
    model: &PuncturedSurfaceModel,
    stop_at_zero: bool,
) -> u32 {
    let mut best = u32::MAX;
    let layouts = [&a.layout, &b.layout];
    for ea in &a.embeddings {
        for eb in &b.embeddings {
            let per_gen: Vec<Vec<Vec<(usize, usize)>>> = ea
                .orders
                .iter()
                .zip(&eb.orders)
                .map(|(oa, ob)| {
                    let xa: Vec<(usize, usize)> = oa.iter().map(|&c| (0, c)).collect();
                    let xb: Vec<(usize, usize)> = ob.iter().map(|&c| (1, c)).collect();
                    merges(&xa, &xb)
                })
                .collect();
            let end_a = if ea.swapped_ends {
                [(0, 1), (0, 0)]
            } else {
                [(0, 0), (0, 1)]
            };
            let end_b = if eb.swapped_ends {
                [(1, 1), (1, 0)]
            } else {
                [(1, 0), (1, 1)]
            };
            let end_orders = merges(&end_a, &end_b);

            let mut choice = vec![0usize; per_gen.len()];
            loop {
                let merged: Vec<Vec<(usize, usize)>> = choice
                    .iter()
                    .zip(&per_gen)
                    .map(|(&c, m)| m[c].clone())
                    .collect();
                for ends in &end_orders {
                    let chords = place_merged(model, &layouts, &merged, ends);
                    let n = count_crossings(&chords[0], &chords[1], false);
                    if n < best {
                        best = n;
                        if best == 0 && stop_at_zero {
                            return 0;
                        }
                    }
                }
                let mut k = 0;
                loop {
                    if k == choice.len() {
                        break;
                    }
                    choice[k] += 1;
                    if choice[k] < per_gen[k].len() {
                        break;
                    }
                    choice[k] = 0;
                    k += 1;
                }
                if k == choice.len() {
                    break;
                }
            }
        }
    }
    best
}

/// Minimal crossing number of two arcs in the chord model. Symmetric, and
/// zero on the diagonal (parallel copies).
pub fn arc_intersection(a: &ArcClass, b: &ArcClass, model: &PuncturedSurfaceModel) -> u32 {
    let pa = PreparedArc::new(a, model);
    let pb = PreparedArc::new(b, model);
    prepared_intersection(&pa, &pb, model, false)
}

/// Every essential simple arc class with at most `max_len` crossings, in
/// canonical order.
pub fn enumerate_arcs(
    model: &PuncturedSurfaceModel,
    max_len: usize,
    cap: usize,
) -> Result<Vec<ArcClass>> {
    let gens = model.generator_count();
    let letters: Vec<i32> = (1..=gens).flat_map(|g| [g, -g]).collect();
    let mut out = Vec::new();
    let mut frontier: Vec<Vec<i32>> = vec![Vec::new()];
    for len in 1..=max_len {
        let mut next = Vec::new();
        for w in &frontier {
            for &x in &letters {
                if w.last().is_some_and(|&l| l == -x) {
                    continue;
                }
                let mut v = w.clone();
                v.push(x);
                next.push(v);
            }
        }
        for code in &next {
            if ArcClass::canonical(code.clone()).code != *code {
                continue;
            }
            if let Ok(arc) = ArcClass::new(code.clone(), model) {
                if out.len() >= cap {
                    return Err(Error::ResourceLimit {
                        what: "arc classes",
                        dimension: len,
                        cap,
                    });
                }
                out.push(arc);
            }
        }
        frontier = next;
    }
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn torus() -> PuncturedSurfaceModel {
        PuncturedSurfaceModel::new(1, 0).unwrap()
    }

    fn arc(code: &[i32], m: &PuncturedSurfaceModel) -> ArcClass {
        ArcClass::new(code.to_vec(), m).unwrap()
    }

    #[test]
    fn models_have_standard_words() {
        let m = PuncturedSurfaceModel::new(1, 1).unwrap();
        assert_eq!(m.word, vec![1, 2, -1, -2]);
        assert_eq!(m.feet.len(), 1);
        let m = PuncturedSurfaceModel::new(2, 2).unwrap();
        assert_eq!(m.word.len(), 8);
        assert_eq!(m.feet.len(), 2);
        assert_ne!(m.feet[0], m.feet[1]);
        assert!(torus().feet.is_empty());
        assert!(PuncturedSurfaceModel::new(0, 0).is_err());
        assert!(PuncturedSurfaceModel::new(1, 3).is_err());
    }

    #[test]
    fn length_one_arcs_on_the_torus() {
        let arcs = enumerate_arcs(&torus(), 1, DEFAULT_MAX_ARCS).unwrap();
        let codes: Vec<&[i32]> = arcs.iter().map(ArcClass::code).collect();
        assert_eq!(codes, vec![&[1][..], &[2][..]]);
    }

    #[test]
    fn zero_bound_gives_nothing() {
        assert!(enumerate_arcs(&torus(), 0, DEFAULT_MAX_ARCS)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn enumeration_is_monotone() {
        let m = torus();
        let one = enumerate_arcs(&m, 1, DEFAULT_MAX_ARCS).unwrap();
        let two = enumerate_arcs(&m, 2, DEFAULT_MAX_ARCS).unwrap();
        assert!(one.iter().all(|a| two.contains(a)));
        assert!(two.len() >= one.len());
    }

    #[test]
    fn reversal_is_the_same_class() {
        let m = torus();
        assert_eq!(arc(&[-1], &m), arc(&[1], &m));
        assert_eq!(arc(&[1, 2], &m), arc(&[-2, -1], &m));
    }

    #[test]
    fn invalid_codes_are_rejected() {
        let m = torus();
        assert!(ArcClass::new(vec![], &m).is_err());
        assert!(ArcClass::new(vec![1, -1], &m).is_err());
        assert!(ArcClass::new(vec![3], &m).is_err());
        assert!(ArcClass::new(vec![1, 2, -1, -2], &m).is_err());
    }

    #[test]
    fn arc_is_disjoint_from_itself() {
        let m = torus();
        for a in enumerate_arcs(&m, 3, DEFAULT_MAX_ARCS).unwrap() {
            assert_eq!(arc_intersection(&a, &a, &m), 0, "{a}");
        }
    }

    #[test]
    fn dual_handle_arcs_are_disjoint() {
        // Puncture at a lattice point of the square torus: the horizontal and
        // vertical unit segments meet only at the puncture.
        let m = torus();
        assert_eq!(arc_intersection(&arc(&[1], &m), &arc(&[2], &m), &m), 0);
    }

    #[test]
    fn crossing_arcs_are_detected() {
        // Slopes 1 and -1 have determinant 2 on the punctured torus.
        let m = torus();
        let a = arc(&[1, 2], &m);
        let b = arc(&[1, -2], &m);
        assert!(arc_intersection(&a, &b, &m) > 0);
    }

    #[test]
    fn recanonicalization_is_identity() {
        let m = PuncturedSurfaceModel::new(2, 1).unwrap();
        for a in enumerate_arcs(&m, 2, DEFAULT_MAX_ARCS).unwrap() {
            assert_eq!(a.recanonicalized(), a);
        }
    }

    #[test]
    fn cap_is_enforced() {
        let err = enumerate_arcs(&torus(), 3, 3).unwrap_err();
        assert!(matches!(err, Error::ResourceLimit { .. }));
    }
}
