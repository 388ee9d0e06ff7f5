use minsurf::simplicial::{
    octahedral_sphere, reduced_homology, FlagComplex, Vertex, DEFAULT_MAX_SIMPLICES,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const P: i64 = 1_000_003;

fn random_graph(seed: u64, n: usize, density: f64) -> (Vec<String>, Vec<(String, String)>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let ids: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(density) {
                edges.push((ids[i].clone(), ids[j].clone()));
            }
        }
    }
    (ids, edges)
}

fn complex(ids: &[String], edges: &[(String, String)]) -> FlagComplex {
    FlagComplex::new(
        ids.iter().map(Vertex::plain).collect(),
        edges.iter().cloned(),
    )
    .unwrap()
}

/// Cliques found by testing every vertex subset, grouped by dimension.
fn brute_cliques(n: usize, edges: &[(String, String)], ids: &[String]) -> Vec<Vec<Vec<usize>>> {
    let pos = |s: &String| ids.iter().position(|x| x == s).unwrap();
    let mut adj = vec![vec![false; n]; n];
    for (a, b) in edges {
        adj[pos(a)][pos(b)] = true;
        adj[pos(b)][pos(a)] = true;
    }
    let mut out: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
    for mask in 1u32..(1 << n) {
        let s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        if s.iter().all(|&a| s.iter().all(|&b| a == b || adj[a][b])) {
            out[s.len() - 1].push(s);
        }
    }
    out
}

fn rank_mod_p(mut m: Vec<Vec<i64>>) -> usize {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let inv = |a: i64| {
        let (mut r, mut b, mut e) = (1i64, a.rem_euclid(P), P - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % P;
            }
            b = b * b % P;
            e >>= 1;
        }
        r
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows).find(|&r| m[r][c].rem_euclid(P) != 0) else {
            continue;
        };
        m.swap(rank, p);
        let iv = inv(m[rank][c]);
        for r in 0..rows {
            if r != rank && m[r][c].rem_euclid(P) != 0 {
                let f = m[r][c] * iv % P;
                let pivot_row = m[rank].clone();
                for (x, p) in m[r].iter_mut().zip(&pivot_row) {
                    *x = (*x - f * p).rem_euclid(P);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Reduced Betti numbers over a large prime field from the subset cliques.
fn betti_mod_p(layers: &[Vec<Vec<usize>>], d_max: usize) -> Vec<usize> {
    let dim = |k: usize| layers.get(k).map_or(0, Vec::len);
    let rank_of = |k: usize| -> usize {
        if k == 0 {
            return usize::from(dim(0) > 0);
        }
        let lower = match layers.get(k - 1) {
            Some(l) => l,
            None => return 0,
        };
        let upper = match layers.get(k) {
            Some(u) if !u.is_empty() => u,
            _ => return 0,
        };
        let mut m = vec![vec![0i64; upper.len()]; lower.len()];
        for (j, s) in upper.iter().enumerate() {
            for i in 0..s.len() {
                let mut f = s.clone();
                f.remove(i);
                let row = lower.iter().position(|x| *x == f).unwrap();
                m[row][j] = if i % 2 == 0 { 1 } else { -1 };
            }
        }
        rank_mod_p(m)
    };
    (0..=d_max)
        .map(|k| dim(k) - rank_of(k) - rank_of(k + 1))
        .collect()
}

#[test]
fn clique_counts_match_subset_search() {
    for seed in 0..15 {
        let n = 6 + (seed as usize % 5);
        let (ids, edges) = random_graph(seed, n, 0.5);
        let c = complex(&ids, &edges);
        let brute = brute_cliques(n, &edges, &ids);
        let layers = c
            .cliques_by_dimension(n - 1, DEFAULT_MAX_SIMPLICES)
            .unwrap();
        for k in 0..n {
            assert_eq!(layers[k].len(), brute[k].len(), "seed {seed} dim {k}");
        }
    }
}

#[test]
fn octahedral_clique_counts() {
    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }
    for n in 1..=5usize {
        let layers = octahedral_sphere(n)
            .cliques_by_dimension(n, usize::MAX)
            .unwrap();
        for (k, layer) in layers.iter().enumerate() {
            let want = if k < n {
                (1u64 << (k + 1)) * binom(n as u64, k as u64 + 1)
            } else {
                0
            };
            assert_eq!(layer.len() as u64, want, "n {n} k {k}");
        }
    }
}

#[test]
fn ranks_agree_with_prime_field_betti_numbers() {
    for seed in 100..130 {
        let n = 5 + (seed as usize % 6);
        let (ids, edges) = random_graph(seed, n, 0.45);
        let c = complex(&ids, &edges);
        let d = 3;
        let profile = reduced_homology(&c, d, DEFAULT_MAX_SIMPLICES).unwrap();
        let brute = brute_cliques(n, &edges, &ids);
        assert_eq!(profile.ranks(), betti_mod_p(&brute, d), "seed {seed}");
    }
}

#[test]
fn reduced_euler_characteristic_matches_ranks() {
    for seed in 200..220 {
        let (ids, edges) = random_graph(seed, 9, 0.5);
        let c = complex(&ids, &edges);
        let p = reduced_homology(&c, 8, DEFAULT_MAX_SIMPLICES).unwrap();
        let alternating: i64 = p
            .ranks()
            .iter()
            .enumerate()
            .map(|(k, &r)| if k % 2 == 0 { r as i64 } else { -(r as i64) })
            .sum();
        assert_eq!(alternating, c.euler_characteristic(8) - 1, "seed {seed}");
    }
}

#[test]
fn suspension_shifts_homology_up_one() {
    for seed in 300..325 {
        let n = 4 + (seed as usize % 9);
        let (ids, edges) = random_graph(seed, n, 0.4);
        let x = complex(&ids, &edges);
        let sx = x
            .suspend(Vertex::plain("north"), Vertex::plain("south"))
            .unwrap();
        let d = 3;
        let hx = reduced_homology(&x, d, DEFAULT_MAX_SIMPLICES).unwrap();
        let hs = reduced_homology(&sx, d + 1, DEFAULT_MAX_SIMPLICES).unwrap();
        assert!(hs.group(0).is_zero(), "seed {seed}");
        for k in 1..=d + 1 {
            assert_eq!(hs.group(k), hx.group(k - 1), "seed {seed} dim {k}");
        }
    }
}

#[test]
fn clique_cap_names_the_dimension() {
    let err = octahedral_sphere(6)
        .cliques_by_dimension(3, 100)
        .unwrap_err();
    assert!(err.to_string().contains("dimension 2"), "{err}");
}
