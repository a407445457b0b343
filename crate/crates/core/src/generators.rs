//! Hypergraph families.

use std::collections::BTreeMap;

use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::hypergraph::{Hypergraph, HypergraphError};

/// Default number of shuffles tried by [`two_regular_random`].
pub const DEFAULT_REJECTION_BUDGET: usize = 10_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GeneratorError {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("malformed input graph: {0}")]
    MalformedGraph(#[from] HypergraphError),
    #[error("no admissible partition found after {attempts} attempts")]
    BudgetExhausted { attempts: usize },
}

fn invalid(msg: impl Into<String>) -> GeneratorError {
    GeneratorError::InvalidParameter(msg.into())
}

/// Cayley hypergraph on `Z_n` whose edges are the `n` windows
/// `{i, i+1, ..., i+k-1} mod n`.
pub fn cayley(n: usize, k: usize) -> Result<Hypergraph, GeneratorError> {
    if k < 2 || k >= n {
        return Err(invalid(format!("cayley needs 2 <= k < n, got n={n}, k={k}")));
    }
    let edges = (0..n).map(|i| (0..k).map(|j| (i + j) % n).collect()).collect();
    Ok(Hypergraph::new(n, edges)?)
}

/// The cycle `C_m` as a 2-uniform hypergraph.
pub fn cycle(m: usize) -> Result<Hypergraph, GeneratorError> {
    if m < 3 {
        return Err(invalid(format!("a cycle needs at least 3 vertices, got {m}")));
    }
    let edges = (0..m).map(|i| vec![i, (i + 1) % m]).collect();
    Ok(Hypergraph::new(m, edges)?)
}

/// Generalized power `G^{k,k/2}` of a simple graph: each vertex becomes a
/// block of `k/2` vertices and each graph edge the union of two blocks.
pub fn power(graph_edges: &[(usize, usize)], k: usize) -> Result<Hypergraph, GeneratorError> {
    if k < 2 || k % 2 == 1 {
        return Err(invalid(format!("power needs an even k >= 2, got {k}")));
    }
    let n = graph_edges
        .iter()
        .map(|&(u, v)| u.max(v) + 1)
        .max()
        .unwrap_or(0);
    let base = Hypergraph::new(n, graph_edges.iter().map(|&(u, v)| vec![u, v]).collect())?;
    if base.uniformity() != Some(2) {
        return Err(invalid("graph edges must join two distinct vertices"));
    }
    let half = k / 2;
    let edges = base
        .edges()
        .iter()
        .map(|e| {
            e.iter()
                .flat_map(|&v| v * half..(v + 1) * half)
                .collect()
        })
        .collect();
    Ok(Hypergraph::new(n * half, edges)?)
}

/// `C_m^{k,k/2}`.
pub fn cycle_power(m: usize, k: usize) -> Result<Hypergraph, GeneratorError> {
    let c = cycle(m)?;
    let pairs: Vec<(usize, usize)> = c.edges().iter().map(|e| (e[0], e[1])).collect();
    power(&pairs, k)
}

/// `t∘G`: copy `i` of vertex `v` is `i*n + v`, and edge `j` is the union of
/// the `t` copies of edge `j`.
pub fn blowup(g: &Hypergraph, t: usize) -> Result<Hypergraph, GeneratorError> {
    if t == 0 {
        return Err(invalid("blowup needs t >= 1"));
    }
    let n = g.n();
    let edges = g
        .edges()
        .iter()
        .map(|e| (0..t).flat_map(|i| e.iter().map(move |&v| i * n + v)).collect())
        .collect();
    Ok(Hypergraph::new(t * n, edges)?)
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d))
}

/// Normalized representatives of the 1-dimensional subspaces of `F_q^3`:
/// the first nonzero coordinate is 1.
fn projective_points(q: usize) -> Vec<[usize; 3]> {
    let mut pts = Vec::with_capacity(q * q + q + 1);
    for a in 0..q {
        for b in 0..q {
            pts.push([1, a, b]);
        }
    }
    for a in 0..q {
        pts.push([0, 1, a]);
    }
    pts.push([0, 0, 1]);
    pts
}

/// Desarguesian projective plane `PG(2, q)` for an odd prime `q`. Points
/// and lines are both indexed by normalized vectors; point `p` lies on line
/// `l` when `p · l = 0 mod q`.
pub fn projective_plane(q: usize) -> Result<Hypergraph, GeneratorError> {
    if q.is_multiple_of(2) || !is_prime(q) {
        return Err(invalid(format!("projective_plane needs an odd prime, got {q}")));
    }
    let pts = projective_points(q);
    let edges: Vec<Vec<usize>> = pts
        .iter()
        .map(|l| {
            pts.iter()
                .enumerate()
                .filter(|(_, p)| (p[0] * l[0] + p[1] * l[1] + p[2] * l[2]) % q == 0)
                .map(|(i, _)| i)
                .collect()
        })
        .collect();
    let g = Hypergraph::new(pts.len(), edges)?;
    assert!(
        pairs_on_unique_line(&g),
        "PG(2,{q}) violates the two-point axiom"
    );
    Ok(g)
}

/// Whether every pair of vertices lies in exactly one common edge.
pub fn pairs_on_unique_line(g: &Hypergraph) -> bool {
    let n = g.n();
    let mut cover = vec![0u32; n * n];
    for e in g.edges() {
        for (a, b) in e.iter().tuple_combinations() {
            cover[a * n + b] += 1;
        }
    }
    (0..n).all(|a| (a + 1..n).all(|b| cover[a * n + b] == 1))
}

/// Random 2-regular `k`-uniform hypergraph on `n = km/2` vertices: fixed
/// blocks `V_t = {h t, ..., h t + h - 1}` (`h = k/2`) are joined with the
/// blocks `W_t` of a random partition of `[n]`, rejecting partitions with
/// `W_t ∩ V_t ≠ ∅` or a swapped pair `W_t = V_s, W_s = V_t`.
pub fn two_regular_random(k: usize, m: usize, seed: u64) -> Result<Hypergraph, GeneratorError> {
    two_regular_random_with_budget(k, m, seed, DEFAULT_REJECTION_BUDGET)
}

pub fn two_regular_random_with_budget(
    k: usize,
    m: usize,
    seed: u64,
    budget: usize,
) -> Result<Hypergraph, GeneratorError> {
    if k <= 2 || k % 2 == 1 {
        return Err(invalid(format!("tworeg needs an even k > 2, got {k}")));
    }
    if m < 3 {
        return Err(invalid(format!("tworeg needs m >= 3, got {m}")));
    }
    let h = k / 2;
    let n = h * m;
    let block = |t: usize| t * h..(t + 1) * h;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    for _ in 0..budget {
        perm.shuffle(&mut rng);
        let w: Vec<Vec<usize>> = perm
            .chunks(h)
            .map(|c| {
                let mut c = c.to_vec();
                c.sort_unstable();
                c
            })
            .collect();
        let owner = |v: usize| v / h;
        let meets_own = (0..m).any(|t| w[t].iter().any(|&v| owner(v) == t));
        if meets_own {
            continue;
        }
        let as_block = |t: usize| -> Option<usize> {
            let s = owner(w[t][0]);
            w[t].iter().copied().eq(block(s)).then_some(s)
        };
        let swapped = (0..m).any(|t| match as_block(t) {
            Some(s) => as_block(s) == Some(t),
            None => false,
        });
        if swapped {
            continue;
        }
        let edges = (0..m)
            .map(|t| block(t).chain(w[t].iter().copied()).collect())
            .collect();
        return Ok(Hypergraph::new(n, edges)?);
    }
    Err(GeneratorError::BudgetExhausted { attempts: budget })
}

/// The `(k+1)`-simplex: all `k`-subsets of `k+1` vertices.
pub fn simplex(k: usize) -> Result<Hypergraph, GeneratorError> {
    if k < 2 || k % 2 == 1 {
        return Err(invalid(format!("simplex needs an even k >= 2, got {k}")));
    }
    let edges = (0..=k).combinations(k).collect();
    Ok(Hypergraph::new(k + 1, edges)?)
}

fn from_one_based(n: usize, edges: &[&[usize]]) -> Hypergraph {
    let edges = edges
        .iter()
        .map(|e| e.iter().map(|v| v - 1).collect())
        .collect();
    Hypergraph::new(n, edges).expect("fixture is well formed")
}

/// The worked examples, keyed by stable names. Labels are shifted from
/// `1..=n` to `0..n`.
pub fn fixtures() -> BTreeMap<&'static str, Hypergraph> {
    let mut out = BTreeMap::new();
    out.insert(
        "genexm1",
        from_one_based(5, &[&[1, 2, 3, 4], &[2, 3, 4, 5], &[1, 5]]),
    );
    out.insert(
        "genexm2",
        from_one_based(
            5,
            &[&[1, 2, 3], &[2, 3, 4], &[3, 4, 5], &[1, 4, 5], &[3, 4]],
        ),
    );
    out.insert(
        "genexm3",
        from_one_based(
            7,
            &[
                &[1, 2, 3],
                &[1, 3, 4, 5],
                &[1, 2, 4, 6],
                &[1, 5, 6, 7],
                &[2, 4, 7],
                &[2, 5, 6, 7],
                &[4, 5, 6, 7],
            ],
        ),
    );
    out.insert(
        "five_edge_4u",
        from_one_based(
            10,
            &[
                &[1, 2, 3, 4],
                &[3, 4, 5, 6],
                &[5, 6, 7, 8],
                &[1, 7, 9, 10],
                &[2, 8, 9, 10],
            ],
        ),
    );
    out.insert(
        "square_6u6r",
        from_one_based(
            9,
            &[
                &[1, 2, 3, 4, 5, 6],
                &[1, 4, 5, 6, 7, 9],
                &[1, 3, 5, 6, 7, 8],
                &[1, 2, 4, 6, 7, 8],
                &[1, 3, 5, 7, 8, 9],
                &[1, 2, 6, 7, 8, 9],
                &[2, 3, 4, 5, 7, 9],
                &[2, 3, 4, 5, 8, 9],
                &[2, 3, 4, 6, 8, 9],
            ],
        ),
    );
    out.insert(
        "reg6_8u",
        from_one_based(
            12,
            &[
                &[1, 2, 3, 4, 5, 6, 7, 8],
                &[1, 3, 4, 5, 6, 7, 9, 11],
                &[1, 4, 5, 6, 7, 8, 9, 10],
                &[1, 5, 7, 8, 9, 10, 11, 12],
                &[1, 2, 3, 6, 7, 9, 10, 12],
                &[1, 2, 4, 5, 8, 10, 11, 12],
                &[2, 3, 4, 6, 8, 10, 11, 12],
                &[2, 3, 4, 5, 8, 9, 11, 12],
                &[2, 3, 6, 7, 9, 10, 11, 12],
            ],
        ),
    );
    out.insert(
        "cutedge_18v",
        from_one_based(
            18,
            &[
                &[1, 3, 4, 5],
                &[2, 3, 4, 6],
                &[5, 7, 8, 9],
                &[6, 7, 8, 9],
                &[1, 2, 10, 11],
                &[10, 12, 13, 14],
                &[11, 12, 13, 15],
                &[14, 16, 17, 18],
                &[15, 16, 17, 18],
            ],
        ),
    );
    out.insert(
        "nonregular_9v",
        from_one_based(
            9,
            &[
                &[1, 2, 3, 4],
                &[1, 2, 4, 5],
                &[1, 3, 6, 7],
                &[1, 5, 8, 9],
                &[6, 7, 8, 9],
            ],
        ),
    );
    // e_t = {2t-1, 2t, 2t+5, 2t+6} mod 18, with residue 0 written as 18
    let windows: Vec<Vec<usize>> = (1..=9)
        .map(|t: usize| {
            [2 * t - 1, 2 * t, 2 * t + 5, 2 * t + 6]
                .iter()
                .map(|&v| (v - 1) % 18 + 1)
                .collect()
        })
        .collect();
    let windows: Vec<&[usize]> = windows.iter().map(Vec::as_slice).collect();
    out.insert("three_c3_18v", from_one_based(18, &windows));
    out.insert(
        "c3_pow42",
        cycle_power(3, 4).expect("valid parameters"),
    );
    out
}

/// Random hypergraph on `n` vertices with `m` distinct edges and no isolated
/// vertex; with `connected` set, only connected draws are returned. `None`
/// when no admissible draw turned up.
pub fn random_hypergraph<R: Rng>(
    n: usize,
    m: usize,
    rng: &mut R,
    connected: bool,
) -> Option<Hypergraph> {
    for _ in 0..500 {
        let p = rng.gen_range(0.15..0.7);
        let mut edges: Vec<Vec<usize>> = Vec::with_capacity(m);
        let mut tries = 0;
        while edges.len() < m && tries < 50 * m {
            tries += 1;
            let e: Vec<usize> = (0..n).filter(|_| rng.gen_bool(p)).collect();
            if !e.is_empty() && !edges.contains(&e) {
                edges.push(e);
            }
        }
        if edges.len() < m {
            continue;
        }
        if let Ok(g) = Hypergraph::new(n, edges) {
            if !connected || g.is_connected() {
                return Some(g);
            }
        }
    }
    None
}

/// Random hypergraph with every degree even: `m - 1` random edges and a
/// closing edge equal to their symmetric difference.
pub fn random_even_degree_hypergraph<R: Rng>(
    n: usize,
    m: usize,
    rng: &mut R,
    connected: bool,
) -> Option<Hypergraph> {
    if m < 2 {
        return None;
    }
    for _ in 0..500 {
        let p = rng.gen_range(0.2..0.7);
        let mut edges: Vec<Vec<usize>> = Vec::with_capacity(m);
        let mut tries = 0;
        while edges.len() < m - 1 && tries < 50 * m {
            tries += 1;
            let e: Vec<usize> = (0..n).filter(|_| rng.gen_bool(p)).collect();
            if !e.is_empty() && !edges.contains(&e) {
                edges.push(e);
            }
        }
        let mut parity = vec![false; n];
        for e in &edges {
            for &v in e {
                parity[v] = !parity[v];
            }
        }
        let closing: Vec<usize> = (0..n).filter(|&v| parity[v]).collect();
        if closing.is_empty() || edges.contains(&closing) {
            continue;
        }
        edges.push(closing);
        if edges.len() != m {
            continue;
        }
        if let Ok(g) = Hypergraph::new(n, edges) {
            if !connected || g.is_connected() {
                return Some(g);
            }
        }
    }
    None
}

/// Random `k`-uniform hypergraph with `m` distinct edges, isolated vertices
/// allowed.
pub fn random_uniform<R: Rng>(n: usize, k: usize, m: usize, rng: &mut R) -> Option<Hypergraph> {
    assert!(k <= n);
    let mut edges: Vec<Vec<usize>> = Vec::with_capacity(m);
    let mut pool: Vec<usize> = (0..n).collect();
    let mut tries = 0;
    while edges.len() < m && tries < 100 * m {
        tries += 1;
        pool.shuffle(rng);
        let mut e = pool[..k].to_vec();
        e.sort_unstable();
        if !edges.contains(&e) {
            edges.push(e);
        }
    }
    (edges.len() == m).then(|| Hypergraph::build(n, edges, true).expect("edges are valid"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::transversal::{classify, is_odd_transversal};

    #[test]
    fn cayley_examples() {
        let c5 = cayley(5, 2).unwrap();
        assert_eq!(c5, cycle(5).unwrap());
        assert!(classify(&cayley(7, 4).unwrap()).is_minimal);
        let g = cayley(9, 6).unwrap();
        let r = classify(&g);
        assert!(!r.is_minimal);
        assert_eq!(r.rank, 6);
        assert!(cayley(4, 4).is_err());
        assert!(cayley(4, 1).is_err());
    }

    #[test]
    fn cayley_is_regular_and_connected() {
        for n in 3..=15 {
            for k in 2..n {
                let g = cayley(n, k).unwrap();
                assert_eq!((g.n(), g.m()), (n, n));
                assert_eq!(g.regularity(), Some(k));
                assert_eq!(g.uniformity(), Some(k));
                assert!(g.is_connected());
            }
        }
    }

    #[test]
    fn power_examples() {
        let c3 = cycle_power(3, 4).unwrap();
        assert_eq!((c3.n(), c3.m()), (6, 3));
        assert!(classify(&c3).is_minimal);

        let c4 = cycle_power(4, 4).unwrap();
        let r = classify(&c4);
        assert!(r.is_odd_transversal && !r.is_minimal);

        let single = power(&[(0, 1)], 6).unwrap();
        assert_eq!(single.edges(), &[vec![0, 1, 2, 3, 4, 5]]);

        assert_eq!(power(&[(0, 1), (1, 2)], 2).unwrap().edges(), &[vec![0, 1], vec![1, 2]]);
        assert!(power(&[(0, 1)], 3).is_err());
        assert!(power(&[(0, 0)], 4).is_err());
        assert!(power(&[(0, 1), (1, 0)], 4).is_err());
    }

    /// BFS 2-coloring oracle on a simple graph.
    fn is_bipartite(n: usize, edges: &[(usize, usize)]) -> bool {
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut color = vec![None; n];
        for s in 0..n {
            if color[s].is_some() {
                continue;
            }
            color[s] = Some(false);
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                let cu = color[u].unwrap();
                for &w in &adj[u] {
                    match color[w] {
                        None => {
                            color[w] = Some(!cu);
                            stack.push(w);
                        }
                        Some(cw) if cw == cu => return false,
                        _ => {}
                    }
                }
            }
        }
        true
    }

    #[test]
    fn power_odd_bipartite_iff_graph_bipartite() {
        for n in 2..=6usize {
            let pairs: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
            for mask in 1u32..1 << pairs.len() {
                let edges: Vec<(usize, usize)> = pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &p)| p)
                    .collect();
                let Ok(base) = Hypergraph::new(n, edges.iter().map(|&(u, v)| vec![u, v]).collect())
                else {
                    continue;
                };
                if !base.is_connected() {
                    continue;
                }
                for k in [4, 6] {
                    let g = power(&edges, k).unwrap();
                    assert_eq!(is_odd_transversal(&g), is_bipartite(n, &edges), "{edges:?}");
                }
            }
        }
    }

    #[test]
    fn blowup_examples() {
        let c3 = cycle(3).unwrap();
        assert_eq!(blowup(&c3, 2).unwrap().incidence().rank(), cycle_power(3, 4).unwrap().incidence().rank());
        assert_eq!(blowup(&c3, 1).unwrap(), c3);
        let g = blowup(&cayley(7, 4).unwrap(), 3).unwrap();
        assert_eq!((g.n(), g.m(), g.uniformity()), (21, 7, Some(12)));
        assert!(classify(&g).is_minimal);
        assert!(blowup(&c3, 0).is_err());
    }

    #[test]
    fn blowup_incidence_is_repeated_blocks() {
        for g in fixtures().values() {
            let b = g.incidence();
            let t3 = blowup(g, 3).unwrap();
            assert_eq!(t3.incidence(), b.hconcat(&b).hconcat(&b));
            assert_eq!(t3.degrees()[..g.n()], g.degrees()[..]);
        }
    }

    #[test]
    fn blowup_c3_is_c3_power() {
        // t∘C_m = C_m^{2t,t}; the vertex labelling differs, compare as edge sets of blocks
        let b = blowup(&cycle(3).unwrap(), 2).unwrap();
        let p = cycle_power(3, 4).unwrap();
        assert_eq!((b.n(), b.m(), b.uniformity(), b.regularity()), (6, 3, Some(4), Some(2)));
        // relabel blow-up copy (i, v) -> 2v + i
        let relabeled = Hypergraph::new(
            6,
            b.edges()
                .iter()
                .map(|e| e.iter().map(|&x| 2 * (x % 3) + x / 3).collect())
                .collect(),
        )
        .unwrap();
        assert_eq!(relabeled, p);
    }

    #[test]
    fn projective_planes() {
        let g = projective_plane(3).unwrap();
        assert_eq!((g.n(), g.m(), g.uniformity(), g.regularity()), (13, 13, Some(4), Some(4)));
        let r = classify(&g);
        assert!(r.is_minimal);
        assert_eq!(r.rank, 12);

        let g = projective_plane(5).unwrap();
        assert_eq!((g.n(), g.m(), g.uniformity(), g.regularity()), (31, 31, Some(6), Some(6)));
        assert!(classify(&g).is_minimal);

        for q in [3, 5, 7] {
            let g = projective_plane(q).unwrap();
            assert!(pairs_on_unique_line(&g));
            assert!(pairs_on_unique_line(&g.dual().dual));
        }
        for bad in [0, 1, 2, 4, 9, 15] {
            assert!(projective_plane(bad).is_err(), "q = {bad}");
        }
    }

    #[test]
    fn two_regular_properties() {
        for (k, m) in [(4, 3), (4, 5), (6, 3), (8, 7)] {
            for seed in 0..100 {
                let g = two_regular_random(k, m, seed).unwrap();
                assert_eq!(g.n(), k * m / 2);
                assert_eq!(g.uniformity(), Some(k));
                assert_eq!(g.regularity(), Some(2));
                if g.is_connected() && m % 2 == 1 {
                    assert!(classify(&g).is_minimal);
                }
            }
        }
        assert_eq!(two_regular_random(4, 5, 9).unwrap(), two_regular_random(4, 5, 9).unwrap());
        assert!(two_regular_random(3, 5, 0).is_err());
        assert!(two_regular_random(2, 5, 0).is_err());
        assert!(matches!(
            two_regular_random_with_budget(4, 5, 0, 0),
            Err(GeneratorError::BudgetExhausted { attempts: 0 })
        ));
    }

    #[test]
    fn no_disconnected_two_regular_on_six_vertices() {
        // every 2-regular simple 4-uniform hypergraph on 6 vertices with 3 edges
        let quads: Vec<Vec<usize>> = (0..6).combinations(4).collect();
        let mut found = 0;
        for trio in quads.iter().combinations(3) {
            let Ok(g) = Hypergraph::new(6, trio.into_iter().cloned().collect()) else {
                continue;
            };
            if g.regularity() == Some(2) {
                found += 1;
                assert!(g.is_connected());
            }
        }
        assert!(found > 0);
        for seed in 0..50 {
            let g = two_regular_random(4, 3, seed).unwrap();
            assert!(g.is_connected());
            assert!(classify(&g).is_minimal);
        }
    }

    #[test]
    fn simplices() {
        let mut tri = simplex(2).unwrap().edges().to_vec();
        tri.sort();
        let mut c3 = cycle(3).unwrap().edges().to_vec();
        c3.sort();
        assert_eq!(tri, c3);
        for k in [4, 6] {
            let g = simplex(k).unwrap();
            assert_eq!((g.n(), g.m(), g.regularity()), (k + 1, k + 1, Some(k)));
            assert!(classify(&g).is_minimal);
        }
        assert!(simplex(3).is_err());
    }

    #[test]
    fn fixture_shapes() {
        let f = fixtures();
        assert_eq!((f["genexm1"].n(), f["genexm1"].m()), (5, 3));
        assert!(f["nonregular_9v"].regularity().is_none());
        assert!(classify(&f["nonregular_9v"]).is_minimal);
        let cut = &f["cutedge_18v"];
        assert_eq!((cut.n(), cut.m()), (18, 9));
        assert!(classify(cut).is_minimal);
        assert!(!cut.cut_edges().is_empty());
        let three = &f["three_c3_18v"];
        assert_eq!(three.components().len(), 3);
        for comp in three.components() {
            let edges: Vec<usize> = (0..three.m())
                .filter(|&i| comp.contains(&three.edge(i)[0]))
                .collect();
            assert!(classify(&three.edge_induced(&edges).unwrap().graph).is_minimal);
        }
    }
}
