//! Odd transversals and minimal non-odd-transversal hypergraphs.
//!
//! A vertex set `U` is an odd transversal when every edge meets it in an odd
//! number of vertices, i.e. its indicator `x` solves `B_G x = 1` over GF(2).
//! A connected `G` with `m` edges is minimal non-odd-transversal exactly
//! when `m` is odd, every degree is even and `rank B_G = m - 1`.

use itertools::Itertools;
use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::gf2::BitVector;
use crate::hypergraph::Hypergraph;

/// Largest vertex count accepted by [`brute_force_odd_transversal`].
pub const BRUTE_FORCE_MAX_VERTICES: usize = 24;
/// Largest edge count accepted by the subset enumerations.
pub const SUBSET_ENUMERATION_MAX_EDGES: usize = 24;
/// `classify` runs the definitional cross-check while `m * n` stays below this.
pub const DEFINITIONAL_AUTO_LIMIT: usize = 1 << 22;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TransversalError {
    #[error("{what} = {actual} exceeds the enumeration limit {limit}")]
    TooLarge {
        what: &'static str,
        actual: usize,
        limit: usize,
    },
}

/// How a minimality verdict was reached.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MinimalityMethod {
    RankCriterion,
    Definitional,
    BothAgree,
}

/// Which minimality tests [`classify_with`] evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    RankCriterion,
    Definitional,
    Both,
}

/// First reason, in checking order, why a hypergraph is not minimal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum NotMinimalReason {
    Disconnected,
    OddTransversal,
    EvenEdgeCount,
    OddDegreeVertex,
    RankBelowMMinusOne,
    DeletionStaysNonOddTransversal,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ClassificationReport {
    pub n: usize,
    pub m: usize,
    pub connected: bool,
    pub is_odd_transversal: bool,
    pub witness: Option<Vec<usize>>,
    #[serde(serialize_with = "serialize_biguint")]
    pub count: BigUint,
    pub m_odd: bool,
    pub all_degrees_even: bool,
    pub rank: usize,
    /// `m` odd, all degrees even and `rank = m - 1`.
    pub rank_criterion: bool,
    /// `G` non-odd-transversal and every `G - e` odd-transversal, when run.
    pub single_deletion: Option<bool>,
    /// A nonempty proper edge set whose indicator rows sum to zero.
    pub proper_dependency: Option<Vec<usize>>,
    pub is_minimal: bool,
    pub minimality_method: MinimalityMethod,
    pub not_minimal_reason: Option<NotMinimalReason>,
}

fn serialize_biguint<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

/// Support of the free-variables-zero solution of `B_G x = 1`.
pub fn find_odd_transversal(g: &Hypergraph) -> Option<Vec<usize>> {
    let x = g
        .incidence()
        .solve(&BitVector::ones(g.m()))
        .expect("rhs length equals the edge count")?;
    let u = x.support();
    assert!(is_odd_transversal_set(g, &u), "solver returned a non-witness");
    Some(u)
}

/// Whether every edge meets `u` in an odd number of vertices.
pub fn is_odd_transversal_set(g: &Hypergraph, u: &[usize]) -> bool {
    let mut inside = vec![false; g.n()];
    for &v in u {
        inside[v] = true;
    }
    g.edges()
        .iter()
        .all(|e| e.iter().filter(|&&v| inside[v]).count() % 2 == 1)
}

fn edge_masks(g: &Hypergraph) -> Vec<u32> {
    g.edges()
        .iter()
        .map(|e| e.iter().fold(0u32, |acc, &v| acc | 1 << v))
        .collect()
}

fn check_vertex_guard(g: &Hypergraph) -> Result<(), TransversalError> {
    if g.n() > BRUTE_FORCE_MAX_VERTICES {
        return Err(TransversalError::TooLarge {
            what: "n",
            actual: g.n(),
            limit: BRUTE_FORCE_MAX_VERTICES,
        });
    }
    Ok(())
}

/// Exhaustive search over all nonempty vertex subsets, smallest bitmask first.
pub fn brute_force_odd_transversal(g: &Hypergraph) -> Result<Option<Vec<usize>>, TransversalError> {
    check_vertex_guard(g)?;
    let masks = edge_masks(g);
    let found = (1u32..1 << g.n())
        .find(|&u| masks.iter().all(|&e| (e & u).count_ones() % 2 == 1))
        .map(|u| (0..g.n()).filter(|&v| u >> v & 1 == 1).collect());
    Ok(found)
}

/// Exhaustive count of all vertex subsets meeting every edge oddly.
pub fn brute_force_count_odd_transversals(g: &Hypergraph) -> Result<u64, TransversalError> {
    check_vertex_guard(g)?;
    let masks = edge_masks(g);
    Ok((0u32..1 << g.n())
        .filter(|&u| masks.iter().all(|&e| (e & u).count_ones() % 2 == 1))
        .count() as u64)
}

/// Number of odd transversals: `2^(n - rank)` when one exists, else 0.
pub fn count_odd_transversals(g: &Hypergraph) -> BigUint {
    g.incidence()
        .solution_count(&BitVector::ones(g.m()))
        .expect("rhs length equals the edge count")
}

pub fn is_odd_transversal(g: &Hypergraph) -> bool {
    g.incidence()
        .solve(&BitVector::ones(g.m()))
        .expect("rhs length equals the edge count")
        .is_some()
}

/// Definitional minimality: not odd-transversal, yet odd-transversal after
/// deleting any single edge.
pub fn minimal_by_deletion(g: &Hypergraph) -> bool {
    if g.m() == 0 {
        return false;
    }
    let b = g.incidence();
    let ones = BitVector::ones(g.m());
    if b.solve(&ones).unwrap().is_some() {
        return false;
    }
    let ones = BitVector::ones(g.m() - 1);
    (0..g.m()).all(|e| b.without_row(e).solve(&ones).unwrap().is_some())
}

/// Degree-parity minimality: `m` odd, all degrees even, and every nonempty
/// proper edge-induced sub-hypergraph has a vertex of odd degree.
pub fn minimal_by_degree_parity(g: &Hypergraph) -> Result<bool, TransversalError> {
    check_edge_guard(g)?;
    if g.m().is_multiple_of(2) || !g.all_degrees_even() {
        return Ok(false);
    }
    let m = g.m();
    let all = (1u32 << m) - 1;
    for f in 1..all {
        let selection: Vec<usize> = (0..m).filter(|&i| f >> i & 1 == 1).collect();
        let sub = g.edge_induced(&selection).expect("selection is nonempty");
        if sub.graph.all_degrees_even() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn check_edge_guard(g: &Hypergraph) -> Result<(), TransversalError> {
    if g.m() > SUBSET_ENUMERATION_MAX_EDGES {
        return Err(TransversalError::TooLarge {
            what: "m",
            actual: g.m(),
            limit: SUBSET_ENUMERATION_MAX_EDGES,
        });
    }
    Ok(())
}

/// A nonempty proper edge set `F` with `Σ_{e∈F} χ_e = 0`, if one exists.
///
/// Row dependencies form the left nullspace of `B_G`. With nullity at least
/// two, one of `b1`, `b2`, `b1 + b2` is proper; with nullity one the only
/// candidate is the basis vector itself.
pub fn minimal_subset_certificate(g: &Hypergraph) -> Option<Vec<usize>> {
    let m = g.m();
    let basis = g.incidence().left_nullspace_basis();
    let proper = |v: &BitVector| !v.is_zero() && v.count_ones() < m;
    if let Some(v) = basis.iter().find(|v| proper(v)) {
        return Some(v.support());
    }
    if basis.len() >= 2 {
        let mut sum = basis[0].clone();
        sum.xor_assign(&basis[1]);
        debug_assert!(proper(&sum));
        return Some(sum.support());
    }
    None
}

pub fn classify(g: &Hypergraph) -> ClassificationReport {
    let method = if g.m().saturating_mul(g.n()) <= DEFINITIONAL_AUTO_LIMIT {
        Method::Both
    } else {
        Method::RankCriterion
    };
    classify_with(g, method)
}

pub fn classify_with(g: &Hypergraph, method: Method) -> ClassificationReport {
    let b = g.incidence();
    let m = g.m();
    let rank = b.rank();
    let witness = find_odd_transversal(g);
    let count = count_odd_transversals(g);
    let connected = g.is_connected();
    let m_odd = m % 2 == 1;
    let all_degrees_even = g.all_degrees_even();
    let rank_criterion = m_odd && all_degrees_even && rank + 1 == m;

    let single_deletion = match method {
        Method::RankCriterion => None,
        Method::Definitional | Method::Both => Some(minimal_by_deletion(g)),
    };
    let (is_minimal, minimality_method) = match (method, single_deletion) {
        (Method::RankCriterion, _) => (rank_criterion, MinimalityMethod::RankCriterion),
        (Method::Definitional, Some(d)) => (d, MinimalityMethod::Definitional),
        (Method::Both, Some(d)) => {
            assert_eq!(
                d, rank_criterion,
                "rank criterion and definitional verdict disagree on {g:?}"
            );
            (d, MinimalityMethod::BothAgree)
        }
        _ => unreachable!(),
    };

    let not_minimal_reason = if is_minimal {
        None
    } else if !connected {
        Some(NotMinimalReason::Disconnected)
    } else if witness.is_some() {
        Some(NotMinimalReason::OddTransversal)
    } else if !m_odd {
        Some(NotMinimalReason::EvenEdgeCount)
    } else if !all_degrees_even {
        Some(NotMinimalReason::OddDegreeVertex)
    } else if rank + 1 != m {
        Some(NotMinimalReason::RankBelowMMinusOne)
    } else {
        Some(NotMinimalReason::DeletionStaysNonOddTransversal)
    };

    ClassificationReport {
        n: g.n(),
        m,
        connected,
        is_odd_transversal: witness.is_some(),
        witness,
        count,
        m_odd,
        all_degrees_even,
        rank,
        rank_criterion,
        single_deletion,
        proper_dependency: minimal_subset_certificate(g),
        is_minimal,
        minimality_method,
        not_minimal_reason,
    }
}

/// An injection `f: E(G) -> V(G)` with `f(e) ∈ e`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EdgeInjection {
    /// `assignment[e]` is the vertex matched to edge `e`.
    pub assignment: Vec<usize>,
}

impl EdgeInjection {
    /// Whether the matching also saturates every vertex.
    pub fn is_perfect(&self, n: usize) -> bool {
        self.assignment.len() == n
    }
}

/// Maximum matching of the incidence bipartite graph; returns the injection
/// when every edge is matched.
pub fn edge_injection(g: &Hypergraph) -> Option<EdgeInjection> {
    let matched = hopcroft_karp(g.edges(), g.n());
    let assignment: Option<Vec<usize>> = matched.into_iter().collect();
    let assignment = assignment?;
    debug_assert!(assignment.iter().all_unique());
    Some(EdgeInjection { assignment })
}

/// Hopcroft–Karp on a bipartite graph given by left adjacency lists.
fn hopcroft_karp(adj: &[Vec<usize>], right: usize) -> Vec<Option<usize>> {
    const FREE: usize = usize::MAX;
    let left = adj.len();
    let mut match_left = vec![FREE; left];
    let mut match_right = vec![FREE; right];
    let mut dist = vec![0usize; left];

    fn bfs(adj: &[Vec<usize>], ml: &[usize], mr: &[usize], dist: &mut [usize]) -> bool {
        let mut queue = std::collections::VecDeque::new();
        for (u, d) in dist.iter_mut().enumerate() {
            if ml[u] == FREE {
                *d = 0;
                queue.push_back(u);
            } else {
                *d = FREE;
            }
        }
        let mut found = false;
        while let Some(u) = queue.pop_front() {
            for &v in &adj[u] {
                let w = mr[v];
                if w == FREE {
                    found = true;
                } else if dist[w] == FREE {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        found
    }

    fn dfs(
        u: usize,
        adj: &[Vec<usize>],
        ml: &mut [usize],
        mr: &mut [usize],
        dist: &mut [usize],
    ) -> bool {
        for &v in &adj[u] {
            let w = mr[v];
            if w == FREE || (dist[w] == dist[u] + 1 && dfs(w, adj, ml, mr, dist)) {
                ml[u] = v;
                mr[v] = u;
                return true;
            }
        }
        dist[u] = FREE;
        false
    }

    while bfs(adj, &match_left, &match_right, &mut dist) {
        for u in 0..left {
            if match_left[u] == FREE {
                dfs(u, adj, &mut match_left, &mut match_right, &mut dist);
            }
        }
    }
    match_left
        .into_iter()
        .map(|v| (v != FREE).then_some(v))
        .collect()
}

/// Looks for `t ≤ max_t` edges whose union has at most `t` vertices.
/// `max_t` is clamped to `m - 1`.
pub fn intersection_bound_check(g: &Hypergraph, max_t: usize) -> Option<Vec<usize>> {
    let max_t = max_t.min(g.m().saturating_sub(1));
    let mut seen = vec![0usize; g.n()];
    let mut stamp = 0;
    for t in 1..=max_t {
        for subset in (0..g.m()).combinations(t) {
            stamp += 1;
            let mut union = 0;
            for &e in &subset {
                for &v in g.edge(e) {
                    if seen[v] != stamp {
                        seen[v] = stamp;
                        union += 1;
                    }
                }
            }
            if union <= t {
                return Some(subset);
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{self, fixtures};

    fn c3_pow42() -> Hypergraph {
        fixtures()["c3_pow42"].clone()
    }

    fn single_edge(k: usize) -> Hypergraph {
        Hypergraph::new(k, vec![(0..k).collect()]).unwrap()
    }

    /// Union of two hypergraphs on disjoint vertex sets.
    fn disjoint_union(a: &Hypergraph, b: &Hypergraph) -> Hypergraph {
        let mut edges = a.edges().to_vec();
        edges.extend(b.edges().iter().map(|e| e.iter().map(|v| v + a.n()).collect()));
        Hypergraph::new(a.n() + b.n(), edges).unwrap()
    }

    #[test]
    fn find_examples() {
        let g = &fixtures()["genexm1"];
        let minus = g.delete_edge(2).unwrap();
        // brute force over 2^5 subsets: {1,5} (0-based {0,4}) works
        assert!(is_odd_transversal_set(&minus, &[0, 4]));
        let u = find_odd_transversal(&minus).unwrap();
        assert!(is_odd_transversal_set(&minus, &u));

        assert_eq!(find_odd_transversal(&single_edge(4)).unwrap().len(), 1);
        assert_eq!(find_odd_transversal(&fixtures()["genexm3"]), None);
    }

    #[test]
    fn brute_force_examples() {
        assert_eq!(brute_force_odd_transversal(&c3_pow42()).unwrap(), None);
        assert_eq!(brute_force_odd_transversal(&single_edge(4)).unwrap(), Some(vec![0]));
        let big = generators::cayley(25, 4).unwrap();
        assert!(matches!(
            brute_force_odd_transversal(&big),
            Err(TransversalError::TooLarge { .. })
        ));
    }

    #[test]
    fn count_examples() {
        assert_eq!(brute_force_count_odd_transversals(&single_edge(4)).unwrap(), 8);
        assert_eq!(count_odd_transversals(&single_edge(4)), BigUint::from(8u32));
        assert_eq!(count_odd_transversals(&fixtures()["genexm1"]), BigUint::from(0u32));
        let minus = c3_pow42().delete_edge(0).unwrap();
        assert_eq!(brute_force_count_odd_transversals(&minus).unwrap(), 16);
        assert_eq!(count_odd_transversals(&minus), BigUint::from(16u32));
    }

    #[test]
    fn classify_examples() {
        let r = classify(&fixtures()["genexm2"]);
        assert!(r.is_minimal);
        assert_eq!(r.minimality_method, MinimalityMethod::BothAgree);
        assert_eq!(r.rank, 4);
        assert!(r.proper_dependency.is_none());

        assert!(classify(&fixtures()["five_edge_4u"]).is_minimal);

        let two = disjoint_union(&c3_pow42(), &c3_pow42());
        let r = classify(&two);
        assert!(!r.is_minimal);
        assert!(!r.m_odd);
        assert_eq!(r.not_minimal_reason, Some(NotMinimalReason::Disconnected));

        let r = classify(&single_edge(4));
        assert!(r.is_odd_transversal && !r.is_minimal);
        assert_eq!(r.witness.as_ref().map(Vec::len), Some(1));
        assert_eq!(r.not_minimal_reason, Some(NotMinimalReason::OddTransversal));

        let r = classify_with(&c3_pow42(), Method::RankCriterion);
        assert!(r.is_minimal && r.single_deletion.is_none());
        let r = classify_with(&c3_pow42(), Method::Definitional);
        assert_eq!(r.minimality_method, MinimalityMethod::Definitional);
        assert!(r.is_minimal);
    }

    #[test]
    fn report_invariants() {
        for g in fixtures().values() {
            let r = classify(g);
            assert_eq!(r.is_odd_transversal, r.witness.is_some());
            assert_eq!(r.is_odd_transversal, r.count > BigUint::from(0u32));
            assert!(!r.is_minimal || !r.is_odd_transversal);
        }
    }

    #[test]
    fn subset_certificate_examples() {
        assert_eq!(minimal_subset_certificate(&fixtures()["genexm1"]), None);
        assert_eq!(minimal_subset_certificate(&single_edge(3)), None);

        let c5 = generators::cycle_power(5, 4).unwrap();
        let g = disjoint_union(&c3_pow42(), &c5);
        let f = minimal_subset_certificate(&g).unwrap();
        assert!(f == vec![0, 1, 2] || f == vec![3, 4, 5, 6, 7]);
        let sel = BitVector::from_support(g.m(), &f);
        assert!(g.incidence().left_mul_vec(&sel).unwrap().is_zero());
    }

    /// Exhaustive search for a proper zero-sum edge subset.
    fn brute_proper_dependency(g: &Hypergraph) -> bool {
        let b = g.incidence();
        let m = g.m();
        (1u32..(1 << m) - 1).any(|f| {
            let sel: Vec<usize> = (0..m).filter(|&i| f >> i & 1 == 1).collect();
            b.left_mul_vec(&BitVector::from_support(m, &sel)).unwrap().is_zero()
        })
    }

    #[test]
    fn subset_certificate_matches_brute_force() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(5);
        for _ in 0..300 {
            let n = rng.gen_range(2..=7);
            let m = rng.gen_range(1..=8);
            let Some(g) = generators::random_hypergraph(n, m, &mut rng, false) else {
                continue;
            };
            assert_eq!(minimal_subset_certificate(&g).is_some(), brute_proper_dependency(&g));
        }
    }

    #[test]
    fn degree_parity_verdict_on_fixtures() {
        for (name, g) in fixtures() {
            if g.m() <= SUBSET_ENUMERATION_MAX_EDGES && g.is_connected() {
                assert_eq!(
                    minimal_by_degree_parity(&g).unwrap(),
                    classify(&g).is_minimal,
                    "{name}"
                );
            }
        }
    }

    #[test]
    fn injection_examples() {
        let inj = edge_injection(&c3_pow42()).unwrap();
        assert_eq!(inj.assignment.len(), 3);
        for (e, &v) in inj.assignment.iter().enumerate() {
            assert!(c3_pow42().edge(e).contains(&v));
        }

        let sq = &fixtures()["square_6u6r"];
        assert!(edge_injection(sq).unwrap().is_perfect(sq.n()));

        let crowded =
            Hypergraph::new(3, vec![vec![0, 1], vec![0, 2], vec![1, 2], vec![0, 1, 2]]).unwrap();
        assert_eq!(edge_injection(&crowded), None);
    }

    #[test]
    fn intersection_bound_examples() {
        assert_eq!(intersection_bound_check(&fixtures()["genexm1"], 2), None);
        assert_eq!(intersection_bound_check(&c3_pow42(), 2), None);
        let two = Hypergraph::new(5, vec![vec![0, 1, 2, 3], vec![0, 1, 2, 4]]).unwrap();
        assert_eq!(intersection_bound_check(&two, 1), None);
        // the singleton edge covers only one vertex
        let tight = Hypergraph::new(2, vec![vec![0, 1], vec![1]]).unwrap();
        assert_eq!(intersection_bound_check(&tight, 1), Some(vec![1]));
    }
}
