//! Serializable reports for the command line and the browser demo.
//!
//! Floating-point fields are rounded to 12 significant digits so that JSON
//! output is stable across runs and platforms.

use std::fmt::Write as _;

use serde::Serialize;

use crate::format::LabeledHypergraph;
use crate::generators::{self, GeneratorError};
use crate::spectral::{self, SpectralError, SpectralOptions, StartKind};
use crate::transversal::{self, Method, MinimalityMethod, NotMinimalReason};

/// Rounds to 12 significant digits.
pub fn round_sig(x: f64) -> f64 {
    if !x.is_finite() || x == 0.0 {
        return x;
    }
    format!("{x:.11e}").parse().expect("formatted float parses")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AnalyzeOptions {
    pub definitional_check: bool,
    pub max_t: usize,
}

impl Default for AnalyzeOptions {
    fn default() -> Self {
        Self {
            definitional_check: false,
            max_t: 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AnalyzeReport {
    pub labels: Vec<String>,
    pub n: usize,
    pub m: usize,
    pub uniformity: Option<usize>,
    pub regularity: Option<usize>,
    pub degrees: Vec<usize>,
    pub odd_degree_vertices: Vec<String>,
    pub all_edges_even: bool,
    pub rank: usize,
    pub is_odd_transversal: bool,
    pub witness: Option<Vec<String>>,
    pub count: String,
    pub m_odd: bool,
    pub all_degrees_even: bool,
    pub rank_criterion: bool,
    pub single_deletion: Option<bool>,
    pub proper_dependency: Option<Vec<usize>>,
    pub minimal: bool,
    pub verdict: String,
    pub minimality_method: MinimalityMethod,
    pub not_minimal_reason: Option<NotMinimalReason>,
    pub connected: bool,
    pub components: usize,
    pub cut_vertices: Vec<String>,
    pub cut_edges: Vec<usize>,
    /// `injection[e]` is the vertex label matched to edge `e`.
    pub injection: Option<Vec<String>>,
    pub perfect_matching: bool,
    pub max_t: usize,
    pub intersection_violation: Option<Vec<usize>>,
}

pub fn verdict(odd_transversal: bool, minimal: bool) -> &'static str {
    match (odd_transversal, minimal) {
        (true, _) => "odd-transversal",
        (false, true) => "minimal non-odd-transversal",
        (false, false) => "non-odd-transversal, not minimal",
    }
}

pub fn analyze(input: &LabeledHypergraph, opts: &AnalyzeOptions) -> AnalyzeReport {
    let g = &input.graph;
    let method = if opts.definitional_check {
        Method::Both
    } else {
        Method::RankCriterion
    };
    let c = transversal::classify_with(g, method);
    let degrees = g.degrees();
    let odd_degree_vertices = (0..g.n())
        .filter(|&v| degrees[v] % 2 == 1)
        .map(|v| input.label_of(v).to_string())
        .collect();
    let injection = transversal::edge_injection(g);
    AnalyzeReport {
        labels: input.labels.clone(),
        n: g.n(),
        m: g.m(),
        uniformity: g.uniformity(),
        regularity: g.regularity(),
        degrees,
        odd_degree_vertices,
        all_edges_even: g.all_edges_even(),
        rank: c.rank,
        is_odd_transversal: c.is_odd_transversal,
        witness: c.witness.as_ref().map(|u| input.labels_of(u)),
        count: c.count.to_str_radix(10),
        m_odd: c.m_odd,
        all_degrees_even: c.all_degrees_even,
        rank_criterion: c.rank_criterion,
        single_deletion: c.single_deletion,
        proper_dependency: c.proper_dependency.clone(),
        minimal: c.is_minimal,
        verdict: verdict(c.is_odd_transversal, c.is_minimal).to_string(),
        minimality_method: c.minimality_method,
        not_minimal_reason: c.not_minimal_reason,
        connected: c.connected,
        components: g.components().len(),
        cut_vertices: input.labels_of(&g.cut_vertices()),
        cut_edges: g.cut_edges(),
        perfect_matching: injection.as_ref().is_some_and(|i| i.is_perfect(g.n())),
        injection: injection.map(|i| input.labels_of(&i.assignment)),
        max_t: opts.max_t,
        intersection_violation: transversal::intersection_bound_check(g, opts.max_t),
    }
}

fn opt<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map_or_else(|| "none".to_string(), T::to_string)
}

fn list<T: std::fmt::Display>(v: &[T]) -> String {
    if v.is_empty() {
        "none".to_string()
    } else {
        v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
    }
}

fn kebab<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|j| j.as_str().map(String::from))
        .unwrap_or_default()
}

impl AnalyzeReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let w = &mut s;
        let _ = writeln!(w, "vertices: {}", self.n);
        let _ = writeln!(w, "edges: {}", self.m);
        let _ = writeln!(w, "uniformity: {}", opt(&self.uniformity));
        let _ = writeln!(w, "regularity: {}", opt(&self.regularity));
        let _ = writeln!(w, "edge count odd: {}", self.m_odd);
        let _ = writeln!(w, "all degrees even: {}", self.all_degrees_even);
        let _ = writeln!(w, "odd-degree vertices: {}", list(&self.odd_degree_vertices));
        let _ = writeln!(w, "rank over GF(2): {}", self.rank);
        let _ = writeln!(w, "odd transversal: {}", self.witness.as_deref().map_or("none".into(), list));
        let _ = writeln!(w, "odd transversal count: {}", self.count);
        let _ = writeln!(w, "rank criterion: {}", self.rank_criterion);
        let _ = writeln!(
            w,
            "single-deletion check: {}",
            self.single_deletion.map_or("not run".into(), |b| b.to_string())
        );
        let _ = writeln!(
            w,
            "proper zero-sum edge set: {}",
            self.proper_dependency.as_deref().map_or("none".into(), list)
        );
        let _ = writeln!(w, "verdict: {}", self.verdict);
        let _ = writeln!(w, "method: {}", kebab(&self.minimality_method));
        if let Some(r) = &self.not_minimal_reason {
            let _ = writeln!(w, "not minimal because: {}", kebab(r));
        }
        let _ = writeln!(w, "connected: {}", self.connected);
        let _ = writeln!(w, "components: {}", self.components);
        let _ = writeln!(w, "cut vertices: {}", list(&self.cut_vertices));
        let _ = writeln!(w, "cut edges: {}", list(&self.cut_edges));
        let _ = writeln!(w, "edge injection: {}", self.injection.as_deref().map_or("none".into(), list));
        let _ = writeln!(w, "perfect matching: {}", self.perfect_matching);
        let _ = writeln!(
            w,
            "intersection bound violation (t <= {}): {}",
            self.max_t,
            self.intersection_violation.as_deref().map_or("none".into(), list)
        );
        s
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LambdaSection {
    pub upper: f64,
    pub start: StartKind,
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundSection {
    pub bound1: f64,
    pub bound2: f64,
    pub flip_value_min_edge: f64,
    pub flip_value_min_vertex_edge: f64,
    pub flip_identity_error: f64,
    pub bound1_holds: bool,
    pub bound2_holds: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SpectraReport {
    pub labels: Vec<String>,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub rho: f64,
    pub rho_lower: f64,
    pub perron_residual: f64,
    pub iterations: usize,
    pub converged: bool,
    pub perron_vector: Vec<f64>,
    pub minimal: bool,
    /// Why the least-eigenvalue section is missing, when it is.
    pub lambda_min_status: String,
    pub lambda_min: Option<LambdaSection>,
    pub bounds: Option<BoundSection>,
}

/// Bounds are compared with this slack.
pub const BOUND_SLACK: f64 = 1e-8;

pub fn spectra(input: &LabeledHypergraph, opts: &SpectralOptions) -> Result<SpectraReport, SpectralError> {
    let g = &input.graph;
    let k = g.uniformity().ok_or(SpectralError::NotUniform)?;
    let perron = spectral::spectral_radius(g, opts.tol, opts.max_iter)?;
    let minimal = transversal::classify_with(g, Method::RankCriterion).is_minimal;
    let mut report = SpectraReport {
        labels: input.labels.clone(),
        n: g.n(),
        m: g.m(),
        k,
        rho: round_sig(perron.rho),
        rho_lower: round_sig(perron.rho_lower),
        perron_residual: round_sig(perron.residual),
        iterations: perron.iterations,
        converged: perron.converged,
        perron_vector: perron.vector.iter().map(|&v| round_sig(v)).collect(),
        minimal,
        lambda_min_status: String::new(),
        lambda_min: None,
        bounds: None,
    };
    if k % 2 == 1 {
        report.lambda_min_status = format!("not-applicable: odd uniformity {k}");
        return Ok(report);
    }
    if minimal {
        let b = spectral::bound_report(g, opts)?;
        report.lambda_min = Some(LambdaSection {
            upper: round_sig(b.lambda_min_upper),
            start: b.lambda_min_start,
            alpha: round_sig(b.alpha),
            beta: round_sig(b.beta),
        });
        report.bounds = Some(BoundSection {
            bound1: round_sig(b.bound1),
            bound2: round_sig(b.bound2),
            flip_value_min_edge: round_sig(b.flip_value_min_edge),
            flip_value_min_vertex_edge: round_sig(b.flip_value_min_vertex_edge),
            flip_identity_error: round_sig(b.flip_identity_error),
            bound1_holds: b.lambda_min_upper <= b.bound1 + BOUND_SLACK,
            bound2_holds: b.lambda_min_upper <= b.bound2 + BOUND_SLACK,
        });
    } else {
        let est = spectral::lambda_min_upper(g, &perron, opts.restarts, opts.tol, opts.seed)?;
        report.lambda_min = Some(LambdaSection {
            upper: round_sig(est.value),
            start: est.start,
            alpha: round_sig(perron.rho + est.value),
            beta: round_sig(-est.value / perron.rho),
        });
    }
    report.lambda_min_status = "ok".to_string();
    Ok(report)
}

impl SpectraReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let w = &mut s;
        let _ = writeln!(w, "vertices: {}", self.n);
        let _ = writeln!(w, "edges: {}", self.m);
        let _ = writeln!(w, "uniformity: {}", self.k);
        let _ = writeln!(w, "spectral radius: {}", self.rho);
        let _ = writeln!(w, "spectral radius lower bracket: {}", self.rho_lower);
        let _ = writeln!(w, "perron residual: {:e}", self.perron_residual);
        let _ = writeln!(w, "iterations: {}", self.iterations);
        let _ = writeln!(w, "converged: {}", self.converged);
        let _ = writeln!(w, "minimal non-odd-bipartite: {}", self.minimal);
        match &self.lambda_min {
            None => {
                let _ = writeln!(w, "least H-eigenvalue: {}", self.lambda_min_status);
            }
            Some(l) => {
                let _ = writeln!(w, "least H-eigenvalue upper estimate: {}", l.upper);
                let _ = writeln!(w, "alpha: {}", l.alpha);
                let _ = writeln!(w, "beta: {}", l.beta);
            }
        }
        if let Some(b) = &self.bounds {
            let _ = writeln!(w, "bound1 (-rho + 2k/n^(1/k)): {} holds: {}", b.bound1, b.bound1_holds);
            let _ = writeln!(w, "bound2 (-(1 - 2/m) rho): {} holds: {}", b.bound2, b.bound2_holds);
            let _ = writeln!(w, "flip value, min-weight edge: {}", b.flip_value_min_edge);
            let _ = writeln!(w, "flip value, min-vertex edge: {}", b.flip_value_min_vertex_edge);
            let _ = writeln!(w, "flip identity max error: {:e}", b.flip_identity_error);
        }
        s
    }
}

/// One row of the Cayley gcd sweep.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GcdRow {
    pub n: usize,
    pub k: usize,
    pub gcd: usize,
    pub rank: usize,
    pub minimal: bool,
    /// `gcd(k, n) = 1`.
    pub predicted: bool,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// Cayley hypergraphs on odd `n` with `k < n <= n_max`.
pub fn gcd_sweep(k: usize, n_max: usize) -> Result<Vec<GcdRow>, GeneratorError> {
    (k + 1..=n_max)
        .filter(|n| n % 2 == 1)
        .map(|n| {
            let g = generators::cayley(n, k)?;
            let c = transversal::classify_with(&g, Method::RankCriterion);
            let d = gcd(n, k);
            Ok(GcdRow {
                n,
                k,
                gcd: d,
                rank: c.rank,
                minimal: c.is_minimal,
                predicted: d == 1,
            })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum BetaFamily {
    /// Generalized power of the cycle `C_m`; the parameter is `m`.
    CmPow,
    /// Cayley hypergraph on `Z_n`; the parameter is `n`.
    Cayley,
}

impl std::str::FromStr for BetaFamily {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "cm-pow" => Ok(Self::CmPow),
            "cayley" => Ok(Self::Cayley),
            other => Err(format!("unknown family `{other}` (expected cm-pow or cayley)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BetaRow {
    pub param: usize,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub minimal: bool,
    pub rho: f64,
    pub lambda_min_upper: f64,
    pub alpha: f64,
    pub beta: f64,
}

#[derive(Debug, thiserror::Error)]
pub enum SweepError {
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Spectral(#[from] SpectralError),
}

/// `β` along a family; rows follow the order of `params`.
pub fn beta_trend(
    family: BetaFamily,
    k: usize,
    params: &[usize],
    opts: &SpectralOptions,
) -> Result<Vec<BetaRow>, SweepError> {
    params
        .iter()
        .map(|&p| {
            let g = match family {
                BetaFamily::CmPow => generators::cycle_power(p, k)?,
                BetaFamily::Cayley => generators::cayley(p, k)?,
            };
            let r = spectra(&LabeledHypergraph::one_based(g), opts)?;
            let lam = r.lambda_min.ok_or(SpectralError::OddUniformity(k))?;
            Ok(BetaRow {
                param: p,
                n: r.n,
                m: r.m,
                k,
                minimal: r.minimal,
                rho: r.rho,
                lambda_min_upper: lam.upper,
                alpha: lam.alpha,
                beta: lam.beta,
            })
        })
        .collect()
}

pub fn gcd_table(rows: &[GcdRow]) -> String {
    let mut s = String::from("n\tk\tgcd\trank\tminimal\tpredicted\n");
    for r in rows {
        let _ = writeln!(s, "{}\t{}\t{}\t{}\t{}\t{}", r.n, r.k, r.gcd, r.rank, r.minimal, r.predicted);
    }
    s
}

pub fn beta_table(rows: &[BetaRow]) -> String {
    let mut s = String::from("param\tn\tm\tk\tminimal\trho\tlambda_min_upper\talpha\tbeta\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            r.param, r.n, r.m, r.k, r.minimal, r.rho, r.lambda_min_upper, r.alpha, r.beta
        );
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::format;

    #[test]
    fn rounding_keeps_twelve_digits() {
        assert_eq!(round_sig(1.0 / 7.0), 0.142857142857);
        assert_eq!(round_sig(-0.000123456789012345), -0.000123456789012);
        assert_eq!(round_sig(0.0), 0.0);
        assert_eq!(serde_json::to_string(&round_sig(2.0 / 3.0)).unwrap(), "0.666666666667");
    }

    #[test]
    fn analyze_genexm1() {
        let input = format::parse("1 2 3 4\n2 3 4 5\n1 5\n").unwrap();
        let r = analyze(&input, &AnalyzeOptions::default());
        assert_eq!(r.verdict, "minimal non-odd-transversal");
        assert_eq!(r.rank, 2);
        assert_eq!(r.count, "0");
        assert!(r.to_text().contains("verdict: minimal non-odd-transversal"));
    }

    #[test]
    fn analyze_single_edge() {
        let input = format::parse("a b c d\n").unwrap();
        let r = analyze(&input, &AnalyzeOptions { definitional_check: true, max_t: 3 });
        assert_eq!(r.verdict, "odd-transversal");
        assert_eq!(r.witness, Some(vec!["a".to_string()]));
        assert_eq!(r.count, "8");
        assert_eq!(r.minimality_method, MinimalityMethod::BothAgree);
    }

    #[test]
    fn gcd_sweep_k6() {
        let rows = gcd_sweep(6, 21).unwrap();
        let minimal: Vec<usize> = rows.iter().filter(|r| r.minimal).map(|r| r.n).collect();
        assert_eq!(minimal, vec![7, 11, 13, 17, 19]);
        assert!(rows.iter().all(|r| r.minimal == r.predicted && r.rank == r.n - r.gcd));
        assert!(gcd_table(&rows).starts_with("n\tk\tgcd"));
    }

    #[test]
    fn beta_trend_rows_follow_params() {
        let rows = beta_trend(BetaFamily::CmPow, 4, &[5, 3], &SpectralOptions::default()).unwrap();
        assert_eq!(rows.iter().map(|r| r.param).collect::<Vec<_>>(), vec![5, 3]);
        assert!(rows.iter().all(|r| r.minimal && r.beta < 1.0));
        assert!("cm-pow".parse::<BetaFamily>().is_ok());
        assert!("cube".parse::<BetaFamily>().is_err());
    }

    #[test]
    fn spectra_odd_uniformity_is_marked() {
        let input = format::parse("1 2 3\n2 3 4\n3 4 1\n4 1 2\n").unwrap();
        let r = spectra(&input, &SpectralOptions::default()).unwrap();
        assert!(r.lambda_min.is_none());
        assert!(r.lambda_min_status.starts_with("not-applicable"));
        assert!((r.rho - 3.0).abs() < 1e-8);
    }
}
