//! Eigenvalue, multiplicity and finiteness bounds as executable checks.
//!
//! Every record lists its hypotheses as [`Guard`]s. A record whose guards all
//! hold is *applicable*; an applicable record that fails is a theorem
//! violation and is returned as [`Error::TheoremViolation`] with the graph's
//! graph6 encoding and the offending values.

use nalgebra::{DMatrix, SymmetricEigen};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_walk::{IntersectionArray, IntersectionTable};
use crate::graph::graph6::encode_graph6;
use crate::graph::Graph;
use crate::spectral::Spectrum;

/// Slack on the local eigenvalue inequalities.
pub const LOCAL_BOUND_TOL: f64 = 1e-8;
/// Matching tolerance for local eigenvalues.
pub const LOCAL_MATCH_TOL: f64 = 1e-6;
/// Relative equality tolerance for the fundamental bound.
pub const FUNDAMENTAL_TOL: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Guard {
    pub name: &'static str,
    pub met: bool,
}

fn guard(name: &'static str, met: bool) -> Guard {
    Guard { name, met }
}

fn all_met(guards: &[Guard]) -> bool {
    guards.iter().all(|g| g.met)
}

fn violation(g: &Graph, what: String) -> Error {
    let code = encode_graph6(g).unwrap_or_else(|_| "<unencodable>".into());
    Error::TheoremViolation(format!("{what} [graph6: {code}]"))
}

/// Everything the bounds need, computed once per graph.
#[derive(Debug, Clone)]
pub struct BoundsInput<'a> {
    pub graph: &'a Graph,
    pub k: usize,
    pub spectrum: &'a Spectrum,
    /// Walk-regularity order.
    pub order: Option<usize>,
    /// Intersection numbers up to the order.
    pub intersection: Option<&'a IntersectionTable>,
    pub distance_regular: Option<&'a IntersectionArray>,
    pub diameter: usize,
    pub complete_multipartite: bool,
    pub bipartite: bool,
    /// Local spectra, decreasing, one per vertex.
    pub local: &'a [Vec<f64>],
}

impl BoundsInput<'_> {
    fn order_at_least(&self, t: usize) -> bool {
        matches!(self.order, Some(o) if o >= t)
    }

    fn a(&self, j: usize) -> Option<usize> {
        self.intersection.and_then(|t| t.a.get(j).copied())
    }

    fn b(&self, j: usize) -> Option<usize> {
        self.intersection.and_then(|t| t.b.get(j).copied())
    }

    fn c(&self, j: usize) -> Option<usize> {
        self.intersection.and_then(|t| t.c.get(j).copied())
    }

    /// Eigenvalues other than `±k`, with multiplicities.
    fn non_trivial(&self) -> impl Iterator<Item = (f64, usize)> + '_ {
        let k = self.k as f64;
        self.spectrum
            .eigenvalues()
            .iter()
            .filter(move |e| !self.spectrum.same(e.value, k) && !self.spectrum.same(e.value, -k))
            .map(|e| (e.value, e.multiplicity))
    }

    fn theta1(&self) -> Option<f64> {
        self.spectrum.second()
    }

    fn theta_d(&self) -> f64 {
        self.spectrum.smallest()
    }
}

fn symmetric_eigenvalues(h: &Graph) -> Vec<f64> {
    let n = h.n();
    if n == 0 {
        return Vec::new();
    }
    let mut m = DMatrix::zeros(n, n);
    for (u, v) in h.edges() {
        m[(u, v)] = 1.0;
        m[(v, u)] = 1.0;
    }
    let mut values: Vec<f64> = SymmetricEigen::new(m).eigenvalues.iter().copied().collect();
    values.sort_by(|a, b| b.total_cmp(a));
    values
}

/// Eigenvalues of every local graph, decreasing.
pub fn local_spectra(g: &Graph) -> Result<Vec<Vec<f64>>> {
    (0..g.n())
        .into_par_iter()
        .map(|x| Ok(symmetric_eigenvalues(&g.local_graph(x)?.0)))
        .collect()
}

/// `(m + 2)(m - 1) / 2`.
pub fn godsil_value(m: usize) -> usize {
    (m + 2) * m.saturating_sub(1) / 2
}

#[derive(Debug, Clone, Serialize)]
pub struct GodsilRecord {
    pub theta: f64,
    pub multiplicity: usize,
    pub bound: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct GodsilReport {
    pub guards: Vec<Guard>,
    pub applicable: bool,
    pub k: usize,
    pub records: Vec<GodsilRecord>,
}

/// `k <= (m+2)(m-1)/2` for every eigenvalue `θ ≠ ±k` of multiplicity
/// `m >= 2`, asserted for 2-walk-regular, non-complete-multipartite graphs
/// with `k >= 3`.
pub fn godsil_bound(input: &BoundsInput) -> Result<GodsilReport> {
    let guards = vec![
        guard("2-walk-regular", input.order_at_least(2)),
        guard("not complete multipartite", !input.complete_multipartite),
        guard("k >= 3", input.k >= 3),
    ];
    let applicable = all_met(&guards);
    let records: Vec<GodsilRecord> = input
        .non_trivial()
        .filter(|&(_, m)| m >= 2)
        .map(|(theta, m)| GodsilRecord {
            theta,
            multiplicity: m,
            bound: godsil_value(m),
            pass: input.k <= godsil_value(m),
        })
        .collect();
    if applicable {
        if let Some(r) = records.iter().find(|r| !r.pass) {
            return Err(violation(
                input.graph,
                format!(
                    "k = {} exceeds (m+2)(m-1)/2 = {} for θ = {}, m = {}",
                    input.k, r.bound, r.theta, r.multiplicity
                ),
            ));
        }
    }
    Ok(GodsilReport {
        guards,
        applicable,
        k: input.k,
        records,
    })
}

/// `-1 - b_1/(θ + 1)`.
pub fn local_eigenvalue_bound(b1: usize, theta: f64) -> f64 {
    -1.0 - b1 as f64 / (theta + 1.0)
}

#[derive(Debug, Clone, Serialize)]
pub struct LocalBoundRecord {
    pub vertex: usize,
    pub eta_min: f64,
    /// Second largest local eigenvalue.
    pub eta_1: Option<f64>,
    pub lower_ok: bool,
    pub upper_ok: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct TerwilligerReport {
    pub guards: Vec<Guard>,
    /// Inequalities are asserted only for 2-walk-regular graphs; for
    /// 1-walk-regular graphs they are reported.
    pub asserted: bool,
    pub b1: Option<usize>,
    pub lower_bound: Option<f64>,
    pub upper_bound: Option<f64>,
    pub vertices: Vec<LocalBoundRecord>,
    pub pass: Option<bool>,
}

/// `η_min >= -1 - b_1/(θ_1 + 1)` and `η_1 <= -1 - b_1/(θ_d + 1)` at every
/// vertex.
pub fn terwilliger_local_bounds(input: &BoundsInput) -> Result<TerwilligerReport> {
    let d = input.spectrum.d();
    let guards = vec![
        guard("1-walk-regular", input.order_at_least(1)),
        guard("d >= 2", d >= 2),
        guard("k >= 2", input.k >= 2),
    ];
    let asserted = all_met(&guards) && input.order_at_least(2);
    let mut report = TerwilligerReport {
        guards,
        asserted,
        b1: input.b(1),
        lower_bound: None,
        upper_bound: None,
        vertices: Vec::new(),
        pass: None,
    };
    if !all_met(&report.guards) {
        return Ok(report);
    }
    let b1 = input.b(1).expect("order >= 1 gives b_1");
    let lower = local_eigenvalue_bound(b1, input.theta1().unwrap());
    let upper = local_eigenvalue_bound(b1, input.theta_d());
    report.lower_bound = Some(lower);
    report.upper_bound = Some(upper);
    report.vertices = input
        .local
        .iter()
        .enumerate()
        .map(|(vertex, eta)| {
            let eta_min = *eta.last().unwrap();
            let eta_1 = eta.get(1).copied();
            LocalBoundRecord {
                vertex,
                eta_min,
                eta_1,
                lower_ok: eta_min >= lower - LOCAL_BOUND_TOL,
                upper_ok: eta_1.is_none_or(|e| e <= upper + LOCAL_BOUND_TOL),
            }
        })
        .collect();
    let pass = report.vertices.iter().all(|r| r.lower_ok && r.upper_ok);
    report.pass = Some(pass);
    if asserted && !pass {
        let r = report
            .vertices
            .iter()
            .find(|r| !(r.lower_ok && r.upper_ok))
            .unwrap();
        return Err(violation(
            input.graph,
            format!(
                "local eigenvalues at vertex {} (η_min = {}, η_1 = {:?}) violate [{lower}, {upper}]",
                r.vertex, r.eta_min, r.eta_1
            ),
        ));
    }
    Ok(report)
}

#[derive(Debug, Clone, Serialize)]
pub struct LocalMultiplicityRecord {
    pub theta: f64,
    pub multiplicity: usize,
    pub guards: Vec<Guard>,
    pub applicable: bool,
    /// `θ ∈ {θ_1, θ_d}`.
    pub extreme: Option<bool>,
    /// `-1 - b_1/(θ + 1)`.
    pub b: Option<f64>,
    /// `k - m + δ_{b, a_1}`.
    pub required: Option<usize>,
    /// Smallest multiplicity of `b` over all local graphs.
    pub observed: Option<usize>,
    pub pass: Option<bool>,
}

/// For every eigenvalue `θ ≠ k` with multiplicity `m < k` of a
/// 2-walk-regular graph: `θ ∈ {θ_1, θ_d}` and `b = -1 - b_1/(θ+1)` is a
/// local eigenvalue of multiplicity at least `k - m + δ_{b,a_1}` at every
/// vertex.
pub fn local_multiplicity_check(input: &BoundsInput) -> Result<Vec<LocalMultiplicityRecord>> {
    let s = input.spectrum;
    let mut records = Vec::new();
    for (i, e) in s.eigenvalues().iter().enumerate().skip(1) {
        let (theta, m) = (e.value, e.multiplicity);
        let guards = vec![
            guard("2-walk-regular", input.order_at_least(2)),
            guard("m < k", m < input.k),
            guard("θ ≠ -1", !s.same(theta, -1.0)),
        ];
        let applicable = all_met(&guards);
        let mut r = LocalMultiplicityRecord {
            theta,
            multiplicity: m,
            guards,
            applicable,
            extreme: None,
            b: None,
            required: None,
            observed: None,
            pass: None,
        };
        if applicable {
            let b1 = input.b(1).unwrap();
            let a1 = input.a(1).unwrap();
            let b = local_eigenvalue_bound(b1, theta);
            let delta = usize::from((b - a1 as f64).abs() <= LOCAL_MATCH_TOL);
            let required = input.k - m + delta;
            let observed = input
                .local
                .iter()
                .map(|eta| {
                    eta.iter()
                        .filter(|&&v| (v - b).abs() <= LOCAL_MATCH_TOL)
                        .count()
                })
                .min()
                .unwrap_or(0);
            let extreme = i == 1 || i == s.d();
            let pass = extreme && observed >= required;
            r.extreme = Some(extreme);
            r.b = Some(b);
            r.required = Some(required);
            r.observed = Some(observed);
            r.pass = Some(pass);
            if !pass {
                return Err(violation(
                    input.graph,
                    format!(
                        "θ = {theta} with m = {m} < k: extreme = {extreme}, local multiplicity of {b} is {observed} < {required}"
                    ),
                ));
            }
        }
        records.push(r);
    }
    Ok(records)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SrgParameters {
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
}

/// Parameters of a strongly regular graph, or `None` when `h` is not one.
/// Complete and edgeless graphs are excluded.
pub fn srg_parameters(h: &Graph) -> Option<SrgParameters> {
    let k = h.valency()?;
    let n = h.n();
    if k == 0 || k + 1 == n {
        return None;
    }
    let common = |x: usize, y: usize| {
        h.neighbors(x)
            .iter()
            .filter(|&&z| h.is_adjacent(y, z))
            .count()
    };
    let (mut lambda, mut mu) = (None, None);
    for x in 0..n {
        for y in x + 1..n {
            let slot = if h.is_adjacent(x, y) {
                &mut lambda
            } else {
                &mut mu
            };
            let c = common(x, y);
            match *slot {
                None => *slot = Some(c),
                Some(v) if v != c => return None,
                Some(_) => {}
            }
        }
    }
    Some(SrgParameters {
        v: n,
        k,
        lambda: lambda?,
        mu: mu?,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct EqualityAnalysis {
    /// `locally_strongly_regular` when `a_1 > 0`, else `bipartite`.
    pub branch: &'static str,
    /// `-1 - b_1/(θ_d + 1)`.
    pub sigma: f64,
    /// `-1 - b_1/(θ_1 + 1)`.
    pub tau: f64,
    /// Whether the structural condition holds.
    pub condition_holds: bool,
    /// Common SRG parameters of the local graphs, when they all agree.
    pub local_srg: Option<SrgParameters>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FundamentalRecord {
    pub guards: Vec<Guard>,
    pub applicable: bool,
    pub lhs: Option<f64>,
    pub rhs: Option<f64>,
    pub gap: Option<f64>,
    pub equality: Option<bool>,
    pub analysis: Option<EqualityAnalysis>,
}

/// `(θ_1 + k/(a_1+1))(θ_d + k/(a_1+1)) >= -k a_1 b_1/(a_1+1)²`, with
/// equality exactly when every local graph has all non-principal eigenvalues
/// in `{σ, τ}` (`a_1 > 0`), or when the graph is bipartite (`a_1 = 0`).
pub fn fundamental_bound(input: &BoundsInput) -> Result<FundamentalRecord> {
    let guards = vec![
        guard("2-walk-regular", input.order_at_least(2)),
        guard("d >= 2", input.spectrum.d() >= 2),
    ];
    let applicable = all_met(&guards);
    let mut rec = FundamentalRecord {
        guards,
        applicable,
        lhs: None,
        rhs: None,
        gap: None,
        equality: None,
        analysis: None,
    };
    if !applicable {
        return Ok(rec);
    }
    let k = input.k as f64;
    let a1 = input.a(1).unwrap();
    let b1 = input.b(1).unwrap();
    let (t1, td) = (input.theta1().unwrap(), input.theta_d());
    let shift = k / (a1 as f64 + 1.0);
    let lhs = (t1 + shift) * (td + shift);
    let rhs = -k * a1 as f64 * b1 as f64 / (a1 as f64 + 1.0).powi(2);
    let gap = lhs - rhs;
    let tol = FUNDAMENTAL_TOL * (1.0 + rhs.abs());
    if gap < -tol {
        return Err(violation(
            input.graph,
            format!("fundamental bound fails: lhs {lhs} < rhs {rhs}"),
        ));
    }
    let equality = gap.abs() <= tol;
    let sigma = local_eigenvalue_bound(b1, td);
    let tau = local_eigenvalue_bound(b1, t1);
    let (branch, condition_holds) = if a1 > 0 {
        let near =
            |v: f64| (v - sigma).abs() <= LOCAL_MATCH_TOL || (v - tau).abs() <= LOCAL_MATCH_TOL;
        let holds = input
            .local
            .iter()
            .all(|eta| eta.iter().skip(1).all(|&v| near(v)));
        ("locally_strongly_regular", holds)
    } else {
        ("bipartite", input.bipartite)
    };
    if equality != condition_holds {
        return Err(violation(
            input.graph,
            format!("fundamental bound: equality = {equality} but {branch} condition = {condition_holds} (gap {gap})"),
        ));
    }
    let local_srg = if a1 > 0 && equality {
        let params: Vec<Option<SrgParameters>> = (0..input.graph.n())
            .into_par_iter()
            .map(|x| {
                input
                    .graph
                    .local_graph(x)
                    .ok()
                    .and_then(|(h, _)| srg_parameters(&h))
            })
            .collect();
        params
            .iter()
            .all(|p| *p == params[0])
            .then_some(params[0])
            .flatten()
    } else {
        None
    };
    rec.lhs = Some(lhs);
    rec.rhs = Some(rhs);
    rec.gap = Some(gap);
    rec.equality = Some(equality);
    rec.analysis = Some(EqualityAnalysis {
        branch,
        sigma,
        tau,
        condition_holds,
        local_srg,
    });
    Ok(rec)
}

#[derive(Debug, Clone, Serialize)]
pub struct ImplicationRecord {
    pub name: &'static str,
    pub guards: Vec<Guard>,
    pub applicable: bool,
    /// Values that triggered the implication.
    pub detail: String,
    pub holds: Option<bool>,
}

fn implication(
    input: &BoundsInput,
    name: &'static str,
    guards: Vec<Guard>,
    detail: String,
    conclusion: impl FnOnce() -> bool,
) -> Result<ImplicationRecord> {
    let applicable = all_met(&guards);
    let holds = applicable.then(conclusion);
    if holds == Some(false) {
        return Err(violation(
            input.graph,
            format!("{name}: conclusion fails ({detail})"),
        ));
    }
    Ok(ImplicationRecord {
        name,
        guards,
        applicable,
        detail,
        holds,
    })
}

pub const CUBE_ARRAY: ([usize; 3], [usize; 3]) = ([3, 2, 1], [1, 2, 3]);
pub const DODECAHEDRON_ARRAY: ([usize; 5], [usize; 5]) = ([3, 2, 1, 1, 1], [1, 1, 1, 2, 3]);
pub const ICOSAHEDRON_ARRAY: ([usize; 3], [usize; 3]) = ([5, 2, 1], [1, 2, 5]);

fn is_platonic_multiplicity_three(arr: &IntersectionArray) -> bool {
    let same = |b: &[usize], c: &[usize]| arr.b == b && arr.c == c;
    same(&CUBE_ARRAY.0, &CUBE_ARRAY.1)
        || same(&DODECAHEDRON_ARRAY.0, &DODECAHEDRON_ARRAY.1)
        || same(&ICOSAHEDRON_ARRAY.0, &ICOSAHEDRON_ARRAY.1)
}

fn describe(values: &[(f64, usize)]) -> String {
    values
        .iter()
        .map(|(t, m)| format!("{t:.6}^{m}"))
        .collect::<Vec<_>>()
        .join(", ")
}

/// Multiplicity theorems instantiated on one graph:
///
/// * no eigenvalue `θ ≠ ±k` of multiplicity 1 in a 1-walk-regular graph;
/// * an eigenvalue `θ ≠ ±k` of multiplicity `m <= t`, `t >= 2` forces
///   distance-regularity;
/// * for `2 <= t' < D`, `k >= 3` and such an eigenvalue with `m <= t'`,
///   `b_{t'} = 1`;
/// * `b_{t'} = 1` for some `t' <= t` forces distance-regularity;
/// * multiplicity 3 in a 2-walk-regular, non-complete-multipartite graph with
///   `k >= 3` forces `k = 3, a_1 = a_2 = 0` or a distance-regular graph, the
///   latter being the cube, dodecahedron or icosahedron.
pub fn multiplicity_theorems(input: &BoundsInput) -> Result<Vec<ImplicationRecord>> {
    let t = input.order.unwrap_or(0);
    let drg = input.distance_regular.is_some();
    let nontrivial: Vec<(f64, usize)> = input.non_trivial().collect();
    let mut out = Vec::new();

    let simple: Vec<(f64, usize)> = nontrivial
        .iter()
        .copied()
        .filter(|&(_, m)| m == 1)
        .collect();
    out.push(implication(
        input,
        "no simple eigenvalue",
        vec![guard("1-walk-regular", t >= 1 && input.order.is_some())],
        format!(
            "eigenvalues θ ≠ ±k of multiplicity 1: [{}]",
            describe(&simple)
        ),
        || simple.is_empty(),
    )?);

    let small: Vec<(f64, usize)> = nontrivial
        .iter()
        .copied()
        .filter(|&(_, m)| m <= t)
        .collect();
    out.push(implication(
        input,
        "multiplicity at most t implies distance-regular",
        vec![
            guard("t >= 2", t >= 2),
            guard("eigenvalue θ ≠ ±k with m <= t", !small.is_empty()),
        ],
        format!("t = {t}, eigenvalues [{}]", describe(&small)),
        || drg,
    )?);

    let diameter = input.diameter;
    let min_mult = nontrivial.iter().map(|&(_, m)| m).min();
    for tp in 2..=t.min(diameter.saturating_sub(1)) {
        out.push(implication(
            input,
            "multiplicity at most t' forces b_t' = 1",
            vec![
                guard("k >= 3", input.k >= 3),
                guard(
                    "eigenvalue θ ≠ ±k with m <= t'",
                    min_mult.is_some_and(|m| m <= tp),
                ),
            ],
            format!("t' = {tp}, b_t' = {:?}", input.b(tp)),
            || input.b(tp) == Some(1),
        )?);
    }

    let first_bt_one = (1..=t.min(diameter.saturating_sub(1))).find(|&j| input.b(j) == Some(1));
    out.push(implication(
        input,
        "b_t = 1 implies distance-regular",
        vec![guard("b_j = 1 for some j <= t", first_bt_one.is_some())],
        format!("j = {first_bt_one:?}"),
        || drg,
    )?);

    let has_three = nontrivial.iter().any(|&(_, m)| m == 3);
    out.push(implication(
        input,
        "multiplicity 3 classification",
        vec![
            guard("2-walk-regular", t >= 2),
            guard("not complete multipartite", !input.complete_multipartite),
            guard("k >= 3", input.k >= 3),
            guard("eigenvalue θ ≠ ±k with m = 3", has_three),
        ],
        format!(
            "k = {}, a_1 = {:?}, a_2 = {:?}, distance-regular = {drg}",
            input.k,
            input.a(1),
            input.a(2)
        ),
        || {
            let cubic_branch = input.k == 3 && input.a(1) == Some(0) && input.a(2) == Some(0);
            let drg_branch = input
                .distance_regular
                .is_some_and(is_platonic_multiplicity_three);
            (cubic_branch || drg) && (!drg || drg_branch)
        },
    )?);
    Ok(out)
}

/// `⌈-θ_d⌉`, ignoring float noise just above an integer.
pub fn omega_of(theta_d: f64) -> usize {
    (-theta_d - 1e-9).ceil().max(0.0) as usize
}

#[derive(Debug, Clone, Serialize)]
pub struct FinitenessRecord {
    pub guards: Vec<Guard>,
    pub applicable: bool,
    /// Natural logarithm of the bound, so huge bounds stay finite.
    pub log_bound: Option<f64>,
    /// Natural logarithm of the bounded quantity.
    pub log_value: Option<f64>,
    pub pass: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FinitenessReport {
    pub omega: usize,
    /// `c_2 / a_1` truncated below 1.
    pub epsilon: Option<f64>,
    /// `|V| < (2ω²/ε)^D · D · k`.
    pub vertex_bound: FinitenessRecord,
    /// `k < D² (2ω²/ε)^{2D+4}`.
    pub valency_bound: FinitenessRecord,
}

/// Largest `ε < 1` used when `c_2 >= a_1`.
pub const EPSILON_CAP: f64 = 1.0 - 1e-12;

pub fn finiteness_bounds(input: &BoundsInput) -> Result<FinitenessReport> {
    let omega = omega_of(input.theta_d());
    let a1 = input.a(1);
    let c2 = input.c(2);
    let epsilon = match (a1, c2) {
        (Some(a1), Some(c2)) if a1 > 0 => Some((c2 as f64 / a1 as f64).min(EPSILON_CAP)),
        _ => None,
    };
    let d = input.diameter as f64;
    let base_guards = || {
        vec![
            guard("2-walk-regular", input.order_at_least(2)),
            guard("ω >= 2", omega >= 2),
            guard("a_1 > 0", epsilon.is_some()),
        ]
    };
    let log_ratio = epsilon.map(|e| (2.0 * (omega * omega) as f64 / e).ln());

    let guards = base_guards();
    let applicable = all_met(&guards);
    let mut vertex_bound = FinitenessRecord {
        guards,
        applicable,
        log_bound: None,
        log_value: None,
        pass: None,
    };
    if applicable {
        let bound = d * log_ratio.unwrap() + d.ln() + (input.k as f64).ln();
        let value = (input.graph.n() as f64).ln();
        vertex_bound.log_bound = Some(bound);
        vertex_bound.log_value = Some(value);
        vertex_bound.pass = Some(value < bound);
        if value >= bound {
            return Err(violation(
                input.graph,
                format!("|V| bound fails: ln|V| = {value} >= {bound}"),
            ));
        }
    }

    let mut guards = base_guards();
    guards.push(guard("D >= 3", input.diameter >= 3));
    let applicable = all_met(&guards);
    let mut valency_bound = FinitenessRecord {
        guards,
        applicable,
        log_bound: None,
        log_value: None,
        pass: None,
    };
    if applicable {
        let bound = 2.0 * d.ln() + (2.0 * d + 4.0) * log_ratio.unwrap();
        let value = (input.k as f64).ln();
        valency_bound.log_bound = Some(bound);
        valency_bound.log_value = Some(value);
        valency_bound.pass = Some(value < bound);
        if value >= bound {
            return Err(violation(
                input.graph,
                format!("valency bound fails: ln k = {value} >= {bound}"),
            ));
        }
    }
    Ok(FinitenessReport {
        omega,
        epsilon,
        vertex_bound,
        valency_bound,
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct BoundsReport {
    pub godsil: GodsilReport,
    pub terwilliger: TerwilligerReport,
    pub local_multiplicity: Vec<LocalMultiplicityRecord>,
    pub fundamental: FundamentalRecord,
    pub multiplicity: Vec<ImplicationRecord>,
    pub finiteness: FinitenessReport,
}

pub fn bounds_report(input: &BoundsInput) -> Result<BoundsReport> {
    Ok(BoundsReport {
        godsil: godsil_bound(input)?,
        terwilliger: terwilliger_local_bounds(input)?,
        local_multiplicity: local_multiplicity_check(input)?,
        fundamental: fundamental_bound(input)?,
        multiplicity: multiplicity_theorems(input)?,
        finiteness: finiteness_bounds(input)?,
    })
}

/// Owned inputs for [`BoundsInput`], computed from a connected regular graph.
pub struct BoundsData {
    pub k: usize,
    pub spectrum: Spectrum,
    pub order: Option<usize>,
    pub intersection: Option<IntersectionTable>,
    pub distance_regular: Option<IntersectionArray>,
    pub diameter: usize,
    pub complete_multipartite: bool,
    pub bipartite: bool,
    pub local: Vec<Vec<f64>>,
}

impl BoundsData {
    pub fn compute(g: &Graph) -> Result<Self> {
        let k = g.require_connected_regular()?;
        let table = crate::exact_walk::WalkTable::compute(g)?;
        let walk = crate::exact_walk::WalkRegularityReport::from_table(g, &table)?;
        let spectrum = crate::spectral::checked_spectrum(g, &table)?;
        let metrics = g.metrics();
        Ok(BoundsData {
            k,
            spectrum,
            order: walk.order,
            intersection: walk.intersection,
            distance_regular: walk.intersection_array,
            diameter: walk.diameter,
            complete_multipartite: metrics.complete_multipartite,
            bipartite: metrics.bipartite,
            local: local_spectra(g)?,
        })
    }

    pub fn input<'a>(&'a self, g: &'a Graph) -> BoundsInput<'a> {
        BoundsInput {
            graph: g,
            k: self.k,
            spectrum: &self.spectrum,
            order: self.order,
            intersection: self.intersection.as_ref(),
            distance_regular: self.distance_regular.as_ref(),
            diameter: self.diameter,
            complete_multipartite: self.complete_multipartite,
            bipartite: self.bipartite,
            local: &self.local,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::coclique_extension;
    use crate::graph::*;

    fn data(g: &Graph) -> BoundsData {
        BoundsData::compute(g).unwrap()
    }

    #[test]
    fn godsil_values() {
        assert_eq!(godsil_value(3), 5);
        assert_eq!(godsil_value(2), 2);
        let p = petersen();
        let d = data(&p);
        let r = godsil_bound(&d.input(&p)).unwrap();
        assert!(r.applicable);
        let five = r.records.iter().find(|r| r.multiplicity == 5).unwrap();
        assert_eq!(five.bound, 14);
        assert!(five.pass);
    }

    #[test]
    fn petersen_local_bounds() {
        let p = petersen();
        let d = data(&p);
        let r = terwilliger_local_bounds(&d.input(&p)).unwrap();
        assert!(r.asserted);
        assert!((r.lower_bound.unwrap() + 2.0).abs() < 1e-12);
        assert!((r.upper_bound.unwrap() - 1.0).abs() < 1e-12);
        assert!(r
            .vertices
            .iter()
            .all(|v| v.eta_min.abs() < 1e-12 && v.eta_1.unwrap().abs() < 1e-12));
    }

    #[test]
    fn icosahedron_local_structure() {
        let g = icosahedron();
        let d = data(&g);
        let input = d.input(&g);
        let r = terwilliger_local_bounds(&input).unwrap();
        let golden = -(1.0 + 5f64.sqrt()) / 2.0;
        assert!((r.lower_bound.unwrap() - golden).abs() < 1e-9);
        assert!(r.vertices.iter().all(|v| (v.eta_min - golden).abs() < 1e-9));

        let lm = local_multiplicity_check(&input).unwrap();
        let applicable: Vec<_> = lm.iter().filter(|r| r.applicable).collect();
        assert_eq!(applicable.len(), 2);
        assert!(applicable
            .iter()
            .all(|r| r.multiplicity == 3 && r.observed.unwrap() >= 2));

        let f = fundamental_bound(&input).unwrap();
        assert_eq!(f.equality, Some(true));
        assert!((f.lhs.unwrap() + 20.0 / 9.0).abs() < 1e-9);
        let a = f.analysis.unwrap();
        assert_eq!(
            a.local_srg,
            Some(SrgParameters {
                v: 5,
                k: 2,
                lambda: 0,
                mu: 1
            })
        );
    }

    #[test]
    fn fundamental_cube_and_petersen() {
        let c = cube();
        let d = data(&c);
        let f = fundamental_bound(&d.input(&c)).unwrap();
        assert_eq!(f.equality, Some(true));
        assert_eq!(f.analysis.unwrap().branch, "bipartite");

        let p = petersen();
        let d = data(&p);
        let f = fundamental_bound(&d.input(&p)).unwrap();
        assert_eq!(f.equality, Some(false));
        assert!((f.gap.unwrap() - 4.0).abs() < 1e-9);
    }

    #[test]
    fn coclique_extension_breaks_upper_local_bound() {
        let g = coclique_extension(&rook(4).unwrap(), 2).unwrap().graph;
        let d = data(&g);
        assert_eq!(d.order, Some(1));
        let r = terwilliger_local_bounds(&d.input(&g)).unwrap();
        assert!(!r.asserted);
        assert_eq!(r.b1, Some(7));
        assert!((r.upper_bound.unwrap() - 4.0 / 3.0).abs() < 1e-9);
        assert!(r
            .vertices
            .iter()
            .all(|v| (v.eta_1.unwrap() - 4.0).abs() < 1e-9 && !v.upper_ok));
        assert_eq!(r.pass, Some(false));
    }

    #[test]
    fn multiplicity_examples() {
        let g = dodecahedron();
        let d = data(&g);
        let recs = multiplicity_theorems(&d.input(&g)).unwrap();
        let drg = recs
            .iter()
            .find(|r| r.name == "multiplicity at most t implies distance-regular")
            .unwrap();
        assert_eq!(drg.holds, Some(true));
        let b1 = recs
            .iter()
            .filter(|r| r.name == "multiplicity at most t' forces b_t' = 1" && r.applicable)
            .count();
        assert_eq!(b1, 2);

        let g = generalized_petersen(8, 3).unwrap();
        let d = data(&g);
        let recs = multiplicity_theorems(&d.input(&g)).unwrap();
        let drg = recs
            .iter()
            .find(|r| r.name == "multiplicity at most t implies distance-regular")
            .unwrap();
        assert!(!drg.applicable);
        let three = recs
            .iter()
            .find(|r| r.name == "multiplicity 3 classification")
            .unwrap();
        assert_eq!(three.holds, Some(true));
    }

    #[test]
    fn finiteness_evaluates_in_log_space() {
        let g = dodecahedron();
        let d = data(&g);
        let f = finiteness_bounds(&d.input(&g)).unwrap();
        assert_eq!(f.omega, 3);
        // a_1 = 0 on the dodecahedron.
        assert!(!f.vertex_bound.applicable);

        let g = icosahedron();
        let d = data(&g);
        let f = finiteness_bounds(&d.input(&g)).unwrap();
        assert_eq!(f.omega, 3);
        // c_2 = a_1 = 2, so ε is capped just below 1.
        assert_eq!(f.epsilon, Some(EPSILON_CAP));
        assert_eq!(f.vertex_bound.pass, Some(true));
        assert_eq!(f.valency_bound.pass, Some(true));
        assert_eq!(omega_of(-2.0 - 1e-12), 2);
    }
}
