//! Cliques, the Delsarte bound and geometric decompositions.

use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_walk::{intersection_numbers, minimal_poly_degree, walk_regularity_order};
use crate::graph::distance::bfs;
use crate::graph::{Graph, Vertex};
use crate::spectral::{self, default_group_tolerance, Idempotent, Spectrum};

pub const DEFAULT_CLIQUE_CAP: usize = 1_000_000;
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;
/// `‖Eχ‖ <= DELSARTE_TOL · √|C|` marks a Delsarte clique.
pub const DELSARTE_TOL: f64 = 1e-7;
/// Distance of `1 - k/θ_d` to an integer below which it is a candidate.
pub const INTEGER_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueSet {
    /// Sorted vertex lists in lexicographic order.
    pub cliques: Vec<Vec<Vertex>>,
    pub maximal: bool,
}

impl CliqueSet {
    pub fn max_size(&self) -> usize {
        self.cliques.iter().map(Vec::len).max().unwrap_or(0)
    }
}

pub fn check_clique(g: &Graph, c: &[Vertex]) -> Result<()> {
    for &v in c {
        g.check_vertex(v)?;
    }
    for (i, &u) in c.iter().enumerate() {
        for &v in &c[i + 1..] {
            if !g.is_adjacent(u, v) {
                return Err(Error::NotAClique(u, v));
            }
        }
    }
    Ok(())
}

struct Enumerator<'a> {
    g: &'a Graph,
    cap: usize,
    found: &'a AtomicUsize,
}

impl Enumerator<'_> {
    fn restrict(&self, set: &[Vertex], v: Vertex) -> Vec<Vertex> {
        set.iter()
            .copied()
            .filter(|&w| self.g.is_adjacent(v, w))
            .collect()
    }

    fn run(
        &self,
        r: &mut Vec<Vertex>,
        mut p: Vec<Vertex>,
        mut x: Vec<Vertex>,
        out: &mut Vec<Vec<Vertex>>,
    ) -> Result<()> {
        if p.is_empty() {
            if x.is_empty() {
                if self.found.fetch_add(1, Ordering::Relaxed) >= self.cap {
                    return Err(Error::BudgetExceeded(self.cap as u64));
                }
                let mut c = r.clone();
                c.sort_unstable();
                out.push(c);
            }
            return Ok(());
        }
        let pivot = p
            .iter()
            .chain(&x)
            .copied()
            .max_by_key(|&u| {
                (
                    p.iter().filter(|&&w| self.g.is_adjacent(u, w)).count(),
                    usize::MAX - u,
                )
            })
            .unwrap();
        let branch: Vec<Vertex> = p
            .iter()
            .copied()
            .filter(|&v| !self.g.is_adjacent(pivot, v))
            .collect();
        for v in branch {
            r.push(v);
            self.run(r, self.restrict(&p, v), self.restrict(&x, v), out)?;
            r.pop();
            p.retain(|&w| w != v);
            x.push(v);
        }
        Ok(())
    }
}

/// All maximal cliques, enumerated by pivoting Bron–Kerbosch rooted at each
/// clique's smallest vertex. Fails once more than `cap` cliques are found.
pub fn maximal_cliques_capped(g: &Graph, cap: usize) -> Result<CliqueSet> {
    let found = AtomicUsize::new(0);
    let e = Enumerator {
        g,
        cap,
        found: &found,
    };
    let parts: Vec<Vec<Vec<Vertex>>> = (0..g.n())
        .into_par_iter()
        .map(|v| {
            let (x, p): (Vec<Vertex>, Vec<Vertex>) = g.neighbors(v).iter().partition(|&&w| w < v);
            let mut out = Vec::new();
            e.run(&mut vec![v], p, x, &mut out)?;
            Ok(out)
        })
        .collect::<Result<_>>()?;
    let mut cliques: Vec<Vec<Vertex>> = parts.into_iter().flatten().collect();
    cliques.sort();
    Ok(CliqueSet {
        cliques,
        maximal: true,
    })
}

pub fn maximal_cliques(g: &Graph) -> Result<CliqueSet> {
    maximal_cliques_capped(g, DEFAULT_CLIQUE_CAP)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DelsarteBound {
    /// `1 - k/θ_d`.
    pub bound: f64,
    /// The nearest integer when `bound` is within [`INTEGER_TOL`] of it.
    pub integer_candidate: Option<usize>,
}

pub fn delsarte_bound(k: usize, theta_d: f64) -> Result<DelsarteBound> {
    if !(theta_d < 0.0) {
        return Err(Error::InvalidParams(format!(
            "the Delsarte bound needs a negative smallest eigenvalue, got {theta_d}"
        )));
    }
    let bound = 1.0 - k as f64 / theta_d;
    let rounded = bound.round();
    Ok(DelsarteBound {
        bound,
        integer_candidate: ((bound - rounded).abs() <= INTEGER_TOL).then_some(rounded as usize),
    })
}

/// `‖Eχ‖ <= 1e-7 √|C|` for the idempotent of the smallest eigenvalue.
pub fn is_delsarte_clique(g: &Graph, e_min: &Idempotent, c: &[Vertex]) -> Result<bool> {
    check_clique(g, c)?;
    if e_min.matrix.nrows() != g.n() {
        return Err(Error::InvalidParams(
            "idempotent belongs to a different graph".into(),
        ));
    }
    if c.is_empty() {
        return Ok(false);
    }
    Ok(e_min.apply_indicator(c).norm() <= DELSARTE_TOL * (c.len() as f64).sqrt())
}

#[derive(Debug, Clone, Serialize)]
pub struct CliqueRankRecord {
    pub theta: f64,
    pub rank: usize,
    pub bound: usize,
    pub max_clique: usize,
    pub tight: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CliqueRankReport {
    pub records: Vec<CliqueRankRecord>,
    pub pass: bool,
}

/// `|C| <= m + 1` for every clique and every idempotent of rank `m` with
/// `θ ≠ k`. A violation is reported as a theorem violation.
pub fn clique_rank_check(
    g: &Graph,
    idempotents: &[Idempotent],
    cliques: &CliqueSet,
) -> Result<CliqueRankReport> {
    let k = g.require_connected_regular()?;
    if !matches!(walk_regularity_order(g)?.order, Some(t) if t >= 1) {
        return Err(Error::InvalidGraph(
            "the clique-rank bound needs a 1-walk-regular graph".into(),
        ));
    }
    let max_clique = cliques.max_size();
    let records: Vec<CliqueRankRecord> = idempotents
        .iter()
        .filter(|e| (e.theta - k as f64).abs() > 1e-6)
        .map(|e| CliqueRankRecord {
            theta: e.theta,
            rank: e.rank,
            bound: e.rank + 1,
            max_clique,
            tight: max_clique == e.rank + 1,
        })
        .collect();
    if let Some(r) = records.iter().find(|r| r.max_clique > r.bound) {
        return Err(Error::TheoremViolation(format!(
            "clique of size {} exceeds m + 1 = {} for θ = {}",
            r.max_clique, r.bound, r.theta
        )));
    }
    Ok(CliqueRankReport {
        records,
        pass: true,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueProfile {
    pub covering_radius: usize,
    /// `φ_i` for `i = 0..=covering_radius`: the number of clique vertices at
    /// distance `i` from a vertex at distance `i` from the clique, or `None`
    /// where it varies.
    pub phi: Vec<Option<usize>>,
}

/// Covering radius and `φ_i` profile of a Delsarte clique, with `t` the
/// walk-regularity order and `d + 1` the number of distinct eigenvalues.
/// `φ_i` must be constant for `i < t` and the covering radius at most `d - 1`.
pub fn clique_profile_with(g: &Graph, c: &[Vertex], t: usize, d: usize) -> Result<CliqueProfile> {
    check_clique(g, c)?;
    if c.is_empty() {
        return Err(Error::InvalidParams("empty clique".into()));
    }
    if !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let to_clique = bfs(g, c);
    let covering_radius = to_clique.iter().copied().max().unwrap() as usize;
    let dist = g.distances();
    let mut first: Vec<Option<(Vertex, usize)>> = vec![None; covering_radius + 1];
    let mut phi: Vec<Option<usize>> = vec![None; covering_radius + 1];
    let mut varies = vec![false; covering_radius + 1];
    for x in 0..g.n() {
        let i = to_clique[x] as usize;
        let count = c.iter().filter(|&&y| dist.get(x, y) == Some(i)).count();
        match first[i] {
            None => {
                first[i] = Some((x, count));
                phi[i] = Some(count);
            }
            Some((y, other)) if other != count && !varies[i] => {
                varies[i] = true;
                phi[i] = None;
                if i < t {
                    return Err(Error::constancy("clique profile φ", i, y, x));
                }
            }
            Some(_) => {}
        }
    }
    if covering_radius + 1 > d.max(1) {
        return Err(Error::TheoremViolation(format!(
            "Delsarte clique has covering radius {covering_radius} > d - 1 = {}",
            d as i64 - 1
        )));
    }
    Ok(CliqueProfile {
        covering_radius,
        phi,
    })
}

pub fn clique_profile(g: &Graph, c: &[Vertex], t: usize) -> Result<CliqueProfile> {
    clique_profile_with(g, c, t, minimal_poly_degree(g)?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CliqueCover {
    /// Chosen Delsarte cliques in the order they were selected.
    pub lines: Vec<Vec<Vertex>>,
    /// Line index of each edge, in [`Graph::edges`] order.
    pub edge_assignment: Vec<usize>,
    /// Number of lines through each vertex.
    pub lines_per_vertex: Vec<usize>,
}

/// Delsarte cliques of `g` given its spectrum; empty when the bound is not
/// integral.
pub fn delsarte_cliques(g: &Graph, s: &Spectrum, e_min: &Idempotent) -> Result<Vec<Vec<Vertex>>> {
    let k = g.require_connected_regular()?;
    let Some(size) = delsarte_bound(k, s.smallest())?.integer_candidate else {
        return Ok(Vec::new());
    };
    let all = maximal_cliques(g)?;
    let mut out = Vec::new();
    for c in all.cliques.into_iter().filter(|c| c.len() == size) {
        if is_delsarte_clique(g, e_min, &c)? {
            out.push(c);
        }
    }
    Ok(out)
}

/// Exact cover of the edges by Delsarte cliques, or `None` when none
/// exists. Exceeding `node_budget` search nodes is an error, since the
/// answer is then unknown.
pub fn geometric_decomposition_with(
    g: &Graph,
    s: &Spectrum,
    e_min: &Idempotent,
    node_budget: u64,
) -> Result<Option<CliqueCover>> {
    let cliques = delsarte_cliques(g, s, e_min)?;
    if cliques.is_empty() {
        return Ok(None);
    }
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let edge_index = |u: Vertex, v: Vertex| edges.binary_search(&(u.min(v), u.max(v))).unwrap();
    let clique_edges: Vec<Vec<usize>> = cliques
        .iter()
        .map(|c| {
            let mut es: Vec<usize> = Vec::new();
            for (i, &u) in c.iter().enumerate() {
                es.extend(c[i + 1..].iter().map(|&v| edge_index(u, v)));
            }
            es.sort_unstable();
            es
        })
        .collect();
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); edges.len()];
    for (ci, es) in clique_edges.iter().enumerate() {
        for &e in es {
            containing[e].push(ci);
        }
    }
    if containing.iter().any(Vec::is_empty) {
        return Ok(None);
    }

    let mut search = CoverSearch {
        clique_edges: &clique_edges,
        containing: &containing,
        assignment: vec![usize::MAX; edges.len()],
        chosen: Vec::new(),
        nodes: 0,
        budget: node_budget,
    };
    if !search.solve(0)? {
        return Ok(None);
    }
    let lines: Vec<Vec<Vertex>> = search
        .chosen
        .iter()
        .map(|&ci| cliques[ci].clone())
        .collect();
    let mut line_of = vec![usize::MAX; cliques.len()];
    for (li, &ci) in search.chosen.iter().enumerate() {
        line_of[ci] = li;
    }
    let edge_assignment = search.assignment.iter().map(|&ci| line_of[ci]).collect();
    let mut lines_per_vertex = vec![0; g.n()];
    for line in &lines {
        for &v in line {
            lines_per_vertex[v] += 1;
        }
    }
    Ok(Some(CliqueCover {
        lines,
        edge_assignment,
        lines_per_vertex,
    }))
}

struct CoverSearch<'a> {
    clique_edges: &'a [Vec<usize>],
    containing: &'a [Vec<usize>],
    /// Chosen clique per edge, `usize::MAX` when uncovered.
    assignment: Vec<usize>,
    chosen: Vec<usize>,
    nodes: u64,
    budget: u64,
}

impl CoverSearch<'_> {
    /// Edges below `from` are covered.
    fn solve(&mut self, from: usize) -> Result<bool> {
        let Some(edge) = (from..self.assignment.len()).find(|&e| self.assignment[e] == usize::MAX)
        else {
            return Ok(true);
        };
        for &ci in &self.containing[edge] {
            if self.clique_edges[ci]
                .iter()
                .any(|&e| self.assignment[e] != usize::MAX)
            {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::BudgetExceeded(self.budget));
            }
            for &e in &self.clique_edges[ci] {
                self.assignment[e] = ci;
            }
            self.chosen.push(ci);
            if self.solve(edge + 1)? {
                return Ok(true);
            }
            self.chosen.pop();
            for &e in &self.clique_edges[ci] {
                self.assignment[e] = usize::MAX;
            }
        }
        Ok(false)
    }
}

/// Requires a connected regular graph of walk-regularity order at least 1.
pub fn geometric_decomposition(g: &Graph, node_budget: u64) -> Result<Option<CliqueCover>> {
    g.require_connected_regular()?;
    if !matches!(walk_regularity_order(g)?.order, Some(t) if t >= 1) {
        return Err(Error::InvalidGraph(
            "geometric decomposition needs a 1-walk-regular graph".into(),
        ));
    }
    let s = spectral::spectrum(g, default_group_tolerance(g))?;
    let e_min = spectral::idempotent(g, &s, s.d())?;
    geometric_decomposition_with(g, &s, &e_min, node_budget)
}

/// Lines are adjacent when they share a vertex.
pub fn dual_graph(cover: &CliqueCover, g: &Graph) -> Result<Graph> {
    let mut through: Vec<Vec<usize>> = vec![Vec::new(); g.n()];
    for (li, line) in cover.lines.iter().enumerate() {
        for &v in line {
            g.check_vertex(v)?;
            through[v].push(li);
        }
    }
    let mut edges = Vec::new();
    for ls in &through {
        for (i, &a) in ls.iter().enumerate() {
            edges.extend(ls[i + 1..].iter().map(|&b| (a, b)));
        }
    }
    Graph::from_edges(cover.lines.len(), edges)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SufficiencyVerdict {
    GeometricGuaranteed,
    Inconclusive,
    GuardsUnmet,
}

#[derive(Debug, Clone, Serialize)]
pub struct SufficiencyReport {
    pub omega: usize,
    pub two_walk_regular: bool,
    pub diameter_at_least_two: bool,
    pub theta_d_in_range: bool,
    pub a1: Option<usize>,
    pub c2: Option<usize>,
    pub verdict: SufficiencyVerdict,
    /// Whether the exact-cover search agreed with a guaranteed verdict;
    /// `None` when not run or over budget.
    pub decomposition_found: Option<bool>,
}

/// `a_1 > ω⁴ c_2` under met guards.
pub fn sufficiency_verdict(
    guards_met: bool,
    a1: usize,
    c2: usize,
    omega: usize,
) -> SufficiencyVerdict {
    if !guards_met {
        SufficiencyVerdict::GuardsUnmet
    } else if a1 as u128 > (omega as u128).pow(4) * c2 as u128 {
        SufficiencyVerdict::GeometricGuaranteed
    } else {
        SufficiencyVerdict::Inconclusive
    }
}

/// Evaluates the sufficient condition `a_1 > ω⁴ c_2` for being geometric,
/// with guards: order at least 2, diameter at least 2 and
/// `θ_d ∈ [-ω, 1-ω)`. A guaranteed verdict is confirmed by the exact-cover
/// search; disagreement is a theorem violation.
pub fn geometric_sufficiency(g: &Graph, omega: usize) -> Result<SufficiencyReport> {
    g.require_connected_regular()?;
    let order = walk_regularity_order(g)?.order;
    let diameter = g.distances().diameter();
    let two_walk_regular = matches!(order, Some(t) if t >= 2);
    let diameter_at_least_two = diameter >= 2;
    let s = spectral::spectrum(g, default_group_tolerance(g))?;
    let theta_d = s.smallest();
    let w = omega as f64;
    let theta_d_in_range = theta_d >= -w - s.tolerance() && theta_d < 1.0 - w - s.tolerance();
    let (a1, c2) = if two_walk_regular && diameter_at_least_two {
        let t = intersection_numbers(g, 2)?;
        (Some(t.a[1]), Some(t.c[2]))
    } else {
        (None, None)
    };
    let guards = two_walk_regular && diameter_at_least_two && theta_d_in_range;
    let verdict = sufficiency_verdict(guards, a1.unwrap_or(0), c2.unwrap_or(0), omega);
    let mut decomposition_found = None;
    if verdict == SufficiencyVerdict::GeometricGuaranteed {
        let e_min = spectral::idempotent(g, &s, s.d())?;
        match geometric_decomposition_with(g, &s, &e_min, DEFAULT_NODE_BUDGET) {
            Ok(Some(_)) => decomposition_found = Some(true),
            Ok(None) => {
                return Err(Error::TheoremViolation(
                    "a_1 > ω⁴c_2 holds but no geometric decomposition exists".into(),
                ))
            }
            Err(Error::BudgetExceeded(_)) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(SufficiencyReport {
        omega,
        two_walk_regular,
        diameter_at_least_two,
        theta_d_in_range,
        a1,
        c2,
        verdict,
        decomposition_found,
    })
}
