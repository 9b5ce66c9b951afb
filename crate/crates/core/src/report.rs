//! Whole-graph analysis, its JSON report and the distance-distribution
//! diagram.

use std::fmt::Write as _;

use serde::Serialize;
use serde_json::Value;

use crate::bounds::{bounds_report, local_spectra, BoundsInput, BoundsReport};
use crate::clique::{
    self, clique_profile_with, clique_rank_check, delsarte_bound, delsarte_cliques, dual_graph,
    geometric_decomposition_with, geometric_sufficiency, maximal_cliques_capped, CliqueCover,
    CliqueProfile, CliqueRankReport, DelsarteBound, SufficiencyReport,
};
use crate::error::{Error, Result};
use crate::exact_walk::{WalkRegularityReport, WalkTable};
use crate::graph::graph6::encode_graph6;
use crate::graph::{Graph, GraphMetrics};
use crate::spectral::{
    checked_spectrum, cosine_sequence, idempotent_constancy_order, minimal_idempotents,
    CosineSequence, Eigenvalue,
};

pub const SCHEMA: &str = "walkreg-report/1";
pub const SIGNIFICANT_DIGITS: usize = 12;

/// Where a graph came from, when it was built by a construction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Provenance {
    pub operation: String,
    pub inputs: Vec<String>,
    pub guaranteed_order: Option<usize>,
}

#[derive(Debug, Clone)]
pub struct AnalysisOptions {
    pub node_budget: u64,
    pub clique_cap: usize,
    /// Run clique enumeration and the geometric decomposition.
    pub geometry: bool,
    pub provenance: Option<Provenance>,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        AnalysisOptions {
            node_budget: clique::DEFAULT_NODE_BUDGET,
            clique_cap: clique::DEFAULT_CLIQUE_CAP,
            geometry: true,
            provenance: None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct GraphInfo {
    pub n: usize,
    pub edges: usize,
    pub graph6: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectralSection {
    pub tolerance: f64,
    pub eigenvalues: Vec<Eigenvalue>,
    /// Order read off the idempotents; always equal to the exact order.
    pub idempotent_order: Option<usize>,
    /// Cosine sequences up to the walk-regularity order.
    pub cosines: Vec<CosineSequence>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GeometryStatus {
    Geometric,
    NotGeometric,
    /// The exact-cover search ran out of budget.
    Unknown,
    /// Preconditions unmet, or geometry disabled.
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct GeometrySection {
    pub status: GeometryStatus,
    pub cover: Option<CliqueCover>,
    pub dual_graph6: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CliqueSection {
    pub maximal_cliques: usize,
    pub clique_number: usize,
    pub delsarte: Option<DelsarteBound>,
    pub delsarte_cliques: usize,
    pub clique_rank: Option<CliqueRankReport>,
    /// Profile of the lexicographically first Delsarte clique.
    pub profile: Option<CliqueProfile>,
    pub geometry: GeometrySection,
    pub sufficiency: Option<SufficiencyReport>,
}

#[derive(Debug, Clone, Serialize)]
pub struct AnalysisReport {
    pub schema: &'static str,
    pub graph: GraphInfo,
    pub metrics: GraphMetrics,
    /// Why the walk analyses did not run, if they did not.
    pub skipped: Option<String>,
    pub walk: Option<WalkRegularityReport>,
    pub spectral: Option<SpectralSection>,
    pub bounds: Option<BoundsReport>,
    pub cliques: Option<CliqueSection>,
    pub provenance: Option<Provenance>,
}

impl AnalysisReport {
    pub fn order(&self) -> Option<usize> {
        self.walk.as_ref().and_then(|w| w.order)
    }

    pub fn to_json(&self) -> String {
        to_rounded_json(self)
    }
}

/// Pretty JSON, keys sorted, reals rounded to [`SIGNIFICANT_DIGITS`].
pub fn to_rounded_json<T: Serialize>(value: &T) -> String {
    let mut value = serde_json::to_value(value).expect("reports always serialize");
    round_reals(&mut value);
    let mut out = serde_json::to_string_pretty(&value).expect("values always serialize");
    out.push('\n');
    out
}

/// `x` rounded to [`SIGNIFICANT_DIGITS`] significant digits, with `-0`
/// normalised to `0`.
pub fn round_significant(x: f64) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return if x == 0.0 { 0.0 } else { x };
    }
    let r: f64 = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, x)
        .parse()
        .unwrap();
    if r == 0.0 {
        0.0
    } else {
        r
    }
}

fn round_reals(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => {
            let r = round_significant(n.as_f64().unwrap());
            *v = serde_json::Number::from_f64(r).map_or(Value::Null, Value::Number);
        }
        Value::Array(items) => items.iter_mut().for_each(round_reals),
        Value::Object(map) => map.values_mut().for_each(round_reals),
        _ => {}
    }
}

/// Runs every analysis that applies to `g`. Graphs that are not connected
/// and regular get metrics only.
pub fn analyze(g: &Graph, options: &AnalysisOptions) -> Result<AnalysisReport> {
    let metrics = g.metrics();
    let mut report = AnalysisReport {
        schema: SCHEMA,
        graph: GraphInfo {
            n: g.n(),
            edges: g.edge_count(),
            graph6: encode_graph6(g)?,
        },
        metrics,
        skipped: None,
        walk: None,
        spectral: None,
        bounds: None,
        cliques: None,
        provenance: options.provenance.clone(),
    };
    let k = match g.require_connected_regular() {
        Ok(k) if g.n() > 0 => k,
        Ok(_) => {
            report.skipped = Some("empty graph".into());
            return Ok(report);
        }
        Err(e @ (Error::Disconnected | Error::NotRegular)) => {
            report.skipped = Some(e.to_string());
            return Ok(report);
        }
        Err(e) => return Err(e),
    };

    let table = WalkTable::compute(g)?;
    let walk = WalkRegularityReport::from_table(g, &table)?;
    let spectrum = checked_spectrum(g, &table)?;
    let idempotents = minimal_idempotents(g, &spectrum)?;
    let idempotent_order = idempotent_constancy_order(&idempotents);
    if idempotent_order != walk.order {
        return Err(Error::OracleDisagreement {
            exact: walk.order,
            spectral: idempotent_order,
        });
    }
    let cosines = match walk.order {
        Some(t) => idempotents
            .iter()
            .map(|e| cosine_sequence(g, e, t))
            .collect::<Result<_>>()?,
        None => Vec::new(),
    };

    let local = local_spectra(g)?;
    let input = BoundsInput {
        graph: g,
        k,
        spectrum: &spectrum,
        order: walk.order,
        intersection: walk.intersection.as_ref(),
        distance_regular: walk.intersection_array.as_ref(),
        diameter: walk.diameter,
        complete_multipartite: report.metrics.complete_multipartite,
        bipartite: report.metrics.bipartite,
        local: &local,
    };
    report.bounds = Some(bounds_report(&input)?);

    if options.geometry {
        let cliques = maximal_cliques_capped(g, options.clique_cap)?;
        let theta_d = spectrum.smallest();
        let delsarte = (theta_d < 0.0)
            .then(|| delsarte_bound(k, theta_d))
            .transpose()?;
        let one_wr = matches!(walk.order, Some(t) if t >= 1);
        let mut section = CliqueSection {
            maximal_cliques: cliques.cliques.len(),
            clique_number: cliques.max_size(),
            delsarte,
            delsarte_cliques: 0,
            clique_rank: None,
            profile: None,
            geometry: GeometrySection {
                status: GeometryStatus::Skipped,
                cover: None,
                dual_graph6: None,
            },
            sufficiency: None,
        };
        if let (Some(bound), true) = (delsarte, one_wr) {
            if cliques.max_size() as f64 > bound.bound + 1e-6 {
                return Err(Error::TheoremViolation(format!(
                    "clique of size {} exceeds the Delsarte bound {} [graph6: {}]",
                    cliques.max_size(),
                    bound.bound,
                    report.graph.graph6
                )));
            }
            section.clique_rank = Some(clique_rank_check(g, &idempotents, &cliques)?);
            let e_min = &idempotents[spectrum.d()];
            let ds = delsarte_cliques(g, &spectrum, e_min)?;
            section.delsarte_cliques = ds.len();
            if let Some(first) = ds.first() {
                section.profile = Some(clique_profile_with(
                    g,
                    first,
                    walk.order.unwrap(),
                    spectrum.d(),
                )?);
            }
            section.geometry =
                match geometric_decomposition_with(g, &spectrum, e_min, options.node_budget) {
                    Ok(Some(cover)) => GeometrySection {
                        status: GeometryStatus::Geometric,
                        dual_graph6: Some(encode_graph6(&dual_graph(&cover, g)?)?),
                        cover: Some(cover),
                    },
                    Ok(None) => GeometrySection {
                        status: GeometryStatus::NotGeometric,
                        cover: None,
                        dual_graph6: None,
                    },
                    Err(Error::BudgetExceeded(_)) => GeometrySection {
                        status: GeometryStatus::Unknown,
                        cover: None,
                        dual_graph6: None,
                    },
                    Err(e) => return Err(e),
                };
            section.sufficiency = Some(geometric_sufficiency(g, crate::bounds::omega_of(theta_d))?);
        }
        report.cliques = Some(section);
    }

    report.spectral = Some(SpectralSection {
        tolerance: spectrum.tolerance(),
        eigenvalues: spectrum.eigenvalues().to_vec(),
        idempotent_order,
        cosines,
    });
    report.walk = Some(walk);
    Ok(report)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Range {
    pub min: usize,
    pub max: usize,
}

impl Range {
    fn new(v: usize) -> Self {
        Range { min: v, max: v }
    }

    fn add(&mut self, v: usize) {
        self.min = self.min.min(v);
        self.max = self.max.max(v);
    }

    pub fn exact(&self) -> Option<usize> {
        (self.min == self.max).then_some(self.min)
    }
}

impl std::fmt::Display for Range {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self.exact() {
            Some(v) => write!(f, "{v}"),
            None => write!(f, "{}..{}", self.min, self.max),
        }
    }
}

/// Per distance class: `k_i` over base vertices, and `a_i, b_i, c_i` over
/// all pairs at distance `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DistanceClass {
    pub distance: usize,
    pub size: Range,
    pub a: Range,
    pub b: Range,
    pub c: Range,
}

pub fn distance_distribution(g: &Graph) -> Result<Vec<DistanceClass>> {
    if g.n() == 0 || !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let dist = g.distances();
    let diameter = dist.diameter();
    let mut classes: Vec<Option<DistanceClass>> = vec![None; diameter + 1];
    for x in 0..g.n() {
        let row = dist.row(x);
        for (i, &count) in dist.class_counts(x).iter().enumerate() {
            let slot = &mut classes[i];
            for y in (0..g.n()).filter(|&y| row[y] as usize == i) {
                let (mut a, mut b, mut c) = (0, 0, 0);
                for &z in g.neighbors(y) {
                    match (row[z] as usize).cmp(&i) {
                        std::cmp::Ordering::Less => c += 1,
                        std::cmp::Ordering::Equal => a += 1,
                        std::cmp::Ordering::Greater => b += 1,
                    }
                }
                match slot {
                    None => {
                        *slot = Some(DistanceClass {
                            distance: i,
                            size: Range::new(count),
                            a: Range::new(a),
                            b: Range::new(b),
                            c: Range::new(c),
                        })
                    }
                    Some(cl) => {
                        cl.size.add(count);
                        cl.a.add(a);
                        cl.b.add(b);
                        cl.c.add(c);
                    }
                }
            }
        }
    }
    Ok(classes.into_iter().map(Option::unwrap).collect())
}

/// Distance-distribution diagram in DOT. Nodes are distance classes
/// labelled with `k_i` and `a_i`; forward edges carry `b_i`, backward edges
/// `c_{i+1}`. Values that vary between base vertices print as `min..max`.
pub fn emit_diagram(g: &Graph, order: Option<usize>) -> Result<String> {
    let classes = distance_distribution(g)?;
    let mut out = String::from("digraph distance_distribution {\n");
    let caption = match order {
        Some(t) => format!("walk-regularity order {t}"),
        None => "not walk-regular".to_string(),
    };
    writeln!(out, "  label=\"{caption}\";").unwrap();
    out.push_str("  rankdir=LR;\n  node [shape=circle];\n");
    for cl in &classes {
        writeln!(
            out,
            "  d{} [label=\"{}\\na={}\"];",
            cl.distance, cl.size, cl.a
        )
        .unwrap();
    }
    for pair in classes.windows(2) {
        let (here, next) = (&pair[0], &pair[1]);
        writeln!(
            out,
            "  d{} -> d{} [label=\"{}\"];",
            here.distance, next.distance, here.b
        )
        .unwrap();
        writeln!(
            out,
            "  d{} -> d{} [label=\"{}\"];",
            next.distance, here.distance, next.c
        )
        .unwrap();
    }
    out.push_str("}\n");
    Ok(out)
}
