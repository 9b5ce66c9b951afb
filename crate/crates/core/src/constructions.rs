//! Graph constructions that preserve walk-regularity, each returning the
//! order it is guaranteed to reach.
//!
//! Vertex labelling:
//!
//! * signed copies: `x⁺ = x`, `x⁻ = n + x`;
//! * pairs `(x, u)` with `u` ranging over a factor on `m` vertices:
//!   `x · m + u` (lexicographic);
//! * blow-ups `(x, i)` with `0 <= i < s`: `x · s + i`;
//! * line graphs: edges `u < v` in lexicographic order;
//! * halved graphs: the members of one colour class in increasing order.
//!
//! Disconnected outputs are returned with `connected = false` and no
//! guaranteed order.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact_walk::{is_distance_regular, walk_regularity_order};
use crate::graph::Graph;
use crate::spectral::{default_group_tolerance, spectrum, Eigenvalue};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VertexMap {
    /// Output vertices are input vertices.
    Identity,
    /// `x⁺ = x`, `x⁻ = n + x`.
    SignedCopies { n: usize },
    /// Output vertex `i` is input edge `edges[i]`.
    Edges { edges: Vec<(usize, usize)> },
    /// Output vertex `x · right + u` is the pair `(x, u)`.
    Pairs { left: usize, right: usize },
    /// Output vertex `x · s + i` is copy `i` of `x`.
    Blowup { s: usize },
    /// Output vertex `i` is input vertex `vertices[i]`.
    Subset { vertices: Vec<usize> },
}

#[derive(Debug, Clone, Serialize)]
pub struct ConstructionResult {
    #[serde(skip)]
    pub graph: Graph,
    pub vertex_map: VertexMap,
    /// Lower bound on the walk-regularity order of `graph`; `None` when no
    /// claim applies.
    pub guaranteed_order: Option<usize>,
    pub connected: bool,
}

impl ConstructionResult {
    fn new(graph: Graph, vertex_map: VertexMap, guaranteed: Option<usize>) -> Self {
        let connected = graph.n() > 0 && graph.is_connected();
        ConstructionResult {
            graph,
            vertex_map,
            guaranteed_order: guaranteed.filter(|_| connected),
            connected,
        }
    }
}

/// Exact order, or `None` for disconnected or irregular inputs.
fn order_of(g: &Graph) -> Result<Option<usize>> {
    match walk_regularity_order(g) {
        Ok(o) => Ok(o.order),
        Err(Error::Disconnected | Error::NotRegular) => Ok(None),
        Err(e) => Err(e),
    }
}

fn require_one_walk_regular(g: &Graph, what: &str) -> Result<()> {
    if g.n() == 0 || !g.is_connected() {
        return Err(Error::InvalidGraph(format!(
            "{what}: input must be connected"
        )));
    }
    match order_of(g)? {
        Some(t) if t >= 1 => Ok(()),
        _ => Err(Error::InvalidGraph(format!(
            "{what}: input must be 1-walk-regular"
        ))),
    }
}

/// `x⁺ ~ y⁻` iff `x ~ y`. Guarantees `min(s, t)` for non-bipartite `g` with
/// odd girth `2s + 1` and order `t`.
pub fn bipartite_double(g: &Graph) -> Result<ConstructionResult> {
    let n = g.n();
    let edges = g.edges().flat_map(|(x, y)| [(x, n + y), (y, n + x)]);
    let double = Graph::from_edges(2 * n, edges)?;
    let guaranteed = match g.metrics().odd_girth_half() {
        Some(s) => order_of(g)?.map(|t| s.min(t)),
        None => None,
    };
    Ok(ConstructionResult::new(
        double,
        VertexMap::SignedCopies { n },
        guaranteed,
    ))
}

/// Pairs at distance exactly `i`. For `i = 2` and a non-bipartite,
/// non-complete-multipartite `t`-walk-regular `g` with `t >= 2`, guarantees
/// `min(⌊s/2⌋, ⌊t/2⌋)`.
pub fn distance_k_graph(g: &Graph, i: usize) -> Result<ConstructionResult> {
    if g.n() == 0 || !g.is_connected() {
        return Err(Error::Disconnected);
    }
    let dist = g.distances();
    let diameter = dist.diameter();
    if i < 1 || i > diameter {
        return Err(Error::InvalidParams(format!(
            "distance {i} is outside 1..={diameter}"
        )));
    }
    let out = Graph::from_fn(g.n(), |x, y| dist.get(x, y) == Some(i));
    let mut guaranteed = None;
    if i == 2 {
        let m = g.metrics();
        if let (Some(s), false) = (m.odd_girth_half(), m.complete_multipartite) {
            if let Some(t) = order_of(g)?.filter(|&t| t >= 2) {
                guaranteed = Some((s / 2).min(t / 2));
            }
        }
    }
    Ok(ConstructionResult::new(
        out,
        VertexMap::Identity,
        guaranteed,
    ))
}

/// The two halved graphs of a connected bipartite graph; the half containing
/// vertex 0 comes first. Each is guaranteed `⌊t/2⌋`.
pub fn halved_graphs(g: &Graph) -> Result<(ConstructionResult, ConstructionResult)> {
    if g.n() == 0 || !g.is_connected() {
        return Err(Error::Disconnected);
    }
    if !g.metrics().bipartite {
        return Err(Error::InvalidGraph(
            "halved graphs need a bipartite input".into(),
        ));
    }
    let dist = g.distances();
    let guaranteed = order_of(g)?.map(|t| t / 2);
    let half = |parity: usize| -> Result<ConstructionResult> {
        let vertices: Vec<usize> = (0..g.n())
            .filter(|&x| dist.get(0, x).unwrap() % 2 == parity)
            .collect();
        let out = Graph::from_fn(vertices.len(), |a, b| {
            dist.get(vertices[a], vertices[b]) == Some(2)
        });
        Ok(ConstructionResult::new(
            out,
            VertexMap::Subset { vertices },
            guaranteed,
        ))
    };
    Ok((half(0)?, half(1)?))
}

/// Vertices are edges, adjacent when they share an endpoint. Guarantees the
/// largest `t` with `order(g) >= t + 1` and `girth(g) > 2t + 1`.
pub fn line_graph(g: &Graph) -> Result<ConstructionResult> {
    let k = g.require_connected_regular()?;
    if k < 2 {
        return Err(Error::InvalidGraph(format!(
            "line graph needs valency >= 2, got {k}"
        )));
    }
    let edges: Vec<(usize, usize)> = g.edges().collect();
    let index = |u: usize, v: usize| edges.binary_search(&(u.min(v), u.max(v))).unwrap();
    let mut out_edges = Vec::new();
    for x in 0..g.n() {
        let inc: Vec<usize> = g.neighbors(x).iter().map(|&y| index(x, y)).collect();
        for (i, &e) in inc.iter().enumerate() {
            out_edges.extend(inc[i + 1..].iter().map(|&f| (e, f)));
        }
    }
    let out = Graph::from_edges(edges.len(), out_edges)?;
    let girth = g.metrics().girth;
    let guaranteed = order_of(g)?.and_then(|order| {
        (0..order)
            .take_while(|&t| girth.is_none_or(|gi| gi > 2 * t + 1))
            .last()
    });
    Ok(ConstructionResult::new(
        out,
        VertexMap::Edges { edges },
        guaranteed,
    ))
}

/// `(x, u) ~ (y, v)` iff `x ~ y` and `u ~ v`. Both factors must be connected
/// and 1-walk-regular; guarantees 1.
pub fn kronecker_product(g: &Graph, h: &Graph) -> Result<ConstructionResult> {
    require_one_walk_regular(g, "kronecker product")?;
    require_one_walk_regular(h, "kronecker product")?;
    let m = h.n();
    let mut edges = Vec::new();
    for (x, y) in g.edges() {
        for (u, v) in h.edges() {
            edges.push((x * m + u, y * m + v));
            edges.push((x * m + v, y * m + u));
        }
    }
    let out = Graph::from_edges(g.n() * m, edges)?;
    Ok(ConstructionResult::new(
        out,
        VertexMap::Pairs {
            left: g.n(),
            right: m,
        },
        Some(1),
    ))
}

/// `g ⊕ g`: pairs equal in one coordinate and adjacent in the other.
/// Guarantees 1.
pub fn cartesian_square(g: &Graph) -> Result<ConstructionResult> {
    require_one_walk_regular(g, "cartesian square")?;
    let n = g.n();
    let mut edges = Vec::new();
    for (x, y) in g.edges() {
        for u in 0..n {
            edges.push((x * n + u, y * n + u));
            edges.push((u * n + x, u * n + y));
        }
    }
    let out = Graph::from_edges(n * n, edges)?;
    Ok(ConstructionResult::new(
        out,
        VertexMap::Pairs { left: n, right: n },
        Some(1),
    ))
}

/// Adjacency `A ⊗ J_s`: every vertex becomes an independent `s`-set.
/// Guarantees 1.
pub fn coclique_extension(g: &Graph, s: usize) -> Result<ConstructionResult> {
    if s == 0 {
        return Err(Error::InvalidParams(
            "coclique extension needs s >= 1".into(),
        ));
    }
    require_one_walk_regular(g, "coclique extension")?;
    let mut edges = Vec::new();
    for (x, y) in g.edges() {
        for i in 0..s {
            edges.extend((0..s).map(|j| (x * s + i, y * s + j)));
        }
    }
    let out = Graph::from_edges(g.n() * s, edges)?;
    Ok(ConstructionResult::new(
        out,
        VertexMap::Blowup { s },
        Some(1),
    ))
}

#[derive(Debug, Clone, Serialize)]
pub struct ComplementBlockDouble {
    #[serde(flatten)]
    pub result: ConstructionResult,
    /// Predicted spectrum, decreasing, coinciding values merged.
    pub expected_spectrum: Vec<Eigenvalue>,
    /// `g` strongly regular with `n = 4k - 2μ - 2λ`, where `2k - n + 1`
    /// collides with some `2θ + 1`.
    pub taylor_exceptional: bool,
}

/// Adjacency `[[A, Ā], [Ā, A]]`, regular of degree `n - 1`, with predicted
/// spectrum `n-1, 2k-n+1, (-1)^{n-1}` and `(2θ+1)^m` for every other
/// eigenvalue `θ^m` of `g`. Walk-regular whenever `g` is.
pub fn complement_block_double(g: &Graph) -> Result<ComplementBlockDouble> {
    let k = g.require_connected_regular()?;
    let n = g.n();
    let mut edges = Vec::new();
    for (x, y) in g.edges() {
        edges.extend([(x, y), (n + x, n + y)]);
    }
    for x in 0..n {
        for y in x + 1..n {
            if !g.is_adjacent(x, y) {
                edges.extend([(x, n + y), (y, n + x)]);
            }
        }
    }
    let out = Graph::from_edges(2 * n, edges)?;

    let s = spectrum(g, default_group_tolerance(g))?;
    let mut raw = vec![
        ((n - 1) as f64, 1),
        (2.0 * k as f64 - n as f64 + 1.0, 1),
        (-1.0, n - 1),
    ];
    raw.extend(
        s.eigenvalues()
            .iter()
            .skip(1)
            .map(|e| (2.0 * e.value + 1.0, e.multiplicity)),
    );
    raw.sort_by(|a, b| b.0.total_cmp(&a.0));
    let mut expected_spectrum: Vec<Eigenvalue> = Vec::new();
    for (value, multiplicity) in raw.into_iter().filter(|&(_, m)| m > 0) {
        match expected_spectrum.last_mut() {
            Some(last) if (last.value - value).abs() <= 1e-9 * value.abs().max(1.0) => {
                last.multiplicity += multiplicity
            }
            _ => expected_spectrum.push(Eigenvalue {
                value,
                multiplicity,
            }),
        }
    }

    let taylor_exceptional = match is_distance_regular(g)? {
        Some(arr) if arr.b.len() == 2 => {
            let lambda = (k - arr.b[1] - 1) as i64;
            let mu = arr.c[1] as i64;
            n as i64 == 4 * k as i64 - 2 * mu - 2 * lambda
        }
        _ => false,
    };
    let guaranteed = order_of(g)?.map(|_| 0);
    Ok(ComplementBlockDouble {
        result: ConstructionResult::new(out, VertexMap::SignedCopies { n }, guaranteed),
        expected_spectrum,
        taylor_exceptional,
    })
}
