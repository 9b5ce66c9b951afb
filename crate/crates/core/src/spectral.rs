//! Adjacency spectra, minimal idempotents and spherical representations.
//!
//! Eigenvalues come from a dense symmetric eigensolver and are grouped into
//! clusters by a gap tolerance. Structural conclusions are always checked
//! against the exact engine: the number of clusters must equal `d + 1`, and
//! the walk-regularity order read off the idempotents must equal the exact
//! order.

use nalgebra::{DMatrix, DVector, SymmetricEigen};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result, Witness};
use crate::exact_walk::{intersection_numbers, WalkTable};
use crate::graph::{Graph, UNREACHABLE};

/// Idempotent entries are compared within this fraction of `α_0`.
pub const CONSTANCY_TOL: f64 = 1e-8;
/// Relative slack on `E² = E`, `AE = θE` and the representation identity.
pub const RESIDUAL_TOL: f64 = 1e-8;

pub fn adjacency_matrix(g: &Graph) -> DMatrix<f64> {
    let n = g.n();
    let mut a = DMatrix::zeros(n, n);
    for (u, v) in g.edges() {
        a[(u, v)] = 1.0;
        a[(v, u)] = 1.0;
    }
    a
}

/// Default grouping tolerance `1e-7 · max(1, ‖A‖₂)`.
pub fn default_group_tolerance(g: &Graph) -> f64 {
    // ‖A‖₂ ≤ max degree, with equality for regular graphs.
    let norm = (0..g.n()).map(|x| g.degree(x)).max().unwrap_or(0) as f64;
    1e-7 * norm.max(1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Eigenvalue {
    pub value: f64,
    pub multiplicity: usize,
}

/// Distinct eigenvalues in strictly decreasing order, with the
/// orthonormal eigenvectors that produced them.
#[derive(Debug, Clone)]
pub struct Spectrum {
    eigenvalues: Vec<Eigenvalue>,
    tolerance: f64,
    /// Column `i` belongs to the `i`-th raw eigenvalue in decreasing order.
    vectors: DMatrix<f64>,
    /// Start column of each cluster in `vectors`.
    offsets: Vec<usize>,
}

impl Serialize for Spectrum {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.eigenvalues.serialize(s)
    }
}

impl Spectrum {
    pub fn eigenvalues(&self) -> &[Eigenvalue] {
        &self.eigenvalues
    }

    pub fn tolerance(&self) -> f64 {
        self.tolerance
    }

    /// Number of distinct eigenvalues minus one.
    pub fn d(&self) -> usize {
        self.eigenvalues.len() - 1
    }

    pub fn largest(&self) -> f64 {
        self.eigenvalues[0].value
    }

    pub fn smallest(&self) -> f64 {
        self.eigenvalues.last().unwrap().value
    }

    /// `θ_1`, the second largest distinct eigenvalue.
    pub fn second(&self) -> Option<f64> {
        self.eigenvalues.get(1).map(|e| e.value)
    }

    pub fn multiplicity_of(&self, theta: f64) -> Option<usize> {
        self.index_of(theta)
            .map(|i| self.eigenvalues[i].multiplicity)
    }

    /// Cluster index of an eigenvalue within the grouping tolerance.
    pub fn index_of(&self, theta: f64) -> Option<usize> {
        self.eigenvalues
            .iter()
            .position(|e| (e.value - theta).abs() <= 10.0 * self.tolerance)
    }

    /// Orthonormal eigenbasis of cluster `i` as an `n x m` matrix.
    pub fn basis(&self, i: usize) -> DMatrix<f64> {
        let m = self.eigenvalues[i].multiplicity;
        self.vectors.columns(self.offsets[i], m).into_owned()
    }

    /// Whether `θ` matches `value` within the grouping tolerance.
    pub fn same(&self, theta: f64, value: f64) -> bool {
        (theta - value).abs() <= 10.0 * self.tolerance
    }
}

/// Groups sorted eigenvalues. Gaps at most `tol` merge; gaps above `10·tol`
/// split; anything in between is rejected as ambiguous.
fn cluster(values: &[f64], tol: f64) -> Result<Vec<std::ops::Range<usize>>> {
    let mut ranges = Vec::new();
    let mut start = 0;
    for i in 1..values.len() {
        let gap = values[i - 1] - values[i];
        if gap <= tol {
            continue;
        }
        if gap < 10.0 * tol {
            return Err(Error::AmbiguousClustering {
                gap,
                tolerance: tol,
            });
        }
        ranges.push(start..i);
        start = i;
    }
    if !values.is_empty() {
        ranges.push(start..values.len());
    }
    Ok(ranges)
}

/// Eigenvalues of a symmetric matrix grouped by `tol`.
pub fn spectrum_of_matrix(a: DMatrix<f64>, tol: f64) -> Result<Spectrum> {
    if a.nrows() == 0 {
        return Err(Error::InvalidGraph("empty graph has no spectrum".into()));
    }
    if !(tol > 0.0) {
        return Err(Error::InvalidParams(format!(
            "grouping tolerance must be positive, got {tol}"
        )));
    }
    let eig = SymmetricEigen::new(a);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let values: Vec<f64> = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = DMatrix::from_fn(eig.eigenvectors.nrows(), order.len(), |r, c| {
        eig.eigenvectors[(r, order[c])]
    });
    let ranges = cluster(&values, tol)?;
    let eigenvalues = ranges
        .iter()
        .map(|r| Eigenvalue {
            value: values[r.clone()].iter().sum::<f64>() / r.len() as f64,
            multiplicity: r.len(),
        })
        .collect();
    Ok(Spectrum {
        eigenvalues,
        tolerance: tol,
        vectors,
        offsets: ranges.iter().map(|r| r.start).collect(),
    })
}

pub fn spectrum(g: &Graph, tol: f64) -> Result<Spectrum> {
    spectrum_of_matrix(adjacency_matrix(g), tol)
}

/// Spectrum with the default tolerance, cross-checked against the exact
/// minimal-polynomial degree.
pub fn checked_spectrum(g: &Graph, table: &WalkTable) -> Result<Spectrum> {
    let s = spectrum(g, default_group_tolerance(g))?;
    if s.eigenvalues.len() != table.d() + 1 {
        return Err(Error::ClusterMismatch {
            clusters: s.eigenvalues.len(),
            expected: table.d() + 1,
        });
    }
    Ok(s)
}

/// Orthogonal projector onto one eigenspace, with its per-distance
/// constants `α_j` where the entries are constant on distance class `j`.
#[derive(Debug, Clone, Serialize)]
pub struct Idempotent {
    pub theta: f64,
    pub rank: usize,
    /// `α_j`, or `None` where the entries at distance `j` vary.
    pub alphas: Vec<Option<f64>>,
    #[serde(skip)]
    pub matrix: DMatrix<f64>,
    #[serde(skip)]
    pub basis: DMatrix<f64>,
}

impl Idempotent {
    /// Mean diagonal `m / n`, which is `α_0` whenever the diagonal is
    /// constant.
    pub fn scale(&self) -> f64 {
        self.rank as f64 / self.matrix.nrows() as f64
    }

    /// Largest `t` with `E` constant on every class `0..=t`.
    pub fn constant_up_to(&self) -> Option<usize> {
        self.alphas.iter().position(Option::is_none).map_or_else(
            || Some(self.alphas.len() - 1),
            |first_bad| first_bad.checked_sub(1),
        )
    }

    /// `E χ` for the characteristic vector of `set`.
    pub fn apply_indicator(&self, set: &[usize]) -> DVector<f64> {
        let mut out = DVector::zeros(self.matrix.nrows());
        for &v in set {
            out += self.matrix.column(v);
        }
        out
    }
}

/// First pair on distance class `j` whose entry differs from the class
/// reference by more than `tol`.
fn class_witness(
    m: &DMatrix<f64>,
    g: &Graph,
    j: usize,
    tol: f64,
) -> (Option<f64>, Option<Witness>) {
    let dist = g.distances();
    let n = g.n();
    let mut reference: Option<f64> = None;
    for x in 0..n {
        for y in x..n {
            if dist.raw(x, y) as usize != j || dist.raw(x, y) == UNREACHABLE {
                continue;
            }
            let v = m[(x, y)];
            match reference {
                None => reference = Some(v),
                Some(r) if (v - r).abs() > tol => return (None, Some(Witness { x, y })),
                Some(_) => {}
            }
        }
    }
    (reference, None)
}

fn alphas(m: &DMatrix<f64>, g: &Graph, scale: f64) -> Vec<Option<f64>> {
    let diameter = g.distances().diameter();
    (0..=diameter)
        .map(|j| match class_witness(m, g, j, CONSTANCY_TOL * scale) {
            (Some(a), None) => Some(a),
            _ => None,
        })
        .collect()
}

fn max_abs(m: &DMatrix<f64>) -> f64 {
    m.iter().fold(0.0, |acc, v| acc.max(v.abs()))
}

fn build_idempotent(g: &Graph, a: &DMatrix<f64>, s: &Spectrum, i: usize) -> Result<Idempotent> {
    let theta = s.eigenvalues[i].value;
    let basis = s.basis(i);
    let matrix = &basis * basis.transpose();
    let square = max_abs(&(&matrix * &matrix - &matrix));
    if square > RESIDUAL_TOL {
        return Err(Error::Residual {
            what: format!("E² - E for θ = {theta}"),
            residual: square,
            tolerance: RESIDUAL_TOL,
        });
    }
    let eigen = max_abs(&(a * &matrix - &matrix * theta));
    let eigen_tol = RESIDUAL_TOL * theta.abs().max(1.0);
    if eigen > eigen_tol {
        return Err(Error::Residual {
            what: format!("AE - θE for θ = {theta}"),
            residual: eigen,
            tolerance: eigen_tol,
        });
    }
    let rank = basis.ncols();
    let alphas = alphas(&matrix, g, rank as f64 / g.n() as f64);
    Ok(Idempotent {
        theta,
        rank,
        alphas,
        matrix,
        basis,
    })
}

fn check_owner(g: &Graph, s: &Spectrum) -> Result<()> {
    if s.vectors.nrows() != g.n() {
        return Err(Error::InvalidParams(
            "spectrum belongs to a different graph".into(),
        ));
    }
    Ok(())
}

/// One idempotent per distinct eigenvalue, `E = U Uᵀ` for an orthonormal
/// eigenbasis `U` of the cluster.
pub fn minimal_idempotents(g: &Graph, s: &Spectrum) -> Result<Vec<Idempotent>> {
    check_owner(g, s)?;
    let a = adjacency_matrix(g);
    (0..s.eigenvalues.len())
        .into_par_iter()
        .map(|i| build_idempotent(g, &a, s, i))
        .collect()
}

/// The idempotent of cluster `i` alone.
pub fn idempotent(g: &Graph, s: &Spectrum, i: usize) -> Result<Idempotent> {
    check_owner(g, s)?;
    if i >= s.eigenvalues.len() {
        return Err(Error::InvalidParams(format!("no eigenvalue cluster {i}")));
    }
    build_idempotent(g, &adjacency_matrix(g), s, i)
}

#[derive(Debug, Clone, Serialize)]
pub struct CosineSequence {
    pub theta: f64,
    /// `u_0, ..., u_t`.
    pub u: Vec<f64>,
    /// Largest `|c_j α_{j-1} + a_j α_j + b_j α_{j+1} - θ α_j| / α_0` over
    /// `1 <= j <= t-1`.
    pub recurrence_residual: f64,
}

/// Cosines `u_j = α_j / α_0` for `j <= t`, checked against `u_1 = θ/k` and the
/// three-term recurrence with the exact intersection numbers.
pub fn cosine_sequence(g: &Graph, e: &Idempotent, t: usize) -> Result<CosineSequence> {
    let k = g.require_connected_regular()?;
    let scale = e.scale();
    let mut alpha = Vec::with_capacity(t + 1);
    for j in 0..=t {
        match e.alphas.get(j) {
            Some(Some(a)) => alpha.push(*a),
            Some(None) => {
                let (_, w) = class_witness(&e.matrix, g, j, CONSTANCY_TOL * scale);
                let w = w.unwrap_or(Witness { x: 0, y: 0 });
                return Err(Error::constancy(
                    format!("idempotent for θ = {}", e.theta),
                    j,
                    w.x,
                    w.y,
                ));
            }
            None => {
                return Err(Error::InvalidParams(format!(
                    "t = {t} exceeds the diameter {}",
                    e.alphas.len() - 1
                )))
            }
        }
    }
    let alpha0 = alpha[0];
    let u: Vec<f64> = alpha.iter().map(|a| a / alpha0).collect();
    if t >= 1 {
        let expected = e.theta / k as f64;
        let err = (u[1] - expected).abs();
        if err > 1e-9 * expected.abs().max(1.0) {
            return Err(Error::Residual {
                what: format!("u_1 = θ/k for θ = {}", e.theta),
                residual: err,
                tolerance: 1e-9,
            });
        }
    }
    let mut recurrence_residual = 0.0f64;
    if t >= 2 {
        let table = intersection_numbers(g, t)?;
        for j in 1..t {
            let lhs = table.c[j] as f64 * u[j - 1]
                + table.a[j] as f64 * u[j]
                + table.b[j] as f64 * u[j + 1];
            recurrence_residual = recurrence_residual.max((lhs - e.theta * u[j]).abs());
        }
        if recurrence_residual > RESIDUAL_TOL * (k as f64).max(1.0) {
            return Err(Error::Residual {
                what: format!("three-term cosine recurrence for θ = {}", e.theta),
                residual: recurrence_residual,
                tolerance: RESIDUAL_TOL,
            });
        }
    }
    Ok(CosineSequence {
        theta: e.theta,
        u,
        recurrence_residual,
    })
}

/// Walk-regularity order read off the idempotents alone: the largest `t`
/// such that every idempotent is constant on every class up to `t`.
pub fn idempotent_constancy_order(idempotents: &[Idempotent]) -> Option<usize> {
    idempotents
        .iter()
        .map(Idempotent::constant_up_to)
        .min()
        .flatten()
}

/// Spectral walk-regularity order, cross-validated against the exact
/// integer order. Disagreement is a hard error.
pub fn spectral_wr_order(g: &Graph) -> Result<Option<usize>> {
    g.require_connected_regular()?;
    let table = WalkTable::compute(g)?;
    let s = checked_spectrum(g, &table)?;
    let idempotents = minimal_idempotents(g, &s)?;
    let spectral = idempotent_constancy_order(&idempotents);
    let exact = crate::exact_walk::walk_regularity_order_with(g, &table)?.order;
    if spectral != exact {
        return Err(Error::OracleDisagreement { exact, spectral });
    }
    Ok(spectral)
}

/// Rows of `U`, one vector per vertex.
#[derive(Debug, Clone)]
pub struct Representation {
    pub theta: f64,
    pub vectors: Vec<DVector<f64>>,
    /// Mean squared norm; the common norm when the representation is
    /// spherical.
    pub alpha0: f64,
}

impl Representation {
    pub fn inner(&self, x: usize, y: usize) -> f64 {
        self.vectors[x].dot(&self.vectors[y])
    }

    pub fn is_spherical(&self, tol: f64) -> bool {
        self.vectors
            .iter()
            .all(|v| (v.norm_squared() - self.alpha0).abs() <= tol * self.alpha0)
    }

    /// Pairs `x < y` within distance `max_dist` whose images satisfy
    /// `x̂ = ±ŷ` up to `tol · √α_0`.
    pub fn collinear_pairs(&self, g: &Graph, max_dist: usize, tol: f64) -> Vec<(usize, usize)> {
        let dist = g.distances();
        let eps = tol * self.alpha0.sqrt();
        let mut out = Vec::new();
        for x in 0..self.vectors.len() {
            for y in x + 1..self.vectors.len() {
                match dist.get(x, y) {
                    Some(d) if d <= max_dist => {}
                    _ => continue,
                }
                let same = (&self.vectors[x] - &self.vectors[y]).norm() <= eps;
                let opposite = (&self.vectors[x] + &self.vectors[y]).norm() <= eps;
                if same || opposite {
                    out.push((x, y));
                }
            }
        }
        out
    }
}

/// The representation `x ↦ x̂` of an idempotent, checked against
/// `θ x̂ = Σ_{y~x} ŷ`.
pub fn representation(g: &Graph, e: &Idempotent) -> Result<Representation> {
    let n = g.n();
    let vectors: Vec<DVector<f64>> = (0..n).map(|x| e.basis.row(x).transpose()).collect();
    let k = (0..n).map(|x| g.degree(x)).max().unwrap_or(0).max(1) as f64;
    for x in 0..n {
        let mut sum = DVector::zeros(e.rank);
        for &y in g.neighbors(x) {
            sum += &vectors[y];
        }
        let residual = (&vectors[x] * e.theta - sum).norm();
        let tol = RESIDUAL_TOL * vectors[x].norm().max(f64::MIN_POSITIVE) * k;
        if residual > tol {
            return Err(Error::Residual {
                what: format!("θx̂ = Σ ŷ at vertex {x}"),
                residual,
                tolerance: tol,
            });
        }
    }
    let alpha0 = vectors.iter().map(|v| v.norm_squared()).sum::<f64>() / n as f64;
    Ok(Representation {
        theta: e.theta,
        vectors,
        alpha0,
    })
}

/// Whether the partition into classes makes `g` a cover of the quotient.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverReport {
    pub classes_independent: bool,
    pub equitable: bool,
    pub equal_sizes: bool,
    pub is_cover: bool,
}

#[derive(Debug, Clone)]
pub struct RepresentationQuotient {
    /// Classes sorted by smallest member, members ascending.
    pub classes: Vec<Vec<usize>>,
    pub class_of: Vec<usize>,
    pub quotient: Graph,
    pub cover: CoverReport,
}

/// Default identification tolerance `1e-6 · √α_0`.
pub fn default_identification_tolerance(rep: &Representation) -> f64 {
    1e-6 * rep.alpha0.sqrt()
}

fn find(parent: &mut [usize], x: usize) -> usize {
    let mut r = x;
    while parent[r] != r {
        r = parent[r];
    }
    let mut c = x;
    while parent[c] != r {
        let next = parent[c];
        parent[c] = r;
        c = next;
    }
    r
}

/// Identifies vertices with equal images (within `tol`) and reports the
/// quotient graph and whether `g` covers it.
pub fn representation_quotient(
    g: &Graph,
    rep: &Representation,
    tol: f64,
) -> Result<RepresentationQuotient> {
    let n = g.n();
    let close = |x: usize, y: usize| (&rep.vectors[x] - &rep.vectors[y]).norm() <= tol;
    let mut parent: Vec<usize> = (0..n).collect();
    let mut links: Vec<Vec<usize>> = vec![Vec::new(); n];
    for x in 0..n {
        for y in x + 1..n {
            if close(x, y) {
                links[x].push(y);
                links[y].push(x);
                let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                if rx != ry {
                    parent[rx.max(ry)] = rx.min(ry);
                }
            }
        }
    }
    let roots: Vec<usize> = (0..n).map(|x| find(&mut parent, x)).collect();
    let mut classes: Vec<Vec<usize>> = Vec::new();
    let mut class_of = vec![usize::MAX; n];
    for x in 0..n {
        if class_of[roots[x]] == usize::MAX {
            class_of[roots[x]] = classes.len();
            classes.push(Vec::new());
        }
        class_of[x] = class_of[roots[x]];
        classes[class_of[x]].push(x);
    }
    // Transitivity: every pair inside a class must be close.
    for class in &classes {
        for (i, &a) in class.iter().enumerate() {
            for &c in &class[i + 1..] {
                if !close(a, c) {
                    let b = chain_witness(&links, a, c, &close);
                    return Err(Error::NotAnEquivalence { a, b, c });
                }
            }
        }
    }
    let q = classes.len();
    let mut qedges = Vec::new();
    let mut counts = vec![vec![0usize; q]; n];
    for (u, v) in g.edges() {
        counts[u][class_of[v]] += 1;
        counts[v][class_of[u]] += 1;
        if class_of[u] != class_of[v] {
            qedges.push((class_of[u], class_of[v]));
        }
    }
    let quotient = Graph::from_edges(q, qedges)?;
    let classes_independent = (0..n).all(|x| counts[x][class_of[x]] == 0);
    let equitable = classes
        .iter()
        .all(|class| class.iter().all(|&x| counts[x] == counts[class[0]]));
    let equal_sizes = classes.iter().all(|c| c.len() == classes[0].len());
    Ok(RepresentationQuotient {
        cover: CoverReport {
            classes_independent,
            equitable,
            equal_sizes,
            is_cover: classes_independent && equitable && equal_sizes,
        },
        classes,
        class_of,
        quotient,
    })
}

/// A vertex `b` on a closeness path from `a` to `c` with `a ~ b` close but
/// the next step no longer close to `a`.
fn chain_witness(
    links: &[Vec<usize>],
    a: usize,
    c: usize,
    close: &impl Fn(usize, usize) -> bool,
) -> usize {
    let mut prev = vec![usize::MAX; links.len()];
    let mut queue = std::collections::VecDeque::from([a]);
    prev[a] = a;
    while let Some(v) = queue.pop_front() {
        if v == c {
            break;
        }
        for &w in &links[v] {
            if prev[w] == usize::MAX {
                prev[w] = v;
                queue.push_back(w);
            }
        }
    }
    let mut path = vec![c];
    while *path.last().unwrap() != a {
        path.push(prev[*path.last().unwrap()]);
    }
    path.reverse();
    path.windows(2)
        .find(|w| close(a, w[0]) && !close(a, w[1]))
        .map_or(a, |w| w[0])
}
