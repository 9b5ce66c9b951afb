//! Exact walk counting.
//!
//! Every quantity here is an integer computed without floating point: powers
//! of the adjacency matrix in arbitrary precision, the degree of the minimal
//! polynomial by fraction-free elimination, and intersection numbers by
//! direct counting.
//!
//! Constancy of `A^ℓ` on a distance class only needs checking for
//! `ℓ = 0..=d`: the powers `A^0, ..., A^d` span the same space as the minimal
//! idempotents (a Vandermonde change of basis), so constancy of the former is
//! constancy of the latter and hence of every higher power.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result, Witness};
use crate::graph::{Graph, UNREACHABLE};

/// Dense square matrix of arbitrary-precision integers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn identity(n: usize) -> Self {
        let mut data = vec![BigInt::zero(); n * n];
        for i in 0..n {
            data[i * n + i] = BigInt::one();
        }
        IntMatrix { n, data }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, x: usize, y: usize) -> &BigInt {
        &self.data[x * self.n + y]
    }

    /// `A · self`, using the sparsity of `A`.
    fn left_adjacency_product(&self, g: &Graph) -> Self {
        let n = self.n;
        let data = (0..n)
            .into_par_iter()
            .flat_map_iter(|x| {
                let mut row = vec![BigInt::zero(); n];
                for &y in g.neighbors(x) {
                    for (acc, v) in row.iter_mut().zip(&self.data[y * n..(y + 1) * n]) {
                        *acc += v;
                    }
                }
                row
            })
            .collect();
        IntMatrix { n, data }
    }

    /// Upper triangle including the diagonal, row-major. Powers of a
    /// symmetric matrix are symmetric, so this determines the matrix.
    fn upper_triangle(&self) -> Vec<BigInt> {
        let n = self.n;
        (0..n)
            .flat_map(|x| (x..n).map(move |y| (x, y)))
            .map(|(x, y)| self.get(x, y).clone())
            .collect()
    }
}

/// Incremental fraction-free row echelon form over the integers.
#[derive(Default)]
struct EchelonBasis {
    rows: Vec<(usize, Vec<BigInt>)>,
}

impl EchelonBasis {
    /// Adds `v` if it is independent of the basis; returns whether it was.
    fn insert(&mut self, mut v: Vec<BigInt>) -> bool {
        for (pivot, row) in &self.rows {
            if v[*pivot].is_zero() {
                continue;
            }
            let scale = row[*pivot].clone();
            let factor = v[*pivot].clone();
            for (vi, ri) in v.iter_mut().zip(row) {
                *vi = &*vi * &scale - &factor * ri;
            }
            let content = v.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
            if content > BigInt::one() {
                for vi in &mut v {
                    *vi = &*vi / &content;
                }
            }
        }
        match v.iter().position(|x| !x.is_zero()) {
            Some(pivot) => {
                if v[pivot].is_negative() {
                    for vi in &mut v {
                        *vi = -&*vi;
                    }
                }
                self.rows.push((pivot, v));
                true
            }
            None => false,
        }
    }
}

/// Powers `A^0, ..., A^d` where `d + 1` is the degree of the minimal
/// polynomial of `A`.
#[derive(Debug, Clone)]
pub struct WalkTable {
    powers: Vec<IntMatrix>,
}

impl WalkTable {
    pub fn compute(g: &Graph) -> Result<Self> {
        if g.n() == 0 || !g.is_connected() {
            return Err(Error::Disconnected);
        }
        let mut basis = EchelonBasis::default();
        let mut powers = Vec::new();
        let mut current = IntMatrix::identity(g.n());
        while basis.insert(current.upper_triangle()) {
            let next = current.left_adjacency_product(g);
            powers.push(current);
            current = next;
        }
        Ok(WalkTable { powers })
    }

    /// Number of distinct eigenvalues minus one.
    pub fn d(&self) -> usize {
        self.powers.len() - 1
    }

    pub fn powers(&self) -> &[IntMatrix] {
        &self.powers
    }

    /// Number of walks of length `l <= d` from `x` to `y`.
    pub fn walks(&self, l: usize, x: usize, y: usize) -> &BigInt {
        self.powers[l].get(x, y)
    }
}

/// `d` such that `I, A, ..., A^d` are linearly independent and `A^{d+1}`
/// depends on them.
pub fn minimal_poly_degree(g: &Graph) -> Result<usize> {
    Ok(WalkTable::compute(g)?.d())
}

/// The first walk count that differs within a distance class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConstancyFailure {
    pub distance: usize,
    pub length: usize,
    pub witness: Witness,
    pub reference: Witness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WalkOrder {
    /// `None` when closed-walk counts already vary by vertex.
    pub order: Option<usize>,
    pub d: usize,
    pub diameter: usize,
    pub failure: Option<ConstancyFailure>,
}

fn class_failure(g: &Graph, table: &WalkTable, j: usize) -> Option<ConstancyFailure> {
    let dist = g.distances();
    let n = g.n();
    let mut reference: Option<(usize, usize)> = None;
    for x in 0..n {
        for y in x..n {
            if dist.raw(x, y) as usize != j {
                continue;
            }
            let Some((rx, ry)) = reference else {
                reference = Some((x, y));
                continue;
            };
            for (l, power) in table.powers().iter().enumerate() {
                if power.get(x, y) != power.get(rx, ry) {
                    return Some(ConstancyFailure {
                        distance: j,
                        length: l,
                        witness: Witness { x, y },
                        reference: Witness { x: rx, y: ry },
                    });
                }
            }
        }
    }
    None
}

/// Largest `t <= D` such that walk counts of every length are constant on
/// each distance class `0..=t`.
pub fn walk_regularity_order_with(g: &Graph, table: &WalkTable) -> Result<WalkOrder> {
    g.require_connected_regular()?;
    let diameter = g.distances().diameter();
    let failures: Vec<Option<ConstancyFailure>> = (0..=diameter)
        .into_par_iter()
        .map(|j| class_failure(g, table, j))
        .collect();
    let failure = failures.into_iter().flatten().next();
    let order = match &failure {
        Some(f) => f.distance.checked_sub(1),
        None => Some(diameter),
    };
    Ok(WalkOrder {
        order,
        d: table.d(),
        diameter,
        failure,
    })
}

pub fn walk_regularity_order(g: &Graph) -> Result<WalkOrder> {
    let table = WalkTable::compute(g)?;
    walk_regularity_order_with(g, &table)
}

/// `a_j, b_j, c_j` for `j = 0..=t`. `c_0` is recorded as 0.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionTable {
    pub k: usize,
    pub a: Vec<usize>,
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

impl IntersectionTable {
    pub fn t(&self) -> usize {
        self.a.len() - 1
    }
}

/// `{b_0, ..., b_{D-1}; c_1, ..., c_D}`
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntersectionArray {
    pub b: Vec<usize>,
    pub c: Vec<usize>,
}

impl IntersectionArray {
    pub fn new(b: &[usize], c: &[usize]) -> Self {
        IntersectionArray {
            b: b.to_vec(),
            c: c.to_vec(),
        }
    }
}

impl fmt::Display for IntersectionArray {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[usize]| {
            v.iter()
                .map(ToString::to_string)
                .collect::<Vec<_>>()
                .join(",")
        };
        write!(f, "{{{};{}}}", join(&self.b), join(&self.c))
    }
}

fn count_neighbors_by_distance(g: &Graph, x: usize, y: usize, j: usize) -> (usize, usize, usize) {
    let row = g.distances().row(x);
    let (mut a, mut b, mut c) = (0, 0, 0);
    for &z in g.neighbors(y) {
        let dz = row[z] as usize;
        if dz == j {
            a += 1;
        } else if dz == j + 1 {
            b += 1;
        } else {
            c += 1;
        }
    }
    (a, b, c)
}

/// Intersection numbers up to distance `t`, verified constant over every
/// qualifying pair. Fails with a witness if some pair disagrees, which
/// means `t` exceeds the walk-regularity order.
pub fn intersection_numbers(g: &Graph, t: usize) -> Result<IntersectionTable> {
    let k = g.require_connected_regular()?;
    let dist = g.distances();
    if t > dist.diameter() {
        return Err(Error::InvalidParams(format!(
            "t = {t} exceeds the diameter {}",
            dist.diameter()
        )));
    }
    let n = g.n();
    let mut table = IntersectionTable {
        k,
        a: vec![0; t + 1],
        b: vec![k; t + 1],
        c: vec![0; t + 1],
    };
    for j in 1..=t {
        let mut seen: Option<((usize, usize, usize), usize, usize)> = None;
        for x in 0..n {
            for y in dist.sphere(x, j) {
                let abc = count_neighbors_by_distance(g, x, y, j);
                match seen {
                    None => seen = Some((abc, x, y)),
                    Some((first, _, _)) if first != abc => {
                        let what = ["a", "b", "c"]
                            .iter()
                            .zip([first.0 != abc.0, first.1 != abc.1, first.2 != abc.2])
                            .find(|(_, differs)| *differs)
                            .map(|(name, _)| format!("intersection number {name}_{j}"))
                            .unwrap();
                        return Err(Error::constancy(what, j, x, y));
                    }
                    Some(_) => {}
                }
            }
        }
        let ((a, b, c), _, _) = seen.expect("every distance up to the diameter is attained");
        table.a[j] = a;
        table.b[j] = b;
        table.c[j] = c;
    }
    Ok(table)
}

/// `p^h_{ij}` for `h, i, j <= t`, indexed `[h][i][j]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TripleNumbers {
    pub t: usize,
    pub p: Vec<Vec<Vec<usize>>>,
}

impl TripleNumbers {
    pub fn get(&self, h: usize, i: usize, j: usize) -> usize {
        self.p[h][i][j]
    }
}

/// `p^h_{ij} = |Γ_i(x) ∩ Γ_j(y)|` for `dist(x, y) = h`, verified constant by
/// direct counting.
pub fn triple_numbers(g: &Graph, t: usize) -> Result<TripleNumbers> {
    g.require_connected_regular()?;
    let dist = g.distances();
    if t > dist.diameter() {
        return Err(Error::InvalidParams(format!(
            "t = {t} exceeds the diameter {}",
            dist.diameter()
        )));
    }
    let n = g.n();
    let w = t + 1;
    let histogram = |x: usize, y: usize| {
        let mut counts = vec![0usize; w * w];
        let (rx, ry) = (dist.row(x), dist.row(y));
        for z in 0..n {
            let (i, j) = (rx[z] as usize, ry[z] as usize);
            if i <= t && j <= t {
                counts[i * w + j] += 1;
            }
        }
        counts
    };
    // Per source vertex: first histogram seen at each h, or a violation.
    type Row = std::result::Result<Vec<Option<(Vec<usize>, usize, usize)>>, Error>;
    let rows: Vec<Row> = (0..n)
        .into_par_iter()
        .map(|x| {
            let mut firsts: Vec<Option<(Vec<usize>, usize, usize)>> = vec![None; w];
            for y in 0..n {
                let h = dist.raw(x, y);
                if h == UNREACHABLE || h as usize > t {
                    continue;
                }
                let h = h as usize;
                let counts = histogram(x, y);
                match &firsts[h] {
                    None => firsts[h] = Some((counts, x, y)),
                    Some((c, _, _)) if *c != counts => {
                        return Err(Error::constancy("triple numbers", h, x, y));
                    }
                    Some(_) => {}
                }
            }
            Ok(firsts)
        })
        .collect();
    let mut reference: Vec<Option<Vec<usize>>> = vec![None; w];
    for row in rows {
        for (h, entry) in row?.into_iter().enumerate() {
            let Some((counts, x, y)) = entry else {
                continue;
            };
            match &reference[h] {
                None => reference[h] = Some(counts),
                Some(c) if *c != counts => {
                    return Err(Error::constancy("triple numbers", h, x, y));
                }
                Some(_) => {}
            }
        }
    }
    let p = reference
        .into_iter()
        .map(|counts| {
            let counts = counts.expect("every distance up to the diameter is attained");
            counts.chunks(w).map(<[usize]>::to_vec).collect()
        })
        .collect();
    Ok(TripleNumbers { t, p })
}

/// Distance-regularity by direct counting of `a_j, b_j, c_j` up to the
/// diameter.
pub fn is_distance_regular(g: &Graph) -> Result<Option<IntersectionArray>> {
    g.require_connected_regular()?;
    let diameter = g.distances().diameter();
    match intersection_numbers(g, diameter) {
        Ok(table) => Ok(Some(IntersectionArray {
            b: table.b[..diameter].to_vec(),
            c: table.c[1..].to_vec(),
        })),
        Err(Error::ConstancyViolation { .. }) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Everything the exact engine knows about a graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WalkRegularityReport {
    pub order: Option<usize>,
    pub d: usize,
    pub diameter: usize,
    pub failure: Option<ConstancyFailure>,
    pub intersection: Option<IntersectionTable>,
    pub triple_numbers: Option<TripleNumbers>,
    pub distance_regular: bool,
    pub intersection_array: Option<IntersectionArray>,
}

impl WalkRegularityReport {
    pub fn compute(g: &Graph) -> Result<Self> {
        let table = WalkTable::compute(g)?;
        Self::from_table(g, &table)
    }

    pub fn from_table(g: &Graph, table: &WalkTable) -> Result<Self> {
        let order = walk_regularity_order_with(g, table)?;
        let intersection = order
            .order
            .map(|t| intersection_numbers(g, t))
            .transpose()?;
        let triple_numbers = order.order.map(|t| triple_numbers(g, t)).transpose()?;
        let intersection_array = is_distance_regular(g)?;
        Ok(WalkRegularityReport {
            order: order.order,
            d: order.d,
            diameter: order.diameter,
            failure: order.failure,
            intersection,
            triple_numbers,
            distance_regular: intersection_array.is_some(),
            intersection_array,
        })
    }

    /// `a_j` when `j` is within the walk-regularity order.
    pub fn a(&self, j: usize) -> Option<usize> {
        self.intersection.as_ref()?.a.get(j).copied()
    }

    pub fn b(&self, j: usize) -> Option<usize> {
        self.intersection.as_ref()?.b.get(j).copied()
    }

    pub fn c(&self, j: usize) -> Option<usize> {
        self.intersection.as_ref()?.c.get(j).copied()
    }
}
