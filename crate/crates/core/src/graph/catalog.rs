//! Named graph families.
//!
//! Labelling conventions, fixed so that fixtures stay stable:
//!
//! * `cycle(n)`: `i ~ i+1 (mod n)`.
//! * `complete_multipartite(p, s)`: vertex `v` lies in part `v / s`.
//! * `hamming(d, q)`: tuples over `0..q` in lexicographic order, last
//!   coordinate fastest; adjacent when they differ in one coordinate.
//!   `hypercube(d)` is `hamming(d, 2)` and `rook(n)` is `hamming(2, n)`.
//! * `generalized_petersen(n, k)`: outer `u_i = i`, inner `v_i = n + i`;
//!   `u_i ~ u_{i+1}`, `u_i ~ v_i`, `v_i ~ v_{i+k}`. The Petersen graph is
//!   `(5, 2)` and the dodecahedron `(10, 2)`.
//! * `icosahedron()`: `0` top, `1..=5` upper ring, `6..=10` lower ring, `11`
//!   bottom; upper `i` meets lower `5+i` and `6+(i mod 5)`.
//! * `paley(q)`: `Z_q`, adjacent when the difference is a nonzero square.

use super::Graph;
use crate::error::{Error, Result};

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(invalid(format!("cycle needs n >= 3, got {n}")));
    }
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
}

pub fn complete(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(invalid("complete graph needs n >= 1"));
    }
    Ok(Graph::from_fn(n, |_, _| true))
}

pub fn complete_multipartite(parts: usize, size: usize) -> Result<Graph> {
    if parts < 2 || size < 1 {
        return Err(invalid(format!(
            "complete multipartite needs >= 2 parts of size >= 1, got {parts}x{size}"
        )));
    }
    Ok(Graph::from_fn(parts * size, |u, v| u / size != v / size))
}

pub fn cocktail_party(n: usize) -> Result<Graph> {
    complete_multipartite(n, 2)
}

pub fn octahedron() -> Graph {
    complete_multipartite(3, 2).unwrap()
}

pub fn hamming(d: usize, q: usize) -> Result<Graph> {
    if d < 1 || q < 2 {
        return Err(invalid(format!(
            "hamming needs d >= 1 and q >= 2, got ({d}, {q})"
        )));
    }
    let n = q
        .checked_pow(d as u32)
        .filter(|&n| n <= 1 << 20)
        .ok_or_else(|| invalid(format!("hamming({d}, {q}) is too large")))?;
    let digits = |mut v: usize| {
        let mut out = vec![0; d];
        for slot in out.iter_mut().rev() {
            *slot = v % q;
            v /= q;
        }
        out
    };
    Ok(Graph::from_fn(n, |u, v| {
        digits(u)
            .iter()
            .zip(digits(v))
            .filter(|(a, b)| **a != *b)
            .count()
            == 1
    }))
}

pub fn hypercube(d: usize) -> Result<Graph> {
    hamming(d, 2)
}

pub fn cube() -> Graph {
    hypercube(3).unwrap()
}

/// The lattice graph `L_2(n)`, i.e. the `n x n` rook's graph.
pub fn rook(n: usize) -> Result<Graph> {
    hamming(2, n)
}

pub fn generalized_petersen(n: usize, k: usize) -> Result<Graph> {
    if n < 3 || k < 1 || 2 * k >= n {
        return Err(invalid(format!(
            "generalized Petersen G(n, k) needs n >= 3 and 1 <= k < n/2, got ({n}, {k})"
        )));
    }
    let edges = (0..n).flat_map(|i| [(i, (i + 1) % n), (i, n + i), (n + i, n + (i + k) % n)]);
    Graph::from_edges(2 * n, edges)
}

pub fn petersen() -> Graph {
    generalized_petersen(5, 2).unwrap()
}

pub fn dodecahedron() -> Graph {
    generalized_petersen(10, 2).unwrap()
}

pub fn icosahedron() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        let up = 1 + i;
        let up_next = 1 + (i + 1) % 5;
        let low = 6 + i;
        let low_next = 6 + (i + 1) % 5;
        edges.extend([(0, up), (up, up_next), (low, low_next), (11, low)]);
        edges.extend([(up, low), (up, low_next)]);
    }
    Graph::from_edges(12, edges).unwrap()
}

fn is_prime(q: usize) -> bool {
    q >= 2 && (2..).take_while(|d| d * d <= q).all(|d| q % d != 0)
}

/// Paley graph on a prime `q ≡ 1 (mod 4)`; a conference graph.
pub fn paley(q: usize) -> Result<Graph> {
    if !is_prime(q) || q % 4 != 1 {
        return Err(invalid(format!("paley needs a prime q = 1 mod 4, got {q}")));
    }
    let mut square = vec![false; q];
    for x in 1..q {
        square[x * x % q] = true;
    }
    Ok(Graph::from_fn(q, |u, v| square[v - u]))
}

/// Names accepted by [`catalog`], with their parameter lists.
pub const CATALOG_NAMES: &[(&str, &str)] = &[
    ("cycle", "n"),
    ("complete", "n"),
    ("complete_multipartite", "parts size"),
    ("cocktail_party", "n"),
    ("hypercube", "d"),
    ("cube", ""),
    ("hamming", "d q"),
    ("rook", "n"),
    ("octahedron", ""),
    ("dodecahedron", ""),
    ("icosahedron", ""),
    ("petersen", ""),
    ("generalized_petersen", "n k"),
    ("paley", "q"),
];

/// Looks up a named family. `L2` / `lattice` alias `rook`, `conference`
/// aliases `paley`.
pub fn catalog(name: &str, params: &[usize]) -> Result<Graph> {
    let arity = |want: usize| {
        if params.len() == want {
            Ok(())
        } else {
            Err(invalid(format!(
                "`{name}` takes {want} parameter(s), got {}",
                params.len()
            )))
        }
    };
    match name {
        "cycle" => arity(1).and_then(|_| cycle(params[0])),
        "complete" => arity(1).and_then(|_| complete(params[0])),
        "complete_multipartite" => {
            arity(2).and_then(|_| complete_multipartite(params[0], params[1]))
        }
        "cocktail_party" => arity(1).and_then(|_| cocktail_party(params[0])),
        "hypercube" => arity(1).and_then(|_| hypercube(params[0])),
        "cube" => arity(0).map(|_| cube()),
        "hamming" => arity(2).and_then(|_| hamming(params[0], params[1])),
        "rook" | "L2" | "lattice" => arity(1).and_then(|_| rook(params[0])),
        "octahedron" => arity(0).map(|_| octahedron()),
        "dodecahedron" => arity(0).map(|_| dodecahedron()),
        "icosahedron" => arity(0).map(|_| icosahedron()),
        "petersen" => arity(0).map(|_| petersen()),
        "generalized_petersen" | "gp" => {
            arity(2).and_then(|_| generalized_petersen(params[0], params[1]))
        }
        "paley" | "conference" => arity(1).and_then(|_| paley(params[0])),
        other => Err(Error::UnknownCatalog(other.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn moebius_kantor() {
        let g = generalized_petersen(8, 3).unwrap();
        assert_eq!(g.n(), 16);
        assert_eq!(g.edge_count(), 24);
        assert_eq!(g.valency(), Some(3));
        assert_eq!(g.metrics().girth, Some(6));
    }

    #[test]
    fn octahedron_from_multipartite() {
        let g = catalog("complete_multipartite", &[3, 2]).unwrap();
        assert_eq!(g.n(), 6);
        assert_eq!(g, octahedron());
        assert_eq!(g.valency(), Some(4));
    }

    #[test]
    fn icosahedron_shape() {
        let g = icosahedron();
        assert_eq!(g.n(), 12);
        assert_eq!(g.edge_count(), 30);
        assert_eq!(g.valency(), Some(5));
        assert_eq!(g.distances().diameter(), 3);
    }

    #[test]
    fn family_counts() {
        let rook3 = rook(3).unwrap();
        assert_eq!((rook3.n(), rook3.valency()), (9, Some(4)));
        let q4 = hypercube(4).unwrap();
        assert_eq!((q4.n(), q4.valency(), q4.edge_count()), (16, Some(4), 32));
        let p13 = paley(13).unwrap();
        assert_eq!((p13.n(), p13.valency()), (13, Some(6)));
        assert_eq!(paley(5).unwrap(), cycle(5).unwrap());
        let d = dodecahedron();
        assert_eq!((d.n(), d.edge_count()), (20, 30));
        assert_eq!(cocktail_party(4).unwrap().valency(), Some(6));
    }

    #[test]
    fn bad_params() {
        assert!(matches!(
            generalized_petersen(8, 4),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            generalized_petersen(8, 0),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(paley(7), Err(Error::InvalidParams(_))));
        assert!(matches!(paley(9), Err(Error::InvalidParams(_))));
        assert!(matches!(cycle(2), Err(Error::InvalidParams(_))));
        assert!(matches!(
            catalog("cycle", &[]),
            Err(Error::InvalidParams(_))
        ));
        assert!(matches!(
            catalog("heawood", &[]),
            Err(Error::UnknownCatalog(_))
        ));
    }
}
