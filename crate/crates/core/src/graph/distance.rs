use std::collections::VecDeque;

use rayon::prelude::*;

use super::{Graph, Vertex};

/// Distance sentinel for pairs in different components.
pub const UNREACHABLE: u32 = u32::MAX;

/// All-pairs hop distances, by breadth-first search from every vertex.
#[derive(Debug, Clone)]
pub struct DistanceData {
    n: usize,
    dist: Vec<u32>,
    diameter: usize,
    connected: bool,
    /// `class_counts[x][i] = |Γ_i(x)|` for `i` up to the diameter.
    class_counts: Vec<Vec<usize>>,
}

pub(crate) fn bfs(g: &Graph, sources: &[Vertex]) -> Vec<u32> {
    let mut dist = vec![UNREACHABLE; g.n()];
    let mut queue = VecDeque::with_capacity(g.n());
    for &s in sources {
        if dist[s] != 0 {
            dist[s] = 0;
            queue.push_back(s);
        }
    }
    while let Some(v) = queue.pop_front() {
        let next = dist[v] + 1;
        for &w in g.neighbors(v) {
            if dist[w] == UNREACHABLE {
                dist[w] = next;
                queue.push_back(w);
            }
        }
    }
    dist
}

impl DistanceData {
    pub(crate) fn compute(g: &Graph) -> Self {
        let n = g.n();
        let rows: Vec<Vec<u32>> = (0..n).into_par_iter().map(|x| bfs(g, &[x])).collect();
        let mut diameter = 0;
        let mut connected = true;
        for &d in rows.iter().flatten() {
            if d == UNREACHABLE {
                connected = false;
            } else {
                diameter = diameter.max(d as usize);
            }
        }
        let class_counts = rows
            .iter()
            .map(|row| {
                let mut counts = vec![0; diameter + 1];
                for &d in row.iter().filter(|&&d| d != UNREACHABLE) {
                    counts[d as usize] += 1;
                }
                counts
            })
            .collect();
        DistanceData {
            n,
            dist: rows.into_iter().flatten().collect(),
            diameter,
            connected,
            class_counts,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Hop distance, or `None` across components.
    pub fn get(&self, x: Vertex, y: Vertex) -> Option<usize> {
        let d = self.dist[x * self.n + y];
        (d != UNREACHABLE).then_some(d as usize)
    }

    /// Raw distance with [`UNREACHABLE`] as the sentinel.
    pub fn raw(&self, x: Vertex, y: Vertex) -> u32 {
        self.dist[x * self.n + y]
    }

    pub fn row(&self, x: Vertex) -> &[u32] {
        &self.dist[x * self.n..(x + 1) * self.n]
    }

    /// Largest finite distance.
    pub fn diameter(&self) -> usize {
        self.diameter
    }

    pub fn connected(&self) -> bool {
        self.connected
    }

    /// `|Γ_i(x)|` for `i = 0..=diameter`.
    pub fn class_counts(&self, x: Vertex) -> &[usize] {
        &self.class_counts[x]
    }

    /// `k_i` if it is the same for every vertex.
    pub fn uniform_class_count(&self, i: usize) -> Option<usize> {
        let first = *self.class_counts.first()?.get(i)?;
        self.class_counts
            .iter()
            .all(|c| c[i] == first)
            .then_some(first)
    }

    /// Vertices at distance exactly `i` from `x`.
    pub fn sphere(&self, x: Vertex, i: usize) -> impl Iterator<Item = Vertex> + '_ {
        self.row(x)
            .iter()
            .enumerate()
            .filter(move |(_, &d)| d as usize == i && d != UNREACHABLE)
            .map(|(y, _)| y)
    }
}
