use serde::Serialize;

use super::distance::{bfs, UNREACHABLE};
use super::Graph;

/// Basic structural invariants. `None` in `girth` / `odd_girth` means
/// infinite (acyclic, respectively bipartite).
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GraphMetrics {
    pub n: usize,
    pub edges: usize,
    pub regular: Option<usize>,
    pub connected: bool,
    pub diameter: Option<usize>,
    pub bipartite: bool,
    pub girth: Option<usize>,
    pub odd_girth: Option<usize>,
    pub complete_multipartite: bool,
}

impl GraphMetrics {
    pub(crate) fn compute(g: &Graph) -> Self {
        let dist = g.distances();
        let odd_girth = odd_girth(g);
        GraphMetrics {
            n: g.n(),
            edges: g.edge_count(),
            regular: g.valency(),
            connected: dist.connected(),
            diameter: dist.connected().then(|| dist.diameter()),
            bipartite: odd_girth.is_none(),
            girth: girth(g),
            odd_girth,
            complete_multipartite: is_complete_multipartite(g),
        }
    }

    /// `s` in odd-girth `2s + 1`; `None` for bipartite graphs.
    pub fn odd_girth_half(&self) -> Option<usize> {
        self.odd_girth.map(|og| (og - 1) / 2)
    }
}

/// Shortest cycle length. A BFS from `v` closes a cycle of length
/// `d(a) + d(b) + 1` at every non-tree edge; the minimum over all roots is
/// exact.
fn girth(g: &Graph) -> Option<usize> {
    let n = g.n();
    let mut best: Option<usize> = None;
    let mut dist = vec![UNREACHABLE; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = std::collections::VecDeque::new();
    for root in 0..n {
        dist.fill(UNREACHABLE);
        parent.fill(usize::MAX);
        dist[root] = 0;
        queue.clear();
        queue.push_back(root);
        while let Some(v) = queue.pop_front() {
            if let Some(b) = best {
                if 2 * dist[v] as usize + 1 >= b {
                    break;
                }
            }
            for &w in g.neighbors(v) {
                if dist[w] == UNREACHABLE {
                    dist[w] = dist[v] + 1;
                    parent[w] = v;
                    queue.push_back(w);
                } else if parent[v] != w {
                    let len = (dist[v] + dist[w] + 1) as usize;
                    best = Some(best.map_or(len, |b| b.min(len)));
                }
            }
        }
    }
    best
}

/// Shortest odd cycle. From each root, an edge joining two vertices on the
/// same BFS level closes an odd closed walk of length `2d + 1`; rooted on
/// the shortest odd cycle this is attained exactly.
fn odd_girth(g: &Graph) -> Option<usize> {
    let mut best: Option<usize> = None;
    for root in 0..g.n() {
        let dist = bfs(g, &[root]);
        for (a, b) in g.edges() {
            if dist[a] != UNREACHABLE && dist[a] == dist[b] {
                let len = 2 * dist[a] as usize + 1;
                best = Some(best.map_or(len, |x| x.min(len)));
            }
        }
    }
    best
}

/// Complete multipartite with at least two equal parts: non-adjacency
/// (with reflexivity) is an equivalence relation whose classes all have the
/// same size.
fn is_complete_multipartite(g: &Graph) -> bool {
    let n = g.n();
    if n < 2 {
        return false;
    }
    let mut class = vec![usize::MAX; n];
    let mut sizes = Vec::new();
    for x in 0..n {
        if class[x] != usize::MAX {
            continue;
        }
        let id = sizes.len();
        let members: Vec<usize> = (0..n).filter(|&y| y == x || !g.is_adjacent(x, y)).collect();
        for &y in &members {
            if class[y] != usize::MAX {
                return false;
            }
            class[y] = id;
        }
        sizes.push(members.len());
    }
    if sizes.len() < 2 || sizes.iter().any(|&s| s != sizes[0]) {
        return false;
    }
    // Every cross-class pair must be adjacent and every in-class pair not.
    (0..n).all(|x| (0..n).all(|y| x == y || g.is_adjacent(x, y) == (class[x] != class[y])))
}
