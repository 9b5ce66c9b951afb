//! Shared corpus and its independently computed invariants.
#![allow(dead_code)]

use walkreg::constructions::*;
use walkreg::graph::graph6::parse_graph6;
use walkreg::graph::*;
use walkreg::Graph;

pub const BIPLANE_FLAGS: &str = include_str!("../fixtures/biplane_flags.g6");
pub const BIGGS_SMITH: &str = include_str!("../fixtures/biggs_smith.g6");
pub const CUBIC_NOT_WALK_REGULAR: &str = include_str!("../fixtures/cubic_not_walk_regular.g6");
pub const FIXTURES: [&str; 3] = [BIPLANE_FLAGS, BIGGS_SMITH, CUBIC_NOT_WALK_REGULAR];

pub fn fixture(text: &str) -> Graph {
    parse_graph6(text.trim()).unwrap()
}

/// Frozen values from an external oracle: exact integer walk counts and a
/// dense eigensolver, run on the same graph6 strings.
pub struct Expected {
    pub name: &'static str,
    pub n: usize,
    pub k: usize,
    pub order: Option<usize>,
    pub diameter: usize,
    /// Degree of the minimal polynomial minus one.
    pub d: usize,
    pub distance_regular: bool,
    /// In decreasing eigenvalue order.
    pub multiplicities: &'static [usize],
}

pub const EXPECTED: &[Expected] = &[
    Expected {
        name: "c5",
        n: 5,
        k: 2,
        order: Some(2),
        diameter: 2,
        d: 2,
        distance_regular: true,
        multiplicities: &[1, 2, 2],
    },
    Expected {
        name: "c6",
        n: 6,
        k: 2,
        order: Some(3),
        diameter: 3,
        d: 3,
        distance_regular: true,
        multiplicities: &[1, 2, 2, 1],
    },
    Expected {
        name: "c7",
        n: 7,
        k: 2,
        order: Some(3),
        diameter: 3,
        d: 3,
        distance_regular: true,
        multiplicities: &[1, 2, 2, 2],
    },
    Expected {
        name: "k5",
        n: 5,
        k: 4,
        order: Some(1),
        diameter: 1,
        d: 1,
        distance_regular: true,
        multiplicities: &[1, 4],
    },
    Expected {
        name: "k33",
        n: 6,
        k: 3,
        order: Some(2),
        diameter: 2,
        d: 2,
        distance_regular: true,
        multiplicities: &[1, 4, 1],
    },
    Expected {
        name: "cp4",
        n: 8,
        k: 6,
        order: Some(2),
        diameter: 2,
        d: 2,
        distance_regular: true,
        multiplicities: &[1, 4, 3],
    },
    Expected {
        name: "octahedron",
        n: 6,
        k: 4,
        order: Some(2),
        diameter: 2,
        d: 2,
        distance_regular: true,
        multiplicities: &[1, 3, 2],
    },
    Expected {
        name: "cube",
        n: 8,
        k: 3,
        order: Some(3),
        diameter: 3,
        d: 3,
        distance_regular: true,
        multiplicities: &[1, 3, 3, 1],
    },
    Expected {
        name: "q4",
        n: 16,
        k: 4,
        order: Some(4),
        diameter: 4,
        d: 4,
        distance_regular: true,
        multiplicities: &[1, 4, 6, 4, 1],
    },
    Expected {
        name: "dodecahedron",
        n: 20,
        k: 3,
        order: Some(5),
        diameter: 5,
        d: 5,
        distance_regular: true,
        multiplicities: &[1, 3, 5, 4, 4, 3],
    },
    Expected {
        name: "icosahedron",
        n: 12,
        k: 5,
        order: Some(3),
        diameter: 3,
        d: 3,
        distance_regular: true,
        multiplicities: &[1, 3, 5, 3],
    },
    Expected {
        name: "petersen",
        n: 10,
        k: 3,
        order: Some(2),
        diameter: 2,
        d: 2,
        distance_regular: true,
        multiplicities: &[1, 5, 4],
    },
    Expected {
        name: "h33",
        n: 27,
        k: 6,
        order: Some(3),
        diameter: 3,
        d: 3,
        distance_regular: true,
        multiplicities: &[1, 6, 12, 8],
    },
    Expected {
        name: "l2_3",
        n: 9,
        k: 4,
        order: Some(2),
        diameter: 2,
        d: 2,
        distance_regular: true,
        multiplicities: &[1, 4, 4],
    },
    Expected {
        name: "l2_4",
        n: 16,
        k: 6,
        order: Some(2),
        diameter: 2,
        d: 2,
        distance_regular: true,
        multiplicities: &[1, 6, 9],
    },
    Expected {
        name: "paley5",
        n: 5,
        k: 2,
        order: Some(2),
        diameter: 2,
        d: 2,
        distance_regular: true,
        multiplicities: &[1, 2, 2],
    },
    Expected {
        name: "paley13",
        n: 13,
        k: 6,
        order: Some(2),
        diameter: 2,
        d: 2,
        distance_regular: true,
        multiplicities: &[1, 6, 6],
    },
    Expected {
        name: "paley17",
        n: 17,
        k: 8,
        order: Some(2),
        diameter: 2,
        d: 2,
        distance_regular: true,
        multiplicities: &[1, 8, 8],
    },
    Expected {
        name: "gp8_3",
        n: 16,
        k: 3,
        order: Some(2),
        diameter: 4,
        d: 5,
        distance_regular: false,
        multiplicities: &[1, 4, 3, 3, 4, 1],
    },
    Expected {
        name: "gp10_3",
        n: 20,
        k: 3,
        order: Some(5),
        diameter: 5,
        d: 5,
        distance_regular: true,
        multiplicities: &[1, 4, 5, 5, 4, 1],
    },
    Expected {
        name: "gp12_5",
        n: 24,
        k: 3,
        order: Some(2),
        diameter: 4,
        d: 6,
        distance_regular: false,
        multiplicities: &[1, 6, 3, 4, 3, 6, 1],
    },
    Expected {
        name: "gp24_5",
        n: 48,
        k: 3,
        order: Some(2),
        diameter: 6,
        d: 10,
        distance_regular: false,
        multiplicities: &[1, 4, 6, 4, 3, 12, 3, 4, 6, 4, 1],
    },
    Expected {
        name: "dodecahedron_double",
        n: 40,
        k: 3,
        order: Some(3),
        diameter: 6,
        d: 8,
        distance_regular: false,
        multiplicities: &[1, 6, 4, 5, 8, 5, 4, 6, 1],
    },
    Expected {
        name: "dodecahedron_dist2",
        n: 20,
        k: 6,
        order: Some(1),
        diameter: 3,
        d: 4,
        distance_regular: false,
        multiplicities: &[1, 6, 4, 5, 4],
    },
    Expected {
        name: "petersen_line",
        n: 15,
        k: 4,
        order: Some(3),
        diameter: 3,
        d: 3,
        distance_regular: true,
        multiplicities: &[1, 5, 4, 5],
    },
    Expected {
        name: "cube_line",
        n: 12,
        k: 4,
        order: Some(1),
        diameter: 3,
        d: 3,
        distance_regular: false,
        multiplicities: &[1, 3, 3, 5],
    },
    Expected {
        name: "petersen_x_c5",
        n: 50,
        k: 6,
        order: Some(1),
        diameter: 4,
        d: 8,
        distance_regular: false,
        multiplicities: &[1, 8, 5, 2, 10, 8, 10, 4, 2],
    },
    Expected {
        name: "c3_x_c3",
        n: 9,
        k: 4,
        order: Some(2),
        diameter: 2,
        d: 2,
        distance_regular: true,
        multiplicities: &[1, 4, 4],
    },
    Expected {
        name: "c5_square",
        n: 25,
        k: 4,
        order: Some(1),
        diameter: 4,
        d: 5,
        distance_regular: false,
        multiplicities: &[1, 4, 4, 4, 8, 4],
    },
    Expected {
        name: "l2_4_coclique2",
        n: 32,
        k: 12,
        order: Some(1),
        diameter: 2,
        d: 3,
        distance_regular: false,
        multiplicities: &[1, 6, 16, 9],
    },
    Expected {
        name: "conference_double5",
        n: 20,
        k: 4,
        order: Some(1),
        diameter: 4,
        d: 6,
        distance_regular: false,
        multiplicities: &[1, 4, 4, 2, 4, 4, 1],
    },
    Expected {
        name: "conference_double13",
        n: 52,
        k: 12,
        order: Some(1),
        diameter: 4,
        d: 6,
        distance_regular: false,
        multiplicities: &[1, 12, 12, 2, 12, 12, 1],
    },
    Expected {
        name: "q4_halved",
        n: 8,
        k: 6,
        order: Some(2),
        diameter: 2,
        d: 2,
        distance_regular: true,
        multiplicities: &[1, 4, 3],
    },
    Expected {
        name: "biplane_flags",
        n: 55,
        k: 4,
        order: Some(3),
        diameter: 4,
        d: 5,
        distance_regular: false,
        multiplicities: &[1, 12, 10, 12, 10, 10],
    },
    Expected {
        name: "biggs_smith",
        n: 102,
        k: 3,
        order: Some(7),
        diameter: 7,
        d: 7,
        distance_regular: true,
        multiplicities: &[1, 9, 18, 16, 17, 16, 9, 16],
    },
    Expected {
        name: "cubic_not_wr",
        n: 8,
        k: 3,
        order: None,
        diameter: 3,
        d: 6,
        distance_regular: false,
        multiplicities: &[1, 1, 1, 1, 2, 1, 1],
    },
];

pub fn build(name: &str) -> Graph {
    let cbd_double = |q| {
        bipartite_double(
            &complement_block_double(&paley(q).unwrap())
                .unwrap()
                .result
                .graph,
        )
        .unwrap()
        .graph
    };
    match name {
        "c5" => cycle(5).unwrap(),
        "c6" => cycle(6).unwrap(),
        "c7" => cycle(7).unwrap(),
        "k5" => complete(5).unwrap(),
        "k33" => complete_multipartite(2, 3).unwrap(),
        "cp4" => cocktail_party(4).unwrap(),
        "octahedron" => octahedron(),
        "cube" => cube(),
        "q4" => hypercube(4).unwrap(),
        "dodecahedron" => dodecahedron(),
        "icosahedron" => icosahedron(),
        "petersen" => petersen(),
        "h33" => hamming(3, 3).unwrap(),
        "l2_3" => rook(3).unwrap(),
        "l2_4" => rook(4).unwrap(),
        "paley5" => paley(5).unwrap(),
        "paley13" => paley(13).unwrap(),
        "paley17" => paley(17).unwrap(),
        "gp8_3" => generalized_petersen(8, 3).unwrap(),
        "gp10_3" => generalized_petersen(10, 3).unwrap(),
        "gp12_5" => generalized_petersen(12, 5).unwrap(),
        "gp24_5" => generalized_petersen(24, 5).unwrap(),
        "dodecahedron_double" => bipartite_double(&dodecahedron()).unwrap().graph,
        "dodecahedron_dist2" => distance_k_graph(&dodecahedron(), 2).unwrap().graph,
        "petersen_line" => line_graph(&petersen()).unwrap().graph,
        "cube_line" => line_graph(&cube()).unwrap().graph,
        "petersen_x_c5" => {
            kronecker_product(&petersen(), &cycle(5).unwrap())
                .unwrap()
                .graph
        }
        "c3_x_c3" => {
            kronecker_product(&cycle(3).unwrap(), &cycle(3).unwrap())
                .unwrap()
                .graph
        }
        "c5_square" => cartesian_square(&cycle(5).unwrap()).unwrap().graph,
        "l2_4_coclique2" => coclique_extension(&rook(4).unwrap(), 2).unwrap().graph,
        "conference_double5" => cbd_double(5),
        "conference_double13" => cbd_double(13),
        "q4_halved" => halved_graphs(&hypercube(4).unwrap()).unwrap().0.graph,
        "biplane_flags" => fixture(BIPLANE_FLAGS),
        "biggs_smith" => fixture(BIGGS_SMITH),
        "cubic_not_wr" => fixture(CUBIC_NOT_WALK_REGULAR),
        other => panic!("unknown corpus graph {other}"),
    }
}

pub fn corpus() -> Vec<(&'static Expected, Graph)> {
    EXPECTED.iter().map(|e| (e, build(e.name))).collect()
}
