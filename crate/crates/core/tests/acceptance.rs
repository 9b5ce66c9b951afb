//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

mod common;

use std::process::ExitCode;
use std::time::Instant;

use common::{build, corpus, fixture, Expected, FIXTURES};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use walkreg::bounds::{BoundsData, BoundsReport};
use walkreg::clique::{delsarte_bound, dual_graph, geometric_decomposition, maximal_cliques};
use walkreg::constructions::{
    bipartite_double, coclique_extension, complement_block_double, distance_k_graph,
};
use walkreg::exact_walk::{walk_regularity_order, WalkRegularityReport};
use walkreg::graph::graph6::{encode_graph6, parse_graph6};
use walkreg::graph::{
    complete, cube, dodecahedron, generalized_petersen, icosahedron, octahedron, paley, petersen,
    rook,
};
use walkreg::report::{analyze, AnalysisOptions};
use walkreg::spectral::{
    default_group_tolerance, default_identification_tolerance, idempotent, representation,
    representation_quotient, spectral_wr_order, spectrum, Spectrum,
};
use walkreg::Graph;

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>, what: &str) -> Result<T, String> {
    r.map_err(|e| format!("{what}: {e}"))
}

fn spec_of(g: &Graph) -> Result<Spectrum, String> {
    ok(spectrum(g, default_group_tolerance(g)), "spectrum")
}

fn order_of(g: &Graph) -> Result<Option<usize>, String> {
    Ok(ok(walk_regularity_order(g), "walk order")?.order)
}

/// `want` as `(value, multiplicity)` pairs in decreasing order.
fn spectrum_matches(s: &Spectrum, want: &[(f64, usize)], tol: f64) -> Result<(), String> {
    let got: Vec<(f64, usize)> = s
        .eigenvalues()
        .iter()
        .map(|e| (e.value, e.multiplicity))
        .collect();
    ensure!(
        got.len() == want.len(),
        "spectrum {got:?}, expected {want:?}"
    );
    for (&(gv, gm), &(wv, wm)) in got.iter().zip(want) {
        ensure!(
            gm == wm && (gv - wv).abs() <= tol,
            "spectrum {got:?}, expected {want:?}"
        );
    }
    Ok(())
}

struct Analysed {
    expected: &'static Expected,
    graph: Graph,
    walk: WalkRegularityReport,
    bounds: BoundsReport,
}

fn analyse_corpus() -> Result<Vec<Analysed>, String> {
    corpus()
        .into_iter()
        .map(|(expected, graph)| {
            let walk = ok(WalkRegularityReport::compute(&graph), expected.name)?;
            let data = ok(BoundsData::compute(&graph), expected.name)?;
            let bounds = ok(
                walkreg::bounds::bounds_report(&data.input(&graph)),
                expected.name,
            )?;
            Ok(Analysed {
                expected,
                graph,
                walk,
                bounds,
            })
        })
        .collect()
}

fn criterion_1(corpus: &[Analysed]) -> Outcome {
    ensure!(
        corpus.len() >= 25,
        "corpus has only {} graphs",
        corpus.len()
    );
    let fixtures = corpus
        .iter()
        .filter(|a| {
            matches!(
                a.expected.name,
                "biplane_flags" | "biggs_smith" | "cubic_not_wr"
            )
        })
        .count();
    ensure!(fixtures >= 2, "corpus has {fixtures} fixtures");
    for a in corpus {
        let spectral = ok(spectral_wr_order(&a.graph), a.expected.name)?;
        ensure!(
            spectral == a.walk.order && a.walk.order == a.expected.order,
            "{}: exact {:?}, spectral {:?}, external {:?}",
            a.expected.name,
            a.walk.order,
            spectral,
            a.expected.order
        );
    }
    Ok(format!(
        "{} graphs, exact = spectral = external oracle",
        corpus.len()
    ))
}

fn criterion_2() -> Outcome {
    let g = dodecahedron();
    let r = ok(WalkRegularityReport::compute(&g), "dodecahedron")?;
    ensure!(r.order == Some(5), "order {:?}", r.order);
    let array = r
        .intersection_array
        .ok_or("dodecahedron not distance-regular")?;
    ensure!(
        array.b == [3, 2, 1, 1, 1] && array.c == [1, 1, 1, 2, 3],
        "intersection array {array}"
    );
    let double = ok(bipartite_double(&g), "bipartite double")?;
    let double_order = order_of(&double.graph)?;
    ensure!(
        double_order == Some(3),
        "bipartite double order {double_order:?}"
    );
    let d2 = ok(distance_k_graph(&g, 2), "distance-2 graph")?;
    let d2_order = order_of(&d2.graph)?;
    ensure!(d2_order == Some(1), "distance-2 order {d2_order:?}");
    Ok(format!(
        "order 5, array {array}, double order 3, distance-2 order 1"
    ))
}

fn criterion_3() -> Outcome {
    let g = ok(generalized_petersen(8, 3), "GP(8,3)")?;
    let r = ok(WalkRegularityReport::compute(&g), "GP(8,3)")?;
    ensure!(r.order == Some(2), "order {:?}", r.order);
    ensure!(!r.distance_regular, "GP(8,3) reported distance-regular");
    let s = spec_of(&g)?;
    let three = s
        .eigenvalues()
        .iter()
        .find(|e| e.multiplicity == 3)
        .ok_or("no multiplicity-3 eigenvalue")?;
    let table = r.intersection.ok_or("no intersection numbers")?;
    ensure!(
        table.k == 3 && table.a[1] == 0 && table.a[2] == 0,
        "k = {}, a_1 = {}, a_2 = {}",
        table.k,
        table.a[1],
        table.a[2]
    );
    let data = ok(BoundsData::compute(&g), "bounds")?;
    let implications = ok(
        walkreg::bounds::multiplicity_theorems(&data.input(&g)),
        "theorems",
    )?;
    let classification = implications
        .iter()
        .find(|r| r.name == "multiplicity 3 classification")
        .ok_or("classification missing")?;
    ensure!(
        classification.applicable && classification.holds == Some(true),
        "classification record {classification:?}"
    );
    Ok(format!(
        "order 2, not distance-regular, θ = {:.6} has multiplicity 3, k = 3 and a_1 = a_2 = 0",
        three.value
    ))
}

fn conference_pipeline(q: usize) -> Result<String, String> {
    let base = ok(paley(q), "paley")?;
    let cbd = ok(complement_block_double(&base), "complement block double")?;
    let double = ok(bipartite_double(&cbd.result.graph), "bipartite double")?.graph;
    let n = q as f64;
    let r = n.sqrt();
    let m = q - 1;
    let want = [
        (n - 1.0, 1),
        (r, m),
        (1.0, m),
        (0.0, 2),
        (-1.0, m),
        (-r, m),
        (1.0 - n, 1),
    ];
    let s = spec_of(&double)?;
    spectrum_matches(&s, &want, 1e-8)?;
    let order = order_of(&double)?;
    ensure!(
        order.is_some_and(|t| t >= 1),
        "paley({q}) pipeline order {order:?}"
    );
    let zero = s.index_of(0.0).ok_or("no eigenvalue 0")?;
    let e = ok(idempotent(&double, &s, zero), "idempotent")?;
    let rep = ok(representation(&double, &e), "representation")?;
    let quotient = ok(
        representation_quotient(&double, &rep, default_identification_tolerance(&rep)),
        "quotient",
    )?;
    let qg = &quotient.quotient;
    let is_cycle = qg.n() >= 3 && qg.valency() == Some(2) && qg.is_connected();
    ensure!(
        is_cycle,
        "paley({q}) quotient is not a cycle: {} vertices",
        qg.n()
    );
    // Length and class sizes frozen from an external eigensolver.
    ensure!(
        qg.n() == 4 && quotient.classes.iter().all(|c| c.len() == q),
        "paley({q}) quotient C{} with classes {:?}",
        qg.n(),
        quotient.classes.iter().map(Vec::len).collect::<Vec<_>>()
    );
    ensure!(
        quotient.cover.equitable && quotient.cover.classes_independent,
        "paley({q}) partition {:?}",
        quotient.cover
    );
    Ok(format!(
        "paley({q}): order {}, quotient C{}",
        order.unwrap(),
        qg.n()
    ))
}

fn criterion_4() -> Outcome {
    let s = spec_of(&octahedron())?;
    spectrum_matches(&s, &[(4.0, 1), (0.0, 3), (-2.0, 2)], 1e-9)?;
    let five = conference_pipeline(5)?;
    let thirteen = conference_pipeline(13)?;
    Ok(format!("octahedron spectrum ok; {five}; {thirteen}"))
}

fn criterion_5(corpus: &[Analysed]) -> Outcome {
    let mut checked = 0;
    for a in corpus
        .iter()
        .filter(|a| a.walk.order.is_some_and(|t| t >= 1))
    {
        let s = spec_of(&a.graph)?;
        let bound = ok(delsarte_bound(a.expected.k, s.smallest()), a.expected.name)?.bound;
        let cliques = ok(maximal_cliques(&a.graph), a.expected.name)?;
        for c in &cliques.cliques {
            ensure!(
                c.len() as f64 <= bound + 1e-7 * (c.len() as f64).sqrt(),
                "{}: clique of size {} above bound {bound}",
                a.expected.name,
                c.len()
            );
        }
        checked += 1;
    }
    let budget = walkreg::clique::DEFAULT_NODE_BUDGET;
    let cover = |g: &Graph| ok(geometric_decomposition(g, budget), "decomposition");

    let oct = octahedron();
    let oc = cover(&oct)?.ok_or("octahedron not geometric")?;
    ensure!(
        oc.lines.len() == 4 && oc.lines.iter().all(|l| l.len() == 3),
        "octahedron lines {:?}",
        oc.lines
    );
    let od = ok(dual_graph(&oc, &oct), "dual")?;
    ensure!(od == ok(complete(4), "K4")?, "octahedron dual is not K4");

    let l23 = ok(rook(3), "L2(3)")?;
    let lc = cover(&l23)?.ok_or("L2(3) not geometric")?;
    ensure!(
        lc.lines.len() == 6 && lc.lines.iter().all(|l| l.len() == 3),
        "L2(3) lines {:?}",
        lc.lines
    );
    let ld = ok(dual_graph(&lc, &l23), "dual")?;
    let m = ld.metrics();
    ensure!(
        ld.n() == 6 && ld.valency() == Some(3) && m.bipartite && m.connected,
        "L2(3) dual is not K3,3"
    );

    for (name, g) in [("petersen", petersen()), ("icosahedron", icosahedron())] {
        ensure!(cover(&g)?.is_none(), "{name} reported geometric");
    }
    Ok(format!(
        "Delsarte bound on {checked} 1-walk-regular graphs; octahedron 4 triangles with dual K4; \
         L2(3) 6 lines with dual K3,3; petersen and icosahedron not geometric"
    ))
}

fn criterion_6() -> Outcome {
    let fundamental = |g: &Graph| -> Result<walkreg::bounds::FundamentalRecord, String> {
        let data = ok(BoundsData::compute(g), "bounds")?;
        ok(
            walkreg::bounds::fundamental_bound(&data.input(g)),
            "fundamental bound",
        )
    };

    let ico = fundamental(&icosahedron())?;
    let gap = ico.gap.ok_or("icosahedron: bound not evaluated")?;
    ensure!(gap.abs() <= 1e-9, "icosahedron gap {gap:e}");
    let analysis = ico.analysis.ok_or("icosahedron: no equality analysis")?;
    let srg = analysis
        .local_srg
        .ok_or("icosahedron: local graphs not strongly regular")?;
    ensure!(
        (srg.v, srg.k, srg.lambda, srg.mu) == (5, 2, 0, 1),
        "icosahedron local graphs SRG({},{},{},{})",
        srg.v,
        srg.k,
        srg.lambda,
        srg.mu
    );

    let cube_record = fundamental(&cube())?;
    let cube_gap = cube_record.gap.ok_or("cube: bound not evaluated")?;
    let branch = cube_record.analysis.map(|a| a.branch);
    ensure!(
        cube_gap.abs() <= 1e-9 && cube_record.equality == Some(true) && branch == Some("bipartite"),
        "cube gap {cube_gap:e}, branch {branch:?}"
    );

    let pet = fundamental(&petersen())?;
    let pet_gap = pet.gap.ok_or("petersen: bound not evaluated")?;
    ensure!(
        (pet_gap - 4.0).abs() <= 1e-9 && pet.equality == Some(false),
        "petersen gap {pet_gap}"
    );
    Ok(format!(
        "icosahedron gap {gap:.1e} with SRG(5,2,0,1) locals; cube equality via bipartite branch; petersen gap {pet_gap:.9}"
    ))
}

fn criterion_7(corpus: &[Analysed]) -> Outcome {
    let mut checked = 0;
    for a in corpus
        .iter()
        .filter(|a| a.walk.order.is_some_and(|t| t >= 2))
    {
        let t = &a.bounds.terwilliger;
        if t.asserted {
            ensure!(
                t.pass == Some(true),
                "{}: Terwilliger bounds fail",
                a.expected.name
            );
            checked += 1;
        }
    }
    ensure!(checked > 0, "no 2-walk-regular graph met the guards");

    let g = ok(
        coclique_extension(&ok(rook(4), "L2(4)")?, 2),
        "coclique extension",
    )?
    .graph;
    let data = ok(BoundsData::compute(&g), "bounds")?;
    let report = ok(
        walkreg::bounds::terwilliger_local_bounds(&data.input(&g)),
        "Terwilliger",
    )?;
    ensure!(report.b1 == Some(7), "b_1 = {:?}", report.b1);
    ensure!(
        (data.spectrum.smallest() + 4.0).abs() < 1e-9,
        "θ_d = {}",
        data.spectrum.smallest()
    );
    let upper = report.upper_bound.ok_or("upper bound not evaluated")?;
    ensure!((upper - 4.0 / 3.0).abs() < 1e-9, "upper bound {upper}");
    let etas: Vec<f64> = report.vertices.iter().filter_map(|v| v.eta_1).collect();
    ensure!(
        !etas.is_empty() && etas.iter().all(|e| (e - 4.0).abs() < 1e-9),
        "η_1 values {etas:?}"
    );
    ensure!(
        report.vertices.iter().all(|v| !v.upper_ok) && report.pass == Some(false),
        "upper bound not reported violated"
    );
    Ok(format!(
        "hold on {checked} 2-walk-regular graphs; L2(4) 2-coclique extension has η_1 = 4 > {upper:.6}"
    ))
}

fn criterion_8(corpus: &[Analysed]) -> Outcome {
    let mut checked = 0;
    let mut three = Vec::new();
    for a in corpus {
        let godsil = &a.bounds.godsil;
        let qualifies =
            a.walk.order.is_some_and(|t| t >= 2) && !a.graph.metrics().complete_multipartite;
        ensure!(
            godsil.applicable == (qualifies && a.expected.k >= 3),
            "{}: guard evaluation {:?}",
            a.expected.name,
            godsil.guards
        );
        if !godsil.applicable {
            continue;
        }
        for r in &godsil.records {
            ensure!(
                r.pass && a.expected.k <= (r.multiplicity + 2) * (r.multiplicity - 1) / 2,
                "{}: k = {} above bound for m = {}",
                a.expected.name,
                a.expected.k,
                r.multiplicity
            );
            checked += 1;
            if r.multiplicity == 3 {
                ensure!(
                    a.expected.k <= 5,
                    "{}: m = 3 with k = {}",
                    a.expected.name,
                    a.expected.k
                );
                three.push(a.expected.name);
            }
        }
    }
    three.dedup();
    ensure!(
        !three.is_empty(),
        "no multiplicity-3 instance in the corpus"
    );
    Ok(format!(
        "{checked} eigenvalues checked; m = 3 with k <= 5 on {}",
        three.join(", ")
    ))
}

fn criterion_9(corpus: &[Analysed]) -> Outcome {
    let mut cubic = Vec::new();
    for a in corpus.iter().filter(|a| a.expected.k == 3) {
        if let Some(t) = a.walk.order {
            if t >= 1 && a.walk.diameter >= 2 {
                ensure!(t >= 2, "{}: cubic with order {t}", a.expected.name);
                cubic.push(a.expected.name);
            }
        }
    }
    ensure!(
        !cubic.is_empty(),
        "no cubic 1-walk-regular graph in the corpus"
    );
    for name in ["petersen_x_c5", "c3_x_c3"] {
        let t = order_of(&build(name))?;
        ensure!(t.is_some_and(|t| t >= 1), "{name}: order {t:?}");
    }
    Ok(format!(
        "{} cubic graphs have order >= 2; petersen x C5 and C3 x C3 are 1-walk-regular",
        cubic.len()
    ))
}

fn criterion_10() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed);
    for i in 0..1000 {
        let n = rng.gen_range(0..=50);
        let p: f64 = rng.gen();
        let g = Graph::from_fn(n, |_, _| rng.gen_bool(p));
        let text = ok(encode_graph6(&g), "encode")?;
        let back = ok(parse_graph6(&text), "parse")?;
        ensure!(back == g, "random graph {i} (n = {n}) did not round-trip");
    }
    for text in FIXTURES {
        let g = fixture(text);
        ensure!(
            ok(encode_graph6(&g), "encode")? == text.trim(),
            "fixture did not round-trip"
        );
    }
    let options = AnalysisOptions::default();
    for name in [
        "dodecahedron",
        "gp8_3",
        "biplane_flags",
        "conference_double13",
    ] {
        let g = build(name);
        let runs: Vec<String> = (0..3)
            .map(|_| ok(analyze(&g, &options), name).map(|r| r.to_json()))
            .collect::<Result<_, _>>()?;
        ensure!(
            runs[0] == runs[1] && runs[1] == runs[2],
            "{name}: reports differ between runs"
        );
    }
    Ok("1000 random graphs and 3 fixtures round-trip; reports identical over 3 runs".into())
}

fn main() -> ExitCode {
    let start = Instant::now();
    let corpus = match analyse_corpus() {
        Ok(c) => c,
        Err(e) => {
            println!("FAIL corpus analysis: {e}");
            return ExitCode::FAILURE;
        }
    };
    let results: Vec<(&str, Outcome)> = vec![
        ("1 dual-oracle agreement", criterion_1(&corpus)),
        ("2 dodecahedron", criterion_2()),
        ("3 GP(8,3)", criterion_3()),
        ("4 spectra and conference double", criterion_4()),
        ("5 Delsarte cliques and geometry", criterion_5(&corpus)),
        ("6 fundamental bound", criterion_6()),
        ("7 Terwilliger bounds", criterion_7(&corpus)),
        ("8 Godsil bound", criterion_8(&corpus)),
        ("9 cubic and Kronecker orders", criterion_9(&corpus)),
        ("10 graph6 and report determinism", criterion_10()),
    ];
    let mut failed = 0;
    for (name, outcome) in &results {
        match outcome {
            Ok(detail) => println!("PASS criterion {name}: {detail}"),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {name}: {why}");
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed in {:.1}s",
        results.len() - failed,
        start.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
