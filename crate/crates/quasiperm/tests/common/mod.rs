//! Shared corpora for the integration suites: every small graph up to
//! isomorphism, a spread of building sets, and a deterministic mix of
//! structured and randomly thinned matroids.

use quasiperm::{BuildingSet, Graph, Matroid};
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

/// All isomorphism classes of graphs on 1..=max_n vertices.
pub fn graph_corpus(max_n: usize) -> Vec<Graph> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(Graph::enumerate_iso_classes(n, false).expect("small n"));
    }
    out
}

/// Building sets of assorted shapes on up to five elements.
pub fn building_set_corpus() -> Vec<BuildingSet> {
    let mut out = vec![
        BuildingSet::discrete(1).unwrap(),
        BuildingSet::discrete(4).unwrap(),
        BuildingSet::simplex(3).unwrap(),
        BuildingSet::simplex(5).unwrap(),
        BuildingSet::boolean(3).unwrap(),
        BuildingSet::boolean(4).unwrap(),
        // Two components: a segment and a triangle's worth of members.
        BuildingSet::new(
            5,
            &[
                vec![1],
                vec![2],
                vec![3],
                vec![4],
                vec![5],
                vec![1, 2],
                vec![3, 4],
                vec![4, 5],
                vec![3, 5],
                vec![3, 4, 5],
            ],
        )
        .unwrap(),
    ];
    // Graphical building sets of all connected 4-vertex graphs.
    for g in Graph::enumerate_iso_classes(4, true).expect("small n") {
        out.push(g.building_set().expect("graphical"));
    }
    out
}

/// Uniform matroids for all ranks up to n = 5, the two rank-3 collision
/// matroids on six elements, a couple of direct sums, and deterministic
/// sparse thinnings of uniform matroids that pass validation.
pub fn matroid_corpus() -> Vec<Matroid> {
    let mut out = Vec::new();
    for n in 1..=5 {
        for r in 0..=n {
            out.push(Matroid::uniform(n, r).unwrap());
        }
    }
    out.push(Matroid::m1());
    out.push(Matroid::m2());
    out.push(
        Matroid::uniform(2, 1)
            .unwrap()
            .direct_sum(&Matroid::uniform(2, 1).unwrap())
            .unwrap(),
    );
    out.push(
        Matroid::uniform(3, 2)
            .unwrap()
            .direct_sum(&Matroid::uniform(2, 2).unwrap())
            .unwrap(),
    );
    out.extend(random_thinned_matroids(0xC0FFEE, 6));
    out
}

/// Remove random bases from uniform matroids, keeping only removals that
/// still satisfy basis exchange. Deterministic in the seed.
pub fn random_thinned_matroids(seed: u64, count: usize) -> Vec<Matroid> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < count && attempts < 500 {
        attempts += 1;
        let n = rng.gen_range(4..=5);
        let r = rng.gen_range(2..n);
        let uniform = Matroid::uniform(n, r).unwrap();
        let mut bases = uniform.bases().to_vec();
        let removals = rng.gen_range(1..=2);
        for _ in 0..removals {
            if bases.len() > 1 {
                let at = rng.gen_range(0..bases.len());
                bases.remove(at);
            }
        }
        if let Ok(m) = Matroid::from_masks(uniform.ground(), bases) {
            if !out.contains(&m) {
                out.push(m);
            }
        }
    }
    assert!(out.len() == count, "thinning produced only {} matroids", out.len());
    out
}
