mod common;

use std::collections::{BTreeSet, HashSet};

use common::*;
use rand::rngs::StdRng;
use rand::SeedableRng;
use sem_atlas::classify::{automorphism_group_order, is_vertex_transitive, SystoleError};
use sem_atlas::fixtures::{fixture_catalog, load_fixture, FixtureRole};
use sem_atlas::map::face_key;
use sem_atlas::{canonical_form, edge_graph_char_poly, find_isomorphism, homological_systole, PolyhedralMap};

fn fx(id: &str) -> PolyhedralMap {
    load_fixture(id).unwrap()
}

fn small_fixtures() -> Vec<(&'static str, PolyhedralMap)> {
    fixture_catalog().iter().filter(|e| e.n <= 14).map(|e| (e.id, e.load())).collect()
}

#[test]
fn canonical_equality_iff_isomorphic_on_small_fixtures() {
    let mut rng = StdRng::seed_from_u64(21);
    let fixtures = small_fixtures();
    // Each fixture next to a scrambled copy, so both outcomes are exercised.
    let mut pool: Vec<(String, PolyhedralMap)> = Vec::new();
    for (id, m) in &fixtures {
        pool.push((id.to_string(), m.clone()));
        pool.push((format!("{id} scrambled"), scramble(m, &mut rng).0));
    }
    let forms: Vec<_> = pool.iter().map(|(_, m)| canonical_form(m).bytes).collect();
    for i in 0..pool.len() {
        for j in 0..pool.len() {
            let iso = find_isomorphism(&pool[i].1, &pool[j].1, None);
            assert_eq!(forms[i] == forms[j], iso.is_some(), "{} vs {}", pool[i].0, pool[j].0);
            if let Some(iso) = iso {
                assert!(is_isomorphism(&pool[i].1, &pool[j].1, &iso.mapping));
            }
        }
    }
}

#[test]
fn canonical_form_is_stable_under_relabeling() {
    let mut rng = StdRng::seed_from_u64(1);
    let want = canonical_form(&tetrahedron()).bytes;
    for _ in 0..100 {
        assert_eq!(canonical_form(&scramble(&tetrahedron(), &mut rng).0).bytes, want);
    }
    let t = fx("T_2_14__3-3-3-4-4");
    let want = canonical_form(&t);
    for _ in 0..10 {
        let (s, _) = scramble(&t, &mut rng);
        assert_eq!(canonical_form(&s).bytes, want.bytes);
    }
    // The relabeling realises the canonical text.
    let relabeled = t.relabel(&want.relabeling);
    assert_eq!(sem_atlas::serialize(&relabeled).into_bytes(), want.bytes);
}

#[test]
fn the_eleven_small_maps_are_pairwise_distinct() {
    let small: Vec<_> = fixture_catalog().iter().filter(|e| e.role == FixtureRole::Small).collect();
    assert_eq!(small.len(), 11);
    let forms: HashSet<_> = small.iter().map(|e| canonical_form(&e.load()).bytes).collect();
    assert_eq!(forms.len(), 11);
}

#[test]
fn isomorphism_certificates() {
    let mut rng = StdRng::seed_from_u64(9);
    for (id, m) in small_fixtures() {
        let (s, perm) = scramble(&m, &mut rng);
        assert!(is_isomorphism(&m, &s, &perm), "{id}");
        let iso = find_isomorphism(&m, &s, None).unwrap_or_else(|| panic!("{id}"));
        assert!(iso.verify(&m, &s));
        assert!(is_isomorphism(&m, &s, &iso.mapping));
        let back = find_isomorphism(&s, &m, None).expect("symmetric");
        assert!(is_isomorphism(&s, &m, &back.mapping));
    }
    // Same counts, different surfaces.
    assert!(find_isomorphism(&fx("T_1_10__3-3-3-4-4"), &fx("K_1_10__3-3-3-4-4"), None).is_none());
    assert!(find_isomorphism(&fx("T_1_12__3-3-3-4-4"), &fx("T_2_12__3-3-3-4-4"), None).is_none());
    assert!(find_isomorphism(&fx("T_1_12__3-3-3-4-4"), &fx("K_1_12__3-3-4-3-4"), None).is_none());
    assert!(find_isomorphism(&cube(), &octahedron(), None).is_none());
}

#[test]
fn pinned_isomorphisms_honour_the_pin() {
    let t = fx("T_1_10__3-3-3-4-4");
    for v in 0..10 {
        let iso = find_isomorphism(&t, &t, Some((0, v))).expect("vertex-transitive");
        assert_eq!(iso.mapping[0], v);
        assert!(is_isomorphism(&t, &t, &iso.mapping));
    }
    // No automorphism of the stellated tetrahedron moves a degree-4 vertex to a degree-3 one.
    let s = stellated_tetrahedron();
    let hi = (0..5).find(|&v| s.degree(v) == 4).unwrap();
    let lo = (0..5).find(|&v| s.degree(v) == 3).unwrap();
    assert!(find_isomorphism(&s, &s, Some((0, 4))).is_some_and(|i| i.mapping[0] == 4));
    assert!(find_isomorphism(&s, &s, Some((hi, lo))).is_none());
    assert!(find_isomorphism(&s, &s, Some((hi, 99))).is_none());
}

#[test]
fn automorphism_counts_match_brute_force() {
    let mut maps: Vec<(String, PolyhedralMap)> =
        small_fixtures().into_iter().map(|(id, m)| (id.to_string(), m)).collect();
    maps.extend([
        ("tetrahedron".to_string(), tetrahedron()),
        ("cube".to_string(), cube()),
        ("octahedron".to_string(), octahedron()),
        ("moebius torus".to_string(), moebius_torus()),
        ("rp2".to_string(), rp2_6()),
        ("stellated".to_string(), stellated_tetrahedron()),
    ]);
    for (id, m) in &maps {
        let brute = brute_force_automorphisms(m);
        let distinct: BTreeSet<_> = brute.iter().collect();
        assert_eq!(distinct.len(), brute.len());
        assert_eq!(automorphism_group_order(m), brute.len(), "{id}");
        assert_eq!(is_vertex_transitive(m), brute_force_vertex_transitive(m), "{id}");
    }
    assert_eq!(automorphism_group_order(&tetrahedron()), 24);
    assert_eq!(automorphism_group_order(&cube()), 48);
    assert_eq!(automorphism_group_order(&moebius_torus()), 42);
}

#[test]
fn vertex_transitivity_of_the_small_maps() {
    let want = [
        ("T_1_10__3-3-3-4-4", true),
        ("K_1_10__3-3-3-4-4", true),
        ("T_1_12__3-3-3-4-4", true),
        ("T_2_12__3-3-3-4-4", true),
        ("T_3_12__3-3-3-4-4", true),
        ("K_1_12__3-3-3-4-4", true),
        ("K_2_12__3-3-3-4-4", false),
        ("T_1_14__3-3-3-4-4", true),
        ("T_2_14__3-3-3-4-4", true),
        ("K_1_14__3-3-3-4-4", true),
        ("K_1_12__3-3-4-3-4", false),
    ];
    for (id, vt) in want {
        let m = fx(id);
        assert_eq!(brute_force_vertex_transitive(&m), vt, "{id}");
        assert_eq!(m.is_vertex_transitive(), vt, "{id}");
    }
}

#[test]
fn systole_matches_exhaustive_cycles() {
    let maps = maps_up_to_16();
    assert!(maps.len() >= 30);
    for (name, m) in &maps {
        assert!(m.n_vertices() <= 16 && m.n_edges() < 128, "{name}");
        assert_eq!(homological_systole(m), Ok(brute_force_systole(m)), "{name}");
    }
}

#[test]
fn systole_needs_a_flat_surface() {
    assert_eq!(homological_systole(&cube()), Err(SystoleError::NotFlat(2)));
    assert_eq!(homological_systole(&rp2_6()), Err(SystoleError::NotFlat(1)));
    // The 7-vertex torus has every cycle of length 3 spanning a face or not.
    assert_eq!(homological_systole(&moebius_torus()), Ok(3));
}

#[test]
fn small_map_polynomials() {
    let ids = [
        "T_1_12__3-3-3-4-4",
        "T_2_12__3-3-3-4-4",
        "T_3_12__3-3-3-4-4",
        "K_1_12__3-3-3-4-4",
        "K_2_12__3-3-3-4-4",
        "T_1_14__3-3-3-4-4",
        "T_2_14__3-3-3-4-4",
    ];
    let polys: Vec<_> = ids.iter().map(|id| edge_graph_char_poly(&fx(id))).collect();
    let distinct: HashSet<_> = polys.iter().map(|p| p.coeffs().to_vec()).collect();
    assert_eq!(distinct.len(), 7);
    // Printed coefficient lists, leading term first.
    let published = [
        ("T_1_12__3-3-3-4-4", "x^12 - 30x^10 - 24x^9 + 237x^8 + 192x^7 - 708x^6 - 408x^5 + 708x^4 + 208x^3 - 240x^2"),
        ("T_2_12__3-3-3-4-4", "x^12 - 30x^10 - 32x^9 + 237x^8 + 360x^7 - 484x^6 - 696x^5 + 516x^4 + 368x^3 - 240x^2"),
        (
            "K_1_12__3-3-3-4-4",
            "x^12 - 30x^10 - 24x^9 + 243x^8 + 192x^7 - 868x^6 - 528x^5 + 1527x^4 + 576x^3 - 1278x^2 - 216x + 405",
        ),
        (
            "K_2_12__3-3-3-4-4",
            "x^12 - 30x^10 - 32x^9 + 235x^8 + 368x^7 - 452x^6 - 784x^5 + 359x^4 + 592x^3 - 158x^2 - 144x + 45",
        ),
        (
            "T_2_14__3-3-3-4-4",
            "x^14 - 35x^12 - 28x^11 + 399x^10 + 420x^9 - 2107x^8 - 2384x^7 + 5544x^6 + 6244x^5 - 6790x^4 - 7112x^3 + 3157x^2 + 2184x - 845",
        ),
    ];
    for (id, text) in published {
        assert_eq!(edge_graph_char_poly(&fx(id)).coeffs(), &parse_poly(text)[..], "{id}");
    }
}

#[test]
fn t114_polynomial_is_consistent_with_its_edge_count() {
    // The printed list for this map has -34 at x^12, which cannot be the
    // characteristic polynomial of a graph with 35 edges. Pin the computed one.
    let m = fx("T_1_14__3-3-3-4-4");
    assert_eq!(m.n_edges(), 35);
    let printed = parse_poly(
        "x^14 - 34x^12 - 30x^11 + 344x^10 + 467x^9 - 1179x^8 - 2119x^7 + 597x^6 + 2264x^5 + 632x^4 - 559x^3 - 365x^2 - 74x - 5",
    );
    assert_ne!(printed[12], (-35).into());
    let computed = "x^14 - 35x^12 - 28x^11 + 371x^10 + 448x^9 - 1407x^8 - 2160x^7 + 1288x^6 + 2800x^5 + 266x^4 - 980x^3 - 483x^2 - 84x - 5";
    assert_eq!(edge_graph_char_poly(&m).coeffs(), &parse_poly(computed)[..]);
    assert_eq!(edge_graph_char_poly(&m).coeffs(), &char_poly_by_interpolation(&m.adjacency())[..]);
}

#[test]
fn klein_3_3_4_3_4_contains_the_derived_star() {
    // Faces forced around vertices 0 and 2 in the 12-vertex case, with the
    // labels of the reference drawing.
    let m = fx("K_1_12__3-3-4-3-4");
    let have = face_set(&m);
    let want: Vec<Vec<usize>> = vec![
        vec![0, 1, 2],
        vec![0, 4, 5],
        vec![0, 1, 7],
        vec![2, 8, 3],
        vec![2, 8, 9],
        vec![0, 2, 3, 4],
        vec![0, 5, 6, 7],
        vec![2, 1, 6, 9],
    ];
    let probe: BTreeSet<Vec<usize>> = want.iter().map(|f| face_key(f)).collect();
    assert!(probe.is_subset(&have), "{probe:?}");
}
