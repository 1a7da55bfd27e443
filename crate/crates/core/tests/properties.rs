use std::collections::{BTreeMap, HashMap};

use proptest::prelude::*;

use skewquiver::cli::document::{CocycleDocument, GroupDocument, QuiverDocument, WitnessDocument};
use skewquiver::cli::to_json;
use skewquiver::cstar::{
    acyclic_block_structure, graded_dimensions, path_space, regular_vertices, BlockStructure,
};
use skewquiver::fixtures::standard_groups;
use skewquiver::group::{is_free, validate_action};
use skewquiver::quiver::{iso_search, EdgeSpec, FiniteQuiver, Weight};
use skewquiver::skew::{
    check_skew_orbit, gross_tucker_reconstruct, pair_index, quotient_quiver, skew_product,
    split_index, translation_action, Cocycle, Section,
};
use skewquiver::verify::check_path_lifting;

type Raw = (
    usize,
    Vec<(usize, usize, i64, i64, usize)>,
    Vec<usize>,
    usize,
);

fn build(raw: Raw, acyclic: bool) -> (FiniteQuiver, Cocycle) {
    let (n, edges, rank, gi) = raw;
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let mut specs = Vec::new();
    let mut labels = Vec::new();
    for (s, r, p, d, k) in edges {
        let (s, r) = if acyclic {
            if s == r {
                continue;
            }
            if rank[s] < rank[r] {
                (s, r)
            } else {
                (r, s)
            }
        } else {
            (s, r)
        };
        specs.push(EdgeSpec::new(
            format!("e{}", specs.len()),
            names[s].clone(),
            names[r].clone(),
            Weight::new(p, d),
        ));
        labels.push(k);
    }
    let q = FiniteQuiver::new(names, specs).unwrap();
    let (_, group) = standard_groups().swap_remove(gi);
    let values: Vec<usize> = labels.iter().map(|k| k % group.order()).collect();
    let k = Cocycle::from_indices(&q, group, &values);
    (q, k)
}

fn raw(max_v: usize, max_e: usize) -> impl Strategy<Value = Raw> {
    (1..=max_v).prop_flat_map(move |n| {
        (
            Just(n),
            prop::collection::vec((0..n, 0..n, 1i64..=12, 1i64..=12, 0usize..720), 0..=max_e),
            Just((0..n).collect::<Vec<usize>>()).prop_shuffle(),
            0usize..5,
        )
    })
}

fn any_case() -> impl Strategy<Value = (FiniteQuiver, Cocycle)> {
    raw(6, 10).prop_map(|r| build(r, false))
}

fn acyclic_case() -> impl Strategy<Value = (FiniteQuiver, Cocycle)> {
    raw(6, 9).prop_map(|r| build(r, true))
}

/// Same quiver with vertices and edges shuffled and renamed.
fn relabel(q: &FiniteQuiver, vorder: &[usize], eorder: &[usize]) -> FiniteQuiver {
    let mut vname = vec![String::new(); q.vertex_count()];
    for (pos, &v) in vorder.iter().enumerate() {
        vname[v] = format!("x{pos}");
    }
    let vertices: Vec<String> = vorder.iter().map(|&v| vname[v].clone()).collect();
    let edges = eorder
        .iter()
        .enumerate()
        .map(|(pos, &e)| {
            let edge = q.edge(e);
            EdgeSpec::new(
                format!("f{pos}"),
                vname[edge.src()].clone(),
                vname[edge.rng()].clone(),
                edge.weight(),
            )
        })
        .collect();
    FiniteQuiver::new(vertices, edges).unwrap()
}

fn shuffled_orders() -> impl Strategy<Value = (FiniteQuiver, Vec<usize>, Vec<usize>)> {
    any_case().prop_flat_map(|(q, _)| {
        let v = Just((0..q.vertex_count()).collect::<Vec<_>>()).prop_shuffle();
        let e = Just((0..q.edge_count()).collect::<Vec<_>>()).prop_shuffle();
        (Just(q), v, e)
    })
}

fn sorted<T: Ord>(mut v: Vec<T>) -> Vec<T> {
    v.sort();
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn iso_search_finds_self_and_relabelings((q, vo, eo) in shuffled_orders()) {
        let iso = iso_search(&q, &q).unwrap().expect("q ≅ q");
        prop_assert!(iso.verify(&q, &q).is_ok());
        let p = relabel(&q, &vo, &eo);
        let there = iso_search(&q, &p).unwrap().expect("q ≅ relabeled q");
        prop_assert!(there.verify(&q, &p).is_ok());
        let back = iso_search(&p, &q).unwrap().expect("search is symmetric");
        prop_assert!(back.verify(&p, &q).is_ok());
    }

    #[test]
    fn iso_search_rejects_a_changed_weight((q, vo, eo) in shuffled_orders()) {
        prop_assume!(q.edge_count() > 0);
        let p = relabel(&q, &vo, &eo);
        let mut weights = p.weights();
        weights[0] += Weight::new(1, 97);
        let p = p.with_weights(&weights).unwrap();
        prop_assert!(iso_search(&q, &p).unwrap().is_none());
        prop_assert!(iso_search(&p, &q).unwrap().is_none());
    }

    #[test]
    fn skew_product_counts_and_fibers((q, k) in any_case()) {
        let n = k.group().order();
        let f = skew_product(&q, &k).unwrap();
        prop_assert_eq!(f.vertex_count(), n * q.vertex_count());
        prop_assert_eq!(f.edge_count(), n * q.edge_count());
        let kappa = k.resolve(&q).unwrap();
        for v in 0..q.vertex_count() {
            let out_q = sorted(q.out_edges(v).map(|e| q.edge(e).weight()).collect());
            let in_q = q.in_edges(v).count() * n;
            let mut in_layer = 0;
            for g in 0..n {
                let x = pair_index(v, g, n);
                let out_f = sorted(f.out_edges(x).map(|e| f.edge(e).weight()).collect());
                prop_assert_eq!(&out_f, &out_q);
                in_layer += f.in_edges(x).count();
            }
            prop_assert_eq!(in_layer, in_q);
        }
        for (i, e) in f.edges().iter().enumerate() {
            let (base, g) = split_index(i, n);
            let b = q.edge(base);
            prop_assert_eq!(e.src(), pair_index(b.src(), g, n));
            prop_assert_eq!(e.rng(), pair_index(b.rng(), k.group().mul(kappa[base], g), n));
        }
    }

    #[test]
    fn translation_is_a_free_equivariant_action((q, k) in any_case()) {
        let f = skew_product(&q, &k).unwrap();
        let a = translation_action(&q, &k).unwrap();
        prop_assert!(validate_action(&f, &a).is_ok());
        prop_assert!(is_free(&f, &a));
        let group = k.group();
        for g in 0..group.order() {
            for e in 0..f.edge_count() {
                let moved = f.edge(a.act_edge(e, g));
                prop_assert_eq!(moved.src(), a.act_vertex(f.edge(e).src(), g));
                prop_assert_eq!(moved.rng(), a.act_vertex(f.edge(e).rng(), g));
            }
        }
    }

    #[test]
    fn skew_orbit_recovery_holds((q, k) in any_case()) {
        prop_assert!(check_skew_orbit(&q, &k).is_ok());
    }

    #[test]
    fn reconstruction_from_least_section_verifies((q, k) in any_case()) {
        let f = skew_product(&q, &k).unwrap();
        let a = translation_action(&q, &k).unwrap();
        let s = Section::least(&f, &a).unwrap();
        let w = gross_tucker_reconstruct(&f, &a, &s).unwrap();
        prop_assert!(w.verify(&f, &a).is_ok());
        prop_assert!(iso_search(&w.quotient, &q).unwrap().is_some());
    }

    #[test]
    fn paths_lift_uniquely((q, k) in acyclic_case()) {
        let f = skew_product(&q, &k).unwrap();
        prop_assert_eq!(check_path_lifting(&q, &k, &f), Ok(()));
        let n = k.group().order();
        let base = path_space(&q).unwrap();
        let total = path_space(&f).unwrap();
        prop_assert_eq!(total.total(), n * base.total());
    }

    #[test]
    fn dimension_multiplies_by_group_order((q, k) in acyclic_case()) {
        let f = skew_product(&q, &k).unwrap();
        let n = k.group().order() as u64;
        let df = acyclic_block_structure(&f).unwrap().dimension();
        let dq = acyclic_block_structure(&q).unwrap().dimension();
        prop_assert_eq!(df, n * dq);
    }

    #[test]
    fn sinks_and_sources_correspond((q, k) in any_case()) {
        let f = skew_product(&q, &k).unwrap();
        let n = k.group().order();
        for x in 0..f.vertex_count() {
            let (v, _) = split_index(x, n);
            prop_assert_eq!(f.out_edges(x).next().is_none(), q.out_edges(v).next().is_none());
            prop_assert_eq!(f.in_edges(x).next().is_none(), q.in_edges(v).next().is_none());
        }
    }

    #[test]
    fn blocks_match_enumerated_paths((q, _k) in acyclic_case()) {
        let paths = path_space(&q).unwrap();
        let regular = regular_vertices(&q);
        let oracle = BlockStructure::new(
            (0..q.vertex_count())
                .filter(|v| !regular.contains(v))
                .map(|v| paths.from[v].len() as u64)
                .collect(),
        );
        prop_assert_eq!(acyclic_block_structure(&q).unwrap(), oracle);
    }

    #[test]
    fn graded_dimensions_match_enumerated_pairs((q, k) in acyclic_case()) {
        let group = k.group();
        let kappa = k.resolve(&q).unwrap();
        let paths = path_space(&q).unwrap();
        let regular = regular_vertices(&q);
        let label = |edges: &[usize]| edges.iter().fold(group.identity(), |acc, &e| group.mul(acc, kappa[e]));
        let mut oracle: BTreeMap<String, u64> =
            group.elements().iter().map(|g| (g.clone(), 0)).collect();
        for w in (0..q.vertex_count()).filter(|v| !regular.contains(v)) {
            for p in &paths.from[w] {
                for r in &paths.from[w] {
                    let g = group.mul(label(p.edges()), group.inv(label(r.edges())));
                    *oracle.get_mut(group.name(g)).unwrap() += 1;
                }
            }
        }
        let graded = graded_dimensions(&q, &k).unwrap();
        prop_assert_eq!(&graded.by_element, &oracle);
        prop_assert_eq!(graded.total(), acyclic_block_structure(&q).unwrap().dimension());
    }

    #[test]
    fn documents_roundtrip((q, k) in any_case()) {
        let doc = QuiverDocument::from_quiver(&q);
        let text = to_json(&doc);
        let parsed: QuiverDocument = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&parsed.to_quiver().unwrap(), &q);
        prop_assert_eq!(to_json(&parsed), text);

        let group = k.group();
        let gdoc = GroupDocument::Table {
            elements: group.elements().to_vec(),
            identity: group.name(group.identity()).to_string(),
            table: group.name_table(),
        };
        let cdoc = CocycleDocument::from_cocycle(gdoc.clone(), &k);
        let text = to_json(&cdoc);
        let parsed: CocycleDocument = serde_json::from_str(&text).unwrap();
        let back = parsed.to_cocycle().unwrap();
        prop_assert_eq!(back.resolve(&q).unwrap(), k.resolve(&q).unwrap());
        prop_assert_eq!(to_json(&parsed), text);

        let f = skew_product(&q, &k).unwrap();
        let a = translation_action(&q, &k).unwrap();
        let s = Section::least(&f, &a).unwrap();
        let w = gross_tucker_reconstruct(&f, &a, &s).unwrap();
        let wdoc = WitnessDocument::new(&f, gdoc, &s, &w);
        let parsed: WitnessDocument = serde_json::from_str(&to_json(&wdoc)).unwrap();
        let rebuilt = parsed.to_witness(&f).unwrap();
        prop_assert!(rebuilt.verify(&f, &a).is_ok());
        prop_assert_eq!(rebuilt.phi, w.phi);
        prop_assert_eq!(rebuilt.sigma, w.sigma);
    }

    #[test]
    fn quotient_orbits_have_group_order_members((q, k) in any_case()) {
        let f = skew_product(&q, &k).unwrap();
        let a = translation_action(&q, &k).unwrap();
        let quot = quotient_quiver(&f, &a).unwrap();
        let n = k.group().order();
        let mut sizes: HashMap<&str, usize> = HashMap::new();
        for target in quot.projection.emap.values() {
            *sizes.entry(target.as_str()).or_default() += 1;
        }
        prop_assert_eq!(sizes.len(), q.edge_count());
        prop_assert!(sizes.values().all(|&c| c == n));
    }
}
