use chirality_core::bigraph::{parse_bigraph, parse_pair, serialize_bigraph, Bigraph, DualData};
use chirality_core::catalog;
use proptest::prelude::*;

#[test]
fn catalog_strings_round_trip_exactly() {
    let all = catalog::all_strings();
    assert!(all.len() >= 25, "{}", all.len());
    for s in all {
        let (g, d) = parse_bigraph(s).unwrap();
        assert_eq!(serialize_bigraph(&g, d.as_ref()), s);
    }
    for n in catalog::all_named() {
        let (p, m) = n.pair().strings();
        assert_eq!((p.as_str(), m.as_str()), (n.plus, n.minus));
    }
}

/// Layer sizes, then one multiplicity per potential edge; each vertex gets
/// at least one edge downward.
fn arb_bigraph() -> impl Strategy<Value = Bigraph> {
    prop::collection::vec(1usize..4, 1..7).prop_flat_map(|sizes| {
        let mut prev = 1;
        let mut shape = Vec::new();
        for &k in &sizes {
            shape.push((k, prev));
            prev = k;
        }
        let cells: usize = shape.iter().map(|(k, p)| k * p).sum();
        (Just(shape), prop::collection::vec(0u32..3, cells), prop::collection::vec(any::<prop::sample::Index>(), sizes.len()))
            .prop_map(|(shape, mults, anchors)| {
                let mut it = mults.into_iter();
                let depths = shape
                    .iter()
                    .zip(&anchors)
                    .map(|(&(k, p), anchor)| {
                        (0..k)
                            .map(|_| {
                                let mut row: Vec<u32> = (0..p).map(|_| it.next().unwrap()).collect();
                                if row.iter().all(|&x| x == 0) {
                                    row[anchor.index(p)] = 1;
                                }
                                row
                            })
                            .collect()
                    })
                    .collect();
                Bigraph::new(depths).unwrap()
            })
    })
}

/// A random involution at each even depth.
fn involutions(g: &Bigraph, seeds: &[prop::sample::Index]) -> DualData {
    let mut it = seeds.iter().cycle();
    let perms = (0..=g.max_depth())
        .step_by(2)
        .map(|d| {
            let n = g.count(d);
            let mut order: Vec<usize> = (0..n).collect();
            for i in (1..n).rev() {
                order.swap(i, it.next().unwrap().index(i + 1));
            }
            let mut p: Vec<usize> = (0..n).collect();
            for pair in order.chunks(2) {
                if let [a, b] = pair {
                    if it.next().unwrap().index(2) == 0 {
                        p[*a] = *b;
                        p[*b] = *a;
                    }
                }
            }
            p
        })
        .collect();
    DualData::new(g, perms).unwrap()
}

proptest! {
    #[test]
    fn serialize_then_parse_is_identity(g in arb_bigraph(), seeds in prop::collection::vec(any::<prop::sample::Index>(), 16)) {
        let d = involutions(&g, &seeds);
        let s = serialize_bigraph(&g, Some(&d));
        let (g2, d2) = parse_bigraph(&s).unwrap();
        prop_assert_eq!(&g2, &g);
        prop_assert_eq!(d2.as_ref(), Some(&d));
        prop_assert_eq!(serialize_bigraph(&g2, d2.as_ref()), s);

        let plain = serialize_bigraph(&g, None);
        let (g3, d3) = parse_bigraph(&plain).unwrap();
        prop_assert_eq!(g3, g);
        prop_assert!(d3.is_none());
    }

    #[test]
    fn parsing_never_panics(s in "(bwd|gbg|xyz)?[0-9vpxduals]{0,40}") {
        let _ = parse_bigraph(&s);
        let _ = parse_pair(&s, &s);
    }
}
