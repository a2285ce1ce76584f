use expdom::domination::check_certificate;
use expdom::tilings::{self, finite_construction, verify_tile};
use expdom::{FamilyKind, Graph, GraphFamily};
use proptest::prelude::*;

fn family_strategy() -> impl Strategy<Value = GraphFamily> {
    (0usize..4, 3usize..=8, 3usize..=8).prop_map(|(k, r, c)| {
        let kind = [
            FamilyKind::StandardGrid,
            FamilyKind::KingGrid,
            FamilyKind::SlantGrid,
            FamilyKind::ToroidalSlant,
        ][k];
        GraphFamily::new(kind, r, c)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    // Small grids keep every weight sum exactly representable in f64.
    #[test]
    fn certificate_agrees_with_float_sum(f in family_strategy(), picks in prop::collection::vec(0usize..64, 0..6)) {
        let g = Graph::build(f).unwrap();
        let nv = g.vertex_count();
        let set: Vec<usize> = picks.iter().map(|&p| p % nv).collect();
        let cert = check_certificate(&g, &set).unwrap();
        let mut distinct = set.clone();
        distinct.sort_unstable();
        distinct.dedup();
        let mut min = f64::INFINITY;
        for v in 0..nv {
            let w: f64 = distinct.iter().map(|&d| 2f64.powi(1 - g.bfs_distances(d)[v] as i32)).sum();
            prop_assert_eq!(w, cert.received[v].to_f64());
            min = min.min(w);
        }
        prop_assert_eq!(cert.valid, !distinct.is_empty() && min >= 1.0);
        prop_assert_eq!(cert.size(), distinct.len());
    }

    #[test]
    fn translated_tiles_stay_valid(which in 0usize..3, dc in 0usize..23, dr in 0usize..23) {
        let tile = [tilings::torus_tile(), tilings::king_tile(), tilings::slant_tile()][which].clone();
        let cert = verify_tile(&tile.translate(dc, dr), 1).unwrap();
        prop_assert!(cert.valid);
        prop_assert_eq!(cert.min_weight, verify_tile(&tile, 1).unwrap().min_weight);
    }
}

#[test]
fn larger_tori_never_lower_the_minimum() {
    for tile in [tilings::torus_tile(), tilings::king_tile(), tilings::slant_tile()] {
        let one = verify_tile(&tile, 1).unwrap();
        let two = verify_tile(&tile, 2).unwrap();
        assert!(one.valid && two.valid);
        assert!(two.min_weight >= one.min_weight, "{:?}", tile.family);
    }
}

#[test]
fn construction_counts_follow_the_formula() {
    for (kind, p) in [(FamilyKind::KingGrid, 23), (FamilyKind::SlantGrid, 19)] {
        for n in [p, p + 1, p + 7, 2 * p, 2 * p + 5] {
            let c = finite_construction(kind, n).unwrap();
            let (q, r) = (n / p, n % p);
            assert_eq!(c.certificate.size(), p * q * q + 2 * p * q * r + r * r);
            assert_eq!(c.formula_bound, c.certificate.size());
            let valid = c.valid_certificate();
            assert!(valid.valid, "{kind:?} {n}");
            // The repair is checked independently of the search that built it.
            let g = Graph::build(GraphFamily::square(kind, n)).unwrap();
            assert!(check_certificate(&g, &valid.set).unwrap().valid);
        }
    }
}
