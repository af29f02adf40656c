use super::reference::{coords_reference, projection_constant_reference};
use super::*;
use crate::words::{parse_word, random_word};

fn alphabet(r: usize) -> Alphabet {
    Alphabet::new(r).unwrap()
}

fn w(text: &str) -> Word {
    parse_word(text, &alphabet(3)).unwrap()
}

fn elem(text: &str) -> BasisElement {
    BasisElement::parse(text).unwrap()
}

#[test]
fn coords_class_one_is_abelianization() {
    let coords = coords_geometric(&w("abAB"), 2, 1).unwrap();
    assert_eq!(coords.values(), &[0, 0]);
    assert_eq!(coords.tuple_string(), "(0, 0)");
}

#[test]
fn coords_heisenberg_examples() {
    let coords = coords_geometric(&w("abab"), 2, 2).unwrap();
    assert_eq!(coords.values(), &[2, 2, 1]); // a, b, [b,a]
    assert_eq!(coords.labeled_string(), "{[b,a]: 1, b: 2, a: 2}");

    let coords = coords_geometric(&w("abAB"), 2, 2).unwrap();
    assert_eq!(coords.values(), &[0, 0, -1]);

    let coords = coords_geometric(&w("ba"), 2, 2).unwrap();
    assert_eq!(coords.values(), &[1, 1, 1]);
}

#[test]
fn canonical_word_examples() {
    let zero = Coords::zero(2, 2).unwrap();
    assert_eq!(canonical_word(&zero), Word::empty());

    let g = Coords::from_values(2, 2, vec![2, 2, 1]).unwrap();
    assert_eq!(canonical_word(&g).render(), "baBAaabb");

    let neg = Coords::from_values(2, 2, vec![0, 0, -1]).unwrap();
    assert_eq!(canonical_word(&neg).render(), "abAB");
}

#[test]
fn closure_examples() {
    // A central word is already closed; nothing is appended.
    assert_eq!(closure_word(&w("abAB"), 2, 2).unwrap().render(), "abAB");
    // The closing word is the inverse of the canonical word of the lower
    // coordinates, so "ab" closes by retracing: "abBA", and the closure of
    // "ab" encloses no area (its commutator coordinate is zero).
    assert_eq!(closure_word(&w("ab"), 2, 2).unwrap().render(), "abBA");
    let curve = draw_curve(&closure_word(&w("abba"), 2, 2).unwrap(), 2, 1).unwrap();
    assert!(is_closed(&curve));
}

#[test]
fn draw_curve_examples() {
    let curve = draw_curve(&w("ab"), 2, 1).unwrap();
    let pts: Vec<&[i64]> = curve.points().iter().map(|p| p.values()).collect();
    assert_eq!(pts, vec![&[0, 0][..], &[1, 0][..], &[1, 1][..]]);
    assert!(!is_closed(&curve));

    let curve = draw_curve(&w("abAB"), 2, 1).unwrap();
    assert!(is_closed(&curve));

    let curve = draw_curve(&w("abAB"), 2, 2).unwrap();
    assert!(!is_closed(&curve));
    assert_eq!(curve.points().last().unwrap().values(), &[0, 0, -1]);
}

#[test]
fn project_unit_square() {
    let curve = draw_curve(&w("abAB"), 2, 1).unwrap();
    let planar = project_curve(&curve, &elem("[b,a]")).unwrap();
    assert_eq!(planar.points(), &[(0, 0), (1, 0), (1, 1), (0, 1), (0, 0)]);
    assert_eq!(doubled_area(&planar).unwrap().doubled(), 2);

    let curve = draw_curve(&w("baBA"), 2, 1).unwrap();
    let planar = project_curve(&curve, &elem("[b,a]")).unwrap();
    assert_eq!(planar.points(), &[(0, 0), (0, 1), (1, 1), (1, 0), (0, 0)]);
    assert_eq!(doubled_area(&planar).unwrap().doubled(), -2);
}

#[test]
fn project_checks_class() {
    let curve = draw_curve(&w("ab"), 2, 1).unwrap();
    assert!(matches!(
        project_curve(&curve, &elem("[[b,a],a]")),
        Err(GeoError::ClassMismatch { .. })
    ));
}

#[test]
fn basis_word_projects_to_closed_loop() {
    let word = crate::basis::commutator_word(&elem("[[b,a],a]"));
    let curve = draw_curve(&word, 2, 2).unwrap();
    assert!(is_closed(&curve));
    let planar = project_curve(&curve, &elem("[[b,a],a]")).unwrap();
    assert!(planar.is_closed());
    assert!(planar.nondegenerate_segments() >= 4);
}

#[test]
fn area_examples() {
    let square = PlanarLoop::new(vec![(0, 0), (1, 0), (1, 1), (0, 1), (0, 0)]);
    assert_eq!(doubled_area(&square).unwrap().doubled(), 2);
    let reversed = PlanarLoop::new(vec![(0, 0), (0, 1), (1, 1), (1, 0), (0, 0)]);
    assert_eq!(doubled_area(&reversed).unwrap().doubled(), -2);
    let spur = PlanarLoop::new(vec![(0, 0), (1, 0), (0, 0)]);
    assert_eq!(doubled_area(&spur).unwrap().doubled(), 0);
    let open = PlanarLoop::new(vec![(0, 0), (1, 0)]);
    assert_eq!(doubled_area(&open), Err(GeoError::NotClosed));
}

#[test]
fn area_translation_and_reversal() {
    let base = vec![(0, 0), (2, 0), (2, 3), (1, 4), (0, 3), (0, 0)];
    let a0 = doubled_area(&PlanarLoop::new(base.clone()))
        .unwrap()
        .doubled();
    let shifted: Vec<(i64, i64)> = base.iter().map(|&(x, y)| (x + 7, y - 4)).collect();
    assert_eq!(
        doubled_area(&PlanarLoop::new(shifted)).unwrap().doubled(),
        a0
    );
    let reversed: Vec<(i64, i64)> = base.iter().rev().cloned().collect();
    assert_eq!(
        doubled_area(&PlanarLoop::new(reversed)).unwrap().doubled(),
        -a0
    );
}

#[test]
fn projection_constant_heisenberg() {
    let c = projection_constant(&elem("[b,a]"), 2).unwrap();
    assert_eq!(c.doubled(), -2);
    assert_eq!(c.to_string(), "-1");
    assert_eq!(
        projection_constant_reference(&elem("[b,a]"), 2).unwrap(),
        -2
    );
}

#[test]
fn weight_five_constant_uses_class_four_curves() {
    // [[[[b,a],a],a],a] still splits as [u, s], so its constant is defined
    // even though class 5 coordinates are not; the drawing runs at class 4.
    let k5 = elem("[[[[b,a],a],a],a]");
    let c = projection_constant(&k5, 2).unwrap();
    assert_ne!(c.doubled(), 0);
    let word = crate::basis::commutator_word(&k5);
    let curve = draw_curve(&word, 2, 4).unwrap();
    assert!(is_closed(&curve));
}

#[test]
fn projection_constants_nonzero_on_supported_range() {
    for (r, k) in [
        (2usize, 2usize),
        (3, 2),
        (4, 2),
        (2, 3),
        (3, 3),
        (4, 3),
        (2, 4),
    ] {
        let basis = hall_basis(r, k).unwrap();
        for e in basis.stratum(k) {
            let c = projection_constant(e, r).unwrap();
            assert_ne!(c.doubled(), 0, "constant of {} at rank {r}", e.render());
        }
    }
}

#[test]
fn equal_geometric_examples() {
    assert!(!equal_geometric(&w("ab"), &w("ba"), 2, 2).unwrap());
    assert!(equal_geometric(&w("abab"), &w("baBAaabb"), 2, 2).unwrap());
}

#[test]
fn group_mul_examples() {
    let g = coords_geometric(&w("abab"), 2, 2).unwrap();
    let zero = Coords::zero(2, 2).unwrap();
    assert_eq!(group_mul(&g, &zero).unwrap(), g);

    let a = Coords::from_values(2, 2, vec![1, 0, 0]).unwrap();
    let b = Coords::from_values(2, 2, vec![0, 1, 0]).unwrap();
    assert_eq!(group_mul(&a, &b).unwrap().values(), &[1, 1, 0]);
    assert_eq!(group_mul(&b, &a).unwrap().values(), &[1, 1, 1]);
}

#[test]
fn class_projection_drops_top_block() {
    let g = coords_geometric(&w("aabbAbABabb"), 2, 3).unwrap();
    let lower = g.project_class().unwrap();
    assert_eq!(lower, coords_geometric(&w("aabbAbABabb"), 2, 2).unwrap());
}

#[test]
fn unsupported_class_is_reported() {
    let err = coords_geometric(&w("ab"), 2, 5).unwrap_err();
    assert!(matches!(err, GeoError::Basis(BasisError::NotLeftNormed(_))));
    let err = coords_geometric(&w("abc"), 3, 4).unwrap_err();
    assert!(matches!(err, GeoError::Basis(BasisError::NotLeftNormed(_))));
}

#[test]
fn walker_matches_reference_small_words() {
    for (r, k, len, cases) in [
        (2usize, 2usize, 12usize, 40u64),
        (2, 3, 10, 25),
        (3, 2, 10, 25),
        (3, 3, 8, 10),
        (2, 4, 7, 8),
    ] {
        let alpha = alphabet(r);
        for seed in 0..cases {
            let word = random_word(seed * 131 + 7, (seed as usize) % (len + 1), &alpha);
            let fast = coords_geometric(&word, r, k);
            let slow = coords_reference(&word, r, k);
            assert_eq!(fast, slow, "({r},{k}) word {}", word.render());
        }
    }
}

#[test]
fn walker_handles_large_closing_blocks() {
    // Power words drive the lower coordinates high, so the closing tails
    // repeat their blocks many times and exercise the shortcut scaling.
    let cases = [
        ("a^6b^6A^6B^6", 2usize, 3usize),
        ("a^5 b^5 a^5 B^5 A^9 b^3", 2, 3),
        ("a^4c^4A^4C^4b^3", 3, 2),
    ];
    for (text, r, k) in cases {
        let word = parse_word(text, &alphabet(r)).unwrap();
        let fast = coords_geometric(&word, r, k).unwrap();
        assert_eq!(
            fast,
            coords_reference(&word, r, k).unwrap(),
            "{text} ({r},{k})"
        );
    }
    // Class 4 is beyond what the from-scratch reference can afford, so the
    // independent oracle arbitrates there.
    for (text, r, k) in [
        ("a^2b^2A^2B^2", 2usize, 4usize),
        ("abbaab^4A^5", 2, 4),
        ("a^9b^9A^9B^9", 2, 4),
        ("b^12a^12B^12A^12ab", 2, 4),
    ] {
        let word = parse_word(text, &alphabet(r)).unwrap();
        let fast = coords_geometric(&word, r, k).unwrap();
        assert_eq!(
            fast,
            crate::magnus::oracle_coords(&word, r, k).unwrap(),
            "{text} ({r},{k})"
        );
    }
}

#[test]
fn walker_matches_reference_on_curves() {
    let word = w("abbaBAba");
    for k in [2usize, 3] {
        let curve = draw_curve(&word, 2, k).unwrap();
        for (j, point) in curve.points().iter().enumerate() {
            let prefix = Word::from_letters(word.letters()[..j].to_vec());
            assert_eq!(point, &coords_reference(&prefix, 2, k).unwrap());
        }
    }
}

#[test]
fn coords_constructors_validate() {
    assert!(matches!(
        Coords::from_values(2, 2, vec![1, 2]),
        Err(GeoError::ValueLengthMismatch {
            expected: 3,
            found: 2
        })
    ));
    let g = Coords::zero(2, 2).unwrap();
    let h = Coords::zero(3, 2).unwrap();
    assert!(matches!(
        group_mul(&g, &h),
        Err(GeoError::RankMismatch { .. })
    ));
    let f = Coords::zero(2, 3).unwrap();
    assert!(matches!(
        group_mul(&g, &f),
        Err(GeoError::ClassMismatch { .. })
    ));
    assert!(g.project_class().is_ok());
    assert!(Coords::zero(2, 1).unwrap().project_class().is_err());
}

#[test]
fn presentation_order_matches_convention() {
    let g = Coords::from_values(2, 3, vec![1, 4, 5, 8, 10]).unwrap();
    assert_eq!(g.presentation_values(), vec![8, 10, 5, 4, 1]);
    assert_eq!(g.tuple_string(), "(8, 10, 5, 4, 1)");
    let h = Coords::from_values(2, 1, vec![2, 1]).unwrap();
    assert_eq!(h.presentation_values(), vec![2, 1]);
}
