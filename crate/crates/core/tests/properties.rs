use mvduality::geometry::{AffineForm, ConvexCell, Point, Polyhedron};
use mvduality::json::Json;
use mvduality::mcnaughton::{compile, PlFunction};
use mvduality::rational::{int, rat};
use mvduality::terms::{parse_term, Term};
use mvduality::Rational;
use num_traits::{Signed, ToPrimitive};
use proptest::prelude::*;

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![(0usize..3).prop_map(Term::var), Just(Term::zero()), Just(Term::one())];
    leaf.prop_recursive(5, 40, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Term::neg),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::oplus(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::odot(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::vee(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::wedge(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::imp(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Term::ominus(a, b)),
        ]
    })
}

fn coord(den: i64) -> impl Strategy<Value = Rational> {
    (0..=den).prop_map(move |k| rat(k, den))
}

fn point(n: usize) -> impl Strategy<Value = Point> {
    proptest::collection::vec(coord(6), n).prop_map(Point::new)
}

fn cell(n: usize) -> impl Strategy<Value = ConvexCell> {
    proptest::collection::vec(point(n), n + 1..n + 5).prop_map(move |pts| ConvexCell::hull(n, &pts).unwrap())
}

fn form(n: usize) -> impl Strategy<Value = AffineForm> {
    (proptest::collection::vec(-3i64..=3, n), -6i64..=6)
        .prop_map(|(c, k)| AffineForm::new(c.into_iter().map(int).collect(), rat(k, 4)))
}

fn volume(c: &ConvexCell) -> Rational {
    c.triangulate().iter().map(|s| s.volume().unwrap()).sum()
}

fn polygon_area(c: &ConvexCell) -> Rational {
    // Shoelace over the vertices sorted by angle around the barycenter.
    let b = c.barycenter();
    let f = |r: &Rational| r.to_f64().unwrap();
    let mut vs: Vec<&Point> = c.vertices().iter().collect();
    vs.sort_by(|p, q| {
        let a = |p: &Point| f(&(&p.coords()[1] - &b.coords()[1])).atan2(f(&(&p.coords()[0] - &b.coords()[0])));
        a(p).partial_cmp(&a(q)).unwrap()
    });
    let mut twice = int(0);
    for i in 0..vs.len() {
        let (p, q) = (vs[i].coords(), vs[(i + 1) % vs.len()].coords());
        twice += &p[0] * &q[1] - &q[0] * &p[1];
    }
    twice.abs() / int(2)
}

fn simplicial(c: &ConvexCell) -> Polyhedron {
    Polyhedron::new(c.ambient_dim(), c.triangulate()).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn printers_round_trip(t in term()) {
        prop_assert_eq!(parse_term(&t.to_string()).unwrap(), t.clone());
        prop_assert_eq!(parse_term(&t.to_core_string()).unwrap(), t);
    }

    #[test]
    fn split_covers_cell(c in cell(2).prop_filter("full", |c| c.dim() == 2), h in form(2), probes in proptest::collection::vec(point(2), 20)) {
        let (lo, hi) = c.split(&h);
        let parts: Vec<&ConvexCell> = lo.iter().chain(hi.iter()).collect();
        let full: Vec<&ConvexCell> = parts.iter().copied().filter(|p| p.dim() == 2).collect();
        prop_assert_eq!(full.iter().map(|p| volume(p)).sum::<Rational>(), volume(&c));
        if let Some(lo) = &lo {
            prop_assert!(lo.vertices().iter().all(|v| h.value(v) <= int(0)));
        }
        if let Some(hi) = &hi {
            prop_assert!(hi.vertices().iter().all(|v| h.value(v) >= int(0)));
        }
        for q in &probes {
            let inside = c.contains(q);
            prop_assert_eq!(parts.iter().any(|p| p.contains(q)), inside);
            if inside {
                prop_assert_eq!(lo.as_ref().is_some_and(|p| p.contains(q)), h.value(q) <= int(0));
            }
        }
    }

    #[test]
    fn triangulation_area(c in cell(2).prop_filter("full", |c| c.dim() == 2)) {
        prop_assert_eq!(volume(&c), polygon_area(&c));
    }

    #[test]
    fn triangulation_covers_3d(c in cell(3), probes in proptest::collection::vec(point(3), 20)) {
        let p = simplicial(&c);
        for q in &probes {
            prop_assert_eq!(p.contains_point(q).unwrap(), c.contains(q));
        }
    }

    #[test]
    fn projection_of_product(a in cell(2), b in cell(1)) {
        let (p, q) = (simplicial(&a), simplicial(&b));
        let back = p.product(&q).project(&[0, 1]).unwrap();
        prop_assert!(back.set_eq(&p).unwrap());
        let other = p.product(&q).project(&[2]).unwrap();
        prop_assert!(other.set_eq(&q).unwrap());
    }

    #[test]
    fn json_round_trips(t in term(), c in cell(2), x in point(3)) {
        let f = compile(&t, 3).unwrap();
        let back = PlFunction::from_json_str(&f.to_json_string()).unwrap();
        prop_assert!(back.equals(&f).unwrap());
        let p = simplicial(&c);
        prop_assert!(Polyhedron::from_json_str(&p.to_json_string()).unwrap().set_eq(&p).unwrap());
        prop_assert_eq!(Point::from_json_str(&x.to_json_string()).unwrap(), x);
    }
}
