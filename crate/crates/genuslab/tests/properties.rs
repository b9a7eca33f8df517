use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};
use proptest::prelude::*;

use genuslab::arith::ideal::Ideal;
use genuslab::arith::linalg::{det, identity, inverse, mat_mul, Mat};
use genuslab::arith::units::fundamental_unit;
use genuslab::arith::{factor_integer, factor_poly, Base, Poly, QuadElem, RatFn};
use genuslab::brauer::{hilbert_symbol, BrPlace};
use genuslab::class_sets::adele::{decompose_adele, glue_lattice, AdelePoint, BaseRing};
use genuslab::descent::{coboundary, trivialize_cocycle, QuadGaloisRing};
use genuslab::divisor::{pic_group, principal_divisor};
use genuslab::field::{Elem, Field};
use genuslab::parse::{parse_element, print_element};
use genuslab::places::{places_above, support, valuation, Place, QuadExt};

fn rat(n: i64, d: i64) -> Elem {
    Elem::Q(BigRational::new(n.into(), d.into()))
}

fn nonzero_rat() -> impl Strategy<Value = Elem> {
    (-10_000i64..=10_000, 1i64..=10_000).prop_filter("nonzero", |(n, _)| *n != 0).prop_map(|(n, d)| rat(n, d))
}

fn poly_f5() -> impl Strategy<Value = Poly> {
    prop::collection::vec(0i64..5, 1..5).prop_map(|c| Poly::from_ints(Base::Fp(5), &c))
}

fn ratfn_f5() -> impl Strategy<Value = Elem> {
    (poly_f5(), poly_f5())
        .prop_filter("nonzero", |(n, d)| !n.is_zero() && !d.is_zero())
        .prop_map(|(n, d)| Elem::F(RatFn::new(n, d)))
}

fn quad_m5() -> impl Strategy<Value = QuadElem> {
    (-20i64..=20, -20i64..=20).prop_filter("nonzero", |(x, y)| (*x, *y) != (0, 0)).prop_map(|(x, y)| QuadElem::from_ints(-5, x, y))
}

const PRIMES: [i64; 8] = [2, 3, 5, 7, 11, 13, 17, 19];

fn q_matrix(n: usize) -> impl Strategy<Value = Mat<Elem>> {
    prop::collection::vec((-30i64..=30, 1i64..=30), n * n)
        .prop_map(move |v| v.chunks(n).map(|r| r.iter().map(|&(a, b)| rat(a, b)).collect()).collect::<Mat<Elem>>())
        .prop_filter("invertible", |m| !det(m).is_zero())
}

fn q_adele() -> impl Strategy<Value = AdelePoint> {
    (1usize..=3)
        .prop_flat_map(|n| (Just(n), prop::collection::btree_map(0usize..PRIMES.len(), q_matrix(n), 1..=3)))
        .prop_map(|(n, comps)| {
            AdelePoint::new(BaseRing::integers(Field::Q), n, comps.into_iter().map(|(i, g)| (Place::prime(PRIMES[i]), g)))
                .expect("components are invertible")
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn integer_factorization_round_trip(n in 2i64..1_000_000) {
        let f = factor_integer(&BigInt::from(n), 1_000_000).unwrap();
        let back: BigInt = f.iter().map(|(p, e)| p.pow(*e)).product();
        prop_assert_eq!(back, BigInt::from(n));
    }

    #[test]
    fn polynomial_factorization_round_trip(p in poly_f5()) {
        prop_assume!(!p.is_zero());
        let f = factor_poly(&p).unwrap();
        prop_assert_eq!(f.product(&Base::Fp(5)), p);
    }

    #[test]
    fn ideal_product_is_associative_and_commutative(a in quad_m5(), b in quad_m5(), c in quad_m5(), x in 1i64..6) {
        let i = Ideal::from_generators(-5, &[a, QuadElem::from_ints(-5, x, 0)]);
        let j = Ideal::from_generators(-5, &[b]);
        let k = Ideal::from_generators(-5, &[c, QuadElem::from_ints(-5, 3, 0)]);
        prop_assert_eq!(i.mul(&j).mul(&k), i.mul(&j.mul(&k)));
        prop_assert_eq!(i.mul(&j), j.mul(&i));
    }

    #[test]
    fn product_formula_over_f5t(x in ratfn_f5()) {
        let total: i64 = support(&x).unwrap().iter().map(|(p, m)| m * p.degree() as i64).sum();
        prop_assert_eq!(total, 0);
    }

    #[test]
    fn rational_support_reconstructs_absolute_value(x in nonzero_rat()) {
        let mut acc = BigRational::one();
        for (p, v) in support(&x).unwrap() {
            let Place::RationalPrime(p) = p else { unreachable!() };
            acc *= BigRational::from_integer(p).pow(v as i32);
        }
        prop_assert_eq!(acc, x.as_rational().unwrap().abs());
    }

    #[test]
    fn places_above_have_total_degree_two(pi in 0usize..PRIMES.len(), d in prop::sample::select(vec![-1i64, -5, 2, 3, -7, 13])) {
        let tot: u32 = places_above(&Place::prime(PRIMES[pi]), &QuadExt::Number(d)).unwrap().iter().map(|w| w.e * w.f).sum();
        prop_assert_eq!(tot, 2);
    }

    #[test]
    fn principal_divisor_is_a_homomorphism(a in quad_m5(), b in quad_m5()) {
        let (ea, eb) = (Elem::Quad(a), Elem::Quad(b));
        let lhs = principal_divisor(&ea.mul(&eb), &[], false).unwrap();
        let rhs = principal_divisor(&ea, &[], false).unwrap().add(&principal_divisor(&eb, &[], false).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn principal_divisors_are_trivial_in_pic(a in quad_m5()) {
        let pic = pic_group(&Field::Quad(-5), &[]).unwrap();
        let dv = principal_divisor(&Elem::Quad(a), &[], false).unwrap();
        prop_assert!(pic.class_of(&dv).unwrap().iter().all(|x| x == &BigInt::from(0)));
    }

    #[test]
    fn hilbert_reciprocity(a in nonzero_rat(), b in nonzero_rat()) {
        let mut places = vec![BrPlace::Real, BrPlace::Finite(Place::prime(2))];
        for x in [&a, &b] {
            places.extend(support(x).unwrap().into_iter().map(|(p, _)| BrPlace::Finite(p)));
        }
        places.sort();
        places.dedup();
        let prod: i32 = places.iter().map(|v| hilbert_symbol(&a, &b, v).unwrap()).product();
        prop_assert_eq!(prod, 1);
    }

    #[test]
    fn glued_lattice_localizes_correctly(a in q_adele()) {
        let lat = glue_lattice(&a).unwrap();
        for (p, g) in &a.entries {
            prop_assert!(lat.localizes_to(p, g).unwrap());
        }
        // off the support the lattice is the standard one
        let one = identity(a.n, &Field::Q.one());
        for p in [23, 29, 31] {
            prop_assert!(lat.localizes_to(&Place::prime(p), &one).unwrap());
        }
    }

    #[test]
    fn decomposition_round_trip(a in q_adele()) {
        let dec = decompose_adele(&a).unwrap();
        for (p, g) in &a.entries {
            let k = dec.k_at(p);
            prop_assert_eq!(&mat_mul(&k, &dec.h), g);
            prop_assert_eq!(valuation(&det(&k), p).unwrap(), 0);
        }
        for p in [23, 29] {
            prop_assert_eq!(valuation(&det(&dec.k_default), &Place::prime(p)).unwrap(), 0);
        }
    }

    #[test]
    fn descent_round_trip(n in 1usize..=3, seed in prop::collection::vec((0usize..4, -3i64..=3, -3i64..=3, 0usize..3, 0usize..3), 1..8)) {
        let r = QuadGaloisRing::new(-1, &[BigInt::from(2)]).unwrap();
        let e = |x: i64, y: i64| QuadElem::from_ints(-1, x, y);
        let units = [e(1, 0), e(0, 1), e(1, 1), e(-1, 1)];
        let mut u = identity(n, &e(1, 0));
        for (k, &(ui, ..)) in seed.iter().enumerate().take(n) {
            u[k][k] = units[ui].clone();
        }
        for &(_, x, y, i, j) in &seed {
            let (i, j) = (i % n, j % n);
            if i != j {
                let mut el = identity(n, &e(1, 0));
                el[i][j] = e(x, y);
                u = mat_mul(&u, &el);
            }
        }
        let xi = coboundary(&r, &u).unwrap();
        let t = trivialize_cocycle(&r, &xi).unwrap();
        prop_assert!(t.verify(&r));
        // u⁻¹c is σ-fixed and invertible over ℤ[1/2]
        let w = mat_mul(&inverse(&u).unwrap(), &t.c);
        prop_assert_eq!(&r.sigma_mat(&w), &w);
        prop_assert!(r.in_gl(&w));
    }

    #[test]
    fn fundamental_unit_has_norm_one(d in prop::sample::select(vec![2i64, 3, 5, 6, 7, 10, 11, 13, 14, 15, 17, 19, 21, 22, 23])) {
        let eps = fundamental_unit(d).unwrap();
        prop_assert_eq!(eps.norm().abs(), BigRational::one());
    }

    #[test]
    fn parse_print_round_trip_rational(x in nonzero_rat()) {
        let back = parse_element(&print_element(&x), &Field::Q).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn parse_print_round_trip_f5t(x in ratfn_f5()) {
        let back = parse_element(&print_element(&x), &Field::Q).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn parse_print_round_trip_quadratic(a in quad_m5()) {
        let x = Elem::Quad(a);
        let back = parse_element(&print_element(&x), &Field::Q).unwrap();
        prop_assert_eq!(back, x);
    }
}
