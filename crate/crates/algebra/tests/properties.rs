use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use chwave_algebra::descartes::count_roots;
use chwave_algebra::modular::{discriminant_param, resultant_param};
use chwave_algebra::resultant::{discriminant, resultant, resultant_with_quadratic};
use chwave_algebra::sturm::{sturm_count, to_rational};
use chwave_algebra::{rat, Execution, Point, Poly, QPoly, ZPoly};

fn zpoly(max_deg: usize) -> impl Strategy<Value = ZPoly> {
    prop::collection::vec(-20i64..=20, 1..=max_deg + 1).prop_map(|cs| ZPoly::from_i64s(&cs))
}

fn bivariate(max_outer: usize, max_inner: usize) -> impl Strategy<Value = Poly<ZPoly>> {
    prop::collection::vec(zpoly(max_inner), 2..=max_outer + 1)
        .prop_map(Poly::new)
        .prop_filter("degree at least one", |p| p.degree().unwrap_or(0) >= 1)
}

/// Product of (d·x − n) over distinct rational roots n/d.
fn from_roots(roots: &[(i64, i64)]) -> ZPoly {
    roots
        .iter()
        .fold(ZPoly::from_i64s(&[1]), |acc, &(n, d)| &acc * &ZPoly::from_i64s(&[-n, d]))
}

fn distinct_roots() -> impl Strategy<Value = Vec<(i64, i64)>> {
    prop::collection::btree_set((-40i64..40, 1i64..5), 1..7).prop_map(|s| {
        let mut seen = Vec::<BigRational>::new();
        s.into_iter()
            .filter(|&(n, d)| {
                let q = rat(n, d);
                let new = !seen.contains(&q);
                seen.push(q);
                new
            })
            .collect()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws(a in zpoly(6), b in zpoly(6), c in zpoly(6)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&(&a - &b) + &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!((&a * &b).div_exact_poly(&b), Some(a.clone()));
        }
    }

    #[test]
    fn derivative_is_linear_and_leibniz(a in zpoly(6), b in zpoly(6)) {
        prop_assert_eq!((&a * &b).derivative(), &(&a.derivative() * &b) + &(&a * &b.derivative()));
    }

    #[test]
    fn resultant_vanishes_on_common_root(f in zpoly(4), g in zpoly(4), r in -5i64..5) {
        let lin = ZPoly::from_i64s(&[-r, 1]);
        let (f, g) = (&f * &lin, &g * &lin);
        prop_assume!(!f.is_zero() && !g.is_zero());
        prop_assert_eq!(resultant(&f, &g).unwrap(), BigInt::from(0));
    }

    #[test]
    fn resultant_of_root_products(a in distinct_roots(), b in distinct_roots()) {
        // monic in the roots: Res = ∏ lc terms ∏ (αᵢ − βⱼ), compare via exact product
        let f = from_roots(&a);
        let g = from_roots(&b);
        let mut expect = BigRational::from_integer(1.into());
        let lf: i64 = a.iter().map(|p| p.1).product();
        let lg: i64 = b.iter().map(|p| p.1).product();
        for &(n1, d1) in &a {
            for &(n2, d2) in &b {
                expect *= rat(n1, d1) - rat(n2, d2);
            }
        }
        expect *= BigRational::from_integer(BigInt::from(lf).pow(b.len() as u32));
        expect *= BigRational::from_integer(BigInt::from(lg).pow(a.len() as u32));
        prop_assert_eq!(BigRational::from_integer(resultant(&f, &g).unwrap()), expect);
    }

    #[test]
    fn resultant_antisymmetry(f in zpoly(5), g in zpoly(5)) {
        prop_assume!(f.degree().unwrap_or(0) >= 1 && g.degree().unwrap_or(0) >= 1);
        let (m, n) = (f.degree().unwrap(), g.degree().unwrap());
        let fg = resultant(&f, &g).unwrap();
        let gf = resultant(&g, &f).unwrap();
        prop_assert_eq!(if (m * n) % 2 == 1 { -gf } else { gf }, fg);
    }

    #[test]
    fn sturm_counts_known_roots(roots in distinct_roots(), lo in -12i64..0, hi in 1i64..12) {
        let p = to_rational(&from_roots(&roots));
        let (lo, hi) = (rat(lo, 1), rat(hi, 1));
        let expect = roots.iter().filter(|&&(n, d)| { let q = rat(n, d); q > lo && q < hi }).count();
        let on_end = roots.iter().any(|&(n, d)| rat(n, d) == lo || rat(n, d) == hi);
        let got = sturm_count(&p, &Point::At(lo.clone()), &Point::At(hi.clone()), false).unwrap();
        prop_assert_eq!(got, expect);
        if !on_end {
            let d = count_roots(&from_roots(&roots), &lo, &hi, 64).unwrap();
            prop_assert_eq!(d, expect);
        }
        let all = sturm_count(&p, &Point::NegInf, &Point::PosInf, false).unwrap();
        prop_assert_eq!(all, roots.len());
    }

    #[test]
    fn multiplicity_count(roots in distinct_roots(), m in 1u32..4) {
        let p = to_rational(&from_roots(&roots).pow(m));
        let q = sturm_count(&p, &Point::At(rat(-97, 2)), &Point::At(rat(97, 2)), true).unwrap();
        prop_assert_eq!(q, roots.len() * m as usize);
    }

    #[test]
    fn modular_matches_fraction_free(f in bivariate(4, 3), g in bivariate(3, 3)) {
        let exact = resultant(&f, &g).unwrap();
        prop_assert_eq!(resultant_param(&f, &g, Execution::Sequential).unwrap(), exact.clone());
        prop_assert_eq!(resultant_param(&f, &g, Execution::Parallel).unwrap(), exact);
        if f.degree().unwrap() >= 2 {
            prop_assert_eq!(discriminant_param(&f, Execution::Sequential).unwrap(), discriminant(&f).unwrap());
        }
    }

    #[test]
    fn quadratic_shortcut(s in bivariate(2, 2), t in bivariate(5, 2)) {
        prop_assume!(s.degree() == Some(2));
        prop_assert_eq!(resultant_with_quadratic(&s, &t).unwrap(), resultant(&s, &t).unwrap());
    }
}

#[test]
fn spec_style_examples() {
    let two = to_rational(&ZPoly::from_i64s(&[-2, 0, 1]));
    assert_eq!(sturm_count(&two, &Point::At(rat(0, 1)), &Point::At(rat(2, 1)), false).unwrap(), 1);
    let dbl: QPoly = to_rational(&(&ZPoly::from_i64s(&[-1, 1]).pow(2) * &ZPoly::x()));
    assert_eq!(sturm_count(&dbl, &Point::At(rat(1, 2)), &Point::At(rat(2, 1)), true).unwrap(), 2);
    assert_eq!(
        resultant(&ZPoly::from_i64s(&[-3, 1]), &ZPoly::from_i64s(&[-7, 1])).unwrap(),
        BigInt::from(-4)
    );
}
