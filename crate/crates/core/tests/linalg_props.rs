use proptest::prelude::*;
use qlorenz::{
    characteristic_coeffs, cubic_roots, det3, eigenvalues3, find_equilibria, gram_schmidt3, jacobian,
    ComplexScalar, Mat3, SystemParams, TangentFrame,
};

fn mat() -> impl Strategy<Value = Mat3> {
    prop::array::uniform3(prop::array::uniform3(-10.0f64..10.0)).prop_map(Mat3::new)
}

fn close(a: f64, b: f64, rel: f64) -> bool {
    (a - b).abs() <= rel * (1.0 + a.abs().max(b.abs()))
}

/// (λ − r1)(λ − r2)(λ − r3) expanded in complex arithmetic.
fn expand(r: &[ComplexScalar; 3]) -> [ComplexScalar; 3] {
    let mul = |a: ComplexScalar, b: ComplexScalar| {
        ComplexScalar::new(a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re)
    };
    let add = |a: ComplexScalar, b: ComplexScalar| ComplexScalar::new(a.re + b.re, a.im + b.im);
    let neg = |a: ComplexScalar| ComplexScalar::new(-a.re, -a.im);
    let c2 = neg(add(add(r[0], r[1]), r[2]));
    let c1 = add(add(mul(r[0], r[1]), mul(r[0], r[2])), mul(r[1], r[2]));
    let c0 = neg(mul(mul(r[0], r[1]), r[2]));
    [c2, c1, c0]
}

proptest! {
    #[test]
    fn eigen_sum_and_product(m in mat()) {
        let e = eigenvalues3(&m);
        let sum = e.sum();
        let prod = e.product();
        let scale = 1.0 + m.rows().iter().flatten().map(|v| v.abs()).fold(0.0, f64::max);
        prop_assert!(close(sum.re, m.trace(), 1e-8), "{:?} vs {}", sum, m.trace());
        prop_assert!(sum.im.abs() < 1e-9 * scale);
        prop_assert!((prod.re - det3(&m)).abs() <= 1e-8 * scale.powi(3), "{:?} vs {}", prod, det3(&m));
    }

    #[test]
    fn eigen_triples_are_sorted_conjugate_closed(m in mat()) {
        let r = eigenvalues3(&m).0;
        prop_assert!(r[0].re >= r[1].re && r[1].re >= r[2].re);
        let complex: Vec<_> = r.iter().filter(|z| z.im != 0.0).collect();
        prop_assert!(complex.is_empty() || complex.len() == 2);
        if complex.len() == 2 {
            prop_assert_eq!(complex[0].re, complex[1].re);
            prop_assert_eq!(complex[0].im, -complex[1].im);
        }
    }

    #[test]
    fn cubic_roots_round_trip(c2 in -50.0f64..50.0, c1 in -500.0f64..500.0, c0 in -5000.0f64..5000.0) {
        let roots = cubic_roots(c2, c1, c0);
        let scale = 1f64.max(c2.abs()).max(c1.abs()).max(c0.abs());
        for r in roots.0 {
            let p = |z: ComplexScalar| {
                // Horner in complex arithmetic.
                let mut acc = ComplexScalar::real(1.0);
                for c in [c2, c1, c0] {
                    acc = ComplexScalar::new(acc.re * z.re - acc.im * z.im + c, acc.re * z.im + acc.im * z.re);
                }
                acc
            };
            prop_assert!(p(r).abs() < 1e-8 * scale.max(r.abs().powi(3)), "root {:?}", r);
        }
        let back = expand(&roots.0);
        for (got, want) in back.iter().zip([c2, c1, c0]) {
            prop_assert!((got.re - want).abs() <= 1e-7 * scale, "{:?} vs {}", got, want);
            prop_assert!(got.im.abs() <= 1e-7 * scale);
        }
    }

    #[test]
    fn gram_schmidt_orthonormal(cols in prop::array::uniform3(prop::array::uniform3(-5.0f64..5.0))) {
        let m = Mat3::from_columns(cols);
        prop_assume!(det3(&m).abs() > 1e-2);
        let (q, norms) = gram_schmidt3(&TangentFrame::from_columns(cols)).unwrap();
        prop_assert!(norms.iter().all(|&n| n > 0.0));
        for i in 0..3 {
            for j in 0..3 {
                let d: f64 = (0..3).map(|k| q.cols[i][k] * q.cols[j][k]).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                prop_assert!((d - want).abs() < 1e-12, "<q{},q{}> = {}", i, j, d);
            }
        }
        // |det| is preserved as the product of the Gram–Schmidt norms.
        prop_assert!(close(norms.iter().product::<f64>(), det3(&m).abs(), 1e-10));
    }
}

#[test]
fn origin_characteristic_polynomial_vanishes_at_reported_roots() {
    let p = SystemParams::default();
    let (c2, c1, c0) = characteristic_coeffs(&jacobian(find_equilibria(&p)[0].location, &p));
    assert_eq!((c2, c1, c0 + 0.0), (16.0, 48.0, 0.0));
    for r in [-12.0, -4.0, 0.0] {
        assert_eq!(((r + c2) * r + c1) * r + c0, 0.0);
    }
}

#[test]
fn equilibrium_eigenvalues_match_reported_table() {
    let p = SystemParams::default();
    let [o, plus, minus] = find_equilibria(&p).map(|e| eigenvalues3(&jacobian(e.location, &p)));
    assert_eq!(
        o.0,
        [
            ComplexScalar::real(0.0),
            ComplexScalar::real(-4.0),
            ComplexScalar::real(-12.0)
        ]
    );
    let want = [(2.65, 23.87), (2.65, -23.87), (-21.3, 0.0)];
    for triple in [plus, minus] {
        for (got, (re, im)) in triple.0.iter().zip(want) {
            assert!(
                (got.re - re).abs() < 0.05 && (got.im - im).abs() < 0.05,
                "{triple:?}"
            );
        }
        assert!((triple.sum().re + 16.0).abs() < 1e-9 * 17.0);
    }
    assert_eq!(plus, minus);
}
