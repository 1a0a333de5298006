//! Acceptance suite: one test (and one pass/fail line) per criterion, with
//! pinned tolerances. Run with `cargo test --test acceptance`.

use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use gacalc_core::analytic::{
    analytic_function, inverse, sandwich, to_matrix, AnalyticFn,
};
use gacalc_core::{
    fk3r, fk3r_closed_form, fk6r_best_error, ik6r, Algebra, CgaModel, GeometricEntity,
    Multivector, MvMatrix, Poly, PowerNetwork, Rational, RobotParams3R, RobotParams6R,
    Scalar, Signature,
};

fn alg(p: u32, q: u32, r: u32) -> Arc<Algebra> {
    Algebra::get(Signature::new(p, q, r).unwrap())
}

fn mvq(a: &Arc<Algebra>, coeffs: &[i64]) -> Multivector<Rational> {
    Multivector::from_coeffs(a, coeffs.iter().map(|&c| Rational::from_i64(c)).collect()).unwrap()
}

fn frac(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}

fn rand_mvq(a: &Arc<Algebra>, rng: &mut ChaCha8Rng) -> Multivector<Rational> {
    let coeffs = (0..a.dim()).map(|_| Rational::from_i64(rng.random_range(-5..6))).collect();
    Multivector::from_coeffs(a, coeffs).unwrap()
}

fn ipoly(coeffs: &[i64]) -> Poly {
    Poly::new(coeffs.iter().map(|&c| Rational::from_i64(c)).collect())
}

fn passed(n: u32, what: &str) {
    println!("criterion {n} ({what}): pass");
}

#[test]
fn criterion_01_product_listings_exact() {
    let a = alg(2, 0, 0);
    // geometric product: (1+2e12)(5-e12) = 7+9e12
    let c1 = mvq(&a, &[1, 0, 0, 2]);
    let c2 = mvq(&a, &[5, 0, 0, -1]);
    assert_eq!(c1.geometric_product(&c2), mvq(&a, &[7, 0, 0, 9]));
    // fat-dot and outer products of D1 = 2+3e1+2e2+4e12, D2 = 1-2e1+e2+3e12
    let d1 = mvq(&a, &[2, 3, 2, 4]);
    let d2 = mvq(&a, &[1, -2, 1, 3]);
    assert_eq!(d1.inner_product(&d2), mvq(&a, &[-14, -3, 21, 10]));
    assert_eq!(d1.outer_product(&d2), mvq(&a, &[2, -1, 4, 17]));
    passed(1, "product listings, exact rational");
}

#[test]
fn criterion_02_inverse_listings() {
    // exact: B = 1/2 - 1/2 e1 + 1/2 e2 + 1/2 e12 is invertible with both
    // generators squaring to -1, and the quotient A B^-1 has the printed
    // fractions
    let a = alg(0, 2, 0);
    let b = Multivector::from_coeffs(
        &a,
        vec![frac(1, 2), frac(-1, 2), frac(1, 2), frac(1, 2)],
    )
    .unwrap();
    let binv = inverse(&b).unwrap();
    let want = Multivector::from_coeffs(
        &a,
        vec![frac(1, 2), frac(1, 2), frac(-1, 2), frac(-1, 2)],
    )
    .unwrap();
    assert_eq!(binv, want);
    assert_eq!(b.geometric_product(&binv), Multivector::one(&a));
    let amv = Multivector::from_coeffs(
        &a,
        vec![frac(1, 5), frac(2, 5), frac(2, 5), frac(4, 5)],
    )
    .unwrap();
    let quotient = Multivector::from_coeffs(
        &a,
        vec![frac(1, 2), frac(1, 2), frac(7, 10), frac(-1, 10)],
    )
    .unwrap();
    assert_eq!(amv.geometric_product(&binv), quotient);

    // float: random G(7,0,0) inverse residual below 1e-9
    let g7 = alg(7, 0, 0);
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for _ in 0..3 {
        let x = Multivector::from_coeffs(
            &g7,
            (0..128).map(|_| rng.random_range(-1.0..1.0)).collect::<Vec<f64>>(),
        )
        .unwrap();
        let xi = inverse(&x).unwrap();
        let residual = x.geometric_product(&xi).sub(&Multivector::one(&g7));
        assert!(residual.is_zero_tol(1e-9));
    }
    passed(2, "inverse listings exact + random float inverse < 1e-9");
}

#[test]
fn criterion_03_matrix_representation() {
    let a = alg(3, 0, 0);
    let b = mvq(&a, &[3, 8, 0, -5, 0, 4, -2, -1]);
    let m = to_matrix(&b);
    #[rustfmt::skip]
    let want: [[i64; 8]; 8] = [
        [ 3,  8,  0, -5,  0, -4,  2,  1],
        [ 8,  3,  0,  4,  0,  5,  1,  2],
        [ 0,  0,  3, -2,  8, -1,  5,  4],
        [-5, -4,  2,  3,  1,  8,  0,  0],
        [ 0,  0,  8, -1,  3, -2, -4, -5],
        [ 4,  5,  1,  8,  2,  3,  0,  0],
        [-2, -1,  5,  0,  4,  0,  3,  8],
        [-1, -2, -4,  0, -5,  0,  8,  3],
    ];
    for r in 0..8 {
        for c in 0..8 {
            assert_eq!(*m.at(r, c), Rational::from_i64(want[r][c]), "entry ({r},{c})");
        }
    }
    passed(3, "8x8 left-multiplication matrix entry-for-entry");
}

#[test]
fn criterion_04_exp_log() {
    let a = alg(2, 0, 0);
    // printed numeric example, 4 printed digits
    let x =
        Multivector::from_coeffs(&a, vec![0.81472, 0.90579, 0.12699, 0.91338]).unwrap();
    let ex = analytic_function(&x, &AnalyticFn::Named("exp")).unwrap();
    let want =
        Multivector::from_coeffs(&a, vec![2.2612, 2.0466, 0.28692, 2.0637]).unwrap();
    assert!(ex.sub(&want).is_zero_tol(5e-5));
    let back = analytic_function(&ex, &AnalyticFn::Named("log")).unwrap();
    assert!(back.sub(&x).is_zero_tol(5e-5));

    // closed form: exp(a1 + a2 e1 + a3 e2 + a4 e12) with
    // lambda = sqrt(a2^2 + a3^2 - a4^2) > 0 equals
    // e^{a1}(cosh lambda + sinh(lambda)/lambda * (a2 e1 + a3 e2 + a4 e12))
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut checked = 0;
    while checked < 100 {
        let c: [f64; 4] = std::array::from_fn(|_| rng.random_range(-1.0..1.0));
        let lam2 = c[1] * c[1] + c[2] * c[2] - c[3] * c[3];
        if lam2 <= 1e-6 {
            continue;
        }
        let lam = lam2.sqrt();
        let k = c[0].exp() * lam.sinh() / lam;
        let want = Multivector::from_coeffs(
            &a,
            vec![c[0].exp() * lam.cosh(), k * c[1], k * c[2], k * c[3]],
        )
        .unwrap();
        let got = analytic_function(
            &Multivector::from_coeffs(&a, c.to_vec()).unwrap(),
            &AnalyticFn::Named("exp"),
        )
        .unwrap();
        assert!(got.sub(&want).is_zero_tol(1e-9), "at {c:?}");
        checked += 1;
    }
    passed(4, "exp/log round trip to 4 digits + symbolic closed form < 1e-9");
}

#[test]
fn criterion_05_conformal_embedding() {
    let m = CgaModel::<f64>::new(2, 0).unwrap();
    // push(e1+e2) = n0 + e1 + e2 + ni on the null display basis
    let p = m.push(&[1.0, 1.0]).unwrap();
    assert_eq!(m.display_text(&p).unwrap(), "( 1 )*n0+( 1 )*e1+( 1 )*e2+( 1 )*ni");
    assert_eq!(m.pull(&p).unwrap(), vec![1.0, 1.0]);

    // circle through (1,0), (0,1), (1,1): -n0e12 - 0.5 n0e1ni + 0.5 n0e2ni
    let c = m.circle(&[1.0, 0.0], &[0.0, 1.0], &[1.0, 1.0]).unwrap();
    let disp = m.to_display(&c).unwrap();
    let a = m.algebra();
    for pos in 0..a.dim() as u32 {
        let got = disp.coeffs()[pos as usize];
        let want = match a.conformal_basis_name(pos).as_str() {
            "n0e12" => -1.0,
            "n0e1ni" => -0.5,
            "n0e2ni" => 0.5,
            _ => 0.0,
        };
        assert!((got - want).abs() < 1e-12, "slot {}", a.conformal_basis_name(pos));
    }
    match m.classify(&c).unwrap() {
        GeometricEntity::Circle { center, radius, .. } => {
            assert!((center[0] - 0.5).abs() < 1e-12);
            assert!((center[1] - 0.5).abs() < 1e-12);
            assert!((radius - 0.5f64.sqrt()).abs() < 1e-12);
        }
        other => panic!("expected circle, got {other:?}"),
    }
    passed(5, "push/pull/circle/classify, center (0.5,0.5), radius sqrt(0.5) < 1e-12");
}

#[test]
fn criterion_06_multivector_matrix_inverse() {
    // [e1, e1+e2; e2, e2-e1] over G(1,1,0)
    let a = alg(1, 1, 0);
    let e1 = Multivector::<Rational>::basis(&a, "e1").unwrap();
    let e2 = Multivector::basis(&a, "e2").unwrap();
    let m = MvMatrix::new(2, 2, vec![e1.clone(), e1.add(&e2), e2.clone(), e2.sub(&e1)])
        .unwrap();
    let inv = m.inverse().unwrap();
    let id = MvMatrix::identity(&a, 2);
    assert_eq!(m.mul(&inv).unwrap(), id);
    assert_eq!(inv.mul(&m).unwrap(), id);
    passed(6, "2x2 multivector matrix over G(1,1,0), M*inv(M) = I exact");
}

#[test]
fn criterion_07_forward_kinematics() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let params = RobotParams3R {
            lengths: std::array::from_fn(|_| rng.random_range(0.1..3.0)),
            angles: std::array::from_fn(|_| {
                rng.random_range(-std::f64::consts::PI..std::f64::consts::PI)
            }),
        };
        let (x, y, phi) = fk3r(&params).unwrap();
        let (xc, yc, pc) = fk3r_closed_form(&params);
        assert!(
            (x - xc).abs() < 1e-12 && (y - yc).abs() < 1e-12 && (phi - pc).abs() < 1e-12,
            "{params:?}: rotor chain ({x},{y},{phi}) vs closed form ({xc},{yc},{pc})"
        );
    }
    passed(7, "rotor-chain pose equals closed form on 1000 draws < 1e-12");
}

#[test]
fn criterion_08_inverse_kinematics() {
    let params = RobotParams6R {
        d1: 480.0,
        a3: 425.0,
        d4: 425.0,
        target: [561.8479, 262.7685, 455.0104],
    };
    let result = ik6r(&params).unwrap();
    let known = [0.4375, 0.8590, 1.5040];
    assert!(
        result
            .solutions
            .iter()
            .any(|s| s.iter().zip(&known).all(|(a, b)| (a - b).abs() < 1e-3)),
        "published joint triple missing from {:?}",
        result.solutions
    );
    assert_eq!(result.solutions.len(), 2, "both elbow branches expected");
    for joints in &result.solutions {
        let err = fk6r_best_error(&params, joints);
        assert!(err < 1e-6, "forward map error {err} for {joints:?}");
    }
    passed(8, "joint triple (0.4375, 0.8590, 1.5040) < 1e-3; forward map < 1e-6");
}

#[test]
fn criterion_09_power_network_polynomials() {
    let solution = PowerNetwork::example().solve().unwrap();
    let den = ipoly(&[15052095, 2552384, 136080, 2592, 16]);
    let na_sym = ipoly(&[14595547, 1596858, 50148, 440]);
    let nb_sym = ipoly(&[-62633, -126698, -2876, -24]);
    let na_unb = ipoly(&[-62553, -126378, -2556, -24]);
    let nb_unb = ipoly(&[14651277, 1706478, 46428, 360]);
    for (slot, na, nb) in [
        (0, &na_sym, &nb_sym),
        (1, &na_unb, &nb_unb),
        (2, &na_sym, &nb_sym),
        (3, &na_unb, &nb_unb),
    ] {
        let t = &solution.v2.slots[slot];
        assert_eq!(t.den, den, "v2 slot {slot} denominator");
        assert_eq!(&t.num_a, na, "v2 slot {slot} source-a numerator");
        assert_eq!(&t.num_b, nb, "v2 slot {slot} source-b numerator");
    }
    passed(9, "v2 transfers clear to the published integer polynomials exactly");
}

#[test]
fn criterion_10_property_suites() {
    // ring axioms: associativity and distributivity, exact rationals
    let a5 = alg(2, 2, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..200 {
        let x = rand_mvq(&a5, &mut rng);
        let y = rand_mvq(&a5, &mut rng);
        let z = rand_mvq(&a5, &mut rng);
        assert_eq!(
            x.geometric_product(&y).geometric_product(&z),
            x.geometric_product(&y.geometric_product(&z))
        );
        assert_eq!(
            x.geometric_product(&y.add(&z)),
            x.geometric_product(&y).add(&x.geometric_product(&z))
        );
    }

    // vector decomposition: uv = u.v + u^v
    let a4 = alg(3, 1, 0);
    for _ in 0..200 {
        let vector = |rng: &mut ChaCha8Rng| {
            let mut v = Multivector::<Rational>::zero(&a4);
            for name in ["e1", "e2", "e3", "e4"] {
                let b = Multivector::basis(&a4, name).unwrap();
                v = v.add(&b.scalar_mul(&Rational::from_i64(rng.random_range(-5..6))));
            }
            v
        };
        let u = vector(&mut rng);
        let v = vector(&mut rng);
        assert_eq!(
            u.geometric_product(&v),
            u.inner_product(&v).add(&u.outer_product(&v))
        );
    }

    // reverse is an anti-automorphism: rev(xy) = rev(y) rev(x)
    for _ in 0..200 {
        let x = rand_mvq(&a4, &mut rng);
        let y = rand_mvq(&a4, &mut rng);
        assert_eq!(
            x.geometric_product(&y).reverse(),
            y.reverse().geometric_product(&x.reverse())
        );
    }

    // matrix representation is a homomorphism: M_{xy} = M_x M_y
    let a3 = alg(2, 1, 0);
    for _ in 0..200 {
        let x = rand_mvq(&a3, &mut rng);
        let y = rand_mvq(&a3, &mut rng);
        let lhs = to_matrix(&x.geometric_product(&y));
        let rhs = to_matrix(&x).mul(&to_matrix(&y)).unwrap();
        assert_eq!(lhs.data, rhs.data);
    }

    // conformal embedding: push(x)^2 = 0 and push(x).push(y) = -|x-y|^2/2
    let m = CgaModel::<f64>::new(3, 0).unwrap();
    for _ in 0..200 {
        let x: [f64; 3] = std::array::from_fn(|_| rng.random_range(-3.0..3.0));
        let y: [f64; 3] = std::array::from_fn(|_| rng.random_range(-3.0..3.0));
        let px = m.push(&x).unwrap();
        assert!(px.geometric_product(&px).is_zero_tol(1e-10));
        let dist2: f64 = x.iter().zip(&y).map(|(a, b)| (a - b) * (a - b)).sum();
        let dot = *px.inner_product(&m.push(&y).unwrap()).scalar_part();
        assert!((dot + dist2 / 2.0).abs() < 1e-9);
    }

    // translator covariance: classified spheres move rigidly
    for _ in 0..200 {
        let c: [f64; 3] = std::array::from_fn(|_| rng.random_range(-2.0..2.0));
        let r = rng.random_range(0.5..2.0);
        let v: [f64; 3] = std::array::from_fn(|_| rng.random_range(-2.0..2.0));
        let s = m.sphere_inner(&c, &r).unwrap();
        let moved = sandwich(&m.translator(&v).unwrap(), &s);
        match m.classify(&moved).unwrap() {
            GeometricEntity::Sphere { center, radius } => {
                for i in 0..3 {
                    assert!((center[i] - (c[i] + v[i])).abs() < 1e-9);
                }
                assert!((radius - r).abs() < 1e-9);
            }
            other => panic!("expected sphere, got {other:?}"),
        }
    }

    // extract after construct recovers the two points of a pair
    for _ in 0..200 {
        let p: [f64; 3] = std::array::from_fn(|_| rng.random_range(-3.0..3.0));
        let mut q: [f64; 3] = std::array::from_fn(|_| rng.random_range(-3.0..3.0));
        // keep the pair comfortably real
        if p.iter().zip(&q).map(|(a, b)| (a - b).abs()).sum::<f64>() < 0.5 {
            q[0] += 1.0;
        }
        let pair = m.point_pair(&p, &q).unwrap();
        let (b1, b2) = m.extract_point_pair(&pair).unwrap();
        let (c1, c2) = (m.pull(&b1).unwrap(), m.pull(&b2).unwrap());
        let close = |a: &[f64], b: &[f64]| {
            a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-9)
        };
        assert!(
            (close(&c1, &p) && close(&c2, &q)) || (close(&c1, &q) && close(&c2, &p)),
            "pair {p:?},{q:?} extracted as {c1:?},{c2:?}"
        );
    }

    // block scalar representation of multivector matrices is a homomorphism
    let a2 = alg(2, 0, 0);
    for _ in 0..200 {
        let rand_mat = |rng: &mut ChaCha8Rng| {
            MvMatrix::new(2, 2, (0..4).map(|_| rand_mvq(&a2, rng)).collect()).unwrap()
        };
        let x = rand_mat(&mut rng);
        let y = rand_mat(&mut rng);
        assert_eq!(x.mul(&y).unwrap().block().data, x.block().mul(&y.block()).unwrap().data);
    }
    passed(10, "eight property suites, 200 random cases each");
}

#[test]
fn criterion_11_timing_sanity() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for p in 1..=8u32 {
        let t0 = Instant::now();
        let a = alg(p, 0, 0);
        let construction = t0.elapsed();
        let x = Multivector::from_coeffs(
            &a,
            (0..a.dim()).map(|_| rng.random_range(-1.0..1.0)).collect::<Vec<f64>>(),
        )
        .unwrap();
        let t1 = Instant::now();
        let xi = inverse(&x).unwrap();
        let inversion = t1.elapsed();
        let residual = x.geometric_product(&xi).sub(&Multivector::one(&a));
        assert!(residual.is_zero_tol(1e-9), "inverse residual too large at [{p},0,0]");
        // wall times are machine dependent: reported, not asserted
        println!(
            "  [{p},0,0]: construction {construction:?}, random inverse {inversion:?}"
        );
    }
    passed(11, "construction through [8,0,0] + correct inverses, times reported");
}
