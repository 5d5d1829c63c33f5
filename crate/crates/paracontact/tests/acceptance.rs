//! Acceptance suite: every release criterion, one test per criterion, each
//! printing a PASS line with the worst residual observed at the pinned
//! tolerance. All expected values are frozen here, independent of the library
//! internals they check.

use nalgebra::DMatrix;
use paracontact::classes::f4_prime_tensor;
use paracontact::{
    assoc_nijenhuis, classify, components_all, lee_forms, levi_civita, nijenhuis,
    nijenhuis_from_connection, predicates, random_f, random_structure, reconstruct_f,
    standard_structure, subspace_dim_formula, subspace_dims_numeric, BilinearTensor, CubicTensor,
    FundamentalTensor, LieExample,
};

const GRID: [(f64, f64); 5] = [(1.0, 1.0), (0.0, 1.0), (1.0, 0.0), (0.0, 0.0), (-2.0, 3.0)];

fn example(a1: f64, a2: f64) -> (paracontact::Connection, FundamentalTensor) {
    let (alg, s) = LieExample::new(1, vec![a1, a2]).unwrap().build().unwrap();
    let conn = levi_civita(&alg, s.model()).unwrap();
    let f = FundamentalTensor::from_connection(&conn, &s).unwrap();
    (conn, f)
}

/// Frozen nonzero entries of the example-family fundamental tensor.
fn frozen_f(a1: f64, a2: f64) -> CubicTensor {
    let mut f = CubicTensor::zeros(3);
    for (i, j, k, v) in [
        (1, 0, 1, -a2),
        (1, 1, 0, -a2),
        (2, 0, 2, -a2),
        (2, 2, 0, -a2),
        (1, 0, 2, -a1),
        (1, 2, 0, -a1),
        (2, 0, 1, a1),
        (2, 1, 0, a1),
    ] {
        f.set(i, j, k, v);
    }
    f
}

#[test]
fn criterion_1_example_family_regression() {
    const TOL: f64 = 1e-12;
    let mut worst = 0.0f64;
    for (a1, a2) in GRID {
        let (conn, f) = example(a1, a2);
        // connection: D_E1 E0 = a1 E1 + a2 E2, D_E2 E0 = a2 E1 - a1 E2,
        // D_E1 E1 = -D_E2 E2 = -a1 E0, D_E1 E2 = D_E2 E1 = -a2 E0, rest zero
        let mut gamma = paracontact::frame::Rank12Tensor::zeros(3);
        for (i, j, k, v) in [
            (1, 0, 1, a1),
            (1, 0, 2, a2),
            (2, 0, 1, a2),
            (2, 0, 2, -a1),
            (1, 1, 0, -a1),
            (2, 2, 0, a1),
            (1, 2, 0, -a2),
            (2, 1, 0, -a2),
        ] {
            gamma.set(i, j, k, v);
        }
        let conn_residual = conn.gamma().sub(&gamma).max_abs();
        let f_residual = f.tensor().sub(&frozen_f(a1, a2)).max_abs();
        worst = worst.max(conn_residual).max(f_residual);
        assert!(conn_residual <= TOL, "connection at ({a1},{a2})");
        assert!(f_residual <= TOL, "F components at ({a1},{a2})");

        let report = classify(&f).unwrap();
        let expected: Vec<usize> = match (a1 != 0.0, a2 != 0.0) {
            (true, true) => vec![4, 9],
            (false, true) => vec![4],
            (true, false) => vec![9],
            (false, false) => vec![],
        };
        assert_eq!(report.members, expected, "classification at ({a1},{a2})");
    }
    println!("ACCEPT 1: example-family connection, F and classes PASS (worst residual {worst:.3e}, tol 1e-12)");
}

#[test]
fn criterion_2_nijenhuis_regression() {
    const TOL: f64 = 1e-12;
    let mut worst = 0.0f64;
    for (a1, a2) in GRID {
        let (conn, f) = example(a1, a2);
        let nb = nijenhuis(&f);
        let hb = assoc_nijenhuis(&f);
        // N(x,y,z) = -2 a1 { (x0 y1 - x1 y0) z1 - (x0 y2 - x2 y0) z2 }
        let mut n1 = CubicTensor::zeros(3);
        for (i, j, k, v) in [
            (0, 1, 1, -2.0 * a1),
            (1, 0, 1, 2.0 * a1),
            (0, 2, 2, 2.0 * a1),
            (2, 0, 2, -2.0 * a1),
        ] {
            n1.set(i, j, k, v);
        }
        // N^(x,y,z) = -4 a2 (x1 y2 + x2 y1) z0
        //             + 2 a1 { (x0 y1 + x1 y0) z1 - (x0 y2 + x2 y0) z2 }
        let mut hn1 = CubicTensor::zeros(3);
        for (i, j, k, v) in [
            (1, 2, 0, -4.0 * a2),
            (2, 1, 0, -4.0 * a2),
            (0, 1, 1, 2.0 * a1),
            (1, 0, 1, 2.0 * a1),
            (0, 2, 2, -2.0 * a1),
            (2, 0, 2, -2.0 * a1),
        ] {
            hn1.set(i, j, k, v);
        }
        // N3(x,y) = 2 a1 (x1 y2 - x2 y1) = -N^3(x,y); N2 = 0;
        // N^2(x,y) = 4 a2 (x1 y1 + x2 y2); N4 = N^4 = 0
        let mut n3 = BilinearTensor::zeros(3);
        n3.set(1, 2, 2.0 * a1);
        n3.set(2, 1, -2.0 * a1);
        let mut hn2 = BilinearTensor::zeros(3);
        hn2.set(1, 1, 4.0 * a2);
        hn2.set(2, 2, 4.0 * a2);

        for (label, residual) in [
            ("N1", nb.n1.sub(&n1).max_abs()),
            ("N2", nb.n2.max_abs()),
            ("N3", nb.n3.sub(&n3).max_abs()),
            ("N4", nb.n4.max_abs()),
            ("N^1", hb.n1.sub(&hn1).max_abs()),
            ("N^2", hb.n2.sub(&hn2).max_abs()),
            ("N^3", hb.n3.sub(&n3.scale(-1.0)).max_abs()),
            ("N^4", hb.n4.max_abs()),
        ] {
            worst = worst.max(residual);
            assert!(residual <= TOL, "{label} at ({a1},{a2}): {residual:.3e}");
        }
        // independent route: brackets and anticommutators through the connection
        let (nd, hd) = nijenhuis_from_connection(&conn, f.structure()).unwrap();
        for (label, residual) in [
            ("N1 route", nd.n1.sub(&nb.n1).max_abs()),
            ("N2 route", nd.n2.sub(&nb.n2).max_abs()),
            ("N3 route", nd.n3.sub(&nb.n3).max_abs()),
            ("N4 route", nd.n4.sub(&nb.n4).max_abs()),
            ("N^1 route", hd.n1.sub(&hb.n1).max_abs()),
            ("N^2 route", hd.n2.sub(&hb.n2).max_abs()),
            ("N^3 route", hd.n3.sub(&hb.n3).max_abs()),
            ("N^4 route", hd.n4.sub(&hb.n4).max_abs()),
        ] {
            worst = worst.max(residual);
            assert!(residual <= TOL, "{label} at ({a1},{a2}): {residual:.3e}");
        }
    }
    println!("ACCEPT 2: Nijenhuis family closed forms PASS on the grid (worst residual {worst:.3e}, tol 1e-12)");
}

#[test]
fn criterion_3_para_sasakian_cases() {
    let (conn01, f01) = example(0.0, 1.0);
    let p01 = predicates(&f01, Some(&conn01)).unwrap();
    let r01 = classify(&f01).unwrap();
    assert!(p01.para_sasakian.unwrap().holds, "(0,1) para-Sasakian");
    assert!(r01.is_f4_prime, "(0,1) is F4'");

    let (conn02, f02) = example(0.0, 2.0);
    let p02 = predicates(&f02, Some(&conn02)).unwrap();
    let r02 = classify(&f02).unwrap();
    assert_eq!(r02.members, vec![4], "(0,2) members");
    assert!(!r02.is_f4_prime, "(0,2) is not F4'");
    assert!((r02.theta_xi + 4.0).abs() <= 1e-12, "(0,2) theta(xi) = -4");
    assert!(!p02.para_sasakian.unwrap().holds, "(0,2) not para-Sasakian");
    println!(
        "ACCEPT 3: para-Sasakian cases PASS ((0,1) true/F4', (0,2) F4 with theta(xi) = {:.1})",
        r02.theta_xi
    );
}

#[test]
fn criterion_4_reconstruction_theorem() {
    const TOL: f64 = 1e-10;
    let mut worst = 0.0f64;
    let mut count = 0usize;
    for dim in [3usize, 5] {
        let s = random_structure(dim, 1000 + dim as u64).unwrap();
        for seed in 0..100u64 {
            let f = random_f(&s, seed).unwrap();
            let rebuilt = reconstruct_f(&nijenhuis(&f), &assoc_nijenhuis(&f), &s);
            let residual =
                s.model().cubic_norm(&rebuilt.sub(f.tensor())).unwrap() / f.norm().max(1.0);
            worst = worst.max(residual);
            count += 1;
            assert!(residual <= TOL, "round trip dim {dim} seed {seed}");
        }
    }
    println!("ACCEPT 4: reconstruction round trip PASS over {count} tensors (worst relative residual {worst:.3e}, tol 1e-10)");
}

#[test]
fn criterion_5_decomposition_completeness_orthogonality() {
    const TOL: f64 = 1e-10;
    let mut worst = 0.0f64;
    for dim in [3usize, 5] {
        let s = random_structure(dim, 2000 + dim as u64).unwrap();
        let model = s.model();
        for seed in 0..100u64 {
            let f = random_f(&s, seed).unwrap();
            let scale = f.norm().max(1.0);
            let comps = components_all(&f);
            let mut sum = CubicTensor::zeros(dim);
            for c in &comps {
                sum = sum.add(c);
            }
            let completeness = model.cubic_norm(&f.tensor().sub(&sum)).unwrap() / scale;
            worst = worst.max(completeness);
            assert!(completeness <= TOL, "completeness dim {dim} seed {seed}");
            for i in 0..11 {
                let ni = model.cubic_norm(&comps[i]).unwrap();
                for j in (i + 1)..11 {
                    let nj = model.cubic_norm(&comps[j]).unwrap();
                    let ip = model.cubic_inner(&comps[i], &comps[j]).unwrap().abs();
                    let orth = ip / (ni * nj).max(1e-30);
                    if ni > 1e-12 && nj > 1e-12 {
                        worst = worst.max(orth);
                        assert!(orth <= TOL, "orthogonality F{} F{}", i + 1, j + 1);
                    }
                }
            }
            // idempotence and annihilation, rotating through the classes
            let i = 1 + (seed as usize % 11);
            if model.cubic_norm(&comps[i - 1]).unwrap() > 1e-12 {
                let wrapped = FundamentalTensor::new(comps[i - 1].clone(), s.clone()).unwrap();
                let again = components_all(&wrapped);
                let idem = model.cubic_norm(&again[i - 1].sub(&comps[i - 1])).unwrap() / scale;
                worst = worst.max(idem);
                assert!(idem <= TOL, "idempotence F{i}");
                for j in 1..=11usize {
                    if j != i {
                        let ann = model.cubic_norm(&again[j - 1]).unwrap() / scale;
                        worst = worst.max(ann);
                        assert!(ann <= TOL, "annihilation F{j} of F{i}");
                    }
                }
            }
        }
    }
    println!("ACCEPT 5: decomposition completeness/orthogonality/idempotence PASS (worst residual {worst:.3e}, tol 1e-10)");
}

#[test]
fn criterion_6_subspace_dimensions() {
    let expected_totals = [9usize, 40, 105];
    for n in 1..=3usize {
        let s = standard_structure(n).unwrap();
        let (dims, full) = subspace_dims_numeric(&s).unwrap();
        let mut total = 0usize;
        for class in 1..=11 {
            let formula = subspace_dim_formula(n, class).unwrap();
            assert_eq!(
                dims[class - 1],
                formula,
                "numeric rank of F{class} at n={n}"
            );
            total += formula;
        }
        assert_eq!(total, expected_totals[n - 1], "total at n={n}");
        assert_eq!(full, total, "full admissible-space rank at n={n}");
    }
    // classes 2, 3, 6, 7 vanish identically on 200 random dim-3 tensors
    let s3 = standard_structure(1).unwrap();
    let mut worst = 0.0f64;
    for seed in 0..200u64 {
        let f = random_f(&s3, seed).unwrap();
        let comps = components_all(&f);
        for class in [2usize, 3, 6, 7] {
            let norm = s3.model().cubic_norm(&comps[class - 1]).unwrap() / f.norm().max(1.0);
            worst = worst.max(norm);
            assert!(norm <= 1e-10, "F{class} nonzero at dim 3, seed {seed}");
        }
    }
    println!("ACCEPT 6: subspace dimensions PASS (totals 9/40/105; restricted classes worst {worst:.3e}, tol 1e-10)");
}

#[test]
fn criterion_7_table_patterns_and_vanishing_theorems() {
    const TOL: f64 = 1e-10;
    // every pure class at its smallest admitting rank: the full row
    // comparison lives in the library verify suite; here we assert it end
    // to end through the public API
    let cfg = paracontact::verify::VerifyConfig {
        seeds: 10,
        dims: vec![3, 5],
        tol: TOL,
    };
    let tables = paracontact::verify::suite_tables(&cfg);
    assert_eq!(tables.failures, 0, "table rows failed: {:?}", tables.notes);

    // membership-implies-vanishing: normal for members within {1,2,4,5,6},
    // vanishing symmetric tensor for members within {3,7}
    let s = standard_structure(2).unwrap();
    let model = s.model();
    let mut worst = tables.worst_residual;
    for seed in 0..25u64 {
        let f = random_f(&s, seed).unwrap();
        let comps = components_all(&f);
        let mut normal_sum = CubicTensor::zeros(5);
        for i in [1usize, 2, 4, 5, 6] {
            normal_sum = normal_sum.add(&comps[i - 1]);
        }
        let fnormal = FundamentalTensor::new(normal_sum, s.clone()).unwrap();
        let n1 = model.cubic_norm(&nijenhuis(&fnormal).n1).unwrap() / fnormal.norm().max(1.0);
        worst = worst.max(n1);
        assert!(n1 <= TOL, "normal class N1 != 0 at seed {seed}");

        let mut sum37 = CubicTensor::zeros(5);
        for i in [3usize, 7] {
            sum37 = sum37.add(&comps[i - 1]);
        }
        let f37 = FundamentalTensor::new(sum37, s.clone()).unwrap();
        let hn1 = model.cubic_norm(&assoc_nijenhuis(&f37).n1).unwrap() / f37.norm().max(1.0);
        worst = worst.max(hn1);
        assert!(hn1 <= TOL, "F3+F7 N^1 != 0 at seed {seed}");
    }
    println!("ACCEPT 7: table patterns and vanishing theorems PASS ({} row checks; worst residual {worst:.3e}, tol 1e-10)",
        tables.cases);
}

#[test]
fn criterion_8_lee_and_ell_identities() {
    const TOL: f64 = 1e-10;
    let mut worst = 0.0f64;
    let mut cases = 0usize;
    for dim in [3usize, 5, 7] {
        for seed in 0..20u64 {
            let s = random_structure(dim, seed).unwrap();
            // l-split of the metric
            let g = BilinearTensor::from_matrix(s.model().g());
            let (l1, l2, l3) = s.ell_split(&g).unwrap();
            let eta2 = s.eta_outer();
            worst = worst.max(l1.sub(&g.sub(&eta2)).max_abs());
            worst = worst.max(l2.sub(&eta2).max_abs());
            worst = worst.max(l3.max_abs());
            // associated metric signature (n+1, n)
            let n = (dim - 1) / 2;
            let gt = s.associated_metric();
            assert_eq!(s.signature(&gt), (n + 1, n, 0), "signature dim {dim}");
            // Lee identities and omega(z) = -1/2 N^(xi,xi,phi z)
            let f = random_f(&s, seed + 500).unwrap();
            let lee = lee_forms(&f);
            let (omega_xi, star) = lee.identity_residuals(&s);
            worst = worst.max(omega_xi).max(star);
            let hb = assoc_nijenhuis(&f);
            let phi = s.phi();
            let xi = s.xi();
            for k in 0..dim {
                let mut acc = 0.0;
                for a in 0..dim {
                    for b in 0..dim {
                        for c in 0..dim {
                            acc += xi[a] * xi[b] * phi[(c, k)] * hb.n1.get(a, b, c);
                        }
                    }
                }
                worst = worst.max((lee.omega.get(k) + 0.5 * acc).abs());
            }
            cases += 1;
            assert!(worst <= TOL, "dim {dim} seed {seed}: worst {worst:.3e}");
        }
    }
    println!("ACCEPT 8: Lee-form and l-operator identities PASS over {cases} structures (worst residual {worst:.3e}, tol 1e-10)");
}

#[test]
fn criterion_9_f4_prime_paracontact_never_killing() {
    let mut samples = 0usize;
    let mut seed = 0u64;
    let mut worst_pc = 0.0f64;
    while samples < 20 {
        let dim = [3usize, 5, 7][(seed % 3) as usize];
        let s = random_structure(dim, 3000 + seed).unwrap();
        seed += 1;
        let f = FundamentalTensor::new(f4_prime_tensor(&s), s.clone()).unwrap();
        let p = predicates(&f, None).unwrap();
        assert!(p.paracontact.holds, "paracontact on F4' sample {samples}");
        assert!(!p.killing_xi.holds, "Killing xi on F4' sample {samples}");
        worst_pc = worst_pc.max(p.paracontact.residual);
        samples += 1;
    }
    println!("ACCEPT 9: F4' corpus PASS ({samples} samples paracontact, none Killing; worst paracontact residual {worst_pc:.3e})");
}

/// Sanity check shared by several criteria: a frozen non-example metric path
/// through the public API (raw tensors in a conjugated frame).
#[test]
fn raw_frame_consistency() {
    let s = random_structure(5, 77).unwrap();
    let f = random_f(&s, 7).unwrap();
    // the Lie derivative along xi agrees with 2 D eta symmetrized through
    // the connection-free expression on the admissible space
    let l = paracontact::lie_derivative_g(&f);
    let de = paracontact::d_eta(&f);
    let d = s.dim();
    let phi2 = s.phi() * s.phi();
    let _ = phi2;
    for i in 0..d {
        for j in 0..d {
            // antisymmetric and symmetric parts recombine to -2 F(x, phi y, xi)
            let m_ij = -0.5 * (l.get(i, j) + de.get(i, j));
            let x = DMatrix::identity(d, d).column(i).into_owned();
            let y = DMatrix::identity(d, d).column(j).into_owned();
            let fy = s.phi() * &y;
            let direct = f.eval(&x, &fy, &s.xi().clone());
            assert!((m_ij - direct).abs() < 1e-12);
        }
    }
}
