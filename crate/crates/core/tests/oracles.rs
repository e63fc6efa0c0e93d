//! Checks against values computed independently of the library: norms by
//! numerical integration over the disc and circle, adjoints through raw
//! coefficients and Gram matrices, and commutators by explicit monomial
//! bookkeeping.

use std::f64::consts::TAU;

use nalgebra::{DMatrix, DVector};
use wandering::operators::{shift_compressed, ShiftTuple};
use wandering::spaces::{MultiIndex, SpaceKind, SpaceModel, C64};
use wandering::subspaces::{self, Subspace};
use wandering::suites::{
    self, gen_tensor_invariant_subspace, gen_vanishing_ideal_subspace, CaseContext, CaseSpec, Scalar, SubspaceRecipe,
};
use wandering::tolerance::Tolerances;

fn c(re: f64) -> C64 {
    C64::new(re, 0.0)
}

/// Composite Simpson on [0, 1].
fn simpson(f: impl Fn(f64) -> f64, intervals: usize) -> f64 {
    let h = 1.0 / intervals as f64;
    let mut acc = f(0.0) + f(1.0);
    for i in 1..intervals {
        acc += f(i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 };
    }
    acc * h / 3.0
}

fn eval(coeffs: &[C64], z: C64) -> C64 {
    coeffs.iter().rev().fold(c(0.0), |acc, &a| acc * z + a)
}

fn derivative(coeffs: &[C64]) -> Vec<C64> {
    coeffs.iter().enumerate().skip(1).map(|(m, &a)| a * m as f64).collect()
}

/// `(1/2π)∫ f ḡ dθ` by the trapezoid rule, exact for low-degree polynomials.
fn hardy_inner(f: &[C64], g: &[C64]) -> C64 {
    let n = 64;
    (0..n)
        .map(|j| {
            let z = C64::from_polar(1.0, TAU * j as f64 / n as f64);
            eval(f, z) * eval(g, z).conj()
        })
        .sum::<C64>()
        / n as f64
}

/// `(1/π)∫_D f ḡ dA`: exact trapezoid in the angle, Simpson in the radius.
fn bergman_inner(f: &[C64], g: &[C64]) -> C64 {
    let n = 64;
    let angular = |r: f64, part: fn(C64) -> f64| {
        (0..n)
            .map(|j| {
                let z = C64::from_polar(r, TAU * j as f64 / n as f64);
                part(eval(f, z) * eval(g, z).conj())
            })
            .sum::<f64>()
            / n as f64
    };
    let re = simpson(|r| 2.0 * r * angular(r, |x| x.re), 4000);
    let im = simpson(|r| 2.0 * r * angular(r, |x| x.im), 4000);
    C64::new(re, im)
}

fn dirichlet_inner(f: &[C64], g: &[C64]) -> C64 {
    hardy_inner(f, g) + bergman_inner(&derivative(f), &derivative(g))
}

fn random_poly(seed: u64, len: usize) -> Vec<C64> {
    // small LCG so the oracle shares no code with the library's RNG use
    let mut s = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
    let mut next = move || {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((s >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
    };
    (0..len).map(|_| C64::new(next(), next())).collect()
}

#[test]
fn monomial_norms_match_integrals() {
    for m in 0..8 {
        let mut z_m = vec![c(0.0); m + 1];
        z_m[m] = c(1.0);
        let k = MultiIndex::new(vec![m]).unwrap();
        for (kind, oracle) in [
            (SpaceKind::Hardy, hardy_inner(&z_m, &z_m).re),
            (SpaceKind::Bergman, bergman_inner(&z_m, &z_m).re),
            (SpaceKind::Dirichlet, dirichlet_inner(&z_m, &z_m).re),
        ] {
            let model = SpaceModel::new(kind.clone(), vec![8]).unwrap();
            let w = model.monomial_weight(&k).unwrap();
            assert!((w - oracle).abs() < 1e-10 * oracle.max(1.0), "{kind} m={m}: {w} vs {oracle}");
        }
    }
}

#[test]
fn inner_products_of_random_polynomials_match_integrals() {
    for seed in 0..5 {
        let f = random_poly(seed, 6);
        let g = random_poly(seed + 100, 6);
        for (kind, oracle) in [
            (SpaceKind::Hardy, hardy_inner(&f, &g)),
            (SpaceKind::Bergman, bergman_inner(&f, &g)),
            (SpaceKind::Dirichlet, dirichlet_inner(&f, &g)),
        ] {
            let model = SpaceModel::new(kind.clone(), vec![5]).unwrap();
            let fv = DVector::from_vec(f.clone());
            let gv = DVector::from_vec(g.clone());
            let got = model.inner_product(&fv, &gv).unwrap();
            assert!((got - oracle).norm() < 1e-10 * oracle.norm().max(1.0), "{kind}: {got} vs {oracle}");
        }
    }
}

#[test]
fn two_variable_weights_factor() {
    // ‖z1^a z2^b‖² over the bidisc is the product of one-variable norms
    let model = SpaceModel::new(SpaceKind::Bergman, vec![3, 4]).unwrap();
    for a in 0..=3 {
        for b in 0..=4 {
            let w = model.monomial_weight(&MultiIndex::new(vec![a, b]).unwrap()).unwrap();
            assert!((w - 1.0 / ((a + 1) * (b + 1)) as f64).abs() < 1e-15);
        }
    }
}

/// Raw-coefficient matrix of multiplication by `z_var`, truncated to the box.
fn raw_shift(model: &SpaceModel, var: usize) -> DMatrix<C64> {
    let grid = model.grid();
    let mut m = DMatrix::zeros(grid.size(), grid.size());
    for (p, k) in grid.indices().iter().enumerate() {
        let up = k.raised(var);
        if let Some(q) = grid.position(&up) {
            m[(q, p)] = c(1.0);
        }
    }
    m
}

#[test]
fn adjoint_through_gram_matrix() {
    for kind in [SpaceKind::Hardy, SpaceKind::Bergman, SpaceKind::Dirichlet] {
        let model = SpaceModel::new(kind.clone(), vec![4, 3]).unwrap();
        let gram = DMatrix::from_diagonal(&DVector::from_iterator(model.size(), model.weights().iter().map(|&w| c(w))));
        let gram_inv = gram.map(|x| if x.norm() == 0.0 { x } else { 1.0 / x });
        for var in 0..2 {
            let m = raw_shift(&model, var);
            // weighted adjoint in raw coordinates: G⁻¹ Mᴴ G
            let adj_raw = &gram_inv * m.adjoint() * &gram;
            let iso = shift_compressed(&model, var).unwrap().adjoint();
            for p in 0..model.size() {
                let mut e = DVector::zeros(model.size());
                e[p] = c(1.0);
                let via_iso = model.from_isometric(&iso.apply(&model.to_isometric(&e).unwrap()).unwrap()).unwrap();
                let via_raw = &adj_raw * &e;
                assert!((via_iso - via_raw).norm() < 1e-13, "{kind} var {var} pos {p}");
            }
        }
    }
}

#[test]
fn adjoint_examples() {
    // M_z* z² = (2/3) z in the Bergman space and (3/2) z in the Dirichlet space
    for (kind, factor) in [(SpaceKind::Bergman, 2.0 / 3.0), (SpaceKind::Dirichlet, 1.5), (SpaceKind::Hardy, 1.0)] {
        let model = SpaceModel::new(kind.clone(), vec![5]).unwrap();
        let t = shift_compressed(&model, 0).unwrap().adjoint();
        let z2 = model.monomial(&MultiIndex::new(vec![2]).unwrap()).unwrap();
        let out = model.from_isometric(&t.apply(&model.to_isometric(&z2).unwrap()).unwrap()).unwrap();
        assert!((out[1] - c(factor)).norm() < 1e-14, "{kind}: {}", out[1]);
        assert!(out.iter().enumerate().all(|(i, x)| i == 1 || x.norm() < 1e-15));
    }
}

/// Brute-force `max ‖[R_i, R_j*]‖` over interior monomials of the vanishing
/// ideal, with `R_i = P_S M_{z_i}|_S` applied symbolically.
fn vanishing_ideal_commutator_on_monomials(kind: &SpaceKind, d: usize) -> f64 {
    let model = SpaceModel::new(kind.clone(), vec![d, d]).unwrap();
    let w = |a: usize, b: usize| model.monomial_weight(&MultiIndex::new(vec![a, b]).unwrap()).unwrap();
    // isometric action on unit monomials e_(a,b)
    let up = |var: usize, (a, b): (usize, usize)| -> Option<((usize, usize), f64)> {
        let t = if var == 0 { (a + 1, b) } else { (a, b + 1) };
        if t.0 > d || t.1 > d {
            return None;
        }
        Some((t, (w(t.0, t.1) / w(a, b)).sqrt()))
    };
    let down = |var: usize, (a, b): (usize, usize)| -> Option<((usize, usize), f64)> {
        let t = if var == 0 { (a.checked_sub(1)?, b) } else { (a, b.checked_sub(1)?) };
        if t == (0, 0) {
            return None; // projected out of S
        }
        Some((t, (w(a, b) / w(t.0, t.1)).sqrt()))
    };
    let mut worst: f64 = 0.0;
    for a in 0..=d - 2 {
        for b in 0..=d - 2 {
            if (a, b) == (0, 0) {
                continue;
            }
            // R_1 R_2* e − R_2* R_1 e; both terms land on one monomial
            let lhs = down(1, (a, b)).and_then(|(t, s)| up(0, t).map(|(u, s2)| (u, s * s2)));
            let rhs = up(0, (a, b)).and_then(|(t, s)| down(1, t).map(|(u, s2)| (u, s * s2)));
            let diff = match (lhs, rhs) {
                (Some((u, x)), Some((v, y))) if u == v => (x - y).abs(),
                (Some((_, x)), Some((_, y))) => x.hypot(y),
                (Some((_, x)), None) | (None, Some((_, x))) => x,
                (None, None) => 0.0,
            };
            worst = worst.max(diff);
        }
    }
    worst
}

#[test]
fn vanishing_ideal_commutator_matches_brute_force() {
    for kind in [SpaceKind::Hardy, SpaceKind::Bergman, SpaceKind::Dirichlet] {
        let spec = CaseSpec {
            space: kind.clone(),
            caps: vec![8, 8],
            recipe: SubspaceRecipe::VanishingIdeal,
            ..CaseSpec::default()
        };
        let ctx = CaseContext::build(&spec).unwrap();
        let report = ctx.restriction.check_doubly_commuting(1e-10).unwrap();
        // the operator norm dominates every column, and in the monomial basis
        // each column of the commutator has a single entry, so they agree
        let oracle = vanishing_ideal_commutator_on_monomials(&kind, 8);
        assert!(oracle > 0.1, "{kind}");
        assert!(report.residual >= oracle - 1e-12, "{kind}: {} vs {oracle}", report.residual);
        assert!(!report.pass);
    }
    assert!((vanishing_ideal_commutator_on_monomials(&SpaceKind::Hardy, 8) - 1.0).abs() < 1e-15);
}

#[test]
fn vanishing_ideal_dimension() {
    let model = SpaceModel::new(SpaceKind::Hardy, vec![8, 8]).unwrap();
    let tuple = ShiftTuple::new(model, 2).unwrap();
    let s = gen_vanishing_ideal_subspace(&tuple).unwrap();
    assert_eq!(s.dim(), 80);
}

fn z(p: usize) -> Vec<C64> {
    let mut v = vec![c(0.0); p + 1];
    v[p] = c(1.0);
    v
}

#[test]
fn tensor_generator_examples() {
    // ({z}, {z}) in Hardy F_(6,6): S = z1 z2 F, W_{1,2} = span{z1 z2}
    let model = SpaceModel::new(SpaceKind::Hardy, vec![6, 6]).unwrap();
    let tuple = ShiftTuple::new(model.clone(), 2).unwrap();
    let s = gen_tensor_invariant_subspace(&model, &[vec![z(1)], vec![z(1)]]).unwrap();
    assert_eq!(s.dim(), 36);
    let w = subspaces::wandering_subspace(&s, &tuple, &[0, 1]).unwrap();
    let z1z2 = model.grid().position(&MultiIndex::new(vec![1, 1]).unwrap()).unwrap();
    let expected = Subspace::coordinate(model.shared_grid(), &[z1z2]);
    assert!(subspaces::subspace_equal(&w, &expected, 1e-8).unwrap());

    // ({1}, {1}) → full space
    let s = gen_tensor_invariant_subspace(&model, &[vec![z(0)], vec![z(0)]]).unwrap();
    assert_eq!(s.dim(), model.size());

    // ({z − 1/2}, {1}) in Bergman F_(10,4) is doubly commuting
    let model = SpaceModel::new(SpaceKind::Bergman, vec![10, 4]).unwrap();
    let spec = CaseSpec {
        caps: vec![10, 4],
        recipe: SubspaceRecipe::Tensor {
            factors: vec![vec![vec![Scalar::Real(-0.5), Scalar::Real(1.0)]], vec![vec![Scalar::Real(1.0)]]],
        },
        ..CaseSpec::default()
    };
    let ctx = CaseContext::build(&spec).unwrap();
    assert_eq!(ctx.model.size(), model.size());
    assert!(ctx.restriction.check_doubly_commuting(1e-10).unwrap().pass);
}

#[test]
fn joint_suite_examples() {
    // Bergman (10,10), tensor ({z − 1/2}, {z²}), α = {1,2}
    let spec = CaseSpec {
        recipe: SubspaceRecipe::Tensor {
            factors: vec![
                vec![vec![Scalar::Real(-0.5), Scalar::Real(1.0)]],
                vec![vec![Scalar::Real(0.0), Scalar::Real(0.0), Scalar::Real(1.0)]],
            ],
        },
        ..CaseSpec::default()
    };
    let r = suites::run_joint_wandering(&[spec]).unwrap();
    assert!(r.pass, "{r:#?}");
    assert!(r.max_angle() <= 1e-8);

    // Dirichlet (8,8), full space, α = {1}: W = ker M_{z1}* = functions of z2
    let spec = CaseSpec { space: SpaceKind::Dirichlet, caps: vec![8, 8], alpha: vec![1], ..CaseSpec::default() };
    let r = suites::run_joint_wandering(std::slice::from_ref(&spec)).unwrap();
    assert!(r.pass, "{r:#?}");
    let ctx = CaseContext::build(&spec).unwrap();
    let w = subspaces::wandering_subspace(&ctx.subspace, &ctx.tuple, &[0]).unwrap();
    let kernel = Subspace::coordinate(ctx.model.shared_grid(), &ctx.model.grid().positions_where(|k| k.as_slice()[0] == 0));
    assert!(subspaces::subspace_equal(&w, &kernel, 1e-8).unwrap());

    // Hardy (5,5,5), tensor subspace, α = {1,3}
    let spec = CaseSpec {
        space: SpaceKind::Hardy,
        n: 3,
        caps: vec![5, 5, 5],
        alpha: vec![1, 3],
        recipe: SubspaceRecipe::Tensor {
            factors: vec![
                vec![vec![Scalar::Real(-0.5), Scalar::Real(1.0)]],
                vec![vec![Scalar::Real(0.0), Scalar::Real(1.0)]],
                vec![vec![Scalar::Real(0.0), Scalar::Real(0.0), Scalar::Real(1.0)]],
            ],
        },
        ..CaseSpec::default()
    };
    let r = suites::run_joint_wandering(&[spec]).unwrap();
    assert!(r.pass, "{r:#?}");
    let identities: Vec<_> = r.cases[0].checks.iter().filter(|c| c.name.starts_with("[W")).collect();
    assert_eq!(identities.len(), 2);
    assert!(identities.iter().all(|c| c.pass));
}

#[test]
fn converse_suite_examples() {
    let tol = Tolerances::default();
    // coordinate shifts on the Bergman bidisc: condition (b) at 1e−12
    let ctx = CaseContext::build(&CaseSpec::default()).unwrap();
    for (i, j) in [(0, 1), (1, 0)] {
        assert!(ctx.restriction.modulus_residual(i, j).unwrap() <= 1e-12);
    }

    // tensor subspace in the Dirichlet space: (a) and (b) pass; the
    // vanishing-ideal probe fails (a) with a large commutator
    let cases = suites::default_tensor_cases(&SpaceKind::Dirichlet, &[6, 6]);
    let r = suites::run_converse(&cases[1..]).unwrap();
    assert!(r.pass, "{r:#?}");
    let forward = &r.cases[0];
    assert_eq!(forward.artifacts["condition_a"], true);
    assert_eq!(forward.artifacts["condition_b"], true);
    let probe = r.cases.last().unwrap();
    assert!(probe.label.contains("probe"));

    let hardy = suites::default_tensor_cases(&SpaceKind::Hardy, &[6, 6]);
    let r = suites::run_converse(&hardy[..1]).unwrap();
    let probe = r.cases.last().unwrap();
    assert_eq!(probe.artifacts["condition_a"], false);
    assert!(probe.artifacts["doubly_commuting_residual"].as_f64().unwrap() > 0.1);
    let _ = tol;
}

#[test]
fn beurling_examples() {
    let tol = Tolerances::default();
    // θ = 1 in the Hardy space: S = F_d, W = constants
    let r = suites::run_beurling_1d(&SpaceKind::Hardy, &[c(1.0)], 10, &tol).unwrap();
    assert!(r.pass);
    assert_eq!(r.cases[0].artifacts["subspace_dim"], 11);
    assert_eq!(r.cases[0].artifacts["wandering_basis"][0][0], serde_json::json!([1.0, 0.0]));

    // θ = z − 1/2 in the Bergman space, d = 12
    let r = suites::run_beurling_1d(&SpaceKind::Bergman, &[c(-0.5), c(1.0)], 12, &tol).unwrap();
    assert!(r.pass, "{r:#?}");
    assert!(r.cases[0].artifacts["wandering_dim"].as_u64().unwrap() >= 1);
}
