//! Property tests for the module invariants.

use std::sync::Arc;

use num_bigint::BigInt;
use proptest::prelude::*;

use stabforge::charge::{
    chain_vertices, dominates, exp_charge, extract_abcd, hn_polygon_from_values, weak_positivity_report, CentralCharge,
    LiuCharge,
};
use stabforge::cohomology::{hyperplane_class, Basis, CurveFactor, GradedClass, Monomial, ProductSpace};
use stabforge::gaussian::{int, rat, GaussianRational, Rational};
use stabforge::group::{charge_invariance_check, close_group, scenario_builder, GroupKind, ProductGroupElement};
use stabforge::lattice::{
    descend_charge_to_quotient, effective_support_constant, even_point_lattice, identity_gram, restrict_kernel,
    LatticeMap, SupportConstant,
};
use stabforge::orbifold::{
    chart, classify_clusters, enumerate_z3_clusters, parameter_action, run_tower, ChartFamily, TangentSignature,
};
use stabforge::riemann_roch::{
    fiber_pushforward, grr_proj_pushforward, proj_pullback, reduced_reduction_check, FiberInclusionSpec, ProjectionSpec,
};

fn gq(re: (i64, i64), im: (i64, i64)) -> GaussianRational {
    GaussianRational::new(rat(re.0, re.1), rat(im.0, im.1))
}

fn coeff() -> impl Strategy<Value = GaussianRational> {
    ((-6i64..=6, 1i64..=4), (-6i64..=6, 1i64..=4)).prop_map(|(a, b)| gq(a, b))
}

/// Random sparse class on `space` with up to `terms` terms.
fn class_on(space: Arc<ProductSpace>, terms: usize) -> impl Strategy<Value = GradedClass> {
    let basis = space.basis();
    let n = basis.len();
    proptest::collection::vec((0..n, coeff()), 0..=terms).prop_map(move |ts| {
        GradedClass::from_terms(&space, ts.into_iter().map(|(i, c)| (basis[i].clone(), c))).unwrap()
    })
}

fn elliptic(n: usize) -> Arc<ProductSpace> {
    ProductSpace::elliptic(n).shared()
}

/// Even nilpotent class: terms of even positive degree only.
fn even_nilpotent(space: Arc<ProductSpace>) -> impl Strategy<Value = GradedClass> {
    let basis: Vec<Monomial> = space.basis().into_iter().filter(|m| m.degree() % 2 == 0 && m.degree() > 0).collect();
    let n = basis.len();
    proptest::collection::vec((0..n, coeff()), 0..=5).prop_map(move |ts| {
        GradedClass::from_terms(&space, ts.into_iter().map(|(i, c)| (basis[i].clone(), c))).unwrap()
    })
}

fn genera(max_len: usize) -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(0u32..=3, 2..=max_len)
}

fn sample_pair() -> impl Strategy<Value = (Rational, Rational)> {
    ((1i64..=5, 1i64..=4), (-5i64..=5, 1i64..=4)).prop_map(|((wn, wd), (bn, bd))| (rat(wn, wd), rat(bn, bd)))
}

// ---------------------------------------------------------------------------
// Cohomology ring.

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn wedge_is_graded_commutative(
        (u, v) in (1usize..=5).prop_flat_map(|n| (class_on(elliptic(n), 6), class_on(elliptic(n), 6)))
    ) {
        let mut swapped = GradedClass::zero(u.space());
        for p in u.degrees() {
            for q in v.degrees() {
                let t = v.degree_part(q).wedge(&u.degree_part(p)).unwrap();
                let t = if (p * q) % 2 == 1 { t.neg() } else { t };
                swapped = swapped.add(&t).unwrap();
            }
        }
        prop_assert_eq!(u.wedge(&v).unwrap(), swapped);
    }

    #[test]
    fn wedge_is_associative(
        (u, v, w) in (1usize..=5).prop_flat_map(|n| {
            let s = elliptic(n);
            (class_on(s.clone(), 5), class_on(s.clone(), 5), class_on(s, 5))
        })
    ) {
        let l = u.wedge(&v).unwrap().wedge(&w).unwrap();
        let r = u.wedge(&v.wedge(&w).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn normalize_is_idempotent(u in (1usize..=4).prop_flat_map(|n| class_on(elliptic(n), 8))) {
        let once = u.normalize();
        prop_assert_eq!(once.normalize(), once);
    }

    #[test]
    fn exp_is_multiplicative_on_even_classes(
        (u, v) in (1usize..=4).prop_flat_map(|n| (even_nilpotent(elliptic(n)), even_nilpotent(elliptic(n))))
    ) {
        let lhs = u.add(&v).unwrap().exp_nilpotent().unwrap();
        let rhs = u.exp_nilpotent().unwrap().wedge(&v.exp_nilpotent().unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn integration_pairing_is_perfect() {
    for n in 1..=3 {
        for space in [elliptic(n), ProductSpace::with_genera(&vec![2; n]).shared()] {
            let basis = space.basis();
            for a in &basis {
                let u = GradedClass::monomial(&space, a.clone(), GaussianRational::from_int(1));
                let partners: Vec<GaussianRational> = basis
                    .iter()
                    .map(|b| {
                        let v = GradedClass::monomial(&space, b.clone(), GaussianRational::from_int(1));
                        u.wedge(&v).unwrap().integrate()
                    })
                    .filter(|x| *x != GaussianRational::from_int(0))
                    .collect();
                assert_eq!(partners.len(), 1, "{a}");
                assert!(partners[0] == GaussianRational::from_int(1) || partners[0] == GaussianRational::from_int(-1));
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Riemann-Roch transport.

#[test]
fn projection_formula_exhaustive() {
    for gs in [vec![1, 1], vec![0, 2], vec![1, 0, 2], vec![2, 1, 1]] {
        let ambient = ProductSpace::with_genera(&gs).shared();
        for removed in [vec![0], vec![gs.len() - 1]] {
            let spec = ProjectionSpec::new(&ambient, &removed).unwrap();
            for vm in ambient.basis() {
                let v = GradedClass::monomial(&ambient, vm, GaussianRational::from_int(1));
                let pv = grr_proj_pushforward(&v, &spec).unwrap();
                for wm in spec.base.basis() {
                    let w = GradedClass::monomial(&spec.base, wm, GaussianRational::from_int(1));
                    let lhs = grr_proj_pushforward(&v.wedge(&proj_pullback(&w, &spec).unwrap()).unwrap(), &spec).unwrap();
                    assert_eq!(lhs, pv.wedge(&w).unwrap());
                }
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn pushforwards_compose(
        (gs, v) in proptest::collection::vec(0u32..=3, 3..=4).prop_flat_map(|gs| {
            let s = ProductSpace::with_genera(&gs).shared();
            (Just(gs), class_on(s, 8))
        }),
        pick in any::<prop::sample::Index>(),
    ) {
        let ambient = v.space().clone();
        let n = gs.len();
        let a = pick.index(n - 1);
        let b = n - 1;
        let both = ProjectionSpec::new(&ambient, &[a, b]).unwrap();
        let first = ProjectionSpec::new(&ambient, &[b]).unwrap();
        let second = ProjectionSpec::new(&first.base, &[a]).unwrap();
        let stepwise = grr_proj_pushforward(&grr_proj_pushforward(&v, &first).unwrap(), &second).unwrap();
        prop_assert_eq!(stepwise, grr_proj_pushforward(&v, &both).unwrap());
    }

    #[test]
    fn pushforward_of_fiber_class_is_identity(
        (gs, v) in genera(4).prop_flat_map(|gs| {
            let base = ProductSpace::with_genera(&gs[..gs.len() - 1]).shared();
            (Just(gs), class_on(base, 8))
        })
    ) {
        let ambient = ProductSpace::with_genera(&gs).shared();
        let spec = FiberInclusionSpec::new(&ambient, &[gs.len() - 1]).unwrap();
        let back = grr_proj_pushforward(&fiber_pushforward(&v, &spec).unwrap(), &spec.as_projection().unwrap()).unwrap();
        prop_assert_eq!(back, v);
    }

    #[test]
    fn reduced_reduction_for_random_genera(gs in genera(4), k in 1usize..=2) {
        let ambient = ProductSpace::with_genera(&gs).shared();
        let k = k.min(gs.len() - 1);
        let collapsed: Vec<usize> = (gs.len() - k..gs.len()).collect();
        let r = reduced_reduction_check(&FiberInclusionSpec::new(&ambient, &collapsed).unwrap()).unwrap();
        prop_assert!(r.holds);
        prop_assert!(r.checked > 0);
    }
}

// ---------------------------------------------------------------------------
// Central charges.

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn charges_are_linear(
        (u, v) in (1usize..=3).prop_flat_map(|n| (class_on(elliptic(n + 1), 6), class_on(elliptic(n + 1), 6))),
        (w, b) in sample_pair(),
        alpha in coeff(),
        beta in coeff(),
    ) {
        let space = u.space().clone();
        let z = exp_charge(&space, &w, &b).unwrap();
        let base = exp_charge(&space.without(&[space.dim() - 1]).shared(), &w, &b).unwrap();
        let liu = LiuCharge::new(extract_abcd(&base, &space.factors[space.dim() - 1]).unwrap(), w.clone(), w.clone(), b.clone()).unwrap();
        let combo = u.scale(&alpha).add(&v.scale(&beta)).unwrap();
        for charge in [CentralCharge::Kernel(z), CentralCharge::Liu(Box::new(liu))] {
            let lhs = charge.evaluate(&combo).unwrap();
            let rhs = &(&alpha * &charge.evaluate(&u).unwrap()) + &(&beta * &charge.evaluate(&v).unwrap());
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn skyscraper_has_charge_minus_one(k in 1usize..=6, (w, b) in sample_pair()) {
        let s = elliptic(k);
        let z = exp_charge(&s, &w, &b).unwrap().evaluate(&GradedClass::top(&s)).unwrap();
        prop_assert_eq!(z, GaussianRational::from_int(-1));
    }

    #[test]
    fn phase_sorted_polygon_dominates(
        values in proptest::collection::vec(((-8i64..=8), (0i64..=8)), 1..=6)
    ) {
        // charges of objects in one heart: Im > 0, or Im = 0 and Re < 0
        let zs: Vec<GaussianRational> = values
            .iter()
            .map(|&(a, b)| if b == 0 { (-a.abs().max(1), 0) } else { (a, b) })
            .map(|(a, b)| GaussianRational::new(int(a), int(b)))
            .collect();
        let p = hn_polygon_from_values(&zs.iter().map(|z| (z.clone(), 0)).collect::<Vec<_>>()).unwrap();
        let mut idx: Vec<usize> = (0..zs.len()).collect();
        loop {
            let order: Vec<GaussianRational> = idx.iter().map(|&i| zs[i].clone()).collect();
            prop_assert!(dominates(&p, &chain_vertices(&order)));
            if !next_permutation(&mut idx) {
                break;
            }
        }
    }
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len()).rev().find(|&j| v[j] > v[i - 1]).unwrap();
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

#[test]
fn abcd_identity_exhaustive() {
    for k in 1..=4 {
        for (w, b) in [(int(1), int(0)), (rat(1, 2), int(3))] {
            let base = exp_charge(&elliptic(k), &w, &b).unwrap();
            let f = extract_abcd(&base, &CurveFactor::elliptic(format!("E{}", k + 1))).unwrap();
            for m in f.space.basis() {
                let v = GradedClass::monomial(&f.space, m.clone(), GaussianRational::from_int(1));
                for n in [0, 1, 5] {
                    let (lhs, rhs) = f.check_at(&v, n).unwrap();
                    assert_eq!(lhs, rhs, "k = {k}, n = {n}, {m}");
                }
            }
        }
    }
}

#[test]
fn weak_positivity_on_structure_sheaves_and_twists() {
    let base = exp_charge(&elliptic(1), &int(1), &int(0)).unwrap();
    let f = extract_abcd(&base, &CurveFactor::elliptic("C")).unwrap();
    let s = f.space.clone();
    let mut classes = Vec::new();
    for m in -3..=3 {
        for n in -3..=3 {
            let l = GradedClass::point_on(&s, 0)
                .scale_rational(&int(m))
                .add(&GradedClass::point_on(&s, 1).scale_rational(&int(n)))
                .unwrap();
            let twist = if l.is_zero() { GradedClass::unit(&s) } else { l.exp_nilpotent().unwrap() };
            for (name, v) in [
                ("O", GradedClass::unit(&s)),
                ("O_X", GradedClass::point_on(&s, 1)),
                ("O_C", GradedClass::point_on(&s, 0)),
                ("O_pt", GradedClass::top(&s)),
            ] {
                classes.push((format!("{name}({m},{n})"), v.wedge(&twist).unwrap()));
            }
        }
    }
    let r = weak_positivity_report(&f, &classes).unwrap();
    let bad: Vec<&str> = r.entries.iter().filter(|e| !e.pass).map(|e| e.name.as_str()).collect();
    assert!(r.pass, "{bad:?}");
}

// ---------------------------------------------------------------------------
// Group actions.

fn small_scenarios() -> Vec<(GroupKind, usize)> {
    vec![
        (GroupKind::Kummer, 2),
        (GroupKind::Enriques, 1),
        (GroupKind::Enriques, 2),
        (GroupKind::Bielliptic { order: 2 }, 2),
        (GroupKind::Bielliptic { order: 3 }, 1),
        (GroupKind::CynkHulek { m: 2 }, 3),
        (GroupKind::CynkHulek { m: 3 }, 3),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn action_is_multiplicative(
        (which, u, v) in (0usize..7).prop_flat_map(|i| {
            let (kind, n) = small_scenarios()[i];
            let space = scenario_builder(kind, n).unwrap().space;
            (Just(i), class_on(space.clone(), 5), class_on(space, 5))
        })
    ) {
        let (kind, n) = small_scenarios()[which];
        let sc = scenario_builder(kind, n).unwrap();
        for g in sc.elements() {
            let lhs = g.act(&u.wedge(&v).unwrap()).unwrap();
            let rhs = g.act(&u).unwrap().wedge(&g.act(&v).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn exp_charges_are_invariant(which in 0usize..7, (w, b) in sample_pair()) {
        let (kind, n) = small_scenarios()[which];
        let sc = scenario_builder(kind, n).unwrap();
        let charge = CentralCharge::Kernel(exp_charge(&sc.space, &w, &b).unwrap());
        prop_assert!(charge_invariance_check(&charge, &sc.elements(), None).unwrap().holds);
    }
}

#[test]
fn action_composes_on_small_closures() {
    for (kind, n) in [
        (GroupKind::Enriques, 1),
        (GroupKind::Bielliptic { order: 3 }, 1),
        (GroupKind::CynkHulek { m: 3 }, 3),
        (GroupKind::Kummer, 2),
    ] {
        let sc = scenario_builder(kind, n).unwrap();
        let elements = close_group(&sc.space, &sc.elements(), 10_000).unwrap();
        let basis: Vec<GradedClass> = sc
            .space
            .basis()
            .into_iter()
            .map(|m| GradedClass::monomial(&sc.space, m, GaussianRational::from_int(1)))
            .collect();
        for g in &elements {
            for h in &elements {
                let gh: ProductGroupElement = g.compose(h);
                for v in &basis {
                    assert_eq!(gh.act(v).unwrap(), g.act(&h.act(v).unwrap()).unwrap(), "{}", kind.name());
                }
            }
        }
    }
}

#[test]
fn generators_fix_the_hyperplane_class() {
    for n in 1..=3 {
        for kind in [
            GroupKind::Kummer,
            GroupKind::Enriques,
            GroupKind::Bielliptic { order: 2 },
            GroupKind::Bielliptic { order: 3 },
        ] {
            let sc = scenario_builder(kind, n).unwrap();
            let h = hyperplane_class(&sc.space);
            for g in sc.elements() {
                assert_eq!(g.act(&h).unwrap(), h, "{} n = {n}", kind.name());
            }
        }
    }
    for m in [2, 3] {
        for n in 2..=4 {
            let sc = scenario_builder(GroupKind::CynkHulek { m }, n).unwrap();
            let h = hyperplane_class(&sc.space);
            assert!(sc.elements().iter().all(|g| g.act(&h).unwrap() == h));
        }
    }
}

// ---------------------------------------------------------------------------
// Lattices.

fn int_matrix(rows: usize, cols: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec(proptest::collection::vec(-9i64..=9, cols), rows)
}

/// Random unimodular `k × k` matrix as a product of elementary operations.
fn unimodular(k: usize) -> impl Strategy<Value = Vec<Vec<i64>>> {
    proptest::collection::vec((0..k, 0..k, -3i64..=3, any::<bool>()), 0..12).prop_map(move |ops| {
        let mut u: Vec<Vec<i64>> = (0..k).map(|i| (0..k).map(|j| (i == j) as i64).collect()).collect();
        for (i, j, c, swap) in ops {
            if swap {
                for row in &mut u {
                    row.swap(i, j);
                }
            } else if i != j {
                for row in &mut u {
                    row[j] += c * row[i];
                }
            }
        }
        u
    })
}

fn mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = b.first().map_or(0, |r| r.len());
    a.iter()
        .map(|r| (0..n).map(|j| r.iter().zip(b).map(|(x, row)| x * row[j]).sum()).collect())
        .collect()
}

fn lattice(m: &[Vec<i64>]) -> LatticeMap {
    let rows: Vec<&[i64]> = m.iter().map(|r| r.as_slice()).collect();
    LatticeMap::from_i64(&rows)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn hnf_is_idempotent_and_basis_independent(
        (m, u) in (1usize..=4, 1usize..=5).prop_flat_map(|(r, c)| (int_matrix(r, c), unimodular(c))),
        saturate in any::<bool>(),
    ) {
        let a = lattice(&m);
        let h = a.hermite_normal_form();
        prop_assert_eq!(h.hermite_normal_form().matrix, h.matrix.clone());
        let changed = lattice(&mul(&m, &u));
        prop_assert_eq!(changed.hermite_normal_form().matrix, h.matrix);
        let img = a.image_lattice(saturate);
        prop_assert_eq!(img.image_lattice(saturate).matrix, img.matrix.clone());
        prop_assert_eq!(changed.image_lattice(saturate).matrix, img.matrix);
    }

    #[test]
    fn support_constant_is_monotone(
        classes in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 2), 1..8),
        extra in proptest::collection::vec(proptest::collection::vec(-4i64..=4, 2), 0..4),
        (w, b) in sample_pair(),
    ) {
        let s = elliptic(1);
        let basis = vec![GradedClass::unit(&s), GradedClass::top(&s)];
        let charge = CentralCharge::Kernel(exp_charge(&s, &w, &b).unwrap());
        let big = |v: &Vec<Vec<i64>>| v.iter().map(|c| c.iter().map(|&x| BigInt::from(x)).collect()).collect::<Vec<Vec<BigInt>>>();
        let small = effective_support_constant(&charge, &basis, &identity_gram(2), &big(&classes)).unwrap();
        let all: Vec<Vec<i64>> = classes.iter().chain(&extra).cloned().collect();
        let large = effective_support_constant(&charge, &basis, &identity_gram(2), &big(&all)).unwrap();
        match (small.c_squared, large.c_squared) {
            (SupportConstant::Finite(a), SupportConstant::Finite(b)) => prop_assert!(a <= b),
            (SupportConstant::Infinite, l) => prop_assert_eq!(l, SupportConstant::Infinite),
            (SupportConstant::Finite(_), SupportConstant::Infinite) => {}
        }
    }

    #[test]
    fn nested_restriction_equals_combined(
        (n, (w, b)) in (3usize..=5, sample_pair()),
        pick in any::<prop::sample::Index>(),
    ) {
        let ambient = elliptic(n);
        let kernel = exp_charge(&ambient, &w, &b).unwrap().kernel;
        let a = pick.index(n - 1);
        let last = n - 1;
        let outer = FiberInclusionSpec::new(&ambient, &[last]).unwrap();
        let inner = FiberInclusionSpec::new(&outer.base, &[a]).unwrap();
        let both = FiberInclusionSpec::new(&ambient, &[a, last]).unwrap();
        let nested = restrict_kernel(&restrict_kernel(&kernel, &outer).unwrap(), &inner).unwrap();
        prop_assert_eq!(nested, restrict_kernel(&kernel, &both).unwrap());
    }
}

#[test]
fn descended_charge_matches_inclusion() {
    for (kind, n) in small_scenarios() {
        let sc = scenario_builder(kind, n).unwrap();
        let basis: Vec<GradedClass> = even_point_lattice(&sc.space).into_iter().map(|(_, c)| c).collect();
        let charge = CentralCharge::Kernel(exp_charge(&sc.space, &rat(1, 2), &int(3)).unwrap());
        let d = descend_charge_to_quotient(&charge, &sc.elements(), &basis).unwrap();
        for (j, class) in d.invariant_classes().iter().enumerate() {
            let mut e = vec![BigInt::from(0); d.values.len()];
            e[j] = BigInt::from(1);
            assert_eq!(d.evaluate(&e), charge.evaluate(class).unwrap());
            for g in sc.elements() {
                assert_eq!(&g.act(class).unwrap(), class);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Crepant resolution towers.

#[test]
fn tower_stage_invariants() {
    for (m, depth) in [(2, 8), (3, 6)] {
        let t = run_tower(m, depth).unwrap();
        for a in &t.audits {
            assert!(a.bkr.pass, "m = {m}, {} -> {}", a.from, a.to);
            for e in &a.even_strata {
                assert!(e.sl);
                classify_clusters(&e.signature).unwrap();
            }
            if m == 3 && a.from >= 2 {
                assert_eq!(a.bkr.computed, a.from + 2);
            }
        }
        for s in &t.stages {
            for x in &s.strata {
                let nz = x.signature.nonzero();
                let allowed: &[&[u32]] = if m == 2 { &[&[1]] } else { &[&[1], &[2, 2]] };
                assert!(allowed.contains(&nz.as_slice()), "{}", x.signature);
            }
        }
    }
}

proptest! {
    #[test]
    fn p_and_q_charts_are_mirror_images(n in 2usize..=10) {
        let sig = TangentSignature::padded(3, n, &[1, 2]).unwrap();
        let p = parameter_action(ChartFamily::PInf, &sig, 3).unwrap();
        let q = parameter_action(ChartFamily::QInf, &sig, 3).unwrap();
        prop_assert_eq!(p, q);
        prop_assert_eq!(chart(ChartFamily::PInf).swap_vars(0, 1).generators, chart(ChartFamily::QInf).generators);
    }

    #[test]
    fn cluster_enumeration_agrees_with_classification(n in 2usize..=8, planar in any::<bool>()) {
        let nonzero: &[u32] = if planar { &[2, 2, 2] } else { &[1, 2] };
        prop_assume!(n >= nonzero.len());
        let sig = TangentSignature::padded(3, n, nonzero).unwrap();
        let c = classify_clusters(&sig).unwrap();
        let e = enumerate_z3_clusters(&sig).unwrap();
        let max_dim = e.iter().map(|s| s.dimension).max().unwrap();
        prop_assert_eq!(max_dim, c.fiber_dim);
        if !planar {
            let families = e.iter().filter(|s| s.dimension == 1).count();
            prop_assert_eq!(families, 2);
            prop_assert!(c.points.iter().any(|p| p.family == ChartFamily::P0));
            prop_assert_eq!(e.iter().filter(|s| s.dimension == 0).count(), 1);
        }
    }
}

#[test]
fn point_basis_stays_put() {
    let s = ProductSpace::elliptic_power(2, "E").shared();
    let swap = ProductGroupElement::transposition(&s, 0, 1).unwrap();
    let pt = GradedClass::generator(&s, 0, Basis::Point);
    assert_eq!(swap.act(&pt).unwrap(), GradedClass::generator(&s, 1, Basis::Point));
}
