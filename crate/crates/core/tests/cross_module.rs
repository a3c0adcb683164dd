//! Cross-module checks: frozen reference values, fast paths against the brute-force oracle,
//! and instance serialization.

use cornerkit::corner::{corner_tau_vertices, corner_vertices};
use cornerkit::instances::{builtin, gen_paper_2x4, gen_random, gen_sharpness, Instance, RandomKind, RandomSpec};
use cornerkit::knapsack::{check_theorem3, corner_vertex_in_p, ip_value, knapsack_corner};
use cornerkit::lattice::project_lattice;
use cornerkit::num::{ints, rat};
use cornerkit::oracle::{brute_corner_vertices, brute_ilp_opt, BoxSpec, CornerMode, Sense};
use cornerkit::sparsity::{bv_short_vectors, min_support_optimum, theorem5_report, DEFAULT_BOX_CAP};
use cornerkit::transference::{check_product_bound, check_theorem1};
use num_bigint::BigInt;
use num_traits::Zero;
use proptest::prelude::*;

#[test]
fn worked_example_values() {
    let inst = gen_paper_2x4();
    let ctx = inst.context().unwrap();
    let lat = project_lattice(&ctx).unwrap();
    assert_eq!(lat.determinant(), &BigInt::from(8));
    assert_eq!(lat.shift(), ints(&[1, 3]).as_slice());

    let cv = corner_vertices(&ctx).unwrap();
    let z = ints(&[0, 1, 1, 3]);
    assert_eq!(cv.lifted, vec![z.clone()]);

    let t1 = check_theorem1(&ctx, &z).unwrap();
    assert_eq!(
        (t1.r, t1.delta.clone(), t1.lhs.clone(), t1.rhs.clone()),
        (2, rat(10, 1), rat(20, 1), rat(20, 1))
    );
    assert!(t1.holds && t1.tight);

    let p = check_product_bound(&z, &ctx).unwrap();
    assert_eq!((p.product, p.rhs), (BigInt::from(8), rat(8, 1)));
}

#[test]
fn worked_example_sparsity_values() {
    let inst = gen_paper_2x4();
    let rep = theorem5_report(&ints(&[0, 1, 1, 3]), &inst.a).unwrap();
    assert_eq!((rep.s, rep.m, rep.rho.clone()), (3, 2, BigInt::from(1)));
    assert_eq!(rep.gram, BigInt::from(1109));
    assert_eq!(rep.lhs, rat(2, 1));
    assert!(rep.holds);

    let out = min_support_optimum(&inst.a, &inst.b, &vec![BigInt::zero(); 4], DEFAULT_BOX_CAP).unwrap();
    assert_eq!(out.report.z_star, ints(&[0, 1, 1, 3]));

    let bv = bv_short_vectors(&inst.a).unwrap();
    assert_eq!(bv.vectors, vec![ints(&[0, 3, -4, 4]), ints(&[5, -2, 2, -4])]);
    assert_eq!(bv.product, BigInt::from(20));
    assert!(bv.holds);
}

#[test]
fn sharpness_values() {
    let inst = gen_sharpness(3, 100).unwrap();
    assert_eq!(inst.weights(), ints(&[4, 402, 401]).as_slice());
    let rep = check_theorem3(inst.weights(), &inst.b[0]).unwrap();
    assert_eq!(rep.z_star, ints(&[1, 1, 1]));
    assert_eq!(
        (rep.r, rep.delta.clone(), rep.rhs.clone()),
        (2, rat(803, 4), rat(402, 1))
    );
    assert!(rep.strict && rep.holds && !rep.tight);
}

#[test]
fn worked_example_matches_oracle() {
    let inst = gen_paper_2x4();
    let brute = brute_corner_vertices(&inst.a, &inst.b, &CornerMode::Gamma(vec![0, 1]), None).unwrap();
    assert!(brute.contained);
    assert_eq!(brute.vertices, vec![ints(&[0, 1, 1, 3])]);
}

#[test]
fn builtin_instances_round_trip() {
    for name in ["paper2x4", "r1:5,3", "sharpness:4,10"] {
        let inst = builtin(name).unwrap().unwrap();
        let back = Instance::from_json(&inst.to_json()).unwrap();
        assert_eq!(back, inst, "{name}");
    }
}

fn small_general(seed: u64, n: usize, kind: RandomKind) -> Instance {
    let spec = RandomSpec {
        m: 2,
        n,
        entry_bound: 5,
        rhs_bound: 0,
        kind,
    };
    gen_random(&spec, seed).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_instances_round_trip(seed in 0u64..10_000, n in 3usize..6) {
        let inst = small_general(seed, n, RandomKind::General);
        prop_assert_eq!(Instance::from_json(&inst.to_json()).unwrap(), inst);
    }

    #[test]
    fn gamma_vertices_match_oracle(seed in 0u64..10_000, n in 3usize..5) {
        let inst = small_general(seed, n, RandomKind::General);
        let ctx = inst.context().unwrap();
        let mut fast = corner_vertices(&ctx).unwrap().lifted;
        fast.sort();
        let brute = brute_corner_vertices(&inst.a, &inst.b, &CornerMode::Gamma(ctx.gamma().to_vec()), None).unwrap();
        prop_assert!(brute.contained);
        prop_assert_eq!(fast, brute.vertices);
    }

    #[test]
    fn tau_vertices_match_oracle(seed in 0u64..10_000, n in 3usize..5) {
        let inst = small_general(seed, n, RandomKind::Degenerate);
        let tau = inst.tau.clone().unwrap();
        let mut fast = corner_tau_vertices(&inst.a, &inst.b, &tau).unwrap().lifted;
        fast.sort();
        let brute = brute_corner_vertices(&inst.a, &inst.b, &CornerMode::Tau(tau), None).unwrap();
        prop_assert_eq!(fast, brute.vertices);
    }

    #[test]
    fn knapsack_fast_paths_match_oracle(a in prop::collection::vec(1i64..16, 2..5), b in 0i64..60, seed in 0u64..1000) {
        let a = ints(&a);
        let b = BigInt::from(b);
        prop_assume!(corner_vertex_in_p(&a, &b).is_ok());
        let inst = Instance::knapsack(a.clone(), b.clone());
        let z = corner_vertex_in_p(&a, &b).unwrap();
        let brute = brute_corner_vertices(&inst.a, &inst.b, &CornerMode::Gamma(vec![0]), None).unwrap();
        let mut fast = knapsack_corner(&a, &b).unwrap().lifted;
        fast.sort();
        prop_assert_eq!(&fast, &brute.vertices);
        prop_assert!(fast.contains(&z));

        let c: Vec<BigInt> = a.iter().enumerate().map(|(i, w)| w * BigInt::from(1 + (seed + i as u64) % 3)).collect();
        let upper: Vec<BigInt> = a.iter().map(|w| &b / w).collect();
        let bx = BoxSpec::new(vec![BigInt::zero(); a.len()], upper, 2, 2).unwrap();
        let opt = brute_ilp_opt(&inst.a, &inst.b, &c, Sense::Min, &bx).unwrap();
        let ip = ip_value(&c, &a, &b).unwrap();
        prop_assert_eq!(ip.value, opt.value);
        prop_assert_eq!(Some(&ip.argmin), opt.argset.first());
    }
}
