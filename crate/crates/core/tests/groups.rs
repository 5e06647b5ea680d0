use num_bigint::BigUint;

use monodromy::arith::{build_algebra, splitting_data};
use monodromy::gassner::GassnerContext;
use monodromy::group::{
    bsgs_order, enumerate_closure, monodromy_group, radical_containment, ActionKind, StabilizerChain,
};

fn context(p: u64, l: u64, k: &[u64]) -> GassnerContext {
    let alg = build_algebra(&splitting_data(p, l).unwrap()).unwrap();
    GassnerContext::new(alg, k.to_vec()).unwrap()
}

#[test]
fn split_degenerate_radical_outcome() {
    let ctx = context(11, 5, &[1, 1, 3]);
    let mg = monodromy_group(&ctx).unwrap();
    assert_eq!(mg.action, ActionKind::SplitPair);
    let chain = StabilizerChain::build(&mg.group, 0).unwrap();
    let closure = enumerate_closure(&mg.group, 100_000).order().unwrap();
    assert_eq!(chain.order(), BigUint::from(closure));
    let r = radical_containment(&ctx, &mg, &chain, 10_000, 0).unwrap();
    assert!(r.exhaustive);
    assert_eq!(r.tested, 121);
    // observed: the whole pair radical lies in the image (no graph pattern)
    assert!(r.all_contained);
    assert_eq!(r.graph_pattern, Some(false));
    assert_eq!(chain.order(), BigUint::from(605u32));
}

#[test]
fn unitary_degenerate_contains_radical() {
    let ctx = context(5, 3, &[1, 1, 2, 2]);
    let mg = monodromy_group(&ctx).unwrap();
    let chain = StabilizerChain::build(&mg.group, 1).unwrap();
    let r = radical_containment(&ctx, &mg, &chain, 10_000, 0).unwrap();
    assert!(r.all_contained);
    assert_eq!(r.tested, 625);
}

#[test]
fn order_independent_of_seed_and_generator_order() {
    for (p, l, k) in [(5u64, 3u64, vec![1u64, 2, 2]), (11, 5, vec![1, 2, 3]), (7, 3, vec![1, 1, 1, 1])] {
        let ctx = context(p, l, &k);
        let mg = monodromy_group(&ctx).unwrap();
        let base = bsgs_order(&mg.group, 0).unwrap();
        let mut gens = mg.group.generators().to_vec();
        gens.reverse();
        let reversed = mg.group.with_generators(gens.clone()).unwrap();
        assert_eq!(bsgs_order(&reversed, 99).unwrap(), base);
        gens.push(gens[0].clone());
        let doubled = mg.group.with_generators(gens).unwrap();
        assert_eq!(bsgs_order(&doubled, 7).unwrap(), base);
    }
}

#[test]
fn membership_of_products() {
    let ctx = context(5, 3, &[1, 1, 1, 1]);
    let mg = monodromy_group(&ctx).unwrap();
    let chain = StabilizerChain::build(&mg.group, 2).unwrap();
    let f = mg.group.field();
    let g = mg.group.generators();
    let w = g[0].mul(f, &g[3]).mul(f, &g[5]).mul(f, &g[1]);
    assert!(chain.contains(&w));
    let summary = chain.summary();
    assert_eq!(summary.orbit_sizes.iter().map(|&x| x as u64).product::<u64>(), 1_134_000);
}
