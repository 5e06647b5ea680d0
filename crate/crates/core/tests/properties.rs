use proptest::prelude::*;

use monodromy::arith::{build_algebra, splitting_data};
use monodromy::braid::{BraidWord, Letter};
use monodromy::gassner::{invariant_form, GassnerContext};

fn word_strategy(strands: usize, max_len: usize) -> impl Strategy<Value = Vec<Letter>> {
    prop::collection::vec((0..strands - 1, any::<bool>()), 0..max_len).prop_map(|v| {
        v.into_iter()
            .map(|(g, inv)| if inv { Letter::negative(g) } else { Letter::positive(g) })
            .collect()
    })
}

fn kvec_strategy(l: u64) -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1..l, 3..6)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Conjugates `w sigma_0^2 w^-1` of a generator square are pure and
    /// preserve the invariant form.
    #[test]
    fn pure_closures_preserve_form(k in kvec_strategy(5), letters in word_strategy(5, 12)) {
        let alg = build_algebra(&splitting_data(11, 5).unwrap()).unwrap();
        let strands = k.len();
        let letters: Vec<Letter> = letters.into_iter().filter(|x| x.generator + 1 < strands).collect();
        let ctx = GassnerContext::new(alg.clone(), k).unwrap();
        let w = BraidWord::new(strands, letters).unwrap();
        let sq = BraidWord::new(strands, vec![Letter::positive(0); 2]).unwrap();
        let pure = w.concat(&sq).unwrap().concat(&w.invert()).unwrap();
        let m = ctx.pure_matrix(&pure).unwrap();
        let form = invariant_form(&ctx).unwrap();
        prop_assert!(form.preserved_by(&alg, &m));
    }

    #[test]
    fn word_then_inverse_is_identity(k in kvec_strategy(3), letters in word_strategy(5, 16)) {
        let alg = build_algebra(&splitting_data(5, 3).unwrap()).unwrap();
        let strands = k.len();
        let letters: Vec<Letter> = letters.into_iter().filter(|x| x.generator + 1 < strands).collect();
        let ctx = GassnerContext::new(alg.clone(), k).unwrap();
        let w = BraidWord::new(strands, letters).unwrap();
        let e = ctx.evaluate_word(&w.concat(&w.invert()).unwrap()).unwrap();
        prop_assert!(e.matrix.is_identity(&alg));
        prop_assert!(e.is_pure());
    }
}
