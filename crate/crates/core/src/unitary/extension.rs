//! Extension matrices
//!
//! ```text
//! T(alpha, lambda) = [ 1  bar(alpha)^T  lambda ]
//!                    [ 0  I             alpha  ]
//!                    [ 0  0             1      ]
//! ```
//!
//! of size `m = len(alpha) + 2`. They multiply like a Heisenberg group:
//! `T(a, l) T(b, m) = T(a + b, l + m + sum bar(a_i) b_i)`. Unitarity is
//! checked against the hermitian Gram matrix with `h(b_0, b_{m-1}) = 1`,
//! `b_0, b_{m-1}` isotropic, and `h(b_i, b_i) = -1` for `0 < i < m - 1`; it
//! amounts to `lambda + bar(lambda) = sum alpha_i bar(alpha_i)`. With
//! `h(b_i, b_i) = +1` no matrix of this shape with `alpha != 0` is an
//! isometry.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::arith::{AlgElem, Case, InvolutiveAlgebra};
use crate::error::{Error, Result};
use crate::linalg::AlgMatrix;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionMatrix {
    pub alpha: Vec<AlgElem>,
    pub lambda: AlgElem,
}

impl ExtensionMatrix {
    pub fn dim(&self) -> usize {
        self.alpha.len() + 2
    }

    pub fn matrix(&self, alg: &InvolutiveAlgebra) -> AlgMatrix {
        let m = self.dim();
        let mut t = AlgMatrix::identity(alg, m);
        for (i, &a) in self.alpha.iter().enumerate() {
            t.set(0, i + 1, alg.involve(a));
            t.set(i + 1, m - 1, a);
        }
        t.set(0, m - 1, self.lambda);
        t
    }

    /// The inverse as displayed with top-right entry `1 - lambda`.
    pub fn displayed_inverse(&self, alg: &InvolutiveAlgebra) -> AlgMatrix {
        let neg = ExtensionMatrix {
            alpha: self.alpha.iter().map(|&a| alg.neg(a)).collect(),
            lambda: alg.sub(alg.one(), self.lambda),
        };
        neg.matrix(alg)
    }
}

/// `sum bar(a_i) b_i`.
fn dot(alg: &InvolutiveAlgebra, a: &[AlgElem], b: &[AlgElem]) -> AlgElem {
    a.iter()
        .zip(b)
        .fold(alg.zero(), |acc, (&x, &y)| alg.add(acc, alg.mul(alg.involve(x), y)))
}

/// Gram matrix of the model hermitian space of dimension `m`.
pub fn model_gram(alg: &InvolutiveAlgebra, m: usize) -> AlgMatrix {
    let mut j = AlgMatrix::zeros(alg, m, m);
    j.set(0, m - 1, alg.one());
    j.set(m - 1, 0, alg.one());
    for i in 1..m - 1 {
        j.set(i, i, alg.neg(alg.one()));
    }
    j
}

/// Least element `eta` (in code order) with `xi bar(xi) / 4 + eta bar(eta) = 1`.
pub fn solve_norm_equation(alg: &InvolutiveAlgebra, xi: AlgElem) -> Result<AlgElem> {
    if alg.case() != Case::Unitary {
        return Err(Error::NotUnitary);
    }
    if !alg.is_imaginary(xi) {
        return Err(Error::Hypothesis("xi is not imaginary".into()));
    }
    let quarter = alg.inv(alg.from_int(4))?;
    let target = alg.sub(alg.one(), alg.mul(alg.norm(xi), quarter));
    alg.elements()
        .find(|&eta| alg.norm(eta) == target)
        .ok_or_else(|| Error::NoSolution(format!("no element of norm {target:?}")))
}

/// Table `code -> least element of that norm` over the fixed field.
fn norm_preimages(alg: &InvolutiveAlgebra) -> std::collections::HashMap<AlgElem, AlgElem> {
    let mut table = std::collections::HashMap::new();
    for x in alg.elements() {
        table.entry(alg.norm(x)).or_insert(x);
    }
    table
}

#[derive(Debug, Clone, Default, Serialize)]
pub struct ExtensionReport {
    pub m: usize,
    pub trials: usize,
    /// `[T_1, T_2]` is elementary with top-right `sum bar(a) b - a bar(b)`.
    pub commutator_identity: usize,
    pub entry_imaginary: usize,
    /// The commutator is trivial exactly when the entry vanishes.
    pub trivial_iff_zero: usize,
    pub unitary: usize,
    /// True inverse equals the displayed one (normalized `alpha`).
    pub inverse_display_matches: usize,
    /// `alpha = beta`, `lambda = mu` gives the identity.
    pub equal_pair_trivial: usize,
    /// Trials where the norm-equation construction was applicable (`m >= 4`).
    pub norm_trials: usize,
    /// `alpha = (xi/2, eta, 0, ..)`, `beta = (1, 0, ..)` yields `-xi`.
    pub norm_literal_gives_minus_xi: usize,
    /// The same with `xi` replaced by `-xi` yields `xi`.
    pub norm_realizes_xi: usize,
    pub findings: Vec<String>,
}

impl ExtensionReport {
    pub fn all_hold(&self) -> bool {
        let t = self.trials;
        self.commutator_identity == t
            && self.entry_imaginary == t
            && self.trivial_iff_zero == t
            && self.unitary == t
            && self.inverse_display_matches == t
            && self.equal_pair_trivial == t
            && self.norm_realizes_xi == self.norm_trials
    }
}

struct TrialOutcome {
    commutator_identity: bool,
    entry_imaginary: bool,
    trivial_iff_zero: bool,
    unitary: bool,
    inverse_display_matches: bool,
    equal_pair_trivial: bool,
    norm: Option<(bool, bool)>,
}

fn random_normalized(
    alg: &InvolutiveAlgebra,
    preimages: &std::collections::HashMap<AlgElem, AlgElem>,
    len: usize,
    rng: &mut ChaCha8Rng,
) -> Vec<AlgElem> {
    loop {
        let mut a: Vec<AlgElem> = (0..len).map(|_| alg.random(rng)).collect();
        let rest = dot(alg, &a[1..], &a[1..]);
        let target = alg.sub(alg.one(), rest);
        let base = preimages[&target];
        // multiply by a random norm-one element r / bar(r)
        let r = alg.random_unit(rng);
        let u = alg.div(r, alg.involve(r)).expect("unit");
        a[0] = alg.mul(base, u);
        if alg.norm(a[0]) == target {
            return a;
        }
    }
}

fn unitary_lambda(alg: &InvolutiveAlgebra, alpha: &[AlgElem], rng: &mut ChaCha8Rng) -> AlgElem {
    let half = alg.inv(alg.from_int(2)).expect("q odd");
    let s = dot(alg, alpha, alpha);
    alg.add(alg.mul(s, half), alg.random_imaginary(rng))
}

fn commutator(alg: &InvolutiveAlgebra, a: &AlgMatrix, b: &AlgMatrix) -> Result<AlgMatrix> {
    Ok(a.mul(alg, b)
        .mul(alg, &a.inverse(alg)?)
        .mul(alg, &b.inverse(alg)?))
}

fn run_trial(
    alg: &InvolutiveAlgebra,
    preimages: &std::collections::HashMap<AlgElem, AlgElem>,
    m: usize,
    rng: &mut ChaCha8Rng,
) -> Result<TrialOutcome> {
    let gram = model_gram(alg, m);
    let alpha = random_normalized(alg, preimages, m - 2, rng);
    let beta = random_normalized(alg, preimages, m - 2, rng);
    let t1 = ExtensionMatrix {
        lambda: unitary_lambda(alg, &alpha, rng),
        alpha: alpha.clone(),
    };
    let t2 = ExtensionMatrix {
        lambda: unitary_lambda(alg, &beta, rng),
        alpha: beta.clone(),
    };
    let (m1, m2) = (t1.matrix(alg), t2.matrix(alg));
    let entry = alg.sub(dot(alg, &alpha, &beta), dot(alg, &beta, &alpha));
    let c = commutator(alg, &m1, &m2)?;
    let mut expected = AlgMatrix::identity(alg, m);
    expected.set(0, m - 1, entry);
    let is_unitary = |x: &AlgMatrix| x.involve_transpose(alg).mul(alg, &gram).mul(alg, x) == gram;
    let equal = commutator(alg, &m1, &m1)?;

    let norm = if m >= 4 {
        let xi = alg.random_imaginary(rng);
        let realize = |target: AlgElem| -> Result<AlgElem> {
            let eta = solve_norm_equation(alg, target)?;
            let half = alg.inv(alg.from_int(2))?;
            let mut a = vec![alg.zero(); m - 2];
            a[0] = alg.mul(target, half);
            a[1] = eta;
            let mut b = vec![alg.zero(); m - 2];
            b[0] = alg.one();
            let ta = ExtensionMatrix {
                lambda: unitary_lambda(alg, &a, &mut ChaCha8Rng::seed_from_u64(0)),
                alpha: a,
            };
            let tb = ExtensionMatrix {
                lambda: unitary_lambda(alg, &b, &mut ChaCha8Rng::seed_from_u64(1)),
                alpha: b,
            };
            let c = commutator(alg, &ta.matrix(alg), &tb.matrix(alg))?;
            Ok(c.get(0, m - 1))
        };
        let literal = realize(xi)? == alg.neg(xi);
        let negated = realize(alg.neg(xi))? == xi;
        Some((literal, negated))
    } else {
        None
    };

    Ok(TrialOutcome {
        commutator_identity: c == expected,
        entry_imaginary: alg.is_imaginary(entry),
        trivial_iff_zero: c.is_identity(alg) == alg.is_zero(entry),
        unitary: is_unitary(&m1) && is_unitary(&m2),
        inverse_display_matches: m1.inverse(alg)? == t1.displayed_inverse(alg),
        equal_pair_trivial: equal.is_identity(alg),
        norm,
    })
}

/// Checks the inverse and commutator identities on random unitary extension
/// matrices of size `m`. Trials are independent and seeded by `(seed, index)`.
pub fn verify_extension_identities(
    alg: &InvolutiveAlgebra,
    m: usize,
    trials: usize,
    seed: u64,
) -> Result<ExtensionReport> {
    if alg.case() != Case::Unitary {
        return Err(Error::NotUnitary);
    }
    if m <= 2 {
        return Err(Error::Hypothesis("extension matrices need m > 2".into()));
    }
    let preimages = norm_preimages(alg);
    let outcomes = (0..trials)
        .into_par_iter()
        .map(|t| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(t as u64);
            run_trial(alg, &preimages, m, &mut rng)
        })
        .collect::<Result<Vec<_>>>()?;
    let mut r = ExtensionReport {
        m,
        trials,
        ..Default::default()
    };
    for o in &outcomes {
        r.commutator_identity += usize::from(o.commutator_identity);
        r.entry_imaginary += usize::from(o.entry_imaginary);
        r.trivial_iff_zero += usize::from(o.trivial_iff_zero);
        r.unitary += usize::from(o.unitary);
        r.inverse_display_matches += usize::from(o.inverse_display_matches);
        r.equal_pair_trivial += usize::from(o.equal_pair_trivial);
        if let Some((literal, negated)) = o.norm {
            r.norm_trials += 1;
            r.norm_literal_gives_minus_xi += usize::from(literal);
            r.norm_realizes_xi += usize::from(negated);
        }
    }
    if r.norm_literal_gives_minus_xi > 0 {
        r.findings.push(format!(
            "alpha = (xi/2, eta, 0, ..), beta = (1, 0, ..) gives commutator entry -xi in {}/{} trials; \
             substituting -xi realizes xi",
            r.norm_literal_gives_minus_xi, r.norm_trials
        ));
    }
    if r.inverse_display_matches < trials {
        r.findings.push(format!(
            "displayed inverse differs from the true inverse in {}/{} trials",
            trials - r.inverse_display_matches,
            trials
        ));
    }
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{build_algebra, splitting_data};

    fn f25() -> InvolutiveAlgebra {
        build_algebra(&splitting_data(5, 3).unwrap()).unwrap()
    }

    #[test]
    fn norm_equation_examples() {
        let alg = f25();
        assert_eq!(solve_norm_equation(&alg, alg.zero()).unwrap(), alg.one());
        // xi = 2x + 1 has digits (1, 2)
        let xi = alg.from_digits(&[1, 2]);
        assert!(alg.is_imaginary(xi));
        assert_eq!(solve_norm_equation(&alg, xi).unwrap(), alg.from_int(2));
        assert!(solve_norm_equation(&alg, alg.one()).is_err());
        let split = build_algebra(&splitting_data(11, 5).unwrap()).unwrap();
        assert_eq!(solve_norm_equation(&split, split.zero()), Err(Error::NotUnitary));
    }

    #[test]
    fn identities_hold_small() {
        let alg = f25();
        for m in [3, 4, 5] {
            let r = verify_extension_identities(&alg, m, 40, 7).unwrap();
            assert!(r.all_hold(), "{r:?}");
        }
        let r = verify_extension_identities(&alg, 4, 40, 7).unwrap();
        assert_eq!(r.norm_literal_gives_minus_xi, r.norm_trials);
    }

    #[test]
    fn heisenberg_product() {
        let alg = f25();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let a: Vec<AlgElem> = (0..3).map(|_| alg.random(&mut rng)).collect();
        let b: Vec<AlgElem> = (0..3).map(|_| alg.random(&mut rng)).collect();
        let (l, mu) = (alg.random(&mut rng), alg.random(&mut rng));
        let ta = ExtensionMatrix { alpha: a.clone(), lambda: l };
        let tb = ExtensionMatrix { alpha: b.clone(), lambda: mu };
        let prod = ExtensionMatrix {
            alpha: a.iter().zip(&b).map(|(&x, &y)| alg.add(x, y)).collect(),
            lambda: alg.add(alg.add(l, mu), dot(&alg, &a, &b)),
        };
        assert_eq!(ta.matrix(&alg).mul(&alg, &tb.matrix(&alg)), prod.matrix(&alg));
    }
}
