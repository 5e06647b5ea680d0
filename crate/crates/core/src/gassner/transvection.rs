//! Transvection recognition and the commutator `[sigma_0^2, Delta'^2]`.

use serde::Serialize;

use super::form::{invariant_form, KernelClosedForm};
use super::GassnerContext;
use crate::arith::{AlgElem, Fe, InvolutiveAlgebra};
use crate::braid::{half_twist, BraidWord, Letter};
use crate::error::{Error, Result};
use crate::linalg::{proportional, AlgMatrix};

/// `x -> x + xi(x) v`, i.e. `T = 1 + v xi^T` with `xi(v) = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transvection {
    pub direction: Vec<AlgElem>,
    /// Row vector of `xi` relative to `direction`.
    pub functional: Vec<AlgElem>,
    pub matrix: AlgMatrix,
}

impl Transvection {
    /// Re-expresses the functional relative to another spanning vector `w`
    /// of the same line; `None` when `w` is not proportional.
    pub fn functional_for(&self, alg: &InvolutiveAlgebra, w: &[AlgElem]) -> Option<Vec<AlgElem>> {
        // v = c w, so v xi^T = w (c xi)^T
        let i = (0..w.len()).find(|&i| alg.is_unit(w[i]))?;
        let c = alg.div(self.direction[i], w[i]).ok()?;
        let rescaled: Vec<AlgElem> = w.iter().map(|&x| alg.mul(c, x)).collect();
        if rescaled != self.direction {
            return None;
        }
        Some(self.functional.iter().map(|&x| alg.mul(c, x)).collect())
    }
}

/// Returns the transvection data when `M - 1` has rank one and squares to
/// zero in every component.
pub fn is_transvection(alg: &InvolutiveAlgebra, m: &AlgMatrix) -> Option<Transvection> {
    let n = m.rows();
    let f = alg.component_field();
    let d = m.sub(alg, &AlgMatrix::identity(alg, n));
    let mut dirs: Vec<Vec<Fe>> = Vec::new();
    let mut funcs: Vec<Vec<Fe>> = Vec::new();
    for comp in d.components(alg) {
        if comp.rank(f) != 1 || !comp.mul(f, &comp).is_zero() {
            return None;
        }
        let col = (0..n).find(|&j| (0..n).any(|i| comp.get(i, j) != 0))?;
        let v = comp.column(col);
        let r = v.iter().position(|&x| x != 0)?;
        let inv = f.inv(v[r])?;
        // normalize v so that its first nonzero entry is 1
        let v: Vec<Fe> = v.iter().map(|&x| f.mul(x, inv)).collect();
        let phi: Vec<Fe> = comp.row(r).to_vec();
        dirs.push(v);
        funcs.push(phi);
    }
    let gather = |parts: &[Vec<Fe>]| -> Vec<AlgElem> {
        (0..n)
            .map(|j| {
                let codes: Vec<Fe> = parts.iter().map(|p| p[j]).collect();
                alg.from_components(&codes)
            })
            .collect()
    };
    Some(Transvection {
        direction: gather(&dirs),
        functional: gather(&funcs),
        matrix: m.clone(),
    })
}

/// Reading of `Delta'` as a sub-braid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum HalfTwistReading {
    /// Half twist on strands `1..n` (generators `sigma_1 .. sigma_{n-1}`),
    /// the generators not involving strand 0.
    AvoidStrandZero,
    /// Half twist on all strands (generators `sigma_0 .. sigma_{n-1}`).
    Full,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CommutatorConvention {
    /// `a b a^-1 b^-1`.
    ABAinvBinv,
    /// `a^-1 b^-1 a b`.
    AinvBinvAB,
}

#[derive(Debug, Clone, Serialize)]
pub struct Prop21Report {
    pub reading: HalfTwistReading,
    pub convention: CommutatorConvention,
    pub word: String,
    pub nontrivial: bool,
    pub is_transvection: bool,
    /// Direction spans the radical of the invariant form.
    pub direction_spans_kernel: bool,
    /// `xi(eps_j)` for all `j`, relative to the kernel vector
    /// `sum (1 - t_0 .. t_i) eps_i`; empty when not a transvection along it.
    pub functional_digits: Vec<Vec<u64>>,
    /// `xi` vanishes on `eps_1 .. eps_{n-1}`.
    pub fixes_hyperplane_1_to_n: bool,
    /// `xi(eps_2)` as digits, when defined.
    pub xi_eps2: Option<Vec<u64>>,
    /// `t_1^-1 t_2^-1 (1 - t_1)` as digits.
    pub xi_eps2_expected: Vec<u64>,
    pub xi_eps2_matches: bool,
}

/// Evaluates `[sigma_0^2, Delta'^2]` under both readings of `Delta'` and
/// both commutator conventions.
pub fn prop21_commutator(ctx: &GassnerContext) -> Result<Vec<Prop21Report>> {
    let alg = ctx.algebra();
    let n = ctx.n();
    if !ctx.product_is_one() {
        return Err(Error::Hypothesis("t_0 .. t_n != 1".into()));
    }
    let t = ctx.colors();
    if !alg.is_unit(alg.sub(alg.one(), t[0])) {
        return Err(Error::Hypothesis("1 - t_0 is not a unit".into()));
    }
    if n < 3 {
        return Err(Error::Hypothesis("need n >= 3 so that eps_2 exists".into()));
    }
    let form = invariant_form(ctx)?;
    let kernel = form
        .kernel_vector()
        .ok_or_else(|| Error::Hypothesis("form radical is not a line".into()))?
        .to_vec();
    let (closed, _) = KernelClosedForm::candidates(ctx);
    let expected = alg.mul(
        alg.inv(alg.mul(t[1], t[2]))?,
        alg.sub(alg.one(), t[1]),
    );
    let a = BraidWord::new(ctx.strands(), vec![Letter::positive(0); 2])?;
    let mut reports = Vec::new();
    for reading in [HalfTwistReading::AvoidStrandZero, HalfTwistReading::Full] {
        let first = match reading {
            HalfTwistReading::AvoidStrandZero => 1,
            HalfTwistReading::Full => 0,
        };
        let b = half_twist(ctx.strands(), first, n - 1)?.pow(2);
        for convention in [CommutatorConvention::ABAinvBinv, CommutatorConvention::AinvBinvAB] {
            let word = match convention {
                CommutatorConvention::ABAinvBinv => BraidWord::commutator(&a, &b)?,
                CommutatorConvention::AinvBinvAB => {
                    BraidWord::commutator(&a.invert(), &b.invert())?
                }
            };
            let m = ctx.pure_matrix(&word)?;
            let nontrivial = !m.is_identity(alg);
            let tv = is_transvection(alg, &m);
            let direction_spans_kernel = tv
                .as_ref()
                .is_some_and(|tv| proportional(alg, &tv.direction, &kernel));
            let functional = tv.as_ref().and_then(|tv| tv.functional_for(alg, &closed));
            let xi_eps2 = functional.as_ref().map(|f| f[2]);
            reports.push(Prop21Report {
                reading,
                convention,
                word: word.to_string(),
                nontrivial,
                is_transvection: tv.is_some(),
                direction_spans_kernel,
                functional_digits: functional
                    .as_ref()
                    .map(|f| f.iter().map(|&x| alg.to_digits(x)).collect())
                    .unwrap_or_default(),
                fixes_hyperplane_1_to_n: functional
                    .as_ref()
                    .is_some_and(|f| f[1..].iter().all(|&x| alg.is_zero(x))),
                xi_eps2: xi_eps2.map(|x| alg.to_digits(x)),
                xi_eps2_expected: alg.to_digits(expected),
                xi_eps2_matches: xi_eps2 == Some(expected),
            });
        }
    }
    Ok(reports)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{build_algebra, splitting_data};

    #[test]
    fn recognizes_elementary_transvection() {
        let alg = build_algebra(&splitting_data(5, 3).unwrap()).unwrap();
        let id = AlgMatrix::identity(&alg, 3);
        assert!(is_transvection(&alg, &id).is_none());
        let mut e = id.clone();
        e.set(0, 1, alg.one());
        let tv = is_transvection(&alg, &e).unwrap();
        assert_eq!(tv.direction, vec![alg.one(), alg.zero(), alg.zero()]);
        assert_eq!(tv.functional, vec![alg.zero(), alg.one(), alg.zero()]);
    }

    #[test]
    fn squares_are_not_transvections_in_general() {
        let alg = build_algebra(&splitting_data(5, 3).unwrap()).unwrap();
        let ctx = GassnerContext::new(alg.clone(), vec![1, 1, 1, 1]).unwrap();
        for m in ctx.square_images() {
            assert!(is_transvection(&alg, &m).is_none());
            let d = m.sub(&alg, &AlgMatrix::identity(&alg, 3));
            assert_eq!(d.rank(&alg), Some(1));
        }
        // t_i t_{i+1} = 1 makes the square a transvection
        let ctx = GassnerContext::new(alg.clone(), vec![1, 2, 1, 2]).unwrap();
        for m in ctx.square_images() {
            assert!(is_transvection(&alg, &m).is_some());
        }
    }

    #[test]
    fn prop21_small_case() {
        let alg = build_algebra(&splitting_data(5, 3).unwrap()).unwrap();
        let ctx = GassnerContext::new(alg, vec![1, 1, 2, 2]).unwrap();
        let reports = prop21_commutator(&ctx).unwrap();
        let main = &reports[0];
        assert!(main.nontrivial);
        assert!(main.is_transvection);
        assert!(main.direction_spans_kernel);
        let full = &reports[2];
        assert!(!full.nontrivial);
    }

    #[test]
    fn prop21_hypotheses() {
        let alg = build_algebra(&splitting_data(5, 3).unwrap()).unwrap();
        let ctx = GassnerContext::new(alg, vec![1, 1, 1, 1]).unwrap();
        assert!(matches!(prop21_commutator(&ctx), Err(Error::Hypothesis(_))));
    }
}
