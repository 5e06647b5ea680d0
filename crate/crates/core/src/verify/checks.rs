//! The individual checks of a verification run.

use num_bigint::BigUint;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

use super::{parameters, Check, Expected, Record, VerificationConfig};
use crate::arith::{
    build_algebra, classify_by_factorization, splitting_data, AlgElem, Case, InvolutiveAlgebra,
    SplittingData,
};
use crate::braid::{BraidWord, Letter};
use crate::error::{Error, Result};
use crate::gassner::{
    determinant_subgroup, invariant_form, invariant_vectors, prop21_commutator, spin_span,
    GassnerContext, HermitianForm, KernelClosedForm, SpinMode,
};
use crate::group::{enumerate_closure, monodromy_group, radical_containment, StabilizerChain};
use crate::linalg::{proportional, AlgMatrix};
use crate::unitary::{expected_image, verify_extension_identities, ImageKind};

pub(super) struct State<'a> {
    config: &'a VerificationConfig,
    params: Value,
    sd: Result<SplittingData>,
    ctx: Result<GassnerContext>,
    form: Option<Result<HermitianForm>>,
}

impl<'a> State<'a> {
    pub(super) fn new(config: &'a VerificationConfig) -> Self {
        let sd = splitting_data(config.p, config.l);
        let ctx = sd
            .clone()
            .and_then(|sd| build_algebra(&sd))
            .and_then(|alg| GassnerContext::new(alg, config.kvec.clone()));
        State {
            config,
            params: parameters(config),
            sd,
            ctx,
            form: None,
        }
    }

    pub(super) fn run(&mut self, check: Check) -> Record {
        let name = check.name();
        let result = match check {
            Check::Splitting => self.splitting(),
            Check::Relations => self.relations(),
            Check::Form => self.form_check(),
            Check::Irreducibility => self.irreducibility(),
            Check::Prop21 => self.prop21(),
            Check::Extension => self.extension(),
            Check::Image => self.image(),
        };
        match result {
            Ok(mut r) => {
                r.name = name.into();
                r
            }
            Err(e) => Record::error(name, self.params.clone(), &e),
        }
    }

    fn ctx(&self) -> Result<&GassnerContext> {
        self.ctx.as_ref().map_err(Clone::clone)
    }

    fn form(&mut self) -> Result<HermitianForm> {
        if self.form.is_none() {
            let f = self.ctx().and_then(invariant_form);
            self.form = Some(f);
        }
        self.form.clone().expect("just set")
    }

    fn record(&self, expected: Expected, computed: Value, matched: bool, findings: Vec<String>) -> Record {
        Record {
            name: String::new(),
            parameters: self.params.clone(),
            expected,
            computed,
            matched,
            runtime_ms: 0,
            findings,
        }
    }

    fn skipped(&self, expected: Expected, reason: &str) -> Record {
        Record::skipped("", self.params.clone(), expected, reason)
    }

    fn splitting(&self) -> Result<Record> {
        let sd = self.sd.clone()?;
        let oracle = classify_by_factorization(sd.p, sd.l)?;
        let mut findings = Vec::new();
        if sd.disagrees_with_parity_rule() {
            findings.push(format!(
                "parity rule on (l-1)/f gives {:?}; factorization gives {:?}",
                sd.parity_case, sd.case
            ));
        }
        Ok(self.record(
            Expected {
                value: json!({ "case": oracle.case }),
                provenance: "oracle: factor degrees of Phi_l and of the real cyclotomic polynomial mod p"
                    .into(),
            },
            json!({
                "f": sd.f,
                "case": sd.case,
                "parity_case": sd.parity_case,
                "q": sd.q.to_string(),
            }),
            oracle.case == sd.case,
            findings,
        ))
    }

    fn relations(&self) -> Result<Record> {
        let ctx = self.ctx()?;
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed);
        let strands = ctx.strands();
        let n = ctx.n();
        let mut checked = 0usize;
        let mut failures = Vec::new();
        for sample in 0..self.config.relation_samples.max(1) {
            let mut slots: Vec<usize> = (0..strands).collect();
            if sample > 0 {
                slots.shuffle(&mut rng);
            }
            let eval = |letters: &[i64]| -> Result<(AlgMatrix, Vec<usize>)> {
                let w = BraidWord::new(
                    strands,
                    letters
                        .iter()
                        .map(|&x| {
                            if x >= 0 {
                                Letter::positive(x as usize)
                            } else {
                                Letter::negative((-x - 1) as usize)
                            }
                        })
                        .collect(),
                )?;
                let e = ctx.evaluate_word_at(&w, &slots)?;
                Ok((e.matrix, e.end))
            };
            for i in 0..n {
                let ii = i as i64;
                let mut compare = |label: String, a: &[i64], b: &[i64]| -> Result<()> {
                    checked += 1;
                    if eval(a)? != eval(b)? {
                        failures.push(format!("{label} at start state {slots:?}"));
                    }
                    Ok(())
                };
                // sigma_i sigma_i^-1 = 1
                compare(format!("inverse {i}"), &[ii, -ii - 1], &[])?;
                if i + 1 < n {
                    compare(
                        format!("braid {i} {}", i + 1),
                        &[ii, ii + 1, ii],
                        &[ii + 1, ii, ii + 1],
                    )?;
                }
                for j in i + 2..n {
                    let jj = j as i64;
                    compare(format!("commute {i} {j}"), &[ii, jj], &[jj, ii])?;
                }
                checked += 1;
                if !square_matches(ctx, &slots, i)? {
                    failures.push(format!("square of {i} at start state {slots:?}"));
                }
            }
        }
        Ok(self.record(
            Expected {
                value: json!({ "failures": 0 }),
                provenance: "braid group presentation; closed form (a - ab, ab, 1 - a) of the square rows"
                    .into(),
            },
            json!({ "instances": checked, "failures": failures.len() }),
            failures.is_empty(),
            failures,
        ))
    }

    fn form_check(&mut self) -> Result<Record> {
        let form = self.form()?;
        let ctx = self.ctx()?;
        let alg = ctx.algebra();
        let expect_degenerate = ctx.product_is_one();
        let preserved = ctx
            .pure_generator_images()
            .iter()
            .all(|m| form.preserved_by(alg, m));
        let mut computed = json!({
            "degenerate": form.is_degenerate(),
            "rank": form.rank,
            "kernel_dim": form.kernel.len(),
            "solution_dim": form.solution_dim,
            "preserved_by_generators": preserved,
        });
        let mut matched = form.is_degenerate() == expect_degenerate
            && form.kernel.len() == usize::from(expect_degenerate)
            && form.solution_dim == alg.fixed_prime_dim()
            && preserved;
        let mut findings = Vec::new();
        if let Some(v) = form.kernel_vector() {
            let closed = KernelClosedForm::evaluate(ctx, v);
            let inv = invariant_vectors(ctx);
            let is_line = inv.len() == 1 && proportional(alg, &inv[0], v);
            computed["kernel_closed_form"] =
                json!({ "inclusive": closed.inclusive, "exclusive": closed.exclusive });
            computed["kernel_is_invariant_line"] = json!(is_line);
            matched &= is_line;
            if !closed.inclusive {
                findings.push("kernel is not sum (1 - t_0 .. t_i) eps_i".into());
            }
        }
        Ok(self.record(
            Expected {
                value: json!({
                    "degenerate": expect_degenerate,
                    "kernel_dim": usize::from(expect_degenerate),
                    "solution_dim": alg.fixed_prime_dim(),
                }),
                provenance: "degenerate iff k_0 + .. + k_n = 0 mod l; unique up to fixed-field scalars"
                    .into(),
            },
            computed,
            matched,
            findings,
        ))
    }

    fn irreducibility(&mut self) -> Result<Record> {
        let form = self.form()?;
        let ctx = self.ctx()?;
        let alg = ctx.algebra();
        let n = ctx.n();
        let mut rng = ChaCha8Rng::seed_from_u64(self.config.seed);
        let l = alg.l();
        let k = ctx.kvec();
        let adjacent_not_inverse = k.windows(2).any(|w| (w[0] + w[1]) % l != 0);
        let dets = determinant_subgroup(ctx)?;
        let certified = dets.certifies_prime_field_irreducibility(
            alg.component_field().degree(),
            alg.case(),
        );
        let mut findings = Vec::new();
        let mut matched = !adjacent_not_inverse || dets.is_full_mu_l;
        let (expected, computed) = if let Some(v) = form.kernel_vector() {
            let s = spin_span(ctx, v, SpinMode::Algebra)?;
            matched &= s.dims.iter().all(|&d| d == 1);
            (
                json!({ "kernel_spin_dims": vec![1; s.dims.len()], "mu_l_generated": adjacent_not_inverse }),
                json!({ "kernel_spin_dims": s.dims, "mu_l_generated": dets.is_full_mu_l }),
            )
        } else {
            let mut vectors: Vec<Vec<AlgElem>> = (0..n).map(|i| unit(alg, n, i)).collect();
            vectors.push((0..n).map(|_| alg.random(&mut rng)).collect());
            let mut all_full = true;
            for v in &vectors {
                if v.iter().all(|&x| alg.is_zero(x)) {
                    continue;
                }
                let s = spin_span(ctx, v, SpinMode::Algebra)?;
                if !s.is_full() {
                    all_full = false;
                    findings.push(format!("spin of {:?} has dims {:?}", digits(alg, v), s.dims));
                }
            }
            let prime_full = spin_span(ctx, &vectors[0], SpinMode::PrimeField)?.is_full();
            matched &= all_full && (!certified || prime_full);
            (
                json!({
                    "algebra_spins_full": true,
                    "prime_field_spin_full": if certified { json!(true) } else { Value::Null },
                    "mu_l_generated": adjacent_not_inverse,
                }),
                json!({
                    "algebra_spins_full": all_full,
                    "prime_field_spin_full": prime_full,
                    "prime_field_certified": certified,
                    "mu_l_generated": dets.is_full_mu_l,
                    "determinant_exponents": dets.generator_exponents,
                }),
            )
        };
        Ok(self.record(
            Expected {
                value: expected,
                provenance: "irreducible iff the form is nondegenerate; determinants generate mu_l when some t_i t_(i+1) != 1"
                    .into(),
            },
            computed,
            matched,
            findings,
        ))
    }

    fn prop21(&mut self) -> Result<Record> {
        let ctx = self.ctx()?;
        let expected = Expected {
            value: json!({ "nontrivial_transvection_along_kernel": true }),
            provenance: "stated: [sigma_0^2, Delta'^2] is a nontrivial transvection along the form kernel"
                .into(),
        };
        if !ctx.product_is_one() {
            return Ok(self.skipped(expected, "hypotheses unmet: t_0 .. t_n != 1"));
        }
        if ctx.n() < 3 {
            return Ok(self.skipped(expected, "hypotheses unmet: n < 3"));
        }
        let reports = prop21_commutator(ctx)?;
        let good = reports
            .iter()
            .any(|r| r.nontrivial && r.is_transvection && r.direction_spans_kernel);
        let mut findings = Vec::new();
        for r in &reports {
            let tag = format!("{:?}/{:?}", r.reading, r.convention);
            if !r.nontrivial {
                findings.push(format!("{tag}: commutator is trivial"));
            } else if r.is_transvection && !r.xi_eps2_matches {
                findings.push(format!(
                    "{tag}: xi(eps_2) = {:?}, expected t_1^-1 t_2^-1 (1 - t_1) = {:?}",
                    r.xi_eps2, r.xi_eps2_expected
                ));
            }
            if r.is_transvection && !r.fixes_hyperplane_1_to_n {
                findings.push(format!("{tag}: does not fix <eps_1, .., eps_(n-1)>"));
            }
        }
        Ok(self.record(
            expected,
            json!({
                "nontrivial_transvection_along_kernel": good,
                "readings": serde_json::to_value(&reports).expect("serializes"),
            }),
            good,
            findings,
        ))
    }

    fn extension(&self) -> Result<Record> {
        let ctx = self.ctx()?;
        let alg = ctx.algebra();
        let expected = Expected {
            value: json!({ "all_identities_hold": true }),
            provenance: "commutator of extension matrices is the transvection with entry sum bar(a_i) b_i - a_i bar(b_i)"
                .into(),
        };
        if alg.case() != Case::Unitary {
            return Ok(self.skipped(expected, "hypotheses unmet: split algebra"));
        }
        let rep = verify_extension_identities(
            alg,
            self.config.extension_dim,
            self.config.extension_trials,
            self.config.seed,
        )?;
        let ok = rep.all_hold();
        let findings = rep.findings.clone();
        let mut computed = serde_json::to_value(&rep).expect("serializes");
        computed["all_identities_hold"] = json!(ok);
        Ok(self.record(expected, computed, ok, findings))
    }

    fn image(&self) -> Result<Record> {
        let ctx = self.ctx()?;
        let sd = self.sd.clone()?;
        if ctx.product_is_one() {
            let expected = Expected {
                value: Value::Null,
                provenance: "none: the form is degenerate".into(),
            };
            let mut r = self.skipped(expected, "hypotheses unmet: k_0 + .. + k_n = 0 mod l");
            if let Ok(obs) = degenerate_observation(ctx, self.config) {
                r.findings.push(obs);
            }
            return Ok(r);
        }
        let exp = expected_image(&sd, ctx.kvec())?;
        let group_name = match exp.kind {
            ImageKind::SlU => format!("SlU({}, {})", exp.dim, exp.q),
            ImageKind::SlL => format!("SlL({}, {})", exp.dim, exp.q),
        };
        let expected = Expected {
            value: json!({ "group": group_name, "order": exp.order.to_string() }),
            provenance: format!(
                "order formula |{}({}, {})| * l",
                if exp.kind == ImageKind::SlU { "SU" } else { "SL" },
                exp.dim,
                exp.q
            ),
        };
        if !exp.hypotheses.satisfied() {
            return Ok(self.skipped(
                expected,
                "hypotheses unmet: n < l + 1 and no proper zero-sum subsequence",
            ));
        }
        if exp.order > self.config.order_cap {
            return Ok(self.skipped(expected, "overflow (expected order above cap)"));
        }
        let mg = monodromy_group(ctx)?;
        let chain = StabilizerChain::build(&mg.group, self.config.seed)?;
        let order = chain.order();
        let mut matched = order == exp.order;
        let mut findings = Vec::new();
        if mg.dual_determination == Some(false) {
            findings.push("second components not determined by the first through the form".into());
        }
        let mut computed = json!({
            "order": order.to_string(),
            "action": mg.action,
            "dual_determination": mg.dual_determination,
            "chain": chain.summary(),
            "certificate": exp.hypotheses.certificate,
        });
        if order <= BigUint::from(self.config.closure_cap) {
            let closure = enumerate_closure(&mg.group, self.config.closure_cap)
                .order()
                .ok_or_else(|| Error::Engine("closure exceeded its cap".into()))?;
            computed["closure_order"] = json!(closure.to_string());
            matched &= BigUint::from(closure) == order;
        }
        Ok(self.record(expected, computed, matched, findings))
    }
}

fn unit(alg: &InvolutiveAlgebra, n: usize, i: usize) -> Vec<AlgElem> {
    let mut v = vec![alg.zero(); n];
    v[i] = alg.one();
    v
}

fn digits(alg: &InvolutiveAlgebra, v: &[AlgElem]) -> Vec<Vec<u64>> {
    v.iter().map(|&x| alg.to_digits(x)).collect()
}

/// Identity except row `i`, which is `(a - ab, ab, 1 - a)` on columns
/// `i-1, i, i+1` (truncated), `a`, `b` the colors at positions `i`, `i+1`.
fn square_matches(ctx: &GassnerContext, slots: &[usize], i: usize) -> Result<bool> {
    let alg = ctx.algebra();
    let n = ctx.n();
    let w = BraidWord::new(ctx.strands(), vec![Letter::positive(i); 2])?;
    let e = ctx.evaluate_word_at(&w, slots)?;
    let a = ctx.colors()[slots[i]];
    let b = ctx.colors()[slots[i + 1]];
    let ab = alg.mul(a, b);
    let mut expected = AlgMatrix::identity(alg, n);
    if i > 0 {
        expected.set(i, i - 1, alg.sub(a, ab));
    }
    expected.set(i, i, ab);
    if i + 1 < n {
        expected.set(i, i + 1, alg.sub(alg.one(), a));
    }
    Ok(e.matrix == expected && e.end == slots)
}

fn degenerate_observation(ctx: &GassnerContext, config: &VerificationConfig) -> Result<String> {
    let mg = monodromy_group(ctx)?;
    let chain = StabilizerChain::build(&mg.group, config.seed)?;
    let rc = radical_containment(ctx, &mg, &chain, config.radical_cap, config.seed)?;
    Ok(format!(
        "observed: order {}, radical containment {}",
        chain.order(),
        serde_json::to_string(&rc).expect("serializes")
    ))
}
