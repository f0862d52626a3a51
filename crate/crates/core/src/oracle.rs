//! Seeded sampling and brute-force verification suites.
//!
//! Every algebraic identity the library relies on is tied to a runnable
//! check here: the FL-monoid axioms and residuation law on sampled
//! elements, the cover behaviour of discrete layers, the finite round trip
//! through decomposition and materialization, and the agreement of the
//! independently implemented primary/simplified forms of negation, layer
//! product, and within-layer order.
//!
//! All suites draw from a [`Sampler`] seeded through [`SampleConfig`]:
//! identical configuration yields identical sample streams and bit-identical
//! reports on every platform (the generator is ChaCha, not the OS RNG).
//! The suites are falsification tools — a pass is evidence, not proof, except
//! where the element pool is exhaustive.

use crate::bunch::{Bunch, LayerClass, Parity};
use crate::chain::{Chain, ChainElement};
use crate::decompose;
use crate::finite_chain::{self, FiniteChain};
use crate::ogroup::{CoverDirection, GroupElement, OGroupDesc};
use crate::report::ValidationReport;
use crate::{Error, Int, Rat, Result};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;

/// Configuration for all sampling suites.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SampleConfig {
    /// Coordinates are drawn uniformly from `[-coordinate_bound, coordinate_bound]`.
    pub coordinate_bound: i64,
    /// Number of sampling rounds per suite.
    pub samples: usize,
    /// Seed for the deterministic generator.
    pub seed: u64,
    /// Probability of drawing a dotted element when the layer allows one,
    /// as a rational `numerator / denominator` in `[0, 1]`.
    pub dotted_probability: (u32, u32),
}

impl Default for SampleConfig {
    fn default() -> Self {
        SampleConfig {
            coordinate_bound: 50,
            samples: 10_000,
            seed: 0,
            dotted_probability: (1, 2),
        }
    }
}

impl SampleConfig {
    pub fn new(seed: u64) -> Self {
        SampleConfig {
            seed,
            ..SampleConfig::default()
        }
    }

    pub fn with_samples(mut self, samples: usize) -> Self {
        self.samples = samples;
        self
    }

    pub fn with_bound(mut self, bound: i64) -> Self {
        self.coordinate_bound = bound;
        self
    }

    pub fn with_dotted_probability(mut self, numerator: u32, denominator: u32) -> Self {
        self.dotted_probability = (numerator, denominator);
        self
    }
}

/// Deterministic stream of valid chain elements of a bunch.
pub struct Sampler<'a> {
    bunch: &'a Bunch,
    rng: ChaCha8Rng,
    bound: i64,
    dotted: (u32, u32),
}

impl<'a> Sampler<'a> {
    pub fn new(bunch: &'a Bunch, cfg: &SampleConfig) -> Self {
        let (numer, denom) = cfg.dotted_probability;
        let denom = denom.max(1);
        Sampler {
            bunch,
            rng: ChaCha8Rng::seed_from_u64(cfg.seed),
            bound: cfg.coordinate_bound.max(1),
            dotted: (numer.min(denom), denom),
        }
    }

    /// Next element, over a uniformly chosen layer.
    pub fn next_element(&mut self) -> ChainElement {
        let layer = self.rng.gen_range(0..self.bunch.len());
        self.next_element_in_layer(layer)
    }

    /// Next element of the given layer.
    pub fn next_element_in_layer(&mut self, layer: usize) -> ChainElement {
        if self.bunch.class(layer) == LayerClass::I
            && self.rng.gen_ratio(self.dotted.0, self.dotted.1)
        {
            let value = self.next_subgroup_value(layer);
            ChainElement::new(layer, value, true)
        } else {
            self.next_undotted_in_layer(layer)
        }
    }

    /// Next undotted element of the given layer.
    pub fn next_undotted_in_layer(&mut self, layer: usize) -> ChainElement {
        let value = match self.bunch.group(layer) {
            OGroupDesc::Trivial => GroupElement::Trivial,
            OGroupDesc::IntLex(r) => {
                let coords: Vec<Int> = (0..*r)
                    .map(|_| Int::from(self.rng.gen_range(-self.bound..=self.bound)))
                    .collect();
                GroupElement::IntLex(coords)
            }
            OGroupDesc::Rational => {
                let numer = self.rng.gen_range(-self.bound..=self.bound);
                let denom = self.rng.gen_range(1..=self.bound);
                GroupElement::Rational(Rat::new(Int::from(numer), Int::from(denom)))
            }
        };
        ChainElement::new(layer, value, false)
    }

    /// A member of the designated subgroup of a class-`I` layer, drawn as a
    /// random integer combination of its generators.
    fn next_subgroup_value(&mut self, layer: usize) -> GroupElement {
        let group = self.bunch.group(layer);
        let h = self.bunch.subgroup(layer).expect("class I has a subgroup");
        let mut value = group.unit();
        for generator in h.generators() {
            let coefficient = self.rng.gen_range(-self.bound..=self.bound);
            let scaled = scale(&generator, coefficient);
            value = group
                .combine(&value, &scaled)
                .expect("generators live in the owner group");
        }
        value
    }
}

fn scale(x: &GroupElement, c: i64) -> GroupElement {
    let c = Int::from(c);
    match x {
        GroupElement::Trivial => GroupElement::Trivial,
        GroupElement::IntLex(v) => GroupElement::IntLex(v.iter().map(|a| a * &c).collect()),
        GroupElement::Rational(r) => GroupElement::Rational(r * Rat::from_integer(c)),
    }
}

/// The element at `position` of the sample stream for `(bunch, cfg)`.
pub fn sample_element(bunch: &Bunch, cfg: &SampleConfig, position: usize) -> ChainElement {
    let mut sampler = Sampler::new(bunch, cfg);
    for _ in 0..position {
        sampler.next_element();
    }
    sampler.next_element()
}

/// Collects at most one witness per named check across many sampling
/// rounds, then reports every name in a fixed order.
struct SuiteLog {
    names: Vec<&'static str>,
    failures: Vec<Option<String>>,
}

impl SuiteLog {
    fn new(names: &[&'static str]) -> Self {
        SuiteLog {
            names: names.to_vec(),
            failures: vec![None; names.len()],
        }
    }

    fn fail(&mut self, name: &str, witness: impl FnOnce() -> String) {
        let idx = self
            .names
            .iter()
            .position(|n| *n == name)
            .expect("check name registered");
        if self.failures[idx].is_none() {
            self.failures[idx] = Some(witness());
        }
    }

    fn into_report(self) -> ValidationReport {
        let mut report = ValidationReport::new();
        for (name, failure) in self.names.iter().zip(self.failures) {
            match failure {
                None => report.pass(*name),
                Some(witness) => report.fail(*name, witness),
            }
        }
        report
    }
}

const AXIOM_CHECKS: &[&str] = &[
    "unit",
    "commutativity",
    "associativity",
    "involution",
    "adjunction",
    "order-antisymmetry",
    "order-transitivity",
    "monotonicity",
    "parity",
];

/// Sampled verification of the chain axioms on the evaluator as given —
/// planted [`crate::chain::Mutation`]s are honoured, which is how the
/// suites' sensitivity is demonstrated.
pub fn check_axioms_with(chain: &Chain<'_>, cfg: &SampleConfig) -> ValidationReport {
    let mut log = SuiteLog::new(AXIOM_CHECKS);
    let mut sampler = Sampler::new(chain.bunch(), cfg);
    let (t, f) = chain.constants();

    // Parity facts are exact where possible; only the cover property of f
    // needs sampling and is folded into the loop below.
    let parity = chain.bunch().parity();
    match parity {
        Parity::Odd => {
            if f != t {
                log.fail("parity", || {
                    format!("odd chain with f = {} instead of t", chain.render(&f))
                });
            }
        }
        Parity::EvenNonIdempotent | Parity::EvenIdempotent => {
            let f_below = matches!(chain.compare(&f, &t), Ok(Ordering::Less));
            if !f_below {
                log.fail("parity", || {
                    format!("even chain but f = {} is not below t", chain.render(&f))
                });
            }
            match chain.mul(&f, &f) {
                Ok(ff) => {
                    let idempotent = ff == f;
                    let expected = parity == Parity::EvenIdempotent;
                    if idempotent != expected {
                        log.fail("parity", || {
                            format!(
                                "f.f = {} makes f {}, contradicting the {parity} parity",
                                chain.render(&ff),
                                if idempotent { "idempotent" } else { "non-idempotent" }
                            )
                        });
                    }
                }
                Err(e) => log.fail("parity", || e.to_string()),
            }
        }
    }

    for _ in 0..cfg.samples {
        let x = sampler.next_element();
        let y = sampler.next_element();
        let z = sampler.next_element();
        let render3 = |chain: &Chain<'_>| {
            format!(
                "{} {} {}",
                chain.render(&x),
                chain.render(&y),
                chain.render(&z)
            )
        };

        match chain.mul(&t, &x) {
            Ok(tx) => {
                if tx != x {
                    log.fail("unit", || {
                        format!("t.{} = {}", chain.render(&x), chain.render(&tx))
                    });
                }
            }
            Err(e) => log.fail("unit", || e.to_string()),
        }

        match (chain.mul(&x, &y), chain.mul(&y, &x)) {
            (Ok(xy), Ok(yx)) => {
                if xy != yx {
                    log.fail("commutativity", || {
                        format!(
                            "{}.{} = {} but reversed gives {}",
                            chain.render(&x),
                            chain.render(&y),
                            chain.render(&xy),
                            chain.render(&yx)
                        )
                    });
                }
                match (chain.mul(&xy, &z), chain.mul(&y, &z).and_then(|yz| chain.mul(&x, &yz))) {
                    (Ok(l), Ok(r)) => {
                        if l != r {
                            log.fail("associativity", || {
                                format!(
                                    "({}) grouped left gives {}, right gives {}",
                                    render3(chain),
                                    chain.render(&l),
                                    chain.render(&r)
                                )
                            });
                        }
                    }
                    (Err(e), _) | (_, Err(e)) => log.fail("associativity", || e.to_string()),
                }
            }
            (Err(e), _) | (_, Err(e)) => log.fail("commutativity", || e.to_string()),
        }

        match chain.negate(&x).and_then(|nx| chain.negate(&nx)) {
            Ok(nnx) => {
                if nnx != x {
                    log.fail("involution", || {
                        format!("{}'' = {}", chain.render(&x), chain.render(&nnx))
                    });
                }
            }
            Err(e) => log.fail("involution", || e.to_string()),
        }

        let adjunction = (|| -> Result<Option<String>> {
            let xy = chain.mul(&x, &y)?;
            let lhs = chain.le(&xy, &z)?;
            let rhs = chain.le(&y, &chain.residuum(&x, &z)?)?;
            Ok(if lhs == rhs {
                None
            } else {
                Some(format!(
                    "x.y <= z is {lhs} but y <= x->z is {rhs} for {}",
                    render3(chain)
                ))
            })
        })();
        match adjunction {
            Ok(None) => {}
            Ok(Some(witness)) => log.fail("adjunction", || witness),
            Err(e) => log.fail("adjunction", || e.to_string()),
        }

        match (chain.compare(&x, &y), chain.compare(&y, &x)) {
            (Ok(xy), Ok(yx)) => {
                if xy != yx.reverse() || (xy == Ordering::Equal) != (x == y) {
                    log.fail("order-antisymmetry", || {
                        format!(
                            "{} vs {} compares {xy:?} one way and {yx:?} the other",
                            chain.render(&x),
                            chain.render(&y)
                        )
                    });
                }
            }
            (Err(e), _) | (_, Err(e)) => log.fail("order-antisymmetry", || e.to_string()),
        }

        let transitive = (|| -> Result<bool> {
            Ok(!(chain.le(&x, &y)? && chain.le(&y, &z)?) || chain.le(&x, &z)?)
        })();
        match transitive {
            Ok(true) => {}
            Ok(false) => log.fail("order-transitivity", || render3(chain)),
            Err(e) => log.fail("order-transitivity", || e.to_string()),
        }

        let monotone = (|| -> Result<bool> {
            Ok(!chain.le(&x, &y)? || chain.le(&chain.mul(&x, &z)?, &chain.mul(&y, &z)?)?)
        })();
        match monotone {
            Ok(true) => {}
            Ok(false) => log.fail("monotonicity", || render3(chain)),
            Err(e) => log.fail("monotonicity", || e.to_string()),
        }

        // Even chains: nothing sits strictly between f and t.
        if parity != Parity::Odd {
            let between = (|| -> Result<bool> {
                Ok(chain.compare(&f, &x)? == Ordering::Less
                    && chain.compare(&x, &t)? == Ordering::Less)
            })();
            match between {
                Ok(false) => {}
                Ok(true) => log.fail("parity", || {
                    format!(
                        "{} lies strictly between f and t, so f is not the lower cover",
                        chain.render(&x)
                    )
                }),
                Err(e) => log.fail("parity", || e.to_string()),
            }
        }
    }
    log.into_report()
}

/// [`check_axioms_with`] on the unmutated evaluator of a bunch.
pub fn check_axioms(bunch: &Bunch, cfg: &SampleConfig) -> ValidationReport {
    check_axioms_with(&Chain::new(bunch), cfg)
}

/// Discrete layers step down uniformly: adding the lower cover of the unit
/// is the lower-cover map on the whole layer group.
///
/// Applies to class-`J` layers only; [`Error::NoClassJ`] when the bunch has
/// none.
pub fn check_cover_lemma(bunch: &Bunch, cfg: &SampleConfig) -> Result<ValidationReport> {
    let discrete = bunch.labels_of_class(LayerClass::J);
    if discrete.is_empty() {
        return Err(Error::NoClassJ);
    }
    let mut report = ValidationReport::new();
    let mut sampler = Sampler::new(bunch, cfg);
    for u in discrete {
        let group = bunch.group(u);
        let down = group.cover(&group.unit(), CoverDirection::Down)?;
        let name = format!("cover-step/{}", bunch.label(u));
        let mut witness = None;
        for _ in 0..cfg.samples {
            let x = sampler.next_undotted_in_layer(u).value;
            let via_product = group.combine(&x, &down)?;
            let via_cover = group.cover(&x, CoverDirection::Down)?;
            if via_product != via_cover {
                witness = Some(format!(
                    "{x} + {down} = {via_product} but the lower cover of {x} is {via_cover}"
                ));
                break;
            }
        }
        match witness {
            None => report.pass(name),
            Some(w) => report.fail(name, w),
        }
    }
    Ok(report)
}

/// Finite round trip: decompose the chain into a bunch, materialize the
/// bunch, and require the result to be the chain again.
pub fn check_roundtrip_finite(chain: &FiniteChain) -> ValidationReport {
    let mut report = ValidationReport::new();
    let (validation, _) = chain.validate();
    if !validation.all_passed() {
        report.absorb("input", validation);
        return report;
    }
    report.pass("input");
    let bunch = match decompose::decompose_chain(chain) {
        Ok(b) => b,
        Err(e) => {
            report.fail("decompose", e.to_string());
            return report;
        }
    };
    report.pass("decompose");
    let rebuilt = match finite_chain::materialize(&bunch) {
        Ok(c) => c,
        Err(e) => {
            report.fail("materialize", e.to_string());
            return report;
        }
    };
    report.pass("materialize");
    report.record("isomorphic", rebuilt.isomorphic(chain).is_some(), || {
        format!(
            "round trip changed the chain: {} elements became {}",
            chain.n(),
            rebuilt.n()
        )
    });
    report
}

const EQUIVALENCE_CHECKS: &[&str] = &[
    "negation-forms",
    "product-forms",
    "order-forms",
];

/// Negation by the collapsed three-case form: dotted inverse for undotted
/// subgroup members of class-`I` layers, cover-stepped inverse on class-`J`
/// layers, plain inverse otherwise.
fn negate_simplified(chain: &Chain<'_>, x: &ChainElement) -> Result<ChainElement> {
    let bunch = chain.bunch();
    let u = x.layer;
    let group = bunch.group(u);
    let inverse = group.inverse(&chain.underlying(x))?;
    let undotted_member = bunch.class(u) == LayerClass::I
        && !x.dotted
        && bunch
            .subgroup(u)
            .expect("class I has a subgroup")
            .contains(&x.value)?;
    Ok(if undotted_member {
        ChainElement::new(u, inverse, true)
    } else if bunch.class(u) == LayerClass::J {
        ChainElement::new(u, group.cover(&inverse, CoverDirection::Down)?, false)
    } else {
        ChainElement::new(u, inverse, false)
    })
}

/// Layer product by the explicit three-branch case split (class-`I` with
/// the combined value inside or outside the subgroup, and other classes).
fn layer_mul_primary(
    chain: &Chain<'_>,
    u: usize,
    x: &ChainElement,
    y: &ChainElement,
) -> Result<ChainElement> {
    let bunch = chain.bunch();
    let group = bunch.group(u);
    let combined = group.combine(&chain.underlying(x), &chain.underlying(y))?;
    if bunch.class(u) != LayerClass::I {
        return Ok(ChainElement::new(u, combined, false));
    }
    let h = bunch.subgroup(u).expect("class I has a subgroup");
    let both_members = !x.dotted && !y.dotted && h.contains(&x.value)? && h.contains(&y.value)?;
    if h.contains(&combined)? && !both_members {
        Ok(ChainElement::new(u, combined, true))
    } else {
        Ok(ChainElement::new(u, combined, false))
    }
}

/// Within-layer strict order by the insertion description: undotted
/// elements follow the group order, dotted copies follow the group order
/// among themselves, and a dotted copy sits above exactly the elements
/// strictly below its original.
fn within_layer_lt_primary(
    chain: &Chain<'_>,
    u: usize,
    x: &ChainElement,
    y: &ChainElement,
) -> Result<bool> {
    let group = chain.bunch().group(u);
    let cmp = group.compare(&chain.underlying(x), &chain.underlying(y))?;
    Ok(match (x.dotted, y.dotted) {
        // x < •a iff x strictly below a; •a < y iff a at or below y.
        (false, true) | (false, false) | (true, true) => cmp == Ordering::Less,
        (true, false) => cmp != Ordering::Greater,
    })
}

/// Agreement of the primary and simplified forms of negation, layer
/// product, and within-layer order.
///
/// The element pool is exhaustive when every layer group is trivial and
/// sampled otherwise; a sample count of zero is a vacuous pass.
pub fn check_lemma_equivalences_with(chain: &Chain<'_>, cfg: &SampleConfig) -> ValidationReport {
    let mut log = SuiteLog::new(EQUIVALENCE_CHECKS);
    if cfg.samples == 0 {
        return log.into_report();
    }
    let bunch = chain.bunch();
    let all_trivial = (0..bunch.len()).all(|u| bunch.group(u) == &OGroupDesc::Trivial);
    let pairs: Vec<(ChainElement, ChainElement)> = if all_trivial {
        let unmutated = Chain::new(bunch);
        let (_, elements) = finite_chain::materialize_with_elements(&unmutated)
            .expect("all-trivial bunches materialize");
        let mut pairs = Vec::new();
        for x in &elements {
            for y in &elements {
                if x.layer == y.layer {
                    pairs.push((x.clone(), y.clone()));
                }
            }
        }
        pairs
    } else {
        let mut sampler = Sampler::new(bunch, cfg);
        (0..cfg.samples)
            .map(|_| {
                let x = sampler.next_element();
                let y = sampler.next_element_in_layer(x.layer);
                (x, y)
            })
            .collect()
    };

    for (x, y) in &pairs {
        let implemented = chain.negate(x);
        let oracle = negate_simplified(chain, x);
        match (implemented, oracle) {
            (Ok(a), Ok(b)) => {
                if a != b {
                    log.fail("negation-forms", || {
                        format!(
                            "{}' is {} by cases but {} simplified",
                            chain.render(x),
                            chain.render(&a),
                            chain.render(&b)
                        )
                    });
                }
            }
            (Err(e), _) | (_, Err(e)) => log.fail("negation-forms", || e.to_string()),
        }

        let u = x.layer;
        match (chain.layer_mul(u, x, y), layer_mul_primary(chain, u, x, y)) {
            (Ok(a), Ok(b)) => {
                if a != b {
                    log.fail("product-forms", || {
                        format!(
                            "{}.{} is {} short-form but {} by cases",
                            chain.render(x),
                            chain.render(y),
                            chain.render(&a),
                            chain.render(&b)
                        )
                    });
                }
            }
            (Err(e), _) | (_, Err(e)) => log.fail("product-forms", || e.to_string()),
        }

        let implemented_lt = chain.compare(x, y).map(|c| c == Ordering::Less);
        let oracle_lt = within_layer_lt_primary(chain, u, x, y);
        match (implemented_lt, oracle_lt) {
            (Ok(a), Ok(b)) => {
                if a != b {
                    log.fail("order-forms", || {
                        format!(
                            "{} < {} is {a} by the tie rule but {b} by insertion",
                            chain.render(x),
                            chain.render(y)
                        )
                    });
                }
            }
            (Err(e), _) | (_, Err(e)) => log.fail("order-forms", || e.to_string()),
        }
    }
    log.into_report()
}

/// [`check_lemma_equivalences_with`] on the unmutated evaluator.
pub fn check_lemma_equivalences(bunch: &Bunch, cfg: &SampleConfig) -> ValidationReport {
    check_lemma_equivalences_with(&Chain::new(bunch), cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::chain::Mutation;
    use crate::finite_chain::SugiharaKind;
    use crate::presets;

    fn quick(samples: usize, seed: u64) -> SampleConfig {
        SampleConfig::new(seed).with_samples(samples).with_bound(20)
    }

    #[test]
    fn axioms_pass_on_all_presets() {
        for (name, bunch) in presets::all() {
            let report = check_axioms(&bunch, &quick(400, 7));
            assert!(report.all_passed(), "{name}: {report}");
        }
    }

    #[test]
    fn reports_are_reproducible() {
        let bunch = presets::doubling();
        let cfg = quick(200, 99);
        let a = check_axioms(&bunch, &cfg).render_text();
        let b = check_axioms(&bunch, &cfg).render_text();
        assert_eq!(a, b);
        let c = check_axioms(&bunch, &quick(200, 100)).render_text();
        // Different seeds still pass, so the rendering agrees here too.
        assert_eq!(a, c);
        assert_eq!(
            sample_element(&bunch, &cfg, 17),
            sample_element(&bunch, &cfg, 17)
        );
    }

    #[test]
    fn sampled_elements_are_valid() {
        for (name, bunch) in presets::all() {
            let chain = Chain::new(&bunch);
            let cfg = quick(0, 5);
            let mut sampler = Sampler::new(&bunch, &cfg);
            for _ in 0..300 {
                let x = sampler.next_element();
                assert!(
                    chain.element_validate(&x).all_passed(),
                    "{name}: invalid sample {}",
                    chain.render(&x)
                );
            }
        }
    }

    #[test]
    fn dotted_probability_zero_never_dots() {
        let bunch = presets::doubling();
        let cfg = quick(0, 3).with_dotted_probability(0, 1);
        let mut sampler = Sampler::new(&bunch, &cfg);
        for _ in 0..200 {
            assert!(!sampler.next_element().dotted);
        }
    }

    #[test]
    fn cover_lemma_applies_to_discrete_layers_only() {
        let cfg = quick(500, 11);
        for bunch in [presets::even_integers(), presets::lex_plane(), presets::lex_plane_over_line()] {
            let report = check_cover_lemma(&bunch, &cfg).unwrap();
            assert!(report.all_passed(), "{report}");
        }
        assert!(matches!(
            check_cover_lemma(&presets::odd_sugihara_3(), &cfg),
            Err(Error::NoClassJ)
        ));
    }

    #[test]
    fn roundtrip_suite_passes_on_generated_chains() {
        for (kind, sizes) in [
            (SugiharaKind::Odd, vec![1usize, 3, 5]),
            (SugiharaKind::Even, vec![2, 4, 8]),
        ] {
            for n in sizes {
                let chain = finite_chain::generate_sugihara(kind, n).unwrap();
                let report = check_roundtrip_finite(&chain);
                assert!(report.all_passed(), "size {n}: {report}");
            }
        }
    }

    #[test]
    fn lemma_equivalences_hold_sampled_and_exhaustive() {
        let cfg = quick(500, 13);
        for (name, bunch) in presets::all() {
            let report = check_lemma_equivalences(&bunch, &cfg);
            assert!(report.all_passed(), "{name}: {report}");
        }
        // Sample count zero: vacuous pass.
        let vacuous = check_lemma_equivalences(&presets::doubling(), &quick(0, 1));
        assert!(vacuous.all_passed());
        assert_eq!(vacuous.checks.len(), EQUIVALENCE_CHECKS.len());
    }

    #[test]
    fn suites_catch_planted_defects() {
        let cfg = quick(600, 21);
        // Forgetting dots breaks the product/negation interplay.
        let doubling = presets::doubling();
        let mutated = Chain::with_mutation(&doubling, Mutation::DropDottingRule);
        let axioms = check_axioms_with(&mutated, &cfg);
        let equivalences = check_lemma_equivalences_with(&mutated, &cfg);
        assert!(
            !axioms.all_passed() || !equivalences.all_passed(),
            "dropped dotting rule went unnoticed"
        );

        // Swapping the tie-break leaves products untouched (they factor
        // through lifts), but residuation feels it: on the three-element odd
        // chain, t <= (•u -> t) holds while •u.t <= t keeps holding.
        let os3 = presets::odd_sugihara_3();
        let swapped = Chain::with_mutation(&os3, Mutation::SwapLiftTieBreak);
        let axioms = check_axioms_with(&swapped, &cfg);
        let failed: Vec<_> = axioms.failures().map(|c| c.name.clone()).collect();
        assert!(
            failed.contains(&"adjunction".to_string()),
            "expected an adjunction failure, got {failed:?}"
        );

        // Skipping the cover step on discrete negation breaks the parity
        // facts: f collapses onto t.
        let ez = presets::even_integers();
        let skipped = Chain::with_mutation(&ez, Mutation::SkipNegationCoverStep);
        let axioms = check_axioms_with(&skipped, &cfg);
        let failed: Vec<_> = axioms.failures().map(|c| c.name.clone()).collect();
        assert!(
            failed.contains(&"parity".to_string()),
            "expected a parity failure, got {failed:?}"
        );
    }
}
