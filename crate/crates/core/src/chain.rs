//! Lazy evaluation of the chain assembled from a bunch.
//!
//! The chain of a bunch is the disjoint union of its layers: layer `u`
//! contributes every element of its group, and class-`I` layers additionally
//! contribute a *dotted* copy `•a` of each subgroup member `a`, sitting
//! immediately below the undotted `a` in the order.  The chain is usually
//! infinite, so it is never materialized here; [`Chain`] evaluates order,
//! product, residual complement, residuum, and the constants pointwise.
//!
//! Comparisons and products first *lift* both operands into the higher of
//! their two layers through the bunch transitions, then work within that
//! layer.  The residual complement acts by group inversion, respecting dots
//! on class-`I` layers and stepping down one cover on class-`J` layers; the
//! residuum is derived from product and complement.
//!
//! [`Mutation`] plants one of three deliberate, seeded defects into the
//! evaluator.  The verification suites in this crate are expected to catch
//! each one; keeping the defects *in* the evaluator (rather than in forked
//! test code) guarantees the suites exercise the same code paths users run.

use crate::bunch::{Bunch, LayerClass};
use crate::ogroup::{CoverDirection, GroupElement};
use crate::report::ValidationReport;
use crate::{Error, Result};
use std::cmp::Ordering;

/// A point of the chain: a layer, a value of the layer group, and whether
/// this is the dotted copy of a subgroup member.
///
/// The layer is the *position* of a label in this element's bunch, so
/// elements are only meaningful relative to the bunch they were built for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChainElement {
    pub layer: usize,
    pub value: GroupElement,
    pub dotted: bool,
}

impl ChainElement {
    pub fn new(layer: usize, value: GroupElement, dotted: bool) -> Self {
        ChainElement {
            layer,
            value,
            dotted,
        }
    }

    /// Undotted element with integer coordinates, for tests and fixtures.
    pub fn ints(layer: usize, values: impl IntoIterator<Item = i64>) -> Self {
        ChainElement::new(layer, GroupElement::ints(values), false)
    }

    /// Dotted element with integer coordinates.
    pub fn dotted_ints(layer: usize, values: impl IntoIterator<Item = i64>) -> Self {
        ChainElement::new(layer, GroupElement::ints(values), true)
    }
}

/// A deliberate single-point defect for sensitivity experiments.
///
/// Used to demonstrate that the verification suites are not vacuous: running
/// them against a mutated evaluator must produce failures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutation {
    /// Layer products never produce dotted results.
    DropDottingRule,
    /// When two elements of different layers lift to the same point, the
    /// lower-layer element is ordered *above* instead of below.
    SwapLiftTieBreak,
    /// Negation on class-`J` layers skips the final step down to the lower
    /// cover, returning the bare group inverse.
    SkipNegationCoverStep,
}

/// Pointwise evaluator for the chain of a bunch.
#[derive(Debug, Clone, Copy)]
pub struct Chain<'a> {
    bunch: &'a Bunch,
    mutation: Option<Mutation>,
}

impl<'a> Chain<'a> {
    pub fn new(bunch: &'a Bunch) -> Self {
        Chain {
            bunch,
            mutation: None,
        }
    }

    /// An evaluator with one planted defect.  See [`Mutation`].
    pub fn with_mutation(bunch: &'a Bunch, mutation: Mutation) -> Self {
        Chain {
            bunch,
            mutation: Some(mutation),
        }
    }

    pub fn bunch(&self) -> &'a Bunch {
        self.bunch
    }

    /// Does `x` denote a point of this chain?  Three checks: the layer
    /// exists, the value belongs to the layer group, and a dot is only
    /// present on a subgroup member of a class-`I` layer.
    pub fn element_validate(&self, x: &ChainElement) -> ValidationReport {
        let mut report = ValidationReport::new();
        if x.layer >= self.bunch.len() {
            report.fail(
                "layer-known",
                format!("no layer at position {}", x.layer),
            );
            return report;
        }
        report.pass("layer-known");
        let group = self.bunch.group(x.layer);
        if !group.admits(&x.value) {
            report.fail(
                "value-in-group",
                format!("value {} does not belong to {group}", x.value),
            );
            return report;
        }
        report.pass("value-in-group");
        if x.dotted {
            let legal = self.bunch.class(x.layer) == LayerClass::I
                && self
                    .bunch
                    .subgroup(x.layer)
                    .expect("class I has a subgroup")
                    .contains(&x.value)
                    .expect("value admitted above");
            report.record("dot-legality", legal, || {
                format!(
                    "dotted copy of {} is not available in layer {}",
                    x.value,
                    self.bunch.label(x.layer)
                )
            });
        } else {
            report.pass("dot-legality");
        }
        report
    }

    fn check(&self, x: &ChainElement) -> Result<()> {
        let report = self.element_validate(x);
        match report.first_failure() {
            None => Ok(()),
            Some(failure) => Err(Error::domain(format!(
                "invalid chain element: {}",
                failure.witness.as_deref().unwrap_or(&failure.name)
            ))),
        }
    }

    /// The group value beneath an element: `a` for both `a` and `•a`.
    pub fn underlying(&self, x: &ChainElement) -> GroupElement {
        x.value.clone()
    }

    /// Lift `x` into layer `v` through the bunch transition, leaving it
    /// untouched when its layer is already at or above `v`.  Lifts are
    /// always undotted.
    pub fn lift(&self, v: usize, x: &ChainElement) -> Result<ChainElement> {
        if v >= self.bunch.len() {
            return Err(Error::domain(format!("no layer at position {v}")));
        }
        self.check(x)?;
        if x.layer >= v {
            return Ok(x.clone());
        }
        let hom = self.bunch.transition(x.layer, v)?;
        let value = hom.apply(&x.value)?;
        Ok(ChainElement::new(v, value, false))
    }

    /// Strict-or-equal comparison of two elements of the same layer: first
    /// by group value, then dotted-below-undotted on ties.
    fn within_layer(&self, w: usize, x: &ChainElement, y: &ChainElement) -> Result<Ordering> {
        let group = self.bunch.group(w);
        let by_value = group.compare(&x.value, &y.value)?;
        if by_value != Ordering::Equal {
            return Ok(by_value);
        }
        Ok(match (x.dotted, y.dotted) {
            (true, false) => Ordering::Less,
            (false, true) => Ordering::Greater,
            _ => Ordering::Equal,
        })
    }

    /// Total order of the chain.
    ///
    /// Both elements are lifted into the higher of their layers and compared
    /// there; if the lifts coincide, the element from the lower layer sits
    /// below.  Equality is structural (same layer, value, and dot).
    pub fn compare(&self, x: &ChainElement, y: &ChainElement) -> Result<Ordering> {
        self.check(x)?;
        self.check(y)?;
        let w = x.layer.max(y.layer);
        let lx = self.lift(w, x)?;
        let ly = self.lift(w, y)?;
        let within = self.within_layer(w, &lx, &ly)?;
        if within != Ordering::Equal {
            return Ok(within);
        }
        Ok(match self.mutation {
            Some(Mutation::SwapLiftTieBreak) => y.layer.cmp(&x.layer),
            _ => x.layer.cmp(&y.layer),
        })
    }

    /// `x <= y` in the chain order.
    pub fn le(&self, x: &ChainElement, y: &ChainElement) -> Result<bool> {
        Ok(self.compare(x, y)? != Ordering::Greater)
    }

    /// Product of two elements of the same layer `u`.
    ///
    /// The group carries the product; the result is dotted exactly when the
    /// layer is class `I`, the combined value lies in `H`, and the factors
    /// are not both undotted members of `H` (products of two undotted
    /// subgroup members stay undotted; everything else that lands in `H`
    /// drops to the dotted copy).
    pub fn layer_mul(
        &self,
        u: usize,
        x: &ChainElement,
        y: &ChainElement,
    ) -> Result<ChainElement> {
        self.check(x)?;
        self.check(y)?;
        if x.layer != u || y.layer != u {
            return Err(Error::domain(format!(
                "layer product at position {u} got elements of layers {} and {}",
                x.layer, y.layer
            )));
        }
        let group = self.bunch.group(u);
        let combined = group.combine(&x.value, &y.value)?;
        let dotted = if self.mutation == Some(Mutation::DropDottingRule) {
            false
        } else if self.bunch.class(u) == LayerClass::I {
            let h = self.bunch.subgroup(u).expect("class I has a subgroup");
            let both_undotted_members = !x.dotted
                && !y.dotted
                && h.contains(&x.value)?
                && h.contains(&y.value)?;
            h.contains(&combined)? && !both_undotted_members
        } else {
            false
        };
        Ok(ChainElement::new(u, combined, dotted))
    }

    /// Product of the chain: lift both factors to the higher layer and take
    /// the layer product there.
    pub fn mul(&self, x: &ChainElement, y: &ChainElement) -> Result<ChainElement> {
        self.check(x)?;
        self.check(y)?;
        let w = x.layer.max(y.layer);
        let lx = self.lift(w, x)?;
        let ly = self.lift(w, y)?;
        self.layer_mul(w, &lx, &ly)
    }

    /// Residual complement.
    ///
    /// Acts within the element's layer by group inversion: on class-`I`
    /// layers a dot moves to the other side exactly for subgroup members
    /// (`•a ↦ -a`, `a ↦ •(-a)` for `a ∈ H`, `a ↦ -a` otherwise); class-`J`
    /// layers additionally step down to the lower cover; the class-`o`
    /// layer inverts in place.
    pub fn negate(&self, x: &ChainElement) -> Result<ChainElement> {
        self.check(x)?;
        let u = x.layer;
        let group = self.bunch.group(u);
        let inverse = group.inverse(&x.value)?;
        Ok(match self.bunch.class(u) {
            LayerClass::I => {
                if x.dotted {
                    ChainElement::new(u, inverse, false)
                } else {
                    let in_h = self
                        .bunch
                        .subgroup(u)
                        .expect("class I has a subgroup")
                        .contains(&x.value)?;
                    ChainElement::new(u, inverse, in_h)
                }
            }
            LayerClass::J => {
                if self.mutation == Some(Mutation::SkipNegationCoverStep) {
                    ChainElement::new(u, inverse, false)
                } else {
                    ChainElement::new(u, group.cover(&inverse, CoverDirection::Down)?, false)
                }
            }
            LayerClass::O => ChainElement::new(u, inverse, false),
        })
    }

    /// Residuum, derived from product and complement: `x -> y = (x.y')'`.
    pub fn residuum(&self, x: &ChainElement, y: &ChainElement) -> Result<ChainElement> {
        let ny = self.negate(y)?;
        let product = self.mul(x, &ny)?;
        self.negate(&product)
    }

    /// The monoid unit: the unit of the least layer, undotted.
    pub fn unit(&self) -> ChainElement {
        ChainElement::new(0, self.bunch.group(0).unit(), false)
    }

    /// The constant `f`, the residual complement of the unit.
    pub fn falsum(&self) -> ChainElement {
        self.negate(&self.unit())
            .expect("the unit is always a valid element")
    }

    /// Both constants `(t, f)`.
    pub fn constants(&self) -> (ChainElement, ChainElement) {
        (self.unit(), self.falsum())
    }

    /// Canonical rendering, e.g. `u:[1,2]`, `u:*[2]`, `t:[]`.
    pub fn render(&self, x: &ChainElement) -> String {
        let label = if x.layer < self.bunch.len() {
            self.bunch.label(x.layer)
        } else {
            "?"
        };
        format!(
            "{label}:{}{}",
            if x.dotted { "*" } else { "" },
            x.value
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn tri(layer: usize, dotted: bool) -> ChainElement {
        ChainElement::new(layer, GroupElement::Trivial, dotted)
    }

    #[test]
    fn three_element_odd_chain_tables() {
        let bunch = presets::odd_sugihara_3();
        let chain = Chain::new(&bunch);
        let m = tri(1, true); // dotted copy in the upper layer
        let t = tri(0, false);
        let u = tri(1, false);

        // Order: dotted < unit < undotted.
        assert_eq!(chain.compare(&m, &t).unwrap(), Ordering::Less);
        assert_eq!(chain.compare(&t, &u).unwrap(), Ordering::Less);
        assert_eq!(chain.compare(&m, &u).unwrap(), Ordering::Less);
        assert_eq!(chain.compare(&u, &m).unwrap(), Ordering::Greater);
        assert_eq!(chain.compare(&t, &t).unwrap(), Ordering::Equal);

        // Constants: odd, so f = t.
        let (unit, falsum) = chain.constants();
        assert_eq!(unit, t);
        assert_eq!(falsum, t);

        // Complements swap the outer pair and fix the unit.
        assert_eq!(chain.negate(&u).unwrap(), m);
        assert_eq!(chain.negate(&m).unwrap(), u);
        assert_eq!(chain.negate(&t).unwrap(), t);

        // Full product table.
        let all = [m.clone(), t.clone(), u.clone()];
        for x in &all {
            assert_eq!(chain.mul(&t, x).unwrap(), *x, "unit law");
        }
        assert_eq!(chain.mul(&u, &u).unwrap(), u);
        assert_eq!(chain.mul(&u, &m).unwrap(), m);
        assert_eq!(chain.mul(&m, &m).unwrap(), m);

        // Residuum sample: u -> •u = (u.u)' = •u.
        assert_eq!(chain.residuum(&u, &m).unwrap(), m);
    }

    #[test]
    fn doubling_examples() {
        let bunch = presets::doubling();
        let chain = Chain::new(&bunch);

        // Element validity.
        assert!(chain.element_validate(&ChainElement::dotted_ints(1, [2])).all_passed());
        assert!(!chain.element_validate(&ChainElement::dotted_ints(1, [3])).all_passed());
        assert!(!chain.element_validate(&ChainElement::dotted_ints(0, [5])).all_passed());
        assert!(!chain.element_validate(&ChainElement::ints(7, [1])).all_passed());

        // Lifting through the doubling transition.
        assert_eq!(
            chain.lift(1, &ChainElement::ints(0, [3])).unwrap(),
            ChainElement::ints(1, [6])
        );
        let kept = ChainElement::dotted_ints(1, [2]);
        assert_eq!(chain.lift(0, &kept).unwrap(), kept);

        // Order around a dotted copy: •2 < 1 (its preimage) < 2.
        let dot2 = ChainElement::dotted_ints(1, [2]);
        let one = ChainElement::ints(0, [1]);
        let two = ChainElement::ints(1, [2]);
        let five = ChainElement::ints(0, [5]);
        assert_eq!(chain.compare(&dot2, &one).unwrap(), Ordering::Less);
        assert_eq!(chain.compare(&one, &two).unwrap(), Ordering::Less);
        assert_eq!(chain.compare(&dot2, &five).unwrap(), Ordering::Less);

        // Layer products and the dotting rule.
        let at = |v: i64| ChainElement::ints(1, [v]);
        let dot = |v: i64| ChainElement::dotted_ints(1, [v]);
        assert_eq!(chain.layer_mul(1, &at(2), &at(4)).unwrap(), at(6));
        assert_eq!(chain.layer_mul(1, &dot(2), &at(4)).unwrap(), dot(6));
        assert_eq!(chain.layer_mul(1, &at(3), &at(4)).unwrap(), at(7));

        // Products across layers.
        assert_eq!(
            chain.mul(&ChainElement::ints(0, [3]), &at(1)).unwrap(),
            at(7)
        );
        assert_eq!(
            chain.mul(&ChainElement::ints(0, [1]), &dot(2)).unwrap(),
            dot(4)
        );

        // Complements around the subgroup.
        assert_eq!(chain.negate(&at(2)).unwrap(), dot(-2));
        assert_eq!(chain.negate(&dot(2)).unwrap(), at(-2));
        assert_eq!(chain.negate(&at(3)).unwrap(), at(-3));
    }

    #[test]
    fn doubling_exact_small_scale_axioms() {
        let bunch = presets::doubling();
        let chain = Chain::new(&bunch);
        let mut elements = Vec::new();
        for v in -2..=2 {
            elements.push(ChainElement::ints(0, [v]));
            elements.push(ChainElement::ints(1, [v]));
        }
        for v in [-2, 0, 2] {
            elements.push(ChainElement::dotted_ints(1, [v]));
        }
        let t = chain.unit();

        for x in &elements {
            assert_eq!(chain.mul(&t, x).unwrap(), *x, "unit law");
            assert_eq!(
                chain.negate(&chain.negate(x).unwrap()).unwrap(),
                *x,
                "involution"
            );
        }
        for x in &elements {
            for y in &elements {
                assert_eq!(
                    chain.mul(x, y).unwrap(),
                    chain.mul(y, x).unwrap(),
                    "commutativity"
                );
                // Antisymmetry.
                let xy = chain.compare(x, y).unwrap();
                let yx = chain.compare(y, x).unwrap();
                assert_eq!(xy, yx.reverse(), "antisymmetry");
                assert_eq!(xy == Ordering::Equal, x == y, "structural equality");
            }
        }
        for x in &elements {
            for y in &elements {
                for z in &elements {
                    assert_eq!(
                        chain.mul(&chain.mul(x, y).unwrap(), z).unwrap(),
                        chain.mul(x, &chain.mul(y, z).unwrap()).unwrap(),
                        "associativity"
                    );
                    // Transitivity.
                    if chain.le(x, y).unwrap() && chain.le(y, z).unwrap() {
                        assert!(chain.le(x, z).unwrap(), "transitivity");
                    }
                    // Monotonicity of the product.
                    if chain.le(x, y).unwrap() {
                        assert!(
                            chain
                                .le(&chain.mul(x, z).unwrap(), &chain.mul(y, z).unwrap())
                                .unwrap(),
                            "monotonicity"
                        );
                    }
                    // Residuation: x.v <= z  iff  v <= x -> z.
                    let lhs = chain.le(&chain.mul(x, y).unwrap(), z).unwrap();
                    let rhs = chain.le(y, &chain.residuum(x, z).unwrap()).unwrap();
                    assert_eq!(lhs, rhs, "adjunction");
                }
            }
        }
    }

    #[test]
    fn even_integer_chain_closed_forms() {
        let bunch = presets::even_integers();
        let chain = Chain::new(&bunch);
        let (t, f) = chain.constants();
        assert_eq!(t, ChainElement::ints(0, [0]));
        assert_eq!(f, ChainElement::ints(0, [-1]));
        // Negation is -x-1, residuum is y-x.
        assert_eq!(
            chain.negate(&ChainElement::ints(0, [5])).unwrap(),
            ChainElement::ints(0, [-6])
        );
        assert_eq!(
            chain
                .residuum(&ChainElement::ints(0, [3]), &ChainElement::ints(0, [8]))
                .unwrap(),
            ChainElement::ints(0, [5])
        );
        // f is the lower cover of t and f.f below f.
        assert_eq!(chain.compare(&f, &t).unwrap(), Ordering::Less);
        let ff = chain.mul(&f, &f).unwrap();
        assert_eq!(ff, ChainElement::ints(0, [-2]));
    }

    #[test]
    fn even_idempotent_two_chain() {
        let bunch = presets::even_sugihara_2();
        let chain = Chain::new(&bunch);
        let (t, f) = chain.constants();
        assert_eq!(t, tri(0, false));
        assert_eq!(f, tri(0, true));
        assert_eq!(chain.compare(&f, &t).unwrap(), Ordering::Less);
        assert_eq!(chain.mul(&f, &f).unwrap(), f, "f is idempotent");
        assert_eq!(chain.negate(&f).unwrap(), t);
        assert_eq!(chain.residuum(&f, &f).unwrap(), t);
    }

    #[test]
    fn dense_layer_dotting() {
        let bunch = presets::dense_over_point();
        let chain = Chain::new(&bunch);
        let half = ChainElement::new(1, GroupElement::rational(1, 2), false);
        let three = ChainElement::new(1, GroupElement::rational(3, 1), false);
        // 1/2 is outside H = Z: plain inverse.  3 is inside: dotted inverse.
        assert_eq!(
            chain.negate(&half).unwrap(),
            ChainElement::new(1, GroupElement::rational(-1, 2), false)
        );
        assert_eq!(
            chain.negate(&three).unwrap(),
            ChainElement::new(1, GroupElement::rational(-3, 1), true)
        );
        // Two outside-H halves combine into H and pick up the dot.
        assert_eq!(
            chain.mul(&half, &half).unwrap(),
            ChainElement::new(1, GroupElement::rational(1, 1), true)
        );
    }

    #[test]
    fn rendering_uses_element_literal_syntax() {
        let bunch = presets::doubling();
        let chain = Chain::new(&bunch);
        assert_eq!(chain.render(&ChainElement::ints(0, [3])), "t:[3]");
        assert_eq!(chain.render(&ChainElement::dotted_ints(1, [2])), "u:*[2]");
        let triv = presets::odd_sugihara_3();
        let chain = Chain::new(&triv);
        assert_eq!(chain.render(&tri(0, false)), "t:[]");
    }

    #[test]
    fn invalid_elements_are_domain_errors() {
        let bunch = presets::doubling();
        let chain = Chain::new(&bunch);
        let bad = ChainElement::dotted_ints(0, [1]);
        let good = ChainElement::ints(0, [0]);
        assert!(chain.compare(&bad, &good).is_err());
        assert!(chain.mul(&bad, &good).is_err());
        assert!(chain.negate(&bad).is_err());
        assert!(chain.layer_mul(1, &good, &good).is_err(), "wrong layer");
    }

    #[test]
    fn mutations_change_single_behaviours() {
        let os3 = presets::odd_sugihara_3();
        let dropped = Chain::with_mutation(&os3, Mutation::DropDottingRule);
        let m = tri(1, true);
        let u = tri(1, false);
        // u . •u should be •u; the mutation forgets the dot.
        assert_eq!(dropped.mul(&u, &m).unwrap(), u);

        let doubling = presets::doubling();
        let swapped = Chain::with_mutation(&doubling, Mutation::SwapLiftTieBreak);
        let one = ChainElement::ints(0, [1]);
        let two = ChainElement::ints(1, [2]);
        assert_eq!(swapped.compare(&one, &two).unwrap(), Ordering::Greater);

        let ez = presets::even_integers();
        let skipped = Chain::with_mutation(&ez, Mutation::SkipNegationCoverStep);
        assert_eq!(
            skipped.negate(&ChainElement::ints(0, [5])).unwrap(),
            ChainElement::ints(0, [-5])
        );
    }
}
