//! Decomposing chains into bunches.
//!
//! For a finite chain this is exact: the skeleton is the set of positive
//! idempotents, each element belongs to the layer of its self-residuum
//! `x -> x`, the invertible part of a class-`I` layer and its dotted copy
//! are read off the product table, and transitions are multiplication by
//! the higher layer's unit.  Finite chains only ever carry trivial layer
//! groups (a non-trivial totally ordered group is infinite), so the
//! resulting bunch is all-trivial; a finite chain contradicting this is
//! reported as [`Error::InputContradiction`].
//!
//! For symbolically presented chains (the lazy evaluator over an infinite
//! bunch) the same identities are verified by seeded sampling instead:
//! [`verify_claimed_decomposition`] checks a claimed bunch against the
//! chain built from an actual bunch, and reconstructs the structural data —
//! skeleton, classes, transition matrices (by evaluating on basis vectors) —
//! for exact comparison by the caller.

use crate::bunch::{Bunch, LayerClass, Parity};
use crate::chain::{Chain, ChainElement};
use crate::finite_chain::FiniteChain;
use crate::ogroup::{OGroupDesc, OGroupHom, SubgroupSpec};
use crate::oracle::{SampleConfig, Sampler};
use crate::report::ValidationReport;
use crate::{Error, RatMatrix, Result};
use std::collections::BTreeMap;

/// Skeleton and class assignment of a decomposed finite chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    /// Positive idempotents, ascending; the first entry is the unit.
    pub skeleton: Vec<usize>,
    /// Class of each skeleton member, parallel to `skeleton`.
    pub classes: Vec<LayerClass>,
    pub parity: Parity,
}

/// The four index sets of one layer of a finite chain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LayerSets {
    /// All elements whose self-residuum is the layer's idempotent.
    pub members: Vec<usize>,
    /// The invertible part (class `I` only; empty otherwise).
    pub invertible: Vec<usize>,
    /// The dotted copy of the invertible part: `x . u'` for invertible `x`.
    pub dotted_copies: Vec<usize>,
    /// The layer group carrier: members minus dotted copies.
    pub group_members: Vec<usize>,
}

fn require_valid(chain: &FiniteChain) -> Result<Parity> {
    let (report, parity) = chain.validate();
    match parity {
        Some(p) => Ok(p),
        None => {
            let detail = report
                .first_failure()
                .map(|f| {
                    format!(
                        "{}: {}",
                        f.name,
                        f.witness.as_deref().unwrap_or("no witness")
                    )
                })
                .unwrap_or_else(|| "unclassifiable parity".to_string());
            Err(Error::domain(format!(
                "cannot decompose an invalid chain ({detail})"
            )))
        }
    }
}

/// The positive idempotents of a finite chain, ascending.
///
/// Cross-checked against the set of self-residua `{x -> x}`; a mismatch
/// would contradict the decomposition identities and is reported as such.
pub fn dec_skeleton(chain: &FiniteChain) -> Result<Vec<usize>> {
    require_valid(chain)?;
    let skeleton: Vec<usize> = (chain.t()..chain.n())
        .filter(|&u| chain.product(u, u) == u)
        .collect();
    let mut self_residua: Vec<usize> = (0..chain.n())
        .map(|x| chain.residuum(x, x))
        .collect::<Result<_>>()?;
    self_residua.sort_unstable();
    self_residua.dedup();
    if self_residua != skeleton {
        return Err(Error::InputContradiction(format!(
            "positive idempotents {skeleton:?} differ from self-residua {self_residua:?}"
        )));
    }
    Ok(skeleton)
}

/// Skeleton members classified by the parity of the chain and the
/// idempotence of their residual complements.
pub fn dec_partition(chain: &FiniteChain) -> Result<Partition> {
    let parity = require_valid(chain)?;
    let skeleton = dec_skeleton(chain)?;
    let mut classes = Vec::with_capacity(skeleton.len());
    for &u in &skeleton {
        let class = if u == chain.t() {
            match parity {
                Parity::Odd => LayerClass::O,
                Parity::EvenNonIdempotent => LayerClass::J,
                Parity::EvenIdempotent => LayerClass::I,
            }
        } else {
            let complement = chain.negate(u)?;
            if chain.product(complement, complement) == complement {
                LayerClass::I
            } else {
                LayerClass::J
            }
        };
        classes.push(class);
    }
    Ok(Partition {
        skeleton,
        classes,
        parity,
    })
}

/// The member/invertible/dotted/group index sets of the layer at skeleton
/// member `u`.
///
/// For class-`I` layers, the invertible part is computed from the order
/// (`x . u' < x`) and cross-checked against actual invertibility (some `y`
/// in the layer with `x . y = u`).
pub fn dec_layers(chain: &FiniteChain, u: usize) -> Result<LayerSets> {
    let partition = dec_partition(chain)?;
    let position = partition
        .skeleton
        .iter()
        .position(|&s| s == u)
        .ok_or_else(|| Error::domain(format!("{u} is not a skeleton member")))?;
    let members: Vec<usize> = (0..chain.n())
        .filter(|&x| chain.residuum(x, x).ok() == Some(u))
        .collect();
    if partition.classes[position] != LayerClass::I {
        return Ok(LayerSets {
            group_members: members.clone(),
            members,
            invertible: Vec::new(),
            dotted_copies: Vec::new(),
        });
    }
    let complement = chain.negate(u)?;
    let invertible: Vec<usize> = members
        .iter()
        .copied()
        .filter(|&x| chain.product(x, complement) < x)
        .collect();
    let by_search: Vec<usize> = members
        .iter()
        .copied()
        .filter(|&x| members.iter().any(|&y| chain.product(x, y) == u))
        .collect();
    if invertible != by_search {
        return Err(Error::InputContradiction(format!(
            "order test selects {invertible:?} as invertible in layer {u}, but product search selects {by_search:?}"
        )));
    }
    let mut dotted_copies: Vec<usize> = invertible
        .iter()
        .map(|&x| chain.product(x, complement))
        .collect();
    dotted_copies.sort_unstable();
    let group_members: Vec<usize> = members
        .iter()
        .copied()
        .filter(|x| !dotted_copies.contains(x))
        .collect();
    Ok(LayerSets {
        members,
        invertible,
        dotted_copies,
        group_members,
    })
}

/// The layer group at skeleton member `u` of a finite chain.
///
/// Builds the corrected layer operation (`(x.y -> u) -> u` on class-`I`
/// layers, the plain product elsewhere), verifies the abelian o-group
/// axioms on the carrier exactly, and then insists on a one-element
/// carrier: a finite chain with a larger layer group contradicts the
/// decomposition (totally ordered groups with two elements do not exist).
pub fn dec_layer_group(chain: &FiniteChain, u: usize) -> Result<OGroupDesc> {
    let partition = dec_partition(chain)?;
    let position = partition
        .skeleton
        .iter()
        .position(|&s| s == u)
        .ok_or_else(|| Error::domain(format!("{u} is not a skeleton member")))?;
    let class_i = partition.classes[position] == LayerClass::I;
    let sets = dec_layers(chain, u)?;
    let carrier = &sets.group_members;
    let contradiction =
        |msg: String| -> Result<OGroupDesc> { Err(Error::InputContradiction(msg)) };
    if !carrier.contains(&u) {
        return contradiction(format!("layer group at {u} does not contain its unit"));
    }
    let op = |x: usize, y: usize| -> Result<usize> {
        let product = chain.product(x, y);
        if class_i {
            chain.residuum(chain.residuum(product, u)?, u)
        } else {
            Ok(product)
        }
    };
    for &x in carrier {
        let inverse = chain.residuum(x, u)?;
        if !carrier.contains(&inverse) || op(x, inverse)? != u {
            return contradiction(format!("{x} has no inverse in the layer group at {u}"));
        }
        if op(u, x)? != x {
            return contradiction(format!("{u} is not a unit for {x}"));
        }
        for &y in carrier {
            let xy = op(x, y)?;
            if !carrier.contains(&xy) {
                return contradiction(format!("{x}.{y} leaves the layer group at {u}"));
            }
            if xy != op(y, x)? {
                return contradiction(format!("layer product at {u} is not commutative"));
            }
            for &z in carrier {
                if op(xy, z)? != op(x, op(y, z)?)? {
                    return contradiction(format!("layer product at {u} is not associative"));
                }
                if x <= y && op(x, z)? > op(y, z)? {
                    return contradiction(format!("layer product at {u} is not monotone"));
                }
            }
        }
    }
    if carrier.len() != 1 {
        return contradiction(format!(
            "layer group at {u} has {} elements; a finite chain cannot carry a non-trivial ordered group",
            carrier.len()
        ));
    }
    Ok(OGroupDesc::Trivial)
}

/// The transition from layer `u` into layer `v`: multiplication by `v`,
/// verified to land in the layer group of `v` (and in its invertible part
/// when `v` is class `I`), encoded between the trivial layer groups.
pub fn dec_transition(chain: &FiniteChain, u: usize, v: usize) -> Result<OGroupHom> {
    let partition = dec_partition(chain)?;
    let pos = |w: usize| -> Result<usize> {
        partition
            .skeleton
            .iter()
            .position(|&s| s == w)
            .ok_or_else(|| Error::domain(format!("{w} is not a skeleton member")))
    };
    let pu = pos(u)?;
    let pv = pos(v)?;
    if pu >= pv {
        return Err(Error::domain(format!(
            "transitions go strictly up the skeleton; {u} -> {v} does not (identities are implicit)"
        )));
    }
    let source = dec_layer_group(chain, u)?;
    let target = dec_layer_group(chain, v)?;
    let sets_u = dec_layers(chain, u)?;
    let sets_v = dec_layers(chain, v)?;
    for &x in &sets_u.group_members {
        let image = chain.product(v, x);
        if !sets_v.group_members.contains(&image) {
            return Err(Error::InputContradiction(format!(
                "transition image {v}.{x} = {image} is outside the layer group at {v}"
            )));
        }
        if partition.classes[pv] == LayerClass::I && !sets_v.invertible.contains(&image) {
            return Err(Error::InputContradiction(format!(
                "transition image {v}.{x} = {image} is outside the invertible part at {v}"
            )));
        }
    }
    if chain.product(v, u) != v {
        return Err(Error::InputContradiction(format!(
            "transition {u} -> {v} does not send the unit to the unit"
        )));
    }
    Ok(OGroupHom::zero(source, target))
}

/// The bunch of layer groups of a finite chain.
pub fn decompose_chain(chain: &FiniteChain) -> Result<Bunch> {
    let partition = dec_partition(chain)?;
    let labels: Vec<String> = partition.skeleton.iter().map(|u| u.to_string()).collect();
    let mut classes = BTreeMap::new();
    let mut groups = BTreeMap::new();
    let mut subgroups = BTreeMap::new();
    let mut transitions = BTreeMap::new();
    for (i, &u) in partition.skeleton.iter().enumerate() {
        let label = labels[i].clone();
        classes.insert(label.clone(), partition.classes[i]);
        let group = dec_layer_group(chain, u)?;
        if partition.classes[i] == LayerClass::I {
            subgroups.insert(label.clone(), SubgroupSpec::trivial(group.clone()));
        }
        groups.insert(label, group);
    }
    for (i, &u) in partition.skeleton.iter().enumerate() {
        for (j, &v) in partition.skeleton.iter().enumerate().skip(i + 1) {
            transitions.insert(
                (labels[i].clone(), labels[j].clone()),
                dec_transition(chain, u, v)?,
            );
        }
    }
    let bunch = Bunch::from_parts(labels, classes, groups, subgroups, transitions)?;
    let report = bunch.validate();
    if !report.all_passed() {
        return Err(Error::InputContradiction(format!(
            "decomposed bunch fails validation: {}",
            report.first_failure().map(|f| f.name.clone()).unwrap_or_default()
        )));
    }
    Ok(bunch)
}

/// Sampled verification of a claimed decomposition against the chain of an
/// actual bunch, using the supplied evaluator (planted mutations are
/// honoured).  Returns the report together with the reconstructed bunch —
/// skeleton, derived classes, transitions recovered from basis vectors,
/// pointwise-validated subgroups — when reconstruction is possible.
pub fn verify_claimed_decomposition_with(
    chain: &Chain<'_>,
    claimed: &Bunch,
    cfg: &SampleConfig,
) -> (ValidationReport, Option<Bunch>) {
    let actual = chain.bunch();
    let mut report = ValidationReport::new();
    if claimed.len() != actual.len() {
        report.fail(
            "skeleton-size",
            format!(
                "chain has {} layers but the claimed bunch has {}",
                actual.len(),
                claimed.len()
            ),
        );
        return (report, None);
    }
    report.pass("skeleton-size");

    let unit_of = |u: usize| ChainElement::new(u, actual.group(u).unit(), false);
    let t = chain.unit();

    // Layer units are positive idempotents fixed by their self-residuum.
    for u in 0..actual.len() {
        let unit_u = unit_of(u);
        let name = format!("positive-idempotent/{}", claimed.label(u));
        let ok = (|| -> Result<bool> {
            Ok(chain.mul(&unit_u, &unit_u)? == unit_u
                && chain.le(&t, &unit_u)?
                && chain.residuum(&unit_u, &unit_u)? == unit_u)
        })();
        match ok {
            Ok(true) => report.pass(name),
            Ok(false) => report.fail(
                name,
                format!("{} is not a positive idempotent unit", chain.render(&unit_u)),
            ),
            Err(e) => report.fail(name, e.to_string()),
        }
    }

    // Classes derived from chain behaviour: the unit layer through the
    // falsum, other layers through idempotence of the complement of their
    // unit.
    let mut derived_classes = Vec::with_capacity(actual.len());
    for u in 0..actual.len() {
        let derived = (|| -> Result<LayerClass> {
            if u == 0 {
                let f = chain.falsum();
                if f == t {
                    return Ok(LayerClass::O);
                }
                return Ok(if chain.mul(&f, &f)? == f {
                    LayerClass::I
                } else {
                    LayerClass::J
                });
            }
            let complement = chain.negate(&unit_of(u))?;
            Ok(if chain.mul(&complement, &complement)? == complement {
                LayerClass::I
            } else {
                LayerClass::J
            })
        })();
        let name = format!("class/{}", claimed.label(u));
        match derived {
            Ok(class) => {
                report.record(name, class == claimed.class(u), || {
                    format!(
                        "chain behaviour derives class {class}, claimed {}",
                        claimed.class(u)
                    )
                });
                derived_classes.push(class);
            }
            Err(e) => {
                report.fail(name, e.to_string());
                derived_classes.push(claimed.class(u));
            }
        }
    }

    // Sampled pointwise identities.
    let mut sampler = Sampler::new(actual, cfg);
    let mut residuum_self: Option<String> = None;
    let mut inverse_residuum: Option<String> = None;
    let mut invertibility: Option<String> = None;
    let mut corrected_product: Option<String> = None;
    let mut transition_failures: BTreeMap<(usize, usize), String> = BTreeMap::new();

    for _ in 0..cfg.samples {
        let x = sampler.next_element();
        let u = x.layer;
        let unit_u = unit_of(u);

        if residuum_self.is_none() {
            match chain.residuum(&x, &x) {
                Ok(r) if r == unit_u => {}
                Ok(r) => {
                    residuum_self = Some(format!(
                        "{} -> itself gives {}, not the layer unit",
                        chain.render(&x),
                        chain.render(&r)
                    ))
                }
                Err(e) => residuum_self = Some(e.to_string()),
            }
        }

        let inverse_of_x = chain.residuum(&x, &unit_u);
        if inverse_residuum.is_none() {
            match &inverse_of_x {
                Ok(r) => {
                    let expected = actual.group(u).inverse(&chain.underlying(&x));
                    match expected {
                        Ok(e) if e == chain.underlying(r) => {}
                        Ok(e) => {
                            inverse_residuum = Some(format!(
                                "{} -> unit gives value {}, group inverse is {e}",
                                chain.render(&x),
                                chain.underlying(r)
                            ))
                        }
                        Err(e) => inverse_residuum = Some(e.to_string()),
                    }
                }
                Err(e) => inverse_residuum = Some(e.to_string()),
            }
        }

        if invertibility.is_none() {
            let observed = inverse_of_x
                .and_then(|candidate| chain.mul(&x, &candidate))
                .map(|p| p == unit_u);
            let expected = match claimed.subgroup(u) {
                Some(h) if claimed.class(u) == LayerClass::I => {
                    h.contains(&chain.underlying(&x)).map(|inside| !x.dotted && inside)
                }
                _ => Ok(true),
            };
            match (observed, expected) {
                (Ok(o), Ok(e)) => {
                    if o != e {
                        invertibility = Some(format!(
                            "{} is {}invertible in its layer, but the claimed subgroup says {}",
                            chain.render(&x),
                            if o { "" } else { "not " },
                            if e { "it should be" } else { "it should not be" }
                        ));
                    }
                }
                (Err(e), _) | (_, Err(e)) => invertibility = Some(e.to_string()),
            }
        }

        if corrected_product.is_none() {
            let a = sampler.next_undotted_in_layer(u);
            let b = sampler.next_undotted_in_layer(u);
            let via_chain = (|| -> Result<ChainElement> {
                let product = chain.mul(&a, &b)?;
                if claimed.class(u) == LayerClass::I {
                    chain.residuum(&chain.residuum(&product, &unit_u)?, &unit_u)
                } else {
                    Ok(product)
                }
            })();
            let expected = actual
                .group(u)
                .combine(&chain.underlying(&a), &chain.underlying(&b))
                .map(|value| ChainElement::new(u, value, false));
            match (via_chain, expected) {
                (Ok(got), Ok(want)) => {
                    if got != want {
                        corrected_product = Some(format!(
                            "corrected product of {} and {} is {}, group says {}",
                            chain.render(&a),
                            chain.render(&b),
                            chain.render(&got),
                            chain.render(&want)
                        ));
                    }
                }
                (Err(e), _) | (_, Err(e)) => corrected_product = Some(e.to_string()),
            }
        }

        for v in u + 1..actual.len() {
            if transition_failures.contains_key(&(u, v)) {
                continue;
            }
            let outcome = (|| -> Result<Option<String>> {
                let via_chain = chain.mul(&unit_of(v), &x)?;
                let claimed_hom = claimed.transition(u, v)?;
                let value = claimed_hom.apply(&chain.underlying(&x))?;
                let want = ChainElement::new(v, value, false);
                Ok(if via_chain == want {
                    None
                } else {
                    Some(format!(
                        "{} transitions to {} in the chain, claimed map gives {}",
                        chain.render(&x),
                        chain.render(&via_chain),
                        chain.render(&want)
                    ))
                })
            })();
            match outcome {
                Ok(None) => {}
                Ok(Some(witness)) => {
                    transition_failures.insert((u, v), witness);
                }
                Err(e) => {
                    transition_failures.insert((u, v), e.to_string());
                }
            }
        }
    }

    let sampled = [
        ("residuum-self", residuum_self),
        ("inverse-via-residuum", inverse_residuum),
        ("invertible-iff-subgroup", invertibility),
        ("corrected-product", corrected_product),
    ];
    for (name, witness) in sampled {
        match witness {
            None => report.pass(name),
            Some(w) => report.fail(name, w),
        }
    }
    for u in 0..actual.len() {
        for v in u + 1..actual.len() {
            let name = format!("transition/{}->{}", claimed.label(u), claimed.label(v));
            match transition_failures.remove(&(u, v)) {
                None => report.pass(name),
                Some(w) => report.fail(name, w),
            }
        }
    }

    // Exact reconstruction of the transition matrices from basis vectors.
    let mut reconstructed_transitions = BTreeMap::new();
    let mut reconstruction_failed = false;
    for u in 0..actual.len() {
        for v in u + 1..actual.len() {
            match reconstruct_transition(chain, u, v) {
                Ok(hom) => {
                    reconstructed_transitions.insert(
                        (claimed.label(u).to_string(), claimed.label(v).to_string()),
                        hom,
                    );
                }
                Err(e) => {
                    report.fail(
                        format!(
                            "transition-reconstruction/{}->{}",
                            claimed.label(u),
                            claimed.label(v)
                        ),
                        e.to_string(),
                    );
                    reconstruction_failed = true;
                }
            }
        }
    }

    let reconstructed = if reconstruction_failed {
        None
    } else {
        let labels: Vec<String> = claimed.labels().to_vec();
        let classes = labels
            .iter()
            .cloned()
            .zip(derived_classes.iter().copied())
            .collect();
        let groups = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.clone(), actual.group(i).clone()))
            .collect();
        let mut subgroups = BTreeMap::new();
        for (i, class) in derived_classes.iter().enumerate() {
            if *class == LayerClass::I {
                if let Some(h) = claimed.subgroup(i) {
                    subgroups.insert(labels[i].clone(), h.canonical());
                }
            }
        }
        Bunch::from_parts(labels, classes, groups, subgroups, reconstructed_transitions).ok()
    };
    (report, reconstructed)
}

/// Recover the `u -> v` transition by evaluating the chain on the basis of
/// the source layer group.
fn reconstruct_transition(chain: &Chain<'_>, u: usize, v: usize) -> Result<OGroupHom> {
    let actual = chain.bunch();
    let source = actual.group(u).clone();
    let target = actual.group(v).clone();
    let unit_v = ChainElement::new(v, target.unit(), false);
    let dim = source.dim();
    let mut columns = Vec::with_capacity(dim);
    for j in 0..dim {
        let mut coords = vec![crate::Rat::new(0.into(), 1.into()); dim];
        coords[j] = crate::Rat::new(1.into(), 1.into());
        let basis = source.element_from_coords(&coords)?;
        let image = chain.mul(&unit_v, &ChainElement::new(u, basis, false))?;
        columns.push(target.coords(&chain.underlying(&image))?);
    }
    let matrix = RatMatrix::from_cols(target.dim(), dim, columns)?;
    OGroupHom::new(source, target, matrix)
}

/// [`verify_claimed_decomposition_with`] on the unmutated evaluator.
pub fn verify_claimed_decomposition(
    actual: &Bunch,
    claimed: &Bunch,
    cfg: &SampleConfig,
) -> (ValidationReport, Option<Bunch>) {
    verify_claimed_decomposition_with(&Chain::new(actual), claimed, cfg)
}

/// Verify a bunch against its own chain and reconstruct it from samples.
pub fn verify_decomposition_sampled(
    bunch: &Bunch,
    cfg: &SampleConfig,
) -> (ValidationReport, Option<Bunch>) {
    verify_claimed_decomposition(bunch, bunch, cfg)
}
