//! Structure-preserving maps between bunches and their correspondence with
//! chain homomorphisms.
//!
//! A [`BunchHom`] is a monotone map of skeletons together with one group
//! homomorphism per source layer.  [`BunchHom::validate`] decides every
//! defining condition exactly:
//!
//! * the skeleton map is isotone and fixes the least label (an embedding
//!   variant is available through [`SkeletonRequirement`]);
//! * no two labels share a class-I image: the dotted copy below such an
//!   image would separate products drawn from the two merged layers, so no
//!   chain homomorphism restricts to such a map;
//! * each layer map is a monotone group homomorphism and the square with
//!   the transitions commutes (matrix identities);
//! * layer classes map within their allowed targets;
//! * distinguished subgroups are preserved *and so are their complements* —
//!   the complement condition is decided by computing the full preimage of
//!   the target subgroup as an integer lattice (kernel of a block matrix)
//!   and testing its generators for membership in the source subgroup;
//! * on discretely ordered layers the map commutes with the cover step
//!   (last matrix column equals the target's unit cover column, or is zero
//!   when the image layer collapses covers);
//! * on dense-side layers the map is strictly increasing where the subgroup
//!   side requires it, decided through the kernel: a trivial kernel passes,
//!   a nontrivial one triggers a bounded concrete-witness search.
//!
//! The second half of the module is the two-way bridge at chain level:
//! [`BunchHom::extend_element`] turns a bunch homomorphism into a map of
//! chain elements, [`restrict_chain_hom`] turns a finite-chain homomorphism
//! into a bunch homomorphism, and [`correspondence_check`] verifies on two
//! finite chains that the two constructions are mutually inverse bijections
//! compatible with composition.

use crate::bunch::{Bunch, LayerClass};
use crate::chain::{Chain, ChainElement};
use crate::decompose::{dec_skeleton, decompose_chain};
use crate::finite_chain::{self, FiniteChain};
use crate::ogroup::{CoverDirection, GroupElement, OGroupDesc, OGroupHom, SubgroupSpec};
use crate::report::ValidationReport;
use crate::{Error, Int, Rat, RatMatrix, Result};
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;

/// How the induced map between skeletons must respect the skeleton order.
///
/// The defining conditions only ask for an isotone map, and collapsing maps
/// do arise as restrictions of chain homomorphisms (a chain homomorphism may
/// send every element to the unit).  Callers who want the stronger
/// order-embedding reading can request it explicitly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SkeletonRequirement {
    /// `u <= v` implies `sigma(u) <= sigma(v)`.
    Isotone,
    /// Additionally `u < v` implies `sigma(u) < sigma(v)`.
    Embedding,
}

/// A map between two bunches: an isotone skeleton map plus one group
/// homomorphism per source layer into the image layer's group.
#[derive(Debug, Clone)]
pub struct BunchHom {
    source: Bunch,
    target: Bunch,
    /// `skeleton_map[u]` is the target position of source position `u`.
    skeleton_map: Vec<usize>,
    /// `layer_maps[u]` goes from `source.group(u)` to
    /// `target.group(skeleton_map[u])`.
    layer_maps: Vec<OGroupHom>,
}

impl BunchHom {
    /// Assemble from label-keyed parts.
    ///
    /// Shape requirements checked here (everything else is
    /// [`BunchHom::validate`]'s business): both bunches pass validation, the
    /// skeleton map and the layer maps are given exactly on the source
    /// labels, image labels exist in the target, and each layer map runs
    /// between the right groups.
    pub fn from_parts(
        source: Bunch,
        target: Bunch,
        skeleton_map: BTreeMap<String, String>,
        layer_maps: BTreeMap<String, OGroupHom>,
    ) -> Result<Self> {
        for (name, bunch) in [("source", &source), ("target", &target)] {
            let report = bunch.validate();
            if let Some(failure) = report.first_failure() {
                return Err(Error::domain(format!(
                    "{name} bunch fails validation at {}: {}",
                    failure.name,
                    failure.witness.as_deref().unwrap_or("no witness")
                )));
            }
        }
        let mut positions = Vec::with_capacity(source.len());
        let mut maps = Vec::with_capacity(source.len());
        for label in source.labels() {
            let image = skeleton_map.get(label).ok_or_else(|| {
                Error::domain(format!("skeleton map is missing source label {label}"))
            })?;
            positions.push(target.index_of(image)?);
            maps.push(
                layer_maps
                    .get(label)
                    .ok_or_else(|| {
                        Error::domain(format!("layer maps are missing source label {label}"))
                    })?
                    .clone(),
            );
        }
        for key in skeleton_map.keys() {
            source.index_of(key)?;
        }
        for key in layer_maps.keys() {
            source.index_of(key)?;
        }
        Self::assemble(source, target, positions, maps)
    }

    /// Positional construction; checks layer-map endpoints.
    fn assemble(
        source: Bunch,
        target: Bunch,
        skeleton_map: Vec<usize>,
        layer_maps: Vec<OGroupHom>,
    ) -> Result<Self> {
        if skeleton_map.len() != source.len() || layer_maps.len() != source.len() {
            return Err(Error::domain(format!(
                "expected {} skeleton images and layer maps, got {} and {}",
                source.len(),
                skeleton_map.len(),
                layer_maps.len()
            )));
        }
        for (u, (&v, map)) in skeleton_map.iter().zip(&layer_maps).enumerate() {
            if v >= target.len() {
                return Err(Error::domain(format!(
                    "skeleton image {v} of {} is outside the target skeleton",
                    source.label(u)
                )));
            }
            if map.source() != source.group(u) || map.target() != target.group(v) {
                return Err(Error::domain(format!(
                    "layer map at {} must go {} -> {}, got {} -> {}",
                    source.label(u),
                    source.group(u),
                    target.group(v),
                    map.source(),
                    map.target()
                )));
            }
        }
        Ok(BunchHom {
            source,
            target,
            skeleton_map,
            layer_maps,
        })
    }

    /// The identity on `bunch`.
    pub fn identity_on(bunch: &Bunch) -> Self {
        let skeleton_map = (0..bunch.len()).collect();
        let layer_maps = (0..bunch.len())
            .map(|u| OGroupHom::identity(bunch.group(u).clone()))
            .collect();
        Self::assemble(bunch.clone(), bunch.clone(), skeleton_map, layer_maps)
            .expect("identity endpoints match by construction")
    }

    pub fn source(&self) -> &Bunch {
        &self.source
    }

    pub fn target(&self) -> &Bunch {
        &self.target
    }

    /// Target position of source position `u`.
    pub fn skeleton_image(&self, u: usize) -> usize {
        self.skeleton_map[u]
    }

    pub fn layer_map(&self, u: usize) -> &OGroupHom {
        &self.layer_maps[u]
    }

    /// Apply to a group element of source layer `u`; returns the image layer
    /// position with the image value.
    pub fn apply(&self, u: usize, x: &GroupElement) -> Result<(usize, GroupElement)> {
        if u >= self.source.len() {
            return Err(Error::domain(format!(
                "layer position {u} is outside the source skeleton"
            )));
        }
        Ok((self.skeleton_map[u], self.layer_maps[u].apply(x)?))
    }

    /// Extend to a map of chain elements.
    ///
    /// Undotted elements go through the layer map.  A dotted element `•a`
    /// maps to the undotted image when the image layer has a least-label
    /// class (where the dotted copy merges with the group), and to the
    /// dotted image when the image layer keeps a distinguished subgroup.
    pub fn extend_element(&self, x: &ChainElement) -> Result<ChainElement> {
        let chain = Chain::new(&self.source);
        let report = chain.element_validate(x);
        if let Some(failure) = report.first_failure() {
            return Err(Error::domain(format!(
                "invalid chain element: {}: {}",
                failure.name,
                failure.witness.as_deref().unwrap_or("no witness")
            )));
        }
        let v = self.skeleton_map[x.layer];
        let value = self.layer_maps[x.layer].apply(&x.value)?;
        if !x.dotted {
            return Ok(ChainElement::new(v, value, false));
        }
        match self.target.class(v) {
            LayerClass::O => Ok(ChainElement::new(v, value, false)),
            LayerClass::I => Ok(ChainElement::new(v, value, true)),
            LayerClass::J => Err(Error::domain(format!(
                "dotted element {} maps into discretely ordered layer {}, which has no dotted copies",
                chain.render(x),
                self.target.label(v)
            ))),
        }
    }

    /// The extension as a function value.
    pub fn extend(&self) -> impl Fn(&ChainElement) -> Result<ChainElement> + '_ {
        move |x| self.extend_element(x)
    }

    /// Composition `self . inner` (apply `inner` first).
    pub fn compose(&self, inner: &BunchHom) -> Result<BunchHom> {
        if inner.target.labels() != self.source.labels()
            || !inner.target.equivalent(&self.source)
        {
            return Err(Error::domain(
                "cannot compose: inner target bunch differs from outer source bunch".to_string(),
            ));
        }
        let skeleton_map = inner
            .skeleton_map
            .iter()
            .map(|&v| self.skeleton_map[v])
            .collect();
        let layer_maps = inner
            .skeleton_map
            .iter()
            .zip(&inner.layer_maps)
            .map(|(&v, inner_map)| self.layer_maps[v].compose(inner_map))
            .collect::<Result<_>>()?;
        Self::assemble(
            inner.source.clone(),
            self.target.clone(),
            skeleton_map,
            layer_maps,
        )
    }

    /// Do two homs describe the same mapping (same skeleton images, same
    /// layer matrices between the same groups)?
    pub fn same_mapping(&self, other: &BunchHom) -> bool {
        self.skeleton_map == other.skeleton_map
            && self
                .layer_maps
                .iter()
                .zip(&other.layer_maps)
                .all(|(a, b)| {
                    a.source() == b.source()
                        && a.target() == b.target()
                        && a.matrix() == b.matrix()
                })
    }

    /// [`BunchHom::validate_with`] under the isotone reading.
    pub fn validate(&self) -> ValidationReport {
        self.validate_with(SkeletonRequirement::Isotone)
    }

    /// Decide every defining condition, with witnesses.
    pub fn validate_with(&self, requirement: SkeletonRequirement) -> ValidationReport {
        let mut report = ValidationReport::new();
        let n = self.source.len();
        let sigma = &self.skeleton_map;

        let isotone_breach = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .find(|&(u, v)| sigma[u] > sigma[v]);
        report.record("skeleton-isotone", isotone_breach.is_none(), || {
            let (u, v) = isotone_breach.unwrap();
            format!(
                "{} <= {} but their images {} > {} invert the order",
                self.source.label(u),
                self.source.label(v),
                self.target.label(sigma[u]),
                self.target.label(sigma[v])
            )
        });
        if requirement == SkeletonRequirement::Embedding {
            let collapse = (0..n)
                .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
                .find(|&(u, v)| sigma[u] >= sigma[v]);
            report.record("skeleton-embedding", collapse.is_none(), || {
                let (u, v) = collapse.unwrap();
                format!(
                    "{} < {} collapse onto {}",
                    self.source.label(u),
                    self.source.label(v),
                    self.target.label(sigma[u])
                )
            });
        }

        report.record("least-label", sigma[0] == 0, || {
            format!(
                "least label {} maps to {}, not to the target's least label {}",
                self.source.label(0),
                self.target.label(sigma[0]),
                self.target.label(0)
            )
        });

        // Two distinct labels may share an image only when that image layer
        // carries no dotted copy.  A class-I image has one, and it forces
        // products of elements drawn from the two merged layers to disagree
        // with the products of their images (the factor from the lower layer
        // forgets its dot when lifted at the source, but keeps it at the
        // image), so no chain homomorphism restricts to such a map.
        let collision = (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .find(|&(u, v)| sigma[u] == sigma[v] && self.target.class(sigma[u]) == LayerClass::I);
        report.record("separate-class-i-images", collision.is_none(), || {
            let (u, v) = collision.unwrap();
            format!(
                "labels {} and {} share the class-I image {}, whose dotted copy separates their products",
                self.source.label(u),
                self.source.label(v),
                self.target.label(sigma[u])
            )
        });

        let mut layer_valid = Vec::with_capacity(n);
        for (u, &image) in sigma.iter().enumerate() {
            let class_u = self.source.class(u);
            let class_v = self.target.class(image);
            let allowed = match class_u {
                LayerClass::O => class_v == LayerClass::O,
                LayerClass::J => matches!(class_v, LayerClass::J | LayerClass::O),
                LayerClass::I => matches!(class_v, LayerClass::I | LayerClass::O),
            };
            report.record(format!("class-respect/{}", self.source.label(u)), allowed, || {
                format!(
                    "class {class_u} layer {} maps to class {class_v} layer {}",
                    self.source.label(u),
                    self.target.label(image)
                )
            });

            let inner = self.layer_maps[u].validate();
            let ok = inner.all_passed();
            layer_valid.push(ok);
            report.record(format!("layer-hom/{}", self.source.label(u)), ok, || {
                let failure = inner.first_failure().unwrap();
                format!(
                    "{}: {}",
                    failure.name,
                    failure.witness.as_deref().unwrap_or("no witness")
                )
            });
        }

        for u in 0..n {
            for v in u + 1..n {
                let name = format!(
                    "transition-compat/{}->{}",
                    self.source.label(u),
                    self.source.label(v)
                );
                let outcome = (|| -> Result<Option<String>> {
                    let source_step = self.source.transition(u, v)?;
                    let target_step = self.target.transition(sigma[u], sigma[v])?;
                    let via_source = self.layer_maps[v].compose(&source_step)?;
                    let via_target = target_step.compose(&self.layer_maps[u])?;
                    Ok(if via_source.matrix() == via_target.matrix() {
                        None
                    } else {
                        Some(format!(
                            "map-then-transition is {} but transition-then-map is {}",
                            via_target.matrix(),
                            via_source.matrix()
                        ))
                    })
                })();
                match outcome {
                    Ok(None) => report.pass(name),
                    Ok(Some(witness)) => report.fail(name, witness),
                    Err(e) => report.fail(name, e.to_string()),
                }
            }
        }

        for u in 0..n {
            let label = self.source.label(u).to_string();
            match (self.source.class(u), self.target.class(sigma[u])) {
                (LayerClass::I, LayerClass::I) => {
                    self.check_subgroup_side(&mut report, u, layer_valid[u], &label);
                    self.check_complement_side(&mut report, u, layer_valid[u], &label);
                    self.check_strictness(&mut report, u, &label);
                }
                (LayerClass::J, LayerClass::J) => {
                    self.check_cover_column(&mut report, u, &label, false);
                }
                (LayerClass::J, LayerClass::O) => {
                    self.check_cover_column(&mut report, u, &label, true);
                }
                _ => {}
            }
        }

        report
    }

    /// Images of the source subgroup's generators must lie in the target
    /// subgroup; as both are genuine subgroups, the generators decide it.
    fn check_subgroup_side(
        &self,
        report: &mut ValidationReport,
        u: usize,
        layer_ok: bool,
        label: &str,
    ) {
        let name = format!("subgroup-preserved/{label}");
        if !layer_ok {
            report.push(crate::CheckResult::indeterminate(
                name,
                Some("layer map fails validation; subgroup analysis skipped".to_string()),
            ));
            return;
        }
        let h_source = self.source.subgroup(u).expect("class-I layer has a subgroup");
        let h_target = self
            .target
            .subgroup(self.skeleton_map[u])
            .expect("class-I layer has a subgroup");
        let generators = subgroup_generating_set(h_source, self.source.group(u));
        let outcome = (|| -> Result<Option<String>> {
            for g in &generators {
                let image = self.layer_maps[u].apply(g)?;
                if !h_target.contains(&image)? {
                    return Ok(Some(format!(
                        "subgroup generator {g} maps to {image} outside the target subgroup"
                    )));
                }
            }
            Ok(None)
        })();
        match outcome {
            Ok(None) => report.pass(name),
            Ok(Some(witness)) => report.fail(name, witness),
            Err(e) => report.fail(name, e.to_string()),
        }
    }

    /// Elements outside the source subgroup must stay outside the target
    /// subgroup.  Equivalently, the full preimage of the target subgroup is
    /// contained in the source subgroup; the preimage is computed exactly.
    fn check_complement_side(
        &self,
        report: &mut ValidationReport,
        u: usize,
        layer_ok: bool,
        label: &str,
    ) {
        let name = format!("complement-preserved/{label}");
        if !layer_ok {
            report.push(crate::CheckResult::indeterminate(
                name,
                Some("layer map fails validation; subgroup analysis skipped".to_string()),
            ));
            return;
        }
        let h_source = self.source.subgroup(u).expect("class-I layer has a subgroup");
        let h_target = self
            .target
            .subgroup(self.skeleton_map[u])
            .expect("class-I layer has a subgroup");
        let map = &self.layer_maps[u];
        let outcome = (|| -> Result<Option<String>> {
            match preimage_subgroup(map, h_target)? {
                None => {
                    // Everything maps into the target subgroup, so the
                    // source subgroup must already be the whole group.
                    if h_source.is_whole_group() {
                        return Ok(None);
                    }
                    let outside = element_outside_subgroup(h_source, self.source.group(u))?;
                    let image = map.apply(&outside)?;
                    Ok(Some(format!(
                        "{outside} is outside the source subgroup but maps to {image} in the target subgroup"
                    )))
                }
                Some(preimage) => {
                    for g in preimage.generators() {
                        if !h_source.contains(&g)? {
                            let image = map.apply(&g)?;
                            return Ok(Some(format!(
                                "{g} is outside the source subgroup but maps to {image} in the target subgroup"
                            )));
                        }
                    }
                    Ok(None)
                }
            }
        })();
        match outcome {
            Ok(None) => report.pass(name),
            Ok(Some(witness)) => report.fail(name, witness),
            Err(e) => report.fail(name, e.to_string()),
        }
    }

    /// Strict order preservation where the subgroup side demands it.
    ///
    /// The quantified condition collapses to kernel triviality: a
    /// nontrivial kernel contains a positive element `k`, and then the unit
    /// (always a subgroup member) and `-k` share an image.  A trivial
    /// kernel passes outright; otherwise a bounded search produces a
    /// concrete witness pair or the check stays indeterminate.
    fn check_strictness(&self, report: &mut ValidationReport, u: usize, label: &str) {
        let name = format!("strict-preserved/{label}");
        let map = &self.layer_maps[u];
        match map.source() {
            OGroupDesc::Trivial => report.pass(name),
            OGroupDesc::Rational => {
                // The only non-injective homomorphisms out of the dense
                // group are the collapse onto the unit (including every map
                // into the one-element group, whose matrix has no entries).
                if map.matrix().is_zero() {
                    report.fail(
                        name,
                        "[-1] and the unit [0] share an image; the unit is in the subgroup, so strictness below it is lost"
                            .to_string(),
                    );
                } else {
                    report.pass(name);
                }
            }
            OGroupDesc::IntLex(r) => {
                let r = *r;
                let kernel = map.matrix().scale_rows_to_integer().kernel_columns();
                if kernel.cols() == 0 {
                    report.pass(name);
                    return;
                }
                match small_positive_kernel_vector(map.matrix(), &kernel, r) {
                    Some(k) => {
                        let witness = GroupElement::IntLex(k.iter().map(|x| -x.clone()).collect());
                        report.fail(
                            name,
                            format!(
                                "{witness} and the unit share an image; the unit is in the subgroup, so strictness below it is lost"
                            ),
                        );
                    }
                    None => {
                        report.push(crate::CheckResult::indeterminate(
                            name,
                            Some(format!(
                                "kernel is nontrivial but no collapsing pair with coordinates in [-{B}, {B}] was found",
                                B = STRICTNESS_SEARCH_BOUND
                            )),
                        ));
                    }
                }
            }
        }
    }

    /// Cover compatibility for discretely ordered source layers: the last
    /// matrix column must be the target's last standard basis column
    /// (image layer discrete) or zero (image layer collapses covers).
    /// The matrix criterion is cross-checked pointwise on probe vectors.
    fn check_cover_column(
        &self,
        report: &mut ValidationReport,
        u: usize,
        label: &str,
        collapse: bool,
    ) {
        let map = &self.layer_maps[u];
        let matrix = map.matrix();
        let name = if collapse {
            format!("cover-collapse-map/{label}")
        } else {
            format!("cover-compat/{label}")
        };
        if matrix.cols() == 0 {
            // Guarded upstream: discretely ordered layers are never trivial.
            report.fail(name, "discretely ordered layer has no cover column".to_string());
            return;
        }
        let last = matrix.cols() - 1;
        let matrix_ok = if collapse {
            matrix.col_is_zero(last)
        } else {
            let rows = matrix.rows();
            rows > 0
                && (0..rows).all(|i| {
                    let expected = if i == rows - 1 { Rat::one() } else { Rat::zero() };
                    matrix[(i, last)] == expected
                })
        };
        report.record(name, matrix_ok, || {
            let col = matrix.col(last);
            let rendered: Vec<String> = col.iter().map(|x| x.to_string()).collect();
            format!(
                "last column [{}] {}",
                rendered.join(","),
                if collapse {
                    "must vanish so covers collapse in the image"
                } else {
                    "must be the target's unit cover step"
                }
            )
        });

        // Pointwise probes of the same condition; linearity makes the matrix
        // criterion and the pointwise statement agree, and this records when
        // they would not.
        let agree_name = format!("cover-forms-agree/{label}");
        let source_group = map.source().clone();
        let target_group = map.target().clone();
        let outcome = (|| -> Result<bool> {
            let mut pointwise_ok = true;
            for probe in cover_probe_vectors(source_group.dim()) {
                let x = GroupElement::IntLex(probe);
                let lhs = map.apply(&source_group.cover(&x, CoverDirection::Down)?)?;
                let rhs = if collapse {
                    map.apply(&x)?
                } else {
                    target_group.cover(&map.apply(&x)?, CoverDirection::Down)?
                };
                if lhs != rhs {
                    pointwise_ok = false;
                    break;
                }
            }
            Ok(pointwise_ok == matrix_ok)
        })();
        match outcome {
            Ok(true) => report.pass(agree_name),
            Ok(false) => report.push(crate::CheckResult::indeterminate(
                agree_name,
                Some("matrix criterion and pointwise probes disagree".to_string()),
            )),
            // Probing needs the map to actually evaluate on lattice points;
            // when it does not (already reported by the layer check), only
            // the matrix criterion is available.
            Err(e) => report.push(crate::CheckResult::indeterminate(
                agree_name,
                Some(e.to_string()),
            )),
        }
    }
}

const STRICTNESS_SEARCH_BOUND: i64 = 8;

/// A finite generating set of the subgroup, including for the whole group
/// (where the stored generator list is empty by convention).
fn subgroup_generating_set(sub: &SubgroupSpec, group: &OGroupDesc) -> Vec<GroupElement> {
    if sub.is_whole_group() {
        if let OGroupDesc::IntLex(r) = group {
            return (0..*r)
                .map(|j| {
                    let mut v = vec![Int::zero(); *r];
                    v[j] = Int::one();
                    GroupElement::IntLex(v)
                })
                .collect();
        }
    }
    sub.generators()
}

/// Some element of the group outside the subgroup; the subgroup must be
/// proper.
fn element_outside_subgroup(sub: &SubgroupSpec, group: &OGroupDesc) -> Result<GroupElement> {
    match group {
        OGroupDesc::Trivial => Err(Error::domain(
            "the one-element group has no proper subgroups".to_string(),
        )),
        OGroupDesc::IntLex(r) => {
            for j in 0..*r {
                let mut v = vec![Int::zero(); *r];
                v[j] = Int::one();
                let candidate = GroupElement::IntLex(v);
                if !sub.contains(&candidate)? {
                    return Ok(candidate);
                }
            }
            // All standard basis vectors inside means the subgroup is whole.
            Err(Error::domain(
                "subgroup contains the standard basis, hence is not proper".to_string(),
            ))
        }
        OGroupDesc::Rational => {
            let generators = sub.generators();
            Ok(match generators.first() {
                // q/2 is outside qZ; for the trivial subgroup take 1.
                Some(g) => {
                    let q = OGroupDesc::Rational.coords(g)?[0].clone();
                    GroupElement::Rational(q / Rat::from_integer(Int::from(2)))
                }
                None => GroupElement::Rational(Rat::one()),
            })
        }
    }
}

/// The preimage of `sub` (a subgroup of the map's target) under `map`, as a
/// subgroup of the map's source.  `None` means the whole source group.
///
/// For lattice sources this solves `M x = B y` over the integers: the
/// solutions form the integer kernel of the block matrix `[M | -B]`, and
/// projecting a kernel basis to the `x` block generates the preimage.
fn preimage_subgroup(map: &OGroupHom, sub: &SubgroupSpec) -> Result<Option<SubgroupSpec>> {
    if sub.owner() != map.target() {
        return Err(Error::domain(format!(
            "subgroup of {} cannot be pulled back through a map into {}",
            sub.owner(),
            map.target()
        )));
    }
    if sub.is_whole_group() {
        return Ok(None);
    }
    match map.source() {
        OGroupDesc::Trivial => Ok(None),
        OGroupDesc::IntLex(r) => {
            let r = *r;
            let generator_cols: Vec<Vec<Rat>> = sub
                .generators()
                .iter()
                .map(|g| {
                    map.target()
                        .coords(g)
                        .map(|coords| coords.into_iter().map(|c| -c).collect())
                })
                .collect::<Result<_>>()?;
            let negated = RatMatrix::from_cols(
                map.target().dim(),
                generator_cols.len(),
                generator_cols,
            )?;
            let block = map.matrix().hstack(&negated)?;
            let kernel = block.scale_rows_to_integer().kernel_columns();
            let generators: Vec<Vec<Int>> = (0..kernel.cols())
                .map(|j| kernel.col(j)[..r].to_vec())
                .collect();
            Ok(Some(SubgroupSpec::lattice(
                OGroupDesc::IntLex(r),
                generators,
            )?))
        }
        OGroupDesc::Rational => {
            if map.matrix().is_zero() {
                // The zero map sends everything to the unit, which every
                // subgroup contains.
                return Ok(None);
            }
            match map.target() {
                OGroupDesc::Rational => {
                    let c = map.matrix()[(0, 0)].clone();
                    if sub.is_trivial_subgroup() {
                        return Ok(Some(SubgroupSpec::cyclic(Rat::zero())));
                    }
                    let q = OGroupDesc::Rational.coords(&sub.generators()[0])?[0].clone();
                    Ok(Some(SubgroupSpec::cyclic(q / c)))
                }
                other => Err(Error::domain(format!(
                    "no nonzero homomorphism maps the dense group into {other}"
                ))),
            }
        }
    }
}

/// A lexicographically positive kernel vector with coordinates bounded by
/// [`STRICTNESS_SEARCH_BOUND`], if one can be found: first among the kernel
/// basis columns, then (for ranks up to 3) by direct search over the box.
fn small_positive_kernel_vector(
    matrix: &RatMatrix,
    kernel: &crate::IntMatrix,
    rank: usize,
) -> Option<Vec<Int>> {
    let bound = Int::from(STRICTNESS_SEARCH_BOUND);
    let lex_positive_or_flip = |v: Vec<Int>| -> Option<Vec<Int>> {
        let first = v.iter().find(|x| !x.is_zero())?;
        Some(if first.is_negative() {
            v.into_iter().map(|x| -x).collect()
        } else {
            v
        })
    };
    for j in 0..kernel.cols() {
        let col = kernel.col(j);
        if col.iter().all(|x| x.abs() <= bound) {
            if let Some(v) = lex_positive_or_flip(col) {
                return Some(v);
            }
        }
    }
    if rank > 3 {
        return None;
    }
    let span = (-STRICTNESS_SEARCH_BOUND..=STRICTNESS_SEARCH_BOUND).collect::<Vec<_>>();
    let mut candidate = vec![0i64; rank];
    let mut index = vec![0usize; rank];
    loop {
        for (slot, &i) in candidate.iter_mut().zip(&index) {
            *slot = span[i];
        }
        let vector: Vec<Rat> = candidate
            .iter()
            .map(|&x| Rat::from_integer(Int::from(x)))
            .collect();
        if candidate.iter().any(|&x| x != 0)
            && matrix
                .mul_vec(&vector)
                .map(|image| image.iter().all(|x| x.is_zero()))
                .unwrap_or(false)
        {
            let ints = candidate.iter().map(|&x| Int::from(x)).collect();
            if let Some(v) = lex_positive_or_flip(ints) {
                return Some(v);
            }
        }
        let mut pos = rank;
        loop {
            if pos == 0 {
                return None;
            }
            pos -= 1;
            index[pos] += 1;
            if index[pos] < span.len() {
                break;
            }
            index[pos] = 0;
        }
    }
}

/// Probe vectors for the pointwise cover checks: the origin, signed basis
/// vectors, and one mixed vector.
fn cover_probe_vectors(dim: usize) -> Vec<Vec<Int>> {
    let mut probes = vec![vec![Int::zero(); dim]];
    for j in 0..dim {
        for sign in [1i64, -1] {
            let mut v = vec![Int::zero(); dim];
            v[j] = Int::from(sign);
            probes.push(v);
        }
    }
    probes.push((1..=dim as i64).map(Int::from).collect());
    probes
}

/// Restriction of a finite-chain homomorphism to a bunch homomorphism
/// between the decompositions of the two chains.
///
/// `phi` maps element indices of `chain_x` to element indices of `chain_y`;
/// it must satisfy the chain-homomorphism conditions ([`Error::NotAHom`]
/// otherwise).  The skeleton map is `phi` restricted to the positive
/// idempotents, and the layer maps are the unique maps between the trivial
/// layer groups.
pub fn restrict_chain_hom(
    phi: &[usize],
    chain_x: &FiniteChain,
    chain_y: &FiniteChain,
) -> Result<BunchHom> {
    if let Some(violation) = chain_x.hom_violation(chain_y, phi)? {
        return Err(Error::NotAHom(violation));
    }
    let bunch_x = decompose_chain(chain_x)?;
    let bunch_y = decompose_chain(chain_y)?;
    let skeleton_x = dec_skeleton(chain_x)?;
    let skeleton_y = dec_skeleton(chain_y)?;
    let mut skeleton_map = Vec::with_capacity(skeleton_x.len());
    let mut layer_maps = Vec::with_capacity(skeleton_x.len());
    for (i, &u) in skeleton_x.iter().enumerate() {
        let image = phi[u];
        let position = skeleton_y.iter().position(|&w| w == image).ok_or_else(|| {
            Error::InputContradiction(format!(
                "homomorphism sends idempotent {u} to {image}, which is not a positive idempotent"
            ))
        })?;
        skeleton_map.push(position);
        layer_maps.push(OGroupHom::zero(
            bunch_x.group(i).clone(),
            bunch_y.group(position).clone(),
        ));
    }
    BunchHom::assemble(bunch_x, bunch_y, skeleton_map, layer_maps)
}

/// Materialize the chain extension of a bunch homomorphism between
/// all-trivial bunches as an index map between the materialized chains.
pub fn materialized_extension(hom: &BunchHom) -> Result<Vec<usize>> {
    let (_, elements_x) = finite_chain::materialize_with_elements(&Chain::new(hom.source()))?;
    let (_, elements_y) = finite_chain::materialize_with_elements(&Chain::new(hom.target()))?;
    elements_x
        .iter()
        .map(|x| {
            let image = hom.extend_element(x)?;
            elements_y.iter().position(|y| *y == image).ok_or_else(|| {
                Error::domain(
                    "extension image of a chain element is not a chain element of the target"
                        .to_string(),
                )
            })
        })
        .collect()
}

/// All bunch homomorphisms from `source` into `target`, in lexicographic
/// order of their positional skeleton maps.
///
/// Exhaustive enumeration is only possible when every source layer group is
/// trivial (then the skeleton map determines the whole homomorphism);
/// other sources are rejected.
pub fn enumerate_bunch_homs(source: &Bunch, target: &Bunch) -> Result<Vec<BunchHom>> {
    let all_trivial = (0..source.len()).all(|u| source.group(u) == &OGroupDesc::Trivial);
    if !all_trivial {
        return Err(Error::SizeGuard(
            "bunch homomorphism enumeration requires trivial source layer groups".to_string(),
        ));
    }
    let mut found = Vec::new();
    let mut sigma = vec![0usize; source.len()];
    enumerate_isotone_maps(source, target, 1, &mut sigma, &mut found)?;
    Ok(found)
}

fn enumerate_isotone_maps(
    source: &Bunch,
    target: &Bunch,
    position: usize,
    sigma: &mut Vec<usize>,
    found: &mut Vec<BunchHom>,
) -> Result<()> {
    if position == source.len() {
        let layer_maps = (0..source.len())
            .map(|u| OGroupHom::zero(OGroupDesc::Trivial, target.group(sigma[u]).clone()))
            .collect();
        let candidate =
            BunchHom::assemble(source.clone(), target.clone(), sigma.clone(), layer_maps)?;
        if candidate.validate().all_passed() {
            found.push(candidate);
        }
        return Ok(());
    }
    let lower = sigma[position - 1];
    for v in lower..target.len() {
        sigma[position] = v;
        enumerate_isotone_maps(source, target, position + 1, sigma, found)?;
    }
    Ok(())
}

/// Verify, on two finite chains, that chain homomorphisms and bunch
/// homomorphisms of their decompositions correspond exactly: equal counts,
/// mutually inverse restriction/extension, identity preservation, and
/// compatibility with composition across the two-object diagram.
pub fn correspondence_check(
    chain_1: &FiniteChain,
    chain_2: &FiniteChain,
) -> Result<ValidationReport> {
    let chains = [chain_1, chain_2];
    let bunches = [decompose_chain(chain_1)?, decompose_chain(chain_2)?];
    let mut chain_homs: Vec<Vec<Vec<Vec<usize>>>> = Vec::with_capacity(2);
    for a in 0..2 {
        let mut row = Vec::with_capacity(2);
        for b in 0..2 {
            row.push(chains[a].enumerate_homs(chains[b])?);
        }
        chain_homs.push(row);
    }
    let mut report = ValidationReport::new();

    let forward = &chain_homs[0][1];
    let bunch_homs = enumerate_bunch_homs(&bunches[0], &bunches[1])?;
    report.record("hom-count", forward.len() == bunch_homs.len(), || {
        format!(
            "chain side found {}, bunch side found {}",
            forward.len(),
            bunch_homs.len()
        )
    });

    let mut restriction_failure: Option<String> = None;
    let mut extend_after_restrict: Option<String> = None;
    for phi in forward {
        let outcome = (|| -> Result<Option<String>> {
            let restricted = restrict_chain_hom(phi, chain_1, chain_2)?;
            let inner = restricted.validate();
            if let Some(failure) = inner.first_failure() {
                return Ok(Some(format!(
                    "restriction of {phi:?} fails {}",
                    failure.name
                )));
            }
            Ok(None)
        })();
        match outcome {
            Ok(None) => {}
            Ok(Some(witness)) => {
                restriction_failure.get_or_insert(witness);
                continue;
            }
            Err(e) => {
                restriction_failure.get_or_insert(format!("{phi:?}: {e}"));
                continue;
            }
        }
        if extend_after_restrict.is_none() {
            match restrict_chain_hom(phi, chain_1, chain_2)
                .and_then(|r| materialized_extension(&r))
            {
                Ok(rebuilt) => {
                    if &rebuilt != phi {
                        extend_after_restrict =
                            Some(format!("{phi:?} extends back to {rebuilt:?}"));
                    }
                }
                Err(e) => extend_after_restrict = Some(format!("{phi:?}: {e}")),
            }
        }
    }
    match restriction_failure {
        None => report.pass("restriction-valid"),
        Some(w) => report.fail("restriction-valid", w),
    }
    match extend_after_restrict {
        None => report.pass("extend-after-restrict"),
        Some(w) => report.fail("extend-after-restrict", w),
    }

    let mut restrict_after_extend: Option<String> = None;
    for hom in &bunch_homs {
        let outcome = (|| -> Result<Option<String>> {
            let phi = materialized_extension(hom)?;
            if let Some(violation) = chain_1.hom_violation(chain_2, &phi)? {
                return Ok(Some(format!(
                    "extension {phi:?} is not a chain homomorphism: {violation}"
                )));
            }
            let back = restrict_chain_hom(&phi, chain_1, chain_2)?;
            Ok(if back.same_mapping(hom) {
                None
            } else {
                Some(format!("extension {phi:?} restricts to a different bunch map"))
            })
        })();
        match outcome {
            Ok(None) => {}
            Ok(Some(witness)) => {
                restrict_after_extend.get_or_insert(witness);
            }
            Err(e) => {
                restrict_after_extend.get_or_insert(e.to_string());
            }
        }
    }
    match restrict_after_extend {
        None => report.pass("restrict-after-extend"),
        Some(w) => report.fail("restrict-after-extend", w),
    }

    let mut identity_failure: Option<String> = None;
    for (chain, bunch) in chains.iter().zip(&bunches) {
        let identity_map: Vec<usize> = (0..chain.n()).collect();
        match restrict_chain_hom(&identity_map, chain, chain) {
            Ok(restricted) => {
                if !restricted.same_mapping(&BunchHom::identity_on(bunch)) {
                    identity_failure.get_or_insert(
                        "identity chain map does not restrict to the identity".to_string(),
                    );
                }
            }
            Err(e) => {
                identity_failure.get_or_insert(e.to_string());
            }
        }
    }
    match identity_failure {
        None => report.pass("identity-preserved"),
        Some(w) => report.fail("identity-preserved", w),
    }

    let mut functor_failure: Option<String> = None;
    'outer: for a in 0..2 {
        for b in 0..2 {
            for c in 0..2 {
                for phi in &chain_homs[a][b] {
                    for psi in &chain_homs[b][c] {
                        let composite: Vec<usize> = phi.iter().map(|&i| psi[i]).collect();
                        let outcome = (|| -> Result<Option<String>> {
                            let r_phi = restrict_chain_hom(phi, chains[a], chains[b])?;
                            let r_psi = restrict_chain_hom(psi, chains[b], chains[c])?;
                            let r_composite =
                                restrict_chain_hom(&composite, chains[a], chains[c])?;
                            Ok(if r_psi.compose(&r_phi)?.same_mapping(&r_composite) {
                                None
                            } else {
                                Some(format!(
                                    "restriction of {psi:?} . {phi:?} differs from the composed restrictions"
                                ))
                            })
                        })();
                        match outcome {
                            Ok(None) => {}
                            Ok(Some(witness)) => {
                                functor_failure = Some(witness);
                                break 'outer;
                            }
                            Err(e) => {
                                functor_failure = Some(e.to_string());
                                break 'outer;
                            }
                        }
                    }
                }
            }
        }
    }
    match functor_failure {
        None => report.pass("functoriality"),
        Some(w) => report.fail("functoriality", w),
    }

    Ok(report)
}
