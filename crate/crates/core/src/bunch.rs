//! Bunches of layer groups.
//!
//! A *bunch* is a direct system of totally ordered abelian groups indexed by
//! a finite totally ordered skeleton of labels.  The least label plays the
//! role of the chain unit `t`.  Each label carries a class:
//!
//! * `o` — only the least label may carry it; its layer embeds around `t`
//!   without a dotted copy;
//! * `J` — discretely ordered layers whose negation steps down by a cover;
//!   transitions leaving a `J` layer must collapse the unit's lower cover;
//! * `I` — layers that contribute a dotted copy of a designated subgroup
//!   `H` below their group elements; transitions entering an `I` layer must
//!   land inside `H`.
//!
//! Construction ([`Bunch::from_parts`]) enforces shape only: distinct
//! ordered labels, a class and group per label, a subgroup exactly for each
//! class-`I` label, and a transition homomorphism for every ordered label
//! pair (identity transitions are implicit).  Everything semantic — the
//! direct-system composition law, monotonicity of transitions, the class
//! conditions above — is checked by [`Bunch::validate`], which reports every
//! violated condition with a witness instead of stopping at the first.

use crate::ogroup::{CoverDirection, GroupElement, OGroupDesc, OGroupHom, SubgroupSpec};
use crate::report::ValidationReport;
use crate::{Error, Rat, Result};
use num_traits::{One, Zero};
use std::collections::BTreeMap;
use std::fmt;

/// Layer classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LayerClass {
    /// Written `o`: the undotted neighbourhood of the unit.
    O,
    /// Written `J`: discretely ordered, negation steps down a cover.
    J,
    /// Written `I`: carries a dotted copy of its subgroup `H`.
    I,
}

impl fmt::Display for LayerClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LayerClass::O => write!(f, "o"),
            LayerClass::J => write!(f, "J"),
            LayerClass::I => write!(f, "I"),
        }
    }
}

/// Parity of the chain a bunch assembles into, decided by the class of the
/// least label.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Parity {
    /// `f = t`.
    Odd,
    /// `f` is the lower cover of `t` and `f.f != f`.
    EvenNonIdempotent,
    /// `f` is the lower cover of `t` and `f.f = f`.
    EvenIdempotent,
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Parity::Odd => write!(f, "odd"),
            Parity::EvenNonIdempotent => write!(f, "even-nonidempotent"),
            Parity::EvenIdempotent => write!(f, "even-idempotent"),
        }
    }
}

/// A bunch of layer groups.  See the module documentation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Bunch {
    labels: Vec<String>,
    classes: Vec<LayerClass>,
    groups: Vec<OGroupDesc>,
    subgroups: BTreeMap<usize, SubgroupSpec>,
    /// Keyed by label positions `(u, v)` with `u < v`.
    transitions: BTreeMap<(usize, usize), OGroupHom>,
}

/// Labels may appear in element literals (`label:[1,2]`) and transition keys
/// (`a->b`), so keep them to a conservative identifier alphabet.
fn check_label(label: &str) -> Result<()> {
    let ok = !label.is_empty()
        && label
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-');
    if ok {
        Ok(())
    } else {
        Err(Error::domain(format!(
            "invalid label {label:?}: use ASCII letters, digits, '_' or '-'"
        )))
    }
}

impl Bunch {
    /// Assemble a bunch from labelled parts, checking shape only.
    ///
    /// `labels` lists the skeleton in increasing order; the first label is
    /// the unit label `t`.  `subgroups` must be keyed by exactly the
    /// class-`I` labels, `transitions` by exactly the pairs `(u, v)` with
    /// `u` strictly below `v` in skeleton order, with endpoints matching the
    /// declared layer groups.
    pub fn from_parts(
        labels: Vec<String>,
        classes: BTreeMap<String, LayerClass>,
        groups: BTreeMap<String, OGroupDesc>,
        subgroups: BTreeMap<String, SubgroupSpec>,
        transitions: BTreeMap<(String, String), OGroupHom>,
    ) -> Result<Bunch> {
        if labels.is_empty() {
            return Err(Error::domain("a bunch needs at least one label"));
        }
        let mut index = BTreeMap::new();
        for (i, label) in labels.iter().enumerate() {
            check_label(label)?;
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::domain(format!("duplicate label {label:?}")));
            }
        }

        let mut class_vec = Vec::with_capacity(labels.len());
        let mut group_vec = Vec::with_capacity(labels.len());
        for label in &labels {
            let class = classes
                .get(label)
                .ok_or_else(|| Error::domain(format!("missing class for label {label:?}")))?;
            let group = groups
                .get(label)
                .ok_or_else(|| Error::domain(format!("missing group for label {label:?}")))?;
            group.check_valid()?;
            class_vec.push(*class);
            group_vec.push(group.clone());
        }
        for label in classes.keys() {
            if !index.contains_key(label) {
                return Err(Error::domain(format!(
                    "class given for unknown label {label:?}"
                )));
            }
        }
        for label in groups.keys() {
            if !index.contains_key(label) {
                return Err(Error::domain(format!(
                    "group given for unknown label {label:?}"
                )));
            }
        }

        let mut subgroup_map = BTreeMap::new();
        for (label, subgroup) in subgroups {
            let Some(&i) = index.get(&label) else {
                return Err(Error::domain(format!(
                    "subgroup given for unknown label {label:?}"
                )));
            };
            if class_vec[i] != LayerClass::I {
                return Err(Error::domain(format!(
                    "subgroup given for label {label:?}, which is not class I"
                )));
            }
            if subgroup.owner() != &group_vec[i] {
                return Err(Error::domain(format!(
                    "subgroup of label {label:?} lives in {}, but the layer group is {}",
                    subgroup.owner(),
                    group_vec[i]
                )));
            }
            subgroup_map.insert(i, subgroup);
        }
        for (i, class) in class_vec.iter().enumerate() {
            if *class == LayerClass::I && !subgroup_map.contains_key(&i) {
                return Err(Error::domain(format!(
                    "missing subgroup for class-I label {:?}",
                    labels[i]
                )));
            }
        }

        let mut transition_map = BTreeMap::new();
        for ((from, to), hom) in transitions {
            let Some(&u) = index.get(&from) else {
                return Err(Error::domain(format!(
                    "transition from unknown label {from:?}"
                )));
            };
            let Some(&v) = index.get(&to) else {
                return Err(Error::domain(format!(
                    "transition to unknown label {to:?}"
                )));
            };
            if u >= v {
                return Err(Error::domain(format!(
                    "transition {from:?}->{to:?} does not go strictly up the skeleton"
                )));
            }
            if hom.source() != &group_vec[u] || hom.target() != &group_vec[v] {
                return Err(Error::domain(format!(
                    "transition {from:?}->{to:?} is declared {} -> {}, but the layers are {} -> {}",
                    hom.source(),
                    hom.target(),
                    group_vec[u],
                    group_vec[v]
                )));
            }
            transition_map.insert((u, v), hom);
        }
        for u in 0..labels.len() {
            for v in u + 1..labels.len() {
                if !transition_map.contains_key(&(u, v)) {
                    return Err(Error::domain(format!(
                        "missing transition {:?}->{:?}",
                        labels[u], labels[v]
                    )));
                }
            }
        }

        Ok(Bunch {
            labels,
            classes: class_vec,
            groups: group_vec,
            subgroups: subgroup_map,
            transitions: transition_map,
        })
    }

    /// Number of skeleton labels.
    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        false // from_parts rejects empty skeletons
    }

    /// Skeleton labels in increasing order; position 0 is the unit label.
    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, idx: usize) -> &str {
        &self.labels[idx]
    }

    /// The unit label `t` (the least label).
    pub fn t_label(&self) -> &str {
        &self.labels[0]
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::domain(format!("unknown label {label:?}")))
    }

    pub fn class(&self, idx: usize) -> LayerClass {
        self.classes[idx]
    }

    pub fn group(&self, idx: usize) -> &OGroupDesc {
        &self.groups[idx]
    }

    /// The designated subgroup `H` of a class-`I` layer.
    pub fn subgroup(&self, idx: usize) -> Option<&SubgroupSpec> {
        self.subgroups.get(&idx)
    }

    /// Positions of all labels of the given class, in skeleton order.
    pub fn labels_of_class(&self, class: LayerClass) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.classes[i] == class).collect()
    }

    /// The transition homomorphism from layer `u` to layer `v >= u`.
    ///
    /// The identity transition on each layer is implicit and returned for
    /// `u == v`; `u > v` is outside the direct system and a domain error.
    pub fn transition(&self, u: usize, v: usize) -> Result<OGroupHom> {
        if u > v || v >= self.len() {
            return Err(Error::domain(format!(
                "no transition from position {u} to position {v}"
            )));
        }
        if u == v {
            return Ok(OGroupHom::identity(self.groups[u].clone()));
        }
        Ok(self.transitions[&(u, v)].clone())
    }

    /// Parity of the assembled chain, read off the class of the unit label.
    pub fn parity(&self) -> Parity {
        match self.classes[0] {
            LayerClass::O => Parity::Odd,
            LayerClass::J => Parity::EvenNonIdempotent,
            LayerClass::I => Parity::EvenIdempotent,
        }
    }

    /// Full semantic validation.  Checks, with one report entry each:
    ///
    /// * `class-o-position/<label>` — only the least label carries class `o`;
    /// * `transition/<u>-><v>/...` — each transition is a monotone
    ///   homomorphism into its target group;
    /// * `composition/<u>-><v>-><w>` — transitions compose exactly;
    /// * `transition-into-h/<u>-><v>` — transitions into a class-`I` layer
    ///   land inside its subgroup `H`;
    /// * `class-j-discrete/<label>` — class-`J` layers are discretely
    ///   ordered (a `zlex` group);
    /// * `cover-collapse/<u>-><v>` — transitions leaving a class-`J` layer
    ///   collapse the lower cover of the unit.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::new();
        let k = self.len();

        // (a) class-o placement.
        let mut misplaced_o = false;
        for i in 1..k {
            if self.classes[i] == LayerClass::O {
                misplaced_o = true;
                report.fail(
                    format!("class-o-position/{}", self.labels[i]),
                    format!("label {} is class o but is not the least label", self.labels[i]),
                );
            }
        }
        if !misplaced_o {
            report.pass("class-o-position");
        }

        // (b) transitions are monotone homomorphisms; composition law.
        for (&(u, v), hom) in &self.transitions {
            let name = format!("transition/{}->{}", self.labels[u], self.labels[v]);
            report.absorb(&name, hom.validate());
        }
        for u in 0..k {
            for v in u + 1..k {
                for w in v + 1..k {
                    let name = format!(
                        "composition/{}->{}->{}",
                        self.labels[u], self.labels[v], self.labels[w]
                    );
                    let via = self.transitions[&(v, w)]
                        .compose(&self.transitions[&(u, v)])
                        .expect("endpoint groups checked at construction");
                    let direct = &self.transitions[&(u, w)];
                    report.record(name, &via == direct, || {
                        format!(
                            "composite matrix {} differs from direct matrix {}",
                            via.matrix(),
                            direct.matrix()
                        )
                    });
                }
            }
        }

        // (c) transitions into class-I layers stay inside H.
        for v in 0..k {
            if self.classes[v] != LayerClass::I {
                continue;
            }
            let h = &self.subgroups[&v];
            for u in 0..v {
                let name = format!(
                    "transition-into-h/{}->{}",
                    self.labels[u], self.labels[v]
                );
                match self.image_outside_subgroup_witness(u, v, h) {
                    None => report.pass(name),
                    Some(witness) => report.fail(name, witness),
                }
            }
        }

        // (d) class-J layers are discrete and their transitions collapse covers.
        for u in 0..k {
            if self.classes[u] != LayerClass::J {
                continue;
            }
            let name = format!("class-j-discrete/{}", self.labels[u]);
            match &self.groups[u] {
                OGroupDesc::IntLex(_) => report.pass(name),
                other => report.fail(
                    name,
                    format!("class-J layer {} has group {other}, which has no covers", self.labels[u]),
                ),
            }
            if !matches!(self.groups[u], OGroupDesc::IntLex(_)) {
                continue;
            }
            let down = self.groups[u]
                .cover(&self.groups[u].unit(), CoverDirection::Down)
                .expect("unit is a group element");
            for v in u + 1..k {
                let name = format!(
                    "cover-collapse/{}->{}",
                    self.labels[u], self.labels[v]
                );
                match self.transitions[&(u, v)].apply(&down) {
                    Ok(image) => {
                        let unit = self.groups[v].unit();
                        report.record(name, image == unit, || {
                            format!("unit cover {down} maps to {image}, not to the unit")
                        });
                    }
                    Err(e) => report.fail(name, e.to_string()),
                }
            }
        }

        report
    }

    /// Witness that the image of layer `u` under the `u -> v` transition is
    /// not contained in the subgroup `h` of layer `v`, if there is one.
    ///
    /// For `zlex` sources it suffices to test the images of the basis
    /// vectors (the image is their integer span).  A dense source is
    /// divisible, so its image can only sit inside the discrete `h` if it is
    /// zero; any non-zero matrix yields an explicit fraction that escapes.
    fn image_outside_subgroup_witness(
        &self,
        u: usize,
        v: usize,
        h: &SubgroupSpec,
    ) -> Option<String> {
        let hom = &self.transitions[&(u, v)];
        match &self.groups[u] {
            OGroupDesc::Trivial => None,
            OGroupDesc::IntLex(r) => {
                for j in 0..*r {
                    let mut coords = vec![crate::Int::zero(); *r];
                    coords[j] = crate::Int::one();
                    let basis = GroupElement::IntLex(coords);
                    match hom.apply(&basis) {
                        Ok(image) => {
                            if !h.contains(&image).expect("image is in the owner group") {
                                return Some(format!("{basis} maps to {image} outside H"));
                            }
                        }
                        Err(e) => return Some(e.to_string()),
                    }
                }
                None
            }
            OGroupDesc::Rational => {
                if hom.is_zero_map() {
                    return None;
                }
                let witness = self.dense_escape_witness(hom, h);
                Some(witness)
            }
        }
    }

    /// A concrete element of `Q` whose image escapes `h` under a non-zero
    /// homomorphism out of a dense layer.
    fn dense_escape_witness(&self, hom: &OGroupHom, h: &SubgroupSpec) -> String {
        let matrix = hom.matrix();
        let c = (0..matrix.rows())
            .map(|i| matrix[(i, 0)].clone())
            .find(|c| !c.is_zero())
            .expect("non-zero map");
        match hom.target() {
            OGroupDesc::Rational => {
                // h is qZ.  For q > 0, q/(2c) maps to q/2, strictly between
                // lattice points; for q = 0, 1 maps to c != 0.
                let q = match h.generators().first() {
                    Some(GroupElement::Rational(q)) => q.clone(),
                    _ => Rat::zero(),
                };
                if q.is_zero() {
                    let x = GroupElement::Rational(Rat::one());
                    let image = hom.apply(&x).expect("rational image");
                    format!("{x} maps to {image} outside H")
                } else {
                    let x = GroupElement::Rational(q / (Rat::from_integer(crate::Int::from(2)) * &c));
                    let image = hom.apply(&x).expect("rational image");
                    format!("{x} maps to {image} outside H")
                }
            }
            // zlex target: c/(2c) = 1/2 is a non-integral coordinate, so the
            // image is not even in the target group, let alone in H.
            _ => {
                let x = GroupElement::Rational(Rat::new(crate::Int::one(), crate::Int::from(2)) / &c);
                format!("{x} maps to a non-integral coordinate outside the layer group")
            }
        }
    }

    /// Structural equivalence up to renaming of labels.
    ///
    /// Skeletons are compared positionally (both are stored in increasing
    /// order), subgroups by canonical form, transitions by exact matrix
    /// equality.
    pub fn equivalent(&self, other: &Bunch) -> bool {
        if self.len() != other.len()
            || self.classes != other.classes
            || self.groups != other.groups
        {
            return false;
        }
        for i in 0..self.len() {
            match (self.subgroups.get(&i), other.subgroups.get(&i)) {
                (None, None) => {}
                (Some(a), Some(b)) => {
                    if !a.same_subgroup(b) {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        self.transitions
            .iter()
            .all(|(key, hom)| other.transitions[key].matrix() == hom.matrix())
    }
}
