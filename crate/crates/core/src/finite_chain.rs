//! Finite chains as Cayley tables.
//!
//! A finite chain is stored as an `n x n` product table over indices
//! `0..n-1`, with the chain order being the index order (input tables must
//! be pre-sorted; this makes isomorphism checking canonical).  The module
//! validates the monoid/residuation axioms, classifies parity, computes
//! residua by table scan, enumerates homomorphisms between two finite
//! chains (with a brute-force reference implementation for cross-checking),
//! and materializes the chain of a bunch whose layer groups are all
//! trivial — the only bunches with finite chains, since a non-trivial
//! totally ordered group is infinite.

use crate::bunch::{Bunch, LayerClass, Parity};
use crate::chain::{Chain, ChainElement};
use crate::ogroup::{OGroupDesc, OGroupHom, SubgroupSpec};
use crate::report::ValidationReport;
use crate::{Error, Result};
use std::collections::BTreeMap;

/// A finite chain: product table, unit, and designated constant, over
/// elements `0..n-1` in increasing chain order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteChain {
    n: usize,
    product: Vec<Vec<usize>>,
    t: usize,
    f: usize,
}

/// Which family of trivial-group chains to generate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SugiharaKind {
    /// Odd size `2k+1`; the unit layer has no dotted partner.
    Odd,
    /// Even size `2k`; every layer contributes a dotted copy.
    Even,
}

impl FiniteChain {
    /// Build from parts, checking shape only (arity and index ranges);
    /// the algebraic axioms are the business of [`FiniteChain::validate`].
    pub fn new(n: usize, product: Vec<Vec<usize>>, t: usize, f: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::domain("a chain needs at least one element"));
        }
        if product.len() != n || product.iter().any(|row| row.len() != n) {
            return Err(Error::domain(format!(
                "product table must be {n} x {n}"
            )));
        }
        if let Some(&bad) = product.iter().flatten().find(|&&e| e >= n) {
            return Err(Error::domain(format!(
                "product entry {bad} out of range 0..{n}"
            )));
        }
        if t >= n || f >= n {
            return Err(Error::domain(format!(
                "constants t={t}, f={f} out of range 0..{n}"
            )));
        }
        Ok(FiniteChain { n, product, t, f })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn f(&self) -> usize {
        self.f
    }

    pub fn product(&self, x: usize, y: usize) -> usize {
        self.product[x][y]
    }

    pub fn product_table(&self) -> &[Vec<usize>] {
        &self.product
    }

    /// `x -> z`: the greatest `v` with `x.v <= z`, by table scan.
    pub fn residuum(&self, x: usize, z: usize) -> Result<usize> {
        if x >= self.n || z >= self.n {
            return Err(Error::domain(format!(
                "indices {x}, {z} out of range 0..{}",
                self.n
            )));
        }
        (0..self.n)
            .rev()
            .find(|&v| self.product[x][v] <= z)
            .ok_or(Error::NotResiduated { x, z })
    }

    /// `x' = x -> f`.
    pub fn negate(&self, x: usize) -> Result<usize> {
        self.residuum(x, self.f)
    }

    /// Check every defining axiom, reporting the first counterexample of
    /// each as a witness, and classify the chain's parity.
    ///
    /// The parity is `None` exactly when some check failed.  An even chain
    /// with a non-idempotent `f` never passes at finite size (its unit
    /// layer would be an infinite discretely ordered group), but the
    /// classification branch exists and such tables fail the axioms.
    pub fn validate(&self) -> (ValidationReport, Option<Parity>) {
        let mut report = ValidationReport::new();
        let n = self.n;
        let p = |x: usize, y: usize| self.product[x][y];

        let mut unit = None;
        for x in 0..n {
            if p(self.t, x) != x {
                unit = Some(x);
                break;
            }
        }
        report.record("unit", unit.is_none(), || {
            let x = unit.unwrap();
            format!("t.{x} = {} instead of {x}", p(self.t, x))
        });

        let mut comm = None;
        'comm: for x in 0..n {
            for y in x + 1..n {
                if p(x, y) != p(y, x) {
                    comm = Some((x, y));
                    break 'comm;
                }
            }
        }
        report.record("commutativity", comm.is_none(), || {
            let (x, y) = comm.unwrap();
            format!("{x}.{y} = {} but {y}.{x} = {}", p(x, y), p(y, x))
        });

        let mut assoc = None;
        'assoc: for x in 0..n {
            for y in 0..n {
                for z in 0..n {
                    if p(p(x, y), z) != p(x, p(y, z)) {
                        assoc = Some((x, y, z));
                        break 'assoc;
                    }
                }
            }
        }
        report.record("associativity", assoc.is_none(), || {
            let (x, y, z) = assoc.unwrap();
            format!(
                "({x}.{y}).{z} = {} but {x}.({y}.{z}) = {}",
                p(p(x, y), z),
                p(x, p(y, z))
            )
        });

        let mut mono = None;
        'mono: for x in 0..n {
            for y in x..n {
                for z in 0..n {
                    if p(x, z) > p(y, z) {
                        mono = Some((x, y, z));
                        break 'mono;
                    }
                }
            }
        }
        report.record("monotonicity", mono.is_none(), || {
            let (x, y, z) = mono.unwrap();
            format!("{x} <= {y} but {x}.{z} = {} > {} = {y}.{z}", p(x, z), p(y, z))
        });

        let mut total = None;
        'total: for x in 0..n {
            for z in 0..n {
                if (0..n).all(|v| p(x, v) > z) {
                    total = Some((x, z));
                    break 'total;
                }
            }
        }
        report.record("residuation-total", total.is_none(), || {
            let (x, z) = total.unwrap();
            format!("no v satisfies {x}.v <= {z}")
        });

        if total.is_some() {
            report.fail("involution", "residuation is not total");
            report.fail("parity", "residuation is not total");
            return (report, None);
        }

        let neg: Vec<usize> = (0..n)
            .map(|x| self.residuum(x, self.f).expect("totality checked"))
            .collect();
        let mut invol = None;
        for x in 0..n {
            if neg[neg[x]] != x {
                invol = Some(x);
                break;
            }
        }
        report.record("involution", invol.is_none(), || {
            let x = invol.unwrap();
            format!("{x}'' = {} instead of {x}", neg[neg[x]])
        });

        let parity = if self.f == self.t {
            Some(Parity::Odd)
        } else if self.t > 0 && self.f == self.t - 1 {
            if p(self.f, self.f) == self.f {
                Some(Parity::EvenIdempotent)
            } else {
                Some(Parity::EvenNonIdempotent)
            }
        } else {
            None
        };
        report.record("parity", parity.is_some(), || {
            format!(
                "f at index {} is neither t (odd) nor the lower cover of t = {} (even)",
                self.f, self.t
            )
        });

        if report.all_passed() {
            (report, parity)
        } else {
            (report, None)
        }
    }

    /// The unique candidate isomorphism between two finite chains.
    ///
    /// Order is index order on both sides, so the only order bijection is
    /// the identity; it is an isomorphism exactly when the tables and
    /// constants agree, and the returned map is the identity index map.
    pub fn isomorphic(&self, other: &FiniteChain) -> Option<Vec<usize>> {
        if self == other {
            Some((0..self.n).collect())
        } else {
            None
        }
    }

    fn residuum_table(&self) -> Result<Vec<Vec<usize>>> {
        (0..self.n)
            .map(|x| (0..self.n).map(|z| self.residuum(x, z)).collect())
            .collect()
    }

    /// First violated homomorphism condition of `map`, or `None` if `map`
    /// is a homomorphism from `self` to `other`: values in range, order
    /// preserved, products preserved, residua preserved, `t` and `f`
    /// preserved.
    pub fn hom_violation(
        &self,
        other: &FiniteChain,
        map: &[usize],
    ) -> Result<Option<String>> {
        if map.len() != self.n {
            return Err(Error::domain(format!(
                "map has {} entries for a {}-element chain",
                map.len(),
                self.n
            )));
        }
        if let Some(&v) = map.iter().find(|&&v| v >= other.n) {
            return Ok(Some(format!("value {v} outside the target chain")));
        }
        for x in 0..self.n.saturating_sub(1) {
            if map[x] > map[x + 1] {
                return Ok(Some(format!(
                    "order broken: {x} <= {} but {} > {}",
                    x + 1,
                    map[x],
                    map[x + 1]
                )));
            }
        }
        for x in 0..self.n {
            for y in 0..self.n {
                let lhs = map[self.product[x][y]];
                let rhs = other.product[map[x]][map[y]];
                if lhs != rhs {
                    return Ok(Some(format!(
                        "product broken at ({x},{y}): image {lhs} vs {rhs}"
                    )));
                }
            }
        }
        let res1 = self.residuum_table()?;
        let res2 = other.residuum_table()?;
        for x in 0..self.n {
            for z in 0..self.n {
                let lhs = map[res1[x][z]];
                let rhs = res2[map[x]][map[z]];
                if lhs != rhs {
                    return Ok(Some(format!(
                        "residuum broken at ({x},{z}): image {lhs} vs {rhs}"
                    )));
                }
            }
        }
        if map[self.t] != other.t {
            return Ok(Some(format!("unit maps to {}", map[self.t])));
        }
        if map[self.f] != other.f {
            return Ok(Some(format!("f maps to {}", map[self.f])));
        }
        Ok(None)
    }

    /// All homomorphisms into `other`, in lexicographic order of the index
    /// maps, found by order-respecting backtracking with product-constraint
    /// pruning.  Guarded to sources of at most 8 elements.
    pub fn enumerate_homs(&self, other: &FiniteChain) -> Result<Vec<Vec<usize>>> {
        if self.n > 8 {
            return Err(Error::SizeGuard(format!(
                "hom enumeration is limited to sources of at most 8 elements, got {}",
                self.n
            )));
        }
        let mut maps = Vec::new();
        let mut partial = Vec::with_capacity(self.n);
        self.search_homs(other, &mut partial, &mut maps)?;
        Ok(maps)
    }

    fn search_homs(
        &self,
        other: &FiniteChain,
        partial: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) -> Result<()> {
        let i = partial.len();
        if i == self.n {
            if self.hom_violation(other, partial)?.is_none() {
                out.push(partial.clone());
            }
            return Ok(());
        }
        let low = partial.last().copied().unwrap_or(0);
        for candidate in low..other.n {
            if i == self.t && candidate != other.t {
                continue;
            }
            if i == self.f && candidate != other.f {
                continue;
            }
            partial.push(candidate);
            // Prune on any product already fully inside the assigned prefix.
            let consistent = (0..=i).all(|x| {
                (0..=i).all(|y| {
                    let prod = self.product[x][y];
                    prod > i || partial[prod] == other.product[partial[x]][partial[y]]
                })
            });
            if consistent {
                self.search_homs(other, partial, out)?;
            }
            partial.pop();
        }
        Ok(())
    }

    /// Brute-force reference for [`FiniteChain::enumerate_homs`]: test all
    /// `n2^n1` index maps.  Guarded against large searches.
    pub fn enumerate_homs_exhaustive(&self, other: &FiniteChain) -> Result<Vec<Vec<usize>>> {
        let total = (other.n as u128).checked_pow(self.n as u32);
        match total {
            Some(count) if count <= 10_000_000 => {}
            _ => {
                return Err(Error::SizeGuard(format!(
                    "exhaustive enumeration of {}^{} maps refused",
                    other.n, self.n
                )))
            }
        }
        let mut maps = Vec::new();
        let mut current = vec![0usize; self.n];
        loop {
            if self.hom_violation(other, &current)?.is_none() {
                maps.push(current.clone());
            }
            // Odometer increment, most significant digit first so the
            // output is lexicographically sorted.
            let mut pos = self.n;
            loop {
                if pos == 0 {
                    return Ok(maps);
                }
                pos -= 1;
                current[pos] += 1;
                if current[pos] < other.n {
                    break;
                }
                current[pos] = 0;
            }
        }
    }
}

/// Materialize the chain of a bunch whose layers are all trivial groups,
/// returning the table together with the chain elements backing each index.
///
/// Uses the supplied evaluator, so planted [`crate::chain::Mutation`]s
/// propagate into the table.
pub fn materialize_with_elements(
    chain: &Chain<'_>,
) -> Result<(FiniteChain, Vec<ChainElement>)> {
    let bunch = chain.bunch();
    for idx in 0..bunch.len() {
        if bunch.group(idx) != &OGroupDesc::Trivial {
            return Err(Error::InfiniteChain {
                layer: bunch.label(idx).to_string(),
            });
        }
    }
    let mut elements = Vec::new();
    for idx in 0..bunch.len() {
        if bunch.class(idx) == LayerClass::I {
            elements.push(ChainElement::new(idx, crate::ogroup::GroupElement::Trivial, true));
        }
        elements.push(ChainElement::new(idx, crate::ogroup::GroupElement::Trivial, false));
    }
    let mut ordering_error = None;
    elements.sort_by(|a, b| match chain.compare(a, b) {
        Ok(ord) => ord,
        Err(e) => {
            ordering_error.get_or_insert(e);
            std::cmp::Ordering::Equal
        }
    });
    if let Some(e) = ordering_error {
        return Err(e);
    }

    let position = |x: &ChainElement| -> Result<usize> {
        elements
            .iter()
            .position(|e| e == x)
            .ok_or_else(|| Error::domain(format!("product left the enumerated carrier: {}", chain.render(x))))
    };
    let n = elements.len();
    let mut product = vec![vec![0usize; n]; n];
    for (i, x) in elements.iter().enumerate() {
        for (j, y) in elements.iter().enumerate() {
            product[i][j] = position(&chain.mul(x, y)?)?;
        }
    }
    let t = position(&chain.unit())?;
    let f = position(&chain.falsum())?;
    let finite = FiniteChain::new(n, product, t, f)?;
    Ok((finite, elements))
}

/// Materialize the chain of an all-trivial bunch.
pub fn materialize(bunch: &Bunch) -> Result<FiniteChain> {
    materialize_with_elements(&Chain::new(bunch)).map(|(chain, _)| chain)
}

/// The all-trivial bunch whose chain is the Sugihara chain of size `n`.
///
/// Odd `n = 2k+1` uses a class-`o` unit layer plus `k` class-`I` layers;
/// even `n = 2k` uses `k` class-`I` layers.  All transitions are the unique
/// maps between trivial groups.
pub fn sugihara_bunch(kind: SugiharaKind, n: usize) -> Result<Bunch> {
    let label_count = match kind {
        SugiharaKind::Odd => {
            if n.is_multiple_of(2) || n == 0 {
                return Err(Error::domain(format!(
                    "odd chains have odd size, got {n}"
                )));
            }
            n / 2 + 1
        }
        SugiharaKind::Even => {
            if n % 2 == 1 || n == 0 {
                return Err(Error::domain(format!(
                    "even chains have positive even size, got {n}"
                )));
            }
            n / 2
        }
    };
    let mut labels = Vec::with_capacity(label_count);
    let mut classes = BTreeMap::new();
    let mut groups = BTreeMap::new();
    let mut subgroups = BTreeMap::new();
    let mut transitions = BTreeMap::new();
    for i in 0..label_count {
        let label = if i == 0 { "t".to_string() } else { format!("u{i}") };
        let class = match kind {
            SugiharaKind::Odd if i == 0 => LayerClass::O,
            _ => LayerClass::I,
        };
        classes.insert(label.clone(), class);
        groups.insert(label.clone(), OGroupDesc::Trivial);
        if class == LayerClass::I {
            subgroups.insert(label.clone(), SubgroupSpec::trivial(OGroupDesc::Trivial));
        }
        labels.push(label);
    }
    for i in 0..label_count {
        for j in i + 1..label_count {
            transitions.insert(
                (labels[i].clone(), labels[j].clone()),
                OGroupHom::zero(OGroupDesc::Trivial, OGroupDesc::Trivial),
            );
        }
    }
    Bunch::from_parts(labels, classes, groups, subgroups, transitions)
}

/// Generate the Sugihara chain of size `n` directly as a table.
pub fn generate_sugihara(kind: SugiharaKind, n: usize) -> Result<FiniteChain> {
    materialize(&sugihara_bunch(kind, n)?)
}
