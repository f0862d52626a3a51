//! Release gate: one test per shipped guarantee, each printing a single
//! `CRITERION <n> PASS` or `CRITERION <n> FAIL` line (run with
//! `cargo test --test acceptance -- --nocapture` to see them all).
//!
//! Frozen tables and closed forms in this file were worked out by hand and
//! double-checked against the independent exhaustive oracles; the library
//! must reproduce them, never the other way around.

use flec::bunch::LayerClass;
use flec::chain::{Chain, Mutation};
use flec::decompose::{decompose_chain, verify_decomposition_sampled};
use flec::finite_chain::{self, FiniteChain, SugiharaKind};
use flec::hom::{
    correspondence_check, enumerate_bunch_homs, materialized_extension, restrict_chain_hom,
    BunchHom,
};
use flec::ogroup::{OGroupDesc, OGroupHom};
use flec::oracle::{
    check_axioms, check_axioms_with, check_cover_lemma, SampleConfig, Sampler,
};
use flec::presets;
use flec::{Int, Rat, ValidationReport};
use std::collections::BTreeMap;
use std::time::Instant;

const SEED: u64 = 0xF1EC;

/// Frozen 3-element odd Sugihara table: index 0 is the dotted copy of the
/// top layer, 1 is the unit, 2 is the top layer's undotted element.
const OS3_TABLE: [[usize; 3]; 3] = [[0, 0, 0], [0, 1, 2], [0, 2, 2]];

fn gate(n: usize, body: impl FnOnce() -> Result<(), String>) {
    match body() {
        Ok(()) => println!("CRITERION {n} PASS"),
        Err(msg) => {
            println!("CRITERION {n} FAIL");
            panic!("criterion {n}: {msg}");
        }
    }
}

fn cfg(samples: usize) -> SampleConfig {
    SampleConfig::new(SEED).with_samples(samples).with_bound(50)
}

fn require(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn no_failures(report: &ValidationReport, what: &str) -> Result<(), String> {
    let failed: Vec<String> = report.failures().map(|c| c.name.clone()).collect();
    require(
        failed.is_empty(),
        format!("{what} reported failures: {failed:?}"),
    )
}

fn within(start: Instant, limit_secs: f64, what: &str) -> Result<(), String> {
    let elapsed = start.elapsed().as_secs_f64();
    require(
        elapsed < limit_secs,
        format!("{what} took {elapsed:.2}s, budget {limit_secs}s"),
    )
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

/// The five generated Sugihara chains with at most five elements.
fn small_sugihara_chains() -> Result<Vec<FiniteChain>, String> {
    [
        (SugiharaKind::Odd, 1),
        (SugiharaKind::Odd, 3),
        (SugiharaKind::Odd, 5),
        (SugiharaKind::Even, 2),
        (SugiharaKind::Even, 4),
    ]
    .into_iter()
    .map(|(kind, n)| finite_chain::generate_sugihara(kind, n).map_err(err))
    .collect()
}

fn first_coord(desc: &OGroupDesc, x: &flec::chain::ChainElement) -> Result<Rat, String> {
    let coords = desc.coords(&x.value).map_err(err)?;
    coords
        .first()
        .cloned()
        .ok_or_else(|| "expected a rank-one coordinate".to_string())
}

#[test]
fn criterion_01_three_element_odd_sugihara_table() {
    gate(1, || {
        let start = Instant::now();
        let built = finite_chain::materialize(&presets::odd_sugihara_3()).map_err(err)?;
        require(built.n() == 3, format!("expected 3 elements, got {}", built.n()))?;
        require(
            built.t() == 1 && built.f() == 1,
            format!("expected t = f = 1, got t = {}, f = {}", built.t(), built.f()),
        )?;
        let expected: Vec<Vec<usize>> = OS3_TABLE.iter().map(|r| r.to_vec()).collect();
        require(
            built.product_table() == expected.as_slice(),
            format!("product table mismatch: {:?}", built.product_table()),
        )?;
        // The residual complement swaps the top layer with its dotted copy
        // and fixes the unit.
        for (x, want) in [(0, 2), (1, 1), (2, 0)] {
            let got = built.negate(x).map_err(err)?;
            require(got == want, format!("negation of {x} gave {got}, expected {want}"))?;
        }
        within(start, 1.0, "three-element construction")
    });
}

#[test]
fn criterion_02_finite_roundtrips() {
    gate(2, || {
        let start = Instant::now();
        let cases = [
            (SugiharaKind::Odd, vec![1usize, 3, 5, 7, 9]),
            (SugiharaKind::Even, vec![2, 4, 6, 8]),
        ];
        for (kind, sizes) in cases {
            for n in sizes {
                let chain = finite_chain::generate_sugihara(kind, n).map_err(err)?;
                let bunch = decompose_chain(&chain).map_err(err)?;
                let rebuilt = finite_chain::materialize(&bunch).map_err(err)?;
                require(
                    rebuilt.isomorphic(&chain).is_some(),
                    format!("size-{n} {kind:?} chain does not survive the roundtrip"),
                )?;
                let again = decompose_chain(&rebuilt).map_err(err)?;
                require(
                    again == bunch,
                    format!("size-{n} {kind:?} bunch changes under rebuild-and-decompose"),
                )?;
            }
        }
        within(start, 5.0, "finite roundtrips")
    });
}

#[test]
fn criterion_03_axiom_suites() {
    gate(3, || {
        let start = Instant::now();
        let subjects = [
            ("doubling", presets::doubling()),
            ("even-integers", presets::even_integers()),
            ("even-sugihara-2", presets::even_sugihara_2()),
            ("lex-plane", presets::lex_plane()),
        ];
        for (name, bunch) in subjects {
            let report = check_axioms(&bunch, &cfg(10_000));
            no_failures(&report, name)?;
        }
        within(start, 10.0, "axiom suites")
    });
}

#[test]
fn criterion_04_cover_lemma() {
    gate(4, || {
        for (name, bunch) in [
            ("even-integers", presets::even_integers()),
            ("lex-plane", presets::lex_plane()),
        ] {
            let report = check_cover_lemma(&bunch, &cfg(1_000)).map_err(err)?;
            no_failures(&report, name)?;
        }
        Ok(())
    })
}

#[test]
fn criterion_05_even_integers_closed_forms() {
    gate(5, || {
        let bunch = presets::even_integers();
        let chain = Chain::new(&bunch);
        let desc = bunch.group(0).clone();
        require(
            chain.render(&chain.falsum()) == "t:[-1]",
            format!("falsum renders as {}", chain.render(&chain.falsum())),
        )?;
        let one = Rat::from_integer(Int::from(1));
        let config = cfg(1_000);
        let mut sampler = Sampler::new(&bunch, &config);
        for _ in 0..1_000 {
            let x = sampler.next_element();
            let y = sampler.next_element();
            let xv = first_coord(&desc, &x)?;
            let yv = first_coord(&desc, &y)?;

            let neg = chain.negate(&x).map_err(err)?;
            let nv = first_coord(&desc, &neg)?;
            require(
                nv == -xv.clone() - one.clone(),
                format!("negation of [{xv}] gave [{nv}], expected [{}]", -xv.clone() - one.clone()),
            )?;

            let res = chain.residuum(&x, &y).map_err(err)?;
            let rv = first_coord(&desc, &res)?;
            require(
                rv == yv.clone() - xv.clone(),
                format!(
                    "residuum [{xv}] -> [{yv}] gave [{rv}], expected [{}]",
                    yv.clone() - xv.clone()
                ),
            )?;
        }
        Ok(())
    })
}

#[test]
fn criterion_06_sampled_reconstruction_of_doubling() {
    gate(6, || {
        let bunch = presets::doubling();
        let (report, reconstructed) = verify_decomposition_sampled(&bunch, &cfg(1_000));
        no_failures(&report, "sampled reconstruction")?;
        let rebuilt = reconstructed.ok_or("no bunch was reconstructed")?;
        require(rebuilt.len() == 2, format!("skeleton size {}", rebuilt.len()))?;
        require(
            rebuilt.class(0) == LayerClass::O && rebuilt.class(1) == LayerClass::I,
            "reconstructed classes differ".to_string(),
        )?;
        require(
            rebuilt == bunch,
            "reconstructed bunch is not exactly the input".to_string(),
        )
    })
}

#[test]
fn criterion_07_hom_correspondence_counts() {
    gate(7, || {
        let start = Instant::now();
        let chains = small_sugihara_chains()?;
        for a in &chains {
            for b in &chains {
                let label = format!("{}->{}", a.n(), b.n());
                let fast = a.enumerate_homs(b).map_err(err)?;
                let oracle = a.enumerate_homs_exhaustive(b).map_err(err)?;
                require(
                    fast == oracle,
                    format!("{label}: pruned enumeration disagrees with the oracle"),
                )?;
                let src = decompose_chain(a).map_err(err)?;
                let tgt = decompose_chain(b).map_err(err)?;
                let bunch_homs = enumerate_bunch_homs(&src, &tgt).map_err(err)?;
                require(
                    bunch_homs.len() == oracle.len(),
                    format!(
                        "{label}: {} chain homs but {} bunch homs",
                        oracle.len(),
                        bunch_homs.len()
                    ),
                )?;
                for phi in &oracle {
                    let restricted = restrict_chain_hom(phi, a, b).map_err(err)?;
                    let back = materialized_extension(&restricted).map_err(err)?;
                    require(
                        back == *phi,
                        format!("{label}: extend(restrict({phi:?})) gave {back:?}"),
                    )?;
                }
                for bh in &bunch_homs {
                    let extended = materialized_extension(bh).map_err(err)?;
                    let again = restrict_chain_hom(&extended, a, b).map_err(err)?;
                    require(
                        again.same_mapping(bh),
                        format!("{label}: restrict(extend(-)) changed a bunch hom"),
                    )?;
                }
            }
        }
        // The named small pairs, through the packaged two-chain check.
        let os3 = finite_chain::generate_sugihara(SugiharaKind::Odd, 3).map_err(err)?;
        let es2 = finite_chain::generate_sugihara(SugiharaKind::Even, 2).map_err(err)?;
        for (x, y) in [(&os3, &os3), (&es2, &os3), (&os3, &es2)] {
            let report = correspondence_check(x, y).map_err(err)?;
            no_failures(&report, "packaged correspondence check")?;
        }
        within(start, 30.0, "hom correspondence")
    });
}

#[test]
fn criterion_08_functoriality() {
    gate(8, || {
        let chains = small_sugihara_chains()?;
        let k = chains.len();

        // Index maps and their bunch-side restrictions for every ordered pair.
        let mut homs: Vec<Vec<Vec<Vec<usize>>>> = vec![vec![Vec::new(); k]; k];
        let mut restricted: Vec<Vec<Vec<BunchHom>>> = vec![vec![Vec::new(); k]; k];
        for a in 0..k {
            for b in 0..k {
                let maps = chains[a].enumerate_homs(&chains[b]).map_err(err)?;
                for phi in &maps {
                    restricted[a][b]
                        .push(restrict_chain_hom(phi, &chains[a], &chains[b]).map_err(err)?);
                }
                homs[a][b] = maps;
            }
        }

        for chain in &chains {
            let identity: Vec<usize> = (0..chain.n()).collect();
            let lifted = restrict_chain_hom(&identity, chain, chain).map_err(err)?;
            let bunch = decompose_chain(chain).map_err(err)?;
            require(
                lifted.same_mapping(&BunchHom::identity_on(&bunch)),
                format!("identity on the size-{} chain does not lift to the identity", chain.n()),
            )?;
        }

        for a in 0..k {
            for b in 0..k {
                for c in 0..k {
                    for (phi, r_phi) in homs[a][b].iter().zip(&restricted[a][b]) {
                        for (psi, r_psi) in homs[b][c].iter().zip(&restricted[b][c]) {
                            let composed: Vec<usize> = phi.iter().map(|&i| psi[i]).collect();
                            let direct = restrict_chain_hom(&composed, &chains[a], &chains[c])
                                .map_err(err)?;
                            let staged = r_psi.compose(r_phi).map_err(err)?;
                            require(
                                direct.same_mapping(&staged),
                                format!(
                                    "lift of {psi:?} . {phi:?} differs from the composite of lifts"
                                ),
                            )?;
                        }
                    }
                }
            }
        }
        Ok(())
    })
}

#[test]
fn criterion_09_hom_validation_witnesses() {
    gate(9, || {
        let scale = |factor: i64| -> Result<BunchHom, String> {
            let map = |_: ()| {
                OGroupHom::from_i64_rows(OGroupDesc::IntLex(1), OGroupDesc::IntLex(1), &[&[factor]])
            };
            BunchHom::from_parts(
                presets::doubling(),
                presets::doubling(),
                BTreeMap::from([("t".into(), "t".into()), ("u".into(), "u".into())]),
                BTreeMap::from([
                    ("t".to_string(), map(()).map_err(err)?),
                    ("u".to_string(), map(()).map_err(err)?),
                ]),
            )
            .map_err(err)
        };

        let tripling = scale(3)?;
        no_failures(&tripling.validate(), "scaling by three on the doubling bunch")?;

        let halving_complement = scale(2)?;
        let report = halving_complement.validate();
        let complement_failure = report
            .failures()
            .find(|c| c.name.starts_with("complement-preserved"))
            .ok_or("scaling by two was not rejected on the subgroup-complement side")?;
        require(
            complement_failure.witness.is_some(),
            "complement rejection carries no witness".to_string(),
        )?;

        let swap_sign =
            OGroupHom::from_i64_rows(OGroupDesc::IntLex(2), OGroupDesc::IntLex(2), &[&[1, 0], &[0, -1]])
                .map_err(err)?;
        let report = swap_sign.validate();
        let monotone_failure = report
            .failures()
            .find(|c| c.name == "monotone")
            .ok_or("the sign-flipping matrix was not rejected as non-monotone")?;
        let witness = monotone_failure
            .witness
            .clone()
            .ok_or("monotonicity rejection carries no witness")?;
        require(
            witness.contains("positive") && witness.contains("negative"),
            format!("unexpected monotonicity witness: {witness}"),
        )
    })
}

/// Does the frozen three-element table survive under the given evaluator?
fn table_suite_fails(mutation: Option<Mutation>) -> bool {
    let bunch = presets::odd_sugihara_3();
    let chain = match mutation {
        Some(m) => Chain::with_mutation(&bunch, m),
        None => Chain::new(&bunch),
    };
    match finite_chain::materialize_with_elements(&chain) {
        Ok((built, _)) => {
            let expected: Vec<Vec<usize>> = OS3_TABLE.iter().map(|r| r.to_vec()).collect();
            built.product_table() != expected.as_slice() || built.t() != 1 || built.f() != 1
        }
        Err(_) => true,
    }
}

/// Do the sampled axiom suites stay clean under the given evaluator?
fn axiom_suite_fails(mutation: Option<Mutation>) -> bool {
    [presets::doubling(), presets::even_integers()]
        .iter()
        .any(|bunch| {
            let chain = match mutation {
                Some(m) => Chain::with_mutation(bunch, m),
                None => Chain::new(bunch),
            };
            check_axioms_with(&chain, &cfg(500)).failures().count() > 0
        })
}

/// Do the even-integer closed forms hold under the given evaluator?
fn closed_form_suite_fails(mutation: Option<Mutation>) -> bool {
    let bunch = presets::even_integers();
    let chain = match mutation {
        Some(m) => Chain::with_mutation(&bunch, m),
        None => Chain::new(&bunch),
    };
    if chain.render(&chain.falsum()) != "t:[-1]" {
        return true;
    }
    let desc = bunch.group(0).clone();
    let one = Rat::from_integer(Int::from(1));
    let config = cfg(200);
    let mut sampler = Sampler::new(&bunch, &config);
    for _ in 0..200 {
        let x = sampler.next_element();
        let y = sampler.next_element();
        let (Ok(xv), Ok(yv)) = (first_coord(&desc, &x), first_coord(&desc, &y)) else {
            return true;
        };
        let Ok(neg) = chain.negate(&x) else { return true };
        let Ok(res) = chain.residuum(&x, &y) else { return true };
        let (Ok(nv), Ok(rv)) = (first_coord(&desc, &neg), first_coord(&desc, &res)) else {
            return true;
        };
        if nv != -xv.clone() - one.clone() || rv != yv - xv {
            return true;
        }
    }
    false
}

#[test]
fn criterion_10_mutation_sensitivity() {
    gate(10, || {
        require(
            !table_suite_fails(None) && !axiom_suite_fails(None) && !closed_form_suite_fails(None),
            "baseline suites must pass without a planted defect".to_string(),
        )?;
        for mutation in [
            Mutation::DropDottingRule,
            Mutation::SwapLiftTieBreak,
            Mutation::SkipNegationCoverStep,
        ] {
            let caught = table_suite_fails(Some(mutation))
                || axiom_suite_fails(Some(mutation))
                || closed_form_suite_fails(Some(mutation));
            require(
                caught,
                format!("planted defect {mutation:?} slipped past every suite"),
            )?;
        }
        Ok(())
    })
}
