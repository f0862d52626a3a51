//! Ready-made bunches used throughout the test suites and handy as CLI
//! starting points.
//!
//! Every preset is valid by construction ([`crate::bunch::Bunch::validate`]
//! passes); the variant constructors ([`doubling_variant`]) exist to build
//! controlled *invalid* neighbours of a valid bunch.

use crate::bunch::{Bunch, LayerClass};
use crate::ogroup::{OGroupDesc, OGroupHom, SubgroupSpec};
use std::collections::BTreeMap;

fn build(
    layers: &[(&str, LayerClass, OGroupDesc)],
    subgroups: Vec<(&str, SubgroupSpec)>,
    transitions: Vec<(&str, &str, OGroupHom)>,
) -> Bunch {
    let labels = layers.iter().map(|(l, _, _)| l.to_string()).collect();
    let classes = layers
        .iter()
        .map(|(l, c, _)| (l.to_string(), *c))
        .collect::<BTreeMap<_, _>>();
    let groups = layers
        .iter()
        .map(|(l, _, g)| (l.to_string(), g.clone()))
        .collect::<BTreeMap<_, _>>();
    let subgroups = subgroups
        .into_iter()
        .map(|(l, h)| (l.to_string(), h))
        .collect::<BTreeMap<_, _>>();
    let transitions = transitions
        .into_iter()
        .map(|(a, b, h)| ((a.to_string(), b.to_string()), h))
        .collect::<BTreeMap<_, _>>();
    Bunch::from_parts(labels, classes, groups, subgroups, transitions)
        .expect("preset bunches are well-formed")
}

/// The three-element odd chain `•u < t < u`: a trivial layer at `t` and a
/// trivial class-I layer with `H` the whole (one-element) group.
pub fn odd_sugihara_3() -> Bunch {
    build(
        &[
            ("t", LayerClass::O, OGroupDesc::Trivial),
            ("u", LayerClass::I, OGroupDesc::Trivial),
        ],
        vec![("u", SubgroupSpec::trivial(OGroupDesc::Trivial))],
        vec![("t", "u", OGroupHom::zero(OGroupDesc::Trivial, OGroupDesc::Trivial))],
    )
}

/// The two-element chain `f < t` with `f.f = f`: one trivial class-I layer.
pub fn even_sugihara_2() -> Bunch {
    build(
        &[("t", LayerClass::I, OGroupDesc::Trivial)],
        vec![("t", SubgroupSpec::trivial(OGroupDesc::Trivial))],
        vec![],
    )
}

/// The integers as a chain: a single discrete class-J layer, `f` the lower
/// cover of `t`.
pub fn even_integers() -> Bunch {
    build(&[("t", LayerClass::J, OGroupDesc::IntLex(1))], vec![], vec![])
}

/// `Z^2` under the lexicographic order as a single class-J layer.
pub fn lex_plane() -> Bunch {
    build(&[("t", LayerClass::J, OGroupDesc::IntLex(2))], vec![], vec![])
}

/// Two integer layers glued by the doubling map: `t` carries `Z`, the upper
/// class-I layer carries `Z` with `H = 2Z`, and the transition multiplies by
/// two, so every `x` upstairs is flanked by dotted copies of the evens.
pub fn doubling() -> Bunch {
    doubling_variant(2)
}

/// [`doubling`] with the transition replaced by multiplication by `scale`.
///
/// `scale = 2` is the canonical preset; other scales are deliberately
/// imperfect neighbours (`1` violates the class-I image condition, `3`
/// breaks evenness of the image, `4` is valid but maps onto `4Z`).
pub fn doubling_variant(scale: i64) -> Bunch {
    doubling_custom("t", "u", scale)
}

/// [`doubling`] with custom labels, for label-invariance tests.
pub fn doubling_relabelled(lo: &str, hi: &str) -> Bunch {
    doubling_custom(lo, hi, 2)
}

fn doubling_custom(lo: &str, hi: &str, scale: i64) -> Bunch {
    build(
        &[
            (lo, LayerClass::O, OGroupDesc::IntLex(1)),
            (hi, LayerClass::I, OGroupDesc::IntLex(1)),
        ],
        vec![(hi, SubgroupSpec::lattice_i64(1, &[&[2]]).expect("rank 1 lattice"))],
        vec![(
            lo,
            hi,
            OGroupHom::from_i64_rows(OGroupDesc::IntLex(1), OGroupDesc::IntLex(1), &[&[scale]])
                .expect("1x1 matrix"),
        )],
    )
}

/// A discrete rank-2 layer at `t` acting on an integer class-I layer by
/// projection onto the first coordinate.  Shows that transitions out of a
/// class-J layer can be non-zero: they only have to kill the last
/// coordinate (the direction of covers).
pub fn lex_plane_over_line() -> Bunch {
    build(
        &[
            ("t", LayerClass::J, OGroupDesc::IntLex(2)),
            ("u", LayerClass::I, OGroupDesc::IntLex(1)),
        ],
        vec![("u", SubgroupSpec::lattice_i64(1, &[&[1]]).expect("rank 1 lattice"))],
        vec![(
            "t",
            "u",
            OGroupHom::from_i64_rows(OGroupDesc::IntLex(2), OGroupDesc::IntLex(1), &[&[1, 0]])
                .expect("1x2 matrix"),
        )],
    )
}

/// A dense class-I layer over a one-point unit layer: the rationals with
/// dotted copies of the integers, sitting above the single element `t`.
pub fn dense_over_point() -> Bunch {
    build(
        &[
            ("t", LayerClass::O, OGroupDesc::Trivial),
            ("u", LayerClass::I, OGroupDesc::Rational),
        ],
        vec![("u", SubgroupSpec::cyclic(crate::Rat::from_integer(crate::Int::from(1))))],
        vec![("t", "u", OGroupHom::zero(OGroupDesc::Trivial, OGroupDesc::Rational))],
    )
}

/// All named presets, for sweep-style tests.
pub fn all() -> Vec<(&'static str, Bunch)> {
    vec![
        ("odd-sugihara-3", odd_sugihara_3()),
        ("even-sugihara-2", even_sugihara_2()),
        ("even-integers", even_integers()),
        ("lex-plane", lex_plane()),
        ("doubling", doubling()),
        ("lex-plane-over-line", lex_plane_over_line()),
        ("dense-over-point", dense_over_point()),
    ]
}
