//! Canonical text formats for bunches, finite chains, bunch homomorphisms,
//! and chain-element literals.
//!
//! Every format is line-oriented and canonical: a document parses only if
//! its lines appear in the fixed order the serializer emits, and every
//! number is written in lowest terms without redundant signs or zeros.  As
//! a consequence, parsing then serializing changes a valid document only in
//! its whitespace, and serializing then parsing is the identity.
//!
//! * Bunch documents: a `skeleton` line, one `class` line and one `layer`
//!   line per label (in skeleton order), and one `transition` line for
//!   every pair `u->v` with `u` strictly below `v`.
//! * Finite-chain documents: `n`, `t`, and `f` header lines, then the
//!   product table as `n` rows of `n` indices.
//! * Homomorphism documents: `source` and `target` lines naming the bunch
//!   files, then `sigma` and `map` lines keyed by source label.
//! * Element literals: `layer:[coords]`, with `*` marking dotted elements,
//!   as in `u:*[2]` or `t:[]`.
//!
//! Errors are [`Error::Parse`] with one-based line and column numbers.

use crate::bunch::{Bunch, LayerClass};
use crate::chain::{Chain, ChainElement};
use crate::finite_chain::FiniteChain;
use crate::hom::BunchHom;
use crate::ogroup::{OGroupDesc, OGroupHom, SubgroupSpec};
use crate::{Error, Int, Rat, RatMatrix, Result};
use num_traits::One;
use std::collections::BTreeMap;

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Non-blank lines of a document, with their one-based line numbers.
struct Doc<'a> {
    lines: Vec<(usize, &'a str)>,
    pos: usize,
    last_line: usize,
}

impl<'a> Doc<'a> {
    fn new(input: &'a str) -> Self {
        let mut lines = Vec::new();
        let mut last_line = 0;
        for (i, raw) in input.lines().enumerate() {
            last_line = i + 1;
            if !raw.trim().is_empty() {
                lines.push((i + 1, raw));
            }
        }
        Doc {
            lines,
            pos: 0,
            last_line,
        }
    }

    fn next(&mut self, what: &str) -> Result<(usize, &'a str)> {
        match self.lines.get(self.pos) {
            Some(&entry) => {
                self.pos += 1;
                Ok(entry)
            }
            None => Err(perr(
                self.last_line + 1,
                1,
                format!("unexpected end of document: expected {what}"),
            )),
        }
    }

    fn expect_end(&mut self) -> Result<()> {
        match self.lines.get(self.pos) {
            None => Ok(()),
            Some(&(line, _)) => Err(perr(line, 1, "unexpected extra line")),
        }
    }
}

/// Whitespace-separated tokens of a line with their one-based columns.
fn tokens(raw: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in raw.char_indices() {
        if c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push((s + 1, &raw[s..i]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push((s + 1, &raw[s..]));
    }
    out
}

/// The token at `idx`, or a parse error pointing past the end of the line.
fn tok_at<'a>(
    toks: &[(usize, &'a str)],
    idx: usize,
    line: usize,
    raw: &str,
    what: &str,
) -> Result<(usize, &'a str)> {
    toks.get(idx)
        .copied()
        .ok_or_else(|| perr(line, raw.len() + 1, format!("expected {what}")))
}

fn expect_keyword(
    toks: &[(usize, &str)],
    idx: usize,
    line: usize,
    raw: &str,
    keyword: &str,
) -> Result<()> {
    let (col, tok) = tok_at(toks, idx, line, raw, &format!("keyword {keyword:?}"))?;
    if tok == keyword {
        Ok(())
    } else {
        Err(perr(
            line,
            col,
            format!("expected keyword {keyword:?}, found {tok:?}"),
        ))
    }
}

fn no_more_tokens(toks: &[(usize, &str)], idx: usize, line: usize) -> Result<()> {
    match toks.get(idx) {
        None => Ok(()),
        Some(&(col, tok)) => Err(perr(line, col, format!("unexpected token {tok:?}"))),
    }
}

/// A number written canonically: an optional minus sign, lowest terms, no
/// leading zeros (`-3/2`, `7`, `0`).
fn parse_rat(token: &str, line: usize, col: usize) -> Result<Rat> {
    let value: Rat = token
        .parse()
        .map_err(|_| perr(line, col, format!("malformed number {token:?}")))?;
    if value.to_string() != token {
        return Err(perr(
            line,
            col,
            format!("non-canonical number {token:?}: write it as {value}"),
        ));
    }
    Ok(value)
}

fn parse_usize(token: &str, line: usize, col: usize) -> Result<usize> {
    let value: usize = token
        .parse()
        .map_err(|_| perr(line, col, format!("malformed index {token:?}")))?;
    if value.to_string() != token {
        return Err(perr(
            line,
            col,
            format!("non-canonical index {token:?}: write it as {value}"),
        ));
    }
    Ok(value)
}

/// Character-level reader for bracketed values.  It sees the non-whitespace
/// characters of a line tail, each with its original column, so internal
/// spaces are tolerated and reported positions stay exact.
struct ValueText {
    chars: Vec<(usize, char)>,
    pos: usize,
    line: usize,
    end_col: usize,
}

impl ValueText {
    /// Reader over `raw[start..]`, where `start` is a byte offset.
    fn from_tail(line: usize, raw: &str, start: usize) -> Self {
        let chars = raw[start..]
            .char_indices()
            .filter(|(_, c)| !c.is_whitespace())
            .map(|(i, c)| (start + i + 1, c))
            .collect();
        ValueText {
            chars,
            pos: 0,
            line,
            end_col: raw.len() + 1,
        }
    }

    fn col(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|&(c, _)| c)
            .unwrap_or(self.end_col)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(found) if found == c => {
                self.pos += 1;
                Ok(())
            }
            Some(found) => Err(perr(
                self.line,
                self.col(),
                format!("expected {c:?}, found {found:?}"),
            )),
            None => Err(perr(self.line, self.col(), format!("expected {c:?}"))),
        }
    }

    /// The longest run of number characters starting here.
    fn number(&mut self) -> Result<Rat> {
        let start_col = self.col();
        let mut token = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_digit() || c == '-' || c == '/' {
                token.push(c);
                self.pos += 1;
            } else {
                break;
            }
        }
        if token.is_empty() {
            return Err(perr(self.line, start_col, "expected a number"));
        }
        parse_rat(&token, self.line, start_col)
    }

    /// `[a,b,...]`, possibly empty.
    fn vector(&mut self) -> Result<Vec<Rat>> {
        self.expect('[')?;
        let mut entries = Vec::new();
        if self.peek() == Some(']') {
            self.pos += 1;
            return Ok(entries);
        }
        loop {
            entries.push(self.number()?);
            match self.bump() {
                Some(',') => continue,
                Some(']') => return Ok(entries),
                Some(c) => {
                    return Err(perr(
                        self.line,
                        self.col().saturating_sub(1),
                        format!("expected ',' or ']', found {c:?}"),
                    ))
                }
                None => return Err(perr(self.line, self.col(), "unterminated vector")),
            }
        }
    }

    /// `[[...],[...]]` — a list of equal-length vectors, possibly empty.
    fn row_list(&mut self) -> Result<Vec<Vec<Rat>>> {
        let start_col = self.col();
        self.expect('[')?;
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        if self.peek() == Some(']') {
            self.pos += 1;
            return Ok(rows);
        }
        loop {
            let row = self.vector()?;
            if let Some(first) = rows.first() {
                if first.len() != row.len() {
                    return Err(perr(
                        self.line,
                        start_col,
                        format!(
                            "rows have differing lengths ({} vs {})",
                            first.len(),
                            row.len()
                        ),
                    ));
                }
            }
            rows.push(row);
            match self.bump() {
                Some(',') => continue,
                Some(']') => return Ok(rows),
                Some(c) => {
                    return Err(perr(
                        self.line,
                        self.col().saturating_sub(1),
                        format!("expected ',' or ']', found {c:?}"),
                    ))
                }
                None => return Err(perr(self.line, self.col(), "unterminated row list")),
            }
        }
    }

    fn expect_exhausted(&mut self) -> Result<()> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(perr(
                self.line,
                self.col(),
                format!("unexpected character {c:?}"),
            )),
        }
    }
}

fn rat_to_int(value: &Rat, line: usize, col: usize) -> Result<Int> {
    if value.denom().is_one() {
        Ok(value.numer().clone())
    } else {
        Err(perr(
            line,
            col,
            format!("expected an integer, found {value}"),
        ))
    }
}

fn check_label_token(label: &str, line: usize, col: usize) -> Result<()> {
    let ok = !label.is_empty()
        && label
            .chars()
            .all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '-');
    if ok {
        Ok(())
    } else {
        Err(perr(
            line,
            col,
            format!("invalid label {label:?}: use ASCII letters, digits, '_' or '-'"),
        ))
    }
}

fn parse_group_token(token: &str, line: usize, col: usize) -> Result<OGroupDesc> {
    let desc = if token == "trivial" {
        OGroupDesc::Trivial
    } else if token == "rational" {
        OGroupDesc::Rational
    } else if let Some(rank) = token.strip_prefix("zlex:") {
        let r = parse_usize(rank, line, col + 5)?;
        if r == 0 {
            return Err(perr(line, col, "zlex rank must be at least 1"));
        }
        OGroupDesc::IntLex(r)
    } else {
        return Err(perr(
            line,
            col,
            format!("unknown group descriptor {token:?}: use trivial, zlex:<r>, or rational"),
        ));
    };
    Ok(desc)
}

fn parse_class_token(token: &str, line: usize, col: usize) -> Result<LayerClass> {
    match token {
        "o" => Ok(LayerClass::O),
        "J" => Ok(LayerClass::J),
        "I" => Ok(LayerClass::I),
        _ => Err(perr(
            line,
            col,
            format!("unknown class {token:?}: use o, J, or I"),
        )),
    }
}

/// Render a matrix as a row list: `[]` when it has no rows, otherwise
/// `[[a,b],[c,d]]`.
pub fn render_matrix(matrix: &RatMatrix) -> String {
    let rows: Vec<String> = (0..matrix.rows())
        .map(|i| {
            let entries: Vec<String> = matrix.row(i).iter().map(|x| x.to_string()).collect();
            format!("[{}]", entries.join(","))
        })
        .collect();
    format!("[{}]", rows.join(","))
}

fn render_subgroup(sub: &SubgroupSpec) -> Result<String> {
    match sub.owner() {
        OGroupDesc::IntLex(_) => {
            let gens: Vec<String> = sub.generators().iter().map(|g| g.to_string()).collect();
            Ok(format!("gens:[{}]", gens.join(",")))
        }
        OGroupDesc::Rational => {
            let q = match sub.generators().first() {
                Some(g) => OGroupDesc::Rational.coords(g)?[0].clone(),
                None => Rat::from_integer(Int::from(0)),
            };
            Ok(format!("q:{q}"))
        }
        OGroupDesc::Trivial => Err(Error::domain(
            "the whole trivial subgroup has no written form; omit it".to_string(),
        )),
    }
}

/// Parse the subgroup tail of a layer line, starting at byte offset
/// `start` of `raw`.
fn parse_subgroup_tail(
    line: usize,
    raw: &str,
    start: usize,
    owner: &OGroupDesc,
) -> Result<SubgroupSpec> {
    let mut value = ValueText::from_tail(line, raw, start);
    let start_col = value.col();
    let sub = if value.peek() == Some('g') {
        for c in "gens:".chars() {
            value.expect(c)?;
        }
        let rank = match owner {
            OGroupDesc::IntLex(r) => *r,
            other => {
                return Err(perr(
                    line,
                    start_col,
                    format!("gens subgroups need a zlex layer, not {other}"),
                ))
            }
        };
        let rows = value.row_list()?;
        let mut generators = Vec::with_capacity(rows.len());
        for row in &rows {
            if row.len() != rank {
                return Err(perr(
                    line,
                    start_col,
                    format!("generators must have {rank} coordinates, found {}", row.len()),
                ));
            }
            let ints = row
                .iter()
                .map(|x| rat_to_int(x, line, start_col))
                .collect::<Result<Vec<Int>>>()?;
            generators.push(ints);
        }
        SubgroupSpec::lattice(owner.clone(), generators)
            .map_err(|e| perr(line, start_col, e.to_string()))?
    } else if value.peek() == Some('q') {
        for c in "q:".chars() {
            value.expect(c)?;
        }
        if !matches!(owner, OGroupDesc::Rational) {
            return Err(perr(
                line,
                start_col,
                format!("q subgroups need a rational layer, not {owner}"),
            ));
        }
        SubgroupSpec::cyclic(value.number()?)
    } else {
        return Err(perr(
            line,
            start_col,
            "expected a subgroup (gens:[...] or q:<number>)",
        ));
    };
    value.expect_exhausted()?;

    // Accepting only the canonical spelling keeps serialize-then-parse the
    // identity: re-render and compare to what was written.
    let canonical = render_subgroup(&sub).map_err(|e| perr(line, start_col, e.to_string()))?;
    let written: String = raw[start..].chars().filter(|c| !c.is_whitespace()).collect();
    if canonical != written {
        return Err(perr(
            line,
            start_col,
            format!("non-canonical subgroup: write it as {canonical}"),
        ));
    }
    Ok(sub)
}

/// Parse a matrix tail with known dimensions.
fn parse_matrix_tail(
    line: usize,
    raw: &str,
    start: usize,
    rows: usize,
    cols: usize,
    context: &str,
) -> Result<RatMatrix> {
    let mut value = ValueText::from_tail(line, raw, start);
    let start_col = value.col();
    let parsed = value.row_list()?;
    value.expect_exhausted()?;
    if parsed.len() != rows {
        return Err(perr(
            line,
            start_col,
            format!("{context} needs {rows} matrix row(s), found {}", parsed.len()),
        ));
    }
    if let Some(first) = parsed.first() {
        if first.len() != cols {
            return Err(perr(
                line,
                start_col,
                format!(
                    "{context} needs rows of {cols} entry(ies), found {}",
                    first.len()
                ),
            ));
        }
    }
    RatMatrix::from_rows(rows, cols, parsed).map_err(|e| perr(line, start_col, e.to_string()))
}

/// Parse a bunch document.
///
/// The layout is fixed: a `skeleton` line; `class <label> <o|J|I>` for each
/// label in skeleton order; `layer <label> <group> [H <subgroup>]` likewise
/// (`H` is required for class-`I` layers over nontrivial groups and
/// forbidden otherwise); `transition <u>-><v> <matrix>` for every pair with
/// `u` strictly below `v`, ordered by source then target.
pub fn parse_bunch(input: &str) -> Result<Bunch> {
    let mut doc = Doc::new(input);

    let (line, raw) = doc.next("a skeleton line")?;
    let toks = tokens(raw);
    expect_keyword(&toks, 0, line, raw, "skeleton")?;
    if toks.len() < 2 {
        return Err(perr(line, raw.len() + 1, "expected at least one label"));
    }
    let mut labels = Vec::new();
    for &(col, tok) in &toks[1..] {
        check_label_token(tok, line, col)?;
        if labels.iter().any(|l| l == tok) {
            return Err(perr(line, col, format!("duplicate label {tok:?}")));
        }
        labels.push(tok.to_string());
    }

    let mut classes = BTreeMap::new();
    for label in &labels {
        let (line, raw) = doc.next(&format!("a class line for {label}"))?;
        let toks = tokens(raw);
        expect_keyword(&toks, 0, line, raw, "class")?;
        let (col, tok) = tok_at(&toks, 1, line, raw, "a label")?;
        if tok != label {
            return Err(perr(
                line,
                col,
                format!("class lines must follow skeleton order: expected {label}, found {tok}"),
            ));
        }
        let (col, tok) = tok_at(&toks, 2, line, raw, "a class (o, J, or I)")?;
        classes.insert(label.clone(), parse_class_token(tok, line, col)?);
        no_more_tokens(&toks, 3, line)?;
    }

    let mut groups = BTreeMap::new();
    let mut subgroups = BTreeMap::new();
    for label in &labels {
        let (line, raw) = doc.next(&format!("a layer line for {label}"))?;
        let toks = tokens(raw);
        expect_keyword(&toks, 0, line, raw, "layer")?;
        let (col, tok) = tok_at(&toks, 1, line, raw, "a label")?;
        if tok != label {
            return Err(perr(
                line,
                col,
                format!("layer lines must follow skeleton order: expected {label}, found {tok}"),
            ));
        }
        let (col, tok) = tok_at(&toks, 2, line, raw, "a group descriptor")?;
        let group = parse_group_token(tok, line, col)?;

        let class = classes[label];
        let wants_subgroup = class == LayerClass::I && group != OGroupDesc::Trivial;
        match toks.get(3) {
            None => {
                if wants_subgroup {
                    return Err(perr(
                        line,
                        raw.len() + 1,
                        format!("class-I layer {label} over {group} needs an H subgroup"),
                    ));
                }
                if class == LayerClass::I {
                    subgroups.insert(label.clone(), SubgroupSpec::trivial(OGroupDesc::Trivial));
                }
            }
            Some(&(col, tok)) => {
                if tok != "H" {
                    return Err(perr(line, col, format!("expected \"H\", found {tok:?}")));
                }
                if !wants_subgroup {
                    return Err(perr(
                        line,
                        col,
                        format!("layer {label} cannot carry a subgroup (class {class}, group {group})"),
                    ));
                }
                let (sub_col, _) = tok_at(&toks, 4, line, raw, "a subgroup")?;
                let sub = parse_subgroup_tail(line, raw, sub_col - 1, &group)?;
                subgroups.insert(label.clone(), sub);
            }
        }
        groups.insert(label.clone(), group);
    }

    let mut transitions = BTreeMap::new();
    for u in 0..labels.len() {
        for v in u + 1..labels.len() {
            let pair = format!("{}->{}", labels[u], labels[v]);
            let (line, raw) = doc.next(&format!("a transition line for {pair}"))?;
            let toks = tokens(raw);
            expect_keyword(&toks, 0, line, raw, "transition")?;
            let (col, tok) = tok_at(&toks, 1, line, raw, "a label pair u->v")?;
            if tok != pair {
                return Err(perr(
                    line,
                    col,
                    format!(
                        "transition lines must cover every pair in order: expected {pair}, found {tok}"
                    ),
                ));
            }
            let (mat_col, _) = tok_at(&toks, 2, line, raw, "a matrix")?;
            let rows = groups[&labels[v]].dim();
            let cols = groups[&labels[u]].dim();
            let matrix = parse_matrix_tail(line, raw, mat_col - 1, rows, cols, &pair)?;
            let hom = OGroupHom::new(
                groups[&labels[u]].clone(),
                groups[&labels[v]].clone(),
                matrix,
            )
            .map_err(|e| perr(line, mat_col, e.to_string()))?;
            transitions.insert((labels[u].clone(), labels[v].clone()), hom);
        }
    }

    doc.expect_end()?;
    Bunch::from_parts(labels, classes, groups, subgroups, transitions)
}

/// Serialize a bunch in the canonical layout accepted by [`parse_bunch`].
pub fn serialize_bunch(bunch: &Bunch) -> String {
    let mut out = String::new();
    out.push_str("skeleton");
    for label in bunch.labels() {
        out.push(' ');
        out.push_str(label);
    }
    out.push('\n');
    for u in 0..bunch.len() {
        out.push_str(&format!("class {} {}\n", bunch.label(u), bunch.class(u)));
    }
    for u in 0..bunch.len() {
        out.push_str(&format!("layer {} {}", bunch.label(u), bunch.group(u)));
        if bunch.class(u) == LayerClass::I && bunch.group(u) != &OGroupDesc::Trivial {
            let sub = bunch.subgroup(u).expect("class-I layer has a subgroup");
            out.push_str(" H ");
            out.push_str(&render_subgroup(sub).expect("nontrivial groups render"));
        }
        out.push('\n');
    }
    for u in 0..bunch.len() {
        for v in u + 1..bunch.len() {
            let hom = bunch
                .transition(u, v)
                .expect("upward transitions always exist");
            out.push_str(&format!(
                "transition {}->{} {}\n",
                bunch.label(u),
                bunch.label(v),
                render_matrix(hom.matrix())
            ));
        }
    }
    out
}

/// Parse a finite-chain document: `n <count>`, `t <idx>`, `f <idx>`, then
/// `n` rows of `n` whitespace-separated product indices.
pub fn parse_finite_chain(input: &str) -> Result<FiniteChain> {
    fn header(doc: &mut Doc<'_>, keyword: &str) -> Result<usize> {
        let (line, raw) = doc.next(&format!("a {keyword:?} line"))?;
        let toks = tokens(raw);
        expect_keyword(&toks, 0, line, raw, keyword)?;
        let (col, tok) = tok_at(&toks, 1, line, raw, "an index")?;
        let value = parse_usize(tok, line, col)?;
        no_more_tokens(&toks, 2, line)?;
        Ok(value)
    }
    let mut doc = Doc::new(input);
    let n = header(&mut doc, "n")?;
    let t = header(&mut doc, "t")?;
    let f = header(&mut doc, "f")?;
    if n == 0 {
        return Err(perr(1, 1, "a chain needs at least one element"));
    }
    for (name, value) in [("t", t), ("f", f)] {
        if value >= n {
            return Err(perr(1, 1, format!("{name}={value} is outside 0..{n}")));
        }
    }

    let mut product = Vec::with_capacity(n);
    for _ in 0..n {
        let (line, raw) = doc.next("a product table row")?;
        let toks = tokens(raw);
        if toks.len() != n {
            return Err(perr(
                line,
                toks.get(n).map(|&(c, _)| c).unwrap_or(raw.len() + 1),
                format!("product rows need exactly {n} entries, found {}", toks.len()),
            ));
        }
        let mut row = Vec::with_capacity(n);
        for &(col, tok) in &toks {
            let entry = parse_usize(tok, line, col)?;
            if entry >= n {
                return Err(perr(
                    line,
                    col,
                    format!("product entry {entry} is outside 0..{n}"),
                ));
            }
            row.push(entry);
        }
        product.push(row);
    }
    doc.expect_end()?;
    FiniteChain::new(n, product, t, f)
}

/// Serialize a finite chain in the canonical layout accepted by
/// [`parse_finite_chain`].
pub fn serialize_finite_chain(chain: &FiniteChain) -> String {
    let mut out = format!("n {}\nt {}\nf {}\n", chain.n(), chain.t(), chain.f());
    for row in chain.product_table() {
        let entries: Vec<String> = row.iter().map(|x| x.to_string()).collect();
        out.push_str(&entries.join(" "));
        out.push('\n');
    }
    out
}

/// A bunch-homomorphism document: the two bunch files it refers to, the
/// skeleton map, and one matrix per source label.
///
/// The document alone cannot know the layer groups, so matrices are kept as
/// raw rows; [`HomDocument::resolve`] builds the checked [`BunchHom`] once
/// the two bunches are loaded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomDocument {
    pub source_path: String,
    pub target_path: String,
    pub sigma: BTreeMap<String, String>,
    pub maps: BTreeMap<String, Vec<Vec<Rat>>>,
}

/// Parse a homomorphism document: `source <path>`, `target <path>`, then
/// `sigma <u>-><v>` lines and `map <u> <matrix>` lines, each block in
/// increasing label order.
pub fn parse_hom_document(input: &str) -> Result<HomDocument> {
    fn path_line(doc: &mut Doc<'_>, keyword: &str) -> Result<String> {
        let (line, raw) = doc.next(&format!("a {keyword:?} line"))?;
        let toks = tokens(raw);
        expect_keyword(&toks, 0, line, raw, keyword)?;
        let (col, _) = tok_at(&toks, 1, line, raw, "a file path")?;
        Ok(raw[col - 1..].trim_end().to_string())
    }
    let mut doc = Doc::new(input);
    let source_path = path_line(&mut doc, "source")?;
    let target_path = path_line(&mut doc, "target")?;

    let mut sigma: BTreeMap<String, String> = BTreeMap::new();
    let mut maps: BTreeMap<String, Vec<Vec<Rat>>> = BTreeMap::new();
    let mut saw_map = false;
    while let Some(&(line, raw)) = doc.lines.get(doc.pos) {
        doc.pos += 1;
        let toks = tokens(raw);
        let (kw_col, keyword) = tok_at(&toks, 0, line, raw, "sigma or map")?;
        match keyword {
            "sigma" => {
                if saw_map {
                    return Err(perr(line, kw_col, "sigma lines must precede map lines"));
                }
                let (col, tok) = tok_at(&toks, 1, line, raw, "a label pair u->v")?;
                let (from, to) = tok.split_once("->").ok_or_else(|| {
                    perr(line, col, format!("expected u->v, found {tok:?}"))
                })?;
                check_label_token(from, line, col)?;
                check_label_token(to, line, col + from.len() + 2)?;
                if let Some(last) = sigma.keys().next_back() {
                    if from <= last.as_str() {
                        return Err(perr(
                            line,
                            col,
                            format!("sigma lines must be in increasing label order ({from:?} after {last:?})"),
                        ));
                    }
                }
                sigma.insert(from.to_string(), to.to_string());
                no_more_tokens(&toks, 2, line)?;
            }
            "map" => {
                saw_map = true;
                let (col, tok) = tok_at(&toks, 1, line, raw, "a label")?;
                check_label_token(tok, line, col)?;
                if let Some(last) = maps.keys().next_back() {
                    if tok <= last.as_str() {
                        return Err(perr(
                            line,
                            col,
                            format!("map lines must be in increasing label order ({tok:?} after {last:?})"),
                        ));
                    }
                }
                let (mat_col, _) = tok_at(&toks, 2, line, raw, "a matrix")?;
                let mut value = ValueText::from_tail(line, raw, mat_col - 1);
                let rows = value.row_list()?;
                value.expect_exhausted()?;
                maps.insert(tok.to_string(), rows);
            }
            other => {
                return Err(perr(
                    line,
                    kw_col,
                    format!("expected sigma or map, found {other:?}"),
                ))
            }
        }
    }
    Ok(HomDocument {
        source_path,
        target_path,
        sigma,
        maps,
    })
}

/// Serialize a homomorphism document in the canonical layout accepted by
/// [`parse_hom_document`].
pub fn serialize_hom_document(doc: &HomDocument) -> String {
    let mut out = format!("source {}\ntarget {}\n", doc.source_path, doc.target_path);
    for (from, to) in &doc.sigma {
        out.push_str(&format!("sigma {from}->{to}\n"));
    }
    for (label, rows) in &doc.maps {
        let rendered: Vec<String> = rows
            .iter()
            .map(|row| {
                let entries: Vec<String> = row.iter().map(|x| x.to_string()).collect();
                format!("[{}]", entries.join(","))
            })
            .collect();
        out.push_str(&format!("map {label} [{}]\n", rendered.join(",")));
    }
    out
}

impl HomDocument {
    /// Capture an existing homomorphism as a document.
    pub fn from_bunch_hom(
        hom: &BunchHom,
        source_path: impl Into<String>,
        target_path: impl Into<String>,
    ) -> Self {
        let source = hom.source();
        let target = hom.target();
        let mut sigma = BTreeMap::new();
        let mut maps = BTreeMap::new();
        for u in 0..source.len() {
            sigma.insert(
                source.label(u).to_string(),
                target.label(hom.skeleton_image(u)).to_string(),
            );
            let matrix = hom.layer_map(u).matrix();
            let rows = (0..matrix.rows()).map(|i| matrix.row(i).to_vec()).collect();
            maps.insert(source.label(u).to_string(), rows);
        }
        HomDocument {
            source_path: source_path.into(),
            target_path: target_path.into(),
            sigma,
            maps,
        }
    }

    /// Check the document against two loaded bunches and build the
    /// homomorphism it describes.
    pub fn resolve(&self, source: &Bunch, target: &Bunch) -> Result<BunchHom> {
        let mut layer_maps = BTreeMap::new();
        for (label, rows) in &self.maps {
            let u = source.index_of(label)?;
            let image = self.sigma.get(label).ok_or_else(|| {
                Error::domain(format!("map given for {label}, but no sigma line names it"))
            })?;
            let v = target.index_of(image)?;
            let source_group = source.group(u).clone();
            let target_group = target.group(v).clone();
            let matrix =
                RatMatrix::from_rows(target_group.dim(), source_group.dim(), rows.clone())
                    .map_err(|e| {
                        Error::domain(format!(
                            "map for {label} must be {}x{}: {e}",
                            target_group.dim(),
                            source_group.dim()
                        ))
                    })?;
            layer_maps.insert(
                label.clone(),
                OGroupHom::new(source_group, target_group, matrix)?,
            );
        }
        BunchHom::from_parts(
            source.clone(),
            target.clone(),
            self.sigma.clone(),
            layer_maps,
        )
    }
}

/// Parse an element literal `layer:[coords]` / `layer:*[coords]` against a
/// bunch, e.g. `u:[1,2]`, `u:*[2]`, `t:[]`, `u:[3/2]`.
pub fn parse_element(bunch: &Bunch, text: &str) -> Result<ChainElement> {
    let (label, rest) = text.split_once(':').ok_or_else(|| {
        perr(1, text.len() + 1, "expected an element literal layer:[coords]")
    })?;
    check_label_token(label, 1, 1)?;
    let layer = bunch
        .index_of(label)
        .map_err(|_| perr(1, 1, format!("unknown layer label {label:?}")))?;

    let mut offset = label.len() + 1;
    let dotted = rest.starts_with('*');
    if dotted {
        offset += 1;
    }
    let mut value = ValueText::from_tail(1, text, offset);
    let coords = value.vector()?;
    value.expect_exhausted()?;

    let group = bunch.group(layer);
    if coords.len() != group.dim() {
        return Err(perr(
            1,
            offset + 1,
            format!(
                "layer {label} ({group}) takes {} coordinate(s), found {}",
                group.dim(),
                coords.len()
            ),
        ));
    }
    let element = group
        .element_from_coords(&coords)
        .map_err(|e| perr(1, offset + 1, e.to_string()))?;
    Ok(ChainElement::new(layer, element, dotted))
}

/// Render a chain element in the literal syntax [`parse_element`] accepts.
pub fn render_element(bunch: &Bunch, x: &ChainElement) -> String {
    Chain::new(bunch).render(x)
}
