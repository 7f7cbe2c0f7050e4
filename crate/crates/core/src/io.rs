//! Game files and result documents.
//!
//! # Game file
//!
//! ```text
//! # comment lines start with '#'
//! 2 3
//! 0 1/2 -1
//! 1.25 0 2
//! ```
//!
//! Two positive integers (rows, cols) followed by `rows * cols` payoffs in
//! row-major order, separated by any whitespace. Payoffs are integers, exact
//! decimals or `p/q` fractions.
//!
//! # Result document
//!
//! JSON with a fixed key order, schema version [`SCHEMA_VERSION`]. Indices are
//! 0-based; rationals are canonical `p/q` strings, or plain integers when the
//! denominator is one. The text rendering uses 1-based `r`/`c` labels.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::dominance::DominanceMode;
use crate::equilibrium::MixedStrategyPair;
use crate::error::{Error, Result};
use crate::game::{ActionProduct, ZeroSumGame};
use crate::rational::{format_rational, parse_rational, Rational};
use crate::verify::{CampaignReport, NashVerdict, TheoremVerdict};

pub const SCHEMA_VERSION: &str = "1";

struct Token<'a> {
    text: &'a str,
    line: usize,
    column: usize,
}

fn tokens(text: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    for (ln, line) in text.lines().enumerate() {
        if line.trim_start().starts_with('#') {
            continue;
        }
        let mut rest = line;
        let mut offset = 0;
        while let Some(start) = rest.find(|c: char| !c.is_whitespace()) {
            let tail = &rest[start..];
            let len = tail.find(char::is_whitespace).unwrap_or(tail.len());
            out.push(Token {
                text: &tail[..len],
                line: ln + 1,
                column: line[..offset + start].chars().count() + 1,
            });
            offset += start + len;
            rest = &tail[len..];
        }
    }
    out
}

fn parse_error(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse { line, column, message: message.into() }
}

fn header_dim(token: Option<&Token<'_>>, what: &str) -> Result<usize> {
    let token = token.ok_or_else(|| parse_error(1, 1, format!("missing {what} count in header")))?;
    match token.text.parse::<usize>() {
        Ok(n) if n > 0 => Ok(n),
        _ => Err(parse_error(
            token.line,
            token.column,
            format!("{what} count must be a positive integer, got `{}`", token.text),
        )),
    }
}

/// Parses the plain-text game format.
pub fn parse_game(text: &str) -> Result<ZeroSumGame> {
    let toks = tokens(text);
    let rows = header_dim(toks.first(), "row")?;
    let cols = header_dim(toks.get(1), "column")?;
    let expected = rows
        .checked_mul(cols)
        .ok_or_else(|| parse_error(toks[0].line, toks[0].column, "game dimensions overflow"))?;
    let body = &toks[2..];
    if body.len() > expected {
        let extra = &body[expected];
        return Err(parse_error(
            extra.line,
            extra.column,
            format!("expected {expected} payoff entries for a {rows}x{cols} game, found {}", body.len()),
        ));
    }
    if body.len() < expected {
        let last = toks.last().expect("header tokens exist");
        return Err(parse_error(
            last.line,
            last.column + last.text.chars().count(),
            format!("expected {expected} payoff entries for a {rows}x{cols} game, found {}", body.len()),
        ));
    }
    let entries = body
        .iter()
        .map(|t| parse_rational(t.text).map_err(|msg| parse_error(t.line, t.column, msg)))
        .collect::<Result<Vec<Rational>>>()?;
    ZeroSumGame::new(rows, cols, entries)
}

/// Writes a game in the format read by [`parse_game`].
pub fn format_game(game: &ZeroSumGame) -> String {
    let mut out = format!("{} {}\n", game.rows(), game.cols());
    for r in 0..game.rows() {
        let line: Vec<String> = game.row(r).iter().map(format_rational).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductDoc {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
}

impl From<&ActionProduct> for ProductDoc {
    fn from(p: &ActionProduct) -> Self {
        ProductDoc { rows: p.row_set().to_vec(), cols: p.col_set().to_vec() }
    }
}

impl ProductDoc {
    /// `{r1,r2} x {c1,c2,c3}` with 1-based labels.
    pub fn label(&self) -> String {
        let join = |prefix: char, set: &[usize]| {
            set.iter().map(|i| format!("{prefix}{}", i + 1)).collect::<Vec<_>>().join(",")
        };
        format!("{{{}}} x {{{}}}", join('r', &self.rows), join('c', &self.cols))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StrategiesDoc {
    pub row: Vec<String>,
    pub col: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationDoc {
    pub claim: String,
    pub first: ProductDoc,
    pub second: ProductDoc,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessDoc {
    pub first: usize,
    pub second: usize,
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerdictDoc {
    pub check: String,
    pub passed: bool,
    pub violations: Vec<ViolationDoc>,
    pub witnesses: Vec<WitnessDoc>,
}

impl VerdictDoc {
    pub fn simple(check: &str, passed: bool) -> Self {
        VerdictDoc { check: check.to_string(), passed, violations: Vec::new(), witnesses: Vec::new() }
    }

    pub fn from_theorem(v: &TheoremVerdict) -> Self {
        VerdictDoc {
            check: format!("theorem1:{}", v.saddles.mode),
            passed: v.passed(),
            violations: v
                .violations
                .iter()
                .map(|x| ViolationDoc {
                    claim: x.claim.to_string(),
                    first: (&x.first).into(),
                    second: (&x.second).into(),
                    detail: x.detail.clone(),
                })
                .collect(),
            witnesses: v
                .witnesses
                .iter()
                .map(|w| WitnessDoc {
                    first: w.first,
                    second: w.second,
                    row_perm: w.witness.row_perm.clone(),
                    col_perm: w.witness.col_perm.clone(),
                })
                .collect(),
        }
    }

    pub fn from_nash(v: &NashVerdict) -> Self {
        let violations = v
            .saddles
            .iter()
            .filter(|s| !(s.value_matches && s.embedded_is_nash))
            .map(|s| ViolationDoc {
                claim: "nash-consistency".to_string(),
                first: (&s.saddle).into(),
                second: (&s.saddle).into(),
                detail: format!(
                    "subgame value {} vs game value {}, embedded is_nash = {}",
                    format_rational(&s.subgame_value),
                    format_rational(&v.value),
                    s.embedded_is_nash
                ),
            })
            .collect();
        VerdictDoc { check: "nash-consistency".to_string(), passed: v.passed(), violations, witnesses: Vec::new() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub schema_version: String,
    pub command: String,
    pub game_digest: String,
    pub rows: usize,
    pub cols: usize,
    pub mode: Option<String>,
    pub saddles: Vec<ProductDoc>,
    pub value: Option<String>,
    pub strategies: Option<StrategiesDoc>,
    pub verdicts: Vec<VerdictDoc>,
}

impl ResultDocument {
    pub fn new(command: &str, game: &ZeroSumGame) -> Self {
        ResultDocument {
            schema_version: SCHEMA_VERSION.to_string(),
            command: command.to_string(),
            game_digest: game.digest(),
            rows: game.rows(),
            cols: game.cols(),
            mode: None,
            saddles: Vec::new(),
            value: None,
            strategies: None,
            verdicts: Vec::new(),
        }
    }

    pub fn with_mode(mut self, mode: DominanceMode) -> Self {
        self.mode = Some(mode.name().to_string());
        self
    }

    pub fn with_saddles<'a>(mut self, saddles: impl IntoIterator<Item = &'a ActionProduct>) -> Self {
        self.saddles = saddles.into_iter().map(ProductDoc::from).collect();
        self
    }

    pub fn with_value(mut self, value: &Rational) -> Self {
        self.value = Some(format_rational(value));
        self
    }

    pub fn with_equilibrium(self, eq: &MixedStrategyPair) -> Self {
        let mut doc = self.with_value(&eq.value);
        doc.strategies = Some(StrategiesDoc {
            row: eq.row_strategy.iter().map(format_rational).collect(),
            col: eq.col_strategy.iter().map(format_rational).collect(),
        });
        doc
    }

    pub fn with_verdict(mut self, verdict: VerdictDoc) -> Self {
        self.verdicts.push(verdict);
        self
    }

    pub fn all_passed(&self) -> bool {
        self.verdicts.iter().all(|v| v.passed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OutputFormat {
    Json,
    Text,
}

pub fn emit_result(doc: &ResultDocument, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string(doc).expect("document serializes");
            s.push('\n');
            s
        }
        OutputFormat::Text => render_text(doc),
    }
}

fn render_text(doc: &ResultDocument) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "game {} ({}x{})", doc.game_digest, doc.rows, doc.cols);
    if let Some(mode) = &doc.mode {
        let _ = writeln!(out, "mode: {mode}");
    }
    if !doc.saddles.is_empty() {
        let noun = if doc.saddles.len() == 1 { "saddle" } else { "saddles" };
        let _ = writeln!(out, "{} {noun}:", doc.saddles.len());
        for s in &doc.saddles {
            let _ = writeln!(out, "  {}", s.label());
        }
    }
    if let Some(value) = &doc.value {
        let _ = writeln!(out, "value: {value}");
    }
    if let Some(st) = &doc.strategies {
        let show = |prefix: char, v: &[String]| {
            v.iter()
                .enumerate()
                .map(|(i, p)| format!("{prefix}{}={p}", i + 1))
                .collect::<Vec<_>>()
                .join(" ")
        };
        let _ = writeln!(out, "row strategy: {}", show('r', &st.row));
        let _ = writeln!(out, "column strategy: {}", show('c', &st.col));
    }
    for v in &doc.verdicts {
        let _ = writeln!(out, "{}: {}", v.check, if v.passed { "pass" } else { "FAIL" });
        for x in &v.violations {
            let _ = writeln!(
                out,
                "  {} violated by {} and {}: {}",
                x.claim,
                x.first.label(),
                x.second.label(),
                x.detail
            );
        }
    }
    out
}

pub fn emit_campaign(report: &CampaignReport, format: OutputFormat) -> String {
    match format {
        OutputFormat::Json => {
            let mut s = serde_json::to_string(report).expect("report serializes");
            s.push('\n');
            s
        }
        OutputFormat::Text => {
            let g = &report.generator;
            let mut out = format!(
                "{} trials of {} {}x{} games (bound {}), seed {}, {} ms\n",
                report.trials,
                g.kind.name(),
                g.rows,
                g.cols,
                g.bound,
                report.seed,
                report.elapsed_ms
            );
            for c in &report.checks {
                let status = if c.failed == 0 { "pass" } else { "FAIL" };
                let _ = writeln!(out, "{:<22} {status} {}/{}", c.check.name(), c.passed, c.passed + c.failed);
                if let Some(w) = &c.first_failure {
                    let _ = writeln!(
                        out,
                        "  first failure: trial {} (seed {}): {}",
                        w.trial, w.trial_seed, w.detail
                    );
                    for p in &w.products {
                        let _ = writeln!(out, "    {p}");
                    }
                    for row in &w.game {
                        let _ = writeln!(out, "    {}", row.join(" "));
                    }
                }
            }
            out
        }
    }
}
