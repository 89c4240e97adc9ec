//! The session language: one `ring` header, optional `quotient`, named
//! `poly`/`ideal` bindings and commands, each statement ending in `;`.
//! `#` starts a comment that runs to the end of the line.

use std::collections::{HashMap, HashSet};
use std::fmt;

use hkforge_core::{Config, Error as CoreError, MonomialOrder, Polynomial, Ring};

/// Name that always denotes the ideal generated by all variables.
pub const MAXIMAL: &str = "MAX";

const KEYWORDS: &[&str] = &[
    "ring",
    "quotient",
    "poly",
    "ideal",
    "gb",
    "nf",
    "member",
    "colon",
    "saturate",
    "intersect",
    "bracket",
    "length",
    "gamma_length",
    "seq",
    "sandwich",
    "verify",
    "as",
    MAXIMAL,
];

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("line {line}, column {column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealRef {
    Named(String),
    Maximal,
}

impl fmt::Display for IdealRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealRef::Named(n) => f.write_str(n),
            IdealRef::Maximal => f.write_str(MAXIMAL),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IdealItem {
    Poly(Polynomial),
    Ideal {
        ideal: IdealRef,
        power: u32,
    },
    /// `(a, b, ...)^k`
    Power {
        items: Vec<IdealItem>,
        power: u32,
    },
}

impl fmt::Display for IdealItem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IdealItem::Poly(p) => write!(f, "{p}"),
            IdealItem::Ideal { ideal, power: 1 } => write!(f, "{ideal}"),
            IdealItem::Ideal { ideal, power } => write!(f, "{ideal}^{power}"),
            IdealItem::Power { items, power } => write!(f, "({})^{power}", join(items, ", ")),
        }
    }
}

/// Second argument of `colon` and `saturate`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColonArg {
    Poly(Polynomial),
    Ideal(IdealRef),
}

impl fmt::Display for ColonArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ColonArg::Poly(p) => write_poly_arg(f, p),
            ColonArg::Ideal(r) => write!(f, "{r}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeqKind {
    Hk,
    Rjj,
    Sjj,
    Vjj,
    Lf,
    Fdiff,
}

impl SeqKind {
    fn parse(s: &str) -> Option<SeqKind> {
        Some(match s {
            "hk" => SeqKind::Hk,
            "rjj" => SeqKind::Rjj,
            "sjj" => SeqKind::Sjj,
            "vjj" => SeqKind::Vjj,
            "lf" => SeqKind::Lf,
            "fdiff" => SeqKind::Fdiff,
            _ => return None,
        })
    }

    /// Number of ideal arguments.
    pub fn arity(self) -> usize {
        match self {
            SeqKind::Hk | SeqKind::Lf => 1,
            _ => 2,
        }
    }
}

impl fmt::Display for SeqKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeqKind::Hk => "hk",
            SeqKind::Rjj => "rjj",
            SeqKind::Sjj => "sjj",
            SeqKind::Vjj => "vjj",
            SeqKind::Lf => "lf",
            SeqKind::Fdiff => "fdiff",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Command {
    Gb {
        ideal: IdealRef,
        order: Option<MonomialOrder>,
    },
    Nf {
        poly: Polynomial,
        ideal: IdealRef,
    },
    Member {
        poly: Polynomial,
        ideal: IdealRef,
    },
    Colon {
        ideal: IdealRef,
        by: ColonArg,
        bind: Option<String>,
    },
    Saturate {
        ideal: IdealRef,
        by: ColonArg,
        bind: Option<String>,
    },
    Intersect {
        a: IdealRef,
        b: IdealRef,
        bind: Option<String>,
    },
    Bracket {
        ideal: IdealRef,
        e: u32,
        bind: Option<String>,
    },
    Length {
        ideal: IdealRef,
    },
    GammaLength {
        j: IdealRef,
        i: IdealRef,
    },
    Seq {
        kind: SeqKind,
        ideals: Vec<IdealRef>,
        e_max: Option<u32>,
        d: Option<u32>,
    },
    Sandwich {
        j: IdealRef,
        i: IdealRef,
        n: u32,
    },
    VerifyConstruction {
        p: u32,
        m: u32,
    },
    VerifyKatzman {
        p: u32,
        e: u32,
        slow: bool,
    },
}

fn write_bind(f: &mut fmt::Formatter<'_>, bind: &Option<String>) -> fmt::Result {
    match bind {
        Some(n) => write!(f, " as {n}"),
        None => Ok(()),
    }
}

fn write_poly_arg(f: &mut fmt::Formatter<'_>, p: &Polynomial) -> fmt::Result {
    let s = p.to_string();
    if s.contains(' ') {
        write!(f, "({s})")
    } else {
        f.write_str(&s)
    }
}

fn order_name(o: &MonomialOrder) -> String {
    o.to_string()
}

impl fmt::Display for Command {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Command::Gb { ideal, order } => {
                write!(f, "gb {ideal}")?;
                if let Some(o) = order {
                    write!(f, " order={}", order_name(o))?;
                }
                Ok(())
            }
            Command::Nf { poly, ideal } => {
                f.write_str("nf ")?;
                write_poly_arg(f, poly)?;
                write!(f, " {ideal}")
            }
            Command::Member { poly, ideal } => {
                f.write_str("member ")?;
                write_poly_arg(f, poly)?;
                write!(f, " {ideal}")
            }
            Command::Colon { ideal, by, bind } => {
                write!(f, "colon {ideal} {by}")?;
                write_bind(f, bind)
            }
            Command::Saturate { ideal, by, bind } => {
                write!(f, "saturate {ideal} {by}")?;
                write_bind(f, bind)
            }
            Command::Intersect { a, b, bind } => {
                write!(f, "intersect {a} {b}")?;
                write_bind(f, bind)
            }
            Command::Bracket { ideal, e, bind } => {
                write!(f, "bracket {ideal} {e}")?;
                write_bind(f, bind)
            }
            Command::Length { ideal } => write!(f, "length {ideal}"),
            Command::GammaLength { j, i } => write!(f, "gamma_length {j} {i}"),
            Command::Seq {
                kind,
                ideals,
                e_max,
                d,
            } => {
                write!(f, "seq {kind}")?;
                for i in ideals {
                    write!(f, " {i}")?;
                }
                if let Some(e) = e_max {
                    write!(f, " e_max={e}")?;
                }
                if let Some(d) = d {
                    write!(f, " d={d}")?;
                }
                Ok(())
            }
            Command::Sandwich { j, i, n } => write!(f, "sandwich {j} {i} n={n}"),
            Command::VerifyConstruction { p, m } => write!(f, "verify construction p={p} m={m}"),
            Command::VerifyKatzman { p, e, slow } => {
                write!(f, "verify katzman p={p} e={e}")?;
                if *slow {
                    f.write_str(" slow")?;
                }
                Ok(())
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Statement {
    Quotient(Vec<Polynomial>),
    Poly { name: String, value: Polynomial },
    Ideal { name: String, items: Vec<IdealItem> },
    Command(Command),
}

impl fmt::Display for Statement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Statement::Quotient(rels) => write!(f, "quotient {};", join(rels, ", ")),
            Statement::Poly { name, value } => write!(f, "poly {name} = {value};"),
            Statement::Ideal { name, items } => write!(f, "ideal {name} = {};", join(items, ", ")),
            Statement::Command(c) => write!(f, "{c};"),
        }
    }
}

fn join<T: fmt::Display>(items: &[T], sep: &str) -> String {
    items
        .iter()
        .map(|i| i.to_string())
        .collect::<Vec<_>>()
        .join(sep)
}

/// A parsed session. `lines[k]` is the source line of `statements[k]`.
#[derive(Debug, Clone)]
pub struct Session {
    pub ring: Option<Ring>,
    pub statements: Vec<Statement>,
    pub lines: Vec<usize>,
}

impl Session {
    /// Same ring and statements, ignoring source positions.
    pub fn equivalent(&self, other: &Session) -> bool {
        self.ring == other.ring && self.statements == other.statements
    }
}

impl fmt::Display for Session {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(ring) = &self.ring {
            let order = match ring.order() {
                MonomialOrder::Lex => "lex",
                _ => "degrevlex",
            };
            writeln!(
                f,
                "ring p={} vars={} order={order};",
                ring.characteristic(),
                ring.var_names().join(",")
            )?;
        }
        for s in &self.statements {
            writeln!(f, "{s}")?;
        }
        Ok(())
    }
}

/// Parses a session, reading the exponent cap from the environment.
pub fn parse_session(text: &str) -> Result<Session, ParseError> {
    parse_session_with_config(text, Config::from_env())
}

pub fn parse_session_with_config(text: &str, config: Config) -> Result<Session, ParseError> {
    Parser::new(text, config).run()
}

fn blank_comments(text: &str) -> String {
    let mut bytes = text.as_bytes().to_vec();
    let mut in_comment = false;
    for b in bytes.iter_mut() {
        match *b {
            b'\n' => in_comment = false,
            b'#' => {
                in_comment = true;
                *b = b' ';
            }
            _ if in_comment => *b = b' ',
            _ => {}
        }
    }
    String::from_utf8(bytes).expect("comment blanking keeps UTF-8 boundaries")
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Splits on `sep` outside parentheses, keeping byte offsets.
fn split_top(s: &str, sep: char) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in s.char_indices() {
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push((start, &s[start..i]));
                start = i + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push((start, &s[start..]));
    out
}

/// Whitespace-separated words; whitespace next to `,` or `=` or inside
/// parentheses does not split.
fn words(s: &str) -> Vec<(usize, String)> {
    let chars: Vec<(usize, char)> = s.char_indices().collect();
    let mut out: Vec<(usize, String)> = Vec::new();
    let mut cur: Option<(usize, String)> = None;
    let mut depth = 0i32;
    for (k, &(i, c)) in chars.iter().enumerate() {
        if c.is_whitespace() && depth == 0 {
            let prev = chars[..k]
                .iter()
                .rev()
                .find(|(_, c)| !c.is_whitespace())
                .map(|x| x.1);
            let next = chars[k + 1..]
                .iter()
                .find(|(_, c)| !c.is_whitespace())
                .map(|x| x.1);
            let glue = cur.is_some()
                && (matches!(prev, Some(',') | Some('=')) || matches!(next, Some(',') | Some('=')));
            if !glue {
                if let Some(w) = cur.take() {
                    out.push(w);
                }
            }
            continue;
        }
        match c {
            '(' => depth += 1,
            ')' => depth -= 1,
            _ => {}
        }
        match &mut cur {
            Some((_, w)) => w.push(c),
            None => cur = Some((i, c.to_string())),
        }
    }
    if let Some(w) = cur {
        out.push(w);
    }
    out
}

struct Parser<'a> {
    text: &'a str,
    config: Config,
    ring: Option<Ring>,
    polys: HashMap<String, Polynomial>,
    ideals: HashSet<String>,
    quotient_seen: bool,
    ideal_seen: bool,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, config: Config) -> Self {
        Parser {
            text,
            config,
            ring: None,
            polys: HashMap::new(),
            ideals: HashSet::new(),
            quotient_seen: false,
            ideal_seen: false,
        }
    }

    fn position(&self, offset: usize) -> (usize, usize) {
        let before = &self.text[..offset.min(self.text.len())];
        let line = before.matches('\n').count() + 1;
        let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        (line, column)
    }

    fn error(&self, offset: usize, message: impl Into<String>) -> ParseError {
        let (line, column) = self.position(offset);
        ParseError {
            line,
            column,
            message: message.into(),
        }
    }

    fn run(mut self) -> Result<Session, ParseError> {
        let cleaned = blank_comments(self.text);
        let pieces = split_top(&cleaned, ';');
        let last = pieces.len() - 1;
        let mut statements = Vec::new();
        let mut lines = Vec::new();
        for (k, (start, piece)) in pieces.into_iter().enumerate() {
            let trimmed = piece.trim_start();
            let base = start + (piece.len() - trimmed.len());
            let trimmed = trimmed.trim_end();
            if trimmed.is_empty() {
                continue;
            }
            if k == last {
                return Err(self.error(base, "statement is missing its terminating ';'"));
            }
            if let Some(st) = self.statement(base, trimmed)? {
                lines.push(self.position(base).0);
                statements.push(st);
            }
        }
        Ok(Session {
            ring: self.ring,
            statements,
            lines,
        })
    }

    fn ring(&self, offset: usize) -> Result<&Ring, ParseError> {
        self.ring
            .as_ref()
            .ok_or_else(|| self.error(offset, "a 'ring' declaration must come first"))
    }

    fn statement(&mut self, base: usize, s: &str) -> Result<Option<Statement>, ParseError> {
        let keyword_end = s.find(|c: char| c.is_whitespace()).unwrap_or(s.len());
        let keyword = &s[..keyword_end];
        match keyword {
            "ring" => {
                self.ring_decl(base, s)?;
                Ok(None)
            }
            "quotient" => self.quotient(base, keyword_end, s).map(Some),
            "poly" | "ideal" => self.binding(base, keyword, keyword_end, s).map(Some),
            _ => self.command(base, s).map(|c| Some(Statement::Command(c))),
        }
    }

    fn ring_decl(&mut self, base: usize, s: &str) -> Result<(), ParseError> {
        if self.ring.is_some() {
            return Err(self.error(base, "only one 'ring' declaration is allowed"));
        }
        let (mut p, mut vars, mut order) = (None, None, MonomialOrder::DegRevLex);
        for (off, w) in words(s).into_iter().skip(1) {
            let at = base + off;
            let (key, value) = w
                .split_once('=')
                .ok_or_else(|| self.error(at, format!("expected key=value, found '{w}'")))?;
            match key {
                "p" => {
                    let v: u64 = value
                        .parse()
                        .map_err(|_| self.error(at, format!("invalid characteristic '{value}'")))?;
                    p = Some(v);
                }
                "vars" => {
                    let names: Vec<String> =
                        value.split(',').map(|v| v.trim().to_string()).collect();
                    for n in &names {
                        if !is_identifier(n) || KEYWORDS.contains(&n.as_str()) {
                            return Err(self.error(at, format!("invalid variable name '{n}'")));
                        }
                    }
                    vars = Some(names);
                }
                "order" => {
                    order = match value {
                        "lex" => MonomialOrder::Lex,
                        "degrevlex" => MonomialOrder::DegRevLex,
                        _ => return Err(self.error(at, format!("unknown order '{value}'"))),
                    }
                }
                _ => return Err(self.error(at, format!("unknown ring option '{key}'"))),
            }
        }
        let p = p.ok_or_else(|| self.error(base, "ring needs p=<prime>"))?;
        let vars = vars.ok_or_else(|| self.error(base, "ring needs vars=<list>"))?;
        let ring = Ring::new(p, &vars, order).map_err(|e| match e {
            CoreError::NotPrime(_) => self.error(base, "p must be prime"),
            other => self.error(base, other.to_string()),
        })?;
        self.ring = Some(ring.with_config(self.config.clone()));
        Ok(())
    }

    fn poly(&self, base: usize, text: &str) -> Result<Polynomial, ParseError> {
        let ring = self.ring(base)?;
        let lookup = |name: &str| self.polys.get(name).cloned();
        ring.parse_with(text, &lookup).map_err(|e| match e {
            CoreError::Parse { offset, message } => self.error(base + offset, message),
            CoreError::UnknownIdentifier(name) => {
                let off = text.find(&name).unwrap_or(0);
                self.error(base + off, format!("unknown identifier '{name}'"))
            }
            other => self.error(base, other.to_string()),
        })
    }

    fn quotient(&mut self, base: usize, kw_end: usize, s: &str) -> Result<Statement, ParseError> {
        self.ring(base)?;
        if self.quotient_seen {
            return Err(self.error(base, "only one 'quotient' statement is allowed"));
        }
        if self.ideal_seen {
            return Err(self.error(base, "'quotient' must precede every ideal"));
        }
        self.quotient_seen = true;
        let mut rels = Vec::new();
        for (off, item) in split_top(&s[kw_end..], ',') {
            let lead = item.len() - item.trim_start().len();
            rels.push(self.poly(base + kw_end + off + lead, item.trim())?);
        }
        Ok(Statement::Quotient(rels))
    }

    fn check_new_name(&self, at: usize, name: &str) -> Result<(), ParseError> {
        if !is_identifier(name) || KEYWORDS.contains(&name) {
            return Err(self.error(at, format!("invalid name '{name}'")));
        }
        if self.ring(at)?.var_index(name).is_some() {
            return Err(self.error(at, format!("'{name}' is a variable")));
        }
        if self.polys.contains_key(name) || self.ideals.contains(name) {
            return Err(self.error(at, format!("'{name}' is already bound")));
        }
        Ok(())
    }

    fn binding(
        &mut self,
        base: usize,
        keyword: &str,
        kw_end: usize,
        s: &str,
    ) -> Result<Statement, ParseError> {
        self.ring(base)?;
        let eq = s
            .find('=')
            .ok_or_else(|| self.error(base, format!("expected '{keyword} NAME = ...'")))?;
        let name_part = &s[kw_end..eq];
        let name = name_part.trim();
        let name_at = base + kw_end + (name_part.len() - name_part.trim_start().len());
        self.check_new_name(name_at, name)?;
        let rhs = &s[eq + 1..];
        let rhs_at = base + eq + 1;
        if keyword == "poly" {
            let lead = rhs.len() - rhs.trim_start().len();
            let value = self.poly(rhs_at + lead, rhs.trim())?;
            self.polys.insert(name.to_string(), value.clone());
            Ok(Statement::Poly {
                name: name.to_string(),
                value,
            })
        } else {
            let items = self.items(rhs_at, rhs)?;
            self.ideal_seen = true;
            self.ideals.insert(name.to_string());
            Ok(Statement::Ideal {
                name: name.to_string(),
                items,
            })
        }
    }

    fn items(&self, base: usize, s: &str) -> Result<Vec<IdealItem>, ParseError> {
        let mut out = Vec::new();
        for (off, item) in split_top(s, ',') {
            let lead = item.len() - item.trim_start().len();
            let at = base + off + lead;
            let item = item.trim();
            if item.is_empty() {
                return Err(self.error(at, "empty ideal item"));
            }
            out.push(self.item(at, item)?);
        }
        Ok(out)
    }

    fn ideal_name(&self, name: &str) -> Option<IdealRef> {
        if name == MAXIMAL {
            Some(IdealRef::Maximal)
        } else if self.ideals.contains(name) {
            Some(IdealRef::Named(name.to_string()))
        } else {
            None
        }
    }

    fn item(&self, at: usize, item: &str) -> Result<IdealItem, ParseError> {
        let (head, power) = match item.rsplit_once('^') {
            Some((h, k))
                if k.trim().chars().all(|c| c.is_ascii_digit()) && !k.trim().is_empty() =>
            {
                let k: u32 = k
                    .trim()
                    .parse()
                    .map_err(|_| self.error(at, format!("invalid power '{}'", k.trim())))?;
                (h.trim(), Some(k))
            }
            _ => (item, None),
        };
        if let Some(r) = self.ideal_name(head) {
            return Ok(IdealItem::Ideal {
                ideal: r,
                power: power.unwrap_or(1),
            });
        }
        if let (Some(k), Some(inner)) = (
            power,
            head.strip_prefix('(').and_then(|h| h.strip_suffix(')')),
        ) {
            // `(a, b)^k` is an ideal power; a lone polynomial `(a)^k` is not.
            let parts = split_top(inner, ',');
            let mut depth = 0i32;
            let mut balanced = true;
            for c in inner.chars() {
                match c {
                    '(' => depth += 1,
                    ')' => {
                        depth -= 1;
                        balanced &= depth >= 0;
                    }
                    _ => {}
                }
            }
            balanced &= depth == 0;
            if balanced {
                if parts.len() > 1 {
                    let items = self.items(at + 1, inner)?;
                    return Ok(IdealItem::Power { items, power: k });
                }
                if let Some(r) = self.ideal_name(inner.trim()) {
                    return Ok(IdealItem::Ideal { ideal: r, power: k });
                }
            }
        }
        self.poly(at, item).map(IdealItem::Poly)
    }

    fn ideal_ref(&self, at: usize, w: &str) -> Result<IdealRef, ParseError> {
        self.ideal_name(w)
            .ok_or_else(|| self.error(at, format!("unknown ideal '{w}'")))
    }

    fn poly_arg(&self, at: usize, w: &str) -> Result<Polynomial, ParseError> {
        self.poly(at, w)
    }

    fn command(&mut self, base: usize, s: &str) -> Result<Command, ParseError> {
        self.ring(base)?;
        let ws = words(s);
        let kw = ws[0].1.clone();
        let mut args: Vec<(usize, String)> = Vec::new();
        let mut opts: Vec<(usize, String, String)> = Vec::new();
        let mut bind: Option<(usize, String)> = None;
        let mut iter = ws.into_iter().skip(1).peekable();
        while let Some((off, w)) = iter.next() {
            let at = base + off;
            if w == "as" {
                let (noff, name) = iter
                    .next()
                    .ok_or_else(|| self.error(at, "expected a name after 'as'"))?;
                bind = Some((base + noff, name));
            } else if let Some((k, v)) = w.split_once('=').filter(|(k, _)| is_identifier(k)) {
                opts.push((at, k.to_string(), v.to_string()));
            } else {
                args.push((at, w));
            }
        }
        let slow = kw == "verify" && args.first().is_some_and(|(_, w)| w == "katzman") && {
            let before = args.len();
            args.retain(|(_, w)| w != "slow");
            args.len() != before
        };
        let end = base + s.len();
        let arg = |k: usize| -> Result<(usize, String), ParseError> {
            args.get(k)
                .cloned()
                .ok_or_else(|| self.error(end, format!("'{kw}' expects more arguments")))
        };
        let opt_u32 = |name: &str| -> Result<Option<u32>, ParseError> {
            match opts.iter().find(|(_, k, _)| k == name) {
                Some((at, _, v)) => v
                    .parse()
                    .map(Some)
                    .map_err(|_| self.error(*at, format!("invalid value for {name}: '{v}'"))),
                None => Ok(None),
            }
        };
        let known_opts: &[&str] = match kw.as_str() {
            "gb" => &["order"],
            "seq" => &["e_max", "d"],
            "sandwich" => &["n"],
            "verify" => &["p", "m", "e"],
            _ => &[],
        };
        if let Some((at, k, _)) = opts
            .iter()
            .find(|(_, k, _)| !known_opts.contains(&k.as_str()))
        {
            return Err(self.error(*at, format!("unknown option '{k}' for '{kw}'")));
        }
        let arity = match kw.as_str() {
            "gb" | "length" => 1,
            "nf" | "member" | "colon" | "saturate" | "intersect" | "bracket" | "gamma_length"
            | "sandwich" => 2,
            "seq" => {
                let (at, k) = arg(0)?;
                let kind = SeqKind::parse(&k)
                    .ok_or_else(|| self.error(at, format!("unknown sequence '{k}'")))?;
                kind.arity() + 1
            }
            "verify" => {
                arg(0)?;
                1
            }
            _ => return Err(self.error(base, format!("unknown statement '{kw}'"))),
        };
        if let Some((at, w)) = args.get(arity) {
            return Err(self.error(*at, format!("unexpected argument '{w}'")));
        }
        let binds = matches!(kw.as_str(), "colon" | "saturate" | "intersect" | "bracket");
        let bind = match bind {
            Some((at, _)) if !binds => {
                return Err(self.error(at, format!("'{kw}' cannot bind a result")))
            }
            Some((at, name)) => {
                self.check_new_name(at, &name)?;
                Some(name)
            }
            None => None,
        };
        let cmd = match kw.as_str() {
            "gb" => {
                let (at, i) = arg(0)?;
                let order = match opts.iter().find(|(_, k, _)| k == "order") {
                    Some((_, _, v)) if v == "lex" => Some(MonomialOrder::Lex),
                    Some((_, _, v)) if v == "degrevlex" => Some(MonomialOrder::DegRevLex),
                    Some((at, _, v)) => return Err(self.error(*at, format!("unknown order '{v}'"))),
                    None => None,
                };
                Command::Gb {
                    ideal: self.ideal_ref(at, &i)?,
                    order,
                }
            }
            "nf" | "member" => {
                let (pa, p) = arg(0)?;
                let (ia, i) = arg(1)?;
                let poly = self.poly_arg(pa, &p)?;
                let ideal = self.ideal_ref(ia, &i)?;
                if kw == "nf" {
                    Command::Nf { poly, ideal }
                } else {
                    Command::Member { poly, ideal }
                }
            }
            "colon" | "saturate" => {
                let (ia, i) = arg(0)?;
                let (ba, b) = arg(1)?;
                let ideal = self.ideal_ref(ia, &i)?;
                let by = match self.ideal_name(&b) {
                    Some(r) => ColonArg::Ideal(r),
                    None => ColonArg::Poly(self.poly_arg(ba, &b)?),
                };
                if kw == "colon" {
                    Command::Colon {
                        ideal,
                        by,
                        bind: bind.clone(),
                    }
                } else {
                    Command::Saturate {
                        ideal,
                        by,
                        bind: bind.clone(),
                    }
                }
            }
            "intersect" => {
                let (aa, a) = arg(0)?;
                let (ba, b) = arg(1)?;
                Command::Intersect {
                    a: self.ideal_ref(aa, &a)?,
                    b: self.ideal_ref(ba, &b)?,
                    bind: bind.clone(),
                }
            }
            "bracket" => {
                let (ia, i) = arg(0)?;
                let (ea, e) = arg(1)?;
                let e = e
                    .parse()
                    .map_err(|_| self.error(ea, format!("invalid exponent '{e}'")))?;
                Command::Bracket {
                    ideal: self.ideal_ref(ia, &i)?,
                    e,
                    bind: bind.clone(),
                }
            }
            "length" => {
                let (ia, i) = arg(0)?;
                Command::Length {
                    ideal: self.ideal_ref(ia, &i)?,
                }
            }
            "gamma_length" | "sandwich" => {
                let (ja, j) = arg(0)?;
                let (ia, i) = arg(1)?;
                let (j, i) = (self.ideal_ref(ja, &j)?, self.ideal_ref(ia, &i)?);
                if kw == "sandwich" {
                    Command::Sandwich {
                        j,
                        i,
                        n: opt_u32("n")?.unwrap_or(2),
                    }
                } else {
                    Command::GammaLength { j, i }
                }
            }
            "seq" => {
                let kind = SeqKind::parse(&arg(0)?.1).expect("checked above");
                let mut ideals = Vec::new();
                for k in 1..=kind.arity() {
                    let (at, w) = arg(k)?;
                    ideals.push(self.ideal_ref(at, &w)?);
                }
                Command::Seq {
                    kind,
                    ideals,
                    e_max: opt_u32("e_max")?,
                    d: opt_u32("d")?,
                }
            }
            "verify" => {
                let (wa, what) = arg(0)?;
                let need = |name: &str| -> Result<u32, ParseError> {
                    opt_u32(name)?
                        .ok_or_else(|| self.error(end, format!("verify {what} needs {name}=")))
                };
                match what.as_str() {
                    "construction" => Command::VerifyConstruction {
                        p: need("p")?,
                        m: need("m")?,
                    },
                    "katzman" => Command::VerifyKatzman {
                        p: need("p")?,
                        e: need("e")?,
                        slow,
                    },
                    _ => return Err(self.error(wa, format!("unknown verification '{what}'"))),
                }
            }
            _ => unreachable!("arity match covers every keyword"),
        };
        if let Some(name) = bind {
            self.ideals.insert(name);
        }
        Ok(cmd)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header() {
        let s = parse_session("ring p=3 vars=s,x,y order=lex;").unwrap();
        let ring = s.ring.unwrap();
        assert_eq!(ring.characteristic(), 3);
        assert_eq!(ring.var_names(), ["s", "x", "y"]);
        assert!(s.statements.is_empty());
    }

    #[test]
    fn rejects_composite_characteristic() {
        let err = parse_session("ring p=4 vars=x,y order=lex;").unwrap_err();
        assert!(err.message.contains("p must be prime"), "{err}");
    }

    #[test]
    fn binds_construction_ideal() {
        let text = "ring p=5 vars=s,x,y order=lex;\npoly G = x*y*(x-y)*(x+y-s*y);\nideal E = x^9, y^9, G;\n";
        let s = parse_session(text).unwrap();
        match &s.statements[1] {
            Statement::Ideal { name, items } => {
                assert_eq!(name, "E");
                assert_eq!(items.len(), 3);
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(s.lines, vec![2, 3]);
    }

    #[test]
    fn ideal_powers_and_references() {
        let text =
            "ring p=3 vars=x,y;\nideal M = x, y;\nideal A = (x, y)^3, M^2, (M)^2, (x+y)^2;\n";
        let s = parse_session(text).unwrap();
        let Statement::Ideal { items, .. } = &s.statements[1] else {
            panic!()
        };
        assert!(matches!(&items[0], IdealItem::Power { items, power: 3 } if items.len() == 2));
        assert!(matches!(&items[1], IdealItem::Ideal { power: 2, .. }));
        assert!(matches!(&items[2], IdealItem::Ideal { power: 2, .. }));
        assert!(matches!(&items[3], IdealItem::Poly(_)));
    }

    #[test]
    fn diagnostics_carry_line_and_column() {
        let err = parse_session("ring p=3 vars=x,y;\npoly f = x + z;\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 14));
        let err = parse_session("ring p=3 vars=x,y;\nnf x Q;\n").unwrap_err();
        assert_eq!((err.line, err.column), (2, 6));
        let err = parse_session("ring p=3 vars=x,y;\nideal I = x").unwrap_err();
        assert_eq!(err.line, 2);
    }

    #[test]
    fn comments_and_empty_sessions() {
        assert!(parse_session("").unwrap().statements.is_empty());
        let s = parse_session("# header\nring p=3 vars=x; # trailing\n# done\n").unwrap();
        assert!(s.ring.is_some());
    }

    #[test]
    fn commands_round_trip() {
        let text = "ring p=3 vars=s,x,y order=lex;\nquotient x*y*(x-y)*(x+y-s*y);\n\
                    ideal J = x^3, y^3;\nideal I = (x, y)^3;\n\
                    seq rjj J I e_max=2 d=2;\ncolon J (x^2 + y) as K;\nsaturate K s;\n\
                    gb K order=degrevlex;\nmember x*y J;\nverify katzman p=3 e=1 slow;\n\
                    sandwich J I n=1;\nbracket I 2 as I2;\nintersect I2 MAX;\n";
        let s = parse_session(text).unwrap();
        let printed = s.to_string();
        let again = parse_session(&printed).unwrap();
        assert!(s.equivalent(&again), "{printed}");
        assert_eq!(printed, again.to_string());
    }

    #[test]
    fn rejects_misuse() {
        for bad in [
            "poly f = x;",
            "ring p=3 vars=x,y;\nring p=3 vars=x,y;",
            "ring p=3 vars=x,y;\nideal I = x;\nquotient y;",
            "ring p=3 vars=x,y;\nideal x = y;",
            "ring p=3 vars=x,y;\nideal I = x;\nideal I = y;",
            "ring p=3 vars=x,y;\nideal I = x;\nlength I as K;",
            "ring p=3 vars=x,y;\nideal I = x;\nseq zz I;",
            "ring p=3 vars=x,y;\nideal I = x;\nseq hk I I;",
            "ring p=3 vars=x,y;\nfrobnicate;",
        ] {
            assert!(parse_session(bad).is_err(), "{bad}");
        }
    }
}
