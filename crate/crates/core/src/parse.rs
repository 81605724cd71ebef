//! Text formats for algebra presentations (`.alg`) and periodic complexes
//! (`.cpx`). The grammar is documented in `docs/formats.md`.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::algebra::{presets, Algebra, Presentation, Quiver, Relation};
use crate::complex::PeriodicComplex;
use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::Mat;
use crate::module::{ModMap, Module};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Ident(String),
    Num(String),
    Sym(&'static str),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    col: usize,
}

fn perr<T>(line: usize, col: usize, msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse { line, col, msg: msg.into() })
}

fn tokenize(line_no: usize, text: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let col = i + 1;
        if c == '#' {
            break;
        }
        if c.is_whitespace() {
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let s = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Token { tok: Tok::Num(chars[s..i].iter().collect()), col });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let s = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || matches!(chars[i], '_' | '\'' | '.' | '/' | '-')) {
                // `-` inside identifiers only when followed by a letter (dual-numbers),
                // `/` and `.` for file paths
                if chars[i] == '-' && !chars.get(i + 1).is_some_and(|n| n.is_alphabetic()) {
                    break;
                }
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(chars[s..i].iter().collect()), col });
            continue;
        }
        let two: String = chars[i..(i + 2).min(chars.len())].iter().collect();
        if two == "->" {
            out.push(Token { tok: Tok::Sym("->"), col });
            i += 2;
            continue;
        }
        let sym = match c {
            ':' => ":",
            '=' => "=",
            '+' => "+",
            '-' => "-",
            '*' => "*",
            '/' => "/",
            '(' => "(",
            ')' => ")",
            '[' => "[",
            ']' => "]",
            ',' => ",",
            _ => return perr(line_no, col, format!("unexpected character `{c}`")),
        };
        out.push(Token { tok: Tok::Sym(sym), col });
        i += 1;
    }
    Ok(out)
}

struct Cursor<'a> {
    line: usize,
    toks: &'a [Token],
    pos: usize,
    end_col: usize,
}

impl<'a> Cursor<'a> {
    fn new(line: usize, toks: &'a [Token], text: &str) -> Self {
        Cursor { line, toks, pos: 0, end_col: text.chars().count() + 1 }
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map(|t| t.col).unwrap_or(self.end_col)
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        perr(self.line, self.col(), msg)
    }

    fn expect_sym(&mut self, s: &str) -> Result<()> {
        match self.peek() {
            Some(Tok::Sym(x)) if *x == s => {
                self.pos += 1;
                Ok(())
            }
            _ => self.err(format!("expected `{s}`")),
        }
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if matches!(self.peek(), Some(Tok::Sym(x)) if *x == s) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn ident(&mut self, what: &str) -> Result<String> {
        match self.peek() {
            Some(Tok::Ident(s)) => {
                let s = s.clone();
                self.pos += 1;
                Ok(s)
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    fn nat(&mut self, what: &str) -> Result<usize> {
        match self.peek() {
            Some(Tok::Num(s)) => {
                let col = self.col();
                let v = s.parse::<usize>().or_else(|_| perr(self.line, col, "number too large"))?;
                self.pos += 1;
                Ok(v)
            }
            _ => self.err(format!("expected {what}")),
        }
    }

    /// Optional sign, integer, optional `/ integer`.
    fn scalar(&mut self, field: Field) -> Result<Scalar> {
        let neg = if self.eat_sym("-") {
            true
        } else {
            self.eat_sym("+");
            false
        };
        let col = self.col();
        let num = match self.next() {
            Some(Tok::Num(s)) => s,
            _ => return perr(self.line, col, "expected a number"),
        };
        let mut text = if neg { format!("-{num}") } else { num };
        if self.eat_sym("/") {
            let dcol = self.col();
            match self.next() {
                Some(Tok::Num(d)) => text = format!("{text}/{d}"),
                _ => return perr(self.line, dcol, "expected a denominator"),
            }
        }
        match field.parse_scalar(&text) {
            Some(s) => Ok(s),
            None => perr(self.line, col, format!("`{text}` is not a scalar of {}", field.name())),
        }
    }

    fn finish(&self) -> Result<()> {
        if self.at_end() {
            Ok(())
        } else {
            self.err("unexpected trailing input")
        }
    }

    fn rest_text(&self, text: &str) -> String {
        let col = self.col();
        let s: String = text.chars().skip(col - 1).collect();
        s.split('#').next().unwrap_or("").trim().to_string()
    }
}

fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l))
}

/// Result of parsing a preset line: `linear n`, `cyclic n m`, `semisimple
/// n` or `dual-numbers`.
fn parse_preset(c: &mut Cursor, field: Field) -> Result<Presentation> {
    let col = c.col();
    let kind = c.ident("a preset name")?;
    let p = match kind.as_str() {
        "linear" => presets::linear_a(field, c.nat("n")?),
        "cyclic" => {
            let n = c.nat("n")?;
            let m = c.nat("m")?;
            if n == 0 || m < 2 {
                return perr(c.line, col, "cyclic needs n >= 1 and m >= 2");
            }
            presets::cyclic_nakayama(field, n, m)
        }
        "semisimple" => presets::semisimple(field, c.nat("n")?),
        "dual-numbers" => presets::dual_numbers(field),
        other => return perr(c.line, col, format!("unknown preset `{other}`")),
    };
    c.finish()?;
    Ok(p)
}

/// Parses an algebra presentation. `default_field` is used when the file
/// has no `field` line.
pub fn parse_algebra(text: &str, default_field: Field) -> Result<Presentation> {
    let mut name: Option<String> = None;
    let mut field = default_field;
    let mut quiver: Option<Quiver> = None;
    let mut relation_lines: Vec<(usize, Vec<Token>)> = Vec::new();
    let mut nilpotency: Option<usize> = None;
    let mut preset: Option<(usize, Vec<Token>, String)> = None;
    let mut arrow_seen_at: Option<usize> = None;

    for (ln, raw) in lines(text) {
        let toks = tokenize(ln, raw)?;
        if toks.is_empty() {
            continue;
        }
        let mut c = Cursor::new(ln, &toks, raw);
        let kw = c.ident("a directive")?;
        match kw.as_str() {
            "name" => {
                let rest = c.rest_text(raw);
                if rest.is_empty() {
                    return c.err("expected a name");
                }
                name = Some(rest);
            }
            "field" => {
                let col = c.col();
                let rest = c.rest_text(raw);
                field = rest.parse().or_else(|e: Error| perr(ln, col, e.to_string()))?;
            }
            "vertices" => {
                if quiver.is_some() {
                    return c.err("duplicate `vertices` line");
                }
                let n = c.nat("the number of vertices")?;
                if n == 0 {
                    return perr(ln, toks[1].col, "need at least one vertex");
                }
                let mut q = Quiver::new(n);
                if !c.at_end() {
                    let mut names = Vec::new();
                    while !c.at_end() {
                        let col = c.col();
                        match c.next() {
                            Some(Tok::Ident(s)) | Some(Tok::Num(s)) => names.push(s),
                            _ => return perr(ln, col, "expected a vertex name"),
                        }
                    }
                    if names.len() != n {
                        return perr(ln, toks[2].col, format!("{} vertex names for {n} vertices", names.len()));
                    }
                    q.vertex_names = names;
                }
                quiver = Some(q);
            }
            "arrow" => {
                let q = match quiver.as_mut() {
                    Some(q) => q,
                    None => return perr(ln, 1, "`arrow` before `vertices`"),
                };
                let aname = c.ident("an arrow name")?;
                if q.arrow_index(&aname).is_some() {
                    return perr(ln, toks[1].col, format!("duplicate arrow `{aname}`"));
                }
                c.expect_sym(":")?;
                let u = vertex_ref(&mut c, q)?;
                c.expect_sym("->")?;
                let v = vertex_ref(&mut c, q)?;
                c.finish()?;
                q.add_arrow(aname, u, v)?;
                arrow_seen_at.get_or_insert(ln);
            }
            "relation" => relation_lines.push((ln, toks[1..].to_vec())),
            "nilpotency" => {
                let n = c.nat("a nilpotency bound")?;
                if n < 2 {
                    return perr(ln, toks[1].col, "nilpotency must be at least 2");
                }
                c.finish()?;
                nilpotency = Some(n);
            }
            "preset" => {
                if preset.is_some() {
                    return c.err("duplicate `preset` line");
                }
                preset = Some((ln, toks.clone(), raw.to_string()));
            }
            other => return perr(ln, toks[0].col, format!("unknown directive `{other}`")),
        }
    }

    if let Some((ln, toks, raw)) = preset {
        if quiver.is_some() || !relation_lines.is_empty() {
            return perr(ln, 1, "`preset` cannot be combined with `vertices`, `arrow` or `relation`");
        }
        let mut c = Cursor::new(ln, &toks, &raw);
        c.pos = 1;
        let mut p = parse_preset(&mut c, field)?;
        if let Some(n) = name {
            p.name = n;
        }
        if let Some(nl) = nilpotency {
            p.nilpotency = nl;
        }
        return Ok(p);
    }
    let quiver = match quiver {
        Some(q) => q,
        None => return perr(text.lines().count().max(1), 1, "missing `vertices` line"),
    };
    let mut relations = Vec::new();
    for (ln, toks) in relation_lines {
        relations.push(parse_relation(ln, &toks, &quiver, field)?);
    }
    let nilpotency = match nilpotency {
        Some(n) => n,
        None if is_acyclic(&quiver) => quiver.n_vertices().max(2),
        None => return perr(arrow_seen_at.unwrap_or(1), 1, "quiver has an oriented cycle: a `nilpotency` line is required"),
    };
    Ok(Presentation { name: name.unwrap_or_else(|| "algebra".into()), field, quiver, relations, nilpotency })
}

fn is_acyclic(q: &Quiver) -> bool {
    let n = q.n_vertices();
    let mut indeg = vec![0; n];
    for a in &q.arrows {
        indeg[a.target] += 1;
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = stack.pop() {
        seen += 1;
        for a in q.arrows.iter().filter(|a| a.source == v) {
            indeg[a.target] -= 1;
            if indeg[a.target] == 0 {
                stack.push(a.target);
            }
        }
    }
    seen == n
}

fn vertex_ref(c: &mut Cursor, q: &Quiver) -> Result<usize> {
    let col = c.col();
    let s = match c.next() {
        Some(Tok::Ident(s)) | Some(Tok::Num(s)) => s,
        _ => return perr(c.line, col, "expected a vertex"),
    };
    if let Some(i) = q.vertex_names.iter().position(|v| *v == s) {
        return Ok(i);
    }
    perr(c.line, col, format!("unknown vertex `{s}`"))
}

fn parse_relation(ln: usize, toks: &[Token], q: &Quiver, field: Field) -> Result<Relation> {
    let end_col = toks.last().map(|t| t.col + 1).unwrap_or(1);
    let mut c = Cursor { line: ln, toks, pos: 0, end_col };
    let mut terms: Vec<(Scalar, Vec<usize>)> = Vec::new();
    let mut first = true;
    while !c.at_end() && !matches!(c.peek(), Some(Tok::Sym("="))) {
        let mut coef = field.one();
        if c.eat_sym("-") {
            coef = -coef;
        } else if !c.eat_sym("+") && !first {
            return c.err("expected `+` or `-` between terms");
        }
        first = false;
        if matches!(c.peek(), Some(Tok::Num(_))) {
            coef = &coef * &c.scalar(field)?;
            c.eat_sym("*");
        }
        let wcol = c.col();
        let mut word = Vec::new();
        loop {
            let acol = c.col();
            let a = c.ident("an arrow name")?;
            match q.arrow_index(&a) {
                Some(i) => word.push(i),
                None => return perr(ln, acol, format!("unknown arrow `{a}`")),
            }
            if !c.eat_sym("*") {
                break;
            }
        }
        if !word.windows(2).all(|p| q.arrows[p[0]].source == q.arrows[p[1]].target) {
            return perr(ln, wcol, "word is not a path: in `a*b` the source of `a` must be the target of `b`");
        }
        terms.push((coef, word));
    }
    if terms.is_empty() {
        return c.err("empty relation");
    }
    if c.eat_sym("=") {
        let col = c.col();
        match c.next() {
            Some(Tok::Num(z)) if z == "0" => {}
            _ => return perr(ln, col, "relations are written `... = 0`"),
        }
    }
    c.finish()?;
    let ends = |w: &Vec<usize>| (q.arrows[w[0]].target, q.arrows[*w.last().unwrap()].source);
    let e0 = ends(&terms[0].1);
    if terms.iter().any(|(_, w)| ends(w) != e0) {
        return perr(ln, toks.first().map(|t| t.col).unwrap_or(1), "relation terms are not parallel paths");
    }
    Ok(Relation { terms })
}

/// A parsed periodic complex together with its algebra.
#[derive(Clone, Debug)]
pub struct ComplexFile {
    pub algebra: Arc<Algebra>,
    pub complex: PeriodicComplex,
}

/// Algebras already built, so that complex files naming the same algebra
/// file or preset share one algebra instance.
#[derive(Default)]
pub struct AlgebraCache {
    built: HashMap<String, Arc<Algebra>>,
    files: Vec<PathBuf>,
}

impl AlgebraCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn load(&mut self, path: &Path, default_field: Field) -> Result<Arc<Algebra>> {
        let canon: PathBuf = path.canonicalize().unwrap_or_else(|_| path.to_path_buf());
        let key = format!("file:{}|{}", canon.display(), default_field.name());
        if let Some(a) = self.built.get(&key) {
            return Ok(a.clone());
        }
        let a = load_algebra(path, default_field)?;
        self.built.insert(key, a.clone());
        self.files.push(path.to_path_buf());
        Ok(a)
    }

    /// Algebra files read so far, in load order.
    pub fn files(&self) -> &[PathBuf] {
        &self.files
    }

    fn preset(&mut self, spec: &str, build: impl FnOnce() -> Result<Arc<Algebra>>) -> Result<Arc<Algebra>> {
        if let Some(a) = self.built.get(spec) {
            return Ok(a.clone());
        }
        let a = build()?;
        self.built.insert(spec.to_string(), a.clone());
        Ok(a)
    }
}

/// Loads an algebra file from disk.
pub fn load_algebra(path: &Path, default_field: Field) -> Result<Arc<Algebra>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?;
    parse_algebra(&text, default_field)?.build()
}

enum Summand {
    P(usize),
    S(usize),
    I(usize),
    M(usize, usize),
    Rep(Vec<usize>, Vec<(String, usize, Mat)>),
}

fn parse_matrix(c: &mut Cursor, field: Field) -> Result<Vec<Vec<Scalar>>> {
    c.expect_sym("[")?;
    let mut rows = Vec::new();
    if c.eat_sym("]") {
        return Ok(rows);
    }
    loop {
        let col = c.col();
        c.expect_sym("[")?;
        let mut row = Vec::new();
        if !c.eat_sym("]") {
            loop {
                row.push(c.scalar(field)?);
                if c.eat_sym("]") {
                    break;
                }
                c.expect_sym(",")?;
            }
        }
        if let Some(first) = rows.first() {
            let first: &Vec<Scalar> = first;
            if first.len() != row.len() {
                return perr(c.line, col, format!("row has {} entries, expected {}", row.len(), first.len()));
            }
        }
        rows.push(row);
        if c.eat_sym("]") {
            break;
        }
        c.expect_sym(",")?;
    }
    Ok(rows)
}

fn summand_vertex(c: &mut Cursor, alg: &Algebra) -> Result<usize> {
    let col = c.col();
    let s = match c.next() {
        Some(Tok::Ident(s)) | Some(Tok::Num(s)) => s,
        _ => return perr(c.line, col, "expected a vertex"),
    };
    match alg.vertex_names().iter().position(|v| *v == s) {
        Some(i) => Ok(i),
        None => perr(c.line, col, format!("unknown vertex `{s}`")),
    }
}

fn parse_summand(c: &mut Cursor, alg: &Algebra) -> Result<Summand> {
    let col = c.col();
    let kind = c.ident("a summand (P, S, I, M or rep)")?;
    c.expect_sym("(")?;
    let s = match kind.as_str() {
        "P" => Summand::P(summand_vertex(c, alg)?),
        "S" => Summand::S(summand_vertex(c, alg)?),
        "I" => Summand::I(summand_vertex(c, alg)?),
        "M" => {
            let v = summand_vertex(c, alg)?;
            c.expect_sym(",")?;
            let lcol = c.col();
            let l = c.nat("a length")?;
            if l == 0 {
                return perr(c.line, lcol, "length must be positive");
            }
            Summand::M(v, l)
        }
        "rep" => {
            let mut dims = Vec::new();
            loop {
                dims.push(c.nat("a dimension")?);
                if !c.eat_sym(",") {
                    break;
                }
            }
            if dims.len() != alg.n_vertices() {
                return perr(c.line, col, format!("rep needs {} dimensions", alg.n_vertices()));
            }
            c.expect_sym(")")?;
            let mut mats = Vec::new();
            while matches!(c.peek(), Some(Tok::Ident(_))) {
                let acol = c.col();
                let name = c.ident("an arrow name")?;
                c.expect_sym("=")?;
                let rows = parse_matrix(c, alg.field())?;
                let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
                mats.push((name, acol, Mat::from_rows(alg.field(), rows, ncols)));
            }
            return Ok(Summand::Rep(dims, mats));
        }
        other => return perr(c.line, col, format!("unknown summand `{other}`")),
    };
    c.expect_sym(")")?;
    Ok(s)
}

fn build_summand(line: usize, s: Summand, alg: &Arc<Algebra>) -> Result<Module> {
    Ok(match s {
        Summand::P(v) => Module::projective(alg, v),
        Summand::S(v) => Module::simple(alg, v),
        Summand::I(v) => Module::injective(alg, v),
        Summand::M(v, l) => Module::radical_quotient_of_projective(alg, v, l),
        Summand::Rep(dims, mats) => {
            let field = alg.field();
            let mut arrows: Vec<Option<Mat>> = vec![None; alg.generators().len()];
            for (name, col, m) in mats {
                let gi = match alg.generators().iter().position(|g| g.name == name) {
                    Some(i) => i,
                    None => return perr(line, col, format!("unknown arrow `{name}`")),
                };
                let g = &alg.generators()[gi];
                let shape = (dims[g.right], dims[g.left]);
                // an empty matrix literal stands for any zero-sized block
                let m = if m.rows() == 0 { Mat::zeros(field, shape.0, shape.1) } else { m };
                if m.shape() != shape {
                    return perr(line, col, format!("arrow `{name}` needs a {}x{} matrix, got {}x{}", shape.0, shape.1, m.rows(), m.cols()));
                }
                arrows[gi] = Some(m);
            }
            let arrows = arrows
                .into_iter()
                .zip(alg.generators())
                .map(|(m, g)| m.unwrap_or_else(|| Mat::zeros(field, dims[g.right], dims[g.left])))
                .collect();
            Module::new(alg.clone(), dims, arrows).map_err(|e| Error::Precondition(format!("line {line}: {e}")))?
        }
    })
}

/// Parses a module expression such as `P(1)+M(2,1)` (the right-hand side
/// of a `module` line).
pub fn parse_module(text: &str, alg: &Arc<Algebra>) -> Result<Module> {
    let toks = tokenize(1, text)?;
    let mut c = Cursor::new(1, &toks, text);
    let mut parts = Vec::new();
    loop {
        let s = parse_summand(&mut c, alg)?;
        parts.push(build_summand(1, s, alg)?);
        if !c.eat_sym("+") {
            break;
        }
    }
    c.finish()?;
    Ok(if parts.len() == 1 { parts.pop().unwrap() } else { Module::direct_sum(alg, &parts.iter().collect::<Vec<_>>()) })
}

/// Splits a total matrix over vertex-ordered bases into per-vertex blocks,
/// rejecting entries between different vertices.
fn split_total(line: usize, col: usize, total: &Mat, src: &[usize], tgt: &[usize]) -> Result<ModMap> {
    let field = total.field();
    let (rs, cs): (usize, usize) = (tgt.iter().sum(), src.iter().sum());
    if total.shape() != (rs, cs) && !(rs * cs == 0 && total.rows() == 0) {
        return perr(line, col, format!("differential needs a {rs}x{cs} matrix, got {}x{}", total.rows(), total.cols()));
    }
    if rs * cs == 0 {
        return Ok(ModMap::zero(field, src, tgt));
    }
    let mut blocks = Vec::new();
    let (mut r0, mut c0) = (0, 0);
    for v in 0..src.len() {
        blocks.push(total.block(r0, tgt[v], c0, src[v]));
        r0 += tgt[v];
        c0 += src[v];
    }
    let rebuilt = Mat::block_diag(field, &blocks.iter().collect::<Vec<_>>());
    if &rebuilt != total {
        return perr(line, col, "differential mixes components at different vertices");
    }
    Ok(ModMap { blocks })
}

/// Parses a periodic complex. `algebra <path>` is resolved relative to
/// `base`.
pub fn parse_complex(text: &str, base: &Path, default_field: Field) -> Result<ComplexFile> {
    parse_complex_with(text, base, default_field, &mut AlgebraCache::new())
}

pub fn parse_complex_with(text: &str, base: &Path, default_field: Field, cache: &mut AlgebraCache) -> Result<ComplexFile> {
    let mut field = default_field;
    let mut alg: Option<Arc<Algebra>> = None;
    let mut period: Option<usize> = None;
    let mut modules: Vec<(usize, Vec<Token>, String)> = Vec::new();
    let mut diffs: Vec<(usize, Vec<Token>, String)> = Vec::new();
    for (ln, raw) in lines(text) {
        let toks = tokenize(ln, raw)?;
        if toks.is_empty() {
            continue;
        }
        let mut c = Cursor::new(ln, &toks, raw);
        let kw = c.ident("a directive")?;
        match kw.as_str() {
            "field" => {
                if alg.is_some() {
                    return perr(ln, 1, "`field` must come before `algebra`");
                }
                let col = c.col();
                field = c.rest_text(raw).parse().or_else(|e: Error| perr(ln, col, e.to_string()))?;
            }
            "algebra" => {
                if alg.is_some() {
                    return perr(ln, 1, "duplicate `algebra` line");
                }
                if matches!(c.peek(), Some(Tok::Ident(s)) if s == "preset") {
                    let key = format!("preset:{}|{}", c.rest_text(raw), field.name());
                    c.pos += 1;
                    let p = parse_preset(&mut c, field)?;
                    alg = Some(cache.preset(&key, || p.build())?);
                } else {
                    let path = c.rest_text(raw);
                    if path.is_empty() {
                        return c.err("expected a path or `preset ...`");
                    }
                    alg = Some(cache.load(&base.join(path), field)?);
                }
            }
            "period" => {
                let m = c.nat("the period")?;
                if m == 0 {
                    return perr(ln, toks[1].col, "period must be at least 1");
                }
                c.finish()?;
                period = Some(m);
            }
            "module" => modules.push((ln, toks.clone(), raw.to_string())),
            "diff" => diffs.push((ln, toks.clone(), raw.to_string())),
            other => return perr(ln, toks[0].col, format!("unknown directive `{other}`")),
        }
    }
    let alg = alg.ok_or_else(|| Error::Parse { line: 1, col: 1, msg: "missing `algebra` line".into() })?;
    let m = period.ok_or_else(|| Error::Parse { line: 1, col: 1, msg: "missing `period` line".into() })?;
    let mut comps: Vec<Option<Module>> = vec![None; m];
    for (ln, toks, raw) in &modules {
        let mut c = Cursor::new(*ln, toks, raw);
        c.pos = 1;
        let dcol = c.col();
        let i = c.nat("a degree")?;
        if i >= m {
            return perr(*ln, dcol, format!("degree {i} outside 0..{m}"));
        }
        if comps[i].is_some() {
            return perr(*ln, dcol, format!("component {i} given twice"));
        }
        c.expect_sym("=")?;
        let mut parts = Vec::new();
        loop {
            let s = parse_summand(&mut c, &alg)?;
            parts.push(build_summand(*ln, s, &alg)?);
            if !c.eat_sym("+") {
                break;
            }
        }
        c.finish()?;
        comps[i] = Some(if parts.len() == 1 { parts.pop().unwrap() } else { Module::direct_sum(&alg, &parts.iter().collect::<Vec<_>>()) });
    }
    let comps: Vec<Module> = comps.into_iter().map(|c| c.unwrap_or_else(|| Module::zero(&alg))).collect();
    let mut dmaps: Vec<Option<ModMap>> = vec![None; m];
    let mut diff_lines = vec![0; m];
    for (ln, toks, raw) in &diffs {
        let mut c = Cursor::new(*ln, toks, raw);
        c.pos = 1;
        let dcol = c.col();
        let i = c.nat("a degree")?;
        if i >= m {
            return perr(*ln, dcol, format!("degree {i} outside 0..{m}"));
        }
        if dmaps[i].is_some() {
            return perr(*ln, dcol, format!("differential {i} given twice"));
        }
        c.expect_sym("=")?;
        let mcol = c.col();
        let rows = parse_matrix(&mut c, alg.field())?;
        c.finish()?;
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let total = Mat::from_rows(alg.field(), rows, ncols);
        let (src, tgt) = (&comps[i], &comps[(i + 1) % m]);
        let f = split_total(*ln, mcol, &total, src.dims(), tgt.dims())?;
        if !f.is_hom(src, tgt) {
            return Err(Error::Precondition(format!("line {ln}: differential {i} is not a module map")));
        }
        dmaps[i] = Some(f);
        diff_lines[i] = *ln;
    }
    let dmaps: Vec<ModMap> = dmaps
        .into_iter()
        .enumerate()
        .map(|(i, d)| d.unwrap_or_else(|| ModMap::zero_between(&comps[i], &comps[(i + 1) % m])))
        .collect();
    for i in 0..m {
        if !dmaps[(i + 1) % m].compose(&dmaps[i]).is_zero() {
            return Err(Error::Precondition(format!("d^{} d^{i} != 0 (line {})", (i + 1) % m, diff_lines[(i + 1) % m].max(diff_lines[i]))));
        }
    }
    let complex = PeriodicComplex::new(m, comps, dmaps)?;
    Ok(ComplexFile { algebra: alg, complex })
}

pub fn load_complex(path: &Path, default_field: Field) -> Result<ComplexFile> {
    load_complex_with(path, default_field, &mut AlgebraCache::new())
}

pub fn load_complex_with(path: &Path, default_field: Field, cache: &mut AlgebraCache) -> Result<ComplexFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Precondition(format!("cannot read {}: {e}", path.display())))?;
    parse_complex_with(&text, path.parent().unwrap_or(Path::new(".")), default_field, cache)
}

#[cfg(test)]
mod tests {
    use super::*;

    const A2: &str = "name kA2\nfield Q\nvertices 2\narrow a: 1 -> 2\n";

    #[test]
    fn algebra_file() {
        let p = parse_algebra(A2, Field::Rationals).unwrap();
        let a = p.build().unwrap();
        assert_eq!(a.dim(), 3);
        let sq = "vertices 4\narrow a: 1 -> 2\narrow b: 1 -> 3\narrow c: 2 -> 4\narrow d: 3 -> 4\nrelation c*a - d*b = 0\n";
        assert_eq!(parse_algebra(sq, Field::Rationals).unwrap().build().unwrap().dim(), 4 + 4 + 1);
        let zero_rel = "vertices 3\narrow a: 1 -> 2\narrow b: 2 -> 3\nrelation 2/3 b*a\n";
        assert_eq!(parse_algebra(zero_rel, Field::Rationals).unwrap().build().unwrap().dim(), 5);
        let pre = "preset cyclic 3 3\nfield F5\n";
        let p = parse_algebra(pre, Field::Rationals).unwrap();
        assert_eq!(p.field, Field::Prime(5));
        assert_eq!(p.build().unwrap().dim(), 9);
        let named = "vertices 2 x y\narrow t: x -> y\n";
        assert_eq!(parse_algebra(named, Field::Rationals).unwrap().build().unwrap().dim(), 3);
    }

    #[test]
    fn algebra_errors_have_positions() {
        let e = parse_algebra("vertices 2\narrow a: 1 -> 3\n", Field::Rationals).unwrap_err();
        assert_eq!(e, Error::Parse { line: 2, col: 15, msg: "unknown vertex `3`".into() });
        let e = parse_algebra("vertices 2\narrow a: 1 -> 2\nrelation a*a\n", Field::Rationals).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, col: 10, .. }), "{e:?}");
        let e = parse_algebra("vertices 1\narrow x: 1 -> 1\n", Field::Rationals).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, .. }));
        let e = parse_algebra("vertices 2\nfoo\n", Field::Rationals).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, col: 1, .. }));
        let e = parse_algebra("vertices 2 $\n", Field::Rationals).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, col: 12, .. }));
    }

    #[test]
    fn complex_file() {
        let dir = tempdir();
        std::fs::write(dir.join("a2.alg"), A2).unwrap();
        // P(2) -> S(2): P(2) has basis a (vertex 1) then e2 (vertex 2)
        let text = "algebra a2.alg\nperiod 2\nmodule 0 = P(2)\nmodule 1 = S(2)\ndiff 0 = [[0,1]]\n";
        let cf = parse_complex(text, &dir, Field::Rationals).unwrap();
        assert_eq!(cf.complex.cohomology_dims(), vec![1, 0]);
        let text = "algebra preset dual-numbers\nperiod 2\nmodule 0 = P(1)\nmodule 1 = P(1)\ndiff 0 = [[0,0],[1,0]]\n";
        let cf = parse_complex(text, &dir, Field::Rationals).unwrap();
        assert_eq!(cf.complex.cohomology_dims(), vec![1, 1]);
        let text = "algebra preset dual-numbers\nperiod 1\nmodule 0 = rep(2) x=[[0,0],[1,0]]\n";
        let cf = parse_complex(text, &dir, Field::Rationals).unwrap();
        assert_eq!(cf.complex.cohomology_dims(), vec![2]);
    }

    #[test]
    fn cache_shares_algebras() {
        let mut cache = AlgebraCache::new();
        let text = "algebra preset linear 2\nperiod 2\nmodule 0 = S(1)\n";
        let x = parse_complex_with(text, Path::new("."), Field::Rationals, &mut cache).unwrap();
        let y = parse_complex_with(text, Path::new("."), Field::Rationals, &mut cache).unwrap();
        assert!(Arc::ptr_eq(&x.algebra, &y.algebra));
        let z = parse_complex(text, Path::new("."), Field::Rationals).unwrap();
        assert!(!Arc::ptr_eq(&x.algebra, &z.algebra));
    }

    #[test]
    fn module_expressions() {
        let a = parse_algebra("preset cyclic 3 3", Field::Rationals).unwrap().build().unwrap();
        let m = parse_module("M(1,1) + M(1,2)", &a).unwrap();
        assert_eq!(m.dim(), 3);
        assert!(matches!(parse_module("M(1,1) +", &a), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_module("Q(1)", &a), Err(Error::Parse { col: 1, .. })));
    }

    #[test]
    fn complex_errors() {
        let dir = tempdir();
        let bad_square = "algebra preset dual-numbers\nperiod 1\nmodule 0 = P(1)\ndiff 0 = [[1,0],[0,1]]\n";
        assert!(matches!(parse_complex(bad_square, &dir, Field::Rationals), Err(Error::Precondition(_))));
        let bad_shape = "algebra preset dual-numbers\nperiod 1\nmodule 0 = P(1)\ndiff 0 = [[1]]\n";
        assert!(matches!(parse_complex(bad_shape, &dir, Field::Rationals), Err(Error::Parse { line: 4, col: 10, .. })));
        let mixed = "algebra preset linear 2\nperiod 1\nmodule 0 = S(1) + S(2)\ndiff 0 = [[0,1],[0,0]]\n";
        assert!(matches!(parse_complex(mixed, &dir, Field::Rationals), Err(Error::Parse { line: 4, .. })));
        let unknown = "algebra preset linear 2\nperiod 1\nmodule 0 = Q(1)\n";
        assert!(matches!(parse_complex(unknown, &dir, Field::Rationals), Err(Error::Parse { line: 3, col: 12, .. })));
    }

    fn tempdir() -> std::path::PathBuf {
        let d = std::env::temp_dir().join(format!("periodica-parse-{}", std::process::id()));
        std::fs::create_dir_all(&d).unwrap();
        d
    }
}
