//! Bit-exact textual format: an s-expression grammar with named binders.
//!
//! One term per top-level form. Definition files contain
//! `(define name : type = body)` forms, optionally with a
//! `(ref "citation")` provenance field after the name.

use crate::syntax::*;
use std::fmt::Write as _;
use std::rc::Rc;

#[derive(Debug, thiserror::Error)]
#[error("{line}:{col}: {msg}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub msg: String,
}

#[derive(Clone, Debug)]
enum SExp {
    Atom(String, usize, usize),
    Str(String, usize, usize),
    List(Vec<SExp>, usize, usize),
}

impl SExp {
    fn pos(&self) -> (usize, usize) {
        match self {
            SExp::Atom(_, l, c) | SExp::Str(_, l, c) | SExp::List(_, l, c) => (*l, *c),
        }
    }
}

fn err<T>(s: &SExp, msg: impl Into<String>) -> Result<T, ParseError> {
    let (line, col) = s.pos();
    Err(ParseError { line, col, msg: msg.into() })
}

fn lex(src: &str) -> Result<Vec<SExp>, ParseError> {
    let mut stack: Vec<(Vec<SExp>, usize, usize)> = vec![(Vec::new(), 1, 1)];
    let mut line = 1usize;
    let mut col = 1usize;
    let mut chars = src.chars().peekable();
    while let Some(ch) = chars.next() {
        let (l0, c0) = (line, col);
        if ch == '\n' {
            line += 1;
            col = 1;
            continue;
        }
        col += 1;
        match ch {
            ';' => {
                for c in chars.by_ref() {
                    if c == '\n' {
                        line += 1;
                        col = 1;
                        break;
                    }
                }
            }
            '(' => stack.push((Vec::new(), l0, c0)),
            ')' => {
                let (items, ll, cc) = stack.pop().ok_or(ParseError { line: l0, col: c0, msg: "unbalanced )".into() })?;
                if stack.is_empty() {
                    return Err(ParseError { line: l0, col: c0, msg: "unbalanced )".into() });
                }
                stack.last_mut().unwrap().0.push(SExp::List(items, ll, cc));
            }
            '"' => {
                let mut s = String::new();
                loop {
                    match chars.next() {
                        Some('"') => break,
                        Some('\n') => {
                            line += 1;
                            col = 1;
                            s.push('\n');
                        }
                        Some(c) => {
                            col += 1;
                            s.push(c);
                        }
                        None => return Err(ParseError { line: l0, col: c0, msg: "unterminated string".into() }),
                    }
                }
                stack.last_mut().unwrap().0.push(SExp::Str(s, l0, c0));
            }
            c if c.is_whitespace() => {}
            c => {
                let mut s = String::new();
                s.push(c);
                while let Some(&n) = chars.peek() {
                    if n.is_whitespace() || n == '(' || n == ')' || n == ';' || n == '"' {
                        break;
                    }
                    s.push(n);
                    chars.next();
                    col += 1;
                }
                stack.last_mut().unwrap().0.push(SExp::Atom(s, l0, c0));
            }
        }
    }
    if stack.len() != 1 {
        return Err(ParseError { line, col, msg: "unbalanced (".into() });
    }
    Ok(stack.pop().unwrap().0)
}

struct Scope<'a> {
    reg: &'a Registry,
    vars: Vec<String>,
    ivars: Vec<String>,
}

impl<'a> Scope<'a> {
    fn lookup_var(&self, n: &str) -> Option<u32> {
        self.vars.iter().rev().position(|v| v == n).map(|i| i as u32)
    }

    fn lookup_ivar(&self, n: &str) -> Option<u32> {
        self.ivars.iter().rev().position(|v| v == n).map(|i| i as u32)
    }
}

fn nat_tower(n: u64) -> Term {
    let mut t = Term::Ctor { hit: hits::NAT, ctor: 0, params: vec![], args: vec![], iargs: vec![] };
    for _ in 0..n {
        t = Term::Ctor { hit: hits::NAT, ctor: 1, params: vec![], args: vec![tm(t)], iargs: vec![] };
    }
    t
}

fn int_tower(n: i64) -> Term {
    if n >= 0 {
        Term::Ctor { hit: hits::INT, ctor: 0, params: vec![], args: vec![tm(nat_tower(n as u64))], iargs: vec![] }
    } else {
        Term::Ctor {
            hit: hits::INT,
            ctor: 1,
            params: vec![],
            args: vec![tm(nat_tower((-n - 1) as u64))],
            iargs: vec![],
        }
    }
}

fn parse_iexp(s: &SExp, sc: &Scope) -> Result<ITm, ParseError> {
    match s {
        SExp::Atom(a, ..) => match a.as_str() {
            "i0" => Ok(ITm::I0),
            "i1" => Ok(ITm::I1),
            _ => match sc.lookup_ivar(a) {
                Some(i) => Ok(ITm::IVar(i)),
                None => err(s, format!("unknown interval variable {}", a)),
            },
        },
        SExp::List(items, ..) => {
            let head = match items.first() {
                Some(SExp::Atom(h, ..)) => h.as_str(),
                _ => return err(s, "expected interval form"),
            };
            match (head, items.len()) {
                ("imin", 3) => Ok(ITm::Meet(Rc::new(parse_iexp(&items[1], sc)?), Rc::new(parse_iexp(&items[2], sc)?))),
                ("imax", 3) => Ok(ITm::Join(Rc::new(parse_iexp(&items[1], sc)?), Rc::new(parse_iexp(&items[2], sc)?))),
                ("inot", 2) => Ok(ITm::Neg(Rc::new(parse_iexp(&items[1], sc)?))),
                _ => err(s, "expected (imin a b), (imax a b) or (inot a)"),
            }
        }
        SExp::Str(..) => err(s, "unexpected string"),
    }
}

fn parse_cof(s: &SExp, sc: &Scope) -> Result<CofTm, ParseError> {
    match s {
        SExp::Atom(a, ..) => match a.as_str() {
            "top" => Ok(CofTm::Top),
            "bot" => Ok(CofTm::Bot),
            _ => err(s, format!("unknown cofibration {}", a)),
        },
        SExp::List(items, ..) => {
            let head = match items.first() {
                Some(SExp::Atom(h, ..)) => h.as_str(),
                _ => return err(s, "expected cofibration form"),
            };
            match (head, items.len()) {
                ("=", 3) => {
                    let v = match &items[1] {
                        SExp::Atom(a, ..) => sc
                            .lookup_ivar(a)
                            .ok_or_else(|| ParseError { line: s.pos().0, col: s.pos().1, msg: format!("unknown interval variable {}", a) })?,
                        _ => return err(s, "expected interval variable"),
                    };
                    match &items[2] {
                        SExp::Atom(e, ..) if e == "0" => Ok(CofTm::Eq(v, false)),
                        SExp::Atom(e, ..) if e == "1" => Ok(CofTm::Eq(v, true)),
                        _ => err(s, "expected 0 or 1"),
                    }
                }
                ("/\\", 3) => Ok(CofTm::And(Rc::new(parse_cof(&items[1], sc)?), Rc::new(parse_cof(&items[2], sc)?))),
                ("\\/", 3) => Ok(CofTm::Or(Rc::new(parse_cof(&items[1], sc)?), Rc::new(parse_cof(&items[2], sc)?))),
                _ => err(s, "expected (= i 0|1), (/\\ a b) or (\\/ a b)"),
            }
        }
        SExp::Str(..) => err(s, "unexpected string"),
    }
}

fn binder_name(s: &SExp) -> Result<String, ParseError> {
    match s {
        SExp::Atom(a, ..) => Ok(a.clone()),
        _ => err(s, "expected binder name"),
    }
}

fn parse_tm(s: &SExp, sc: &mut Scope) -> Result<Tm, ParseError> {
    match s {
        SExp::Str(..) => err(s, "unexpected string"),
        SExp::Atom(a, ..) => {
            if let Some(i) = sc.lookup_var(a) {
                return Ok(tm(Term::Var(i)));
            }
            if let Some(rest) = a.strip_prefix('U') {
                if let Ok(l) = rest.parse::<u16>() {
                    return Ok(tm(Term::U(l)));
                }
            }
            if a.chars().all(|c| c.is_ascii_digit()) {
                return Ok(tm(nat_tower(a.parse::<u64>().map_err(|_| ParseError {
                    line: s.pos().0,
                    col: s.pos().1,
                    msg: "numeral too large".into(),
                })?)));
            }
            if (a.starts_with('+') || a.starts_with('-')) && a.len() > 1 && a[1..].chars().all(|c| c.is_ascii_digit()) {
                return Ok(tm(int_tower(a.parse::<i64>().map_err(|_| ParseError {
                    line: s.pos().0,
                    col: s.pos().1,
                    msg: "numeral too large".into(),
                })?)));
            }
            if let Some(h) = sc.reg.hit_by_name(a) {
                if sc.reg.hit(h).params.is_empty() {
                    return Ok(tm(Term::HitTy(h, vec![])));
                }
            }
            if let Some(d) = sc.reg.def_by_name(a) {
                return Ok(tm(Term::DefRef(d)));
            }
            err(s, format!("unknown identifier {}", a))
        }
        SExp::List(items, ..) => {
            if items.is_empty() {
                return err(s, "empty form");
            }
            let head = match &items[0] {
                SExp::Atom(h, ..) => h.clone(),
                _ => return err(&items[0], "expected form head"),
            };
            let n = items.len();
            let form = |want: usize| -> Result<(), ParseError> {
                if n != want {
                    err(s, format!("{} expects {} arguments", head, want - 1))
                } else {
                    Ok(())
                }
            };
            match head.as_str() {
                "lam" => {
                    form(3)?;
                    let x = binder_name(&items[1])?;
                    sc.vars.push(x.clone());
                    let b = parse_tm(&items[2], sc);
                    sc.vars.pop();
                    Ok(tm(Term::Lam(Rc::from(x.as_str()), b?)))
                }
                "pi" | "sig" => {
                    form(4)?;
                    let x = binder_name(&items[1])?;
                    let a = parse_tm(&items[2], sc)?;
                    sc.vars.push(x.clone());
                    let b = parse_tm(&items[3], sc);
                    sc.vars.pop();
                    let b = b?;
                    Ok(tm(if head == "pi" {
                        Term::Pi(Rc::from(x.as_str()), a, b)
                    } else {
                        Term::Sigma(Rc::from(x.as_str()), a, b)
                    }))
                }
                "app" => {
                    if n < 3 {
                        return err(s, "app expects at least 2 arguments");
                    }
                    let mut t = parse_tm(&items[1], sc)?;
                    for it in &items[2..] {
                        t = tm(Term::App(t, parse_tm(it, sc)?));
                    }
                    Ok(t)
                }
                "pair" => {
                    form(3)?;
                    Ok(tm(Term::Pair(parse_tm(&items[1], sc)?, parse_tm(&items[2], sc)?)))
                }
                "fst" => {
                    form(2)?;
                    Ok(tm(Term::Fst(parse_tm(&items[1], sc)?)))
                }
                "snd" => {
                    form(2)?;
                    Ok(tm(Term::Snd(parse_tm(&items[1], sc)?)))
                }
                "pathp" => {
                    form(4)?;
                    Ok(tm(Term::PathP(
                        parse_tm(&items[1], sc)?,
                        parse_tm(&items[2], sc)?,
                        parse_tm(&items[3], sc)?,
                    )))
                }
                "plam" => {
                    form(3)?;
                    let x = binder_name(&items[1])?;
                    sc.ivars.push(x.clone());
                    let b = parse_tm(&items[2], sc);
                    sc.ivars.pop();
                    Ok(tm(Term::Plam(Rc::from(x.as_str()), b?)))
                }
                "papp" => {
                    if n < 3 {
                        return err(s, "papp expects at least 2 arguments");
                    }
                    let mut t = parse_tm(&items[1], sc)?;
                    for it in &items[2..] {
                        t = tm(Term::Papp(t, parse_iexp(it, sc)?));
                    }
                    Ok(t)
                }
                "transp" => {
                    form(4)?;
                    let line = parse_tm(&items[1], sc)?;
                    if !matches!(&*line, Term::Plam(..)) {
                        return err(&items[1], "transp line must be a plam");
                    }
                    Ok(tm(Term::Transp(line, parse_cof(&items[2], sc)?, parse_tm(&items[3], sc)?)))
                }
                "hcomp" => {
                    form(4)?;
                    let ty = parse_tm(&items[1], sc)?;
                    let sys = match &items[2] {
                        SExp::List(entries, ..) => {
                            let mut sys = Vec::new();
                            for e in entries {
                                match e {
                                    SExp::List(pair, ..) if pair.len() == 2 => {
                                        let c = parse_cof(&pair[0], sc)?;
                                        let p = parse_tm(&pair[1], sc)?;
                                        if !matches!(&*p, Term::Plam(..)) {
                                            return err(&pair[1], "hcomp payload must be a plam");
                                        }
                                        sys.push((c, p));
                                    }
                                    _ => return err(e, "expected (φ (plam i t))"),
                                }
                            }
                            sys
                        }
                        _ => return err(&items[2], "expected system"),
                    };
                    Ok(tm(Term::HComp { ty, sys, cap: parse_tm(&items[3], sc)? }))
                }
                "glue" => {
                    form(3)?;
                    let base = parse_tm(&items[1], sc)?;
                    let sys = match &items[2] {
                        SExp::List(entries, ..) => {
                            let mut sys = Vec::new();
                            for e in entries {
                                match e {
                                    SExp::List(pair, ..) if pair.len() == 2 => {
                                        let c = parse_cof(&pair[0], sc)?;
                                        match &pair[1] {
                                            SExp::List(te, ..) if te.len() == 2 => {
                                                sys.push((c, parse_tm(&te[0], sc)?, parse_tm(&te[1], sc)?));
                                            }
                                            _ => return err(&pair[1], "expected (T e)"),
                                        }
                                    }
                                    _ => return err(e, "expected (φ (T e))"),
                                }
                            }
                            sys
                        }
                        _ => return err(&items[2], "expected system"),
                    };
                    Ok(tm(Term::GlueTy { base, sys }))
                }
                "glue-in" => {
                    form(3)?;
                    let sys = match &items[1] {
                        SExp::List(entries, ..) => {
                            let mut sys = Vec::new();
                            for e in entries {
                                match e {
                                    SExp::List(pair, ..) if pair.len() == 2 => {
                                        sys.push((parse_cof(&pair[0], sc)?, parse_tm(&pair[1], sc)?));
                                    }
                                    _ => return err(e, "expected (φ t)"),
                                }
                            }
                            sys
                        }
                        _ => return err(&items[1], "expected system"),
                    };
                    Ok(tm(Term::Glue { sys, base: parse_tm(&items[2], sc)? }))
                }
                "unglue" => {
                    form(2)?;
                    Ok(tm(Term::Unglue(parse_tm(&items[1], sc)?)))
                }
                "ctor" => {
                    if n < 3 {
                        return err(s, "ctor expects a type and constructor name");
                    }
                    let hname = binder_name(&items[1])?;
                    let hit = sc
                        .reg
                        .hit_by_name(&hname)
                        .ok_or_else(|| ParseError { line: s.pos().0, col: s.pos().1, msg: format!("unknown type {}", hname) })?;
                    let cname = binder_name(&items[2])?;
                    let ctor = sc.reg.hit(hit).ctor_index(&cname).ok_or_else(|| ParseError {
                        line: s.pos().0,
                        col: s.pos().1,
                        msg: format!("unknown constructor {}.{}", hname, cname),
                    })?;
                    let sig_iargs = sc.reg.hit(hit).ctors[ctor].iargs as usize;
                    let sig_args = sc.reg.hit(hit).ctors[ctor].args.len();
                    // trailing (ivars…) list only when the ctor has interval args
                    let mut rest: &[SExp] = &items[3..];
                    let mut iargs = Vec::new();
                    if sig_iargs > 0 {
                        match rest.last() {
                            Some(SExp::List(ivs, ..)) if rest.len() == sig_args + 1 => {
                                for iv in ivs {
                                    iargs.push(parse_iexp(iv, sc)?);
                                }
                                rest = &rest[..rest.len() - 1];
                            }
                            _ => return err(s, format!("constructor {} expects ({} ivars)", cname, sig_iargs)),
                        }
                        if iargs.len() != sig_iargs {
                            return err(s, format!("constructor {} expects {} ivars", cname, sig_iargs));
                        }
                    }
                    if rest.len() != sig_args {
                        return err(s, format!("constructor {} expects {} arguments", cname, sig_args));
                    }
                    let mut args = Vec::new();
                    for a in rest {
                        args.push(parse_tm(a, sc)?);
                    }
                    Ok(tm(Term::Ctor { hit, ctor, params: vec![], args, iargs }))
                }
                "elim" => {
                    form(5)?;
                    let hname = binder_name(&items[1])?;
                    let hit = sc
                        .reg
                        .hit_by_name(&hname)
                        .ok_or_else(|| ParseError { line: s.pos().0, col: s.pos().1, msg: format!("unknown type {}", hname) })?;
                    let motive = parse_tm(&items[2], sc)?;
                    let methods = match &items[3] {
                        SExp::List(ms, ..) => {
                            let mut methods = Vec::new();
                            for m in ms {
                                methods.push(parse_tm(m, sc)?);
                            }
                            methods
                        }
                        _ => return err(&items[3], "expected (methods…)"),
                    };
                    if methods.len() != sc.reg.hit(hit).ctors.len() {
                        return err(s, format!("elim for {} expects {} methods", hname, sc.reg.hit(hit).ctors.len()));
                    }
                    Ok(tm(Term::Elim { hit, motive, methods, scrut: parse_tm(&items[4], sc)? }))
                }
                "def" => {
                    form(2)?;
                    let dname = binder_name(&items[1])?;
                    match sc.reg.def_by_name(&dname) {
                        Some(d) => Ok(tm(Term::DefRef(d))),
                        None => err(s, format!("unknown definition {}", dname)),
                    }
                }
                "the" => {
                    form(3)?;
                    Ok(tm(Term::Ann(parse_tm(&items[2], sc)?, parse_tm(&items[1], sc)?)))
                }
                _ => {
                    // (HitName params…) for parametrized HIT types
                    if let Some(h) = sc.reg.hit_by_name(&head) {
                        let want = sc.reg.hit(h).params.len();
                        if n - 1 != want {
                            return err(s, format!("{} expects {} parameters", head, want));
                        }
                        let mut ps = Vec::new();
                        for p in &items[1..] {
                            ps.push(parse_tm(p, sc)?);
                        }
                        return Ok(tm(Term::HitTy(h, ps)));
                    }
                    err(s, format!("unknown form {}", head))
                }
            }
        }
    }
}

/// Parse a single term from UTF-8 text.
pub fn parse_term(reg: &Registry, text: &str) -> Result<Tm, ParseError> {
    let forms = lex(text)?;
    if forms.len() != 1 {
        return Err(ParseError { line: 1, col: 1, msg: format!("expected one term, found {} forms", forms.len()) });
    }
    let mut sc = Scope { reg, vars: Vec::new(), ivars: Vec::new() };
    parse_tm(&forms[0], &mut sc)
}

/// A parsed but not yet checked definition.
pub struct RawDef {
    pub name: String,
    pub provenance: String,
    pub ty: Tm,
    pub body: Tm,
}

/// Parse a definition file: a sequence of
/// `(define name [(ref "…")] : type = body)` forms. Definitions may refer to
/// earlier ones, so they are added to the registry by the caller one at a
/// time; this parser takes a callback invoked after each parse.
pub fn parse_defs(
    reg: &mut Registry,
    text: &str,
    mut sink: impl FnMut(&mut Registry, RawDef) -> Result<(), String>,
) -> Result<(), ParseError> {
    let forms = lex(text)?;
    for f in &forms {
        let items = match f {
            SExp::List(items, ..) => items,
            _ => return err(f, "expected (define …)"),
        };
        match items.first() {
            Some(SExp::Atom(h, ..)) if h == "define" => {}
            _ => return err(f, "expected (define …)"),
        }
        let name = binder_name(&items[1])?;
        let mut idx = 2;
        let mut provenance = String::new();
        if let Some(SExp::List(r, ..)) = items.get(idx) {
            if matches!(r.first(), Some(SExp::Atom(a, ..)) if a == "ref") {
                if let Some(SExp::Str(p, ..)) = r.get(1) {
                    provenance = p.clone();
                }
                idx += 1;
            }
        }
        match items.get(idx) {
            Some(SExp::Atom(c, ..)) if c == ":" => {}
            _ => return err(f, "expected :"),
        }
        let ty = {
            let mut sc = Scope { reg, vars: Vec::new(), ivars: Vec::new() };
            parse_tm(&items[idx + 1], &mut sc)?
        };
        match items.get(idx + 2) {
            Some(SExp::Atom(c, ..)) if c == "=" => {}
            _ => return err(f, "expected ="),
        }
        let body = {
            let mut sc = Scope { reg, vars: Vec::new(), ivars: Vec::new() };
            parse_tm(&items[idx + 3], &mut sc)?
        };
        if items.len() != idx + 4 {
            return err(f, "trailing forms in define");
        }
        sink(reg, RawDef { name, provenance, ty, body }).map_err(|msg| {
            let (line, col) = f.pos();
            ParseError { line, col, msg }
        })?;
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

struct Printer<'a> {
    reg: &'a Registry,
    vars: Vec<String>,
    ivars: Vec<String>,
}

impl<'a> Printer<'a> {
    fn fresh(&self, hint: &str, ivar: bool) -> String {
        let taken = |n: &str| {
            self.vars.iter().any(|v| v == n)
                || self.ivars.iter().any(|v| v == n)
                || self.reg.def_by_name(n).is_some()
                || self.reg.hit_by_name(n).is_some()
                || n == "i0"
                || n == "i1"
                || n == "top"
                || n == "bot"
        };
        let hint = if hint.is_empty() || hint == "_" {
            if ivar {
                "i"
            } else {
                "x"
            }
        } else {
            hint
        };
        if !taken(hint) {
            return hint.to_string();
        }
        for k in 1.. {
            let cand = format!("{}{}", hint, k);
            if !taken(&cand) {
                return cand;
            }
        }
        unreachable!()
    }

    fn iexp(&self, e: &ITm, out: &mut String) {
        match e {
            ITm::I0 => out.push_str("i0"),
            ITm::I1 => out.push_str("i1"),
            ITm::IVar(i) => out.push_str(&self.ivars[self.ivars.len() - 1 - *i as usize]),
            ITm::Meet(a, b) => {
                out.push_str("(imin ");
                self.iexp(a, out);
                out.push(' ');
                self.iexp(b, out);
                out.push(')');
            }
            ITm::Join(a, b) => {
                out.push_str("(imax ");
                self.iexp(a, out);
                out.push(' ');
                self.iexp(b, out);
                out.push(')');
            }
            ITm::Neg(a) => {
                out.push_str("(inot ");
                self.iexp(a, out);
                out.push(')');
            }
        }
    }

    fn cof(&self, c: &CofTm, out: &mut String) {
        match c {
            CofTm::Top => out.push_str("top"),
            CofTm::Bot => out.push_str("bot"),
            CofTm::Eq(i, e) => {
                let _ = write!(
                    out,
                    "(= {} {})",
                    self.ivars[self.ivars.len() - 1 - *i as usize],
                    if *e { 1 } else { 0 }
                );
            }
            CofTm::And(a, b) => {
                out.push_str("(/\\ ");
                self.cof(a, out);
                out.push(' ');
                self.cof(b, out);
                out.push(')');
            }
            CofTm::Or(a, b) => {
                out.push_str("(\\/ ");
                self.cof(a, out);
                out.push(' ');
                self.cof(b, out);
                out.push(')');
            }
        }
    }

    /// Detect canonical Nat towers.
    fn as_nat(&self, t: &Term) -> Option<u64> {
        match t {
            Term::Ctor { hit, ctor, args, .. } if *hit == hits::NAT => {
                if *ctor == 0 {
                    Some(0)
                } else {
                    self.as_nat(&args[0]).map(|n| n + 1)
                }
            }
            _ => None,
        }
    }

    fn as_int(&self, t: &Term) -> Option<i64> {
        match t {
            Term::Ctor { hit, ctor, args, .. } if *hit == hits::INT => {
                let n = self.as_nat(&args[0])?;
                Some(if *ctor == 0 { n as i64 } else { -(n as i64) - 1 })
            }
            _ => None,
        }
    }

    fn tm(&mut self, t: &Term, out: &mut String) {
        if let Some(n) = self.as_nat(t) {
            let _ = write!(out, "{}", n);
            return;
        }
        if let Some(n) = self.as_int(t) {
            let _ = write!(out, "{:+}", n);
            return;
        }
        match t {
            Term::Var(i) => out.push_str(&self.vars[self.vars.len() - 1 - *i as usize]),
            Term::U(l) => {
                let _ = write!(out, "U{}", l);
            }
            Term::DefRef(d) => out.push_str(&self.reg.def(*d).name),
            Term::Pi(x, a, b) | Term::Sigma(x, a, b) => {
                out.push_str(if matches!(t, Term::Pi(..)) { "(pi " } else { "(sig " });
                let x = self.fresh(x, false);
                out.push_str(&x);
                out.push(' ');
                self.tm(a, out);
                out.push(' ');
                self.vars.push(x);
                self.tm(b, out);
                self.vars.pop();
                out.push(')');
            }
            Term::Lam(x, b) => {
                let x = self.fresh(x, false);
                let _ = write!(out, "(lam {} ", x);
                self.vars.push(x);
                self.tm(b, out);
                self.vars.pop();
                out.push(')');
            }
            Term::App(a, b) => {
                out.push_str("(app ");
                self.tm(a, out);
                out.push(' ');
                self.tm(b, out);
                out.push(')');
            }
            Term::Pair(a, b) => {
                out.push_str("(pair ");
                self.tm(a, out);
                out.push(' ');
                self.tm(b, out);
                out.push(')');
            }
            Term::Fst(a) => {
                out.push_str("(fst ");
                self.tm(a, out);
                out.push(')');
            }
            Term::Snd(a) => {
                out.push_str("(snd ");
                self.tm(a, out);
                out.push(')');
            }
            Term::PathP(l, a, b) => {
                out.push_str("(pathp ");
                self.tm(l, out);
                out.push(' ');
                self.tm(a, out);
                out.push(' ');
                self.tm(b, out);
                out.push(')');
            }
            Term::Plam(x, b) => {
                let x = self.fresh(x, true);
                let _ = write!(out, "(plam {} ", x);
                self.ivars.push(x);
                self.tm(b, out);
                self.ivars.pop();
                out.push(')');
            }
            Term::Papp(a, r) => {
                out.push_str("(papp ");
                self.tm(a, out);
                out.push(' ');
                self.iexp(r, out);
                out.push(')');
            }
            Term::Transp(l, c, b) => {
                out.push_str("(transp ");
                self.tm(l, out);
                out.push(' ');
                self.cof(c, out);
                out.push(' ');
                self.tm(b, out);
                out.push(')');
            }
            Term::HComp { ty, sys, cap } => {
                out.push_str("(hcomp ");
                self.tm(ty, out);
                out.push_str(" (");
                for (k, (c, p)) in sys.iter().enumerate() {
                    if k > 0 {
                        out.push(' ');
                    }
                    out.push('(');
                    self.cof(c, out);
                    out.push(' ');
                    self.tm(p, out);
                    out.push(')');
                }
                out.push_str(") ");
                self.tm(cap, out);
                out.push(')');
            }
            Term::GlueTy { base, sys } => {
                out.push_str("(glue ");
                self.tm(base, out);
                out.push_str(" (");
                for (k, (c, t1, e1)) in sys.iter().enumerate() {
                    if k > 0 {
                        out.push(' ');
                    }
                    out.push('(');
                    self.cof(c, out);
                    out.push_str(" (");
                    self.tm(t1, out);
                    out.push(' ');
                    self.tm(e1, out);
                    out.push_str("))");
                }
                out.push_str("))");
            }
            Term::Glue { sys, base } => {
                out.push_str("(glue-in (");
                for (k, (c, p)) in sys.iter().enumerate() {
                    if k > 0 {
                        out.push(' ');
                    }
                    out.push('(');
                    self.cof(c, out);
                    out.push(' ');
                    self.tm(p, out);
                    out.push(')');
                }
                out.push_str(") ");
                self.tm(base, out);
                out.push(')');
            }
            Term::Unglue(a) => {
                out.push_str("(unglue ");
                self.tm(a, out);
                out.push(')');
            }
            Term::HitTy(h, ps) => {
                let name = &self.reg.hit(*h).name;
                if ps.is_empty() {
                    out.push_str(name);
                } else {
                    let _ = write!(out, "({}", name);
                    for p in ps {
                        out.push(' ');
                        self.tm(p, out);
                    }
                    out.push(')');
                }
            }
            Term::Ctor { hit, ctor, args, iargs, .. } => {
                let sig = self.reg.hit(*hit);
                let _ = write!(out, "(ctor {} {}", sig.name, sig.ctors[*ctor].name);
                for a in args {
                    out.push(' ');
                    self.tm(a, out);
                }
                if !iargs.is_empty() {
                    out.push_str(" (");
                    for (k, r) in iargs.iter().enumerate() {
                        if k > 0 {
                            out.push(' ');
                        }
                        self.iexp(r, out);
                    }
                    out.push(')');
                }
                out.push(')');
            }
            Term::Elim { hit, motive, methods, scrut } => {
                let _ = write!(out, "(elim {} ", self.reg.hit(*hit).name);
                self.tm(motive, out);
                out.push_str(" (");
                for (k, m) in methods.iter().enumerate() {
                    if k > 0 {
                        out.push(' ');
                    }
                    self.tm(m, out);
                }
                out.push_str(") ");
                self.tm(scrut, out);
                out.push(')');
            }
            Term::Ann(a, ty) => {
                out.push_str("(the ");
                self.tm(ty, out);
                out.push(' ');
                self.tm(a, out);
                out.push(')');
            }
        }
    }
}

/// Deterministic textual form; round-trips through `parse_term`.
pub fn print_term(reg: &Registry, t: &Term) -> String {
    let mut p = Printer { reg, vars: Vec::new(), ivars: Vec::new() };
    let mut out = String::new();
    p.tm(t, &mut out);
    out
}
