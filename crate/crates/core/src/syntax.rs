//! Abstract syntax of the core language and the fixed registry of
//! higher-inductive-type signatures.
//!
//! Term variables and interval variables live in separate de Bruijn spaces.
//! `Lam`/`Pi`/`Sigma` bind a term variable; `Plam` binds an interval variable;
//! `Transp` lines and `HComp` system payloads are `Plam`s.

use std::collections::HashMap;
use std::rc::Rc;

pub type Tm = Rc<Term>;
pub type Name = Rc<str>;
pub type HitId = usize;
pub type DefId = usize;

/// Interval expressions at the term level (de Bruijn interval variables).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ITm {
    I0,
    I1,
    IVar(u32),
    Meet(Rc<ITm>, Rc<ITm>),
    Join(Rc<ITm>, Rc<ITm>),
    Neg(Rc<ITm>),
}

/// Cofibrations at the term level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CofTm {
    Top,
    Bot,
    /// `Eq(i, true)` is `(= i 1)`, `Eq(i, false)` is `(= i 0)`.
    Eq(u32, bool),
    And(Rc<CofTm>, Rc<CofTm>),
    Or(Rc<CofTm>, Rc<CofTm>),
}

#[derive(Clone, Debug)]
pub enum Term {
    Var(u32),
    U(u16),
    Pi(Name, Tm, Tm),
    Lam(Name, Tm),
    App(Tm, Tm),
    Sigma(Name, Tm, Tm),
    Pair(Tm, Tm),
    Fst(Tm),
    Snd(Tm),
    /// `PathP(line, lhs, rhs)` where `line` is a `Plam` of types.
    PathP(Tm, Tm, Tm),
    Plam(Name, Tm),
    Papp(Tm, ITm),
    /// `Transp(line, φ, base)`: transport along `line` (a `Plam`), constant on φ.
    Transp(Tm, CofTm, Tm),
    /// Homogeneous composition; each system payload is a `Plam` in the
    /// composition variable.
    HComp { ty: Tm, sys: Vec<(CofTm, Tm)>, cap: Tm },
    /// `Glue A [φᵢ ↦ (Tᵢ, eᵢ)]`.
    GlueTy { base: Tm, sys: Vec<(CofTm, Tm, Tm)> },
    /// `glue [φᵢ ↦ tᵢ] a`.
    Glue { sys: Vec<(CofTm, Tm)>, base: Tm },
    Unglue(Tm),
    /// A higher inductive type applied to its parameters.
    HitTy(HitId, Vec<Tm>),
    /// Constructor application. `params` is filled in by the checker
    /// (elaboration); parsed terms have it empty.
    Ctor { hit: HitId, ctor: usize, params: Vec<Tm>, args: Vec<Tm>, iargs: Vec<ITm> },
    Elim { hit: HitId, motive: Tm, methods: Vec<Tm>, scrut: Tm },
    DefRef(DefId),
    /// Type-annotated term `(the T t)`; used to make lambdas inferable.
    Ann(Tm, Tm),
}

pub fn tm(t: Term) -> Tm {
    Rc::new(t)
}

pub fn name(s: &str) -> Name {
    Rc::from(s)
}

// ---------------------------------------------------------------------------
// HIT signatures
// ---------------------------------------------------------------------------

/// Type of one constructor argument.
#[derive(Clone, Debug)]
pub enum ArgTy {
    /// Ordinary argument; the type is in scope of (params ++ earlier args).
    Plain(Tm),
    /// Argument landing in the HIT itself (or an n-cube therein).
    /// `boundary` entries are (face over the cube's ivars, payload in scope of
    /// params ++ earlier args, with the cube ivars bound).
    SelfCube { dims: u32, boundary: Vec<(CofTm, Tm)> },
}

#[derive(Clone, Debug)]
pub struct CtorSig {
    pub name: String,
    pub args: Vec<(Name, ArgTy)>,
    /// Number of interval arguments (dimension of the constructor cell).
    pub iargs: u32,
    /// Boundary of the cell: faces over the iargs with payloads in scope of
    /// params ++ args (term vars) and the iargs (interval vars).
    pub boundary: Vec<(CofTm, Tm)>,
}

#[derive(Clone, Debug)]
pub struct HitSig {
    pub name: String,
    /// Parameter telescope (types in scope of earlier params).
    pub params: Vec<(Name, Tm)>,
    pub ctors: Vec<CtorSig>,
}

impl HitSig {
    pub fn ctor_index(&self, name: &str) -> Option<usize> {
        self.ctors.iter().position(|c| c.name == name)
    }
}

#[derive(Clone, Debug)]
pub struct Definition {
    pub name: String,
    pub ty: Tm,
    pub body: Tm,
    pub provenance: String,
}

/// The global registry: fixed HIT signatures plus named, checked definitions.
pub struct Registry {
    pub hits: Vec<HitSig>,
    hit_names: HashMap<String, HitId>,
    pub defs: Vec<Definition>,
    def_names: HashMap<String, DefId>,
}

#[derive(Debug, thiserror::Error)]
pub enum RegistryError {
    #[error("duplicate name: {0}")]
    Duplicate(String),
    #[error("ill-scoped boundary in constructor {0}: {1}")]
    IllScoped(String, String),
    #[error("unknown name: {0}")]
    Unknown(String),
}

impl Registry {
    pub fn new() -> Self {
        let mut r = Registry {
            hits: Vec::new(),
            hit_names: HashMap::new(),
            defs: Vec::new(),
            def_names: HashMap::new(),
        };
        builtin_hits(&mut r);
        r
    }

    pub fn empty() -> Self {
        Registry { hits: Vec::new(), hit_names: HashMap::new(), defs: Vec::new(), def_names: HashMap::new() }
    }

    pub fn hit(&self, id: HitId) -> &HitSig {
        &self.hits[id]
    }

    pub fn hit_by_name(&self, name: &str) -> Option<HitId> {
        self.hit_names.get(name).copied()
    }

    pub fn def(&self, id: DefId) -> &Definition {
        &self.defs[id]
    }

    pub fn def_by_name(&self, name: &str) -> Option<DefId> {
        self.def_names.get(name).copied()
    }

    pub fn add_def(&mut self, d: Definition) -> Result<DefId, RegistryError> {
        if self.def_names.contains_key(&d.name) {
            return Err(RegistryError::Duplicate(d.name));
        }
        let id = self.defs.len();
        self.def_names.insert(d.name.clone(), id);
        self.defs.push(d);
        Ok(id)
    }

    /// Validate and register a HIT signature.
    pub fn register_hit(&mut self, sig: HitSig) -> Result<HitId, RegistryError> {
        if self.hit_names.contains_key(&sig.name) {
            return Err(RegistryError::Duplicate(sig.name));
        }
        let n_params = sig.params.len() as u32;
        let mut seen = std::collections::HashSet::new();
        for (ci, c) in sig.ctors.iter().enumerate() {
            if !seen.insert(c.name.clone()) {
                return Err(RegistryError::Duplicate(format!("{}.{}", sig.name, c.name)));
            }
            // scope checks: arg types over params ++ earlier args, no ivars
            for (ai, (_, aty)) in c.args.iter().enumerate() {
                let depth = n_params + ai as u32;
                match aty {
                    ArgTy::Plain(t) => {
                        if !scoped(t, depth, 0) {
                            return Err(RegistryError::IllScoped(c.name.clone(), "argument type".into()));
                        }
                    }
                    ArgTy::SelfCube { dims, boundary } => {
                        for (f, payload) in boundary {
                            if !cof_scoped(f, *dims) || !scoped(payload, depth, *dims) {
                                return Err(RegistryError::IllScoped(c.name.clone(), "argument boundary".into()));
                            }
                        }
                    }
                }
            }
            let depth = n_params + c.args.len() as u32;
            for (f, payload) in &c.boundary {
                if !cof_scoped(f, c.iargs) || !scoped(payload, depth, c.iargs) {
                    return Err(RegistryError::IllScoped(c.name.clone(), "cell boundary".into()));
                }
                // boundary payloads may only mention this HIT's earlier constructors
                if !payload_ctors_before(payload, self.hits.len(), ci) {
                    return Err(RegistryError::IllScoped(c.name.clone(), "boundary mentions later constructor".into()));
                }
            }
        }
        let id = self.hits.len();
        self.hit_names.insert(sig.name.clone(), id);
        self.hits.push(sig);
        Ok(id)
    }
}

impl Default for Registry {
    fn default() -> Self {
        Registry::new()
    }
}

fn payload_ctors_before(t: &Term, self_hit: HitId, before: usize) -> bool {
    let mut ok = true;
    visit(t, &mut |s| {
        if let Term::Ctor { hit, ctor, .. } = s {
            if *hit == self_hit && *ctor >= before {
                ok = false;
            }
        }
    });
    ok
}

fn visit(t: &Term, f: &mut dyn FnMut(&Term)) {
    f(t);
    match t {
        Term::Var(_) | Term::U(_) | Term::DefRef(_) => {}
        Term::Pi(_, a, b) | Term::Sigma(_, a, b) | Term::App(a, b) | Term::Pair(a, b) => {
            visit(a, f);
            visit(b, f);
        }
        Term::Lam(_, b) | Term::Plam(_, b) | Term::Fst(b) | Term::Snd(b) | Term::Unglue(b) => visit(b, f),
        Term::PathP(l, a, b) => {
            visit(l, f);
            visit(a, f);
            visit(b, f);
        }
        Term::Papp(a, _) => visit(a, f),
        Term::Transp(l, _, b) => {
            visit(l, f);
            visit(b, f);
        }
        Term::HComp { ty, sys, cap } => {
            visit(ty, f);
            for (_, p) in sys {
                visit(p, f);
            }
            visit(cap, f);
        }
        Term::GlueTy { base, sys } => {
            visit(base, f);
            for (_, t1, t2) in sys {
                visit(t1, f);
                visit(t2, f);
            }
        }
        Term::Glue { sys, base } => {
            for (_, p) in sys {
                visit(p, f);
            }
            visit(base, f);
        }
        Term::HitTy(_, ps) => {
            for p in ps {
                visit(p, f);
            }
        }
        Term::Ctor { params, args, .. } => {
            for p in params {
                visit(p, f);
            }
            for a in args {
                visit(a, f);
            }
        }
        Term::Elim { motive, methods, scrut, .. } => {
            visit(motive, f);
            for m in methods {
                visit(m, f);
            }
            visit(scrut, f);
        }
        Term::Ann(a, b) => {
            visit(a, f);
            visit(b, f);
        }
    }
}

// ---------------------------------------------------------------------------
// Scope checking, shifting, substitution
// ---------------------------------------------------------------------------

fn iv_scoped(e: &ITm, idepth: u32) -> bool {
    match e {
        ITm::I0 | ITm::I1 => true,
        ITm::IVar(i) => *i < idepth,
        ITm::Meet(a, b) | ITm::Join(a, b) => iv_scoped(a, idepth) && iv_scoped(b, idepth),
        ITm::Neg(a) => iv_scoped(a, idepth),
    }
}

fn cof_scoped(c: &CofTm, idepth: u32) -> bool {
    match c {
        CofTm::Top | CofTm::Bot => true,
        CofTm::Eq(i, _) => *i < idepth,
        CofTm::And(a, b) | CofTm::Or(a, b) => cof_scoped(a, idepth) && cof_scoped(b, idepth),
    }
}

/// True when `t` is well-scoped with `depth` term vars and `idepth` ivars.
pub fn scoped(t: &Term, depth: u32, idepth: u32) -> bool {
    match t {
        Term::Var(i) => *i < depth,
        Term::U(_) | Term::DefRef(_) => true,
        Term::Pi(_, a, b) | Term::Sigma(_, a, b) => scoped(a, depth, idepth) && scoped(b, depth + 1, idepth),
        Term::Lam(_, b) => scoped(b, depth + 1, idepth),
        Term::App(a, b) | Term::Pair(a, b) => scoped(a, depth, idepth) && scoped(b, depth, idepth),
        Term::Fst(a) | Term::Snd(a) | Term::Unglue(a) => scoped(a, depth, idepth),
        Term::PathP(l, a, b) => scoped(l, depth, idepth) && scoped(a, depth, idepth) && scoped(b, depth, idepth),
        Term::Plam(_, b) => scoped(b, depth, idepth + 1),
        Term::Papp(a, r) => scoped(a, depth, idepth) && iv_scoped(r, idepth),
        Term::Transp(l, c, b) => scoped(l, depth, idepth) && cof_scoped(c, idepth) && scoped(b, depth, idepth),
        Term::HComp { ty, sys, cap } => {
            scoped(ty, depth, idepth)
                && sys.iter().all(|(c, p)| cof_scoped(c, idepth) && scoped(p, depth, idepth))
                && scoped(cap, depth, idepth)
        }
        Term::GlueTy { base, sys } => {
            scoped(base, depth, idepth)
                && sys.iter().all(|(c, t1, t2)| {
                    cof_scoped(c, idepth) && scoped(t1, depth, idepth) && scoped(t2, depth, idepth)
                })
        }
        Term::Glue { sys, base } => {
            sys.iter().all(|(c, p)| cof_scoped(c, idepth) && scoped(p, depth, idepth)) && scoped(base, depth, idepth)
        }
        Term::HitTy(_, ps) => ps.iter().all(|p| scoped(p, depth, idepth)),
        Term::Ctor { params, args, iargs, .. } => {
            params.iter().all(|p| scoped(p, depth, idepth))
                && args.iter().all(|a| scoped(a, depth, idepth))
                && iargs.iter().all(|r| iv_scoped(r, idepth))
        }
        Term::Elim { motive, methods, scrut, .. } => {
            scoped(motive, depth, idepth)
                && methods.iter().all(|m| scoped(m, depth, idepth))
                && scoped(scrut, depth, idepth)
        }
        Term::Ann(a, b) => scoped(a, depth, idepth) && scoped(b, depth, idepth),
    }
}

struct Shifter {
    dv: i64,
    di: i64,
}

impl Shifter {
    fn iv(&self, e: &ITm, ci: u32) -> ITm {
        match e {
            ITm::I0 => ITm::I0,
            ITm::I1 => ITm::I1,
            ITm::IVar(i) => {
                if *i >= ci {
                    ITm::IVar((*i as i64 + self.di) as u32)
                } else {
                    ITm::IVar(*i)
                }
            }
            ITm::Meet(a, b) => ITm::Meet(Rc::new(self.iv(a, ci)), Rc::new(self.iv(b, ci))),
            ITm::Join(a, b) => ITm::Join(Rc::new(self.iv(a, ci)), Rc::new(self.iv(b, ci))),
            ITm::Neg(a) => ITm::Neg(Rc::new(self.iv(a, ci))),
        }
    }

    fn cof(&self, c: &CofTm, ci: u32) -> CofTm {
        match c {
            CofTm::Top => CofTm::Top,
            CofTm::Bot => CofTm::Bot,
            CofTm::Eq(i, e) => {
                if *i >= ci {
                    CofTm::Eq((*i as i64 + self.di) as u32, *e)
                } else {
                    CofTm::Eq(*i, *e)
                }
            }
            CofTm::And(a, b) => CofTm::And(Rc::new(self.cof(a, ci)), Rc::new(self.cof(b, ci))),
            CofTm::Or(a, b) => CofTm::Or(Rc::new(self.cof(a, ci)), Rc::new(self.cof(b, ci))),
        }
    }

    fn tm(&self, t: &Tm, cv: u32, ci: u32) -> Tm {
        let s = |t: &Tm| self.tm(t, cv, ci);
        let sb = |t: &Tm| self.tm(t, cv + 1, ci);
        let si = |t: &Tm| self.tm(t, cv, ci + 1);
        tm(match &**t {
            Term::Var(i) => {
                if *i >= cv {
                    Term::Var((*i as i64 + self.dv) as u32)
                } else {
                    Term::Var(*i)
                }
            }
            Term::U(l) => Term::U(*l),
            Term::DefRef(d) => Term::DefRef(*d),
            Term::Pi(n, a, b) => Term::Pi(n.clone(), s(a), sb(b)),
            Term::Sigma(n, a, b) => Term::Sigma(n.clone(), s(a), sb(b)),
            Term::Lam(n, b) => Term::Lam(n.clone(), sb(b)),
            Term::App(a, b) => Term::App(s(a), s(b)),
            Term::Pair(a, b) => Term::Pair(s(a), s(b)),
            Term::Fst(a) => Term::Fst(s(a)),
            Term::Snd(a) => Term::Snd(s(a)),
            Term::Unglue(a) => Term::Unglue(s(a)),
            Term::PathP(l, a, b) => Term::PathP(s(l), s(a), s(b)),
            Term::Plam(n, b) => Term::Plam(n.clone(), si(b)),
            Term::Papp(a, r) => Term::Papp(s(a), self.iv(r, ci)),
            Term::Transp(l, c, b) => Term::Transp(s(l), self.cof(c, ci), s(b)),
            Term::HComp { ty, sys, cap } => Term::HComp {
                ty: s(ty),
                sys: sys.iter().map(|(c, p)| (self.cof(c, ci), s(p))).collect(),
                cap: s(cap),
            },
            Term::GlueTy { base, sys } => Term::GlueTy {
                base: s(base),
                sys: sys.iter().map(|(c, t1, t2)| (self.cof(c, ci), s(t1), s(t2))).collect(),
            },
            Term::Glue { sys, base } => Term::Glue {
                sys: sys.iter().map(|(c, p)| (self.cof(c, ci), s(p))).collect(),
                base: s(base),
            },
            Term::HitTy(h, ps) => Term::HitTy(*h, ps.iter().map(s).collect()),
            Term::Ctor { hit, ctor, params, args, iargs } => Term::Ctor {
                hit: *hit,
                ctor: *ctor,
                params: params.iter().map(s).collect(),
                args: args.iter().map(s).collect(),
                iargs: iargs.iter().map(|r| self.iv(r, ci)).collect(),
            },
            Term::Elim { hit, motive, methods, scrut } => Term::Elim {
                hit: *hit,
                motive: s(motive),
                methods: methods.iter().map(s).collect(),
                scrut: s(scrut),
            },
            Term::Ann(a, b) => Term::Ann(s(a), s(b)),
        })
    }
}

/// Shift free term variables at or above `cutoff` by `d`.
pub fn shift(t: &Tm, cutoff: u32, d: i64) -> Tm {
    if d == 0 {
        return t.clone();
    }
    Shifter { dv: d, di: 0 }.tm(t, cutoff, 0)
}

/// Shift free interval variables at or above `cutoff` by `d`.
pub fn shift_ivars(t: &Tm, cutoff: u32, d: i64) -> Tm {
    if d == 0 {
        return t.clone();
    }
    Shifter { dv: 0, di: d }.tm(t, 0, cutoff)
}

/// Capture-avoiding substitution of `u` for term variable `j` in `t`.
pub fn substitute(t: &Tm, j: u32, u: &Tm) -> Tm {
    subst_at(t, j, u, 0)
}

fn subst_at(t: &Tm, j: u32, u: &Tm, idepth: u32) -> Tm {
    let s = |t: &Tm| subst_at(t, j, u, idepth);
    let sb = |t: &Tm| subst_at(t, j + 1, &shift(u, 0, 1), idepth);
    let si = |t: &Tm| subst_at(t, j, &shift_ivars(u, 0, 1), idepth + 1);
    tm(match &**t {
        Term::Var(i) => {
            if *i == j {
                return u.clone();
            } else if *i > j {
                Term::Var(*i - 1)
            } else {
                Term::Var(*i)
            }
        }
        Term::U(l) => Term::U(*l),
        Term::DefRef(d) => Term::DefRef(*d),
        Term::Pi(n, a, b) => Term::Pi(n.clone(), s(a), sb(b)),
        Term::Sigma(n, a, b) => Term::Sigma(n.clone(), s(a), sb(b)),
        Term::Lam(n, b) => Term::Lam(n.clone(), sb(b)),
        Term::App(a, b) => Term::App(s(a), s(b)),
        Term::Pair(a, b) => Term::Pair(s(a), s(b)),
        Term::Fst(a) => Term::Fst(s(a)),
        Term::Snd(a) => Term::Snd(s(a)),
        Term::Unglue(a) => Term::Unglue(s(a)),
        Term::PathP(l, a, b) => Term::PathP(s(l), s(a), s(b)),
        Term::Plam(n, b) => Term::Plam(n.clone(), si(b)),
        Term::Papp(a, r) => Term::Papp(s(a), r.clone()),
        Term::Transp(l, c, b) => Term::Transp(s(l), c.clone(), s(b)),
        Term::HComp { ty, sys, cap } => Term::HComp {
            ty: s(ty),
            sys: sys.iter().map(|(c, p)| (c.clone(), s(p))).collect(),
            cap: s(cap),
        },
        Term::GlueTy { base, sys } => Term::GlueTy {
            base: s(base),
            sys: sys.iter().map(|(c, t1, t2)| (c.clone(), s(t1), s(t2))).collect(),
        },
        Term::Glue { sys, base } => Term::Glue {
            sys: sys.iter().map(|(c, p)| (c.clone(), s(p))).collect(),
            base: s(base),
        },
        Term::HitTy(h, ps) => Term::HitTy(*h, ps.iter().map(s).collect()),
        Term::Ctor { hit, ctor, params, args, iargs } => Term::Ctor {
            hit: *hit,
            ctor: *ctor,
            params: params.iter().map(s).collect(),
            args: args.iter().map(s).collect(),
            iargs: iargs.clone(),
        },
        Term::Elim { hit, motive, methods, scrut } => Term::Elim {
            hit: *hit,
            motive: s(motive),
            methods: methods.iter().map(s).collect(),
            scrut: s(scrut),
        },
        Term::Ann(a, b) => Term::Ann(s(a), s(b)),
    })
}

// ---------------------------------------------------------------------------
// Alpha equality (modulo binder names and canonical interval forms)
// ---------------------------------------------------------------------------

/// Canonicalize a term-level interval expression to DNF over ivar indices.
pub fn itm_canon(e: &ITm) -> crate::interval::IExpr {
    use crate::interval::IExpr;
    match e {
        ITm::I0 => IExpr::zero(),
        ITm::I1 => IExpr::one(),
        ITm::IVar(i) => IExpr::var(*i),
        ITm::Meet(a, b) => itm_canon(a).meet(&itm_canon(b)),
        ITm::Join(a, b) => itm_canon(a).join(&itm_canon(b)),
        ITm::Neg(a) => itm_canon(a).neg(),
    }
}

pub fn coftm_canon(c: &CofTm) -> crate::interval::Cof {
    use crate::interval::Cof;
    match c {
        CofTm::Top => Cof::top(),
        CofTm::Bot => Cof::bot(),
        CofTm::Eq(i, e) => Cof::eq(*i, *e),
        CofTm::And(a, b) => coftm_canon(a).and(&coftm_canon(b)),
        CofTm::Or(a, b) => coftm_canon(a).or(&coftm_canon(b)),
    }
}

/// Structural equality modulo binder names and canonical interval forms.
pub fn alpha_equal(t: &Term, u: &Term) -> bool {
    fn sys_eq(a: &[(CofTm, Tm)], b: &[(CofTm, Tm)]) -> bool {
        a.len() == b.len()
            && a.iter()
                .zip(b)
                .all(|((c1, p1), (c2, p2))| coftm_canon(c1) == coftm_canon(c2) && alpha_equal(p1, p2))
    }
    match (t, u) {
        (Term::Var(i), Term::Var(j)) => i == j,
        (Term::U(a), Term::U(b)) => a == b,
        (Term::DefRef(a), Term::DefRef(b)) => a == b,
        (Term::Pi(_, a1, b1), Term::Pi(_, a2, b2)) | (Term::Sigma(_, a1, b1), Term::Sigma(_, a2, b2)) => {
            alpha_equal(a1, a2) && alpha_equal(b1, b2)
        }
        (Term::Lam(_, a), Term::Lam(_, b)) | (Term::Plam(_, a), Term::Plam(_, b)) => alpha_equal(a, b),
        (Term::App(a1, b1), Term::App(a2, b2)) | (Term::Pair(a1, b1), Term::Pair(a2, b2)) => {
            alpha_equal(a1, a2) && alpha_equal(b1, b2)
        }
        (Term::Fst(a), Term::Fst(b)) | (Term::Snd(a), Term::Snd(b)) | (Term::Unglue(a), Term::Unglue(b)) => {
            alpha_equal(a, b)
        }
        (Term::PathP(l1, a1, b1), Term::PathP(l2, a2, b2)) => {
            alpha_equal(l1, l2) && alpha_equal(a1, a2) && alpha_equal(b1, b2)
        }
        (Term::Papp(a, r), Term::Papp(b, s)) => alpha_equal(a, b) && itm_canon(r) == itm_canon(s),
        (Term::Transp(l1, c1, b1), Term::Transp(l2, c2, b2)) => {
            alpha_equal(l1, l2) && coftm_canon(c1) == coftm_canon(c2) && alpha_equal(b1, b2)
        }
        (Term::HComp { ty: t1, sys: s1, cap: c1 }, Term::HComp { ty: t2, sys: s2, cap: c2 }) => {
            alpha_equal(t1, t2) && sys_eq(s1, s2) && alpha_equal(c1, c2)
        }
        (Term::GlueTy { base: b1, sys: s1 }, Term::GlueTy { base: b2, sys: s2 }) => {
            alpha_equal(b1, b2)
                && s1.len() == s2.len()
                && s1.iter().zip(s2).all(|((c1, x1, y1), (c2, x2, y2))| {
                    coftm_canon(c1) == coftm_canon(c2) && alpha_equal(x1, x2) && alpha_equal(y1, y2)
                })
        }
        (Term::Glue { sys: s1, base: b1 }, Term::Glue { sys: s2, base: b2 }) => {
            sys_eq(s1, s2) && alpha_equal(b1, b2)
        }
        (Term::HitTy(h1, p1), Term::HitTy(h2, p2)) => {
            h1 == h2 && p1.len() == p2.len() && p1.iter().zip(p2).all(|(a, b)| alpha_equal(a, b))
        }
        (
            Term::Ctor { hit: h1, ctor: c1, params: p1, args: a1, iargs: i1 },
            Term::Ctor { hit: h2, ctor: c2, params: p2, args: a2, iargs: i2 },
        ) => {
            h1 == h2
                && c1 == c2
                && p1.len() == p2.len()
                && p1.iter().zip(p2).all(|(a, b)| alpha_equal(a, b))
                && a1.len() == a2.len()
                && a1.iter().zip(a2).all(|(a, b)| alpha_equal(a, b))
                && i1.len() == i2.len()
                && i1.iter().zip(i2).all(|(a, b)| itm_canon(a) == itm_canon(b))
        }
        (
            Term::Elim { hit: h1, motive: m1, methods: ms1, scrut: s1 },
            Term::Elim { hit: h2, motive: m2, methods: ms2, scrut: s2 },
        ) => {
            h1 == h2
                && alpha_equal(m1, m2)
                && ms1.len() == ms2.len()
                && ms1.iter().zip(ms2).all(|(a, b)| alpha_equal(a, b))
                && alpha_equal(s1, s2)
        }
        (Term::Ann(a1, b1), Term::Ann(a2, b2)) => alpha_equal(a1, a2) && alpha_equal(b1, b2),
        _ => false,
    }
}

// ---------------------------------------------------------------------------
// The fixed builtin registry
// ---------------------------------------------------------------------------

pub mod hits {
    use super::HitId;
    pub const BOOL: HitId = 0;
    pub const NAT: HitId = 1;
    pub const INT: HitId = 2;
    pub const S1: HitId = 3;
    pub const S2: HitId = 4;
    pub const SUSP: HitId = 5;
    pub const PUSHOUT: HitId = 6;
    pub const SMASH: HitId = 7;
    pub const TRUNC0: HitId = 8;
    pub const TRUNC1: HitId = 9;
    pub const TRUNC2: HitId = 10;
    pub const TRUNC3: HitId = 11;
}

fn v(i: u32) -> Tm {
    tm(Term::Var(i))
}

fn ctor0(hit: HitId, ctor: usize) -> Tm {
    tm(Term::Ctor { hit, ctor, params: vec![], args: vec![], iargs: vec![] })
}

fn point(name: &str) -> CtorSig {
    CtorSig { name: name.into(), args: vec![], iargs: 0, boundary: vec![] }
}

fn eq(i: u32, e: bool) -> CofTm {
    CofTm::Eq(i, e)
}

/// The squash constructor of the n-truncation: an (n+2)-cell between two
/// (n+1)-cells, with 2(n+2) point/path arguments.
///
/// For n-truncation, args are x, y : T, then pairs of k-cells for k = 1..n+1,
/// and the cell has n+2 interval variables. Boundary (outermost ivar first):
/// ivar 0 at 0/1 picks the two top arguments, deeper ivars peel the cells.
fn squash_ctor(n: u32) -> CtorSig {
    let depth = n + 2; // dimension of the squash cell
    let mut args: Vec<(Name, ArgTy)> = Vec::new();
    // level-k arguments (k = 0 are points, k >= 1 are k-cells); two per level
    for k in 0..=(depth - 1) {
        for side in 0..2 {
            let nm: Name = Rc::from(format!("{}{}", (b'a' + side as u8) as char, k));
            if k == 0 {
                args.push((nm, ArgTy::SelfCube { dims: 0, boundary: vec![] }));
            } else {
                // boundary of a k-cell argument: ivars 0..k (0 outermost);
                // face (j, ε) for j < k-1 is the level-(j+1) argument of that
                // side applied to ivars j+1..k; the innermost faces (j = k-1)
                // are the level-0 points... actually the cells are stacked:
                // cell at level k has faces: (ivar j = ε) ↦ level-j argument
                // side ε applied at ivars (j+1..k)?  We use the "globular"
                // shape: a k-cell r : p ≡ q between (k-1)-cells has boundary
                // ivar0=0 ↦ p @ (ivar1..), ivar0=1 ↦ q @ (ivar1..), and the
                // remaining faces agree with the shared boundary of p and q:
                // ivar j = ε (j ≥ 1) ↦ level-(k-1-j)...
                // Encoded directly below.
                let mut boundary = Vec::new();
                // the two immediate faces: previous level's two arguments
                let prev_a = arg_index(k - 1, 0);
                let prev_b = arg_index(k - 1, 1);
                boundary.push((eq(0, false), papp_var(prev_a, 1, k)));
                boundary.push((eq(0, true), papp_var(prev_b, 1, k)));
                // deeper faces: for ivar j ≥ 1, both endpoints give the
                // level-(k-1-j)-side cells applied at the remaining ivars
                for j in 1..k {
                    let lvl = k - 1 - j;
                    let ia = arg_index(lvl, 0);
                    let ib = arg_index(lvl, 1);
                    boundary.push((eq(j, false), papp_var(ia, j + 1, k)));
                    boundary.push((eq(j, true), papp_var(ib, j + 1, k)));
                }
                args.push((nm, ArgTy::SelfCube { dims: k, boundary }));
            }
        }
    }
    // cell boundary of the squash constructor itself (depth ivars):
    let mut boundary = Vec::new();
    let top_a = arg_index(depth - 1, 0);
    let top_b = arg_index(depth - 1, 1);
    boundary.push((eq(0, false), papp_var(top_a, 1, depth)));
    boundary.push((eq(0, true), papp_var(top_b, 1, depth)));
    for j in 1..depth {
        let lvl = depth - 1 - j;
        boundary.push((eq(j, false), papp_var(arg_index(lvl, 0), j + 1, depth)));
        boundary.push((eq(j, true), papp_var(arg_index(lvl, 1), j + 1, depth)));
    }
    CtorSig { name: "squash".into(), args, iargs: depth, boundary }
}

/// Index (from the back) of the level-k side-s argument in the squash
/// telescope, as a de Bruijn index assuming 1 param + all args bound.
/// The telescope is (A param), a0, b0, a1, b1, ..., so with total m = 2(n+2)
/// args, de Bruijn index of (k, s) counted from innermost is
/// m - 1 - (2k + s) ... computed against the full scope below.
fn arg_index(k: u32, s: u32) -> u32 {
    2 * k + s
}

/// `papp_var(pos, from, to)`: the level argument at telescope position `pos`
/// applied to ivars from..to (exclusive). The de Bruijn index is resolved
/// later; here we emit a marker resolved by `fix_squash_indices`.
fn papp_var(pos: u32, from: u32, to: u32) -> Tm {
    let mut t = tm(Term::Var(pos)); // placeholder: telescope position, fixed below
    for i in from..to {
        t = tm(Term::Papp(t, ITm::IVar(i)));
    }
    t
}

/// Rewrite telescope positions into de Bruijn indices against a scope with
/// `scope` arguments bound: position p becomes index scope - 1 - p.
fn fix_positions(t: &Tm, scope: u32) -> Tm {
    match &**t {
        Term::Var(p) => tm(Term::Var(scope - 1 - *p)),
        Term::Papp(a, r) => tm(Term::Papp(fix_positions(a, scope), r.clone())),
        _ => unreachable!("squash boundary payloads are papp towers over vars"),
    }
}

/// Resolve telescope-position placeholders: position p in a scope of `scope`
/// arguments has de Bruijn index `scope - 1 - p`.
fn finish_squash(mut c: CtorSig) -> CtorSig {
    let total = c.args.len() as u32;
    for (ai, (_, aty)) in c.args.iter_mut().enumerate() {
        if let ArgTy::SelfCube { boundary, .. } = aty {
            for (_, p) in boundary.iter_mut() {
                *p = fix_positions(p, ai as u32);
            }
        }
    }
    for (_, p) in c.boundary.iter_mut() {
        *p = fix_positions(p, total);
    }
    c
}

fn builtin_hits(r: &mut Registry) {
    use hits::*;
    // Bool
    let bool_sig = HitSig {
        name: "Bool".into(),
        params: vec![],
        ctors: vec![point("false"), point("true")],
    };
    // Nat
    let nat_sig = HitSig {
        name: "Nat".into(),
        params: vec![],
        ctors: vec![
            point("zero"),
            CtorSig {
                name: "suc".into(),
                args: vec![(name("n"), ArgTy::SelfCube { dims: 0, boundary: vec![] })],
                iargs: 0,
                boundary: vec![],
            },
        ],
    };
    // Int = nonneg(Nat) | negsuc(Nat)
    let int_sig = HitSig {
        name: "Int".into(),
        params: vec![],
        ctors: vec![
            CtorSig {
                name: "nonneg".into(),
                args: vec![(name("n"), ArgTy::Plain(tm(Term::HitTy(NAT, vec![]))))],
                iargs: 0,
                boundary: vec![],
            },
            CtorSig {
                name: "negsuc".into(),
                args: vec![(name("n"), ArgTy::Plain(tm(Term::HitTy(NAT, vec![]))))],
                iargs: 0,
                boundary: vec![],
            },
        ],
    };
    // S1 = base | loop @ i [i=0 ↦ base, i=1 ↦ base]
    let s1_sig = HitSig {
        name: "S1".into(),
        params: vec![],
        ctors: vec![
            point("base"),
            CtorSig {
                name: "loop".into(),
                args: vec![],
                iargs: 1,
                boundary: vec![(eq(0, false), ctor0(S1, 0)), (eq(0, true), ctor0(S1, 0))],
            },
        ],
    };
    // S2 (base/surf form): base | surf @ (i,j) with all faces base
    let s2_sig = HitSig {
        name: "S2".into(),
        params: vec![],
        ctors: vec![
            point("base"),
            CtorSig {
                name: "surf".into(),
                args: vec![],
                iargs: 2,
                boundary: vec![
                    (eq(0, false), ctor0(S2, 0)),
                    (eq(0, true), ctor0(S2, 0)),
                    (eq(1, false), ctor0(S2, 0)),
                    (eq(1, true), ctor0(S2, 0)),
                ],
            },
        ],
    };
    // Susp (A : U): north | south | merid (a : A) @ i [i=0 ↦ north, i=1 ↦ south]
    let susp_sig = HitSig {
        name: "Susp".into(),
        params: vec![(name("A"), tm(Term::U(0)))],
        ctors: vec![
            point("north"),
            point("south"),
            CtorSig {
                name: "merid".into(),
                // scope of boundary: params (A) ++ args (a); Var(1) = A, Var(0) = a
                args: vec![(name("a"), ArgTy::Plain(v(0)))], // type A = Var(0) in scope (params)
                iargs: 1,
                boundary: vec![
                    (eq(0, false), tm(Term::Ctor { hit: SUSP, ctor: 0, params: vec![v(1)], args: vec![], iargs: vec![] })),
                    (eq(0, true), tm(Term::Ctor { hit: SUSP, ctor: 1, params: vec![v(1)], args: vec![], iargs: vec![] })),
                ],
            },
        ],
    };
    // Pushout (A B C : U) (f : A → B) (g : A → C):
    //   inl (b : B) | inr (c : C) | push (a : A) @ i [i=0 ↦ inl (f a), i=1 ↦ inr (g a)]
    let pushout_params: Vec<(Name, Tm)> = vec![
        (name("A"), tm(Term::U(0))),
        (name("B"), tm(Term::U(0))),
        (name("C"), tm(Term::U(0))),
        // f : A → B, in scope of A,B,C: Var(2)=A, Var(1)=B, Var(0)=C
        (name("f"), tm(Term::Pi(name("_"), v(2), v(2)))),
        // g : A → C, in scope of A,B,C,f: Var(3)=A ... C = Var(1)
        (name("g"), tm(Term::Pi(name("_"), v(3), v(2)))),
    ];
    let pushout_param_vars = |extra: u32| -> Vec<Tm> {
        // params in scope of (5 params ++ extra args): A at index 4+extra ... g at extra
        (0..5).rev().map(|k| v(k + extra)).collect()
    };
    let pushout_sig = HitSig {
        name: "Pushout".into(),
        params: pushout_params,
        ctors: vec![
            CtorSig {
                name: "inl".into(),
                // b : B; scope (A B C f g): B = Var(3)
                args: vec![(name("b"), ArgTy::Plain(v(3)))],
                iargs: 0,
                boundary: vec![],
            },
            CtorSig {
                name: "inr".into(),
                args: vec![(name("c"), ArgTy::Plain(v(2)))],
                iargs: 0,
                boundary: vec![],
            },
            CtorSig {
                name: "push".into(),
                // a : A; scope of boundary: (A B C f g a): A=5 B=4 C=3 f=2 g=1 a=0
                args: vec![(name("a"), ArgTy::Plain(v(4)))],
                iargs: 1,
                boundary: vec![
                    (
                        eq(0, false),
                        tm(Term::Ctor {
                            hit: PUSHOUT,
                            ctor: 0,
                            params: pushout_param_vars(1),
                            args: vec![tm(Term::App(v(2), v(0)))],
                            iargs: vec![],
                        }),
                    ),
                    (
                        eq(0, true),
                        tm(Term::Ctor {
                            hit: PUSHOUT,
                            ctor: 1,
                            params: pushout_param_vars(1),
                            args: vec![tm(Term::App(v(1), v(0)))],
                            iargs: vec![],
                        }),
                    ),
                ],
            },
        ],
    };
    // Smash (A : U) (a0 : A) (B : U) (b0 : B):
    //   spt | spair (a : A) (b : B)
    //   | pushl (a : A) @ i [i=0 ↦ spair a b0, i=1 ↦ spt]
    //   | pushr (b : B) @ i [i=0 ↦ spair a0 b, i=1 ↦ spt]
    //   | pushlr @ (i,j) [i=0 ↦ pushl a0 @ j, i=1 ↦ pushr b0 @ j,
    //                     j=0 ↦ spair a0 b0, j=1 ↦ spt]
    let smash_params: Vec<(Name, Tm)> = vec![
        (name("A"), tm(Term::U(0))),
        (name("a0"), v(0)),
        (name("B"), tm(Term::U(0))),
        (name("b0"), v(0)),
    ];
    let smash_param_vars = |extra: u32| -> Vec<Tm> { (0..4).rev().map(|k| v(k + extra)).collect() };
    let smash_ctor = |ctor: usize, extra: u32, args: Vec<Tm>, iargs: Vec<ITm>| {
        tm(Term::Ctor { hit: SMASH, ctor, params: smash_param_vars(extra), args, iargs })
    };
    let smash_sig = HitSig {
        name: "Smash".into(),
        params: smash_params,
        ctors: vec![
            point("spt"),
            CtorSig {
                name: "spair".into(),
                // a : A (scope A a0 B b0: A=Var 3), b : B (scope ...+a: B=Var 2)
                args: vec![(name("a"), ArgTy::Plain(v(3))), (name("b"), ArgTy::Plain(v(2)))],
                iargs: 0,
                boundary: vec![],
            },
            CtorSig {
                name: "pushl".into(),
                // a : A; boundary scope (A a0 B b0 a): b0 = Var(1), a = Var(0)
                args: vec![(name("a"), ArgTy::Plain(v(3)))],
                iargs: 1,
                boundary: vec![
                    (eq(0, false), smash_ctor(1, 1, vec![v(0), v(1)], vec![])),
                    (eq(0, true), smash_ctor(0, 1, vec![], vec![])),
                ],
            },
            CtorSig {
                name: "pushr".into(),
                // b : B; boundary scope (A a0 B b0 b): a0 = Var(3), b = Var(0)
                args: vec![(name("b"), ArgTy::Plain(v(1)))],
                iargs: 1,
                boundary: vec![
                    (eq(0, false), smash_ctor(1, 1, vec![v(3), v(0)], vec![])),
                    (eq(0, true), smash_ctor(0, 1, vec![], vec![])),
                ],
            },
            CtorSig {
                name: "pushlr".into(),
                args: vec![],
                iargs: 2,
                // boundary scope (A a0 B b0), ivars i=0 (outer), j=1 (inner)
                boundary: vec![
                    (eq(0, false), smash_ctor(2, 0, vec![v(2)], vec![ITm::IVar(1)])),
                    (eq(0, true), smash_ctor(3, 0, vec![v(0)], vec![ITm::IVar(1)])),
                    (eq(1, false), smash_ctor(1, 0, vec![v(2), v(0)], vec![])),
                    (eq(1, true), smash_ctor(0, 0, vec![], vec![])),
                ],
            },
        ],
    };

    // Registration order fixes the HitIds declared in `hits`.
    r.register_hit(bool_sig).unwrap();
    r.register_hit(nat_sig).unwrap();
    r.register_hit(int_sig).unwrap();
    r.register_hit(s1_sig).unwrap();
    r.register_hit(s2_sig).unwrap();
    r.register_hit(susp_sig).unwrap();
    r.register_hit(pushout_sig).unwrap();
    r.register_hit(smash_sig).unwrap();
    for n in 0..4u32 {
        let sig = HitSig {
            name: format!("Trunc{}", n),
            params: vec![(name("A"), tm(Term::U(0)))],
            ctors: vec![
                CtorSig {
                    name: "tin".into(),
                    args: vec![(name("a"), ArgTy::Plain(v(0)))],
                    iargs: 0,
                    boundary: vec![],
                },
                finish_squash(squash_ctor(n)),
            ],
        };
        r.register_hit(sig).unwrap();
    }
}
