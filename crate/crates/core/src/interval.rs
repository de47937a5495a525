//! The free De Morgan algebra on interval variables, and the face lattice of
//! cofibrations that indexes partial elements in Kan operations.
//!
//! Interval expressions are kept in a canonical join-of-meets form: a set of
//! clauses, each clause a set of literals (variable plus polarity). The empty
//! clause set is `i0`, a set containing the empty clause is `i1`. De Morgan
//! laws hold, Boolean complement laws do not: `imin i (inot i)` stays as it is.
//!
//! Cofibrations use the same clause representation over atoms `(v = 0)` /
//! `(v = 1)`, but there a clause containing both atoms for one variable is
//! contradictory and gets dropped, and `(i=0) ∧ (i=1)` entails bottom.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Semantic interval variable (globally fresh within one evaluator task).
pub type IVar = u32;

type Clause<A> = BTreeSet<A>;
type Clauses<A> = BTreeSet<Clause<A>>;

/// Remove clauses subsumed by smaller ones. A clause C absorbs D when C ⊆ D.
fn absorb<A: Ord + Clone>(cs: Clauses<A>) -> Clauses<A> {
    let mut out: Clauses<A> = BTreeSet::new();
    for c in cs.iter() {
        if !cs.iter().any(|d| d.len() < c.len() && d.is_subset(c))
            && !out.iter().any(|d: &Clause<A>| d.is_subset(c))
        {
            out.insert(c.clone());
        }
    }
    out
}

fn dnf_join<A: Ord + Clone>(a: &Clauses<A>, b: &Clauses<A>) -> Clauses<A> {
    absorb(a.union(b).cloned().collect())
}

fn dnf_meet<A: Ord + Clone>(a: &Clauses<A>, b: &Clauses<A>, drop: &dyn Fn(&Clause<A>) -> bool) -> Clauses<A> {
    let mut out = BTreeSet::new();
    for ca in a {
        for cb in b {
            let c: Clause<A> = ca.union(cb).cloned().collect();
            if !drop(&c) {
                out.insert(c);
            }
        }
    }
    absorb(out)
}

// ---------------------------------------------------------------------------
// Interval expressions
// ---------------------------------------------------------------------------

/// A literal: interval variable with polarity (`false` means negated).
pub type ILit = (IVar, bool);

/// Canonical interval expression: join of meets of literals.
///
/// `clauses = {}` is `i0`; `clauses = {{}}` is `i1`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct IExpr {
    clauses: Clauses<ILit>,
}

impl IExpr {
    pub fn zero() -> Self {
        IExpr { clauses: BTreeSet::new() }
    }

    pub fn one() -> Self {
        let mut s = BTreeSet::new();
        s.insert(BTreeSet::new());
        IExpr { clauses: s }
    }

    pub fn var(v: IVar) -> Self {
        Self::lit(v, true)
    }

    pub fn lit(v: IVar, pol: bool) -> Self {
        let mut c = BTreeSet::new();
        c.insert((v, pol));
        let mut s = BTreeSet::new();
        s.insert(c);
        IExpr { clauses: s }
    }

    pub fn is_zero(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.clauses.contains(&BTreeSet::new())
    }

    /// Literal endpoint test: exactly `i0` or exactly `i1`.
    pub fn endpoint(&self) -> Option<bool> {
        if self.is_zero() {
            Some(false)
        } else if self.is_one() {
            Some(true)
        } else {
            None
        }
    }

    pub fn join(&self, other: &IExpr) -> IExpr {
        if self.is_one() || other.is_one() {
            return IExpr::one();
        }
        IExpr { clauses: dnf_join(&self.clauses, &other.clauses) }
    }

    pub fn meet(&self, other: &IExpr) -> IExpr {
        // meet(i, ¬i) is kept: no clause is dropped in the De Morgan algebra.
        IExpr { clauses: dnf_meet(&self.clauses, &other.clauses, &|_| false) }
    }

    pub fn neg(&self) -> IExpr {
        // De Morgan dual: negate every literal, swap meet/join.
        let mut acc = IExpr::one();
        for clause in &self.clauses {
            let mut neg_clause = IExpr::zero();
            for &(v, pol) in clause {
                neg_clause = neg_clause.join(&IExpr::lit(v, !pol));
            }
            acc = acc.meet(&neg_clause);
        }
        acc
    }

    pub fn support(&self) -> BTreeSet<IVar> {
        self.clauses.iter().flat_map(|c| c.iter().map(|&(v, _)| v)).collect()
    }

    pub fn mentions(&self, v: IVar) -> bool {
        self.clauses.iter().any(|c| c.iter().any(|&(w, _)| w == v))
    }

    /// Substitute interval expressions for variables; unmapped variables stay.
    pub fn subst(&self, sub: &ISub) -> IExpr {
        let mut acc = IExpr::zero();
        for clause in &self.clauses {
            let mut m = IExpr::one();
            for &(v, pol) in clause {
                let e = match sub.get(v) {
                    Some(e) => e.clone(),
                    None => IExpr::var(v),
                };
                m = m.meet(&if pol { e } else { e.neg() });
            }
            acc = acc.join(&m);
        }
        acc
    }

    /// Evaluate under a total 0/1 valuation (used by test oracles).
    pub fn eval01(&self, val: &BTreeMap<IVar, bool>) -> bool {
        self.clauses.iter().any(|c| c.iter().all(|&(v, pol)| val.get(&v).copied().unwrap_or(false) == pol))
    }

    pub fn clauses(&self) -> &Clauses<ILit> {
        &self.clauses
    }
}

impl fmt::Display for IExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "i0");
        }
        if self.is_one() {
            return write!(f, "i1");
        }
        let cs: Vec<String> = self
            .clauses
            .iter()
            .map(|c| {
                let ls: Vec<String> = c
                    .iter()
                    .map(|&(v, pol)| if pol { format!("v{}", v) } else { format!("(inot v{})", v) })
                    .collect();
                if ls.len() == 1 {
                    ls[0].clone()
                } else {
                    format!("(imin {})", ls.join(" "))
                }
            })
            .collect();
        if cs.len() == 1 {
            write!(f, "{}", cs[0])
        } else {
            write!(f, "(imax {})", cs.join(" "))
        }
    }
}

/// Interval substitution: finite map from variables to expressions.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct ISub {
    map: BTreeMap<IVar, IExpr>,
}

impl ISub {
    pub fn new() -> Self {
        ISub::default()
    }

    pub fn single(v: IVar, e: IExpr) -> Self {
        let mut map = BTreeMap::new();
        map.insert(v, e);
        ISub { map }
    }

    pub fn insert(&mut self, v: IVar, e: IExpr) {
        self.map.insert(v, e);
    }

    pub fn get(&self, v: IVar) -> Option<&IExpr> {
        self.map.get(&v)
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn domain(&self) -> impl Iterator<Item = IVar> + '_ {
        self.map.keys().copied()
    }

    pub fn touches(&self, support: &BTreeSet<IVar>) -> bool {
        self.map.keys().any(|v| support.contains(v))
    }

    pub fn without(&self, v: IVar) -> ISub {
        let mut map = self.map.clone();
        map.remove(&v);
        ISub { map }
    }
}

// ---------------------------------------------------------------------------
// Cofibrations
// ---------------------------------------------------------------------------

/// A face atom: `(v = 1)` when polarity is true, `(v = 0)` otherwise.
pub type FaceAtom = (IVar, bool);

/// Canonical cofibration: disjunction of conjunctions of face atoms.
/// `{}` is ⊥ and `{{}}` is ⊤. A conjunction containing both `(v=0)` and
/// `(v=1)` is contradictory and is dropped.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub struct Cof {
    clauses: Clauses<FaceAtom>,
}

fn clause_contradictory(c: &Clause<FaceAtom>) -> bool {
    c.iter().any(|&(v, pol)| c.contains(&(v, !pol)))
}

impl Cof {
    pub fn bot() -> Self {
        Cof { clauses: BTreeSet::new() }
    }

    pub fn top() -> Self {
        let mut s = BTreeSet::new();
        s.insert(BTreeSet::new());
        Cof { clauses: s }
    }

    pub fn eq(v: IVar, endpoint: bool) -> Self {
        let mut c = BTreeSet::new();
        c.insert((v, endpoint));
        let mut s = BTreeSet::new();
        s.insert(c);
        Cof { clauses: s }
    }

    pub fn is_bot(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn is_top(&self) -> bool {
        self.clauses.contains(&BTreeSet::new())
    }

    pub fn or(&self, other: &Cof) -> Cof {
        if self.is_top() || other.is_top() {
            return Cof::top();
        }
        Cof { clauses: dnf_join(&self.clauses, &other.clauses) }
    }

    pub fn and(&self, other: &Cof) -> Cof {
        Cof { clauses: dnf_meet(&self.clauses, &other.clauses, &clause_contradictory) }
    }

    /// The cofibration `r = 1` (or `r = 0`) for an arbitrary interval expression.
    pub fn of_iexpr(r: &IExpr, endpoint: bool) -> Cof {
        // r = 1 iff some clause of r has all its literals at 1.
        let pos = {
            let mut acc = Cof::bot();
            for clause in r.clauses() {
                let mut m = Cof::top();
                for &(v, pol) in clause {
                    m = m.and(&Cof::eq(v, pol));
                }
                acc = acc.or(&m);
            }
            acc
        };
        if endpoint {
            pos
        } else {
            // r = 0 iff every clause has a literal at 0: conjunction of disjunctions.
            let mut acc = Cof::top();
            for clause in r.clauses() {
                let mut j = Cof::bot();
                for &(v, pol) in clause {
                    j = j.or(&Cof::eq(v, !pol));
                }
                acc = acc.and(&j);
            }
            acc
        }
    }

    /// The clauses, each a conjunction of face atoms.
    pub fn clauses(&self) -> &Clauses<FaceAtom> {
        &self.clauses
    }

    pub fn support(&self) -> BTreeSet<IVar> {
        self.clauses.iter().flat_map(|c| c.iter().map(|&(v, _)| v)).collect()
    }

    /// `∀v. φ`: the largest cofibration not mentioning `v` that entails φ.
    /// Clauses mentioning `v` are dropped.
    pub fn forall(&self, v: IVar) -> Cof {
        Cof {
            clauses: self
                .clauses
                .iter()
                .filter(|c| !c.iter().any(|&(w, _)| w == v))
                .cloned()
                .collect(),
        }
    }

    /// Substitute interval expressions for variables.
    pub fn subst(&self, sub: &ISub) -> Cof {
        let mut acc = Cof::bot();
        for clause in &self.clauses {
            let mut m = Cof::top();
            for &(v, pol) in clause {
                let atom = match sub.get(v) {
                    Some(e) => Cof::of_iexpr(e, pol),
                    None => Cof::eq(v, pol),
                };
                m = m.and(&atom);
            }
            acc = acc.or(&m);
        }
        acc
    }

    /// Entailment in the free face lattice: every clause of `self`, read as a
    /// partial assignment, must contain some clause of `phi`.
    pub fn entails(&self, phi: &Cof) -> bool {
        self.clauses.iter().all(|c| phi.clauses.iter().any(|d| d.is_subset(c)))
    }

    /// Semantic check under a 3-valued assignment (0, 1, interior); atoms on
    /// unassigned variables are false. Used by the brute-force oracle.
    pub fn eval3(&self, val: &BTreeMap<IVar, Option<bool>>) -> bool {
        self.clauses
            .iter()
            .any(|c| c.iter().all(|&(v, pol)| val.get(&v).copied().flatten() == Some(pol)))
    }
}

/// Entailment from a context of cofibrations: `ctx ⊢ phi`.
pub fn cof_entails(ctx: &[Cof], phi: &Cof) -> bool {
    let mut conj = Cof::top();
    for c in ctx {
        conj = conj.and(c);
    }
    conj.entails(phi)
}

impl fmt::Display for Cof {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_bot() {
            return write!(f, "bot");
        }
        if self.is_top() {
            return write!(f, "top");
        }
        let cs: Vec<String> = self
            .clauses
            .iter()
            .map(|c| {
                let ls: Vec<String> = c
                    .iter()
                    .map(|&(v, pol)| format!("(= v{} {})", v, if pol { 1 } else { 0 }))
                    .collect();
                if ls.len() == 1 {
                    ls[0].clone()
                } else {
                    format!("(/\\ {})", ls.join(" "))
                }
            })
            .collect();
        if cs.len() == 1 {
            write!(f, "{}", cs[0])
        } else {
            write!(f, "(\\/ {})", cs.join(" "))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(n: IVar) -> IExpr {
        IExpr::var(n)
    }

    #[test]
    fn endpoints_and_units() {
        assert_eq!(IExpr::zero().neg(), IExpr::one());
        assert_eq!(IExpr::one().neg(), IExpr::zero());
        assert_eq!(v(0).join(&IExpr::zero()), v(0));
        assert_eq!(v(0).meet(&IExpr::one()), v(0));
        assert_eq!(v(0).meet(&IExpr::zero()), IExpr::zero());
        assert_eq!(v(0).join(&IExpr::one()), IExpr::one());
    }

    #[test]
    fn de_morgan_not_boolean() {
        // meet(i, ¬i) does not collapse to i0.
        let e = v(0).meet(&v(0).neg());
        assert!(!e.is_zero());
        // but double negation is the identity,
        assert_eq!(v(0).neg().neg(), v(0));
        // and ¬(i ∧ j) = ¬i ∨ ¬j.
        assert_eq!(v(0).meet(&v(1)).neg(), v(0).neg().join(&v(1).neg()));
    }

    #[test]
    fn substitution() {
        // (i ∧ j)[i := ¬j] = ¬j ∧ j (kept, canonical order)
        let e = v(0).meet(&v(1)).subst(&ISub::single(0, v(1).neg()));
        assert_eq!(e, v(1).neg().meet(&v(1)));
        // (i ∨ j)[i := 0] = j
        let e = v(0).join(&v(1)).subst(&ISub::single(0, IExpr::zero()));
        assert_eq!(e, v(1));
        // (i)[i := 1] = 1
        assert_eq!(v(0).subst(&ISub::single(0, IExpr::one())), IExpr::one());
    }

    /// Exhaustive 0/1 valuation agreement for small random expressions.
    #[test]
    fn valuation_agreement() {
        // Build a deterministic set of expressions over 3 variables by depth.
        fn gen(depth: u32, seed: &mut u64) -> IExpr {
            *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let k = (*seed >> 33) % if depth == 0 { 3 } else { 6 };
            match k {
                0 => IExpr::zero(),
                1 => IExpr::one(),
                2 => IExpr::var(((*seed >> 20) % 3) as IVar),
                3 => gen(depth - 1, seed).meet(&gen(depth - 1, seed)),
                4 => gen(depth - 1, seed).join(&gen(depth - 1, seed)),
                _ => gen(depth - 1, seed).neg(),
            }
        }
        let mut seed = 42;
        for _ in 0..200 {
            let e = gen(4, &mut seed);
            let n = e.clone(); // already canonical by construction
            for bits in 0..8u32 {
                let val: BTreeMap<IVar, bool> = (0..3).map(|i| (i as IVar, bits & (1 << i) != 0)).collect();
                assert_eq!(e.eval01(&val), n.eval01(&val));
            }
            // idempotence of canonicalization: subst with empty map is identity
            assert_eq!(e.subst(&ISub::new()), e);
        }
    }

    #[test]
    fn cof_basics() {
        let i0 = Cof::eq(0, false);
        let i1 = Cof::eq(0, true);
        let j1 = Cof::eq(1, true);
        // [eq0(i)] ⊢ eq0(i) ∨ eq1(j)
        assert!(cof_entails(&[i0.clone()], &i0.or(&j1)));
        // [] ⊬ eq0(i) ∨ eq1(i): i can be interior
        assert!(!cof_entails(&[], &i0.or(&i1)));
        // contradictory faces entail bottom
        assert!(cof_entails(&[i0.clone(), i1.clone()], &Cof::bot()));
        assert!(i0.and(&i1).is_bot());
    }

    #[test]
    fn cof_forall() {
        // ∀i. (i=0 ∨ j=1) = (j=1)
        let phi = Cof::eq(0, false).or(&Cof::eq(1, true));
        assert_eq!(phi.forall(0), Cof::eq(1, true));
        assert_eq!(phi.forall(1), Cof::eq(0, false));
    }

    /// cof_entails agrees with brute-force enumeration over ≤ 4 variables in
    /// the 3-valued (0, 1, interior) semantics.
    #[test]
    fn cof_entails_brute_force() {
        fn gen(depth: u32, seed: &mut u64) -> Cof {
            *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let k = (*seed >> 33) % if depth == 0 { 4 } else { 6 };
            match k {
                0 => Cof::bot(),
                1 => Cof::top(),
                2 => Cof::eq(((*seed >> 20) % 4) as IVar, false),
                3 => Cof::eq(((*seed >> 20) % 4) as IVar, true),
                4 => gen(depth - 1, seed).and(&gen(depth - 1, seed)),
                _ => gen(depth - 1, seed).or(&gen(depth - 1, seed)),
            }
        }
        let mut seed = 7;
        for _ in 0..300 {
            let a = gen(3, &mut seed);
            let b = gen(3, &mut seed);
            let fast = cof_entails(&[a.clone()], &b);
            let mut brute = true;
            'outer: for code in 0..81u32 {
                // each of 4 vars in {0,1,interior}
                let mut c = code;
                let mut val = BTreeMap::new();
                for i in 0..4 {
                    let d = c % 3;
                    c /= 3;
                    val.insert(i as IVar, match d {
                        0 => Some(false),
                        1 => Some(true),
                        _ => None,
                    });
                }
                if a.eval3(&val) && !b.eval3(&val) {
                    brute = false;
                    break 'outer;
                }
            }
            assert_eq!(fast, brute, "entailment mismatch: {} ⊢ {}", a, b);
        }
    }

    #[test]
    fn cof_of_iexpr() {
        // (i ∨ j) = 1 iff i=1 ∨ j=1
        let r = v(0).join(&v(1));
        assert_eq!(Cof::of_iexpr(&r, true), Cof::eq(0, true).or(&Cof::eq(1, true)));
        // (i ∧ j) = 0 iff i=0 ∨ j=0
        let r = v(0).meet(&v(1));
        assert_eq!(Cof::of_iexpr(&r, false), Cof::eq(0, false).or(&Cof::eq(1, false)));
        // (¬i) = 1 iff i = 0
        assert_eq!(Cof::of_iexpr(&v(0).neg(), true), Cof::eq(0, false));
    }
}
