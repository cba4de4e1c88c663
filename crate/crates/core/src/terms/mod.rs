//! First-order terms over a finite signature.
//!
//! Terms are immutable values: arguments live behind an `Arc`, so cloning a
//! term is cheap and terms can be shared freely across threads.

pub(crate) mod parse;
mod position;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};

pub use parse::{parse_term, parse_term_debug};
pub(crate) use parse::{Ast, Parser};
pub use position::Position;

/// Marks the two signature extensions used by the decision procedures.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Decoration {
    Plain,
    /// The hole constant `•`, printed `#`.
    Bullet,
    /// A root-marked copy `f°` of a plain symbol, printed `f@`.
    Circled,
}

/// A function symbol: name, arity and decoration.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FuncSym {
    name: Arc<str>,
    arity: usize,
    decoration: Decoration,
}

impl FuncSym {
    pub fn new(name: &str, arity: usize) -> Self {
        FuncSym {
            name: Arc::from(name),
            arity,
            decoration: Decoration::Plain,
        }
    }

    pub fn bullet() -> Self {
        FuncSym {
            name: Arc::from("#"),
            arity: 0,
            decoration: Decoration::Bullet,
        }
    }

    /// The circled partner `f°` of a plain symbol. Circling is idempotent.
    pub fn circled(&self) -> Self {
        assert!(
            self.decoration != Decoration::Bullet,
            "the bullet has no circled partner"
        );
        FuncSym {
            decoration: Decoration::Circled,
            ..self.clone()
        }
    }

    /// Strips a circle; plain symbols and the bullet are returned unchanged.
    pub fn plain(&self) -> Self {
        match self.decoration {
            Decoration::Circled => FuncSym {
                decoration: Decoration::Plain,
                ..self.clone()
            },
            _ => self.clone(),
        }
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn decoration(&self) -> Decoration {
        self.decoration
    }

    pub fn is_bullet(&self) -> bool {
        self.decoration == Decoration::Bullet
    }

    pub fn is_circled(&self) -> bool {
        self.decoration == Decoration::Circled
    }
}

impl fmt::Display for FuncSym {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.decoration {
            Decoration::Plain => write!(f, "{}", self.name),
            Decoration::Bullet => write!(f, "#"),
            Decoration::Circled => write!(f, "{}@", self.name),
        }
    }
}

/// An ordered finite set of function symbols.
///
/// Symbols keep their insertion order, which fixes the enumeration order of
/// terms and of automaton transitions.
#[derive(Clone, Debug, Default)]
pub struct Signature {
    symbols: Vec<FuncSym>,
    index: HashMap<(Arc<str>, Decoration), usize>,
}

impl PartialEq for Signature {
    fn eq(&self, other: &Self) -> bool {
        self.symbols == other.symbols
    }
}

impl Eq for Signature {}

impl Signature {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_symbols<I: IntoIterator<Item = FuncSym>>(symbols: I) -> Result<Self> {
        let mut sig = Signature::new();
        for s in symbols {
            sig.insert(s)?;
        }
        Ok(sig)
    }

    /// Adds a symbol, returning its index. Re-inserting an existing symbol is a
    /// no-op; reusing a name with a different arity is an error.
    pub fn insert(&mut self, sym: FuncSym) -> Result<usize> {
        let key = (sym.name.clone(), sym.decoration);
        if let Some(&i) = self.index.get(&key) {
            let known = &self.symbols[i];
            if known.arity != sym.arity {
                return Err(Error::Arity {
                    symbol: sym.to_string(),
                    expected: known.arity,
                    found: sym.arity,
                });
            }
            return Ok(i);
        }
        let i = self.symbols.len();
        self.index.insert(key, i);
        self.symbols.push(sym);
        Ok(i)
    }

    pub fn lookup(&self, name: &str, decoration: Decoration) -> Option<&FuncSym> {
        self.index
            .get(&(Arc::from(name), decoration))
            .map(|&i| &self.symbols[i])
    }

    pub fn index_of(&self, sym: &FuncSym) -> Option<usize> {
        let i = *self.index.get(&(sym.name.clone(), sym.decoration))?;
        (self.symbols[i].arity == sym.arity).then_some(i)
    }

    pub fn contains(&self, sym: &FuncSym) -> bool {
        self.index_of(sym).is_some()
    }

    pub fn symbol(&self, index: usize) -> &FuncSym {
        &self.symbols[index]
    }

    pub fn iter(&self) -> impl Iterator<Item = &FuncSym> + '_ {
        self.symbols.iter()
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn max_arity(&self) -> usize {
        self.symbols.iter().map(|s| s.arity).max().unwrap_or(0)
    }

    pub fn has_constant(&self) -> bool {
        self.symbols.iter().any(|s| s.arity == 0)
    }

    pub fn has_bullet(&self) -> bool {
        self.symbols.iter().any(FuncSym::is_bullet)
    }

    /// `F ∪ {•}`.
    pub fn with_bullet(&self) -> Self {
        let mut sig = self.clone();
        sig.insert(FuncSym::bullet()).expect("bullet is unique");
        sig
    }

    /// `F ∪ {f° | f ∈ F}` for the plain symbols of `self`.
    pub fn with_circled(&self) -> Self {
        let mut sig = self.clone();
        for s in self.symbols.iter().filter(|s| s.decoration == Decoration::Plain) {
            sig.insert(s.circled()).expect("circled partner keeps the arity");
        }
        sig
    }

    /// The plain symbols only.
    pub fn plain_part(&self) -> Self {
        Signature::from_symbols(
            self.symbols
                .iter()
                .filter(|s| s.decoration == Decoration::Plain)
                .cloned(),
        )
        .expect("subset of a valid signature")
    }
}

impl fmt::Display for Signature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, s) in self.symbols.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}/{}", s, s.arity)?;
        }
        write!(f, "}}")
    }
}

/// A first-order term.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(Arc<str>),
    App(FuncSym, Arc<[Term]>),
}

impl Term {
    pub fn var(name: &str) -> Self {
        Term::Var(Arc::from(name))
    }

    /// Builds `f(args)`. Panics if the argument count differs from the arity.
    pub fn app(sym: FuncSym, args: Vec<Term>) -> Self {
        assert_eq!(
            sym.arity,
            args.len(),
            "arity mismatch building a `{}` node",
            sym
        );
        Term::App(sym, args.into())
    }

    pub fn constant(sym: FuncSym) -> Self {
        Term::app(sym, Vec::new())
    }

    pub fn bullet() -> Self {
        Term::constant(FuncSym::bullet())
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    pub fn root(&self) -> Option<&FuncSym> {
        match self {
            Term::Var(_) => None,
            Term::App(f, _) => Some(f),
        }
    }

    pub fn args(&self) -> &[Term] {
        match self {
            Term::Var(_) => &[],
            Term::App(_, args) => args,
        }
    }

    /// Total number of symbol and variable occurrences.
    pub fn size(&self) -> usize {
        1 + self.args().iter().map(Term::size).sum::<usize>()
    }

    /// Height of the term; constants and variables have height 1.
    pub fn height(&self) -> usize {
        1 + self.args().iter().map(Term::height).max().unwrap_or(0)
    }

    pub fn is_ground(&self) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(_, args) => args.iter().all(Term::is_ground),
        }
    }

    /// Variable occurrences, left to right, with repetitions.
    pub fn var_occurrences(&self) -> Vec<Arc<str>> {
        let mut out = Vec::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars(&self, out: &mut Vec<Arc<str>>) {
        match self {
            Term::Var(x) => out.push(x.clone()),
            Term::App(_, args) => args.iter().for_each(|a| a.collect_vars(out)),
        }
    }

    pub fn vars(&self) -> BTreeSet<Arc<str>> {
        self.var_occurrences().into_iter().collect()
    }

    /// True iff no variable occurs twice.
    pub fn is_linear(&self) -> bool {
        let occ = self.var_occurrences();
        let set: BTreeSet<_> = occ.iter().collect();
        set.len() == occ.len()
    }

    pub fn contains_symbol(&self, pred: &dyn Fn(&FuncSym) -> bool) -> bool {
        match self {
            Term::Var(_) => false,
            Term::App(f, args) => pred(f) || args.iter().any(|a| a.contains_symbol(pred)),
        }
    }

    /// All symbols occurring in the term, in pre-order of first occurrence.
    pub fn symbols(&self) -> Vec<FuncSym> {
        let mut out: Vec<FuncSym> = Vec::new();
        self.for_each_node(&mut |t| {
            if let Term::App(f, _) = t {
                if !out.contains(f) {
                    out.push(f.clone());
                }
            }
        });
        out
    }

    fn for_each_node(&self, visit: &mut dyn FnMut(&Term)) {
        visit(self);
        for a in self.args() {
            a.for_each_node(visit);
        }
    }

    /// Every position of the term in pre-order (parents before children,
    /// siblings left to right).
    pub fn positions(&self) -> Vec<Position> {
        let mut out = Vec::new();
        let mut path = Vec::new();
        self.collect_positions(&mut path, &mut out);
        out
    }

    fn collect_positions(&self, path: &mut Vec<usize>, out: &mut Vec<Position>) {
        out.push(Position::from(path.clone()));
        for (i, a) in self.args().iter().enumerate() {
            path.push(i + 1);
            a.collect_positions(path, out);
            path.pop();
        }
    }

    /// The subterm at `p`.
    pub fn subterm_at(&self, p: &Position) -> Result<&Term> {
        let mut t = self;
        for &i in p.indices() {
            t = t
                .args()
                .get(i.wrapping_sub(1))
                .ok_or_else(|| self.invalid_position(p))?;
        }
        Ok(t)
    }

    /// `self` with the subterm at `p` replaced by `u`.
    pub fn replace_at(&self, p: &Position, u: Term) -> Result<Term> {
        self.replace_rec(p.indices(), u)
            .ok_or_else(|| self.invalid_position(p))
    }

    fn replace_rec(&self, path: &[usize], u: Term) -> Option<Term> {
        let Some((&i, rest)) = path.split_first() else {
            return Some(u);
        };
        match self {
            Term::App(f, args) if (1..=args.len()).contains(&i) => {
                let mut new_args = args.to_vec();
                new_args[i - 1] = args[i - 1].replace_rec(rest, u)?;
                Some(Term::App(f.clone(), new_args.into()))
            }
            _ => None,
        }
    }

    fn invalid_position(&self, p: &Position) -> Error {
        Error::InvalidPosition {
            position: p.clone(),
            term: self.to_string(),
        }
    }

    /// Applies `sigma`; variables outside its domain are left in place.
    pub fn apply(&self, sigma: &Substitution) -> Term {
        match self {
            Term::Var(x) => sigma.get(x).cloned().unwrap_or_else(|| self.clone()),
            Term::App(f, args) => {
                Term::App(f.clone(), args.iter().map(|a| a.apply(sigma)).collect())
            }
        }
    }

    /// Replaces every variable by the result of `f`.
    pub fn map_vars(&self, f: &mut dyn FnMut(&Arc<str>) -> Term) -> Term {
        match self {
            Term::Var(x) => f(x),
            Term::App(g, args) => {
                let new_args: Vec<Term> = args.iter().map(|a| a.map_vars(f)).collect();
                Term::App(g.clone(), new_args.into())
            }
        }
    }

    /// Renames variables to `x, y, z, x4, x5, ...` in order of first
    /// occurrence. Two terms differ by a variable renaming iff their canonical
    /// forms are equal.
    pub fn canonical(&self) -> Term {
        const FIRST: [&str; 3] = ["x", "y", "z"];
        let mut names: HashMap<Arc<str>, Arc<str>> = HashMap::new();
        self.map_vars(&mut |x| {
            let n = names.len();
            let name = names.entry(x.clone()).or_insert_with(|| match FIRST.get(n) {
                Some(s) => Arc::from(*s),
                None => Arc::from(format!("x{}", n + 1)),
            });
            Term::Var(name.clone())
        })
    }

    /// Replaces the root symbol `f` by `f°`. Panics on variables.
    pub fn circle_root(&self) -> Term {
        match self {
            Term::App(f, args) => Term::App(f.circled(), args.clone()),
            Term::Var(_) => panic!("cannot circle the root of a variable"),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) => write!(f, "{}", x),
            Term::App(g, args) if args.is_empty() => write!(f, "{}", g),
            Term::App(g, args) => {
                write!(f, "{}(", g)?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{}", a)?;
                }
                write!(f, ")")
            }
        }
    }
}

impl Serialize for Term {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A finite map from variables to terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Substitution(BTreeMap<Arc<str>, Term>);

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, x: &str) -> Option<&Term> {
        self.0.get(x)
    }

    pub fn insert(&mut self, x: Arc<str>, t: Term) -> Option<Term> {
        self.0.insert(x, t)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Arc<str>, &Term)> {
        self.0.iter()
    }
}

impl<'a> FromIterator<(&'a str, Term)> for Substitution {
    fn from_iter<I: IntoIterator<Item = (&'a str, Term)>>(iter: I) -> Self {
        Substitution(iter.into_iter().map(|(x, t)| (Arc::from(x), t)).collect())
    }
}

/// Syntactic matching: returns `σ` with `pattern σ = subject`, if any.
///
/// Non-linear patterns are supported (repeated variables must bind equal
/// subterms), though the decision procedures only use linear ones.
pub fn match_pattern(pattern: &Term, subject: &Term) -> Option<Substitution> {
    let mut sigma = Substitution::new();
    match_into(pattern, subject, &mut sigma).then_some(sigma)
}

fn match_into(pattern: &Term, subject: &Term, sigma: &mut Substitution) -> bool {
    match pattern {
        Term::Var(x) => match sigma.get(x) {
            Some(bound) => bound == subject,
            None => {
                sigma.insert(x.clone(), subject.clone());
                true
            }
        },
        Term::App(f, pargs) => match subject {
            Term::App(g, sargs) if f == g => pargs
                .iter()
                .zip(sargs.iter())
                .all(|(p, s)| match_into(p, s, sigma)),
            _ => false,
        },
    }
}

/// Matching test without building the substitution; only valid for linear
/// patterns.
pub fn matches_linear(pattern: &Term, subject: &Term) -> bool {
    match pattern {
        Term::Var(_) => true,
        Term::App(f, pargs) => match subject {
            Term::App(g, sargs) if f == g => pargs
                .iter()
                .zip(sargs.iter())
                .all(|(p, s)| matches_linear(p, s)),
            _ => false,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn sig() -> Signature {
        Signature::from_symbols([
            FuncSym::new("f", 2),
            FuncSym::new("g", 2),
            FuncSym::new("a", 0),
            FuncSym::new("b", 0),
        ])
        .unwrap()
    }

    fn t(s: &str) -> Term {
        parse_term(s, &["x", "y"], &sig()).unwrap()
    }

    #[test]
    fn subterm_at_reads_paths() {
        let s = t("f(a,g(b,b))");
        assert_eq!(s.subterm_at(&Position::root()).unwrap(), &s);
        assert_eq!(s.subterm_at(&Position::from(vec![2, 1])).unwrap(), &t("b"));
        let with_delta = t("f(g(a,a),g(g(a,a),g(a,a)))");
        assert_eq!(
            with_delta.subterm_at(&Position::from(vec![1])).unwrap(),
            &t("g(a,a)")
        );
        assert!(matches!(
            s.subterm_at(&Position::from(vec![3])),
            Err(Error::InvalidPosition { .. })
        ));
        assert!(s.subterm_at(&Position::from(vec![1, 1])).is_err());
    }

    #[test]
    fn replace_at_builds_bullet_variants() {
        let delta = t("g(a,a)");
        let s = Term::app(FuncSym::new("f", 2), vec![delta.clone(), t("a")]);
        assert_eq!(
            s.replace_at(&Position::from(vec![1]), Term::bullet()).unwrap(),
            Term::app(FuncSym::new("f", 2), vec![Term::bullet(), t("a")])
        );
        assert_eq!(
            t("g(a,a)").replace_at(&Position::root(), t("b")).unwrap(),
            t("b")
        );
        let big = t("f(g(a,a),g(g(a,a),g(a,a)))");
        let expected = Term::app(
            FuncSym::new("f", 2),
            vec![
                delta.clone(),
                Term::app(FuncSym::new("g", 2), vec![Term::bullet(), delta.clone()]),
            ],
        );
        assert_eq!(
            big.replace_at(&Position::from(vec![2, 1]), Term::bullet())
                .unwrap(),
            expected
        );
        assert!(big.replace_at(&Position::from(vec![0]), t("a")).is_err());
    }

    #[test]
    fn matching() {
        let sigma = match_pattern(&t("g(x,a)"), &t("g(b,a)")).unwrap();
        assert_eq!(sigma.get("x"), Some(&t("b")));
        assert_eq!(sigma.len(), 1);
        assert!(match_pattern(&t("g(x,a)"), &t("g(a,b)")).is_none());
        let sigma = match_pattern(&t("x"), &t("f(a,a)")).unwrap();
        assert_eq!(sigma.get("x"), Some(&t("f(a,a)")));
        assert!(match_pattern(&t("f(x,x)"), &t("f(a,b)")).is_none());
        assert!(match_pattern(&t("f(x,x)"), &t("f(b,b)")).is_some());
    }

    #[test]
    fn linearity() {
        assert!(t("f(x,a)").is_linear());
        assert!(!t("f(x,x)").is_linear());
        assert!(t("a").is_linear());
    }

    #[test]
    fn canonical_identifies_renamings() {
        assert_eq!(t("g(y,a)").canonical(), t("g(x,a)").canonical());
        assert_ne!(t("g(y,x)").canonical(), t("g(x,x)").canonical());
        assert_eq!(t("g(y,x)").canonical(), t("g(x,y)").canonical());
    }

    #[test]
    fn size_and_height() {
        let s = t("f(a,g(x,a))");
        assert_eq!(s.size(), 5);
        assert_eq!(s.height(), 3);
        assert_eq!(t("a").height(), 1);
    }

    #[test]
    fn positions_are_preorder() {
        let ps: Vec<String> = t("f(a,g(b,a))")
            .positions()
            .iter()
            .map(|p| p.to_string())
            .collect();
        assert_eq!(ps, ["ε", "1", "2", "2.1", "2.2"]);
    }

    fn arb_ground() -> impl Strategy<Value = Term> {
        let leaf = prop_oneof![Just("a"), Just("b")]
            .prop_map(|c| Term::constant(FuncSym::new(c, 0)));
        leaf.prop_recursive(4, 32, 2, |inner| {
            (prop_oneof![Just("f"), Just("g")], inner.clone(), inner)
                .prop_map(|(h, l, r)| Term::app(FuncSym::new(h, 2), vec![l, r]))
        })
    }

    fn arb_pattern() -> impl Strategy<Value = Term> {
        let leaf = prop_oneof![Just("a"), Just("b"), Just("x"), Just("y")].prop_map(|c| {
            if c.len() == 1 && (c == "x" || c == "y") {
                Term::var(c)
            } else {
                Term::constant(FuncSym::new(c, 0))
            }
        });
        leaf.prop_recursive(3, 16, 2, |inner| {
            (prop_oneof![Just("f"), Just("g")], inner.clone(), inner)
                .prop_map(|(h, l, r)| Term::app(FuncSym::new(h, 2), vec![l, r]))
        })
    }

    proptest! {
        #[test]
        fn print_parse_roundtrip(s in arb_ground()) {
            let printed = s.to_string();
            prop_assert_eq!(parse_term(&printed, &[] as &[&str], &sig()).unwrap(), s);
        }

        #[test]
        fn replace_with_own_subterm_is_identity(s in arb_ground(), pick in any::<prop::sample::Index>()) {
            let ps = s.positions();
            let p = pick.get(&ps);
            let sub = s.subterm_at(p).unwrap().clone();
            prop_assert_eq!(s.replace_at(p, sub).unwrap(), s);
        }

        #[test]
        fn instances_match_their_pattern(
            pat in arb_pattern(),
            xs in arb_ground(),
            ys in arb_ground(),
        ) {
            let sigma: Substitution = [("x", xs), ("y", ys)].into_iter().collect();
            let subject = pat.apply(&sigma);
            let found = match_pattern(&pat, &subject);
            prop_assert!(found.is_some());
            prop_assert_eq!(pat.apply(&found.unwrap()), subject);
        }
    }
}
