//! Rewrite systems, syntactic class checks, approximation mappings and the
//! bullet/circle signature extensions.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::terms::parse::RESERVED_PREFIX;
use crate::terms::parse::{resolve, Tok};
use crate::terms::{
    match_pattern, Ast, Decoration, FuncSym, Parser, Position, Signature, Substitution, Term,
};

/// Name of the constant added to signatures that have none.
pub const FRESH_CONSTANT: &str = "_c";

fn fresh_var(k: usize) -> Term {
    Term::var(&format!("{}v{}", RESERVED_PREFIX, k))
}

/// A rewrite rule `lhs -> rhs` with a non-variable left-hand side.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Rule {
    lhs: Term,
    rhs: Term,
}

impl Rule {
    /// Fails on a variable left-hand side. Right-hand side variables are not
    /// checked here because approximated systems introduce fresh ones.
    pub fn new(lhs: Term, rhs: Term) -> Result<Self> {
        if lhs.is_var() {
            return Err(Error::VariableLhs(format!("{} -> {}", lhs, rhs)));
        }
        Ok(Rule { lhs, rhs })
    }

    pub fn lhs(&self) -> &Term {
        &self.lhs
    }

    pub fn rhs(&self) -> &Term {
        &self.rhs
    }

    /// The root symbol of the left-hand side.
    pub fn head(&self) -> &FuncSym {
        self.lhs.root().expect("lhs is not a variable")
    }

    pub fn is_left_linear(&self) -> bool {
        self.lhs.is_linear()
    }

    pub fn is_right_linear(&self) -> bool {
        self.rhs.is_linear()
    }

    /// Every variable shared by both sides occurs in the lhs only as a direct
    /// argument of the root.
    pub fn is_growing(&self) -> bool {
        let rhs_vars = self.rhs.vars();
        self.lhs
            .args()
            .iter()
            .filter(|a| !a.is_var())
            .flat_map(Term::var_occurrences)
            .all(|x| !rhs_vars.contains(&x))
    }

    /// Right-hand side variables that do not occur on the left.
    pub fn extra_vars(&self) -> BTreeSet<Arc<str>> {
        let lv = self.lhs.vars();
        self.rhs
            .vars()
            .into_iter()
            .filter(|x| !lv.contains(x))
            .collect()
    }

    pub fn size(&self) -> usize {
        self.lhs.size() + self.rhs.size()
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} -> {}", self.lhs, self.rhs)
    }
}

/// The approximation mappings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Approx {
    /// Every right-hand side becomes a fresh variable.
    S,
    /// Every right-hand side variable occurrence becomes a distinct fresh
    /// variable.
    NV,
    /// Right-linear growing: only occurrences that break growingness or
    /// right-linearity are renamed.
    G,
}

impl Approx {
    pub const ALL: [Approx; 3] = [Approx::S, Approx::NV, Approx::G];
}

impl fmt::Display for Approx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Approx::S => "s",
            Approx::NV => "nv",
            Approx::G => "g",
        })
    }
}

impl FromStr for Approx {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "s" => Ok(Approx::S),
            "nv" => Ok(Approx::NV),
            "g" => Ok(Approx::G),
            other => Err(format!("unknown approximation `{}` (expected s, nv or g)", other)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TrsFlags {
    pub left_linear: bool,
    pub right_linear: bool,
    pub growing: bool,
}

/// A rewrite system over a signature.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Trs {
    signature: Signature,
    rules: Vec<Rule>,
    flags: TrsFlags,
}

impl Trs {
    /// Checks that every rule is over `signature` and computes the flags.
    pub fn new(signature: Signature, rules: Vec<Rule>) -> Result<Self> {
        for rule in &rules {
            for side in [&rule.lhs, &rule.rhs] {
                for sym in side.symbols() {
                    if !signature.contains(&sym) {
                        return Err(Error::UnknownSymbol(sym.to_string()));
                    }
                }
            }
        }
        let flags = TrsFlags {
            left_linear: rules.iter().all(Rule::is_left_linear),
            right_linear: rules.iter().all(Rule::is_right_linear),
            growing: rules.iter().all(Rule::is_growing),
        };
        Ok(Trs {
            signature,
            rules,
            flags,
        })
    }

    /// Builds the signature from the symbols occurring in `rules`, adding a
    /// fresh constant when none occurs.
    pub fn from_rules(rules: Vec<Rule>) -> Result<Self> {
        let mut sig = Signature::new();
        for rule in &rules {
            for sym in rule.lhs.symbols().into_iter().chain(rule.rhs.symbols()) {
                sig.insert(sym)?;
            }
        }
        if !sig.has_constant() {
            sig.insert(FuncSym::new(FRESH_CONSTANT, 0))?;
        }
        Trs::new(sig, rules)
    }

    pub fn signature(&self) -> &Signature {
        &self.signature
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn flags(&self) -> TrsFlags {
        self.flags
    }

    pub fn is_left_linear(&self) -> bool {
        self.flags.left_linear
    }

    pub fn is_right_linear(&self) -> bool {
        self.flags.right_linear
    }

    pub fn is_growing(&self) -> bool {
        self.flags.growing
    }

    pub fn is_linear_growing(&self) -> bool {
        self.flags.left_linear && self.flags.right_linear && self.flags.growing
    }

    /// `♯R`
    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    /// `|R|`: the summed sizes of both sides of all rules.
    pub fn size(&self) -> usize {
        self.rules.iter().map(Rule::size).sum()
    }

    pub fn require_left_linear(&self) -> Result<()> {
        match self.rules.iter().find(|r| !r.is_left_linear()) {
            Some(r) => Err(Error::NotLeftLinear(r.to_string())),
            None => Ok(()),
        }
    }

    pub fn require_linear_growing(&self) -> Result<()> {
        match self
            .rules
            .iter()
            .find(|r| !(r.is_left_linear() && r.is_right_linear() && r.is_growing()))
        {
            Some(r) => Err(Error::NotLinearGrowing(r.to_string())),
            None => Ok(()),
        }
    }

    /// Applies an approximation mapping. Fresh variables are named `_v0`,
    /// `_v1`, ... per rule.
    pub fn approximate(&self, a: Approx) -> Result<Trs> {
        self.require_left_linear()?;
        let rules = self
            .rules
            .iter()
            .map(|rule| {
                let mut counter = 0;
                let mut fresh = || {
                    let v = fresh_var(counter);
                    counter += 1;
                    v
                };
                let rhs = match a {
                    Approx::S => fresh(),
                    Approx::NV => rule.rhs.map_vars(&mut |_| fresh()),
                    Approx::G => {
                        let depth_one: BTreeSet<Arc<str>> = rule
                            .lhs
                            .args()
                            .iter()
                            .filter_map(|t| match t {
                                Term::Var(x) => Some(x.clone()),
                                _ => None,
                            })
                            .collect();
                        let mut kept: BTreeSet<Arc<str>> = BTreeSet::new();
                        rule.rhs.map_vars(&mut |x| {
                            if depth_one.contains(x) && kept.insert(x.clone()) {
                                Term::Var(x.clone())
                            } else {
                                fresh()
                            }
                        })
                    }
                };
                Rule {
                    lhs: rule.lhs.clone(),
                    rhs,
                }
            })
            .collect();
        Trs::new(self.signature.clone(), rules)
    }

    /// `R ∪ {• -> •}` over `F ∪ {•}`.
    pub fn extend_bullet(&self) -> Trs {
        let mut rules = self.rules.clone();
        let bullet_rule = Rule {
            lhs: Term::bullet(),
            rhs: Term::bullet(),
        };
        if !rules.contains(&bullet_rule) {
            rules.push(bullet_rule);
        }
        Trs::new(self.signature.with_bullet(), rules).expect("extension stays over the signature")
    }

    /// `R ∪ {l° -> r}` over `F ∪ {f° | f ∈ F}`.
    pub fn extend_circle(&self) -> Trs {
        let mut rules = self.rules.clone();
        for r in &self.rules {
            if r.head().decoration() == Decoration::Plain {
                rules.push(Rule {
                    lhs: r.lhs.circle_root(),
                    rhs: r.rhs.clone(),
                });
            }
        }
        Trs::new(self.signature.with_circled(), rules).expect("extension stays over the signature")
    }

    /// The same rules over a larger signature.
    pub fn with_signature(&self, signature: Signature) -> Result<Trs> {
        for s in self.signature.iter() {
            if !signature.contains(s) {
                return Err(Error::SignatureMismatch(format!(
                    "symbol {} missing from the new signature",
                    s
                )));
            }
        }
        Trs::new(signature, self.rules.clone())
    }

    /// True iff some rule's left-hand side matches `t` at the root.
    pub fn is_redex(&self, t: &Term) -> bool {
        self.rules
            .iter()
            .any(|r| match_pattern(&r.lhs, t).is_some())
    }

    /// Redex positions of `t` in pre-order: ancestors before descendants,
    /// siblings left to right.
    pub fn redex_positions(&self, t: &Term) -> Vec<Position> {
        t.positions()
            .into_iter()
            .filter(|p| self.is_redex(t.subterm_at(p).expect("own position")))
            .collect()
    }

    pub fn is_normal_form(&self, t: &Term) -> bool {
        t.positions()
            .iter()
            .all(|p| !self.is_redex(t.subterm_at(p).expect("own position")))
    }

    /// All one-step successors of a ground term. Variables of a fired rule's
    /// right-hand side that the match does not bind are instantiated with
    /// every term of `pool`; see [`Trs::rewrite_step`] for systems without
    /// such variables.
    pub fn rewrite_step_instantiating(&self, t: &Term, pool: &[Term]) -> BTreeSet<Term> {
        let mut out = BTreeSet::new();
        for p in t.positions() {
            let sub = t.subterm_at(&p).expect("own position");
            for rule in &self.rules {
                let Some(sigma) = match_pattern(&rule.lhs, sub) else {
                    continue;
                };
                let extra: Vec<Arc<str>> = rule.extra_vars().into_iter().collect();
                for_each_assignment(&extra, pool, &sigma, &mut |full| {
                    let contractum = rule.rhs.apply(full);
                    out.insert(t.replace_at(&p, contractum).expect("own position"));
                });
            }
        }
        out
    }

    /// All one-step successors of a ground term. Panics if a rule with
    /// unbound right-hand side variables fires.
    pub fn rewrite_step(&self, t: &Term) -> BTreeSet<Term> {
        assert!(
            self.rules.iter().all(|r| r.extra_vars().is_empty()),
            "rewrite_step needs an instantiation pool for rules with fresh variables"
        );
        self.rewrite_step_instantiating(t, &[])
    }

    /// Pairs of rules `(i, j, p)` such that the lhs of rule `i` unifies with
    /// the non-variable subterm at `p` of the lhs of rule `j`, excluding the
    /// trivial overlap of a rule with itself at the root. Only meaningful for
    /// left-linear systems, where renamed-apart left-hand sides unify iff they
    /// agree on every position both define.
    pub fn overlaps(&self) -> Vec<(usize, usize, Position)> {
        fn compatible(s: &Term, t: &Term) -> bool {
            match (s, t) {
                (Term::Var(_), _) | (_, Term::Var(_)) => true,
                (Term::App(f, xs), Term::App(g, ys)) => {
                    f == g && xs.iter().zip(ys.iter()).all(|(x, y)| compatible(x, y))
                }
            }
        }
        let mut out = Vec::new();
        for (j, outer) in self.rules.iter().enumerate() {
            for p in outer.lhs.positions() {
                let sub = outer.lhs.subterm_at(&p).expect("own position");
                if sub.is_var() {
                    continue;
                }
                for (i, inner) in self.rules.iter().enumerate() {
                    if i == j && p.is_root() {
                        continue;
                    }
                    if compatible(&inner.lhs, sub) {
                        out.push((i, j, p.clone()));
                    }
                }
            }
        }
        out
    }

    pub fn is_orthogonal(&self) -> bool {
        self.flags.left_linear && self.overlaps().is_empty()
    }
}

fn for_each_assignment(
    vars: &[Arc<str>],
    pool: &[Term],
    base: &Substitution,
    f: &mut dyn FnMut(&Substitution),
) {
    match vars.split_first() {
        None => f(base),
        Some((x, rest)) => {
            for t in pool {
                let mut s = base.clone();
                s.insert(x.clone(), t.clone());
                for_each_assignment(rest, pool, &s, f);
            }
        }
    }
}

impl fmt::Display for Trs {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: BTreeSet<Arc<str>> = self
            .rules
            .iter()
            .flat_map(|r| r.lhs.vars().into_iter().chain(r.rhs.vars()))
            .collect();
        if !vars.is_empty() {
            write!(f, "(VAR")?;
            for v in &vars {
                write!(f, " {}", v)?;
            }
            writeln!(f, ")")?;
        }
        writeln!(f, "(RULES")?;
        for r in &self.rules {
            writeln!(f, "  {}", r)?;
        }
        write!(f, ")")
    }
}

/// Parses the `.trs` format:
///
/// ```text
/// (VAR x y)
/// (RULES
///   f(x,a) -> x
///   g(b,b) -> a
/// )
/// ```
///
/// Rules are separated by commas or newlines and `;` starts a comment.
/// Identifiers not declared in `VAR` are function symbols; their arity is
/// taken from their use.
pub fn parse_trs(text: &str) -> Result<Trs> {
    let mut p = Parser::new(text, false)?;
    let mut vars: Vec<String> = Vec::new();
    let mut raw_rules: Vec<(Ast, Ast)> = Vec::new();
    while !p.at_end() {
        p.expect(Tok::LParen, "`(`")?;
        let section = match p.bump() {
            Some(Tok::Ident(s)) => s,
            _ => return p.error("expected a section name (VAR or RULES)"),
        };
        match section.as_str() {
            "VAR" => loop {
                match p.bump() {
                    Some(Tok::Ident(x)) => {
                        if x.starts_with(RESERVED_PREFIX) {
                            return Err(Error::ReservedIdentifier(x));
                        }
                        vars.push(x)
                    }
                    Some(Tok::RParen) => break,
                    _ => return p.error("expected a variable name or `)`"),
                }
            },
            "RULES" => loop {
                match p.peek() {
                    Some(Tok::RParen) => {
                        p.bump();
                        break;
                    }
                    Some(Tok::Comma) => {
                        p.bump();
                    }
                    None => return p.error("unterminated RULES section"),
                    _ => {
                        let lhs = p.ast()?;
                        p.expect(Tok::Arrow, "`->`")?;
                        let rhs = p.ast()?;
                        raw_rules.push((lhs, rhs));
                    }
                }
            },
            "COMMENT" => {
                let mut depth = 1usize;
                while depth > 0 {
                    match p.bump() {
                        Some(Tok::LParen) => depth += 1,
                        Some(Tok::RParen) => depth -= 1,
                        Some(_) => {}
                        None => return p.error("unterminated COMMENT section"),
                    }
                }
            }
            other => return p.error(format!("unknown section `{}`", other)),
        }
    }

    let mut sig = Signature::new();
    let mut arities: HashMap<String, usize> = HashMap::new();
    for (l, r) in &raw_rules {
        collect_symbols(l, &vars, &mut sig, &mut arities)?;
        collect_symbols(r, &vars, &mut sig, &mut arities)?;
    }
    if !sig.has_constant() {
        sig.insert(FuncSym::new(FRESH_CONSTANT, 0))?;
    }
    let mut rules = Vec::with_capacity(raw_rules.len());
    for (l, r) in &raw_rules {
        let var_names: Vec<&str> = vars.iter().map(String::as_str).collect();
        let lhs = resolve(l, &var_names, &sig, true)?;
        let rhs = resolve(r, &var_names, &sig, true)?;
        let rule = Rule::new(lhs, rhs)?;
        if let Some(x) = rule.extra_vars().into_iter().next() {
            return Err(Error::UnboundRhsVariable {
                rule: rule.to_string(),
                var: x.to_string(),
            });
        }
        rules.push(rule);
    }
    let trs = Trs::new(sig, rules)?;
    if trs.is_left_linear() {
        let overlaps = trs.overlaps();
        if !overlaps.is_empty() {
            log::warn!(
                "rewrite system has {} overlap(s); neededness is only optimal for orthogonal systems",
                overlaps.len()
            );
        }
    }
    Ok(trs)
}

fn collect_symbols(
    ast: &Ast,
    vars: &[String],
    sig: &mut Signature,
    arities: &mut HashMap<String, usize>,
) -> Result<()> {
    if ast.name.starts_with(RESERVED_PREFIX) {
        return Err(Error::ReservedIdentifier(ast.name.clone()));
    }
    let args = ast.args.as_deref().unwrap_or(&[]);
    if vars.contains(&ast.name) {
        if ast.args.is_some() {
            return Err(Error::Syntax {
                offset: ast.offset,
                message: format!("variable `{}` applied to arguments", ast.name),
            });
        }
        return Ok(());
    }
    if let Some(&known) = arities.get(&ast.name) {
        if known != args.len() {
            return Err(Error::Arity {
                symbol: ast.name.clone(),
                expected: known,
                found: args.len(),
            });
        }
    } else {
        arities.insert(ast.name.clone(), args.len());
        sig.insert(FuncSym::new(&ast.name, args.len()))?;
    }
    for a in args {
        collect_symbols(a, vars, sig, arities)?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::terms::parse_term;

    pub(crate) const EXAMPLE: &str = "(VAR x)
(RULES
  f(a,g(x,a)) -> b
  f(x,a) -> x
  f(b,g(a,x)) -> b
  g(b,b) -> a
)";

    fn example() -> Trs {
        parse_trs(EXAMPLE).unwrap()
    }

    fn term(trs: &Trs, s: &str) -> Term {
        parse_term(s, &["x"], trs.signature()).unwrap()
    }

    #[test]
    fn parses_example_system() {
        let e = example();
        assert_eq!(e.rule_count(), 4);
        assert!(e.is_left_linear());
        assert!(e.is_growing());
        assert!(e.is_right_linear());
        assert_eq!(e.signature().len(), 4);
        assert_eq!(e.signature().max_arity(), 2);
        assert!(e.is_orthogonal());
    }

    #[test]
    fn parses_minimal_system() {
        let t = parse_trs("(RULES a -> b)").unwrap();
        assert_eq!(t.rule_count(), 1);
        assert_eq!(t.signature().len(), 2);
        let t = parse_trs("(RULES a -> b, c -> b)").unwrap();
        assert_eq!(t.rule_count(), 2);
    }

    #[test]
    fn rejects_bad_systems() {
        assert!(matches!(
            parse_trs("(VAR x) (RULES x -> a)"),
            Err(Error::VariableLhs(_))
        ));
        assert!(matches!(
            parse_trs("(VAR x y) (RULES f(x) -> y)"),
            Err(Error::UnboundRhsVariable { .. })
        ));
        assert!(matches!(
            parse_trs("(RULES f(a) -> f(a,a))"),
            Err(Error::Arity { .. })
        ));
        assert!(matches!(
            parse_trs("(VAR _v0) (RULES f(_v0) -> a)"),
            Err(Error::ReservedIdentifier(_))
        ));
        assert!(matches!(
            parse_trs("(RULES f(a) -> b"),
            Err(Error::Syntax { .. })
        ));
    }

    #[test]
    fn adds_a_constant_when_missing() {
        let t = parse_trs("(VAR x) (RULES f(x) -> x)").unwrap();
        assert!(t.signature().has_constant());
        assert!(t.signature().lookup(FRESH_CONSTANT, Decoration::Plain).is_some());
    }

    #[test]
    fn growingness() {
        assert!(example().is_growing());
        assert!(!parse_trs("(VAR x) (RULES f(g(x)) -> x)").unwrap().is_growing());
        assert!(parse_trs("(VAR x) (RULES f(g(x)) -> a)").unwrap().is_growing());
    }

    #[test]
    fn approximations() {
        let e = example();
        let s = e.approximate(Approx::S).unwrap();
        assert!(s.rules().iter().all(|r| r.rhs().is_var() && !r.extra_vars().is_empty()));
        let g = e.approximate(Approx::G).unwrap();
        assert_eq!(g.rules()[1].rhs(), &Term::var("x"));
        assert_eq!(g, e);
        let nv = e.approximate(Approx::NV).unwrap();
        assert_eq!(nv.rules()[1].rhs(), &Term::var("_v0"));
        assert_eq!(nv.rules()[3].rhs(), &term(&e, "a"));
        assert!(matches!(
            parse_trs("(VAR x) (RULES f(x,x) -> x)")
                .unwrap()
                .approximate(Approx::S),
            Err(Error::NotLeftLinear(_))
        ));
    }

    #[test]
    fn growing_approximation_renames_minimally() {
        let t = parse_trs("(VAR x y) (RULES f(g(x),y) -> h(x,y,y))").unwrap();
        let g = t.approximate(Approx::G).unwrap();
        assert_eq!(g.rules()[0].rhs().to_string(), "h(_v0,y,_v1)");
        assert!(g.is_linear_growing());
    }

    #[test]
    fn redex_positions_in_example_terms() {
        let e = example();
        // Δ = g(a,a) is not an instance of any left-hand side of this system.
        let t = term(&e, "f(g(a,a),g(g(a,a),g(a,a)))");
        assert!(e.redex_positions(&t).is_empty());
        let t = term(&e, "f(f(a,a),g(f(a,a),f(a,a)))");
        let ps: Vec<String> = e.redex_positions(&t).iter().map(|p| p.to_string()).collect();
        assert_eq!(ps, ["1", "2.1", "2.2"]);
        assert!(e.redex_positions(&term(&e, "b")).is_empty());
        let ab = parse_trs("(RULES a -> b)").unwrap();
        let a = parse_term("a", &[] as &[&str], ab.signature()).unwrap();
        assert_eq!(ab.redex_positions(&a), vec![Position::root()]);
    }

    #[test]
    fn bullet_extension() {
        let ab = parse_trs("(RULES a -> b)").unwrap().extend_bullet();
        assert_eq!(ab.rule_count(), 2);
        assert_eq!(ab.signature().len(), 3);
        assert!(ab.signature().has_bullet());
        assert_eq!(example().extend_bullet().rule_count(), 5);
        let empty = Trs::new(
            Signature::from_symbols([FuncSym::new("a", 0)]).unwrap(),
            vec![],
        )
        .unwrap()
        .extend_bullet();
        assert_eq!(empty.rule_count(), 1);
        assert_eq!(empty.signature().len(), 2);
    }

    #[test]
    fn circle_extension() {
        let ab = parse_trs("(RULES a -> b)").unwrap().extend_circle();
        assert_eq!(ab.rule_count(), 2);
        assert_eq!(ab.signature().len(), 4);
        assert_eq!(ab.rules()[1].to_string(), "a@ -> b");
        let e = example().extend_circle();
        assert_eq!(e.rule_count(), 8);
        assert_eq!(e.rules()[7].to_string(), "g@(b,b) -> a");
    }

    #[test]
    fn one_step_rewriting() {
        let ab = parse_trs("(RULES a -> b)").unwrap();
        let a = parse_term("a", &[] as &[&str], ab.signature()).unwrap();
        let succ: Vec<String> = ab.rewrite_step(&a).iter().map(|t| t.to_string()).collect();
        assert_eq!(succ, ["b"]);
        let e = example();
        let succ: Vec<String> = e
            .rewrite_step(&term(&e, "g(b,b)"))
            .iter()
            .map(|t| t.to_string())
            .collect();
        assert_eq!(succ, ["a"]);
        assert!(e.rewrite_step(&term(&e, "b")).is_empty());
    }

    #[test]
    fn instantiating_fresh_variables() {
        let s = parse_trs("(RULES a -> b)").unwrap().approximate(Approx::S).unwrap();
        let pool: Vec<Term> = ["a", "b"]
            .iter()
            .map(|c| parse_term(c, &[] as &[&str], s.signature()).unwrap())
            .collect();
        let succ = s.rewrite_step_instantiating(&pool[0], &pool);
        assert_eq!(succ.len(), 2);
    }

    #[test]
    fn overlapping_systems_are_detected() {
        let t = parse_trs("(VAR x) (RULES f(a,x) -> a, f(x,b) -> b)").unwrap();
        assert!(!t.is_orthogonal());
        let t = parse_trs("(VAR x) (RULES f(g(x)) -> a, g(a) -> b)").unwrap();
        assert_eq!(t.overlaps().len(), 1);
    }
}
