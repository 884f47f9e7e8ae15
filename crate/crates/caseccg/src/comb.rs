//! Applicative combinatory-logic terms and normal order evaluation.
//!
//! Semantics of derivations are built from a small set of combinators
//! (`I`, `T`, `B`, `Bⁿ`, `C`, `W`, `S`, `Φ`) applied to opaque constants.
//! Revealing the predicate-argument structure of a derivation amounts to
//! contracting every redex, leftmost-outermost first, until no combinator
//! can fire.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A primitive rewriting operator together with its reduction rule.
///
/// `Bn(n)` is the n-deep compositor `Bⁿ f g a₁…aₙ → f (g a₁…aₙ)`; `Bn(1)`
/// is kept structurally distinct from `B` although the two reduce alike.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Combinator {
    /// `I f → f`
    I,
    /// `T a f → f a`
    T,
    /// `B f g a → f (g a)`
    B,
    /// `C f g a → f a g`
    C,
    /// `W f a → f a a`
    W,
    /// `S f g a → f a (g a)`
    S,
    /// `Φ c f g a → c (f a) (g a)`
    Phi,
    /// `Bⁿ f g a₁…aₙ → f (g a₁…aₙ)`, n ≥ 1
    Bn(u32),
}

impl Combinator {
    /// Number of arguments needed before the reduction rule can fire.
    pub fn order(self) -> usize {
        match self {
            Combinator::I => 1,
            Combinator::T | Combinator::W => 2,
            Combinator::B | Combinator::C | Combinator::S => 3,
            Combinator::Phi => 4,
            Combinator::Bn(n) => n as usize + 2,
        }
    }
}

impl fmt::Display for Combinator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Combinator::I => write!(f, "I"),
            Combinator::T => write!(f, "T"),
            Combinator::B => write!(f, "B"),
            Combinator::C => write!(f, "C"),
            Combinator::W => write!(f, "W"),
            Combinator::S => write!(f, "S"),
            Combinator::Phi => write!(f, "Phi"),
            Combinator::Bn(n) => write!(f, "B{}", n),
        }
    }
}

/// An applicative term: a constant, a combinator, or a binary application.
///
/// Application is left-associative; `f a b` denotes `App(App(f, a), b)`.
/// Constants are opaque and never head a redex.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Term {
    Constant(String),
    Combinator(Combinator),
    App(Box<Term>, Box<Term>),
}

impl Term {
    pub fn constant(name: impl Into<String>) -> Term {
        Term::Constant(name.into())
    }

    pub fn app(f: Term, a: Term) -> Term {
        Term::App(Box::new(f), Box::new(a))
    }

    /// `apps(f, [a, b, c])` builds the spine `f a b c`.
    pub fn apps(head: Term, args: impl IntoIterator<Item = Term>) -> Term {
        args.into_iter().fold(head, Term::app)
    }

    /// Head and arguments of the application spine, arguments in
    /// application order.
    fn spine(&self) -> (&Term, Vec<&Term>) {
        let mut args = Vec::new();
        let mut head = self;
        while let Term::App(f, a) = head {
            args.push(a.as_ref());
            head = f;
        }
        args.reverse();
        (head, args)
    }

    /// True iff this term is a spine headed by a combinator applied to at
    /// least its order. `B f g` is not a redex but `B f g a` is; subterms
    /// are not inspected.
    pub fn is_redex(&self) -> bool {
        let (head, args) = self.spine();
        match head {
            Term::Combinator(c) => args.len() >= c.order(),
            _ => false,
        }
    }

    /// Contract the redex at the root spine, if there is one. Extra spine
    /// arguments beyond the combinator's order are reapplied to the result.
    fn contract_root(&self) -> Option<Term> {
        let (head, args) = self.spine();
        let c = match head {
            Term::Combinator(c) => *c,
            _ => return None,
        };
        let k = c.order();
        if args.len() < k {
            return None;
        }
        let reduced = match c {
            Combinator::I => args[0].clone(),
            Combinator::T => Term::app(args[1].clone(), args[0].clone()),
            Combinator::B => Term::app(
                args[0].clone(),
                Term::app(args[1].clone(), args[2].clone()),
            ),
            Combinator::C => Term::app(
                Term::app(args[0].clone(), args[2].clone()),
                args[1].clone(),
            ),
            Combinator::W => Term::app(
                Term::app(args[0].clone(), args[1].clone()),
                args[1].clone(),
            ),
            Combinator::S => Term::app(
                Term::app(args[0].clone(), args[2].clone()),
                Term::app(args[1].clone(), args[2].clone()),
            ),
            Combinator::Phi => Term::app(
                Term::app(args[0].clone(), Term::app(args[1].clone(), args[3].clone())),
                Term::app(args[2].clone(), args[3].clone()),
            ),
            Combinator::Bn(n) => {
                let inner = Term::apps(
                    args[1].clone(),
                    args[2..2 + n as usize].iter().map(|a| (*a).clone()),
                );
                Term::app(args[0].clone(), inner)
            }
        };
        Some(Term::apps(reduced, args[k..].iter().map(|a| (*a).clone())))
    }

    /// Contract exactly the leftmost-outermost redex, or return `None`
    /// when no redex exists anywhere in the term.
    pub fn reduce_leftmost_outermost(&self) -> Option<Term> {
        if let Some(t) = self.contract_root() {
            return Some(t);
        }
        if let Term::App(f, a) = self {
            if let Some(f2) = f.reduce_leftmost_outermost() {
                return Some(Term::app(f2, (**a).clone()));
            }
            if let Some(a2) = a.reduce_leftmost_outermost() {
                return Some(Term::app((**f).clone(), a2));
            }
        }
        None
    }

    /// True iff no combinator occurs anywhere in the term.
    pub fn combinator_free(&self) -> bool {
        match self {
            Term::Constant(_) => true,
            Term::Combinator(_) => false,
            Term::App(f, a) => f.combinator_free() && a.combinator_free(),
        }
    }

    /// Normal order evaluation: contract leftmost-outermost redexes until
    /// none remain or `step_limit` contractions have been spent. The
    /// partially reduced term is returned either way; a diverging input is
    /// recognizable by `steps == step_limit && !normal_form`.
    pub fn evaluate(&self, step_limit: usize) -> (Term, ReductionStats) {
        self.evaluate_traced(step_limit, |_| {})
    }

    /// Like [`Term::evaluate`], invoking `on_step` with the whole term
    /// after every contraction.
    pub fn evaluate_traced(
        &self,
        step_limit: usize,
        mut on_step: impl FnMut(&Term),
    ) -> (Term, ReductionStats) {
        let mut current = self.clone();
        let mut steps = 0usize;
        loop {
            match current.reduce_leftmost_outermost() {
                None => {
                    let combinator_free = current.combinator_free();
                    return (
                        current,
                        ReductionStats {
                            steps,
                            normal_form: true,
                            combinator_free,
                        },
                    );
                }
                Some(next) => {
                    if steps >= step_limit {
                        return (
                            current,
                            ReductionStats {
                                steps,
                                normal_form: false,
                                combinator_free: false,
                            },
                        );
                    }
                    steps += 1;
                    on_step(&next);
                    current = next;
                }
            }
        }
    }
}

/// Outcome summary of an evaluation run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReductionStats {
    /// Single contractions performed.
    pub steps: usize,
    /// True iff the returned term contains no redex anywhere.
    pub normal_form: bool,
    /// True iff the returned term contains no combinator. A term like
    /// `b I` is redex-free yet not combinator free; the two flags are
    /// reported separately.
    pub combinator_free: bool,
}

/// Error produced by [`Term::from_str`], with a character position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("term syntax error at {position}: {message}")]
pub struct TermParseError {
    pub position: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq)]
enum TermToken {
    Atom(String),
    Open,
    Close,
}

fn tokenize_term(text: &str) -> Vec<(usize, TermToken)> {
    let mut tokens = Vec::new();
    let mut atom_start = None;
    let mut atom = String::new();
    for (pos, ch) in text.char_indices() {
        if ch == '(' || ch == ')' || ch.is_whitespace() {
            if let Some(start) = atom_start.take() {
                tokens.push((start, TermToken::Atom(std::mem::take(&mut atom))));
            }
            if ch == '(' {
                tokens.push((pos, TermToken::Open));
            } else if ch == ')' {
                tokens.push((pos, TermToken::Close));
            }
        } else {
            if atom_start.is_none() {
                atom_start = Some(pos);
            }
            atom.push(ch);
        }
    }
    if let Some(start) = atom_start {
        tokens.push((start, TermToken::Atom(atom)));
    }
    tokens
}

fn atom_term(name: &str, position: usize) -> Result<Term, TermParseError> {
    let comb = match name {
        "I" => Some(Combinator::I),
        "T" => Some(Combinator::T),
        "B" => Some(Combinator::B),
        "C" => Some(Combinator::C),
        "W" => Some(Combinator::W),
        "S" => Some(Combinator::S),
        "Phi" => Some(Combinator::Phi),
        _ => {
            if let Some(digits) = name.strip_prefix('B') {
                if !digits.is_empty() && digits.chars().all(|c| c.is_ascii_digit()) {
                    let n: u32 = digits.parse().map_err(|_| TermParseError {
                        position,
                        message: format!("compositor index out of range in `{}`", name),
                    })?;
                    if n == 0 {
                        return Err(TermParseError {
                            position,
                            message: "compositor index must be at least 1".into(),
                        });
                    }
                    Some(Combinator::Bn(n))
                } else {
                    None
                }
            } else {
                None
            }
        }
    };
    Ok(match comb {
        Some(c) => Term::Combinator(c),
        None => Term::Constant(name.to_string()),
    })
}

impl FromStr for Term {
    type Err = TermParseError;

    fn from_str(text: &str) -> Result<Term, TermParseError> {
        let tokens = tokenize_term(text);
        let mut pos = 0usize;
        let term = parse_spine(&tokens, &mut pos, text.len())?;
        if pos != tokens.len() {
            let (at, _) = tokens[pos];
            return Err(TermParseError {
                position: at,
                message: "unmatched `)`".into(),
            });
        }
        Ok(term)
    }
}

fn parse_spine(
    tokens: &[(usize, TermToken)],
    pos: &mut usize,
    end: usize,
) -> Result<Term, TermParseError> {
    let mut items: Vec<Term> = Vec::new();
    while let Some((at, tok)) = tokens.get(*pos) {
        match tok {
            TermToken::Atom(name) => {
                *pos += 1;
                items.push(atom_term(name, *at)?);
            }
            TermToken::Open => {
                *pos += 1;
                let inner = parse_spine(tokens, pos, end)?;
                match tokens.get(*pos) {
                    Some((_, TermToken::Close)) => *pos += 1,
                    _ => {
                        return Err(TermParseError {
                            position: *at,
                            message: "unbalanced `(`".into(),
                        })
                    }
                }
                items.push(inner);
            }
            TermToken::Close => break,
        }
    }
    let mut iter = items.into_iter();
    let head = iter.next().ok_or_else(|| TermParseError {
        position: tokens.get(*pos).map(|(at, _)| *at).unwrap_or(end),
        message: "empty term".into(),
    })?;
    Ok(Term::apps(head, iter))
}

impl fmt::Display for Term {
    /// Minimal-parenthesis left-associative rendering: `(f a) b` prints
    /// as `f a b`, argument applications are parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Constant(name) => write!(f, "{}", name),
            Term::Combinator(c) => write!(f, "{}", c),
            Term::App(fun, arg) => {
                write!(f, "{} ", fun)?;
                match arg.as_ref() {
                    Term::App(_, _) => write!(f, "({})", arg),
                    _ => write!(f, "{}", arg),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn t(s: &str) -> Term {
        s.parse().unwrap()
    }

    #[test]
    fn redex_needs_full_order() {
        assert!(!t("B f g").is_redex());
        assert!(t("B f g a").is_redex());
        assert!(!Term::constant("m").is_redex());
        assert!(!t("m a b c d").is_redex());
        assert!(t("B2 f g a b").is_redex());
        assert!(!t("B2 f g a").is_redex());
        assert!(t("Phi c f g a").is_redex());
    }

    #[test]
    fn single_step_contracts_leftmost_outermost() {
        assert_eq!(t("T m (T b r)").reduce_leftmost_outermost(), Some(t("(T b r) m")));
        assert_eq!(t("I f").reduce_leftmost_outermost(), Some(t("f")));
        assert_eq!(
            t("B3 cause C r c b m").reduce_leftmost_outermost(),
            Some(t("cause (C r c b) m"))
        );
        // constants never head a redex; reduction descends into arguments
        assert_eq!(t("f (I a) (I b)").reduce_leftmost_outermost(), Some(t("f a (I b)")));
        assert_eq!(t("r b m").reduce_leftmost_outermost(), None);
    }

    #[test]
    fn reduction_rules() {
        for (input, expected) in [
            ("I f", "f"),
            ("T a f", "f a"),
            ("B f g a", "f (g a)"),
            ("C f g a", "f a g"),
            ("W f a", "f a a"),
            ("S f g a", "f a (g a)"),
            ("Phi c f g a", "c (f a) (g a)"),
            ("B1 f g a", "f (g a)"),
            ("B2 f g a b", "f (g a b)"),
            ("B3 f g a b c", "f (g a b c)"),
        ] {
            let (nf, stats) = t(input).evaluate(100);
            assert!(stats.normal_form, "{} did not normalize", input);
            assert_eq!(nf, t(expected), "{}", input);
        }
    }

    #[test]
    fn transitive_clause_normalizes_to_pas() {
        let (nf, stats) = t("T m (T b r)").evaluate(100);
        assert_eq!(nf, t("r b m"));
        assert!(stats.normal_form);
        assert!(stats.combinator_free);
    }

    #[test]
    fn stuck_permutator_is_redex_free_but_not_combinator_free() {
        let (nf, stats) = t("C I I b").evaluate(100);
        assert_eq!(nf, t("b I"));
        assert!(stats.normal_form);
        assert!(!stats.combinator_free);
        assert_eq!(stats.steps, 2);
    }

    #[test]
    fn duplicator_self_application_hits_the_step_limit() {
        let (nf, stats) = t("W W W").evaluate(500);
        assert_eq!(stats.steps, 500);
        assert!(!stats.normal_form);
        assert!(!stats.combinator_free);
        assert_eq!(nf, t("W W W"));
    }

    #[test]
    fn coordination_distributor() {
        let (nf, stats) = t("Phi conj f g a").evaluate(100);
        assert_eq!(nf, t("conj (f a) (g a)"));
        assert!(stats.normal_form);
    }

    #[test]
    fn causative_chain_step_count() {
        let mut trace = Vec::new();
        let (nf, stats) =
            t("T m (B (T b) (T c) (B3 cause C r))").evaluate_traced(100, |s| trace.push(s.to_string()));
        assert_eq!(
            trace,
            vec![
                "B (T b) (T c) (B3 cause C r) m",
                "T b (T c (B3 cause C r)) m",
                "T c (B3 cause C r) b m",
                "B3 cause C r c b m",
                "cause (C r c b) m",
                "cause (r b c) m",
            ]
        );
        assert_eq!(stats.steps, 6);
        assert!(stats.combinator_free);
        assert_eq!(nf.to_string(), "cause (r b c) m");
    }

    #[test]
    fn exact_step_budget_still_reports_normal_form() {
        let (nf, stats) = t("I x").evaluate(1);
        assert_eq!(nf, t("x"));
        assert!(stats.normal_form);
        assert_eq!(stats.steps, 1);
    }

    #[test]
    fn combinator_free_checks() {
        assert!(t("cause (r b c) m").combinator_free());
        assert!(!t("b I").combinator_free());
        assert!(Term::constant("r").combinator_free());
    }

    #[test]
    fn b1_reduces_like_b_but_is_distinct() {
        assert_ne!(t("B1"), t("B"));
        for spine in ["f g a", "f g a b", "(f x) g a"] {
            let with_b = format!("B {}", spine).parse::<Term>().unwrap();
            let with_b1 = format!("B1 {}", spine).parse::<Term>().unwrap();
            assert_eq!(with_b.evaluate(100).0, with_b1.evaluate(100).0, "{}", spine);
        }
    }

    #[test]
    fn after_normal_form_no_node_is_a_redex() {
        fn no_redex_anywhere(t: &Term) -> bool {
            !t.is_redex()
                && match t {
                    Term::App(f, a) => no_redex_anywhere(f) && no_redex_anywhere(a),
                    _ => true,
                }
        }
        let (nf, stats) = t("T m (B (T b) (T c) (B3 cause C r))").evaluate(1000);
        assert!(stats.normal_form);
        assert!(no_redex_anywhere(&nf));
    }

    #[test]
    fn parse_is_left_associative() {
        assert_eq!(
            t("T m (T b r)"),
            Term::app(
                Term::app(Term::Combinator(Combinator::T), Term::constant("m")),
                Term::app(
                    Term::app(Term::Combinator(Combinator::T), Term::constant("b")),
                    Term::constant("r")
                )
            )
        );
        assert_eq!(t("f a b"), t("(f a) b"));
    }

    #[test]
    fn parse_errors_carry_positions() {
        let err = "(f".parse::<Term>().unwrap_err();
        assert_eq!(err.position, 0);
        let err = "f )".parse::<Term>().unwrap_err();
        assert_eq!(err.position, 2);
        assert!("".parse::<Term>().is_err());
        assert!("()".parse::<Term>().is_err());
        assert!("B0 x".parse::<Term>().is_err());
    }

    #[test]
    fn format_round_trips_canonical_text() {
        for text in [
            "r b m",
            "cause (r b c) m",
            "T m (B (T b) (T c) (B3 cause C r))",
            "Phi but (B (T adam) k) (B (T çocuk) topla)",
        ] {
            assert_eq!(t(text).to_string(), text);
        }
    }

    fn arb_term() -> impl Strategy<Value = Term> {
        let leaf = prop_oneof![
            "[a-z][a-z0-9]{0,3}".prop_map(Term::Constant),
            prop_oneof![
                Just(Combinator::I),
                Just(Combinator::T),
                Just(Combinator::B),
                Just(Combinator::C),
                Just(Combinator::W),
                Just(Combinator::S),
                Just(Combinator::Phi),
                (1u32..4).prop_map(Combinator::Bn),
            ]
            .prop_map(Term::Combinator),
        ];
        leaf.prop_recursive(5, 32, 2, |inner| {
            (inner.clone(), inner).prop_map(|(f, a)| Term::app(f, a))
        })
    }

    proptest! {
        #[test]
        fn display_parse_round_trip(term in arb_term()) {
            let printed = term.to_string();
            let reparsed: Term = printed.parse().unwrap();
            prop_assert_eq!(reparsed, term);
        }
    }
}
