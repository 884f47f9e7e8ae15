//! Predicate-argument structures: the combinator-free semantic normal
//! form of a derivation, predicate applied to its arguments with the
//! primary term outermost.

use std::fmt;

use thiserror::Error;

use crate::comb::Term;
use crate::parser::Derivation;

/// A combinator-free applicative term. Rendering is left-associative with
/// minimal parentheses, e.g. `cause (r b c) m`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PasTerm(Term);

impl PasTerm {
    pub fn term(&self) -> &Term {
        &self.0
    }

    pub fn into_term(self) -> Term {
        self.0
    }
}

impl fmt::Display for PasTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PasError {
    /// The semantics is redex-free but a combinator survives (the `b I`
    /// pattern); this signals a lexicon bug rather than a valid reading.
    #[error("reduction left combinators behind: {term}")]
    ResidualCombinators { term: Term },
    #[error("reduction did not terminate within {steps} steps")]
    NonTerminating { steps: usize },
}

/// Evaluate a derivation's combinatory form to its predicate-argument
/// structure. Succeeds only when normal order evaluation terminates and
/// strips every combinator.
pub fn derive_pas(derivation: &Derivation, step_limit: usize) -> Result<PasTerm, PasError> {
    pas_of_term(derivation.semantics(), step_limit)
}

/// As [`derive_pas`], for a bare combinatory form.
pub fn pas_of_term(term: &Term, step_limit: usize) -> Result<PasTerm, PasError> {
    let (reduced, stats) = term.evaluate(step_limit);
    if !stats.normal_form {
        return Err(PasError::NonTerminating { steps: stats.steps });
    }
    if !stats.combinator_free {
        return Err(PasError::ResidualCombinators { term: reduced });
    }
    Ok(PasTerm(reduced))
}

/// Structural equality of predicate-argument structures.
pub fn pas_equal(a: &PasTerm, b: &PasTerm) -> bool {
    a == b
}

pub fn format_pas(p: &PasTerm) -> String {
    p.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pas(s: &str) -> PasTerm {
        pas_of_term(&s.parse().unwrap(), 1000).unwrap()
    }

    #[test]
    fn transitive_and_causative_forms() {
        assert_eq!(pas("T m (T b r)").to_string(), "r b m");
        assert_eq!(
            pas("T m (B (T b) (T c) (B3 cause C r))").to_string(),
            "cause (r b c) m"
        );
    }

    #[test]
    fn equality_is_structural() {
        assert!(pas_equal(&pas("r b m"), &pas("r b m")));
        assert!(!pas_equal(&pas("r b m"), &pas("r m b")));
        assert!(pas_equal(&pas("B (T m) (T b) r"), &pas("T m (T b r)")));
    }

    #[test]
    fn residual_combinators_are_an_error() {
        let t: Term = "C I I b".parse().unwrap();
        assert!(matches!(
            pas_of_term(&t, 1000),
            Err(PasError::ResidualCombinators { .. })
        ));
    }

    #[test]
    fn divergence_is_an_error() {
        let t: Term = "W W W".parse().unwrap();
        assert!(matches!(
            pas_of_term(&t, 200),
            Err(PasError::NonTerminating { steps: 200 })
        ));
    }

    #[test]
    fn rendering_round_trips_through_the_term_grammar() {
        for text in ["r b m", "cause (r b c) m", "but (k masa m) (topla masa c)"] {
            let p = pas(text);
            assert_eq!(p.to_string(), text);
            let reparsed: Term = p.to_string().parse().unwrap();
            assert_eq!(&reparsed, p.term());
        }
    }
}
