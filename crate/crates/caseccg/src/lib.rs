//! A categorial-grammar toolkit for case-marked, freely word-ordered
//! languages.
//!
//! Grammatical functions are read off case morphology rather than word
//! positions. Case suffixes receive their categories from a single
//! assignment schema: the marker for argument rank `n` pairs the lower
//! type `NPₙ : I` with higher types `Tᵣ/Tₐ` and `Tᵣ\Tₐ : T` built from
//! every verb category `Tₐ` governing rank `n`. A labelled chart parser
//! (applications, compositions and their crossing variants, with
//! normal-form labels blocking redundant rule sequences) turns token
//! sequences into derivations, and a normal order combinator reducer
//! strips the derivation's semantics down to its predicate-argument
//! structure.
//!
//! ```
//! use caseccg::lexicon::Lexicon;
//! use caseccg::parser::{parse, ParseOptions};
//! use caseccg::pas::derive_pas;
//!
//! let lexicon: Lexicon = "
//!     atom-verb oku : S|NP1|NP2 : r
//!     atom-verb uyu : S|NP1 : uyu
//!     noun Mehmet : m
//!     noun kitab : b
//!     case NOM : 1 : -
//!     case ACC : 2 : ı
//!     suffix du : (S|NP1|NP2)\\(S|NP1|NP2) : I
//! ".parse().unwrap();
//!
//! let opts = ParseOptions::default();
//! for sentence in [
//!     ["Mehmet", "kitab-ı", "oku-du"],
//!     ["kitab-ı", "oku-du", "Mehmet"],
//!     ["oku-du", "Mehmet", "kitab-ı"],
//! ] {
//!     let derivations = parse(&sentence, &lexicon, &opts).unwrap();
//!     assert_eq!(derivations.len(), 1);
//!     let pas = derive_pas(&derivations[0], 10_000).unwrap();
//!     assert_eq!(pas.to_string(), "r b m");
//! }
//! ```

pub mod category;
pub mod cli;
pub mod comb;
pub mod lexicon;
pub mod parser;
pub mod pas;

pub use category::{contains_genotype_below, unify, Agr, Category, Label, Slash};
pub use comb::{Combinator, ReductionStats, Term};
pub use lexicon::{argument_categories, case_suffix_entries, causative_entry, Lexicon};
pub use parser::{combine, coordinate, parse, parse_with_chart, Derivation, ParseOptions};
pub use pas::{derive_pas, format_pas, pas_equal, PasTerm};
