//! Lexicon machinery: the category-assignment schema for argument-encoding
//! case markers, causative entry generation, the line-oriented lexicon file
//! format, and morphological token analysis.
//!
//! A case marker encoding argument `n` receives three categories per
//! governing verb category `Tₐ`: the lower type `NPₙ` with semantics `I`,
//! and the two higher types `Tᵣ/Tₐ` and `Tᵣ\Tₐ` where `Tᵣ` is `Tₐ` with
//! the `NPₙ` argument removed. The higher-type semantics is `T` when `NPₙ`
//! is outermost in `Tₐ` and a `B`-chained `T` when it sits `k` positions
//! in.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::category::{unify, Agr, Category, Label, Slash};
use crate::comb::{Combinator, Term};

/// How an entry attaches: free words enter the chart, suffixes fold over
/// the stem's assignments during token analysis.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Attach {
    Word,
    Suffix,
}

/// One surface form paired with a category and a semantic term.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LexEntry {
    pub surface: String,
    pub category: Category,
    pub semantics: Term,
    pub attach: Attach,
}

/// The verb categories of the grammar; the schema consults it to decide
/// which categories govern a given argument rank.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerbInventory {
    entries: Vec<Category>,
}

impl VerbInventory {
    pub fn new() -> VerbInventory {
        VerbInventory::default()
    }

    pub fn add(&mut self, category: Category) {
        if !self.entries.contains(&category) {
            self.entries.push(category);
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = &Category> {
        self.entries.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

impl FromIterator<Category> for VerbInventory {
    fn from_iter<T: IntoIterator<Item = Category>>(iter: T) -> Self {
        let mut inv = VerbInventory::new();
        for c in iter {
            inv.add(c);
        }
        inv
    }
}

/// Shape of a schema-generated assignment: `Lower` carries `I`, `Shifted`
/// carries `T`, `ShiftedComposed(k)` carries `T` wrapped in `k`
/// compositions (`B B T` for k = 1).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum HigherTypeKind {
    Lower,
    Shifted,
    ShiftedComposed(u32),
}

impl fmt::Display for HigherTypeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HigherTypeKind::Lower => write!(f, "lower"),
            HigherTypeKind::Shifted => write!(f, "shifted"),
            HigherTypeKind::ShiftedComposed(k) => write!(f, "shifted+composed({})", k),
        }
    }
}

/// One (category, semantics, kind) triple produced by the schema.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ArgumentCategory {
    pub category: Category,
    pub semantics: Term,
    pub kind: HigherTypeKind,
}

/// Genotype indices of the atomic NP arguments of a category, outermost
/// first.
fn np_argument_ranks(c: &Category) -> Vec<Option<u32>> {
    let (layers, _) = c.layers();
    layers
        .iter()
        .filter_map(|(_, arg)| match arg {
            Category::Np { genotype, .. } => Some(*genotype),
            _ => None,
        })
        .collect()
}

/// True iff `c`'s highest-ranked NP argument is exactly `n`.
fn governs(c: &Category, n: u32) -> bool {
    let ranks: Vec<u32> = np_argument_ranks(c).into_iter().flatten().collect();
    ranks.iter().copied().max() == Some(n)
}

/// Remove the outermost `NPₙ` argument layer from `c`, returning the
/// remainder and how many argument positions preceded it.
fn remove_np_argument(c: &Category, n: u32) -> Option<(Category, u32)> {
    let (layers, core) = c.layers();
    let k = layers.iter().position(|(_, arg)| {
        matches!(arg, Category::Np { genotype: Some(g), .. } if *g == n)
    })?;
    let mut rebuilt = core.clone();
    for (slash, arg) in layers.iter().enumerate().rev().filter(|(i, _)| *i != k).map(|(_, l)| l) {
        rebuilt = Category::functor(rebuilt, *slash, (*arg).clone());
    }
    Some((rebuilt, k as u32))
}

/// `T` wrapped in `k` compositions: `T`, `B B T`, `B B (B B T)`, ...
fn shift_semantics(k: u32) -> Term {
    let mut t = Term::Combinator(Combinator::T);
    for _ in 0..k {
        t = Term::apps(
            Term::Combinator(Combinator::B),
            [Term::Combinator(Combinator::B), t],
        );
    }
    t
}

/// All category/semantics assignments available to an argument of rank
/// `n`: the lower type plus a forward and a backward higher type per
/// governing inventory category. Empty when nothing in the inventory
/// governs `NPₙ` (a lexicon-authoring diagnostic, not a failure).
pub fn argument_categories(n: u32, inventory: &VerbInventory) -> Vec<ArgumentCategory> {
    let governors: Vec<&Category> = inventory.iter().filter(|c| governs(c, n)).collect();
    if governors.is_empty() {
        return Vec::new();
    }
    let mut out = vec![ArgumentCategory {
        category: Category::np(n),
        semantics: Term::Combinator(Combinator::I),
        kind: HigherTypeKind::Lower,
    }];
    for t_a in governors {
        let (t_r, k) = match remove_np_argument(t_a, n) {
            Some(x) => x,
            None => continue,
        };
        let kind = if k == 0 {
            HigherTypeKind::Shifted
        } else {
            HigherTypeKind::ShiftedComposed(k)
        };
        for slash in [Slash::Forward, Slash::Backward] {
            out.push(ArgumentCategory {
                category: Category::functor(t_r.clone(), slash, t_a.clone()),
                semantics: shift_semantics(k),
                kind,
            });
        }
    }
    out
}

/// Suffix entries for a case marker encoding argument `n`: one entry of
/// category `C\N` per allomorph and per schema assignment `C`.
pub fn case_suffix_entries(
    case_name: &str,
    n: u32,
    allomorphs: &[String],
    inventory: &VerbInventory,
) -> Vec<LexEntry> {
    let _ = case_name;
    let mut out = Vec::new();
    for assignment in argument_categories(n, inventory) {
        for allomorph in allomorphs {
            out.push(LexEntry {
                surface: allomorph.clone(),
                category: Category::functor(
                    assignment.category.clone(),
                    Slash::Backward,
                    Category::N,
                ),
                semantics: assignment.semantics.clone(),
                attach: Attach::Suffix,
            });
        }
    }
    out
}

/// Schema, loading and analysis errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexiconError {
    #[error("line {line}: {message}")]
    Line { line: usize, message: String },
    #[error("causative base must be a verb category ending in S over NP arguments, got `{0}`")]
    BadCausativeBase(Category),
}

/// Causative suffix entry for a verb category `base` with `a` NP arguments
/// and highest genotype `g`: category `(base|NP_{g+1})\base`, semantics
/// `Bᵃ⁺¹ cause C`.
pub fn causative_entry(surface: &str, base: &Category) -> Result<LexEntry, LexiconError> {
    let (layers, core) = base.layers();
    let ranks: Vec<u32> = np_argument_ranks(base).into_iter().flatten().collect();
    if *core != Category::S || layers.is_empty() || ranks.len() != layers.len() {
        return Err(LexiconError::BadCausativeBase(base.clone()));
    }
    let arity = ranks.len() as u32;
    let highest = ranks.iter().copied().max().unwrap();
    let derived = Category::functor(base.clone(), Slash::Neutral, Category::np(highest + 1));
    let semantics = Term::apps(
        Term::Combinator(Combinator::Bn(arity + 1)),
        [Term::constant("cause"), Term::Combinator(Combinator::C)],
    );
    Ok(LexEntry {
        surface: surface.to_string(),
        category: Category::functor(derived, Slash::Backward, base.clone()),
        semantics,
        attach: Attach::Suffix,
    })
}

/// A `case` declaration retained for schema inspection.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseDecl {
    pub name: String,
    pub rank: u32,
    pub allomorphs: Vec<String>,
}

/// A loaded lexicon: word and suffix entries keyed by surface form,
/// coordinators, and the verb inventory. Immutable after load; lookups
/// are safe to share across threads.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    words: HashMap<String, Vec<LexEntry>>,
    suffixes: HashMap<String, Vec<LexEntry>>,
    conjunctions: HashMap<String, Term>,
    inventory: VerbInventory,
    case_decls: Vec<CaseDecl>,
    warnings: Vec<String>,
}

/// One lexical assignment for a surface token. Every assignment is
/// lexical or type shifted, hence labelled `OT`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    pub category: Category,
    pub semantics: Term,
    pub label: Label,
}

/// Token analysis errors name the offending segment.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalyzeError {
    #[error("unknown stem `{0}`")]
    UnknownStem(String),
    #[error("unknown suffix `-{0}`")]
    UnknownSuffix(String),
    #[error("suffix `-{0}` does not attach to any reading of its stem")]
    SuffixCategoryMismatch(String),
}

impl Lexicon {
    pub fn new() -> Lexicon {
        Lexicon::default()
    }

    pub fn inventory(&self) -> &VerbInventory {
        &self.inventory
    }

    pub fn case_decls(&self) -> &[CaseDecl] {
        &self.case_decls
    }

    /// Warnings accumulated while loading (duplicate entries, case
    /// declarations with no governor).
    pub fn warnings(&self) -> &[String] {
        &self.warnings
    }

    pub fn coordinator(&self, surface: &str) -> Option<&Term> {
        self.conjunctions.get(surface)
    }

    pub fn add_word_entry(&mut self, entry: LexEntry) {
        push_entry(&mut self.words, &mut self.warnings, entry);
    }

    pub fn add_suffix_entry(&mut self, entry: LexEntry) {
        push_entry(&mut self.suffixes, &mut self.warnings, entry);
    }

    pub fn add_inventory(&mut self, category: Category) {
        self.inventory.add(category);
    }

    pub fn add_conjunction(&mut self, surface: &str, semantics: Term) {
        self.conjunctions.insert(surface.to_string(), semantics);
    }

    /// Analyze a hyphen-segmented token (`stem(-suffix)*`) into its
    /// lexical assignments. Each suffix folds over the current readings
    /// by backward application at the morphological level, leaving the
    /// applied term unevaluated (`T b`, not `b`'s shifted meaning).
    /// Identity suffixes (`X\X : I`, tense and the like) leave the
    /// reading untouched. Bare nouns additionally receive the zero-suffix
    /// expansions declared in the lexicon.
    pub fn analyze_token(&self, token: &str) -> Result<Vec<Assignment>, AnalyzeError> {
        let mut segments = token.split('-');
        let stem = segments.next().unwrap_or_default();
        let seeds = self
            .words
            .get(stem)
            .ok_or_else(|| AnalyzeError::UnknownStem(stem.to_string()))?;
        let mut current: Vec<(Category, Term)> = seeds
            .iter()
            .map(|e| (e.category.clone(), e.semantics.clone()))
            .collect();
        let mut bare = true;
        for segment in segments {
            bare = false;
            let entries = self
                .suffixes
                .get(segment)
                .ok_or_else(|| AnalyzeError::UnknownSuffix(segment.to_string()))?;
            let next = fold_suffix(&current, entries);
            if next.is_empty() {
                return Err(AnalyzeError::SuffixCategoryMismatch(segment.to_string()));
            }
            current = next;
        }
        if bare {
            if let Some(zero) = self.suffixes.get("") {
                let expanded = fold_suffix(&current, zero);
                for reading in expanded {
                    if !current.contains(&reading) {
                        current.push(reading);
                    }
                }
            }
        }
        Ok(current
            .into_iter()
            .map(|(category, semantics)| Assignment {
                category,
                semantics,
                label: Label::OT,
            })
            .collect())
    }
}

fn push_entry(
    map: &mut HashMap<String, Vec<LexEntry>>,
    warnings: &mut Vec<String>,
    entry: LexEntry,
) {
    let bucket = map.entry(entry.surface.clone()).or_default();
    if bucket.contains(&entry) {
        warnings.push(format!(
            "duplicate entry for `{}` : {} : {}",
            entry.surface, entry.category, entry.semantics
        ));
        return;
    }
    bucket.push(entry);
}

/// True for suffixes of shape `X\X : I`: they carry no meaning of their
/// own and leave the stem's reading unchanged.
fn is_identity_suffix(entry: &LexEntry) -> bool {
    match &entry.category {
        Category::Functor {
            result, argument, ..
        } => result == argument && entry.semantics == Term::Combinator(Combinator::I),
        _ => false,
    }
}

fn fold_suffix(current: &[(Category, Term)], entries: &[LexEntry]) -> Vec<(Category, Term)> {
    let mut next: Vec<(Category, Term)> = Vec::new();
    for (cat, term) in current {
        for entry in entries {
            let (result, slash, argument) = match &entry.category {
                Category::Functor {
                    result,
                    slash,
                    argument,
                } => (result, slash, argument),
                _ => continue,
            };
            if slash.unify(Slash::Backward).is_none() {
                continue;
            }
            if unify(argument, cat).is_none() {
                continue;
            }
            let reading = if is_identity_suffix(entry) {
                (cat.clone(), term.clone())
            } else {
                (
                    (**result).clone(),
                    Term::app(entry.semantics.clone(), term.clone()),
                )
            };
            if !next.contains(&reading) {
                next.push(reading);
            }
        }
    }
    next
}

impl FromStr for Lexicon {
    type Err = LexiconError;

    /// Load a lexicon from its line-oriented text format. `#` starts a
    /// comment. Lines are `keyword head : field : field`:
    ///
    /// ```text
    /// atom-verb oku : S|NP1|NP2 : r      # verb; category joins the inventory
    /// noun kitap : b                     # noun stem, category N
    /// case ACC : 2 : ı,i,u,ü             # schema-expanded case suffix
    /// suffix u : (NP[3sg]\NP5)\N : poss  # explicit suffix entry
    /// conj ama : but                     # coordinator
    /// caus t : S|NP1|NP2                 # causative suffix over a base verb
    /// ```
    ///
    /// `verb` is accepted as an alias for `atom-verb`. In a `case`
    /// allomorph list, `-` denotes the zero allomorph expanded at lookup
    /// on bare noun stems.
    fn from_str(text: &str) -> Result<Lexicon, LexiconError> {
        enum Decl {
            Verb(String, Category, Term),
            Noun(String, Term),
            Case(String, u32, Vec<String>),
            Suffix(String, Category, Term),
            Conj(String, Term),
            Caus(String, Category),
        }

        let mut decls: Vec<(usize, Decl)> = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split(':').map(str::trim).collect();
            let head: Vec<&str> = fields[0].split_whitespace().collect();
            if head.len() != 2 {
                return Err(err_line(line_no, "expected `keyword surface : ...`"));
            }
            let (keyword, surface) = (head[0], head[1].to_string());
            let expect = |n: usize| -> Result<(), LexiconError> {
                if fields.len() != n {
                    Err(err_line(
                        line_no,
                        format!("`{}` takes {} `:`-separated fields", keyword, n),
                    ))
                } else {
                    Ok(())
                }
            };
            let decl = match keyword {
                "atom-verb" | "verb" => {
                    expect(3)?;
                    let category = parse_cat(line_no, fields[1])?;
                    let term = parse_term(line_no, fields[2])?;
                    validate_verb_category(line_no, &category)?;
                    Decl::Verb(surface, category, term)
                }
                "noun" => {
                    expect(2)?;
                    Decl::Noun(surface, parse_term(line_no, fields[1])?)
                }
                "case" => {
                    expect(3)?;
                    let rank: u32 = fields[1].parse().map_err(|_| {
                        err_line(line_no, format!("bad genotype rank `{}`", fields[1]))
                    })?;
                    if rank == 0 {
                        return Err(err_line(line_no, "genotype rank must be at least 1"));
                    }
                    let allomorphs: Vec<String> = fields[2]
                        .split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(|s| if s == "-" { String::new() } else { s.to_string() })
                        .collect();
                    if allomorphs.is_empty() {
                        return Err(err_line(line_no, "empty allomorph list"));
                    }
                    Decl::Case(surface, rank, allomorphs)
                }
                "suffix" => {
                    expect(3)?;
                    let category = parse_cat(line_no, fields[1])?;
                    match &category {
                        Category::Functor { slash, .. }
                            if slash.unify(Slash::Backward).is_some() => {}
                        _ => {
                            return Err(err_line(
                                line_no,
                                "suffix category must be a backward-looking functor",
                            ))
                        }
                    }
                    Decl::Suffix(surface, category, parse_term(line_no, fields[2])?)
                }
                "conj" => {
                    expect(2)?;
                    Decl::Conj(surface, parse_term(line_no, fields[1])?)
                }
                "caus" => {
                    expect(2)?;
                    Decl::Caus(surface, parse_cat(line_no, fields[1])?)
                }
                other => {
                    return Err(err_line(line_no, format!("unknown keyword `{}`", other)))
                }
            };
            decls.push((line_no, decl));
        }

        let mut lex = Lexicon::new();
        // First pass: words and the inventory, so that case schemas see
        // every governor regardless of declaration order.
        for (line_no, decl) in &decls {
            match decl {
                Decl::Verb(surface, category, term) => {
                    lex.add_word_entry(LexEntry {
                        surface: surface.clone(),
                        category: category.clone(),
                        semantics: term.clone(),
                        attach: Attach::Word,
                    });
                    lex.add_inventory(category.clone());
                }
                Decl::Noun(surface, term) => {
                    lex.add_word_entry(LexEntry {
                        surface: surface.clone(),
                        category: Category::N,
                        semantics: term.clone(),
                        attach: Attach::Word,
                    });
                }
                Decl::Caus(surface, base) => {
                    let entry = causative_entry(surface, base).map_err(|e| match e {
                        LexiconError::BadCausativeBase(c) => err_line(
                            *line_no,
                            format!("causative base `{}` is not a verb category", c),
                        ),
                        other => other,
                    })?;
                    if let Category::Functor { result, .. } = &entry.category {
                        lex.add_inventory((**result).clone());
                    }
                    lex.add_suffix_entry(entry);
                }
                _ => {}
            }
        }
        // Second pass: schema expansion and remaining entries.
        for (_line_no, decl) in &decls {
            match decl {
                Decl::Case(name, rank, allomorphs) => {
                    let entries = case_suffix_entries(name, *rank, allomorphs, &lex.inventory);
                    if entries.is_empty() {
                        lex.warnings.push(format!(
                            "case {}: no inventory category governs NP{}",
                            name, rank
                        ));
                    }
                    for e in entries {
                        lex.add_suffix_entry(e);
                    }
                    lex.case_decls.push(CaseDecl {
                        name: name.clone(),
                        rank: *rank,
                        allomorphs: allomorphs.clone(),
                    });
                }
                Decl::Suffix(surface, category, term) => {
                    lex.add_suffix_entry(LexEntry {
                        surface: surface.clone(),
                        category: category.clone(),
                        semantics: term.clone(),
                        attach: Attach::Suffix,
                    });
                }
                Decl::Conj(surface, term) => {
                    lex.add_conjunction(surface, term.clone());
                }
                _ => {}
            }
        }
        Ok(lex)
    }
}

fn err_line(line: usize, message: impl Into<String>) -> LexiconError {
    LexiconError::Line {
        line,
        message: message.into(),
    }
}

fn parse_cat(line: usize, text: &str) -> Result<Category, LexiconError> {
    text.parse()
        .map_err(|e: crate::category::CategoryParseError| err_line(line, e.to_string()))
}

fn parse_term(line: usize, text: &str) -> Result<Term, LexiconError> {
    text.parse()
        .map_err(|e: crate::comb::TermParseError| err_line(line, e.to_string()))
}

/// Verb categories end in S and take only NP arguments.
fn validate_verb_category(line: usize, c: &Category) -> Result<(), LexiconError> {
    let (layers, core) = c.layers();
    let all_np = layers
        .iter()
        .all(|(_, arg)| matches!(arg, Category::Np { .. }));
    if *core != Category::S || layers.is_empty() || !all_np {
        return Err(err_line(
            line,
            format!("`{}` is not a verb category (S over NP arguments)", c),
        ));
    }
    Ok(())
}

/// Convenience used across tests and the schema inspector: an NP with an
/// agreement restriction.
pub fn np_with_agr(genotype: Option<u32>, agr: Agr) -> Category {
    Category::Np { genotype, agr }
}
