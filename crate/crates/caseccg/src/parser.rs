//! Labelled CKY chart parsing over the six combinatory rules: forward and
//! backward application, composition, and their crossing variants.
//!
//! Every edge carries a derivation label. An `FC` edge (output of forward
//! composition, crossing included) may not serve as the primary functor of
//! a forward rule; symmetrically for `BC` and the backward rules. The gate
//! removes the redundant derivations that free composition would otherwise
//! add, leaving one normal-form derivation per reading.
//!
//! Rules of application additionally enforce the genotype licensing check:
//! a bare `NPₖ` argument is accepted only when the functor's result
//! category carries no term with a genotype index below `k`.

use std::fmt;

use thiserror::Error;

use crate::category::{contains_genotype_below, unify, Category, Label, Slash};
use crate::comb::{Combinator, Term};
use crate::lexicon::{AnalyzeError, Assignment, Lexicon};

/// The rule that produced an edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleName {
    Lex,
    FwdApp,
    BwdApp,
    FwdComp,
    BwdComp,
    FwdCross,
    BwdCross,
    Coord,
}

impl fmt::Display for RuleName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            RuleName::Lex => "lex",
            RuleName::FwdApp => ">",
            RuleName::BwdApp => "<",
            RuleName::FwdComp => ">B",
            RuleName::BwdComp => "<B",
            RuleName::FwdCross => ">Bx",
            RuleName::BwdCross => "<Bx",
            RuleName::Coord => "∧",
        };
        write!(f, "{}", name)
    }
}

/// A chart item covering `span` with a category, label and semantics.
/// Derived edges own clones of their children, so an edge is its whole
/// derivation tree.
#[derive(Debug, Clone)]
pub struct Edge {
    pub span: (usize, usize),
    pub category: Category,
    pub label: Label,
    pub semantics: Term,
    pub rule: RuleName,
    /// Surface form, for lexical edges.
    pub surface: Option<String>,
    pub children: Vec<Edge>,
}

impl Edge {
    pub fn lexical(span: (usize, usize), surface: &str, assignment: &Assignment) -> Edge {
        Edge {
            span,
            category: assignment.category.clone(),
            label: assignment.label,
            semantics: assignment.semantics.clone(),
            rule: RuleName::Lex,
            surface: Some(surface.to_string()),
            children: Vec::new(),
        }
    }

    fn derived(
        span: (usize, usize),
        category: Category,
        label: Label,
        semantics: Term,
        rule: RuleName,
        children: Vec<Edge>,
    ) -> Edge {
        Edge {
            span,
            category,
            label,
            semantics,
            rule,
            surface: None,
            children,
        }
    }

    /// Chart identity: edges with equal span, category, label and
    /// semantics are merged regardless of how they were derived.
    pub fn same_item(&self, other: &Edge) -> bool {
        self.span == other.span
            && self.category == other.category
            && self.label == other.label
            && self.semantics == other.semantics
    }
}

/// A coordinator token occupying one position between two conjuncts.
#[derive(Debug, Clone)]
pub struct ConjEdge {
    pub span: (usize, usize),
    pub surface: String,
    pub semantics: Term,
}

/// Reasons a coordination attempt yields nothing.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoordinationError {
    #[error("conjunct categories do not match")]
    CategoryMismatch,
    #[error("coordination of arity-{0} categories is not supported")]
    UnsupportedArity(usize),
}

/// When to admit the bare lower-type (`NPₖ`) lexical assignments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum LowerTypeMode {
    /// Higher types first; lower types only if the first pass finds no
    /// goal derivation.
    #[default]
    OnFail,
    Always,
    Never,
}

#[derive(Debug, Clone)]
pub struct ParseOptions {
    pub goal: Category,
    pub lower_type_mode: LowerTypeMode,
    pub max_edges: usize,
}

impl Default for ParseOptions {
    fn default() -> ParseOptions {
        ParseOptions {
            goal: Category::S,
            lower_type_mode: LowerTypeMode::default(),
            max_edges: 20_000,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error(transparent)]
    Analyze(#[from] AnalyzeError),
    #[error("chart exceeded {max_edges} edges")]
    ResourceExhausted { max_edges: usize },
}

/// Combine two adjacent edges by every applicable rule instance.
///
/// Application consumes the functor's principal slash (neutral slashes
/// instantiate to the required direction) and yields an `OT` edge with
/// semantics `f a`. Composition requires the secondary functor's
/// principal slash to instantiate compatibly and yields `B f g` labelled
/// `FC` (forward) or `BC` (backward). Inapplicability yields the empty
/// set.
pub fn combine(left: &Edge, right: &Edge) -> Vec<Edge> {
    let span = (left.span.0, right.span.1);
    let mut out: Vec<Edge> = Vec::new();
    let kids = || vec![left.clone(), right.clone()];

    // Forward rules: primary functor on the left, gated against FC.
    if left.label != Label::FC {
        if let Category::Functor {
            result,
            slash,
            argument,
        } = &left.category
        {
            if slash.unify(Slash::Forward).is_some() {
                // > : X/Y : f   Y : a   =>  X : f a
                if let Some(arg) = unify(argument, &right.category) {
                    if application_licensed(result, &arg) {
                        out.push(Edge::derived(
                            span,
                            (**result).clone(),
                            Label::OT,
                            Term::app(left.semantics.clone(), right.semantics.clone()),
                            RuleName::FwdApp,
                            kids(),
                        ));
                    }
                }
                if let Category::Functor {
                    result: g_result,
                    slash: g_slash,
                    argument: g_argument,
                } = &right.category
                {
                    let sem = compose(&left.semantics, &right.semantics);
                    // >B : X/Y : f   Y/Z : g  =>  X/Z : B f g
                    if g_slash.unify(Slash::Forward).is_some()
                        && unify(argument, g_result).is_some()
                    {
                        out.push(Edge::derived(
                            span,
                            Category::functor(
                                (**result).clone(),
                                Slash::Forward,
                                (**g_argument).clone(),
                            ),
                            Label::FC,
                            sem.clone(),
                            RuleName::FwdComp,
                            kids(),
                        ));
                    }
                    // >Bx : X/Y : f   Y\Z : g  =>  X\Z : B f g
                    if g_slash.unify(Slash::Backward).is_some()
                        && unify(argument, g_result).is_some()
                    {
                        out.push(Edge::derived(
                            span,
                            Category::functor(
                                (**result).clone(),
                                Slash::Backward,
                                (**g_argument).clone(),
                            ),
                            Label::FC,
                            sem,
                            RuleName::FwdCross,
                            kids(),
                        ));
                    }
                }
            }
        }
    }

    // Backward rules: primary functor on the right, gated against BC.
    if right.label != Label::BC {
        if let Category::Functor {
            result,
            slash,
            argument,
        } = &right.category
        {
            if slash.unify(Slash::Backward).is_some() {
                // < : Y : a   X\Y : f  =>  X : f a
                if let Some(arg) = unify(argument, &left.category) {
                    if application_licensed(result, &arg) {
                        out.push(Edge::derived(
                            span,
                            (**result).clone(),
                            Label::OT,
                            Term::app(right.semantics.clone(), left.semantics.clone()),
                            RuleName::BwdApp,
                            kids(),
                        ));
                    }
                }
                if let Category::Functor {
                    result: g_result,
                    slash: g_slash,
                    argument: g_argument,
                } = &left.category
                {
                    let sem = compose(&right.semantics, &left.semantics);
                    // <B : Y\Z : g   X\Y : f  =>  X\Z : B f g
                    if g_slash.unify(Slash::Backward).is_some()
                        && unify(argument, g_result).is_some()
                    {
                        out.push(Edge::derived(
                            span,
                            Category::functor(
                                (**result).clone(),
                                Slash::Backward,
                                (**g_argument).clone(),
                            ),
                            Label::BC,
                            sem.clone(),
                            RuleName::BwdComp,
                            kids(),
                        ));
                    }
                    // <Bx : Y/Z : g   X\Y : f  =>  X/Z : B f g
                    if g_slash.unify(Slash::Forward).is_some()
                        && unify(argument, g_result).is_some()
                    {
                        out.push(Edge::derived(
                            span,
                            Category::functor(
                                (**result).clone(),
                                Slash::Forward,
                                (**g_argument).clone(),
                            ),
                            Label::BC,
                            sem,
                            RuleName::BwdCross,
                            kids(),
                        ));
                    }
                }
            }
        }
    }

    out
}

fn compose(f: &Term, g: &Term) -> Term {
    Term::apps(
        Term::Combinator(Combinator::B),
        [f.clone(), g.clone()],
    )
}

/// A bare NPₖ may only be the argument of an application whose functor
/// result carries no genotype index below k.
fn application_licensed(result: &Category, unified_argument: &Category) -> bool {
    match unified_argument {
        Category::Np { genotype, .. } => match genotype {
            Some(k) => !contains_genotype_below(result, *k),
            // No rank recoverable from either side: reject conservatively.
            None => false,
        },
        _ => true,
    }
}

/// Coordinate two like-category conjuncts around a coordinator. The
/// output resets the label to `OT`. Semantics is `conj p q` for atomic
/// conjuncts and `Φ conj f g` for one-place functors; higher arities are
/// not supported.
pub fn coordinate(
    left: &Edge,
    conj: &ConjEdge,
    right: &Edge,
) -> Result<Edge, CoordinationError> {
    let common =
        unify(&left.category, &right.category).ok_or(CoordinationError::CategoryMismatch)?;
    let semantics = match common.arity() {
        0 => Term::apps(
            conj.semantics.clone(),
            [left.semantics.clone(), right.semantics.clone()],
        ),
        1 => Term::apps(
            Term::Combinator(Combinator::Phi),
            [
                conj.semantics.clone(),
                left.semantics.clone(),
                right.semantics.clone(),
            ],
        ),
        n => return Err(CoordinationError::UnsupportedArity(n)),
    };
    Ok(Edge::derived(
        (left.span.0, right.span.1),
        common,
        Label::OT,
        semantics,
        RuleName::Coord,
        vec![left.clone(), right.clone()],
    ))
}

/// The completed chart for one pass over a token sequence.
#[derive(Debug, Clone)]
pub struct Chart {
    n: usize,
    cells: Vec<Vec<Edge>>,
    pub edge_count: usize,
}

impl Chart {
    fn cell_index(&self, i: usize, j: usize) -> usize {
        i * (self.n + 1) + j
    }

    pub fn cell(&self, i: usize, j: usize) -> &[Edge] {
        &self.cells[self.cell_index(i, j)]
    }

    pub fn edges(&self) -> impl Iterator<Item = &Edge> {
        self.cells.iter().flatten()
    }

    fn insert(&mut self, edge: Edge, max_edges: usize) -> Result<(), ParseError> {
        let idx = self.cell_index(edge.span.0, edge.span.1);
        if self.cells[idx].iter().any(|e| e.same_item(&edge)) {
            return Ok(());
        }
        self.cells[idx].push(edge);
        self.edge_count += 1;
        if self.edge_count > max_edges {
            return Err(ParseError::ResourceExhausted { max_edges });
        }
        Ok(())
    }

    /// Full-span edges whose category matches the goal.
    pub fn goal_edges(&self, goal: &Category) -> Vec<&Edge> {
        self.cell(0, self.n)
            .iter()
            .filter(|e| unify(goal, &e.category).is_some())
            .collect()
    }
}

/// A goal derivation: the root edge owns the whole backpointer tree.
#[derive(Debug, Clone)]
pub struct Derivation {
    pub root: Edge,
}

impl Derivation {
    /// The combinatory form of the derivation, unevaluated.
    pub fn semantics(&self) -> &Term {
        &self.root.semantics
    }

    /// One line per rule application, bottom-up: span, rule, category,
    /// label, semantics, and the surface form for lexical edges.
    pub fn pretty(&self) -> String {
        let mut lines = Vec::new();
        fn walk(edge: &Edge, lines: &mut Vec<String>) {
            for child in &edge.children {
                walk(child, lines);
            }
            let surface = edge
                .surface
                .as_deref()
                .map(|s| format!("  {}", s))
                .unwrap_or_default();
            lines.push(format!(
                "{:>4}  {}-{}  {} -{}  : {}{}",
                edge.rule.to_string(),
                edge.span.0,
                edge.span.1,
                edge.category,
                edge.label,
                edge.semantics,
                surface
            ));
        }
        walk(&self.root, &mut lines);
        lines.join("\n")
    }
}

fn build_chart(
    tokens: &[&str],
    lexicon: &Lexicon,
    opts: &ParseOptions,
    include_lower: bool,
) -> Result<(Chart, Vec<ConjEdge>), ParseError> {
    let n = tokens.len();
    let mut chart = Chart {
        n,
        cells: vec![Vec::new(); (n + 1) * (n + 1)],
        edge_count: 0,
    };
    let mut conjs: Vec<Option<ConjEdge>> = vec![None; n];

    for (i, token) in tokens.iter().enumerate() {
        if let Some(term) = lexicon.coordinator(token) {
            conjs[i] = Some(ConjEdge {
                span: (i, i + 1),
                surface: token.to_string(),
                semantics: term.clone(),
            });
            continue;
        }
        for assignment in lexicon.analyze_token(token)? {
            if !include_lower && matches!(assignment.category, Category::Np { .. }) {
                continue;
            }
            chart.insert(Edge::lexical((i, i + 1), token, &assignment), opts.max_edges)?;
        }
    }

    for width in 2..=n {
        for start in 0..=(n - width) {
            let end = start + width;
            let mut additions: Vec<Edge> = Vec::new();
            for split in (start + 1)..end {
                for left in chart.cell(start, split) {
                    for right in chart.cell(split, end) {
                        additions.extend(combine(left, right));
                    }
                }
            }
            // ternary coordination around a conjunction token
            for conj in conjs.iter().flatten() {
                if conj.span.0 <= start || conj.span.1 >= end {
                    continue;
                }
                for left in chart.cell(start, conj.span.0) {
                    for right in chart.cell(conj.span.1, end) {
                        if let Ok(edge) = coordinate(left, conj, right) {
                            additions.push(edge);
                        }
                    }
                }
            }
            for edge in additions {
                chart.insert(edge, opts.max_edges)?;
            }
        }
    }

    let conj_edges = conjs.into_iter().flatten().collect();
    Ok((chart, conj_edges))
}

/// Parse a token sequence and return all goal derivations, applying the
/// lower-type policy from `opts`.
pub fn parse(
    tokens: &[&str],
    lexicon: &Lexicon,
    opts: &ParseOptions,
) -> Result<Vec<Derivation>, ParseError> {
    parse_with_chart(tokens, lexicon, opts).map(|(_, d)| d)
}

/// Like [`parse`] but also returns the chart of the pass that produced
/// the result (the second pass, under `OnFail`, when the first finds
/// nothing).
pub fn parse_with_chart(
    tokens: &[&str],
    lexicon: &Lexicon,
    opts: &ParseOptions,
) -> Result<(Chart, Vec<Derivation>), ParseError> {
    let run = |include_lower: bool| -> Result<(Chart, Vec<Derivation>), ParseError> {
        let (chart, _) = build_chart(tokens, lexicon, opts, include_lower)?;
        let derivations = chart
            .goal_edges(&opts.goal)
            .into_iter()
            .map(|e| Derivation { root: e.clone() })
            .collect();
        Ok((chart, derivations))
    };
    match opts.lower_type_mode {
        LowerTypeMode::Never => run(false),
        LowerTypeMode::Always => run(true),
        LowerTypeMode::OnFail => {
            let (chart, derivations) = run(false)?;
            if derivations.is_empty() {
                run(true)
            } else {
                Ok((chart, derivations))
            }
        }
    }
}
