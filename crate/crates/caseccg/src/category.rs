//! CCG category algebra: atoms with genotype indices and agreement,
//! functors over three slash directions, directional unification, and the
//! genotype licensing predicate.
//!
//! The neutral slash `|` is a lexical operator only; parsing instantiates
//! it to `/` or `\` wherever a rule consumes it.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Person/number agreement on NP atoms. Absent fields unify with anything;
/// present fields unify only when equal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Agr {
    pub person: Option<u8>,
    pub number: Option<Number>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Number {
    Singular,
    Plural,
}

impl Agr {
    pub fn none() -> Agr {
        Agr::default()
    }

    pub fn is_empty(&self) -> bool {
        self.person.is_none() && self.number.is_none()
    }

    pub fn unify(&self, other: &Agr) -> Option<Agr> {
        Some(Agr {
            person: unify_field(self.person, other.person)?,
            number: unify_field(self.number, other.number)?,
        })
    }
}

fn unify_field<T: Copy + Eq>(a: Option<T>, b: Option<T>) -> Option<Option<T>> {
    match (a, b) {
        (None, x) | (x, None) => Some(x),
        (Some(x), Some(y)) if x == y => Some(Some(x)),
        _ => None,
    }
}

/// Slash directionality. `Neutral` unifies with either concrete direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Slash {
    Forward,
    Backward,
    Neutral,
}

impl Slash {
    pub fn unify(self, other: Slash) -> Option<Slash> {
        match (self, other) {
            (a, b) if a == b => Some(a),
            (Slash::Neutral, d) | (d, Slash::Neutral) => Some(d),
            _ => None,
        }
    }

    fn glyph(self) -> char {
        match self {
            Slash::Forward => '/',
            Slash::Backward => '\\',
            Slash::Neutral => '|',
        }
    }
}

/// Normal-form derivation label carried by every chart edge: `OT` for
/// lexical and application/coordination outputs, `FC`/`BC` for outputs of
/// forward/backward composition (crossing included).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Label {
    OT,
    FC,
    BC,
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::OT => write!(f, "OT"),
            Label::FC => write!(f, "FC"),
            Label::BC => write!(f, "BC"),
        }
    }
}

/// A syntactic category: atomic `S`, `N`, `NPₙ` (genotype optional,
/// agreement optional), or a functor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Category {
    S,
    N,
    Np {
        /// Argument rank: 1 primary, 2 secondary, 3 tertiary, 5 genitive.
        /// Absent means underspecified, to be bound by unification.
        genotype: Option<u32>,
        agr: Agr,
    },
    Functor {
        result: Box<Category>,
        slash: Slash,
        argument: Box<Category>,
    },
}

impl Category {
    pub fn np(genotype: u32) -> Category {
        Category::Np {
            genotype: Some(genotype),
            agr: Agr::none(),
        }
    }

    pub fn np_underspecified() -> Category {
        Category::Np {
            genotype: None,
            agr: Agr::none(),
        }
    }

    pub fn functor(result: Category, slash: Slash, argument: Category) -> Category {
        Category::Functor {
            result: Box::new(result),
            slash,
            argument: Box::new(argument),
        }
    }

    /// Number of outermost functor layers.
    pub fn arity(&self) -> usize {
        let mut n = 0;
        let mut cur = self;
        while let Category::Functor { result, .. } = cur {
            n += 1;
            cur = result;
        }
        n
    }

    /// Functor layers from the outermost argument inwards, plus the core
    /// result atom.
    pub fn layers(&self) -> (Vec<(Slash, &Category)>, &Category) {
        let mut layers = Vec::new();
        let mut cur = self;
        while let Category::Functor {
            result,
            slash,
            argument,
        } = cur
        {
            layers.push((*slash, argument.as_ref()));
            cur = result;
        }
        (layers, cur)
    }
}

/// Unify two categories, instantiating neutral slashes, binding
/// underspecified genotype indices, and merging agreement. Returns the
/// common instance both sides denote, or `None` when they are
/// incompatible. Symmetric; never introduces a neutral slash that neither
/// side had.
pub fn unify(a: &Category, b: &Category) -> Option<Category> {
    match (a, b) {
        (Category::S, Category::S) => Some(Category::S),
        (Category::N, Category::N) => Some(Category::N),
        (
            Category::Np {
                genotype: g1,
                agr: a1,
            },
            Category::Np {
                genotype: g2,
                agr: a2,
            },
        ) => Some(Category::Np {
            genotype: unify_field(*g1, *g2)?,
            agr: a1.unify(a2)?,
        }),
        (
            Category::Functor {
                result: r1,
                slash: s1,
                argument: x1,
            },
            Category::Functor {
                result: r2,
                slash: s2,
                argument: x2,
            },
        ) => Some(Category::Functor {
            result: Box::new(unify(r1, r2)?),
            slash: s1.unify(*s2)?,
            argument: Box::new(unify(x1, x2)?),
        }),
        _ => None,
    }
}

/// True iff any NP atom with genotype index `< k` occurs anywhere in the
/// category. A genotype-underspecified NP counts as potentially below `k`
/// for `k ≥ 2`: the conservative reading can reject but never wrongly
/// accept an application.
pub fn contains_genotype_below(c: &Category, k: u32) -> bool {
    match c {
        Category::S | Category::N => false,
        Category::Np { genotype, .. } => match genotype {
            Some(i) => *i < k,
            None => k >= 2,
        },
        Category::Functor {
            result, argument, ..
        } => contains_genotype_below(result, k) || contains_genotype_below(argument, k),
    }
}

/// Error produced by [`Category::from_str`], with a character position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("category syntax error at {position}: {message}")]
pub struct CategoryParseError {
    pub position: usize,
    pub message: String,
}

struct CatParser<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl<'a> CatParser<'a> {
    fn new(text: &'a str) -> Self {
        CatParser {
            chars: text.char_indices().collect(),
            pos: 0,
            text,
        }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|(_, c)| *c)
    }

    fn offset(&self) -> usize {
        self.chars
            .get(self.pos)
            .map(|(o, _)| *o)
            .unwrap_or(self.text.len())
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek();
        if c.is_some() {
            self.pos += 1;
        }
        c
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn err(&self, message: impl Into<String>) -> CategoryParseError {
        CategoryParseError {
            position: self.offset(),
            message: message.into(),
        }
    }

    fn category(&mut self) -> Result<Category, CategoryParseError> {
        let mut left = self.part()?;
        loop {
            self.skip_ws();
            let slash = match self.peek() {
                Some('/') => Slash::Forward,
                Some('\\') => Slash::Backward,
                Some('|') => Slash::Neutral,
                _ => return Ok(left),
            };
            self.bump();
            let right = self.part()?;
            left = Category::functor(left, slash, right);
        }
    }

    fn part(&mut self) -> Result<Category, CategoryParseError> {
        self.skip_ws();
        match self.peek() {
            Some('(') => {
                self.bump();
                let inner = self.category()?;
                self.skip_ws();
                if self.peek() != Some(')') {
                    return Err(self.err("unbalanced `(`"));
                }
                self.bump();
                Ok(inner)
            }
            Some(c) if c.is_alphabetic() => self.atom(),
            _ => Err(self.err("expected an atom or `(`")),
        }
    }

    fn atom(&mut self) -> Result<Category, CategoryParseError> {
        let mut name = String::new();
        while matches!(self.peek(), Some(c) if c.is_alphabetic()) {
            name.push(self.bump().unwrap());
        }
        match name.as_str() {
            "S" => Ok(Category::S),
            "N" => Ok(Category::N),
            "NP" => {
                let mut genotype = None;
                let mut digits = String::new();
                while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
                    digits.push(self.bump().unwrap());
                }
                if !digits.is_empty() {
                    let n: u32 = digits
                        .parse()
                        .map_err(|_| self.err("genotype index out of range"))?;
                    if n == 0 {
                        return Err(self.err("genotype index must be at least 1"));
                    }
                    genotype = Some(n);
                }
                let agr = if self.peek() == Some('[') {
                    self.bump();
                    let agr = self.agr()?;
                    if self.peek() != Some(']') {
                        return Err(self.err("expected `]`"));
                    }
                    self.bump();
                    agr
                } else {
                    Agr::none()
                };
                Ok(Category::Np { genotype, agr })
            }
            "" => Err(self.err("expected an atom")),
            other => Err(CategoryParseError {
                position: self.offset().saturating_sub(other.len()),
                message: format!("unknown atom `{}`", other),
            }),
        }
    }

    fn agr(&mut self) -> Result<Agr, CategoryParseError> {
        let mut agr = Agr::none();
        if let Some(c) = self.peek() {
            if ('1'..='3').contains(&c) {
                self.bump();
                agr.person = Some(c as u8 - b'0');
            }
        }
        if self.peek() == Some('s') || self.peek() == Some('p') {
            let mut word = String::new();
            word.push(self.bump().unwrap());
            if let Some(c) = self.peek() {
                word.push(c);
            }
            match word.as_str() {
                "sg" => {
                    self.bump();
                    agr.number = Some(Number::Singular);
                }
                "pl" => {
                    self.bump();
                    agr.number = Some(Number::Plural);
                }
                _ => return Err(self.err("expected `sg` or `pl`")),
            }
        }
        if agr.is_empty() {
            return Err(self.err("empty agreement bracket"));
        }
        Ok(agr)
    }
}

impl FromStr for Category {
    type Err = CategoryParseError;

    fn from_str(text: &str) -> Result<Category, CategoryParseError> {
        let mut p = CatParser::new(text);
        let cat = p.category()?;
        p.skip_ws();
        if p.pos != p.chars.len() {
            return Err(p.err("trailing input"));
        }
        Ok(cat)
    }
}

impl fmt::Display for Category {
    /// Canonical text. Nesting under an identical slash direction prints
    /// flat (`S|NP1|NP2`); a result under a different direction keeps its
    /// parentheses (`(S|NP1)/(S|NP1|NP3)`).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Category::S => write!(f, "S"),
            Category::N => write!(f, "N"),
            Category::Np { genotype, agr } => {
                write!(f, "NP")?;
                if let Some(n) = genotype {
                    write!(f, "{}", n)?;
                }
                if !agr.is_empty() {
                    write!(f, "[")?;
                    if let Some(p) = agr.person {
                        write!(f, "{}", p)?;
                    }
                    match agr.number {
                        Some(Number::Singular) => write!(f, "sg")?,
                        Some(Number::Plural) => write!(f, "pl")?,
                        None => {}
                    }
                    write!(f, "]")?;
                }
                Ok(())
            }
            Category::Functor {
                result,
                slash,
                argument,
            } => {
                let flat_result = match result.as_ref() {
                    Category::Functor { slash: s2, .. } => s2 == slash,
                    _ => true,
                };
                if flat_result {
                    write!(f, "{}", result)?;
                } else {
                    write!(f, "({})", result)?;
                }
                write!(f, "{}", slash.glyph())?;
                match argument.as_ref() {
                    Category::Functor { .. } => write!(f, "({})", argument),
                    _ => write!(f, "{}", argument),
                }
            }
        }
    }
}
