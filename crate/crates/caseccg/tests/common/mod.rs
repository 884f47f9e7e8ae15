//! Shared test support: an independent brute-force reducer and a seeded
//! random term generator.
#![allow(dead_code)] // each test binary uses a different subset
//!
//! The oracle deliberately differs from the library evaluator in both
//! strategy and formulation: it walks rightmost-innermost and contracts
//! only exactly-saturated combinator nodes. Since none of the operators
//! here discard arguments, any reduction strategy terminates whenever one
//! does, and all terminating strategies meet in the same normal form —
//! which makes cross-checking the two reducers a meaningful test.

use caseccg::comb::{Combinator, Term};
use rand::Rng;

fn spine(t: &Term) -> (&Term, Vec<&Term>) {
    let mut args = Vec::new();
    let mut head = t;
    while let Term::App(f, a) = head {
        args.push(a.as_ref());
        head = f;
    }
    args.reverse();
    (head, args)
}

/// Rewrite a node that is a combinator applied to exactly its order.
fn contract_exact(t: &Term) -> Option<Term> {
    let (head, args) = spine(t);
    let c = match head {
        Term::Combinator(c) => *c,
        _ => return None,
    };
    if args.len() != c.order() {
        return None;
    }
    let app = |f: Term, a: Term| Term::App(Box::new(f), Box::new(a));
    Some(match c {
        Combinator::I => args[0].clone(),
        Combinator::T => app(args[1].clone(), args[0].clone()),
        Combinator::B => app(args[0].clone(), app(args[1].clone(), args[2].clone())),
        Combinator::C => app(app(args[0].clone(), args[2].clone()), args[1].clone()),
        Combinator::W => app(app(args[0].clone(), args[1].clone()), args[1].clone()),
        Combinator::S => app(
            app(args[0].clone(), args[2].clone()),
            app(args[1].clone(), args[2].clone()),
        ),
        Combinator::Phi => app(
            app(args[0].clone(), app(args[1].clone(), args[3].clone())),
            app(args[2].clone(), args[3].clone()),
        ),
        Combinator::Bn(n) => {
            let mut inner = args[1].clone();
            for a in &args[2..2 + n as usize] {
                inner = app(inner, (*a).clone());
            }
            app(args[0].clone(), inner)
        }
    })
}

/// Contract one redex, rightmost-innermost first.
fn oracle_step(t: &Term) -> Option<Term> {
    if let Term::App(f, a) = t {
        if let Some(a2) = oracle_step(a) {
            return Some(Term::App(f.clone(), Box::new(a2)));
        }
        if let Some(f2) = oracle_step(f) {
            return Some(Term::App(Box::new(f2), a.clone()));
        }
    }
    contract_exact(t)
}

/// Reduce to normal form by arbitrary-redex steps, or `None` when the
/// step cap runs out.
pub fn oracle_normal_form(t: &Term, cap: usize) -> Option<Term> {
    let mut current = t.clone();
    let mut steps = 0usize;
    while let Some(next) = oracle_step(&current) {
        if steps >= cap {
            return None;
        }
        current = next;
        steps += 1;
    }
    Some(current)
}

const CONSTANTS: [&str; 6] = ["a", "b", "c", "f", "g", "h"];
const SAFE_COMBINATORS: [Combinator; 5] = [
    Combinator::I,
    Combinator::T,
    Combinator::B,
    Combinator::C,
    Combinator::S,
];

fn random_leaf(rng: &mut impl Rng) -> Term {
    if rng.gen_bool(0.5) {
        Term::Constant(CONSTANTS[rng.gen_range(0..CONSTANTS.len())].to_string())
    } else {
        Term::Combinator(SAFE_COMBINATORS[rng.gen_range(0..SAFE_COMBINATORS.len())])
    }
}

fn random_tree(rng: &mut impl Rng, depth: usize) -> Term {
    if depth == 0 || rng.gen_bool(0.3) {
        random_leaf(rng)
    } else {
        Term::App(
            Box::new(random_tree(rng, depth - 1)),
            Box::new(random_tree(rng, depth - 1)),
        )
    }
}

fn contains_constant(t: &Term) -> bool {
    match t {
        Term::Constant(_) => true,
        Term::Combinator(_) => false,
        Term::App(f, a) => contains_constant(f) || contains_constant(a),
    }
}

/// A random term of depth at most 6 over the duplicator-free operator
/// set, guaranteed to contain at least one constant.
pub fn random_safe_term(rng: &mut impl Rng) -> Term {
    loop {
        let t = random_tree(rng, 6);
        if contains_constant(&t) {
            return t;
        }
    }
}
