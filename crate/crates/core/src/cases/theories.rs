//! The Frobenius semi-algebra (FS) and bialgebra (BA) rewriting systems over
//! one-sorted signatures with `m : 2 -> 1`, `d : 1 -> 2`, `u : 0 -> 1` and
//! `e : 1 -> 0`.

use crate::dpo::RewriteRule;
use crate::signature::{OpType, Signature};
use crate::term::parse;

use super::measure::Component;

pub const MULT: &str = "m";
pub const COMULT: &str = "d";
pub const UNIT: &str = "u";
pub const COUNIT: &str = "e";

/// `(name, lhs, rhs)`.
pub const FS_RULES: [(&str, &str, &str); 4] = [
    ("FS1", "(m + id(1)) ; m", "(id(1) + m) ; m"),
    ("FS2", "d ; (d + id(1))", "d ; (id(1) + d)"),
    ("FS3", "(d + id(1)) ; (id(1) + m)", "m ; d"),
    ("FS4", "(id(1) + d) ; (m + id(1))", "m ; d"),
];

/// `(name, lhs, rhs)`.
pub const BA_RULES: [(&str, &str, &str); 10] = [
    ("BA1", "(m + id(1)) ; m", "(id(1) + m) ; m"),
    ("BA2", "d ; (d + id(1))", "d ; (id(1) + d)"),
    ("BA3", "(u + id(1)) ; m", "id(1)"),
    ("BA4", "(id(1) + u) ; m", "id(1)"),
    ("BA5", "d ; (e + id(1))", "id(1)"),
    ("BA6", "d ; (id(1) + e)", "id(1)"),
    ("BA7", "u ; d", "u + u"),
    ("BA8", "m ; e", "e + e"),
    ("BA9", "m ; d", "(d + d) ; (id(1) + sym(1, 1) + id(1)) ; (m + m)"),
    ("BA10", "u ; e", "id(0)"),
];

pub fn fs_signature() -> Signature {
    Signature::one_sorted()
        .with_op(MULT, OpType::plain(2, 1))
        .and_then(|s| s.with_op(COMULT, OpType::plain(1, 2)))
        .expect("distinct labels")
}

pub fn ba_signature() -> Signature {
    fs_signature()
        .with_op(UNIT, OpType::plain(0, 1))
        .and_then(|s| s.with_op(COUNIT, OpType::plain(1, 0)))
        .expect("distinct labels")
}

fn build(table: &[(&str, &str, &str)], sig: &Signature) -> Vec<RewriteRule> {
    table
        .iter()
        .map(|(name, l, r)| {
            let l = parse(l, sig).expect("built-in rule parses");
            let r = parse(r, sig).expect("built-in rule parses");
            RewriteRule::from_terms(*name, &l, &r, sig).expect("built-in rule is well typed")
        })
        .collect()
}

pub fn fs_rules() -> Vec<RewriteRule> {
    build(&FS_RULES, &fs_signature())
}

pub fn ba_rules() -> Vec<RewriteRule> {
    build(&BA_RULES, &ba_signature())
}

/// The counterexample host `(d + d) ; (id(1) + sym(1, 1) + id(1)) ; (m + m)`.
pub const NON_CONFLUENCE_HOST: &str = "(d + d) ; (id(1) + sym(1, 1) + id(1)) ; (m + m)";

/// The component of the FS measure `(D, L)` each FS rule strictly decreases.
pub fn fs_expected_decrease(rule: &str) -> Option<Component> {
    match rule {
        "FS1" | "FS2" => Some(Component::L),
        "FS3" | "FS4" => Some(Component::D),
        _ => None,
    }
}

/// The component of the BA measure `(U, M, #m, #d, L)` each BA rule strictly
/// decreases.
pub fn ba_expected_decrease(rule: &str) -> Option<Component> {
    match rule {
        "BA1" | "BA2" => Some(Component::L),
        "BA3" | "BA4" | "BA5" | "BA6" | "BA10" => Some(Component::U),
        "BA7" => Some(Component::DeltaCount),
        "BA8" => Some(Component::MuCount),
        "BA9" => Some(Component::M),
        _ => None,
    }
}
