//! Printing back to the surface syntax.
//!
//! Binders are named after their depth (`x0` outermost), free indices print as
//! `v0, v1, …`. Constants print as `c()` so they never collide with variables.

use super::{Formula, Signature, Term};

pub fn print_formula(sig: &Signature, phi: &Formula) -> String {
    let mut out = String::new();
    write_formula(sig, phi, 0, 0, &mut out);
    out
}

/// Prints a term in which every variable is free.
pub fn print_term(sig: &Signature, t: &Term) -> String {
    let mut out = String::new();
    write_term(sig, t, 0, &mut out);
    out
}

fn write_term(sig: &Signature, t: &Term, depth: usize, out: &mut String) {
    match t {
        Term::Var(n) if *n < depth => out.push_str(&format!("x{}", depth - 1 - n)),
        Term::Var(n) => out.push_str(&format!("v{}", n - depth)),
        Term::App(f, args) => {
            out.push_str(&sig.functions[*f].name);
            write_args(sig, args, depth, out);
        }
    }
}

fn write_args(sig: &Signature, args: &[Term], depth: usize, out: &mut String) {
    out.push('(');
    for (i, a) in args.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        write_term(sig, a, depth, out);
    }
    out.push(')');
}

// Binding strength: quantifiers 0, -> 1, \/ 2, /\ 3, prefix and atoms 4.
fn write_formula(sig: &Signature, phi: &Formula, depth: usize, ctx: u8, out: &mut String) {
    let wrap = |own: u8, out: &mut String, body: &dyn Fn(&mut String)| {
        if ctx > own {
            out.push('(');
            body(out);
            out.push(')');
        } else {
            body(out);
        }
    };
    match phi {
        Formula::Bot => out.push_str("false"),
        Formula::Atom(r, args) => {
            out.push_str(&sig.relations[*r].name);
            if !args.is_empty() {
                write_args(sig, args, depth, out);
            }
        }
        Formula::Imp(a, b) if **b == Formula::Bot => {
            out.push('~');
            write_formula(sig, a, depth, 4, out);
        }
        Formula::Imp(a, b) => wrap(1, out, &|out| {
            write_formula(sig, a, depth, 2, out);
            out.push_str(" -> ");
            write_formula(sig, b, depth, 1, out);
        }),
        Formula::Or(a, b) => wrap(2, out, &|out| {
            write_formula(sig, a, depth, 2, out);
            out.push_str(" \\/ ");
            write_formula(sig, b, depth, 3, out);
        }),
        Formula::And(a, b) => wrap(3, out, &|out| {
            write_formula(sig, a, depth, 3, out);
            out.push_str(" /\\ ");
            write_formula(sig, b, depth, 4, out);
        }),
        Formula::All(b) | Formula::Ex(b) => wrap(0, out, &|out| {
            let q = if matches!(phi, Formula::All(_)) { "forall" } else { "exists" };
            out.push_str(&format!("{q} x{depth}. "));
            write_formula(sig, b, depth + 1, 0, out);
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::super::{enum_formulas, parse_formula_open};
    use super::*;

    #[test]
    fn fixed_names() {
        let sig = Signature::from_pairs(&[("c", 0)], &[("P", 1), ("Q", 0)]);
        assert_eq!(print_formula(&sig, &Formula::all(Formula::atom(0, vec![Term::Var(0)]))), "forall x0. P(x0)");
        assert_eq!(print_formula(&sig, &Formula::Bot), "false");
        assert_eq!(print_formula(&sig, &Formula::not(Formula::atom(1, vec![]))), "~Q");
        assert_eq!(print_formula(&sig, &Formula::atom(0, vec![Term::constant(0)])), "P(c())");
    }

    #[test]
    fn roundtrip_exhaustive_small() {
        let sig = Signature::from_pairs(&[("c", 0), ("f", 1)], &[("P", 1), ("R", 2), ("Q", 0)]);
        for phi in enum_formulas(&sig, 6) {
            let text = print_formula(&sig, &phi);
            let back = parse_formula_open(&text, &sig, &["v0", "v1"]).unwrap_or_else(|e| panic!("{text}: {e}"));
            assert_eq!(back, phi, "{text}");
        }
    }
}
