//! Executable first-order logic and finite model theory: de Bruijn syntax,
//! Tarski semantics over finite models, a natural-deduction checker, Henkin
//! environments and the downward Löwenheim–Skolem pipeline, finite instances
//! of choice and drinker principles, and finite Heyting algebras.

pub mod syntax;
pub mod deduction;
pub mod fleet;
pub mod gen;
pub mod henkin;
pub mod heyting;
pub mod principles;
pub mod semantics;

mod par;
