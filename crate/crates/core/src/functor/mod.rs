//! Polynomial functor calculus on ab and, through abelianization, on gr.

mod cross;
mod expr;
mod recollement;
mod symmod;
mod tabulated;

pub use cross::{adjacent_swap, collapse, cross_effect, cross_effect_subspace, degree, CrossEffect};
pub use expr::{FunctorExpr, Variance};
pub use recollement::{
    check_recollement_units, tensor_swap, unit_kernel_cross_effect_dim, unit_to_beta, AlphaFunctor,
    BetaFunctor, RecollementReport, Unit,
};
pub use symmod::{permutations, Character, SymModule};
pub use tabulated::{
    ab_generators, check_functoriality, ext_basis, injection, projection, sym_basis, ExprFunctor,
    KernelFunctor, NatTransformation, SharedFunctor, TabulatedFunctor,
};
