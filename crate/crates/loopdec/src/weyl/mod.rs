//! Exact polynomial verification layer: the `E_7` reflection computation
//! over `F_p` and the `F_5[f_4, f_8]` non-splitting check.

pub mod e7;
pub mod fi;
pub mod poly;

pub use e7::{
    generator_candidates, invariant_generator_oracle, reflection_rho, tau_valuation,
    verify_appendix_table, verify_generator_formulas, AppendixReport, Complement,
    GeneratorReport, IdentityCheck, OracleReport, SymbolTable, WeylError,
};
pub use fi::{verify_fi_no_splitting, FiReport, FiSubstitution};
pub use poly::{elem_sym, inv_mod, PolyError, Polynomial};
