//! Exact search over small real algebras: why there is no three-dimensional
//! field over the reals, why commuting `i` and `j` create zero divisors, and
//! certification of candidate multiplication tables.

pub mod derivation;
pub mod division;
pub mod linalg;
pub mod rules;
pub mod symbolic;
pub mod table;

pub use derivation::{
    ji_equals_k_zero_divisors, triplet_case_analysis, triplet_general_obstruction, Conclusion, ContradictionReport,
    DerivationStep, Equation, ReplayFailure, Verdict,
};
pub use division::{division_check, DivisionVerdict};
pub use rules::{AlgExpr, Element, ProductRules};
pub use symbolic::SymPoly;
pub use table::{bicomplex_table, ji_plus_k_table, quaternion_table, StructureTable, TableJson};
