//! Exact arithmetic: fields, ranks, Smith forms, roots of unity and
//! cyclotomic bookkeeping.

pub mod charpoly;
pub mod field;
pub mod linalg;
pub mod roots;
pub mod snf;

pub use charpoly::{factor_by_root_orders, Factor, FactoredCharPoly, FieldTag};
pub use field::{Field, Fq, QOmega, Rationals};
pub use linalg::{kernel, rank, Matrix};
pub use roots::{consensus, find_cyclotomic_prime, Consensus, RootOfUnityContext};
pub use snf::{smith_normal_form, SmithForm};
