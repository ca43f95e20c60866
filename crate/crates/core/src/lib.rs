//! Twisted group algebras K_rho G over finite fields: exact construction,
//! deciders for the characterized ring properties (absence of nilpotents,
//! n-weak regularity, strong regularity, xi-N), constructive witnesses,
//! and independent brute-force oracles.

pub mod algebra;
pub mod cocycle;
pub mod decide;
pub mod field;
pub mod group;
pub mod matrix;
pub mod oracle;

pub use algebra::{restrict_equation, Algebra, AlgebraElement, AlgebraError};
pub use cocycle::{
    CocycleError, FactorSystem, MissingRoot, Rescaling, UnitRescaleOutcome, ValidationReport,
};
pub use decide::{
    decide_equivalences, decide_group_ring_n_weak, decide_n_weakly_regular, decide_no_nilpotents,
    decide_xi_n, n_weak_witness, nilpotent_witness, regularity_witness, strong_regularity_witness,
    sufficiently_closed, v_basis, witness_char_p, witness_quaternion, witness_unit_commutation,
    xi_n_witness, ClosureReport, Conditions, DecideError, Decision, EquivalenceReport, Property,
    Witness, WitnessKind,
};
pub use field::{FieldElem, FieldError, FieldSpec};
pub use group::{Group, GroupClass, GroupElem, GroupError};
pub use matrix::PrimeMatrix;
pub use oracle::{nilpotent_search, property_scan, NilpotentSearch, OracleConfig, ScanOutcome, ScanProperty};
