//! Coalition profitability and formability over weighted argumentation
//! frameworks whose arguments carry capacities.
//!
//! A framework is a coherent set of arguments `(id, capacity)` plus a
//! strength function on (attacker set, target) pairs. On top of it the crate
//! computes conflict-eliminable sets, intrinsic arguments and views,
//! c-admissible and c-preferred sets, the profitability relations between
//! coalitions and the four formability semantics W, M, WS and S.
//!
//! ```
//! use cfsem::{arg_set, framework, Aggregator, StrengthModel, VariantPolicy};
//!
//! let strengths = StrengthModel::new(Aggregator::Max, VariantPolicy::Persist)
//!     .with(("x", 2), ("y", 2), 2)
//!     .with(("y", 2), ("x", 2), 2);
//! let fw = framework(&[("x", 2), ("y", 2)], strengths).unwrap();
//! let sem = fw.semantics();
//! assert_eq!(sem.c_preferred_sets().unwrap(), vec![arg_set([("x", 2)]), arg_set([("y", 2)])]);
//! ```

pub mod argument;
pub mod attack;
pub mod coalition;
pub mod dot;
pub mod engine;
pub mod error;
pub mod framework;
pub mod io;
pub mod np;
pub mod oracle;
pub mod report;
pub mod strength;

pub use argument::{arg_set, display_set, validate_coherent, variant, ArgSet, ArgumentInstance, CoherentSet};
pub use attack::{
    attacks, c_attacks, c_defeats, defeats, enumerate_c_preferred, intrinsic, is_c_admissible,
    is_conflict_eliminable, view, vmax, Edge, IntrinsicSet, View,
};
pub use coalition::{
    attackers, coalition_permitted, crit_leq, formability, is_continuous, is_one_directionally_attacked,
    is_weakly_continuous, max_profitable, max_sets, pref_supersets, profitable, state_leq, state_rank,
    undefeated_external, Criterion, Formability, FormabilityResult, ProfitVerdict, StateRank,
};
pub use engine::{AttackerBase, Config, Semantics, DEFAULT_LIMIT};
pub use error::{Error, Result};
pub use framework::{framework, AxiomProfile, Framework};
pub use np::{check_reduction, np_attacks, np_minimal, np_semantics, NPFramework, NPKind};
pub use report::{Axiom, ValidationReport, Violation};
pub use strength::{Aggregator, AttackKey, StrengthModel, VariantPolicy};
