//! Finite loops given by Cayley tables: left Bol and Moufang tests, gyrators
//! and gyrogroups, automorphisms and isomorphism classes, derived
//! subgyrogroups, and enumeration of small left Bol loops.
//!
//! ```
//! use gyroloop::{fixtures::g16, gyration::{gyration_table, is_gyrogroup}};
//!
//! let g = g16();
//! assert!(g.is_left_bol());
//! assert!(is_gyrogroup(&g).is_ok());
//! assert_eq!(gyration_table(&g).non_identity_count(), 5);
//! ```

pub mod constructions;
pub mod corpus;
pub mod enumeration;
pub mod fixtures;
pub mod gyration;
pub mod morphisms;
pub mod perm;
pub mod report;
pub mod structure;
pub mod table;

pub use corpus::{read_corpus, Corpus, CorpusEntry};
pub use enumeration::{enumerate_all_loops, enumerate_left_bol, EnumOptions};
pub use gyration::{gyr, gyration_table, gyrator_set, is_gyrocommutative, is_gyrogroup, GyroProfile};
pub use morphisms::{are_isomorphic, automorphism_group, canonical_key, CanonicalKey};
pub use perm::{group_closure, is_closed_set, Perm};
pub use report::{classify, emit_report, ClassificationReport, ReportFormat};
pub use structure::{commutator, derived_subgyrogroup, generated_subsystem, Subsystem};
pub use table::{load_table, CayleyTable, Loop, TableError};
