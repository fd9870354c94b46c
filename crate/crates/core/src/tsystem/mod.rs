//! Monomial families, the relations of the usual T-system and systems I-IV,
//! their verification, and the recursive computation of q-characters.

pub mod cache;
pub mod chains;
pub mod label;
pub mod recursion;
pub mod relations;
pub mod verify;

pub use label::{canonical_label, highest_monomial, special_family_labels, Family, ModuleLabel};
pub use relations::{highest_monomial_balance, relation_instance, Balance, RelationId, RelationInstance, System};
pub use chains::{case_grid, dominant_chain, DominantChain, CASE_COUNT};
pub use recursion::{compute_by_recursion, recursion_step, RecursionSource, RecursionStep};
pub use cache::{CharacterCache, CharacterSource, FmSource};
pub use verify::{verify_relation, VerifyMethod, VerifyOptions, VerifyReport};
