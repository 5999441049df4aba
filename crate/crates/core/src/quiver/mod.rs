//! The quiver Q(C, Z_n), its double, path words, and the defining presentations.

mod alphabet;
mod cartan;
mod element;
pub mod paths;
mod presentation;
mod setting;
mod word;

pub use alphabet::{Alphabet, AlphabetKind, Letter, Symbol};
pub use cartan::CartanMatrix;
pub use element::Element;
pub use presentation::{relations_restricted, uq_presentation, AlgebraKind, Presentation, Relation, RelationTag};
pub use setting::Setting;
pub use word::{Letters, Word};
