//! PBW normal forms, products, braided commutators, tensor squares and the
//! coproduct/coaction algebra maps.

mod algebra;
mod element;
mod mono;
mod tensor;
mod words;

pub use algebra::{EngineError, Kind, PowerRule, Presentation, Rule, Terms, WordItem};
pub use element::Element;
pub use mono::{highest, letters_degree, lowest, Letters, Mono};
pub use tensor::{Tensor, TensorAlgebra};
pub use words::parse_word;
mod serial;
pub use serial::{element_from_terms, element_json, tensor_json, TermJson};
mod maps;
pub use maps::{apply_left, apply_right, counit, counit_left, counit_right, GeneratorMap, Tensor3};
