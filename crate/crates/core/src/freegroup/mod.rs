//! Free-group words, presentations, group rings and abelianization.

mod abelian;
mod groupring;
mod presentation;
mod tietze;
mod word;

pub use abelian::{abelianization, smith_normal_form, AbelianizationMap, SmithForm};
pub use groupring::GroupRingElement;
pub use presentation::Presentation;
pub use tietze::{
    add_generator, conjugate_relator, invert_relator, multiply_relators, remove_generator,
    tietze_perturb, tietze_perturb_traced,
};
pub use word::{
    exponent_sum, free_reduce, parse_word, render_word, word_invert, word_multiply, Letter, Word,
};
