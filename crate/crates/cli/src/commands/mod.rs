pub mod diffusion;
pub mod kick;
pub mod lemmas;
pub mod localize;
pub mod trace;
