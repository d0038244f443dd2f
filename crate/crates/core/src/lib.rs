pub mod analyzer;
pub mod cli;
pub mod lang;
pub mod oracle;
pub mod poly;
pub mod sdl;
pub mod witness;
