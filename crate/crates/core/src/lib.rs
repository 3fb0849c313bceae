//! Ext over finite subalgebras of the mod 2 Steenrod algebra.
//!
//! Layers, bottom up: GF(2) linear algebra ([`gf2`]), Steenrod algebra
//! arithmetic ([`steenrod`]), finite modules ([`module`]), minimal
//! resolutions and products ([`resolver`]), an independent cobar complex
//! ([`cobar`]), the May spectral sequence for A1 ([`may`]), the algebraic
//! tmf E1 page ([`tmf`]) and chart drawing ([`render`]).

pub mod cobar;
pub mod error;
pub mod gf2;
pub mod may;
pub mod module;
pub mod render;
pub mod resolver;
pub mod steenrod;
pub mod tmf;

pub use error::{Error, Result};
pub use module::{ActionTable, CompletionMode, ModulePresentation};
pub use resolver::{Budget, ExtChart, HopfEdge, Label, Resolution};
pub use steenrod::{MilnorElt, SteenrodElt, SubalgebraProfile};
pub use tmf::{E1Table, SummandKey, Window};
