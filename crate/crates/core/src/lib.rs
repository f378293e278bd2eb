//! Exact-arithmetic laboratory for additive semigroup partitions of the
//! real line.
//!
//! The crate models the rational span of a Hamel basis symbolically and
//! builds, on top of it, the machinery needed to study partitions of ℝ
//! into pieces closed under addition:
//!
//! * [`hamel`] — symbolic reals as finite rational combinations of basis
//!   elements, each basis element living in an indexed Cantor piece, plus
//!   the length-lex cylinder base used to separate finite point sets;
//! * [`partition`] — the classifier assigning every symbolic real to its
//!   piece `Pos(alpha, k)` / `Neg(alpha, k)` / `Zero`, and a seeded
//!   verification harness for totality, closure, homogeneity and duality;
//! * [`leading`] — the κ-piece decomposition by leading Hamel coordinate;
//! * [`interval`] / [`sumset`] — exact set arithmetic on finite unions of
//!   rational-endpoint intervals: Minkowski sums, n-fold sums, additive
//!   closure decisions, certified even-sum halflines and Cantor-stage
//!   approximants;
//! * [`mult`] — the seven-atom algebra of multiplicative pieces with its
//!   exact product table and the log bridge back to the additive model;
//! * [`group`] — essentially disjoint subgroup covers of finite abelian
//!   groups and the counting inequalities they satisfy.
//!
//! All arithmetic is exact: coefficients and endpoints are unbounded
//! rationals, and no floating point is used anywhere.

pub mod expr;
pub mod group;
pub mod hamel;
pub mod interval;
pub mod leading;
pub mod mult;
pub mod partition;
pub mod report;
pub mod sample;
pub mod sumset;

pub use num_rational::BigRational;

pub use expr::{parse_real, ParseError};
pub use group::{FiniteGroup, Subgroup, SubgroupCover};
pub use hamel::{BasisElement, HamelReal, Point};
pub use interval::{Interval, IntervalUnion};
pub use leading::{Kappa, LeadingLabel};
pub use mult::{Atom, PieceSet, PosRealExp};
pub use partition::Label;
pub use report::{Report, Violation};
pub use sample::SampleConfig;
