//! Effective invariants of complete intersections via the multiplicative
//! presentation: exact graded rings, Laurent series in `1/t`, discrete
//! target data, vanishing rules, censuses of basic invariants, the
//! genus-one closed formula and string/divisor reduction.

pub mod error;
pub mod rational;
pub mod ring;
pub mod series;
pub mod target;
pub mod constraints;
pub mod census;
pub mod genus1;
pub mod recursion;

pub use error::{Error, Result};
pub use rational::{RationalJson, Q};
pub use ring::{
    chern_kclass, chern_twisted, integrate, make_ring, segre_class, segre_pushforward, Bound,
    BundleDesc, BundleRelation, Generator, GradedElement, Ring, RingSpec,
};
pub use series::{default_order, expand_pole, verify_double_pole, LaurentSeries, PoleSign};
pub use target::{
    lift_contacts, normalize_target, presets, push_contacts, unit_sector, AmbientSpace,
    DiscreteData, InfinityData, Normalization, Sector, SplitBundle, TargetSpec,
};
pub use constraints::{analyze, balancing, vanishing_check, FeasibilityReport, Vanishing, Verdict};
pub use census::{census_range, count_basic, enumerate_basic, BasicIndex};
pub use genus1::{build_genus1, build_genus1_with, genus1_invariant, genus1_reduce, GenusOneModel};
pub use recursion::{
    assemble_disconnected, pushforward_min_check, rescale_roots, BasicKey, ConnectedPart, Insertion,
    Marking, Reduced, ReductionResult, Reducer, RootDirection, Status, Token, UnitChoice,
};
