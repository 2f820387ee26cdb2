//! Two distinguishable walkers: product and Bell-entangled coin starts.

mod joint;
mod meeting;
mod series;
mod spec;

pub use joint::{JointAmplitude, JointDistribution, JointState, DEFAULT_ORACLE_CAP};
pub use meeting::{joint_distribution, meeting_at, meeting_series, meeting_series_many, meeting_total, reduced_distributions};
pub use series::{overall_meeting, MeetingSeries};
pub use spec::{decompose, BellState, Decomposition, Term, TwoWalkerKind, TwoWalkerSpec};

pub(crate) use joint::component;
