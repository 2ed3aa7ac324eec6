//! Exact root-system combinatorics: standard realizations, affine marks and
//! their duals, involution classification by marked diagrams, and the
//! restricted-root sums used to compute growth exponents.

mod affine;
mod build;
mod restricted;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

pub use affine::{
    kac_classify, AffineDiagramChoice, DiagramChoiceSpec, KacVerdict, OuterFamily, Twist,
    TwistKind,
};
pub use build::{build_root_system, RootSystemData};
pub use restricted::restricted_sum_psl2n_psp;

/// A weight written in the simple-root basis; coefficients are exact
/// rationals and serialize as strings ("3/2", "-1", ...).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightInRootBasis {
    #[serde(with = "crate::rational::serde_ratio_vec")]
    pub coefficients: Vec<BigRational>,
}
