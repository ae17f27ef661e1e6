//! Exact computations for faces of the tensor cone of a symmetrizable
//! Kac–Moody algebra: realizations, Weyl groups, Schubert calculus on
//! `G/P`, weight multiplicities and the inequalities cutting out the cone.

pub mod cartan;
pub mod cone;
pub mod error;
pub mod linalg;
pub mod lp;
pub mod poly;
pub mod rational;
pub mod schubert;
pub mod tensor;
pub mod weyl;

pub use cartan::{AlgebraType, Coweight, Gcm, RealRoot, RealRootSet, Realization, Weight};
pub use cone::{
    BoundaryClass, BoundaryDegree, BoundaryKind, Certificate, Face, FaceReport, FaceSearch, FaceVerdict, Inequality,
    InequalitySystem, RestrictionReport, SpaceE, TensorCone, Triple, Witness,
};
pub use error::{Error, Result};
pub use lp::{Constraint, LinearProgram, LpOutcome, Relation};
pub use poly::Poly;
pub use rational::Q;
pub use schubert::{
    DeformedCoefficientTable, DeformedEntry, FregCase, FregReport, GradingProfile, LocalizationTable,
    Movability, SchubertCalculus,
};
pub use tensor::{MembershipVerdict, MultiplicityQuery, TensorEngine, WeightMultTable};
pub use weyl::{CosetRepSet, ParabolicType, WeylElement, WeylGroup};
