//! Geometric algebra kernel: arbitrary-signature Clifford algebras over
//! float, exact-rational and rational-function coefficients, with matrix
//! representations, analytic functions, PGA/CGA geometric models, matrices
//! of multivectors and an expression evaluator.

pub mod algebra;
pub mod analytic;
pub mod apps;
pub mod cga;
pub mod error;
pub mod expr;
pub mod linalg;
pub mod multivector;
pub mod mvmatrix;
pub mod pga;
pub mod poly;
pub mod ratfun;
pub mod scalar;

pub use algebra::{Algebra, BladeProduct, Signature};
pub use analytic::{
    analytic_function, from_first_column, int_power, inverse, rotor_exp_bivector, sandwich,
    to_matrix, AnalyticFn, AnalyticOps,
};
pub use apps::{
    fk3r, fk3r_closed_form, fk6r_best_error, ik6r, GeometricImpedance, Ik6rResult, NodeTransfer,
    PowerNetwork, PowerSolution, RobotParams3R, RobotParams6R, SlotTransfer, SLOT_NAMES,
};
pub use cga::{CgaModel, GeometricEntity};
pub use error::{GaError, Result};
pub use expr::{parse, tokenize, Expr, Session};
pub use multivector::{BasisStyle, Multivector};
pub use mvmatrix::MvMatrix;
pub use pga::PgaModel;
pub use poly::Poly;
pub use ratfun::RationalFunction;
pub use scalar::{rational_from_text, Rational, Scalar};
