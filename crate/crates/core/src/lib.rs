//! Exact computation of decomposition numbers and v-decomposition numbers
//! (graded multiplicities of Jantzen filtrations) for cyclotomic q-Schur
//! algebras and Ariki-Koike algebras over a modular system.

pub mod engine;
pub mod error;
pub mod field;
pub mod hecke;
pub mod jantzen;
pub mod matrix;
pub mod modular;
pub mod multipartition;
pub mod product;
pub mod schur;
pub mod tableau;

pub use engine::{Engine, CONVENTION_TAG};
pub use error::{Error, Result};
pub use field::{Cyclotomic, Field, Fp, Poly, RatFunc, Rational};
pub use hecke::{AlgebraElement, HeckeAlgebra, MurphyBasis, MurphyLabel, MurphyTransition};
pub use jantzen::{JantzenProfile, VPolynomial};
pub use matrix::{Echelon, Matrix};
pub use modular::{
    elementary_divisor_valuations, rank_over_f, ModularSystem, PLocal, Valuation, ValuationProfile, XAdic, XParam,
};
pub use multipartition::{
    alpha_p, concat, dominance_cmp, enumerate_lambda, enumerate_lambda_plus, split, AlphaVector, Composition,
    Dominance, Multicomposition, Multipartition, PSplit,
};
pub use product::{
    component_configs, verify_product_formula, BarZBlock, ComponentConfig, PairRecord, ProductContext, Side, Summary,
    TensorCheck, TensorReport, VerificationReport,
};
pub use schur::{Character, WeylBlock, WeylGram};
pub use tableau::{
    d_perm, enumerate_ssyt, enumerate_ssyt_p, enumerate_std, row_stabilizer, split_ssyt, ssyt_classes, type_map,
    weight_labels, Label, Permutation, SemistandardTableau, SsytClass, StandardTableau,
};
