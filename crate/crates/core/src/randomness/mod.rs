//! Martin-Löf sequential tests and the constructions relating them to
//! predictors: critical levels, tests from predictors and back, the
//! growth-rate boost, calibration and redundancy profiles.

mod boost;
mod calibration;
mod from_test;
mod growth;
mod profile;
mod weight;

pub use boost::{
    boost, boost_with_cap, deep_level_bound, max_level_sum, BoostParts, Boosted, DEFAULT_K_CAP,
};
pub use calibration::{calibration_report, check_window, CalibrationReport, Verdict};
pub use from_test::{
    predictor_from_test, predictor_from_test_with_budget, test_from_predictor, TestPredictor,
    DEFAULT_STEPS_PER_STAGE,
};
pub use growth::{GrowthFunction, GrowthKind};
pub use profile::{growth_profile, ProfileRow};
pub use test::{
    critical_level, Enumerator, NumerosityViolation, Pair, SequentialTest, TestSnapshot,
};
pub use weight::{WeightFunction, WEIGHT_TRUNCATION};
