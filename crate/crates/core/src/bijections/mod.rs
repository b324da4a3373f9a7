//! Named correspondences between walk families and decorated maps, each with
//! a forward map, an inverse and a validator for the decoration.

pub mod bernardi;
pub mod kmsw;
pub mod kreweras;
pub mod mullin;
pub mod ry;
pub mod schnyder;
pub mod tandem;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::walks::{Family, Point, StepAlphabet, Walk};

pub use bernardi::{bernardi_grow, GrowthState};
pub use kmsw::{kmsw_to_bipolar, validate_bipolar};
pub use kreweras::{kreweras_forward, validate_kreweras};
pub use mullin::{mullin_map, mullin_walk, validate_mullin};
pub use ry::{is_special, lukasiewicz_forward, lukasiewicz_inverse, quartic_forward, ry_forward, ry_inverse, validate_complete_tree};
pub use schnyder::{schnyder_to_tandem, tandem_to_schnyder, validate_schnyder};
pub use tandem::{prograph_to_tandem, syt_to_tandem, tandem_to_prograph, tandem_to_syt, validate_prograph, Prograph, Syt};

/// Re-reads `walk` over the alphabet of `family`, rejecting foreign steps.
pub(crate) fn over(walk: &Walk, family: Family) -> Result<Walk> {
    walk.with_alphabet(Arc::new(StepAlphabet::family(family)))
}

pub(crate) fn expect_confined(walk: &Walk) -> Result<()> {
    match walk.first_exit() {
        Some(i) => Err(Error::NotConfined(i)),
        None => Ok(()),
    }
}

pub(crate) fn expect_end(walk: &Walk, allowed: &[Point]) -> Result<()> {
    let end = walk.end();
    if allowed.contains(&end) {
        return Ok(());
    }
    let expected = allowed.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" or ");
    Err(Error::WrongEndpoint { expected, got: end.to_string() })
}

pub(crate) fn expect_multiple(walk: &Walk, k: usize) -> Result<()> {
    if walk.len() % k != 0 {
        return Err(Error::WrongLength(format!("{} is not a multiple of {k}", walk.len())));
    }
    Ok(())
}
