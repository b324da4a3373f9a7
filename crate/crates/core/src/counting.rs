//! Closed-form counts, brute-force enumeration and bijection-image counts for
//! the registered families. Brute force is the ground truth; formulas are
//! only compared against it.

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::bijections;
use crate::error::{Error, Result};
use crate::map::DecoratedMap;
use crate::walks::{enumerate_walks_par, Family, Point, StepAlphabet, Walk};

pub fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut r = BigUint::one();
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

fn factorial(n: u64) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * i)
}

/// `C_l = binom(2l, l) / (l + 1)`.
pub fn catalan(l: u64) -> BigUint {
    binomial(2 * l, l) / (l + 1)
}

/// `binom(3n, n) / (2n + 1)`.
pub fn fuss_catalan_2(n: u64) -> BigUint {
    binomial(3 * n, n) / (2 * n + 1)
}

/// `2 (3n)! / (n! (n+1)! (n+2)!)`.
pub fn tandem_count(n: u64) -> BigUint {
    factorial(3 * n) * 2u32 / (factorial(n) * factorial(n + 1) * factorial(n + 2))
}

/// `C_{2n} C_n`.
pub fn ry_count(n: u64) -> BigUint {
    catalan(2 * n) * catalan(n)
}

/// Two readings of the Kreweras closed form:
/// `A = 2^n binom(3n,n) / (2n+1)` and `B = 4^n binom(3n,n) / ((n+1)(2n+1))`.
pub fn kreweras_formula(n: u64) -> (BigUint, BigUint) {
    let b = binomial(3 * n, n);
    let two_n = BigUint::from(2u32).pow(n as u32);
    let a = &two_n * &b / (2 * n + 1);
    let four_n = &two_n * &two_n;
    (a, four_n * b / ((n + 1) * (2 * n + 1)))
}

/// Result of [`verify_family`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CountReport {
    pub family: String,
    pub n: u64,
    pub brute: BigUint,
    pub formula_a: Option<BigUint>,
    pub formula_b: Option<BigUint>,
    pub image: Option<BigUint>,
}

impl CountReport {
    pub fn formula_a_matches(&self) -> Option<bool> {
        self.formula_a.as_ref().map(|f| *f == self.brute)
    }

    pub fn formula_b_matches(&self) -> Option<bool> {
        self.formula_b.as_ref().map(|f| *f == self.brute)
    }

    pub fn image_matches(&self) -> Option<bool> {
        self.image.as_ref().map(|f| *f == self.brute)
    }

    /// Everything that equals the brute-force count, `;`-separated, or `none`.
    pub fn agreement(&self) -> String {
        let flags: Vec<&str> = [
            ("A", self.formula_a_matches()),
            ("B", self.formula_b_matches()),
            ("image", self.image_matches()),
        ]
        .into_iter()
        .filter(|(_, m)| *m == Some(true))
        .map(|(name, _)| name)
        .collect();
        if flags.is_empty() {
            "none".to_string()
        } else {
            flags.join(";")
        }
    }

    pub const CSV_HEADER: &'static str = "family,n,brute,formulaA,formulaB,image,agree";

    pub fn to_csv_row(&self) -> String {
        let opt = |v: &Option<BigUint>| v.as_ref().map(|x| x.to_string()).unwrap_or_default();
        format!(
            "{},{},{},{},{},{},{}",
            self.family,
            self.n,
            self.brute,
            opt(&self.formula_a),
            opt(&self.formula_b),
            opt(&self.image),
            self.agreement()
        )
    }
}

impl fmt::Display for CountReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_csv_row())
    }
}

/// Largest size parameter each family is verified at unless overridden.
pub fn default_budget(family: Family) -> Option<u64> {
    match family {
        Family::Tandem => Some(4),
        Family::Ry => Some(3),
        Family::Kreweras => Some(4),
        Family::Straight => Some(6),
        Family::Quartic => Some(4),
        Family::Schnyder => Some(3),
        Family::Kmsw => Some(6),
        _ => None,
    }
}

/// Largest `|i|+|j|` used when materializing the infinite KMSW step set.
pub const KMSW_BOUND: u64 = 3;

/// Walks counted at size `n`: their alphabet, length and endpoints.
fn instances(family: Family, n: u64) -> Result<Vec<Walk>> {
    let n = n as usize;
    let from_origin = |a: Family, len: usize, end: Point| enumerate_walks_par(&StepAlphabet::family(a), len, Point::ORIGIN, end);
    match family {
        Family::Tandem => from_origin(family, 3 * n, Point::ORIGIN),
        Family::Ry => from_origin(family, 4 * n, Point::ORIGIN),
        Family::Kreweras => from_origin(family, 3 * n, Point::ORIGIN),
        Family::Quartic => from_origin(family, 3 * n, Point::ORIGIN),
        Family::Straight => from_origin(family, 2 * n, Point::ORIGIN),
        Family::Schnyder => from_origin(family, 3 * n + 1, Point { x: 1, y: 0 }),
        Family::Kmsw => {
            let a = StepAlphabet::family(Family::Kmsw).bounded(KMSW_BOUND);
            let mut out = Vec::new();
            for k in 0..=n as i64 {
                for m in 0..=(n as i64 * KMSW_BOUND as i64) {
                    out.extend(enumerate_walks_par(&a, n, Point { x: 0, y: k }, Point { x: m, y: 0 })?);
                }
            }
            Ok(out)
        }
        other => Err(Error::UnknownFamily(format!("{} has no counting oracle", other.name()))),
    }
}

fn forward(family: Family, walk: &Walk) -> Result<DecoratedMap> {
    match family {
        Family::Tandem => bijections::tandem_to_prograph(walk).map(|p| p.map),
        Family::Ry => bijections::ry_forward(walk),
        Family::Kreweras => bijections::kreweras_forward(walk),
        Family::Quartic => bijections::quartic_forward(walk),
        Family::Straight => bijections::mullin_map(walk),
        Family::Schnyder => bijections::tandem_to_schnyder(walk),
        Family::Kmsw => bijections::kmsw_to_bipolar(walk),
        other => Err(Error::UnknownFamily(other.name().to_string())),
    }
}

fn formulas(family: Family, n: u64) -> (Option<BigUint>, Option<BigUint>) {
    match family {
        Family::Tandem => (Some(tandem_count(n)), None),
        Family::Ry => (Some(ry_count(n)), None),
        Family::Kreweras => {
            let (a, b) = kreweras_formula(n);
            (Some(a), Some(b))
        }
        Family::Quartic => (Some(fuss_catalan_2(n) * catalan(n)), None),
        Family::Straight => (Some(catalan(n) * catalan(n + 1)), None),
        _ => (None, None),
    }
}

/// Brute-force count, closed forms and the number of distinct bijection
/// images (by canonical code) at size `n`. `budget` overrides the default
/// size limit of the family.
pub fn verify_family(family: Family, n: u64, budget: Option<u64>) -> Result<CountReport> {
    let limit = budget
        .or_else(|| default_budget(family))
        .ok_or_else(|| Error::UnknownFamily(format!("{} has no counting oracle", family.name())))?;
    if n > limit {
        return Err(Error::Budget(format!("{} at n={n} exceeds the budget n<={limit}", family.name())));
    }
    let walks = instances(family, n)?;
    let codes: Vec<Vec<usize>> = walks
        .par_iter()
        .map(|w| forward(family, w).map(|m| m.canonical_code()))
        .collect::<Result<_>>()?;
    let image = codes.into_iter().collect::<BTreeSet<_>>().len();
    let (formula_a, formula_b) = formulas(family, n);
    Ok(CountReport {
        family: family.name().to_string(),
        n,
        brute: BigUint::from(walks.len()),
        formula_a,
        formula_b,
        image: Some(BigUint::from(image)),
    })
}
