//! Pointed Brill-Noether numerics: the adjusted Brill-Noether number, the
//! count `n_{g,d,a}` of special pointed linear series on a general curve, and
//! the coefficients `(mu, nu)` expressing a pointed Brill-Noether divisor in
//! the cone spanned by `BN_g` and the Weierstrass divisor `W_g`.
//!
//! Everything here is exact. Integer quantities use `i64` for the small
//! indices and [`BigInt`] for counts, which grow factorially in `g`.

use std::fmt;

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Q};

/// Strictly increasing sequence of nonnegative vanishing orders `a_0 < ... < a_r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct VanishingSequence(Vec<i64>);

impl VanishingSequence {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        let increasing = entries.windows(2).all(|w| w[0] < w[1]);
        let nonnegative = entries.first().is_some_and(|&a| a >= 0);
        if !increasing || !nonnegative {
            return Err(Error::InvalidSequence(entries));
        }
        Ok(Self(entries))
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `r`, one less than the number of sections.
    pub fn r(&self) -> i64 {
        self.0.len() as i64 - 1
    }

    pub fn top(&self) -> i64 {
        *self.0.last().expect("sequences are nonempty")
    }

    /// The sequence `(0, 1, ..., g-2, g)` cut out by a Weierstrass point.
    pub fn weierstrass(g: i64) -> Self {
        let mut v: Vec<i64> = (0..g - 1).collect();
        v.push(g);
        Self(v)
    }
}

impl TryFrom<Vec<i64>> for VanishingSequence {
    type Error = Error;

    fn try_from(v: Vec<i64>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<VanishingSequence> for Vec<i64> {
    fn from(a: VanishingSequence) -> Self {
        a.0
    }
}

impl std::str::FromStr for VanishingSequence {
    type Err = Error;

    /// Comma-separated entries, e.g. `"0,1,3"`.
    fn from_str(s: &str) -> Result<Self> {
        let entries = s
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::InvalidInput(format!("bad sequence entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(entries)
    }
}

impl fmt::Display for VanishingSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(i64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// A pointed Brill-Noether condition `(g, d, a)`; `r` is `len(a) - 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BNData {
    pub g: i64,
    pub d: i64,
    pub a: VanishingSequence,
}

impl BNData {
    pub fn new(g: i64, d: i64, a: VanishingSequence) -> Result<Self> {
        if g < 2 {
            return Err(Error::GenusTooSmall { g, min: 2 });
        }
        if d < 1 {
            return Err(Error::InvalidInput(format!(
                "degree must be positive, got {d}"
            )));
        }
        if a.top() > d {
            return Err(Error::OrderExceedsDegree {
                top: a.top(),
                degree: d,
            });
        }
        Ok(Self { g, d, a })
    }

    pub fn r(&self) -> i64 {
        self.a.r()
    }

    pub fn rho(&self) -> i64 {
        rho_unchecked(self.g, self.r(), self.d, self.a.entries())
    }

    /// True for the canonical-series datum `(2g-2, (0, 1, ..., g-2, g))`.
    pub fn is_weierstrass(&self) -> bool {
        self.d == 2 * self.g - 2 && self.a == VanishingSequence::weierstrass(self.g)
    }

    pub fn weierstrass(g: i64) -> Result<Self> {
        Self::new(g, 2 * g - 2, VanishingSequence::weierstrass(g))
    }
}

impl fmt::Display for BNData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "g={} r={} d={} a={}", self.g, self.r(), self.d, self.a)
    }
}

fn rho_unchecked(g: i64, r: i64, d: i64, a: &[i64]) -> i64 {
    let excess: i64 = a.iter().enumerate().map(|(i, &ai)| ai - i as i64).sum();
    g - (r + 1) * (g - d + r) - excess
}

/// Adjusted Brill-Noether number `g - (r+1)(g-d+r) - sum(a_i - i)`.
pub fn rho(g: i64, r: i64, d: i64, a: &VanishingSequence) -> Result<i64> {
    if g < 0 {
        return Err(Error::InvalidInput(format!(
            "genus must be nonnegative, got {g}"
        )));
    }
    if a.len() as i64 != r + 1 {
        return Err(Error::LengthMismatch { len: a.len(), r });
    }
    if a.top() > d {
        return Err(Error::OrderExceedsDegree {
            top: a.top(),
            degree: d,
        });
    }
    Ok(rho_unchecked(g, r, d, a.entries()))
}

/// `a^i`: add one to every entry except entry `i`. `None` when the result is
/// not strictly increasing.
pub fn derived_sequence(a: &VanishingSequence, i: usize) -> Result<Option<VanishingSequence>> {
    if i >= a.len() {
        return Err(Error::IndexOutOfRange {
            index: i,
            len: a.len(),
        });
    }
    let shifted: Vec<i64> = a
        .entries()
        .iter()
        .enumerate()
        .map(|(j, &x)| if j == i { x } else { x + 1 })
        .collect();
    Ok(VanishingSequence::new(shifted).ok())
}

fn factorial(n: i64) -> BigInt {
    (2..=n).fold(BigInt::one(), |acc, m| acc * m)
}

/// Evaluates the double-sum closed form for `n_{g,d,a}` without the
/// `a_r <= d` guard. A pair term whose denominator contains the factorial of
/// a negative integer contributes zero.
fn special_count_formula(g: i64, d: i64, a: &[i64]) -> Result<BigInt> {
    let r = a.len() as i64 - 1;
    let mut total = Q::zero();
    for k1 in 0..a.len() {
        for k2 in k1 + 1..a.len() {
            let b: Vec<i64> = a
                .iter()
                .enumerate()
                .map(|(i, &ai)| ai - i64::from(i == k1) - i64::from(i == k2))
                .collect();
            let args: Vec<i64> = b.iter().map(|&bi| g - d + r + bi).collect();
            if args.iter().any(|&x| x < 0) {
                continue;
            }
            let gap = a[k2] - a[k1];
            let mut numer = BigInt::from(gap * gap - 1);
            for i in 0..b.len() {
                for j in i + 1..b.len() {
                    numer *= b[j] - b[i];
                }
            }
            if numer.is_zero() {
                continue;
            }
            let denom = args
                .iter()
                .fold(BigInt::one(), |acc, &x| acc * factorial(x));
            total += Q::new(numer, denom);
        }
    }
    let n = total * Q::from_integer(factorial(g));
    if !n.is_integer() {
        return Err(Error::Invariant(format!(
            "n_{{g={g},d={d},a={a:?}}} = {} is not an integer",
            rational::format(&n)
        )));
    }
    let n = n.to_integer();
    if n.is_negative() {
        return Err(Error::Invariant(format!(
            "n_{{g={g},d={d},a={a:?}}} = {n} is negative"
        )));
    }
    Ok(n)
}

/// `n_{g,d,a}`: the number of pairs `(P, l)` on a general genus-`g` curve
/// with `l` a `g^r_d` whose vanishing sequence at `P` dominates `a`.
///
/// The set is finite exactly when `rho = -1`, so other data are rejected.
/// Defined for any `g >= 1`; genus `g - 1` values feed [`mu_nu`].
pub fn count_special(g: i64, d: i64, a: &VanishingSequence) -> Result<BigInt> {
    if g < 1 {
        return Err(Error::GenusTooSmall { g, min: 1 });
    }
    if a.top() > d {
        return Err(Error::OrderExceedsDegree {
            top: a.top(),
            degree: d,
        });
    }
    let rho = rho(g, a.r(), d, a)?;
    if rho != -1 {
        return Err(Error::RhoNotMinusOne(rho));
    }
    special_count_formula(g, d, a.entries())
}

/// Cone coefficients `(mu, nu)` of the pointed Brill-Noether divisor for a
/// datum with `rho = -1` and `g >= 3`.
pub fn mu_nu(data: &BNData) -> Result<(Q, Q)> {
    let g = data.g;
    if g < 3 {
        return Err(Error::GenusTooSmall { g, min: 3 });
    }
    let rho = data.rho();
    if rho != -1 {
        return Err(Error::RhoNotMinusOne(rho));
    }
    let n = Q::from_integer(count_special(g, data.d, &data.a)?);
    let g2m1 = rational::int(g * g - 1);

    let mut lower = BigInt::zero();
    for i in 0..data.a.len() {
        // A derived sequence that collides, or that vanishes to order above
        // the degree, indexes no linear series.
        if let Some(ai) = derived_sequence(&data.a, i)? {
            if ai.top() <= data.d {
                lower += count_special(g - 1, data.d, &ai)?;
            }
        }
    }
    let lower = Q::from_integer(lower);
    let binom = Q::from_integer(binomial(BigInt::from(g - 1), BigInt::from(2)));

    let mu = -&n / (rational::int(2) * &g2m1) + lower / (rational::int(4) * binom);
    let nu = n / (rational::int(g) * g2m1);
    Ok((mu, nu))
}

/// `(mu, nu)` where defined: [`mu_nu`] for `g >= 3`, and the forced values
/// `(0, 1)` for the genus-2 Weierstrass datum.
pub fn cone_weights(data: &BNData) -> Result<(Q, Q)> {
    if data.g == 2 {
        if data.is_weierstrass() {
            return Ok((Q::zero(), Q::one()));
        }
        return Err(Error::Unsupported(format!(
            "mu is undefined at g = 2 except for Weierstrass data ({data})"
        )));
    }
    mu_nu(data)
}

/// Every `(r, d, a)` with `r <= r_max`, `r < d <= d_max` and `rho = -1`,
/// ordered lexicographically by `(r, d, a)`.
pub fn enumerate_divisorial(g: i64, r_max: i64, d_max: i64) -> Vec<BNData> {
    let mut out = Vec::new();
    if g < 2 {
        return out;
    }
    for r in 0..=r_max {
        for d in (r + 1)..=d_max {
            let len = (r + 1) as usize;
            let mut current = Vec::with_capacity(len);
            increasing_sequences(0, d, len, &mut current, &mut |a| {
                if rho_unchecked(g, r, d, a) == -1 {
                    out.push(BNData {
                        g,
                        d,
                        a: VanishingSequence(a.to_vec()),
                    });
                }
            });
        }
    }
    out
}

fn increasing_sequences(
    start: i64,
    max: i64,
    len: usize,
    current: &mut Vec<i64>,
    visit: &mut dyn FnMut(&[i64]),
) {
    if current.len() == len {
        visit(current);
        return;
    }
    let remaining = (len - current.len()) as i64;
    for x in start..=(max - remaining + 1) {
        current.push(x);
        increasing_sequences(x + 1, max, len, current, visit);
        current.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn seq(v: &[i64]) -> VanishingSequence {
        VanishingSequence::new(v.to_vec()).unwrap()
    }

    fn data(g: i64, d: i64, a: &[i64]) -> BNData {
        BNData::new(g, d, seq(a)).unwrap()
    }

    #[test]
    fn rejects_bad_sequences() {
        assert!(VanishingSequence::new(vec![0, 0]).is_err());
        assert!(VanishingSequence::new(vec![2, 1]).is_err());
        assert!(VanishingSequence::new(vec![-1, 2]).is_err());
        assert!(VanishingSequence::new(vec![]).is_err());
        assert!("0, 1,3".parse::<VanishingSequence>().is_ok());
        assert!("0,a".parse::<VanishingSequence>().is_err());
    }

    #[test]
    fn rho_examples() {
        assert_eq!(rho(2, 0, 2, &seq(&[0])).unwrap(), 2);
        assert_eq!(rho(2, 1, 2, &seq(&[0, 2])).unwrap(), -1);
        assert_eq!(rho(3, 2, 4, &seq(&[0, 1, 3])).unwrap(), -1);
        assert_eq!(rho(3, 1, 2, &seq(&[0, 1])).unwrap(), -1);
    }

    #[test]
    fn rho_errors() {
        assert_eq!(
            rho(3, 1, 2, &seq(&[0, 3])),
            Err(Error::OrderExceedsDegree { top: 3, degree: 2 })
        );
        assert!(matches!(
            rho(3, 2, 4, &seq(&[0, 1])),
            Err(Error::LengthMismatch { .. })
        ));
        assert!(rho(-1, 0, 2, &seq(&[0])).is_err());
    }

    #[test]
    fn derived_sequence_examples() {
        let a = seq(&[0, 1, 3]);
        assert_eq!(derived_sequence(&a, 0).unwrap(), Some(seq(&[0, 2, 4])));
        assert_eq!(derived_sequence(&a, 1).unwrap(), None);
        assert_eq!(derived_sequence(&a, 2).unwrap(), Some(seq(&[1, 2, 3])));
        assert!(matches!(
            derived_sequence(&a, 3),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn count_special_examples() {
        let n = |g, d, a: &[i64]| count_special(g, d, &seq(a)).unwrap();
        assert_eq!(n(2, 2, &[0, 2]), BigInt::from(6));
        assert_eq!(n(3, 4, &[0, 1, 3]), BigInt::from(24));
        assert_eq!(n(2, 4, &[0, 2, 4]), BigInt::from(6));
        assert_eq!(n(2, 4, &[1, 2, 3]), BigInt::from(0));
        assert_eq!(n(3, 2, &[0, 1]), BigInt::from(0));
    }

    #[test]
    fn count_special_rejects_invalid_input() {
        assert!(count_special(3, 2, &seq(&[0, 3])).is_err());
        assert!(count_special(0, 2, &seq(&[0, 2])).is_err());
        // rho = -13: no finite count, and the closed form is not integral here.
        assert_eq!(
            count_special(5, 6, &seq(&[2, 3, 5, 6])),
            Err(Error::RhoNotMinusOne(-13))
        );
        assert_eq!(
            count_special(3, 4, &seq(&[0, 1, 2])),
            Err(Error::RhoNotMinusOne(0))
        );
    }

    #[test]
    fn over_degree_derived_sequences_evaluate_to_zero() {
        // The explicit skip in mu_nu agrees with the raw closed form.
        for g in 3..=7 {
            for datum in enumerate_divisorial(g, 3, 2 * g - 2) {
                for i in 0..datum.a.len() {
                    if let Some(ai) = derived_sequence(&datum.a, i).unwrap() {
                        if ai.top() > datum.d {
                            let raw = special_count_formula(g - 1, datum.d, ai.entries()).unwrap();
                            assert!(raw.is_zero(), "{datum} i={i}");
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn mu_nu_examples() {
        assert_eq!(mu_nu(&data(3, 4, &[0, 1, 3])).unwrap(), (int(0), int(1)));
        assert_eq!(mu_nu(&data(3, 2, &[0, 1])).unwrap(), (frac(3, 2), int(0)));
        assert_eq!(mu_nu(&data(4, 6, &[0, 1, 2, 4])).unwrap(), (int(0), int(1)));
    }

    #[test]
    fn mu_nu_errors() {
        assert_eq!(
            mu_nu(&data(2, 2, &[0, 2])),
            Err(Error::GenusTooSmall { g: 2, min: 3 })
        );
        assert_eq!(
            mu_nu(&data(3, 4, &[0, 1, 2])),
            Err(Error::RhoNotMinusOne(0))
        );
    }

    #[test]
    fn cone_weights_genus_two() {
        assert_eq!(
            cone_weights(&data(2, 2, &[0, 2])).unwrap(),
            (int(0), int(1))
        );
        assert!(matches!(
            cone_weights(&data(2, 3, &[1, 3])),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn enumerate_examples() {
        assert_eq!(
            enumerate_divisorial(2, 1, 3),
            vec![data(2, 2, &[0, 2]), data(2, 3, &[1, 3])]
        );
        assert!(enumerate_divisorial(2, 0, 3).is_empty());
        assert_eq!(enumerate_divisorial(3, 1, 2), vec![data(3, 2, &[0, 1])]);
    }

    #[test]
    fn weierstrass_datum() {
        let w = BNData::weierstrass(4).unwrap();
        assert_eq!(w.a, seq(&[0, 1, 2, 4]));
        assert_eq!(w.d, 6);
        assert_eq!(w.rho(), -1);
        assert!(w.is_weierstrass());
        assert!(!data(3, 2, &[0, 1]).is_weierstrass());
    }
}
