//! Divisor classes on `PE^k_g` and `PE^k_{g,1}`, with the pushforward of
//! degree-two products along the map forgetting the marked point.
//!
//! Coefficients are stored signed, exactly as they multiply each generator:
//! a class written `c_eta eta + c_lambda lambda - sum c_i delta_i` keeps
//! `-c_i` in its delta slots.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::binomial;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, frac, int, Q};

/// Class in `Pic(PE^k_g)` over `eta, lambda, delta_0, ..., delta_{floor(g/2)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DownClass {
    pub g: i64,
    pub k: i64,
    pub eta: Q,
    pub lambda: Q,
    pub delta: Vec<Q>,
}

/// Class in `Pic(PE^k_{g,1})` over `eta, lambda, psi, delta_0, ..., delta_{g-1}`.
///
/// `delta_i` for `i >= 1` is the boundary divisor whose marked point lies on
/// the genus-`i` component.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct UpClass {
    pub g: i64,
    pub k: i64,
    pub eta: Q,
    pub lambda: Q,
    pub psi: Q,
    pub delta: Vec<Q>,
}

fn boundary_count_down(g: i64) -> usize {
    (g / 2 + 1) as usize
}

fn check_context(g1: i64, k1: i64, g2: i64, k2: i64) -> Result<()> {
    if g1 != g2 || k1 != k2 {
        return Err(Error::ContextMismatch { g1, k1, g2, k2 });
    }
    Ok(())
}

fn binom(n: i64, k: i64) -> Q {
    if n < k {
        return Q::zero();
    }
    Q::from_integer(binomial(BigInt::from(n), BigInt::from(k)))
}

impl DownClass {
    pub fn zero(g: i64, k: i64) -> Self {
        Self {
            g,
            k,
            eta: Q::zero(),
            lambda: Q::zero(),
            delta: vec![Q::zero(); boundary_count_down(g)],
        }
    }

    /// Builds a class from the flat vector `(eta, lambda, delta_0, ...)`.
    pub fn from_coefficients(g: i64, k: i64, coeffs: &[Q]) -> Result<Self> {
        let expected = 2 + boundary_count_down(g);
        if coeffs.len() != expected {
            return Err(Error::InvalidInput(format!(
                "expected {expected} coefficients for g = {g}, got {}",
                coeffs.len()
            )));
        }
        Ok(Self {
            g,
            k,
            eta: coeffs[0].clone(),
            lambda: coeffs[1].clone(),
            delta: coeffs[2..].to_vec(),
        })
    }

    /// Flat coefficient vector `(eta, lambda, delta_0, ..., delta_{floor(g/2)})`.
    pub fn coefficients(&self) -> Vec<Q> {
        let mut v = vec![self.eta.clone(), self.lambda.clone()];
        v.extend(self.delta.iter().cloned());
        v
    }

    /// `10 lambda - delta_0 - 2 delta_1`, which vanishes in `Pic(PE^k_2)`.
    pub fn genus_two_relation(k: i64) -> Self {
        Self {
            g: 2,
            k,
            eta: Q::zero(),
            lambda: int(10),
            delta: vec![int(-1), int(-2)],
        }
    }

    /// For `g = 2`, the representative with no `delta_1` term in this class's
    /// coset of the relation line. Other genera are returned unchanged.
    pub fn reduce_genus_two(&self) -> Self {
        if self.g != 2 {
            return self.clone();
        }
        let t = &self.delta[1] / int(2);
        self + &(&Self::genus_two_relation(self.k) * &t)
    }

    pub fn is_zero(&self) -> bool {
        self.coefficients().iter().all(Zero::is_zero)
    }

    fn assert_same_context(&self, other: &Self) {
        assert!(
            self.g == other.g && self.k == other.k,
            "class context mismatch: (g={}, k={}) vs (g={}, k={})",
            self.g,
            self.k,
            other.g,
            other.k
        );
    }
}

impl UpClass {
    pub fn zero(g: i64, k: i64) -> Self {
        Self {
            g,
            k,
            eta: Q::zero(),
            lambda: Q::zero(),
            psi: Q::zero(),
            delta: vec![Q::zero(); g as usize],
        }
    }

    /// Folds a class pulled back from `M_g-bar` down to `PE^k_g`: requires no
    /// `psi` term and `delta_i = delta_{g-i}` for `1 <= i <= g-1`.
    pub fn descend(&self) -> Result<DownClass> {
        if !self.psi.is_zero() {
            return Err(Error::InvalidInput("class has a psi term".into()));
        }
        for i in 1..self.g as usize {
            if self.delta[i] != self.delta[self.g as usize - i] {
                return Err(Error::InvalidInput(format!(
                    "boundary coefficients are not symmetric at delta_{i}"
                )));
            }
        }
        Ok(DownClass {
            g: self.g,
            k: self.k,
            eta: self.eta.clone(),
            lambda: self.lambda.clone(),
            delta: self.delta[..boundary_count_down(self.g)].to_vec(),
        })
    }

    fn assert_same_context(&self, other: &Self) {
        assert!(
            self.g == other.g && self.k == other.k,
            "class context mismatch: (g={}, k={}) vs (g={}, k={})",
            self.g,
            self.k,
            other.g,
            other.k
        );
    }
}

macro_rules! linear_ops {
    ($ty:ident { $($field:ident),* }) => {
        impl Add for &$ty {
            type Output = $ty;
            fn add(self, rhs: &$ty) -> $ty {
                self.assert_same_context(rhs);
                $ty {
                    g: self.g,
                    k: self.k,
                    $($field: &self.$field + &rhs.$field,)*
                    delta: self.delta.iter().zip(&rhs.delta).map(|(a, b)| a + b).collect(),
                }
            }
        }

        impl Sub for &$ty {
            type Output = $ty;
            fn sub(self, rhs: &$ty) -> $ty {
                self + &(-rhs)
            }
        }

        impl Neg for &$ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                self * &(-Q::one())
            }
        }

        impl Mul<&Q> for &$ty {
            type Output = $ty;
            fn mul(self, s: &Q) -> $ty {
                $ty {
                    g: self.g,
                    k: self.k,
                    $($field: &self.$field * s,)*
                    delta: self.delta.iter().map(|a| a * s).collect(),
                }
            }
        }
    };
}

linear_ops!(DownClass { eta, lambda });
linear_ops!(UpClass { eta, lambda, psi });

/// `W_g = C(g+1,2) psi - lambda - sum_{i=1}^{g-1} C(g-i+1,2) delta_i`, the
/// divisor of marked Weierstrass points, viewed on `PE^k_{g,1}`.
pub fn weierstrass_pointed_class(g: i64, k: i64) -> UpClass {
    let mut c = UpClass::zero(g, k);
    c.psi = binom(g + 1, 2);
    c.lambda = int(-1);
    for i in 1..g {
        c.delta[i as usize] = -binom(g - i + 1, 2);
    }
    c
}

/// `BN_g = (g+3) lambda - (g+1)/6 delta_0 - sum_{i=1}^{g-1} i(g-i) delta_i`,
/// pulled back to `PE^k_{g,1}`.
pub fn brill_noether_pointed_class(g: i64, k: i64) -> UpClass {
    let mut c = UpClass::zero(g, k);
    c.lambda = int(g + 3);
    c.delta[0] = -frac(g + 1, 6);
    for i in 1..g {
        c.delta[i as usize] = int(-i * (g - i));
    }
    c
}

/// Class of the incidence divisor: `k psi - eta`.
pub fn incidence_class(g: i64, k: i64) -> UpClass {
    let mut c = UpClass::zero(g, k);
    c.psi = int(k);
    c.eta = int(-1);
    c
}

/// `BN_g` pulled back to `PE^k_g`.
pub fn downstairs_bn_pullback(g: i64, k: i64) -> DownClass {
    brill_noether_pointed_class(g, k)
        .descend()
        .expect("BN_g has symmetric boundary coefficients")
}

/// `kappa_1 = 12 lambda - sum_{i=0}^{floor(g/2)} delta_i` (Mumford).
fn kappa_one(g: i64, k: i64) -> DownClass {
    let mut c = DownClass::zero(g, k);
    c.lambda = int(12);
    for d in &mut c.delta {
        *d = int(-1);
    }
    c
}

/// `pi_*(psi * x)` for a class `x` with no `psi` term.
fn push_psi_times(x: &UpClass) -> DownClass {
    let g = x.g;
    let fiber_degree = int(2 * g - 2);
    let mut out = DownClass::zero(g, x.k);
    out.eta = &x.eta * &fiber_degree;
    out.lambda = &x.lambda * &fiber_degree;
    out.delta[0] = &x.delta[0] * &fiber_degree;
    for j in 1..g {
        let target = j.min(g - j) as usize;
        // On delta_j the marked point moves on the genus-j component, where
        // psi has degree 2j - 1. When both components have genus g/2 the
        // point may sit on either one.
        let degree = if 2 * j == g {
            int(2 * g - 2)
        } else {
            int(2 * j - 1)
        };
        out.delta[target] += &x.delta[j as usize] * &degree;
    }
    out
}

/// `pi_*(c1 * c2)` along `PE^k_{g,1} -> PE^k_g`, bilinear in both factors.
/// Monomials without a `psi` factor push forward to zero.
pub fn pushforward_product(c1: &UpClass, c2: &UpClass) -> Result<DownClass> {
    check_context(c1.g, c1.k, c2.g, c2.k)?;
    let strip = |c: &UpClass| UpClass {
        psi: Q::zero(),
        ..c.clone()
    };
    let psi_psi = &kappa_one(c1.g, c1.k) * &(&c1.psi * &c2.psi);
    let left = &push_psi_times(&strip(c2)) * &c1.psi;
    let right = &push_psi_times(&strip(c1)) * &c2.psi;
    Ok(&(&psi_psi + &left) + &right)
}

/// Equality in `Pic(PE^k_g)`: componentwise for `g >= 3`, modulo the
/// relation `10 lambda = delta_0 + 2 delta_1` for `g = 2`.
pub fn classes_equal(c1: &DownClass, c2: &DownClass) -> Result<bool> {
    check_context(c1.g, c1.k, c2.g, c2.k)?;
    if c1.delta.len() != c2.delta.len() {
        return Err(Error::InvalidInput(
            "boundary lists have different lengths".into(),
        ));
    }
    if c1.g != 2 {
        return Ok(c1 == c2);
    }
    let diff = c1 - c2;
    let t = -&diff.delta[0];
    Ok(diff == &DownClass::genus_two_relation(c1.k) * &t)
}

fn write_terms(f: &mut fmt::Formatter<'_>, terms: &[(Q, String)]) -> fmt::Result {
    let mut first = true;
    for (c, name) in terms.iter().filter(|(c, _)| !c.is_zero()) {
        let mag = rational::format(&c.abs());
        let negative = *c < Q::zero();
        match (first, negative) {
            (true, true) => write!(f, "-{mag}*{name}")?,
            (true, false) => write!(f, "{mag}*{name}")?,
            (false, true) => write!(f, " - {mag}*{name}")?,
            (false, false) => write!(f, " + {mag}*{name}")?,
        }
        first = false;
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

fn delta_terms(delta: &[Q]) -> impl Iterator<Item = (Q, String)> + '_ {
    delta
        .iter()
        .enumerate()
        .map(|(i, c)| (c.clone(), format!("delta{i}")))
}

/// ASCII text form, e.g. `-24*eta + 68*lambda - 6*delta0 - 12*delta1`.
impl fmt::Display for DownClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = vec![
            (self.eta.clone(), "eta".to_string()),
            (self.lambda.clone(), "lambda".to_string()),
        ];
        terms.extend(delta_terms(&self.delta));
        write_terms(f, &terms)
    }
}

/// ASCII text form, leading with `psi`, e.g. `2*psi - 1*eta`.
impl fmt::Display for UpClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = vec![
            (self.psi.clone(), "psi".to_string()),
            (self.eta.clone(), "eta".to_string()),
            (self.lambda.clone(), "lambda".to_string()),
        ];
        terms.extend(delta_terms(&self.delta));
        write_terms(f, &terms)
    }
}

pub const SPACE_DOWN: &str = "PEk_g";
pub const SPACE_UP: &str = "PEk_g1";

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CoeffsJson {
    #[serde(with = "rational::serde_q")]
    eta: Q,
    #[serde(with = "rational::serde_q")]
    lambda: Q,
    #[serde(
        default,
        with = "rational::serde_q_opt",
        skip_serializing_if = "Option::is_none"
    )]
    psi: Option<Q>,
    #[serde(with = "rational::serde_q_vec")]
    delta: Vec<Q>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ClassJson {
    space: String,
    g: i64,
    k: i64,
    coeffs: CoeffsJson,
}

impl Serialize for DownClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ClassJson {
            space: SPACE_DOWN.into(),
            g: self.g,
            k: self.k,
            coeffs: CoeffsJson {
                eta: self.eta.clone(),
                lambda: self.lambda.clone(),
                psi: None,
                delta: self.delta.clone(),
            },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for DownClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = ClassJson::deserialize(d)?;
        if j.space != SPACE_DOWN {
            return Err(D::Error::custom(format!(
                "expected space {SPACE_DOWN}, got {}",
                j.space
            )));
        }
        if j.coeffs.psi.is_some() {
            return Err(D::Error::custom("psi is not a generator downstairs"));
        }
        if j.g < 2 || j.coeffs.delta.len() != boundary_count_down(j.g) {
            return Err(D::Error::custom("delta list length does not match genus"));
        }
        Ok(Self {
            g: j.g,
            k: j.k,
            eta: j.coeffs.eta,
            lambda: j.coeffs.lambda,
            delta: j.coeffs.delta,
        })
    }
}

impl Serialize for UpClass {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        ClassJson {
            space: SPACE_UP.into(),
            g: self.g,
            k: self.k,
            coeffs: CoeffsJson {
                eta: self.eta.clone(),
                lambda: self.lambda.clone(),
                psi: Some(self.psi.clone()),
                delta: self.delta.clone(),
            },
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for UpClass {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let j = ClassJson::deserialize(d)?;
        if j.space != SPACE_UP {
            return Err(D::Error::custom(format!(
                "expected space {SPACE_UP}, got {}",
                j.space
            )));
        }
        if j.g < 2 || j.coeffs.delta.len() != j.g as usize {
            return Err(D::Error::custom("delta list length does not match genus"));
        }
        Ok(Self {
            g: j.g,
            k: j.k,
            eta: j.coeffs.eta,
            lambda: j.coeffs.lambda,
            psi: j.coeffs.psi.unwrap_or_else(Q::zero),
            delta: j.coeffs.delta,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn down(g: i64, k: i64, c: &[Q]) -> DownClass {
        DownClass::from_coefficients(g, k, c).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<Q> {
        v.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn weierstrass_pointed_examples() {
        let w2 = weierstrass_pointed_class(2, 1);
        assert_eq!(w2.psi, int(3));
        assert_eq!(w2.lambda, int(-1));
        assert_eq!(w2.delta, ints(&[0, -1]));
        let w3 = weierstrass_pointed_class(3, 1);
        assert_eq!(w3.psi, int(6));
        assert_eq!(w3.delta, ints(&[0, -3, -1]));
        assert!(w3.eta.is_zero());
        for g in 2..10 {
            assert!(weierstrass_pointed_class(g, 1).delta[0].is_zero());
        }
    }

    #[test]
    fn brill_noether_pointed_examples() {
        let b3 = brill_noether_pointed_class(3, 1);
        assert_eq!(b3.lambda, int(6));
        assert_eq!(b3.delta, vec![frac(-2, 3), int(-2), int(-2)]);
        let b4 = brill_noether_pointed_class(4, 1);
        assert_eq!(b4.lambda, int(7));
        assert_eq!(b4.delta, vec![frac(-5, 6), int(-3), int(-4), int(-3)]);
        for g in 2..10 {
            let b = brill_noether_pointed_class(g, 1);
            assert!(b.psi.is_zero() && b.eta.is_zero());
        }
    }

    #[test]
    fn incidence_examples() {
        let i = incidence_class(4, 1);
        assert_eq!((i.psi.clone(), i.eta.clone()), (int(1), int(-1)));
        assert_eq!(incidence_class(2, 2).psi, int(2));
        assert_eq!(incidence_class(5, 3).psi, int(3));
        assert_eq!(incidence_class(5, 3).to_string(), "3*psi - 1*eta");
    }

    #[test]
    fn downstairs_bn_examples() {
        let b3 = downstairs_bn_pullback(3, 1);
        assert_eq!(
            b3.coefficients(),
            vec![int(0), int(6), frac(-2, 3), int(-2)]
        );
        let b4 = downstairs_bn_pullback(4, 1);
        assert_eq!(
            b4.coefficients(),
            vec![int(0), int(7), frac(-5, 6), int(-3), int(-4)]
        );
    }

    #[test]
    fn pushforward_monomials() {
        let g = 3;
        let mut psi = UpClass::zero(g, 1);
        psi.psi = int(1);
        let mut lambda = UpClass::zero(g, 1);
        lambda.lambda = int(1);
        let mut delta0 = UpClass::zero(g, 1);
        delta0.delta[0] = int(1);

        let pl = pushforward_product(&psi, &lambda).unwrap();
        assert_eq!(pl.coefficients(), ints(&[0, 4, 0, 0]));
        let pp = pushforward_product(&psi, &psi).unwrap();
        assert_eq!(pp.coefficients(), ints(&[0, 12, -1, -1]));
        assert!(pushforward_product(&lambda, &delta0).unwrap().is_zero());
    }

    #[test]
    fn pushforward_psi_delta_rules() {
        // Odd genus: delta_j and delta_{g-j} both land on delta_j.
        let g = 5;
        for j in 1..g {
            let mut psi = UpClass::zero(g, 1);
            psi.psi = int(1);
            let mut dj = UpClass::zero(g, 1);
            dj.delta[j as usize] = int(1);
            let out = pushforward_product(&psi, &dj).unwrap();
            let mut expected = DownClass::zero(g, 1);
            expected.delta[j.min(g - j) as usize] = int(2 * j - 1);
            assert_eq!(out, expected, "j = {j}");
        }
        // Even genus, middle index: the point can lie on either half.
        let g = 4;
        let mut psi = UpClass::zero(g, 1);
        psi.psi = int(1);
        let mut d2 = UpClass::zero(g, 1);
        d2.delta[2] = int(1);
        let out = pushforward_product(&psi, &d2).unwrap();
        assert_eq!(out.delta, ints(&[0, 0, 6]));
    }

    #[test]
    fn pushforward_recovers_weierstrass_k_class_genus_three() {
        let out =
            pushforward_product(&incidence_class(3, 1), &weierstrass_pointed_class(3, 1)).unwrap();
        assert_eq!(out.coefficients(), ints(&[-24, 68, -6, -12]));
    }

    #[test]
    fn pushforward_context_mismatch() {
        let err = pushforward_product(&incidence_class(3, 1), &incidence_class(3, 2));
        assert!(matches!(err, Err(Error::ContextMismatch { .. })));
    }

    #[test]
    fn classes_equal_examples() {
        let a = down(2, 2, &ints(&[-2, 12, -1, 0]));
        let b = down(2, 2, &ints(&[-2, 2, 0, 2]));
        assert!(classes_equal(&a, &b).unwrap());
        let c = down(3, 1, &ints(&[-24, 68, -6, -12]));
        assert!(classes_equal(&c, &c).unwrap());
        let d = down(2, 1, &ints(&[0, 12, -1, 0]));
        let e = down(2, 1, &ints(&[0, 12, -2, 0]));
        assert!(!classes_equal(&d, &e).unwrap());
        assert!(classes_equal(&DownClass::genus_two_relation(1), &DownClass::zero(2, 1)).unwrap());
        assert!(classes_equal(&c, &down(3, 2, &ints(&[-24, 68, -6, -12]))).is_err());
    }

    #[test]
    fn reduce_genus_two_kills_delta_one() {
        let raw = down(2, 2, &ints(&[-2, 2, 0, 2]));
        assert_eq!(
            raw.reduce_genus_two().coefficients(),
            ints(&[-2, 12, -1, 0])
        );
    }

    #[test]
    fn descend_rejects_non_pullbacks() {
        assert!(incidence_class(3, 1).descend().is_err());
        let mut asym = UpClass::zero(3, 1);
        asym.delta[1] = int(1);
        assert!(asym.descend().is_err());
    }

    #[test]
    fn text_form() {
        let c = down(3, 1, &ints(&[-24, 68, -6, -12]));
        assert_eq!(c.to_string(), "-24*eta + 68*lambda - 6*delta0 - 12*delta1");
        let b = downstairs_bn_pullback(3, 1);
        assert_eq!(b.to_string(), "6*lambda - 2/3*delta0 - 2*delta1");
        assert_eq!(DownClass::zero(3, 1).to_string(), "0");
    }

    #[test]
    fn json_shape() {
        let c = down(3, 1, &[int(-24), int(68), frac(-3, 2), int(-12)]);
        let s = serde_json::to_string(&c).unwrap();
        assert_eq!(
            s,
            r#"{"space":"PEk_g","g":3,"k":1,"coeffs":{"eta":"-24","lambda":"68","delta":["-3/2","-12"]}}"#
        );
        let up = serde_json::to_string(&incidence_class(2, 2)).unwrap();
        assert_eq!(
            up,
            r#"{"space":"PEk_g1","g":2,"k":2,"coeffs":{"eta":"-1","lambda":"0","psi":"2","delta":["0","0"]}}"#
        );
    }

    #[test]
    fn json_rejects_wrong_shapes() {
        let wrong_space =
            r#"{"space":"PEk_g1","g":3,"k":1,"coeffs":{"eta":"0","lambda":"0","delta":["0","0"]}}"#;
        assert!(serde_json::from_str::<DownClass>(wrong_space).is_err());
        let wrong_len =
            r#"{"space":"PEk_g","g":3,"k":1,"coeffs":{"eta":"0","lambda":"0","delta":["0"]}}"#;
        assert!(serde_json::from_str::<DownClass>(wrong_len).is_err());
    }
}
