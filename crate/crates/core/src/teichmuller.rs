//! Intersection numbers of Teichmuller curves inside the incidence divisor
//! `H^k_{g,1}` for `k = 1, 2`, and the per-curve scaling `d` that keeps
//! `C . (H + d A) <= 0` for an ample class `A`.
//!
//! Curve invariants (`chi`, the Lyapunov sum `L`, the Siegel-Veech constant
//! `c_SV`) are inputs. For abelian differentials in the principal stratum
//! they are tied by `c_SV = L - (g-1)/4`.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, frac, int, Q};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TeichCurve {
    pub k: i64,
    pub g: i64,
    #[serde(with = "rational::serde_q")]
    pub chi: Q,
    #[serde(
        rename = "L",
        default,
        with = "rational::serde_q_opt",
        skip_serializing_if = "Option::is_none"
    )]
    pub lyapunov_sum: Option<Q>,
    #[serde(
        default,
        with = "rational::serde_q_opt",
        skip_serializing_if = "Option::is_none"
    )]
    pub c_sv: Option<Q>,
}

impl TeichCurve {
    /// Validates and completes the curve data. For `k = 1` either `L` or
    /// `c_SV` may be given and the other is derived.
    pub fn new(k: i64, g: i64, chi: Q, lyapunov_sum: Option<Q>, c_sv: Option<Q>) -> Result<Self> {
        Self {
            k,
            g,
            chi,
            lyapunov_sum,
            c_sv,
        }
        .validated()
    }

    pub fn validated(mut self) -> Result<Self> {
        if self.g < 2 {
            return Err(Error::GenusTooSmall { g: self.g, min: 2 });
        }
        match self.k {
            1 => {
                let shift = frac(self.g - 1, 4);
                let l = match (&self.lyapunov_sum, &self.c_sv) {
                    (Some(l), Some(c)) => {
                        if *c != l - &shift {
                            return Err(Error::InvalidInput(format!(
                                "c_sv = {} disagrees with L - (g-1)/4 = {}",
                                rational::format(c),
                                rational::format(&(l - &shift))
                            )));
                        }
                        l.clone()
                    }
                    (Some(l), None) => l.clone(),
                    (None, Some(c)) => c + &shift,
                    (None, None) => return Err(Error::MissingParameter("L")),
                };
                if l < Q::zero() || l > int(self.g) {
                    return Err(Error::InvalidInput(format!(
                        "Lyapunov sum L = {} outside [0, {}]",
                        rational::format(&l),
                        self.g
                    )));
                }
                self.c_sv = Some(&l - shift);
                self.lyapunov_sum = Some(l);
            }
            2 => {
                if self.c_sv.is_none() {
                    return Err(Error::MissingParameter("c_sv"));
                }
            }
            k => return Err(Error::InvalidInput(format!("k must be 1 or 2, got {k}"))),
        }
        Ok(self)
    }

    fn lyapunov(&self) -> Result<&Q> {
        self.lyapunov_sum
            .as_ref()
            .ok_or(Error::MissingParameter("L"))
    }

    fn siegel_veech(&self) -> Result<&Q> {
        self.c_sv.as_ref().ok_or(Error::MissingParameter("c_sv"))
    }
}

/// `C . generator` for an abelian Teichmuller curve (`k = 1`).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AbelianTable {
    #[serde(with = "rational::serde_q")]
    pub lambda: Q,
    #[serde(with = "rational::serde_q")]
    pub delta0: Q,
    #[serde(with = "rational::serde_q")]
    pub psi: Q,
    #[serde(with = "rational::serde_q")]
    pub eta: Q,
    #[serde(rename = "H", with = "rational::serde_q")]
    pub incidence: Q,
}

/// `C . generator` for a quadratic Teichmuller curve (`k = 2`); `delta` is
/// the total boundary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuadraticTable {
    #[serde(with = "rational::serde_q")]
    pub lambda: Q,
    #[serde(with = "rational::serde_q")]
    pub delta: Q,
    #[serde(with = "rational::serde_q")]
    pub psi: Q,
    #[serde(with = "rational::serde_q")]
    pub eta: Q,
    #[serde(rename = "H", with = "rational::serde_q")]
    pub incidence: Q,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Intersections {
    Abelian(AbelianTable),
    Quadratic(QuadraticTable),
}

impl Intersections {
    pub fn incidence(&self) -> &Q {
        match self {
            Self::Abelian(t) => &t.incidence,
            Self::Quadratic(t) => &t.incidence,
        }
    }

    pub fn psi(&self) -> &Q {
        match self {
            Self::Abelian(t) => &t.psi,
            Self::Quadratic(t) => &t.psi,
        }
    }

    pub fn eta(&self) -> &Q {
        match self {
            Self::Abelian(t) => &t.eta,
            Self::Quadratic(t) => &t.eta,
        }
    }

    /// All entries in a fixed order, for linearity checks.
    pub fn values(&self) -> Vec<Q> {
        match self {
            Self::Abelian(t) => vec![
                t.lambda.clone(),
                t.delta0.clone(),
                t.psi.clone(),
                t.eta.clone(),
                t.incidence.clone(),
            ],
            Self::Quadratic(t) => vec![
                t.lambda.clone(),
                t.delta.clone(),
                t.psi.clone(),
                t.eta.clone(),
                t.incidence.clone(),
            ],
        }
    }
}

/// Intersection numbers of `C` with the generators and with the incidence
/// divisor `H = k psi - eta`.
pub fn intersections(tc: &TeichCurve) -> Result<Intersections> {
    let chi = &tc.chi;
    let g = tc.g;
    let (table, closed_form) = match tc.k {
        1 => {
            let l = tc.lyapunov()?;
            let psi = -chi / int(4);
            let eta = -chi / int(2);
            let incidence = &psi - &eta;
            let t = AbelianTable {
                lambda: -(chi * l) / int(2),
                delta0: -(frac(3, 2) * chi) * (int(4) * l - int(g) + Q::one()),
                psi,
                eta,
                incidence,
            };
            (Intersections::Abelian(t), chi / int(4))
        }
        2 => {
            let c = tc.siegel_veech()?;
            let psi = -chi / int(3);
            let eta = -chi.clone();
            let incidence = int(2) * &psi - &eta;
            let t = QuadraticTable {
                lambda: -(chi / int(36)) * (int(18) * c + int(5 * (g - 1))),
                delta: -(int(6) * chi * c),
                psi,
                eta,
                incidence,
            };
            (Intersections::Quadratic(t), chi / int(3))
        }
        k => return Err(Error::InvalidInput(format!("k must be 1 or 2, got {k}"))),
    };
    if *table.incidence() != closed_form {
        return Err(Error::Invariant(
            "C . H disagrees with its closed form".into(),
        ));
    }
    Ok(table)
}

/// Checks `C . psi = 2 (C . lambda - C . delta_0 / 12) / (g - 1)` for `k = 1`.
pub fn consistency_psi(tc: &TeichCurve) -> Result<bool> {
    let Intersections::Abelian(t) = intersections(tc)? else {
        return Err(Error::Unsupported(
            "the psi identity is stated for k = 1".into(),
        ));
    };
    let rhs = int(2) * (&t.lambda - &t.delta0 / int(12)) / int(tc.g - 1);
    Ok(rhs == t.psi)
}

/// Ample class `c_eta eta + c_lambda lambda + c_psi psi + sum c_i delta_i`
/// on `PE^k_{g,1}`, with `c_delta = (c_0, ..., c_{g-1})`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AmpleVector {
    pub c_eta: Q,
    pub c_lambda: Q,
    pub c_psi: Q,
    pub c_delta: Vec<Q>,
}

impl AmpleVector {
    /// From the flat list `(eta, lambda, psi, delta_0, ..., delta_{g-1})`.
    pub fn from_list(g: i64, v: &[Q]) -> Result<Self> {
        if g < 2 || v.len() != 3 + g as usize {
            return Err(Error::InvalidInput(format!(
                "ample vector for g = {g} needs {} entries (eta, lambda, psi, delta_0..delta_{}), got {}",
                3 + g.max(0),
                g - 1,
                v.len()
            )));
        }
        Ok(Self {
            c_eta: v[0].clone(),
            c_lambda: v[1].clone(),
            c_psi: v[2].clone(),
            c_delta: v[3..].to_vec(),
        })
    }

    fn c_delta_max(&self) -> Q {
        self.c_delta.iter().max().cloned().unwrap_or_else(Q::zero)
    }
}

fn abelian_threshold(g: i64, l: &Q, ample: &AmpleVector) -> Result<Q> {
    let c0 = &ample.c_delta[0];
    let denom = int(2) * &ample.c_eta + &ample.c_psi - int(6 * (g - 1)) * c0
        + int(2) * l * (&ample.c_lambda + int(12) * c0);
    if denom.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(denom.recip())
}

/// The `d` solving `C . (H + d A) = 0` for one curve. Not necessarily
/// positive; callers decide what to do with nonpositive values.
pub fn threshold_d(tc: &TeichCurve, ample: &AmpleVector) -> Result<Q> {
    if ample.c_delta.len() != tc.g as usize {
        return Err(Error::InvalidInput(format!(
            "ample vector has {} boundary entries, genus {} needs {}",
            ample.c_delta.len(),
            tc.g,
            tc.g
        )));
    }
    match tc.k {
        1 => abelian_threshold(tc.g, tc.lyapunov()?, ample),
        2 => {
            let c = tc.siegel_veech()?;
            let denom = int(36) * &ample.c_eta
                + int(12) * &ample.c_psi
                + int(5 * (tc.g - 1)) * &ample.c_lambda
                + c * (int(18) * &ample.c_lambda + int(216) * ample.c_delta_max());
            if denom.is_zero() {
                return Err(Error::ZeroDenominator);
            }
            Ok(int(12) / denom)
        }
        k => Err(Error::InvalidInput(format!("k must be 1 or 2, got {k}"))),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThresholdSummary {
    #[serde(with = "rational::serde_q")]
    pub infimum: Q,
    pub positive: bool,
    /// For `k = 1`: the threshold at `L = 0` and `L = g`, `None` where the
    /// expression has a pole.
    #[serde(
        default,
        with = "rational::serde_q_opt",
        skip_serializing_if = "Option::is_none"
    )]
    pub at_lyapunov_min: Option<Q>,
    #[serde(
        default,
        with = "rational::serde_q_opt",
        skip_serializing_if = "Option::is_none"
    )]
    pub at_lyapunov_max: Option<Q>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extremes_positive: Option<bool>,
}

/// Minimum of [`threshold_d`] over a family of curves sharing `(k, g)`.
pub fn infimum_threshold(curves: &[TeichCurve], ample: &AmpleVector) -> Result<ThresholdSummary> {
    let first = curves
        .first()
        .ok_or_else(|| Error::InvalidInput("curve family is empty".into()))?;
    if curves.iter().any(|c| c.k != first.k || c.g != first.g) {
        return Err(Error::InvalidInput("curves must share k and g".into()));
    }
    let values = curves
        .iter()
        .map(|c| threshold_d(c, ample))
        .collect::<Result<Vec<_>>>()?;
    let infimum = values.into_iter().min().expect("nonempty");
    let positive = infimum > Q::zero();

    let mut summary = ThresholdSummary {
        infimum,
        positive,
        at_lyapunov_min: None,
        at_lyapunov_max: None,
        extremes_positive: None,
    };
    if first.k == 1 {
        // 1/d is affine in L, so over 0 <= L <= g the extremes bound every curve.
        let lo = abelian_threshold(first.g, &Q::zero(), ample).ok();
        let hi = abelian_threshold(first.g, &int(first.g), ample).ok();
        let ok = |v: &Option<Q>| v.as_ref().is_some_and(|x| *x > Q::zero());
        summary.extremes_positive = Some(ok(&lo) && ok(&hi));
        summary.at_lyapunov_min = lo;
        summary.at_lyapunov_max = hi;
    }
    Ok(summary)
}
