//! Closed-form and recursive upper bounds on the shortest confusable length.

use serde::Serialize;

use crate::error::{Error, Result};

/// Minimum confusable lengths under the 2-gapped deck for `k = 2, 3, 4`,
/// obtained by exhaustive search.
pub const EXACT_VALUES: [(u32, u128); 3] = [(2, 6), (3, 13), (4, 24)];

/// Classical (ungapped) values for `k = 2, 3, 4`.
pub const UNGAPPED_EXACT_VALUES: [(u32, u128); 3] = [(2, 4), (3, 7), (4, 12)];

/// Smallest depth for which [`closed_form_bound`] is stated.
pub const CLOSED_FORM_MIN_K: u32 = 28;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FormulaId {
    Exact,
    Padded,
    SPadded,
    DudikSu,
    Kappa,
    CorollaryRec,
    ClosedForm,
    UngappedReference,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rounding {
    /// Integer arithmetic throughout.
    Exact,
    Floor,
    /// Round up to the next integer.
    Ceiling,
    /// Plain double, not rounded.
    None,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum BoundValue {
    Integer(u128),
    Float(f64),
}

impl BoundValue {
    pub fn as_integer(&self) -> Option<u128> {
        match *self {
            BoundValue::Integer(v) => Some(v),
            BoundValue::Float(_) => None,
        }
    }
}

impl std::fmt::Display for BoundValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            BoundValue::Integer(v) => write!(f, "{v}"),
            BoundValue::Float(v) => write!(f, "{v:.6e}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub k: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k1: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k2: Option<u32>,
    pub value: BoundValue,
    pub formula_id: FormulaId,
    pub rounding: Rounding,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

impl BoundReport {
    fn new(k: u32, value: BoundValue, formula_id: FormulaId, rounding: Rounding) -> Self {
        Self {
            k,
            s: None,
            k1: None,
            k2: None,
            value,
            formula_id,
            rounding,
            note: None,
        }
    }
}

fn overflow(what: &str) -> Error {
    Error::InvalidParams(format!("{what} does not fit in 128 bits"))
}

/// `4(2^k - 1) - 2`, the trimmed padded Morse-Thue length.
pub fn padded_bound(k: u32) -> Result<u128> {
    Ok(padded_untrimmed(k)? - 2)
}

/// `4(2^k - 1)`, the untrimmed padded length (bound on the four-way variant).
pub fn padded_untrimmed(k: u32) -> Result<u128> {
    if k == 0 {
        return Err(Error::InvalidParams("k must be at least 1".into()));
    }
    1u128
        .checked_shl(k)
        .filter(|_| k < 125)
        .map(|p| 4 * (p - 1))
        .ok_or_else(|| overflow("4(2^k-1)"))
}

/// `(5s - 2) 2^(k-1) - 5s + 4`.
pub fn s_padded_bound(s: u32, k: u32) -> Result<u128> {
    if s < 2 || k == 0 {
        return Err(Error::InvalidParams(format!(
            "need s >= 2 and k >= 1 (got s={s}, k={k})"
        )));
    }
    let s = u128::from(s);
    let power = 1u128
        .checked_shl(k - 1)
        .filter(|_| k < 120)
        .ok_or_else(|| overflow("2^(k-1)"))?;
    (5 * s - 2)
        .checked_mul(power)
        .map(|v| v + 4 - 5 * s)
        .ok_or_else(|| overflow("(5s-2)2^(k-1)"))
}

/// `k1^2 + k2^2 (k2 - 1) / 2`.
pub fn kappa(k1: u32, k2: u32) -> Result<u128> {
    if k2 < 2 {
        return Err(Error::InvalidParams(format!("need k2 >= 2, got {k2}")));
    }
    let (a, b) = (u128::from(k1), u128::from(k2));
    Ok(a * a + b * b * (b - 1) / 2)
}

/// `floor(kappa (lg kappa + lg lg kappa + 1))`, base-2 logarithms in double
/// precision.
pub fn dudik_su_bound(k1: u32, k2: u32) -> Result<u128> {
    if k1 < k2 || k2 < 2 {
        return Err(Error::InvalidParams(format!(
            "need k1 >= k2 >= 2 (got {k1}, {k2})"
        )));
    }
    let kap = kappa(k1, k2)? as f64;
    let lg = kap.log2();
    Ok((kap * (lg + lg.log2() + 1.0)).floor() as u128)
}

/// Whether the corollary recursion uses only `k = floor(K/3)`,
/// `sigma = K mod 3` or also larger depths `K' >= K` of every residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Decomposition {
    #[default]
    Canonical,
    Exhaustive,
}

/// Upper bound on the four-way confusable length at depth `K` from the
/// recursion `G*(3k + sigma) <= (G*(k) + 2) S_U(2k + sigma, k + sigma)`,
/// with `S_U` replaced by [`dudik_su_bound`] and `4(2^K - 1)` as base case
/// and fallback.
pub fn corollary_rec_bound(big_k: u32) -> Result<u128> {
    corollary_rec_bound_with(big_k, Decomposition::Canonical)
}

pub fn corollary_rec_bound_with(big_k: u32, how: Decomposition) -> Result<u128> {
    if big_k == 0 {
        return Err(Error::InvalidParams("K must be at least 1".into()));
    }
    let mut memo = std::collections::HashMap::new();
    rec(big_k, how, &mut memo)
}

fn rec(
    big_k: u32,
    how: Decomposition,
    memo: &mut std::collections::HashMap<u32, u128>,
) -> Result<u128> {
    if let Some(&v) = memo.get(&big_k) {
        return Ok(v);
    }
    let padded = padded_untrimmed(big_k).unwrap_or(u128::MAX);
    let value = if big_k <= 4 {
        padded
    } else {
        let mut best = padded;
        let candidates: Vec<u32> = match how {
            Decomposition::Canonical => vec![big_k],
            // a pair agreeing at depth K' >= K also agrees at depth K
            Decomposition::Exhaustive => (big_k..big_k + 3).collect(),
        };
        for target in candidates {
            let (k, sigma) = (target / 3, target % 3);
            if k + sigma < 2 || k == 0 {
                continue;
            }
            let inner = rec(k, how, memo)?;
            let su = dudik_su_bound(2 * k + sigma, k + sigma)?;
            if let Some(v) = (inner + 2).checked_mul(su) {
                best = best.min(v);
            }
        }
        best
    };
    memo.insert(big_k, value);
    Ok(value)
}

/// `1.482 * 1.26^k * k^3 * log_3(k/3) - 2` for `k >= 28`, rounded up.
pub fn closed_form_bound(k: u32) -> Result<u128> {
    if k < CLOSED_FORM_MIN_K {
        return Err(Error::InvalidParams(format!(
            "closed form holds for k >= {CLOSED_FORM_MIN_K}; use padded_bound for k={k}"
        )));
    }
    Ok(closed_form_value(k).ceil() as u128)
}

/// The closed-form expression in double precision, before rounding.
pub fn closed_form_value(k: u32) -> f64 {
    let k = f64::from(k);
    1.482 * 1.26f64.powf(k) * k.powi(3) * ((k / 3.0).ln() / 3f64.ln()) - 2.0
}

/// Classical reference `1.2 Γ(log_3 k) 3^((3/2) log_3^2 k - (1/2) log_3 k)`,
/// stated for `k >= 85`.
pub fn ungapped_reference(k: u32) -> Result<BoundReport> {
    if k < 85 {
        return Err(Error::InvalidParams(format!(
            "ungapped reference bound is stated for k >= 85, got {k}"
        )));
    }
    let l = f64::from(k).ln() / 3f64.ln();
    let value = 1.2 * statrs::function::gamma::gamma(l) * 3f64.powf(1.5 * l * l - 0.5 * l);
    Ok(BoundReport::new(
        k,
        BoundValue::Float(value),
        FormulaId::UngappedReference,
        Rounding::None,
    ))
}

/// The best bound for depth `k`: exact search values for `k <= 4`, the
/// padded construction `4(2^k - 1)` up to 27 and the closed form beyond.
pub fn best_bound(k: u32) -> Result<BoundReport> {
    if k < 2 {
        return Err(Error::InvalidParams(format!("best_bound needs k >= 2, got {k}")));
    }
    if let Some(&(_, v)) = EXACT_VALUES.iter().find(|(kk, _)| *kk == k) {
        return Ok(BoundReport::new(
            k,
            BoundValue::Integer(v),
            FormulaId::Exact,
            Rounding::Exact,
        ));
    }
    if k < CLOSED_FORM_MIN_K {
        let mut report = BoundReport::new(
            k,
            BoundValue::Integer(padded_untrimmed(k)?),
            FormulaId::Padded,
            Rounding::Exact,
        );
        report.note = Some(format!(
            "summary row lists 4(2^k-1); the trimmed construction gives {}",
            padded_bound(k)?
        ));
        return Ok(report);
    }
    Ok(BoundReport::new(
        k,
        BoundValue::Integer(closed_form_bound(k)?),
        FormulaId::ClosedForm,
        Rounding::Ceiling,
    ))
}

/// Depths covered by the large-`k` table.
pub const TABLE2_DEPTHS: std::ops::RangeInclusive<u32> = 28..=33;

pub fn table2() -> Vec<BoundReport> {
    TABLE2_DEPTHS
        .map(|k| best_bound(k).expect("k >= 28"))
        .collect()
}

pub fn report_padded(k: u32) -> Result<BoundReport> {
    let mut r = BoundReport::new(
        k,
        BoundValue::Integer(padded_bound(k)?),
        FormulaId::Padded,
        Rounding::Exact,
    );
    r.note = Some(format!("untrimmed four-way bound {}", padded_untrimmed(k)?));
    Ok(r)
}

pub fn report_s_padded(s: u32, k: u32) -> Result<BoundReport> {
    let mut r = BoundReport::new(
        k,
        BoundValue::Integer(s_padded_bound(s, k)?),
        FormulaId::SPadded,
        Rounding::Exact,
    );
    r.s = Some(s);
    Ok(r)
}

pub fn report_kappa(k1: u32, k2: u32) -> Result<BoundReport> {
    let mut r = BoundReport::new(
        k1,
        BoundValue::Integer(kappa(k1, k2)?),
        FormulaId::Kappa,
        Rounding::Exact,
    );
    (r.k1, r.k2) = (Some(k1), Some(k2));
    Ok(r)
}

pub fn report_dudik(k1: u32, k2: u32) -> Result<BoundReport> {
    let mut r = BoundReport::new(
        k1,
        BoundValue::Integer(dudik_su_bound(k1, k2)?),
        FormulaId::DudikSu,
        Rounding::Floor,
    );
    (r.k1, r.k2) = (Some(k1), Some(k2));
    Ok(r)
}

pub fn report_corollary(k: u32, how: Decomposition) -> Result<BoundReport> {
    let mut r = BoundReport::new(
        k,
        BoundValue::Integer(corollary_rec_bound_with(k, how)?),
        FormulaId::CorollaryRec,
        Rounding::Floor,
    );
    if how == Decomposition::Exhaustive {
        r.note = Some("minimum over depths K..K+2".into());
    }
    Ok(r)
}

pub fn report_closed_form(k: u32) -> Result<BoundReport> {
    Ok(BoundReport::new(
        k,
        BoundValue::Integer(closed_form_bound(k)?),
        FormulaId::ClosedForm,
        Rounding::Ceiling,
    ))
}
