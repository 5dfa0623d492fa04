//! Wildcard pattern counts over the letters `{X, Y}` and the substitution
//! `h_{x,y}` that lifts letter strings to binary strings.
//!
//! A pattern may contain the wildcard `J`, which matches either letter. The
//! families `U_r(k)` collect patterns of length at most `k` with exactly `r`
//! letters; two letter strings are `U`-equivalent when every pattern of a
//! family occurs in them equally often (ordinary, ungapped subsequences).

use std::collections::BTreeSet;

use serde::Serialize;

use crate::deck::{verify_eq7_in, Eq7Report, GapParams, Mode};
use crate::error::{Error, Result};
use crate::strings::{BinaryString, Symbol, WildcardString};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "form", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum USetSpec {
    /// `U_r(k)`.
    Single { r: usize, k: usize },
    /// `U(k1, k2) = U_1(k1) ∪ U_2(k2)`.
    Pair { k1: usize, k2: usize },
}

impl USetSpec {
    pub fn validate(&self) -> Result<()> {
        match *self {
            USetSpec::Single { r, k } if r <= k && k <= 16 => Ok(()),
            USetSpec::Pair { k1, k2 } if k1 >= k2 && k2 >= 2 && k1 <= 16 => Ok(()),
            other => Err(Error::InvalidParams(format!("invalid U-set {other:?}"))),
        }
    }
}

/// `N(w, p)`: occurrences of `w` as an ordinary subsequence of the letter
/// string `p`, with `J` matching anything.
pub fn count_wildcard(w: &WildcardString, p: &WildcardString) -> Result<u64> {
    p.ensure_letters()?;
    let mut ways = vec![0u64; w.len() + 1];
    ways[0] = 1;
    for &c in p.symbols() {
        for j in (1..=w.len()).rev() {
            let want = w.symbols()[j - 1];
            if want == Symbol::J || want == c {
                ways[j] = ways[j].checked_add(ways[j - 1]).ok_or(Error::Overflow {
                    level: j,
                    bound: ">2^64".into(),
                })?;
            }
        }
    }
    Ok(ways[w.len()])
}

fn push_u_single(r: usize, k: usize, out: &mut BTreeSet<WildcardString>) {
    // choose letter positions, then letters, for every length r..=k
    fn rec(
        len: usize,
        letters_left: usize,
        cur: &mut Vec<Symbol>,
        out: &mut BTreeSet<WildcardString>,
    ) {
        let slots_left = len - cur.len();
        if slots_left == 0 {
            out.insert(WildcardString::from_symbols(cur.iter().copied()));
            return;
        }
        let choices: &[Symbol] = if letters_left == slots_left {
            &[Symbol::X, Symbol::Y]
        } else if letters_left == 0 {
            &[Symbol::J]
        } else {
            &[Symbol::X, Symbol::Y, Symbol::J]
        };
        for &c in choices {
            cur.push(c);
            let left = if c == Symbol::J {
                letters_left
            } else {
                letters_left - 1
            };
            rec(len, left, cur, out);
            cur.pop();
        }
    }
    for len in r..=k {
        rec(len, r, &mut Vec::with_capacity(len), out);
    }
}

/// All patterns of the family, sorted (`X < Y < J`, shorter first on ties).
pub fn enumerate_u(spec: USetSpec) -> Result<Vec<WildcardString>> {
    spec.validate()?;
    let mut set = BTreeSet::new();
    match spec {
        USetSpec::Single { r, k } => push_u_single(r, k, &mut set),
        USetSpec::Pair { k1, k2 } => {
            push_u_single(1, k1, &mut set);
            push_u_single(2, k2, &mut set);
        }
    }
    Ok(set.into_iter().collect())
}

/// Count vector of `p` over a fixed list of patterns.
pub fn u_signature(p: &WildcardString, family: &[WildcardString]) -> Result<Vec<u64>> {
    family.iter().map(|w| count_wildcard(w, p)).collect()
}

/// `p ~^U q`.
pub fn u_equiv(p: &WildcardString, q: &WildcardString, spec: USetSpec) -> Result<bool> {
    p.ensure_letters()?;
    q.ensure_letters()?;
    let family = enumerate_u(spec)?;
    Ok(u_signature(p, &family)? == u_signature(q, &family)?)
}

/// `x_0 = (0, x, 0)`.
pub fn pad_zero(x: &BinaryString) -> BinaryString {
    let zero = BinaryString::zeros(1);
    zero.concat(x).concat(&zero)
}

/// `h_{x,y}(p)`: each `X` becomes `x_0`, each `Y` becomes `y_0`.
pub fn substitute(p: &WildcardString, x: &BinaryString, y: &BinaryString) -> Result<BinaryString> {
    p.ensure_letters()?;
    let (x0, y0) = (pad_zero(x), pad_zero(y));
    let mut bits = Vec::with_capacity(p.len() * (x.len().max(y.len()) + 2));
    for &c in p.symbols() {
        bits.extend_from_slice(if c == Symbol::X { x0.bits() } else { y0.bits() });
    }
    Ok(BinaryString::from_bits(bits))
}

/// Inputs for the lifting check: binary strings `x`, `y`, letter strings
/// `p`, `q`, depth `k` and offset `sigma` in `{0, 1, 2}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma3Instance {
    pub x: BinaryString,
    pub y: BinaryString,
    pub p: WildcardString,
    pub q: WildcardString,
    pub k: usize,
    pub sigma: usize,
}

impl Lemma3Instance {
    pub fn validate(&self) -> Result<()> {
        self.p.ensure_letters()?;
        self.q.ensure_letters()?;
        if self.x.len() != self.y.len() {
            return Err(Error::LengthMismatch {
                left: self.x.len(),
                right: self.y.len(),
            });
        }
        if self.p.len() != self.q.len() {
            return Err(Error::LengthMismatch {
                left: self.p.len(),
                right: self.q.len(),
            });
        }
        if self.sigma > 2 || self.k == 0 {
            return Err(Error::InvalidParams(format!(
                "need k >= 1 and sigma in 0..=2 (got k={}, sigma={})",
                self.k, self.sigma
            )));
        }
        if self.k + self.sigma < 2 {
            return Err(Error::InvalidParams(format!(
                "U(2k+sigma, k+sigma) needs k+sigma >= 2 (got {})",
                self.k + self.sigma
            )));
        }
        Ok(())
    }

    /// `U(2k + sigma, k + sigma)`.
    pub fn u_spec(&self) -> USetSpec {
        USetSpec::Pair {
            k1: 2 * self.k + self.sigma,
            k2: self.k + self.sigma,
        }
    }

    /// Depth `3k + sigma` of the conclusion.
    pub fn lifted_params(&self) -> Result<GapParams> {
        GapParams::new(2, 3 * self.k + self.sigma)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Lemma3Report {
    /// (a) four-way gapped deck equality of `x`, `y` at depth `k`.
    pub base: Eq7Report,
    /// (b) `p ~^U(2k+sigma, k+sigma) q`.
    pub u_equivalent: bool,
    /// (c) `h(p) != h(q)`.
    pub lifted_distinct: bool,
    /// (d) and (e): the four deck equalities of `h(p)`, `h(q)` at `3k + sigma`.
    pub lifted: Eq7Report,
    /// Count mode that certified the lifted decks.
    pub lifted_mode: &'static str,
    /// `p == q` or `x == y`.
    pub degenerate: bool,
    pub lifted_length: usize,
}

impl Lemma3Report {
    pub fn hypotheses_hold(&self) -> bool {
        self.base.all() && self.u_equivalent && !self.degenerate
    }

    pub fn conclusions_hold(&self) -> bool {
        self.lifted_distinct && self.lifted.all()
    }
}

/// Checks hypotheses and conclusions independently; conclusions are computed
/// even when a hypothesis fails.
pub fn lemma3_check(inst: &Lemma3Instance) -> Result<Lemma3Report> {
    inst.validate()?;
    let base = verify_eq7_in(&inst.x, &inst.y, GapParams::new(2, inst.k)?, &Mode::Exact, 1)?;
    let u_equivalent = u_equiv(&inst.p, &inst.q, inst.u_spec())?;
    let hp = substitute(&inst.p, &inst.x, &inst.y)?;
    let hq = substitute(&inst.q, &inst.x, &inst.y)?;
    let params = inst.lifted_params()?;
    let mode = Mode::auto(hp.len(), params);
    let lifted = if hp.len() >= 2 {
        verify_eq7_in(&hp, &hq, params, &mode, 1)?
    } else {
        Eq7Report {
            params,
            plain_equal: hp == hq,
            lr_equal: false,
            l_equal: false,
            r_equal: false,
        }
    };
    Ok(Lemma3Report {
        base,
        u_equivalent,
        lifted_distinct: hp != hq,
        lifted,
        lifted_mode: mode.name(),
        degenerate: inst.p == inst.q || inst.x == inst.y,
        lifted_length: hp.len(),
    })
}
