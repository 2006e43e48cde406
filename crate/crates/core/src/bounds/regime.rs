//! Coefficient comparisons between the support-based bounds and the
//! classical ones, decided in exact integer arithmetic.
//!
//! For a unit cost vector and `n >= s` the Δ_m form beats the Cook bound as
//! soon as `s C(s+m,m)^{1/2} / 2^{s-m-1} <= s - m`, since `n - m >= s - m`.
//! For costs with `‖c‖₂ = ‖c‖∞` the Δ_1 form beats the EW bound for every
//! `Δ_1` as soon as `s (s+m)^{m/2} / 2^{s-m-1} <= m (2m)^m`, because
//! `m (2m)^m Δ_1^m <= m (2mΔ_1 + 1)^m`. Both are squared before comparing.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde::Serialize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RegimeForm {
    /// Δ_m form against Cook, grid `s >= 4m`.
    DeltaMVersusCook,
    /// Δ_1 form against EW, grid `s >= 6m`.
    Delta1VersusEw,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RegimeRow {
    pub form: RegimeForm,
    pub m: u32,
    pub s: u32,
    /// Left-hand coefficient, for display.
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

fn binomial(n: u32, k: u32) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

fn ratio(num: &BigInt, den: &BigInt) -> f64 {
    // both sides may exceed f64 range; compare through logarithms of bit lengths
    let shift = num.bits().max(den.bits()).saturating_sub(1000);
    let n = (num >> shift).to_f64().unwrap_or(f64::INFINITY);
    let d = (den >> shift).to_f64().unwrap_or(f64::INFINITY);
    n / d
}

/// `(lhs², rhs², 4^{s-m-1})` so that the comparison is `lhs² <= rhs² 4^{s-m-1}`.
fn squared_sides(form: RegimeForm, m: u32, s: u32) -> (BigInt, BigInt, BigInt) {
    let s_big = BigInt::from(s);
    let pow4 = BigInt::one() << (2 * (s - m - 1));
    match form {
        RegimeForm::DeltaMVersusCook => {
            let lhs = &s_big * &s_big * binomial(s + m, m);
            let d = BigInt::from(s - m);
            (lhs, &d * &d, pow4)
        }
        RegimeForm::Delta1VersusEw => {
            let lhs = &s_big * &s_big * BigInt::from(s + m).pow(m);
            let r = BigInt::from(m) * BigInt::from(2 * m).pow(m);
            (lhs, &r * &r, pow4)
        }
    }
}

pub fn regime_row(form: RegimeForm, m: u32, s: u32) -> RegimeRow {
    assert!(m >= 1 && s > m, "need s > m >= 1");
    let (lhs2, rhs2, pow4) = squared_sides(form, m, s);
    let holds = lhs2 <= &rhs2 * &pow4;
    RegimeRow {
        form,
        m,
        s,
        lhs: ratio(&lhs2, &pow4).sqrt(),
        rhs: rhs2.to_f64().unwrap_or(f64::INFINITY).sqrt(),
        holds,
    }
}

/// Rows for `m` in `ms` and `s` from `4m` (resp. `6m`) through `+ span`.
pub fn regime_comparisons(ms: std::ops::RangeInclusive<u32>, span: u32) -> Vec<RegimeRow> {
    let mut rows = Vec::new();
    for (form, mult) in [(RegimeForm::DeltaMVersusCook, 4), (RegimeForm::Delta1VersusEw, 6)] {
        for m in ms.clone() {
            for s in mult * m..=mult * m + span {
                rows.push(regime_row(form, m, s));
            }
        }
    }
    rows
}
