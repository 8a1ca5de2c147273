//! Bailey pairs relative to `a = q^e`, the chain step and the lattice step
//! with both free parameters sent to infinity.
//!
//! A pair `(α_n, β_n)_{0 ≤ n ≤ M}` satisfies
//! `β_n = Σ_{j=0}^{n} α_j / ((q;q)_{n-j} (q^{e+1};q)_{n+j})`.
//! Everything is truncated at a common order `N`. Limits `n → ∞` are taken
//! at `n = M` where `M` is large enough that the neglected terms all start
//! above `q^N`.

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qseries::multisum::{LastDenominator, MultiSum, Tables};
use crate::qseries::series::{inv_poch, poch, Count, TruncatedSeries};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaileyPair {
    e: u32,
    alpha: Vec<TruncatedSeries>,
    beta: Vec<TruncatedSeries>,
}

impl BaileyPair {
    /// Wraps raw sequences; both must have the same length and order.
    pub fn from_parts(e: u32, alpha: Vec<TruncatedSeries>, beta: Vec<TruncatedSeries>) -> Result<Self> {
        if alpha.is_empty() || alpha.len() != beta.len() {
            return Err(Error::params("alpha and beta need the same nonzero length"));
        }
        let order = alpha[0].order();
        if alpha.iter().chain(&beta).any(|s| s.order() != order) {
            return Err(Error::params("all terms of a pair share one truncation order"));
        }
        Ok(BaileyPair { e, alpha, beta })
    }

    /// Exponent `e` with `a = q^e`.
    pub fn e(&self) -> u32 {
        self.e
    }

    /// Largest stored index `M`.
    pub fn max_index(&self) -> usize {
        self.alpha.len() - 1
    }

    pub fn order(&self) -> usize {
        self.alpha[0].order()
    }

    pub fn alpha(&self) -> &[TruncatedSeries] {
        &self.alpha
    }

    pub fn beta(&self) -> &[TruncatedSeries] {
        &self.beta
    }

    pub fn into_parts(self) -> (u32, Vec<TruncatedSeries>, Vec<TruncatedSeries>) {
        (self.e, self.alpha, self.beta)
    }
}

/// Smallest `M` with `M(M-1)/2 > N`: beyond it the unit-pair weight
/// `q^{n(n-1)/2}` alone pushes every term past the truncation.
pub fn limit_index(order: usize) -> usize {
    let mut m = 1;
    while m * (m - 1) / 2 <= order {
        m += 1;
    }
    m
}

/// `α_0 = 1`, `α_n = (-1)^n q^{n(n-1)/2} (1 - q^{e+2n}) (q^{e+1};q)_{n-1} / (q;q)_n`,
/// `β_n = δ_{n,0}`. For `e = 0` this is the `a → 1` form with the `(1-a)`
/// pole already cancelled.
pub fn unit_pair(e: u32, max_index: usize, order: usize) -> BaileyPair {
    let e_us = e as usize;
    let mut alpha = Vec::with_capacity(max_index + 1);
    alpha.push(TruncatedSeries::one(order));
    for n in 1..=max_index {
        let mut s = poch(e_us + 1, 1, Count::Finite(n - 1), order).expect("start at least 1");
        s.mul_one_minus_q_pow(e_us + 2 * n);
        s = s.mul_to(&inv_poch(1, 1, Count::Finite(n), order).expect("start 1"), order);
        s = s.shift(n * (n - 1) / 2);
        if n % 2 == 1 {
            s = -&s;
        }
        alpha.push(s);
    }
    let mut beta = vec![TruncatedSeries::zero(order); max_index + 1];
    beta[0] = TruncatedSeries::one(order);
    BaileyPair { e, alpha, beta }
}

/// `(n, power, expected β_n coefficient, stored β_n coefficient)` of the
/// first failure of the defining relation.
pub type Violation = (usize, usize, BigInt, BigInt);

pub fn first_violation(pair: &BaileyPair) -> Option<Violation> {
    let order = pair.order();
    let tables = Tables::new(order);
    let start = pair.e as usize + 1;
    let aq: Vec<TruncatedSeries> = (0..=2 * pair.max_index())
        .map(|k| inv_poch(start, 1, Count::Finite(k), order).expect("start at least 1"))
        .collect();
    for n in 0..=pair.max_index() {
        let mut expected = TruncatedSeries::zero(order);
        for j in 0..=n {
            let t = pair.alpha[j].mul_to(tables.inv_q(n - j), order);
            expected += &t.mul_to(&aq[n + j], order);
        }
        if let Some((k, want, got)) = expected.first_difference(&pair.beta[n]) {
            return Some((n, k, want, got));
        }
    }
    None
}

/// True when the defining relation holds for every stored index.
pub fn verify_pair(pair: &BaileyPair) -> bool {
    first_violation(pair).is_none()
}

/// `α'_n = q^{en+n²} α_n`, `β'_n = Σ_j q^{ej+j²} β_j / (q;q)_{n-j}`; same `a`.
pub fn chain_step(pair: &BaileyPair) -> BaileyPair {
    let order = pair.order();
    let e = pair.e as usize;
    let tables = Tables::new(order);
    let alpha = pair.alpha.iter().enumerate().map(|(n, a)| a.shift(e * n + n * n)).collect();
    let weighted: Vec<TruncatedSeries> =
        pair.beta.iter().enumerate().map(|(j, b)| b.shift(e * j + j * j)).collect();
    let beta = convolve_with_inverse_factorials(&weighted, &tables, order);
    BaileyPair { e: pair.e, alpha, beta }
}

/// The lattice step, giving a pair relative to `q^{e-1}`:
/// `α'_0 = α_0`,
/// `α'_n = (1 - q^e) q^{en+n²-n} (α_n/(1 - q^{e+2n}) - q^{e+2n-2} α_{n-1}/(1 - q^{e+2n-2}))`,
/// `β'_n = Σ_j q^{(e-1)j+j²} β_j / (q;q)_{n-j}`.
pub fn lattice_step(pair: &BaileyPair) -> Result<BaileyPair> {
    if pair.e == 0 {
        return Err(Error::NegativeExponent("a lattice step from a = 1 would need a = q^-1".into()));
    }
    let order = pair.order();
    let e = pair.e as usize;
    let tables = Tables::new(order);
    let mut alpha = Vec::with_capacity(pair.alpha.len());
    alpha.push(pair.alpha[0].clone());
    for n in 1..pair.alpha.len() {
        let mut cur = pair.alpha[n].clone();
        cur.div_one_minus_q_pow(e + 2 * n)?;
        let mut prev = pair.alpha[n - 1].clone();
        prev.div_one_minus_q_pow(e + 2 * n - 2)?;
        let mut s = &cur - &prev.shift(e + 2 * n - 2);
        s.mul_one_minus_q_pow(e);
        alpha.push(s.shift(e * n + n * n - n));
    }
    let weighted: Vec<TruncatedSeries> =
        pair.beta.iter().enumerate().map(|(j, b)| b.shift((e - 1) * j + j * j)).collect();
    let beta = convolve_with_inverse_factorials(&weighted, &tables, order);
    Ok(BaileyPair { e: pair.e - 1, alpha, beta })
}

fn convolve_with_inverse_factorials(
    weighted: &[TruncatedSeries],
    tables: &Tables,
    order: usize,
) -> Vec<TruncatedSeries> {
    (0..weighted.len())
        .map(|n| {
            let mut acc = TruncatedSeries::zero(order);
            for (j, w) in weighted.iter().enumerate().take(n + 1) {
                if !w.is_zero() {
                    acc += &w.mul_to(tables.inv_q(n - j), order);
                }
            }
            acc
        })
        .collect()
}

/// `(q;q)_∞ · lim β'_n` for one more chain step: `Σ_j q^{ej+j²} β_j`.
pub fn chain_limit(pair: &BaileyPair) -> TruncatedSeries {
    let e = pair.e as usize;
    weighted_sum(&pair.beta, |j| e * j + j * j, pair.order())
}

/// `(q;q)_∞ · lim β'_n` for one more lattice step: `Σ_j q^{(e-1)j+j²} β_j`.
pub fn lattice_limit(pair: &BaileyPair) -> Result<TruncatedSeries> {
    if pair.e == 0 {
        return Err(Error::NegativeExponent("lattice limit needs e >= 1".into()));
    }
    let e = pair.e as usize;
    Ok(weighted_sum(&pair.beta, |j| (e - 1) * j + j * j, pair.order()))
}

/// `(q;q)_∞ · lim β_n = Σ_j α_j / (q^{e+1};q)_∞`.
pub fn alpha_limit(pair: &BaileyPair) -> TruncatedSeries {
    let order = pair.order();
    let mut acc = TruncatedSeries::zero(order);
    for a in &pair.alpha {
        acc += a;
    }
    acc.mul_to(&inv_poch(pair.e as usize + 1, 1, Count::Infinite, order).expect("start at least 1"), order)
}

fn weighted_sum(seq: &[TruncatedSeries], exp: impl Fn(usize) -> usize, order: usize) -> TruncatedSeries {
    let mut acc = TruncatedSeries::zero(order);
    for (j, s) in seq.iter().enumerate() {
        acc.add_shifted(s, exp(j));
    }
    acc
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StepKind {
    Chain,
    Lattice,
}

/// `r - i` chain steps, one lattice step, then `i - 1` chain steps; for
/// `i = 0` just `r` chain steps.
pub fn schedule(r: u32, i: u32) -> Vec<StepKind> {
    if i == 0 {
        return vec![StepKind::Chain; r as usize];
    }
    let mut out = vec![StepKind::Chain; (r - i) as usize];
    out.push(StepKind::Lattice);
    out.extend(std::iter::repeat_n(StepKind::Chain, i as usize - 1));
    out
}

#[derive(Debug, Clone, Serialize)]
pub struct StepRecord {
    pub kind: StepKind,
    pub e_before: u32,
    pub verified: bool,
}

/// Outcome of running a schedule from the unit pair.
#[derive(Debug, Clone, Serialize)]
pub struct Pipeline {
    pub r: u32,
    pub i: u32,
    pub e: u32,
    pub order: usize,
    /// Index at which `n → ∞` is taken.
    pub limit_index: usize,
    pub unit_verified: bool,
    pub steps: Vec<StepRecord>,
    /// `(q)_∞ lim β` after the last step, from the `β` side of the
    /// previous pair.
    pub beta_limit: TruncatedSeries,
    /// The same quantity from the `α` side of the final pair.
    pub alpha_limit: TruncatedSeries,
    /// The multi-sum the schedule should produce.
    pub multisum: TruncatedSeries,
    /// The closed form obtained by substituting the unit pair by hand.
    pub closed_form: TruncatedSeries,
}

impl Pipeline {
    pub fn all_steps_verified(&self) -> bool {
        self.unit_verified && self.steps.iter().all(|s| s.verified)
    }

    /// First disagreement among the four evaluations, labelled.
    pub fn first_mismatch(&self) -> Option<(&'static str, usize, BigInt, BigInt)> {
        let pairs = [
            ("alpha limit", &self.alpha_limit),
            ("multi-sum", &self.multisum),
            ("closed form", &self.closed_form),
        ];
        pairs
            .into_iter()
            .find_map(|(label, s)| self.beta_limit.first_difference(s).map(|(k, a, b)| (label, k, a, b)))
    }

    pub fn passes(&self) -> bool {
        self.all_steps_verified() && self.first_mismatch().is_none()
    }
}

fn check_schedule(r: u32, i: u32, e: u32) -> Result<()> {
    if r < 1 || i > r {
        return Err(Error::params(format!("schedule needs r >= 1 and 0 <= i <= r, got r={r} i={i}")));
    }
    if i >= 1 && e == 0 {
        return Err(Error::NegativeExponent("a lattice step needs e >= 1".into()));
    }
    Ok(())
}

/// Runs [`schedule`] on the unit pair at `a = q^e`, checking the pair after
/// every step, and evaluates the `n → ∞` relation four ways.
pub fn run_pipeline(r: u32, i: u32, e: u32, order: usize) -> Result<Pipeline> {
    check_schedule(r, i, e)?;
    let m = limit_index(order);
    let unit = unit_pair(e, m, order);
    let unit_verified = verify_pair(&unit);
    let kinds = schedule(r, i);
    let mut pair = unit;
    let mut steps = Vec::with_capacity(kinds.len());
    let mut beta_limit = TruncatedSeries::zero(order);
    for (idx, &kind) in kinds.iter().enumerate() {
        if idx + 1 == kinds.len() {
            beta_limit = match kind {
                StepKind::Chain => chain_limit(&pair),
                StepKind::Lattice => lattice_limit(&pair)?,
            };
        }
        let e_before = pair.e;
        pair = match kind {
            StepKind::Chain => chain_step(&pair),
            StepKind::Lattice => lattice_step(&pair)?,
        };
        steps.push(StepRecord { kind, e_before, verified: verify_pair(&pair) });
    }
    Ok(Pipeline {
        r,
        i,
        e,
        order,
        limit_index: m,
        unit_verified,
        steps,
        beta_limit,
        alpha_limit: alpha_limit(&pair),
        multisum: schedule_multisum(r, i, e, order)?,
        closed_form: schedule_closed_form(r, i, e, order)?,
    })
}

/// `Σ_{s_1 ≥ … ≥ s_{r-1} ≥ 0} q^{Σ s_j² + Σ (e - [j ≤ i]) s_j} / ((q)_{s_1-s_2} ⋯ (q)_{s_{r-1}})`,
/// the left side produced by the schedule from the unit pair.
pub fn schedule_multisum(r: u32, i: u32, e: u32, order: usize) -> Result<TruncatedSeries> {
    check_schedule(r, i, e)?;
    let linear = (1..r).map(|j| i64::from(e) - i64::from(j <= i)).collect();
    Ok(MultiSum::new(linear, LastDenominator::Q)?.evaluate(order))
}

/// The right side with the unit pair substituted directly:
/// for `i = 0`, `Σ_j q^{r(ej+j²)} α_j / (q^{e+1})_∞`; otherwise
/// `(α_0 + Σ_{j≥1} (1-a) a^{ij} q^{i(j²-j)} (a^{(r-i)j} q^{(r-i)j²} α_j/(1-aq^{2j})
///  - a^{(r-i)(j-1)+1} q^{(r-i)(j-1)²+2j-2} α_{j-1}/(1-aq^{2j-2}))) / (a)_∞`.
pub fn schedule_closed_form(r: u32, i: u32, e: u32, order: usize) -> Result<TruncatedSeries> {
    check_schedule(r, i, e)?;
    let m = limit_index(order);
    let unit = unit_pair(e, m + 1, order);
    let alpha = &unit.alpha;
    let (r, i, e) = (r as usize, i as usize, e as usize);
    let mut acc = TruncatedSeries::zero(order);
    if i == 0 {
        for (j, a) in alpha.iter().enumerate() {
            acc.add_shifted(a, r * (e * j + j * j));
        }
        return Ok(acc.mul_to(&inv_poch(e + 1, 1, Count::Infinite, order)?, order));
    }
    let k = r - i;
    acc += &alpha[0];
    for j in 1..alpha.len() {
        let mut first = alpha[j].clone();
        first.div_one_minus_q_pow(e + 2 * j)?;
        let first = first.shift(k * (e * j + j * j));
        let mut second = alpha[j - 1].clone();
        second.div_one_minus_q_pow(e + 2 * j - 2)?;
        let second = second.shift(e * (k * (j - 1) + 1) + k * (j - 1) * (j - 1) + 2 * j - 2);
        let mut term = &first - &second;
        term.mul_one_minus_q_pow(e);
        acc.add_shifted(&term, i * (e * j + j * j - j));
    }
    Ok(acc.mul_to(&inv_poch(e, 1, Count::Infinite, order)?, order))
}

/// `S_i(q) = (i + 1 + Σ_{j≥1} (-1)^j q^{rj² - ij + j(j-1)/2} (1 - q^{(2i+2)j})/(1 - q^j)) / (q)_∞`,
/// built from the `a = 1` unit pair as `q^{rj² - ij} α_j (1 - q^{(2i+2)j}) / (1 - q^{2j})`.
pub fn derive_si(r: u32, i: u32, order: usize) -> Result<TruncatedSeries> {
    if r < 1 || i >= r {
        return Err(Error::params(format!("needs r >= 1 and 0 <= i <= r-1, got r={r} i={i}")));
    }
    let (r, i) = (r as usize, i as usize);
    let m = limit_index(order);
    let unit = unit_pair(0, m, order);
    let mut acc = TruncatedSeries::monomial(0, BigInt::from(i + 1), order);
    for j in 1..=m {
        let mut t = unit.alpha[j].clone();
        t.mul_one_minus_q_pow((2 * i + 2) * j);
        t.div_one_minus_q_pow(2 * j)?;
        acc.add_shifted(&t, r * j * j - i * j);
    }
    Ok(acc.mul_to(&inv_poch(1, 1, Count::Infinite, order)?, order))
}
