//! Sum and product sides of the Rogers–Ramanujan family of identities,
//! together with the generating functions of the dissection classes.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;

use crate::error::{Error, Result};

use super::multisum::{walk_descending, LastDenominator, MultiSum, Tables};
use super::series::{inv_poch, poch, q_factorial_ratio, qbinom, Count, TruncatedSeries};

/// Identity family, without parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum IdentityKind {
    #[serde(rename = "RR1")]
    Rr1,
    #[serde(rename = "RR2")]
    Rr2,
    #[serde(rename = "AG")]
    Ag,
    #[serde(rename = "AGP")]
    Agp,
    #[serde(rename = "BR33")]
    Br33,
    #[serde(rename = "BR35")]
    Br35,
    #[serde(rename = "EVEN_B")]
    EvenB,
    #[serde(rename = "AGPB")]
    Agpb,
    #[serde(rename = "JTP")]
    Jtp,
    #[serde(rename = "GEN_A")]
    GenA,
    #[serde(rename = "GEN_B")]
    GenB,
    #[serde(rename = "GEN_D")]
    GenD,
}

impl IdentityKind {
    pub const ALL: [IdentityKind; 12] = [
        IdentityKind::Rr1,
        IdentityKind::Rr2,
        IdentityKind::Ag,
        IdentityKind::Agp,
        IdentityKind::Br33,
        IdentityKind::Br35,
        IdentityKind::EvenB,
        IdentityKind::Agpb,
        IdentityKind::Jtp,
        IdentityKind::GenA,
        IdentityKind::GenB,
        IdentityKind::GenD,
    ];

    pub fn name(self) -> &'static str {
        match self {
            IdentityKind::Rr1 => "RR1",
            IdentityKind::Rr2 => "RR2",
            IdentityKind::Ag => "AG",
            IdentityKind::Agp => "AGP",
            IdentityKind::Br33 => "BR33",
            IdentityKind::Br35 => "BR35",
            IdentityKind::EvenB => "EVEN_B",
            IdentityKind::Agpb => "AGPB",
            IdentityKind::Jtp => "JTP",
            IdentityKind::GenA => "GEN_A",
            IdentityKind::GenB => "GEN_B",
            IdentityKind::GenD => "GEN_D",
        }
    }

    /// Admissible `(r, i)` pairs for `r` in `2..=r_max`; empty for `RR*` and `JTP`.
    pub fn grid(self, r_max: u32) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for r in 2..=r_max {
            let range = match self {
                IdentityKind::Rr1 | IdentityKind::Rr2 | IdentityKind::Jtp => return Vec::new(),
                IdentityKind::Ag | IdentityKind::GenA | IdentityKind::GenB | IdentityKind::GenD => 1..=r,
                IdentityKind::Agp | IdentityKind::Br33 | IdentityKind::Br35 | IdentityKind::EvenB => {
                    0..=r - 1
                }
                IdentityKind::Agpb => 2..=r - 1,
            };
            out.extend(range.map(|i| (r, i)));
        }
        out
    }
}

impl fmt::Display for IdentityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for IdentityKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let up = s.trim().to_ascii_uppercase().replace('-', "_");
        IdentityKind::ALL
            .into_iter()
            .find(|k| k.name() == up)
            .ok_or_else(|| Error::params(format!("unknown identity {s:?}")))
    }
}

/// A fully parameterised identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "identity")]
pub enum Identity {
    #[serde(rename = "RR1")]
    Rr1,
    #[serde(rename = "RR2")]
    Rr2,
    /// Andrews–Gordon, `r ≥ 1`, `1 ≤ i ≤ r`.
    #[serde(rename = "AG")]
    Ag { r: u32, i: u32 },
    /// The single-product shifted form, `r ≥ 1`, `0 ≤ i ≤ r-1`.
    #[serde(rename = "AGP")]
    Agp { r: u32, i: u32 },
    /// Sum of `i+1` triple products, `0 ≤ i ≤ r-1`. The uncorrected variant
    /// shifts every product residue up by one.
    #[serde(rename = "BR33")]
    Br33 { r: u32, i: u32, uncorrected: bool },
    /// Even-modulus analogue of `Br33`, `r ≥ 2`, `0 ≤ i ≤ r-1`.
    #[serde(rename = "BR35")]
    Br35 { r: u32, i: u32 },
    /// Even-modulus Andrews–Gordon, `r ≥ 2`, `0 ≤ i ≤ r-1`.
    #[serde(rename = "EVEN_B")]
    EvenB { r: u32, i: u32 },
    /// Even-modulus shifted form, `r ≥ 3`, `2 ≤ i ≤ r-1`.
    #[serde(rename = "AGPB")]
    Agpb { r: u32, i: u32 },
    /// Jacobi triple product with `q → q^step`, `z = q^z`, `1 ≤ z < step`.
    #[serde(rename = "JTP")]
    Jtp { z: u32, step: u32 },
    /// Generating function of the vertical-rectangle class.
    #[serde(rename = "GEN_A")]
    GenA { r: u32, i: u32 },
    /// Generating function of the bottom-dissection class.
    #[serde(rename = "GEN_B")]
    GenB { r: u32, i: u32 },
    /// Generating function of the horizontal-rectangle class.
    #[serde(rename = "GEN_D")]
    GenD { r: u32, i: u32 },
}

impl Identity {
    /// Builds the identity of `kind`. `r, i` are ignored for `RR*`; for
    /// `JTP` they are read as `(step, z)`.
    pub fn new(kind: IdentityKind, r: u32, i: u32) -> Result<Self> {
        let id = match kind {
            IdentityKind::Rr1 => Identity::Rr1,
            IdentityKind::Rr2 => Identity::Rr2,
            IdentityKind::Ag => Identity::Ag { r, i },
            IdentityKind::Agp => Identity::Agp { r, i },
            IdentityKind::Br33 => Identity::Br33 { r, i, uncorrected: false },
            IdentityKind::Br35 => Identity::Br35 { r, i },
            IdentityKind::EvenB => Identity::EvenB { r, i },
            IdentityKind::Agpb => Identity::Agpb { r, i },
            IdentityKind::Jtp => Identity::Jtp { z: i, step: r },
            IdentityKind::GenA => Identity::GenA { r, i },
            IdentityKind::GenB => Identity::GenB { r, i },
            IdentityKind::GenD => Identity::GenD { r, i },
        };
        id.validate()?;
        Ok(id)
    }

    pub fn kind(&self) -> IdentityKind {
        match self {
            Identity::Rr1 => IdentityKind::Rr1,
            Identity::Rr2 => IdentityKind::Rr2,
            Identity::Ag { .. } => IdentityKind::Ag,
            Identity::Agp { .. } => IdentityKind::Agp,
            Identity::Br33 { .. } => IdentityKind::Br33,
            Identity::Br35 { .. } => IdentityKind::Br35,
            Identity::EvenB { .. } => IdentityKind::EvenB,
            Identity::Agpb { .. } => IdentityKind::Agpb,
            Identity::Jtp { .. } => IdentityKind::Jtp,
            Identity::GenA { .. } => IdentityKind::GenA,
            Identity::GenB { .. } => IdentityKind::GenB,
            Identity::GenD { .. } => IdentityKind::GenD,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |what: &str| Err(Error::params(format!("{self}: {what}")));
        match *self {
            Identity::Rr1 | Identity::Rr2 => Ok(()),
            Identity::Ag { r, i } => {
                if r < 1 || i < 1 || i > r {
                    return bad("needs r >= 1 and 1 <= i <= r");
                }
                Ok(())
            }
            Identity::Agp { r, i } | Identity::Br33 { r, i, .. } => {
                if r < 1 || i >= r {
                    return bad("needs r >= 1 and 0 <= i <= r-1");
                }
                Ok(())
            }
            Identity::Br35 { r, i } | Identity::EvenB { r, i } => {
                if r < 2 || i >= r {
                    return bad("needs r >= 2 and 0 <= i <= r-1");
                }
                Ok(())
            }
            Identity::Agpb { r, i } => {
                if r < 3 || i < 2 || i >= r {
                    return bad("needs r >= 3 and 2 <= i <= r-1");
                }
                Ok(())
            }
            Identity::Jtp { z, step } => {
                if step < 1 || z < 1 || z > step {
                    return Err(Error::NegativeExponent(format!("{self}: needs 1 <= z <= step")));
                }
                Ok(())
            }
            Identity::GenA { r, i } | Identity::GenB { r, i } | Identity::GenD { r, i } => {
                if r < 2 || i < 1 || i > r {
                    return bad("needs r >= 2 and 1 <= i <= r");
                }
                Ok(())
            }
        }
    }

    pub fn sum_side(&self, order: usize) -> Result<TruncatedSeries> {
        self.validate()?;
        let s = match *self {
            Identity::Rr1 => MultiSum::new(vec![0], LastDenominator::Q)?.evaluate(order),
            Identity::Rr2 => MultiSum::new(vec![1], LastDenominator::Q)?.evaluate(order),
            Identity::Ag { r, i } => ag_sum(r, i, order),
            Identity::GenA { r, i } => ag_qbinom_sum(r, i, order),
            Identity::Agp { r, i } => agp_sum(r, i, order),
            Identity::Br33 { r, i, .. } => shifted_sum(r, i, LastDenominator::Q, order),
            Identity::Br35 { r, i } => shifted_sum(r, i, LastDenominator::Q2, order),
            Identity::EvenB { r, i } => {
                let linear = (1..r).map(|j| i64::from(j >= r - i)).collect();
                MultiSum::new(linear, LastDenominator::Q2)?.evaluate(order)
            }
            Identity::Agpb { r, i } => {
                let linear = (1..r).map(|j| -i64::from(j <= i)).collect();
                let (a, b) = (i as usize - 1, i as usize - 2);
                MultiSum::new(linear, LastDenominator::Q2)?
                    .with_factor(Box::new(move |s| s[a] + s[b]))
                    .evaluate(order)
            }
            Identity::Jtp { z, step } => bilateral_theta(i64::from(z), step, order)?,
            Identity::GenB { r, i } => bottom_gf(r, i, order),
            Identity::GenD { r, i } => agp_sum(r, r - i, order),
        };
        Ok(s)
    }

    pub fn product_side(&self, order: usize) -> Result<TruncatedSeries> {
        self.validate()?;
        match *self {
            Identity::Rr1 => triple_quotient(5, 2, order),
            Identity::Rr2 => triple_quotient(5, 1, order),
            Identity::Ag { r, i }
            | Identity::GenA { r, i }
            | Identity::GenB { r, i }
            | Identity::GenD { r, i } => triple_quotient(2 * r + 1, i, order),
            Identity::Agp { r, i } => triple_quotient(2 * r + 1, r - i, order),
            Identity::Br33 { r, i, uncorrected } => {
                let shift = u32::from(uncorrected);
                let mut acc = TruncatedSeries::zero(order);
                for k in 0..=i {
                    acc += &triple_quotient(2 * r + 1, r - i + k + shift, order)?;
                }
                Ok(acc)
            }
            Identity::Br35 { r, i } => {
                let mut acc = TruncatedSeries::zero(order);
                for k in 0..=i {
                    acc += &triple_quotient(2 * r, r - i + 2 * k, order)?;
                }
                Ok(acc)
            }
            Identity::EvenB { r, i } => triple_quotient(2 * r, r - i, order),
            Identity::Agpb { r, i } => Ok(triple_quotient(2 * r, r - i, order)?.scale_i64(2)),
            Identity::Jtp { z, step } => {
                if z == step {
                    // the factor (q^0; q^step)_∞ vanishes
                    return Ok(TruncatedSeries::zero(order));
                }
                let mut p = poch(step as usize, step as usize, Count::Infinite, order)?;
                p = p.mul_to(&poch(z as usize, step as usize, Count::Infinite, order)?, order);
                Ok(p.mul_to(&poch((step - z) as usize, step as usize, Count::Infinite, order)?, order))
            }
        }
    }

    /// First coefficient where the two sides disagree, as
    /// `(power, sum side, product side)`.
    pub fn first_mismatch(&self, order: usize) -> Result<Option<(usize, BigInt, BigInt)>> {
        let lhs = self.sum_side(order)?;
        let rhs = self.product_side(order)?;
        Ok(lhs.first_difference(&rhs))
    }
}

impl fmt::Display for Identity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Identity::Rr1 => f.write_str("RR1"),
            Identity::Rr2 => f.write_str("RR2"),
            Identity::Br33 { r, i, uncorrected: true } => write!(f, "BR33(r={r}, i={i}, uncorrected)"),
            Identity::Jtp { z, step } => write!(f, "JTP(z={z}, step={step})"),
            Identity::Ag { r, i }
            | Identity::Agp { r, i }
            | Identity::Br33 { r, i, .. }
            | Identity::Br35 { r, i }
            | Identity::EvenB { r, i }
            | Identity::Agpb { r, i }
            | Identity::GenA { r, i }
            | Identity::GenB { r, i }
            | Identity::GenD { r, i } => write!(f, "{}(r={r}, i={i})", self.kind()),
        }
    }
}

/// `Σ q^{Σ n_j² + n_i + … + n_{r-1}} / ((q)_{n_1-n_2} ⋯ (q)_{n_{r-1}})`.
pub fn ag_sum(r: u32, i: u32, order: usize) -> TruncatedSeries {
    let linear = (1..r).map(|j| i64::from(j >= i)).collect();
    MultiSum::new(linear, LastDenominator::Q).expect("nonnegative").evaluate(order)
}

/// `Σ q^{Σ s_j² - s_1 - … - s_i} (1 - q^{s_i}) / (…)`; no factor when `i = 0`.
pub fn agp_sum(r: u32, i: u32, order: usize) -> TruncatedSeries {
    let linear = (1..r).map(|j| -i64::from(j <= i)).collect();
    let sum = MultiSum::new(linear, LastDenominator::Q).expect("at least -1");
    if i == 0 {
        return sum.evaluate(order);
    }
    let idx = i as usize - 1;
    sum.with_factor(Box::new(move |s| s[idx])).evaluate(order)
}

/// `Σ q^{Σ s_j² - s_1 - … - s_i} / (…)` with the given last denominator.
pub fn shifted_sum(r: u32, i: u32, last: LastDenominator, order: usize) -> TruncatedSeries {
    let linear = (1..r).map(|j| -i64::from(j <= i)).collect();
    MultiSum::new(linear, last).expect("at least -1").evaluate(order)
}

/// The same sum as [`ag_sum`] written with `1/(q)_{n_1}` and Gaussian binomials.
pub fn ag_qbinom_sum(r: u32, i: u32, order: usize) -> TruncatedSeries {
    let linear: Vec<i64> = (1..r).map(|j| i64::from(j >= i)).collect();
    let tables = Tables::new(order);
    let mut out = TruncatedSeries::zero(order);
    if linear.is_empty() {
        return TruncatedSeries::one(order);
    }
    walk_descending(&linear, order, |n, exp| {
        let room = order - exp;
        let mut term = tables.inv_q(n[0]).truncate(room);
        for w in n.windows(2) {
            term = term.mul_to(&qbinom(w[0] as i64, w[1] as i64, room), room);
        }
        out.add_shifted(&term, exp);
    })
    .expect("nonnegative");
    out
}

/// The class generating function for horizontal-rectangle dissections written
/// with `1/(q)_{d_1-1}` and Gaussian binomials, where `1/(q)_{-1} = 0`.
pub fn durfee_qbinom_sum(r: u32, i: u32, order: usize) -> TruncatedSeries {
    let rects = (r - i) as usize;
    let linear: Vec<i64> = (1..r).map(|j| -i64::from(j as usize <= rects)).collect();
    if linear.is_empty() {
        return TruncatedSeries::one(order);
    }
    let tables = Tables::new(order);
    let mut out = TruncatedSeries::zero(order);
    walk_descending(&linear, order, |d, exp| {
        let room = order - exp;
        let mut term = if rects == 0 {
            tables.inv_q(d[0]).truncate(room)
        } else if d[0] == 0 {
            return;
        } else {
            tables.inv_q(d[0] - 1).truncate(room)
        };
        for (j, w) in d.windows(2).enumerate() {
            // window j couples d_{j+1} and d_{j+2}
            let (a, b) = (w[0] as i64, w[1] as i64);
            let binom = if j + 1 < rects { qbinom(a - 1, b - 1, room) } else { qbinom(a, b, room) };
            term = term.mul_to(&binom, room);
        }
        out.add_shifted(&term, exp);
    })
    .expect("at least -1");
    out
}

/// Walks `m_k ≥ … ≥ m_1 ≥ 1` (stored as `m[0] = m_k`) with a running
/// lower bound on the exponent: `Σ_{ℓ<k} (m_ℓ² - [ℓ ≥ i] m_ℓ) + m_k`.
fn walk_bottom(
    k: usize,
    i: usize,
    order: usize,
    m: &mut Vec<usize>,
    base: usize,
    f: &mut impl FnMut(&[usize], usize),
) {
    let depth = m.len();
    if depth == k {
        f(m, base);
        return;
    }
    let cap = m.last().copied().unwrap_or(order.max(1));
    // depth 0 chooses m_k; depth d chooses m_{k-d}
    let ell = k - depth;
    for v in 1..=cap {
        let add = if depth == 0 {
            v
        } else if ell >= i {
            v * v - v
        } else {
            v * v
        };
        if base + add > order {
            // `add` is nondecreasing in v
            break;
        }
        m.push(v);
        walk_bottom(k, i, order, m, base + add, f);
        m.pop();
    }
}

/// The simplified generating function of the bottom-dissection class.
pub fn bottom_gf(r: u32, i: u32, order: usize) -> TruncatedSeries {
    let (r, i) = (r as usize, i as usize);
    let tables = Tables::new(order);
    let mut out = TruncatedSeries::one(order);
    // inner Σ_{m=1}^{top} q^{m·mk}/(q)_{m-1}, truncated at `room`
    let inner = |mk: usize, top: usize, room: usize| {
        let mut s = TruncatedSeries::zero(room);
        for m in 1..=top {
            if m * mk > room {
                break;
            }
            s.add_shifted(&tables.inv_q(m - 1).truncate(room), m * mk);
        }
        s
    };
    for k in 1..r {
        let mut m = Vec::with_capacity(k);
        let first_part = k < i;
        walk_bottom(k, if first_part { usize::MAX } else { i }, order, &mut m, 0, &mut |m, _| {
            // m[0] = m_k, …, m[k-1] = m_1
            let mk = m[0];
            let m1 = m[k - 1];
            let at = |ell: usize| m[k - ell];
            let mut exp: usize = (1..k).map(|l| at(l) * at(l)).sum();
            if !first_part {
                exp -= (i..k).map(at).sum::<usize>();
                if at(i) == 1 || mk < 2 {
                    return;
                }
            }
            if exp + mk > order {
                return;
            }
            let room = order - exp;
            let mut term = if first_part { inner(mk, mk, room) } else { inner(mk, mk - 1, room) };
            let ratio = if first_part {
                q_factorial_ratio(mk - 1, m1 - 1, room)
            } else {
                q_factorial_ratio(mk - 2, m1 - 1, room)
            };
            term = term.mul_to(&ratio, room);
            for l in 1..k {
                term = term.mul_to(tables.inv_q(at(l + 1) - at(l)), room);
            }
            if !first_part {
                term.mul_one_minus_q_pow(at(i) - 1);
            }
            out.add_shifted(&term, exp);
        });
    }
    out
}

/// The bottom-dissection generating function written with Gaussian binomials.
pub fn bottom_qbinom_gf(r: u32, i: u32, order: usize) -> TruncatedSeries {
    let (r, i) = (r as usize, i as usize);
    let tables = Tables::new(order);
    let mut out = TruncatedSeries::one(order);
    for k in 1..r {
        let first_part = k < i;
        let mut m = Vec::with_capacity(k);
        walk_bottom(k, if first_part { usize::MAX } else { i }, order, &mut m, 0, &mut |m, _| {
            let mk = m[0];
            let at = |ell: usize| m[k - ell];
            let mut exp: usize = (1..k).map(|l| at(l) * at(l)).sum();
            if !first_part {
                exp -= (i..k).map(at).sum::<usize>();
            }
            if exp + mk > order {
                return;
            }
            let room = order - exp;
            let top = if first_part { mk } else { mk - 1 };
            let mut term = TruncatedSeries::zero(room);
            for mm in 1..=top {
                if mm * mk > room {
                    break;
                }
                term.add_shifted(&tables.inv_q(mm - 1).truncate(room), mm * mk);
            }
            for l in 1..k {
                let (hi, lo) = (at(l + 1) as i64, at(l) as i64);
                let binom = if first_part || l < i {
                    qbinom(hi - 1, lo - 1, room)
                } else {
                    qbinom(hi - 2, lo - 2, room)
                };
                term = term.mul_to(&binom, room);
            }
            out.add_shifted(&term, exp);
        });
    }
    out
}

/// `(q^m, q^a, q^{m-a}; q^m)_∞ / (q;q)_∞` for `0 < a < m`.
pub fn triple_quotient(m: u32, a: u32, order: usize) -> Result<TruncatedSeries> {
    if a == 0 || a >= m {
        return Err(Error::params(format!("triple product residue {a} outside 1..{m}")));
    }
    let (m, a) = (m as usize, a as usize);
    let mut p = poch(m, m, Count::Infinite, order)?;
    p = p.mul_to(&poch(a, m, Count::Infinite, order)?, order);
    p = p.mul_to(&poch(m - a, m, Count::Infinite, order)?, order);
    Ok(p.mul_to(&inv_poch(1, 1, Count::Infinite, order)?, order))
}

/// `∏ 1/(1 - q^n)` over `n ≥ 1` with `n ≢ 0, ±a (mod m)`.
pub fn excluded_residue_product(m: u32, a: u32, order: usize) -> TruncatedSeries {
    let (m, a) = (m as usize, a as usize % m as usize);
    let mut s = TruncatedSeries::one(order);
    for n in 1..=order {
        let res = n % m;
        if res == 0 || res == a || res == (m - a) % m {
            continue;
        }
        s.div_one_minus_q_pow(n).expect("positive exponent");
    }
    s
}

/// `Σ_{j ∈ ℤ} (-1)^j q^{step·j(j-1)/2 + z·j}`, truncated at `order`.
pub fn bilateral_theta(z: i64, step: u32, order: usize) -> Result<TruncatedSeries> {
    let step_i = i64::from(step);
    if step == 0 || z < 1 || z > step_i {
        return Err(Error::NegativeExponent(format!(
            "theta sum with z = {z}, step = {step} needs 1 <= z <= step"
        )));
    }
    let mut s = TruncatedSeries::zero(order);
    let exponent = |j: i64| step_i * j * (j - 1) / 2 + z * j;
    for dir in [1i64, -1] {
        let mut j = if dir == 1 { 0 } else { -1 };
        loop {
            let e = exponent(j);
            if e > order as i64 {
                break;
            }
            let sign = if j % 2 == 0 { 1 } else { -1 };
            s.add_shifted(&TruncatedSeries::monomial(0, BigInt::from(sign), 0), e as usize);
            j += dir;
        }
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn rogers_ramanujan_both_sides() {
        assert_eq!(ints(&Identity::Rr1.sum_side(8).unwrap()), [1, 1, 1, 1, 2, 2, 3, 3, 4]);
        assert_eq!(Identity::Rr1.first_mismatch(40).unwrap(), None);
        assert_eq!(Identity::Rr2.first_mismatch(40).unwrap(), None);
    }

    #[test]
    fn congruence_product_matches_triple_product() {
        for (m, a) in [(5, 1), (5, 2), (7, 3), (9, 2), (8, 3)] {
            assert_eq!(excluded_residue_product(m, a, 30), triple_quotient(m, a, 30).unwrap(), "m={m} a={a}");
        }
    }

    #[test]
    fn theta_sum_matches_product() {
        for (z, step) in [(1, 5), (2, 5), (2, 3), (3, 7), (1, 1)] {
            let id = Identity::Jtp { z, step };
            assert_eq!(id.first_mismatch(40).unwrap(), None, "{id}");
        }
        assert_eq!(bilateral_theta(1, 3, 0).unwrap(), TruncatedSeries::one(0));
        assert!(matches!(bilateral_theta(6, 5, 10), Err(Error::NegativeExponent(_))));
        assert!(bilateral_theta(0, 5, 10).is_err());
    }

    #[test]
    fn shifted_form_at_zero_is_andrews_gordon_top_case() {
        for r in 1..=4 {
            assert_eq!(agp_sum(r, 0, 30), ag_sum(r, r, 30));
        }
    }

    #[test]
    fn parameter_ranges() {
        assert!(Identity::new(IdentityKind::Ag, 3, 0).is_err());
        assert!(Identity::new(IdentityKind::Agp, 3, 3).is_err());
        assert!(Identity::new(IdentityKind::Agpb, 3, 1).is_err());
        assert!(Identity::new(IdentityKind::EvenB, 1, 0).is_err());
        assert!(Identity::new(IdentityKind::Agp, 3, 0).is_ok());
    }

    #[test]
    fn kinds_parse_by_name() {
        for k in IdentityKind::ALL {
            assert_eq!(k.name().parse::<IdentityKind>().unwrap(), k);
        }
        assert_eq!("even-b".parse::<IdentityKind>().unwrap(), IdentityKind::EvenB);
        assert!("XYZ".parse::<IdentityKind>().is_err());
    }

    #[test]
    fn small_identities_hold() {
        let order = 30;
        for kind in IdentityKind::ALL {
            for (r, i) in kind.grid(3) {
                let id = Identity::new(kind, r, i).unwrap();
                assert_eq!(id.first_mismatch(order).unwrap(), None, "{id}");
            }
        }
    }

    #[test]
    fn qbinom_forms_agree_with_simplified_forms() {
        let order = 30;
        for r in 2..=4 {
            for i in 1..=r {
                assert_eq!(ag_qbinom_sum(r, i, order), ag_sum(r, i, order), "A r={r} i={i}");
                assert_eq!(durfee_qbinom_sum(r, i, order), agp_sum(r, r - i, order), "D r={r} i={i}");
                assert_eq!(bottom_qbinom_gf(r, i, order), bottom_gf(r, i, order), "B r={r} i={i}");
            }
        }
    }
}
