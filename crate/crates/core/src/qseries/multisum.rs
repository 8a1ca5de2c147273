//! Truncated evaluation of Andrews–Gordon style multi-sums
//!
//! `Σ_{s_1 ≥ … ≥ s_v ≥ 0} q^{Σ s_j² + Σ a_j s_j} (1 - q^{g(s)})
//!     / ((q)_{s_1-s_2} ⋯ (q)_{s_{v-1}-s_v} · D(s_v))`
//!
//! where `D` is `(q;q)_{s_v}` or `(q²;q²)_{s_v}`.

use crate::error::{Error, Result};

use super::series::{inv_poch, Count, TruncatedSeries};

/// Denominator attached to the last summation variable.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LastDenominator {
    /// `(q;q)_{s_v}`
    Q,
    /// `(q²;q²)_{s_v}`
    Q2,
}

/// Exponent `g(s)` of an optional `(1 - q^{g(s)})` factor; 0 kills the term.
pub type FactorFn = Box<dyn Fn(&[usize]) -> usize + Send + Sync>;

pub struct MultiSum {
    linear: Vec<i64>,
    last: LastDenominator,
    factor: Option<FactorFn>,
}

impl MultiSum {
    /// `linear[j]` is the coefficient `a_{j+1}`; each must be at least -1 so
    /// that every summand exponent is nonnegative and monotone in each variable.
    pub fn new(linear: Vec<i64>, last: LastDenominator) -> Result<Self> {
        if let Some(a) = linear.iter().find(|&&a| a < -1) {
            return Err(Error::NegativeExponent(format!("linear coefficient {a} in a multi-sum exponent")));
        }
        Ok(MultiSum { linear, last, factor: None })
    }

    pub fn with_factor(mut self, factor: FactorFn) -> Self {
        self.factor = Some(factor);
        self
    }

    pub fn vars(&self) -> usize {
        self.linear.len()
    }

    pub fn evaluate(&self, order: usize) -> TruncatedSeries {
        let mut out = TruncatedSeries::zero(order);
        if self.linear.is_empty() {
            // the empty sum has a single term with no factor
            return TruncatedSeries::one(order);
        }
        let tables = Tables::new(order);
        walk_descending(&self.linear, order, |s, exp| self.leaf(order, &tables, s, exp, &mut out))
            .expect("coefficients checked at construction");
        out
    }

    fn leaf(&self, order: usize, tables: &Tables, s: &[usize], exp: usize, out: &mut TruncatedSeries) {
        let room = order - exp;
        let mut term = match self.last {
            LastDenominator::Q => tables.inv_q(s[s.len() - 1]).truncate(room),
            LastDenominator::Q2 => tables.inv_q2(s[s.len() - 1]).truncate(room),
        };
        for w in s.windows(2) {
            let d = w[0] - w[1];
            if d > 0 {
                term = term.mul_to(tables.inv_q(d), room);
            }
        }
        if let Some(g) = &self.factor {
            let g = g(s);
            if g == 0 {
                return;
            }
            term.mul_one_minus_q_pow(g);
        }
        out.add_shifted(&term, exp);
    }
}

/// Calls `f(s, e)` for every `s_1 ≥ … ≥ s_v ≥ 0` whose exponent
/// `e = Σ s_j² + Σ a_j s_j` is at most `order`.
pub fn walk_descending(linear: &[i64], order: usize, mut f: impl FnMut(&[usize], usize)) -> Result<()> {
    if let Some(a) = linear.iter().find(|&&a| a < -1) {
        return Err(Error::NegativeExponent(format!("linear coefficient {a} in a multi-sum exponent")));
    }
    let mut s = Vec::with_capacity(linear.len());
    descend(linear, order, &mut s, 0, &mut f);
    Ok(())
}

fn descend(
    linear: &[i64],
    order: usize,
    s: &mut Vec<usize>,
    exp: usize,
    f: &mut impl FnMut(&[usize], usize),
) {
    let k = s.len();
    if k == linear.len() {
        f(s, exp);
        return;
    }
    let cap = s.last().copied().unwrap_or(usize::MAX);
    let a = linear[k];
    let mut v = 0usize;
    while v <= cap {
        let e = exp as i64 + (v * v) as i64 + a * v as i64;
        if e > order as i64 {
            // s² + a s is nondecreasing in s for a ≥ -1
            break;
        }
        s.push(v);
        descend(linear, order, s, e as usize, f);
        s.pop();
        v += 1;
    }
}

/// `1/(q;q)_d` and `1/(q²;q²)_d` for every `d` that can matter at a given order.
pub(crate) struct Tables {
    inv_q: Vec<TruncatedSeries>,
    inv_q2: Vec<TruncatedSeries>,
}

impl Tables {
    pub(crate) fn new(order: usize) -> Self {
        // factors (1 - q^e) with e > order are 1 modulo q^{order+1}
        let build = |step: usize| {
            let mut v = Vec::with_capacity(order + 1);
            let mut cur = TruncatedSeries::one(order);
            v.push(cur.clone());
            for d in 1..=order {
                if d * step <= order {
                    cur.div_one_minus_q_pow(d * step).expect("positive exponent");
                }
                v.push(cur.clone());
            }
            v
        };
        Tables { inv_q: build(1), inv_q2: build(2) }
    }

    pub(crate) fn inv_q(&self, d: usize) -> &TruncatedSeries {
        &self.inv_q[d.min(self.inv_q.len() - 1)]
    }

    pub(crate) fn inv_q2(&self, d: usize) -> &TruncatedSeries {
        &self.inv_q2[d.min(self.inv_q2.len() - 1)]
    }
}

/// `1/(q;q)_d` straight from the product, for callers outside the engine.
pub fn inv_q_factorial_table(order: usize) -> Vec<TruncatedSeries> {
    (0..=order).map(|d| inv_poch(1, 1, Count::Finite(d), order).expect("valid start")).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partition::partitions;

    fn ints(s: &TruncatedSeries) -> Vec<i64> {
        s.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn rogers_ramanujan_sum_side() {
        let s = MultiSum::new(vec![0], LastDenominator::Q).unwrap().evaluate(8);
        assert_eq!(ints(&s), [1, 1, 1, 1, 2, 2, 3, 3, 4]);
    }

    #[test]
    fn single_variable_with_linear_term_counts_gap_two_partitions_without_ones() {
        let n = 14;
        let s = MultiSum::new(vec![1], LastDenominator::Q).unwrap().evaluate(n);
        for w in 0..=n {
            let brute = partitions(w as u32)
                .filter(|p| p.smallest() != 1 && p.parts().windows(2).all(|x| x[0] - x[1] >= 2))
                .count();
            assert_eq!(s.coeff(w), brute.into(), "weight {w}");
        }
    }

    #[test]
    fn no_variables_gives_one() {
        let s = MultiSum::new(vec![], LastDenominator::Q).unwrap().evaluate(5);
        assert_eq!(s, TruncatedSeries::one(5));
    }

    #[test]
    fn rejects_steep_linear_terms() {
        assert!(matches!(MultiSum::new(vec![-2], LastDenominator::Q), Err(Error::NegativeExponent(_))));
    }

    #[test]
    fn zero_factor_drops_terms() {
        let all = MultiSum::new(vec![-1], LastDenominator::Q).unwrap().evaluate(10);
        let cut =
            MultiSum::new(vec![-1], LastDenominator::Q).unwrap().with_factor(Box::new(|s| s[0])).evaluate(10);
        // Σ q^{s²-s}(1-q^s)/(q)_s drops the s = 0 term and the (1-q^s) cancels
        let mut expected = TruncatedSeries::zero(10);
        let table = inv_q_factorial_table(10);
        for s in 1..5usize {
            expected.add_shifted(&table[s - 1], s * s - s);
        }
        assert_eq!(cut, expected);
        assert_ne!(all, cut);
    }

    #[test]
    fn tables_match_direct_products() {
        let t = Tables::new(12);
        let direct = inv_q_factorial_table(12);
        for (d, row) in direct.iter().enumerate() {
            assert_eq!(t.inv_q(d), row);
            assert_eq!(t.inv_q2(d), &inv_poch(2, 2, Count::Finite(d), 12).unwrap());
        }
    }
}
