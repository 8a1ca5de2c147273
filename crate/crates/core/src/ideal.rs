//! Monomials in `K[x_1, x_2, …]` with `x_j` of weight `j`, read as
//! partitions, and the ideal `I_{r,i}` generated by `x_1^i` and the block
//! monomials
//!
//! `x_{n_{1,1}} · x_{n_{2,1}} ⋯ x_{n_{2,f(2)}} ⋯ x_{n_{r,1}} ⋯ x_{n_{r,f(r)}}`
//!
//! where `f(1) = 1`, `f(j) = n_{j-1,f(j-1)}` for `2 ≤ j ≤ i` and
//! `f(j) = n_{j-1,f(j-1)} - 1` for `j > i`.
//!
//! Block patterns are matched against the parts of a partition sorted in
//! ascending order, each block being a run of consecutive picks.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use crate::classes::{check_params, classify_transition, durfee_dissection};
use crate::dissection::BlockKind;
use crate::error::{Error, Result};
use crate::partition::Partition;

/// The block length `f(j)` given `anchor = n_{j-1,f(j-1)}` (ignored for `j = 1`).
pub fn f_val(r: u32, i: u32, j: u32, anchor: u32) -> Result<u32> {
    check_params(r, i)?;
    if j < 1 || j > r {
        return Err(Error::params(format!("block index {j} outside 1..={r}")));
    }
    if j == 1 {
        return Ok(1);
    }
    if anchor == 0 {
        return Err(Error::params("anchor must be a positive part"));
    }
    let v = if j <= i { anchor } else { anchor - 1 };
    if v == 0 {
        return Err(Error::params(format!("block {j} would be empty (anchor {anchor}, i = {i})")));
    }
    Ok(v)
}

/// `f_{r,i}(j) = f_{r-1,i}(j)` for `1 ≤ i, j ≤ r-1`, and
/// `f_{r,r}(j) = f_{r-1,r-1}(j)` for `j ≤ r-1`, over all anchors up to `anchor_max`.
pub fn f_stability_holds(r: u32, anchor_max: u32) -> bool {
    if r < 3 {
        return true;
    }
    let same = |a: Result<u32>, b: Result<u32>| match (a, b) {
        (Ok(x), Ok(y)) => x == y,
        (Err(_), Err(_)) => true,
        _ => false,
    };
    for anchor in 1..=anchor_max {
        for j in 1..r {
            for i in 1..r {
                if !same(f_val(r, i, j, anchor), f_val(r - 1, i, j, anchor)) {
                    return false;
                }
            }
            if !same(f_val(r, r, j, anchor), f_val(r - 1, r - 1, j, anchor)) {
                return false;
            }
        }
    }
    true
}

/// True when the monomial of `λ` lies in `I_{r,i}`: either `λ` has at least
/// `i` parts equal to 1, or some sub-multiset of its parts, sorted
/// ascending, splits into `r` complete blocks.
pub fn generator_divides(lambda: &Partition, r: u32, i: u32) -> Result<bool> {
    check_params(r, i)?;
    if lambda.count_of(1) >= i as usize {
        return Ok(true);
    }
    let mut asc: Vec<u32> = lambda.parts().to_vec();
    asc.reverse();
    let mut search = PatternSearch { asc: &asc, r, i, dead: HashSet::new() };
    Ok((0..asc.len()).any(|start| search.extend(start, 1, 0)))
}

struct PatternSearch<'a> {
    asc: &'a [u32],
    r: u32,
    i: u32,
    /// `(last picked index, block, slots left)` states known to fail
    dead: HashSet<(usize, u32, u32)>,
}

impl PatternSearch<'_> {
    /// `last` has just been picked as an entry of `block`, which still needs
    /// `left` entries after it.
    fn extend(&mut self, last: usize, block: u32, left: u32) -> bool {
        let (block, left) = if left > 0 {
            (block, left)
        } else if block == self.r {
            return true;
        } else {
            let next = block + 1;
            match f_val(self.r, self.i, next, self.asc[last]) {
                Ok(v) => (next, v),
                Err(_) => return false,
            }
        };
        let key = (last, block, left);
        if self.dead.contains(&key) {
            return false;
        }
        // with `left` picks still needed, the next pick can be no later than len - left
        let end = self.asc.len().saturating_sub(left as usize - 1);
        for pos in last + 1..end {
            if self.extend(pos, block, left - 1) {
                return true;
            }
        }
        self.dead.insert(key);
        false
    }
}

/// Quotient-basis membership: the monomial of `λ` avoids `I_{r,i}`.
pub fn in_basis(lambda: &Partition, r: u32, i: u32) -> Result<bool> {
    Ok(!generator_divides(lambda, r, i)?)
}

/// Parts of a partition grouped into consecutive ascending blocks.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BlockDecomposition {
    /// `r` blocks; the first `r-1` are complete.
    pub blocks: Vec<Vec<u32>>,
    /// `f(1), …, f(r)`.
    pub f: Vec<u32>,
    /// Length of the last block, `0 ≤ ℓ < f(r)`.
    pub ell: usize,
}

impl BlockDecomposition {
    /// All parts, back in the partition's largest-first order.
    pub fn partition(&self) -> Partition {
        Partition::from_multiset(self.blocks.concat())
    }
}

/// Decomposes `λ ∈ D_{r,i} \ D_{r-1,i}` by repeatedly removing the rows of
/// its first Durfee rectangle (or square when `i = r`) and appending those
/// parts to the decomposition of what is left.
pub fn block_decompose(lambda: &Partition, r: u32, i: u32) -> Result<BlockDecomposition> {
    check_params(r, i)?;
    let reject = || Error::NotInClass {
        partition: lambda.to_string(),
        class: format!("D_{{{r},{i}}} \\ D_{{{},{i}}}", r - 1),
    };
    if !classify_transition(lambda, r, i)?.is_transition() || lambda.is_empty() {
        return Err(reject());
    }
    peel(lambda, r, i).ok_or_else(reject)
}

fn peel(lambda: &Partition, r: u32, i: u32) -> Option<BlockDecomposition> {
    if r == 1 {
        return lambda.is_empty().then(|| BlockDecomposition {
            blocks: vec![Vec::new()],
            f: vec![1],
            ell: 0,
        });
    }
    let first = durfee_dissection(lambda, r, i).blocks.into_iter().next()?;
    let expected = if i < r { BlockKind::HorizontalRect } else { BlockKind::Square };
    if first.kind != expected || first.empty || first.rows == 0 {
        return None;
    }
    let top = first.rows;
    let rest = Partition::from_multiset(lambda.parts()[top..].to_vec());
    let mut inner = peel(&rest, r - 1, i.min(r - 1))?;
    let f_prev = *inner.f.last()? as usize;
    let ell_prev = inner.ell;
    if ell_prev >= f_prev || top < f_prev - ell_prev {
        return None;
    }
    let mut removed: Vec<u32> = lambda.parts()[..top].to_vec();
    removed.reverse();
    let fill = f_prev - ell_prev;
    inner.blocks.last_mut()?.extend_from_slice(&removed[..fill]);
    let anchor = *inner.blocks.last()?.last()?;
    let f_r = f_val(r, i, r, anchor).ok()?;
    let ell = top - fill;
    if ell >= f_r as usize {
        return None;
    }
    // ℓ < d'_1 ≤ f(r-1) + ℓ
    if !(ell < top && top <= f_prev + ell) {
        return None;
    }
    inner.blocks.push(removed[fill..].to_vec());
    inner.f.push(f_r);
    inner.ell = ell;
    Some(inner)
}

/// Reads the ascending parts greedily into blocks of lengths `f(1), f(2), …`.
/// Returns `None` unless exactly `r` blocks arise with the first `r-1` complete
/// and the last one shorter than `f(r)`.
pub fn greedy_blocks(lambda: &Partition, r: u32, i: u32) -> Result<Option<BlockDecomposition>> {
    check_params(r, i)?;
    let mut asc: Vec<u32> = lambda.parts().to_vec();
    asc.reverse();
    let mut blocks = Vec::new();
    let mut f = Vec::new();
    let mut pos = 0usize;
    for j in 1..=r {
        let anchor = blocks.last().and_then(|b: &Vec<u32>| b.last().copied()).unwrap_or(0);
        let len = match f_val(r, i, j, anchor) {
            Ok(v) => v as usize,
            Err(_) => return Ok(None),
        };
        let take = len.min(asc.len() - pos);
        if j < r && take < len {
            return Ok(None);
        }
        blocks.push(asc[pos..pos + take].to_vec());
        f.push(len as u32);
        pos += take;
        if j == r {
            if take == len || pos < asc.len() {
                return Ok(None);
            }
            return Ok(Some(BlockDecomposition { blocks, f, ell: take }));
        }
    }
    Ok(None)
}
