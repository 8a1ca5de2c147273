#![allow(dead_code)]

use qpart::dissection::{bottom_dissect, dissect, plan, BlockKind};
use qpart::Partition;

/// Generalized pentagonal numbers `k(3k-1)/2` for `k = 1, -1, 2, -2, …`
/// with the sign `(-1)^{k+1}`, up to `max`.
fn pentagonal(max: usize) -> Vec<(usize, i64)> {
    let mut out = Vec::new();
    for k in 1i64.. {
        let a = (k * (3 * k - 1) / 2) as usize;
        if a > max {
            break;
        }
        let sign = if k % 2 == 1 { 1 } else { -1 };
        out.push((a, sign));
        let b = (k * (3 * k + 1) / 2) as usize;
        if b <= max {
            out.push((b, sign));
        }
    }
    out
}

/// `p(0..=max)` by Euler's recurrence.
pub fn partition_numbers(max: usize) -> Vec<i64> {
    let pent = pentagonal(max);
    let mut p = vec![0i64; max + 1];
    p[0] = 1;
    for n in 1..=max {
        p[n] = pent.iter().filter(|&&(g, _)| g <= n).map(|&(g, s)| s * p[n - g]).sum();
    }
    p
}

/// Coefficients of `(q;q)_∞` to `q^order` from the pentagonal number theorem.
pub fn euler_product(order: usize) -> Vec<i64> {
    let mut c = vec![0i64; order + 1];
    c[0] = 1;
    for (g, s) in pentagonal(order) {
        // exponent k(3k-1)/2 carries (-1)^k
        c[g] = -s;
    }
    c
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Squares,
    Rects,
}

/// Compares the top-down and bottom-up heights of `λ` for the all-squares
/// or all-rectangles plans with `r-1` blocks: `h^D_j ≤ h^B_j < h^D_{j+1}`,
/// with equality exactly when the last `j` side partitions are short.
/// `Ok(false)` when `λ` does not have exactly `r-1` non-empty blocks.
pub fn check_interleaving(lambda: &Partition, r: u32, shape: Shape) -> Result<bool, String> {
    let k = (r - 1) as usize;
    let (top, bottom) = match shape {
        Shape::Squares => (BlockKind::Square, BlockKind::BottomSquare),
        Shape::Rects => (BlockKind::HorizontalRect, BlockKind::BottomRect),
    };
    if shape == Shape::Rects && lambda.parts().contains(&1) {
        return Ok(false);
    }
    let d = dissect(lambda, &plan(top, k, top, 0)).unwrap();
    if d.residual_rows() != 0 || d.blocks.iter().any(|b| b.rows == 0) {
        return Ok(false);
    }
    let b = bottom_dissect(lambda, &plan(bottom, k, bottom, 0)).unwrap();
    let hd = d.heights();
    let hb = b.heights();
    for j in 0..k {
        let upper = hd.get(j + 1).copied().unwrap_or(u64::MAX);
        if !(hd[j] <= hb[j] && hb[j] < upper) {
            return Err(format!("{lambda} r={r} {shape:?}: h^D={hd:?} h^B={hb:?} at j={}", j + 1));
        }
        let short = d.blocks[k - 1 - j..].iter().all(|blk| blk.side.len() < blk.rows);
        if (hd[j] == hb[j]) != short {
            return Err(format!("{lambda} r={r} {shape:?}: equality case at j={}", j + 1));
        }
    }
    Ok(true)
}
