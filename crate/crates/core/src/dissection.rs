//! Durfee-style dissections of a Young diagram.
//!
//! A top-down dissection repeatedly draws the largest square or rectangle
//! fitting in the top-left corner of the rows not yet covered. A bottom
//! dissection works upward from the last row, using the smallest remaining
//! part as the block width. Both draw exactly one block per plan entry; once
//! the partition is exhausted the remaining blocks are empty.
//!
//! Heights follow the usual convention: the bottom edge of the last row is
//! height 0 and heights grow upward.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::partition::Partition;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BlockKind {
    /// `k x k`, top-anchored.
    Square,
    /// `k-1` columns by `k` rows, top-anchored.
    VerticalRect,
    /// `k` columns by `k-1` rows, top-anchored. `k = 1` is the non-empty
    /// `1 x 0` rectangle.
    HorizontalRect,
    /// `b x b` with `b` the smallest remaining part, bottom-anchored.
    BottomSquare,
    /// `b` wide and `b-1` tall, bottom-anchored.
    BottomRect,
}

impl BlockKind {
    pub fn letter(self) -> char {
        match self {
            BlockKind::Square => 'S',
            BlockKind::VerticalRect => 'V',
            BlockKind::HorizontalRect => 'H',
            BlockKind::BottomSquare => 'b',
            BlockKind::BottomRect => 'B',
        }
    }

    pub fn from_letter(c: char) -> Option<BlockKind> {
        Some(match c {
            'S' => BlockKind::Square,
            'V' => BlockKind::VerticalRect,
            'H' => BlockKind::HorizontalRect,
            'b' => BlockKind::BottomSquare,
            'B' => BlockKind::BottomRect,
            _ => return None,
        })
    }

    pub fn is_bottom(self) -> bool {
        matches!(self, BlockKind::BottomSquare | BlockKind::BottomRect)
    }

    /// Parses a plan written as letters, e.g. `"HHS"`.
    pub fn parse_plan(s: &str) -> Result<Vec<BlockKind>> {
        s.chars()
            .filter(|c| !c.is_whitespace() && *c != ',')
            .map(|c| {
                BlockKind::from_letter(c)
                    .ok_or_else(|| Error::params(format!("unknown block letter {c:?} in plan {s:?}")))
            })
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DissectionBlock {
    pub kind: BlockKind,
    /// Larger side of the block; the width for bottom blocks. 0 iff empty.
    pub major: u32,
    pub empty: bool,
    /// Width of the block in cells.
    pub cols: u32,
    /// Number of partition rows the block covers.
    pub rows: usize,
    /// Index (0-based, from the top) of the first covered row.
    pub start_row: usize,
    pub top_height: u64,
    pub bottom_height: u64,
    /// Cells to the right of the block in each covered row, top to bottom.
    pub side: Partition,
}

impl DissectionBlock {
    /// The block's contribution to the height sums: its row count for
    /// top-down blocks, its nominal height for bottom blocks.
    pub fn height(&self) -> u64 {
        self.top_height - self.bottom_height
    }

    fn empty_at(kind: BlockKind, start_row: usize, height: u64) -> Self {
        DissectionBlock {
            kind,
            major: 0,
            empty: true,
            cols: 0,
            rows: 0,
            start_row,
            top_height: height,
            bottom_height: height,
            side: Partition::empty(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dissection {
    pub blocks: Vec<DissectionBlock>,
    /// Rows left over after the last block: below it for top-down
    /// dissections, above it for bottom ones.
    pub residual: Partition,
    /// Index (0-based, from the top) of the first residual row.
    pub residual_start: usize,
}

impl Dissection {
    pub fn residual_rows(&self) -> usize {
        self.residual.len()
    }

    pub fn nonempty_blocks(&self) -> usize {
        self.blocks.iter().filter(|b| !b.empty).count()
    }

    /// `h_j` for `j = 1..=blocks.len()`: for a top-down dissection the sum of
    /// the row counts of the last `j` blocks, for a bottom dissection the top
    /// height of block `j`.
    pub fn heights(&self) -> Vec<u64> {
        let bottom_up = self.blocks.first().is_some_and(|b| b.kind.is_bottom());
        if bottom_up {
            self.blocks.iter().map(|b| b.top_height).collect()
        } else {
            self.blocks
                .iter()
                .rev()
                .scan(0u64, |acc, b| {
                    *acc += b.rows as u64;
                    Some(*acc)
                })
                .collect()
        }
    }

    /// Rebuilds the partition from blocks, side partitions and residual rows.
    pub fn reconstruct(&self) -> Partition {
        let total = self.blocks.iter().map(|b| b.rows).sum::<usize>() + self.residual.len();
        let mut rows = vec![0u32; total];
        for b in &self.blocks {
            for t in 0..b.rows {
                rows[b.start_row + t] = b.cols + b.side.part(t as i64 + 1);
            }
        }
        for (t, &p) in self.residual.parts().iter().enumerate() {
            rows[self.residual_start + t] = p;
        }
        Partition::from_multiset(rows)
    }

    /// ASCII picture: cells inside a block show its kind letter, other cells
    /// `#`. Each row is tagged with its block number (or `-` for residual
    /// rows), followed by one legend line per block.
    pub fn render(&self, lambda: &Partition) -> String {
        let mut out = String::new();
        let width = lambda.part(1) as usize;
        let mut owner: Vec<Option<usize>> = vec![None; lambda.len()];
        for (idx, b) in self.blocks.iter().enumerate() {
            for t in 0..b.rows {
                owner[b.start_row + t] = Some(idx);
            }
        }
        if lambda.is_empty() {
            out.push_str("-\n");
        }
        for (row, &part) in lambda.parts().iter().enumerate() {
            let mut line = String::with_capacity(width + 6);
            let (letter, cols) = match owner[row] {
                Some(idx) => (self.blocks[idx].kind.letter(), self.blocks[idx].cols as usize),
                None => ('#', 0),
            };
            for c in 0..part as usize {
                line.push(if c < cols { letter } else { '#' });
            }
            while line.len() < width {
                line.push(' ');
            }
            match owner[row] {
                Some(idx) => {
                    let _ = write!(line, "  {}", idx + 1);
                }
                None => line.push_str("  -"),
            }
            out.push_str(line.trim_end_matches(' '));
            out.push('\n');
        }
        for (idx, b) in self.blocks.iter().enumerate() {
            let _ = writeln!(out, "{}", LegendLine { idx: idx + 1, block: b });
        }
        let _ = writeln!(out, "residual rows: {}", self.residual_rows());
        out
    }
}

struct LegendLine<'a> {
    idx: usize,
    block: &'a DissectionBlock,
}

impl fmt::Display for LegendLine<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = self.block;
        if b.empty {
            return write!(f, "{}: {} empty", self.idx, b.kind.letter());
        }
        let nominal_rows = match b.kind {
            BlockKind::Square | BlockKind::VerticalRect | BlockKind::HorizontalRect => b.rows as u64,
            BlockKind::BottomSquare | BlockKind::BottomRect => b.height(),
        };
        let covered = if b.rows == 0 {
            "none".to_string()
        } else {
            format!("{}..{}", b.start_row + 1, b.start_row + b.rows)
        };
        write!(
            f,
            "{}: {} {}x{} rows {} heights {}..{} side {}",
            self.idx,
            b.kind.letter(),
            b.cols,
            nominal_rows,
            covered,
            b.bottom_height,
            b.top_height,
            b.side
        )
    }
}

/// Side parameter `k` of the largest block of a top-anchored kind fitting
/// in the top-left corner of `parts` (largest first). 0 when nothing fits.
fn largest_in(parts: &[u32], kind: BlockKind) -> Result<u32> {
    if parts.is_empty() {
        return Ok(0);
    }
    // λ_j with the 1-based convention, 0 out of range
    let at = |j: usize| -> u32 {
        if j == 0 {
            u32::MAX
        } else {
            parts.get(j - 1).copied().unwrap_or(0)
        }
    };
    let fits = |k: u32| -> bool {
        let k_us = k as usize;
        match kind {
            BlockKind::Square => at(k_us) >= k,
            BlockKind::VerticalRect => k_us <= parts.len() && at(k_us) >= k - 1,
            BlockKind::HorizontalRect => at(k_us - 1) >= k,
            _ => unreachable!(),
        }
    };
    match kind {
        BlockKind::Square | BlockKind::VerticalRect | BlockKind::HorizontalRect => {}
        other => return Err(Error::UnsupportedBlockKind(other)),
    }
    // the predicates are monotone in k
    let mut k = 0;
    while fits(k + 1) {
        k += 1;
    }
    Ok(k)
}

pub fn largest_fitting(lambda: &Partition, kind: BlockKind) -> Result<u32> {
    largest_in(lambda.parts(), kind)
}

/// Top-down dissection with one block per plan entry.
pub fn dissect(lambda: &Partition, plan: &[BlockKind]) -> Result<Dissection> {
    if let Some(&bad) = plan.iter().find(|k| k.is_bottom()) {
        return Err(Error::UnsupportedBlockKind(bad));
    }
    let parts = lambda.parts();
    let s = parts.len();
    let mut pos = 0usize;
    let mut blocks = Vec::with_capacity(plan.len());
    for &kind in plan {
        let k = largest_in(&parts[pos..], kind)?;
        if k == 0 {
            blocks.push(DissectionBlock::empty_at(kind, pos, (s - pos) as u64));
            continue;
        }
        let (cols, rows) = match kind {
            BlockKind::Square => (k, k as usize),
            BlockKind::VerticalRect => (k - 1, k as usize),
            BlockKind::HorizontalRect => (k, k as usize - 1),
            _ => unreachable!(),
        };
        let side = Partition::from_multiset(parts[pos..pos + rows].iter().map(|&p| p - cols).collect());
        blocks.push(DissectionBlock {
            kind,
            major: k,
            empty: false,
            cols,
            rows,
            start_row: pos,
            top_height: (s - pos) as u64,
            bottom_height: (s - pos - rows) as u64,
            side,
        });
        pos += rows;
    }
    Ok(Dissection {
        blocks,
        residual: Partition::from_sorted_unchecked(parts[pos..].to_vec()),
        residual_start: pos,
    })
}

/// Bottom-up dissection with one block per plan entry.
pub fn bottom_dissect(lambda: &Partition, plan: &[BlockKind]) -> Result<Dissection> {
    if let Some(&bad) = plan.iter().find(|k| !k.is_bottom()) {
        return Err(Error::UnsupportedBlockKind(bad));
    }
    let parts = lambda.parts();
    // rows 0..remaining are still uncovered
    let mut remaining = parts.len();
    let mut height = 0u64;
    let mut blocks = Vec::with_capacity(plan.len());
    for &kind in plan {
        if remaining == 0 {
            blocks.push(DissectionBlock::empty_at(kind, 0, height));
            continue;
        }
        let b = parts[remaining - 1];
        let nominal = match kind {
            BlockKind::BottomSquare => b as u64,
            _ => b as u64 - 1,
        };
        let rows = (nominal as usize).min(remaining);
        let start = remaining - rows;
        let side = Partition::from_multiset(parts[start..remaining].iter().map(|&p| p - b).collect());
        blocks.push(DissectionBlock {
            kind,
            major: b,
            empty: false,
            cols: b,
            rows,
            start_row: start,
            top_height: height + nominal,
            bottom_height: height,
            side,
        });
        height += nominal;
        remaining = start;
    }
    Ok(Dissection {
        blocks,
        residual: Partition::from_sorted_unchecked(parts[..remaining].to_vec()),
        residual_start: 0,
    })
}

/// The repeated plan `first` × `a` followed by `second` × `b`.
pub fn plan(first: BlockKind, a: usize, second: BlockKind, b: usize) -> Vec<BlockKind> {
    let mut v = vec![first; a];
    v.extend(std::iter::repeat_n(second, b));
    v
}

/// Successive Durfee squares, drawn until the partition is exhausted.
pub fn durfee_squares(lambda: &Partition) -> Vec<u32> {
    let parts = lambda.parts();
    let mut pos = 0;
    let mut sizes = Vec::new();
    while pos < parts.len() {
        let k = largest_in(&parts[pos..], BlockKind::Square).unwrap_or(0);
        sizes.push(k);
        pos += k as usize;
    }
    sizes
}
