//! Membership predicates for the six partition families `T, E, A, B, C, D`
//! attached to a pair `(r, i)` with `r >= 2` and `1 <= i <= r`.
//!
//! * `T`: `λ_j - λ_{j+r-1} >= 2` whenever both parts exist, at most `i-1` ones.
//! * `E`: no part congruent to `0` or `±i` modulo `2r+1`.
//! * `A`: `i-1` Durfee squares then vertical rectangles; nothing below the
//!   `(r-1)`-th block, and the last row of every non-empty rectangle is
//!   exactly as wide as the rectangle.
//! * `B`: `i-1` bottom squares then bottom rectangles; nothing above the
//!   `(r-1)`-th block.
//! * `C`: at most `i-1` ones and a length bound driven by the new parts.
//! * `D`: `r-i` horizontal rectangles then `i-1` squares; nothing below.
//!
//! The empty partition belongs to every class.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::dissection::{bottom_dissect, dissect, plan, BlockKind, Dissection};
use crate::error::{Error, Result};
use crate::partition::{partitions, Partition};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum ClassKind {
    T,
    E,
    A,
    B,
    C,
    D,
}

impl ClassKind {
    pub const ALL: [ClassKind; 6] =
        [ClassKind::T, ClassKind::E, ClassKind::A, ClassKind::B, ClassKind::C, ClassKind::D];
}

impl fmt::Display for ClassKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for ClassKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "T" | "t" => Ok(ClassKind::T),
            "E" | "e" => Ok(ClassKind::E),
            "A" | "a" => Ok(ClassKind::A),
            "B" | "b" => Ok(ClassKind::B),
            "C" | "c" => Ok(ClassKind::C),
            "D" | "d" => Ok(ClassKind::D),
            other => Err(Error::params(format!("unknown class {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ClassId {
    kind: ClassKind,
    r: u32,
    i: u32,
}

impl ClassId {
    pub fn new(kind: ClassKind, r: u32, i: u32) -> Result<Self> {
        check_params(r, i)?;
        Ok(ClassId { kind, r, i })
    }

    pub fn kind(&self) -> ClassKind {
        self.kind
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn i(&self) -> u32 {
        self.i
    }

    pub fn contains(&self, lambda: &Partition) -> bool {
        member_raw(self.kind, self.r, self.i, lambda)
    }
}

impl fmt::Display for ClassId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{{{},{}}}", self.kind, self.r, self.i)
    }
}

pub(crate) fn check_params(r: u32, i: u32) -> Result<()> {
    if r < 2 {
        return Err(Error::params(format!("r must be at least 2, got {r}")));
    }
    if i < 1 || i > r {
        return Err(Error::params(format!("i must lie in 1..={r}, got {i}")));
    }
    Ok(())
}

pub fn member(class: ClassId, lambda: &Partition) -> bool {
    class.contains(lambda)
}

/// Membership without the `r >= 2` check; `r = 1` gives plans with no
/// blocks, so only the empty partition qualifies for `A`, `B`, `D`.
pub(crate) fn member_raw(kind: ClassKind, r: u32, i: u32, lambda: &Partition) -> bool {
    match kind {
        ClassKind::T => in_t(lambda, r, i),
        ClassKind::E => in_e(lambda, r, i),
        ClassKind::A => in_a(lambda, r, i),
        ClassKind::B => in_b(lambda, r, i),
        ClassKind::C => in_c(lambda, r, i),
        ClassKind::D => in_d(lambda, r, i),
    }
}

fn ones(lambda: &Partition) -> usize {
    lambda.count_of(1)
}

fn in_t(lambda: &Partition, r: u32, i: u32) -> bool {
    if ones(lambda) > (i - 1) as usize {
        return false;
    }
    let parts = lambda.parts();
    let gap = (r - 1) as usize;
    parts.len() <= gap || parts.windows(gap + 1).all(|w| w[0] >= w[gap] + 2)
}

fn in_e(lambda: &Partition, r: u32, i: u32) -> bool {
    let m = 2 * r + 1;
    lambda.parts().iter().all(|&p| {
        let c = p % m;
        c != 0 && c != i % m && c != (m - i % m) % m
    })
}

pub(crate) fn andrews_plan(r: u32, i: u32) -> Vec<BlockKind> {
    plan(BlockKind::Square, (i - 1) as usize, BlockKind::VerticalRect, (r - i) as usize)
}

pub(crate) fn bottom_plan(r: u32, i: u32) -> Vec<BlockKind> {
    plan(BlockKind::BottomSquare, (i - 1) as usize, BlockKind::BottomRect, (r - i) as usize)
}

pub(crate) fn durfee_plan(r: u32, i: u32) -> Vec<BlockKind> {
    plan(BlockKind::HorizontalRect, (r - i) as usize, BlockKind::Square, (i - 1) as usize)
}

pub fn andrews_dissection(lambda: &Partition, r: u32, i: u32) -> Dissection {
    dissect(lambda, &andrews_plan(r, i)).expect("top-down plan")
}

pub fn bottom_dissection(lambda: &Partition, r: u32, i: u32) -> Dissection {
    bottom_dissect(lambda, &bottom_plan(r, i)).expect("bottom plan")
}

pub fn durfee_dissection(lambda: &Partition, r: u32, i: u32) -> Dissection {
    dissect(lambda, &durfee_plan(r, i)).expect("top-down plan")
}

fn in_a(lambda: &Partition, r: u32, i: u32) -> bool {
    let d = andrews_dissection(lambda, r, i);
    if d.residual_rows() != 0 {
        return false;
    }
    // the last covered row of a rectangle carries no cells to its right
    d.blocks.iter().filter(|b| b.kind == BlockKind::VerticalRect && b.rows > 0).all(|b| b.side.len() < b.rows)
}

fn in_b(lambda: &Partition, r: u32, i: u32) -> bool {
    bottom_dissection(lambda, r, i).residual_rows() == 0
}

fn in_d(lambda: &Partition, r: u32, i: u32) -> bool {
    durfee_dissection(lambda, r, i).residual_rows() == 0
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewParts {
    /// `p_{i,1}, ..., p_{i,r-1}`.
    pub values: Vec<u32>,
    /// Number of non-zero values.
    pub count: usize,
}

/// The `(i, ℓ)`-new parts of `λ` for `ℓ = 1..r-1`.
pub fn new_parts(lambda: &Partition, r: u32, i: u32) -> Result<NewParts> {
    check_params(r, i)?;
    Ok(new_parts_raw(lambda, r, i))
}

fn new_parts_raw(lambda: &Partition, r: u32, i: u32) -> NewParts {
    let s = lambda.len() as i64;
    let mut values = Vec::with_capacity((r - 1) as usize);
    let mut total = 0i64;
    for ell in 1..r as i64 {
        let value = if ell == 1 {
            lambda.part(s)
        } else if values.last() == Some(&0) {
            0
        } else if ell <= i as i64 {
            lambda.part(s - total)
        } else {
            lambda.part(s + ell - i as i64 - total)
        };
        total += value as i64;
        values.push(value);
    }
    let count = values.iter().filter(|&&v| v > 0).count();
    NewParts { values, count }
}

fn in_c(lambda: &Partition, r: u32, i: u32) -> bool {
    if ones(lambda) > (i - 1) as usize {
        return false;
    }
    let np = new_parts_raw(lambda, r, i);
    let full = (r - 1) as usize;
    if np.count < full {
        return true;
    }
    let sum: i64 = np.values.iter().map(|&v| v as i64).sum();
    np.count == full && lambda.len() as i64 <= sum - (r - i) as i64
}

/// Number of partitions of `n` in the class.
pub fn count(class: ClassId, n: u32) -> u64 {
    let all: Vec<Partition> = partitions(n).collect();
    all.par_iter().filter(|lam| class.contains(lam)).count() as u64
}

/// The partitions of `n` in the class, in enumeration order.
pub fn members(class: ClassId, n: u32) -> Vec<Partition> {
    partitions(n).filter(|lam| class.contains(lam)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Transition {
    /// In `D_{r,i}` and already in `D_{r-1,i}`.
    InSmaller,
    /// No squares left to inspect, or the marked set is empty and the last
    /// square has size > 1.
    TransitionCase1,
    /// The first square is marked.
    TransitionCase2,
    /// The first marked square is the `m`-th with `2 <= m <= i-1` and the
    /// square before it has size > 1.
    TransitionCase3,
    /// Not in `D_{r,i}`.
    Outside,
}

impl Transition {
    pub fn is_transition(self) -> bool {
        matches!(
            self,
            Transition::TransitionCase1 | Transition::TransitionCase2 | Transition::TransitionCase3
        )
    }
}

/// Classifies `λ ∈ D_{r,i}` by whether it already lies in `D_{r-1,i}`
/// (with `D_{r-1,i} := D_{r-1,r-1}` when `i = r`, and `D_{1,·}` empty),
/// reading the answer off the shape of the dissection.
pub fn classify_transition(lambda: &Partition, r: u32, i: u32) -> Result<Transition> {
    check_params(r, i)?;
    let d = durfee_dissection(lambda, r, i);
    if d.residual_rows() != 0 {
        return Ok(Transition::Outside);
    }
    if r == 2 && lambda.is_empty() {
        return Ok(Transition::TransitionCase1);
    }
    let n_rect = (r - i) as usize;
    let (rects, squares) = d.blocks.split_at(n_rect);
    let rects_full = rects.iter().all(|b| b.rows > 0);
    let squares_full = squares.iter().all(|b| !b.empty);
    if i == 1 {
        return Ok(if rects_full { Transition::TransitionCase1 } else { Transition::InSmaller });
    }
    if i == r {
        return Ok(if squares_full { Transition::TransitionCase1 } else { Transition::InSmaller });
    }
    if !(rects_full && squares_full) {
        return Ok(Transition::InSmaller);
    }
    let sizes: Vec<u32> = squares.iter().map(|b| b.major).collect();
    let last_rect_rows = rects[n_rect - 1].rows as u32;
    let marked = |j: usize| -> bool {
        let b = &squares[j - 1];
        let first = lambda.part(b.start_row as i64 + 1);
        let bound = if j == 1 { last_rect_rows + 1 } else { sizes[j - 2] };
        first < bound
    };
    let m = (1..=sizes.len()).find(|&j| marked(j));
    Ok(match m {
        None if *sizes.last().unwrap() > 1 => Transition::TransitionCase1,
        Some(1) => Transition::TransitionCase2,
        Some(m) if m <= (i - 1) as usize && sizes[m - 2] > 1 => Transition::TransitionCase3,
        _ => Transition::InSmaller,
    })
}
