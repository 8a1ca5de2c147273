//! The bijection `T : A″_r(n) → A_{r,r-1}(n)` with its inverse `T′`, where
//! `A″_r = A_{r-1,r-1} ⊔ A′_r` and `A′_r` holds the partitions of `A_{r,r}`
//! with exactly `r-1` Durfee squares and a non-empty marker set.
//!
//! Also the two simple bijections between `A_{r,i}` and `D_{r,i}`: rotating
//! every rectangle for `i = 1`, and the identity for `i = r`.

use serde::{Deserialize, Serialize};

use crate::classes::{andrews_dissection, check_params, durfee_dissection, member_raw, ClassKind};
use crate::dissection::{durfee_squares, Dissection};
use crate::error::{Error, Result};
use crate::partition::Partition;

/// Marker set `A_λ` of the all-squares dissection: `j` is marked when the
/// last row of the `j`-th Durfee square sticks out past it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SquareMarks {
    /// Durfee square sizes `n_1, n_2, …`.
    pub sizes: Vec<u32>,
    /// Marked indices, 1-based and increasing.
    pub set: Vec<usize>,
}

impl SquareMarks {
    /// `m_λ`
    pub fn min(&self) -> Option<usize> {
        self.set.first().copied()
    }

    /// `M_λ`
    pub fn max(&self) -> Option<usize> {
        self.set.last().copied()
    }
}

pub fn marks_a(lambda: &Partition) -> SquareMarks {
    let sizes = durfee_squares(lambda);
    let mut set = Vec::new();
    let mut end = 0i64;
    for (j, &n) in sizes.iter().enumerate() {
        end += n as i64;
        if lambda.part(end) > n {
            set.push(j + 1);
        }
    }
    SquareMarks { sizes, set }
}

/// Marker set `F_μ` for `μ ∈ A_{r,r-1} \ A_{r-1,r-1}`: `j ≤ r-2` is marked
/// when the part just below the `j`-th Durfee square is smaller than it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RectMarks {
    /// `n_1, …, n_{r-2}`.
    pub squares: Vec<u32>,
    /// Width of the closing vertical rectangle, which is one row taller.
    pub rect_cols: u32,
    /// Marked indices, 1-based and increasing.
    pub set: Vec<usize>,
}

impl RectMarks {
    /// `M′_μ`
    pub fn max(&self) -> Option<usize> {
        self.set.last().copied()
    }
}

fn not_in(lambda: &Partition, class: String) -> Error {
    Error::NotInClass { partition: lambda.to_string(), class }
}

fn check_r(r: u32) -> Result<()> {
    check_params(r, r)
}

/// `A_{r-1,r-1}`, with `A_{1,1} = {∅}`.
fn in_smaller(lambda: &Partition, r: u32) -> bool {
    member_raw(ClassKind::A, r - 1, r - 1, lambda)
}

pub fn marks_f(mu: &Partition, r: u32) -> Result<RectMarks> {
    check_r(r)?;
    if !member_raw(ClassKind::A, r, r - 1, mu) || in_smaller(mu, r) {
        return Err(not_in(mu, format!("A_{{{r},{}}} \\ A_{{{},{}}}", r - 1, r - 1, r - 1)));
    }
    Ok(rect_marks(&andrews_dissection(mu, r, r - 1), mu))
}

fn rect_marks(d: &Dissection, mu: &Partition) -> RectMarks {
    let (squares, rect) = d.blocks.split_at(d.blocks.len() - 1);
    let squares: Vec<u32> = squares.iter().map(|b| b.major).collect();
    let mut set = Vec::new();
    let mut end = 0i64;
    for (j, &n) in squares.iter().enumerate() {
        end += n as i64;
        if mu.part(end + 1) < n {
            set.push(j + 1);
        }
    }
    RectMarks { squares, rect_cols: rect[0].cols, set }
}

/// True for `λ ∈ A″_r`.
pub fn in_a_double_prime(lambda: &Partition, r: u32) -> Result<bool> {
    check_r(r)?;
    Ok(in_smaller(lambda, r) || in_a_prime(lambda, r))
}

fn in_a_prime(lambda: &Partition, r: u32) -> bool {
    if !member_raw(ClassKind::A, r, r, lambda) {
        return false;
    }
    let marks = marks_a(lambda);
    marks.sizes.len() == (r - 1) as usize && !marks.set.is_empty()
}

/// Which rule `T` applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ForwardBranch {
    Identity,
    /// The `m`-th square with its right column turned into a vertical rectangle.
    Rotate {
        m: usize,
    },
}

/// Which rule `T′` applied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum InverseBranch {
    Identity,
    /// `M′_μ = r-2`: the rectangle becomes the last square.
    LastSquare,
    /// `1 ≤ M′_μ ≤ r-3`.
    Inner {
        m_prime: usize,
    },
    /// `F_μ = ∅`: the part below the first block is spread over its rows.
    NoMarks,
}

/// `T(λ)` with the branch taken.
pub fn t_map_traced(lambda: &Partition, r: u32) -> Result<(Partition, ForwardBranch)> {
    check_r(r)?;
    if in_smaller(lambda, r) {
        return Ok((lambda.clone(), ForwardBranch::Identity));
    }
    if !in_a_prime(lambda, r) {
        return Err(not_in(lambda, format!("A''_{r}")));
    }
    let marks = marks_a(lambda);
    let m = marks.max().expect("marks are non-empty on A'");
    let start: usize = marks.sizes[..m - 1].iter().map(|&n| n as usize).sum();
    let n = marks.sizes[m - 1];
    let mut parts = lambda.parts().to_vec();
    for p in &mut parts[start..start + n as usize] {
        *p -= 1;
    }
    parts.insert(start + n as usize, n);
    Ok((Partition::from_multiset(parts), ForwardBranch::Rotate { m }))
}

pub fn t_map(lambda: &Partition, r: u32) -> Result<Partition> {
    t_map_traced(lambda, r).map(|(p, _)| p)
}

/// `T′(μ)` with the branch taken.
pub fn t_inv_traced(mu: &Partition, r: u32) -> Result<(Partition, InverseBranch)> {
    check_r(r)?;
    if !member_raw(ClassKind::A, r, r - 1, mu) {
        return Err(not_in(mu, format!("A_{{{r},{}}}", r - 1)));
    }
    if in_smaller(mu, r) {
        return Ok((mu.clone(), InverseBranch::Identity));
    }
    let marks = rect_marks(&andrews_dissection(mu, r, r - 1), mu);
    let (k, branch) = match marks.max() {
        None => (0, InverseBranch::NoMarks),
        Some(m) if m == (r - 2) as usize => (m, InverseBranch::LastSquare),
        Some(m) => (m, InverseBranch::Inner { m_prime: m }),
    };
    // every branch widens the rows of block k+1 and drops the part below it
    let mut sizes = marks.squares.clone();
    sizes.push(marks.rect_cols);
    let start: usize = sizes[..k].iter().map(|&n| n as usize).sum();
    let n = sizes[k] as usize;
    let mut parts = mu.parts().to_vec();
    parts.remove(start + n);
    for p in &mut parts[start..start + n] {
        *p += 1;
    }
    Ok((Partition::from_multiset(parts), branch))
}

pub fn t_inv(mu: &Partition, r: u32) -> Result<Partition> {
    t_inv_traced(mu, r).map(|(p, _)| p)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Direction {
    /// `A_{r,i} → D_{r,i}`
    AToD,
    /// `D_{r,i} → A_{r,i}`
    DToA,
}

impl Direction {
    fn classes(self) -> (ClassKind, ClassKind) {
        match self {
            Direction::AToD => (ClassKind::A, ClassKind::D),
            Direction::DToA => (ClassKind::D, ClassKind::A),
        }
    }
}

/// `A_{r,1} ↔ D_{r,1}` by turning each `k-1` by `k` rectangle on its side,
/// keeping the cells to its right attached to the same rows.
pub fn rotate_simple(lambda: &Partition, r: u32, direction: Direction) -> Result<Partition> {
    check_params(r, 1)?;
    let (from, to) = direction.classes();
    if !member_raw(from, r, 1, lambda) {
        return Err(not_in(lambda, format!("{from}_{{{r},1}}")));
    }
    let d = match direction {
        Direction::AToD => andrews_dissection(lambda, r, 1),
        Direction::DToA => durfee_dissection(lambda, r, 1),
    };
    let mut rows = Vec::with_capacity(lambda.len() + r as usize);
    for b in d.blocks.iter().filter(|b| !b.empty) {
        // a vertical rectangle has rows = cols + 1, a horizontal one cols = rows + 1
        let (cols, height) = (b.rows as u32, b.cols as usize);
        for t in 0..height {
            rows.push(cols + b.side.part(t as i64 + 1));
        }
    }
    rows.retain(|&p| p > 0);
    let image = Partition::from_multiset(rows);
    if !member_raw(to, r, 1, &image) {
        return Err(not_in(&image, format!("{to}_{{{r},1}} (image of {lambda})")));
    }
    Ok(image)
}

/// The bijection `A_{r,i} ↔ D_{r,i}` for `i = 1` (rotation) and `i = r`
/// (identity, the two classes coincide).
pub fn simple_bijection(lambda: &Partition, r: u32, i: u32, direction: Direction) -> Result<Partition> {
    check_params(r, i)?;
    if i == 1 {
        return rotate_simple(lambda, r, direction);
    }
    if i != r {
        return Err(Error::params(format!("no simple bijection for 1 < i = {i} < r = {r}")));
    }
    let (from, to) = direction.classes();
    if !member_raw(from, r, r, lambda) {
        return Err(not_in(lambda, format!("{from}_{{{r},{r}}}")));
    }
    if !member_raw(to, r, r, lambda) {
        return Err(not_in(lambda, format!("{to}_{{{r},{r}}}")));
    }
    Ok(lambda.clone())
}
