//! Dense multi-index tensors of rank 2 to 6 over two or three dimensions.
//!
//! Entries are stored row-major (first index slowest) and all indices are
//! 0-based. Human-facing component names such as `D_112233` are 1-based and
//! produced by [`component_name`].

use std::fmt;
use std::ops::Index;

use crate::error::{Error, Result};

/// Default absolute tolerance for tensor comparisons on unit-normalized inputs.
pub const DEFAULT_TOLERANCE: f64 = 1e-10;

pub(crate) fn check_dim(dim: usize) -> Result<()> {
    if dim == 2 || dim == 3 {
        Ok(())
    } else {
        Err(Error::UnsupportedDimension(dim))
    }
}

/// A dense tensor of rank `R` in `d` dimensions holding `d^R` finite entries.
#[derive(Debug, Clone, PartialEq)]
pub struct Tensor {
    dim: usize,
    rank: usize,
    data: Vec<f64>,
}

impl Tensor {
    pub fn zeros(dim: usize, rank: usize) -> Result<Self> {
        check_dim(dim)?;
        if !(2..=6).contains(&rank) {
            return Err(Error::UnsupportedRank(rank));
        }
        Ok(Tensor {
            dim,
            rank,
            data: vec![0.0; dim.pow(rank as u32)],
        })
    }

    /// Wraps `data` (row-major) after checking its length and finiteness.
    pub fn from_vec(dim: usize, rank: usize, data: Vec<f64>) -> Result<Self> {
        let mut t = Tensor::zeros(dim, rank)?;
        if data.len() != t.data.len() {
            return Err(Error::ShapeMismatch(format!(
                "expected {} entries for rank {rank} in {dim}D, got {}",
                t.data.len(),
                data.len()
            )));
        }
        if let Some(pos) = data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("entry {pos} of tensor data")));
        }
        t.data = data;
        Ok(t)
    }

    /// Builds a tensor by evaluating `f` at every multi-index.
    pub fn from_fn(dim: usize, rank: usize, mut f: impl FnMut(&[usize]) -> f64) -> Result<Self> {
        let mut t = Tensor::zeros(dim, rank)?;
        let mut idx = vec![0; rank];
        for slot in t.data.iter_mut() {
            *slot = f(&idx);
            advance(&mut idx, dim);
        }
        if let Some(pos) = t.data.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite(format!("entry {pos} of generated tensor")));
        }
        Ok(t)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.data
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    /// Row-major offset of a multi-index.
    ///
    /// Panics if the index has the wrong length or a coordinate is out of
    /// range, like slice indexing does.
    pub fn offset(&self, idx: &[usize]) -> usize {
        assert_eq!(
            idx.len(),
            self.rank,
            "multi-index length must equal the rank"
        );
        idx.iter().fold(0, |acc, &i| {
            assert!(
                i < self.dim,
                "index {i} out of range for dimension {}",
                self.dim
            );
            acc * self.dim + i
        })
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.data[self.offset(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: f64) {
        let k = self.offset(idx);
        self.data[k] = value;
    }

    /// Value of a component given by its 1-based name digits, e.g. `"112233"`.
    pub fn get_named(&self, digits: &str) -> Result<f64> {
        let idx = parse_digits(digits, self.dim)?;
        if idx.len() != self.rank {
            return Err(Error::ShapeMismatch(format!(
                "component {digits} has {} indices, tensor rank is {}",
                idx.len(),
                self.rank
            )));
        }
        Ok(self.get(&idx))
    }

    /// Iterator over all multi-indices in storage order.
    pub fn indices(&self) -> MultiIndices {
        MultiIndices::new(self.dim, self.rank)
    }

    /// Iterator over `(multi-index, value)` pairs in storage order.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, f64)> + '_ {
        self.indices().zip(self.data.iter().copied())
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn scaled(&self, factor: f64) -> Tensor {
        Tensor {
            dim: self.dim,
            rank: self.rank,
            data: self.data.iter().map(|v| v * factor).collect(),
        }
    }

    /// Entrywise `self + factor * other`.
    pub fn add_scaled(&self, other: &Tensor, factor: f64) -> Result<Tensor> {
        same_shape(self, other)?;
        Ok(Tensor {
            dim: self.dim,
            rank: self.rank,
            data: self
                .data
                .iter()
                .zip(&other.data)
                .map(|(a, b)| a + factor * b)
                .collect(),
        })
    }

    /// Tensor with index positions `i` and `j` interchanged.
    pub fn swap_positions(&self, i: usize, j: usize) -> Result<Tensor> {
        self.check_position(i)?;
        self.check_position(j)?;
        Ok(self.remapped(|idx| idx.swap(i, j)))
    }

    /// Tensor with two equally sized, disjoint blocks of positions exchanged.
    pub fn swap_blocks(&self, first: &[usize], second: &[usize]) -> Result<Tensor> {
        self.check_blocks(first, second)?;
        Ok(self.remapped(|idx| {
            for (&p, &q) in first.iter().zip(second) {
                idx.swap(p, q);
            }
        }))
    }

    /// Tensor whose entry at `idx` equals this tensor's entry at `perm(idx)`.
    fn remapped(&self, perm: impl Fn(&mut Vec<usize>)) -> Tensor {
        let mut out = vec![0.0; self.data.len()];
        for (k, mut idx) in self.indices().enumerate() {
            perm(&mut idx);
            out[k] = self.get(&idx);
        }
        Tensor {
            dim: self.dim,
            rank: self.rank,
            data: out,
        }
    }

    fn check_position(&self, p: usize) -> Result<()> {
        if p < self.rank {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange {
                position: p,
                rank: self.rank,
            })
        }
    }

    fn check_blocks(&self, first: &[usize], second: &[usize]) -> Result<()> {
        if first.len() != second.len() {
            return Err(Error::ShapeMismatch(format!(
                "swapped blocks must have equal length: {first:?} vs {second:?}"
            )));
        }
        let all: Vec<usize> = first.iter().chain(second).copied().collect();
        for &p in &all {
            self.check_position(p)?;
        }
        ensure_distinct(&all)
    }
}

impl Index<&[usize]> for Tensor {
    type Output = f64;

    fn index(&self, idx: &[usize]) -> &f64 {
        &self.data[self.offset(idx)]
    }
}

impl fmt::Display for Tensor {
    /// Lists nonzero entries with 1-based names, one per line.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rank-{} tensor in {}D", self.rank, self.dim)?;
        for (idx, v) in self.iter().filter(|(_, v)| *v != 0.0) {
            writeln!(f, "  {} = {v}", component_name("T", &idx))?;
        }
        Ok(())
    }
}

/// Odometer over `{0..dim}^rank`, last index fastest.
#[derive(Debug, Clone)]
pub struct MultiIndices {
    dim: usize,
    current: Option<Vec<usize>>,
}

impl MultiIndices {
    pub fn new(dim: usize, rank: usize) -> Self {
        MultiIndices {
            dim,
            current: Some(vec![0; rank]),
        }
    }
}

impl Iterator for MultiIndices {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.take()?;
        let mut next = out.clone();
        if advance(&mut next, self.dim) {
            self.current = Some(next);
        }
        Some(out)
    }
}

/// Increments `idx` in place; returns false after wrapping past the last index.
fn advance(idx: &mut [usize], dim: usize) -> bool {
    for slot in idx.iter_mut().rev() {
        *slot += 1;
        if *slot < dim {
            return true;
        }
        *slot = 0;
    }
    false
}

fn ensure_distinct(positions: &[usize]) -> Result<()> {
    for (k, p) in positions.iter().enumerate() {
        if positions[k + 1..].contains(p) {
            return Err(Error::OverlappingPositions(positions.to_vec()));
        }
    }
    Ok(())
}

fn same_shape(a: &Tensor, b: &Tensor) -> Result<()> {
    if a.dim != b.dim || a.rank != b.rank {
        return Err(Error::ShapeMismatch(format!(
            "rank-{} {}D vs rank-{} {}D",
            a.rank, a.dim, b.rank, b.dim
        )));
    }
    Ok(())
}

/// 1-based component name, e.g. `component_name("D", &[0, 0, 1, 1, 2, 2]) == "D_112233"`.
pub fn component_name(prefix: &str, idx: &[usize]) -> String {
    let digits: String = idx
        .iter()
        .map(|&i| char::from_digit(i as u32 + 1, 10).expect("index below 9"))
        .collect();
    format!("{prefix}_{digits}")
}

/// Parses 1-based index digits (`"1223"`) into a 0-based multi-index.
pub fn parse_digits(digits: &str, dim: usize) -> Result<Vec<usize>> {
    digits
        .chars()
        .map(|ch| match ch.to_digit(10) {
            Some(d) if d >= 1 && (d as usize) <= dim => Ok(d as usize - 1),
            _ => Err(Error::Validation(format!(
                "invalid component digit '{ch}' in \"{digits}\" for {dim}D"
            ))),
        })
        .collect()
}

/// `½(t + t with positions i and j swapped)`.
pub fn symmetrize_single(t: &Tensor, i: usize, j: usize) -> Result<Tensor> {
    if i == j {
        return Err(Error::OverlappingPositions(vec![i, j]));
    }
    let swapped = t.swap_positions(i, j)?;
    Ok(t.add_scaled(&swapped, 1.0)?.scaled(0.5))
}

/// Nested symmetrization: the inner pair first, then the outer pair.
///
/// For `outer = (a, d)` and `inner = (b, c)` this is
/// `¼(A_abcd + A_acbd + A_dbca + A_dcba)`.
pub fn symmetrize_nested(
    t: &Tensor,
    outer: (usize, usize),
    inner: (usize, usize),
) -> Result<Tensor> {
    ensure_distinct(&[outer.0, outer.1, inner.0, inner.1])?;
    let inner_sym = symmetrize_single(t, inner.0, inner.1)?;
    symmetrize_single(&inner_sym, outer.0, outer.1)
}

/// Index symmetries a tensor is expected to carry.
///
/// `groups` are sets of positions whose indices may be freely interchanged;
/// `pair_swaps` are major symmetries exchanging two blocks of positions.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SymmetrySpec {
    pub groups: Vec<Vec<usize>>,
    pub pair_swaps: Vec<(Vec<usize>, Vec<usize>)>,
}

impl SymmetrySpec {
    pub fn new(groups: Vec<Vec<usize>>, pair_swaps: Vec<(Vec<usize>, Vec<usize>)>) -> Self {
        SymmetrySpec { groups, pair_swaps }
    }

    /// Symmetries of the classical stiffness `C_abij`: minor in (a,b) and (i,j), major (ab)↔(ij).
    pub fn classical() -> Self {
        SymmetrySpec::new(vec![vec![0, 1], vec![2, 3]], vec![(vec![0, 1], vec![2, 3])])
    }

    /// Symmetries of the coupling tensor `M_abijh`: (a,b) and (i,j).
    pub fn coupling() -> Self {
        SymmetrySpec::new(vec![vec![0, 1], vec![2, 3]], vec![])
    }

    /// Symmetries of the gradient stiffness `D_abcijh`: (a,b), (i,j) and (abc)↔(ijh).
    pub fn gradient() -> Self {
        SymmetrySpec::new(
            vec![vec![0, 1], vec![3, 4]],
            vec![(vec![0, 1, 2], vec![3, 4, 5])],
        )
    }

    /// Checks positions are in range and no position belongs to two groups.
    pub fn validate(&self, rank: usize) -> Result<()> {
        let mut seen = Vec::new();
        for group in &self.groups {
            for &p in group {
                if p >= rank {
                    return Err(Error::IndexOutOfRange { position: p, rank });
                }
                if seen.contains(&p) {
                    return Err(Error::OverlappingPositions(group.clone()));
                }
                seen.push(p);
            }
        }
        for (a, b) in &self.pair_swaps {
            if a.len() != b.len() {
                return Err(Error::ShapeMismatch(format!(
                    "swapped blocks must have equal length: {a:?} vs {b:?}"
                )));
            }
            let all: Vec<usize> = a.iter().chain(b).copied().collect();
            if let Some(&p) = all.iter().find(|&&p| p >= rank) {
                return Err(Error::IndexOutOfRange { position: p, rank });
            }
            ensure_distinct(&all)?;
        }
        Ok(())
    }
}

/// Outcome of [`check_symmetry`].
#[derive(Debug, Clone, PartialEq)]
pub struct SymmetryReport {
    pub symmetric: bool,
    pub max_violation: f64,
    /// 0-based index of the worst violating entry, if any entry violates.
    pub worst: Option<Vec<usize>>,
}

/// Compares every entry against each symmetric image required by `spec`.
pub fn check_symmetry(t: &Tensor, spec: &SymmetrySpec, tol: f64) -> Result<SymmetryReport> {
    spec.validate(t.rank())?;
    let mut images = Vec::new();
    for group in &spec.groups {
        for (k, &p) in group.iter().enumerate() {
            for &q in &group[k + 1..] {
                images.push(t.swap_positions(p, q)?);
            }
        }
    }
    for (a, b) in &spec.pair_swaps {
        images.push(t.swap_blocks(a, b)?);
    }

    let mut max_violation = 0.0;
    let mut worst_offset = None;
    for image in &images {
        for (k, (x, y)) in t.data.iter().zip(&image.data).enumerate() {
            let dev = (x - y).abs();
            if dev > max_violation {
                max_violation = dev;
                worst_offset = Some(k);
            }
        }
    }
    let symmetric = max_violation <= tol;
    let worst = if symmetric {
        None
    } else {
        worst_offset.and_then(|k| t.indices().nth(k))
    };
    Ok(SymmetryReport {
        symmetric,
        max_violation,
        worst,
    })
}

/// Projects `t` onto the symmetries in `spec`: full averaging over each group,
/// then averaging over each block swap.
pub fn symmetrize(t: &Tensor, spec: &SymmetrySpec) -> Result<Tensor> {
    spec.validate(t.rank())?;
    let mut out = t.clone();
    for group in &spec.groups {
        let perms = permutations(group.len());
        let mut acc = Tensor::zeros(t.dim(), t.rank())?;
        for perm in &perms {
            let image = out.remapped(|idx| {
                let original: Vec<usize> = group.iter().map(|&p| idx[p]).collect();
                for (slot, &src) in group.iter().zip(perm) {
                    idx[*slot] = original[src];
                }
            });
            acc = acc.add_scaled(&image, 1.0)?;
        }
        out = acc.scaled(1.0 / perms.len() as f64);
    }
    for (a, b) in &spec.pair_swaps {
        let swapped = out.swap_blocks(a, b)?;
        out = out.add_scaled(&swapped, 1.0)?.scaled(0.5);
    }
    Ok(out)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for rest in permutations(n - 1) {
        for pos in 0..=rest.len() {
            let mut p = rest.clone();
            p.insert(pos, n - 1);
            out.push(p);
        }
    }
    out
}

/// Largest absolute entrywise difference.
pub fn max_abs_diff(a: &Tensor, b: &Tensor) -> Result<f64> {
    same_shape(a, b)?;
    Ok(a.data
        .iter()
        .zip(&b.data)
        .fold(0.0, |m, (x, y)| m.max((x - y).abs())))
}
