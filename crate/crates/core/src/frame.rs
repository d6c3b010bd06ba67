//! Frames of discernment, subsets, partitions and set projection.

use std::collections::HashSet;
use std::fmt;
use std::ops::{BitAnd, BitOr, Not};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Default upper bound on frame size. Dense `2^N` tables stay below ~10⁸ entries.
pub const MAX_FRAME: usize = 24;

/// Largest limit a frame may be configured with; masks are 32-bit words.
pub const HARD_FRAME_LIMIT: usize = 30;

/// A subset of a frame, one bit per element (bit `i` ↔ element `i`).
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SubsetMask(u32);

impl SubsetMask {
    pub const EMPTY: SubsetMask = SubsetMask(0);

    pub const fn from_bits(bits: u32) -> Self {
        SubsetMask(bits)
    }

    pub const fn bits(self) -> u32 {
        self.0
    }

    /// All elements of an `n`-element frame.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= 32);
        if n >= 32 {
            SubsetMask(u32::MAX)
        } else {
            SubsetMask((1u32 << n) - 1)
        }
    }

    pub fn singleton(index: usize) -> Self {
        SubsetMask(1 << index)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        SubsetMask(indices.into_iter().fold(0, |acc, i| acc | (1 << i)))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, index: usize) -> bool {
        index < 32 && self.0 & (1 << index) != 0
    }

    pub fn is_subset_of(self, other: SubsetMask) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_strict_subset_of(self, other: SubsetMask) -> bool {
        self.is_subset_of(other) && self != other
    }

    pub fn intersects(self, other: SubsetMask) -> bool {
        self.0 & other.0 != 0
    }

    pub fn fits(self, frame_size: usize) -> bool {
        self.is_subset_of(SubsetMask::full(frame_size))
    }

    /// Element indices in increasing order.
    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let low = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(low)
        })
    }

    pub fn as_index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SubsetMask({:#b})", self.0)
    }
}

impl fmt::Display for SubsetMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.indices().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "#{i}")?;
        }
        f.write_str("}")
    }
}

impl BitOr for SubsetMask {
    type Output = SubsetMask;
    fn bitor(self, rhs: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 | rhs.0)
    }
}

impl BitAnd for SubsetMask {
    type Output = SubsetMask;
    fn bitand(self, rhs: SubsetMask) -> SubsetMask {
        SubsetMask(self.0 & rhs.0)
    }
}

impl Not for SubsetMask {
    type Output = SubsetMask;
    fn not(self) -> SubsetMask {
        SubsetMask(!self.0)
    }
}

/// A finite frame of discernment: an ordered list of distinct labels.
///
/// Cloning is cheap; the labels are shared. Two frames are equal when their
/// labels are equal in order; the size limit is not part of identity.
#[derive(Clone)]
pub struct Frame {
    labels: Arc<[String]>,
    limit: usize,
}

impl Frame {
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        Self::with_limit(labels, MAX_FRAME)
    }

    /// Like [`Frame::new`] with a custom size limit (at most [`HARD_FRAME_LIMIT`]).
    pub fn with_limit<I, S>(labels: I, limit: usize) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let limit = limit.min(HARD_FRAME_LIMIT);
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyFrame);
        }
        if labels.len() > limit {
            return Err(Error::Capacity {
                size: labels.len(),
                limit,
            });
        }
        let mut seen = HashSet::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() {
                return Err(Error::EmptyLabel(i));
            }
            if !seen.insert(label.as_str()) {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Frame {
            labels: labels.into(),
            limit,
        })
    }

    /// Frame `{1, 2, …, n}`.
    pub fn numbered(n: usize) -> Result<Self> {
        Self::new((1..=n).map(|i| i.to_string()))
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> &str {
        &self.labels[index]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn full(&self) -> SubsetMask {
        SubsetMask::full(self.len())
    }

    /// Number of subsets, `2^N`.
    pub fn power_set_len(&self) -> usize {
        1usize << self.len()
    }

    pub fn check_mask(&self, mask: SubsetMask) -> Result<()> {
        if mask.fits(self.len()) {
            Ok(())
        } else {
            Err(Error::InvalidMask {
                mask,
                frame_size: self.len(),
            })
        }
    }

    pub fn subset<'a, I>(&self, labels: I) -> Result<SubsetMask>
    where
        I: IntoIterator<Item = &'a str>,
    {
        let mut mask = SubsetMask::EMPTY;
        for label in labels {
            let index = self
                .index_of(label)
                .ok_or_else(|| Error::UnknownLabel(label.to_string()))?;
            mask = mask | SubsetMask::singleton(index);
        }
        Ok(mask)
    }

    pub fn subset_labels(&self, mask: SubsetMask) -> Vec<&str> {
        mask.indices().map(|i| self.label(i)).collect()
    }

    /// Human-readable rendering such as `{a,b}`.
    pub fn display_subset(&self, mask: SubsetMask) -> String {
        format!("{{{}}}", self.subset_labels(mask).join(","))
    }

    /// Appends a new element; the limit is inherited.
    pub fn extended(&self, label: impl Into<String>) -> Result<Frame> {
        let mut labels = self.labels.to_vec();
        labels.push(label.into());
        Frame::with_limit(labels, self.limit)
    }
}

impl PartialEq for Frame {
    fn eq(&self, other: &Frame) -> bool {
        Arc::ptr_eq(&self.labels, &other.labels) || self.labels == other.labels
    }
}

impl Eq for Frame {}

impl fmt::Debug for Frame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("Frame").field(&self.labels).finish()
    }
}

/// A partition of a frame into non-empty, pairwise-disjoint blocks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    frame: Frame,
    blocks: Vec<SubsetMask>,
}

impl Partition {
    pub fn new(frame: &Frame, blocks: Vec<SubsetMask>) -> Result<Self> {
        let mut covered = SubsetMask::EMPTY;
        for (i, &block) in blocks.iter().enumerate() {
            frame.check_mask(block)?;
            if block.is_empty() {
                return Err(Error::InvalidPartition(format!("block {i} is empty")));
            }
            if block.intersects(covered) {
                return Err(Error::InvalidPartition(format!(
                    "block {i} overlaps an earlier block"
                )));
            }
            covered = covered | block;
        }
        if covered != frame.full() {
            return Err(Error::InvalidPartition(format!(
                "blocks do not cover {}",
                frame.display_subset(frame.full() & !covered)
            )));
        }
        Ok(Partition {
            frame: frame.clone(),
            blocks,
        })
    }

    pub fn from_labels<S: AsRef<str>>(frame: &Frame, groups: &[Vec<S>]) -> Result<Self> {
        let blocks = groups
            .iter()
            .map(|g| frame.subset(g.iter().map(AsRef::as_ref)))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(frame, blocks)
    }

    pub fn singletons(frame: &Frame) -> Self {
        Partition {
            frame: frame.clone(),
            blocks: (0..frame.len()).map(SubsetMask::singleton).collect(),
        }
    }

    pub fn whole(frame: &Frame) -> Self {
        Partition {
            frame: frame.clone(),
            blocks: vec![frame.full()],
        }
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    pub fn blocks(&self) -> &[SubsetMask] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Union of the blocks selected by `blocks` (a mask over the block frame).
    pub fn union_of(&self, blocks: SubsetMask) -> SubsetMask {
        blocks
            .indices()
            .fold(SubsetMask::EMPTY, |acc, i| acc | self.blocks[i])
    }
}

/// `A↓Y`: the set of blocks of `partition` that meet `subset`.
pub fn project_set(subset: SubsetMask, partition: &Partition) -> Result<SubsetMask> {
    partition.frame.check_mask(subset)?;
    Ok(project_unchecked(subset, partition))
}

pub(crate) fn project_unchecked(subset: SubsetMask, partition: &Partition) -> SubsetMask {
    let mut out = 0u32;
    for (i, &block) in partition.blocks.iter().enumerate() {
        if block.intersects(subset) {
            out |= 1 << i;
        }
    }
    SubsetMask(out)
}

/// The frame whose elements are the blocks of `partition`.
///
/// Each block is labelled by its member labels, sorted and comma-joined.
pub fn block_frame(partition: &Partition) -> Frame {
    let mut labels: Vec<String> = partition
        .blocks
        .iter()
        .map(|&b| {
            let mut members = partition.frame.subset_labels(b);
            members.sort_unstable();
            members.join(",")
        })
        .collect();
    // Comma-joining can collide only when labels themselves contain commas.
    let distinct: HashSet<&String> = labels.iter().collect();
    if distinct.len() != labels.len() {
        for (i, l) in labels.iter_mut().enumerate() {
            l.push_str(&format!("#{}", i + 1));
        }
    }
    Frame::with_limit(labels, partition.frame.limit)
        .expect("block labels are non-empty and distinct")
}

/// A product frame `X = {1..P} × {1..Q}` with its row partition `Y₁` (blocks
/// `A_i`) and column partition `Y₂` (blocks `B_j`); `|A_i ∩ B_j| = 1`.
///
/// Element `(i, j)` sits at index `i·Q + j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductStructure {
    pub frame: Frame,
    pub rows: Partition,
    pub columns: Partition,
}

impl ProductStructure {
    pub fn row_count(&self) -> usize {
        self.rows.len()
    }

    pub fn column_count(&self) -> usize {
        self.columns.len()
    }

    pub fn cell(&self, row: usize, column: usize) -> usize {
        row * self.columns.len() + column
    }

    /// The "rectangle" `{(i, j) : i ∈ rows, j ∈ columns}`.
    pub fn rectangle(&self, rows: SubsetMask, columns: SubsetMask) -> SubsetMask {
        let mut out = SubsetMask::EMPTY;
        for i in rows.indices() {
            for j in columns.indices() {
                out = out | SubsetMask::singleton(self.cell(i, j));
            }
        }
        out
    }
}

pub fn product_structure(rows: usize, columns: usize) -> Result<ProductStructure> {
    if rows == 0 || columns == 0 {
        return Err(Error::EmptyFrame);
    }
    if rows * columns > MAX_FRAME {
        return Err(Error::Capacity {
            size: rows * columns,
            limit: MAX_FRAME,
        });
    }
    product_of(&Frame::numbered(rows)?, &Frame::numbered(columns)?)
}

/// Product structure over two labelled frames; element `(a, x)` is labelled `(a,x)`.
pub fn product_of(first: &Frame, second: &Frame) -> Result<ProductStructure> {
    let (p, q) = (first.len(), second.len());
    let limit = first.limit().min(second.limit());
    if p * q > limit {
        return Err(Error::Capacity { size: p * q, limit });
    }
    let labels = first
        .labels()
        .iter()
        .flat_map(|a| second.labels().iter().map(move |b| format!("({a},{b})")));
    let frame = Frame::with_limit(labels, limit)?;
    let rows = (0..p)
        .map(|i| SubsetMask::from_indices((0..q).map(|j| i * q + j)))
        .collect();
    let columns = (0..q)
        .map(|j| SubsetMask::from_indices((0..p).map(|i| i * q + j)))
        .collect();
    Ok(ProductStructure {
        rows: Partition::new(&frame, rows)?,
        columns: Partition::new(&frame, columns)?,
        frame,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four() -> Frame {
        Frame::numbered(4).unwrap()
    }

    #[test]
    fn frame_validation() {
        assert_eq!(Frame::new(Vec::<String>::new()), Err(Error::EmptyFrame));
        assert_eq!(
            Frame::new(["a", "b", "a"]),
            Err(Error::DuplicateLabel("a".into()))
        );
        assert_eq!(Frame::new(["a", ""]), Err(Error::EmptyLabel(1)));
        assert!(matches!(
            Frame::numbered(25),
            Err(Error::Capacity {
                size: 25,
                limit: 24
            })
        ));
        assert!(Frame::with_limit((0..26).map(|i| i.to_string()), 26).is_ok());
        assert_eq!(Frame::new(["x"]).unwrap().len(), 1);
    }

    #[test]
    fn project_examples() {
        let x = four();
        let y = Partition::from_labels(&x, &[vec!["1", "2"], vec!["3", "4"]]).unwrap();
        let a = x.subset(["1", "3"]).unwrap();
        assert_eq!(project_set(a, &y).unwrap(), SubsetMask::from_bits(0b11));
        assert_eq!(
            project_set(SubsetMask::EMPTY, &y).unwrap(),
            SubsetMask::EMPTY
        );
        assert_eq!(project_set(x.full(), &y).unwrap(), SubsetMask::full(2));
        assert!(matches!(
            project_set(SubsetMask::from_bits(0b10000), &y),
            Err(Error::InvalidMask { .. })
        ));
    }

    #[test]
    fn partition_validation() {
        let x = four();
        assert!(Partition::new(&x, vec![SubsetMask::from_bits(0b0011)]).is_err());
        assert!(Partition::new(
            &x,
            vec![SubsetMask::from_bits(0b0111), SubsetMask::from_bits(0b1100)]
        )
        .is_err());
        assert!(
            Partition::new(&x, vec![SubsetMask::from_bits(0b1111), SubsetMask::EMPTY]).is_err()
        );
    }

    #[test]
    fn block_frames() {
        let x = Frame::new(["d", "c", "b", "a"]).unwrap();
        let y = Partition::from_labels(&x, &[vec!["d", "c"], vec!["b", "a"]]).unwrap();
        let bf = block_frame(&y);
        assert_eq!(bf.labels(), ["c,d", "a,b"]);
        assert_eq!(block_frame(&Partition::singletons(&x)).len(), 4);
        assert_eq!(block_frame(&Partition::whole(&x)).len(), 1);
    }

    #[test]
    fn block_frame_label_collision() {
        let x = Frame::new(["a,b", "a", "b", "c"]).unwrap();
        let y = Partition::from_labels(&x, &[vec!["a,b", "c"], vec!["a", "b"]]).unwrap();
        let bf = block_frame(&y);
        assert_eq!(bf.len(), 2);
    }

    #[test]
    fn product_blocks_meet_in_one_cell() {
        for (p, q) in [(2, 2), (1, 3), (3, 2), (3, 3), (4, 6)] {
            let ps = product_structure(p, q).unwrap();
            assert_eq!(ps.frame.len(), p * q);
            for &a in ps.rows.blocks() {
                for &b in ps.columns.blocks() {
                    assert_eq!((a & b).len(), 1);
                }
            }
        }
        let degenerate = product_structure(1, 3).unwrap();
        assert_eq!(degenerate.rows.blocks(), [degenerate.frame.full()]);
        assert!(degenerate.columns.blocks().iter().all(|b| b.len() == 1));
        assert!(matches!(
            product_structure(5, 5),
            Err(Error::Capacity { .. })
        ));
    }

    #[test]
    fn projection_is_a_union_homomorphism() {
        let x = Frame::numbered(6).unwrap();
        let y = Partition::new(
            &x,
            vec![
                SubsetMask::from_bits(0b000011),
                SubsetMask::from_bits(0b011100),
                SubsetMask::from_bits(0b100000),
            ],
        )
        .unwrap();
        for a in 0..64u32 {
            let a = SubsetMask::from_bits(a);
            assert_eq!(project_set(a, &y).unwrap().is_empty(), a.is_empty());
            for b in 0..64u32 {
                let b = SubsetMask::from_bits(b);
                assert_eq!(
                    project_set(a | b, &y).unwrap(),
                    project_set(a, &y).unwrap() | project_set(b, &y).unwrap()
                );
            }
        }
    }
}
