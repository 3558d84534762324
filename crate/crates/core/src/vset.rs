//! Vertex sets as 64-bit masks, plus the subset enumeration and binomial
//! helpers the rest of the crate leans on.

use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use serde::{Deserialize, Serialize};

/// A set of vertices in `0..64`, bit `v` set iff `v` is a member.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", from = "Vec<usize>")]
pub struct VSet(pub u64);

impl VSet {
    pub const EMPTY: VSet = VSet(0);

    /// `{0, .., n-1}`.
    pub fn full(n: usize) -> VSet {
        debug_assert!(n <= 64);
        if n == 64 {
            VSet(u64::MAX)
        } else {
            VSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: usize) -> VSet {
        VSet(1u64 << v)
    }

    /// `{lo, .., hi-1}`.
    pub fn range(lo: usize, hi: usize) -> VSet {
        VSet::full(hi) - VSet::full(lo)
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(it: I) -> VSet {
        VSet(it.into_iter().fold(0u64, |m, v| m | (1u64 << v)))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn is_subset(self, other: VSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: VSet) -> bool {
        self.0 & other.0 == 0
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn with(self, v: usize) -> VSet {
        VSet(self.0 | 1u64 << v)
    }

    pub fn without(self, v: usize) -> VSet {
        VSet(self.0 & !(1u64 << v))
    }

    /// Smallest member.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Largest member.
    pub fn last(self) -> Option<usize> {
        (self.0 != 0).then(|| 63 - self.0.leading_zeros() as usize)
    }

    /// True if no bit at position `n` or above is set.
    pub fn fits(self, n: usize) -> bool {
        self.is_subset(VSet::full(n))
    }

    pub fn iter(self) -> VSetIter {
        VSetIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All `r`-subsets of `self`, in lexicographic order of their sorted
    /// vertex lists.
    pub fn subsets(self, r: usize) -> Combinations {
        Combinations::new(self.to_vec(), r)
    }

    /// The `r` smallest members.
    pub fn take_lowest(self, r: usize) -> VSet {
        VSet::from_vertices(self.iter().take(r))
    }
}

impl BitOr for VSet {
    type Output = VSet;
    fn bitor(self, rhs: VSet) -> VSet {
        VSet(self.0 | rhs.0)
    }
}

impl BitAnd for VSet {
    type Output = VSet;
    fn bitand(self, rhs: VSet) -> VSet {
        VSet(self.0 & rhs.0)
    }
}

impl Sub for VSet {
    type Output = VSet;
    fn sub(self, rhs: VSet) -> VSet {
        VSet(self.0 & !rhs.0)
    }
}

impl Not for VSet {
    type Output = VSet;
    fn not(self) -> VSet {
        VSet(!self.0)
    }
}

impl fmt::Debug for VSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl From<VSet> for Vec<usize> {
    fn from(s: VSet) -> Vec<usize> {
        s.to_vec()
    }
}

impl From<Vec<usize>> for VSet {
    fn from(v: Vec<usize>) -> VSet {
        VSet::from_vertices(v.into_iter().filter(|&x| x < 64))
    }
}

impl FromIterator<usize> for VSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> VSet {
        VSet::from_vertices(iter)
    }
}

pub struct VSetIter(u64);

impl Iterator for VSetIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let c = self.0.count_ones() as usize;
        (c, Some(c))
    }
}

impl ExactSizeIterator for VSetIter {}

impl IntoIterator for VSet {
    type Item = usize;
    type IntoIter = VSetIter;
    fn into_iter(self) -> VSetIter {
        self.iter()
    }
}

/// Lexicographic `r`-combinations of a sorted element list, yielded as masks.
pub struct Combinations {
    elems: Vec<usize>,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(elems: Vec<usize>, r: usize) -> Combinations {
        let done = r > elems.len();
        Combinations {
            elems,
            idx: (0..r).collect(),
            done,
        }
    }
}

impl Iterator for Combinations {
    type Item = VSet;

    fn next(&mut self) -> Option<VSet> {
        if self.done {
            return None;
        }
        let out = VSet::from_vertices(self.idx.iter().map(|&i| self.elems[i]));
        let r = self.idx.len();
        let m = self.elems.len();
        // advance to the next combination
        let mut i = r;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < m - r + i {
                self.idx[i] += 1;
                for j in i + 1..r {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// `C(n, r)`, zero when `r > n`. Saturates at `u64::MAX`.
pub fn binom(n: usize, r: usize) -> u64 {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

/// Binomial as `f64`, for thresholds.
pub fn binom_f(n: usize, r: usize) -> f64 {
    binom(n, r) as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binomials() {
        assert_eq!(binom(5, 2), 10);
        assert_eq!(binom(64, 8), 4_426_165_368);
        assert_eq!(binom(3, 4), 0);
        assert_eq!(binom(7, 0), 1);
    }

    #[test]
    fn combinations_are_lexicographic_and_complete() {
        let all: Vec<Vec<usize>> = VSet::full(5).subsets(3).map(|s| s.to_vec()).collect();
        assert_eq!(all.len(), 10);
        assert_eq!(all[0], vec![0, 1, 2]);
        assert_eq!(all[1], vec![0, 1, 3]);
        assert_eq!(all[9], vec![2, 3, 4]);
        assert_eq!(VSet::full(4).subsets(0).count(), 1);
        assert_eq!(VSet::full(2).subsets(3).count(), 0);
    }

    #[test]
    fn set_algebra() {
        let a = VSet::from_vertices([1, 3, 5]);
        let b = VSet::range(3, 6);
        assert_eq!((a & b).to_vec(), vec![3, 5]);
        assert_eq!((a - b).to_vec(), vec![1]);
        assert_eq!(a.first(), Some(1));
        assert_eq!(a.last(), Some(5));
        assert!(a.fits(6) && !a.fits(5));
        assert_eq!(VSet::full(64).len(), 64);
    }

    #[test]
    fn serde_as_vertex_list() {
        let s = VSet::from_vertices([0, 2, 7]);
        let js = serde_json::to_string(&s).unwrap();
        assert_eq!(js, "[0,2,7]");
        let back: VSet = serde_json::from_str(&js).unwrap();
        assert_eq!(back, s);
    }
}
