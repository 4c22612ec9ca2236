use std::cmp::Ordering;
use std::fmt;

/// A subset of `{1, ..., n}` for `n <= 63`, stored as a bitmask with bit
/// `i - 1` set when element `i` is present.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Subset(pub u64);

pub const MAX_GROUND_SET: usize = 63;

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// `{1, ..., n}`.
    pub fn full(n: usize) -> Subset {
        if n >= 64 {
            Subset(u64::MAX)
        } else {
            Subset((1u64 << n) - 1)
        }
    }

    /// Builds from 1-indexed elements. Panics on 0 or elements above 63.
    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I) -> Subset {
        Subset(elements.into_iter().fold(0, |acc, e| {
            assert!((1..=MAX_GROUND_SET).contains(&e), "element {e} out of range");
            acc | (1 << (e - 1))
        }))
    }

    pub fn singleton(e: usize) -> Subset {
        Subset::from_elements([e])
    }

    pub fn contains(self, e: usize) -> bool {
        (1..=64).contains(&e) && self.0 & (1 << (e - 1)) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn with(self, e: usize) -> Subset {
        Subset(self.0 | (1 << (e - 1)))
    }

    pub fn without(self, e: usize) -> Subset {
        Subset(self.0 & !(1 << (e - 1)))
    }

    pub fn union(self, other: Subset) -> Subset {
        Subset(self.0 | other.0)
    }

    pub fn intersection(self, other: Subset) -> Subset {
        Subset(self.0 & other.0)
    }

    pub fn difference(self, other: Subset) -> Subset {
        Subset(self.0 & !other.0)
    }

    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Largest element, if any.
    pub fn max_element(self) -> Option<usize> {
        (self.0 != 0).then(|| 64 - self.0.leading_zeros() as usize)
    }

    /// Elements in increasing order.
    pub fn iter(self) -> SubsetIter {
        SubsetIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Compares by the lexicographic order on sorted element lists, with a
    /// proper prefix first.
    pub fn lex_cmp(self, other: Subset) -> Ordering {
        self.iter().cmp(other.iter())
    }

    /// Image under `map`, where `map[i - 1]` is the image of element `i`.
    pub fn map(self, map: &[usize]) -> Subset {
        Subset::from_elements(self.iter().map(|e| map[e - 1]))
    }

    /// Relabels the elements kept by `keep` to `1..=|keep|`, preserving order.
    pub fn compress(self, keep: Subset) -> Subset {
        let mut out = 0u64;
        for (pos, e) in keep.iter().enumerate() {
            if self.contains(e) {
                out |= 1 << pos;
            }
        }
        Subset(out)
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.lex_cmp(*other)
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct SubsetIter(u64);

impl Iterator for SubsetIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(tz + 1)
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|e| e.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// All `k`-subsets of `{1, ..., n}` in lexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<Subset> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (1..=k).collect();
    loop {
        out.push(Subset::from_elements(idx.iter().copied()));
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] < n - (k - 1 - i) {
                idx[i] += 1;
                for j in i + 1..k {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// A deduplicated family of subsets in canonical (lexicographic) order.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct SubsetFamily(Vec<Subset>);

impl SubsetFamily {
    pub fn new(mut sets: Vec<Subset>) -> Self {
        sets.sort();
        sets.dedup();
        SubsetFamily(sets)
    }

    pub fn as_slice(&self) -> &[Subset] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Subset> {
        self.0.iter()
    }

    pub fn contains(&self, s: Subset) -> bool {
        self.0.binary_search(&s).is_ok()
    }

    pub fn to_vecs(&self) -> Vec<Vec<usize>> {
        self.0.iter().map(|s| s.to_vec()).collect()
    }
}

impl<'a> IntoIterator for &'a SubsetFamily {
    type Item = &'a Subset;
    type IntoIter = std::slice::Iter<'a, Subset>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl FromIterator<Subset> for SubsetFamily {
    fn from_iter<T: IntoIterator<Item = Subset>>(iter: T) -> Self {
        SubsetFamily::new(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_is_lexicographic_on_sorted_lists() {
        let fam = SubsetFamily::new(vec![
            Subset::from_elements([1, 3]),
            Subset::from_elements([1, 2, 3]),
            Subset::EMPTY,
            Subset::from_elements([2]),
            Subset::from_elements([1, 2]),
            Subset::from_elements([1, 2]),
        ]);
        assert_eq!(
            fam.to_vecs(),
            vec![vec![], vec![1, 2], vec![1, 2, 3], vec![1, 3], vec![2]]
        );
    }

    #[test]
    fn k_subsets_counts() {
        assert_eq!(k_subsets(7, 3).len(), 35);
        assert_eq!(k_subsets(4, 0), vec![Subset::EMPTY]);
        assert!(k_subsets(2, 3).is_empty());
        let s = k_subsets(4, 2);
        assert_eq!(s[0].to_vec(), vec![1, 2]);
        assert_eq!(s[5].to_vec(), vec![3, 4]);
    }

    #[test]
    fn compress_keeps_relative_order() {
        let s = Subset::from_elements([2, 5]);
        let keep = Subset::from_elements([2, 3, 5]);
        assert_eq!(s.compress(keep).to_vec(), vec![1, 3]);
    }
}
