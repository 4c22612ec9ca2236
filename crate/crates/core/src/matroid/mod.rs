//! Matroids given by their bases, with the derived cryptomorphic data,
//! constructions, minors, and symmetry computations.

mod catalog;
mod construct;
mod iso;
mod subset;

pub use catalog::{catalog, CatalogName};
pub use construct::{matroid_from_graph, matroid_from_matrix, Graph};
pub use iso::{automorphism_group, automorphism_group_with_limit, is_isomorphic, Permutation, PermutationGroup};
pub use subset::{k_subsets, Subset, SubsetFamily, MAX_GROUND_SET};

use std::collections::HashSet;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatroidError {
    #[error("a matroid needs a nonempty ground set")]
    EmptyGroundSet,
    #[error("ground sets above {MAX_GROUND_SET} elements are not supported (got {0})")]
    GroundSetTooLarge(usize),
    #[error("the basis family is empty")]
    EmptyFamily,
    #[error("bases {first} and {other} have different sizes")]
    UnequalBasisSizes { first: Subset, other: Subset },
    #[error("exchange axiom fails for A = {a}, B = {b}, x = {x}")]
    ExchangeAxiomViolation { a: Subset, b: Subset, x: usize },
    #[error("element {element} is outside the ground set 1..{n}")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("duplicate subset {0}")]
    DuplicateSubset(Subset),
    #[error("vertex {vertex} is outside 1..{n_vertices}")]
    VertexOutOfRange { vertex: usize, n_vertices: usize },
    #[error("a rank-0 matroid has no truncation")]
    RankZero,
    #[error("unknown catalog matroid '{0}'")]
    UnknownName(String),
    #[error("search budget exceeded")]
    SearchBudgetExceeded,
    #[error("graph is not simple")]
    NotSimpleGraph,
    #[error("stated rank {stated} differs from basis size {actual}")]
    RankMismatch { stated: usize, actual: usize },
}

/// A matroid on `{1, ..., n}` given by its bases.
///
/// Construction validates equal basis sizes and the exchange axiom, so every
/// value of this type is a genuine matroid.
#[derive(Clone, Debug)]
pub struct Matroid {
    n: usize,
    rank: usize,
    bases: SubsetFamily,
    lookup: HashSet<Subset>,
}

impl PartialEq for Matroid {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.bases == other.bases
    }
}

impl Eq for Matroid {}

impl Matroid {
    /// Validating constructor from a family of bases on `{1, ..., n}`.
    pub fn from_bases(n: usize, bases: Vec<Subset>) -> Result<Matroid, MatroidError> {
        if n == 0 {
            return Err(MatroidError::EmptyGroundSet);
        }
        if n > MAX_GROUND_SET {
            return Err(MatroidError::GroundSetTooLarge(n));
        }
        if bases.is_empty() {
            return Err(MatroidError::EmptyFamily);
        }
        let ground = Subset::full(n);
        for b in &bases {
            if !b.is_subset_of(ground) {
                let element = b.difference(ground).max_element().unwrap();
                return Err(MatroidError::ElementOutOfRange { element, n });
            }
        }
        let family = SubsetFamily::new(bases);
        let first = family.as_slice()[0];
        let rank = first.len();
        if let Some(other) = family.iter().find(|b| b.len() != rank) {
            return Err(MatroidError::UnequalBasisSizes {
                first,
                other: *other,
            });
        }
        let lookup: HashSet<Subset> = family.iter().copied().collect();
        check_exchange(&family, &lookup)?;
        Ok(Matroid {
            n,
            rank,
            bases: family,
            lookup,
        })
    }

    /// Convenience wrapper over [`Matroid::from_bases`] taking element lists.
    pub fn from_basis_lists(n: usize, bases: &[Vec<usize>]) -> Result<Matroid, MatroidError> {
        let mut sets = Vec::with_capacity(bases.len());
        for b in bases {
            if let Some(&e) = b.iter().find(|&&e| e == 0 || e > n) {
                return Err(MatroidError::ElementOutOfRange { element: e, n });
            }
            sets.push(Subset::from_elements(b.iter().copied()));
        }
        Matroid::from_bases(n, sets)
    }

    /// All `r`-subsets of `{1..n}` except the listed non-bases.
    pub fn from_nonbases(
        n: usize,
        rank: usize,
        nonbases: &[Vec<usize>],
    ) -> Result<Matroid, MatroidError> {
        let excluded: HashSet<Subset> = nonbases
            .iter()
            .map(|b| Subset::from_elements(b.iter().copied()))
            .collect();
        let bases = k_subsets(n, rank)
            .into_iter()
            .filter(|b| !excluded.contains(b))
            .collect();
        Matroid::from_bases(n, bases)
    }

    pub fn uniform(rank: usize, n: usize) -> Result<Matroid, MatroidError> {
        Matroid::from_bases(n, k_subsets(n, rank))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ground_set(&self) -> Subset {
        Subset::full(self.n)
    }

    pub fn bases(&self) -> &SubsetFamily {
        &self.bases
    }

    pub fn is_basis(&self, s: Subset) -> bool {
        self.lookup.contains(&s)
    }

    fn check_subset(&self, s: Subset) -> Result<(), MatroidError> {
        match s.difference(self.ground_set()).max_element() {
            Some(element) => Err(MatroidError::ElementOutOfRange { element, n: self.n }),
            None => Ok(()),
        }
    }

    pub fn is_independent(&self, s: Subset) -> bool {
        if s.len() == self.rank {
            return self.is_basis(s);
        }
        self.bases.iter().any(|b| s.is_subset_of(*b))
    }

    /// Rank of `a`: the largest intersection of `a` with a basis.
    pub fn rank_of(&self, a: Subset) -> Result<usize, MatroidError> {
        self.check_subset(a)?;
        Ok(self.rank_unchecked(a))
    }

    pub(crate) fn rank_unchecked(&self, a: Subset) -> usize {
        let mut best = 0;
        for b in &self.bases {
            let k = b.intersection(a).len();
            if k > best {
                best = k;
                if best == self.rank || best == a.len() {
                    break;
                }
            }
        }
        best
    }

    /// `a` together with every element that does not raise its rank.
    pub fn closure(&self, a: Subset) -> Result<Subset, MatroidError> {
        self.check_subset(a)?;
        let r = self.rank_unchecked(a);
        Ok(self
            .ground_set()
            .difference(a)
            .iter()
            .filter(|&e| self.rank_unchecked(a.with(e)) == r)
            .fold(a, |acc, e| acc.with(e)))
    }

    pub fn independent_sets(&self) -> SubsetFamily {
        let mut seen: HashSet<Subset> = HashSet::new();
        let mut stack: Vec<Subset> = self.bases.iter().copied().collect();
        while let Some(s) = stack.pop() {
            if !seen.insert(s) {
                continue;
            }
            for e in s.iter() {
                let t = s.without(e);
                if !seen.contains(&t) {
                    stack.push(t);
                }
            }
        }
        SubsetFamily::new(seen.into_iter().collect())
    }

    /// All flats, including `closure(∅)` and the ground set.
    pub fn flats(&self) -> SubsetFamily {
        let flats: HashSet<Subset> = self
            .independent_sets()
            .iter()
            .map(|&i| self.closure(i).expect("subset of ground set"))
            .collect();
        SubsetFamily::new(flats.into_iter().collect())
    }

    pub fn flats_of_rank(&self, k: usize) -> SubsetFamily {
        self.flats()
            .iter()
            .copied()
            .filter(|&f| self.rank_unchecked(f) == k)
            .collect()
    }

    /// Minimal dependent sets.
    pub fn circuits(&self) -> SubsetFamily {
        let mut out = Vec::new();
        for k in 1..=(self.rank + 1).min(self.n) {
            for s in k_subsets(self.n, k) {
                if !self.is_independent(s) && s.iter().all(|e| self.is_independent(s.without(e))) {
                    out.push(s);
                }
            }
        }
        SubsetFamily::new(out)
    }

    /// Elements contained in no basis.
    pub fn loops(&self) -> Subset {
        let covered = self
            .bases
            .iter()
            .fold(Subset::EMPTY, |acc, b| acc.union(*b));
        self.ground_set().difference(covered)
    }

    /// Elements contained in every basis.
    pub fn coloops(&self) -> Subset {
        self.bases
            .iter()
            .fold(self.ground_set(), |acc, b| acc.intersection(*b))
    }

    pub fn is_loop_free(&self) -> bool {
        self.loops().is_empty()
    }

    /// Loop-free with no parallel pairs.
    pub fn is_simple(&self) -> bool {
        self.is_loop_free()
            && k_subsets(self.n, 2)
                .into_iter()
                .all(|p| self.rank_unchecked(p) == 2)
    }

    /// Restriction to `E \ s`, relabeled to `1..n-|s|` in order.
    pub fn deletion(&self, s: Subset) -> Result<Matroid, MatroidError> {
        self.check_subset(s)?;
        let keep = self.ground_set().difference(s);
        if keep.is_empty() {
            return Err(MatroidError::EmptyGroundSet);
        }
        let r = self.rank_unchecked(keep);
        let bases: HashSet<Subset> = self
            .bases
            .iter()
            .map(|b| b.intersection(keep))
            .filter(|b| b.len() == r)
            .map(|b| b.compress(keep))
            .collect();
        Matroid::from_bases(keep.len(), bases.into_iter().collect())
    }

    /// Contraction of `s`, via a maximal independent subset of `s`.
    pub fn contraction(&self, s: Subset) -> Result<Matroid, MatroidError> {
        self.check_subset(s)?;
        let keep = self.ground_set().difference(s);
        if keep.is_empty() {
            return Err(MatroidError::EmptyGroundSet);
        }
        let mut indep = Subset::EMPTY;
        for e in s.iter() {
            if self.is_independent(indep.with(e)) {
                indep = indep.with(e);
            }
        }
        let bases: Vec<Subset> = self
            .bases
            .iter()
            .filter(|b| indep.is_subset_of(**b))
            .map(|b| b.difference(indep).compress(keep))
            .collect();
        Matroid::from_bases(keep.len(), bases)
    }

    /// Bases are the independent sets of size `rank - 1`.
    pub fn truncation(&self) -> Result<Matroid, MatroidError> {
        if self.rank == 0 {
            return Err(MatroidError::RankZero);
        }
        let bases: Vec<Subset> = self
            .independent_sets()
            .iter()
            .copied()
            .filter(|s| s.len() == self.rank - 1)
            .collect();
        Matroid::from_bases(self.n, bases)
    }

    /// Relabels by `perm` (`perm[i-1]` is the new label of `i`).
    pub fn relabel(&self, perm: &Permutation) -> Matroid {
        let bases = self.bases.iter().map(|b| b.map(perm.images())).collect();
        Matroid::from_bases(self.n, bases).expect("relabeling preserves matroid axioms")
    }
}

fn check_exchange(family: &SubsetFamily, lookup: &HashSet<Subset>) -> Result<(), MatroidError> {
    let bases = family.as_slice();
    for &a in bases {
        for &b in bases {
            if a == b {
                continue;
            }
            let b_minus_a = b.difference(a);
            for x in a.difference(b).iter() {
                let base = a.without(x);
                if !b_minus_a.iter().any(|y| lookup.contains(&base.with(y))) {
                    return Err(MatroidError::ExchangeAxiomViolation { a, b, x });
                }
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn rank_two_example() -> Matroid {
        Matroid::from_basis_lists(4, &[vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4]])
            .unwrap()
    }

    fn fam(v: &[&[usize]]) -> Vec<Vec<usize>> {
        v.iter().map(|s| s.to_vec()).collect()
    }

    #[test]
    fn five_basis_example() {
        let m = rank_two_example();
        assert_eq!(m.rank(), 2);
        assert_eq!(m.bases().len(), 5);
    }

    #[test]
    fn exchange_violation_reports_witness() {
        let e = Matroid::from_basis_lists(4, &[vec![1, 2], vec![3, 4]]).unwrap_err();
        match e {
            MatroidError::ExchangeAxiomViolation { a, b, x } => {
                assert_eq!(a.to_vec(), vec![1, 2]);
                assert_eq!(b.to_vec(), vec![3, 4]);
                assert_eq!(x, 1);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn construction_errors() {
        assert_eq!(Matroid::from_bases(3, vec![]), Err(MatroidError::EmptyFamily));
        assert!(matches!(
            Matroid::from_basis_lists(3, &[vec![1], vec![2, 3]]),
            Err(MatroidError::UnequalBasisSizes { .. })
        ));
        assert_eq!(
            Matroid::from_basis_lists(3, &[vec![4]]),
            Err(MatroidError::ElementOutOfRange { element: 4, n: 3 })
        );
        assert_eq!(
            Matroid::from_bases(0, vec![Subset::EMPTY]),
            Err(MatroidError::EmptyGroundSet)
        );
    }

    #[test]
    fn singletons_form_u13() {
        let m = Matroid::from_basis_lists(3, &[vec![1], vec![2], vec![3]]).unwrap();
        assert_eq!(m, Matroid::uniform(1, 3).unwrap());
    }

    #[test]
    fn independent_sets_of_example() {
        let m = rank_two_example();
        assert_eq!(
            m.independent_sets().to_vecs(),
            fam(&[&[], &[1], &[1, 2], &[1, 3], &[1, 4], &[2], &[2, 3], &[2, 4], &[3], &[4]])
        );
        assert_eq!(Matroid::uniform(3, 3).unwrap().independent_sets().len(), 8);
        let zero = Matroid::from_bases(2, vec![Subset::EMPTY]).unwrap();
        assert_eq!(zero.independent_sets().to_vecs(), fam(&[&[]]));
    }

    #[test]
    fn ranks_of_example() {
        let m = rank_two_example();
        assert_eq!(m.rank_of(Subset::from_elements([3, 4])).unwrap(), 1);
        assert_eq!(m.rank_of(Subset::EMPTY).unwrap(), 0);
        assert_eq!(m.rank_of(m.ground_set()).unwrap(), 2);
        assert!(m.rank_of(Subset::from_elements([5])).is_err());
    }

    #[test]
    fn flats_of_example() {
        let m = rank_two_example();
        assert_eq!(
            m.flats().to_vecs(),
            fam(&[&[], &[1], &[1, 2, 3, 4], &[2], &[3, 4]])
        );
        assert_eq!(Matroid::uniform(3, 3).unwrap().flats().len(), 8);
    }

    #[test]
    fn circuits_of_example() {
        let m = rank_two_example();
        assert_eq!(m.circuits().to_vecs(), fam(&[&[1, 2, 3], &[1, 2, 4], &[3, 4]]));
        assert!(Matroid::uniform(3, 3).unwrap().circuits().is_empty());
        let lp = Matroid::from_bases(1, vec![Subset::EMPTY]).unwrap();
        assert_eq!(lp.circuits().to_vecs(), fam(&[&[1]]));
    }

    #[test]
    fn loops() {
        assert!(rank_two_example().loops().is_empty());
        let zero = Matroid::from_bases(2, vec![Subset::EMPTY]).unwrap();
        assert_eq!(zero.loops().to_vec(), vec![1, 2]);
    }

    #[test]
    fn minors() {
        let u24 = Matroid::uniform(2, 4).unwrap();
        assert_eq!(
            u24.deletion(Subset::singleton(4)).unwrap(),
            Matroid::uniform(2, 3).unwrap()
        );
        assert_eq!(
            u24.contraction(Subset::singleton(1)).unwrap(),
            Matroid::uniform(1, 3).unwrap()
        );
        let d = rank_two_example().deletion(Subset::singleton(3)).unwrap();
        assert_eq!(d.bases().to_vecs(), fam(&[&[1, 2], &[1, 3], &[2, 3]]));
        // {3,4} is dependent: contract through the independent {3}
        let c = rank_two_example()
            .contraction(Subset::from_elements([3, 4]))
            .unwrap();
        assert_eq!(c.bases().to_vecs(), fam(&[&[1], &[2]]));
    }

    #[test]
    fn truncations() {
        assert_eq!(
            Matroid::uniform(3, 4).unwrap().truncation().unwrap(),
            Matroid::uniform(2, 4).unwrap()
        );
        let t = rank_two_example().truncation().unwrap();
        assert_eq!(t.rank(), 1);
        assert_eq!(t.bases().to_vecs(), fam(&[&[1], &[2], &[3], &[4]]));
        let zero = Matroid::from_bases(2, vec![Subset::EMPTY]).unwrap();
        assert_eq!(zero.truncation(), Err(MatroidError::RankZero));
    }
}
