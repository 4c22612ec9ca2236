//! Isomorphism and automorphism search by backtracking over element images,
//! pruned by per-element invariants and partial independence checks.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use super::{Matroid, MatroidError, Subset};

/// A bijection of `{1, ..., n}`; `images()[i - 1]` is the image of `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation((1..=n).collect())
    }

    pub fn new(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i == 0 || i > n || seen[i - 1] {
                return None;
            }
            seen[i - 1] = true;
        }
        Some(Permutation(images))
    }

    /// Product of disjoint or overlapping cycles, applied right to left.
    pub fn from_cycles(n: usize, cycles: &[&[usize]]) -> Option<Self> {
        let mut p = Permutation::identity(n);
        for c in cycles.iter().rev() {
            let mut images: Vec<usize> = (1..=n).collect();
            for (k, &e) in c.iter().enumerate() {
                images[e - 1] = c[(k + 1) % c.len()];
            }
            p = Permutation::new(images)?.compose(&p);
        }
        Some(p)
    }

    pub fn images(&self) -> &[usize] {
        &self.0
    }

    pub fn apply(&self, e: usize) -> usize {
        self.0[e - 1]
    }

    pub fn apply_set(&self, s: Subset) -> Subset {
        s.map(&self.0)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation(other.0.iter().map(|&e| self.0[e - 1]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.0.len()];
        for (i, &e) in self.0.iter().enumerate() {
            inv[e - 1] = i + 1;
        }
        Permutation(inv)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &e)| e == i + 1)
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.0.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 1..=n {
            if seen[start - 1] || self.apply(start) == start {
                continue;
            }
            let mut cyc = Vec::new();
            let mut e = start;
            while !seen[e - 1] {
                seen[e - 1] = true;
                cyc.push(e);
                e = self.apply(e);
            }
            out.push(cyc);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|e| e.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PermutationGroup {
    degree: usize,
    generators: Vec<Permutation>,
    order: u128,
}

impl PermutationGroup {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> u128 {
        self.order
    }

    /// Every group element, by breadth-first closure of the generators.
    /// Only sensible for small groups.
    pub fn elements(&self) -> Vec<Permutation> {
        let id = Permutation::identity(self.degree);
        let mut seen: HashSet<Permutation> = HashSet::from([id.clone()]);
        let mut queue = VecDeque::from([id]);
        while let Some(g) = queue.pop_front() {
            for s in &self.generators {
                let h = s.compose(&g);
                if seen.insert(h.clone()) {
                    queue.push_back(h);
                }
            }
        }
        let mut v: Vec<Permutation> = seen.into_iter().collect();
        v.sort();
        v
    }
}

/// Isomorphism-invariant fingerprint of one element.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct ElementInvariant {
    bases_containing: usize,
    flats_containing: Vec<(usize, usize)>,
}

struct SearchSide<'a> {
    matroid: &'a Matroid,
    independent: HashSet<Subset>,
    invariants: Vec<ElementInvariant>,
}

impl<'a> SearchSide<'a> {
    fn new(matroid: &'a Matroid) -> Self {
        let independent: HashSet<Subset> = matroid.independent_sets().iter().copied().collect();
        let flats = matroid.flats();
        let invariants = (1..=matroid.n())
            .map(|e| {
                let mut fl: Vec<(usize, usize)> = flats
                    .iter()
                    .filter(|f| f.contains(e))
                    .map(|&f| (matroid.rank_unchecked(f), f.len()))
                    .collect();
                fl.sort();
                ElementInvariant {
                    bases_containing: matroid.bases().iter().filter(|b| b.contains(e)).count(),
                    flats_containing: fl,
                }
            })
            .collect();
        SearchSide {
            matroid,
            independent,
            invariants,
        }
    }
}

struct Search<'a> {
    from: &'a SearchSide<'a>,
    to: &'a SearchSide<'a>,
    budget: u64,
    nodes: u64,
}

impl<'a> Search<'a> {
    /// Extends `map` (0 = unassigned) to a full isomorphism; elements are
    /// assigned in increasing order starting after the preset prefix.
    fn extend(&mut self, map: &mut Vec<usize>, used: &mut Subset) -> Result<bool, MatroidError> {
        let n = map.len();
        let Some(pos) = map.iter().position(|&x| x == 0) else {
            return Ok(true);
        };
        let e = pos + 1;
        for y in 1..=n {
            if used.contains(y) || self.from.invariants[e - 1] != self.to.invariants[y - 1] {
                continue;
            }
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(MatroidError::SearchBudgetExceeded);
            }
            map[pos] = y;
            if self.consistent(map, e) {
                *used = used.with(y);
                if self.extend(map, used)? {
                    return Ok(true);
                }
                *used = used.without(y);
            }
            map[pos] = 0;
        }
        Ok(false)
    }

    /// Checks independence agreement on all subsets of the assigned domain
    /// that contain `e` and have size at most the rank.
    fn consistent(&self, map: &[usize], e: usize) -> bool {
        let domain: Vec<usize> = (1..=map.len())
            .filter(|&i| map[i - 1] != 0 && i != e)
            .collect();
        let r = self.from.matroid.rank();
        let mut stack: Vec<(usize, Subset, Subset)> =
            vec![(0, Subset::singleton(e), Subset::singleton(map[e - 1]))];
        while let Some((start, s, t)) = stack.pop() {
            let indep = self.from.independent.contains(&s);
            if indep != self.to.independent.contains(&t) {
                return false;
            }
            // supersets of dependent sets are dependent on both sides
            if !indep || s.len() == r {
                continue;
            }
            for k in start..domain.len() {
                let d = domain[k];
                stack.push((k + 1, s.with(d), t.with(map[d - 1])));
            }
        }
        true
    }
}

fn quick_reject(m1: &Matroid, m2: &Matroid) -> bool {
    m1.n() != m2.n() || m1.rank() != m2.rank() || m1.bases().len() != m2.bases().len()
}

pub const DEFAULT_SEARCH_BUDGET: u64 = 5_000_000;

/// Returns a basis-preserving bijection `M1 -> M2` if one exists.
pub fn is_isomorphic(m1: &Matroid, m2: &Matroid) -> Result<Option<Permutation>, MatroidError> {
    if quick_reject(m1, m2) {
        return Ok(None);
    }
    let a = SearchSide::new(m1);
    let b = SearchSide::new(m2);
    let mut inv_a = a.invariants.clone();
    let mut inv_b = b.invariants.clone();
    inv_a.sort();
    inv_b.sort();
    if inv_a != inv_b {
        return Ok(None);
    }
    let mut search = Search {
        from: &a,
        to: &b,
        budget: DEFAULT_SEARCH_BUDGET,
        nodes: 0,
    };
    let mut map = vec![0; m1.n()];
    let mut used = Subset::EMPTY;
    if search.extend(&mut map, &mut used)? {
        let p = Permutation::new(map).expect("search yields a bijection");
        debug_assert_eq!(&m1.relabel(&p), m2);
        Ok(Some(p))
    } else {
        Ok(None)
    }
}

/// Automorphism group with the default ground-set guard `n <= 12`.
pub fn automorphism_group(m: &Matroid) -> Result<PermutationGroup, MatroidError> {
    automorphism_group_with_limit(m, 12)
}

/// Generators and exact order via a stabilizer chain: at level `i` the
/// orbit of `i` under the pointwise stabilizer of `1..i-1` is found by one
/// extension search per candidate image.
pub fn automorphism_group_with_limit(
    m: &Matroid,
    max_n: usize,
) -> Result<PermutationGroup, MatroidError> {
    let n = m.n();
    if n > max_n {
        return Err(MatroidError::SearchBudgetExceeded);
    }
    let side = SearchSide::new(m);
    let mut search = Search {
        from: &side,
        to: &side,
        budget: DEFAULT_SEARCH_BUDGET,
        nodes: 0,
    };
    let mut generators: Vec<Permutation> = Vec::new();
    let mut order: u128 = 1;
    for level in 1..=n {
        let mut orbit = 1u128;
        for y in level + 1..=n {
            if side.invariants[level - 1] != side.invariants[y - 1] {
                continue;
            }
            let mut map = vec![0; n];
            let mut used = Subset::EMPTY;
            for fixed in 1..level {
                map[fixed - 1] = fixed;
                used = used.with(fixed);
            }
            map[level - 1] = y;
            if !search.consistent(&map, level) {
                continue;
            }
            used = used.with(y);
            if search.extend(&mut map, &mut used)? {
                orbit += 1;
                generators.push(Permutation::new(map).expect("bijection"));
            }
        }
        order *= orbit;
    }
    Ok(PermutationGroup {
        degree: n,
        generators,
        order,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{catalog, CatalogName};

    fn rank_two_example() -> Matroid {
        Matroid::from_basis_lists(4, &[vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4]])
            .unwrap()
    }

    #[test]
    fn permutation_basics() {
        let p = Permutation::from_cycles(4, &[&[1, 2], &[3, 4]]).unwrap();
        assert_eq!(p.images(), &[2, 1, 4, 3]);
        assert_eq!(p.to_string(), "(1 2)(3 4)");
        assert!(p.compose(&p).is_identity());
        assert!(Permutation::new(vec![1, 1]).is_none());
    }

    #[test]
    fn fano_group_order() {
        let g = automorphism_group(&catalog(CatalogName::Fano).unwrap()).unwrap();
        assert_eq!(g.order(), 168);
        assert_eq!(g.elements().len(), 168);
    }

    #[test]
    fn u12_group_order() {
        let g = automorphism_group(&Matroid::uniform(1, 2).unwrap()).unwrap();
        assert_eq!(g.order(), 2);
    }

    /// Brute force over all 24 permutations of {1,2,3,4}.
    #[test]
    fn example_group_against_exhaustive_oracle() {
        let m = rank_two_example();
        let mut brute = Vec::new();
        let mut perm = vec![1, 2, 3, 4];
        permute(&mut perm, 0, &mut |p| {
            let p = Permutation::new(p.to_vec()).unwrap();
            if m.relabel(&p) == m {
                brute.push(p);
            }
        });
        brute.sort();
        let g = automorphism_group(&m).unwrap();
        assert_eq!(g.order(), 4);
        assert_eq!(g.elements(), brute);
        let expected: Vec<Permutation> = {
            let mut v = vec![
                Permutation::identity(4),
                Permutation::from_cycles(4, &[&[1, 2]]).unwrap(),
                Permutation::from_cycles(4, &[&[3, 4]]).unwrap(),
                Permutation::from_cycles(4, &[&[1, 2], &[3, 4]]).unwrap(),
            ];
            v.sort();
            v
        };
        assert_eq!(brute, expected);
    }

    fn permute(v: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
        if k == v.len() {
            f(v);
            return;
        }
        for i in k..v.len() {
            v.swap(k, i);
            permute(v, k + 1, f);
            v.swap(k, i);
        }
    }

    #[test]
    fn fano_vs_non_fano() {
        let f = catalog(CatalogName::Fano).unwrap();
        let nf = catalog(CatalogName::NonFano).unwrap();
        assert_eq!(is_isomorphic(&f, &nf).unwrap(), None);
        let id = is_isomorphic(&f, &f).unwrap().unwrap();
        assert_eq!(f.relabel(&id), f);
    }

    #[test]
    fn relabeled_copy_is_found() {
        let m = catalog(CatalogName::Vamos).unwrap();
        let p = Permutation::new(vec![3, 8, 1, 6, 2, 7, 5, 4]).unwrap();
        let relabeled = m.relabel(&p);
        let w = is_isomorphic(&m, &relabeled).unwrap().unwrap();
        assert_eq!(m.relabel(&w), relabeled);
    }

    #[test]
    fn guard_on_ground_set_size() {
        let m = Matroid::uniform(2, 13).unwrap();
        assert_eq!(
            automorphism_group(&m),
            Err(MatroidError::SearchBudgetExceeded)
        );
    }
}
