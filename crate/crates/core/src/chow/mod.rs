//! Chow rings of loop-free matroids: the presentation by flat variables,
//! graded bases of standard monomials for degrevlex, the volume map, and
//! the elements `α` and `β`.

mod kahler;

pub use kahler::{
    is_lefschetz_element, kahler_report, reduced_char_coefficients_via_volumes,
    truncation_volume_check, PairingReport,
};

use std::collections::{BTreeMap, HashMap, HashSet};

use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::algebra::{AlgebraError, Elem, Field, Monomial, MonomialOrder, Poly, PolyRing, RingRef};
use crate::groebner::GroebnerBasis;
use crate::matroid::{Matroid, MatroidError, Subset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ChowError {
    #[error("matroid has loops; Chow rings need a loop-free matroid")]
    LoopPresent,
    #[error("Chow rings need rank at least 1")]
    RankZero,
    #[error("expected degree {expected}, got {found}")]
    WrongDegree { expected: usize, found: usize },
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
    #[error("element belongs to a different Chow ring")]
    RingMismatch,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

/// `A(M) = Q[x_F : F nonempty proper flat] / (I + J)`.
#[derive(Clone, Debug)]
pub struct ChowRing {
    matroid: Matroid,
    flats: Vec<Subset>,
    ring: RingRef,
    gb: GroebnerBasis,
    degrees: Vec<Degree>,
    /// Coordinate of the canonical flag monomial in the top degree.
    top_scale: BigRational,
}

/// Homogeneous element given by coordinates in the graded basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChowElement {
    degree: usize,
    coords: Vec<Elem>,
}

impl ChowElement {
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn coords(&self) -> &[Elem] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| Field::Rationals.is_zero(c))
    }
}

fn flat_name(f: Subset) -> String {
    let parts: Vec<String> = f.iter().map(|e| e.to_string()).collect();
    format!("x_{{{}}}", parts.join(","))
}

/// Relations of one degree, row-reduced over the monomials supported on
/// chains of flats (every other monomial already lies in `I`).
#[derive(Clone, Debug)]
struct Degree {
    /// Standard monomials, largest first.
    basis: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    /// Each leading monomial rewritten in the basis.
    rewrite: HashMap<Monomial, Vec<(usize, BigRational)>>,
}

type Row = Vec<(usize, BigRational)>;

/// Adds `row` to a semi-echelon system keyed by pivot column.
fn insert_row(pivots: &mut HashMap<usize, Row>, row: Row) {
    let mut work: BTreeMap<usize, BigRational> = BTreeMap::new();
    for (c, v) in row {
        *work.entry(c).or_insert_with(BigRational::zero) += v;
    }
    work.retain(|_, v| !v.is_zero());
    let mut cursor = 0;
    while let Some((c, v)) = work
        .range(cursor..)
        .find(|(c, _)| pivots.contains_key(c))
        .map(|(c, v)| (*c, v.clone()))
    {
        for (cc, vv) in &pivots[&c] {
            let e = work.entry(*cc).or_insert_with(BigRational::zero);
            *e -= &v * vv;
            if e.is_zero() {
                work.remove(cc);
            }
        }
        cursor = c + 1;
    }
    if let Some(lead) = work.values().next().map(|v| v.recip()) {
        let row: Row = work.into_iter().map(|(c, v)| (c, v * &lead)).collect();
        pivots.insert(row[0].0, row);
    }
}

/// Clears every pivot column from the other rows.
fn back_reduce(pivots: &mut HashMap<usize, Row>) {
    let mut cols: Vec<usize> = pivots.keys().copied().collect();
    cols.sort_unstable_by(|a, b| b.cmp(a));
    for p in cols {
        let row = &pivots[&p];
        if row[1..].iter().all(|(c, _)| !pivots.contains_key(c)) {
            continue;
        }
        let mut work: BTreeMap<usize, BigRational> = BTreeMap::new();
        for (c, v) in row {
            match pivots.get(c).filter(|_| *c != p) {
                Some(other) => {
                    for (cc, vv) in &other[1..] {
                        *work.entry(*cc).or_insert_with(BigRational::zero) -= v * vv;
                    }
                }
                None => *work.entry(*c).or_insert_with(BigRational::zero) += v,
            }
        }
        work.retain(|_, v| !v.is_zero());
        pivots.insert(p, work.into_iter().collect());
    }
}

/// Whether some proper divisor of `m` is in `leading`.
fn has_leading_divisor(m: &Monomial, leading: &HashSet<Monomial>) -> bool {
    let support: Vec<(usize, u32)> = m
        .exps()
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| (i, e))
        .collect();
    let mut exps = vec![0u32; m.exps().len()];
    fn walk(k: usize, support: &[(usize, u32)], exps: &mut [u32], m: &Monomial, leading: &HashSet<Monomial>) -> bool {
        if k == support.len() {
            let d = Monomial::new(exps.to_vec());
            return d.degree() > 0 && &d != m && leading.contains(&d);
        }
        let (v, e) = support[k];
        (0..=e).any(|x| {
            exps[v] = x;
            let hit = walk(k + 1, support, exps, m, leading);
            exps[v] = 0;
            hit
        })
    }
    walk(0, &support, &mut exps, m, leading)
}

/// Builds the Chow ring degree by degree up to the top degree `rk - 1`,
/// beyond which `A(M)` vanishes. In each degree the relations are
/// `J` times the chain monomials one degree lower, reduced modulo the
/// monomial ideal `I` and brought to reduced echelon form with columns in
/// decreasing degrevlex order. Pivots are the leading monomials of the
/// degrevlex Gröbner basis in that degree.
pub fn chow_ring(m: &Matroid) -> Result<ChowRing, ChowError> {
    if !m.is_loop_free() {
        return Err(ChowError::LoopPresent);
    }
    let r = m.rank();
    if r == 0 {
        return Err(ChowError::RankZero);
    }
    let e = m.ground_set();
    let flats: Vec<Subset> = m
        .flats()
        .iter()
        .copied()
        .filter(|f| !f.is_empty() && *f != e)
        .collect();
    let nv = flats.len();
    let ring = PolyRing::new(
        Field::Rationals,
        flats.iter().map(|&f| flat_name(f)).collect(),
        MonomialOrder::DegRevLex,
    );
    let comparable: Vec<Vec<bool>> = flats
        .iter()
        .map(|f| flats.iter().map(|g| f.is_subset_of(*g) || g.is_subset_of(*f)).collect())
        .collect();
    let one = BigRational::one();
    let anchored: Vec<Row> = (2..=m.n())
        .map(|j| {
            flats
                .iter()
                .enumerate()
                .filter_map(|(k, f)| match (f.contains(1), f.contains(j)) {
                    (true, false) => Some((k, one.clone())),
                    (false, true) => Some((k, -one.clone())),
                    _ => None,
                })
                .collect::<Row>()
        })
        .filter(|l| !l.is_empty())
        .collect();

    let top = r - 1;
    let last = top.max(2);
    let q = |v: &BigRational| Elem::Q(v.clone());
    let mut gb: Vec<Poly> = Vec::new();
    let mut leading: HashSet<Monomial> = HashSet::new();
    let unit = Monomial::one(nv);
    let mut degrees = vec![Degree {
        basis: vec![unit.clone()],
        index: HashMap::from([(unit.clone(), 0)]),
        rewrite: HashMap::new(),
    }];
    let mut chains = vec![unit];
    for d in 1..=last {
        let mut next = Vec::new();
        for s in &chains {
            let support: Vec<usize> = (0..nv).filter(|&v| s.exps()[v] > 0).collect();
            let from = support.last().copied().unwrap_or(0);
            for v in from..nv {
                if support.iter().all(|&u| comparable[u][v]) {
                    next.push(s.mul(&Monomial::var(v, nv)));
                }
            }
        }
        next.sort_by(|a, b| MonomialOrder::DegRevLex.cmp(b, a));
        let col: HashMap<Monomial, usize> = next.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();

        let mut pivots: HashMap<usize, Row> = HashMap::new();
        for s in &chains {
            let support: Vec<usize> = (0..nv).filter(|&v| s.exps()[v] > 0).collect();
            for l in &anchored {
                let row: Row = l
                    .iter()
                    .filter(|(v, _)| support.iter().all(|&u| comparable[u][*v]))
                    .map(|(v, c)| (col[&s.mul(&Monomial::var(*v, nv))], c.clone()))
                    .collect();
                insert_row(&mut pivots, row);
            }
        }
        back_reduce(&mut pivots);

        let standard: Vec<usize> = (0..next.len()).filter(|c| !pivots.contains_key(c)).collect();
        let position: HashMap<usize, usize> = standard.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut rewrite = HashMap::new();
        let mut lms = Vec::new();
        let mut cols: Vec<&usize> = pivots.keys().collect();
        cols.sort_unstable();
        for &p in cols {
            let row = &pivots[&p];
            let lm = &next[p];
            if !has_leading_divisor(lm, &leading) {
                let terms = row.iter().map(|(c, v)| (next[*c].clone(), q(v))).collect();
                gb.push(Poly::from_terms(&ring, terms));
            }
            rewrite.insert(lm.clone(), row[1..].iter().map(|(c, v)| (position[c], -v)).collect());
            lms.push(lm.clone());
        }
        if d == 2 {
            for a in 0..nv {
                for b in a + 1..nv {
                    let lm = Monomial::var(a, nv).mul(&Monomial::var(b, nv));
                    if !comparable[a][b] && !has_leading_divisor(&lm, &leading) {
                        gb.push(Poly::term(&ring, lm, Field::Rationals.one()));
                    }
                }
            }
        }
        leading.extend(lms);
        let basis: Vec<Monomial> = standard.iter().map(|&c| next[c].clone()).collect();
        let index = basis.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        degrees.push(Degree { basis, index, rewrite });
        chains = next;
    }
    degrees.truncate(top + 1);

    let mut chow = ChowRing {
        matroid: m.clone(),
        flats,
        gb: GroebnerBasis::from_reduced(&ring, gb, Some(last as u32)),
        ring,
        degrees,
        top_scale: BigRational::one(),
    };
    let flag = chow.flag_monomial(&chow.canonical_flag());
    chow.top_scale = chow.reduce(&flag)?.coords[0].as_rational().expect("rational").clone();
    Ok(chow)
}

impl ChowRing {
    pub fn matroid(&self) -> &Matroid {
        &self.matroid
    }

    /// Nonempty proper flats in canonical order, one variable each.
    pub fn flats(&self) -> &[Subset] {
        &self.flats
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn rank(&self) -> usize {
        self.matroid.rank()
    }

    /// Degree of the one-dimensional top component.
    pub fn top_degree(&self) -> usize {
        self.matroid.rank() - 1
    }

    pub fn graded_dimensions(&self) -> Vec<usize> {
        self.degrees.iter().map(|d| d.basis.len()).collect()
    }

    /// Standard monomials of degree `d`, largest first.
    pub fn basis(&self, d: usize) -> &[Monomial] {
        self.degrees.get(d).map_or(&[], |g| g.basis.as_slice())
    }

    pub fn flat_index(&self, f: Subset) -> Option<usize> {
        self.flats.iter().position(|&g| g == f)
    }

    /// First complete flag `F_1 ⊊ ... ⊊ F_{r-1}` in canonical flat order.
    pub fn canonical_flag(&self) -> Vec<usize> {
        let mut chain: Vec<usize> = Vec::new();
        for k in 1..self.rank() {
            let below = chain.last().map(|&i| self.flats[i]);
            let next = self.flats.iter().position(|&f| {
                self.matroid.rank_unchecked(f) == k && below.is_none_or(|b| b.is_subset_of(f))
            });
            chain.push(next.expect("every flat extends to a complete flag"));
        }
        chain
    }

    pub fn flag_monomial(&self, flag: &[usize]) -> Poly {
        flag.iter()
            .fold(Poly::one(&self.ring), |acc, &i| &acc * &Poly::var(&self.ring, i))
    }

    /// Class of a homogeneous polynomial. Degrees above the top are zero.
    pub fn reduce(&self, p: &Poly) -> Result<ChowElement, ChowError> {
        if !p.is_homogeneous() {
            return Err(ChowError::NotHomogeneous);
        }
        let degree = p.total_degree() as usize;
        if degree > self.top_degree() {
            return Ok(self.zero(degree));
        }
        let g = &self.degrees[degree];
        let mut coords = vec![BigRational::zero(); g.basis.len()];
        for (m, c) in p.terms() {
            let c = c.as_rational().ok_or(ChowError::RingMismatch)?;
            if let Some(&i) = g.index.get(m) {
                coords[i] += c;
            } else if let Some(rw) = g.rewrite.get(m) {
                for (i, v) in rw {
                    coords[*i] += c * v;
                }
            }
        }
        let coords = coords.into_iter().map(Elem::Q).collect();
        Ok(ChowElement { degree, coords })
    }

    pub fn zero(&self, degree: usize) -> ChowElement {
        ChowElement {
            degree,
            coords: vec![Field::Rationals.zero(); self.basis(degree).len()],
        }
    }

    pub fn one(&self) -> ChowElement {
        ChowElement {
            degree: 0,
            coords: vec![Field::Rationals.one()],
        }
    }

    pub fn to_poly(&self, a: &ChowElement) -> Poly {
        let terms = self
            .basis(a.degree)
            .iter()
            .zip(&a.coords)
            .map(|(m, c)| (m.clone(), c.clone()))
            .collect();
        Poly::from_terms(&self.ring, terms)
    }

    /// Degree-one element `Σ c_F x_F` from coefficients indexed like
    /// [`ChowRing::flats`].
    pub fn from_flat_coefficients(&self, c: &[BigRational]) -> Result<ChowElement, ChowError> {
        if c.len() != self.flats.len() {
            return Err(ChowError::WrongDegree {
                expected: self.flats.len(),
                found: c.len(),
            });
        }
        let terms = c
            .iter()
            .enumerate()
            .map(|(i, v)| (Monomial::var(i, self.flats.len()), Elem::Q(v.clone())))
            .collect();
        let p = Poly::from_terms(&self.ring, terms);
        if p.is_zero() {
            return Ok(self.zero(1));
        }
        self.reduce(&p)
    }

    pub fn mul(&self, a: &ChowElement, b: &ChowElement) -> Result<ChowElement, ChowError> {
        let degree = a.degree + b.degree;
        if degree > self.top_degree() || a.is_zero() || b.is_zero() {
            return Ok(self.zero(degree));
        }
        self.reduce(&(&self.to_poly(a) * &self.to_poly(b)))
    }

    pub fn pow(&self, a: &ChowElement, k: usize) -> Result<ChowElement, ChowError> {
        let mut acc = self.one();
        for _ in 0..k {
            acc = self.mul(&acc, a)?;
        }
        Ok(acc)
    }

    /// The volume map on the top degree, normalized so that complete flag
    /// monomials have volume one.
    pub fn volume(&self, a: &ChowElement) -> Result<BigRational, ChowError> {
        if a.degree != self.top_degree() {
            return Err(ChowError::WrongDegree {
                expected: self.top_degree(),
                found: a.degree,
            });
        }
        let v = a.coords[0].as_rational().ok_or(ChowError::RingMismatch)?;
        Ok(v / &self.top_scale)
    }

    /// Flat coefficients of `α_i = Σ_{F ∋ i} x_F`.
    pub fn alpha_coefficients(&self, i: usize) -> Vec<BigRational> {
        self.flats
            .iter()
            .map(|f| BigRational::from_integer(f.contains(i).into()))
            .collect()
    }

    /// Flat coefficients of `β_i = Σ_{F ∌ i} x_F`.
    pub fn beta_coefficients(&self, i: usize) -> Vec<BigRational> {
        self.flats
            .iter()
            .map(|f| BigRational::from_integer((!f.contains(i)).into()))
            .collect()
    }

    pub fn alpha_i(&self, i: usize) -> ChowElement {
        self.from_flat_coefficients(&self.alpha_coefficients(i))
            .expect("degree one")
    }

    pub fn beta_i(&self, i: usize) -> ChowElement {
        self.from_flat_coefficients(&self.beta_coefficients(i))
            .expect("degree one")
    }

    pub fn alpha(&self) -> ChowElement {
        self.alpha_i(1)
    }

    pub fn beta(&self) -> ChowElement {
        self.beta_i(1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groebner::{buchberger, GbConfig, Ideal};
    use crate::matroid::{catalog, CatalogName};

    fn int(v: i64) -> BigRational {
        BigRational::from_integer(v.into())
    }

    #[test]
    fn k4_dimensions() {
        let r = chow_ring(&catalog(CatalogName::K4).unwrap()).unwrap();
        assert_eq!(r.flats().len(), 13);
        assert_eq!(r.graded_dimensions(), vec![1, 8, 1]);
    }

    #[test]
    fn small_rings() {
        let u23 = chow_ring(&Matroid::uniform(2, 3).unwrap()).unwrap();
        assert_eq!(u23.graded_dimensions(), vec![1, 1]);
        assert_eq!(u23.volume(&u23.alpha()).unwrap(), int(1));
        let rank1 = chow_ring(&Matroid::uniform(1, 2).unwrap()).unwrap();
        assert_eq!(rank1.graded_dimensions(), vec![1]);
        assert!(rank1.alpha().is_zero());
        assert_eq!(rank1.volume(&rank1.one()).unwrap(), int(1));
    }

    #[test]
    fn loops_rejected() {
        let m = Matroid::from_basis_lists(2, &[vec![1]]).unwrap();
        assert_eq!(chow_ring(&m).unwrap_err(), ChowError::LoopPresent);
    }

    #[test]
    fn every_flag_has_volume_one() {
        for name in [CatalogName::K4, CatalogName::Fano] {
            let r = chow_ring(&catalog(name).unwrap()).unwrap();
            let m = r.matroid();
            for (i, f) in r.flats().iter().enumerate() {
                for (j, g) in r.flats().iter().enumerate() {
                    if m.rank_unchecked(*f) == 1 && m.rank_unchecked(*g) == 2 && f.is_subset_of(*g) {
                        let v = r.volume(&r.reduce(&r.flag_monomial(&[i, j])).unwrap()).unwrap();
                        assert_eq!(v, int(1), "{name}");
                    }
                }
            }
        }
    }

    #[test]
    fn alpha_and_beta_do_not_depend_on_i() {
        let r = chow_ring(&catalog(CatalogName::K4).unwrap()).unwrap();
        for i in 2..=6 {
            assert_eq!(r.alpha_i(i), r.alpha());
            assert_eq!(r.beta_i(i), r.beta());
        }
    }

    #[test]
    fn volume_is_linear() {
        let r = chow_ring(&catalog(CatalogName::K4).unwrap()).unwrap();
        let flag = r.reduce(&r.flag_monomial(&r.canonical_flag())).unwrap();
        let three = r.reduce(&r.flag_monomial(&r.canonical_flag()).scale(&Field::Rationals.from_i64(3))).unwrap();
        assert_eq!(r.volume(&flag).unwrap(), int(1));
        assert_eq!(r.volume(&three).unwrap(), int(3));
        assert_eq!(r.volume(&r.zero(2)).unwrap(), int(0));
        assert!(matches!(r.volume(&r.alpha()), Err(ChowError::WrongDegree { .. })));
    }

    #[test]
    fn nothing_above_the_top_degree() {
        // untruncated basis of K4: no standard monomials in degree 3
        let r = chow_ring(&catalog(CatalogName::K4).unwrap()).unwrap();
        let mut gens: Vec<Poly> = Vec::new();
        gens.extend(r.groebner_basis().elements().iter().cloned());
        let full = buchberger(&Ideal::new(r.ring(), gens).unwrap(), MonomialOrder::DegRevLex, &GbConfig::default()).unwrap();
        assert!(full.verify_certificate());
        let lms = full.leading_monomials();
        let n = r.flats().len();
        for s in r.basis(2) {
            for v in 0..n {
                let m = s.mul(&Monomial::var(v, n));
                assert!(lms.iter().any(|l| l.divides(&m)));
            }
        }
    }

    #[test]
    fn echelon_basis_matches_buchberger() {
        for name in [CatalogName::K4, CatalogName::Fano] {
            let r = chow_ring(&catalog(name).unwrap()).unwrap();
            let gens: Vec<Poly> = r.groebner_basis().elements().to_vec();
            let cfg = GbConfig {
                truncate_degree: Some(2),
                ..GbConfig::default()
            };
            let b = buchberger(&Ideal::new(r.ring(), gens).unwrap(), MonomialOrder::DegRevLex, &cfg).unwrap();
            assert_eq!(b.elements(), r.groebner_basis().elements(), "{name}");
        }
    }
}
