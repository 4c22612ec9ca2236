//! Buchberger's algorithm over a field with the coprime and chain criteria
//! (Gebauer–Möller update) and normal-strategy pair selection, plus normal
//! forms, saturation, and linear-variable elimination.

mod eliminate;
mod saturate;

pub use eliminate::{back_substitute, eliminate_linear_variables, Elimination, EliminationStatus, Substitution};
pub use saturate::{contains_one, saturate, saturate_each};

use thiserror::Error;

use crate::algebra::{AlgebraError, Elem, Monomial, MonomialOrder, Poly, RingRef};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroebnerError {
    #[error("Gröbner budget exceeded after {reductions} pair reductions (max degree seen {max_degree})")]
    DegreeBudgetExceeded { reductions: u64, max_degree: u32 },
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// Explicit work limits so intractable inputs fail instead of hanging.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GbConfig {
    pub max_pair_reductions: u64,
    /// Fail when a basis element of larger total degree appears.
    pub max_degree: Option<u32>,
    /// For homogeneous input only: drop pairs whose lcm exceeds this degree.
    /// The result is then a basis up to that degree.
    pub truncate_degree: Option<u32>,
}

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig {
            max_pair_reductions: 1_000_000,
            max_degree: None,
            truncate_degree: None,
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct GbStats {
    pub pairs_created: u64,
    pub pairs_reduced: u64,
    pub zero_reductions: u64,
    pub criterion_skips: u64,
}

/// Ideal in a polynomial ring; zero generators are dropped.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ideal {
    ring: RingRef,
    generators: Vec<Poly>,
}

impl Ideal {
    pub fn new(ring: &RingRef, generators: Vec<Poly>) -> Result<Ideal, GroebnerError> {
        for g in &generators {
            if g.ring() != ring {
                return Err(AlgebraError::RingMismatch.into());
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn zero(ring: &RingRef) -> Ideal {
        Ideal {
            ring: ring.clone(),
            generators: Vec::new(),
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly] {
        &self.generators
    }

    pub fn is_zero(&self) -> bool {
        self.generators.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroebnerBasis {
    ring: RingRef,
    elements: Vec<Poly>,
    reduced: bool,
    truncated_at: Option<u32>,
    stats: GbStats,
}

impl GroebnerBasis {
    /// Wraps a basis computed elsewhere. `elements` must already be a
    /// reduced basis (up to `truncated_at`) in the ring's order.
    pub(crate) fn from_reduced(ring: &RingRef, mut elements: Vec<Poly>, truncated_at: Option<u32>) -> GroebnerBasis {
        let order = ring.order();
        elements.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
        GroebnerBasis {
            ring: ring.clone(),
            elements,
            reduced: true,
            truncated_at,
            stats: GbStats::default(),
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.ring.order()
    }

    /// Monic elements sorted by increasing leading monomial.
    pub fn elements(&self) -> &[Poly] {
        &self.elements
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn truncated_at(&self) -> Option<u32> {
        self.truncated_at
    }

    pub fn stats(&self) -> GbStats {
        self.stats
    }

    pub fn is_unit(&self) -> bool {
        self.elements.len() == 1 && self.elements[0].is_unit_constant()
    }

    pub fn is_zero(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leading_monomials(&self) -> Vec<&Monomial> {
        self.elements
            .iter()
            .map(|g| g.leading_monomial().expect("nonzero basis element"))
            .collect()
    }

    pub fn normal_form(&self, f: &Poly) -> Poly {
        let f = if f.ring() == &self.ring {
            f.clone()
        } else {
            f.reorder(&self.ring)
        };
        reduce_full(&f, &self.elements)
    }

    pub fn contains(&self, f: &Poly) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Buchberger certificate: every S-polynomial reduces to zero. For a
    /// truncated basis only pairs whose lcm lies within the truncation
    /// degree are checked.
    pub fn verify_certificate(&self) -> bool {
        let g = &self.elements;
        for i in 0..g.len() {
            for j in i + 1..g.len() {
                let (a, b) = (g[i].leading_monomial().unwrap(), g[j].leading_monomial().unwrap());
                if a.is_coprime(b) {
                    continue;
                }
                if self.truncated_at.is_some_and(|d| a.lcm(b).degree() > d) {
                    continue;
                }
                let s = s_polynomial(&g[i], &g[j]);
                if !reduce_full(&s, g).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn into_ideal(self) -> Ideal {
        Ideal {
            ring: self.ring,
            generators: self.elements,
        }
    }
}

/// Remainder of multivariate division by `basis` (first divisor wins).
pub(crate) fn reduce_full(f: &Poly, basis: &[Poly]) -> Poly {
    let ring = f.ring().clone();
    let field = ring.field().clone();
    let mut work: Vec<(Monomial, Elem)> = f.terms().to_vec();
    let mut start = 0;
    let mut rem: Vec<(Monomial, Elem)> = Vec::new();
    while start < work.len() {
        let (m, c) = &work[start];
        let divisor = basis
            .iter()
            .find(|g| g.leading_monomial().is_some_and(|lm| lm.divides(m)));
        match divisor {
            Some(g) => {
                let lm = g.leading_monomial().unwrap();
                let q = lm.quotient_of(m);
                let coef = field
                    .div(c, g.leading_coefficient().unwrap())
                    .expect("nonzero leading coefficient");
                let tail = Poly::from_sorted_terms(&ring, work[start..].to_vec());
                let next = tail.add_scaled(g, &field.neg(&coef), Some(&q));
                work = next.terms().to_vec();
                start = 0;
            }
            None => {
                rem.push(work[start].clone());
                start += 1;
            }
        }
    }
    Poly::from_sorted_terms(&ring, rem)
}

/// Normal form of `f` with respect to a Gröbner basis.
pub fn normal_form(f: &Poly, gb: &GroebnerBasis) -> Poly {
    gb.normal_form(f)
}

fn s_polynomial(f: &Poly, g: &Poly) -> Poly {
    let field = f.field();
    let fl = f.leading_monomial().unwrap();
    let gl = g.leading_monomial().unwrap();
    let l = fl.lcm(gl);
    let fc = field.inv(f.leading_coefficient().unwrap()).unwrap();
    let gc = field.inv(g.leading_coefficient().unwrap()).unwrap();
    let a = f.scale(&fc).mul_monomial(&fl.quotient_of(&l));
    a.add_scaled(g, &field.neg(&gc), Some(&gl.quotient_of(&l)))
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Builder {
    ring: RingRef,
    polys: Vec<Poly>,
    lms: Vec<Monomial>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
    stats: GbStats,
    truncate: Option<u32>,
}

impl Builder {
    /// Gebauer–Möller update with a new monic element.
    fn add(&mut self, h: Poly) {
        let hl = h.leading_monomial().unwrap().clone();
        let k = self.polys.len();
        let mut new_pairs: Vec<Pair> = (0..k)
            .filter(|&i| self.active[i])
            .map(|i| Pair {
                i,
                j: k,
                lcm: self.lms[i].lcm(&hl),
            })
            .collect();
        self.stats.pairs_created += new_pairs.len() as u64;

        // chain criterion among the new pairs; coprime pairs are kept here
        // so they can still eliminate others, then dropped below
        let mut kept: Vec<Pair> = Vec::new();
        while let Some(p) = new_pairs.pop() {
            let coprime = self.lms[p.i].is_coprime(&hl);
            let dominated = new_pairs
                .iter()
                .chain(kept.iter())
                .any(|q| q.lcm.divides(&p.lcm));
            if coprime || !dominated {
                kept.push(p);
            } else {
                self.stats.criterion_skips += 1;
            }
        }
        let before = kept.len();
        kept.retain(|p| !self.lms[p.i].is_coprime(&hl));
        self.stats.criterion_skips += (before - kept.len()) as u64;

        // old pairs made redundant by the new leading monomial
        let lms = &self.lms;
        let before = self.pairs.len();
        self.pairs.retain(|p| {
            !(hl.divides(&p.lcm)
                && lms[p.i].lcm(&hl) != p.lcm
                && lms[p.j].lcm(&hl) != p.lcm)
        });
        self.stats.criterion_skips += (before - self.pairs.len()) as u64;

        if let Some(d) = self.truncate {
            kept.retain(|p| p.lcm.degree() <= d);
        }
        self.pairs.extend(kept);

        for i in 0..k {
            if self.active[i] && hl.divides(&self.lms[i]) {
                self.active[i] = false;
            }
        }
        self.polys.push(h);
        self.lms.push(hl);
        self.active.push(true);
    }

    fn active_polys(&self) -> Vec<Poly> {
        self.polys
            .iter()
            .zip(&self.active)
            .filter(|(_, a)| **a)
            .map(|(p, _)| p.clone())
            .collect()
    }

    /// Index of the pair with the smallest lcm; ties keep the oldest.
    fn select(&self) -> usize {
        let order = self.ring.order();
        let mut best = 0;
        for k in 1..self.pairs.len() {
            if order.cmp(&self.pairs[k].lcm, &self.pairs[best].lcm) == std::cmp::Ordering::Less {
                best = k;
            }
        }
        best
    }
}

/// Reduced Gröbner basis of `ideal` under `order`. Deterministic for fixed
/// input and order.
pub fn buchberger(
    ideal: &Ideal,
    order: MonomialOrder,
    config: &GbConfig,
) -> Result<GroebnerBasis, GroebnerError> {
    let ring = if ideal.ring.order() == order {
        ideal.ring.clone()
    } else {
        ideal.ring.with_order(order)
    };
    let mut b = Builder {
        ring: ring.clone(),
        polys: Vec::new(),
        lms: Vec::new(),
        active: Vec::new(),
        pairs: Vec::new(),
        stats: GbStats::default(),
        truncate: config.truncate_degree,
    };
    let mut max_degree = 0;
    let mut gens: Vec<Poly> = ideal
        .generators
        .iter()
        .map(|g| g.reorder(&ring).monic())
        .collect();
    gens.sort_by(|a, b| {
        order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap())
    });
    for g in gens {
        let h = reduce_full(&g, &b.active_polys());
        if h.is_zero() {
            continue;
        }
        if h.is_constant() {
            return Ok(unit_basis(&ring, b.stats, config.truncate_degree));
        }
        max_degree = max_degree.max(h.total_degree());
        b.add(h.monic());
    }
    while !b.pairs.is_empty() {
        let idx = b.select();
        let pair = b.pairs.swap_remove(idx);
        b.stats.pairs_reduced += 1;
        if b.stats.pairs_reduced > config.max_pair_reductions {
            return Err(GroebnerError::DegreeBudgetExceeded {
                reductions: b.stats.pairs_reduced,
                max_degree,
            });
        }
        let s = s_polynomial(&b.polys[pair.i], &b.polys[pair.j]);
        let h = reduce_full(&s, &b.active_polys());
        if h.is_zero() {
            b.stats.zero_reductions += 1;
            continue;
        }
        if h.is_constant() {
            return Ok(unit_basis(&ring, b.stats, config.truncate_degree));
        }
        let d = h.total_degree();
        max_degree = max_degree.max(d);
        if config.max_degree.is_some_and(|cap| d > cap) {
            return Err(GroebnerError::DegreeBudgetExceeded {
                reductions: b.stats.pairs_reduced,
                max_degree,
            });
        }
        b.add(h.monic());
    }
    let elements = interreduce(b.active_polys(), order);
    Ok(GroebnerBasis {
        ring,
        elements,
        reduced: true,
        truncated_at: config.truncate_degree,
        stats: b.stats,
    })
}

fn unit_basis(ring: &RingRef, stats: GbStats, truncated_at: Option<u32>) -> GroebnerBasis {
    GroebnerBasis {
        ring: ring.clone(),
        elements: vec![Poly::one(ring)],
        reduced: true,
        truncated_at,
        stats,
    }
}

/// Minimal, tail-reduced, monic, sorted by increasing leading monomial.
fn interreduce(mut g: Vec<Poly>, order: MonomialOrder) -> Vec<Poly> {
    g.sort_by(|a, b| order.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    let mut minimal: Vec<Poly> = Vec::new();
    for p in g {
        let lm = p.leading_monomial().unwrap();
        if !minimal
            .iter()
            .any(|q| q.leading_monomial().unwrap().divides(lm))
        {
            minimal.push(p);
        }
    }
    let mut out = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Poly> = minimal
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != k)
            .map(|(_, p)| p.clone())
            .collect();
        out.push(reduce_full(&minimal[k], &others).monic());
    }
    out
}
