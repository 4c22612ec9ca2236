//! Multivariate polynomials with dense exponent vectors over an exact field.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use super::field::{Elem, Field};
use super::AlgebraError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    DegRevLex,
    Lex,
    /// Eliminates the first `n` variables: compares the degree in the first
    /// block, then degrevlex inside the block, then degrevlex on the rest.
    BlockElimination(usize),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
    deg: u32,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        let deg = exps.iter().sum();
        Monomial { exps, deg }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
            deg: 0,
        }
    }

    pub fn var(i: usize, nvars: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[i] = 1;
        Monomial { exps, deg: 1 }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(),
            deg: self.deg + other.deg,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`, assuming `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: other.exps.iter().zip(&self.exps).map(|(a, b)| a - b).collect(),
            deg: other.deg - self.deg,
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial::new(
            self.exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| *a.max(b))
                .collect(),
        )
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .zip(&other.exps)
            .all(|(a, b)| *a == 0 || *b == 0)
    }
}

fn revlex_tail(a: &[u32], b: &[u32]) -> Ordering {
    for (x, y) in a.iter().zip(b).rev() {
        if x != y {
            return y.cmp(x);
        }
    }
    Ordering::Equal
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Lex => a.exps.cmp(&b.exps),
            MonomialOrder::DegRevLex => a
                .deg
                .cmp(&b.deg)
                .then_with(|| revlex_tail(&a.exps, &b.exps)),
            MonomialOrder::BlockElimination(k) => {
                let k = (*k).min(a.exps.len());
                let da: u32 = a.exps[..k].iter().sum();
                let db: u32 = b.exps[..k].iter().sum();
                da.cmp(&db)
                    .then_with(|| revlex_tail(&a.exps[..k], &b.exps[..k]))
                    .then_with(|| (a.deg - da).cmp(&(b.deg - db)))
                    .then_with(|| revlex_tail(&a.exps[k..], &b.exps[k..]))
            }
        }
    }
}

/// Ambient ring: coefficient field, variable names, and the active order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    field: Field,
    names: Vec<String>,
    order: MonomialOrder,
}

pub type RingRef = Arc<PolyRing>;

impl PolyRing {
    pub fn new(field: Field, names: Vec<String>, order: MonomialOrder) -> RingRef {
        Arc::new(PolyRing {
            field,
            names,
            order,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Same variables and field under a different monomial order.
    pub fn with_order(&self, order: MonomialOrder) -> RingRef {
        Arc::new(PolyRing {
            order,
            ..self.clone()
        })
    }

    /// New ring with extra variables prepended.
    pub fn with_leading_vars(&self, extra: &[&str], order: MonomialOrder) -> RingRef {
        let mut names: Vec<String> = extra.iter().map(|s| s.to_string()).collect();
        names.extend(self.names.iter().cloned());
        PolyRing::new(self.field.clone(), names, order)
    }
}

#[derive(Clone, Debug)]
pub struct Poly {
    ring: RingRef,
    /// Sorted strictly descending under the ring order, no zero coefficients.
    terms: Vec<(Monomial, Elem)>,
}

impl PartialEq for Poly {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl Eq for Poly {}

impl std::hash::Hash for Poly {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.terms.hash(state);
    }
}

fn same_ring(a: &RingRef, b: &RingRef) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

impl Poly {
    pub fn zero(ring: &RingRef) -> Poly {
        Poly {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(ring: &RingRef) -> Poly {
        Poly::constant(ring, ring.field.one())
    }

    pub fn constant(ring: &RingRef, c: Elem) -> Poly {
        Poly::term(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn from_i64(ring: &RingRef, c: i64) -> Poly {
        Poly::constant(ring, ring.field.from_i64(c))
    }

    pub fn var(ring: &RingRef, i: usize) -> Poly {
        Poly::term(ring, Monomial::var(i, ring.nvars()), ring.field.one())
    }

    pub fn term(ring: &RingRef, m: Monomial, c: Elem) -> Poly {
        debug_assert_eq!(m.exps.len(), ring.nvars());
        let terms = if ring.field.is_zero(&c) {
            Vec::new()
        } else {
            vec![(m, c)]
        };
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    /// Builds a polynomial from arbitrary terms: sorts, combines, drops zeros.
    pub fn from_terms(ring: &RingRef, mut terms: Vec<(Monomial, Elem)>) -> Poly {
        let order = ring.order;
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        let field = &ring.field;
        let mut out: Vec<(Monomial, Elem)> = Vec::with_capacity(terms.len());
        for (m, c) in terms {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc = field.add(lc, &c),
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if field.is_zero(lc) {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if field.is_zero(lc) {
                out.pop();
            }
        }
        Poly {
            ring: ring.clone(),
            terms: out,
        }
    }

    /// Wraps terms already sorted descending with nonzero coefficients.
    pub(crate) fn from_sorted_terms(ring: &RingRef, terms: Vec<(Monomial, Elem)>) -> Poly {
        debug_assert!(terms
            .windows(2)
            .all(|w| ring.order.cmp(&w[0].0, &w[1].0) == Ordering::Greater));
        Poly {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn field(&self) -> &Field {
        &self.ring.field
    }

    pub fn terms(&self) -> &[(Monomial, Elem)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Nonzero constant.
    pub fn is_unit_constant(&self) -> bool {
        !self.is_zero() && self.is_constant()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.field().is_one(&self.terms[0].1)
    }

    pub fn constant_value(&self) -> Option<Elem> {
        if self.is_zero() {
            Some(self.field().zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn leading_coefficient(&self) -> Option<&Elem> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.iter().map(|(m, _)| m.deg).max().unwrap_or(0)
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exps[var]).max().unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exps[var] > 0)
    }

    pub fn variables(&self) -> Vec<usize> {
        (0..self.ring.nvars()).filter(|&v| self.uses_var(v)).collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.deg == w[1].0.deg)
    }

    fn check_ring(&self, other: &Poly) -> Result<(), AlgebraError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(AlgebraError::RingMismatch)
        }
    }

    pub fn checked_add(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        self.check_ring(other)?;
        Ok(self.add_scaled(other, &self.field().one(), None))
    }

    pub fn checked_sub(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        self.check_ring(other)?;
        Ok(self.add_scaled(other, &self.field().from_i64(-1), None))
    }

    pub fn checked_mul(&self, other: &Poly) -> Result<Poly, AlgebraError> {
        self.check_ring(other)?;
        Ok(self.mul_unchecked(other))
    }

    /// `self + c * m * other` in one merge pass.
    pub fn add_scaled(&self, other: &Poly, c: &Elem, m: Option<&Monomial>) -> Poly {
        let field = self.field();
        let order = self.ring.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other
            .terms
            .iter()
            .map(|(bm, bc)| {
                let mm = match m {
                    Some(m) => bm.mul(m),
                    None => bm.clone(),
                };
                (mm, field.mul(bc, c))
            })
            .peekable();
        loop {
            match (a.peek(), b.peek()) {
                (Some((am, _)), Some((bm, _))) => match order.cmp(am, bm) {
                    Ordering::Greater => out.push(a.next().unwrap().clone()),
                    Ordering::Less => {
                        let t = b.next().unwrap();
                        if !field.is_zero(&t.1) {
                            out.push(t);
                        }
                    }
                    Ordering::Equal => {
                        let (am, ac) = a.next().unwrap();
                        let (_, bc) = b.next().unwrap();
                        let s = field.add(ac, &bc);
                        if !field.is_zero(&s) {
                            out.push((am.clone(), s));
                        }
                    }
                },
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => {
                    let t = b.next().unwrap();
                    if !field.is_zero(&t.1) {
                        out.push(t);
                    }
                }
                (None, None) => break,
            }
        }
        Poly {
            ring: self.ring.clone(),
            terms: out,
        }
    }

    fn mul_unchecked(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.ring);
        }
        let field = self.field();
        let mut acc: HashMap<Monomial, Elem> = HashMap::new();
        for (am, ac) in &self.terms {
            for (bm, bc) in &other.terms {
                let m = am.mul(bm);
                let c = field.mul(ac, bc);
                match acc.get_mut(&m) {
                    Some(e) => *e = field.add(e, &c),
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Poly::from_terms(&self.ring, acc.into_iter().collect())
    }

    pub fn scale(&self, c: &Elem) -> Poly {
        let field = self.field();
        if field.is_zero(c) {
            return Poly::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, e)| (m.clone(), field.mul(e, c)))
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> Poly {
        Poly {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .map(|(tm, c)| (tm.mul(m), c.clone()))
                .collect(),
        }
    }

    pub fn neg(&self) -> Poly {
        self.scale(&self.field().from_i64(-1))
    }

    pub fn pow(&self, mut exp: u32) -> Poly {
        let mut acc = Poly::one(&self.ring);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            exp >>= 1;
            if exp > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    /// Scalar multiple with leading coefficient one. Zero stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading_coefficient() {
            None => self.clone(),
            Some(lc) => {
                let inv = self.field().inv(lc).expect("nonzero leading coefficient");
                self.scale(&inv)
            }
        }
    }

    /// Evaluates at a point whose coordinates live in `target`, which must
    /// contain the coefficient field (equal, or an extension of a prime field).
    pub fn eval(&self, target: &Field, point: &[Elem]) -> Result<Elem, AlgebraError> {
        if point.len() != self.ring.nvars() {
            return Err(AlgebraError::DimensionMismatch {
                expected: self.ring.nvars(),
                found: point.len(),
            });
        }
        let mut acc = target.zero();
        let mut powers: Vec<Vec<Elem>> = vec![vec![target.one()]; point.len()];
        for (m, c) in &self.terms {
            let mut t = target.embed(self.field(), c)?;
            for (v, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[v].len() <= e as usize {
                    let next = target.mul(powers[v].last().unwrap(), &point[v]);
                    powers[v].push(next);
                }
                t = target.mul(&t, &powers[v][e as usize]);
            }
            acc = target.add(&acc, &t);
        }
        Ok(acc)
    }

    /// Coefficients of `self` as a polynomial in `var`: entry `k` is the
    /// (var-free) coefficient of `var^k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Poly> {
        let d = self.degree_in(var) as usize;
        let mut parts: Vec<Vec<(Monomial, Elem)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let k = m.exps[var] as usize;
            let mut exps = m.exps.clone();
            exps[var] = 0;
            parts[k].push((Monomial::new(exps), c.clone()));
        }
        parts
            .into_iter()
            .map(|t| Poly {
                ring: self.ring.clone(),
                terms: t,
            })
            .collect()
    }

    /// `den^D * self(var := num / den)` with `D = degree_in(var)`; the
    /// denominator is cleared so the result stays polynomial.
    pub fn substitute_fraction(&self, var: usize, num: &Poly, den: &Poly) -> Poly {
        let coeffs = self.coefficients_in(var);
        let d = coeffs.len() - 1;
        let mut acc = Poly::zero(&self.ring);
        let mut num_pow = Poly::one(&self.ring);
        for (k, ck) in coeffs.iter().enumerate() {
            if !ck.is_zero() {
                let term = ck
                    .mul_unchecked(&num_pow)
                    .mul_unchecked(&den.pow((d - k) as u32));
                acc = &acc + &term;
            }
            if k < d {
                num_pow = num_pow.mul_unchecked(num);
            }
        }
        acc
    }

    pub fn substitute(&self, var: usize, value: &Poly) -> Poly {
        self.substitute_fraction(var, value, &Poly::one(&self.ring))
    }

    /// Moves the polynomial into `target`, sending variable `i` to
    /// variable `var_map[i]`. Fields must agree.
    pub fn map_into(&self, target: &RingRef, var_map: &[usize]) -> Poly {
        assert_eq!(self.ring.field, target.field, "field mismatch in map_into");
        let n = target.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut exps = vec![0; n];
                for (i, &e) in m.exps.iter().enumerate() {
                    exps[var_map[i]] += e;
                }
                (Monomial::new(exps), c.clone())
            })
            .collect();
        Poly::from_terms(target, terms)
    }

    /// Same terms re-sorted for a ring that differs only in monomial order.
    pub fn reorder(&self, target: &RingRef) -> Poly {
        Poly::from_terms(target, self.terms.clone())
    }

    /// Exact quotient `self / divisor` when it exists.
    pub fn divide_exact(&self, divisor: &Poly) -> Option<Poly> {
        let dl = divisor.leading_monomial()?;
        let dc_inv = self.field().inv(divisor.leading_coefficient()?)?;
        let mut rest = self.clone();
        let mut q = Vec::new();
        while let Some((lm, lc)) = rest.terms.first().cloned() {
            if !dl.divides(&lm) {
                return None;
            }
            let m = dl.quotient_of(&lm);
            let c = self.field().mul(&lc, &dc_inv);
            rest = rest.add_scaled(divisor, &self.field().neg(&c), Some(&m));
            q.push((m, c));
        }
        Some(Poly::from_terms(&self.ring, q))
    }

    pub fn format(&self) -> String {
        self.to_string()
    }
}

impl std::ops::Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.checked_add(rhs).expect("polynomials from different rings")
    }
}

impl std::ops::Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.checked_sub(rhs).expect("polynomials from different rings")
    }
}

impl std::ops::Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.checked_mul(rhs).expect("polynomials from different rings")
    }
}

impl std::ops::Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly::neg(self)
    }
}

fn format_monomial(m: &Monomial, names: &[String]) -> String {
    m.exps
        .iter()
        .enumerate()
        .filter(|(_, &e)| e > 0)
        .map(|(i, &e)| {
            if e == 1 {
                names[i].clone()
            } else {
                format!("{}^{}", names[i], e)
            }
        })
        .collect::<Vec<_>>()
        .join("*")
}

impl fmt::Display for Poly {
    /// Terms in decreasing order, coefficients as reduced fractions, `*`
    /// between factors, `^` for exponents.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let field = self.field();
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let negative = field.rational_sign(c) == Some(Ordering::Less);
            let abs = if negative { field.neg(c) } else { c.clone() };
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = format_monomial(m, &self.ring.names);
            let coef = field.format(&abs);
            let coef = if field.is_atomic(&abs) {
                coef
            } else {
                format!("({coef})")
            };
            if mono.is_empty() {
                write!(f, "{coef}")?;
            } else if field.is_one(&abs) {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{coef}*{mono}")?;
            }
        }
        Ok(())
    }
}
