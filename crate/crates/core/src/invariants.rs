//! Tutte, characteristic, reduced characteristic and chromatic polynomials,
//! log-concavity, and the Ingleton inequality.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::matroid::{matroid_from_graph, Graph, Matroid, MatroidError, Subset};
use crate::Exec;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("matroid has loops; the reduced characteristic polynomial needs a loop-free matroid")]
    LoopPresent,
    #[error("division by q - 1 left remainder {0}")]
    NonzeroRemainder(i128),
    #[error("the two computations of the characteristic polynomial disagree: {0} vs {1}")]
    CrossCheckFailed(UnivariatePoly, UnivariatePoly),
    #[error("Ingleton search needs {needed} quadruples, budget is {budget}")]
    SearchBudgetExceeded { needed: u128, budget: u64 },
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

/// Integer polynomial in `q`; `coeffs[k]` is the coefficient of `q^k`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UnivariatePoly {
    coeffs: Vec<i128>,
}

impl UnivariatePoly {
    pub fn new(mut coeffs: Vec<i128>) -> Self {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        UnivariatePoly { coeffs }
    }

    pub fn zero() -> Self {
        UnivariatePoly { coeffs: Vec::new() }
    }

    pub fn monomial(k: usize) -> Self {
        let mut c = vec![0; k + 1];
        c[k] = 1;
        UnivariatePoly { coeffs: c }
    }

    /// Ascending by degree.
    pub fn coeffs(&self) -> &[i128] {
        &self.coeffs
    }

    /// Descending by degree, leading coefficient first.
    pub fn coeffs_descending(&self) -> Vec<i128> {
        self.coeffs.iter().rev().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn eval(&self, q: i128) -> i128 {
        self.coeffs.iter().rev().fold(0, |acc, &c| acc * q + c)
    }

    pub fn mul(&self, other: &UnivariatePoly) -> UnivariatePoly {
        if self.is_zero() || other.is_zero() {
            return UnivariatePoly::zero();
        }
        let mut out = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        UnivariatePoly::new(out)
    }

    /// Quotient and remainder by `q - root`.
    pub fn divide_by_linear(&self, root: i128) -> (UnivariatePoly, i128) {
        if self.is_zero() {
            return (UnivariatePoly::zero(), 0);
        }
        let mut q = vec![0; self.coeffs.len() - 1];
        let mut carry = 0;
        for k in (0..self.coeffs.len()).rev() {
            let v = self.coeffs[k] + carry * root;
            if k == 0 {
                return (UnivariatePoly::new(q), v);
            }
            q[k - 1] = v;
            carry = v;
        }
        unreachable!()
    }
}

impl fmt::Display for UnivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let terms: Vec<(i128, String)> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| **c != 0)
            .map(|(k, &c)| {
                let var = match k {
                    0 => String::new(),
                    1 => "q".to_string(),
                    _ => format!("q^{k}"),
                };
                (c, var)
            })
            .collect();
        render_terms(f, &terms)
    }
}

fn render_terms(f: &mut fmt::Formatter<'_>, terms: &[(i128, String)]) -> fmt::Result {
    if terms.is_empty() {
        return write!(f, "0");
    }
    for (i, (c, var)) in terms.iter().enumerate() {
        let abs = c.unsigned_abs();
        if i == 0 {
            if *c < 0 {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if *c < 0 { '-' } else { '+' })?;
        }
        match (abs, var.is_empty()) {
            (_, true) => write!(f, "{abs}")?,
            (1, false) => write!(f, "{var}")?,
            (_, false) => write!(f, "{abs}*{var}")?,
        }
    }
    Ok(())
}

/// Integer polynomial in `x, y`, keyed by `(deg_x, deg_y)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BivariatePoly {
    coeffs: BTreeMap<(u32, u32), i128>,
}

impl BivariatePoly {
    pub fn zero() -> Self {
        BivariatePoly::default()
    }

    pub fn x() -> Self {
        BivariatePoly::term(1, 0, 1)
    }

    pub fn y() -> Self {
        BivariatePoly::term(0, 1, 1)
    }

    pub fn term(i: u32, j: u32, c: i128) -> Self {
        let mut p = BivariatePoly::zero();
        p.add_term(i, j, c);
        p
    }

    fn add_term(&mut self, i: u32, j: u32, c: i128) {
        if c == 0 {
            return;
        }
        let e = self.coeffs.entry((i, j)).or_insert(0);
        *e += c;
        if *e == 0 {
            self.coeffs.remove(&(i, j));
        }
    }

    pub fn coefficient(&self, i: u32, j: u32) -> i128 {
        self.coeffs.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, u32, i128)> + '_ {
        self.coeffs.iter().map(|(&(i, j), &c)| (i, j, c))
    }

    pub fn add(&self, other: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (i, j, c) in other.terms() {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn mul(&self, other: &BivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero();
        for (i, j, c) in self.terms() {
            for (k, l, d) in other.terms() {
                out.add_term(i + k, j + l, c * d);
            }
        }
        out
    }

    pub fn eval(&self, x: i128, y: i128) -> i128 {
        self.terms()
            .map(|(i, j, c)| c * x.pow(i) * y.pow(j))
            .sum()
    }
}

impl fmt::Display for BivariatePoly {
    /// Graded lexicographic: total degree descending, then `x`-degree
    /// descending.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut keys: Vec<(u32, u32, i128)> = self.terms().collect();
        keys.sort_by(|a, b| (b.0 + b.1, b.0).cmp(&(a.0 + a.1, a.0)));
        let terms: Vec<(i128, String)> = keys
            .into_iter()
            .map(|(i, j, c)| {
                let mut parts = Vec::new();
                for (v, e) in [("x", i), ("y", j)] {
                    match e {
                        0 => {}
                        1 => parts.push(v.to_string()),
                        _ => parts.push(format!("{v}^{e}")),
                    }
                }
                (c, parts.join("*"))
            })
            .collect();
        render_terms(f, &terms)
    }
}

fn binomial_row(n: u32) -> Vec<i128> {
    let mut row = vec![1i128];
    for k in 0..n as usize {
        let next = row[k] * (n as i128 - k as i128) / (k as i128 + 1);
        row.push(next);
    }
    row
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TutteMethod {
    /// Subset sum up to 20 elements, deletion-contraction above.
    Auto,
    SubsetSum,
    DeletionContraction,
}

/// Largest ground set for which `Auto` uses the subset sum.
pub const SUBSET_SUM_LIMIT: usize = 20;

pub fn tutte_polynomial(m: &Matroid) -> BivariatePoly {
    tutte_polynomial_with(m, TutteMethod::Auto, Exec::default())
}

pub fn tutte_polynomial_with(m: &Matroid, method: TutteMethod, exec: Exec) -> BivariatePoly {
    match method {
        TutteMethod::SubsetSum => tutte_subset_sum(m, exec),
        TutteMethod::DeletionContraction => tutte_deletion_contraction(m),
        TutteMethod::Auto if m.n() <= SUBSET_SUM_LIMIT => tutte_subset_sum(m, exec),
        TutteMethod::Auto => tutte_deletion_contraction(m),
    }
}

/// Number of subsets with each (corank, nullity).
fn corank_nullity_counts(m: &Matroid, exec: Exec) -> Vec<Vec<i128>> {
    let n = m.n();
    let r = m.rank();
    let width = n - r + 1;
    exec.fold_range(
        1u64 << n,
        || vec![vec![0i128; width]; r + 1],
        |mut acc, bits| {
            let a = Subset(bits);
            let rk = m.rank_unchecked(a);
            acc[r - rk][a.len() - rk] += 1;
            acc
        },
        |mut a, b| {
            for (ra, rb) in a.iter_mut().zip(b) {
                for (x, y) in ra.iter_mut().zip(rb) {
                    *x += y;
                }
            }
            a
        },
    )
}

fn tutte_subset_sum(m: &Matroid, exec: Exec) -> BivariatePoly {
    let counts = corank_nullity_counts(m, exec);
    let mut t = BivariatePoly::zero();
    for (a, row) in counts.iter().enumerate() {
        for (b, &count) in row.iter().enumerate() {
            if count == 0 {
                continue;
            }
            // (x-1)^a (y-1)^b
            let ba = binomial_row(a as u32);
            let bb = binomial_row(b as u32);
            for (i, ca) in ba.iter().enumerate() {
                for (j, cb) in bb.iter().enumerate() {
                    let sign = if (a - i + b - j) % 2 == 0 { 1 } else { -1 };
                    t.add_term(i as u32, j as u32, sign * count * ca * cb);
                }
            }
        }
    }
    t
}

fn tutte_deletion_contraction(m: &Matroid) -> BivariatePoly {
    if m.n() == 0 {
        return BivariatePoly::term(0, 0, 1);
    }
    let e = Subset::singleton(m.n());
    let loops = m.loops();
    let coloops = m.coloops();
    if !loops.is_empty() || !coloops.is_empty() {
        // peel off every loop and coloop at once
        let (nl, nc) = (loops.len() as u32, coloops.len() as u32);
        let rest = loops.union(coloops);
        let base = if rest.len() == m.n() {
            BivariatePoly::term(0, 0, 1)
        } else {
            let minor = m
                .deletion(loops)
                .and_then(|d| d.contraction(coloops.compress(m.ground_set().difference(loops))))
                .expect("minor of a valid matroid");
            tutte_deletion_contraction(&minor)
        };
        return base.mul(&BivariatePoly::term(nc, nl, 1));
    }
    let del = m.deletion(e).expect("valid deletion");
    let con = m.contraction(e).expect("valid contraction");
    tutte_deletion_contraction(&del).add(&tutte_deletion_contraction(&con))
}

/// `χ(q) = Σ_A (-1)^{|A|} q^{r - rk(A)}`, cross-checked against
/// `(-1)^r T(1-q, 0)`.
pub fn characteristic_polynomial(m: &Matroid) -> Result<UnivariatePoly, InvariantError> {
    characteristic_polynomial_with(m, Exec::default())
}

pub fn characteristic_polynomial_with(m: &Matroid, exec: Exec) -> Result<UnivariatePoly, InvariantError> {
    let r = m.rank();
    let direct = if m.n() <= SUBSET_SUM_LIMIT {
        let counts = corank_nullity_counts(m, exec);
        // |A| = rk + nullity, so the sign is (-1)^{r - a + b}
        let mut c = vec![0i128; r + 1];
        for (a, row) in counts.iter().enumerate() {
            for (b, &count) in row.iter().enumerate() {
                let sign = if (r - a + b).is_multiple_of(2) { 1 } else { -1 };
                c[a] += sign * count;
            }
        }
        Some(UnivariatePoly::new(c))
    } else {
        None
    };
    let via_tutte = chi_from_tutte(&tutte_polynomial_with(m, TutteMethod::Auto, exec), r);
    match direct {
        Some(d) if d != via_tutte => Err(InvariantError::CrossCheckFailed(d, via_tutte)),
        _ => Ok(via_tutte),
    }
}

/// `(-1)^r T(1 - q, 0)` expanded in `q`.
fn chi_from_tutte(t: &BivariatePoly, r: usize) -> UnivariatePoly {
    let mut acc = UnivariatePoly::zero();
    let one_minus_q = UnivariatePoly::new(vec![1, -1]);
    for (i, j, c) in t.terms() {
        if j != 0 {
            continue;
        }
        let mut p = UnivariatePoly::new(vec![c]);
        for _ in 0..i {
            p = p.mul(&one_minus_q);
        }
        acc = add_univariate(&acc, &p);
    }
    if r % 2 == 1 {
        acc = UnivariatePoly::new(acc.coeffs.iter().map(|c| -c).collect());
    }
    acc
}

fn add_univariate(a: &UnivariatePoly, b: &UnivariatePoly) -> UnivariatePoly {
    let len = a.coeffs.len().max(b.coeffs.len());
    UnivariatePoly::new(
        (0..len)
            .map(|k| a.coeffs.get(k).unwrap_or(&0) + b.coeffs.get(k).unwrap_or(&0))
            .collect(),
    )
}

/// `χ(q) / (q - 1)`, exact for loop-free matroids.
pub fn reduced_characteristic_polynomial(m: &Matroid) -> Result<UnivariatePoly, InvariantError> {
    if !m.is_loop_free() {
        return Err(InvariantError::LoopPresent);
    }
    let (q, rem) = characteristic_polynomial(m)?.divide_by_linear(1);
    if rem != 0 {
        return Err(InvariantError::NonzeroRemainder(rem));
    }
    Ok(q)
}

/// `q^c χ_{M(G)}(q)` with `c` the number of connected components.
pub fn chromatic_polynomial(graph: &Graph) -> Result<UnivariatePoly, InvariantError> {
    if !graph.is_simple() {
        return Err(MatroidError::NotSimpleGraph.into());
    }
    let chi = if graph.edges().is_empty() {
        UnivariatePoly::monomial(0)
    } else {
        characteristic_polynomial(&matroid_from_graph(graph)?)?
    };
    Ok(chi.mul(&UnivariatePoly::monomial(graph.connected_components())))
}

/// Log-concavity of the absolute values of the coefficients, interior
/// indices only.
pub fn is_log_concave(p: &UnivariatePoly) -> bool {
    is_log_concave_seq(p.coeffs())
}

pub fn is_log_concave_seq(seq: &[i128]) -> bool {
    let w: Vec<i128> = seq.iter().map(|c| c.abs()).collect();
    w.windows(3).all(|t| t[1] * t[1] >= t[0] * t[2])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IngletonWitness {
    pub a: Subset,
    pub b: Subset,
    pub c: Subset,
    pub d: Subset,
    pub lhs: usize,
    pub rhs: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IngletonSearch {
    /// Ordered quadruples of pairwise disjoint nonempty sets of size ≤ 2.
    SmallDisjoint,
    /// All ordered quadruples of subsets, within the budget.
    Exhaustive { budget: u64 },
}

/// Default budget for the exhaustive Ingleton search.
pub const DEFAULT_INGLETON_BUDGET: u64 = 1 << 24;

fn ingleton_check(m: &Matroid, a: Subset, b: Subset, c: Subset, d: Subset) -> Option<IngletonWitness> {
    let rk = |s: Subset| m.rank_unchecked(s);
    let ab = a.union(b);
    let lhs = rk(a) + rk(b) + rk(ab.union(c)) + rk(ab.union(d)) + rk(c.union(d));
    let rhs = rk(ab) + rk(a.union(c)) + rk(a.union(d)) + rk(b.union(c)) + rk(b.union(d));
    (lhs > rhs).then_some(IngletonWitness { a, b, c, d, lhs, rhs })
}

pub fn ingleton_violation(m: &Matroid) -> Result<Option<IngletonWitness>, InvariantError> {
    ingleton_violation_with(m, IngletonSearch::SmallDisjoint, Exec::default())
}

pub fn ingleton_violation_with(
    m: &Matroid,
    search: IngletonSearch,
    exec: Exec,
) -> Result<Option<IngletonWitness>, InvariantError> {
    let n = m.n();
    match search {
        IngletonSearch::SmallDisjoint => {
            let mut small: Vec<Subset> = (1..=n).map(Subset::singleton).collect();
            for i in 1..=n {
                for j in i + 1..=n {
                    small.push(Subset::from_elements([i, j]));
                }
            }
            let k = small.len();
            let hit = exec.find_first((k * k) as u64, |ab| {
                let (a, b) = (small[ab as usize / k], small[ab as usize % k]);
                if !a.intersection(b).is_empty() {
                    return false;
                }
                first_cd(m, &small, a, b).is_some()
            });
            Ok(hit.and_then(|ab| {
                let (a, b) = (small[ab as usize / k], small[ab as usize % k]);
                first_cd(m, &small, a, b)
            }))
        }
        IngletonSearch::Exhaustive { budget } => {
            let needed = 1u128 << (4 * n).min(127);
            if needed > budget as u128 {
                return Err(InvariantError::SearchBudgetExceeded { needed, budget });
            }
            let mask = (1u64 << n) - 1;
            let hit = exec.find_first(needed as u64, |i| {
                let s = |k: u32| Subset((i >> (k as usize * n)) & mask);
                ingleton_check(m, s(0), s(1), s(2), s(3)).is_some()
            });
            Ok(hit.and_then(|i| {
                let s = |k: u32| Subset((i >> (k as usize * n)) & mask);
                ingleton_check(m, s(0), s(1), s(2), s(3))
            }))
        }
    }
}

fn first_cd(m: &Matroid, small: &[Subset], a: Subset, b: Subset) -> Option<IngletonWitness> {
    let ab = a.union(b);
    for &c in small {
        if !c.intersection(ab).is_empty() {
            continue;
        }
        for &d in small {
            if !d.intersection(ab.union(c)).is_empty() {
                continue;
            }
            if let Some(w) = ingleton_check(m, a, b, c, d) {
                return Some(w);
            }
        }
    }
    None
}
