//! Realization spaces of matroids: the parameterized matrix, the ideal of
//! non-basis minors, the basis minors as inequations, simplification, and
//! realizability per characteristic and over finite fields.

mod param;
mod search;

pub use param::{build_parameterized_matrix, surviving_variables, EntryKind, ParameterizedMatrix};
pub use search::{find_realization, is_realizable_over_q, realizability_table, RealizationMatrix};

use std::cmp::Ordering;

use thiserror::Error;

use crate::algebra::{AlgebraError, Field, MinorCache, MonomialOrder, Poly, RingRef};
use crate::groebner::{
    buchberger, eliminate_linear_variables, saturate_each, EliminationStatus, GbConfig,
    GroebnerError, Ideal, Substitution,
};
use crate::matroid::{k_subsets, Matroid, MatroidError, Subset};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RealizationError {
    #[error("matroid has loops {0}; realization spaces need a loop-free matroid")]
    LoopPresent(Subset),
    #[error("{0} is not a basis of the matroid")]
    NotABasis(Subset),
    #[error("search needs {needed} assignments, budget is {budget}")]
    SearchBudgetExceeded { needed: u128, budget: u64 },
    #[error("realization space undecided: {0}")]
    Undecided(GroebnerError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    NonEmpty,
    Empty,
    /// A Gröbner budget ran out before a decision.
    Undecided,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RealizationOptions {
    pub simplify: bool,
    pub gb: GbConfig,
    /// Use this basis instead of the one minimizing variables.
    pub basis: Option<Subset>,
}

impl Default for RealizationOptions {
    fn default() -> Self {
        RealizationOptions {
            simplify: true,
            gb: GbConfig::default(),
            basis: None,
        }
    }
}

/// A presentation of the realization space over a field of fixed
/// characteristic: coordinates are the variables of the parameterized
/// matrix that were not eliminated, cut out by `ideal` and localized at
/// `inequations`.
#[derive(Clone, Debug)]
pub struct RealizationSpace {
    characteristic: u64,
    field: Field,
    matrix: ParameterizedMatrix,
    ideal: Vec<Poly>,
    inequations: Vec<Poly>,
    substitutions: Vec<Substitution>,
    verdict: Verdict,
    budget_error: Option<GroebnerError>,
}

impl RealizationSpace {
    pub fn characteristic(&self) -> u64 {
        self.characteristic
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn basis(&self) -> Subset {
        self.matrix.basis()
    }

    pub fn ring(&self) -> &RingRef {
        self.matrix.ring()
    }

    pub fn parameterized_matrix(&self) -> &ParameterizedMatrix {
        &self.matrix
    }

    pub fn ideal(&self) -> &[Poly] {
        &self.ideal
    }

    pub fn inequations(&self) -> &[Poly] {
        &self.inequations
    }

    pub fn substitutions(&self) -> &[Substitution] {
        &self.substitutions
    }

    pub fn verdict(&self) -> Verdict {
        self.verdict
    }

    pub fn budget_error(&self) -> Option<&GroebnerError> {
        self.budget_error.as_ref()
    }

    /// Ring variables that were not eliminated, in index order.
    pub fn free_variables(&self) -> Vec<usize> {
        let gone: Vec<usize> = self.substitutions.iter().map(|s| s.var).collect();
        (0..self.ring().nvars()).filter(|v| !gone.contains(v)).collect()
    }

    pub fn free_variable_names(&self) -> Vec<String> {
        let names = self.ring().names();
        self.free_variables().iter().map(|&v| names[v].clone()).collect()
    }

    /// The ideal is zero (and the space is not known to be empty).
    pub fn ideal_is_zero(&self) -> bool {
        self.ideal.is_empty() && self.verdict != Verdict::Empty
    }
}

/// Basis minimizing the surviving variables; ties go to the first basis in
/// canonical order.
pub fn choose_basis(m: &Matroid) -> Result<Subset, RealizationError> {
    require_loop_free(m)?;
    let mut best: Option<(usize, Subset)> = None;
    for &b in m.bases().iter() {
        let v = surviving_variables(m, b);
        if best.is_none_or(|(bv, _)| v < bv) {
            best = Some((v, b));
        }
    }
    Ok(best.expect("a matroid has at least one basis").1)
}

fn require_loop_free(m: &Matroid) -> Result<(), RealizationError> {
    let loops = m.loops();
    if loops.is_empty() {
        Ok(())
    } else {
        Err(RealizationError::LoopPresent(loops))
    }
}

/// Realization space over a field of characteristic `char` (0 for the
/// rationals) with default options.
pub fn realization_space(m: &Matroid, char: u64, simplify: bool) -> Result<RealizationSpace, RealizationError> {
    realization_space_with(
        m,
        char,
        &RealizationOptions {
            simplify,
            ..RealizationOptions::default()
        },
    )
}

pub fn realization_space_with(
    m: &Matroid,
    char: u64,
    opts: &RealizationOptions,
) -> Result<RealizationSpace, RealizationError> {
    require_loop_free(m)?;
    let field = Field::of_characteristic(char)?;
    let b0 = match opts.basis {
        Some(b) if m.is_basis(b) => b,
        Some(b) => return Err(RealizationError::NotABasis(b)),
        None => choose_basis(m)?,
    };
    let matrix = build_parameterized_matrix(m, b0, &field);
    let ring = matrix.ring().clone();

    let mut ideal = Vec::new();
    let mut inequations = Vec::new();
    let mut cache = MinorCache::new(matrix.matrix());
    for s in k_subsets(m.n(), m.rank()) {
        let cols: Vec<usize> = s.iter().map(|e| e - 1).collect();
        let p = cache.minor(&cols)?;
        if m.is_basis(s) {
            inequations.push(p);
        } else if !p.is_zero() {
            ideal.push(p);
        }
    }

    let mut space = RealizationSpace {
        characteristic: char,
        field,
        matrix,
        ideal,
        inequations,
        substitutions: Vec::new(),
        verdict: Verdict::Undecided,
        budget_error: None,
    };
    if opts.simplify {
        simplify(&mut space, &ring, &opts.gb);
    } else {
        space.inequations = dedupe(space.inequations.iter().map(normalize).collect(), &ring);
    }
    if space.verdict == Verdict::Undecided && space.budget_error.is_none() {
        decide(&mut space, &ring, &opts.gb);
    }
    Ok(space)
}

fn normalize(p: &Poly) -> Poly {
    if p.is_zero() {
        p.clone()
    } else {
        p.monic()
    }
}

/// Drops nonzero constants and duplicates; sorted by leading monomial then
/// rendering so the output is deterministic.
fn dedupe(mut v: Vec<Poly>, ring: &RingRef) -> Vec<Poly> {
    v.retain(|p| !(p.is_constant() && !p.is_zero()));
    let order = ring.order();
    v.sort_by(|a, b| match (a.leading_monomial(), b.leading_monomial()) {
        (Some(x), Some(y)) => order.cmp(x, y).then_with(|| a.to_string().cmp(&b.to_string())),
        (None, Some(_)) => Ordering::Less,
        (Some(_), None) => Ordering::Greater,
        (None, None) => Ordering::Equal,
    });
    v.dedup();
    v
}

/// Removes from each inequation the factors that are themselves other
/// inequations; the open set they cut out is unchanged.
fn strip_mutual_factors(v: Vec<Poly>, ring: &RingRef) -> Vec<Poly> {
    let mut v = dedupe(v, ring);
    loop {
        let mut changed = false;
        for k in 0..v.len() {
            for j in 0..v.len() {
                if j == k || v[j].is_constant() || v[k].is_constant() {
                    continue;
                }
                if let Some(q) = v[k].divide_exact(&v[j]) {
                    v[k] = q.monic();
                    changed = true;
                }
            }
        }
        v = dedupe(v, ring);
        if !changed {
            return v;
        }
    }
}

fn mark_empty(space: &mut RealizationSpace, ring: &RingRef) {
    space.verdict = Verdict::Empty;
    space.ideal = vec![Poly::one(ring)];
}

/// Gröbner reduction of the ideal, inequation reduction, and linear
/// elimination, repeated until no variable can be eliminated.
fn simplify(space: &mut RealizationSpace, ring: &RingRef, cfg: &GbConfig) {
    if space.inequations.iter().any(|u| u.is_zero()) || space.ideal.iter().any(|g| g.is_constant()) {
        return mark_empty(space, ring);
    }
    loop {
        let gb = match Ideal::new(ring, space.ideal.clone())
            .and_then(|i| buchberger(&i, MonomialOrder::DegRevLex, cfg))
        {
            Ok(gb) => gb,
            Err(e) => {
                space.budget_error = Some(e);
                space.inequations = dedupe(space.inequations.iter().map(normalize).collect(), ring);
                return;
            }
        };
        if gb.is_unit() {
            return mark_empty(space, ring);
        }
        let mut reduced = Vec::with_capacity(space.inequations.len());
        for u in &space.inequations {
            let nf = gb.normal_form(u);
            if nf.is_zero() {
                return mark_empty(space, ring);
            }
            reduced.push(nf.monic());
        }
        space.inequations = strip_mutual_factors(reduced, ring);
        space.ideal = gb.elements().to_vec();

        let e = eliminate_linear_variables(&space.ideal, &space.inequations, &[]);
        match e.status {
            EliminationStatus::UnitIdeal | EliminationStatus::EmptyInequation => {
                space.substitutions.extend(e.substitutions);
                return mark_empty(space, ring);
            }
            EliminationStatus::Open => {}
        }
        if e.substitutions.is_empty() {
            return;
        }
        space.substitutions.extend(e.substitutions);
        space.ideal = e.generators;
        space.inequations = e.inequations;
    }
}

/// Verdict via saturation of the ideal by the inequations, one factor at
/// a time.
fn decide(space: &mut RealizationSpace, ring: &RingRef, cfg: &GbConfig) {
    if space.ideal.is_empty() {
        space.verdict = Verdict::NonEmpty;
        return;
    }
    if space.inequations.iter().any(|u| u.is_zero()) {
        return mark_empty(space, ring);
    }
    let result = Ideal::new(ring, space.ideal.clone())
        .and_then(|i| saturate_each(&i, &space.inequations, cfg));
    match result {
        Ok(gb) if gb.is_unit() => space.verdict = Verdict::Empty,
        Ok(_) => space.verdict = Verdict::NonEmpty,
        Err(e) => {
            space.verdict = Verdict::Undecided;
            space.budget_error = Some(e);
        }
    }
}

/// Realizability over an algebraically closed field of characteristic
/// `char`. `Undecided` is returned as an error, never as `false`.
pub fn is_realizable(m: &Matroid, char: u64) -> Result<bool, RealizationError> {
    let space = realization_space(m, char, true)?;
    match space.verdict {
        Verdict::NonEmpty => Ok(true),
        Verdict::Empty => Ok(false),
        Verdict::Undecided => Err(RealizationError::Undecided(
            space.budget_error.expect("undecided carries its budget error"),
        )),
    }
}

/// Characteristics 0 and the primes up to 13.
pub const PROFILE_CHARACTERISTICS: [u64; 7] = [0, 2, 3, 5, 7, 11, 13];

/// Verdict per characteristic.
pub fn characteristic_profile(
    m: &Matroid,
    chars: &[u64],
    exec: crate::Exec,
) -> Result<Vec<(u64, Verdict)>, RealizationError> {
    exec.map(chars, |&c| realization_space(m, c, true).map(|s| (c, s.verdict)))
        .into_iter()
        .collect()
}
