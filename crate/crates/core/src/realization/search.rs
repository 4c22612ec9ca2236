use std::collections::BTreeMap;

use crate::algebra::field::{prime_power_decomposition, prime_powers_up_to};
use crate::algebra::{AlgebraError, Elem, ExactMatrix, Field};
use crate::groebner::back_substitute;
use crate::matroid::{matroid_from_matrix, Matroid};
use crate::Exec;

use super::{realization_space, RealizationError, RealizationSpace, Verdict};

/// A matrix over a finite field whose column matroid is the target.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RealizationMatrix {
    pub field: Field,
    pub matrix: ExactMatrix,
}

/// Point of the presentation for assignment number `index`, with
/// eliminated coordinates back-substituted, if it satisfies every equation
/// and inequation.
fn point_for(space: &RealizationSpace, target: &Field, elems: &[Elem], free: &[usize], index: u64) -> Option<Vec<Elem>> {
    let q = elems.len() as u64;
    let mut point = vec![target.zero(); space.ring().nvars()];
    let mut rest = index;
    for &v in free {
        point[v] = elems[(rest % q) as usize].clone();
        rest /= q;
    }
    if !back_substitute(space.substitutions(), target, &mut point) {
        return None;
    }
    let vanish = space
        .ideal()
        .iter()
        .all(|g| g.eval(target, &point).is_ok_and(|v| target.is_zero(&v)));
    let open = space
        .inequations()
        .iter()
        .all(|u| u.eval(target, &point).is_ok_and(|v| !target.is_zero(&v)));
    (vanish && open).then_some(point)
}

fn evaluate_matrix(space: &RealizationSpace, target: &Field, point: &[Elem]) -> Result<ExactMatrix, AlgebraError> {
    let pm = space.parameterized_matrix().matrix();
    let rows = (0..pm.rows())
        .map(|i| {
            (0..pm.cols())
                .map(|j| pm.get(i, j).eval(target, point))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    if pm.rows() == 0 {
        return Ok(ExactMatrix::zeros(target, 0, pm.cols()));
    }
    ExactMatrix::from_rows(target, rows)
}

/// Searches the presentation over `F_q`. Every candidate is re-checked by
/// recomputing the column matroid.
fn search(
    m: &Matroid,
    space: &RealizationSpace,
    q: u64,
    budget: u64,
    exec: Exec,
) -> Result<Option<RealizationMatrix>, RealizationError> {
    if space.verdict() == Verdict::Empty {
        return Ok(None);
    }
    let target = Field::finite(q)?;
    let elems = target.elements().expect("finite field");
    let free = space.free_variables();
    let needed = (q as u128).checked_pow(free.len() as u32).unwrap_or(u128::MAX);
    if needed > budget as u128 {
        return Err(RealizationError::SearchBudgetExceeded { needed, budget });
    }
    let check = |i: u64| {
        point_for(space, &target, &elems, &free, i)
            .and_then(|p| evaluate_matrix(space, &target, &p).ok())
            .filter(|x| matroid_from_matrix(x).is_ok_and(|mm| &mm == m))
    };
    Ok(exec
        .find_first(needed as u64, |i| check(i).is_some())
        .and_then(check)
        .map(|matrix| RealizationMatrix {
            field: target.clone(),
            matrix,
        }))
}

/// A realization over `F_q` found by exhaustive search over the free
/// variables of the simplified characteristic-`p` presentation.
pub fn find_realization(
    m: &Matroid,
    q: u64,
    budget: u64,
    exec: Exec,
) -> Result<Option<RealizationMatrix>, RealizationError> {
    let (p, _) = prime_power_decomposition(q).ok_or(AlgebraError::NotPrimePower(q))?;
    let space = realization_space(m, p, true)?;
    search(m, &space, q, budget, exec)
}

pub fn is_realizable_over_q(m: &Matroid, q: u64, budget: u64, exec: Exec) -> Result<bool, RealizationError> {
    Ok(find_realization(m, q, budget, exec)?.is_some())
}

/// Realizability over every `F_q` with `q ≤ q_max`. One presentation is
/// computed per characteristic and shared by its prime powers.
pub fn realizability_table(
    m: &Matroid,
    q_max: u64,
    budget: u64,
    exec: Exec,
) -> Result<BTreeMap<u64, Result<bool, RealizationError>>, RealizationError> {
    let qs = prime_powers_up_to(q_max);
    let mut primes: Vec<u64> = qs
        .iter()
        .map(|&q| prime_power_decomposition(q).expect("prime power").0)
        .collect();
    primes.dedup();
    let spaces = exec.map(&primes, |&p| realization_space(m, p, true));
    let mut by_char = BTreeMap::new();
    for (p, s) in primes.into_iter().zip(spaces) {
        by_char.insert(p, s?);
    }
    let results = exec.map(&qs, |&q| {
        let p = prime_power_decomposition(q).expect("prime power").0;
        search(m, &by_char[&p], q, budget, exec).map(|r| r.is_some())
    });
    Ok(qs.into_iter().zip(results).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{catalog, CatalogName};

    #[test]
    fn fano_over_small_fields() {
        let m = catalog(CatalogName::Fano).unwrap();
        let t = realizability_table(&m, 4, 1000, Exec::default()).unwrap();
        let got: Vec<(u64, bool)> = t.into_iter().map(|(q, r)| (q, r.unwrap())).collect();
        assert_eq!(got, vec![(2, true), (3, false), (4, true)]);
        let x = find_realization(&m, 2, 1000, Exec::Sequential).unwrap().unwrap();
        assert_eq!(matroid_from_matrix(&x.matrix).unwrap(), m);
    }

    #[test]
    fn uniform_two_three_everywhere() {
        let m = Matroid::uniform(2, 3).unwrap();
        let t = realizability_table(&m, 4, 1000, Exec::Sequential).unwrap();
        assert!(t.values().all(|r| *r.as_ref().unwrap()));
    }

    #[test]
    fn budget_is_reported() {
        let m = catalog(CatalogName::Pappus).unwrap();
        let e = find_realization(&m, 11, 3, Exec::Sequential).unwrap_err();
        assert!(matches!(e, RealizationError::SearchBudgetExceeded { .. }));
    }
}
