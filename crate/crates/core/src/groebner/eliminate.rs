use crate::algebra::{Elem, Field, Poly};

/// `x_var = numerator / denominator`, recorded in elimination order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Substitution {
    pub var: usize,
    pub numerator: Poly,
    pub denominator: Poly,
}

impl Substitution {
    /// Value of the eliminated variable at `point` (all other coordinates
    /// filled). `None` when the denominator vanishes there.
    pub fn evaluate(&self, target: &Field, point: &[Elem]) -> Option<Elem> {
        let num = self.numerator.eval(target, point).ok()?;
        let den = self.denominator.eval(target, point).ok()?;
        target.div(&num, &den)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EliminationStatus {
    Open,
    /// A generator became a nonzero constant.
    UnitIdeal,
    /// An inequation became identically zero.
    EmptyInequation,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Elimination {
    pub generators: Vec<Poly>,
    pub inequations: Vec<Poly>,
    pub substitutions: Vec<Substitution>,
    pub status: EliminationStatus,
}

impl Elimination {
    pub fn eliminated(&self) -> Vec<usize> {
        self.substitutions.iter().map(|s| s.var).collect()
    }

    /// Fills eliminated coordinates of `point` by back-substitution.
    /// Returns false if some denominator vanishes.
    pub fn back_substitute(&self, target: &Field, point: &mut [Elem]) -> bool {
        back_substitute(&self.substitutions, target, point)
    }
}

/// Applies a substitution log in reverse order to fill the eliminated
/// coordinates of `point`. Returns false if some denominator vanishes.
pub fn back_substitute(log: &[Substitution], target: &Field, point: &mut [Elem]) -> bool {
    for s in log.iter().rev() {
        match s.evaluate(target, point) {
            Some(v) => point[s.var] = v,
            None => return false,
        }
    }
    true
}

/// Whether `a` is a nonzero scalar times a product of `units`.
pub(crate) fn is_unit_product(a: &Poly, units: &[Poly]) -> bool {
    strip_factors(a, units).is_constant() && !a.is_zero()
}

/// Divides out every factor from `units` (with multiplicity) and makes the
/// result monic. Used to keep substituted polynomials small.
pub(crate) fn strip_factors(f: &Poly, units: &[Poly]) -> Poly {
    if f.is_zero() {
        return f.clone();
    }
    let mut cur = f.monic();
    let mut changed = true;
    while changed && !cur.is_constant() {
        changed = false;
        for u in units.iter().filter(|u| !u.is_constant()) {
            while let Some(q) = cur.divide_exact(u) {
                cur = q.monic();
                changed = true;
                if cur.is_constant() {
                    break;
                }
            }
        }
    }
    cur
}

/// Repeatedly picks a generator `a*x + b` where `x` is unprotected, neither
/// `a` nor `b` involves `x`, and `a` is a unit on the open set cut out by
/// the inequations. Then substitutes `x = -b/a` everywhere (clearing
/// denominators) and drops the generator. Highest variable index first.
pub fn eliminate_linear_variables(
    generators: &[Poly],
    inequations: &[Poly],
    protected: &[usize],
) -> Elimination {
    let mut gens: Vec<Poly> = generators.iter().filter(|g| !g.is_zero()).cloned().collect();
    let mut ineqs: Vec<Poly> = inequations.to_vec();
    let mut subs = Vec::new();
    loop {
        if gens.iter().any(|g| g.is_constant()) {
            return finish(gens, ineqs, subs, EliminationStatus::UnitIdeal);
        }
        if ineqs.iter().any(|u| u.is_zero()) {
            return finish(gens, ineqs, subs, EliminationStatus::EmptyInequation);
        }
        let Some((gi, var, a, b)) = pick(&gens, &ineqs, protected) else {
            return finish(gens, ineqs, subs, EliminationStatus::Open);
        };
        gens.swap_remove(gi);
        let num = b.neg();
        gens = gens
            .iter()
            .map(|g| strip_factors(&g.substitute_fraction(var, &num, &a), &ineqs))
            .filter(|g| !g.is_zero())
            .collect();
        ineqs = ineqs
            .iter()
            .map(|u| u.substitute_fraction(var, &num, &a))
            .filter(|u| !(u.is_constant() && !u.is_zero()))
            .map(|u| if u.is_zero() { u } else { u.monic() })
            .collect();
        ineqs.sort_by_key(|u| u.to_string());
        ineqs.dedup();
        subs.push(Substitution {
            var,
            numerator: num,
            denominator: a,
        });
    }
}

fn pick(gens: &[Poly], ineqs: &[Poly], protected: &[usize]) -> Option<(usize, usize, Poly, Poly)> {
    let nvars = gens.first()?.ring().nvars();
    for var in (0..nvars).rev() {
        if protected.contains(&var) {
            continue;
        }
        for (i, g) in gens.iter().enumerate() {
            if g.degree_in(var) != 1 {
                continue;
            }
            let c = g.coefficients_in(var);
            let (b, a) = (&c[0], &c[1]);
            if a.is_constant() || is_unit_product(a, ineqs) {
                return Some((i, var, a.clone(), b.clone()));
            }
        }
    }
    None
}

fn finish(
    generators: Vec<Poly>,
    inequations: Vec<Poly>,
    substitutions: Vec<Substitution>,
    status: EliminationStatus,
) -> Elimination {
    Elimination {
        generators,
        inequations,
        substitutions,
        status,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{MonomialOrder, PolyRing};

    fn ring(n: usize) -> crate::algebra::RingRef {
        PolyRing::new(
            Field::Rationals,
            (0..n).map(|i| format!("x{i}")).collect(),
            MonomialOrder::DegRevLex,
        )
    }

    #[test]
    fn chain_of_linear_relations() {
        let r = ring(3);
        let x: Vec<Poly> = (0..3).map(|i| Poly::var(&r, i)).collect();
        let one = Poly::one(&r);
        // x2 = x1 + 1, x1 = 2*x0
        let gens = vec![
            &(&x[2] - &x[1]) - &one,
            &x[1] - &x[0].scale(&r.field().from_i64(2)),
        ];
        let e = eliminate_linear_variables(&gens, &[x[0].clone()], &[]);
        assert_eq!(e.status, EliminationStatus::Open);
        assert!(e.generators.is_empty());
        assert_eq!(e.eliminated(), vec![2, 1]);
        let f = r.field().clone();
        let mut pt = vec![f.from_i64(3), f.zero(), f.zero()];
        assert!(e.back_substitute(&f, &mut pt));
        assert_eq!(pt, vec![f.from_i64(3), f.from_i64(6), f.from_i64(7)]);
    }

    #[test]
    fn unit_coefficient_allowed_only_if_inequation() {
        let r = ring(2);
        let x0 = Poly::var(&r, 0);
        let x1 = Poly::var(&r, 1);
        let one = Poly::one(&r);
        let g = &(&x0 * &x1) - &one;
        let none = eliminate_linear_variables(std::slice::from_ref(&g), &[], &[]);
        assert_eq!(none.substitutions.len(), 0);
        let some = eliminate_linear_variables(&[g], std::slice::from_ref(&x0), &[]);
        assert_eq!(some.eliminated(), vec![1]);
    }

    #[test]
    fn detects_empty_and_unit() {
        let r = ring(2);
        let x0 = Poly::var(&r, 0);
        let x1 = Poly::var(&r, 1);
        let one = Poly::one(&r);
        // x1 = x0 while x1 - x0 must be nonzero
        let e = eliminate_linear_variables(&[&x1 - &x0], &[&x1 - &x0], &[]);
        assert_eq!(e.status, EliminationStatus::EmptyInequation);
        // x1 = 0 and x1 = 1
        let u = eliminate_linear_variables(&[x1.clone(), &x1 - &one], &[], &[]);
        assert_eq!(u.status, EliminationStatus::UnitIdeal);
    }

    #[test]
    fn protected_variables_stay() {
        let r = ring(2);
        let x0 = Poly::var(&r, 0);
        let x1 = Poly::var(&r, 1);
        let e = eliminate_linear_variables(&[&x1 - &x0], &[], &[1]);
        assert_eq!(e.eliminated(), vec![0]);
    }
}
