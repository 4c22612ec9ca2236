use crate::algebra::{Monomial, MonomialOrder, Poly};

use super::{buchberger, interreduce, GbConfig, GroebnerBasis, GroebnerError, Ideal};

/// Whether `1` lies in the ideal.
pub fn contains_one(ideal: &Ideal, config: &GbConfig) -> Result<bool, GroebnerError> {
    if ideal.generators().iter().any(|g| g.is_constant()) {
        return Ok(true);
    }
    Ok(buchberger(ideal, MonomialOrder::DegRevLex, config)?.is_unit())
}

/// `I : f^∞`, computed as the `t`-free part of `I + (t*f - 1)` under an
/// elimination order for a fresh leading variable `t`. The result is the
/// reduced degrevlex basis in the original ring.
pub fn saturate(ideal: &Ideal, f: &Poly, config: &GbConfig) -> Result<GroebnerBasis, GroebnerError> {
    let ring = ideal.ring();
    let base = ring.with_order(MonomialOrder::DegRevLex);
    if f.is_zero() {
        // I : 0^∞ is the unit ideal
        return buchberger(&Ideal::new(&base, vec![Poly::one(&base)])?, MonomialOrder::DegRevLex, config);
    }
    let ext = ring.with_leading_vars(&["_t"], MonomialOrder::BlockElimination(1));
    let shift: Vec<usize> = (1..=ring.nvars()).collect();
    let t = Poly::var(&ext, 0);
    let mut gens: Vec<Poly> = ideal
        .generators()
        .iter()
        .map(|g| g.map_into(&ext, &shift))
        .collect();
    gens.push(&(&t * &f.map_into(&ext, &shift)) - &Poly::one(&ext));
    let gb = buchberger(&Ideal::new(&ext, gens)?, MonomialOrder::BlockElimination(1), config)?;
    let kept: Vec<Poly> = gb
        .elements()
        .iter()
        .filter(|g| !g.uses_var(0))
        .map(|g| {
            let terms = g
                .terms()
                .iter()
                .map(|(m, c)| (Monomial::new(m.exps()[1..].to_vec()), c.clone()))
                .collect();
            Poly::from_terms(&base, terms)
        })
        .collect();
    Ok(GroebnerBasis {
        ring: base,
        elements: interreduce(kept, MonomialOrder::DegRevLex),
        reduced: true,
        truncated_at: None,
        stats: gb.stats(),
    })
}

/// Saturates by each factor in turn. Since `(I : f^∞) : g^∞ = I : (fg)^∞`
/// this equals saturation by the product, while keeping each step small.
/// Stops early once the ideal becomes the unit ideal.
pub fn saturate_each(
    ideal: &Ideal,
    factors: &[Poly],
    config: &GbConfig,
) -> Result<GroebnerBasis, GroebnerError> {
    let mut current = buchberger(ideal, MonomialOrder::DegRevLex, config)?;
    for f in factors {
        if current.is_unit() {
            break;
        }
        if current.is_zero() {
            continue;
        }
        let nf = current.normal_form(f);
        if nf.is_constant() && !nf.is_zero() {
            // a unit modulo I cannot enlarge the saturation
            continue;
        }
        current = saturate(&current.clone().into_ideal(), f, config)?;
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Field, PolyRing};

    fn xy() -> (crate::algebra::RingRef, Poly, Poly) {
        let r = PolyRing::new(
            Field::Rationals,
            vec!["x".into(), "y".into()],
            MonomialOrder::DegRevLex,
        );
        let x = Poly::var(&r, 0);
        let y = Poly::var(&r, 1);
        (r, x, y)
    }

    #[test]
    fn saturating_away_a_component() {
        // (x*y, x*(x-1)) : x^∞ = (y, x-1)
        let (r, x, y) = xy();
        let one = Poly::one(&r);
        let i = Ideal::new(&r, vec![&x * &y, &x * &(&x - &one)]).unwrap();
        let s = saturate(&i, &x, &GbConfig::default()).unwrap();
        let strs: Vec<String> = s.elements().iter().map(|p| p.to_string()).collect();
        assert_eq!(strs, vec!["y", "x - 1"]);
    }

    #[test]
    fn saturation_by_a_vanishing_element_is_unit() {
        let (r, x, _) = xy();
        let i = Ideal::new(&r, vec![x.pow(3)]).unwrap();
        assert!(saturate(&i, &x, &GbConfig::default()).unwrap().is_unit());
    }

    #[test]
    fn sequential_matches_product() {
        let (r, x, y) = xy();
        let one = Poly::one(&r);
        let i = Ideal::new(
            &r,
            vec![&(&x * &y) * &(&x - &one), &y * &(&y - &one)],
        )
        .unwrap();
        let cfg = GbConfig::default();
        let each = saturate_each(&i, &[x.clone(), y.clone()], &cfg).unwrap();
        let prod = saturate(&i, &(&x * &y), &cfg).unwrap();
        assert_eq!(each.elements(), prod.elements());
        assert!(!each.is_unit());
    }

    #[test]
    fn unit_detection() {
        let (r, x, _) = xy();
        let one = Poly::one(&r);
        let cfg = GbConfig::default();
        let i = Ideal::new(&r, vec![x.clone(), &x - &one]).unwrap();
        assert!(contains_one(&i, &cfg).unwrap());
        let j = Ideal::new(&r, vec![x.pow(2)]).unwrap();
        assert!(!contains_one(&j, &cfg).unwrap());
    }
}
