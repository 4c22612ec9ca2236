#![allow(dead_code)]

use std::collections::HashSet;

use mw_core::algebra::{ExactMatrix, Field};
use mw_core::invariants::{tutte_polynomial, BivariatePoly};
use mw_core::matroid::{matroid_from_matrix, Matroid, Subset};
use proptest::prelude::*;

/// Rank of every subset by brute force over the bases, indexed by bitmask.
pub fn rank_table(m: &Matroid) -> Vec<usize> {
    (0..1u64 << m.n())
        .map(|a| m.bases().iter().map(|b| (b.0 & a).count_ones() as usize).max().unwrap_or(0))
        .collect()
}

/// Checks the basis exchange axiom over every pair of bases.
pub fn exchange_holds(m: &Matroid) -> Result<(), String> {
    let bases: HashSet<Subset> = m.bases().iter().copied().collect();
    for &a in m.bases().iter() {
        for &b in m.bases().iter() {
            for x in a.difference(b).iter() {
                let ok = b
                    .difference(a)
                    .iter()
                    .any(|y| bases.contains(&a.without(x).with(y)));
                if !ok {
                    return Err(format!("exchange fails for {a} / {b} at {x}"));
                }
            }
        }
    }
    Ok(())
}

/// Every cryptomorphic description recomputed from scratch and compared
/// with the library's answer, over all subsets of the ground set.
pub fn cryptomorphisms_hold(m: &Matroid) -> Result<(), String> {
    let n = m.n();
    let rk = rank_table(m);
    let full = 1u64 << n;

    for a in 0..full {
        let s = Subset(a);
        let r = m.rank_of(s).map_err(|e| e.to_string())?;
        if r != rk[a as usize] {
            return Err(format!("rank_of{s} = {r}, brute force {}", rk[a as usize]));
        }
        for e in 1..=n {
            if !s.contains(e) {
                let up = rk[s.with(e).0 as usize];
                if up < r || up > r + 1 {
                    return Err(format!("rank not unit-increasing at {s} + {e}"));
                }
            }
        }
    }
    for a in 0..full {
        for b in a..full {
            if rk[a as usize] + rk[b as usize] < rk[(a | b) as usize] + rk[(a & b) as usize] {
                return Err(format!("submodularity fails for {} and {}", Subset(a), Subset(b)));
            }
        }
    }

    let indep: HashSet<Subset> = m.independent_sets().iter().copied().collect();
    let expect: HashSet<Subset> = (0..full)
        .map(Subset)
        .filter(|s| rk[s.0 as usize] == s.len())
        .collect();
    if indep != expect {
        return Err("independent sets differ from the rank-function ones".into());
    }
    let maximal: Vec<Subset> = indep
        .iter()
        .copied()
        .filter(|s| (1..=n).all(|e| s.contains(e) || !indep.contains(&s.with(e))))
        .collect();
    let rebuilt = Matroid::from_bases(n, maximal).map_err(|e| e.to_string())?;
    if &rebuilt != m {
        return Err("bases rebuilt from independent sets differ".into());
    }
    for s in (0..full).map(Subset) {
        let from_indep = indep.iter().map(|i| i.intersection(s).len()).max().unwrap_or(0);
        if from_indep != rk[s.0 as usize] {
            return Err(format!("rank from independent sets differs at {s}"));
        }
    }

    let closure_of = |s: Subset| -> Subset {
        (1..=n).filter(|&e| rk[s.with(e).0 as usize] == rk[s.0 as usize]).fold(s, |acc, e| acc.with(e))
    };
    let flats: HashSet<Subset> = m.flats().iter().copied().collect();
    for s in (0..full).map(Subset) {
        let c = closure_of(s);
        if m.closure(s).map_err(|e| e.to_string())? != c {
            return Err(format!("closure differs at {s}"));
        }
        if flats.contains(&s) != (c == s) {
            return Err(format!("flat status differs at {s}"));
        }
    }

    let minimal_dependent: HashSet<Subset> = (0..full)
        .map(Subset)
        .filter(|s| rk[s.0 as usize] < s.len() && s.iter().all(|e| rk[s.without(e).0 as usize] == s.len() - 1))
        .collect();
    let circuits: HashSet<Subset> = m.circuits().iter().copied().collect();
    if circuits != minimal_dependent {
        return Err("circuits differ from minimal dependent sets".into());
    }
    Ok(())
}

/// `T(M) = T(M\e) + T(M/e)`, with the loop and coloop cases, for every `e`.
pub fn deletion_contraction_holds(m: &Matroid) -> Result<(), String> {
    if m.n() < 2 {
        return Ok(());
    }
    let t = tutte_polynomial(m);
    for e in 1..=m.n() {
        let s = Subset::singleton(e);
        let del = tutte_polynomial(&m.deletion(s).map_err(|x| x.to_string())?);
        let con = tutte_polynomial(&m.contraction(s).map_err(|x| x.to_string())?);
        let expect = if m.loops().contains(e) {
            BivariatePoly::y().mul(&del)
        } else if m.coloops().contains(e) {
            BivariatePoly::x().mul(&con)
        } else {
            del.add(&con)
        };
        if expect != t {
            return Err(format!("deletion-contraction fails at element {e}"));
        }
    }
    Ok(())
}

/// Column matroid of a random matrix over `F_p` with up to 4 rows and
/// 1 to 8 columns. Zero and repeated columns give loops and parallels.
pub fn small_matrix_matroid() -> impl Strategy<Value = Matroid> {
    (prop_oneof![Just(2u64), Just(3), Just(5)], 1usize..=4, 1usize..=8)
        .prop_flat_map(|(p, r, n)| (Just(p), Just(r), Just(n), proptest::collection::vec(0..p as i64, r * n)))
        .prop_map(|(p, _, n, entries)| {
            let field = Field::Prime(p);
            let rows: Vec<Vec<i64>> = entries.chunks(n).map(|c| c.to_vec()).collect();
            let x = ExactMatrix::from_i64_rows(&field, &rows).unwrap();
            matroid_from_matrix(&x).unwrap()
        })
}
