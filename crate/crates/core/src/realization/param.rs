use crate::algebra::{Field, MonomialOrder, Poly, PolyMatrix, PolyRing, RingRef};
use crate::matroid::{Matroid, Subset};

/// How an entry of the parameterized matrix was fixed.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EntryKind {
    /// Column of the chosen basis: part of the identity block.
    Identity,
    /// The exchange set is a non-basis.
    Zero,
    /// First nonzero entry of its column, or of its row among the rest.
    One,
    /// Ring variable with this index.
    Variable(usize),
}

/// The matrix `π(X)` for a chosen basis, with its census of entries.
#[derive(Clone, Debug)]
pub struct ParameterizedMatrix {
    basis: Subset,
    ring: RingRef,
    matrix: PolyMatrix,
    kinds: Vec<EntryKind>,
    /// Original column of each variable, with its row (both 1-indexed).
    positions: Vec<(usize, usize)>,
}

impl ParameterizedMatrix {
    pub fn basis(&self) -> Subset {
        self.basis
    }

    pub fn ring(&self) -> &RingRef {
        &self.ring
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    /// Entry kind at 0-indexed `(row, col)`.
    pub fn kind(&self, row: usize, col: usize) -> EntryKind {
        self.kinds[row * self.matrix.cols() + col]
    }

    pub fn variable_count(&self) -> usize {
        self.positions.len()
    }

    /// `(row, column)` of each variable, 1-indexed.
    pub fn variable_positions(&self) -> &[(usize, usize)] {
        &self.positions
    }

    pub fn count(&self, kind: fn(&EntryKind) -> bool) -> usize {
        self.kinds.iter().filter(|k| kind(k)).count()
    }
}

/// Exchange set `B0 - {B0[i]} + {c}` for row `i` (0-indexed) and column `c`.
fn exchange(b0: &[usize], i: usize, c: usize) -> Subset {
    Subset::from_elements(b0.iter().copied()).without(b0[i]).with(c)
}

/// `μ` and `ν` in the relabeled coordinates where `B0` sits last: `mu[j]`
/// is a row index in `0..=r` and `nu[i]` a non-basis position in `0..=n-r`,
/// with the top values meaning "none".
fn mu_nu(m: &Matroid, b0: &[usize], others: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let r = b0.len();
    let is_b = |i: usize, j: usize| m.is_basis(exchange(b0, i, others[j]));
    let mu: Vec<usize> = (0..others.len())
        .map(|j| (0..r).find(|&i| is_b(i, j)).unwrap_or(r))
        .collect();
    let nu: Vec<usize> = (0..r)
        .map(|i| {
            (0..others.len())
                .find(|&j| is_b(i, j) && mu[j] != i)
                .unwrap_or(others.len())
        })
        .collect();
    (mu, nu)
}

/// Number of entries that survive as variables for basis `b0`.
pub fn surviving_variables(m: &Matroid, b0: Subset) -> usize {
    let b: Vec<usize> = b0.to_vec();
    let others: Vec<usize> = m.ground_set().difference(b0).to_vec();
    let (mu, nu) = mu_nu(m, &b, &others);
    let mut count = 0;
    for i in 0..b.len() {
        for j in 0..others.len() {
            if m.is_basis(exchange(&b, i, others[j])) && mu[j] != i && nu[i] != j {
                count += 1;
            }
        }
    }
    count
}

/// Builds `π(X)` over `field` with the identity in the columns of `b0`.
/// Variables are named `x_{row,column}` in original labels and ordered
/// row by row.
pub fn build_parameterized_matrix(m: &Matroid, b0: Subset, field: &Field) -> ParameterizedMatrix {
    let n = m.n();
    let b: Vec<usize> = b0.to_vec();
    let r = b.len();
    let others: Vec<usize> = m.ground_set().difference(b0).to_vec();
    let (mu, nu) = mu_nu(m, &b, &others);

    let mut kinds = vec![EntryKind::Zero; r * n];
    let mut positions = Vec::new();
    for &bc in &b {
        for row in 0..r {
            kinds[row * n + bc - 1] = EntryKind::Identity;
        }
    }
    for i in 0..r {
        for (j, &c) in others.iter().enumerate() {
            let kind = if !m.is_basis(exchange(&b, i, c)) {
                EntryKind::Zero
            } else if mu[j] == i || nu[i] == j {
                EntryKind::One
            } else {
                positions.push((i + 1, c));
                EntryKind::Variable(positions.len() - 1)
            };
            kinds[i * n + c - 1] = kind;
        }
    }
    let names = positions.iter().map(|(i, c)| format!("x_{{{i},{c}}}")).collect();
    let ring = PolyRing::new(field.clone(), names, MonomialOrder::DegRevLex);
    let mut entries = Vec::with_capacity(r * n);
    for row in 0..r {
        for col in 0..n {
            let p = match kinds[row * n + col] {
                EntryKind::Identity => {
                    if b[row] == col + 1 {
                        Poly::one(&ring)
                    } else {
                        Poly::zero(&ring)
                    }
                }
                EntryKind::Zero => Poly::zero(&ring),
                EntryKind::One => Poly::one(&ring),
                EntryKind::Variable(v) => Poly::var(&ring, v),
            };
            entries.push(p);
        }
    }
    ParameterizedMatrix {
        basis: b0,
        ring: ring.clone(),
        matrix: PolyMatrix::new(&ring, r, n, entries),
        kinds,
        positions,
    }
}
