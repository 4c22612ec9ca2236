use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::algebra::{Elem, ExactMatrix, Field};
use crate::matroid::Matroid;
use crate::Exec;

use super::{chow_ring, ChowElement, ChowError, ChowRing};

/// Exact pairing matrices and verdicts for the three Kähler properties in
/// degree `k`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairingReport {
    pub k: usize,
    /// `vol(b_s * b'_t)` over bases of `A^k` and `A^{r-1-k}`.
    pub mat1: ExactMatrix,
    /// `vol(b_s * ℓ^{r-2k-1} * b_t)` over the basis of `A^k`.
    pub mat2: ExactMatrix,
    /// Kernel of multiplication by `ℓ^{r-2k}` on `A^k`, as coordinate vectors.
    pub kernel: Vec<Vec<Elem>>,
    /// `(-1)^k` times `mat2` restricted to the kernel.
    pub restricted_form: ExactMatrix,
    pub poincare_nondegenerate: bool,
    pub hard_lefschetz_iso: bool,
    pub hodge_riemann_definite: bool,
}

impl PairingReport {
    pub fn all_hold(&self) -> bool {
        self.poincare_nondegenerate && self.hard_lefschetz_iso && self.hodge_riemann_definite
    }
}

fn q(v: BigRational) -> Elem {
    Elem::Q(v)
}

fn basis_element(ring: &ChowRing, degree: usize, i: usize) -> ChowElement {
    let mut coords = vec![Field::Rationals.zero(); ring.basis(degree).len()];
    coords[i] = Field::Rationals.one();
    ChowElement { degree, coords }
}

fn pairing_matrix(
    ring: &ChowRing,
    left: usize,
    right: usize,
    middle: &ChowElement,
    exec: Exec,
) -> Result<ExactMatrix, ChowError> {
    let rows = ring.basis(left).len();
    let cols = ring.basis(right).len();
    let lefts: Vec<ChowElement> = (0..rows)
        .map(|s| ring.mul(&basis_element(ring, left, s), middle))
        .collect::<Result<_, _>>()?;
    let entries = exec.map_range((rows * cols) as u64, |idx| {
        let (s, t) = (idx as usize / cols, idx as usize % cols);
        ring.mul(&lefts[s], &basis_element(ring, right, t))
            .and_then(|p| ring.volume(&p))
            .map(q)
    });
    let mut m = ExactMatrix::zeros(&Field::Rationals, rows, cols);
    for (idx, e) in entries.into_iter().enumerate() {
        m.set(idx / cols, idx % cols, e?);
    }
    Ok(m)
}

/// Poincaré duality, hard Lefschetz and Hodge–Riemann in degree `k` for the
/// degree-one element `ell`.
pub fn kahler_report(ring: &ChowRing, k: usize, ell: &ChowElement, exec: Exec) -> Result<PairingReport, ChowError> {
    let r = ring.rank();
    if ell.degree() != 1 {
        return Err(ChowError::WrongDegree {
            expected: 1,
            found: ell.degree(),
        });
    }
    if 2 * k > r - 1 {
        return Err(ChowError::WrongDegree {
            expected: (r - 1) / 2,
            found: k,
        });
    }
    let f = Field::Rationals;
    let dual = r - 1 - k;
    let mat1 = pairing_matrix(ring, k, dual, &ring.one(), exec)?;
    let lpow = ring.pow(ell, r - 1 - 2 * k)?;
    let mat2 = pairing_matrix(ring, k, k, &lpow, exec)?;

    // multiplication by ℓ^{r-2k}: A^k -> A^{r-k}; columns are images
    let dim_k = ring.basis(k).len();
    let lnext = ring.pow(ell, r - 2 * k)?;
    let images: Vec<ChowElement> = (0..dim_k)
        .map(|s| ring.mul(&basis_element(ring, k, s), &lnext))
        .collect::<Result<_, _>>()?;
    let target_dim = ring.basis(r - k).len();
    let kernel = if target_dim == 0 {
        (0..dim_k).map(|s| basis_element(ring, k, s).coords).collect()
    } else {
        let mut mult = ExactMatrix::zeros(&f, target_dim, dim_k);
        for (s, img) in images.iter().enumerate() {
            for (t, c) in img.coords().iter().enumerate() {
                mult.set(t, s, c.clone());
            }
        }
        mult.kernel()
    };

    let sign = if k.is_multiple_of(2) { f.one() } else { f.from_i64(-1) };
    let mut signed = mat2.clone();
    for i in 0..signed.rows() {
        for j in 0..signed.cols() {
            let v = f.mul(signed.get(i, j), &sign);
            signed.set(i, j, v);
        }
    }
    let restricted_form = signed.congruence(&kernel)?;

    let square = mat1.rows() == mat1.cols();
    let poincare_nondegenerate = square && mat1.rank() == mat1.rows();
    let hard_lefschetz_iso = mat2.rank() == mat2.rows();
    let hodge_riemann_definite = restricted_form.rows() == 0 || restricted_form.is_positive_definite()?;
    Ok(PairingReport {
        k,
        mat1,
        mat2,
        kernel,
        restricted_form,
        poincare_nondegenerate,
        hard_lefschetz_iso,
        hodge_riemann_definite,
    })
}

/// Strict submodularity `c_F + c_G > c_{F∧G} + c_{F∨G}` over incomparable
/// pairs of flats, with `c = 0` on the closure of the empty set and on `E`.
/// Comparable pairs are skipped: they give equality for every `c`.
pub fn is_lefschetz_element(ring: &ChowRing, coeffs: &[BigRational]) -> bool {
    let m = ring.matroid();
    let value = |s| {
        ring.flat_index(s)
            .map_or_else(BigRational::zero, |i| coeffs[i].clone())
    };
    let flats = ring.flats();
    for (a, &f) in flats.iter().enumerate() {
        for &g in &flats[a + 1..] {
            if f.is_subset_of(g) || g.is_subset_of(f) {
                continue;
            }
            let meet = f.intersection(g);
            let join = m.closure(f.union(g)).expect("subset of the ground set");
            if value(f) + value(g) <= value(meet) + value(join) {
                return false;
            }
        }
    }
    true
}

/// `(-1)^j vol(α^{r-1-j} β^j)` for `j = 0..r-1`.
pub fn reduced_char_coefficients_via_volumes(ring: &ChowRing) -> Result<Vec<BigInt>, ChowError> {
    let top = ring.top_degree();
    let (a, b) = (ring.alpha(), ring.beta());
    (0..=top)
        .map(|j| {
            let p = ring.mul(&ring.pow(&a, top - j)?, &ring.pow(&b, j)?)?;
            let v = ring.volume(&p)?;
            debug_assert!(v.is_integer());
            let v = v.to_integer();
            Ok(if j % 2 == 0 { v } else { -v })
        })
        .collect()
}

/// `vol_M(α^{r-1-j} β^j) = vol_{M'}(α^{r-2-j} β^j)` for `j ≤ r-2`, where
/// `M'` is the truncation.
pub fn truncation_volume_check(m: &Matroid) -> Result<bool, ChowError> {
    let r = m.rank();
    if r < 2 {
        return Ok(true);
    }
    let full = chow_ring(m)?;
    let trunc = chow_ring(&m.truncation()?)?;
    let vols = |ring: &ChowRing, top: usize| -> Result<Vec<BigRational>, ChowError> {
        let (a, b) = (ring.alpha(), ring.beta());
        (0..=r - 2)
            .map(|j| {
                let p = ring.mul(&ring.pow(&a, top - j)?, &ring.pow(&b, j)?)?;
                ring.volume(&p)
            })
            .collect()
    };
    Ok(vols(&full, r - 1)? == vols(&trunc, r - 2)?)
}

