//! The symmetric-invariant space of vector-valued polynomials for the
//! current superalgebra of gl(1|1), its graded components and characters,
//! and the 2^n-dimensional Weyl modules obtained by evaluating the central
//! symmetric-function values.
//!
//! The ambient space is V ⊗ C[z_1..z_n] with V = (C^{1|1})^{⊗n}. The current
//! generator e_ij[r] acts slot-by-slot with a z_s^r factor and the Koszul
//! sign, and the symmetric group acts simultaneously on variables and tensor
//! slots through graded flips. The invariant subspace is free over symmetric
//! polynomials with free generators e21[r_1]...e21[r_l] v+ over strictly
//! increasing mode tuples in 0..n; everything here leans on that freeness.

use crate::error::{Error, Result};
use crate::gaudin;
use crate::linalg;
use crate::matrix::Matrix;
use crate::multipoly::{reduce_symmetric, MultiPoly};
use crate::poly::Poly;
use crate::qseries::QSeries;
use crate::ratfunc::RatFunc;
use crate::scalar::Scalar;
use num::{One as _, Zero as _};
use std::collections::BTreeMap;
use std::sync::{Arc, Mutex};

/// Vector in V ⊗ C[z_1..z_n]: one polynomial per tensor-basis index.
pub type PolyVector = Vec<MultiPoly>;

fn tensor_dim(n: usize) -> usize {
    1 << n
}

/// Entry (1 or 2) of tensor-basis index `idx` at slot `s`.
fn entry(n: usize, idx: usize, s: usize) -> u8 {
    1 + ((idx >> (n - 1 - s)) & 1) as u8
}

fn flip_entry(n: usize, idx: usize, s: usize) -> usize {
    idx ^ (1 << (n - 1 - s))
}

/// Number of lowered (entry 2) slots strictly before slot s.
fn prefix_twos(n: usize, idx: usize, s: usize) -> u32 {
    let mut c = 0;
    for p in 0..s {
        if entry(n, idx, p) == 2 {
            c += 1;
        }
    }
    c
}

/// v+ = v_1^{⊗n} as a constant polynomial vector.
pub fn vacuum_vector(n: usize) -> PolyVector {
    let mut v = vec![MultiPoly::zero(n); tensor_dim(n)];
    v[0] = MultiPoly::one(n);
    v
}

/// The current-algebra action of e_ij[r]: multiply slot s by z_s^r, act on
/// the slot by the vector representation, and pick up the Koszul sign of
/// the odd generators.
pub fn apply_current(n: usize, i: usize, j: usize, r: u32, v: &[MultiPoly]) -> PolyVector {
    let dim = tensor_dim(n);
    let mut out = vec![MultiPoly::zero(n); dim];
    for idx in 0..dim {
        if v[idx].is_zero() {
            continue;
        }
        for s in 0..n {
            let e = entry(n, idx, s);
            let (target, mut coeff) = match (i, j, e) {
                (1, 1, 1) => (idx, Scalar::one()),
                (1, 1, 2) => continue,
                (2, 2, 1) => continue,
                (2, 2, 2) => (idx, Scalar::one()),
                (2, 1, 1) => (flip_entry(n, idx, s), Scalar::one()),
                (2, 1, 2) => continue,
                (1, 2, 2) => (flip_entry(n, idx, s), Scalar::one()),
                (1, 2, 1) => continue,
                _ => panic!("generator indices must be 1 or 2"),
            };
            if i != j && prefix_twos(n, idx, s) % 2 == 1 {
                coeff = -coeff;
            }
            let mut exps = vec![0u32; n];
            exps[s] = r;
            let term = v[idx].mul_monomial(&exps).scale(&coeff);
            out[target] = &out[target] + &term;
        }
    }
    out
}

/// e21[r_1]...e21[r_l] v+ for a strictly increasing mode tuple.
pub fn free_generator(n: usize, modes: &[usize]) -> PolyVector {
    let mut v = vacuum_vector(n);
    for &r in modes.iter().rev() {
        v = apply_current(n, 2, 1, r as u32, &v);
    }
    v
}

/// The simple transposition s_i: swap z_i and z_{i+1} and apply the graded
/// flip of tensor slots i and i+1 (sign -1 when both slots are lowered).
pub fn symmetric_flip(n: usize, i: usize, v: &[MultiPoly]) -> PolyVector {
    assert!(i + 1 < n);
    let dim = tensor_dim(n);
    let mut out = vec![MultiPoly::zero(n); dim];
    for idx in 0..dim {
        if v[idx].is_zero() {
            continue;
        }
        let (a, b) = (entry(n, idx, i), entry(n, idx, i + 1));
        let mut target = idx;
        if a != b {
            target = flip_entry(n, flip_entry(n, idx, i), i + 1);
        }
        let mut p = v[idx].swap_vars(i, i + 1);
        if a == 2 && b == 2 {
            p = -&p;
        }
        out[target] = &out[target] + &p;
    }
    out
}

pub fn is_invariant(n: usize, v: &[MultiPoly]) -> bool {
    (0..n.saturating_sub(1)).all(|i| symmetric_flip(n, i, v) == v)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Partitions of m with at most n parts, each as a weakly decreasing list.
fn partitions(m: u32, n: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    fn rec(left: u32, max: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        if slots == 0 {
            return;
        }
        for part in (1..=left.min(max)).rev() {
            cur.push(part);
            rec(left - part, part, slots - 1, cur, out);
            cur.pop();
        }
    }
    rec(m, m, n, &mut Vec::new(), &mut out);
    out
}

/// Monomial symmetric polynomial: orbit sum of z^partition.
fn monomial_symmetric(n: usize, parts: &[u32]) -> MultiPoly {
    let mut base = vec![0u32; n];
    base[..parts.len()].copy_from_slice(parts);
    let mut orbit = std::collections::BTreeSet::new();
    fn permute(v: &mut Vec<u32>, k: usize, orbit: &mut std::collections::BTreeSet<Vec<u32>>) {
        if k == 1 {
            orbit.insert(v.clone());
            return;
        }
        for i in 0..k {
            permute(v, k - 1, orbit);
            if k % 2 == 0 {
                v.swap(i, k - 1);
            } else {
                v.swap(0, k - 1);
            }
        }
    }
    permute(&mut base, n, &mut orbit);
    let mut out = MultiPoly::zero(n);
    for e in orbit {
        out = &out + &MultiPoly::monomial(n, e, Scalar::one());
    }
    out
}

fn homogeneous_degree(u: &[MultiPoly]) -> Option<u32> {
    let mut deg = None;
    for p in u {
        if let Some(d) = p.total_degree() {
            assert!(p.is_homogeneous());
            match deg {
                None => deg = Some(d),
                Some(d0) => assert_eq!(d0, d, "components of mixed degree"),
            }
        }
    }
    deg
}

/// Writes a homogeneous invariant vector of the (n-l, l) weight space as a
/// combination of the free generators with symmetric-polynomial
/// coefficients. Panics if the vector is not in the invariant span, which
/// would contradict freeness of the generating set.
fn decompose(n: usize, l: usize, u: &[MultiPoly]) -> Vec<MultiPoly> {
    let gens = combinations(n, l);
    let Some(du) = homogeneous_degree(u) else {
        return vec![MultiPoly::zero(n); gens.len()];
    };
    // Columns: (generator, monomial-symmetric multiplier) pairs of total
    // degree du.
    let mut columns: Vec<(usize, MultiPoly, PolyVector)> = Vec::new();
    for (gi, modes) in gens.iter().enumerate() {
        let dg: usize = modes.iter().sum();
        if dg as u32 > du {
            continue;
        }
        let g = free_generator(n, modes);
        for parts in partitions(du - dg as u32, n) {
            let m = monomial_symmetric(n, &parts);
            let col: PolyVector = g.iter().map(|p| p * &m).collect();
            columns.push((gi, m, col));
        }
    }
    // Row index over the joint support.
    let mut rows: BTreeMap<(usize, Vec<u32>), usize> = BTreeMap::new();
    let touch = |v: &[MultiPoly], rows: &mut BTreeMap<(usize, Vec<u32>), usize>| {
        for (idx, p) in v.iter().enumerate() {
            for (e, _) in p.terms() {
                let next = rows.len();
                rows.entry((idx, e.clone())).or_insert(next);
            }
        }
    };
    touch(u, &mut rows);
    for (_, _, col) in &columns {
        touch(col, &mut rows);
    }
    let mut mat = Matrix::zero(rows.len(), columns.len());
    for (c, (_, _, col)) in columns.iter().enumerate() {
        for (idx, p) in col.iter().enumerate() {
            for (e, v) in p.terms() {
                *mat.at_mut(rows[&(idx, e.clone())], c) = v.clone();
            }
        }
    }
    let mut rhs = vec![Scalar::zero(); rows.len()];
    for (idx, p) in u.iter().enumerate() {
        for (e, v) in p.terms() {
            rhs[rows[&(idx, e.clone())]] = v.clone();
        }
    }
    let x = linalg::solve(&mat, &rhs).expect("invariant vector outside the free-generator span");
    let mut out = vec![MultiPoly::zero(n); gens.len()];
    for (c, (gi, m, _)) in columns.iter().enumerate() {
        if !x[c].is_zero() {
            out[*gi] = &out[*gi] + &m.scale(&x[c]);
        }
    }
    out
}

/// A fixed-degree slice of the invariant subspace at weight (n-l, l).
pub struct GradedComponent {
    pub n: usize,
    pub l: usize,
    pub degree: usize,
    pub basis: Vec<PolyVector>,
}

fn desk_check(n: usize, d: usize) -> Result<()> {
    if n == 0 || n > 4 || d > 8 {
        return Err(Error::OutOfDeskRange(format!(
            "n = {n}, degree = {d}; supported range is 1 <= n <= 4, degree <= 8"
        )));
    }
    Ok(())
}

/// Basis of the degree-d slice: symmetric-monomial multiples of the free
/// generators whose total degree lands on d. Its size equals the q^d
/// coefficient of character_series(n, l, ..).
pub fn vs_component(n: usize, l: usize, d: usize) -> Result<GradedComponent> {
    desk_check(n, d)?;
    assert!(l <= n);
    let mut basis = Vec::new();
    for modes in combinations(n, l) {
        let dg: usize = modes.iter().sum();
        if dg > d {
            continue;
        }
        let g = free_generator(n, &modes);
        for parts in partitions((d - dg) as u32, n) {
            let m = monomial_symmetric(n, &parts);
            basis.push(g.iter().map(|p| p * &m).collect());
        }
    }
    Ok(GradedComponent { n, l, degree: d, basis })
}

/// Basis of the singular part of a graded slice: the kernel of e12[0].
pub fn singular_slice(c: &GradedComponent) -> Vec<PolyVector> {
    if c.basis.is_empty() {
        return Vec::new();
    }
    let images: Vec<PolyVector> = c
        .basis
        .iter()
        .map(|v| apply_current(c.n, 1, 2, 0, v))
        .collect();
    let mut rows: BTreeMap<(usize, Vec<u32>), usize> = BTreeMap::new();
    for img in &images {
        for (idx, p) in img.iter().enumerate() {
            for (e, _) in p.terms() {
                let next = rows.len();
                rows.entry((idx, e.clone())).or_insert(next);
            }
        }
    }
    let mut mat = Matrix::zero(rows.len().max(1), images.len());
    for (col, img) in images.iter().enumerate() {
        for (idx, p) in img.iter().enumerate() {
            for (e, v) in p.terms() {
                *mat.at_mut(rows[&(idx, e.clone())], col) = v.clone();
            }
        }
    }
    let mut out = Vec::new();
    for combo in linalg::kernel_basis(&mat) {
        let mut v = vec![MultiPoly::zero(c.n); tensor_dim(c.n)];
        for (coef, b) in combo.iter().zip(&c.basis) {
            if !coef.is_zero() {
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi = &*vi + &bi.scale(coef);
                }
            }
        }
        out.push(v);
    }
    out
}

/// Graded character of the (n-l, l) weight space of the invariant subspace
/// (or of its singular part), expanded through q^trunc.
pub fn character_series(n: usize, l: usize, trunc: usize, singular: bool) -> QSeries {
    assert!(l <= n && n >= 1);
    if singular && l == n {
        return QSeries::zero(trunc);
    }
    let shift = if singular {
        l * (l + 1) / 2
    } else {
        l * l.saturating_sub(1) / 2
    };
    if shift > trunc {
        return QSeries::zero(trunc);
    }
    let mut coeffs = vec![Scalar::zero(); trunc + 1];
    coeffs[shift] = Scalar::one();
    let mut s = QSeries::from_coeffs(coeffs);
    let mut denominators: Vec<usize> = Vec::new();
    if singular {
        denominators.extend(1..=l);
        denominators.extend(1..=(n - 1 - l));
        denominators.push(n);
    } else {
        denominators.extend(1..=l);
        denominators.extend(1..=(n - l));
    }
    for i in denominators {
        let mut p = vec![0i64; i + 1];
        p[0] = 1;
        p[i] = -1;
        let factor = QSeries::from_poly(&Poly::from_int_coeffs(&p), trunc);
        s = &s * &factor.inv().expect("factor has unit constant term");
    }
    s
}

/// Mode matrices of the current algebra on the free-generator basis, with
/// entries that are polynomials in the elementary symmetric values
/// (variable i stands for sigma_{i+1}). Computed once per n and shared.
pub struct WeylSymbols {
    n: usize,
    labels: Vec<Vec<usize>>,
    mats: BTreeMap<(usize, usize, u32), Vec<Vec<MultiPoly>>>,
}

impl WeylSymbols {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Mode tuples indexing the free-generator basis, ordered by length
    /// then lexicographically.
    pub fn labels(&self) -> &[Vec<usize>] {
        &self.labels
    }

    pub fn matrix(&self, i: usize, j: usize, r: u32) -> &Vec<Vec<MultiPoly>> {
        &self.mats[&(i, j, r)]
    }
}

static SYMBOL_CACHE: Mutex<BTreeMap<usize, Arc<WeylSymbols>>> = Mutex::new(BTreeMap::new());

fn sector_delta(i: usize, j: usize) -> i64 {
    match (i, j) {
        (2, 1) => 1,
        (1, 2) => -1,
        _ => 0,
    }
}

/// Builds (or fetches) the symbolic mode matrices for modes r = 0..=n.
pub fn weyl_symbols(n: usize) -> Result<Arc<WeylSymbols>> {
    desk_check(n, 0)?;
    let mut cache = SYMBOL_CACHE.lock().unwrap();
    if let Some(s) = cache.get(&n) {
        return Ok(s.clone());
    }
    let mut labels: Vec<Vec<usize>> = Vec::new();
    let mut offsets = vec![0usize; n + 2];
    for l in 0..=n {
        offsets[l] = labels.len();
        labels.extend(combinations(n, l));
    }
    offsets[n + 1] = labels.len();
    let dim = labels.len();
    let mut mats = BTreeMap::new();
    for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        for r in 0..=(n as u32) {
            let mut m = vec![vec![MultiPoly::zero(n); dim]; dim];
            for (col, modes) in labels.iter().enumerate() {
                let target = modes.len() as i64 + sector_delta(i, j);
                let u = apply_current(n, i, j, r, &free_generator(n, modes));
                if target < 0 || target > n as i64 {
                    assert!(u.iter().all(|p| p.is_zero()));
                    continue;
                }
                let lp = target as usize;
                let coeffs = decompose(n, lp, &u);
                for (t, c) in coeffs.into_iter().enumerate() {
                    if !c.is_zero() {
                        m[offsets[lp] + t][col] =
                            reduce_symmetric(&c).expect("coefficient must be symmetric");
                    }
                }
            }
            mats.insert((i, j, r), m);
        }
    }
    // The mode-n matrix is forced by the lower ones: e_ij applied through
    // the product of (t - z_s) over all slots vanishes identically, so
    // M[n] = sum_{m=1..n} (-1)^{m-1} sigma_m M[n-m]. This pins down the
    // recurrence used to extend the stored modes past n.
    for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        for row in 0..dim {
            for col in 0..dim {
                let mut acc = MultiPoly::zero(n);
                for m in 1..=n {
                    let mut term = &MultiPoly::var(n, m - 1) * &mats[&(i, j, (n - m) as u32)][row][col];
                    if m % 2 == 0 {
                        term = -&term;
                    }
                    acc = &acc + &term;
                }
                assert_eq!(
                    acc,
                    mats[&(i, j, n as u32)][row][col],
                    "mode recurrence violated at ({i},{j}) entry ({row},{col})"
                );
            }
        }
    }
    let symbols = Arc::new(WeylSymbols { n, labels, mats });
    cache.insert(n, symbols.clone());
    Ok(symbols)
}

/// A Weyl module: the quotient of the invariant subspace at fixed central
/// symmetric-function values, determined by points b_s with multiplicities
/// n_s through eta(x) = prod (x - b_s)^{n_s}.
pub struct WeylModule {
    pub nparts: Vec<usize>,
    pub points: Vec<Scalar>,
    /// Central values: sigma_i acts by a[i-1].
    pub a: Vec<Scalar>,
    pub eta: Poly,
    labels: Vec<Vec<usize>>,
    mats: BTreeMap<(usize, usize, u32), Matrix<Scalar>>,
}

pub fn weyl_module(nparts: &[usize], points: &[Scalar]) -> Result<WeylModule> {
    if nparts.len() != points.len() || nparts.is_empty() {
        return Err(Error::InvalidModel(
            "multiplicities and points must be nonempty lists of equal length".into(),
        ));
    }
    if nparts.iter().any(|&m| m == 0) {
        return Err(Error::InvalidModel("zero multiplicity".into()));
    }
    for (s, b) in points.iter().enumerate() {
        if points[..s].contains(b) {
            return Err(Error::InvalidModel(format!("repeated point {b}")));
        }
    }
    let n: usize = nparts.iter().sum();
    let symbols = weyl_symbols(n)?;
    let mut eta = Poly::one();
    for (m, b) in nparts.iter().zip(points) {
        for _ in 0..*m {
            eta = &eta * &Poly::linear(b);
        }
    }
    // eta(x) = x^n + sum (-1)^i a_i x^{n-i}.
    let a: Vec<Scalar> = (1..=n)
        .map(|i| {
            let c = eta.coeff(n - i);
            if i % 2 == 0 {
                c
            } else {
                -c
            }
        })
        .collect();
    let dim = symbols.labels().len();
    let mut mats: BTreeMap<(usize, usize, u32), Matrix<Scalar>> = BTreeMap::new();
    for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        for r in 0..=(n as u32) {
            let sym = symbols.matrix(i, j, r);
            mats.insert(
                (i, j, r),
                Matrix::from_fn(dim, dim, |row, col| sym[row][col].eval(&a)),
            );
        }
        for r in (n as u32 + 1)..=(2 * n as u32) {
            let mut m = Matrix::zero(dim, dim);
            for (p, ap) in a.iter().enumerate() {
                let term = mats[&(i, j, r - 1 - p as u32)].scalar_mul(ap);
                m = if p % 2 == 0 { &m + &term } else { &m - &term };
            }
            mats.insert((i, j, r), m);
        }
    }
    Ok(WeylModule {
        nparts: nparts.to_vec(),
        points: points.to_vec(),
        a,
        eta,
        labels: symbols.labels().to_vec(),
        mats,
    })
}

impl WeylModule {
    pub fn n(&self) -> usize {
        self.nparts.iter().sum()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Vec<usize>] {
        &self.labels
    }

    pub fn label_index(&self, modes: &[usize]) -> usize {
        self.labels
            .iter()
            .position(|l| l == modes)
            .expect("unknown mode tuple")
    }

    /// Basis indices of the weight-(n-l, l) sector.
    pub fn sector_indices(&self, l: usize) -> Vec<usize> {
        (0..self.dim()).filter(|&i| self.labels[i].len() == l).collect()
    }

    /// Matrix of e_ij[r] on the reduced free-generator basis, r <= 2n.
    pub fn generator(&self, i: usize, j: usize, r: u32) -> &Matrix<Scalar> {
        self.mats
            .get(&(i, j, r))
            .expect("mode out of the stored range 0..=2n")
    }

    pub fn vacuum(&self) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[0] = Scalar::one();
        v
    }

    /// Generating series e_ij(x) as a rational matrix: eta(x) e_ij(x) is a
    /// polynomial of degree < n whose coefficients are combinations of the
    /// stored modes.
    pub fn series_matrix(&self, i: usize, j: usize) -> Matrix<RatFunc> {
        let n = self.n();
        let dim = self.dim();
        let mut coeff_mats: Vec<Matrix<Scalar>> = Vec::with_capacity(n);
        for d in 0..n {
            // Coefficient of x^d in eta(x) e_ij(x).
            let mut m = Matrix::zero(dim, dim);
            for p in 0..=(n - 1 - d) {
                let k = n - 1 - d - p;
                let c = if k == 0 { Scalar::one() } else { self.a[k - 1].clone() };
                let term = self.generator(i, j, p as u32).scalar_mul(&c);
                m = if k % 2 == 0 { &m + &term } else { &m - &term };
            }
            coeff_mats.push(m);
        }
        Matrix::from_fn(dim, dim, |r, c| {
            let coeffs: Vec<Scalar> = (0..n).map(|d| coeff_mats[d].at(r, c).clone()).collect();
            RatFunc::new(Poly::new(coeffs), self.eta.clone())
        })
    }

    /// Basis of singular vectors (kernel of e12[0]) in the sector l, as
    /// full-length coordinate vectors.
    pub fn singular_weight_basis(&self, l: usize) -> Vec<Vec<Scalar>> {
        let idxs = self.sector_indices(l);
        if idxs.is_empty() {
            return Vec::new();
        }
        let e12 = self.generator(1, 2, 0);
        let m = Matrix::from_fn(self.dim(), idxs.len(), |r, c| e12.at(r, idxs[c]).clone());
        linalg::kernel_basis(&m)
            .into_iter()
            .map(|combo| {
                let mut v = vec![Scalar::zero(); self.dim()];
                for (coef, &i) in combo.iter().zip(&idxs) {
                    v[i] = coef.clone();
                }
                v
            })
            .collect()
    }

    /// The canonical cyclic-vector candidate of the singular sector l:
    /// e12[0] e21[0] e21[1] ... e21[l] applied to the reduced vacuum.
    pub fn cyclic_candidate(&self, l: usize) -> Vec<Scalar> {
        assert!(l < self.n());
        let mut v = self.vacuum();
        for r in (0..=l as u32).rev() {
            v = self.generator(2, 1, r).apply(&v);
        }
        self.generator(1, 2, 0).apply(&v)
    }

    /// zeta(x) = eta'/eta = sum n_s/(x - b_s): the scalar by which the
    /// central series e11(x) + e22(x) acts.
    pub fn zeta(&self) -> RatFunc {
        RatFunc::new(self.eta.derivative(), self.eta.clone())
    }

    /// The polynomial whose monic divisors enumerate the transfer-matrix
    /// spectrum on the singular sectors: zeta * eta = eta'.
    pub fn master_poly(&self) -> Poly {
        self.eta.derivative()
    }

    /// Transfer-matrix eigenvalue attached to a monic divisor y of the
    /// master polynomial: zeta'/2 - zeta y'/y + zeta^2/2.
    pub fn eigenvalue_h(&self, y: &Poly) -> RatFunc {
        let zeta = self.zeta();
        let half = RatFunc::constant(Scalar::from_ratio(1, 2));
        let log_dy = RatFunc::new(y.derivative(), y.clone());
        &(&zeta.derivative().scale(&Scalar::from_ratio(1, 2)) - &(&zeta * &log_dy))
            + &(&zeta * &zeta) * &half
    }
}

/// Reads off the distinguished commuting generators: C_i are the scalars by
/// which the degree-i central elements act (the sigma values), and B_i for
/// i = 2..=n are the x^{n-i} coefficients of eta(x) T(x) with T the second
/// transfer matrix. Fails if eta T has a nonvanishing tail, i.e. some B_i
/// with i > n acts nonzero, which would mean broken action matrices.
pub fn extract_bc(m: &WeylModule) -> Result<(Vec<Matrix<Scalar>>, Vec<Scalar>)> {
    let n = m.n();
    let dim = m.dim();
    let t = gaudin::transfer_t_from(
        &m.series_matrix(1, 1),
        &m.series_matrix(1, 2),
        &m.series_matrix(2, 1),
        &m.series_matrix(2, 2),
    );
    let eta_rf = RatFunc::from_poly(m.eta.clone());
    let mut entry_polys: Vec<Poly> = Vec::with_capacity(dim * dim);
    for r in 0..dim {
        for c in 0..dim {
            let q = t.at(r, c) * &eta_rf;
            match q.as_poly() {
                Some(p) => {
                    assert!(
                        p.is_zero() || p.deg() + 2 <= n,
                        "unexpected positive-order term in eta * T"
                    );
                    entry_polys.push(p.clone());
                }
                None => {
                    // The proper part expands as x^{n-i} terms with i > n;
                    // report the first one.
                    let (_, rem) = q.num().div_rem(q.den());
                    let lead = q.den().deg() - rem.deg();
                    return Err(Error::TailNotVanishing(n + lead));
                }
            }
        }
    }
    let bs: Vec<Matrix<Scalar>> = (2..=n)
        .map(|i| Matrix::from_fn(dim, dim, |r, c| entry_polys[r * dim + c].coeff(n - i)))
        .collect();
    Ok((bs, m.a.clone()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bethe;
    use crate::model::ModelSpec;
    use crate::model::Weight;
    use crate::repr::build_tensor_module;
    use crate::scalar::Field;

    fn sc(v: i64) -> Scalar {
        Scalar::from_int(v)
    }

    #[test]
    fn free_generators_are_invariant() {
        for n in 1..=3 {
            for l in 0..=n {
                for modes in combinations(n, l) {
                    assert!(is_invariant(n, &free_generator(n, &modes)));
                }
            }
        }
    }

    #[test]
    fn free_generator_count_is_binomial() {
        assert_eq!(combinations(2, 1).len(), 2);
        assert_eq!(combinations(4, 2).len(), 6);
    }

    #[test]
    fn character_worked_expansions() {
        // Singular (n-1, 1) sector of the pair: q + q^2 + 2q^3 + 2q^4.
        let s = character_series(2, 1, 4, true);
        assert_eq!(s, QSeries::from_int_coeffs(&[0, 1, 1, 2, 2]));
        // Plain (2, 1) sector of the triple: 1 + 2q + 4q^2 + 6q^3.
        let p = character_series(3, 1, 3, false);
        assert_eq!(p, QSeries::from_int_coeffs(&[1, 2, 4, 6]));
        // The l = 0 character starts with constant term 1.
        for n in 1..=4 {
            assert_eq!(character_series(n, 0, 0, false).coeff(0), &Scalar::one());
        }
    }

    #[test]
    fn graded_slices_match_characters() {
        for n in 1..=3usize {
            for l in 0..=n {
                let ch = character_series(n, l, 4, false);
                for d in 0..=4usize {
                    let c = vs_component(n, l, d).unwrap();
                    assert_eq!(
                        Scalar::from_int(c.basis.len() as i64),
                        ch.coeff(d).clone(),
                        "n={n} l={l} d={d}"
                    );
                    for v in &c.basis {
                        assert!(is_invariant(n, v));
                    }
                }
            }
        }
    }

    #[test]
    fn singular_slices_match_characters() {
        for n in 2..=3usize {
            for l in 0..n {
                let ch = character_series(n, l, 3, true);
                for d in 0..=3usize {
                    let c = vs_component(n, l, d).unwrap();
                    let sing = singular_slice(&c);
                    assert_eq!(
                        Scalar::from_int(sing.len() as i64),
                        ch.coeff(d).clone(),
                        "n={n} l={l} d={d}"
                    );
                }
            }
        }
    }

    #[test]
    fn singular_pair_degree_one_vector() {
        // The unique singular vector at n=2, l=1, degree 1 is
        // e12[0] e21[0] e21[1] v+.
        let c = vs_component(2, 1, 1).unwrap();
        let sing = singular_slice(&c);
        assert_eq!(sing.len(), 1);
        let mut u = vacuum_vector(2);
        for r in [1u32, 0] {
            u = apply_current(2, 2, 1, r, &u);
        }
        u = apply_current(2, 1, 2, 0, &u);
        assert!(!u.iter().all(|p| p.is_zero()));
        // Proportionality: u = c * sing[0] for some scalar.
        let (i0, e0, v0) = sing[0]
            .iter()
            .enumerate()
            .flat_map(|(i, p)| p.terms().map(move |(e, v)| (i, e.clone(), v.clone())))
            .next()
            .unwrap();
        let ratio = {
            let mut found = None;
            for (e, v) in u[i0].terms() {
                if *e == e0 {
                    found = Some(v / &v0);
                }
            }
            found.unwrap()
        };
        for (a, b) in u.iter().zip(&sing[0]) {
            assert_eq!(*a, b.scale(&ratio));
        }
    }

    #[test]
    fn desk_range_enforced() {
        assert!(matches!(
            vs_component(5, 1, 0),
            Err(Error::OutOfDeskRange(_))
        ));
        assert!(matches!(
            vs_component(2, 1, 9),
            Err(Error::OutOfDeskRange(_))
        ));
    }

    #[test]
    fn weyl_module_dimension_and_central_values() {
        let m = weyl_module(&[2, 1], &[sc(0), sc(1)]).unwrap();
        assert_eq!(m.dim(), 8);
        assert_eq!(m.n(), 3);
        // eta = x^2 (x - 1) = x^3 - x^2, so a = (1, 0, 0).
        assert_eq!(m.a, vec![sc(1), sc(0), sc(0)]);
    }

    #[test]
    fn highest_vector_relations() {
        for (nparts, pts) in [
            (vec![1usize, 1], vec![sc(0), sc(3)]),
            (vec![2], vec![sc(0)]),
            (vec![2, 1], vec![sc(0), sc(1)]),
        ] {
            let m = weyl_module(&nparts, &pts).unwrap();
            let n = m.n();
            let vac = m.vacuum();
            let zero = vec![Scalar::zero(); m.dim()];
            for r in 0..=(2 * n as u32) {
                // e22 and e12 kill the highest vector; e11[r] scales it by
                // the power sum of the points with multiplicity.
                assert_eq!(m.generator(2, 2, r).apply(&vac), zero);
                assert_eq!(m.generator(1, 2, r).apply(&vac), zero);
                let mut p = Scalar::zero();
                for (mult, b) in nparts.iter().zip(&pts) {
                    p += &(&Scalar::from_int(*mult as i64) * &b.pow(r));
                }
                let mut want = zero.clone();
                want[0] = p;
                assert_eq!(m.generator(1, 1, r).apply(&vac), want);
            }
            // (e21 tensored with eta) kills the highest vector.
            let mut img = vec![Scalar::zero(); m.dim()];
            for i in 0..=n {
                let gi = m.eta.coeff(i);
                if gi.is_zero() {
                    continue;
                }
                let term = m.generator(2, 1, i as u32).apply(&vac);
                for (acc, t) in img.iter_mut().zip(term) {
                    *acc += &(&gi * &t);
                }
            }
            assert_eq!(img, zero);
        }
    }

    #[test]
    fn distinct_points_match_tensor_construction() {
        // With simple points the module is the tensor product of evaluation
        // modules; matching bases via e21-mode words of the tensor vacuum.
        let m = weyl_module(&[1, 1], &[sc(0), sc(3)]).unwrap();
        let spec = ModelSpec::new(
            Field::Q,
            vec![Weight::from_ints(1, 0), Weight::from_ints(1, 0)],
            vec![sc(0), sc(3)],
        )
        .unwrap();
        let t = build_tensor_module(&spec).unwrap();
        // Columns of the intertwiner: images of the free-generator words.
        let mut cols: Vec<Vec<Scalar>> = Vec::new();
        for modes in m.labels() {
            let mut v = t.vacuum();
            for &r in modes.iter().rev() {
                v = t.generator_matrix(2, 1, r as u32).apply(&v);
            }
            cols.push(v);
        }
        let inter = Matrix::from_fn(t.dim(), m.dim(), |r, c| cols[c][r].clone());
        assert_eq!(linalg::rank(&inter), m.dim());
        for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            for r in 0..=(2 * m.n() as u32) {
                let lhs = &t.generator_matrix(i, j, r) * &inter;
                let rhs = &inter * m.generator(i, j, r);
                assert_eq!(lhs, rhs, "generator ({i},{j})[{r}]");
            }
        }
    }

    #[test]
    fn double_point_is_tensor_square_for_zero_modes() {
        // At a doubled point the module still matches the tensor square of
        // the vector representation once the current action is forgotten.
        let m = weyl_module(&[2], &[sc(0)]).unwrap();
        assert_eq!(m.dim(), 4);
        let spec = ModelSpec::new(
            Field::Q,
            vec![Weight::from_ints(1, 0), Weight::from_ints(1, 0)],
            vec![sc(0), sc(1)],
        )
        .unwrap();
        let t = build_tensor_module(&spec).unwrap();
        // Solve for an intertwiner of the four zero-mode matrices and check
        // that an invertible one exists.
        let dim = 4usize;
        let mut rows: Vec<Vec<Scalar>> = Vec::new();
        for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
            let a = t.generator_matrix(i, j, 0);
            let b = m.generator(i, j, 0);
            // Constraint A X - X B = 0, unrolled over entries of X.
            for r in 0..dim {
                for c in 0..dim {
                    let mut row = vec![Scalar::zero(); dim * dim];
                    for k in 0..dim {
                        row[k * dim + c] += a.at(r, k);
                        row[r * dim + k] -= b.at(k, c);
                    }
                    rows.push(row);
                }
            }
        }
        let sys = Matrix::from_rows(rows);
        let sols = linalg::kernel_basis(&sys);
        assert!(!sols.is_empty());
        // A generic combination of the solution space is invertible; scan
        // small deterministic coefficient vectors.
        let mut state: u64 = 0x243f6a8885a308d3;
        let invertible = (0..64).any(|_| {
            let combo: Vec<Scalar> = sols
                .iter()
                .map(|_| {
                    state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                    Scalar::from_int(((state >> 33) % 7) as i64 - 3)
                })
                .collect();
            let xm = Matrix::from_fn(dim, dim, |r, c| {
                let mut acc = Scalar::zero();
                for (coef, x) in combo.iter().zip(&sols) {
                    acc += &(coef * &x[r * dim + c]);
                }
                acc
            });
            !linalg::determinant(&xm).is_zero()
        });
        assert!(invertible);
    }

    #[test]
    fn central_series_acts_by_zeta() {
        for (nparts, pts) in [
            (vec![2usize, 1], vec![sc(0), sc(1)]),
            (vec![1, 1], vec![sc(0), sc(3)]),
        ] {
            let m = weyl_module(&nparts, &pts).unwrap();
            let g1 = &m.series_matrix(1, 1) + &m.series_matrix(2, 2);
            assert_eq!(g1.is_scalar_multiple_of_identity(), Some(m.zeta()));
        }
    }

    #[test]
    fn extract_bc_values() {
        let m = weyl_module(&[2, 1], &[sc(0), sc(1)]).unwrap();
        let (bs, cs) = extract_bc(&m).unwrap();
        let n = m.n();
        assert_eq!(cs, m.a);
        assert_eq!(bs.len(), n - 1);
        // B2 acts by n*l on the singular part of each sector.
        for l in 0..n {
            for v in m.singular_weight_basis(l) {
                let want: Vec<Scalar> = v
                    .iter()
                    .map(|c| c * &Scalar::from_int((n * l) as i64))
                    .collect();
                assert_eq!(bs[0].apply(&v), want, "l = {l}");
            }
        }
        // Alternative zero-mode form of B2.
        let alt = &(&(m.generator(1, 1, 0) + m.generator(2, 2, 0)) * m.generator(2, 2, 0))
            - &(m.generator(2, 1, 0) * m.generator(1, 2, 0));
        assert_eq!(bs[0], alt);
    }

    #[test]
    fn master_polynomial_and_divisor_count() {
        // Doubled zero plus a simple one: eta = x^2(x-1), master polynomial
        // x(3x - 2), four monic divisors in total.
        let m = weyl_module(&[2, 1], &[sc(0), sc(1)]).unwrap();
        let psi = m.master_poly();
        assert_eq!(psi, Poly::from_int_coeffs(&[0, -2, 3]));
        let mut total = 0;
        for l in 0..=2usize {
            total += bethe::divisors_of(&psi, Field::Q, l).unwrap().len();
        }
        assert_eq!(total, 4);
    }

    #[test]
    fn cyclic_candidate_is_singular_and_nonzero() {
        let m = weyl_module(&[2, 1], &[sc(0), sc(1)]).unwrap();
        for l in 0..m.n() {
            let u = m.cyclic_candidate(l);
            assert!(u.iter().any(|c| !c.is_zero()), "l = {l}");
            let img = m.generator(1, 2, 0).apply(&u);
            assert!(img.iter().all(|c| c.is_zero()));
            assert!(u
                .iter()
                .enumerate()
                .all(|(i, c)| c.is_zero() || m.labels()[i].len() == l));
        }
    }
}
