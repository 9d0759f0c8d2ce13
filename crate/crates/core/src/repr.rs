//! Tensor products of two-dimensional evaluation modules and the exact
//! matrix action of the current-algebra generators on them.
//!
//! Basis labels are tuples in {1,2}^k in lexicographic order; entry 1 in
//! slot s is the highest vector of the s-th factor, entry 2 the lowered
//! (odd) vector. Odd generators pick up the sign of the slots they move
//! past.

use crate::error::Result;
use crate::matrix::Matrix;
use crate::model::ModelSpec;
use crate::ratfunc::RatFunc;
use crate::scalar::Scalar;
use num::{One as _, Zero as _};

#[derive(Debug, Clone)]
pub struct TensorModule {
    pub spec: ModelSpec,
    labels: Vec<Vec<u8>>,
}

/// Builds the 2^k-dimensional module of a model; rejects invalid models.
pub fn build_tensor_module(spec: &ModelSpec) -> Result<TensorModule> {
    spec.validate()?;
    let k = spec.k();
    let dim = 1usize << k;
    let mut labels = Vec::with_capacity(dim);
    for idx in 0..dim {
        let label: Vec<u8> = (0..k)
            .map(|s| 1 + ((idx >> (k - 1 - s)) & 1) as u8)
            .collect();
        labels.push(label);
    }
    Ok(TensorModule {
        spec: spec.clone(),
        labels,
    })
}

impl TensorModule {
    pub fn k(&self) -> usize {
        self.spec.k()
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[Vec<u8>] {
        &self.labels
    }

    pub fn label_index(&self, label: &[u8]) -> usize {
        let k = self.k();
        label
            .iter()
            .enumerate()
            .map(|(s, &e)| ((e - 1) as usize) << (k - 1 - s))
            .sum()
    }

    /// Parity of a basis vector: number of lowered slots mod 2.
    pub fn parity(&self, idx: usize) -> u8 {
        (self.lowered_count(idx) % 2) as u8
    }

    /// Number of 2-entries in the label.
    pub fn lowered_count(&self, idx: usize) -> usize {
        self.labels[idx].iter().filter(|&&e| e == 2).count()
    }

    /// The gl(1|1) weight of a basis vector under (e11[0], e22[0]).
    pub fn label_weight(&self, idx: usize) -> (Scalar, Scalar) {
        let mut w1 = Scalar::zero();
        let mut w2 = Scalar::zero();
        for (s, &e) in self.labels[idx].iter().enumerate() {
            let w = &self.spec.weights[s];
            if e == 1 {
                w1 += &w.alpha;
                w2 += &w.beta;
            } else {
                w1 += &(&w.alpha - &Scalar::one());
                w2 += &(&w.beta + &Scalar::one());
            }
        }
        (w1, w2)
    }

    /// Indices of basis vectors with exactly l lowered slots; this is the
    /// weight-(n-l, l) subspace when all beta vanish.
    pub fn sector_indices(&self, l: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| self.lowered_count(i) == l)
            .collect()
    }

    /// Matrix of e_ij acting in slot s only, signs included.
    pub fn slot_matrix(&self, i: usize, j: usize, s: usize) -> Matrix<Scalar> {
        assert!((1..=2).contains(&i) && (1..=2).contains(&j), "index out of range");
        let dim = self.dim();
        let w = &self.spec.weights[s];
        let mut m = Matrix::zero(dim, dim);
        for (src, label) in self.labels.iter().enumerate() {
            let entry = label[s];
            let (mut coeff, new_entry) = match (i, j, entry) {
                (1, 1, 1) => (w.alpha.clone(), 1),
                (1, 1, 2) => (&w.alpha - &Scalar::one(), 2),
                (2, 2, 1) => (w.beta.clone(), 1),
                (2, 2, 2) => (&w.beta + &Scalar::one(), 2),
                (2, 1, 1) => (Scalar::one(), 2),
                (1, 2, 2) => (w.sum(), 1),
                _ => continue,
            };
            if coeff.is_zero() {
                continue;
            }
            if i != j {
                let prefix_odd = label[..s].iter().filter(|&&e| e == 2).count();
                if prefix_odd % 2 == 1 {
                    coeff = -coeff;
                }
            }
            let mut nl = label.clone();
            nl[s] = new_entry;
            let tgt = self.label_index(&nl);
            let v = m.at(tgt, src) + &coeff;
            *m.at_mut(tgt, src) = v;
        }
        m
    }

    /// Matrix of e_ij[r] = sum over slots of b_s^r times the slot action.
    pub fn generator_matrix(&self, i: usize, j: usize, r: u32) -> Matrix<Scalar> {
        let mut m = Matrix::zero(self.dim(), self.dim());
        for s in 0..self.k() {
            let c = self.spec.points[s].pow(r);
            if c.is_zero() {
                continue;
            }
            m = &m + &self.slot_matrix(i, j, s).scalar_mul(&c);
        }
        m
    }

    /// Matrix of the generating series e_ij(x) = sum over slots of the slot
    /// action divided by (x - b_s); entries have only simple poles at the b_s.
    pub fn series_matrix(&self, i: usize, j: usize) -> Matrix<RatFunc> {
        let mut m = Matrix::zero(self.dim(), self.dim());
        for s in 0..self.k() {
            let pole = RatFunc::simple_pole(&Scalar::one(), &self.spec.points[s]);
            let slot = self.slot_matrix(i, j, s).to_ratfunc().scalar_mul(&pole);
            m = &m + &slot;
        }
        m
    }

    /// Basis of the singular vectors (kernel of e12[0]) with exactly l
    /// lowered slots, as full-dimension coordinate vectors.
    pub fn singular_weight_basis(&self, l: usize) -> Vec<Vec<Scalar>> {
        let sector = self.sector_indices(l);
        if sector.is_empty() {
            return Vec::new();
        }
        let raise = self.generator_matrix(1, 2, 0);
        // Columns restricted to the sector; the image lives in sector l-1
        // but we keep all rows.
        let restricted = Matrix::from_fn(self.dim(), sector.len(), |r, c| {
            raise.at(r, sector[c]).clone()
        });
        crate::linalg::kernel_basis(&restricted)
            .into_iter()
            .map(|coords| {
                let mut v = vec![Scalar::zero(); self.dim()];
                for (c, &idx) in sector.iter().enumerate() {
                    v[idx] = coords[c].clone();
                }
                v
            })
            .collect()
    }

    /// The vacuum: every slot highest.
    pub fn vacuum(&self) -> Vec<Scalar> {
        let mut v = vec![Scalar::zero(); self.dim()];
        v[0] = Scalar::one();
        v
    }
}
