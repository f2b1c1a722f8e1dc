//! Finite-dimensional Lie algebras given by structure constants.

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Q;

/// Structure constants `[x_i, x_j] = Σ_k c[i][j][k] x_k`, stored antisymmetrically.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LieAlgebraSpec {
    dim: usize,
    consts: Vec<Vec<Vec<Q>>>,
    abelian: bool,
}

impl LieAlgebraSpec {
    pub fn abelian(dim: usize) -> Self {
        LieAlgebraSpec { dim, consts: vec![vec![vec![Q::zero(); dim]; dim]; dim], abelian: true }
    }

    /// Builds from entries `(i, j, k, c)` meaning `[x_i, x_j]` has `c` at `x_k`, for `i < j`.
    /// The opposite bracket is filled in by antisymmetry and the Jacobi identity is verified.
    pub fn new(dim: usize, entries: impl IntoIterator<Item = (usize, usize, usize, Q)>) -> Result<Self> {
        let mut consts = vec![vec![vec![Q::zero(); dim]; dim]; dim];
        for (i, j, k, c) in entries {
            for idx in [i, j, k] {
                if idx >= dim {
                    return Err(Error::UnknownGenerator(idx));
                }
            }
            if i == j {
                if !c.is_zero() {
                    return Err(Error::InvalidHopf(format!("[d{0}, d{0}] must vanish", i + 1)));
                }
                continue;
            }
            let (a, b, s) = if i < j { (i, j, c) } else { (j, i, -c) };
            consts[a][b][k] += s.clone();
            consts[b][a][k] -= s;
        }
        let abelian = consts.iter().flatten().flatten().all(Zero::is_zero);
        let lie = LieAlgebraSpec { dim, consts, abelian };
        lie.check_jacobi()?;
        Ok(lie)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_abelian(&self) -> bool {
        self.abelian
    }

    /// Coefficients of `[x_i, x_j]`.
    pub fn bracket(&self, i: usize, j: usize) -> &[Q] {
        &self.consts[i][j]
    }

    /// Bracket of two vectors in the coordinate basis.
    pub fn bracket_vec(&self, a: &[Q], b: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); self.dim];
        for (i, ai) in a.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
            for (j, bj) in b.iter().enumerate().filter(|(_, x)| !x.is_zero()) {
                for (k, c) in self.consts[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += ai * bj * c;
                    }
                }
            }
        }
        out
    }

    fn check_jacobi(&self) -> Result<()> {
        let n = self.dim;
        let unit = |i: usize| {
            let mut v = vec![Q::zero(); n];
            v[i] = Q::from_integer(1.into());
            v
        };
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let (x, y, z) = (unit(i), unit(j), unit(k));
                    let t1 = self.bracket_vec(&self.bracket_vec(&x, &y), &z);
                    let t2 = self.bracket_vec(&self.bracket_vec(&y, &z), &x);
                    let t3 = self.bracket_vec(&self.bracket_vec(&z, &x), &y);
                    if t1.iter().zip(&t2).zip(&t3).any(|((a, b), c)| !(a + b + c).is_zero()) {
                        return Err(Error::InvalidHopf(format!(
                            "Jacobi identity fails on (d{}, d{}, d{})",
                            i + 1,
                            j + 1,
                            k + 1
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}
