//! Linear subspaces of Q^n in canonical form.
//!
//! A subspace is stored as the reduced row-echelon basis of its row span, so
//! equality of subspaces is equality of matrices and every derived subspace
//! (sum, intersection, orthogonal, kernel) is reproducible bit for bit.

use num_traits::Zero;

use crate::linalg::Matrix;
use crate::scalar::Rat;

/// Subspace of Q^n with its unique RREF basis.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subspace {
    ambient: usize,
    basis: Vec<Vec<Rat>>, // RREF rows, no zero rows
}

impl Subspace {
    /// Span of the given rows (any spanning set).
    pub fn from_rows(ambient: usize, rows: Vec<Vec<Rat>>) -> Self {
        for r in &rows {
            assert_eq!(r.len(), ambient, "row length mismatch");
        }
        let mut m = Matrix::from_rows(rows);
        let pivots = m.rref_in_place();
        let basis = m.row_vecs().into_iter().take(pivots.len()).collect();
        Subspace { ambient, basis }
    }

    pub fn zero(ambient: usize) -> Self {
        Subspace {
            ambient,
            basis: Vec::new(),
        }
    }

    pub fn full(ambient: usize) -> Self {
        Subspace::from_rows(ambient, Matrix::identity(ambient).row_vecs())
    }

    /// Span of the standard basis vectors at the given 1-based axes.
    pub fn coordinate(ambient: usize, axes: &[usize]) -> Self {
        let rows = axes
            .iter()
            .map(|&a| {
                assert!((1..=ambient).contains(&a), "axis out of range");
                let mut v = vec![Rat::zero(); ambient];
                v[a - 1] = Rat::from_integer(1.into());
                v
            })
            .collect();
        Subspace::from_rows(ambient, rows)
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Vec<Rat>] {
        &self.basis
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.basis.len() == self.ambient
    }

    pub fn contains_vector(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ambient, "vector length mismatch");
        if v.iter().all(Rat::is_zero) {
            return true;
        }
        let mut rows = self.basis.clone();
        rows.push(v.to_vec());
        Matrix::from_rows(rows).rank() == self.rank()
    }

    pub fn contains(&self, other: &Subspace) -> bool {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        other.basis.iter().all(|v| self.contains_vector(v))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        let mut rows = self.basis.clone();
        rows.extend(other.basis.iter().cloned());
        Subspace::from_rows(self.ambient, rows)
    }

    /// Intersection, via the kernel of the pairing of both bases.
    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient, "ambient mismatch");
        let (ra, rb) = (self.rank(), other.rank());
        if ra == 0 || rb == 0 {
            return Subspace::zero(self.ambient);
        }
        // columns: coefficients (a, b) with a·basis_self = b·basis_other
        let mut m = Matrix::zero(self.ambient, ra + rb);
        for (j, row) in self.basis.iter().enumerate() {
            for i in 0..self.ambient {
                m[(i, j)] = row[i].clone();
            }
        }
        for (j, row) in other.basis.iter().enumerate() {
            for i in 0..self.ambient {
                m[(i, ra + j)] = -row[i].clone();
            }
        }
        let rows = m
            .kernel_basis()
            .into_iter()
            .map(|coef| {
                let mut v = vec![Rat::zero(); self.ambient];
                for (j, row) in self.basis.iter().enumerate() {
                    if !coef[j].is_zero() {
                        for i in 0..self.ambient {
                            v[i] += &coef[j] * &row[i];
                        }
                    }
                }
                v
            })
            .collect();
        Subspace::from_rows(self.ambient, rows)
    }

    /// Coordinates of `v` in this subspace's basis, if `v` lies in it.
    pub fn coordinates_of(&self, v: &[Rat]) -> Option<Vec<Rat>> {
        if self.basis.is_empty() {
            return v.iter().all(Rat::is_zero).then(Vec::new);
        }
        let cols: Vec<Vec<Rat>> = self.basis.clone();
        let mut m = Matrix::zero(self.ambient, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..self.ambient {
                m[(i, j)] = c[i].clone();
            }
        }
        m.solve(v)
    }

    /// The pivot complement: the span of standard basis vectors at the
    /// non-pivot axes. Deterministic and always complementary.
    pub fn pivot_complement(&self) -> Subspace {
        let pivots: Vec<usize> = self
            .basis
            .iter()
            .map(|row| row.iter().position(|x| !x.is_zero()).unwrap())
            .collect();
        let axes: Vec<usize> = (0..self.ambient)
            .filter(|i| !pivots.contains(i))
            .map(|i| i + 1)
            .collect();
        Subspace::coordinate(self.ambient, &axes)
    }

    /// Inclusion map Q^rank → Q^ambient with the RREF basis as columns.
    pub fn inclusion_map(&self) -> crate::exterior::LinearMap {
        crate::exterior::LinearMap::from_columns(self.ambient, &self.basis)
    }
}

impl std::fmt::Display for Subspace {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return writeln!(f, "{{0}}");
        }
        writeln!(f, "span of {} row(s):", self.rank())?;
        for row in &self.basis {
            let parts: Vec<String> = row.iter().map(crate::scalar::format_rat).collect();
            writeln!(f, "  [{}]", parts.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn sp(n: usize, rows: &[&[i64]]) -> Subspace {
        Subspace::from_rows(
            n,
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    #[test]
    fn canonical_representative() {
        let a = sp(3, &[&[1, 1, 0], &[0, 0, 1]]);
        let b = sp(3, &[&[2, 2, 2], &[1, 1, 3]]);
        assert_eq!(a, b);
    }

    #[test]
    fn sum_and_intersection() {
        let a = sp(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0]]);
        let b = sp(4, &[&[0, 1, 0, 0], &[0, 0, 1, 0]]);
        assert_eq!(a.sum(&b), sp(4, &[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0]]));
        assert_eq!(a.intersect(&b), sp(4, &[&[0, 1, 0, 0]]));
        // intersection of skew planes
        let c = sp(4, &[&[1, 0, 1, 0], &[0, 1, 0, 1]]);
        let d = c.intersect(&a);
        assert_eq!(d, Subspace::zero(4));
    }

    #[test]
    fn containment_and_coordinates() {
        let a = sp(3, &[&[1, 2, 0], &[0, 0, 1]]);
        assert!(a.contains_vector(&[rat(2), rat(4), rat(5)]));
        assert!(!a.contains_vector(&[rat(1), rat(0), rat(0)]));
        let coords = a.coordinates_of(&[rat(2), rat(4), rat(5)]).unwrap();
        assert_eq!(coords, vec![rat(2), rat(5)]);
        assert!(a.coordinates_of(&[rat(1), rat(0), rat(0)]).is_none());
    }

    #[test]
    fn pivot_complement_is_complementary() {
        let a = sp(4, &[&[1, 3, 0, 2], &[0, 0, 1, 5]]);
        let c = a.pivot_complement();
        assert_eq!(c.rank(), 2);
        assert!(a.intersect(&c).is_zero());
        assert!(a.sum(&c).is_full());
    }
}
