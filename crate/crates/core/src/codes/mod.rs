//! Lattice codes in `Z^n` (the image of `A_n` after dropping coordinate 0)
//! built from difference sets and B_h sets, plus the explicit families of
//! perfect codes and tilings in dimensions 1 and 2.

mod decode;
mod finite;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use crate::algebra::{
    quotient_group, smith_normal_form, AbelianGroup, GroupElement, GroupHom, IntegerMatrix,
    RationalMatrix,
};
use crate::error::{Error, Result};
use crate::sets::{translate_to_zero, DifferenceSet};

pub use decode::{decode_radius_r, Code, Decoded, SyndromeTable};
pub use finite::FiniteCode;

/// Where a lattice came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "kebab-case")]
pub enum Source {
    /// Kernel of `x -> sum x_i (d_i - d_0)` for the listed elements, in order.
    Set {
        group: Vec<u64>,
        elements: Vec<Vec<u64>>,
    },
    Family {
        family: String,
        r: u32,
    },
    /// A user-supplied basis.
    Basis,
}

/// A full-rank sublattice `L` of `Z^n` with its syndrome map `Z^n -> Z^n / L`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeCode {
    basis: IntegerMatrix,
    det_abs: u64,
    hom: GroupHom,
    source: Source,
}

impl LatticeCode {
    /// Lattice spanned by the rows of `basis`; the syndrome map comes from its Smith form.
    pub fn from_basis(basis: IntegerMatrix, source: Source) -> Result<Self> {
        let n = basis.cols();
        if basis.rows() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: basis.rows(),
            });
        }
        let (group, hom) = quotient_group(&basis, n)?;
        Ok(LatticeCode {
            basis,
            det_abs: group.order(),
            hom,
            source,
        })
    }

    /// Ambient dimension.
    pub fn n(&self) -> usize {
        self.basis.cols()
    }

    pub fn basis(&self) -> &IntegerMatrix {
        &self.basis
    }

    /// Canonical (lower Hermite) basis; equal lattices give equal matrices.
    pub fn hermite(&self) -> IntegerMatrix {
        self.basis.hermite_lower()
    }

    /// Index of `L` in `Z^n`.
    pub fn det_abs(&self) -> u64 {
        self.det_abs
    }

    pub fn quotient(&self) -> &AbelianGroup {
        self.hom.group()
    }

    pub fn syndrome_map(&self) -> &GroupHom {
        &self.hom
    }

    pub fn source(&self) -> &Source {
        &self.source
    }

    pub fn with_source(mut self, source: Source) -> Self {
        self.source = source;
        self
    }

    pub fn syndrome(&self, x: &[i64]) -> Result<GroupElement> {
        self.hom.apply(x)
    }

    pub fn contains(&self, x: &[i64]) -> Result<bool> {
        Ok(self.syndrome(x)? == self.quotient().zero())
    }

    /// Basis rows lifted to `A_n` by prepending `x_0 = -sum x_i`.
    pub fn an_basis(&self) -> Vec<Vec<BigInt>> {
        self.basis
            .to_rows()
            .into_iter()
            .map(|row| {
                let s: BigInt = row.iter().sum();
                std::iter::once(-s).chain(row).collect()
            })
            .collect()
    }

    /// The syndrome images as integers when the quotient is cyclic (the parity row).
    pub fn parity_row(&self) -> Option<Vec<u64>> {
        let g = self.quotient();
        g.is_cyclic()
            .then(|| self.hom.images().iter().map(|e| g.index_of(e)).collect())
    }

    fn random_combination(&self, rng: &mut dyn RngCore) -> Vec<i64> {
        let n = self.n();
        let mut x = vec![BigInt::zero(); n];
        for row in self.basis.to_rows() {
            let c = BigInt::from(rng.random_range(-3i64..=3));
            for (xi, b) in x.iter_mut().zip(&row) {
                *xi += &c * b;
            }
        }
        x.iter().map(|v| v.to_i64().unwrap_or(0)).collect()
    }
}

/// Lattice of `x` with `sum x_i (d_i - d_0) = 0`, coordinates in the given
/// order (`d_0` is dropped). Errors when the differences do not generate `group`.
pub fn lattice_from_ordered(group: &AbelianGroup, elements: &[GroupElement]) -> Result<LatticeCode> {
    if elements.len() < 2 {
        return Err(Error::InvalidParameter("need at least two elements".into()));
    }
    let d0 = &elements[0];
    let images = elements[1..]
        .iter()
        .map(|d| group.sub(d, d0))
        .collect::<Result<Vec<_>>>()?;
    let kernel = kernel_basis(group, &images)?;
    let det = kernel.determinant()?.abs();
    if det != BigInt::from(group.order()) {
        return Err(Error::NotGenerating {
            generated: det.to_string(),
            order: group.order(),
        });
    }
    let hom = GroupHom::new(group.clone(), images)?;
    Ok(LatticeCode {
        basis: kernel.hermite_lower(),
        det_abs: group.order(),
        hom,
        source: Source::Set {
            group: group.invariant_factors().to_vec(),
            elements: elements.iter().map(|e| e.0.clone()).collect(),
        },
    })
}

/// As [`lattice_from_ordered`] after sorting ascending and translating the minimum to 0.
pub fn lattice_from_set(group: &AbelianGroup, elements: &[GroupElement]) -> Result<LatticeCode> {
    let mut seen = std::collections::HashSet::new();
    for e in elements {
        if !seen.insert(group.index_of(e)) {
            return Err(Error::DuplicateElement(e.0.clone()));
        }
    }
    let normalized = translate_to_zero(group, elements.to_vec())?;
    lattice_from_ordered(group, &normalized)
}

/// Kernel of `Z^n -> G`, `x -> sum x_i g_i`: the left null space of
/// `[A; diag(m)]` (with `A` the coordinate matrix of the images), projected onto `x`.
fn kernel_basis(group: &AbelianGroup, images: &[GroupElement]) -> Result<IntegerMatrix> {
    let n = images.len();
    let factors = group.invariant_factors();
    let s = factors.len();
    if s == 0 {
        return Ok(IntegerMatrix::identity(n));
    }
    let mut rows: Vec<Vec<BigInt>> = images
        .iter()
        .map(|g| g.0.iter().map(|&c| BigInt::from(c)).collect())
        .collect();
    for (c, &m) in factors.iter().enumerate() {
        let mut row = vec![BigInt::zero(); s];
        row[c] = BigInt::from(m);
        rows.push(row);
    }
    let relation = IntegerMatrix::from_rows(&rows)?;
    let snf = smith_normal_form(&relation);
    let rank = snf.rank();
    if rank != s {
        return Err(Error::RankDeficient);
    }
    let kernel: Vec<Vec<BigInt>> = (rank..n + s)
        .map(|i| snf.left.row(i)[..n].to_vec())
        .collect();
    IntegerMatrix::from_rows(&kernel)
}

/// The displayed generator matrix for a normalized cyclic difference set:
/// first row `(v, 0, ..., 0)`, then `(-d_i, 0, ..., 1, ..., 0)` for `i >= 2`.
pub fn generator_matrix_cyclic(set: &DifferenceSet) -> Result<IntegerMatrix> {
    let values = set.cyclic_values().ok_or(Error::NotCyclic)?;
    check_normalized(&values)?;
    let v = set.group().order() as i64;
    let n = values.len() - 1;
    let mut rows = vec![vec![0i64; n]; n];
    rows[0][0] = v;
    for i in 1..n {
        rows[i][0] = -(values[i + 1] as i64);
        rows[i][i] = 1;
    }
    IntegerMatrix::from_rows(&rows)
}

pub(crate) fn check_normalized(values: &[u64]) -> Result<()> {
    if values.len() < 2 || values[0] != 0 || values[1] != 1 {
        return Err(Error::NotNormalized(format!(
            "expected a sorted set starting 0, 1; got {values:?}"
        )));
    }
    Ok(())
}

/// Generator matrix of the dual lattice, `B^{-T}`.
pub fn dual_basis(basis: &IntegerMatrix) -> Result<RationalMatrix> {
    Ok(basis.inverse()?.transpose())
}

/// `(2r+1) Z`: the `r`-perfect code in `A_1`.
pub fn perfect_code_a1(r: u32) -> Result<LatticeCode> {
    let basis = IntegerMatrix::from_rows(&[vec![2 * r as i64 + 1]])?;
    LatticeCode::from_basis(basis, family("perfect-a1", r))
}

/// The `r`-perfect code in `A_2`, rows `(r, r+1)` and `(2r+1, -r)`.
///
/// In `A_2` coordinates these are `(-2r-1, r, r+1)` and `(-r-1, 2r+1, -r)`.
/// The sign of the last entry of the second vector is forced: with `+r` the
/// coordinates would not sum to zero and the index would be `r^2+3r+1`
/// instead of the ball size `3r^2+3r+1`.
pub fn perfect_code_a2(r: u32) -> Result<LatticeCode> {
    let r = r as i64;
    let basis = IntegerMatrix::from_rows(&[vec![r, r + 1], vec![2 * r + 1, -r]])?;
    LatticeCode::from_basis(basis, family("perfect-a2", r as u32))
}

/// Rows `(r+1, r+1)` and `(0, 3r+3)`: the lattice tiling of `Z^2` by `S_2(r+1, r)`.
pub fn tiling_lattice_s2(r: u32) -> Result<LatticeCode> {
    let s = r as i64 + 1;
    let basis = IntegerMatrix::from_rows(&[vec![s, s], vec![0, 3 * s]])?;
    LatticeCode::from_basis(basis, family("tiling-s2", r))
}

fn family(name: &str, r: u32) -> Source {
    Source::Family {
        family: name.into(),
        r,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::Shape;
    use crate::sets::cyclic_elements;
    use num_rational::BigRational;

    fn set_code(v: u64, xs: &[u64]) -> LatticeCode {
        let g = AbelianGroup::cyclic(v).unwrap();
        lattice_from_set(&g, &cyclic_elements(&g, xs).unwrap()).unwrap()
    }

    fn m(rows: &[Vec<i64>]) -> IntegerMatrix {
        IntegerMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn kernels_of_small_sets() {
        let c = set_code(7, &[0, 1, 3]);
        assert_eq!(c.basis(), &m(&[vec![7, 0], vec![4, 1]]));
        assert_eq!(c.det_abs(), 7);
        let c = set_code(3, &[0, 1]);
        assert_eq!(c.basis(), &m(&[vec![3]]));
        let c = set_code(13, &[0, 1, 3, 9]);
        assert_eq!(c.det_abs(), 13);
        assert_eq!(c.parity_row(), Some(vec![1, 3, 9]));
        let ds = DifferenceSet::cyclic(13, &[0, 1, 3, 9]).unwrap();
        let g = generator_matrix_cyclic(&ds).unwrap();
        assert_eq!(g, m(&[vec![13, 0, 0], vec![-3, 1, 0], vec![-9, 0, 1]]));
        assert_eq!(g.hermite_lower(), c.hermite());
    }

    #[test]
    fn non_generating_set_is_rejected() {
        let g = AbelianGroup::cyclic(15).unwrap();
        let e = cyclic_elements(&g, &[0, 3]).unwrap();
        assert!(matches!(
            lattice_from_set(&g, &e),
            Err(Error::NotGenerating { .. })
        ));
    }

    #[test]
    fn noncyclic_group_kernel() {
        // Z_2 x Z_6 generated by {0, (1,1), (0,1)}
        let g = AbelianGroup::new(&[2, 6]).unwrap();
        let e = vec![g.zero(), g.element(&[1, 1]).unwrap(), g.element(&[0, 1]).unwrap()];
        let c = lattice_from_ordered(&g, &e).unwrap();
        assert_eq!(c.det_abs(), 12);
        for row in c.basis().to_i64_rows().unwrap() {
            assert!(c.contains(&row).unwrap());
        }
    }

    #[test]
    fn generator_matrix_small() {
        let ds = DifferenceSet::cyclic(7, &[0, 1, 3]).unwrap();
        assert_eq!(
            generator_matrix_cyclic(&ds).unwrap(),
            m(&[vec![7, 0], vec![-3, 1]])
        );
        let ds = DifferenceSet::cyclic(3, &[0, 1]).unwrap();
        assert_eq!(generator_matrix_cyclic(&ds).unwrap(), m(&[vec![3]]));
        let ds = DifferenceSet::cyclic(13, &[1, 2, 4, 10]).unwrap();
        assert!(matches!(
            generator_matrix_cyclic(&ds),
            Err(Error::NotNormalized(_))
        ));
    }

    #[test]
    fn dual_of_singer_13() {
        let b = m(&[vec![13, 0, 0], vec![-3, 1, 0], vec![-9, 0, 1]]);
        let d = dual_basis(&b).unwrap();
        let r = |a: i64, b: i64| BigRational::new(a.into(), b.into());
        assert_eq!(d.row(0), &[r(1, 13), r(3, 13), r(9, 13)]);
        assert_eq!(d.determinant().unwrap(), r(1, 13));
        let id = IntegerMatrix::identity(3);
        assert_eq!(dual_basis(&id).unwrap(), RationalMatrix::identity(3));
    }

    #[test]
    fn families() {
        assert_eq!(perfect_code_a1(1).unwrap().det_abs(), 3);
        assert_eq!(perfect_code_a1(0).unwrap().det_abs(), 1);
        let a2 = perfect_code_a2(1).unwrap();
        assert_eq!(a2.basis().determinant().unwrap(), BigInt::from(-7));
        assert_eq!(a2.hermite(), set_code(7, &[0, 1, 3]).hermite());
        assert_eq!(perfect_code_a2(0).unwrap().hermite(), IntegerMatrix::identity(2));
        for r in 0..6u32 {
            let a2 = perfect_code_a2(r).unwrap();
            let ball = Shape::ball(2, r).size();
            assert_eq!(num_bigint::BigUint::from(a2.det_abs()), ball);
            for row in a2.an_basis() {
                assert!(row.iter().sum::<BigInt>().is_zero());
            }
        }
        let t = tiling_lattice_s2(1).unwrap();
        assert_eq!(t.det_abs(), 12);
        assert_eq!(t.quotient().invariant_factors(), &[2, 6]);
        assert_eq!(tiling_lattice_s2(0).unwrap().det_abs(), 3);
    }

    #[test]
    fn a2_syndrome_for_r2() {
        // x + 12 y mod 19 bijects S_2(2) onto Z_19
        let c = perfect_code_a2(2).unwrap();
        assert!(c.contains(&[2, 3]).unwrap() && c.contains(&[5, -2]).unwrap());
        let mut seen = std::collections::HashSet::new();
        for p in Shape::ball(2, 2).iter() {
            assert!(seen.insert((p[0] + 12 * p[1]).rem_euclid(19)));
        }
        assert!((2 + 12 * 3) % 19 == 0 && (5 - 24i64).rem_euclid(19) == 0);
    }
}
