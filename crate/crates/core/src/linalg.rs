//! Exact linear algebra over ℚ.
//!
//! Rows are cleared of denominators and reduced with fraction-free (Bareiss)
//! elimination over ℤ. Pivots are the first non-zero entry in column order, so
//! echelon forms and kernel bases are deterministic.

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{Integer, One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Dense row-major matrix of rationals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    /// Builds a matrix from rows, each of which must have length `cols`.
    pub fn from_rows(cols: usize, rows: Vec<Vec<Rational>>) -> Self {
        let mut entries = Vec::with_capacity(rows.len() * cols);
        let n = rows.len();
        for row in rows {
            assert_eq!(row.len(), cols, "row length mismatch");
            entries.extend(row);
        }
        RationalMatrix {
            rows: n,
            cols,
            entries,
        }
    }

    pub fn from_integer_rows(cols: usize, rows: &[Vec<i64>]) -> Self {
        Self::from_rows(
            cols,
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Rational]> + '_ {
        (0..self.rows).map(move |i| self.row(i))
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        self.row_iter()
            .map(|row| {
                row.iter()
                    .zip(v)
                    .filter(|(a, _)| !a.is_zero())
                    .fold(Rational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    /// Exact test `M·v = 0`.
    pub fn annihilates(&self, v: &[Rational]) -> bool {
        self.mul_vec(v).iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    fn integer_rows(&self) -> Vec<Vec<BigInt>> {
        self.row_iter().map(clear_denominators).collect()
    }
}

/// Scales a rational row by the lcm of its denominators.
fn clear_denominators(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

const MODULUS: u64 = (1 << 61) - 1;

/// Rank modulo a large prime. A lower bound for the rank over ℚ, so it is
/// exact whenever it reaches `min(rows, cols)`.
fn modular_rank(rows: &[Vec<BigInt>], cols: usize) -> usize {
    let p = BigInt::from(MODULUS);
    let mut m: Vec<Vec<u64>> = rows
        .iter()
        .map(|r| {
            r.iter()
                .map(|x| x.mod_floor(&p).to_u64().expect("residue fits in u64"))
                .collect()
        })
        .collect();
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % MODULUS as u128) as u64;
    let powmod = |mut base: u64, mut exp: u64| {
        let mut acc = 1u64;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = mulmod(acc, base);
            }
            base = mulmod(base, base);
            exp >>= 1;
        }
        acc
    };
    let mut rank = 0;
    for c in 0..cols {
        if rank == m.len() {
            break;
        }
        let Some(p_row) = (rank..m.len()).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(rank, p_row);
        let inv = powmod(m[rank][c], MODULUS - 2);
        let pivot_row: Vec<u64> = m[rank].iter().map(|&x| mulmod(x, inv)).collect();
        for row in m.iter_mut().skip(rank + 1) {
            let factor = row[c];
            if factor == 0 {
                continue;
            }
            for (x, &y) in row.iter_mut().zip(&pivot_row).skip(c) {
                *x = (*x + MODULUS - mulmod(factor, y)) % MODULUS;
            }
        }
        rank += 1;
    }
    rank
}

/// Integer row echelon form from fraction-free elimination.
struct Echelon {
    rows: Vec<Vec<BigInt>>,
    pivots: Vec<usize>,
}

fn bareiss_echelon(mut m: Vec<Vec<BigInt>>, cols: usize) -> Echelon {
    let mut pivots = Vec::new();
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        if r == m.len() {
            break;
        }
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let (head, tail) = m.split_at_mut(r + 1);
        let pivot_row = &head[r];
        let pivot = &pivot_row[c];
        for row in tail.iter_mut() {
            let factor = std::mem::take(&mut row[c]);
            for j in c + 1..cols {
                let updated = pivot * &row[j] - &factor * &pivot_row[j];
                debug_assert!((&updated % &prev).is_zero(), "Bareiss division not exact");
                row[j] = updated / &prev;
            }
        }
        prev = head[r][c].clone();
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    Echelon { rows: m, pivots }
}

/// Rank over ℚ.
pub fn rank(m: &RationalMatrix) -> usize {
    let rows = m.integer_rows();
    let full = m.rows.min(m.cols);
    if modular_rank(&rows, m.cols) == full {
        return full;
    }
    bareiss_echelon(rows, m.cols).pivots.len()
}

/// Basis of `{x : Mx = 0}`, one vector per non-pivot column (in column
/// order) with that coordinate set to 1 and the other free coordinates 0.
pub fn kernel_basis(m: &RationalMatrix) -> Vec<Vec<Rational>> {
    let rows = m.integer_rows();
    if m.rows >= m.cols && modular_rank(&rows, m.cols) == m.cols {
        return Vec::new();
    }
    let echelon = bareiss_echelon(rows, m.cols);
    let mut is_pivot = vec![false; m.cols];
    for &p in &echelon.pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&f| !is_pivot[f])
        .map(|free| {
            let mut x = vec![Rational::zero(); m.cols];
            x[free] = Rational::one();
            for (row, &p) in echelon.rows.iter().zip(&echelon.pivots).rev() {
                let s = (p + 1..m.cols)
                    .filter(|&j| !row[j].is_zero() && !x[j].is_zero())
                    .fold(Rational::zero(), |acc, j| {
                        acc + Rational::from_integer(row[j].clone()) * &x[j]
                    });
                x[p] = -s / Rational::from_integer(row[p].clone());
            }
            x
        })
        .collect()
}

/// Whether `vectors` span all of `ℚ^dim`.
pub fn spans_full(vectors: &[Vec<Rational>], dim: usize) -> bool {
    vectors.iter().for_each(|v| assert_eq!(v.len(), dim));
    rank(&RationalMatrix::from_rows(dim, vectors.to_vec())) == dim
}

/// The primitive integer vector on the ray of `v`: gcd 1, first non-zero
/// entry positive.
pub fn integerize(v: &[Rational]) -> Result<Vec<BigInt>> {
    let first = v.iter().find(|x| !x.is_zero()).ok_or(Error::ZeroVector)?;
    let mut w = clear_denominators(v);
    let gcd = w.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let sign = if first.is_negative() { -BigInt::one() } else { BigInt::one() };
    let scale = gcd * sign;
    for x in &mut w {
        *x = &*x / &scale;
    }
    Ok(w)
}

pub fn to_rational(v: &[BigInt]) -> Vec<Rational> {
    v.iter().cloned().map(Rational::from_integer).collect()
}

/// Dimension of the span of `vectors` in `ℚ^dim`.
pub fn span_dim(vectors: &[Vec<Rational>], dim: usize) -> usize {
    rank(&RationalMatrix::from_rows(dim, vectors.to_vec()))
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span(basis: &[Vec<Rational>], v: &[Rational]) -> bool {
    let dim = v.len();
    let mut with = basis.to_vec();
    with.push(v.to_vec());
    span_dim(basis, dim) == span_dim(&with, dim)
}

/// Equality of spans, checked by mutual membership.
pub fn same_subspace(a: &[Vec<Rational>], b: &[Vec<Rational>], dim: usize) -> bool {
    let ra = span_dim(a, dim);
    ra == span_dim(b, dim)
        && a.iter().all(|v| in_span(b, v))
        && b.iter().all(|v| in_span(a, v))
}

/// A spanning set of `span(a) ∩ span(b)`, from the kernel of `[a | -b]`.
pub fn intersect_subspaces(a: &[Vec<Rational>], b: &[Vec<Rational>], dim: usize) -> Vec<Vec<Rational>> {
    let k = a.len() + b.len();
    let mut m = RationalMatrix::zeros(dim, k);
    for (j, v) in a.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            m.set(i, j, x.clone());
        }
    }
    for (j, v) in b.iter().enumerate() {
        for (i, x) in v.iter().enumerate() {
            m.set(i, a.len() + j, -x.clone());
        }
    }
    kernel_basis(&m)
        .into_iter()
        .map(|coef| {
            let mut out = vec![Rational::zero(); dim];
            for (c, v) in coef.iter().zip(a) {
                if c.is_zero() {
                    continue;
                }
                for (o, x) in out.iter_mut().zip(v) {
                    *o += c * x;
                }
            }
            out
        })
        .filter(|v| v.iter().any(|x| !x.is_zero()))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ri(rows: &[&[i64]]) -> RationalMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        RationalMatrix::from_integer_rows(cols, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(BigInt::from(n), BigInt::from(d))
    }

    /// Plain rational Gauss-Jordan rank, kept independent of the Bareiss path.
    #[allow(clippy::needless_range_loop)]
    fn oracle_rank(m: &RationalMatrix) -> usize {
        let mut a: Vec<Vec<Rational>> = m.row_iter().map(<[Rational]>::to_vec).collect();
        let mut r = 0;
        for c in 0..m.cols() {
            let Some(p) = (r..a.len()).find(|&i| !a[i][c].is_zero()) else {
                continue;
            };
            a.swap(r, p);
            let piv = a[r][c].clone();
            for i in 0..a.len() {
                if i != r && !a[i][c].is_zero() {
                    let f = &a[i][c] / &piv;
                    for j in 0..m.cols() {
                        let d = &f * &a[r][j];
                        a[i][j] -= d;
                    }
                }
            }
            r += 1;
        }
        r
    }

    #[test]
    fn rank_examples() {
        assert_eq!(rank(&RationalMatrix::zeros(3, 3)), 0);
        assert_eq!(rank(&RationalMatrix::identity(3)), 3);
        assert_eq!(rank(&ri(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, -1]])), 2);
        assert_eq!(rank(&RationalMatrix::zeros(0, 4)), 0);
    }

    #[test]
    fn kernel_examples() {
        assert!(kernel_basis(&RationalMatrix::identity(4)).is_empty());
        let k = kernel_basis(&ri(&[&[1, 1]]));
        assert_eq!(k.len(), 1);
        assert_eq!(integerize(&k[0]).unwrap(), vec![BigInt::from(1), BigInt::from(-1)]);
        let k = kernel_basis(&ri(&[&[1, 1, 0], &[0, 1, 1], &[1, 0, -1]]));
        assert_eq!(k, vec![vec![rat(1), rat(-1), rat(1)]]);
    }

    #[test]
    fn span_examples() {
        let e = |i: usize| (0..3).map(|j| rat(i64::from(i == j))).collect::<Vec<_>>();
        assert!(spans_full(&[e(0), e(1), e(2)], 3));
        assert!(!spans_full(&[vec![rat(1), rat(1)]], 2));
        // affine lines of F_2^2 with elements indexed x + 2y
        let lines: Vec<Vec<Rational>> = [[0, 1], [2, 3], [0, 2], [1, 3], [0, 3], [1, 2]]
            .iter()
            .map(|l| (0..4).map(|i| rat(i64::from(l.contains(&i)))).collect())
            .collect();
        assert!(spans_full(&lines, 4));
    }

    #[test]
    fn integerize_examples() {
        let big = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(integerize(&[q(1, 2), q(-1, 3)]).unwrap(), big(&[3, -2]));
        assert_eq!(integerize(&[rat(2), rat(4)]).unwrap(), big(&[1, 2]));
        assert_eq!(integerize(&[rat(-1), rat(1)]).unwrap(), big(&[1, -1]));
        assert_eq!(integerize(&[rat(0), rat(0)]), Err(Error::ZeroVector));
    }

    #[test]
    fn subspace_helpers() {
        let a = vec![vec![rat(1), rat(0), rat(0)], vec![rat(0), rat(1), rat(0)]];
        let b = vec![vec![rat(0), rat(1), rat(0)], vec![rat(0), rat(0), rat(1)]];
        let i = intersect_subspaces(&a, &b, 3);
        assert!(same_subspace(&i, &[vec![rat(0), rat(1), rat(0)]], 3));
        assert!(in_span(&a, &[rat(3), q(1, 2), rat(0)]));
        assert!(!in_span(&a, &[rat(0), rat(0), rat(1)]));
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-4i64..=4, 1i64..=3).prop_map(|(n, d)| q(n, d))
    }

    fn matrix() -> impl Strategy<Value = RationalMatrix> {
        (0usize..6, 1usize..7).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(small_rational(), c), r)
                .prop_map(move |rows| RationalMatrix::from_rows(c, rows))
        })
    }

    fn low_rank_matrix() -> impl Strategy<Value = RationalMatrix> {
        // products of thin factors exercise the non-full-rank paths
        (1usize..7, 1usize..7, 1usize..4).prop_flat_map(|(r, c, k)| {
            (
                proptest::collection::vec(proptest::collection::vec(-3i64..=3, k), r),
                proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), k),
            )
                .prop_map(move |(left, right)| {
                    let rows = left
                        .iter()
                        .map(|l| {
                            (0..c)
                                .map(|j| rat((0..k).map(|t| l[t] * right[t][j]).sum()))
                                .collect()
                        })
                        .collect();
                    RationalMatrix::from_rows(c, rows)
                })
        })
    }

    proptest! {
        #[test]
        fn rank_nullity(m in prop_oneof![matrix(), low_rank_matrix()]) {
            let k = kernel_basis(&m);
            prop_assert_eq!(rank(&m) + k.len(), m.cols());
            prop_assert_eq!(rank(&m), oracle_rank(&m));
            for v in &k {
                prop_assert!(m.annihilates(v));
            }
        }

        #[test]
        fn integerize_is_primitive_rational_multiple(
            v in proptest::collection::vec(small_rational(), 1..6)
        ) {
            prop_assume!(v.iter().any(|x| !x.is_zero()));
            let w = integerize(&v).unwrap();
            let g = w.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
            prop_assert!(g.is_one());
            let lead = w.iter().find(|x| !x.is_zero()).unwrap();
            prop_assert!(lead.is_positive());
            // w = c·v, c ≠ 0, sign fixed by the leading entry
            let i = v.iter().position(|x| !x.is_zero()).unwrap();
            let c = Rational::from_integer(w[i].clone()) / &v[i];
            prop_assert_eq!(c.is_positive(), v[i].is_positive());
            for (a, b) in w.iter().zip(&v) {
                prop_assert_eq!(Rational::from_integer(a.clone()), &c * b);
            }
        }

        #[test]
        fn spans_full_matches_rank(m in matrix()) {
            let rows: Vec<Vec<Rational>> = m.row_iter().map(<[Rational]>::to_vec).collect();
            prop_assert_eq!(spans_full(&rows, m.cols()), oracle_rank(&m) == m.cols());
        }
    }
}
