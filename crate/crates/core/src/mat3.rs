//! 3×3 matrices over a cyclotomic field.
//!
//! Entry accessors use 1-based `(row, column)` indices so that the parity
//! pattern of cross matrices matches the usual mathematical notation.

use std::cmp::Ordering;
use std::fmt;
use std::ops::Mul;

use serde_json::{json, Value};
use thiserror::Error;

use crate::cyclo::{CycloError, CycloNum};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatError {
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error("element order exceeds cap {0}")]
    OrderExceedsCap(u64),
    #[error("matrix is singular")]
    Singular,
    #[error("malformed matrix: {0}")]
    Malformed(String),
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat3 {
    e: [[CycloNum; 3]; 3],
}

impl Mat3 {
    pub fn from_rows(rows: [[CycloNum; 3]; 3]) -> Mat3 {
        let n = rows[0][0].conductor();
        assert!(rows.iter().flatten().all(|x| x.conductor() == n), "mixed conductors in matrix");
        Mat3 { e: rows }
    }

    pub fn identity(n: u32) -> Mat3 {
        Mat3::diag(CycloNum::one(n), CycloNum::one(n), CycloNum::one(n))
    }

    pub fn zero(n: u32) -> Mat3 {
        let z = CycloNum::zero(n);
        Mat3::from_rows([
            [z.clone(), z.clone(), z.clone()],
            [z.clone(), z.clone(), z.clone()],
            [z.clone(), z.clone(), z],
        ])
    }

    pub fn diag(a: CycloNum, b: CycloNum, c: CycloNum) -> Mat3 {
        let z = CycloNum::zero(a.conductor());
        Mat3::from_rows([[a, z.clone(), z.clone()], [z.clone(), b, z.clone()], [z.clone(), z, c]])
    }

    /// Matrix with `a`, `b`, `c` on the anti-diagonal, top row first.
    pub fn antidiag(a: CycloNum, b: CycloNum, c: CycloNum) -> Mat3 {
        let z = CycloNum::zero(a.conductor());
        Mat3::from_rows([[z.clone(), z.clone(), a], [z.clone(), b, z.clone()], [c, z.clone(), z]])
    }

    /// Integer matrix, handy for permutation and sign matrices.
    pub fn from_ints(n: u32, rows: [[i64; 3]; 3]) -> Mat3 {
        Mat3::from_rows(rows.map(|r| r.map(|v| CycloNum::from_int(n, v))))
    }

    pub fn conductor(&self) -> u32 {
        self.e[0][0].conductor()
    }

    /// Entry at 1-based `(i, j)`.
    pub fn get(&self, i: usize, j: usize) -> &CycloNum {
        &self.e[i - 1][j - 1]
    }

    pub fn rows(&self) -> &[[CycloNum; 3]; 3] {
        &self.e
    }

    pub fn try_mul(&self, other: &Mat3) -> Result<Mat3, MatError> {
        let n = self.conductor();
        if other.conductor() != n {
            return Err(CycloError::ConductorMismatch(n, other.conductor()).into());
        }
        let mut out = Mat3::zero(n);
        for i in 0..3 {
            for j in 0..3 {
                let mut acc: Option<CycloNum> = None;
                for k in 0..3 {
                    let (a, b) = (&self.e[i][k], &other.e[k][j]);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    let t = a * b;
                    acc = Some(match acc {
                        None => t,
                        Some(s) => &s + &t,
                    });
                }
                if let Some(v) = acc {
                    out.e[i][j] = v;
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &CycloNum) -> Mat3 {
        Mat3 { e: self.e.clone().map(|r| r.map(|x| &x * c)) }
    }

    pub fn transpose(&self) -> Mat3 {
        let e = &self.e;
        Mat3::from_rows(std::array::from_fn(|i| std::array::from_fn(|j| e[j][i].clone())))
    }

    /// Conjugate transpose.
    pub fn dagger(&self) -> Mat3 {
        let e = &self.e;
        Mat3::from_rows(std::array::from_fn(|i| std::array::from_fn(|j| e[j][i].conj())))
    }

    pub fn det(&self) -> CycloNum {
        let e = &self.e;
        let minor = |a: usize, b: usize, c: usize, d: usize| &(&e[1][a] * &e[2][b]) - &(&e[1][c] * &e[2][d]);
        let t0 = &e[0][0] * &minor(1, 2, 2, 1);
        let t1 = &e[0][1] * &minor(0, 2, 2, 0);
        let t2 = &e[0][2] * &minor(0, 1, 1, 0);
        &(&t0 - &t1) + &t2
    }

    pub fn trace(&self) -> CycloNum {
        &(&self.e[0][0] + &self.e[1][1]) + &self.e[2][2]
    }

    /// General inverse through the adjugate; group code uses [`Mat3::dagger`].
    pub fn inverse(&self) -> Result<Mat3, MatError> {
        let d = self.det();
        if d.is_zero() {
            return Err(MatError::Singular);
        }
        let inv_d = d.inv()?;
        let e = &self.e;
        let cof = |i: usize, j: usize| {
            let r: Vec<usize> = (0..3).filter(|x| *x != i).collect();
            let c: Vec<usize> = (0..3).filter(|x| *x != j).collect();
            let m = &(&e[r[0]][c[0]] * &e[r[1]][c[1]]) - &(&e[r[0]][c[1]] * &e[r[1]][c[0]]);
            if (i + j) % 2 == 0 {
                m
            } else {
                -m
            }
        };
        // adj[i][j] = cofactor(j, i)
        let adj = Mat3::from_rows(std::array::from_fn(|i| std::array::from_fn(|j| cof(j, i))));
        Ok(adj.scale(&inv_d))
    }

    /// Integer power; negative exponents go through [`Mat3::inverse`].
    pub fn pow(&self, e: i64) -> Result<Mat3, MatError> {
        let mut base = if e < 0 { self.inverse()? } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Mat3::identity(self.conductor());
        while k > 0 {
            if k & 1 == 1 {
                acc = &acc * &base;
            }
            k >>= 1;
            if k > 0 {
                base = &base * &base;
            }
        }
        Ok(acc)
    }

    pub fn is_identity(&self) -> bool {
        *self == Mat3::identity(self.conductor())
    }

    pub fn is_unitary(&self) -> bool {
        (self * &self.dagger()).is_identity()
    }

    pub fn is_special_unitary(&self) -> bool {
        self.is_unitary() && self.det().is_one()
    }

    /// Zero wherever exactly one of the 1-based indices is even.
    pub fn is_cross(&self) -> bool {
        [(1, 2), (2, 1), (2, 3), (3, 2)].iter().all(|&(i, j)| self.get(i, j).is_zero())
    }

    pub fn is_diagonal(&self) -> bool {
        (1..=3).all(|i| (1..=3).all(|j| i == j || self.get(i, j).is_zero()))
    }

    /// Least k >= 1 with M^k = I, searching up to `cap`.
    pub fn element_order(&self, cap: u64) -> Result<u64, MatError> {
        let mut p = self.clone();
        for k in 1..=cap {
            if p.is_identity() {
                return Ok(k);
            }
            p = &p * self;
        }
        Err(MatError::OrderExceedsCap(cap))
    }

    /// `g · m · g⁻¹`, with the inverse taken as the conjugate transpose when
    /// `g` is unitary.
    pub fn conjugate(g: &Mat3, m: &Mat3) -> Result<Mat3, MatError> {
        let gi = if g.is_unitary() { g.dagger() } else { g.inverse()? };
        Ok(&(g * m) * &gi)
    }

    /// Serialized form: conductor plus nine entries in row-major order.
    pub fn to_json(&self) -> Value {
        json!({
            "conductor": self.conductor(),
            "entries": self.e.iter().flatten().map(CycloNum::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn from_json(v: &Value) -> Result<Mat3, MatError> {
        let n = v
            .get("conductor")
            .and_then(Value::as_u64)
            .and_then(|n| u32::try_from(n).ok())
            .ok_or_else(|| MatError::Malformed("missing conductor".into()))?;
        let entries = v
            .get("entries")
            .and_then(Value::as_array)
            .filter(|a| a.len() == 9)
            .ok_or_else(|| MatError::Malformed("expected 9 entries".into()))?;
        let vals = entries.iter().map(|x| CycloNum::from_json(n, x)).collect::<Result<Vec<_>, _>>()?;
        let mut it = vals.into_iter();
        let mut next = || it.next().expect("nine entries");
        Ok(Mat3::from_rows([[next(), next(), next()], [next(), next(), next()], [next(), next(), next()]]))
    }
}

impl Mul<&Mat3> for &Mat3 {
    type Output = Mat3;
    /// # Panics
    /// On conductor mismatch; see [`Mat3::try_mul`].
    fn mul(self, rhs: &Mat3) -> Mat3 {
        self.try_mul(rhs).unwrap_or_else(|e| panic!("{e}"))
    }
}

impl Mul<Mat3> for Mat3 {
    type Output = Mat3;
    fn mul(self, rhs: Mat3) -> Mat3 {
        &self * &rhs
    }
}

impl Ord for Mat3 {
    /// Lexicographic over the row-major entries.
    fn cmp(&self, other: &Self) -> Ordering {
        self.e.iter().flatten().cmp(other.e.iter().flatten())
    }
}

impl PartialOrd for Mat3 {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.e.iter().enumerate() {
            let cells: Vec<String> = row.iter().map(|x| x.to_string()).collect();
            write!(f, "[{}]", cells.join(", "))?;
            if i < 2 {
                writeln!(f)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat3[{}]", self.conductor())?;
        for row in &self.e {
            let cells: Vec<String> = row
                .iter()
                .map(|x| {
                    let (re, im) = x.approx();
                    format!("{re:+.4}{im:+.4}i")
                })
                .collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclo::zeta;
    use proptest::prelude::*;

    const N: u32 = 72;

    #[test]
    fn antidiag_of_ones_has_det_minus_one() {
        let one = CycloNum::one(N);
        let m = Mat3::antidiag(one.clone(), one.clone(), one);
        assert_eq!(m.det(), CycloNum::from_int(N, -1));
        assert!(m.is_unitary());
        assert!(!m.is_special_unitary());
    }

    #[test]
    fn two_identity_is_not_unitary() {
        let two = Mat3::identity(N).scale(&CycloNum::from_int(N, 2));
        assert!(!two.is_unitary());
        assert!(Mat3::identity(N).is_cross());
    }

    #[test]
    fn dagger_is_involutive_and_inverts_unitaries() {
        let m = Mat3::from_rows([
            [zeta(3), zeta(10), CycloNum::from_int(N, 2)],
            [CycloNum::zero(N), zeta(7), zeta(40)],
            [zeta(1), CycloNum::zero(N), zeta(25)],
        ]);
        assert_eq!(m.dagger().dagger(), m);
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert!((&inv * &m).is_identity());
    }

    #[test]
    fn diagonal_order() {
        let d = Mat3::diag(zeta(4), zeta(8), zeta(-12));
        assert_eq!(d.element_order(648).unwrap(), 18);
        assert_eq!(Mat3::identity(N).element_order(1).unwrap(), 1);
        assert_eq!(d.element_order(5), Err(MatError::OrderExceedsCap(5)));
    }

    #[test]
    fn json_round_trip() {
        let m = Mat3::diag(zeta(4), zeta(8), zeta(-12));
        assert_eq!(Mat3::from_json(&m.to_json()).unwrap(), m);
    }

    fn arb_entry() -> impl Strategy<Value = CycloNum> {
        proptest::collection::vec((-2i64..=2, 0i64..72), 0..3).prop_map(|t| {
            t.iter().fold(CycloNum::zero(N), |acc, (c, k)| &acc + &(&zeta(*k) * &CycloNum::from_int(N, *c)))
        })
    }

    fn arb_mat() -> impl Strategy<Value = Mat3> {
        proptest::collection::vec(arb_entry(), 9).prop_map(|v| {
            Mat3::from_rows([
                [v[0].clone(), v[1].clone(), v[2].clone()],
                [v[3].clone(), v[4].clone(), v[5].clone()],
                [v[6].clone(), v[7].clone(), v[8].clone()],
            ])
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn det_is_multiplicative(a in arb_mat(), b in arb_mat()) {
            prop_assert_eq!((&a * &b).det(), &a.det() * &b.det());
        }

        #[test]
        fn trace_is_conjugation_invariant(a in arb_mat(), p in arb_mat()) {
            if let Ok(q) = p.inverse() {
                prop_assert_eq!((&(&p * &a) * &q).trace(), a.trace());
            }
        }

        #[test]
        fn dagger_reverses_products(a in arb_mat(), b in arb_mat()) {
            prop_assert_eq!((&a * &b).dagger(), &b.dagger() * &a.dagger());
        }
    }
}
