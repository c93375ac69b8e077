//! Integer Laurent polynomials in one variable and square matrices over
//! them, with exact arbitrary-precision arithmetic.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::WordError;

/// Integer-coefficient Laurent polynomial, stored as a dense coefficient
/// window starting at exponent `lo`. The zero polynomial has an empty window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentPoly {
    lo: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly { lo: 0, coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(1.into(), 0)
    }

    pub fn monomial(coeff: BigInt, exp: i64) -> Self {
        if coeff.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly { lo: exp, coeffs: vec![coeff] }
    }

    pub fn from_terms(terms: &[(i64, i64)]) -> Self {
        let mut p = LaurentPoly::zero();
        for &(c, e) in terms {
            p = p.add(&LaurentPoly::monomial(c.into(), e));
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.lo == 0 && self.coeffs[0].is_one()
    }

    /// Nonzero terms as (coefficient, exponent) pairs, ascending exponent.
    pub fn terms(&self) -> impl Iterator<Item = (&BigInt, i64)> {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(move |(i, c)| (c, self.lo + i as i64))
    }

    /// Inclusive exponent window (lo, hi), or None for zero.
    pub fn degree_window(&self) -> Option<(i64, i64)> {
        if self.is_zero() {
            None
        } else {
            Some((self.lo, self.lo + self.coeffs.len() as i64 - 1))
        }
    }

    fn normalize(mut self) -> Self {
        while self.coeffs.last().map_or(false, |c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.lo += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.lo = 0;
        }
        self
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = (self.lo + self.coeffs.len() as i64).max(other.lo + other.coeffs.len() as i64);
        let mut coeffs = vec![BigInt::zero(); (hi - lo) as usize];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[(self.lo - lo) as usize + i] += c;
        }
        for (i, c) in other.coeffs.iter().enumerate() {
            coeffs[(other.lo - lo) as usize + i] += c;
        }
        LaurentPoly { lo, coeffs }.normalize()
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly { lo: self.lo, coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        if self.is_zero() || other.is_zero() {
            return LaurentPoly::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                coeffs[i + j] += a * b;
            }
        }
        LaurentPoly { lo: self.lo + other.lo, coeffs }.normalize()
    }

    /// Evaluate at an integer point modulo a prime, mapping t to `point`.
    /// Negative exponents use the modular inverse of the point.
    pub fn eval_mod(&self, point: u64, prime: u64) -> u64 {
        debug_assert!(point % prime != 0);
        let mut acc: u64 = 0;
        let p = point % prime;
        let pinv = mod_inv(p, prime);
        for (c, e) in self.terms() {
            let cm = bigint_mod(c, prime);
            let pw = if e >= 0 { mod_pow(p, e as u64, prime) } else { mod_pow(pinv, (-e) as u64, prime) };
            acc = (acc + mulmod(cm, pw, prime)) % prime;
        }
        acc
    }

    /// `+c@e` term list rendering, used by the system file format.
    pub fn render(&self) -> String {
        if self.is_zero() {
            return "[]".to_string();
        }
        let body = self
            .terms()
            .map(|(c, e)| format!("{c}@{e}"))
            .collect::<Vec<_>>()
            .join(",");
        format!("[{body}]")
    }

    /// Parse the `[]` / `[c@e,...]` entry format. A bare coefficient means
    /// exponent zero.
    pub fn parse(tok: &str) -> Result<Self, WordError> {
        let inner = tok
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| WordError::Parse(format!("matrix entry '{tok}' must be bracketed")))?;
        let mut p = LaurentPoly::zero();
        if inner.trim().is_empty() {
            return Ok(p);
        }
        for term in inner.split(',') {
            let (c, e) = match term.split_once('@') {
                Some((c, e)) => (c, e),
                None => (term, "0"),
            };
            let c: i64 = c
                .trim()
                .parse()
                .map_err(|_| WordError::Parse(format!("bad coefficient '{c}' in '{tok}'")))?;
            let e: i64 = e
                .trim()
                .parse()
                .map_err(|_| WordError::Parse(format!("bad exponent '{e}' in '{tok}'")))?;
            p = p.add(&LaurentPoly::monomial(c.into(), e));
        }
        Ok(p)
    }
}

pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mulmod(acc, base, m);
        }
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn mod_inv(a: u64, p: u64) -> u64 {
    mod_pow(a, p - 2, p)
}

fn bigint_mod(c: &BigInt, m: u64) -> u64 {
    let r = c.abs() % BigInt::from(m);
    let r: u64 = r.try_into().expect("residue fits in u64");
    if c.is_negative() && r != 0 {
        m - r
    } else {
        r
    }
}

/// Square matrix of Laurent polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    pub dim: usize,
    pub entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut entries = vec![LaurentPoly::zero(); dim * dim];
        for i in 0..dim {
            entries[i * dim + i] = LaurentPoly::one();
        }
        LaurentMatrix { dim, entries }
    }

    pub fn from_rows(rows: Vec<Vec<LaurentPoly>>) -> Result<Self, WordError> {
        let dim = rows.len();
        for r in &rows {
            if r.len() != dim {
                return Err(WordError::Parse(format!(
                    "matrix must be square: {dim} rows but a row of width {}",
                    r.len()
                )));
            }
        }
        Ok(LaurentMatrix { dim, entries: rows.into_iter().flatten().collect() })
    }

    pub fn at(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.dim + j]
    }

    pub fn mul(&self, other: &LaurentMatrix) -> LaurentMatrix {
        debug_assert_eq!(self.dim, other.dim);
        let dim = self.dim;
        let mut entries = vec![LaurentPoly::zero(); dim * dim];
        for i in 0..dim {
            for k in 0..dim {
                let a = self.at(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..dim {
                    let b = other.at(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    entries[i * dim + j] = entries[i * dim + j].add(&a.mul(b));
                }
            }
        }
        LaurentMatrix { dim, entries }
    }

    pub fn is_identity(&self) -> bool {
        for i in 0..self.dim {
            for j in 0..self.dim {
                let e = self.at(i, j);
                if i == j {
                    if !e.is_one() {
                        return false;
                    }
                } else if !e.is_zero() {
                    return false;
                }
            }
        }
        true
    }

    /// Determinant by cofactor expansion (the dimensions in play are tiny).
    pub fn det(&self) -> LaurentPoly {
        if self.dim == 1 {
            return self.at(0, 0).clone();
        }
        let mut acc = LaurentPoly::zero();
        for j in 0..self.dim {
            let c = self.at(0, j);
            if c.is_zero() {
                continue;
            }
            let m = self.minor(0, j).det();
            let term = c.mul(&m);
            acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
        }
        acc
    }

    fn minor(&self, row: usize, col: usize) -> LaurentMatrix {
        let dim = self.dim - 1;
        let mut entries = Vec::with_capacity(dim * dim);
        for i in 0..self.dim {
            if i == row {
                continue;
            }
            for j in 0..self.dim {
                if j == col {
                    continue;
                }
                entries.push(self.at(i, j).clone());
            }
        }
        LaurentMatrix { dim, entries }
    }

    /// Exact inverse. Exists iff the determinant is a unit monomial
    /// `±t^k`; otherwise returns `NonInvertibleGenerator`.
    pub fn inverse(&self) -> Result<LaurentMatrix, WordError> {
        let det = self.det();
        let unit = match det.degree_window() {
            Some((lo, hi)) if lo == hi && (det.terms().next().unwrap().0.abs().is_one()) => {
                let (c, e) = det.terms().next().unwrap();
                (c.clone(), e)
            }
            _ => {
                return Err(WordError::NonInvertibleGenerator(format!(
                    "determinant {} is not a unit monomial",
                    det.render()
                )))
            }
        };
        // det^-1 = sign * t^-e
        let det_inv = LaurentPoly::monomial(unit.0.clone(), -unit.1);
        let dim = self.dim;
        let mut entries = vec![LaurentPoly::zero(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                let cof = self.minor(j, i).det();
                let signed = if (i + j) % 2 == 0 { cof } else { cof.neg() };
                entries[i * dim + j] = signed.mul(&det_inv);
            }
        }
        let inv = LaurentMatrix { dim, entries };
        debug_assert!(inv.mul(self).is_identity());
        Ok(inv)
    }

    /// Evaluate all entries modulo a prime at an integer point.
    pub fn eval_mod(&self, point: u64, prime: u64) -> Vec<u64> {
        self.entries.iter().map(|p| p.eval_mod(point, prime)).collect()
    }

    /// Largest |exponent| over all entries (0 for the zero matrix).
    pub fn max_abs_degree(&self) -> i64 {
        self.entries
            .iter()
            .filter_map(|p| p.degree_window())
            .map(|(lo, hi)| lo.abs().max(hi.abs()))
            .max()
            .unwrap_or(0)
    }
}

/// Reduced Burau images of the 3-strand Artin generators, the fixed
/// convention used throughout: s1 -> [[-t, 1], [0, 1]], s2 -> [[1, 0], [t, -t]].
pub fn burau_s1() -> LaurentMatrix {
    LaurentMatrix::from_rows(vec![
        vec![LaurentPoly::from_terms(&[(-1, 1)]), LaurentPoly::one()],
        vec![LaurentPoly::zero(), LaurentPoly::one()],
    ])
    .unwrap()
}

pub fn burau_s2() -> LaurentMatrix {
    LaurentMatrix::from_rows(vec![
        vec![LaurentPoly::one(), LaurentPoly::zero()],
        vec![LaurentPoly::from_terms(&[(1, 1)]), LaurentPoly::from_terms(&[(-1, 1)])],
    ])
    .unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn poly_arithmetic() {
        let p = LaurentPoly::from_terms(&[(1, -1), (2, 1)]); // t^-1 + 2t
        let q = LaurentPoly::from_terms(&[(1, 0), (-2, 1)]);
        let r = p.mul(&q);
        // (t^-1 + 2t)(1 - 2t) = t^-1 - 2 + 2t - 4t^2
        assert_eq!(r, LaurentPoly::from_terms(&[(1, -1), (-2, 0), (2, 1), (-4, 2)]));
        assert!(p.sub(&p).is_zero());
        assert_eq!(p.degree_window(), Some((-1, 1)));
    }

    #[test]
    fn parse_render_round_trip() {
        for s in ["[]", "[1@0]", "[-1@2]", "[1@-1,2@1]"] {
            let p = LaurentPoly::parse(s).unwrap();
            assert_eq!(LaurentPoly::parse(&p.render()).unwrap(), p);
        }
        assert!(LaurentPoly::parse("1@0").is_err());
    }

    #[test]
    fn eval_mod_matches_direct() {
        let p = LaurentPoly::from_terms(&[(3, -2), (-1, 0), (5, 3)]);
        let prime = 1_000_000_007u64;
        let point = 4u64;
        // 3/16 - 1 + 5*64 mod p
        let inv16 = mod_inv(16, prime);
        let expect = (mulmod(3, inv16, prime) + prime - 1 + 320) % prime;
        assert_eq!(p.eval_mod(point, prime), expect);
    }

    #[test]
    fn braid_relation_under_fixed_convention() {
        let s1 = burau_s1();
        let s2 = burau_s2();
        let lhs = s1.mul(&s2).mul(&s1);
        let rhs = s2.mul(&s1).mul(&s2);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn burau_inverse_exact() {
        let s1 = burau_s1();
        let inv = s1.inverse().unwrap();
        assert!(s1.mul(&inv).is_identity());
        assert!(inv.mul(&s1).is_identity());
    }

    #[test]
    fn non_invertible_matrix_rejected() {
        let m = LaurentMatrix::from_rows(vec![
            vec![LaurentPoly::one(), LaurentPoly::one()],
            vec![LaurentPoly::one(), LaurentPoly::one()],
        ])
        .unwrap();
        assert!(matches!(m.inverse(), Err(WordError::NonInvertibleGenerator(_))));
    }
}
