//! Two-dimensional evaluation modules and everything verified on them:
//! defining mode relations, R-matrices and Yang-Baxter identities, the
//! coproduct on tensor products, the Hopf pairing, and the numeric
//! reconstruction of the universal R-matrix.

pub mod coproduct;
pub mod pairing;
pub mod reconstruct;
pub mod relations;
pub mod rmatrix;
pub mod ybe;

use num::complex::Complex64;

use crate::laurent::Coeff;
use crate::ratfun::RatFun;
use crate::scalar::BigRat;

impl Coeff for RatFun {
    fn zero() -> Self {
        RatFun::zero()
    }
    fn one() -> Self {
        RatFun::one()
    }
    fn is_zero(&self) -> bool {
        RatFun::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn from_rat(r: &BigRat) -> Self {
        RatFun::constant(r.clone())
    }
    fn try_unit_inv(&self) -> Option<Self> {
        self.inv().ok()
    }
}

/// Exact rational matrix entry (newtype so trait methods stay unambiguous).
#[derive(Clone, PartialEq, Debug)]
pub struct Q(pub BigRat);

impl Coeff for Q {
    fn zero() -> Self {
        Q(num::Zero::zero())
    }
    fn one() -> Self {
        Q(num::One::one())
    }
    fn is_zero(&self) -> bool {
        num::Zero::is_zero(&self.0)
    }
    fn add(&self, o: &Self) -> Self {
        Q(&self.0 + &o.0)
    }
    fn sub(&self, o: &Self) -> Self {
        Q(&self.0 - &o.0)
    }
    fn mul(&self, o: &Self) -> Self {
        Q(&self.0 * &o.0)
    }
    fn neg(&self) -> Self {
        Q(-self.0.clone())
    }
    fn from_rat(r: &BigRat) -> Self {
        Q(r.clone())
    }
    fn try_unit_inv(&self) -> Option<Self> {
        if num::Zero::is_zero(&self.0) {
            None
        } else {
            let one: BigRat = num::One::one();
            Some(Q(one / &self.0))
        }
    }
}

/// Scalars usable as matrix entries of an evaluation representation:
/// integer powers (negative included) and division must be available.
pub trait EvalScalar: Coeff {
    fn powi(&self, k: i64) -> Self;
    fn div(&self, o: &Self) -> Self;
}

impl EvalScalar for RatFun {
    fn powi(&self, k: i64) -> Self {
        RatFun::powi(self, k).expect("nonzero base")
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

impl EvalScalar for Q {
    fn powi(&self, k: i64) -> Self {
        use num::One;
        let base = if k < 0 {
            Q(BigRat::one() / &self.0)
        } else {
            self.clone()
        };
        let mut acc = Q::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        acc
    }
    fn div(&self, o: &Self) -> Self {
        Q(&self.0 / &o.0)
    }
}

impl EvalScalar for Complex64 {
    fn powi(&self, k: i64) -> Self {
        self.powi(k as i32)
    }
    fn div(&self, o: &Self) -> Self {
        self / o
    }
}

/// Dense square matrix over an abstract scalar.
#[derive(Clone, PartialEq, Debug)]
pub struct Mat<T: Coeff> {
    pub n: usize,
    pub e: Vec<T>,
}

impl<T: Coeff> Mat<T> {
    pub fn zeros(n: usize) -> Self {
        Mat {
            n,
            e: vec![T::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Mat::zeros(n);
        for i in 0..n {
            m.set(i, i, T::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        let n = rows.len();
        assert!(rows.iter().all(|r| r.len() == n));
        Mat {
            n,
            e: rows.into_iter().flatten().collect(),
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.e[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.e[i * self.n + j] = v;
    }

    pub fn add(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        Mat {
            n: self.n,
            e: self
                .e
                .iter()
                .zip(&o.e)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        Mat {
            n: self.n,
            e: self
                .e
                .iter()
                .zip(&o.e)
                .map(|(a, b)| a.sub(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &T) -> Self {
        Mat {
            n: self.n,
            e: self.e.iter().map(|a| a.mul(c)).collect(),
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.n, o.n);
        let n = self.n;
        let mut out: Mat<T> = Mat::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = o.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let cur = out.get(i, j).add(&a.mul(b));
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    pub fn commutator(&self, o: &Self) -> Self {
        self.mul(o).sub(&o.mul(self))
    }

    pub fn anticommutator(&self, o: &Self) -> Self {
        self.mul(o).add(&o.mul(self))
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(|a| a.is_zero())
    }

    pub fn kron(&self, o: &Self) -> Self {
        let n = self.n * o.n;
        let mut out = Mat::zeros(n);
        for i1 in 0..self.n {
            for j1 in 0..self.n {
                let a = self.get(i1, j1);
                if a.is_zero() {
                    continue;
                }
                for i2 in 0..o.n {
                    for j2 in 0..o.n {
                        let b = o.get(i2, j2);
                        if b.is_zero() {
                            continue;
                        }
                        out.set(i1 * o.n + i2, j1 * o.n + j2, a.mul(b));
                    }
                }
            }
        }
        out
    }

    pub fn map<U: Coeff>(&self, f: impl Fn(&T) -> U) -> Mat<U> {
        Mat {
            n: self.n,
            e: self.e.iter().map(f).collect(),
        }
    }
}

/// Embeds a two-site matrix (dim d x d per site) into a chain of `sites`
/// sites at the given site pair.
pub fn embed_two_site<T: Coeff>(m: &Mat<T>, d: usize, s1: usize, s2: usize, sites: usize) -> Mat<T> {
    let n = d.pow(sites as u32);
    let mut out = Mat::zeros(n);
    let digits = |idx: usize| -> Vec<usize> {
        let mut v = vec![0; sites];
        let mut r = idx;
        for s in (0..sites).rev() {
            v[s] = r % d;
            r /= d;
        }
        v
    };
    for i in 0..n {
        let di = digits(i);
        for j in 0..n {
            let dj = digits(j);
            // other sites must match
            let mut ok = true;
            for s in 0..sites {
                if s != s1 && s != s2 && di[s] != dj[s] {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            let row = di[s1] * d + di[s2];
            let col = dj[s1] * d + dj[s2];
            let v = m.get(row, col);
            if !v.is_zero() {
                out.set(i, j, v.clone());
            }
        }
    }
    out
}

/// Generator family of an evaluation module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EvalGen {
    E,
    F,
    H,
}

/// The mode action on the two-dimensional module with spectral parameter
/// `x`: powers of the parameter in off-diagonal or signed diagonal position.
pub fn eval_generator<T: EvalScalar>(gen: EvalGen, k: i64, x: &T) -> Mat<T> {
    let xk = x.powi(k);
    let mut m = Mat::zeros(2);
    match gen {
        EvalGen::E => m.set(0, 1, xk),
        EvalGen::F => m.set(1, 0, xk),
        EvalGen::H => {
            m.set(0, 0, xk.clone());
            m.set(1, 1, xk.neg());
        }
    }
    m
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::sym;

    #[test]
    fn generator_matrices() {
        let x = RatFun::var(sym("x"));
        let e0 = eval_generator(EvalGen::E, 0, &x);
        assert_eq!(e0.get(0, 1), &RatFun::one());
        assert!(e0.get(0, 0).is_zero() && e0.get(1, 0).is_zero() && e0.get(1, 1).is_zero());
        let h2 = eval_generator(EvalGen::H, 2, &x);
        assert_eq!(h2.get(0, 0), &(&x * &x));
        assert_eq!(h2.get(1, 1), &-&(&x * &x));
        // mode zero is parameter independent
        let f0 = eval_generator(EvalGen::F, 0, &x);
        assert_eq!(f0.get(1, 0), &RatFun::one());
    }

    #[test]
    fn negative_modes_are_inverse_powers() {
        let x = RatFun::var(sym("x"));
        let em2 = eval_generator(EvalGen::E, -2, &x);
        assert_eq!(em2.get(0, 1), &x.powi(-2).unwrap());
    }

    #[test]
    fn embed_respects_identity_elsewhere() {
        let m = Mat::<Q>::identity(4);
        let e = embed_two_site(&m, 2, 0, 2, 3);
        assert_eq!(e, Mat::identity(8));
    }
}
