//! Integral LLL reduction (Cohen, *A Course in Computational Algebraic
//! Number Theory*, Algorithm 2.6.7) with δ = 99/100.
//!
//! All Gram–Schmidt data are kept as exact integers: `d[i]` are the leading
//! Gram determinants and `lambda[k][j] = d[j+1]·μ_{k,j}`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Result of a reduction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LllOutput {
    pub basis: Vec<Vec<BigInt>>,
    /// Unimodular `H` with `basis = H · input`.
    pub transform: Vec<Vec<BigInt>>,
    /// Set when the input rows turned out to be linearly dependent; the
    /// basis is then returned as far as it was reduced.
    pub rank_deficient: bool,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn sub_scaled(row: &mut [BigInt], other: &[BigInt], q: &BigInt) {
    for (x, y) in row.iter_mut().zip(other) {
        *x -= q * y;
    }
}

/// Nearest integer to `a/b` for `b > 0`, ties rounded up.
fn round_div(a: &BigInt, b: &BigInt) -> BigInt {
    let two = BigInt::from(2);
    (a * &two + b).div_floor(&(b * &two))
}

struct State {
    b: Vec<Vec<BigInt>>,
    h: Vec<Vec<BigInt>>,
    /// d[0] = 1, d[i+1] belongs to row i.
    d: Vec<BigInt>,
    lambda: Vec<Vec<BigInt>>,
}

impl State {
    fn red(&mut self, k: usize, l: usize) {
        let dl = self.d[l + 1].clone();
        if (&self.lambda[k][l] * BigInt::from(2)).abs() <= dl {
            return;
        }
        let q = round_div(&self.lambda[k][l], &dl);
        let bl = self.b[l].clone();
        sub_scaled(&mut self.b[k], &bl, &q);
        let hl = self.h[l].clone();
        sub_scaled(&mut self.h[k], &hl, &q);
        self.lambda[k][l] -= &q * &dl;
        for i in 0..l {
            let t = &q * &self.lambda[l][i];
            self.lambda[k][i] -= t;
        }
    }

    fn swap(&mut self, k: usize, kmax: usize) {
        self.b.swap(k, k - 1);
        self.h.swap(k, k - 1);
        for j in 0..k - 1 {
            let t = std::mem::take(&mut self.lambda[k][j]);
            self.lambda[k][j] = std::mem::replace(&mut self.lambda[k - 1][j], t);
        }
        let lam = self.lambda[k][k - 1].clone();
        // d indices shifted by one: d_{k-2} -> d[k-1], d_{k-1} -> d[k], d_k -> d[k+1]
        let bnew = (&self.d[k - 1] * &self.d[k + 1] + &lam * &lam) / &self.d[k];
        for i in k + 1..=kmax {
            let t = self.lambda[i][k].clone();
            self.lambda[i][k] = (&self.d[k + 1] * &self.lambda[i][k - 1] - &lam * &t) / &self.d[k];
            self.lambda[i][k - 1] = (&bnew * &t + &lam * &self.lambda[i][k]) / &self.d[k + 1];
        }
        self.d[k] = bnew;
    }
}

/// LLL-reduces the rows of `basis`.
pub fn lll_reduce(basis: &[Vec<BigInt>]) -> LllOutput {
    let n = basis.len();
    let identity = |n: usize| {
        (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
    };
    if n == 0 {
        return LllOutput { basis: vec![], transform: vec![], rank_deficient: false };
    }
    let mut st = State {
        b: basis.to_vec(),
        h: identity(n),
        d: vec![BigInt::zero(); n + 1],
        lambda: vec![vec![BigInt::zero(); n]; n],
    };
    st.d[0] = BigInt::one();
    st.d[1] = dot(&st.b[0], &st.b[0]);
    if st.d[1].is_zero() {
        return LllOutput { basis: st.b, transform: st.h, rank_deficient: true };
    }
    let mut k = 1;
    let mut kmax = 0;
    while k < n {
        if k > kmax {
            kmax = k;
            for j in 0..=k {
                let mut u = dot(&st.b[k], &st.b[j]);
                for i in 0..j {
                    u = (&st.d[i + 1] * &u - &st.lambda[k][i] * &st.lambda[j][i]) / &st.d[i];
                }
                if j < k {
                    st.lambda[k][j] = u;
                } else {
                    if u.is_zero() {
                        return LllOutput { basis: st.b, transform: st.h, rank_deficient: true };
                    }
                    st.d[k + 1] = u;
                }
            }
        }
        loop {
            st.red(k, k - 1);
            let lhs = BigInt::from(100) * &st.d[k + 1] * &st.d[k - 1];
            let lam = &st.lambda[k][k - 1];
            let rhs = BigInt::from(99) * &st.d[k] * &st.d[k] - BigInt::from(100) * lam * lam;
            if lhs < rhs {
                st.swap(k, kmax);
                k = (k - 1).max(1);
            } else {
                for l in (0..k - 1).rev() {
                    st.red(k, l);
                }
                k += 1;
                break;
            }
        }
    }
    LllOutput { basis: st.b, transform: st.h, rank_deficient: false }
}

/// Determinant of a small square integer matrix (fraction-free Bareiss).
pub fn determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}
