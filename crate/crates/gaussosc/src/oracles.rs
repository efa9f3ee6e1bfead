//! Exact-rational reference implementations, compiled only with the
//! `test-oracles` feature and consumed exclusively by test code.
//!
//! Everything here deliberately avoids the production code paths: the
//! potential coefficients come from symbolic differentiation instead of the
//! closed-form series, the logarithmic-derivative coefficients come from a
//! power-series solution of the wave equation instead of the Riccati
//! recursion, and determinants are evaluated in exact rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rug::Float;

/// `numerator / denominator` as an exact rational.
pub fn ratio(numerator: i64, denominator: i64) -> BigRational {
    BigRational::new(BigInt::from(numerator), BigInt::from(denominator))
}

/// Exact rational into a big float at the given binary precision.
pub fn to_float(value: &BigRational, prec: u32) -> Float {
    let numer = Float::parse(value.numer().to_string()).unwrap();
    let denom = Float::parse(value.denom().to_string()).unwrap();
    Float::with_val(prec, numer) / Float::with_val(prec, denom)
}

/// Determinant over the rationals by exact Gaussian elimination with the
/// first nonzero pivot (no magnitude pivoting needed in exact arithmetic).
pub fn rational_det(rows: &[Vec<BigRational>]) -> BigRational {
    let n = rows.len();
    assert!(rows.iter().all(|r| r.len() == n), "matrix must be square");
    let mut a: Vec<Vec<BigRational>> = rows.to_vec();
    let mut det = BigRational::one();
    for k in 0..n {
        let pivot_row = match (k..n).find(|&i| !a[i][k].is_zero()) {
            Some(i) => i,
            None => return BigRational::zero(),
        };
        if pivot_row != k {
            a.swap(pivot_row, k);
            det = -det;
        }
        let pivot = a[k][k].clone();
        for i in k + 1..n {
            if a[i][k].is_zero() {
                continue;
            }
            let factor = &a[i][k] / &pivot;
            for j in k..n {
                let delta = &factor * &a[k][j];
                a[i][j] = &a[i][j] - &delta;
            }
        }
        det *= pivot;
    }
    det
}

/// Taylor coefficients of `exp(-x^2)` in `x^{2k}` by symbolic
/// differentiation: with `g = exp(-x^2)` the derivatives satisfy
/// `g^{(j)}(x) = P_j(x) g(x)` where `P_0 = 1` and
/// `P_{j+1} = P_j' - 2x P_j`, so the coefficient of `x^{2k}` is
/// `P_{2k}(0) / (2k)!`.
pub fn gaussian_series_by_differentiation(k_max: usize) -> Vec<BigRational> {
    let mut p: Vec<BigRational> = vec![BigRational::one()];
    let mut out = Vec::with_capacity(k_max + 1);
    let mut factorial = BigRational::one();
    for j in 0..=2 * k_max {
        if j % 2 == 0 {
            out.push(&p[0] / &factorial);
        }
        // advance factorial to (j+1)!
        factorial *= BigRational::from(BigInt::from((j + 1) as i64));
        // P_{j+1} = P_j' - 2x P_j
        let mut next = vec![BigRational::zero(); p.len() + 1];
        for (idx, c) in p.iter().enumerate() {
            if idx > 0 {
                next[idx - 1] = &next[idx - 1] + c * BigRational::from(BigInt::from(idx as i64));
            }
            next[idx + 1] = &next[idx + 1] - c * BigRational::from(BigInt::from(2));
        }
        p = next;
    }
    out
}

/// The coefficients `Q_k` of `Q(x) = x^2 - 2 lambda exp(-x^2) - 2E` in
/// `x^{2k}`, assembled from the symbolic-differentiation series above.
pub fn q_coeffs(energy: &BigRational, lambda: &BigRational, k_max: usize) -> Vec<BigRational> {
    let two = BigRational::from(BigInt::from(2));
    let gauss = gaussian_series_by_differentiation(k_max);
    (0..=k_max)
        .map(|k| {
            let mut q = -(&two * lambda) * &gauss[k];
            if k == 0 {
                q -= &two * energy;
            }
            if k == 1 {
                q += BigRational::one();
            }
            q
        })
        .collect()
}

/// Coefficients `f_j` of the regularized logarithmic derivative by the
/// power-series route: solve `psi'' = Q psi` with `psi = x^s A(x^2)`,
/// `A(y) = sum a_j y^j`, `a_0 = 1`,
///
/// ```text
/// a_{j+1} (2j+2+s)(2j+1+s) = sum_{k=0..j} Q_k a_{j-k}
/// ```
///
/// then divide: `f(x) = -2x A'(x^2)/A(x^2)`, i.e. `f_j = -2 b_j` with
/// `b = A'/A` by series division.
pub fn riccati_by_power_series(
    s: u32,
    energy: &BigRational,
    lambda: &BigRational,
    k_max: usize,
) -> Vec<BigRational> {
    let q = q_coeffs(energy, lambda, k_max);
    let s = i64::from(s);

    let mut a: Vec<BigRational> = vec![BigRational::one()];
    for j in 0..=k_max {
        let mut rhs = BigRational::zero();
        for k in 0..=j {
            rhs += &q[k] * &a[j - k];
        }
        let denom =
            BigRational::from(BigInt::from((2 * j as i64 + 2 + s) * (2 * j as i64 + 1 + s)));
        a.push(rhs / denom);
    }

    // b = A'/A with a_0 = 1: b_j = (j+1) a_{j+1} - sum_{i<j} b_i a_{j-i}
    let mut b: Vec<BigRational> = Vec::with_capacity(k_max + 1);
    for j in 0..=k_max {
        let mut bj = BigRational::from(BigInt::from((j + 1) as i64)) * &a[j + 1];
        for (i, bi) in b.iter().enumerate().take(j) {
            bj -= bi * &a[j - i];
        }
        b.push(bj);
    }
    b.iter()
        .map(|bj| -(BigRational::from(BigInt::from(2)) * bj))
        .collect()
}

/// `(2k - 1)!! / 4^k` exactly — the reduced moments of `exp(-2x^2)`:
/// `integral x^{2k} exp(-2x^2) dx = sqrt(pi/2) (2k-1)!! / 4^k`.
pub fn reduced_gaussian_moment(k: usize) -> BigRational {
    let mut numer = BigInt::one();
    for m in 1..=k as i64 {
        numer *= BigInt::from(2 * m - 1);
    }
    BigRational::new(numer, BigInt::from(4).pow(k as u32))
}

/// Physicists' Hermite polynomial coefficients (ascending, exact integers):
/// `H_0 = 1`, `H_1 = 2x`, `H_{k+1} = 2x H_k - 2k H_{k-1}`.
pub fn hermite_coeffs(n: usize) -> Vec<BigInt> {
    let mut h_prev: Vec<BigInt> = vec![BigInt::one()];
    if n == 0 {
        return h_prev;
    }
    let mut h: Vec<BigInt> = vec![BigInt::zero(), BigInt::from(2)];
    for k in 1..n {
        let mut next = vec![BigInt::zero(); h.len() + 1];
        for (idx, c) in h.iter().enumerate() {
            next[idx + 1] += 2 * c;
        }
        for (idx, c) in h_prev.iter().enumerate() {
            next[idx] -= 2 * BigInt::from(k as i64) * c;
        }
        h_prev = std::mem::replace(&mut h, next);
    }
    h
}

/// `<m| exp(-x^2) |n>` by the moment route: expand `H_m H_n` in monomials,
/// integrate term by term against `exp(-2x^2)` using
/// [`reduced_gaussian_moment`], and normalize:
///
/// ```text
/// <m|e^{-x^2}|n> = [sum_k c_{2k} (2k-1)!!/4^k] / sqrt(2 * 2^{m+n} m! n!)
/// ```
///
/// (the `sqrt(pi)` factors of the moments and the Hermite normalization
/// cancel). The rational sum is exact; only the final square root runs in
/// floats, with 64 guard bits.
pub fn gaussian_element_by_moments(m: usize, n: usize, prec: u32) -> Float {
    assert_eq!((m + n) % 2, 0, "opposite parity vanishes by symmetry");
    let hm = hermite_coeffs(m);
    let hn = hermite_coeffs(n);
    let mut product = vec![BigInt::zero(); m + n + 1];
    for (i, a) in hm.iter().enumerate() {
        for (j, b) in hn.iter().enumerate() {
            product[i + j] += a * b;
        }
    }
    let mut sum = BigRational::zero();
    for k in 0..=(m + n) / 2 {
        let c = &product[2 * k];
        if !c.is_zero() {
            sum += BigRational::from(c.clone()) * reduced_gaussian_moment(k);
        }
    }

    // norm^2 = 2 * 2^{m+n} * m! * n!
    let mut norm2 = BigInt::from(2) << (m + n);
    for i in 1..=m as i64 {
        norm2 *= BigInt::from(i);
    }
    for i in 1..=n as i64 {
        norm2 *= BigInt::from(i);
    }

    let wide = prec + 64;
    let sum_f = to_float(&sum, wide);
    let norm_f = Float::with_val(wide, Float::parse(norm2.to_string()).unwrap()).sqrt();
    Float::with_val(prec, sum_f / norm_f)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_series_matches_direct_expansion() {
        // exp(-x^2) = sum (-1)^k x^{2k} / k!
        let series = gaussian_series_by_differentiation(6);
        let mut k_factorial = BigRational::one();
        for (k, c) in series.iter().enumerate() {
            if k > 0 {
                k_factorial *= BigRational::from(BigInt::from(k as i64));
            }
            let expected = if k % 2 == 0 {
                BigRational::one() / &k_factorial
            } else {
                -(BigRational::one() / &k_factorial)
            };
            assert_eq!(c, &expected, "k = {k}");
        }
    }

    #[test]
    fn rational_det_of_singular_and_regular() {
        let rows = vec![
            vec![ratio(1, 1), ratio(2, 1)],
            vec![ratio(2, 1), ratio(4, 1)],
        ];
        assert!(rational_det(&rows).is_zero());

        let rows = vec![
            vec![ratio(2, 1), ratio(0, 1)],
            vec![ratio(0, 1), ratio(3, 1)],
        ];
        assert_eq!(rational_det(&rows), ratio(6, 1));
    }

    #[test]
    fn power_series_oracle_terminates_on_ground_state() {
        // s = 0, E = 1/2, lambda = 0
        let f = riccati_by_power_series(0, &ratio(1, 2), &ratio(0, 1), 5);
        assert_eq!(f[0], ratio(1, 1));
        for (k, fk) in f.iter().enumerate().skip(1) {
            assert!(fk.is_zero(), "f_{k} must vanish");
        }
    }

    #[test]
    fn moment_element_reproduces_low_orders() {
        // <0|e^{-x^2}|0> = 1/sqrt(2), <0|e^{-x^2}|2> = -1/4
        let prec = 200;
        let g00 = gaussian_element_by_moments(0, 0, prec);
        let expected = Float::with_val(prec, 2).sqrt().recip();
        assert!((g00 - expected).abs() < Float::with_val(prec, 1e-50));

        let g02 = gaussian_element_by_moments(0, 2, prec);
        assert!((g02 + Float::with_val(prec, 0.25)).abs() < Float::with_val(prec, 1e-50));
    }
}
