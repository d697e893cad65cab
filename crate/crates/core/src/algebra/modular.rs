//! Rank modulo a word-sized prime, used only as a cross-check on the exact
//! rational routines. Reduction mod `p` can only lose rank, so a modular
//! rank above the rational rank is a bug.

use num_bigint::BigInt;
use num_integer::Integer;
use rand::Rng;

use super::matrix::RationalMatrix;

fn pow_mod(mut base: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    base %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = (acc as u128 * base as u128 % p as u128) as u64;
        }
        base = (base as u128 * base as u128 % p as u128) as u64;
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin, exact for all `n < 2^32`.
pub fn is_prime_u32(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for small in [2u64, 3, 5, 7, 11, 13] {
        if n.is_multiple_of(small) {
            return n == small;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 7, 61] {
        if a % n == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = (x as u128 * x as u128 % n as u128) as u64;
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// A uniformly chosen prime in `[2^30, 2^31)`.
pub fn random_prime_31<R: Rng + ?Sized>(rng: &mut R) -> u64 {
    loop {
        let candidate = rng.gen_range((1u64 << 30)..(1u64 << 31)) | 1;
        if is_prime_u32(candidate) {
            return candidate;
        }
    }
}

/// Rank of `m` reduced modulo the prime `p`; `None` if some denominator
/// vanishes mod `p`.
pub fn rank_mod_prime(m: &RationalMatrix, p: u64) -> Option<usize> {
    let bp = BigInt::from(p);
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(m.rows());
    for i in 0..m.rows() {
        let mut row = Vec::with_capacity(m.cols());
        for x in m.row(i) {
            let num: u64 = x.numer().mod_floor(&bp).try_into().ok()?;
            let den: u64 = x.denom().mod_floor(&bp).try_into().ok()?;
            if den == 0 {
                return None;
            }
            let inv = pow_mod(den, p - 2, p);
            row.push((num as u128 * inv as u128 % p as u128) as u64);
        }
        rows.push(row);
    }
    let cols = m.cols();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = pow_mod(rows[rank][c], p - 2, p);
        for i in rank + 1..rows.len() {
            let f = (rows[i][c] as u128 * inv as u128 % p as u128) as u64;
            if f == 0 {
                continue;
            }
            for j in c..cols {
                let sub = (f as u128 * rows[rank][j] as u128 % p as u128) as u64;
                rows[i][j] = (rows[i][j] + p - sub) % p;
            }
        }
        rank += 1;
    }
    Some(rank)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::matrix::Matrix;
    use crate::algebra::scalar::rat;
    use rand::SeedableRng;

    #[test]
    fn primality() {
        assert!(is_prime_u32(2_147_483_647));
        assert!(!is_prime_u32(2_147_483_649));
        assert!(is_prime_u32(32003));
        assert!(!is_prime_u32(1));
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let p = random_prime_31(&mut rng);
        assert!(is_prime_u32(p) && (1 << 30..1 << 31).contains(&p));
    }

    #[test]
    fn modular_rank_can_drop() {
        let m = Matrix::from_rows(vec![vec![rat(1), rat(0)], vec![rat(0), rat(7)]]);
        assert_eq!(rank_mod_prime(&m, 7), Some(1));
        assert_eq!(rank_mod_prime(&m, 11), Some(2));
    }
}
