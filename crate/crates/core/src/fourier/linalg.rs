//! Exact Gaussian elimination over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactnum::Rational;

/// Clears denominators and removes the content of a row.
fn primitive_row(row: &[Rational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let mut ints: Vec<BigInt> = row.iter().map(|q| q.numer() * (&lcm / q.denom())).collect();
    normalize(&mut ints);
    ints
}

fn normalize(row: &mut [BigInt]) {
    let g = row.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if !g.is_zero() && !g.is_one() {
        for v in row.iter_mut() {
            *v /= &g;
        }
    }
}

/// Rank of the row space. Rows are scaled to primitive integer vectors and
/// reduced with integer row operations, so no rational normalisation happens
/// inside the elimination loop.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let mut work: Vec<Vec<BigInt>> = rows.iter().map(|r| primitive_row(r)).collect();
    let ncols = work.iter().map(Vec::len).max().unwrap_or(0);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..work.len()).find(|&r| !work[r].get(col).is_none_or(Zero::is_zero))
        else {
            continue;
        };
        work.swap(rank, pivot);
        let (head, tail) = work.split_at_mut(rank + 1);
        let prow = &head[rank];
        let p = prow[col].clone();
        for row in tail.iter_mut() {
            if row[col].is_zero() {
                continue;
            }
            let g = p.gcd(&row[col]);
            let a = &p / &g;
            let b = &row[col] / &g;
            for (v, pv) in row.iter_mut().zip(prow.iter()).skip(col) {
                *v = &a * &*v - &b * pv;
            }
            normalize(row);
        }
        rank += 1;
    }
    rank
}

/// Basis of `{ v : matrix * v = 0 }`, each vector scaled so its last free
/// coordinate is 1.
pub fn nullspace(matrix: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let mut m: Vec<Vec<Rational>> = matrix.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let inv = m[r][col].recip();
        for v in m[r].iter_mut() {
            *v *= &inv;
        }
        let prow = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, pv) in row.iter_mut().zip(prow.iter()) {
                *v -= &factor * pv;
            }
        }
        pivots.push(col);
        r += 1;
        if r == m.len() {
            break;
        }
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![Rational::zero(); ncols];
            v[free] = Rational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -m[row][free].clone();
            }
            v
        })
        .collect()
}

/// Scales a nonzero vector so that its first nonzero entry is 1.
pub fn monic(v: &[Rational]) -> Vec<Rational> {
    match v.iter().find(|q| !q.is_zero()) {
        Some(lead) => {
            let inv = lead.recip();
            v.iter().map(|q| q * &inv).collect()
        }
        None => v.to_vec(),
    }
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(|q| q.is_zero())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::{rat, ratio};

    fn row(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn rank_small() {
        assert_eq!(rank(&[]), 0);
        assert_eq!(rank(&[row(&[0, 0])]), 0);
        assert_eq!(rank(&[row(&[1, 2, 3]), row(&[2, 4, 6])]), 1);
        assert_eq!(
            rank(&[row(&[1, 2, 3]), row(&[0, 1, 1]), row(&[1, 3, 4])]),
            2
        );
        assert_eq!(
            rank(&[vec![ratio(1, 2), ratio(1, 3)], vec![ratio(3, 7), rat(5)]]),
            2
        );
    }

    #[test]
    fn nullspace_small() {
        // x + y + z = 0, x - y = 0
        let m = vec![row(&[1, 1, 1]), row(&[1, -1, 0])];
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 1);
        assert_eq!(ns[0], vec![ratio(-1, 2), ratio(-1, 2), rat(1)]);
        assert_eq!(nullspace(&[row(&[1, 0]), row(&[0, 1])], 2).len(), 0);
        assert_eq!(nullspace(&[], 2).len(), 2);
    }
}
