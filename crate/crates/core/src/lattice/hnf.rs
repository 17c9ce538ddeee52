//! Column-style Hermite normal form for 4×4 integer matrices.
//!
//! `H = A·U` with `U` unimodular, `H` lower triangular, positive diagonal,
//! and `0 <= H[i][j] < H[i][i]` for `j < i`. Two nonsingular matrices span
//! the same lattice iff their forms are equal.

use crate::error::{Error, Result};

pub type IntMatrix = [[i64; 4]; 4];

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        return (a.abs(), a.signum(), 0);
    }
    let (g, x, y) = ext_gcd(b, a.rem_euclid(b));
    // b*x + (a mod b)*y = g
    (g, y, x - a.div_euclid(b) * y)
}

fn col_combine(m: &mut [[i128; 4]; 4], i: usize, j: usize, coeffs: [[i128; 2]; 2]) {
    // new col_i = c00*col_i + c01*col_j, new col_j = c10*col_i + c11*col_j
    for row in m.iter_mut() {
        let (x, y) = (row[i], row[j]);
        row[i] = coeffs[0][0] * x + coeffs[0][1] * y;
        row[j] = coeffs[1][0] * x + coeffs[1][1] * y;
    }
}

pub fn column_hnf(a: &IntMatrix) -> Result<IntMatrix> {
    let mut m: [[i128; 4]; 4] = a.map(|row| row.map(i128::from));
    for i in 0..4 {
        for j in i + 1..4 {
            if m[i][j] == 0 {
                continue;
            }
            let (g, x, y) = ext_gcd(m[i][i], m[i][j]);
            let (p, q) = (m[i][i] / g, m[i][j] / g);
            // [[x, y], [-q, p]] has determinant x*p + y*q = 1
            col_combine(&mut m, i, j, [[x, y], [-q, p]]);
            debug_assert_eq!(m[i][j], 0);
        }
        if m[i][i] == 0 {
            return Err(Error::Singular);
        }
        if m[i][i] < 0 {
            for row in m.iter_mut() {
                row[i] = -row[i];
            }
        }
        for j in 0..i {
            let k = m[i][j].div_euclid(m[i][i]);
            if k != 0 {
                for row in m.iter_mut() {
                    row[j] -= k * row[i];
                }
            }
        }
    }
    Ok(m.map(|row| row.map(|x| i64::try_from(x).expect("HNF entries fit in i64"))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn det(m: &IntMatrix) -> i128 {
        // Laplace expansion, fine for 4×4
        fn minor(m: &[Vec<i128>]) -> i128 {
            if m.len() == 1 {
                return m[0][0];
            }
            (0..m.len())
                .map(|c| {
                    let sub: Vec<Vec<i128>> = m[1..]
                        .iter()
                        .map(|r| {
                            r.iter()
                                .enumerate()
                                .filter(|(k, _)| *k != c)
                                .map(|(_, x)| *x)
                                .collect()
                        })
                        .collect();
                    let sign = if c % 2 == 0 { 1 } else { -1 };
                    sign * m[0][c] * minor(&sub)
                })
                .sum()
        }
        minor(
            &m.iter()
                .map(|r| r.iter().map(|&x| x as i128).collect::<Vec<_>>())
                .collect::<Vec<_>>(),
        )
    }

    fn is_hnf(h: &IntMatrix) -> bool {
        (0..4).all(|i| {
            h[i][i] > 0
                && (i + 1..4).all(|j| h[i][j] == 0)
                && (0..i).all(|j| (0..h[i][i]).contains(&h[i][j]))
        })
    }

    #[test]
    fn identity_is_fixed() {
        let id = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
        assert_eq!(column_hnf(&id).unwrap(), id);
    }

    #[test]
    fn singular_is_rejected() {
        let m = [[1, 2, 0, 0], [2, 4, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]];
        assert_eq!(column_hnf(&m), Err(Error::Singular));
    }

    fn unimodular_mix(m: &IntMatrix, ops: &[(usize, usize, i64)]) -> IntMatrix {
        let mut out = *m;
        for &(i, j, k) in ops {
            if i != j {
                for row in out.iter_mut() {
                    row[j] += k * row[i];
                }
            }
        }
        out
    }

    proptest! {
        #[test]
        fn canonical_under_column_operations(
            entries in prop::array::uniform16(-6i64..7),
            ops in prop::collection::vec((0usize..4, 0usize..4, -3i64..4), 0..12),
        ) {
            let m: IntMatrix = std::array::from_fn(|i| std::array::from_fn(|j| entries[4 * i + j]));
            prop_assume!(det(&m) != 0);
            let h = column_hnf(&m).unwrap();
            prop_assert!(is_hnf(&h));
            prop_assert_eq!(det(&h), det(&m).abs());
            prop_assert_eq!(column_hnf(&unimodular_mix(&m, &ops)).unwrap(), h);
        }
    }
}
