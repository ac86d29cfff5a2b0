//! The four-form bracket `{f1, f2, f3, f4}` on Fourier expansions.
//!
//! Differentiating `e[⟨η, Z⟩]` with respect to the three independent entries
//! of `Z` multiplies the coefficient at `η` by a fixed linear image of
//! `(x, y, z)`. By multilinearity of the determinant, replacing those three
//! derivative rows with the raw coordinates `x`, `y`, `z` changes the bracket
//! by one nonzero constant, independent of the inputs. This module computes
//! the coordinate version, which stays in exact rational arithmetic:
//!
//! ```text
//! C(η) = Σ_{η1+η2+η3+η4 = η} Π C_i(η_i) · det | k1 k2 k3 k4 |
//!                                              | x1 x2 x3 x4 |
//!                                              | y1 y2 y3 y4 |
//!                                              | z1 z2 z3 z4 |
//! ```
//!
//! Expanding the determinant turns the sum into products of the series `k·f`,
//! `x·f`, `y·f` and `z·f`.

use crate::exactnum::rat;
use crate::fourier::{multiply, FourierSeries};
use crate::lattice::EtaIndex;

/// Bracket of four series. The result has weight `k1 + k2 + k3 + k4 + 3`,
/// the smallest input precision, and zero constant term.
///
/// The determinant is expanded along the row pairs `(k, x)` and `(y, z)`:
/// `det = Σ_{i<j} (-1)^{i+j+1} (k_i x_j - k_j x_i)(y_k z_l - y_l z_k)` with
/// `{k, l}` the complement of `{i, j}`.
pub fn bracket(
    f1: &FourierSeries,
    f2: &FourierSeries,
    f3: &FourierSeries,
    f4: &FourierSeries,
) -> FourierSeries {
    let forms = [f1, f2, f3, f4];
    let prec = forms.iter().map(|f| f.prec()).min().unwrap_or(0);
    let weight: i64 = forms.iter().map(|f| f.weight()).sum::<i64>() + 3;

    let truncated: Vec<FourierSeries> = forms.iter().map(|f| f.truncate(prec)).collect();
    let row = |g: &dyn Fn(&FourierSeries) -> FourierSeries| -> Vec<FourierSeries> {
        truncated.iter().map(g).collect()
    };
    let k = row(&|f| f.scale(&rat(f.weight())));
    let x = row(&|f| f.coordinate_weighted(|e: &EtaIndex| e.x));
    let y = row(&|f| f.coordinate_weighted(|e: &EtaIndex| e.y));
    let z = row(&|f| f.coordinate_weighted(|e: &EtaIndex| e.z));

    let minor = |top: &[FourierSeries], bottom: &[FourierSeries], i: usize, j: usize| {
        multiply(&top[i], &bottom[j])
            .sub(&multiply(&top[j], &bottom[i]))
            .expect("minor terms share a weight")
    };

    let mut acc = FourierSeries::zero(weight, prec);
    for i in 0..4 {
        for j in i + 1..4 {
            let rest: Vec<usize> = (0..4).filter(|&c| c != i && c != j).collect();
            let lower = minor(&y, &z, rest[0], rest[1]);
            if lower.is_zero() {
                continue;
            }
            let upper = minor(&k, &x, i, j);
            let term = multiply(&upper, &lower).with_weight(weight);
            let sign = if (i + j) % 2 == 1 { 1 } else { -1 };
            acc = acc
                .add(&term.scale(&rat(sign)))
                .expect("terms share the bracket weight");
        }
    }
    acc
}
