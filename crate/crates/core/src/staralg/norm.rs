use num_complex::Complex64;

use crate::matrix::ExactMatrix;

type Dense = Vec<Vec<Complex64>>;

fn mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let m = b.first().map_or(0, Vec::len);
    let mut c = vec![vec![Complex64::new(0.0, 0.0); m]; n];
    for i in 0..n {
        for (k, bk) in b.iter().enumerate() {
            let aik = a[i][k];
            if aik.norm_sqr() == 0.0 {
                continue;
            }
            for j in 0..m {
                c[i][j] += aik * bk[j];
            }
        }
    }
    c
}

fn frobenius(a: &Dense) -> f64 {
    a.iter().flatten().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// Advisory upper bound on the spectral norm.
///
/// With `M = S*S`, `‖S‖² = ‖M‖ ≤ ‖M^(2^k)‖_F^(1/2^k)` for every `k`, and the right side
/// converges to `‖M‖`. Squaring is renormalized at each step; a relative slack of
/// `1e-12` covers rounding. Never used in exact assertions.
pub fn operator_norm_upper(s: &ExactMatrix) -> f64 {
    let a = s.to_f64();
    let ah: Dense = (0..s.cols()).map(|j| (0..s.rows()).map(|i| a[i][j].conj()).collect()).collect();
    let mut m = mul(&ah, &a);
    let mut log_scale = 0.0f64;
    let mut exponent = 1.0f64;
    for _ in 0..40 {
        let f = frobenius(&m);
        if f == 0.0 {
            return 0.0;
        }
        for z in m.iter_mut().flatten() {
            *z /= f;
        }
        log_scale += f.ln() / exponent;
        m = mul(&m, &m);
        exponent *= 2.0;
    }
    let f = frobenius(&m);
    let log_norm_m = if f == 0.0 { log_scale } else { log_scale + f.ln() / exponent };
    (0.5 * log_norm_m).exp() * (1.0 + 1e-12)
}
