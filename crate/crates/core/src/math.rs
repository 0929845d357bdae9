//! Small float helpers on top of `libm`.

/// `x^n` by repeated squaring; exact for small `n` when the products are.
pub(crate) fn powi(mut x: f64, mut n: u32) -> f64 {
    let mut acc = 1.0;
    while n > 0 {
        if n & 1 == 1 {
            acc *= x;
        }
        x *= x;
        n >>= 1;
    }
    acc
}

/// `x^p` for `x >= 0`, using the integer path when `p` is a small whole number.
pub(crate) fn powf(x: f64, p: f64) -> f64 {
    if p == 0.0 {
        1.0
    } else if p == 0.5 {
        libm::sqrt(x)
    } else if (1.0..=64.0).contains(&p) && libm::trunc(p) == p {
        powi(x, p as u32)
    } else {
        libm::pow(x, p)
    }
}

/// `u^{1/p}`.
pub(crate) fn root(u: f64, p: f64) -> f64 {
    if p == 1.0 {
        u
    } else if p == 2.0 {
        libm::sqrt(u)
    } else {
        libm::pow(u, 1.0 / p)
    }
}

/// Relative-or-absolute scale used by every margin tolerance.
pub(crate) fn scale(v: f64) -> f64 {
    libm::fabs(v).max(1.0)
}
