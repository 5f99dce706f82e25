//! Directed rounding on binary64.
//!
//! Every function returns a bound on the exact real result in the named
//! direction. Round-to-nearest results are corrected with error-free
//! transformations (TwoSum, FMA residuals) so that exactly representable
//! results stay exact and the rest move one ulp outward.

/// Products below this magnitude may lose the FMA residual to gradual
/// underflow; they are widened unconditionally.
const TINY: f64 = 1.0e-290;

#[inline]
fn two_sum_err(a: f64, b: f64, s: f64) -> f64 {
    let bb = s - a;
    (a - (s - bb)) + (b - bb)
}

#[inline]
pub fn add_down(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() {
        return s;
    }
    if two_sum_err(a, b, s) < 0.0 {
        s.next_down()
    } else {
        s
    }
}

#[inline]
pub fn add_up(a: f64, b: f64) -> f64 {
    let s = a + b;
    if !s.is_finite() {
        return s;
    }
    if two_sum_err(a, b, s) > 0.0 {
        s.next_up()
    } else {
        s
    }
}

#[inline]
pub fn sub_down(a: f64, b: f64) -> f64 {
    add_down(a, -b)
}

#[inline]
pub fn sub_up(a: f64, b: f64) -> f64 {
    add_up(a, -b)
}

#[inline]
pub fn mul_down(a: f64, b: f64) -> f64 {
    let p = a * b;
    if !p.is_finite() || p == 0.0 && (a == 0.0 || b == 0.0) {
        return p;
    }
    if p.abs() < TINY {
        return p.next_down();
    }
    if a.mul_add(b, -p) < 0.0 {
        p.next_down()
    } else {
        p
    }
}

#[inline]
pub fn mul_up(a: f64, b: f64) -> f64 {
    let p = a * b;
    if !p.is_finite() || p == 0.0 && (a == 0.0 || b == 0.0) {
        return p;
    }
    if p.abs() < TINY {
        return p.next_up();
    }
    if a.mul_add(b, -p) > 0.0 {
        p.next_up()
    } else {
        p
    }
}

/// Lower bound of `a / b`; `b` must be nonzero.
#[inline]
pub fn div_down(a: f64, b: f64) -> f64 {
    debug_assert!(b != 0.0);
    let q = a / b;
    if !q.is_finite() || a == 0.0 {
        return q;
    }
    if q.abs() < TINY {
        return q.next_down();
    }
    // a - q*b is exact; its sign relative to b tells where a/b lies
    let r = (-q).mul_add(b, a);
    if (r < 0.0) == (b > 0.0) && r != 0.0 {
        q.next_down()
    } else {
        q
    }
}

/// Upper bound of `a / b`; `b` must be nonzero.
#[inline]
pub fn div_up(a: f64, b: f64) -> f64 {
    -div_down(-a, b)
}

fn cube_down(c: f64) -> f64 {
    if c >= 0.0 {
        mul_down(mul_down(c, c), c)
    } else {
        mul_down(c, mul_up(c, c))
    }
}

fn cube_up(c: f64) -> f64 {
    if c >= 0.0 {
        mul_up(mul_up(c, c), c)
    } else {
        mul_up(c, mul_down(c, c))
    }
}

/// Lower bound of the real cube root of `x`.
pub fn cbrt_down(x: f64) -> f64 {
    let r = x.cbrt();
    if cube_down(r) == x && cube_up(r) == x {
        return r;
    }
    let mut c = r.next_down();
    while cube_up(c) > x {
        c = c.next_down();
    }
    c
}

/// Upper bound of the real cube root of `x`.
pub fn cbrt_up(x: f64) -> f64 {
    -cbrt_down(-x)
}

/// Lower bound of `sqrt(x)` for `x >= 0`.
pub fn sqrt_down(x: f64) -> f64 {
    let r = x.sqrt();
    if mul_up(r, r) <= x {
        return r;
    }
    let mut c = r.next_down().max(0.0);
    while mul_up(c, c) > x {
        c = c.next_down().max(0.0);
    }
    c
}

/// Upper bound of `sqrt(x)` for `x >= 0`.
pub fn sqrt_up(x: f64) -> f64 {
    let r = x.sqrt();
    if mul_down(r, r) >= x {
        return r;
    }
    let mut c = r.next_up();
    while mul_down(c, c) < x {
        c = c.next_up();
    }
    c
}

/// `x * 2^k`, exact unless the result leaves the normal range.
#[inline]
pub fn scale_pow2(x: f64, k: i32) -> f64 {
    x * pow2(k)
}

/// `2^k` as an f64 for `-1022 <= k <= 1023`.
#[inline]
pub fn pow2(k: i32) -> f64 {
    assert!((-1022..=1023).contains(&k), "2^{k} outside the normal range");
    f64::from_bits(((k + 1023) as u64) << 52)
}

fn ulp_exponent(x: f64, bits: u32) -> i32 {
    // exponent of the leading bit minus (bits - 1)
    let e = ((x.abs().to_bits() >> 52) as i32) - 1023;
    e - (bits as i32 - 1)
}

/// Rounds `x` toward -inf to a `bits`-bit significand.
pub fn coarsen_down(x: f64, bits: u32) -> f64 {
    if bits >= 53 || x == 0.0 || !x.is_normal() {
        return x;
    }
    let q = pow2(ulp_exponent(x, bits).max(-1022));
    (x / q).floor() * q
}

/// Rounds `x` toward +inf to a `bits`-bit significand.
pub fn coarsen_up(x: f64, bits: u32) -> f64 {
    if bits >= 53 || x == 0.0 || !x.is_normal() {
        return x;
    }
    let q = pow2(ulp_exponent(x, bits).max(-1022));
    (x / q).ceil() * q
}

/// Exact decimal rendering of a finite double, without trailing zeros.
///
/// Every binary64 value is a finite decimal fraction; the rendering is
/// bit-exact and parses back to the same double.
pub fn exact_decimal(x: f64) -> String {
    assert!(x.is_finite(), "cannot render non-finite value {x}");
    if x == 0.0 {
        return "0".to_string();
    }
    let bits = x.abs().to_bits();
    let biased = (bits >> 52) as i32;
    let mant = bits & ((1u64 << 52) - 1);
    let (m, e) = if biased == 0 {
        (mant, -1074)
    } else {
        (mant | (1u64 << 52), biased - 1075)
    };
    let frac_digits = if e >= 0 {
        0
    } else {
        (-e - m.trailing_zeros() as i32).max(0) as usize
    };
    let mut s = format!("{:.*}", frac_digits, x);
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_cases_stay_exact() {
        assert_eq!(add_down(1.0, 3.0), 4.0);
        assert_eq!(add_up(0.25, 0.5), 0.75);
        assert_eq!(mul_down(-1.0, 4.0), -4.0);
        assert_eq!(mul_up(2.0, 4.0), 8.0);
        assert_eq!(cbrt_down(-8.0), -2.0);
        assert_eq!(cbrt_up(27.0), 3.0);
        assert_eq!(div_down(3.0, 8.0), 0.375);
        assert_eq!(sqrt_up(2.25), 1.5);
    }

    #[test]
    fn inexact_cases_bracket() {
        let lo = add_down(0.1, 0.2);
        let hi = add_up(0.1, 0.2);
        assert!(lo < hi);
        assert_eq!(hi, lo.next_up());
        let lo = div_down(1.0, 3.0);
        let hi = div_up(1.0, 3.0);
        assert_eq!(hi, lo.next_up());
        assert!(mul_up(lo, 3.0) <= 1.0);
        let c = cbrt_down(2.0);
        assert!(cube_up(c) <= 2.0 && cube_down(cbrt_up(2.0)) >= 2.0);
    }

    #[test]
    fn coarsening_is_directed() {
        let x = 1.0 / 3.0;
        let lo = coarsen_down(x, 10);
        let hi = coarsen_up(x, 10);
        assert!(lo <= x && x <= hi);
        assert_eq!(hi - lo, pow2(-11));
        assert_eq!(coarsen_down(0.75, 4), 0.75);
        assert_eq!(coarsen_up(-x, 10), -lo);
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(exact_decimal(0.375), "0.375");
        assert_eq!(exact_decimal(-3.0), "-3");
        assert_eq!(exact_decimal(pow2(-10)), "0.0009765625");
        let x = 0.1f64;
        let s = exact_decimal(x);
        assert!(s.starts_with("0.1000000000000000055511151231257827"));
        assert_eq!(s.parse::<f64>().unwrap(), x);
    }
}
