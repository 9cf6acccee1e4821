//! Upper bounds for the number of rational places, in exact integer arithmetic.

/// ⌊√n⌋ by Newton iteration on integers.
pub fn isqrt(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    let mut x = n;
    let mut y = x.div_ceil(2);
    while y < x {
        x = y;
        y = (x + n / x) / 2;
    }
    x
}

/// ⌊q + 1 + 2g√q⌋ = q + 1 + ⌊√(4 g² q)⌋.
pub fn hasse_weil_bound(q: u64, g: u64) -> u64 {
    let g = g as u128;
    (q as u128 + 1 + isqrt(4 * g * g * q as u128)) as u64
}

/// q + 1 + g⌊2√q⌋.
pub fn serre_bound(q: u64, g: u64) -> u64 {
    q + 1 + g * isqrt(4 * q as u128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integer_square_roots() {
        for n in 0u128..2000 {
            let r = isqrt(n);
            assert!(r * r <= n && (r + 1) * (r + 1) > n, "n = {n}");
        }
        assert_eq!(isqrt(u64::MAX as u128), u32::MAX as u128);
    }

    #[test]
    fn bound_values() {
        assert_eq!(hasse_weil_bound(4, 3), 17);
        assert_eq!(hasse_weil_bound(7, 0), 8);
        // 3 + 4√2 = 8.656...
        assert_eq!(hasse_weil_bound(2, 2), 8);
        assert_eq!(serre_bound(2, 1), 5);
        assert_eq!(hasse_weil_bound(2, 1), 5);
        assert_eq!(serre_bound(3, 4), 16);
        assert_eq!(serre_bound(9, 0), 10);
    }

    #[test]
    fn serre_below_hasse_weil_and_monotone() {
        for q in 2..=128u64 {
            for g in 0..=50u64 {
                assert!(serre_bound(q, g) <= hasse_weil_bound(q, g));
                if g > 0 {
                    assert!(serre_bound(q, g) > serre_bound(q, g - 1));
                    assert!(hasse_weil_bound(q, g) > hasse_weil_bound(q, g - 1));
                }
            }
        }
    }
}
