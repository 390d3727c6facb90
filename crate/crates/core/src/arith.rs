//! Small integer helpers.

pub fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: i64, b: i64) -> i64 {
    if a == 0 || b == 0 {
        return 0;
    }
    (a / gcd(a, b)) * b
}

/// Floor division for a positive divisor.
pub fn div_floor(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    a.div_euclid(b)
}

/// Ceiling division for a positive divisor.
pub fn div_ceil(a: i64, b: i64) -> i64 {
    debug_assert!(b > 0);
    -((-a).div_euclid(b))
}

/// Smallest `x > after` with `x ≡ r (mod p)`.
pub fn first_in_class_after(after: i64, r: i64, p: i64) -> i64 {
    let start = after + 1;
    start + (r - start).rem_euclid(p)
}

/// The least `t ≥ t0` with `a + s·t ≡ b (mod m)`, for `s, m ≥ 1`.
pub fn least_solution(a: i64, s: i64, b: i64, m: i64, t0: i64) -> Option<i64> {
    let g = gcd(s, m);
    let rhs = (b - a).rem_euclid(m);
    if rhs % g != 0 {
        return None;
    }
    let (s1, m1, r1) = (s / g, m / g, rhs / g);
    let t = ((r1 as i128 * inverse_mod(s1, m1) as i128).rem_euclid(m1 as i128)) as i64;
    Some(t + m1 * div_ceil(t0 - t, m1).max(0))
}

/// The inverse of `a` modulo `m`, for coprime `a` and `m ≥ 1`.
fn inverse_mod(a: i64, m: i64) -> i64 {
    let (mut r0, mut r1) = (a.rem_euclid(m), m);
    let (mut x0, mut x1) = (1i64, 0i64);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (x0, x1) = (x1, x0 - q * x1);
    }
    x0.rem_euclid(m.max(1))
}

/// Divisors of `n` in increasing order.
pub fn divisors(n: i64) -> alloc::vec::Vec<i64> {
    let mut small = alloc::vec::Vec::new();
    let mut large = alloc::vec::Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n % d == 0 {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basics() {
        assert_eq!(gcd(12, 18), 6);
        assert_eq!(lcm(4, 6), 12);
        assert_eq!(div_ceil(7, 2), 4);
        assert_eq!(div_ceil(-7, 2), -3);
        assert_eq!(first_in_class_after(4, 1, 4), 5);
        assert_eq!(first_in_class_after(5, 1, 4), 9);
        assert_eq!(divisors(12), alloc::vec![1, 2, 3, 4, 6, 12]);
    }

    #[test]
    fn least_solution_matches_search() {
        for a in 0..7i64 {
            for s in 1..9i64 {
                for b in 0..7 {
                    for m in 1..9 {
                        for t0 in 0..4 {
                            let brute = (t0..t0 + m).find(|&t| (a + s * t - b).rem_euclid(m) == 0);
                            assert_eq!(least_solution(a, s, b, m, t0), brute, "{a} {s} {b} {m} {t0}");
                        }
                    }
                }
            }
        }
    }
}
