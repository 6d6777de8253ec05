//! The standard enumeration of Q/Z: by denominator, then numerator.
//!
//! `0/1, 1/2, 1/3, 2/3, 1/4, 3/4, 1/5, …`

use num_integer::Integer;

use crate::Angle;

/// All angles in height order.
pub fn angles_by_height() -> impl Iterator<Item = Angle> {
    (1u64..).flat_map(|q| (0..q).filter(move |p| p.gcd(&q) == 1).map(move |p| Angle::ratio(p, q)))
}

/// The `m`-th angle (0-based) in height order among those satisfying `keep`.
pub fn nth_angle_where(m: u64, keep: impl Fn(&Angle) -> bool) -> Angle {
    angles_by_height()
        .filter(|a| keep(a))
        .nth(m as usize)
        .expect("the enumeration is infinite")
}

/// Position of `a` in height order among angles satisfying `keep`;
/// `None` if `a` itself is filtered out.
pub fn angle_index_where(a: &Angle, keep: impl Fn(&Angle) -> bool) -> Option<u64> {
    if !keep(a) {
        return None;
    }
    let mut i = 0u64;
    for b in angles_by_height() {
        if &b == a {
            return Some(i);
        }
        if keep(&b) {
            i += 1;
        }
    }
    unreachable!("every angle appears in the enumeration")
}

/// First angle in height order that avoids `excluded`.
pub fn first_angle_avoiding<'a>(excluded: impl IntoIterator<Item = &'a Angle> + Clone) -> Angle {
    angles_by_height()
        .find(|a| !excluded.clone().into_iter().any(|e| e == a))
        .expect("finitely many exclusions")
}

/// Cantor pairing `N × N → N`.
pub fn cantor_pair(a: u64, b: u64) -> u64 {
    (a + b) * (a + b + 1) / 2 + b
}

/// Inverse of [`cantor_pair`].
pub fn cantor_unpair(m: u64) -> (u64, u64) {
    let mut w = ((((8 * m + 1) as f64).sqrt() - 1.0) / 2.0) as u64;
    while w * (w + 1) / 2 > m {
        w -= 1;
    }
    while (w + 1) * (w + 2) / 2 <= m {
        w += 1;
    }
    let b = m - w * (w + 1) / 2;
    (w - b, b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn enumeration_prefix() {
        let v: Vec<String> = angles_by_height().take(7).map(|a| a.to_string()).collect();
        assert_eq!(v, ["0/1", "1/2", "1/3", "2/3", "1/4", "3/4", "1/5"]);
        assert_eq!(angle_index_where(&Angle::frac(3, 4), |_| true), Some(5));
        assert_eq!(nth_angle_where(5, |_| true), Angle::frac(3, 4));
        let half = Angle::frac(1, 2);
        assert_eq!(nth_angle_where(1, |a| *a != half), Angle::frac(1, 3));
        assert_eq!(first_angle_avoiding(&[Angle::zero(), half.clone()]), Angle::frac(1, 3));
    }

    #[test]
    fn cantor_round_trip() {
        for m in 0..500 {
            let (a, b) = cantor_unpair(m);
            assert_eq!(cantor_pair(a, b), m);
        }
    }
}
