//! Base-2 entropy helpers. `0 · log 0` is taken as 0 throughout.

/// `-p log2 p`, zero at `p = 0`.
#[inline]
pub fn plogp(p: f64) -> f64 {
    if p > 0.0 {
        -p * p.log2()
    } else {
        0.0
    }
}

/// Shannon entropy in bits of a probability vector.
pub fn entropy(pmf: &[f64]) -> f64 {
    pmf.iter().map(|&p| plogp(p)).sum()
}

/// Binary entropy function `h_b(p)`.
pub fn binary_entropy(p: f64) -> f64 {
    plogp(p) + plogp(1.0 - p)
}

/// Binomial coefficient as an exact integer. Panics on overflow, which
/// cannot happen for the frame lengths this crate accepts.
pub fn binomial(n: u32, k: u32) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc: u64 = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1)
        acc = acc
            .checked_mul(n - i)
            .expect("binomial coefficient overflow")
            / (i + 1);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn binary_entropy_values() {
        assert_eq!(binary_entropy(0.0), 0.0);
        assert_eq!(binary_entropy(1.0), 0.0);
        assert!((binary_entropy(0.5) - 1.0).abs() < 1e-15);
        let direct = -0.2 * 0.2f64.log2() - 0.8 * 0.8f64.log2();
        assert!((binary_entropy(0.2) - direct).abs() < 1e-15);
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(7, 1), 7);
        assert_eq!(binomial(20, 10), 184_756);
        assert_eq!(binomial(3, 5), 0);
        let row: Vec<u64> = (0..=5).map(|k| binomial(5, k)).collect();
        assert_eq!(row, vec![1, 5, 10, 10, 5, 1]);
    }

    #[test]
    fn entropy_of_uniform() {
        assert!((entropy(&[0.25; 4]) - 2.0).abs() < 1e-15);
        assert_eq!(entropy(&[1.0, 0.0, 0.0]), 0.0);
    }
}
