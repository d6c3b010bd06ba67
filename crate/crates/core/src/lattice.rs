//! Fast transforms and enumeration on the subset lattice of a frame.
//!
//! Tables are indexed by subset bitmask, so a table over an `n`-element frame
//! has length `2^n`.

/// Subset-sum (zeta) transform: `out[A] = Σ_{B ⊆ A} in[B]`, in place.
pub fn zeta_in_place(values: &mut [f64]) {
    debug_assert!(values.len().is_power_of_two());
    let len = values.len();
    let mut bit = 1;
    while bit < len {
        for mask in 0..len {
            if mask & bit != 0 {
                values[mask] += values[mask ^ bit];
            }
        }
        bit <<= 1;
    }
}

/// Möbius inversion of [`zeta_in_place`]:
/// `out[A] = Σ_{B ⊆ A} (-1)^{|A \ B|} in[B]`, in place.
pub fn mobius_in_place(values: &mut [f64]) {
    debug_assert!(values.len().is_power_of_two());
    let len = values.len();
    let mut bit = 1;
    while bit < len {
        for mask in 0..len {
            if mask & bit != 0 {
                values[mask] -= values[mask ^ bit];
            }
        }
        bit <<= 1;
    }
}

/// Sums of a per-element vector over every subset: `out[A] = Σ_{x ∈ A} weights[x]`.
pub fn subset_sums(weights: &[f64]) -> Vec<f64> {
    let len = 1usize << weights.len();
    let mut out = vec![0.0; len];
    for mask in 1..len {
        let low = mask.trailing_zeros() as usize;
        out[mask] = out[mask & (mask - 1)] + weights[low];
    }
    out
}

/// Non-empty submasks of `mask`, in increasing numeric order.
#[derive(Debug, Clone)]
pub struct Submasks {
    mask: u32,
    current: u32,
    done: bool,
}

impl Submasks {
    pub fn new(mask: u32) -> Self {
        Submasks {
            mask,
            current: 0,
            done: mask == 0,
        }
    }
}

impl Iterator for Submasks {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.done {
            return None;
        }
        self.current = self.current.wrapping_sub(self.mask) & self.mask;
        if self.current == self.mask {
            self.done = true;
        }
        Some(self.current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn submasks_are_increasing_and_complete() {
        let subs: Vec<u32> = Submasks::new(0b1011).collect();
        assert_eq!(
            subs,
            vec![0b0001, 0b0010, 0b0011, 0b1000, 0b1001, 0b1010, 0b1011]
        );
        assert_eq!(Submasks::new(0).count(), 0);
    }

    #[test]
    fn zeta_matches_direct_sum() {
        let input: Vec<f64> = (0..16).map(|i| (i * 7 % 5) as f64 * 0.1).collect();
        let mut fast = input.clone();
        zeta_in_place(&mut fast);
        for (a, value) in fast.iter().enumerate() {
            let direct: f64 = (0..16usize).filter(|b| b & !a == 0).map(|b| input[b]).sum();
            assert!((value - direct).abs() < 1e-12);
        }
        mobius_in_place(&mut fast);
        for (x, y) in fast.iter().zip(&input) {
            assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn mobius_matches_signed_double_sum() {
        let input: Vec<f64> = (0..8).map(|i| (i as f64).sqrt()).collect();
        let mut fast = input.clone();
        mobius_in_place(&mut fast);
        for (a, value) in fast.iter().enumerate() {
            let direct: f64 = (0..8usize)
                .filter(|b| b & !a == 0)
                .map(|b| {
                    let sign = if (a ^ b).count_ones() % 2 == 0 {
                        1.0
                    } else {
                        -1.0
                    };
                    sign * input[b]
                })
                .sum();
            assert!((value - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn subset_sums_of_weights() {
        let sums = subset_sums(&[0.1, 0.2, 0.7]);
        assert_eq!(sums.len(), 8);
        assert!((sums[0b101] - 0.8).abs() < 1e-15);
        assert!((sums[0b111] - 1.0).abs() < 1e-15);
        assert_eq!(sums[0], 0.0);
    }
}
