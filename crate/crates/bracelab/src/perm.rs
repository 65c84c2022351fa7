//! Small helpers for permutations represented as image vectors:
//! `p[x]` is the image of `x`.

/// Identity permutation on `n` points.
pub fn identity(n: usize) -> Vec<usize> {
    (0..n).collect()
}

/// Composition `(f ∘ g)(x) = f(g(x))`.
pub fn compose(f: &[usize], g: &[usize]) -> Vec<usize> {
    g.iter().map(|&x| f[x]).collect()
}

/// Inverse permutation.
pub fn invert(f: &[usize]) -> Vec<usize> {
    let mut inv = vec![0; f.len()];
    for (x, &fx) in f.iter().enumerate() {
        inv[fx] = x;
    }
    inv
}

/// Whether the image vector is a permutation of `0..n`.
pub fn is_permutation(f: &[usize]) -> bool {
    let n = f.len();
    let mut seen = vec![false; n];
    for &fx in f {
        if fx >= n || seen[fx] {
            return false;
        }
        seen[fx] = true;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_applies_right_then_left() {
        let f = vec![1, 2, 0];
        let g = vec![0, 2, 1];
        assert_eq!(compose(&f, &g), vec![1, 0, 2]);
    }

    #[test]
    fn inverse_undoes_permutation() {
        let f = vec![2, 0, 3, 1];
        assert_eq!(compose(&invert(&f), &f), identity(4));
        assert_eq!(compose(&f, &invert(&f)), identity(4));
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(is_permutation(&[1, 0, 2]));
        assert!(!is_permutation(&[1, 1, 2]));
        assert!(!is_permutation(&[0, 3]));
    }
}
