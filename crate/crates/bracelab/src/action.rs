//! Orbit partitions of `{0, …, n−1}` under a family of permutation maps.

/// A partition of `0..n` into orbits.  Each orbit is sorted ascending, and the
/// orbits themselves are sorted by (size, smallest element) so output is
/// reproducible.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    pub orbits: Vec<Vec<usize>>,
}

impl OrbitPartition {
    /// Orbits of `0..n` under the group generated by `maps` (each an image
    /// vector of a permutation of `0..n`).
    pub fn from_maps(n: usize, maps: &[Vec<usize>]) -> Self {
        let mut seen = vec![false; n];
        let mut orbits = Vec::new();
        for x in 0..n {
            if seen[x] {
                continue;
            }
            let mut orbit = vec![x];
            seen[x] = true;
            let mut frontier = vec![x];
            while let Some(y) = frontier.pop() {
                for map in maps {
                    let z = map[y];
                    if !seen[z] {
                        seen[z] = true;
                        orbit.push(z);
                        frontier.push(z);
                    }
                }
            }
            orbit.sort_unstable();
            orbits.push(orbit);
        }
        orbits.sort_by_key(|o| (o.len(), o[0]));
        OrbitPartition { orbits }
    }

    /// Wrap pre-computed classes (each will be sorted, then ordered by
    /// (size, smallest element)).
    pub fn from_classes(mut classes: Vec<Vec<usize>>) -> Self {
        for class in &mut classes {
            class.sort_unstable();
        }
        classes.sort_by_key(|o| (o.len(), o[0]));
        OrbitPartition { orbits: classes }
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.orbits.iter().map(|o| o.len()).collect()
    }

    /// Multiset of orbit sizes as (size, count) pairs, sizes ascending.
    pub fn size_counts(&self) -> Vec<(usize, usize)> {
        let mut counts: Vec<(usize, usize)> = Vec::new();
        for orbit in &self.orbits {
            match counts.iter_mut().find(|(s, _)| *s == orbit.len()) {
                Some((_, c)) => *c += 1,
                None => counts.push((orbit.len(), 1)),
            }
        }
        counts.sort_unstable();
        counts
    }

    /// Index of the orbit containing `x`.
    pub fn orbit_of(&self, x: usize) -> usize {
        self.orbits
            .iter()
            .position(|o| o.binary_search(&x).is_ok())
            .expect("element outside partition")
    }

    pub fn total(&self) -> usize {
        self.orbits.iter().map(|o| o.len()).sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orbit_of_single_cycle_map() {
        let cycle = vec![1, 2, 3, 0];
        let part = OrbitPartition::from_maps(4, &[cycle]);
        assert_eq!(part.orbits, vec![vec![0, 1, 2, 3]]);
    }

    #[test]
    fn orbits_sorted_by_size_then_min() {
        // two fixed points and a 2-cycle
        let swap = vec![0, 1, 3, 2];
        let part = OrbitPartition::from_maps(4, &[swap]);
        assert_eq!(part.orbits, vec![vec![0], vec![1], vec![2, 3]]);
        assert_eq!(part.sizes(), vec![1, 1, 2]);
        assert_eq!(part.size_counts(), vec![(1, 2), (2, 1)]);
        assert_eq!(part.orbit_of(3), 2);
    }

    #[test]
    fn empty_map_family_gives_singletons() {
        let part = OrbitPartition::from_maps(3, &[]);
        assert_eq!(part.sizes(), vec![1, 1, 1]);
        assert_eq!(part.total(), 3);
    }
}
