//! Streaming enumeration of cycles and of disjoint cycle tuples in `K_n`.
//!
//! Vertex sets are visited in lexicographic order and every cycle is emitted
//! in canonical form (lowest vertex first, smaller neighbour second), so each
//! stream is deterministic and every cycle or tuple appears once.

use std::collections::BTreeSet;

use itertools::Itertools;

use crate::diagram::{Cycle, D4Label};
use crate::error::{Error, Result};

/// A lazily enumerated family of cycles or cycle tuples.
pub struct CycleFamily<T> {
    n: usize,
    shapes: Vec<Vec<usize>>,
    items: Box<dyn Iterator<Item = T> + Send>,
}

impl<T> CycleFamily<T> {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Allowed component lengths, one entry per shape.
    pub fn shapes(&self) -> &[Vec<usize>] {
        &self.shapes
    }
}

impl<T> Iterator for CycleFamily<T> {
    type Item = T;

    fn next(&mut self) -> Option<T> {
        self.items.next()
    }
}

/// Every cycle through exactly the vertices of `set` (sorted ascending), in
/// canonical form.
pub fn cycles_on(set: Vec<usize>) -> impl Iterator<Item = Cycle> + Send {
    let first = set[0];
    let rest = set[1..].to_vec();
    let k = rest.len();
    rest.into_iter().permutations(k).filter(|p| p[0] < p[p.len() - 1]).map(move |p| {
        let mut v = Vec::with_capacity(p.len() + 1);
        v.push(first);
        v.extend(p);
        Cycle::new(v).expect("distinct vertices")
    })
}

fn check_len(len: usize) -> Result<()> {
    if len < 3 {
        return Err(Error::InvalidArgument(format!("cycle length {len} is below 3")));
    }
    Ok(())
}

fn complement(n: usize, used: &[&[usize]]) -> Vec<usize> {
    (0..n).filter(|v| !used.iter().any(|s| s.contains(v))).collect()
}

pub fn enumerate_cycles(n: usize, lengths: &BTreeSet<usize>) -> Result<CycleFamily<Cycle>> {
    if lengths.is_empty() {
        return Err(Error::InvalidArgument("empty length set".into()));
    }
    for &l in lengths {
        check_len(l)?;
    }
    let ls: Vec<usize> = lengths.iter().copied().filter(|&l| l <= n).collect();
    let items = ls.into_iter().flat_map(move |k| (0..n).combinations(k).flat_map(cycles_on));
    Ok(CycleFamily { n, shapes: lengths.iter().map(|&l| vec![l]).collect(), items: Box::new(items) })
}

/// The `(n-1)!/2` Hamiltonian cycles of `K_n`.
pub fn hamiltonian_cycles(n: usize) -> Result<CycleFamily<Cycle>> {
    enumerate_cycles(n, &BTreeSet::from([n]))
}

/// Unordered pairs of vertex-disjoint cycles with lengths `len1` and `len2`.
/// When the lengths differ the first cycle has length `len1`.
pub fn disjoint_cycle_pairs(n: usize, len1: usize, len2: usize) -> Result<CycleFamily<(Cycle, Cycle)>> {
    check_len(len1)?;
    check_len(len2)?;
    let items = (0..n)
        .combinations(len1)
        .flat_map(move |s| {
            let (rest, first) = (complement(n, &[&s]), s[0]);
            rest.into_iter()
                .combinations(len2)
                .filter(move |t| len1 != len2 || first < t[0])
                .map({
                    let s = s.clone();
                    move |t| (s.clone(), t)
                })
                .collect::<Vec<_>>()
        })
        .flat_map(|(s, t)| cycles_on(s).cartesian_product(cycles_on(t).collect::<Vec<_>>()));
    Ok(CycleFamily { n, shapes: vec![vec![len1, len2]], items: Box::new(items) })
}

/// Unordered triples of pairwise-disjoint cycles. Shapes are taken as
/// multisets and visited in the given order; each triple comes out with
/// component lengths ascending.
pub fn disjoint_cycle_triples(n: usize, shapes: &[[usize; 3]]) -> Result<CycleFamily<(Cycle, Cycle, Cycle)>> {
    if shapes.is_empty() {
        return Err(Error::InvalidArgument("empty shape set".into()));
    }
    let mut seen = BTreeSet::new();
    let mut norm = Vec::new();
    for s in shapes {
        for &l in s {
            check_len(l)?;
        }
        let mut s = *s;
        s.sort_unstable();
        if seen.insert(s) {
            norm.push(s);
        }
    }
    let listed: Vec<Vec<usize>> = norm.iter().map(|s| s.to_vec()).collect();
    let items = norm.into_iter().flat_map(move |[a, b, c]| triples_of_shape(n, a, b, c));
    Ok(CycleFamily { n, shapes: listed, items: Box::new(items) })
}

fn triples_of_shape(n: usize, a: usize, b: usize, c: usize) -> impl Iterator<Item = (Cycle, Cycle, Cycle)> + Send {
    (0..n)
        .combinations(a)
        .flat_map(move |s1| {
            let first = s1[0];
            complement(n, &[&s1]).into_iter().combinations(b).filter(move |s2| a != b || first < s2[0]).map({
                let s1 = s1.clone();
                move |s2| (s1.clone(), s2)
            })
        })
        .flat_map(move |(s1, s2)| {
            let second = s2[0];
            complement(n, &[&s1, &s2])
                .into_iter()
                .combinations(c)
                .filter(move |s3| b != c || second < s3[0])
                .map({
                    let (s1, s2) = (s1.clone(), s2.clone());
                    move |s3| (s1.clone(), s2.clone(), s3)
                })
                .collect::<Vec<_>>()
        })
        .flat_map(|(s1, s2, s3)| {
            let c2: Vec<Cycle> = cycles_on(s2).collect();
            let c3: Vec<Cycle> = cycles_on(s3).collect();
            cycles_on(s1)
                .flat_map(move |x| {
                    let c3 = c3.clone();
                    c2.clone().into_iter().flat_map(move |y| {
                        let x = x.clone();
                        c3.clone().into_iter().map(move |z| (x.clone(), y.clone(), z))
                    })
                })
                .collect::<Vec<_>>()
        })
}

/// The 16 Hamiltonian cycle labels of D4 with their parity weights.
pub fn d4_hamiltonian_cycles() -> Vec<(D4Label, i32)> {
    D4Label::all().into_iter().map(|l| (l, l.epsilon())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binom(n: usize, k: usize) -> usize {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    fn fact(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn counts() {
        let count = |n, k| enumerate_cycles(n, &BTreeSet::from([k])).unwrap().count();
        assert_eq!(count(4, 3), 4);
        assert_eq!(count(6, 3), 20);
        assert_eq!(count(7, 7), 360);
        for n in 3..=8 {
            for k in 3..=n {
                assert_eq!(count(n, k), binom(n, k) * fact(k - 1) / 2, "n={n} k={k}");
            }
        }
        assert!(enumerate_cycles(5, &BTreeSet::new()).is_err());
        assert!(enumerate_cycles(5, &BTreeSet::from([2])).is_err());
        assert_eq!(count(4, 6), 0);
    }

    #[test]
    fn canonical_and_restartable() {
        let a: Vec<Cycle> = enumerate_cycles(6, &BTreeSet::from([3, 4, 5])).unwrap().collect();
        let b: Vec<Cycle> = enumerate_cycles(6, &BTreeSet::from([3, 4, 5])).unwrap().collect();
        assert_eq!(a, b);
        assert!(a.iter().all(|c| c.canonical() == *c));
        assert_eq!(a.iter().collect::<BTreeSet<_>>().len(), a.len());
    }

    #[test]
    fn pairs() {
        assert_eq!(disjoint_cycle_pairs(6, 3, 3).unwrap().count(), 10);
        assert_eq!(disjoint_cycle_pairs(7, 3, 3).unwrap().count(), 70);
        assert_eq!(disjoint_cycle_pairs(5, 3, 3).unwrap().count(), 0);
        assert_eq!(disjoint_cycle_pairs(7, 3, 4).unwrap().count(), 35 * 3);
        assert!(disjoint_cycle_pairs(7, 3, 4).unwrap().all(|(a, b)| a.len() == 3 && a.is_disjoint(&b)));
        assert!(disjoint_cycle_pairs(7, 2, 3).is_err());
    }

    #[test]
    fn triples() {
        assert_eq!(disjoint_cycle_triples(9, &[[3, 3, 3]]).unwrap().count(), 280);
        assert_eq!(disjoint_cycle_triples(10, &[[3, 3, 3]]).unwrap().count(), 2800);
        assert_eq!(disjoint_cycle_triples(8, &[[3, 3, 3]]).unwrap().count(), 0);
        // 210 four-sets, 3 cycles each, 10 triangle pairs in the other six.
        assert_eq!(disjoint_cycle_triples(10, &[[3, 4, 3], [4, 3, 3]]).unwrap().count(), 6300);
        assert!(disjoint_cycle_triples(10, &[]).is_err());
        for (a, b, c) in disjoint_cycle_triples(9, &[[3, 3, 3]]).unwrap() {
            assert!(a.is_disjoint(&b) && b.is_disjoint(&c) && a.is_disjoint(&c));
        }
    }

    #[test]
    fn d4_labels() {
        let all = d4_hamiltonian_cycles();
        assert_eq!(all.len(), 16);
        assert_eq!(all.iter().map(|(_, e)| e).sum::<i32>(), 0);
        assert_eq!(all[0].1, 1);
        assert_eq!(D4Label { b: 1, c: 0, d: 0, e: 0 }.epsilon(), -1);
    }
}
