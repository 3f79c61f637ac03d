//! Weighted basis monomials for Fock-space elements.
//!
//! A monomial is a finite multiset of creation factors `alpha_i(-n)` applied
//! to the vacuum, kept in the canonical order (descending mode depth, then
//! ascending generator index). The empty monomial is the vacuum. The weight
//! is the sum of mode depths.
//!
//! Depth 0 is reserved for the weight-zero point bases of
//! commutative-associative instances; Heisenberg instances only ever create
//! factors of depth >= 1.

use std::cmp::Ordering;
use std::fmt;

/// One creation factor `alpha_{gen}(-depth)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct Factor {
    pub gen: u32,
    pub depth: u32,
}

impl Factor {
    /// Canonical factor order: descending depth, then ascending generator.
    fn canonical_cmp(&self, other: &Factor) -> Ordering {
        other
            .depth
            .cmp(&self.depth)
            .then(self.gen.cmp(&other.gen))
    }
}

/// A canonical basis monomial.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Monomial {
    factors: Vec<Factor>,
}

impl Monomial {
    /// The vacuum `1` (empty monomial, weight 0).
    pub fn vacuum() -> Monomial {
        Monomial { factors: Vec::new() }
    }

    /// Weight-zero point-basis monomial for a commutative-associative
    /// instance (a single depth-0 factor).
    pub fn point(gen: u32) -> Monomial {
        Monomial {
            factors: vec![Factor { gen, depth: 0 }],
        }
    }

    /// Builds a monomial from arbitrary-order factors, sorting canonically.
    pub fn from_factors(mut factors: Vec<Factor>) -> Monomial {
        factors.sort_by(Factor::canonical_cmp);
        Monomial { factors }
    }

    /// Single-generator convenience: `alpha_gen(-depth) 1`.
    pub fn single(gen: u32, depth: u32) -> Monomial {
        Monomial {
            factors: vec![Factor { gen, depth }],
        }
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn is_vacuum(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Sum of mode depths over the factors; the vacuum has weight 0.
    pub fn weight(&self) -> u32 {
        self.factors.iter().map(|f| f.depth).sum()
    }

    /// Inserts one factor, keeping the canonical order.
    pub fn with_factor(&self, f: Factor) -> Monomial {
        let pos = self
            .factors
            .partition_point(|g| g.canonical_cmp(&f) != Ordering::Greater);
        let mut factors = self.factors.clone();
        factors.insert(pos, f);
        Monomial { factors }
    }

    /// Removes the factor at `idx`.
    pub fn without_index(&self, idx: usize) -> Monomial {
        let mut factors = self.factors.clone();
        factors.remove(idx);
        Monomial { factors }
    }

    /// Number of copies of `f` in the multiset.
    pub fn multiplicity(&self, f: Factor) -> usize {
        self.factors.iter().filter(|g| **g == f).count()
    }
}

impl Ord for Monomial {
    /// Canonical monomial order: ascending weight, then lexicographic on the
    /// canonical factor list, then fewer factors first. Deterministic and
    /// total; used for echelon pivots and serialized output.
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then_with(|| {
                for (a, b) in self.factors.iter().zip(other.factors.iter()) {
                    let c = a.canonical_cmp(b);
                    if c != Ordering::Equal {
                        return c;
                    }
                }
                Ordering::Equal
            })
            .then(self.factors.len().cmp(&other.factors.len()))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_vacuum() {
            return write!(f, "1");
        }
        for g in &self.factors {
            if g.depth == 0 {
                write!(f, "e{}", g.gen)?;
            } else {
                write!(f, "a{}(-{})", g.gen, g.depth)?;
            }
        }
        write!(f, "1")
    }
}

/// All canonical monomials of the given weight for `rank` generators, in
/// canonical order. The count is the coefficient of `q^weight` in
/// `prod_{k>=1} (1 - q^k)^{-rank}`.
pub fn enumerate_basis(rank: u32, weight: u32) -> Vec<Monomial> {
    assert!(rank >= 1, "rank must be positive");
    let mut out = Vec::new();
    let mut stack: Vec<Factor> = Vec::new();
    // Factors in ascending canonical order: depth from weight down to 1,
    // generator ascending within a depth.
    fn rec(rank: u32, remaining: u32, min_pos: u64, stack: &mut Vec<Factor>, out: &mut Vec<Monomial>) {
        if remaining == 0 {
            out.push(Monomial {
                factors: stack.clone(),
            });
            return;
        }
        // position of factor (depth d, gen i) in the ascending canonical
        // enumeration restricted to depth <= remaining
        for depth in (1..=remaining).rev() {
            for gen in 1..=rank {
                let pos = (u64::from(u32::MAX - depth)) * u64::from(rank) + u64::from(gen);
                if pos < min_pos {
                    continue;
                }
                stack.push(Factor { gen, depth });
                rec(rank, remaining - depth, pos, stack, out);
                stack.pop();
            }
        }
    }
    rec(rank, weight, 0, &mut stack, &mut out);
    debug_assert!(out.windows(2).all(|w| w[0] < w[1]));
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent brute-force count of colored partitions: the number of
    /// multisets of pairs (gen in 1..=rank, depth >= 1) of total depth
    /// `weight`. Written against the definition, not the enumerator.
    fn colored_partition_count(rank: u32, weight: u32) -> u64 {
        // count(w, d) = partitions of w into colored parts of size <= d
        fn count(rank: u32, w: u32, max_depth: u32, min_gen_at_max: u32) -> u64 {
            if w == 0 {
                return 1;
            }
            let mut total = 0;
            for depth in (1..=max_depth.min(w)).rev() {
                let gen_start = if depth == max_depth { min_gen_at_max } else { 1 };
                for gen in gen_start..=rank {
                    total += count(rank, w - depth, depth, gen);
                }
            }
            total
        }
        count(rank, weight, weight.max(1), 1)
    }

    #[test]
    fn weight_of_vacuum_is_zero() {
        assert_eq!(Monomial::vacuum().weight(), 0);
    }

    #[test]
    fn weight_sums_depths() {
        // a1(-1) a1(-3) 1 -> 4
        let m = Monomial::from_factors(vec![
            Factor { gen: 1, depth: 1 },
            Factor { gen: 1, depth: 3 },
        ]);
        assert_eq!(m.weight(), 4);
        // a2(-2) a1(-2) 1 -> 4
        let m = Monomial::from_factors(vec![
            Factor { gen: 2, depth: 2 },
            Factor { gen: 1, depth: 2 },
        ]);
        assert_eq!(m.weight(), 4);
    }

    #[test]
    fn canonical_sort_is_depth_desc_then_gen_asc() {
        let m = Monomial::from_factors(vec![
            Factor { gen: 2, depth: 1 },
            Factor { gen: 1, depth: 3 },
            Factor { gen: 1, depth: 1 },
        ]);
        let ds: Vec<(u32, u32)> = m.factors().iter().map(|f| (f.depth, f.gen)).collect();
        assert_eq!(ds, vec![(3, 1), (1, 1), (1, 2)]);
    }

    #[test]
    fn enumerate_rank1_weight4_gives_5_partitions() {
        let basis = enumerate_basis(1, 4);
        assert_eq!(basis.len(), 5);
        let shapes: Vec<Vec<u32>> = basis
            .iter()
            .map(|m| m.factors().iter().map(|f| f.depth).collect())
            .collect();
        assert_eq!(
            shapes,
            vec![
                vec![4],
                vec![3, 1],
                vec![2, 2],
                vec![2, 1, 1],
                vec![1, 1, 1, 1]
            ]
        );
    }

    #[test]
    fn enumerate_weight_zero_is_vacuum() {
        assert_eq!(enumerate_basis(1, 0), vec![Monomial::vacuum()]);
        assert_eq!(enumerate_basis(3, 0), vec![Monomial::vacuum()]);
    }

    #[test]
    fn enumerate_rank2_weight2_gives_5() {
        assert_eq!(enumerate_basis(2, 2).len(), 5);
    }

    #[test]
    fn enumeration_matches_brute_force_count() {
        for rank in 1..=3 {
            for weight in 0..=8 {
                assert_eq!(
                    enumerate_basis(rank, weight).len() as u64,
                    colored_partition_count(rank, weight),
                    "rank {rank} weight {weight}"
                );
            }
        }
    }

    #[test]
    fn order_is_total_and_weight_first() {
        let basis2 = enumerate_basis(2, 2);
        let basis3 = enumerate_basis(2, 3);
        for a in &basis2 {
            for b in &basis3 {
                assert!(a < b);
            }
        }
        assert!(Monomial::vacuum() < basis2[0]);
        assert!(Monomial::vacuum() < Monomial::point(1));
        assert!(Monomial::point(1) < Monomial::point(2));
    }

    #[test]
    fn with_factor_keeps_canonical_form() {
        let m = Monomial::single(1, 2).with_factor(Factor { gen: 1, depth: 3 });
        assert_eq!(
            m,
            Monomial::from_factors(vec![
                Factor { gen: 1, depth: 3 },
                Factor { gen: 1, depth: 2 }
            ])
        );
    }
}
