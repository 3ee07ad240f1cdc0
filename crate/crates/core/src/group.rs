//! Finite abelian groups `Z_{k_1} × … × Z_{k_u}` and the lexicographic
//! mixed-radix indexing that identifies `ℂ^G` with `ℂ^{|G|}`.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};

/// A direct product of cyclic groups, stored factor by factor.
///
/// Groups built through [`canonicalize`] have non-decreasing prime-power
/// factors. [`FiniteAbelianGroup::new`] keeps the factors exactly as given,
/// which is how a product such as `Z_3 × Z_2` is represented verbatim.
/// Factors equal to 1 are dropped; no factors means the trivial group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteAbelianGroup {
    factors: Arc<[usize]>,
    order: usize,
}

/// An element of a [`FiniteAbelianGroup`], one coordinate per factor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GroupElement {
    moduli: Arc<[usize]>,
    coords: Vec<usize>,
}

impl GroupElement {
    pub fn coords(&self) -> &[usize] {
        &self.coords
    }

    pub fn moduli(&self) -> &[usize] {
        &self.moduli
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coords.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl FiniteAbelianGroup {
    /// Product of the given cyclic factors in the given order.
    pub fn new(factors: &[usize]) -> Result<Self> {
        if factors.contains(&0) {
            return Err(Error::invalid("cyclic factor Z_0 is not finite"));
        }
        let factors: Vec<usize> = factors.iter().copied().filter(|&k| k > 1).collect();
        let order = factors
            .iter()
            .try_fold(1usize, |acc, &k| acc.checked_mul(k))
            .ok_or_else(|| Error::invalid("group order overflows usize"))?;
        Ok(FiniteAbelianGroup {
            factors: factors.into(),
            order,
        })
    }

    pub fn cyclic(n: usize) -> Result<Self> {
        Self::new(&[n])
    }

    pub fn trivial() -> Self {
        FiniteAbelianGroup {
            factors: Arc::from(Vec::new()),
            order: 1,
        }
    }

    /// The Boolean cube `Z_2^n`.
    pub fn boolean_cube(n: usize) -> Self {
        Self::new(&vec![2; n]).expect("Z_2^n order overflow")
    }

    /// Shorthand for `canonicalize(moduli)?.group`.
    pub fn canonical(moduli: &[usize]) -> Result<Self> {
        Ok(canonicalize(moduli)?.group)
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    pub fn order(&self) -> usize {
        self.order
    }

    /// Number of cyclic factors.
    pub fn rank(&self) -> usize {
        self.factors.len()
    }

    /// True when factors are prime powers in non-decreasing order.
    pub fn is_canonical(&self) -> bool {
        self.factors.iter().all(|&k| is_prime_power(k))
            && self.factors.windows(2).all(|w| w[0] <= w[1])
    }

    /// Splits `Z_k × G'` into `(k, G')`. `None` for the trivial group.
    pub fn split_first(&self) -> Option<(usize, FiniteAbelianGroup)> {
        let (&k, rest) = self.factors.split_first()?;
        let rest = FiniteAbelianGroup {
            factors: rest.into(),
            order: self.order / k,
        };
        Some((k, rest))
    }

    /// Row-major strides: `stride[i] = k_{i+1}·…·k_u`.
    pub fn strides(&self) -> Vec<usize> {
        let mut strides = vec![1; self.rank()];
        for i in (0..self.rank().saturating_sub(1)).rev() {
            strides[i] = strides[i + 1] * self.factors[i + 1];
        }
        strides
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement {
            moduli: self.factors.clone(),
            coords: vec![0; self.rank()],
        }
    }

    /// Validated element with the given coordinates.
    pub fn element(&self, coords: &[usize]) -> Result<GroupElement> {
        self.check_coords(coords)?;
        Ok(GroupElement {
            moduli: self.factors.clone(),
            coords: coords.to_vec(),
        })
    }

    /// Lexicographic rank `((x_1·k_2 + x_2)·k_3 + …)·k_u + x_u`.
    pub fn index_of(&self, x: &GroupElement) -> Result<usize> {
        self.check_member(x)?;
        Ok(self.rank_of(&x.coords))
    }

    /// [`index_of`](Self::index_of) on raw coordinates.
    pub fn index_of_coords(&self, coords: &[usize]) -> Result<usize> {
        self.check_coords(coords)?;
        Ok(self.rank_of(coords))
    }

    /// Inverse of [`index_of`](Self::index_of): mixed-radix digit extraction.
    pub fn element_at(&self, index: usize) -> Result<GroupElement> {
        if index >= self.order {
            return Err(Error::invalid(format!(
                "index {index} out of range for a group of order {}",
                self.order
            )));
        }
        Ok(GroupElement {
            moduli: self.factors.clone(),
            coords: self.digits(index),
        })
    }

    pub fn add(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.check_member(x)?;
        self.check_member(y)?;
        let coords = self
            .factors
            .iter()
            .zip(x.coords.iter().zip(&y.coords))
            .map(|(&k, (&a, &b))| (a + b) % k)
            .collect();
        Ok(GroupElement {
            moduli: self.factors.clone(),
            coords,
        })
    }

    pub fn neg(&self, x: &GroupElement) -> Result<GroupElement> {
        self.check_member(x)?;
        let coords = self
            .factors
            .iter()
            .zip(&x.coords)
            .map(|(&k, &a)| (k - a) % k)
            .collect();
        Ok(GroupElement {
            moduli: self.factors.clone(),
            coords,
        })
    }

    pub fn sub(&self, x: &GroupElement, y: &GroupElement) -> Result<GroupElement> {
        self.add(x, &self.neg(y)?)
    }

    /// All elements in lexicographic order.
    pub fn enumerate(&self) -> Vec<GroupElement> {
        (0..self.order)
            .map(|i| GroupElement {
                moduli: self.factors.clone(),
                coords: self.digits(i),
            })
            .collect()
    }

    /// Mixed-radix digits of `index`, most significant first.
    pub(crate) fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut coords = vec![0; self.rank()];
        for (c, &k) in coords.iter_mut().zip(self.factors.iter()).rev() {
            *c = index % k;
            index /= k;
        }
        coords
    }

    fn rank_of(&self, coords: &[usize]) -> usize {
        coords
            .iter()
            .zip(self.factors.iter())
            .fold(0, |acc, (&c, &k)| acc * k + c)
    }

    /// Table `t[i·|G| + j] = index_of(x_i − x_j)`, for the quadratic oracles.
    pub(crate) fn difference_table(&self) -> Vec<usize> {
        let n = self.order;
        let digits: Vec<Vec<usize>> = (0..n).map(|i| self.digits(i)).collect();
        let mut table = Vec::with_capacity(n * n);
        for x in &digits {
            for y in &digits {
                let idx = self
                    .factors
                    .iter()
                    .zip(x.iter().zip(y))
                    .fold(0, |acc, (&k, (&a, &b))| acc * k + (a + k - b) % k);
                table.push(idx);
            }
        }
        table
    }

    fn check_coords(&self, coords: &[usize]) -> Result<()> {
        if coords.len() != self.rank() {
            return Err(Error::invalid(format!(
                "expected {} coordinates, got {}",
                self.rank(),
                coords.len()
            )));
        }
        for (i, (&c, &k)) in coords.iter().zip(self.factors.iter()).enumerate() {
            if c >= k {
                return Err(Error::invalid(format!(
                    "coordinate {i} is {c}, outside Z_{k}"
                )));
            }
        }
        Ok(())
    }

    fn check_member(&self, x: &GroupElement) -> Result<()> {
        if *x.moduli != *self.factors {
            return Err(Error::invalid(format!(
                "element {x} does not belong to {self}"
            )));
        }
        Ok(())
    }
}

impl fmt::Display for FiniteAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "Z1");
        }
        let parts: Vec<String> = self.factors.iter().map(|k| format!("Z{k}")).collect();
        write!(f, "{}", parts.join("x"))
    }
}

/// Parses `"Z4"`, `"Z3xZ2"`, `"Z2^3"` or a bare `"n"`. Factors are kept in
/// the order written.
impl FromStr for FiniteAbelianGroup {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Err(Error::invalid("empty group spec"));
        }
        let mut factors = Vec::new();
        for token in s.split('x') {
            let token = token.trim();
            let body = token.strip_prefix('Z').unwrap_or(token);
            let (base, power) = match body.split_once('^') {
                Some((b, p)) => (b, p),
                None => (body, "1"),
            };
            let bad = || Error::invalid(format!("malformed group factor {token:?} in {s:?}"));
            let base: usize = base.trim().parse().map_err(|_| bad())?;
            let power: usize = power.trim().parse().map_err(|_| bad())?;
            factors.extend(std::iter::repeat_n(base, power));
        }
        FiniteAbelianGroup::new(&factors)
    }
}

/// A canonical group together with the isomorphism from the group it was
/// built from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Canonicalization {
    /// The canonical group.
    pub group: FiniteAbelianGroup,
    /// `Z_{m_1} × … × Z_{m_t}` exactly as given (factors of 1 dropped).
    pub source: FiniteAbelianGroup,
    // canonical factor i is Z_{q_i}, fed by source coordinate origin[i]
    origin: Vec<usize>,
}

impl Canonicalization {
    /// Canonical index of the source element with lexicographic index `i`:
    /// each canonical coordinate is the source coordinate it came from,
    /// reduced modulo its prime power.
    pub fn map_index(&self, i: usize) -> Result<usize> {
        let src = self.source.element_at(i)?;
        Ok(self
            .group
            .factors()
            .iter()
            .zip(&self.origin)
            .fold(0, |acc, (&q, &j)| acc * q + src.coords[j] % q))
    }

    /// `permutation[i]` is the canonical index of source index `i`.
    pub fn permutation(&self) -> Vec<usize> {
        (0..self.source.order())
            .map(|i| self.map_index(i).expect("index in range"))
            .collect()
    }

    /// Reorders data indexed by the source group into canonical indexing.
    pub fn to_canonical<T: Clone>(&self, data: &[T]) -> Result<Vec<T>> {
        crate::error::check_len(self.source.order(), data.len())?;
        let mut out = data.to_vec();
        for (src, dst) in self.permutation().into_iter().enumerate() {
            out[dst] = data[src].clone();
        }
        Ok(out)
    }

    /// Reorders canonically indexed data back into source indexing.
    pub fn from_canonical<T: Clone>(&self, data: &[T]) -> Result<Vec<T>> {
        crate::error::check_len(self.source.order(), data.len())?;
        Ok(self.permutation().into_iter().map(|dst| data[dst].clone()).collect())
    }
}

/// Splits each `Z_m` into prime-power factors (CRT) and sorts the result
/// non-decreasingly. Moduli of 1 are dropped.
pub fn canonicalize(moduli: &[usize]) -> Result<Canonicalization> {
    let source = FiniteAbelianGroup::new(moduli)?;
    // (prime power, source factor it came from)
    let mut parts: Vec<(usize, usize)> = source
        .factors()
        .iter()
        .enumerate()
        .flat_map(|(j, &m)| prime_power_factors(m).into_iter().map(move |q| (q, j)))
        .collect();
    parts.sort_by_key(|&(q, _)| q);
    let group = FiniteAbelianGroup::new(&parts.iter().map(|&(q, _)| q).collect::<Vec<_>>())?;
    Ok(Canonicalization {
        group,
        source,
        origin: parts.into_iter().map(|(_, j)| j).collect(),
    })
}

/// Prime-power factors of `m` by trial division, one per distinct prime,
/// in increasing prime order. Empty for `m ≤ 1`.
pub fn prime_power_factors(mut m: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut q = 1;
            while m.is_multiple_of(p) {
                m /= p;
                q *= p;
            }
            out.push(q);
        }
        p += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

pub fn is_prime_power(m: usize) -> bool {
    prime_power_factors(m).len() == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z3z2() -> FiniteAbelianGroup {
        FiniteAbelianGroup::new(&[3, 2]).unwrap()
    }

    #[test]
    fn canonicalize_examples() {
        assert_eq!(canonicalize(&[6]).unwrap().group.factors(), &[2, 3]);
        assert_eq!(canonicalize(&[4]).unwrap().group.factors(), &[4]);
        assert_eq!(canonicalize(&[12, 2]).unwrap().group.factors(), &[2, 3, 4]);
        assert_eq!(canonicalize(&[1, 1]).unwrap().group, FiniteAbelianGroup::trivial());
        assert!(canonicalize(&[3, 0]).is_err());
    }

    #[test]
    fn canonical_groups_report_it() {
        assert!(canonicalize(&[360, 7]).unwrap().group.is_canonical());
        assert!(!z3z2().is_canonical());
        assert!(!FiniteAbelianGroup::cyclic(6).unwrap().is_canonical());
        assert!(FiniteAbelianGroup::trivial().is_canonical());
    }

    #[test]
    fn index_examples() {
        let g = z3z2();
        assert_eq!(g.index_of(&g.identity()).unwrap(), 0);
        assert_eq!(g.index_of_coords(&[1, 1]).unwrap(), 3);
        assert_eq!(g.index_of_coords(&[2, 1]).unwrap(), 5);
        assert!(g.index_of_coords(&[3, 0]).is_err());
        assert!(g.index_of_coords(&[0]).is_err());
        assert_eq!(g.element_at(4).unwrap().coords(), &[2, 0]);
        assert_eq!(g.element_at(0).unwrap(), g.identity());
        assert!(g.element_at(6).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let g = z3z2();
        let x = g.element(&[2, 1]).unwrap();
        assert_eq!(g.add(&x, &x).unwrap().coords(), &[1, 0]);
        assert_eq!(g.neg(&g.identity()).unwrap(), g.identity());

        let z4 = FiniteAbelianGroup::cyclic(4).unwrap();
        let a = z4.element(&[1]).unwrap();
        let b = z4.element(&[3]).unwrap();
        assert_eq!(z4.sub(&a, &b).unwrap().coords(), &[2]);
        assert!(z4.add(&a, &x).is_err());
    }

    #[test]
    fn enumerate_examples() {
        let z2 = FiniteAbelianGroup::cyclic(2).unwrap();
        let coords: Vec<_> = z2.enumerate().iter().map(|e| e.coords().to_vec()).collect();
        assert_eq!(coords, vec![vec![0], vec![1]]);

        let coords: Vec<_> = z3z2().enumerate().iter().map(|e| e.coords().to_vec()).collect();
        assert_eq!(
            coords,
            vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1], vec![2, 0], vec![2, 1]]
        );

        let t = FiniteAbelianGroup::trivial();
        let all = t.enumerate();
        assert_eq!(all.len(), 1);
        assert_eq!(all[0], t.identity());
        assert_eq!(t.index_of(&all[0]).unwrap(), 0);
    }

    #[test]
    fn parse_spec_strings() {
        let p = |s: &str| s.parse::<FiniteAbelianGroup>().unwrap();
        assert_eq!(p("Z4").factors(), &[4]);
        assert_eq!(p("Z3xZ2").factors(), &[3, 2]);
        assert_eq!(p("Z2^3"), p("Z2xZ2xZ2"));
        assert_eq!(p("8").factors(), &[8]);
        assert_eq!(p("Z2^2xZ9").factors(), &[2, 2, 9]);
        assert_eq!(p("Z1"), FiniteAbelianGroup::trivial());
        for bad in ["", "Zx", "Z0", "Q4", "Z2^", "Z-3"] {
            assert!(bad.parse::<FiniteAbelianGroup>().is_err(), "{bad:?}");
        }
        assert_eq!(p("Z3xZ2").to_string(), "Z3xZ2");
    }

    #[test]
    fn split_first_peels_a_factor() {
        let g = FiniteAbelianGroup::new(&[2, 2, 9]).unwrap();
        let (k, rest) = g.split_first().unwrap();
        assert_eq!(k, 2);
        assert_eq!(rest.factors(), &[2, 9]);
        assert_eq!(rest.order(), 18);
        assert!(FiniteAbelianGroup::trivial().split_first().is_none());
    }

    #[test]
    fn crt_permutation_is_a_homomorphism() {
        let c = canonicalize(&[12, 10]).unwrap();
        assert_eq!(c.group.factors(), &[2, 3, 4, 5]);
        let perm = c.permutation();
        let mut seen = perm.clone();
        seen.sort_unstable();
        assert_eq!(seen, (0..120).collect::<Vec<_>>());

        let (src, dst) = (&c.source, &c.group);
        for i in 0..src.order() {
            for j in 0..src.order() {
                let sum = src.add(&src.element_at(i).unwrap(), &src.element_at(j).unwrap()).unwrap();
                let image = dst
                    .add(
                        &dst.element_at(perm[i]).unwrap(),
                        &dst.element_at(perm[j]).unwrap(),
                    )
                    .unwrap();
                assert_eq!(perm[src.index_of(&sum).unwrap()], dst.index_of(&image).unwrap());
            }
        }
        let data: Vec<usize> = (0..120).collect();
        assert_eq!(c.from_canonical(&c.to_canonical(&data).unwrap()).unwrap(), data);
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power_factors(360), vec![8, 9, 5]);
        assert_eq!(prime_power_factors(97), vec![97]);
        assert!(prime_power_factors(1).is_empty());
        assert!(is_prime_power(64));
        assert!(!is_prime_power(12));
        assert!(!is_prime_power(1));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn index_round_trip(factors in proptest::collection::vec(1usize..7, 0..5), seed in any::<usize>()) {
                let g = FiniteAbelianGroup::new(&factors).unwrap();
                let i = seed % g.order();
                let x = g.element_at(i).unwrap();
                prop_assert_eq!(g.index_of(&x).unwrap(), i);
                prop_assert_eq!(g.element_at(g.index_of(&x).unwrap()).unwrap(), x);
            }

            #[test]
            fn canonicalize_preserves_order(moduli in proptest::collection::vec(1usize..200, 0..3)) {
                let c = canonicalize(&moduli).unwrap();
                let product: usize = moduli.iter().product();
                prop_assert_eq!(c.group.order(), product);
                prop_assert!(c.group.is_canonical());
            }
        }
    }
}
