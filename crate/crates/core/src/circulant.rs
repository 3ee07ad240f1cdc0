//! Circulant and G-circulant matrices as implicit convolution operators,
//! plus the quadratic-time convolution oracles.

use crate::complex::Complex;
use crate::dense::{check_cap, DenseMatrix};
use crate::error::{check_len, Error, Result};
use crate::group::FiniteAbelianGroup;

/// The `n × n` circulant generated by `c`: `entry(i, j) = c[(i − j) mod n]`.
/// Only the generator is stored.
#[derive(Debug, Clone, PartialEq)]
pub struct CirculantMatrix {
    generator: Vec<Complex>,
}

impl CirculantMatrix {
    pub fn new(generator: Vec<Complex>) -> Result<Self> {
        if generator.is_empty() {
            return Err(Error::invalid("circulant generator must be non-empty"));
        }
        Ok(CirculantMatrix { generator })
    }

    pub fn size(&self) -> usize {
        self.generator.len()
    }

    pub fn generator(&self) -> &[Complex] {
        &self.generator
    }

    pub fn entry(&self, i: usize, j: usize) -> Result<Complex> {
        circulant_entry(&self.generator, i, j)
    }

    pub fn materialize(&self, cap: usize) -> Result<DenseMatrix> {
        let n = self.size();
        check_cap("circulant matrix", n, cap)?;
        Ok(DenseMatrix::from_fn(n, n, |i, j| self.generator[(i + n - j) % n]))
    }

    /// `C·d` by direct summation.
    pub fn apply(&self, d: &[Complex]) -> Result<Vec<Complex>> {
        naive_convolve(&self.generator, d)
    }
}

/// `c[(i − j) mod n]`.
pub fn circulant_entry(c: &[Complex], i: usize, j: usize) -> Result<Complex> {
    let n = c.len();
    if i >= n || j >= n {
        return Err(Error::invalid(format!(
            "index ({i}, {j}) out of range for a {n}×{n} circulant"
        )));
    }
    Ok(c[(i + n - j) % n])
}

/// The cyclic shift `P` with `P[i, (i+1) mod n] = 1`, so `(P·x)_i = x_{i+1}`.
pub fn shift_matrix(n: usize) -> Result<DenseMatrix> {
    if n == 0 {
        return Err(Error::invalid("shift matrix size must be positive"));
    }
    let mut p = DenseMatrix::zeros(n, n);
    for i in 0..n {
        p[(i, (i + 1) % n)] = Complex::new(1.0, 0.0);
    }
    Ok(p)
}

/// Coefficients `a_m` with `C = Σ_m a_m P^m`: `a_0 = c_0`, `a_m = c_{n−m}`.
pub fn decompose_in_powers_of_p(c: &[Complex]) -> Vec<Complex> {
    let n = c.len();
    (0..n).map(|m| c[(n - m) % n]).collect()
}

/// Circular convolution `(c∗d)_x = Σ_y c[(x − y) mod n]·d_y` in O(n²).
pub fn naive_convolve(c: &[Complex], d: &[Complex]) -> Result<Vec<Complex>> {
    check_len(c.len(), d.len())?;
    let n = c.len();
    Ok((0..n)
        .map(|x| (0..n).map(|y| c[(x + n - y) % n] * d[y]).sum())
        .collect())
}

/// A `|G| × |G|` matrix with `entry(x, y) = v(x − y)`, rows and columns in
/// lexicographic order.
#[derive(Debug, Clone, PartialEq)]
pub struct GCirculant {
    group: FiniteAbelianGroup,
    generator: Vec<Complex>,
}

impl GCirculant {
    pub fn new(group: FiniteAbelianGroup, generator: Vec<Complex>) -> Result<Self> {
        check_len(group.order(), generator.len())?;
        Ok(GCirculant { group, generator })
    }

    pub fn group(&self) -> &FiniteAbelianGroup {
        &self.group
    }

    pub fn generator(&self) -> &[Complex] {
        &self.generator
    }

    /// `v(x − y)` for lexicographic indices `x`, `y`.
    pub fn entry(&self, x: usize, y: usize) -> Result<Complex> {
        let g = &self.group;
        let ex = g.element_at(x)?;
        let ey = g.element_at(y)?;
        Ok(self.generator[g.index_of(&g.sub(&ex, &ey)?)?])
    }

    pub fn materialize(&self, cap: usize) -> Result<DenseMatrix> {
        let n = self.group.order();
        check_cap("G-circulant", n, cap)?;
        let diff = self.group.difference_table();
        Ok(DenseMatrix::from_fn(n, n, |x, y| self.generator[diff[x * n + y]]))
    }

    /// Splits `C` over `Z_k × G'` into the `G'`-circulants `C_0, …, C_{k−1}`
    /// with `C = Σ_i P^i ⊗ C_{(k−i) mod k}`.
    ///
    /// `C_m` is the block in block-row 0, block-column `k − m`; its generator
    /// is the slice of `v` whose first coordinate equals `m`.
    pub fn block_decompose(&self) -> Result<Vec<GCirculant>> {
        if self.group.rank() < 2 {
            return Err(Error::invalid(format!(
                "block decomposition needs at least two factors, {} has {}",
                self.group,
                self.group.rank()
            )));
        }
        let (k, rest) = self.group.split_first().expect("rank checked above");
        let m = rest.order();
        Ok((0..k)
            .map(|i| GCirculant {
                group: rest.clone(),
                generator: self.generator[i * m..(i + 1) * m].to_vec(),
            })
            .collect())
    }
}

/// `Σ_i P^i ⊗ C_{(k−i) mod k}` computed densely. Oracle-scale only.
pub fn reconstruct_from_blocks(blocks: &[GCirculant], cap: usize) -> Result<DenseMatrix> {
    let k = blocks.len();
    if k == 0 {
        return Err(Error::invalid("no blocks to reconstruct from"));
    }
    let side = k * blocks[0].group.order();
    check_cap("block reconstruction", side, cap)?;
    let p = shift_matrix(k)?;
    let mut acc = DenseMatrix::zeros(side, side);
    let mut p_pow = DenseMatrix::identity(k);
    for i in 0..k {
        let block = blocks[(k - i) % k].materialize(cap)?;
        acc = acc.add(&p_pow.kron(&block))?;
        p_pow = p_pow.mat_mul(&p)?;
    }
    Ok(acc)
}

/// Group convolution `(v∗u)(x) = Σ_y v(x − y)·u(y)` in O(|G|²).
pub fn g_naive_convolve(
    group: &FiniteAbelianGroup,
    v: &[Complex],
    u: &[Complex],
) -> Result<Vec<Complex>> {
    let n = group.order();
    check_len(n, v.len())?;
    check_len(n, u.len())?;
    let diff = group.difference_table();
    Ok((0..n)
        .map(|x| (0..n).map(|y| v[diff[x * n + y]] * u[y]).sum())
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::DEFAULT_ORACLE_CAP as CAP;

    fn reals(v: &[f64]) -> Vec<Complex> {
        v.iter().map(|&x| Complex::new(x, 0.0)).collect()
    }

    fn delta(n: usize, at: usize) -> Vec<Complex> {
        let mut v = vec![Complex::new(0.0, 0.0); n];
        v[at] = Complex::new(1.0, 0.0);
        v
    }

    #[test]
    fn circulant_of_123() {
        let c = CirculantMatrix::new(reals(&[1.0, 2.0, 3.0])).unwrap();
        let expected =
            DenseMatrix::from_real_rows(&[&[1.0, 3.0, 2.0], &[2.0, 1.0, 3.0], &[3.0, 2.0, 1.0]])
                .unwrap();
        assert_eq!(c.materialize(CAP).unwrap(), expected);
        assert_eq!(c.entry(0, 1).unwrap(), Complex::new(3.0, 0.0));
        assert!(c.entry(3, 0).is_err());
        assert!(circulant_entry(&reals(&[1.0]), 0, 1).is_err());
    }

    #[test]
    fn delta_generators() {
        let c = CirculantMatrix::new(delta(5, 0)).unwrap();
        assert_eq!(c.materialize(CAP).unwrap(), DenseMatrix::identity(5));
        let c = CirculantMatrix::new(delta(3, 1)).unwrap();
        assert_eq!(c.materialize(CAP).unwrap(), shift_matrix(3).unwrap().transpose());
    }

    #[test]
    fn materialize_respects_cap() {
        let c = CirculantMatrix::new(delta(10, 0)).unwrap();
        assert!(matches!(c.materialize(9), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn shift_matrix_examples() {
        let p = shift_matrix(3).unwrap();
        let expected =
            DenseMatrix::from_real_rows(&[&[0.0, 1.0, 0.0], &[0.0, 0.0, 1.0], &[1.0, 0.0, 0.0]])
                .unwrap();
        assert_eq!(p, expected);
        let x = vec![Complex::new(1.0, 1.0), Complex::new(2.0, 0.0), Complex::new(0.0, 3.0)];
        assert_eq!(p.mat_vec(&x).unwrap(), vec![x[1], x[2], x[0]]);
        assert_eq!(p.pow(3).unwrap(), DenseMatrix::identity(3));
        assert!(shift_matrix(0).is_err());
    }

    #[test]
    fn power_decomposition_examples() {
        assert_eq!(decompose_in_powers_of_p(&reals(&[1.0, 2.0, 3.0])), reals(&[1.0, 3.0, 2.0]));
        assert_eq!(decompose_in_powers_of_p(&reals(&[5.0])), reals(&[5.0]));
        assert_eq!(
            decompose_in_powers_of_p(&reals(&[0.0, 0.0, 1.0, 0.0])),
            reals(&[0.0, 0.0, 1.0, 0.0])
        );
    }

    #[test]
    fn power_decomposition_reconstructs() {
        let c = reals(&[1.0, 2.0, 3.0]);
        let a = decompose_in_powers_of_p(&c);
        let p = shift_matrix(3).unwrap();
        let mut sum = DenseMatrix::zeros(3, 3);
        for (m, &coef) in a.iter().enumerate() {
            sum = sum.add(&p.pow(m as u32).unwrap().scale(coef)).unwrap();
        }
        assert_eq!(sum, CirculantMatrix::new(c).unwrap().materialize(CAP).unwrap());
    }

    #[test]
    fn naive_convolve_examples() {
        let c = reals(&[1.0, 2.0, 3.0]);
        assert_eq!(naive_convolve(&c, &delta(3, 0)).unwrap(), c);
        assert_eq!(naive_convolve(&c, &reals(&[1.0, 1.0, 1.0])).unwrap(), reals(&[6.0; 3]));
        let b = reals(&[1.0, 1.0, 0.0, 0.0]);
        assert_eq!(naive_convolve(&b, &b).unwrap(), reals(&[1.0, 2.0, 1.0, 0.0]));
        assert!(naive_convolve(&c, &b).is_err());
    }

    #[test]
    fn g_naive_convolve_examples() {
        let g = FiniteAbelianGroup::new(&[2, 2]).unwrap();
        let v = reals(&[1.0, -2.0, 0.5, 4.0]);
        assert_eq!(g_naive_convolve(&g, &v, &delta(4, 0)).unwrap(), v);
        // (1,0) has index 2; (1,0) + (1,0) = (0,0)
        assert_eq!(g_naive_convolve(&g, &delta(4, 2), &delta(4, 2)).unwrap(), delta(4, 0));

        let z5 = FiniteAbelianGroup::cyclic(5).unwrap();
        let c = reals(&[1.0, 2.0, 3.0, 4.0, 5.0]);
        let d = reals(&[0.0, 1.0, -1.0, 2.0, 0.5]);
        assert_eq!(g_naive_convolve(&z5, &c, &d).unwrap(), naive_convolve(&c, &d).unwrap());
        assert!(g_naive_convolve(&g, &v, &c).is_err());
    }

    /// Symbolic placement check: the generator `a..f = 1..6` makes every
    /// entry identify which symbol sits there.
    #[test]
    fn z3_by_z2_example_matrix() {
        let g = FiniteAbelianGroup::new(&[3, 2]).unwrap();
        let gc = GCirculant::new(g, reals(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0])).unwrap();
        let (a, b, c, d, e, f) = (1.0, 2.0, 3.0, 4.0, 5.0, 6.0);
        let expected = DenseMatrix::from_real_rows(&[
            &[a, b, e, f, c, d],
            &[b, a, f, e, d, c],
            &[c, d, a, b, e, f],
            &[d, c, b, a, f, e],
            &[e, f, c, d, a, b],
            &[f, e, d, c, b, a],
        ])
        .unwrap();
        assert_eq!(gc.materialize(CAP).unwrap(), expected);
        assert_eq!(gc.entry(0, 2).unwrap(), Complex::new(e, 0.0));
    }

    #[test]
    fn g_circulant_specializations() {
        let g = FiniteAbelianGroup::new(&[3, 2]).unwrap();
        let id = GCirculant::new(g.clone(), delta(6, 0)).unwrap();
        assert_eq!(id.materialize(CAP).unwrap(), DenseMatrix::identity(6));

        let z4 = FiniteAbelianGroup::cyclic(4).unwrap();
        let v = reals(&[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(
            GCirculant::new(z4, v.clone()).unwrap().materialize(CAP).unwrap(),
            CirculantMatrix::new(v).unwrap().materialize(CAP).unwrap()
        );
        assert!(GCirculant::new(g.clone(), delta(5, 0)).is_err());
        assert!(matches!(id.materialize(5), Err(Error::ResourceLimit { .. })));
    }

    #[test]
    fn blocks_of_example() {
        let g = FiniteAbelianGroup::new(&[3, 2]).unwrap();
        let gc = GCirculant::new(g, reals(&[1.0, 2.0, 3.0, 4.0, 5.0, 6.0])).unwrap();
        let blocks = gc.block_decompose().unwrap();
        let dense: Vec<_> = blocks.iter().map(|b| b.materialize(CAP).unwrap()).collect();
        assert_eq!(dense[0], DenseMatrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 1.0]]).unwrap());
        assert_eq!(dense[1], DenseMatrix::from_real_rows(&[&[3.0, 4.0], &[4.0, 3.0]]).unwrap());
        assert_eq!(dense[2], DenseMatrix::from_real_rows(&[&[5.0, 6.0], &[6.0, 5.0]]).unwrap());
        assert_eq!(
            reconstruct_from_blocks(&blocks, CAP).unwrap(),
            gc.materialize(CAP).unwrap()
        );
    }

    #[test]
    fn blocks_of_identity() {
        let g = FiniteAbelianGroup::new(&[2, 2, 3]).unwrap();
        let blocks = GCirculant::new(g, delta(12, 0)).unwrap().block_decompose().unwrap();
        assert_eq!(blocks.len(), 2);
        assert_eq!(blocks[0].materialize(CAP).unwrap(), DenseMatrix::identity(6));
        assert!(blocks[1].generator().iter().all(|z| *z == Complex::new(0.0, 0.0)));
    }

    #[test]
    fn blocks_need_two_factors() {
        let z4 = FiniteAbelianGroup::cyclic(4).unwrap();
        let gc = GCirculant::new(z4, delta(4, 0)).unwrap();
        assert!(matches!(gc.block_decompose(), Err(Error::InvalidArgument(_))));
    }
}
