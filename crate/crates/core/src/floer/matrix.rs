//! Dense matrices over the Novikov field with fraction-free elimination.
//!
//! Exact inputs are exact Novikov polynomials, which form an integral
//! domain; elimination multiplies rows instead of dividing, and only
//! divides when the division is exact. Zero decisions are therefore exact,
//! and an entry with no known term above its floor stops the computation.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::novikov::NovikovElement;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<NovikovElement>,
}

/// Exact zero test; an element whose every known term is gone but which
/// still carries a floor cannot be decided.
pub fn certified_zero(x: &NovikovElement) -> Result<bool> {
    if x.is_zero() {
        Ok(true)
    } else if x.has_no_known_terms() {
        Err(Error::FloorExhausted(format!(
            "cannot decide whether {x} vanishes; raise --depth"
        )))
    } else {
        Ok(false)
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![NovikovElement::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, NovikovElement::one());
        }
        m
    }

    /// Scalar multiple of the identity.
    pub fn scalar(n: usize, c: &NovikovElement) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, c.clone());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<NovikovElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        if rows.iter().any(|x| x.len() != c) {
            return Err(Error::DimensionMismatch("ragged matrix rows".into()));
        }
        Ok(Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        let v = rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&x| NovikovElement::constant(Rational::from_integer(x.into())))
                    .collect()
            })
            .collect();
        Self::from_rows(v).expect("rectangular literal")
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> &NovikovElement {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: NovikovElement) {
        self.data[i * self.cols + j] = x;
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &NovikovElement)> {
        self.data
            .iter()
            .enumerate()
            .map(move |(k, x)| (k / self.cols.max(1), k % self.cols.max(1), x))
    }

    pub fn is_exact(&self) -> bool {
        self.data.iter().all(|x| x.is_exact())
    }

    pub fn row(&self, i: usize) -> Matrix {
        Matrix {
            rows: 1,
            cols: self.cols,
            data: self.data[i * self.cols..(i + 1) * self.cols].to_vec(),
        }
    }

    pub fn col(&self, j: usize) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: 1,
            data: (0..self.rows).map(|i| self.get(i, j).clone()).collect(),
        }
    }

    pub fn select_rows(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(idx.len(), self.cols);
        for (a, &i) in idx.iter().enumerate() {
            for j in 0..self.cols {
                m.set(a, j, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn select_cols(&self, idx: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, idx.len());
        for i in 0..self.rows {
            for (b, &j) in idx.iter().enumerate() {
                m.set(i, b, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn transpose(&self) -> Matrix {
        let mut m = Matrix::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(j, i, self.get(i, j).clone());
            }
        }
        m
    }

    pub fn map(&self, f: impl Fn(&NovikovElement) -> NovikovElement) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn neg(&self) -> Matrix {
        self.map(|x| x.neg())
    }

    pub fn scale(&self, c: &Rational) -> Matrix {
        self.map(|x| x.scale(c))
    }

    fn check_same(&self, other: &Matrix, op: &str) -> Result<()> {
        if self.shape() != other.shape() {
            return Err(Error::DimensionMismatch(format!(
                "{op}: {:?} vs {:?}",
                self.shape(),
                other.shape()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same(other, "add")?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.add(b)).collect(),
        })
    }

    pub fn sub(&self, other: &Matrix) -> Result<Matrix> {
        self.check_same(other, "sub")?;
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.sub(b)).collect(),
        })
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "product of {:?} and {:?}",
                self.shape(),
                other.shape()
            )));
        }
        let mut m = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if b.is_zero() {
                        continue;
                    }
                    let v = m.get(i, j).add(&a.mul(b));
                    m.set(i, j, v);
                }
            }
        }
        Ok(m)
    }

    pub fn hstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.rows != other.rows {
            return Err(Error::DimensionMismatch("hstack row counts differ".into()));
        }
        let mut m = Matrix::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        Ok(m)
    }

    pub fn vstack(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.cols {
            return Err(Error::DimensionMismatch("vstack column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Ok(Matrix {
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn trace(&self) -> NovikovElement {
        (0..self.rows.min(self.cols)).fold(NovikovElement::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    /// First nonzero entry as `(row, col, value)`, for diagnostics.
    pub fn first_nonzero(&self) -> Option<(usize, usize, NovikovElement)> {
        self.entries()
            .find(|(_, _, x)| !x.has_no_known_terms())
            .map(|(i, j, x)| (i, j, x.clone()))
    }

    /// True when every entry is zero above its floor.
    pub fn vanishes(&self) -> bool {
        self.data.iter().all(|x| x.has_no_known_terms())
    }

    pub fn rank(&self) -> Result<usize> {
        Ok(self.echelon()?.pivots.len())
    }

    /// Fraction-free Gauss-Jordan reduction.
    pub fn echelon(&self) -> Result<Echelon> {
        let mut a = self.clone();
        let mut pivots: Vec<(usize, usize)> = Vec::new();
        let mut prev = NovikovElement::one();
        let mut r = 0;
        for c in 0..a.cols {
            if r == a.rows {
                break;
            }
            // Largest leading exponent among certified nonzero entries.
            let mut best: Option<(usize, Rational)> = None;
            let mut undecided = None;
            for i in r..a.rows {
                let x = a.get(i, c);
                if x.is_zero() {
                    continue;
                }
                match x.leading() {
                    Ok((e, _)) => {
                        if best.as_ref().map_or(true, |(_, b)| &e > b) {
                            best = Some((i, e));
                        }
                    }
                    Err(_) => undecided = Some(x.clone()),
                }
            }
            let p = match (best, undecided) {
                (Some((p, _)), _) => p,
                (None, Some(x)) => {
                    certified_zero(&x)?;
                    unreachable!()
                }
                (None, None) => continue,
            };
            a.swap_rows(p, r);
            let piv = a.get(r, c).clone();
            for i in 0..a.rows {
                if i == r || a.get(i, c).is_zero() {
                    continue;
                }
                let f = a.get(i, c).clone();
                for j in 0..a.cols {
                    let v = a.get(i, j).mul(&piv).sub(&f.mul(a.get(r, j)));
                    a.set(i, j, v);
                }
                a.set(i, c, NovikovElement::zero());
                if !a.remove_row_content(i) {
                    a.try_divide_row(i, &prev);
                }
            }
            pivots.push((r, c));
            prev = a.get(r, c).clone();
            r += 1;
        }
        Ok(Echelon { reduced: a, pivots })
    }

    /// Divides an exact row by the gcd of its entries and scales it so its
    /// first nonzero entry has leading coefficient 1. Returns false, leaving
    /// the row alone, if some entry is truncated.
    fn remove_row_content(&mut self, i: usize) -> bool {
        let row = &self.data[i * self.cols..(i + 1) * self.cols];
        let mut g = NovikovElement::zero();
        for x in row {
            match g.gcd(x) {
                Some(h) => g = h,
                None => return false,
            }
        }
        let Some((_, lead)) = row.iter().find(|x| !x.is_zero()).and_then(|x| x.leading().ok()) else {
            return true;
        };
        let (_, glead) = g.leading().expect("nonzero row has nonzero gcd");
        let s = glead / lead;
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            let q = self.data[idx].div_exact(&g).expect("gcd divides every entry");
            self.data[idx] = q.scale(&s);
        }
        true
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    /// Divides row `i` by `d` if every entry is exactly divisible.
    fn try_divide_row(&mut self, i: usize, d: &NovikovElement) {
        if d == &NovikovElement::one() {
            return;
        }
        let mut out = Vec::with_capacity(self.cols);
        for j in 0..self.cols {
            match self.get(i, j).div_exact(d) {
                Some(q) => out.push(q),
                None => return,
            }
        }
        for (j, q) in out.into_iter().enumerate() {
            self.set(i, j, q);
        }
    }

    /// Columns spanning the kernel, scaled to avoid division.
    pub fn kernel_basis(&self) -> Result<Matrix> {
        let ech = self.echelon()?;
        let pivot_cols: Vec<usize> = ech.pivots.iter().map(|&(_, c)| c).collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_cols.contains(c)).collect();
        let mut k = Matrix::zeros(self.cols, free.len());
        let pivs: Vec<NovikovElement> = ech.pivots.iter().map(|&(r, c)| ech.reduced.get(r, c).clone()).collect();
        let all_equal = pivs.windows(2).all(|w| w[0] == w[1]);
        for (b, &f) in free.iter().enumerate() {
            if all_equal {
                let p = pivs.first().cloned().unwrap_or_else(NovikovElement::one);
                k.set(f, b, p);
                for &(r, c) in &ech.pivots {
                    k.set(c, b, ech.reduced.get(r, f).neg());
                }
            } else if let Some(l) = lcm_all(&pivs) {
                k.set(f, b, l.clone());
                for (idx, &(r, c)) in ech.pivots.iter().enumerate() {
                    let cof = l.div_exact(&pivs[idx]).expect("lcm is a multiple");
                    k.set(c, b, ech.reduced.get(r, f).mul(&cof).neg());
                }
            } else {
                let total = pivs.iter().fold(NovikovElement::one(), |acc, p| acc.mul(p));
                k.set(f, b, total);
                for (idx, &(r, c)) in ech.pivots.iter().enumerate() {
                    let others = pivs
                        .iter()
                        .enumerate()
                        .filter(|&(s, _)| s != idx)
                        .fold(NovikovElement::one(), |acc, (_, p)| acc.mul(p));
                    k.set(c, b, ech.reduced.get(r, f).mul(&others).neg());
                }
            }
        }
        Ok(k)
    }

    /// A basis of the column space, taken from the original columns.
    pub fn column_basis(&self) -> Result<Matrix> {
        let ech = self.echelon()?;
        let cols: Vec<usize> = ech.pivots.iter().map(|&(_, c)| c).collect();
        Ok(self.select_cols(&cols))
    }

    /// Determinant by fraction-free elimination. Exact when the entries
    /// are; otherwise pivot divisions are expanded to `depth`.
    pub fn determinant(&self, depth: u32) -> Result<NovikovElement> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch("determinant of a non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(NovikovElement::one());
        }
        let mut a = self.clone();
        let mut sign = Rational::from_integer(1.into());
        let mut prev = NovikovElement::one();
        for k in 0..n {
            let mut p = None;
            for i in k..n {
                if !certified_zero(a.get(i, k))? {
                    p = Some(i);
                    break;
                }
            }
            let Some(p) = p else {
                return Ok(NovikovElement::zero());
            };
            if p != k {
                a.swap_rows(p, k);
                sign = -sign;
            }
            let piv = a.get(k, k).clone();
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = a.get(i, j).mul(&piv).sub(&a.get(i, k).mul(a.get(k, j)));
                    a.set(i, j, v.div(&prev, depth)?);
                }
                a.set(i, k, NovikovElement::zero());
            }
            prev = piv;
        }
        Ok(a.get(n - 1, n - 1).scale(&sign))
    }

    /// Replaces every coefficient `T^e` by `T^{-e}`. Only exact entries
    /// can be reflected.
    pub fn reflect_exponents(&self) -> Result<Matrix> {
        let mut out = Matrix::zeros(self.rows, self.cols);
        for (i, j, x) in self.entries() {
            if !x.is_exact() {
                return Err(Error::Domain(format!(
                    "cannot reflect the truncated entry {x}; duality needs exact input"
                )));
            }
            let y = NovikovElement::from_terms(x.terms().map(|(e, c)| (-e, c.clone())), None);
            out.set(i, j, y);
        }
        Ok(out)
    }
}

/// Result of [`Matrix::echelon`]: the reduced matrix and `(row, col)` of
/// every pivot.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub reduced: Matrix,
    pub pivots: Vec<(usize, usize)>,
}

/// A quotient `num/den` of Novikov elements, kept unevaluated so that sums
/// of traces need only one division.
#[derive(Debug, Clone, PartialEq)]
pub struct Fraction {
    pub num: NovikovElement,
    pub den: NovikovElement,
}

/// Least common multiple of exact elements, `None` if any is truncated.
fn lcm_all(xs: &[NovikovElement]) -> Option<NovikovElement> {
    let mut l = NovikovElement::one();
    for x in xs {
        let g = l.gcd(x)?;
        l = l.mul(&x.div_exact(&g)?);
    }
    Some(l)
}

impl Fraction {
    pub fn zero() -> Self {
        Fraction {
            num: NovikovElement::zero(),
            den: NovikovElement::one(),
        }
    }

    pub fn from_element(x: NovikovElement) -> Self {
        Fraction {
            num: x,
            den: NovikovElement::one(),
        }
    }

    pub fn add(&self, o: &Fraction) -> Fraction {
        if self.den == o.den {
            return Fraction {
                num: self.num.add(&o.num),
                den: self.den.clone(),
            };
        }
        Fraction {
            num: self.num.mul(&o.den).add(&o.num.mul(&self.den)),
            den: self.den.mul(&o.den),
        }
    }

    pub fn neg(&self) -> Fraction {
        Fraction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, o: &Fraction) -> Fraction {
        self.add(&o.neg())
    }

    /// Zero above the floor of the numerator.
    pub fn vanishes(&self) -> bool {
        self.num.has_no_known_terms()
    }

    pub fn evaluate(&self, depth: u32) -> Result<NovikovElement> {
        self.num.div(&self.den, depth)
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}
