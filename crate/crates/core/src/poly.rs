//! Sparse integer polynomials in the simple roots `α_0, …, α_l`.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::cartan::Gcm;

/// Keys are exponent vectors; `BTreeMap` order is lex with `α_0` largest, so
/// the last entry is the leading term.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl Poly {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c.into());
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    /// `Σ c_j α_j`.
    pub fn linear(coeffs: &[i64]) -> Self {
        let n = coeffs.len();
        let mut p = Self::zero(n);
        for (j, &c) in coeffs.iter().enumerate() {
            let mut e = vec![0; n];
            e[j] = 1;
            p.add_term(e, c.into());
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &BigInt)> {
        self.terms.iter().map(|(k, v)| (k.as_slice(), v))
    }

    /// The constant term.
    pub fn constant_term(&self) -> BigInt {
        self.terms
            .get(&vec![0; self.nvars])
            .cloned()
            .unwrap_or_else(BigInt::zero)
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    pub fn is_homogeneous_of_degree(&self, d: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == d)
    }

    fn add_term(&mut self, exps: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(exps) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (k, v) in &other.terms {
            out.add_term(k.clone(), -v.clone());
        }
        out
    }

    pub fn neg(&self) -> Poly {
        Poly {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(k, v)| (k.clone(), -v.clone())).collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        let mut out = Poly::zero(self.nvars);
        for (k, v) in &self.terms {
            out.add_term(k.clone(), v * c);
        }
        out
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.nvars.max(other.nvars));
        for (ka, va) in &self.terms {
            for (kb, vb) in &other.terms {
                let k = ka.iter().zip(kb).map(|(a, b)| a + b).collect();
                out.add_term(k, va * vb);
            }
        }
        out
    }

    /// Exact quotient by a nonzero linear form, or `None` if it does not divide.
    pub fn div_linear(&self, lin: &[i64]) -> Option<Poly> {
        let t = lin.iter().position(|&c| c != 0)?;
        let lead = BigInt::from(lin[t]);
        let divisor = Poly::linear(lin);
        let mut rem = self.clone();
        let mut quot = Poly::zero(self.nvars);
        while let Some((m, c)) = rem.terms.last_key_value() {
            if m[t] == 0 {
                return None;
            }
            let (qc, r) = c.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            let mut mono = m.clone();
            mono[t] -= 1;
            let mut step = Poly::zero(self.nvars);
            step.add_term(mono, qc);
            rem = rem.sub(&step.mul(&divisor));
            quot = quot.add(&step);
        }
        Some(quot)
    }

    /// Substitutes `α_j ↦ s_i(α_j) = α_j − a_ij α_i`.
    pub fn reflect(&self, g: &Gcm, i: usize) -> Poly {
        let n = self.nvars;
        let images: Vec<Poly> = (0..n)
            .map(|j| {
                let mut c = vec![0; n];
                c[j] += 1;
                c[i] -= g.entry(i, j);
                Poly::linear(&c)
            })
            .collect();
        let mut out = Poly::zero(n);
        for (k, v) in &self.terms {
            let mut term = Poly::constant(n, v.clone());
            for (j, &e) in k.iter().enumerate() {
                for _ in 0..e {
                    term = term.mul(&images[j]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    pub fn eval(&self, point: &[i64]) -> BigInt {
        self.terms
            .iter()
            .map(|(k, v)| {
                k.iter()
                    .zip(point)
                    .fold(v.clone(), |acc, (&e, &x)| acc * BigInt::from(x).pow(e))
            })
            .sum()
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, v) in self.terms.iter().rev() {
            let neg = v.is_negative();
            let abs = v.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let vars: Vec<String> = k
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(j, &e)| if e == 1 { format!("a{j}") } else { format!("a{j}^{e}") })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}
