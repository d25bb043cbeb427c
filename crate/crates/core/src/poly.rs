//! Sparse multivariate polynomials over ℚ.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::exactla::Scalar;

/// A polynomial in `nvars` variables `x0, x1, …` stored as exponent vector → coefficient.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, Scalar>,
}

pub type PolyInvariant = Polynomial;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ParsePolyError {
    #[error("unexpected character {0:?} at byte {1}")]
    Unexpected(char, usize),
    #[error("bad coefficient {0:?}")]
    Coefficient(String),
    #[error("variable x{0} out of range for {1} variables")]
    VariableRange(usize, usize),
    #[error("empty polynomial")]
    Empty,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Polynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: Scalar) -> Self {
        Self::monomial(vec![0; nvars], c)
    }

    pub fn monomial(exps: Vec<u32>, c: Scalar) -> Self {
        let nvars = exps.len();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        Polynomial { nvars, terms }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, Scalar::one())
    }

    /// Panics if an exponent vector has the wrong length.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, Scalar)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(e, &c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &[u32]) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_default()
    }

    fn add_term(&mut self, e: Vec<u32>, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
            Entry::Vacant(v) => {
                v.insert(c.clone());
            }
        }
    }

    /// Total degree when homogeneous; `None` for zero or inhomogeneous polynomials.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut degs = self.terms.keys().map(|e| e.iter().sum::<u32>());
        let d = degs.next()?;
        degs.all(|x| x == d).then_some(d)
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars);
        let mut p = self.clone();
        for (e, c) in &other.terms {
            p.add_term(e.clone(), c);
        }
        p
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        self.add(&other.scale(&-Scalar::one()))
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect() }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, other.nvars);
        let mut p = Polynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &other.terms {
                let e: Vec<u32> = e1.iter().zip(e2).map(|(a, b)| a + b).collect();
                p.add_term(e, &(c1 * c2));
            }
        }
        p
    }

    /// `∂/∂xᵢ`.
    pub fn partial(&self, i: usize) -> Polynomial {
        let mut p = Polynomial::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut e2 = e.clone();
                e2[i] -= 1;
                p.add_term(e2, &(c * &Scalar::from_int(e[i] as i64)));
            }
        }
        p
    }

    pub fn gradient(&self) -> Vec<Polynomial> {
        (0..self.nvars).map(|i| self.partial(i)).collect()
    }

    pub fn eval(&self, x: &[Scalar]) -> Scalar {
        assert_eq!(x.len(), self.nvars);
        self.terms
            .iter()
            .map(|(e, c)| {
                let mut t = c.clone();
                for (xi, &k) in x.iter().zip(e) {
                    if k > 0 {
                        t *= xi.pow(k);
                    }
                }
                t
            })
            .sum()
    }

    /// Applies the vector field `Σ a_ij xᵢ ∂/∂xⱼ`, with `a` given row-major (n×n).
    pub fn vector_field(&self, a: &[Scalar]) -> Polynomial {
        let n = self.nvars;
        assert_eq!(a.len(), n * n);
        let mut out = Polynomial::zero(n);
        for j in 0..n {
            let d = self.partial(j);
            if d.is_zero() {
                continue;
            }
            for i in 0..n {
                let c = &a[i * n + j];
                if !c.is_zero() {
                    out = out.add(&Polynomial::var(n, i).mul(&d).scale(c));
                }
            }
        }
        out
    }

    /// Scalar `c` with `self = c · other`, if one exists (`other` nonzero).
    pub fn ratio_to(&self, other: &Polynomial) -> Option<Scalar> {
        let (e, c0) = other.terms.iter().next()?;
        let c = &self.coeff(e) / c0;
        (self == &other.scale(&c)).then_some(c)
    }

    pub fn parse(s: &str, nvars: usize) -> Result<Polynomial, ParsePolyError> {
        let p: Polynomial = s.parse()?;
        p.with_nvars(nvars)
    }

    /// Re-embeds into `nvars` variables.
    pub fn with_nvars(&self, nvars: usize) -> Result<Polynomial, ParsePolyError> {
        let mut out = Polynomial::zero(nvars);
        for (e, c) in &self.terms {
            if let Some(i) = e.iter().enumerate().skip(nvars).find(|(_, &k)| k > 0).map(|(i, _)| i) {
                return Err(ParsePolyError::VariableRange(i, nvars));
            }
            let mut e2 = e.clone();
            e2.resize(nvars, 0);
            out.add_term(e2, c);
        }
        Ok(out)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let mono: Vec<String> = e
                .iter()
                .enumerate()
                .filter(|(_, &p)| p > 0)
                .map(|(i, &p)| if p == 1 { format!("x{i}") } else { format!("x{i}^{p}") })
                .collect();
            let neg = c.is_negative();
            let a = c.abs();
            if k > 0 {
                write!(f, "{}", if neg { " - " } else { " + " })?;
            } else if neg {
                write!(f, "-")?;
            }
            match (mono.is_empty(), a.is_one()) {
                (true, _) => write!(f, "{a}")?,
                (false, true) => write!(f, "{}", mono.join("*"))?,
                (false, false) => write!(f, "{a}*{}", mono.join("*"))?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

/// Grammar: `term (('+'|'-') term)*`, `term = [coeff '*'?] factor ('*' factor)*`,
/// `factor = 'x' index ['^' exp]`. The variable count is the largest index + 1.
impl FromStr for Polynomial {
    type Err = ParsePolyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bytes: Vec<char> = s.chars().collect();
        let mut pos = 0;
        let skip_ws = |pos: &mut usize| {
            while *pos < bytes.len() && bytes[*pos].is_whitespace() {
                *pos += 1;
            }
        };
        let read_uint = |pos: &mut usize| -> Option<u64> {
            let start = *pos;
            while *pos < bytes.len() && bytes[*pos].is_ascii_digit() {
                *pos += 1;
            }
            (start < *pos).then(|| bytes[start..*pos].iter().collect::<String>().parse().ok()).flatten()
        };
        let mut raw: Vec<(Vec<(usize, u32)>, Scalar)> = Vec::new();
        let mut sign = Scalar::one();
        skip_ws(&mut pos);
        if pos < bytes.len() && (bytes[pos] == '-' || bytes[pos] == '+') {
            if bytes[pos] == '-' {
                sign = -Scalar::one();
            }
            pos += 1;
        }
        loop {
            skip_ws(&mut pos);
            let mut coeff = sign.clone();
            let mut factors = Vec::new();
            let had_coeff = pos < bytes.len() && bytes[pos].is_ascii_digit();
            if had_coeff {
                let start = pos;
                while pos < bytes.len() && (bytes[pos].is_ascii_digit() || bytes[pos] == '/') {
                    pos += 1;
                }
                let lit: String = bytes[start..pos].iter().collect();
                let c: Scalar = lit.parse().map_err(|_| ParsePolyError::Coefficient(lit.clone()))?;
                coeff *= c;
                skip_ws(&mut pos);
                if pos < bytes.len() && bytes[pos] == '*' {
                    pos += 1;
                    skip_ws(&mut pos);
                }
            }
            while pos < bytes.len() && bytes[pos] == 'x' {
                pos += 1;
                let idx = read_uint(&mut pos)
                    .ok_or(ParsePolyError::Unexpected(bytes.get(pos).copied().unwrap_or(' '), pos))?
                    as usize;
                let mut exp = 1u32;
                skip_ws(&mut pos);
                if pos < bytes.len() && bytes[pos] == '^' {
                    pos += 1;
                    skip_ws(&mut pos);
                    exp = read_uint(&mut pos)
                        .ok_or(ParsePolyError::Unexpected(bytes.get(pos).copied().unwrap_or(' '), pos))?
                        as u32;
                }
                factors.push((idx, exp));
                skip_ws(&mut pos);
                if pos < bytes.len() && bytes[pos] == '*' {
                    pos += 1;
                    skip_ws(&mut pos);
                    if pos >= bytes.len() || bytes[pos] != 'x' {
                        return Err(ParsePolyError::Unexpected(bytes.get(pos).copied().unwrap_or(' '), pos));
                    }
                }
            }
            if !had_coeff && factors.is_empty() {
                if raw.is_empty() && pos >= bytes.len() {
                    return Err(ParsePolyError::Empty);
                }
                return Err(ParsePolyError::Unexpected(bytes.get(pos).copied().unwrap_or(' '), pos));
            }
            raw.push((factors, coeff));
            skip_ws(&mut pos);
            if pos >= bytes.len() {
                break;
            }
            match bytes[pos] {
                '+' => sign = Scalar::one(),
                '-' => sign = -Scalar::one(),
                c => return Err(ParsePolyError::Unexpected(c, pos)),
            }
            pos += 1;
            skip_ws(&mut pos);
            if pos >= bytes.len() {
                return Err(ParsePolyError::Empty);
            }
        }
        let nvars = raw.iter().flat_map(|(f, _)| f.iter().map(|(i, _)| i + 1)).max().unwrap_or(0);
        let mut p = Polynomial::zero(nvars);
        for (factors, c) in raw {
            let mut e = vec![0u32; nvars];
            for (i, k) in factors {
                e[i] += k;
            }
            p.add_term(e, &c);
        }
        Ok(p)
    }
}

impl Serialize for Polynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let v: Vec<(&Vec<u32>, &Scalar)> = self.terms.iter().collect();
        v.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Polynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let v: Vec<(Vec<u32>, Scalar)> = Vec::deserialize(deserializer)?;
        let nvars = v.first().map_or(0, |(e, _)| e.len());
        if v.iter().any(|(e, _)| e.len() != nvars) {
            return Err(serde::de::Error::custom("exponent vectors of differing length"));
        }
        Ok(Polynomial::from_terms(nvars, v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> Scalar {
        Scalar::from_int(n)
    }

    #[test]
    fn parse_and_print() {
        let p: Polynomial = "x0^2 + x1^2".parse().unwrap();
        assert_eq!(p.nvars(), 2);
        assert_eq!(p.coeff(&[2, 0]), q(1));
        assert_eq!(p.homogeneous_degree(), Some(2));
        let r: Polynomial = "3/2*x0*x1 - x2 + 2x0^3".parse().unwrap();
        assert_eq!(r.coeff(&[1, 1, 0]), Scalar::new(3, 2));
        assert_eq!(r.coeff(&[0, 0, 1]), q(-1));
        assert_eq!(r.coeff(&[3, 0, 0]), q(2));
        assert_eq!(r.to_string().parse::<Polynomial>().unwrap(), r);
        assert!("x0 +".parse::<Polynomial>().is_err());
        assert!("x0 ? x1".parse::<Polynomial>().is_err());
        assert!("x0 + + x1".parse::<Polynomial>().is_err());
        assert_eq!("".parse::<Polynomial>(), Err(ParsePolyError::Empty));
        assert_eq!("7".parse::<Polynomial>().unwrap().to_string(), "7");
        assert!(Polynomial::parse("x3", 2).is_err());
        assert_eq!(Polynomial::parse("x0", 3).unwrap().nvars(), 3);
    }

    #[test]
    fn calculus() {
        let p: Polynomial = "x0^2*x1 + x1^3".parse().unwrap();
        assert_eq!(p.partial(0), "2*x0*x1".parse().unwrap());
        assert_eq!(p.partial(1), "x0^2 + 3*x1^2".parse().unwrap());
        assert_eq!(p.eval(&[q(2), q(-1)]), q(-5));
        // Euler: Σ xᵢ∂ᵢ p = deg · p
        let euler = [q(1), q(0), q(0), q(1)];
        assert_eq!(p.vector_field(&euler), p.scale(&q(3)));
        assert_eq!(p.ratio_to(&p.scale(&q(5))), Some(Scalar::new(1, 5)));
        assert_eq!(p.ratio_to(&"x0".parse::<Polynomial>().unwrap().with_nvars(2).unwrap()), None);
    }

    #[test]
    fn rotation_kills_quadric() {
        let p: Polynomial = "x0^2 + x1^2".parse().unwrap();
        // x0∂1 − x1∂0
        let j = [q(0), q(1), q(-1), q(0)];
        assert!(p.vector_field(&j).is_zero());
    }
}
