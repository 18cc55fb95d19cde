use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};

use super::scalar::{Domain, Scalar};

/// Exponent vector of `x_1^{a_1} ... x_n^{a_n}`.
///
/// Ordered by graded reverse lexicographic order with `x_1 > x_2 > ... > x_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn one(n: usize) -> Self {
        Monomial(vec![0; n])
    }

    /// The variable `x_i`, 1-based.
    pub fn var(n: usize, i: usize) -> Self {
        let mut e = vec![0; n];
        e[i - 1] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn rank(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// Multiplies by the 1-based variable `x_i` in place.
    pub fn mul_var(&mut self, i: usize) {
        self.0[i - 1] += 1;
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                if a != b {
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// All monomials of degree `e` in `n` variables, largest first.
pub fn monomials_of_degree(n: usize, e: i64) -> Vec<Monomial> {
    if e < 0 {
        return Vec::new();
    }
    if n == 0 {
        return if e == 0 { vec![Monomial(Vec::new())] } else { Vec::new() };
    }
    let mut out = Vec::new();
    let mut cur = vec![0u32; n];
    fill_monomials(e as u32, 0, &mut cur, &mut out);
    out.sort_by(|a, b| b.cmp(a));
    out
}

fn fill_monomials(left: u32, pos: usize, cur: &mut [u32], out: &mut Vec<Monomial>) {
    if pos == cur.len() - 1 {
        cur[pos] = left;
        out.push(Monomial(cur.to_vec()));
        cur[pos] = 0;
        return;
    }
    for a in 0..=left {
        cur[pos] = a;
        fill_monomials(left - a, pos + 1, cur, out);
    }
    cur[pos] = 0;
}

/// Number of monomials of degree `e` in `n` variables.
pub fn count_monomials(n: usize, e: i64) -> usize {
    if e < 0 {
        return 0;
    }
    if n == 0 {
        return usize::from(e == 0);
    }
    // C(e + n - 1, n - 1)
    let e = e as usize;
    let mut acc: u128 = 1;
    for i in 1..n {
        acc = acc * (e + i) as u128 / i as u128;
    }
    acc as usize
}

/// A polynomial in `n` variables with exact coefficients.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Polynomial {
    n: usize,
    domain: Domain,
    terms: BTreeMap<Monomial, Scalar>,
}

/// Binary operation selector for [`poly_arith`].
#[derive(Clone, Debug)]
pub enum PolyOp {
    Add,
    Mul,
    Scale(Scalar),
}

/// Checked polynomial arithmetic; `Scale` ignores `q`.
pub fn poly_arith(p: &Polynomial, q: &Polynomial, op: PolyOp) -> Result<Polynomial> {
    match op {
        PolyOp::Add => p.checked_add(q),
        PolyOp::Mul => p.checked_mul(q),
        PolyOp::Scale(c) => p.checked_scale(&c),
    }
}

impl Polynomial {
    pub fn zero(n: usize, domain: Domain) -> Self {
        Polynomial {
            n,
            domain,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(n: usize, c: Scalar) -> Self {
        Polynomial::term(Monomial::one(n), c)
    }

    pub fn term(m: Monomial, c: Scalar) -> Self {
        let mut p = Polynomial::zero(m.rank(), c.domain());
        if !c.is_zero() {
            p.terms.insert(m, c);
        }
        p
    }

    /// The variable `x_i` (1-based).
    pub fn var(n: usize, i: usize, domain: Domain) -> Self {
        Polynomial::term(Monomial::var(n, i), Scalar::one(domain))
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms from largest to smallest monomial.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Scalar)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> Scalar {
        self.terms.get(m).cloned().unwrap_or_else(|| Scalar::zero(self.domain))
    }

    /// The common degree of all terms, or `None` if the polynomial is zero
    /// or not homogeneous.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut it = self.terms.keys().map(Monomial::degree);
        let first = it.next()?;
        it.all(|d| d == first).then_some(first)
    }

    /// Adds `c * m` in place.
    pub fn add_term(&mut self, m: Monomial, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(m.rank(), self.n);
        match self.terms.get_mut(&m) {
            Some(v) => {
                *v = &*v + c;
                if v.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    fn check(&self, other: &Polynomial) -> Result<()> {
        if self.domain != other.domain {
            return Err(Error::DomainMismatch(self.domain, other.domain));
        }
        if self.n != other.n {
            return Err(Error::RankMismatch(self.n, other.n));
        }
        Ok(())
    }

    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.checked_add(&other.neg())
    }

    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check(other)?;
        let mut out = Polynomial::zero(self.n, self.domain);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                out.add_term(a.mul(b), &(x * y));
            }
        }
        Ok(out)
    }

    pub fn checked_scale(&self, c: &Scalar) -> Result<Polynomial> {
        if c.domain() != self.domain {
            return Err(Error::DomainMismatch(self.domain, c.domain()));
        }
        Ok(self.scale(c))
    }

    pub(crate) fn scale(&self, c: &Scalar) -> Polynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, v)| (m.clone(), v * c))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        Polynomial {
            n: self.n,
            domain: self.domain,
            terms,
        }
    }

    pub fn neg(&self) -> Polynomial {
        let terms = self.terms.iter().map(|(m, v)| (m.clone(), -v)).collect();
        Polynomial {
            n: self.n,
            domain: self.domain,
            terms,
        }
    }

    /// Coefficient-wise conversion to another domain, dropping terms that become zero.
    pub fn convert(&self, d: Domain) -> Result<Polynomial> {
        let mut out = Polynomial::zero(self.n, d);
        for (m, c) in &self.terms {
            out.add_term(m.clone(), &c.convert(d)?);
        }
        Ok(out)
    }

    /// Parses the textual form produced by `Display`, e.g. `-1/2*x1*x3^2+x2`.
    /// The coefficient may be omitted when it is 1.
    pub fn parse(s: &str, n: usize, domain: Domain) -> Result<Polynomial> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let mut out = Polynomial::zero(n, domain);
        if s == "0" {
            return Ok(out);
        }
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let mut chunks = Vec::new();
        let mut start = 0;
        for (i, ch) in s.char_indices() {
            if (ch == '+' || ch == '-') && i > 0 {
                chunks.push(&s[start..i]);
                start = i;
            }
        }
        chunks.push(&s[start..]);
        for chunk in chunks {
            let (neg, body) = match chunk.as_bytes().first() {
                Some(b'-') => (true, &chunk[1..]),
                Some(b'+') => (false, &chunk[1..]),
                _ => (false, chunk),
            };
            let mut factors = body.split('*').peekable();
            let mut coeff = Scalar::one(domain);
            if let Some(first) = factors.peek() {
                if !first.starts_with('x') {
                    coeff = Scalar::parse(first, domain)?;
                    factors.next();
                }
            }
            let mut m = Monomial::one(n);
            for f in factors {
                let bad = || Error::Parse(format!("bad factor {f:?}"));
                let rest = f.strip_prefix('x').ok_or_else(bad)?;
                let (var, exp) = match rest.split_once('^') {
                    Some((v, e)) => (v, e.parse::<u32>().map_err(|_| bad())?),
                    None => (rest, 1),
                };
                let var: usize = var.parse().map_err(|_| bad())?;
                if var == 0 || var > n {
                    return Err(Error::Parse(format!("variable x{var} outside x1..x{n}")));
                }
                m.0[var - 1] += exp;
            }
            if neg {
                coeff = -coeff;
            }
            out.add_term(m, &coeff);
        }
        Ok(out)
    }

    /// Compact Macaulay2-style rendering (`3a`, `-1/2b2`, `ab`) using the
    /// given variable names.
    pub fn to_m2_string(&self, vars: &[String]) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut s = String::new();
        for (k, (m, c)) in self.terms().enumerate() {
            let (neg, mag) = sign_and_magnitude(c);
            if neg {
                s.push('-');
            } else if k > 0 {
                s.push('+');
            }
            let is_const = m.degree() == 0;
            if mag != "1" || is_const {
                s.push_str(&mag);
            }
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    s.push_str(&vars[i]);
                    if e > 1 {
                        s.push_str(&e.to_string());
                    }
                }
            }
        }
        s
    }
}

fn sign_and_magnitude(c: &Scalar) -> (bool, String) {
    let s = c.to_string();
    match s.strip_prefix('-') {
        Some(rest) => (true, rest.to_string()),
        None => (false, s),
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let (neg, mag) = sign_and_magnitude(c);
            if neg {
                write!(f, "-")?;
            } else if k > 0 {
                write!(f, "+")?;
            }
            write!(f, "{mag}")?;
            for (i, &e) in m.exponents().iter().enumerate() {
                match e {
                    0 => {}
                    1 => write!(f, "*x{}", i + 1)?,
                    _ => write!(f, "*x{}^{}", i + 1, e)?,
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Domain = Domain::Rational;

    fn x(i: usize) -> Polynomial {
        Polynomial::var(3, i, Q)
    }

    #[test]
    fn difference_of_squares() {
        let a = x(1).checked_add(&x(2)).unwrap();
        let b = x(1).checked_sub(&x(2)).unwrap();
        let p = poly_arith(&a, &b, PolyOp::Mul).unwrap();
        assert_eq!(p.to_string(), "1*x1^2-1*x2^2");
    }

    #[test]
    fn additive_identity_and_scaling() {
        let p = Polynomial::parse("1/2*x1", 3, Q).unwrap();
        assert_eq!(poly_arith(&p, &Polynomial::zero(3, Q), PolyOp::Add).unwrap(), p);
        let two = Scalar::from_int(Q, 2);
        assert_eq!(poly_arith(&p, &p, PolyOp::Scale(two)).unwrap(), x(1));
    }

    #[test]
    fn domain_mismatch_is_an_error() {
        let p = Polynomial::var(3, 1, Domain::Modular(2));
        assert!(matches!(x(1).checked_add(&p), Err(Error::DomainMismatch(..))));
        assert!(matches!(
            x(1).checked_add(&Polynomial::var(2, 1, Q)),
            Err(Error::RankMismatch(..))
        ));
    }

    #[test]
    fn grevlex_basis_order() {
        let ms: Vec<String> = monomials_of_degree(3, 2)
            .into_iter()
            .map(|m| Polynomial::term(m, Scalar::one(Q)).to_m2_string(&["a".into(), "b".into(), "c".into()]))
            .collect();
        assert_eq!(ms, ["a2", "ab", "b2", "ac", "bc", "c2"]);
        assert_eq!(count_monomials(3, 2), 6);
        assert_eq!(count_monomials(4, 3), 20);
        assert_eq!(count_monomials(3, -1), 0);
    }

    #[test]
    fn display_and_parse() {
        let p = Polynomial::parse("-1/2*x1*x3^2 + x2^3", 3, Q).unwrap();
        assert_eq!(p.to_string(), "1*x2^3-1/2*x1*x3^2");
        assert_eq!(Polynomial::parse(&p.to_string(), 3, Q).unwrap(), p);
        assert_eq!(
            Polynomial::parse("-1/2*x1*x3^2", 3, Q).unwrap().to_string(),
            "-1/2*x1*x3^2"
        );
        assert!(Polynomial::parse("x4", 3, Q).is_err());
        assert!(Polynomial::parse("2*y", 3, Q).is_err());
        let v: Vec<String> = ["a", "b", "c"].iter().map(|s| s.to_string()).collect();
        assert_eq!(
            Polynomial::parse("-1/2*x1*x2", 3, Q).unwrap().to_m2_string(&v),
            "-1/2ab"
        );
        assert_eq!(Polynomial::parse("3", 3, Q).unwrap().to_string(), "3");
    }

    #[test]
    fn reduction_mod_p_drops_terms() {
        let p = Polynomial::parse("3*x1+2*x2-x3", 3, Domain::Integer).unwrap();
        assert_eq!(p.convert(Domain::Modular(2)).unwrap().to_string(), "1*x1+1*x3");
    }
}
