use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_traits::{One, Signed, Zero};

use crate::{KernelError, Q};

/// The two affine charts of the cover and their overlap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Chart {
    /// u invertible: Q[u, v, u⁻¹]
    U0,
    /// v invertible: Q[u, v, v⁻¹]
    U1,
    /// both invertible
    U01,
}

impl Chart {
    pub fn admits(self, a: i32, b: i32) -> bool {
        match self {
            Chart::U0 => b >= 0,
            Chart::U1 => a >= 0,
            Chart::U01 => true,
        }
    }

    /// Can a section on `self` be restricted to `other`?
    pub fn restricts_to(self, other: Chart) -> bool {
        self == other || other == Chart::U01
    }
}

/// Weight of u^a v^b.
pub fn weight(a: i32, b: i32) -> i64 {
    4 * a as i64 + 6 * b as i64
}

/// Finite Laurent polynomial Σ c_ab u^a v^b with exact rational coefficients.
/// Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Laurent {
    terms: BTreeMap<(i32, i32), Q>,
}

impl Laurent {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(Q::one())
    }

    pub fn constant(c: Q) -> Self {
        Self::monomial(c, 0, 0)
    }

    pub fn monomial(c: Q, a: i32, b: i32) -> Self {
        let mut out = Self::zero();
        out.add_term(a, b, c);
        out
    }

    pub fn u() -> Self {
        Self::monomial(Q::one(), 1, 0)
    }

    pub fn v() -> Self {
        Self::monomial(Q::one(), 0, 1)
    }

    /// Δ = u³ − 27v²
    pub fn delta() -> Self {
        Self::from_terms([((3, 0), crate::q(1)), ((0, 2), crate::q(-27))])
    }

    pub fn from_terms<I: IntoIterator<Item = ((i32, i32), Q)>>(it: I) -> Self {
        let mut out = Self::zero();
        for ((a, b), c) in it {
            out.add_term(a, b, c);
        }
        out
    }

    pub fn add_term(&mut self, a: i32, b: i32, c: Q) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry((a, b)) {
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

    pub fn terms(&self) -> impl Iterator<Item = (&(i32, i32), &Q)> + '_ {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<(i32, i32), Q> {
        self.terms
    }

    pub fn coeff(&self, a: i32, b: i32) -> Q {
        self.terms.get(&(a, b)).cloned().unwrap_or_else(Q::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// True iff every monomial has weight `w` (vacuous for zero).
    pub fn is_homogeneous(&self, w: i64) -> bool {
        self.terms.keys().all(|&(a, b)| weight(a, b) == w)
    }

    /// The common weight of all monomials, if there is one.
    pub fn weight(&self) -> Option<i64> {
        let mut it = self.terms.keys().map(|&(a, b)| weight(a, b));
        let w = it.next()?;
        it.all(|x| x == w).then_some(w)
    }

    pub fn admits(&self, chart: Chart) -> bool {
        self.terms.keys().all(|&(a, b)| chart.admits(a, b))
    }

    pub fn check_chart(&self, chart: Chart) -> Result<(), KernelError> {
        match self.terms.keys().find(|&&(a, b)| !chart.admits(a, b)) {
            Some(&(a, b)) => Err(KernelError::Chart { chart, a, b }),
            None => Ok(()),
        }
    }

    /// Largest |exponent| appearing.
    pub fn max_abs_exponent(&self) -> i32 {
        self.terms.keys().map(|&(a, b)| a.abs().max(b.abs())).max().unwrap_or(0)
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|&(a, b)| a >= 0 && b >= 0)
    }

    pub fn scale(&self, c: &Q) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(k, x)| (*k, x * c)).collect() }
    }

    pub fn mul_monomial(&self, c: &Q, da: i32, db: i32) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { terms: self.terms.iter().map(|(&(a, b), x)| ((a + da, b + db), x * c)).collect() }
    }

    /// self += c·other
    pub fn add_scaled(&mut self, other: &Laurent, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (&(a, b), x) in &other.terms {
            self.add_term(a, b, x * c);
        }
    }

    /// ∂/∂u
    pub fn d_u(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(&(a, _), _)| a != 0)
                .map(|(&(a, b), c)| ((a - 1, b), c * Q::from_integer(a.into()))),
        )
    }

    /// ∂/∂v
    pub fn d_v(&self) -> Self {
        Self::from_terms(
            self.terms
                .iter()
                .filter(|(&(_, b), _)| b != 0)
                .map(|(&(a, b), c)| ((a, b - 1), c * Q::from_integer(b.into()))),
        )
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Set the other variable to 1 and collect by the exponent of the coordinate.
    pub(crate) fn to_univariate(&self, u_is_coord: bool) -> BTreeMap<i32, Q> {
        let mut out: BTreeMap<i32, Q> = BTreeMap::new();
        for (&(a, b), c) in &self.terms {
            let e = if u_is_coord { a } else { b };
            *out.entry(e).or_insert_with(Q::zero) += c;
        }
        out.retain(|_, c| !c.is_zero());
        out
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Canonical rendering: terms in lexicographic (a, b) order, e.g. `9*u^-2 - 1/2*u*v^-2`.
impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (&(a, b), c)) in self.terms.iter().enumerate() {
            match (i, c.is_negative()) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let mut factors = Vec::new();
            let mag = c.abs();
            if !mag.is_one() || (a, b) == (0, 0) {
                factors.push(mag.to_string());
            }
            for (var, e) in [("u", a), ("v", b)] {
                match e {
                    0 => {}
                    1 => factors.push(var.to_string()),
                    _ => factors.push(format!("{var}^{e}")),
                }
            }
            write!(f, "{}", factors.join("*"))?;
        }
        Ok(())
    }
}

impl Add for &Laurent {
    type Output = Laurent;
    fn add(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(mut self, rhs: Laurent) -> Laurent {
        self += &rhs;
        self
    }
}

impl Sub for &Laurent {
    type Output = Laurent;
    fn sub(self, rhs: &Laurent) -> Laurent {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(mut self, rhs: Laurent) -> Laurent {
        self -= &rhs;
        self
    }
}

impl AddAssign<&Laurent> for Laurent {
    fn add_assign(&mut self, rhs: &Laurent) {
        for (&(a, b), c) in &rhs.terms {
            self.add_term(a, b, c.clone());
        }
    }
}

impl SubAssign<&Laurent> for Laurent {
    fn sub_assign(&mut self, rhs: &Laurent) {
        for (&(a, b), c) in &rhs.terms {
            self.add_term(a, b, -c);
        }
    }
}

impl Neg for &Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent { terms: self.terms.iter().map(|(k, c)| (*k, -c)).collect() }
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        -&self
    }
}

impl Mul for &Laurent {
    type Output = Laurent;
    fn mul(self, rhs: &Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (&(a1, b1), c1) in &self.terms {
            for (&(a2, b2), c2) in &rhs.terms {
                out.add_term(a1 + a2, b1 + b2, c1 * c2);
            }
        }
        out
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, rhs: Laurent) -> Laurent {
        &self * &rhs
    }
}
