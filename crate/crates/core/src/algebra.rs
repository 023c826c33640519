//! The Temperley-Lieb algebra `TL_n(a)` with `a = v + v^{-1}`, over the
//! Laurent polynomial ring, in its diagram basis.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::coeff::{Convention, LaurentPoly};
use crate::diagram::Diagram;
use crate::error::{Error, Result};

/// A finite Laurent-weighted sum of diagrams on a fixed number of strands.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct AlgebraElement {
    n: usize,
    terms: BTreeMap<Diagram, LaurentPoly>,
}

/// Which family of generators a word is spelled in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GeneratorKind {
    U,
    S,
    SInv,
}

/// Powers `a^0, a^1, ..., a^n` of the loop value.
pub(crate) fn loop_powers(n: usize) -> Vec<LaurentPoly> {
    let a = LaurentPoly::loop_value();
    let mut out = vec![LaurentPoly::one()];
    for k in 0..n {
        let next = &out[k] * &a;
        out.push(next);
    }
    out
}

impl AlgebraElement {
    pub fn zero(n: usize) -> Self {
        Self {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Result<Self> {
        Ok(Self::from_diagram(Diagram::identity(n)?))
    }

    pub fn from_diagram(d: Diagram) -> Self {
        Self::from_term(d, LaurentPoly::one())
    }

    pub fn from_term(d: Diagram, c: LaurentPoly) -> Self {
        let mut out = Self::zero(d.strands());
        out.add_term(d, &c);
        out
    }

    pub fn scalar(n: usize, c: LaurentPoly) -> Result<Self> {
        Ok(Self::from_term(Diagram::identity(n)?, c))
    }

    pub fn generator_u(n: usize, i: usize) -> Result<Self> {
        Ok(Self::from_diagram(Diagram::generator_u(n, i)?))
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in Dyck-lex order.
    pub fn terms(&self) -> impl Iterator<Item = (&Diagram, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, d: &Diagram) -> LaurentPoly {
        self.terms.get(d).cloned().unwrap_or_default()
    }

    pub(crate) fn add_term(&mut self, d: Diagram, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        debug_assert_eq!(d.strands(), self.n);
        match self.terms.entry(d) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (d, c) in &other.terms {
            out.add_term(d.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&LaurentPoly::constant(-1)))
    }

    pub fn scale(&self, c: &LaurentPoly) -> Self {
        let mut out = Self::zero(self.n);
        for (d, x) in &self.terms {
            out.add_term(d.clone(), &(x * c));
        }
        out
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.n != other.n {
            return Err(Error::StrandMismatch {
                left: self.n,
                right: other.n,
            });
        }
        Ok(())
    }

    /// The product `self · other`, each erased loop contributing a factor `a`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let powers = loop_powers(self.n);
        let mut out = Self::zero(self.n);
        for (dx, cx) in &self.terms {
            for (dy, cy) in &other.terms {
                let r = dx.multiply(dy)?;
                let c = &(cx * cy) * &powers[r.loops];
                out.add_term(r.diagram, &c);
            }
        }
        Ok(out)
    }

    /// Coefficient of the identity diagram: the action on the trivial module.
    pub fn augment(&self) -> LaurentPoly {
        match Diagram::identity(self.n) {
            Ok(id) => self.coefficient(&id),
            Err(_) => LaurentPoly::zero(),
        }
    }
}

/// `s_i = λ + μ U_i`.
pub fn braiding_s(n: usize, i: usize, c: &Convention) -> Result<AlgebraElement> {
    two_term(n, i, &c.lambda, &c.mu)
}

/// `s_i^{-1} = λ^{-1} + μ^{-1} U_i`.
pub fn braiding_s_inv(n: usize, i: usize, c: &Convention) -> Result<AlgebraElement> {
    two_term(n, i, &c.lambda_inv(), &c.mu_inv())
}

fn two_term(n: usize, i: usize, constant: &LaurentPoly, u_coeff: &LaurentPoly) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::from_term(Diagram::generator_u(n, i)?, u_coeff.clone());
    out.add_term(Diagram::identity(n)?, constant);
    Ok(out)
}

/// Left-to-right product of generators, e.g. `[4, 3]` with `S` is `s_4 s_3`.
pub fn word_product(
    n: usize,
    indices: &[usize],
    c: &Convention,
    kind: GeneratorKind,
) -> Result<AlgebraElement> {
    let mut out = AlgebraElement::identity(n)?;
    for &i in indices {
        let g = match kind {
            GeneratorKind::U => AlgebraElement::generator_u(n, i)?,
            GeneratorKind::S => braiding_s(n, i, c)?,
            GeneratorKind::SInv => braiding_s_inv(n, i, c)?,
        };
        out = out.mul(&g)?;
    }
    Ok(out)
}

/// `Σ (coeff) * dyckword` in Dyck-lex order, or `0`.
impl fmt::Display for AlgebraElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (d, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c}) * {d}")?;
        }
        Ok(())
    }
}
