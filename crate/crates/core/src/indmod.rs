//! Induced modules `TL_n ⊗_{TL_m} 1`, realized as diagrams whose first `m`
//! right dots sit in a black box that absorbs (kills) any cup.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use crate::algebra::{loop_powers, AlgebraElement};
use crate::coeff::LaurentPoly;
use crate::diagram::{enumerate_diagrams, Diagram};
use crate::error::{Error, Result};

/// Diagrams on `n` strands with no arc joining two of the right dots `1..=m`,
/// in Dyck-lex order. These are exactly the diagrams whose Dyck word starts
/// with `m` letters `u`.
#[derive(Clone, Debug)]
pub struct BlackBoxBasis {
    n: usize,
    m: usize,
    diagrams: Vec<Diagram>,
    index: HashMap<Diagram, usize>,
}

impl BlackBoxBasis {
    pub fn new(n: usize, m: usize) -> Result<Self> {
        if m > n {
            return Err(Error::BoxOutOfRange { n, m });
        }
        let diagrams: Vec<Diagram> = enumerate_diagrams(n)?
            .into_iter()
            .filter(|d| d.fits_black_box(m))
            .collect();
        let index = diagrams
            .iter()
            .enumerate()
            .map(|(k, d)| (d.clone(), k))
            .collect();
        Ok(Self {
            n,
            m,
            diagrams,
            index,
        })
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    pub fn box_size(&self) -> usize {
        self.m
    }

    pub fn len(&self) -> usize {
        self.diagrams.len()
    }

    pub fn is_empty(&self) -> bool {
        self.diagrams.is_empty()
    }

    pub fn diagrams(&self) -> &[Diagram] {
        &self.diagrams
    }

    pub fn get(&self, k: usize) -> &Diagram {
        &self.diagrams[k]
    }

    /// Position of a diagram, or `None` if the black box kills it.
    pub fn index_of(&self, d: &Diagram) -> Option<usize> {
        self.index.get(d).copied()
    }
}

pub fn black_box_basis(n: usize, m: usize) -> Result<Arc<BlackBoxBasis>> {
    BlackBoxBasis::new(n, m).map(Arc::new)
}

/// A vector of an induced module, in coordinates of its black-box basis.
#[derive(Clone)]
pub struct ModuleVector {
    basis: Arc<BlackBoxBasis>,
    coords: BTreeMap<usize, LaurentPoly>,
}

impl ModuleVector {
    pub fn zero(basis: Arc<BlackBoxBasis>) -> Self {
        Self {
            basis,
            coords: BTreeMap::new(),
        }
    }

    pub fn basis_vector(basis: Arc<BlackBoxBasis>, k: usize) -> Self {
        let mut out = Self::zero(basis);
        out.add_coord(k, &LaurentPoly::one());
        out
    }

    pub fn basis(&self) -> &Arc<BlackBoxBasis> {
        &self.basis
    }

    pub fn coords(&self) -> &BTreeMap<usize, LaurentPoly> {
        &self.coords
    }

    pub fn coord(&self, k: usize) -> LaurentPoly {
        self.coords.get(&k).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    fn add_coord(&mut self, k: usize, c: &LaurentPoly) {
        if c.is_zero() {
            return;
        }
        let slot = self.coords.entry(k).or_default();
        *slot += c;
        if slot.is_zero() {
            self.coords.remove(&k);
        }
    }

    /// The representative element of `TL_n` spanned by the basis diagrams.
    pub fn lift(&self) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.basis.n);
        for (&k, c) in &self.coords {
            out.add_term(self.basis.diagrams[k].clone(), c);
        }
        out
    }
}

impl PartialEq for ModuleVector {
    fn eq(&self, other: &Self) -> bool {
        self.basis.n == other.basis.n && self.basis.m == other.basis.m && self.coords == other.coords
    }
}

impl fmt::Debug for ModuleVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ModuleVector[n={}, m={}]({})", self.basis.n, self.basis.m, self.lift())
    }
}

/// Image of `x` in `TL_n / I_m`, written in the given basis: terms whose
/// diagram has an arc inside the box are dropped.
pub fn project_onto(x: &AlgebraElement, basis: &Arc<BlackBoxBasis>) -> Result<ModuleVector> {
    if x.strands() != basis.n {
        return Err(Error::StrandMismatch {
            left: x.strands(),
            right: basis.n,
        });
    }
    let mut out = ModuleVector::zero(basis.clone());
    for (d, c) in x.terms() {
        if let Some(k) = basis.index_of(d) {
            out.add_coord(k, c);
        }
    }
    Ok(out)
}

pub fn quotient_project(x: &AlgebraElement, m: usize) -> Result<ModuleVector> {
    project_onto(x, &black_box_basis(x.strands(), m)?)
}

/// Left action of `TL_n`: multiply, then kill anything absorbed by the box.
pub fn act(x: &AlgebraElement, vec: &ModuleVector) -> Result<ModuleVector> {
    let basis = &vec.basis;
    if x.strands() != basis.n {
        return Err(Error::StrandMismatch {
            left: x.strands(),
            right: basis.n,
        });
    }
    let powers = loop_powers(basis.n);
    let mut out = ModuleVector::zero(basis.clone());
    for (d, c) in x.terms() {
        for (&k, cv) in &vec.coords {
            let r = d.multiply(&basis.diagrams[k])?;
            if let Some(j) = basis.index_of(&r.diagram) {
                out.add_coord(j, &(&(c * cv) * &powers[r.loops]));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combin::first_peak_count_b;
    use num_bigint::BigUint;

    #[test]
    fn basis_sizes() {
        assert_eq!(black_box_basis(4, 3).unwrap().len(), 4);
        assert_eq!(black_box_basis(5, 2).unwrap().len(), 28);
        for n in 0..=6 {
            assert_eq!(
                black_box_basis(n, 0).unwrap().len(),
                enumerate_diagrams(n).unwrap().len()
            );
        }
        assert!(black_box_basis(3, 4).is_err());
    }

    #[test]
    fn basis_sizes_match_first_peak_counts() {
        for n in 0..=8 {
            for m in 0..=n {
                let size = black_box_basis(n, m).unwrap().len();
                assert_eq!(BigUint::from(size), first_peak_count_b(n, m), "n={n} m={m}");
            }
        }
    }

    #[test]
    fn no_arc_inside_box() {
        let b = black_box_basis(5, 3).unwrap();
        for d in b.diagrams() {
            for (p, q) in d.pairs() {
                assert!(!(p <= 3 && q <= 3), "{d} has arc ({p},{q}) in the box");
            }
            assert!(d.to_dyck().to_string().starts_with("uuu"));
        }
    }

    #[test]
    fn worked_black_box_example_is_zero() {
        let basis = black_box_basis(4, 2).unwrap();
        let u1u3 = AlgebraElement::generator_u(4, 1)
            .unwrap()
            .mul(&AlgebraElement::generator_u(4, 3).unwrap())
            .unwrap();
        // the pictured box diagram: right 1 to left 1, left 4 to right 2,
        // a cup on left dots 2,3 and a cup on right dots 3,4
        let y: Diagram = "uuuddudd".parse().unwrap();
        assert_eq!(y.pairs(), vec![(1, 8), (2, 5), (3, 4), (6, 7)]);
        let k = basis.index_of(&y).unwrap();
        let v = ModuleVector::basis_vector(basis.clone(), k);
        assert!(act(&u1u3, &v).unwrap().is_zero());
        // without the box the product survives
        let free = black_box_basis(4, 0).unwrap();
        let k = free.index_of(&y).unwrap();
        let v = ModuleVector::basis_vector(free.clone(), k);
        assert!(!act(&u1u3, &v).unwrap().is_zero());
    }

    #[test]
    fn identity_acts_trivially() {
        let basis = black_box_basis(5, 2).unwrap();
        let id = AlgebraElement::identity(5).unwrap();
        for k in 0..basis.len() {
            let v = ModuleVector::basis_vector(basis.clone(), k);
            assert_eq!(act(&id, &v).unwrap(), v);
        }
    }

    #[test]
    fn no_box_is_the_regular_module() {
        for n in 1..=5 {
            let basis = black_box_basis(n, 0).unwrap();
            for x in basis.diagrams() {
                let xe = AlgebraElement::from_diagram(x.clone());
                for (k, y) in basis.diagrams().iter().enumerate() {
                    let v = ModuleVector::basis_vector(basis.clone(), k);
                    let prod = xe.mul(&AlgebraElement::from_diagram(y.clone())).unwrap();
                    assert_eq!(act(&xe, &v).unwrap().lift(), prod);
                }
            }
        }
    }

    #[test]
    fn projection_examples() {
        assert!(quotient_project(&AlgebraElement::generator_u(4, 1).unwrap(), 2)
            .unwrap()
            .is_zero());
        for m in 0..=4 {
            let id = AlgebraElement::identity(4).unwrap();
            let v = quotient_project(&id, m).unwrap();
            assert_eq!(v.lift(), id);
        }
        for m in 0..=3 {
            let u = AlgebraElement::generator_u(5, m + 1).unwrap();
            assert!(!quotient_project(&u, m).unwrap().is_zero());
        }
    }

    #[test]
    fn action_and_projection_are_compatible() {
        for n in 1..=4 {
            let all = enumerate_diagrams(n).unwrap();
            for m in 0..=n {
                let basis = black_box_basis(n, m).unwrap();
                for x in &all {
                    let xe = AlgebraElement::from_diagram(x.clone());
                    for y in &all {
                        let ye = AlgebraElement::from_diagram(y.clone());
                        let lhs = project_onto(&xe.mul(&ye).unwrap(), &basis).unwrap();
                        let rhs = act(&xe, &project_onto(&ye, &basis).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                        // module action: (x y)·w = x·(y·w)
                        for k in 0..basis.len() {
                            let w = ModuleVector::basis_vector(basis.clone(), k);
                            let lhs = act(&xe.mul(&ye).unwrap(), &w).unwrap();
                            let rhs = act(&xe, &act(&ye, &w).unwrap()).unwrap();
                            assert_eq!(lhs, rhs);
                        }
                    }
                }
            }
        }
    }
}
