//! Ring homomorphisms determined by the images of generators.

use super::{Elem, Kind, Matrix, Ring};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct RingHom {
    source: Ring,
    target: Ring,
    /// Images of the source's polynomial variables.
    images: Vec<Elem>,
}

impl RingHom {
    pub fn identity(ring: &Ring) -> RingHom {
        let images = (0..ring.variables().len()).map(|i| ring.var_at(i)).collect();
        RingHom { source: ring.clone(), target: ring.clone(), images }
    }

    /// Homomorphism sending the source variables to `images`.
    pub fn new(source: &Ring, target: &Ring, images: Vec<Elem>) -> Result<RingHom> {
        if images.len() != source.variables().len() {
            return Err(Error::NotAHomomorphism(format!(
                "expected {} variable images, got {}",
                source.variables().len(),
                images.len()
            )));
        }
        if let Some(bad) = images.iter().find(|e| !target.contains(e)) {
            return Err(Error::NotAHomomorphism(format!("image {bad:?} is not an element of {target}")));
        }
        let base_ok = match source.kind() {
            Kind::Integers => true,
            Kind::Rationals => target.characteristic() == 0 && !matches!(target.kind(), Kind::Integers),
            Kind::ModN(n) | Kind::PrimeField(n) => {
                let c = target.characteristic();
                c != 0 && n % c == 0
            }
            Kind::Quotient(q) => match q.field.kind() {
                Kind::Rationals => target.characteristic() == 0 && !matches!(target.kind(), Kind::Integers),
                Kind::PrimeField(p) => target.characteristic() == *p,
                _ => false,
            },
        };
        if !base_ok {
            return Err(Error::NotAHomomorphism(format!("no ring map {source} -> {target} on the base")));
        }
        let h = RingHom { source: source.clone(), target: target.clone(), images };
        for g in source.groebner_basis() {
            let img = h.apply(&Elem::Poly(g.clone()));
            if !target.is_zero(&img) {
                return Err(Error::NotAHomomorphism(format!(
                    "relation {} does not map to zero",
                    source.format(&Elem::Poly(g.clone()))
                )));
            }
        }
        Ok(h)
    }

    /// Sends each source variable to the target variable of the same name.
    pub fn by_names(source: &Ring, target: &Ring) -> Result<RingHom> {
        let images = source
            .variables()
            .iter()
            .map(|v| target.var(v))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::NotAHomomorphism(e.to_string()))?;
        RingHom::new(source, target, images)
    }

    pub fn source(&self) -> &Ring {
        &self.source
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }

    pub fn images(&self) -> &[Elem] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.source == self.target && *self == RingHom::identity(&self.source)
    }

    pub fn apply(&self, a: &Elem) -> Elem {
        let t = &self.target;
        match a {
            Elem::Int(x) => t.from_bigint(x),
            Elem::Mod(x) => t.from_int(*x as i64),
            Elem::Rat(x) => t.from_rational(x).expect("checked base map"),
            Elem::Poly(p) => {
                let mut acc = t.zero();
                for (m, c) in &p.terms {
                    let coef = match c {
                        Elem::Rat(r) => t.from_rational(r).expect("checked base map"),
                        Elem::Mod(v) => t.from_int(*v as i64),
                        _ => unreachable!(),
                    };
                    let mut term = coef;
                    for (i, e) in m.iter().enumerate() {
                        if *e > 0 {
                            term = t.mul(&term, &t.pow(&self.images[i], *e));
                        }
                    }
                    acc = t.add(&acc, &term);
                }
                acc
            }
        }
    }

    pub fn apply_matrix(&self, m: &Matrix) -> Matrix {
        m.map_to(&self.target, |x| self.apply(x))
    }

    pub fn compose(&self, after: &RingHom) -> Result<RingHom> {
        if self.target != after.source {
            return Err(Error::MixedRings);
        }
        let images = self.images.iter().map(|x| after.apply(x)).collect();
        RingHom::new(&self.source, &after.target, images)
    }
}
