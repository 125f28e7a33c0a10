use super::{MapData, Object};
use crate::complex::ChainComplex;
use crate::descent::{Assignment, Equation, PolynomialSystem, Position, SymPoly, SystemShape, Tag, Var};
use crate::dg::DGModule;
use crate::duality::Presentation;
use crate::error::{Error, Result};
use crate::koszul::KoszulAlgebra;
use crate::ring::{parse_ring, Matrix, Ring};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MatrixDoc {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Vec<String>>,
}

impl MatrixDoc {
    fn from_matrix(m: &Matrix) -> MatrixDoc {
        let r = m.ring();
        let entries = (0..m.rows()).map(|i| m.row(i).iter().map(|x| r.format(x)).collect()).collect();
        MatrixDoc { rows: m.rows(), cols: m.cols(), entries }
    }

    fn to_matrix(&self, r: &Ring) -> Result<Matrix> {
        if self.entries.len() != self.rows || self.entries.iter().any(|row| row.len() != self.cols) {
            return Err(Error::DimensionMismatch(format!("matrix entries do not match {}x{}", self.rows, self.cols)));
        }
        let mut m = Matrix::zeros(r, self.rows, self.cols);
        for (i, row) in self.entries.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                m.set(i, j, r.parse(x)?);
            }
        }
        Ok(m)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComplexDoc {
    pub lo: i64,
    pub ranks: Vec<usize>,
    /// `d_n` for `n = lo+1, lo+2, ...`.
    pub differentials: Vec<MatrixDoc>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DegreeMatrix {
    pub degree: i64,
    pub matrix: MatrixDoc,
}

impl ComplexDoc {
    fn from_complex(c: &ChainComplex) -> ComplexDoc {
        ComplexDoc {
            lo: c.lo().unwrap_or(0),
            ranks: c.degrees().map(|n| c.rank(n)).collect(),
            differentials: c.degrees().skip(1).map(|n| MatrixDoc::from_matrix(&c.diff(n))).collect(),
        }
    }

    fn to_complex(&self, r: &Ring) -> Result<ChainComplex> {
        let diffs = self.differentials.iter().map(|d| d.to_matrix(r)).collect::<Result<_>>()?;
        ChainComplex::new(r, self.lo, self.ranks.clone(), diffs)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquationDoc {
    pub subsystem: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub h: Option<usize>,
    pub n: i64,
    pub row: usize,
    pub col: usize,
    pub poly: String,
}

/// JSON form of an [`Object`], tagged by `kind`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Document {
    Ring {
        ring: String,
    },
    Complex {
        ring: String,
        #[serde(flatten)]
        complex: ComplexDoc,
    },
    Koszul {
        ring: String,
        sequence: Vec<String>,
        /// `d_n` for `n = 0..=e`.
        differentials: Vec<MatrixDoc>,
        /// `t^h_n` by basis element `h`, then degree `n`.
        products: Vec<Vec<MatrixDoc>>,
    },
    Dg {
        ring: String,
        sequence: Vec<String>,
        complex: ComplexDoc,
        /// Action of basis element `h` by source degree.
        action: Vec<Vec<DegreeMatrix>>,
    },
    Presentation {
        ring: String,
        relations: MatrixDoc,
    },
    System {
        ring: String,
        m: usize,
        e: usize,
        s: Vec<usize>,
        equations: Vec<EquationDoc>,
    },
    Assignment {
        ring: String,
        values: BTreeMap<String, String>,
    },
    Map {
        ring: String,
        components: Vec<DegreeMatrix>,
    },
}

impl Document {
    pub fn from_object(obj: &Object) -> Document {
        match obj {
            Object::Ring(r) => Document::Ring { ring: r.to_string() },
            Object::Complex(c) => Document::Complex { ring: c.ring().to_string(), complex: ComplexDoc::from_complex(c) },
            Object::Koszul(k) => {
                let e = k.len();
                Document::Koszul {
                    ring: k.ring().to_string(),
                    sequence: k.sequence().iter().map(|x| k.ring().format(x)).collect(),
                    differentials: (0..=e as i64).map(|n| MatrixDoc::from_matrix(&k.diff(n))).collect(),
                    products: (0..k.dim())
                        .map(|h| (0..=(e - k.degree(h)) as i64).map(|n| MatrixDoc::from_matrix(&k.mult(h, n))).collect())
                        .collect(),
                }
            }
            Object::Dg(m) => {
                let k = m.algebra();
                let u = m.underlying();
                Document::Dg {
                    ring: k.ring().to_string(),
                    sequence: k.sequence().iter().map(|x| k.ring().format(x)).collect(),
                    complex: ComplexDoc::from_complex(u),
                    action: (0..k.dim())
                        .map(|h| {
                            let kh = k.degree(h) as i64;
                            u.degrees()
                                .filter(|&n| u.rank(n + kh) > 0)
                                .map(|n| DegreeMatrix { degree: n, matrix: MatrixDoc::from_matrix(&m.action(h, n)) })
                                .collect()
                        })
                        .collect(),
                }
            }
            Object::Presentation(p) => {
                Document::Presentation { ring: p.ring().to_string(), relations: MatrixDoc::from_matrix(&p.rel) }
            }
            Object::System(s) => Document::System {
                ring: s.ring.to_string(),
                m: s.shape.m,
                e: s.shape.e,
                s: s.shape.s.clone(),
                equations: s
                    .equations
                    .iter()
                    .map(|eq| EquationDoc {
                        subsystem: eq.pos.tag.to_string(),
                        h: eq.pos.h,
                        n: eq.pos.n,
                        row: eq.pos.row,
                        col: eq.pos.col,
                        poly: eq.poly.format(&s.ring),
                    })
                    .collect(),
            },
            Object::Assignment(a) => Document::Assignment {
                ring: a.ring.to_string(),
                values: a.values.iter().map(|(v, x)| (v.to_string(), a.ring.format(x))).collect(),
            },
            Object::Map(m) => Document::Map {
                ring: m.ring.to_string(),
                components: m
                    .components
                    .iter()
                    .map(|(n, f)| DegreeMatrix { degree: *n, matrix: MatrixDoc::from_matrix(f) })
                    .collect(),
            },
        }
    }

    pub fn into_object(self) -> Result<Object> {
        Ok(match self {
            Document::Ring { ring } => Object::Ring(parse_ring(&ring)?),
            Document::Complex { ring, complex } => Object::Complex(complex.to_complex(&parse_ring(&ring)?)?),
            Document::Koszul { ring, sequence, differentials, products } => {
                let r = parse_ring(&ring)?;
                let a = sequence.iter().map(|x| r.parse(x)).collect::<Result<Vec<_>>>()?;
                let diffs = differentials.iter().map(|d| d.to_matrix(&r)).collect::<Result<_>>()?;
                let mult = products
                    .iter()
                    .map(|per| per.iter().map(|t| t.to_matrix(&r)).collect::<Result<_>>())
                    .collect::<Result<_>>()?;
                Object::Koszul(KoszulAlgebra::from_matrices(&r, &a, diffs, mult)?)
            }
            Document::Dg { ring, sequence, complex, action } => {
                let r = parse_ring(&ring)?;
                let a = sequence.iter().map(|x| r.parse(x)).collect::<Result<Vec<_>>>()?;
                let k = KoszulAlgebra::new(&r, &a)?;
                let u = complex.to_complex(&r)?;
                let action = action
                    .iter()
                    .map(|per| per.iter().map(|a| Ok((a.degree, a.matrix.to_matrix(&r)?))).collect::<Result<_>>())
                    .collect::<Result<_>>()?;
                Object::Dg(DGModule::new(&k, &u, action)?)
            }
            Document::Presentation { ring, relations } => {
                Object::Presentation(Presentation::new(relations.to_matrix(&parse_ring(&ring)?)?))
            }
            Document::System { ring, m, e, s, equations } => {
                let r = parse_ring(&ring)?;
                let shape = SystemShape::new(e, s)?;
                if shape.m != m {
                    return Err(Error::RankMismatch(format!("m={m} but s has {} entries", shape.s.len())));
                }
                let equations = equations
                    .iter()
                    .map(|eq| {
                        let tag = Tag::ALL
                            .into_iter()
                            .find(|t| t.to_string() == eq.subsystem)
                            .ok_or_else(|| Error::Invalid(format!("unknown subsystem `{}`", eq.subsystem)))?;
                        let pos = Position { tag, h: eq.h, n: eq.n, row: eq.row, col: eq.col };
                        Ok(Equation { pos, poly: SymPoly::parse(&r, &eq.poly)? })
                    })
                    .collect::<Result<_>>()?;
                let variables = shape.variables();
                Object::System(PolynomialSystem { ring: r, shape, variables, equations })
            }
            Document::Assignment { ring, values } => {
                let r = parse_ring(&ring)?;
                let mut a = Assignment::new(&r);
                for (v, x) in values {
                    let var = Var::parse(&v).ok_or_else(|| Error::Invalid(format!("bad unknown `{v}`")))?;
                    a.set(var, r.parse(&x)?);
                }
                Object::Assignment(a)
            }
            Document::Map { ring, components } => {
                let r = parse_ring(&ring)?;
                let mut out = BTreeMap::new();
                for c in components {
                    if out.insert(c.degree, c.matrix.to_matrix(&r)?).is_some() {
                        return Err(Error::Invalid(format!("component {} given twice", c.degree)));
                    }
                }
                Object::Map(MapData { ring: r, components: out })
            }
        })
    }
}
