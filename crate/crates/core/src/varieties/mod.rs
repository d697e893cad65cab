//! Embedded varieties and their section bases: Segre-Veronese products,
//! dilations of lattice polytopes, and presented graded coordinate rings.

mod input;
mod polytope;

use std::collections::HashMap;
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::algebra::poly::same_ring;
use crate::algebra::sparse::{normalize, SparseVec};
use crate::algebra::{Homogeneity, Monomial, Polynomial, PolynomialRing, Rational, RationalMatrix, TermOrder};
use crate::error::{Error, Result};
use crate::groebner::{buchberger, Budget, GroebnerBasis, Ideal};

pub use input::{KindTag, VarietySpec};
pub use polytope::{HalfSpace, LatticePolytope};

type Poly = Polynomial<Rational>;

/// A graded coordinate ring `cox / relations`, with a grevlex Groebner
/// basis of the relations fixed once for normal forms and standard
/// monomials.
#[derive(Clone, Debug)]
pub struct CoordinatePresentation {
    cox: Arc<PolynomialRing>,
    relations: Ideal<Rational>,
    gb: GroebnerBasis<Rational>,
}

impl CoordinatePresentation {
    pub fn new(cox: &Arc<PolynomialRing>, relations: Vec<Poly>, budget: &Budget) -> Result<Self> {
        if let Some(bad) = relations.iter().find(|p| !p.is_homogeneous()) {
            return Err(Error::Inhomogeneous(bad.to_string()));
        }
        let relations = Ideal::new(cox, relations)?;
        let gb = buchberger(&relations, &TermOrder::GrevLex, budget)?;
        Ok(CoordinatePresentation {
            cox: cox.clone(),
            relations,
            gb,
        })
    }

    /// A polynomial ring with no relations.
    pub fn free(cox: &Arc<PolynomialRing>) -> Self {
        Self::new(cox, Vec::new(), &Budget::default()).expect("zero ideal")
    }

    pub fn cox_ring(&self) -> &Arc<PolynomialRing> {
        &self.cox
    }

    pub fn relations(&self) -> &Ideal<Rational> {
        &self.relations
    }

    pub fn groebner_basis(&self) -> &GroebnerBasis<Rational> {
        &self.gb
    }

    pub fn pic_rank(&self) -> usize {
        self.cox.grading_rank()
    }

    pub fn has_relations(&self) -> bool {
        !self.relations.is_zero()
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        if self.has_relations() {
            self.gb.normal_form(f)
        } else if same_ring(f.ring(), &self.cox) {
            Ok(f.clone())
        } else {
            Err(Error::RingMismatch)
        }
    }

    /// Monomials of the given degree outside the initial ideal,
    /// lex-descending.
    pub fn standard_monomials(&self, degree: &[i64]) -> Result<Vec<Monomial>> {
        let all = self.cox.monomials_of_multidegree(degree)?;
        Ok(all.into_iter().filter(|m| self.gb.is_standard(m)).collect())
    }
}

#[derive(Clone, Debug)]
enum Expander {
    /// Sections are distinct monomials; coordinates are read off directly.
    Monomial(HashMap<Monomial, usize>),
    /// Sections are arbitrary; `inverse` maps coordinates over the standard
    /// monomials `coords` to coordinates over the sections.
    Linear {
        coords: HashMap<Monomial, usize>,
        inverse: RationalMatrix,
    },
}

/// An ordered basis of one graded piece of the coordinate ring.
#[derive(Clone, Debug)]
pub struct SectionBasis {
    degree: Vec<i64>,
    sections: Vec<Poly>,
    expander: Expander,
}

impl SectionBasis {
    fn monomial(ring: &Arc<PolynomialRing>, degree: Vec<i64>, monomials: Vec<Monomial>) -> Self {
        let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        SectionBasis {
            degree,
            sections: monomials
                .into_iter()
                .map(|m| Poly::monomial(ring, m, Rational::one()))
                .collect(),
            expander: Expander::Monomial(index),
        }
    }

    pub fn degree(&self) -> &[i64] {
        &self.degree
    }

    pub fn sections(&self) -> &[Poly] {
        &self.sections
    }

    pub fn len(&self) -> usize {
        self.sections.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sections.is_empty()
    }

    /// Whether every section is a distinct monomial with coefficient 1.
    pub fn is_monomial(&self) -> bool {
        matches!(self.expander, Expander::Monomial(_))
    }

    /// Position of a monomial section, for monomial bases.
    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        match &self.expander {
            Expander::Monomial(index) => index.get(m).copied(),
            Expander::Linear { .. } => None,
        }
    }

    /// Coordinates of a polynomial already in normal form.
    pub fn expand(&self, nf: &Poly) -> Result<SparseVec<Rational>> {
        let failure = || Error::ExpansionFailure(format!("{nf} (degree {:?})", self.degree));
        match &self.expander {
            Expander::Monomial(index) => nf
                .terms()
                .iter()
                .map(|t| index.get(&t.mono).map(|&i| (i, t.coeff.clone())).ok_or_else(failure))
                .collect::<Result<Vec<_>>>()
                .map(normalize),
            Expander::Linear { coords, inverse } => {
                let mut acc = vec![Rational::zero(); inverse.cols()];
                for t in nf.terms() {
                    let i = *coords.get(&t.mono).ok_or_else(failure)?;
                    for (j, slot) in acc.iter_mut().enumerate() {
                        let c = &inverse[(i, j)];
                        if !c.is_zero() {
                            *slot = slot.clone() + t.coeff.clone() * c.clone();
                        }
                    }
                }
                Ok(acc.into_iter().enumerate().filter(|(_, c)| !c.is_zero()).collect())
            }
        }
    }
}

#[derive(Clone, Debug)]
pub enum VarietyKind {
    SegreVeronese { dims: Vec<usize> },
    Toric { polytope: LatticePolytope },
    Presented,
}

/// A variety in `P^r` embedded by the complete linear series of `L`.
#[derive(Clone, Debug)]
pub struct EmbeddedVariety {
    kind: VarietyKind,
    presentation: CoordinatePresentation,
    bundle_degree: Vec<i64>,
    gamma: SectionBasis,
    ambient: Arc<PolynomialRing>,
    spec: VarietySpec,
}

fn binomial(n: u64, k: u64) -> u128 {
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1))
}

impl EmbeddedVariety {
    fn assemble(
        kind: VarietyKind,
        presentation: CoordinatePresentation,
        bundle_degree: Vec<i64>,
        spec: VarietySpec,
    ) -> Result<Self> {
        let mut v = EmbeddedVariety {
            kind,
            presentation,
            gamma: SectionBasis::monomial(
                &PolynomialRing::indexed("y", 0),
                bundle_degree.clone(),
                Vec::new(),
            ),
            bundle_degree,
            ambient: PolynomialRing::indexed("y", 0),
            spec,
        };
        v.gamma = v.canonical_sections(&v.bundle_degree.clone())?;
        if v.gamma.is_empty() {
            return Err(Error::InvalidSections(format!(
                "no sections in degree {:?}",
                v.bundle_degree
            )));
        }
        v.ambient = PolynomialRing::indexed("y", v.gamma.len());
        Ok(v)
    }

    /// `P^{n_1} x ... x P^{n_l}` embedded by `O(m)`. Cox variables are
    /// `x_i_j` with `deg x_i_j = e_i`.
    pub fn segre_veronese(dims: &[usize], multidegree: &[i64]) -> Result<Self> {
        if dims.is_empty() {
            return Err(Error::InvalidInput("at least one factor is required".into()));
        }
        if dims.len() != multidegree.len() {
            return Err(Error::LengthMismatch {
                expected: dims.len(),
                found: multidegree.len(),
            });
        }
        if dims.contains(&0) {
            return Err(Error::InvalidInput("factor dimensions must be positive".into()));
        }
        if multidegree.iter().any(|&m| m <= 0) {
            return Err(Error::NotAmple(multidegree.to_vec()));
        }
        let l = dims.len();
        let mut names = Vec::new();
        let mut grading = vec![Vec::new(); l];
        for (i, &n) in dims.iter().enumerate() {
            for j in 0..=n {
                names.push(format!("x_{}_{}", i + 1, j));
                for (k, row) in grading.iter_mut().enumerate() {
                    row.push(i64::from(k == i));
                }
            }
        }
        let cox = PolynomialRing::new(names, grading)?;
        let spec = VarietySpec {
            kind: KindTag::SegreVeronese,
            dims: Some(dims.to_vec()),
            multidegree: Some(multidegree.to_vec()),
            ..VarietySpec::default()
        };
        Self::assemble(
            VarietyKind::SegreVeronese { dims: dims.to_vec() },
            CoordinatePresentation::free(&cox),
            multidegree.to_vec(),
            spec,
        )
    }

    /// The toric variety of `polytope` embedded by its `dilation`-th
    /// multiple. Cox variables `t0..t{n-1}, s` with `s` carrying the degree.
    pub fn toric_variety(polytope: &LatticePolytope, dilation: i64) -> Result<Self> {
        if dilation < 1 {
            return Err(Error::InvalidDilation(dilation));
        }
        let n = polytope.dim();
        let mut names: Vec<String> = (0..n).map(|i| format!("t{i}")).collect();
        names.push("s".into());
        let mut row = vec![0; n];
        row.push(1);
        let cox = PolynomialRing::new(names, vec![row])?;
        let spec = VarietySpec {
            kind: KindTag::Toric,
            points: Some(polytope.points().to_vec()),
            dilation: Some(dilation),
            ..VarietySpec::default()
        };
        Self::assemble(
            VarietyKind::Toric {
                polytope: polytope.clone(),
            },
            CoordinatePresentation::free(&cox),
            vec![dilation],
            spec,
        )
    }

    /// `Proj` of a presented coordinate ring, embedded by the standard
    /// monomials of `bundle_degree`.
    pub fn presented_variety(presentation: CoordinatePresentation, bundle_degree: &[i64]) -> Result<Self> {
        let cox = presentation.cox_ring().clone();
        if bundle_degree.len() != cox.grading_rank() {
            return Err(Error::LengthMismatch {
                expected: cox.grading_rank(),
                found: bundle_degree.len(),
            });
        }
        let spec = VarietySpec {
            kind: KindTag::Presented,
            variables: Some(cox.names().to_vec()),
            grading: Some(cox.grading().to_vec()),
            relations: Some(
                presentation
                    .relations()
                    .generators()
                    .iter()
                    .map(ToString::to_string)
                    .collect(),
            ),
            bundle_degree: Some(bundle_degree.to_vec()),
            ..VarietySpec::default()
        };
        Self::assemble(VarietyKind::Presented, presentation, bundle_degree.to_vec(), spec)
    }

    /// Replaces the basis of `Γ(L)` by `sections`, given in the Cox ring.
    /// They must be homogeneous of the bundle degree and form a basis
    /// modulo the relations.
    pub fn with_section_order(mut self, sections: Vec<Poly>) -> Result<Self> {
        let canonical = self.canonical_sections(&self.bundle_degree.clone())?;
        if sections.len() != canonical.len() {
            return Err(Error::InvalidSections(format!(
                "expected {} sections, got {}",
                canonical.len(),
                sections.len()
            )));
        }
        let cox = self.cox_ring().clone();
        let mut normal_forms = Vec::with_capacity(sections.len());
        for s in &sections {
            if !same_ring(s.ring(), &cox) {
                return Err(Error::RingMismatch);
            }
            match s.homogeneity() {
                Homogeneity::Homogeneous(d) if d == self.bundle_degree => {}
                _ => {
                    return Err(Error::InvalidSections(format!(
                        "{s} is not homogeneous of degree {:?}",
                        self.bundle_degree
                    )))
                }
            }
            normal_forms.push(self.presentation.normal_form(s)?);
        }

        let all_monomial = sections
            .iter()
            .all(|s| s.is_monomial() && s.terms()[0].coeff.is_one());
        if all_monomial {
            let monos: Vec<Monomial> = sections.iter().map(|s| s.terms()[0].mono.clone()).collect();
            let permutation = monos.iter().all(|m| canonical.index_of(m).is_some());
            let distinct = monos.iter().collect::<std::collections::HashSet<_>>().len() == monos.len();
            if permutation && distinct {
                self.gamma = SectionBasis::monomial(&cox, self.bundle_degree.clone(), monos);
                self.spec.section_order = Some(sections.iter().map(ToString::to_string).collect());
                return Ok(self);
            }
        }

        let n = canonical.len();
        let mut rows = Vec::with_capacity(n);
        for nf in &normal_forms {
            let coords = canonical.expand(nf).map_err(|_| {
                Error::InvalidSections(format!("{nf} is not a combination of the degree {:?} basis", self.bundle_degree))
            })?;
            let mut row = vec![Rational::zero(); n];
            for (i, c) in coords {
                row[i] = c;
            }
            rows.push(row);
        }
        let inverse = RationalMatrix::from_rows_with_cols(rows, n)
            .inverse()
            .ok_or_else(|| Error::InvalidSections("sections are linearly dependent modulo the relations".into()))?;
        let coords = canonical
            .sections()
            .iter()
            .enumerate()
            .map(|(i, s)| (s.terms()[0].mono.clone(), i))
            .collect();
        self.gamma = SectionBasis {
            degree: self.bundle_degree.clone(),
            sections,
            expander: Expander::Linear { coords, inverse },
        };
        self.spec.section_order = Some(self.gamma.sections.iter().map(ToString::to_string).collect());
        Ok(self)
    }

    pub fn kind(&self) -> &VarietyKind {
        &self.kind
    }

    pub fn presentation(&self) -> &CoordinatePresentation {
        &self.presentation
    }

    pub fn cox_ring(&self) -> &Arc<PolynomialRing> {
        self.presentation.cox_ring()
    }

    pub fn pic_rank(&self) -> usize {
        self.presentation.pic_rank()
    }

    pub fn bundle_degree(&self) -> &[i64] {
        &self.bundle_degree
    }

    pub fn gamma(&self) -> &SectionBasis {
        &self.gamma
    }

    /// The ring `k[y_0..y_r]` of `P^r`.
    pub fn ambient_ring(&self) -> &Arc<PolynomialRing> {
        &self.ambient
    }

    /// Images of `y_0..y_r` in the Cox ring.
    pub fn parameterization(&self) -> &[Poly] {
        &self.gamma.sections
    }

    /// The input description this variety was built from.
    pub fn spec(&self) -> &VarietySpec {
        &self.spec
    }

    fn check_degree(&self, degree: &[i64]) -> Result<()> {
        if degree.len() != self.pic_rank() {
            return Err(Error::UnsupportedDegree(degree.to_vec()));
        }
        match self.kind {
            VarietyKind::SegreVeronese { .. } | VarietyKind::Toric { .. } if degree.iter().any(|&d| d < 0) => {
                Err(Error::UnsupportedDegree(degree.to_vec()))
            }
            _ => Ok(()),
        }
    }

    /// The canonical monomial basis of a graded piece, lex-descending.
    pub fn canonical_sections(&self, degree: &[i64]) -> Result<SectionBasis> {
        self.check_degree(degree)?;
        let cox = self.cox_ring();
        let monomials = match &self.kind {
            VarietyKind::SegreVeronese { .. } => cox.monomials_of_multidegree(degree)?,
            VarietyKind::Toric { polytope } => {
                let d = degree[0];
                let shift: Vec<i64> = polytope.min_corner().iter().map(|x| -x * d).collect();
                let mut out: Vec<Monomial> = polytope
                    .lattice_points(d)
                    .into_iter()
                    .map(|p| {
                        let mut e: Vec<u32> = p
                            .iter()
                            .zip(&shift)
                            .map(|(a, b)| u32::try_from(a + b).expect("translated point is nonnegative"))
                            .collect();
                        e.push(u32::try_from(d).expect("nonnegative degree"));
                        Monomial::new(e)
                    })
                    .collect();
                out.reverse();
                out
            }
            VarietyKind::Presented => self.presentation.standard_monomials(degree)?,
        };
        Ok(SectionBasis::monomial(cox, degree.to_vec(), monomials))
    }

    /// The basis used for a graded piece: the chosen basis of `Γ(L)` in the
    /// bundle degree, the canonical basis elsewhere.
    pub fn sections(&self, degree: &[i64]) -> Result<SectionBasis> {
        if degree == self.bundle_degree.as_slice() {
            Ok(self.gamma.clone())
        } else {
            self.canonical_sections(degree)
        }
    }

    /// Dimension of a graded piece of the coordinate ring.
    pub fn gamma_dim(&self, degree: &[i64]) -> Result<usize> {
        self.check_degree(degree)?;
        if let VarietyKind::SegreVeronese { dims } = &self.kind {
            let count: u128 = dims
                .iter()
                .zip(degree)
                .map(|(&n, &m)| binomial(n as u64 + m as u64, m as u64))
                .product();
            return usize::try_from(count).map_err(|_| Error::UnsupportedDegree(degree.to_vec()));
        }
        Ok(self.canonical_sections(degree)?.len())
    }

    pub fn normal_form(&self, f: &Poly) -> Result<Poly> {
        self.presentation.normal_form(f)
    }

    /// Coordinates of `f * g` in `basis`, after reduction modulo the
    /// relations.
    pub fn expand_product(&self, f: &Poly, g: &Poly, basis: &SectionBasis) -> Result<SparseVec<Rational>> {
        if !self.presentation.has_relations() && f.is_monomial() && g.is_monomial() && basis.is_monomial() {
            let (a, b) = (&f.terms()[0], &g.terms()[0]);
            let m = a.mono.mul(&b.mono);
            return match basis.index_of(&m) {
                Some(i) => Ok(vec![(i, a.coeff.clone() * b.coeff.clone())]),
                None => Err(Error::ExpansionFailure(format!("{f} * {g} (degree {:?})", basis.degree))),
            };
        }
        let product = f.try_mul(g)?;
        basis.expand(&self.normal_form(&product)?)
    }
}
