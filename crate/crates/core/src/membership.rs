//! Graded components of ideals and the exact membership oracle.
//!
//! Everything an ideal claim in this crate reduces to happens degree by
//! degree: the degree-`k` component of an ideal is the row space of all
//! generator multiples of that degree, with columns indexed by
//! [`enumerate_degree`](crate::monomial::enumerate_degree). Membership,
//! component equality, colon ideals and socles are all questions about these
//! row spaces, answered by exact rational row reduction.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::One;
use serde::Serialize;

use crate::linalg::{Echelon, SparseVec, TriangularSolver};
use crate::monomial::{enumerate_degree, Monomial};
use crate::poly::{HomogeneousPoly, Rational};

/// Where a matrix row of a graded component came from: the row is
/// `generators[generator] * multiplier`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowSource {
    pub generator: usize,
    pub multiplier: Monomial,
}

/// One term of a membership certificate.
#[derive(Clone, Debug, Serialize)]
pub struct CertificateTerm {
    pub generator: usize,
    pub multiplier: String,
    pub coefficient: String,
}

/// An exact witness that a polynomial lies in an ideal: the polynomial equals
/// the sum of `coefficient * generator * multiplier` over the terms. The sum
/// is re-multiplied on construction, so a returned certificate is sound.
#[derive(Clone, Debug, Serialize)]
pub struct MembershipCertificate {
    pub target: String,
    pub terms: Vec<CertificateTerm>,
}

/// Certificate layer of a graded span: an LU-style solver over the rows that
/// produced pivots (one per basis element), so expressing a member costs one
/// forward pass and one triangular back-conversion.
struct CertificateLayer {
    solver: TriangularSolver,
    sources: Vec<RowSource>,
}

/// Row-reduced basis of the degree-`k` component of an ideal (or of any list
/// of equal-degree polynomials).
pub struct GradedSpan {
    dim: usize,
    degree: u32,
    columns: Vec<Monomial>,
    col_index: HashMap<Monomial, usize>,
    echelon: Echelon,
    certificates: Option<CertificateLayer>,
}

impl GradedSpan {
    fn empty(dim: usize, degree: u32) -> Self {
        let columns = enumerate_degree(dim, degree);
        let col_index = columns
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let ncols = columns.len();
        GradedSpan {
            dim,
            degree,
            columns,
            col_index,
            echelon: Echelon::new(ncols),
            certificates: None,
        }
    }

    /// Span of arbitrary equal-degree polynomials, without row provenance.
    pub fn from_polys(dim: usize, degree: u32, polys: &[HomogeneousPoly]) -> Self {
        let mut span = GradedSpan::empty(dim, degree);
        for p in polys {
            let v = span.to_sparse(p);
            span.echelon.insert(v);
        }
        span
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn rank(&self) -> usize {
        self.echelon.rank()
    }

    pub fn num_columns(&self) -> usize {
        self.columns.len()
    }

    pub fn columns(&self) -> &[Monomial] {
        &self.columns
    }

    fn to_sparse(&self, p: &HomogeneousPoly) -> SparseVec {
        assert_eq!(p.dim(), self.dim, "dimension mismatch");
        assert_eq!(p.degree(), self.degree, "degree mismatch");
        SparseVec::new(
            p.terms()
                .map(|(m, c)| (self.col_index[m], c.clone()))
                .collect(),
        )
    }

    fn decode_sparse(&self, v: &SparseVec) -> HomogeneousPoly {
        HomogeneousPoly::from_terms(
            self.dim,
            self.degree,
            v.iter()
                .map(|(i, c)| (self.columns[*i].clone(), c.clone()))
                .collect(),
        )
        .expect("sparse vector is degree-consistent by construction")
    }

    /// Remainder of `p` modulo the span.
    pub fn reduce(&self, p: &HomogeneousPoly) -> HomogeneousPoly {
        self.decode_sparse(&self.echelon.reduce(&self.to_sparse(p)))
    }

    pub fn contains(&self, p: &HomogeneousPoly) -> bool {
        self.echelon.contains(&self.to_sparse(p))
    }

    /// Basis polynomials of the span, in pivot order.
    pub fn basis(&self) -> Vec<HomogeneousPoly> {
        self.echelon
            .rows()
            .iter()
            .map(|r| self.decode_sparse(r))
            .collect()
    }

    /// Membership certificate over generator multiples; `None` when `p` is
    /// not in the span. Requires a span built with certificate support.
    pub fn certificate(
        &self,
        generators: &[HomogeneousPoly],
        p: &HomogeneousPoly,
    ) -> Option<MembershipCertificate> {
        let layer = self
            .certificates
            .as_ref()
            .expect("certificates need a span built with certificate support");
        let combo = layer.solver.express(&self.to_sparse(p))?;
        let mut terms = Vec::with_capacity(combo.len());
        let mut check = HomogeneousPoly::zero(self.dim, self.degree);
        for (row, coeff) in combo.iter() {
            let src = &layer.sources[*row];
            check = check.add(
                &generators[src.generator]
                    .mul_monomial(&src.multiplier)
                    .scale(coeff),
            );
            terms.push(CertificateTerm {
                generator: src.generator,
                multiplier: src.multiplier.to_string(),
                coefficient: coeff.to_string(),
            });
        }
        assert_eq!(&check, p, "unsound certificate: remultiplication differs");
        Some(MembershipCertificate {
            target: p.to_string(),
            terms,
        })
    }
}

impl fmt::Debug for GradedSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedSpan")
            .field("dim", &self.dim)
            .field("degree", &self.degree)
            .field("rank", &self.rank())
            .finish()
    }
}

/// An ideal given by a finite list of nonzero homogeneous generators of
/// possibly mixed degrees. Immutable; graded components are memoized per
/// instance behind a mutex.
pub struct IdealPresentation {
    dim: usize,
    generators: Vec<HomogeneousPoly>,
    cache: Mutex<HashMap<(u32, bool), Arc<GradedSpan>>>,
}

impl IdealPresentation {
    pub fn new(dim: usize, generators: Vec<HomogeneousPoly>) -> Self {
        for g in &generators {
            assert_eq!(g.dim(), dim, "generator dimension mismatch");
            assert!(!g.is_zero(), "zero generator");
        }
        IdealPresentation {
            dim,
            generators,
            cache: Mutex::new(HashMap::new()),
        }
    }

    pub fn from_monomials(dim: usize, monomials: &[Monomial]) -> Self {
        IdealPresentation::new(
            dim,
            monomials
                .iter()
                .map(|m| HomogeneousPoly::from_monomial(m.clone()))
                .collect(),
        )
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[HomogeneousPoly] {
        &self.generators
    }

    /// The degree-`k` component: span of `g_i * m` over all generators of
    /// degree at most `k` and all monomials `m` of the complementary degree.
    pub fn graded_component(&self, degree: u32) -> Arc<GradedSpan> {
        self.component(degree, false)
    }

    /// Same component but carrying row provenance for certificates.
    pub fn graded_component_tracked(&self, degree: u32) -> Arc<GradedSpan> {
        self.component(degree, true)
    }

    fn component(&self, degree: u32, track: bool) -> Arc<GradedSpan> {
        {
            let cache = self.cache.lock().unwrap();
            if let Some(span) = cache.get(&(degree, track)) {
                return Arc::clone(span);
            }
            if !track {
                // a tracked span answers untracked queries too
                if let Some(span) = cache.get(&(degree, true)) {
                    return Arc::clone(span);
                }
            }
        }
        let span = Arc::new(self.build_component(degree, track));
        self.cache
            .lock()
            .unwrap()
            .insert((degree, track), Arc::clone(&span));
        span
    }

    fn build_component(&self, degree: u32, track: bool) -> GradedSpan {
        let mut span = GradedSpan::empty(self.dim, degree);
        // pivot rows and their provenance, kept only when certificates are
        // wanted; rebuilding the tracked echelon from pivot rows alone keeps
        // every combination vector no longer than the rank
        let mut pioneers: Vec<(SparseVec, RowSource)> = Vec::new();
        'outer: for (gi, gen) in self.generators.iter().enumerate() {
            if gen.degree() > degree {
                continue;
            }
            for mult in enumerate_degree(self.dim, degree - gen.degree()) {
                if span.echelon.is_full() {
                    break 'outer;
                }
                let row = gen.mul_monomial(&mult);
                let v = span.to_sparse(&row);
                if track {
                    if span.echelon.insert(v.clone()) {
                        pioneers.push((
                            v,
                            RowSource {
                                generator: gi,
                                multiplier: mult.clone(),
                            },
                        ));
                    }
                } else {
                    span.echelon.insert(v);
                }
            }
        }
        if track {
            let mut solver = TriangularSolver::new(span.columns.len());
            let mut sources = Vec::with_capacity(pioneers.len());
            for (v, source) in pioneers {
                let grew = solver.insert(v);
                debug_assert!(grew, "pivot rows are independent");
                sources.push(source);
            }
            span.certificates = Some(CertificateLayer { solver, sources });
        }
        span
    }

    /// Membership of a nonzero homogeneous polynomial.
    pub fn contains(&self, p: &HomogeneousPoly) -> bool {
        assert!(!p.is_zero(), "membership of the zero polynomial is trivial");
        self.graded_component(p.degree()).contains(p)
    }

    /// Membership with an exact certificate over the generators.
    pub fn contains_with_certificate(&self, p: &HomogeneousPoly) -> Option<MembershipCertificate> {
        assert!(!p.is_zero(), "membership of the zero polynomial is trivial");
        self.graded_component_tracked(p.degree())
            .certificate(&self.generators, p)
    }

    /// Degree-`k` spans agree: equal rank and mutual reduction to zero.
    pub fn component_equal(&self, other: &IdealPresentation, degree: u32) -> bool {
        let a = self.graded_component(degree);
        let b = other.graded_component(degree);
        if a.rank() != b.rank() {
            return false;
        }
        b.basis().iter().all(|p| a.contains(p)) && a.basis().iter().all(|p| b.contains(p))
    }

    /// `other`'s degree-`k` span is contained in `self`'s.
    pub fn component_contains(&self, other: &IdealPresentation, degree: u32) -> bool {
        let a = self.graded_component(degree);
        other
            .graded_component(degree)
            .basis()
            .iter()
            .all(|p| a.contains(p))
    }

    /// Basis of the degree-`k` part of the colon ideal `(self : (by))`:
    /// all degree-`k` forms `f` with `f * b` in the ideal for every `b`.
    pub fn colon_component(&self, by: &[Monomial], degree: u32) -> GradedSpan {
        assert!(!by.is_empty(), "colon by an empty multiplier list");
        let unknowns = enumerate_degree(self.dim, degree);
        let n = unknowns.len();
        // constraint rows live over the unknown coefficients of f
        let mut constraints = Echelon::new(n);
        for b in by {
            assert_eq!(b.dim(), self.dim, "multiplier dimension mismatch");
            let target_degree = degree + b.degree();
            let span = self.graded_component(target_degree);
            // residues of u_j * b modulo the component, as columns of a
            // constraint matrix indexed by the monomials of the bigger degree
            let mut rows_by_monomial: HashMap<usize, Vec<(usize, Rational)>> = HashMap::new();
            for (j, u) in unknowns.iter().enumerate() {
                let image = HomogeneousPoly::from_monomial(u.mul(b));
                let residue = span.reduce(&image);
                for (m, c) in residue.terms() {
                    rows_by_monomial
                        .entry(span.col_index[m])
                        .or_default()
                        .push((j, c.clone()));
                }
            }
            let mut keys: Vec<usize> = rows_by_monomial.keys().copied().collect();
            keys.sort_unstable();
            for key in keys {
                constraints.insert(SparseVec::new(rows_by_monomial.remove(&key).unwrap()));
                if constraints.is_full() {
                    break;
                }
            }
            if constraints.is_full() {
                break;
            }
        }
        let kernel = constraints.kernel_basis();
        let probe = GradedSpan::empty(self.dim, degree);
        let polys: Vec<HomogeneousPoly> = kernel.iter().map(|v| probe.decode_sparse(v)).collect();
        GradedSpan::from_polys(self.dim, degree, &polys)
    }

    /// Representatives of a basis of the degree-`k` socle of `R/I`: the colon
    /// by all variables, reduced modulo the component and normalized so the
    /// revlex-leading coefficient is 1.
    pub fn socle_basis(&self, degree: u32) -> Vec<HomogeneousPoly> {
        let variables: Vec<Monomial> = (1..=self.dim)
            .map(|i| Monomial::variable(self.dim, i))
            .collect();
        let colon = self.colon_component(&variables, degree);
        let component = self.graded_component(degree);
        let residues: Vec<HomogeneousPoly> = colon
            .basis()
            .iter()
            .map(|p| component.reduce(p))
            .filter(|p| !p.is_zero())
            .collect();
        let quotient = GradedSpan::from_polys(self.dim, degree, &residues);
        quotient
            .basis()
            .iter()
            .map(|p| {
                let lead = p.coefficient(p.leading_monomial().expect("nonzero basis element"));
                p.scale(&(Rational::one() / lead))
            })
            .collect()
    }
}

impl Clone for IdealPresentation {
    fn clone(&self) -> Self {
        IdealPresentation::new(self.dim, self.generators.clone())
    }
}

impl PartialEq for IdealPresentation {
    fn eq(&self, other: &Self) -> bool {
        self.dim == other.dim && self.generators == other.generators
    }
}

impl fmt::Debug for IdealPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IdealPresentation")
            .field("dim", &self.dim)
            .field("generators", &self.generators)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monomial::{binomial, parse_monomial};
    use crate::poly::rat;

    fn m(dim: usize, s: &str) -> Monomial {
        parse_monomial(s, dim).unwrap()
    }

    fn mono_poly(dim: usize, s: &str) -> HomogeneousPoly {
        HomogeneousPoly::from_monomial(m(dim, s))
    }

    fn maximal_ideal(dim: usize) -> IdealPresentation {
        let vars: Vec<Monomial> = (1..=dim).map(|i| Monomial::variable(dim, i)).collect();
        IdealPresentation::from_monomials(dim, &vars)
    }

    /// Diagonal reduction of the square of the maximal ideal, straight from
    /// its definition; kept local so the tests here do not depend on the
    /// construction under test elsewhere.
    fn square_reduction(dim: usize) -> IdealPresentation {
        let gens: Vec<HomogeneousPoly> = (1..=dim)
            .map(|n| {
                let monos: Vec<Monomial> = (1..=(dim - n + 1))
                    .map(|j| Monomial::quadratic(dim, j, j + n - 1))
                    .collect();
                HomogeneousPoly::monomial_sum(dim, 2, &monos)
            })
            .collect();
        IdealPresentation::new(dim, gens)
    }

    #[test]
    fn component_below_generator_degree_is_empty() {
        let ideal = IdealPresentation::from_monomials(2, &[m(2, "x1*x2")]);
        assert_eq!(ideal.graded_component(1).rank(), 0);
    }

    #[test]
    fn maximal_ideal_square_component_is_full() {
        for dim in 1..=4 {
            let ideal = maximal_ideal(dim);
            assert_eq!(ideal.graded_component(2).rank(), binomial(dim + 1, 2));
        }
    }

    #[test]
    fn square_reduction_membership_dim2() {
        let j = square_reduction(2);
        assert!(j.contains(&mono_poly(2, "x1*x2")));
        assert!(!j.contains(&mono_poly(2, "x1^2")));
        for g in j.generators() {
            assert!(j.contains(g));
        }
    }

    #[test]
    fn certificates_remultiply() {
        let j = square_reduction(3);
        let p = mono_poly(3, "x1^2*x2");
        let cert = j.contains_with_certificate(&p);
        // certificate soundness is asserted inside certificate()
        assert!(cert.is_some());
        let missing = j.contains_with_certificate(&mono_poly(3, "x1^3"));
        assert!(missing.is_none());
    }

    #[test]
    fn component_equality() {
        let a = IdealPresentation::from_monomials(2, &[m(2, "x1")]);
        let b = IdealPresentation::from_monomials(2, &[m(2, "x2")]);
        assert!(!a.component_equal(&b, 1));
        assert!(a.component_equal(&a, 1));
    }

    #[test]
    fn colon_examples() {
        // (J : m) in degree 2 over two variables picks up x1^2
        let j = square_reduction(2);
        let vars = [m(2, "x1"), m(2, "x2")];
        let colon = j.colon_component(&vars, 2);
        assert_eq!(colon.rank(), 3);
        assert!(colon.contains(&mono_poly(2, "x1^2")));

        // m : x1 in degree 1 is the whole degree-1 space
        let maximal = maximal_ideal(3);
        let colon = maximal.colon_component(&[m(3, "x1")], 1);
        assert_eq!(colon.rank(), 3);

        // no degree-2 socle for the three-variable square reduction
        let j3 = square_reduction(3);
        let vars3 = [m(3, "x1"), m(3, "x2"), m(3, "x3")];
        let colon = j3.colon_component(&vars3, 2);
        let component = j3.graded_component(2);
        assert_eq!(colon.rank(), component.rank());
        for p in colon.basis() {
            assert!(component.contains(&p));
        }
    }

    #[test]
    fn socle_examples() {
        let j = square_reduction(2);
        assert_eq!(j.socle_basis(2), vec![mono_poly(2, "x1^2")]);

        let maximal = maximal_ideal(3);
        for degree in 1..=3 {
            assert!(maximal.socle_basis(degree).is_empty());
        }

        let j4 = square_reduction(4);
        assert_eq!(j4.socle_basis(4), vec![mono_poly(4, "x1^4")]);
    }

    #[test]
    fn colon_always_contains_component() {
        for dim in 2..=4 {
            let j = square_reduction(dim);
            let vars: Vec<Monomial> = (1..=dim).map(|i| Monomial::variable(dim, i)).collect();
            for degree in 2..=4u32 {
                let colon = j.colon_component(&vars, degree);
                for p in j.graded_component(degree).basis() {
                    assert!(colon.contains(&p));
                }
            }
        }
    }

    #[test]
    fn certificates_serialize_to_json() {
        let j = square_reduction(2);
        let cert = j
            .contains_with_certificate(&mono_poly(2, "x1*x2^2"))
            .unwrap();
        let value = serde_json::to_value(&cert).unwrap();
        assert_eq!(value["target"], "x1*x2^2");
        let term = &value["terms"][0];
        assert!(term["generator"].is_u64());
        assert!(term["multiplier"].is_string());
        assert!(term["coefficient"].is_string());
    }

    #[test]
    fn presentations_are_shareable_across_threads() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<IdealPresentation>();
        assert_send_sync::<GradedSpan>();
    }

    #[test]
    fn scaled_generators_span_same_component() {
        let gens = vec![
            mono_poly(2, "x1^2").add(&mono_poly(2, "x2^2")),
            mono_poly(2, "x1*x2").scale(&rat(7)),
        ];
        let a = IdealPresentation::new(2, gens);
        let b = square_reduction(2);
        assert!(a.component_equal(&b, 2));
        assert!(a.component_equal(&b, 5));
    }
}
