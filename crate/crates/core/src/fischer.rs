//! Fischer operators `q -> P(D)(psi * q)` as exact linear maps between graded
//! slices, Fischer decompositions `f = psi*q + h`, and per-degree surjectivity
//! profiles.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, ExactMatrix, RrefResult};
use crate::monomial::{Basis, Degree, SliceKind};
use crate::poly::Poly;
use crate::scalar::{Field, Scalar};

/// `q -> P(D)(psi * q)`; `P = |x|^2` gives `q -> Laplacian(psi * q)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FischerOperator {
    psi: Poly,
    operator: Poly,
}

fn nonconstant_degree(p: &Poly) -> Option<u32> {
    match p.degree() {
        Degree::Finite(d) if d >= 1 => Some(d),
        _ => None,
    }
}

impl FischerOperator {
    /// The Laplacian Fischer operator of `psi`.
    pub fn new(psi: Poly) -> Result<Self> {
        let op = Poly::norm_squared(psi.arity(), psi.field());
        Self::with_operator(psi, op)
    }

    pub fn with_operator(psi: Poly, operator: Poly) -> Result<Self> {
        if psi.arity() != operator.arity() {
            return Err(Error::ArityMismatch { left: psi.arity(), right: operator.arity() });
        }
        if psi.field() != operator.field() {
            return Err(Error::FieldMismatch { left: psi.field(), right: operator.field() });
        }
        nonconstant_degree(&psi).ok_or(Error::ConstantPsi)?;
        nonconstant_degree(&operator).ok_or(Error::ConstantOperator)?;
        Ok(FischerOperator { psi, operator })
    }

    pub fn psi(&self) -> &Poly {
        &self.psi
    }

    pub fn operator(&self) -> &Poly {
        &self.operator
    }

    pub fn arity(&self) -> usize {
        self.psi.arity()
    }

    pub fn field(&self) -> Field {
        self.psi.field()
    }

    pub fn psi_degree(&self) -> u32 {
        nonconstant_degree(&self.psi).expect("checked at construction")
    }

    pub fn operator_degree(&self) -> u32 {
        nonconstant_degree(&self.operator).expect("checked at construction")
    }

    /// `deg psi - deg P`, the nominal degree change used to schedule sources.
    pub fn degree_shift(&self) -> i64 {
        self.psi_degree() as i64 - self.operator_degree() as i64
    }

    /// Upper bound on `deg F(q) - deg q`; differs from [`degree_shift`](Self::degree_shift)
    /// only when `P` is not homogeneous.
    pub fn max_degree_increase(&self) -> i64 {
        let low = self.operator.terms().map(|(m, _)| m.degree()).min().expect("non-constant");
        self.psi_degree() as i64 - low as i64
    }

    pub fn apply(&self, q: &Poly) -> Result<Poly> {
        self.psi.checked_mul(q)?.apply_operator(&self.operator)
    }

    /// Column `j` holds the target coordinates of `F(source[j])`.
    pub fn matrix(&self, source: &Basis, target: &Basis) -> Result<ExactMatrix> {
        for b in [source, target] {
            if b.arity() != self.arity() {
                return Err(Error::ArityMismatch { left: self.arity(), right: b.arity() });
            }
        }
        let field = self.field();
        let mut m = ExactMatrix::zeros(target.len(), source.len(), field);
        for (j, mono) in source.monomials().iter().enumerate() {
            let image = self.apply(&Poly::term(self.arity(), Scalar::one(field), mono.clone()))?;
            for (tm, c) in image.terms() {
                let i = target.index_of(tm).ok_or_else(|| Error::Overflow { monomial: tm.to_string() })?;
                m.set(i, j, c.clone());
            }
        }
        Ok(m)
    }
}

pub fn fischer_apply(op: &FischerOperator, q: &Poly) -> Result<Poly> {
    op.apply(q)
}

pub fn operator_matrix(op: &FischerOperator, source: &Basis, target: &Basis) -> Result<ExactMatrix> {
    op.matrix(source, target)
}

/// Coordinates of `p` in `basis`; errors if some term lies outside it.
pub fn coordinates(p: &Poly, basis: &Basis) -> Result<Vec<Scalar>> {
    if p.arity() != basis.arity() {
        return Err(Error::ArityMismatch { left: p.arity(), right: basis.arity() });
    }
    let mut v = vec![Scalar::zero(p.field()); basis.len()];
    for (m, c) in p.terms() {
        let i = basis.index_of(m).ok_or(Error::NotInBasis)?;
        v[i] = c.clone();
    }
    Ok(v)
}

pub fn from_coordinates(basis: &Basis, field: Field, coords: &[Scalar]) -> Result<Poly> {
    if coords.len() != basis.len() {
        return Err(Error::DimensionMismatch { expected: basis.len(), got: coords.len() });
    }
    Poly::from_terms(
        basis.arity(),
        field,
        basis.monomials().iter().zip(coords).map(|(m, c)| (m.exponents().to_vec(), c.clone())),
    )
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CertificateChecks {
    pub identity_exact: bool,
    pub h_harmonic_exact: bool,
}

impl CertificateChecks {
    pub fn passed(&self) -> bool {
        self.identity_exact && self.h_harmonic_exact
    }
}

/// `f = psi*q + h` with `h` harmonic.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DecompositionCertificate {
    pub psi: Poly,
    pub f: Poly,
    pub q: Poly,
    pub h: Poly,
    /// Slack at which the quotient was found.
    pub slack_used: u32,
    pub checks: CertificateChecks,
}

impl DecompositionCertificate {
    /// Recomputes both identities from the stored polynomials alone.
    pub fn verify(&self) -> CertificateChecks {
        let identity_exact =
            self.psi.checked_mul(&self.q).and_then(|pq| pq.checked_add(&self.h)).is_ok_and(|rhs| rhs == self.f);
        CertificateChecks { identity_exact, h_harmonic_exact: self.h.laplacian().is_zero() }
    }
}

/// Searches `q` in `filtered(deg f - deg psi + 2 + s)` for `s = 0..=slack` with
/// `Laplacian(psi*q) = Laplacian(f)` and returns `h = f - psi*q`.
///
/// Failure is inconclusive: a larger slack may still succeed.
pub fn fischer_decompose(psi: &Poly, f: &Poly, slack: u32) -> Result<DecompositionCertificate> {
    let op = FischerOperator::new(psi.clone())?;
    if f.arity() != psi.arity() {
        return Err(Error::ArityMismatch { left: psi.arity(), right: f.arity() });
    }
    if f.field() != psi.field() {
        return Err(Error::FieldMismatch { left: psi.field(), right: f.field() });
    }
    let finish = |q: Poly, s: u32| -> Result<DecompositionCertificate> {
        let h = f.checked_sub(&psi.checked_mul(&q)?)?;
        let mut cert = DecompositionCertificate {
            psi: psi.clone(),
            f: f.clone(),
            q,
            h,
            slack_used: s,
            checks: CertificateChecks { identity_exact: false, h_harmonic_exact: false },
        };
        cert.checks = cert.verify();
        Ok(cert)
    };

    let lap_f = f.laplacian();
    if lap_f.is_zero() {
        return finish(Poly::zero(f.arity(), f.field()), 0);
    }
    let deg_f = f.degree().finite().expect("nonzero") as i64;
    let deg_psi = op.psi_degree() as i64;
    for s in 0..=slack {
        let m = deg_f - deg_psi + 2 + s as i64;
        if m < 0 {
            continue;
        }
        let source = Basis::new(f.arity(), SliceKind::Filtered(m as u32))?;
        let target = Basis::new(f.arity(), SliceKind::Filtered((m + deg_psi - 2) as u32))?;
        let a = op.matrix(&source, &target)?;
        let b = coordinates(&lap_f, &target)?;
        if let Some(x) = linalg::solve(&a, &b)? {
            return finish(from_coordinates(&source, f.field(), &x)?, s);
        }
    }
    Err(Error::NoDecompositionFound { slack })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileMode {
    Homogeneous,
    Filtered,
}

impl std::str::FromStr for ProfileMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "homogeneous" => Ok(ProfileMode::Homogeneous),
            "filtered" => Ok(ProfileMode::Filtered),
            other => Err(format!("unknown mode `{other}` (expected homogeneous or filtered)")),
        }
    }
}

/// One restricted operator `source slice -> target slice`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankRow {
    pub target_degree: u32,
    /// May be negative when the operator shifts degrees up by more than `n`;
    /// the source is then empty.
    pub source_degree: i64,
    pub slack: u32,
    pub dim_source: usize,
    pub dim_target: usize,
    /// Dimension of `F(source) ∩ target`.
    pub rank: usize,
    pub surjective_onto_target: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    /// The target slice is covered using source degree `n - deg psi + 2 + slack`.
    SurjectiveWithSlack { slack: u32 },
    /// Conclusive failure (homogeneous mode only): `witness` is outside the range.
    NotSurjective { witness: Poly },
    /// No covering source found up to the slack limit; `witness` is a target
    /// monomial outside the range of the largest source tried.
    Undetermined { witness: Poly },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeVerdict {
    pub target_degree: u32,
    #[serde(flatten)]
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RankProfile {
    pub psi: Poly,
    pub mode: ProfileMode,
    pub rows: Vec<RankRow>,
    pub verdicts: Vec<DegreeVerdict>,
}

impl RankProfile {
    pub fn all_surjective(&self) -> bool {
        self.verdicts.iter().all(|v| matches!(v.verdict, Verdict::SurjectiveWithSlack { .. }))
    }

    pub fn any_undetermined(&self) -> bool {
        self.verdicts.iter().any(|v| matches!(v.verdict, Verdict::Undetermined { .. }))
    }

    pub fn max_slack_used(&self) -> Option<u32> {
        self.verdicts
            .iter()
            .filter_map(|v| match v.verdict {
                Verdict::SurjectiveWithSlack { slack } => Some(slack),
                _ => None,
            })
            .max()
    }
}

struct SliceTest {
    row: RankRow,
    witness: Option<Poly>,
}

/// Tests whether `F(source)` contains every monomial of `target_prefix`, a
/// prefix of `image` in basis order.
fn test_slice(
    op: &FischerOperator,
    source_degree: i64,
    source_kind: fn(u32) -> SliceKind,
    image: &Basis,
    target_len: usize,
    target_degree: u32,
    slack: u32,
) -> Result<SliceTest> {
    let field = op.field();
    let witness_of = |j: usize| Poly::term(op.arity(), Scalar::one(field), image.monomials()[j].clone());
    if source_degree < 0 {
        return Ok(SliceTest {
            row: RankRow {
                target_degree,
                source_degree,
                slack,
                dim_source: 0,
                dim_target: target_len,
                rank: 0,
                surjective_onto_target: target_len == 0,
            },
            witness: (target_len > 0).then(|| witness_of(0)),
        });
    }
    let source = Basis::new(op.arity(), source_kind(source_degree as u32))?;
    let a = op.matrix(&source, image)?;
    let rr: RrefResult = a.rref();
    // rows of the transform below the rank annihilate the range; their
    // restriction to the target columns measures what is missing
    let left_null_rows: Vec<Vec<Scalar>> =
        (rr.rank..image.len()).map(|i| rr.transform.row(i)[..target_len].to_vec()).collect();
    let missing = ExactMatrix::from_rows(field, target_len, left_null_rows)?.rank();
    let witness = (0..target_len).find(|&j| !rr.contains_unit(j)).map(witness_of);
    Ok(SliceTest {
        row: RankRow {
            target_degree,
            source_degree,
            slack,
            dim_source: source.len(),
            dim_target: target_len,
            rank: target_len - missing,
            surjective_onto_target: missing == 0,
        },
        witness,
    })
}

fn profile_degree(
    op: &FischerOperator,
    n: u32,
    slack: u32,
    mode: ProfileMode,
) -> Result<(Vec<RankRow>, DegreeVerdict)> {
    let shift = op.degree_shift();
    match mode {
        ProfileMode::Homogeneous => {
            let image = Basis::new(op.arity(), SliceKind::Homogeneous(n))?;
            let t = test_slice(op, n as i64 - shift, SliceKind::Homogeneous, &image, image.len(), n, 0)?;
            let verdict = match t.witness {
                None => Verdict::SurjectiveWithSlack { slack: 0 },
                Some(witness) => Verdict::NotSurjective { witness },
            };
            Ok((vec![t.row], DegreeVerdict { target_degree: n, verdict }))
        }
        ProfileMode::Filtered => {
            let target_len = Basis::new(op.arity(), SliceKind::Filtered(n))?.len();
            let mut rows = Vec::new();
            let mut last_witness = None;
            for s in 0..=slack {
                let m = n as i64 - shift + s as i64;
                let image_degree = (m + op.max_degree_increase()).max(n as i64) as u32;
                let image = Basis::new(op.arity(), SliceKind::Filtered(image_degree))?;
                let t = test_slice(op, m, SliceKind::Filtered, &image, target_len, n, s)?;
                let done = t.row.surjective_onto_target;
                rows.push(t.row);
                if done {
                    return Ok((
                        rows,
                        DegreeVerdict { target_degree: n, verdict: Verdict::SurjectiveWithSlack { slack: s } },
                    ));
                }
                last_witness = t.witness;
            }
            let witness = last_witness.expect("a non-surjective slice has a witness");
            Ok((rows, DegreeVerdict { target_degree: n, verdict: Verdict::Undetermined { witness } }))
        }
    }
}

/// Per-target-degree rank profile of the Laplacian Fischer operator of `psi`.
///
/// Homogeneous mode (homogeneous `psi` only) is conclusive degree by degree.
/// Filtered mode climbs the slack ladder and never reports non-surjectivity.
pub fn rank_profile(psi: &Poly, max_target_degree: u32, slack: u32, mode: ProfileMode) -> Result<RankProfile> {
    rank_profile_of(&FischerOperator::new(psi.clone())?, max_target_degree, slack, mode)
}

/// [`rank_profile`] for an arbitrary Fischer operator.
pub fn rank_profile_of(
    op: &FischerOperator,
    max_target_degree: u32,
    slack: u32,
    mode: ProfileMode,
) -> Result<RankProfile> {
    if mode == ProfileMode::Homogeneous && !(op.psi().is_homogeneous() && op.operator().is_homogeneous()) {
        return Err(Error::NotHomogeneous);
    }
    let degrees: Vec<u32> = (0..=max_target_degree).collect();
    #[cfg(feature = "parallel")]
    let per_degree: Vec<_> = {
        use rayon::prelude::*;
        degrees.par_iter().map(|&n| profile_degree(op, n, slack, mode)).collect()
    };
    #[cfg(not(feature = "parallel"))]
    let per_degree: Vec<_> = degrees.iter().map(|&n| profile_degree(op, n, slack, mode)).collect();

    let mut rows = Vec::new();
    let mut verdicts = Vec::new();
    for r in per_degree {
        let (mut rs, v) = r?;
        rows.append(&mut rs);
        verdicts.push(v);
    }
    Ok(RankProfile { psi: op.psi().clone(), mode, rows, verdicts })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BijectivityRow {
    pub degree: u32,
    pub dim: usize,
    pub rank: usize,
    pub nonsingular: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FischerTheoremReport {
    pub p: Poly,
    pub rows: Vec<BijectivityRow>,
}

impl FischerTheoremReport {
    pub fn all_nonsingular(&self) -> bool {
        self.rows.iter().all(|r| r.nonsingular)
    }
}

/// For homogeneous `P`, checks that `q -> P(D)(P*q)` is invertible on each
/// homogeneous slice of degree `m <= max_degree`.
pub fn fischer_theorem_check(p: &Poly, max_degree: u32) -> Result<FischerTheoremReport> {
    if !p.is_homogeneous() {
        return Err(Error::NotHomogeneous);
    }
    let op = FischerOperator::with_operator(p.clone(), p.clone())?;
    let rows = (0..=max_degree)
        .map(|m| {
            let basis = Basis::new(p.arity(), SliceKind::Homogeneous(m))?;
            let rank = op.matrix(&basis, &basis)?.rank();
            Ok(BijectivityRow { degree: m, dim: basis.len(), rank, nonsingular: rank == basis.len() })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(FischerTheoremReport { p: p.clone(), rows })
}

/// `psi = (x3 - phi(x1 + i*x2))^2` in `Q(i)[x1, x2, x3]`, with
/// `phi(z) = a0 + a1 z + ... + an z^n` given by its coefficients.
pub fn khavinson_psi(phi_coeffs: &[Scalar]) -> Result<Poly> {
    if let Some(bad) = phi_coeffs.iter().find(|c| c.field() != Field::Qi) {
        return Err(Error::FieldMismatch { left: Field::Qi, right: bad.field() });
    }
    if phi_coeffs.iter().skip(1).all(Scalar::is_zero) {
        return Err(Error::ConstantPhi);
    }
    let f = Field::Qi;
    let z = Poly::var(3, f, 0)?.checked_add(&Poly::var(3, f, 1)?.checked_scale(&Scalar::i())?)?;
    let mut phi = Poly::zero(3, f);
    for a in phi_coeffs.iter().rev() {
        phi = phi.checked_mul(&z)?.checked_add(&Poly::constant(3, a.clone()))?;
    }
    let inner = Poly::var(3, f, 2)?.checked_sub(&phi)?;
    inner.checked_mul(&inner)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expr::parse_polynomial;

    fn p(text: &str, vars: &[&str]) -> Poly {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        parse_polynomial(text, &vars, Field::Q).unwrap()
    }

    fn p2(text: &str) -> Poly {
        p(text, &["x", "y"])
    }

    #[test]
    fn apply_examples() {
        let op = FischerOperator::new(p2("x^2+y^2")).unwrap();
        assert_eq!(op.apply(&p2("1")).unwrap(), p2("4"));
        let op = FischerOperator::new(p2("x*y")).unwrap();
        assert_eq!(op.apply(&p2("x*y")).unwrap(), p2("2*x^2+2*y^2"));
        let op = FischerOperator::new(p2("x^2+y^2-1")).unwrap();
        assert_eq!(op.apply(&p2("x")).unwrap(), p2("8*x"));
    }

    #[test]
    fn constant_psi_rejected() {
        assert_eq!(FischerOperator::new(p2("3")).unwrap_err(), Error::ConstantPsi);
        assert_eq!(FischerOperator::with_operator(p2("x"), p2("2")).unwrap_err(), Error::ConstantOperator);
    }

    #[test]
    fn matrix_examples() {
        let op = FischerOperator::new(p2("x^2+y^2")).unwrap();
        let h0 = Basis::new(2, SliceKind::Homogeneous(0)).unwrap();
        assert_eq!(op.matrix(&h0, &h0).unwrap(), ExactMatrix::from_i64_rows(Field::Q, &[&[4]]).unwrap());
        let h1 = Basis::new(2, SliceKind::Homogeneous(1)).unwrap();
        assert_eq!(op.matrix(&h1, &h1).unwrap(), ExactMatrix::from_i64_rows(Field::Q, &[&[8, 0], &[0, 8]]).unwrap());

        let op = FischerOperator::new(p2("x^2+y^2-1")).unwrap();
        let f2 = Basis::new(2, SliceKind::Filtered(2)).unwrap();
        let m = op.matrix(&f2, &f2).unwrap();
        assert_eq!((m.rows(), m.cols(), m.rank()), (6, 6, 6));
    }

    #[test]
    fn matrix_overflow() {
        let op = FischerOperator::new(p2("x^3")).unwrap();
        let h1 = Basis::new(2, SliceKind::Homogeneous(1)).unwrap();
        assert!(matches!(op.matrix(&h1, &h1), Err(Error::Overflow { .. })));
    }

    #[test]
    fn decompose_examples() {
        let psi = p2("x^2+y^2-1");
        let c = fischer_decompose(&psi, &p2("x^2"), 0).unwrap();
        assert_eq!(c.q, p2("1/2"));
        assert_eq!(c.h, p2("(x^2-y^2+1)/2"));
        assert!(c.checks.passed());

        let c = fischer_decompose(&psi, &p2("x^2-y^2"), 0).unwrap();
        assert!(c.q.is_zero());
        assert_eq!(c.h, p2("x^2-y^2"));

        let c = fischer_decompose(&p2("x^2+y^2"), &p2("x^2+y^2"), 0).unwrap();
        assert_eq!(c.q, p2("1"));
        assert!(c.h.is_zero());
    }

    #[test]
    fn decompose_harmonic_data_against_cubic_psi() {
        // y is harmonic, so q = 0 works whatever psi is
        let c = fischer_decompose(&p2("x^3"), &p2("y"), 0).unwrap();
        assert!(c.q.is_zero());
        assert_eq!(c.h, p2("y"));
    }

    #[test]
    fn decompose_inconclusive() {
        assert_eq!(fischer_decompose(&p2("x^3"), &p2("y^3"), 0).unwrap_err(), Error::NoDecompositionFound { slack: 0 });
    }

    #[test]
    fn tampered_certificate_fails_verification() {
        let mut c = fischer_decompose(&p2("x^2+y^2-1"), &p2("x^2"), 0).unwrap();
        c.h = &c.h + &p2("x^2");
        let checks = c.verify();
        assert!(!checks.identity_exact);
        assert!(!checks.h_harmonic_exact);
    }

    #[test]
    fn circle_profile_is_surjective_at_slack_zero() {
        let prof = rank_profile(&p2("x^2+y^2-1"), 8, 0, ProfileMode::Filtered).unwrap();
        assert_eq!(prof.verdicts.len(), 9);
        assert!(prof.all_surjective());
        for row in &prof.rows {
            assert_eq!(row.dim_source, row.dim_target);
            assert_eq!(row.rank, row.dim_target);
        }
    }

    #[test]
    fn linear_psi_homogeneous_profile() {
        let prof = rank_profile(&p2("x"), 6, 0, ProfileMode::Homogeneous).unwrap();
        assert!(prof.all_surjective());
        for row in &prof.rows {
            assert_eq!(row.rank, row.target_degree as usize + 1);
        }
    }

    #[test]
    fn cubic_psi_is_not_surjective_homogeneously() {
        let prof = rank_profile(&p2("x^3"), 4, 0, ProfileMode::Homogeneous).unwrap();
        // degree 0 has an empty source
        assert!(matches!(prof.verdicts[0].verdict, Verdict::NotSurjective { .. }));
        // H_{n-1} -> H_n cannot cover H_n in two variables
        assert!(prof.verdicts.iter().all(|v| matches!(v.verdict, Verdict::NotSurjective { .. })));
        assert!(!prof.any_undetermined());
    }

    #[test]
    fn homogeneous_mode_needs_homogeneous_psi() {
        assert_eq!(rank_profile(&p2("x^2-1"), 2, 0, ProfileMode::Homogeneous).unwrap_err(), Error::NotHomogeneous);
    }

    #[test]
    fn undetermined_witness_is_outside_the_range() {
        let prof = rank_profile(&p2("x^3"), 1, 1, ProfileMode::Filtered).unwrap();
        let v = prof.verdicts.iter().find(|v| matches!(v.verdict, Verdict::Undetermined { .. })).unwrap();
        let Verdict::Undetermined { witness } = &v.verdict else { unreachable!() };
        // witness is a single monomial of the target slice
        assert_eq!(witness.len(), 1);
        assert!(witness.degree() <= Degree::Finite(v.target_degree));
    }

    #[test]
    fn fischer_theorem_examples() {
        for text in ["x", "x*y", "x^2+y^2"] {
            let r = fischer_theorem_check(&p2(text), 6).unwrap();
            assert_eq!(r.rows.len(), 7);
            assert!(r.all_nonsingular(), "{text}");
        }
        assert_eq!(fischer_theorem_check(&p2("x^2+y"), 2).unwrap_err(), Error::NotHomogeneous);
    }

    #[test]
    fn khavinson_linear_phi() {
        let f = Field::Qi;
        let phi = [Scalar::zero(f), Scalar::one(f)];
        let psi = khavinson_psi(&phi).unwrap();
        // hand expansion of (x3 - x1 - i x2)^2
        let two_i = &Scalar::i() * &Scalar::from_i64(f, 2);
        let want = Poly::from_terms(
            3,
            f,
            vec![
                (vec![0, 0, 2], Scalar::one(f)),
                (vec![2, 0, 0], Scalar::one(f)),
                (vec![0, 2, 0], Scalar::from_i64(f, -1)),
                (vec![1, 0, 1], Scalar::from_i64(f, -2)),
                (vec![0, 1, 1], -&two_i),
                (vec![1, 1, 0], two_i.clone()),
            ],
        )
        .unwrap();
        assert_eq!(psi, want);
    }

    #[test]
    fn khavinson_degrees_and_errors() {
        let f = Field::Qi;
        let psi = khavinson_psi(&[Scalar::zero(f), Scalar::zero(f), Scalar::one(f)]).unwrap();
        assert_eq!(psi.degree(), Degree::Finite(4));
        assert_eq!(khavinson_psi(&[Scalar::from_i64(f, 5)]).unwrap_err(), Error::ConstantPhi);
        assert_eq!(khavinson_psi(&[Scalar::from_i64(f, 5), Scalar::zero(f)]).unwrap_err(), Error::ConstantPhi);
        assert!(matches!(
            khavinson_psi(&[Scalar::zero(Field::Q), Scalar::one(Field::Q)]),
            Err(Error::FieldMismatch { .. })
        ));
    }
}
