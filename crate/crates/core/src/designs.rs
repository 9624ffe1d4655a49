//! Folded Wronskians and subspace designs: the Guruswami-Kopparty construction,
//! its improved bound, and exhaustive audits.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::codes::{EvaluationScheme, LinearCode};
use crate::error::{check_guard, invalid, Error, Result};
use crate::field::{Field, FiniteField};
use crate::matrix::Matrix;
use crate::poly::{poly_det, Poly};
use crate::subspace::{gaussian_binomial, subspace_cells, Subspace};

/// Entry (i, j) is f_j(gamma^i X), i and j from 0.
pub fn folded_wronskian<F: Field>(fs: &[Poly<F>], gamma: &F::Elem) -> Result<Vec<Vec<Poly<F>>>> {
    let Some(first) = fs.first() else {
        return Ok(Vec::new());
    };
    let field = first.field();
    if field.is_zero(gamma) {
        return invalid("gamma must be nonzero");
    }
    let mut rows = Vec::with_capacity(fs.len());
    let mut g = field.one();
    for _ in 0..fs.len() {
        rows.push(fs.iter().map(|f| f.scale_argument(&g)).collect());
        g = field.mul(&g, gamma);
    }
    Ok(rows)
}

/// det of the folded Wronskian.
pub fn wronskian_det<F: Field>(fs: &[Poly<F>], gamma: &F::Elem) -> Result<Poly<F>> {
    let Some(first) = fs.first() else {
        return invalid("the Wronskian needs at least one polynomial");
    };
    let field = first.field().clone();
    poly_det(&field, &folded_wronskian(fs, gamma)?)
}

/// Linear independence of polynomials of degree < k through the Wronskian criterion.
/// Requires k < q and ord(gamma) >= k.
pub fn independence_via_wronskian<F: FiniteField>(fs: &[Poly<F>], gamma: &F::Elem, k: usize) -> Result<bool> {
    let Some(first) = fs.first() else {
        return Ok(true);
    };
    let field = first.field();
    if (k as u64) >= field.order() {
        return Err(Error::Precondition(format!("k = {k} must be below q = {}", field.order())));
    }
    match field.multiplicative_order(gamma) {
        Some(ord) if ord >= k as u64 => {}
        Some(ord) => return Err(Error::Precondition(format!("gamma has order {ord} < k = {k}"))),
        None => return Err(Error::Precondition("gamma must be nonzero".into())),
    }
    if let Some(f) = fs.iter().find(|f| f.degree().is_some_and(|d| d >= k)) {
        return Err(Error::Precondition(format!("polynomial of degree {:?} is not below k = {k}", f.degree())));
    }
    Ok(!wronskian_det(fs, gamma)?.is_zero())
}

/// Coefficient vectors (length k) as polynomials.
pub fn polys_from_rows<F: Field>(m: &Matrix<F>) -> Vec<Poly<F>> {
    m.to_rows().into_iter().map(|r| Poly::new(m.field().clone(), r)).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    GkConstruction,
    ExplicitList,
    FromCode,
}

/// Subspaces H_1..H_n of F^k.
#[derive(Clone, Debug, PartialEq)]
pub struct SubspaceDesign<F: Field> {
    field: F,
    k: usize,
    s: usize,
    subspaces: Vec<Subspace<F>>,
    provenance: Provenance,
}

impl<F: Field> SubspaceDesign<F> {
    /// Explicit list; every member must have codimension s.
    pub fn new(field: F, k: usize, s: usize, subspaces: Vec<Subspace<F>>) -> Result<Self> {
        for (i, h) in subspaces.iter().enumerate() {
            h.field().same_as(&field)?;
            if h.ambient() != k || h.dim() + s != k {
                return invalid(format!("H_{} has dimension {} in F^{}, expected {}", i + 1, h.dim(), h.ambient(), k as i64 - s as i64));
            }
        }
        Ok(SubspaceDesign { field, k, s, subspaces, provenance: Provenance::ExplicitList })
    }

    pub fn field(&self) -> &F {
        &self.field
    }
    pub fn k(&self) -> usize {
        self.k
    }
    /// Nominal codimension.
    pub fn s(&self) -> usize {
        self.s
    }
    pub fn n(&self) -> usize {
        self.subspaces.len()
    }
    pub fn subspaces(&self) -> &[Subspace<F>] {
        &self.subspaces
    }
    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// dim(H_i ∩ U) for every i.
    pub fn intersection_dims(&self, u: &Subspace<F>) -> Result<Vec<usize>> {
        self.subspaces.iter().map(|h| h.meet_dim(u)).collect()
    }
}

/// The design of a code: H_i = ker(pi_i). Codimensions may fall short of s for degenerate codes.
pub fn design_from_code<F: Field>(code: &LinearCode<F>) -> SubspaceDesign<F> {
    let subspaces = (0..code.n()).map(|i| code.position_kernel(i)).collect();
    SubspaceDesign {
        field: code.field().clone(),
        k: code.k(),
        s: code.s().min(code.k()),
        subspaces,
        provenance: Provenance::FromCode,
    }
}

/// H_i = polynomials of degree < k vanishing at alpha_i, gamma alpha_i, ..., gamma^{s-1} alpha_i.
pub fn gk_design<F: FiniteField>(scheme: &EvaluationScheme<F>, k: usize) -> Result<SubspaceDesign<F>> {
    let field = scheme.field();
    let (n, s) = (scheme.n(), scheme.s());
    if field.order() <= (n * s) as u64 {
        return Err(Error::Precondition(format!("need |F| = {} > n s = {}", field.order(), n * s)));
    }
    if s > k {
        return Err(Error::Precondition(format!("need s = {s} <= k = {k}")));
    }
    match field.multiplicative_order(scheme.gamma()) {
        Some(ord) if ord >= k as u64 => {}
        other => return Err(Error::Precondition(format!("gamma has order {other:?}, need >= k = {k}"))),
    }
    let mut subspaces = Vec::with_capacity(n);
    for i in 0..n {
        let pts = scheme.block_points(i);
        let mut eval = Matrix::zeros(field.clone(), s, k);
        for (j, x) in pts.iter().enumerate() {
            let mut v = field.one();
            for c in 0..k {
                eval.set(j, c, v.clone());
                v = field.mul(&v, x);
            }
        }
        subspaces.push(eval.kernel());
    }
    Ok(SubspaceDesign { field: field.clone(), k, s, subspaces, provenance: Provenance::GkConstruction })
}

fn check_bound_args(k: usize, s: usize, ell: usize) -> Result<()> {
    if ell == 0 || ell > s || s > k {
        return invalid(format!("need 1 <= l <= s <= k, got l = {ell}, s = {s}, k = {k}"));
    }
    Ok(())
}

/// floor(l (k - l) / (s - l + 1)), the improved bound for folded RS designs.
pub fn design_bound(k: usize, s: usize, ell: usize) -> Result<usize> {
    check_bound_args(k, s, ell)?;
    Ok(ell * (k - ell) / (s - ell + 1))
}

/// floor(l (k - 1) / (s - l + 1)), the earlier bound.
pub fn gk_old_bound(k: usize, s: usize, ell: usize) -> Result<usize> {
    check_bound_args(k, s, ell)?;
    Ok(ell * (k - 1) / (s - ell + 1))
}

/// Over an algebraically closed field no weak design beats this value.
pub fn closed_field_floor(k: usize, s: usize, ell: usize) -> Result<usize> {
    design_bound(k, s, ell)
}

/// Maxima of sum dim(H_i ∩ U) and of the number of H_i meeting U, with canonical-order witnesses.
#[derive(Clone, Debug, PartialEq)]
pub struct DesignAudit<F: Field> {
    pub ell: usize,
    pub a_strong: usize,
    pub a_weak: usize,
    pub strong_witness: Option<Subspace<F>>,
    pub weak_witness: Option<Subspace<F>>,
    pub exhaustive: bool,
    pub subspaces_checked: u64,
}

impl<F: Field> DesignAudit<F> {
    /// Recomputes both sums at the witnesses.
    pub fn witnesses_reproduce(&self, design: &SubspaceDesign<F>) -> Result<bool> {
        let strong_ok = match &self.strong_witness {
            Some(u) => design.intersection_dims(u)?.iter().sum::<usize>() == self.a_strong,
            None => self.subspaces_checked == 0,
        };
        let weak_ok = match &self.weak_witness {
            Some(u) => design.intersection_dims(u)?.iter().filter(|&&d| d > 0).count() == self.a_weak,
            None => self.subspaces_checked == 0,
        };
        Ok(strong_ok && weak_ok)
    }
}

/// Parity checks of each H_i as k x s matrices, so dim(H ∩ U) = dim U - rank(U P).
fn parity_checks<F: Field>(design: &SubspaceDesign<F>) -> Vec<Matrix<F>> {
    design.subspaces.iter().map(|h| h.annihilator().basis().transpose()).collect()
}

#[derive(Clone)]
struct Partial<F: Field> {
    strong: (usize, Option<Subspace<F>>),
    weak: (usize, Option<Subspace<F>>),
    checked: u64,
}

impl<F: Field> Partial<F> {
    fn empty() -> Self {
        Partial { strong: (0, None), weak: (0, None), checked: 0 }
    }

    fn observe(&mut self, u: &Subspace<F>, checks: &[Matrix<F>]) {
        let l = u.dim();
        let mut strong = 0;
        let mut weak = 0;
        for p in checks {
            let d = if p.cols() == 0 { l } else { l - u.basis().mul(p).expect("shapes agree").rank() };
            strong += d;
            weak += usize::from(d > 0);
        }
        if self.strong.1.is_none() || strong > self.strong.0 {
            self.strong = (strong, Some(u.clone()));
        }
        if self.weak.1.is_none() || weak > self.weak.0 {
            self.weak = (weak, Some(u.clone()));
        }
        self.checked += 1;
    }

    /// Keeps the earlier witness on ties; `self` precedes `later` in canonical order.
    fn merge(self, later: Self) -> Self {
        let pick = |a: (usize, Option<Subspace<F>>), b: (usize, Option<Subspace<F>>)| {
            if a.1.is_none() || (b.1.is_some() && b.0 > a.0) {
                b
            } else {
                a
            }
        };
        Partial {
            strong: pick(self.strong, later.strong),
            weak: pick(self.weak, later.weak),
            checked: self.checked + later.checked,
        }
    }

    fn into_audit(self, ell: usize, exhaustive: bool) -> DesignAudit<F> {
        DesignAudit {
            ell,
            a_strong: self.strong.0,
            a_weak: self.weak.0,
            strong_witness: self.strong.1,
            weak_witness: self.weak.1,
            exhaustive,
            subspaces_checked: self.checked,
        }
    }
}

/// Exhaustive audit over every l-dimensional U ⊆ F^k. Work is split across pivot
/// cells; the result does not depend on the split.
pub fn audit_design<F: FiniteField>(design: &SubspaceDesign<F>, ell: usize, guard: f64) -> Result<DesignAudit<F>> {
    if ell > design.k {
        return invalid(format!("l = {ell} exceeds k = {}", design.k));
    }
    check_guard("design audit", gaussian_binomial(design.k, ell, design.field.order()), guard)?;
    let checks = parity_checks(design);
    let partials: Vec<Partial<F>> = subspace_cells(&design.field, design.k, ell)
        .into_par_iter()
        .map(|cell| {
            let mut p = Partial::empty();
            for u in cell {
                p.observe(&u, &checks);
            }
            p
        })
        .collect();
    let total = partials.into_iter().fold(Partial::empty(), Partial::merge);
    Ok(total.into_audit(ell, true))
}

/// Audit over `samples` uniform l-subspaces; can refute a design but never certify one.
pub fn sampled_audit<F: FiniteField>(design: &SubspaceDesign<F>, ell: usize, samples: usize, seed: u64) -> Result<DesignAudit<F>> {
    if ell > design.k {
        return invalid(format!("l = {ell} exceeds k = {}", design.k));
    }
    let checks = parity_checks(design);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut p = Partial::empty();
    for _ in 0..samples {
        let u = Subspace::random(design.field.clone(), design.k, ell, &mut rng);
        p.observe(&u, &checks);
    }
    Ok(p.into_audit(ell, false))
}

/// The four planes of F^4 from the weak-design counterexample, over any field.
/// H1 = <e1,e2>, H2 = <e3,e4>, H3 = <e1+e3, e2+e4>, H4 = <e1+e4, e2-e3>.
pub fn counterexample_design<F: Field>(field: F) -> SubspaceDesign<F> {
    let bases: [[[i64; 4]; 2]; 4] = [
        [[1, 0, 0, 0], [0, 1, 0, 0]],
        [[0, 0, 1, 0], [0, 0, 0, 1]],
        [[1, 0, 1, 0], [0, 1, 0, 1]],
        [[1, 0, 0, 1], [0, 1, -1, 0]],
    ];
    let subspaces = bases
        .iter()
        .map(|b| {
            let rows = b.iter().map(|r| r.iter().map(|&x| field.from_i64(x)).collect()).collect();
            Subspace::from_vectors(field.clone(), 4, rows).expect("length 4")
        })
        .collect();
    SubspaceDesign::new(field, 4, 2, subspaces).expect("four planes in F^4")
}

/// The counterexample over F_3.
pub fn f3_counterexample() -> SubspaceDesign<crate::field::Gf> {
    counterexample_design(crate::field::Gf::prime(3).expect("3 is prime"))
}

/// Both sides of the folded-RS subcode bound
/// sum_i dim(V|_{I_i}) >= n dim V - dim V (k - dim V) / (s - dim V + 1).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SumBoundReport {
    pub dim_v: usize,
    pub lhs: usize,
    #[serde(serialize_with = "crate::io::ser_rational")]
    pub rhs: BigRational,
    pub holds: bool,
}

/// `messages` spans the subcode V inside the message space F^k.
pub fn puncture_sum_bound_check<F: Field>(code: &LinearCode<F>, messages: &Subspace<F>) -> Result<SumBoundReport> {
    code.field().same_as(messages.field())?;
    if messages.ambient() != code.k() {
        return Err(Error::Dimension(format!("subcode lives in F^{}, code has k = {}", messages.ambient(), code.k())));
    }
    let (k, s, n) = (code.k(), code.s(), code.n());
    let d = messages.dim();
    if d > s {
        return invalid(format!("dim V = {d} exceeds s = {s}"));
    }
    let lhs: usize = (0..n).map(|i| messages.basis().mul(&code.position_encoder(i)).expect("shapes agree").rank()).sum();
    let rhs = BigRational::from_integer(BigInt::from(n * d))
        - BigRational::new(BigInt::from(d * (k - d.min(k))), BigInt::from(s - d + 1));
    let holds = BigRational::from_integer(BigInt::from(lhs)) >= rhs;
    Ok(SumBoundReport { dim_v: d, lhs, rhs, holds })
}

/// One root-multiplicity comparison of the design-point property of the Wronskian.
#[derive(Clone, Debug, PartialEq)]
pub struct RootCheck<E> {
    pub position: usize,
    pub shift: usize,
    pub point: E,
    pub required: usize,
    pub multiplicity: usize,
}

/// For U ⊆ F^k with l = dim U <= s, each point gamma^j alpha_i (j = 0..=s-l) must be a root
/// of the Wronskian of a basis of U with multiplicity at least dim(H_i ∩ U).
pub fn design_root_checks<F: FiniteField>(
    scheme: &EvaluationScheme<F>,
    design: &SubspaceDesign<F>,
    u: &Subspace<F>,
) -> Result<Vec<RootCheck<F::Elem>>> {
    let ell = u.dim();
    if ell == 0 || ell > scheme.s() {
        return invalid(format!("need 1 <= dim U <= s, got {ell}"));
    }
    let p = wronskian_det(&polys_from_rows(u.basis()), scheme.gamma())?;
    let dims = design.intersection_dims(u)?;
    let mut out = Vec::new();
    for (i, &d) in dims.iter().enumerate() {
        let pts = scheme.block_points(i);
        for (j, point) in pts.iter().enumerate().take(scheme.s() - ell + 1) {
            let multiplicity = p.root_multiplicity(point).unwrap_or(usize::MAX);
            out.push(RootCheck { position: i, shift: j, point: point.clone(), required: d, multiplicity });
        }
    }
    Ok(out)
}

/// Per-dimension evidence that a code is mu-slacked b-subspace designable.
#[derive(Clone, Debug, PartialEq)]
pub struct SlackReport<F: Field> {
    pub holds: bool,
    pub audits: Vec<(DesignAudit<F>, BigRational)>,
}

/// Checks A_strong <= (R + mu) d' n for every d' in 1..=b by exhaustive audits.
pub fn slacked_designable<F: FiniteField>(code: &LinearCode<F>, b: usize, mu: &BigRational, guard: f64) -> Result<SlackReport<F>> {
    let design = design_from_code(code);
    let mut audits = Vec::new();
    let mut holds = true;
    for d in 1..=b.min(code.k()) {
        let audit = audit_design(&design, d, guard)?;
        let bound = (code.rate() + mu) * BigInt::from(d * code.n());
        holds &= BigRational::from_integer(BigInt::from(audit.a_strong)) <= bound;
        audits.push((audit, bound));
    }
    Ok(SlackReport { holds, audits })
}

/// Counts from a batch of random Wronskian instances over one field.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct WronskianSuiteReport {
    pub q: u64,
    pub instances: usize,
    pub independent: usize,
    pub criterion_failures: usize,
    pub degree_failures: usize,
    pub divisibility_failures: usize,
    pub root_checks: usize,
    pub nontrivial_root_checks: usize,
    pub root_failures: usize,
    pub seed: u64,
}

impl WronskianSuiteReport {
    pub fn passes(&self) -> bool {
        self.criterion_failures + self.degree_failures + self.divisibility_failures + self.root_failures == 0
    }
}

fn random_poly<F: FiniteField, R: rand::Rng>(field: &F, k: usize, rng: &mut R) -> Poly<F> {
    Poly::new(field.clone(), (0..k).map(|_| field.element(rng.gen_range(0..field.order()))).collect())
}

/// Each instance draws k, l <= min(k, 4), gamma of order >= k and l polynomials of degree < k
/// (a third of them forced dependent), then compares the Wronskian criterion with rank, checks
/// deg p <= l k - C(l+1, 2) and X^{C(l, 2)} | p, and the design-point root multiplicities
/// against a GK design on a primitive scheme with U biased to meet H_1.
pub fn wronskian_suite<F: FiniteField>(field: &F, instances: usize, seed: u64) -> Result<WronskianSuiteReport> {
    use rand::Rng;
    let q = field.order();
    if q < 5 {
        return invalid("the suite needs q >= 5");
    }
    let results: Vec<Result<[usize; 7]>> = (0..instances)
        .into_par_iter()
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(crate::ntheory::derive_seed(seed, i as u64));
            let k = rng.gen_range(3..=8.min(q as usize - 1));
            let ell = rng.gen_range(1..=k.min(4));
            let gamma = loop {
                let g = field.element(rng.gen_range(1..q));
                if field.multiplicative_order(&g).is_some_and(|o| o >= k as u64) {
                    break g;
                }
            };
            let mut fs: Vec<Poly<F>> = (0..ell).map(|_| random_poly(field, k, &mut rng)).collect();
            if ell >= 2 && rng.gen_range(0..3) == 0 {
                let c = field.element(rng.gen_range(0..q));
                fs[ell - 1] = fs[0].scale(&c).add(&fs[1]);
            }
            let rows: Vec<Vec<F::Elem>> = fs.iter().map(|f| (0..k).map(|j| f.coeff(j)).collect()).collect();
            let independent = Matrix::from_rows(field.clone(), k, rows)?.rank() == ell;
            let mut out = [0usize; 7];
            out[0] = usize::from(independent);
            out[1] = usize::from(independence_via_wronskian(&fs, &gamma, k)? != independent);
            if independent {
                let p = wronskian_det(&fs, &gamma)?;
                let deg = p.degree().unwrap_or(0);
                out[2] = usize::from(deg + ell * (ell + 1) / 2 > ell * k);
                out[3] = usize::from(p.x_adic_valuation().unwrap_or(usize::MAX) < ell * (ell - 1) / 2);
            }
            // design-point roots
            let s = rng.gen_range(ell.max(1)..=k);
            let n = ((q as usize - 1) / s).clamp(1, 3);
            let scheme = EvaluationScheme::primitive(field.clone(), n, s)?;
            let design = gk_design(&scheme, k)?;
            let mut vecs: Vec<Vec<F::Elem>> = Vec::new();
            let h1 = &design.subspaces()[0];
            if h1.dim() > 0 && rng.gen_bool(0.5) {
                let mut v = vec![field.zero(); k];
                for r in 0..h1.dim() {
                    let c = field.element(rng.gen_range(0..q));
                    for (j, x) in h1.basis().row(r).iter().enumerate() {
                        v[j] = field.mul_add(&v[j], &c, x);
                    }
                }
                vecs.push(v);
            }
            while vecs.len() < ell {
                vecs.push((0..k).map(|_| field.element(rng.gen_range(0..q))).collect());
            }
            let u = Subspace::from_vectors(field.clone(), k, vecs)?;
            if u.dim() >= 1 {
                for c in design_root_checks(&scheme, &design, &u)? {
                    out[4] += 1;
                    out[5] += usize::from(c.required > 0);
                    out[6] += usize::from(c.multiplicity < c.required);
                }
            }
            Ok(out)
        })
        .collect();
    let mut t = [0usize; 7];
    for r in results {
        for (a, b) in t.iter_mut().zip(r?) {
            *a += b;
        }
    }
    Ok(WronskianSuiteReport {
        q,
        instances,
        independent: t[0],
        criterion_failures: t[1],
        degree_failures: t[2],
        divisibility_failures: t[3],
        root_checks: t[4],
        nontrivial_root_checks: t[5],
        root_failures: t[6],
        seed,
    })
}
