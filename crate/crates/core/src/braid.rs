//! Orbifold braid groups: the full relation presentation, 1-dimensional
//! anyon enumeration from the Seifert constraints, and the explicit
//! clock/shift representations of dimension N^g with
//! R(sigma_i) = xi_N^{-1}, R(a_l) = U_{N,l}, R(b_l) = V_{N,l},
//! R(c_j) = exp(2 pi i beta_j / nu_j), admissible exactly when
//! (g + n - 1)/N + sum_j beta_j/nu_j is an integer.

use std::fmt;

use nalgebra::DMatrix;
use num::complex::Complex64;
use num::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::orbifold::{OrbifoldSignature, SeifertData};
use crate::rational::{is_integer, rat, rat_int, Rational};

#[derive(Debug, Error, PartialEq)]
pub enum BraidError {
    #[error("invalid braid context: {0}")]
    InvalidContext(String),
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("Seifert data violates the integrality constraint: {0}")]
    ConstraintViolated(String),
    #[error("R(sigma_1) is not scalar (off-scalar norm {0})")]
    NotScalar(f64),
}

/// Genus, cone orders and strand count for an orbifold braid group.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BraidContext {
    pub signature: OrbifoldSignature,
    pub strands: usize,
}

impl BraidContext {
    pub fn new(signature: OrbifoldSignature, strands: usize) -> Result<Self, BraidError> {
        if strands < 2 {
            return Err(BraidError::InvalidContext(format!(
                "need at least 2 strands, got {strands}"
            )));
        }
        Ok(BraidContext { signature, strands })
    }

    pub fn genus(&self) -> u64 {
        self.signature.genus()
    }

    pub fn cone_orders(&self) -> &[u64] {
        self.signature.cone_orders()
    }

    fn guard_nu_product(&self) -> Result<u64, BraidError> {
        let mut prod: u64 = 1;
        for &nu in self.cone_orders() {
            prod = prod.saturating_mul(nu);
            if prod > 1_000_000 {
                return Err(BraidError::SizeGuard(
                    "product of cone orders exceeds 10^6".into(),
                ));
            }
        }
        Ok(prod)
    }
}

/// Generator of the orbifold braid group, 1-indexed as in the presentation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum BraidGen {
    Sigma(usize),
    A(usize),
    B(usize),
    C(usize),
}

impl fmt::Display for BraidGen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BraidGen::Sigma(i) => write!(f, "s{i}"),
            BraidGen::A(l) => write!(f, "a{l}"),
            BraidGen::B(l) => write!(f, "b{l}"),
            BraidGen::C(j) => write!(f, "c{j}"),
        }
    }
}

/// A word in the generators: factors (gen, exponent), multiplied left to
/// right. Every relation is stored as one word expected to equal 1.
pub type BraidWord = Vec<(BraidGen, i64)>;

#[derive(Debug, Clone, Serialize)]
pub struct Relation {
    pub name: String,
    pub word: BraidWord,
}

#[derive(Debug, Clone, Serialize)]
pub struct BraidPresentation {
    pub context: BraidContext,
    pub generators: Vec<BraidGen>,
    pub relations: Vec<Relation>,
}

fn inv(word: &BraidWord) -> BraidWord {
    word.iter().rev().map(|&(g, e)| (g, -e)).collect()
}

/// lhs = rhs as the single word lhs * rhs^{-1}.
fn equation(name: String, lhs: BraidWord, rhs: BraidWord) -> Relation {
    let mut word = lhs;
    word.extend(inv(&rhs));
    Relation { name, word }
}

/// The full relation list: Artin relations, the a/b commutations with
/// sigma_i (i != 1), the seven mixed sigma_1 families, the c_j families,
/// the orbifold long relation
/// prod_l [a_l, b_l^{-1}] s1^{-1} ... s_{n-1}^{-2} ... s1^{-1} c_1...c_m = 1
/// and the torsion relations c_j^{nu_j} = 1.
pub fn braid_presentation(ctx: &BraidContext) -> BraidPresentation {
    use BraidGen::{Sigma, A, B, C};
    let n = ctx.strands;
    let g = ctx.genus() as usize;
    let m = ctx.cone_orders().len();

    let mut generators: Vec<BraidGen> = (1..n).map(Sigma).collect();
    generators.extend((1..=g).flat_map(|l| [A(l), B(l)]));
    generators.extend((1..=m).map(C));

    let mut rels: Vec<Relation> = Vec::new();

    // Artin relations
    for i in 1..n {
        for j in i + 2..n {
            rels.push(equation(
                format!("commute(s{i},s{j})"),
                vec![(Sigma(i), 1), (Sigma(j), 1)],
                vec![(Sigma(j), 1), (Sigma(i), 1)],
            ));
        }
    }
    for i in 1..n - 1 {
        rels.push(equation(
            format!("braid(s{i},s{})", i + 1),
            vec![(Sigma(i), 1), (Sigma(i + 1), 1), (Sigma(i), 1)],
            vec![(Sigma(i + 1), 1), (Sigma(i), 1), (Sigma(i + 1), 1)],
        ));
    }

    // a_l, b_l commute with sigma_i for i != 1
    for l in 1..=g {
        for i in 2..n {
            for (gen, tag) in [(A(l), "a"), (B(l), "b")] {
                rels.push(equation(
                    format!("commute({tag}{l},s{i})"),
                    vec![(gen, 1), (Sigma(i), 1)],
                    vec![(Sigma(i), 1), (gen, 1)],
                ));
            }
        }
    }

    // mixed sigma_1 families for the surface generators
    let s1 = Sigma(1);
    for l in 1..=g {
        for (gen, tag) in [(A(l), "a"), (B(l), "b")] {
            // s1^{-1} x s1^{-1} x = x s1^{-1} x s1^{-1}
            rels.push(equation(
                format!("twist({tag}{l},{tag}{l})"),
                vec![(s1, -1), (gen, 1), (s1, -1), (gen, 1)],
                vec![(gen, 1), (s1, -1), (gen, 1), (s1, -1)],
            ));
        }
        // s1^{-1} a_l s1^{-1} b_l = b_l s1^{-1} a_l s1
        rels.push(equation(
            format!("twist(a{l},b{l})"),
            vec![(s1, -1), (A(l), 1), (s1, -1), (B(l), 1)],
            vec![(B(l), 1), (s1, -1), (A(l), 1), (s1, 1)],
        ));
    }
    for l in 1..=g {
        for r in l + 1..=g {
            for (x, xt, y, yt) in [
                (A(l), "a", A(r), "a"),
                (B(l), "b", B(r), "b"),
                (A(l), "a", B(r), "b"),
                (B(l), "b", A(r), "a"),
            ] {
                // s1^{-1} x_l s1 y_r = y_r s1^{-1} x_l s1
                rels.push(equation(
                    format!("link({xt}{l},{yt}{r})"),
                    vec![(s1, -1), (x, 1), (s1, 1), (y, 1)],
                    vec![(y, 1), (s1, -1), (x, 1), (s1, 1)],
                ));
            }
        }
    }

    // c_j families
    for j in 1..=m {
        for i in 2..n {
            rels.push(equation(
                format!("commute(c{j},s{i})"),
                vec![(C(j), 1), (Sigma(i), 1)],
                vec![(Sigma(i), 1), (C(j), 1)],
            ));
        }
        for r in 1..=g {
            for (y, yt) in [(A(r), "a"), (B(r), "b")] {
                rels.push(equation(
                    format!("link(c{j},{yt}{r})"),
                    vec![(s1, -1), (C(j), 1), (s1, 1), (y, 1)],
                    vec![(y, 1), (s1, -1), (C(j), 1), (s1, 1)],
                ));
            }
        }
        for k in j + 1..=m {
            rels.push(equation(
                format!("link(c{j},c{k})"),
                vec![(s1, -1), (C(j), 1), (s1, 1), (C(k), 1)],
                vec![(C(k), 1), (s1, -1), (C(j), 1), (s1, 1)],
            ));
        }
        rels.push(equation(
            format!("twist(c{j},c{j})"),
            vec![(s1, -1), (C(j), 1), (s1, -1), (C(j), 1)],
            vec![(C(j), 1), (s1, -1), (C(j), 1), (s1, -1)],
        ));
    }

    // long relation
    let mut long: BraidWord = Vec::new();
    for l in 1..=g {
        // [a_l, b_l^{-1}] = a_l b_l^{-1} a_l^{-1} b_l
        long.extend([(A(l), 1), (B(l), -1), (A(l), -1), (B(l), 1)]);
    }
    for i in 1..n - 1 {
        long.push((Sigma(i), -1));
    }
    long.push((Sigma(n - 1), -2));
    for i in (1..n - 1).rev() {
        long.push((Sigma(i), -1));
    }
    for j in 1..=m {
        long.push((C(j), 1));
    }
    rels.push(Relation {
        name: "long".into(),
        word: long,
    });

    // torsion
    for (j, &nu) in ctx.cone_orders().iter().enumerate() {
        rels.push(Relation {
            name: format!("torsion(c{})", j + 1),
            word: vec![(C(j + 1), nu as i64)],
        });
    }

    BraidPresentation {
        context: ctx.clone(),
        generators,
        relations: rels,
    }
}

/// A 1-dimensional unitary representation: sigma phase alpha in (-1, 1],
/// Seifert tuple beta, and the unconstrained surface phases kept symbolic.
#[derive(Debug, Clone, Serialize)]
pub struct Anyon1D {
    pub alpha: Rational,
    pub seifert: SeifertData,
    pub free_phases: Vec<String>,
}

fn beta_tuples(nu: &[u64]) -> Vec<Vec<i64>> {
    let mut out = vec![vec![]];
    for &n in nu {
        let mut next = Vec::with_capacity(out.len() * n as usize);
        for prefix in &out {
            for b in 0..n as i64 {
                let mut t = prefix.clone();
                t.push(b);
                next.push(t);
            }
        }
        out = next;
    }
    out
}

fn beta_fraction(betas: &[i64], nu: &[u64]) -> Rational {
    betas
        .iter()
        .zip(nu)
        .map(|(&b, &n)| rat(b, n as i64))
        .sum()
}

/// All 1-dimensional unitary representations. For genus > 0 the sigma phase
/// is forced to +-1 (alpha in {0, 1}) and the Seifert fractions must sum to
/// an integer; for genus 0 every beta tuple admits exactly the alpha in
/// (-1, 1] with alpha - sum beta_j/nu_j integral.
pub fn enumerate_anyons_1d(ctx: &BraidContext) -> Result<Vec<Anyon1D>, BraidError> {
    ctx.guard_nu_product()?;
    let g = ctx.genus();
    let nu = ctx.cone_orders();
    let free_phases: Vec<String> = (1..=g)
        .flat_map(|l| [format!("theta_{l}"), format!("phi_{l}")])
        .collect();
    let mut out = Vec::new();
    for betas in beta_tuples(nu) {
        let frac = beta_fraction(&betas, nu);
        let seifert = SeifertData::new(betas, &ctx.signature)
            .expect("enumerated tuples are in range");
        if g > 0 {
            if !is_integer(&frac) {
                continue;
            }
            for alpha in [rat_int(0), rat_int(1)] {
                out.push(Anyon1D {
                    alpha,
                    seifert: seifert.clone(),
                    free_phases: free_phases.clone(),
                });
            }
        } else {
            // the two representatives of frac mod 1 inside (-1, 1]
            let f = &frac - frac.floor();
            let (lo, hi) = if f == rat_int(0) {
                (rat_int(0), rat_int(1))
            } else {
                (&f - rat_int(1), f.clone())
            };
            for alpha in [lo, hi] {
                out.push(Anyon1D {
                    alpha,
                    seifert: seifert.clone(),
                    free_phases: free_phases.clone(),
                });
            }
        }
    }
    Ok(out)
}

/// All Seifert tuples (lexicographic in beta) with
/// (g + n - 1)/N + sum_j beta_j/nu_j integral.
pub fn enumerate_seifert_ndim(
    ctx: &BraidContext,
    clock_size: u64,
) -> Result<Vec<SeifertData>, BraidError> {
    ctx.guard_nu_product()?;
    if clock_size == 0 {
        return Err(BraidError::InvalidContext("clock size N must be >= 1".into()));
    }
    let nu = ctx.cone_orders();
    let offset = rat(
        (ctx.genus() + ctx.strands as u64 - 1) as i64,
        clock_size as i64,
    );
    let mut out = Vec::new();
    for betas in beta_tuples(nu) {
        if is_integer(&(&offset + beta_fraction(&betas, nu))) {
            out.push(
                SeifertData::new(betas, &ctx.signature).expect("tuples are in range"),
            );
        }
    }
    Ok(out)
}

/// xi_N = exp(pi i / N).
pub fn xi(clock_size: u64) -> Complex64 {
    Complex64::new(0.0, std::f64::consts::PI / clock_size as f64).exp()
}

/// U_N = diag(1, xi^2, xi^4, ..., xi^{2(N-1)}).
pub fn clock_matrix(clock_size: u64) -> DMatrix<Complex64> {
    let n = clock_size as usize;
    let x = xi(clock_size);
    DMatrix::from_fn(n, n, |i, j| {
        if i == j {
            x.powu(2 * i as u32)
        } else {
            Complex64::zero()
        }
    })
}

/// V_N: cyclic shift with ones on the superdiagonal and lower-left corner.
pub fn shift_matrix(clock_size: u64) -> DMatrix<Complex64> {
    let n = clock_size as usize;
    DMatrix::from_fn(n, n, |i, j| {
        if j == (i + 1) % n {
            Complex64::one()
        } else {
            Complex64::zero()
        }
    })
}

/// The clock/shift representation of dimension N^g.
#[derive(Debug, Clone)]
pub struct MatrixRep {
    pub clock_size: u64,
    pub dimension: usize,
    pub sigma: DMatrix<Complex64>,
    pub a_mats: Vec<DMatrix<Complex64>>,
    pub b_mats: Vec<DMatrix<Complex64>>,
    pub c_mats: Vec<DMatrix<Complex64>>,
}

impl MatrixRep {
    pub fn generator(&self, g: BraidGen) -> &DMatrix<Complex64> {
        match g {
            BraidGen::Sigma(_) => &self.sigma,
            BraidGen::A(l) => &self.a_mats[l - 1],
            BraidGen::B(l) => &self.b_mats[l - 1],
            BraidGen::C(j) => &self.c_mats[j - 1],
        }
    }

    /// Largest deviation from unitarity across all assigned matrices.
    pub fn unitarity_defect(&self) -> f64 {
        let defect = |m: &DMatrix<Complex64>| {
            let eye = DMatrix::<Complex64>::identity(m.nrows(), m.ncols());
            (m.adjoint() * m - eye).norm()
        };
        let mut worst = defect(&self.sigma);
        for m in self.a_mats.iter().chain(&self.b_mats).chain(&self.c_mats) {
            worst = worst.max(defect(m));
        }
        worst
    }
}

/// Places `m` in tensor factor `l` (1-indexed) of (C^N)^{x g}.
fn tensor_factor(m: &DMatrix<Complex64>, l: usize, g: usize, n: usize) -> DMatrix<Complex64> {
    let mut acc = DMatrix::<Complex64>::identity(1, 1);
    for pos in 1..=g {
        let factor = if pos == l {
            m.clone()
        } else {
            DMatrix::identity(n, n)
        };
        acc = acc.kronecker(&factor);
    }
    acc
}

fn build_rep_inner(
    ctx: &BraidContext,
    clock_size: u64,
    seifert: &SeifertData,
    enforce: bool,
) -> Result<MatrixRep, BraidError> {
    if clock_size == 0 {
        return Err(BraidError::InvalidContext("clock size N must be >= 1".into()));
    }
    let g = ctx.genus() as usize;
    let dim = (clock_size as usize)
        .checked_pow(g as u32)
        .filter(|&d| d <= 64)
        .ok_or_else(|| {
            BraidError::SizeGuard(format!("dimension {clock_size}^{g} exceeds 64"))
        })?;
    let offset = rat(
        (ctx.genus() + ctx.strands as u64 - 1) as i64,
        clock_size as i64,
    );
    let total = &offset + beta_fraction(seifert.betas(), ctx.cone_orders());
    if enforce && !is_integer(&total) {
        return Err(BraidError::ConstraintViolated(format!(
            "(g+n-1)/N + sum beta_j/nu_j = {total} is not an integer"
        )));
    }

    let u = clock_matrix(clock_size);
    let v = shift_matrix(clock_size);
    let n_usize = clock_size as usize;
    let eye = DMatrix::<Complex64>::identity(dim, dim);
    let sigma = eye.clone() * (Complex64::one() / xi(clock_size));
    let a_mats = (1..=g).map(|l| tensor_factor(&u, l, g, n_usize)).collect();
    let b_mats = (1..=g).map(|l| tensor_factor(&v, l, g, n_usize)).collect();
    let c_mats = seifert
        .betas()
        .iter()
        .zip(ctx.cone_orders())
        .map(|(&b, &nu)| {
            let phase =
                Complex64::new(0.0, 2.0 * std::f64::consts::PI * b as f64 / nu as f64).exp();
            eye.clone() * phase
        })
        .collect();
    Ok(MatrixRep {
        clock_size,
        dimension: dim,
        sigma,
        a_mats,
        b_mats,
        c_mats,
    })
}

/// Clock/shift representation for admissible Seifert data; rejects tuples
/// violating the integrality constraint.
pub fn build_matrix_rep(
    ctx: &BraidContext,
    clock_size: u64,
    seifert: &SeifertData,
) -> Result<MatrixRep, BraidError> {
    build_rep_inner(ctx, clock_size, seifert, true)
}

/// Same construction without the admissibility check — for demonstrating
/// that inadmissible tuples break the long relation.
pub fn build_matrix_rep_unchecked(
    ctx: &BraidContext,
    clock_size: u64,
    seifert: &SeifertData,
) -> Result<MatrixRep, BraidError> {
    build_rep_inner(ctx, clock_size, seifert, false)
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationResidual {
    pub relation: String,
    pub residual: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RelationReport {
    pub residuals: Vec<RelationResidual>,
    pub max_residual: f64,
    pub pass: bool,
}

/// Evaluates a word against an assignment of generator matrices.
pub fn evaluate_braid_word(
    word: &BraidWord,
    gen: &dyn Fn(BraidGen) -> DMatrix<Complex64>,
    dim: usize,
) -> DMatrix<Complex64> {
    let mut acc = DMatrix::<Complex64>::identity(dim, dim);
    for &(g, e) in word {
        let m = gen(g);
        let m = if e < 0 {
            m.clone()
                .try_inverse()
                .expect("generator matrices are unitary")
        } else {
            m
        };
        for _ in 0..e.unsigned_abs() {
            acc *= &m;
        }
    }
    acc
}

/// Frobenius residual ||word(rep) - I|| for every relation.
pub fn verify_relations(
    rep: &MatrixRep,
    pres: &BraidPresentation,
    tol: f64,
) -> RelationReport {
    let dim = rep.dimension;
    let eye = DMatrix::<Complex64>::identity(dim, dim);
    let gen = |g: BraidGen| rep.generator(g).clone();
    let mut residuals = Vec::with_capacity(pres.relations.len());
    let mut max_residual = 0.0f64;
    for rel in &pres.relations {
        let w = evaluate_braid_word(&rel.word, &gen, dim);
        let r = (&w - &eye).norm();
        max_residual = max_residual.max(r);
        residuals.push(RelationResidual {
            relation: rel.name.clone(),
            residual: r,
        });
    }
    RelationReport {
        residuals,
        max_residual,
        pass: max_residual <= tol,
    }
}

/// Extracts alpha in (-1, 1] with R(sigma_1) = exp(i pi alpha) I.
pub fn statistics_phase(rep: &MatrixRep) -> Result<f64, BraidError> {
    let dim = rep.dimension;
    let s = &rep.sigma;
    let scalar = s[(0, 0)];
    let eye = DMatrix::<Complex64>::identity(dim, dim);
    let defect = (s - eye * scalar).norm();
    if defect > 1e-10 || (scalar.norm() - 1.0).abs() > 1e-10 {
        return Err(BraidError::NotScalar(defect));
    }
    let mut alpha = scalar.arg() / std::f64::consts::PI;
    if alpha <= -1.0 {
        alpha += 2.0;
    }
    Ok(alpha)
}
