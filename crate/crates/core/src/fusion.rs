//! Level-4 Kauffman–Lins recoupling: quantum dimensions, theta and
//! tetrahedron nets, unitary 6j symbols and the derivation of the fusion
//! generator as the exchange |0⟩ ↔ |4⟩.
//!
//! Everything is exact over Q(ζ₇₂) with Kauffman–Lins variable A = ζ₇₂¹⁵.
//! Square roots that leave the field are carried symbolically by
//! [`SurdNum`].

use std::fmt;
use std::sync::OnceLock;

use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

use crate::cyclo::{sqrt_rational, zeta, CycloError, CycloNum, DEFAULT_CONDUCTOR};
use crate::mat3::Mat3;

/// Topological charge; admissible values are 0..=LEVEL.
pub type Label = u8;

pub const LEVEL: Label = 4;

const N: u32 = DEFAULT_CONDUCTOR;

/// Tolerance for sign checks on the numeric embedding.
pub const SIGN_TOL: f64 = 1e-9;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FusionError {
    #[error("label {0} outside 0..=4")]
    LabelRange(Label),
    #[error("labels {0:?} are not admissible at level 4")]
    Inadmissible(Vec<Label>),
    #[error("radicand {0} is not a positive real")]
    NotPositiveReal(String),
    #[error("determinant after normalization is {0}, not 1")]
    Normalize(String),
    #[error("value {0} is not a plain cyclotomic number")]
    NotCyclotomic(String),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
}

fn is_positive_real(x: &CycloNum) -> bool {
    let (re, im) = x.approx();
    x.is_real() && re > SIGN_TOL && im.abs() < SIGN_TOL
}

/// Exact square root inside Q(ζ₇₂) of a rational or of p + q√3, chosen with
/// positive real part when the input is a positive real.
pub fn try_sqrt(x: &CycloNum) -> Option<CycloNum> {
    let fix_sign = |y: CycloNum| if y.approx().0 < 0.0 { -y } else { y };
    if let Some(q) = x.to_rational() {
        return sqrt_rational(N, &q).map(fix_sign);
    }
    let s3 = &zeta(6) + &zeta(-6);
    let (xc, sc) = (x.coeffs(), s3.coeffs());
    let j = sc.iter().position(|c| !c.is_zero())?;
    let q = &xc[j] / &sc[j];
    let p = (x - &(&s3 * &CycloNum::from_rational(N, &q))).to_rational()?;
    // √(p + q√3) = √u + sgn(q)·√v with u + v = p, 4uv = 3q²
    let disc = &p * &p - BigRational::from_integer(3.into()) * &q * &q;
    let m = sqrt_rational(N, &disc)?.to_rational()?.abs();
    let two = BigRational::from_integer(2.into());
    let su = sqrt_rational(N, &((&p + &m) / &two))?;
    let sv = sqrt_rational(N, &((&p - &m) / &two))?;
    let y = if q.is_negative() { &su - &sv } else { &su + &sv };
    (&y * &y == *x).then(|| fix_sign(y))
}

/// coeff·√radicand with a positive real radicand.
#[derive(Clone)]
pub struct SurdNum {
    coeff: CycloNum,
    radicand: CycloNum,
}

impl SurdNum {
    pub fn from_cyclo(c: CycloNum) -> SurdNum {
        SurdNum { coeff: c, radicand: CycloNum::one(N) }
    }

    pub fn new(coeff: CycloNum, radicand: CycloNum) -> Result<SurdNum, FusionError> {
        if !is_positive_real(&radicand) {
            return Err(FusionError::NotPositiveReal(radicand.to_string()));
        }
        Ok(SurdNum { coeff, radicand }.normalized())
    }

    /// Positive square root of a positive real cyclotomic number.
    pub fn sqrt(x: &CycloNum) -> Result<SurdNum, FusionError> {
        SurdNum::new(CycloNum::one(N), x.clone())
    }

    fn normalized(self) -> SurdNum {
        if self.coeff.is_zero() {
            return SurdNum::from_cyclo(CycloNum::zero(N));
        }
        if self.radicand.is_one() {
            return self;
        }
        match try_sqrt(&self.radicand) {
            Some(r) => SurdNum::from_cyclo(&self.coeff * &r),
            None => self,
        }
    }

    pub fn coeff(&self) -> &CycloNum {
        &self.coeff
    }

    pub fn radicand(&self) -> &CycloNum {
        &self.radicand
    }

    pub fn is_zero(&self) -> bool {
        self.coeff.is_zero()
    }

    /// The value as a cyclotomic number, when the radicand has been absorbed.
    pub fn to_cyclo(&self) -> Option<CycloNum> {
        self.radicand.is_one().then(|| self.coeff.clone())
    }

    pub fn square(&self) -> CycloNum {
        &(&self.coeff * &self.coeff) * &self.radicand
    }

    pub fn approx(&self) -> (f64, f64) {
        let (cr, ci) = self.coeff.approx();
        let s = self.radicand.approx().0.sqrt();
        (cr * s, ci * s)
    }

    pub fn conj(&self) -> SurdNum {
        SurdNum { coeff: self.coeff.conj(), radicand: self.radicand.clone() }
    }

    pub fn mul(&self, other: &SurdNum) -> SurdNum {
        if self.radicand == other.radicand {
            return SurdNum::from_cyclo(&(&self.coeff * &other.coeff) * &self.radicand);
        }
        SurdNum { coeff: &self.coeff * &other.coeff, radicand: &self.radicand * &other.radicand }.normalized()
    }

    /// 1/(c√r) = (1/(c·r))·√r.
    pub fn inv(&self) -> Result<SurdNum, FusionError> {
        let c = (&self.coeff * &self.radicand).inv()?;
        Ok(SurdNum { coeff: c, radicand: self.radicand.clone() }.normalized())
    }

    pub fn div(&self, other: &SurdNum) -> Result<SurdNum, FusionError> {
        Ok(self.mul(&other.inv()?))
    }
}

impl PartialEq for SurdNum {
    /// Exact on squares, with the sign read off the embedding.
    fn eq(&self, other: &Self) -> bool {
        if self.radicand == other.radicand {
            return self.coeff == other.coeff;
        }
        if self.square() != other.square() {
            return false;
        }
        let (a, b) = (self.approx(), other.approx());
        (a.0 - b.0).abs() < SIGN_TOL && (a.1 - b.1).abs() < SIGN_TOL
    }
}

impl fmt::Display for SurdNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.radicand.is_one() {
            write!(f, "{}", self.coeff)
        } else {
            write!(f, "({})*sqrt({})", self.coeff, self.radicand)
        }
    }
}

impl fmt::Debug for SurdNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (re, im) = self.approx();
        write!(f, "SurdNum({self} ≈ {re:.9}{im:+.9}i)")
    }
}

/// A sum of surds grouped by square class of the radicand, which makes the
/// zero test exact.
#[derive(Debug, Clone, Default)]
pub struct SurdSum {
    terms: Vec<SurdNum>,
}

impl SurdSum {
    pub fn add(&mut self, t: SurdNum) {
        if t.is_zero() {
            return;
        }
        for term in &mut self.terms {
            let joined = if term.radicand == t.radicand {
                Some(t.coeff.clone())
            } else {
                // c√s = c·(√(rs)/r)·√r
                try_sqrt(&(&term.radicand * &t.radicand))
                    .and_then(|w| w.try_div(&term.radicand).ok())
                    .map(|w| &t.coeff * &w)
            };
            if let Some(c) = joined {
                term.coeff = &term.coeff + &c;
                return;
            }
        }
        self.terms.push(t);
    }

    pub fn is_zero(&self) -> bool {
        self.terms.iter().all(SurdNum::is_zero)
    }
}

pub fn is_admissible(a: Label, b: Label, c: Label) -> bool {
    let (a, b, c) = (a as i32, b as i32, c as i32);
    (a + b + c) % 2 == 0 && (a - b).abs() <= c && c <= a + b && a + b + c <= 2 * LEVEL as i32
}

fn check_labels(ls: &[Label]) -> Result<(), FusionError> {
    match ls.iter().find(|&&l| l > LEVEL) {
        Some(&l) => Err(FusionError::LabelRange(l)),
        None => Ok(()),
    }
}

fn admissible(a: Label, b: Label, c: Label) -> Result<(), FusionError> {
    check_labels(&[a, b, c])?;
    if is_admissible(a, b, c) {
        Ok(())
    } else {
        Err(FusionError::Inadmissible(vec![a, b, c]))
    }
}

/// Quantum factorials [0]!, [1]!, … up to [12]!.
fn qfacts() -> &'static [CycloNum] {
    static TABLE: OnceLock<Vec<CycloNum>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let a2 = zeta(30);
        let am2 = zeta(-30);
        let den = (&a2 - &am2).inv().expect("A² ≠ A⁻²");
        let mut out = vec![CycloNum::one(N)];
        for n in 1..=12i64 {
            let qn = &(&zeta(30 * n) - &zeta(-30 * n)) * &den;
            let next = out.last().expect("seeded") * &qn;
            out.push(next);
        }
        out
    })
}

/// Quantum integer [n] = (A^{2n} − A^{−2n})/(A² − A^{−2}).
pub fn qint(n: u32) -> CycloNum {
    let den = (&zeta(30) - &zeta(-30)).inv().expect("A² ≠ A⁻²");
    &(&zeta(30 * n as i64) - &zeta(-30 * n as i64)) * &den
}

fn qfact(n: i64) -> CycloNum {
    qfacts()[n as usize].clone()
}

fn sign(k: i64) -> CycloNum {
    CycloNum::from_int(N, if k % 2 == 0 { 1 } else { -1 })
}

/// Δ_a = (−1)^a [a+1] as a cyclotomic number.
pub fn delta(a: Label) -> Result<CycloNum, FusionError> {
    check_labels(&[a])?;
    Ok(&sign(a as i64) * &qint(a as u32 + 1))
}

pub fn qdim(a: Label) -> Result<SurdNum, FusionError> {
    Ok(SurdNum::from_cyclo(delta(a)?))
}

fn theta_value(a: Label, b: Label, c: Label) -> Result<CycloNum, FusionError> {
    admissible(a, b, c)?;
    let (a, b, c) = (a as i64, b as i64, c as i64);
    let (m, n, p) = ((a + b - c) / 2, (b + c - a) / 2, (a + c - b) / 2);
    let num = &(&(&sign(m + n + p) * &qfact(m + n + p + 1)) * &(&qfact(m) * &qfact(n))) * &qfact(p);
    let den = &(&qfact(m + n) * &qfact(n + p)) * &qfact(m + p);
    Ok(num.try_div(&den)?)
}

/// Kauffman–Lins theta net θ(a,b,c).
pub fn theta(a: Label, b: Label, c: Label) -> Result<SurdNum, FusionError> {
    Ok(SurdNum::from_cyclo(theta_value(a, b, c)?))
}

/// Unitary theta √(Δ_a Δ_b Δ_c).
pub fn theta_u(a: Label, b: Label, c: Label) -> Result<SurdNum, FusionError> {
    admissible(a, b, c)?;
    SurdNum::sqrt(&(&(&delta(a)? * &delta(b)?) * &delta(c)?))
}

/// The four vertex triples of Tet[A B E; C D F], as label positions in
/// `[A, B, E, C, D, F]`.
pub const TET_FACES: [[usize; 3]; 4] = [[0, 4, 2], [1, 3, 2], [0, 1, 5], [3, 4, 5]];

fn tet_value(l: [Label; 6]) -> Result<CycloNum, FusionError> {
    check_labels(&l)?;
    for f in TET_FACES {
        admissible(l[f[0]], l[f[1]], l[f[2]])?;
    }
    let v = l.map(|x| x as i64);
    let a: Vec<i64> = TET_FACES.iter().map(|f| (v[f[0]] + v[f[1]] + v[f[2]]) / 2).collect();
    let [ea, eb, ee, ec, ed, ef] = v;
    let b = [(eb + ed + ee + ef) / 2, (ea + ec + ee + ef) / 2, (ea + eb + ec + ed) / 2];
    let mut inner = CycloNum::one(N);
    for &bj in &b {
        for &ai in &a {
            inner = &inner * &qfact(bj - ai);
        }
    }
    let outer = v.iter().fold(CycloNum::one(N), |acc, &x| &acc * &qfact(x));
    let lo = *a.iter().max().expect("four faces");
    let hi = *b.iter().min().expect("three sums");
    let mut sum = CycloNum::zero(N);
    for s in lo..=hi {
        let den = a
            .iter()
            .chain(b.iter())
            .enumerate()
            .fold(CycloNum::one(N), |acc, (k, &x)| &acc * &qfact(if k < 4 { s - x } else { x - s }));
        sum = &sum + &(&sign(s) * &qfact(s + 1)).try_div(&den)?;
    }
    Ok(&(&inner * &sum) * &outer.inv()?)
}

/// Kauffman–Lins tetrahedral net Tet[A B E; C D F] with vertex triples
/// (A,D,E), (B,C,E), (A,B,F), (C,D,F).
pub fn tet(labels: [Label; 6]) -> Result<SurdNum, FusionError> {
    Ok(SurdNum::from_cyclo(tet_value(labels)?))
}

/// The 24 permutations of `[A, B, E, C, D, F]` positions that map vertex
/// triples to vertex triples.
pub fn tet_symmetries() -> Vec<[usize; 6]> {
    let faces: Vec<[usize; 3]> = TET_FACES
        .iter()
        .map(|f| {
            let mut f = *f;
            f.sort_unstable();
            f
        })
        .collect();
    let mut out = Vec::new();
    let mut perm = [0usize, 1, 2, 3, 4, 5];
    permutations(&mut perm, 0, &mut |p| {
        let ok = faces.iter().all(|f| {
            let mut g = f.map(|i| p[i]);
            g.sort_unstable();
            faces.contains(&g)
        });
        if ok {
            out.push(*p);
        }
    });
    out
}

fn permutations(p: &mut [usize; 6], k: usize, f: &mut impl FnMut(&[usize; 6])) {
    if k == p.len() {
        f(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, f);
        p.swap(k, i);
    }
}

/// Unitary 6j symbol {G B E; C D F}ᵘ.
pub fn six_j_unitary(g: Label, b: Label, e: Label, c: Label, d: Label, f: Label) -> Result<SurdNum, FusionError> {
    let t = tet([g, b, e, c, d, f])?;
    let num = t.mul(&SurdNum::sqrt(&delta(e)?)?).mul(&SurdNum::sqrt(&delta(f)?)?);
    let mut den = SurdNum::from_cyclo(CycloNum::one(N));
    for (x, y, z) in [(g, d, e), (c, d, f), (c, b, e), (g, b, f)] {
        den = den.mul(&SurdNum::sqrt(&theta_value(x, y, z)?)?);
    }
    num.div(&den)
}

/// Internal labels (rows E, columns F) and entries of the F-move for the
/// external labels G, B, C, D.
pub struct FMove {
    pub externals: [Label; 4],
    pub rows: Vec<Label>,
    pub cols: Vec<Label>,
    pub entries: Vec<Vec<SurdNum>>,
}

pub fn f_move(g: Label, b: Label, c: Label, d: Label) -> Result<FMove, FusionError> {
    check_labels(&[g, b, c, d])?;
    let rows: Vec<Label> = (0..=LEVEL).filter(|&e| is_admissible(g, d, e) && is_admissible(c, b, e)).collect();
    let cols: Vec<Label> = (0..=LEVEL).filter(|&f| is_admissible(g, b, f) && is_admissible(c, d, f)).collect();
    let entries = rows
        .iter()
        .map(|&e| cols.iter().map(|&f| six_j_unitary(g, b, e, c, d, f)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FMove { externals: [g, b, c, d], rows, cols, entries })
}

impl FMove {
    /// Exact check that the rows are orthonormal.
    pub fn is_unitary(&self) -> bool {
        if self.rows.len() != self.cols.len() {
            return false;
        }
        let one = SurdNum::from_cyclo(CycloNum::from_int(N, -1));
        (0..self.rows.len()).all(|i| {
            (0..self.rows.len()).all(|j| {
                let mut s = SurdSum::default();
                for k in 0..self.cols.len() {
                    s.add(self.entries[i][k].mul(&self.entries[j][k].conj()));
                }
                if i == j {
                    s.add(one.clone());
                }
                s.is_zero()
            })
        })
    }
}

/// All F-moves at level 4 with a nonempty internal space.
pub fn all_f_moves() -> Result<Vec<FMove>, FusionError> {
    let mut out = Vec::new();
    for g in 0..=LEVEL {
        for b in 0..=LEVEL {
            for c in 0..=LEVEL {
                for d in 0..=LEVEL {
                    let m = f_move(g, b, c, d)?;
                    if !m.rows.is_empty() {
                        out.push(m);
                    }
                }
            }
        }
    }
    Ok(out)
}

/// One step of the fusion derivation: input charge k, output charge i.
#[derive(Debug, Clone)]
pub struct FusionTerm {
    pub k: Label,
    pub i: Label,
    /// The F-move on the edge labeled 0, then the two moves on the external
    /// edges labeled 2.
    pub moves: [SurdNum; 3],
    /// Θᵘ(i,k,4)/Δ_i, applied once per loop.
    pub loop_factor: SurdNum,
    pub coefficient: CycloNum,
}

/// Square roots taken along the derivation, for sign auditing.
pub fn derivation_roots() -> Result<Vec<(String, SurdNum)>, FusionError> {
    let mut out = Vec::new();
    for a in [0, 2, 4] {
        out.push((format!("sqrt(delta_{a})"), SurdNum::sqrt(&delta(a)?)?));
    }
    for (g, b, e, c, d, f) in derivation_symbols() {
        for (x, y, z) in [(g, d, e), (c, d, f), (c, b, e), (g, b, f)] {
            out.push((format!("sqrt(theta({x},{y},{z}))"), SurdNum::sqrt(&theta_value(x, y, z)?)?));
        }
    }
    Ok(out)
}

fn derivation_symbols() -> Vec<(Label, Label, Label, Label, Label, Label)> {
    [0, 2, 4]
        .iter()
        .flat_map(|&k| {
            let i = LEVEL - k;
            [(k, k, i, 4, 4, 0), (k, 2, i, 2, 4, 2), (2, k, i, 4, 2, 2)]
        })
        .collect()
}

/// The three terms (k, i) ∈ {(0,4), (2,2), (4,0)}.
pub fn fusion_terms() -> Result<Vec<FusionTerm>, FusionError> {
    let syms = derivation_symbols();
    [0u8, 2, 4]
        .iter()
        .zip(syms.chunks(3))
        .map(|(&k, s)| {
            let i = LEVEL - k;
            let sj = |t: (Label, Label, Label, Label, Label, Label)| six_j_unitary(t.0, t.1, t.2, t.3, t.4, t.5);
            let moves = [sj(s[0])?, sj(s[1])?, sj(s[2])?];
            let loop_factor = theta_u(i, k, 4)?.div(&qdim(i)?)?;
            let total = moves[0].mul(&moves[1]).mul(&moves[2]).mul(&loop_factor).mul(&loop_factor);
            let coefficient = total.to_cyclo().ok_or_else(|| FusionError::NotCyclotomic(total.to_string()))?;
            Ok(FusionTerm { k, i, moves, loop_factor, coefficient })
        })
        .collect()
}

/// The fusion operation on the basis |0⟩, |2⟩, |4⟩: entry (i, k) is the
/// coefficient carrying input |k⟩ to output |i⟩.
pub fn derive_fusion_matrix() -> Result<Mat3, FusionError> {
    let mut m = Mat3::zero(N).rows().clone();
    for t in fusion_terms()? {
        m[t.i as usize / 2][t.k as usize / 2] = t.coefficient;
    }
    Ok(Mat3::from_rows(m))
}

/// Scales by −e^{2iπ/3} and requires the result to have determinant 1.
pub fn su3_normalize(m: &Mat3) -> Result<Mat3, FusionError> {
    let c = -CycloNum::root_of_unity(m.conductor(), m.conductor() as i64 / 3);
    let out = m.scale(&c);
    let det = out.det();
    if det.is_one() {
        Ok(out)
    } else {
        Err(FusionError::Normalize(det.to_string()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;

    fn rat(p: i64, q: i64) -> CycloNum {
        CycloNum::from_ratio(N, p, q).unwrap()
    }

    fn close(a: (f64, f64), re: f64) -> bool {
        (a.0 - re).abs() < 1e-12 && a.1.abs() < 1e-12
    }

    /// Independent oracle: Δ_a = sin((a+1)π/6)/sin(π/6).
    fn delta_oracle(a: Label) -> f64 {
        ((a as f64 + 1.0) * std::f64::consts::PI / 6.0).sin() / (std::f64::consts::PI / 6.0).sin()
    }

    #[test]
    fn admissibility() {
        assert!(is_admissible(2, 2, 2));
        assert!(!is_admissible(1, 1, 1));
        assert!(!is_admissible(4, 4, 4));
        // oracle: level-4 fusion rules from the su(2)_4 truncated tensor product
        for a in 0..=4u8 {
            for b in 0..=4u8 {
                for c in 0..=4u8 {
                    let (a2, b2, c2) = (a as i32, b as i32, c as i32);
                    let lo = (a2 - b2).abs();
                    let hi = (a2 + b2).min(2 * 4 - a2 - b2);
                    let verlinde = c2 >= lo && c2 <= hi && (c2 - lo) % 2 == 0;
                    assert_eq!(is_admissible(a, b, c), verlinde, "{a} {b} {c}");
                }
            }
        }
    }

    #[test]
    fn quantum_dimensions() {
        assert_eq!(delta(0).unwrap(), CycloNum::one(N));
        assert_eq!(delta(2).unwrap(), CycloNum::from_int(N, 2));
        assert_eq!(delta(4).unwrap(), CycloNum::one(N));
        for a in 0..=4 {
            assert!(close(delta(a).unwrap().approx(), delta_oracle(a)));
        }
        assert_eq!(delta(1).unwrap(), &zeta(6) + &zeta(-6));
        assert!(delta(5).is_err());
    }

    #[test]
    fn theta_properties() {
        for a in 0..=4 {
            assert_eq!(theta(0, a, a).unwrap(), qdim(a).unwrap());
            assert_eq!(theta_u(0, a, a).unwrap(), qdim(a).unwrap());
        }
        assert_eq!(theta_u(2, 2, 2).unwrap().square(), CycloNum::from_int(N, 8));
        for a in 0..=4 {
            for b in 0..=4 {
                for c in 0..=4 {
                    if is_admissible(a, b, c) {
                        let t = theta(a, b, c).unwrap();
                        assert_eq!(t, theta(b, a, c).unwrap());
                        assert_eq!(t, theta(c, b, a).unwrap());
                        assert_eq!(t, theta(a, c, b).unwrap());
                    }
                }
            }
        }
        assert!(matches!(theta(1, 1, 1), Err(FusionError::Inadmissible(_))));
    }

    fn admissible_tets() -> Vec<[Label; 6]> {
        let mut out = Vec::new();
        for code in 0..5usize.pow(6) {
            let mut l = [0u8; 6];
            let mut x = code;
            for v in &mut l {
                *v = (x % 5) as u8;
                x /= 5;
            }
            if TET_FACES.iter().all(|f| is_admissible(l[f[0]], l[f[1]], l[f[2]])) {
                out.push(l);
            }
        }
        out
    }

    #[test]
    fn tet_degenerates_to_theta() {
        for l in admissible_tets() {
            if l[5] == 0 {
                assert_eq!(tet(l).unwrap(), theta(l[0], l[3], l[2]).unwrap(), "{l:?}");
            }
        }
    }

    #[test]
    fn tet_has_tetrahedral_symmetry() {
        let syms = tet_symmetries();
        assert_eq!(syms.len(), 24);
        for l in admissible_tets() {
            let t = tet(l).unwrap();
            for p in &syms {
                let mut m = [0u8; 6];
                for (i, &j) in p.iter().enumerate() {
                    m[j] = l[i];
                }
                assert_eq!(tet(m).unwrap(), t, "{l:?} {p:?}");
            }
        }
    }

    #[test]
    fn tet_all_twos_vanishes() {
        // pinned: the square is the rational 0
        let t = tet([2; 6]).unwrap();
        assert!(t.is_zero());
        assert_eq!(t.square().to_rational(), Some(BigRational::zero()));
    }

    #[test]
    fn six_j_with_a_vacuum_label() {
        for a in 0..=4 {
            for c in 0..=4 {
                for e in 0..=4 {
                    if is_admissible(a, c, e) {
                        let x = &delta(e).unwrap() * &(&delta(a).unwrap() * &delta(c).unwrap()).inv().unwrap();
                        assert_eq!(six_j_unitary(a, a, e, c, c, 0).unwrap(), SurdNum::sqrt(&x).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn f_move_two_two_two_two() {
        let m = f_move(2, 2, 2, 2).unwrap();
        assert_eq!((m.rows.as_slice(), m.cols.as_slice()), (&[0, 2, 4][..], &[0, 2, 4][..]));
        let h = SurdNum::from_cyclo(rat(1, 2));
        let s = SurdNum::from_cyclo(Catalog::default().inv_sqrt2());
        assert_eq!(m.entries[0][0], h);
        assert_eq!(m.entries[0][1], s);
        assert!(m.entries[1][1].is_zero());
        assert!(m.is_unitary());
    }

    #[test]
    fn surd_arithmetic() {
        let s3 = SurdNum::sqrt(&CycloNum::from_int(N, 3)).unwrap();
        assert_eq!(s3.to_cyclo(), Some(&zeta(6) + &zeta(-6)));
        let d = theta_value(2, 2, 2).unwrap();
        let r = SurdNum::sqrt(&d).unwrap();
        assert!(r.to_cyclo().is_none());
        assert_eq!(r.mul(&r).to_cyclo(), Some(d));
        assert!(SurdNum::sqrt(&CycloNum::from_int(N, -1)).is_err());
        // 4 + √3 has no square root in the field: 16 − 3 is not a square
        assert_eq!(try_sqrt(&(&CycloNum::from_int(N, 4) + &(&zeta(6) + &zeta(-6)))), None);
        let x = &CycloNum::from_int(N, 4) + &(&CycloNum::from_int(N, 2) * &(&zeta(6) + &zeta(-6)));
        let y = try_sqrt(&x).unwrap();
        assert_eq!(&y * &y, x);
        assert!(y.approx().0 > 0.0);
    }

    #[test]
    fn normalization() {
        let c = Catalog::default();
        let one = CycloNum::one(N);
        let swap = Mat3::antidiag(one.clone(), one.clone(), one);
        assert_eq!(su3_normalize(&swap).unwrap(), c.fum());
        assert!(su3_normalize(&swap).unwrap().det().is_one());
        assert!(matches!(su3_normalize(&Mat3::identity(N)), Err(FusionError::Normalize(_))));
    }

    #[test]
    fn every_f_move_is_unitary() {
        let moves = all_f_moves().unwrap();
        assert!(moves.len() > 50);
        for m in &moves {
            assert!(m.is_unitary(), "{:?}", m.externals);
        }
        assert_eq!(f_move(2, 4, 2, 4).unwrap().entries, vec![vec![SurdNum::from_cyclo(CycloNum::one(N))]]);
        assert_eq!(f_move(4, 2, 2, 2).unwrap().entries, vec![vec![SurdNum::from_cyclo(CycloNum::from_int(N, -1))]]);
    }

    #[test]
    fn derivation_terms() {
        let terms = fusion_terms().unwrap();
        let expected: [(Label, [i64; 3]); 3] = [(0, [1, 1, 1]), (2, [1, -1, -1]), (4, [1, 1, 1])];
        for (t, (k, signs)) in terms.iter().zip(expected) {
            assert_eq!(t.k, k);
            for (m, s) in t.moves.iter().zip(signs) {
                assert!((m.approx().0 - s as f64).abs() < SIGN_TOL, "k={k} {m:?}");
            }
            assert!(t.coefficient.is_one());
        }
        for (name, r) in derivation_roots().unwrap() {
            let (re, im) = r.approx();
            assert!(re > SIGN_TOL && im.abs() < SIGN_TOL, "{name}");
        }
        let one = CycloNum::one(N);
        let m = derive_fusion_matrix().unwrap();
        assert_eq!(m, Mat3::antidiag(one.clone(), one.clone(), one));
        assert!((&m * &m).is_identity());
        assert_eq!(su3_normalize(&m).unwrap(), Catalog::default().fum());
    }
}
