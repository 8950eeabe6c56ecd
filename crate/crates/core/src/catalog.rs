//! Named matrices and generator sets: the braid generators, the fusion
//! generator, the series (C) and (D) families and Σ(216×3).

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::cyclo::{check_conductor, CycloError, CycloNum, DEFAULT_CONDUCTOR};
use crate::mat3::{Mat3, MatError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CatalogError {
    #[error("conductor {0} must be a multiple of 72")]
    Conductor(u32),
    #[error("modulus {modulus} does not divide the conductor {conductor}")]
    Modulus { modulus: i64, conductor: u32 },
    #[error("no matrix H{0}; expected 0..=4")]
    HIndex(usize),
    #[error("no matrix W{0}; expected 2..=4")]
    WIndex(usize),
    #[error("start triple {0:?} does not sum to 0 mod {1}")]
    TripleSum([i64; 3], i64),
    #[error("unknown group name {0:?}")]
    UnknownName(String),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error(transparent)]
    Mat(#[from] MatError),
}

/// A generator list with a stable name and a short description of where it
/// comes from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedGeneratorSet {
    pub name: String,
    pub gen_names: Vec<String>,
    pub generators: Vec<Mat3>,
    pub provenance: String,
}

/// Parameters of F(n,a,b) and G̃(d,r,s), stored unreduced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SeriesParams {
    pub n: i64,
    pub a: i64,
    pub b: i64,
    pub d: i64,
    pub r: i64,
    pub s: i64,
}

/// Matrix constructors over Q(ζ_N) for a conductor N divisible by 72.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Catalog {
    n: u32,
}

impl Default for Catalog {
    fn default() -> Self {
        Catalog { n: DEFAULT_CONDUCTOR }
    }
}

/// Fixed names accepted by [`Catalog::by_name`], besides the `c…` and `d…`
/// parameter patterns.
pub const FIXED_NAMES: [&str; 5] = ["fr162", "fr162x4", "d18-1-1-2-1-1", "d9-1-1-2-1-1", "sigma216x3"];

impl Catalog {
    pub fn new(n: u32) -> Result<Catalog, CatalogError> {
        if n % DEFAULT_CONDUCTOR != 0 {
            return Err(CatalogError::Conductor(n));
        }
        check_conductor(n)?;
        Ok(Catalog { n })
    }

    pub fn conductor(&self) -> u32 {
        self.n
    }

    fn int(&self, v: i64) -> CycloNum {
        CycloNum::from_int(self.n, v)
    }

    fn ratio(&self, p: i64, q: i64) -> CycloNum {
        CycloNum::from_ratio(self.n, p, q).expect("nonzero denominator")
    }

    /// e^{2πik/m}, provided m divides the conductor.
    pub fn root(&self, m: i64, k: i64) -> Result<CycloNum, CatalogError> {
        if m <= 0 || self.n as i64 % m != 0 {
            return Err(CatalogError::Modulus { modulus: m, conductor: self.n });
        }
        Ok(CycloNum::root_of_unity(self.n, k * (self.n as i64 / m)))
    }

    /// e^{iπp/q} for the fixed denominators used below.
    fn epi(&self, p: i64, q: i64) -> CycloNum {
        self.root(2 * q, p).expect("denominator divides 72")
    }

    /// ω = e^{2iπ/3}.
    pub fn omega(&self) -> CycloNum {
        self.epi(2, 3)
    }

    /// ε = e^{4iπ/9}.
    pub fn epsilon(&self) -> CycloNum {
        self.epi(4, 9)
    }

    pub fn sqrt2(&self) -> CycloNum {
        &self.epi(1, 4) + &self.epi(-1, 4)
    }

    pub fn sqrt3(&self) -> CycloNum {
        &self.epi(1, 6) + &self.epi(-1, 6)
    }

    /// 1/√2 = √2/2.
    pub fn inv_sqrt2(&self) -> CycloNum {
        &self.sqrt2() * &self.ratio(1, 2)
    }

    fn zero(&self) -> CycloNum {
        CycloNum::zero(self.n)
    }

    pub fn identity(&self) -> Mat3 {
        Mat3::identity(self.n)
    }

    pub fn g1(&self) -> Mat3 {
        Mat3::diag(self.epi(7, 9), -self.epi(4, 9), -self.epi(7, 9))
    }

    pub fn g2(&self) -> Mat3 {
        let half = self.ratio(1, 2);
        let p = &self.epi(4, 9) * &half;
        let q = &self.epi(7, 9) * &self.inv_sqrt2();
        Mat3::from_rows([[-p.clone(), q.clone(), p.clone()], [q.clone(), self.zero(), q.clone()], [p.clone(), q, -p]])
    }

    /// The fusion generator antidiag(−ω, −ω, −ω).
    pub fn fum(&self) -> Mat3 {
        let c = -self.omega();
        Mat3::antidiag(c.clone(), c.clone(), c)
    }

    pub fn a(&self) -> Mat3 {
        let half = self.ratio(1, 2);
        let u = self.epi(5, 9);
        let e3 = self.epi(1, 3);
        let p = &(&u * &half) * &(&e3 - &self.int(1));
        let q = &(&u * &half) * &(&e3 + &self.int(1));
        let z = self.zero();
        Mat3::from_rows([[p.clone(), z.clone(), q.clone()], [z.clone(), -u, z.clone()], [q, z, p]])
    }

    pub fn b(&self) -> Mat3 {
        let half = self.ratio(1, 2);
        let w = self.omega();
        let p = &(&self.int(1) + &w) * &half;
        let q = &(&w - &self.int(1)) * &half;
        let z = self.zero();
        Mat3::from_rows([[p.clone(), z.clone(), q.clone()], [z.clone(), -self.epi(1, 3), z.clone()], [q, z, p]])
    }

    /// H₀…H₄, the non-identity elements of the S₃ complement.
    pub fn h(&self, i: usize) -> Result<Mat3, CatalogError> {
        let h = self.ratio(1, 2);
        let s = self.inv_sqrt2();
        let z = self.zero();
        let rows = |signs: [[i64; 3]; 3]| {
            Mat3::from_rows(std::array::from_fn(|r| {
                std::array::from_fn(|c| {
                    let base = if r == 1 || c == 1 { &s } else { &h };
                    match signs[r][c] {
                        0 => z.clone(),
                        1 => base.clone(),
                        _ => -base,
                    }
                })
            }))
        };
        Ok(match i {
            0 => Mat3::diag(self.int(-1), self.int(-1), self.int(1)),
            1 => rows([[-1, -1, -1], [-1, 0, 1], [-1, 1, -1]]),
            2 => rows([[-1, -1, 1], [-1, 0, -1], [1, -1, -1]]),
            3 => rows([[1, 1, -1], [1, 0, 1], [1, -1, -1]]),
            4 => rows([[1, 1, 1], [1, 0, -1], [-1, 1, -1]]),
            _ => return Err(CatalogError::HIndex(i)),
        })
    }

    /// The cyclic permutation matrix E.
    pub fn e(&self) -> Mat3 {
        Mat3::from_ints(self.n, [[0, 1, 0], [0, 0, 1], [1, 0, 0]])
    }

    pub fn btilde(&self) -> Mat3 {
        Mat3::from_ints(self.n, [[-1, 0, 0], [0, 0, -1], [0, -1, 0]])
    }

    /// F(n,a,b) = diag(η^a, η^b, η^{−a−b}) with η = e^{2πi/n}.
    pub fn f(&self, n: i64, a: i64, b: i64) -> Result<Mat3, CatalogError> {
        Ok(Mat3::diag(self.root(n, a)?, self.root(n, b)?, self.root(n, -a - b)?))
    }

    /// F′ = E·F·E⁻¹.
    pub fn f_prime(&self, n: i64, a: i64, b: i64) -> Result<Mat3, CatalogError> {
        let e = self.e();
        Ok(&(&e * &self.f(n, a, b)?) * &e.dagger())
    }

    /// F″ = E·F′·E⁻¹.
    pub fn f_double_prime(&self, n: i64, a: i64, b: i64) -> Result<Mat3, CatalogError> {
        let e = self.e();
        Ok(&(&e * &self.f_prime(n, a, b)?) * &e.dagger())
    }

    /// G̃(d,r,s): (1,1) entry η^r, (2,3) entry η^s, (3,2) entry −η^{−r−s},
    /// with η = e^{2πi/d}.
    pub fn gtilde(&self, d: i64, r: i64, s: i64) -> Result<Mat3, CatalogError> {
        let z = self.zero();
        Ok(Mat3::from_rows([
            [self.root(d, r)?, z.clone(), z.clone()],
            [z.clone(), z.clone(), self.root(d, s)?],
            [z.clone(), -self.root(d, -r - s)?, z],
        ]))
    }

    /// W₂ = diag(−1,1,−1), W₃ = diag(1,−1,−1), W₄ = diag(−1,−1,1).
    pub fn w(&self, i: usize) -> Result<Mat3, CatalogError> {
        let (a, b, c) = match i {
            2 => (-1, 1, -1),
            3 => (1, -1, -1),
            4 => (-1, -1, 1),
            _ => return Err(CatalogError::WIndex(i)),
        };
        Ok(Mat3::diag(self.int(a), self.int(b), self.int(c)))
    }

    /// The Klein group {I, V₂, V₃, V₄} with V₂ = (FUM)³ and V₃ = G1·V₂·G1⁻¹.
    pub fn klein_v(&self) -> [Mat3; 4] {
        let v2 = self.fum().pow(3).expect("nonnegative power");
        let g1 = self.g1();
        let v3 = &(&g1 * &v2) * &g1.dagger();
        let v4 = &v2 * &v3;
        [self.identity(), v2, v3, v4]
    }

    /// The diagonal Klein group {I, W₂, W₃, W₄}.
    pub fn klein_vd(&self) -> [Mat3; 4] {
        [self.identity(), self.w(2).expect("valid"), self.w(3).expect("valid"), self.w(4).expect("valid")]
    }

    /// C₁₈ = A·(FUM)³.
    pub fn c18(&self) -> Mat3 {
        &self.a() * &self.klein_v()[1]
    }

    /// C₆ = B·G1·(FUM)³·G1⁻¹.
    pub fn c6(&self) -> Mat3 {
        &self.b() * &self.klein_v()[2]
    }

    /// The orthogonal conjugator O relating the two order-648 realizations.
    pub fn o(&self) -> Mat3 {
        let s = self.inv_sqrt2();
        let z = self.zero();
        Mat3::from_rows([[s.clone(), z.clone(), s.clone()], [z.clone(), self.int(1), z.clone()], [-s.clone(), z, s]])
    }

    /// Generator D = diag(ε, ε, εω) of Σ(216×3).
    pub fn sigma_d(&self) -> Mat3 {
        let e = self.epsilon();
        Mat3::diag(e.clone(), e.clone(), &e * &self.omega())
    }

    /// Generator V = (1/(i√3))·[[1,1,1],[1,ω,ω²],[1,ω²,ω]] of Σ(216×3).
    pub fn sigma_v(&self) -> Mat3 {
        // 1/(i√3) = −i·√3/3
        let pre = &(&-self.epi(1, 2) * &self.sqrt3()) * &self.ratio(1, 3);
        let w = self.omega();
        let w2 = &w * &w;
        let one = self.int(1);
        Mat3::from_rows([[one.clone(), one.clone(), one.clone()], [one.clone(), w.clone(), w2.clone()], [one, w2, w]])
            .scale(&pre)
    }

    fn set(&self, name: &str, gen_names: &[&str], generators: Vec<Mat3>, provenance: &str) -> NamedGeneratorSet {
        NamedGeneratorSet {
            name: name.to_string(),
            gen_names: gen_names.iter().map(|s| s.to_string()).collect(),
            generators,
            provenance: provenance.to_string(),
        }
    }

    /// Fr(162) = ⟨G1, G2⟩.
    pub fn fr162(&self) -> NamedGeneratorSet {
        self.set("fr162", &["g1", "g2"], vec![self.g1(), self.g2()], "braid generators G1, G2")
    }

    /// Fr(162×4) = ⟨G1, G2, FUM⟩.
    pub fn fr162x4(&self) -> NamedGeneratorSet {
        self.set(
            "fr162x4",
            &["g1", "g2", "fum"],
            vec![self.g1(), self.g2(), self.fum()],
            "braid generators G1, G2 with the fusion matrix FUM",
        )
    }

    /// C(n,a,b) = ⟨E, F(n,a,b)⟩.
    pub fn c_group(&self, n: i64, a: i64, b: i64) -> Result<NamedGeneratorSet, CatalogError> {
        Ok(self.set(
            &format!("c{n}-{a}-{b}"),
            &["e", "f"],
            vec![self.e(), self.f(n, a, b)?],
            "series (C): E with F(n,a,b)",
        ))
    }

    /// D(n,a,b;d,r,s) = ⟨E, F(n,a,b), G̃(d,r,s)⟩.
    pub fn d_group(&self, p: SeriesParams) -> Result<NamedGeneratorSet, CatalogError> {
        let SeriesParams { n, a, b, d, r, s } = p;
        Ok(self.set(
            &format!("d{n}-{a}-{b}-{d}-{r}-{s}"),
            &["e", "f", "gt"],
            vec![self.e(), self.f(n, a, b)?, self.gtilde(d, r, s)?],
            "series (D): E, F(n,a,b) and G~(d,r,s)",
        ))
    }

    pub fn sigma216x3(&self) -> NamedGeneratorSet {
        self.set("sigma216x3", &["d", "v"], vec![self.sigma_d(), self.sigma_v()], "exceptional group: D and V")
    }

    /// All fixed-name generator sets.
    pub fn list(&self) -> Vec<NamedGeneratorSet> {
        FIXED_NAMES.iter().map(|n| self.by_name(n).expect("fixed names resolve")).collect()
    }

    /// Resolves a fixed name or a `c{n}-{a}-{b}` / `d{n}-{a}-{b}-{d}-{r}-{s}`
    /// pattern.
    pub fn by_name(&self, name: &str) -> Result<NamedGeneratorSet, CatalogError> {
        let unknown = || CatalogError::UnknownName(name.to_string());
        match name {
            "fr162" => return Ok(self.fr162()),
            "fr162x4" => return Ok(self.fr162x4()),
            "sigma216x3" => return Ok(self.sigma216x3()),
            _ => {}
        }
        let (kind, rest) = name.split_at(name.find(|c: char| !c.is_ascii_alphabetic()).unwrap_or(name.len()));
        let nums: Vec<i64> = rest.split('-').map(str::parse).collect::<Result<_, _>>().map_err(|_| unknown())?;
        match (kind, nums.as_slice()) {
            ("c", &[n, a, b]) if n > 0 => self.c_group(n, a, b),
            ("d", &[n, a, b, d, r, s]) if n > 0 && d > 0 => self.d_group(SeriesParams { n, a, b, d, r, s }),
            _ => Err(unknown()),
        }
    }

    /// Closure of a start triple under adding any permutation of (1,1,−2) or
    /// (−1,−1,2) componentwise mod n, returned as the diagonal matrices
    /// diag(η^{k₁}, η^{k₂}, η^{k₃}) with η = e^{2πi/n}, sorted.
    pub fn triple_graph_closure(&self, n: i64, start: [i64; 3]) -> Result<Vec<Mat3>, CatalogError> {
        if n <= 0 || self.n as i64 % n != 0 {
            return Err(CatalogError::Modulus { modulus: n, conductor: self.n });
        }
        if start.iter().sum::<i64>().rem_euclid(n) != 0 {
            return Err(CatalogError::TripleSum(start, n));
        }
        let moves: Vec<[i64; 3]> =
            [[1, 1, -2], [1, -2, 1], [-2, 1, 1]].iter().flat_map(|m| [*m, m.map(|x| -x)]).collect();
        let norm = |t: [i64; 3]| t.map(|x| x.rem_euclid(n));
        let mut seen = BTreeSet::from([norm(start)]);
        let mut queue = VecDeque::from([norm(start)]);
        while let Some(t) = queue.pop_front() {
            for m in &moves {
                let next = norm([t[0] + m[0], t[1] + m[1], t[2] + m[2]]);
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
        let mut out = seen
            .into_iter()
            .map(|[a, b, c]| Ok(Mat3::diag(self.root(n, a)?, self.root(n, b)?, self.root(n, c)?)))
            .collect::<Result<Vec<_>, CatalogError>>()?;
        out.sort();
        Ok(out)
    }
}
