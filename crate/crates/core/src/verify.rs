//! The verification suite: every checkable statement about the order-648
//! groups as a named item with a pass/fail outcome.
//!
//! Item ids follow the numbering of the statements they check (`eq21`,
//! `thm1.presentation`, `lemma11.spectrum`, …). A selector is `all`, an exact
//! id, an id prefix ending at a `.` boundary (`thm14` selects `thm14.ii`), or
//! a bare family name (`eq`, `thm`, `lemma`, …).

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::OnceLock;
use std::time::Instant;

use serde_json::{json, Value};
use thiserror::Error;

use crate::catalog::{Catalog, CatalogError, SeriesParams};
use crate::cyclo::{zeta, CycloError, CycloNum};
use crate::engine::{aut_count_abelian, cd_inclusion_check, EngineError, MatrixGroup, Subgroup, TwoSylowType};
use crate::fp::{todd_coxeter, FpError, GenAssignment, Presentation, DEFAULT_COSET_CAP};
use crate::fusion::{self, FusionError};
use crate::mat3::{Mat3, MatError};

/// Presentation of Fr(162×4) on C₆, C₁₈, H₁, H₃.
pub const FR648_PRESENTATION: &str = "gens: c6 c18 h1 h3
rel: c6^6
rel: c18^18
rel: [c6, c18]
rel: h1^2
rel: h3^3
rel: (h1 h3)^2
rel: h1 c6 h1^-1 = c6^-1 c18^6
rel: h1 c18 h1^-1 = c6^3 c18
rel: h3 c6 h3^-1 = c6 c18^-3
rel: h3 c18 h3^-1 = c6 c18^10";

/// N(18,1,1;2,1,1) ⋊ ⟨E, B̃⟩ with the conjugation action on F, F′, F″.
pub const D18_ACTION_PRESENTATION: &str = "gens: f fp fpp e bt
rel: f^18
rel: [f, fp]
rel: [f, fpp]
rel: [fp, fpp]
rel: f fp fpp
rel: (f fpp^-1)^6
rel: e^3
rel: bt^2
rel: (e bt)^2
rel: bt f bt^-1 = fp
rel: bt fp bt^-1 = f
rel: bt fpp bt^-1 = fpp
rel: e f e^-1 = fp
rel: e fp e^-1 = fpp
rel: e fpp e^-1 = f";

/// Fr(162) on A, B, H₁, H₃, including the commutator [A, B].
pub const FR162_PRESENTATION: &str = "gens: a b h1 h3
rel: a^9
rel: b^3
rel: [a, b]
rel: h1^2
rel: h3^3
rel: (h1 h3)^2
rel: h1 a h1^-1 = a
rel: h1 b h1^-1 = a^6 b^2
rel: h3 a h3^-1 = a b
rel: h3 b h3^-1 = a^6 b";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("unknown suite selector {0:?}")]
    UnknownSelector(String),
}

/// Why an item failed: a false statement or an error while checking it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fail(pub String);

impl fmt::Display for Fail {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

macro_rules! fail_from {
    ($($t:ty),*) => {$(
        impl From<$t> for Fail {
            fn from(e: $t) -> Fail {
                Fail(e.to_string())
            }
        }
    )*};
}

fail_from!(EngineError, FpError, CatalogError, MatError, FusionError, CycloError);

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !$cond {
            return Err(Fail(format!($($arg)+)));
        }
    };
}

type Check = Result<String, Fail>;

/// Shared state for one suite run: the catalog, named matrices for word
/// evaluation, and the groups built on first use.
pub struct Context {
    cat: Catalog,
    cap: usize,
    names: Presentation,
    assign: GenAssignment,
    groups: BTreeMap<&'static str, OnceLock<Result<MatrixGroup, Fail>>>,
}

const GROUP_KEYS: [&str; 8] = ["fr162", "fr648", "d18", "d9", "sigma", "s54", "thm1src", "thm6src"];

impl Context {
    pub fn new(cap: usize) -> Context {
        let cat = Catalog::default();
        let h = |i| cat.h(i).expect("valid index");
        let w = |i| cat.w(i).expect("valid index");
        let v = cat.klein_v();
        let f = cat.f(18, 1, 1).expect("valid parameters");
        let fp = cat.f_prime(18, 1, 1).expect("valid parameters");
        let fpp = cat.f_double_prime(18, 1, 1).expect("valid parameters");
        let g18 = {
            let e2 = cat.e().pow(2).expect("power");
            let inner = &(&(&e2 * &f) * &cat.e()) * &f.dagger();
            &f.pow(2).expect("power") * &inner.pow(3).expect("power")
        };
        let e = cat.e();
        // C₆ read off the presentation: h3 c18 h3⁻¹ = c6 c18¹⁰ with H₃ ↦ E².
        let g6 = &(&(&e.pow(2).expect("power") * &g18) * &e) * &g18.pow(8).expect("power");
        let mut table: Vec<(&str, Mat3)> = vec![
            ("g1", cat.g1()),
            ("g2", cat.g2()),
            ("fum", cat.fum()),
            ("a", cat.a()),
            ("b", cat.b()),
            ("e", e),
            ("bt", cat.btilde()),
            ("f", f),
            ("fp", fp),
            ("fpp", fpp),
            ("c18", cat.c18()),
            ("c6", cat.c6()),
            ("v2", v[1].clone()),
            ("v3", v[2].clone()),
            ("v4", v[3].clone()),
            ("g18", g18),
            ("g6", g6),
            ("o", cat.o()),
            ("gt201", cat.gtilde(2, 0, 1).expect("valid parameters")),
            ("gt200", cat.gtilde(2, 0, 0).expect("valid parameters")),
            // literal matrices as printed next to the identities
            ("anti_m", Mat3::from_ints(72, [[0, 0, -1], [0, -1, 0], [-1, 0, 0]])),
            ("anti_p", Mat3::from_ints(72, [[0, 0, 1], [0, -1, 0], [1, 0, 0]])),
            ("diag_m", Mat3::from_ints(72, [[-1, 0, 0], [0, 1, 0], [0, 0, -1]])),
        ];
        for i in 0..5 {
            table.push((["h0", "h1", "h2", "h3", "h4"][i], h(i)));
        }
        for i in 2..5 {
            table.push((["w2", "w3", "w4"][i - 2], w(i)));
        }
        let gen_names: Vec<&str> = table.iter().map(|(n, _)| *n).collect();
        let names = Presentation::new(&gen_names, Vec::new()).expect("distinct names");
        let assign = table.into_iter().fold(GenAssignment::new(72), |acc, (n, m)| acc.with(n, m));
        let groups = GROUP_KEYS.iter().map(|k| (*k, OnceLock::new())).collect();
        Context { cat, cap, names, assign, groups }
    }

    pub fn catalog(&self) -> &Catalog {
        &self.cat
    }

    /// Evaluates a word over the named matrices.
    pub fn m(&self, expr: &str) -> Result<Mat3, Fail> {
        let w = self.names.word(expr)?;
        Ok(self.assign.eval_word(&self.names, &w)?)
    }

    fn ident(&self, lhs: &str, rhs: &str) -> Check {
        let (l, r) = (self.m(lhs)?, self.m(rhs)?);
        ensure!(l == r, "{lhs} = {} but {rhs} = {}", one_line(&l), one_line(&r));
        Ok(format!("{lhs} = {rhs}"))
    }

    fn group(&self, key: &str) -> Result<&MatrixGroup, Fail> {
        let slot = self.groups.get(key).expect("registered group key");
        slot.get_or_init(|| {
            let gens = match key {
                "fr162" => self.cat.fr162().generators,
                "fr648" => self.cat.fr162x4().generators,
                "d18" => self.cat.by_name("d18-1-1-2-1-1")?.generators,
                "d9" => self.cat.by_name("d9-1-1-2-1-1")?.generators,
                "sigma" => self.cat.sigma216x3().generators,
                "s54" => vec![self.m("a")?, self.m("b")?, self.m("h2")?],
                "thm1src" => vec![self.m("c18")?, self.m("c6")?, self.m("h1")?, self.m("h3")?],
                "thm6src" => vec![self.m("a")?, self.m("b")?, self.m("h1")?, self.m("h3")?],
                _ => unreachable!("registered group key"),
            };
            Ok(MatrixGroup::generate(&gens, self.cap)?)
        })
        .as_ref()
        .map_err(Clone::clone)
    }

    pub fn fr162(&self) -> Result<&MatrixGroup, Fail> {
        self.group("fr162")
    }

    pub fn fr648(&self) -> Result<&MatrixGroup, Fail> {
        self.group("fr648")
    }

    pub fn d18(&self) -> Result<&MatrixGroup, Fail> {
        self.group("d18")
    }

    pub fn d9(&self) -> Result<&MatrixGroup, Fail> {
        self.group("d9")
    }

    pub fn sigma(&self) -> Result<&MatrixGroup, Fail> {
        self.group("sigma")
    }

    fn gen(&self, gens: &[Mat3]) -> Result<MatrixGroup, Fail> {
        Ok(MatrixGroup::generate(gens, self.cap)?)
    }

    fn ms(&self, exprs: &[&str]) -> Result<Vec<Mat3>, Fail> {
        exprs.iter().map(|e| self.m(e)).collect()
    }

    /// 𝓕 = ⟨F², (F·F″⁻¹)²⟩ inside D(18,1,1;2,1,1).
    fn script_f<'g>(&self, d18: &'g MatrixGroup) -> Result<Subgroup<'g>, Fail> {
        Ok(d18.subgroup(&self.ms(&["f^2", "(f fpp^-1)^2"])?)?)
    }

    /// 𝒩 = ⟨A, B⟩ inside a group containing it.
    fn script_n<'g>(&self, g: &'g MatrixGroup) -> Result<Subgroup<'g>, Fail> {
        Ok(g.subgroup(&self.ms(&["a", "b"])?)?)
    }

    fn klein_v<'g>(&self, g: &'g MatrixGroup) -> Result<Subgroup<'g>, Fail> {
        Ok(g.subgroup_of_set(&self.cat.klein_v())?)
    }

    fn klein_vd<'g>(&self, g: &'g MatrixGroup) -> Result<Subgroup<'g>, Fail> {
        Ok(g.subgroup_of_set(&self.cat.klein_vd())?)
    }
}

fn one_line(m: &Mat3) -> String {
    m.to_string().replace('\n', " ")
}

fn idx(g: &MatrixGroup, m: &Mat3) -> Result<usize, Fail> {
    g.index_of(m).ok_or_else(|| Fail(format!("{m} is not in the group")))
}

/// {x·y : x ∈ xs, y ∈ ys} as a set of matrices.
fn product(xs: &[Mat3], ys: &[Mat3]) -> BTreeSet<Mat3> {
    xs.iter().flat_map(|x| ys.iter().map(move |y| x * y)).collect()
}

fn mats(s: &Subgroup<'_>) -> Vec<Mat3> {
    s.matrices().cloned().collect()
}

fn spectrum_string(s: &BTreeMap<u64, usize>) -> String {
    s.iter().map(|(k, v)| format!("{k}:{v}")).collect::<Vec<_>>().join(" ")
}

fn presentation_check(ctx: &Context, text: &str, images: &[(&str, &str)], expected: usize) -> Check {
    let p = Presentation::parse(text)?;
    let assign = images.iter().try_fold(GenAssignment::new(72), |acc, (n, e)| Ok::<_, Fail>(acc.with(n, ctx.m(e)?)))?;
    let failing = assign.check_presentation(&p)?;
    ensure!(
        failing.is_empty(),
        "failing relators: {}",
        failing.iter().map(|w| p.display_word(w)).collect::<Vec<_>>().join(", ")
    );
    let order = todd_coxeter(&p, DEFAULT_COSET_CAP)?;
    ensure!(order == expected, "coset enumeration gives {order}, closure gives {expected}");
    Ok(format!("{} relators hold; coset enumeration order {order}", p.relators().len()))
}

/// 3SylF (or 3SylD): the subgroup generated by all 3-Sylows.
fn sylow_span<'g>(g: &'g MatrixGroup) -> Result<Subgroup<'g>, Fail> {
    Ok(g.generated_by_sylows(3)?)
}

/// One runnable suite item.
pub struct Item {
    pub id: &'static str,
    run: Box<dyn Fn(&Context) -> Check + Send + Sync>,
}

fn item(id: &'static str, run: impl Fn(&Context) -> Check + Send + Sync + 'static) -> Item {
    Item { id, run: Box::new(run) }
}

fn eq(id: &'static str, lhs: &'static str, rhs: &'static str) -> Item {
    item(id, move |c| c.ident(lhs, rhs))
}

/// All items in report order.
pub fn items() -> Vec<Item> {
    let mut v = Vec::new();
    structure_items(&mut v);
    analysis_items(&mut v);
    extension_items(&mut v);
    epilogue_items(&mut v);
    subgroup54_items(&mut v);
    conjugacy_items(&mut v);
    fusion_items(&mut v);
    v
}

fn structure_items(v: &mut Vec<Item>) {
    v.push(item("thm1.order", |c| {
        let (big, small) = (c.fr648()?.order(), c.fr162()?.order());
        ensure!(big == 648 && small == 162, "orders {big} and {small}");
        ensure!(c.fr162()?.is_subset_of(c.fr648()?), "Fr(162) is not inside Fr(162x4)");
        Ok("|<G1,G2,FUM>| = 648, |<G1,G2>| = 162".into())
    }));
    v.push(item("thm1.factorization", |c| {
        let g = c.fr648()?;
        let ai: Vec<Mat3> = (0..9).map(|i| c.m("a").and_then(|a| Ok(a.pow(i)?))).collect::<Result<_, _>>()?;
        let bj: Vec<Mat3> = (0..3).map(|j| c.m("b").and_then(|b| Ok(b.pow(j)?))).collect::<Result<_, _>>()?;
        let t = c.cat.klein_v().to_vec();
        let h = c.ms(&["1", "h0", "h1", "h2", "h3", "h4"])?;
        ensure!(g.unique_factorization(&[ai, bj, t, h]), "A^i B^j T H is not a bijection");
        Ok("9*3*4*6 = 648 distinct products".into())
    }));
    v.push(item("thm1.presentation", |c| {
        presentation_check(
            c,
            FR648_PRESENTATION,
            &[("c6", "c6"), ("c18", "c18"), ("h1", "h1"), ("h3", "h3")],
            c.fr648()?.order(),
        )
    }));
    v.push(item("thm1.presentation_forms", |c| {
        // the stated relation and the exponent-5 form agree since C₆ has order 6
        c.ident("h1 c6 h1^-1", "c6^-1 c18^6")?;
        c.ident("c6^-1", "c6^5")?;
        c.ident("h3 c18 h3^-1", "c6 c18^10")?;
        c.ident("h3 c6 h3^-1", "c6 c18^-3")?;
        Ok("C6^-1 C18^6 = C6^5 C18^6, C6 C18^10 = C18^10 C6^7, C6 C18^-3 = C6^-5 C18^-3".into())
    }));
    v.push(item("thm1.kernel", |c| {
        let g = c.fr648()?;
        let nv = g.subgroup(&c.ms(&["a", "b", "v2", "v3"])?)?;
        let spec = nv.spectrum();
        ensure!(nv.order() == 108 && nv.is_normal(), "N.V has order {} (normal: {})", nv.order(), nv.is_normal());
        // Z18 x Z6 has exponent 18 and exactly 3 involutions
        ensure!(spec.keys().max() == Some(&18) && spec.get(&2) == Some(&3), "spectrum {}", spectrum_string(&spec));
        ensure!(c.gen(&c.ms(&["c18", "c6"])?)?.order() == 108, "<C18, C6> is not the kernel");
        let h = g.subgroup(&c.ms(&["h1", "h3"])?)?;
        ensure!(h.order() == 6 && h.center().order() == 1, "complement of order {} is not S3", h.order());
        ensure!(nv.intersection(&h).order() == 1, "kernel meets the complement");
        Ok("kernel Z18 x Z6 of order 108, complement S3, trivial intersection".into())
    }));
    v.push(item("thm1.sylow", |c| {
        let g = c.fr648()?;
        let syl = g.sylow(3)?;
        let s3f = g.subgroup(&c.ms(&["a", "b", "h3"])?)?;
        let conj: Vec<Subgroup> =
            c.cat.klein_v().iter().map(|t| Ok(s3f.conjugate_by(idx(g, t)?))).collect::<Result<_, Fail>>()?;
        ensure!(syl.len() == 4, "{} 3-Sylows", syl.len());
        ensure!(syl.iter().all(|s| conj.contains(s)), "Sylows are not the V-conjugates of S3(F)");
        Ok("four 3-Sylows: S3(F) and its V-conjugates".into())
    }));
    v.push(item("thm1.conjugacy", |c| {
        let conj = c.fr648()?.conjugate_group(&c.m("o")?, c.cap)?;
        ensure!(conj == *c.d18()?, "O Fr(162x4) O^T differs from D(18,1,1;2,1,1)");
        Ok("O Fr(162x4) O^T = D(18,1,1;2,1,1)".into())
    }));
    v.push(eq("eq1", "a", "g1 g2^2 g1^-1"));
    v.push(eq("eq2", "b", "g1 g2^-2 g1"));
    v.push(eq("eq3", "g2 g1 fum^3 g1^-1 g2^-1", "fum^3 g1 fum^3 g1^-1"));
    v.push(eq("eq4", "g2^-1 g1 fum^3 g1^-1 g2", "fum^3 g1 fum^3 g1^-1"));
    v.push(eq("eq5", "fum g1 fum^3 g1^-1 fum^-1", "g1 fum^3 g1^-1"));
    v.push(eq("eq6", "fum^-1 g1 fum^3 g1^-1 fum", "g1 fum^3 g1^-1"));
    v.push(eq("eq7", "g2 fum^3 g1 fum^3 g1^-1 g2^-1", "g1 fum^3 g1^-1"));
    v.push(eq("eq8", "g2^-1 fum^3 g1 fum^3 g1^-1 g2", "g1 fum^3 g1^-1"));
    v.push(eq("eq9", "fum^4 g1 fum^3 g1^-1 fum^-1", "fum^3 g1 fum^3 g1^-1"));
    v.push(eq("eq10", "fum^2 g1 fum^3 g1^-1 fum", "fum^3 g1 fum^3 g1^-1"));
    v.push(eq("eq11", "fum a fum^-1", "a"));
    v.push(eq("eq12", "fum b fum^-1", "b"));
    v.push(item("eq13", |c| {
        c.ident("fum", "a^3 fum^3")?;
        c.ident("fum^-2", "a^3")?;
        let g = c.fr648()?;
        let nv = g.subgroup(&c.ms(&["a", "b", "v2", "v3"])?)?;
        ensure!(nv.contains_matrix(&c.m("fum")?), "FUM is not in N.V");
        Ok("FUM = A^3 (FUM)^3 lies in N.V; (FUM)^-2 = A^3".into())
    }));
    v.push(item("sec2.klein", |c| {
        let g = c.fr648()?;
        let v4 = c.klein_v(g)?;
        ensure!(v4.order() == 4 && v4.elements_of_order(2).len() == 3, "V is not a Klein group");
        c.ident("v2", "anti_m")?;
        c.ident("v3", "anti_p")?;
        c.ident("v4", "diag_m")?;
        c.ident("g2 fum^3 g2^-1", "fum^3")?;
        c.ident("v2 v3", "v3 v2")?;
        ensure!(v4.is_normal(), "V is not normal");
        Ok("V = {I, (FUM)^3, G1 (FUM)^3 G1^-1, product} is a normal Klein group".into())
    }));
    v.push(item("sec2.normal_n", |c| {
        let g = c.fr648()?;
        let n = c.script_n(g)?;
        ensure!(n.order() == 27 && n.is_normal(), "<A,B> has order {} (normal: {})", n.order(), n.is_normal());
        let n162 = c.script_n(c.fr162()?)?;
        ensure!(n162.is_normal(), "<A,B> is not normal in Fr(162)");
        Ok("<A,B> is normal of order 27 in Fr(162) and Fr(162x4)".into())
    }));
    v.push(item("sec2.commute", |c| {
        for x in ["a", "b"] {
            for t in ["v2", "v3"] {
                c.ident(&format!("{x} {t}"), &format!("{t} {x}"))?;
            }
        }
        Ok("A and B commute with (FUM)^3 and G1 (FUM)^3 G1^-1".into())
    }));
    v.push(item("sec2.intersections", |c| {
        let g = c.fr648()?;
        let (n, v4) = (c.script_n(g)?, c.klein_v(g)?);
        ensure!(n.intersection(&v4).order() == 1, "<A,B> meets V");
        let nv = g.subgroup(&c.ms(&["a", "b", "v2", "v3"])?)?;
        let h = g.subgroup(&c.ms(&["h1", "h3"])?)?;
        ensure!(nv.intersection(&h).order() == 1, "N.V meets H");
        let n162 = c.script_n(c.fr162()?)?;
        let h162 = c.fr162()?.subgroup(&c.ms(&["h1", "h3"])?)?;
        ensure!(n162.intersection(&h162).order() == 1, "N meets H in Fr(162)");
        let ab: Vec<Mat3> = mats(&n162);
        let hh: Vec<Mat3> = mats(&h162);
        ensure!(c.fr162()?.unique_factorization(&[ab, hh]), "Fr(162) is not N.H");
        Ok("<A,B> ∩ V = {I}, (<A,B>.V) ∩ H = {I}, Fr(162) = N.H".into())
    }));
    v.push(item("sec2.involution_products", |c| {
        let order = |e: &str| -> Result<u64, Fail> { Ok(c.m(e)?.element_order(1000)?) };
        let got = [order("v2 h1")?, order("v2 h2")?, order("v3 h1")?, order("v3 h2")?];
        ensure!(got == [4, 2, 2, 4], "orders {got:?}");
        Ok("(FUM)^3 H1, (FUM)^3 H2, V3 H1, V3 H2 have orders 4, 2, 2, 4".into())
    }));
    v.push(item("sec2.fum_cube", |c| {
        let alt = c.gen(&c.ms(&["g1", "g2", "anti_m"])?)?;
        ensure!(alt == *c.fr648()?, "<G1,G2,(FUM)^3> differs");
        Ok("<G1,G2,FUM> = <G1,G2,(FUM)^3>".into())
    }));
}

fn analysis_items(v: &mut Vec<Item>) {
    v.push(item("eq14", |c| {
        c.ident("e bt", "fum^3")?;
        ensure!(c.gen(&c.ms(&["g1", "g2", "e bt"])?)? == *c.fr648()?, "<G1,G2,E Bt> differs");
        Ok("E Bt = (FUM)^3 and Fr(162x4) = <G1,G2,E Bt>".into())
    }));
    v.push(item("eq15", |c| {
        ensure!(c.gen(&c.ms(&["e", "bt", "f"])?)?.order() == 648, "<E,Bt,F> is not of order 648");
        Ok("|<E,Bt,F>| = 648".into())
    }));
    v.push(eq("eq16", "fp", "(f fpp)^-1"));
    v.push(eq("eq17", "fpp", "(f fp)^-1"));
    v.push(eq("eq18", "fp", "f^-2 f fpp^-1"));
    v.push(item("sec3.diagonal_subgroup", |c| {
        let d = c.d18()?;
        let n = d.subgroup(&c.ms(&["f", "fp", "fpp"])?)?;
        ensure!(n.order() == 108 && n.is_normal(), "N(18,1,1;2,1,1) has order {}", n.order());
        ensure!(d.subgroup(&c.ms(&["f", "f fpp^-1"])?)? == n, "<F, F F''^-1> differs");
        let (cf, cg) = (d.subgroup(&c.ms(&["f"])?)?, d.subgroup(&c.ms(&["f fpp^-1"])?)?);
        ensure!(cf.order() == 18 && cg.order() == 6 && cf.intersection(&cg).order() == 1, "not Z18 x Z6");
        let graph = c.cat.triple_graph_closure(18, [1, 1, -2])?;
        ensure!(
            graph == mats(&n).into_iter().collect::<BTreeSet<_>>().into_iter().collect::<Vec<_>>(),
            "triple graph differs"
        );
        let s3 = d.subgroup(&c.ms(&["e", "bt"])?)?;
        ensure!(s3.order() == 6 && s3.intersection(&n).order() == 1, "<E,Bt> is not a complement");
        Ok("N(18,1,1;2,1,1) = <F,F',F''> = Z18 x Z6, normal, complemented by <E,Bt> = S3; triple graph has 108 nodes"
            .into())
    }));
    v.push(item("sec3.presentation", |c| {
        presentation_check(
            c,
            D18_ACTION_PRESENTATION,
            &[("f", "f"), ("fp", "fp"), ("fpp", "fpp"), ("e", "e"), ("bt", "bt")],
            c.d18()?.order(),
        )
    }));
    v.push(item("sec3.fr162_presentation", |c| {
        presentation_check(
            c,
            FR162_PRESENTATION,
            &[("a", "a"), ("b", "b"), ("h1", "h1"), ("h3", "h3")],
            c.fr162()?.order(),
        )
    }));
    v.push(eq("eq19", "h3 c18 h3^-1", "c18^10 c6^4 anti_m diag_m"));
    v.push(eq("eq20", "c6^3", "anti_p"));
    v.push(eq("eq21", "h3 c18 h3^-1", "c18^10 c6^7"));
    v.push(eq("eq22", "c18^2", "a^2"));
    v.push(eq("eq23", "c18^3", "fum"));
    v.push(eq("eq24", "h1 c6 h1^-1", "c6^2 fum^2 anti_p"));
    v.push(eq("eq25", "h1 c6 h1^-1", "c6^5 c18^6"));
    v.push(item("eq26", |c| {
        let lhs = c.m("(h3 c6 h3^-1)(fum c18^6 c6^5)")?;
        let w = zeta(-24);
        ensure!(lhs == Mat3::diag(w.clone(), w.clone(), w), "product is {lhs}");
        c.ident("(h3 c6 h3^-1)(fum c18^6 c6^5)", "fum^2")?;
        Ok("product = e^{-2iπ/3} I = (FUM)^2".into())
    }));
    v.push(item("eq27", |c| {
        let lhs = c.m("(h1 c18 h1^-1)(fum c18^4 c6^5)")?;
        let rhs = Mat3::diag(zeta(16), -zeta(4), zeta(16));
        ensure!(lhs == rhs, "product is {lhs}");
        Ok("product = diag(e^{4iπ/9}, -e^{iπ/9}, e^{4iπ/9})".into())
    }));
    v.push(item("eq28", |c| {
        let n = 72;
        let samples = [
            CycloNum::zero(n),
            CycloNum::one(n),
            CycloNum::from_ratio(n, -3, 2)?,
            zeta(5),
            &zeta(9) + &CycloNum::from_ratio(n, 1, 3)?,
            c.m("c18")?.get(1, 1).clone(),
            c.m("c18")?.get(1, 3).clone(),
            c.m("c18")?.get(2, 2).clone(),
        ];
        let z = CycloNum::zero(n);
        let mut count = 0;
        for a in &samples {
            for b in &samples {
                for cc in &samples {
                    let m1 = Mat3::from_rows([
                        [a.clone(), z.clone(), b.clone()],
                        [z.clone(), cc.clone(), z.clone()],
                        [b.clone(), z.clone(), a.clone()],
                    ]);
                    let m2 = Mat3::from_rows([
                        [a.clone(), z.clone(), -b],
                        [z.clone(), cc.clone(), z.clone()],
                        [-b, z.clone(), a.clone()],
                    ]);
                    let d = &(a * a) - &(b * b);
                    ensure!(&m1 * &m2 == Mat3::diag(d.clone(), cc * cc, d), "fails at a={a}, b={b}, c={cc}");
                    count += 1;
                }
            }
        }
        Ok(format!("holds on {count} exact samples"))
    }));
    v.push(eq("eq29", "h3 c6 h3^-1", "c6^-5 c18^-3"));
    v.push(item("eq30", |c| {
        ensure!(c.m("c6^2 c18^8")? == c.m("(h1 c18 h1^-1)(fum c18^4 c6^5)")?, "C6^2 C18^8 is not the product");
        ensure!(
            c.m("c6^2 c18^8")? == Mat3::diag(zeta(16), -zeta(4), zeta(16)),
            "C6^2 C18^8 is not the diagonal matrix"
        );
        Ok("the diagonal matrix of the C18 conjugation is C6^2 C18^8".into())
    }));
    v.push(eq("eq31", "h1 c18 h1^-1", "c6^3 c18"));
}

fn extension_items(v: &mut Vec<Item>) {
    v.push(item("lemma1", |c| {
        ensure!(c.m("a")?.is_cross() && c.m("b")?.is_cross(), "A or B is not a cross matrix");
        let n = c.gen(&c.ms(&["a", "b"])?)?;
        ensure!(n.elements().iter().all(Mat3::is_cross), "<A,B> leaves the cross matrices");
        let pairs = n.elements().iter().all(|x| n.elements().iter().all(|y| (x * y).is_cross()));
        ensure!(pairs, "cross matrices are not closed under products");
        ensure!(!c.m("h3")?.is_cross() && !c.m("h3^2")?.is_cross(), "H3 is a cross matrix");
        Ok("A, B are cross; products of cross matrices in <A,B> stay cross; H3, H3^2 are not".into())
    }));
    v.push(item("cor1", |c| {
        let mut all = BTreeSet::new();
        for i in 0..9 {
            for j in 0..3 {
                let m = c.m(&format!("a^{i} b^{j}"))?;
                ensure!(m.is_cross(), "A^{i} B^{j} is not cross");
                all.insert(m);
            }
        }
        ensure!(all.len() == 27, "{} distinct products", all.len());
        ensure!(c.m("b^3")?.is_identity(), "B^3 is not I");
        Ok("the 27 products A^i B^j (j in 0..3) are distinct cross matrices".into())
    }));
    v.push(item("thm3", |c| {
        let g = c.fr162()?;
        let syl = g.sylow(3)?;
        ensure!(syl.len() == 1 && syl[0].order() == 81, "{} 3-Sylows", syl.len());
        let n = mats(&c.script_n(g)?);
        let cosets = [product(&n, &[c.m("1")?]), product(&n, &[c.m("h3")?]), product(&n, &[c.m("h3^2")?])];
        ensure!(cosets.iter().map(BTreeSet::len).sum::<usize>() == 81, "cosets are not disjoint");
        let union: BTreeSet<Mat3> = cosets.into_iter().flatten().collect();
        ensure!(union == mats(&syl[0]).into_iter().collect(), "S3(F) is not N ⊔ N H3 ⊔ N H3^2");
        Ok("unique 3-Sylow of Fr(162) = N ⊔ N H3 ⊔ N H3^2, order 81".into())
    }));
    v.push(item("lemma2", |c| {
        let g = c.fr162()?;
        let s = g.sylow(3)?.remove(0);
        let ok = (0..g.order()).all(|x| s.contains(x) || s.contains(g.mul(x, x)));
        ensure!(ok, "some x outside the 3-Sylow has x^2 outside");
        ensure!(s.contains_matrix(&c.m("h3")?) && s.contains_matrix(&c.m("h3^2")?), "H3 not in the 3-Sylow");
        Ok("x ∉ S3 implies x^2 ∈ S3; H3, H3^2 ∈ S3".into())
    }));
    v.push(item("lemma3", |c| {
        let g = c.d9()?;
        let s = g.sylow(3)?.remove(0);
        let odd = (0..g.order()).filter(|&x| g.element_order(x) % 2 == 1).all(|x| s.contains(x));
        ensure!(odd, "an odd-order element lies outside S3(D)");
        let f = c.script_f(c.d18()?)?;
        ensure!(f.order() == 27 && mats(&f).iter().all(|m| g.contains(m)), "script F is not inside D(9,1,1;2,1,1)");
        Ok("S3(D) contains every odd-order element of D(9,1,1;2,1,1), including script F".into())
    }));
    v.push(item("thm4", |c| {
        let g = c.d9()?;
        let syl = g.sylow(3)?;
        ensure!(syl.len() == 1 && syl[0].order() == 81, "{} 3-Sylows", syl.len());
        let f = mats(&c.script_f(c.d18()?)?);
        let cosets = [product(&f, &[c.m("1")?]), product(&f, &[c.m("e")?]), product(&f, &[c.m("e^2")?])];
        ensure!(cosets.iter().map(BTreeSet::len).sum::<usize>() == 81, "cosets are not disjoint");
        let union: BTreeSet<Mat3> = cosets.into_iter().flatten().collect();
        let s: BTreeSet<Mat3> = mats(&syl[0]).into_iter().collect();
        ensure!(union == s, "S3(D) is not F ⊔ F E ⊔ F E^2");
        let c911 = c.gen(&c.cat.c_group(9, 1, 1)?.generators)?;
        ensure!(c911.elements().iter().cloned().collect::<BTreeSet<_>>() == s, "S3(D) differs from C(9,1,1)");
        Ok("unique 3-Sylow of D(9,1,1;2,1,1) = F ⊔ F E ⊔ F E^2 = C(9,1,1)".into())
    }));
    v.push(item("thm5", |c| {
        let (nf, nd) = (c.fr648()?.sylow(3)?.len(), c.d18()?.sylow(3)?.len());
        ensure!(nf == 4 && nd == 4, "{nf} and {nd} 3-Sylows");
        let s3d = c.d9()?.sylow(3)?.remove(0);
        let x = c.m("fp e")?;
        ensure!(x.element_order(100)? == 3 && !s3d.contains_matrix(&x), "F' E does not witness a second Sylow");
        let s3f = c.fr162()?.sylow(3)?.remove(0);
        let y = c.m("fum h3")?;
        ensure!(y.element_order(100)? == 3 && !s3f.contains_matrix(&y), "FUM H3 does not witness a second Sylow");
        ensure!(!y.is_cross() && !c.m("fum h3^-1")?.is_cross(), "FUM H3^±1 is a cross matrix");
        Ok("Fr(162x4) and D(18,1,1;2,1,1) each have four 3-Sylows".into())
    }));
    v.push(item("lemma4", |c| {
        let collect = |g: &MatrixGroup| -> Result<BTreeSet<Mat3>, Fail> {
            let s = g.sylow(3)?.remove(0);
            let z = s.center();
            Ok(z.elements_of_order(3).into_iter().map(|i| g.element(i).clone()).collect())
        };
        let zf = collect(c.fr162()?)?;
        ensure!(zf == c.ms(&["a^3", "a^6"])?.into_iter().collect(), "order-3 centre of S3(F) is {zf:?}");
        let zd = collect(c.d9()?)?;
        ensure!(zd == c.ms(&["f^6", "f^12"])?.into_iter().collect(), "order-3 centre of S3(D) is {zd:?}");
        let w = zeta(24);
        ensure!(c.m("f^6")? == Mat3::diag(w.clone(), w.clone(), w), "F^6 is not ω I");
        Ok("order-3 centre elements: {A^3, A^6} and {F^6, F^12}; F^6 = ω I".into())
    }));
    v.push(item("thm2", |c| {
        let src = c.group("thm6src")?;
        ensure!(src == c.fr162()?, "<A,B,H1,H3> differs from Fr(162)");
        ensure!(c.d9()?.order() == 162, "|D(9,1,1;2,1,1)| = {}", c.d9()?.order());
        let images = c.ms(&["f^2", "f^12 (f fpp^-1)^2", "bt e", "e"])?;
        ensure!(src.verify_isomorphism(c.d9()?, &images)?, "no isomorphism");
        Ok("Fr(162) ≅ D(9,1,1;2,1,1)".into())
    }));
    v.push(item("thm6", |c| {
        let src = c.group("thm6src")?;
        let images = c.ms(&["f^2", "f^12 (f fpp^-1)^2", "bt e", "e"])?;
        ensure!(src.verify_isomorphism(c.d9()?, &images)?, "map is not an isomorphism");
        let bad = c.ms(&["f^4", "f^12 (f fpp^-1)^2", "bt e", "e"])?;
        ensure!(!src.verify_isomorphism(c.d9()?, &bad)?, "A -> F^4 also passes");
        Ok(format!(
            "A->F^2, B->F^12[F F''^-1]^2, H1->Bt E, H3->E passes {} pair checks; A->F^4 fails",
            src.order().pow(2)
        ))
    }));
    v.push(eq("eq34", "h1 a h1^-1", "a"));
    v.push(eq("eq35", "h1 b h1^-1", "a^6 b^2"));
    v.push(eq("eq36", "h3 a h3^-1", "a b"));
    v.push(eq("eq37", "h3 b h3^-1", "a^6 b"));
    v.push(eq("eq38", "bt e f^2 e^-1 bt", "f^2"));
    v.push(eq("eq39", "e f^2 e^-1", "f^2 f^12 (f fpp^-1)^2"));
    v.push(eq("eq40", "f^12 (f fpp^-1)^2", "f^-2 e f^2 e^-1"));
    v.push(item("eq41", |c| {
        c.ident("f^-2 e f^2 e^-1", "f^12 (f fpp^-1)^2")?;
        ensure!(
            c.m("f^-2 e f^2 e^-1")? == Mat3::diag(CycloNum::one(72), -zeta(12), zeta(24)),
            "not diag(1, -e^{{iπ/3}}, e^{{2iπ/3}})"
        );
        Ok("F^-2 E F^2 E^-1 = diag(1, -e^{iπ/3}, e^{2iπ/3}) = F^12 [F F''^-1]^2".into())
    }));
    v.push(eq("eq42", "bt e f^-2 e f^2 e^-1 e^-1 bt", "f^12 f^-2 e f^2 e^-1 f^-2 e f^2 e^-1"));
    v.push(eq("eq43", "e f^-2 e f^2 e^-1 e^-1", "f^12 f^-2 e f^2 e^-1"));
    v.push(item("lemma5", |c| {
        c.ident("h4 fum h3 fum^-1", "anti_p")?;
        c.ident("fum h3 fum^-1 h4", "diag_m")?;
        c.ident("anti_p diag_m", "anti_m")?;
        let g = c.fr648()?;
        let s3f = g.subgroup(&c.ms(&["a", "b", "h3"])?)?;
        let mut conj: Vec<Subgroup> = Vec::new();
        for t in c.cat.klein_v() {
            conj.push(s3f.conjugate_by(idx(g, &t)?));
        }
        let distinct: BTreeSet<Vec<usize>> = conj.iter().map(|s| s.members().to_vec()).collect();
        ensure!(distinct.len() == 4, "only {} distinct V-conjugates", distinct.len());
        let syl = g.sylow(3)?;
        ensure!(syl.iter().all(|s| conj.contains(s)), "Sylows differ from the V-conjugates");
        Ok("the four 3-Sylows are S3(F) and V2, V3, V4 conjugates".into())
    }));
    v.push(item("cor3", |c| {
        let g = c.fr648()?;
        let span = sylow_span(g)?;
        let s3f = g.subgroup(&c.ms(&["a", "b", "h3"])?)?;
        let v4 = c.klein_v(g)?;
        let vs = g.subgroup(&[c.ms(&["a", "b", "h3"])?, c.cat.klein_v().to_vec()].concat())?;
        ensure!(span == vs, "3SylF differs from <V, S3(F)>");
        ensure!(
            span.order() == 324 && span.is_normal() && g.order() / span.order() == 2,
            "3SylF has order {}",
            span.order()
        );
        ensure!(v4.intersection(&s3f).order() == 1 && v4.order() * s3f.order() == span.order(), "not V ⋊ S3(F)");
        let nv = g.subgroup(&c.ms(&["a", "b", "v2", "v3"])?)?;
        ensure!(nv.is_normal_in(&span) && span.order() / nv.order() == 3, "N.V is not of index 3 in 3SylF");
        Ok("3SylF = <V, S3(F)> ≅ V ⋊ S3(F), order 324, index 2; N.V ⊲ 3SylF ⊲ Fr(162x4) with prime indices".into())
    }));
    v.push(item("eq48", |c| {
        let n = sylow_span(c.fr648()?)?.order();
        ensure!(n == 4 * 81, "|3SylF| = {n}");
        Ok("|3SylF| = 4.3^4 = 324".into())
    }));
    v.push(item("lemma6", |c| {
        let g = c.d18()?;
        let s3d = g.subgroup_of_set(&mats(&c.d9()?.sylow(3)?.remove(0)))?;
        let mut conj = Vec::new();
        for w in ["1", "f", "e f", "e^2 f"] {
            conj.push(s3d.conjugate_by(idx(g, &c.m(w)?)?));
        }
        let distinct: BTreeSet<Vec<usize>> = conj.iter().map(|s| s.members().to_vec()).collect();
        ensure!(distinct.len() == 4, "{} distinct conjugates", distinct.len());
        ensure!(g.sylow(3)?.iter().all(|s| conj.contains(s)), "Sylows differ from the listed conjugates");
        ensure!(!c.m("f e f^-1")?.is_diagonal(), "F E F^-1 is diagonal");
        let x = c.m("f e f^-1 e^-1")?;
        ensure!(x.is_diagonal() && x.element_order(100)? == 6, "F E F^-1 E^-1 is not diagonal of order 6");
        Ok("3-Sylows of D(18,1,1;2,1,1): S3(D) conjugated by I, F, E F, E^2 F".into())
    }));
    v.push(item("lemma7.klein", |c| {
        let cubes: BTreeSet<Mat3> = c.ms(&["(f e f^-1 e^2)^3", "(e^2 f e f^-1)^3"])?.into_iter().collect();
        ensure!(cubes == c.ms(&["w2", "w3"])?.into_iter().collect(), "cubes are not W2 and W3");
        c.ident("(f e f^-1 e^2)^3 (e^2 f e f^-1)^3", "w4")?;
        let g = c.d18()?;
        let vd = c.klein_vd(g)?;
        ensure!(vd.is_normal() && vd.is_subgroup_of(&sylow_span(g)?), "V_D is not a normal subgroup of 3SylD");
        Ok("{(F E F^-1 E^2)^3, (E^2 F E F^-1)^3} = {W2, W3} with product W4; V_D ⊲ D(18,1,1;2,1,1) inside 3SylD".into())
    }));
    v.push(item("lemma7.cube_labels", |c| {
        // the stated pairing: first cube W2, second cube W3
        c.ident("(f e f^-1 e^2)^3", "w2")?;
        c.ident("(e^2 f e f^-1)^3", "w3")?;
        Ok("(F E F^-1 E^2)^3 = W2, (E^2 F E F^-1)^3 = W3".into())
    }));
    v.push(item("lemma8", |c| {
        let g = c.d18()?;
        let s3d = g.subgroup_of_set(&mats(&c.d9()?.sylow(3)?.remove(0)))?;
        let mut conj = Vec::new();
        for w in c.cat.klein_vd() {
            conj.push(s3d.conjugate_by(idx(g, &w)?));
        }
        ensure!(g.sylow(3)?.iter().all(|s| conj.contains(s)), "Sylows differ from the W-conjugates");
        Ok("3-Sylows of D(18,1,1;2,1,1): S3(D) and its W_i-conjugates".into())
    }));
    v.push(item("cor4", |c| {
        let g = c.d18()?;
        let span = sylow_span(g)?;
        let s3d = g.subgroup_of_set(&mats(&c.d9()?.sylow(3)?.remove(0)))?;
        let vd = c.klein_vd(g)?;
        let joined = g.subgroup(&[mats(&s3d), c.cat.klein_vd().to_vec()].concat())?;
        ensure!(span == joined && span.order() == 324, "3SylD differs from <V_D, S3(D)>");
        ensure!(vd.intersection(&s3d).order() == 1, "V_D meets S3(D)");
        let n = g.subgroup(&c.ms(&["f", "fp", "fpp"])?)?;
        let vf = g.subgroup(&[c.cat.klein_vd().to_vec(), mats(&c.script_f(g)?)].concat())?;
        ensure!(n == vf && vf.is_normal_in(&span) && span.is_normal(), "N(18,1,1;2,1,1) is not V_D.F");
        Ok("3SylD = <V_D, S3(D)>, N(18,1,1;2,1,1) = V_D x F ⊲ 3SylD ⊲ D(18,1,1;2,1,1)".into())
    }));
    v.push(item("thm7", |c| {
        let src = c.group("thm1src")?;
        ensure!(src == c.fr648()?, "<C18,C6,H1,H3> differs from Fr(162x4)");
        let images = c.ms(&["g18", "g6", "bt e", "e^2"])?;
        ensure!(src.verify_isomorphism(c.d18()?, &images)?, "no isomorphism");
        Ok("Fr(162x4) ≅ D(18,1,1;2,1,1)".into())
    }));
    v.push(item("eq49", |c| schema_involution(c, 1)));
    v.push(item("eq50", |c| schema_involution(c, 2)));
    v.push(item("eq51", |c| schema_conjugation(c, true)));
    v.push(item("eq52", |c| schema_conjugation(c, false)));
    v.push(eq("eq53", "g6", "e^2 g18 e^-2 g18^8"));
    v.push(eq("eq54", "e^2 g6 e^-2", "g6 g18^-3"));
    v.push(eq("eq55", "g6", "e^2 g6 e^-2 g18^3"));
    v.push(eq("eq56", "g6", "e g18 e^-2 g18^8 e^-2 g18^3"));
    v.push(item("thm8", |c| {
        let src = c.group("thm1src")?;
        let dst = c.d18()?;
        ensure!(c.m("g18")? == Mat3::diag(zeta(-28), zeta(8), zeta(20)), "g(C18) is not the stated diagonal matrix");
        ensure!(
            c.m("g6")? == Mat3::diag(zeta(12), CycloNum::from_int(72, -1), zeta(24)),
            "g(C6) is not the stated diagonal matrix"
        );
        c.ident("g6", "e g18 e^-2 g18^8 e^-2 g18^3")?;
        let images = c.ms(&["g18", "g6", "bt e", "e^2"])?;
        ensure!(src.verify_isomorphism(dst, &images)?, "map is not an isomorphism");
        Ok(format!("C18, C6, H1, H3 -> g18, g6, Bt E, E^2 passes {} pair checks", src.order().pow(2)))
    }));
}

/// (W Δ E^k)² = (W Δ)(E^k W Δ E^k) for all W ∈ V_D, Δ ∈ 𝓕, and the only
/// involutions of 3SylD are the W_i.
fn schema_involution(c: &Context, k: i64) -> Check {
    let g = c.d18()?;
    let e = c.m("e")?.pow(k)?;
    let f = mats(&c.script_f(g)?);
    for w in c.cat.klein_vd() {
        for d in &f {
            let wd = &w * d;
            let lhs = &(&wd * &e) * &(&wd * &e);
            let rhs = &wd * &(&(&e * &wd) * &e);
            ensure!(lhs == rhs, "identity fails");
            ensure!(!lhs.is_identity(), "W Δ E^{k} is an involution");
        }
    }
    let span = sylow_span(g)?;
    let inv: BTreeSet<Mat3> = span.elements_of_order(2).into_iter().map(|i| g.element(i).clone()).collect();
    ensure!(inv == c.cat.klein_vd()[1..].iter().cloned().collect(), "3SylD has other involutions");
    Ok(format!("holds for all 4*27 choices with E^{k}; involutions of 3SylD are W2, W3, W4"))
}

/// g(H₃) g(C₁₈) g(H₃)⁻¹ = E^k g(C₁₈) E^{-k} for g(H₃) = W Δ E^k W⁻¹.
fn schema_conjugation(c: &Context, expanded: bool) -> Check {
    let g = c.d18()?;
    let g18 = c.m("g18")?;
    ensure!(g18.is_diagonal(), "g(C18) is not diagonal");
    let f = mats(&c.script_f(g)?);
    for k in 1..=2 {
        let ek = c.m("e")?.pow(k)?;
        let target = &(&ek * &g18) * &ek.dagger();
        ensure!(target.is_diagonal(), "E^k conjugate of a diagonal matrix is not diagonal");
        for w in c.cat.klein_vd() {
            for d in &f {
                let h = &(&(&w * d) * &ek) * &w.dagger();
                let lhs = &(&h * &g18) * &h.dagger();
                if expanded {
                    let rhs = &(&(&(&(&(&(&w * d) * &ek) * &w.dagger()) * &g18) * &w) * &ek.dagger())
                        * &(&d.dagger() * &w.dagger());
                    ensure!(lhs == rhs, "expansion fails");
                } else {
                    ensure!(lhs == target, "conjugate differs from E^{k} g(C18) E^-{k}");
                }
            }
        }
    }
    Ok("holds for k in {1,2}, all W_i and all Δ in F".into())
}

fn epilogue_items(v: &mut Vec<Item>) {
    v.push(item("sec4.order_arithmetic", |_| {
        let is_square = |n: u64| (1..=n).any(|k| k * k == n);
        let order = aut_count_abelian(18, 6);
        ensure!(order / 108 == 6 && order / 216 == 3 && order % 216 == 0, "factorizations of {order}");
        ensure!(!is_square(order / 6) && !is_square(order / 3), "108 or 216 is a square");
        Ok("648 = 6*108 = 3*216 with neither 108 nor 216 a square".into())
    }));
    v.push(item("sec4.sigma", |c| {
        let s = c.sigma()?;
        ensure!(s.order() == 648, "|Σ(216x3)| = {}", s.order());
        let d = c.cat.sigma_d();
        let n = d.element_order(100)?;
        ensure!(n == 9, "D has order {n}");
        Ok("Σ(216x3) = <D, V> has order 648; D has order 9".into())
    }));
    v.push(item("sec4.series", |c| {
        let g = c.fr648()?;
        let chain = [
            g.subgroup(&[c.m("1")?])?,
            g.subgroup(&c.ms(&["a^3"])?)?,
            g.subgroup(&c.ms(&["a"])?)?,
            c.script_n(g)?,
            g.subgroup(&c.ms(&["a", "b", "v2"])?)?,
            g.subgroup(&c.ms(&["a", "b", "v2", "v3"])?)?,
            sylow_span(g)?,
            g.whole(),
        ];
        let mut idxs = Vec::new();
        for w in chain.windows(2) {
            ensure!(w[0].is_normal_in(&w[1]), "chain is not subnormal");
            idxs.push(w[1].order() / w[0].order());
        }
        ensure!(idxs == [3, 3, 3, 2, 2, 3, 2], "indices {idxs:?}");
        Ok("{e} ⊲ <A^3> ⊲ <A> ⊲ N ⊲ N.<(FUM)^3> ⊲ N.V ⊲ 3SylF ⊲ Fr(162x4) with indices 3,3,3,2,2,3,2".into())
    }));
    v.push(item("lemma9", |c| {
        let t = c.sigma()?.two_sylow_type()?;
        ensure!(t == TwoSylowType::Q8, "2-Sylow of Σ(216x3) is {t}");
        let f = c.fr648()?.two_sylow_type()?;
        ensure!(f != TwoSylowType::Q8, "2-Sylow of Fr(162x4) is Q8");
        Ok(format!("Σ(216x3) has 2-Sylow Q8; Fr(162x4) has {f}"))
    }));
    v.push(item("lemma10", |c| {
        let g = c.fr648()?;
        let s = g.subgroup(&[c.cat.klein_v().to_vec(), c.ms(&["h1"])?].concat())?;
        ensure!(s.order() == 8, "V ⋊ <H1> has order {}", s.order());
        let h1 = g.subgroup(&c.ms(&["h1"])?)?;
        ensure!(!h1.is_normal_in(&s), "<H1> is normal in V ⋊ <H1>");
        ensure!(!h1.contains_matrix(&c.m("v2 h1 v2^-1")?), "V2 H1 V2^-1 ∈ <H1>");
        let t = crate::engine::TwoSylowType::from_spectrum(&s.spectrum());
        ensure!(t == Some(TwoSylowType::D4), "type {t:?}");
        ensure!(g.two_sylow_type()? == TwoSylowType::D4, "2-Sylow type differs");
        Ok("V ⋊ <H1> is a 2-Sylow of type D4 with non-normal <H1>".into())
    }));
    v.push(item("thm9", |c| {
        let (f, s) = (c.fr648()?.spectrum(), c.sigma()?.spectrum());
        ensure!(f != s, "spectra agree");
        let (tf, ts) = (c.fr648()?.two_sylow_type()?, c.sigma()?.two_sylow_type()?);
        ensure!(tf == TwoSylowType::D4 && ts == TwoSylowType::Q8, "2-Sylow types {tf} and {ts}");
        Ok(format!("2-Sylows D4 vs Q8; spectra {} vs {}", spectrum_string(&f), spectrum_string(&s)))
    }));
    v.push(item("lemma11.spectrum", |c| {
        let s = c.fr648()?.spectrum();
        let bad: Vec<u64> = [24, 27, 54, 72, 108].into_iter().filter(|k| s.contains_key(k)).collect();
        ensure!(bad.is_empty(), "orders {bad:?} occur");
        Ok(format!("spectrum {}", spectrum_string(&s)))
    }));
    v.push(item("lemma11.products", |c| {
        let g = c.fr648()?;
        let nv = mats(&g.subgroup(&c.ms(&["a", "b", "v2", "v3"])?)?);
        for h in ["h3", "h4"] {
            let hm = c.m(h)?;
            ensure!(nv.iter().all(|n| (n * &hm).element_order(100).ok() == Some(3)), "some N {h} is not of order 3");
        }
        for h in ["h0", "h1", "h2"] {
            let hm = c.m(h)?;
            for n in &nv {
                let k = (n * &hm).element_order(100)?;
                ensure!(k != 24 && k != 72, "an element of order {k}");
            }
        }
        Ok("every N H3, N H4 has order 3; no N H0, N H1, N H2 has order 24 or 72".into())
    }));
    v.push(item("thm10.i", |c| {
        let keys: Vec<u64> = c.fr648()?.spectrum().keys().copied().collect();
        ensure!(keys == [1, 2, 3, 4, 6, 9, 12, 18, 36], "element orders {keys:?}");
        Ok("element orders {1,2,3,4,6,9,12,18,36}".into())
    }));
    v.push(item("thm10.ii", |c| {
        let names = ["d18-1-1-2-1-1", "d18-1-1-2-0-1", "d18-1-1-2-0-0", "d9-1-1-2-0-1", "d9-1-1-2-0-0"];
        let groups: Vec<MatrixGroup> =
            names.iter().map(|n| c.gen(&c.cat.by_name(n)?.generators)).collect::<Result<_, _>>()?;
        ensure!(groups.iter().all(|g| g == &groups[0]), "the five D-groups differ");
        let iso = c.group("thm1src")?.verify_isomorphism(&groups[0], &c.ms(&["g18", "g6", "bt e", "e^2"])?)?;
        ensure!(iso, "Fr(162x4) is not isomorphic to them");
        Ok("D(18,1,1;2,1,1) = D(18,1,1;2,0,1) = D(18,1,1;2,0,0) = D(9,1,1;2,0,1) = D(9,1,1;2,0,0) ≅ Fr(162x4)".into())
    }));
    v.push(item("thm10.identities", |c| {
        c.ident("gt200", "gt201^-1")?;
        c.ident("bt w4", "gt201")?;
        c.ident("f^9", "w4")?;
        c.ident("(gt201 e)^2", "w4")?;
        c.ident("e w4 e^-1", "w2")?;
        Ok("G~(2,0,0) = G~(2,0,1)^-1, Bt W4 = G~(2,0,1), F^9 = W4, (G~(2,0,1) E)^2 = W4".into())
    }));
    v.push(item("fact2", |c| {
        let small = c.d9()?;
        let mid = c.gen(&c.cat.by_name("d9-1-1-2-0-1")?.generators)?;
        ensure!(small.is_subset_of(&mid) && mid.order() > small.order(), "D(9,1,1;2,1,1) is not a proper subgroup");
        ensure!(!small.contains(&c.m("w4")?) && mid.contains(&c.m("w4")?), "W4 membership");
        ensure!(mid == *c.d18()?, "D(9,1,1;2,0,1) differs from D(18,1,1;2,1,1)");
        Ok(format!("D(9,1,1;2,1,1) ⊂ D(9,1,1;2,0,1) = D(18,1,1;2,1,1) strictly, index {}", mid.order() / small.order()))
    }));
    v.push(item("remark.aut", |_| {
        let n = aut_count_abelian(18, 6);
        ensure!(n == 648, "|Aut(Z18 x Z6)| = {n}");
        Ok("|Aut(Z6 x Z18)| = 648".into())
    }));
    v.push(item("prop1", |c| {
        for (k, a, b) in [(9, 1, 1), (9, 10, 1)] {
            let (ab, bb) = (a % k, b % k);
            let small = c.gen(&c.cat.c_group(k, ab, bb)?.generators)?;
            let big = c.gen(&c.cat.c_group(2 * k, a, b)?.generators)?;
            ensure!(small.is_subset_of(&big), "C({k},{ab},{bb}) ⊄ C({},{a},{b})", 2 * k);
        }
        let small = c.gen(&c.cat.c_group(3, 1, 1)?.generators)?;
        let big = c.gen(&c.cat.c_group(9, 4, 7)?.generators)?;
        ensure!(small.is_subset_of(&big), "C(3,1,1) ⊄ C(9,4,7)");
        Ok("C(9,1,1) ⊆ C(18,1,1), C(9,1,1) ⊆ C(18,10,1), C(3,1,1) ⊆ C(9,4,7)".into())
    }));
    v.push(item("prop2", |c| {
        let gs: Vec<MatrixGroup> = [(2, 0, 1), (2, 1, 0), (2, 1, 1)]
            .iter()
            .map(|&(n, a, b)| c.gen(&c.cat.c_group(n, a, b)?.generators))
            .collect::<Result<_, _>>()?;
        ensure!(gs[0] == gs[1] && gs[0] == gs[2], "the three C(2,.,.) differ");
        ensure!(c.cat.klein_vd().iter().all(|w| gs[0].contains(w)), "no diagonal Klein group");
        Ok("C(2,0,1) = C(2,1,0) = C(2,1,1) ⊇ V_D".into())
    }));
    v.push(item("fact1", |c| {
        for (n, s) in [(9, 1), (9, 2)] {
            let g = c.gen(&c.cat.c_group(n, 3, s)?.generators)?;
            ensure!(g.order() == 243 && 648 % 243 != 0, "|C({n},3,{s})| = {}", g.order());
        }
        let g = c.gen(&c.cat.c_group(18, 3, 1)?.generators)?;
        ensure!(g.order() % 243 == 0, "|C(18,3,1)| = {}", g.order());
        Ok("|C(9,3,1)| = |C(9,3,2)| = 243 = 3^5, which does not divide 648".into())
    }));
    v.push(item("lemma12", |c| {
        let rows: [CdRow; 4] = [((4, 2, 1), (4, 1)), ((4, 2, 3), (4, 3)), ((2, 0, 0), (2, 1)), ((4, 0, 0), (4, 2))];
        cd_rows(c, &rows)
    }));
    v.push(item("lemma13", |c| {
        let rows: [CdRow; 6] = [
            ((3, 1, 1), (3, 1)),
            ((3, 0, 0), (3, 0)),
            ((3, 2, 2), (3, 2)),
            ((9, 7, 1), (9, 4)),
            ((9, 4, 7), (9, 1)),
            ((9, 6, 6), (9, 6)),
        ];
        cd_rows(c, &rows)
    }));
    v.push(item("thm11", |c| {
        let g = c.fr648()?;
        let inv: Vec<usize> = (0..g.order()).filter(|&x| g.element_order(x) == 2).collect();
        let commuting = inv.iter().all(|&x| inv.iter().all(|&y| g.mul(x, y) == g.mul(y, x)));
        ensure!(!commuting, "all involutions commute");
        Ok(format!("{} involutions, not all commuting, unlike any C-group", inv.len()))
    }));
}

/// A C-group (n, a, b) and the (d, r) of the D-group expected to contain it.
type CdRow = ((i64, i64, i64), (i64, i64));

fn cd_rows(c: &Context, rows: &[CdRow]) -> Check {
    let mut done = Vec::new();
    for &((cd, ca, cb), (d, r)) in rows {
        let p = SeriesParams { n: 9, a: 1, b: 1, d, r, s: 1 };
        ensure!(cd_inclusion_check(&c.cat, (cd, ca, cb), p, c.cap)?, "C({cd},{ca},{cb}) ⊄ D(9,1,1;{d},{r},1)");
        done.push(format!("C({cd},{ca},{cb}) ⊂ D(9,1,1;{d},{r},1)"));
    }
    Ok(done.join(", "))
}

/// j̄ swaps 1 and 2 and fixes 0.
fn jbar(j: i64) -> i64 {
    (3 - j) % 3
}

/// Order spectrum of Z9 x S3 from the orders of the factors.
fn z9_s3_spectrum() -> BTreeMap<u64, usize> {
    let s3 = [1u64, 2, 2, 2, 3, 3];
    let mut out = BTreeMap::new();
    for z in 0..9u64 {
        let oz = 9 / num_integer::gcd(z, 9);
        for os in s3 {
            *out.entry(num_integer::lcm(oz, os)).or_insert(0) += 1;
        }
    }
    out
}

fn subgroup54_items(v: &mut Vec<Item>) {
    v.push(item("thm13", |c| {
        let s = c.group("s54")?;
        ensure!(s.order() == 54 && s.is_subset_of(c.fr648()?), "|S| = {}", s.order());
        let spec = s.spectrum();
        ensure!(spec == z9_s3_spectrum(), "spectrum {}", spectrum_string(&spec));
        Ok(format!("S = <A,B,H2> of order 54 with spectrum {} (that of Z9 x S3)", spectrum_string(&spec)))
    }));
    v.push(item("lemma14", |c| {
        let s = c.group("s54")?;
        let inv: BTreeSet<Mat3> =
            s.elements().iter().filter(|m| m.element_order(100).ok() == Some(2)).cloned().collect();
        ensure!(inv == c.ms(&["h2", "b h2", "b^2 h2"])?.into_iter().collect(), "involutions are {inv:?}");
        Ok("involutions of S: H2, B H2, B^2 H2".into())
    }));
    v.push(item("lemma15", |c| {
        let s = c.group("s54")?;
        let h2 = c.m("h2")?;
        let fixed: BTreeSet<Mat3> = s
            .elements()
            .iter()
            .filter(|m| m.element_order(100).ok() == Some(9) && &(&h2 * *m) * &h2 == **m)
            .cloned()
            .collect();
        let want = c.ms(&["a b^2", "a^2 b", "a^4 b^2", "a^5 b", "a^7 b^2", "a^8 b"])?;
        ensure!(fixed == want.iter().cloned().collect(), "{} fixed elements", fixed.len());
        let centre = s.center();
        let z9: BTreeSet<Mat3> = centre.elements_of_order(9).into_iter().map(|i| s.element(i).clone()).collect();
        ensure!(z9 == fixed, "order-9 central elements differ");
        for (i, j) in [(1, 2), (2, 1), (4, 2), (5, 1), (7, 2), (8, 1)] {
            ensure!((i + jbar(j)) % 3 == j, "congruence fails at ({i},{j})");
        }
        Ok("H2-fixed order-9 elements = order-9 centre = {AB^2, A^2B, A^4B^2, A^5B, A^7B^2, A^8B}".into())
    }));
    v.push(item("prop6", |c| {
        let s = c.group("s54")?;
        let x = idx(s, &c.m("a b^2")?)?;
        ensure!((0..s.order()).all(|y| s.mul(x, y) == s.mul(y, x)), "AB^2 is not central");
        let z = s.closure(&[x]);
        let bh = s.subgroup(&c.ms(&["b", "h2"])?)?;
        ensure!(z.order() == 9 && bh.order() == 6 && z.intersection(&bh).order() == 1, "not a direct product");
        ensure!(z.product_set(&bh).into_iter().collect::<BTreeSet<_>>().len() == 54, "<AB^2><B,H2> is not S");
        Ok("S = <AB^2> x (<B> ⋊ <H2>) ≅ Z9 x S3".into())
    }));
    v.push(item("eq57", |c| {
        let mut sols = Vec::new();
        for i in 0..9 {
            for j in 0..3 {
                if c.m(&format!("h2 a^{i} b^{j} h2"))? == c.m(&format!("a^-{i} b^-{j}"))? {
                    sols.push((i, j));
                }
            }
        }
        ensure!(sols == [(0, 0), (0, 1), (0, 2)], "solutions {sols:?}");
        Ok("H2 A^i B^j H2 = A^-i B^-j exactly when i = 0".into())
    }));
    v.push(eq("eq58", "h2 a h2^-1", "a b"));
    v.push(eq("eq59", "h2 b h2^-1", "b^2"));
    v.push(item("eq60", |c| {
        for i in 0..9 {
            for j in 0..3 {
                c.ident(&format!("h2 a^{i} b^{j} h2"), &format!("a^{i} b^{}", i + jbar(j)))?;
            }
        }
        Ok("H2 A^i B^j H2 = A^i B^(i + j̄) for all 27 (i, j)".into())
    }));
    v.push(item("eq61", |c| {
        let a: BTreeSet<Mat3> = (0..9).map(|i| c.m(&format!("a^{i}"))).collect::<Result<_, _>>()?;
        let b: BTreeSet<Mat3> = (0..3).map(|j| c.m(&format!("b^{j}"))).collect::<Result<_, _>>()?;
        let common: Vec<_> = a.intersection(&b).collect();
        ensure!(common.len() == 1 && common[0].is_identity(), "<A> ∩ <B> has {} elements", common.len());
        Ok("<A> ∩ <B> = {I}".into())
    }));
    v.push(item("eq62", |c| {
        for i in [0, 3, 6] {
            for j in 0..3 {
                c.ident(&format!("h2 a^{i} b^{j} h2"), &format!("a^{i} b^{}", jbar(j)))?;
            }
        }
        Ok("H2 A^i B^j H2 = A^i B^j̄ for i in {0,3,6}".into())
    }));
}

fn conjugacy_items(v: &mut Vec<Item>) {
    v.push(item("thm14.orthogonal", |c| {
        let o = c.m("o")?;
        ensure!((&o * &o.transpose()).is_identity() && o.det().is_one(), "O is not special orthogonal");
        Ok("O O^T = I, det O = 1".into())
    }));
    v.push(item("thm14.ii", |c| {
        let conj = c.fr648()?.conjugate_group(&c.m("o")?, c.cap)?;
        ensure!(conj == *c.d18()?, "O Fr(162x4) O^T differs from D(18,1,1;2,1,1)");
        Ok("O Fr(162x4) O^T = D(18,1,1;2,1,1)".into())
    }));
    v.push(item("thm14.iii", |c| {
        let conj = c.fr162()?.conjugate_group(&c.m("o")?, c.cap)?;
        let d9 = c.d9()?;
        let shared = conj.elements().iter().filter(|m| d9.contains(m)).count();
        ensure!(conj == *d9, "O Fr(162) O^T differs from D(9,1,1;2,1,1): {shared} of 162 elements shared");
        Ok("O Fr(162) O^T = D(9,1,1;2,1,1)".into())
    }));
    v.push(item("thm14.transpose", |c| {
        let ot = c.m("o")?.transpose();
        ensure!(c.fr162()?.conjugate_group(&ot, c.cap)? == *c.d9()?, "O^T Fr(162) O differs from D(9,1,1;2,1,1)");
        ensure!(c.fr648()?.conjugate_group(&ot, c.cap)? == *c.d18()?, "O^T Fr(162x4) O differs from D(18,1,1;2,1,1)");
        c.ident("o^-1 h3 o", "e")?;
        c.ident("o^-1 h1 o", "bt e")?;
        Ok("O^T Fr(162) O = D(9,1,1;2,1,1), O^T Fr(162x4) O = D(18,1,1;2,1,1), O^T H3 O = E, O^T H1 O = Bt E".into())
    }));
    v.push(item("eq71", |c| {
        let ot = c.m("o")?.transpose();
        let o = c.m("o")?;
        let n: BTreeSet<Mat3> = c.gen(&c.ms(&["a", "b"])?)?.elements().iter().map(|x| &(&ot * x) * &o).collect();
        let f: BTreeSet<Mat3> = mats(&c.script_f(c.d18()?)?).into_iter().collect();
        ensure!(n == f, "P N P^-1 differs from F");
        Ok("P N P^-1 = F with P = O^T".into())
    }));
    v.push(item("eq72", |c| {
        let ot = c.m("o")?.transpose();
        let o = c.m("o")?;
        let vv: BTreeSet<Mat3> = c.cat.klein_v().iter().map(|x| &(&ot * x) * &o).collect();
        ensure!(vv == c.cat.klein_vd().into_iter().collect(), "P V P^-1 differs from V_D");
        Ok("P V P^-1 = V_D with P = O^T".into())
    }));
    v.push(item("eq73", |c| {
        let ot = c.m("o")?.transpose();
        let o = c.m("o")?;
        let h: BTreeSet<Mat3> = c.gen(&c.ms(&["h1", "h3"])?)?.elements().iter().map(|x| &(&ot * x) * &o).collect();
        let s: BTreeSet<Mat3> = c.gen(&c.ms(&["e", "bt"])?)?.elements().iter().cloned().collect();
        ensure!(h == s, "P H P^-1 differs from <E, Bt>");
        Ok("P H P^-1 = <E, Bt> with P = O^T".into())
    }));
}

fn fusion_items(v: &mut Vec<Item>) {
    v.push(item("appendix.coefficients", |_| {
        let terms = fusion::fusion_terms()?;
        for t in &terms {
            ensure!(t.coefficient.is_one(), "coefficient for k = {} is {}", t.k, t.coefficient);
        }
        for (name, r) in fusion::derivation_roots()? {
            let (re, im) = r.approx();
            ensure!(re > fusion::SIGN_TOL && im.abs() < fusion::SIGN_TOL, "{name} ≈ {re}{im:+}i is not positive");
        }
        Ok("coefficients for |0>->|4>, |2>->|2>, |4>->|0> all equal 1; all roots positive".into())
    }));
    v.push(item("appendix.fusion_matrix", |c| {
        let m = fusion::derive_fusion_matrix()?;
        let one = CycloNum::one(72);
        ensure!(m == Mat3::antidiag(one.clone(), one.clone(), one), "derived matrix {m}");
        let n = fusion::su3_normalize(&m)?;
        ensure!(n == c.m("fum")?, "normalization {n} differs from FUM");
        Ok("derived antidiag(1,1,1); -ω times it is FUM".into())
    }));
    v.push(item("appendix.unitarity", |_| {
        let moves = fusion::all_f_moves()?;
        let bad: Vec<_> = moves.iter().filter(|m| !m.is_unitary()).map(|m| m.externals).collect();
        ensure!(bad.is_empty(), "non-unitary F-moves {bad:?}");
        Ok(format!("{} level-4 F-moves exactly unitary", moves.len()))
    }));
}

/// Outcome of one item.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ItemReport {
    pub id: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct VerificationReport {
    pub items: Vec<ItemReport>,
}

impl VerificationReport {
    pub fn passed(&self) -> usize {
        self.items.iter().filter(|i| i.passed).count()
    }

    pub fn failed(&self) -> usize {
        self.items.len() - self.passed()
    }

    pub fn all_passed(&self) -> bool {
        self.failed() == 0
    }

    /// `id<TAB>pass|fail<TAB>detail` per item, then a summary line.
    pub fn to_lines(&self) -> String {
        let mut out = String::new();
        for i in &self.items {
            let status = if i.passed { "pass" } else { "fail" };
            out.push_str(&format!("{}\t{}\t{}\n", i.id, status, i.detail.replace('\n', " ")));
        }
        out.push_str(&format!("summary\t{} passed\t{} failed\n", self.passed(), self.failed()));
        out
    }

    pub fn to_json(&self) -> Value {
        json!({
            "items": self.items.iter().map(|i| json!({
                "id": i.id,
                "status": if i.passed { "pass" } else { "fail" },
                "detail": i.detail,
                "elapsed_ms": i.elapsed_ms as u64,
            })).collect::<Vec<_>>(),
            "summary": { "total": self.items.len(), "passed": self.passed(), "failed": self.failed() },
        })
    }
}

/// Ids of every item, in report order.
pub fn item_ids() -> Vec<&'static str> {
    items().iter().map(|i| i.id).collect()
}

fn family(id: &str) -> &str {
    &id[..id.find(|c: char| !c.is_ascii_alphabetic()).unwrap_or(id.len())]
}

fn selects(selector: &str, id: &str) -> bool {
    selector == "all"
        || selector == id
        || id.strip_prefix(selector).is_some_and(|rest| rest.starts_with('.'))
        || (selector.chars().all(|c| c.is_ascii_alphabetic()) && family(id) == selector)
}

/// Items chosen by a selector; an empty choice is an error.
pub fn select(selector: &str) -> Result<Vec<Item>, VerifyError> {
    let chosen: Vec<Item> = items().into_iter().filter(|i| selects(selector, i.id)).collect();
    if chosen.is_empty() {
        return Err(VerifyError::UnknownSelector(selector.to_string()));
    }
    Ok(chosen)
}

/// Runs the selected items in report order. Panics inside an item are
/// reported as failures.
pub fn run_suite(selector: &str, cap: usize) -> Result<VerificationReport, VerifyError> {
    let chosen = select(selector)?;
    let ctx = Context::new(cap);
    let mut report = VerificationReport::default();
    for it in chosen {
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| (it.run)(&ctx)))
            .unwrap_or_else(|p| Err(Fail(panic_message(p))));
        let (passed, detail) = match outcome {
            Ok(d) => (true, d),
            Err(f) => (false, f.0),
        };
        report.items.push(ItemReport {
            id: it.id.to_string(),
            passed,
            detail,
            elapsed_ms: start.elapsed().as_millis(),
        });
    }
    Ok(report)
}

fn panic_message(p: Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| p.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "panic".to_string())
}
