//! Finitely presented groups: words, a small text format for presentations,
//! relator evaluation against matrices and Todd–Coxeter coset enumeration.
//!
//! Text format (statements separated by `;` or newlines):
//!
//! ```text
//! gens: c6 c18 h1 h3
//! rel: c6^6
//! rel: h1 c6 h1^-1 = c6^-1 c18^6
//! rel: [c6, c18]
//! ```
//!
//! A factor is a generator name, `( expr )` or `[ expr , expr ]`, each
//! optionally followed by `^k` with a signed integer `k`. `[x, y]` is
//! x·y·x⁻¹·y⁻¹ and `lhs = rhs` becomes the relator lhs·rhs⁻¹.

use std::collections::{BTreeMap, VecDeque};
use std::fmt;
use std::ops::Mul;

use thiserror::Error;

use crate::mat3::Mat3;

/// Default bound on the number of live cosets.
pub const DEFAULT_COSET_CAP: usize = 5000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FpError {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),
    #[error("duplicate generator {0:?}")]
    DuplicateGenerator(String),
    #[error("generator index {0} out of range")]
    GeneratorIndex(usize),
    #[error("generator {0:?} has no assigned matrix")]
    Unassigned(String),
    #[error("coset enumeration exceeded {0} live cosets")]
    CapExceeded(usize),
}

/// A generator or its inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub gen: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn inv(self) -> Letter {
        Letter { gen: self.gen, inverse: !self.inverse }
    }

    /// Column in a coset table: 2·gen for the generator, 2·gen+1 for its
    /// inverse.
    fn column(self) -> usize {
        2 * self.gen + self.inverse as usize
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word {
    letters: Vec<Letter>,
}

impl Word {
    pub fn empty() -> Word {
        Word::default()
    }

    pub fn gen(i: usize) -> Word {
        Word { letters: vec![Letter { gen: i, inverse: false }] }
    }

    pub fn from_letters(letters: Vec<Letter>) -> Word {
        Word { letters }
    }

    /// From signed 1-based indices, `-k` standing for the inverse of
    /// generator `k`.
    pub fn from_signed(s: &[i32]) -> Word {
        Word { letters: s.iter().map(|&x| Letter { gen: x.unsigned_abs() as usize - 1, inverse: x < 0 }).collect() }
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word { letters: self.letters.iter().rev().map(|l| l.inv()).collect() }
    }

    pub fn pow(&self, k: i64) -> Word {
        let base = if k < 0 { self.inverse() } else { self.clone() };
        let mut letters = Vec::with_capacity(base.len() * k.unsigned_abs() as usize);
        for _ in 0..k.unsigned_abs() {
            letters.extend_from_slice(&base.letters);
        }
        Word { letters }
    }

    /// x·y·x⁻¹·y⁻¹.
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x * y * &x.inverse() * &y.inverse()
    }

    /// Free reduction: no adjacent x·x⁻¹.
    pub fn reduced(&self) -> Word {
        let mut out: Vec<Letter> = Vec::with_capacity(self.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inv()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word { letters: out }
    }

    /// Free and cyclic reduction.
    pub fn cyclically_reduced(&self) -> Word {
        let mut w = self.reduced().letters;
        while w.len() >= 2 && w[0] == w[w.len() - 1].inv() {
            w.pop();
            w.remove(0);
        }
        Word { letters: w }
    }

    /// Signed 1-based form.
    pub fn to_signed(&self) -> Vec<i32> {
        self.letters.iter().map(|l| if l.inverse { -(l.gen as i32 + 1) } else { l.gen as i32 + 1 }).collect()
    }
}

impl Mul<&Word> for &Word {
    type Output = Word;
    fn mul(self, rhs: &Word) -> Word {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&rhs.letters);
        Word { letters }
    }
}

impl Mul<&Word> for Word {
    type Output = Word;
    fn mul(mut self, rhs: &Word) -> Word {
        self.letters.extend_from_slice(&rhs.letters);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    gens: Vec<String>,
    relators: Vec<Word>,
}

impl Presentation {
    pub fn new(gens: &[&str], relators: Vec<Word>) -> Result<Presentation, FpError> {
        let mut p = Presentation { gens: Vec::new(), relators: Vec::new() };
        for g in gens {
            p.add_gen(g)?;
        }
        for r in relators {
            p.add_relator(r)?;
        }
        Ok(p)
    }

    fn add_gen(&mut self, name: &str) -> Result<(), FpError> {
        if self.gens.iter().any(|g| g == name) {
            return Err(FpError::DuplicateGenerator(name.to_string()));
        }
        self.gens.push(name.to_string());
        Ok(())
    }

    pub fn add_relator(&mut self, w: Word) -> Result<(), FpError> {
        if let Some(l) = w.letters.iter().find(|l| l.gen >= self.gens.len()) {
            return Err(FpError::GeneratorIndex(l.gen));
        }
        self.relators.push(w);
        Ok(())
    }

    /// Adds lhs = rhs as the relator lhs·rhs⁻¹.
    pub fn add_relation(&mut self, lhs: &Word, rhs: &Word) -> Result<(), FpError> {
        self.add_relator(lhs * &rhs.inverse())
    }

    pub fn gens(&self) -> &[String] {
        &self.gens
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    pub fn gen_index(&self, name: &str) -> Result<usize, FpError> {
        self.gens.iter().position(|g| g == name).ok_or_else(|| FpError::UnknownGenerator(name.to_string()))
    }

    /// Parses a full presentation in the text format.
    pub fn parse(text: &str) -> Result<Presentation, FpError> {
        let mut p = Presentation { gens: Vec::new(), relators: Vec::new() };
        let mut offset = 0;
        for stmt in text.split([';', '\n']) {
            let start = offset;
            offset += stmt.len() + 1;
            let trimmed = stmt.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let err = |msg: &str| FpError::Parse { pos: start, msg: msg.to_string() };
            let (key, body) = trimmed.split_once(':').ok_or_else(|| err("expected `gens:` or `rel:`"))?;
            let body_pos = start + stmt.find(':').expect("colon present") + 1;
            match key.trim() {
                "gens" => {
                    for g in body.split_whitespace() {
                        if !g.chars().all(|c| c.is_alphanumeric() || c == '_')
                            || g.starts_with(|c: char| c.is_numeric())
                        {
                            return Err(err(&format!("bad generator name {g:?}")));
                        }
                        p.add_gen(g)?;
                    }
                }
                "rel" => {
                    let w = p.parse_relation_at(body, body_pos)?;
                    p.relators.push(w);
                }
                other => return Err(err(&format!("unknown statement {other:?}"))),
            }
        }
        Ok(p)
    }

    /// Parses a word expression over this presentation's generators.
    pub fn word(&self, expr: &str) -> Result<Word, FpError> {
        let mut parser = Parser { src: expr.as_bytes(), pos: 0, base: 0, gens: &self.gens };
        let w = parser.expr()?;
        parser.end()?;
        Ok(w)
    }

    fn parse_relation_at(&self, body: &str, base: usize) -> Result<Word, FpError> {
        let mut parser = Parser { src: body.as_bytes(), pos: 0, base, gens: &self.gens };
        let lhs = parser.expr()?;
        parser.skip_ws();
        let w = if parser.peek() == Some(b'=') {
            parser.pos += 1;
            let rhs = parser.expr()?;
            lhs * &rhs.inverse()
        } else {
            lhs
        };
        parser.end()?;
        Ok(w)
    }

    pub fn display_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        w.letters
            .iter()
            .map(|l| if l.inverse { format!("{}^-1", self.gens[l.gen]) } else { self.gens[l.gen].clone() })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "gens: {}", self.gens.join(" "))?;
        for r in &self.relators {
            write!(f, "; rel: {}", self.display_word(r))?;
        }
        Ok(())
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    base: usize,
    gens: &'a [String],
}

impl Parser<'_> {
    fn err(&self, msg: impl Into<String>) -> FpError {
        FpError::Parse { pos: self.base + self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(|c| c.is_ascii_whitespace() || c == b'*') {
            self.pos += 1;
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn end(&mut self) -> Result<(), FpError> {
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.err(format!("unexpected {:?}", c as char))),
        }
    }

    fn expr(&mut self) -> Result<Word, FpError> {
        let mut w = Word::empty();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_alphabetic() || c == b'_' || c == b'(' || c == b'[' || c == b'1' => {
                    let f = self.factor()?;
                    w = w * &f;
                }
                _ => return Ok(w),
            }
        }
    }

    fn factor(&mut self) -> Result<Word, FpError> {
        let atom = match self.peek() {
            Some(b'(') => {
                self.pos += 1;
                let inner = self.expr()?;
                self.expect(b')')?;
                inner
            }
            Some(b'[') => {
                self.pos += 1;
                let x = self.expr()?;
                self.expect(b',')?;
                let y = self.expr()?;
                self.expect(b']')?;
                Word::commutator(&x, &y)
            }
            Some(b'1') => {
                self.pos += 1;
                Word::empty()
            }
            _ => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric() || c == b'_') {
                    self.pos += 1;
                }
                let name = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
                let i =
                    self.gens.iter().position(|g| g == name).ok_or_else(|| FpError::UnknownGenerator(name.into()))?;
                Word::gen(i)
            }
        };
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let start = self.pos;
            if matches!(self.peek(), Some(b'-' | b'+')) {
                self.pos += 1;
            }
            while self.peek().is_some_and(|c| c.is_ascii_digit()) {
                self.pos += 1;
            }
            let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii");
            let k: i64 = text.parse().map_err(|_| self.err(format!("bad exponent {text:?}")))?;
            return Ok(atom.pow(k));
        }
        Ok(atom)
    }

    fn expect(&mut self, c: u8) -> Result<(), FpError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected {:?}", c as char)))
        }
    }
}

/// Matrices assigned to generator names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenAssignment {
    conductor: u32,
    images: BTreeMap<String, Mat3>,
}

impl GenAssignment {
    pub fn new(conductor: u32) -> GenAssignment {
        GenAssignment { conductor, images: BTreeMap::new() }
    }

    pub fn with(mut self, name: &str, m: Mat3) -> GenAssignment {
        self.images.insert(name.to_string(), m);
        self
    }

    pub fn get(&self, name: &str) -> Option<&Mat3> {
        self.images.get(name)
    }

    /// Product of the images of the letters, left to right.
    pub fn eval_word(&self, p: &Presentation, w: &Word) -> Result<Mat3, FpError> {
        let mut acc = Mat3::identity(self.conductor);
        for l in &w.letters {
            let name = p.gens.get(l.gen).ok_or(FpError::GeneratorIndex(l.gen))?;
            let m = self.images.get(name).ok_or_else(|| FpError::Unassigned(name.clone()))?;
            acc = if l.inverse { &acc * &m.dagger() } else { &acc * m };
        }
        Ok(acc)
    }

    /// Relators that do not evaluate to the identity.
    pub fn check_presentation(&self, p: &Presentation) -> Result<Vec<Word>, FpError> {
        let mut failing = Vec::new();
        for r in &p.relators {
            if !self.eval_word(p, r)?.is_identity() {
                failing.push(r.clone());
            }
        }
        Ok(failing)
    }

    pub fn verify_identity(&self, p: &Presentation, lhs: &Word, rhs: &Word) -> Result<bool, FpError> {
        Ok(self.eval_word(p, lhs)? == self.eval_word(p, rhs)?)
    }
}

const NONE: u32 = u32::MAX;

/// Coset table with HLT definitions and coincidence processing.
struct CosetTable {
    cols: usize,
    table: Vec<u32>,
    forward: Vec<u32>,
    live: usize,
    cap: usize,
    queue: VecDeque<u32>,
}

impl CosetTable {
    fn new(gens: usize, cap: usize) -> CosetTable {
        CosetTable {
            cols: 2 * gens,
            table: vec![NONE; 2 * gens],
            forward: vec![0],
            live: 1,
            cap,
            queue: VecDeque::new(),
        }
    }

    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.cols + x]
    }

    fn set(&mut self, c: u32, x: usize, v: u32) {
        self.table[c as usize * self.cols + x] = v;
    }

    fn is_live(&self, c: u32) -> bool {
        self.forward[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> Result<(), FpError> {
        if self.live >= self.cap {
            return Err(FpError::CapExceeded(self.cap));
        }
        let d = self.forward.len() as u32;
        self.forward.push(d);
        self.table.extend(std::iter::repeat(NONE).take(self.cols));
        self.live += 1;
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut r = c;
        while self.forward[r as usize] != r {
            r = self.forward[r as usize];
        }
        let mut c = c;
        while self.forward[c as usize] != r {
            let next = self.forward[c as usize];
            self.forward[c as usize] = r;
            c = next;
        }
        r
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = (a.min(b), a.max(b));
        self.forward[hi as usize] = lo;
        self.live -= 1;
        self.queue.push_back(hi);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        while let Some(e) = self.queue.pop_front() {
            for x in 0..self.cols {
                let f = self.get(e, x);
                if f == NONE {
                    continue;
                }
                self.set(f, x ^ 1, NONE);
                let (e1, f1) = (self.rep(e), self.rep(f));
                let ex = self.get(e1, x);
                let fx = self.get(f1, x ^ 1);
                if ex != NONE {
                    self.merge(f1, ex);
                } else if fx != NONE {
                    self.merge(e1, fx);
                } else {
                    self.set(e1, x, f1);
                    self.set(f1, x ^ 1, e1);
                }
            }
        }
    }

    fn scan_and_fill(&mut self, c: u32, rel: &[usize]) -> Result<(), FpError> {
        let (mut f, mut b) = (c, c);
        let (mut i, mut j) = (0usize, rel.len());
        loop {
            while i < j && self.get(f, rel[i]) != NONE {
                f = self.get(f, rel[i]);
                i += 1;
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i && self.get(b, rel[j - 1] ^ 1) != NONE {
                b = self.get(b, rel[j - 1] ^ 1);
                j -= 1;
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.set(f, rel[i], b);
                self.set(b, rel[i] ^ 1, f);
                return Ok(());
            }
            self.define(f, rel[i])?;
        }
    }
}

/// Order of the presented group by coset enumeration over the trivial
/// subgroup. `cap` bounds the number of simultaneously live cosets.
pub fn todd_coxeter(p: &Presentation, cap: usize) -> Result<usize, FpError> {
    let rels: Vec<Vec<usize>> = p
        .relators
        .iter()
        .map(Word::cyclically_reduced)
        .filter(|w| !w.is_empty())
        .map(|w| w.letters.iter().map(|l| l.column()).collect())
        .collect();
    let mut t = CosetTable::new(p.gens.len(), cap.max(1));
    let mut c = 0u32;
    while (c as usize) < t.forward.len() {
        for r in &rels {
            if !t.is_live(c) {
                break;
            }
            t.scan_and_fill(c, r)?;
        }
        for x in 0..t.cols {
            if t.is_live(c) && t.get(c, x) == NONE {
                t.define(c, x)?;
            }
        }
        c += 1;
    }
    Ok(t.live)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::Catalog;
    use proptest::prelude::*;

    #[test]
    fn free_reduction() {
        let w = Word::from_signed(&[1, 2, -2, -1, 3]);
        assert_eq!(w.reduced(), Word::from_signed(&[3]));
        assert_eq!(Word::from_signed(&[-1, 2, 1]).cyclically_reduced(), Word::from_signed(&[2]));
        assert!((&w * &w.inverse()).reduced().is_empty());
        assert_eq!(Word::from_signed(&[1, -2]).pow(-2), Word::from_signed(&[2, -1, 2, -1]));
    }

    #[test]
    fn parses_the_text_format() {
        let p = Presentation::parse("gens: a b\nrel: a^2; rel: (a b)^-2 = b^3\nrel: [a, b]").unwrap();
        assert_eq!(p.gens(), ["a", "b"]);
        assert_eq!(p.relators()[0], Word::from_signed(&[1, 1]));
        assert_eq!(p.relators()[1], Word::from_signed(&[-2, -1, -2, -1, -2, -2, -2]));
        assert_eq!(p.relators()[2], Word::from_signed(&[1, 2, -1, -2]));
        assert_eq!(p.word("1").unwrap(), Word::empty());
        assert!(matches!(Presentation::parse("gens: a; rel: c"), Err(FpError::UnknownGenerator(_))));
        assert!(matches!(Presentation::parse("gens: a; rel: a^"), Err(FpError::Parse { .. })));
        assert!(matches!(Presentation::parse("gens: a; rel: (a"), Err(FpError::Parse { .. })));
        assert!(matches!(Presentation::parse("gens: a a"), Err(FpError::DuplicateGenerator(_))));
        assert!(matches!(Presentation::parse("foo: a"), Err(FpError::Parse { .. })));
        let round = Presentation::parse(&p.to_string()).unwrap();
        assert_eq!(round, p);
    }

    #[test]
    fn small_enumerations() {
        let s3 = Presentation::parse("gens: h1 h3; rel: h1^2; rel: h3^3; rel: (h1 h3)^2").unwrap();
        assert_eq!(todd_coxeter(&s3, DEFAULT_COSET_CAP).unwrap(), 6);
        let ab = Presentation::parse("gens: a b; rel: a^18; rel: b^6; rel: a b a^-1 b^-1").unwrap();
        assert_eq!(todd_coxeter(&ab, DEFAULT_COSET_CAP).unwrap(), 108);
        let trivial = Presentation::parse("gens: a; rel: a").unwrap();
        assert_eq!(todd_coxeter(&trivial, 10).unwrap(), 1);
        let q8 = Presentation::parse("gens: i j; rel: i^4; rel: i^2 = j^2; rel: j i j^-1 = i^-1").unwrap();
        assert_eq!(todd_coxeter(&q8, 100).unwrap(), 8);
        let free = Presentation::parse("gens: a").unwrap();
        assert_eq!(todd_coxeter(&free, 50), Err(FpError::CapExceeded(50)));
    }

    #[test]
    fn evaluation_against_matrices() {
        let c = Catalog::default();
        let p = Presentation::parse("gens: e bt; rel: e^3; rel: bt^2; rel: (e bt)^2").unwrap();
        let assign = GenAssignment::new(72).with("e", c.e()).with("bt", c.btilde());
        assert!(assign.check_presentation(&p).unwrap().is_empty());
        assert!(assign.eval_word(&p, &Word::empty()).unwrap().is_identity());
        let corrupted = Presentation::parse("gens: e bt; rel: e^2").unwrap();
        assert_eq!(assign.check_presentation(&corrupted).unwrap().len(), 1);
        let x = p.word("e bt").unwrap();
        assert!(assign.verify_identity(&p, &x, &x).unwrap());
        let partial = GenAssignment::new(72).with("e", c.e());
        assert_eq!(partial.check_presentation(&p), Err(FpError::Unassigned("bt".into())));
    }

    fn arb_word() -> impl Strategy<Value = Word> {
        proptest::collection::vec(prop_oneof![-2i32..=-1, 1i32..=2], 0..12).prop_map(|v| Word::from_signed(&v))
    }

    proptest! {
        #[test]
        fn words_and_inverses_cancel(w in arb_word(), v in arb_word()) {
            prop_assert!((&w * &w.inverse()).reduced().is_empty());
            prop_assert_eq!((&w * &v).inverse().reduced(), (&v.inverse() * &w.inverse()).reduced());
            prop_assert_eq!(w.reduced().reduced(), w.reduced());
        }

        #[test]
        fn evaluation_is_a_homomorphism(w in arb_word(), v in arb_word()) {
            let c = Catalog::default();
            let p = Presentation::new(&["e", "bt"], Vec::new()).unwrap();
            let assign = GenAssignment::new(72).with("e", c.e()).with("bt", c.btilde());
            let (x, y) = (assign.eval_word(&p, &w).unwrap(), assign.eval_word(&p, &v).unwrap());
            prop_assert_eq!(assign.eval_word(&p, &(&w * &v)).unwrap(), &x * &y);
            prop_assert!((&x * &assign.eval_word(&p, &w.inverse()).unwrap()).is_identity());
        }
    }
}
