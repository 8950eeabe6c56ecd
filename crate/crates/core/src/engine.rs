//! Finite matrix groups: closure with word logging, subgroups, normality,
//! centers, Sylow subgroups, isomorphism checks and conjugation.
//!
//! Elements are stored in canonical order (identity first, then ascending
//! [`Mat3`] order) so that indices and reports are reproducible.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde_json::{json, Value};
use thiserror::Error;

use crate::catalog::{Catalog, CatalogError, SeriesParams};
use crate::cyclo::CycloError;
use crate::mat3::{Mat3, MatError};

/// Default bound on closure size.
pub const DEFAULT_GROUP_CAP: usize = 10_000;

/// Groups up to this order get a precomputed Cayley table.
const TABLE_LIMIT: usize = 4096;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("closure exceeds cap of {0} elements")]
    CapExceeded(usize),
    #[error("at least one generator is required")]
    NoGenerators,
    #[error("generator {0} is not special unitary")]
    NotSpecialUnitary(usize),
    #[error("matrix is not an element of the group")]
    NotMember,
    #[error("image of generator {0} lies outside the target group")]
    ImageOutsideTarget(usize),
    #[error("expected {expected} generator images, got {got}")]
    ImageCount { expected: usize, got: usize },
    #[error("prime {p} does not divide the group order {order}")]
    PrimeNotDividing { p: u64, order: usize },
    #[error("2-part of the group order is {0}, expected 8")]
    TwoPart(usize),
    #[error("malformed group file: {0}")]
    Malformed(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Cyclo(#[from] CycloError),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
}

/// A closed set of special unitary matrices with per-element generator words.
pub struct MatrixGroup {
    generators: Vec<Mat3>,
    elements: Vec<Mat3>,
    index: HashMap<Mat3, usize>,
    /// `words[e]`: signed 1-based generator indices; `-k` is the inverse of
    /// generator `k`. The product of the letters, left to right, is `e`.
    words: Vec<Vec<i32>>,
    /// BFS tree: element `e ≠ 0` equals `letter(e) · parent(e)`.
    parent: Vec<(usize, i32)>,
    /// Elements in BFS discovery order, identity first.
    bfs_order: Vec<usize>,
    table: OnceLock<Vec<u32>>,
    inverses: OnceLock<Vec<u32>>,
}

impl fmt::Debug for MatrixGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("MatrixGroup").field("order", &self.order()).field("generators", &self.generators.len()).finish()
    }
}

impl PartialEq for MatrixGroup {
    /// Equality as sets of matrices.
    fn eq(&self, other: &Self) -> bool {
        self.elements == other.elements
    }
}

impl Eq for MatrixGroup {}

fn letter<'a>(gens: &'a [Mat3], inv: &'a [Mat3], s: i32) -> &'a Mat3 {
    if s > 0 {
        &gens[s as usize - 1]
    } else {
        &inv[(-s) as usize - 1]
    }
}

impl MatrixGroup {
    /// Closure of `gens` by breadth-first search over left multiplication by
    /// the generators and their inverses.
    pub fn generate(gens: &[Mat3], cap: usize) -> Result<MatrixGroup, EngineError> {
        let first = gens.first().ok_or(EngineError::NoGenerators)?;
        let n = first.conductor();
        for (i, g) in gens.iter().enumerate() {
            if g.conductor() != n {
                return Err(CycloError::ConductorMismatch(n, g.conductor()).into());
            }
            if !g.is_special_unitary() {
                return Err(EngineError::NotSpecialUnitary(i));
            }
        }
        let inv: Vec<Mat3> = gens.iter().map(Mat3::dagger).collect();
        let letters: Vec<i32> = (1..=gens.len() as i32).flat_map(|k| [k, -k]).collect();

        let id = Mat3::identity(n);
        let mut found: Vec<Mat3> = vec![id.clone()];
        let mut seen: HashMap<Mat3, usize> = HashMap::from([(id, 0)]);
        let mut tree: Vec<(usize, i32)> = vec![(0, 0)];
        let mut queue = VecDeque::from([0usize]);
        while let Some(p) = queue.pop_front() {
            for &s in &letters {
                let x = letter(gens, &inv, s) * &found[p];
                if seen.contains_key(&x) {
                    continue;
                }
                if found.len() >= cap {
                    return Err(EngineError::CapExceeded(cap));
                }
                seen.insert(x.clone(), found.len());
                tree.push((p, s));
                queue.push_back(found.len());
                found.push(x);
            }
        }

        // canonical order: identity first, the rest ascending
        let mut perm: Vec<usize> = (1..found.len()).collect();
        perm.sort_by(|&a, &b| found[a].cmp(&found[b]));
        perm.insert(0, 0);
        let mut canon_of = vec![0usize; found.len()];
        for (c, &b) in perm.iter().enumerate() {
            canon_of[b] = c;
        }
        let parent: Vec<(usize, i32)> = perm.iter().map(|&b| (canon_of[tree[b].0], tree[b].1)).collect();
        let bfs_order: Vec<usize> = (0..found.len()).map(|b| canon_of[b]).collect();
        let mut words: Vec<Vec<i32>> = vec![Vec::new(); found.len()];
        for &e in bfs_order.iter().skip(1) {
            let (p, s) = parent[e];
            let mut w = Vec::with_capacity(words[p].len() + 1);
            w.push(s);
            w.extend_from_slice(&words[p]);
            words[e] = w;
        }
        let mut slots: Vec<Option<Mat3>> = found.into_iter().map(Some).collect();
        let elements: Vec<Mat3> = perm.iter().map(|&b| slots[b].take().expect("each slot taken once")).collect();
        let index = elements.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Ok(MatrixGroup {
            generators: gens.to_vec(),
            elements,
            index,
            words,
            parent,
            bfs_order,
            table: OnceLock::new(),
            inverses: OnceLock::new(),
        })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn conductor(&self) -> u32 {
        self.elements[0].conductor()
    }

    pub fn generators(&self) -> &[Mat3] {
        &self.generators
    }

    pub fn elements(&self) -> &[Mat3] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Mat3 {
        &self.elements[i]
    }

    pub fn index_of(&self, m: &Mat3) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn contains(&self, m: &Mat3) -> bool {
        self.index.contains_key(m)
    }

    pub fn word(&self, i: usize) -> &[i32] {
        &self.words[i]
    }

    pub fn words(&self) -> &[Vec<i32>] {
        &self.words
    }

    /// Product of a signed generator word, left to right.
    pub fn eval_word(&self, word: &[i32]) -> Mat3 {
        let mut acc = Mat3::identity(self.conductor());
        for &s in word {
            let g = &self.generators[s.unsigned_abs() as usize - 1];
            acc = if s > 0 { &acc * g } else { &acc * &g.dagger() };
        }
        acc
    }

    fn gen_index(&self, s: i32) -> usize {
        let g = &self.generators[s.unsigned_abs() as usize - 1];
        let m = if s > 0 { g.clone() } else { g.dagger() };
        self.index[&m]
    }

    fn build_table(&self) -> Vec<u32> {
        let n = self.order();
        let letters: Vec<i32> = (1..=self.generators.len() as i32).flat_map(|k| [k, -k]).collect();
        let slot = |s: i32| if s > 0 { 2 * (s as usize - 1) } else { 2 * ((-s) as usize - 1) + 1 };
        let letter_mats: Vec<Mat3> = letters.iter().map(|&s| self.elements[self.gen_index(s)].clone()).collect();
        // right multiplication by each letter, computed exactly
        let mut rmul = vec![0u32; n * letters.len()];
        for x in 0..n {
            for (k, m) in letter_mats.iter().enumerate() {
                rmul[x * letters.len() + k] = self.index[&(&self.elements[x] * m)] as u32;
            }
        }
        // x·(s·p) = (x·s)·p, filled column by column in BFS order
        let mut table = vec![0u32; n * n];
        for x in 0..n {
            table[x * n] = x as u32;
        }
        for &y in self.bfs_order.iter().skip(1) {
            let (p, s) = self.parent[y];
            let k = slot(s);
            for x in 0..n {
                let xs = rmul[x * letters.len() + k] as usize;
                table[x * n + y] = table[xs * n + p];
            }
        }
        table
    }

    fn table(&self) -> Option<&[u32]> {
        (self.order() <= TABLE_LIMIT).then(|| self.table.get_or_init(|| self.build_table()).as_slice())
    }

    /// Index of `elements[i] · elements[j]`.
    pub fn mul(&self, i: usize, j: usize) -> usize {
        match self.table() {
            Some(t) => t[i * self.order() + j] as usize,
            None => self.index[&(&self.elements[i] * &self.elements[j])],
        }
    }

    pub fn inv(&self, i: usize) -> usize {
        let inv = self.inverses.get_or_init(|| self.elements.iter().map(|m| self.index[&m.dagger()] as u32).collect());
        inv[i] as usize
    }

    /// Index of `g · h · g⁻¹`.
    pub fn conj(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn pow(&self, i: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(i) } else { i };
        (0..k.unsigned_abs()).fold(0, |acc, _| self.mul(acc, base))
    }

    pub fn element_order(&self, i: usize) -> u64 {
        let mut k = 1;
        let mut x = i;
        while x != 0 {
            x = self.mul(x, i);
            k += 1;
        }
        k
    }

    pub fn whole(&self) -> Subgroup<'_> {
        Subgroup::from_members(self, (0..self.order()).collect())
    }

    /// Subgroup generated by element indices.
    pub fn closure(&self, seed: &[usize]) -> Subgroup<'_> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut members = vec![0];
        let mut queue = VecDeque::from([0usize]);
        while let Some(p) = queue.pop_front() {
            for &s in seed {
                let x = self.mul(s, p);
                if !seen[x] {
                    seen[x] = true;
                    members.push(x);
                    queue.push_back(x);
                }
            }
        }
        members.sort_unstable();
        Subgroup::from_members(self, members)
    }

    /// Subgroup generated by matrices that must belong to the group.
    pub fn subgroup(&self, seed: &[Mat3]) -> Result<Subgroup<'_>, EngineError> {
        let idx = seed.iter().map(|m| self.index_of(m).ok_or(EngineError::NotMember)).collect::<Result<Vec<_>, _>>()?;
        Ok(self.closure(&idx))
    }

    /// Subgroup with exactly the given members, which must form a subgroup.
    pub fn subgroup_of_set(&self, set: &[Mat3]) -> Result<Subgroup<'_>, EngineError> {
        let mut idx =
            set.iter().map(|m| self.index_of(m).ok_or(EngineError::NotMember)).collect::<Result<Vec<_>, _>>()?;
        idx.sort_unstable();
        idx.dedup();
        let s = Subgroup::from_members(self, idx);
        if !s.is_closed() {
            return Err(EngineError::Invariant("set is not closed under multiplication".into()));
        }
        Ok(s)
    }

    pub fn spectrum(&self) -> BTreeMap<u64, usize> {
        self.whole().spectrum()
    }

    pub fn center(&self) -> Subgroup<'_> {
        self.whole().center()
    }

    pub fn sylow(&self, p: u64) -> Result<Vec<Subgroup<'_>>, EngineError> {
        self.whole().sylow(p)
    }

    pub fn generated_by_sylows(&self, p: u64) -> Result<Subgroup<'_>, EngineError> {
        self.whole().generated_by_sylows(p)
    }

    /// True iff every element of `self` lies in `other`.
    pub fn is_subset_of(&self, other: &MatrixGroup) -> bool {
        self.elements.iter().all(|m| other.contains(m))
    }

    /// Every element reproduced by its logged word.
    pub fn words_are_sound(&self) -> bool {
        self.elements.iter().zip(&self.words).all(|(m, w)| self.eval_word(w) == *m)
    }

    /// Exhaustive closure under products and inverses, done with exact
    /// matrix arithmetic rather than the table.
    pub fn is_closed(&self) -> bool {
        self.elements.iter().all(|x| self.contains(&x.dagger()))
            && self.elements.iter().all(|x| self.elements.iter().all(|y| self.contains(&(x * y))))
    }

    /// {P·g·P⁻¹ : g ∈ G}, generated from the conjugated generators.
    pub fn conjugate_group(&self, p: &Mat3, cap: usize) -> Result<MatrixGroup, EngineError> {
        let pi = p.inverse()?;
        let gens: Vec<Mat3> = self.generators.iter().map(|g| &(p * g) * &pi).collect();
        MatrixGroup::generate(&gens, cap)
    }

    /// True iff (f₁,…,f_k) ↦ f₁·…·f_k is a bijection from the product of the
    /// factor lists onto the group.
    pub fn unique_factorization(&self, factors: &[Vec<Mat3>]) -> bool {
        let total: usize = factors.iter().map(Vec::len).product();
        if total != self.order() {
            return false;
        }
        let Some(idx) = factors
            .iter()
            .map(|f| f.iter().map(|m| self.index_of(m)).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()
        else {
            return false;
        };
        let mut partial = vec![0usize];
        for f in &idx {
            partial =
                partial.iter().flat_map(|&a| f.iter().map(move |&b| (a, b))).map(|(a, b)| self.mul(a, b)).collect();
        }
        let mut seen = vec![false; self.order()];
        partial.into_iter().all(|x| !std::mem::replace(&mut seen[x], true))
    }

    /// Checks that sending generator i to `images[i]` extends, through the
    /// logged words, to an isomorphism onto `dst`: bijective and
    /// multiplicative on every pair.
    pub fn verify_isomorphism(&self, dst: &MatrixGroup, images: &[Mat3]) -> Result<bool, EngineError> {
        Ok(self.isomorphism_images(dst, images)?.is_some())
    }

    /// The extended map as target indices, or `None` if it is not an
    /// isomorphism.
    pub fn isomorphism_images(&self, dst: &MatrixGroup, images: &[Mat3]) -> Result<Option<Vec<usize>>, EngineError> {
        if images.len() != self.generators.len() {
            return Err(EngineError::ImageCount { expected: self.generators.len(), got: images.len() });
        }
        let img = images
            .iter()
            .enumerate()
            .map(|(i, m)| dst.index_of(m).ok_or(EngineError::ImageOutsideTarget(i)))
            .collect::<Result<Vec<_>, _>>()?;
        let letter_img = |s: i32| {
            let g = img[s.unsigned_abs() as usize - 1];
            if s > 0 {
                g
            } else {
                dst.inv(g)
            }
        };
        let mut phi = vec![0usize; self.order()];
        for &e in self.bfs_order.iter().skip(1) {
            let (p, s) = self.parent[e];
            phi[e] = dst.mul(letter_img(s), phi[p]);
        }
        if self.order() != dst.order() {
            return Ok(None);
        }
        let mut hit = vec![false; dst.order()];
        if !phi.iter().all(|&x| !std::mem::replace(&mut hit[x], true)) {
            return Ok(None);
        }
        let n = self.order();
        for x in 0..n {
            for y in 0..n {
                if phi[self.mul(x, y)] != dst.mul(phi[x], phi[y]) {
                    return Ok(None);
                }
            }
        }
        Ok(Some(phi))
    }

    pub fn two_sylow_type(&self) -> Result<TwoSylowType, EngineError> {
        self.whole().two_sylow_type()
    }

    /// Export form: name, conductor, order, generators, elements and words.
    pub fn to_json(&self, name: &str) -> Value {
        json!({
            "name": name,
            "conductor": self.conductor(),
            "order": self.order(),
            "generators": self.generators.iter().map(Mat3::to_json).collect::<Vec<_>>(),
            "elements": self.elements.iter().map(Mat3::to_json).collect::<Vec<_>>(),
            "words": self.words,
        })
    }

    /// Parses an exported group, regenerates it from its generators and
    /// checks the recorded order, elements and words against the closure.
    pub fn from_json(v: &Value, cap: usize) -> Result<(String, MatrixGroup), EngineError> {
        let bad = |m: &str| EngineError::Malformed(m.to_string());
        let name = v.get("name").and_then(Value::as_str).unwrap_or("imported").to_string();
        let conductor = v.get("conductor").and_then(Value::as_u64).ok_or_else(|| bad("missing conductor"))?;
        let mats = |key: &str| -> Result<Vec<Mat3>, EngineError> {
            v.get(key)
                .and_then(Value::as_array)
                .ok_or_else(|| bad(&format!("missing {key}")))?
                .iter()
                .map(|m| {
                    let mut m = m.clone();
                    if m.get("conductor").is_none() {
                        m["conductor"] = json!(conductor);
                    }
                    Mat3::from_json(&m).map_err(|e| EngineError::Malformed(e.to_string()))
                })
                .collect()
        };
        let gens = mats("generators")?;
        let g = MatrixGroup::generate(&gens, cap)?;
        if let Some(order) = v.get("order") {
            if order.as_u64() != Some(g.order() as u64) {
                return Err(EngineError::Invariant(format!("recorded order {order} but closure has {}", g.order())));
            }
        }
        if v.get("elements").is_some() {
            let mut els = mats("elements")?;
            if let Some(bad) = els.iter().position(|m| !m.is_special_unitary()) {
                return Err(EngineError::Invariant(format!("element {bad} is not special unitary")));
            }
            els.sort();
            let mut mine = g.elements.clone();
            mine.sort();
            if els != mine {
                return Err(EngineError::Invariant("recorded elements differ from the closure".into()));
            }
        }
        if let Some(words) = v.get("words") {
            let words: Vec<Vec<i32>> = serde_json::from_value(words.clone()).map_err(|e| bad(&e.to_string()))?;
            if words.len() != g.order() {
                return Err(EngineError::Invariant("one word per element expected".into()));
            }
            for w in &words {
                if w.iter().any(|s| *s == 0 || s.unsigned_abs() as usize > gens.len()) {
                    return Err(bad("word letter out of range"));
                }
            }
            if words.iter().zip(&g.elements).any(|(w, m)| g.eval_word(w) != *m) {
                return Err(EngineError::Invariant("a recorded word does not evaluate to its element".into()));
            }
        }
        Ok((name, g))
    }
}

/// A subgroup stored as a sorted set of indices into its parent.
#[derive(Clone)]
pub struct Subgroup<'g> {
    parent: &'g MatrixGroup,
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl PartialEq for Subgroup<'_> {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self.parent, other.parent) && self.members == other.members
    }
}

impl Eq for Subgroup<'_> {}

impl fmt::Debug for Subgroup<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup(order {} of {})", self.order(), self.parent.order())
    }
}

/// Isomorphism type of a group of order 8.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoSylowType {
    C8,
    C4xC2,
    C2Cubed,
    D4,
    Q8,
}

impl fmt::Display for TwoSylowType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TwoSylowType::C8 => "C8",
            TwoSylowType::C4xC2 => "C4xC2",
            TwoSylowType::C2Cubed => "C2^3",
            TwoSylowType::D4 => "D4",
            TwoSylowType::Q8 => "Q8",
        })
    }
}

impl TwoSylowType {
    /// Classification of an order-8 group by its element orders.
    pub fn from_spectrum(spec: &BTreeMap<u64, usize>) -> Option<TwoSylowType> {
        let c = |k: u64| spec.get(&k).copied().unwrap_or(0);
        if spec.values().sum::<usize>() != 8 {
            return None;
        }
        match (c(2), c(4), c(8)) {
            (_, _, 4) => Some(TwoSylowType::C8),
            (1, 6, 0) => Some(TwoSylowType::Q8),
            (5, 2, 0) => Some(TwoSylowType::D4),
            (7, 0, 0) => Some(TwoSylowType::C2Cubed),
            (3, 4, 0) => Some(TwoSylowType::C4xC2),
            _ => None,
        }
    }
}

fn p_part(mut order: usize, p: usize) -> usize {
    let mut q = 1;
    while order % p == 0 {
        order /= p;
        q *= p;
    }
    q
}

fn is_p_power(mut k: u64, p: u64) -> bool {
    while k > 1 && k % p == 0 {
        k /= p;
    }
    k == 1
}

impl<'g> Subgroup<'g> {
    fn from_members(parent: &'g MatrixGroup, members: Vec<usize>) -> Subgroup<'g> {
        let mut mask = vec![false; parent.order()];
        for &m in &members {
            mask[m] = true;
        }
        Subgroup { parent, members, mask }
    }

    pub fn parent(&self) -> &'g MatrixGroup {
        self.parent
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    pub fn contains(&self, i: usize) -> bool {
        self.mask[i]
    }

    pub fn contains_matrix(&self, m: &Mat3) -> bool {
        self.parent.index_of(m).is_some_and(|i| self.mask[i])
    }

    pub fn matrices(&self) -> impl Iterator<Item = &'g Mat3> + '_ {
        self.members.iter().map(|&i| self.parent.element(i))
    }

    pub fn is_subgroup_of(&self, other: &Subgroup<'_>) -> bool {
        std::ptr::eq(self.parent, other.parent) && self.members.iter().all(|&i| other.mask[i])
    }

    fn is_closed(&self) -> bool {
        self.members.contains(&0)
            && self.members.iter().all(|&x| self.members.iter().all(|&y| self.mask[self.parent.mul(x, y)]))
    }

    pub fn conjugate_by(&self, g: usize) -> Subgroup<'g> {
        let mut m: Vec<usize> = self.members.iter().map(|&h| self.parent.conj(g, h)).collect();
        m.sort_unstable();
        Subgroup::from_members(self.parent, m)
    }

    /// Normal in the parent group.
    pub fn is_normal(&self) -> bool {
        let gens: Vec<usize> = (1..=self.parent.generators.len() as i32).map(|s| self.parent.gen_index(s)).collect();
        gens.iter().all(|&g| self.members.iter().all(|&h| self.mask[self.parent.conj(g, h)]))
    }

    /// Normal in `other`, which must contain it.
    pub fn is_normal_in(&self, other: &Subgroup<'_>) -> bool {
        self.is_subgroup_of(other)
            && other.members.iter().all(|&g| self.members.iter().all(|&h| self.mask[self.parent.conj(g, h)]))
    }

    pub fn center(&self) -> Subgroup<'g> {
        let p = self.parent;
        let members = self
            .members
            .iter()
            .copied()
            .filter(|&z| self.members.iter().all(|&g| p.mul(z, g) == p.mul(g, z)))
            .collect();
        Subgroup::from_members(p, members)
    }

    /// Normalizer of `self` inside `within`.
    pub fn normalizer_in(&self, within: &Subgroup<'g>) -> Subgroup<'g> {
        let p = self.parent;
        let members =
            within.members.iter().copied().filter(|&g| self.members.iter().all(|&h| self.mask[p.conj(g, h)])).collect();
        Subgroup::from_members(p, members)
    }

    pub fn intersection(&self, other: &Subgroup<'g>) -> Subgroup<'g> {
        let members = self.members.iter().copied().filter(|&i| other.mask[i]).collect();
        Subgroup::from_members(self.parent, members)
    }

    /// The set product {h·k}, sorted; a subgroup only when the factors permute.
    pub fn product_set(&self, other: &Subgroup<'g>) -> Vec<usize> {
        let set: BTreeSet<usize> =
            self.members.iter().flat_map(|&h| other.members.iter().map(move |&k| self.parent.mul(h, k))).collect();
        set.into_iter().collect()
    }

    pub fn spectrum(&self) -> BTreeMap<u64, usize> {
        let mut out = BTreeMap::new();
        for &i in &self.members {
            *out.entry(self.parent.element_order(i)).or_insert(0) += 1;
        }
        out
    }

    pub fn elements_of_order(&self, k: u64) -> Vec<usize> {
        self.members.iter().copied().filter(|&i| self.parent.element_order(i) == k).collect()
    }

    /// All p-Sylow subgroups: grow one p-subgroup inside its normalizer,
    /// then collect its distinct conjugates.
    pub fn sylow(&self, p: u64) -> Result<Vec<Subgroup<'g>>, EngineError> {
        let target = p_part(self.order(), p as usize);
        if p < 2 || target == 1 {
            return Err(EngineError::PrimeNotDividing { p, order: self.order() });
        }
        let g = self.parent;
        let seed = self
            .members
            .iter()
            .copied()
            .filter(|&i| i != 0 && is_p_power(g.element_order(i), p))
            .max_by_key(|&i| (g.element_order(i), std::cmp::Reverse(i)))
            .expect("Cauchy: a p-element exists");
        let mut sub = g.closure(&[seed]);
        while sub.order() < target {
            let norm = sub.normalizer_in(self);
            let ext = norm
                .members
                .iter()
                .copied()
                .find(|&x| !sub.mask[x] && sub.mask[g.pow(x, p as i64)])
                .expect("a p-subgroup below Sylow order grows inside its normalizer");
            let mut seed = sub.members.clone();
            seed.push(ext);
            sub = g.closure(&seed);
        }
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut out = Vec::new();
        for &x in &self.members {
            let c = sub.conjugate_by(x);
            if seen.insert(c.members.clone()) {
                out.push(c);
            }
        }
        out.sort_by(|a, b| a.members.cmp(&b.members));
        Ok(out)
    }

    pub fn generated_by_sylows(&self, p: u64) -> Result<Subgroup<'g>, EngineError> {
        let all: BTreeSet<usize> = self.sylow(p)?.iter().flat_map(|s| s.members.clone()).collect();
        Ok(self.parent.closure(&all.into_iter().collect::<Vec<_>>()))
    }

    pub fn two_sylow_type(&self) -> Result<TwoSylowType, EngineError> {
        let two = p_part(self.order(), 2);
        if two != 8 {
            return Err(EngineError::TwoPart(two));
        }
        let s = self.sylow(2)?.into_iter().next().expect("at least one Sylow");
        Ok(TwoSylowType::from_spectrum(&s.spectrum()).expect("order-8 spectra are classified"))
    }
}

/// |Aut(Z_m × Z_n)| by brute force over the images of the two standard
/// generators.
pub fn aut_count_abelian(m: u64, n: u64) -> u64 {
    let elems: Vec<(u64, u64)> = (0..m).flat_map(|a| (0..n).map(move |b| (a, b))).collect();
    let scale = |k: u64, (a, b): (u64, u64)| ((k * a) % m, (k * b) % n);
    let add = |(a, b): (u64, u64), (c, d): (u64, u64)| ((a + c) % m, (b + d) % n);
    let size = (m * n) as usize;
    let mut count = 0;
    for &u in &elems {
        if scale(m, u) != (0, 0) {
            continue;
        }
        for &v in &elems {
            if scale(n, v) != (0, 0) {
                continue;
            }
            let mut hit = vec![false; size];
            let bijective = elems.iter().all(|&(a, b)| {
                let (x, y) = add(scale(a, u), scale(b, v));
                !std::mem::replace(&mut hit[(x * n + y) as usize], true)
            });
            if bijective {
                count += 1;
            }
        }
    }
    count
}

/// True iff C(n,a,b) ⊆ D(params), both built by closure.
pub fn cd_inclusion_check(
    catalog: &Catalog,
    c: (i64, i64, i64),
    d: SeriesParams,
    cap: usize,
) -> Result<bool, EngineError> {
    let cg = MatrixGroup::generate(&catalog.c_group(c.0, c.1, c.2)?.generators, cap)?;
    let dg = MatrixGroup::generate(&catalog.d_group(d)?.generators, cap)?;
    Ok(cg.is_subset_of(&dg))
}
