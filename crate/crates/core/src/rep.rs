//! Characters of finite abelian groups and the three Grothendieck groups of
//! the cde triangle.
//!
//! A group is Z/n_1 × … × Z/n_k with n_1 | … | n_k. Elements and characters
//! are both exponent tuples; χ_a(g) = exp(2πi Σ a_i g_i / n_i).
//!
//! For abelian G = P × G' (P the Sylow p-subgroup) the simple modular modules
//! and the indecomposable projectives are both labelled by the characters of
//! G of order prime to p.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{factorize, gcd, int, is_integer, lcm, mod_inv, split_p, Rational};
use crate::error::{Error, Result};

pub type Label = Vec<u64>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct AbelianGroup {
    invariant_factors: Vec<u64>,
}

impl AbelianGroup {
    pub fn new(invariant_factors: Vec<u64>) -> Result<Self> {
        if invariant_factors.iter().any(|&n| n < 2) {
            return Err(Error::InvalidInput("invariant factors must be at least 2".into()));
        }
        if invariant_factors.windows(2).any(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidInput(format!(
                "{invariant_factors:?} is not a divisibility chain"
            )));
        }
        Ok(AbelianGroup { invariant_factors })
    }
    pub fn trivial() -> Self {
        AbelianGroup {
            invariant_factors: Vec::new(),
        }
    }
    pub fn cyclic(n: u64) -> Self {
        if n <= 1 {
            Self::trivial()
        } else {
            AbelianGroup {
                invariant_factors: vec![n],
            }
        }
    }
    /// Every abelian group of order at most `bound`, each exactly once.
    pub fn all_up_to_order(bound: u64) -> Vec<Self> {
        fn rec(prefix: &mut Vec<u64>, remaining: u64, out: &mut Vec<AbelianGroup>) {
            // next factor must be a multiple of the previous one
            out.push(AbelianGroup {
                invariant_factors: prefix.clone(),
            });
            let last = prefix.last().copied().unwrap_or(1);
            let mut n = if last == 1 { 2 } else { last };
            while n <= remaining {
                if n % last == 0 {
                    prefix.push(n);
                    rec(prefix, remaining / n, out);
                    prefix.pop();
                }
                n += 1;
            }
        }
        // Enumerate chains n_1 | n_2 | … by building from the largest factor
        // downward would also work; here each chain is built ascending.
        let mut out = Vec::new();
        rec(&mut Vec::new(), bound, &mut out);
        out
    }

    pub fn invariant_factors(&self) -> &[u64] {
        &self.invariant_factors
    }
    pub fn order(&self) -> u64 {
        self.invariant_factors.iter().product()
    }
    pub fn exponent(&self) -> u64 {
        self.invariant_factors.last().copied().unwrap_or(1)
    }
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }
    pub fn identity(&self) -> Label {
        vec![0; self.rank()]
    }
    /// All elements (equivalently all characters) in lexicographic order.
    pub fn elements(&self) -> Vec<Label> {
        let mut out = vec![Vec::new()];
        for &n in &self.invariant_factors {
            out = out
                .into_iter()
                .flat_map(|v| {
                    (0..n).map(move |a| {
                        let mut w = v.clone();
                        w.push(a);
                        w
                    })
                })
                .collect();
        }
        out
    }
    pub fn characters(&self) -> Vec<Label> {
        self.elements()
    }
    pub fn check(&self, a: &[u64]) -> Result<()> {
        if a.len() != self.rank() || a.iter().zip(&self.invariant_factors).any(|(x, n)| x >= n) {
            return Err(Error::InvalidInput(format!(
                "{a:?} is not a canonical tuple for {:?}",
                self.invariant_factors
            )));
        }
        Ok(())
    }
    pub fn normalize(&self, a: &[i64]) -> Label {
        a.iter()
            .zip(&self.invariant_factors)
            .map(|(&x, &n)| x.rem_euclid(n as i64) as u64)
            .collect()
    }
    pub fn add(&self, a: &[u64], b: &[u64]) -> Label {
        a.iter()
            .zip(b)
            .zip(&self.invariant_factors)
            .map(|((x, y), n)| (x + y) % n)
            .collect()
    }
    pub fn neg(&self, a: &[u64]) -> Label {
        a.iter()
            .zip(&self.invariant_factors)
            .map(|(x, n)| (n - x) % n)
            .collect()
    }
    pub fn scalar(&self, k: i64, a: &[u64]) -> Label {
        a.iter()
            .zip(&self.invariant_factors)
            .map(|(&x, &n)| ((x as i128 * k as i128).rem_euclid(n as i128)) as u64)
            .collect()
    }
    pub fn elem_order(&self, a: &[u64]) -> u64 {
        a.iter()
            .zip(&self.invariant_factors)
            .fold(1, |acc, (&x, &n)| lcm(acc, n / gcd(x, n)))
    }
    /// χ_a(g) = ζ_N^k with N the exponent; returns k.
    pub fn char_value(&self, a: &[u64], g: &[u64]) -> u64 {
        let big_n = self.exponent();
        a.iter()
            .zip(g)
            .zip(&self.invariant_factors)
            .fold(0u64, |acc, ((&x, &y), &n)| {
                ((acc as u128 + x as u128 * y as u128 % n as u128 * (big_n / n) as u128)
                    % big_n as u128) as u64
            })
    }
    pub fn sylow_order(&self, p: u64) -> u64 {
        split_p(self.order(), p).0
    }
    /// The prime-to-p part χ^u of a character, u ≡ 1 mod N', u ≡ 0 mod N_p.
    pub fn prime_to_p_part(&self, a: &[u64], p: u64) -> Label {
        let (np, nq) = split_p(self.exponent(), p);
        if np == 1 {
            return a.to_vec();
        }
        if nq == 1 {
            return self.identity();
        }
        // u = np · (np^{-1} mod nq)
        let u = np * mod_inv(np % nq, nq).unwrap();
        self.scalar(u as i64, a)
    }
    pub fn p_part(&self, a: &[u64], p: u64) -> Label {
        self.add(a, &self.neg(&self.prime_to_p_part(a, p)))
    }
    pub fn is_prime_to_p(&self, a: &[u64], p: u64) -> bool {
        self.elem_order(a) % p != 0
    }
    pub fn modular_labels(&self, p: u64) -> Vec<Label> {
        self.characters()
            .into_iter()
            .filter(|a| self.is_prime_to_p(a, p))
            .collect()
    }
}

impl std::fmt::Display for AbelianGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.invariant_factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self.invariant_factors.iter().map(|n| format!("Z/{n}")).collect();
        write!(f, "{}", parts.join(" x "))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GCharacter {
    pub group: AbelianGroup,
    pub exponents: Label,
}

impl GCharacter {
    pub fn new(group: &AbelianGroup, exponents: Label) -> Result<Self> {
        group.check(&exponents)?;
        Ok(GCharacter {
            group: group.clone(),
            exponents,
        })
    }
    pub fn trivial(group: &AbelianGroup) -> Self {
        GCharacter {
            group: group.clone(),
            exponents: group.identity(),
        }
    }
    pub fn all(group: &AbelianGroup) -> Vec<Self> {
        group
            .characters()
            .into_iter()
            .map(|e| GCharacter {
                group: group.clone(),
                exponents: e,
            })
            .collect()
    }
    pub fn order(&self) -> u64 {
        self.group.elem_order(&self.exponents)
    }
    pub fn is_trivial(&self) -> bool {
        self.exponents.iter().all(|&x| x == 0)
    }
    pub fn inverse(&self) -> Self {
        GCharacter {
            group: self.group.clone(),
            exponents: self.group.neg(&self.exponents),
        }
    }
    pub fn prime_to_p_part(&self, p: u64) -> Self {
        GCharacter {
            group: self.group.clone(),
            exponents: self.group.prime_to_p_part(&self.exponents, p),
        }
    }
    /// χ(g) as an element k of Z/N, N the group exponent.
    pub fn value(&self, g: &[u64]) -> u64 {
        self.group.char_value(&self.exponents, g)
    }
    pub fn is_trivial_on(&self, h: &Subgroup) -> bool {
        h.elements().iter().all(|g| self.value(g) == 0)
    }
    pub fn label(&self) -> String {
        label_string(&self.exponents)
    }
}

pub fn label_string(a: &[u64]) -> String {
    let parts: Vec<String> = a.iter().map(|x| x.to_string()).collect();
    format!("({})", parts.join(","))
}

/// A subgroup of `ambient`, with an explicit invariant-factor decomposition.
#[derive(Clone, Debug)]
pub struct Subgroup {
    ambient: AbelianGroup,
    generators: Vec<Label>,
    elements: BTreeSet<Label>,
    structure: AbelianGroup,
    basis: Vec<Label>,
    coords: HashMap<Label, Label>,
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.ambient == other.ambient && self.elements == other.elements
    }
}
impl Eq for Subgroup {}

impl Subgroup {
    pub fn generated(ambient: &AbelianGroup, generators: Vec<Label>) -> Result<Self> {
        for g in &generators {
            ambient.check(g)?;
        }
        let mut elements: BTreeSet<Label> = BTreeSet::new();
        elements.insert(ambient.identity());
        for g in &generators {
            let ord = ambient.elem_order(g);
            let current: Vec<Label> = elements.iter().cloned().collect();
            let mut step = ambient.identity();
            for _ in 1..ord {
                step = ambient.add(&step, g);
                for e in &current {
                    elements.insert(ambient.add(e, &step));
                }
            }
        }
        let (structure, basis) = decompose(ambient, &elements);
        let mut coords = HashMap::with_capacity(elements.len());
        for c in structure.elements() {
            let mut e = ambient.identity();
            for (ci, b) in c.iter().zip(&basis) {
                e = ambient.add(&e, &ambient.scalar(*ci as i64, b));
            }
            coords.insert(e, c);
        }
        debug_assert_eq!(coords.len(), elements.len());
        Ok(Subgroup {
            ambient: ambient.clone(),
            generators,
            elements,
            structure,
            basis,
            coords,
        })
    }
    pub fn full(ambient: &AbelianGroup) -> Self {
        let gens = (0..ambient.rank())
            .map(|i| {
                let mut v = ambient.identity();
                v[i] = 1;
                v
            })
            .collect();
        Self::generated(ambient, gens).unwrap()
    }
    pub fn trivial(ambient: &AbelianGroup) -> Self {
        Self::generated(ambient, Vec::new()).unwrap()
    }
    /// The unique subgroup of order `d` of a cyclic group.
    pub fn cyclic_of_order(ambient: &AbelianGroup, d: u64) -> Result<Self> {
        if ambient.rank() > 1 || ambient.order() % d != 0 {
            return Err(Error::InvalidInput(format!(
                "{ambient} has no distinguished subgroup of order {d}"
            )));
        }
        if d == 1 || ambient.rank() == 0 {
            return Ok(Self::trivial(ambient));
        }
        Self::generated(ambient, vec![vec![ambient.order() / d]])
    }
    /// All subgroups, ordered by (order, element set).
    pub fn all(ambient: &AbelianGroup) -> Vec<Self> {
        let elems = ambient.elements();
        let mut seen: BTreeSet<BTreeSet<Label>> = BTreeSet::new();
        let mut queue = vec![Self::trivial(ambient)];
        let mut out = Vec::new();
        seen.insert(queue[0].elements.clone());
        while let Some(h) = queue.pop() {
            for g in &elems {
                if h.contains(g) {
                    continue;
                }
                let mut gens = h.generators.clone();
                gens.push(g.clone());
                let k = Self::generated(ambient, gens).unwrap();
                if seen.insert(k.elements.clone()) {
                    queue.push(k);
                }
            }
            out.push(h);
        }
        out.sort_by(|a, b| (a.order(), &a.elements).cmp(&(b.order(), &b.elements)));
        out
    }

    pub fn ambient(&self) -> &AbelianGroup {
        &self.ambient
    }
    pub fn generators(&self) -> &[Label] {
        &self.generators
    }
    pub fn elements(&self) -> &BTreeSet<Label> {
        &self.elements
    }
    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }
    pub fn index(&self) -> u64 {
        self.ambient.order() / self.order()
    }
    /// Abstract isomorphism type of the subgroup.
    pub fn structure(&self) -> &AbelianGroup {
        &self.structure
    }
    /// Ambient elements realizing the standard generators of `structure`.
    pub fn basis(&self) -> &[Label] {
        &self.basis
    }
    pub fn contains(&self, g: &[u64]) -> bool {
        self.elements.contains(g)
    }
    pub fn coordinates(&self, g: &[u64]) -> Option<&Label> {
        self.coords.get(g)
    }
    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.ambient == other.ambient && self.elements.is_subset(&other.elements)
    }
    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        let common: Vec<Label> = self.elements.intersection(&other.elements).cloned().collect();
        Self::generated(&self.ambient, common).unwrap()
    }
    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Self::generated(&self.ambient, gens).unwrap()
    }
    /// Elements of p-power order.
    pub fn sylow(&self, p: u64) -> Subgroup {
        let gens = self
            .elements
            .iter()
            .filter(|g| split_p(self.ambient.elem_order(g), p).1 == 1)
            .cloned()
            .collect();
        Self::generated(&self.ambient, gens).unwrap()
    }
    /// Elements of order prime to p.
    pub fn prime_to_p(&self, p: u64) -> Subgroup {
        let gens = self
            .elements
            .iter()
            .filter(|g| self.ambient.elem_order(g) % p != 0)
            .cloned()
            .collect();
        Self::generated(&self.ambient, gens).unwrap()
    }
    pub fn is_cyclic(&self) -> bool {
        self.structure.rank() <= 1
    }
    /// `self` (contained in `outer`) as a subgroup of `outer.structure()`.
    pub fn inside(&self, outer: &Subgroup) -> Result<Subgroup> {
        if !self.is_subgroup_of(outer) {
            return Err(Error::NotSubgroup("not contained in the outer subgroup".into()));
        }
        let gens = self
            .generators
            .iter()
            .map(|g| outer.coords[g].clone())
            .collect();
        Subgroup::generated(outer.structure(), gens)
    }
    /// Restriction of a character of the ambient group, in `structure` coordinates.
    pub fn restrict_character(&self, a: &[u64]) -> Label {
        let big_n = self.ambient.exponent();
        self.basis
            .iter()
            .zip(self.structure.invariant_factors())
            .map(|(b, &d)| {
                let k = self.ambient.char_value(a, b);
                debug_assert_eq!((k * d) % big_n, 0);
                k * d / big_n
            })
            .collect()
    }
}

/// Invariant-factor decomposition of a finite subgroup given by its elements.
fn decompose(g: &AbelianGroup, elements: &BTreeSet<Label>) -> (AbelianGroup, Vec<Label>) {
    let n = elements.len() as u64;
    // per prime: list of (order, generator), descending by order
    let mut per_prime: Vec<Vec<(u64, Label)>> = Vec::new();
    for (l, _) in factorize(n) {
        let h_l: Vec<&Label> = elements
            .iter()
            .filter(|e| split_p(g.elem_order(e), l).1 == 1)
            .collect();
        let mut span: BTreeSet<Label> = BTreeSet::new();
        span.insert(g.identity());
        let mut chosen = Vec::new();
        while span.len() < h_l.len() {
            // element of maximal order modulo the current span
            let order_mod = |x: &Label| {
                let mut k = 1;
                let mut y = x.clone();
                while !span.contains(&y) {
                    y = g.add(&y, x);
                    k += 1;
                }
                k
            };
            let (o, x) = h_l
                .iter()
                .map(|x| (order_mod(x), (*x).clone()))
                .max_by(|a, b| a.0.cmp(&b.0).then_with(|| b.1.cmp(&a.1)))
                .unwrap();
            let y = span
                .iter()
                .map(|s| g.add(&x, s))
                .find(|y| g.elem_order(y) == o)
                .expect("a lift of the same order exists");
            let mut next = BTreeSet::new();
            let mut step = g.identity();
            for _ in 0..o {
                for s in &span {
                    next.insert(g.add(s, &step));
                }
                step = g.add(&step, &y);
            }
            span = next;
            chosen.push((o, y));
        }
        per_prime.push(chosen);
    }
    let k = per_prime.iter().map(|v| v.len()).max().unwrap_or(0);
    let mut factors = Vec::with_capacity(k);
    let mut basis = Vec::with_capacity(k);
    for i in 0..k {
        let mut ord = 1;
        let mut gen = g.identity();
        for list in &per_prime {
            if let Some((o, y)) = list.get(i) {
                ord *= o;
                gen = g.add(&gen, y);
            }
        }
        factors.push(ord);
        basis.push(gen);
    }
    factors.reverse();
    basis.reverse();
    (
        AbelianGroup {
            invariant_factors: factors,
        },
        basis,
    )
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Level {
    CharZero,
    ModularModules,
    ModularProjectives,
}

impl std::fmt::Display for Level {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            Level::CharZero => "CharZero",
            Level::ModularModules => "ModularModules",
            Level::ModularProjectives => "ModularProjectives",
        };
        write!(f, "{s}")
    }
}

/// Rational combination of basis classes at one level of the cde triangle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct K0Element {
    group: AbelianGroup,
    prime: u64,
    level: Level,
    coeffs: BTreeMap<Label, Rational>,
}

impl K0Element {
    pub fn zero(group: &AbelianGroup, prime: u64, level: Level) -> Self {
        K0Element {
            group: group.clone(),
            prime,
            level,
            coeffs: BTreeMap::new(),
        }
    }
    pub fn basis_element(group: &AbelianGroup, prime: u64, level: Level, label: Label) -> Result<Self> {
        let mut x = Self::zero(group, prime, level);
        x.add_term(label, int(1))?;
        Ok(x)
    }
    pub fn legal_labels(&self) -> Vec<Label> {
        match self.level {
            Level::CharZero => self.group.characters(),
            _ => self.group.modular_labels(self.prime),
        }
    }
    fn check_label(&self, label: &[u64]) -> Result<()> {
        self.group.check(label)?;
        if self.level != Level::CharZero && !self.group.is_prime_to_p(label, self.prime) {
            return Err(Error::InvalidInput(format!(
                "{} is not a prime-to-{} label",
                label_string(label),
                self.prime
            )));
        }
        Ok(())
    }
    pub fn add_term(&mut self, label: Label, c: Rational) -> Result<()> {
        self.check_label(&label)?;
        let entry = self.coeffs.entry(label.clone()).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&label);
        }
        Ok(())
    }
    /// Σ of every basis class with coefficient `c`.
    pub fn constant(group: &AbelianGroup, prime: u64, level: Level, c: Rational) -> Self {
        let mut x = Self::zero(group, prime, level);
        if !c.is_zero() {
            for l in x.legal_labels() {
                x.coeffs.insert(l, c.clone());
            }
        }
        x
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }
    pub fn prime(&self) -> u64 {
        self.prime
    }
    pub fn level(&self) -> Level {
        self.level
    }
    pub fn coefficient(&self, label: &[u64]) -> Rational {
        self.coeffs.get(label).cloned().unwrap_or_else(Rational::zero)
    }
    pub fn terms(&self) -> impl Iterator<Item = (&Label, &Rational)> {
        self.coeffs.iter()
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    pub fn is_integral(&self) -> bool {
        self.coeffs.values().all(is_integer)
    }
    /// Σ of coefficients (the rank for CharZero and ModularModules).
    pub fn total(&self) -> Rational {
        self.coeffs.values().fold(Rational::zero(), |a, b| a + b)
    }

    fn compatible(&self, other: &Self) -> Result<()> {
        if self.group != other.group || self.prime != other.prime {
            return Err(Error::GroupMismatch(format!("{} vs {}", self.group, other.group)));
        }
        if self.level != other.level {
            return Err(Error::Level {
                expected: self.level.to_string(),
                found: other.level.to_string(),
            });
        }
        Ok(())
    }
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.compatible(other)?;
        let mut out = self.clone();
        for (l, c) in &other.coeffs {
            out.add_term(l.clone(), c.clone())?;
        }
        Ok(out)
    }
    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(&-int(1)))
    }
    pub fn scale(&self, k: &Rational) -> Self {
        let mut out = Self::zero(&self.group, self.prime, self.level);
        if !k.is_zero() {
            out.coeffs = self.coeffs.iter().map(|(l, c)| (l.clone(), c * k)).collect();
        }
        out
    }
    fn expect_level(&self, level: Level) -> Result<()> {
        if self.level != level {
            return Err(Error::Level {
                expected: level.to_string(),
                found: self.level.to_string(),
            });
        }
        Ok(())
    }
}

impl std::fmt::Display for K0Element {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .coeffs
            .iter()
            .map(|(l, c)| format!("{}*[{}]", crate::arith::fmt_rat(c), label_string(l)))
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

pub fn decomposition_map(x: &K0Element) -> Result<K0Element> {
    x.expect_level(Level::CharZero)?;
    let mut out = K0Element::zero(&x.group, x.prime, Level::ModularModules);
    for (l, c) in &x.coeffs {
        out.add_term(x.group.prime_to_p_part(l, x.prime), c.clone())?;
    }
    Ok(out)
}

pub fn cartan_map(x: &K0Element) -> Result<K0Element> {
    x.expect_level(Level::ModularProjectives)?;
    let s = int(x.group.sylow_order(x.prime) as i64);
    let mut out = x.scale(&s);
    out.level = Level::ModularModules;
    Ok(out)
}

pub fn e_map(x: &K0Element) -> Result<K0Element> {
    x.expect_level(Level::ModularProjectives)?;
    let mut fibers: BTreeMap<Label, Vec<Label>> = BTreeMap::new();
    for a in x.group.characters() {
        fibers
            .entry(x.group.prime_to_p_part(&a, x.prime))
            .or_default()
            .push(a);
    }
    let mut out = K0Element::zero(&x.group, x.prime, Level::CharZero);
    for (l, c) in &x.coeffs {
        for a in &fibers[l] {
            out.add_term(a.clone(), c.clone())?;
        }
    }
    Ok(out)
}

/// ⟨x, y⟩ on CharZero, or the perfect pairing between projectives and
/// modules (in either order).
pub fn pairing(x: &K0Element, y: &K0Element) -> Result<Rational> {
    if x.group != y.group || x.prime != y.prime {
        return Err(Error::GroupMismatch(format!("{} vs {}", x.group, y.group)));
    }
    let ok = matches!(
        (x.level, y.level),
        (Level::CharZero, Level::CharZero)
            | (Level::ModularProjectives, Level::ModularModules)
            | (Level::ModularModules, Level::ModularProjectives)
    );
    if !ok {
        return Err(Error::Level {
            expected: format!("{} partner", x.level),
            found: y.level.to_string(),
        });
    }
    Ok(x.coeffs
        .iter()
        .filter_map(|(l, c)| y.coeffs.get(l).map(|d| c * d))
        .fold(Rational::zero(), |a, b| a + b))
}

fn check_subgroup(x: &K0Element, h: &Subgroup) -> Result<()> {
    if h.ambient() != &x.group {
        return Err(Error::NotSubgroup(format!(
            "subgroup of {} used with an element over {}",
            h.ambient(),
            x.group
        )));
    }
    Ok(())
}

/// Restriction to H; the result lives over `h.structure()`.
pub fn restrict(x: &K0Element, h: &Subgroup) -> Result<K0Element> {
    check_subgroup(x, h)?;
    let mut out = K0Element::zero(h.structure(), x.prime, x.level);
    let factor = match x.level {
        Level::ModularProjectives => {
            int((x.group.sylow_order(x.prime) / h.structure().sylow_order(x.prime)) as i64)
        }
        _ => Rational::one(),
    };
    for (l, c) in &x.coeffs {
        out.add_term(h.restrict_character(l), c * &factor)?;
    }
    Ok(out)
}

/// Induction from H (θ over `h.structure()`) to the ambient group.
pub fn induce(theta: &K0Element, h: &Subgroup) -> Result<K0Element> {
    if theta.group != *h.structure() {
        return Err(Error::GroupMismatch(format!(
            "element over {} induced from a subgroup of type {}",
            theta.group,
            h.structure()
        )));
    }
    let g = h.ambient();
    let p = theta.prime;
    let mut out = K0Element::zero(g, p, theta.level);
    let candidates = match theta.level {
        Level::CharZero => g.characters(),
        _ => g.modular_labels(p),
    };
    let factor = match theta.level {
        Level::ModularModules => int((g.sylow_order(p) / h.structure().sylow_order(p)) as i64),
        _ => Rational::one(),
    };
    let mut by_restriction: BTreeMap<Label, Vec<Label>> = BTreeMap::new();
    for a in candidates {
        by_restriction.entry(h.restrict_character(&a)).or_default().push(a);
    }
    for (l, c) in &theta.coeffs {
        if let Some(list) = by_restriction.get(l) {
            for a in list {
                out.add_term(a.clone(), c * &factor)?;
            }
        }
    }
    Ok(out)
}
