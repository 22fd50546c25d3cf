//! Elements of the enveloping algebra localized at the mass Casimir.
//!
//! An [`Element`] is a finite sum of PBW-ordered words with polynomial
//! coefficients, divided by a single overall power of the central element
//! `M² = P_μP^μ`:
//!
//! ```text
//! E = (1/M²)^k · Σ_w  c_w(a, θ) · w
//! ```
//!
//! `M²` is central, so the denominator power can be tracked as a plain
//! counter. Sums and equality tests first bring both sides to a common
//! power by *multiplying the numerator* of the lower side with `M²`
//! (cross-multiplication); nothing is ever divided and common `M²` factors
//! are never cancelled automatically, so every decision is an exact
//! polynomial identity in the PBW basis.
//!
//! Normal ordering rewrites an arbitrary word into the PBW basis (all `J`
//! before all `P`, lexicographic within each kind) by repeatedly swapping
//! adjacent out-of-order generators `x·y → y·x + [x,y]`; the bracket comes
//! from a [`BracketProvider`] so consistency tests can mutate it.

use std::collections::BTreeMap;

use smallvec::SmallVec;

use crate::bracket::BracketProvider;
use crate::gens::{eta, Gen};
use crate::params::Poly;
use crate::scalar::{self, Scalar};

/// A product of generators. In normal form the word is sorted.
pub type Word = SmallVec<[Gen; 8]>;

/// Localized enveloping-algebra element in PBW normal form.
#[derive(Clone, Debug)]
pub struct Element {
    /// Power `k` of the overall `(1/M²)^k` prefactor.
    denom_pow: u32,
    /// PBW words with nonzero polynomial coefficients.
    terms: BTreeMap<Word, Poly>,
}

impl Element {
    /// The zero element (at denominator power 0).
    pub fn zero() -> Element {
        Element {
            denom_pow: 0,
            terms: BTreeMap::new(),
        }
    }

    /// The unit element.
    pub fn one() -> Element {
        Element::from_poly(Poly::one())
    }

    /// A scalar multiple of the unit.
    pub fn scalar(c: Scalar) -> Element {
        Element::from_poly(Poly::constant(c))
    }

    /// A polynomial multiple of the unit.
    pub fn from_poly(p: Poly) -> Element {
        let mut terms = BTreeMap::new();
        if !p.is_zero() {
            terms.insert(Word::new(), p);
        }
        Element {
            denom_pow: 0,
            terms,
        }
    }

    /// A single generator.
    pub fn generator(g: Gen) -> Element {
        let mut terms = BTreeMap::new();
        terms.insert(Word::from_slice(&[g]), Poly::one());
        Element {
            denom_pow: 0,
            terms,
        }
    }

    /// Builds an element from parts. The word must already be normal-ordered.
    pub fn from_term(word: Word, coeff: Poly, denom_pow: u32) -> Element {
        debug_assert!(word.windows(2).all(|w| w[0] <= w[1]));
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(word, coeff);
        }
        Element { denom_pow, terms }
    }

    /// The `(1/M²)` power.
    pub fn denom_pow(&self) -> u32 {
        self.denom_pow
    }

    /// Numerator terms in canonical word order.
    pub fn terms(&self) -> impl Iterator<Item = (&Word, &Poly)> {
        self.terms.iter()
    }

    /// Number of numerator terms.
    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// True iff the element is exactly zero.
    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplies by `(1/M²)^k` (raises the denominator power).
    pub fn over_m2(mut self, k: u32) -> Element {
        self.denom_pow += k;
        self
    }

    /// Adds `coeff · word` into the numerator (at the current denominator).
    fn accumulate(&mut self, word: Word, coeff: &Poly) {
        if coeff.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(word) {
            Entry::Vacant(v) => {
                v.insert(coeff.clone());
            }
            Entry::Occupied(mut o) => {
                o.get_mut().add_assign(coeff);
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Multiplies every numerator word by `(M²)^k`, leaving the denominator
    /// power unchanged. `M² = Σ_μ η^{μμ} P_μP_μ` contains only momenta, which
    /// commute exactly, so the product is a sorted insertion — no rewriting.
    fn numerator_times_m2(&self, k: u32, d: u8) -> Element {
        let mut out = self.clone();
        for _ in 0..k {
            let mut next = Element {
                denom_pow: out.denom_pow,
                terms: BTreeMap::new(),
            };
            for (w, c) in &out.terms {
                for mu in 0..d {
                    let mut word = w.clone();
                    let p = Gen::p(mu);
                    let pos = word.partition_point(|&g| g <= p);
                    word.insert(pos, p);
                    word.insert(pos, p);
                    next.accumulate(word, &c.scale(&scalar::int(eta(mu, mu))));
                }
            }
            out = next;
        }
        out
    }

    /// Brings `self` to denominator power `k ≥ self.denom_pow` by
    /// cross-multiplying the numerator with `M²` the matching number of
    /// times.
    pub fn at_denom(&self, k: u32, d: u8) -> Element {
        assert!(k >= self.denom_pow, "cannot lower a denominator power");
        let mut out = self.numerator_times_m2(k - self.denom_pow, d);
        out.denom_pow = k;
        out
    }

    /// Exact sum; operands are first brought to the larger denominator power.
    pub fn add(&self, other: &Element, d: u8) -> Element {
        let k = self.denom_pow.max(other.denom_pow);
        let mut out = self.at_denom(k, d);
        let rhs = other.at_denom(k, d);
        for (w, c) in &rhs.terms {
            out.accumulate(w.clone(), c);
        }
        out
    }

    /// Negation.
    pub fn neg(&self) -> Element {
        Element {
            denom_pow: self.denom_pow,
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.clone(), c.neg()))
                .collect(),
        }
    }

    /// Exact difference (cross-multiplied).
    pub fn sub(&self, other: &Element, d: u8) -> Element {
        self.add(&other.neg(), d)
    }

    /// Scales by an exact scalar.
    pub fn scale(&self, c: &Scalar) -> Element {
        use num_traits::Zero;
        if c.is_zero() {
            return Element::zero();
        }
        Element {
            denom_pow: self.denom_pow,
            terms: self
                .terms
                .iter()
                .map(|(w, p)| (w.clone(), p.scale(c)))
                .collect(),
        }
    }

    /// Scales by a polynomial in the formal parameters.
    pub fn scale_poly(&self, p: &Poly) -> Element {
        if p.is_zero() {
            return Element::zero();
        }
        let mut out = Element {
            denom_pow: self.denom_pow,
            terms: BTreeMap::new(),
        };
        for (w, c) in &self.terms {
            out.accumulate(w.clone(), &c.mul(p));
        }
        out
    }

    /// Exact product: concatenates word pairs and rewrites them to normal
    /// form with the given structure constants; denominator powers add
    /// (`M²` is central, so the prefactors pass through freely).
    pub fn mul(&self, other: &Element, provider: &dyn BracketProvider, _d: u8) -> Element {
        let mut out = Element {
            denom_pow: self.denom_pow + other.denom_pow,
            terms: BTreeMap::new(),
        };
        for (wa, pa) in &self.terms {
            for (wb, pb) in &other.terms {
                let coeff = pa.mul(pb);
                let mut concat = Word::with_capacity(wa.len() + wb.len());
                concat.extend_from_slice(wa);
                concat.extend_from_slice(wb);
                for (word, c) in normal_order(&concat, provider) {
                    out.accumulate(word, &coeff.scale(&c));
                }
            }
        }
        out
    }

    /// Exact commutator `[self, other]`.
    pub fn commutator(&self, other: &Element, provider: &dyn BracketProvider, d: u8) -> Element {
        self.mul(other, provider, d)
            .sub(&other.mul(self, provider, d), d)
    }

    /// Exact equality as localized elements, decided by cross-multiplied
    /// subtraction in the PBW basis.
    pub fn equals(&self, other: &Element, d: u8) -> bool {
        self.sub(other, d).is_zero()
    }

    /// Largest generator index mentioned (sanity checks against dimension).
    pub fn max_index(&self) -> Option<u8> {
        self.terms
            .keys()
            .flat_map(|w| w.iter().map(|g| g.max_index()))
            .max()
    }

    /// Cosmetic normalization: lowers the denominator power as far as the
    /// numerator is exactly divisible by `M²`. Engine operations never do
    /// this implicitly — equality is always decided by cross-multiplication —
    /// but explicit normal-form requests and witness rendering use it so a
    /// value like `(−i·J·M²)/M⁴` displays as `−i·J/M²`.
    pub fn reduce_denominator(mut self, d: u8) -> Element {
        while self.denom_pow > 0 {
            match divide_by_m2(&self.terms, d) {
                Some(quotient) => {
                    self.terms = quotient;
                    self.denom_pow -= 1;
                }
                None => break,
            }
        }
        if self.terms.is_empty() {
            self.denom_pow = 0;
        }
        self
    }
}

/// Splits a normal word into its Lorentz prefix and momentum exponent vector.
fn split_word(w: &Word, d: u8) -> (Word, Vec<u16>) {
    let cut = w.partition_point(|g| matches!(g, Gen::J { .. }));
    let mut exps = vec![0u16; d as usize];
    for g in &w[cut..] {
        if let Gen::P { mu } = g {
            exps[*mu as usize] += 1;
        }
    }
    (Word::from_slice(&w[..cut]), exps)
}

fn join_word(prefix: &Word, exps: &[u16]) -> Word {
    let mut w = prefix.clone();
    for (mu, &e) in exps.iter().enumerate() {
        for _ in 0..e {
            w.push(Gen::p(mu as u8));
        }
    }
    w
}

/// Attempts exact division of the numerator by `M² = Σ_μ η^{μμ}P_μP_μ`.
///
/// Momenta commute, so within each fixed Lorentz prefix the numerator is an
/// ordinary commutative polynomial in the `P_μ`; single-divisor division with
/// leading term `P_0²` (lexicographic order, unit leading coefficient)
/// decides divisibility exactly.
fn divide_by_m2(terms: &BTreeMap<Word, Poly>, d: u8) -> Option<BTreeMap<Word, Poly>> {
    if terms.is_empty() {
        return Some(BTreeMap::new());
    }
    // Group by Lorentz prefix.
    let mut groups: BTreeMap<Word, BTreeMap<Vec<u16>, Poly>> = BTreeMap::new();
    for (w, c) in terms {
        let (prefix, exps) = split_word(w, d);
        groups
            .entry(prefix)
            .or_default()
            .insert(exps, c.clone());
    }
    let mut out: BTreeMap<Word, Poly> = BTreeMap::new();
    for (prefix, mut rem) in groups {
        while let Some((exps, coeff)) = rem.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            // Leading (lex-largest) term must be divisible by P_0².
            if exps[0] < 2 {
                return None;
            }
            let mut q = exps.clone();
            q[0] -= 2;
            // Subtract (coeff · q-monomial) · M² from the remainder; the μ=0
            // contribution cancels the leading term exactly.
            for mu in 0..d as usize {
                let mut t = q.clone();
                t[mu] += 2;
                let delta = coeff.scale(&scalar::int(-eta(mu as u8, mu as u8)));
                let emptied = {
                    let entry = rem.entry(t.clone()).or_insert_with(Poly::zero);
                    entry.add_assign(&delta);
                    entry.is_zero()
                };
                if emptied {
                    rem.remove(&t);
                }
            }
            let word = join_word(&prefix, &q);
            let emptied = {
                let slot = out.entry(word.clone()).or_insert_with(Poly::zero);
                slot.add_assign(&coeff);
                slot.is_zero()
            };
            if emptied {
                out.remove(&word);
            }
        }
    }
    Some(out)
}

/// Rewrites an arbitrary word into the PBW basis: returns the normal-form
/// expansion as `word → scalar` (the bracket of two generators is a scalar
/// combination of generators, so coefficients stay scalar here).
pub fn normal_order(word: &[Gen], provider: &dyn BracketProvider) -> BTreeMap<Word, Scalar> {
    let mut result: BTreeMap<Word, Scalar> = BTreeMap::new();
    let mut work: Vec<(Word, Scalar)> = vec![(Word::from_slice(word), scalar::one())];
    while let Some((w, c)) = work.pop() {
        // Find the first adjacent out-of-order pair.
        match w.windows(2).position(|pair| pair[0] > pair[1]) {
            None => {
                let entry = result.entry(w).or_insert_with(scalar::zero);
                *entry += c;
            }
            Some(i) => {
                let x = w[i];
                let y = w[i + 1];
                // x·y = y·x + [x,y]
                let mut swapped = w.clone();
                swapped.swap(i, i + 1);
                work.push((swapped, c.clone()));
                for (g, bc) in provider.bracket(x, y) {
                    let mut reduced = Word::with_capacity(w.len() - 1);
                    reduced.extend_from_slice(&w[..i]);
                    reduced.push(g);
                    reduced.extend_from_slice(&w[i + 2..]);
                    work.push((reduced, c.clone() * bc));
                }
            }
        }
    }
    result.retain(|_, c| !num_traits::Zero::is_zero(c));
    result
}
