//! Degree-truncated reduced Gröbner bases of homogeneous ideals.
//!
//! Buchberger's algorithm with the normal selection strategy: S-pairs are
//! processed in ascending degree of their lcm, so after finishing degree `t`
//! the basis is complete in every degree `<= t`. Pairs are pruned with the
//! Gebauer–Möller criteria. Reduction works on dense coefficient vectors
//! indexed by the degrevlex rank of each monomial within its degree.

use std::collections::HashMap;
use std::rc::Rc;

use serde::{Deserialize, Serialize};

use super::field::PrimeField;
use super::ideal::MonomialIdeal;
use super::monomial::{monomials_of_degree, Monomial, MonomialIndexer};
use super::polynomial::Polynomial;
use crate::error::{Error, Result};

const NO_REDUCER: u32 = u32::MAX;

/// A reduced Gröbner basis, valid in degrees `<= degree_cap`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroebnerBasis {
    field: PrimeField,
    nvars: usize,
    /// Monic, reduced, sorted by leading monomial (decreasing).
    elements: Vec<Polynomial>,
    degree_cap: u32,
    complete_below_cap: bool,
    /// No pair or generator was left unprocessed above the cap, so the
    /// basis is a Gröbner basis in every degree.
    exhaustive: bool,
}

impl GroebnerBasis {
    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn degree_cap(&self) -> u32 {
        self.degree_cap
    }

    pub fn complete_below_cap(&self) -> bool {
        self.complete_below_cap
    }

    pub fn is_exhaustive(&self) -> bool {
        self.exhaustive
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elements
            .iter()
            .map(|e| e.leading_monomial().expect("nonzero"))
            .collect()
    }

    /// The initial ideal generated by the leading monomials. For a reduced
    /// basis these are already minimal.
    pub fn initial_ideal(&self) -> MonomialIdeal {
        let leads = self.leading_monomials();
        let ideal = MonomialIdeal::new(self.nvars, leads.iter().copied());
        debug_assert_eq!(ideal.generators().len(), leads.len());
        ideal
    }

    pub fn reducer(&self) -> Reducer {
        Reducer::new(
            self.field,
            self.nvars,
            self.elements.clone(),
            self.degree_cap,
        )
    }

    /// Remainder of a homogeneous `f` modulo the basis.
    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.reducer().normal_form(f)
    }
}

/// Reduction state: the basis elements, per-degree monomial listings, and
/// per-degree tables naming a basis element whose leading monomial divides
/// each monomial.
pub struct Reducer {
    field: PrimeField,
    nvars: usize,
    cap: u32,
    elements: Vec<Polynomial>,
    leads: Vec<Monomial>,
    indexer: MonomialIndexer,
    listings: HashMap<u32, Rc<Vec<Monomial>>>,
    tables: HashMap<u32, Vec<u32>>,
}

impl Reducer {
    fn new(field: PrimeField, nvars: usize, elements: Vec<Polynomial>, cap: u32) -> Self {
        let leads = elements
            .iter()
            .map(|e| e.leading_monomial().expect("nonzero"))
            .collect();
        Self {
            field,
            nvars,
            cap,
            elements,
            leads,
            indexer: MonomialIndexer::new(nvars, cap.max(1)),
            listings: HashMap::new(),
            tables: HashMap::new(),
        }
    }

    pub fn degree_cap(&self) -> u32 {
        self.cap
    }

    pub fn field(&self) -> PrimeField {
        self.field
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    /// Monomials of degree `t`, decreasing; position equals rank.
    pub fn listing(&mut self, t: u32) -> Rc<Vec<Monomial>> {
        let nvars = self.nvars;
        self.listings
            .entry(t)
            .or_insert_with(|| Rc::new(monomials_of_degree(nvars, t)))
            .clone()
    }

    fn ensure(&mut self, t: u32) {
        let listing = self.listing(t);
        if self.tables.contains_key(&t) {
            return;
        }
        let table = listing
            .iter()
            .map(|m| {
                self.leads
                    .iter()
                    .position(|l| l.divides(m))
                    .map_or(NO_REDUCER, |i| i as u32)
            })
            .collect();
        self.tables.insert(t, table);
    }

    fn push(&mut self, p: Polynomial) {
        let lead = p.leading_monomial().expect("nonzero");
        let t = lead.degree();
        let idx = self.elements.len() as u32;
        self.elements.push(p);
        self.leads.push(lead);
        if let Some(table) = self.tables.get_mut(&t) {
            let r = self.indexer.rank(&lead);
            if table[r] == NO_REDUCER {
                table[r] = idx;
            }
        }
        self.tables.retain(|&d, _| d <= t);
    }

    fn dense(&self, t: u32, f: &Polynomial) -> Vec<u32> {
        let mut v = vec![0u32; self.indexer.count(t)];
        for &(c, m) in f.terms() {
            v[self.indexer.rank(&m)] = c;
        }
        v
    }

    fn sparse(&self, listing: &[Monomial], v: &[u32]) -> Polynomial {
        let terms = v
            .iter()
            .zip(listing)
            .filter(|(c, _)| **c != 0)
            .map(|(&c, &m)| (c, m))
            .collect();
        Polynomial::from_sorted_terms(self.nvars, terms)
    }

    /// Full reduction of a dense degree-`t` vector; `ensure(t)` must have run.
    fn reduce_dense(&self, t: u32, listing: &[Monomial], v: &mut [u32]) {
        let f = self.field;
        let table = &self.tables[&t];
        for idx in 0..v.len() {
            let c = v[idx];
            if c == 0 {
                continue;
            }
            let r = table[idx];
            if r == NO_REDUCER {
                continue;
            }
            let g = &self.elements[r as usize];
            let q = listing[idx].div(&self.leads[r as usize]).expect("divides");
            v[idx] = 0;
            for &(gc, gm) in &g.terms()[1..] {
                let j = self.indexer.rank(&gm.mul(&q));
                v[j] = f.sub_mul(v[j], c, gc);
            }
        }
    }

    /// Remainder of a homogeneous `f` of degree at most the cap.
    pub fn normal_form(&mut self, f: &Polynomial) -> Result<Polynomial> {
        if f.nvars() != self.nvars {
            return Err(Error::DimensionMismatch {
                left: self.nvars,
                right: f.nvars(),
            });
        }
        if !f.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
        let Some(t) = f.degree() else {
            return Ok(f.clone());
        };
        if t > self.cap {
            return Err(Error::DegreeAboveCap {
                degree: t,
                cap: self.cap,
            });
        }
        self.ensure(t);
        let listing = self.listing(t);
        let mut v = self.dense(t, f);
        self.reduce_dense(t, &listing, &mut v);
        Ok(self.sparse(&listing, &v))
    }

    /// Dense coefficient vector of the normal form of `m * f`, indexed by
    /// rank within its degree.
    pub fn normal_form_dense(&mut self, m: &Monomial, f: &Polynomial) -> Result<(u32, Vec<u32>)> {
        let shifted = f.mul_monomial(m);
        let t = shifted.degree().unwrap_or(m.degree());
        if t > self.cap {
            return Err(Error::DegreeAboveCap {
                degree: t,
                cap: self.cap,
            });
        }
        self.ensure(t);
        let listing = self.listing(t);
        let mut v = self.dense(t, &shifted);
        self.reduce_dense(t, &listing, &mut v);
        Ok((t, v))
    }

    pub fn rank_of(&self, m: &Monomial) -> usize {
        self.indexer.rank(m)
    }
}

#[derive(Clone, Copy, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Gebauer–Möller update of the pending pairs for a new element `h` (index
/// `h_idx`, already appended to `leads`).
fn update_pairs(leads: &[Monomial], pending: &mut Vec<Pair>, h_idx: usize) {
    let h = leads[h_idx];
    let mut candidates: Vec<Pair> = (0..h_idx)
        .map(|g| Pair {
            i: g,
            j: h_idx,
            lcm: h.lcm(&leads[g]),
        })
        .collect();

    // Chain criterion among the new pairs; coprime pairs are kept here so
    // they can shadow others, then dropped by the product criterion.
    let mut kept: Vec<Pair> = Vec::new();
    while let Some(p) = candidates.pop() {
        let coprime = h.is_coprime(&leads[p.i]);
        let shadowed = candidates
            .iter()
            .chain(kept.iter())
            .any(|q| q.lcm.divides(&p.lcm));
        if coprime || !shadowed {
            kept.push(p);
        }
    }
    kept.retain(|p| !h.is_coprime(&leads[p.i]));

    pending.retain(|p| {
        !(h.divides(&p.lcm) && h.lcm(&leads[p.i]) != p.lcm && h.lcm(&leads[p.j]) != p.lcm)
    });
    pending.extend(kept);
}

/// Reduced Gröbner basis of the ideal generated by `gens`, complete in all
/// degrees `<= cap`.
pub fn groebner(field: PrimeField, gens: &[Polynomial], cap: u32) -> Result<GroebnerBasis> {
    let nvars = gens.first().map_or(0, Polynomial::nvars);
    for g in gens {
        if g.nvars() != nvars {
            return Err(Error::DimensionMismatch {
                left: nvars,
                right: g.nvars(),
            });
        }
        if g.is_zero() {
            return Err(Error::Precondition("zero generator".into()));
        }
        if !g.is_homogeneous() {
            return Err(Error::NotHomogeneous);
        }
    }

    let mut red = Reducer::new(field, nvars, Vec::new(), cap);
    let mut pending: Vec<Pair> = Vec::new();
    let mut inputs: Vec<&Polynomial> = gens.iter().collect();
    inputs.sort_by_key(|g| g.degree());

    let start = inputs.first().and_then(|g| g.degree()).unwrap_or(0);
    let mut next_input = 0;
    for t in start..=cap {
        red.ensure(t);
        let listing = red.listing(t);

        while next_input < inputs.len() && inputs[next_input].degree() == Some(t) {
            let mut v = red.dense(t, inputs[next_input]);
            next_input += 1;
            red.reduce_dense(t, &listing, &mut v);
            insert(&mut red, &mut pending, field, &listing, &v);
        }

        while let Some(pos) = pending.iter().position(|p| p.lcm.degree() == t) {
            let pair = pending.swap_remove(pos);
            let mut v = vec![0u32; listing.len()];
            for (idx, sign) in [(pair.i, 1u32), (pair.j, field.neg(1))] {
                let g = &red.elements[idx];
                let q = pair.lcm.div(&red.leads[idx]).expect("lcm is a multiple");
                for &(c, m) in g.terms() {
                    let r = red.indexer.rank(&m.mul(&q));
                    v[r] = field.add(v[r], field.mul(sign, c));
                }
            }
            red.reduce_dense(t, &listing, &mut v);
            insert(&mut red, &mut pending, field, &listing, &v);
        }
    }
    let exhaustive = pending.is_empty() && next_input == inputs.len();

    // Tail-reduce; leading monomials are already minimal because each new
    // element is reduced against everything of lower or equal degree.
    let mut elements = Vec::with_capacity(red.elements.len());
    for k in 0..red.elements.len() {
        let lead = red.leads[k];
        let t = lead.degree();
        red.ensure(t);
        let listing = red.listing(t);
        let mut v = red.dense(t, &red.elements[k]);
        v[red.indexer.rank(&lead)] = 0;
        red.reduce_dense(t, &listing, &mut v);
        v[red.indexer.rank(&lead)] = 1;
        elements.push(red.sparse(&listing, &v));
    }
    elements.sort_by_key(|e| std::cmp::Reverse(e.leading_monomial()));

    Ok(GroebnerBasis {
        field,
        nvars,
        elements,
        degree_cap: cap,
        complete_below_cap: true,
        exhaustive,
    })
}

fn insert(
    red: &mut Reducer,
    pending: &mut Vec<Pair>,
    field: PrimeField,
    listing: &[Monomial],
    v: &[u32],
) {
    let h = red.sparse(listing, v);
    if h.is_zero() {
        return;
    }
    let h = h.monic(field);
    red.push(h);
    update_pairs(&red.leads, pending, red.leads.len() - 1);
}
