//! Graded vector spaces, signed graded-commutative monomials, and the
//! combinatorial basis enumeration they support.
//!
//! Generators live in one of two spaces, `V` or `W`, each graded by a
//! non-negative homological degree. A free graded-commutative algebra on
//! them treats even-degree generators as polynomial variables and
//! odd-degree generators as exterior ones; reordering a product picks up
//! the Koszul sign `(-1)^{deg(x) deg(y)}` per transposition, and the square
//! of an odd generator vanishes. Monomials are kept in a canonical sorted
//! form and never carry signs themselves; signs live in chain
//! coefficients, so basis indexing stays sign-free.

mod matrix;

pub use matrix::SparseRationalMatrix;

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// Which of the two graded spaces a generator belongs to. `V` sorts before
/// `W` in the canonical generator order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Space {
    V,
    W,
}

/// Identifier of a generator inside one [`GeneratorTable`].
///
/// Ids are positions in the table's canonical order (space, then degree,
/// then index), so their numeric order *is* the canonical monomial order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GenId(pub u32);

impl GenId {
    fn idx(self) -> usize {
        self.0 as usize
    }
}

/// One basis generator of `V` or `W`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorInfo {
    pub id: GenId,
    pub space: Space,
    /// Homological degree after suspension.
    pub degree: usize,
    /// Cohomological degree of the underlying compactly supported class.
    pub src_deg: usize,
    /// Ordinal within the (space, degree) slot, 0-based.
    pub index: usize,
}

impl GeneratorInfo {
    pub fn is_odd(&self) -> bool {
        self.degree % 2 == 1
    }
}

/// The set of generators in play, in canonical order.
#[derive(Debug, Clone, Default)]
pub struct GeneratorTable {
    gens: Vec<GeneratorInfo>,
}

impl GeneratorTable {
    /// Builds a table from `(space, degree, src_deg)` triples. Input order
    /// within one (space, degree) slot fixes the `index` ordinals; slots are
    /// then laid out in canonical order.
    pub fn build(specs: impl IntoIterator<Item = (Space, usize, usize)>) -> Self {
        let mut specs: Vec<(Space, usize, usize)> = specs.into_iter().collect();
        specs.sort_by_key(|&(space, degree, _)| (space, degree));
        let mut gens = Vec::with_capacity(specs.len());
        let mut slot: Option<(Space, usize)> = None;
        let mut index = 0;
        for (pos, (space, degree, src_deg)) in specs.into_iter().enumerate() {
            if slot != Some((space, degree)) {
                slot = Some((space, degree));
                index = 0;
            }
            gens.push(GeneratorInfo {
                id: GenId(pos as u32),
                space,
                degree,
                src_deg,
                index,
            });
            index += 1;
        }
        GeneratorTable { gens }
    }

    pub fn get(&self, id: GenId) -> Result<&GeneratorInfo> {
        self.gens.get(id.idx()).ok_or(Error::UnknownGenerator(id))
    }

    pub fn degree(&self, id: GenId) -> Result<usize> {
        Ok(self.get(id)?.degree)
    }

    pub fn len(&self) -> usize {
        self.gens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &GeneratorInfo> {
        self.gens.iter()
    }

    pub fn ids_in(&self, space: Space) -> Vec<GenId> {
        self.gens
            .iter()
            .filter(|g| g.space == space)
            .map(|g| g.id)
            .collect()
    }

    /// Finds the generator with the given coordinates, if present.
    pub fn lookup(&self, space: Space, degree: usize, index: usize) -> Option<GenId> {
        self.gens
            .iter()
            .find(|g| g.space == space && g.degree == degree && g.index == index)
            .map(|g| g.id)
    }

    /// Short name like `v0`, `v1.2`, `w3` (index shown 1-based, omitted for
    /// the first generator of a slot). Used in human-readable output only.
    pub fn name(&self, id: GenId) -> String {
        match self.get(id) {
            Ok(g) => {
                let letter = match g.space {
                    Space::V => 'v',
                    Space::W => 'w',
                };
                if g.index == 0 {
                    format!("{letter}{}", g.degree)
                } else {
                    format!("{letter}{}.{}", g.degree, g.index + 1)
                }
            }
            Err(_) => format!("?{}", id.0),
        }
    }

    pub fn format_monomial(&self, m: &Monomial) -> String {
        if m.is_unit() {
            return "1".to_string();
        }
        let mut parts = Vec::new();
        let mut run: Option<(GenId, usize)> = None;
        let flush = |run: &mut Option<(GenId, usize)>, parts: &mut Vec<String>| {
            if let Some((id, mult)) = run.take() {
                if mult == 1 {
                    parts.push(self.name(id));
                } else {
                    parts.push(format!("{}^{}", self.name(id), mult));
                }
            }
        };
        for &id in m.v_factors().iter().chain(m.w_factors()) {
            match &mut run {
                Some((prev, mult)) if *prev == id => *mult += 1,
                _ => {
                    flush(&mut run, &mut parts);
                    run = Some((id, 1));
                }
            }
        }
        flush(&mut run, &mut parts);
        parts.join("*")
    }
}

/// A canonical-form product of `V` and `W` generators.
///
/// Factors are stored sorted, with multiplicity by repetition. Degree is the
/// sum of factor degrees, weight counts `W`-factors, and length counts
/// `V`-factors once and `W`-factors twice.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    v_factors: Vec<GenId>,
    w_factors: Vec<GenId>,
    degree: usize,
    weight: usize,
    length: usize,
}

impl Monomial {
    pub fn unit() -> Self {
        Monomial {
            v_factors: Vec::new(),
            w_factors: Vec::new(),
            degree: 0,
            weight: 0,
            length: 0,
        }
    }

    /// Assembles a monomial from factor lists that are already sorted and
    /// respect the exterior constraint. Callers that start from arbitrary
    /// sequences go through [`koszul_canonicalize`] instead.
    fn from_sorted_parts(table: &GeneratorTable, v: Vec<GenId>, w: Vec<GenId>) -> Result<Self> {
        let mut degree = 0;
        for &id in v.iter().chain(&w) {
            degree += table.degree(id)?;
        }
        let weight = w.len();
        let length = v.len() + 2 * w.len();
        debug_assert!(v.windows(2).all(|p| p[0] <= p[1]));
        debug_assert!(w.windows(2).all(|p| p[0] <= p[1]));
        Ok(Monomial {
            v_factors: v,
            w_factors: w,
            degree,
            weight,
            length,
        })
    }

    /// Product of a pure-`V` monomial and a pure-`W` monomial. The factor
    /// sets are disjoint, so no sign and no exterior collision can occur.
    pub fn merge_disjoint(v_part: &Monomial, w_part: &Monomial) -> Monomial {
        debug_assert!(v_part.w_factors.is_empty() && w_part.v_factors.is_empty());
        Monomial {
            v_factors: v_part.v_factors.clone(),
            w_factors: w_part.w_factors.clone(),
            degree: v_part.degree + w_part.degree,
            weight: w_part.weight,
            length: v_part.length + w_part.length,
        }
    }

    pub fn v_factors(&self) -> &[GenId] {
        &self.v_factors
    }

    pub fn w_factors(&self) -> &[GenId] {
        &self.w_factors
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn weight(&self) -> usize {
        self.weight
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn is_unit(&self) -> bool {
        self.v_factors.is_empty() && self.w_factors.is_empty()
    }

    pub fn contains(&self, id: GenId) -> bool {
        self.v_factors.binary_search(&id).is_ok() || self.w_factors.binary_search(&id).is_ok()
    }
}

/// Sorts a factor sequence into canonical order, tracking the Koszul sign.
///
/// Each transposition of adjacent factors `x`, `y` contributes
/// `(-1)^{deg(x) deg(y)}`. The sign is `0` exactly when some odd-degree
/// generator repeats.
pub fn koszul_canonicalize(table: &GeneratorTable, factors: &[GenId]) -> Result<(i8, Monomial)> {
    let mut parities = Vec::with_capacity(factors.len());
    for &id in factors {
        parities.push(table.get(id)?.is_odd());
    }
    let mut sorted: Vec<(GenId, bool)> = Vec::with_capacity(factors.len());
    let mut negative = false;
    for (&id, &odd) in factors.iter().zip(&parities) {
        // Insert before the first strictly larger element: crossing each
        // larger factor flips the sign when both are odd.
        let pos = sorted.partition_point(|&(other, _)| other <= id);
        if odd {
            for &(_, crossed_odd) in &sorted[pos..] {
                if crossed_odd {
                    negative = !negative;
                }
            }
        }
        sorted.insert(pos, (id, odd));
    }
    for pair in sorted.windows(2) {
        if pair[0].0 == pair[1].0 && pair[0].1 {
            return Ok((0, Monomial::unit()));
        }
    }
    let mut v = Vec::new();
    let mut w = Vec::new();
    for (id, _) in sorted {
        match table.get(id)?.space {
            Space::V => v.push(id),
            Space::W => w.push(id),
        }
    }
    let monomial = Monomial::from_sorted_parts(table, v, w)?;
    Ok((if negative { -1 } else { 1 }, monomial))
}

/// Enumerates the basis of the `n`-th symmetric power on the given
/// generators: all multisets of size `n`, odd-degree generators taken at
/// most once, in lexicographic order of the sorted factor sequences.
pub fn sym_basis(table: &GeneratorTable, generators: &[GenId], n: usize) -> Result<Vec<Monomial>> {
    let mut gens: Vec<&GeneratorInfo> = Vec::with_capacity(generators.len());
    for &id in generators {
        gens.push(table.get(id)?);
    }
    gens.sort_by_key(|g| g.id);
    gens.dedup_by_key(|g| g.id);

    let mut out = Vec::new();
    let mut stack: Vec<GenId> = Vec::with_capacity(n);
    enumerate(table, &gens, n, &mut stack, &mut out)?;
    Ok(out)
}

fn enumerate(
    table: &GeneratorTable,
    gens: &[&GeneratorInfo],
    remaining: usize,
    stack: &mut Vec<GenId>,
    out: &mut Vec<Monomial>,
) -> Result<()> {
    if remaining == 0 {
        let (v, w): (Vec<GenId>, Vec<GenId>) = {
            let mut v = Vec::new();
            let mut w = Vec::new();
            for &id in stack.iter() {
                match table.get(id)?.space {
                    Space::V => v.push(id),
                    Space::W => w.push(id),
                }
            }
            (v, w)
        };
        out.push(Monomial::from_sorted_parts(table, v, w)?);
        return Ok(());
    }
    let Some((first, rest)) = gens.split_first() else {
        return Ok(());
    };
    let cap = if first.is_odd() { 1 } else { remaining };
    // Descending multiplicity of the earliest generator yields ascending
    // lexicographic order of the resulting factor sequences.
    for mult in (0..=cap.min(remaining)).rev() {
        for _ in 0..mult {
            stack.push(first.id);
        }
        enumerate(table, rest, remaining - mult, stack, out)?;
        for _ in 0..mult {
            stack.pop();
        }
    }
    Ok(())
}

/// A finite formal sum of monomials with exact rational coefficients.
///
/// Zero coefficients are never stored. All terms of one chain share degree,
/// weight, and length (the operations producing chains are homogeneous).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Chain {
    terms: BTreeMap<Monomial, Rational>,
}

impl Chain {
    pub fn zero() -> Self {
        Chain::default()
    }

    pub fn term(monomial: Monomial, coef: Rational) -> Self {
        let mut c = Chain::zero();
        c.add_term(monomial, coef);
        c
    }

    pub fn add_term(&mut self, monomial: Monomial, coef: Rational) {
        if coef.is_zero() {
            return;
        }
        debug_assert!(
            self.terms.keys().next().is_none_or(|m| {
                m.degree() == monomial.degree()
                    && m.weight() == monomial.weight()
                    && m.length() == monomial.length()
            }),
            "chain terms must be homogeneous"
        );
        use std::collections::btree_map::Entry;
        match self.terms.entry(monomial) {
            Entry::Vacant(e) => {
                e.insert(coef);
            }
            Entry::Occupied(mut e) => {
                let sum = e.get() + coef;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&mut self, other: &Chain) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, monomial: &Monomial) -> Option<&Rational> {
        self.terms.get(monomial)
    }

    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next().map(|m| m.degree())
    }
}

impl fmt::Display for Space {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Space::V => write!(f, "V"),
            Space::W => write!(f, "W"),
        }
    }
}
