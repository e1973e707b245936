//! Finite domains and patterns.

use alloc::vec::Vec;

use crate::group::{Element, Group};

/// A symbol, stored as an index into an alphabet.
pub type Sym = u16;

/// A finite set of group elements in canonical order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct FiniteDomain {
    elems: Vec<Element>,
}

impl FiniteDomain {
    pub fn new(mut elems: Vec<Element>) -> Self {
        elems.sort();
        elems.dedup();
        FiniteDomain { elems }
    }

    pub(crate) fn from_sorted(elems: Vec<Element>) -> Self {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]));
        FiniteDomain { elems }
    }

    pub fn singleton(e: Element) -> Self {
        FiniteDomain { elems: alloc::vec![e] }
    }

    /// The interval `[lo, hi]` of the line.
    pub fn interval(lo: i64, hi: i64) -> Self {
        FiniteDomain { elems: (lo..=hi).map(Element::Line).collect() }
    }

    /// The box `[lo_1, hi_1] x ... x [lo_d, hi_d]` of a grid.
    pub fn grid_box(lo: &[i64], hi: &[i64]) -> Self {
        let d = lo.len();
        let mut out = Vec::new();
        if lo.iter().zip(hi).any(|(l, h)| l > h) {
            return FiniteDomain::default();
        }
        let mut v = lo.to_vec();
        loop {
            out.push(Element::Grid(v.clone()));
            let mut i = 0;
            while i < d && v[i] == hi[i] {
                v[i] = lo[i];
                i += 1;
            }
            if i == d {
                break;
            }
            v[i] += 1;
        }
        FiniteDomain::new(out)
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn iter(&self) -> core::slice::Iter<'_, Element> {
        self.elems.iter()
    }

    pub fn as_slice(&self) -> &[Element] {
        &self.elems
    }

    pub fn get(&self, i: usize) -> &Element {
        &self.elems[i]
    }

    pub fn index_of(&self, e: &Element) -> Option<usize> {
        self.elems.binary_search(e).ok()
    }

    pub fn contains(&self, e: &Element) -> bool {
        self.index_of(e).is_some()
    }

    pub fn is_subset(&self, other: &FiniteDomain) -> bool {
        self.elems.iter().all(|e| other.contains(e))
    }

    /// The left translate `aD`.
    pub fn translate(&self, a: &Element) -> FiniteDomain {
        FiniteDomain::new(self.elems.iter().map(|d| a.mul(d)).collect())
    }

    /// The product set `DE = {de}`.
    pub fn product(&self, other: &FiniteDomain) -> FiniteDomain {
        let mut out = Vec::with_capacity(self.len() * other.len());
        for d in &self.elems {
            for e in &other.elems {
                out.push(d.mul(e));
            }
        }
        FiniteDomain::new(out)
    }

    pub fn inverse(&self) -> FiniteDomain {
        FiniteDomain::new(self.elems.iter().map(Element::inv).collect())
    }

    pub fn union(&self, other: &FiniteDomain) -> FiniteDomain {
        let mut v = self.elems.clone();
        v.extend(other.elems.iter().cloned());
        FiniteDomain::new(v)
    }

    pub fn intersection(&self, other: &FiniteDomain) -> FiniteDomain {
        FiniteDomain::from_sorted(self.elems.iter().filter(|e| other.contains(e)).cloned().collect())
    }

    pub fn difference(&self, other: &FiniteDomain) -> FiniteDomain {
        FiniteDomain::from_sorted(self.elems.iter().filter(|e| !other.contains(e)).cloned().collect())
    }

    /// The interior `D^{∘r} = {a : aB_r ⊆ D}`.
    pub fn interior(&self, group: &Group, r: usize) -> FiniteDomain {
        let ball = group.ball(r);
        FiniteDomain::from_sorted(
            self.elems
                .iter()
                .filter(|a| ball.iter().all(|b| self.contains(&a.mul(b))))
                .cloned()
                .collect(),
        )
    }

    /// Largest word norm of an element, or 0 when empty.
    pub fn radius(&self) -> usize {
        self.elems.iter().map(Element::norm).max().unwrap_or(0)
    }
}

impl<'a> IntoIterator for &'a FiniteDomain {
    type Item = &'a Element;
    type IntoIter = core::slice::Iter<'a, Element>;
    fn into_iter(self) -> Self::IntoIter {
        self.elems.iter()
    }
}

impl FromIterator<Element> for FiniteDomain {
    fn from_iter<I: IntoIterator<Item = Element>>(iter: I) -> Self {
        FiniteDomain::new(iter.into_iter().collect())
    }
}

/// A total assignment of symbols to a finite domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pattern {
    pub domain: FiniteDomain,
    pub symbols: Vec<Sym>,
}

impl Pattern {
    pub fn new(domain: FiniteDomain, symbols: Vec<Sym>) -> Self {
        assert_eq!(domain.len(), symbols.len(), "pattern must be total on its domain");
        Pattern { domain, symbols }
    }

    /// Builds a pattern from unsorted cells; later duplicates win.
    pub fn from_cells(cells: impl IntoIterator<Item = (Element, Sym)>) -> Self {
        let mut v: Vec<(Element, Sym)> = cells.into_iter().collect();
        v.sort_by(|a, b| a.0.cmp(&b.0));
        let mut elems: Vec<Element> = Vec::with_capacity(v.len());
        let mut symbols: Vec<Sym> = Vec::with_capacity(v.len());
        for (e, s) in v {
            if elems.last() == Some(&e) {
                *symbols.last_mut().unwrap() = s;
            } else {
                elems.push(e);
                symbols.push(s);
            }
        }
        Pattern { domain: FiniteDomain::from_sorted(elems), symbols }
    }

    /// A line word placed on `[start, start + len)`.
    pub fn word_at(start: i64, word: &[Sym]) -> Self {
        Pattern {
            domain: FiniteDomain::interval(start, start + word.len() as i64 - 1),
            symbols: word.to_vec(),
        }
    }

    pub fn word(word: &[Sym]) -> Self {
        Pattern::word_at(0, word)
    }

    pub fn empty() -> Self {
        Pattern { domain: FiniteDomain::default(), symbols: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn get(&self, e: &Element) -> Option<Sym> {
        self.domain.index_of(e).map(|i| self.symbols[i])
    }

    pub fn cells(&self) -> impl Iterator<Item = (&Element, Sym)> + '_ {
        self.domain.iter().zip(self.symbols.iter().copied())
    }

    /// The translate `a·p` with `(a·p)_b = p_{a^{-1} b}`.
    pub fn translate(&self, a: &Element) -> Pattern {
        Pattern::from_cells(self.cells().map(|(e, s)| (a.mul(e), s)))
    }

    /// Restriction to `dom ∩ domain(p)`.
    pub fn restrict(&self, dom: &FiniteDomain) -> Pattern {
        Pattern::from_cells(self.cells().filter(|(e, _)| dom.contains(e)).map(|(e, s)| (e.clone(), s)))
    }

    /// Whether `self` and `other` agree on the cells they share.
    pub fn compatible(&self, other: &Pattern) -> bool {
        self.cells().all(|(e, s)| other.get(e).map_or(true, |t| t == s))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn translate_round_trip() {
        let p = Pattern::word(&[0, 1, 1, 0]);
        let a = Element::Line(5);
        let q = p.translate(&a);
        assert_eq!(q.get(&Element::Line(6)), Some(1));
        assert_eq!(q.translate(&a.inv()), p);
    }

    #[test]
    fn interior_of_box() {
        let g = Group::Grid(2);
        let b = FiniteDomain::grid_box(&[0, 0], &[2, 2]);
        assert_eq!(b.interior(&g, 1).as_slice(), &[Element::Grid(alloc::vec![1, 1])]);
    }
}
