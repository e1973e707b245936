//! Groups, their elements and word-metric balls.

use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::pattern::FiniteDomain;

/// One of the three supported groups with its standard symmetric generators.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    /// The integers, generated by +1 and -1.
    Line,
    /// `Z^d` with generators `±e_1, ..., ±e_d`.
    Grid(usize),
    /// The free group on `k` generators `a, b, c, ...`.
    Free(usize),
}

/// A group element.
///
/// Free-group words are stored as letter codes: generator `j` is `2j` and its
/// inverse is `2j + 1`, so the natural byte order is `a < A < b < B < ...`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Element {
    Line(i64),
    Grid(Vec<i64>),
    Free(Vec<u8>),
}

impl Group {
    pub fn identity(&self) -> Element {
        match *self {
            Group::Line => Element::Line(0),
            Group::Grid(d) => Element::Grid(vec![0; d]),
            Group::Free(_) => Element::Free(Vec::new()),
        }
    }

    /// The symmetric generating set in canonical order.
    pub fn generators(&self) -> Vec<Element> {
        match *self {
            Group::Line => vec![Element::Line(-1), Element::Line(1)],
            Group::Grid(d) => {
                let mut out = Vec::with_capacity(2 * d);
                for i in 0..d {
                    for s in [-1, 1] {
                        let mut v = vec![0; d];
                        v[i] = s;
                        out.push(Element::Grid(v));
                    }
                }
                out.sort();
                out
            }
            Group::Free(k) => (0..2 * k as u8).map(|c| Element::Free(vec![c])).collect(),
        }
    }

    /// Rank-matching check for an element.
    pub fn contains(&self, e: &Element) -> bool {
        match (self, e) {
            (Group::Line, Element::Line(_)) => true,
            (Group::Grid(d), Element::Grid(v)) => v.len() == *d,
            (Group::Free(k), Element::Free(w)) => {
                w.iter().all(|&c| (c as usize) < 2 * k) && is_reduced(w)
            }
            _ => false,
        }
    }

    /// The radius-`r` ball `B_r = S^{<= r}` in canonical order.
    pub fn ball(&self, r: usize) -> FiniteDomain {
        let r = r as i64;
        match *self {
            Group::Line => FiniteDomain::from_sorted((-r..=r).map(Element::Line).collect()),
            Group::Grid(d) => {
                let mut out = Vec::new();
                let mut v = vec![-r; d];
                loop {
                    if v.iter().map(|x| x.abs()).sum::<i64>() <= r {
                        out.push(Element::Grid(v.clone()));
                    }
                    let mut i = 0;
                    while i < d && v[i] == r {
                        v[i] = -r;
                        i += 1;
                    }
                    if i == d {
                        break;
                    }
                    v[i] += 1;
                }
                if d == 0 {
                    out = vec![Element::Grid(Vec::new())];
                }
                FiniteDomain::new(out)
            }
            Group::Free(k) => {
                let mut out = vec![Vec::new()];
                let mut frontier: Vec<Vec<u8>> = vec![Vec::new()];
                for _ in 0..r {
                    let mut next = Vec::new();
                    for w in &frontier {
                        for c in 0..2 * k as u8 {
                            if w.last().map_or(true, |&l| l != c ^ 1) {
                                let mut n = w.clone();
                                n.push(c);
                                next.push(n);
                            }
                        }
                    }
                    out.extend(next.iter().cloned());
                    frontier = next;
                }
                FiniteDomain::new(out.into_iter().map(Element::Free).collect())
            }
        }
    }

    /// Word-metric distance `|a^{-1} b|`.
    pub fn dist(&self, a: &Element, b: &Element) -> usize {
        a.inv().mul(b).norm()
    }
}

impl Element {
    /// Group product `self * other`.
    pub fn mul(&self, other: &Element) -> Element {
        match (self, other) {
            (Element::Line(a), Element::Line(b)) => Element::Line(a + b),
            (Element::Grid(a), Element::Grid(b)) => {
                Element::Grid(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (Element::Free(a), Element::Free(b)) => {
                let mut w = a.clone();
                for &c in b {
                    if w.last() == Some(&(c ^ 1)) {
                        w.pop();
                    } else {
                        w.push(c);
                    }
                }
                Element::Free(w)
            }
            _ => panic!("product of elements from different groups"),
        }
    }

    pub fn inv(&self) -> Element {
        match self {
            Element::Line(a) => Element::Line(-a),
            Element::Grid(v) => Element::Grid(v.iter().map(|x| -x).collect()),
            Element::Free(w) => Element::Free(w.iter().rev().map(|c| c ^ 1).collect()),
        }
    }

    /// Word length with respect to the standard generators (l1 norm on grids).
    pub fn norm(&self) -> usize {
        match self {
            Element::Line(a) => a.unsigned_abs() as usize,
            Element::Grid(v) => v.iter().map(|x| x.unsigned_abs() as usize).sum(),
            Element::Free(w) => w.len(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.norm() == 0
    }

    /// Coordinates of a line or grid element.
    pub fn coords(&self) -> Vec<i64> {
        match self {
            Element::Line(a) => vec![*a],
            Element::Grid(v) => v.clone(),
            Element::Free(_) => panic!("free-group words have no coordinates"),
        }
    }

    /// Parses a free-group word such as `"abA"`; `"1"` and `""` are the identity.
    pub fn parse_word(s: &str, k: usize) -> Option<Element> {
        if s == "1" {
            return Some(Element::Free(Vec::new()));
        }
        let mut w = Vec::new();
        for ch in s.chars() {
            let c = if ch.is_ascii_lowercase() {
                2 * (ch as u8 - b'a')
            } else if ch.is_ascii_uppercase() {
                2 * (ch as u8 - b'A') + 1
            } else {
                return None;
            };
            if c as usize >= 2 * k {
                return None;
            }
            w.push(c);
        }
        is_reduced(&w).then_some(Element::Free(w))
    }
}

fn is_reduced(w: &[u8]) -> bool {
    w.windows(2).all(|p| p[0] != p[1] ^ 1)
}

fn linf(v: &[i64]) -> i64 {
    v.iter().map(|x| x.abs()).max().unwrap_or(0)
}

impl Ord for Element {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Element::Line(a), Element::Line(b)) => a.cmp(b),
            (Element::Grid(a), Element::Grid(b)) => linf(a).cmp(&linf(b)).then_with(|| a.cmp(b)),
            (Element::Free(a), Element::Free(b)) => a.len().cmp(&b.len()).then_with(|| a.cmp(b)),
            (a, b) => rank(a).cmp(&rank(b)),
        }
    }
}

fn rank(e: &Element) -> u8 {
    match e {
        Element::Line(_) => 0,
        Element::Grid(_) => 1,
        Element::Free(_) => 2,
    }
}

impl PartialOrd for Element {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Element::Line(a) => write!(f, "{a}"),
            Element::Grid(v) => {
                for (i, x) in v.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{x}")?;
                }
                Ok(())
            }
            Element::Free(w) => {
                if w.is_empty() {
                    return f.write_str("1");
                }
                let s: String = w
                    .iter()
                    .map(|&c| {
                        let base = if c & 1 == 0 { b'a' } else { b'A' };
                        (base + c / 2) as char
                    })
                    .collect();
                f.write_str(&s)
            }
        }
    }
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::Line => f.write_str("line"),
            Group::Grid(d) => write!(f, "grid({d})"),
            Group::Free(k) => write!(f, "free({k})"),
        }
    }
}
