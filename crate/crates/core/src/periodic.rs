//! Configurations with a finite orbit, stored on a fundamental domain.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{input, Result};
use crate::group::{Element, Group};
use crate::pattern::{FiniteDomain, Pattern, Sym};

/// A periodic configuration.
///
/// * `Line`: `x_i = word[i mod p]`.
/// * `Grid`: periods `N_1..N_d` along the axes; `labels` lists the box
///   `[0, N_1) × ... × [0, N_d)` with the first coordinate varying fastest.
/// * `Free`: a finite quotient given by one permutation of `0..degree` per
///   generator; `x_g = labels[0·g]` where `v·s = perms[s][v]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PeriodicConfig {
    Line { word: Vec<Sym> },
    Grid { periods: Vec<usize>, labels: Vec<Sym> },
    Free { perms: Vec<Vec<usize>>, labels: Vec<Sym> },
}

impl PeriodicConfig {
    pub fn line(word: Vec<Sym>) -> Result<Self> {
        if word.is_empty() {
            return input("period must be positive");
        }
        Ok(PeriodicConfig::Line { word })
    }

    pub fn grid(periods: Vec<usize>, labels: Vec<Sym>) -> Result<Self> {
        if periods.iter().any(|&p| p == 0) || periods.iter().product::<usize>() != labels.len() {
            return input("grid labels must fill the fundamental box");
        }
        Ok(PeriodicConfig::Grid { periods, labels })
    }

    pub fn free(perms: Vec<Vec<usize>>, labels: Vec<Sym>) -> Result<Self> {
        let p = labels.len();
        for s in &perms {
            let mut seen = vec![false; p];
            if s.len() != p || s.iter().any(|&v| v >= p || core::mem::replace(&mut seen[v], true)) {
                return input("quotient generators must be permutations of the vertex set");
            }
        }
        if p == 0 {
            return input("quotient must be nonempty");
        }
        Ok(PeriodicConfig::Free { perms, labels })
    }

    pub fn group(&self) -> Group {
        match self {
            PeriodicConfig::Line { .. } => Group::Line,
            PeriodicConfig::Grid { periods, .. } => Group::Grid(periods.len()),
            PeriodicConfig::Free { perms, .. } => Group::Free(perms.len()),
        }
    }

    pub fn labels(&self) -> &[Sym] {
        match self {
            PeriodicConfig::Line { word } => word,
            PeriodicConfig::Grid { labels, .. } | PeriodicConfig::Free { labels, .. } => labels,
        }
    }

    pub fn cell_count(&self) -> usize {
        self.labels().len()
    }

    pub fn with_labels(&self, labels: Vec<Sym>) -> Self {
        match self {
            PeriodicConfig::Line { .. } => PeriodicConfig::Line { word: labels },
            PeriodicConfig::Grid { periods, .. } => PeriodicConfig::Grid { periods: periods.clone(), labels },
            PeriodicConfig::Free { perms, .. } => PeriodicConfig::Free { perms: perms.clone(), labels },
        }
    }

    pub fn same_period(&self, other: &Self) -> bool {
        match (self, other) {
            (PeriodicConfig::Line { word: a }, PeriodicConfig::Line { word: b }) => a.len() == b.len(),
            (PeriodicConfig::Grid { periods: a, .. }, PeriodicConfig::Grid { periods: b, .. }) => a == b,
            (PeriodicConfig::Free { perms: a, .. }, PeriodicConfig::Free { perms: b, .. }) => a == b,
            _ => false,
        }
    }

    fn grid_coords(periods: &[usize], mut v: usize) -> Vec<i64> {
        periods
            .iter()
            .map(|&p| {
                let c = v % p;
                v /= p;
                c as i64
            })
            .collect()
    }

    fn grid_index(periods: &[usize], c: &[i64]) -> usize {
        let mut idx = 0usize;
        for (i, &p) in periods.iter().enumerate().rev() {
            idx = idx * p + c[i].rem_euclid(p as i64) as usize;
        }
        idx
    }

    /// The fundamental-domain cell reached from cell `v` by the offset `n`.
    pub fn neighbor(&self, v: usize, n: &Element) -> usize {
        match (self, n) {
            (PeriodicConfig::Line { word }, Element::Line(k)) => {
                (v as i64 + k).rem_euclid(word.len() as i64) as usize
            }
            (PeriodicConfig::Grid { periods, .. }, Element::Grid(k)) => {
                let mut c = Self::grid_coords(periods, v);
                for (ci, ki) in c.iter_mut().zip(k) {
                    *ci += ki;
                }
                Self::grid_index(periods, &c)
            }
            (PeriodicConfig::Free { perms, .. }, Element::Free(w)) => {
                let mut u = v;
                for &c in w {
                    let s = &perms[(c / 2) as usize];
                    u = if c & 1 == 0 { s[u] } else { s.iter().position(|&x| x == u).unwrap() };
                }
                u
            }
            _ => panic!("offset from a different group"),
        }
    }

    /// The symbol at a group element.
    pub fn at(&self, e: &Element) -> Sym {
        self.labels()[self.neighbor(0, e)]
    }

    /// The restriction to a finite domain.
    pub fn pattern(&self, d: &FiniteDomain) -> Pattern {
        Pattern::new(d.clone(), d.iter().map(|e| self.at(e)).collect())
    }

    /// Grid coordinates of a fundamental-domain cell.
    pub fn coords(&self, v: usize) -> Vec<i64> {
        match self {
            PeriodicConfig::Line { .. } => vec![v as i64],
            PeriodicConfig::Grid { periods, .. } => Self::grid_coords(periods, v),
            PeriodicConfig::Free { .. } => panic!("quotient vertices have no coordinates"),
        }
    }
}
