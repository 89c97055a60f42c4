use std::collections::BTreeMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::generators::{levi_civita, GeneratorId, ETA};
use crate::numerics::{q, rational_to_string};

/// Real rational structure constants under `[X_a, X_b] = i f_ab^c X_c`.
///
/// Only pairs `a < b` are stored; the other half of the table is implied
/// by antisymmetry. The basis is an arbitrary list of names so that small
/// control algebras can go through the same checks as the full one.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants {
    names: Vec<String>,
    table: BTreeMap<(usize, usize), BTreeMap<usize, BigRational>>,
}

impl StructureConstants {
    /// An abelian algebra on the given basis names.
    pub fn new(names: Vec<String>) -> Self {
        Self { names, table: BTreeMap::new() }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Records `f_ab^c = f`; specifying the same constant twice (possibly
    /// through the reversed pair) must agree.
    pub fn define(&mut self, a: usize, b: usize, c: usize, f: BigRational) {
        assert!(a != b, "a bracket of a generator with itself vanishes");
        if f.is_zero() {
            return;
        }
        let (key, f) = if a < b { ((a, b), f) } else { ((b, a), -f) };
        let terms = self.table.entry(key).or_default();
        if let Some(old) = terms.get(&c) {
            assert_eq!(old, &f, "conflicting structure constant for ({a},{b})->{c}");
        }
        terms.insert(c, f);
    }

    /// Deletes `[X_a, X_b]` entirely.
    pub fn remove_bracket(&mut self, a: usize, b: usize) {
        self.table.remove(&(a.min(b), a.max(b)));
    }

    /// Terms `(c, f_ab^c)` of `[X_a, X_b]`, with antisymmetry applied.
    pub fn bracket(&self, a: usize, b: usize) -> Vec<(usize, BigRational)> {
        if a == b {
            return Vec::new();
        }
        let key = (a.min(b), a.max(b));
        let Some(terms) = self.table.get(&key) else {
            return Vec::new();
        };
        terms.iter().map(|(&c, f)| (c, if a < b { f.clone() } else { -f.clone() })).collect()
    }

    pub fn f(&self, a: usize, b: usize, c: usize) -> BigRational {
        self.bracket(a, b).into_iter().find(|(d, _)| *d == c).map(|(_, f)| f).unwrap_or_else(BigRational::zero)
    }

    /// Nonzero brackets `(a, b, terms)` with `a < b`, in lexicographic order.
    pub fn nonzero_brackets(&self) -> impl Iterator<Item = (usize, usize, Vec<(usize, BigRational)>)> + '_ {
        self.table
            .iter()
            .filter(|(_, t)| !t.is_empty())
            .map(|(&(a, b), t)| (a, b, t.iter().map(|(&c, f)| (c, f.clone())).collect()))
    }

    /// Dense `f[a][b][c]` as `f64`, for floating-point consumers.
    pub fn dense_f64(&self) -> Vec<Vec<Vec<f64>>> {
        let n = self.dim();
        let mut out = vec![vec![vec![0.0; n]; n]; n];
        for (a, b, terms) in self.nonzero_brackets() {
            for (c, f) in terms {
                let v = crate::numerics::scalar::rat_to_f64(&f);
                out[a][b][c] = v;
                out[b][a][c] = -v;
            }
        }
        out
    }

    /// A copy with the basis relabelled by `perm` (new index `perm[i]` for old `i`).
    pub fn permuted(&self, perm: &[usize]) -> Self {
        let mut names = vec![String::new(); self.dim()];
        for (i, n) in self.names.iter().enumerate() {
            names[perm[i]] = n.clone();
        }
        let mut out = Self::new(names);
        for (a, b, terms) in self.nonzero_brackets() {
            for (c, f) in terms {
                out.define(perm[a], perm[b], perm[c], f);
            }
        }
        out
    }

    pub fn to_json(&self) -> AlgebraJson {
        AlgebraJson {
            generators: self.names.clone(),
            brackets: self
                .nonzero_brackets()
                .map(|(a, b, terms)| BracketJson {
                    a: self.names[a].clone(),
                    b: self.names[b].clone(),
                    terms: terms
                        .into_iter()
                        .map(|(c, f)| TermJson { c: self.names[c].clone(), f: rational_to_string(&f) })
                        .collect(),
                })
                .collect(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraJson {
    pub generators: Vec<String>,
    pub brackets: Vec<BracketJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct BracketJson {
    pub a: String,
    pub b: String,
    pub terms: Vec<TermJson>,
}

#[derive(Clone, Debug, Serialize)]
pub struct TermJson {
    pub c: String,
    pub f: String,
}

/// The fifteen-generator extended Poincaré algebra.
pub fn build_algebra() -> StructureConstants {
    use GeneratorId as X;
    let mut sc = StructureConstants::new(X::ALL.iter().map(|g| g.name().to_string()).collect());
    let mut def = |a: X, b: X, c: X, f: i64| sc.define(a.index(), b.index(), c.index(), q(f, 1));

    for j in 1..=3 {
        for k in 1..=3 {
            for m in 1..=3 {
                let e = levi_civita(j, k, m);
                if e == 0 {
                    continue;
                }
                def(X::j(j), X::j(k), X::j(m), e);
                def(X::j(j), X::k(k), X::k(m), e);
                def(X::k(j), X::k(k), X::j(m), -e);
                def(X::gamma(j), X::gamma(k), X::j(m), -e);
                def(X::gamma(j), X::j(k), X::gamma(m), e);
                def(X::j(j), X::p(k), X::p(m), e);
            }
        }
        def(X::gamma(0), X::gamma(j), X::k(j), 1);
        def(X::gamma(0), X::k(j), X::gamma(j), -1);
        def(X::gamma(j), X::k(j), X::gamma(0), -1);
        def(X::k(j), X::p(0), X::p(j), -1);
        def(X::k(j), X::p(j), X::p(0), -1);
    }
    for mu in 0..4 {
        def(X::gamma(mu), X::p(mu), X::G, 1);
        def(X::gamma(mu), X::G, X::p(mu), ETA[mu]);
    }
    sc
}

/// `su(2)` with `[e_j, e_k] = i ε_jkm e_m`.
pub fn su2() -> StructureConstants {
    let mut sc = StructureConstants::new(vec!["e1".into(), "e2".into(), "e3".into()]);
    for (a, b, c) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        sc.define(a, b, c, BigRational::one());
    }
    sc
}

/// The abelian algebra of dimension `n`.
pub fn abelian(n: usize) -> StructureConstants {
    StructureConstants::new((1..=n).map(|i| format!("a{i}")).collect())
}

/// The full algebra with every `[Γ^μ, P_ν]` bracket deleted.
pub fn without_gamma_p_bracket() -> StructureConstants {
    let mut sc = build_algebra();
    for g in GeneratorId::GAMMA {
        for p in GeneratorId::P {
            sc.remove_bracket(g.index(), p.index());
        }
    }
    sc
}

#[cfg(test)]
mod tests {
    use super::*;
    use GeneratorId::*;

    fn terms(a: GeneratorId, b: GeneratorId) -> Vec<(GeneratorId, BigRational)> {
        build_algebra()
            .bracket(a.index(), b.index())
            .into_iter()
            .map(|(c, f)| (GeneratorId::from_index(c).unwrap(), f))
            .collect()
    }

    #[test]
    fn sample_brackets() {
        assert_eq!(terms(J1, J2), vec![(J3, q(1, 1))]);
        assert_eq!(terms(Gam0, Gam3), vec![(K3, q(1, 1))]);
        assert_eq!(terms(Gam2, P2), vec![(G, q(1, 1))]);
        assert_eq!(terms(Gam0, G), vec![(P0, q(-1, 1))]);
        assert_eq!(terms(K1, K2), vec![(J3, q(-1, 1))]);
        assert_eq!(terms(Gam1, K1), vec![(Gam0, q(-1, 1))]);
        assert!(terms(P1, G).is_empty());
        assert!(terms(Gam0, J2).is_empty());
    }

    #[test]
    fn antisymmetry() {
        let sc = build_algebra();
        for a in 0..15 {
            for b in 0..15 {
                let ab = sc.bracket(a, b);
                let ba: Vec<_> = sc.bracket(b, a).into_iter().map(|(c, f)| (c, -f)).collect();
                assert_eq!(ab, ba);
            }
        }
    }

    #[test]
    fn deleting_a_bracket() {
        let sc = without_gamma_p_bracket();
        assert!(sc.bracket(Gam1.index(), P1.index()).is_empty());
        assert!(!sc.bracket(Gam1.index(), G.index()).is_empty());
    }

    #[test]
    fn json_lists_each_pair_once() {
        let j = build_algebra().to_json();
        assert_eq!(j.generators.len(), 15);
        assert!(j.brackets.iter().any(|b| b.a == "J1" && b.b == "J2" && b.terms[0].c == "J3" && b.terms[0].f == "1/1"));
        assert!(j.brackets.iter().all(|b| b.a != b.b));
    }
}
