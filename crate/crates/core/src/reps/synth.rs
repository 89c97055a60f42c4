use std::collections::{BTreeMap, BTreeSet};

use super::blocks::{spin_matrices, vector_operator, SpinBasis};
use super::representation::Representation;
use crate::algebra::{levi_civita, GeneratorId, Realization};
use crate::error::{Error, Result};
use crate::numerics::{commutator, ExactMatrix, ExactScalar, HalfInt};
use crate::spinor::{j_values, multiplet_labels, spinor_metric};

#[derive(Clone, Copy, Debug)]
struct Block {
    j: HalfInt,
    gamma: HalfInt,
    offset: usize,
    size: usize,
}

/// A cross-spin transition `(J, γ) → (J', γ ± 1)` whose reduced element is unknown.
#[derive(Clone, Copy, Debug)]
struct Transition {
    from: usize,
    to: usize,
    raising: bool,
}

/// A polynomial of degree ≤ 2 in the unknown reduced elements.
#[derive(Clone, Debug, Default, PartialEq)]
struct QPoly {
    c0: ExactScalar,
    lin: BTreeMap<usize, ExactScalar>,
    quad: BTreeMap<(usize, usize), ExactScalar>,
}

impl QPoly {
    fn add_const(&mut self, v: &ExactScalar) {
        self.c0 += v;
    }

    fn add_lin(&mut self, i: usize, v: &ExactScalar) {
        let e = self.lin.entry(i).or_default();
        *e += v;
        if e.is_zero() {
            self.lin.remove(&i);
        }
    }

    fn add_quad(&mut self, i: usize, l: usize, v: &ExactScalar) {
        let key = (i.min(l), i.max(l));
        let e = self.quad.entry(key).or_default();
        *e += v;
        if e.is_zero() {
            self.quad.remove(&key);
        }
    }

    fn is_zero(&self) -> bool {
        self.c0.is_zero() && self.lin.is_empty() && self.quad.is_empty()
    }

    fn unknowns(&self) -> BTreeSet<usize> {
        self.lin.keys().copied().chain(self.quad.keys().flat_map(|&(a, b)| [a, b])).collect()
    }

    fn substitute(&self, i: usize, v: &ExactScalar) -> QPoly {
        let mut out = QPoly { c0: self.c0.clone(), ..Default::default() };
        for (&k, c) in &self.lin {
            if k == i {
                out.add_const(&(c * v));
            } else {
                out.add_lin(k, c);
            }
        }
        for (&(a, b), c) in &self.quad {
            match (a == i, b == i) {
                (true, true) => out.add_const(&(&(c * v) * v)),
                (true, false) => out.add_lin(b, &(c * v)),
                (false, true) => out.add_lin(a, &(c * v)),
                (false, false) => out.add_quad(a, b, c),
            }
        }
        out
    }
}

/// Entrywise accumulation of a matrix-valued polynomial.
#[derive(Default)]
struct MatPoly {
    entries: BTreeMap<(usize, usize), QPoly>,
}

impl MatPoly {
    fn add(&mut self, m: &ExactMatrix, f: impl Fn(&mut QPoly, &ExactScalar)) {
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                let v = &m[(r, c)];
                if !v.is_zero() {
                    f(self.entries.entry((r, c)).or_default(), v);
                }
            }
        }
    }
}

struct Problem {
    n: usize,
    blocks: Vec<Block>,
    /// Known parts of Γ^{(+)}_k and Γ^{(−)}_k.
    known: [[ExactMatrix; 3]; 2],
    transitions: Vec<Transition>,
    /// Embedded `T_k` for every transition.
    tensors: Vec<[ExactMatrix; 3]>,
    j_mats: [ExactMatrix; 3],
    gamma0: ExactMatrix,
}

fn build_problem(lambda: HalfInt) -> Result<Problem> {
    let mut blocks = Vec::new();
    let mut offset = 0;
    for j in j_values(lambda) {
        for gamma in j.down_to(-j) {
            let size = (j.twice() + 1) as usize;
            blocks.push(Block { j, gamma, offset, size });
            offset += size;
        }
    }
    let n = offset;
    let spin: BTreeMap<HalfInt, [ExactMatrix; 3]> =
        j_values(lambda).into_iter().map(|j| (j, spin_matrices(j, SpinBasis::for_spin(j)))).collect();

    let mut j_mats = [0, 1, 2].map(|_| ExactMatrix::zeros(n, n));
    let mut gamma0 = ExactMatrix::zeros(n, n);
    for b in &blocks {
        for k in 0..3 {
            j_mats[k].set_block(b.offset, b.offset, &spin[&b.j][k]);
        }
        for i in 0..b.size {
            gamma0[(b.offset + i, b.offset + i)] = ExactScalar::from_rational(b.gamma.to_rational());
        }
    }

    let lam1 = lambda.to_rational() + crate::numerics::q(1, 1);
    let mut known = [[0, 1, 2].map(|_| ExactMatrix::zeros(n, n)), [0, 1, 2].map(|_| ExactMatrix::zeros(n, n))];
    let mut transitions = Vec::new();
    let mut tensors = Vec::new();
    for (fi, f) in blocks.iter().enumerate() {
        for (ti, t) in blocks.iter().enumerate() {
            let dg = t.gamma - f.gamma;
            let raising = if dg == HalfInt::ONE {
                true
            } else if dg == -HalfInt::ONE {
                false
            } else {
                continue;
            };
            if t.j == f.j {
                if f.j == HalfInt::ZERO {
                    continue;
                }
                // Reduced elements fixed by the Δ_J label coefficients.
                let (j, g) = (f.j.to_rational(), f.gamma.to_rational());
                let denom = crate::numerics::q(2, 1) * &j * (&j + crate::numerics::q(1, 1));
                let r = if raising { &lam1 * (&j - &g) / &denom } else { -&lam1 * (&j + &g) / &denom };
                let r = ExactScalar::from_rational(r);
                for k in 0..3 {
                    known[usize::from(!raising)][k].set_block(t.offset, f.offset, &spin[&f.j][k].scale(&r));
                }
            } else if (t.j - f.j).abs() == HalfInt::ONE {
                let tk = vector_operator(t.j, f.j)
                    .ok_or_else(|| Error::SynthesisFailure(format!("no vector operator {} <- {}", t.j, f.j)))?;
                tensors.push([0, 1, 2].map(|k| {
                    let mut m = ExactMatrix::zeros(n, n);
                    m.set_block(t.offset, f.offset, &tk[k]);
                    m
                }));
                transitions.push(Transition { from: fi, to: ti, raising });
            }
        }
    }
    Ok(Problem { n, blocks, known, transitions, tensors, j_mats, gamma0 })
}

impl Problem {
    fn unknowns_of(&self, raising: bool) -> Vec<usize> {
        (0..self.transitions.len()).filter(|&i| self.transitions[i].raising == raising).collect()
    }

    /// Adds `[P_j, Q_k]` where `P = known_a + Σ u B`, `Q = known_b + Σ u B`.
    fn add_commutator(&self, mp: &mut MatPoly, a: bool, j: usize, b: bool, k: usize) {
        let ka = &self.known[usize::from(!a)][j];
        let kb = &self.known[usize::from(!b)][k];
        let (ua, ub) = (self.unknowns_of(a), self.unknowns_of(b));
        let comm = |x: &ExactMatrix, y: &ExactMatrix| commutator(x, y).expect("square");
        mp.add(&comm(ka, kb), |p, v| p.add_const(v));
        for &l in &ub {
            mp.add(&comm(ka, &self.tensors[l][k]), |p, v| p.add_lin(l, v));
        }
        for &i in &ua {
            mp.add(&comm(&self.tensors[i][j], kb), |p, v| p.add_lin(i, v));
            for &l in &ub {
                mp.add(&comm(&self.tensors[i][j], &self.tensors[l][k]), |p, v| p.add_quad(i, l, v));
            }
        }
    }

    fn equations(&self) -> Vec<QPoly> {
        let mut eqs = Vec::new();
        let half = ExactScalar::ratio(1, 2);
        for j in 0..3 {
            for k in 0..3 {
                if j < k {
                    for side in [true, false] {
                        let mut mp = MatPoly::default();
                        self.add_commutator(&mut mp, side, j, side, k);
                        eqs.extend(mp.entries.into_values());
                    }
                }
                // [Γ⁺_j, Γ⁻_k] + ½δ_jk Γ⁰ + (i/2) ε_jkm J_m = 0.
                let mut mp = MatPoly::default();
                self.add_commutator(&mut mp, true, j, false, k);
                if j == k {
                    mp.add(&self.gamma0.scale(&half), |p, v| p.add_const(v));
                }
                for m in 0..3 {
                    let e = levi_civita(j + 1, k + 1, m + 1);
                    if e != 0 {
                        let s = &(&ExactScalar::i() * &half) * &ExactScalar::from_i64(e);
                        mp.add(&self.j_mats[m].scale(&s), |p, v| p.add_const(v));
                    }
                }
                eqs.extend(mp.entries.into_values());
            }
        }
        eqs.retain(|e| !e.is_zero());
        eqs
    }

    /// One transition per adjacent spin pair fixes the relative normalization
    /// of the two spin sectors; these are the candidates for it.
    fn gauge_candidates(&self) -> Vec<Vec<usize>> {
        let mut pairs: BTreeMap<(HalfInt, HalfInt), Vec<usize>> = BTreeMap::new();
        for (i, t) in self.transitions.iter().enumerate() {
            let (a, b) = (self.blocks[t.from].j, self.blocks[t.to].j);
            pairs.entry((a.min(b), a.max(b))).or_default().push(i);
        }
        pairs.into_values().collect()
    }
}

/// Sequential elimination: repeatedly solve an equation in a single remaining unknown.
fn solve(mut eqs: Vec<QPoly>, mut values: BTreeMap<usize, ExactScalar>, count: usize) -> Result<BTreeMap<usize, ExactScalar>> {
    for (i, v) in values.clone() {
        eqs = eqs.iter().map(|e| e.substitute(i, &v)).collect();
    }
    loop {
        eqs.retain(|e| !e.is_zero());
        if let Some(bad) = eqs.iter().find(|e| e.unknowns().is_empty()) {
            return Err(Error::SynthesisFailure(format!("inconsistent constraint, residual {}", bad.c0)));
        }
        if values.len() == count {
            return Ok(values);
        }
        let mut step = None;
        for e in &eqs {
            let u = e.unknowns();
            if u.len() != 1 {
                continue;
            }
            let i = *u.iter().next().expect("one unknown");
            let a = e.quad.get(&(i, i)).cloned().unwrap_or_default();
            let b = e.lin.get(&i).cloned().unwrap_or_default();
            if a.is_zero() {
                step = Some((i, (-&e.c0).checked_div(&b)?));
                break;
            }
            if b.is_zero() {
                // a u² + c = 0 with a rational positive root.
                let sq = (-&e.c0).checked_div(&a)?;
                if let Some(r) = sq.as_rational().and_then(ExactScalar::sqrt_rational) {
                    step = Some((i, r));
                    break;
                }
            }
        }
        let Some((i, v)) = step else {
            return Err(Error::SynthesisFailure(format!(
                "elimination stalled with {} unknowns and {} equations left",
                count - values.len(),
                eqs.len()
            )));
        };
        eqs = eqs.iter().map(|e| e.substitute(i, &v)).collect();
        values.insert(i, v);
    }
}

fn cartesian(choices: &[Vec<usize>]) -> Vec<Vec<usize>> {
    choices.iter().fold(vec![Vec::new()], |acc, opts| {
        acc.iter().flat_map(|prefix| opts.iter().map(move |&o| [prefix.clone(), vec![o]].concat())).collect()
    })
}

/// Builds the multiplet `Λ` from the bracket relations alone.
///
/// `J_k` is block diagonal in standard spin matrices, `Γ⁰ = γ` per block,
/// `Γ^k` is a sum of vector-operator tensors between `(J, γ)` and
/// `(J', γ ± 1)` with reduced elements solved exactly, and
/// `K_k = −i[Γ⁰, Γ^k]`.
pub fn synthesize_rep(lambda: HalfInt) -> Result<Representation> {
    if lambda < HalfInt::ZERO || lambda > HalfInt::from_int(2) {
        return Err(Error::SynthesisFailure(format!("Lambda = {lambda} outside 0..2")));
    }
    let p = build_problem(lambda)?;
    let eqs = p.equations();
    let mut last_err = None;
    let mut solution = None;
    for gauge in cartesian(&p.gauge_candidates()) {
        let seeds = gauge.iter().map(|&i| (i, ExactScalar::one())).collect();
        match solve(eqs.clone(), seeds, p.transitions.len()) {
            Ok(v) => {
                solution = Some(v);
                break;
            }
            Err(e) => last_err = Some(e),
        }
    }
    let values = match solution {
        Some(v) => v,
        None if p.transitions.is_empty() => BTreeMap::new(),
        None => return Err(last_err.unwrap_or_else(|| Error::SynthesisFailure("no gauge choice".into()))),
    };

    let n = p.n;
    let mut mats = BTreeMap::new();
    mats.insert(GeneratorId::Gam0, p.gamma0.clone());
    for k in 0..3 {
        let mut g = &p.known[0][k] + &p.known[1][k];
        for (i, v) in &values {
            g = &g + &p.tensors[*i][k].scale(v);
        }
        let kk = commutator(&p.gamma0, &g)?.scale(&-ExactScalar::i());
        mats.insert(GeneratorId::j(k + 1), p.j_mats[k].clone());
        mats.insert(GeneratorId::gamma(k + 1), g);
        mats.insert(GeneratorId::k(k + 1), kk);
    }
    let basis = multiplet_labels(lambda);
    let metric = basis.iter().map(spinor_metric).collect::<Result<Vec<_>>>()?;
    Ok(Representation {
        lambda: Some(lambda),
        source: "synthesize".into(),
        basis,
        mats: Realization::new(n, mats)?,
        metric,
        manifest: Vec::new(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reps::validate::validate_rep;

    #[test]
    fn singlet_is_trivial() {
        let r = synthesize_rep(HalfInt::ZERO).unwrap();
        assert_eq!(r.dim(), 1);
        assert!(r.mats.generators().all(|(_, m)| m.is_zero()));
    }

    #[test]
    fn low_multiplets_close() {
        for t in 1..=2 {
            let r = synthesize_rep(HalfInt::from_twice(t)).unwrap();
            let v = validate_rep(&r);
            assert!(v.closure.is_exact(), "Lambda={t}/2: {:?}", v.closure.failures().collect::<Vec<_>>());
            assert!(v.passes(), "Lambda={t}/2: {:?}", v.delta_j.map(|d| d.problems));
        }
    }

    #[test]
    fn higher_multiplets_close() {
        for t in 3..=4 {
            let r = synthesize_rep(HalfInt::from_twice(t)).unwrap();
            assert_eq!(r.dim(), [20, 35][t as usize - 3]);
            let v = validate_rep(&r);
            assert!(v.passes(), "Lambda={t}/2: {:?}", v.delta_j.map(|d| d.problems));
        }
    }

    #[test]
    fn half_matches_dirac_exactly() {
        let s = synthesize_rep(HalfInt::HALF).unwrap();
        let d = crate::reps::dirac::dirac_rep().unwrap();
        for g in GeneratorId::LORENTZ {
            assert_eq!(s.mat(g), d.mat(g), "{g}");
        }
    }
}
