//! Word arithmetic, ball enumeration, sparse convolution algebras, and
//! length-based positive-definite functions for the rank-2 free group and
//! for the integers.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::norms::{EstimateKind, NormEstimate};
use crate::tol;

/// The two instantiated groups.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum Group {
    /// Rank-2 free group on generators a, b.
    FreeRank2,
    /// The integers under addition.
    Integers,
}

impl fmt::Display for Group {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Group::FreeRank2 => write!(f, "F2"),
            Group::Integers => write!(f, "Z"),
        }
    }
}

/// Letters of F2 encoded as 1 = a, -1 = a^{-1}, 2 = b, -2 = b^{-1}.
pub type Letter = i8;

/// Canonical letter order a < a^{-1} < b < b^{-1}.
pub const LETTERS: [Letter; 4] = [1, -1, 2, -2];

fn letter_rank(l: Letter) -> u8 {
    match l {
        1 => 0,
        -1 => 1,
        2 => 2,
        -2 => 3,
        _ => unreachable!("invalid letter {l}"),
    }
}

/// Reduced group word: a reduced letter string for F2, an integer for Z.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Word {
    Free(Vec<Letter>),
    Int(i64),
}

impl Word {
    pub fn identity(group: Group) -> Self {
        match group {
            Group::FreeRank2 => Word::Free(Vec::new()),
            Group::Integers => Word::Int(0),
        }
    }

    pub fn group(&self) -> Group {
        match self {
            Word::Free(_) => Group::FreeRank2,
            Word::Int(_) => Group::Integers,
        }
    }

    /// Builds a reduced F2 word from an arbitrary letter string.
    pub fn free_from_letters(letters: &[Letter]) -> Self {
        let mut out: Vec<Letter> = Vec::with_capacity(letters.len());
        for &l in letters {
            debug_assert!(matches!(l, 1 | -1 | 2 | -2), "invalid letter {l}");
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word::Free(out)
    }

    pub fn length(&self) -> u32 {
        match self {
            Word::Free(ls) => ls.len() as u32,
            Word::Int(n) => n.unsigned_abs().min(u32::MAX as u64) as u32,
        }
    }

    pub fn inv(&self) -> Self {
        match self {
            Word::Free(ls) => Word::Free(ls.iter().rev().map(|l| -l).collect()),
            Word::Int(n) => Word::Int(-n),
        }
    }

    /// Group product with free reduction. Panics if the operands belong to
    /// different groups; mixing them is a programming error, not a data error.
    pub fn mul(&self, other: &Word) -> Word {
        match (self, other) {
            (Word::Free(x), Word::Free(y)) => {
                let mut out = x.clone();
                for &l in y {
                    if out.last() == Some(&-l) {
                        out.pop();
                    } else {
                        out.push(l);
                    }
                }
                Word::Free(out)
            }
            (Word::Int(m), Word::Int(n)) => Word::Int(m + n),
            _ => panic!("word product across different groups"),
        }
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    /// Length-lexicographic canonical order. For F2 the letter order is
    /// a < a^{-1} < b < b^{-1}; for Z the order is 0, 1, -1, 2, -2, ...
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        match (self, other) {
            (Word::Free(x), Word::Free(y)) => x.len().cmp(&y.len()).then_with(|| {
                for (&a, &b) in x.iter().zip(y.iter()) {
                    match letter_rank(a).cmp(&letter_rank(b)) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }),
            (Word::Int(m), Word::Int(n)) => m
                .unsigned_abs()
                .cmp(&n.unsigned_abs())
                .then_with(|| n.signum().cmp(&m.signum())),
            (Word::Free(_), Word::Int(_)) => Ordering::Less,
            (Word::Int(_), Word::Free(_)) => Ordering::Greater,
        }
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Word::Free(ls) if ls.is_empty() => write!(f, "e"),
            Word::Free(ls) => {
                for l in ls {
                    match l {
                        1 => write!(f, "a")?,
                        -1 => write!(f, "A")?,
                        2 => write!(f, "b")?,
                        -2 => write!(f, "B")?,
                        _ => unreachable!(),
                    }
                }
                Ok(())
            }
            Word::Int(n) => write!(f, "{n}"),
        }
    }
}

/// All words of length <= r in the canonical length-lexicographic order.
pub fn ball(group: Group, r: u32) -> Vec<Word> {
    match group {
        Group::FreeRank2 => {
            let mut out = vec![Word::identity(group)];
            let mut sphere: Vec<Vec<Letter>> = vec![Vec::new()];
            for _ in 0..r {
                let mut next = Vec::with_capacity(sphere.len() * 3 + 1);
                for w in &sphere {
                    for &l in &LETTERS {
                        if w.last() == Some(&-l) {
                            continue;
                        }
                        let mut ext = w.clone();
                        ext.push(l);
                        next.push(ext);
                    }
                }
                out.extend(next.iter().cloned().map(Word::Free));
                sphere = next;
            }
            out
        }
        Group::Integers => {
            let mut out = vec![Word::Int(0)];
            for n in 1..=r as i64 {
                out.push(Word::Int(n));
                out.push(Word::Int(-n));
            }
            out
        }
    }
}

/// Sphere size |{w : length(w) = n}|.
pub fn sphere_size(group: Group, n: u32) -> u64 {
    match (group, n) {
        (_, 0) => 1,
        (Group::FreeRank2, n) => 4 * 3u64.pow(n - 1),
        (Group::Integers, _) => 2,
    }
}

/// Finitely supported complex function on a group, sparse with exact word
/// keys and no explicit zeros.
#[derive(Clone, Debug, PartialEq)]
pub struct GroupFunction {
    group: Group,
    support: BTreeMap<Word, Complex64>,
}

impl GroupFunction {
    pub fn zero(group: Group) -> Self {
        Self {
            group,
            support: BTreeMap::new(),
        }
    }

    pub fn delta(word: Word) -> Self {
        let group = word.group();
        let mut f = Self::zero(group);
        f.add_to(word, Complex64::new(1.0, 0.0));
        f
    }

    pub fn from_pairs(group: Group, pairs: impl IntoIterator<Item = (Word, Complex64)>) -> Result<Self> {
        let mut f = Self::zero(group);
        for (w, v) in pairs {
            if w.group() != group {
                return Err(Error::GroupMismatch(format!(
                    "word {w} does not belong to {group}"
                )));
            }
            f.add_to(w, v);
        }
        Ok(f)
    }

    pub fn group(&self) -> Group {
        self.group
    }

    pub fn support(&self) -> &BTreeMap<Word, Complex64> {
        &self.support
    }

    pub fn support_size(&self) -> usize {
        self.support.len()
    }

    pub fn value_at(&self, w: &Word) -> Complex64 {
        self.support
            .get(w)
            .copied()
            .unwrap_or(Complex64::new(0.0, 0.0))
    }

    /// Accumulates into an entry, dropping exact zeros.
    pub fn add_to(&mut self, w: Word, v: Complex64) {
        debug_assert_eq!(w.group(), self.group);
        let entry = self.support.entry(w);
        match entry {
            std::collections::btree_map::Entry::Vacant(e) => {
                if v != Complex64::new(0.0, 0.0) {
                    e.insert(v);
                }
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let nv = *e.get() + v;
                if nv == Complex64::new(0.0, 0.0) {
                    e.remove();
                } else {
                    *e.get_mut() = nv;
                }
            }
        }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        let mut out = Self::zero(self.group);
        for (w, v) in &self.support {
            out.add_to(w.clone(), v * c);
        }
        out
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GroupMismatch("add of functions on different groups".into()));
        }
        let mut out = self.clone();
        for (w, v) in &other.support {
            out.add_to(w.clone(), *v);
        }
        Ok(out)
    }

    pub fn l1_norm(&self) -> f64 {
        self.support.values().map(|v| v.norm()).sum()
    }

    pub fn l2_norm(&self) -> f64 {
        self.support
            .values()
            .map(|v| v.norm_sqr())
            .sum::<f64>()
            .sqrt()
    }

    pub fn linf_norm(&self) -> f64 {
        self.support.values().map(|v| v.norm()).fold(0.0, f64::max)
    }

    /// (sum |f|^p)^{1/p} for finite p >= 1.
    pub fn lp_norm(&self, p: f64) -> f64 {
        self.support
            .values()
            .map(|v| v.norm().powf(p))
            .sum::<f64>()
            .powf(1.0 / p)
    }

    /// Largest word length in the support (0 for the zero function).
    pub fn radius(&self) -> u32 {
        self.support.keys().map(Word::length).max().unwrap_or(0)
    }

    /// Convolution `(f*g)(s) = sum_t f(t) g(t^{-1} s)`.
    pub fn convolve(&self, other: &Self) -> Result<Self> {
        if self.group != other.group {
            return Err(Error::GroupMismatch(
                "convolution of functions on different groups".into(),
            ));
        }
        let mut out = Self::zero(self.group);
        for (s, fv) in &self.support {
            for (t, gv) in &other.support {
                out.add_to(s.mul(t), fv * gv);
            }
        }
        Ok(out)
    }

    /// Involution `f^*(s) = conj(f(s^{-1}))`.
    pub fn involution(&self) -> Self {
        let mut out = Self::zero(self.group);
        for (w, v) in &self.support {
            out.add_to(w.inv(), v.conj());
        }
        out
    }
}

/// The length kernel `phi_t(s) = exp(-t length(s))` restricted to ball(r).
pub fn phi_t(group: Group, t: f64, r: u32) -> Result<GroupFunction> {
    if !(t > 0.0) {
        return Err(Error::domain(format!("phi_t needs t > 0, got {t}")));
    }
    let mut f = GroupFunction::zero(group);
    for w in ball(group, r) {
        let v = (-t * w.length() as f64).exp();
        f.add_to(w, Complex64::new(v, 0.0));
    }
    Ok(f)
}

/// Convergence verdict of an l^p membership probe.
#[derive(Clone, Debug, serde::Serialize, serde::Deserialize)]
pub struct ThresholdReport {
    pub group: Group,
    pub p: f64,
    pub t: f64,
    /// Geometric ratio of successive-radius l^p increments.
    pub ratio: f64,
    pub convergent: bool,
    /// Partial l^p sums (not yet rooted) by radius.
    pub partial_sums: Vec<(u32, f64)>,
}

/// Probes l^p membership of phi_t through the analytic sphere-growth ratio
/// together with directly computed partial sums.
pub fn lp_threshold_probe(group: Group, p: f64, t: f64, r_max: u32) -> Result<ThresholdReport> {
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::domain(format!("threshold probe needs p in [1, inf), got {p}")));
    }
    if !(t > 0.0) {
        return Err(Error::domain(format!("threshold probe needs t > 0, got {t}")));
    }
    let base = match group {
        Group::FreeRank2 => 3.0,
        Group::Integers => 1.0,
    };
    let ratio = base * (-p * t).exp();
    let mut partial_sums = Vec::with_capacity(r_max as usize + 1);
    let mut acc = 0.0;
    for r in 0..=r_max {
        acc += sphere_size(group, r) as f64 * (-p * t * r as f64).exp();
        partial_sums.push((r, acc));
    }
    Ok(ThresholdReport {
        group,
        p,
        t,
        ratio,
        convergent: ratio < 1.0,
        partial_sums,
    })
}

/// Lower bound for the reduced norm ||lambda(f)||: power iteration of the
/// compression of lambda(f^* * f) to l^2(ball(r)), applied matrix-free via
/// precomputed shift tables.
pub fn reduced_norm_estimate(f: &GroupFunction, r: u32) -> Result<NormEstimate> {
    if r < f.radius() {
        return Err(Error::domain(format!(
            "truncation radius {r} below support radius {}",
            f.radius()
        )));
    }
    if f.support.is_empty() {
        return Ok(NormEstimate {
            value: 0.0,
            kind: EstimateKind::Exact,
            iterations: 0,
            restarts: 0,
            residual: 0.0,
        });
    }
    let h = f.involution().convolve(f)?;
    let words = ball(f.group, r);
    let n = words.len();
    let index: HashMap<&Word, u32> = words.iter().zip(0u32..).collect();
    // For each support element s of h, table[j] = index of s^{-1} ball[j],
    // or MISS when the shifted word leaves the ball.
    const MISS: u32 = u32::MAX;
    let shifts: Vec<(Complex64, Vec<u32>)> = h
        .support
        .iter()
        .map(|(s, &v)| {
            let si = s.inv();
            let table = words
                .iter()
                .map(|w| index.get(&si.mul(w)).copied().unwrap_or(MISS))
                .collect();
            (v, table)
        })
        .collect();
    let mut v = vec![Complex64::new(1.0 / (n as f64).sqrt(), 0.0); n];
    let mut lambda = 0.0_f64;
    let mut resid = f64::INFINITY;
    let mut iterations = 0;
    let mut w = vec![Complex64::new(0.0, 0.0); n];
    for it in 0..tol::POWER_ITER_MAX {
        iterations = it + 1;
        w.iter_mut().for_each(|z| *z = Complex64::new(0.0, 0.0));
        for (hv, table) in &shifts {
            for (j, &src) in table.iter().enumerate() {
                if src != MISS {
                    w[j] += hv * v[src as usize];
                }
            }
        }
        // Rayleigh quotient <v, w>; the operator is Hermitian PSD.
        let new_lambda: f64 = v
            .iter()
            .zip(&w)
            .map(|(a, b)| (a.conj() * b).re)
            .sum();
        let wn = w.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if wn <= 0.0 {
            lambda = 0.0;
            resid = 0.0;
            break;
        }
        resid = (new_lambda - lambda).abs() / new_lambda.abs().max(1e-300);
        lambda = new_lambda;
        if resid < tol::POWER_ITER_STOP_REL && it > 0 {
            break;
        }
        for (vz, wz) in v.iter_mut().zip(&w) {
            *vz = wz / wn;
        }
    }
    Ok(NormEstimate {
        value: lambda.max(0.0).sqrt(),
        kind: EstimateKind::LowerBound,
        iterations,
        restarts: 1,
        residual: resid,
    })
}

/// Uniformly random reduced word of exactly the given length.
pub fn random_word(rng: &mut impl Rng, group: Group, len: u32) -> Word {
    match group {
        Group::FreeRank2 => {
            let mut letters = Vec::with_capacity(len as usize);
            for _ in 0..len {
                loop {
                    let l = LETTERS[rng.gen_range(0..4)];
                    if letters.last() != Some(&-l) {
                        letters.push(l);
                        break;
                    }
                }
            }
            Word::Free(letters)
        }
        Group::Integers => {
            if len == 0 {
                Word::Int(0)
            } else if rng.gen_bool(0.5) {
                Word::Int(len as i64)
            } else {
                Word::Int(-(len as i64))
            }
        }
    }
}

/// Random sparse function supported in ball(radius) with Gaussian values.
pub fn random_function(
    rng: &mut impl Rng,
    group: Group,
    radius: u32,
    terms: usize,
) -> GroupFunction {
    let mut f = GroupFunction::zero(group);
    for _ in 0..terms {
        let len = rng.gen_range(0..=radius);
        let w = random_word(rng, group, len);
        let v = Complex64::new(
            rng.sample(rand_distr::StandardNormal),
            rng.sample(rand_distr::StandardNormal),
        );
        f.add_to(w, v);
    }
    f
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn w(s: &str) -> Word {
        let letters: Vec<Letter> = s
            .chars()
            .map(|c| match c {
                'a' => 1,
                'A' => -1,
                'b' => 2,
                'B' => -2,
                _ => panic!("bad letter"),
            })
            .collect();
        Word::free_from_letters(&letters)
    }

    #[test]
    fn word_arithmetic() {
        assert_eq!(w("a").mul(&w("A")), w(""));
        assert_eq!(w("ab").mul(&w("BA")), w(""));
        assert_eq!(w("abA").length(), 3);
        assert_eq!(w("ab").inv(), w("BA"));
        assert_eq!(Word::Int(3).mul(&Word::Int(-5)), Word::Int(-2));
        assert_eq!(Word::Int(-4).length(), 4);
    }

    #[test]
    fn length_function_axioms() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..10_000 {
            let lg = rng.gen_range(0..8);
            let lh = rng.gen_range(0..8);
            let g = random_word(&mut rng, Group::FreeRank2, lg);
            let h = random_word(&mut rng, Group::FreeRank2, lh);
            assert!(g.mul(&h).length() <= g.length() + h.length());
            assert_eq!(g.length(), g.inv().length());
        }
        assert_eq!(Word::identity(Group::FreeRank2).length(), 0);
    }

    #[test]
    fn ball_sizes_and_order() {
        assert_eq!(ball(Group::FreeRank2, 0), vec![w("")]);
        assert_eq!(ball(Group::FreeRank2, 1).len(), 5);
        assert_eq!(ball(Group::FreeRank2, 2).len(), 17);
        for r in 0..=8u32 {
            assert_eq!(ball(Group::FreeRank2, r).len() as u64, 2 * 3u64.pow(r) - 1);
        }
        let b = ball(Group::FreeRank2, 3);
        let mut sorted = b.clone();
        sorted.sort();
        assert_eq!(b, sorted, "ball must come out in canonical order");
        // Sphere counts 4 * 3^{n-1}.
        for n in 1..=8u32 {
            let count = b.iter().filter(|x| x.length() == n).count() as u64;
            if n <= 3 {
                assert_eq!(count, 4 * 3u64.pow(n - 1));
            }
        }
        let bz = ball(Group::Integers, 3);
        assert_eq!(bz.len(), 7);
        assert_eq!(bz[0], Word::Int(0));
        let mut sz = bz.clone();
        sz.sort();
        assert_eq!(bz, sz);
    }

    #[test]
    fn canonical_order_is_length_lex() {
        assert!(w("") < w("a"));
        assert!(w("a") < w("A"));
        assert!(w("A") < w("b"));
        assert!(w("b") < w("B"));
        assert!(w("B") < w("aa"));
        assert!(w("ab") < w("aB"));
        assert!(Word::Int(1) < Word::Int(-1));
        assert!(Word::Int(-1) < Word::Int(2));
    }

    #[test]
    fn convolution_examples() {
        let ds = GroupFunction::delta(w("ab"));
        let dt = GroupFunction::delta(w("BA"));
        let prod = ds.convolve(&dt).unwrap();
        assert_eq!(prod, GroupFunction::delta(w("")));

        // f = sum of the 4 generator deltas: nonnegative, so l1 multiplicative.
        let f = generators();
        let ff = f.convolve(&f).unwrap();
        assert!((ff.l1_norm() - 16.0).abs() < 1e-12);

        // (delta_a + delta_{a^{-1}})^{*2} at e is 2.
        let g = GroupFunction::delta(w("a"))
            .add(&GroupFunction::delta(w("A")))
            .unwrap();
        let gg = g.convolve(&g).unwrap();
        assert_eq!(gg.value_at(&w("")), Complex64::new(2.0, 0.0));

        assert!(f
            .convolve(&GroupFunction::delta(Word::Int(1)))
            .is_err());
    }

    fn generators() -> GroupFunction {
        let mut f = GroupFunction::zero(Group::FreeRank2);
        for &l in &LETTERS {
            f.add_to(Word::Free(vec![l]), Complex64::new(1.0, 0.0));
        }
        f
    }

    #[test]
    fn convolution_associative_and_l1_submultiplicative() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for _ in 0..10 {
            let f = random_function(&mut rng, Group::FreeRank2, 3, 4);
            let g = random_function(&mut rng, Group::FreeRank2, 3, 4);
            let h = random_function(&mut rng, Group::FreeRank2, 3, 4);
            let lhs = f.convolve(&g).unwrap().convolve(&h).unwrap();
            let rhs = f.convolve(&g.convolve(&h).unwrap()).unwrap();
            let diff = lhs.add(&rhs.scale(Complex64::new(-1.0, 0.0))).unwrap();
            assert!(diff.linf_norm() <= 1e-12);
            assert!(
                f.convolve(&g).unwrap().l1_norm() <= f.l1_norm() * g.l1_norm() * (1.0 + 1e-12)
            );
        }
    }

    #[test]
    fn involution_properties() {
        assert_eq!(
            GroupFunction::delta(w("ab")).involution(),
            GroupFunction::delta(w("BA"))
        );
        let f = generators();
        assert_eq!(f.involution(), f);
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        let g = random_function(&mut rng, Group::FreeRank2, 3, 4);
        let h = random_function(&mut rng, Group::FreeRank2, 3, 4);
        let lhs = g.convolve(&h).unwrap().involution();
        let rhs = h.involution().convolve(&g.involution()).unwrap();
        let diff = lhs.add(&rhs.scale(Complex64::new(-1.0, 0.0))).unwrap();
        assert!(diff.linf_norm() <= 1e-12);
        assert!((g.lp_norm(2.0) - g.involution().lp_norm(2.0)).abs() < 1e-12);
    }

    #[test]
    fn phi_t_values_and_lp_mass() {
        let f = phi_t(Group::FreeRank2, 0.7, 4).unwrap();
        assert_eq!(f.value_at(&w("")), Complex64::new(1.0, 0.0));
        let v = f.value_at(&w("ab"));
        assert!((v.re - (-1.4f64).exp()).abs() < 1e-15);
        assert!(phi_t(Group::FreeRank2, 0.0, 2).is_err());
        // Direct l^p mass vs closed-form geometric sum.
        for p in [1.0, 2.0, 4.0] {
            let direct: f64 = f
                .support()
                .values()
                .map(|z| z.norm().powf(p))
                .sum();
            let closed: f64 = 1.0
                + (1..=4)
                    .map(|n| 4.0 * 3f64.powi(n - 1) * (-p * 0.7 * n as f64).exp())
                    .sum::<f64>();
            assert!((direct - closed).abs() <= 1e-12 * closed);
        }
    }

    #[test]
    fn threshold_probe_examples() {
        let ln3 = 3f64.ln();
        let conv = lp_threshold_probe(Group::FreeRank2, 1.0, 2.0 * ln3, 10).unwrap();
        assert!(conv.convergent);
        assert!((conv.ratio - 1.0 / 3.0).abs() < 1e-12);
        let div = lp_threshold_probe(Group::FreeRank2, 1.0, 0.5 * ln3, 10).unwrap();
        assert!(!div.convergent);
        assert!((div.ratio - 3f64.sqrt()).abs() < 1e-12);
        let z = lp_threshold_probe(Group::Integers, 3.0, 0.01, 10).unwrap();
        assert!(z.convergent);
        assert!(lp_threshold_probe(Group::FreeRank2, 0.5, 1.0, 5).is_err());
        assert!(lp_threshold_probe(Group::FreeRank2, f64::INFINITY, 1.0, 5).is_err());
    }

    #[test]
    fn reduced_norm_of_delta_is_one() {
        let f = GroupFunction::delta(w("ab"));
        let est = reduced_norm_estimate(&f, 4).unwrap();
        assert!((est.value - 1.0).abs() < 1e-9, "got {}", est.value);
        assert!(reduced_norm_estimate(&f, 1).is_err());
    }

    #[test]
    fn reduced_norm_generators_monotone_toward_kesten() {
        let f = generators();
        let kesten = 2.0 * 3f64.sqrt();
        let mut prev = 0.0;
        for r in [2u32, 4, 6] {
            let est = reduced_norm_estimate(&f, r).unwrap();
            assert!(est.value >= prev - 1e-10, "not monotone at r={r}");
            assert!(est.value <= kesten + 1e-9);
            prev = est.value;
        }
        assert!(prev > 3.2, "r=6 estimate too small: {prev}");
    }

    #[test]
    fn reduced_norm_on_integers() {
        let f = GroupFunction::delta(Word::Int(1))
            .add(&GroupFunction::delta(Word::Int(-1)))
            .unwrap();
        let est = reduced_norm_estimate(&f, 64).unwrap();
        assert!(est.value <= 2.0 + 1e-12);
        assert!(est.value > 1.99, "got {}", est.value);
    }

    #[test]
    fn pd_of_phi_t_vs_length_not_pd() {
        // Minimal Schoenberg sanity here; the Gram machinery itself lives in
        // the product-kernel module.
        let words = ball(Group::FreeRank2, 2);
        let t = 0.8;
        let n = words.len();
        let gram = crate::matrix::ComplexMatrix::from_fn(n, n, |i, j| {
            let wij = words[i].inv().mul(&words[j]);
            Complex64::new((-t * wij.length() as f64).exp(), 0.0)
        });
        let eig = crate::matrix::hermitian_eigenvalues(&gram);
        assert!(eig[0] >= tol::PD_MIN_EIG);
    }
}
