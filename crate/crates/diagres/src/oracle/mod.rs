//! Brute-force graded linear algebra: ideal membership, colon ideals,
//! socles and syzygies, computed one graded slice at a time.
//!
//! Slices are split by a fine grading (degree together with exponent
//! residues mod m), with m the largest modulus for which every input is
//! homogeneous. Elements of `k[x,y,z]/(f)` are kept in normal form with
//! x-degree below deg f.

pub mod field;
pub mod linalg;

use std::collections::HashMap;

use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::classifier::validate_char;
use crate::error::{Error, Result};
use crate::pfaffian::Matrix;
use crate::polyring::{Mono, Polynomial, Ring};
use crate::resolver::GradedMap;
use field::{Field, Fp, Qf};
use linalg::{kernel, Span};

type Cls = [u32; 3];

/// `k[vars]` or `k[vars]/(f)` with `f = x^n + g`, g of x-degree below n.
#[derive(Debug, Clone)]
pub struct GradedRing {
    ring: Ring,
    relation: Option<Polynomial>,
    reducer: Option<(u32, Polynomial)>,
    cutoff: usize,
}

impl GradedRing {
    pub fn polynomial(ring: Ring, cutoff: usize) -> Self {
        GradedRing {
            ring,
            relation: None,
            reducer: None,
            cutoff,
        }
    }

    pub fn quotient(relation: Polynomial, cutoff: usize) -> Result<Self> {
        let ring = relation.ring();
        let bad = || Error::Unsupported(format!("relation {relation} is not monic of the form x^n + g"));
        let n = relation.degree().ok_or_else(bad)?;
        if n == 0 || !relation.is_homogeneous() || !relation.coeff([n, 0, 0]).is_one() {
            return Err(bad());
        }
        if relation.terms().any(|(m, _)| m.0[0] >= n && m.0 != [n, 0, 0]) {
            return Err(bad());
        }
        let tail = Polynomial::var_pow(ring, 0, n) - relation.clone();
        Ok(GradedRing {
            ring,
            relation: Some(relation),
            reducer: Some((n, tail)),
            cutoff,
        })
    }

    /// `k[x,y,z]/(x^n+y^n+z^n)`.
    pub fn fermat(c: u64, n: u32, cutoff: usize) -> Self {
        let ring = Ring::xyz(c);
        let f = (0..3).map(|i| Polynomial::var_pow(ring, i, n)).fold(Polynomial::zero(ring), |a, b| a + b);
        Self::quotient(f, cutoff).expect("diagonal relation is monic")
    }

    /// `k[x,y]/(x^n+y^n)`.
    pub fn twovar(c: u64, n: u32, cutoff: usize) -> Self {
        let ring = Ring::xy(c);
        let f = Polynomial::var_pow(ring, 0, n) + Polynomial::var_pow(ring, 1, n);
        Self::quotient(f, cutoff).expect("relation is monic")
    }

    pub fn ring(&self) -> Ring {
        self.ring
    }

    pub fn characteristic(&self) -> u64 {
        self.ring.characteristic
    }

    pub fn relation(&self) -> Option<&Polynomial> {
        self.relation.as_ref()
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn with_cutoff(mut self, cutoff: usize) -> Self {
        self.cutoff = cutoff;
        self
    }

    fn x_bound(&self) -> u32 {
        self.reducer.as_ref().map_or(u32::MAX, |(n, _)| *n)
    }

    /// Representative with x-degree below deg f.
    pub fn normal_form(&self, p: &Polynomial) -> Polynomial {
        let Some((n, tail)) = &self.reducer else {
            return p.clone();
        };
        let mut cur = p.clone();
        loop {
            if cur.terms().all(|(m, _)| m.0[0] < *n) {
                return cur;
            }
            let mut next = Polynomial::zero(cur.ring());
            let mut high = Vec::new();
            for (m, c) in cur.terms() {
                if m.0[0] >= *n {
                    high.push((Mono([m.0[0] - n, m.0[1], m.0[2]]), c.clone()));
                } else {
                    next.add_term(*m, c.clone());
                }
            }
            for (m, c) in high {
                next = next + tail.mul_mono(&m).scale(&c);
            }
            cur = next;
        }
    }

    fn check_ring(&self, p: &Polynomial) -> Result<()> {
        if p.ring() == self.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }
}

/// Largest modulus m such that every term of each polynomial has the same
/// exponent residues mod m.
fn fine_modulus<'a>(polys: impl IntoIterator<Item = &'a Polynomial>) -> u32 {
    let mut g = 0u64;
    for p in polys {
        let mut it = p.terms();
        if let Some((m0, _)) = it.next() {
            for (m, _) in it {
                for k in 0..3 {
                    g = g.gcd(&(m.0[k] as i64 - m0.0[k] as i64).unsigned_abs());
                }
            }
        }
    }
    if g == 0 {
        1
    } else {
        g as u32
    }
}

#[derive(Debug, Clone, Copy)]
struct Grading<'a> {
    ring: &'a GradedRing,
    md: u32,
}

impl<'a> Grading<'a> {
    fn nvars(&self) -> usize {
        self.ring.ring.nvars()
    }

    fn mono_cls(&self, m: &Mono) -> Cls {
        [m.0[0] % self.md, m.0[1] % self.md, m.0[2] % self.md]
    }

    fn add(&self, a: Cls, b: Cls) -> Cls {
        [(a[0] + b[0]) % self.md, (a[1] + b[1]) % self.md, (a[2] + b[2]) % self.md]
    }

    fn sub(&self, a: Cls, b: Cls) -> Cls {
        let m = self.md;
        [(a[0] + m - b[0]) % m, (a[1] + m - b[1]) % m, (a[2] + m - b[2]) % m]
    }

    fn unit(&self, i: usize) -> Cls {
        let mut c = [0; 3];
        c[i] = 1 % self.md;
        c
    }

    /// Degree and class of a nonzero fine-homogeneous polynomial.
    fn poly_cls(&self, p: &Polynomial) -> Option<(i64, Cls)> {
        let mut it = p.terms();
        let (m0, _) = it.next()?;
        let c0 = self.mono_cls(m0);
        let d0 = m0.degree();
        for (m, _) in it {
            if m.degree() != d0 || self.mono_cls(m) != c0 {
                return None;
            }
        }
        Some((i64::from(d0), c0))
    }

    /// Residue classes that can occur in degree `deg`.
    fn classes(&self, deg: i64) -> Vec<Cls> {
        let m = self.md as i64;
        let r = |x: i64| x.rem_euclid(m) as u32;
        match self.nvars() {
            1 => vec![[r(deg), 0, 0]],
            2 => (0..m).map(|a| [a as u32, r(deg - a), 0]).collect(),
            _ => (0..m)
                .flat_map(|a| (0..m).map(move |b| [a as u32, b as u32, r(deg - a - b)]))
                .collect(),
        }
    }

    /// Normal monomials of degree `deg` in class `cls`.
    fn monomials(&self, deg: i64, cls: Cls) -> Vec<Mono> {
        if deg < 0 {
            return Vec::new();
        }
        let d = deg as u32;
        let md = self.md;
        let xb = self.ring.x_bound();
        let mut out = Vec::new();
        match self.nvars() {
            1 => {
                if d % md == cls[0] && d < xb {
                    out.push(Mono([d, 0, 0]));
                }
            }
            2 => {
                let mut a = cls[0];
                while a <= d && a < xb {
                    if (d - a) % md == cls[1] {
                        out.push(Mono([a, d - a, 0]));
                    }
                    a += md;
                }
            }
            _ => {
                let mut a = cls[0];
                while a <= d && a < xb {
                    let mut b = cls[1];
                    while a + b <= d {
                        let c = d - a - b;
                        if c % md == cls[2] {
                            out.push(Mono([a, b, c]));
                        }
                        b += md;
                    }
                    a += md;
                }
            }
        }
        out
    }
}

/// Indexed basis of a slice of a free module: pairs (component, monomial).
#[derive(Debug, Clone, Default)]
struct Basis {
    items: Vec<(usize, Mono)>,
    index: HashMap<(usize, Mono), usize>,
}

impl Basis {
    fn new(items: Vec<(usize, Mono)>) -> Self {
        let index = items.iter().enumerate().map(|(k, it)| (*it, k)).collect();
        Basis { items, index }
    }

    fn len(&self) -> usize {
        self.items.len()
    }

    fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

fn add_poly<F: Field>(
    f: &F,
    basis: &Basis,
    v: &mut [F::E],
    j: usize,
    p: &Polynomial,
    killed: impl Fn(&Mono) -> bool,
) -> Result<()> {
    for (m, c) in p.terms() {
        match basis.index.get(&(j, *m)) {
            Some(&k) => v[k] = f.add(&v[k], &f.from_bigint(c)),
            None if killed(m) => {}
            None => return Err(Error::Inhomogeneous(format!("term {m:?} outside its graded slice"))),
        }
    }
    Ok(())
}

fn lift<F: Field>(f: &F, basis: &Basis, v: &[F::E], ring: Ring, rank: usize) -> Vec<Polynomial> {
    let ints = f.integerize(v);
    let mut out = vec![Polynomial::zero(ring); rank];
    for (k, c) in ints.into_iter().enumerate() {
        let (j, m) = basis.items[k];
        out[j].add_term(m, c);
    }
    out
}

/// `A/I` with A a `GradedRing`; monomial generators of I (only without a
/// relation) become killed columns, the rest span subspaces.
struct Quot<'a, F: Field> {
    f: &'a F,
    gr: Grading<'a>,
    mono_gens: Vec<Mono>,
    gens: Vec<(Polynomial, i64, Cls)>,
}

impl<'a, F: Field> Quot<'a, F> {
    fn new(f: &'a F, ring: &'a GradedRing, gens: &[Polynomial], extra: &[&Polynomial]) -> Result<Self> {
        for g in gens.iter().chain(extra.iter().copied()) {
            ring.check_ring(g)?;
            if !g.is_homogeneous() {
                return Err(Error::Inhomogeneous(g.to_string()));
            }
        }
        let nf: Vec<Polynomial> = gens
            .iter()
            .map(|g| ring.normal_form(g))
            .filter(|g| !g.is_zero())
            .collect();
        let md = fine_modulus(
            nf.iter()
                .chain(extra.iter().map(|p| *p))
                .chain(ring.relation.iter()),
        );
        let gr = Grading { ring, md };
        let mut mono_gens = Vec::new();
        let mut rest = Vec::new();
        for g in nf {
            match g.as_monomial() {
                Some(m) if ring.relation.is_none() => mono_gens.push(m),
                _ => {
                    let (d, c) = gr.poly_cls(&g).expect("fine-homogeneous by choice of modulus");
                    rest.push((g, d, c));
                }
            }
        }
        let minimal: Vec<Mono> = mono_gens
            .iter()
            .enumerate()
            .filter(|(i, m)| {
                !mono_gens
                    .iter()
                    .enumerate()
                    .any(|(k, o)| (o != *m && o.divides(m)) || (o == *m && k < *i))
            })
            .map(|(_, m)| *m)
            .collect();
        Ok(Quot {
            f,
            gr,
            mono_gens: minimal,
            gens: rest,
        })
    }

    fn killed(&self, m: &Mono) -> bool {
        self.mono_gens.iter().any(|g| g.divides(m))
    }

    fn columns(&self, d: i64, cls: Cls) -> Basis {
        Basis::new(
            self.gr
                .monomials(d, cls)
                .into_iter()
                .filter(|m| !self.killed(m))
                .map(|m| (0, m))
                .collect(),
        )
    }

    fn vector(&self, basis: &Basis, p: &Polynomial) -> Result<Vec<F::E>> {
        let mut v = vec![self.f.zero(); basis.len()];
        add_poly(self.f, basis, &mut v, 0, p, |m| self.killed(m))?;
        Ok(v)
    }

    fn ideal_span(&self, d: i64, cls: Cls, basis: &Basis) -> Result<Span<'a, F>> {
        let mut span = Span::new(self.f, basis.len());
        for (g, dg, cg) in &self.gens {
            for m in self.gr.monomials(d - dg, self.gr.sub(cls, *cg)) {
                if span.is_full() {
                    return Ok(span);
                }
                let p = self.gr.ring.normal_form(&g.mul_mono(&m));
                span.insert(self.vector(basis, &p)?);
            }
        }
        Ok(span)
    }
}

macro_rules! with_field {
    ($c:expr, $f:ident => $body:expr) => {
        match $c {
            0 => {
                let $f = &Qf;
                $body
            }
            p => {
                let $f = &Fp(p);
                $body
            }
        }
    };
}

/// True iff the homogeneous `g` lies in the ideal generated by `gens`.
pub fn ideal_membership(ring: &GradedRing, gens: &[Polynomial], g: &Polynomial) -> Result<bool> {
    ring.check_ring(g)?;
    let g = ring.normal_form(g);
    let Some(d) = g.degree() else {
        return Ok(true);
    };
    if !g.is_homogeneous() {
        return Err(Error::Inhomogeneous(g.to_string()));
    }
    if d as usize > ring.cutoff {
        return Err(Error::CutoffExceeded(ring.cutoff));
    }
    with_field!(ring.characteristic(), f => membership_in(f, ring, gens, &g))
}

fn membership_in<F: Field>(f: &F, ring: &GradedRing, gens: &[Polynomial], g: &Polynomial) -> Result<bool> {
    let q = Quot::new(f, ring, gens, &[])?;
    let mut parts: HashMap<Cls, Polynomial> = HashMap::new();
    for (m, c) in g.terms() {
        parts
            .entry(q.gr.mono_cls(m))
            .or_insert_with(|| Polynomial::zero(ring.ring))
            .add_term(*m, c.clone());
    }
    let d = i64::from(g.degree().unwrap_or(0));
    for (cls, part) in parts {
        let cols = q.columns(d, cls);
        let span = q.ideal_span(d, cls, &cols)?;
        if !span.contains(&q.vector(&cols, &part)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff the two ideals agree; both generating sets must be homogeneous.
pub fn ideals_equal(ring: &GradedRing, a: &[Polynomial], b: &[Polynomial]) -> Result<bool> {
    for g in a {
        if !ideal_membership(ring, b, g)? {
            return Ok(false);
        }
    }
    for g in b {
        if !ideal_membership(ring, a, g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Minimal generators of a colon ideal, in increasing degree.
#[derive(Debug, Clone, Serialize)]
pub struct ColonIdeal {
    pub generators: Vec<Polynomial>,
}

impl ColonIdeal {
    pub fn count(&self) -> usize {
        self.generators.len()
    }

    pub fn degrees(&self) -> Vec<u32> {
        self.generators.iter().filter_map(Polynomial::degree).collect()
    }
}

/// Minimal generators of `(gens) : g` in `ring`.
pub fn colon_ideal(ring: &GradedRing, gens: &[Polynomial], g: &Polynomial) -> Result<ColonIdeal> {
    ring.check_ring(g)?;
    let g = ring.normal_form(g);
    if g.is_zero() {
        return Ok(ColonIdeal {
            generators: vec![Polynomial::one(ring.ring)],
        });
    }
    with_field!(ring.characteristic(), f => colon_in(f, ring, gens, &g))
}

fn colon_in<F: Field>(f: &F, ring: &GradedRing, gens: &[Polynomial], g: &Polynomial) -> Result<ColonIdeal> {
    let q = Quot::new(f, ring, gens, &[g])?;
    let gr = q.gr;
    let (dg, cg) = gr
        .poly_cls(g)
        .ok_or_else(|| Error::Inhomogeneous(g.to_string()))?;
    let nv = gr.nvars();
    let mut out = Vec::new();
    let mut prev: HashMap<Cls, Vec<Polynomial>> = HashMap::new();
    let mut prev_full = false;
    for d in 0..=ring.cutoff as i64 {
        let mut cur = HashMap::new();
        let mut all_full = true;
        for cls in gr.classes(d) {
            let cols = q.columns(d, cls);
            let mg: Vec<Mono> = q
                .mono_gens
                .iter()
                .filter(|m| i64::from(m.degree()) == d && gr.mono_cls(m) == cls)
                .copied()
                .collect();
            if cols.is_empty() && mg.is_empty() {
                continue;
            }
            let tcls = gr.add(cls, cg);
            let tcols = q.columns(d + dg, tcls);
            let tspan = q.ideal_span(d + dg, tcls, &tcols)?;
            let kvecs: Vec<Vec<F::E>> = if tspan.is_full() {
                (0..cols.len())
                    .map(|k| {
                        let mut v = vec![f.zero(); cols.len()];
                        v[k] = f.one();
                        v
                    })
                    .collect()
            } else {
                let mut images = Vec::with_capacity(cols.len());
                for (_, m) in &cols.items {
                    let p = ring.normal_form(&g.mul_mono(m));
                    let mut v = q.vector(&tcols, &p)?;
                    tspan.reduce(&mut v);
                    images.push(v);
                }
                kernel(f, &images, tcols.len())
            };
            let full = kvecs.len() == cols.len();
            all_full &= full;
            let lifts: Vec<Polynomial> = kvecs
                .iter()
                .map(|v| lift(f, &cols, v, ring.ring, 1).pop().unwrap())
                .collect();
            if !(d > 0 && prev_full && full) {
                let mut ext_items = cols.items.clone();
                ext_items.extend(mg.iter().map(|m| (0, *m)));
                let ext = Basis::new(ext_items);
                let mut mspan = Span::new(f, ext.len());
                let killed = |m: &Mono| q.killed(m);
                for i in 0..nv {
                    let Some(ks) = prev.get(&gr.sub(cls, gr.unit(i))) else {
                        continue;
                    };
                    for k in ks {
                        let p = ring.normal_form(&k.mul_mono(&unit_mono(i)));
                        let mut v = vec![f.zero(); ext.len()];
                        add_poly(f, &ext, &mut v, 0, &p, killed)?;
                        mspan.insert(v);
                    }
                }
                for (v, p) in kvecs.iter().zip(&lifts) {
                    let mut w = v.clone();
                    w.resize(ext.len(), f.zero());
                    if mspan.insert(w) {
                        out.push(p.clone());
                    }
                }
                for (k, m) in mg.iter().enumerate() {
                    if mspan.insert_unit(cols.len() + k) {
                        out.push(Polynomial::monomial(ring.ring, m.0, 1));
                    }
                }
            }
            cur.insert(cls, lifts);
        }
        if all_full {
            out.sort_by_key(|p| p.degree());
            return Ok(ColonIdeal { generators: out });
        }
        prev = cur;
        prev_full = all_full;
    }
    Err(Error::CutoffExceeded(ring.cutoff))
}

fn unit_mono(i: usize) -> Mono {
    let mut e = [0; 3];
    e[i] = 1;
    Mono(e)
}

/// Socle degrees (with multiplicity, sorted) of `ring/(gens)`, which must
/// have finite length.
pub fn socle(ring: &GradedRing, gens: &[Polynomial]) -> Result<Vec<i64>> {
    with_field!(ring.characteristic(), f => socle_in(f, ring, gens))
}

fn socle_in<F: Field>(f: &F, ring: &GradedRing, gens: &[Polynomial]) -> Result<Vec<i64>> {
    let q = Quot::new(f, ring, gens, &[])?;
    let gr = q.gr;
    let nv = gr.nvars();
    let mut out = Vec::new();
    let mut cache: HashMap<(i64, Cls), (Basis, Span<F>)> = HashMap::new();
    let slice = |d: i64, cls: Cls| -> Result<(Basis, Span<F>)> {
        let cols = q.columns(d, cls);
        let span = q.ideal_span(d, cls, &cols)?;
        Ok((cols, span))
    };
    for d in 0..=ring.cutoff as i64 + 1 {
        if d > ring.cutoff as i64 {
            return Err(Error::CutoffExceeded(ring.cutoff));
        }
        let mut nonzero = false;
        for cls in gr.classes(d) {
            let (cols, span) = match cache.remove(&(d, cls)) {
                Some(s) => s,
                None => slice(d, cls)?,
            };
            if span.dim() == cols.len() {
                continue;
            }
            nonzero = true;
            let mut targets = Vec::new();
            let mut width = 0;
            for i in 0..nv {
                let tc = gr.add(cls, gr.unit(i));
                if !cache.contains_key(&(d + 1, tc)) {
                    let s = slice(d + 1, tc)?;
                    cache.insert((d + 1, tc), s);
                }
                targets.push((tc, width));
                width += cache[&(d + 1, tc)].0.len();
            }
            let mut images = Vec::with_capacity(cols.len());
            for (_, m) in &cols.items {
                let mut v = Vec::with_capacity(width);
                for (i, (tc, _)) in targets.iter().enumerate() {
                    let (tb, ts) = &cache[&(d + 1, *tc)];
                    let p = ring.normal_form(&Polynomial::monomial(ring.ring, m.mul(&unit_mono(i)).0, 1));
                    let mut w = q.vector(tb, &p)?;
                    ts.reduce(&mut w);
                    v.extend(w);
                }
                images.push(v);
            }
            let ker = kernel(f, &images, width).len();
            for _ in 0..ker - span.dim() {
                out.push(d);
            }
        }
        if !nonzero {
            break;
        }
        cache.retain(|(e, _), _| *e > d);
    }
    out.sort_unstable();
    Ok(out)
}

/// Socle degrees of `Q = k[x,y,z]/(x^n+y^n+z^n, x^N, y^N, z^N)`.
pub fn socle_compute(c: u64, n: u32, big_n: u32) -> Result<Vec<i64>> {
    validate_char(c)?;
    let ring = GradedRing::fermat(c, n, 3 * big_n as usize + 3);
    socle(&ring, &frobenius_gens(ring.ring, big_n))
}

/// `x^N, y^N, z^N` (or `x^N, y^N` in two variables).
pub fn frobenius_gens(ring: Ring, big_n: u32) -> Vec<Polynomial> {
    (0..ring.nvars()).map(|i| Polynomial::var_pow(ring, i, big_n)).collect()
}

/// Dimensions of `(ring/(gens))_d` for `d = 0..=upto`.
pub fn hilbert_function(ring: &GradedRing, gens: &[Polynomial], upto: usize) -> Result<Vec<usize>> {
    with_field!(ring.characteristic(), f => {
        let q = Quot::new(f, ring, gens, &[])?;
        let mut out = Vec::with_capacity(upto + 1);
        for d in 0..=upto as i64 {
            let mut dim = 0;
            for cls in q.gr.classes(d) {
                let cols = q.columns(d, cls);
                dim += cols.len() - q.ideal_span(d, cls, &cols)?.dim();
            }
            out.push(dim);
        }
        Ok(out)
    })
}

/// Classes for the generators of both free modules making `map` fine-graded.
fn assign_classes(gr: &Grading, map: &GradedMap, target: Option<&[Cls]>) -> Option<(Vec<Cls>, Vec<Cls>)> {
    let m = map.matrix();
    let (r, c) = (m.rows(), m.cols());
    let mut tc: Vec<Option<Cls>> = match target {
        Some(t) => t.iter().map(|x| Some(*x)).collect(),
        None => vec![None; r],
    };
    let mut sc: Vec<Option<Cls>> = vec![None; c];
    let mut ent: HashMap<(usize, usize), Cls> = HashMap::new();
    for i in 0..r {
        for j in 0..c {
            if !m[(i, j)].is_zero() {
                ent.insert((i, j), gr.poly_cls(&m[(i, j)])?.1);
            }
        }
    }
    loop {
        let mut changed = false;
        for (&(i, j), &e) in &ent {
            match (tc[i], sc[j]) {
                (Some(t), None) => {
                    sc[j] = Some(gr.add(t, e));
                    changed = true;
                }
                (None, Some(s)) => {
                    tc[i] = Some(gr.sub(s, e));
                    changed = true;
                }
                (Some(t), Some(s)) if gr.add(t, e) != s => return None,
                _ => {}
            }
        }
        if !changed {
            if let Some(i) = tc.iter().position(Option::is_none) {
                tc[i] = Some([0; 3]);
            } else if let Some(j) = sc.iter().position(Option::is_none) {
                sc[j] = Some([0; 3]);
            } else {
                break;
            }
        }
    }
    Some((
        tc.into_iter().map(Option::unwrap).collect(),
        sc.into_iter().map(Option::unwrap).collect(),
    ))
}

struct KernelGen {
    degree: i64,
    cls: Cls,
    element: Vec<Polynomial>,
}

fn kernel_generators<F: Field>(
    f: &F,
    gr: Grading,
    map: &GradedMap,
    tcls: &[Cls],
    scls: &[Cls],
    cutoff: i64,
) -> Result<Vec<KernelGen>> {
    let ring = gr.ring;
    let m = map.matrix();
    let (rows, cols) = (m.rows(), m.cols());
    let ent: Vec<Vec<Polynomial>> = (0..rows)
        .map(|i| (0..cols).map(|j| ring.normal_form(&m[(i, j)])).collect())
        .collect();
    let (src, tgt) = (map.source(), map.target());
    let Some(&dmin) = src.iter().min() else {
        return Ok(Vec::new());
    };
    let nv = gr.nvars();
    let mut out = Vec::new();
    let mut prev: HashMap<Cls, Vec<Vec<Polynomial>>> = HashMap::new();
    for d in dmin..=cutoff {
        let mut cur = HashMap::new();
        for cls in gr.classes(d) {
            let sb = Basis::new(
                (0..cols)
                    .flat_map(|j| {
                        gr.monomials(d - src[j], gr.sub(cls, scls[j]))
                            .into_iter()
                            .map(move |mo| (j, mo))
                    })
                    .collect(),
            );
            if sb.is_empty() {
                continue;
            }
            let tb = Basis::new(
                (0..rows)
                    .flat_map(|i| {
                        gr.monomials(d - tgt[i], gr.sub(cls, tcls[i]))
                            .into_iter()
                            .map(move |mo| (i, mo))
                    })
                    .collect(),
            );
            let mut images = Vec::with_capacity(sb.len());
            for (j, mo) in &sb.items {
                let mut v = vec![f.zero(); tb.len()];
                for (i, row) in ent.iter().enumerate() {
                    if !row[*j].is_zero() {
                        let p = ring.normal_form(&row[*j].mul_mono(mo));
                        add_poly(f, &tb, &mut v, i, &p, |_| false)?;
                    }
                }
                images.push(v);
            }
            let kv = kernel(f, &images, tb.len());
            if kv.is_empty() {
                continue;
            }
            let mut mspan = Span::new(f, sb.len());
            for i in 0..nv {
                let Some(ks) = prev.get(&gr.sub(cls, gr.unit(i))) else {
                    continue;
                };
                for k in ks {
                    let mut v = vec![f.zero(); sb.len()];
                    for (j, comp) in k.iter().enumerate() {
                        let p = ring.normal_form(&comp.mul_mono(&unit_mono(i)));
                        add_poly(f, &sb, &mut v, j, &p, |_| false)?;
                    }
                    mspan.insert(v);
                }
            }
            let mut elems = Vec::with_capacity(kv.len());
            for v in &kv {
                let el = lift(f, &sb, v, ring.ring, cols);
                if mspan.insert(v.clone()) {
                    out.push(KernelGen {
                        degree: d,
                        cls,
                        element: el.clone(),
                    });
                }
                elems.push(el);
            }
            cur.insert(cls, elems);
        }
        prev = cur;
    }
    Ok(out)
}

fn kernel_map(ring: &GradedRing, map: &GradedMap, gens: &[KernelGen]) -> Result<GradedMap> {
    let rows = map.source().len();
    let m = Matrix::from_fn(ring.ring, rows, gens.len(), |j, c| gens[c].element[j].clone());
    GradedMap::new(m, gens.iter().map(|g| g.degree).collect(), map.source().to_vec())
}

/// Minimal generators of `ker(map)` over `ring` up to degree `ring.cutoff()`,
/// as the next map of a resolution.
pub fn syzygy_step(ring: &GradedRing, map: &GradedMap) -> Result<GradedMap> {
    if map.ring() != ring.ring {
        return Err(Error::RingMismatch);
    }
    let md = fine_modulus(map.matrix().entries().chain(ring.relation.iter()));
    let (gr, tc, sc) = {
        let gr = Grading { ring, md };
        match assign_classes(&gr, map, None) {
            Some((t, s)) => (gr, t, s),
            None => {
                let gr = Grading { ring, md: 1 };
                (gr, vec![[0; 3]; map.target().len()], vec![[0; 3]; map.source().len()])
            }
        }
    };
    let gens = with_field!(ring.characteristic(), f => kernel_generators(f, gr, map, &tc, &sc, ring.cutoff as i64))?;
    kernel_map(ring, map, &gens)
}

/// Outcome of the oracle's projective dimension probe.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PdProbe {
    /// The resolution stops: a certified injective map.
    Finite { pd: usize, ranks: Vec<usize> },
    /// Ranks 1,3,4,4,4 with F4 = F2(-n): the start of a periodic tail.
    InfiniteEvidence { ranks: Vec<usize>, degrees: Vec<Vec<i64>> },
}

/// Resolves `Q` over `R`, computing at most `steps` differentials, and
/// classifies the pattern. Tail evidence needs `steps = 4`.
pub fn pd_probe(c: u64, n: u32, big_n: u32, steps: usize) -> Result<PdProbe> {
    validate_char(c)?;
    if !(1..=4).contains(&steps) {
        return Err(Error::OutOfRange(format!("steps = {steps}, expected 1..=4")));
    }
    let (n_, bn) = (i64::from(n), i64::from(big_n));
    let ring = GradedRing::fermat(c, n, 0);
    let gr = Grading { ring: &ring, md: n };
    let gens = frobenius_gens(ring.ring, big_n);
    let first = GradedMap::new(
        Matrix::from_rows(ring.ring, vec![gens.clone()]),
        vec![bn; 3],
        vec![0],
    )?;
    let mut maps = vec![first];
    let mut tcls = vec![vec![[0u32; 3]]];
    let mut scls: Vec<Cls> = gens.iter().map(|g| gr.poly_cls(g).unwrap().1).collect();
    let mut degrees = vec![vec![0], vec![bn; 3]];
    while maps.len() < steps {
        let last = maps.last().unwrap();
        let cutoff = if maps.len() == 1 {
            3 * bn + 3 + n_
        } else {
            last.source().iter().max().unwrap() + n_
        };
        let tc = tcls.last().unwrap().clone();
        let ker = with_field!(c, f => kernel_generators(f, gr, last, &tc, &scls, cutoff))?;
        if ker.is_empty() {
            if injective_certificate(&ring, last, bn)? {
                let ranks = degrees.iter().map(Vec::len).collect();
                return Ok(PdProbe::Finite {
                    pd: maps.len(),
                    ranks,
                });
            }
            return Err(Error::Inconclusive(format!(
                "no syzygies of step {} up to degree {cutoff} but no finiteness certificate",
                maps.len()
            )));
        }
        let next = kernel_map(&ring, last, &ker)?;
        degrees.push(next.source().to_vec());
        tcls.push(scls.clone());
        scls = ker.iter().map(|k| k.cls).collect();
        maps.push(next);
    }
    if steps < 4 {
        return Err(Error::Inconclusive(format!("no free syzygy within {steps} steps")));
    }
    let ranks: Vec<usize> = degrees.iter().map(Vec::len).collect();
    let mut f2: Vec<i64> = degrees[2].iter().map(|d| d + n_).collect();
    let mut f4 = degrees[4].clone();
    f2.sort_unstable();
    f4.sort_unstable();
    if ranks == [1, 3, 4, 4, 4] && f2 == f4 {
        Ok(PdProbe::InfiniteEvidence { ranks, degrees })
    } else {
        Err(Error::Inconclusive(format!("rank pattern {ranks:?}")))
    }
}

/// The maximal minors of `map` contain `x^D, y^D, z^D` for some D, so the map
/// is injective.
fn injective_certificate(ring: &GradedRing, map: &GradedMap, big_n: i64) -> Result<bool> {
    let m = map.matrix();
    let (r, s) = (m.rows(), m.cols());
    if s == 0 || s > r {
        return Ok(s == 0);
    }
    let minors: Vec<Polynomial> = subsets(r, s)
        .iter()
        .map(|rows| ring.normal_form(&m.minor_rows(rows)))
        .filter(|p| !p.is_zero())
        .collect();
    let top = minors.iter().filter_map(Polynomial::degree).max().unwrap_or(0);
    let d = (top as i64).max(big_n) as u32;
    let probe = ring.clone().with_cutoff(d as usize);
    for g in frobenius_gens(ring.ring, d) {
        if !ideal_membership(&probe, &minors, &g)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = subsets(n - 1, k);
    for mut s in subsets(n - 1, k - 1) {
        s.push(n - 1);
        out.push(s);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xyz(c: u64) -> Ring {
        Ring::xyz(c)
    }

    #[test]
    fn normal_form_reduces_x_power() {
        let r = GradedRing::fermat(0, 2, 20);
        let x3 = Polynomial::var_pow(xyz(0), 0, 3);
        let nf = r.normal_form(&x3);
        assert_eq!(nf.to_string(), "-x*y^2 - x*z^2");
    }

    #[test]
    fn membership_basic() {
        let p = GradedRing::polynomial(xyz(0), 20);
        let gens = frobenius_gens(xyz(0), 2);
        let g = Polynomial::monomial(xyz(0), [2, 1, 0], 3) + Polynomial::monomial(xyz(0), [0, 3, 0], 1);
        assert!(ideal_membership(&p, &gens, &g).unwrap());
        let h = Polynomial::monomial(xyz(0), [1, 1, 1], 1);
        assert!(!ideal_membership(&p, &gens, &h).unwrap());
        let r = GradedRing::fermat(0, 1, 20);
        let x = Polynomial::var(xyz(0), 0);
        let yz = Polynomial::var(xyz(0), 1) + Polynomial::var(xyz(0), 2);
        assert!(ideals_equal(&r, &[x], &[yz]).unwrap());
    }

    #[test]
    fn socle_of_monomial_complete_intersection() {
        let p = GradedRing::polynomial(xyz(5), 20);
        assert_eq!(socle(&p, &frobenius_gens(xyz(5), 3)).unwrap(), vec![6]);
    }

    #[test]
    fn colon_of_complete_intersection_by_fermat() {
        // (x^2,y^2,z^2) : (x+y+z) in k[x,y,z]
        let ring = GradedRing::polynomial(xyz(0), 20);
        let f = GradedRing::fermat(0, 1, 0).relation().unwrap().clone();
        let col = colon_ideal(&ring, &frobenius_gens(xyz(0), 2), &f).unwrap();
        let base = frobenius_gens(xyz(0), 2);
        for g in &base {
            assert!(ideal_membership(&ring, &col.generators, g).unwrap());
        }
        for g in &col.generators {
            let prod = g * &f;
            assert!(ideal_membership(&ring, &base, &prod).unwrap());
        }
    }

    #[test]
    fn koszul_syzygies() {
        let ring = GradedRing::polynomial(xyz(7), 10);
        let g = frobenius_gens(xyz(7), 1);
        let m = GradedMap::new(Matrix::from_rows(xyz(7), vec![g]), vec![1; 3], vec![0]).unwrap();
        let s = syzygy_step(&ring, &m).unwrap();
        assert_eq!(s.source(), &[2, 2, 2]);
        let t = syzygy_step(&ring, &s).unwrap();
        assert_eq!(t.source(), &[3]);
        let u = syzygy_step(&ring, &t).unwrap();
        assert!(u.source().is_empty());
    }

    #[test]
    fn probe_divisible_case_is_finite() {
        let r = pd_probe(0, 2, 4, 4);
        assert!(matches!(r, Ok(PdProbe::Finite { pd: 2, .. })), "{r:?}");
    }

    #[test]
    fn probe_infinite_case() {
        match pd_probe(0, 2, 5, 4).unwrap() {
            PdProbe::InfiniteEvidence { ranks, .. } => assert_eq!(ranks, vec![1, 3, 4, 4, 4]),
            other => panic!("{other:?}"),
        }
    }
}
