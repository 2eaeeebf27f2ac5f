//! Prefix-replacement homeomorphisms of the `n`-ary Cantor space (Thompson's
//! `V_n`) and their action on the orbit of `000...`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::numbers::Rational;
use crate::solver::PartialInjection;

pub const MAX_ALPHABET: u32 = 36;

pub(crate) fn digit_char(d: u8) -> char {
    std::char::from_digit(d as u32, MAX_ALPHABET).expect("digit below 36")
}

pub fn format_digits(word: &[u8]) -> String {
    word.iter().map(|&d| digit_char(d)).collect()
}

pub fn parse_digits(s: &str, n: u32) -> Result<Vec<u8>> {
    s.chars()
        .map(|c| match c.to_digit(MAX_ALPHABET) {
            Some(d) if d < n && !c.is_ascii_uppercase() => Ok(d as u8),
            _ => Err(Error::InvalidElement(format!("{c:?} is not a letter of the {n}-letter alphabet"))),
        })
        .collect()
}

fn check_alphabet(n: u32) -> Result<()> {
    if (2..=MAX_ALPHABET).contains(&n) {
        Ok(())
    } else {
        Err(Error::InvalidElement(format!("alphabet size {n} is outside 2..=36")))
    }
}

fn strip_zeros(mut word: Vec<u8>) -> Vec<u8> {
    while word.last() == Some(&0) {
        word.pop();
    }
    word
}

fn comparable(a: &[u8], b: &[u8]) -> bool {
    a.starts_with(b) || b.starts_with(a)
}

/// Pairwise prefix-incomparability of a set of words.
pub(crate) fn is_antichain(words: &[Vec<u8>]) -> bool {
    let mut sorted: Vec<&Vec<u8>> = words.iter().collect();
    sorted.sort();
    // in lexicographic order a word is followed immediately by its extensions
    sorted.windows(2).all(|w| !w[1].starts_with(w[0]))
}

/// A complete prefix code: an antichain whose cones cover the Cantor space.
pub(crate) fn is_complete_code(words: &[Vec<u8>], n: u32) -> bool {
    if words.is_empty() || !is_antichain(words) {
        return false;
    }
    let kraft = words
        .iter()
        .fold(Rational::zero(), |acc, w| acc + Rational::inverse_power(n, w.len() as u32));
    kraft.is_one()
}

/// The minimal set of cones that, together with an antichain, forms a
/// complete prefix code.
pub(crate) fn code_complement(cones: &[Vec<u8>], n: u32) -> BTreeSet<Vec<u8>> {
    let mut on_path: BTreeSet<&[u8]> = BTreeSet::new();
    for c in cones {
        for l in 0..=c.len() {
            on_path.insert(&c[..l]);
        }
    }
    let mut out = BTreeSet::new();
    for c in cones {
        for l in 0..c.len() {
            for letter in 0..n as u8 {
                let mut cand = c[..l].to_vec();
                cand.push(letter);
                if !on_path.contains(cand.as_slice()) {
                    out.insert(cand);
                }
            }
        }
    }
    out
}

/// A point of the orbit of `000...`: the eventually-zero sequence
/// `stem 000...`, with the stem stored without trailing zeros.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OrbitPoint {
    n: u32,
    stem: Vec<u8>,
}

impl OrbitPoint {
    pub fn new(n: u32, stem: Vec<u8>) -> Result<Self> {
        check_alphabet(n)?;
        if stem.iter().any(|&d| d as u32 >= n) {
            return Err(Error::InvalidInput(format!("stem has a letter outside the {n}-letter alphabet")));
        }
        if stem.last() == Some(&0) {
            return Err(Error::InvalidInput("a stem may not end in 0".into()));
        }
        Ok(OrbitPoint { n, stem })
    }

    /// Any finite word, read as `word 000...`.
    pub fn from_word(n: u32, word: Vec<u8>) -> Self {
        OrbitPoint { n, stem: strip_zeros(word) }
    }

    pub fn parse(n: u32, s: &str) -> Result<Self> {
        OrbitPoint::new(n, parse_digits(s, n)?)
    }

    pub fn alphabet_size(&self) -> u32 {
        self.n
    }

    pub fn stem(&self) -> &[u8] {
        &self.stem
    }

    /// All orbit points in length-lexicographic order of their stems.
    pub fn enumerate(n: u32) -> impl Iterator<Item = OrbitPoint> {
        let mut next: Option<Vec<u8>> = None;
        std::iter::from_fn(move || {
            let cur = match next.take() {
                None => Vec::new(),
                Some(w) => w,
            };
            next = Some(successor(&cur, n as u8));
            Some(OrbitPoint { n, stem: cur })
        })
    }
}

/// Next stem in length-lexicographic order (stems never end in 0).
fn successor(word: &[u8], n: u8) -> Vec<u8> {
    let mut w = word.to_vec();
    if w.is_empty() {
        return vec![1];
    }
    let last = w.len() - 1;
    if w[last] + 1 < n {
        w[last] += 1;
        return w;
    }
    // carry into the free prefix
    w[last] = 1;
    let mut i = last;
    while i > 0 {
        i -= 1;
        if w[i] + 1 < n {
            w[i] += 1;
            return w;
        }
        w[i] = 0;
    }
    let mut longer = vec![0; w.len() + 1];
    *longer.last_mut().unwrap() = 1;
    longer
}

impl fmt::Display for OrbitPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_digits(&self.stem))
    }
}

impl fmt::Debug for OrbitPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", format_digits(&self.stem))
    }
}

/// An element of `V_n`: the domain code word `u` of each pair is replaced by
/// its range word `v`, `(u z)f = v z`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct PrefixMap {
    n: u32,
    /// Sorted by domain word, always reduced.
    pairs: Vec<(Vec<u8>, Vec<u8>)>,
}

impl PrefixMap {
    pub fn identity(n: u32) -> Self {
        PrefixMap { n, pairs: vec![(Vec::new(), Vec::new())] }
    }

    pub fn new(n: u32, pairs: Vec<(Vec<u8>, Vec<u8>)>) -> Result<Self> {
        check_alphabet(n)?;
        if pairs.iter().flat_map(|(a, b)| a.iter().chain(b)).any(|&d| d as u32 >= n) {
            return Err(Error::InvalidElement(format!("letter outside the {n}-letter alphabet")));
        }
        let (dom, ran): (Vec<_>, Vec<_>) = pairs.iter().cloned().unzip();
        if !is_complete_code(&dom, n) {
            return Err(Error::InvalidElement("domain words do not form a complete prefix code".into()));
        }
        if !is_complete_code(&ran, n) {
            return Err(Error::InvalidElement("range words do not form a complete prefix code".into()));
        }
        Ok(Self::from_valid(n, pairs))
    }

    pub fn parse(n: u32, pairs: &[(&str, &str)]) -> Result<Self> {
        let pairs = pairs
            .iter()
            .map(|(a, b)| Ok((parse_digits(a, n)?, parse_digits(b, n)?)))
            .collect::<Result<Vec<_>>>()?;
        PrefixMap::new(n, pairs)
    }

    fn from_valid(n: u32, pairs: Vec<(Vec<u8>, Vec<u8>)>) -> Self {
        let mut map: BTreeMap<Vec<u8>, Vec<u8>> = pairs.into_iter().collect();
        reduce(&mut map, n as u8);
        PrefixMap { n, pairs: map.into_iter().collect() }
    }

    pub fn alphabet_size(&self) -> u32 {
        self.n
    }

    pub fn pairs(&self) -> &[(Vec<u8>, Vec<u8>)] {
        &self.pairs
    }

    pub fn cone_count(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_identity(&self) -> bool {
        self.pairs.len() == 1 && self.pairs[0].0.is_empty() && self.pairs[0].1.is_empty()
    }

    fn lookup(&self, domain_word: &[u8]) -> Option<&[u8]> {
        self.pairs
            .binary_search_by(|(d, _)| d.as_slice().cmp(domain_word))
            .ok()
            .map(|i| self.pairs[i].1.as_slice())
    }

    /// Image of the sequence `word 000...`, found through the unique domain
    /// word that prefixes it.
    fn image_of_word(&self, word: &[u8]) -> Vec<u8> {
        let max_len = self.pairs.iter().map(|(d, _)| d.len()).max().unwrap_or(0);
        let mut padded = word.to_vec();
        if padded.len() < max_len {
            padded.resize(max_len, 0);
        }
        for l in 0..=max_len {
            if let Some(v) = self.lookup(&padded[..l]) {
                let mut out = v.to_vec();
                out.extend_from_slice(&padded[l..]);
                return out;
            }
        }
        unreachable!("complete domain code covers every sequence")
    }

    pub fn apply(&self, x: &OrbitPoint) -> Result<OrbitPoint> {
        if x.n != self.n {
            return Err(Error::kind_mismatch(
                format!("prefix(n={})", self.n),
                format!("orbit point(n={})", x.n),
            ));
        }
        Ok(OrbitPoint { n: self.n, stem: strip_zeros(self.image_of_word(&x.stem)) })
    }

    /// `x -> ((x)self)other`, through the common refinement of this range
    /// code and the other domain code.
    pub fn compose(&self, other: &PrefixMap) -> Result<PrefixMap> {
        if self.n != other.n {
            return Err(Error::kind_mismatch(format!("prefix(n={})", self.n), format!("prefix(n={})", other.n)));
        }
        let mut out = Vec::with_capacity(self.pairs.len() + other.pairs.len());
        for (u, v) in &self.pairs {
            if let Some(l) = (0..=v.len()).find(|&l| other.lookup(&v[..l]).is_some()) {
                let mut img = other.lookup(&v[..l]).unwrap().to_vec();
                img.extend_from_slice(&v[l..]);
                out.push((u.clone(), img));
            } else {
                let start = other.pairs.partition_point(|(d, _)| d < v);
                for (d, r) in other.pairs[start..].iter().take_while(|(d, _)| d.starts_with(v)) {
                    let mut dom = u.clone();
                    dom.extend_from_slice(&d[v.len()..]);
                    out.push((dom, r.clone()));
                }
            }
        }
        Ok(PrefixMap::from_valid(self.n, out))
    }

    pub fn inverse(&self) -> PrefixMap {
        let pairs = self.pairs.iter().map(|(a, b)| (b.clone(), a.clone())).collect();
        PrefixMap::from_valid(self.n, pairs)
    }

    /// A point `x` avoiding `excluded` whose image also avoids it; when
    /// `require_moved`, additionally `(x)self != x`.
    pub fn find_moved_point(
        &self,
        excluded: &BTreeSet<OrbitPoint>,
        require_moved: bool,
    ) -> Result<(OrbitPoint, OrbitPoint)> {
        if !require_moved {
            for x in OrbitPoint::enumerate(self.n) {
                if excluded.contains(&x) {
                    continue;
                }
                let y = self.apply(&x)?;
                if !excluded.contains(&y) {
                    return Ok((x, y));
                }
            }
            unreachable!("orbit is infinite");
        }
        let (u, v) = self.disjoint_cone_pair().ok_or_else(|| {
            Error::Hypothesis("the identity moves no point".into())
        })?;
        for s in OrbitPoint::enumerate(self.n) {
            let mut xw = u.clone();
            xw.extend_from_slice(&s.stem);
            let mut yw = v.clone();
            yw.extend_from_slice(&s.stem);
            let x = OrbitPoint::from_word(self.n, xw);
            let y = OrbitPoint::from_word(self.n, yw);
            if !excluded.contains(&x) && !excluded.contains(&y) {
                debug_assert_ne!(x, y);
                return Ok((x, y));
            }
        }
        unreachable!("orbit is infinite");
    }

    /// A domain cone `u` whose image cone `v` is disjoint from it.
    fn disjoint_cone_pair(&self) -> Option<(Vec<u8>, Vec<u8>)> {
        let (u, v) = self.pairs.iter().find(|(u, v)| u != v)?;
        if !comparable(u, v) {
            return Some((u.clone(), v.clone()));
        }
        // one is a proper prefix of the other; step into a child that leaves
        // the shared branch
        let (short, long) = if u.len() < v.len() { (u, v) } else { (v, u) };
        let branch = long[short.len()];
        let letter = if branch == 0 { 1 } else { 0 };
        let mut u2 = u.clone();
        u2.push(letter);
        let mut v2 = v.clone();
        v2.push(letter);
        debug_assert!(!comparable(&u2, &v2));
        Some((u2, v2))
    }
}

/// Collapses complete sibling blocks `u i -> v i` into `u -> v` until none remain.
fn reduce(map: &mut BTreeMap<Vec<u8>, Vec<u8>>, n: u8) {
    loop {
        let mut blocks: Vec<(Vec<u8>, Vec<u8>)> = Vec::new();
        for (d, r) in map.iter() {
            if d.last() != Some(&0) || r.last() != Some(&0) {
                continue;
            }
            let u = &d[..d.len() - 1];
            let v = &r[..r.len() - 1];
            let full = (1..n).all(|i| {
                let mut di = u.to_vec();
                di.push(i);
                let mut vi = v.to_vec();
                vi.push(i);
                map.get(&di) == Some(&vi)
            });
            if full {
                blocks.push((u.to_vec(), v.to_vec()));
            }
        }
        if blocks.is_empty() {
            return;
        }
        for (u, v) in blocks {
            for i in 0..n {
                let mut di = u.clone();
                di.push(i);
                map.remove(&di);
            }
            map.insert(u, v);
        }
    }
}

/// An element of `V_n` agreeing with the injection on every pair.
///
/// Each pair `a -> b` becomes the cone replacement `a 0^j -> b 0^j` for the
/// least common depth `j` that makes the domain cones and the image cones
/// antichains; the two complements are balanced by splitting their shortest
/// leaves and then paired in lexicographic order.
pub fn extend_partial(sigma: &PartialInjection<OrbitPoint>, n: u32) -> Result<PrefixMap> {
    check_alphabet(n)?;
    if sigma.is_empty() {
        return Ok(PrefixMap::identity(n));
    }
    if sigma.pairs().iter().any(|(a, b)| a.n != n || b.n != n) {
        return Err(Error::InvalidInput(format!("injection points must use the {n}-letter alphabet")));
    }
    let padded = |p: &OrbitPoint, j: usize| {
        let mut w = p.stem.clone();
        w.resize(w.len() + j, 0);
        w
    };
    let mut j = 0usize;
    let (dom, img, mut dom_rest, mut img_rest) = loop {
        let dom: Vec<Vec<u8>> = sigma.pairs().iter().map(|(a, _)| padded(a, j)).collect();
        let img: Vec<Vec<u8>> = sigma.pairs().iter().map(|(_, b)| padded(b, j)).collect();
        if is_antichain(&dom) && is_antichain(&img) {
            let dr = code_complement(&dom, n);
            let ir = code_complement(&img, n);
            if dr.is_empty() == ir.is_empty() {
                break (dom, img, dr, ir);
            }
        }
        j += 1;
    };
    while dom_rest.len() != img_rest.len() {
        let side = if dom_rest.len() < img_rest.len() { &mut dom_rest } else { &mut img_rest };
        let leaf = side.iter().min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b))).unwrap().clone();
        side.remove(&leaf);
        for i in 0..n as u8 {
            let mut child = leaf.clone();
            child.push(i);
            side.insert(child);
        }
    }
    let mut pairs: Vec<(Vec<u8>, Vec<u8>)> = dom.into_iter().zip(img).collect();
    pairs.extend(dom_rest.into_iter().zip(img_rest));
    PrefixMap::new(n, pairs)
}

/// A random complete prefix code with exactly `leaves` words; `leaves` must
/// be `1 mod (n - 1)`.
pub fn random_code<R: Rng + ?Sized>(rng: &mut R, n: u32, leaves: usize) -> Vec<Vec<u8>> {
    debug_assert_eq!((leaves - 1) % (n as usize - 1), 0);
    let mut code: Vec<Vec<u8>> = vec![Vec::new()];
    while code.len() < leaves {
        let i = rng.gen_range(0..code.len());
        let leaf = code.swap_remove(i);
        for d in 0..n as u8 {
            let mut c = leaf.clone();
            c.push(d);
            code.push(c);
        }
    }
    code.sort();
    code
}

/// A random element of `V_n` presented with at most `max_cones` cones.
pub fn random_prefix_map<R: Rng + ?Sized>(rng: &mut R, n: u32, max_cones: usize) -> PrefixMap {
    let max_splits = (max_cones.max(1) - 1) / (n as usize - 1);
    let splits = rng.gen_range(0..=max_splits);
    let leaves = 1 + splits * (n as usize - 1);
    let dom = random_code(rng, n, leaves);
    let mut ran = random_code(rng, n, leaves);
    ran.shuffle(rng);
    PrefixMap::from_valid(n, dom.into_iter().zip(ran).collect())
}
