//! Planar diagrams on `n` strands as noncrossing perfect matchings.
//!
//! Boundary points are numbered `1..=2n`: points `1..=n` are the right dots
//! read bottom-to-top, points `n+1..=2n` are the left dots read top-to-bottom.
//! Left dot `i` is therefore point `2n+1-i`. Walking the points in this order
//! and writing `u` on the first visit of an arc and `d` on the second gives the
//! Dyck word of the diagram.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Strand limit imposed by the 64-bit Dyck code.
pub const MAX_STRANDS: usize = 32;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Step {
    U,
    D,
}

/// A balanced word in `u`/`d` whose prefixes never have more `d`s than `u`s.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DyckWord(Vec<Step>);

impl DyckWord {
    pub fn new(steps: Vec<Step>) -> Result<Self> {
        let mut height = 0i64;
        for s in &steps {
            height += if *s == Step::U { 1 } else { -1 };
            if height < 0 {
                return Err(Error::InvalidDyckWord(render(&steps)));
            }
        }
        if height != 0 {
            return Err(Error::InvalidDyckWord(render(&steps)));
        }
        Ok(Self(steps))
    }

    pub fn steps(&self) -> &[Step] {
        &self.0
    }

    /// Half the length, i.e. the strand count of the matching diagram.
    pub fn semilength(&self) -> usize {
        self.0.len() / 2
    }

    /// Height of the first peak, which is the number of leading `u`s.
    pub fn first_peak_height(&self) -> usize {
        self.0.iter().take_while(|s| **s == Step::U).count()
    }
}

fn render(steps: &[Step]) -> String {
    steps
        .iter()
        .map(|s| if *s == Step::U { 'u' } else { 'd' })
        .collect()
}

impl fmt::Display for DyckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render(&self.0))
    }
}

impl fmt::Debug for DyckWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DyckWord({self})")
    }
}

impl FromStr for DyckWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let steps = s
            .trim()
            .chars()
            .map(|c| match c {
                'u' | 'U' => Ok(Step::U),
                'd' | 'D' => Ok(Step::D),
                _ => Err(Error::InvalidDyckWord(s.to_string())),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(steps)
    }
}

/// A planar diagram: a fixed-point-free noncrossing involution on `2n` points.
///
/// Ordering is Dyck-lex with `u < d` (the `code` field packs the word with
/// `u = 0`, `d = 1`, first letter most significant).
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Diagram {
    n: usize,
    code: u64,
    /// 0-based partner of each 0-based point.
    partner: Box<[u8]>,
}

/// Product of two diagrams together with the number of erased loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MulResult {
    pub diagram: Diagram,
    pub loops: usize,
}

impl Diagram {
    fn from_partner(n: usize, partner: Vec<u8>) -> Self {
        let mut code = 0u64;
        for (k, &p) in partner.iter().enumerate() {
            code <<= 1;
            if (p as usize) < k {
                code |= 1;
            }
        }
        Self {
            n,
            code,
            partner: partner.into_boxed_slice(),
        }
    }

    fn check_strands(n: usize) -> Result<()> {
        if n > MAX_STRANDS {
            return Err(Error::TooManyStrands(n));
        }
        Ok(())
    }

    pub fn identity(n: usize) -> Result<Self> {
        Self::check_strands(n)?;
        let mut partner = vec![0u8; 2 * n];
        for k in 0..n {
            partner[k] = (2 * n - 1 - k) as u8;
            partner[2 * n - 1 - k] = k as u8;
        }
        Ok(Self::from_partner(n, partner))
    }

    /// The generator `U_i`, `1 <= i <= n-1`: cups on dots `i, i+1` on both sides.
    pub fn generator_u(n: usize, i: usize) -> Result<Self> {
        Self::check_strands(n)?;
        if i == 0 || i >= n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        let id = Self::identity(n)?;
        let mut partner = id.partner.into_vec();
        let (r1, r2) = (i - 1, i);
        let (l1, l2) = (2 * n - i, 2 * n - i - 1);
        partner[r1] = r2 as u8;
        partner[r2] = r1 as u8;
        partner[l1] = l2 as u8;
        partner[l2] = l1 as u8;
        Ok(Self::from_partner(n, partner))
    }

    pub fn strands(&self) -> usize {
        self.n
    }

    /// Partner of a 1-based boundary point.
    pub fn partner_of(&self, point: usize) -> usize {
        self.partner[point - 1] as usize + 1
    }

    /// Arcs as 1-based point pairs `(a, b)` with `a < b`, sorted.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        (0..2 * self.n)
            .filter(|&k| (self.partner[k] as usize) > k)
            .map(|k| (k + 1, self.partner[k] as usize + 1))
            .collect()
    }

    pub fn is_identity(&self) -> bool {
        self.first_peak_height() == self.n
    }

    /// Number of leading `u`s in the Dyck word; equivalently the largest
    /// `m` such that no arc joins two of the right dots `1..=m`.
    pub fn first_peak_height(&self) -> usize {
        (0..2 * self.n)
            .take_while(|&k| (self.partner[k] as usize) > k)
            .count()
    }

    /// Whether the diagram survives a black box on right dots `1..=m`.
    pub fn fits_black_box(&self, m: usize) -> bool {
        self.first_peak_height() >= m
    }

    pub fn to_dyck(&self) -> DyckWord {
        DyckWord(
            (0..2 * self.n)
                .map(|k| {
                    if (self.partner[k] as usize) > k {
                        Step::U
                    } else {
                        Step::D
                    }
                })
                .collect(),
        )
    }

    pub fn from_dyck(word: &DyckWord) -> Result<Self> {
        let n = word.semilength();
        Self::check_strands(n)?;
        let mut partner = vec![0u8; 2 * n];
        let mut stack = Vec::with_capacity(n);
        for (k, s) in word.steps().iter().enumerate() {
            match s {
                Step::U => stack.push(k),
                Step::D => {
                    let j = stack
                        .pop()
                        .ok_or_else(|| Error::InvalidDyckWord(word.to_string()))?;
                    partner[j] = k as u8;
                    partner[k] = j as u8;
                }
            }
        }
        Ok(Self::from_partner(n, partner))
    }

    /// Concatenation `self · other`: `self` on the left, `other` on the right,
    /// with `self`'s right dots glued to `other`'s left dots.
    pub fn multiply(&self, other: &Diagram) -> Result<MulResult> {
        if self.n != other.n {
            return Err(Error::StrandMismatch {
                left: self.n,
                right: other.n,
            });
        }
        let n = self.n;
        let x = &self.partner;
        let y = &other.partner;
        // middle wall contact k (0..n) is x's point k and y's point 2n-1-k
        let mut seen = vec![false; n];
        let mut partner = vec![0u8; 2 * n];

        // Follow a path that enters the middle wall at contact `k` heading into y
        // (`into_y = true`) or into x, until it reaches the outer boundary.
        let exit = |mut k: usize, mut into_y: bool, seen: &mut [bool]| -> usize {
            loop {
                seen[k] = true;
                if into_y {
                    let q = y[2 * n - 1 - k] as usize;
                    if q < n {
                        return q;
                    }
                    k = 2 * n - 1 - q;
                } else {
                    let q = x[k] as usize;
                    if q >= n {
                        return q;
                    }
                    k = q;
                }
                into_y = !into_y;
            }
        };

        for q in n..2 * n {
            let p = x[q] as usize;
            let end = if p >= n { p } else { exit(p, true, &mut seen) };
            partner[q] = end as u8;
            partner[end] = q as u8;
        }
        for q in 0..n {
            let p = y[q] as usize;
            let end = if p < n {
                p
            } else {
                exit(2 * n - 1 - p, false, &mut seen)
            };
            partner[q] = end as u8;
            partner[end] = q as u8;
        }

        let mut loops = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            loops += 1;
            let mut k = start;
            loop {
                seen[k] = true;
                // x's arc from contact k stays in the middle, then y's arc does too
                let k2 = x[k] as usize;
                seen[k2] = true;
                let q = y[2 * n - 1 - k2] as usize;
                k = 2 * n - 1 - q;
                if k == start {
                    break;
                }
            }
        }

        Ok(MulResult {
            diagram: Self::from_partner(n, partner),
            loops,
        })
    }

    /// Verbose form listing matched point pairs, e.g. `{(1,6),(2,5),(3,4)}`.
    pub fn verbose(&self) -> String {
        let body: Vec<String> = self
            .pairs()
            .iter()
            .map(|(a, b)| format!("({a},{b})"))
            .collect();
        format!("{{{}}}", body.join(","))
    }
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_dyck())
    }
}

impl fmt::Debug for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Diagram({self})")
    }
}

impl FromStr for Diagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::from_dyck(&s.parse()?)
    }
}

impl Serialize for Diagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// All Dyck words of semilength `n` in lexicographic order with `u < d`.
pub fn dyck_words(n: usize) -> Vec<DyckWord> {
    fn go(n: usize, ups: usize, downs: usize, cur: &mut Vec<Step>, out: &mut Vec<DyckWord>) {
        if ups == n && downs == n {
            out.push(DyckWord(cur.clone()));
            return;
        }
        if ups < n {
            cur.push(Step::U);
            go(n, ups + 1, downs, cur, out);
            cur.pop();
        }
        if downs < ups {
            cur.push(Step::D);
            go(n, ups, downs + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(n, 0, 0, &mut Vec::with_capacity(2 * n), &mut out);
    out
}

/// Every diagram on `n` strands, in Dyck-lex order.
pub fn enumerate_diagrams(n: usize) -> Result<Vec<Diagram>> {
    Diagram::check_strands(n)?;
    dyck_words(n).iter().map(Diagram::from_dyck).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn d(s: &str) -> Diagram {
        s.parse().unwrap()
    }

    #[test]
    fn identity_examples() {
        assert_eq!(Diagram::identity(0).unwrap().pairs(), vec![]);
        assert_eq!(
            Diagram::identity(3).unwrap().pairs(),
            vec![(1, 6), (2, 5), (3, 4)]
        );
        for n in 0..=8 {
            let w = Diagram::identity(n).unwrap().to_dyck().to_string();
            assert_eq!(w, "u".repeat(n) + &"d".repeat(n));
        }
    }

    #[test]
    fn generator_examples() {
        assert_eq!(Diagram::generator_u(2, 1).unwrap().pairs(), vec![(1, 2), (3, 4)]);
        for n in 2..=10 {
            for i in 1..n {
                let u = Diagram::generator_u(n, i).unwrap();
                assert_ne!(u, Diagram::identity(n).unwrap());
                // round-trip through the stack matching certifies noncrossing
                assert_eq!(Diagram::from_dyck(&u.to_dyck()).unwrap(), u);
            }
        }
        assert!(Diagram::generator_u(3, 0).is_err());
        assert!(Diagram::generator_u(3, 3).is_err());
    }

    #[test]
    fn noncrossing_and_involutive() {
        for n in 0..=7 {
            for x in enumerate_diagrams(n).unwrap() {
                let pairs = x.pairs();
                for &(a, b) in &pairs {
                    assert_ne!(a, b);
                    assert_eq!(x.partner_of(x.partner_of(a)), a);
                    for &(c, dd) in &pairs {
                        assert!(!(a < c && c < b && b < dd), "crossing in {x}");
                    }
                }
            }
        }
    }

    #[test]
    fn relations_small() {
        let u1 = Diagram::generator_u(2, 1).unwrap();
        let r = u1.multiply(&u1).unwrap();
        assert_eq!((r.diagram, r.loops), (u1.clone(), 1));

        let u1 = Diagram::generator_u(3, 1).unwrap();
        let u2 = Diagram::generator_u(3, 2).unwrap();
        let inner = u2.multiply(&u1).unwrap();
        let outer = u1.multiply(&inner.diagram).unwrap();
        assert_eq!(outer.diagram, u1);
        assert_eq!(inner.loops + outer.loops, 0);
    }

    #[test]
    fn identity_is_neutral() {
        for n in 0..=6 {
            let id = Diagram::identity(n).unwrap();
            for x in enumerate_diagrams(n).unwrap() {
                let r = id.multiply(&x).unwrap();
                assert_eq!((r.diagram, r.loops), (x.clone(), 0));
                let r = x.multiply(&id).unwrap();
                assert_eq!((r.diagram, r.loops), (x.clone(), 0));
            }
        }
    }

    #[test]
    fn strand_mismatch() {
        let a = Diagram::identity(2).unwrap();
        let b = Diagram::identity(3).unwrap();
        assert_eq!(
            a.multiply(&b),
            Err(Error::StrandMismatch { left: 2, right: 3 })
        );
    }

    #[test]
    fn worked_dyck_example() {
        let x = d("uuuddudd");
        assert_eq!(x.pairs(), vec![(1, 8), (2, 5), (3, 4), (6, 7)]);
        assert_eq!(x.to_dyck().to_string(), "uuuddudd");
        assert_eq!(d("uuuudddd"), Diagram::identity(4).unwrap());
    }

    #[test]
    fn bad_words() {
        assert!("ud du".parse::<DyckWord>().is_err());
        assert!("du".parse::<DyckWord>().is_err());
        assert!("uud".parse::<DyckWord>().is_err());
        assert!("uxd".parse::<DyckWord>().is_err());
    }

    #[test]
    fn enumeration_counts_and_order() {
        assert_eq!(enumerate_diagrams(0).unwrap().len(), 1);
        assert_eq!(enumerate_diagrams(3).unwrap().len(), 5);
        let all = enumerate_diagrams(8).unwrap();
        assert!(all.windows(2).all(|w| w[0] < w[1]));
        // u < d, so compare with u -> 0 and d -> 1
        let words: Vec<String> = all
            .iter()
            .map(|x| x.to_string().replace('u', "0").replace('d', "1"))
            .collect();
        let mut sorted = words.clone();
        sorted.sort();
        assert_eq!(words, sorted);
        assert_eq!(all.iter().collect::<HashSet<_>>().len(), all.len());
    }

    #[test]
    fn verbose_form() {
        assert_eq!(Diagram::identity(2).unwrap().verbose(), "{(1,4),(2,3)}");
    }
}
