use std::fmt::Write as _;
use std::ops::Range;

use crate::bits::BitSet;
use crate::combin::pow_sat;
use crate::error::{Error, Result};
use crate::extension_axioms::atomic_entry_count;
use crate::structures::{Graph, RelStructure, Signature};

use super::tournament::Tournament;
use super::universal::UniversalSet;

/// One member of the permutation closure of a hash family: `perm[f(x)-1]+1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedHash {
    pub phf_index: usize,
    pub perm: Vec<usize>,
    pub values: Vec<u8>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PatternRange {
    Universal(UniversalSet),
    /// Patterns are pairs (hash, type); types are masks over the canonical
    /// atomic entries, all `2^entries` of them.
    Structure { sig: Signature, hashes: Vec<ClosedHash>, entries: u32 },
}

impl PatternRange {
    pub fn len(&self) -> usize {
        match self {
            PatternRange::Universal(u) => u.len(),
            PatternRange::Structure { hashes, entries, .. } => hashes.len() << entries,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Everything needed to rebuild a constructed Rado graph or structure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RadoCertificate {
    pub n: usize,
    pub k: usize,
    pub tournament: Tournament,
    pub parts: Vec<Range<usize>>,
    pub range: PatternRange,
    /// Element to pattern index; structure patterns index `hash * 2^entries + type`.
    pub pattern: Vec<usize>,
}

/// Contiguous blocks, the first `n mod m` of them one longer.
pub(crate) fn contiguous_parts(n: usize, m: usize) -> Vec<Range<usize>> {
    let (q, r) = (n / m, n % m);
    let mut out = Vec::with_capacity(m);
    let mut start = 0;
    for j in 0..m {
        let len = q + usize::from(j < r);
        out.push(start..start + len);
        start += len;
    }
    out
}

impl RadoCertificate {
    /// Pattern `(v - start) mod |range|` within each part.
    pub(crate) fn assemble(n: usize, k: usize, tournament: Tournament, range: PatternRange) -> Self {
        let parts = contiguous_parts(n, tournament.size());
        let r = range.len();
        let mut pattern = vec![0; n];
        for p in &parts {
            for v in p.clone() {
                pattern[v] = (v - p.start) % r;
            }
        }
        RadoCertificate { n, k, tournament, parts, range, pattern }
    }

    fn part_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.n];
        for (j, p) in self.parts.iter().enumerate() {
            for v in p.clone() {
                out[v] = j;
            }
        }
        out
    }

    /// Checks the structural invariants: a valid tournament on `2^(3k)`
    /// vertices, parts that tile `0..n` with one part per vertex, and a
    /// pattern that hits the whole range inside every part.
    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InternalInconsistency(format!("certificate: {m}")));
        let m = self.tournament.size();
        if 3 * self.k >= usize::BITS as usize || m != 1 << (3 * self.k) || !self.tournament.is_valid() {
            return bad("tournament has the wrong size or is not a tournament");
        }
        if self.parts.len() != m {
            return bad("part count differs from tournament size");
        }
        let mut next = 0;
        for p in &self.parts {
            if p.start != next || p.end < p.start {
                return bad("parts are not contiguous");
            }
            next = p.end;
        }
        if next != self.n || self.pattern.len() != self.n {
            return bad("parts do not cover the universe");
        }
        let r = self.range.len();
        if r == 0 {
            return bad("empty pattern range");
        }
        match &self.range {
            PatternRange::Universal(u) => {
                if u.n() != self.n || u.k() != self.k {
                    return bad("universal set parameters differ");
                }
            }
            PatternRange::Structure { sig, hashes, entries } => {
                if atomic_entry_count(sig, self.k) != *entries as u128 {
                    return bad("entry count does not match the signature");
                }
                for h in hashes {
                    if h.values.len() != self.n || h.values.iter().any(|&x| x == 0 || x as usize > self.k) {
                        return bad("hash function out of range");
                    }
                }
            }
        }
        for p in &self.parts {
            let mut seen = BitSet::new(r);
            for v in p.clone() {
                if self.pattern[v] >= r {
                    return bad("pattern index out of range");
                }
                seen.insert(self.pattern[v]);
            }
            if seen.count_ones() != r {
                return bad("pattern is not surjective on a part");
            }
        }
        Ok(())
    }

    /// Rebuilds the graph: across parts, the vertex in the dominating part
    /// decides via its universal-set member; no edges inside a part.
    pub fn to_graph(&self) -> Result<Graph> {
        let PatternRange::Universal(u) = &self.range else {
            return Err(Error::pre("certificate describes a structure, not a graph"));
        };
        self.validate()?;
        let part = self.part_of();
        let t = &self.tournament;
        let mut g = Graph::empty(self.n);
        for v in 0..self.n {
            for w in v + 1..self.n {
                let (pv, pw) = (part[v], part[w]);
                if pv == pw {
                    continue;
                }
                let edge = if t.beats(pv, pw) {
                    u.get(self.pattern[v]).get(w)
                } else {
                    u.get(self.pattern[w]).get(v)
                };
                if edge {
                    g.add_edge(v, w);
                }
            }
        }
        Ok(g)
    }

    /// Rebuilds the structure. A tuple is present only when one part among
    /// its elements beats all the others, that part holds a single element
    /// `v0` of the tuple, and the type in `pattern(v0)` contains the entry
    /// obtained by writing 0 for `v0` and `f(u)` for every other `u`.
    pub fn to_structure(&self) -> Result<RelStructure> {
        let PatternRange::Structure { sig, hashes, entries } = &self.range else {
            return Err(Error::pre("certificate describes a graph, not a structure"));
        };
        self.validate()?;
        let part = self.part_of();
        let t = &self.tournament;
        let k = self.k;
        let mut a = RelStructure::empty(sig.clone(), self.n)?;
        // base-(k+1) index code -> position among canonical entries
        let mut offset = 0usize;
        let mut lookup: Vec<Vec<Option<usize>>> = Vec::new();
        for rel in 0..sig.len() {
            let ar = sig.arity(rel) as u32;
            let size = (k + 1).pow(ar);
            let mut table = vec![None; size];
            for (code, slot) in table.iter_mut().enumerate() {
                let has_zero = (0..ar).any(|i| (code / (k + 1).pow(ar - 1 - i)).is_multiple_of(k + 1));
                if has_zero {
                    *slot = Some(offset);
                    offset += 1;
                }
            }
            lookup.push(table);
        }
        debug_assert_eq!(offset as u32, *entries);
        let type_bits = *entries;

        let n = self.n;
        let mut parts_seen: Vec<usize> = Vec::with_capacity(8);
        for (rel, slots) in lookup.iter().enumerate() {
            let ar = sig.arity(rel);
            let cells = pow_sat(n as u128, ar as u32) as usize;
            let mut tuple = vec![0usize; ar];
            let mut present = Vec::new();
            for code in 0..cells {
                let mut c = code;
                for slot in tuple.iter_mut().rev() {
                    *slot = c % n;
                    c /= n;
                }
                parts_seen.clear();
                for &x in &tuple {
                    if !parts_seen.contains(&part[x]) {
                        parts_seen.push(part[x]);
                    }
                }
                let Some(&j) = parts_seen
                    .iter()
                    .find(|&&j| parts_seen.iter().all(|&i| i == j || t.beats(j, i)))
                else {
                    continue;
                };
                let mut v0 = None;
                let mut unique = true;
                for &x in &tuple {
                    if part[x] == j {
                        match v0 {
                            None => v0 = Some(x),
                            Some(y) if y != x => unique = false,
                            _ => {}
                        }
                    }
                }
                let v0 = v0.unwrap();
                if !unique {
                    continue;
                }
                let p = self.pattern[v0];
                let (h, ty) = (p >> type_bits, (p & ((1usize << type_bits) - 1)) as u64);
                let f = &hashes[h].values;
                let idx = tuple
                    .iter()
                    .fold(0usize, |acc, &x| acc * (k + 1) + if x == v0 { 0 } else { f[x] as usize });
                let e = slots[idx].expect("v0 occurs in the tuple");
                if ty >> e & 1 == 1 {
                    present.push(code);
                }
            }
            let bits = a.relation_bits_mut(rel);
            for code in present {
                bits.insert(code);
            }
        }
        Ok(a)
    }

    pub fn to_text(&self) -> String {
        let mut s = String::from("RADO-CERT v1\n");
        let kind = match self.range {
            PatternRange::Universal(_) => "graph",
            PatternRange::Structure { .. } => "structure",
        };
        let _ = writeln!(s, "kind {kind}\nn {}\nk {}", self.n, self.k);
        let m = self.tournament.size();
        let _ = writeln!(s, "tournament {m}");
        for i in 0..m {
            let row: String = (0..m).map(|j| if self.tournament.beats(i, j) { '1' } else { '0' }).collect();
            s.push_str(&row);
            s.push('\n');
        }
        let _ = writeln!(s, "parts {}", self.parts.len());
        for p in &self.parts {
            let _ = writeln!(s, "{} {}", p.start, p.end);
        }
        match &self.range {
            PatternRange::Universal(u) => {
                let _ = writeln!(s, "universal {}", u.len());
                for set in u.sets() {
                    let members: Vec<String> = set.ones().map(|x| x.to_string()).collect();
                    if members.is_empty() {
                        s.push_str("-\n");
                    } else {
                        s.push_str(&members.join(" "));
                        s.push('\n');
                    }
                }
                s.push_str("pattern\n");
                for (v, p) in self.pattern.iter().enumerate() {
                    let _ = writeln!(s, "{v} {p}");
                }
            }
            PatternRange::Structure { sig, hashes, entries } => {
                let _ = writeln!(s, "signature {}", sig.len());
                s.push_str(&sig.to_text());
                let _ = writeln!(s, "hashes {}", hashes.len());
                for h in hashes {
                    let perm: Vec<String> = h.perm.iter().map(|x| x.to_string()).collect();
                    let vals: String = h.values.iter().map(|&x| char::from(b'0' + x)).collect();
                    let _ = writeln!(s, "{} {} {}", h.phf_index, perm.join(","), vals);
                }
                let _ = writeln!(s, "entries {entries}");
                s.push_str("pattern\n");
                for (v, p) in self.pattern.iter().enumerate() {
                    let _ = writeln!(s, "{v} {} {}", p >> entries, p & ((1 << entries) - 1));
                }
            }
        }
        s.push_str("end\n");
        s
    }

    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty());
        let mut next = |what: &str| lines.next().ok_or_else(|| Error::parse(0, format!("unexpected end of input, expected {what}")));
        let (ln, head) = next("header")?;
        if head != "RADO-CERT v1" {
            return Err(Error::parse(ln, "expected `RADO-CERT v1`"));
        }
        fn keyed<'a>(item: (usize, &'a str), key: &str) -> Result<(usize, &'a str)> {
            let (ln, l) = item;
            match l.split_once(' ') {
                Some((k, v)) if k == key => Ok((ln, v.trim())),
                _ => Err(Error::parse(ln, format!("expected `{key} ...`"))),
            }
        }
        fn num<T: std::str::FromStr>(ln: usize, s: &str) -> Result<T> {
            s.parse().map_err(|_| Error::parse(ln, format!("bad number `{s}`")))
        }
        let (ln, kind) = keyed(next("kind")?, "kind")?;
        let graph = match kind {
            "graph" => true,
            "structure" => false,
            _ => return Err(Error::parse(ln, format!("unknown kind `{kind}`"))),
        };
        let (ln, v) = keyed(next("n")?, "n")?;
        let n: usize = num(ln, v)?;
        let (ln, v) = keyed(next("k")?, "k")?;
        let k: usize = num(ln, v)?;
        let (ln, v) = keyed(next("tournament")?, "tournament")?;
        let m: usize = num(ln, v)?;
        let mut rows = Vec::with_capacity(m);
        for _ in 0..m {
            let (ln, l) = next("tournament row")?;
            if l.len() != m || !l.bytes().all(|b| b == b'0' || b == b'1') {
                return Err(Error::parse(ln, "tournament row must be a 0/1 string of length m"));
            }
            rows.push(l.bytes().map(|b| b == b'1').collect::<Vec<_>>());
        }
        let tournament = Tournament::from_rows(&rows).map_err(|e| Error::parse(ln, e.to_string()))?;
        let (ln, v) = keyed(next("parts")?, "parts")?;
        let np: usize = num(ln, v)?;
        let mut parts = Vec::with_capacity(np);
        for _ in 0..np {
            let (ln, l) = next("part")?;
            let (a, b) = l.split_once(' ').ok_or_else(|| Error::parse(ln, "expected `start end`"))?;
            parts.push(num(ln, a)?..num(ln, b.trim())?);
        }
        let mut pattern = vec![0usize; n];
        let range;
        if graph {
            let (ln, v) = keyed(next("universal")?, "universal")?;
            let count: usize = num(ln, v)?;
            let mut sets = Vec::with_capacity(count);
            for _ in 0..count {
                let (ln, l) = next("universal member")?;
                let mut b = BitSet::new(n);
                if l != "-" {
                    for tok in l.split_whitespace() {
                        let x: usize = num(ln, tok)?;
                        if x >= n {
                            return Err(Error::parse(ln, format!("element {x} out of range")));
                        }
                        b.insert(x);
                    }
                }
                sets.push(b);
            }
            range = PatternRange::Universal(UniversalSet::new(n, k, sets)?);
            let (ln, l) = next("pattern")?;
            if l != "pattern" {
                return Err(Error::parse(ln, "expected `pattern`"));
            }
            for _ in 0..n {
                let (ln, l) = next("pattern row")?;
                let mut it = l.split_whitespace();
                let (Some(a), Some(b), None) = (it.next(), it.next(), it.next()) else {
                    return Err(Error::parse(ln, "expected `element index`"));
                };
                let v: usize = num(ln, a)?;
                if v >= n {
                    return Err(Error::parse(ln, "element out of range"));
                }
                pattern[v] = num(ln, b)?;
            }
        } else {
            let (ln, v) = keyed(next("signature")?, "signature")?;
            let nr: usize = num(ln, v)?;
            let mut sig_text = String::new();
            for _ in 0..nr {
                sig_text.push_str(next("relation")?.1);
                sig_text.push('\n');
            }
            let sig = Signature::parse(&sig_text).map_err(|e| Error::parse(ln, e.to_string()))?;
            let (ln, v) = keyed(next("hashes")?, "hashes")?;
            let nh: usize = num(ln, v)?;
            let mut hashes = Vec::with_capacity(nh);
            for _ in 0..nh {
                let (ln, l) = next("hash")?;
                let toks: Vec<&str> = l.split_whitespace().collect();
                if toks.len() != 3 {
                    return Err(Error::parse(ln, "expected `index perm values`"));
                }
                let perm = toks[1].split(',').map(|x| num(ln, x)).collect::<Result<Vec<usize>>>()?;
                let values: Vec<u8> = toks[2].bytes().map(|b| b.wrapping_sub(b'0')).collect();
                if values.len() != n || values.iter().any(|&x| x == 0 || x as usize > k) {
                    return Err(Error::parse(ln, "hash values must be n digits in 1..=k"));
                }
                hashes.push(ClosedHash { phf_index: num(ln, toks[0])?, perm, values });
            }
            let (ln, v) = keyed(next("entries")?, "entries")?;
            let entries: u32 = num(ln, v)?;
            if entries >= 48 {
                return Err(Error::parse(ln, "too many atomic entries"));
            }
            let (ln, l) = next("pattern")?;
            if l != "pattern" {
                return Err(Error::parse(ln, "expected `pattern`"));
            }
            for _ in 0..n {
                let (ln, l) = next("pattern row")?;
                let toks: Vec<&str> = l.split_whitespace().collect();
                if toks.len() != 3 {
                    return Err(Error::parse(ln, "expected `element hash type`"));
                }
                let v: usize = num(ln, toks[0])?;
                let h: usize = num(ln, toks[1])?;
                let t: usize = num(ln, toks[2])?;
                if v >= n || t >> entries != 0 {
                    return Err(Error::parse(ln, "pattern row out of range"));
                }
                pattern[v] = (h << entries) | t;
            }
            range = PatternRange::Structure { sig, hashes, entries };
        }
        let (ln, l) = next("end")?;
        if l != "end" {
            return Err(Error::parse(ln, "expected `end`"));
        }
        let cert = RadoCertificate { n, k, tournament, parts, range, pattern };
        cert.validate()?;
        Ok(cert)
    }
}
