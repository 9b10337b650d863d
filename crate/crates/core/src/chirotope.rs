//! Rank-3 chirotopes on up to 16 elements.
//!
//! Signs are stored once per sorted triple `i < j < k` and extended to
//! arbitrary ordered triples by the alternating rule. Signs are plain `i8`
//! values in `{-1, 0, 1}` so that products of signs are ordinary
//! multiplications.

use std::fmt;
use std::io::Read;
use std::path::Path;

use thiserror::Error;

pub type Sign = i8;
pub type IntPoint = [i64; 2];

/// Largest ground set the checker and the storage support.
pub const MAX_ELEMENTS: usize = 16;
/// Largest absolute input coordinate accepted by [`Chirotope::from_points`].
pub const MAX_COORD: i64 = 1 << 16;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ChirotopeError {
    #[error("element count {0} outside 3..={MAX_ELEMENTS}")]
    BadSize(usize),
    #[error("index {index} out of range (n = {n})")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("coordinate {0} exceeds the supported magnitude 2^16")]
    CoordinateTooLarge(i64),
    #[error("expected {expected} signs, found {found}")]
    WrongLength { expected: usize, found: usize },
    #[error("invalid sign value {0}")]
    BadSign(i64),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("degenerate quad {0}: a triple among its points has sign 0")]
    DegenerateQuad(IntersectionQuad),
    #[error("elements {0} and {1} must be distinct and outside quad {2}")]
    PairTouchesQuad(usize, usize, IntersectionQuad),
    #[error("order-type database: {0}")]
    Database(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for ChirotopeError {
    fn from(e: std::io::Error) -> Self {
        ChirotopeError::Io(e.to_string())
    }
}

fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Number of sorted triples on `n` elements.
pub fn triple_count(n: usize) -> usize {
    binomial(n, 3)
}

/// Sorts a triple, returning it with the parity of the sorting permutation.
#[inline]
fn sort3(mut i: usize, mut j: usize, mut k: usize) -> (usize, usize, usize, Sign) {
    let mut parity = 1;
    if i > j {
        std::mem::swap(&mut i, &mut j);
        parity = -parity;
    }
    if j > k {
        std::mem::swap(&mut j, &mut k);
        parity = -parity;
    }
    if i > j {
        std::mem::swap(&mut i, &mut j);
        parity = -parity;
    }
    (i, j, k, parity)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Chirotope {
    n: usize,
    /// Sign of each sorted triple, in lexicographic triple order.
    signs: Vec<Sign>,
    /// Lexicographic rank of `(i, j, k)` is `offsets[i][j] + (k - j - 1)`.
    offsets: Vec<u16>,
}

impl fmt::Debug for Chirotope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Chirotope({}; {})", self.n, self.sign_string())
    }
}

fn rank_offsets(n: usize) -> Vec<u16> {
    let mut offsets = vec![0u16; n * n];
    let mut rank = 0usize;
    for i in 0..n {
        for j in i + 1..n {
            offsets[i * n + j] = rank as u16;
            rank += n - j - 1;
        }
    }
    offsets
}

impl Chirotope {
    /// Builds a chirotope from sorted-triple signs in lexicographic order.
    /// The identically zero map is accepted here; [`Chirotope::check_axioms`]
    /// rejects it.
    pub fn from_sorted_signs(n: usize, signs: Vec<Sign>) -> Result<Self, ChirotopeError> {
        if !(3..=MAX_ELEMENTS).contains(&n) {
            return Err(ChirotopeError::BadSize(n));
        }
        let expected = triple_count(n);
        if signs.len() != expected {
            return Err(ChirotopeError::WrongLength { expected, found: signs.len() });
        }
        if let Some(&bad) = signs.iter().find(|s| !(-1..=1).contains(*s)) {
            return Err(ChirotopeError::BadSign(bad as i64));
        }
        Ok(Chirotope { n, signs, offsets: rank_offsets(n) })
    }

    /// The alternating chirotope with every sorted triple positive: the order
    /// type of `n` points in convex position labeled counterclockwise.
    pub fn convex(n: usize) -> Self {
        Self::from_sorted_signs(n, vec![1; triple_count(n)]).expect("valid size")
    }

    /// Chirotope of a planar point configuration, via homogenized
    /// coordinates `(x, y, 1)`.
    pub fn from_points(points: &[IntPoint]) -> Result<Self, ChirotopeError> {
        for p in points {
            for &c in p {
                if c.abs() > MAX_COORD {
                    return Err(ChirotopeError::CoordinateTooLarge(c));
                }
            }
        }
        let vectors: Vec<[i64; 3]> = points.iter().map(|p| [p[0], p[1], 1]).collect();
        Self::from_vectors(&vectors)
    }

    /// Chirotope of a rank-3 vector configuration (signs of 3x3 determinants).
    pub fn from_vectors(vectors: &[[i64; 3]]) -> Result<Self, ChirotopeError> {
        let n = vectors.len();
        if !(3..=MAX_ELEMENTS).contains(&n) {
            return Err(ChirotopeError::BadSize(n));
        }
        let mut signs = Vec::with_capacity(triple_count(n));
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    signs.push(det3_sign(&vectors[i], &vectors[j], &vectors[k]));
                }
            }
        }
        Self::from_sorted_signs(n, signs)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sorted_signs(&self) -> &[Sign] {
        &self.signs
    }

    /// Lexicographic rank of the sorted triple `i < j < k`.
    #[inline]
    pub fn triple_rank(&self, i: usize, j: usize, k: usize) -> usize {
        debug_assert!(i < j && j < k && k < self.n);
        self.offsets[i * self.n + j] as usize + (k - j - 1)
    }

    /// Sign of an arbitrary ordered triple, with range checking.
    pub fn sign(&self, i: usize, j: usize, k: usize) -> Result<Sign, ChirotopeError> {
        for index in [i, j, k] {
            if index >= self.n {
                return Err(ChirotopeError::IndexOutOfRange { index, n: self.n });
            }
        }
        Ok(self.chi(i, j, k))
    }

    /// Sign of an arbitrary ordered triple. Indices must be `< n`.
    #[inline]
    pub fn chi(&self, i: usize, j: usize, k: usize) -> Sign {
        if i == j || j == k || i == k {
            return 0;
        }
        let (a, b, c, parity) = sort3(i, j, k);
        parity * self.signs[self.triple_rank(a, b, c)]
    }

    /// Returns a copy with the sign of one sorted triple negated.
    pub fn with_flipped(&self, i: usize, j: usize, k: usize) -> Self {
        let (a, b, c, _) = sort3(i, j, k);
        let mut out = self.clone();
        let r = self.triple_rank(a, b, c);
        out.signs[r] = -out.signs[r];
        out
    }

    /// Checks (B0) and the exchange condition in its single-index form:
    /// whenever `χ(x)·χ(y) ≠ 0` there is a position `i` with
    /// `χ(x)·χ(y) = χ(y_i, x_2, x_3) · χ(y with y_i replaced by x_1)`.
    ///
    /// Both sides are invariant under permuting `y` and under swapping
    /// `x_2, x_3`, so `y` runs over sorted triples and `x_2 < x_3`.
    pub fn check_axioms(&self) -> AxiomReport {
        if self.signs.iter().all(|&s| s == 0) {
            return AxiomReport::Violation(AxiomViolation::IdenticallyZero);
        }
        let n = self.n;
        let sorted: Vec<[usize; 3]> = sorted_triples(n).collect();
        for x1 in 0..n {
            for x2 in 0..n {
                for x3 in x2 + 1..n {
                    if x1 == x2 || x1 == x3 {
                        continue;
                    }
                    let sx = self.chi(x1, x2, x3);
                    if sx == 0 {
                        continue;
                    }
                    for y in &sorted {
                        let sy = self.chi(y[0], y[1], y[2]);
                        if sy == 0 {
                            continue;
                        }
                        let target = sx * sy;
                        let ok = (0..3).any(|i| {
                            let mut z = *y;
                            z[i] = x1;
                            self.chi(y[i], x2, x3) * self.chi(z[0], z[1], z[2]) == target
                        });
                        if !ok {
                            return AxiomReport::Violation(AxiomViolation::Exchange { x: [x1, x2, x3], y: *y });
                        }
                    }
                }
            }
        }
        AxiomReport::Ok
    }

    /// For every ordered `x1..x4` with `χ(x1,x2,x3) ≠ 0`, one of
    /// `χ(x1,x2,x4)`, `χ(x2,x3,x4)`, `χ(x3,x1,x4)` equals `χ(x1,x2,x3)`.
    pub fn is_acyclic(&self) -> bool {
        let n = self.n;
        for x1 in 0..n {
            for x2 in 0..n {
                for x3 in 0..n {
                    let s = self.chi(x1, x2, x3);
                    if s == 0 {
                        continue;
                    }
                    for x4 in 0..n {
                        if x4 == x1 || x4 == x2 || x4 == x3 {
                            continue;
                        }
                        if self.chi(x1, x2, x4) != s && self.chi(x2, x3, x4) != s && self.chi(x3, x1, x4) != s {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// `p ∈ conv(e, f, g)` read off the chirotope: `χ(e,f,p) = χ(f,g,p) = χ(g,e,p)`.
    #[inline]
    pub fn in_triangle(&self, p: usize, e: usize, f: usize, g: usize) -> bool {
        let s = self.chi(e, f, p);
        s != 0 && s == self.chi(f, g, p) && s == self.chi(g, e, p)
    }

    /// No element lies in a triangle spanned by three others.
    pub fn is_convex_position(&self) -> bool {
        let n = self.n;
        sorted_triples(n).all(|[e, f, g]| (0..n).all(|p| p == e || p == f || p == g || !self.in_triangle(p, e, f, g)))
    }

    /// Signs in lexicographic triple order as a `+ - 0` string.
    pub fn sign_string(&self) -> String {
        self.signs
            .iter()
            .map(|&s| match s {
                1 => '+',
                -1 => '-',
                _ => '0',
            })
            .collect()
    }

    /// Text format: `chi <n>` header line, then one line of signs.
    pub fn to_text(&self) -> String {
        format!("chi {}\n{}\n", self.n, self.sign_string())
    }

    pub fn parse_text(text: &str) -> Result<Self, ChirotopeError> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (hl, header) = lines.next().ok_or(ChirotopeError::Parse { line: 1, msg: "empty input".into() })?;
        let mut toks = header.split_ascii_whitespace();
        if toks.next() != Some("chi") {
            return Err(ChirotopeError::Parse { line: hl + 1, msg: "expected `chi <n>` header".into() });
        }
        let n: usize = toks
            .next()
            .and_then(|t| t.parse().ok())
            .ok_or(ChirotopeError::Parse { line: hl + 1, msg: "invalid element count".into() })?;
        if toks.next().is_some() {
            return Err(ChirotopeError::Parse { line: hl + 1, msg: "trailing tokens in header".into() });
        }
        if !(3..=MAX_ELEMENTS).contains(&n) {
            return Err(ChirotopeError::BadSize(n));
        }
        let (sl, body) = lines.next().ok_or(ChirotopeError::Parse { line: hl + 2, msg: "missing sign line".into() })?;
        let signs = body
            .trim()
            .chars()
            .map(|c| match c {
                '+' => Ok(1),
                '-' => Ok(-1),
                '0' => Ok(0),
                other => Err(ChirotopeError::Parse { line: sl + 1, msg: format!("invalid sign character {other:?}") }),
            })
            .collect::<Result<Vec<Sign>, _>>()?;
        if let Some((el, _)) = lines.next() {
            return Err(ChirotopeError::Parse { line: el + 1, msg: "unexpected extra line".into() });
        }
        Self::from_sorted_signs(n, signs)
    }
}

/// Sign of the 3x3 determinant with rows `u`, `v`, `w`, computed exactly.
pub fn det3_sign(u: &[i64; 3], v: &[i64; 3], w: &[i64; 3]) -> Sign {
    let [a, b, c] = u.map(i128::from);
    let [d, e, f] = v.map(i128::from);
    let [g, h, i] = w.map(i128::from);
    let det = a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
    det.signum() as Sign
}

/// Sorted triples `i < j < k` of `0..n` in lexicographic order.
pub fn sorted_triples(n: usize) -> impl Iterator<Item = [usize; 3]> {
    (0..n).flat_map(move |i| (i + 1..n).flat_map(move |j| (j + 1..n).map(move |k| [i, j, k])))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomViolation {
    /// (B0): every sign is zero.
    IdenticallyZero,
    /// The exchange condition fails for this pair of ordered triples.
    Exchange { x: [usize; 3], y: [usize; 3] },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AxiomReport {
    Ok,
    Violation(AxiomViolation),
}

impl AxiomReport {
    pub fn is_ok(&self) -> bool {
        matches!(self, AxiomReport::Ok)
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomReport::Ok => write!(f, "ok"),
            AxiomReport::Violation(AxiomViolation::IdenticallyZero) => write!(f, "violation B0: identically zero"),
            AxiomReport::Violation(AxiomViolation::Exchange { x, y }) => {
                write!(f, "violation B2: x = {x:?}, y = {y:?}")
            }
        }
    }
}

/// The intersection of lines `ab` and `cd`, in canonical notation:
/// `a < b`, `c < d`, `(a, b) < (c, d)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntersectionQuad {
    pub a: u8,
    pub b: u8,
    pub c: u8,
    pub d: u8,
}

impl fmt::Debug for IntersectionQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "y({},{},{},{})", self.a, self.b, self.c, self.d)
    }
}

impl fmt::Display for IntersectionQuad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl IntersectionQuad {
    /// Canonicalizes any of the 8 notations of the same point. Returns
    /// `None` unless the four indices are distinct.
    pub fn new(a: usize, b: usize, c: usize, d: usize) -> Option<Self> {
        if a == b || a == c || a == d || b == c || b == d || c == d || [a, b, c, d].iter().any(|&x| x > u8::MAX as usize) {
            return None;
        }
        let l1 = (a.min(b) as u8, a.max(b) as u8);
        let l2 = (c.min(d) as u8, c.max(d) as u8);
        let (first, second) = if l1 < l2 { (l1, l2) } else { (l2, l1) };
        Some(IntersectionQuad { a: first.0, b: first.1, c: second.0, d: second.1 })
    }

    pub fn line_ab(&self) -> (usize, usize) {
        (self.a as usize, self.b as usize)
    }

    pub fn line_cd(&self) -> (usize, usize) {
        (self.c as usize, self.d as usize)
    }

    pub fn elements(&self) -> [usize; 4] {
        [self.a as usize, self.b as usize, self.c as usize, self.d as usize]
    }

    pub fn contains(&self, x: usize) -> bool {
        self.elements().contains(&x)
    }

    /// Lines as unordered pairs.
    pub fn lines(&self) -> [(usize, usize); 2] {
        [self.line_ab(), self.line_cd()]
    }

    /// The remaining elements of `0..n`, ascending.
    pub fn rest(&self, n: usize) -> Vec<usize> {
        (0..n).filter(|&x| !self.contains(x)).collect()
    }

    /// The 8 notations `(a, b, c, d)` of this point.
    pub fn notations(&self) -> [[usize; 4]; 8] {
        let [a, b, c, d] = self.elements();
        [
            [a, b, c, d],
            [a, b, d, c],
            [b, a, c, d],
            [b, a, d, c],
            [c, d, a, b],
            [c, d, b, a],
            [d, c, a, b],
            [d, c, b, a],
        ]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuadClass {
    NotCrossing,
    CrossingInvalid,
    Valid,
}

/// Classifies a quad: crossing iff `χ(a,b,c)χ(a,b,d) = -1 = χ(c,d,a)χ(c,d,b)`;
/// valid iff crossing and each line has between 2 and 4 of the remaining
/// elements on its positive side.
pub fn classify_quad(chi: &Chirotope, quad: IntersectionQuad) -> Result<QuadClass, ChirotopeError> {
    let [a, b, c, d] = quad.elements();
    if [a, b, c, d].iter().any(|&x| x >= chi.n()) {
        return Err(ChirotopeError::IndexOutOfRange { index: *[a, b, c, d].iter().max().unwrap(), n: chi.n() });
    }
    let s = [chi.chi(a, b, c), chi.chi(a, b, d), chi.chi(c, d, a), chi.chi(c, d, b)];
    if s.contains(&0) {
        return Err(ChirotopeError::DegenerateQuad(quad));
    }
    if !(s[0] * s[1] == -1 && s[2] * s[3] == -1) {
        return Ok(QuadClass::NotCrossing);
    }
    let rest = quad.rest(chi.n());
    let positive = |(p, q): (usize, usize)| rest.iter().filter(|&&h| chi.chi(p, q, h) == 1).count();
    let ok = |count: usize| (2..=4).contains(&count);
    if ok(positive(quad.line_ab())) && ok(positive(quad.line_cd())) {
        Ok(QuadClass::Valid)
    } else {
        Ok(QuadClass::CrossingInvalid)
    }
}

/// All canonical quads on `0..n`, lexicographic.
pub fn all_quads(n: usize) -> Vec<IntersectionQuad> {
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in a + 1..n {
                for d in c + 1..n {
                    if c == b || d == b {
                        continue;
                    }
                    out.push(IntersectionQuad { a: a as u8, b: b as u8, c: c as u8, d: d as u8 });
                }
            }
        }
    }
    out
}

/// Canonical quads classified `Valid`, lexicographic. Degenerate quads
/// are skipped.
pub fn valid_quads(chi: &Chirotope) -> Vec<IntersectionQuad> {
    all_quads(chi.n())
        .into_iter()
        .filter(|&q| classify_quad(chi, q) == Ok(QuadClass::Valid))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PairClass {
    Same,
    Neighboring,
    Opposite,
}

/// `(χ(a,b,h), χ(c,d,h))`: the cell of `h` cut out by the two lines.
pub type Region = (Sign, Sign);

/// Region of an element with respect to a quad.
pub fn region(chi: &Chirotope, quad: IntersectionQuad, h: usize) -> Region {
    let [a, b, c, d] = quad.elements();
    (chi.chi(a, b, h), chi.chi(c, d, h))
}

/// Classifies two elements outside the quad by their regions; also returns
/// both regions.
pub fn pair_class(
    chi: &Chirotope,
    quad: IntersectionQuad,
    i: usize,
    j: usize,
) -> Result<(PairClass, Region, Region), ChirotopeError> {
    if i == j || quad.contains(i) || quad.contains(j) || i >= chi.n() || j >= chi.n() {
        return Err(ChirotopeError::PairTouchesQuad(i, j, quad));
    }
    let (ri, rj) = (region(chi, quad, i), region(chi, quad, j));
    let class = match (ri.0 == rj.0, ri.1 == rj.1) {
        (true, true) => PairClass::Same,
        (false, false) => PairClass::Opposite,
        _ => PairClass::Neighboring,
    };
    Ok((class, ri, rj))
}

/// Parses the points text format: one `x y` pair of signed integers per line.
pub fn parse_points(text: &str) -> Result<Vec<IntPoint>, ChirotopeError> {
    let mut points = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut toks = line.split_ascii_whitespace();
        let mut coord = || -> Result<i64, ChirotopeError> {
            let tok = toks.next().ok_or(ChirotopeError::Parse { line: idx + 1, msg: "expected `x y`".into() })?;
            tok.parse().map_err(|_| ChirotopeError::Parse { line: idx + 1, msg: format!("invalid coordinate {tok:?}") })
        };
        let p = [coord()?, coord()?];
        if toks.next().is_some() {
            return Err(ChirotopeError::Parse { line: idx + 1, msg: "trailing tokens".into() });
        }
        for c in p {
            if c.abs() > MAX_COORD {
                return Err(ChirotopeError::CoordinateTooLarge(c));
            }
        }
        points.push(p);
    }
    Ok(points)
}

pub fn format_points(points: &[IntPoint]) -> String {
    points.iter().map(|p| format!("{} {}\n", p[0], p[1])).collect()
}

/// Bytes per record of the 10-point order-type database.
pub const B16_RECORD_BYTES: usize = 40;

/// Decodes one b16 record: 10 points, each coordinate an unsigned 16-bit
/// little-endian integer.
pub fn decode_b16_record(bytes: &[u8]) -> Result<[IntPoint; 10], ChirotopeError> {
    if bytes.len() != B16_RECORD_BYTES {
        return Err(ChirotopeError::Database(format!("record has {} bytes, expected {B16_RECORD_BYTES}", bytes.len())));
    }
    let mut points = [[0i64; 2]; 10];
    for (p, chunk) in points.iter_mut().zip(bytes.chunks_exact(4)) {
        p[0] = u16::from_le_bytes([chunk[0], chunk[1]]) as i64;
        p[1] = u16::from_le_bytes([chunk[2], chunk[3]]) as i64;
    }
    Ok(points)
}

/// Random-access reader over a b16 order-type database file.
///
/// Opening checks that record 0 is in convex position; a file failing
/// that check is refused rather than reinterpreted.
pub struct OrderTypeDb {
    file: std::fs::File,
    records: u64,
}

impl OrderTypeDb {
    pub fn open(path: impl AsRef<Path>) -> Result<Self, ChirotopeError> {
        let file = std::fs::File::open(path)?;
        let len = file.metadata()?.len();
        if len == 0 || len % B16_RECORD_BYTES as u64 != 0 {
            return Err(ChirotopeError::Database(format!("file size {len} is not a positive multiple of {B16_RECORD_BYTES}")));
        }
        let mut db = OrderTypeDb { file, records: len / B16_RECORD_BYTES as u64 };
        let first = Chirotope::from_points(&db.points(0)?)?;
        if !first.is_convex_position() {
            return Err(ChirotopeError::Database("record 0 is not in convex position; refusing layout".into()));
        }
        Ok(db)
    }

    pub fn len(&self) -> u64 {
        self.records
    }

    pub fn is_empty(&self) -> bool {
        self.records == 0
    }

    pub fn points(&mut self, index: u64) -> Result<[IntPoint; 10], ChirotopeError> {
        use std::io::{Seek, SeekFrom};
        if index >= self.records {
            return Err(ChirotopeError::Database(format!("index {index} beyond {} records", self.records)));
        }
        self.file.seek(SeekFrom::Start(index * B16_RECORD_BYTES as u64))?;
        let mut buf = [0u8; B16_RECORD_BYTES];
        self.file.read_exact(&mut buf)?;
        decode_b16_record(&buf)
    }

    pub fn chirotope(&mut self, index: u64) -> Result<Chirotope, ChirotopeError> {
        Chirotope::from_points(&self.points(index)?)
    }
}

/// Integer vertices of a convex 10-gon, counterclockwise.
pub fn convex_decagon() -> [IntPoint; 10] {
    [[10, 0], [8, 6], [3, 9], [-3, 9], [-8, 6], [-10, 0], [-8, -6], [-3, -9], [3, -9], [8, -6]]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn orientation_of_unit_triangle() {
        let chi = Chirotope::from_points(&[[0, 0], [1, 0], [0, 1]]).unwrap();
        assert_eq!(chi.chi(0, 1, 2), 1);
    }

    #[test]
    fn collinear_triple_is_zero() {
        let chi = Chirotope::from_points(&[[0, 0], [1, 1], [2, 2]]).unwrap();
        assert_eq!(chi.chi(0, 1, 2), 0);
    }

    #[test]
    fn decagon_is_all_positive() {
        // Independent check: each triple's determinant by hand-rolled
        // cross product, all positive for a CCW convex polygon.
        let pts = convex_decagon();
        for [i, j, k] in sorted_triples(10) {
            let (p, q, r) = (pts[i], pts[j], pts[k]);
            let cross = (q[0] - p[0]) * (r[1] - p[1]) - (q[1] - p[1]) * (r[0] - p[0]);
            assert!(cross > 0, "{i} {j} {k}");
        }
        assert_eq!(Chirotope::from_points(&pts).unwrap(), Chirotope::convex(10));
    }

    #[test]
    fn alternating_lookup() {
        let chi = Chirotope::from_points(&convex_decagon()).unwrap();
        assert_eq!(chi.chi(1, 0, 2), -chi.chi(0, 1, 2));
        assert_eq!(chi.chi(0, 0, 2), 0);
        assert_eq!(chi.chi(0, 3, 7), 1);
        assert_eq!(chi.sign(0, 3, 10), Err(ChirotopeError::IndexOutOfRange { index: 10, n: 10 }));
    }

    #[test]
    fn zero_map_violates_b0() {
        let chi = Chirotope::from_sorted_signs(10, vec![0; 120]).unwrap();
        assert_eq!(chi.check_axioms(), AxiomReport::Violation(AxiomViolation::IdenticallyZero));
    }

    #[test]
    fn simplex_plus_negative_sum_is_cyclic() {
        let chi = Chirotope::from_vectors(&[[1, 0, 0], [0, 1, 0], [0, 0, 1], [-1, -1, -1]]).unwrap();
        assert!(chi.check_axioms().is_ok());
        assert!(!chi.is_acyclic());
    }

    #[test]
    fn convex_chirotope_is_acyclic_chirotope() {
        let chi = Chirotope::convex(10);
        assert!(chi.check_axioms().is_ok());
        assert!(chi.is_acyclic());
        assert!(chi.is_convex_position());
    }

    #[test]
    fn classify_examples_on_convex() {
        let chi = Chirotope::convex(10);
        let q = |a, b, c, d| IntersectionQuad::new(a, b, c, d).unwrap();
        assert_eq!(classify_quad(&chi, q(0, 1, 2, 3)), Ok(QuadClass::NotCrossing));
        assert_eq!(classify_quad(&chi, q(0, 2, 1, 3)), Ok(QuadClass::CrossingInvalid));
        assert_eq!(classify_quad(&chi, q(0, 5, 2, 7)), Ok(QuadClass::Valid));
        assert_eq!(valid_quads(&chi).len(), 70);
    }

    #[test]
    fn quad_notations_canonicalize() {
        let q = IntersectionQuad::new(7, 2, 5, 0).unwrap();
        assert_eq!(q, IntersectionQuad { a: 0, b: 5, c: 2, d: 7 });
        for [a, b, c, d] in q.notations() {
            assert_eq!(IntersectionQuad::new(a, b, c, d), Some(q));
        }
        assert_eq!(IntersectionQuad::new(1, 1, 2, 3), None);
    }

    #[test]
    fn pair_classes_on_convex() {
        let chi = Chirotope::convex(10);
        let q = IntersectionQuad::new(0, 5, 2, 7).unwrap();
        assert_eq!(pair_class(&chi, q, 3, 4).unwrap().0, PairClass::Same);
        assert_eq!(pair_class(&chi, q, 1, 6).unwrap().0, PairClass::Opposite);
        assert_eq!(pair_class(&chi, q, 1, 3).unwrap().0, PairClass::Neighboring);
        assert!(pair_class(&chi, q, 0, 3).is_err());
    }

    #[test]
    fn degenerate_quad_is_error() {
        let mut pts = convex_decagon().to_vec();
        pts[2] = [0, 0]; // collinear with 0 and 5
        let chi = Chirotope::from_points(&pts).unwrap();
        let q = IntersectionQuad::new(0, 5, 2, 7).unwrap();
        assert!(matches!(classify_quad(&chi, q), Err(ChirotopeError::DegenerateQuad(_))));
    }

    #[test]
    fn text_round_trip() {
        let chi = Chirotope::from_points(&[[0, 0], [5, 1], [2, 7], [9, 9], [-3, 4]]).unwrap();
        assert_eq!(Chirotope::parse_text(&chi.to_text()).unwrap(), chi);
        assert!(Chirotope::parse_text("chi 4\n++-\n").is_err());
        assert!(Chirotope::parse_text("chi 3\nx\n").is_err());
    }

    #[test]
    fn points_text() {
        let pts = parse_points("1 2\n-3 4\n\n").unwrap();
        assert_eq!(pts, vec![[1, 2], [-3, 4]]);
        assert!(parse_points("1\n").is_err());
        assert!(parse_points("1 2 3\n").is_err());
        assert!(parse_points("100000 0\n").is_err());
    }

    #[test]
    fn b16_decoding() {
        let mut bytes = [0u8; 40];
        bytes[0] = 0x34;
        bytes[1] = 0x12;
        bytes[38] = 0xff;
        bytes[39] = 0xff;
        let pts = decode_b16_record(&bytes).unwrap();
        assert_eq!(pts[0], [0x1234, 0]);
        assert_eq!(pts[9], [0, 0xffff]);
        assert!(decode_b16_record(&bytes[..39]).is_err());
    }
}
