//! The groups `A = Z/d` and `B = (Z/d)^m`, epimorphisms `B -> A` as linear
//! forms, eventually periodic epimorphism sequences with the faithfulness
//! (kernel) condition, self-similarity detection, and named presets.

use std::fmt;

use num_integer::Integer;

use crate::error::{Error, Result};

/// Desk-scale bound on `d^m` and on the automorphism search space.
pub const SIZE_LIMIT: u64 = 1_000_000;

/// Tree degree `d` and rank `m` of `B = (Z/d)^m`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Params {
    d: u32,
    m: usize,
}

impl Params {
    pub fn new(d: u32, m: usize) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParameter(format!("d = {d} must be at least 2")));
        }
        if m < 1 {
            return Err(Error::InvalidParameter("m must be at least 1".into()));
        }
        let size = (d as u64)
            .checked_pow(m as u32)
            .filter(|&s| s <= SIZE_LIMIT)
            .ok_or(Error::SizeGuard { what: "d^m", actual: u64::MAX, limit: SIZE_LIMIT })?;
        let _ = size;
        Ok(Params { d, m })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// `|B| = d^m`.
    pub fn b_order(&self) -> u64 {
        (self.d as u64).pow(self.m as u32)
    }
}

/// An element of `B = (Z/d)^m`, written additively.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BElement {
    coords: Vec<u32>,
}

impl BElement {
    pub fn new(params: &Params, coords: Vec<u32>) -> Result<Self> {
        if coords.len() != params.m {
            return Err(Error::InvalidParameter(format!(
                "element has {} coordinates, expected {}",
                coords.len(),
                params.m
            )));
        }
        if coords.iter().any(|&c| c >= params.d) {
            return Err(Error::InvalidParameter("coordinate out of range".into()));
        }
        Ok(BElement { coords })
    }

    pub fn zero(params: &Params) -> Self {
        BElement { coords: vec![0; params.m] }
    }

    /// Raw constructor without a range check; the coordinate range is
    /// validated wherever the element meets concrete group parameters.
    pub fn from_coords(coords: Vec<u32>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidParameter("empty coordinate vector".into()));
        }
        Ok(BElement { coords })
    }

    pub fn in_range(&self, params: &Params) -> bool {
        self.coords.len() == params.m() && self.coords.iter().all(|&c| c < params.d())
    }

    pub fn coords(&self) -> &[u32] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&c| c == 0)
    }

    pub fn add(&self, other: &Self, d: u32) -> Self {
        let coords = self
            .coords
            .iter()
            .zip(&other.coords)
            .map(|(&a, &b)| (a + b) % d)
            .collect();
        BElement { coords }
    }
}

impl fmt::Display for BElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Every element of `B` in lexicographic coordinate order.
pub fn all_b_elements(params: &Params) -> Vec<BElement> {
    let mut out = Vec::with_capacity(params.b_order() as usize);
    let mut current = vec![0u32; params.m];
    loop {
        out.push(BElement { coords: current.clone() });
        let mut i = params.m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            current[i] += 1;
            if current[i] < params.d {
                break;
            }
            current[i] = 0;
        }
    }
}

/// An epimorphism `B -> A` represented by the linear form
/// `b -> sum coeffs_i * b_i (mod d)`. Surjectivity is equivalent to
/// `gcd(coeffs_1, …, coeffs_m, d) = 1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Epimorphism {
    d: u32,
    coeffs: Vec<u32>,
}

impl Epimorphism {
    pub fn new(d: u32, coeffs: Vec<u32>) -> Result<Self> {
        if d < 2 {
            return Err(Error::InvalidParameter(format!("d = {d} must be at least 2")));
        }
        if coeffs.is_empty() {
            return Err(Error::InvalidParameter("empty coefficient vector".into()));
        }
        if coeffs.iter().any(|&c| c >= d) {
            return Err(Error::InvalidParameter("coefficient out of range".into()));
        }
        let g = coeffs.iter().fold(d, |acc, &c| acc.gcd(&c));
        if g != 1 {
            return Err(Error::InvalidParameter(format!(
                "form {coeffs:?} is not surjective onto Z/{d}"
            )));
        }
        Ok(Epimorphism { d, coeffs })
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn m(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// The exponent `j` with `pi(b) = a^j`.
    pub fn apply(&self, b: &BElement) -> Result<u32> {
        if b.coords.len() != self.coeffs.len() {
            return Err(Error::InvalidParameter(format!(
                "element has {} coordinates, form has {}",
                b.coords.len(),
                self.coeffs.len()
            )));
        }
        let mut acc: u64 = 0;
        for (&c, &x) in self.coeffs.iter().zip(&b.coords) {
            acc += c as u64 * x as u64;
        }
        Ok((acc % self.d as u64) as u32)
    }

    /// Exactly the elements mapped to `0`; always `d^(m-1)` of them.
    pub fn kernel(&self) -> Vec<BElement> {
        let params = Params::new(self.d, self.coeffs.len()).expect("validated at construction");
        all_b_elements(&params)
            .into_iter()
            .filter(|b| self.apply(b).expect("length matches") == 0)
            .collect()
    }

    /// The composite `b -> self(rho(b))`, again a linear form.
    pub fn compose(&self, rho: &AutB) -> Epimorphism {
        let m = self.coeffs.len();
        let mut coeffs = vec![0u32; m];
        for (j, c) in coeffs.iter_mut().enumerate() {
            let mut acc: u64 = 0;
            for i in 0..m {
                acc += self.coeffs[i] as u64 * rho.matrix[i][j] as u64;
            }
            *c = (acc % self.d as u64) as u32;
        }
        // a form composed with an automorphism stays surjective
        Epimorphism { d: self.d, coeffs }
    }
}

impl fmt::Display for Epimorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// An automorphism of `B`: an invertible `m x m` matrix over `Z/d` acting on
/// column vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AutB {
    d: u32,
    matrix: Vec<Vec<u32>>,
}

fn det_mod(matrix: &[Vec<u32>], d: u32) -> u32 {
    let n = matrix.len();
    if n == 1 {
        return matrix[0][0] % d;
    }
    // cofactor expansion along the first row; m stays tiny under the guard
    let mut acc: i64 = 0;
    for (j, &top) in matrix[0].iter().enumerate() {
        let minor: Vec<Vec<u32>> = matrix[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let term = top as i64 * det_mod(&minor, d) as i64;
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    acc.rem_euclid(d as i64) as u32
}

impl AutB {
    pub fn new(d: u32, matrix: Vec<Vec<u32>>) -> Result<Self> {
        let m = matrix.len();
        if m == 0 || matrix.iter().any(|row| row.len() != m) {
            return Err(Error::InvalidParameter("matrix must be square and nonempty".into()));
        }
        if matrix.iter().flatten().any(|&x| x >= d) {
            return Err(Error::InvalidParameter("matrix entry out of range".into()));
        }
        let det = det_mod(&matrix, d);
        if det.gcd(&d) != 1 {
            return Err(Error::InvalidParameter(format!(
                "matrix is not invertible mod {d} (det = {det})"
            )));
        }
        Ok(AutB { d, matrix })
    }

    pub fn identity(d: u32, m: usize) -> Self {
        let matrix = (0..m)
            .map(|i| (0..m).map(|j| u32::from(i == j)).collect())
            .collect();
        AutB { d, matrix }
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn matrix(&self) -> &[Vec<u32>] {
        &self.matrix
    }

    pub fn apply(&self, b: &BElement) -> BElement {
        let m = self.matrix.len();
        let coords = (0..m)
            .map(|i| {
                let mut acc: u64 = 0;
                for j in 0..m {
                    acc += self.matrix[i][j] as u64 * b.coords[j] as u64;
                }
                (acc % self.d as u64) as u32
            })
            .collect();
        BElement { coords }
    }
}

impl fmt::Display for AutB {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.matrix.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "(")?;
            for (j, x) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        write!(f, "]")
    }
}

/// An eventually periodic sequence of epimorphisms satisfying the
/// faithfulness condition: for every start index, the intersection of all
/// later kernels is trivial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OmegaSequence {
    preperiod: Vec<Epimorphism>,
    period: Vec<Epimorphism>,
}

impl OmegaSequence {
    /// Checks the kernel condition by brute-force enumeration of `B` and
    /// returns the validated sequence, or the smallest failing start index.
    pub fn validate(
        params: &Params,
        preperiod: Vec<Epimorphism>,
        period: Vec<Epimorphism>,
    ) -> Result<Self> {
        if period.is_empty() {
            return Err(Error::InvalidParameter("period must be nonempty".into()));
        }
        for pi in preperiod.iter().chain(&period) {
            if pi.d != params.d || pi.m() != params.m {
                return Err(Error::InvalidParameter(
                    "epimorphism does not match group parameters".into(),
                ));
            }
        }
        let seq = OmegaSequence { preperiod, period };
        let n_pre = seq.preperiod.len();
        let n_per = seq.period.len();
        let elements = all_b_elements(params);
        // the tail from index i contains exactly the epimorphisms at indices
        // i..n_pre + 2*n_per, so intersecting those kernels is exact
        for start in 0..n_pre + n_per {
            let survivor = elements.iter().find(|b| {
                !b.is_zero()
                    && (start..n_pre + 2 * n_per)
                        .all(|j| seq.at(j).apply(b).expect("lengths match") == 0)
            });
            if survivor.is_some() {
                return Err(Error::NotFaithful { index: start });
            }
        }
        Ok(seq)
    }

    pub fn preperiod(&self) -> &[Epimorphism] {
        &self.preperiod
    }

    pub fn period(&self) -> &[Epimorphism] {
        &self.period
    }

    /// The epimorphism at position `n` of the infinite sequence.
    pub fn at(&self, n: usize) -> &Epimorphism {
        if n < self.preperiod.len() {
            &self.preperiod[n]
        } else {
            &self.period[(n - self.preperiod.len()) % self.period.len()]
        }
    }

    /// Drops the first epimorphism, rotating the period when the preperiod
    /// is empty. Validity is preserved.
    pub fn shifted(&self) -> Self {
        if self.preperiod.is_empty() {
            let mut period = self.period.clone();
            period.rotate_left(1);
            OmegaSequence { preperiod: Vec::new(), period }
        } else {
            OmegaSequence { preperiod: self.preperiod[1..].to_vec(), period: self.period.clone() }
        }
    }
}

/// A spinal group: parameters plus a validated epimorphism sequence. The
/// single configuration object taken by every graph operation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpinalGroup {
    params: Params,
    omega: OmegaSequence,
}

impl SpinalGroup {
    pub fn new(params: Params, omega: OmegaSequence) -> Self {
        SpinalGroup { params, omega }
    }

    pub fn params(&self) -> &Params {
        &self.params
    }

    pub fn d(&self) -> u32 {
        self.params.d
    }

    pub fn m(&self) -> usize {
        self.params.m
    }

    pub fn omega(&self) -> &OmegaSequence {
        &self.omega
    }

    pub fn omega_at(&self, n: usize) -> &Epimorphism {
        self.omega.at(n)
    }

    /// The spinal generating set `A ∪ B \ {1}`: rotations `a^1 … a^(d-1)`
    /// followed by the nonzero elements of `B` in lexicographic order.
    pub fn generators(&self) -> Vec<crate::action::GeneratorLabel> {
        use crate::action::GeneratorLabel;
        let mut out = Vec::new();
        for j in 1..self.params.d {
            out.push(GeneratorLabel::Rooted(j));
        }
        for b in all_b_elements(&self.params) {
            if !b.is_zero() {
                out.push(GeneratorLabel::Spinal(b));
            }
        }
        out
    }

    /// Parses the one-line description
    /// `d=<int>;m=<int>;pre=<epi-list>;per=<epi-list>` where an epi-list is
    /// `[]` or `[(c1,…,cm),(…),…]`. Whitespace is ignored.
    pub fn parse_spec(s: &str) -> Result<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let parts: Vec<&str> = s.split(';').collect();
        if parts.len() != 4 {
            return Err(Error::Parse("expected `d=…;m=…;pre=…;per=…`".into()));
        }
        let field = |part: &str, key: &str| -> Result<String> {
            part.strip_prefix(&format!("{key}="))
                .map(str::to_string)
                .ok_or_else(|| Error::Parse(format!("expected `{key}=…`, got `{part}`")))
        };
        let d: u32 = field(parts[0], "d")?
            .parse()
            .map_err(|_| Error::Parse("invalid d".into()))?;
        let m: usize = field(parts[1], "m")?
            .parse()
            .map_err(|_| Error::Parse("invalid m".into()))?;
        let params = Params::new(d, m)?;
        let pre = parse_epi_list(d, m, &field(parts[2], "pre")?)?;
        let per = parse_epi_list(d, m, &field(parts[3], "per")?)?;
        let omega = OmegaSequence::validate(&params, pre, per)?;
        Ok(SpinalGroup::new(params, omega))
    }

    /// Searches for `rho` with `omega_n = omega_0 ∘ rho^n` for all `n`.
    ///
    /// The identity is checked on indices up to preperiod plus two full
    /// periods, a finite certificate: agreement there forces both sequences
    /// to satisfy the same recurrence beyond the preperiod. The search is
    /// exhaustive over invertible matrices, guarded by `d^(m*m)`.
    pub fn detect_self_similar(&self) -> Result<Option<AutB>> {
        let d = self.params.d;
        let m = self.params.m;
        let space = (d as u64)
            .checked_pow((m * m) as u32)
            .filter(|&s| s <= SIZE_LIMIT)
            .ok_or(Error::SizeGuard {
                what: "d^(m*m)",
                actual: u64::MAX,
                limit: SIZE_LIMIT,
            })?;
        let horizon = self.omega.preperiod.len() + 2 * self.omega.period.len();
        let mut entries = vec![0u32; m * m];
        for _ in 0..space {
            if let Ok(rho) = AutB::new(
                d,
                (0..m).map(|i| entries[i * m..(i + 1) * m].to_vec()).collect(),
            ) {
                let mut form = self.omega.at(0).clone();
                let mut ok = true;
                for n in 0..horizon {
                    if &form != self.omega.at(n) {
                        ok = false;
                        break;
                    }
                    form = form.compose(&rho);
                }
                if ok {
                    return Ok(Some(rho));
                }
            }
            // odometer over all matrix entries
            let mut i = entries.len();
            loop {
                if i == 0 {
                    return Ok(None);
                }
                i -= 1;
                entries[i] += 1;
                if entries[i] < d {
                    break;
                }
                entries[i] = 0;
            }
        }
        Ok(None)
    }
}

impl fmt::Display for SpinalGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={};m={};pre=[", self.params.d, self.params.m)?;
        for (i, pi) in self.omega.preperiod.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{pi}")?;
        }
        write!(f, "];per=[")?;
        for (i, pi) in self.omega.period.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{pi}")?;
        }
        write!(f, "]")
    }
}

fn parse_epi_list(d: u32, m: usize, s: &str) -> Result<Vec<Epimorphism>> {
    let inner = s
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| Error::Parse(format!("expected `[…]`, got `{s}`")))?;
    let mut out = Vec::new();
    let mut rest = inner;
    while !rest.is_empty() {
        let close = rest
            .find(')')
            .ok_or_else(|| Error::Parse(format!("unbalanced `(` in `{s}`")))?;
        let tuple = rest[..=close]
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected `(…)` in `{s}`")))?;
        let coeffs: Vec<u32> = tuple
            .split(',')
            .map(|t| t.parse().map_err(|_| Error::Parse(format!("invalid residue `{t}`"))))
            .collect::<Result<_>>()?;
        if coeffs.len() != m {
            return Err(Error::Parse(format!(
                "form has {} coefficients, expected {m}",
                coeffs.len()
            )));
        }
        out.push(Epimorphism::new(d, coeffs)?);
        rest = &rest[close + 1..];
        if let Some(r) = rest.strip_prefix(',') {
            rest = r;
        } else if !rest.is_empty() {
            return Err(Error::Parse(format!("expected `,` between forms in `{s}`")));
        }
    }
    Ok(out)
}

/// Symbols for the degree-`p` two-generator family: `PiI(i)` maps the first
/// basis element to `a` and the second to `a^i`; `Pi` kills the first basis
/// element and maps the second to `a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PSymbol {
    PiI(u32),
    Pi,
}

impl PSymbol {
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "pi" {
            return Ok(PSymbol::Pi);
        }
        if let Some(idx) = s.strip_prefix("pi") {
            let i: u32 = idx
                .parse()
                .map_err(|_| Error::Parse(format!("invalid symbol `{s}`")))?;
            return Ok(PSymbol::PiI(i));
        }
        Err(Error::Parse(format!("invalid symbol `{s}`, expected `pi<k>` or `pi`")))
    }

    fn to_epimorphism(self, p: u32) -> Result<Epimorphism> {
        match self {
            PSymbol::PiI(i) => {
                if i >= p {
                    return Err(Error::InvalidParameter(format!("index {i} out of range")));
                }
                Epimorphism::new(p, vec![1, i])
            }
            PSymbol::Pi => Epimorphism::new(p, vec![0, 1]),
        }
    }
}

/// Optional arguments for the parametric presets.
#[derive(Debug, Clone, Default)]
pub struct PresetArgs {
    pub p: Option<u32>,
    pub m: Option<usize>,
    /// Šunić: coefficients of the starting epimorphism; defaults to `(1,0,…)`.
    pub alpha: Option<Vec<u32>>,
    /// Šunić: rows of the automorphism matrix; defaults to the identity.
    pub rho: Option<Vec<Vec<u32>>>,
    /// Degree-p family: preperiod symbols, e.g. `pi0,pi1,pi`.
    pub pre: Option<String>,
    /// Degree-p family: period symbols.
    pub per: Option<String>,
}

/// The infinite dihedral group: `d=2`, `m=1`, constant sequence.
pub fn dihedral() -> SpinalGroup {
    let params = Params::new(2, 1).expect("valid");
    let pi = Epimorphism::new(2, vec![1]).expect("valid");
    let omega = OmegaSequence::validate(&params, vec![], vec![pi]).expect("valid");
    SpinalGroup::new(params, omega)
}

/// The first Grigorchuk group: `d=2`, `m=2`, period of the three nontrivial
/// epimorphisms.
pub fn grigorchuk() -> SpinalGroup {
    let params = Params::new(2, 2).expect("valid");
    let per = vec![
        Epimorphism::new(2, vec![0, 1]).expect("valid"),
        Epimorphism::new(2, vec![1, 0]).expect("valid"),
        Epimorphism::new(2, vec![1, 1]).expect("valid"),
    ];
    let omega = OmegaSequence::validate(&params, vec![], per).expect("valid");
    SpinalGroup::new(params, omega)
}

/// The Fabrykowski-Gupta group: `d=3`, `m=1`, constant sequence.
pub fn fabrykowski_gupta() -> SpinalGroup {
    let params = Params::new(3, 1).expect("valid");
    let pi = Epimorphism::new(3, vec![1]).expect("valid");
    let omega = OmegaSequence::validate(&params, vec![], vec![pi]).expect("valid");
    SpinalGroup::new(params, omega)
}

/// The degree-`p` two-generator family with a caller-supplied symbol
/// sequence.
pub fn grigorchuk_p(p: u32, pre: &[PSymbol], per: &[PSymbol]) -> Result<SpinalGroup> {
    let params = Params::new(p, 2)?;
    let pre = pre.iter().map(|s| s.to_epimorphism(p)).collect::<Result<_>>()?;
    let per = per.iter().map(|s| s.to_epimorphism(p)).collect::<Result<_>>()?;
    let omega = OmegaSequence::validate(&params, pre, per)?;
    Ok(SpinalGroup::new(params, omega))
}

/// The Šunić construction: `omega_i = alpha ∘ rho^i`, always purely periodic.
pub fn sunic(p: u32, m: usize, alpha: Epimorphism, rho: AutB) -> Result<SpinalGroup> {
    let params = Params::new(p, m)?;
    if alpha.d() != p || alpha.m() != m || rho.d() != p || rho.matrix().len() != m {
        return Err(Error::InvalidParameter(
            "alpha or rho does not match the group parameters".into(),
        ));
    }
    let mut period = vec![alpha.clone()];
    let mut form = alpha.compose(&rho);
    while form != alpha {
        period.push(form.clone());
        form = form.compose(&rho);
        if period.len() as u64 > SIZE_LIMIT {
            return Err(Error::SizeGuard {
                what: "sunic period",
                actual: period.len() as u64,
                limit: SIZE_LIMIT,
            });
        }
    }
    let omega = OmegaSequence::validate(&params, vec![], period)?;
    Ok(SpinalGroup::new(params, omega))
}

fn parse_symbols(s: &str) -> Result<Vec<PSymbol>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(PSymbol::parse).collect()
}

/// Looks up a named preset. `dihedral`, `grigorchuk` and `fabrykowski-gupta`
/// take no arguments; `grigorchuk-p` takes `p` and a symbol sequence;
/// `sunic` takes `p`, `m` and optionally `alpha` and `rho`.
pub fn preset(name: &str, args: &PresetArgs) -> Result<SpinalGroup> {
    match name {
        "dihedral" => Ok(dihedral()),
        "grigorchuk" => Ok(grigorchuk()),
        "fabrykowski-gupta" => Ok(fabrykowski_gupta()),
        "grigorchuk-p" => {
            let p = args.p.ok_or_else(|| Error::InvalidParameter("missing p".into()))?;
            let pre = parse_symbols(args.pre.as_deref().unwrap_or(""))?;
            let per = parse_symbols(
                args.per
                    .as_deref()
                    .ok_or_else(|| Error::InvalidParameter("missing period symbols".into()))?,
            )?;
            grigorchuk_p(p, &pre, &per)
        }
        "sunic" => {
            let p = args.p.ok_or_else(|| Error::InvalidParameter("missing p".into()))?;
            let m = args.m.ok_or_else(|| Error::InvalidParameter("missing m".into()))?;
            let alpha = match &args.alpha {
                Some(coeffs) => Epimorphism::new(p, coeffs.clone())?,
                None => {
                    let mut coeffs = vec![0; m];
                    coeffs[0] = 1;
                    Epimorphism::new(p, coeffs)?
                }
            };
            let rho = match &args.rho {
                Some(rows) => AutB::new(p, rows.clone())?,
                None => AutB::identity(p, m),
            };
            sunic(p, m, alpha, rho)
        }
        other => Err(Error::UnknownPreset(other.to_string())),
    }
}
