//! Colored Jones polynomials of twist knots, plus a brute-force Kauffman
//! bracket state sum on explicit PD-coded diagrams for desk-scale
//! cross-validation.
//!
//! The formula side computes J'_{K_p}(N) from the cyclotomic coefficients
//! f_{K_p,n} = a^(n(n+3)/2) c'_{n,p}; the oracle side enumerates all 2^c
//! smoothings of a diagram, applies the writhe correction (-A^3)^(-w), and
//! normalizes by the unknot. The two must agree at N = 2 for the diagrams
//! the generator produces.
//!
//! PD convention: each crossing is a 4-tuple of arc labels read
//! counterclockwise starting from the incoming under-strand; arcs are
//! numbered 1..=2c along the orientation, so the under-strand enters with
//! arc i and leaves with arc next(i). Crossing signs are stored explicitly
//! and checked against the orientation data.

use std::collections::HashMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::laurent::{pochhammer, qbrace, LaurentPoly};
use crate::omega::c_prime;

/// Hard cap on the state sum (2^c smoothings).
pub const MAX_CROSSINGS: usize = 24;

/// Largest twist parameter the diagram generator accepts.
pub const MAX_TWIST_PARAM: i64 = 10;

/// A PD-coded knot diagram with explicit crossing signs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarDiagram {
    /// 4-tuples of arc labels, counterclockwise from the incoming under-strand.
    pub crossings: Vec<[usize; 4]>,
    /// Per-crossing sign (+1/-1); the sum is the writhe.
    pub signs: Vec<i8>,
    /// Crossing-free circles drawn alongside (0 for ordinary knot diagrams;
    /// 1 with no crossings is the round unknot).
    #[serde(default)]
    pub circles: usize,
}

impl PlanarDiagram {
    /// Builds and validates a diagram.
    pub fn new(crossings: Vec<[usize; 4]>, signs: Vec<i8>) -> Result<Self> {
        let d = PlanarDiagram {
            crossings,
            signs,
            circles: 0,
        };
        d.validate()?;
        Ok(d)
    }

    /// The empty link diagram (bracket 1).
    pub fn empty() -> Self {
        PlanarDiagram {
            crossings: Vec::new(),
            signs: Vec::new(),
            circles: 0,
        }
    }

    /// The 0-crossing round unknot.
    pub fn unknot() -> Self {
        PlanarDiagram {
            crossings: Vec::new(),
            signs: Vec::new(),
            circles: 1,
        }
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|&s| s as i64).sum()
    }

    /// True when the diagram is one knot component.
    pub fn is_single_component(&self) -> bool {
        if self.crossings.is_empty() {
            self.circles == 1
        } else {
            self.circles == 0
        }
    }

    fn next_arc(&self, x: usize) -> usize {
        x % (2 * self.crossing_count()) + 1
    }

    /// The arc the over-strand enters with, for crossing `idx`.
    fn over_incoming(&self, idx: usize) -> Result<usize> {
        let [i, j, k, l] = self.crossings[idx];
        let malformed = |msg: String| Error::MalformedDiagram(msg);
        let _ = k;
        let mut candidates = Vec::new();
        if self.next_arc(j) == l {
            candidates.push(j);
        }
        if self.next_arc(l) == j {
            candidates.push(l);
        }
        // a one-crossing kink qualifies both ways; the under-strand already
        // consumes arc i, which breaks the tie
        candidates.retain(|&x| x != i);
        match candidates.len() {
            1 => Ok(candidates[0]),
            _ => Err(malformed(format!(
                "crossing {idx}: over-strand direction is not determined"
            ))),
        }
    }

    /// Signs implied by the arc numbering: +1 when the over-strand enters at
    /// the fourth tuple position, -1 at the second.
    pub fn derived_signs(&self) -> Result<Vec<i8>> {
        (0..self.crossing_count())
            .map(|idx| {
                let [_, j, _, l] = self.crossings[idx];
                let over_in = self.over_incoming(idx)?;
                if over_in == l && over_in != j {
                    Ok(1)
                } else {
                    Ok(-1)
                }
            })
            .collect()
    }

    /// Checks arc-label bookkeeping, under-strand continuity, and that the
    /// stored signs match the orientation data.
    pub fn validate(&self) -> Result<()> {
        let c = self.crossing_count();
        let malformed = |msg: String| Error::MalformedDiagram(msg);
        if self.signs.len() != c {
            return Err(malformed(format!(
                "{c} crossings but {} signs",
                self.signs.len()
            )));
        }
        if let Some(&s) = self.signs.iter().find(|&&s| s != 1 && s != -1) {
            return Err(malformed(format!("sign {s} is not +1/-1")));
        }
        if c == 0 {
            return Ok(());
        }
        let mut seen = vec![0usize; 2 * c + 1];
        for t in &self.crossings {
            for &arc in t {
                if arc == 0 || arc > 2 * c {
                    return Err(malformed(format!("arc label {arc} outside 1..={}", 2 * c)));
                }
                seen[arc] += 1;
            }
        }
        if let Some(arc) = (1..=2 * c).find(|&a| seen[a] != 2) {
            return Err(malformed(format!(
                "arc {arc} appears {} times, expected 2",
                seen[arc]
            )));
        }
        for (idx, &[i, _, k, _]) in self.crossings.iter().enumerate() {
            if self.next_arc(i) != k {
                return Err(malformed(format!(
                    "crossing {idx}: under-strand exits with arc {k}, expected {}",
                    self.next_arc(i)
                )));
            }
        }
        let derived = self.derived_signs()?;
        if derived != self.signs {
            return Err(malformed(format!(
                "stored signs {:?} disagree with orientation-derived signs {derived:?}",
                self.signs
            )));
        }
        Ok(())
    }

    /// The mirror image: every crossing switched, signs negated. The tuple is
    /// rotated so it still starts at the (new) incoming under-strand.
    pub fn mirror(&self) -> Result<PlanarDiagram> {
        let mut crossings = Vec::with_capacity(self.crossing_count());
        for idx in 0..self.crossing_count() {
            let [i, j, k, l] = self.crossings[idx];
            let over_in = self.over_incoming(idx)?;
            let rotated = if over_in == j {
                [j, k, l, i]
            } else {
                [l, i, j, k]
            };
            crossings.push(rotated);
        }
        let signs = self.signs.iter().map(|s| -s).collect();
        Ok(PlanarDiagram {
            crossings,
            signs,
            circles: self.circles,
        })
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }
    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }
    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }
}

/// The Kauffman bracket of a diagram by direct state-sum enumeration:
/// each crossing smooths with weight A or A^-1, every resulting circle
/// contributes a factor -a - a^-1, and the empty diagram has bracket 1.
///
/// The result is independent of enumeration order; the loop below is
/// sequential and deterministic.
pub fn kauffman_oracle(d: &PlanarDiagram) -> Result<LaurentPoly> {
    d.validate()?;
    let c = d.crossing_count();
    if c > MAX_CROSSINGS {
        return Err(Error::TooManyCrossings(c, MAX_CROSSINGS));
    }
    let loop_value = LaurentPoly::from_terms([(2, -1), (-2, -1)]);
    // tally states by (A-count minus B-count, number of circles)
    let mut tally: HashMap<(i64, usize), u64> = HashMap::new();
    for state in 0u64..(1u64 << c) {
        let mut uf = UnionFind::new(2 * c + 1);
        let mut diff = 0i64;
        for (idx, t) in d.crossings.iter().enumerate() {
            if state >> idx & 1 == 0 {
                // A-smoothing joins (t0 t1) and (t2 t3)
                diff += 1;
                uf.union(t[0], t[1]);
                uf.union(t[2], t[3]);
            } else {
                // B-smoothing joins (t0 t3) and (t1 t2)
                diff -= 1;
                uf.union(t[0], t[3]);
                uf.union(t[1], t[2]);
            }
        }
        let mut loops = d.circles;
        for arc in 1..=2 * c {
            if uf.find(arc) == arc {
                loops += 1;
            }
        }
        if c == 0 {
            loops = d.circles;
        }
        *tally.entry((diff, loops)).or_insert(0) += 1;
    }
    let max_loops = tally.keys().map(|&(_, l)| l).max().unwrap_or(0);
    let mut delta_pows = Vec::with_capacity(max_loops + 1);
    delta_pows.push(LaurentPoly::one());
    for _ in 0..max_loops {
        delta_pows.push(&delta_pows[delta_pows.len() - 1] * &loop_value);
    }
    let mut keys: Vec<_> = tally.keys().copied().collect();
    keys.sort_unstable();
    let mut acc = LaurentPoly::zero();
    for (diff, loops) in keys {
        let count = tally[&(diff, loops)];
        let weight = LaurentPoly::monomial(diff, BigInt::from(count));
        acc = &acc + &(&weight * &delta_pows[loops]);
    }
    Ok(acc)
}

/// Writhe-corrected, unknot-normalized bracket of a single-component
/// diagram: (-A^3)^(-w) <D> / (-a - a^-1). This is J'_K(2) for the knot the
/// diagram presents (with zero framing), and the round unknot maps to 1.
pub fn normalized_bracket_invariant(d: &PlanarDiagram) -> Result<LaurentPoly> {
    if !d.is_single_component() {
        return Err(Error::MalformedDiagram(
            "normalized invariant requires a single knot component".into(),
        ));
    }
    let raw = kauffman_oracle(d)?;
    let w = d.writhe();
    let framing = LaurentPoly::monomial(-3 * w, if w % 2 == 0 { 1 } else { -1 });
    let corrected = &raw * &framing;
    corrected.exact_div(&LaurentPoly::from_terms([(2, -1), (-2, -1)]))
}

// ---------------------------------------------------------------------------
// twist-knot diagrams

/// Port indices are counterclockwise, so the transverse continuation of
/// port q is q+2 mod 4, and the over-strand occupies either ports {0,2} or
/// {1,3}.
#[derive(Clone, Copy)]
struct TemplateCrossing {
    /// true when the {0,2} diagonal is the over-strand
    over_02: bool,
}

/// Walks a closed strand through a port-graph template and emits the PD code.
fn walk_template(
    crossings: &[TemplateCrossing],
    edges: &[((usize, usize), (usize, usize))],
    start: (usize, usize),
) -> Result<PlanarDiagram> {
    let c = crossings.len();
    let mut adj: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    for &(a, b) in edges {
        adj.insert(a, b);
        adj.insert(b, a);
    }
    let mut port_arcs: Vec<[usize; 4]> = vec![[0; 4]; c];
    let mut at = start;
    for passage in 1..=2 * c {
        let (cross, in_port) = at;
        let out_port = (in_port + 2) % 4;
        port_arcs[cross][in_port] = passage;
        port_arcs[cross][out_port] = passage % (2 * c) + 1;
        at = *adj
            .get(&(cross, out_port))
            .ok_or_else(|| Error::MalformedDiagram(format!("dangling port {cross}:{out_port}")))?;
    }
    if at != start {
        return Err(Error::MalformedDiagram(
            "template walk did not close up".into(),
        ));
    }
    // each crossing was passed once per diagonal
    if port_arcs.iter().any(|p| p.contains(&0)) {
        return Err(Error::MalformedDiagram(
            "template walk missed a port".into(),
        ));
    }
    let mut tuples = Vec::with_capacity(c);
    for (idx, tc) in crossings.iter().enumerate() {
        let under_ports = if tc.over_02 { [1, 3] } else { [0, 2] };
        // the under passage is the one whose in-arc continues to out-arc
        let s = under_ports
            .into_iter()
            .find(|&q| {
                let arc_in = port_arcs[idx][q];
                port_arcs[idx][(q + 2) % 4] == arc_in % (2 * c) + 1
            })
            .ok_or_else(|| {
                Error::MalformedDiagram(format!("crossing {idx}: no under passage found"))
            })?;
        tuples.push([
            port_arcs[idx][s],
            port_arcs[idx][(s + 1) % 4],
            port_arcs[idx][(s + 2) % 4],
            port_arcs[idx][(s + 3) % 4],
        ]);
    }
    let mut d = PlanarDiagram {
        crossings: tuples,
        signs: vec![1; c],
        circles: 0,
    };
    d.signs = d.derived_signs()?;
    d.validate()?;
    Ok(d)
}

/// A diagram of the twist knot K_p: 2|p| twist-region crossings plus the
/// 2-crossing clasp, closed by threading through the fold. p = 0 gives the
/// round unknot. K_1 is a left-handed trefoil and K_{-1} the figure eight;
/// the handedness wiring below is pinned by agreement with the cyclotomic
/// formula at N = 2.
///
/// Template, top to bottom: the closure strand leaves the top-right, runs
/// outside, and threads the fold eye below the twist column (over one
/// strand, under the other); T ports are NE/NW/SW/SE, clasp ports E/N/W/S.
pub fn twist_knot_diagram(p: i64) -> Result<PlanarDiagram> {
    if p == 0 {
        return Ok(PlanarDiagram::unknot());
    }
    if p.abs() > MAX_TWIST_PARAM {
        return Err(Error::UnsupportedP(p));
    }
    let m = p.unsigned_abs() as usize;
    let twists = 2 * m;
    let (cl, cr) = (twists, twists + 1);
    // twist handedness follows sign(p); the clasp is fixed
    let twist_over_02 = p > 0;
    let mut crossings = vec![
        TemplateCrossing {
            over_02: twist_over_02,
        };
        twists
    ];
    crossings.push(TemplateCrossing { over_02: false }); // CL: knot strand (N-S) over
    crossings.push(TemplateCrossing { over_02: true }); // CR: closure (E-W) over
    // ports: T = [NE, NW, SW, SE], clasp = [E, N, W, S]
    let mut edges = Vec::new();
    for i in 0..twists - 1 {
        edges.push(((i, 2), (i + 1, 1))); // SW_i -- NW_{i+1}
        edges.push(((i, 3), (i + 1, 0))); // SE_i -- NE_{i+1}
    }
    edges.push(((twists - 1, 2), (cl, 1))); // SW_last -- N_CL
    edges.push(((twists - 1, 3), (cr, 1))); // SE_last -- N_CR
    edges.push(((cl, 3), (cr, 3))); // S_CL -- S_CR (the fold cap)
    edges.push(((0, 0), (cr, 0))); // NE_first -- E_CR (closure, outside right)
    edges.push(((cr, 2), (cl, 0))); // W_CR -- E_CL
    edges.push(((cl, 2), (0, 1))); // W_CL -- NW_first (closure, outside left)
    walk_template(&crossings, &edges, (0, 1))
}

/// The standard 3-crossing diagram of the left-handed trefoil (= K_1),
/// writhe -3.
pub fn left_trefoil() -> PlanarDiagram {
    PlanarDiagram {
        crossings: vec![[4, 1, 5, 2], [2, 5, 3, 6], [6, 3, 1, 4]],
        signs: vec![-1, -1, -1],
        circles: 0,
    }
}

/// The standard 4-crossing diagram of the figure-eight knot (= K_{-1}).
pub fn figure_eight() -> PlanarDiagram {
    PlanarDiagram {
        crossings: vec![[6, 2, 7, 1], [2, 6, 3, 5], [8, 3, 1, 4], [4, 7, 5, 8]],
        signs: vec![1, 1, -1, -1],
        circles: 0,
    }
}

// ---------------------------------------------------------------------------
// the cyclotomic formula

/// Cyclotomic coefficient f_{K_p,n} = a^(n(n+3)/2) c'_{n,p}.
pub fn f_coeff(p: i64, n: usize) -> Result<LaurentPoly> {
    let n_i = n as i64;
    Ok(c_prime(n, p)?.mul_monomial(n_i * (n_i + 3), &1.into()))
}

/// The normalized colored Jones polynomial of a twist knot at one color.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TwistKnotInvariant {
    /// Twist parameter of K_p.
    pub p: i64,
    /// Color N (dimension of the irreducible representation).
    pub color: i64,
    /// J'_{K_p}(N), an exact Laurent polynomial with J'(1) = 1.
    pub value: LaurentPoly,
    /// The coefficients f_{K_p,0}, ..., f_{K_p,N-1} used in the sum.
    pub f_coeffs: Vec<LaurentPoly>,
}

/// J'_{K_p}(N) = sum_{n=0}^{N-1} f_{K_p,n} {N-n}{N-n+1}...{N+n} / {N}.
///
/// Each term's brace product contains the factor {N}, so the division is
/// exact; terms with n >= N vanish because {N-n} hits {0} = 0.
pub fn colored_jones(p: i64, color: i64) -> Result<TwistKnotInvariant> {
    if color < 1 {
        return Err(Error::BadColor(color));
    }
    let mut value = LaurentPoly::zero();
    let mut f_coeffs = Vec::with_capacity(color as usize);
    for n in 0..color {
        let f_n = f_coeff(p, n as usize)?;
        let mut product = LaurentPoly::one();
        for j in (color - n)..=(color + n) {
            product = &product * &qbrace(j);
        }
        let term = &f_n * &product.exact_div(&qbrace(color))?;
        value = &value + &term;
        f_coeffs.push(f_n);
    }
    Ok(TwistKnotInvariant {
        p,
        color,
        value,
        f_coeffs,
    })
}

/// The q-Pochhammer form of the same invariant:
/// J'_{K_p}(N) = sum_n ftilde_n (q^(1-N); q)_n (q^(1+N); q)_n with q = a^2
/// and ftilde_n = (-1)^n q^(-n(n+1)/2) f_{K_p,n}. Equal to
/// [`colored_jones`]`(p, N).value` term count and all.
pub fn colored_jones_qform(p: i64, color: i64) -> Result<LaurentPoly> {
    if color < 1 {
        return Err(Error::BadColor(color));
    }
    let mut value = LaurentPoly::zero();
    for n in 0..color as usize {
        let n_i = n as i64;
        let mut tilde = f_coeff(p, n)?.mul_monomial(-2 * n_i * (n_i + 1), &1.into());
        if n % 2 == 1 {
            tilde = -tilde;
        }
        let term = &(&tilde * &pochhammer(1 - color, n)) * &pochhammer(1 + color, n);
        value = &value + &term;
    }
    Ok(value)
}
