//! Deciding whether a point of the opposite cell lies in the image of ζ.
//!
//! The image is cut out by two kinds of equations: coordinates that ζ always
//! sends to zero, and the product rule `([x],[y]) = ([x],[x-1]) · ([x-1],[y])`
//! along rightward paths of length at least two.

use std::fmt;

use serde::Serialize;

use super::{zeta, BlockPattern, OppositeCellPoint, PatternViolation};
use crate::linalg::{Field, Matrix};
use crate::quiver::{GridPosition, Orientation};
use crate::representation::Representation;

/// Why a point is not `ζ(V)` for any `V`. Coordinates are 1-based.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Rejection {
    /// The point is not in the opposite cell at all.
    Pattern(PatternViolation),
    /// `x_{row,col}` must vanish on the image.
    ForcedZero { row: usize, col: usize, block: GridPosition },
    /// The product relation through block row/column `[x-1]` fails.
    Product { row: usize, col: usize, block: GridPosition, relation: String },
}

impl fmt::Display for Rejection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Rejection::Pattern(p) => write!(
                f,
                "pattern violation at x_{{{},{}}} in block {}: expected {}",
                p.row, p.col, p.block, p.expected
            ),
            Rejection::ForcedZero { row, col, block } => {
                write!(f, "image violation: x_{{{row},{col}}} in block {block} must be 0")
            }
            Rejection::Product { block, relation, .. } => {
                write!(f, "image violation in block {block}: {relation} must be 0")
            }
        }
    }
}

/// Reads the arrow blocks of `a`, rebuilds `V`, and accepts iff `ζ(V) = a`.
pub fn zeta_preimage<F: Field>(a: &OppositeCellPoint<F>) -> Result<Representation<F>, Rejection> {
    if let Some(p) = a.pattern_violation() {
        return Err(Rejection::Pattern(p));
    }
    let frame = a.frame();
    let q = frame.quiver();
    let b = a.blocked();
    let field = a.matrix().field();
    let maps: Vec<Matrix<F>> = (1..q.n())
        .map(|e| match q.arrow(e) {
            Orientation::Left => b.block(e, e + 1),
            Orientation::Right => b.block(e + 1, e),
        })
        .collect::<crate::error::Result<_>>()
        .expect("arrow blocks exist");
    let v = Representation::new(q.clone(), frame.dims().clone(), field, maps).expect("arrow blocks have arrow shapes");

    let mut products = Vec::new();
    for &x in frame.s1().as_slice() {
        for &y in frame.s2().as_slice() {
            if frame.pattern(x, y) != BlockPattern::Free {
                continue;
            }
            let arrow_block = (y == x + 1 && q.arrow(x) == Orientation::Left)
                || (x == y + 1 && q.arrow(y) == Orientation::Right);
            if arrow_block {
                continue;
            }
            if q.has_right_path(y, x) {
                products.push((x - y, x, y));
                continue;
            }
            if let Some((row, col)) = first_nonzero(a, x, y) {
                return Err(Rejection::ForcedZero { row, col, block: GridPosition { x, y } });
            }
        }
    }
    products.sort_unstable();
    for (_, x, y) in products {
        if let Some(r) = product_violation(a, x, y) {
            return Err(r);
        }
    }
    let rebuilt = zeta(&v).expect("frame is valid");
    assert_eq!(rebuilt.matrix(), a.matrix(), "image equations imply the round trip");
    Ok(v)
}

fn first_nonzero<F: Field>(a: &OppositeCellPoint<F>, x: usize, y: usize) -> Option<(usize, usize)> {
    let (r0, nr) = a.frame().row_axis().span(x).ok()?;
    let (c0, nc) = a.frame().col_axis().span(y).ok()?;
    let m = a.matrix();
    for i in r0..r0 + nr {
        for j in c0..c0 + nc {
            if !m.field().is_zero(m.get(i, j)) {
                return Some((i + 1, j + 1));
            }
        }
    }
    None
}

fn product_violation<F: Field>(a: &OppositeCellPoint<F>, x: usize, y: usize) -> Option<Rejection> {
    let mid = x - 1;
    let (rows, cols) = (a.frame().row_axis(), a.frame().col_axis());
    let (rx, nx) = rows.span(x).ok()?;
    let (cy, ny) = cols.span(y).ok()?;
    let (rm, nm) = rows.span(mid).ok()?;
    let (cm, _) = cols.span(mid).ok()?;
    let m = a.matrix();
    let f = m.field();
    for i in rx..rx + nx {
        for j in cy..cy + ny {
            let mut sum = f.zero();
            for k in 0..nm {
                let t = f.mul(m.get(i, cm + k), m.get(rm + k, j));
                sum = f.add(&sum, &t);
            }
            if sum != *m.get(i, j) {
                let mut relation = format!("x_{{{},{}}}", i + 1, j + 1);
                for k in 0..nm {
                    relation.push_str(&format!(" - x_{{{},{}}}x_{{{},{}}}", i + 1, cm + k + 1, rm + k + 1, j + 1));
                }
                return Some(Rejection::Product { row: i + 1, col: j + 1, block: GridPosition { x, y }, relation });
            }
        }
    }
    None
}
