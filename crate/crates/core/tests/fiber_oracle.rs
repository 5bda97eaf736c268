//! Hand-built fibers of `k[u,v]#S₂` over `(u+v, uv) = (α, β)`, with exact
//! trace-form ranks computed independently of the library.

use num_rational::Ratio;
use qks_core::workbench::{fiber_report, CaseId, CaseParams, CaseSpec, Localization};

type Q = Ratio<i64>;

/// `p0 + p1·g` with `p_i = a + b·u` in `k[u]/(u² − αu + β)`, as `[a0, b0, a1, b1]`.
type Elem = [Q; 4];

struct Fiber {
    alpha: Q,
    beta: Q,
}

impl Fiber {
    fn mul_poly(&self, (a, b): (Q, Q), (c, d): (Q, Q)) -> (Q, Q) {
        (a * c - b * d * self.beta, a * d + b * c + b * d * self.alpha)
    }

    /// `g·p = σ(p)·g` with `σ(u) = α − u`.
    fn sigma(&self, (a, b): (Q, Q)) -> (Q, Q) {
        (a + b * self.alpha, -b)
    }

    fn mul(&self, x: &Elem, y: &Elem) -> Elem {
        let (p0, p1, q0, q1) = ((x[0], x[1]), (x[2], x[3]), (y[0], y[1]), (y[2], y[3]));
        let add = |s: (Q, Q), t: (Q, Q)| (s.0 + t.0, s.1 + t.1);
        let e = add(self.mul_poly(p0, q0), self.mul_poly(p1, self.sigma(q1)));
        let g = add(self.mul_poly(p0, q1), self.mul_poly(p1, self.sigma(q0)));
        [e.0, e.1, g.0, g.1]
    }

    fn basis(i: usize) -> Elem {
        let mut e = [Q::from_integer(0); 4];
        e[i] = Q::from_integer(1);
        e
    }

    fn trace(&self, x: &Elem) -> Q {
        (0..4).map(|j| self.mul(x, &Self::basis(j))[j]).sum()
    }

    fn trace_form_rank(&self) -> usize {
        let mut m: Vec<Vec<Q>> = (0..4)
            .map(|i| (0..4).map(|j| self.trace(&self.mul(&Self::basis(i), &Self::basis(j)))).collect())
            .collect();
        rank(&mut m)
    }
}

fn rank(m: &mut [Vec<Q>]) -> usize {
    let (rows, cols) = (m.len(), m[0].len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| m[i][c] != Q::from_integer(0)) else {
            continue;
        };
        m.swap(r, p);
        for i in 0..rows {
            if i != r && m[i][c] != Q::from_integer(0) {
                let f = m[i][c] / m[r][c];
                let pivot = m[r].clone();
                for (x, t) in m[i].iter_mut().zip(pivot) {
                    *x -= f * t;
                }
            }
        }
        r += 1;
    }
    r
}

#[test]
fn trace_form_matches_hand_built_fibers() {
    let spec = CaseSpec::new(
        CaseId::Zero,
        CaseParams::new(CaseId::Zero, 2, None).with_localization(Localization::None),
    )
    .unwrap();
    let mut seen_degenerate = 0;
    for alpha in -3i64..=3 {
        for beta in [-2i64, -1, 0, 1, 2, 4, 9] {
            let oracle = Fiber {
                alpha: Q::from_integer(alpha),
                beta: Q::from_integer(beta),
            };
            let rank = oracle.trace_form_rank();
            let degenerate = alpha * alpha == 4 * beta;
            assert_eq!(rank, if degenerate { 2 } else { 4 }, "oracle at ({alpha}, {beta})");
            seen_degenerate += degenerate as usize;
            let point = spec.parse_point(&format!("x={alpha},y={beta}")).unwrap();
            let r = fiber_report(&spec, &point).unwrap();
            assert_eq!(r.point.fiber_dim, 4);
            assert_eq!(r.trace_form_rank, rank, "({alpha}, {beta})");
            assert_eq!(r.radical_dim, 4 - rank);
            assert_eq!(r.point.d, (rank == 4).then_some(2));
        }
    }
    assert!(seen_degenerate >= 3);
}

#[test]
fn oracle_is_associative() {
    let f = Fiber {
        alpha: Q::new(3, 2),
        beta: Q::from_integer(-5),
    };
    for i in 0..4 {
        for j in 0..4 {
            for k in 0..4 {
                let (a, b, c) = (Fiber::basis(i), Fiber::basis(j), Fiber::basis(k));
                assert_eq!(f.mul(&f.mul(&a, &b), &c), f.mul(&a, &f.mul(&b, &c)));
            }
        }
    }
}
