//! A concrete exact matrix model of the Jordan triple V = M_{p,q}(C) with
//! D(u, v)z = u v* z + z v* u, used to certify the structural identities the
//! rest of the engine takes as axioms: the quadrangle relations, the two
//! commuting sl2 pairs, the Peirce projections, and the closed form of the
//! two-parameter torus orbit of the base tripotent.
//!
//! Scale convention: minimal tripotents have norm 1 under <u, v> = tr(u v*).

use serde_json::{json, Value};

use crate::scalars::{rat, rat_int, GaussianRational, LaurentPoly, Rational};

/// Dense matrix over the Gaussian rationals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<GaussianRational>,
}

impl Mat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![GaussianRational::zero(); rows * cols],
        }
    }

    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Self {
        let mut m = Self::zero(rows, cols);
        m[(i, j)] = GaussianRational::one();
        m
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|c| c.is_zero())
    }

    pub fn adjoint(&self) -> Self {
        let mut out = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out[(j, i)] = self[(i, j)].conj();
            }
        }
        out
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Self::zero(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                if self[(i, k)].is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let term = &self[(i, k)] * &rhs[(k, j)];
                    let e = &mut out[(i, j)];
                    *e += term;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a += b.clone();
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (a, b) in out.data.iter_mut().zip(&rhs.data) {
            *a -= b.clone();
        }
        out
    }

    pub fn scale(&self, c: &GaussianRational) -> Self {
        let mut out = self.clone();
        for a in out.data.iter_mut() {
            *a = &*a * c;
        }
        out
    }

    /// tr(self rhs*), the Hermitian pairing normalizing matrix units to 1.
    pub fn inner(&self, rhs: &Self) -> GaussianRational {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut acc = GaussianRational::zero();
        for (a, b) in self.data.iter().zip(&rhs.data) {
            acc += a * &b.conj();
        }
        acc
    }
}

impl std::ops::Index<(usize, usize)> for Mat {
    type Output = GaussianRational;
    fn index(&self, (i, j): (usize, usize)) -> &GaussianRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Mat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut GaussianRational {
        &mut self.data[i * self.cols + j]
    }
}

/// The rectangular matrix triple of shape (p, q).
#[derive(Debug, Clone, Copy)]
pub struct TripleModel {
    pub p: usize,
    pub q: usize,
}

impl TripleModel {
    pub fn new(p: usize, q: usize) -> Self {
        assert!(p >= 2 && q >= 2, "the quadrangle needs both dimensions >= 2");
        Self { p, q }
    }

    /// D(u, v) z = u v* z + z v* u; conjugate-linear in v.
    pub fn d(&self, u: &Mat, v: &Mat, z: &Mat) -> Mat {
        let vs = v.adjoint();
        u.mul(&vs).mul(z).add(&z.mul(&vs).mul(u))
    }

    pub fn basis(&self) -> Vec<Mat> {
        let mut out = Vec::new();
        for i in 0..self.p {
            for j in 0..self.q {
                out.push(Mat::unit(self.p, self.q, i, j));
            }
        }
        out
    }

    /// The standard quadrangle (e, v1, w, v2) = (E11, E12, E22, E21).
    pub fn quadrangle(&self) -> [Mat; 4] {
        [
            Mat::unit(self.p, self.q, 0, 0),
            Mat::unit(self.p, self.q, 0, 1),
            Mat::unit(self.p, self.q, 1, 1),
            Mat::unit(self.p, self.q, 1, 0),
        ]
    }

    /// Two operators agree iff they agree on the whole basis.
    fn operators_equal(&self, f: &dyn Fn(&Mat) -> Mat, g: &dyn Fn(&Mat) -> Mat) -> bool {
        self.basis().iter().all(|z| f(z) == g(z))
    }
}

/// One named identity with its verdict.
#[derive(Debug, Clone)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
}

#[derive(Debug, Clone)]
pub struct CheckReport {
    pub model: String,
    pub lines: Vec<CheckLine>,
}

impl CheckReport {
    pub fn all_pass(&self) -> bool {
        self.lines.iter().all(|l| l.pass)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "model": self.model,
            "all_pass": self.all_pass(),
            "checks": self.lines.iter().map(|l| json!({
                "name": l.name,
                "pass": l.pass,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Quadrangle conditions, the orthogonality table, and the companion
/// identities, all as exact matrix computations.
pub fn verify_quadrangle(model: TripleModel) -> CheckReport {
    let [e, v1, w, v2] = model.quadrangle();
    let quad = [e.clone(), v1.clone(), w.clone(), v2.clone()];
    let names = ["e", "v1", "w", "v2"];
    let mut lines = Vec::new();
    let mut push = |name: String, pass: bool| lines.push(CheckLine { name, pass });

    for i in 0..4 {
        let u = &quad[i];
        push(
            format!("{} is a tripotent", names[i]),
            model.d(u, u, u) == u.scale(&GaussianRational::from_int(2)),
        );
    }
    for i in 0..4 {
        let (a, b) = (&quad[i], &quad[(i + 1) % 4]);
        push(
            format!("(1) {} lies in the 1-space of {}", names[i], names[(i + 1) % 4]),
            model.d(b, b, a) == *a,
        );
        push(
            format!("(1) {} lies in the 1-space of {}", names[(i + 1) % 4], names[i]),
            model.d(a, a, b) == *b,
        );
    }
    for i in 0..2 {
        let (a, b) = (&quad[i], &quad[i + 2]);
        push(
            format!("(2) {} orthogonal to {}", names[i], names[i + 2]),
            model.d(a, a, b).is_zero() && model.d(b, b, a).is_zero(),
        );
    }
    for i in 0..4 {
        push(
            format!(
                "(3) D({},{}){} = {}",
                names[i],
                names[(i + 1) % 4],
                names[(i + 2) % 4],
                names[(i + 3) % 4]
            ),
            model.d(&quad[i], &quad[(i + 1) % 4], &quad[(i + 2) % 4]) == quad[(i + 3) % 4],
        );
    }

    // Companion identities used throughout the torus computations.
    push(
        "D(e,w) = 0".into(),
        model.operators_equal(&|z| model.d(&e, &w, z), &|z| Mat::zero(z.rows, z.cols)),
    );
    push(
        "D(v1,v2) = 0".into(),
        model.operators_equal(&|z| model.d(&v1, &v2, z), &|z| Mat::zero(z.rows, z.cols)),
    );
    push("D(v1,e)v1 = 0".into(), model.d(&v1, &e, &v1).is_zero());
    push("D(v2,e)v2 = 0".into(), model.d(&v2, &e, &v2).is_zero());
    push("D(e,v1)w = v2".into(), model.d(&e, &v1, &w) == v2);
    push("D(v1,e)v2 = w".into(), model.d(&v1, &e, &v2) == w);
    // Cyclic convention of the swapped quadruple (e, v2, w, v1): recorded.
    push("swapped orientation D(e,v2)w = v1".into(), model.d(&e, &v2, &w) == v1);

    CheckReport {
        model: format!("M({},{})", model.p, model.q),
        lines,
    }
}

/// Operators of the two sl2 pairs attached to the quadrangle.
pub struct Sl2Pair {
    model: TripleModel,
    v: [Mat; 2],
    e: Mat,
}

impl Sl2Pair {
    pub fn new(model: TripleModel) -> Self {
        let [e, v1, _, v2] = model.quadrangle();
        Self {
            model,
            v: [v1, v2],
            e,
        }
    }

    fn e_plus(&self, j: usize, z: &Mat) -> Mat {
        self.model.d(&self.v[j], &self.e, z)
    }

    fn e_minus(&self, j: usize, z: &Mat) -> Mat {
        self.model.d(&self.e, &self.v[j], z)
    }

    fn h(&self, j: usize, z: &Mat) -> Mat {
        self.model
            .d(&self.v[j], &self.v[j], z)
            .sub(&self.model.d(&self.e, &self.e, z))
    }
}

/// Commutation relations of the two sl2 pairs and their strong
/// orthogonality, checked on every basis element.
pub fn verify_sl2_relations(model: TripleModel) -> CheckReport {
    let pair = Sl2Pair::new(model);
    let mut lines = Vec::new();
    let commutator = |f: &dyn Fn(&Mat) -> Mat, g: &dyn Fn(&Mat) -> Mat, z: &Mat| -> Mat {
        f(&g(z)).sub(&g(&f(z)))
    };
    for j in 0..2 {
        let jj = j + 1;
        lines.push(CheckLine {
            name: format!("[H{jj}, E{jj}+] = 2 E{jj}+"),
            pass: model.basis().iter().all(|z| {
                commutator(&|z| pair.h(j, z), &|z| pair.e_plus(j, z), z)
                    == pair.e_plus(j, z).scale(&GaussianRational::from_int(2))
            }),
        });
        lines.push(CheckLine {
            name: format!("[H{jj}, E{jj}-] = -2 E{jj}-"),
            pass: model.basis().iter().all(|z| {
                commutator(&|z| pair.h(j, z), &|z| pair.e_minus(j, z), z)
                    == pair.e_minus(j, z).scale(&GaussianRational::from_int(-2))
            }),
        });
        lines.push(CheckLine {
            name: format!("[E{jj}+, E{jj}-] = H{jj}"),
            pass: model.basis().iter().all(|z| {
                commutator(&|z| pair.e_plus(j, z), &|z| pair.e_minus(j, z), z) == pair.h(j, z)
            }),
        });
    }
    // Strong orthogonality between the two pairs.
    for (name, f, g) in [
        ("[E1+, E2-] = 0", 0usize, 1usize),
        ("[E2+, E1-] = 0", 1, 0),
    ] {
        lines.push(CheckLine {
            name: name.into(),
            pass: model.basis().iter().all(|z| {
                commutator(&|z| pair.e_plus(f, z), &|z| pair.e_minus(g, z), z).is_zero()
            }),
        });
    }
    lines.push(CheckLine {
        name: "[E1+, E2+] = 0".into(),
        pass: model.basis().iter().all(|z| {
            commutator(&|z| pair.e_plus(0, z), &|z| pair.e_plus(1, z), z).is_zero()
        }),
    });
    lines.push(CheckLine {
        name: "[H1, E2+] = 0".into(),
        pass: model.basis().iter().all(|z| {
            commutator(&|z| pair.h(0, z), &|z| pair.e_plus(1, z), z).is_zero()
        }),
    });
    CheckReport {
        model: format!("M({},{})", model.p, model.q),
        lines,
    }
}

/// The orbit of the base tripotent under the two-parameter torus, with
/// exact trigonometric coefficients over the span of the quadrangle.
pub struct TorusOrbit {
    /// Coefficients of (e, v1, v2, w) as two-variable Laurent polynomials.
    pub coeffs: [LaurentPoly; 4],
}

/// Rotation generators restricted to the span of the quadrangle, as exact
/// 4x4 rational matrices in the ordered basis (e, v1, v2, w).
fn torus_generators(model: TripleModel) -> [Vec<Vec<Rational>>; 2] {
    let pair = Sl2Pair::new(model);
    let [e, v1, w, v2] = model.quadrangle();
    let span = [e, v1, v2, w];
    let mut gens = Vec::new();
    for j in 0..2 {
        let mut mat = vec![vec![rat_int(0); 4]; 4];
        for (col, b) in span.iter().enumerate() {
            let img = pair.e_plus(j, b).sub(&pair.e_minus(j, b));
            for (row, c) in span.iter().enumerate() {
                let coeff = img.inner(c);
                mat[row][col] = coeff.expect_real();
            }
            // the span must be invariant: residual after projection is zero
            let mut residual = img;
            for (row, c) in span.iter().enumerate() {
                residual = residual.sub(&c.scale(&GaussianRational::from_rational(
                    mat[row][col].clone(),
                )));
            }
            assert!(residual.is_zero(), "torus generator leaves the quadrangle span");
        }
        gens.push(mat);
    }
    [gens.remove(0), gens.remove(0)]
}

fn mat4_mul(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let mut out = vec![vec![rat_int(0); 4]; 4];
    for i in 0..4 {
        for k in 0..4 {
            if a[i][k] == rat_int(0) {
                continue;
            }
            for j in 0..4 {
                out[i][j] += &a[i][k] * &b[k][j];
            }
        }
    }
    out
}

/// exp(x M) for a generator with M^3 = -M, as I + sin(x) M + (1-cos x) M^2,
/// with entries two-variable Laurent polynomials in the given variable.
fn exp_rotation(m: &[Vec<Rational>], var: usize, sign: i64) -> Vec<Vec<LaurentPoly>> {
    let m2 = mat4_mul(m, m);
    let m3 = mat4_mul(&m2, m);
    for i in 0..4 {
        for j in 0..4 {
            assert_eq!(m3[i][j], -m[i][j].clone(), "generator is not a rotation");
        }
    }
    let sin = LaurentPoly::sin(2, var).scale(&GaussianRational::from_int(sign));
    let one_minus_cos = &LaurentPoly::one(2) - &LaurentPoly::cos(2, var);
    let mut out = vec![vec![LaurentPoly::zero(2); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let mut entry = LaurentPoly::zero(2);
            if i == j {
                entry = LaurentPoly::one(2);
            }
            entry = &entry + &sin.scale(&GaussianRational::from_rational(m[i][j].clone()));
            entry = &entry
                + &one_minus_cos.scale(&GaussianRational::from_rational(m2[i][j].clone()));
            out[i][j] = entry;
        }
    }
    out
}

/// exp(-x1 E1 - x2 E2) e with exact trigonometric coefficients.
pub fn torus_orbit(model: TripleModel) -> TorusOrbit {
    let [m1, m2] = torus_generators(model);
    let r1 = exp_rotation(&m1, 0, -1);
    let r2 = exp_rotation(&m2, 1, -1);
    let full = {
        // matrix product r2 * r1 applied to the basis vector e
        let mut out = vec![LaurentPoly::zero(2); 4];
        for i in 0..4 {
            for k in 0..4 {
                out[i] = &out[i] + &(&r2[i][k] * &r1[k][0]);
            }
        }
        out
    };
    let [a, b, c, d] = [full[0].clone(), full[1].clone(), full[2].clone(), full[3].clone()];
    TorusOrbit {
        coeffs: [a, b, c, d],
    }
}

/// Orbit checks: the closed form, its slices, and isometry of the torus at
/// rational circle points.
pub fn verify_torus_orbit(model: TripleModel) -> CheckReport {
    let orbit = torus_orbit(model);
    let cos = |v: usize| LaurentPoly::cos(2, v);
    let sin = |v: usize| LaurentPoly::sin(2, v);
    let mut lines = Vec::new();

    let expected = [
        &cos(0) * &cos(1),
        (&sin(0) * &cos(1)).scale(&GaussianRational::from_int(-1)),
        (&sin(1) * &cos(0)).scale(&GaussianRational::from_int(-1)),
        &sin(0) * &sin(1),
    ];
    let labels = ["e", "v1", "v2", "w"];
    for (i, label) in labels.iter().enumerate() {
        lines.push(CheckLine {
            name: format!("coefficient of {label} matches the closed form"),
            pass: orbit.coeffs[i] == expected[i],
        });
    }

    // x2 = 0 slice: cos x1 e - sin x1 v1.
    let slice_ok = {
        let at = |p: &LaurentPoly| p.specialize(1, &rat_int(1), &rat_int(0));
        at(&orbit.coeffs[0]) == at(&(&cos(0) * &LaurentPoly::one(2)))
            && at(&orbit.coeffs[1]) == at(&sin(0).scale(&GaussianRational::from_int(-1)))
            && at(&orbit.coeffs[2]).is_zero()
            && at(&orbit.coeffs[3]).is_zero()
    };
    lines.push(CheckLine {
        name: "x2 = 0 slice collapses to the one-parameter orbit".into(),
        pass: slice_ok,
    });

    // (0,0) gives back e.
    let at_origin = |p: &LaurentPoly| {
        p.specialize(0, &rat_int(1), &rat_int(0))
            .specialize(1, &rat_int(1), &rat_int(0))
            .eval_identity()
    };
    lines.push(CheckLine {
        name: "(x1,x2) = (0,0) returns the base tripotent".into(),
        pass: at_origin(&orbit.coeffs[0]) == GaussianRational::one()
            && orbit.coeffs[1..].iter().all(|p| at_origin(p).is_zero()),
    });

    // pairing against e is cos x1 cos x2
    lines.push(CheckLine {
        name: "<orbit, e> = cos x1 cos x2".into(),
        pass: orbit.coeffs[0] == expected[0],
    });

    // Isometry at Pythagorean specializations: the full rotation matrix is
    // orthogonal, exactly, at rational circle points.
    let [m1, m2] = torus_generators(model);
    let r1 = exp_rotation(&m1, 0, 1);
    let r2 = exp_rotation(&m2, 1, 1);
    let mut iso_ok = true;
    for (c1, s1, c2, s2) in [
        (rat(3, 5), rat(4, 5), rat(5, 13), rat(12, 13)),
        (rat(-3, 5), rat(4, 5), rat(8, 17), rat(-15, 17)),
    ] {
        let eval = |p: &LaurentPoly| -> Rational {
            p.specialize(0, &c1, &s1)
                .specialize(1, &c2, &s2)
                .eval_identity()
                .expect_real()
        };
        let mut r = vec![vec![rat_int(0); 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = rat_int(0);
                for k in 0..4 {
                    acc += eval(&r2[i][k]) * eval(&r1[k][j]);
                }
                r[i][j] = acc;
            }
        }
        // R^t R = I
        for i in 0..4 {
            for j in 0..4 {
                let mut acc = rat_int(0);
                for k in 0..4 {
                    acc += &r[k][i] * &r[k][j];
                }
                if acc != rat_int(if i == j { 1 } else { 0 }) {
                    iso_ok = false;
                }
            }
        }
    }
    lines.push(CheckLine {
        name: "torus action preserves the pairing at rational circle points".into(),
        pass: iso_ok,
    });

    CheckReport {
        model: format!("M({},{})", model.p, model.q),
        lines,
    }
}

/// Peirce components of an element with respect to the base tripotent.
pub fn peirce_components(model: TripleModel, u: &Mat) -> [Mat; 3] {
    let [e, ..] = model.quadrangle();
    let d = |z: &Mat| model.d(&e, &e, z);
    let du = d(u);
    let ddu = d(&du);
    // Eigenprojections of D(e,e) with spectrum {0,1,2}:
    // P0 = (D-1)(D-2)/2, P1 = -D(D-2), P2 = D(D-1)/2.
    let half = GaussianRational::from_rational(rat(1, 2));
    let p0 = ddu
        .sub(&du.scale(&GaussianRational::from_int(3)))
        .add(&u.scale(&GaussianRational::from_int(2)))
        .scale(&half);
    let p1 = du.scale(&GaussianRational::from_int(2)).sub(&ddu);
    let p2 = ddu.sub(&du).scale(&half);
    [p0, p1, p2]
}

/// Peirce bookkeeping for one element: the projections sum back to it and
/// land in the right eigenspaces.
pub fn verify_peirce(model: TripleModel, u: &Mat) -> CheckReport {
    let [e, ..] = model.quadrangle();
    let [p0, p1, p2] = peirce_components(model, u);
    let mut lines = Vec::new();
    lines.push(CheckLine {
        name: "components sum to the element".into(),
        pass: p0.add(&p1).add(&p2) == *u,
    });
    for (j, pj) in [(0i64, &p0), (1, &p1), (2, &p2)] {
        let img = model.d(&e, &e, pj);
        lines.push(CheckLine {
            name: format!("component {j} has eigenvalue {j}"),
            pass: img == pj.scale(&GaussianRational::from_int(j)),
        });
    }
    lines.push(CheckLine {
        name: "rank-one part is the pairing against e".into(),
        pass: p2 == e.scale(&u.inner(&e)),
    });
    CheckReport {
        model: format!("M({},{})", model.p, model.q),
        lines,
    }
}

/// JSON view of the torus orbit: the exact trigonometric coefficient of
/// each quadrangle member, terms as [[exponents], re, im].
pub fn torus_orbit_json(model: TripleModel) -> Value {
    let orbit = torus_orbit(model);
    let labels = ["e", "v1", "v2", "w"];
    let mut map = serde_json::Map::new();
    for (i, label) in labels.iter().enumerate() {
        map.insert(label.to_string(), orbit.coeffs[i].to_json());
    }
    Value::Object(map)
}

/// Run the full battery on one model shape.
pub fn verify_model(p: usize, q: usize) -> Vec<CheckReport> {
    let model = TripleModel::new(p, q);
    let mut reports = vec![
        verify_quadrangle(model),
        verify_sl2_relations(model),
        verify_torus_orbit(model),
    ];
    let [e, v1, _, _] = model.quadrangle();
    let mut probe = e.scale(&GaussianRational::from_int(1));
    probe = probe.add(&v1.scale(&GaussianRational::from_int(2)));
    probe = probe.add(&Mat::unit(p, q, 1, 1).scale(&GaussianRational::from_int(3)));
    reports.push(verify_peirce(model, &probe));
    reports
}
