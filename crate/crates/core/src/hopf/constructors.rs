use std::sync::Arc;

use super::{tensor_add, HopfAlgebra, HopfElement, HopfTables, Tensor};
use crate::error::{Error, Result};
use crate::scalar::CycScalar;

/// Group algebra from a multiplication table over labelled elements.
pub fn group_algebra(name: &str, labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Arc<HopfAlgebra>> {
    let n = labels.len();
    if n == 0 || table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
        return Err(Error::InvalidGroupTable("table must be square over the labels".into()));
    }
    let e = (0..n)
        .find(|&i| (0..n).all(|j| table[i][j] == j && table[j][i] == j))
        .ok_or_else(|| Error::InvalidGroupTable("no identity element".into()))?;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(Error::InvalidGroupTable(format!(
                        "not associative on ({}, {}, {})",
                        labels[a], labels[b], labels[c]
                    )));
                }
            }
        }
    }
    let mut inv = vec![0; n];
    for a in 0..n {
        inv[a] = (0..n)
            .find(|&b| table[a][b] == e)
            .ok_or_else(|| Error::InvalidGroupTable(format!("{} has no inverse", labels[a])))?;
    }
    let basis = |i: usize| HopfElement::basis(n, i);
    let t = HopfTables {
        labels,
        mult: (0..n).map(|a| (0..n).map(|b| basis(table[a][b])).collect()).collect(),
        unit: basis(e),
        comult: (0..n)
            .map(|a| {
                let mut t = Tensor::new();
                t.insert((a, a), CycScalar::one());
                t
            })
            .collect(),
        counit: vec![CycScalar::one(); n],
        antipode: (0..n).map(|a| basis(inv[a])).collect(),
    };
    let h = HopfAlgebra::from_tables(name, t)?;
    let mut h = Arc::try_unwrap(h).expect("fresh Arc");
    h.group_table = Some(table);
    Ok(Arc::new(h))
}

/// k C_m with basis 1, g, g2, ..., g{m-1}.
pub fn cyclic(m: usize) -> Result<Arc<HopfAlgebra>> {
    if m == 0 {
        return Err(Error::InvalidParameter("m must be at least 1".into()));
    }
    let labels = (0..m)
        .map(|i| match i {
            0 => "1".to_string(),
            1 => "g".to_string(),
            _ => format!("g{i}"),
        })
        .collect();
    let table = (0..m).map(|a| (0..m).map(|b| (a + b) % m).collect()).collect();
    group_algebra(&format!("cyclic({m})"), labels, table)
}

/// Group algebra of the dihedral group <x, y | x^2 = y^2 = (xy)^n = 1> of order 2n.
/// Basis elements are labelled by shortest words, e.g. 1, x, y, xy, yx, xyx.
pub fn dihedral(n: usize) -> Result<Arc<HopfAlgebra>> {
    if n < 2 {
        return Err(Error::InvalidParameter("dihedral needs n >= 2".into()));
    }
    // elements r^k s^e with r = xy; x = s, y = r^{-1} s
    let mul = |(k1, e1): (usize, usize), (k2, e2): (usize, usize)| -> (usize, usize) {
        let k = if e1 == 0 { k1 + k2 } else { k1 + n - k2 };
        (k % n, (e1 + e2) % 2)
    };
    let x = (0, 1);
    let y = (n - 1, 1);
    let mut elems = vec![(0usize, 0usize)];
    let mut labels = vec!["1".to_string()];
    let mut words = vec![String::new()];
    let mut i = 0;
    while i < elems.len() {
        for (g, name) in [(x, "x"), (y, "y")] {
            let z = mul(elems[i], g);
            if !elems.contains(&z) {
                elems.push(z);
                let w = format!("{}{}", words[i], name);
                labels.push(w.clone());
                words.push(w);
            }
        }
        i += 1;
    }
    let idx = |z: (usize, usize)| elems.iter().position(|&w| w == z).unwrap();
    let table = elems
        .iter()
        .map(|&a| elems.iter().map(|&b| idx(mul(a, b))).collect())
        .collect();
    group_algebra(&format!("dihedral({n})"), labels, table)
}

/// The dual Hopf algebra, with basis e_<label>. Dualizing twice returns the original.
pub fn dual(h: &Arc<HopfAlgebra>) -> Arc<HopfAlgebra> {
    if let Some(orig) = &h.dual_of {
        return orig.clone();
    }
    let d = h.dim();
    // e^a e^b = sum_c Delta_c[a, b] e^c
    let mut mult = vec![vec![HopfElement::zero(d); d]; d];
    for c in 0..d {
        for (&(a, b), x) in &h.comult[c] {
            mult[a][b].0[c] += x;
        }
    }
    let mut comult = vec![Tensor::new(); d];
    for a in 0..d {
        for b in 0..d {
            for (c, x) in &h.mult[a][b] {
                tensor_add(&mut comult[*c], (a, b), x.clone());
            }
        }
    }
    let unit = HopfElement(h.counit.clone());
    let counit = h.unit.0.clone();
    let mut antipode = vec![HopfElement::zero(d); d];
    for b in 0..d {
        for (c, x) in h.antipode[b].0.iter().enumerate() {
            antipode[c].0[b] += x;
        }
    }
    let t = HopfTables {
        labels: h.labels.iter().map(|l| format!("e_{l}")).collect(),
        mult,
        unit,
        comult,
        counit,
        antipode,
    };
    let k = HopfAlgebra::from_tables(&format!("dual({})", h.name), t).expect("dual tables are consistent");
    let mut k = Arc::try_unwrap(k).expect("fresh Arc");
    k.dual_of = Some(h.clone());
    Arc::new(k)
}

/// Builds a Hopf algebra whose basis elements are products of generators, with
/// coalgebra data extended multiplicatively from the generators.
fn from_generators(
    name: &str,
    labels: Vec<String>,
    mult: Vec<Vec<HopfElement>>,
    words: Vec<Vec<usize>>,
    gen_delta: Vec<Tensor>,
    gen_eps: Vec<CycScalar>,
    gen_s: Vec<HopfElement>,
) -> Result<Arc<HopfAlgebra>> {
    let d = labels.len();
    let mut unit = HopfElement::zero(d);
    unit.0[0] = CycScalar::one();
    let raw = HopfTables {
        labels: labels.clone(),
        mult: mult.clone(),
        unit: unit.clone(),
        comult: vec![Tensor::new(); d],
        counit: vec![CycScalar::zero(); d],
        antipode: vec![HopfElement::zero(d); d],
    };
    let alg = HopfAlgebra::from_tables(name, raw)?;
    let mut comult = Vec::new();
    let mut counit = Vec::new();
    let mut antipode = Vec::new();
    for w in &words {
        let mut t = Tensor::new();
        t.insert((0, 0), CycScalar::one());
        let mut e = CycScalar::one();
        let mut s = unit.clone();
        for &g in w {
            t = alg.tensor_mul(&t, &gen_delta[g]);
            e = &e * &gen_eps[g];
            s = alg.mul(&gen_s[g], &s);
        }
        comult.push(t);
        counit.push(e);
        antipode.push(s);
    }
    HopfAlgebra::from_tables(
        name,
        HopfTables {
            labels,
            mult,
            unit,
            comult,
            counit,
            antipode,
        },
    )
}

/// Sweedler's algebra k<g, f>/(fg + gf, g^2 - 1, f^2) with basis 1, g, f, gf.
pub fn sweedler4() -> Arc<HopfAlgebra> {
    // basis index = a + 2b for g^a f^b
    let labels: Vec<String> = ["1", "g", "f", "gf"].iter().map(|s| s.to_string()).collect();
    let mut mult = vec![vec![HopfElement::zero(4); 4]; 4];
    for i in 0..4 {
        for j in 0..4 {
            let (a, b, c, d) = (i % 2, i / 2, j % 2, j / 2);
            if b + d >= 2 {
                continue;
            }
            let sign = if b * c == 1 { -1 } else { 1 };
            mult[i][j].0[(a + c) % 2 + 2 * (b + d)] = CycScalar::from_int(sign);
        }
    }
    let t = |pairs: &[((usize, usize), i64)]| -> Tensor {
        pairs.iter().map(|&(k, c)| (k, CycScalar::from_int(c))).collect()
    };
    let e = |i: usize, c: i64| {
        let mut x = HopfElement::zero(4);
        x.0[i] = CycScalar::from_int(c);
        x
    };
    from_generators(
        "sweedler4",
        labels,
        mult,
        vec![vec![], vec![0], vec![1], vec![0, 1]],
        vec![t(&[((1, 1), 1)]), t(&[((0, 2), 1), ((2, 1), 1)])],
        vec![CycScalar::one(), CycScalar::zero()],
        // S(g) = g, S(f) = -fg = gf
        vec![e(1, 1), e(3, 1)],
    )
    .expect("sweedler tables")
}

/// The 8-dimensional Kac-Palyutkin algebra H_8 with basis
/// 1, x, y, xy, z, xz, yz, xyz.
pub fn kac_palyutkin8() -> Arc<HopfAlgebra> {
    // basis index = a + 2b + 4c for x^a y^b z^c
    let idx = |a: usize, b: usize, c: usize| (a % 2) + 2 * (b % 2) + 4 * c;
    let labels: Vec<String> = ["1", "x", "y", "xy", "z", "xz", "yz", "xyz"]
        .iter()
        .map(|s| s.to_string())
        .collect();
    let half = CycScalar::frac(1, 2);
    let mut mult = vec![vec![HopfElement::zero(8); 8]; 8];
    for i in 0..8 {
        for j in 0..8 {
            let (a, b, c) = (i % 2, (i / 2) % 2, i / 4);
            let (d, e, f) = (j % 2, (j / 2) % 2, j / 4);
            // z x = y z and z y = x z
            let (d2, e2) = if c == 1 { (e, d) } else { (d, e) };
            let (xa, yb) = ((a + d2) % 2, (b + e2) % 2);
            if c + f < 2 {
                mult[i][j].0[idx(xa, yb, c + f)] = CycScalar::one();
            } else {
                // z^2 = (1 + x + y - xy)/2
                for (dx, dy, s) in [(0, 0, 1), (1, 0, 1), (0, 1, 1), (1, 1, -1)] {
                    mult[i][j].0[idx(xa + dx, yb + dy, 0)] += &half.scale(&crate::scalar::rat(s, 1));
                }
            }
        }
    }
    let g = |k: usize| -> Tensor { [((k, k), CycScalar::one())].into_iter().collect() };
    // Delta(z) = 1/2 (1#1 + 1#x + y#1 - y#x)(z#z)
    let mut dz = Tensor::new();
    for (l, r, s) in [(4, 4, 1), (4, 5, 1), (6, 4, 1), (6, 5, -1)] {
        dz.insert((l, r), CycScalar::frac(s, 2));
    }
    let basis = |i| HopfElement::basis(8, i);
    from_generators(
        "kac_palyutkin8",
        labels,
        mult,
        vec![
            vec![],
            vec![0],
            vec![1],
            vec![0, 1],
            vec![2],
            vec![0, 2],
            vec![1, 2],
            vec![0, 1, 2],
        ],
        vec![g(1), g(2), dz],
        vec![CycScalar::one(); 3],
        vec![basis(1), basis(2), basis(4)],
    )
    .expect("H8 tables")
}
