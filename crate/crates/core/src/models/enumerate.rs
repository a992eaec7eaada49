//! Enumeration of all finite models of a given size, up to isomorphism.
//!
//! Lattices are generated as naturally labeled orders (a < b implies the
//! index of a is smaller), multiplications by backtracking under the
//! integrality and monotonicity constraints, and `!` as an interior operator
//! given by its set of fixed points.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::{lattice_ops, residual, Algebra, Elem};
use crate::prover::Theory;

/// Largest carrier size the enumerator accepts.
pub const MAX_SIZE: usize = 6;

/// All algebras of exactly `n` elements satisfying `th`, up to isomorphism,
/// in a fixed order.
pub fn enumerate_algebras(n: usize, th: Theory) -> Vec<Algebra> {
    all_ill(n).iter().filter(|a| satisfies_extra(a, th)).cloned().collect()
}

fn satisfies_extra(a: &Algebra, th: Theory) -> bool {
    (!th.pro || a.elems().all(|x| a.bang(x) == x)) && (!th.dne || a.elems().all(|x| a.neg(a.neg(x)) == x))
}

fn all_ill(n: usize) -> Arc<Vec<Algebra>> {
    assert!((1..=MAX_SIZE).contains(&n), "carrier size {n} outside 1..={MAX_SIZE}");
    static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Vec<Algebra>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&n) {
        return v.clone();
    }
    let v = Arc::new(generate(n));
    cache.lock().unwrap().insert(n, v.clone());
    v
}

fn generate(n: usize) -> Vec<Algebra> {
    let mut out = Vec::new();
    for le in lattices(n) {
        let Some((meet, join)) = lattice_ops(n, &le) else { continue };
        let autos = automorphisms(n, &le);
        for tensor in tensors(n, &le, &meet, &join, &autos) {
            let Some(imp) = residual(n, &le, &join, &tensor) else { continue };
            let fixing: Vec<&Vec<usize>> = autos.iter().filter(|p| preserves(n, p, &tensor)).collect();
            for bang in bangs(n, &le, &meet, &tensor, &fixing) {
                let a = Algebra::from_parts(n, le.clone(), meet.clone(), join.clone(), tensor.clone(), imp.clone(), bang);
                debug_assert!(a.check_laws(Theory::ILL).is_ok());
                out.push(a);
            }
        }
    }
    out
}

/// Permutations of `0..n` fixing the bottom and top.
fn middle_perms(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    fn go(p: &mut Vec<usize>, k: usize, hi: usize, out: &mut Vec<Vec<usize>>) {
        if k + 1 >= hi {
            out.push(p.clone());
            return;
        }
        for i in k..hi {
            p.swap(k, i);
            go(p, k + 1, hi, out);
            p.swap(k, i);
        }
    }
    if n >= 3 {
        go(&mut p, 1, n - 1, &mut out);
    } else {
        out.push(p);
    }
    out
}

fn relabel<T: Copy>(n: usize, p: &[usize], t: &[T]) -> Vec<T> {
    let mut r = t.to_vec();
    for a in 0..n {
        for b in 0..n {
            r[p[a] * n + p[b]] = t[a * n + b];
        }
    }
    r
}

/// Bounded lattices on `0..n` with natural labeling, one per isomorphism class.
fn lattices(n: usize) -> Vec<Vec<bool>> {
    if n == 1 {
        return vec![vec![true]];
    }
    let mids: Vec<usize> = (1..n - 1).collect();
    let pairs: Vec<(usize, usize)> = mids.iter().flat_map(|&i| mids.iter().filter(move |&&j| j > i).map(move |&j| (i, j))).collect();
    let perms = middle_perms(n);
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let mut le = vec![false; n * n];
        for a in 0..n {
            le[a * n + a] = true;
            le[a] = true;
            le[a * n + n - 1] = true;
        }
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 {
                le[i * n + j] = true;
            }
        }
        let transitive = (0..n).all(|a| (0..n).all(|b| !le[a * n + b] || (0..n).all(|c| !le[b * n + c] || le[a * n + c])));
        if !transitive || lattice_ops(n, &le).is_none() {
            continue;
        }
        let canonical = perms.iter().all(|p| {
            let r = relabel(n, p, &le);
            let natural = (0..n).all(|a| (0..n).all(|b| !r[a * n + b] || a <= b));
            !natural || key(&le) <= key(&r)
        });
        if canonical {
            out.push(le);
        }
    }
    out
}

fn key(le: &[bool]) -> Vec<u8> {
    le.iter().map(|&b| b as u8).collect()
}

fn automorphisms(n: usize, le: &[bool]) -> Vec<Vec<usize>> {
    middle_perms(n).into_iter().filter(|p| relabel(n, p, le) == le).collect()
}

fn preserves(n: usize, p: &[usize], tensor: &[Elem]) -> bool {
    (0..n).all(|a| (0..n).all(|b| tensor[p[a] * n + p[b]] as usize == p[tensor[a * n + b] as usize]))
}

/// Commutative, associative, integral, join-preserving multiplications with
/// the top as unit, one per orbit of the lattice automorphisms.
fn tensors(n: usize, le: &[bool], meet: &[Elem], join: &[Elem], autos: &[Vec<usize>]) -> Vec<Vec<Elem>> {
    let top = n - 1;
    let mut t = vec![0 as Elem; n * n];
    for a in 0..n {
        t[top * n + a] = a as Elem;
        t[a * n + top] = a as Elem;
    }
    let cells: Vec<(usize, usize)> = (1..top).flat_map(|i| (i..top).map(move |j| (i, j))).collect();
    let mut out = Vec::new();
    fill(n, le, meet, join, &cells, 0, &mut t, autos, &mut out);
    out
}

#[allow(clippy::too_many_arguments)]
fn fill(n: usize, le: &[bool], meet: &[Elem], join: &[Elem], cells: &[(usize, usize)], k: usize, t: &mut Vec<Elem>, autos: &[Vec<usize>], out: &mut Vec<Vec<Elem>>) {
    let l = |a: usize, b: usize| le[a * n + b];
    if k == cells.len() {
        let assoc = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[a * n + t[b * n + c] as usize] == t[t[a * n + b] as usize * n + c])));
        let joins = (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| t[a * n + join[b * n + c] as usize] == join[t[a * n + b] as usize * n + t[a * n + c] as usize])));
        let minimal = autos.iter().all(|p| t.as_slice() <= relabel(n, p, t).as_slice());
        if assoc && joins && minimal {
            out.push(t.clone());
        }
        return;
    }
    let (i, j) = cells[k];
    let bound = meet[i * n + j] as usize;
    for v in 0..n {
        if !l(v, bound) {
            continue;
        }
        // Monotonicity against the cells already fixed, including the border.
        let ok = (0..k).map(|m| cells[m]).chain((0..n).flat_map(|a| [(a, 0), (a, n - 1)])).all(|(a, b)| {
            let w = t[a * n + b] as usize;
            let below = (l(a, i) && l(b, j)) || (l(a, j) && l(b, i));
            let above = (l(i, a) && l(j, b)) || (l(j, a) && l(i, b));
            (!below || l(w, v)) && (!above || l(v, w))
        });
        if !ok {
            continue;
        }
        t[i * n + j] = v as Elem;
        t[j * n + i] = v as Elem;
        fill(n, le, meet, join, cells, k + 1, t, autos, out);
    }
    t[i * n + j] = 0;
    t[j * n + i] = 0;
}

/// Interior operators `!a = max{s in S | s <= a}` for fixed-point sets `S`
/// containing 0 and 1, satisfying `!a * !b = !(a & b)`.
fn bangs(n: usize, le: &[bool], meet: &[Elem], tensor: &[Elem], autos: &[&Vec<usize>]) -> Vec<Vec<Elem>> {
    let l = |a: usize, b: usize| le[a * n + b];
    let mids = n.saturating_sub(2);
    let mut out: Vec<Vec<Elem>> = Vec::new();
    for mask in 0u32..(1 << mids) {
        let in_s = |a: usize| a == 0 || a == n - 1 || (a < n - 1 && mask >> (a - 1) & 1 == 1);
        let mut bang = Vec::with_capacity(n);
        for a in 0..n {
            let below: Vec<usize> = (0..n).filter(|&s| in_s(s) && l(s, a)).collect();
            match below.iter().find(|&&s| below.iter().all(|&t| l(t, s))) {
                Some(&s) => bang.push(s as Elem),
                None => break,
            }
        }
        if bang.len() < n {
            continue;
        }
        let laws = (0..n).all(|a| {
            let ba = bang[a] as usize;
            tensor[ba * n + ba] as usize == ba && (0..n).all(|b| tensor[ba * n + bang[b] as usize] == bang[meet[a * n + b] as usize])
        });
        if !laws {
            continue;
        }
        let image = |p: &Vec<usize>| {
            let mut r = vec![0; n];
            for a in 0..n {
                r[p[a]] = p[bang[a] as usize] as Elem;
            }
            r
        };
        if autos.iter().all(|p| bang <= image(p)) {
            out.push(bang);
        }
    }
    out
}
