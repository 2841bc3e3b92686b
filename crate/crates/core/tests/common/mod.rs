//! Brute-force oracles over plain image vectors, independent of the
//! library's permutation and search code.

#![allow(dead_code)]

use std::collections::BTreeSet;

pub type P = Vec<usize>;

pub fn all_perms(n: usize) -> Vec<P> {
    fn go(prefix: &mut P, used: &mut [bool], out: &mut Vec<P>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// `(b ∘ a)(i) = b(a(i))`
pub fn then(a: &P, b: &P) -> P {
    a.iter().map(|&i| b[i]).collect()
}

pub fn inv(a: &P) -> P {
    let mut r = vec![0; a.len()];
    for (i, &j) in a.iter().enumerate() {
        r[j] = i;
    }
    r
}

pub fn ctype(a: &P) -> Vec<usize> {
    let mut seen = vec![false; a.len()];
    let mut t = Vec::new();
    for s in 0..a.len() {
        let (mut i, mut len) = (s, 0);
        while !seen[i] {
            seen[i] = true;
            i = a[i];
            len += 1;
        }
        if len > 0 {
            t.push(len);
        }
    }
    t.sort_unstable_by(|x, y| y.cmp(x));
    t
}

pub fn transitive(tuple: &[P]) -> bool {
    let n = tuple[0].len();
    let mut seen = vec![false; n];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for p in tuple {
            if !seen[p[i]] {
                seen[p[i]] = true;
                stack.push(p[i]);
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Conjugacy classes of transitive tuples with the given cycle types and
/// `t_last ∘ ... ∘ t_0 = id`, by exhaustion over `S_n`.
pub fn brute_force_classes(n: usize, types: &[Vec<usize>]) -> usize {
    brute_force_representatives(n, types).len()
}

/// One tuple per conjugacy class, see [`brute_force_classes`].
pub fn brute_force_representatives(n: usize, types: &[Vec<usize>]) -> Vec<Vec<P>> {
    let perms = all_perms(n);
    let pools: Vec<Vec<&P>> = types[..types.len() - 1]
        .iter()
        .map(|t| perms.iter().filter(|p| ctype(p) == *t).collect())
        .collect();
    let mut tuples: BTreeSet<Vec<P>> = BTreeSet::new();
    let mut idx = vec![0usize; pools.len()];
    'outer: loop {
        let head: Vec<P> = idx.iter().zip(&pools).map(|(&i, pool)| pool[i].clone()).collect();
        let prod = head.iter().fold((0..n).collect::<P>(), |acc, p| then(&acc, p));
        let last = inv(&prod);
        if ctype(&last) == *types.last().unwrap() {
            let mut full = head;
            full.push(last);
            if transitive(&full) {
                tuples.insert(full);
            }
        }
        let mut k = 0;
        loop {
            if k == idx.len() {
                break 'outer;
            }
            idx[k] += 1;
            if idx[k] < pools[k].len() {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
    // count orbits under simultaneous conjugation
    let mut reps = Vec::new();
    let mut left = tuples;
    while let Some(t) = left.iter().next().cloned() {
        for c in &perms {
            let ci = inv(c);
            let conj: Vec<P> = t.iter().map(|p| then(&then(&ci, p), c)).collect();
            left.remove(&conj);
        }
        reps.push(t);
    }
    reps
}


/// Parses 1-based cycle notation such as `"(13)(24)"` into images.
pub fn parse(s: &str, n: usize) -> P {
    let mut p: P = (0..n).collect();
    for cyc in s.split(')').filter(|c| c.contains('(')) {
        let pts: Vec<usize> = cyc.trim_start_matches('(').chars().map(|c| c.to_digit(10).unwrap() as usize - 1).collect();
        for w in 0..pts.len() {
            p[pts[w]] = pts[(w + 1) % pts.len()];
        }
    }
    p
}

/// `(degree, genus)` of every component of the fibre product of two covers
/// given by tuples over the same list of branch points.
pub fn fibre_product_components(a: &[P], g: &[P]) -> Vec<(usize, u64)> {
    let (d, n) = (a[0].len(), g[0].len());
    let pairs: Vec<P> = a
        .iter()
        .zip(g)
        .map(|(s, t)| (0..d * n).map(|p| s[p / n] * n + t[p % n]).collect())
        .collect();
    let mut comp = vec![usize::MAX; d * n];
    let mut out = Vec::new();
    for start in 0..d * n {
        if comp[start] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![start];
        comp[start] = id;
        let mut k = 0;
        while k < members.len() {
            for p in &pairs {
                let j = p[members[k]];
                if comp[j] == usize::MAX {
                    comp[j] = id;
                    members.push(j);
                }
            }
            k += 1;
        }
        // Σ(e - 1) over the component = Σ_marks (size - #cycles inside it)
        let size = members.len();
        let mut ram = 0;
        for p in &pairs {
            let mut seen = vec![false; d * n];
            let mut cycles = 0;
            for &m in &members {
                if !seen[m] {
                    cycles += 1;
                    let mut i = m;
                    while !seen[i] {
                        seen[i] = true;
                        i = p[i];
                    }
                }
            }
            ram += size - cycles;
        }
        let twice = ram as i64 - 2 * size as i64 + 2;
        assert!(twice >= 0 && twice % 2 == 0);
        out.push((size, (twice / 2) as u64));
    }
    out
}
