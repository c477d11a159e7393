//! Independent brute-force oracles. They share no search code with the
//! library: permutations are plain vectors, every assignment is tried, and
//! isomorphism classes are found by marking whole orbits of the relabeling
//! group.

#![allow(dead_code)]

use std::collections::HashSet;

use devissage_core::devissage::Configuration;
use devissage_core::group::{GenId, Presentation, Word};

pub type P = Vec<usize>;

pub fn all_perms(d: usize) -> Vec<P> {
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
    go(&mut Vec::new(), &mut vec![false; d], &mut out);
    out
}

/// `p ∘ q`.
pub fn compose(p: &P, q: &P) -> P {
    q.iter().map(|&i| p[i]).collect()
}

pub fn inverse(p: &P) -> P {
    let mut inv = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        inv[j] = i;
    }
    inv
}

fn identity(d: usize) -> P {
    (0..d).collect()
}

/// Value of a word when each generator acts by `image(g)`; a word
/// `l₁ … lₙ` acts as `l₁ ∘ … ∘ lₙ`.
pub fn eval(d: usize, w: &Word, image: &dyn Fn(&GenId) -> P) -> P {
    let mut acc = identity(d);
    for l in w.letters() {
        let p = image(&l.gen);
        let p = if l.inverse { inverse(&p) } else { p };
        acc = compose(&acc, &p);
    }
    acc
}

fn cartesian(choices: &[Vec<P>]) -> Vec<Vec<P>> {
    let mut out: Vec<Vec<P>> = vec![vec![]];
    for c in choices {
        let mut next = Vec::with_capacity(out.len() * c.len());
        for prefix in &out {
            for x in c {
                let mut v = prefix.clone();
                v.push(x.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// All actions of `p` on `{0..d-1}` as image lists in generator order.
pub fn all_actions(p: &Presentation, d: usize) -> Vec<Vec<P>> {
    let gens = p.generators();
    let perms = all_perms(d);
    cartesian(&vec![perms; gens.len()])
        .into_iter()
        .filter(|imgs| {
            let image = |g: &GenId| imgs[gens.iter().position(|x| x == g).unwrap()].clone();
            p.relations().iter().all(|r| eval(d, r, &image) == identity(d))
        })
        .collect()
}

fn transitive(d: usize, imgs: &[P]) -> bool {
    let mut seen = vec![false; d];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(x) = stack.pop() {
        for p in imgs {
            for y in [p[x], inverse(p)[x]] {
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
    }
    seen.iter().all(|&s| s)
}

/// Transitive actions of `p` of degree `d` up to relabeling.
pub fn oracle_transitive_reps(p: &Presentation, d: usize) -> u64 {
    if d == 0 {
        return 0;
    }
    let relabelings = all_perms(d);
    let mut marked: HashSet<Vec<P>> = HashSet::new();
    let mut count = 0;
    for imgs in all_actions(p, d) {
        if marked.contains(&imgs) {
            continue;
        }
        if transitive(d, &imgs) {
            count += 1;
        }
        for s in &relabelings {
            let si = inverse(s);
            marked.insert(imgs.iter().map(|x| compose(&compose(s, x), &si)).collect());
        }
    }
    count
}

/// Connected covers of degree `d` up to isomorphism. A candidate is one
/// action per node plus one bijection per edge; fibers are relabeled
/// independently.
pub fn oracle_cover_count(c: &Configuration, d: usize) -> u64 {
    if d == 0 {
        return 0;
    }
    let nodes: Vec<_> = c.components.iter().chain(&c.singulars).collect();
    let n = nodes.len();
    let mut choices: Vec<Vec<Vec<P>>> = nodes.iter().map(|x| all_actions(&x.group, d)).collect();
    let perms = all_perms(d);
    for _ in &c.edges {
        choices.push(perms.iter().map(|p| vec![p.clone()]).collect());
    }
    let fiber = |id: &str| nodes.iter().position(|x| x.id == id).unwrap();
    let edge_ends: Vec<(usize, usize)> = c.edges.iter().map(|e| (fiber(&e.component), fiber(&e.singular))).collect();

    let valid = |t: &[Vec<P>]| {
        c.edges.iter().enumerate().all(|(k, e)| {
            let lambda = &t[n + k][0];
            let (x, z) = edge_ends[k];
            let act = |f: usize| {
                let gens = nodes[f].group.generators().to_vec();
                let imgs = t[f].clone();
                move |g: &GenId| imgs[gens.iter().position(|y| y == g).unwrap()].clone()
            };
            let (ax, az) = (act(x), act(z));
            e.group.generators().iter().all(|a| {
                let psi = eval(d, e.psi.image(a).unwrap_or(&Word::identity()), &ax);
                let phi = eval(d, e.phi.image(a).unwrap_or(&Word::identity()), &az);
                compose(&phi, lambda) == compose(lambda, &psi)
            })
        })
    };
    let connected = |t: &[Vec<P>]| {
        let mut seen = vec![vec![false; d]; n];
        let mut stack = vec![(0, 0)];
        seen[0][0] = true;
        while let Some((f, x)) = stack.pop() {
            let mut next = Vec::new();
            for p in &t[f] {
                next.push((f, p[x]));
                next.push((f, inverse(p)[x]));
            }
            for (k, &(ex, ez)) in edge_ends.iter().enumerate() {
                let lambda = &t[n + k][0];
                if ex == f {
                    next.push((ez, lambda[x]));
                }
                if ez == f {
                    next.push((ex, inverse(lambda)[x]));
                }
            }
            for (g, y) in next {
                if !seen[g][y] {
                    seen[g][y] = true;
                    stack.push((g, y));
                }
            }
        }
        seen.iter().all(|row| row.iter().all(|&s| s))
    };
    let relabel = |t: &[Vec<P>], sigma: &[P]| -> Vec<Vec<P>> {
        let mut out = Vec::with_capacity(t.len());
        for f in 0..n {
            let si = inverse(&sigma[f]);
            out.push(t[f].iter().map(|p| compose(&compose(&sigma[f], p), &si)).collect());
        }
        for (k, &(x, z)) in edge_ends.iter().enumerate() {
            let lambda = &t[n + k][0];
            out.push(vec![compose(&compose(&sigma[z], lambda), &inverse(&sigma[x]))]);
        }
        out
    };
    let sigmas = cartesian(&vec![perms.clone(); n]);
    let mut marked: HashSet<Vec<Vec<P>>> = HashSet::new();
    let mut count = 0;
    for t in cartesian_nested(&choices) {
        if marked.contains(&t) || !valid(&t) {
            continue;
        }
        if connected(&t) {
            count += 1;
        }
        for s in &sigmas {
            marked.insert(relabel(&t, s));
        }
    }
    count
}

fn cartesian_nested(choices: &[Vec<Vec<P>>]) -> Vec<Vec<Vec<P>>> {
    let mut out: Vec<Vec<Vec<P>>> = vec![vec![]];
    for c in choices {
        let mut next = Vec::with_capacity(out.len() * c.len());
        for prefix in &out {
            for x in c {
                let mut v = prefix.clone();
                v.push(x.clone());
                next.push(v);
            }
        }
        out = next;
    }
    out
}
