use std::collections::HashMap;

use itertools::Itertools;

use super::{load_table_file, FiniteGroup};
use crate::error::{Error, Result};

/// Builds a group from a spec string.
///
/// Accepted forms: `C:n`, `D:n` (dihedral of order `2n`), `S:n`, `A:n`,
/// `M:p:q` (nonabelian group of order `pq`), products `X x Y x ...`, and
/// `file:<path>` for a Cayley-table file.
pub fn build_group(spec: &str) -> Result<FiniteGroup> {
    let spec = spec.trim();
    if let Some(path) = spec.strip_prefix("file:") {
        return load_table_file(path);
    }
    let factors: Vec<&str> = spec.split(" x ").map(str::trim).collect();
    if factors.len() > 1 {
        let mut iter = factors.into_iter();
        let first = build_factor(iter.next().unwrap())?;
        return iter.try_fold(first, |acc, f| Ok(acc.direct_product(&build_factor(f)?)));
    }
    build_factor(spec)
}

fn build_factor(spec: &str) -> Result<FiniteGroup> {
    let bad = |why: &str| Error::Spec(spec.to_string(), why.to_string());
    let mut parts = spec.split(':');
    let family = parts.next().unwrap_or_default();
    let args: Vec<usize> = parts
        .map(|p| p.trim().parse::<usize>().map_err(|_| bad("expected integer arguments")))
        .collect::<Result<_>>()?;
    match (family, args.as_slice()) {
        ("C", &[n]) if n >= 1 => Ok(cyclic(n)),
        ("D", &[n]) if n >= 3 => Ok(dihedral(n)),
        ("S", &[n]) if n >= 2 => {
            if n > 6 {
                return Err(bad("symmetric groups are capped at S:6"));
            }
            Ok(symmetric(n, false))
        }
        ("A", &[n]) if n >= 3 => {
            if n > 6 {
                return Err(bad("alternating groups are capped at A:6"));
            }
            Ok(symmetric(n, true))
        }
        ("M", &[p, q]) => {
            if !is_prime(p) || !is_prime(q) || p <= q {
                return Err(bad("M:p:q needs primes p > q"));
            }
            if (p - 1) % q != 0 {
                return Err(bad("M:p:q needs q | p - 1"));
            }
            let d = (2..p)
                .find(|&d| mult_order(d, p) == q)
                .expect("q | p-1 guarantees an element of order q");
            metacyclic_with(p, q, d)
        }
        ("C" | "D" | "S" | "A" | "M", _) => Err(bad("argument out of range or wrong arity")),
        _ => Err(bad("unknown family")),
    }
}

fn is_prime(n: usize) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn mult_order(d: usize, p: usize) -> usize {
    let mut x = d % p;
    let mut k = 1;
    while x != 1 {
        x = x * d % p;
        k += 1;
        if k > p {
            return 0;
        }
    }
    k
}

fn power_name(base: &str, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => base.to_string(),
        _ => format!("{base}^{k}"),
    }
}

fn word_name(parts: &[String]) -> String {
    let parts: Vec<&str> = parts.iter().map(String::as_str).filter(|p| !p.is_empty()).collect();
    if parts.is_empty() {
        "1".to_string()
    } else {
        parts.join(" ")
    }
}

fn cyclic(n: usize) -> FiniteGroup {
    let table = (0..n * n).map(|i| (i / n + i % n) % n).collect();
    let names = (0..n).map(|k| word_name(&[power_name("c", k)])).collect();
    let gens = if n > 1 { vec![1] } else { vec![] };
    FiniteGroup::from_table(format!("C:{n}"), names, table, gens).expect("cyclic table")
}

/// `r^i s^j` has index `i + n j`.
fn dihedral(n: usize) -> FiniteGroup {
    let size = 2 * n;
    let mut table = vec![0; size * size];
    for x in 0..size {
        let (a, b) = (x % n, x / n);
        for y in 0..size {
            let (c, e) = (y % n, y / n);
            let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
            table[x * size + y] = rot + n * ((b + e) % 2);
        }
    }
    let names = (0..size)
        .map(|x| word_name(&[power_name("r", x % n), power_name("s", x / n)]))
        .collect();
    FiniteGroup::from_table(format!("D:{n}"), names, table, vec![1, n]).expect("dihedral table")
}

/// `s^a t^b` has index `a + p b`, with `t s t^-1 = s^d`.
pub fn metacyclic_with(p: usize, q: usize, d: usize) -> Result<FiniteGroup> {
    if mult_order(d, p) != q {
        return Err(Error::Spec(
            format!("M:{p}:{q}"),
            format!("{d} does not have multiplicative order {q} mod {p}"),
        ));
    }
    let size = p * q;
    let dpow: Vec<usize> = (0..q)
        .scan(1usize, |acc, _| {
            let cur = *acc;
            *acc = *acc * d % p;
            Some(cur)
        })
        .collect();
    let mut table = vec![0; size * size];
    for x in 0..size {
        let (a, b) = (x % p, x / p);
        for y in 0..size {
            let (c, e) = (y % p, y / p);
            table[x * size + y] = (a + c * dpow[b]) % p + p * ((b + e) % q);
        }
    }
    let names = (0..size)
        .map(|x| word_name(&[power_name("s", x % p), power_name("t", x / p)]))
        .collect();
    FiniteGroup::from_table(format!("M:{p}:{q}"), names, table, vec![1, p])
}

fn cycle_notation(perm: &[usize]) -> String {
    let mut seen = vec![false; perm.len()];
    let mut out = String::new();
    for start in 0..perm.len() {
        if seen[start] || perm[start] == start {
            continue;
        }
        let mut cycle = vec![start + 1];
        seen[start] = true;
        let mut x = perm[start];
        while x != start {
            seen[x] = true;
            cycle.push(x + 1);
            x = perm[x];
        }
        out.push_str(&format!("({})", cycle.iter().join(" ")));
    }
    if out.is_empty() {
        "()".to_string()
    } else {
        out
    }
}

fn is_even(perm: &[usize]) -> bool {
    let inversions = (0..perm.len())
        .flat_map(|i| (i + 1..perm.len()).map(move |j| (i, j)))
        .filter(|&(i, j)| perm[i] > perm[j])
        .count();
    inversions % 2 == 0
}

/// Permutations of `{1..n}` in lexicographic order of their one-line form;
/// the product is `(σ τ)(i) = σ(τ(i))`.
fn symmetric(n: usize, even_only: bool) -> FiniteGroup {
    let perms: Vec<Vec<usize>> = (0..n)
        .permutations(n)
        .filter(|p| !even_only || is_even(p))
        .collect();
    let index: HashMap<&[usize], usize> =
        perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let size = perms.len();
    let mut table = vec![0; size * size];
    let mut buf = vec![0; n];
    for (x, sigma) in perms.iter().enumerate() {
        for (y, tau) in perms.iter().enumerate() {
            for i in 0..n {
                buf[i] = sigma[tau[i]];
            }
            table[x * size + y] = index[buf.as_slice()];
        }
    }
    let names: Vec<String> = perms.iter().map(|p| cycle_notation(p)).collect();
    let find = |name: String| names.iter().position(|m| *m == name).expect("cycle exists");
    let (spec, gens) = if even_only {
        let gens = (3..=n).map(|k| find(format!("(1 2 {k})"))).collect();
        (format!("A:{n}"), gens)
    } else {
        let mut gens = vec![find("(1 2)".to_string())];
        if n >= 3 {
            gens.push(find(format!("({})", (1..=n).join(" "))));
        }
        (format!("S:{n}"), gens)
    };
    FiniteGroup::from_table(spec, names, table, gens).expect("permutation group table")
}
