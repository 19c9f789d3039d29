use std::collections::{BTreeMap, HashMap};

use super::{relax, Codec, DpTable, Entry, NO_BACK};
use crate::error::Result;
use crate::par;

/// Everything a join node needs from its two children.
pub struct JoinInput<'a> {
    pub bag: &'a [usize],
    /// `min(up(v), k)` per bag position.
    pub caps: Vec<u8>,
    pub k: usize,
    pub left: &'a DpTable,
    pub right: &'a DpTable,
    /// Bag-position pairs of edges introduced below each child.
    pub left_edges: &'a [(usize, usize)],
    pub right_edges: &'a [(usize, usize)],
    pub parallel: bool,
}

/// Child entries grouped by their `S` mask, each group in key order.
fn by_mask(t: &DpTable) -> BTreeMap<u32, Vec<(u64, Entry)>> {
    let b = t.bag().len();
    let mut groups: BTreeMap<u32, Vec<(u64, Entry)>> = BTreeMap::new();
    for (key, e) in t.sorted_entries() {
        groups
            .entry((key & ((1u64 << b) - 1)) as u32)
            .or_default()
            .push((key, e));
    }
    groups
}

type Rows = Vec<(u64, Entry)>;

fn paired_groups(input: &JoinInput) -> Vec<(u32, Rows, Rows)> {
    let mut right = by_mask(input.right);
    by_mask(input.left)
        .into_iter()
        .filter_map(|(s, l)| right.remove(&s).map(|r| (s, l, r)))
        .collect()
}

/// `f = f1 + f2 - [S]`, cost `c1 + c2 - |S|`, over every compatible pair.
pub fn join_naive(input: &JoinInput) -> Result<DpTable> {
    let b = input.bag.len();
    let codec = Codec::new(b, input.left.codec().radix)?;
    let groups = paired_groups(input);
    let parts = par::map(&groups, input.parallel, |(s, ls, rs)| {
        let s = *s;
        let s_size = s.count_ones();
        let mut out = HashMap::new();
        let mut f1 = vec![0u8; b];
        let mut f2 = vec![0u8; b];
        let mut f = vec![0u8; b];
        for &(lk, le) in ls {
            codec.decode(lk, &mut f1);
            'pair: for &(rk, re) in rs {
                let cost = le.cost + re.cost - s_size;
                if cost as usize > input.k {
                    continue;
                }
                codec.decode(rk, &mut f2);
                for i in 0..b {
                    let x = f1[i] + f2[i] - (s >> i & 1) as u8;
                    if x > input.caps[i] {
                        continue 'pair;
                    }
                    f[i] = x;
                }
                relax(&mut out, codec.encode(&f, s), Entry { cost, back: lk });
            }
        }
        out
    });
    let mut entries = HashMap::new();
    for part in parts {
        entries.extend(part);
    }
    Ok(DpTable::new(input.bag.to_vec(), codec, entries))
}

/// One cell of a count table: `count` partial solutions of cost `q` with
/// excess vector `g`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct CountCell {
    pub g: Vec<u8>,
    pub q: u32,
    pub count: u64,
}

/// Largest transform size attempted; bigger bags fall back to pairing.
const MAX_TRANSFORM: usize = 1 << 16;

/// Fast join: subtract the domination already known from the bag's own
/// edges, convolve the remaining excess cyclically and keep only cells whose
/// total weight shows that no coordinate wrapped around.
pub fn join_fast(input: &JoinInput) -> Result<DpTable> {
    let b = input.bag.len();
    let radix = input.left.codec().radix;
    let m = radix as usize;
    if m.checked_pow(b as u32).is_none_or(|x| x > MAX_TRANSFORM) {
        return join_naive(input);
    }
    let codec = Codec::new(b, radix)?;
    let groups = paired_groups(input);
    let parts = par::map(&groups, input.parallel, |(s, ls, rs)| {
        let s = *s;
        let s_size = s.count_ones();
        let dom = |edges: &[(usize, usize)]| -> Vec<u8> {
            let mut d: Vec<u8> = (0..b).map(|i| (s >> i & 1) as u8).collect();
            for &(x, y) in edges {
                d[x] += (s >> y & 1) as u8;
                d[y] += (s >> x & 1) as u8;
            }
            d
        };
        let dom1 = dom(input.left_edges);
        let dom2 = dom(input.right_edges);
        let cells = |rows: &[(u64, Entry)], d: &[u8]| -> Vec<CountCell> {
            let mut f = vec![0u8; b];
            rows.iter()
                .map(|&(key, e)| {
                    codec.decode(key, &mut f);
                    CountCell {
                        g: f.iter().zip(d).map(|(x, y)| x - y).collect(),
                        q: e.cost,
                        count: 1,
                    }
                })
                .collect()
        };
        // f = g + dom1 + dom2 - [S] must stay within the caps.
        let room: u32 = (0..b)
            .map(|i| {
                (input.caps[i] as u32 + (s >> i & 1))
                    .saturating_sub(dom1[i] as u32 + dom2[i] as u32)
            })
            .sum();
        let conv = convolve_counts_bounded(
            m,
            b,
            &cells(ls, &dom1),
            &cells(rs, &dom2),
            true,
            input.k as u32 + s_size,
            room,
        );
        let mut out: HashMap<u64, Entry> = HashMap::new();
        let mut f = vec![0u8; b];
        'cell: for cell in conv {
            if cell.count == 0 || cell.q < s_size || (cell.q - s_size) as usize > input.k {
                continue;
            }
            for i in 0..b {
                let x = cell.g[i] as u32 + dom1[i] as u32 + dom2[i] as u32 - (s >> i & 1);
                if x > input.caps[i] as u32 {
                    continue 'cell;
                }
                f[i] = x as u8;
            }
            relax(
                &mut out,
                codec.encode(&f, s),
                Entry {
                    cost: cell.q - s_size,
                    back: NO_BACK,
                },
            );
        }
        out
    });
    let mut entries = HashMap::new();
    for part in parts {
        entries.extend(part);
    }
    Ok(DpTable::new(input.bag.to_vec(), codec, entries))
}

/// Cyclic convolution of two count tables over `Z_m^b`, multiplying costs
/// as polynomial degrees. With `w_filter`, the total weight `Σg` is tracked
/// as a second degree and only cells whose weight equals the sum of their
/// coordinates survive, which are exactly the sums without wrap-around.
/// Counts are exact while every true count is below the working prime.
pub fn convolve_counts(
    m: usize,
    b: usize,
    left: &[CountCell],
    right: &[CountCell],
    w_filter: bool,
) -> Vec<CountCell> {
    convolve_counts_bounded(m, b, left, right, w_filter, u32::MAX, u32::MAX)
}

/// As [`convolve_counts`], but products with cost above `max_q` or weight
/// above `max_w` are never formed.
pub fn convolve_counts_bounded(
    m: usize,
    b: usize,
    left: &[CountCell],
    right: &[CountCell],
    w_filter: bool,
    max_q: u32,
    max_w: u32,
) -> Vec<CountCell> {
    let size = m.pow(b as u32);
    let field = Field::for_order(m as u64);
    let index = |g: &[u8]| g.iter().fold(0usize, |acc, &d| acc * m + d as usize);
    let weight = |g: &[u8]| -> u32 {
        if w_filter {
            g.iter().map(|&d| d as u32).sum()
        } else {
            0
        }
    };
    let slices = |cells: &[CountCell]| -> BTreeMap<(u32, u32), Vec<u64>> {
        let mut out: BTreeMap<(u32, u32), Vec<u64>> = BTreeMap::new();
        for c in cells {
            let slot = out
                .entry((c.q, weight(&c.g)))
                .or_insert_with(|| vec![0; size]);
            let i = index(&c.g);
            slot[i] = field.add(slot[i], c.count % field.p);
        }
        for v in out.values_mut() {
            field.dft(v, m, b, false);
        }
        out
    };
    let lt = slices(left);
    let rt = slices(right);
    let mut prod: BTreeMap<(u32, u32), Vec<u64>> = BTreeMap::new();
    for (&(q1, w1), a) in &lt {
        for (&(q2, w2), c) in &rt {
            if q1 + q2 > max_q || w1 + w2 > max_w {
                continue;
            }
            let slot = prod
                .entry((q1 + q2, w1 + w2))
                .or_insert_with(|| vec![0; size]);
            for i in 0..size {
                slot[i] = field.add(slot[i], field.mul(a[i], c[i]));
            }
        }
    }
    let mut cells: BTreeMap<(Vec<u8>, u32), u64> = BTreeMap::new();
    let mut g = vec![0u8; b];
    for ((q, w), mut v) in prod {
        field.dft(&mut v, m, b, true);
        for (i, &count) in v.iter().enumerate() {
            if count == 0 {
                continue;
            }
            let mut x = i;
            for d in g.iter_mut().rev() {
                *d = (x % m) as u8;
                x /= m;
            }
            if w_filter && weight(&g) != w {
                continue;
            }
            let slot = cells.entry((g.clone(), q)).or_insert(0);
            *slot = field.add(*slot, count);
        }
    }
    cells
        .into_iter()
        .map(|((g, q), count)| CountCell { g, q, count })
        .collect()
}

/// Arithmetic modulo a prime `p < 2^61` with `m | p - 1`, plus a primitive
/// `m`-th root of unity.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Field {
    pub p: u64,
    root: u64,
}

impl Field {
    pub(crate) fn for_order(m: u64) -> Self {
        let m = m.max(1);
        let mut p = ((1u64 << 61) - 2) / m * m + 1;
        while !is_prime(p) {
            p -= m;
        }
        let factors = prime_factors(m);
        let f = Field { p, root: 1 };
        let mut x = 2u64;
        let root = loop {
            let y = f.pow(x, (p - 1) / m);
            if factors.iter().all(|&q| f.pow(y, m / q) != 1) {
                break y;
            }
            x += 1;
        };
        Field { p, root }
    }

    #[inline]
    fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    #[inline]
    fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1u64;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.p - 2)
    }

    /// In-place DFT over `Z_m^b`, one axis at a time.
    fn dft(&self, v: &mut [u64], m: usize, b: usize, inverse: bool) {
        let w = if inverse {
            self.inv(self.root)
        } else {
            self.root
        };
        let powers: Vec<u64> = (0..m).map(|i| self.pow(w, i as u64)).collect();
        let mut line = vec![0u64; m];
        let mut stride = 1usize;
        for _ in 0..b {
            let block = stride * m;
            for base in (0..v.len()).step_by(block) {
                for off in 0..stride {
                    for (j, slot) in line.iter_mut().enumerate() {
                        let mut acc = 0u64;
                        for t in 0..m {
                            let x = v[base + off + t * stride];
                            if x != 0 {
                                acc = self.add(acc, self.mul(x, powers[(j * t) % m]));
                            }
                        }
                        *slot = acc;
                    }
                    for (t, &x) in line.iter().enumerate() {
                        v[base + off + t * stride] = x;
                    }
                }
            }
            stride = block;
        }
        if inverse {
            let scale = self.inv(self.pow(m as u64, b as u64));
            for x in v.iter_mut() {
                *x = self.mul(*x, scale);
            }
        }
    }
}

fn prime_factors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= m {
        if m.is_multiple_of(d) {
            out.push(d);
            while m.is_multiple_of(d) {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Deterministic Miller-Rabin for 64-bit inputs.
pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let powmod = |mut a: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mulmod(r, a);
            }
            a = mulmod(a, a);
            e >>= 1;
        }
        r
    };
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'base: for &a in &BASES {
        let mut x = powmod(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mulmod(x, x);
            if x == n - 1 {
                continue 'base;
            }
        }
        return false;
    }
    true
}
