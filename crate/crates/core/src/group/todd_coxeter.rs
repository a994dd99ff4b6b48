//! Todd-Coxeter coset enumeration over the trivial subgroup: the coset
//! graph is the regular representation, which is exactly the multiplication
//! data we need for table-based groups.
//!
//! Letters are 2*g for generator g and 2*g+1 for its inverse. Relators are
//! letter words. The enumeration is the classic HLT scan-and-fill with a
//! coincidence queue.

use crate::error::GroupError;

const UNDEF: u32 = u32::MAX;

pub struct Enumeration {
    /// For each live element, its image under each letter.
    pub action: Vec<Vec<u32>>,
    /// A defining letter word for each element (path from the identity).
    pub words: Vec<Vec<u8>>,
}

struct Tables {
    nletters: usize,
    tab: Vec<Vec<u32>>,
    parent: Vec<u32>,
    live: usize,
    defined: usize,
    cap: usize,
}

fn inv_letter(x: usize) -> usize {
    x ^ 1
}

impl Tables {
    fn new(nletters: usize, cap: usize) -> Self {
        Tables {
            nletters,
            tab: vec![vec![UNDEF; nletters]],
            parent: vec![0],
            live: 1,
            defined: 1,
            cap,
        }
    }

    fn rep(&mut self, mut k: u32) -> u32 {
        while self.parent[k as usize] != k {
            let p = self.parent[k as usize];
            self.parent[k as usize] = self.parent[p as usize];
            k = self.parent[k as usize];
        }
        k
    }

    fn is_live(&mut self, k: u32) -> bool {
        self.rep(k) == k
    }

    fn get(&mut self, c: u32, x: usize) -> Option<u32> {
        let e = self.tab[c as usize][x];
        if e == UNDEF {
            None
        } else {
            let r = self.rep(e);
            self.tab[c as usize][x] = r;
            Some(r)
        }
    }

    fn define(&mut self, c: u32, x: usize) -> Result<u32, GroupError> {
        if self.defined >= self.cap {
            return Err(GroupError::SizeCap { cap: self.cap });
        }
        let n = self.tab.len() as u32;
        self.tab.push(vec![UNDEF; self.nletters]);
        self.parent.push(n);
        self.tab[c as usize][x] = n;
        self.tab[n as usize][inv_letter(x)] = c;
        self.live += 1;
        self.defined += 1;
        Ok(n)
    }

    fn join(&mut self, a: u32, b: u32, queue: &mut Vec<u32>) {
        let a = self.rep(a);
        let b = self.rep(b);
        if a == b {
            return;
        }
        let (s, t) = if a < b { (a, b) } else { (b, a) };
        self.parent[t as usize] = s;
        self.live -= 1;
        queue.push(t);
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        let mut queue = Vec::new();
        self.join(a, b, &mut queue);
        while let Some(y) = queue.pop() {
            for x in 0..self.nletters {
                let d = self.tab[y as usize][x];
                if d == UNDEF {
                    continue;
                }
                self.tab[y as usize][x] = UNDEF;
                if self.tab[d as usize][inv_letter(x)] == y {
                    self.tab[d as usize][inv_letter(x)] = UNDEF;
                }
                let mu = self.rep(y);
                let nu = self.rep(d);
                match self.get(mu, x) {
                    Some(e) => self.join(nu, e, &mut queue),
                    None => {
                        self.tab[mu as usize][x] = nu;
                    }
                }
                match self.get(nu, inv_letter(x)) {
                    Some(e) => self.join(mu, e, &mut queue),
                    None => {
                        self.tab[nu as usize][inv_letter(x)] = mu;
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, alpha: u32, word: &[u8]) -> Result<(), GroupError> {
        if word.is_empty() {
            return Ok(());
        }
        let mut f = alpha;
        let mut i = 0usize;
        let mut b = alpha;
        let mut j = word.len();
        loop {
            while i < j {
                match self.get(f, word[i] as usize) {
                    Some(d) => {
                        f = d;
                        i += 1;
                    }
                    None => break,
                }
            }
            if i == j {
                if f != b {
                    self.coincidence(f, b);
                }
                return Ok(());
            }
            while j > i {
                match self.get(b, inv_letter(word[j - 1] as usize)) {
                    Some(d) => {
                        b = d;
                        j -= 1;
                    }
                    None => break,
                }
            }
            if j == i {
                self.coincidence(f, b);
                return Ok(());
            }
            if j == i + 1 {
                self.tab[f as usize][word[i] as usize] = b;
                self.tab[b as usize][inv_letter(word[i] as usize)] = f;
                return Ok(());
            }
            self.define(f, word[i] as usize)?;
        }
    }
}

/// Enumerate the group presented by `ngens` generators and the given letter
/// relators; `cap` bounds the number of cosets ever defined.
pub fn enumerate(ngens: usize, relators: &[Vec<u8>], cap: usize) -> Result<Enumeration, GroupError> {
    let nletters = 2 * ngens;
    let mut t = Tables::new(nletters, cap);
    let mut alpha = 0u32;
    while (alpha as usize) < t.tab.len() {
        if t.is_live(alpha) {
            for rel in relators {
                t.scan_and_fill(alpha, rel)?;
                if !t.is_live(alpha) {
                    break;
                }
            }
            if t.is_live(alpha) {
                for x in 0..nletters {
                    if t.get(alpha, x).is_none() {
                        t.define(alpha, x)?;
                    }
                }
            }
        }
        alpha += 1;
    }

    // Compact live cosets.
    let total = t.tab.len() as u32;
    let mut index = vec![UNDEF; total as usize];
    let mut live = Vec::new();
    for c in 0..total {
        if t.is_live(c) {
            index[c as usize] = live.len() as u32;
            live.push(c);
        }
    }
    let mut action = vec![vec![UNDEF; nletters]; live.len()];
    for (k, &c) in live.iter().enumerate() {
        for x in 0..nletters {
            let d = t
                .get(c, x)
                .expect("complete table has no undefined entries");
            action[k][x] = index[d as usize];
        }
    }

    // BFS words from the identity coset.
    let mut words: Vec<Option<Vec<u8>>> = vec![None; live.len()];
    words[0] = Some(Vec::new());
    let mut queue = std::collections::VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        for x in 0..nletters {
            let d = action[c][x] as usize;
            if words[d].is_none() {
                let mut w = words[c].clone().unwrap();
                w.push(x as u8);
                words[d] = Some(w);
                queue.push_back(d);
            }
        }
    }
    let words = words
        .into_iter()
        .map(|w| w.expect("coset graph is connected"))
        .collect();
    Ok(Enumeration { action, words })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclic_three() {
        // <x | x^3>
        let rels = vec![vec![0, 0, 0]];
        let e = enumerate(1, &rels, 100).unwrap();
        assert_eq!(e.action.len(), 3);
    }

    #[test]
    fn heisenberg_order_27() {
        // x,y,z order 3, [x,y] = z (letters: x=0/1, y=2/3, z=4/5),
        // z central.
        let comm_xy_zinv = vec![1, 3, 0, 2, 5]; // x^-1 y^-1 x y z^-1
        let rels = vec![
            vec![0, 0, 0],
            vec![2, 2, 2],
            vec![4, 4, 4],
            comm_xy_zinv,
            vec![1, 5, 0, 4], // x^-1 z^-1 x z
            vec![3, 5, 2, 4], // y^-1 z^-1 y z
        ];
        let e = enumerate(3, &rels, 1000).unwrap();
        assert_eq!(e.action.len(), 27);
    }

    #[test]
    fn collapse_detected_by_size() {
        // <x,y | x^3, y^3, (xy)^2> is A4 of order 12.
        let rels = vec![vec![0, 0, 0], vec![2, 2, 2], vec![0, 2, 0, 2]];
        let e = enumerate(2, &rels, 1000).unwrap();
        assert_eq!(e.action.len(), 12);
    }

    #[test]
    fn cap_fires() {
        // Free product Z/3 * Z/3 is infinite.
        let rels = vec![vec![0, 0, 0], vec![2, 2, 2]];
        assert!(matches!(
            enumerate(2, &rels, 500),
            Err(GroupError::SizeCap { .. })
        ));
    }
}
