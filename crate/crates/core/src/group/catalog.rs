//! The named test-corpus groups, each with its canonical marking.

use super::presentation::build_group_from_text;
use super::{LGroup, Marking};
use crate::error::GroupError;

/// Evaluate the homomorphism determined by generator values along an
/// element's defining word.
fn hom_from_gen_values(g: &LGroup, values: &[u64], modulus: u64) -> Vec<u64> {
    (0..g.order())
        .map(|x| {
            let mut acc: i128 = 0;
            for &letter in g.words(x) {
                let gi = (letter / 2) as usize;
                if letter % 2 == 0 {
                    acc += values[gi] as i128;
                } else {
                    acc -= values[gi] as i128;
                }
            }
            acc.rem_euclid(modulus as i128) as u64
        })
        .collect()
}

/// `name` is one of `heisenberg`, `modular_l3`, `abelian(m1,...,mk)` (cyclic
/// factor sizes, l-powers), `elem_abelian(k)` (rank).
pub fn catalog_group(name: &str, l: u64) -> Result<(LGroup, Marking), GroupError> {
    let name = name.trim();
    if name == "heisenberg" {
        let text = format!(
            "gen x order {l}\ngen y order {l}\ngen z order {l}\n\
             rel [x,y] = z\nrel [x,z] = 1\nrel [y,z] = 1\ncentral z\n"
        );
        let g = build_group_from_text(l, &text, &format!("heisenberg({l})"))?;
        let (x, y, z) = (g.gens()[0], g.gens()[1], g.gens()[2]);
        let gprime = g.subgroup_closure(&[y, z]);
        let pi = hom_from_gen_values(&g, &[0, 1, 0], l);
        let mk = Marking::new(&g, gprime, x, pi, 1)?;
        return Ok((g, mk));
    }
    if name == "modular_l3" {
        let ll = l * l;
        let lp1 = l + 1;
        let text = format!(
            "gen x order {ll}\ngen y order {l}\nrel y^-1*x*y = x^{lp1}\n"
        );
        let g = build_group_from_text(l, &text, &format!("modular_l3({l})"))?;
        let (x, y) = (g.gens()[0], g.gens()[1]);
        let gprime = g.subgroup_closure(&[x]);
        let pi = hom_from_gen_values(&g, &[1, 0], l);
        let mk = Marking::new(&g, gprime, y, pi, 1)?;
        return Ok((g, mk));
    }
    if let Some(args) = name.strip_prefix("abelian(").and_then(|s| s.strip_suffix(')')) {
        let mut sizes: Vec<u64> = Vec::new();
        for part in args.split(',') {
            let n: u64 = part
                .trim()
                .parse()
                .map_err(|_| GroupError::UnknownName(name.to_string()))?;
            sizes.push(n);
        }
        if sizes.is_empty() {
            return Err(GroupError::UnknownName(name.to_string()));
        }
        // Put the largest factor first; pi projects onto it.
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        let mut text = String::new();
        for (i, s) in sizes.iter().enumerate() {
            text.push_str(&format!("gen g{i} order {s}\n"));
        }
        for i in 0..sizes.len() {
            for j in i + 1..sizes.len() {
                text.push_str(&format!("rel [g{i},g{j}] = 1\n"));
            }
        }
        let g = build_group_from_text(l, &text, name)?;
        let mut m = 0u32;
        let mut s = sizes[0];
        while s > 1 {
            s /= l;
            m += 1;
        }
        let mut values = vec![0u64; sizes.len()];
        values[0] = 1;
        let pi = hom_from_gen_values(&g, &values, l.pow(m));
        // G' = kernel of pi mod l: the canonical index-l subgroup under the
        // largest cyclic factor.
        let gprime: Vec<usize> = (0..g.order()).filter(|&x| pi[x] % l == 0).collect();
        let a = g.gens()[0];
        let mk = Marking::new(&g, gprime, a, pi, m)?;
        return Ok((g, mk));
    }
    if let Some(arg) = name
        .strip_prefix("elem_abelian(")
        .and_then(|s| s.strip_suffix(')'))
    {
        let k: usize = arg
            .trim()
            .parse()
            .map_err(|_| GroupError::UnknownName(name.to_string()))?;
        if k == 0 {
            return Err(GroupError::UnknownName(name.to_string()));
        }
        let mut text = String::new();
        for i in 0..k {
            text.push_str(&format!("gen g{i} order {l}\n"));
        }
        for i in 0..k {
            for j in i + 1..k {
                text.push_str(&format!("rel [g{i},g{j}] = 1\n"));
            }
        }
        let g = build_group_from_text(l, &text, name)?;
        // G' = <g1,...,g_{k-1}>; pi projects onto g1 when k > 1 so that
        // pi(G') is all of Gamma, and onto g0 when k = 1.
        let gprime = if k > 1 {
            g.subgroup_closure(&g.gens()[1..].to_vec())
        } else {
            vec![0]
        };
        let mut values = vec![0u64; k];
        if k > 1 {
            values[1] = 1;
        } else {
            values[0] = 1;
        }
        let pi = hom_from_gen_values(&g, &values, l);
        let mk = Marking::new(&g, gprime, g.gens()[0], pi, 1)?;
        return Ok((g, mk));
    }
    Err(GroupError::UnknownName(name.to_string()))
}

/// The markings every exhaustive suite runs over, per prime.
pub fn default_catalog(l: u64) -> Vec<&'static str> {
    match l {
        3 => vec!["heisenberg", "modular_l3", "abelian(9)", "elem_abelian(2)"],
        _ => vec!["heisenberg", "abelian(25)"],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unknown_name() {
        assert!(matches!(
            catalog_group("frobnicator", 3),
            Err(GroupError::UnknownName(_))
        ));
    }

    #[test]
    fn heisenberg_five() {
        let (g, mk) = catalog_group("heisenberg", 5).unwrap();
        assert_eq!(g.order(), 125);
        assert_eq!(mk.gprime.len(), 25);
        assert!(mk.gprime_is_abelian(&g));
    }

    #[test]
    fn abelian_marking_trivial_action() {
        let (g, mk) = catalog_group("abelian(9)", 3).unwrap();
        assert_eq!(g.order(), 9);
        assert_eq!(mk.pi_gprime_index, 3);
        // A acts trivially on G'.
        for &x in &mk.gprime {
            assert_eq!(g.conj(x, mk.a), x);
        }
    }
}
