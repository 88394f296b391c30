//! Text formats for groups, 2-cocycle pairs and 3-cocycles. Element indices in cocycle files are
//! 0-based: canonical group order for ω, matched-pair order (`f_labels`, `gamma_labels`) for σ and τ.

use num_integer::Integer;

use crate::error::{Error, Result};
use crate::factorization::{CocyclePair, MatchedPair};
use crate::perm::{FiniteGroup, Permutation, DEFAULT_ELEMENT_CAP};
use crate::rep::ThreeCocycle;

/// Non-empty, non-comment lines with their 1-based line numbers.
fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'))
}

fn at(line: usize, msg: impl Into<String>) -> Error {
    Error::ParseAt {
        line,
        msg: msg.into(),
    }
}

/// `group <name>`, `degree <n>`, then one `gen <cycles>` line per generator.
pub fn parse_group(text: &str) -> Result<FiniteGroup> {
    parse_group_with_cap(text, DEFAULT_ELEMENT_CAP)
}

pub fn parse_group_with_cap(text: &str, cap: usize) -> Result<FiniteGroup> {
    let mut name = None;
    let mut degree = None;
    let mut gens = Vec::new();
    for (line, l) in content_lines(text) {
        let (key, rest) = l.split_once(char::is_whitespace).unwrap_or((l, ""));
        let rest = rest.trim();
        match key {
            "group" if name.is_none() => name = Some(rest.to_string()),
            "degree" if degree.is_none() => {
                degree = Some(
                    rest.parse::<usize>()
                        .map_err(|_| at(line, format!("bad degree '{rest}'")))?,
                );
            }
            "gen" => {
                let d = degree.ok_or_else(|| at(line, "gen before degree"))?;
                gens.push(Permutation::parse_cycles(d, rest).map_err(|e| at(line, e.to_string()))?);
            }
            _ => return Err(at(line, format!("unexpected line '{l}'"))),
        }
    }
    let name = name.ok_or_else(|| at(0, "missing 'group <name>' line"))?;
    let degree = degree.ok_or_else(|| at(0, "missing 'degree <n>' line"))?;
    FiniteGroup::closure_with_cap(&name, degree, gens, cap)
}

pub fn write_group(g: &FiniteGroup) -> String {
    let mut out = format!("group {}\ndegree {}\n", g.name(), g.degree());
    for p in g.generators() {
        out.push_str(&format!("gen {p}\n"));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CocycleKind {
    Sigma,
    Tau,
}

/// A parsed `cocycle sigma|tau` file before it is fitted to a matched pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleFile {
    pub kind: CocycleKind,
    pub order: u32,
    /// `(line, i, j, k, exponent)`.
    pub entries: Vec<(usize, usize, usize, usize, u32)>,
}

fn header<'a>(
    lines: &mut impl Iterator<Item = (usize, &'a str)>,
    want: &str,
) -> Result<(usize, &'a str)> {
    let (line, l) = lines
        .next()
        .ok_or_else(|| at(0, format!("missing '{want}' line")))?;
    let rest = l
        .strip_prefix(want)
        .ok_or_else(|| at(line, format!("expected '{want}', found '{l}'")))?;
    Ok((line, rest.trim()))
}

fn parse_order<'a>(lines: &mut impl Iterator<Item = (usize, &'a str)>) -> Result<u32> {
    let (line, rest) = header(lines, "order")?;
    rest.parse::<u32>()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| at(line, format!("bad order '{rest}'")))
}

fn quadruples<'a>(
    lines: impl Iterator<Item = (usize, &'a str)>,
) -> Result<Vec<(usize, usize, usize, usize, u32)>> {
    lines
        .map(|(line, l)| {
            let nums: Vec<&str> = l.split_whitespace().collect();
            let [a, b, c, e] = nums.as_slice() else {
                return Err(at(line, format!("expected four integers, found '{l}'")));
            };
            let idx = |t: &str| {
                t.parse::<usize>()
                    .map_err(|_| at(line, format!("bad index '{t}'")))
            };
            let e = e
                .parse::<u32>()
                .map_err(|_| at(line, format!("bad exponent '{e}'")))?;
            Ok((line, idx(a)?, idx(b)?, idx(c)?, e))
        })
        .collect()
}

pub fn parse_cocycle_file(text: &str) -> Result<CocycleFile> {
    let mut lines = content_lines(text);
    let (line, kind) = header(&mut lines, "cocycle")?;
    let kind = match kind {
        "sigma" => CocycleKind::Sigma,
        "tau" => CocycleKind::Tau,
        other => {
            return Err(at(
                line,
                format!("cocycle kind must be sigma or tau, found '{other}'"),
            ))
        }
    };
    let order = parse_order(&mut lines)?;
    Ok(CocycleFile {
        kind,
        order,
        entries: quadruples(lines)?,
    })
}

/// Combines optional σ and τ files over the lcm of their orders; entries are `s x y` for σ and `x s t` for τ.
pub fn cocycle_pair_from_files(
    mp: &MatchedPair,
    sigma: Option<&CocycleFile>,
    tau: Option<&CocycleFile>,
) -> Result<CocyclePair> {
    let order = [sigma, tau]
        .iter()
        .flatten()
        .fold(1u32, |acc, f| acc.lcm(&f.order));
    let mut cp = CocyclePair::new(mp, order);
    let (nf, ng) = (mp.nf(), mp.ng());
    for (file, want) in [(sigma, CocycleKind::Sigma), (tau, CocycleKind::Tau)] {
        let Some(file) = file else { continue };
        if file.kind != want {
            return Err(Error::Parse(format!(
                "expected a {want:?} file, found {:?}",
                file.kind
            )));
        }
        let scale = order / file.order;
        for &(line, a, b, c, e) in &file.entries {
            let e = (e % file.order) * scale;
            match want {
                CocycleKind::Sigma if a < ng && b < nf && c < nf => cp.set_sigma(a, b, c, e),
                CocycleKind::Tau if a < nf && b < ng && c < ng => cp.set_tau(a, b, c, e),
                _ => {
                    return Err(at(
                        line,
                        format!("index out of range for |F| = {nf}, |Γ| = {ng}"),
                    ))
                }
            }
        }
    }
    Ok(cp)
}

/// `omega`, `order N`, then `a b c e`; validated on load.
pub fn parse_omega(g: &FiniteGroup, text: &str) -> Result<ThreeCocycle> {
    let mut lines = content_lines(text);
    let (line, rest) = header(&mut lines, "omega")?;
    if !rest.is_empty() {
        return Err(at(line, "unexpected text after 'omega'"));
    }
    let order = parse_order(&mut lines)?;
    let n = g.order();
    let mut table = vec![0u32; n * n * n];
    for (line, a, b, c, e) in quadruples(lines)? {
        if a >= n || b >= n || c >= n {
            return Err(at(
                line,
                format!("element index out of range for |G| = {n}"),
            ));
        }
        table[(a * n + b) * n + c] = e % order;
    }
    ThreeCocycle::from_table(g, order, table)
}

pub fn write_omega(omega: &ThreeCocycle) -> String {
    let n = omega.group_order();
    let mut out = format!("omega\norder {}\n", omega.order());
    for (k, &e) in omega.table().iter().enumerate() {
        if e != 0 {
            out.push_str(&format!("{} {} {} {e}\n", k / (n * n), (k / n) % n, k % n));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factorization::{derive_matched_pair, find_exact_factorizations, validate_cocycles};
    use crate::rep::cyclic_character;

    const S3: &str = "# the symmetric group\ngroup S3\ndegree 3\ngen (1 2 3)\ngen (1 2)\n";

    #[test]
    fn group_round_trip() {
        let g = parse_group(S3).unwrap();
        assert_eq!(g.order(), 6);
        let again = parse_group(&write_group(&g)).unwrap();
        assert_eq!(again.elements(), g.elements());
    }

    #[test]
    fn group_errors_name_the_line() {
        let err = parse_group("group X\ndegree 3\ngen (1 4)\n").unwrap_err();
        assert!(matches!(err, Error::ParseAt { line: 3, .. }), "{err}");
        let err = parse_group("group X\ndegree 3\nbogus\n").unwrap_err();
        assert!(matches!(err, Error::ParseAt { line: 3, .. }));
        assert!(parse_group("group X\ndegree 5\ngen (1 2 3 4 5)\n").is_ok());
        assert!(matches!(
            parse_group_with_cap("group S5\ndegree 5\ngen (1 2 3 4 5)\ngen (1 2)\n", 50),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn omega_round_trip_and_validation() {
        let g = FiniteGroup::cyclic(4);
        let phi = cyclic_character(&g, &[1], 4).unwrap();
        let w = ThreeCocycle::cyclic_pullback(&g, &phi, 4, 1).unwrap();
        assert_eq!(parse_omega(&g, &write_omega(&w)).unwrap(), w);
        // A single nonzero value is never a normalized cocycle on C4.
        assert!(matches!(
            parse_omega(&g, "omega\norder 4\n1 2 3 1\n"),
            Err(Error::CocycleInvalid(_))
        ));
        assert!(matches!(
            parse_omega(&g, "omega\norder 4\n1 2 9 1\n"),
            Err(Error::ParseAt { line: 3, .. })
        ));
    }

    #[test]
    fn cocycle_files_fit_the_matched_pair() {
        let g = FiniteGroup::symmetric(3);
        let fact = find_exact_factorizations(&g, true)
            .into_iter()
            .find(|f| f.f.order() == 2)
            .unwrap();
        let mp = derive_matched_pair(&g, &fact).unwrap();
        let s = parse_cocycle_file("cocycle sigma\norder 2\n").unwrap();
        let cp = cocycle_pair_from_files(&mp, Some(&s), None).unwrap();
        assert!(cp.is_trivial());
        let bad = parse_cocycle_file("cocycle sigma\norder 2\n1 1 1 1\n").unwrap();
        let cp = cocycle_pair_from_files(&mp, Some(&bad), None).unwrap();
        assert!(!validate_cocycles(&mp, &cp).passed());
        let oob = parse_cocycle_file("cocycle tau\norder 2\n5 0 0 1\n").unwrap();
        assert!(matches!(
            cocycle_pair_from_files(&mp, None, Some(&oob)),
            Err(Error::ParseAt { line: 3, .. })
        ));
        assert!(cocycle_pair_from_files(&mp, Some(&oob), None).is_err());
        assert!(matches!(
            parse_cocycle_file("cocycle rho\norder 2\n"),
            Err(Error::ParseAt { line: 1, .. })
        ));
    }
}
