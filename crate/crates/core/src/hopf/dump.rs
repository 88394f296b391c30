use std::fmt::Write as _;

use num_rational::Rational64;

use crate::cyclotomic::{parse_term, CycScalar};
use crate::error::{Error, Result};
use crate::hopf::{HopfAlgebra, Tensor2};
use crate::linalg::SparseVec;

fn scalar(c: &CycScalar, n: u32) -> String {
    let e = c.embed(n);
    let terms = e.terms();
    if terms.is_empty() {
        return "0p0".into();
    }
    terms
        .iter()
        .map(|(q, p)| format!("{q}p{p}"))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Line-oriented text form. Every scalar is written as power-basis terms `a/bpk` in `Q(ζ_N)`;
/// `antipode i k c` is the coefficient of `b_k` in `S(b_i)`. Zero entries are omitted.
pub fn write_dump(h: &HopfAlgebra) -> String {
    let n = h.order.max(1);
    let d = h.dim();
    let mut s = String::new();
    writeln!(
        s,
        "hopf {} dim {d} cyclotomic {n}",
        h.name.replace(char::is_whitespace, "_")
    )
    .unwrap();
    for (i, l) in h.labels.iter().enumerate() {
        writeln!(s, "label {i} {l}").unwrap();
    }
    for i in 0..d {
        for j in 0..d {
            for (k, c) in h.mul_basis(i, j) {
                writeln!(s, "mul {i} {j} {k} {}", scalar(c, n)).unwrap();
            }
        }
    }
    for (k, c) in h.unit() {
        writeln!(s, "unit {k} {}", scalar(c, n)).unwrap();
    }
    for i in 0..d {
        for (a, b, c) in h.comul_basis(i) {
            writeln!(s, "comul {i} {a} {b} {}", scalar(c, n)).unwrap();
        }
    }
    for (i, c) in h.counit.iter().enumerate() {
        if !c.is_zero() {
            writeln!(s, "counit {i} {}", scalar(c, n)).unwrap();
        }
    }
    for (i, col) in h.antipode.iter().enumerate() {
        for (k, c) in col {
            writeln!(s, "antipode {i} {k} {}", scalar(c, n)).unwrap();
        }
    }
    if let Some(r) = h.rmatrix() {
        for (a, b, c) in r {
            writeln!(s, "rmatrix {a} {b} {}", scalar(c, n)).unwrap();
        }
    }
    s
}

struct Line<'a> {
    no: usize,
    toks: Vec<&'a str>,
}

impl Line<'_> {
    fn err(&self, msg: impl Into<String>) -> Error {
        Error::ParseAt {
            line: self.no,
            msg: msg.into(),
        }
    }

    fn index(&self, k: usize, bound: usize) -> Result<usize> {
        let t = self.toks.get(k).ok_or_else(|| self.err("missing index"))?;
        let v: usize = t
            .parse()
            .map_err(|_| self.err(format!("bad index `{t}`")))?;
        if v >= bound {
            return Err(self.err(format!("index {v} out of range (dim {bound})")));
        }
        Ok(v)
    }

    fn scalar(&self, from: usize, n: u32) -> Result<CycScalar> {
        let toks = &self.toks[from.min(self.toks.len())..];
        if toks.is_empty() {
            return Err(self.err("missing scalar"));
        }
        let terms: Vec<(Rational64, i64)> = toks
            .iter()
            .map(|t| parse_term(t).ok_or_else(|| self.err(format!("bad scalar term `{t}`"))))
            .collect::<Result<_>>()?;
        Ok(CycScalar::from_terms(n, &terms))
    }
}

fn push_sorted(v: &mut SparseVec, k: usize, c: CycScalar) {
    if !c.is_zero() {
        v.push((k, c));
    }
}

/// Inverse of [`write_dump`].
pub fn load_dump(text: &str) -> Result<HopfAlgebra> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.trim().is_empty() && !l.starts_with('#'));
    let (no, head) = lines.next().ok_or(Error::ParseAt {
        line: 1,
        msg: "empty dump".into(),
    })?;
    let h: Vec<&str> = head.split_whitespace().collect();
    if h.len() != 6 || h[0] != "hopf" || h[2] != "dim" || h[4] != "cyclotomic" {
        return Err(Error::ParseAt {
            line: no,
            msg: "expected `hopf <name> dim <d> cyclotomic <N>`".into(),
        });
    }
    let d: usize = h[3].parse().map_err(|_| Error::ParseAt {
        line: no,
        msg: "bad dimension".into(),
    })?;
    let n: u32 = h[5].parse().ok().filter(|&n| n > 0).ok_or(Error::ParseAt {
        line: no,
        msg: "bad cyclotomic order".into(),
    })?;

    let mut labels: Vec<Option<String>> = vec![None; d];
    let mut mul: Vec<SparseVec> = vec![Vec::new(); d * d];
    let mut unit = Vec::new();
    let mut comul: Vec<Tensor2> = vec![Vec::new(); d];
    let mut counit = vec![CycScalar::zero(); d];
    let mut antipode: Vec<SparseVec> = vec![Vec::new(); d];
    let mut rmatrix: Option<Tensor2> = None;

    for (no, raw) in lines {
        let line = Line {
            no,
            toks: raw.split_whitespace().collect(),
        };
        match line.toks[0] {
            "label" => {
                let i = line.index(1, d)?;
                let rest = raw.trim_start().splitn(3, ' ').nth(2).unwrap_or("");
                labels[i] = Some(rest.to_string());
            }
            "mul" => {
                let (i, j, k) = (line.index(1, d)?, line.index(2, d)?, line.index(3, d)?);
                push_sorted(&mut mul[i * d + j], k, line.scalar(4, n)?);
            }
            "unit" => push_sorted(&mut unit, line.index(1, d)?, line.scalar(2, n)?),
            "comul" => {
                let (i, a, b) = (line.index(1, d)?, line.index(2, d)?, line.index(3, d)?);
                let c = line.scalar(4, n)?;
                if !c.is_zero() {
                    comul[i].push((a, b, c));
                }
            }
            "counit" => {
                let i = line.index(1, d)?;
                counit[i] = line.scalar(2, n)?;
            }
            "antipode" => {
                let (i, k) = (line.index(1, d)?, line.index(2, d)?);
                push_sorted(&mut antipode[i], k, line.scalar(3, n)?);
            }
            "rmatrix" => {
                let (a, b) = (line.index(1, d)?, line.index(2, d)?);
                let c = line.scalar(3, n)?;
                let r = rmatrix.get_or_insert_with(Vec::new);
                if !c.is_zero() {
                    r.push((a, b, c));
                }
            }
            other => return Err(line.err(format!("unknown record `{other}`"))),
        }
    }
    for v in mul
        .iter_mut()
        .chain(antipode.iter_mut())
        .chain(std::iter::once(&mut unit))
    {
        v.sort_by_key(|t| t.0);
    }
    for t in comul.iter_mut().chain(rmatrix.iter_mut()) {
        t.sort_by_key(|e| (e.0, e.1));
    }
    let labels = labels
        .into_iter()
        .enumerate()
        .map(|(i, l)| l.ok_or(Error::Parse(format!("missing label for basis element {i}"))))
        .collect::<Result<Vec<_>>>()?;
    let mut out = HopfAlgebra::from_parts(h[1], labels, n, mul, unit, comul, counit);
    out.antipode = antipode;
    out.rmatrix = rmatrix;
    Ok(out)
}
