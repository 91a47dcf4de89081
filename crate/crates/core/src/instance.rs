//! Text formats for instance files and finite group tables.
//!
//! Instance file:
//!
//! ```text
//! ring p=2 d=2 group=Z^1
//! element x
//! term 1 0;0 1 @ 0
//! term 0 1;0 0 @ 1
//! check x x
//! transfer x x
//! ```
//!
//! Group elements are comma-separated integers for `Z^k` and element indices
//! for `finite:<path>`. Group table file:
//!
//! ```text
//! order 3
//! 0 1 2
//! 1 2 0
//! 2 0 1
//! generators 1 2
//! ```

use std::fmt::Write as _;
use std::sync::Arc;

use thiserror::Error;

use crate::exactfield::{is_prime, FpMatrix, MAX_MODULUS};
use crate::groupring::{GroupRingError, GroupRingKernel};
use crate::groups::{GroupElement, GroupError, GroupKind, GroupModel};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InstanceError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("group table {path}: {message}")]
    Table { path: String, message: String },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    GroupRing(#[from] GroupRingError),
}

fn parse_err<T>(line: usize, message: impl Into<String>) -> Result<T, InstanceError> {
    Err(InstanceError::Parse {
        line,
        message: message.into(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupDescriptor {
    FreeAbelian(usize),
    Finite(String),
}

impl GroupDescriptor {
    pub fn parse(s: &str) -> Option<Self> {
        if let Some(k) = s.strip_prefix("Z^") {
            return k.parse().ok().filter(|&k| k > 0).map(GroupDescriptor::FreeAbelian);
        }
        s.strip_prefix("finite:")
            .filter(|p| !p.is_empty())
            .map(|p| GroupDescriptor::Finite(p.to_string()))
    }
}

impl std::fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupDescriptor::FreeAbelian(k) => write!(f, "Z^{k}"),
            GroupDescriptor::Finite(path) => write!(f, "finite:{path}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Directive {
    /// Direct-finiteness check of `xy` and `yx`.
    Check { x: String, y: String },
    /// Transfer experiment on `phi`, with an optional right inverse `psi`.
    Transfer { phi: String, psi: Option<String> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Instance {
    pub p: u64,
    pub d: usize,
    pub descriptor: GroupDescriptor,
    pub group: Arc<GroupModel>,
    pub elements: Vec<(String, GroupRingKernel)>,
    pub directives: Vec<Directive>,
}

impl Instance {
    pub fn element(&self, name: &str) -> Option<&GroupRingKernel> {
        self.elements.iter().find(|(n, _)| n == name).map(|(_, k)| k)
    }

    /// Canonical text form; parsing it back yields an equal instance.
    pub fn to_text(&self) -> String {
        let mut out = format!("ring p={} d={} group={}\n", self.p, self.d, self.descriptor);
        for (name, k) in &self.elements {
            writeln!(out, "element {name}").unwrap();
            out.push_str(&kernel_terms(k));
        }
        for dir in &self.directives {
            match dir {
                Directive::Check { x, y } => writeln!(out, "check {x} {y}").unwrap(),
                Directive::Transfer { phi, psi: Some(psi) } => {
                    writeln!(out, "transfer {phi} {psi}").unwrap()
                }
                Directive::Transfer { phi, psi: None } => writeln!(out, "transfer {phi}").unwrap(),
            }
        }
        out
    }
}

/// The `term` lines of a kernel, in support order.
pub fn kernel_terms(k: &GroupRingKernel) -> String {
    let mut out = String::new();
    for (g, m) in k.support() {
        let rows: Vec<String> = (0..m.rows())
            .map(|i| m.row(i).iter().map(u64::to_string).collect::<Vec<_>>().join(" "))
            .collect();
        writeln!(out, "term {} @ {g}", rows.join(";")).unwrap();
    }
    out
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic() || c == '_')
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn parse_element(s: &str, group: &GroupModel, line: usize) -> Result<GroupElement, InstanceError> {
    let g = match group.kind() {
        GroupKind::FreeAbelian { rank } => {
            let coords: Result<Vec<i64>, _> = s.split(',').map(|c| c.trim().parse()).collect();
            match coords {
                Ok(v) if v.len() == *rank => GroupElement::Vector(v),
                Ok(v) => return parse_err(line, format!("element {s:?} has {} coordinates, expected {rank}", v.len())),
                Err(_) => return parse_err(line, format!("bad group element {s:?}")),
            }
        }
        GroupKind::FiniteByTable(_) => match s.parse() {
            Ok(i) => GroupElement::Index(i),
            Err(_) => return parse_err(line, format!("bad group element {s:?}")),
        },
    };
    if !group.contains(&g) {
        return parse_err(line, format!("{s} is not an element of {}", group.description()));
    }
    Ok(g)
}

fn parse_matrix(s: &str, d: usize, p: u64, line: usize) -> Result<FpMatrix, InstanceError> {
    let rows: Vec<&str> = s.split(';').collect();
    if rows.len() != d {
        return parse_err(line, format!("coefficient has {} rows, expected {d}", rows.len()));
    }
    let mut entries = Vec::with_capacity(d * d);
    for row in rows.iter().map(|r| r.trim()) {
        let before = entries.len();
        for tok in row.split_whitespace() {
            match tok.parse::<i64>() {
                Ok(x) => entries.push(x),
                Err(_) => return parse_err(line, format!("bad matrix entry {tok:?}")),
            }
        }
        if entries.len() - before != d {
            return parse_err(line, format!("coefficient row {row:?} does not have {d} entries"));
        }
    }
    FpMatrix::from_entries(d, d, p, &entries).or_else(|e| parse_err(line, e.to_string()))
}

fn parse_header(line: &str, n: usize) -> Result<(u64, usize, GroupDescriptor), InstanceError> {
    let mut fields = line.split_whitespace();
    if fields.next() != Some("ring") {
        return parse_err(n, "expected header `ring p=<p> d=<d> group=<desc>`");
    }
    let (mut p, mut d, mut group) = (None, None, None);
    for f in fields {
        match f.split_once('=') {
            Some(("p", v)) => p = v.parse::<u64>().ok(),
            Some(("d", v)) => d = v.parse::<usize>().ok(),
            Some(("group", v)) => group = GroupDescriptor::parse(v),
            _ => return parse_err(n, format!("unexpected header field {f:?}")),
        }
    }
    let Some(p) = p.filter(|&p| p < MAX_MODULUS && is_prime(p)) else {
        return parse_err(n, "p must be a prime below 2^32");
    };
    let Some(d) = d.filter(|&d| d > 0) else {
        return parse_err(n, "d must be a positive integer");
    };
    let Some(group) = group else {
        return parse_err(n, "group must be Z^k (k >= 1) or finite:<path>");
    };
    Ok((p, d, group))
}

/// Parses an instance; `load_table` resolves `finite:<path>` descriptors.
pub fn parse_instance(
    text: &str,
    mut load_table: impl FnMut(&str) -> Result<GroupModel, InstanceError>,
) -> Result<Instance, InstanceError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());
    let Some((n, header)) = lines.next() else {
        return parse_err(1, "empty instance file");
    };
    let (p, d, descriptor) = parse_header(header, n)?;
    let group = Arc::new(match &descriptor {
        GroupDescriptor::FreeAbelian(k) => GroupModel::free_abelian(*k),
        GroupDescriptor::Finite(path) => load_table(path)?.with_description(descriptor.to_string()),
    });

    let mut elements: Vec<(String, GroupRingKernel)> = Vec::new();
    let mut directives = Vec::new();
    let mut current: Option<(String, Vec<(GroupElement, FpMatrix)>)> = None;
    let finish = |cur: Option<(String, Vec<_>)>, elements: &mut Vec<_>| -> Result<(), InstanceError> {
        if let Some((name, terms)) = cur {
            elements.push((name, GroupRingKernel::from_terms(group.clone(), d, p, terms)?));
        }
        Ok(())
    };
    for (n, line) in lines {
        let (kw, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match kw {
            "term" => {
                let Some((_, terms)) = current.as_mut() else {
                    return parse_err(n, "term outside of an element");
                };
                let Some((m, g)) = rest.split_once('@') else {
                    return parse_err(n, "expected `term <rows> @ <group element>`");
                };
                terms.push((parse_element(g.trim(), &group, n)?, parse_matrix(m, d, p, n)?));
            }
            "element" => {
                finish(current.take(), &mut elements)?;
                if !valid_name(rest) {
                    return parse_err(n, format!("invalid element name {rest:?}"));
                }
                if elements.iter().any(|(e, _)| e == rest) {
                    return parse_err(n, format!("element {rest} defined twice"));
                }
                current = Some((rest.to_string(), Vec::new()));
            }
            "check" | "transfer" => {
                finish(current.take(), &mut elements)?;
                let names: Vec<&str> = rest.split_whitespace().collect();
                for name in &names {
                    if !elements.iter().any(|(e, _)| e == name) {
                        return parse_err(n, format!("unknown element {name}"));
                    }
                }
                directives.push(match (kw, names.as_slice()) {
                    ("check", [x, y]) => Directive::Check {
                        x: x.to_string(),
                        y: y.to_string(),
                    },
                    ("transfer", [phi]) => Directive::Transfer {
                        phi: phi.to_string(),
                        psi: None,
                    },
                    ("transfer", [phi, psi]) => Directive::Transfer {
                        phi: phi.to_string(),
                        psi: Some(psi.to_string()),
                    },
                    _ => return parse_err(n, format!("wrong number of arguments to {kw}")),
                });
            }
            other => return parse_err(n, format!("unknown keyword {other:?}")),
        }
    }
    finish(current, &mut elements)?;
    Ok(Instance {
        p,
        d,
        descriptor,
        group,
        elements,
        directives,
    })
}

/// Parses a group table file. Errors carry `path` for diagnostics only.
pub fn parse_group_table(text: &str, path: &str) -> Result<GroupModel, InstanceError> {
    let bad = |message: String| InstanceError::Table {
        path: path.to_string(),
        message,
    };
    let mut lines = text
        .lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .filter(|l| !l.is_empty());
    let order: usize = lines
        .next()
        .and_then(|l| l.strip_prefix("order"))
        .and_then(|n| n.trim().parse().ok())
        .ok_or_else(|| bad("expected `order <n>` first".into()))?;
    let mut table = Vec::with_capacity(order);
    for i in 0..order {
        let row: Result<Vec<usize>, _> = lines
            .next()
            .ok_or_else(|| bad(format!("missing table row {i}")))?
            .split_whitespace()
            .map(str::parse)
            .collect();
        table.push(row.map_err(|_| bad(format!("bad entry in table row {i}")))?);
    }
    let generators: Vec<usize> = lines
        .next()
        .and_then(|l| l.strip_prefix("generators"))
        .ok_or_else(|| bad("expected `generators ...` after the table".into()))?
        .split_whitespace()
        .map(str::parse)
        .collect::<Result<_, _>>()
        .map_err(|_| bad("bad generator".into()))?;
    if let Some(extra) = lines.next() {
        return Err(bad(format!("unexpected line {extra:?}")));
    }
    GroupModel::finite(table, generators).map_err(|e| bad(e.to_string()))
}

/// Table file text for a finite group; `None` for other kinds.
pub fn group_table_text(group: &GroupModel) -> Option<String> {
    let GroupKind::FiniteByTable(t) = group.kind() else {
        return None;
    };
    let mut out = format!("order {}\n", t.order());
    for row in t.rows() {
        let cells: Vec<String> = row.iter().map(usize::to_string).collect();
        writeln!(out, "{}", cells.join(" ")).unwrap();
    }
    let gens: Vec<String> = group.generators().iter().map(ToString::to_string).collect();
    writeln!(out, "generators {}", gens.join(" ")).unwrap();
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn no_tables(path: &str) -> Result<GroupModel, InstanceError> {
        Err(InstanceError::Table {
            path: path.into(),
            message: "not available".into(),
        })
    }

    const INVOLUTION: &str = "\
# the involution [[1,t],[0,1]]
ring p=2 d=2 group=Z^1
element x
term 1 0;0 1 @ 0
term 0 1;0 0 @ 1
check x x
transfer x x
";

    #[test]
    fn parse_involution() {
        let inst = parse_instance(INVOLUTION, no_tables).unwrap();
        assert_eq!((inst.p, inst.d), (2, 2));
        let x = inst.element("x").unwrap();
        assert_eq!(x.support().len(), 2);
        assert!(x.check_right_inverse(x).unwrap());
        assert_eq!(inst.directives.len(), 2);
        let text = inst.to_text();
        assert_eq!(text, INVOLUTION.lines().skip(1).map(|l| format!("{l}\n")).collect::<String>());
        assert_eq!(parse_instance(&text, no_tables).unwrap(), inst);
    }

    #[test]
    fn terms_are_summed_and_reduced() {
        let text = "ring p=3 d=1 group=Z^2\nelement a\nterm 4 @ 1,0\nterm 2 @ 1,0\nterm -1 @ 0,-1\n";
        let inst = parse_instance(text, no_tables).unwrap();
        assert_eq!(kernel_terms(inst.element("a").unwrap()), "term 2 @ 0,-1\n");
    }

    #[test]
    fn diagnostics_carry_line_numbers() {
        let cases = [
            ("", 1),
            ("ring p=4 d=1 group=Z^1\n", 1),
            ("ring p=2 d=1 group=Q\n", 1),
            ("ring p=2 d=1 group=Z^1\nterm 1 @ 0\n", 2),
            ("ring p=2 d=1 group=Z^1\nelement x\n\nterm 1 1 @ 0\n", 4),
            ("ring p=2 d=1 group=Z^1\nelement x\nterm 1 @ 0,0\n", 3),
            ("ring p=2 d=1 group=Z^1\nelement x\ncheck x y\n", 3),
            ("ring p=2 d=1 group=Z^1\nelement x\nelement x\n", 3),
            ("ring p=2 d=1 group=Z^1\nfrobnicate\n", 2),
        ];
        for (text, line) in cases {
            match parse_instance(text, no_tables) {
                Err(InstanceError::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
    }

    #[test]
    fn finite_group_instance() {
        let s3 = "order 6\n0 1 2 3 4 5\n1 2 0 5 3 4\n2 0 1 4 5 3\n3 4 5 0 1 2\n4 5 3 2 0 1\n5 3 4 1 2 0\ngenerators 1 2 3\n";
        let g = parse_group_table(s3, "s3.txt").unwrap();
        assert_eq!(g.order(), Some(6));
        assert_eq!(group_table_text(&g).unwrap(), s3);
        let text = "ring p=2 d=1 group=finite:s3.txt\nelement a\nterm 1 @ 3\n";
        let inst = parse_instance(text, |p| {
            assert_eq!(p, "s3.txt");
            parse_group_table(s3, p)
        })
        .unwrap();
        assert_eq!(inst.group.description(), "finite:s3.txt");
        assert_eq!(inst.to_text(), text);
        assert!(matches!(
            parse_instance("ring p=2 d=1 group=finite:s3.txt\nelement a\nterm 1 @ 6\n", |p| parse_group_table(s3, p)),
            Err(InstanceError::Parse { line: 3, .. })
        ));
        assert!(matches!(
            parse_group_table("order 2\n0 1\n1 0\n", "t"),
            Err(InstanceError::Table { .. })
        ));
    }
}
