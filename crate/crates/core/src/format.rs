//! Line-oriented text formats for automata (`.pa`) and DFAs (`.dfa`).
//!
//! ```text
//! # comment
//! states: s t u
//! alphabet: a b
//! init: s=1/2 t=1/2
//! acceptance: parity s=1 t=1 u=0
//! trans: s a t 1/2
//! ```

use std::collections::HashMap;
use std::fmt::Write;

use num_traits::{Signed, Zero};

use crate::automaton::{Acceptance, Automaton};
use crate::dfa::Dfa;
use crate::error::{Error, Result};
use crate::prob::{self, parse_prob, Distribution, Matrix};
use crate::stateset::StateSet;

struct Line<'a> {
    number: usize,
    key: &'a str,
    tokens: Vec<(usize, &'a str)>,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn lines(text: &str) -> Result<Vec<Line<'_>>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let number = i + 1;
        let body = raw.split('#').next().unwrap_or("");
        if body.trim().is_empty() {
            continue;
        }
        let Some(colon) = body.find(':') else {
            let col = body.len() - body.trim_start().len() + 1;
            return Err(err(number, col, "expected `key: values`"));
        };
        let key = body[..colon].trim();
        let rest = &body[colon + 1..];
        let base = colon + 2;
        let mut tokens = Vec::new();
        let mut start = None;
        for (j, c) in rest.char_indices() {
            match (c.is_whitespace(), start) {
                (false, None) => start = Some(j),
                (true, Some(s)) => {
                    tokens.push((base + s, &rest[s..j]));
                    start = None;
                }
                _ => {}
            }
        }
        if let Some(s) = start {
            tokens.push((base + s, &rest[s..]));
        }
        out.push(Line { number, key, tokens });
    }
    Ok(out)
}

fn names(line: &Line<'_>, what: &str) -> Result<(Vec<String>, HashMap<String, usize>)> {
    let mut list = Vec::new();
    let mut index = HashMap::new();
    for &(col, t) in &line.tokens {
        if t.contains('=') {
            return Err(err(line.number, col, format!("`=` not allowed in {what} name `{t}`")));
        }
        if index.insert(t.to_string(), list.len()).is_some() {
            return Err(err(line.number, col, format!("duplicate {what} `{t}`")));
        }
        list.push(t.to_string());
    }
    if list.is_empty() {
        return Err(err(line.number, line.key.len() + 2, format!("no {what}s listed")));
    }
    Ok((list, index))
}

fn header<'a, 'b>(ls: &'b [Line<'a>], key: &str, end: usize) -> Result<&'b Line<'a>> {
    let mut found = ls.iter().filter(|l| l.key == key);
    let first = found.next().ok_or_else(|| err(end, 1, format!("missing `{key}:` line")))?;
    if let Some(dup) = found.next() {
        return Err(err(dup.number, 1, format!("repeated `{key}:` line")));
    }
    Ok(first)
}

fn lookup(map: &HashMap<String, usize>, line: usize, col: usize, t: &str, what: &str) -> Result<usize> {
    map.get(t)
        .copied()
        .ok_or_else(|| err(line, col, format!("unknown {what} `{t}`")))
}

pub fn parse_automaton(text: &str) -> Result<Automaton> {
    let ls = lines(text)?;
    let end = text.lines().count() + 1;
    for l in &ls {
        if !matches!(l.key, "states" | "alphabet" | "init" | "acceptance" | "trans") {
            return Err(err(l.number, 1, format!("unknown key `{}`", l.key)));
        }
    }
    let (states, sidx) = names(header(&ls, "states", end)?, "state")?;
    let (letters, lidx) = names(header(&ls, "alphabet", end)?, "letter")?;
    let n = states.len();

    let init_line = header(&ls, "init", end)?;
    let mut init = vec![prob::zero(); n];
    for &(col, t) in &init_line.tokens {
        let (name, w) = match t.split_once('=') {
            Some((name, w)) => {
                let p = parse_prob(w).ok_or_else(|| err(init_line.number, col, format!("bad probability `{w}`")))?;
                (name, p)
            }
            None => (t, prob::one()),
        };
        let q = lookup(&sidx, init_line.number, col, name, "state")?;
        if !init[q].is_zero() {
            return Err(err(init_line.number, col, format!("state `{name}` listed twice")));
        }
        init[q] = w;
    }

    let mut acceptance = None;
    if let Some(l) = ls.iter().find(|l| l.key == "acceptance") {
        header(&ls, "acceptance", end)?;
        let Some(&(kcol, kind)) = l.tokens.first() else {
            return Err(err(l.number, l.key.len() + 2, "missing acceptance kind"));
        };
        let rest = &l.tokens[1..];
        acceptance = Some(if kind == "parity" {
            let mut pri: Vec<Option<u32>> = vec![None; n];
            for &(col, t) in rest {
                let (name, v) = t
                    .split_once('=')
                    .ok_or_else(|| err(l.number, col, "expected `state=priority`"))?;
                let q = lookup(&sidx, l.number, col, name, "state")?;
                let v: u32 = v
                    .parse()
                    .ok()
                    .filter(|&v| v < 255)
                    .ok_or_else(|| err(l.number, col, format!("bad priority `{v}`")))?;
                if pri[q].replace(v).is_some() {
                    return Err(err(l.number, col, format!("state `{name}` listed twice")));
                }
            }
            if let Some(q) = pri.iter().position(Option::is_none) {
                return Err(err(l.number, 1, format!("no priority for state `{}`", states[q])));
            }
            Acceptance::Parity(pri.into_iter().map(Option::unwrap).collect())
        } else {
            let mut f = StateSet::EMPTY;
            for &(col, t) in rest {
                f.insert(lookup(&sidx, l.number, col, t, "state")?);
            }
            match kind {
                "safety" => Acceptance::Safety(f),
                "reach" | "reachability" => Acceptance::Reachability(f),
                "buchi" => Acceptance::Buchi(f),
                "cobuchi" => Acceptance::CoBuchi(f),
                _ => return Err(err(l.number, kcol, format!("unknown acceptance kind `{kind}`"))),
            }
        });
    }

    let mut matrices = vec![Matrix::zeros(n); letters.len()];
    let mut seen = vec![vec![StateSet::EMPTY; n]; letters.len()];
    for l in ls.iter().filter(|l| l.key == "trans") {
        if l.tokens.len() != 4 {
            return Err(err(l.number, 1, "expected `trans: src letter dst prob`"));
        }
        let (c0, src) = l.tokens[0];
        let (c1, letter) = l.tokens[1];
        let (c2, dst) = l.tokens[2];
        let (c3, p) = l.tokens[3];
        let q = lookup(&sidx, l.number, c0, src, "state")?;
        let a = lookup(&lidx, l.number, c1, letter, "letter")?;
        let r = lookup(&sidx, l.number, c2, dst, "state")?;
        let p = parse_prob(p).ok_or_else(|| err(l.number, c3, format!("bad probability `{p}`")))?;
        if !p.is_positive() || p > prob::one() {
            return Err(err(l.number, c3, "transition probability must lie in (0, 1]"));
        }
        if seen[a][q].contains(r) {
            return Err(err(l.number, c0, format!("duplicate transition {src} {letter} {dst}")));
        }
        seen[a][q].insert(r);
        matrices[a].set(q, r, p);
    }

    Automaton::new(states, letters, matrices, Distribution { weights: init }, acceptance)
}

pub fn write_automaton(a: &Automaton) -> String {
    let mut out = String::new();
    let st = a.states();
    writeln!(out, "states: {}", st.join(" ")).unwrap();
    writeln!(out, "alphabet: {}", a.letters().join(" ")).unwrap();
    let init: Vec<String> = a
        .initial()
        .weights
        .iter()
        .enumerate()
        .filter(|(_, w)| !w.is_zero())
        .map(|(q, w)| format!("{}={}", st[q], w))
        .collect();
    writeln!(out, "init: {}", init.join(" ")).unwrap();
    match a.acceptance() {
        Some(Acceptance::Parity(p)) => {
            let items: Vec<String> = p.iter().enumerate().map(|(q, v)| format!("{}={v}", st[q])).collect();
            writeln!(out, "acceptance: parity {}", items.join(" ")).unwrap();
        }
        Some(acc @ (Acceptance::Safety(f) | Acceptance::Reachability(f) | Acceptance::Buchi(f) | Acceptance::CoBuchi(f))) => {
            let mut line = format!("acceptance: {}", acc.kind());
            for q in *f {
                line.push(' ');
                line.push_str(&st[q]);
            }
            writeln!(out, "{line}").unwrap();
        }
        None => {}
    }
    for q in 0..a.num_states() {
        for (li, letter) in a.letters().iter().enumerate() {
            for (r, p) in a.matrix(li).row(q).iter().enumerate() {
                if !p.is_zero() {
                    writeln!(out, "trans: {} {} {} {}", st[q], letter, st[r], p).unwrap();
                }
            }
        }
    }
    out
}

pub fn parse_dfa(text: &str) -> Result<Dfa> {
    let ls = lines(text)?;
    let end = text.lines().count() + 1;
    for l in &ls {
        if !matches!(l.key, "states" | "alphabet" | "init" | "accept" | "trans") {
            return Err(err(l.number, 1, format!("unknown key `{}`", l.key)));
        }
    }
    let (states, sidx) = names(header(&ls, "states", end)?, "state")?;
    let (letters, lidx) = names(header(&ls, "alphabet", end)?, "letter")?;
    let il = header(&ls, "init", end)?;
    if il.tokens.len() != 1 {
        return Err(err(il.number, 1, "expected exactly one initial state"));
    }
    let init = lookup(&sidx, il.number, il.tokens[0].0, il.tokens[0].1, "state")?;
    let mut accepting = StateSet::EMPTY;
    if let Some(l) = ls.iter().find(|l| l.key == "accept") {
        header(&ls, "accept", end)?;
        for &(col, t) in &l.tokens {
            accepting.insert(lookup(&sidx, l.number, col, t, "state")?);
        }
    }
    let mut delta: Vec<Vec<Option<usize>>> = vec![vec![None; letters.len()]; states.len()];
    for l in ls.iter().filter(|l| l.key == "trans") {
        if l.tokens.len() != 3 {
            return Err(err(l.number, 1, "expected `trans: src letter dst`"));
        }
        let q = lookup(&sidx, l.number, l.tokens[0].0, l.tokens[0].1, "state")?;
        let a = lookup(&lidx, l.number, l.tokens[1].0, l.tokens[1].1, "letter")?;
        let r = lookup(&sidx, l.number, l.tokens[2].0, l.tokens[2].1, "state")?;
        if delta[q][a].replace(r).is_some() {
            return Err(err(l.number, l.tokens[0].0, "nondeterministic transition"));
        }
    }
    let mut total = Vec::with_capacity(states.len());
    for (q, row) in delta.into_iter().enumerate() {
        let mut out = Vec::with_capacity(letters.len());
        for (a, t) in row.into_iter().enumerate() {
            out.push(t.ok_or_else(|| {
                err(end, 1, format!("missing transition from {} on {}", states[q], letters[a]))
            })?);
        }
        total.push(out);
    }
    Dfa::new(states, letters, init, accepting, total)
}

pub fn write_dfa(d: &Dfa) -> String {
    let mut out = String::new();
    writeln!(out, "states: {}", d.states.join(" ")).unwrap();
    writeln!(out, "alphabet: {}", d.letters.join(" ")).unwrap();
    writeln!(out, "init: {}", d.states[d.init]).unwrap();
    let acc: Vec<&str> = d.accepting.iter().map(|q| d.states[q].as_str()).collect();
    writeln!(out, "accept: {}", acc.join(" ")).unwrap();
    for (q, row) in d.delta.iter().enumerate() {
        for (a, &r) in row.iter().enumerate() {
            writeln!(out, "trans: {} {} {}", d.states[q], d.letters[a], d.states[r]).unwrap();
        }
    }
    out
}
