//! Fixtures shared by the benchmarks.

use qpa_core::format::parse_automaton;
use qpa_core::Automaton;

pub const EX1: &str = "states: s t u\nalphabet: a b\ninit: s=1\nacceptance: parity s=1 t=1 u=0\n\
    trans: s a s 1/2\ntrans: s a t 1/2\ntrans: s b s 1\n\
    trans: t a s 1/2\ntrans: t a u 1/2\ntrans: t b u 1\n\
    trans: u a t 1\ntrans: u b t 1\n";

pub const EX2: &str = "states: 1 2 3 4\nalphabet: a b\ninit: 1=1\nacceptance: reach 4\n\
    trans: 1 a 1 1/2\ntrans: 1 a 3 1/2\ntrans: 1 b 2 1\n\
    trans: 2 a 2 1\ntrans: 2 b 2 1\n\
    trans: 3 a 3 1\ntrans: 3 b 1 1/2\ntrans: 3 b 4 1/2\n\
    trans: 4 a 4 1\ntrans: 4 b 4 1\n";

pub fn ex1() -> Automaton {
    parse_automaton(EX1).expect("fixture parses")
}

pub fn ex2() -> Automaton {
    parse_automaton(EX2).expect("fixture parses")
}
