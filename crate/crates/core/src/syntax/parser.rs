//! Recursive-descent parser for mini-GRINGO text.

use alloc::vec::Vec;

use num_bigint::BigInt;

use super::{
    Atom, BinOp, BodyElem, Comparison, Head, Literal, PTerm, ParseError, Program, Rule, Sign,
};
use crate::lexer::{tokenize, Cursor, Tok};
use crate::precomputed::{Precomputed, Relation};

pub fn parse_program(text: &str) -> Result<Program, ParseError> {
    let mut cur = Cursor::new(tokenize(text)?);
    let mut rules = Vec::new();
    while *cur.peek() != Tok::Eof {
        rules.push(rule(&mut cur)?);
    }
    Ok(Program { rules })
}

pub fn parse_rule(text: &str) -> Result<Rule, ParseError> {
    let mut cur = Cursor::new(tokenize(text)?);
    let r = rule(&mut cur)?;
    cur.expect(&Tok::Eof)?;
    Ok(r)
}

pub fn parse_term(text: &str) -> Result<PTerm, ParseError> {
    let mut cur = Cursor::new(tokenize(text)?);
    let t = term(&mut cur)?;
    cur.expect(&Tok::Eof)?;
    Ok(t)
}

fn rule(cur: &mut Cursor) -> Result<Rule, ParseError> {
    let head = match cur.peek() {
        Tok::If => Head::Empty,
        Tok::LBrace => {
            cur.bump();
            let a = atom(cur)?;
            cur.expect(&Tok::RBrace)?;
            Head::Choice(a)
        }
        Tok::Ident(w) if w != "not" => Head::Basic(atom(cur)?),
        _ => return Err(cur.error(&["atom", "{", ":-"])),
    };
    let mut body = Vec::new();
    if cur.eat(&Tok::If) {
        if !(head == Head::Empty && *cur.peek() == Tok::Dot) {
            body.push(body_elem(cur)?);
            while cur.eat(&Tok::Comma) {
                body.push(body_elem(cur)?);
            }
        }
    } else if head == Head::Empty {
        return Err(cur.error(&[":-"]));
    }
    if *cur.peek() != Tok::Dot {
        return Err(cur.error(if body.is_empty() && head != Head::Empty {
            &[":-", "."]
        } else {
            &[",", "."]
        }));
    }
    cur.bump();
    Ok(Rule { head, body })
}

fn atom(cur: &mut Cursor) -> Result<Atom, ParseError> {
    let predicate = match cur.peek() {
        Tok::Ident(w) if w != "not" => w.clone(),
        _ => return Err(cur.error(&["atom"])),
    };
    cur.bump();
    let mut args = Vec::new();
    if cur.eat(&Tok::LParen) {
        args.push(term(cur)?);
        while cur.eat(&Tok::Comma) {
            args.push(term(cur)?);
        }
        cur.expect(&Tok::RParen)?;
    }
    Ok(Atom { predicate, args })
}

fn relation(tok: &Tok) -> Option<Relation> {
    Some(match tok {
        Tok::Eq => Relation::Eq,
        Tok::Ne => Relation::Ne,
        Tok::Lt => Relation::Lt,
        Tok::Gt => Relation::Gt,
        Tok::Le => Relation::Le,
        Tok::Ge => Relation::Ge,
        _ => return None,
    })
}

fn body_elem(cur: &mut Cursor) -> Result<BodyElem, ParseError> {
    if cur.eat_ident("not") {
        let sign = if cur.eat_ident("not") {
            Sign::DoubleNegated
        } else {
            Sign::Negated
        };
        return Ok(BodyElem::Literal(Literal {
            sign,
            atom: atom(cur)?,
        }));
    }
    if matches!(cur.peek(), Tok::Ident(_)) && *cur.peek_at(1) == Tok::LParen {
        return Ok(BodyElem::Literal(Literal {
            sign: Sign::Positive,
            atom: atom(cur)?,
        }));
    }
    let lhs = term(cur)?;
    if let Some(rel) = relation(cur.peek()) {
        cur.bump();
        let rhs = term(cur)?;
        return Ok(BodyElem::Comparison(Comparison { lhs, rel, rhs }));
    }
    match lhs {
        PTerm::Precomputed(Precomputed::Symbol(name)) => Ok(BodyElem::Literal(Literal {
            sign: Sign::Positive,
            atom: Atom {
                predicate: name,
                args: Vec::new(),
            },
        })),
        _ => Err(cur.error(&["=", "!=", "<", ">", "<=", ">="])),
    }
}

pub(crate) fn term(cur: &mut Cursor) -> Result<PTerm, ParseError> {
    let mut lhs = additive(cur)?;
    while cur.eat(&Tok::DotDot) {
        let rhs = additive(cur)?;
        lhs = PTerm::bin(BinOp::Interval, lhs, rhs);
    }
    Ok(lhs)
}

fn additive(cur: &mut Cursor) -> Result<PTerm, ParseError> {
    let mut lhs = multiplicative(cur)?;
    loop {
        let op = match cur.peek() {
            Tok::Plus => BinOp::Add,
            Tok::Minus => BinOp::Sub,
            _ => return Ok(lhs),
        };
        cur.bump();
        let rhs = multiplicative(cur)?;
        lhs = PTerm::bin(op, lhs, rhs);
    }
}

fn multiplicative(cur: &mut Cursor) -> Result<PTerm, ParseError> {
    let mut lhs = unary(cur)?;
    loop {
        let op = match cur.peek() {
            Tok::Star => BinOp::Mul,
            Tok::Slash => BinOp::Div,
            Tok::Backslash => BinOp::Mod,
            _ => return Ok(lhs),
        };
        cur.bump();
        let rhs = unary(cur)?;
        lhs = PTerm::bin(op, lhs, rhs);
    }
}

fn unary(cur: &mut Cursor) -> Result<PTerm, ParseError> {
    if cur.eat(&Tok::Minus) {
        // `-3` is a numeral; `-T` for any other term means `0-T`.
        return Ok(match unary(cur)? {
            PTerm::Precomputed(Precomputed::Numeral(n)) => PTerm::num(-n),
            t => PTerm::bin(BinOp::Sub, PTerm::num(BigInt::from(0)), t),
        });
    }
    primary(cur)
}

fn primary(cur: &mut Cursor) -> Result<PTerm, ParseError> {
    let t = match cur.peek().clone() {
        Tok::Number(n) => PTerm::num(n),
        Tok::Ident(w) if w != "not" && *cur.peek_at(1) != Tok::LParen => PTerm::sym(w),
        Tok::Var(v) => PTerm::var(v),
        Tok::Hash(h) if h == "inf" => PTerm::Precomputed(Precomputed::Inf),
        Tok::Hash(h) if h == "sup" => PTerm::Precomputed(Precomputed::Sup),
        Tok::LParen => {
            cur.bump();
            let t = term(cur)?;
            cur.expect(&Tok::RParen)?;
            return Ok(t);
        }
        _ => return Err(cur.error(&["term"])),
    };
    cur.bump();
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    #[test]
    fn choice_rule_with_arithmetic() {
        let p = parse_program("{q(X)} :- p(X+1).").unwrap();
        assert_eq!(p.rules.len(), 1);
        let r = &p.rules[0];
        assert_eq!(
            r.head,
            Head::Choice(Atom::new("q", alloc::vec![PTerm::var("X")]))
        );
        assert_eq!(
            r.body,
            alloc::vec![BodyElem::Literal(Literal {
                sign: Sign::Positive,
                atom: Atom::new(
                    "p",
                    alloc::vec![PTerm::bin(BinOp::Add, PTerm::var("X"), PTerm::num(1))]
                ),
            })]
        );
    }

    #[test]
    fn rule_with_two_interval_comparisons() {
        let r = parse_rule("p(X,Y) :- X = 1..2, Y = 1..2.").unwrap();
        assert_eq!(r.body.len(), 2);
        for b in &r.body {
            match b {
                BodyElem::Comparison(c) => {
                    assert_eq!(c.rel, Relation::Eq);
                    assert_eq!(
                        c.rhs,
                        PTerm::bin(BinOp::Interval, PTerm::num(1), PTerm::num(2))
                    );
                }
                other => panic!("expected comparison, got {other:?}"),
            }
        }
    }

    #[test]
    fn empty_program() {
        assert!(parse_program("").unwrap().rules.is_empty());
        assert!(parse_program("  % only a comment\n")
            .unwrap()
            .rules
            .is_empty());
    }

    #[test]
    fn heads_and_negation() {
        let p = parse_program("p(0).\n:- p(X), not q(X).\nq :- not not r, a < b.\n:- .\n").unwrap();
        assert_eq!(p.rules.len(), 4);
        assert!(p.rules[1].is_constraint());
        assert!(p.rules[3].is_constraint() && p.rules[3].body.is_empty());
        match &p.rules[2].body[0] {
            BodyElem::Literal(l) => assert_eq!(l.sign, Sign::DoubleNegated),
            _ => panic!(),
        }
        match &p.rules[2].body[1] {
            BodyElem::Comparison(c) => assert_eq!(c.lhs, PTerm::sym("a")),
            _ => panic!(),
        }
    }

    #[test]
    fn precedence() {
        let t = parse_term("1..2+3*X").unwrap();
        assert_eq!(t.to_string(), "1..2+3*X");
        match t {
            PTerm::BinOp {
                op: BinOp::Interval,
                rhs,
                ..
            } => match *rhs {
                PTerm::BinOp { op: BinOp::Add, .. } => {}
                other => panic!("{other:?}"),
            },
            other => panic!("{other:?}"),
        }
        assert_eq!(parse_term("(1..3)..4").unwrap().to_string(), "(1..3)..4");
        assert_eq!(parse_term("X-(Y-1)").unwrap().to_string(), "X-(Y-1)");
        assert_eq!(parse_term("-3").unwrap(), PTerm::num(-3));
        assert_eq!(parse_term("3 - -4").unwrap().to_string(), "3--4");
        assert_eq!(
            parse_term("-X").unwrap(),
            PTerm::bin(BinOp::Sub, PTerm::num(0), PTerm::var("X"))
        );
        assert_eq!(
            parse_term("#inf").unwrap(),
            PTerm::Precomputed(Precomputed::Inf)
        );
    }

    #[test]
    fn syntax_errors_carry_position_and_expectation() {
        let e = parse_program("p(X) :- q(X)\nr.").unwrap_err();
        assert_eq!((e.line, e.column), (2, 1));
        assert!(e.expected.iter().any(|x| x == "`.`"));

        let e = parse_program("p(X) :- X.").unwrap_err();
        assert_eq!(e.line, 1);
        assert!(e.expected.iter().any(|x| x == "`<=`"));

        assert!(parse_program("p(X) :- .").is_err());
        assert!(parse_program("p(f(X)).").is_err());
        assert!(parse_program("not p.").is_err());
    }

    #[test]
    fn program_equality_is_set_equality() {
        let a = parse_program("p. q :- p. p.").unwrap();
        let b = parse_program("q :- p. p.").unwrap();
        assert_eq!(a, b);
        assert_ne!(a, parse_program("q :- p.").unwrap());
    }
}
