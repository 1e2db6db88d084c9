//! Text form of expressions. Parsing and printing use explicit stacks so
//! that deep expressions do not exhaust the call stack.

use super::{CwdExpression, ExprBuilder, ExprError, Label, NodeId, Op};
use crate::graph::{Sign, Vertex, VertexKind};

#[derive(Debug)]
enum Arg {
    Word(String, usize),
    Node(NodeId),
}

struct Frame {
    name: String,
    pos: usize,
    args: Vec<Arg>,
    expect_arg: bool,
}

struct Lexer<'a> {
    text: &'a str,
    pos: usize,
}

#[derive(Debug, PartialEq)]
enum Token<'a> {
    Word(&'a str),
    Open,
    Close,
    Comma,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        let rest = &self.text[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    /// Next token and its byte offset.
    fn next(&mut self) -> Result<Option<(Token<'a>, usize)>, ExprError> {
        self.skip_ws();
        let start = self.pos;
        let Some(c) = self.text[start..].chars().next() else { return Ok(None) };
        let tok = match c {
            '(' => Token::Open,
            ')' => Token::Close,
            ',' => Token::Comma,
            c if c.is_ascii_alphanumeric() || c == '_' => {
                let len = self.text[start..]
                    .find(|c: char| !(c.is_ascii_alphanumeric() || c == '_'))
                    .unwrap_or(self.text.len() - start);
                self.pos += len;
                return Ok(Some((Token::Word(&self.text[start..start + len]), start)));
            }
            other => return Err(error(self.text, start, format!("unexpected character `{other}`"))),
        };
        self.pos += 1;
        Ok(Some((tok, start)))
    }

    fn peek_is_open(&mut self) -> bool {
        self.skip_ws();
        self.text[self.pos..].starts_with('(')
    }
}

fn error(text: &str, offset: usize, message: impl Into<String>) -> ExprError {
    let before = &text[..offset];
    let line = before.matches('\n').count() + 1;
    let column = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    ExprError::Syntax { line, column, message: message.into() }
}

fn label(text: &str, arg: &Arg) -> Result<Label, ExprError> {
    match arg {
        Arg::Word(w, pos) => match w.parse::<Label>() {
            Ok(0) => Err(ExprError::ZeroLabel),
            Ok(l) => Ok(l),
            Err(_) => Err(error(text, *pos, format!("expected a label, found `{w}`"))),
        },
        Arg::Node(_) => Err(ExprError::Malformed("expected a label, found an expression".into())),
    }
}

fn node(arg: &Arg, text: &str) -> Result<NodeId, ExprError> {
    match arg {
        Arg::Node(n) => Ok(*n),
        Arg::Word(w, pos) => Err(error(text, *pos, format!("expected an expression, found `{w}`"))),
    }
}

fn close(b: &mut ExprBuilder, text: &str, frame: Frame) -> Result<NodeId, ExprError> {
    let args = &frame.args;
    let arity = match frame.name.as_str() {
        "a" | "r" | "oplus" => 2,
        "rho" => 3,
        "eta" => 4,
        other => return Err(error(text, frame.pos, format!("unknown operation `{other}`"))),
    };
    if args.len() != arity {
        return Err(error(text, frame.pos, format!("`{}` takes {arity} arguments, got {}", frame.name, args.len())));
    }
    Ok(match frame.name.as_str() {
        "a" | "r" => {
            let l = label(text, &args[0])?;
            let Arg::Word(name, _) = &args[1] else {
                return Err(error(text, frame.pos, "expected a vertex name"));
            };
            let kind = if frame.name == "a" { VertexKind::Atom } else { VertexKind::Rule };
            b.introduce(l, Vertex { kind, name: name.clone() })
        }
        "oplus" => {
            let (l, r) = (node(&args[0], text)?, node(&args[1], text)?);
            b.union(l, r)
        }
        "rho" => {
            let (from, to) = (label(text, &args[0])?, label(text, &args[1])?);
            let child = node(&args[2], text)?;
            b.relabel(from, to, child)
        }
        _ => {
            let sign = match &args[0] {
                Arg::Word(w, pos) => w.parse::<Sign>().map_err(|e| error(text, *pos, e.to_string()))?,
                Arg::Node(_) => return Err(error(text, frame.pos, "expected a sign")),
            };
            let (i, j) = (label(text, &args[1])?, label(text, &args[2])?);
            if i == j {
                return Err(ExprError::SameLabels(i));
            }
            let child = node(&args[3], text)?;
            b.eta(sign, i, j, child)
        }
    })
}

pub(super) fn parse(text: &str) -> Result<CwdExpression, ExprError> {
    let mut lexer = Lexer { text, pos: 0 };
    let mut b = ExprBuilder::new();
    let mut stack: Vec<Frame> = Vec::new();
    let mut result: Option<NodeId> = None;

    while let Some((tok, pos)) = lexer.next()? {
        if result.is_some() {
            return Err(error(text, pos, "trailing input after expression"));
        }
        match tok {
            Token::Word(w) if lexer.peek_is_open() => {
                if let Some(top) = stack.last_mut() {
                    if !top.expect_arg {
                        return Err(error(text, pos, "expected `,` or `)`"));
                    }
                    top.expect_arg = false;
                }
                lexer.next()?;
                stack.push(Frame { name: w.to_string(), pos, args: Vec::new(), expect_arg: true });
            }
            Token::Word(w) => {
                let Some(top) = stack.last_mut() else {
                    return Err(error(text, pos, format!("expected an operation, found `{w}`")));
                };
                if !top.expect_arg {
                    return Err(error(text, pos, "expected `,` or `)`"));
                }
                top.args.push(Arg::Word(w.to_string(), pos));
                top.expect_arg = false;
            }
            Token::Comma => match stack.last_mut() {
                Some(top) if !top.expect_arg => top.expect_arg = true,
                _ => return Err(error(text, pos, "unexpected `,`")),
            },
            Token::Open => return Err(error(text, pos, "unexpected `(`")),
            Token::Close => {
                let frame = match stack.pop() {
                    Some(f) if !f.expect_arg => f,
                    _ => return Err(error(text, pos, "unexpected `)`")),
                };
                let id = close(&mut b, text, frame)?;
                match stack.last_mut() {
                    Some(parent) => parent.args.push(Arg::Node(id)),
                    None => result = Some(id),
                }
            }
        }
    }
    if !stack.is_empty() {
        return Err(error(text, text.len(), "unexpected end of input"));
    }
    let root = result.ok_or_else(|| error(text, text.len(), "empty expression"))?;
    b.finish(root)
}

pub(super) fn serialize(e: &CwdExpression) -> String {
    let mut out = String::new();
    if e.is_empty() {
        return out;
    }
    enum Step {
        Visit(NodeId),
        Text(&'static str),
    }
    let mut stack = vec![Step::Visit(e.root())];
    while let Some(step) = stack.pop() {
        match step {
            Step::Text(t) => out.push_str(t),
            Step::Visit(id) => match e.op(id) {
                Op::Introduce { .. } => out.push_str(&e.op(id).describe()),
                Op::Union(l, r) => {
                    out.push_str("oplus(");
                    stack.extend([Step::Text(")"), Step::Visit(*r), Step::Text(","), Step::Visit(*l)]);
                }
                Op::Relabel { from, to, child } => {
                    out.push_str(&format!("rho({from},{to},"));
                    stack.extend([Step::Text(")"), Step::Visit(*child)]);
                }
                Op::EdgeInsert { sign, i, j, child } => {
                    out.push_str(&format!("eta({sign},{i},{j},"));
                    stack.extend([Step::Text(")"), Step::Visit(*child)]);
                }
            },
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::super::tests::THREE_EXPR;
    use super::*;

    #[test]
    fn canonical_round_trip() {
        let e = parse(THREE_EXPR).unwrap();
        let text = serialize(&e);
        assert_eq!(
            text,
            "eta(n,3,2,oplus(rho(3,2,eta(p,1,3,oplus(eta(h,1,2,oplus(a(1,x),r(2,r1))),r(3,r2)))),a(3,y)))"
        );
        assert_eq!(parse(&text).unwrap(), e);
    }

    #[test]
    fn single_introduce() {
        let e = parse("a(1,x)").unwrap();
        assert_eq!(e.len(), 1);
        assert_eq!(e.nodes()[0], Op::Introduce { label: 1, vertex: Vertex::atom("x") });
    }

    #[test]
    fn errors() {
        assert_eq!(parse("eta(h,1,1, a(1,x))"), Err(ExprError::SameLabels(1)));
        assert!(matches!(parse("oplus(a(1,x),a(2,x))"), Err(ExprError::DuplicateVertex(_))));
        assert!(parse("oplus(a(1,x),r(2,x))").is_ok());
        for bad in
            ["", "a(1,x", "a(1 x)", "b(1,x)", "a(1,x))", "eta(q,1,2,a(1,x))", "a(x,1)", "rho(1,2)", "a(1,x) a(2,y)"]
        {
            assert!(parse(bad).is_err(), "{bad}");
        }
        assert_eq!(parse("a(0,x)"), Err(ExprError::ZeroLabel));
        match parse("oplus(a(1,x),\n  z(2,y))") {
            Err(ExprError::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn deep_expressions() {
        let mut text = "oplus(".repeat(19_999) + "a(1,v0)";
        for i in 1..20_000 {
            text.push_str(&format!(",a(1,v{i}))"));
        }
        let e = parse(&text).unwrap();
        assert_eq!(e.len(), 2 * 20_000 - 1);
        assert_eq!(serialize(&e), text);
    }
}
