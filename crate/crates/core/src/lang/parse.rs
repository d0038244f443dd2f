//! Recursive-descent parser for the `.loop` syntax.
//!
//! ```text
//! seq    := stmt (';' stmt)* ';'?
//! stmt   := 'skip' | VAR ':=' expr | 'loop' expr '{' seq '}'
//!         | 'choose' '{' seq '}' 'or' '{' seq '}'
//! expr   := term ('+' term)*
//! term   := atom ('*' atom)*
//! atom   := VAR | '(' expr ')'
//! ```

use super::ast::{Command, Expr, Program};
use super::LangError;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Var(usize),
    Skip,
    Loop,
    Choose,
    Or,
    Assign,
    Plus,
    Star,
    LParen,
    RParen,
    LBrace,
    RBrace,
    Semi,
    Eof,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Var(i) => format!("`X{i}`"),
            Tok::Skip => "`skip`".into(),
            Tok::Loop => "`loop`".into(),
            Tok::Choose => "`choose`".into(),
            Tok::Or => "`or`".into(),
            Tok::Assign => "`:=`".into(),
            Tok::Plus => "`+`".into(),
            Tok::Star => "`*`".into(),
            Tok::LParen => "`(`".into(),
            Tok::RParen => "`)`".into(),
            Tok::LBrace => "`{`".into(),
            Tok::RBrace => "`}`".into(),
            Tok::Semi => "`;`".into(),
            Tok::Eof => "end of input".into(),
        }
    }
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn syntax(line: usize, col: usize, msg: impl Into<String>) -> LangError {
    LangError::Syntax {
        line,
        col,
        msg: msg.into(),
    }
}

fn lex(src: &str) -> Result<Vec<Spanned>, LangError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        let mut push = |tok: Tok| out.push(Spanned { tok, line: l0, col: c0 });
        match c {
            '\n' => {
                i += 1;
                line += 1;
                col = 1;
                continue;
            }
            c if c.is_whitespace() => {
                i += 1;
                col += 1;
                continue;
            }
            '#' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            '+' => push(Tok::Plus),
            '*' => push(Tok::Star),
            '(' => push(Tok::LParen),
            ')' => push(Tok::RParen),
            '{' => push(Tok::LBrace),
            '}' => push(Tok::RBrace),
            ';' => push(Tok::Semi),
            ':' => {
                if chars.get(i + 1) != Some(&'=') {
                    return Err(syntax(l0, c0, "expected `:=`"));
                }
                push(Tok::Assign);
                i += 2;
                col += 2;
                continue;
            }
            c if c.is_ascii_alphabetic() => {
                let start = i;
                while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                    i += 1;
                }
                let word: String = chars[start..i].iter().collect();
                col += i - start;
                let tok = match word.as_str() {
                    "skip" => Tok::Skip,
                    "loop" => Tok::Loop,
                    "choose" => Tok::Choose,
                    "or" => Tok::Or,
                    w => {
                        let idx = w
                            .strip_prefix('X')
                            .or_else(|| w.strip_prefix('x'))
                            .filter(|d| !d.is_empty() && d.bytes().all(|b| b.is_ascii_digit()))
                            .and_then(|d| d.parse::<usize>().ok());
                        match idx {
                            Some(k) if k >= 1 => Tok::Var(k),
                            Some(_) => {
                                return Err(syntax(l0, c0, "variable indices start at 1"))
                            }
                            None => return Err(syntax(l0, c0, format!("unknown word `{w}`"))),
                        }
                    }
                };
                out.push(Spanned { tok, line: l0, col: c0 });
                continue;
            }
            other => return Err(syntax(l0, c0, format!("unexpected character `{other}`"))),
        }
        i += 1;
        col += 1;
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, msg: impl Into<String>) -> LangError {
        let s = &self.toks[self.pos];
        syntax(s.line, s.col, msg)
    }

    fn expect(&mut self, want: Tok) -> Result<(), LangError> {
        if *self.peek() == want {
            self.bump();
            Ok(())
        } else {
            Err(self.error(format!(
                "expected {}, found {}",
                want.describe(),
                self.peek().describe()
            )))
        }
    }

    fn seq(&mut self) -> Result<Command, LangError> {
        let mut stmts = vec![self.stmt()?];
        while *self.peek() == Tok::Semi {
            self.bump();
            // a trailing `;` before `}` or the end is allowed
            if matches!(self.peek(), Tok::RBrace | Tok::Eof) {
                break;
            }
            stmts.push(self.stmt()?);
        }
        Ok(Command::seq_all(stmts))
    }

    fn block(&mut self) -> Result<Command, LangError> {
        self.expect(Tok::LBrace)?;
        let body = self.seq()?;
        self.expect(Tok::RBrace)?;
        Ok(body)
    }

    fn stmt(&mut self) -> Result<Command, LangError> {
        match self.peek().clone() {
            Tok::Skip => {
                self.bump();
                Ok(Command::Skip)
            }
            Tok::Var(t) => {
                self.bump();
                self.expect(Tok::Assign)?;
                Ok(Command::Assign(t, self.expr()?))
            }
            Tok::Loop => {
                self.bump();
                let bound = self.expr()?;
                let body = self.block()?;
                Ok(Command::looping(bound, body))
            }
            Tok::Choose => {
                self.bump();
                let left = self.block()?;
                self.expect(Tok::Or)?;
                let right = self.block()?;
                Ok(Command::choose(left, right))
            }
            other => Err(self.error(format!("expected a command, found {}", other.describe()))),
        }
    }

    fn expr(&mut self) -> Result<Expr, LangError> {
        let mut acc = self.term()?;
        while *self.peek() == Tok::Plus {
            self.bump();
            acc = Expr::add(acc, self.term()?);
        }
        Ok(acc)
    }

    fn term(&mut self) -> Result<Expr, LangError> {
        let mut acc = self.atom()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = Expr::mul(acc, self.atom()?);
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Expr, LangError> {
        match self.peek().clone() {
            Tok::Var(i) => {
                self.bump();
                Ok(Expr::Var(i))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen)?;
                Ok(e)
            }
            other => Err(self.error(format!(
                "expected a variable or `(`, found {}",
                other.describe()
            ))),
        }
    }
}

/// Reads a `# vars: n` directive from the first line, if present.
fn directive(src: &str) -> Result<Option<usize>, LangError> {
    let first = src.lines().next().unwrap_or("").trim();
    let Some(rest) = first.strip_prefix('#') else {
        return Ok(None);
    };
    let Some(value) = rest.trim().strip_prefix("vars:") else {
        return Ok(None);
    };
    value
        .trim()
        .parse::<usize>()
        .map(Some)
        .map_err(|_| syntax(1, 1, "malformed `# vars:` directive"))
}

pub fn parse(src: &str) -> Result<Program, LangError> {
    let declared = directive(src)?;
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
    };
    let command = p.seq()?;
    if *p.peek() != Tok::Eof {
        return Err(p.error(format!("unexpected {}", p.peek().describe())));
    }
    let used = command.max_var();
    let n = match declared {
        Some(d) if d < used => return Err(LangError::DirectiveTooSmall { declared: d, used }),
        Some(d) => d.max(1),
        None => used.max(1),
    };
    Ok(Program { command, n })
}
