//! PD text format.
//!
//! ```text
//! document := ws [ "PD" ws "[" ws items ws "]" | items ] ws
//! items    := [ item { sep item } ]
//! item     := "X" ws "[" ws int ws "," ws int ws "," ws int ws "," ws int ws "]"
//!           | "Loop" ws "[" ws int ws "]"
//! sep      := ws [ "," ws ]
//! int      := digit { digit }          (1 ..= 4294967295)
//! ws       := { " " | "\t" | "\r" | "\n" | comment }
//! comment  := "#" { any char except "\n" }
//! ```
//!
//! `X[a,b,c,d]` lists edge labels counterclockwise starting with the incoming
//! under-strand. `Loop[k]` is a crossingless component. Serialization writes
//! the canonical relabeling as `X[..]` items separated by single spaces,
//! followed by `Loop[..]` items, with no trailing newline.

use super::{Crossing, DiagramError, LinkDiagram, Result};

struct Cursor<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(DiagramError::Syntax { pos: self.pos, msg: msg.into() })
    }

    fn ws(&mut self) {
        while self.pos < self.src.len() {
            match self.src[self.pos] {
                b' ' | b'\t' | b'\r' | b'\n' => self.pos += 1,
                b'#' => {
                    while self.pos < self.src.len() && self.src[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                _ => break,
            }
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, s: &str) -> bool {
        if self.src[self.pos..].starts_with(s.as_bytes()) {
            self.pos += s.len();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn int(&mut self) -> Result<u32> {
        self.ws();
        let start = self.pos;
        while matches!(self.peek(), Some(b'0'..=b'9')) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a positive integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        match text.parse::<u32>() {
            Ok(0) => {
                self.pos = start;
                self.err("edge labels must be positive")
            }
            Ok(v) => Ok(v),
            Err(_) => {
                self.pos = start;
                self.err("edge label does not fit in 32 bits")
            }
        }
    }
}

/// Parses PD text into a validated diagram.
pub fn parse_pd(text: &str) -> Result<LinkDiagram> {
    let mut c = Cursor { src: text.as_bytes(), pos: 0 };
    let mut crossings = Vec::new();
    let mut loops = Vec::new();
    c.ws();
    let wrapped = c.eat("PD");
    if wrapped {
        c.expect(b'[')?;
    }
    loop {
        c.ws();
        if c.eat("Loop") {
            c.expect(b'[')?;
            loops.push(c.int()?);
            c.expect(b']')?;
        } else if c.eat("X") {
            c.expect(b'[')?;
            let mut x = [0u32; 4];
            for (i, slot) in x.iter_mut().enumerate() {
                if i > 0 {
                    c.expect(b',')?;
                }
                *slot = c.int()?;
            }
            c.expect(b']')?;
            crossings.push(Crossing(x));
        } else {
            break;
        }
        c.ws();
        if c.peek() == Some(b',') {
            c.pos += 1;
        }
    }
    if wrapped {
        c.expect(b']')?;
    }
    c.ws();
    if c.pos != c.src.len() {
        return c.err("expected 'X[', 'Loop[' or end of input");
    }
    LinkDiagram::from_pd(crossings, loops, None)
}

/// Writes the canonical PD text of `d`.
pub fn serialize_pd(d: &LinkDiagram) -> String {
    let d = d.canonical();
    let mut items: Vec<String> =
        d.crossings().iter().map(|x| format!("X[{},{},{},{}]", x.0[0], x.0[1], x.0[2], x.0[3])).collect();
    for (i, comp) in d.components().iter().enumerate() {
        if d.is_loop(i) {
            items.push(format!("Loop[{}]", comp.arcs[0]));
        }
    }
    items.join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_text_is_empty_diagram() {
        let d = parse_pd("").unwrap();
        assert_eq!(d.num_components(), 0);
        assert_eq!(serialize_pd(&d), "");
        assert_eq!(parse_pd("  # nothing\n").unwrap().num_components(), 0);
    }

    #[test]
    fn hopf_parses_and_serializes() {
        let d = parse_pd("X[1,3,2,4] X[3,1,4,2]").unwrap();
        assert_eq!(d.num_components(), 2);
        assert_eq!(d.num_crossings(), 2);
        assert_eq!(serialize_pd(&d), "X[1,3,2,4] X[3,1,4,2]");
    }

    #[test]
    fn wrapped_and_comma_separated() {
        let d = parse_pd("PD[X[1,5,2,4], X[3,1,4,6], X[5,3,6,2]]").unwrap();
        assert_eq!(d.num_crossings(), 3);
        let e = parse_pd("X[ 1 , 5 , 2 , 4 ]\nX[3,1,4,6]\n# c\nX[5,3,6,2]").unwrap();
        assert_eq!(d, e);
    }

    #[test]
    fn loops() {
        let d = parse_pd("Loop[7] Loop[2]").unwrap();
        assert_eq!(d.num_components(), 2);
        assert_eq!(serialize_pd(&d), "Loop[1] Loop[2]");
    }

    #[test]
    fn syntax_errors_report_position() {
        match parse_pd("X[1,2,3]") {
            Err(DiagramError::Syntax { pos, .. }) => assert_eq!(pos, 7),
            other => panic!("{other:?}"),
        }
        match parse_pd("X[1,3,2,4] Y") {
            Err(DiagramError::Syntax { pos, .. }) => assert_eq!(pos, 11),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse_pd("X[0,1,1,2]"), Err(DiagramError::Syntax { pos: 2, .. })));
        assert!(matches!(parse_pd("PD[X[1,3,2,4] X[3,1,4,2]"), Err(DiagramError::Syntax { .. })));
    }

    #[test]
    fn validation_errors() {
        assert!(matches!(parse_pd("X[1,3,2,4] X[3,1,4,5]"), Err(DiagramError::ArcMultiplicity { .. })));
        // edge 1 enters both crossings as the under-strand
        assert!(matches!(parse_pd("X[1,3,2,4] X[1,4,2,3]"), Err(DiagramError::NonCyclic { .. })));
    }
}
