"""Lexer with a simplified offside rule.

Layout, instead of full Haskell 2010 rules:
  * a top-level definition starts at column 1; more-indented lines continue it;
  * `where`, `let` and `of` open a block aligned on the column of the first
    token that follows; lines at that column separate entries, lines further
    left close the block;
  * `in` closes the innermost open block, and a `)` or `]` closes any blocks
    opened inside its brackets (so inline `case ... of` works in parens);
  * explicit `;` is also accepted as an entry separator.

Virtual tokens are emitted as `{`, `;`, `}` so the parser sees one shape.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import LexError, Pos, Span

KEYWORDS = {
    "let", "in", "where", "data", "type", "case", "of", "if", "then", "else",
}
LAYOUT_KEYWORDS = {"where", "let", "of"}
SYMBOL_CHARS = set("!#$%&*+./<=>?@\\^|-~:")
RESERVED_OPS = {"=", "|", "::", "->", "<-", "\\", "..", "@", "~", "=>"}
UNSUPPORTED_OPS = {"@", "~", "=>"}

# kinds: varid conid int char string varsym keyword text, plus punctuation
# kinds equal to their own text: ( ) [ ] , ; { }


@dataclass(frozen=True)
class Token:
    kind: str
    value: object
    line: int
    col: int
    end_line: int = 0
    end_col: int = 0
    virtual: bool = False

    @property
    def pos(self) -> Pos:
        return Pos(self.line, self.col)

    @property
    def span(self) -> Span:
        end = Pos(self.end_line or self.line, self.end_col or self.col)
        return Span(self.pos, end)


_ESCAPES = {"n": "\n", "t": "\t", "\\": "\\", "'": "'", '"': '"', "0": "\0", "r": "\r"}


class _Scanner:
    def __init__(self, source: str):
        self.src = source
        self.pos = 0
        self.line = 1
        self.col = 1

    def error(self, message: str) -> LexError:
        return LexError(message, Span.point(self.line, self.col))

    def peek(self, k: int = 0) -> str:
        i = self.pos + k
        return self.src[i] if i < len(self.src) else ""

    def advance(self) -> str:
        c = self.src[self.pos]
        self.pos += 1
        if c == "\n":
            self.line += 1
            self.col = 1
        else:
            self.col += 1
        return c

    def tokens(self) -> list[Token]:
        out: list[Token] = []
        while True:
            self._skip_space_and_comments()
            if self.pos >= len(self.src):
                return out
            out.append(self._token())

    def _skip_space_and_comments(self) -> None:
        while self.pos < len(self.src):
            c = self.peek()
            if c in " \t\n\r":
                self.advance()
            elif c == "-" and self.peek(1) == "-" and self._dashes_only():
                while self.pos < len(self.src) and self.peek() != "\n":
                    self.advance()
            elif c == "{" and self.peek(1) == "-":
                self._skip_block_comment()
            else:
                return

    def _dashes_only(self) -> bool:
        # `--` starts a comment only when the symbol run is all dashes
        k = 0
        while self.peek(k) in SYMBOL_CHARS and self.peek(k) != "":
            if self.peek(k) != "-":
                return False
            k += 1
        return True

    def _skip_block_comment(self) -> None:
        start = (self.line, self.col)
        self.advance()
        self.advance()
        depth = 1
        while depth > 0:
            if self.pos >= len(self.src):
                raise LexError("unterminated block comment", Span.point(*start))
            if self.peek() == "{" and self.peek(1) == "-":
                self.advance(); self.advance()
                depth += 1
            elif self.peek() == "-" and self.peek(1) == "}":
                self.advance(); self.advance()
                depth -= 1
            else:
                self.advance()

    def _token(self) -> Token:
        line, col = self.line, self.col
        c = self.peek()

        def tok(kind: str, value: object) -> Token:
            return Token(kind, value, line, col, self.line, self.col)

        if c.isdigit():
            text = ""
            while self.peek().isdigit():
                text += self.advance()
            return tok("int", int(text))
        if c.isalpha() or c == "_":
            text = ""
            while self.peek().isalnum() or self.peek() in ("_", "'"):
                text += self.advance()
            if text == "_":
                return tok("_", "_")
            if text in KEYWORDS:
                return tok(text, text)
            kind = "conid" if text[0].isupper() else "varid"
            return tok(kind, text)
        if c == "'":
            return self._char(line, col)
        if c == '"':
            return self._string(line, col)
        if c in "()[],;":
            self.advance()
            return tok(c, c)
        if c == "`":
            raise self.error("backquoted operators are not supported")
        if c == "{" or c == "}":
            raise self.error(f"illegal character {c!r}")
        if c in SYMBOL_CHARS:
            text = ""
            while self.peek() in SYMBOL_CHARS:
                text += self.advance()
            if text in UNSUPPORTED_OPS:
                raise LexError(f"{text} patterns are not supported",
                               Span.point(line, col))
            if text in RESERVED_OPS:
                return tok(text, text)
            return tok("varsym", text)
        raise self.error(f"illegal character {c!r}")

    def _escape(self) -> str:
        self.advance()  # backslash
        e = self.peek()
        if e in _ESCAPES:
            self.advance()
            return _ESCAPES[e]
        raise self.error(f"unknown escape \\{e}")

    def _char(self, line: int, col: int) -> Token:
        self.advance()
        if self.pos >= len(self.src) or self.peek() == "\n":
            raise LexError("unterminated character literal", Span.point(line, col))
        value = self._escape() if self.peek() == "\\" else self.advance()
        if self.peek() != "'":
            raise LexError("unterminated character literal", Span.point(line, col))
        self.advance()
        return Token("char", value, line, col, self.line, self.col)

    def _string(self, line: int, col: int) -> Token:
        self.advance()
        chars: list[str] = []
        while True:
            if self.pos >= len(self.src) or self.peek() == "\n":
                raise LexError("unterminated string literal", Span.point(line, col))
            if self.peek() == '"':
                self.advance()
                return Token("string", "".join(chars), line, col, self.line, self.col)
            chars.append(self._escape() if self.peek() == "\\" else self.advance())


@dataclass
class _Ctx:
    col: int
    depth: int  # bracket depth at which the block was opened


def _virtual(kind: str, at: Token) -> Token:
    return Token(kind, kind, at.line, at.col, at.line, at.col, virtual=True)


def layout(tokens: list[Token], top_level: bool = True) -> list[Token]:
    """Insert virtual `{` `;` `}` per the simplified offside rule."""
    out: list[Token] = []
    stack: list[_Ctx] = []
    depth = 0
    expect_open = top_level
    prev_line = -1
    for t in tokens:
        if expect_open:
            expect_open = False
            if stack and t.col <= stack[-1].col and stack[-1].depth == depth:
                # block would not be indented past its parent: empty block
                out.append(_virtual("{", t))
                out.append(_virtual("}", t))
            else:
                stack.append(_Ctx(t.col, depth))
                out.append(_virtual("{", t))
                prev_line = t.line
        if t.line != prev_line:
            prev_line = t.line
            while stack and t.col < stack[-1].col and stack[-1].depth == depth:
                out.append(_virtual("}", t))
                stack.pop()
            if stack and t.col == stack[-1].col and stack[-1].depth == depth:
                out.append(_virtual(";", t))
        if t.kind == "in":
            if stack:
                out.append(_virtual("}", t))
                stack.pop()
            out.append(t)
            continue
        if t.kind in (")", "]"):
            while stack and stack[-1].depth == depth:
                out.append(_virtual("}", t))
                stack.pop()
            depth -= 1
            out.append(t)
            continue
        if t.kind in ("(", "["):
            depth += 1
            out.append(t)
            continue
        out.append(t)
        if t.kind in LAYOUT_KEYWORDS:
            expect_open = True
    if tokens:
        last = tokens[-1]
        closer = Token("}", "}", last.end_line, last.end_col, virtual=True)
        for _ in stack:
            out.append(closer)
    return out


def lex(source: str, top_level: bool = True) -> list[Token]:
    """Tokenize and apply layout. Raises LexError with a position."""
    return layout(_Scanner(source).tokens(), top_level=top_level)


def lex_raw(source: str) -> list[Token]:
    """Tokenize without layout (tests and tooling)."""
    return _Scanner(source).tokens()
