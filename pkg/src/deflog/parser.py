"""Text format for defeasible theories (`.dfl`).

Grammar::

    theory      ::= { statement }
    statement   ::= fact | rule | superiority
    fact        ::= literal "."
    rule        ::= label ":" [ literal { "," literal } ] arrow literal "."
    superiority ::= label ">" label "."
    arrow       ::= "->" | "=>" | "~>"
    literal     ::= [ "~" ] atom
    atom        ::= name [ "(" arg { "," arg } ")" ]

Comments run from ``%`` to the end of the line.  Names and constant
arguments are lowercase-initial identifiers; uppercase-initial identifiers
in argument position are variables, which make the statement a schema.
The strict arrow is ``->``, the defeasible arrow ``=>``, the defeater
arrow ``~>``.

``$`` is reserved for symbols minted by the transformation passes and is
rejected in user input.  Serialized transformed theories can be read back
with ``allow_generated=True``, which extends names with ``$``-segments
(``r4$a+``, ``$ip(r5)``, ``$s+(r5,r4)``) and bracketed instance suffixes
(``r1[platypus]``).
"""

from __future__ import annotations

from dataclasses import dataclass

from .core import (
    Atom,
    DeflogError,
    Literal,
    Rule,
    RuleKind,
    Theory,
    _is_variable,
)

_ARROWS = {
    "->": RuleKind.STRICT,
    "=>": RuleKind.DEFEASIBLE,
    "~>": RuleKind.DEFEATER,
}


class ParseError(DeflogError):
    """Syntax or well-formedness error in a `.dfl` source."""

    def __init__(self, message: str, line: int, col: int):
        super().__init__(f"{line}:{col}: {message}")
        self.line = line
        self.col = col


@dataclass(frozen=True)
class _Token:
    kind: str  # NAME NEG COMMA COLON DOT GT ARROW LPAREN RPAREN EOF
    value: str
    line: int
    col: int


_NAME_START = set("abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ")
_NAME_CHARS = _NAME_START | set("0123456789_")


class _Lexer:
    def __init__(self, text: str, allow_generated: bool):
        self.text = text
        self.allow_generated = allow_generated
        self.pos = 0
        self.line = 1
        self.col = 1

    def error(self, message: str) -> ParseError:
        return ParseError(message, self.line, self.col)

    def _advance(self, n: int = 1) -> None:
        for _ in range(n):
            if self.pos < len(self.text) and self.text[self.pos] == "\n":
                self.line += 1
                self.col = 1
            else:
                self.col += 1
            self.pos += 1

    def _peek(self, offset: int = 0) -> str:
        i = self.pos + offset
        return self.text[i] if i < len(self.text) else ""

    def tokens(self) -> list[_Token]:
        out: list[_Token] = []
        while True:
            tok = self._next()
            out.append(tok)
            if tok.kind == "EOF":
                return out

    def _next(self) -> _Token:
        while True:
            ch = self._peek()
            if ch and ch in " \t\r\n":
                self._advance()
            elif ch == "%":
                while self._peek() not in ("", "\n"):
                    self._advance()
            else:
                break
        line, col = self.line, self.col
        ch = self._peek()
        if ch == "":
            return _Token("EOF", "", line, col)
        if ch == "~":
            if self._peek(1) == ">":
                self._advance(2)
                return _Token("ARROW", "~>", line, col)
            self._advance()
            return _Token("NEG", "~", line, col)
        if ch == "-":
            if self._peek(1) == ">":
                self._advance(2)
                return _Token("ARROW", "->", line, col)
            raise self.error("stray '-' (expected '->')")
        if ch == "=":
            if self._peek(1) == ">":
                self._advance(2)
                return _Token("ARROW", "=>", line, col)
            raise self.error("stray '=' (expected '=>')")
        simple = {",": "COMMA", ":": "COLON", ".": "DOT", ">": "GT",
                  "(": "LPAREN", ")": "RPAREN"}
        if ch in simple:
            self._advance()
            return _Token(simple[ch], ch, line, col)
        if ch in _NAME_START or ch == "$":
            return _Token("NAME", self._scan_name(), line, col)
        raise self.error(f"unexpected character {ch!r}")

    def _scan_name(self) -> str:
        start = self.pos
        if self._peek() in _NAME_START:
            self._advance()
            while self._peek() in _NAME_CHARS:
                self._advance()
        while self._peek() in ("$", "["):
            if self._peek() == "$":
                if not self.allow_generated:
                    raise self.error("'$' is reserved for generated symbols")
                self._advance()
                while self._peek().islower():
                    self._advance()
                if self._peek() in "+-":
                    self._advance()
                if self._peek() == "(":
                    self._scan_group("(", ")")
            else:
                if not self.allow_generated:
                    raise self.error("unexpected character '['")
                self._scan_group("[", "]")
        return self.text[start:self.pos]

    def _scan_group(self, open_ch: str, close_ch: str) -> None:
        depth = 0
        while True:
            ch = self._peek()
            if ch in ("", "\n"):
                raise self.error(f"unterminated {open_ch!r} group")
            if ch == open_ch:
                depth += 1
            elif ch == close_ch:
                depth -= 1
            self._advance()
            if depth == 0:
                return


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0
        self.facts: list[Literal] = []
        self.rules: list[Rule] = []
        self.labels: dict[str, _Token] = {}
        self.superiority: list[tuple[str, str, _Token]] = []

    def _peek(self) -> _Token:
        return self.tokens[self.pos]

    def _take(self, kind: str, what: str) -> _Token:
        tok = self.tokens[self.pos]
        if tok.kind != kind:
            raise ParseError(f"expected {what}", tok.line, tok.col)
        self.pos += 1
        return tok

    def parse(self) -> Theory:
        while self._peek().kind != "EOF":
            self._statement()
        for sup, inf, tok in self.superiority:
            for label in (sup, inf):
                if label not in self.labels:
                    raise ParseError(f"unknown label {label!r}", tok.line, tok.col)
        pairs = frozenset((sup, inf) for sup, inf, _ in self.superiority)
        return Theory(tuple(self.facts), tuple(self.rules), pairs)

    def _statement(self) -> None:
        tok = self._peek()
        if tok.kind == "NEG":
            self._fact()
            return
        if tok.kind != "NAME":
            raise ParseError("expected a fact, rule or superiority statement",
                             tok.line, tok.col)
        after = self.tokens[self.pos + 1]
        if after.kind == "COLON":
            self._rule()
        elif after.kind == "GT":
            self._superiority()
        else:
            self._fact()

    def _fact(self) -> None:
        tok = self._peek()
        literal = self._literal()
        if not literal.is_ground:
            raise ParseError("variables are not allowed in facts", tok.line, tok.col)
        self._take("DOT", "'.'")
        self.facts.append(literal)

    def _rule(self) -> None:
        label_tok = self._take("NAME", "a rule label")
        label = label_tok.value
        if _is_variable(label):
            raise ParseError("labels must start with a lowercase letter",
                             label_tok.line, label_tok.col)
        if label in self.labels:
            raise ParseError(f"duplicate label {label!r}",
                             label_tok.line, label_tok.col)
        self._take("COLON", "':'")
        antecedent: list[Literal] = []
        if self._peek().kind != "ARROW":
            antecedent.append(self._literal())
            while self._peek().kind == "COMMA":
                self.pos += 1
                antecedent.append(self._literal())
        arrow = self._take("ARROW", "an arrow")
        head = self._literal()
        self._take("DOT", "'.'")
        self.labels[label] = label_tok
        self.rules.append(Rule(label, frozenset(antecedent), _ARROWS[arrow.value], head))

    def _superiority(self) -> None:
        sup_tok = self._take("NAME", "a rule label")
        self._take("GT", "'>'")
        inf_tok = self._take("NAME", "a rule label")
        self._take("DOT", "'.'")
        self.superiority.append((sup_tok.value, inf_tok.value, sup_tok))

    def _literal(self) -> Literal:
        positive = True
        if self._peek().kind == "NEG":
            self.pos += 1
            positive = False
        return Literal(self._atom(), positive)

    def _atom(self) -> Atom:
        name_tok = self._take("NAME", "an atom")
        name = name_tok.value
        if _is_variable(name):
            raise ParseError("atom names must start with a lowercase letter",
                             name_tok.line, name_tok.col)
        args: list[str] = []
        if self._peek().kind == "LPAREN":
            self.pos += 1
            args.append(self._arg())
            while self._peek().kind == "COMMA":
                self.pos += 1
                args.append(self._arg())
            self._take("RPAREN", "')'")
        return Atom(name, tuple(args))

    def _arg(self) -> str:
        tok = self._take("NAME", "an argument")
        if "$" in tok.value or "[" in tok.value:
            raise ParseError("arguments must be plain identifiers", tok.line, tok.col)
        return tok.value


def parse(text: str, *, allow_generated: bool = False) -> Theory:
    """Parse a `.dfl` source into a theory.

    Raises :class:`ParseError` with a line:column position on syntax errors,
    duplicate labels, superiority statements that reference unknown labels,
    and (unless `allow_generated` is set) any use of ``$``.
    """
    tokens = _Lexer(text, allow_generated).tokens()
    return _Parser(tokens).parse()


def print_theory(theory: Theory) -> str:
    """Serialize a theory in the grammar above.

    Facts come first in stored order, then rules in stored order, then
    superiority pairs sorted lexicographically.  Antecedents are printed
    sorted, so output is deterministic.  The empty theory prints as the
    empty string; round-tripping through :func:`parse` reproduces the
    theory (generated symbols need `allow_generated=True`).
    """
    lines = [f"{fact}." for fact in theory.facts]
    lines.extend(f"{rule}." for rule in theory.rules)
    lines.extend(f"{sup} > {inf}." for sup, inf in sorted(theory.superiority))
    if not lines:
        return ""
    return "\n".join(lines) + "\n"
