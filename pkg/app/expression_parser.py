"""
Expression mini-language for `reduce` and ad-hoc checks.

    expr    := term (("+" | "-") term)*
    term    := unary (("*" | "/") unary)*
    unary   := "-" unary | power
    power   := atom ("^" exponent)?
    atom    := INT | "q" | letter | "iB" INT "[" INT "]" "^" "(" INT ")" | "(" expr ")"
    letter  := ("B" | "k" | "E" | "F" | "K" | "Kp") INT

`X^(m)` on a B, E or F letter is the divided power; `iB<i>[p]^(m)` is the
ıdivided power of parity p on a τ-fixed node. Division is only by
letter-free subexpressions. Letters of Ũ^ı (B, k) and of Ũ (E, F, K, Kp)
cannot be mixed in one expression.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Union

from core.cartan import CartanDatum, CartanError
from core.iqg import I_ALPHABET, divided_power, idivided_power
from core.ncalg import Alphabet, NCPoly
from core.scalars import ONE, Scalar, ScalarError, q_power, qfact
from core.udouble import U_ALPHABET

Value = Union[Scalar, NCPoly]

_ALPHABET_OF = {"B": I_ALPHABET, "k": I_ALPHABET, "E": U_ALPHABET, "F": U_ALPHABET, "K": U_ALPHABET, "Kp": U_ALPHABET}
_INVERTIBLE = {"k", "K", "Kp"}
_DIVIDED = {"B", "E", "F"}

_TOKEN_RE = re.compile(r"\s*(?:(iB)(\d+)|(Kp|[BkEFK])(\d+)|(q)|(\d+)|([-+*/^()\[\]]))")


class ParseError(ValueError):
    """Syntax or typing error at a character position."""

    def __init__(self, message: str, position: int, expected: tuple[str, ...] = ()) -> None:
        self.position = position
        self.expected = tuple(sorted(expected))
        detail = f" (expected one of: {', '.join(self.expected)})" if self.expected else ""
        super().__init__(f"{message} at position {position}{detail}")


@dataclass(frozen=True)
class Token:
    kind: str       # "ib", "letter", "q", "int", "op", "end"
    text: str
    position: int
    index: int = 0


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        match = _TOKEN_RE.match(text, pos)
        if match is None or match.end() == pos:
            start = pos + len(text[pos:]) - len(text[pos:].lstrip())
            raise ParseError(f"unexpected character {text[start]!r}", start)
        start = match.end() - len(match.group(0).lstrip())
        if match.group(1):
            tokens.append(Token("ib", "iB", start, int(match.group(2))))
        elif match.group(3):
            tokens.append(Token("letter", match.group(3), start, int(match.group(4))))
        elif match.group(5):
            tokens.append(Token("q", "q", start))
        elif match.group(6):
            tokens.append(Token("int", match.group(6), start))
        else:
            tokens.append(Token("op", match.group(7), start))
        pos = match.end()
    tokens.append(Token("end", "", len(text)))
    return tokens


class _Parser:
    def __init__(self, text: str, datum: CartanDatum) -> None:
        self.tokens = tokenize(text)
        self.datum = datum
        self.pos = 0
        self.alphabet: Alphabet | None = None

    # ── token helpers ─────────────────────────────────────────────────────────
    @property
    def current(self) -> Token:
        return self.tokens[self.pos]

    def _advance(self) -> Token:
        token = self.current
        self.pos += 1
        return token

    def _accept(self, op: str) -> bool:
        if self.current.kind == "op" and self.current.text == op:
            self.pos += 1
            return True
        return False

    def _expect(self, op: str) -> Token:
        if not self._accept(op):
            raise ParseError(f"unexpected {self._describe(self.current)}", self.current.position, (op,))
        return self.tokens[self.pos - 1]

    def _expect_int(self) -> int:
        if self.current.kind != "int":
            raise ParseError(f"unexpected {self._describe(self.current)}", self.current.position, ("integer",))
        return int(self._advance().text)

    @staticmethod
    def _describe(token: Token) -> str:
        return "end of input" if token.kind == "end" else repr(token.text)

    # ── typing helpers ────────────────────────────────────────────────────────
    def _use(self, alphabet: Alphabet, token: Token) -> None:
        if self.alphabet is None:
            self.alphabet = alphabet
        elif self.alphabet != alphabet:
            raise ParseError("cannot mix Ũ letters (E, F, K, Kp) with Ũ^ı letters (B, k)", token.position)

    def _label(self, token: Token) -> int:
        if not 1 <= token.index <= self.datum.n:
            raise ParseError(f"label {token.index} out of range 1..{self.datum.n}", token.position)
        return token.index

    def _lift(self, x: Value) -> NCPoly:
        return x if isinstance(x, NCPoly) else NCPoly.constant(self.alphabet, x)

    def _combine(self, x: Value, y: Value, op: str) -> Value:
        if isinstance(x, Scalar) and isinstance(y, Scalar):
            return {"+": x + y, "-": x - y, "*": x * y}[op]
        if op == "*":
            if isinstance(x, Scalar):
                return y * x
            return x * y
        x, y = self._lift(x), self._lift(y)
        return x + y if op == "+" else x - y

    # ── grammar ───────────────────────────────────────────────────────────────
    def parse(self) -> Value:
        value = self.expr()
        if self.current.kind != "end":
            raise ParseError(
                f"unexpected {self._describe(self.current)}", self.current.position, ("+", "-", "*", "/", "end of input")
            )
        return value

    def expr(self) -> Value:
        value = self.term()
        while self.current.kind == "op" and self.current.text in "+-":
            op = self._advance().text
            value = self._combine(value, self.term(), op)
        return value

    def term(self) -> Value:
        value = self.unary()
        while self.current.kind == "op" and self.current.text in "*/":
            token = self._advance()
            rhs = self.unary()
            if token.text == "*":
                value = self._combine(value, rhs, "*")
                continue
            if not isinstance(rhs, Scalar):
                raise ParseError("division by an expression with letters", token.position)
            try:
                inverse = ONE / rhs
            except ScalarError as exc:
                raise ParseError(str(exc), token.position) from exc
            value = value * inverse
        return value

    def unary(self) -> Value:
        if self._accept("-"):
            return -self.unary()
        return self.power()

    def _signed_int(self) -> int:
        negative = self._accept("-")
        value = self._expect_int()
        return -value if negative else value

    def power(self) -> Value:
        token = self.current
        if token.kind == "letter":
            return self._letter_power()
        value = self.atom()
        if not self._accept("^"):
            return value
        caret = self.tokens[self.pos - 1]
        exponent = self._signed_int()
        if isinstance(value, Scalar):
            try:
                return value ** exponent
            except ScalarError as exc:
                raise ParseError(str(exc), caret.position) from exc
        if exponent < 0:
            raise ParseError("negative power of an expression with letters", caret.position)
        return value ** exponent

    def _letter_power(self) -> Value:
        token = self._advance()
        kind, label = token.text, self._label(token)
        alphabet = _ALPHABET_OF[kind]
        self._use(alphabet, token)
        if not self._accept("^"):
            return NCPoly.letter(alphabet, kind, label)
        caret = self.tokens[self.pos - 1]
        if self._accept("("):
            m = self._expect_int()
            self._expect(")")
            if kind not in _DIVIDED:
                raise ParseError(f"divided powers are defined for B, E and F, not {kind}", caret.position)
            if kind == "B":
                return divided_power(self.datum, label, m)
            scale = ONE / qfact(m, self.datum.eps(label))
            return NCPoly.letter(alphabet, kind, label) ** m * scale
        exponent = self._signed_int()
        if exponent < 0:
            if kind not in _INVERTIBLE:
                raise ParseError(f"{kind}{label} is not invertible", caret.position)
            return NCPoly.letter(alphabet, kind, label, -1) ** (-exponent)
        return NCPoly.letter(alphabet, kind, label) ** exponent

    def atom(self) -> Value:
        token = self.current
        if token.kind == "int":
            self._advance()
            return Scalar(int(token.text))
        if token.kind == "q":
            self._advance()
            return q_power(1)
        if token.kind == "ib":
            self._advance()
            self._use(I_ALPHABET, token)
            label = self._label(token)
            self._expect("[")
            parity = self._expect_int()
            self._expect("]")
            self._expect("^")
            self._expect("(")
            m = self._expect_int()
            self._expect(")")
            if parity not in (0, 1):
                raise ParseError("parity must be 0 or 1", token.position)
            if self.datum.tau_of(label) != label:
                raise ParseError(f"iB{label} needs a τ-fixed node", token.position)
            return idivided_power(self.datum, label, m, parity)
        if self._accept("("):
            value = self.expr()
            self._expect(")")
            return value
        raise ParseError(
            f"unexpected {self._describe(token)}",
            token.position,
            ("(", "-", "B<i>", "E<i>", "F<i>", "K<i>", "Kp<i>", "iB<i>", "k<i>", "q", "integer"),
        )


def parse_expression(text: str, datum: CartanDatum) -> Value:
    """Parse text into a Scalar (no letters) or an NCPoly over Ũ or Ũ^ı."""
    if not text.strip():
        raise ParseError("empty expression", 0)
    try:
        return _Parser(text, datum).parse()
    except CartanError as exc:
        raise ParseError(str(exc), 0) from exc
