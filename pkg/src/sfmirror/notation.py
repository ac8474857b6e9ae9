"""Parser and renderer for structure equations in Salamon notation.

Accepted input, per entry of a tuple like ``(0,0,0,0,12,13)``::

    e^{12}, e12, e_12, 12          monomials (bare digit strings need
                                   bare-index mode and >= 2 digits)
    -e35 + e^{26}, 2*e12, 1/2 e34  signs and rational coefficients
    lambda e52, (1-λ)e34           named parameters, bound at parse time
    (e1 + i e4) ∧ (e2 + i e5)      wedge products, imaginary unit ``i``

A bare digit string is read as a monomial only when it is the last factor of
its term and not a denominator, so ``2*12`` is ``2 e^{12}`` and ``1/2`` is a
number.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping, Sequence

from .exterior import Form
from .scalar import I, CScalar, Scalar, as_cscalar

__all__ = ["ParseError", "parse_form", "parse_tuple", "render_tuple", "ALIASES"]


class ParseError(ValueError):
    """Malformed structure-equation text."""


ALIASES = {
    "λ": "lambda",
    "α": "alpha",
    "μ": "mu",
    "τ": "tau",
}

_REPLACE = [
    ("\\wedge", "∧"),
    ("\\w", "∧"),
    ("\\lambda", "λ"),
    ("\\alpha", "α"),
    ("\\,", ""),
    ("$", ""),
    ("−", "-"),
    ("–", "-"),
    ("·", "*"),
    ("×", "*"),
    ("\\cdot", "*"),
]

_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<num>\d+)"
    r"|(?P<word>[A-Za-zͰ-Ͽ]+)"
    r"|(?P<op>[-+*/(),∧&\^_{}])"
    r")"
)


def _normalize_name(name: str) -> str:
    return ALIASES.get(name, name)


class _Lexer:
    def __init__(self, text: str, names: set[str]):
        for a, b in _REPLACE:
            text = text.replace(a, b)
        self.text = text
        self.names = names
        self.tokens = self._scan(text)

    def _split_word(self, word: str) -> list[tuple[str, str]]:
        out = []
        pos = 0
        while pos < len(word):
            ch = word[pos]
            if "Ͱ" <= ch <= "Ͽ":
                out.append(("name", _normalize_name(ch)))
                pos += 1
                continue
            rest = word[pos:]
            match = None
            for cand in sorted(self.names | {"i"}, key=len, reverse=True):
                if cand.isascii() and rest.startswith(cand):
                    match = cand
                    break
            if match is None:
                # trailing run that is neither a known name nor "i": take it whole
                j = pos
                while j < len(word) and not ("Ͱ" <= word[j] <= "Ͽ"):
                    j += 1
                out.append(("name", word[pos:j]))
                pos = j
            else:
                out.append(("name", match))
                pos += len(match)
        return out

    def _scan(self, text: str) -> list[tuple[str, str]]:
        tokens: list[tuple[str, str]] = []
        pos = 0
        text = text.rstrip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ParseError(f"unexpected character {text[pos]!r} at {pos} in {text!r}")
            pos = m.end()
            if m.group("num") is not None:
                tokens.append(("num", m.group("num")))
            elif m.group("word") is not None:
                word = m.group("word")
                # a trailing 'e' followed by an index starts a monomial
                tail = text[pos:pos + 1]
                if word.endswith("e") and (tail.isdigit() or tail in ("^", "_", "{")):
                    head = word[:-1]
                    if head:
                        tokens.extend(self._split_word(head))
                    pos, idx = self._monomial_indices(text, pos)
                    tokens.append(("mono", idx))
                else:
                    tokens.extend(self._split_word(word))
            else:
                tokens.append(("op", m.group("op")))
        return tokens

    @staticmethod
    def _monomial_indices(text: str, pos: int) -> tuple[int, str]:
        m = re.compile(r"[\^_]?\s*(\{\s*(\d+)\s*\}|(\d+))").match(text, pos)
        if not m:
            raise ParseError(f"malformed monomial near {text[pos:pos + 8]!r}")
        return m.end(), (m.group(2) or m.group(3))


class _Parser:
    def __init__(self, tokens, n: int, params: Mapping[str, object], bare_indices: bool):
        self.tokens = tokens
        self.pos = 0
        self.n = n
        self.params = {_normalize_name(k): v for k, v in params.items()}
        self.bare = bare_indices

    def peek(self):
        return self.tokens[self.pos] if self.pos < len(self.tokens) else (None, None)

    def take(self):
        tok = self.peek()
        self.pos += 1
        return tok

    def expect(self, op):
        kind, val = self.take()
        if kind != "op" or val != op:
            raise ParseError(f"expected {op!r}, got {val!r}")

    # values are CScalar or Form
    def expr(self):
        kind, val = self.peek()
        sign = 1
        if kind == "op" and val in "+-":
            self.take()
            sign = -1 if val == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = _neg(acc)
        while True:
            kind, val = self.peek()
            if kind == "op" and val in "+-":
                self.take()
                rhs = self.term()
                acc = _add(acc, rhs if val == "+" else _neg(rhs), self.n)
            else:
                return acc

    def _starts_factor(self):
        kind, val = self.peek()
        return kind in ("num", "name", "mono") or (kind == "op" and val == "(")

    def term(self):
        acc = self.factor(last_ok=True)
        while True:
            kind, val = self.peek()
            if kind == "op" and val in ("*", "∧", "&"):
                self.take()
                acc = _mul(acc, self.factor(last_ok=True), self.n)
            elif kind == "op" and val == "/":
                self.take()
                den = self.factor(last_ok=False)
                if isinstance(den, Form):
                    raise ParseError("cannot divide by a form")
                acc = _mul(acc, 1 / den, self.n)
            elif self._starts_factor():
                acc = _mul(acc, self.factor(last_ok=True), self.n)
            else:
                return acc

    def factor(self, last_ok: bool):
        kind, val = self.take()
        if kind == "num":
            if self.bare and last_ok and len(val) >= 2 and not self._starts_factor() \
                    and self.peek() != ("op", "/"):
                return self._mono(val)
            return CScalar(int(val))
        if kind == "mono":
            return self._mono(val)
        if kind == "name":
            if val == "i":
                return I
            if val not in self.params:
                raise ParseError(f"unbound parameter {val!r}")
            return as_cscalar(_param_value(self.params[val]))
        if kind == "op" and val == "(":
            inner = self.expr()
            self.expect(")")
            return inner
        raise ParseError(f"unexpected token {val!r}")

    def _mono(self, digits: str) -> Form:
        idx = [int(ch) for ch in digits]
        if any(i < 1 or i > self.n for i in idx):
            raise ParseError(f"index out of range in e{digits} (dimension {self.n})")
        return Form.e(self.n, *idx)


def _param_value(v):
    if isinstance(v, (Scalar, CScalar)):
        return v
    if isinstance(v, str):
        return Fraction(v)
    return Fraction(v)


def _neg(x):
    return -x


def _add(a, b, n):
    if isinstance(a, Form) or isinstance(b, Form):
        a = a if isinstance(a, Form) else Form.one(n, a)
        b = b if isinstance(b, Form) else Form.one(n, b)
        return a + b
    return a + b


def _mul(a, b, n):
    if isinstance(a, Form) and isinstance(b, Form):
        return a.wedge(b)
    if isinstance(a, Form):
        return a.scale(b)
    if isinstance(b, Form):
        return b.scale(a)
    return a * b


def parse_form(text: str, n: int, params: Mapping[str, object] | None = None,
               bare_indices: bool = False) -> Form:
    """Parse one form expression over an ``n``-dimensional coframe."""
    params = params or {}
    names = {_normalize_name(k) for k in params}
    toks = _Lexer(text, names).tokens
    if not toks:
        raise ParseError("empty expression")
    p = _Parser(toks, n, params, bare_indices)
    val = p.expr()
    if p.pos != len(toks):
        raise ParseError(f"trailing input at token {toks[p.pos][1]!r} in {text!r}")
    if not isinstance(val, Form):
        val = Form.one(n, val)
    return val


def _split_top(text: str) -> list[str]:
    text = text.strip()
    if not (text.startswith("(") and text.endswith(")")):
        raise ParseError(f"structure equations must be parenthesised: {text!r}")
    inner = text[1:-1]
    parts, depth, cur = [], 0, []
    for ch in inner:
        if ch in "({":
            depth += 1
        elif ch in ")}":
            depth -= 1
            if depth < 0:
                raise ParseError("unbalanced parentheses")
        if ch == "," and depth == 0:
            parts.append("".join(cur))
            cur = []
        else:
            cur.append(ch)
    if depth:
        raise ParseError("unbalanced parentheses")
    parts.append("".join(cur))
    return parts


def parse_tuple(text: str, params: Mapping[str, object] | None = None) -> list[Form]:
    """Parse ``(de^1, ..., de^n)``; the dimension is the number of entries."""
    entries = _split_top(text)
    n = len(entries)
    if any(not e.strip() for e in entries):
        raise ParseError(f"empty entry in {text!r}")
    return [parse_form(e, n, params, bare_indices=True) for e in entries]


def render_tuple(forms: Sequence[Form], compact: bool = False) -> str:
    """Inverse of :func:`parse_tuple`; ``compact`` drops the ``e`` prefix."""
    prefix = "" if compact else "e"
    return "(" + ",".join(f.render(prefix=prefix) for f in forms) + ")"
