"""Parser for the surface term grammar.

    term  := item ('+' item)*
    item  := atom ('*' NAT)?
    atom  := NAT | 'w' | 'w*' | 'z' | 'w^' NAT
           | 'omega' '(' term ')' | 'omegastar' '(' term ')' | '(' term ')'

NAT is a decimal natural.  'w^k' is k-fold Omega nesting, 'T*m' is an
m-fold sum.  A '*' directly followed by a digit is multiplication, so
"w*3" is omega times three while "w*" (at the end or before '+', ')' or
'*') is the reversed omega.
"""

from __future__ import annotations

from .blocks import normalize
from .terms import (
    OMEGA,
    OMEGA_STAR,
    ZETA,
    Fin,
    Omega,
    OmegaStar,
    OrderTerm,
    omega_power,
    repeat,
)


class ParseError(ValueError):
    def __init__(self, message: str, pos: int):
        super().__init__("%s (at position %d)" % (message, pos))
        self.pos = pos


_MAX_NAT = 10**9


class _Scanner:
    def __init__(self, text: str):
        self.text = text
        self.pos = 0
        self.tokens = []
        self._scan()
        self.index = 0

    def _scan(self):
        text = self.text
        i = 0
        while i < len(text):
            ch = text[i]
            if ch.isspace():
                i += 1
                continue
            if ch.isdigit():
                j = i
                while j < len(text) and text[j].isdigit():
                    j += 1
                value = int(text[i:j])
                if value > _MAX_NAT:
                    raise ParseError("count too large", i)
                self.tokens.append(("nat", value, i))
                i = j
                continue
            if text.startswith("omegastar", i):
                self.tokens.append(("omegastar", None, i))
                i += len("omegastar")
                continue
            if text.startswith("omega", i):
                self.tokens.append(("omega", None, i))
                i += len("omega")
                continue
            if ch == "w":
                if text.startswith("w^", i):
                    self.tokens.append(("wpow", None, i))
                    i += 2
                    continue
                # 'w*' is the reversed omega unless the '*' starts a count
                if i + 1 < len(text) and text[i + 1] == "*" and not (
                    i + 2 < len(text) and text[i + 2].isdigit()
                ):
                    self.tokens.append(("wstar", None, i))
                    i += 2
                    continue
                self.tokens.append(("w", None, i))
                i += 1
                continue
            if ch == "z":
                self.tokens.append(("z", None, i))
                i += 1
                continue
            if ch in "+*()":
                self.tokens.append((ch, None, i))
                i += 1
                continue
            raise ParseError("unexpected character %r" % ch, i)
        self.tokens.append(("end", None, len(text)))

    def peek(self):
        return self.tokens[self.index]

    def next(self):
        tok = self.tokens[self.index]
        self.index += 1
        return tok

    def expect(self, kind):
        tok = self.next()
        if tok[0] != kind:
            raise ParseError("expected %r, found %r" % (kind, tok[0]), tok[2])
        return tok


def parse_term(text: str) -> OrderTerm:
    """Parse a term and return it normalized."""
    sc = _Scanner(text)
    t = _parse_sum(sc)
    tok = sc.peek()
    if tok[0] != "end":
        raise ParseError("unexpected trailing %r" % tok[0], tok[2])
    return normalize(t)


def _parse_sum(sc: _Scanner) -> OrderTerm:
    parts = [_parse_item(sc)]
    while sc.peek()[0] == "+":
        sc.next()
        parts.append(_parse_item(sc))
    if len(parts) == 1:
        return parts[0]
    from .terms import concat

    return concat(*parts)


def _parse_item(sc: _Scanner) -> OrderTerm:
    atom = _parse_atom(sc)
    if sc.peek()[0] == "*":
        sc.next()
        tok = sc.expect("nat")
        return repeat(atom, tok[1])
    return atom


def _parse_atom(sc: _Scanner) -> OrderTerm:
    tok = sc.next()
    kind = tok[0]
    if kind == "nat":
        return Fin(tok[1])
    if kind == "w":
        return OMEGA
    if kind == "wstar":
        return OMEGA_STAR
    if kind == "z":
        return ZETA
    if kind == "wpow":
        exp = sc.expect("nat")
        return omega_power(exp[1])
    if kind == "omega":
        sc.expect("(")
        body = _parse_sum(sc)
        sc.expect(")")
        return Omega(body)
    if kind == "omegastar":
        sc.expect("(")
        body = _parse_sum(sc)
        sc.expect(")")
        return OmegaStar(body)
    if kind == "(":
        body = _parse_sum(sc)
        sc.expect(")")
        return body
    raise ParseError("expected an atom, found %r" % kind, tok[2])
