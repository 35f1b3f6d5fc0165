"""Sparse exact-integer ring elements and their text form.

Three bases share one container type:

* ``cd``       keys are strings over ``"CD"``, e.g. ``"CDC"`` (``""`` is the unit)
* ``rank``     keys are indices, tuples of ``(a, b)`` pairs
* ``counting`` keys are indices as well, printed with square brackets

Text grammar (ASCII)::

    element := term (('+' | '-') term)*
    term    := [integer '*'] key
    key     := '<' [CD]* '>' | '{' pairs '}' | '[' pairs ']' | '[' a ':' b '~]'
    pairs   := a ':' b (',' a ':' b)*

A leading '-' and the literal ``0`` are also accepted.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator, Mapping
from typing import Union

CD = "cd"
RANK = "rank"
COUNTING = "counting"
BASES = (CD, RANK, COUNTING)

Pair = tuple[int, int]
Index = tuple[Pair, ...]
Key = Union[str, Index]


class ParseError(ValueError):
    """Malformed element text."""


class BasisMismatchError(ValueError):
    pass


def check_basis(basis: str) -> str:
    if basis not in BASES:
        raise ValueError(f"unknown basis {basis!r}; expected one of {', '.join(BASES)}")
    return basis


# -- keys -------------------------------------------------------------------


def word_degree(word: str) -> int:
    return len(word) + word.count("D")


def index_degree(index: Index) -> int:
    return sum(a + 2 * b for a, b in index) + 3 * (len(index) - 1)


def key_degree(key: Key) -> int:
    if isinstance(key, str):
        return word_degree(key)
    return index_degree(key)


def key_rank(key: Key) -> int:
    if isinstance(key, str):
        return key.count("CD")
    return len(key) - 1


def sort_key(key: Key):
    """Canonical order: degree first; CD words then lexicographic (C < D),
    indices then rank and the flattened pair sequence."""
    if isinstance(key, str):
        return (word_degree(key), key)
    flat = tuple(x for pair in key for x in pair)
    return (index_degree(key), len(key), flat)


def format_key(key: Key, basis: str) -> str:
    if basis == CD:
        return f"<{key}>"
    body = ",".join(f"{a}:{b}" for a, b in key)
    if basis == RANK:
        return "{" + body + "}"
    return "[" + body + "]"


# -- the element type -------------------------------------------------------


class RingElement:
    """A finite integer combination of basis keys, tagged with its basis.

    Instances are treated as immutable; arithmetic returns new elements.
    ``*`` between two elements of the same basis is the ring product.
    """

    __slots__ = ("basis", "_terms", "_hash")

    def __init__(self, basis: str, terms: Mapping[Key, int] | Iterable[tuple[Key, int]] = ()):
        self.basis = check_basis(basis)
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[Key, int] = {}
        for key, coeff in items:
            acc[key] = acc.get(key, 0) + coeff
        self._terms = {k: c for k, c in acc.items() if c}
        self._hash = None

    @classmethod
    def basis_element(cls, basis: str, key: Key, coeff: int = 1) -> RingElement:
        return cls(basis, {key: coeff})

    @classmethod
    def zero(cls, basis: str) -> RingElement:
        return cls(basis)

    @classmethod
    def one(cls, basis: str) -> RingElement:
        return cls(basis, {unit_key(basis): 1})

    # mapping-like access
    @property
    def terms(self) -> Mapping[Key, int]:
        return self._terms

    def items(self):
        return self._terms.items()

    def keys(self):
        return self._terms.keys()

    def coeff(self, key: Key) -> int:
        return self._terms.get(key, 0)

    def __iter__(self) -> Iterator[Key]:
        return iter(self._terms)

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def sorted_items(self) -> list[tuple[Key, int]]:
        return sorted(self._terms.items(), key=lambda kv: sort_key(kv[0]))

    # grading
    def degrees(self) -> set[int]:
        return {key_degree(k) for k in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> int:
        """Degree of a nonzero homogeneous element."""
        degs = self.degrees()
        if len(degs) != 1:
            raise ValueError("degree is defined only for nonzero homogeneous elements")
        return degs.pop()

    def ranks(self) -> set[int]:
        return {key_rank(k) for k in self._terms}

    def min_coeff(self) -> int:
        return min(self._terms.values(), default=0)

    # arithmetic
    def _same(self, other: RingElement) -> None:
        if other.basis != self.basis:
            raise BasisMismatchError(f"cannot combine {self.basis} and {other.basis} elements")

    def __add__(self, other: RingElement) -> RingElement:
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, RingElement):
            return NotImplemented
        self._same(other)
        acc = dict(self._terms)
        for k, c in other._terms.items():
            acc[k] = acc.get(k, 0) + c
        return RingElement(self.basis, acc)

    __radd__ = __add__

    def __neg__(self) -> RingElement:
        return RingElement(self.basis, {k: -c for k, c in self._terms.items()})

    def __sub__(self, other: RingElement) -> RingElement:
        if not isinstance(other, RingElement):
            return NotImplemented
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, int):
            return RingElement(self.basis, {k: c * other for k, c in self._terms.items()})
        if isinstance(other, RingElement):
            self._same(other)
            return _product(self, other)
        return NotImplemented

    def __rmul__(self, other):
        if isinstance(other, int):
            return self * other
        return NotImplemented

    def __pow__(self, n: int) -> RingElement:
        result = RingElement.one(self.basis)
        for _ in range(n):
            result = result * self
        return result

    def __eq__(self, other) -> bool:
        if isinstance(other, int) and other == 0:
            return not self._terms
        if not isinstance(other, RingElement):
            return NotImplemented
        return self.basis == other.basis and self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.basis, frozenset(self._terms.items())))
        return self._hash

    def __str__(self) -> str:
        return format_element(self)

    def __repr__(self) -> str:
        return f"RingElement({self.basis!r}, {format_element(self)!r})"


def unit_key(basis: str) -> Key:
    return "" if basis == CD else ((0, 0),)


def _product(x: RingElement, y: RingElement) -> RingElement:
    # late imports: the product modules import this one
    if x.basis == CD:
        from .cd_ring import multiply
    elif x.basis == RANK:
        from .rank_basis import rank_multiply as multiply
    else:
        from .counting_basis import counting_multiply as multiply
    return multiply(x, y)


# -- printing ---------------------------------------------------------------


def format_element(elem: RingElement) -> str:
    items = elem.sorted_items()
    if not items:
        return "0"
    parts: list[str] = []
    for i, (key, coeff) in enumerate(items):
        text = format_key(key, elem.basis)
        mag = abs(coeff)
        term = text if mag == 1 else f"{mag}*{text}"
        if i == 0:
            parts.append(term if coeff > 0 else "-" + term)
        else:
            parts.append(("+ " if coeff > 0 else "- ") + term)
    return " ".join(parts)


# -- parsing ----------------------------------------------------------------

_PAIRS = r"\d+\s*:\s*\d+(?:\s*,\s*\d+\s*:\s*\d+)*"
_TOKEN = re.compile(
    r"\s*(?:"
    r"(?P<sign>[+-])"
    r"|(?P<int>\d+)\s*\*"
    r"|(?P<zero>0)(?![\d*])"
    r"|<(?P<cd>[CD]*)>"
    r"|\{(?P<rank>" + _PAIRS + r")\}"
    r"|\[(?P<quasi>\d+\s*:\s*\d+)\s*~\]"
    r"|\[(?P<count>" + _PAIRS + r")\]"
    r")"
)


def _parse_pairs(text: str) -> Index:
    out = []
    for chunk in text.split(","):
        a, b = chunk.split(":")
        out.append((int(a), int(b)))
    return tuple(out)


def parse_key(text: str) -> tuple[str, Key]:
    """Parse a single key literal; returns ``(basis, key)``."""
    elem = parse_element(text.strip())
    if len(elem) != 1 or next(iter(elem.terms.values())) != 1:
        raise ParseError(f"not a single key: {text!r}")
    return elem.basis, next(iter(elem.terms))


def parse_element(text: str, basis: str | None = None) -> RingElement:
    """Parse element text. ``basis`` is checked against the literals and
    is required only to give a basis to the bare literal ``0``."""
    if basis is not None:
        check_basis(basis)
    pos = 0
    n = len(text)
    terms: list[tuple[str, Key, int]] = []
    quasi: list[tuple[Pair, int]] = []
    seen_zero = False
    expect_term = True
    sign: int | None = None
    scale: int | None = None
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected input at column {pos}: {text[pos:pos + 12]!r}")
        pos = m.end()
        kind = m.lastgroup
        started = bool(terms or quasi or seen_zero)
        if kind == "sign":
            if expect_term and (started or sign is not None or scale is not None):
                raise ParseError(f"misplaced sign at column {m.start()}")
            sign = -1 if m.group("sign") == "-" else 1
            expect_term = True
            continue
        if not expect_term:
            raise ParseError(f"missing operator before column {m.start()}")
        if kind == "int":
            if scale is not None:
                raise ParseError("repeated coefficient")
            scale = int(m.group("int"))
            continue
        if kind == "zero":
            if started or sign is not None or scale is not None:
                raise ParseError("0 is accepted only as the whole element")
            seen_zero = True
        else:
            coeff = (sign or 1) * (1 if scale is None else scale)
            if kind == "cd":
                terms.append((CD, m.group("cd"), coeff))
            elif kind == "rank":
                terms.append((RANK, _parse_pairs(m.group("rank")), coeff))
            elif kind == "count":
                terms.append((COUNTING, _parse_pairs(m.group("count")), coeff))
            else:
                quasi.append((_parse_pairs(m.group("quasi"))[0], coeff))
        sign = None
        scale = None
        expect_term = False
    if expect_term and (sign is not None or scale is not None):
        raise ParseError("dangling operator")
    if not terms and not quasi and not seen_zero:
        raise ParseError("empty element")

    found = {b for b, _, _ in terms} | ({COUNTING} if quasi else set())
    if len(found) > 1:
        raise BasisMismatchError(f"element mixes bases: {sorted(found)}")
    if seen_zero:
        if basis is None:
            raise ParseError("the literal 0 needs an explicit basis")
        return RingElement.zero(basis)
    got = found.pop()
    if basis is not None and basis != got:
        raise BasisMismatchError(f"literal is in the {got} basis, expected {basis}")
    elem = RingElement(got, [(k, c) for _, k, c in terms])
    if quasi:
        from .counting_basis import quasi_simplex

        for pair, c in quasi:
            elem = elem + RingElement(COUNTING, quasi_simplex(*pair).terms) * c
    return elem
