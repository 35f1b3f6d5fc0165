"""The candidate counting basis ``[I]``, structure tables and the negativity scan.

Counting elements are built in the rank basis, by recursion on rank:

* rank 0:        ``[a, b] = {(a, b)}``
* point-like:    ``[(0,0) (a,b) L'] = C1([(a, b+1) L']) - C1([(a+2, b) L'])``
* general:       ``[(n, b) M] = Phi(n, b)([(0,0) M])``

where ``C1`` is the rank-raising part of the cone, ``sigma`` the shadow
operator, ``e_a`` the simplices, and

    Phi(0, 0)(P) = P
    Phi(a, 0)(P) = e_a P - e_(a-1) sigma(P)                          a >= 1
    Phi(n, b)(P) = D^b Phi(n, 0)(P) - sum_{i=1..b} Phi(n+i, b-i)(sigma^i P)

The last rule is ``[0b][n0L] = sum_i [n+i, b-i, L^(i)]`` solved for ``[nbL]``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache

from sympy import ZZ
from sympy.polys.matrices import DomainMatrix

from . import __version__
from . import cd_ring, rank_basis
from .element import (
    BASES,
    CD,
    COUNTING,
    RANK,
    Index,
    Key,
    RingElement,
    check_basis,
    format_key,
    key_degree,
    sort_key,
)
from .rank_basis import (
    cone_rank_raising,
    enumerate_indices,
    rank_cone,
    rank_multiply,
    shadow,
)


class NonInvertibleChangeOfBasis(ArithmeticError):
    """The counting candidate fails to be a Z-basis at some degree."""


def _simplex(a: int) -> RingElement:
    return RingElement(RANK, {((a, 0),): 1})


def _d_power(b: int) -> RingElement:
    return RingElement(RANK, {((0, b),): 1})


# -- construction ----------------------------------------------------------------


@lru_cache(maxsize=None)
def phi(n: int, b: int, point_like: RingElement) -> RingElement:
    """The linear constructor taking ``[00L]`` to ``[n, b, L]``."""
    if b == 0:
        if n == 0:
            return point_like
        return rank_multiply(_simplex(n), point_like) - rank_multiply(
            _simplex(n - 1), shadow(point_like)
        )
    out = rank_multiply(_d_power(b), phi(n, 0, point_like))
    for i in range(1, b + 1):
        out = out - phi(n + i, b - i, shadow(point_like, i))
    return out


@lru_cache(maxsize=None)
def counting_point_like(body: Index) -> RingElement:
    """``[(0,0) L]`` for a body ``L`` of rank >= 1, in the rank basis."""
    body = tuple(body)
    if not body:
        raise ValueError("the rank-0 point-like element [0:0] is the unit; body must be non-empty")
    (a, b), rest = body[0], body[1:]
    out = cone_rank_raising(counting_element(((a, b + 1),) + rest))
    if b:
        out = out - cone_rank_raising(counting_element(((a + 2, b),) + rest))
    return out


@lru_cache(maxsize=None)
def counting_element(index: Index) -> RingElement:
    """``[I]`` expanded in the rank basis."""
    index = tuple(index)
    if len(index) == 1:
        return RingElement(RANK, {index: 1})
    (n, b), body = index[0], index[1:]
    return phi(n, b, counting_point_like(body))


def quasi_simplex(a: int, b: int = 0) -> RingElement:
    """``[a:b~]`` in the rank basis.

    ``[a0~] = [a0] - [a-1,0]`` and ``D^b [n0~] = sum_{i=0..b} [n+i, b-i ~]``.
    These have mixed degree.
    """
    if a < 0 or b < 0:
        raise ValueError("quasi-simplex indices are counting numbers")
    return _quasi(a, b)


@lru_cache(maxsize=None)
def _quasi(a: int, b: int) -> RingElement:
    if b == 0:
        if a == 0:
            return RingElement.one(RANK)
        return _simplex(a) - _simplex(a - 1)
    out = rank_multiply(_d_power(b), _quasi(a, 0))
    for i in range(1, b + 1):
        out = out - _quasi(a + i, b - i)
    return out


# -- change of basis ---------------------------------------------------------------


@dataclass(frozen=True)
class ChangeOfBasis:
    """Counting -> rank matrix at one degree; columns are counting keys."""

    degree: int
    keys: tuple[Index, ...]
    matrix: tuple[tuple[int, ...], ...]
    inverse: tuple[tuple[int, ...], ...]
    determinant: int


@lru_cache(maxsize=None)
def counting_change_of_basis(d: int) -> ChangeOfBasis:
    if d < 0:
        raise ValueError("degree must be non-negative")
    keys = enumerate_indices(d)
    pos = {k: i for i, k in enumerate(keys)}
    n = len(keys)
    rows = [[0] * n for _ in range(n)]
    for j, key in enumerate(keys):
        for k, c in counting_element(key).items():
            if k not in pos:
                raise AssertionError(f"counting element {key} is not homogeneous of degree {d}")
            rows[pos[k]][j] = c
    dm = DomainMatrix([[ZZ(x) for x in row] for row in rows], (n, n), ZZ)
    det = int(dm.det())
    if det not in (1, -1):
        raise NonInvertibleChangeOfBasis(f"degree {d}: determinant {det}")
    inv, den = dm.inv_den()
    den = int(den)
    inverse = tuple(tuple(int(x) // den for x in row) for row in inv.to_list())
    return ChangeOfBasis(d, keys, tuple(map(tuple, rows)), inverse, det)


def to_rank(elem: RingElement) -> RingElement:
    if elem.basis != COUNTING:
        raise ValueError("to_rank expects a counting-basis element")
    acc: dict[Index, int] = {}
    for key, c in elem.items():
        for k, s in counting_element(key).items():
            acc[k] = acc.get(k, 0) + c * s
    return RingElement(RANK, acc)


def from_rank(elem: RingElement) -> RingElement:
    if elem.basis != RANK:
        raise ValueError("from_rank expects a rank-basis element")
    by_degree: dict[int, dict] = {}
    for key, c in elem.items():
        by_degree.setdefault(key_degree(key), {})[key] = c
    acc: dict[Index, int] = {}
    for d, part in by_degree.items():
        cob = counting_change_of_basis(d)
        vec = [part.get(k, 0) for k in cob.keys]
        for key, row in zip(cob.keys, cob.inverse):
            v = sum(x * y for x, y in zip(row, vec) if y)
            if v:
                acc[key] = v
    return RingElement(COUNTING, acc)


def convert(elem: RingElement, target: str) -> RingElement:
    """Change basis among ``cd``, ``rank`` and ``counting``."""
    check_basis(target)
    if elem.basis == target:
        return elem
    if elem.basis == COUNTING:
        elem = to_rank(elem)
    elif elem.basis == CD:
        elem = rank_basis.convert(elem, RANK)
    if target == RANK:
        return elem
    if target == CD:
        return rank_basis.convert(elem, CD)
    return from_rank(elem)


def counting_multiply(x: RingElement, y: RingElement) -> RingElement:
    return from_rank(rank_multiply(to_rank(x), to_rank(y)))


def counting_cone(x: RingElement) -> RingElement:
    return from_rank(rank_cone(to_rank(x)))


def counting_element_of(index: Index) -> RingElement:
    return RingElement(COUNTING, {tuple(index): 1})


def betti_coordinates(elem: RingElement) -> list[tuple[Index, int]]:
    """Coordinates of a homogeneous element over all counting keys of its
    degree, canonical order, zeros included."""
    if not elem:
        raise ValueError("zero element has no degree; coordinates are undefined")
    if not elem.is_homogeneous():
        raise ValueError("betti coordinates need a homogeneous element")
    d = elem.degree()
    coords = convert(elem, COUNTING)
    return [(k, coords.coeff(k)) for k in enumerate_indices(d)]


# -- structure tables ----------------------------------------------------------------


def basis_keys(basis: str, d: int) -> tuple[Key, ...]:
    if basis == CD:
        return cd_ring.enumerate_words(d)
    return enumerate_indices(d)


def _basis_ops(basis: str):
    if basis == CD:

        def mul(i, j):
            return RingElement(CD, cd_ring.word_product(i, j))

        def cone(i):
            return RingElement(CD, {"C" + i: 1})

    elif basis == RANK:

        def mul(i, j):
            return rank_multiply(RingElement(RANK, {i: 1}), RingElement(RANK, {j: 1}))

        def cone(i):
            return rank_cone(RingElement(RANK, {i: 1}))

    else:

        def mul(i, j):
            return counting_multiply(counting_element_of(i), counting_element_of(j))

        def cone(i):
            return counting_cone(counting_element_of(i))

    return mul, cone


def _sorted_terms(elem: RingElement) -> tuple[tuple[Key, int], ...]:
    return tuple(elem.sorted_items())


@dataclass
class StructureTable:
    """Product coefficients ``lambda_ijk`` for canonical pairs ``i <= j``
    with ``deg i + deg j <= max_degree`` and cone coefficients ``mu_ij``
    for ``deg i <= max_degree - 1``."""

    basis: str
    max_degree: int
    products: dict[tuple[Key, Key], tuple[tuple[Key, int], ...]] = field(default_factory=dict)
    cones: dict[Key, tuple[tuple[Key, int], ...]] = field(default_factory=dict)
    metadata: dict[str, str] = field(default_factory=dict)

    def product(self, i: Key, j: Key) -> RingElement:
        if sort_key(j) < sort_key(i):
            i, j = j, i
        return RingElement(self.basis, self.products[(i, j)])

    def cone(self, i: Key) -> RingElement:
        return RingElement(self.basis, self.cones[i])

    def coefficients(self):
        """Yield ``("P", i, j, k, c)`` and ``("C", i, None, j, c)`` in canonical order."""
        for (i, j), terms in self.products.items():
            for k, c in terms:
                yield "P", i, j, k, c
        for i, terms in self.cones.items():
            for j, c in terms:
                yield "C", i, None, j, c


def key_pairs(basis: str, d: int):
    """Canonical pairs ``i <= j`` of keys with degree sum at most ``d``."""
    keys = [k for e in range(d + 1) for k in basis_keys(basis, e)]
    for x, i in enumerate(keys):
        di = key_degree(i)
        for j in keys[x:]:
            if di + key_degree(j) <= d:
                yield i, j


def structure_table(basis: str, d: int) -> StructureTable:
    check_basis(basis)
    if d < 0:
        raise ValueError("degree bound must be non-negative")
    mul, cone = _basis_ops(basis)
    table = StructureTable(
        basis,
        d,
        metadata={"engine": f"conering {__version__}", "order": "canonical"},
    )
    for i, j in key_pairs(basis, d):
        table.products[(i, j)] = _sorted_terms(mul(i, j))
    for e in range(d):
        for i in basis_keys(basis, e):
            table.cones[i] = _sorted_terms(cone(i))
    return table


# -- negativity scan ---------------------------------------------------------------


@dataclass(frozen=True)
class Negative:
    kind: str  # "P" product, "C" cone
    i: Index
    j: Index | None
    k: Index
    coeff: int

    def degree(self) -> int:
        return key_degree(self.k)

    def line(self) -> str:
        fk = lambda x: format_key(x, COUNTING)  # noqa: E731
        if self.kind == "P":
            return f"P {fk(self.i)} {fk(self.j)} -> {self.coeff}*{fk(self.k)}"
        return f"C {fk(self.i)} -> {self.coeff}*{fk(self.k)}"


@dataclass
class ScanReport:
    max_degree: int
    negatives: list[Negative]
    products_checked: int
    cones_checked: int

    @property
    def first_negative_degree(self) -> int | None:
        return min((n.degree() for n in self.negatives), default=None)

    def to_text(self) -> str:
        first = self.first_negative_degree
        lines = [
            "scan basis=counting",
            f"max_degree={self.max_degree}",
            f"products_checked={self.products_checked}",
            f"cones_checked={self.cones_checked}",
            f"negatives={len(self.negatives)}",
            f"first_negative_degree={'none' if first is None else first}",
        ]
        lines += [n.line() for n in self.negatives]
        return "\n".join(lines) + "\n"

    def to_json(self) -> str:
        fk = lambda x: None if x is None else format_key(x, COUNTING)  # noqa: E731
        payload = {
            "basis": COUNTING,
            "max_degree": self.max_degree,
            "products_checked": self.products_checked,
            "cones_checked": self.cones_checked,
            "first_negative_degree": self.first_negative_degree,
            "negatives": [
                {"kind": n.kind, "i": fk(n.i), "j": fk(n.j), "k": fk(n.k), "coeff": n.coeff}
                for n in self.negatives
            ],
        }
        return json.dumps(payload, indent=2) + "\n"


def _negative_order(n: Negative):
    return (
        n.degree(),
        0 if n.kind == "P" else 1,
        sort_key(n.i),
        sort_key(n.j) if n.j is not None else (),
        sort_key(n.k),
    )


def negativity_scan(d: int, table: StructureTable | None = None) -> ScanReport:
    """Every negative product or cone coefficient in the counting basis up to degree ``d``."""
    if table is None:
        table = structure_table(COUNTING, d)
    elif table.basis != COUNTING or table.max_degree != d:
        raise ValueError("table must be a counting-basis table at the same bound")
    found = [
        Negative(kind, i, j, k, c) for kind, i, j, k, c in table.coefficients() if c < 0
    ]
    found.sort(key=_negative_order)
    return ScanReport(d, found, len(table.products), len(table.cones))


__all__ = [
    "BASES",
    "ChangeOfBasis",
    "Negative",
    "NonInvertibleChangeOfBasis",
    "ScanReport",
    "StructureTable",
    "basis_keys",
    "betti_coordinates",
    "convert",
    "counting_change_of_basis",
    "counting_cone",
    "counting_element",
    "counting_element_of",
    "counting_multiply",
    "counting_point_like",
    "from_rank",
    "key_pairs",
    "negativity_scan",
    "phi",
    "quasi_simplex",
    "structure_table",
    "to_rank",
]
