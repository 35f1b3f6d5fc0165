"""Index calculus and the rank basis.

A CD word is cut at every ``CD`` factor; each remaining piece is ``D^b C^a``
and is recorded as the pair ``(a, b)``.  A word of rank ``r`` thus becomes an
index of ``r + 1`` pairs.  The rank basis ``{I}`` is defined by

    <I> = sum over gap subsets S of {mix_S(I)}

where ``mix_S`` fuses each run of pairs joined by chosen gaps with the mix
operator ``(a, b) # (c, d) = (a + c + 1, b + d + 1)``.  Möbius inversion over
the boolean lattice of gaps gives ``{I} = sum (-1)^|S| <mix_S(I)>``.

Products and cones are computed directly in the rank basis:

* ``{A L} {B M} = {pi(A, B) (L * M)}`` (head product times merge product)
* ``C{(a, b+1) L} = {(0,0) (a,b) L} + {(a+1, b+1) L}``
* ``C{(n, 0) (a,b) L'} = {(n+1, 0) (a,b) L'} - {(0,0) (a+n+1, b) L'}``
* ``C{(n, 0)} = {(n+1, 0)}``
"""

from __future__ import annotations

from functools import lru_cache
from itertools import product as iproduct

from .cd_ring import enumerate_words
from .element import CD, RANK, Index, Pair, RingElement, index_degree, sort_key

__all__ = [
    "index_of_word",
    "word_of_index",
    "index_degree",
    "index_rank",
    "enumerate_indices",
    "mix",
    "mix_subsets",
    "angle_to_rank",
    "rank_to_angle",
    "convert",
    "head_product",
    "merge_product",
    "rank_multiply",
    "rank_cone",
    "cone_components",
    "cone_rank_preserving",
    "cone_rank_raising",
    "cone_power_components",
    "is_point_like",
    "is_simplex_like",
    "shadow",
    "rank_part",
    "rank_element",
]


def index_rank(index: Index) -> int:
    return len(index) - 1


def _segment(pair: Pair) -> str:
    a, b = pair
    return "D" * b + "C" * a


def word_of_index(index: Index) -> str:
    if not index:
        raise ValueError("an index has at least one pair")
    return "CD".join(_segment(p) for p in index)


def index_of_word(word: str) -> Index:
    pairs = []
    for piece in word.split("CD"):
        stripped = piece.lstrip("D")
        b = len(piece) - len(stripped)
        if stripped.strip("C"):
            raise ValueError(f"not a CD word: {word!r}")
        pairs.append((len(stripped), b))
    return tuple(pairs)


@lru_cache(maxsize=None)
def enumerate_indices(d: int) -> tuple[Index, ...]:
    """Indices of degree ``d`` in canonical order (rank, then flattened pairs)."""
    return tuple(sorted((index_of_word(w) for w in enumerate_words(d)), key=sort_key))


def rank_element(*indices: Index) -> RingElement:
    return RingElement(RANK, [(tuple(i), 1) for i in indices])


# -- mixing --------------------------------------------------------------------


def mix(p: Pair, q: Pair) -> Pair:
    return (p[0] + q[0] + 1, p[1] + q[1] + 1)


def _mix_run(pairs) -> Pair:
    k = len(pairs)
    return (sum(a for a, _ in pairs) + k - 1, sum(b for _, b in pairs) + k - 1)


def mix_subsets(index: Index):
    """Yield ``(|S|, mix_S(index))`` for every subset S of the gaps."""
    r = len(index) - 1
    for chosen in iproduct((False, True), repeat=r):
        out = []
        run = [index[0]]
        for gap, pair in zip(chosen, index[1:]):
            if gap:
                run.append(pair)
            else:
                out.append(_mix_run(run))
                run = [pair]
        out.append(_mix_run(run))
        yield sum(chosen), tuple(out)


@lru_cache(maxsize=None)
def _angle_to_rank_terms(index: Index) -> tuple[tuple[Index, int], ...]:
    return tuple((j, 1) for _, j in mix_subsets(index))


@lru_cache(maxsize=None)
def _rank_to_angle_terms(index: Index) -> tuple[tuple[str, int], ...]:
    return tuple((word_of_index(j), -1 if n % 2 else 1) for n, j in mix_subsets(index))


def angle_to_rank(index: Index) -> RingElement:
    """``<I>`` expanded in the rank basis (``2**rank`` terms, all +1)."""
    return RingElement(RANK, _angle_to_rank_terms(tuple(index)))


def rank_to_angle(index: Index) -> RingElement:
    """``{I}`` expanded in the CD basis."""
    return RingElement(CD, _rank_to_angle_terms(tuple(index)))


def convert(elem: RingElement, target: str) -> RingElement:
    """Change basis between ``cd`` and ``rank`` (counting lives in
    :mod:`conering.counting_basis`)."""
    if target not in (CD, RANK) or elem.basis not in (CD, RANK):
        raise ValueError(
            f"rank_basis.convert handles cd and rank only (got {elem.basis} -> {target}); "
            "use counting_basis.convert for the counting basis"
        )
    if elem.basis == target:
        return elem
    acc: dict = {}
    if target == RANK:
        for w, c in elem.items():
            for k, s in _angle_to_rank_terms(index_of_word(w)):
                acc[k] = acc.get(k, 0) + c * s
    else:
        for i, c in elem.items():
            for k, s in _rank_to_angle_terms(i):
                acc[k] = acc.get(k, 0) + c * s
    return RingElement(target, acc)


# -- products ----------------------------------------------------------------


def head_product(a: Pair, b: Pair) -> dict[Pair, int]:
    """pi(A, B): the product of two rank-zero keys, all coefficients 1."""
    (a0, b0), (a1, b1) = a, b
    return {(a0 + a1 - 2 * k, b0 + b1 + k): 1 for k in range(min(a0, a1) + 1)}


@lru_cache(maxsize=None)
def merge_product(left: Index, right: Index) -> tuple[tuple[Index, int], ...]:
    """Merge product of body indices as ``(body, coeff)`` pairs.

    (A L) * (B M) = A (L * B M) + B (A L * M) + (A # B)(L * M)
    """
    if not left:
        return ((right, 1),)
    if not right:
        return ((left, 1),)
    a, rest_l = left[0], left[1:]
    b, rest_r = right[0], right[1:]
    acc: dict[Index, int] = {}
    for head, l_, r_ in ((a, rest_l, right), (b, left, rest_r), (mix(a, b), rest_l, rest_r)):
        for body, c in merge_product(l_, r_):
            key = (head,) + body
            acc[key] = acc.get(key, 0) + c
    return tuple(sorted(acc.items(), key=lambda kv: sort_key(((0, 0),) + kv[0])))


def _key_product(i: Index, j: Index):
    heads = head_product(i[0], j[0])
    bodies = merge_product(i[1:], j[1:])
    for h in heads:
        for body, c in bodies:
            yield (h,) + body, c


def rank_multiply(x: RingElement, y: RingElement) -> RingElement:
    if x.basis != RANK or y.basis != RANK:
        raise ValueError("rank_multiply expects rank-basis elements")
    acc: dict[Index, int] = {}
    for i, ci in x.items():
        for j, cj in y.items():
            for k, c in _key_product(i, j):
                acc[k] = acc.get(k, 0) + ci * cj * c
    return RingElement(RANK, acc)


# -- cone ----------------------------------------------------------------------


def _cone_key(index: Index) -> tuple[list, list]:
    """Cone of one key split into (rank-preserving, rank-raising) term lists."""
    (a, b), body = index[0], index[1:]
    if b > 0:
        return [(((a + 1, b),) + body, 1)], [(((0, 0), (a, b - 1)) + body, 1)]
    if not body:
        return [(((a + 1, 0),), 1)], []
    (p, q), rest = body[0], body[1:]
    return [(((a + 1, 0),) + body, 1), (((0, 0), (p + a + 1, q)) + rest, -1)], []


def _apply(elem: RingElement, part: int | None) -> RingElement:
    acc: dict[Index, int] = {}
    for i, c in elem.items():
        same, up = _cone_key(i)
        terms = same + up if part is None else (same if part == 0 else up)
        for k, s in terms:
            acc[k] = acc.get(k, 0) + c * s
    return RingElement(RANK, acc)


def _require_rank(elem: RingElement) -> None:
    if elem.basis != RANK:
        raise ValueError("expected a rank-basis element")


def rank_cone(elem: RingElement) -> RingElement:
    _require_rank(elem)
    return _apply(elem, None)


def cone_rank_preserving(elem: RingElement) -> RingElement:
    """C_[0]."""
    _require_rank(elem)
    return _apply(elem, 0)


def cone_rank_raising(elem: RingElement) -> RingElement:
    """C_[1]; its kernel is the simplex-like subspace, its range the point-like one."""
    _require_rank(elem)
    return _apply(elem, 1)


def cone_components(elem: RingElement) -> tuple[RingElement, RingElement]:
    return cone_rank_preserving(elem), cone_rank_raising(elem)


def _iterate(op, elem: RingElement, n: int) -> RingElement:
    for _ in range(n):
        elem = op(elem)
    return elem


def cone_power_components(n: int, elem: RingElement) -> dict[int, RingElement]:
    """Rank-shift components of ``C**n``: ``{0: (C0)^n E, 1: sum_i C0^i C1 C0^(n-1-i) E}``.

    Shifts of two or more vanish and are not listed.
    """
    if n < 0:
        raise ValueError("n must be non-negative")
    _require_rank(elem)
    zero = _iterate(cone_rank_preserving, elem, n)
    one = RingElement.zero(RANK)
    for i in range(n):
        inner = _iterate(cone_rank_preserving, elem, n - 1 - i)
        one = one + _iterate(cone_rank_preserving, cone_rank_raising(inner), i)
    return {0: zero, 1: one}


def rank_part(elem: RingElement, r: int) -> RingElement:
    return RingElement(elem.basis, {k: c for k, c in elem.items() if len(k) - 1 == r})


# -- point-like / simplex-like ------------------------------------------------


def is_point_like(elem: RingElement) -> bool:
    _require_rank(elem)
    return all(k[0] == (0, 0) for k in elem.keys())


def is_simplex_like(elem: RingElement) -> bool:
    _require_rank(elem)
    return all(k[0][1] == 0 for k in elem.keys())


def shadow(elem: RingElement, n: int = 1) -> RingElement:
    """Shadow operator on point-like elements of rank >= 1:
    ``{(0,0) (a,b) L'} -> {(0,0) (a+n, b) L'}``."""
    _require_rank(elem)
    if n < 0:
        raise ValueError("shadow power must be non-negative")
    acc: dict[Index, int] = {}
    for k, c in elem.items():
        if k[0] != (0, 0):
            raise ValueError(f"shadow needs a point-like element; {k} has head {k[0]}")
        if len(k) < 2:
            raise ValueError("shadow is undefined on rank 0 (the unit {0:0})")
        (a, b) = k[1]
        acc[((0, 0), (a + n, b)) + k[2:]] = c
    return RingElement(RANK, acc)
