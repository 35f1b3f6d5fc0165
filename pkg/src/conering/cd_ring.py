"""The cone-product ring in the CD basis.

Basis elements ``<W>`` are words over ``C`` (degree 1) and ``D`` (degree 2).
``<CW> = C(<W>)``, ``<DW> = D * <W>``, and the product of two cones is

    C(U) C(V) = C(J(U, V)) + D U V,    J(U, V) = U C(V) + C(U) V - e1 U V

with ``D = e1 e1 - e2``.  Products of words are computed by that recursion
and memoized on the unordered pair of D-stripped words.
"""

from __future__ import annotations

from functools import lru_cache

from .element import CD, RingElement, word_degree

__all__ = [
    "word_degree",
    "word_rank",
    "enumerate_words",
    "fibonacci",
    "cone",
    "d_times",
    "multiply",
    "word_product",
    "simplex",
    "join",
    "cd_element",
]


def word_rank(word: str) -> int:
    """Number of ``CD`` factors; they cannot overlap."""
    return word.count("CD")


def fibonacci(n: int) -> int:
    a, b = 0, 1
    for _ in range(n):
        a, b = b, a + b
    return a


@lru_cache(maxsize=None)
def enumerate_words(d: int) -> tuple[str, ...]:
    """All words of degree ``d`` in canonical (lexicographic, C < D) order."""
    if d < 0:
        return ()
    if d == 0:
        return ("",)
    return tuple("C" + w for w in enumerate_words(d - 1)) + tuple(
        "D" + w for w in enumerate_words(d - 2)
    )


def cd_element(*words: str) -> RingElement:
    return RingElement(CD, [(w, 1) for w in words])


def cone(u: RingElement) -> RingElement:
    if u.basis != CD:
        raise ValueError("cone expects a CD-basis element")
    return RingElement(CD, {"C" + w: c for w, c in u.items()})


def d_times(u: RingElement, power: int = 1) -> RingElement:
    prefix = "D" * power
    return RingElement(CD, {prefix + w: c for w, c in u.items()})


def simplex(n: int) -> RingElement:
    if n < 0:
        raise ValueError("simplex dimension must be non-negative")
    return RingElement(CD, {"C" * n: 1})


# -- products of words --------------------------------------------------------

Terms = dict


def _add_into(acc: Terms, items, scale: int = 1, prefix: str = "") -> None:
    for w, c in items:
        k = prefix + w
        v = acc.get(k, 0) + scale * c
        if v:
            acc[k] = v
        else:
            acc.pop(k, None)


def _split_d(word: str) -> tuple[int, str]:
    stripped = word.lstrip("D")
    return len(word) - len(stripped), stripped


def word_product(u: str, v: str) -> tuple[tuple[str, int], ...]:
    """``<u> <v>`` as a tuple of ``(word, coeff)`` pairs."""
    bu, ru = _split_d(u)
    bv, rv = _split_d(v)
    if ru > rv:
        ru, rv = rv, ru
    core = _stripped_product(ru, rv)
    if bu + bv == 0:
        return core
    prefix = "D" * (bu + bv)
    return tuple((prefix + w, c) for w, c in core)


def _mul_terms(x: Terms, y: Terms) -> Terms:
    acc: Terms = {}
    for wx, cx in x.items():
        for wy, cy in y.items():
            _add_into(acc, word_product(wx, wy), cx * cy)
    return acc


@lru_cache(maxsize=None)
def _stripped_product(u: str, v: str) -> tuple[tuple[str, int], ...]:
    # u <= v; both are empty or start with C
    if not u:
        return ((v, 1),)
    uu, vv = u[1:], v[1:]
    UV = dict(word_product(uu, vv))
    join_terms: Terms = {}
    _add_into(join_terms, word_product(uu, "C" + vv))
    _add_into(join_terms, word_product("C" + uu, vv))
    _add_into(join_terms, _mul_terms({"C": 1}, UV).items(), -1)
    acc: Terms = {}
    _add_into(acc, join_terms.items(), prefix="C")
    _add_into(acc, UV.items(), prefix="D")
    return tuple(sorted(acc.items(), key=lambda kv: (word_degree(kv[0]), kv[0])))


def multiply(u: RingElement, v: RingElement) -> RingElement:
    if u.basis != CD or v.basis != CD:
        raise ValueError("multiply expects CD-basis elements")
    acc: Terms = {}
    for wu, cu in u.items():
        for wv, cv in v.items():
            _add_into(acc, word_product(wu, wv), cu * cv)
    return RingElement(CD, acc)


def join(u: RingElement, v: RingElement) -> RingElement:
    """J(U, V) = U C(V) + C(U) V - e1 U V."""
    e1 = simplex(1)
    return multiply(u, cone(v)) + multiply(cone(u), v) - multiply(e1, multiply(u, v))


def cache_info():
    return _stripped_product.cache_info()
