"""Identity suites: every stated identity checked exhaustively up to a degree bound.

Each check is a generator of ``(label, lhs, rhs)`` cases emitted in
increasing degree and canonical order; the first mismatch is reported, so
the counterexample is the smallest one.  Ring-element sides are printed
expanded in the CD basis.
"""

from __future__ import annotations

import json
import time
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import product as iproduct

from . import cd_ring, counting_basis as cb, rank_basis as rb
from .element import CD, COUNTING, RANK, RingElement, format_key, key_degree

SUITES = (
    "ring-axioms",
    "simplices",
    "rank-product",
    "rank-cone",
    "cone-decomposition",
    "counting-construction",
    "quasi-simplex",
)


class UnknownSuite(ValueError):
    pass


@dataclass
class CheckResult:
    name: str
    passed: bool
    cases: int
    counterexample: dict | None = None


@dataclass
class SuiteReport:
    suite: str
    max_degree: int
    checks: list[CheckResult] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def to_text(self, timing: bool = True) -> str:
        lines = [f"suite={self.suite} max_degree={self.max_degree}"]
        for c in self.checks:
            lines.append(f"{'PASS' if c.passed else 'FAIL'} {c.name} ({c.cases} cases)")
            if c.counterexample:
                for k, v in c.counterexample.items():
                    lines.append(f"    {k}: {v}")
        lines.append(f"result={'pass' if self.passed else 'fail'}")
        if timing:
            lines.append(f"elapsed={self.elapsed:.3f}s")
        return "\n".join(lines) + "\n"

    def to_json(self, timing: bool = True) -> str:
        payload = {
            "suite": self.suite,
            "max_degree": self.max_degree,
            "passed": self.passed,
            "checks": [
                {"name": c.name, "passed": c.passed, "cases": c.cases, "counterexample": c.counterexample}
                for c in self.checks
            ],
        }
        if timing:
            payload["elapsed"] = round(self.elapsed, 3)
        return json.dumps(payload, indent=2) + "\n"


def _show(value) -> str:
    if isinstance(value, RingElement):
        return str(cb.convert(value, CD))
    return repr(value)


def _run_check(name: str, cases) -> CheckResult:
    n = 0
    for label, lhs, rhs in cases:
        n += 1
        if lhs != rhs:
            return CheckResult(name, False, n, {"case": label, "lhs": _show(lhs), "rhs": _show(rhs)})
    return CheckResult(name, True, n)


# -- helpers ------------------------------------------------------------------


def _words_upto(d):
    for e in range(d + 1):
        yield from cd_ring.enumerate_words(e)


def _indices_upto(d):
    for e in range(d + 1):
        yield from rb.enumerate_indices(e)


def _tuples_by_degree(keys_of, total: int, arity: int):
    """All ordered ``arity``-tuples of keys, ordered by degree sum."""
    for s in range(total + 1):
        for degs in iproduct(range(s + 1), repeat=arity):
            if sum(degs) != s:
                continue
            yield from iproduct(*(keys_of(e) for e in degs))


def _cd(w: str) -> RingElement:
    return RingElement(CD, {w: 1})


def _rk(i) -> RingElement:
    return RingElement(RANK, {tuple(i): 1})


def _e(a: int) -> RingElement:
    return cd_ring.simplex(a)


def _bracket(a: int, b: int) -> RingElement:
    """[ab] = D^b e_a in the CD basis."""
    return _cd("D" * b + "C" * a)


# -- ring-axioms ---------------------------------------------------------------


def _ring_axioms(d):
    one = RingElement.one(CD)
    words = cd_ring.enumerate_words
    yield "dimensions", (
        (f"d={e}", len(words(e)), cd_ring.fibonacci(e + 1)) for e in range(d + 1)
    )
    yield "unit", ((f"1*<{w}>", one * _cd(w), _cd(w)) for w in _words_upto(d))
    yield "commutativity", (
        (f"<{u}><{v}>", _cd(u) * _cd(v), _cd(v) * _cd(u))
        for u, v in _tuples_by_degree(words, d, 2)
    )
    yield "associativity", (
        (f"<{u}><{v}><{w}>", (_cd(u) * _cd(v)) * _cd(w), _cd(u) * (_cd(v) * _cd(w)))
        for u, v, w in _tuples_by_degree(words, d, 3)
    )
    yield "grading", (
        (f"deg <{u}><{v}>", (_cd(u) * _cd(v)).degrees(), {key_degree(u) + key_degree(v)})
        for u, v in _tuples_by_degree(words, d, 2)
    )
    yield "cone-grading", (
        (f"deg C<{w}>", cd_ring.cone(_cd(w)).degrees(), {key_degree(w) + 1})
        for w in _words_upto(max(d - 1, -1))
    )


# -- simplices -------------------------------------------------------------------


def _simplices(d):
    D = _cd("D")
    yield "simplex-is-iterated-cone", (
        (f"e_{n}", cd_ring.simplex(n), _iter_cone(RingElement.one(CD), n)) for n in range(d + 1)
    )
    yield "product-of-simplices", (
        (f"e_{a} e_{b}", _e(a) * _e(b), _e(a + b) + D * _e(a - 1) * _e(b - 1))
        for a, b in iproduct(range(1, d + 1), repeat=2)
    )
    yield "join-of-simplices", (
        (f"J(e_{a}, e_{b})", cd_ring.join(_e(a), _e(b)), _e(a + b + 1))
        for a, b in iproduct(range(d + 1), repeat=2)
    )
    yield "join-with-unit", (
        (f"J(1, <{w}>)", cd_ring.join(RingElement.one(CD), _cd(w)), cd_ring.cone(_cd(w)))
        for w in _words_upto(d)
    )
    top = min(d, 6)
    yield "simplex-times-cone", (
        (
            f"e_{a} C(<{w}>)",
            _e(a) * cd_ring.cone(_cd(w)),
            _iter_cone(_cd(w), a + 1) + D * _e(a - 1) * _cd(w),
        )
        for w in _words_upto(d)
        for a in range(1, top + 1)
    )
    yield "bracket-product", (
        (
            f"[{a}{b}][{c}{e}]",
            _bracket(a, b) * _bracket(c, e),
            _bracket(a + c, b + e) + _bracket(0, 1) * _bracket(a - 1, b) * _bracket(c - 1, e),
        )
        for a in range(1, top + 1)
        for c in range(1, top + 1)
        for b in range(min(d, 4) + 1)
        for e in range(min(d, 4) + 1)
    )


def _iter_cone(u: RingElement, n: int) -> RingElement:
    for _ in range(n):
        u = cd_ring.cone(u)
    return u


# -- rank-product ---------------------------------------------------------------------


def _rank_product(d):
    yield "index-word-bijection", (
        (w, rb.word_of_index(rb.index_of_word(w)), w) for w in _words_upto(d)
    )
    yield "index-degree-rank", (
        (str(i), (key_degree(rb.word_of_index(i)), cd_ring.word_rank(rb.word_of_index(i))),
         (key_degree(i), len(i) - 1))
        for i in _indices_upto(d)
    )
    yield "conversion-round-trip", (
        (format_key(i, RANK), rb.convert(rb.rank_to_angle(i), RANK), _rk(i)) for i in _indices_upto(d)
    )
    yield "head-product-oracle", (
        (
            f"pi({a},{b})",
            RingElement(RANK, {(h,): c for h, c in rb.head_product(a, b).items()}),
            rb.convert(rb.rank_to_angle((a,)) * rb.rank_to_angle((b,)), RANK),
        )
        for i, j in _tuples_by_degree(rb.enumerate_indices, d, 2)
        if len(i) == 1 and len(j) == 1
        for a, b in [(i[0], j[0])]
    )
    yield "product-oracle", (
        (
            f"{format_key(i, RANK)}{format_key(j, RANK)}",
            _rk(i) * _rk(j),
            rb.convert(rb.rank_to_angle(i) * rb.rank_to_angle(j), RANK),
        )
        for i, j in _tuples_by_degree(rb.enumerate_indices, d, 2)
    )
    yield "product-positivity", (
        (f"{format_key(i, RANK)}{format_key(j, RANK)}", min((_rk(i) * _rk(j)).min_coeff(), 0), 0)
        for i, j in _tuples_by_degree(rb.enumerate_indices, d, 2)
    )
    yield "point-like-closure", (
        (f"{format_key(i, RANK)}{format_key(j, RANK)}", rb.is_point_like(_rk(i) * _rk(j)), True)
        for i, j in _tuples_by_degree(rb.enumerate_indices, d, 2)
        if i[0] == (0, 0) and j[0] == (0, 0)
    )
    yield "orthogonality", (
        (f"{{{i[0]}}}{format_key(j, RANK)}", _rk(i) * _rk(j), _rk(i + j[1:]))
        for i, j in _tuples_by_degree(rb.enumerate_indices, d, 2)
        if len(i) == 1 and j[0] == (0, 0)
    )
    bodies = [(i, j) for i, j in _tuples_by_degree(rb.enumerate_indices, d, 2) if i[0] == j[0] == (0, 0)]
    yield "merge-commutativity", (
        (f"{i[1:]}*{j[1:]}", dict(rb.merge_product(i[1:], j[1:])), dict(rb.merge_product(j[1:], i[1:])))
        for i, j in bodies
    )
    yield "merge-rank-range", (
        (f"{i[1:]}*{j[1:]}", _rank_range_ok(i[1:], j[1:]), True) for i, j in bodies
    )
    sums: dict[tuple[int, int], int] = {}

    def sum_cases():
        for i, j in bodies:
            r, s = len(i) - 1, len(j) - 1
            if r > 4 or s > 4:
                continue
            total = sum(c for _, c in rb.merge_product(i[1:], j[1:]))
            expected = sums.setdefault((r, s), total)
            yield f"sum {i[1:]}*{j[1:]} (r={r}, s={s})", total, expected

    yield "merge-sum-constant", sum_cases()


def _rank_range_ok(left, right) -> bool:
    r, s = len(left), len(right)
    lo, hi = max(r, s), r + s
    return all(lo <= len(body) <= hi and c > 0 for body, c in rb.merge_product(left, right))


def merge_sums(max_rank: int = 4, max_degree: int = 10) -> dict[tuple[int, int], set[int]]:
    """Coefficient sums of ``L * M`` grouped by ``(rank L, rank M)``."""
    out: dict[tuple[int, int], set[int]] = defaultdict(set)
    for i, j in _tuples_by_degree(rb.enumerate_indices, max_degree, 2):
        if i[0] != (0, 0) or j[0] != (0, 0):
            continue
        r, s = len(i) - 1, len(j) - 1
        if r <= max_rank and s <= max_rank:
            out[(r, s)].add(sum(c for _, c in rb.merge_product(i[1:], j[1:])))
    return dict(out)


# -- rank-cone ------------------------------------------------------------------------


def _rank_cone(d):
    yield "cone-oracle", (
        (f"C{format_key(i, RANK)}", rb.rank_cone(_rk(i)), rb.convert(cd_ring.cone(rb.rank_to_angle(i)), RANK))
        for i in _indices_upto(d)
    )
    yield "cone-rank-span", (
        (f"C{format_key(i, RANK)}", rb.rank_cone(_rk(i)).ranks() <= {len(i) - 1, len(i)}, True)
        for i in _indices_upto(d)
    )


# -- cone-decomposition ------------------------------------------------------------------


def _shift_parts(before: int, elem: RingElement) -> dict[int, RingElement]:
    parts: dict[int, dict] = defaultdict(dict)
    for k, c in elem.items():
        parts[len(k) - 1 - before][k] = c
    return {s: RingElement(RANK, t) for s, t in parts.items()}


def _cone_decomposition(d, max_power: int = 6, max_a: int = 4):
    C0, C1 = rb.cone_rank_preserving, rb.cone_rank_raising
    keys = list(_indices_upto(d))
    yield "components-sum", (
        (f"C{format_key(i, RANK)}", C0(_rk(i)) + C1(_rk(i)), rb.rank_cone(_rk(i))) for i in keys
    )
    yield "component-ranks", (
        (f"C{format_key(i, RANK)}", (C0(_rk(i)).ranks() <= {len(i) - 1}, C1(_rk(i)).ranks() <= {len(i)}), (True, True))
        for i in keys
    )
    yield "simplex-like-kernel", (
        (format_key(i, RANK), C1(_rk(i)) == 0, i[0][1] == 0) for i in keys
    )
    images: dict = {}

    def injective():
        for i in keys:
            if i[0][1] == 0:
                continue
            img = C1(_rk(i))
            (k, c), = img.items()
            prev = images.setdefault(k, i)
            yield format_key(i, RANK), (prev, c), (i, 1)

    yield "raising-part-injective", injective()
    yield "point-like-range", (
        (
            format_key(i, RANK),
            C1(_rk(((i[1][0], i[1][1] + 1),) + i[2:])) if i[0] == (0, 0) and len(i) > 1 else None,
            _rk(i) if i[0] == (0, 0) and len(i) > 1 else None,
        )
        for i in keys
    )
    yield "double-raise-vanishes", (
        (f"C1 C0^{a} C1 {format_key(i, RANK)}", C1(_power(C0, C1(_rk(i)), a)), 0)
        for i in keys
        for a in range(max_a + 1)
    )

    def powers():
        for i in keys:
            full = _rk(i)
            for n in range(max_power + 1):
                parts = _shift_parts(len(i) - 1, full)
                formula = rb.cone_power_components(n, _rk(i))
                yield f"C^{n} {format_key(i, RANK)} [0]", parts.get(0, RingElement.zero(RANK)), formula[0]
                yield f"C^{n} {format_key(i, RANK)} [1]", parts.get(1, RingElement.zero(RANK)), formula[1]
                rest = [s for s, p in parts.items() if s >= 2 and p]
                yield f"C^{n} {format_key(i, RANK)} [>=2]", rest, []
                full = rb.rank_cone(full)

    yield "cone-power-components", powers()

    def shadows():
        for i in keys:
            if i[0][1] == 0:
                continue
            u = _rk(i)
            point = C1(u)
            yield f"sigma C1 {format_key(i, RANK)}", rb.shadow(point), C1(C0(u))
            deg = key_degree(i)
            for v in rb.enumerate_indices(deg):
                if v[0][1] == 0:
                    yield f"C1 C0 ({format_key(i, RANK)} + {format_key(v, RANK)})", C1(C0(u + _rk(v))), C1(C0(u))

    yield "shadow-well-defined", shadows()


def _power(op, x, n):
    for _ in range(n):
        x = op(x)
    return x


# -- counting-construction -------------------------------------------------------------


def _ct(i) -> RingElement:
    return RingElement(COUNTING, {tuple(i): 1})


def _point_like_in_counting(p: RingElement) -> RingElement:
    """Express a rank-basis point-like element in counting coordinates."""
    return cb.from_rank(p)


def _lift(head, point_coords: RingElement) -> RingElement:
    """Linear extension of ``[00M] -> [head M]``; keys that are not
    point-like are kept as they are, so a bad expansion cannot pass."""
    acc: dict = {}
    for k, c in point_coords.items():
        key = (head,) + k[1:] if k[0] == (0, 0) else k
        acc[key] = acc.get(key, 0) + c
    return RingElement(COUNTING, acc)


def _counting_construction(d):
    yield "unimodular-change-of-basis", (
        (f"det d={e}", abs(_det(e)), 1) for e in range(d + 1)
    )
    yield "homogeneous-elements", (
        (format_key(i, COUNTING), cb.counting_element(i).degrees(), {key_degree(i)})
        for i in _indices_upto(d)
    )
    bodies = [i[1:] for i in _indices_upto(d) if len(i) > 1 and i[0] == (0, 0)]

    def simplex_rule():
        for body in bodies:
            point = cb.counting_element(((0, 0),) + body)
            shadow_coords = _point_like_in_counting(rb.shadow(point))
            for a in range(1, d + 1):
                if key_degree(((a, 0),) + body) > d:
                    break
                lhs = _ct(((a, 0),)) * _ct(((0, 0),) + body) - _ct(((a - 1, 0),)) * shadow_coords
                yield f"[{a}0 L] L={body}", lhs, _ct(((a, 0),) + body)

    yield "simplex-coefficient-rule", simplex_rule()

    def d_rule():
        for body in bodies:
            point = cb.counting_element(((0, 0),) + body)
            for n in range(d + 1):
                for b in range(1, 4):
                    if key_degree(((n, b),) + body) > d:
                        break
                    lhs = _ct(((0, b),)) * _ct(((n, 0),) + body)
                    rhs = RingElement.zero(COUNTING)
                    for i in range(b + 1):
                        coords = _point_like_in_counting(rb.shadow(point, i)) if i else _ct(((0, 0),) + body)
                        rhs = rhs + _lift((n + i, b - i), coords)
                    yield f"[0{b}][{n}0 L] L={body}", lhs, rhs

    yield "d-power-rule", d_rule()

    def shadow_cone():
        for body in bodies:
            p = cb.counting_element(((0, 0),) + body)
            for a in range(d + 1):
                if key_degree(((a, 0),) + body) > d:
                    break
                lhs = rb.rank_multiply(RingElement(RANK, {((a, 0),): 1}), p)
                rhs = RingElement.zero(RANK)
                for i in range(a + 1):
                    rhs = rhs + _power(rb.rank_cone, rb.shadow(p, a - i), i)
                yield f"e_{a}[00 L] L={body}", lhs, rhs

    yield "simplex-times-point-like", shadow_cone()
    yield "cone-of-simplex-like", (
        (f"C{format_key(i, COUNTING)}", cb.counting_cone(_ct(i)), _ct(((i[0][0] + 1, 0),) + i[1:]))
        for i in _indices_upto(d - 1)
        if i[0][1] == 0
    )
    yield "point-like-counting", (
        (format_key(i, COUNTING), rb.is_point_like(cb.counting_element(i)), True)
        for i in _indices_upto(d)
        if i[0] == (0, 0)
    )
    yield "simplex-like-counting", (
        (format_key(i, COUNTING), rb.is_simplex_like(cb.counting_element(i)), True)
        for i in _indices_upto(d)
        if i[0][1] == 0
    )


def _det(e: int) -> int:
    try:
        return cb.counting_change_of_basis(e).determinant
    except cb.NonInvertibleChangeOfBasis as exc:
        return int(str(exc).rsplit(" ", 1)[-1])


# -- quasi-simplex --------------------------------------------------------------------------


def _quasi_simplex(d):
    q = cb.quasi_simplex
    D = RingElement(RANK, {((0, 1),): 1})
    top = min(d, 5)
    yield "product-formula", (
        (f"[{a}0~][{b}0~]", q(a) * q(b), q(a + b) - q(a + b - 1) + D * q(a - 1) * q(b - 1))
        for a in range(1, top + 1)
        for b in range(1, top + 1)
    )
    yield "d-power-expansion", (
        (f"D^{b}", D ** b, sum((q(i, b - i) for i in range(b + 1)), RingElement.zero(RANK)))
        for b in range(min(d, 4) + 1)
    )
    yield "d-times-quasi", (
        (f"[01][{n}0~]", D * q(n), q(n, 1) + q(n + 1))
        for n in range(d + 1)
    )


_SUITES = {
    "ring-axioms": _ring_axioms,
    "simplices": _simplices,
    "rank-product": _rank_product,
    "rank-cone": _rank_cone,
    "cone-decomposition": _cone_decomposition,
    "counting-construction": _counting_construction,
    "quasi-simplex": _quasi_simplex,
}


def run_suite(name: str, d: int) -> SuiteReport:
    if name not in _SUITES:
        raise UnknownSuite(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    if d < 0:
        raise ValueError("degree bound must be non-negative")
    start = time.perf_counter()
    report = SuiteReport(name, d)
    for check, cases in _SUITES[name](d):
        report.checks.append(_run_check(check, cases))
    report.elapsed = time.perf_counter() - start
    return report
