"""Exact-integer algebra for the flag-vector (cone-product) ring.

Three bases are supported: the CD basis ``<W>``, the rank basis ``{I}`` and
the candidate counting basis ``[I]``.  See the README for the command line.
"""

__version__ = "0.1.0"

from .element import CD, COUNTING, RANK, RingElement, parse_element  # noqa: E402

__all__ = ["CD", "COUNTING", "RANK", "RingElement", "parse_element", "__version__"]


def clear_caches() -> None:
    """Drop every memo table (products, conversions, counting elements)."""
    from . import cd_ring, counting_basis, rank_basis

    for mod in (cd_ring, rank_basis, counting_basis):
        for obj in vars(mod).values():
            if hasattr(obj, "cache_clear"):
                obj.cache_clear()
