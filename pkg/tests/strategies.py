from hypothesis import strategies as st

from conering.cd_ring import enumerate_words
from conering.element import CD, COUNTING, RANK, RingElement
from conering.rank_basis import enumerate_indices


def words(max_degree=10):
    return st.integers(0, max_degree).flatmap(lambda d: st.sampled_from(enumerate_words(d)))


def indices(max_degree=10):
    return st.integers(0, max_degree).flatmap(lambda d: st.sampled_from(enumerate_indices(d)))


def elements(basis=CD, max_degree=10, max_terms=5):
    keys = words(max_degree) if basis == CD else indices(max_degree)
    return st.dictionaries(keys, st.integers(-(10**6), 10**6), max_size=max_terms).map(
        lambda terms: RingElement(basis, terms)
    )


def homogeneous(basis=CD, degree=4, max_terms=4):
    pool = enumerate_words(degree) if basis == CD else enumerate_indices(degree)
    return st.dictionaries(st.sampled_from(pool), st.integers(-50, 50), max_size=max_terms).map(
        lambda terms: RingElement(basis, terms)
    )


ANY_BASIS = st.sampled_from([CD, RANK, COUNTING])
