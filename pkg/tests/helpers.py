"""Shared, memoised group data for the test modules."""

from functools import lru_cache

from dessins.census import dessin_census
from dessins.lattice import enumerate_subgroups, moebius_table
from dessins.tsystems import omega_orbits
from dessins.zoo import construct_group


@lru_cache(maxsize=None)
def group(label: str):
    return construct_group(label)


@lru_cache(maxsize=None)
def lattice(label: str):
    L = enumerate_subgroups(group(label))
    return L, moebius_table(L)


@lru_cache(maxsize=None)
def census(label: str):
    L, M = lattice(label)
    return dessin_census(group(label), L, M)


@lru_cache(maxsize=None)
def tsystems(label: str):
    return omega_orbits(census(label))


# acceptance bookkeeping: (criterion, part) -> (ok, detail), filled in by
# tests/test_acceptance.py and summarised by conftest.py
ACCEPTANCE: dict[tuple[int, str], tuple[bool, str]] = {}
