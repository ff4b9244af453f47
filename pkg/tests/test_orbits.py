import itertools
import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from semitorus.errors import NotAnAutomorphism, TooLarge
from semitorus.lattice import Basis2, hnf_bases_upto
from semitorus.orbits import (
    FiniteGroup,
    MapAutomorphism,
    UnionFind,
    automorphism_group,
    commutes,
    descended_symmetry,
    descended_translation,
    normalizer_orbit_count,
    orbit_spectrum,
    orbits_under,
    subgroups,
    subgroups_bruteforce,
    vertex_orbit_count,
)
from semitorus.tilings import NAMES, template
from semitorus.torusmap import build, try_build


def generated(gens, n):
    """Closure of permutation tuples, the plain way."""
    ident = tuple(range(n))
    out = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for x in frontier:
            for g in gens:
                y = tuple(g[i] for i in x)
                if y not in out:
                    out.add(y)
                    nxt.append(y)
        frontier = nxt
    return FiniteGroup(sorted(out))


def polyhedral_maps(names=NAMES, max_index=12):
    for name in names:
        for b in hnf_bases_upto(max_index):
            m = try_build(name, b)
            if m is not None:
                yield m


# -- union-find -------------------------------------------------------------

def test_union_find_is_order_independent():
    a, b = UnionFind(6), UnionFind(6)
    for x, y in [(0, 3), (3, 5), (1, 2)]:
        a.union(x, y)
    for x, y in [(2, 1), (5, 3), (3, 0)]:
        b.union(x, y)
    assert a.groups() == b.groups() == [[0, 3, 5], [1, 2], [4]]


# -- flag systems -------------------------------------------------------------

@given(st.sampled_from(NAMES), st.integers(1, 12), st.data())
@settings(max_examples=40, deadline=None)
def test_flag_system_invariants(name, n, data):
    bases = [b for b in hnf_bases_upto(n) if b.det == n]
    b = data.draw(st.sampled_from(bases))
    m = try_build(name, b)
    if m is None:
        return
    fs = m.flags
    assert fs.check() == []
    assert fs.n_flags == 2 * sum(len(m.neighbors(v)) for v in range(m.n_vertices))


def test_square_2x2_group():
    m = build("[4^4]", Basis2(2, 0, 0, 2), polyhedral=False)
    auts = automorphism_group(m)
    assert m.flags.n_flags == 32
    assert 32 % len(auts) == 0
    assert any(a.is_identity() for a in auts)
    assert len(orbits_under(m, auts)) == 1


def test_full_and_translation_reduced_search_agree():
    for m in itertools.islice(polyhedral_maps(max_index=9), 0, None, 7):
        full = automorphism_group(m, "full")
        fast = automorphism_group(m, "translations")
        assert {a.key for a in full} == {a.key for a in fast}
        assert m.flags.n_flags % len(full) == 0
        for a in full[:10]:
            assert commutes(m.flags, a.flag_perm)


def test_snub_hexagonal_orbits_under_named_generators():
    t = template("[3^4,6]")
    m = build(t, Basis2(1, 1, 0, 4))
    trans = [descended_translation(m, (1, 0)), descended_translation(m, (0, 1))]
    assert len(orbits_under(m, trans)) == 6
    rho = descended_symmetry(m, t.generator("rho3"))
    assert len(orbits_under(m, trans + [rho])) == 3
    assert vertex_orbit_count(m) == 3


def test_orbits_under_empty_and_invalid():
    m = build("[3^6]", Basis2(1, 2, 0, 7))
    assert orbits_under(m, []) == [[v] for v in range(m.n_vertices)]
    bogus = MapAutomorphism(np.roll(np.arange(m.flags.n_flags), 1), np.arange(m.n_vertices))
    with pytest.raises(NotAnAutomorphism):
        orbits_under(m, [bogus])


def test_monotonicity_under_containment():
    m = build("[4,6,12]", Basis2(1, 2, 0, 6))
    auts = automorphism_group(m, "translations")
    full = len(orbits_under(m, auts))
    rng = random.Random(3)
    for _ in range(10):
        sub = rng.sample(auts, 3)
        assert len(orbits_under(m, sub)) >= full


@pytest.mark.parametrize("name", ["[3^6]", "[4^4]", "[6^3]", "[3^3,4^2]"])
def test_vertex_transitive_types(name):
    for b in [b for b in hnf_bases_upto(20)][::5]:
        m = try_build(name, b)
        if m is not None:
            assert vertex_orbit_count(m) == 1


def test_flag_count_matches_normalizer_count_sampled():
    rng = random.Random(11)
    bases = list(hnf_bases_upto(24))
    for name in NAMES:
        for b in rng.sample(bases, 8):
            m = try_build(name, b)
            if m is not None:
                assert vertex_orbit_count(m) == normalizer_orbit_count(m)


# -- subgroups ------------------------------------------------------------------

def test_klein_four_and_cyclic_six():
    v4 = generated([(1, 0, 3, 2), (2, 3, 0, 1)], 4)
    assert len(v4) == 4 and len(subgroups(v4)) == 5
    c6 = generated([(1, 2, 3, 4, 5, 0)], 6)
    assert len(subgroups(c6)) == 4


@pytest.mark.parametrize("gens,n,count", [
    ([(1, 2, 3, 0), (3, 2, 1, 0)], 4, 10),           # dihedral of order 8
    ([(1, 2, 0), (1, 0, 2)], 3, 6),                  # S3
    ([(1, 2, 3, 4, 5, 0), (5, 4, 3, 2, 1, 0)], 6, 16),  # dihedral of order 12
])
def test_cyclic_extension_matches_bruteforce(gens, n, count):
    g = generated(gens, n)
    assert subgroups(g) == subgroups_bruteforce(g)
    assert len(subgroups(g)) == count


def test_too_large():
    with pytest.raises(TooLarge):
        FiniteGroup([np.arange(3)] * 10001)


def test_subgroups_of_minimal_dodecagonal_torus():
    m = build("[4,6,12]", Basis2(2, 0, 0, 2))
    g = FiniteGroup([a.flag_perm for a in automorphism_group(m)])
    assert len(g) == 48
    subs = subgroups(g)
    assert len(subs) == 97
    assert all(g.is_subgroup(s) for s in subs)
    assert all(48 % len(s) == 0 for s in subs)


# -- spectrum ---------------------------------------------------------------------

def test_spectrum_dodecagonal():
    rep = orbit_spectrum(template("[4,6,12]"), full=True)
    assert 5 not in rep.spectrum
    assert {1, 6, 12} <= set(rep.spectrum)
    assert rep.spectrum == [1, 2, 3, 4, 6, 12]
    assert 5 not in rep.full_spectrum
    assert rep.unlabelled_automorphisms == 0
    assert rep.witnesses[12]["elements"][0]["description"] == "identity"


def test_spectrum_triangular():
    assert orbit_spectrum(template("[3^6]")).spectrum == [1]
