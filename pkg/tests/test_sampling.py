"""Seeded generator checks: validity, ranges, determinism, morphisms."""

import random

from mixedhodge.invariants import alpha
from mixedhodge.multifilt import hodge_numbers
from mixedhodge.sampling import (
    adapted_structure_from_diamond,
    generically_realizable,
    random_compatible_morphism,
    random_extension,
    random_hodge_diamond,
    random_mhs,
)


def stored_keys(f):
    return [k for k, _ in f.levels]


def test_same_seed_same_structure():
    a = random_mhs(random.Random(123), 8)
    b = random_mhs(random.Random(123), 8)
    assert a == b


def test_random_structures_valid_and_in_range():
    rng = random.Random(5)
    for _ in range(40):
        m = random_mhs(rng, 8)
        assert 1 <= m.ambient_dim <= 8
        assert all(-3 <= k <= 3 for k in stored_keys(m.W))
        assert all(-3 <= k <= 3 for k in stored_keys(m.F))
        h = hodge_numbers(m.triple())
        assert sum(h.values()) == m.ambient_dim
        assert all(h[(p, q)] == h[(q, p)] for (p, q) in h)


def test_diamond_draw_symmetric_and_sized():
    rng = random.Random(9)
    for _ in range(200):
        h = random_hodge_diamond(rng, 8)
        assert 1 <= sum(h.values()) <= 8
        assert all(h[(p, q)] == h[(q, p)] for (p, q) in h)
        assert all(-2 <= p <= 2 and -2 <= q <= 2 for (p, q) in h)
        assert all(-2 <= p + q <= 3 for (p, q) in h)


def test_generic_realizability_examples():
    # two weights, one type each: generic flags reach it
    assert generically_realizable({(1, 1): 1, (0, 0): 1})
    # weight-1 types under weight-2 types force a non-generic intersection
    assert not generically_realizable(
        {(2, 0): 1, (0, 2): 1, (1, 0): 1, (0, 1): 1}
    )


def test_adapted_path_reaches_special_diamonds():
    h = {(2, 0): 1, (0, 2): 1, (1, 0): 1, (0, 1): 1}
    rng = random.Random(31)
    m = adapted_structure_from_diamond(rng, h)
    assert m is not None
    assert hodge_numbers(m.triple()) == h


def test_extensions_add_hodge_numbers():
    rng = random.Random(17)
    for _ in range(15):
        a, b, _, total = random_extension(rng)
        assert total.ambient_dim == a.ambient_dim + b.ambient_dim
        ha = hodge_numbers(a.triple())
        hb = hodge_numbers(b.triple())
        ht = hodge_numbers(total.triple())
        for key in set(ha) | set(hb) | set(ht):
            assert ht.get(key, 0) == ha.get(key, 0) + hb.get(key, 0)


def test_random_morphisms_compatible_and_real():
    rng = random.Random(23)
    for _ in range(25):
        src = random_mhs(rng, 4)
        dst = random_mhs(rng, 4)
        mor = random_compatible_morphism(rng, src, dst)
        assert mor.compatible()
        for i in range(mor.matrix.rows):
            for j in range(mor.matrix.cols):
                assert mor.matrix.entry(i, j).is_real


def test_alpha_spread_includes_split_and_nonsplit():
    rng = random.Random(11)
    values = {alpha(random_mhs(rng, 8).triple()) for _ in range(60)}
    assert 0 in values
    assert any(v > 0 for v in values)
