from __future__ import annotations

import pytest

from conftest import weight_two_zero_mhs
from mixedhodge.exactfield import I, gauss
from mixedhodge.filtration import filtered_space, graded_dims, shift, trivial
from mixedhodge.invariants import alpha
from mixedhodge.linalg import (
    conj_subspace,
    full_space,
    matrix,
    span,
    subspace_sum,
    zero_subspace,
)
from mixedhodge.mhs import (
    MixedHodgeStructure,
    assemble_extension,
    deligne_splitting,
    direct_sum_mhs,
    dual_mhs,
    from_json,
    is_r_split,
    tate,
    tate_twist,
    tensor_mhs,
    validate,
)
from mixedhodge.multifilt import hodge_numbers

LINE_PARAMS = (gauss(0), gauss(1), I, gauss(1, 1))


def test_validate_accepts_the_line_family():
    for lmb in LINE_PARAMS:
        m = weight_two_zero_mhs(lmb)
        assert hodge_numbers(m.triple()) == {(1, 1): 1, (0, 0): 1}


def test_fbar_is_derived_not_stored():
    m = weight_two_zero_mhs(I)
    assert m.fbar.at(1) == span([(gauss(0, -1), gauss(1))], 2)
    assert "fbar" not in m.to_json()
    assert set(m.to_json()) == {"ambient_dim", "W", "F"}


def test_validate_rejects_non_real_weight_level():
    w = filtered_space(
        2, {-1: span([(gauss(0, 1), gauss(1))], 2), 1: zero_subspace(2)}
    )
    f = shift(trivial(2), 1)
    with pytest.raises(ValueError, match="weight level -1"):
        validate(w, f)


def test_validate_rejects_non_opposed():
    # everything in weight 0, but F puts a full type (1,1) class there
    with pytest.raises(ValueError, match=r"\(0, 1, 1\)"):
        validate(trivial(1), shift(trivial(1), 1))


def test_deligne_splitting_fixed_values():
    m = weight_two_zero_mhs(I)
    pieces = deligne_splitting(m)
    assert pieces[(1, 1)] == span([(I, gauss(1))], 2)
    assert pieces[(0, 0)] == span([[1, 0]], 2)
    m1 = weight_two_zero_mhs(gauss(1))
    assert deligne_splitting(m1)[(1, 1)] == span([[1, 1]], 2)


def test_deligne_splitting_decomposes_weight_and_hodge():
    for lmb in LINE_PARAMS:
        m = weight_two_zero_mhs(lmb)
        pieces = deligne_splitting(m)
        h = hodge_numbers(m.triple())
        assert {pq: v.dim for pq, v in pieces.items()} == h
        # weight levels are sums of pieces with p + q <= m
        for mm in (-1, 0, 1, 2, 3):
            acc = zero_subspace(2)
            for (p, q), v in pieces.items():
                if p + q <= mm:
                    acc = subspace_sum(acc, v)
            assert acc == m.weight_at(mm)
        # Hodge levels are sums of pieces with first index >= p
        for p in (0, 1, 2):
            acc = zero_subspace(2)
            for (pp, _), v in pieces.items():
                if pp >= p:
                    acc = subspace_sum(acc, v)
            assert acc == m.F.at(p)


def test_conjugation_symmetry_mod_lower_weight():
    for lmb in LINE_PARAMS:
        m = weight_two_zero_mhs(lmb)
        pieces = deligne_splitting(m)
        for (p, q), v in pieces.items():
            target = subspace_sum(
                pieces.get((q, p), zero_subspace(2)), m.weight_at(p + q - 2)
            )
            assert conj_subspace(v) <= target


def test_r_split_iff_real_parameter():
    assert is_r_split(weight_two_zero_mhs(gauss(0)))
    assert is_r_split(weight_two_zero_mhs(gauss(1)))
    assert not is_r_split(weight_two_zero_mhs(I))
    assert not is_r_split(weight_two_zero_mhs(gauss(1, 1)))


def test_r_split_agrees_with_alpha_on_the_family():
    for lmb in LINE_PARAMS:
        m = weight_two_zero_mhs(lmb)
        assert is_r_split(m) == (alpha(m.triple()) == 0)


def test_tate_structures():
    for k in (-2, 0, 3):
        t = tate(k)
        assert t.ambient_dim == 1
        assert hodge_numbers(t.triple()) == {(-k, -k): 1}
        assert graded_dims(t.W) == {2 * k: 1}
        assert alpha(t.triple()) == 0
        assert is_r_split(t)


def test_tate_twist_shifts_types():
    m = weight_two_zero_mhs(I)
    tw = tate_twist(m, 1)
    assert hodge_numbers(tw.triple()) == {(2, 2): 1, (1, 1): 1}
    assert alpha(tw.triple()) == alpha(m.triple())
    assert tate_twist(tate(0), 1).W == tate(-1).W
    assert tate_twist(tate(0), 1).F == tate(-1).F


def test_dual_mhs():
    for k in (-1, 0, 2):
        d = dual_mhs(tate(k))
        assert hodge_numbers(d.triple()) == {(k, k): 1}
    m = weight_two_zero_mhs(I)
    dm = dual_mhs(m)
    assert hodge_numbers(dm.triple()) == {(-1, -1): 1, (0, 0): 1}
    assert alpha(dm.triple()) == alpha(m.triple())


def test_direct_sum_mhs_adds_hodge_numbers():
    a = tate(0)
    b = tate(-1)
    s = direct_sum_mhs(a, b)
    assert hodge_numbers(s.triple()) == {(0, 0): 1, (1, 1): 1}
    assert alpha(s.triple()) == 0


def test_tensor_mhs_convolves_types():
    m = weight_two_zero_mhs(I)
    tw = tensor_mhs(m, tate(-1))
    assert hodge_numbers(tw.triple()) == {(2, 2): 1, (1, 1): 1}
    both = tensor_mhs(tate(1), tate(-2))
    assert hodge_numbers(both.triple()) == {(1, 1): 1}


def test_assemble_extension_reproduces_the_line_family():
    a = tate(0)
    b = tate(-1)
    for lmb in LINE_PARAMS:
        h = assemble_extension(a, b, matrix([[lmb]]))
        ref = weight_two_zero_mhs(lmb)
        assert h.W == ref.W
        assert h.F == ref.F
    assert alpha(assemble_extension(a, b, matrix([[I]])).triple()) == 1
    assert alpha(assemble_extension(a, b, matrix([[0]])).triple()) == 0


def test_assemble_extension_zero_lift_is_direct_sum():
    a = weight_two_zero_mhs(I)
    b = tate(-2)
    zero_lift = matrix([[0], [0]])
    h = assemble_extension(a, b, zero_lift)
    assert alpha(h.triple()) == alpha(a.triple())
    assert hodge_numbers(h.triple()) == {(1, 1): 1, (0, 0): 1, (2, 2): 1}


def test_assemble_extension_shape_check():
    with pytest.raises(ValueError, match="lift"):
        assemble_extension(tate(0), tate(-1), matrix([[1], [0]]))


def test_json_round_trip():
    m = weight_two_zero_mhs(I)
    blob = m.to_json()
    m2 = from_json(blob)
    assert m2 == m
    assert m2.fbar == m.fbar


def test_from_json_validates():
    w = filtered_space(
        2, {-1: span([(gauss(0, 1), gauss(1))], 2), 1: zero_subspace(2)}
    )
    blob = {
        "ambient_dim": 2,
        "W": w.to_json(),
        "F": shift(trivial(2), 1).to_json(),
    }
    with pytest.raises(ValueError, match="conjugation"):
        from_json(blob)
    with pytest.raises(ValueError, match="missing key"):
        from_json({"ambient_dim": 1})


def test_weight_lookup_convention():
    m = weight_two_zero_mhs(gauss(0))
    assert m.weight_at(2) == full_space(2)
    assert m.weight_at(1) == span([[1, 0]], 2)
    assert m.weight_at(0) == span([[1, 0]], 2)
    assert m.weight_at(-1) == zero_subspace(2)
