import itertools

import pytest

from vcsp_landscape import (
    Instance,
    build_chain,
    build_gadget,
    canonical_decomposition,
    constraint_graph,
    derived_params,
    expected_peak,
    gadget_constraints,
    predicted_ascent_length,
    validate_chain,
    validate_path_decomposition,
)
from vcsp_landscape.errors import RangeError, SelfValidationError


def test_derived_params():
    assert derived_params(1, 1) == (0, 3, 1)
    assert derived_params(3, 2) == (12, 7, 2)
    for n in range(1, 8):
        assert derived_params(n, n)[2] == 1  # s_n = 1
    with pytest.raises(RangeError):
        derived_params(3, 0)
    with pytest.raises(RangeError):
        derived_params(3, 4)


def test_gadget_constraints_frozen_minus():
    cons = dict(gadget_constraints(1, 1, "-", is_top=True))
    assert [cons[((1, i),)] for i in range(1, 7)] == [-33, -13, -9, -15, -3, -3]
    assert cons[((1, 1), (1, 2))] == 15
    assert cons[((1, 2), (1, 3))] == 12
    assert cons[((1, 3), (1, 6))] == 6
    assert cons[((1, 1), (1, 4))] == 16
    assert cons[((1, 4), (1, 5))] == 12
    assert cons[((1, 5), (1, 6))] == -6
    assert len(cons) == 12


def test_gadget_constraints_plus_changes_only_top_unary():
    minus = dict(gadget_constraints(1, 1, "-", is_top=True))
    plus = dict(gadget_constraints(1, 1, "+", is_top=True))
    assert plus[((1, 1),)] == 3
    minus.pop(((1, 1),))
    plus.pop(((1, 1),))
    assert plus == minus


def test_gadget_constraints_link_weight():
    cons = dict(gadget_constraints(3, 2, "-", is_top=False))
    M, S, _ = derived_params(3, 2)
    assert cons[((2, 6), (1, 1))] == M * S
    assert len(cons) == 13


def test_plus_requires_top():
    with pytest.raises(RangeError):
        gadget_constraints(2, 1, "+", is_top=False)
    # '-' away from the top is the normal case
    gadget_constraints(2, 2, "-", is_top=False)


def test_plus_unary_consistency():
    # c_plus on (k,1) must equal c_minus plus the upward link weight, and S
    for n in range(1, 11):
        S = 2 * n + 1
        for k in range(1, n + 1):
            M, _, _ = derived_params(n, k)
            c_minus = -(2 * (M + 5) + 1) * S
            m_up = 6 * (2 ** (k + 1) - 2)
            assert m_up == 2 * (M + 6)
            assert c_minus + m_up * S == S


@pytest.mark.parametrize("n,m,sign,vars_,unaries,binaries", [
    (1, 1, "+", 6, 6, 6),
    (3, 3, "-", 18, 18, 20),
    (5, 2, "+", 12, 12, 13),
])
def test_build_chain_counts(n, m, sign, vars_, unaries, binaries):
    inst = build_chain(n, m, sign)
    assert inst.num_vars == vars_
    assert len(inst.unaries) == unaries
    assert len(inst.binaries) == binaries
    assert inst.fully_labeled


def test_build_chain_rejects_bad_params():
    with pytest.raises(RangeError):
        build_chain(2, 3, "-")
    with pytest.raises(RangeError):
        build_chain(2, 0, "-")
    with pytest.raises(RangeError):
        build_chain(2, 2, "x")


def test_chain_of_one_gadget_equals_standalone():
    assert build_chain(4, 1, "+") == build_gadget(4, 1, "+")
    assert build_chain(4, 1, "-") == build_gadget(4, 1, "-")


def test_standalone_gadget_has_no_link(gadget_minus):
    g = build_gadget(3, 2, "-")
    assert g.num_vars == 6
    assert len(g.binaries) == 6


def test_expected_peak():
    assert expected_peak(3, 2, "-") == (0,) * 12
    assert expected_peak(1, 1, "+") == (1, 1, 1, 1, 1, 0)
    assert expected_peak(2, 2, "+") == (1, 1, 1, 1, 1, 0) + (0,) * 6
    with pytest.raises(RangeError):
        expected_peak(1, 2, "+")


def test_predicted_ascent_length_matches_recurrence():
    assert predicted_ascent_length(1) == 7
    assert predicted_ascent_length(2) == 21
    assert predicted_ascent_length(10) == 7161
    t = 0
    for m in range(1, 15):
        t = 7 + 2 * t
        assert predicted_ascent_length(m) == t
    with pytest.raises(RangeError):
        predicted_ascent_length(0)


@pytest.mark.parametrize("m", [1, 2, 3, 6])
def test_canonical_decomposition_valid_width_two(m):
    pd = canonical_decomposition(m)
    g = constraint_graph(build_chain(m, m, "-"))
    check = validate_path_decomposition(g, pd.bags)
    assert check.valid and check.width == 2
    assert pd.width == 2


def test_canonical_decomposition_bag_count():
    # four bags per gadget plus one connector per adjacent pair
    assert len(canonical_decomposition(1).bags) == 4
    assert len(canonical_decomposition(3).bags) == 14


def test_mutilated_decomposition_rejected():
    g = constraint_graph(build_chain(2, 2, "-"))
    bags = list(canonical_decomposition(2).bags)
    del bags[4]  # the connector bag: only cover of the inter-gadget edge
    check = validate_path_decomposition(g, bags)
    assert not check.valid
    assert check.violation.kind in ("uncovered-edge", "broken-interval")


def test_validate_chain_catches_corrupted_weights():
    good = build_chain(2, 2, "-")
    # flip the sign of one unary
    unaries = dict(good.unaries)
    unaries[7] = -unaries[7]
    bad = Instance(12, 0, unaries, good.binaries, good.labels)
    with pytest.raises(SelfValidationError):
        validate_chain(bad, 2, 2, "-")
    # shrink one binary into the dominance gap
    binaries = dict(good.binaries)
    binaries[(0, 1)] = 1
    bad = Instance(12, 0, good.unaries, binaries, good.labels)
    with pytest.raises(SelfValidationError):
        validate_chain(bad, 2, 2, "-")


@pytest.mark.parametrize("n,m,sign", [(2, 2, "+"), (3, 2, "-"), (4, 3, "+")])
def test_gain_dichotomy(n, m, sign):
    # every realizable gradient magnitude is the gadget's small step s_k or
    # at least the large-step floor S - s_k, and never zero
    inst = build_chain(n, m, sign)
    S = 2 * n + 1
    for v in range(inst.num_vars):
        k = inst.labels[v][0]
        s_k = n + 1 - k
        nbrs = [j for j, _ in inst.neighbors[v]]
        for bits in itertools.product((0, 1), repeat=len(nbrs)):
            x = [0] * inst.num_vars
            for j, b in zip(nbrs, bits):
                x[j] = b
            g = inst.gradient(v, x)
            assert g != 0
            assert abs(g) == s_k or abs(g) >= S - s_k


@pytest.mark.parametrize("n", [2, 3])
@pytest.mark.parametrize("sign", ["+", "-"])
def test_sublandscape_splicing(n, sign):
    # with the top linking variable (2,6) held at b, fitness differences over
    # the bottom gadget match the standalone one-gadget instance of sign b
    chain = build_chain(n, 2, sign)
    subs = {0: build_chain(n, 1, "-"), 1: build_chain(n, 1, "+")}
    top = [1, 1, 1, 0, 1, 0]  # arbitrary fixed top-gadget content
    for b in (0, 1):
        sub = subs[b]
        background = top[:5] + [b]
        ref = None
        for bits in itertools.product((0, 1), repeat=6):
            full = tuple(background) + bits
            delta = chain.fitness(full) - sub.fitness(bits)
            if ref is None:
                ref = delta
            assert delta == ref  # constant offset means identical landscape
