import pytest

from hopfkit.builtins import cyclic_table, group_algebra, taft, uqsl2
from hopfkit.hopf import InconsistencyError, dual
from hopfkit.invariants import (
    compute_bundle, distinguished_grouplike, left_integral, modular_function,
    normalize_pair, right_cointegral, right_integral, verify_pivotal,
    verify_radford, convolve_characters,
)
from hopfkit.linalg import pair_or_zero, vec_scale


def test_kZ2_integral(kZ2):
    lam = left_integral(kZ2)
    one = kZ2.field.one
    assert lam == {0: one, 1: one}  # 1 + g, canonical scale
    co = right_cointegral(kZ2)
    assert co == {0: one}  # delta_1
    lam, co = normalize_pair(kZ2, lam, co)
    assert pair_or_zero(kZ2.field, co, lam) == one


def test_uqsl2_integral_matches_closed_form(uq3):
    # (1 + K + K^2) E^2 F^2 expands to the three PBW monomials E^2 F^2 K^c:
    # K^c commutes past E^2 F^2 with total q-power 4c - 4c = 0
    lam = left_integral(uq3)
    idx = uq3.basis.index
    one = uq3.field.one
    assert lam == {idx("E^2 F^2"): one, idx("E^2 F^2 K"): one,
                   idx("E^2 F^2 K^2"): one}


def test_taft_integral_kernel_dim_one(taft3):
    lam = left_integral(taft3)
    # validate by substituting all nine basis elements
    for h in range(taft3.dim):
        eps = taft3.counit.get(h, taft3.field.zero)
        assert taft3.multiply({h: taft3.field.one}, lam) == vec_scale(lam, eps)


def test_cointegral_defining_identity(uq3, taft3):
    for H in (uq3, taft3):
        co = right_cointegral(H)
        for h in range(H.dim):
            out = {}
            for (j, k), c in H.comult[h].items():
                a = co.get(j)
                if a is not None:
                    from hopfkit.linalg import vec_add_into
                    vec_add_into(out, {k: c * a})
            assert out == vec_scale(H.unit, co.get(h, H.field.zero))


def test_modular_function_uqsl2(uq3, uq3_bundle):
    b = uq3_bundle
    assert b.unimodular
    assert b.alpha == dict(uq3.counit)
    assert b.radford_ok


def test_modular_function_taft(taft3, taft3_bundle):
    b = taft3_bundle
    assert not b.unimodular
    K = taft3.basis.index("K")
    aK = b.alpha[K]
    # a primitive third root of unity, not 1 (the exponent convention is
    # recorded, not asserted)
    assert aK ** 3 == taft3.field.one
    assert aK != taft3.field.one
    E = taft3.basis.index("E")
    assert E not in b.alpha  # alpha(E) = 0
    assert b.radford_ok


def test_distinguished_grouplike(uq3, uq3_bundle, kZ2, taft3, taft3_bundle):
    one = uq3.field.one
    assert uq3_bundle.grouplike == {uq3.basis.index("K^2"): one}
    assert compute_bundle(kZ2).grouplike == dict(kZ2.unit)
    assert taft3_bundle.grouplike == {taft3.basis.index("K"): taft3.field.one}


def test_dual_cross_check(uq3, uq3_bundle, taft3, taft3_bundle, kZ2):
    # g of the dual is alpha of H under transposition; in the other
    # direction the modular function of the dual evaluates at S(g_H)
    # (computed independently on both sides)
    for H, b in ((kZ2, compute_bundle(kZ2)), (taft3, taft3_bundle),
                 (uq3, uq3_bundle)):
        D = dual(H)
        bd = compute_bundle(D)
        assert bd.grouplike == b.alpha          # g_{H*} = alpha_H
        assert bd.alpha == b.grouplike_inv      # alpha_{H*} = eval at S(g_H)
        assert bd.unimodular == (b.grouplike == dict(H.unit))
        assert bd.dual_unimodular == b.unimodular


def test_dual_kZ2_cointegral(kZ2):
    # the cointegral of dual(kZ2) is the integral of kZ2 under transposition
    D = dual(kZ2)
    co_dual = right_cointegral(D)
    li = left_integral(kZ2)
    # both are 1 + g up to the canonical scaling
    assert co_dual == li


def test_alpha_convolution_inverse(uq3, uq3_bundle, taft3, taft3_bundle):
    for H, b in ((uq3, uq3_bundle), (taft3, taft3_bundle)):
        conv = convolve_characters(H, b.alpha, b.alpha_bar)
        assert conv == dict(H.counit)
        # alpha o S o S = alpha
        from hopfkit.invariants import compose_covector_with_rows
        a2 = compose_covector_with_rows(b.alpha_bar, H.antipode)
        assert a2 == b.alpha


def test_radford_on_builtins(kZ2, kZ3, taft3, uq3):
    for H in (kZ2, kZ3, taft3, uq3):
        b = compute_bundle(H)
        assert b.radford_ok  # a theorem; failure = bug


def test_verify_pivotal(uq3, kZ2, taft3):
    one = uq3.field.one
    K = uq3.basis.index("K")
    assert verify_pivotal(uq3, {K: one})
    assert not verify_pivotal(uq3, dict(uq3.unit))  # S^2 != id on E
    assert verify_pivotal(kZ2, dict(kZ2.unit))      # S^2 = id
    KT = taft3.basis.index("K")
    assert verify_pivotal(taft3, {KT: taft3.field.one})
    # non-grouplike input is just False
    E = uq3.basis.index("E")
    assert not verify_pivotal(uq3, {E: one})


def test_right_integral(taft3):
    ri = right_integral(taft3)
    for h in range(taft3.dim):
        eps = taft3.counit.get(h, taft3.field.zero)
        assert taft3.multiply(ri, {h: taft3.field.one}) == vec_scale(ri, eps)
    # in the non-unimodular Taft algebra left and right integrals differ
    assert ri != left_integral(taft3)


def test_normalize_pair_zero_pairing_rejected(kZ2):
    lam = left_integral(kZ2)
    with pytest.raises(InconsistencyError):
        normalize_pair(kZ2, lam, {1: kZ2.field.one})  # delta_g pairs to zero


def test_bundle_pivot_candidates(uq3):
    b = compute_bundle(uq3, pivot_candidates={
        "K": uq3.parse_element("K"), "1": dict(uq3.unit)})
    assert b.pivotal_verdicts == {"K": True, "1": False}
