"""Identity checking on structure constants, the derivation-product
construction, subalgebras, and the fast path for the degree-5 identity."""

import os
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from tpalg.algebra import (
    AlgebraPresentation,
    BilinearOp,
    LinearMap,
    bounded_ddt_bracket,
    check_identity,
    commutator,
    default_labels,
    derivation_bracket,
    euler_derivation,
    euler_gelfand,
    gelfand_construct,
    identity_names,
    identity_residual,
    is_derivation,
    subalgebra_check,
    truncated_poly_dot,
)
from tpalg.errors import (
    DependentSpan,
    MissingOp,
    NotCommAssoc,
    NotDerivation,
    OutOfRange,
    UnknownIdentity,
)
from tpalg.scalars import QQ, PolynomialRing

from conftest import catalog_dots, circ_family, np_pair, rightcomm_only_op

F = Fraction


def _pres(ops, dim=2, ring=QQ):
    return AlgebraPresentation(dim, ring, default_labels(dim), ops)


def _bracket_e2(ring=QQ):
    one = ring.one()
    return BilinearOp.from_entries(2, ring, {(0, 1, 1): one, (1, 0, 1): -one})


# ---------------------------------------------------------------------------
# The identity catalog
# ---------------------------------------------------------------------------


def test_identity_names():
    assert identity_names() == [
        "COMM_ASSOC",
        "LIE",
        "NCTPA",
        "NOV_LEFTSYM",
        "NOV_RIGHTCOMM",
        "NP1",
        "NP2",
        "S5",
        "TPA",
    ]


def test_identity_name_normalization():
    alg = _pres({"bracket": _bracket_e2()})
    assert check_identity(alg, "lie").passed
    assert check_identity(alg, "Lie").passed
    with pytest.raises(UnknownIdentity):
        check_identity(alg, "np3")
    with pytest.raises(MissingOp):
        check_identity(alg, "tpa")  # needs a dot


def test_tpa_counterexample_frozen():
    """dot e1.e1 = e1 with bracket [e1,e2] = e2 violates the transposed
    Leibniz law at (e1, e2, e1) with residual -e2."""
    dot = BilinearOp.from_entries(2, QQ, {(0, 0, 0): F(1)})
    report = check_identity(_pres({"dot": dot, "bracket": _bracket_e2()}), "TPA")
    assert not report.passed
    ce = report.counterexample
    assert ce.clause == "transposed-leibniz"
    assert ce.indices == (1, 2, 1)
    assert tuple(ce.residual) == (F(0), F(-1))


def test_catalog_dots_are_tpa(np_corpus):
    for name, pres in np_corpus:
        dot = pres.op("dot")
        bracket = commutator(pres.op("circ"))
        alg = AlgebraPresentation(
            pres.dim, pres.ring, pres.basis_labels, {"dot": dot, "bracket": bracket}
        )
        assert check_identity(alg, "TPA").passed, name
        assert check_identity(alg, "LIE").passed, name


def test_symbolic_family_is_novikov():
    ring = PolynomialRing(QQ, ("a", "b"))
    circ = circ_family(ring.var("a"), ring.var("b"), ring)
    alg = AlgebraPresentation(2, ring, default_labels(2), {"circ": circ})
    assert check_identity(alg, "NOV_LEFTSYM").passed
    assert check_identity(alg, "NOV_RIGHTCOMM").passed
    assert check_identity(alg, "NCTPA").passed


def test_rightcomm_only_op():
    alg = _pres({"circ": rightcomm_only_op()})
    assert check_identity(alg, "NOV_RIGHTCOMM").passed
    left = check_identity(alg, "NOV_LEFTSYM")
    assert not left.passed
    assert left.counterexample.indices == (1, 2, 2)
    nctpa = check_identity(alg, "NCTPA")
    assert not nctpa.passed


# ---------------------------------------------------------------------------
# Multilinearity spot-check: identity_residual at random vectors must vanish
# whenever the basis-tuple check passes.
# ---------------------------------------------------------------------------

vec2 = st.lists(
    st.fractions(min_value=-4, max_value=4, max_denominator=3), min_size=2, max_size=2
)


@given(vec2, vec2, vec2)
@settings(max_examples=20)
def test_multilinearity_spot_check(x, y, z):
    alg = np_pair(catalog_dots()["A01"], circ_family(F(1), F(2)))
    for clause, res in identity_residual(alg, "NP1", [x, y, z]):
        assert all(c == 0 for c in res), clause
    for clause, res in identity_residual(alg, "NCTPA", [x, y, z]):
        assert all(c == 0 for c in res), clause


# ---------------------------------------------------------------------------
# Derivation products
# ---------------------------------------------------------------------------


def test_euler_gelfand_products_frozen():
    """On Q[t]/(t^4): t^i o t^j = j t^{i+j}, bracket (j-i) t^{i+j}."""
    alg = euler_gelfand(4, QQ)
    circ = alg.op("circ")
    bracket = alg.op("bracket")
    for i in range(4):
        for j in range(4):
            col = circ.col(i, j)
            expect = [F(0)] * 4
            if i + j < 4:
                expect[i + j] = F(j)
            assert col == expect, (i, j)
            bcol = bracket.col(i, j)
            bexpect = [F(0)] * 4
            if i + j < 4:
                bexpect[i + j] = F(j - i)
            assert bcol == bexpect, (i, j)


def test_euler_gelfand_is_novikov():
    for n in range(2, 7):
        alg = euler_gelfand(n, QQ)
        assert check_identity(alg, "NOV_LEFTSYM").passed, n
        assert check_identity(alg, "NOV_RIGHTCOMM").passed, n
        assert check_identity(alg, "COMM_ASSOC").passed, n


def test_gelfand_construct_rejects_bad_inputs():
    dot = truncated_poly_dot(3, QQ)
    bad_dot = BilinearOp.from_entries(3, QQ, {(0, 1, 2): F(1)})
    deriv = euler_derivation(3, QQ)
    with pytest.raises(NotCommAssoc):
        gelfand_construct(bad_dot, deriv)
    not_deriv = LinearMap(QQ, ((F(1), F(1), F(0)), (F(0), F(1), F(0)), (F(0), F(0), F(1))))
    with pytest.raises(NotDerivation):
        gelfand_construct(dot, not_deriv)


def test_is_derivation():
    dot = truncated_poly_dot(3, QQ)
    assert is_derivation(dot, euler_derivation(3, QQ)).passed
    bad = LinearMap(QQ, ((F(0), F(0), F(0)), (F(1), F(0), F(0)), (F(0), F(0), F(0))))
    rep = is_derivation(dot, bad)
    assert not rep.passed and rep.counterexample.clause == "leibniz"


def test_derivation_bracket_matches_commutator():
    dot = truncated_poly_dot(4, QQ)
    deriv = euler_derivation(4, QQ)
    circ = gelfand_construct(dot, deriv)
    assert derivation_bracket(dot, deriv).entries_equal(commutator(circ))


# ---------------------------------------------------------------------------
# The d/dt bracket on bounded-degree polynomials, and the closed span
# ---------------------------------------------------------------------------


def test_bounded_ddt_bracket_strict():
    # [t^p, t^q] = (q-p) t^{p+q-1}; degree overflow only happens with both
    # degrees high, and strict mode refuses to truncate it silently
    br = bounded_ddt_bracket(3, QQ, strict=False)
    col = br.col(1, 2)  # [t, t^2] = t^2
    assert col == [F(0), F(0), F(1), F(0)]
    with pytest.raises(OutOfRange):
        bounded_ddt_bracket(3, QQ, strict=True)


def test_sl2_span_closed():
    """{1, 2t, -t^2} under [f,g] = f g' - g f' has the constants
    [2t, -t^2] = -2 t^2, [2t, 1] = -2, [-t^2, 1] = 2t."""
    br = bounded_ddt_bracket(4, QQ, strict=False)
    alg = AlgebraPresentation(
        5, QQ, ("1", "t", "t2", "t3", "t4"), {"bracket": br}
    )
    f1 = [F(1), F(0), F(0), F(0), F(0)]
    f2 = [F(0), F(2), F(0), F(0), F(0)]
    f3 = [F(0), F(0), F(-1), F(0), F(0)]
    result = subalgebra_check(alg, [f1, f2, f3])
    assert result.closed
    ind = result.induced.op("bracket")
    # induced columns are coordinates in the span basis f1, f2, f3
    assert ind.col(1, 2) == [F(0), F(0), F(2)]  # [2t, -t2] = -2t2 = 2 f3
    assert ind.col(1, 0) == [F(-2), F(0), F(0)]  # [2t, 1] = -2 = -2 f1
    assert ind.col(2, 0) == [F(0), F(1), F(0)]  # [-t2, 1] = 2t = f2


def test_subalgebra_dependent_span():
    br = bounded_ddt_bracket(3, QQ, strict=False)
    alg = AlgebraPresentation(4, QQ, ("1", "t", "t2", "t3"), {"bracket": br})
    v = [F(1), F(0), F(0), F(0)]
    with pytest.raises(DependentSpan):
        subalgebra_check(alg, [v, [F(2), F(0), F(0), F(0)]])


def test_subalgebra_not_closed():
    br = bounded_ddt_bracket(3, QQ, strict=False)
    alg = AlgebraPresentation(4, QQ, ("1", "t", "t2", "t3"), {"bracket": br})
    # span {1, t^3}: [t^3, 1] = -3t^2 leaves the span
    result = subalgebra_check(alg, [[F(1), F(0), F(0), F(0)], [F(0), F(0), F(0), F(1)]])
    assert not result.closed
    assert result.failing[0] == "bracket"


# ---------------------------------------------------------------------------
# S5 fast path
# ---------------------------------------------------------------------------


def test_s5_euler_dim5():
    alg = euler_gelfand(5, QQ)
    assert check_identity(alg, "S5").passed


def _sl2_semidirect_v2():
    """sl2 acting on its 2-dim module: e1=e, e2=f, e3=h, e4=v1, e5=v2."""
    ent = {}

    def setbr(i, j, vec):
        for k, c in vec.items():
            ent[(i, j, k)] = F(c)
            ent[(j, i, k)] = -F(c)

    setbr(0, 1, {2: 1})
    setbr(2, 0, {0: 2})
    setbr(2, 1, {1: -2})
    setbr(0, 4, {3: 1})
    setbr(1, 3, {4: 1})
    setbr(2, 3, {3: 1})
    setbr(2, 4, {4: -1})
    br = BilinearOp.from_entries(5, QQ, ent)
    return AlgebraPresentation(5, QQ, default_labels(5), {"bracket": br})


def test_s5_vacuous_below_dim_four():
    # the residual alternates over the first four arguments, so with only
    # three basis vectors every basis residual vanishes: sl2 passes
    sl2 = BilinearOp.from_entries(
        3,
        QQ,
        {
            (0, 1, 2): F(1),
            (1, 0, 2): F(-1),
            (2, 0, 0): F(2),
            (0, 2, 0): F(-2),
            (2, 1, 1): F(-2),
            (1, 2, 1): F(2),
        },
    )
    alg = AlgebraPresentation(3, QQ, default_labels(3), {"bracket": sl2})
    assert check_identity(alg, "LIE").passed
    assert check_identity(alg, "S5").passed


def test_s5_catches_sl2_semidirect_v2():
    alg = _sl2_semidirect_v2()
    assert check_identity(alg, "LIE").passed
    report = check_identity(alg, "S5")
    assert not report.passed
    ce = report.counterexample
    assert ce.clause == "alternating-quintuple"
    # lexicographically first violating quintuple, frozen from a direct
    # 24-term evaluation (test below re-derives it)
    assert ce.indices == (1, 2, 3, 4, 2)
    assert tuple(ce.residual) == (F(0), F(0), F(0), F(0), F(5))


def test_s5_agrees_with_direct_scan():
    """The memoized path and a direct 24-term evaluation agree, residual and
    first counterexample included."""
    import itertools

    from tpalg.algebra import _basis_vector, _s5_residual

    for alg in (
        AlgebraPresentation(
            3, QQ, ("1", "t", "t2"), {"bracket": bounded_ddt_bracket(2, QQ)}
        ),
        _sl2_semidirect_v2(),
    ):
        report = check_identity(alg, "S5")
        n = alg.dim
        basis = [_basis_vector(n, i, QQ) for i in range(n)]
        direct_fail = None
        for quint in itertools.product(range(n), repeat=5):
            res = _s5_residual(alg.ops, tuple(basis[i] for i in quint))
            if any(c != 0 for c in res):
                direct_fail = (tuple(i + 1 for i in quint), tuple(res))
                break
        if direct_fail is None:
            assert report.passed
        else:
            assert not report.passed
            assert report.counterexample.indices == direct_fail[0]
            assert tuple(report.counterexample.residual) == direct_fail[1]


def test_thread_env_does_not_change_verdict():
    alg = euler_gelfand(4, QQ)
    before = os.environ.get("TPA_THREADS")
    try:
        os.environ["TPA_THREADS"] = "3"
        threaded = check_identity(alg, "NOV_LEFTSYM")
    finally:
        if before is None:
            os.environ.pop("TPA_THREADS", None)
        else:
            os.environ["TPA_THREADS"] = before
    assert threaded.passed == check_identity(alg, "NOV_LEFTSYM").passed
