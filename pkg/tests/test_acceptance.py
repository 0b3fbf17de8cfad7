"""End-to-end acceptance criteria.

Each test covers one numbered criterion and prints a single
``[criterion N] PASS/FAIL`` line (visible with ``pytest -s``); all equality
assertions are exact rational comparisons, never floating point.
"""

import itertools
import random
import time
from fractions import Fraction

from conftest import AB_POINTS, catalog_dots, circ_family, normal_form_grid, np_pair
from tpalg.algebra import (
    AlgebraPresentation,
    BilinearOp,
    bounded_ddt_bracket,
    check_identity,
    default_labels,
    euler_gelfand,
    subalgebra_check,
)
from tpalg.deform import (
    check_novikov_deformation,
    classical_limit,
    deform_from_np,
    family2d_construct,
)
from tpalg.dim2 import normalize_family, operad_dims, solve_novikov_compatible
from tpalg.equiv import family2d_equiv, solve_equivalence, verify_witness
from tpalg.scalars import QQ, TruncSeries

F = Fraction


def report(n, ok, detail):
    print(f"[criterion {n}] {'PASS' if ok else 'FAIL'} — {detail}")
    assert ok, f"criterion {n}: {detail}"


# ---------------------------------------------------------------------------


def test_criterion_1_compatible_products_for_e2_bracket():
    """Solving for all Novikov products with commutator [e1,e2] = e2 yields
    exactly the two-parameter affine family, in under a second."""
    bracket = BilinearOp.from_entries(2, QQ, {(0, 1, 1): F(1), (1, 0, 1): F(-1)})
    start = time.perf_counter()
    fam = solve_novikov_compatible(bracket)
    elapsed = time.perf_counter() - start
    ok = fam.feasible and fam.all_novikov and fam.param_names == ("p1", "p2")
    if ok:
        ring = fam.op.ring
        p1, p2 = ring.var("p1"), ring.var("p2")
        expected = {
            (0, 0, 0): p2,
            (0, 0, 1): p1,
            (0, 1, 1): p2 + ring.one(),
            (1, 0, 1): p2,
        }
        for key in itertools.product(range(2), repeat=3):
            want = expected.get(key, ring.zero())
            if fam.op.entry(*key) != want:
                ok = False
                break
    ok = ok and elapsed < 1.0
    report(1, ok, f"two-parameter family recovered in {elapsed:.3f}s")


def test_criterion_2_corpus_quantizations(np_corpus):
    """Every structure in the corpus (>= 20) deforms to an order-3 Novikov
    deformation whose classical limit passes TPA and LIE, with no failures."""
    failures = []
    for name, pres in np_corpus:
        d = deform_from_np(pres, 3)
        if not check_novikov_deformation(d).passed:
            failures.append((name, "novikov"))
            continue
        lim = classical_limit(d)
        if not (lim.tpa_report.passed and lim.lie_report.passed):
            failures.append((name, "limit"))
    ok = len(np_corpus) >= 20 and not failures
    report(2, ok, f"{len(np_corpus)} structures quantized, failures: {failures}")


def test_criterion_3_normal_forms():
    """50 seeded random family coefficients (order 6, coefficients in
    [-3, 3], constant terms matching a catalog limit) all normalize to a
    confirmed-equivalent canonical form, and a 20-point grid of canonical
    forms is pairwise inequivalent."""
    rng = random.Random(20260814)
    order = 6

    def coeff():
        return F(rng.randint(-6, 6), 2)

    def nonzero():
        c = coeff()
        while c == 0:
            c = coeff()
        return c

    checked = 0
    ok = True
    for trial in range(50):
        shape = ("zero", "unital", "lambda")[trial % 3]
        acs = [coeff() for _ in range(order)]
        bcs = [coeff() for _ in range(order)]
        if shape == "zero":
            acs[0], bcs[0] = F(0), F(0)
        elif shape == "unital":
            acs[0], bcs[0] = F(0), nonzero()
        else:
            acs[0], bcs[0] = nonzero(), F(0)
        a, b = TruncSeries(order, tuple(acs)), TruncSeries(order, tuple(bcs))
        nf = normalize_family(a, b)
        verdict = family2d_equiv(a, b, *nf.as_pair())
        if not verdict.is_equivalent:
            ok = False
            break
        checked += 1

    grid = normal_form_grid(4)
    distinct_pairs = 0
    for (n1, a1, b1), (n2, a2, b2) in itertools.combinations(grid, 2):
        if not family2d_equiv(a1, b1, a2, b2).is_not_equivalent:
            ok = False
            break
        distinct_pairs += 1
    ok = ok and checked == 50 and len(grid) >= 16
    report(
        3,
        ok,
        f"{checked}/50 normalized+confirmed; grid of {len(grid)} forms, "
        f"{distinct_pairs} pairs inequivalent",
    )


def test_criterion_4_route_cross_validation():
    """On 30 seeded family pairs the closed-form criterion and the general
    solver never contradict each other, and every Equivalent witness
    verifies."""
    rng = random.Random(77001)
    contradictions = 0
    witness_failures = 0
    tags = {"equivalent": 0, "not_equivalent": 0, "unknown": 0}
    for trial in range(30):
        order = rng.choice((4, 5, 6))
        mk = lambda: TruncSeries(
            order, tuple(F(rng.randint(-3, 3)) for _ in range(order))
        )
        a, b = mk(), mk()
        if trial % 3 == 0:
            # force an equivalent pair: b2 = b*eps - mu * h(a+h)
            h = TruncSeries(order, (F(0), F(1)) + (F(0),) * (order - 2))
            eps = TruncSeries(
                order,
                (F(1),) + tuple(F(rng.randint(-2, 2)) for _ in range(order - 1)),
            )
            mu = mk()
            a2, b2 = a, b * eps - mu * (h * (a + h))
        elif trial % 3 == 1:
            a2, b2 = a, mk()
        else:
            a2, b2 = mk(), mk()
        d1 = family2d_construct(a, b)
        d2 = family2d_construct(a2, b2)
        fam = family2d_equiv(a, b, a2, b2)
        gen = solve_equivalence(d1, d2)
        tags[fam.tag] += 1
        if (fam.is_equivalent and gen.is_not_equivalent) or (
            fam.is_not_equivalent and gen.is_equivalent
        ):
            contradictions += 1
        for verdict in (fam, gen):
            if verdict.is_equivalent:
                if not verify_witness(d1, d2, verdict.witness).passed:
                    witness_failures += 1
    ok = contradictions == 0 and witness_failures == 0 and tags["equivalent"] >= 10
    report(
        4,
        ok,
        f"30 pairs, verdicts {tags}, contradictions {contradictions}, "
        f"witness failures {witness_failures}",
    )


def test_criterion_5_three_quantizations():
    """The three catalog structures quantize, point for point, to the
    expected members of the two-parameter family, and the unital/lambda
    cases normalize to (a1 h, 1) and (lam + lam1 h, 0)."""
    order = 4
    dots = catalog_dots()
    ok = True
    details = []

    def lin(c0, c1):
        return TruncSeries(order, (F(c0), F(c1)) + (F(0),) * (order - 2))

    for a1, b1 in AB_POINTS:
        # zero product: dot = 0 -> family (a1 h, b1 h)
        d = deform_from_np(np_pair(dots["A00"], circ_family(a1, b1)), order)
        want = family2d_construct(lin(0, a1), lin(0, b1))
        if not d.series_op().entries_equal(want.series_op()):
            ok, details = False, ["A00 mismatch"]
            break
        # square-to-e2 product: dot e1.e1 = e2 -> family (a1 h, 1 + b1 h)
        d = deform_from_np(np_pair(dots["A01"], circ_family(a1, b1)), order)
        want = family2d_construct(lin(0, a1), lin(1, b1))
        if not d.series_op().entries_equal(want.series_op()):
            ok, details = False, ["A01 mismatch"]
            break
        nf = normalize_family(lin(0, a1), lin(1, b1))
        if nf.kind != "unital" or nf.as_pair() != (
            lin(0, a1),
            TruncSeries.constant(order, F(1)),
        ):
            ok, details = False, ["A01 normal form"]
            break
        # lambda product at lam = 2 -> family (2 + lam1 h, b1 h)
        lam = F(2)
        d = deform_from_np(np_pair(dots["Alam2"], circ_family(a1, b1)), order)
        want = family2d_construct(lin(lam, a1), lin(0, b1))
        if not d.series_op().entries_equal(want.series_op()):
            ok, details = False, ["Alam mismatch"]
            break
        nf = normalize_family(lin(lam, a1), lin(0, b1))
        if nf.kind != "lambda" or nf.as_pair() != (
            lin(lam, a1),
            TruncSeries(order, (F(0),) * order),
        ):
            ok, details = False, ["Alam normal form"]
            break
    report(
        5,
        ok,
        f"3 structures x {len(AB_POINTS)} points match the family exactly"
        + ("" if ok else f" ({details[0]})"),
    )


def test_criterion_6_s5_on_euler_algebras():
    """The degree-5 alternating identity holds on the commutator bracket of
    every Euler-derivation algebra up to dim 7, within 30 seconds."""
    start = time.perf_counter()
    ok = True
    for n in range(2, 8):
        pres = euler_gelfand(n, QQ)
        alg = AlgebraPresentation(
            n, QQ, pres.basis_labels, {"bracket": pres.op("bracket")}
        )
        if not check_identity(alg, "S5").passed:
            ok = False
            break
    elapsed = time.perf_counter() - start
    ok = ok and elapsed < 30.0
    report(6, ok, f"S5 passed on dims 2..7 in {elapsed:.2f}s")


def test_criterion_7_closed_span():
    """{1, 2t, -t^2} is closed under [f, g] = f g' - g f' with the expected
    induced constants."""
    br = bounded_ddt_bracket(4, QQ, strict=False)
    alg = AlgebraPresentation(5, QQ, ("1", "t", "t2", "t3", "t4"), {"bracket": br})
    f1 = [F(1), F(0), F(0), F(0), F(0)]
    f2 = [F(0), F(2), F(0), F(0), F(0)]
    f3 = [F(0), F(0), F(-1), F(0), F(0)]
    result = subalgebra_check(alg, [f1, f2, f3])
    ok = result.closed
    if ok:
        ind = result.induced.op("bracket")
        ok = (
            ind.col(1, 2) == [F(0), F(0), F(2)]  # [2t, -t^2] = -2t^2 = 2 f3
            and ind.col(1, 0) == [F(-2), F(0), F(0)]  # [2t, 1] = -2
            and ind.col(2, 0) == [F(0), F(1), F(0)]  # [-t^2, 1] = 2t = f2
        )
        ok = ok and check_identity(result.induced, "LIE").passed
    report(7, ok, "span closed; induced brackets match the derivation calculus")


def test_criterion_8_operad_dimensions():
    got = [operad_dims(n) for n in range(1, 6)]
    want = [(1, 1), (2, 2), (6, 6), (20, 20), (70, 74)]
    report(8, got == want, f"dims {got}")


def test_criterion_9_identity_equivalence_on_no2_ops(no2_corpus):
    """For every operation satisfying right-commutativity, left-symmetry and
    the bracket-compatibility identity agree (this is the identity-level
    equivalence the catalog of checks is built on)."""
    disagreements = []
    for name, op in no2_corpus:
        pres = AlgebraPresentation(op.dim, op.ring, default_labels(op.dim), {"circ": op})
        if not check_identity(pres, "NOV_RIGHTCOMM").passed:
            disagreements.append((name, "not in the no2 corpus"))
            continue
        left = check_identity(pres, "NOV_LEFTSYM").passed
        compat = check_identity(pres, "NCTPA").passed
        if left != compat:
            disagreements.append((name, f"leftsym={left} nctpa={compat}"))
    ok = len(no2_corpus) >= 20 and not disagreements
    report(
        9,
        ok,
        f"{len(no2_corpus)} right-commutative ops, disagreements: {disagreements}",
    )
