"""The complete two-dimensional story.

* the catalog of 2-dim transposed Poisson algebras with bracket [e1,e2]=e2
* the linear solver for products compatible with a given bracket
* basis normalization of dim-2 deformations into the two-parameter family
* the normal-form classifier for that family, with verified witnesses
"""

from __future__ import annotations

import math
from dataclasses import dataclass

from .algebra import (
    AlgebraPresentation,
    BilinearOp,
    IdentityReport,
    LinearMap,
    _basis_vector,
    _nov_rightcomm,
    check_identity,
    commutator,
    default_labels,
    is_zero_vector,
)
from .deform import (
    TruncatedDeformation,
    _infer_field,
    check_novikov_deformation,
    family2d_construct,
)
from .equiv import EquivalenceWitness, family2d_equiv, verify_witness
from .errors import (
    NotAQuantization,
    NotLie,
    OrderMismatch,
    OutOfRange,
    PreconditionViolated,
)
from .linalg import invert_series_matrix, matvec, solve_affine
from .scalars import (
    QQ,
    PolynomialRing,
    SeriesRing,
    TruncSeries,
    h_valuation,
    series_invert,
)

# ---------------------------------------------------------------------------
# Catalog
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CatalogEntry:
    name: str  # "A00" | "A01" | "Alam"
    lam: object  # None except for "Alam"
    algebra: AlgebraPresentation


def _bracket_e2(ring):
    one = ring.one()
    return BilinearOp.from_entries(2, ring, {(0, 1, 1): one, (1, 0, 1): -one})


def catalog(lam=None, field=QQ):
    """The three 2-dim transposed Poisson algebras with bracket [e1,e2]=e2:
    zero product, e1.e1=e2, and e1.e1=lam e1 with e1.e2=e2.e1=lam e2.
    ``lam`` defaults to a symbolic parameter."""
    entries = []
    dot00 = BilinearOp.zero(2, field)
    entries.append(
        CatalogEntry(
            "A00",
            None,
            AlgebraPresentation(
                2, field, default_labels(2), {"dot": dot00, "bracket": _bracket_e2(field)}
            ),
        )
    )
    dot01 = BilinearOp.from_entries(2, field, {(0, 0, 1): field.one()})
    entries.append(
        CatalogEntry(
            "A01",
            None,
            AlgebraPresentation(
                2, field, default_labels(2), {"dot": dot01, "bracket": _bracket_e2(field)}
            ),
        )
    )
    if lam is None:
        ring = PolynomialRing(field, ("lam",))
        lam_value = ring.var("lam")
    else:
        ring = field
        lam_value = field.coerce(lam)
        if lam_value == 0:
            raise ValueError("lam must be nonzero")
    dot_lam = BilinearOp.from_entries(
        2, ring, {(0, 0, 0): lam_value, (0, 1, 1): lam_value, (1, 0, 1): lam_value}
    )
    entries.append(
        CatalogEntry(
            "Alam",
            lam_value,
            AlgebraPresentation(
                2, ring, default_labels(2), {"dot": dot_lam, "bracket": _bracket_e2(ring)}
            ),
        )
    )
    return entries


# ---------------------------------------------------------------------------
# Compatible-Novikov solver
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NovikovCompatibleFamily:
    """Affine family of products whose commutator is the given bracket and
    which satisfy the bracket-compatibility identity; free parameters appear
    as symbols p1, p2, ...  ``obstructions`` lists every nonzero
    right-commutativity residual of the family (empty iff the whole family
    is Novikov)."""

    feasible: bool
    param_names: tuple
    op: BilinearOp | None
    rightcomm_report: IdentityReport | None
    obstructions: tuple

    @property
    def all_novikov(self):
        return self.feasible and self.rightcomm_report.passed


def solve_novikov_compatible(bracket: BilinearOp) -> NovikovCompatibleFamily:
    """Solve {commutator(o) = bracket, bracket-compatibility} for the n^3
    structure constants of o, over the bracket's field."""
    field = bracket.ring
    pres = AlgebraPresentation(
        bracket.dim, field, default_labels(bracket.dim), {"bracket": bracket}
    )
    lie = check_identity(pres, "LIE")
    if not lie.passed:
        raise NotLie("the input bracket is not a Lie bracket", lie)

    n = bracket.dim
    nun = n * n * n
    zero, one = field.zero(), field.one()

    def idx(i, j, k):
        return (i * n + j) * n + k

    rows, rhs = [], []
    br = bracket.c
    for i in range(n):
        for j in range(i + 1, n):
            for l in range(n):
                row = [zero] * nun
                row[idx(i, j, l)] = row[idx(i, j, l)] + one
                row[idx(j, i, l)] = row[idx(j, i, l)] - one
                rows.append(row)
                rhs.append(br[i][j][l])
    for i in range(n):
        for j in range(n):
            for k in range(n):
                for l in range(n):
                    row = [zero] * nun
                    for m in range(n):
                        if br[i][j][m] != 0:
                            row[idx(m, k, l)] = row[idx(m, k, l)] + 2 * br[i][j][m]
                        if br[m][j][l] != 0:
                            row[idx(i, k, m)] = row[idx(i, k, m)] - br[m][j][l]
                        if br[i][m][l] != 0:
                            row[idx(j, k, m)] = row[idx(j, k, m)] - br[i][m][l]
                    rows.append(row)
                    rhs.append(zero)

    sol = solve_affine(rows, rhs, one)
    if not sol.feasible:
        return NovikovCompatibleFamily(False, (), None, None, ())

    names = tuple(f"p{t + 1}" for t in range(len(sol.free_cols)))
    pring = PolynomialRing(field, names)
    entries = {}
    for i in range(n):
        for j in range(n):
            for k in range(n):
                u = idx(i, j, k)
                value = pring.coerce(sol.particular[u])
                for t, col in enumerate(sol.free_cols):
                    if sol.nullspace[t][u] != 0:
                        value = value + pring.var(names[t]) * pring.coerce(
                            sol.nullspace[t][u]
                        )
                entries[(i, j, k)] = value
    op = BilinearOp.from_entries(n, pring, entries)

    if not commutator(op).entries_equal(bracket.coerce_to(pring)):
        raise AssertionError("internal error: solved family has wrong commutator")

    fam_pres = AlgebraPresentation(n, pring, default_labels(n), {"circ": op})
    report = check_identity(fam_pres, "NOV_RIGHTCOMM")
    obstructions = []
    if not report.passed:
        basis = [_basis_vector(n, i, pring) for i in range(n)]
        for i in range(n):
            for j in range(n):
                for k in range(n):
                    res = _nov_rightcomm(fam_pres.ops, (basis[i], basis[j], basis[k]))
                    if not is_zero_vector(res):
                        obstructions.append(((i + 1, j + 1, k + 1), tuple(res)))
    return NovikovCompatibleFamily(True, names, op, report, tuple(obstructions))


def _join_rings(r1, r2):
    if r1 == r2:
        return r2
    p1 = isinstance(r1, PolynomialRing)
    p2 = isinstance(r2, PolynomialRing)
    if p1 and p2:
        merged = tuple(dict.fromkeys(r1.variables + r2.variables))
        return PolynomialRing(r1.base, merged)
    if p1:
        return r1
    return r2


def np_compatibility(dot: BilinearOp, circ: BilinearOp) -> IdentityReport:
    """Are (dot, circ) compatible in the Novikov-Poisson sense?  Runs the
    two mixed identities; over symbolic entries "pass" certifies the whole
    parametric family."""
    ring = _join_rings(dot.ring, circ.ring)
    pres = AlgebraPresentation(
        dot.dim,
        ring,
        default_labels(dot.dim),
        {"dot": dot.coerce_to(ring), "circ": circ.coerce_to(ring)},
    )
    for identity in ("NP1", "NP2"):
        report = check_identity(pres, identity)
        if not report.passed:
            return IdentityReport("NP1+NP2", False, report.counterexample)
    return IdentityReport("NP1+NP2", True, None)


# ---------------------------------------------------------------------------
# Basis normalization (dim 2)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NormalizedBasis:
    """Change of basis putting a dim-2 deformation into the two-parameter
    family shape; ``basis`` holds the coordinate columns of the new basis
    vectors (entries are truncated series)."""

    basis: tuple
    a_h: TruncSeries
    b_h: TruncSeries
    witness: EquivalenceWitness


def normalize_basis(d: TruncatedDeformation) -> NormalizedBasis:
    """Rescale e1 and absorb an e1-component into e2 so that the deformed
    products take the family shape; returns the new basis, the recovered
    (a_h, b_h) and the witness mapping the family onto d."""
    if d.dim != 2:
        raise PreconditionViolated("basis normalization is specific to dim 2")
    if d.order < 2:
        raise ValueError("order must be at least 2 to see the limit bracket")
    nov = check_novikov_deformation(d)
    if not nov.passed:
        raise PreconditionViolated(
            "input is not a Novikov deformation", nov.counterexample
        )
    op = d.series_op()
    sring = d.series_ring()
    comm = [x - y for x, y in zip(op.col(0, 1), op.col(1, 0))]
    s1, s2 = comm
    for coeff, where in (
        (s1.coeffs[0], "e1-component of the commutator at h^0"),
        (s1.coeffs[1], "e1-component of the commutator at h^1"),
        (s2.coeffs[0], "e2-component of the commutator at h^0"),
    ):
        if coeff != 0:
            raise PreconditionViolated(f"nonzero {where}", coeff)
    if s2.coeffs[1] != 1:
        raise PreconditionViolated(
            "e2-component of the commutator at h^1 is not 1", s2.coeffs[1]
        )

    mu = s1.shift_down(1)  # == 0 (mod h)
    nu = s2.shift_down(1)  # == 1 (mod h)
    nu_inv = series_invert(nu)
    e1_new = [nu_inv, sring.zero()]
    e2_new = [nu_inv * mu, sring.one()]
    tmat = [[e1_new[0], e2_new[0]], [e1_new[1], e2_new[1]]]
    layers = [
        [[tmat[i][j].coeffs[k] for j in range(2)] for i in range(2)]
        for k in range(d.order)
    ]
    inv_layers = invert_series_matrix(layers)
    tinv = [
        [
            TruncSeries(d.order, tuple(inv_layers[k][i][j] for k in range(d.order)))
            for j in range(2)
        ]
        for i in range(2)
    ]

    def in_new_basis(u, v):
        return matvec(tinv, op.apply(u, v))

    m11 = in_new_basis(e1_new, e1_new)
    m12 = in_new_basis(e1_new, e2_new)
    m21 = in_new_basis(e2_new, e1_new)
    m22 = in_new_basis(e2_new, e2_new)
    a_h = m21[1]
    b_h = m11[1]
    h = sring.h()
    checks = (
        (m11[0], a_h, "e1-coefficient of (e1)h.(e1)h"),
        (m12[0], sring.zero(), "e1-coefficient of (e1)h.(e2)h"),
        (m12[1], a_h + h, "e2-coefficient of (e1)h.(e2)h"),
        (m21[0], sring.zero(), "e1-coefficient of (e2)h.(e1)h"),
        (m22[0], sring.zero(), "e1-coefficient of (e2)h.(e2)h"),
        (m22[1], sring.zero(), "e2-coefficient of (e2)h.(e2)h"),
    )
    for got, want, where in checks:
        if got != want:
            raise PreconditionViolated(
                f"normalized products do not take the family shape at {where}", got
            )

    maps = []
    for k in range(d.order):
        maps.append(
            LinearMap(
                d.ring,
                tuple(tuple(tmat[i][j].coeffs[k] for j in range(2)) for i in range(2)),
            )
        )
    witness = EquivalenceWitness(d.order, tuple(maps))
    family = family2d_construct(a_h, b_h, d.ring)
    rep = verify_witness(family, d, witness)
    if not rep.passed:
        raise AssertionError(
            "internal error: normalization witness failed verification"
        )
    return NormalizedBasis((tuple(e1_new), tuple(e2_new)), a_h, b_h, witness)


# ---------------------------------------------------------------------------
# Normal forms for the two-parameter family
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NormalForm:
    """Canonical representative of a family deformation's equivalence class.

    kind       -- "case1" (a=-h, b != 0), "case2" (limit A00, b eliminable),
                  "case3" (limit A00, b essential), "unital" (b0 != 0),
                  "lambda" (a0 != 0)
    m, leading -- valuation and leading coefficient of the canonical b
                  (case1/case3/unital), None otherwise
    """

    kind: str
    m: int | None
    leading: object
    canonical_a: TruncSeries
    canonical_b: TruncSeries
    witness: EquivalenceWitness

    def as_pair(self):
        return self.canonical_a, self.canonical_b


def normalize_family(a_h: TruncSeries, b_h: TruncSeries, field=None) -> NormalForm:
    """Map (a_h, b_h) to the canonical representative of its equivalence
    class.  The constant terms must match one of the catalog limits:
    a0 = 0 with b0 = 0 (zero product), a0 = 0 with b0 != 0 (unital square),
    or a0 != 0 with b0 = 0 (lambda family)."""
    if a_h.order != b_h.order:
        raise OrderMismatch(f"orders differ: {a_h.order} vs {b_h.order}")
    field = field if field is not None else _infer_field(a_h, b_h)
    order = a_h.order
    sring = SeriesRing(field, order)
    a_h = sring.coerce(a_h)
    b_h = sring.coerce(b_h)
    a0, b0 = a_h.coeffs[0], b_h.coeffs[0]
    h = sring.h()

    if a0 != 0 and b0 != 0:
        raise NotAQuantization(
            "constant terms (a0, b0) both nonzero match no catalog limit"
        )

    if a0 == 0 and b0 == 0:
        if a_h == -h:
            w = h_valuation(b_h)
            if w == math.inf:
                kind, m, leading = "case2", None, None
                ca, cb = a_h, sring.zero()
            else:
                kind, m, leading = "case1", w, b_h.coeffs[w]
                ca = a_h
                cb = TruncSeries(order, (field.zero(),) * w + (b_h.coeffs[w],))
        else:
            v = h_valuation(a_h + h)
            w = h_valuation(b_h)
            if w > v:
                kind, m, leading = "case2", None, None
                ca, cb = a_h, sring.zero()
            else:
                kind, m, leading = "case3", w, b_h.coeffs[w]
                ca = a_h
                cb = TruncSeries(order, (field.zero(),) * w + (b_h.coeffs[w],))
    elif a0 == 0:
        kind, m, leading = "unital", 0, b0
        ca, cb = a_h, TruncSeries.constant(order, b0)
    else:
        kind, m, leading = "lambda", None, None
        ca, cb = a_h, sring.zero()

    verdict = family2d_equiv(a_h, b_h, ca, cb, field)
    if not verdict.is_equivalent:
        raise AssertionError(
            f"internal error: {kind} canonical form is not equivalent to its input "
            f"({verdict.tag} at order {verdict.failure_order})"
        )
    return NormalForm(kind, m, leading, ca, cb, verdict.witness)


# ---------------------------------------------------------------------------
# Operad dimensions
# ---------------------------------------------------------------------------

_TPOIS_DIMS = (1, 2, 6, 20, 74)


def operad_dims(n: int):
    """(dim of the Novikov operad component, dim of the transposed-Poisson
    operad component) in arity n; the second is tabulated only for n <= 5."""
    if not isinstance(n, int) or n < 1 or n > 5:
        raise OutOfRange(f"arity {n!r} outside the tabulated range 1..5")
    nov = math.comb(2 * n - 2, n - 1)
    return nov, _TPOIS_DIMS[n - 1]
