"""Structure-constant algebras and the multilinear identity engine.

An algebra is a tensor c[i][j][k] (product of basis vectors i, j expanded in
the basis) over one of the scalar rings.  Identities are checked by
exhaustive enumeration of basis tuples, which is complete because every
identity in the catalog is multilinear.  When the entries are ParamPoly
values, "zero residual" means the identically-zero polynomial, so one check
certifies a whole parametric family.
"""

from __future__ import annotations

import itertools
import os
from dataclasses import dataclass

from .errors import (
    DependentSpan,
    MissingOp,
    NotCommAssoc,
    NotDerivation,
    OutOfRange,
    UnknownIdentity,
)
from .linalg import rank, solve_affine
from .scalars import QQ, SeriesRing

# ---------------------------------------------------------------------------
# Vectors
# ---------------------------------------------------------------------------


def vadd(u, v):
    return [a + b for a, b in zip(u, v)]


def vsub(u, v):
    return [a - b for a, b in zip(u, v)]


def vneg(u):
    return [-a for a in u]


def vscale(c, u):
    return [c * a for a in u]


def is_zero_vector(u):
    return all(a == 0 for a in u)


# ---------------------------------------------------------------------------
# Core types
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class BilinearOp:
    """Bilinear operation as structure constants: e_i * e_j = sum_k c[i][j][k] e_k."""

    ring: object
    c: tuple

    @property
    def dim(self):
        return len(self.c)

    @classmethod
    def zero(cls, dim, ring=QQ):
        z = ring.zero()
        return cls(ring, tuple(tuple((z,) * dim for _ in range(dim)) for _ in range(dim)))

    @classmethod
    def from_entries(cls, dim, ring, entries):
        """Build from a sparse {(i, j, k): scalar} dict with 0-based indices."""
        c = [[[ring.zero() for _ in range(dim)] for _ in range(dim)] for _ in range(dim)]
        for (i, j, k), value in entries.items():
            c[i][j][k] = c[i][j][k] + ring.coerce(value)
        return cls(ring, tuple(tuple(tuple(col) for col in row) for row in c))

    def entry(self, i, j, k):
        return self.c[i][j][k]

    def col(self, i, j):
        """Coordinates of e_i * e_j."""
        return list(self.c[i][j])

    def apply(self, u, v):
        """Product of two coordinate vectors."""
        n = self.dim
        out = [self.ring.zero()] * n
        for i, ui in enumerate(u):
            if ui == 0:
                continue
            for j, vj in enumerate(v):
                if vj == 0:
                    continue
                w = ui * vj
                row = self.c[i][j]
                for k in range(n):
                    if row[k] != 0:
                        out[k] = out[k] + w * row[k]
        return out

    def map_entries(self, fn, ring=None):
        ring = ring if ring is not None else self.ring
        return BilinearOp(
            ring,
            tuple(
                tuple(tuple(fn(x) for x in col) for col in row) for row in self.c
            ),
        )

    def coerce_to(self, ring):
        return self.map_entries(ring.coerce, ring)

    def transpose(self):
        """Swap the two arguments."""
        n = self.dim
        return BilinearOp(
            self.ring,
            tuple(
                tuple(tuple(self.c[j][i][k] for k in range(n)) for j in range(n))
                for i in range(n)
            ),
        )

    def __add__(self, other):
        return BilinearOp(
            self.ring,
            tuple(
                tuple(
                    tuple(x + y for x, y in zip(ca, cb))
                    for ca, cb in zip(ra, rb)
                )
                for ra, rb in zip(self.c, other.c)
            ),
        )

    def __sub__(self, other):
        return BilinearOp(
            self.ring,
            tuple(
                tuple(
                    tuple(x - y for x, y in zip(ca, cb))
                    for ca, cb in zip(ra, rb)
                )
                for ra, rb in zip(self.c, other.c)
            ),
        )

    def is_zero(self):
        return all(x == 0 for row in self.c for col in row for x in col)

    def entries_equal(self, other):
        return self.dim == other.dim and all(
            x == y
            for ra, rb in zip(self.c, other.c)
            for ca, cb in zip(ra, rb)
            for x, y in zip(ca, cb)
        )


@dataclass(frozen=True)
class LinearMap:
    """Linear endomorphism: column j holds the coordinates of the image of e_j."""

    ring: object
    m: tuple  # m[i][j]

    @property
    def dim(self):
        return len(self.m)

    @classmethod
    def identity(cls, dim, ring=QQ):
        one, zero = ring.one(), ring.zero()
        return cls(ring, tuple(tuple(one if i == j else zero for j in range(dim)) for i in range(dim)))

    @classmethod
    def from_rows(cls, rows, ring=QQ):
        return cls(ring, tuple(tuple(ring.coerce(x) for x in row) for row in rows))

    def col(self, j):
        return [self.m[i][j] for i in range(self.dim)]

    def apply(self, v):
        n = self.dim
        out = [self.ring.zero()] * n
        for j, vj in enumerate(v):
            if vj == 0:
                continue
            for i in range(n):
                if self.m[i][j] != 0:
                    out[i] = out[i] + self.m[i][j] * vj
        return out

    def is_identity(self):
        return all(
            (x == 1 if i == j else x == 0)
            for i, row in enumerate(self.m)
            for j, x in enumerate(row)
        )


@dataclass(eq=False)
class AlgebraPresentation:
    """A finite-dimensional algebra carrying named bilinear operations
    ("dot", "circ", "bracket", ...) over a common scalar ring."""

    dim: int
    ring: object
    basis_labels: tuple
    ops: dict

    def __post_init__(self):
        self.basis_labels = tuple(self.basis_labels)
        if len(self.basis_labels) != self.dim:
            raise ValueError("need one basis label per dimension")
        for label, op in self.ops.items():
            if op.dim != self.dim:
                raise ValueError(f"op {label!r} has dim {op.dim}, expected {self.dim}")

    @property
    def field_tag(self):
        return self.ring.tag

    def op(self, label):
        try:
            return self.ops[label]
        except KeyError:
            raise MissingOp(f"presentation has no {label!r} operation") from None


def default_labels(dim):
    return tuple(f"e{i + 1}" for i in range(dim))


# ---------------------------------------------------------------------------
# Identity reports
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Counterexample:
    indices: tuple  # 1-based basis indices
    residual: tuple
    clause: str = ""


@dataclass(frozen=True)
class IdentityReport:
    identity_name: str
    passed: bool
    counterexample: Counterexample | None = None


# ---------------------------------------------------------------------------
# Identity catalog
# ---------------------------------------------------------------------------
#
# Each identity is a list of clauses (clause_name, arity, ops_used,
# residual_fn); residual_fn takes the op map and a tuple of coordinate
# vectors and returns the residual vector (zero everywhere iff the clause
# holds at those arguments).


def _comm(ops, xs):
    dot = ops["dot"]
    x, y = xs
    return vsub(dot.apply(x, y), dot.apply(y, x))


def _assoc(ops, xs):
    dot = ops["dot"]
    x, y, z = xs
    return vsub(dot.apply(dot.apply(x, y), z), dot.apply(x, dot.apply(y, z)))


def _antisym(ops, xs):
    br = ops["bracket"]
    x, y = xs
    return vadd(br.apply(x, y), br.apply(y, x))


def _jacobi(ops, xs):
    br = ops["bracket"]
    x, y, z = xs
    t1 = br.apply(x, br.apply(y, z))
    t2 = br.apply(y, br.apply(z, x))
    t3 = br.apply(z, br.apply(x, y))
    return vadd(vadd(t1, t2), t3)


def _nov_leftsym(ops, xs):
    circ = ops["circ"]
    x, y, z = xs
    lhs = vsub(circ.apply(circ.apply(x, y), z), circ.apply(circ.apply(y, x), z))
    rhs = vsub(circ.apply(x, circ.apply(y, z)), circ.apply(y, circ.apply(x, z)))
    return vsub(lhs, rhs)


def _nov_rightcomm(ops, xs):
    circ = ops["circ"]
    x, y, z = xs
    return vsub(circ.apply(circ.apply(x, y), z), circ.apply(circ.apply(x, z), y))


def _circ_comm(circ, x, y):
    return vsub(circ.apply(x, y), circ.apply(y, x))


def _nctpa(ops, xs):
    circ = ops["circ"]
    x, y, z = xs
    lhs = vscale(2, circ.apply(_circ_comm(circ, x, y), z))
    rhs = vadd(
        _circ_comm(circ, circ.apply(x, z), y), _circ_comm(circ, x, circ.apply(y, z))
    )
    return vsub(lhs, rhs)


def _tpa(ops, xs):
    dot, br = ops["dot"], ops["bracket"]
    x, y, z = xs
    lhs = vscale(2, dot.apply(br.apply(x, y), z))
    rhs = vadd(br.apply(x, dot.apply(y, z)), br.apply(dot.apply(x, z), y))
    return vsub(lhs, rhs)


def _np1(ops, xs):
    dot, circ = ops["dot"], ops["circ"]
    x, y, z = xs
    return vsub(circ.apply(dot.apply(x, y), z), dot.apply(x, circ.apply(y, z)))


def _np2(ops, xs):
    dot, circ = ops["dot"], ops["circ"]
    x, y, z = xs
    lhs = vsub(dot.apply(circ.apply(x, y), z), dot.apply(circ.apply(y, x), z))
    rhs = vsub(circ.apply(x, dot.apply(y, z)), circ.apply(y, dot.apply(x, z)))
    return vsub(lhs, rhs)


def _perm_sign(perm):
    sign = 1
    for a in range(len(perm)):
        for b in range(a + 1, len(perm)):
            if perm[a] > perm[b]:
                sign = -sign
    return sign


_S4 = [(p, _perm_sign(p)) for p in itertools.permutations(range(4))]


def _s5_residual(ops, xs):
    """Alternating 24-term sum of nested brackets [x_s1,[x_s2,[x_s3,[x_s4,x5]]]]."""
    br = ops["bracket"]
    x5 = xs[4]
    acc = None
    for perm, sign in _S4:
        inner = x5
        for idx in reversed(perm):
            inner = br.apply(xs[idx], inner)
        term = inner if sign > 0 else vneg(inner)
        acc = term if acc is None else vadd(acc, term)
    return acc


IDENTITIES = {
    "COMM_ASSOC": (("commutativity", 2, _comm), ("associativity", 3, _assoc)),
    "LIE": (("antisymmetry", 2, _antisym), ("jacobi", 3, _jacobi)),
    "NOV_LEFTSYM": (("left-symmetry", 3, _nov_leftsym),),
    "NOV_RIGHTCOMM": (("right-commutativity", 3, _nov_rightcomm),),
    "NCTPA": (("bracket-compatibility", 3, _nctpa),),
    "TPA": (("transposed-leibniz", 3, _tpa),),
    "NP1": (("left-mixed-assoc", 3, _np1),),
    "NP2": (("mixed-left-symmetry", 3, _np2),),
    "S5": (("alternating-quintuple", 5, _s5_residual),),
}

_OPS_NEEDED = {
    "COMM_ASSOC": ("dot",),
    "LIE": ("bracket",),
    "NOV_LEFTSYM": ("circ",),
    "NOV_RIGHTCOMM": ("circ",),
    "NCTPA": ("circ",),
    "TPA": ("dot", "bracket"),
    "NP1": ("dot", "circ"),
    "NP2": ("dot", "circ"),
    "S5": ("bracket",),
}


def identity_names():
    return sorted(IDENTITIES)


def _basis_vector(dim, i, ring):
    v = [ring.zero()] * dim
    v[i] = ring.one()
    return v


def identity_residual(alg, identity, vectors):
    """Residuals of every clause of ``identity`` at the given concrete
    argument vectors (one list per clause, in clause order).  Used to
    spot-check multilinearity against the basis-tuple verdicts."""
    name = _canonical_identity(identity)
    _require_ops(alg, name)
    out = []
    for clause, arity, fn in IDENTITIES[name]:
        out.append((clause, fn(alg.ops, tuple(vectors[:arity]))))
    return out


def _canonical_identity(identity):
    name = str(identity).upper().replace("-", "_")
    if name not in IDENTITIES:
        raise UnknownIdentity(
            f"unknown identity {identity!r}; expected one of {', '.join(identity_names())}"
        )
    return name


def _require_ops(alg, name):
    for label in _OPS_NEEDED[name]:
        alg.op(label)


def _thread_count():
    raw = os.environ.get("TPA_THREADS", "1")
    try:
        n = int(raw)
    except ValueError:
        return 1
    return max(1, n)


def _scan_tuples(dim, arity, residual_at):
    """First lexicographic tuple with nonzero residual, or None.

    Honors TPA_THREADS by partitioning the tuple list into contiguous
    blocks; verdicts combine by AND and the earliest violation wins, so the
    result does not depend on the thread count.
    """
    tuples = list(itertools.product(range(dim), repeat=arity))
    threads = _thread_count()
    if threads == 1 or len(tuples) < 2 * threads:
        for t in tuples:
            res = residual_at(t)
            if not is_zero_vector(res):
                return t, res
        return None

    from concurrent.futures import ThreadPoolExecutor

    chunk = (len(tuples) + threads - 1) // threads
    blocks = [tuples[i : i + chunk] for i in range(0, len(tuples), chunk)]

    def scan_block(block):
        for t in block:
            res = residual_at(t)
            if not is_zero_vector(res):
                return t, res
        return None

    with ThreadPoolExecutor(max_workers=threads) as pool:
        for hit in pool.map(scan_block, blocks):
            if hit is not None:
                return hit
    return None


def check_identity(alg: AlgebraPresentation, identity) -> IdentityReport:
    """Exhaustively verify a multilinear identity on all basis tuples."""
    name = _canonical_identity(identity)
    _require_ops(alg, name)
    dim, ring = alg.dim, alg.ring
    basis = [_basis_vector(dim, i, ring) for i in range(dim)]
    for clause, arity, fn in IDENTITIES[name]:
        if name == "S5":
            hit = _scan_s5(alg.op("bracket"))
        else:
            def residual_at(t, fn=fn):
                return fn(alg.ops, tuple(basis[i] for i in t))

            hit = _scan_tuples(dim, arity, residual_at)
        if hit is not None:
            t, res = hit
            return IdentityReport(
                name,
                False,
                Counterexample(tuple(i + 1 for i in t), tuple(res), clause),
            )
    return IdentityReport(name, True, None)


# -- S5 fast path -----------------------------------------------------------
#
# Writing ad(a) for the matrix of [e_a, -], the nested bracket term is a
# column of ad(a1)ad(a2)ad(a3)ad(a4).  The signed sum over S4 is alternating
# in (a1..a4): it vanishes whenever two indices repeat, and permuting the
# indices only flips the sign.  So we precompute it per sorted 4-subset
# (C(n,4) matrix sums instead of n^4) and read every quintuple's residual
# off a stored matrix.  Enumeration order of counterexamples is still plain
# lexicographic over all n^5 quintuples.


def _ad_matrix(br, a):
    n = br.dim
    return [[br.c[a][j][k] for j in range(n)] for k in range(n)]


def _sorted_perm_sign(quad):
    order = sorted(range(4), key=lambda t: quad[t])
    return _perm_sign(tuple(order))


def _scan_s5(br):
    from .linalg import matmul

    n = br.dim
    ad = [_ad_matrix(br, a) for a in range(n)]
    memo = {}
    for subset in itertools.combinations(range(n), 4):
        acc = None
        for perm, sign in _S4:
            prod = ad[subset[perm[0]]]
            for idx in perm[1:]:
                prod = matmul(prod, ad[subset[idx]])
            signed = prod if sign > 0 else [[-x for x in row] for row in prod]
            acc = (
                signed
                if acc is None
                else [[x + y for x, y in zip(ra, rb)] for ra, rb in zip(acc, signed)]
            )
        memo[subset] = acc

    for quad in itertools.product(range(n), repeat=4):
        if len(set(quad)) < 4:
            continue  # alternating sum vanishes on repeated indices
        mat = memo[tuple(sorted(quad))]
        sign = _sorted_perm_sign(quad)
        for i5 in range(n):
            col = [mat[k][i5] for k in range(n)]
            if sign < 0:
                col = [-x for x in col]
            if not is_zero_vector(col):
                return quad + (i5,), col
    return None


# ---------------------------------------------------------------------------
# Constructions
# ---------------------------------------------------------------------------


def commutator(op: BilinearOp) -> BilinearOp:
    """The bracket c'[i][j][k] = c[i][j][k] - c[j][i][k]."""
    return op - op.transpose()


def is_derivation(dot: BilinearOp, deriv: LinearMap) -> IdentityReport:
    """Leibniz check D(e_i e_j) = D(e_i) e_j + e_i D(e_j) on all basis pairs."""
    n = dot.dim
    for i in range(n):
        for j in range(n):
            lhs = deriv.apply(dot.col(i, j))
            ei = _basis_vector(n, i, dot.ring)
            ej = _basis_vector(n, j, dot.ring)
            rhs = vadd(dot.apply(deriv.col(i), ej), dot.apply(ei, deriv.col(j)))
            res = vsub(lhs, rhs)
            if not is_zero_vector(res):
                return IdentityReport(
                    "DERIVATION",
                    False,
                    Counterexample((i + 1, j + 1), tuple(res), "leibniz"),
                )
    return IdentityReport("DERIVATION", True, None)


def _check_comm_assoc(dot: BilinearOp) -> IdentityReport:
    alg = AlgebraPresentation(dot.dim, dot.ring, default_labels(dot.dim), {"dot": dot})
    return check_identity(alg, "COMM_ASSOC")


def gelfand_construct(dot: BilinearOp, deriv: LinearMap) -> BilinearOp:
    """The product x o y = x . D(y) built from a commutative associative
    product and one of its derivations; the result satisfies both Novikov
    identities."""
    ca = _check_comm_assoc(dot)
    if not ca.passed:
        raise NotCommAssoc("dot is not commutative associative", ca)
    der = is_derivation(dot, deriv)
    if not der.passed:
        raise NotDerivation("the map is not a derivation of dot", der)
    n = dot.dim
    c = [
        [
            [None for _ in range(n)]
            for _ in range(n)
        ]
        for _ in range(n)
    ]
    zero = dot.ring.zero()
    for i in range(n):
        for j in range(n):
            acc = [zero] * n
            for m in range(n):
                w = deriv.m[m][j]
                if w == 0:
                    continue
                for k in range(n):
                    if dot.c[i][m][k] != 0:
                        acc[k] = acc[k] + w * dot.c[i][m][k]
            for k in range(n):
                c[i][j][k] = acc[k]
    return BilinearOp(dot.ring, tuple(tuple(tuple(col) for col in row) for row in c))


def derivation_bracket(dot: BilinearOp, deriv: LinearMap) -> BilinearOp:
    """[x, y] = x . D(y) - y . D(x); the commutator of the construction above."""
    return commutator(gelfand_construct(dot, deriv))


@dataclass(frozen=True)
class SubalgebraResult:
    closed: bool
    failing: tuple | None  # (op label, a, b) with 1-based span indices
    induced: AlgebraPresentation | None


def subalgebra_check(alg: AlgebraPresentation, span) -> SubalgebraResult:
    """Is the span of the given independent vectors closed under every op?

    If closed, returns the induced presentation in the span basis (labels
    f1..fr).  Raises DependentSpan when the vectors are not independent.
    """
    span = [list(alg.ring.coerce(x) for x in v) for v in span]
    r = len(span)
    if r == 0:
        raise DependentSpan("empty span")
    coord_matrix = [[span[t][i] for t in range(r)] for i in range(alg.dim)]
    if rank(coord_matrix, alg.ring.one()) < r:
        raise DependentSpan("span vectors are linearly dependent")

    induced_entries = {}
    for label in sorted(alg.ops):
        op = alg.ops[label]
        for a in range(r):
            for b in range(r):
                w = op.apply(span[a], span[b])
                sol = solve_affine(coord_matrix, w, alg.ring.one())
                if not sol.feasible:
                    return SubalgebraResult(False, (label, a + 1, b + 1), None)
                for t in range(r):
                    induced_entries.setdefault(label, {})[(a, b, t)] = sol.particular[t]
    ops = {
        label: BilinearOp.from_entries(r, alg.ring, entries)
        for label, entries in induced_entries.items()
    }
    for label in alg.ops:
        ops.setdefault(label, BilinearOp.zero(r, alg.ring))
    induced = AlgebraPresentation(
        r, alg.ring, tuple(f"f{t + 1}" for t in range(r)), ops
    )
    return SubalgebraResult(True, None, induced)


# ---------------------------------------------------------------------------
# Stock algebras used across tests, scripts and the CLI
# ---------------------------------------------------------------------------


def truncated_poly_dot(n, ring=QQ):
    """Multiplication of K[t]/(t^n) on the basis 1, t, ..., t^(n-1)."""
    entries = {}
    one = ring.one()
    for i in range(n):
        for j in range(n):
            if i + j < n:
                entries[(i, j, i + j)] = one
    return BilinearOp.from_entries(n, ring, entries)


def poly_labels(n):
    return tuple("1" if k == 0 else ("t" if k == 1 else f"t^{k}") for k in range(n))


def euler_derivation(n, ring=QQ):
    """D(t^k) = k t^k, the canonical derivation of K[t]/(t^n)."""
    rows = [[ring.coerce(j) if i == j else ring.zero() for j in range(n)] for i in range(n)]
    return LinearMap(ring, tuple(tuple(row) for row in rows))


def euler_gelfand(n, ring=QQ) -> AlgebraPresentation:
    """K[t]/(t^n) with t^i o t^j = j t^(i+j) and its commutator bracket."""
    dot = truncated_poly_dot(n, ring)
    circ = gelfand_construct(dot, euler_derivation(n, ring))
    return AlgebraPresentation(
        n,
        ring,
        poly_labels(n),
        {"dot": dot, "circ": circ, "bracket": commutator(circ)},
    )


def bounded_ddt_bracket(max_deg, ring=QQ, strict=True):
    """[f, g] = f g' - f' g on polynomials of degree <= max_deg.

    On monomials [t^p, t^q] = (q - p) t^(p+q-1).  Products whose degree
    exceeds max_deg are dropped; with strict=True dropping a term with a
    nonzero coefficient raises OutOfRange instead.
    """
    n = max_deg + 1
    entries = {}
    for p in range(n):
        for q in range(n):
            coeff = q - p
            if coeff == 0:
                continue
            deg = p + q - 1
            if 0 <= deg <= max_deg:
                entries[(p, q, deg)] = ring.coerce(coeff)
            elif strict:
                raise OutOfRange(
                    f"[t^{p}, t^{q}] has degree {deg}, outside 0..{max_deg}"
                )
    return BilinearOp.from_entries(n, ring, entries)


def op_to_series(op: BilinearOp, order) -> BilinearOp:
    """View a plain op as an op over the series ring at the given order."""
    ring = SeriesRing(op.ring, order)
    return op.coerce_to(ring)
