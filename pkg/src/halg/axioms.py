"""Exact identity checking for every supported structure kind.

Every defining identity is multilinear in each argument slot once the twist
columns are fixed, so checking it on all basis tuples (triples, or pairs for
the matching Rota-Baxter equation) decides it on the whole carrier.  The
checks here do exactly that, in a fixed deterministic order, and report each
failure as a replayable witness.

Axiom inventory per kind (all over ordered label pairs (a, b), including
a = b, with p the twist):

* matching-hom-assoc:        (x .a y) .b p(z) = p(x) .a (y .b z)
* totally-compatible-hom-assoc: (x .a y) .b p(z) = p(x) .b (y .a z)
* compatible-hom-assoc:      the (a, b) + (b, a) sum of the matching shape
* matching-hom-jacobi:       [p(x),[y,z]_b]_a + [p(y),[z,x]_a]_b
                                               + [p(z),[x,y]_a]_b = 0
* compatible-hom-jacobi:     the same sum plus its (a <-> b) relabeling
* matching-hom-prelie:       p(x)*a(y*b z) - (x*a y)*b p(z)
                               = p(y)*b(x*a z) - (y*b x)*a p(z)
* dendriform-1..3 and tridendriform-1..7: the splitting identities; by
  default dendriform-3 reads p(x) on its right-hand side, and the toggle
  named by DENDRIFORM_AXIOM3_TWIST restores the bare-x reading
* rb kinds: hom-assoc (or hom-jacobi) for the single product, plus
  matching-rb on basis pairs:
      P_a(x) . P_b(y) = P_a(x . P_b(y)) + P_b(P_a(x) . y) + w_b P_a(x . y)

Plain rb kinds are checked with p = id regardless of any stored candidate
twist; side conditions are what test that slot.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (DimensionMismatch, FieldMismatch, KindMismatch, ParamError,
                     ShapeError, UnknownConditionError)
from .linalg import LinearMap, kernel_vector
from .structures import (BRACKET, COMPATIBLE_HOM_ASSOC, COMPATIBLE_HOM_LIE,
                         KIND_ROLES, MATCHING_HOM_ASSOC,
                         MATCHING_HOM_DENDRIFORM, MATCHING_HOM_LIE,
                         MATCHING_HOM_PRELIE, MATCHING_HOM_TRIDENDRIFORM,
                         PLAIN_RB_KINDS, RB_KINDS,
                         TOTALLY_COMPATIBLE_HOM_ASSOC, AlgebraDoc, CheckReport,
                         Violation, make_report)

DENDRIFORM_AXIOM3_TWIST = "dendriform-axiom3-twist"
_KNOWN_TOGGLES = frozenset({DENDRIFORM_AXIOM3_TWIST})

SIDE_CONDITIONS = ("endomorphism", "multiplicative", "commutes", "centroid",
                   "invertible")


def _mul(c, x, y, dim):
    """Raw bilinear evaluation; caller reduces.  Zero entries are skipped."""
    out = [0] * dim
    for i, xi in enumerate(x):
        if not xi:
            continue
        plane = c[i]
        for j, yj in enumerate(y):
            if not yj:
                continue
            w = xi * yj
            for k, s in enumerate(plane[j]):
                if s:
                    out[k] += w * s
    return out


def _app(rows, v):
    """Raw matrix-vector product; caller reduces."""
    return [sum(r[j] * vj for j, vj in enumerate(v) if vj) for r in rows]


def _vadd(*vs):
    return [sum(col) for col in zip(*vs)]


def _vsub(u, v):
    return [a - b for a, b in zip(u, v)]


def _vscale(w, v):
    return [w * x for x in v]


@dataclass(frozen=True)
class _Axiom:
    axiom_id: str
    arity: int        # basis indices quantified: 2 or 3
    labelled: bool    # quantified over ordered label pairs
    fn: object        # fn(a, b, *indices) -> (raw lhs, raw rhs)


class _Ctx:
    """Per-doc evaluation context: raw tensors, twist columns, one-hots."""

    def __init__(self, doc: AlgebraDoc, use_twist: bool):
        self.doc = doc
        self.dim = doc.dim
        self.labels = doc.labels
        self.red = doc.field.reduce
        self.t = {role: {lab: m.c for lab, m in doc.families[role].maps.items()}
                  for role in doc.families}
        one, zero = doc.field.one, doc.field.zero
        self.basis = tuple(tuple(one if i == k else zero for i in range(doc.dim))
                           for k in range(doc.dim))
        if use_twist and doc.twist is not None:
            self.pc = doc.twist.columns()
        else:
            self.pc = self.basis
        if doc.operators is not None:
            self.op_rows = {lab: doc.operators.ops[lab].rows for lab in doc.labels}
            self.op_cols = {lab: doc.operators.ops[lab].columns() for lab in doc.labels}
            self.weights = doc.operators.weights
        else:
            self.op_rows = self.op_cols = self.weights = None

    def canon(self, raw):
        red = self.red
        return tuple(red(v) for v in raw)


def _axioms_for(doc: AlgebraDoc, toggles, verbose: bool):
    kind = doc.kind
    # Plain kinds are the Hom code path with p = id; a stored candidate twist
    # on a plain doc deliberately does not participate here.
    ctx = _Ctx(doc, use_twist=kind not in PLAIN_RB_KINDS)
    dim, pc = ctx.dim, ctx.pc
    mul, app = _mul, _app
    axioms = []

    if kind in (MATCHING_HOM_ASSOC, TOTALLY_COMPATIBLE_HOM_ASSOC,
                COMPATIBLE_HOM_ASSOC):
        c = ctx.t["dot"]

        if kind == MATCHING_HOM_ASSOC:
            def f(a, b, i, j, k, c=c):
                lhs = mul(c[b], c[a][i][j], pc[k], dim)
                rhs = mul(c[a], pc[i], c[b][j][k], dim)
                return lhs, rhs
            axioms.append(_Axiom("matching-hom-assoc", 3, True, f))
        elif kind == TOTALLY_COMPATIBLE_HOM_ASSOC:
            def f(a, b, i, j, k, c=c):
                lhs = mul(c[b], c[a][i][j], pc[k], dim)
                rhs = mul(c[b], pc[i], c[a][j][k], dim)
                return lhs, rhs
            axioms.append(_Axiom("totally-compatible-hom-assoc", 3, True, f))
        else:
            def f(a, b, i, j, k, c=c):
                lhs = _vadd(mul(c[b], c[a][i][j], pc[k], dim),
                            mul(c[a], c[b][i][j], pc[k], dim))
                rhs = _vadd(mul(c[a], pc[i], c[b][j][k], dim),
                            mul(c[b], pc[i], c[a][j][k], dim))
                return lhs, rhs
            axioms.append(_Axiom("compatible-hom-assoc", 3, True, f))

    elif kind in (MATCHING_HOM_LIE, COMPATIBLE_HOM_LIE):
        c = ctx.t["bracket"]
        zero = [0] * dim

        if kind == MATCHING_HOM_LIE:
            def f(a, b, i, j, k, c=c):
                lhs = _vadd(mul(c[a], pc[i], c[b][j][k], dim),
                            mul(c[b], pc[j], c[a][k][i], dim),
                            mul(c[b], pc[k], c[a][i][j], dim))
                return lhs, zero
            axioms.append(_Axiom("matching-hom-jacobi", 3, True, f))
            if verbose:
                def g(a, b, i, j, k, c=c):
                    lhs = mul(c[b], pc[i], c[a][j][k], dim)
                    rhs = mul(c[a], pc[i], c[b][j][k], dim)
                    return lhs, rhs
                axioms.append(_Axiom("mhl-symmetry", 3, True, g))
        else:
            def f(a, b, i, j, k, c=c):
                lhs = _vadd(mul(c[b], pc[i], c[a][j][k], dim),
                            mul(c[b], pc[j], c[a][k][i], dim),
                            mul(c[b], pc[k], c[a][i][j], dim),
                            mul(c[a], pc[i], c[b][j][k], dim),
                            mul(c[a], pc[j], c[b][k][i], dim),
                            mul(c[a], pc[k], c[b][i][j], dim))
                return lhs, zero
            axioms.append(_Axiom("compatible-hom-jacobi", 3, True, f))

    elif kind == MATCHING_HOM_PRELIE:
        c = ctx.t["star"]

        def f(a, b, i, j, k, c=c):
            lhs = _vsub(mul(c[a], pc[i], c[b][j][k], dim),
                        mul(c[b], c[a][i][j], pc[k], dim))
            rhs = _vsub(mul(c[b], pc[j], c[a][i][k], dim),
                        mul(c[a], c[b][j][i], pc[k], dim))
            return lhs, rhs
        axioms.append(_Axiom("matching-hom-prelie", 3, True, f))

    elif kind == MATCHING_HOM_DENDRIFORM:
        L, R = ctx.t["left"], ctx.t["right"]
        twist3 = True if toggles is None else toggles.get(DENDRIFORM_AXIOM3_TWIST, True)

        def d1(a, b, i, j, k):
            lhs = mul(L[b], L[a][i][j], pc[k], dim)
            rhs = _vadd(mul(L[a], pc[i], L[b][j][k], dim),
                        mul(L[b], pc[i], R[a][j][k], dim))
            return lhs, rhs

        def d2(a, b, i, j, k):
            lhs = mul(L[b], R[a][i][j], pc[k], dim)
            rhs = mul(R[a], pc[i], L[b][j][k], dim)
            return lhs, rhs

        def d3(a, b, i, j, k):
            lhs = _vadd(mul(R[a], L[b][i][j], pc[k], dim),
                        mul(R[b], R[a][i][j], pc[k], dim))
            x = pc[i] if twist3 else ctx.basis[i]
            rhs = mul(R[a], x, R[b][j][k], dim)
            return lhs, rhs

        axioms += [_Axiom("dendriform-1", 3, True, d1),
                   _Axiom("dendriform-2", 3, True, d2),
                   _Axiom("dendriform-3", 3, True, d3)]

    elif kind == MATCHING_HOM_TRIDENDRIFORM:
        L, M, R = ctx.t["left"], ctx.t["middle"], ctx.t["right"]

        def t1(a, b, i, j, k):
            lhs = mul(L[b], L[a][i][j], pc[k], dim)
            rhs = _vadd(mul(L[a], pc[i], L[b][j][k], dim),
                        mul(L[b], pc[i], R[a][j][k], dim),
                        mul(L[a], pc[i], M[b][j][k], dim))
            return lhs, rhs

        def t2(a, b, i, j, k):
            lhs = mul(L[b], R[a][i][j], pc[k], dim)
            rhs = mul(R[a], pc[i], L[b][j][k], dim)
            return lhs, rhs

        def t3(a, b, i, j, k):
            lhs = mul(R[a], pc[i], R[b][j][k], dim)
            rhs = _vadd(mul(R[a], L[b][i][j], pc[k], dim),
                        mul(R[b], R[a][i][j], pc[k], dim),
                        mul(R[a], M[b][i][j], pc[k], dim))
            return lhs, rhs

        def t4(a, b, i, j, k):
            lhs = mul(M[b], R[a][i][j], pc[k], dim)
            rhs = mul(R[a], pc[i], M[b][j][k], dim)
            return lhs, rhs

        def t5(a, b, i, j, k):
            lhs = mul(M[b], L[a][i][j], pc[k], dim)
            rhs = mul(M[b], pc[i], R[a][j][k], dim)
            return lhs, rhs

        def t6(a, b, i, j, k):
            lhs = mul(L[b], M[a][i][j], pc[k], dim)
            rhs = mul(M[a], pc[i], L[b][j][k], dim)
            return lhs, rhs

        def t7(a, b, i, j, k):
            lhs = mul(M[b], M[a][i][j], pc[k], dim)
            rhs = mul(M[a], pc[i], M[b][j][k], dim)
            return lhs, rhs

        axioms += [_Axiom(f"tridendriform-{n}", 3, True, f)
                   for n, f in enumerate((t1, t2, t3, t4, t5, t6, t7), start=1)]

    elif kind in RB_KINDS:
        role = KIND_ROLES[kind][0]
        prod = ctx.t[role][ctx.labels[0]]
        basis = ctx.basis
        zero = [0] * dim

        if role == "dot":
            def fa(a, b, i, j, k):
                lhs = mul(prod, prod[i][j], pc[k], dim)
                rhs = mul(prod, pc[i], prod[j][k], dim)
                return lhs, rhs
            axioms.append(_Axiom("hom-assoc", 3, False, fa))
        else:
            def fa(a, b, i, j, k):
                lhs = _vadd(mul(prod, pc[i], prod[j][k], dim),
                            mul(prod, pc[j], prod[k][i], dim),
                            mul(prod, pc[k], prod[i][j], dim))
                return lhs, zero
            axioms.append(_Axiom("hom-jacobi", 3, False, fa))

        op_rows, op_cols, weights = ctx.op_rows, ctx.op_cols, ctx.weights

        def frb(a, b, i, j):
            pa_i = op_cols[a][i]
            pb_j = op_cols[b][j]
            lhs = mul(prod, pa_i, pb_j, dim)
            rhs = _vadd(app(op_rows[a], mul(prod, basis[i], pb_j, dim)),
                        app(op_rows[b], mul(prod, pa_i, basis[j], dim)),
                        _vscale(weights[b], app(op_rows[a], prod[i][j])))
            return lhs, rhs
        axioms.append(_Axiom("matching-rb", 2, True, frb))

    else:  # pragma: no cover - kinds table is closed
        raise ShapeError(f"no axioms registered for kind {kind!r}", "kind")

    return ctx, axioms


def _iter_violations(doc: AlgebraDoc, toggles=None, verbose=False):
    if toggles:
        unknown = set(toggles) - _KNOWN_TOGGLES
        if unknown:
            raise ParamError(f"unknown axiom toggles {sorted(unknown)}")
    ctx, axioms = _axioms_for(doc, toggles, verbose)
    labels = ctx.labels
    dim = ctx.dim
    rng = range(dim)
    canon = ctx.canon
    for ax in axioms:
        pairs = [(a, b) for a in labels for b in labels] if ax.labelled else [(None, None)]
        for a, b in pairs:
            tag = (a, b) if ax.labelled else ()
            if ax.arity == 3:
                for i in rng:
                    for j in rng:
                        for k in rng:
                            lhs, rhs = ax.fn(a, b, i, j, k)
                            lhs, rhs = canon(lhs), canon(rhs)
                            if lhs != rhs:
                                yield Violation(ax.axiom_id, tag, (i, j, k), lhs, rhs)
            else:
                for i in rng:
                    for j in rng:
                        lhs, rhs = ax.fn(a, b, i, j)
                        lhs, rhs = canon(lhs), canon(rhs)
                        if lhs != rhs:
                            yield Violation(ax.axiom_id, tag, (i, j), lhs, rhs)


def check_structure(doc: AlgebraDoc, verbose: bool = False,
                    axiom_toggles=None) -> CheckReport:
    """Check every defining identity of doc's kind on all basis tuples.

    Violations come back in a fixed (axiom, a, b, i, j, k) order.  With
    `verbose` set, matching-hom-lie docs additionally run the redundant
    bracket-symmetry diagnostic (axiom-id "mhl-symmetry").
    """
    return make_report(_iter_violations(doc, axiom_toggles, verbose))


def structure_ok(doc: AlgebraDoc, axiom_toggles=None) -> bool:
    """check_structure's verdict without building the full report."""
    return next(_iter_violations(doc, axiom_toggles), None) is None


def replay_violation(doc: AlgebraDoc, violation: Violation, axiom_toggles=None):
    """Re-evaluate a witness; returns the canonical (lhs, rhs) pair."""
    ctx, axioms = _axioms_for(doc, axiom_toggles,
                              verbose=violation.axiom == "mhl-symmetry")
    for ax in axioms:
        if ax.axiom_id != violation.axiom:
            continue
        a, b = violation.labels if ax.labelled else (None, None)
        lhs, rhs = ax.fn(a, b, *violation.basis)
        return ctx.canon(lhs), ctx.canon(rhs)
    raise ParamError(f"axiom {violation.axiom!r} is not checked for kind {doc.kind!r}")


# --- side conditions ---------------------------------------------------------

def check_side_conditions(doc: AlgebraDoc, conditions,
                          candidate: LinearMap | None = None) -> CheckReport:
    """Check hypothesis tags for a map against doc's products and operators.

    The map under test is `candidate` when given, else the doc's stored twist
    (identity if none).  Tags: endomorphism, multiplicative (the same
    equation, named for its two uses), commutes, centroid, invertible.
    """
    p = candidate if candidate is not None else doc.twist_map()
    if p.field != doc.field:
        raise FieldMismatch("candidate map over the wrong field")
    if p.dim != doc.dim:
        raise DimensionMismatch("candidate map of the wrong dimension")

    ctx = _Ctx(doc, use_twist=False)
    dim = ctx.dim
    canon = ctx.canon
    rows = p.rows
    cols = p.columns()
    violations = []

    for tag in conditions:
        if tag not in SIDE_CONDITIONS:
            raise UnknownConditionError(f"unknown side condition {tag!r}")

        if tag in ("endomorphism", "multiplicative"):
            # p(x * y) = p(x) * p(y), for every role and label.
            for role in KIND_ROLES[doc.kind]:
                t = ctx.t[role]
                for lab in ctx.labels:
                    c = t[lab]
                    for i in range(dim):
                        for j in range(dim):
                            lhs = canon(_app(rows, c[i][j]))
                            rhs = canon(_mul(c, cols[i], cols[j], dim))
                            if lhs != rhs:
                                violations.append(
                                    Violation(tag, (lab,), (i, j), lhs, rhs))

        elif tag == "commutes":
            if doc.operators is None:
                raise ShapeError("commutes requires an operator family", "operators")
            for lab in ctx.labels:
                op_cols = ctx.op_cols[lab]
                op_rows = ctx.op_rows[lab]
                for j in range(dim):
                    lhs = canon(_app(rows, op_cols[j]))
                    rhs = canon(_app(op_rows, cols[j]))
                    if lhs != rhs:
                        violations.append(Violation(tag, (lab,), (j,), lhs, rhs))

        elif tag == "centroid":
            # p(x * y) = p(x) * y, and for non-bracket roles also = x * p(y).
            for role in KIND_ROLES[doc.kind]:
                t = ctx.t[role]
                for lab in ctx.labels:
                    c = t[lab]
                    for i in range(dim):
                        for j in range(dim):
                            lhs = canon(_app(rows, c[i][j]))
                            rhs = canon(_mul(c, cols[i], ctx.basis[j], dim))
                            if lhs != rhs:
                                violations.append(
                                    Violation(tag, (lab,), (i, j), lhs, rhs))
                            if role != BRACKET:
                                rhs2 = canon(_mul(c, ctx.basis[i], cols[j], dim))
                                if lhs != rhs2:
                                    violations.append(
                                        Violation(tag, (lab,), (i, j), lhs, rhs2))

        elif tag == "invertible":
            v = kernel_vector(p)
            if v is not None:
                violations.append(Violation("invertible", (), (),
                                            v, canon(_app(rows, v))))

    return make_report(violations)


def check_morphism(f: LinearMap, src: AlgebraDoc, dst: AlgebraDoc) -> CheckReport:
    """Check that f carries src's structure to dst's: f(x * y) = f(x) *' f(y)
    per role and label, and the twists intertwine (p' o f = f o p)."""
    if src.field != dst.field or f.field != src.field:
        raise FieldMismatch("morphism requires one common field")
    if src.kind != dst.kind:
        raise KindMismatch(f"morphism between {src.kind} and {dst.kind}")
    if src.labels != dst.labels:
        raise KindMismatch("morphism requires identical label sets")
    if src.dim != dst.dim or f.dim != src.dim:
        raise DimensionMismatch("morphism maps must match both carriers")

    sctx = _Ctx(src, use_twist=False)
    dctx = _Ctx(dst, use_twist=False)
    dim = src.dim
    canon = sctx.canon
    rows = f.rows
    cols = f.columns()
    violations = []

    for role in KIND_ROLES[src.kind]:
        ts, td = sctx.t[role], dctx.t[role]
        for lab in src.labels:
            cs, cd = ts[lab], td[lab]
            for i in range(dim):
                for j in range(dim):
                    lhs = canon(_app(rows, cs[i][j]))
                    rhs = canon(_mul(cd, cols[i], cols[j], dim))
                    if lhs != rhs:
                        violations.append(
                            Violation(f"morphism-{role}", (lab,), (i, j), lhs, rhs))

    ps = src.twist_map().columns()
    pd_rows = dst.twist_map().rows
    for j in range(dim):
        lhs = canon(_app(pd_rows, cols[j]))
        rhs = canon(_app(rows, ps[j]))
        if lhs != rhs:
            violations.append(Violation("twist-intertwine", (), (j,), lhs, rhs))

    return make_report(violations)
