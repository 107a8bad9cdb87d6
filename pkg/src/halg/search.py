"""Brute-force enumeration and seeded sampling of small structures.

Searches run over prime fields only, in deterministic lexicographic order
(entry 0 of the first matrix is the most significant digit).  The candidate
count is bounded by SearchSpec.budget up front, so a hopeless request fails
fast instead of spinning.

HALG_THREADS is recognized (see worker_count) but results never depend on
it: enumeration is a single deterministic pass.
"""

from __future__ import annotations

import itertools
import os
import random
from dataclasses import dataclass

from .axioms import check_side_conditions, structure_ok
from .errors import (BudgetExceededError, NonFiniteFieldError, ParamError,
                     PreconditionFailed, UnknownFixtureError)
from .fields import GF, QQ, Field
from .linalg import BilinearMap, LinearMap
from .structures import (ASSOC_RB_KINDS, HOM_ASSOC_MATCHING_RB,
                         MATCHING_HOM_ASSOC, MATCHING_HOM_LIE,
                         MATCHING_HOM_LIE_RB, PLAIN_ASSOC_MATCHING_RB,
                         PLAIN_LIE_MATCHING_RB, PLAIN_RB_KINDS, RB_KINDS,
                         AlgebraDoc, OperatorFamily, make_doc)

TARGET_RB_FAMILY = "rb-family"
TARGET_ENDOMORPHISM = "endomorphism"
TARGET_COMMUTING = "commuting"
TARGETS = (TARGET_RB_FAMILY, TARGET_ENDOMORPHISM, TARGET_COMMUTING)

DEFAULT_BUDGET = 1 << 24


@dataclass(frozen=True)
class SearchSpec:
    """What to enumerate: a base doc, the label count and weights to search
    operator families over (rb-family target only), and a hit limit."""

    base: AlgebraDoc
    target: str
    omega_size: int | None = None
    weights: tuple = ()
    limit: int | None = None
    budget: int = DEFAULT_BUDGET


@dataclass(frozen=True)
class SearchResult:
    docs: tuple
    truncated: bool

    def __iter__(self):
        return iter(self.docs)

    def __len__(self) -> int:
        return len(self.docs)


def _require_finite(field: Field, what: str) -> None:
    if not field.is_prime_field:
        raise NonFiniteFieldError(f"{what} requires a prime field")


def _search_labels(base: AlgebraDoc, omega_size: int):
    if len(base.labels) == omega_size:
        return base.labels
    names = "abcdefghijklmnopqrstuvwxyz"
    return tuple(names[i] if i < len(names) else f"w{i}" for i in range(omega_size))


def _rb_family_plan(spec: SearchSpec):
    """Resolve label set, weights, output kind/twist and the zero-op probe."""
    base = spec.base
    field = base.field
    if base.kind in RB_KINDS:
        product = base.product()
        lie = base.kind not in ASSOC_RB_KINDS
        twist = base.twist_map() if base.kind not in PLAIN_RB_KINDS else None
    elif base.kind in (MATCHING_HOM_ASSOC, MATCHING_HOM_LIE):
        if len(base.labels) != 1:
            raise PreconditionFailed(
                "rb-family search needs a single product on the base")
        role = "dot" if base.kind == MATCHING_HOM_ASSOC else "bracket"
        product = base.families[role].maps[base.labels[0]]
        lie = base.kind == MATCHING_HOM_LIE
        twist = base.twist_map()
    else:
        raise PreconditionFailed(
            f"rb-family search does not accept kind {base.kind!r}")
    if twist is not None and twist.is_identity():
        twist = None
    if spec.omega_size is None or spec.omega_size < 1:
        raise ParamError("rb-family search needs omega_size >= 1")
    labels = _search_labels(base, spec.omega_size)
    if len(spec.weights) != spec.omega_size:
        raise ParamError(
            f"expected {spec.omega_size} weights, got {len(spec.weights)}")
    weights = {lab: field.reduce(w) for lab, w in zip(labels, spec.weights)}
    if lie:
        kind = MATCHING_HOM_LIE_RB if twist is not None else PLAIN_LIE_MATCHING_RB
        role = "bracket"
    else:
        kind = HOM_ASSOC_MATCHING_RB if twist is not None else PLAIN_ASSOC_MATCHING_RB
        role = "dot"
    return product, labels, weights, kind, role, twist


def _rb_doc(field, dim, labels, kind, role, product, ops, weights, twist):
    return make_doc(field, dim, labels, kind, {role: product},
                    operators=OperatorFamily(ops=ops, weights=weights),
                    twist=twist)


def _matrices_from_digits(field, dim, labels, digits):
    per = dim * dim
    ops = {}
    for idx, lab in enumerate(labels):
        chunk = digits[idx * per:(idx + 1) * per]
        rows = [list(chunk[r * dim:(r + 1) * dim]) for r in range(dim)]
        ops[lab] = LinearMap.from_rows(field, rows)
    return ops


def enumerate_docs(spec: SearchSpec) -> SearchResult:
    """Exhaustive lexicographic search.  See the target-specific helpers for
    exactly what is enumerated; docs come back in candidate order."""
    if spec.target not in TARGETS:
        raise ParamError(f"unknown search target {spec.target!r}")
    base = spec.base
    field = base.field
    _require_finite(field, "enumerate_docs")
    dim = base.dim
    p = field.p

    if spec.target == TARGET_RB_FAMILY:
        product, labels, weights, kind, role, twist = _rb_family_plan(spec)
        entries = dim * dim * len(labels)
        total = p ** entries
        if total > spec.budget:
            raise BudgetExceededError(
                f"{total} candidates exceed the budget {spec.budget}")
        zero_ops = {lab: LinearMap.from_rows(field, [[0] * dim for _ in range(dim)])
                    for lab in labels}
        probe = _rb_doc(field, dim, labels, kind, role, product, zero_ops,
                        weights, twist)
        if not structure_ok(probe):
            return SearchResult((), False)
        hits = []
        examined = 0
        for digits in itertools.product(range(p), repeat=entries):
            examined += 1
            ops = _matrices_from_digits(field, dim, labels, digits)
            doc = _rb_doc(field, dim, labels, kind, role, product, ops,
                          weights, twist)
            if structure_ok(doc):
                hits.append(doc)
                if spec.limit is not None and len(hits) >= spec.limit:
                    return SearchResult(tuple(hits), examined < total)
        return SearchResult(tuple(hits), False)

    # endomorphism / commuting: candidate twists for a plain matching RB doc
    if base.kind not in PLAIN_RB_KINDS:
        raise PreconditionFailed(
            f"{spec.target} search needs a plain matching RB base")
    if not structure_ok(base):
        raise PreconditionFailed(f"{spec.target} search: base fails its check")
    if spec.omega_size is not None and spec.omega_size != len(base.labels):
        raise ParamError("omega_size cannot be changed for this target")
    if spec.weights and tuple(spec.weights) != tuple(
            base.operators.weights[lab] for lab in base.labels):
        raise ParamError("weights cannot be changed for this target")
    tag = "endomorphism" if spec.target == TARGET_ENDOMORPHISM else "commutes"
    entries = dim * dim
    total = p ** entries
    if total > spec.budget:
        raise BudgetExceededError(
            f"{total} candidates exceed the budget {spec.budget}")
    hits = []
    examined = 0
    for digits in itertools.product(range(p), repeat=entries):
        examined += 1
        cand = LinearMap.from_rows(
            field, [list(digits[r * dim:(r + 1) * dim]) for r in range(dim)])
        if check_side_conditions(base, [tag], candidate=cand).passed:
            hits.append(_with_candidate(base, cand))
            if spec.limit is not None and len(hits) >= spec.limit:
                return SearchResult(tuple(hits), examined < total)
    return SearchResult(tuple(hits), False)


def _with_candidate(base: AlgebraDoc, cand: LinearMap) -> AlgebraDoc:
    """Re-emit a plain doc with the found map in the candidate-twist slot.
    An identity candidate normalizes away, by the plain-kind convention."""
    return make_doc(base.field, base.dim, base.omega, base.kind, base.families,
                    operators=base.operators, twist=cand)


def seeded_sample(spec: SearchSpec, seed: int, count: int) -> SearchResult:
    """Sample candidates with replacement until `count` hits or the attempt
    cap; deterministic for a given seed.  truncated means a shortfall."""
    if spec.target not in TARGETS:
        raise ParamError(f"unknown search target {spec.target!r}")
    if count < 0:
        raise ParamError(f"count must be non-negative, got {count!r}")
    base = spec.base
    field = base.field
    _require_finite(field, "seeded_sample")
    dim = base.dim
    rng = random.Random(seed)
    cap = max(100000, 1000 * count)

    if spec.target == TARGET_RB_FAMILY:
        product, labels, weights, kind, role, twist = _rb_family_plan(spec)
        entries = dim * dim * len(labels)
        zero_ops = {lab: LinearMap.from_rows(field, [[0] * dim for _ in range(dim)])
                    for lab in labels}
        probe = _rb_doc(field, dim, labels, kind, role, product, zero_ops,
                        weights, twist)
        if not structure_ok(probe):
            return SearchResult((), count > 0)
        hits = []
        for _ in range(cap):
            if len(hits) >= count:
                break
            digits = tuple(field.random_scalar(rng) for _ in range(entries))
            ops = _matrices_from_digits(field, dim, labels, digits)
            doc = _rb_doc(field, dim, labels, kind, role, product, ops,
                          weights, twist)
            if structure_ok(doc):
                hits.append(doc)
        return SearchResult(tuple(hits), len(hits) < count)

    if base.kind not in PLAIN_RB_KINDS:
        raise PreconditionFailed(
            f"{spec.target} search needs a plain matching RB base")
    if not structure_ok(base):
        raise PreconditionFailed(f"{spec.target} search: base fails its check")
    tag = "endomorphism" if spec.target == TARGET_ENDOMORPHISM else "commutes"
    hits = []
    for _ in range(cap):
        if len(hits) >= count:
            break
        cand = LinearMap.from_rows(
            field, [[field.random_scalar(rng) for _ in range(dim)]
                    for _ in range(dim)])
        if check_side_conditions(base, [tag], candidate=cand).passed:
            hits.append(_with_candidate(base, cand))
    return SearchResult(tuple(hits), len(hits) < count)


def _fixtures_over(field: Field) -> dict:
    id2 = LinearMap.identity(field, 2)
    dot_n2 = BilinearMap.from_nested(field, [[[1, 0], [0, 1]], [[0, 1], [0, 0]]])
    fx = {}
    fx["Z2"] = make_doc(field, 2, ("a",), MATCHING_HOM_ASSOC,
                        {"dot": BilinearMap.zero(field, 2)}, twist=id2)
    fx["D1"] = make_doc(field, 1, ("a",), MATCHING_HOM_ASSOC,
                        {"dot": BilinearMap.from_nested(field, [[[1]]])},
                        twist=LinearMap.identity(field, 1))
    fx["N2"] = make_doc(field, 2, ("a",), MATCHING_HOM_ASSOC, {"dot": dot_n2},
                        twist=id2)
    fx["N2-Pnil-w0"] = make_doc(
        field, 2, ("a",), PLAIN_ASSOC_MATCHING_RB, {"dot": dot_n2},
        operators=OperatorFamily(
            ops={"a": LinearMap.from_rows(field, [[0, 0], [1, 0]])},
            weights={"a": 0}))
    fx["N2-id-wm1"] = make_doc(
        field, 2, ("a",), PLAIN_ASSOC_MATCHING_RB, {"dot": dot_n2},
        operators=OperatorFamily(ops={"a": id2},
                                 weights={"a": field.reduce(-1)}))
    fx["aff2"] = make_doc(
        field, 2, ("a",), MATCHING_HOM_LIE,
        {"bracket": BilinearMap.from_nested(
            field, [[[0, 0], [0, 1]], [[0, field.reduce(-1)], [0, 0]]])},
        twist=id2)
    return fx


def _catalog() -> dict:
    """Small named examples: Z2 the zero product, D1 the ground field, N2
    the dual numbers, aff2 the nonabelian 2-dim Lie algebra, plus N2 with a
    nilpotent weight-0 operator and with the identity at weight -1; each over
    the rationals and reduced mod 2 and mod 3."""
    out = {}
    for suffix, field in (("", QQ), ("-F2", GF(2)), ("-F3", GF(3))):
        for name, doc in _fixtures_over(field).items():
            out[name + suffix] = doc
    return out


def fixture_names():
    return tuple(sorted(_catalog()))


def catalog(name: str | None = None):
    """All fixtures as a dict, or one doc by name."""
    table = _catalog()
    if name is None:
        return table
    try:
        return table[name]
    except KeyError:
        raise UnknownFixtureError(
            f"unknown fixture {name!r}; names: {', '.join(sorted(table))}") from None


def worker_count() -> int:
    """Parse HALG_THREADS (default 1).  Reserved: searches are a single
    deterministic pass, so results are identical for every setting."""
    raw = os.environ.get("HALG_THREADS")
    if raw is None:
        return 1
    try:
        k = int(raw)
    except ValueError:
        raise ParamError(f"HALG_THREADS must be an integer, got {raw!r}") from None
    if k < 1:
        raise ParamError(f"HALG_THREADS must be positive, got {k}")
    return k
