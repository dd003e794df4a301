"""Self-contained JSON certificates for prescribed order ratios, and their verifier.

A certificate lists two permutations of ``0..N-1`` (the images of x and y)
together with the claimed orders of the input words.  ``verify`` re-derives
every claim from the permutations alone and names the first clause that
fails.
"""

from __future__ import annotations

import json
import logging
from dataclasses import asdict, dataclass, field
from typing import Any, Callable

import numpy as np

from .action_graph import ActionGraph, order_of_word
from .base_quotient import DEFAULT_VERTEX_BUDGET, find_base
from .errors import BudgetExceeded, TuningError
from .permgroup import PermutationPair, element_order, group_order, is_permutation, is_prime_power
from .tuner import tune
from .words import Word, is_prime, normalize_inputs

log = logging.getLogger(__name__)

VERSION = 1
LEVELS = ("p-action", "p-group")
# Above this degree the stabilizer chain is skipped and the level drops to p-action.
DEFAULT_GROUP_ORDER_DEGREE = 1024
FIELDS = ("version", "u1", "u2", "p", "n", "degree", "perm_x", "perm_y", "order_u1",
          "order_u2", "group_order", "group_order_factors", "level", "base_degree_d", "phases")


class MalformedCertificate(ValueError):
    """The certificate file is not valid JSON or lacks required fields."""


@dataclass
class Certificate:
    version: int
    u1: str
    u2: str
    p: int
    n: int
    degree: int
    perm_x: list[int]
    perm_y: list[int]
    order_u1: int
    order_u2: int
    group_order: int | None
    group_order_factors: dict[int, int] | None
    level: str
    base_degree_d: int
    phases: list[dict]
    # why the level was lowered to p-action; never serialized
    notes: list[str] = field(default_factory=list, compare=False)

    def to_dict(self) -> dict[str, Any]:
        d = asdict(self)
        d.pop("notes")
        if self.group_order_factors is not None:
            d["group_order_factors"] = {str(k): v for k, v in self.group_order_factors.items()}
        return d

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=1)

    @classmethod
    def from_dict(cls, d: Any) -> Certificate:
        if not isinstance(d, dict):
            raise MalformedCertificate("certificate must be a JSON object")
        missing = [f for f in FIELDS if f not in d]
        if missing:
            raise MalformedCertificate(f"missing fields: {', '.join(missing)}")
        factors = d["group_order_factors"]
        try:
            if factors is not None:
                factors = {int(k): int(v) for k, v in factors.items()}
            return cls(**{f: d[f] for f in FIELDS if f != "group_order_factors"},
                       group_order_factors=factors)
        except (TypeError, ValueError, AttributeError) as exc:
            raise MalformedCertificate(str(exc)) from exc

    @classmethod
    def from_json(cls, text: str) -> Certificate:
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise MalformedCertificate(f"invalid JSON: {exc}") from exc
        return cls.from_dict(data)

    def graph(self) -> ActionGraph:
        return ActionGraph(self.perm_x, self.perm_y)


def load(path) -> Certificate:
    with open(path) as fh:
        return Certificate.from_json(fh.read())


def save(cert: Certificate, path) -> None:
    with open(path, "w") as fh:
        fh.write(cert.to_json())
        fh.write("\n")


def build(u1: str, u2: str, p: int, n: int, max_degree: int = DEFAULT_VERTEX_BUDGET,
          max_truncation: int = 8, group_order_degree: int = DEFAULT_GROUP_ORDER_DEGREE,
          trace_log: Callable[[str], None] | None = None) -> Certificate:
    """Construct a finite action in which ``ord(u1) / ord(u2) == p**n``.

    Raises ``InadmissibleError`` for words in conjugate cyclic subgroups,
    ``BudgetExceeded`` when a degree or truncation budget runs out and
    ``TuningError`` when a runtime invariant fails.
    """
    w1, w2 = Word.parse(u1), Word.parse(u2)
    prob = normalize_inputs(w1, w2, p, n)
    base, d = find_base(prob.w1, prob.w2, p, max_truncation, max_degree)
    if trace_log is not None:
        trace_log(f"base degree {d} vertices {len(base)} roots {prob.w1} {prob.w2}")
    result = tune(base, prob, budget=max_degree, trace_log=trace_log)
    g = result.graph

    o1, o2 = order_of_word(g, w1), order_of_word(g, w2)
    for w, m, o in ((prob.w1, prob.m1, o1), (prob.w2, prob.m2, o2)):
        if order_of_word(g, w) != o * p ** m:
            raise TuningError(f"order of {w} is not {o} * {p}^{m}")
    if not _has_ratio(o1, o2, p, n):
        raise TuningError(f"final orders {o1}, {o2} do not have ratio {p}^{n}")
    if min(o1, o2) < p:
        raise TuningError("an input word acts trivially on the final graph")

    pair = PermutationPair.from_graph(g)
    notes = []
    order, factors = None, None
    try:
        order, factors = group_order(pair, group_order_degree)
    except BudgetExceeded as exc:
        notes.append(f"group order not computed: {exc}")
    level = "p-group" if order is not None and is_prime_power(order, p) else "p-action"
    if order is not None and level == "p-action":
        notes.append(f"group order {order} is not a power of {p}")
    for note in notes:
        log.info("certificate level lowered to p-action: %s", note)

    return Certificate(
        version=VERSION, u1=str(w1), u2=str(w2), p=p, n=n, degree=len(g),
        perm_x=list(pair.perm_x), perm_y=list(pair.perm_y),
        order_u1=o1, order_u2=o2, group_order=order, group_order_factors=factors,
        level=level, base_degree_d=d,
        phases=[{k: v for k, v in ph.to_dict().items() if k != "steps"} for ph in result.phases],
        notes=notes)


def _has_ratio(o1: int, o2: int, p: int, n: int) -> bool:
    return o1 * p ** max(0, -n) == o2 * p ** max(0, n)


@dataclass
class VerifyReport:
    ok: bool
    clause: str | None = None
    detail: str = ""

    def __str__(self) -> str:
        return "accepted" if self.ok else f"rejected: {self.clause} ({self.detail})"


def _traced_order(perm_x: np.ndarray, perm_y: np.ndarray, w: Word) -> int:
    g = ActionGraph(perm_x, perm_y)
    return element_order(g.word_permutation(w).tolist())


def verify(cert: Certificate, max_group_degree: int | None = None) -> VerifyReport:
    """Re-check every claim of ``cert`` from its permutations; the first failing clause is named."""
    def fail(clause: str, detail: str) -> VerifyReport:
        return VerifyReport(False, clause, detail)

    ints = (cert.p, cert.n, cert.degree, cert.order_u1, cert.order_u2)
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in ints):
        return fail("malformed field", "p, n, degree and orders must be integers")
    if cert.version != VERSION:
        return fail("unsupported version", f"version {cert.version}")
    try:
        w1, w2 = Word.parse(cert.u1), Word.parse(cert.u2)
    except (ValueError, TypeError) as exc:
        return fail("unparsable word", str(exc))
    if not is_prime(cert.p):
        return fail("p not prime", str(cert.p))
    for name, perm in (("perm_x", cert.perm_x), ("perm_y", cert.perm_y)):
        if not isinstance(perm, list) or not is_permutation(perm):
            return fail("not a permutation", f"{name} is not a bijection of 0..N-1")
        if len(perm) != cert.degree:
            return fail("degree mismatch", f"{name} has length {len(perm)}, degree {cert.degree}")
    if not is_prime_power(cert.degree, cert.p):
        return fail("degree not a power of p", f"degree {cert.degree}, p {cert.p}")

    px, py = np.asarray(cert.perm_x), np.asarray(cert.perm_y)
    o1, o2 = _traced_order(px, py, w1), _traced_order(px, py, w2)
    if (o1, o2) != (cert.order_u1, cert.order_u2):
        return fail("claimed order mismatch",
                    f"claimed ({cert.order_u1}, {cert.order_u2}), traced ({o1}, {o2})")
    if not _has_ratio(o1, o2, cert.p, cert.n):
        return fail("ratio mismatch", f"{o1}/{o2} is not {cert.p}^{cert.n}")
    if min(o1, o2) < 2:
        return fail("trivial order", "an input word acts trivially")

    if cert.group_order is not None:
        try:
            order, factors = group_order(PermutationPair(tuple(cert.perm_x), tuple(cert.perm_y)),
                                         max_group_degree)
        except BudgetExceeded as exc:
            return fail("group order not recomputed", str(exc))
        if order != cert.group_order or factors != cert.group_order_factors:
            return fail("group order mismatch", f"claimed {cert.group_order}, recomputed {order}")
        expected = "p-group" if is_prime_power(order, cert.p) else "p-action"
    else:
        if cert.group_order_factors is not None:
            return fail("group order mismatch", "factors given without an order")
        expected = "p-action"
    if cert.level != expected:
        return fail("level mismatch", f"claimed {cert.level!r}, evidence supports {expected!r}")
    return VerifyReport(True)
