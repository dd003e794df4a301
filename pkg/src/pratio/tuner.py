"""Raising the ratio of two word orders by one factor of p per phase.

A phase follows a tracked path ``S`` along a maximal driver-cycle, one letter
of the driver per step.  Each step replaces the graph by its p-fold cyclic
cover rewired at the edge right after ``S``, which multiplies the driver's
maximal cycle length by p.  The passenger's maximal cycle keeps growing only
while every maximal passenger-cycle contains ``S``; the first step where that
fails (the stall) ends the phase with the driver/passenger ratio raised by p.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass, field, replace
from typing import Callable

import numpy as np

from .action_graph import (ActionGraph, PathTrace, cycles_all_simple, orbit_labels,
                           orbit_sizes, orbits_containing_path)
from .base_quotient import DEFAULT_VERTEX_BUDGET
from .covering import CoveringSpec, gamma, lift_path
from .errors import BudgetExceeded, TuningError
from .permgroup import is_prime_power
from .words import NormalizedProblem, Word

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class TunerState:
    graph: ActionGraph
    step: int
    path: PathTrace
    anchor: int
    driver: Word
    driver_pos: int
    passenger: Word | None = None


@dataclass
class PhaseReport:
    driver: str
    stall_step: int
    driver_order_before: int
    driver_order_after: int
    passenger_order_before: int
    passenger_order_after: int
    steps_log: list[dict] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "driver": self.driver,
            "stall_step": self.stall_step,
            "driver_order_before": self.driver_order_before,
            "driver_order_after": self.driver_order_after,
            "passenger_order_before": self.passenger_order_before,
            "passenger_order_after": self.passenger_order_after,
            "steps": self.steps_log,
        }


def max_cycle_length(g: ActionGraph, u: Word) -> int:
    return int(orbit_sizes(g.word_permutation(u)).max())


def init(base: ActionGraph, driver: Word, q: int, passenger: Word | None = None) -> TunerState:
    if not len(driver):
        raise ValueError("driver must be a nonempty word")
    if not 0 <= q < len(base):
        raise IndexError(f"anchor {q} out of range")
    if max_cycle_length(base, driver) < 2:
        raise TuningError(f"driver {driver} acts trivially on the base graph")
    if not cycles_all_simple(base, driver):
        raise TuningError(f"{driver}-cycles of the base graph are not simple")
    return TunerState(base, -1, PathTrace(q, Word(), (q,)), q, driver, 0, passenger)


def step(st: TunerState, p: int) -> TunerState:
    """Rewire the next driver letter at the anchor and extend the tracked path by one edge."""
    letter = st.driver[st.driver_pos]
    n_before = len(st.graph)
    cover = gamma(st.graph, CoveringSpec(st.anchor, letter, p))
    lifted = lift_path(st.path, 1, cover, n_before)
    end = cover.act(lifted.end, letter)
    path = PathTrace(lifted.start, lifted.letters * Word((letter,)), lifted.visited + (end,))
    for w in (st.driver, st.passenger):
        if w is None:
            continue
        lengths = np.unique(orbit_sizes(cover.word_permutation(w)))
        if not all(is_prime_power(int(k), p) for k in lengths):
            raise TuningError(f"{w}-cycle lengths {lengths.tolist()} are not all powers of {p}")
        if not cycles_all_simple(cover, w):
            raise TuningError(f"{w}-cycles stopped being simple at step {st.step + 1}")
    return TunerState(cover, st.step + 1, path, end, st.driver,
                      (st.driver_pos + 1) % len(st.driver), st.passenger)


def all_maximal_contain(g: ActionGraph, u: Word, s: PathTrace) -> bool:
    """True iff every maximal u-cycle of ``g`` contains the path ``s``."""
    labels = orbit_labels(g.word_permutation(u))
    sizes = np.bincount(labels, minlength=len(g))
    maximal = set(np.flatnonzero(sizes == sizes.max()).tolist())
    return maximal <= orbits_containing_path(g, u, s)


def run_phase(st: TunerState, passenger: Word, p: int, max_steps: int,
              budget: int = DEFAULT_VERTEX_BUDGET,
              trace_log: Callable[[str], None] | None = None) -> tuple[ActionGraph, PhaseReport]:
    """Step until the passenger stalls; return the stalled graph and the phase report."""
    st = replace(st, passenger=passenger)
    if not cycles_all_simple(st.graph, passenger):
        raise TuningError(f"{passenger}-cycles of the starting graph are not simple")
    d0 = max_cycle_length(st.graph, st.driver)
    p0 = max_cycle_length(st.graph, passenger)
    prev_passenger = p0
    report = PhaseReport(str(st.driver), -1, d0, d0, p0, p0)
    for _ in range(max_steps):
        if len(st.graph) * p > budget:
            raise BudgetExceeded(f"vertex budget {budget} exceeded during phase")
        letter = st.driver[st.driver_pos]
        st = step(st, p)
        d_len = max_cycle_length(st.graph, st.driver)
        p_len = max_cycle_length(st.graph, passenger)
        if d_len != d0 * p ** (st.step + 1):
            raise TuningError(
                f"maximal {st.driver}-cycle has length {d_len} at step {st.step}, "
                f"expected {d0 * p ** (st.step + 1)}")
        if st.path.end != st.anchor or len(st.path) != st.step + 1:
            raise TuningError("tracked path lost its anchor")
        stalled_by_path = not all_maximal_contain(st.graph, passenger, st.path)
        stalled_by_length = p_len == prev_passenger
        entry = {"step": st.step, "letter": str(letter), "vertices": len(st.graph),
                 "max_driver_cycle": d_len, "max_passenger_cycle": p_len}
        report.steps_log.append(entry)
        line = (f"step {st.step} letter {letter} vertices {len(st.graph)} "
                f"max_{st.driver} {d_len} max_{passenger} {p_len}")
        log.debug(line)
        if trace_log is not None:
            trace_log(line)
        if stalled_by_path != stalled_by_length:
            raise TuningError(
                f"stall detectors disagree at step {st.step}: "
                f"path says {stalled_by_path}, length says {stalled_by_length}")
        if not stalled_by_length and p_len != prev_passenger * p:
            raise TuningError(f"passenger cycle grew by {p_len // prev_passenger}, not {p}")
        prev_passenger = p_len
        if stalled_by_path:
            report.stall_step = st.step
            report.driver_order_after = d_len
            report.passenger_order_after = p_len
            s = st.step
            if d_len != d0 * p ** (s + 1) or p_len != p0 * p ** s:
                raise TuningError(f"phase law violated at stall step {s}")
            return st.graph, report
    raise TuningError(
        f"no stall within {max_steps} steps; {st.driver} and {passenger} "
        "behave as if they lay in conjugate cyclic subgroups")


def choose_anchor(g: ActionGraph, driver: Word) -> int:
    """Least vertex whose driver-cycle is maximal."""
    sizes = orbit_sizes(g.word_permutation(driver))
    return int(np.flatnonzero(sizes == sizes.max())[0])


def default_max_steps(driver: Word, p: int, budget: int) -> int:
    return len(driver) * max(1, math.ceil(math.log(budget, p)))


@dataclass
class TuneResult:
    graph: ActionGraph
    phases: list[PhaseReport]


def _log_p(n: int, p: int) -> int:
    e = 0
    while n > 1:
        n //= p
        e += 1
    return e


def tune(base: ActionGraph, prob: NormalizedProblem, max_phases: int = 64,
         max_steps: int | None = None, budget: int = DEFAULT_VERTEX_BUDGET,
         trace_log: Callable[[str], None] | None = None) -> TuneResult:
    """Run phases until ``ord(w1)/ord(w2) == p**target`` and ``ord(w_i) > p**m_i``.

    A phase driven by ``w1`` raises the exponent by one, a phase driven by
    ``w2`` lowers it by one; when only the order floors are unmet the next
    phase uses ``w1`` and the one after it restores the ratio with ``w2``.
    """
    p = prob.p
    g = base
    phases: list[PhaseReport] = []
    while True:
        a1 = _log_p(max_cycle_length(g, prob.w1), p)
        a2 = _log_p(max_cycle_length(g, prob.w2), p)
        gap = a1 - a2
        if gap == prob.target_exponent and a1 > prob.m1 and a2 > prob.m2:
            return TuneResult(g, phases)
        if len(phases) >= max_phases:
            raise BudgetExceeded(f"phase budget {max_phases} exhausted")
        driver, passenger = ((prob.w2, prob.w1) if gap > prob.target_exponent
                             else (prob.w1, prob.w2))
        steps = max_steps if max_steps is not None else default_max_steps(driver, p, budget)
        q = choose_anchor(g, driver)
        if trace_log is not None:
            trace_log(f"phase {len(phases)} driver {driver} anchor {q} vertices {len(g)}")
        st = init(g, driver, q)
        g, report = run_phase(st, passenger, p, steps, budget, trace_log)
        phases.append(report)
