"""Property suites: generated instances checked against the theorems.

Each trial draws its own ``random.Random`` from ``(seed, profile, trial)``
so trials are independent and any single one can be replayed.  Reports
serialize with sorted keys; wall-clock time is kept out of the JSON unless
asked for, so equal seeds give byte-identical reports.
"""

from __future__ import annotations

import json
import random
import time
from dataclasses import dataclass, field
from typing import Callable, Iterable

from .canvas import Canvas, Subgraph, canvas_violations, make_lists
from .decide import Obstructed, certify_by_governments, decide_with_certificate, hypothesis_report
from .errors import HarmonicaError, HypothesisViolated
from .government_harmonica import (
    GovernmentHarmonica,
    check_conversion,
    convert_harmonica,
    find_government_harmonica,
    list_size_violations,
    verify_government_harmonica,
)
from .governments import classify, find_confederacy, find_government, is_government
from .generators import Instance, random_canvas
from .harmonicas import BASE, START, STEP, certificate_list_pattern
from .plane_graph import PlaneGraph, chords_of_outer
from .reductions import democratic_reduction, extend_reduced_coloring
from .solver import (
    EdgeColoringSet,
    check_chord_composition,
    count_bad_wheel_colorings,
    enumerate_colorings,
    extension_set,
    extension_set_by_enumeration,
    find_coloring,
    is_proper_coloring,
)

PASS, FAIL, SKIP = "pass", "fail", "skip"

_PATTERN = {START: (1, 2, 2), STEP: (2, 2, 3), BASE: (2, 2, 2)}


@dataclass
class SuiteReport:
    seed: object
    trials: int
    counts: dict = field(default_factory=dict)
    stats: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)
    elapsed: float = 0.0

    def record(self, prop: str, status: str) -> None:
        row = self.counts.setdefault(prop, {PASS: 0, FAIL: 0, SKIP: 0})
        row[status] += 1

    def bump(self, key: str, by: int = 1) -> None:
        self.stats[key] = self.stats.get(key, 0) + by

    @property
    def failures(self) -> int:
        return sum(row[FAIL] for row in self.counts.values())

    def passes(self, prop: str) -> int:
        return self.counts.get(prop, {}).get(PASS, 0)

    def to_json(self, timing: bool = False) -> dict:
        out = {
            "counterexamples": self.counterexamples,
            "counts": self.counts,
            "seed": self.seed,
            "stats": self.stats,
            "trials": self.trials,
        }
        if timing:
            out["elapsed_seconds"] = round(self.elapsed, 3)
        return out

    def dumps(self, timing: bool = False) -> str:
        return json.dumps(self.to_json(timing), sort_keys=True, indent=1)


class _Trial:
    """Collects property outcomes for one instance."""

    def __init__(self, report: SuiteReport, inst: Instance, trial: int):
        self.report, self.inst, self.trial = report, inst, trial

    def check(self, prop: str, outcome: bool | None, detail: str = "") -> None:
        if outcome is None:
            self.report.record(prop, SKIP)
            return
        self.report.record(prop, PASS if outcome else FAIL)
        if not outcome:
            self.report.counterexamples.append(
                {"detail": detail, "instance": self.inst.to_json(), "property": prop, "trial": self.trial}
            )

    def guard(self, prop: str, fn: Callable[[], bool | None | tuple]) -> None:
        try:
            res = fn()
        except Exception as exc:  # a crash is a failed property, with the dump
            self.check(prop, False, f"{type(exc).__name__}: {exc}")
            return
        if isinstance(res, tuple):
            self.check(prop, *res)
        else:
            self.check(prop, res)


# --- audits ---------------------------------------------------------------
def audit(inst: Instance) -> list[str]:
    """Hypotheses of the profile's theorem that the instance fails (empty when fine)."""
    G, L, S, r = inst.graph, inst.lists, inst.canvas.S, inst.roles
    issues = [f"{v.clause} at {v.vertex}" for v in canvas_violations(G, S, L)]
    if not G.outer_is_cycle():
        issues.append("outer walk is not a cycle")
    name = inst.profile
    if name == "thm1":
        p1, p2 = r["p1"], r["p2"]
        if not G.is_outer_edge(p1, p2) or L[p1] == L[p2]:
            issues.append("S is not an outer edge with different lists")
    elif name == "thm2":
        if any(len(L[v]) < 2 for v in S.vertices) or len(S.vertices) != 2:
            issues.append("S is not two vertices with lists of size two")
    elif name == "thm3":
        issues.extend(sorted(hypothesis_report(G, L, r["p1"], r["p2"])))
    elif name == "lemma5":
        p, q, rr = r["S"]
        if chords_of_outer(G) or G.has_edge(p, rr):
            issues.append("chord present or S not induced")
    elif name == "chords":
        if tuple(r["U"]) not in chords_of_outer(G):
            issues.append("U is not a chord")
    elif name == "thm9":
        C = EdgeColoringSet.of(r["P"], r["C"])
        if not C.respects(L):
            issues.append("C does not respect the lists")
        if r["kind"] == "government" and not is_government(C):
            issues.append("C is not a government")
        if len(G) > 8:
            issues.append("more than eight vertices")
    return issues


# --- per-profile properties ----------------------------------------------
def _cross_check(t: _Trial) -> None:
    G, L = t.inst.graph, t.inst.lists
    if len(G) > 10:
        t.check("solver.cross_check", None)
        return
    fast = find_coloring(G, L) is not None
    slow = next(enumerate_colorings(G, L), None) is not None
    t.check("solver.cross_check", fast == slow, f"kernel says {fast}, enumeration says {slow}")


def _thm1(t: _Trial, rng) -> None:
    G, L = t.inst.graph, t.inst.lists
    t.guard("thm1.colorable", lambda: find_coloring(G, L) is not None)
    _cross_check(t)


def _thm2(t: _Trial, rng) -> None:
    G, L = t.inst.graph, t.inst.lists
    t.guard("thm2.colorable", lambda: find_coloring(G, L) is not None)
    _cross_check(t)


def _thm3(t: _Trial, rng) -> None:
    inst, rep = t.inst, t.report
    G, L, p1, p2 = inst.graph, inst.lists, inst.roles["p1"], inst.roles["p2"]
    if inst.roles.get("planted"):
        rep.bump(f"thm3.planted.{inst.roles['planted']}")
    box = {}

    def equivalence():
        box["d"] = decide_with_certificate(G, L, p1, p2)
        return True

    t.guard("thm3.equivalence", equivalence)
    d = box.get("d")
    if d is None:
        return
    obstructed = isinstance(d, Obstructed)
    rep.bump("thm3.obstructed" if obstructed else "thm3.colorable")

    def soundness():
        if not obstructed:
            return None
        return next(enumerate_colorings(G, L), None) is None, "certificate issued for a colorable instance"

    t.guard("soundness", soundness)

    def pattern():
        if not obstructed:
            return None
        got = certificate_list_pattern(L, d.certificate)
        return all(sizes == _PATTERN[kind] for kind, sizes in got), f"list sizes {got}"

    t.guard("thm3.list_pattern", pattern)

    def route():
        other = certify_by_governments(G, L, p1, p2)
        return isinstance(other, Obstructed) == obstructed, "government route disagrees"

    t.guard("thm3.government_route", route)

    def two_colors():
        if len(L[p1]) < 2:
            return None
        return not obstructed, "obstructed with two colors at p1"

    t.guard("thm3.two_colors_at_p1", two_colors)


def _lemma5(t: _Trial, rng) -> None:
    def bad():
        n = count_bad_wheel_colorings(t.inst.canvas)
        t.report.bump(f"lemma5.bad_{n}")
        return n <= 1, f"{n} colorings of S do not extend"

    t.guard("lemma5.at_most_one_bad", bad)


def _chords(t: _Trial, rng) -> None:
    T, r = t.inst.canvas, t.inst.roles
    C = EdgeColoringSet.of(r["P"], r["C"])
    t.guard("chords.composition", lambda: check_chord_composition(T, r["P"], C, r["U"], r["P2"]))

    def routes():
        a = extension_set(T, r["P"], C, r["P2"])
        b = extension_set_by_enumeration(T, r["P"], C, r["P2"])
        return a == b, f"kernel {sorted(a.pairs)} vs enumeration {sorted(b.pairs)}"

    t.guard("phi.routes_agree", routes)


def _reduction(t: _Trial, rng, samples: int = 2) -> None:
    T, r = t.inst.canvas, t.inst.roles
    box = {}

    def canvas_ok():
        R = democratic_reduction(T, r["path"], r["L0"], r["x"])
        box["R"] = R
        red = R.reduced
        bad = canvas_violations(red.graph, red.S, red.lists)
        return not bad, f"reduced triple is not a canvas: {bad}"

    t.guard("reduction.canvas", canvas_ok)
    R = box.get("R")
    if R is None:
        return
    red = R.reduced
    pool = []
    for phi in enumerate_colorings(red.graph, red.lists):
        pool.append(phi)
        if len(pool) >= 64:
            break
    if not pool:
        t.check("reduction.extension", None)
        return
    for phi in rng.sample(pool, min(samples, len(pool))):

        def extends(phi=phi):
            out = extend_reduced_coloring(R, phi)
            ok = is_proper_coloring(T.graph, T.lists, out) and all(out[v] == c for v, c in phi.items())
            return ok, f"extension {out} of {phi} is not proper"

        t.guard("reduction.extension", extends)


def _star_lists(gh: GovernmentHarmonica) -> dict:
    """Lists with ``P`` narrowed to what the government uses; extension sets do not change."""
    L = dict(gh.lists)
    C = gh.government
    for v in gh.P:
        L[v] = C.members.colors_at(v)
    return L


def _thm9(t: _Trial, rng) -> None:
    inst, rep = t.inst, t.report
    T, r = inst.canvas, inst.roles
    P, P2 = tuple(r["P"]), tuple(r["P2"])
    C = EdgeColoringSet.of(P, r["C"])
    rep.bump(f"thm9.kind.{r['kind']}")
    box = {}

    def contains_government():
        phi = extension_set(T, P, C, P2)
        box["phi"] = phi
        return find_government(phi) is not None, f"Phi={sorted(phi.pairs)}"

    t.guard("thm9.government", contains_government)
    phi = box.get("phi")
    if phi is None:
        return
    conf = find_confederacy(phi)

    def dichotomy():
        if conf is not None:
            rep.bump("thm9.confederacy")
            return True
        if not is_government(C):
            return False, "no confederacy in Phi although C is not a government"
        gh = find_government_harmonica(T, P, P2, classify(C).government)
        box["gh"] = gh
        rep.bump("thm9.harmonica")
        return gh is not None, "no confederacy and no harmonica"

    t.guard("thm9.dichotomy", dichotomy)

    def confederacy_kept():
        if is_government(C):
            return None
        return conf is not None, "confederacy lost"

    t.guard("thm9.confederacy_kept", confederacy_kept)

    gh = box.get("gh")
    if gh is None:
        t.check("harmonica.list_sizes", None)
        t.check("harmonica.phi_is_government", None)
        t.check("harmonica.conversion", None)
        return

    t.guard("harmonica.verifies", lambda: (bool(verify_government_harmonica(gh)), verify_government_harmonica(gh).reason))
    t.guard("harmonica.list_sizes", lambda: (not list_size_violations(gh), f"list sizes off at {list_size_violations(gh)}"))

    def own_phi():
        own = gh.extension()
        box["own"] = own
        return is_government(own), f"Phi inside the harmonica is {sorted(own.pairs)}"

    t.guard("harmonica.phi_is_government", own_phi)

    def roundtrip():
        own = box.get("own")
        if own is None or len(own) < 2 or classify(own).kind != "dictatorship":
            return None
        star = GovernmentHarmonica(gh.host, _star_lists(gh), gh.P, gh.target, gh.government, gh.rules)
        if not verify_government_harmonica(star):
            rep.bump("conversion.not_applicable")
            return None
        try:
            conv = convert_harmonica(star)
        except HypothesisViolated as exc:
            rep.bump(f"conversion.not_applicable.{exc.clause}")
            return None
        verdict = check_conversion(conv)
        if not verdict:
            return False, f"converted harmonica fails: {verdict.reason}"
        host_lists = dict(star.lists)
        host_lists[conv.dictator] = host_lists[conv.dictator] - {conv.color}
        if any(not host_lists[v] for v in T.graph.vertices):
            return False, "empty list after removing the dictated color"
        rep.bump("conversion.converted")
        return find_coloring(T.graph, host_lists) is None, "host colorable with the dictated color removed"

    t.guard("harmonica.conversion", roundtrip)


_CHECKS = {
    "thm1": _thm1,
    "thm2": _thm2,
    "thm3": _thm3,
    "lemma5": _lemma5,
    "chords": _chords,
    "reduction": _reduction,
    "thm9": _thm9,
}

PROFILE_NAMES = tuple(_CHECKS)


def trial_rng(seed, profile: str, trial: int) -> random.Random:
    return random.Random(f"{seed}:{profile}:{trial}")


def run_property_suite(profiles: Iterable[str], trials: int, seed=0, palette: int | None = None) -> SuiteReport:
    start = time.perf_counter()
    report = SuiteReport(seed, trials)
    for name in profiles:
        if name not in _CHECKS:
            raise ValueError(f"unknown profile {name!r}; choose from {', '.join(PROFILE_NAMES)}")
        for i in range(trials):
            rng = trial_rng(seed, name, i)
            try:
                inst = random_canvas(name, rng, palette)
            except HarmonicaError as exc:
                report.record(f"{name}.generate", FAIL)
                report.counterexamples.append({"detail": str(exc), "property": f"{name}.generate", "trial": i})
                continue
            issues = audit(inst)
            if issues:
                report.record(f"{name}.audit", SKIP)
                report.bump(f"{name}.audit_skips")
                continue
            report.record(f"{name}.audit", PASS)
            _CHECKS[name](_Trial(report, inst, i), rng)
    report.elapsed = time.perf_counter() - start
    return report


def replay(dump: dict) -> Instance:
    """Rebuild the instance recorded in a counterexample dump."""
    data = dump.get("instance", dump)
    G = PlaneGraph.from_json(data)
    S = Subgraph.from_json(data.get("S", {}))
    L = make_lists({int(k): v for k, v in data["lists"].items()})
    return Instance(data.get("profile", "replay"), Canvas(G, S, L), data.get("roles", {}))
