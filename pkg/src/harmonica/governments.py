"""Dictatorships, democracies and confederacies of edge-coloring sets.

Members of a set are pairwise distinct colorings of one edge; a two-element
set can never be both a dictatorship and a democracy while its members are
proper, so ``also_democracy`` is only ever set for degenerate input.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, NamedTuple

from .errors import TooSmall
from .solver import EdgeColoringSet

DICTATORSHIP = "dictatorship"
DEMOCRACY = "democracy"
NEITHER = "neither"


@dataclass(frozen=True)
class Government:
    members: EdgeColoringSet
    kind: str
    dictator: int | None = None
    color: int | None = None
    colors: frozenset[int] = frozenset()
    also_democracy: bool = False

    @property
    def path(self) -> tuple[int, int]:
        return self.members.path

    @property
    def is_dictatorship(self) -> bool:
        return self.kind == DICTATORSHIP

    @property
    def is_democracy(self) -> bool:
        return self.kind == DEMOCRACY

    def to_json(self) -> dict:
        out = {"kind": self.kind, "members": [list(p) for p in self.members], "path": list(self.path)}
        if self.is_dictatorship:
            out["color"] = self.color
            out["dictator"] = self.dictator
            out["satellites"] = sorted(self.colors)
        else:
            out["colors"] = sorted(self.colors)
        return out


@dataclass(frozen=True)
class Confederacy:
    first: Government
    second: Government

    @property
    def members(self) -> EdgeColoringSet:
        return self.first.members.with_pairs(self.first.members.pairs | self.second.members.pairs)


class Classification(NamedTuple):
    kind: str
    government: Government | None


def _dictator_of(C: EdgeColoringSet) -> int | None:
    for i in (0, 1):
        if len({pr[i] for pr in C.pairs}) == 1:
            return i
    return None


def _is_democracy(C: EdgeColoringSet) -> bool:
    if len(C) != 2:
        return False
    (a1, b1), (a2, b2) = sorted(C.pairs)
    return a1 == b2 and a2 == b1


def is_government(C: EdgeColoringSet) -> bool:
    return len(C) >= 2 and (_dictator_of(C) is not None or _is_democracy(C))


def classify(C: EdgeColoringSet) -> Classification:
    """Dictatorship is tested first (``p1`` before ``p2``), then democracy."""
    if len(C) < 2:
        raise TooSmall(f"{len(C)} coloring(s)")
    i = _dictator_of(C)
    demo = _is_democracy(C)
    if i is not None:
        dictator = C.path[i]
        color = next(iter(C.pairs))[i]
        gov = Government(C, DICTATORSHIP, dictator, color, C.colors_at(C.path[1 - i]), also_democracy=demo)
        return Classification(DICTATORSHIP, gov)
    if demo:
        return Classification(DEMOCRACY, Government(C, DEMOCRACY, colors=C.colors_at(C.path[0])))
    return Classification(NEITHER, None)


def as_government(C: EdgeColoringSet) -> Government:
    kind, gov = classify(C)
    if gov is None:
        raise ValueError(f"{sorted(C.pairs)} on {C.path} is not a government")
    return gov


def dictatorship(path, dictator: int, color: int, others: Iterable[int]) -> Government:
    """The dictatorship on ``path`` fixing ``dictator`` at ``color``."""
    path = tuple(path)
    i = path.index(dictator)
    pairs = {(color, o) if i == 0 else (o, color) for o in others}
    return as_government(EdgeColoringSet(path, frozenset(pairs)))


def democracy(path, a: int, b: int) -> Government:
    return as_government(EdgeColoringSet(tuple(path), frozenset({(a, b), (b, a)})))


def _candidate_classes(C: EdgeColoringSet) -> list[frozenset[tuple[int, int]]]:
    """Maximal dictatorships, then democracies, in a fixed order."""
    out = []
    for i in (0, 1):
        for color in sorted({pr[i] for pr in C.pairs}):
            group = frozenset(pr for pr in C.pairs if pr[i] == color)
            if len(group) >= 2:
                out.append(group)
    for a, b in sorted(C.pairs):
        if a < b and (b, a) in C.pairs:
            out.append(frozenset({(a, b), (b, a)}))
    return out


def find_government(C: EdgeColoringSet) -> Government | None:
    """Largest dictatorship inside ``C``, else its first democracy, else ``None``."""
    best = None
    for i in (0, 1):
        for color in sorted({pr[i] for pr in C.pairs}):
            group = frozenset(pr for pr in C.pairs if pr[i] == color)
            if len(group) >= 2 and (best is None or len(group) > len(best)):
                best = group
    if best is None:
        for a, b in sorted(C.pairs):
            if a < b and (b, a) in C.pairs:
                best = frozenset({(a, b), (b, a)})
                break
    if best is None:
        return None
    return as_government(C.with_pairs(best))


def find_confederacy(C: EdgeColoringSet) -> Confederacy | None:
    """Two governments inside ``C`` whose union is not a government.

    Checking maximal dictatorships and democracies suffices: if a union of
    two governments is not a government, enlarging either part keeps it so.
    """
    classes = _candidate_classes(C)
    for k1, k2 in combinations(classes, 2):
        if not is_government(C.with_pairs(k1 | k2)):
            return Confederacy(as_government(C.with_pairs(k1)), as_government(C.with_pairs(k2)))
    return None


def is_confederacy(C: EdgeColoringSet) -> bool:
    if len(C) < 2 or is_government(C):
        return False
    classes = _candidate_classes(C)
    return any(k1 | k2 == C.pairs for k1, k2 in combinations(classes, 2))
