"""Finitely generated groups of formal diffeomorphisms, explored through word balls.

Every answer here is relative to a ball radius and a truncation; reports
carry both so nothing reads as a statement about the infinite group.
"""
from __future__ import annotations

import time
from collections import Counter
from dataclasses import dataclass
from typing import Optional

from .blowup import near_points
from .curve import CurveError, CurveParam, act, intersect_order
from .diffeo import FormalDiffeo, TANGENT_TO_IDENTITY
from .jetspace import project_diffeo


class GroupError(ValueError):
    pass


@dataclass(frozen=True)
class Caps:
    """Resource limits for ball searches."""

    max_words: int = 20000
    max_seconds: float = 120.0
    max_witnesses: int = 32

    def __post_init__(self):
        if self.max_words < 1 or self.max_seconds <= 0 or self.max_witnesses < 1:
            raise GroupError("caps must be positive")


@dataclass(frozen=True)
class Word:
    """Freely reduced word: letters are (generator index, +1 or -1)."""

    letters: tuple = ()

    def __post_init__(self):
        for (i, s), (j, t) in zip(self.letters, self.letters[1:]):
            if i == j and s == -t:
                raise GroupError("word is not freely reduced")

    def __len__(self):
        return len(self.letters)

    def format(self, names):
        if not self.letters:
            return "id"
        return "*".join(names[i] if s == 1 else f"{names[i]}^-1" for i, s in self.letters)

    def inverse(self):
        return Word(tuple((i, -s) for i, s in reversed(self.letters)))


class GeneratedGroup:
    def __init__(self, generators, names=None):
        if not generators:
            raise GroupError("need at least one generator")
        self.generators = list(generators)
        if names is None:
            names = [chr(ord("a") + i) for i in range(len(generators))]
        if len(names) != len(self.generators) or len(set(names)) != len(names):
            raise GroupError("generator names must be distinct, one per generator")
        self.names = list(names)
        self.trunc = min(g.trunc for g in self.generators)
        self._inverses = None
        # descriptions of generators built from words of another group
        self.provenance = {}

    def letter(self, i, s):
        if s == 1:
            return self.generators[i]
        if self._inverses is None:
            self._inverses = [g.inverse() for g in self.generators]
        return self._inverses[i]

    def identity(self):
        return FormalDiffeo.identity(self.trunc)

    def evaluate(self, word: Word) -> FormalDiffeo:
        out = self.identity()
        for i, s in word.letters:
            out = out.compose(self.letter(i, s))
        return out

    def words(self, L, caps: Caps = Caps()):
        """Yield (word, value) over the ball of radius L in BFS order.

        The final yielded item is followed by a StopIteration; truncation by
        caps is signalled through ``self.last_complete``.
        """
        self.last_complete = True
        start = time.monotonic()
        layer = [(Word(), self.identity())]
        count = 1
        yield layer[0]
        letters = [(i, s) for i in range(len(self.generators)) for s in (1, -1)]
        for _ in range(L):
            nxt = []
            for w, val in layer:
                last = w.letters[-1] if w.letters else None
                for i, s in letters:
                    if last is not None and last[0] == i and last[1] == -s:
                        continue
                    if count >= caps.max_words or time.monotonic() - start > caps.max_seconds:
                        self.last_complete = False
                        return
                    nw = Word(w.letters + ((i, s),))
                    nv = val.compose(self.letter(i, s))
                    count += 1
                    nxt.append((nw, nv))
                    yield nw, nv
            layer = nxt

    def format_word(self, w):
        return w.format(self.names)


# ---------------------------------------------------------------------------


@dataclass
class BallReport:
    radius: int
    k: int
    trunc: int
    classes: list  # (witness word string, jet-k matrix)
    words_evaluated: int
    complete: bool

    def to_json(self):
        return {
            "L": self.radius,
            "k": self.k,
            "trunc": self.trunc,
            "classes": len(self.classes),
            "witnesses": [w for w, _ in self.classes],
            "wordsEvaluated": self.words_evaluated,
            "complete": self.complete,
        }


def enumerate_ball(G: GeneratedGroup, L, k, caps: Caps = Caps()) -> BallReport:
    if L < 0:
        raise GroupError("radius must be >= 0")
    if k > G.trunc:
        raise GroupError(f"jet level {k} exceeds truncation {G.trunc}")
    seen = {}
    n = 0
    for w, val in G.words(L, caps):
        n += 1
        key = project_diffeo(val, k).matrix
        if key not in seen:
            seen[key] = G.format_word(w)
    return BallReport(L, k, G.trunc, [(w, m) for m, w in seen.items()], n, G.last_complete)


@dataclass
class FDResult:
    determined: bool
    k: int
    L: int
    trunc: int
    counterexample: Optional[str] = None
    complete: bool = True
    # words equal to Id at the working truncation (relations, not counterexamples)
    relations: int = 0

    def to_json(self):
        out = {"determined": self.determined, "k": self.k, "L": self.L, "trunc": self.trunc}
        if self.counterexample is not None:
            out["counterexample"] = self.counterexample
        if not self.complete:
            out["inconclusive"] = True
        out["relations"] = self.relations
        return out


def fd_check(G: GeneratedGroup, k, L, caps: Caps = Caps()) -> FDResult:
    """Search the ball for a word with j^k = Id that is not Id at truncation."""
    if k > G.trunc:
        raise GroupError(f"jet level {k} exceeds truncation {G.trunc}")
    relations = 0
    for w, val in G.words(L, caps):
        if not w.letters or not val.jet_is_identity(k):
            continue
        if val.is_identity():
            relations += 1
            continue
        return FDResult(False, k, L, G.trunc, G.format_word(w), True, relations)
    return FDResult(G.last_complete, k, L, G.trunc, None, G.last_complete, relations)


# ---------------------------------------------------------------------------


@dataclass
class UIReport:
    L: int
    trunc: int
    values: Counter
    max_exact: Optional[int]
    max_witness: Optional[str]
    atleast_witnesses: list
    complete: bool

    def to_json(self):
        return {
            "L": self.L,
            "trunc": self.trunc,
            "values": {k: self.values[k] for k in sorted(self.values)},
            "maxExact": self.max_exact,
            "maxWitness": self.max_witness,
            "atLeastWitnesses": self.atleast_witnesses,
            "complete": self.complete,
        }


def ui_probe(G: GeneratedGroup, gamma: CurveParam, L, caps: Caps = Caps()) -> UIReport:
    """Intersection numbers (w(gamma), gamma) over the ball."""
    cache = {}
    values = Counter()
    best, best_w = None, None
    atleast = []
    for w, val in G.words(L, caps):
        img = act(val, gamma)
        r = cache.get(img)
        if r is None:
            try:
                r = intersect_order(img, gamma)
            except CurveError:
                r = None
            cache[img] = r
        name = G.format_word(w)
        if r is None:
            values["unresolved"] += 1
            continue
        values["exact:%d" % r.n if r.exact else "atLeast:%d" % r.n] += 1
        if r.exact:
            if best is None or r.n > best:
                best, best_w = r.n, name
        elif len(atleast) < caps.max_witnesses:
            atleast.append(name)
    return UIReport(L, G.trunc, values, best, best_w, atleast, G.last_complete)


def ui_stability(G, gamma, radii, caps: Caps = Caps()):
    """Maximum Exact value per radius; ``stable`` is a heuristic, not a certificate."""
    maxima = {L: ui_probe(G, gamma, L, caps).max_exact for L in radii}
    return {"maxima": maxima, "stable": len(set(maxima.values())) == 1, "heuristic": True}


# ---------------------------------------------------------------------------


@dataclass
class TreeStats:
    depth: int
    orbit_size: int
    level_counts: list
    max_shared_depth: int
    branching: dict
    depth_limited: int
    complete: bool

    def to_json(self):
        return {
            "depth": self.depth,
            "orbitSize": self.orbit_size,
            "levelCounts": self.level_counts,
            "maxSharedDepth": self.max_shared_depth,
            "branching": {str(k): v for k, v in sorted(self.branching.items())},
            "depthLimited": self.depth_limited,
            "complete": self.complete,
        }


def orbit_prefix_tree(G: GeneratedGroup, gamma: CurveParam, L, depth, caps: Caps = Caps()) -> TreeStats:
    """Trie of near-point prefixes over the orbit of gamma in the ball."""
    orbit = {}
    for _, val in G.words(L, caps):
        img = act(val, gamma)
        orbit.setdefault(img, None)
    complete = G.last_complete
    trie = {}
    limited = 0
    for img in orbit:
        seq = near_points(img, depth, partial=True)
        limited += seq.exhausted
        node = trie
        for p in seq.points:
            node = node.setdefault((p.chart, p.coord), {})
        node[None] = node.get(None, 0) + 1
    counts = [1]
    branching = {}
    level = [trie]
    for d in range(1, depth + 1):
        nxt = []
        for node in level:
            kids = [c for key, c in node.items() if key is not None]
            if len(kids) > 1:
                branching.setdefault(d, []).append(len(kids))
            nxt.extend(kids)
        if not nxt:
            break
        counts.append(len(nxt))
        level = nxt
    shared = _max_shared(trie, 0)[1] if len(orbit) > 1 else depth
    for v in branching.values():
        v.sort()
    return TreeStats(depth, len(orbit), counts, shared, branching, limited, complete)


def _max_shared(node, d):
    """(curves through node, deepest level reached by two distinct curves)."""
    n = node.get(None, 0)
    best = -1
    for key, c in node.items():
        if key is None:
            continue
        m, b = _max_shared(c, d + 1)
        n += m
        best = max(best, b)
    if n > 1:
        best = max(best, d)
    return n, best


# ---------------------------------------------------------------------------


def _ball_elements(G, L, caps):
    out = {}
    for w, val in G.words(L, caps):
        if w.letters and not val.is_identity():
            out.setdefault(val, G.format_word(w))
    return [(name, val) for val, name in out.items()]


def _new_group(elements, prefix, trunc):
    if not elements:
        return GeneratedGroup([FormalDiffeo.identity(trunc)], [f"{prefix}0"])
    names = [f"{prefix}{i}" for i in range(1, len(elements) + 1)]
    H = GeneratedGroup([v for _, v in elements], names)
    H.provenance = {n: w for n, (w, _) in zip(names, elements)}
    return H


def _commutators(left, right, cap, keep_trivial=False):
    out = {}
    for a_name, a in left:
        for b_name, b in right:
            c = a.commutator(b)
            if keep_trivial or not c.is_identity():
                out.setdefault(c, f"[{a_name},{b_name}]")
            if len(out) >= cap:
                return [(n, v) for v, n in out.items()]
    return [(n, v) for v, n in out.items()]


def derived_sample(G: GeneratedGroup, r, L, caps: Caps = Caps(), sample_cap=16) -> GeneratedGroup:
    """Generators: commutators of ball words, iterated r times (G^(j+1) = [G^(j), G^(j)])."""
    if r < 1:
        raise GroupError("series depth must be >= 1")
    elems = _ball_elements(G, L, caps)
    for _ in range(r):
        elems = _commutators(elems, elems, sample_cap)
    return _new_group(elems, "c", G.trunc)


def lower_central_sample(G: GeneratedGroup, j, L, caps: Caps = Caps(), sample_cap=16, keep_trivial=False):
    """Sampled elements of C^j with C^0 = G and C^(i+1) = [C^i, G]; (name, value) pairs.

    Distinct values only; commutators equal to Id are dropped unless ``keep_trivial``.
    """
    base = _ball_elements(G, L, caps)
    elems = base
    for _ in range(j):
        elems = _commutators(elems, base, sample_cap, keep_trivial)
    return elems


def classification_report(H: GeneratedGroup):
    return {n: g.classify() for n, g in zip(H.names, H.generators)}


def all_tangent_to_identity(H: GeneratedGroup):
    return all(g.classify() == TANGENT_TO_IDENTITY for g in H.generators)


__all__ = [
    "Caps", "Word", "GeneratedGroup", "BallReport", "FDResult", "UIReport", "TreeStats",
    "GroupError", "enumerate_ball", "fd_check", "ui_probe", "ui_stability",
    "orbit_prefix_tree", "derived_sample", "lower_central_sample", "classification_report",
    "all_tangent_to_identity",
]
