"""Markings (linear extensions of the diagram poset), pairings, and the
refined S-multiplicity.

Elements of the poset are the floors and all elevators, including the
weight-1 sources and sinks.  Same-floor sources, same-floor sinks and
parallel elevators of equal weight are interchangeable under diagram
automorphisms, so extensions are enumerated in a reduced form where each
such group appears in a fixed internal order; dividing the reduced count
by the number of floor automorphisms gives the number of marked classes.
"""

from __future__ import annotations

import itertools
from math import factorial
from typing import Dict, FrozenSet, Iterator, List, Optional, Sequence, Tuple

from .diagram import FloorDiagram, vertex_automorphisms
from .laurent import LaurentPoly, divide_exact, quantum_integer

Element = Tuple  # ("floor", v) | ("elev", i, j, w, copy) | ("src", v, copy) | ("snk", v, copy)
Marking = Tuple[Element, ...]
Pairing = FrozenSet[Tuple[int, int]]


def elements_of(diagram: FloorDiagram) -> List[Element]:
    out: List[Element] = [("floor", v) for v in range(diagram.n_floors)]
    for (i, j, w), group in itertools.groupby(diagram.elevators):
        for c, _ in enumerate(group):
            out.append(("elev", i, j, w, c))
    for v, (_, _, s, t) in enumerate(diagram.floors):
        out.extend(("src", v, c) for c in range(s))
        out.extend(("snk", v, c) for c in range(t))
    return out


def _poset_arrays(diagram: FloorDiagram):
    """Elements, cover-predecessor bitmask per element, and the group chains."""
    elems = elements_of(diagram)
    index = {e: k for k, e in enumerate(elems)}
    preds = [0] * len(elems)
    for e, k in index.items():
        kind = e[0]
        if kind == "floor":
            v = e[1]
            for f in elems:
                if f[0] == "elev" and f[2] == v:
                    preds[k] |= 1 << index[f]
                elif f[0] == "src" and f[1] == v:
                    preds[k] |= 1 << index[f]
        elif kind == "elev":
            preds[k] |= 1 << index[("floor", e[1])]
        elif kind == "snk":
            preds[k] |= 1 << index[("floor", e[1])]
    # force a canonical internal order on interchangeable copies
    for e, k in index.items():
        if e[0] in ("src", "snk", "elev") and e[-1] > 0:
            prev = e[:-1] + (e[-1] - 1,)
            preds[k] |= 1 << index[prev]
    return elems, index, preds


def iter_reduced_extensions(diagram: FloorDiagram) -> Iterator[Marking]:
    """Linear extensions with interchangeable copies in canonical order."""
    elems, _, preds = _poset_arrays(diagram)
    n = len(elems)
    full = (1 << n) - 1
    seq: List[Element] = []

    def rec(placed: int):
        if placed == full:
            yield tuple(seq)
            return
        for k in range(n):
            bit = 1 << k
            if not placed & bit and (preds[k] & ~placed) == 0:
                seq.append(elems[k])
                yield from rec(placed | bit)
                seq.pop()

    yield from rec(0)


def count_reduced_extensions(diagram: FloorDiagram) -> int:
    """Downset-memoized count of the reduced linear extensions."""
    elems, _, preds = _poset_arrays(diagram)
    n = len(elems)
    full = (1 << n) - 1
    memo: Dict[int, int] = {full: 1}

    def count(placed: int) -> int:
        got = memo.get(placed)
        if got is not None:
            return got
        total = 0
        for k in range(n):
            bit = 1 << k
            if not placed & bit and (preds[k] & ~placed) == 0:
                total += count(placed | bit)
        memo[placed] = total
        return total

    return count(0)


def _induced_element_map(diagram: FloorDiagram, perm: Sequence[int]):
    """Element permutation induced by a floor automorphism."""

    def apply(seq: Marking) -> Marking:
        mapped = []
        for e in seq:
            if e[0] == "floor":
                mapped.append(("floor", perm[e[1]]))
            elif e[0] == "elev":
                mapped.append(("elev", perm[e[1]], perm[e[2]], e[3], e[4]))
            elif e[0] == "src":
                mapped.append(("src", perm[e[1]], e[2]))
            else:
                mapped.append(("snk", perm[e[1]], e[2]))
        # renormalize copy indices to first-appearance order within each group
        counters: Dict[Tuple, int] = {}
        out = []
        for e in mapped:
            if e[0] == "floor":
                out.append(e)
                continue
            group = e[:-1]
            c = counters.get(group, 0)
            counters[group] = c + 1
            out.append(group + (c,))
        return tuple(out)

    return apply


def enumerate_markings(diagram: FloorDiagram) -> List[Marking]:
    """One marking per isomorphism class of marked diagrams.

    The floor-automorphism action on reduced extensions is checked to be
    free (orbit sizes all equal the group order) instead of assumed.
    """
    auts = vertex_automorphisms(diagram)
    maps = [_induced_element_map(diagram, p) for p in auts]
    seen = set()
    reps: List[Marking] = []
    for seq in iter_reduced_extensions(diagram):
        if seq in seen:
            continue
        orbit = {m(seq) for m in maps}
        if len(orbit) != len(auts):
            raise AssertionError("automorphism action on markings is not free")
        seen.update(orbit)
        reps.append(min(orbit))
    return reps


def _ordinal_chain_count(diagram: FloorDiagram) -> Optional[int]:
    """Reduced extension count for the ordinal-sum shape: all elevators
    between consecutive floors, sources only at the bottom floor, sinks only
    at the top.  The poset is then floor < bundle < floor < ... and the
    count is a product of per-bundle multinomials."""
    a = diagram.n_floors
    if any(j != i + 1 for i, j, _ in diagram.elevators):
        return None
    for v, (_, _, s, t) in enumerate(diagram.floors):
        if (s and v != 0) or (t and v != a - 1):
            return None
    total = 1
    for gap in range(a - 1):
        weights = [w for i, j, w in diagram.elevators if i == gap]
        if not weights:
            return None  # disconnected; not a valid diagram anyway
        bundle = factorial(len(weights))
        for _, group in itertools.groupby(sorted(weights)):
            bundle //= factorial(len(list(group)))
        total *= bundle
    return total


def count_markings(diagram: FloorDiagram) -> int:
    """Number of marked classes: reduced extensions / floor automorphisms."""
    total = _ordinal_chain_count(diagram)
    if total is None:
        total = count_reduced_extensions(diagram)
    auts = len(vertex_automorphisms(diagram))
    if total % auts:
        raise AssertionError("automorphism action on markings is not free")
    return total // auts


# -- pairings ----------------------------------------------------------------


def canonical_pairing(s: int) -> Pairing:
    """S_s = {{1,2}, {3,4}, ..., {2s-1,2s}}."""
    return frozenset((2 * k + 1, 2 * k + 2) for k in range(s))


def make_pairing(pairs: Sequence[Tuple[int, int]], n: Optional[int] = None) -> Pairing:
    norm = []
    used = set()
    for i, j in pairs:
        i, j = min(i, j), max(i, j)
        if j != i + 1:
            raise ValueError("pairing pairs must be consecutive {i, i+1}")
        if i in used or j in used:
            raise ValueError("pairing pairs must be disjoint")
        if i < 1 or (n is not None and j > n):
            raise ValueError("pair %r out of range" % ((i, j),))
        used.update((i, j))
        norm.append((i, j))
    return frozenset(norm)


def all_pairings(n: int, s: int) -> Iterator[Pairing]:
    """Every pairing of order s of {1..n} (disjoint consecutive pairs)."""

    def rec(start, left):
        if left == 0:
            yield ()
            return
        for i in range(start, n - 2 * left + 2):
            for tail in rec(i + 2, left - 1):
                yield ((i, i + 1),) + tail

    for combo in rec(1, s):
        yield frozenset(combo)


def parse_pairing(text: str) -> Pairing:
    """Parse a pairing literal like 'pairs:1-2,3-4'."""
    text = text.strip()
    if not text.startswith("pairs:"):
        raise ValueError("pairing literal must start with 'pairs:'")
    body = text[len("pairs:"):]
    if not body:
        return frozenset()
    pairs = []
    for item in body.split(","):
        i, _, j = item.partition("-")
        pairs.append((int(i), int(j)))
    return make_pairing(pairs)


# -- compatibility and refined S-multiplicity --------------------------------


def _tail_floor(e: Element) -> Optional[int]:
    """Floor the elevator emanates from (None for a source)."""
    if e[0] == "elev":
        return e[1]
    if e[0] == "snk":
        return e[1]
    return None


def _head_floor(e: Element) -> Optional[int]:
    """Floor the elevator ends at (None for a sink)."""
    if e[0] == "elev":
        return e[2]
    if e[0] == "src":
        return e[1]
    return None


def _weight(e: Element) -> int:
    return e[3] if e[0] == "elev" else 1


def _adjacent(e: Element, v: int) -> bool:
    return _tail_floor(e) == v or _head_floor(e) == v


def _pair_kind(x: Element, y: Element) -> Optional[str]:
    """'floor' / 'double' for the two compatible configurations, None otherwise."""
    floors = [e for e in (x, y) if e[0] == "floor"]
    elevs = [e for e in (x, y) if e[0] != "floor"]
    if len(floors) == 1:
        return "floor" if _adjacent(elevs[0], floors[0][1]) else None
    if len(floors) == 2:
        return None
    t0, t1 = _tail_floor(elevs[0]), _tail_floor(elevs[1])
    if t0 is not None and t0 == t1:
        return "double"
    h0, h1 = _head_floor(elevs[0]), _head_floor(elevs[1])
    if h0 is not None and h0 == h1:
        return "double"
    return None


def is_compatible(diagram: FloorDiagram, marking: Marking, pairing: Pairing) -> bool:
    for i, j in pairing:
        if _pair_kind(marking[i - 1], marking[j - 1]) is None:
            return False
    return True


_TWO = quantum_integer(2)


def mu_S(diagram: FloorDiagram, marking: Marking, pairing: Pairing) -> LaurentPoly:
    """Refined S-multiplicity of the marked diagram; zero when incompatible.

    Elevators paired with an adjacent floor contribute [w](q^2), paired
    elevators with a common floor contribute [w][w'][w+w']/[2], all others
    contribute [w]^2.
    """
    paired: Dict[Element, str] = {}
    double_pairs: List[Tuple[Element, Element]] = []
    for i, j in pairing:
        x, y = marking[i - 1], marking[j - 1]
        kind = _pair_kind(x, y)
        if kind is None:
            return LaurentPoly.zero()
        if kind == "floor":
            e = x if x[0] != "floor" else y
            paired[e] = "single"
        else:
            paired[x] = paired[y] = "double"
            double_pairs.append((x, y))
    out = LaurentPoly.one()
    for e in marking:
        if e[0] == "floor" or e in paired:
            continue
        w = _weight(e)
        if w > 1:
            q = quantum_integer(w)
            out = out * q * q
    for e in paired:
        if paired[e] == "single":
            w = _weight(e)
            if w > 1:
                out = out * quantum_integer(w).substitute_q_squared()
    for x, y in double_pairs:
        w, wp = _weight(x), _weight(y)
        num = quantum_integer(w) * quantum_integer(wp) * quantum_integer(w + wp)
        out = out * divide_exact(num, _TWO)
    return out
