"""Floor diagrams: data structure, exhaustive enumeration, multiplicity, codegree.

A floor diagram for an h-transverse polygon is a connected weighted acyclic
oriented multigraph.  Floors are stored with labels 0..a-1 chosen so that
every internal elevator goes from a lower to a higher label (any DAG admits
such a labelling); isomorphic relabellings are merged through canonical
forms.  Sources and sinks all have weight 1 and are stored as per-floor
counts.

Enumeration walks the floors bottom to top, tracking the multiset of open
elevators.  The key accounting identity, with iota the interior lattice
count and E0 the internal elevator set:

    codeg(D) = iota + a - 1 - sum(F_gap)  +  sum((span(e) - 1) * w(e))

where F_gap is the total weight crossing a gap (forced by the divergence
constraints once sources and sinks are distributed).  The first part
depends only on the source/sink distribution, the second only on elevator
spans, which makes both sides cheap to bound during the search.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb, factorial
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .laurent import LaurentPoly, prod, quantum_integer
from .polygon import HTransversePolygon, ensure_valid, lattice_stats

Floor = Tuple[int, int, int, int]  # (l, r, sources, sinks)
Elevator = Tuple[int, int, int]  # (from, to, weight), from < to


@dataclass(frozen=True)
class FloorDiagram:
    floors: Tuple[Floor, ...]
    elevators: Tuple[Elevator, ...]  # sorted, with repetitions for parallel edges

    def __post_init__(self):
        object.__setattr__(self, "elevators", tuple(sorted(self.elevators)))

    @property
    def n_floors(self) -> int:
        return len(self.floors)

    def genus(self) -> int:
        return len(self.elevators) - len(self.floors) + 1

    def degree(self) -> int:
        return sum(w - 1 for _, _, w in self.elevators)

    def n_marks(self) -> int:
        monovalent = sum(f[2] + f[3] for f in self.floors)
        return len(self.floors) + len(self.elevators) + monovalent

    def newton_polygon(self) -> HTransversePolygon:
        d_l = tuple(sorted(f[0] for f in self.floors))
        d_r = tuple(sorted(f[1] for f in self.floors))
        d_b = sum(f[2] for f in self.floors)
        d_t = sum(f[3] for f in self.floors)
        return HTransversePolygon(d_l, d_r, d_b, d_t)

    def key(self) -> Tuple:
        return (self.floors, self.elevators)

    def is_layered(self) -> bool:
        """True when the floors are totally ordered by oriented reachability."""
        a = self.n_floors
        reach = [[False] * a for _ in range(a)]
        for i, j, _ in self.elevators:
            reach[i][j] = True
        for k in range(a):
            for i in range(a):
                if reach[i][k]:
                    for j in range(a):
                        if reach[k][j]:
                            reach[i][j] = True
        return all(reach[i][i + 1] for i in range(a - 1))

    def to_json(self) -> Dict:
        return {
            "floors": [
                {"l": l, "r": r, "sources": s, "sinks": t}
                for (l, r, s, t) in self.floors
            ],
            "elevators": [list(e) for e in self.elevators],
        }

    @classmethod
    def from_json(cls, data: Dict) -> "FloorDiagram":
        floors = tuple(
            (f["l"], f["r"], f["sources"], f["sinks"]) for f in data["floors"]
        )
        elevs = tuple(tuple(e) for e in data["elevators"])
        return cls(floors, elevs)


def mult(diagram: FloorDiagram) -> LaurentPoly:
    """Refined multiplicity: the product of [w]^2 over all elevators."""
    return prod(
        quantum_integer(w) * quantum_integer(w)
        for _, _, w in diagram.elevators
        if w > 1
    )


def degree(diagram: FloorDiagram) -> int:
    return diagram.degree()


def codegree(diagram: FloorDiagram) -> int:
    """iota - genus - degree, always nonnegative for a valid diagram."""
    stats = lattice_stats(diagram.newton_polygon())
    c = stats.interior - diagram.genus() - diagram.degree()
    if c < 0:
        raise AssertionError("negative codegree: invalid floor diagram")
    return c


def validate(diagram: FloorDiagram, polygon: HTransversePolygon) -> List[str]:
    """Check every floor-diagram invariant against the polygon."""
    errs = []
    a = polygon.height
    if diagram.n_floors != a:
        errs.append("floor count differs from Card(d_l)")
        return errs
    if tuple(sorted(f[0] for f in diagram.floors)) != polygon.d_l:
        errs.append("l labels are not a bijection onto d_l")
    if tuple(sorted(f[1] for f in diagram.floors)) != polygon.d_r:
        errs.append("r labels are not a bijection onto d_r")
    if sum(f[2] for f in diagram.floors) != polygon.d_b:
        errs.append("source count differs from d_b")
    if sum(f[3] for f in diagram.floors) != polygon.d_t:
        errs.append("sink count differs from d_t")
    for i, j, w in diagram.elevators:
        if not (0 <= i < j < a):
            errs.append("elevator %r is not oriented along increasing labels" % ((i, j, w),))
        if w < 1:
            errs.append("elevator %r has nonpositive weight" % ((i, j, w),))
    for v, (l, r, s, t) in enumerate(diagram.floors):
        inflow = s + sum(w for i, j, w in diagram.elevators if j == v)
        outflow = t + sum(w for i, j, w in diagram.elevators if i == v)
        if inflow - outflow != r - l:
            errs.append("divergence fails at floor %d" % v)
    if not _connected(diagram):
        errs.append("diagram is not connected")
    if diagram.genus() < 0:
        errs.append("negative genus")
    return errs


def _connected(diagram: FloorDiagram) -> bool:
    a = diagram.n_floors
    if a == 1:
        return True
    parent = list(range(a))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, j, _ in diagram.elevators:
        parent[find(i)] = find(j)
    return len({find(v) for v in range(a)}) == 1


# -- canonical forms and automorphisms ------------------------------------


def _floor_order_extensions(diagram: FloorDiagram) -> Iterator[Tuple[int, ...]]:
    """All relabellings p (old -> new) compatible with elevator orientation."""
    a = diagram.n_floors
    succ = [set() for _ in range(a)]
    indeg = [0] * a
    for i, j in {(i, j) for i, j, _ in diagram.elevators}:
        succ[i].add(j)
        indeg[j] += 1
    p = [0] * a
    used = [False] * a
    deg = list(indeg)

    def rec(pos):
        if pos == a:
            yield tuple(p)
            return
        for v in range(a):
            if not used[v] and deg[v] == 0:
                used[v] = True
                for w in succ[v]:
                    deg[w] -= 1
                p[v] = pos
                yield from rec(pos + 1)
                for w in succ[v]:
                    deg[w] += 1
                used[v] = False

    yield from rec(0)


def _relabel(diagram: FloorDiagram, p: Sequence[int]) -> FloorDiagram:
    inv = [0] * len(p)
    for old, new in enumerate(p):
        inv[new] = old
    floors = tuple(diagram.floors[inv[k]] for k in range(len(p)))
    elevs = tuple(sorted((p[i], p[j], w) for i, j, w in diagram.elevators))
    return FloorDiagram(floors, elevs)


def canonical_form(diagram: FloorDiagram) -> FloorDiagram:
    """The minimal relabelling; identical for isomorphic diagrams."""
    best = None
    for p in _floor_order_extensions(diagram):
        cand = _relabel(diagram, p)
        if best is None or cand.key() < best.key():
            best = cand
    assert best is not None
    return best


def canonical_key(diagram: FloorDiagram) -> Tuple:
    return canonical_form(diagram).key()


def vertex_automorphisms(diagram: FloorDiagram) -> List[Tuple[int, ...]]:
    """Floor permutations preserving labels, decorations and weighted elevators."""
    return [
        p
        for p in _floor_order_extensions(diagram)
        if _relabel(diagram, p).key() == diagram.key()
    ]


def automorphism_count(diagram: FloorDiagram) -> int:
    """Order of the floor/elevator automorphism group (monovalent edges unlabelled)."""
    count = len(vertex_automorphisms(diagram))
    for _, group in itertools.groupby(diagram.elevators):
        count *= factorial(len(list(group)))
    return count


def marking_symmetry_order(diagram: FloorDiagram) -> int:
    """Order of the full automorphism action on markings: floors, parallel
    elevators of equal weight, and same-floor sources/sinks."""
    count = automorphism_count(diagram)
    for _, _, s, t in diagram.floors:
        count *= factorial(s) * factorial(t)
    return count


# -- enumeration ------------------------------------------------------------


def _distinct_permutations(values: Sequence[int]) -> Iterator[Tuple[int, ...]]:
    """Permutations of a multiset without repeats, in lexicographic order."""
    counts = {}
    for v in values:
        counts[v] = counts.get(v, 0) + 1
    keys = sorted(counts)
    n = len(values)
    out: List[int] = []

    def rec():
        if len(out) == n:
            yield tuple(out)
            return
        for v in keys:
            if counts[v]:
                counts[v] -= 1
                out.append(v)
                yield from rec()
                out.pop()
                counts[v] += 1

    yield from rec()


def _compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """Nondecreasing tuples of `parts` positive integers summing to `total`."""
    if parts == 0:
        if total == 0:
            yield ()
        return

    def rec(rest, k, lo):
        if k == 1:
            if rest >= lo:
                yield (rest,)
            return
        for first in range(lo, rest // k + 1):
            for tail in rec(rest - first, k - 1, first):
                yield (first,) + tail

    yield from rec(total, parts, 1)


def _sub_multisets(items: Sequence[Tuple[int, int]]) -> Iterator[Tuple[Tuple[int, int], ...]]:
    """All sub-multisets of a sorted tuple of (origin, weight) pairs."""
    groups = [(k, len(list(g))) for k, g in itertools.groupby(items)]

    def rec(idx):
        if idx == len(groups):
            yield ()
            return
        key, mult = groups[idx]
        for tail in rec(idx + 1):
            for take in range(mult + 1):
                yield (key,) * take + tail

    yield from rec(0)


def _enumerate_for_distribution(
    polygon: HTransversePolygon,
    genus: int,
    ls: Tuple[int, ...],
    rs: Tuple[int, ...],
    sources: Tuple[int, ...],
    sinks: Tuple[int, ...],
    iota: int,
    max_codeg: Optional[int],
) -> List[FloorDiagram]:
    """All diagrams with the given labels and source/sink placement."""
    a = polygon.height
    divs = [r - l for l, r in zip(ls, rs)]
    flows = []
    run = 0
    for j in range(a - 1):
        run += sources[j] - sinks[j] - divs[j]
        if run < 1:
            return []
        flows.append(run)
    codeg_base = iota + a - 1 - sum(flows)
    if max_codeg is not None and codeg_base > max_codeg:
        return []
    target_edges = a - 1 + genus
    found: List[FloorDiagram] = []

    def rec(j, open_edges, edges, span_cost):
        # open_edges: sorted tuple of (origin, weight) currently crossing gap j-1
        for closed in _sub_multisets(open_edges):
            in_w = sum(w for _, w in closed)
            out_total = sources[j] + in_w - sinks[j] - divs[j]
            still_open = list(open_edges)
            for e in closed:
                still_open.remove(e)
            if j == a - 1:
                if still_open or out_total != 0 or len(edges) + len(closed) != target_edges:
                    continue
                if max_codeg is not None and codeg_base + span_cost > max_codeg:
                    continue
                diagram = FloorDiagram(
                    tuple(zip(ls, rs, sources, sinks)),
                    tuple(edges + [(o, j, w) for o, w in closed]),
                )
                if _connected(diagram):
                    found.append(diagram)
                continue
            if out_total < 0:
                continue
            cost = span_cost + sum(w for _, w in still_open)
            if max_codeg is not None and codeg_base + cost > max_codeg:
                continue
            new_edges = edges + [(o, j, w) for o, w in closed]
            budget = target_edges - len(new_edges) - len(still_open)
            if budget < 0:
                continue
            if out_total == 0:
                rec(j + 1, tuple(sorted(still_open)), new_edges, cost)
                continue
            # a gap crossed by c elevators forces c-1 units of genus or span
            # surplus, so c is capped by 1 + genus + total span allowance
            allow = (
                max_codeg - codeg_base if max_codeg is not None else iota - genus
            )
            max_new = min(out_total, budget, 1 + genus + allow - len(still_open))
            for k_new in range(1, max_new + 1):
                for comp in _compositions(out_total, k_new):
                    opened = tuple(sorted(still_open + [(j, w) for w in comp]))
                    rec(j + 1, opened, new_edges, cost)

    rec(0, (), [], 0)
    return found


def _distributions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
    """All tuples of `parts` nonnegative integers summing to `total`."""
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for tail in _distributions(total - first, parts - 1):
            yield (first,) + tail


def _source_distributions(
    total: int, a: int, budget: Optional[int]
) -> Iterator[Tuple[int, ...]]:
    """Source placements with their displacement loss bounded by `budget`.

    A source at floor m reduces the flow sum by m (it stops feeding the
    gaps below m), so the loss of a placement is sum(m * s_m); any diagram
    built on the placement has codegree at least base0 + loss.
    """
    def rec(j, left, loss):
        if budget is not None and loss > budget:
            return
        if j == a - 1:
            yield (left,)
            return
        for here in range(left + 1):
            for tail in rec(j + 1, left - here, loss + (left - here)):
                yield (here,) + tail

    yield from rec(0, total, 0)


def _sink_distributions(
    total: int, a: int, budget: Optional[int]
) -> Iterator[Tuple[int, ...]]:
    """Sink placements, mirrored: a sink m floors below the top loses m."""
    for rev in _source_distributions(total, a, budget):
        yield tuple(reversed(rev))


FREE_WEIGHT = 10 ** 9  # sentinel weight for batched shape enumeration


def _enumerate_shapes_for_distribution(
    polygon: HTransversePolygon,
    genus: int,
    ls: Tuple[int, ...],
    rs: Tuple[int, ...],
    sources: Tuple[int, ...],
    sinks: Tuple[int, ...],
    iota: int,
    max_codeg: int,
) -> List[Tuple[FloorDiagram, int, int]]:
    """Diagram shapes with weights <= max_codeg explicit and heavier short
    elevators left free, plus the count of ordered free-weight assignments.

    Returns (pseudo_diagram, assignment_count, shape_codegree) triples; the
    pseudo diagram carries FREE_WEIGHT on the free slots.  Every diagram of
    codegree <= max_codeg with this distribution belongs to exactly one
    shape: elevators of weight > max_codeg are forced short (a longer span
    would already cost more than max_codeg), so freeing only short slots
    loses nothing.
    """
    a = polygon.height
    i = max_codeg
    divs = [r - l for l, r in zip(ls, rs)]
    flows = []
    run = 0
    for j in range(a - 1):
        run += sources[j] - sinks[j] - divs[j]
        if run < 1:
            return []
        flows.append(run)
    codeg_base = iota + a - 1 - sum(flows)
    if codeg_base > i:
        return []
    target_edges = a - 1 + genus
    found: List[Tuple[FloorDiagram, int, int]] = []

    def small_multisets(limit_total):
        # multisets of explicit weights in 1..i with bounded total
        def rec_sm(lo, left):
            yield ()
            for w in range(lo, min(i, left) + 1):
                for tail in rec_sm(w, left - w):
                    yield (w,) + tail
        yield from rec_sm(1, limit_total)

    def rec(j, open_explicit, free_cnt, free_total, edges, span_cost, assign):
        in_free = free_total  # free slots always close one floor up
        for closed in _sub_multisets(open_explicit):
            in_w = sum(w for _, w in closed) + in_free
            out_total = sources[j] + in_w - sinks[j] - divs[j]
            still_open = list(open_explicit)
            for e in closed:
                still_open.remove(e)
            closing = [(o, j, w) for o, w in closed]
            if free_cnt:
                closing.extend((j - 1, j, FREE_WEIGHT) for _ in range(free_cnt))
            if j == a - 1:
                if still_open or out_total != 0 or len(edges) + len(closing) != target_edges:
                    continue
                if codeg_base + span_cost > i:
                    continue
                diagram = FloorDiagram(
                    tuple(zip(ls, rs, sources, sinks)), tuple(edges + closing)
                )
                if _connected(diagram):
                    found.append((diagram, assign, codeg_base + span_cost))
                continue
            if out_total < 0:
                continue
            cost = span_cost + sum(w for _, w in still_open)
            if codeg_base + cost > i:
                continue
            new_edges = edges + closing
            budget = target_edges - len(new_edges) - len(still_open)
            if budget < 0:
                continue
            cap = min(budget, 1 + genus + (i - codeg_base) - len(still_open))
            if out_total == 0:
                rec(j + 1, tuple(sorted(still_open)), 0, 0, new_edges, cost, assign)
            for smalls in small_multisets(min(out_total, i * cap)):
                rest = out_total - sum(smalls)
                max_free = min(cap - len(smalls), rest // (i + 1))
                for k_free in range(0, max_free + 1):
                    if len(smalls) + k_free == 0:
                        continue  # the empty opening was handled above
                    if k_free == 0:
                        if rest != 0:
                            continue
                        ways = 1
                    else:
                        # ordered tuples of k_free weights > i summing to rest
                        ways = comb(rest - i * k_free - 1, k_free - 1)
                        if ways == 0:
                            continue
                    opened = tuple(sorted(still_open + [(j, w) for w in smalls]))
                    rec(
                        j + 1,
                        opened,
                        k_free,
                        rest,
                        new_edges,
                        cost,
                        assign * ways,
                    )

    rec(0, (), 0, 0, [], 0, 1)
    return found


def codegree_coefficient_sum(
    polygon: HTransversePolygon,
    genus: int,
    i: int,
    shape_term,
) -> int:
    """Sum shape_term(pseudo_diagram, shape_codegree) times the number of
    ordered free-weight assignments, over all isomorphism classes of shapes
    of codegree <= i.  The caller's term must be constant across the free
    weights of a shape."""
    ensure_valid(polygon)
    stats = lattice_stats(polygon)
    if genus > stats.interior:
        return 0
    iota = stats.interior
    seen: Dict[Tuple, Tuple[FloorDiagram, int, int]] = {}
    for ls, rs, src in enumeration_tasks(polygon, genus, i):
        budget = i - _base_codegree(polygon, ls, rs, iota) - _loss(src)
        if budget < 0:
            continue
        for snk in _sink_distributions(polygon.d_t, polygon.height, budget):
            for diagram, assign, codeg in _enumerate_shapes_for_distribution(
                polygon, genus, ls, rs, src, snk, iota, i
            ):
                seen.setdefault(canonical_key(diagram), (diagram, assign, codeg))
    total = 0
    for diagram, assign, codeg in seen.values():
        total += assign * shape_term(diagram, codeg)
    return total


def _base_codegree(
    polygon: HTransversePolygon, ls: Sequence[int], rs: Sequence[int], iota: int
) -> int:
    """Codegree of the assignment with all sources at the bottom floor and
    all sinks at the top, were every elevator short: the floor under all
    further displacement and span costs."""
    a = polygon.height
    flow_sum = (a - 1) * polygon.d_b - sum(
        (a - 1 - m) * (r - l) for m, (l, r) in enumerate(zip(ls, rs))
    )
    return iota + a - 1 - flow_sum


def _loss(distribution: Sequence[int], from_top: bool = False) -> int:
    seq = tuple(reversed(distribution)) if from_top else distribution
    return sum(m * c for m, c in enumerate(seq))


def enumeration_tasks(
    polygon: HTransversePolygon, genus: int, max_codeg: Optional[int] = None
) -> List[Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]]:
    """Independent work items (l-assignment, r-assignment, source distribution)."""
    a = polygon.height
    iota = lattice_stats(polygon).interior
    tasks = []
    for ls in _distinct_permutations(polygon.d_l):
        for rs in _distinct_permutations(polygon.d_r):
            budget = None
            if max_codeg is not None:
                budget = max_codeg - _base_codegree(polygon, ls, rs, iota)
                if budget < 0:
                    continue
            for src in _source_distributions(polygon.d_b, a, budget):
                tasks.append((ls, rs, src))
    return tasks


def run_enumeration_task(
    polygon: HTransversePolygon,
    genus: int,
    task: Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]],
    max_codeg: Optional[int],
) -> List[FloorDiagram]:
    ls, rs, src = task
    iota = lattice_stats(polygon).interior
    budget = None
    if max_codeg is not None:
        budget = max_codeg - _base_codegree(polygon, ls, rs, iota) - _loss(src)
        if budget < 0:
            return []
    out: List[FloorDiagram] = []
    for snk in _sink_distributions(polygon.d_t, polygon.height, budget):
        out.extend(
            _enumerate_for_distribution(
                polygon, genus, ls, rs, src, snk, iota, max_codeg
            )
        )
    return out


def enumerate_floor_diagrams(
    polygon: HTransversePolygon,
    genus: int,
    max_codeg: Optional[int] = None,
    jobs: int = 1,
) -> List[FloorDiagram]:
    """All floor diagrams with the given Newton polygon and genus, one
    canonical representative per isomorphism class, sorted by canonical key.

    With max_codeg set, only classes of codegree <= max_codeg are produced
    (exactly the ones contributing to the top max_codeg+1 coefficients).
    """
    ensure_valid(polygon)
    if genus < 0:
        raise ValueError("genus must be nonnegative")
    stats = lattice_stats(polygon)
    if genus > stats.interior:
        return []
    tasks = enumeration_tasks(polygon, genus, max_codeg)
    raw: List[FloorDiagram] = []
    if jobs > 1 and len(tasks) > 1:
        import concurrent.futures

        workers = min(jobs, len(tasks))
        with concurrent.futures.ProcessPoolExecutor(max_workers=workers) as ex:
            futures = [
                ex.submit(run_enumeration_task, polygon, genus, t, max_codeg)
                for t in tasks
            ]
            for f in futures:
                raw.extend(f.result())
    else:
        for t in tasks:
            raw.extend(run_enumeration_task(polygon, genus, t, max_codeg))
    classes: Dict[Tuple, FloorDiagram] = {}
    for d in raw:
        classes.setdefault(canonical_key(d), canonical_form(d))
    return [classes[k] for k in sorted(classes)]


# -- codegree-reducing operations ------------------------------------------


EdgeRef = Tuple[str, int, int]  # ("elev", index, 0) | ("src", floor, copy) | ("snk", floor, copy)


def _consecutive(diagram: FloorDiagram, v1: int, v2: int) -> bool:
    """v2 covers v1 in the floor order induced by reachability."""
    a = diagram.n_floors
    succ = {(i, j) for i, j, _ in diagram.elevators}
    reach = [[False] * a for _ in range(a)]
    for i, j in succ:
        reach[i][j] = True
    for k in range(a):
        for i in range(a):
            if reach[i][k]:
                for j in range(a):
                    if reach[k][j]:
                        reach[i][j] = True
    if not reach[v1][v2]:
        return False
    return not any(reach[v1][w] and reach[w][v2] for w in range(a))


def _rebuild(floors, elevators) -> FloorDiagram:
    d = FloorDiagram(tuple(floors), tuple(elevators))
    poly = d.newton_polygon()
    errs = validate(d, poly)
    if errs:
        raise ValueError("operation produced an invalid diagram: " + "; ".join(errs))
    return canonical_form(d)


def op_A_plus(diagram: FloorDiagram, e1_index: int, e2: EdgeRef) -> FloorDiagram:
    """Slide an elevator leaving v1 up to v2 along an elevator e1 from v1 to v2."""
    v1, v2, w1 = diagram.elevators[e1_index]
    elevs = list(diagram.elevators)
    floors = [list(f) for f in diagram.floors]
    kind, idx, _ = e2
    if kind == "elev":
        i, j, w2 = elevs[idx]
        if idx == e1_index or i != v1 or j == v2:
            raise ValueError("A+ needs a second elevator leaving v1, not adjacent to v2")
        if v2 > j:
            raise ValueError("A+ would reverse an elevator (configuration not of the A+ shape)")
        elevs[idx] = (v2, j, w2)
    elif kind == "snk":
        if floors[idx][3] <= 0 or idx != v1:
            raise ValueError("A+ needs a sink at v1")
        w2 = 1
        floors[v1][3] -= 1
        floors[v2][3] += 1
    else:
        raise ValueError("A+ moves an elevator or sink leaving v1")
    elevs[e1_index] = (v1, v2, w1 + w2)
    return _rebuild([tuple(f) for f in floors], elevs)


def op_A_minus(diagram: FloorDiagram, e1_index: int, e2: EdgeRef) -> FloorDiagram:
    """Slide an elevator ending at v2 down to v1 along an elevator e1 from v1 to v2."""
    v1, v2, w1 = diagram.elevators[e1_index]
    elevs = list(diagram.elevators)
    floors = [list(f) for f in diagram.floors]
    kind, idx, _ = e2
    if kind == "elev":
        i, j, w2 = elevs[idx]
        if idx == e1_index or j != v2 or i == v1:
            raise ValueError("A- needs a second elevator ending at v2, not adjacent to v1")
        if i > v1:
            raise ValueError("A- would reverse an elevator (configuration not of the A- shape)")
        elevs[idx] = (i, v1, w2)
    elif kind == "src":
        if floors[idx][2] <= 0 or idx != v2:
            raise ValueError("A- needs a source at v2")
        w2 = 1
        floors[v2][2] -= 1
        floors[v1][2] += 1
    else:
        raise ValueError("A- moves an elevator or source ending at v2")
    elevs[e1_index] = (v1, v2, w1 + w2)
    return _rebuild([tuple(f) for f in floors], elevs)


def op_B_l(diagram: FloorDiagram, v1: int, v2: int) -> FloorDiagram:
    """Swap the l labels of consecutive floors v1 < v2 with l(v1) < l(v2)."""
    if not _consecutive(diagram, v1, v2):
        raise ValueError("B^l needs consecutive floors")
    l1, l2 = diagram.floors[v1][0], diagram.floors[v2][0]
    if not l1 < l2:
        raise ValueError("B^l needs l(v1) < l(v2)")
    link = next(
        (k for k, (i, j, _) in enumerate(diagram.elevators) if (i, j) == (v1, v2)),
        None,
    )
    if link is None:
        raise ValueError("B^l needs an elevator joining the two floors")
    delta = l2 - l1
    floors = [list(f) for f in diagram.floors]
    floors[v1][0], floors[v2][0] = l2, l1
    elevs = list(diagram.elevators)
    i, j, w = elevs[link]
    elevs[link] = (i, j, w + delta)
    return _rebuild([tuple(f) for f in floors], elevs)


def op_B_r(diagram: FloorDiagram, v1: int, v2: int) -> FloorDiagram:
    """Swap the r labels of consecutive floors v1 < v2 with r(v1) > r(v2)."""
    if not _consecutive(diagram, v1, v2):
        raise ValueError("B^r needs consecutive floors")
    r1, r2 = diagram.floors[v1][1], diagram.floors[v2][1]
    if not r1 > r2:
        raise ValueError("B^r needs r(v1) > r(v2)")
    link = next(
        (k for k, (i, j, _) in enumerate(diagram.elevators) if (i, j) == (v1, v2)),
        None,
    )
    if link is None:
        raise ValueError("B^r needs an elevator joining the two floors")
    delta = r1 - r2
    floors = [list(f) for f in diagram.floors]
    floors[v1][1], floors[v2][1] = r2, r1
    elevs = list(diagram.elevators)
    i, j, w = elevs[link]
    elevs[link] = (i, j, w + delta)
    return _rebuild([tuple(f) for f in floors], elevs)
