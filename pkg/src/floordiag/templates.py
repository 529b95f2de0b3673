"""Building blocks for layered floor diagrams: templates, capping trees,
admissible collections, and the reconstruction bijection.

A template is a layered weighted multigraph on totally ordered vertices
carrying no separating edge, weighted away from its short edges.  The
census enumerated here contains the atomic templates: pieces that cannot
be written as two valid pieces sharing a single vertex (composites arise
in reconstruction by placing two templates with touching spans, which the
position sets below allow).  Sources never sit on the minimal vertex and
sinks never on the maximal one: the reconstruction owns those slots.
Templates with both sources and sinks cannot appear in any admissible
collection (sources force the first slot, sinks the last), so they are
excluded as well.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Dict, Iterator, List, Optional, Sequence, Tuple

from .diagram import (
    FloorDiagram,
    canonical_key,
    codegree,
    enumerate_floor_diagrams,
    validate as validate_diagram,
)
from .polygon import make_delta_abn

Long = Tuple[int, int, int]  # (p, q, w), 1-based vertices, q - p >= 2


@dataclass(frozen=True)
class Template:
    length: int
    shorts: Tuple[int, ...]  # short-edge count per gap, len length-1
    longs: Tuple[Long, ...]  # weighted non-short internal edges, sorted
    sources: Tuple[int, ...]  # per vertex, len length
    sinks: Tuple[int, ...]

    def genus(self) -> int:
        return sum(self.shorts) + len(self.longs) - self.length + 1

    def codeg(self) -> int:
        c = sum((q - p - 1) * w for p, q, w in self.longs)
        c += sum(v * count for v, count in enumerate(self.sources))
        c += sum(
            (self.length - 1 - v) * count for v, count in enumerate(self.sinks)
        )
        return c

    def n_sources(self) -> int:
        return sum(self.sources)

    def n_sinks(self) -> int:
        return sum(self.sinks)

    def is_point(self) -> bool:
        return self.length == 1

    def is_closed(self) -> bool:
        return self.length > 1 and not self.n_sources() and not self.n_sinks()

    def key(self) -> Tuple:
        return (self.length, self.shorts, self.longs, self.sources, self.sinks)

    def to_json(self) -> Dict:
        return {
            "length": self.length,
            "short_edges_per_gap": list(self.shorts),
            "long_edges": [list(e) for e in self.longs],
            "sources": list(self.sources),
            "sinks": list(self.sinks),
            "genus": self.genus(),
            "codegree": self.codeg(),
        }


POINT = Template(1, (), (), (0,), (0,))


def _long_spans_gap(long: Long, gap: int) -> bool:
    """gap g sits between vertices g and g+1 (1-based)."""
    p, q, _ = long
    return p <= gap < q


def _structurally_valid(t: Template) -> bool:
    """Layeredness, the no-separating-edge condition, and the slot rules
    (no source at the bottom vertex, no sink at the top, not both kinds)."""
    l = t.length
    if l == 1:
        return not t.longs and not any(t.sources) and not any(t.sinks)
    if any(c < 1 for c in t.shorts):
        return False  # consecutive vertices would be incomparable
    if t.sources[0] or t.sinks[-1]:
        return False
    if t.n_sources() and t.n_sinks():
        return False
    for p, q, w in t.longs:
        if not (1 <= p and q <= l and q - p >= 2 and w >= 1):
            return False
    for gap in range(1, l):
        if t.shorts[gap - 1] != 1:
            continue
        if any(_long_spans_gap(e, gap) for e in t.longs):
            continue
        # a lone short edge is separating unless a source above the gap or a
        # sink at or below it keeps some element incomparable to it
        if any(t.sources[v] for v in range(gap, l)):
            continue
        if any(t.sinks[v] for v in range(gap)):
            continue
        return False
    return True


def _is_composite(t: Template) -> bool:
    """True when the template splits at an interior vertex into a sink-free
    lower piece and a source-free upper piece, both structurally valid;
    such shapes are produced by two touching templates instead."""
    for j in range(2, t.length):
        if any(e[0] < j < e[1] for e in t.longs):
            continue
        lower = Template(
            j,
            t.shorts[: j - 1],
            tuple(e for e in t.longs if e[1] <= j),
            t.sources[:j],
            t.sinks[: j - 1] + (0,),
        )
        upper = Template(
            t.length - j + 1,
            t.shorts[j - 1:],
            tuple((p - j + 1, q - j + 1, w) for p, q, w in t.longs if p >= j),
            (0,) + t.sources[j:],
            t.sinks[j - 1:],
        )
        if lower.n_sinks() or upper.n_sources():
            continue
        if _structurally_valid(lower) and _structurally_valid(upper):
            return True
    return False


def is_template(t: Template) -> bool:
    return _structurally_valid(t) and not _is_composite(t)


def enumerate_templates(max_genus: int, max_codeg: int) -> List[Template]:
    """All atomic templates of genus <= max_genus and codegree <= max_codeg,
    sorted by (genus, codegree, length, structure)."""
    if max_genus < 0 or max_codeg < 0:
        raise ValueError("bounds must be nonnegative")
    out = [POINT]
    max_len = 1 + max_genus + max_codeg  # codeg + genus >= length - 1
    for l in range(2, max_len + 1):
        for shorts in itertools.product(range(1, max_genus + 2), repeat=l - 1):
            base_edges = sum(shorts)
            if base_edges - l + 1 > max_genus:
                continue
            for longs in _long_multisets(l, max_genus - (base_edges - l + 1), max_codeg):
                for sources, sinks in _decorations(l, max_codeg):
                    t = Template(l, shorts, longs, sources, sinks)
                    if t.genus() > max_genus or t.codeg() > max_codeg:
                        continue
                    if is_template(t):
                        out.append(t)
    out.sort(key=lambda t: (t.genus(), t.codeg(), t.length, t.key()))
    return out


def _long_multisets(l: int, genus_budget: int, codeg_budget: int) -> Iterator[Tuple[Long, ...]]:
    spots = [
        (p, q, w)
        for p in range(1, l - 1)
        for q in range(p + 2, l + 1)
        for w in range(1, codeg_budget // (q - p - 1) + 1)
    ]

    def rec(idx, g_left, c_left):
        yield ()
        for k in range(idx, len(spots)):
            p, q, w = spots[k]
            cost = (q - p - 1) * w
            if g_left >= 1 and cost <= c_left:
                for tail in rec(k, g_left - 1, c_left - cost):
                    yield ((p, q, w),) + tail

    yield from rec(0, genus_budget, codeg_budget)


def _decorations(l: int, codeg_budget: int) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    def vectors(costs):
        # integer vectors with sum(costs[v] * x[v]) <= codeg_budget, zero where cost 0 forbids
        def rec(v, left):
            if v == l:
                yield ()
                return
            cost = costs[v]
            top = left // cost if cost else 0
            for x in range(top + 1):
                for tail in rec(v + 1, left - cost * x):
                    yield (x,) + tail
        yield from rec(0, codeg_budget)

    src_costs = [v for v in range(l)]  # source at vertex v+1 costs v
    snk_costs = [l - 1 - v for v in range(l)]
    zeros = (0,) * l
    for src in vectors(src_costs):
        if any(src):
            yield src, zeros
        else:
            for snk in vectors(snk_costs):
                yield zeros, snk


def template_census(max_genus: int, max_codeg: int) -> Dict[Tuple[int, int], int]:
    counts: Dict[Tuple[int, int], int] = {}
    for t in enumerate_templates(max_genus, max_codeg):
        key = (t.genus(), t.codeg())
        counts[key] = counts.get(key, 0) + 1
    return counts


# -- capping trees -------------------------------------------------------------

TreeShape = Tuple  # nested sorted tuples; a leaf is ()


@dataclass(frozen=True)
class CappingTree:
    floors: int
    divergence: int
    shape: TreeShape  # children of the root, each a nested shape

    def weighted_edges(self) -> List[Tuple[int, int]]:
        """(weight, subtree size) for every edge, root first."""
        out = []

        def walk(children):
            for child in children:
                size = _shape_size(child)
                out.append((self.divergence * size, size))
                walk(child)

        walk(self.shape)
        return out

    def codeg(self) -> int:
        a, n = self.floors, self.divergence
        total = (a - 1) * (n * a - 2) // 2
        return total - sum(w - 1 for w, _ in self.weighted_edges())

    def to_json(self) -> Dict:
        return {
            "floors": self.floors,
            "divergence": self.divergence,
            "root_children": _shape_json(self.shape),
            "codegree": self.codeg(),
        }


def _shape_size(shape: TreeShape) -> int:
    return 1 + sum(_shape_size(c) for c in shape)


def _shape_json(shape: TreeShape):
    return [_shape_json(c) for c in shape]


def _rooted_shapes(size: int) -> List[TreeShape]:
    """All rooted trees on `size` vertices as canonical nested tuples."""
    if size == 1:
        return [()]
    out = set()
    for parts in _partitions(size - 1):
        child_lists = [
            _rooted_shapes(p) for p in parts
        ]
        for combo in itertools.product(*child_lists):
            out.add(tuple(sorted(combo)))
    return sorted(out)


def _partitions(total: int, lo: int = 1) -> Iterator[Tuple[int, ...]]:
    if total == 0:
        yield ()
        return
    for first in range(lo, total + 1):
        for tail in _partitions(total - first, first):
            yield (first,) + tail


def enumerate_capping_trees(a: int, n: int, max_codeg: int) -> List[CappingTree]:
    """All capping trees with `a` floors and divergence n at every floor but
    the root, of codegree <= max_codeg.  Empty when n(a-2) > max_codeg."""
    if a < 3:
        return []  # the root must disconnect the tree, so it needs >= 2 children
    if n < 1:
        raise ValueError("capping trees need positive divergence")
    out = []
    for shape in _rooted_shapes(a):
        if len(shape) < 2:
            continue
        tree = CappingTree(a, n, shape)
        c = tree.codeg()
        if c < 0:
            raise AssertionError("negative capping-tree codegree")
        if c <= max_codeg:
            out.append(tree)
    out.sort(key=lambda t: (t.codeg(), t.shape))
    return out


# -- admissible collections and reconstruction --------------------------------


@dataclass(frozen=True)
class AdmissibleCollection:
    parts: Tuple[Template, ...]

    def genus(self) -> int:
        return sum(t.genus() for t in self.parts)

    def codeg(self) -> int:
        return sum(t.codeg() for t in self.parts)

    def is_admissible(self) -> bool:
        if not self.parts:
            return False
        if self.parts[0].n_sinks() or self.parts[-1].n_sources():
            return False
        return all(t.is_closed() for t in self.parts[1:-1])


def enumerate_admissible_collections(
    genus: int, codeg: int, census: Optional[Sequence[Template]] = None
) -> List[AdmissibleCollection]:
    """Admissible collections with the exact total genus and codegree."""
    if census is None:
        census = enumerate_templates(genus, codeg)
    firsts = [t for t in census if not t.n_sinks()]
    lasts = [t for t in census if not t.n_sources()]
    middles = [t for t in census if t.is_closed()]
    out = []
    max_parts = genus + 2
    for m in range(1, max_parts + 1):
        pools = [firsts if j == 0 else lasts if j == m - 1 else middles for j in range(m)]
        if m == 1:
            pools = [[t for t in census if not t.n_sinks() and not t.n_sources()]]

        def rec(j, g_left, c_left, acc):
            if j == len(pools):
                if g_left == 0 and c_left == 0:
                    out.append(AdmissibleCollection(tuple(acc)))
                return
            for t in pools[j]:
                g, c = t.genus(), t.codeg()
                if g <= g_left and c <= c_left:
                    rec(j + 1, g_left - g, c_left - c, acc + [t])

        rec(0, genus, codeg, [])
    return [col for col in out if col.is_admissible()]


def positions(collection: AdmissibleCollection, a: int) -> Iterator[Tuple[int, ...]]:
    """Elements of A_a: bottom vertices k_j of each template span, with
    k_1 = 1 and k_m + l_m = a + 1.  Consecutive spans may share one vertex
    when both templates have length >= 2 (a zero-length connecting chain)."""
    parts = collection.parts
    m = len(parts)
    last = a + 1 - parts[-1].length
    if last < 1:
        return
    if m == 1:
        if last == 1:
            yield (1,)
        return

    def min_step(j):
        both_long = parts[j].length >= 2 and parts[j + 1].length >= 2
        return parts[j].length - (1 if both_long else 0)

    def rec(j, k, acc):
        if j == m - 2:
            if last >= k + min_step(j):
                yield acc + (last,)
            return
        for nxt in range(k + min_step(j), last + 1):
            yield from rec(j + 1, nxt, acc + (nxt,))

    yield from rec(0, 1, (1,))


def _gap_requirements(
    collection: AdmissibleCollection,
    kappa: Tuple[int, ...],
    a: int,
    b: int,
    n: int,
):
    """Flows per gap and the per-template short-edge requirements.

    Returns (floor data, per-template list of (gap index, short count,
    required short total), chain gap weights) or None when infeasible."""
    parts = collection.parts
    sources = [0] * a
    sinks = [0] * a
    edges_fixed: List[Tuple[int, int, int]] = []
    covered_gaps: Dict[int, Tuple[int, int]] = {}  # gap -> (template idx, template gap)
    for idx, (t, k) in enumerate(zip(parts, kappa)):
        for v in range(t.length):
            sources[k - 1 + v] += t.sources[v]
            sinks[k - 1 + v] += t.sinks[v]
        for p, q, w in t.longs:
            edges_fixed.append((k - 2 + p, k - 2 + q, w))
        for gap in range(t.length - 1):
            covered_gaps[k - 1 + gap] = (idx, gap)
    extra_src = a * n + b - sum(sources)
    extra_snk = b - sum(sinks)
    if extra_src < 0 or extra_snk < 0:
        return None
    sources[0] += extra_src
    sinks[a - 1] += extra_snk
    flows = []
    run = 0
    for g in range(a - 1):
        run += sources[g] - sinks[g] - n
        if run < 1:
            return None
        flows.append(run)
    template_gaps = []
    chain_edges = []
    for g in range(a - 1):
        crossing = sum(w for p, q, w in edges_fixed if p <= g < q)
        rest = flows[g] - crossing
        if g in covered_gaps:
            idx, tgap = covered_gaps[g]
            count = parts[idx].shorts[tgap]
            if rest < count:
                return None
            template_gaps.append((g, count, rest))
        else:
            if rest < 1:
                return None
            chain_edges.append((g, g + 1, rest))
    floors = tuple((0, n, s, t) for s, t in zip(sources, sinks))
    return floors, template_gaps, chain_edges, edges_fixed


def weight_extensions(
    collection: AdmissibleCollection,
    kappa: Tuple[int, ...],
    a: int,
    b: int,
    n: int,
) -> Iterator[Tuple[Tuple[int, Tuple[int, ...]], ...]]:
    """Elements of B: per covered gap, a multiset of short-edge weights."""
    req = _gap_requirements(collection, kappa, a, b, n)
    if req is None:
        return
    _, template_gaps, _, _ = req
    pools = [
        [(g, comp) for comp in _multiset_compositions(rest, count)]
        for g, count, rest in template_gaps
    ]
    yield from itertools.product(*pools)


def _multiset_compositions(total: int, parts: int) -> Iterator[Tuple[int, ...]]:
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


def reconstruct(
    collection: AdmissibleCollection,
    kappa: Tuple[int, ...],
    omega: Tuple[Tuple[int, Tuple[int, ...]], ...],
    a: int,
    b: int,
    n: int,
) -> FloorDiagram:
    """Assemble the layered floor diagram determined by the collection, its
    positions and a short-edge weight extension."""
    req = _gap_requirements(collection, kappa, a, b, n)
    if req is None:
        raise ValueError("infeasible positions: some forced weight is nonpositive")
    floors, template_gaps, chain_edges, edges_fixed = req
    edges = list(edges_fixed) + list(chain_edges)
    by_gap = dict(omega)
    for g, count, rest in template_gaps:
        weights = by_gap.get(g)
        if weights is None or len(weights) != count or sum(weights) != rest:
            raise ValueError("weight extension does not match the gap requirements")
        edges.extend((g, g + 1, w) for w in weights)
    diagram = FloorDiagram(floors, tuple(edges))
    polygon = make_delta_abn(a, b, n)
    errs = validate_diagram(diagram, polygon)
    if errs:
        raise AssertionError("reconstruction produced an invalid diagram: " + "; ".join(errs))
    return diagram


@dataclass
class BijectionReport:
    name: str
    passed: bool
    reconstructed: int
    enumerated: int
    details: List[str]

    def line(self) -> str:
        return "%s %s" % ("PASS" if self.passed else "FAIL", self.name)


def verify_bijection(a: int, b: int, n: int, genus: int, i: int) -> BijectionReport:
    """Check that reconstruction hits every diagram class of codegree
    exactly i exactly once, and that every enumerated class of codegree
    <= i is layered."""
    if a <= i or b < i:
        raise ValueError("bijection region needs a > i and b >= i")
    polygon = make_delta_abn(a, b, n)
    name = "bijection a=%d b=%d n=%d g=%d i=%d" % (a, b, n, genus, i)
    details: List[str] = []
    recon: Dict[Tuple, int] = {}
    census = enumerate_templates(genus, i)
    for col in enumerate_admissible_collections(genus, i, census):
        for kappa in positions(col, a):
            for omega in weight_extensions(col, kappa, a, b, n):
                d = reconstruct(col, kappa, omega, a, b, n)
                if d.genus() != genus or codegree(d) != i:
                    return BijectionReport(
                        name, False, 0, 0,
                        ["reconstructed diagram has wrong genus or codegree"],
                    )
                key = canonical_key(d)
                recon[key] = recon.get(key, 0) + 1
    dupes = {k: c for k, c in recon.items() if c > 1}
    enumerated = enumerate_floor_diagrams(polygon, genus, max_codeg=i)
    not_layered = [d for d in enumerated if not d.is_layered()]
    exact = {canonical_key(d) for d in enumerated if codegree(d) == i}
    passed = not dupes and not not_layered and set(recon) == exact
    if dupes:
        details.append("%d classes reconstructed more than once" % len(dupes))
    if not_layered:
        details.append("%d enumerated classes are not layered" % len(not_layered))
    missing = exact - set(recon)
    spurious = set(recon) - exact
    if missing:
        details.append("%d enumerated classes not reconstructed" % len(missing))
    if spurious:
        details.append("%d reconstructed classes not enumerated" % len(spurious))
    if passed:
        details.append("%d classes matched" % len(exact))
    return BijectionReport(name, passed, len(recon), len(exact), details)
