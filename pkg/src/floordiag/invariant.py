"""Tropical refined invariants and refined descendant invariants.

G_Delta(g) sums count * multiplicity over floor-diagram classes of genus g;
G_Delta(0;s) sums the refined S-multiplicity over marked genus-0 classes
for a pairing of order s.  Results are memoized on disk keyed by polygon,
parameters and the enumeration algorithm version, because the verification
suites recompute the same invariants many times.
"""

from __future__ import annotations

import hashlib
import json
import os
import random
import warnings
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Optional, Sequence, Tuple

from .diagram import enumerate_floor_diagrams, mult
from .laurent import LaurentPoly
from .marking import (
    Pairing,
    all_pairings,
    canonical_pairing,
    count_markings,
    enumerate_markings,
    mu_S,
)
from .polygon import HTransversePolygon, chop_top, lattice_stats

# Bump when enumeration or multiplicity semantics change; invalidates caches.
ALGO_VERSION = "floordiag-1"

_ENV_CACHE = "FLOORDIAG_CACHE_DIR"


def cache_dir() -> Optional[Path]:
    """Cache directory from $FLOORDIAG_CACHE_DIR; '' disables caching."""
    env = os.environ.get(_ENV_CACHE)
    if env == "":
        return None
    if env:
        return Path(env)
    return Path.home() / ".cache" / "floordiag"


def _cache_path(kind: str, polygon: HTransversePolygon, params: str) -> Optional[Path]:
    base = cache_dir()
    if base is None:
        return None
    token = "|".join((ALGO_VERSION, kind, polygon.key(), params))
    name = hashlib.sha256(token.encode()).hexdigest()[:32] + ".json"
    return base / name


def _cache_get(path: Optional[Path]) -> Optional[LaurentPoly]:
    if path is None or not path.is_file():
        return None
    try:
        return LaurentPoly.from_json(json.loads(path.read_text()))
    except (ValueError, OSError):
        return None


def _cache_put(path: Optional[Path], value: LaurentPoly) -> None:
    if path is None:
        return
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
        tmp = path.with_suffix(".tmp%d" % os.getpid())
        tmp.write_text(json.dumps(value.to_json()))
        tmp.replace(path)
    except OSError:
        pass


def clear_cache() -> int:
    base = cache_dir()
    if base is None or not base.is_dir():
        return 0
    n = 0
    for f in base.glob("*.json"):
        f.unlink()
        n += 1
    return n


def _pairing_token(pairing: Pairing) -> str:
    return ",".join("%d-%d" % p for p in sorted(pairing))


def refined_invariant(
    polygon: HTransversePolygon,
    genus: int,
    max_codeg: Optional[int] = None,
    jobs: int = 1,
) -> LaurentPoly:
    """G_Delta(g); zero when g exceeds the interior lattice count.

    With max_codeg set, only the coefficients of codegree <= max_codeg are
    trustworthy (lower terms of the result are dropped).
    """
    stats = lattice_stats(polygon)
    if genus > stats.interior:
        return LaurentPoly.zero()
    path = _cache_path("G", polygon, "g=%d;mc=%s" % (genus, max_codeg))
    cached = _cache_get(path)
    if cached is not None:
        return cached
    total = LaurentPoly.zero()
    for D in enumerate_floor_diagrams(polygon, genus, max_codeg=max_codeg, jobs=jobs):
        total = total + mult(D).scalar_mul(count_markings(D))
    if max_codeg is not None:
        top2 = 2 * (stats.interior - genus)
        total = LaurentPoly(
            {e2: v for e2, v in total.key() if e2 >= top2 - 2 * max_codeg}
        )
    _cache_put(path, total)
    return total


def refined_descendant(
    polygon: HTransversePolygon,
    s: int,
    pairing: Optional[Pairing] = None,
    max_codeg: Optional[int] = None,
    jobs: int = 1,
) -> LaurentPoly:
    """G_Delta(0;s) for a pairing of order s (the consecutive one by default).

    With max_codeg set, only codegree <= max_codeg coefficients are kept.
    """
    stats = lattice_stats(polygon)
    if s < 0:
        raise ValueError("s must be nonnegative")
    if s > stats.s_max:
        warnings.warn("s=%d exceeds s_max=%d; invariant is zero" % (s, stats.s_max))
        return LaurentPoly.zero()
    if pairing is None:
        pairing = canonical_pairing(s)
    if len(pairing) != s:
        raise ValueError("pairing order %d does not match s=%d" % (len(pairing), s))
    n_marks = stats.boundary - 1
    for i, j in pairing:
        if not (1 <= i and j <= n_marks):
            raise ValueError("pair %r outside {1..%d}" % ((i, j), n_marks))
    path = _cache_path(
        "Gs", polygon, "s=%d;S=%s;mc=%s" % (s, _pairing_token(pairing), max_codeg)
    )
    cached = _cache_get(path)
    if cached is not None:
        return cached
    total = LaurentPoly.zero()
    for D in enumerate_floor_diagrams(polygon, 0, max_codeg=max_codeg, jobs=jobs):
        for m in enumerate_markings(D):
            total = total + mu_S(D, m, pairing)
    if max_codeg is not None and not total.is_zero():
        top2 = 2 * stats.interior
        total = LaurentPoly(
            {e2: v for e2, v in total.key() if e2 >= top2 - 2 * max_codeg}
        )
    _cache_put(path, total)
    return total


def descendant_codegree_coeff(
    polygon: HTransversePolygon, s: int, i: int, jobs: int = 1
) -> int:
    """coef_i G_Delta(0;s) through codegree-bounded enumeration."""
    stats = lattice_stats(polygon)
    g = refined_descendant(polygon, s, max_codeg=i, jobs=jobs)
    if g.is_zero():
        return 0
    return g.coeff2(2 * (stats.interior - i))


def invariant_codegree_coeff(
    polygon: HTransversePolygon, genus: int, i: int) -> int:
    """coef_i G_Delta(g) via batched shape enumeration.

    Diagram classes are grouped by their small-weight pattern; within a
    shape both the marking count (reduced extensions over ordered weight
    assignments) and the codegree-(i - codeg) coefficient of prod [w]^2
    (the composition-sum shortcut) are constant, so each shape contributes
    assignments * markings_per_assignment * coefficient in one step.
    """
    from .coeff import coeff_product_of_squares
    from .diagram import FREE_WEIGHT, codegree_coefficient_sum, vertex_automorphisms
    from .marking import count_reduced_extensions, _ordinal_chain_count

    def shape_term(pseudo, codeg):
        reduced = _ordinal_chain_count(pseudo)
        if reduced is None:
            reduced = count_reduced_extensions(pseudo)
        auts = len(vertex_automorphisms(pseudo))
        if reduced % auts:
            raise AssertionError("automorphism action on markings is not free")
        weights = [
            i + 1 if w == FREE_WEIGHT else w for _, _, w in pseudo.elevators
        ]
        return (reduced // auts) * coeff_product_of_squares(i - codeg, weights)

    return codegree_coefficient_sum(polygon, genus, i, shape_term)


# -- verification reports -----------------------------------------------------


@dataclass
class Report:
    name: str
    passed: bool
    details: List[str] = field(default_factory=list)

    def line(self) -> str:
        return "%s %s" % ("PASS" if self.passed else "FAIL", self.name)


def verify_pairing_independence(
    polygon: HTransversePolygon,
    s: int,
    sample_cutoff: int = 12,
    sample_size: int = 50,
    seed: int = 20240229,
) -> Report:
    """Recompute G_Delta(0;s) for every pairing of order s (or a fixed-seed
    sample when n(Delta) is large) and compare."""
    stats = lattice_stats(polygon)
    n = stats.boundary - 1
    name = "pairing-independence %s s=%d" % (polygon.key(), s)
    if s > stats.s_max:
        return Report(name, False, ["s beyond s_max"])
    pairings = list(all_pairings(n, s))
    if n > sample_cutoff and len(pairings) > sample_size:
        rng = random.Random(seed)
        pairings = rng.sample(pairings, sample_size)
    values: Dict[Tuple, List[str]] = {}
    for S in pairings:
        val = refined_descendant(polygon, s, pairing=S)
        values.setdefault(val.key(), []).append(_pairing_token(S))
    passed = len(values) == 1
    details = ["%d pairings checked" % len(pairings)]
    if not passed:
        for key, tags in values.items():
            details.append(
                "value %s from pairings %s" % (LaurentPoly(dict(key)).render(), tags[:4])
            )
    return Report(name, passed, details)


def verify_recursion(polygon: HTransversePolygon, s: int) -> Report:
    """Check G(0;s+1) = G(0;s) - 2 G_chop(0;s) exactly."""
    stats = lattice_stats(polygon)
    name = "recursion %s s=%d" % (polygon.key(), s)
    if 2 * s > stats.boundary - 1 - 2:
        raise ValueError("recursion needs 2s <= n(Delta) - 2")
    smaller = chop_top(polygon)
    lhs = refined_descendant(polygon, s + 1)
    rhs = refined_descendant(polygon, s) - refined_descendant(smaller, s).scalar_mul(2)
    passed = lhs == rhs
    details = [] if passed else ["lhs=%s rhs=%s" % (lhs.render(), rhs.render())]
    return Report(name, passed, details)


def verify_monotonicity(polygon: HTransversePolygon, i: int) -> Report:
    """coef_i G(0;0) >= coef_i G(0;1) >= ... >= 0."""
    stats = lattice_stats(polygon)
    name = "monotonicity %s i=%d" % (polygon.key(), i)
    if i > stats.interior:
        return Report(name, False, ["codegree beyond the polynomial degree"])
    chain = [
        descendant_codegree_coeff(polygon, s, i) for s in range(stats.s_max + 1)
    ]
    passed = all(x >= y for x, y in zip(chain, chain[1:])) and chain[-1] >= 0
    return Report(name, passed, ["chain: %s" % (chain,)])


def marked_class_table(
    polygon: HTransversePolygon, pairings: Sequence[Pairing]
) -> List[Dict]:
    """Per-marked-class multiplicity table: mult plus mu_S for each pairing."""
    rows = []
    for D in enumerate_floor_diagrams(polygon, 0):
        for m in enumerate_markings(D):
            row = {"mult": mult(D), "mu": [mu_S(D, m, S) for S in pairings]}
            rows.append(row)
    return rows
