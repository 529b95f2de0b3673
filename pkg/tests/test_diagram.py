import itertools

import pytest

from floordiag.diagram import (
    FloorDiagram,
    automorphism_count,
    canonical_form,
    canonical_key,
    codegree,
    enumerate_floor_diagrams,
    mult,
    op_A_minus,
    op_A_plus,
    op_B_l,
    op_B_r,
    validate,
    vertex_automorphisms,
)
from floordiag.laurent import LaurentPoly
from floordiag.polygon import HTransversePolygon, lattice_stats, make_delta_abn, make_delta_d


def brute_force_classes(poly, genus):
    """Independent generator: all labelled weighted DAGs on ordered floors
    satisfying the divergence equations, bucketed by canonical form."""
    a = poly.height
    iota = lattice_stats(poly).interior
    if genus > iota:
        return set()
    n_edges = a - 1 + genus
    pairs = [(i, j) for i in range(a) for j in range(i + 1, a)]
    deg_budget = iota - genus
    found = set()
    l_opts = set(itertools.permutations(poly.d_l))
    r_opts = set(itertools.permutations(poly.d_r))

    def weight_vectors(k, budget):
        if k == 0:
            yield ()
            return
        for w in range(1, budget + 2):
            for tail in weight_vectors(k - 1, budget - (w - 1)):
                yield (w,) + tail

    for support in itertools.combinations_with_replacement(pairs, n_edges):
        for weights in weight_vectors(n_edges, deg_budget):
            edges = tuple(sorted(zip((p[0] for p in support), (p[1] for p in support), weights)))
            for ls in l_opts:
                for rs in r_opts:
                    for snk in _distributions(poly.d_t, a):
                        src = []
                        ok = True
                        for v in range(a):
                            inflow = sum(w for i, j, w in edges if j == v)
                            outflow = sum(w for i, j, w in edges if i == v)
                            s = (rs[v] - ls[v]) - inflow + outflow + snk[v]
                            if s < 0:
                                ok = False
                                break
                            src.append(s)
                        if not ok or sum(src) != poly.d_b:
                            continue
                        d = FloorDiagram(tuple(zip(ls, rs, src, snk)), edges)
                        if not validate(d, poly):
                            found.add(canonical_key(d))
    return found


def _distributions(total, parts):
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for tail in _distributions(total - first, parts - 1):
            yield (first,) + tail


def test_counts_delta3():
    assert len(enumerate_floor_diagrams(make_delta_d(3), 0)) == 3
    assert len(enumerate_floor_diagrams(make_delta_d(3), 1)) == 1
    assert enumerate_floor_diagrams(make_delta_d(3), 2) == []


def test_counts_delta4():
    counts = [len(enumerate_floor_diagrams(make_delta_d(4), g)) for g in range(4)]
    assert counts == [12, 11, 5, 1]


@pytest.mark.parametrize(
    "a,b,n,gmax",
    [(3, 0, 1, 2), (2, 2, 1, 2), (4, 0, 1, 2), (3, 2, 0, 2), (2, 0, 2, 1), (3, 1, 1, 2)],
)
def test_bruteforce_completeness(a, b, n, gmax):
    poly = make_delta_abn(a, b, n)
    for g in range(gmax + 1):
        fast = {canonical_key(d) for d in enumerate_floor_diagrams(poly, g)}
        slow = brute_force_classes(poly, g)
        assert fast == slow, (a, b, n, g, len(fast), len(slow))


def test_bruteforce_completeness_general_polygon():
    poly = HTransversePolygon((0, 1), (1, 1), 2, 1)
    for g in range(2):
        fast = {canonical_key(d) for d in enumerate_floor_diagrams(poly, g)}
        slow = brute_force_classes(poly, g)
        assert fast == slow


def test_max_codeg_restriction():
    poly = make_delta_d(4)
    full = enumerate_floor_diagrams(poly, 0)
    for cap in range(4):
        capped = enumerate_floor_diagrams(poly, 0, max_codeg=cap)
        assert {d.key() for d in capped} == {
            d.key() for d in full if codegree(d) <= cap
        }


def test_mult_examples():
    # the weight-2 cubic diagram and an all-weight-1 diagram
    chain = FloorDiagram(((0, 1, 3, 0), (0, 1, 0, 0), (0, 1, 0, 0)),
                         ((0, 1, 2), (1, 2, 1)))
    assert mult(chain).render() == "q + 2 + q^-1"
    flat = FloorDiagram(((0, 1, 2, 0), (0, 1, 1, 0), (0, 1, 0, 0)),
                        ((0, 1, 1), (1, 2, 1)))
    assert mult(flat) == LaurentPoly.one()


def test_mult_two_weighted_elevators():
    # weights 2 and 3: [2]^2 [3]^2, the multiplicity of the five-floor example
    weights = FloorDiagram(((0, 1, 5, 0), (0, 1, 0, 0)), ((0, 1, 2), (0, 1, 3)))
    expected = LaurentPoly({6: 1, 4: 4, 2: 8, 0: 10, -2: 8, -4: 4, -6: 1})
    assert mult(weights) == expected


def test_codegree_and_degree():
    poly = make_delta_d(3)
    for d in enumerate_floor_diagrams(poly, 0):
        assert codegree(d) in (0, 1)
        assert codegree(d) == 1 - d.degree()
    # codegree-0 classes: weight-2 chain for g=0, parallel pair for g=1
    zero = [d for d in enumerate_floor_diagrams(poly, 0) if codegree(d) == 0]
    assert len(zero) == 1


def test_codegree_zero_characterization():
    for g in range(3):
        for d in enumerate_floor_diagrams(make_delta_d(4), g):
            if codegree(d) != 0:
                continue
            assert d.is_layered()
            a = d.n_floors
            for v, (_, _, s, t) in enumerate(d.floors):
                assert s == 0 or v == 0
                assert t == 0 or v == a - 1


def test_codegree_zero_marked_count_binomial():
    import math

    from floordiag.marking import count_markings

    for (a, b, n) in [(3, 0, 1), (4, 0, 1), (2, 2, 1), (3, 2, 1)]:
        poly = make_delta_abn(a, b, n)
        iota = lattice_stats(poly).interior
        for g in range(iota + 1):
            marked = sum(
                count_markings(d)
                for d in enumerate_floor_diagrams(poly, g, max_codeg=0)
            )
            assert marked == math.comb(iota, g), (a, b, n, g)


def test_canonical_form_identifies_relabelings():
    # the star diagram for the cubic, labelled two ways
    d1 = FloorDiagram(((0, 1, 3, 0), (0, 1, 0, 0), (0, 1, 0, 0)),
                      ((0, 1, 1), (0, 2, 1)))
    d2 = FloorDiagram(((0, 1, 3, 0), (0, 1, 0, 0), (0, 1, 0, 0)),
                      ((0, 2, 1), (0, 1, 1)))
    assert canonical_key(d1) == canonical_key(d2)


def test_automorphism_counts():
    path = FloorDiagram(((0, 1, 4, 0), (0, 1, 0, 0), (0, 1, 0, 0)),
                        ((0, 1, 3), (1, 2, 2)))
    assert automorphism_count(path) == 1
    unequal_pair = FloorDiagram(((0, 2, 4, 0), (0, 2, 0, 0)), ((0, 1, 1), (0, 1, 3)))
    assert automorphism_count(unequal_pair) == 1
    equal_pair = FloorDiagram(((0, 2, 2, 0), (0, 2, 0, 0)), ((0, 1, 1), (0, 1, 1)))
    assert automorphism_count(equal_pair) == 2
    star = FloorDiagram(((0, 1, 3, 0), (0, 1, 0, 0), (0, 1, 0, 0)),
                        ((0, 1, 1), (0, 2, 1)))
    assert len(vertex_automorphisms(star)) == 2


def test_min_floor_codegree_bound():
    # constant divergence n with k minimal floors bounds codegree from below
    for (a, b, n) in [(3, 0, 1), (4, 0, 1), (3, 2, 1), (3, 1, 2)]:
        poly = make_delta_abn(a, b, n)
        for g in range(3):
            for d in enumerate_floor_diagrams(poly, g):
                minimal = [
                    v for v in range(d.n_floors)
                    if not any(j == v for _, j, _ in d.elevators)
                ]
                k = len(minimal)
                sources = sum(f[2] for f in d.floors)
                bound = (k - 1) * (sources - n * k // 2)
                assert codegree(d) >= bound


def test_op_A_minus_source_merge():
    # sliding a weight-1 source one floor down drops the codegree by 1
    d = FloorDiagram(((0, 1, 2, 0), (0, 1, 1, 0), (0, 1, 0, 0)),
                     ((0, 1, 1), (1, 2, 1)))
    before = codegree(d)
    after = op_A_minus(d, 0, ("src", 1, 0))
    assert before - codegree(after) == 1
    assert after.newton_polygon() == d.newton_polygon()
    assert after.genus() == d.genus()


def test_op_A_plus_weighted_drop():
    # find a diagram with e1 from v1 to v2 and a weight-2 elevator from v1
    # skipping past v2; the slide drops the codegree by that weight
    hits = 0
    for g in (1, 2):
        for d in enumerate_floor_diagrams(make_delta_abn(3, 0, 3), g):
            for k1, (i1, j1, _) in enumerate(d.elevators):
                for k2, (i2, j2, w2) in enumerate(d.elevators):
                    if k1 == k2 or i2 != i1 or j2 <= j1 or w2 != 2:
                        continue
                    after = op_A_plus(d, k1, ("elev", k2, 0))
                    assert codegree(d) - codegree(after) == 2
                    assert after.genus() == d.genus()
                    assert after.newton_polygon() == d.newton_polygon()
                    hits += 1
    assert hits > 0


def test_op_B_l_drop():
    # general polygon with l labels -2 below 0: swapping drops codegree by 2
    poly = HTransversePolygon((-2, 0), (0, 2), 4, 0)
    diagrams = enumerate_floor_diagrams(poly, 0)
    cand = [
        d for d in diagrams
        if d.floors[0][0] == -2 and d.floors[1][0] == 0
    ]
    assert cand
    d = cand[0]
    after = op_B_l(d, 0, 1)
    assert codegree(d) - codegree(after) == 2
    assert after.newton_polygon() == d.newton_polygon()


def test_op_B_r_drop():
    poly = HTransversePolygon((0, 0), (2, 0), 4, 2)
    diagrams = enumerate_floor_diagrams(poly, 0)
    cand = [
        d for d in diagrams
        if d.floors[0][1] == 2 and d.floors[1][1] == 0
    ]
    assert cand
    after = op_B_r(cand[0], 0, 1)
    assert codegree(cand[0]) - codegree(after) == 2


def test_op_errors_on_missing_configuration():
    chain = FloorDiagram(((0, 1, 3, 0), (0, 1, 0, 0), (0, 1, 0, 0)),
                         ((0, 1, 2), (1, 2, 1)))
    with pytest.raises(ValueError):
        op_A_plus(chain, 0, ("elev", 1, 0))  # e2 adjacent to v2
    with pytest.raises(ValueError):
        op_B_l(chain, 0, 1)  # equal l labels


def test_json_roundtrip():
    d = enumerate_floor_diagrams(make_delta_d(3), 0)[0]
    assert FloorDiagram.from_json(d.to_json()) == d


def test_determinism_and_jobs():
    poly = make_delta_d(4)
    seq = enumerate_floor_diagrams(poly, 0)
    par = enumerate_floor_diagrams(poly, 0, jobs=2)
    assert [d.key() for d in seq] == [d.key() for d in par]
