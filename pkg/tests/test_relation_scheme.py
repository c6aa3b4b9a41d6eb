"""The concrete 4-class scheme as a brute-force counting oracle."""

import numpy as np
import pytest

from schemeforge.relation_scheme import (NotHemisystem, RelationScheme,
                                         neighbors, pair_set,
                                         scheme_from_hemisystem,
                                         verify_scheme)
from schemeforge.geometry import Hemisystem


def test_requires_a_real_hemisystem(hermitian_gq, hemisystem):
    damaged = Hemisystem(hemisystem.lines[1:])
    with pytest.raises(NotHemisystem) as err:
        scheme_from_hemisystem(hermitian_gq, damaged)
    assert str(err.value)


def test_relation_table_structure(scheme_t3):
    rel = scheme_t3.rel
    assert scheme_t3.size == 112
    assert scheme_t3.classes == 5
    assert (rel == rel.T).all()
    assert (np.diag(rel) == 0).all()
    off = rel[~np.eye(112, dtype=bool)]
    assert off.min() >= 1 and off.max() <= 4


def test_counted_valencies(scheme_t3):
    counted = verify_scheme(scheme_t3)
    assert counted.consistency
    assert counted.witness is None
    assert tuple(counted.valencies) == (1, 20, 10, 36, 45)


def test_counted_tensor_matches_the_tables(scheme_t3, params_t3):
    counted = verify_scheme(scheme_t3)
    for k in range(5):
        for i in range(5):
            for j in range(5):
                assert counted.p[k][i][j] == params_t3.p[k][i][j], (k, i, j)


def test_neighbor_sets_partition(scheme_t3):
    for x in (0, 17, 111):
        sets = [neighbors(scheme_t3, x, i) for i in range(5)]
        assert sets[0] == (x,)
        assert sorted(z for s in sets for z in s) == list(range(112))
    assert len(neighbors(scheme_t3, 0, 2)) == 10
    assert len(neighbors(scheme_t3, 0, 1)) + len(
        neighbors(scheme_t3, 0, 2)) == 30


def test_pair_sets(scheme_t3):
    x = 0
    y = neighbors(scheme_t3, x, 2)[0]
    assert len(pair_set(scheme_t3, x, y, 1, 1)) == 2
    assert len(pair_set(scheme_t3, x, y, 2, 2)) == 0
    assert pair_set(scheme_t3, x, y, 1, 2) \
        == pair_set(scheme_t3, y, x, 2, 1)
    with pytest.raises(ValueError):
        pair_set(scheme_t3, x, x, 1, 1)


def test_pair_set_sizes_match_intersection_numbers(scheme_t3, params_t3):
    import random
    rng = random.Random(1)
    for _ in range(25):
        x, y = rng.sample(range(112), 2)
        k = int(scheme_t3.rel[x][y])
        i, j = rng.randrange(5), rng.randrange(5)
        assert len(pair_set(scheme_t3, x, y, i, j)) == params_t3.p[k][i][j]


def test_flipped_entry_is_detected(scheme_t3):
    rel = scheme_t3.rel.copy()
    a, b = 0, int(np.flatnonzero(rel[0] == 1)[0])
    rel[a][b] = 2   # asymmetric now
    broken = RelationScheme(size=112, classes=5, rel=rel)
    counted = verify_scheme(broken)
    assert not counted.consistency
    assert counted.witness


def test_symmetric_flip_breaks_constancy(scheme_t3):
    rel = scheme_t3.rel.copy()
    a, b = 0, int(np.flatnonzero(rel[0] == 1)[0])
    rel[a][b] = rel[b][a] = 2
    broken = RelationScheme(size=112, classes=5, rel=rel)
    counted = verify_scheme(broken)
    assert not counted.consistency
    assert counted.witness


def test_complete_graph_single_class_scheme():
    n = 6
    rel = np.ones((n, n), dtype=np.int8) - np.eye(n, dtype=np.int8)
    sch = RelationScheme(size=n, classes=2, rel=rel)
    counted = verify_scheme(sch)
    assert counted.consistency
    assert counted.p[1][1][1] == n - 2
