"""Shared fixture complexes, constructed directly through the API.

FIX1  hexagon circle with the order-3 rotation
FIX2  hexagon circle with the reflection through two opposite vertices
FIX3  7-vertex torus triangulation with the order-7 translation
FIX4p periodic line (vertices Z) under translation by 2
FIX5  two points swapped by Z/2 (a G-set, not a complex)
FIX6  octahedron 2-sphere with the antipodal involution
"""

import pytest

from equihodge.groups import FiniteGroup, FreeAbelianGroup
from equihodge.algebras import build_function_algebra
from equihodge.complexes import (
    FiniteEquivariantComplex,
    PeriodicEquivariantComplex,
    vertex_maps_from_generators,
)

HEX_EDGES = [(i, (i + 1) % 6) for i in range(6)]

TORUS_TRIANGLES = [((i) % 7, (i + 1) % 7, (i + 3) % 7) for i in range(7)] + [
    ((i) % 7, (i + 2) % 7, (i + 3) % 7) for i in range(7)
]
TORUS_EDGES = sorted({tuple(sorted((t[a], t[b]))) for t in TORUS_TRIANGLES
                      for a in range(3) for b in range(a + 1, 3)})

OCTA_TRIANGLES = [(a, b, c) for a in (0, 3) for b in (1, 4) for c in (2, 5)]
OCTA_EDGES = sorted({tuple(sorted((t[a], t[b]))) for t in OCTA_TRIANGLES
                     for a in range(3) for b in range(a + 1, 3)})


def make_fix1():
    g = FiniteGroup.cyclic(3)
    maps = vertex_maps_from_generators(g, {1: [(v + 2) % 6 for v in range(6)]}, 6)
    return FiniteEquivariantComplex(6, HEX_EDGES, g, maps)


def make_fix2():
    g = FiniteGroup.cyclic(2)
    maps = vertex_maps_from_generators(g, {1: [(-v) % 6 for v in range(6)]}, 6)
    return FiniteEquivariantComplex(6, HEX_EDGES, g, maps)


def make_fix3():
    g = FiniteGroup.cyclic(7)
    maps = vertex_maps_from_generators(g, {1: [(v + 1) % 7 for v in range(7)]}, 7)
    return FiniteEquivariantComplex(7, TORUS_EDGES + TORUS_TRIANGLES, g, maps)


def make_fix4p():
    g = FreeAbelianGroup(1)
    cells = {
        1: [
            ("e0", (((0), (0,)), ((1), (0,)))),
            ("e1", (((0), (1,)), ((1), (0,)))),
        ]
    }
    return PeriodicEquivariantComplex(g, ["v0", "v1"], cells)


def make_fix5_algebra():
    g = FiniteGroup.cyclic(2)
    return g, build_function_algebra(g, {0: [0, 1], 1: [1, 0]}, point_names=["a", "b"])


def make_fix6():
    g = FiniteGroup.cyclic(2)
    maps = vertex_maps_from_generators(g, {1: [(v + 3) % 6 for v in range(6)]}, 6)
    return FiniteEquivariantComplex(6, OCTA_EDGES + OCTA_TRIANGLES, g, maps)


@pytest.fixture(scope="session")
def fix1():
    return make_fix1()


@pytest.fixture(scope="session")
def fix2():
    return make_fix2()


@pytest.fixture(scope="session")
def fix3():
    return make_fix3()


@pytest.fixture(scope="session")
def fix4p():
    return make_fix4p()


@pytest.fixture(scope="session")
def fix6():
    return make_fix6()
