"""The compiled and pure-numpy kernel paths must be interchangeable: same
bits out for the same bits in, selected by the TRIPOWMIN_BACKEND variable."""

import json
import os
import subprocess
import sys

import numpy as np
import pytest

from tripowmin import _kernels
from tripowmin.geometry import CanonicalTriangle, canonicalize
from tripowmin.oracle import grid_search
from tripowmin.sampling import random_general_triangle

PROBE = r"""
import json
import numpy as np
from tripowmin import _kernels
from tripowmin.geometry import CanonicalTriangle
from tripowmin.oracle import OracleConfig, compare, grid_search, projected_gradient

tri = CanonicalTriangle(3.0, 1.0, 2.0)
gp, gv = grid_search(tri, 3.0)
pg = projected_gradient(tri, 3.0)
rep = compare(tri, 3.0)
print(json.dumps({
    "backend": _kernels.backend(),
    "grid": [float(gp[0]), float(gp[1]), float(gv)],
    "pg": [float(pg.point[0]), float(pg.point[1]), float(pg.value), int(pg.iterations)],
    "compare_passed": bool(rep.passed),
}))
"""


def run_probe(backend):
    env = dict(os.environ, TRIPOWMIN_BACKEND=backend)
    out = subprocess.run(
        [sys.executable, "-c", PROBE], env=env, capture_output=True, text=True
    )
    assert out.returncode == 0, out.stderr
    return json.loads(out.stdout)


def test_active_backend_is_reported():
    assert _kernels.backend() in ("numba", "numpy")


def test_lattice_twins_agree_bitwise():
    rng = np.random.default_rng(33)
    for _ in range(12):
        tri, _ = canonicalize(random_general_triangle(rng))
        verts = tri.vertices()
        for n in (1.0, 2.0, 4.5, 9.0):
            for m in (7, 32, 64):
                args = (
                    tri.a, tri.b, tri.c, float(n), m,
                    verts[0][0], verts[0][1],
                    verts[1][0], verts[1][1],
                    verts[2][0], verts[2][1],
                )
                loop = _kernels._lattice_best_loop(*args)
                vec = _kernels._lattice_best_numpy(*args)
                active = _kernels.lattice_best(*args)
                assert loop == vec  # identical tuples, bit for bit
                assert active == vec


def test_lattice_twins_agree_on_shrunk_windows():
    # windows produced by zooming are not in canonical position
    tri = CanonicalTriangle(3.0, 1.0, 2.0)
    w = [np.array([0.1, 0.7]), np.array([-0.4, 0.2]), np.array([0.8, 0.05])]
    args = (tri.a, tri.b, tri.c, 5.0, 64,
            w[0][0], w[0][1], w[1][0], w[1][1], w[2][0], w[2][1])
    assert _kernels._lattice_best_loop(*args) == _kernels._lattice_best_numpy(*args)


@pytest.mark.parametrize("backend", ["numpy", "numba"])
def test_forced_backend_subprocess(backend):
    got = run_probe(backend)
    assert got["backend"] == backend
    assert got["compare_passed"] is True


def test_backends_produce_identical_results():
    a = run_probe("numpy")
    b = run_probe("numba")
    assert a["grid"] == b["grid"]
    assert a["pg"] == b["pg"]


def test_auto_backend_subprocess():
    got = run_probe("auto")
    assert got["backend"] in ("numba", "numpy")


def test_unknown_backend_fails_at_import():
    env = dict(os.environ, TRIPOWMIN_BACKEND="vulkan")
    out = subprocess.run(
        [sys.executable, "-c", "import tripowmin"],
        env=env, capture_output=True, text=True,
    )
    assert out.returncode != 0
    assert "TRIPOWMIN_BACKEND" in out.stderr


def test_in_process_results_match_subprocess_of_same_backend():
    tri = CanonicalTriangle(3.0, 1.0, 2.0)
    gp, gv = grid_search(tri, 3.0)
    got = run_probe(_kernels.backend())
    assert got["grid"] == [float(gp[0]), float(gp[1]), float(gv)]
