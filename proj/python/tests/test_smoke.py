# Copyright 2026 The steerlp Authors
#
# Licensed under the Apache License, Version 2.0 (the License);
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
# http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an AS IS BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.
import itertools
import math

import numpy as np
import pytest
from scipy.optimize import linprog

import steerlp

PAULI = [np.array([[0, 1], [1, 0]], complex), np.array([[0, -1j], [1j, 0]]), np.array([[1, 0], [0, -1]], complex)]


def bloch(rho):
    return np.array([np.trace(rho @ p).real for p in PAULI])


def scipy_robustness(meas, poly):
    """Same LP posed independently with real Bloch coordinates and scipy's HiGHS."""
    m, k = meas.shape[:2]
    verts = np.array([np.concatenate(([1.0], bloch(v))) for v in poly.vertices])  # (n, 4) ~ (Tr, Tr sigma_i)
    n = len(verts)
    nvar = 1 + n * m * k
    col = lambda lam, x, a: 1 + lam * m * k + x * k + a
    rows, rhs = [], []
    for x in range(m):
        for a in range(k):
            el = meas[x, a]
            slope = np.concatenate(([np.trace(el).real], bloch(el))) - np.trace(el).real / 2 * np.array([2, 0, 0, 0])
            offset = np.trace(el).real / 2 * np.array([2, 0, 0, 0])
            for j in range(4):
                row = np.zeros(nvar)
                row[0] = -slope[j] / 2
                for lam in range(n):
                    row[col(lam, x, a)] = verts[lam, j] / 2
                rows.append(row)
                rhs.append(offset[j] / 2)
    for x in range(1, m):
        for lam in range(n):
            row = np.zeros(nvar)
            for a in range(k):
                row[col(lam, x, a)] += 1
                row[col(lam, 0, a)] -= 1
            rows.append(row)
            rhs.append(0.0)
    c = np.zeros(nvar)
    c[0] = -1
    res = linprog(c, A_eq=np.array(rows), b_eq=np.array(rhs), bounds=[(0, None)] * nvar, method="highs")
    assert res.status == 0
    return -res.fun


def test_version():
    assert steerlp.__version__


def test_octahedron_and_mub():
    oct_ = steerlp.analyze(steerlp.rational_pure_states(2, 2))
    assert len(oct_) == 6
    assert abs(oct_.shrinking_factor - 1 / math.sqrt(3)) < 1e-12
    assert abs(steerlp.mub_shrinking_factor(3) - 0.25) < 1e-9


def test_lp_matches_scipy():
    poly = steerlp.analyze(steerlp.rational_pure_states(2, 3))
    for meas in (steerlp.fibonacci_qubit(4), steerlp.random_povm(3, 2, 3, 2)):
        ours = steerlp.measurement_robustness(meas, poly)
        assert ours["status"] == "optimal"
        assert abs(ours["eta_tilde"] - scipy_robustness(meas, poly)) < 1e-6


def test_oracle_bracketed():
    meas = steerlp.fibonacci_qubit(10)
    exact = steerlp.exact_robustness(meas)["eta"]
    assert abs(exact - 0.5193) < 5e-4
    res = steerlp.measurement_robustness(meas, steerlp.analyze(steerlp.sphere_polytope("icosphere", 2)))
    assert res["lower"] <= exact <= res["upper"]


def test_planar_bound_and_shapes():
    angles = [0.0, math.pi / 3, 2 * math.pi / 3]
    meas = steerlp.planar_measurements(angles)
    assert meas.shape == (3, 2, 2, 2)
    assert abs(steerlp.planar_bound(angles) - 2 / 3) < 1e-15
    assert steerlp.validate_measurements(meas)["pass"]


def test_partial_trace():
    rng = np.random.default_rng(0)
    g = rng.normal(size=(6, 6)) + 1j * rng.normal(size=(6, 6))
    rho = g @ g.conj().T
    expect = np.einsum("ibic->bc", rho.reshape(2, 3, 2, 3))
    assert np.allclose(steerlp.partial_trace_a(rho, 2, 3), expect)


def test_errors():
    with pytest.raises(steerlp.ValidationError):
        steerlp.fibonacci_qubit(1)
    with pytest.raises(steerlp.CapExceededError):
        steerlp.exact_robustness(steerlp.fibonacci_qubit(21))
    with pytest.raises(steerlp.IoError):
        steerlp.load_polytope("/nonexistent/p.json")
    assert issubclass(steerlp.ValidationError, steerlp.SteerlpError)


def test_state_bounds():
    phi = np.zeros((4, 4), complex)
    for i, j in itertools.product((0, 3), repeat=2):
        phi[i, j] = 0.5
    inner = steerlp.analyze(steerlp.sphere_polytope("icosphere", 2))
    meas = steerlp.fibonacci_qubit(20)
    mu = steerlp.measurement_shrinking_factor(meas)
    lo = steerlp.state_lower_bound(phi, 2, 2, meas, mu, inner)["lower"]
    up = steerlp.state_upper_bound(phi, 2, 2, meas, steerlp.outer_from_inner(inner))["upper"]
    assert lo <= 0.5 <= up
