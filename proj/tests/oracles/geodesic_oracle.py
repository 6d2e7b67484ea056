# Copyright 2026 The isinggeo Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#     http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent reference values for the geodesic blocks.

Integrates the r-dynamics with an adaptive scipy integrator (not the
library's fixed-step RK4) and locates f by minimizing the first-approach miss.
The printed numbers are frozen in tests/test_geodesic_solver.cpp.
"""

import numpy as np
from scipy.integrate import solve_ivp
from scipy.optimize import minimize_scalar

S = 1 / np.sqrt(2)


def rhs(t, r, f):
    c, s = np.cos(f * t), np.sin(f * t)
    return [-c * r[1], c * r[0] - s * r[2], s * r[1]]


def first_approach(f, r0, target, horizon=3 * np.pi):
    ts = np.linspace(0, horizon, 60001)
    sol = solve_ivp(rhs, [0, horizon], r0, args=(f,), rtol=1e-12, atol=1e-13, t_eval=ts)
    d = np.linalg.norm(sol.y.T - target, axis=1)
    for i in range(1, len(ts) - 1):
        if d[i] <= d[i - 1] and d[i] <= d[i + 1] and d[i] < 0.25:
            res = minimize_scalar(
                lambda t: np.linalg.norm(
                    solve_ivp(rhs, [0, t], r0, args=(f,), rtol=1e-12, atol=1e-13).y[:, -1] - target),
                bounds=(ts[i - 1], ts[i + 1]), method="bounded", options={"xatol": 1e-12})
            return res.x, res.fun
    return np.nan, np.inf


def solve(r0, target, lo, hi):
    res = minimize_scalar(lambda f: first_approach(f, r0, target)[1], bounds=(lo, hi), method="bounded",
                          options={"xatol": 1e-11})
    tau, miss = first_approach(res.x, r0, target)
    return res.x, tau, miss


if __name__ == "__main__":
    for name, r0, tgt, lo, hi in [("first", [1, 0, 0], [0, S, S], 0.3, 0.8),
                                  ("intermediate", [S, S, 0], [0, S, S], 1.0, 1.5)]:
        f, tau, miss = solve(np.array(r0, float), np.array(tgt), lo, hi)
        print(f"{name}: f={f:.9f} tau={tau:.9f} miss={miss:.2e}")
