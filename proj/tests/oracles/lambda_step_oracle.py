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


"""Dense-matrix reference for one Lambda propagation step on six spins.

Uses the intermediate-step pulse from an adaptive integration of the
r-dynamics, midpoint-sampled over 2000 slices, and scipy's expm. Prints the
Lambda_1 -> Lambda_2 overlap in both evolution conventions. The value is
frozen in tests/test_chain_simulator.cpp.
"""

import numpy as np
from scipy.integrate import solve_ivp
from scipy.linalg import expm

S = 1 / np.sqrt(2)
F, TAU = 1.237698115, 1.269127187
N = 6

X = np.array([[0, 1], [1, 0]]) / 2
Y = np.array([[0, -1j], [1j, 0]]) / 2
Z = np.diag([0.5, -0.5])
AX = {"x": X, "y": Y, "z": Z}


def rhs(t, r):
    c, s = np.cos(F * t), np.sin(F * t)
    return [-c * r[1], c * r[0] - s * r[2], s * r[1]]


SOL = solve_ivp(rhs, [0, TAU], [S, S, 0], rtol=1e-12, atol=1e-13, dense_output=True)


def u_of(t):
    r = SOL.sol(t)
    th = F * t
    return F + (r[0] * np.sin(th) + r[2] * np.cos(th)) / r[1]


def op(factors):
    m = np.array([[1.0]])
    for s in range(1, N + 1):
        m = np.kron(m, factors.get(s, np.eye(2)))
    return m


def term(c, spec):
    return c * op({int(k[0]): AX[k[1]] for k in spec.split()})


def lam(k):
    return 0.5 * (term(4, f"{k}z {k+1}y {k+2}x") + term(8, f"{k}z {k+1}y {k+2}y {k+3}z")
                  + term(2, f"{k+1}x {k+2}x") + term(4, f"{k+1}x {k+2}y {k+3}z"))


def fid(a, b):
    return np.real(np.trace(a.conj().T @ b)) / np.linalg.norm(a) / np.linalg.norm(b)


if __name__ == "__main__":
    hc = sum(2 * op({m: Z, m + 1: Z}) for m in range(1, N))
    hd = op({2: Y}) + op({4: Y})
    slices = 2000
    dt = TAU / slices
    u = np.eye(2**N, dtype=complex)
    for i in range(slices):
        u = expm(-1j * (hc + u_of((i + 0.5) * dt) * hd) * dt) @ u
    l1, l2 = lam(1), lam(2)
    print(f"rho -> U rho U^dag: {fid(u @ l1 @ u.conj().T, l2):.8f}")
    print(f"O -> U^dag O U:     {fid(u.conj().T @ l1 @ u, l2):.8f}")
