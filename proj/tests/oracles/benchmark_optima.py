"""Offline oracle for benchmark optima on the unit cube.

Runs a scrambled-Sobol sweep (2^20 points) followed by bounded L-BFGS-B
refinement from the best sweep points, for both the maximum and the minimum.
The printed argmax / opt_value pairs are frozen into src/benchmarks/benchmarks.cpp.

    python3 tests/oracles/benchmark_optima.py
"""
import math

import numpy as np
from scipy.optimize import minimize
from scipy.stats import qmc


def branin(u):
    x1 = -5.0 + 15.0 * u[0]
    x2 = 15.0 * u[1]
    a, b, c, r, s, t = 1.0, 5.1 / (4 * math.pi**2), 5 / math.pi, 6.0, 10.0, 1 / (8 * math.pi)
    return -(a * (x2 - b * x1**2 + c * x1 - r) ** 2 + s * (1 - t) * math.cos(x1) + s)


def currin(u):
    x1, x2 = u
    lead = 1.0 - math.exp(-1.0 / (2.0 * x2)) if x2 > 0 else 1.0
    return lead * (2300 * x1**3 + 1900 * x1**2 + 2092 * x1 + 60) / (100 * x1**3 + 500 * x1**2 + 4 * x1 + 20)


H3_A = np.array([[3, 10, 30], [0.1, 10, 35], [3, 10, 30], [0.1, 10, 35]], dtype=float)
H3_P = 1e-4 * np.array([[3689, 1170, 2673], [4699, 4387, 7470], [1091, 8732, 5547], [381, 5743, 8828]], dtype=float)
H6_A = np.array(
    [[10, 3, 17, 3.5, 1.7, 8], [0.05, 10, 17, 0.1, 8, 14], [3, 3.5, 1.7, 10, 17, 8], [17, 8, 0.05, 10, 0.1, 14]],
    dtype=float,
)
H6_P = 1e-4 * np.array(
    [
        [1312, 1696, 5569, 124, 8283, 5886],
        [2329, 4135, 8307, 3736, 1004, 9991],
        [2348, 1451, 3522, 2883, 3047, 6650],
        [4047, 8828, 8732, 5743, 1091, 381],
    ],
    dtype=float,
)
ALPHA = np.array([1.0, 1.2, 3.0, 3.2])


def hartmann(A, P):
    def f(u):
        u = np.asarray(u)
        return float(np.sum(ALPHA * np.exp(-np.sum(A * (u - P) ** 2, axis=1))))

    return f


def park1(u):
    x1, x2, x3, x4 = u
    return 0.5 * (math.sqrt(x1 * x1 + (x2 + x3 * x3) * x4) - x1) + (x1 + 3 * x4) * math.exp(1 + math.sin(x3))


def park2(u):
    x1, x2, x3, x4 = u
    return 2.0 / 3.0 * math.exp(x1 + x2) - x4 * math.sin(x3) + x3


FUNCS = {
    "Branin": (branin, 2),
    "CurrinExp": (currin, 2),
    "Hartmann3": (hartmann(H3_A, H3_P), 3),
    "Park1": (park1, 4),
    "Park2": (park2, 4),
    "Hartmann6": (hartmann(H6_A, H6_P), 6),
}


def extremum(f, d, sign):
    pts = qmc.Sobol(d, scramble=True, seed=7).random_base2(20)
    vals = np.array([sign * f(p) for p in pts])
    best = None
    for i in np.argsort(-vals)[:20]:
        res = minimize(lambda u: -sign * f(u), pts[i], method="L-BFGS-B", bounds=[(0, 1)] * d,
                       options={"ftol": 1e-15, "gtol": 1e-12, "maxiter": 2000})
        x = np.clip(res.x, 0, 1)
        v = sign * f(x)
        if best is None or v > best[1]:
            best = (x, v)
    return best[0], sign * best[1]


if __name__ == "__main__":
    for name, (f, d) in FUNCS.items():
        x, v = extremum(f, d, +1)
        _, lo = extremum(f, d, -1)
        print(f"{name}: argmax={np.array2string(x, precision=17, separator=', ')} max={v:.17g} min={lo:.17g}")
