"""Hand-transcribed Zariski decompositions of A - tC for the S_n models.

Each entry gives the breakpoints and, for a given t, the expected positive
and negative parts P(t), N(t) as {curve: coefficient}.  Used as an oracle independent
of the engine's support search.
"""

from __future__ import annotations

from fractions import Fraction as F

from deltacert.family import build_base, build_blowup_ow, build_enlarged


def _combo(**kw):
    return {k: F(v) for k, v in kw.items() if v}


def _minus(D, N):
    out = dict(D)
    for k, v in N.items():
        out[k] = out.get(k, F(0)) - v
    return out


def L_xy(n, t):
    N = _combo(R_0=(4 * t - 3) / 2, R_1=(4 * t - 3) / 2) if t >= F(3, 4) else {}
    return _minus({"L_xy": F(3, 2) - t, "R_0": F(3, 2), "R_1": F(3, 2)}, N), N


def R_i(i):
    j = 1 - i

    def form(n, t):
        N = {}
        if t >= F(3, 4 * n):
            c = (4 * n * t - 3) / F(2 * (2 * n - 1))
            N = _combo(**{"L_xy": c, f"R_{j}": c})
        return _minus({"L_xy": F(3, 2), f"R_{i}": F(3, 2) - t, f"R_{j}": F(3, 2)}, N), N

    return form


def R(n, t):
    # polarization written as (3/4)(L_xy + R)
    N = {}
    if t >= F(3, 2 * (4 * n + 1)):
        N = _combo(L_xy=(2 * (4 * n + 1) * t - 3) / F(2 * (4 * n - 1)))
    return _minus({"L_xy": F(3, 4), "R": F(3, 4) - t}, N), N


def F_exc(n, t):
    c = F(3 * (2 * n + 1), 2 * (4 * n + 1))
    if t <= F(3, 4 * (4 * n + 1)):
        return {"L_hat": F(3, 2), "R_hat_0": F(3, 2), "R_hat_1": F(3, 2), "F": c - t}, {}
    k = 2 * t - F(3, 2 * (4 * n + 1))
    P = {"L_hat": 2 * (c - t), "R_hat_0": 2 * (c - t), "R_hat_1": 2 * (c - t), "F": c - t}
    return P, {"L_hat": k, "R_hat_0": k, "R_hat_1": k}


def W(n, t):
    return {"L_xy": F(3, 2), "R_0": F(3, 2), "R_1": F(3, 2), "W": -t}, {}


#: curve -> (model builder, form, breakpoints(n))
FORMS = {
    "L_xy": (build_base, L_xy, lambda n: [F(0), F(3, 4), F(3, 2)]),
    "R_0": (build_base, R_i(0), lambda n: [F(0), F(3, 4 * n), F(3, 2)]),
    "R_1": (build_base, R_i(1), lambda n: [F(0), F(3, 4 * n), F(3, 2)]),
    "R": (build_enlarged, R, lambda n: [F(0), F(3, 2 * (4 * n + 1)), F(3, 4)]),
    "F": (build_blowup_ow, F_exc,
          lambda n: [F(0), F(3, 4 * (4 * n + 1)), F(3 * (2 * n + 1), 2 * (4 * n + 1))]),
    "W": (build_base, W, lambda n: [F(0), F(3, 2 * (4 * n + 1))]),
}
