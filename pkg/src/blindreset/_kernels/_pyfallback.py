"""Pure-Python twin of the compiled kernels.

Arithmetic is written gate-by-gate with scalar complex operations in the same
evaluation order as the Cython module so both paths agree to the last bit on
finite inputs.
"""

from __future__ import annotations

from math import cos, sin, sqrt

import numpy as np

COMPILED = False

# 2x2 matrices travel as (a, b, c, d) = [[a, b], [c, d]].


def _rotation(axis: int, half: float):
    c = cos(half)
    s = sin(half)
    if axis == 0:  # X
        return complex(c, 0.0), complex(0.0, -s), complex(0.0, -s), complex(c, 0.0)
    if axis == 1:  # Y
        return complex(c, 0.0), complex(-s, 0.0), complex(s, 0.0), complex(c, 0.0)
    return complex(c, -s), complex(0.0, 0.0), complex(0.0, 0.0), complex(c, s)  # Z


def _compose(axes, angles, scale: float):
    a, b, c, d = complex(1.0), complex(0.0), complex(0.0), complex(1.0)
    for i in range(len(axes)):
        half = 0.5 * scale * angles[i]
        ga, gb, gc, gd = _rotation(axes[i], half)
        # gate acts after the accumulated product: M <- G @ M
        na = ga * a + gb * c
        nb = ga * b + gb * d
        nc = gc * a + gd * c
        nd = gc * b + gd * d
        a, b, c, d = na, nb, nc, nd
    return a, b, c, d


def _double(b):
    ba, bb, bc, bd = b
    return (
        ba * ba + bb * bc,
        ba * bb + bb * bd,
        bc * ba + bd * bc,
        bc * bb + bd * bd,
    )


def _residual(u, r) -> float:
    ua, ub, uc, ud = u
    ra, rb, rc, rd = r
    va = ra * ua + rb * uc
    vb = ra * ub + rb * ud
    vc = rc * ua + rd * uc
    vd = rc * ub + rd * ud
    va -= 1.0
    vd -= 1.0
    norm_sq = (
        va.real * va.real + va.imag * va.imag
        + vb.real * vb.real + vb.imag * vb.imag
        + vc.real * vc.real + vc.imag * vc.imag
        + vd.real * vd.real + vd.imag * vd.imag
    )
    return 0.5 * sqrt(norm_sq)


def compose_rotations(axes, angles, scale: float = 1.0) -> np.ndarray:
    """Product G_L ... G_1 with every angle multiplied by `scale`."""
    a, b, c, d = _compose(axes, angles, scale)
    return np.array([[a, b], [c, d]], dtype=complex)


def reset_residual(axes, angles, lam: float) -> float:
    """Frobenius residual ||R(lam) U - I||_F / 2 for the doubled scaled block."""
    u = _compose(axes, angles, 1.0)
    r = _double(_compose(axes, angles, lam))
    return _residual(u, r)


def lambda_residuals(axes, angles, lams) -> np.ndarray:
    """Residual at every scale factor in `lams` (base unitary computed once)."""
    u = _compose(axes, angles, 1.0)
    out = np.empty(len(lams), dtype=float)
    for k in range(len(lams)):
        r = _double(_compose(axes, angles, lams[k]))
        out[k] = _residual(u, r)
    return out


# ---------------------------------------------------------------------------
# Space-time defect matching on the 1-D stabilizer chain.
#
# Each defect is matched to another defect (cost = Manhattan distance) or to
# the nearer chain boundary (cost = distance past that end; either end may
# absorb any number of defects).  A pairing is never kept when sending both
# endpoints to their boundaries is at least as cheap, which bounds how far
# apart matched defects can sit in time and keeps the open frontier of the
# exact sweep DP small.

_OPEN_CAP = 16  # beyond this the oldest open defect is flushed to its boundary


def _boundary(x: int, d: int):
    left = x + 1
    right = d - 1 - x
    if left <= right:
        return left, -1
    return right, -2


def match_defects(times, xs, d: int):
    """Minimum-weight pairing of syndrome-change defects.

    `times`/`xs` list defect coordinates sorted by (time, position); `d` is the
    code distance (positions run 0..d-2).  Returns (total_weight, partners)
    where partners[i] is the matched defect index, -1 for the left boundary or
    -2 for the right boundary.
    """
    n = len(times)
    partners = np.full(n, -3, dtype=np.int64)
    if n == 0:
        return 0, partners
    t = [int(v) for v in times]
    x = [int(v) for v in xs]
    bcost = [0] * n
    bside = [0] * n
    for i in range(n):
        bcost[i], bside[i] = _boundary(x[i], d)
    max_b = max(bcost)

    # layers[i]: open-tuple -> (cost, parent_key, action) after placing defect i.
    # Actions: ("b", flushed) boundary, ("p", j, flushed) pair with j,
    #          ("o", flushed) left open.  Flushed defects go to their boundary.
    states = {(): (0, None, None)}
    layers = []
    for i in range(n):
        nxt = {}

        def push(key, cost, parent, action):
            cur = nxt.get(key)
            if cur is None or cost < cur[0]:
                nxt[key] = (cost, parent, action)

        for open_key in sorted(states):
            cost = states[open_key][0]
            open_list = []
            flushed = []
            # j can never pair once every later defect is at least
            # bcost[j] + max_b away (boundary pair is then no worse)
            for j in open_key:
                if t[i] - t[j] >= bcost[j] + max_b:
                    cost += bcost[j]
                    flushed.append(j)
                else:
                    open_list.append(j)
            while len(open_list) > _OPEN_CAP:
                j = open_list.pop(0)
                cost += bcost[j]
                flushed.append(j)
            flushed = tuple(flushed)
            base = tuple(open_list)
            push(base, cost + bcost[i], open_key, ("b", flushed))
            for j in open_list:
                w = abs(t[i] - t[j]) + abs(x[i] - x[j])
                if w < bcost[i] + bcost[j]:
                    key = tuple(k for k in open_list if k != j)
                    push(key, cost + w, open_key, ("p", j, flushed))
            push(base + (i,), cost, open_key, ("o", flushed))
        layers.append(nxt)
        states = nxt

    best_key, best_cost = None, None
    for key in sorted(states):
        total = states[key][0] + sum(bcost[j] for j in key)
        if best_cost is None or total < best_cost:
            best_key, best_cost = key, total
    for j in best_key:
        partners[j] = bside[j]

    key = best_key
    for i in range(n - 1, -1, -1):
        _, parent, action = layers[i][key]
        if action[0] == "b":
            partners[i] = bside[i]
            flushed = action[1]
        elif action[0] == "p":
            j = action[1]
            partners[i] = j
            partners[j] = i
            flushed = action[2]
        else:
            flushed = action[1]
        for j in flushed:
            partners[j] = bside[j]
        key = parent
    return best_cost, partners
