#!/usr/bin/env python3
"""CSDP-compatible driver for SDPA sparse problems.

Usage: sdpa_solve.py PROBLEM.dat-s SOLUTION

Reads an SDPA sparse problem (max tr(C X) s.t. tr(A_i X) = a_i, X psd),
solves it, and writes the solution in CSDP's layout: the dual vector y on the
first line, then "1 blk i j value" lines for Z and "2 blk i j value" lines for
X (upper triangle, 1-based). Exit status is nonzero when the solver does not
reach an optimal point.

Uses SDPA-multiprecision through the sdpap package when it is importable and
falls back to cvxopt otherwise. SDPA_SOLVE_BACKEND=cvxopt|sdpap forces one.
SDPA_SOLVE_EPS and SDPA_SOLVE_PRECISION tune the multiprecision run.
"""

import os
import re
import sys
import warnings


def read_sdpa(path):
    with open(path) as fh:
        lines = [ln for ln in fh if not ln.startswith(('"', '*'))]
    tokens = re.split(r"[\s,{}()]+", " ".join(lines).strip())
    pos = 0

    def take():
        nonlocal pos
        pos += 1
        return tokens[pos - 1]

    m = int(take())
    nblocks = int(take())
    sizes = [int(float(take())) for _ in range(nblocks)]
    rhs = [float(take()) for _ in range(m)]
    entries = []
    while pos + 4 < len(tokens) + 0 and pos < len(tokens):
        mat, blk, i, j = (int(take()) for _ in range(4))
        val = float(take())
        if i > j:
            i, j = j, i
        entries.append((mat, blk - 1, i - 1, j - 1, val))
    return m, sizes, rhs, entries


def solve_cvxopt(path):
    from cvxopt import matrix, solvers, spmatrix

    m, sizes, rhs, entries = read_sdpa(path)
    diag_blocks = [b for b, s in enumerate(sizes) if s < 0]
    dense_blocks = [b for b, s in enumerate(sizes) if s > 0]

    # Linear rows: one per diagonal entry of every diagonal block.
    lin_offset = {}
    nlin = 0
    for b in diag_blocks:
        lin_offset[b] = nlin
        nlin += -sizes[b]

    gl_i, gl_j, gl_v = [], [], []
    hl = [0.0] * nlin
    gs = {b: ([], [], []) for b in dense_blocks}
    hs = {b: [0.0] * (sizes[b] * sizes[b]) for b in dense_blocks}

    # Dual form: Z = sum_i y_i A_i - C >= 0, written as h - G y >= 0.
    for mat, b, i, j, val in entries:
        if sizes[b] < 0:
            row = lin_offset[b] + i
            if mat == 0:
                hl[row] -= val
            else:
                gl_i.append(row)
                gl_j.append(mat - 1)
                gl_v.append(-val)
            continue
        d = sizes[b]
        cells = {(i, j), (j, i)}
        for (r, c) in cells:
            idx = c * d + r
            if mat == 0:
                hs[b][idx] -= val
            else:
                gs[b][0].append(idx)
                gs[b][1].append(mat - 1)
                gs[b][2].append(-val)

    c = matrix(rhs)
    kwargs = {}
    if nlin:
        kwargs["Gl"] = spmatrix(gl_v, gl_i, gl_j, (nlin, m))
        kwargs["hl"] = matrix(hl)
    kwargs["Gs"] = [spmatrix(gs[b][2], gs[b][0], gs[b][1], (sizes[b] ** 2, m))
                    for b in dense_blocks]
    kwargs["hs"] = [matrix(hs[b], (sizes[b], sizes[b])) for b in dense_blocks]

    solvers.options["abstol"] = 1e-7
    solvers.options["reltol"] = 1e-9
    solvers.options["feastol"] = 1e-9
    solvers.options["maxiters"] = 100
    sol = solvers.sdp(c, **kwargs)

    y = [sol["x"][i] for i in range(m)]
    mats = {}
    for matno, lin, blocks in ((1, sol["sl"], sol["ss"]), (2, sol["zl"], sol["zs"])):
        for k, b in enumerate(dense_blocks):
            d = sizes[b]
            mats[matno, b] = [[blocks[k][i, j] for j in range(d)] for i in range(d)]
        for b in diag_blocks:
            mats[matno, b] = [lin[lin_offset[b] + i] for i in range(-sizes[b])]
    print("status:", sol["status"])
    print("primal objective (tr CX): %.12f" % sol["dual objective"])
    print("dual objective (a'y): %.12f" % sol["primal objective"])
    return sizes, y, mats, sol["status"] == "optimal"


def solve_sdpap(path):
    import numpy as np
    import sdpap
    from sdpap import fileio

    sizes = read_sdpa(path)[1]
    A, b, c, K, J = fileio.importsdpa(path)
    params = {
        "epsilonStar": float(os.environ.get("SDPA_SOLVE_EPS", "1e-15")),
        "epsilonDash": float(os.environ.get("SDPA_SOLVE_EPS", "1e-15")),
        "mpfPrecision": int(os.environ.get("SDPA_SOLVE_PRECISION", "128")),
        "maxIteration": 200,
        "print": "no",
    }
    # sdpap re-checks feasibility with ARPACK afterwards and warns when that
    # fails to converge; the solver's own status is what we report.
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)
        x, y, sdpapinfo, _, sdpainfo = sdpap.solve(A, b, c, K, J, params)
    x = np.asarray(x.toarray() if hasattr(x, "toarray") else x).ravel()
    y = np.asarray(y.toarray() if hasattr(y, "toarray") else y).ravel()
    z = np.asarray(c.toarray() if hasattr(c, "toarray") else c).ravel() - A.T @ y
    z = np.asarray(z).ravel()

    # importsdpa puts every diagonal block into K.l (in block order) and the
    # dense blocks into K.s.
    mats = {}
    for matno, vec in ((1, z), (2, x)):
        off = 0
        for blk, d in enumerate(sizes):
            if d < 0:
                mats[matno, blk] = list(vec[off:off - d])
                off -= d
        for blk, d in enumerate(sizes):
            if d > 0:
                mats[matno, blk] = vec[off:off + d * d].reshape(d, d).tolist()
                off += d * d
    phase = sdpainfo.get("phasevalue", sdpapinfo.get("phasevalue"))
    print("status:", phase)
    print("primal objective (tr CX): %.12f" % -sdpainfo["primalObj"])
    print("dual objective (a'y): %.12f" % -sdpainfo["dualObj"])
    return sizes, list(y), mats, phase == "pdOPT"


def write_solution(out_path, sizes, y, mats):
    with open(out_path, "w") as out:
        out.write(" ".join("%.18e" % v for v in y) + "\n")
        for matno in (1, 2):
            for b, d in enumerate(sizes):
                mat = mats[matno, b]
                if d < 0:
                    for i in range(-d):
                        if mat[i] != 0.0:
                            out.write("%d %d %d %d %.18e\n" % (matno, b + 1, i + 1, i + 1, mat[i]))
                    continue
                for i in range(d):
                    for j in range(i, d):
                        v = 0.5 * (mat[i][j] + mat[j][i])
                        if v != 0.0:
                            out.write("%d %d %d %d %.18e\n" % (matno, b + 1, i + 1, j + 1, v))


def pick_backend():
    forced = os.environ.get("SDPA_SOLVE_BACKEND")
    if forced:
        return forced
    try:
        import sdpap  # noqa: F401
    except ImportError:
        return "cvxopt"
    return "sdpap"


def main(argv):
    if len(argv) != 3:
        sys.stderr.write(__doc__)
        return 2
    backend = pick_backend()
    print("backend:", backend)
    solve = solve_sdpap if backend == "sdpap" else solve_cvxopt
    sizes, y, mats, ok = solve(argv[1])
    write_solution(argv[2], sizes, y, mats)
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main(sys.argv))
