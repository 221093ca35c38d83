# Copyright 2026 The qsdp Authors
#
# Licensed under the Apache License, Version 2.0 (the "License");
# you may not use this file except in compliance with the License.
# You may obtain a copy of the License at
#
#      http://www.apache.org/licenses/LICENSE-2.0
#
# Unless required by applicable law or agreed to in writing, software
# distributed under the License is distributed on an "AS IS" BASIS,
# WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
# See the License for the specific language governing permissions and
# limitations under the License.

"""Independent reference solve of an SDPA sparse (.dat-s) file.

Solves  min c^T x  s.t.  sum_i x_i F_i - F_0 >= 0  with cvxpy and prints a
JSON object.  When the file carries a "* qsdp objective_scale s
objective_offset o" comment, "value" is s * (c^T x) + o; otherwise it is the
SDPA objective itself.
"""

import json
import re
import sys

import numpy as np


def parse(path):
    scale, offset = 1.0, 0.0
    tokens = []
    with open(path) as fh:
        for line in fh:
            if line.startswith(("*", '"')):
                m = re.match(r"\*\s+qsdp\s+objective_scale\s+(\S+)\s+objective_offset\s+(\S+)", line)
                if m:
                    scale, offset = float(m.group(1)), float(m.group(2))
                continue
            tokens.append(re.sub(r"[,(){}]", " ", line).split())
    rows = [t for t in tokens if t]
    m = int(rows[0][0])
    nblocks = int(rows[1][0])
    sizes = [int(float(s)) for s in rows[2][:nblocks]]
    c = np.array([float(v) for v in rows[3][:m]]) if m else np.zeros(0)
    mats = [[np.zeros((abs(s), abs(s))) for s in sizes] for _ in range(m + 1)]
    for r in rows[4:]:
        k, b, i, j, v = int(r[0]), int(r[1]) - 1, int(r[2]) - 1, int(r[3]) - 1, float(r[4])
        mats[k][b][i, j] = v
        mats[k][b][j, i] = v
    return scale, offset, m, sizes, c, mats


def solve(path):
    import cvxpy as cp

    scale, offset, m, sizes, c, mats = parse(path)
    x = cp.Variable(m)
    cons = []
    for b, s in enumerate(sizes):
        expr = -mats[0][b]
        for i in range(m):
            if np.any(mats[i + 1][b]):
                expr = expr + x[i] * mats[i + 1][b]
        if s < 0:
            cons.append(cp.diag(expr) >= 0)
        else:
            cons.append(0.5 * (expr + expr.T) >> 0)
    prob = cp.Problem(cp.Minimize(c @ x), cons)
    status = None
    for solver, opts in (("CLARABEL", {}),
                         ("SCS", {"eps": 1e-9, "max_iters": 200000})):
        try:
            prob.solve(solver=solver, **opts)
            status = prob.status
            if status in ("optimal", "optimal_inaccurate"):
                return {"status": status, "solver": solver, "sdpa_objective": float(prob.value),
                        "value": scale * float(prob.value) + offset}
        except cp.error.SolverError:
            continue
    return {"status": status or "solver_error", "solver": None}


def main():
    if len(sys.argv) != 2:
        print("usage: sdpa_cvxpy.py FILE.dat-s", file=sys.stderr)
        return 2
    result = solve(sys.argv[1])
    print(json.dumps(result))
    return 0 if "value" in result else 3


if __name__ == "__main__":
    sys.exit(main())
