"""Regenerates hardy_q_half_30.json with 50-digit arithmetic.

Points 1 - 2^-n, n = 1..30, in the Hardy space. The normalized Gram entry
of real points a, b is sqrt((1 - a^2)(1 - b^2)) / (1 - a b).
"""
import json

import mpmath as mp

mp.mp.dps = 50
COUNT = 30
TAU = mp.mpf(1) / 2

pts = [1 - mp.mpf(2) ** -n for n in range(1, COUNT + 1)]


def gram(a, b):
    return mp.sqrt((1 - a * a) * (1 - b * b)) / (1 - a * b)


g = [[gram(a, b) for b in pts] for a in pts]

enemies = [[j for j in range(COUNT) if j != i and g[i][j] ** 2 >= TAU] for i in range(COUNT)]

assignment = []
classes = []
for v in range(COUNT):
    blocked = {assignment[u] for u in enemies[v] if u < v}
    k = next((k for k in range(len(classes)) if k not in blocked), len(classes))
    if k == len(classes):
        classes.append([])
    classes[k].append(v)
    assignment.append(k)

out = {
    "points": {"type": "radial_exponential", "q": 0.5, "theta": 0.0, "count": COUNT},
    "tau": 0.5,
    "n": COUNT,
    "max_degree": max(len(e) for e in enemies),
    "class_count": len(classes),
    "classes": [],
}
for k, members in enumerate(classes):
    sub = mp.matrix([[g[i][j] for j in members] for i in members])
    gamma = max((g[i][j] for i in members for j in members if i != j), default=mp.mpf(0))
    eig = mp.eigsy(sub, eigvals_only=True)
    out["classes"].append(
        {
            "id": k + 1,
            "members": [m + 1 for m in members],
            "gamma": float(gamma),
            "lambda_min": float(min(eig)),
            "lambda_max": float(max(eig)),
        }
    )

with open(__file__.replace(".py", ".json"), "w") as fh:
    json.dump(out, fh, indent=2)
    fh.write("\n")
