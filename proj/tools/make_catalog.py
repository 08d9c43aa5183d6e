#!/usr/bin/env python3
"""Regenerates data/default_catalog.json.

34 convex prisms seen from above, 3 to 8 sides, circumscribed radii between
15 and 35 mm. Shapes are regular polygons with jittered vertex angles and
radii, plus a few elongated blocks; every outline is checked for strict
convexity before it is written.
"""

import argparse
import json
import math
import random

SIDES = [3] * 6 + [4] * 7 + [5] * 6 + [6] * 6 + [7] * 4 + [8] * 5
R_MIN, R_MAX = 0.015, 0.035


def strictly_convex(pts):
    n = len(pts)
    for i in range(n):
        ax, ay = pts[i]
        bx, by = pts[(i + 1) % n]
        cx, cy = pts[(i + 2) % n]
        if (bx - ax) * (cy - by) - (by - ay) * (cx - bx) <= 1e-7:
            return False
    return True


def centered(pts):
    a = cx = cy = 0.0
    n = len(pts)
    for i in range(n):
        x0, y0 = pts[i]
        x1, y1 = pts[(i + 1) % n]
        c = x0 * y1 - x1 * y0
        a += c
        cx += (x0 + x1) * c
        cy += (y0 + y1) * c
    cx /= 3.0 * a
    cy /= 3.0 * a
    return [(x - cx, y - cy) for x, y in pts]


def circumradius(pts):
    return max(math.hypot(x, y) for x, y in pts)


def block(rng, radius):
    aspect = rng.uniform(1.2, 2.2)
    half_diag_angle = math.atan(1.0 / aspect)
    w = radius * math.cos(half_diag_angle)
    h = radius * math.sin(half_diag_angle)
    return [(-w, -h), (w, -h), (w, h), (-w, h)]


def jittered(rng, sides, radius):
    while True:
        step = 2.0 * math.pi / sides
        pts = []
        for k in range(sides):
            ang = k * step + rng.uniform(-0.12, 0.12) * step
            r = radius * rng.uniform(0.9, 1.0)
            pts.append((r * math.cos(ang), r * math.sin(ang)))
        if strictly_convex(pts):
            return pts


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--seed", type=int, default=7)
    parser.add_argument("--out", default="data/default_catalog.json")
    args = parser.parse_args()

    rng = random.Random(args.seed)
    shapes = []
    counts = {}
    for sides in SIDES:
        # Skew toward small parts: most pairs of them fit the 85 mm stroke.
        radius = R_MIN + (R_MAX - R_MIN) * rng.random() ** 1.6
        if sides == 4 and counts.get(4, 0) % 2 == 0:
            pts = block(rng, radius)
        else:
            pts = jittered(rng, sides, radius)
        pts = centered(pts)
        scale = min(1.0, R_MAX / circumradius(pts))
        pts = [(x * scale, y * scale) for x, y in pts]
        counts[sides] = counts.get(sides, 0) + 1
        name = f"{['', '', '', 'tri', 'quad', 'pent', 'hex', 'hept', 'oct'][sides]}_{counts[sides]:02d}"
        shapes.append({"name": name, "vertices": [[round(x, 6), round(y, 6)] for x, y in pts]})

    doc = {"schema": "push_mog_catalog/1", "shapes": shapes}
    with open(args.out, "w") as f:
        json.dump(doc, f, indent=2)
        f.write("\n")


if __name__ == "__main__":
    main()
