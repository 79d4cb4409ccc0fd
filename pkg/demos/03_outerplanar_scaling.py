"""Quadratic interval DP on outerplanar graphs.

Times the solver on maximal outerplanar graphs (triangulated polygons)
and estimates the growth exponent with a log-log least-squares fit.
"""
import time

import numpy as np

from pohpp import find_outer_cycle, generate, solve_outerplanar
from pohpp.model import Graph

# The outer cycle of a fan: path 0-1-2-3 plus an apex joined to everything.
fan = Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (4, 0), (4, 1), (4, 2), (4, 3)])
cyc = find_outer_cycle(fan)
print("fan outer cycle:", cyc.order, "chords:", cyc.chords(fan))

sizes = np.array([200, 400, 800, 1600])
seconds = []
for n in sizes:
    inst = generate("outerplanar", {"n": int(n), "chord_keep": 1.0, "order_density": 0.0, "weighted": True}, seed=int(n))
    t = time.perf_counter()
    r = solve_outerplanar(inst)
    seconds.append(time.perf_counter() - t)
    print(f"n={n:5d}  m={inst.graph.m:5d}  cost={float(r.cost):9.1f}  {seconds[-1]:.3f} s")

slope, _ = np.polyfit(np.log(sizes), np.log(seconds), 1)
print(f"fitted exponent {slope:.2f} (2 means quadratic)")

# Blocks chained at cut vertices are solved one by one; both directions are tried.
chained = generate("outerplanar", {"n": 12, "blocks": 3, "order_density": 0.05}, seed=3)
print("three-block instance:", solve_outerplanar(chained))
