"""Enumerate the CS surfaces on 6, 8 and 10 vertices and tabulate them.

    python3 demos/small_surfaces.py [--classify pointed|equivariant|plain]
"""
import argparse
from collections import Counter

from csmanifolds import enumerate_cs

NAMES = {"1,0,1": "sphere", "1,2,1": "torus", "1,1+Z2,0": "Klein bottle"}

ap = argparse.ArgumentParser()
ap.add_argument("--classify", default="pointed")
args = ap.parse_args()

for m in (3, 4, 5):
    run = enumerate_cs(m, classify=args.classify)
    kinds = Counter(NAMES.get(str(r.homology), str(r.homology)) for r in run)
    print(f"{2 * m} vertices: {len(run)} classes  " +
          ", ".join(f"{k} {v}" for k, v in sorted(kinds.items())))
    for r in run:
        rec = r.record()
        print(f"   f={tuple(rec['f_vector'])}  {NAMES[rec['homology']]:<13} {rec['orbits']}")
    st = run.stats
    print(f"   search: {st.nodes} nodes, {st.completions} completions, "
          f"{st.duplicates_rejected} duplicates\n")
