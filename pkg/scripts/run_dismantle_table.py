"""Removal-curve table over the local networks: robustness R and AUC
for the adaptive highest-degree baseline, the collective-influence
variant, and any requested one-shot centrality selectors.

    python scripts/run_dismantle_table.py
    python scripts/run_dismantle_table.py --networks karate lesmis --ci-radius 2
"""

import argparse
import glob
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))
from netsight.graph import load_edge_list_path  # noqa: E402
from netsight.pipelines import (CentralitySelector, HCISelector, HDSelector,  # noqa: E402
                                auc, dismantle, robustness_R)

DATA_DIR = os.path.join(os.path.dirname(__file__), "..", "data")


def selector_for(name: str, ci_radius: int):
    if name == "hd":
        return HDSelector()
    if name == "hci":
        return HCISelector(ci_radius)
    return CentralitySelector(name, ci_radius)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--networks", nargs="*", default=None,
                        help="names under data/ (default: everything present)")
    parser.add_argument("--selectors", nargs="*",
                        default=["hd", "hci"],
                        help="hd | hci | degree | betweenness | closeness | "
                             "pagerank | collective_influence")
    parser.add_argument("--ci-radius", type=int, default=2)
    parser.add_argument("--stop-fraction", type=float, default=0.25)
    args = parser.parse_args()

    names = args.networks or sorted(
        os.path.basename(p)[:-len(".edges")]
        for p in glob.glob(os.path.join(DATA_DIR, "*.edges")))
    print(f"{'network':<10} {'nodes':>6} {'edges':>7}  "
          + "".join(f"{s + ' R':>12} {s + ' AUC':>12}" for s in args.selectors))
    for name in names:
        g = load_edge_list_path(os.path.join(DATA_DIR, f"{name}.edges"))
        cells = []
        for sel in args.selectors:
            trace = dismantle(g, selector_for(sel, args.ci_radius),
                              args.stop_fraction)
            cells.append(f"{robustness_R(trace):>12.3f} {auc(trace):>12.3f}")
        print(f"{name:<10} {g.node_count:>6} {g.edge_count:>7}  " + "".join(cells))


if __name__ == "__main__":
    main()
