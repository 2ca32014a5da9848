"""Influence-maximization sweep: one run per (network, k) cell through
the same code path as the CLI, so results land under --out-dir with the
full config embedded. The backend is a heuristic name for offline
baselines, `scripted` with a fixture for replaying canned replies, or
`mllm` for the live multimodal API (needs MLLM_API_KEY).

    python scripts/run_im_experiment.py karate --k 5 10 --backend degree
    python scripts/run_im_experiment.py karate --backend scripted --fixture replies.json
"""

import argparse
import os
import sys

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))
from netsight.cli import main as cli_main  # noqa: E402

DATA_DIR = os.path.join(os.path.dirname(__file__), "..", "data")


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("networks", nargs="+")
    parser.add_argument("--k", nargs="*", type=int, default=[5, 10])
    parser.add_argument("--attempts", type=int, default=10)
    parser.add_argument("--backend", default="degree")
    parser.add_argument("--fixture", default=None)
    parser.add_argument("--label-mode", choices=["full", "partial"], default="full")
    parser.add_argument("--model-kind", choices=["ic", "lt"], default="ic")
    parser.add_argument("--p", type=float, default=0.1)
    parser.add_argument("--trials-validate", type=int, default=100000)
    parser.add_argument("--trials-search", type=int, default=5000)
    parser.add_argument("--rng-seed", type=int, default=0)
    parser.add_argument("--out-dir", default="runs/im")
    args = parser.parse_args()

    failures = 0
    for network in args.networks:
        path = network if os.path.exists(network) else os.path.join(
            DATA_DIR, f"{network}.edges")
        for k in args.k:
            argv = ["im", path, "--k", str(k),
                    "--attempts", str(args.attempts),
                    "--backend", args.backend,
                    "--label-mode", args.label_mode,
                    "--model-kind", args.model_kind, "--p", str(args.p),
                    "--trials-validate", str(args.trials_validate),
                    "--trials-search", str(args.trials_search),
                    "--rng-seed", str(args.rng_seed),
                    "--out-dir", args.out_dir]
            if args.fixture:
                argv += ["--fixture", args.fixture]
            print(f"== {network} k={k} backend={args.backend}")
            failures += cli_main(argv) != 0
    sys.exit(1 if failures else 0)


if __name__ == "__main__":
    main()
