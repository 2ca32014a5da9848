"""Fetch the non-vendored real-world networks into data/ as edge lists.

Each network is pulled from a public mirror, converted to a plain
"u v" edge list, then loaded back with the package's own cleanup
(self-loops dropped, largest component kept) and checked against the
expected node/edge counts before the file is accepted.

dolphins and polbooks have stable mirrors and work out of the box;
the larger router and sex networks move around, so point --url at a
copy (plain edge list, optionally gzipped) and the script will convert
and verify it.

    python scripts/download_networks.py dolphins polbooks
    python scripts/download_networks.py router --url https://example.org/router.txt
"""

import argparse
import gzip
import io
import os
import sys
import zipfile

import requests

sys.path.insert(0, os.path.join(os.path.dirname(__file__), "..", "src"))
from netsight.graph import load_edge_list_path  # noqa: E402

DATA_DIR = os.path.join(os.path.dirname(__file__), "..", "data")

# name -> (mirror urls, expected nodes, expected edges after cleanup)
NETWORKS = {
    "dolphins": (("https://networks.skewed.de/net/dolphins/files/dolphins.csv.zip",), 62, 159),
    "polbooks": (("https://networks.skewed.de/net/polbooks/files/polbooks.csv.zip",), 105, 441),
    "facebook": (("https://snap.stanford.edu/data/facebook_combined.txt.gz",), 4039, 88234),
    "router": ((), 5022, 6258),
    "sex": ((), 15810, 35840),
}


def fetch(url: str) -> bytes:
    resp = requests.get(url, timeout=120)
    resp.raise_for_status()
    return resp.content


def to_edge_lines(payload: bytes, url: str):
    """Plain, gzipped, or zipped (netzschleuder csv) payload -> iterable
    of 'u v' strings with original integer labels."""
    if url.endswith(".gz"):
        payload = gzip.decompress(payload)
    if url.endswith(".zip"):
        with zipfile.ZipFile(io.BytesIO(payload)) as zf:
            name = next(n for n in zf.namelist() if n.endswith("edges.csv"))
            payload = zf.read(name)
        for line in payload.decode("utf-8").splitlines():
            line = line.strip()
            if not line or line.startswith("#"):
                continue
            u, v = line.split(",")[:2]
            yield f"{int(u)} {int(v)}"
        return
    for line in payload.decode("utf-8").splitlines():
        line = line.strip()
        if not line or line.startswith(("#", "%")):
            continue
        parts = line.replace(",", " ").split()
        yield f"{int(parts[0])} {int(parts[1])}"


def install(name: str, url: str, expect_n: int, expect_m: int) -> str:
    lines = list(to_edge_lines(fetch(url), url))
    path = os.path.join(DATA_DIR, f"{name}.edges")
    with open(path, "w", encoding="utf-8") as f:
        f.write("\n".join(lines) + "\n")
    g = load_edge_list_path(path)
    if (g.node_count, g.edge_count) != (expect_n, expect_m):
        os.remove(path)
        raise SystemExit(
            f"{name}: got {g.node_count} nodes / {g.edge_count} edges after "
            f"cleanup, expected {expect_n} / {expect_m}; mirror rejected")
    return path


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("networks", nargs="*", default=None,
                        help="subset of: " + " ".join(NETWORKS))
    parser.add_argument("--url", default=None,
                        help="explicit source url (single network only)")
    args = parser.parse_args()

    wanted = args.networks or [n for n, (urls, _, _) in NETWORKS.items() if urls]
    if args.url and len(wanted) != 1:
        parser.error("--url needs exactly one network name")
    for name in wanted:
        if name not in NETWORKS:
            parser.error(f"unknown network {name!r}")
        urls, expect_n, expect_m = NETWORKS[name]
        if args.url:
            urls = (args.url,)
        if not urls:
            print(f"{name}: no stable mirror on file, pass --url (skipped)")
            continue
        last_error = None
        for url in urls:
            try:
                path = install(name, url, expect_n, expect_m)
                print(f"{name}: {expect_n} nodes / {expect_m} edges -> {path}")
                break
            except (requests.RequestException, StopIteration, ValueError) as exc:
                last_error = exc
        else:
            raise SystemExit(f"{name}: every mirror failed ({last_error})")


if __name__ == "__main__":
    main()
