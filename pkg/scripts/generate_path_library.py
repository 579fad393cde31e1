"""
Write a block library of unit-weight paths for the composition search.

Usage:
    PYTHONPATH=. python scripts/generate_path_library.py [directory] [max_length]

Creates path_1.json ... path_N.json plus manifest.json and reports which
blocks have a pole at k = -pi/4 (they are quarantined by the search).
"""

import sys
from pathlib import Path

from src.designer.library import load_library, write_path_library
from src.graphs.momentum import Momentum


def main():
    """Generate the library and summarize it at k = -pi/4."""
    directory = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("library/paths")
    max_length = int(sys.argv[2]) if len(sys.argv) > 2 else 8

    print("\n" + "=" * 70)
    print("PATH BLOCK LIBRARY")
    print("=" * 70 + "\n")

    print(f"[1/2] Writing paths of length 1..{max_length} to {directory}...")
    manifest = write_path_library(directory, range(1, max_length + 1))
    print(f"      Manifest: {manifest}")

    print("\n[2/2] Evaluating blocks at k = -pi/4...")
    k = Momentum.from_literal('-pi/4')
    lib = load_library(directory, k)
    for block in lib:
        mu1, _, nu = block.values
        print(f"      {block.name:<10} mu = {float(mu1):+.6f}   nu = {float(nu):+.6f}")
    for block in lib.quarantined:
        print(f"      {block.name:<10} pole at y = 2cos k (quarantined)")

    print("\n" + "=" * 70)
    print(f"✓ {len(lib)} usable blocks, {len(lib.quarantined)} quarantined")
    print("=" * 70 + "\n")


if __name__ == "__main__":
    main()
