"""
Plot the perfect-transmission hyperbola at k = -pi/4 with the path blocks
and the transmitting composites found by the search.

Usage:
    PYTHONPATH=. python scripts/plot_hyperbola.py [output.png]
"""

import sys
from pathlib import Path

import matplotlib

matplotlib.use('Agg')
import matplotlib.pyplot as plt

from src.designer import BlockLibrary, CompositionQuery, hyperbola_samples, search
from src.graphs.momentum import Momentum
from src.graphs.operations import path_graph
from src.utils.config import PRINTED_SIGN


def main():
    """Draw both hyperbola branches, the blocks and the composites."""
    out = Path(sys.argv[1]) if len(sys.argv) > 1 else Path("hyperbola.png")
    k = Momentum.from_literal('-pi/4')

    print("\n" + "=" * 70)
    print("PERFECT TRANSMISSION HYPERBOLA at k = -pi/4")
    print("=" * 70 + "\n")

    print("[1/3] Sampling the hyperbola...")
    frame = hyperbola_samples(k, 400)
    frame = frame[(frame.mu.abs() < 8) & (frame.nu.abs() < 8)]

    print("[2/3] Evaluating path blocks and searching composites...")
    lib = BlockLibrary.from_graphs([path_graph(n) for n in range(1, 9)], k)
    outcome = search(lib, CompositionQuery(k, max_total_blocks=13, max_per_block=13, certify=False))

    print("[3/3] Drawing...")
    fig, ax = plt.subplots(figsize=(7, 7))
    lower = frame[frame.theta < 0]
    upper = frame[frame.theta > 0]
    ax.plot(lower.mu, lower.nu, '.', ms=2, color='dodgerblue', label='hyperbola (theta < 0)')
    ax.plot(upper.mu, upper.nu, '.', ms=2, color='red', label='hyperbola (theta > 0)')
    for block in lib:
        mu, nu = float(block.point.mu), PRINTED_SIGN * float(block.point.nu)
        ax.plot(mu, nu, 'ko')
        ax.annotate(block.name, (mu, nu), textcoords='offset points', xytext=(4, 4))
    composites = [(float(r.mu1), PRINTED_SIGN * float(r.nu)) for r in outcome if r.total > 1]
    if composites:
        xs, ys = zip(*composites)
        ax.plot(xs, ys, 'g^', ms=5, label='composites')
    ax.set_xlim(-8, 8)
    ax.set_ylim(-8, 8)
    ax.set_xlabel('mu')
    ax.set_ylabel('nu (display sign)')
    ax.axhline(0, color='grey', lw=0.5)
    ax.axvline(0, color='grey', lw=0.5)
    ax.legend(loc='lower right')
    fig.savefig(out, dpi=150, bbox_inches='tight')
    print(f"      Saved {out}")

    print("\n" + "=" * 70)
    print(f"✓ {len(outcome)} transmitting composites plotted")
    print("=" * 70 + "\n")


if __name__ == "__main__":
    main()
