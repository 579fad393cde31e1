"""
Walkthrough of the worked examples: the path-block gadgets at k = -pi/4,
the synthetic two-block composite at k = -pi/6 and the effective length
from given admittance values.

Every number printed here is also asserted in the pytest suite.
"""

import math
from fractions import Fraction

from src.admittance import (
    admittance,
    check_pt,
    effective_length,
    effective_length_from_values,
    evaluate,
    hyperbola_residual,
    parallel_add,
    synthetic_triple,
)
from src.designer import BlockLibrary, CompositionQuery, search, verify_composition
from src.graphs.momentum import Momentum
from src.graphs.operations import path_graph
from src.graphs.scalar import QuadraticScalar
from src.polynomials.polynomial import Polynomial
from src.polynomials.rational import RationalFunction
from src.utils.config import PRINTED_SIGN


def path_blocks():
    """Paths of length 1..8 at k = -pi/4, in the display sign of nu."""
    k = Momentum.from_literal('-pi/4')
    print("[1/4] Path blocks at k = -pi/4 (display sign)")
    print(f"      {'length':>6}  {'mu':>12}  {'nu':>12}")
    for length in range(1, 9):
        point = evaluate(admittance(path_graph(length)), k.y)
        if not point.finite:
            print(f"      {length:>6}  {'pole':>12}  {'pole':>12}")
            continue
        print(f"      {length:>6}  {float(point.mu):>12.6f}  {PRINTED_SIGN * float(point.nu):>12.6f}")


def gadgets():
    """Search the path library for the two transmitting gadgets and the reflector."""
    k = Momentum.from_literal('-pi/4')
    lib = BlockLibrary.from_graphs([path_graph(n) for n in (3, 5)], k)
    print("\n[2/4] Composition search over {path_3, path_5}, at most 13 blocks")
    outcome = search(lib, CompositionQuery(k, max_total_blocks=13, max_per_block=13))
    for r in outcome:
        print(f"      ✓ {r.label():<22} mu = {r.mu1}  nu = {PRINTED_SIGN * r.nu}  "
              f"length = {r.effective_length}  defect = {r.certificate_defect:.2e}")
    reflector = verify_composition(lib, {'path_3': 1, 'path_5': 1}, k)
    print(f"      1xpath_3+1xpath_5 -> {reflector.pt.status} "
          f"(|S11| = {abs(reflector.certificate[0, 0]):.12f})")


def synthetic_composite():
    """Two blocks given by their admittance functions, combined at k = -pi/6."""
    y = Polynomial.y()
    first = synthetic_triple(RationalFunction(2 * (y * y - 2), y * (y * y - 4)),
                             RationalFunction(Polynomial([4]), y * (y * y - 4)), name='G1')
    second = synthetic_triple(RationalFunction(2 * y, y * y - 1), RationalFunction(2 * y, y * y - 1),
                              name='G2')
    k = Momentum.from_literal('-pi/6')
    total = parallel_add([first, second])
    point = evaluate(total, k.y)
    pt = check_pt(point, k)
    print("\n[3/4] Synthetic composite G1 || G2 at k = -pi/6")
    print(f"      mu = {point.mu}  nu = {point.nu}")
    print(f"      status = {pt.status}")
    print(f"      theta (physical) = {pt.theta / math.pi:+.6f} pi   "
          f"theta (printed) = {pt.theta_printed / math.pi:+.6f} pi")
    print(f"      effective length = {effective_length(total, k, pt)}")


def given_values():
    """Effective length from given mu, nu and derivatives at k = -pi/4."""
    r2 = QuadraticScalar.sqrt(2)
    mu = Fraction(1, 4) + r2 / 2
    nu = Fraction(-3, 4)
    dmu = Fraction(-5, 2) + r2 / 4
    dnu = -3 * r2 / 4
    print("\n[4/4] Effective length from given values at k = -pi/4")
    print(f"      mu = {mu}  nu = {nu}  residual = {hyperbola_residual(mu, nu, r2)}")
    print(f"      cos(theta) = {(mu - r2 / 2) / nu}")
    print(f"      effective length = {effective_length_from_values(mu, nu, dmu, dmu, dnu, r2)}")


def main():
    """Run every example."""
    print("\n" + "=" * 70)
    print("QUANTUM-WALK SCATTERING - WORKED EXAMPLES")
    print("=" * 70 + "\n")

    path_blocks()
    gadgets()
    synthetic_composite()
    given_values()

    print("\n" + "=" * 70)
    print("✓ EXAMPLES COMPLETED SUCCESSFULLY!")
    print("=" * 70 + "\n")


if __name__ == "__main__":
    main()
