"""Compare the three p-divisibility bounds on a few small systems.

For r polynomials in n variables over F_q, ord_q of the point count is
bounded below by Ax-Katz (degrees only), Moreno-Moreno (p-ary digit
degrees), and mu = w - r from the Newton-polytope weight.  The polytope
bound sees the support, not just the degree, so sparse systems separate
the three.
"""

from axdiv import bound_report, support_system

SYSTEMS = [
    ("x^3 y^3 + y^2 z^2", support_system(3, [[(3, 3, 0), (0, 2, 2)]])),
    ("x^3 y + x y^3", support_system(2, [[(3, 1), (1, 3)]])),
    ("x^2+y^2+z^2+w^2", support_system(
        4, [[(2, 0, 0, 0), (0, 2, 0, 0), (0, 0, 2, 0), (0, 0, 0, 2)]])),
    ("x^2 + y (dense deg 2)", support_system(2, [[(2, 0), (0, 1)]])),
]


def main() -> None:
    header = f"{'system':24} {'ax_katz':>8} {'moreno(p=2)':>12} {'w':>3} {'mu':>3}"
    print(header)
    print("-" * len(header))
    for label, system in SYSTEMS:
        rep = bound_report(system, p=2)
        ak = f"{rep.ax_katz}{' (vac)' if rep.ax_katz_vacuous else ''}"
        print(f"{label:24} {ak:>8} {str(rep.moreno_moreno):>12}"
              f" {rep.w_polytope:>3} {rep.mu_combinatorial:>3}")
        assert rep.mu_polytope == rep.mu_combinatorial
    print()
    print("mu >= ax_katz on every line; the digit bound overtakes both on")
    print("the diagonal quadric at p = 2, where squaring is linear.  The")
    print("two mu routes (polytope LP and lattice minimum) are")
    print("cross-checked inside bound_report.")


if __name__ == "__main__":
    main()
