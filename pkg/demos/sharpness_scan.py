"""Scan primes for sharpness of the divisibility bound, then estimate density.

For each prime the scan couples the exact point count with the Hasse
value at the variety's coefficients: the bound ord_p >= mu is sharp
exactly when H_p does not vanish there, and |V|/p^mu = H_p mod p.
Inadmissible primes (small, or dividing a representation denominator)
are reported but carry no theorem.
"""

from axdiv import (
    density_document,
    density_estimate,
    primes_upto,
    sharpness_scan,
    support_system,
    unit_variety,
)


def main() -> None:
    system = support_system(3, [[(3, 3, 0), (0, 2, 2)]])
    spec = unit_variety(system)
    primes = [p for p in primes_upto(31) if p > 2]

    print("p   adm   count  ord  H_p(a)  congruent  sharp")
    for rec in sharpness_scan(spec, primes):
        adm = "yes" if rec.admissible else "no "
        cong = "-" if rec.congruent is None else str(rec.congruent)
        sharp = "-" if rec.observed_sharp is None else str(rec.observed_sharp)
        print(f"{rec.p:<3} {adm}  {rec.count:6}   {rec.ord_q}    {rec.hasse_value:>3}"
              f"    {cong:5}     {sharp}")

    est = density_estimate(spec, 31)
    doc = density_document(est)
    print(f"\nwindow {est.window}: {est.sharp_count}/{est.admissible_count}"
          f" admissible primes sharp (fraction {est.sharp_fraction})")
    print(f"note: {doc['note']}")


if __name__ == "__main__":
    main()
