#!/usr/bin/env python3
"""Tabulate the Bogomolov radius bound per unit node count.

For each genus, prints the squared-radius contribution of one node of each
type (the closed-form radicand at unit delta vectors), the weak and sharp
omega^2 lower-bound coefficients it comes from, and the decimal radius.
"""

import math

from mg import omega_sq_lower_sharp, radius_sq_closed_form, total_e


def main(g_max=10):
    for g in range(2, g_max + 1):
        size = g // 2 + 1
        print(f"\ngenus {g}")
        print(f"  {'type':>4}  {'radius^2':>12}  {'radius':>10}  "
              f"{'sharp w^2':>10}  {'sum e_y':>9}")
        for i in range(size):
            delta = [0] * size
            delta[i] = 1
            rsq = radius_sq_closed_form(g, delta)
            sharp = omega_sq_lower_sharp(g, delta)
            esum = total_e(g, delta)
            print(
                f"  {i:>4}  {str(rsq):>12}  {math.sqrt(rsq):>10.6f}  "
                f"{str(sharp):>10}  {str(esum):>9}"
            )


if __name__ == "__main__":
    main()
