"""Print the three genus-3 U-values in the printed two-symbol basis and in
canonical form, the three-term combination, and the genus-3 correlator.

    python scripts/reproduce_tables.py [--m 0]
"""

import argparse
from dataclasses import replace

from boussinesq.engine import DEFAULT_RULES, Reducer
from boussinesq.verification import (
    PRINTED, c1_key, c2_key, combination_states, printed_pair_lincomb)


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--m", type=int, choices=[0, 1], default=0)
    m = parser.parse_args().m

    canonical = Reducer()
    unreduced = Reducer(replace(DEFAULT_RULES, reduce_tail3=False))
    print(f"C1 = {c1_key(m)}   (tau_(0,1)^(k+3) kept)")
    print(f"C2 = {c2_key(m)}\n")

    for name, s in combination_states(m).items():
        printed = printed_pair_lincomb(PRINTED[name], m)
        got = unreduced.reduce(s)
        print(name)
        print(f"  engine, two-symbol basis : {got}")
        print(f"  printed                  : {printed}   {'ok' if got == printed else 'MISMATCH'}")
        print(f"  canonical                : {canonical.reduce(s)}")

    combo = unreduced.theorem1_assemble(m)
    print("\n3! <tau_{n,m} tau_{0,1}^k tau_{0,0}^l>_3")
    print(f"  two-symbol basis : {combo}")
    print(f"  C1 coefficient   : {combo[c1_key(m)]}  (printed: 446/41803776)")
    value = canonical.theorem1_assemble(m)
    print(f"  canonical        : {value}")
    print(f"  <tau>_3          : {value / 6}")
    print(f"\nstates memoized: {len(canonical.cache)}")


if __name__ == "__main__":
    main()
