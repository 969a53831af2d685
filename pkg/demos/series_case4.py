"""Grow the series solution for case 4 and check straightening at each degree."""

import sys

from uqsym import catalog
from uqsym.series import straightening_ok


def main(top=6):
    for d in range(2, top + 1):
        fam = catalog.make_series_vertex("aq3/case4", d)
        bad = straightening_ok(fam)
        print(f"degree <= {d}: {len(fam.free_params())} parameters, straightening {'ok' if not bad else 'FAILED'}")
    print(fam.describe())


if __name__ == "__main__":
    main(int(sys.argv[1]) if len(sys.argv) > 1 else 6)
