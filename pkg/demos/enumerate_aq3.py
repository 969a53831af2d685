"""Labelings of the Dynkin path A_m by actions on A_q(3), for m = 2, 3, 4."""

from uqsym import catalog
from uqsym.compat import PairCache, enumerate_labelings


def main():
    tags = catalog.catalog_tags("aq3")
    cache = PairCache()
    for m in (2, 3, 4):
        labs = enumerate_labelings(m, tags, cache=cache)
        nontrivial = [lab for lab in labs if not all(catalog.entry(t).trivial for t in lab)]
        print(f"m = {m}: {len(labs)} labelings, {len(nontrivial)} with a nontrivial vertex")
        for lab in nontrivial:
            print("  " + " - ".join(t.split("/")[1] for t in lab))


if __name__ == "__main__":
    main()
