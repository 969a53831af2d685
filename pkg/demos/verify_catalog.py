"""Verify every catalog entry and print one line per identifier."""

from uqsym import catalog
from uqsym.relations import verify


def main(n=4):
    for tag in catalog.list_ids(n):
        fam = catalog.general_family(tag, n)
        rep = verify(fam)
        params = ", ".join(sorted(fam.free_params())) or "-"
        print(f"{tag:16} {'ok' if rep.passed else 'FAILED':7} parameters: {params}")


if __name__ == "__main__":
    main()
