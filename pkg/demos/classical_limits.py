"""Classical limits of the two-vertex structures on A_q(3)."""

from uqsym import catalog
from uqsym.limit import classical_limit, verify_lie


def main():
    for row in catalog.theorem_table("T4.11")[1:]:
        fam = row.families[0]
        lie = classical_limit(fam)
        status = "ok" if verify_lie(lie).passed else "FAILED"
        print(f"row {row.label}: {' | '.join(fam.labels)} -> sl(3) relations {status}")
        print("  " + lie.describe().replace("\n", "\n  "))


if __name__ == "__main__":
    main()
