"""Which maps (y, x^p y^q) pass the two-integral eigenvalue test at (1, 1), and their periods."""

import argparse

from resint.obstruction import monomial_map, monomial_sweep


def period(f, limit=12):
    for k in range(1, limit + 1):
        if f.power(k).is_identity():
            return k
    return None


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--radius", type=int, default=6)
    args = ap.parse_args()
    for p, q in monomial_sweep(args.radius):
        f = monomial_map(p, q)
        k = period(f)
        print(f"p={p:>2} q={q:>2}  {f.render():<40} period {k if k else '-'}")


if __name__ == "__main__":
    main()
