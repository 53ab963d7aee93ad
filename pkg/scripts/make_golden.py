"""Generate high-precision reference values for the special-function tests.

Faddeeva values come from mpmath's erfc at 40 digits and Bessel values from
mpmath.besselj; both are independent of the package kernels. Output goes to
tests/data/golden_faddeeva.csv and tests/data/golden_bessel.csv.

    python3 scripts/make_golden.py [--seed 20261015] [--n 100]
"""

import argparse
import csv
from pathlib import Path

import mpmath as mp
import numpy as np

DATA = Path(__file__).resolve().parents[1] / "tests" / "data"


def faddeeva_ref(z: complex) -> complex:
    zm = mp.mpc(z.real, z.imag)
    return complex(mp.exp(-zm * zm) * mp.erfc(-1j * zm))


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--seed", type=int, default=20261015)
    ap.add_argument("--n", type=int, default=100)
    args = ap.parse_args(argv)
    mp.mp.dps = 40
    rng = np.random.default_rng(args.seed)
    DATA.mkdir(parents=True, exist_ok=True)

    # mostly |z| <= 10, half of them in the lower half-plane where the
    # reflection route is used; |Im z| capped so exp(-z^2) stays finite
    re = rng.uniform(-8.0, 8.0, args.n)
    im = rng.uniform(-4.0, 8.0, args.n)
    with open(DATA / "golden_faddeeva.csv", "w", newline="") as fh:
        out = csv.writer(fh)
        out.writerow(["re_z", "im_z", "re_w", "im_w"])
        for a, b in zip(re, im):
            v = faddeeva_ref(complex(a, b))
            out.writerow([repr(float(a)), repr(float(b)), repr(v.real), repr(v.imag)])

    xs = np.concatenate([rng.uniform(0.0, 2.0, args.n // 4),
                         rng.uniform(2.0, 60.0, args.n - args.n // 4)])
    orders = rng.integers(0, 80, args.n)
    with open(DATA / "golden_bessel.csv", "w", newline="") as fh:
        out = csv.writer(fh)
        out.writerow(["n", "x", "j"])
        for n, x in zip(orders, xs):
            out.writerow([int(n), repr(float(x)), repr(float(mp.besselj(int(n), x)))])


if __name__ == "__main__":
    main()
