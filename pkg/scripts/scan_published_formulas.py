"""Where do the literature formulas for ||C(h)|| hold?

For every (a, b, p, q) in [-R, R]^4 and n in [1, N], evaluate each formula
whose stated hypotheses hold and compare it with the reference norm
(certified exact value, else the power-iteration oracle).  Prints one row per
formula: cases evaluated, cases in agreement, and the first counterexample.

    python scripts/scan_published_formulas.py --radius 3 --max-n 10
"""

import argparse
import itertools
from collections import defaultdict

from circnorm.circulant import FloatRangeError
from circnorm.cli import relative_gap
from circnorm.closed_forms import applicable_formulas, evaluate_published_formula, norm_horadam
from circnorm.horadam import RecurrenceParams, generate
from circnorm.oracle import max_singular_value


def reference(params, n):
    result = norm_horadam(params, n)
    if result.exact:
        return float(result.value_exact), result.method.value
    window = generate(params, n).terms
    return max_singular_value(window).max_singular, "ORACLE"


def main():
    parser = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    parser.add_argument("--radius", type=int, default=3)
    parser.add_argument("--max-n", type=int, default=10)
    parser.add_argument("--tol", type=float, default=1e-9)
    args = parser.parse_args()

    r = args.radius
    counts = defaultdict(lambda: [0, 0])
    first_bad = {}
    by_method = defaultdict(int)
    for a, b, p, q in itertools.product(range(-r, r + 1), repeat=4):
        params = RecurrenceParams(a, b, p, q)
        for n in range(1, args.max_n + 1):
            try:
                ref, method = reference(params, n)
            except FloatRangeError:
                continue
            by_method[method] += 1
            for formula in applicable_formulas(params):
                value = float(evaluate_published_formula(formula, params, n))
                ok = relative_gap(value, ref) <= args.tol
                counts[formula.value][0] += 1
                counts[formula.value][1] += ok
                if not ok and formula.value not in first_bad:
                    first_bad[formula.value] = (params, n, value, ref)

    print("reference methods:", dict(by_method))
    print(f"{'formula':<12} {'cases':>7} {'agree':>7}  first counterexample")
    for name in sorted(counts):
        total, agree = counts[name]
        bad = first_bad.get(name)
        note = "-" if bad is None else (
            f"(a,b,p,q)=({bad[0].a},{bad[0].b},{bad[0].p},{bad[0].q}) n={bad[1]}: "
            f"formula {bad[2]:.6g} vs norm {bad[3]:.6g}")
        print(f"{name:<12} {total:>7} {agree:>7}  {note}")


if __name__ == "__main__":
    main()
