"""Two-variable expansions over real quadratic fields.

Fits the constant term of the weight-(2,2) Eisenstein series over
Q(sqrt(5)) from its transformation law alone, and checks the theta
function of a rotated copy of the integer lattice.
"""

import math

from sphmeas import hilbert


def main() -> None:
    F = hilbert.QuadField(5)
    series, fitted = hilbert.hilbert_eisenstein(F, 2, trace_bound=30)
    print("Eisenstein series over Q(sqrt(5)), weight (2, 2)")
    print("  fitted constant term: %.15f" % fitted)
    print("  target 1/30:          %.15f" % (1 / 30))
    alt = hilbert.fit_constant_term(
        hilbert.TwoVarSeries(series.terms[1:], series.trace_bound),
        2,
        1j * math.sqrt(2),
    )
    print("  fit at a second base point differs by %.3g" % abs(fitted - alt))
    grid = [(2j, 2j), (1.5j, 2.5j), (0.3 + 1.4j, -0.2 + 1.6j)]
    for (t1, t2), r in zip(grid, hilbert.transformation_residuals(series, 2, grid)):
        print("  transformation residual at (%s, %s): %.3g" % (t1, t2, r))

    print()
    print("Rotated integer lattice attached to X^2 + X - 1")
    series, dims = hilbert.rotated_lattice_theta(1, radius=40)
    print("  dims %s, %d distinct exponent pairs" % (dims, len(series.terms)))
    pair_grid = [(1j, 1j), (2j, 1.5j), (0.25 + 1.2j, -0.3 + 1.5j)]
    for (t1, t2), r in zip(
        pair_grid, hilbert.rotated_lattice_residuals(1, pair_grid, radius=40)
    ):
        print("  weight-(1/2,1/2) residual at (%s, %s): %.3g" % (t1, t2, r))


if __name__ == "__main__":
    main()
