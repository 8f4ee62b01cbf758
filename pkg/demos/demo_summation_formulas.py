"""Walk through the one-dimensional summation formulas.

Builds the integer-lattice measure from the theta series, restricts it
to the line, and certifies classical Poisson summation together with
its odd counterpart for three-dimensional theta powers.
"""

import sympy as sp

from sphmeas import measures, modforms, schwartz, verify


def main() -> None:
    f, law = modforms.theta_pow(1)
    mu = verify.measure_of_form(f, law)
    nu, nu_hat = measures.descend_even(mu)

    print("Classical Poisson summation on the integers")
    phi = schwartz.PolyGaussian((1, 0, 1), sp.Rational(3, 2))
    lhs, _ = measures.pair(nu, phi)
    rhs, _ = measures.pair(nu_hat, schwartz.fourier(phi))
    print("  sum phi(n)      = %.15f" % lhs.real)
    print("  sum phihat(n)   = %.15f" % rhs.real)
    print("  difference      = %.3g" % abs(lhs - rhs))

    print()
    print("Odd summation formula from the three-squares theta function")
    f3, law3 = modforms.theta_pow(3)
    mu3 = verify.measure_of_form(f3, law3)
    nu3, nu3_hat = measures.descend_odd(mu3)
    phi_odd = schwartz.PolyGaussian((0, 1), 2)
    lhs, _ = measures.pair(nu3, phi_odd)
    rhs, _ = measures.pair(nu3_hat, schwartz.fourier(phi_odd))
    print("  left side       = %.15f" % lhs.real)
    print("  -<nu_hat, phihat> = %.15f" % (-rhs).real)
    print("  difference      = %.3g" % abs(lhs + rhs))

    print()
    print("The transform relation as an eigen property")
    rep = verify.check_eigen(nu3)
    print("  " + rep.summary())


if __name__ == "__main__":
    main()
