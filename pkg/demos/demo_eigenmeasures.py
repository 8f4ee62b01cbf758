"""Fourier eigenmeasures from modular forms.

Every registered form yields a spherical measure whose Fourier transform
is a root-of-unity multiple of itself; the eigenvalue is computed from
multiplier-system data, never fitted.  This script certifies the
modular transformation and the eigen property for a few forms.
"""

from sphmeas import modforms, verify


def main() -> None:
    names = ["theta^3", "delta", "E6", "frickeE:N=5,k2=4,sign=+"]
    for name in names:
        f, law = modforms.get_form(name)
        rho = modforms.transform_law_eigenvalue(law)
        print("%s: weight %s, level %d, eigenvalue %s"
              % (name, law.weight, law.level, rho))
        rep = verify.check_modular_transform(f, law, tol=1e-9)
        print("  " + rep.summary())
        mu = verify.measure_of_form(f, law)
        if mu.eigen is not None:
            rep = verify.check_eigen(mu)
            print("  " + rep.summary())
        print()


if __name__ == "__main__":
    main()
