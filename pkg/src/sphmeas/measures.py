"""Spherical measures, line distributions, and the theta map.

A k-spherical measure is a locally finite sum of weighted surface
measures on spheres |x|^2 = lambda_m in R^k (products of spheres in the
vector-dimension case).  The theta map

    theta_mu(tau) = <mu, g(., tau)>,   g(x, tau) = e(x.x tau / 2)

identifies such measures with Fourier series: the series coefficient at
lambda equals c_lambda * vol(S^k_lambda).  Internally every term stores
that product (the "weight"), which is an exact rational for all built-in
forms; the sphere coefficient c_lambda is recovered on demand.  This
keeps serialization bit-exact and makes the series-measure round trip a
pure relabeling.

Line distributions support atoms a * delta^{(j)} at x = sqrt(lambda) >= 0
with the one-sided storage convention for even/odd distributions: the
pairing sums only the stored atoms, matching the normalization of the
one-dimensional summation formulas.
"""

from __future__ import annotations

import cmath
import json
import math
from dataclasses import dataclass
from fractions import Fraction

import sympy as sp

from . import schwartz
from .qseries import Exponent, QSeries, TruncationError

Generator = tuple


def sphere_volume(k: int, lam: float) -> float:
    """Total mass of the surface measure on |x|^2 = lam in R^k.

    The zero sphere {0} carries mass one; for lam > 0 the mass is
    (2 pi^{k/2} / Gamma(k/2)) lam^{(k-1)/2}.  For k = 1 this is the
    two-point counting measure of total mass 2.
    """
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    if lam == 0:
        return 1.0
    return 2.0 * math.pi ** (k / 2.0) / math.gamma(k / 2.0) * lam ** ((k - 1) / 2.0)


def _sort_key(lams: tuple) -> tuple:
    return tuple((ex.surd, ex.q) for ex in lams)


@dataclass(frozen=True)
class SphericalMeasure:
    """Weighted product-sphere terms on R^{k_1} x ... x R^{k_n}.

    terms holds (lambdas, weight) with weight = coefficient * volume,
    i.e. the Fourier-series coefficient of the theta function.
    fourier_side, when declared, holds the terms of the Fourier
    transform; eigen, when set, asserts mu-hat = i^eigen mu.
    """

    dims: tuple
    terms: tuple
    growth: tuple = (1.0, 0.0)
    horizon: float = 400.0
    gap: float = 1.0
    fourier_side: tuple | None = None
    eigen: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "dims", tuple(self.dims))
        object.__setattr__(self, "terms", tuple(self.terms))
        if any(k < 1 for k in self.dims):
            raise ValueError("dimensions must be positive")
        prev = None
        for lams, _ in self.terms:
            if len(lams) != len(self.dims):
                raise ValueError("lambda vector length must match dims")
            key = _sort_key(lams)
            if prev is not None and key <= prev:
                raise ValueError("terms must be strictly increasing")
            prev = key
        if self.eigen is not None and self.eigen not in (0, 1, 2, 3):
            raise ValueError("eigen tag must be in {0,1,2,3}")
        if self.fourier_side is not None:
            object.__setattr__(self, "fourier_side", tuple(self.fourier_side))

    def total_dim(self) -> int:
        return sum(self.dims)

    def coefficient(self, lams: tuple):
        """Sphere coefficient c = weight / volume at the given radii vector."""
        for ls, w in self.terms:
            if ls == lams:
                vol = 1.0
                for k, ex in zip(self.dims, ls):
                    vol *= sphere_volume(k, ex.value())
                return w / vol if vol != 1.0 else w
        return 0

    def fourier_terms(self) -> tuple:
        if self.fourier_side is not None:
            return self.fourier_side
        if self.eigen is not None:
            phase = 1j**self.eigen
            if self.eigen % 2 == 0:
                phase = int(phase.real)
            return tuple((ls, phase * w) for ls, w in self.terms)
        raise ValueError("measure has no declared Fourier side")


@dataclass(frozen=True)
class LineDistribution:
    """Sum of atoms a * delta^{(j)} at x = sqrt(lambda), one-sided storage.

    The pairing convention is <delta_x^{(j)}, phi> = (-1)^j phi^{(j)}(x),
    summed over the stored atoms only.
    """

    atoms: tuple
    parity: str = "none"
    eigen: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "atoms", tuple(self.atoms))
        if self.parity not in ("even", "odd", "none"):
            raise ValueError("parity must be 'even', 'odd' or 'none'")
        seen = set()
        for lam, j, _ in self.atoms:
            if j < 0:
                raise ValueError("derivative order must be nonnegative")
            key = (lam, j)
            if key in seen:
                raise ValueError("duplicate atom position/order")
            seen.add(key)

    def scaled(self, factor) -> "LineDistribution":
        return LineDistribution(
            tuple((lam, j, factor * a) for lam, j, a in self.atoms),
            parity=self.parity,
        )


def measure_from_series(
    f: QSeries,
    dims: tuple | int,
    fourier_series: QSeries | None = None,
    eigen: int | None = None,
) -> SphericalMeasure:
    """The inverse theta map: series coefficients become sphere weights.

    Only scalar dimension vectors are built from a one-variable series;
    the coefficient of e(lambda tau / 2) lands on the sphere of radius
    sqrt(lambda) with weight equal to that coefficient.
    """
    if isinstance(dims, int):
        dims = (dims,)
    if len(dims) != 1:
        raise ValueError("a one-variable series builds a scalar-dimension measure")
    terms = tuple(((ex,), c) for ex, c in f.terms)
    fside = None
    if fourier_series is not None:
        fside = tuple(((ex,), c) for ex, c in fourier_series.terms)
    return SphericalMeasure(
        dims,
        terms,
        growth=f.growth,
        horizon=f.horizon,
        gap=f.gap,
        fourier_side=fside,
        eigen=eigen,
    )


def _tail(C: float, p: float, H: float, g: float, t: float) -> float:
    if H < 2.0 * p / (math.pi * t):
        return math.inf
    denom = 1.0 - math.exp(-math.pi * g * t / 2.0)
    return C * (1.0 + H) ** p * math.exp(-math.pi * H * t / 2.0) / denom


def theta_of_measure(mu: SphericalMeasure, taus, tol: float = 1e-12):
    """theta_mu at a point of the product upper half-plane, tail-bounded.

    Returns (value, tail_bound); the bound controls the omitted terms
    past the truncation horizon using the measure's growth certificate.
    """
    if isinstance(taus, complex):
        taus = (taus,)
    taus = tuple(complex(t) for t in taus)
    if len(taus) != len(mu.dims):
        raise ValueError("need one tau per dimension block")
    if any(t.imag <= 0 for t in taus):
        raise ValueError("evaluation needs Im(tau) > 0")
    t_min = min(t.imag for t in taus)
    C, p = mu.growth
    bound = _tail(C, p, mu.horizon, mu.gap, t_min)
    if not bound < tol:
        raise TruncationError(
            "tail bound %.3g exceeds tolerance %.3g" % (bound, tol), bound
        )
    total = 0j
    for lams, w in mu.terms:
        phase = sum(ex.value() * t for ex, t in zip(lams, taus))
        total += complex(w) * cmath.exp(1j * math.pi * phase)
    return total, bound


def series_of_measure(mu: SphericalMeasure) -> QSeries:
    """The theta function of a scalar measure as a QSeries (round trip)."""
    if len(mu.dims) != 1:
        raise ValueError("series extraction needs a scalar measure")
    terms = tuple((lams[0], w) for lams, w in mu.terms)
    surd = terms[0][0].surd if terms else 1
    return QSeries(
        terms, surd=surd, growth=mu.growth, horizon=mu.horizon, gap=mu.gap
    )


def weil_generator_action(mu: SphericalMeasure, gen: Generator) -> SphericalMeasure:
    """Action of a metaplectic generator on a scalar spherical measure.

    Generators: ("rot", a) with a > 0, ("t", b), ("S",).  The action is
    normalized so that theta intertwines it with the weight-k/2 slash
    action: rot(a) sends theta(tau) to a^{k/2} theta(a^2 tau), t(b)
    shifts tau by b, and S uses the declared Fourier side scaled by
    exp(-i pi k / 4).
    """
    if len(mu.dims) != 1:
        raise ValueError("generator action implemented for scalar measures")
    k = mu.dims[0]
    kind = gen[0]
    if kind == "rot":
        a = Fraction(gen[1])
        if a <= 0:
            raise ValueError("rot(a) needs a > 0")
        if k % 2 == 0:
            scale = a ** (k // 2)
        else:
            scale = float(a) ** (k / 2.0)
        terms = tuple(
            ((Exponent(ex.q * a * a, ex.surd),), scale * w)
            for (ex,), w in mu.terms
        )
        ratio = float(a * a)
        C, p = mu.growth
        growth = (C * float(scale) * max(ratio, 1.0) ** p, p)
        return SphericalMeasure(
            mu.dims, terms, growth=growth,
            horizon=mu.horizon * ratio, gap=mu.gap * ratio,
        )
    if kind == "t":
        b = gen[1]
        terms = tuple(
            ((ex,), w * cmath.exp(1j * math.pi * ex.value() * b))
            for (ex,), w in mu.terms
        )
        return SphericalMeasure(
            mu.dims, terms, growth=mu.growth, horizon=mu.horizon, gap=mu.gap
        )
    if kind == "S":
        fterms = mu.fourier_terms()
        phase = cmath.exp(-1j * math.pi * k / 4.0)
        terms = tuple((ls, phase * w) for ls, w in fterms)
        return SphericalMeasure(
            mu.dims, terms, growth=mu.growth, horizon=mu.horizon, gap=mu.gap
        )
    raise ValueError("unknown generator %r" % (kind,))


def descent_constants(j: int, k: int, exact: bool = False):
    """(alpha_k, beta_{j,k}) for the odd-dimension radial descent.

    alpha_k = (-1)^{(k-1)/2} / ((k-2)!! (2 pi)^{(k-1)/2}) and, for j >= 1,
    beta_{j,k} = (-1)^j (k-j-2)! / ((j-1)! (k-2j-1)!! (2 pi)^{(k-1)/2}),
    with beta_{0,k} = 0 for k >= 3 and beta_{0,1} = alpha_1 = 1.
    """
    if k < 1 or k % 2 == 0:
        raise ValueError("descent constants need odd k")
    if j < 0 or j > (k - 1) // 2:
        raise ValueError("need 0 <= j <= (k-1)/2")
    two_pi = 2 * sp.pi if exact else 2 * math.pi
    half = (k - 1) // 2
    if k == 1:
        one = sp.Integer(1) if exact else 1.0
        return one, one
    alpha = (-1) ** half / (_dfact(k - 2) * two_pi**half)
    if j == 0:
        beta = sp.Integer(0) if exact else 0.0
    else:
        beta = (
            (-1) ** j
            * math.factorial(k - j - 2)
            / (math.factorial(j - 1) * _dfact(k - 2 * j - 1) * two_pi**half)
        )
    return alpha, beta


def _dfact(n: int) -> int:
    # double factorial with the empty-product conventions (-1)!! = 0!! = 1
    if n <= 0:
        return 1
    out = 1
    while n > 0:
        out *= n
        n -= 2
    return out


def _desired_to_atom(lam: Exponent, order: int, desired):
    # pairing contributes a * (-1)^order phi^(order)(x); invert the sign
    return (lam, order, (-1) ** order * desired)


def descend_even(mu: SphericalMeasure) -> tuple[LineDistribution, LineDistribution]:
    """Restrict an odd-dimensional radial measure to an even line pair.

    Returns (nu, nu_hat) with nu the radial restriction (pairing
    <nu, phi> = c_0 phi(0) + sum w_m phi(sqrt(lambda_m))) and nu_hat its
    distributional Fourier transform, assembled from the declared
    Fourier side with the descent constants.
    """
    k = _check_descent(mu, minimum=1)
    nu_atoms = [_desired_to_atom(ex, 0, w) for (ex,), w in mu.terms]
    hat_atoms = {}
    for (ex,), w in mu.fourier_terms():
        lam = ex.value()
        if lam == 0:
            alpha, _ = descent_constants(0, k)
            _add_atom(hat_atoms, ex, k - 1, w * alpha)
        else:
            for j in range(0, (k - 1) // 2 + 1):
                _, beta = descent_constants(j, k)
                if beta == 0:
                    continue
                _add_atom(
                    hat_atoms, ex, j, w * beta * lam ** ((j - k + 1) / 2.0)
                )
    # the even restriction is a scalar eigendistribution only when the
    # descent is the identity (k = 1); higher k mixes derivative orders
    tag = mu.eigen if k == 1 else None
    nu = LineDistribution(tuple(nu_atoms), parity="even", eigen=tag)
    nu_hat = LineDistribution(_pack(hat_atoms), parity="even", eigen=tag)
    return nu, nu_hat


def descend_odd(mu: SphericalMeasure) -> tuple[LineDistribution, LineDistribution]:
    """Divide an odd-dimensional radial measure by x and restrict.

    nu pairs as c_0 phi'(0) + sum (w_m / sqrt(lambda_m)) phi(sqrt(lambda_m))
    against odd phi; nu_hat is its distributional Fourier transform,
    assembled from the declared Fourier side with the descent constants
    and an overall factor 2 pi i.  For an eigenmeasure with tag eps the
    output tags are eps and (eps + 3) mod 4.
    """
    k = _check_descent(mu, minimum=3)
    if not any(ex.value() == 0 for (ex,), _ in mu.terms):
        raise ValueError("odd descent needs a zero-radius term")
    nu_atoms = []
    for (ex,), w in mu.terms:
        lam = ex.value()
        if lam == 0:
            nu_atoms.append(_desired_to_atom(ex, 1, w))
        else:
            nu_atoms.append(_desired_to_atom(ex, 0, w / math.sqrt(lam)))
    hat_atoms = {}
    two_pi_i = 2j * math.pi
    for (ex,), w in mu.fourier_terms():
        lam = ex.value()
        if lam == 0:
            alpha, _ = descent_constants(0, k)
            _add_atom(hat_atoms, ex, k - 2, two_pi_i * w * alpha)
        else:
            for j in range(1, (k - 1) // 2 + 1):
                _, beta = descent_constants(j, k)
                _add_atom(
                    hat_atoms,
                    ex,
                    j - 1,
                    two_pi_i * w * beta * lam ** ((j - k + 1) / 2.0),
                )
    # for k = 3 the transform has the same atom shape as nu, so the
    # eigen tag propagates: nu_hat = i^{eps+3} nu; higher k mixes orders
    tag = None
    if mu.eigen is not None and k == 3:
        tag = (mu.eigen + 3) % 4
    nu = LineDistribution(tuple(nu_atoms), parity="odd", eigen=tag)
    nu_hat = LineDistribution(_pack(hat_atoms), parity="odd", eigen=tag)
    return nu, nu_hat


def _check_descent(mu: SphericalMeasure, minimum: int) -> int:
    if len(mu.dims) != 1:
        raise ValueError("descent needs a scalar measure")
    k = mu.dims[0]
    if k % 2 == 0 or k < minimum:
        raise ValueError("descent needs odd dimension k >= %d" % minimum)
    mu.fourier_terms()  # raises when no Fourier data is declared
    return k


def _add_atom(acc: dict, ex: Exponent, order: int, desired):
    key = (ex, order)
    acc[key] = acc.get(key, 0) + (-1) ** order * desired


def _pack(acc: dict) -> tuple:
    items = sorted(acc.items(), key=lambda kv: ((kv[0][0].surd, kv[0][0].q), kv[0][1]))
    return tuple((ex, order, a) for (ex, order), a in items if a != 0)


def odd_descent_k3_symbolic():
    """Exact simplification of the odd-descent transform in dimension 3.

    Builds the right-hand-side assembly of the odd summation formula for
    k = 3 with symbolic weights (c0h for the zero-radius weight, wh and
    lamh for a generic positive-radius term) and returns two dicts of
    desired pairing values keyed by (position, derivative order):

    * "assembled": -2 pi i (c0h alpha_3 phi^(1)(0) + wh beta_{1,3}
      lamh^{-1/2} phi^(0)(sqrt(lamh))),
    * "target": i (c0h phi'(0) + (wh / sqrt(lamh)) phi(sqrt(lamh))),

    which agree identically; the 2 pi factors cancel against the descent
    constants, leaving exact rational multiples of i.
    """
    c0h, wh, lamh = sp.symbols("c0h wh lamh", positive=True)
    alpha, _ = descent_constants(0, 3, exact=True)
    _, beta1 = descent_constants(1, 3, exact=True)
    factor = -2 * sp.pi * sp.I
    assembled = {
        ("0", 1): sp.simplify(factor * c0h * alpha),
        ("sqrt(lamh)", 0): sp.simplify(factor * wh * beta1 * lamh ** sp.Rational(-1, 2)),
    }
    target = {
        ("0", 1): sp.I * c0h,
        ("sqrt(lamh)", 0): sp.I * wh / sp.sqrt(lamh),
    }
    return assembled, target


def pair(obj, phi, tol: float = 1e-12):
    """Pairing <obj, phi> with a certified tail bound; returns (value, bound).

    Line distributions pair with PolyGaussians via derivatives at the
    atom positions; spherical measures pair with RadialPolyGaussians
    (or PolyGaussians when k = 1) via values at the sphere radii.
    """
    if isinstance(obj, LineDistribution):
        return _pair_line(obj, phi, tol)
    return _pair_measure(obj, phi, tol)


def _pair_line(nu: LineDistribution, phi: schwartz.PolyGaussian, tol: float):
    if nu.parity in ("even", "odd"):
        phi_par = schwartz.parity_of(phi)
        if phi_par == "mixed":
            raise ValueError("parity distribution needs a pure-parity test function")
        if phi_par != nu.parity:
            return 0j, 0.0
    top = max((j for _, j, _ in nu.atoms), default=0)
    fam = schwartz.derivative_family(phi, top)
    total = 0j
    for ex, j, a in nu.atoms:
        x = ex.sqrt_value()
        total += complex(a) * (-1) ** j * fam[j].evaluate(x)
    # atoms are finite; the budget reflects only the series truncation
    return total, 0.0


def _pair_measure(mu: SphericalMeasure, phi, tol: float):
    K = mu.total_dim()
    if isinstance(phi, schwartz.PolyGaussian):
        if K != 1:
            raise ValueError("a PolyGaussian pairs with a one-dimensional measure")
        if schwartz.parity_of(phi) == "odd":
            return 0j, 0.0
        radial = schwartz.RadialPolyGaussian(
            1, tuple(phi.poly[::2]), phi.a
        )
        phi = radial
    if phi.k != K:
        raise ValueError("test function dimension %d != measure dimension %d" % (phi.k, K))
    coeffs, a = phi._numeric()
    t = a.real
    C, p = mu.growth
    C_eff = C * sum(abs(c) for c in coeffs)
    p_eff = p + phi.degree()
    bound = _tail(C_eff, p_eff, mu.horizon, mu.gap, t)
    if not bound < tol:
        raise TruncationError(
            "pairing tail bound %.3g exceeds tolerance %.3g" % (bound, tol), bound
        )
    total = 0j
    for lams, w in mu.terms:
        lam = sum(ex.value() for ex in lams)
        total += complex(w) * phi.evaluate_radius(math.sqrt(lam))
    return total, bound


def tensor(mu: SphericalMeasure, nu: SphericalMeasure) -> SphericalMeasure:
    """Product measure on the concatenated dimension blocks."""
    terms = {}
    for lams1, w1 in mu.terms:
        for lams2, w2 in nu.terms:
            terms[lams1 + lams2] = w1 * w2
    packed = tuple(sorted(terms.items(), key=lambda kv: _sort_key(kv[0])))
    C1, p1 = mu.growth
    C2, p2 = nu.growth
    return SphericalMeasure(
        mu.dims + nu.dims,
        packed,
        growth=(C1 * C2, p1 + p2),
        horizon=min(mu.horizon, nu.horizon),
        gap=min(mu.gap, nu.gap),
    )


def diag_restrict(mu: SphericalMeasure, partition) -> SphericalMeasure:
    """Push forward along diagonal restriction of the coordinate blocks.

    partition is a sequence of index tuples covering range(len(dims));
    within each block, terms with equal total lambda merge, and since
    weights are volume-normalized series coefficients they simply add.
    """
    n = len(mu.dims)
    blocks = [tuple(b) for b in partition]
    flat = sorted(i for b in blocks for i in b)
    if flat != list(range(n)):
        raise ValueError("partition must cover each coordinate block exactly once")
    new_dims = tuple(sum(mu.dims[i] for i in b) for b in blocks)
    acc: dict = {}
    for lams, w in mu.terms:
        key = []
        for b in blocks:
            total_q = sum((lams[i].q for i in b), Fraction(0))
            surd = lams[b[0]].surd
            if any(lams[i].surd != surd for i in b):
                raise ValueError("cannot merge blocks with mixed surds")
            key.append(Exponent(total_q, surd))
        key = tuple(key)
        acc[key] = acc.get(key, 0) + w
    packed = tuple(
        (k, w) for k, w in sorted(acc.items(), key=lambda kv: _sort_key(kv[0])) if w != 0
    )
    C, p = mu.growth
    count = max(len(mu.terms), 1)
    return SphericalMeasure(
        new_dims,
        packed,
        growth=(C * count, p),
        horizon=mu.horizon,
        gap=min((abs(_key_val(a) - _key_val(b)) for a, b in zip(packed, packed[1:])), default=mu.gap)
        if len(packed) > 1
        else mu.gap,
    )


def _key_val(term) -> float:
    return sum(ex.value() for ex in term[0])


def _coeff_to_json(c):
    if isinstance(c, (int, Fraction)):
        f = Fraction(c)
        return {"re": "%d/%d" % (f.numerator, f.denominator), "im": "0/1"}
    z = complex(c)
    return {"re": z.real, "im": z.imag}


def _coeff_from_json(d):
    re, im = d["re"], d["im"]
    if isinstance(re, str):
        fre, fim = Fraction(re), Fraction(im)
        if fim == 0:
            return int(fre) if fre.denominator == 1 else fre
        return complex(fre, fim)
    return complex(re, im) if im else float(re)


def measure_to_json(mu: SphericalMeasure) -> str:
    """Serialize to the measure JSON schema with bit-exact rationals."""

    def term_obj(lams, w):
        obj = {
            "lambda": [
                {"num": ex.q.numerator, "den": ex.q.denominator, "surd": ex.surd}
                for ex in lams
            ]
        }
        obj.update(_coeff_to_json(w))
        return obj

    doc = {
        "dims": list(mu.dims),
        "terms": [term_obj(l, w) for l, w in mu.terms],
        "fourier": [term_obj(l, w) for l, w in mu.fourier_side]
        if mu.fourier_side is not None
        else None,
        "eigen": mu.eigen,
        "growth": list(mu.growth),
        "horizon": mu.horizon,
        "gap": mu.gap,
    }
    return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def measure_from_json(text: str) -> SphericalMeasure:
    doc = json.loads(text)

    def parse_terms(items):
        return tuple(
            (
                tuple(
                    Exponent(Fraction(e["num"], e["den"]), e["surd"])
                    for e in obj["lambda"]
                ),
                _coeff_from_json(obj),
            )
            for obj in items
        )

    return SphericalMeasure(
        tuple(doc["dims"]),
        parse_terms(doc["terms"]),
        growth=tuple(doc.get("growth", (1.0, 0.0))),
        horizon=doc.get("horizon", 400.0),
        gap=doc.get("gap", 1.0),
        fourier_side=parse_terms(doc["fourier"]) if doc.get("fourier") else None,
        eigen=doc.get("eigen"),
    )
