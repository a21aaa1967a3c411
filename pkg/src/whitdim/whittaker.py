"""Dual-side torus parameters and Whittaker-dimension computations.

Characters of twisted finite tori are represented entirely on the dual side,
as exact rational exponent vectors taken mod 1 (entry i is the coefficient of
the i-th dual basis covector).  A parameter carries the twisting Weyl element
w and satisfies q * theta = (w Fr)^T theta mod 1; the contribution of the
extension's central coordinate is stored but inert, since the Weyl group acts
trivially on it.

Three independent routes compute the same dimension for covers of GL_r:

* a bounded congruence scan (`wh_dim_glr_closed`),
* a literal root-of-unity scan in exact rationals (`wh_dim_oracle`),
* a Weyl-orbit search over coset representatives of the invariant lattice
  (`y_x_rho`), which also works for arbitrary root data.

Internally the orbit search runs over integers modulo a common denominator;
this is an implementation detail, all comparisons stay exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product as _cartesian
from math import gcd, lcm

from .cover import m_qr, y_qn
from .errors import GeneralPositionError, MathConstraintError
from .lattice import (
    congruence_kernel,
    fixed_sublattice,
    hermite_normal_form,
    identity_matrix,
    index,
    intersect,
    mat_mul,
    mat_vec,
    quotient_hnf,
    transpose,
)
from .root_datum import (
    simple_reflections,
    weyl_frobenius_fixed_lattice,
    weyl_group,
)


@dataclass(frozen=True)
class GLrCharacter:
    """A character of the degree-r unramified torus over F_q, as an exponent
    a against the canonical primitive (q^r - 1)-th root."""

    r: int
    q: int
    a: int

    def __post_init__(self):
        if self.r < 1 or self.q < 2:
            raise ValueError("need r >= 1 and q >= 2")
        if not 0 <= self.a < self.q ** self.r - 1:
            raise ValueError(f"exponent a must lie in [0, q^r - 1) = [0, {self.q ** self.r - 1})")


@dataclass(frozen=True)
class LusztigParameter:
    """Twisting Weyl element w (a matrix on Y) and dual exponents mod 1.

    ``central_exponent`` records the coordinate along the extension's extra
    summand; it is fixed by genuineness, the Weyl group acts trivially on it,
    and it never enters conjugacy tests.
    """

    w: tuple
    theta: tuple
    central_exponent: Fraction = Fraction(0)

    def __post_init__(self):
        w = tuple(tuple(int(x) for x in row) for row in self.w)
        theta = tuple(Fraction(t) % 1 for t in self.theta)
        object.__setattr__(self, "w", w)
        object.__setattr__(self, "theta", theta)
        object.__setattr__(self, "central_exponent", Fraction(self.central_exponent) % 1)
        d = len(theta)
        if len(w) != d or any(len(row) != d for row in w):
            raise ValueError("w must be a square matrix matching the length of theta")


# ---------------------------------------------------------------------------
# cached per-datum/per-cover structure

@lru_cache(maxsize=None)
def _weyl_elements(datum):
    return frozenset(weyl_group(datum).elements)


@lru_cache(maxsize=None)
def _weyl_x_transposes(datum):
    # the X-side orbit maps; transposing every element hits the same group
    return tuple(transpose(m) for m in weyl_group(datum).elements)


@lru_cache(maxsize=None)
def _invariant_lattice(datum):
    return weyl_frobenius_fixed_lattice(datum)


@lru_cache(maxsize=None)
def _coset_setup(cover):
    """Invariant lattice L, L0 = L meet Y_{Q,n}, the coset box of L/L0, and
    the twist covector gram . rep of each canonical representative."""
    lat = _invariant_lattice(cover.datum)
    sub = intersect(lat, y_qn(cover))
    box = quotient_hnf(lat, sub)
    combos = tuple(_cartesian(*[range(box[i][i]) for i in range(len(box))]))
    reps = []
    for combo in combos:
        vec = [0] * cover.rank
        for c, row in zip(combo, lat.basis):
            if c:
                vec = [a + c * b for a, b in zip(vec, row)]
        reps.append(tuple(vec))
    twists = tuple(mat_vec(cover.form.gram, rep) for rep in reps)
    return lat, sub, box, combos, tuple(reps), twists


@lru_cache(maxsize=None)
def _twisted_frobenius_transpose(datum, w):
    return transpose(mat_mul(w, datum.fr.matrix))


@lru_cache(maxsize=None)
def _twisted_stabilizer_transposes(datum, w):
    """Transposes of the nonidentity Weyl elements commuting with w * Fr."""
    wf = mat_mul(w, datum.fr.matrix)
    ident = identity_matrix(datum.rank)
    fixed = [m for m in weyl_group(datum).elements
             if m != ident and mat_mul(wf, m) == mat_mul(m, wf)]
    return tuple(transpose(m) for m in fixed)


def _int_context(cover, param):
    """Validate a parameter against a cover; exponents as integers mod D."""
    datum = cover.datum
    d = datum.rank
    if len(param.theta) != d:
        raise ValueError("parameter dimension does not match the cover")
    if param.w not in _weyl_elements(datum):
        raise MathConstraintError("w is not an element of the Weyl group")
    p = cover.p
    for t in param.theta + (param.central_exponent,):
        if gcd(t.denominator, p) != 1:
            raise MathConstraintError(
                f"exponent denominators must be coprime to the residue characteristic {p}")
    if (cover.q - 1) % param.central_exponent.denominator:
        raise MathConstraintError("central exponent is not annihilated by q - 1")
    denom = lcm(cover.n, *(t.denominator for t in param.theta))
    tnum = tuple(t.numerator * (denom // t.denominator) % denom for t in param.theta)
    wf_t = _twisted_frobenius_transpose(datum, param.w)
    for i in range(d):
        lhs = cover.q * tnum[i]
        rhs = sum(wf_t[i][j] * tnum[j] for j in range(d))
        if (lhs - rhs) % denom:
            raise MathConstraintError(
                "q * theta = (w Fr)^T theta mod 1 fails: not a character of the twisted torus")
    return denom, tnum


def _is_general_position_context(cover, param, denom, tnum):
    d = cover.rank
    for mt in _twisted_stabilizer_transposes(cover.datum, param.w):
        if all((sum(mt[i][j] * tnum[j] for j in range(d)) - tnum[i]) % denom == 0
               for i in range(d)):
            return False
    return True


# ---------------------------------------------------------------------------
# operations

def xi_of(cover, y):
    """The twisting exponent vector (gram . y) / n mod 1, for invariant y."""
    vec = tuple(int(v) for v in y)
    if not _invariant_lattice(cover.datum).contains_vector(vec):
        raise MathConstraintError("y is not fixed by the Weyl group and Frobenius")
    return tuple(Fraction(c, cover.n) % 1 for c in mat_vec(cover.form.gram, vec))


def glr_coxeter_parameter(r, q, a, n=None):
    """Parameter of the exponent-a character on the Coxeter torus of GL_r.

    w is the full cycle and theta_i = a * q^(i-1) / (q^r - 1) mod 1.  When the
    cover degree n is supplied, the central exponent is pinned to 1/n.
    """
    GLrCharacter(r, q, a)
    modulus = q ** r - 1
    w = tuple(tuple(1 if i == (j + 1) % r else 0 for j in range(r)) for i in range(r))
    nums = [a * pow(q, i, modulus) % modulus for i in range(r)]
    theta = tuple(Fraction(v, modulus) for v in nums)
    central = Fraction(1, n) if n else Fraction(0)
    assert all((q * nums[i] - nums[(i + 1) % r]) % modulus == 0 for i in range(r))
    return LusztigParameter(w, theta, central)


def is_general_position(param, cover=None):
    """No nontrivial twisted-Frobenius-fixed Weyl element fixes the parameter.

    For a :class:`GLrCharacter` this is the congruence test
    a * (q^s - 1) != 0 mod q^r - 1 for 0 < s < r; a :class:`LusztigParameter`
    requires the cover and runs the stabilizer test.  The two agree on
    Coxeter-torus inputs for GL_r; for twisting elements beyond those the
    stabilizer test is the definition used throughout this package.
    """
    if isinstance(param, GLrCharacter):
        modulus = param.q ** param.r - 1
        return all(param.a * (param.q ** s - 1) % modulus
                   for s in range(1, param.r))
    if cover is None:
        raise ValueError("testing a LusztigParameter requires the cover")
    denom, tnum = _int_context(cover, param)
    return _is_general_position_context(cover, param, denom, tnum)


def y_x_rho(cover, param):
    """The sublattice of invariant cocharacters whose twist fixes the
    parameter's geometric conjugacy class, plus its index.

    Enumerates the finite quotient of Y^{W x Fr} by its meet with Y_{Q,n} and
    keeps the cosets y whose twisted parameter theta + xi_y stays in the Weyl
    orbit of theta.  The passing set must form a subgroup of the quotient;
    anything else signals an internal inconsistency.
    """
    denom, tnum = _int_context(cover, param)
    if not _is_general_position_context(cover, param, denom, tnum):
        raise GeneralPositionError("parameter is not in general position")
    datum = cover.datum
    d = datum.rank
    lat, sub, box, combos, reps, twists = _coset_setup(cover)
    scale = denom // cover.n
    orbit = set()
    for mt in _weyl_x_transposes(datum):
        orbit.add(tuple(sum(mt[i][j] * tnum[j] for j in range(d)) % denom
                        for i in range(d)))
    passing = []
    for combo, twist in zip(combos, twists):
        target = tuple((t + scale * c) % denom for t, c in zip(tnum, twist))
        if target in orbit:
            passing.append(combo)

    total = len(combos)
    labels = set(passing)
    if (0,) * len(box) not in labels:
        raise RuntimeError("internal consistency: the trivial coset did not pass")
    if len(labels) not in (1, total):
        for c1 in passing:
            for c2 in passing:
                merged = tuple(a + b for a, b in zip(c1, c2))
                if _reduce_combo(merged, box) not in labels:
                    raise RuntimeError(
                        "internal consistency: passing cosets do not form a subgroup")
    if total % len(labels):
        raise RuntimeError("internal consistency: subgroup size does not divide the quotient")
    idx = total // len(labels)

    gens = list(sub.basis) + [rep for combo, rep in zip(combos, reps) if combo in labels]
    lattice = hermite_normal_form(gens, d)
    if index(lat, lattice) != idx:
        raise RuntimeError("internal consistency: lattice index mismatch")
    return lattice, idx


def _reduce_combo(combo, box):
    c = list(combo)
    for i, row in enumerate(box):
        f = c[i] // row[i]
        if f:
            for j in range(i, len(c)):
                c[j] -= f * row[j]
    return tuple(c)


def _check_glr_dim_args(r, q, n, a):
    if r < 1 or q < 2:
        raise ValueError("need r >= 1 and q >= 2")
    if n < 1 or (q - 1) % n:
        raise MathConstraintError(f"cover degree n = {n} must divide q - 1 = {q - 1}")
    char = GLrCharacter(r, q, a)
    if not is_general_position(char):
        raise GeneralPositionError(
            f"a = {a} is not in general position mod q^r - 1 = {q ** r - 1}")


def wh_dim_glr_closed(r, q, n, bold_p, bold_q, a):
    """Whittaker dimension for the exponent-a cuspidal datum on a GL_r cover.

    Smallest k > 0 with m * k * (q^r - 1)/n = a * (q^s - 1) mod q^r - 1 for
    some 0 <= s < r, where m = 2*bold_p + (r-1)*bold_q.  The minimum is at
    most (and divides) n / gcd(n, m).
    """
    _check_glr_dim_args(r, q, n, a)
    m = m_qr(r, bold_p, bold_q)
    modulus = q ** r - 1
    step = modulus // n
    bound = n // gcd(n, m)
    powers = [a * (pow(q, s, modulus) - 1) % modulus for s in range(r)]
    for k in range(1, bound + 1):
        lhs = m * k * step % modulus
        if lhs in powers:
            return k
    raise RuntimeError("internal consistency: scan exhausted below the divisibility bound")


def wh_dim_oracle(r, q, n, bold_p, bold_q, a):
    """Independent brute-force scan of the same minimum, in exact rationals.

    Tests e^(2 pi i m k / n) * theta_1 = theta_1^(q^s) literally, as equality
    of rationals mod 1, for k = 1, 2, ... up to a hard stop at n.
    """
    _check_glr_dim_args(r, q, n, a)
    m = m_qr(r, bold_p, bold_q)
    modulus = q ** r - 1
    theta1 = Fraction(a, modulus)
    targets = {(q ** s * theta1 - theta1) % 1 for s in range(r)}
    for k in range(1, n + 1):
        if Fraction(m * k, n) % 1 in targets:
            return k
    raise RuntimeError(
        "scan exhausted: no k <= n satisfied the congruence, which is impossible "
        "for a valid input and signals an implementation bug")


def squeeze_bounds(cover):
    """Divisor and multiple bounds for the dimension, as a pair (lower, upper).

    upper = [L : L meet Y_{Q,n}] and lower = [L : {y in L : B(y, y') in nZ
    for all y' in Y^W}], with L = Y^{W x Fr}; lower always divides upper.
    """
    datum = cover.datum
    d = datum.rank
    lat = _invariant_lattice(datum)
    upper = index(lat, intersect(lat, y_qn(cover)))
    weyl_fixed = fixed_sublattice(simple_reflections(datum), d)
    rows = [mat_vec(cover.form.gram, b) for b in weyl_fixed.basis]
    mid = intersect(lat, congruence_kernel(rows, cover.n, d))
    lower = index(lat, mid)
    return lower, upper


def enumerate_glr_table(r, q, n, bold_p, bold_q, max_order=10 ** 6):
    """Dimensions across all general-position classes of a GL_r cover.

    Groups exponents a by the geometric-conjugacy orbit a -> a*q mod q^r - 1
    (smallest member is the class representative) and returns
    (rows, histogram): rows are (representative, class size, dimension)
    triples in increasing representative order, histogram maps each dimension
    to its number of classes.
    """
    if r < 1 or q < 2:
        raise ValueError("need r >= 1 and q >= 2")
    modulus = q ** r - 1
    if modulus > max_order:
        raise ValueError(f"q^r - 1 = {modulus} exceeds the enumeration bound {max_order}")
    if n < 1 or (q - 1) % n:
        raise MathConstraintError(f"cover degree n = {n} must divide q - 1 = {q - 1}")
    rows = []
    histogram = {}
    for a in range(modulus):
        if not is_general_position(GLrCharacter(r, q, a)):
            continue
        orbit = {a * pow(q, s, modulus) % modulus for s in range(r)}
        if a != min(orbit):
            continue
        dim = wh_dim_glr_closed(r, q, n, bold_p, bold_q, a)
        rows.append((a, len(orbit), dim))
        histogram[dim] = histogram.get(dim, 0) + 1
    return tuple(rows), dict(sorted(histogram.items()))
