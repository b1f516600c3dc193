"""Plane-curve machinery for one-point AG codes.

Covers C_a^b curves  y^a + e*x^b + sum chi_n x^n1 y^n2 = 0  (gcd(a,b)=1,
e != 0) plus the Klein quartic x*y^3 + x^3 + y = 0 as a flagged special
case.  Provides the pole-order combinatorics (Phi sets, l^(i) lookup, the
pairing index ibar), rational-point enumeration, monomial/polynomial
evaluation, canonical reduction modulo the curve, and formal derivatives
for error evaluation.

Monomials are (n1, n2) tuples; bivariate polynomials ("BiPoly") are dicts
mapping monomials to log-encoded coefficients with no zero entries stored.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd

from .gf import GF, ZERO, OpCounter

Mono = tuple[int, int]
BiPoly = dict[Mono, int]

KLEIN_SPECIAL = "(1:0:0)"


@dataclass(frozen=True)
class Point:
    """Rational point: affine (x, y) in log form, or a named non-affine point."""

    x: int
    y: int
    special: str | None = None


@dataclass
class CurveSpec:
    """C_a^b curve data (or Klein quartic when ``klein`` is set).

    ``e`` is the log coefficient of x^b and ``chi`` maps lower-order
    monomials (o(n) < ab) to their log coefficients.  For the Klein quartic
    the defining equation is fixed (x*y^3 + x^3 + y = 0 with (a, b) = (3, 2))
    and ``e``/``chi`` are ignored.
    """

    a: int
    b: int
    e: int
    chi: dict[Mono, int] = field(default_factory=dict)
    genus: int = 0
    klein: bool = False

    def __post_init__(self) -> None:
        if self.klein:
            if (self.a, self.b) != (3, 2):
                raise ValueError("Klein quartic requires (a, b) = (3, 2)")
            if self.genus != 3:
                raise ValueError("Klein quartic has genus 3")
            return
        if not 0 < self.a <= self.b or gcd(self.a, self.b) != 1:
            raise ValueError(f"need 0 < a <= b with gcd(a,b)=1, got a={self.a} b={self.b}")
        if self.e == ZERO:
            raise ValueError("leading coefficient e must be nonzero")
        expected = (self.a - 1) * (self.b - 1) // 2
        if self.genus != expected:
            raise ValueError(f"genus {self.genus} != (a-1)(b-1)/2 = {expected}")
        for n in self.chi:
            if self.pole_order(n) >= self.a * self.b:
                raise ValueError(f"chi term {n} has pole order >= ab")

    # -- monomial order ---------------------------------------------------

    def pole_order(self, n: Mono) -> int:
        return n[0] * self.a + n[1] * self.b

    @property
    def excluded(self) -> frozenset[Mono]:
        """Canonical-basis monomials removed on the Klein quartic."""
        return frozenset({(0, 1), (0, 2)}) if self.klein else frozenset()

    def in_function_ring(self, n: Mono) -> bool:
        """True when x^n1 y^n2 has no pole outside P_inf.

        On the Klein quartic y has a pole at the rational point P_(1:0:0)
        (x, y have valuations 2, -1 there), so z^n is admissible only when
        2*n1 >= n2.  On a pure C_a^b curve every monomial qualifies.
        """
        if not self.klein:
            return True
        return 2 * n[0] >= n[1]

    def phi(self, i: int, A: int, Aprime: int) -> list[Mono]:
        """Phi^(i)(A, A'): ring monomials with i <= n2 < i+A and o(n) <= A'.

        Sorted by (pole order, n2); Klein-inadmissible monomials are dropped.
        """
        if not 0 <= i < self.a:
            raise ValueError(f"i={i} outside [0, a)")
        out = []
        for n2 in range(i, i + A):
            rem = Aprime - n2 * self.b
            if rem < 0:
                continue
            for n1 in range(rem // self.a + 1):
                n = (n1, n2)
                if self.in_function_ring(n):
                    out.append(n)
        out.sort(key=lambda n: (self.pole_order(n), n[1]))
        return out

    def l_of(self, i: int, N: int) -> Mono | None:
        """The unique ring monomial in Phi^(i)(a) with pole order N, if any.

        Pole orders are injective on the window i <= n2 < i+a, so at most one
        candidate exists; a missing value is the paper's "*" gap entry.
        """
        if not 0 <= i < self.a:
            raise ValueError(f"i={i} outside [0, a)")
        for n2 in range(i, i + self.a):
            rem = N - n2 * self.b
            if rem >= 0 and rem % self.a == 0:
                n = (rem // self.a, n2)
                return n if self.in_function_ring(n) else None
        return None

    @property
    def b_inv(self) -> int:
        return pow(self.b, -1, self.a)

    def ibar(self, i: int, N: int) -> int:
        """Partner index: the unique 0 <= j < a with j = b^-1 N - i (mod a)."""
        return (self.b_inv * N - i) % self.a

    def count_nongaps(self, m: int) -> int:
        """|Phi(a, m)| on the ring basis = dim L(m P_inf) for m > 2g-2."""
        return len(self.phi(0, self.a, m))

    def basis_start(self, i: int) -> Mono:
        """Minimal ring monomial with n2 = i (the N=0 degree of F^(i))."""
        n1 = 0
        while not self.in_function_ring((n1, i)):
            n1 += 1
        return (n1, i)

    # -- points and evaluation --------------------------------------------

    def equation_at(self, field: GF, x: int, y: int) -> int:
        """D(x, y) in log form at an affine candidate point."""
        if self.klein:
            # x y^3 + x^3 + y
            t1 = field.mul(x, field.pow(y, 3))
            t2 = field.pow(x, 3)
            return field.add(field.add(t1, t2), y)
        acc = field.add(field.pow(y, self.a), field.mul(self.e, field.pow(x, self.b)))
        for (n1, n2), c in self.chi.items():
            term = field.mul(c, field.mul(field.pow(x, n1), field.pow(y, n2)))
            acc = field.add(acc, term)
        return acc

    def points(self, field: GF) -> list[Point]:
        """All rational code points: affine solutions of D = 0, then any
        special points (Klein's P_(1:0:0)), in a fixed reproducible order."""
        pts = [
            Point(x, y)
            for x in range(-1, field.q - 1)
            for y in range(-1, field.q - 1)
            if self.equation_at(field, x, y) == ZERO
        ]
        pts.sort(key=lambda p: (p.x, p.y))
        if self.klein:
            pts.append(Point(ZERO, ZERO, special=KLEIN_SPECIAL))
        return pts

    def eval_monomial(self, field: GF, n: Mono, p: Point) -> int:
        """z^n = x^n1 y^n2 at a rational point.

        At Klein's P_(1:0:0) the local expansions x = v^2(1+...), y = v^-1
        give z^n the valuation 2*n1 - n2, so the value is 1 when 2*n1 = n2,
        0 when 2*n1 > n2, and undefined (a pole) otherwise.
        """
        if p.special is None:
            return field.mul(field.pow(p.x, n[0]), field.pow(p.y, n[1]))
        val = 2 * n[0] - n[1]
        if val < 0:
            raise ValueError(f"monomial {n} has a pole at {p.special}")
        return 0 if val == 0 else ZERO

    def eval_poly(self, field: GF, poly: BiPoly, p: Point, ctr: OpCounter | None = None) -> int:
        acc = ZERO
        for n, c in poly.items():
            acc = field.add(acc, field.mul(c, self.eval_monomial(field, n, p), ctr), ctr)
        return acc

    # -- canonical form ----------------------------------------------------

    def _rewrite_ya(self, field: GF) -> BiPoly:
        """y^a (Klein: x*y^3) expressed in lower-n2 monomials, char 2."""
        if self.klein:
            # x y^3 = x^3 + y
            return {(3, 0): 0, (0, 1): 0}
        rw: BiPoly = {(self.b, 0): self.e}
        for n, c in self.chi.items():
            rw[n] = field.add(rw.get(n, ZERO), c)
        return {n: c for n, c in rw.items() if c != ZERO}

    def reduce(self, field: GF, raw: BiPoly) -> BiPoly:
        """Canonical form with n2 < a, rewriting via the curve equation.

        Preserves the function (hence pole order and every point value).  On
        the Klein quartic the rewrite x*y^3 -> x^3 + y needs an x factor, so
        terms y^k with k >= 3 and no x are rejected: they lie outside the
        function ring.  The result may still contain y or y^2 (evaluation-
        only use, e.g. derivative numerators); ring membership of a canonical
        polynomial is checked separately where required.
        """
        rw = self._rewrite_ya(field)
        work = {n: c for n, c in raw.items() if c != ZERO}
        out: BiPoly = {}
        while work:
            n, c = work.popitem()
            n1, n2 = n
            if n2 < self.a:
                out[n] = field.add(out.get(n, ZERO), c)
                if out[n] == ZERO:
                    del out[n]
                continue
            if self.klein:
                if n1 == 0:
                    raise ValueError(f"y^{n2} is not in the Klein function ring")
                base = (n1 - 1, n2 - 3)
            else:
                base = (n1, n2 - self.a)
            for rn, rc in rw.items():
                m = (base[0] + rn[0], base[1] + rn[1])
                cc = field.mul(c, rc)
                work[m] = field.add(work.get(m, ZERO), cc)
                if work[m] == ZERO:
                    del work[m]
        return out

    def poly_order(self, poly: BiPoly) -> int:
        """Pole order o(F) of a canonical polynomial; -1 for the zero poly."""
        return max((self.pole_order(n) for n in poly), default=-1)

    def poly_degree(self, poly: BiPoly) -> Mono | None:
        return max(poly, key=self.pole_order, default=None)

    def derivative(self, field: GF) -> tuple[BiPoly, BiPoly]:
        """(D_x, D_y) of the defining equation, canonical form, char 2."""
        if self.klein:
            # D = x y^3 + x^3 + y: D_x = y^3 + x^2 (not canonical in n2 < 3
            # until rewritten -- but y^3 alone cannot be rewritten, keep raw),
            # D_y = 3 x y^2 + 1 = x y^2 + 1.
            return {(0, 3): 0, (2, 0): 0}, {(1, 2): 0, (0, 0): 0}
        dx: BiPoly = {}
        dy: BiPoly = {}
        full: BiPoly = {(0, self.a): 0, (self.b, 0): self.e}
        for n, c in self.chi.items():
            full[n] = field.add(full.get(n, ZERO), c)
        for (n1, n2), c in full.items():
            if c == ZERO:
                continue
            if n1 % 2 == 1:
                dx[(n1 - 1, n2)] = field.add(dx.get((n1 - 1, n2), ZERO), c)
            if n2 % 2 == 1:
                dy[(n1, n2 - 1)] = field.add(dy.get((n1, n2 - 1), ZERO), c)
        dx = {n: c for n, c in dx.items() if c != ZERO}
        dy = {n: c for n, c in dy.items() if c != ZERO}
        return dx, dy

    def formal_derivative(self, field: GF, poly: BiPoly) -> tuple[BiPoly, BiPoly]:
        """d/dx along the curve as a (numerator, denominator) pair.

        F' = dF/dx + dF/dy * y' with y' = D_x / D_y.  When D_y is a nonzero
        constant the quotient folds into the numerator and the denominator
        is 1; otherwise (Klein) both parts are returned and the caller
        divides at evaluation time.  Char 2 throughout, so signs vanish and
        even powers differentiate to zero.
        """
        dFdx: BiPoly = {}
        dFdy: BiPoly = {}
        for (n1, n2), c in poly.items():
            if n1 % 2 == 1:
                k = (n1 - 1, n2)
                dFdx[k] = field.add(dFdx.get(k, ZERO), c)
            if n2 % 2 == 1:
                k = (n1, n2 - 1)
                dFdy[k] = field.add(dFdy.get(k, ZERO), c)
        Dx, Dy = self.derivative(field)
        if len(Dy) == 1 and (0, 0) in Dy:
            inv_dy = (field.q - 1 - Dy[(0, 0)]) % (field.q - 1)
            yprime = {n: field.mul(c, inv_dy) for n, c in Dx.items()}
            num = dict(dFdx)
            for n, c in _poly_mul(field, dFdy, yprime).items():
                num[n] = field.add(num.get(n, ZERO), c)
            num = {n: c for n, c in num.items() if c != ZERO}
            return self.reduce(field, num), {(0, 0): 0}
        num = _poly_mul(field, dFdx, Dy)
        for n, c in _poly_mul(field, dFdy, Dx).items():
            num[n] = field.add(num.get(n, ZERO), c)
        num = {n: c for n, c in num.items() if c != ZERO}
        return self.reduce(field, num), self.reduce(field, Dy)

    def eval_derivative(
        self,
        field: GF,
        deriv: tuple[BiPoly, BiPoly],
        p: Point,
        ctr: OpCounter | None = None,
    ) -> int:
        """Evaluate a (num, den) derivative pair at a point via inv_chain."""
        num, den = deriv
        nv = self.eval_poly(field, num, p, ctr)
        if den == {(0, 0): 0}:
            return nv
        dv = self.eval_poly(field, den, p, ctr)
        if dv == ZERO:
            raise ZeroDivisionError(f"derivative denominator vanishes at {p}")
        if nv == ZERO:
            return ZERO
        inv, _ = field.inv_chain(dv, ctr)
        return field.mul(nv, inv, ctr)


def _poly_mul(field: GF, p: BiPoly, q: BiPoly) -> BiPoly:
    out: BiPoly = {}
    for n, c in p.items():
        for m, d in q.items():
            k = (n[0] + m[0], n[1] + m[1])
            out[k] = field.add(out.get(k, ZERO), field.mul(c, d))
    return {n: c for n, c in out.items() if c != ZERO}


def elliptic_curve() -> CurveSpec:
    """y^2 + y = x^3 + x (genus 1), the paper's GF(16) demo curve."""
    return CurveSpec(a=2, b=3, e=0, chi={(0, 1): 0, (1, 0): 0}, genus=1)


def klein_curve() -> CurveSpec:
    """Klein quartic x y^3 + x^3 + y = 0 over GF(8) (genus 3)."""
    return CurveSpec(a=3, b=2, e=0, chi={}, genus=3, klein=True)


def hermitian_curve() -> CurveSpec:
    """y^4 + y = x^5 over GF(16) (genus 6)."""
    return CurveSpec(a=4, b=5, e=0, chi={(0, 1): 0}, genus=6)
