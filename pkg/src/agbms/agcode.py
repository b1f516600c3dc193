"""Code construction C(m), systematic encoding, error injection, syndromes."""

from __future__ import annotations

from dataclasses import dataclass, field

from . import linalg
from .curve import CurveSpec, Mono, Point
from .gf import GF, ZERO


@dataclass
class Word:
    """Length-n vector of log-encoded symbols with a role tag."""

    symbols: list[int]
    role: str = "codeword"  # codeword | received | error

    def __post_init__(self) -> None:
        self.symbols = list(self.symbols)


@dataclass
class CodeSpec:
    """The code C(m) on a curve over a field, with its evaluation points.

    d_G is the Goppa designed distance m - 2g + 2.  ``t_design`` is the
    Eq.-style target (m - 2g + 1)/2 when that is integral, while
    ``t_generic`` = floor((d_G - a)/2) is what the inverse-free pipeline
    corrects for generic errors with loops up to N = m.
    """

    curve: CurveSpec
    fld: GF
    m: int
    points: list[Point] = field(default_factory=list)

    def __post_init__(self) -> None:
        g = self.curve.genus
        if self.m <= 2 * g - 2:
            raise ValueError(f"m={self.m} must exceed 2g-2={2 * g - 2}")
        if not self.points:
            self.points = self.curve.points(self.fld)
        self.n = len(self.points)
        self.d_G = self.m - 2 * g + 2
        self.t_design = (self.m - 2 * g + 1) // 2 if (self.m - 2 * g + 1) % 2 == 0 else None
        self.t_generic = (self.d_G - self.curve.a) // 2
        # Monomial basis of L(m P_inf) and the wider syndrome index set.
        self.basis = self.curve.phi(0, self.curve.a, self.m)
        self.syndrome_domain = [
            n for n in self.curve.phi(0, 2 * self.curve.a - 1, self.m) if self._evaluable(n)
        ]

    def _evaluable(self, n: Mono) -> bool:
        """Monomial evaluable at every code point (Klein: regular at P_(1:0:0))."""
        return not self.curve.klein or 2 * n[0] >= n[1]

    @property
    def dim(self) -> int:
        return self.n - len(self.basis)

    def zero_word(self, role: str = "codeword") -> Word:
        return Word([ZERO] * self.n, role)

    def add_words(self, w1: Word, w2: Word, role: str = "received") -> Word:
        return Word([self.fld.add(a, b) for a, b in zip(w1.symbols, w2.symbols)], role)

    # -- encoding ----------------------------------------------------------

    def parity_check_matrix(self) -> linalg.Matrix:
        """Rows [z^l(P_j)] for l in the basis of L(m P_inf)."""
        return [
            [self.curve.eval_monomial(self.fld, n, p) for p in self.points] for n in self.basis
        ]

    def encode(self, message: list[int]) -> Word:
        """Systematic encoding: message symbols on free columns of rref(H),
        parity symbols solved on pivot columns so that H c = 0."""
        h = self.parity_check_matrix()
        red, pivots = linalg.rref(self.fld, h)
        if len(pivots) != len(self.basis):
            raise ValueError("parity-check matrix is rank-deficient")
        free = [j for j in range(self.n) if j not in pivots]
        if len(message) != len(free):
            raise ValueError(f"message length {len(message)} != code dimension {len(free)}")
        c = [ZERO] * self.n
        for j, sym in zip(free, message):
            c[j] = sym
        for r, pc in enumerate(pivots):
            acc = ZERO
            for j, sym in zip(free, message):
                acc = self.fld.add(acc, self.fld.mul(red[r][j], sym))
            c[pc] = acc  # char 2: parity = sum, no sign
        return Word(c, "codeword")

    # -- errors and syndromes -----------------------------------------------

    def inject_errors(self, word: Word, locs: list[int], vals: list[int]) -> Word:
        if len(locs) != len(set(locs)):
            raise ValueError("duplicate error locations")
        if len(locs) != len(vals):
            raise ValueError("locs and vals length mismatch")
        if any(v == ZERO for v in vals):
            raise ValueError("error values must be nonzero")
        out = Word(word.symbols[:], "received")
        for j, v in zip(locs, vals):
            out.symbols[j] = self.fld.add(out.symbols[j], v)
        return out

    def syndromes(self, word: Word) -> dict[Mono, int]:
        """u_l = sum_j r_j z^l(P_j) for every evaluable l in Phi(2a-1, m)."""
        if len(word.symbols) != self.n:
            raise ValueError("word length mismatch")
        out: dict[Mono, int] = {}
        for l in self.syndrome_domain:
            acc = ZERO
            for r, p in zip(word.symbols, self.points):
                if r != ZERO:
                    acc = self.fld.add(acc, self.fld.mul(r, self.curve.eval_monomial(self.fld, l, p)))
            out[l] = acc
        return out

    def full_syndromes_from_errors(
        self, locs: list[int], vals: list[int], B: int
    ) -> dict[Mono, int]:
        """Test-only table u_l on Phi(2a-1, B) straight from the error vector.

        A receiver only has Phi(2a-1, m); this supplies the longer table the
        Appendix-B checks need (and the direct-discrepancy oracle's shifted
        lookups), provided every monomial is evaluable at the error points.
        """
        out: dict[Mono, int] = {}
        pts = [self.points[j] for j in locs]
        for n2 in range(0, 2 * self.curve.a - 1):
            rem = B - n2 * self.curve.b
            if rem < 0:
                continue
            for n1 in range(rem // self.curve.a + 1):
                l = (n1, n2)
                acc = ZERO
                for v, p in zip(vals, pts):
                    acc = self.fld.add(acc, self.fld.mul(v, self.curve.eval_monomial(self.fld, l, p)))
                out[l] = acc
        return out

    def locate(self, xy: tuple[int, int]) -> int:
        """Index of the affine point with the given (x_log, y_log)."""
        for j, p in enumerate(self.points):
            if p.special is None and (p.x, p.y) == xy:
                return j
        raise KeyError(f"no rational point {xy}")
