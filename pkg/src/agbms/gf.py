"""GF(2^w) arithmetic with log-encoded elements.

Elements are plain ints holding the exponent of a fixed primitive element
alpha: ``k`` means alpha^k and ``-1`` means zero.  This matches the notation
used throughout the decoder (register values, word files, error files), so
worked values can be compared directly against published tables.

Inversion is done by the square-and-multiply chain a^(q-2), costing exactly
2w-3 multiplications; this is the operation the inverse-free algorithm
removes from the decoding loop.
"""

from __future__ import annotations

from dataclasses import dataclass, field

ZERO = -1  # log encoding of the zero element


@dataclass
class OpCounter:
    """Field-operation tally for one measurement session.

    Routines that do field arithmetic accept one of these and bump it;
    sessions are single-owner and only reset explicitly.
    """

    muls: int = 0
    invs: int = 0
    adds: int = 0

    def reset(self) -> None:
        self.muls = 0
        self.invs = 0
        self.adds = 0


class GF:
    """GF(2^w) defined by a primitive polynomial bit mask.

    ``prim_poly`` has bit i set for the x^i term, e.g. 0b10011 encodes
    x^4 + x + 1 = 0 (alpha^4 = alpha + 1).  The polynomial must be primitive:
    alpha = x has to generate all q-1 nonzero elements, which is verified
    while the log/antilog tables are built.
    """

    def __init__(self, w: int, prim_poly: int):
        if not 2 <= w <= 16:
            raise ValueError(f"extension degree w={w} outside supported range [2, 16]")
        if prim_poly.bit_length() != w + 1:
            raise ValueError(f"prim_poly degree {prim_poly.bit_length() - 1} != w={w}")
        self.w = w
        self.prim_poly = prim_poly
        self.q = 1 << w

        self.exp = [0] * (self.q - 1)  # log -> vector
        self.log = [ZERO] * self.q  # vector -> log
        v = 1
        for k in range(self.q - 1):
            if self.log[v] != ZERO:
                raise ValueError(f"prim_poly {prim_poly:#b} is not primitive")
            self.exp[k] = v
            self.log[v] = k
            v <<= 1
            if v & self.q:
                v ^= prim_poly
        if v != 1:
            raise ValueError(f"prim_poly {prim_poly:#b} is not primitive")

    def __repr__(self) -> str:
        return f"GF(2^{self.w}, prim_poly={self.prim_poly:#b})"

    # -- element codecs -------------------------------------------------

    def to_vec(self, a: int) -> int:
        """Log form to polynomial (bit-vector) form."""
        return 0 if a == ZERO else self.exp[a]

    def from_vec(self, v: int) -> int:
        """Polynomial (bit-vector) form to log form."""
        return ZERO if v == 0 else self.log[v]

    # -- arithmetic ------------------------------------------------------

    def add(self, a: int, b: int, ctr: OpCounter | None = None) -> int:
        if ctr is not None:
            ctr.adds += 1
        return self.from_vec(self.to_vec(a) ^ self.to_vec(b))

    def mul(self, a: int, b: int, ctr: OpCounter | None = None) -> int:
        if ctr is not None:
            ctr.muls += 1
        if a == ZERO or b == ZERO:
            return ZERO
        return (a + b) % (self.q - 1)

    def pow(self, a: int, n: int) -> int:
        """a^n for n >= 0 (table exponentiation, not counted)."""
        if a == ZERO:
            return 0 if n == 0 else ZERO
        return (a * n) % (self.q - 1)

    def inv_chain(self, a: int, ctr: OpCounter | None = None) -> tuple[int, int]:
        """Inverse a^(q-2) by the squaring chain; returns (inverse, mul count).

        The chain squares w-1 times and multiplies by ``a`` w-2 times, so the
        count is always 2w-3.  Raises ZeroDivisionError on a = 0.
        """
        if a == ZERO:
            raise ZeroDivisionError("zero has no inverse in GF(2^w)")
        if ctr is not None:
            ctr.invs += 1
        count = 0
        acc = a  # a^(2^1 - 1)
        for _ in range(self.w - 2):
            acc = self.mul(acc, acc, ctr)  # square: a^(2^k - 1) -> a^(2^(k+1) - 2)
            acc = self.mul(acc, a, ctr)  # -> a^(2^(k+1) - 1)
            count += 2
        acc = self.mul(acc, acc, ctr)  # a^(2^w - 2) = a^-1
        count += 1
        assert count == 2 * self.w - 3
        return acc, count

    def nonzero(self) -> range:
        """Logs of all nonzero elements."""
        return range(self.q - 1)
