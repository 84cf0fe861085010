"""Bit vectors, reversible permutations, and GF(2) algebraic normal forms.

Conventions used throughout the package:

* Wires are listed in port order. The first-listed wire is bit index 0 and
  the least significant bit of the integer encoding of a vector. Rendered
  bit strings put bit 0 leftmost (first wire first).
* Permutation tables are exhaustive: ``table[i]`` is the image of ``i``.
  Widths are capped at ``MAX_WIDTH`` so every operation stays exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

MAX_WIDTH = 20  # a 2^20-entry table is the largest object we ever materialize


class WidthError(ValueError):
    """Width outside 1..MAX_WIDTH, or mismatched operand widths."""


class NonBijectiveError(ValueError):
    """A table that must be a bijection is not one."""


class DuplicateOutputError(NonBijectiveError):
    """Two truth-table rows share the same output vector."""


class MissingRowError(ValueError):
    """A truth table does not cover every input vector exactly once."""


def _check_width(width: int) -> None:
    if not isinstance(width, int) or not 1 <= width <= MAX_WIDTH:
        raise WidthError(f"width must be an integer in 1..{MAX_WIDTH}, got {width!r}")


@dataclass(frozen=True)
class BitWord:
    """Fixed-width vector of bits."""

    width: int
    bits: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_width(self.width)
        if len(self.bits) != self.width or any(b not in (0, 1) for b in self.bits):
            raise ValueError(f"expected {self.width} bits of 0/1, got {self.bits!r}")

    @classmethod
    def from_int(cls, value: int, width: int) -> "BitWord":
        _check_width(width)
        if not 0 <= value < (1 << width):
            raise ValueError(f"{value} does not fit in {width} bits")
        return cls(width, tuple((value >> i) & 1 for i in range(width)))

    @classmethod
    def from_string(cls, text: str) -> "BitWord":
        """Parse a bit string written first wire first (leftmost char is bit 0)."""
        if not text or any(ch not in "01" for ch in text):
            raise ValueError(f"not a bit string: {text!r}")
        return cls(len(text), tuple(int(ch) for ch in text))

    def to_int(self) -> int:
        return sum(b << i for i, b in enumerate(self.bits))

    def to_string(self) -> str:
        """Render first wire first (bit 0 leftmost)."""
        return "".join(str(b) for b in self.bits)

    def __xor__(self, other: "BitWord") -> "BitWord":
        if self.width != other.width:
            raise WidthError(f"width mismatch: {self.width} vs {other.width}")
        return BitWord(self.width, tuple(a ^ b for a, b in zip(self.bits, other.bits)))

    def __int__(self) -> int:
        return self.to_int()

    def __getitem__(self, index: int) -> int:
        return self.bits[index]

    def __len__(self) -> int:
        return self.width


@dataclass(frozen=True)
class TruthPerm:
    """Bijection on {0, ..., 2^width - 1} encoding a reversible function."""

    width: int
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        _check_width(self.width)
        size = 1 << self.width
        if len(self.table) != size:
            raise NonBijectiveError(
                f"table must have {size} entries, got {len(self.table)}"
            )
        if sorted(self.table) != list(range(size)):
            raise NonBijectiveError("table is not a bijection on its domain")

    @classmethod
    def identity(cls, width: int) -> "TruthPerm":
        _check_width(width)
        return cls(width, tuple(range(1 << width)))

    def apply(self, x: int) -> int:
        return self.table[x]

    def apply_word(self, x: BitWord) -> BitWord:
        if x.width != self.width:
            raise WidthError(f"word width {x.width} != permutation width {self.width}")
        return BitWord.from_int(self.table[x.to_int()], self.width)

    def is_identity(self) -> bool:
        return self.table == tuple(range(1 << self.width))


def perm_invert(p: TruthPerm) -> TruthPerm:
    """Inverse permutation: maps each output vector back to its input."""
    inv = [0] * len(p.table)
    for i, out in enumerate(p.table):
        inv[out] = i
    return TruthPerm(p.width, tuple(inv))


def perm_compose(p: TruthPerm, q: TruthPerm) -> TruthPerm:
    """Composition with p applied first: result(x) = q(p(x))."""
    if p.width != q.width:
        raise WidthError(f"width mismatch: {p.width} vs {q.width}")
    return TruthPerm(p.width, tuple(q.table[v] for v in p.table))


def perm_from_table(rows: Iterable[tuple[BitWord, BitWord]]) -> TruthPerm:
    """Build a permutation from explicit (input, output) truth-table rows.

    Requires all 2^n distinct input rows; outputs must form a bijection.
    """
    rows = list(rows)
    if not rows:
        raise MissingRowError("empty truth table")
    width = rows[0][0].width
    size = 1 << width
    table: list[int | None] = [None] * size
    seen_outputs: set[int] = set()
    for inp, out in rows:
        if inp.width != width or out.width != width:
            raise WidthError("all rows must share one width")
        i = inp.to_int()
        if table[i] is not None:
            raise MissingRowError(f"duplicate input row {inp.to_string()}")
        o = out.to_int()
        if o in seen_outputs:
            raise DuplicateOutputError(
                f"output {out.to_string()} produced by more than one input"
            )
        table[i] = o
        seen_outputs.add(o)
    if len(rows) != size or any(v is None for v in table):
        raise MissingRowError(f"expected {size} rows, got {len(rows)}")
    return TruthPerm(width, tuple(table))  # type: ignore[arg-type]


@dataclass(frozen=True)
class AnfPoly:
    """XOR of AND monomials over GF(2).

    A monomial is a frozenset of variable indices; the empty set is the
    constant-1 term. A term is present iff its ANF coefficient is 1.
    """

    vars: int
    monomials: frozenset[frozenset[int]]

    def __post_init__(self) -> None:
        for m in self.monomials:
            if any(not 0 <= v < self.vars for v in m):
                raise ValueError(f"monomial {set(m)} references variable out of range")

    def degree(self) -> int:
        return max((len(m) for m in self.monomials), default=0)


def anf_transform(truth: Sequence[int]) -> AnfPoly:
    """Moebius (butterfly) transform of a truth vector over GF(2).

    ``truth[x]`` is the function value at input ``x`` (integer encoding).
    """
    size = len(truth)
    if size == 0 or size & (size - 1):
        raise ValueError(f"truth vector length must be a power of two, got {size}")
    n = size.bit_length() - 1
    coeff = [v & 1 for v in truth]
    half = 1
    while half < size:
        for block in range(0, size, 2 * half):
            for i in range(block, block + half):
                coeff[i + half] ^= coeff[i]
        half *= 2
    monomials = frozenset(
        frozenset(i for i in range(n) if (mask >> i) & 1)
        for mask, c in enumerate(coeff)
        if c
    )
    return AnfPoly(n, monomials)


def anf_eval(poly: AnfPoly, x: BitWord) -> int:
    """Evaluate the polynomial at x: XOR over monomials of the AND of bits."""
    if x.width != poly.vars:
        raise WidthError(f"word width {x.width} != polynomial vars {poly.vars}")
    acc = 0
    for m in poly.monomials:
        acc ^= 1 if all(x.bits[v] for v in m) else 0
    return acc


def anf_to_truth(poly: AnfPoly) -> list[int]:
    """Tabulate the polynomial over all 2^vars inputs."""
    return [anf_eval(poly, BitWord.from_int(i, poly.vars)) for i in range(1 << poly.vars)]
