"""Exact arithmetic on Jordan types of p-nilpotent operators.

A linear operator t on a finite-dimensional vector space with t^p = 0
splits the space into Jordan blocks of sizes 1..p.  The *Jordan type* is
the multiplicity vector (a_1, ..., a_p) of that splitting.  Blocks of
size p are exactly the free summands over k[t]/(t^p); removing them
yields the *stable* type.

Everything in this module is a pure function on immutable data, using
arbitrary-precision integers only.  Jordan types serialize as JSON
``{"p": 5, "mult": [1, 0, 0, 1, 0]}`` (index 0 holds a_1) and print in
the compact grammar ``2[3]+[1]`` with blocks in descending size.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, Mapping

from .errors import ParseError, ValidationError

_TERM_RE = re.compile(r"(\d*)\s*\[\s*(\d+)\s*\]")


class DominanceResult(Enum):
    LESS = "Less"
    EQUAL = "Equal"
    GREATER = "Greater"
    INCOMPARABLE = "Incomparable"


class DominanceConvention(Enum):
    """Which family of partial sums drives the dominance comparison.

    IMAGE_DIM compares dim im t^j for j = 1..p; on types of equal total
    dimension this is the usual dominance order on partitions.  TAIL_DIM
    compares the total dimension of the blocks of size >= j instead,
    which yields a genuinely different relation.
    """

    IMAGE_DIM = "image"
    TAIL_DIM = "tail"


@dataclass(frozen=True)
class JordanType:
    """Multiplicity vector of Jordan blocks for a p-nilpotent operator.

    Attributes:
        p: nilpotency order; block sizes range over 1..p.
        mult: tuple of length p, ``mult[i-1]`` = multiplicity of block [i].
    """

    p: int
    mult: tuple[int, ...]

    def __post_init__(self):
        if not isinstance(self.p, int) or self.p < 2:
            raise ValidationError(f"p must be an integer >= 2, got {self.p!r}")
        mult = tuple(int(m) for m in self.mult)
        if len(mult) != self.p:
            raise ValidationError(
                f"multiplicity vector must have length p={self.p}, got {len(mult)}"
            )
        if any(m < 0 for m in mult):
            raise ValidationError(f"multiplicities must be >= 0, got {mult}")
        object.__setattr__(self, "mult", mult)

    # ---------------------------------------------------------------- build

    @classmethod
    def zero(cls, p: int) -> "JordanType":
        """The Jordan type of the zero module."""
        return cls(p, (0,) * p)

    @classmethod
    def block(cls, p: int, i: int, count: int = 1) -> "JordanType":
        """count copies of the single block [i]."""
        if not 1 <= i <= p:
            raise ValidationError(f"block size {i} out of range 1..{p}")
        mult = [0] * p
        mult[i - 1] = count
        return cls(p, tuple(mult))

    @classmethod
    def from_counts(cls, p: int, counts: Mapping[int, int]) -> "JordanType":
        """Build from a mapping block size -> multiplicity."""
        mult = [0] * p
        for i, m in counts.items():
            if not 1 <= i <= p:
                raise ValidationError(f"block size {i} out of range 1..{p}")
            mult[i - 1] += m
        return cls(p, tuple(mult))

    @classmethod
    def from_blocks(cls, p: int, sizes: Iterable[int]) -> "JordanType":
        """Build from an iterable of block sizes (with repetition)."""
        mult = [0] * p
        for i in sizes:
            if not 1 <= i <= p:
                raise ValidationError(f"block size {i} out of range 1..{p}")
            mult[i - 1] += 1
        return cls(p, tuple(mult))

    @classmethod
    def from_string(cls, p: int, text: str) -> "JordanType":
        """Parse the compact grammar ``(<m>? "[" <i> "]" ("+" ...)*)?``.

        The empty string denotes the zero module.  Raises ParseError with
        the offending position on malformed input.
        """
        mult = [0] * p
        if text.strip() == "":
            return cls(p, tuple(mult))
        for start, chunk in _split_terms(text):
            m = _TERM_RE.fullmatch(chunk.strip())
            if m is None:
                raise ParseError(
                    f"bad Jordan-type term {chunk.strip()!r} at position {start}"
                )
            count = int(m.group(1)) if m.group(1) else 1
            size = int(m.group(2))
            if not 1 <= size <= p:
                raise ParseError(
                    f"block size {size} out of range 1..{p} at position {start}"
                )
            mult[size - 1] += count
        return cls(p, tuple(mult))

    @classmethod
    def from_json_dict(cls, data: Mapping) -> "JordanType":
        try:
            p = data["p"]
            mult = data["mult"]
        except (KeyError, TypeError) as exc:
            raise ParseError(f"Jordan-type JSON needs 'p' and 'mult': {exc}") from exc
        if not isinstance(mult, (list, tuple)):
            raise ParseError("'mult' must be an array")
        return cls(int(p), tuple(int(m) for m in mult))

    def to_json_dict(self) -> dict:
        return {"p": self.p, "mult": list(self.mult)}

    # ------------------------------------------------------------- queries

    def multiplicity(self, i: int) -> int:
        """Multiplicity a_i of the block [i]."""
        if not 1 <= i <= self.p:
            raise ValidationError(f"block size {i} out of range 1..{self.p}")
        return self.mult[i - 1]

    def blocks(self) -> tuple[int, ...]:
        """All block sizes in descending order, with repetition."""
        out = []
        for i in range(self.p, 0, -1):
            out.extend([i] * self.mult[i - 1])
        return tuple(out)

    def dimension(self) -> int:
        """Total dimension sum(i * a_i)."""
        return sum((i + 1) * m for i, m in enumerate(self.mult))

    def is_zero(self) -> bool:
        return all(m == 0 for m in self.mult)

    def ker_dim(self, m: int) -> int:
        """Dimension of ker t^m, i.e. sum(min(i, m) * a_i), for 1 <= m <= p."""
        if not 1 <= m <= self.p:
            raise ValidationError(f"power m={m} out of range 1..{self.p}")
        return sum(min(i + 1, m) * a for i, a in enumerate(self.mult))

    def image_dim(self, m: int) -> int:
        """Dimension of im t^m, i.e. sum(max(i - m, 0) * a_i), for 0 <= m <= p."""
        if not 0 <= m <= self.p:
            raise ValidationError(f"power m={m} out of range 0..{self.p}")
        if m == 0:
            return self.dimension()
        return sum(max(i + 1 - m, 0) * a for i, a in enumerate(self.mult))

    def psi(self, m: int) -> int:
        """Kernel dimension of t^m on the projective-free part.

        Equals sum_{i<m} i*a_i + m*sum_{i=m}^{p-1} a_i, i.e.
        ker_dim(m) - m*a_p, and is defined for 1 <= m <= p-1.
        """
        if not 1 <= m <= self.p - 1:
            raise ValidationError(f"power m={m} out of range 1..{self.p - 1}")
        head = sum((i + 1) * a for i, a in enumerate(self.mult[: m - 1]))
        tail = sum(self.mult[m - 1 : self.p - 1])
        return head + m * tail

    # --------------------------------------------------------- derivations

    def stable_part(self) -> "JordanType":
        """Drop all blocks of size p."""
        return JordanType(self.p, self.mult[:-1] + (0,))

    def syzygy(self) -> "JordanType":
        """Kernel of the projective cover, blockwise: [i] -> [p-i].

        Blocks of size p are projective and are dropped (projective-free
        convention), so syzygy∘syzygy equals stable_part.
        """
        mult = [0] * self.p
        for i in range(1, self.p):
            mult[self.p - i - 1] = self.mult[i - 1]
        return JordanType(self.p, tuple(mult))

    def with_modulus(self, new_p: int) -> "JordanType":
        """Reinterpret the same block multiset at nilpotency order new_p."""
        if new_p < self.p:
            for i in range(new_p, self.p):
                if self.mult[i]:
                    raise ValidationError(
                        f"block [{i + 1}] does not fit below nilpotency order {new_p}"
                    )
        mult = [0] * new_p
        for i, a in enumerate(self.mult[: min(self.p, new_p)]):
            mult[i] = a
        return JordanType(new_p, tuple(mult))

    # ------------------------------------------------------------- algebra

    def __add__(self, other: "JordanType") -> "JordanType":
        """Direct sum."""
        if not isinstance(other, JordanType):
            return NotImplemented
        if other.p != self.p:
            raise ValidationError(f"cannot add types with p={self.p} and p={other.p}")
        return JordanType(self.p, tuple(a + b for a, b in zip(self.mult, other.mult)))

    def __mul__(self, k: int) -> "JordanType":
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            raise ValidationError("multiplicity factor must be >= 0")
        return JordanType(self.p, tuple(k * a for a in self.mult))

    __rmul__ = __mul__

    def __str__(self) -> str:
        terms = []
        for i in range(self.p, 0, -1):
            a = self.mult[i - 1]
            if a == 0:
                continue
            terms.append(f"[{i}]" if a == 1 else f"{a}[{i}]")
        return "+".join(terms)


def _split_terms(text: str):
    """Yield (start_position, chunk) for '+'-separated terms."""
    pos = 0
    for chunk in text.split("+"):
        yield pos, chunk
        pos += len(chunk) + 1


def restrict(i: int, j: int, p: int) -> JordanType:
    """Jordan type of the j-th power of a single block [i].

    Over the subalgebra generated by t^j the block [i] splits as
    (j-r)[a] + r[a+1] when i = a*j + r with 0 <= r < j <= i, and as
    i[1] when j > i.  The result carries its own nilpotency order
    ceil(p/j), the order of t^j, so projectivity over the subalgebra
    stays decidable.
    """
    if not 1 <= i <= p:
        raise ValidationError(f"block size i={i} out of range 1..{p}")
    if not 1 <= j <= p:
        raise ValidationError(f"power j={j} out of range 1..{p}")
    p_eff = max(2, -(-p // j))
    if j > i:
        return JordanType.from_counts(p_eff, {1: i})
    a, r = divmod(i, j)
    counts: dict[int, int] = {}
    if j - r:
        counts[a] = j - r
    if r:
        counts[a + 1] = r
    return JordanType.from_counts(p_eff, counts)


def restrict_type(jt: JordanType, j: int) -> JordanType:
    """Blockwise restriction of a whole type to the subalgebra of t^j.

    Additive over direct sums and dimension-preserving.
    """
    if not 1 <= j <= jt.p:
        raise ValidationError(f"power j={j} out of range 1..{jt.p}")
    p_eff = max(2, -(-jt.p // j))
    out = JordanType.zero(p_eff)
    for i, a in enumerate(jt.mult):
        if a:
            out = out + a * restrict(i + 1, j, jt.p)
    return out


def _dominance_key(jt: JordanType, convention: DominanceConvention) -> tuple[int, ...]:
    if convention is DominanceConvention.IMAGE_DIM:
        return tuple(jt.image_dim(j) for j in range(1, jt.p + 1))
    return tuple(
        sum((i + 1) * a for i, a in enumerate(jt.mult) if i + 1 >= j)
        for j in range(1, jt.p + 1)
    )


def dominance_compare(
    a: JordanType,
    b: JordanType,
    convention: DominanceConvention = DominanceConvention.IMAGE_DIM,
) -> DominanceResult:
    """Compare two types of equal dimension in the dominance order.

    GREATER means a dominates b.  Requires matching p and total
    dimension; raises ValidationError otherwise.
    """
    if a.p != b.p:
        raise ValidationError(f"modulus mismatch: p={a.p} vs p={b.p}")
    if a.dimension() != b.dimension():
        raise ValidationError(
            f"dimension mismatch: {a.dimension()} vs {b.dimension()}"
        )
    u = _dominance_key(a, convention)
    v = _dominance_key(b, convention)
    if u == v:
        return DominanceResult.EQUAL
    if all(x >= y for x, y in zip(u, v)):
        return DominanceResult.GREATER
    if all(x <= y for x, y in zip(u, v)):
        return DominanceResult.LESS
    return DominanceResult.INCOMPARABLE
