"""Binary circulant arithmetic via the polynomial ring GF(2)[x]/(x^r - 1).

An r x r binary circulant matrix is determined by its first row: row i is
the right cyclic shift of row 0 by i positions.  Under that convention the
map sending a circulant to the polynomial a(x) = sum_{j in support(row0)} x^j
is a ring isomorphism, so circulant add/multiply/invert reduce to polynomial
arithmetic modulo x^r - 1.  This module keeps rows as plain Python ints
(bit j of the int is entry j of the row) and implements:

* ``BitVector``       -- fixed-length immutable bit vectors,
* ``CirculantBlock``  -- one circulant, with +, *, transpose, inverse,
* ``BlockMatrix``     -- matrices of circulant blocks (used for the secret
                         scrambler and for generator/parity block layouts),
* ``sample_fixed_weight`` -- uniform fixed-weight vectors from a RandomStream.

Useful facts used throughout: transposing a circulant reverses the index of
every nonzero coefficient (j -> -j mod r); a circulant is invertible iff
gcd(a(x), x^r - 1) = 1, which requires odd row weight; and a row vector
times a circulant is again a polynomial product.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import isqrt

from .rng import RandomStream


class NotInvertibleError(ValueError):
    """Raised when a circulant block or block matrix has no inverse."""


# ---------------------------------------------------------------------------
# bit vectors


@dataclass(frozen=True)
class BitVector:
    """Immutable bit vector of fixed length, stored as an int.

    Bit j of ``value`` is coordinate j.  Packed byte form puts bit j at
    bit (j mod 8) of byte j // 8, i.e. little-endian within each byte,
    which is exactly ``int.to_bytes(..., "little")``.
    """

    length: int
    value: int = 0

    def __post_init__(self):
        if self.length < 0:
            raise ValueError("length must be nonnegative")
        if self.value < 0 or self.value >> self.length:
            raise ValueError("value has bits beyond the declared length")

    @classmethod
    def from_support(cls, length: int, positions) -> "BitVector":
        value = 0
        for p in positions:
            if not 0 <= p < length:
                raise ValueError(f"position {p} out of range for length {length}")
            value |= 1 << p
        return cls(length, value)

    @classmethod
    def from_bytes(cls, data: bytes, length: int) -> "BitVector":
        if len(data) != (length + 7) // 8:
            raise ValueError("byte string does not match declared bit length")
        value = int.from_bytes(data, "little")
        if value >> length:
            raise ValueError("padding bits beyond the declared length are set")
        return cls(length, value)

    def to_bytes(self) -> bytes:
        return self.value.to_bytes((self.length + 7) // 8, "little")

    @property
    def weight(self) -> int:
        return self.value.bit_count()

    def bit(self, j: int) -> int:
        if not 0 <= j < self.length:
            raise IndexError("bit index out of range")
        return (self.value >> j) & 1

    def support(self) -> tuple[int, ...]:
        out = []
        v = self.value
        while v:
            low = v & -v
            out.append(low.bit_length() - 1)
            v ^= low
        return tuple(out)

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ValueError("length mismatch")
        return BitVector(self.length, self.value ^ other.value)

    def concat(self, other: "BitVector") -> "BitVector":
        return BitVector(
            self.length + other.length, self.value | (other.value << self.length)
        )

    def slice(self, start: int, size: int) -> "BitVector":
        if start < 0 or size < 0 or start + size > self.length:
            raise ValueError("slice out of range")
        return BitVector(size, (self.value >> start) & ((1 << size) - 1))

    def chunks(self, size: int) -> tuple["BitVector", ...]:
        if size <= 0 or self.length % size:
            raise ValueError("length is not a multiple of chunk size")
        return tuple(
            self.slice(i, size) for i in range(0, self.length, size)
        )

    def rotated(self, shift: int) -> "BitVector":
        """Cyclic right shift: result bit j is input bit (j - shift) mod length."""
        return BitVector(self.length, _rot(self.value, shift, self.length))


# ---------------------------------------------------------------------------
# polynomial helpers on raw ints (coefficients of GF(2)[x])


def _rot(v: int, shift: int, r: int) -> int:
    shift %= r
    if shift == 0:
        return v
    mask = (1 << r) - 1
    return ((v << shift) | (v >> (r - shift))) & mask


def _mul_mod(a: int, b: int, r: int) -> int:
    """a(x) * b(x) mod (x^r - 1), schoolbook over the set bits.

    Iterates the lighter operand, which doubles as the sparse-operand path:
    a weight-w row costs w shift-xors regardless of the other row's density.
    """
    if a.bit_count() > b.bit_count():
        a, b = b, a
    acc = 0
    while a:
        low = a & -a
        acc ^= b << (low.bit_length() - 1)
        a ^= low
    mask = (1 << r) - 1
    return (acc & mask) ^ (acc >> r)


def _transpose_row(v: int, r: int) -> int:
    """First row of the transposed circulant: bit j moves to (r - j) mod r."""
    if r == 1 or v == 0:
        return v
    rev = int(format(v, f"0{r}b")[::-1], 2)  # j -> r - 1 - j
    return ((rev << 1) | (rev >> (r - 1))) & ((1 << r) - 1)  # then j -> j + 1


def _poly_divmod(a: int, b: int) -> tuple[int, int]:
    if b == 0:
        raise ZeroDivisionError("polynomial division by zero")
    q = 0
    db = b.bit_length()
    while a.bit_length() >= db:
        shift = a.bit_length() - db
        a ^= b << shift
        q |= 1 << shift
    return q, a


def _poly_mul(a: int, b: int) -> int:
    acc = 0
    if a.bit_count() > b.bit_count():
        a, b = b, a
    while a:
        low = a & -a
        acc ^= b << (low.bit_length() - 1)
        a ^= low
    return acc


def _poly_gcd(a: int, b: int) -> int:
    while b:
        a, b = b, _poly_divmod(a, b)[1]
    return a


def _inverse_mod(a: int, r: int) -> int:
    """Inverse of a(x) modulo x^r - 1 by the extended Euclidean algorithm.

    Raises NotInvertibleError when gcd(a, x^r - 1) != 1; even-weight rows
    always fail because x + 1 divides both.
    """
    modulus = (1 << r) | 1  # x^r + 1 == x^r - 1 over GF(2)
    if a == 0:
        raise NotInvertibleError("zero row has no inverse")
    r0, r1 = modulus, a
    t0, t1 = 0, 1
    while r1:
        q, rem = _poly_divmod(r0, r1)
        r0, r1 = r1, rem
        t0, t1 = t1, t0 ^ _poly_mul(q, t1)
    if r0 != 1:
        raise NotInvertibleError("row polynomial shares a factor with x^r - 1")
    return _poly_divmod(t0, modulus)[1]


# ---------------------------------------------------------------------------
# circulant blocks


@dataclass(frozen=True)
class CirculantBlock:
    """An r x r binary circulant identified with its first row."""

    r: int
    row0: BitVector

    def __post_init__(self):
        if self.r < 1:
            raise ValueError("r must be positive")
        if self.row0.length != self.r:
            raise ValueError("row length differs from block size")

    @classmethod
    def zero(cls, r: int) -> "CirculantBlock":
        return cls(r, BitVector(r, 0))

    @classmethod
    def identity(cls, r: int) -> "CirculantBlock":
        return cls(r, BitVector(r, 1))

    @classmethod
    def from_support(cls, r: int, positions) -> "CirculantBlock":
        return cls(r, BitVector.from_support(r, positions))

    @property
    def weight(self) -> int:
        return self.row0.weight

    def is_zero(self) -> bool:
        return self.row0.value == 0

    def __add__(self, other: "CirculantBlock") -> "CirculantBlock":
        if self.r != other.r:
            raise ValueError("block size mismatch")
        return CirculantBlock(self.r, self.row0 ^ other.row0)

    def __mul__(self, other: "CirculantBlock") -> "CirculantBlock":
        if self.r != other.r:
            raise ValueError("block size mismatch")
        return CirculantBlock(
            self.r, BitVector(self.r, _mul_mod(self.row0.value, other.row0.value, self.r))
        )

    def transpose(self) -> "CirculantBlock":
        return CirculantBlock(
            self.r, BitVector(self.r, _transpose_row(self.row0.value, self.r))
        )

    def inverse(self) -> "CirculantBlock":
        return CirculantBlock(
            self.r, BitVector(self.r, _inverse_mod(self.row0.value, self.r))
        )

    def row(self, i: int) -> BitVector:
        """Row i of the expanded matrix (right shift of row 0 by i)."""
        return self.row0.rotated(i)


def vec_mul(v: BitVector, block: CirculantBlock) -> BitVector:
    """Row vector times circulant; equals the polynomial product v(x)a(x)."""
    if v.length != block.r:
        raise ValueError("vector length differs from block size")
    return BitVector(block.r, _mul_mod(v.value, block.row0.value, block.r))


# ---------------------------------------------------------------------------
# block matrices


@dataclass(frozen=True)
class BlockMatrix:
    """Matrix of circulant blocks, all of the same size r."""

    blocks: tuple[tuple[CirculantBlock, ...], ...]

    def __post_init__(self):
        if not self.blocks or not self.blocks[0]:
            raise ValueError("block matrix must be nonempty")
        cols = len(self.blocks[0])
        r = self.blocks[0][0].r
        for row in self.blocks:
            if len(row) != cols:
                raise ValueError("ragged block rows")
            for b in row:
                if b.r != r:
                    raise ValueError("mixed block sizes")

    @property
    def block_rows(self) -> int:
        return len(self.blocks)

    @property
    def block_cols(self) -> int:
        return len(self.blocks[0])

    @property
    def r(self) -> int:
        return self.blocks[0][0].r

    @classmethod
    def identity(cls, size: int, r: int) -> "BlockMatrix":
        return cls(
            tuple(
                tuple(
                    CirculantBlock.identity(r) if i == j else CirculantBlock.zero(r)
                    for j in range(size)
                )
                for i in range(size)
            )
        )

    def __matmul__(self, other: "BlockMatrix") -> "BlockMatrix":
        if self.block_cols != other.block_rows or self.r != other.r:
            raise ValueError("block shape mismatch")
        rows = []
        for i in range(self.block_rows):
            row = []
            for j in range(other.block_cols):
                acc = CirculantBlock.zero(self.r)
                for t in range(self.block_cols):
                    acc = acc + self.blocks[i][t] * other.blocks[t][j]
                row.append(acc)
            rows.append(tuple(row))
        return BlockMatrix(tuple(rows))

    def __add__(self, other: "BlockMatrix") -> "BlockMatrix":
        if (self.block_rows, self.block_cols, self.r) != (
            other.block_rows,
            other.block_cols,
            other.r,
        ):
            raise ValueError("block shape mismatch")
        return BlockMatrix(
            tuple(
                tuple(a + b for a, b in zip(ra, rb))
                for ra, rb in zip(self.blocks, other.blocks)
            )
        )

    def transpose(self) -> "BlockMatrix":
        return BlockMatrix(
            tuple(
                tuple(self.blocks[i][j].transpose() for i in range(self.block_rows))
                for j in range(self.block_cols)
            )
        )

    def vec_mul(self, v: BitVector) -> BitVector:
        """Row vector (block_rows * r bits) times this matrix."""
        if v.length != self.block_rows * self.r:
            raise ValueError("vector length mismatch")
        parts = v.chunks(self.r)
        out = BitVector(0, 0)
        for j in range(self.block_cols):
            acc = BitVector(self.r, 0)
            for i in range(self.block_rows):
                acc = acc ^ vec_mul(parts[i], self.blocks[i][j])
            out = out.concat(acc)
        return out

    def inverse(self) -> "BlockMatrix":
        """Block Gauss-Jordan over the circulant ring.

        Pivots must themselves be invertible circulants; rows are swapped to
        find one, and the matrix is rejected if no candidate pivot in the
        column inverts.  That is slightly stricter than GF(2) invertibility
        of the expanded matrix, which callers handle by resampling.
        """
        if self.block_rows != self.block_cols:
            raise NotInvertibleError("only square block matrices invert")
        size, r = self.block_rows, self.r
        work = [list(row) for row in self.blocks]
        out = [list(row) for row in BlockMatrix.identity(size, r).blocks]
        for col in range(size):
            pivot_inv = None
            for i in range(col, size):
                try:
                    pivot_inv = work[i][col].inverse()
                except NotInvertibleError:
                    continue
                if i != col:
                    work[col], work[i] = work[i], work[col]
                    out[col], out[i] = out[i], out[col]
                break
            if pivot_inv is None:
                raise NotInvertibleError("no invertible pivot block in column")
            work[col] = [pivot_inv * b for b in work[col]]
            out[col] = [pivot_inv * b for b in out[col]]
            for i in range(size):
                if i == col or work[i][col].is_zero():
                    continue
                f = work[i][col]
                work[i] = [a + f * b for a, b in zip(work[i], work[col])]
                out[i] = [a + f * b for a, b in zip(out[i], out[col])]
        return BlockMatrix(tuple(tuple(row) for row in out))


# ---------------------------------------------------------------------------
# sampling


def sample_fixed_weight(rng: RandomStream, n: int, t: int) -> BitVector:
    """Uniform weight-t vector of length n.

    Draws ceil(log2 n)-bit position candidates from the stream, rejecting
    values >= n and repeats, until t distinct positions are chosen.  With
    t = 0 no bits are consumed.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not 0 <= t <= n:
        raise ValueError("weight must lie in [0, n]")
    nbits = (n - 1).bit_length()
    value = 0
    remaining = t
    while remaining:
        candidate = rng.take_bits(nbits)
        if candidate >= n:
            continue
        bit = 1 << candidate
        if value & bit:
            continue
        value |= bit
        remaining -= 1
    return BitVector(n, value)
