"""Exact linear algebra over GF(2), over the Laurent ring GF(2)[T, T^-1],
and over its fraction field.

GF(2) matrices are sparse position sets; elimination runs on Python-int
bitmasks so every computation is exact.  Laurent polynomials are frozen
exponent-support sets (a set of exponents whose coefficient is 1).  The
Laurent ring is Euclidean once unit powers of T are stripped, which is
what the Smith reduction and the division steps rely on.

No floating point is used anywhere in this module.
"""

from __future__ import annotations

from dataclasses import dataclass


class CompositionNonzero(Exception):
    """Raised when d_out composed with d_in is not the zero map."""


def _mask_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def vector_mask(vec) -> int:
    """Pack an index set (or iterable of indices) into a bitmask."""
    out = 0
    for i in vec:
        out |= 1 << i
    return out


def _mask_rank(masks) -> int:
    pivots: dict[int, int] = {}
    rank = 0
    for m in masks:
        while m:
            lead = m.bit_length() - 1
            p = pivots.get(lead)
            if p is None:
                pivots[lead] = m
                rank += 1
                break
            m ^= p
    return rank


class F2Span:
    """Incremental GF(2) span with reduction tracking.

    Vectors are bitmask ints.  Vectors added with a tag are remembered, and
    `coords` later expresses a dependent vector as a combination of tagged
    vectors modulo the untagged ones.  This is exactly the "reduce against
    boundaries, read off homology coordinates" step, provided untagged
    (boundary) vectors are added before tagged (representative) ones.
    """

    def __init__(self):
        self._pivots: dict[int, tuple[int, int]] = {}
        self.size = 0

    def reduce(self, vec: int) -> tuple[int, int]:
        combo = 0
        while vec:
            lead = vec.bit_length() - 1
            hit = self._pivots.get(lead)
            if hit is None:
                return vec, combo
            vec ^= hit[0]
            combo ^= hit[1]
        return 0, combo

    def add(self, vec: int, tag: int | None = None) -> bool:
        """Add vec to the span; returns True if it was independent."""
        residue, combo = self.reduce(vec)
        if residue == 0:
            return False
        if tag is not None:
            combo ^= 1 << tag
        self._pivots[residue.bit_length() - 1] = (residue, combo)
        self.size += 1
        return True

    def contains(self, vec: int) -> bool:
        return self.reduce(vec)[0] == 0

    def coords(self, vec: int) -> int | None:
        """Tag-combination expressing vec, or None if vec is independent."""
        residue, combo = self.reduce(vec)
        return combo if residue == 0 else None


@dataclass(frozen=True)
class F2Matrix:
    """Sparse GF(2) matrix: a frozenset of (row, col) positions equal to 1."""

    rows: int
    cols: int
    entries: frozenset = frozenset()

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimensions")
        if not isinstance(self.entries, frozenset):
            object.__setattr__(self, "entries", frozenset(self.entries))
        for r, c in self.entries:
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValueError(f"entry {(r, c)} outside {self.rows}x{self.cols} matrix")

    @classmethod
    def from_entries(cls, rows: int, cols: int, positions) -> "F2Matrix":
        """Strict constructor: a repeated position is an error, not a cancellation."""
        seen = set()
        for pos in positions:
            pos = (int(pos[0]), int(pos[1]))
            if pos in seen:
                raise ValueError(f"duplicate position {pos}")
            seen.add(pos)
        return cls(rows, cols, frozenset(seen))

    @classmethod
    def from_toggles(cls, rows: int, cols: int, positions) -> "F2Matrix":
        """XOR-accumulating constructor: repeated positions cancel mod 2."""
        acc: set = set()
        for pos in positions:
            pos = (int(pos[0]), int(pos[1]))
            if pos in acc:
                acc.discard(pos)
            else:
                acc.add(pos)
        return cls(rows, cols, frozenset(acc))

    @classmethod
    def zero(cls, rows: int, cols: int) -> "F2Matrix":
        return cls(rows, cols, frozenset())

    @classmethod
    def identity(cls, n: int) -> "F2Matrix":
        return cls(n, n, frozenset((i, i) for i in range(n)))

    def entry(self, r: int, c: int) -> bool:
        return (r, c) in self.entries

    def is_zero(self) -> bool:
        return not self.entries

    def column_masks(self) -> list[int]:
        out = [0] * self.cols
        for r, c in self.entries:
            out[c] |= 1 << r
        return out

    def row_masks(self) -> list[int]:
        out = [0] * self.rows
        for r, c in self.entries:
            out[r] |= 1 << c
        return out

    def transpose(self) -> "F2Matrix":
        return F2Matrix(self.cols, self.rows, frozenset((c, r) for r, c in self.entries))

    def add(self, other: "F2Matrix") -> "F2Matrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in add")
        return F2Matrix(self.rows, self.cols, self.entries ^ other.entries)

    __add__ = add

    def mul(self, other: "F2Matrix") -> "F2Matrix":
        """Matrix product self @ other over GF(2)."""
        if self.cols != other.rows:
            raise ValueError("shape mismatch in mul")
        my_cols = self.column_masks()
        positions = []
        for j, om in enumerate(other.column_masks()):
            acc = 0
            for i in _mask_bits(om):
                acc ^= my_cols[i]
            for r in _mask_bits(acc):
                positions.append((r, j))
        return F2Matrix(self.rows, other.cols, frozenset(positions))

    __matmul__ = mul

    def apply(self, col_mask: int) -> int:
        """Image of a column vector given as a bitmask over column indices."""
        cols = self.column_masks()
        acc = 0
        for i in _mask_bits(col_mask):
            acc ^= cols[i]
        return acc


def submatrix(m: F2Matrix, row_indices, col_indices) -> F2Matrix:
    """Restriction of m to the given rows and columns, reindexed from 0."""
    rmap = {r: i for i, r in enumerate(row_indices)}
    cmap = {c: i for i, c in enumerate(col_indices)}
    ents = [(rmap[r], cmap[c]) for r, c in m.entries if r in rmap and c in cmap]
    return F2Matrix(len(rmap), len(cmap), frozenset(ents))


def rank_f2(m: F2Matrix) -> int:
    return _mask_rank(m.column_masks())


def rank_f2_span(masks) -> int:
    """Rank of the span of the given bitmask vectors."""
    return _mask_rank(masks)


def rank_f2_modulo(masks, base_masks) -> int:
    """dim(span(masks + base) / span(base))."""
    span = F2Span()
    for b in base_masks:
        span.add(b)
    count = 0
    for v in masks:
        if span.add(v):
            count += 1
    return count


def kernel_basis_f2(m: F2Matrix) -> list[frozenset]:
    """Basis of ker(m); each vector is the frozenset of coordinates equal to 1.

    Deterministic: columns are processed left to right, so the basis is
    ordered by the leading (rightmost new) column index.
    """
    pivots: dict[int, tuple[int, int]] = {}
    basis: list[frozenset] = []
    for j, col in enumerate(m.column_masks()):
        combo = 1 << j
        placed = False
        while col:
            lead = col.bit_length() - 1
            hit = pivots.get(lead)
            if hit is None:
                pivots[lead] = (col, combo)
                placed = True
                break
            col ^= hit[0]
            combo ^= hit[1]
        if not placed:
            basis.append(frozenset(_mask_bits(combo)))
    return basis


def homology_dim_f2(d_in: F2Matrix, d_out: F2Matrix) -> int:
    """dim ker(d_out) - rank(d_in) for a two-step complex  . --d_in--> . --d_out--> .

    Raises CompositionNonzero unless d_out @ d_in = 0.
    """
    if d_out.cols != d_in.rows:
        raise ValueError("middle dimensions disagree")
    if not d_out.mul(d_in).is_zero():
        raise CompositionNonzero("d_out . d_in != 0")
    return (d_out.cols - rank_f2(d_out)) - rank_f2(d_in)


# ---------------------------------------------------------------------------
# Laurent polynomials over GF(2)


@dataclass(frozen=True)
class LaurentPoly:
    """Polynomial in T and T^-1 over GF(2), stored as its exponent support."""

    support: frozenset = frozenset()

    def __post_init__(self):
        if not isinstance(self.support, frozenset):
            object.__setattr__(self, "support", frozenset(self.support))
        for e in self.support:
            if not isinstance(e, int):
                raise ValueError("exponents must be ints")

    @classmethod
    def zero(cls) -> "LaurentPoly":
        return cls(frozenset())

    @classmethod
    def one(cls) -> "LaurentPoly":
        return cls(frozenset({0}))

    @classmethod
    def t(cls) -> "LaurentPoly":
        return cls(frozenset({1}))

    @classmethod
    def monomial(cls, k: int) -> "LaurentPoly":
        return cls(frozenset({k}))

    @classmethod
    def from_exponents(cls, exponents) -> "LaurentPoly":
        """Build from an exponent list; repeats cancel mod 2."""
        acc: set[int] = set()
        for e in exponents:
            if e in acc:
                acc.discard(e)
            else:
                acc.add(e)
        return cls(frozenset(acc))

    @property
    def is_zero(self) -> bool:
        return not self.support

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        return LaurentPoly(self.support ^ other.support)

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        if self.is_zero or other.is_zero:
            return LaurentPoly.zero()
        acc: set[int] = set()
        for a in self.support:
            for b in other.support:
                e = a + b
                if e in acc:
                    acc.discard(e)
                else:
                    acc.add(e)
        return LaurentPoly(frozenset(acc))

    def shifted(self, k: int) -> "LaurentPoly":
        """Multiplication by the unit T^k."""
        return LaurentPoly(frozenset(e + k for e in self.support))

    @property
    def min_exp(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no exponents")
        return min(self.support)

    @property
    def max_exp(self) -> int:
        if self.is_zero:
            raise ValueError("zero polynomial has no exponents")
        return max(self.support)

    @property
    def span(self) -> int:
        """max_exp - min_exp; the Euclidean size up to units."""
        return self.max_exp - self.min_exp

    def unit_normalized(self) -> "LaurentPoly":
        """Strip the unit T^k so the constant term is nonzero."""
        if self.is_zero:
            return self
        return self.shifted(-self.min_exp)

    def at_one(self) -> int:
        """Value at T = 1 in GF(2)."""
        return len(self.support) & 1

    def __str__(self) -> str:
        if self.is_zero:
            return "0"
        parts = []
        for e in sorted(self.support):
            if e == 0:
                parts.append("1")
            elif e == 1:
                parts.append("T")
            else:
                parts.append(f"T^{e}")
        return " + ".join(parts)


def laurent_divmod(a: LaurentPoly, b: LaurentPoly) -> tuple[LaurentPoly, LaurentPoly]:
    """Division a = q*b + r with span(r) < span(b) (or r = 0).

    Works by stripping units, dividing in GF(2)[T] on int bitmasks, then
    restoring the unit shifts.
    """
    if b.is_zero:
        raise ZeroDivisionError("division by zero polynomial")
    if a.is_zero:
        return LaurentPoly.zero(), LaurentPoly.zero()
    sa, sb = a.min_exp, b.min_exp
    abits = vector_mask(e - sa for e in a.support)
    bbits = vector_mask(e - sb for e in b.support)
    q = 0
    while abits and abits.bit_length() >= bbits.bit_length():
        shift = abits.bit_length() - bbits.bit_length()
        q ^= 1 << shift
        abits ^= bbits << shift
    quot = LaurentPoly(frozenset(e + sa - sb for e in _mask_bits(q)))
    rem = LaurentPoly(frozenset(e + sa for e in _mask_bits(abits)))
    return quot, rem


def laurent_divides(b: LaurentPoly, a: LaurentPoly) -> bool:
    """True when b divides a in GF(2)[T, T^-1]."""
    if b.is_zero:
        return a.is_zero
    return laurent_divmod(a, b)[1].is_zero


@dataclass(frozen=True)
class LaurentMatrix:
    """Sparse matrix with LaurentPoly entries; zero entries are omitted."""

    rows: int
    cols: int
    entries: tuple = ()

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("negative matrix dimensions")
        seen = set()
        for r, c, p in self.entries:
            if not (0 <= r < self.rows and 0 <= c < self.cols):
                raise ValueError(f"entry {(r, c)} outside {self.rows}x{self.cols} matrix")
            if (r, c) in seen:
                raise ValueError(f"duplicate position {(r, c)}")
            seen.add((r, c))
            if not isinstance(p, LaurentPoly) or p.is_zero:
                raise ValueError("entries must be nonzero LaurentPoly values")

    @classmethod
    def from_dict(cls, rows: int, cols: int, d) -> "LaurentMatrix":
        ents = tuple(
            (r, c, p)
            for (r, c), p in sorted(d.items())
            if not p.is_zero
        )
        return cls(rows, cols, ents)

    @classmethod
    def from_f2(cls, m: F2Matrix, scale: LaurentPoly | None = None) -> "LaurentMatrix":
        """Lift a GF(2) matrix, optionally scaling every entry by one polynomial."""
        if scale is None:
            scale = LaurentPoly.one()
        if scale.is_zero:
            return cls(m.rows, m.cols, ())
        return cls.from_dict(m.rows, m.cols, {(r, c): scale for r, c in m.entries})

    def to_dict(self) -> dict:
        return {(r, c): p for r, c, p in self.entries}

    def entry(self, r: int, c: int) -> LaurentPoly:
        for rr, cc, p in self.entries:
            if (rr, cc) == (r, c):
                return p
        return LaurentPoly.zero()

    def is_zero(self) -> bool:
        return not self.entries

    def add(self, other: "LaurentMatrix") -> "LaurentMatrix":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch in add")
        d = self.to_dict()
        for (r, c), p in other.to_dict().items():
            d[(r, c)] = d.get((r, c), LaurentPoly.zero()) + p
        return LaurentMatrix.from_dict(self.rows, self.cols, d)

    __add__ = add

    def mul(self, other: "LaurentMatrix") -> "LaurentMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in mul")
        acc: dict = {}
        mine = self.to_dict()
        by_col: dict[int, list] = {}
        for (r, c), p in mine.items():
            by_col.setdefault(c, []).append((r, p))
        out: dict = {}
        for (r2, c2), q in other.to_dict().items():
            for r1, p in by_col.get(r2, ()):
                key = (r1, c2)
                out[key] = out.get(key, LaurentPoly.zero()) + p * q
        return LaurentMatrix.from_dict(self.rows, other.cols, out)

    __matmul__ = mul

    def at_one(self) -> F2Matrix:
        """Specialization T = 1: each entry becomes its coefficient parity."""
        return F2Matrix(
            self.rows,
            self.cols,
            frozenset((r, c) for r, c, p in self.entries if p.at_one()),
        )


def laurent_hstack(a: LaurentMatrix, b: LaurentMatrix) -> LaurentMatrix:
    if a.rows != b.rows:
        raise ValueError("row mismatch in hstack")
    d = a.to_dict()
    for (r, c), p in b.to_dict().items():
        d[(r, c + a.cols)] = p
    return LaurentMatrix.from_dict(a.rows, a.cols + b.cols, d)


def rank_fraction_field(m: LaurentMatrix) -> int:
    """Rank of m over the field of fractions of GF(2)[T, T^-1].

    Fraction-free row elimination: rows are cross-multiplied by pivot
    entries instead of divided, so all intermediate entries stay in the
    Laurent ring.
    """
    rows: list[dict[int, LaurentPoly]] = [dict() for _ in range(m.rows)]
    for r, c, p in m.entries:
        rows[r][c] = p
    free = list(range(m.rows))
    rank = 0
    for col in range(m.cols):
        pivot_at = None
        for idx in free:
            if col in rows[idx]:
                pivot_at = idx
                break
        if pivot_at is None:
            continue
        rank += 1
        free.remove(pivot_at)
        pivot = rows[pivot_at]
        pv = pivot[col]
        for idx in free:
            row = rows[idx]
            e = row.get(col)
            if e is None:
                continue
            new: dict[int, LaurentPoly] = {}
            for c2 in set(row) | set(pivot):
                val = pv * row.get(c2, LaurentPoly.zero()) + e * pivot.get(c2, LaurentPoly.zero())
                if not val.is_zero:
                    new[c2] = val
            rows[idx] = new
    return rank


def smith_invariants_laurent(m: LaurentMatrix) -> list[LaurentPoly]:
    """Nonzero invariant factors of m over GF(2)[T, T^-1].

    Each factor is unit-normalized (a polynomial in T with nonzero constant
    term); consecutive factors divide each other.  The number of factors
    equals the fraction-field rank.  Zero invariant factors are omitted.
    """
    a: list[dict[int, LaurentPoly]] = [dict() for _ in range(m.rows)]
    for r, c, p in m.entries:
        a[r][c] = p

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]

    def swap_cols(i, j):
        for row in a:
            vi, vj = row.pop(i, None), row.pop(j, None)
            if vj is not None:
                row[i] = vj
            if vi is not None:
                row[j] = vi

    def row_addmul(dst, src, q):
        # row dst += q * row src   (GF(2): addition is subtraction)
        if q.is_zero:
            return
        for c, v in list(a[src].items()):
            nv = a[dst].get(c, LaurentPoly.zero()) + q * v
            if nv.is_zero:
                a[dst].pop(c, None)
            else:
                a[dst][c] = nv

    def col_addmul(dst, src, q):
        if q.is_zero:
            return
        for row in a:
            v = row.get(src)
            if v is None:
                continue
            nv = row.get(dst, LaurentPoly.zero()) + q * v
            if nv.is_zero:
                row.pop(dst, None)
            else:
                row[dst] = nv

    invariants: list[LaurentPoly] = []
    n = min(m.rows, m.cols)
    k = 0
    while k < n:
        # locate a pivot of minimal span in the trailing submatrix
        best = None
        for r in range(k, m.rows):
            for c, v in a[r].items():
                if c < k:
                    continue
                key = (v.span, r, c)
                if best is None or key < best[0]:
                    best = (key, r, c)
        if best is None:
            break
        swap_rows(best[1], k)
        swap_cols(best[2], k)

        while True:
            touched = False
            # clear the pivot column
            r = k + 1
            while r < m.rows:
                v = a[r].get(k)
                if v is not None:
                    q, rem = laurent_divmod(v, a[k][k])
                    row_addmul(r, k, q)
                    if not rem.is_zero:
                        swap_rows(r, k)
                        touched = True
                        break
                r += 1
            if touched:
                continue
            # clear the pivot row
            c = k + 1
            cleared = True
            for c in range(k + 1, m.cols):
                v = a[k].get(c)
                if v is not None:
                    q, rem = laurent_divmod(v, a[k][k])
                    col_addmul(c, k, q)
                    if not rem.is_zero:
                        swap_cols(c, k)
                        cleared = False
                        break
            if not cleared:
                continue
            # pivot row and column below/right of (k,k) are now zero
            offender = None
            pivot = a[k][k]
            for r in range(k + 1, m.rows):
                for c, v in a[r].items():
                    if c <= k:
                        continue
                    if not laurent_divides(pivot, v):
                        offender = r
                        break
                if offender is not None:
                    break
            if offender is None:
                break
            row_addmul(k, offender, LaurentPoly.one())
        invariants.append(a[k][k].unit_normalized())
        k += 1
    return invariants
