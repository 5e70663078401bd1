"""Exact linear algebra over the integers, the rationals, and prime fields.

Everything in this module works with arbitrary-precision Python integers;
no floating point appears anywhere in the package.  The two data types are

* :class:`IntegerMatrix` -- an immutable dense matrix of ints, and
* :class:`LatticeBasis` -- a sublattice of Z^n held in a canonical column
  echelon form, so that two descriptions of the same lattice are equal as
  values.

Canonical form convention, fixed once and used everywhere: basis vectors are
the columns; the pivot (first nonzero entry) of each column sits in a strictly
later row than the pivot of the previous column; pivots are positive; within
each pivot row the entries belonging to earlier columns are reduced into
[0, pivot).  This is the transpose of the usual row-style Hermite normal form.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from math import gcd, isqrt

from .errors import CompositeModulus

Vec = tuple[int, ...]


# ---------------------------------------------------------------------------
# matrices


@dataclass(frozen=True)
class IntegerMatrix:
    """Dense matrix of arbitrary-precision integers, row-major, immutable."""

    rows: int
    cols: int
    entries: Vec

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        if len(self.entries) != self.rows * self.cols:
            raise ValueError("entry count does not match rows*cols")

    @staticmethod
    def from_rows(rows: list[list[int]] | tuple, cols: int | None = None) -> "IntegerMatrix":
        rows = list(rows)
        if rows:
            ncols = len(rows[0])
            if any(len(r) != ncols for r in rows):
                raise ValueError("ragged rows")
        else:
            ncols = 0 if cols is None else cols
        flat = []
        for r in rows:
            flat.extend(r)
        return IntegerMatrix(len(rows), ncols, tuple(flat))

    @staticmethod
    def from_columns(cols: list[list[int]] | list[Vec], nrows: int | None = None) -> "IntegerMatrix":
        cols = [list(c) for c in cols]
        if cols:
            n = len(cols[0])
            if any(len(c) != n for c in cols):
                raise ValueError("ragged columns")
        else:
            n = 0 if nrows is None else nrows
        rows = [[cols[j][i] for j in range(len(cols))] for i in range(n)]
        return IntegerMatrix.from_rows(rows, cols=len(cols))

    @staticmethod
    def identity(n: int) -> "IntegerMatrix":
        return IntegerMatrix(n, n, tuple(1 if i == j else 0 for i in range(n) for j in range(n)))

    @staticmethod
    def zero(rows: int, cols: int) -> "IntegerMatrix":
        return IntegerMatrix(rows, cols, (0,) * (rows * cols))

    def at(self, i: int, j: int) -> int:
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vec:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def column(self, j: int) -> Vec:
        return self.entries[j :: self.cols] if self.cols else ()

    def rows_list(self) -> list[list[int]]:
        return [list(self.row(i)) for i in range(self.rows)]

    def columns_list(self) -> list[list[int]]:
        return [list(self.column(j)) for j in range(self.cols)]

    def transpose(self) -> "IntegerMatrix":
        if self.cols == 0 or self.rows == 0:
            return IntegerMatrix(self.cols, self.rows, ())
        flat = []
        for j in range(self.cols):
            flat.extend(self.entries[j :: self.cols])
        return IntegerMatrix(self.cols, self.rows, tuple(flat))

    def mul(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch in matrix product")
        out = []
        orows = other.rows_list()
        for i in range(self.rows):
            ri = self.row(i)
            acc = [0] * other.cols
            for k, a in enumerate(ri):
                if a:
                    rk = orows[k]
                    for j in range(other.cols):
                        acc[j] += a * rk[j]
            out.append(acc)
        return IntegerMatrix.from_rows(out, cols=other.cols)

    def mul_vec(self, v: Vec | list[int]) -> Vec:
        if len(v) != self.cols:
            raise ValueError("shape mismatch in matrix-vector product")
        n = self.cols
        out = []
        for i in range(self.rows):
            row = self.entries[i * n : (i + 1) * n]
            out.append(sum(a * b for a, b in zip(row, v) if a))
        return tuple(out)

    def hstack(self, other: "IntegerMatrix") -> "IntegerMatrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        rows = [list(self.row(i)) + list(other.row(i)) for i in range(self.rows)]
        return IntegerMatrix.from_rows(rows, cols=self.cols + other.cols)

    def is_zero(self) -> bool:
        return all(e == 0 for e in self.entries)

    def to_json(self) -> dict:
        return {"rows": self.rows, "cols": self.cols, "entries": [str(e) for e in self.entries]}

    @staticmethod
    def from_json(obj: dict) -> "IntegerMatrix":
        return IntegerMatrix(int(obj["rows"]), int(obj["cols"]), tuple(int(e) for e in obj["entries"]))


# ---------------------------------------------------------------------------
# integer echelon engine

# All echelon work happens on mutable lists of row lists.  Pivoting picks the
# smallest nonzero entry in the current column, which keeps intermediate
# entries modest on the structured matrices this package produces.


def _echelon(rows: list[list[int]], ncols: int, transform: bool = False):
    """Bring ``rows`` to integer row echelon form by unimodular row operations.

    Returns ``(rows, pivots, trans, disc)`` where ``pivots`` is a list of
    ``(row, col)`` pairs with positive pivot entries, ``trans`` (if requested)
    satisfies ``trans * original = rows``, and ``disc`` is the product of the
    pivots: the covolume of the row lattice, i.e. the product of its Smith
    invariant factors.  Zero rows end up at the bottom.
    """
    m = len(rows)
    trans = [[1 if i == j else 0 for j in range(m)] for i in range(m)] if transform else None
    pivots: list[tuple[int, int]] = []
    r = 0
    for c in range(ncols):
        if r >= m:
            break
        # Euclidean elimination in column c on rows r..m-1.
        while True:
            best = -1
            for i in range(r, m):
                if rows[i][c] != 0 and (best < 0 or abs(rows[i][c]) < abs(rows[best][c])):
                    best = i
            if best < 0:
                break
            if best != r:
                rows[r], rows[best] = rows[best], rows[r]
                if trans is not None:
                    trans[r], trans[best] = trans[best], trans[r]
            done = True
            piv = rows[r][c]
            for i in range(r + 1, m):
                if rows[i][c] != 0:
                    q = rows[i][c] // piv
                    if q:
                        rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
                        if trans is not None:
                            trans[i] = [a - q * b for a, b in zip(trans[i], trans[r])]
                    if rows[i][c] != 0:
                        done = False
            if done:
                break
        if r < m and rows[r][c] != 0:
            if rows[r][c] < 0:
                rows[r] = [-a for a in rows[r]]
                if trans is not None:
                    trans[r] = [-a for a in trans[r]]
            pivots.append((r, c))
            r += 1
    disc = 1
    for (i, c) in pivots:
        disc *= rows[i][c]
    return rows, pivots, trans, disc


def _reduce_above(rows: list[list[int]], pivots: list[tuple[int, int]]):
    """Reduce entries above each pivot into [0, pivot), left to right."""
    for (r, c) in pivots:
        piv = rows[r][c]
        for i in range(r):
            q = rows[i][c] // piv
            if q:
                rows[i] = [a - q * b for a, b in zip(rows[i], rows[r])]
    return rows


def row_hnf(vectors: list[list[int]] | list[Vec], ncols: int) -> list[Vec]:
    """Canonical row Hermite form of the lattice spanned by ``vectors``."""
    rows = [list(v) for v in vectors]
    rows, pivots, _, _ = _echelon(rows, ncols)
    _reduce_above(rows, pivots)
    return [tuple(rows[i]) for (i, _) in pivots]


def rank_of(M: IntegerMatrix) -> int:
    """Rank of an integer matrix over the rationals."""
    _, pivots, _, _ = _echelon(M.rows_list(), M.cols)
    return len(pivots)


def rank_and_disc(M: IntegerMatrix) -> tuple[int, int]:
    """Rank over Q together with the product of the Smith invariant factors.

    A prime reduces the rank of ``M`` iff it divides the returned product,
    which is what jump-prime candidate detection consumes.
    """
    _, pivots, _, disc = _echelon(M.rows_list(), M.cols)
    return len(pivots), disc


def determinant(M: IntegerMatrix) -> int:
    """Exact determinant via fraction-free Bareiss elimination."""
    if M.rows != M.cols:
        raise ValueError("determinant of non-square matrix")
    n = M.rows
    if n == 0:
        return 1
    a = M.rows_list()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# lattices


@dataclass(frozen=True)
class LatticeBasis:
    """A sublattice of Z^n in canonical column echelon form.

    ``matrix`` holds the basis vectors as columns; see the module docstring
    for the exact normalization.  Equal lattices compare equal as values.
    """

    ambient: int
    matrix: IntegerMatrix

    @staticmethod
    def from_vectors(ambient: int, vectors) -> "LatticeBasis":
        canon = row_hnf([list(v) for v in vectors], ambient)
        return LatticeBasis(ambient, IntegerMatrix.from_columns([list(v) for v in canon], nrows=ambient))

    @property
    def rank(self) -> int:
        return self.matrix.cols

    def vectors(self) -> list[Vec]:
        return [self.matrix.column(j) for j in range(self.matrix.cols)]

    def express(self, v) -> list[int]:
        """Coordinates of ``v`` in this basis; raises ValueError if outside."""
        cols = self.matrix.columns_list()
        work = list(v)
        if len(work) != self.ambient:
            raise ValueError("ambient dimension mismatch")
        coords = []
        for col in cols:
            piv_row = next(i for i, x in enumerate(col) if x != 0)
            q, rem = divmod(work[piv_row], col[piv_row])
            if rem:
                raise ValueError("vector not in lattice")
            coords.append(q)
            if q:
                work = [a - q * b for a, b in zip(work, col)]
        if any(work):
            raise ValueError("vector not in lattice")
        return coords

    def contains(self, v) -> bool:
        try:
            self.express(v)
            return True
        except ValueError:
            return False

    def sum(self, other: "LatticeBasis") -> "LatticeBasis":
        if self.ambient != other.ambient:
            raise ValueError("ambient dimension mismatch")
        return LatticeBasis.from_vectors(self.ambient, self.vectors() + other.vectors())

    def to_json(self) -> dict:
        return {"ambient": self.ambient, "basis": self.matrix.to_json()}

    @staticmethod
    def from_json(obj: dict) -> "LatticeBasis":
        return LatticeBasis(int(obj["ambient"]), IntegerMatrix.from_json(obj["basis"]))


def kernel_lattice(M: IntegerMatrix) -> LatticeBasis:
    """Canonical basis of the saturated lattice {v in Z^cols : Mv = 0}."""
    basis, _ = kernel_lattice_with_disc(M)
    return basis


def kernel_lattice_with_disc(M: IntegerMatrix) -> tuple[LatticeBasis, int]:
    """Kernel lattice plus the invariant-factor product of ``M``.

    The transform rows of the echelon of M^T that pair with zero echelon rows
    form a basis of the kernel; being rows of a unimodular matrix they span
    the full (saturated) kernel.
    """
    rows = M.transpose().rows_list()
    rows, pivots, trans, disc = _echelon(rows, M.rows, transform=True)
    pivot_rows = {i for (i, _) in pivots}
    vectors = [trans[i] for i in range(len(rows)) if i not in pivot_rows]
    return LatticeBasis.from_vectors(M.cols, vectors), disc


def span_lattice(ambient: int, vectors) -> LatticeBasis:
    return LatticeBasis.from_vectors(ambient, vectors)


def span_lattice_with_disc(ambient: int, vectors) -> tuple[LatticeBasis, int]:
    rows = [list(v) for v in vectors]
    rows, pivots, _, disc = _echelon(rows, ambient)
    _reduce_above(rows, pivots)
    canon = [list(rows[i]) for (i, _) in pivots]
    return LatticeBasis(ambient, IntegerMatrix.from_columns(canon, nrows=ambient)), disc


def saturation(L: LatticeBasis) -> LatticeBasis:
    """Saturation Q-span(L) intersected with Z^n, via a double kernel."""
    if L.rank == 0:
        return L
    ortho = kernel_lattice(L.matrix.transpose())
    if ortho.rank == 0:
        return LatticeBasis.from_vectors(L.ambient, IntegerMatrix.identity(L.ambient).columns_list())
    return kernel_lattice(ortho.matrix.transpose())


# ---------------------------------------------------------------------------
# Smith normal form


def smith_invariants(M: IntegerMatrix) -> tuple[int, ...]:
    """Nonzero invariant factors d1 | d2 | ... of an integer matrix.

    Classical elementary-operations algorithm with smallest-pivot selection;
    no modular tricks.  The divisibility chain is enforced by folding any
    non-divisible residual entry back into the pivot position.
    """
    a = M.rows_list()
    m, n = M.rows, M.cols
    out: list[int] = []
    top = 0
    while True:
        # locate the smallest nonzero entry in the remaining block
        bi = bj = -1
        for i in range(top, m):
            for j in range(top, n):
                if a[i][j] != 0 and (bi < 0 or abs(a[i][j]) < abs(a[bi][bj])):
                    bi, bj = i, j
        if bi < 0:
            break
        a[top], a[bi] = a[bi], a[top]
        for row in a:
            row[top], row[bj] = row[bj], row[top]
        while True:
            # clear column
            again = False
            for i in range(top + 1, m):
                if a[i][top] != 0:
                    q = a[i][top] // a[top][top]
                    if q:
                        a[i] = [x - q * y for x, y in zip(a[i], a[top])]
                    if a[i][top] != 0:
                        a[top], a[i] = a[i], a[top]
                        again = True
            if again:
                continue
            # clear row
            for j in range(top + 1, n):
                if a[top][j] != 0:
                    q = a[top][j] // a[top][top]
                    if q:
                        for row in a:
                            row[j] -= q * row[top]
                    if a[top][j] != 0:
                        for row in a:
                            row[top], row[j] = row[j], row[top]
                        again = True
            if not again:
                break
        piv = abs(a[top][top])
        # enforce divisibility: fold in any entry the pivot does not divide
        offender = None
        for i in range(top + 1, m):
            for j in range(top + 1, n):
                if a[i][j] % piv:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            a[top] = [x + y for x, y in zip(a[top], a[offender])]
            continue
        out.append(piv)
        top += 1
    for d, e in zip(out, out[1:]):
        assert e % d == 0, "invariant factor chain broken"
    return tuple(out)


def _smith_left_inverse(X: list[list[int]], k: int, l: int):
    """Diagonalize a k x l matrix, tracking the inverse of the row transform.

    Returns ``(diag, uinv)`` with ``U X V = D`` diagonal; ``diag`` lists the
    k diagonal entries of D (zeros included) and ``uinv`` holds the columns
    of U^{-1}: the row ops applied to X are mirrored as inverse column ops.
    """
    a = [list(row) for row in X]
    uinv = [[1 if i == j else 0 for j in range(k)] for i in range(k)]

    def col_add(dst: int, src: int, q: int):
        # right-multiply uinv by the inverse of the row operation just applied
        for i in range(k):
            uinv[i][dst] += q * uinv[i][src]

    top = 0
    while top < min(k, l):
        bi = bj = -1
        for i in range(top, k):
            for j in range(top, l):
                if a[i][j] != 0 and (bi < 0 or abs(a[i][j]) < abs(a[bi][bj])):
                    bi, bj = i, j
        if bi < 0:
            break
        if bi != top:
            a[top], a[bi] = a[bi], a[top]
            for row in uinv:
                row[top], row[bi] = row[bi], row[top]
        if bj != top:
            for row in a:
                row[top], row[bj] = row[bj], row[top]
        while True:
            again = False
            for i in range(top + 1, k):
                if a[i][top] != 0:
                    q = a[i][top] // a[top][top]
                    if q:
                        # a[i] -= q a[top]  has inverse  uinv[:,top] += q uinv[:,i]
                        a[i] = [x - q * y for x, y in zip(a[i], a[top])]
                        col_add(top, i, q)
                    if a[i][top] != 0:
                        a[top], a[i] = a[i], a[top]
                        for row in uinv:
                            row[top], row[i] = row[i], row[top]
                        again = True
            if again:
                continue
            for j in range(top + 1, l):
                if a[top][j] != 0:
                    q = a[top][j] // a[top][top]
                    if q:
                        for row in a:
                            row[j] -= q * row[top]
                    if a[top][j] != 0:
                        for row in a:
                            row[top], row[j] = row[j], row[top]
                        again = True
            if not again:
                break
        piv = a[top][top]
        offender = None
        for i in range(top + 1, k):
            for j in range(top + 1, l):
                if a[i][j] % piv:
                    offender = i
                    break
            if offender is not None:
                break
        if offender is not None:
            # a[top] += a[offender]  has inverse  uinv[:,offender] -= uinv[:,top]
            a[top] = [x + y for x, y in zip(a[top], a[offender])]
            col_add(offender, top, -1)
            continue
        if piv < 0:
            a[top] = [-x for x in a[top]]
            for row in uinv:
                row[top] = -row[top]
        top += 1
    diag = [a[i][i] if i < l else 0 for i in range(k)]
    return diag, uinv


def quotient_group_data(S: LatticeBasis, T_vectors) -> tuple[list[Vec], list[int]]:
    """Generators and cyclic orders of the quotient group span(S)/span(T).

    ``T_vectors`` must lie inside S.  Returns ``(gens, orders)`` where the
    quotient is the direct sum of Z/orders[i] (order 0 meaning Z) generated
    by the classes of ``gens``; trivial factors are dropped.
    """
    k = S.rank
    cols = [S.express(t) for t in T_vectors]
    X = [[cols[j][i] for j in range(len(cols))] for i in range(k)]
    diag, uinv = _smith_left_inverse(X, k, len(cols))
    gens: list[Vec] = []
    orders: list[int] = []
    basis = S.vectors()
    for i, d in enumerate(diag):
        if abs(d) == 1:
            continue
        # column i of U^{-1} holds S-basis coordinates; expand to ambient ones
        vec = tuple(
            sum(uinv[r][i] * basis[r][t] for r in range(k)) for t in range(S.ambient)
        )
        gens.append(vec)
        orders.append(abs(d))
    return gens, orders


def solve_in_span(vectors, target) -> list[int] | None:
    """Integer coefficients c with sum(c_i vectors_i) = target, or None.

    ``vectors`` are ambient column vectors; the solution need not be unique
    when they are dependent, any witness is returned.
    """
    n = len(vectors)
    if n == 0:
        return [] if not any(target) else None
    ambient = len(vectors[0])
    rows = [list(v) for v in vectors]
    rows, pivots, trans, _ = _echelon(rows, ambient, transform=True)
    # rows = trans * original; solve sum_j y_j rows_j = target by echelon
    work = list(target)
    y = [0] * n
    for idx, (i, c) in enumerate(pivots):
        q, rem = divmod(work[c], rows[i][c])
        if rem:
            return None
        y[i] = q
        if q:
            work = [a - q * b for a, b in zip(work, rows[i])]
    if any(work):
        return None
    # pull back through the transform: coefficients on original vectors
    out = [0] * n
    for i in range(n):
        if y[i]:
            for j in range(n):
                out[j] += y[i] * trans[i][j]
    return out


# ---------------------------------------------------------------------------
# prime fields


def _inv_mod(a: int, p: int) -> int:
    return pow(a % p, p - 2, p)


def rref_mod(rows: list[list[int]], ncols: int, p: int):
    """Reduced row echelon form over F_p; returns (rows, pivot columns)."""
    a = [[x % p for x in row] for row in rows]
    m = len(a)
    piv_cols: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= m:
            break
        sel = next((i for i in range(r, m) if a[i][c]), None)
        if sel is None:
            continue
        a[r], a[sel] = a[sel], a[r]
        inv = _inv_mod(a[r][c], p)
        a[r] = [(x * inv) % p for x in a[r]]
        for i in range(m):
            if i != r and a[i][c]:
                f = a[i][c]
                a[i] = [(x - f * y) % p for x, y in zip(a[i], a[r])]
        piv_cols.append(c)
        r += 1
    return [tuple(row) for row in a[:r]], piv_cols


def rank_mod(M: IntegerMatrix, p: int) -> int:
    rows, _ = rref_mod(M.rows_list(), M.cols, p)
    return len(rows)


def kernel_mod(M: IntegerMatrix, p: int) -> list[Vec]:
    """Basis of the kernel of M over F_p."""
    rows, piv_cols = rref_mod(M.rows_list(), M.cols, p)
    free = [c for c in range(M.cols) if c not in piv_cols]
    basis = []
    for fc in free:
        v = [0] * M.cols
        v[fc] = 1
        for r, pc in enumerate(piv_cols):
            v[pc] = (-rows[r][fc]) % p
        basis.append(tuple(v))
    return basis


def rank_over(M: IntegerMatrix, base) -> int:
    """Rank of ``M`` over the rationals or over a prime field.

    ``base`` may be the string ``"QQ"`` (or ``"ZZ"``) or a prime integer.
    Composite moduli are rejected.
    """
    if base in ("QQ", "ZZ"):
        return rank_of(M)
    p = int(base)
    if not is_prime(p):
        raise CompositeModulus(f"{p} is not prime")
    return rank_mod(M, p)


# ---------------------------------------------------------------------------
# primality and factoring

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(n: int) -> bool:
    """Miller-Rabin: deterministic below 2^64, fixed witnesses above."""
    if n < 2:
        return False
    for q in _SMALL_PRIMES:
        if n % q == 0:
            return n == q
    d = n - 1
    s = 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = (x * x) % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int, rng: random.Random, max_iter: int | None = None) -> int | None:
    """A nontrivial factor of composite n, or None once the budget runs out."""
    if n % 2 == 0:
        return 2
    spent = 0
    while max_iter is None or spent < max_iter:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = gcd(q, n)
                k += m
            spent += 2 * r
            r *= 2
            if max_iter is not None and spent >= max_iter and g == 1:
                return None
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = gcd(abs(x - ys), n)
        if g != n:
            return g
    return None


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| as {prime: exponent}; n must be nonzero."""
    n = abs(n)
    if n == 0:
        raise ValueError("cannot factor zero")
    out: dict[int, int] = {}
    for q in (2, 3, 5):
        while n % q == 0:
            out[q] = out.get(q, 0) + 1
            n //= q
    d = 7
    inc = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while d * d <= n and d < 100000:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += inc[i]
        i = (i + 1) % 8
    if n == 1:
        return out
    rng = random.Random(0xA51)
    stack = [n]
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        g = _pollard_brent(m, rng)
        stack.append(g)
        stack.append(m // g)
    return out


def prime_divisors(n: int) -> list[int]:
    """Sorted prime divisors of |n|; empty for n in {-1, 0, 1}."""
    if n == 0 or abs(n) == 1:
        return []
    return sorted(factorize(n))


def partial_factor(n: int, rho_budget: int = 200_000) -> tuple[list[int], list[int]]:
    """Prime divisors of |n| found within a bounded effort, plus leftovers.

    Trial division up to 10^5 followed by budgeted Brent-Pollard rounds.
    Returns ``(primes, composites)`` where the composites are pairwise
    products of primes above the trial bound that resisted the budget.
    """
    n = abs(n)
    if n <= 1:
        return [], []
    primes: set[int] = set()
    for q in (2, 3, 5):
        if n % q == 0:
            primes.add(q)
            while n % q == 0:
                n //= q
    d = 7
    inc = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while d * d <= n and d < 100_000:
        if n % d == 0:
            primes.add(d)
            while n % d == 0:
                n //= d
        d += inc[i]
        i = (i + 1) % 8
    leftovers: list[int] = []
    rng = random.Random(0xA52)
    stack = [n] if n > 1 else []
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            primes.add(m)
            continue
        root = isqrt(m)
        if root * root == m:
            stack.append(root)
            stack.append(root)
            continue
        g = _pollard_brent(m, rng, max_iter=rho_budget)
        if g is None:
            leftovers.append(m)
        else:
            stack.append(g)
            stack.append(m // g)
    return sorted(primes), leftovers


def rank_uniform_mod(M: IntegerMatrix, modulus: int):
    """Rank of M modulo every prime dividing ``modulus`` at once.

    Gaussian elimination over Z/modulus using unit pivots only.  Returns
    ``("rank", r)`` when the elimination is valid for every prime divisor
    simultaneously, or ``("split", g)`` with a proper divisor of the modulus
    when a nonzero non-unit entry blocks it (free factor material).
    """
    a = [[x % modulus for x in row] for row in M.rows_list()]
    m = len(a)
    n = M.cols
    rank = 0
    row0 = 0
    live_cols = list(range(n))
    while row0 < m and live_cols:
        pivot = None
        for i in range(row0, m):
            for c in live_cols:
                e = a[i][c]
                if e and gcd(e, modulus) == 1:
                    pivot = (i, c)
                    break
            if pivot:
                break
        if pivot is None:
            for i in range(row0, m):
                for c in live_cols:
                    if a[i][c]:
                        return ("split", gcd(a[i][c], modulus))
            return ("rank", rank)
        i, c = pivot
        a[row0], a[i] = a[i], a[row0]
        inv = pow(a[row0][c], -1, modulus)
        a[row0] = [(x * inv) % modulus for x in a[row0]]
        for k in range(m):
            if k != row0 and a[k][c]:
                f = a[k][c]
                a[k] = [(x - f * y) % modulus for x, y in zip(a[k], a[row0])]
        live_cols.remove(c)
        rank += 1
        row0 += 1
    return ("rank", rank)
