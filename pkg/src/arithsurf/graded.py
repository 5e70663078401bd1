"""Binary forms over Z and graded presentations of sheaves on the projective line.

A sheaf is stored as the sheafified cokernel of a degree-compatible map of
free graded modules over Z[x0, x1] (or its reductions).  The twist convention
is fixed so that a free summand of twist ``a`` has degree-d piece of dimension
``a + d + 1``: cohomology of line bundles reads directly off twists.

Monomials of degree d are always ordered by decreasing x0-power:
x0^d, x0^(d-1)*x1, ..., x1^d.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .errors import CompositeModulus
from .exactlat import IntegerMatrix, is_prime


# ---------------------------------------------------------------------------
# base rings


@dataclass(frozen=True)
class Ring:
    """Base ring tag: the integers, the rationals, or a prime field."""

    kind: str  # "ZZ" | "QQ" | "GF"
    char: int = 0

    def __str__(self):
        return f"GF({self.char})" if self.kind == "GF" else self.kind


ZZ = Ring("ZZ")
QQ = Ring("QQ")


@lru_cache(maxsize=None)
def GF(p: int) -> Ring:
    if not is_prime(p):
        raise CompositeModulus(f"{p} is not prime")
    return Ring("GF", p)


def ring_from_tag(tag: str) -> Ring:
    if tag == "ZZ":
        return ZZ
    if tag == "QQ":
        return QQ
    if tag.startswith("GF(") and tag.endswith(")"):
        return GF(int(tag[3:-1]))
    raise ValueError(f"unknown ring tag {tag!r}")


# ---------------------------------------------------------------------------
# forms


def monomial_basis(d: int) -> tuple[tuple[int, int], ...]:
    """Exponent pairs (i, j) with i+j = d, decreasing x0-power; empty for d < 0."""
    if d < 0:
        return ()
    return tuple((d - j, j) for j in range(d + 1))


@dataclass(frozen=True)
class Form:
    """Homogeneous binary form sum(c_j * x0^(d-j) * x1^j) with integer coefficients.

    The zero form carries an explicit degree tag; degrees below zero denote
    the zero entry of a slot whose required degree is negative and carry no
    coefficients.
    """

    degree: int
    coeffs: tuple[int, ...]

    def __post_init__(self):
        expect = self.degree + 1 if self.degree >= 0 else 0
        if len(self.coeffs) != expect:
            raise ValueError("coefficient count must be degree + 1")

    @staticmethod
    def make(degree: int, coeffs) -> "Form":
        return Form(degree, tuple(int(c) for c in coeffs))

    @staticmethod
    def zero(degree: int) -> "Form":
        return Form(degree, (0,) * (degree + 1) if degree >= 0 else ())

    @staticmethod
    def monomial(degree: int, j: int, coeff: int = 1) -> "Form":
        c = [0] * (degree + 1)
        c[j] = coeff
        return Form(degree, tuple(c))

    @staticmethod
    def constant(c: int) -> "Form":
        return Form(0, (int(c),))

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coeffs)

    def map_coeffs(self, fn) -> "Form":
        return Form(self.degree, tuple(fn(c) for c in self.coeffs))

    def add(self, other: "Form") -> "Form":
        if self.degree != other.degree:
            raise ValueError("degree mismatch in form addition")
        return Form(self.degree, tuple(a + b for a, b in zip(self.coeffs, other.coeffs)))

    def scale(self, c: int) -> "Form":
        return self.map_coeffs(lambda a: c * a)

    def mul(self, other: "Form") -> "Form":
        if self.degree < 0 or other.degree < 0:
            return Form.zero(self.degree + other.degree)
        d = self.degree + other.degree
        out = [0] * (d + 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    if b:
                        out[i + j] += a * b
        return Form(d, tuple(out))

    def to_json(self) -> dict:
        return {"degree": self.degree, "coeffs": [str(c) for c in self.coeffs]}

    @staticmethod
    def from_json(obj: dict) -> "Form":
        return Form(int(obj["degree"]), tuple(int(c) for c in obj["coeffs"]))

    def __str__(self):
        return form_to_str(self)


def form_to_str(f: Form) -> str:
    """Render in the fixed ASCII grammar: 'c*x0^a*x1^b' terms joined by +/-."""
    if f.degree < 0 or f.is_zero():
        return "0"
    parts = []
    for (i, j), c in zip(monomial_basis(f.degree), f.coeffs):
        if c == 0:
            continue
        factors = []
        if i > 0:
            factors.append("x0" if i == 1 else f"x0^{i}")
        if j > 0:
            factors.append("x1" if j == 1 else f"x1^{j}")
        mag = abs(c)
        if mag != 1 or not factors:
            factors.insert(0, str(mag))
        term = "*".join(factors)
        if not parts:
            parts.append(term if c > 0 else f"-{term}")
        else:
            parts.append(("+ " if c > 0 else "- ") + term)
    return " ".join(parts)


def parse_form(text: str, degree: int | None = None) -> Form:
    """Parse the grammar produced by :func:`form_to_str`.

    ``degree`` pins the homogeneous degree (required when the text is "0");
    mixed-degree input is rejected.
    """
    text = text.replace(" ", "")
    if not text:
        raise ValueError("empty form")
    terms: dict[tuple[int, int], int] = {}
    i = 0
    sign = 1
    if text[0] in "+-":
        sign = -1 if text[0] == "-" else 1
        i = 1
    start = i
    chunks: list[tuple[int, str]] = []
    while i <= len(text):
        if i == len(text) or text[i] in "+-":
            if i == start:
                raise ValueError("malformed form")
            chunks.append((sign, text[start:i]))
            if i < len(text):
                sign = -1 if text[i] == "-" else 1
            start = i + 1
        i += 1
    for sgn, chunk in chunks:
        coeff = sgn
        e0 = e1 = 0
        for factor in chunk.split("*"):
            if not factor:
                raise ValueError("malformed form")
            if factor.startswith("x0") or factor.startswith("x1"):
                var = factor[:2]
                rest = factor[2:]
                if rest == "":
                    e = 1
                elif rest.startswith("^"):
                    e = int(rest[1:])
                else:
                    raise ValueError(f"malformed factor {factor!r}")
                if var == "x0":
                    e0 += e
                else:
                    e1 += e
            else:
                coeff *= int(factor)
        key = (e0, e1)
        terms[key] = terms.get(key, 0) + coeff
    terms = {k: v for k, v in terms.items() if v != 0}
    if not terms:
        if degree is None:
            raise ValueError("degree of the zero form is ambiguous; pass degree")
        return Form.zero(degree)
    degs = {e0 + e1 for (e0, e1) in terms}
    if len(degs) != 1:
        raise ValueError("form is not homogeneous")
    d = degs.pop()
    if degree is not None and d != degree:
        raise ValueError(f"form has degree {d}, expected {degree}")
    coeffs = [0] * (d + 1)
    for (e0, e1), c in terms.items():
        coeffs[e1] = c
    return Form(d, tuple(coeffs))


def form_gcd_degree_mod(f: Form, g: Form, p: int) -> int:
    """Degree of gcd(f, g) in F_p[x0, x1]; -1 if both reduce to zero."""
    fa = [c % p for c in f.coeffs]
    ga = [c % p for c in g.coeffs]
    if not any(fa) and not any(ga):
        return -1
    if not any(fa):
        return g.degree
    if not any(ga):
        return f.degree
    _, fmax = _nonzero_span(fa)
    _, gmax = _nonzero_span(ga)
    # x0-multiplicities: degree minus the top x1-exponent present
    v0 = min(f.degree - fmax, g.degree - gmax)
    u = _poly_gcd_mod(fa[: fmax + 1], ga[: gmax + 1], p)
    return v0 + (len(u) - 1)


def _nonzero_span(coeffs):
    nz = [j for j, c in enumerate(coeffs) if c]
    return nz[0], nz[-1]


def _poly_gcd_mod(a, b, p):
    a = [c % p for c in a]
    b = [c % p for c in b]

    def trim(u):
        while u and u[-1] == 0:
            u.pop()
        return u

    a, b = trim(a), trim(b)
    while b:
        inv = pow(b[-1], p - 2, p)
        while len(a) >= len(b):
            f = a[-1] * inv % p
            if f:
                off = len(a) - len(b)
                for k in range(len(b)):
                    a[off + k] = (a[off + k] - f * b[k]) % p
            a = trim(a)
            if not a:
                break
        a, b = b, a
    return a if a else [0]


# ---------------------------------------------------------------------------
# free graded modules and maps


@dataclass(frozen=True)
class FreeGraded:
    """Direct sum of twists O(a1) + ... + O(ar), as its graded section module."""

    twists: tuple[int, ...]

    @property
    def rank(self) -> int:
        return len(self.twists)

    def piece_dims(self, d: int) -> list[int]:
        return [max(0, a + d + 1) for a in self.twists]

    def piece_dim(self, d: int) -> int:
        return sum(self.piece_dims(d))


@dataclass(frozen=True)
class GradedMap:
    """Degree-compatible map between free graded modules.

    ``entries[i][j]`` multiplies the j-th source generator into the i-th
    target generator and must have degree ``target.twists[i] - source.twists[j]``.
    """

    source: FreeGraded
    target: FreeGraded
    entries: tuple[tuple[Form, ...], ...]

    def __post_init__(self):
        if len(self.entries) != self.target.rank:
            raise ValueError("entry grid has wrong number of rows")
        for i, row in enumerate(self.entries):
            if len(row) != self.source.rank:
                raise ValueError("entry grid has wrong number of columns")
            for j, f in enumerate(row):
                need = self.target.twists[i] - self.source.twists[j]
                if f.degree != need:
                    raise ValueError(
                        f"entry ({i},{j}) has degree {f.degree}, needs {need}"
                    )
                if need < 0 and not f.is_zero():
                    raise ValueError("negative-degree entries must be zero")

    def to_json(self) -> dict:
        return {
            "source_twists": list(self.source.twists),
            "target_twists": list(self.target.twists),
            "entries": [[f.to_json() for f in row] for row in self.entries],
        }

    @staticmethod
    def from_json(obj: dict) -> "GradedMap":
        return GradedMap(
            FreeGraded(tuple(int(t) for t in obj["source_twists"])),
            FreeGraded(tuple(int(t) for t in obj["target_twists"])),
            tuple(tuple(Form.from_json(f) for f in row) for row in obj["entries"]),
        )


def map_from_columns(target_twists, columns) -> GradedMap:
    """Build a GradedMap from relation columns given as (twist, [forms])."""
    src = FreeGraded(tuple(t for t, _ in columns))
    tgt = FreeGraded(tuple(target_twists))
    entries = tuple(
        tuple(columns[j][1][i] for j in range(len(columns))) for i in range(tgt.rank)
    )
    return GradedMap(src, tgt, entries)


@lru_cache(maxsize=None)
def monomial_mult_matrix(var: int, e: int, s: int) -> IntegerMatrix:
    """Multiplication by x_var^e from degree-s to degree-(s+e) monomials."""
    if s < 0:
        return IntegerMatrix.zero(max(0, s + e + 1), 0)
    rows = [[0] * (s + 1) for _ in range(s + e + 1)]
    for k in range(s + 1):
        rows[k + (e if var == 1 else 0)][k] = 1
    return IntegerMatrix.from_rows(rows, cols=s + 1)


def _mult_block(f: Form, s: int) -> list[list[int]]:
    # multiplication by f on degree-s monomials, target degree s + deg f
    e = f.degree
    rows = [[0] * (s + 1) for _ in range(s + e + 1)]
    for t in range(s + e + 1):
        for k in range(s + 1):
            if 0 <= t - k <= e:
                rows[t][k] = f.coeffs[t - k]
    return rows


@lru_cache(maxsize=None)
def degree_piece(phi: GradedMap, d: int) -> IntegerMatrix:
    """Matrix of a graded map on degree-d pieces in monomial_basis order."""
    tdims = phi.target.piece_dims(d)
    sdims = phi.source.piece_dims(d)
    nrows, ncols = sum(tdims), sum(sdims)
    rows = [[0] * ncols for _ in range(nrows)]
    roff = 0
    for i in range(phi.target.rank):
        coff = 0
        for j in range(phi.source.rank):
            f = phi.entries[i][j]
            s = phi.source.twists[j] + d
            if sdims[j] > 0 and tdims[i] > 0 and f.degree >= 0 and not f.is_zero():
                block = _mult_block(f, s)
                for r in range(tdims[i]):
                    br = block[r]
                    tr = rows[roff + r]
                    for c in range(sdims[j]):
                        if br[c]:
                            tr[coff + c] = br[c]
            coff += sdims[j]
        roff += tdims[i]
    return IntegerMatrix.from_rows(rows, cols=ncols)


# ---------------------------------------------------------------------------
# presentations


@dataclass(frozen=True)
class GradedPresentation:
    """A coherent sheaf on the projective line: sheafified cokernel of ``map``.

    Kernel-defined sheaves are never stored; elementary-transformation
    kernels are converted to cokernel presentations before they get here, so
    reduction mod p is exact for the stored object.
    """

    base: Ring
    map: GradedMap

    def __post_init__(self):
        if self.base.kind == "GF":
            p = self.base.char
            for row in self.map.entries:
                for f in row:
                    if any(not (0 <= c < p) for c in f.coeffs):
                        raise ValueError("coefficients not reduced mod p")

    @property
    def generators(self) -> FreeGraded:
        return self.map.target

    @property
    def relations(self) -> FreeGraded:
        return self.map.source

    def all_twists(self) -> tuple[int, ...]:
        return self.map.target.twists + self.map.source.twists

    def twist_span(self) -> int:
        tw = self.all_twists()
        return (max(tw) - min(tw)) if tw else 0

    def to_json(self) -> dict:
        return {"base": str(self.base), "map": self.map.to_json()}

    @staticmethod
    def from_json(obj: dict) -> "GradedPresentation":
        return GradedPresentation(ring_from_tag(obj["base"]), GradedMap.from_json(obj["map"]))


def free_presentation(twists, base: Ring = ZZ) -> GradedPresentation:
    """Presentation of the split bundle O(a1) + ... + O(ar): no relations."""
    tgt = FreeGraded(tuple(twists))
    src = FreeGraded(())
    entries = tuple(() for _ in range(tgt.rank))
    return GradedPresentation(base, GradedMap(src, tgt, entries))


def structure_sheaf(base: Ring = ZZ) -> GradedPresentation:
    return free_presentation((0,), base)


def cokernel_presentation(target_twists, columns, base: Ring = ZZ) -> GradedPresentation:
    """Cokernel of the map assembled from ``columns`` of (twist, forms)."""
    return GradedPresentation(base, map_from_columns(target_twists, columns))


def reduce_mod(P: GradedPresentation, p: int) -> GradedPresentation:
    """Entrywise reduction mod p; the result presents the fiber over p."""
    if P.base.kind != "ZZ":
        raise ValueError("reduce_mod requires an integral presentation")
    fp = GF(p)  # raises CompositeModulus when p is not prime
    entries = tuple(
        tuple(f.map_coeffs(lambda c: c % p) for f in row) for row in P.map.entries
    )
    return GradedPresentation(fp, GradedMap(P.map.source, P.map.target, entries))


def twist(P: GradedPresentation, t: int) -> GradedPresentation:
    """Shift every generator and relation twist by t (O(t)-tensor)."""
    if t == 0:
        return P
    src = FreeGraded(tuple(a + t for a in P.map.source.twists))
    tgt = FreeGraded(tuple(a + t for a in P.map.target.twists))
    return GradedPresentation(P.base, GradedMap(src, tgt, P.map.entries))


def rationalize(P: GradedPresentation) -> GradedPresentation:
    """Retag an integral presentation as rational (coefficients unchanged)."""
    if P.base.kind != "ZZ":
        raise ValueError("rationalize requires an integral presentation")
    return GradedPresentation(QQ, P.map)
