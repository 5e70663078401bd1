"""Rank-2 bundle invariants on the projective line over the integers.

A :class:`BundleHandle` wraps a verified locally-free rank-2 presentation.
On construction the presentation is re-presented from its section lattices
(saturated), which buys two things:

* module pieces equal the full section lattices from the first section
  twist on, so sections can be written against the generators, and
* pair spaces are stabilized as soon as every piece is live, so the
  jump-prime probe below is sound at a single small exponent.

Jump detection probes the twist -b-1 just below the generic splitting: a
prime jumps the splitting type iff the fiber gains a section there, iff the
prime divides one of the invariant-factor discriminants of the probe
eliminations.  Every candidate is then verified by an honest splitting scan
mod p, so spurious divisors are harmless.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from functools import lru_cache

from .cohomology import (
    express_section_as_forms,
    h0_dim,
    lattice_family,
    presentation_from_sections,
    probe_matrices,
    provider_from_family,
    resaturate,
    sheaf_rank_degree,
    stabilization_floor,
    window_guard,
)
from .errors import (
    IdentityViolation,
    NotLocallyFree,
    ParityViolation,
    ProfileInconsistent,
    WindowExhausted,
)
from .exactlat import (
    partial_factor,
    prime_divisors,
    quotient_group_data,
    rank_and_disc,
    rank_uniform_mod,
)
from .graded import GradedPresentation, cokernel_presentation, reduce_mod
from .graded import twist as twist_presentation


@dataclass(frozen=True, order=True)
class SplittingType:
    """Splitting O(a) + O(b) of a rank-2 bundle on the line over a field."""

    a: int
    b: int

    def __post_init__(self):
        if self.a > self.b:
            raise ValueError("splitting type requires a <= b")

    @property
    def degree(self) -> int:
        return self.a + self.b

    @property
    def type(self) -> int:
        return self.b - self.a

    def h0_at(self, d: int) -> int:
        return max(0, self.a + d + 1) + max(0, self.b + d + 1)

    def shifted(self, t: int) -> "SplittingType":
        return SplittingType(self.a + t, self.b + t)

    def to_json(self) -> list[int]:
        return [self.a, self.b]


@dataclass(frozen=True)
class SplittingProfile:
    """Generic splitting type plus the finite map prime -> type at jumps.

    Unlisted primes carry the generic type.  Jump deltas are even and
    positive; the constructor enforces this, so a violating profile can
    never be built.
    """

    generic: SplittingType
    jumps: tuple[tuple[int, SplittingType], ...]

    def __post_init__(self):
        for p, st in self.jumps:
            delta = st.type - self.generic.type
            if delta <= 0 or delta % 2:
                raise ParityViolation(
                    f"jump at {p} has delta {delta}; must be even and positive"
                )

    def jump_map(self) -> dict[int, SplittingType]:
        return dict(self.jumps)

    def at(self, p: int | None) -> SplittingType:
        if p is None:
            return self.generic
        return self.jump_map().get(p, self.generic)

    def jump_primes(self) -> list[int]:
        return [p for p, _ in self.jumps]

    def shifted(self, t: int) -> "SplittingProfile":
        return SplittingProfile(
            self.generic.shifted(t),
            tuple((p, st.shifted(t)) for p, st in self.jumps),
        )

    def type_map(self) -> dict:
        return {"generic": self.generic.type, **{p: st.type for p, st in self.jumps}}

    def to_json(self) -> dict:
        return {
            "generic": self.generic.to_json(),
            "jumps": {str(p): st.to_json() for p, st in self.jumps},
        }


@dataclass(frozen=True)
class BundleHandle:
    """A verified rank-2 locally free sheaf with a saturated presentation."""

    presentation: GradedPresentation
    rank: int
    degree: int

    def profile(self) -> SplittingProfile:
        return type_profile(self)

    def identifier(self) -> str:
        blob = json.dumps(self.presentation.to_json(), sort_keys=True)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]

    def to_json(self) -> dict:
        return {
            "id": self.identifier(),
            "rank": self.rank,
            "degree": self.degree,
            "presentation": self.presentation.to_json(),
        }


def bundle_handle(P: GradedPresentation, assume_saturated: bool = False) -> BundleHandle:
    """Verify and wrap a presentation as a rank-2 bundle handle.

    Raises NotLocallyFree when the Hilbert function does not match a rank-2
    pattern, and ProfileInconsistent when a splitting scan fails its
    post-verification.
    """
    if P.base.kind != "ZZ":
        raise ValueError("bundle handles live over the integers")
    r, e = sheaf_rank_degree(P)
    if r != 2:
        raise NotLocallyFree(f"expected rank 2, found rank {r}")
    if not assume_saturated:
        P, _, _ = resaturate(P)
        if sheaf_rank_degree(P) != (r, e):
            raise NotLocallyFree("resaturation changed rank/degree; bad presentation")
    handle = BundleHandle(P, r, e)
    type_profile(handle)  # verifies generic and fiber splitting patterns
    return handle


# ---------------------------------------------------------------------------
# splitting scans


def _scan_guard(P: GradedPresentation) -> int:
    return 2 + max((abs(t) for t in P.all_twists()), default=0)


def _splitting_scan(Q: GradedPresentation, degree: int) -> SplittingType:
    """First-section scan with Hilbert-pattern post-verification."""
    guard = _scan_guard(Q)
    d = -(abs(degree) + guard)
    top = abs(degree) + guard + 1
    while d <= top and h0_dim(Q, d) == 0:
        d += 1
    if d > top:
        raise ProfileInconsistent("no sections found inside the scan range")
    b = -d
    a = degree - b
    if a > b:
        raise ProfileInconsistent(
            f"sections first appear at twist {d}, inconsistent with degree {degree}"
        )
    st = SplittingType(a, b)
    for dd in range(d, d + 4):
        if h0_dim(Q, dd) != st.h0_at(dd):
            raise ProfileInconsistent(
                f"h0 at twist {dd} does not match splitting {st}"
            )
    return st


def splitting_type(B: BundleHandle, at: int | None = None) -> SplittingType:
    """Splitting type at the generic point (``at=None``) or at a prime."""
    prof = type_profile(B)
    if at is None:
        return prof.generic
    if at in prof.jump_map():
        return prof.jump_map()[at]
    # honest audit for unlisted primes
    return _splitting_scan(reduce_mod(B.presentation, at), B.degree)


def audit_splitting(B: BundleHandle, p: int) -> SplittingType:
    """Splitting type at p by a direct scan, bypassing the cached profile."""
    return _splitting_scan(reduce_mod(B.presentation, p), B.degree)


def candidate_jump_primes(P: GradedPresentation, probe: int, e_det: int) -> list[int]:
    """Primes that can possibly change h^0 at the probe twist.

    The covolume discriminants of the probe eliminations are factored with
    a bounded effort; any stubborn composite cofactor is then dismissed
    wholesale by a unit-pivot elimination over Z modulo the cofactor, which
    certifies that no prime dividing it drops any of the three ranks (junk
    covolume factors are often huge and not worth factoring).
    """
    stacked, K, B, ranks = probe_matrices(P, probe, e_det)
    _, d1 = rank_and_disc(stacked)
    _, d2 = rank_and_disc(K)
    _, d3 = rank_and_disc(B)
    primes, leftovers = partial_factor(d1 * d2 * d3)
    out = set(primes)
    stack = list(leftovers)
    while stack:
        cofactor = stack.pop()
        results = [rank_uniform_mod(X, cofactor) for X in (stacked, K, B)]
        split = next((v for kind, v in results if kind == "split"), None)
        if split is not None:
            for part in (split, cofactor // split):
                ps, more = partial_factor(part)
                out.update(ps)
                stack.extend(more)
            continue
        if [v for _, v in results] == list(ranks):
            continue  # every prime dividing the cofactor keeps all ranks
        out.update(prime_divisors(cofactor))  # genuine candidates: full effort
    return sorted(out)


@lru_cache(maxsize=None)
def _profile_cached(P: GradedPresentation, degree: int) -> SplittingProfile:
    generic = _splitting_scan(P, degree)
    probe = -generic.b - 1
    # Saturated presentations have fully stabilized pair spaces once every
    # piece is live, so one elimination at the floor is a sound candidate
    # detector; divisors are then verified one by one.
    e_det = stabilization_floor(P, probe) + 1
    jumps = []
    for p in candidate_jump_primes(P, probe, e_det):
        st = _splitting_scan(reduce_mod(P, p), degree)
        if st.type > generic.type:
            jumps.append((p, st))
        elif st.type < generic.type:
            raise ProfileInconsistent(
                f"semicontinuity violated at {p}: {st} below generic {generic}"
            )
    return SplittingProfile(generic, tuple(sorted(jumps)))


def type_profile(B: BundleHandle) -> SplittingProfile:
    """Generic splitting type plus all jump primes with their types."""
    return _profile_cached(B.presentation, B.degree)


def normalize(B: BundleHandle) -> BundleHandle:
    """Twist so the generic splitting is (-n-1, -1); idempotent."""
    gen = type_profile(B).generic
    t = -1 - gen.b
    if t == 0:
        return B
    P = twist_presentation(B.presentation, t)
    return BundleHandle(P, B.rank, B.degree + 2 * t)


def check_parity(B: BundleHandle) -> dict[int, int]:
    """Verified jump deltas; all must be even and positive."""
    prof = type_profile(B)
    deltas = {}
    for p, st in prof.jumps:
        delta = st.type - prof.generic.type
        if delta <= 0 or delta % 2:
            raise ParityViolation(f"delta {delta} at prime {p}")
        deltas[p] = delta
    return deltas


def check_type_h0(B: BundleHandle) -> dict[int, tuple[int, int]]:
    """Normalized identity: type delta equals 2 h^0 of the fiber at each jump."""
    N = normalize(B)
    prof = type_profile(N)
    out = {}
    for p, st in prof.jumps:
        delta = st.type - prof.generic.type
        fiber_h0 = h0_dim(reduce_mod(N.presentation, p), 0)
        if delta != 2 * fiber_h0:
            raise IdentityViolation(
                f"at {p}: delta {delta} != 2*h0 = {2 * fiber_h0}"
            )
        out[p] = (delta, fiber_h0)
    return out


# ---------------------------------------------------------------------------
# split certificates


@dataclass(frozen=True)
class SplitCertificate:
    """Explicit witness that a constant-profile bundle splits.

    ``section`` is the chosen global section of E(-a) in pair coordinates;
    the quotient by it was verified to be a line bundle of degree b at the
    generic point and at every candidate prime.
    """

    split: SplittingType
    section: tuple[int, ...]
    exponent: int
    twist: int
    verified_primes: tuple[int, ...]

    def to_json(self) -> dict:
        return {
            "split": self.split.to_json(),
            "section": [str(c) for c in self.section],
            "exponent": self.exponent,
            "twist": self.twist,
            "verified_primes": [str(p) for p in self.verified_primes],
        }


def try_split_certificate(B: BundleHandle) -> SplitCertificate | None:
    """Look for a section of E(-a) whose quotient is a verified line bundle.

    Only runs when the profile is constant; returns None both when it is not
    and when the bounded search finds no witness (inconclusive, never a
    disproof).
    """
    prof = type_profile(B)
    if prof.jumps:
        return None
    a, b = prof.generic.a, prof.generic.b
    P = B.presentation
    fam, lineage, pres = _window_presentation(P, -b, -a + window_guard() + 2)
    piece = fam.piece(-a)
    gens, orders = quotient_group_data(piece.K, piece.B.vectors())
    basis = [g for g, o in zip(gens, orders) if o == 0]
    candidates = list(basis)
    for i in range(len(basis)):
        for j in range(len(basis)):
            if i != j:
                candidates.append(tuple(x + y for x, y in zip(basis[i], basis[j])))
                candidates.append(tuple(x - y for x, y in zip(basis[i], basis[j])))
    for vec in candidates[:200]:
        cert = _verify_split_section(fam, lineage, pres, vec, a, b)
        if cert is not None:
            return cert
    return None


def _window_presentation(P: GradedPresentation, lo: int, hi: int):
    """Family plus matching engine presentation over a window, with retries."""
    for extra in (0, 4, 8):
        fam = lattice_family(P, (lo, hi + extra))
        provider = provider_from_family(fam)
        try:
            pres, lineage = presentation_from_sections(provider, P.base)
            return fam, lineage, pres
        except WindowExhausted:
            continue
    raise WindowExhausted("window presentation kept growing without settling")


def _verify_split_section(fam, lineage, pres, vec, a, b) -> SplitCertificate | None:
    try:
        forms = express_section_as_forms(fam, lineage, -a, vec)
    except ValueError:
        return None
    old_cols = [
        (
            pres.map.source.twists[j],
            [pres.map.entries[i][j] for i in range(pres.map.target.rank)],
        )
        for j in range(pres.map.source.rank)
    ]
    try:
        Q = cokernel_presentation(
            pres.map.target.twists, old_cols + [(a, forms)], pres.base
        )
    except ValueError:
        return None
    try:
        rq, eq = sheaf_rank_degree(Q)
    except NotLocallyFree:
        return None
    if (rq, eq) != (1, b):
        return None
    for d in (-b - 2, -b - 1, -b, -b + 1, abs(b) + 2):
        if h0_dim(Q, d) != max(0, b + d + 1):
            return None
    primes = candidate_jump_primes(Q, -b - 1, stabilization_floor(Q, -b - 1) + 1)
    for p in primes:
        Qp = reduce_mod(Q, p)
        for d in (-b - 1, -b, abs(b) + 2, abs(b) + 3):
            if h0_dim(Qp, d) != max(0, b + d + 1):
                return None
    return SplitCertificate(
        SplittingType(a, b), tuple(vec), fam.exponent, -a, tuple(primes)
    )
